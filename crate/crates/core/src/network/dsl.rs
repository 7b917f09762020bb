//! Line-oriented text format for networks.
//!
//! ```text
//! # comment
//! species: M1 M2 M3
//! R1: M1 -> M5
//! R2: M1 <-> M5          # expands to R2f / R2r
//! R3a|R3b: A + B <-> C
//! 2M1 -> M1 + M3         # id assigned automatically
//! kinetics:
//! ...
//! ```

use std::collections::HashSet;

use thiserror::Error;

use super::{is_identifier, Complex, NetworkError, ReactionNetwork};
use crate::kinetics::{parse_kinetics, KineticsError, PowerLawKinetics};
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Network {
        line: usize,
        #[source]
        source: NetworkError,
    },
    #[error(transparent)]
    Invalid(#[from] NetworkError),
    #[error(transparent)]
    Kinetics(#[from] KineticsError),
    #[error("input contains no reactions")]
    Empty,
}

/// The text following a `kinetics:` header, with the 1-based line number of its first line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KineticsSection {
    pub text: String,
    pub first_line: usize,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits a document into its network part and the optional kinetics block.
pub fn split_sections(text: &str) -> (String, Option<KineticsSection>) {
    let mut network = String::new();
    for (i, line) in text.lines().enumerate() {
        if strip_comment(line).trim() == "kinetics:" {
            let rest: Vec<&str> = text.lines().skip(i + 1).collect();
            return (network, Some(KineticsSection { text: rest.join("\n"), first_line: i + 2 }));
        }
        network.push_str(line);
        network.push('\n');
    }
    (network, None)
}

struct ReactionLine {
    line: usize,
    ids: Vec<String>,
    reactant: Complex,
    product: Complex,
    reversible: bool,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DslError {
    DslError::Syntax { line, column, message: message.into() }
}

/// Column (1-based) of `part` inside `whole`, assuming `part` is a subslice.
fn column_of(whole: &str, part: &str) -> usize {
    (part.as_ptr() as usize).saturating_sub(whole.as_ptr() as usize) + 1
}

fn parse_complex(raw_line: &str, text: &str, line: usize) -> Result<Complex, DslError> {
    let trimmed = text.trim();
    let col = column_of(raw_line, trimmed);
    if trimmed.is_empty() {
        return Err(syntax(line, col, "missing complex"));
    }
    if trimmed == "0" {
        return Ok(Complex::zero());
    }
    let mut terms = Vec::new();
    for term in text.split('+') {
        let t = term.trim();
        let col = column_of(raw_line, t);
        if t.is_empty() {
            return Err(syntax(line, col, "empty term"));
        }
        let split = t
            .find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '/'))
            .unwrap_or(t.len());
        let (num, name) = (&t[..split], t[split..].trim());
        let coeff = if num.is_empty() {
            Rational::one()
        } else {
            num.parse::<Rational>()
                .map_err(|_| syntax(line, col, format!("bad coefficient {num:?}")))?
        };
        if name.is_empty() {
            return Err(syntax(line, col, format!("term {t:?} has no species")));
        }
        if !is_identifier(name) {
            return Err(syntax(line, column_of(raw_line, name), format!("invalid species name {name:?}")));
        }
        if !coeff.is_positive() {
            return Err(syntax(line, col, format!("coefficient of {name} must be positive")));
        }
        terms.push((name.to_string(), coeff));
    }
    Complex::from_terms(terms).map_err(|source| DslError::Network { line, source })
}

fn parse_reaction_line(raw: &str, body: &str, line: usize) -> Result<ReactionLine, DslError> {
    let (ids, rest) = match body.split_once(':') {
        Some((head, rest)) => {
            let ids: Vec<String> = head.split('|').map(|s| s.trim().to_string()).collect();
            for id in &ids {
                if !is_identifier(id) {
                    return Err(syntax(line, column_of(raw, head.trim()), format!("invalid reaction id {id:?}")));
                }
            }
            if ids.len() > 2 {
                return Err(syntax(line, column_of(raw, head.trim()), "at most two ids per line"));
            }
            (ids, rest)
        }
        None => (Vec::new(), body),
    };
    let (reversible, lhs, rhs) = if let Some((l, r)) = rest.split_once("<->") {
        (true, l, r)
    } else if let Some((l, r)) = rest.split_once("->") {
        (false, l, r)
    } else {
        return Err(syntax(line, column_of(raw, rest.trim()), "expected '->' or '<->'"));
    };
    if rhs.contains("->") {
        return Err(syntax(line, column_of(raw, rhs), "more than one arrow"));
    }
    if !reversible && ids.len() == 2 {
        return Err(syntax(line, 1, "two ids given for an irreversible reaction"));
    }
    Ok(ReactionLine {
        line,
        ids,
        reactant: parse_complex(raw, lhs, line)?,
        product: parse_complex(raw, rhs, line)?,
        reversible,
    })
}

fn next_free_id(base: usize, used: &mut HashSet<String>) -> String {
    let mut k = base;
    loop {
        let id = format!("R{k}");
        if !used.contains(&id) {
            used.insert(id.clone());
            return id;
        }
        k += 1;
    }
}

/// Parses the network part of a document. Anything after a `kinetics:` header is ignored.
pub fn parse_network(text: &str) -> Result<ReactionNetwork, DslError> {
    let (network_text, _) = split_sections(text);
    let mut species = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in network_text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("species:") {
            for name in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                if !is_identifier(name) {
                    return Err(syntax(line, column_of(raw, name), format!("invalid species name {name:?}")));
                }
                species.push(name.to_string());
            }
            continue;
        }
        lines.push(parse_reaction_line(raw, body, line)?);
    }
    if lines.is_empty() {
        return Err(DslError::Empty);
    }

    let mut used: HashSet<String> = lines.iter().flat_map(|l| l.ids.iter().cloned()).collect();
    let mut triples = Vec::new();
    let mut origin = Vec::new();
    for (k, l) in lines.into_iter().enumerate() {
        let base = match l.ids.first() {
            Some(id) => id.clone(),
            None => next_free_id(k + 1, &mut used),
        };
        if l.reversible {
            let (fwd, rev) = match l.ids.len() {
                2 => (l.ids[0].clone(), l.ids[1].clone()),
                _ => (format!("{base}f"), format!("{base}r")),
            };
            triples.push((fwd, l.reactant.clone(), l.product.clone()));
            triples.push((rev, l.product, l.reactant));
            origin.extend([l.line, l.line]);
        } else {
            triples.push((base, l.reactant, l.product));
            origin.push(l.line);
        }
    }

    let ids: Vec<String> = triples.iter().map(|t| t.0.clone()).collect();
    ReactionNetwork::new(species, triples).map_err(|source| {
        let id = match &source {
            NetworkError::SelfLoop { id }
            | NetworkError::DuplicateReaction { id, .. }
            | NetworkError::DuplicateId { id } => Some(id),
            _ => None,
        };
        match id.and_then(|id| ids.iter().rposition(|x| x == id)) {
            Some(k) => DslError::Network { line: origin[k], source },
            None => DslError::Invalid(source),
        }
    })
}

/// Parses a full document: the network and, when present, its kinetics block.
pub fn parse_system(text: &str) -> Result<(ReactionNetwork, Option<PowerLawKinetics>), DslError> {
    let net = parse_network(text)?;
    let (_, section) = split_sections(text);
    let kinetics = match section {
        Some(section) => Some(parse_kinetics(&section.text, &net).map_err(|e| e.offset_lines(section.first_line - 1))?),
        None => None,
    };
    Ok((net, kinetics))
}

/// Writes the network back in the text format, one irreversible line per reaction.
pub fn render_network(net: &ReactionNetwork) -> String {
    let mut out = format!("species: {}\n", net.species().join(" "));
    for j in 0..net.r() {
        out.push_str(&net.render_reaction(j));
        out.push('\n');
    }
    out
}
