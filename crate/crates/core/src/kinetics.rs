//! Power-law kinetics: kinetic order matrix, CF-subsets and the
//! reactant-determined (PL-RDK) / non-reactant-determined (PL-NDK) split.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Rational, RationalMatrix};
use crate::network::{is_identifier, ReactionNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KineticsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown reaction {id}")]
    UnknownReaction { line: usize, id: String },
    #[error("line {line}: unknown species {name}")]
    UnknownSpecies { line: usize, name: String },
    #[error("line {line}: duplicate assignment for {what}")]
    Duplicate { line: usize, what: String },
    #[error("line {line}: rate constant of {id} must be positive")]
    NonPositiveRate { line: usize, id: String },
    #[error("kinetics block is empty")]
    Empty,
    #[error("kinetics has {actual} rows but the network has {expected} reactions")]
    Shape { expected: usize, actual: usize },
}

impl KineticsError {
    /// Shifts reported line numbers by `offset`, for blocks embedded in a larger file.
    pub fn offset_lines(self, offset: usize) -> Self {
        use KineticsError::*;
        match self {
            Syntax { line, message } => Syntax { line: line + offset, message },
            UnknownReaction { line, id } => UnknownReaction { line: line + offset, id },
            UnknownSpecies { line, name } => UnknownSpecies { line: line + offset, name },
            Duplicate { line, what } => Duplicate { line: line + offset, what },
            NonPositiveRate { line, id } => NonPositiveRate { line: line + offset, id },
            other => other,
        }
    }
}

/// Kinetic order matrix `F` (reactions x species) and rate vector `k`.
///
/// The rate vector is carried along for round-tripping only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerLawKinetics {
    orders: RationalMatrix,
    rates: Vec<Rational>,
}

impl PowerLawKinetics {
    pub fn new(
        net: &ReactionNetwork,
        rows: Vec<Vec<Rational>>,
        rates: Vec<Rational>,
    ) -> Result<Self, KineticsError> {
        if rows.len() != net.r() || rates.len() != net.r() {
            return Err(KineticsError::Shape { expected: net.r(), actual: rows.len().min(rates.len()) });
        }
        if rows.iter().any(|row| row.len() != net.m()) {
            return Err(KineticsError::Shape { expected: net.m(), actual: rows.len() });
        }
        for (j, k) in rates.iter().enumerate() {
            if !k.is_positive() {
                return Err(KineticsError::NonPositiveRate { line: 0, id: net.reaction(j).id.clone() });
            }
        }
        let orders = RationalMatrix::from_rows(rows)
            .with_labels(net.reaction_ids(), net.species().to_vec());
        Ok(PowerLawKinetics { orders, rates })
    }

    /// Mass action: each row is the reactant complex, rate constants 1.
    pub fn mass_action(net: &ReactionNetwork) -> Self {
        let rows = (0..net.r()).map(|j| mass_action_row(net, j)).collect();
        Self::new(net, rows, vec![Rational::one(); net.r()]).expect("mass action rows are well formed")
    }

    pub fn order_matrix(&self) -> &RationalMatrix {
        &self.orders
    }

    pub fn row(&self, j: usize) -> &[Rational] {
        self.orders.row(j)
    }

    pub fn rate(&self, j: usize) -> &Rational {
        &self.rates[j]
    }

    pub fn rates(&self) -> &[Rational] {
        &self.rates
    }

    /// Carries rows over to `target` by reaction id; species are matched by name.
    pub fn rebind(&self, source: &ReactionNetwork, target: &ReactionNetwork, id_map: &BTreeMap<String, String>) -> Self {
        let mut rows = vec![vec![Rational::zero(); target.m()]; target.r()];
        let mut rates = vec![Rational::one(); target.r()];
        for j in 0..source.r() {
            let old_id = &source.reaction(j).id;
            let new_id = id_map.get(old_id).unwrap_or(old_id);
            let t = target.reaction_index(new_id).expect("mapped reaction exists in target");
            for (i, s) in source.species().iter().enumerate() {
                if let Some(ti) = target.species_index(s) {
                    rows[t][ti] = self.orders.get(j, i).clone();
                }
            }
            rates[t] = self.rates[j].clone();
        }
        Self::new(target, rows, rates).expect("rebound kinetics keeps shape")
    }
}

fn mass_action_row(net: &ReactionNetwork, j: usize) -> Vec<Rational> {
    net.species().iter().map(|s| net.reaction(j).reactant.coefficient(s)).collect()
}

fn kerr(line: usize, message: impl Into<String>) -> KineticsError {
    KineticsError::Syntax { line, message: message.into() }
}

/// Parses a kinetics block against `net`.
///
/// Each line is `Rj: S1=order, S2=order ; k=rate` (species not listed get order 0,
/// the rate defaults to 1), or the directive `mass-action`, which fills every
/// reaction not given explicitly with its reactant coefficients.
pub fn parse_kinetics(text: &str, net: &ReactionNetwork) -> Result<PowerLawKinetics, KineticsError> {
    let mut rows: Vec<Option<Vec<Rational>>> = vec![None; net.r()];
    let mut rates = vec![Rational::one(); net.r()];
    let mut mass_action = false;
    let mut any = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        any = true;
        if body == "mass-action" {
            if mass_action {
                return Err(KineticsError::Duplicate { line, what: "mass-action".into() });
            }
            mass_action = true;
            continue;
        }
        let (id, rest) = body
            .split_once(':')
            .ok_or_else(|| kerr(line, "expected `Rj: species=order, ...` or `mass-action`"))?;
        let id = id.trim();
        let j = net
            .reaction_index(id)
            .ok_or_else(|| KineticsError::UnknownReaction { line, id: id.to_string() })?;
        if rows[j].is_some() {
            return Err(KineticsError::Duplicate { line, what: id.to_string() });
        }
        let (orders_text, rate_text) = match rest.split_once(';') {
            Some((o, r)) => (o, Some(r)),
            None => (rest, None),
        };
        let mut row = vec![Rational::zero(); net.m()];
        let mut seen = HashSet::new();
        for item in orders_text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| kerr(line, format!("expected species=order, got {item:?}")))?;
            let name = name.trim();
            if !is_identifier(name) {
                return Err(kerr(line, format!("invalid species name {name:?}")));
            }
            let si = net
                .species_index(name)
                .ok_or_else(|| KineticsError::UnknownSpecies { line, name: name.to_string() })?;
            if !seen.insert(si) {
                return Err(KineticsError::Duplicate { line, what: format!("{id}/{name}") });
            }
            row[si] = value
                .trim()
                .parse()
                .map_err(|_| kerr(line, format!("bad kinetic order {:?}", value.trim())))?;
        }
        if let Some(rate_text) = rate_text {
            let (key, value) = rate_text
                .split_once('=')
                .ok_or_else(|| kerr(line, "expected `k=rate` after ';'"))?;
            if key.trim() != "k" {
                return Err(kerr(line, format!("unknown parameter {:?}", key.trim())));
            }
            let k: Rational = value
                .trim()
                .parse()
                .map_err(|_| kerr(line, format!("bad rate constant {:?}", value.trim())))?;
            if !k.is_positive() {
                return Err(KineticsError::NonPositiveRate { line, id: id.to_string() });
            }
            rates[j] = k;
        }
        rows[j] = Some(row);
    }
    if !any {
        return Err(KineticsError::Empty);
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(j, row)| match row {
            Some(row) => row,
            None if mass_action => mass_action_row(net, j),
            None => vec![Rational::zero(); net.m()],
        })
        .collect();
    PowerLawKinetics::new(net, rows, rates)
}

/// Writes a kinetics block (without the `kinetics:` header) that parses back to `k`.
pub fn render_kinetics(net: &ReactionNetwork, k: &PowerLawKinetics) -> String {
    let mut out = String::new();
    for j in 0..net.r() {
        let orders: Vec<String> = net
            .species()
            .iter()
            .enumerate()
            .filter(|(i, _)| !k.orders.get(j, *i).is_zero())
            .map(|(i, s)| format!("{s}={}", k.orders.get(j, i)))
            .collect();
        out.push_str(&format!("{}: {}", net.reaction(j).id, orders.join(", ")));
        if !k.rates[j].is_one() {
            out.push_str(&format!(" ; k={}", k.rates[j]));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PlkClass {
    #[serde(rename = "PL-RDK")]
    Rdk,
    #[serde(rename = "PL-NDK")]
    Ndk,
}

impl fmt::Display for PlkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlkClass::Rdk => "PL-RDK",
            PlkClass::Ndk => "PL-NDK",
        })
    }
}

/// Branching reactions at one reactant complex, grouped by identical kinetic-order rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactantSubsets {
    pub reactant: usize,
    /// Reaction indices, each subset sorted, subsets ordered by smallest member.
    pub subsets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfSubsetPartition {
    /// One entry per reactant complex, in order of first appearance as a reactant.
    pub nodes: Vec<ReactantSubsets>,
}

impl CfSubsetPartition {
    /// Reactant complexes carrying more than one CF-subset.
    pub fn nf_nodes(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.subsets.len() > 1).map(|n| n.reactant).collect()
    }

    pub fn node(&self, reactant: usize) -> Option<&ReactantSubsets> {
        self.nodes.iter().find(|n| n.reactant == reactant)
    }
}

/// Groups reactions by reactant complex and then by exact equality of kinetic-order rows.
pub fn cf_subsets_of(net: &ReactionNetwork, k: &PowerLawKinetics, reactions: &[usize]) -> CfSubsetPartition {
    let mut order: Vec<usize> = Vec::new();
    // reactant -> (kinetic-order row, reactions with that row)
    type Groups = Vec<(Vec<Rational>, Vec<usize>)>;
    let mut by_reactant: HashMap<usize, Groups> = HashMap::new();
    for &j in reactions {
        let y = net.reactant_of(j);
        let groups = by_reactant.entry(y).or_insert_with(|| {
            order.push(y);
            Vec::new()
        });
        let row = k.row(j);
        match groups.iter_mut().find(|(r, _)| r.as_slice() == row) {
            Some((_, members)) => members.push(j),
            None => groups.push((row.to_vec(), vec![j])),
        }
    }
    let nodes = order
        .into_iter()
        .map(|y| {
            let mut subsets: Vec<Vec<usize>> =
                by_reactant.remove(&y).unwrap_or_default().into_iter().map(|(_, m)| m).collect();
            for s in &mut subsets {
                s.sort_unstable();
            }
            subsets.sort_by_key(|s| s[0]);
            ReactantSubsets { reactant: y, subsets }
        })
        .collect();
    CfSubsetPartition { nodes }
}

pub fn cf_subsets(net: &ReactionNetwork, k: &PowerLawKinetics) -> CfSubsetPartition {
    let all: Vec<usize> = (0..net.r()).collect();
    cf_subsets_of(net, k, &all)
}

pub fn classify_plk(net: &ReactionNetwork, k: &PowerLawKinetics) -> PlkClass {
    if cf_subsets(net, k).nf_nodes().is_empty() {
        PlkClass::Rdk
    } else {
        PlkClass::Ndk
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::parse_network;

    #[test]
    fn decimal_order_is_exact() {
        let net = parse_network("R1: M1 -> M5").unwrap();
        let k = parse_kinetics("R1: M1=0.36", &net).unwrap();
        assert_eq!(k.row(0), &[Rational::new(9, 25), Rational::zero()]);
    }

    #[test]
    fn mass_action_directive_uses_reactant() {
        let net = parse_network("R1: 2A -> B").unwrap();
        let k = parse_kinetics("mass-action", &net).unwrap();
        assert_eq!(k.row(0), &[Rational::from(2), Rational::zero()]);
        assert_eq!(k, PowerLawKinetics::mass_action(&net));
    }

    #[test]
    fn explicit_rows_override_mass_action() {
        let net = parse_network("R1: A -> B\nR2: A -> C").unwrap();
        let k = parse_kinetics("mass-action\nR2: A=1/2 ; k=3", &net).unwrap();
        assert_eq!(k.row(0)[0], Rational::one());
        assert_eq!(k.row(1)[0], Rational::new(1, 2));
        assert_eq!(k.rate(1), &Rational::from(3));
        assert_eq!(classify_plk(&net, &k), PlkClass::Ndk);
    }

    #[test]
    fn kinetics_errors() {
        let net = parse_network("R1: A -> B").unwrap();
        assert_eq!(parse_kinetics("", &net), Err(KineticsError::Empty));
        assert_eq!(parse_kinetics("  # only a comment", &net), Err(KineticsError::Empty));
        assert!(matches!(parse_kinetics("R9: A=1", &net), Err(KineticsError::UnknownReaction { .. })));
        assert!(matches!(parse_kinetics("R1: Z=1", &net), Err(KineticsError::UnknownSpecies { .. })));
        assert!(matches!(parse_kinetics("R1: A=1\nR1: A=2", &net), Err(KineticsError::Duplicate { line: 2, .. })));
        assert!(matches!(parse_kinetics("R1: A=1, A=2", &net), Err(KineticsError::Duplicate { .. })));
        assert!(matches!(parse_kinetics("R1: A=1 ; k=0", &net), Err(KineticsError::NonPositiveRate { .. })));
        assert!(matches!(parse_kinetics("R1 A=1", &net), Err(KineticsError::Syntax { .. })));
    }

    #[test]
    fn negative_orders_allowed() {
        let net = parse_network("R1: A -> B").unwrap();
        let k = parse_kinetics("R1: A=1, B=-0.5", &net).unwrap();
        assert_eq!(k.row(0)[1], Rational::new(-1, 2));
    }

    #[test]
    fn equal_rows_share_a_subset() {
        let net = parse_network("R1: A -> B\nR2: A -> C\nR3: B -> C").unwrap();
        let k = parse_kinetics("R1: A=2\nR2: A=2\nR3: B=1", &net).unwrap();
        let cf = cf_subsets(&net, &k);
        assert_eq!(cf.nodes[0].subsets, vec![vec![0, 1]]);
        assert!(cf.nf_nodes().is_empty());
        assert_eq!(classify_plk(&net, &k), PlkClass::Rdk);
    }

    #[test]
    fn render_parses_back() {
        let net = parse_network("R1: A -> B\nR2: A -> C").unwrap();
        let k = parse_kinetics("R1: A=0.36, B=-1 ; k=5/2\nR2: A=1", &net).unwrap();
        assert_eq!(parse_kinetics(&render_kinetics(&net, &k), &net).unwrap(), k);
    }
}
