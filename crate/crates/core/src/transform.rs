//! CF-RM+ and CF-RI+: relocating CF-subsets of branching reactions onto fresh
//! reactant complexes so that a PL-NDK system becomes PL-RDK with the same
//! reaction vectors and kinetic orders.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{analyze_partition, default_orientation, f_decomposition};
use crate::kinetics::{cf_subsets_of, classify_plk, PlkClass, PowerLawKinetics};
use crate::linalg::{rank, Rational, RationalMatrix};
use crate::network::{Complex, ReactionNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TransformMethod {
    #[serde(rename = "CF-RM+")]
    CfRmPlus,
    #[serde(rename = "CF-RI+")]
    CfRiPlus,
}

impl fmt::Display for TransformMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformMethod::CfRmPlus => "CF-RM+",
            TransformMethod::CfRiPlus => "CF-RI+",
        })
    }
}

impl FromStr for TransformMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cf-rm+" | "cf-rm-plus" | "cfrm+" => Ok(TransformMethod::CfRmPlus),
            "cf-ri+" | "cf-ri-plus" | "cfri+" => Ok(TransformMethod::CfRiPlus),
            _ => Err(format!("unknown transform method {s:?}; expected cf-rm+ or cf-ri+")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformResult {
    pub method: TransformMethod,
    pub network: ReactionNetwork,
    pub kinetics: PowerLawKinetics,
    /// Old reaction id to new reaction id. Ids are kept, so this is the identity.
    pub reaction_map: BTreeMap<String, String>,
    /// Complexes of the output that do not occur in the input, in order of appearance.
    pub added_complexes: Vec<Complex>,
    /// Ids of the reactions whose complexes were rewritten.
    pub modified: Vec<String>,
}

/// Applies `method` to the system `(net, k)`.
pub fn transform(net: &ReactionNetwork, k: &PowerLawKinetics, method: TransformMethod) -> TransformResult {
    match method {
        TransformMethod::CfRmPlus => cf_rm_plus(net, k),
        TransformMethod::CfRiPlus => cf_ri_plus(net, k),
    }
}

pub fn cf_rm_plus(net: &ReactionNetwork, k: &PowerLawKinetics) -> TransformResult {
    relocate(net, k, TransformMethod::CfRmPlus)
}

pub fn cf_ri_plus(net: &ReactionNetwork, k: &PowerLawKinetics) -> TransformResult {
    relocate(net, k, TransformMethod::CfRiPlus)
}

/// The `step`-th candidate catalytic complex for reactant `y`, `step >= 1`.
///
/// For a nonzero reactant this is `step * y`, so the relocated reactant is
/// `(step + 1) * y`. Multiples of the zero complex never become fresh, so there
/// the candidates are multiples of the first species instead.
fn catalytic_shift(y: &Complex, step: u32, first_species: &str) -> Complex {
    let factor = Rational::from_integer(i64::from(step));
    if y.is_zero() {
        Complex::species(first_species).scale(&factor)
    } else {
        y.scale(&factor)
    }
}

struct Working {
    triples: Vec<(String, Complex, Complex)>,
    seen: HashSet<Complex>,
    added: Vec<Complex>,
    modified: Vec<usize>,
}

impl Working {
    fn fresh(&self, c: &Complex) -> bool {
        !self.seen.contains(c)
    }

    fn remember(&mut self, c: &Complex) {
        if self.seen.insert(c.clone()) {
            self.added.push(c.clone());
        }
    }

    fn shift(&mut self, j: usize, c: &Complex) {
        let (_, reactant, product) = &mut self.triples[j];
        *reactant = reactant.add(c);
        *product = product.add(c);
        let (a, b) = (reactant.clone(), product.clone());
        self.remember(&a);
        self.remember(&b);
        if !self.modified.contains(&j) {
            self.modified.push(j);
        }
    }
}

fn relocate(net: &ReactionNetwork, k: &PowerLawKinetics, method: TransformMethod) -> TransformResult {
    let identity: BTreeMap<String, String> = net.reaction_ids().into_iter().map(|id| (id.clone(), id)).collect();
    if classify_plk(net, k) == PlkClass::Rdk {
        return TransformResult {
            method,
            network: net.clone(),
            kinetics: k.clone(),
            reaction_map: identity,
            added_complexes: Vec::new(),
            modified: Vec::new(),
        };
    }

    let mut work = Working {
        triples: net
            .reactions()
            .iter()
            .map(|r| (r.id.clone(), r.reactant.clone(), r.product.clone()))
            .collect(),
        seen: net.complexes().iter().cloned().collect(),
        added: Vec::new(),
        modified: Vec::new(),
    };
    let first_species = net.species()[0].clone();
    let worklist: Vec<Complex> = cf_subsets_of(net, k, &(0..net.r()).collect::<Vec<_>>())
        .nodes
        .iter()
        .filter(|node| node.subsets.len() > 1)
        .map(|node| net.complexes()[node.reactant].clone())
        .collect();

    for y in worklist {
        // reread the node: CF-RI+ may already have moved some of its reactions away
        let members: Vec<usize> = (0..net.r()).filter(|&j| work.triples[j].1 == y).collect();
        let mut subsets = group_by_rows(k, &members);
        if subsets.len() < 2 {
            continue;
        }
        subsets.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        for subset in subsets.into_iter().skip(1) {
            let partners: Vec<usize> = match method {
                TransformMethod::CfRmPlus => Vec::new(),
                TransformMethod::CfRiPlus => subset
                    .iter()
                    .filter_map(|&j| {
                        let (_, a, b) = &work.triples[j];
                        (0..net.r()).find(|&q| work.triples[q].1 == *b && work.triples[q].2 == *a)
                    })
                    .collect(),
            };
            let c = (1u32..)
                .map(|step| catalytic_shift(&y, step, &first_species))
                .find(|c| {
                    work.fresh(&y.add(c)) && subset.iter().all(|&j| work.fresh(&work.triples[j].2.add(c)))
                })
                .expect("an unbounded sequence of shifts eventually leaves every finite set");
            for &j in subset.iter().chain(&partners) {
                work.shift(j, &c);
            }
        }
    }

    let network = ReactionNetwork::new(net.species().to_vec(), work.triples)
        .expect("relocated reactions stay distinct and loop-free");
    let rows = (0..net.r()).map(|j| k.row(j).to_vec()).collect();
    let kinetics = PowerLawKinetics::new(&network, rows, k.rates().to_vec()).expect("same shape as the input");
    let mut modified = work.modified;
    modified.sort_unstable();
    TransformResult {
        method,
        network,
        kinetics,
        reaction_map: identity,
        added_complexes: work.added,
        modified: modified.into_iter().map(|j| net.reaction(j).id.clone()).collect(),
    }
}

fn group_by_rows(k: &PowerLawKinetics, members: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &j in members {
        match groups.iter_mut().find(|g| k.row(g[0]) == k.row(j)) {
            Some(g) => g.push(j),
            None => groups.push(vec![j]),
        }
    }
    groups
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub method: TransformMethod,
    pub checks: Vec<VerificationCheck>,
    pub input_f_independent: bool,
    pub output_f_independent: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&VerificationCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Turns failed checks into an error carrying their details.
    pub fn ensure(self) -> Result<Self, TransformError> {
        if self.passed() {
            Ok(self)
        } else {
            Err(TransformError::VerificationFailed {
                details: self.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)).collect(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("transform verification failed: {}", details.join("; "))]
    VerificationFailed { details: Vec<String> },
}

fn vector_by_name(net: &ReactionNetwork, j: usize, species: &[String]) -> Vec<Rational> {
    let r = net.reaction(j);
    species.iter().map(|s| &r.product.coefficient(s) - &r.reactant.coefficient(s)).collect()
}

fn check(name: &'static str, failures: Vec<String>, ok_detail: String) -> VerificationCheck {
    VerificationCheck {
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() { ok_detail } else { failures.join("; ") },
    }
}

/// Recomputes the preservation properties of a transform from scratch.
pub fn verify_transform(net: &ReactionNetwork, k: &PowerLawKinetics, result: &TransformResult) -> VerificationReport {
    let out = &result.network;
    let mut species: Vec<String> = net.species().to_vec();
    for s in out.species() {
        if !species.contains(s) {
            species.push(s.clone());
        }
    }
    let columns = |n: &ReactionNetwork| {
        let cols: Vec<Vec<Rational>> = (0..n.r()).map(|j| vector_by_name(n, j, &species)).collect();
        RationalMatrix::from_fn(species.len(), cols.len(), |i, j| cols[j][i].clone())
    };
    let (before, after) = (columns(net), columns(out));
    let mut checks = Vec::new();

    let joint = RationalMatrix::hconcat(&[before.clone(), after.clone()]).expect("same species rows");
    let (s0, s1, s01) = (rank(&before), rank(&after), rank(&joint));
    let failures = if s0 == s1 && s1 == s01 {
        Vec::new()
    } else {
        vec![format!("ranks {s0} and {s1}, joint rank {s01}")]
    };
    checks.push(check("stoichiometric_subspace", failures, format!("both span the same rank-{s0} subspace")));

    let mut failures = Vec::new();
    let mut mapped = vec![None; net.r()];
    for j in 0..net.r() {
        let id = &net.reaction(j).id;
        let Some(t) = result.reaction_map.get(id).and_then(|new| out.reaction_index(new)) else {
            failures.push(format!("{id} has no image"));
            continue;
        };
        mapped[j] = Some(t);
        if before.column(j) != after.column(t) {
            failures.push(format!("{id}: reaction vector changed ({} became {})", net.render_reaction(j), out.render_reaction(t)));
        }
        let row_by_name = |kin: &PowerLawKinetics, n: &ReactionNetwork, j: usize| -> Vec<Rational> {
            species
                .iter()
                .map(|s| n.species_index(s).map_or_else(Rational::zero, |i| kin.row(j)[i].clone()))
                .collect()
        };
        if row_by_name(k, net, j) != row_by_name(&result.kinetics, out, t) {
            failures.push(format!("{id}: kinetic orders changed"));
        }
    }
    if out.r() != net.r() {
        failures.push(format!("{} reactions became {}", net.r(), out.r()));
    }
    checks.push(check("reaction_vectors", failures, format!("{} reactions mapped with equal vectors and orders", net.r())));

    let (o0, o1) = (default_orientation(net).len(), default_orientation(out).len());
    let failures = if o0 == o1 { Vec::new() } else { vec![format!("|O| = {o0} became {o1}")] };
    checks.push(check("orientation_size", failures, format!("|O| = {o0}")));

    let independent = |n: &ReactionNetwork| {
        analyze_partition(n, &f_decomposition(n)).map(|r| r.independent).expect("F-decomposition partitions R")
    };
    let (i0, i1) = (independent(net), independent(out));
    let failures = if i0 == i1 {
        Vec::new()
    } else {
        vec![format!("F-decomposition independent: {i0} before, {i1} after")]
    };
    checks.push(check("f_independence", failures, format!("independent before and after: {i0}")));

    let class = classify_plk(out, &result.kinetics);
    let failures = if class == PlkClass::Rdk { Vec::new() } else { vec![format!("output is {class}")] };
    checks.push(check("reactant_determined", failures, "output is PL-RDK".into()));

    if result.method == TransformMethod::CfRiPlus {
        let mut failures = Vec::new();
        for j in 0..net.r() {
            let Some(t) = mapped[j] else { continue };
            let expected = net.reaction(j).reverse_of.and_then(|p| mapped[p]);
            if out.reaction(t).reverse_of != expected {
                failures.push(format!("{}: reversibility not preserved", net.reaction(j).id));
            }
        }
        checks.push(check(
            "reversibility",
            failures,
            format!("r_irr = {}, r_rev = {} preserved", net.r_irr(), net.r_rev()),
        ));
    }

    VerificationReport { method: result.method, checks, input_f_independent: i0, output_f_independent: i1 }
}
