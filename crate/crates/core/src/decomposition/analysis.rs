use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::orientation::{default_orientation, Orientation};
use super::partition::{PartitionKind, ReactionPartition};
use super::DecompositionError;
use crate::linalg::{kernel_basis, rank, spans_direct_sum};
use crate::network::{ReactionNetwork, SubnetworkCounts, UnionFind};

/// Shape of the P-class generating a fundamental class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SubnetworkType {
    /// Linearly independent reaction vectors: a forest of deficiency 0.
    #[serde(rename = "I")]
    TypeI,
    /// Minimally dependent, not a big cycle: a forest of deficiency 1.
    #[serde(rename = "II")]
    TypeII,
    /// Minimally dependent big cycle with at least three complexes, deficiency 0.
    #[serde(rename = "III")]
    TypeIII,
}

impl fmt::Display for SubnetworkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubnetworkType::TypeI => "I",
            SubnetworkType::TypeII => "II",
            SubnetworkType::TypeIII => "III",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub reactions: Vec<String>,
    pub zero: bool,
    pub n: usize,
    pub l: usize,
    pub s: usize,
    pub deficiency: i64,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub subnetwork_type: Option<SubnetworkType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    #[serde(skip)]
    pub partition: ReactionPartition,
    pub kind: PartitionKind,
    pub classes: Vec<ClassReport>,
    pub w: usize,
    pub w_i: usize,
    pub w_ii: usize,
    pub w_iii: usize,
    pub independent: bool,
    pub incidence_independent: bool,
    pub bi_independent: bool,
    pub is_c_decomposition: bool,
    /// Set when there are more classes than `s`, which rules out independence without rank work.
    pub independence_ruled_out_by_count: bool,
    pub n: usize,
    pub l: usize,
    pub s: usize,
    pub deficiency: i64,
    pub sum_s: usize,
    pub n_minus_l: usize,
    pub sum_n_minus_l: usize,
    pub sum_deficiency: i64,
    /// For the orientation split only: whether `S_O = S`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial: Option<bool>,
}

impl DecompositionReport {
    pub fn types(&self) -> Vec<Option<SubnetworkType>> {
        self.classes.iter().map(|c| c.subnetwork_type).collect()
    }
}

/// Computes per-class counts and the independence properties of `p`.
pub fn analyze_partition(net: &ReactionNetwork, p: &ReactionPartition) -> Result<DecompositionReport, DecompositionError> {
    let ground: Vec<usize> = p.ground_set().into_iter().collect();
    let type_orientation = match p.kind() {
        PartitionKind::P => Some(Orientation::new(net, ground.clone())?),
        PartitionKind::F => Some(default_orientation(net)),
        _ => None,
    };
    if p.kind() != PartitionKind::P && ground.len() != net.r() {
        return Err(DecompositionError::NotAPartition(format!(
            "classes cover {} of {} reactions",
            ground.len(),
            net.r()
        )));
    }
    if let Some(&j) = ground.last() {
        if j >= net.r() {
            return Err(DecompositionError::NotAPartition(format!("reaction index {j} out of range")));
        }
    }

    let whole = net.subnetwork_counts(&ground);
    let mut classes = Vec::with_capacity(p.classes().len());
    let (mut w_i, mut w_ii, mut w_iii) = (0, 0, 0);
    for (k, class) in p.classes().iter().enumerate() {
        let SubnetworkCounts { n, l, s, deficiency } = net.subnetwork_counts(class);
        let zero = p.is_zero_class(k);
        let subnetwork_type = match &type_orientation {
            Some(o) => {
                let restriction: Vec<usize> = class.iter().copied().filter(|&j| o.contains(j)).collect();
                let t = classify_type(net, class, &restriction)?;
                if !zero {
                    match t {
                        SubnetworkType::TypeI => w_i += 1,
                        SubnetworkType::TypeII => w_ii += 1,
                        SubnetworkType::TypeIII => w_iii += 1,
                    }
                }
                Some(t)
            }
            None => None,
        };
        classes.push(ClassReport {
            reactions: class.iter().map(|&j| net.reaction(j).id.clone()).collect(),
            zero,
            n,
            l,
            s,
            deficiency,
            subnetwork_type,
        });
    }

    let sum_s: usize = classes.iter().map(|c| c.s).sum();
    let sum_n_minus_l: usize = classes.iter().map(|c| c.n - c.l).sum();
    let sum_deficiency: i64 = classes.iter().map(|c| c.deficiency).sum();
    // every class contributes s_i >= 1, so more classes than s cannot be independent
    let ruled_out = p.classes().len() > whole.s;
    let independent = if ruled_out {
        false
    } else {
        let n_matrix = net.stoichiometric_matrix();
        let blocks: Vec<_> = p.classes().iter().map(|c| n_matrix.select_columns(c)).collect();
        let direct = spans_direct_sum(&blocks).expect("blocks share the species rows");
        debug_assert_eq!(direct, sum_s == whole.s);
        direct
    };
    let n_minus_l = whole.n - whole.l;
    let incidence_independent = sum_n_minus_l == n_minus_l;

    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut is_c_decomposition = true;
    'outer: for (k, class) in p.classes().iter().enumerate() {
        for &j in class {
            for c in [net.reactant_of(j), net.product_of(j)] {
                if *owner.entry(c).or_insert(k) != k {
                    is_c_decomposition = false;
                    break 'outer;
                }
            }
        }
    }

    Ok(DecompositionReport {
        partition: p.clone(),
        kind: p.kind(),
        classes,
        w: p.w(),
        w_i,
        w_ii,
        w_iii,
        independent,
        incidence_independent,
        bi_independent: independent && incidence_independent,
        is_c_decomposition,
        independence_ruled_out_by_count: ruled_out,
        n: whole.n,
        l: whole.l,
        s: whole.s,
        deficiency: whole.deficiency,
        sum_s,
        n_minus_l,
        sum_n_minus_l,
        sum_deficiency,
        trivial: None,
    })
}

/// Classifies a fundamental class through its generating P-class `restriction`.
pub fn classify_type(
    net: &ReactionNetwork,
    class: &[usize],
    restriction: &[usize],
) -> Result<SubnetworkType, DecompositionError> {
    let inside: HashSet<usize> = class.iter().copied().collect();
    if restriction.is_empty() || restriction.iter().any(|j| !inside.contains(j)) {
        return Err(DecompositionError::NotAPartition(
            "generating class must be a nonempty subset of the class".into(),
        ));
    }
    let block = net.stoichiometric_matrix().select_columns(restriction);
    let t = restriction.len();
    let rk = rank(&block);
    if rk == t {
        return Ok(SubnetworkType::TypeI);
    }
    let kernel = kernel_basis(&block);
    let minimally_dependent =
        rk + 1 == t && (0..t).all(|row| !kernel.get(row, 0).is_zero());
    if !minimally_dependent {
        return Err(DecompositionError::Trichotomy {
            class: restriction.iter().map(|&j| net.reaction(j).id.clone()).collect(),
        });
    }
    Ok(if is_big_cycle(net, restriction) { SubnetworkType::TypeIII } else { SubnetworkType::TypeII })
}

/// Undirected complex graph of `reactions` is one cycle through at least three complexes.
fn is_big_cycle(net: &ReactionNetwork, reactions: &[usize]) -> bool {
    let vertices: BTreeSet<usize> = reactions
        .iter()
        .flat_map(|&j| [net.reactant_of(j), net.product_of(j)])
        .collect();
    if vertices.len() < 3 || vertices.len() != reactions.len() {
        return false;
    }
    let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut degree = vec![0usize; vertices.len()];
    let mut uf = UnionFind::new(vertices.len());
    for &j in reactions {
        let (a, b) = (local[&net.reactant_of(j)], local[&net.product_of(j)]);
        degree[a] += 1;
        degree[b] += 1;
        uf.union(a, b);
    }
    degree.iter().all(|&d| d == 2) && uf.groups().len() == 1
}

/// Two-block report for `{N_O, N_O'}`; the second block is omitted when `O' = R`'s complement is empty.
pub fn o_decomposition(net: &ReactionNetwork, o: &Orientation) -> Result<DecompositionReport, DecompositionError> {
    let complement = o.complement(net);
    let classes = if complement.is_empty() {
        vec![o.members().to_vec()]
    } else {
        vec![o.members().to_vec(), complement]
    };
    let p = ReactionPartition::new(PartitionKind::O, classes, None)?;
    let mut report = analyze_partition(net, &p)?;
    let first = report
        .classes
        .iter()
        .find(|c| c.reactions.first() == Some(&net.reaction(o.members()[0]).id))
        .map(|c| c.s);
    report.trivial = Some(first == Some(report.s));
    Ok(report)
}
