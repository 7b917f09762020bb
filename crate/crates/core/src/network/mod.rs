//! Reaction network data model, structural matrices and graph statistics.

mod dsl;
mod graph;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{in_column_space, rank, LinalgError, Rational, RationalMatrix};

pub use dsl::{parse_network, parse_system, render_network, split_sections, DslError, KineticsSection};
pub use graph::{strongly_connected_components, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("reaction {id} has identical reactant and product complex")]
    SelfLoop { id: String },
    #[error("reaction {id} duplicates reaction {other}")]
    DuplicateReaction { id: String, other: String },
    #[error("reaction id {id} is used more than once")]
    DuplicateId { id: String },
    #[error("species {name} listed more than once")]
    DuplicateSpecies { name: String },
    #[error("invalid identifier {name:?}")]
    InvalidName { name: String },
    #[error("coefficient of {species} must be positive, got {value}")]
    NonPositiveCoefficient { species: String, value: Rational },
    #[error("unknown reaction {id}")]
    UnknownReaction { id: String },
    #[error("expected a vector of length {expected}, got {actual}")]
    VectorLength { expected: usize, actual: usize },
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// A formal combination of species with positive coefficients. The empty map is the zero complex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Complex {
    terms: BTreeMap<String, Rational>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex::default()
    }

    pub fn from_terms<S: Into<String>>(
        terms: impl IntoIterator<Item = (S, Rational)>,
    ) -> Result<Self, NetworkError> {
        let mut c = Complex::zero();
        for (s, v) in terms {
            let s = s.into();
            if !is_identifier(&s) {
                return Err(NetworkError::InvalidName { name: s });
            }
            if !v.is_positive() {
                return Err(NetworkError::NonPositiveCoefficient { species: s, value: v });
            }
            *c.terms.entry(s).or_insert_with(Rational::zero) += &v;
        }
        Ok(c)
    }

    /// Convenience constructor for integer coefficients; panics on invalid input.
    pub fn of(terms: &[(&str, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(s, k)| (s, Rational::from_integer(k))))
            .expect("valid complex literal")
    }

    pub fn species(name: &str) -> Self {
        Self::of(&[(name, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<String, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, species: &str) -> Rational {
        self.terms.get(species).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Complex) -> Complex {
        let mut out = self.clone();
        for (s, v) in &other.terms {
            *out.terms.entry(s.clone()).or_insert_with(Rational::zero) += v;
        }
        out
    }

    /// Multiplies every coefficient by a positive factor.
    pub fn scale(&self, factor: &Rational) -> Complex {
        assert!(factor.is_positive(), "complex scale factor must be positive");
        Complex {
            terms: self.terms.iter().map(|(s, v)| (s.clone(), v * factor)).collect(),
        }
    }

    pub(crate) fn render_with_order(&self, order: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut names: Vec<&String> = self.terms.keys().collect();
        let pos: HashMap<&String, usize> = order.iter().enumerate().map(|(i, s)| (s, i)).collect();
        names.sort_by_key(|s| (pos.get(s).copied().unwrap_or(usize::MAX), (*s).clone()));
        names
            .into_iter()
            .map(|s| {
                let v = &self.terms[s];
                if v.is_one() {
                    s.clone()
                } else if v.is_integer() {
                    format!("{v}{s}")
                } else {
                    format!("{v} {s}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with_order(&[]))
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reaction {
    pub id: String,
    pub reactant: Complex,
    pub product: Complex,
    /// Index of the reverse partner, when `product -> reactant` is also a reaction.
    pub reverse_of: Option<usize>,
}

/// Immutable reaction network `(species, complexes, reactions)`.
///
/// Complexes are deduplicated structurally and two reactions are a reversible
/// pair exactly when one is the other with reactant and product swapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionNetwork {
    species: Vec<String>,
    complexes: Vec<Complex>,
    reactions: Vec<Reaction>,
    reactant_index: Vec<usize>,
    product_index: Vec<usize>,
    stoichiometric: RationalMatrix,
}

impl ReactionNetwork {
    /// Builds a network from `(id, reactant, product)` triples.
    ///
    /// `pinned_species` fixes the order of the leading species; any other
    /// species is appended in order of first appearance.
    pub fn new(
        pinned_species: Vec<String>,
        reactions: Vec<(String, Complex, Complex)>,
    ) -> Result<Self, NetworkError> {
        let mut species = Vec::new();
        let mut seen_species = HashSet::new();
        for s in pinned_species {
            if !is_identifier(&s) {
                return Err(NetworkError::InvalidName { name: s });
            }
            if !seen_species.insert(s.clone()) {
                return Err(NetworkError::DuplicateSpecies { name: s });
            }
            species.push(s);
        }

        let mut ids = HashSet::new();
        let mut complexes: Vec<Complex> = Vec::new();
        let mut complex_pos: HashMap<Complex, usize> = HashMap::new();
        let mut pair_pos: HashMap<(usize, usize), usize> = HashMap::new();
        let mut reactant_index = Vec::with_capacity(reactions.len());
        let mut product_index = Vec::with_capacity(reactions.len());
        let mut out = Vec::with_capacity(reactions.len());

        for (id, reactant, product) in reactions {
            if !is_identifier(&id) {
                return Err(NetworkError::InvalidName { name: id });
            }
            if !ids.insert(id.clone()) {
                return Err(NetworkError::DuplicateId { id });
            }
            if reactant == product {
                return Err(NetworkError::SelfLoop { id });
            }
            let mut intern = |c: &Complex| {
                for s in c.terms.keys() {
                    if seen_species.insert(s.clone()) {
                        species.push(s.clone());
                    }
                }
                *complex_pos.entry(c.clone()).or_insert_with(|| {
                    complexes.push(c.clone());
                    complexes.len() - 1
                })
            };
            let ri = intern(&reactant);
            let pi = intern(&product);
            if let Some(&other) = pair_pos.get(&(ri, pi)) {
                let other: &Reaction = &out[other];
                return Err(NetworkError::DuplicateReaction { id, other: other.id.clone() });
            }
            pair_pos.insert((ri, pi), out.len());
            reactant_index.push(ri);
            product_index.push(pi);
            out.push(Reaction { id, reactant, product, reverse_of: None });
        }
        for j in 0..out.len() {
            out[j].reverse_of = pair_pos.get(&(product_index[j], reactant_index[j])).copied();
        }

        let mut net = ReactionNetwork {
            species,
            complexes,
            reactions: out,
            reactant_index,
            product_index,
            stoichiometric: RationalMatrix::zeros(0, 0),
        };
        let n = net
            .molecularity_matrix()
            .mul(&net.incidence_matrix())
            .expect("Y and I_a have compatible shapes");
        debug_assert_eq!(n, net.reaction_vector_matrix());
        net.stoichiometric = n;
        Ok(net)
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn reaction(&self, j: usize) -> &Reaction {
        &self.reactions[j]
    }

    pub fn reaction_ids(&self) -> Vec<String> {
        self.reactions.iter().map(|r| r.id.clone()).collect()
    }

    pub fn reaction_index(&self, id: &str) -> Option<usize> {
        self.reactions.iter().position(|r| r.id == id)
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    pub fn reactant_of(&self, j: usize) -> usize {
        self.reactant_index[j]
    }

    pub fn product_of(&self, j: usize) -> usize {
        self.product_index[j]
    }

    pub fn complex_index(&self, c: &Complex) -> Option<usize> {
        self.complexes.iter().position(|x| x == c)
    }

    pub fn m(&self) -> usize {
        self.species.len()
    }

    pub fn n(&self) -> usize {
        self.complexes.len()
    }

    pub fn r(&self) -> usize {
        self.reactions.len()
    }

    pub fn r_rev(&self) -> usize {
        self.reactions.iter().filter(|r| r.reverse_of.is_some()).count() / 2
    }

    pub fn r_irr(&self) -> usize {
        self.reactions.iter().filter(|r| r.reverse_of.is_none()).count()
    }

    pub fn is_reversible(&self, j: usize) -> bool {
        self.reactions[j].reverse_of.is_some()
    }

    pub fn render_complex(&self, c: &Complex) -> String {
        c.render_with_order(&self.species)
    }

    pub fn render_reaction(&self, j: usize) -> String {
        let r = &self.reactions[j];
        format!(
            "{}: {} -> {}",
            r.id,
            self.render_complex(&r.reactant),
            self.render_complex(&r.product)
        )
    }

    /// `Y`: species x complexes, `Y[i][j]` is the coefficient of species i in complex j.
    pub fn molecularity_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.m(), self.n(), |i, j| {
            self.complexes[j].coefficient(&self.species[i])
        })
        .with_labels(
            self.species.clone(),
            self.complexes.iter().map(|c| self.render_complex(c)).collect(),
        )
    }

    /// `I_a`: complexes x reactions, -1 at the reactant and +1 at the product.
    pub fn incidence_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n(), self.r());
        for j in 0..self.r() {
            m.set(self.reactant_index[j], j, Rational::from_integer(-1));
            m.set(self.product_index[j], j, Rational::one());
        }
        m.with_labels(
            self.complexes.iter().map(|c| self.render_complex(c)).collect(),
            self.reaction_ids(),
        )
    }

    /// `N = Y I_a`: species x reactions.
    pub fn stoichiometric_matrix(&self) -> &RationalMatrix {
        &self.stoichiometric
    }

    fn reaction_vector_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.m(), self.r(), |i, j| {
            let s = &self.species[i];
            self.reactions[j].product.coefficient(s) - self.reactions[j].reactant.coefficient(s)
        })
        .with_labels(self.species.clone(), self.reaction_ids())
    }

    /// Reaction vector `y' - y` indexed by this network's species.
    pub fn reaction_vector(&self, j: usize) -> Vec<Rational> {
        self.stoichiometric.column(j)
    }

    pub fn rank(&self) -> usize {
        rank(&self.stoichiometric)
    }

    /// Connected components of the undirected reaction graph, as sorted complex index lists.
    pub fn linkage_classes(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n());
        for j in 0..self.r() {
            uf.union(self.reactant_index[j], self.product_index[j]);
        }
        uf.groups()
    }

    /// Strongly connected components of the directed reaction graph.
    pub fn strong_linkage_classes(&self) -> Vec<Vec<usize>> {
        let edges: Vec<(usize, usize)> = (0..self.r())
            .map(|j| (self.reactant_index[j], self.product_index[j]))
            .collect();
        strongly_connected_components(self.n(), &edges)
    }

    /// Strong linkage classes with no reaction leaving the class.
    pub fn terminal_strong_linkage_classes(&self) -> Vec<Vec<usize>> {
        let strong = self.strong_linkage_classes();
        let mut class_of = vec![0; self.n()];
        for (k, class) in strong.iter().enumerate() {
            for &c in class {
                class_of[c] = k;
            }
        }
        let mut has_exit = vec![false; strong.len()];
        for j in 0..self.r() {
            let (a, b) = (class_of[self.reactant_index[j]], class_of[self.product_index[j]]);
            if a != b {
                has_exit[a] = true;
            }
        }
        strong
            .into_iter()
            .enumerate()
            .filter(|(k, _)| !has_exit[*k])
            .map(|(_, c)| c)
            .collect()
    }

    pub fn stats(&self) -> NetworkStats {
        let l = self.linkage_classes().len();
        let sl = self.strong_linkage_classes().len();
        let s = self.rank();
        let (n, m, r) = (self.n(), self.m(), self.r());
        let deficiency = (n as i64) - (l as i64) - (s as i64);
        debug_assert!(deficiency >= 0);
        NetworkStats {
            m,
            n,
            r,
            r_irr: self.r_irr(),
            r_rev: self.r_rev(),
            l,
            sl,
            s,
            deficiency: deficiency as usize,
            weakly_reversible: sl == l,
            terminal_strong_classes: self
                .terminal_strong_linkage_classes()
                .into_iter()
                .map(|c| c.into_iter().map(|i| self.render_complex(&self.complexes[i])).collect())
                .collect(),
        }
    }

    /// Counts `(n_i, l_i, s_i)` of the subnetwork induced by a set of reactions.
    pub fn subnetwork_counts(&self, reactions: &[usize]) -> SubnetworkCounts {
        let mut touched: Vec<usize> = reactions
            .iter()
            .flat_map(|&j| [self.reactant_index[j], self.product_index[j]])
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let local: HashMap<usize, usize> = touched.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut uf = UnionFind::new(touched.len());
        for &j in reactions {
            uf.union(local[&self.reactant_index[j]], local[&self.product_index[j]]);
        }
        let s = rank(&self.stoichiometric.select_columns(reactions));
        let n = touched.len();
        let l = uf.groups().len();
        SubnetworkCounts { n, l, s, deficiency: n as i64 - l as i64 - s as i64 }
    }

    /// Subnetwork made of the given reactions, keeping only touched species and complexes.
    pub fn subnetwork(&self, reactions: &[usize]) -> ReactionNetwork {
        let mut sorted = reactions.to_vec();
        sorted.sort_unstable();
        let triples = sorted
            .iter()
            .map(|&j| {
                let r = &self.reactions[j];
                (r.id.clone(), r.reactant.clone(), r.product.clone())
            })
            .collect::<Vec<_>>();
        let used: HashSet<&String> = triples
            .iter()
            .flat_map(|(_, a, b)| a.terms.keys().chain(b.terms.keys()))
            .collect();
        let pinned = self.species.iter().filter(|s| used.contains(s)).cloned().collect();
        ReactionNetwork::new(pinned, triples).expect("subnetwork of a valid network is valid")
    }

    /// Whether `x - x_star` lies in the stoichiometric subspace.
    pub fn same_stoichiometric_class(
        &self,
        x: &[Rational],
        x_star: &[Rational],
    ) -> Result<bool, NetworkError> {
        for v in [x, x_star] {
            if v.len() != self.m() {
                return Err(NetworkError::VectorLength { expected: self.m(), actual: v.len() });
            }
        }
        let diff: Vec<Rational> = x.iter().zip(x_star).map(|(a, b)| a - b).collect();
        in_column_space(&self.stoichiometric, &diff).map_err(|e| match e {
            LinalgError::Dimension(_) | LinalgError::RowLabels { .. } => {
                NetworkError::VectorLength { expected: self.m(), actual: diff.len() }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubnetworkCounts {
    pub n: usize,
    pub l: usize,
    pub s: usize,
    pub deficiency: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetworkStats {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub r_irr: usize,
    pub r_rev: usize,
    pub l: usize,
    pub sl: usize,
    pub s: usize,
    pub deficiency: usize,
    pub weakly_reversible: bool,
    pub terminal_strong_classes: Vec<Vec<String>>,
}
