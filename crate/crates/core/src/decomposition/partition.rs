use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use super::DecompositionError;
use crate::network::ReactionNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionKind {
    /// Equivalence classes on an orientation.
    P,
    /// Fundamental classes on the full reaction set.
    F,
    /// The two-block split into an orientation and its complement.
    O,
    Linkage,
    Species,
    C,
    User,
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionKind::P => "P",
            PartitionKind::F => "F",
            PartitionKind::O => "O",
            PartitionKind::Linkage => "linkage",
            PartitionKind::Species => "species",
            PartitionKind::C => "C",
            PartitionKind::User => "user",
        })
    }
}

/// Partition of a reaction set into disjoint, nonempty classes of reaction indices.
///
/// Classes are kept sorted internally and ordered by smallest member, with the
/// designated zero class (P0 / C0), when present, always first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReactionPartition {
    kind: PartitionKind,
    classes: Vec<Vec<usize>>,
    has_zero_class: bool,
}

impl ReactionPartition {
    pub fn new(
        kind: PartitionKind,
        classes: Vec<Vec<usize>>,
        zero_class: Option<Vec<usize>>,
    ) -> Result<Self, DecompositionError> {
        let mut seen = HashSet::new();
        let mut normalized = Vec::with_capacity(classes.len() + 1);
        let has_zero_class = zero_class.is_some();
        for class in zero_class.into_iter().chain(classes) {
            if class.is_empty() {
                return Err(DecompositionError::NotAPartition("empty class".into()));
            }
            let mut class = class;
            class.sort_unstable();
            for &j in &class {
                if !seen.insert(j) {
                    return Err(DecompositionError::NotAPartition(format!(
                        "reaction index {j} appears in more than one class"
                    )));
                }
            }
            normalized.push(class);
        }
        let start = usize::from(has_zero_class);
        normalized[start..].sort_by_key(|c| c[0]);
        Ok(ReactionPartition { kind, classes: normalized, has_zero_class })
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    /// All classes, zero class first when present.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn zero_class(&self) -> Option<&[usize]> {
        self.has_zero_class.then(|| self.classes[0].as_slice())
    }

    pub fn nonzero_classes(&self) -> &[Vec<usize>] {
        &self.classes[usize::from(self.has_zero_class)..]
    }

    pub fn is_zero_class(&self, index: usize) -> bool {
        self.has_zero_class && index == 0
    }

    /// Number of non-zero classes.
    pub fn w(&self) -> usize {
        self.nonzero_classes().len()
    }

    pub fn ground_set(&self) -> BTreeSet<usize> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn class_ids(&self, net: &ReactionNetwork) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&j| net.reaction(j).id.clone()).collect())
            .collect()
    }

    /// The same partition without regard to class order or the zero-class marker.
    pub fn as_set(&self) -> BTreeSet<Vec<usize>> {
        self.classes.iter().cloned().collect()
    }
}

/// Reactions grouped by the linkage class of their complexes.
pub fn linkage_partition(net: &ReactionNetwork) -> ReactionPartition {
    let classes = net.linkage_classes();
    let mut class_of = vec![0; net.n()];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    let mut groups = vec![Vec::new(); classes.len()];
    for j in 0..net.r() {
        groups[class_of[net.reactant_of(j)]].push(j);
    }
    ReactionPartition::new(PartitionKind::Linkage, groups, None).expect("linkage classes partition R")
}

/// Reactions grouped by the single species they change.
///
/// Fails if some reaction vector changes more than one species.
pub fn species_partition(net: &ReactionNetwork) -> Result<ReactionPartition, DecompositionError> {
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); net.m()];
    let n = net.stoichiometric_matrix();
    for j in 0..net.r() {
        let support: Vec<usize> = (0..net.m()).filter(|&i| !n.get(i, j).is_zero()).collect();
        match support.as_slice() {
            [i] => groups[*i].push(j),
            _ => {
                return Err(DecompositionError::NotAPartition(format!(
                    "reaction {} changes {} species",
                    net.reaction(j).id,
                    support.len()
                )))
            }
        }
    }
    groups.retain(|g| !g.is_empty());
    ReactionPartition::new(PartitionKind::Species, groups, None)
}

/// Reads a partition given as one class per line of reaction ids.
///
/// Ids are separated by whitespace or commas; `#` starts a comment; a line
/// prefixed with `0:` is the zero class.
pub fn parse_partition(
    text: &str,
    net: &ReactionNetwork,
    kind: PartitionKind,
) -> Result<ReactionPartition, DecompositionError> {
    let mut classes = Vec::new();
    let mut zero = None;
    for raw in text.lines() {
        let mut body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let is_zero = match body.strip_prefix("0:") {
            Some(rest) => {
                body = rest;
                true
            }
            None => false,
        };
        let class = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|id| net.reaction_index(id).ok_or_else(|| DecompositionError::UnknownReaction(id.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if is_zero {
            if zero.is_some() {
                return Err(DecompositionError::NotAPartition("more than one zero class".into()));
            }
            zero = Some(class);
        } else {
            classes.push(class);
        }
    }
    if classes.is_empty() && zero.is_none() {
        return Err(DecompositionError::NotAPartition("no classes given".into()));
    }
    ReactionPartition::new(kind, classes, zero)
}

/// Whether every class of `a` lies inside some class of `b`.
pub fn is_refinement(a: &ReactionPartition, b: &ReactionPartition) -> Result<bool, DecompositionError> {
    if a.ground_set() != b.ground_set() {
        return Err(DecompositionError::GroundSetMismatch);
    }
    let mut owner = std::collections::HashMap::new();
    for (k, class) in b.classes().iter().enumerate() {
        for &j in class {
            owner.insert(j, k);
        }
    }
    Ok(a.classes().iter().all(|class| {
        let k = owner[&class[0]];
        class.iter().all(|j| owner[j] == k)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::parse_network;

    #[test]
    fn rejects_overlap_and_empty() {
        assert!(ReactionPartition::new(PartitionKind::User, vec![vec![0, 1], vec![1]], None).is_err());
        assert!(ReactionPartition::new(PartitionKind::User, vec![vec![]], None).is_err());
    }

    #[test]
    fn zero_class_is_listed_first() {
        let p = ReactionPartition::new(PartitionKind::P, vec![vec![3, 1], vec![0]], Some(vec![2])).unwrap();
        assert_eq!(p.classes(), &[vec![2], vec![0], vec![1, 3]]);
        assert_eq!(p.zero_class(), Some(&[2][..]));
        assert_eq!(p.w(), 2);
    }

    #[test]
    fn refinement_basics() {
        let singles = ReactionPartition::new(PartitionKind::User, vec![vec![0], vec![1], vec![2]], None).unwrap();
        let pair = ReactionPartition::new(PartitionKind::User, vec![vec![0, 1], vec![2]], None).unwrap();
        let whole = ReactionPartition::new(PartitionKind::User, vec![vec![0, 1, 2]], None).unwrap();
        assert!(is_refinement(&singles, &pair).unwrap());
        assert!(is_refinement(&pair, &pair).unwrap());
        assert!(is_refinement(&pair, &whole).unwrap());
        assert!(!is_refinement(&whole, &pair).unwrap());
        let other = ReactionPartition::new(PartitionKind::User, vec![vec![0, 1]], None).unwrap();
        assert_eq!(is_refinement(&other, &pair), Err(DecompositionError::GroundSetMismatch));
    }

    #[test]
    fn linkage_and_species_partitions() {
        let net = parse_network("R1: A -> B\nR2: B -> A\nR3: C -> D").unwrap();
        assert_eq!(linkage_partition(&net).classes(), &[vec![0, 1], vec![2]]);
        assert!(species_partition(&net).is_err());
        let net = parse_network("R1: X -> 2X\nR2: X -> 0\nR3: Y -> 0").unwrap();
        assert_eq!(species_partition(&net).unwrap().classes(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn user_partition_text() {
        let net = parse_network("R1: A -> B\nR2: B -> C\nR3: C -> A").unwrap();
        let p = parse_partition("# two classes\nR1, R2\nR3\n", &net, PartitionKind::User).unwrap();
        assert_eq!(p.classes(), &[vec![0, 1], vec![2]]);
        let p = parse_partition("0: R3\nR1 R2", &net, PartitionKind::P).unwrap();
        assert_eq!(p.zero_class(), Some(&[2][..]));
        assert!(parse_partition("R1 R9", &net, PartitionKind::User).is_err());
        assert!(parse_partition("", &net, PartitionKind::User).is_err());
    }
}
