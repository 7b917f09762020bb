use serde::Serialize;

use super::DecompositionError;
use crate::linalg::RationalMatrix;
use crate::network::ReactionNetwork;

/// One direction of every reversible pair plus every irreversible reaction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    members: Vec<usize>,
}

impl Orientation {
    /// Validates the selection against `net`; `members` may be given in any order.
    pub fn new(net: &ReactionNetwork, mut members: Vec<usize>) -> Result<Self, DecompositionError> {
        members.sort_unstable();
        members.dedup();
        let mut chosen = vec![false; net.r()];
        for &j in &members {
            if j >= net.r() {
                return Err(DecompositionError::InvalidOrientation(format!("reaction index {j} out of range")));
            }
            chosen[j] = true;
        }
        for j in 0..net.r() {
            let id = &net.reaction(j).id;
            match net.reaction(j).reverse_of {
                None if !chosen[j] => {
                    return Err(DecompositionError::InvalidOrientation(format!(
                        "irreversible reaction {id} is missing"
                    )))
                }
                Some(p) if chosen[j] == chosen[p] => {
                    return Err(DecompositionError::InvalidOrientation(format!(
                        "exactly one of {id} and {} must be chosen",
                        net.reaction(p).id
                    )))
                }
                _ => {}
            }
        }
        Ok(Orientation { members })
    }

    pub fn from_ids(net: &ReactionNetwork, ids: &[&str]) -> Result<Self, DecompositionError> {
        let members = ids
            .iter()
            .map(|id| {
                net.reaction_index(id)
                    .ok_or_else(|| DecompositionError::UnknownReaction(id.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(net, members)
    }

    /// Sorted reaction indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    /// Reactions not in the orientation.
    pub fn complement(&self, net: &ReactionNetwork) -> Vec<usize> {
        (0..net.r()).filter(|&j| !self.contains(j)).collect()
    }

    pub fn ids(&self, net: &ReactionNetwork) -> Vec<String> {
        self.members.iter().map(|&j| net.reaction(j).id.clone()).collect()
    }
}

/// All irreversible reactions and the first-listed member of each reversible pair.
pub fn default_orientation(net: &ReactionNetwork) -> Orientation {
    let members = (0..net.r())
        .filter(|&j| net.reaction(j).reverse_of.is_none_or(|p| j < p))
        .collect();
    Orientation { members }
}

/// Number of orientations, `2^r_rev`, or `None` when it does not fit in a `u128`.
pub fn orientation_count(net: &ReactionNetwork) -> Option<u128> {
    1u128.checked_shl(u32::try_from(net.r_rev()).ok()?)
}

/// Every orientation of `net`, refusing when there are more than `cap`.
pub fn enumerate_orientations(net: &ReactionNetwork, cap: u128) -> Result<Vec<Orientation>, DecompositionError> {
    let count = orientation_count(net);
    match count {
        Some(c) if c <= cap => {}
        _ => {
            return Err(DecompositionError::TooManyOrientations {
                r_rev: net.r_rev(),
                cap,
            })
        }
    }
    let base = default_orientation(net);
    let pairs: Vec<(usize, usize)> = base
        .members
        .iter()
        .filter_map(|&j| net.reaction(j).reverse_of.map(|p| (j, p)))
        .collect();
    let total = count.expect("checked above") as usize;
    let mut out = Vec::with_capacity(total);
    for mask in 0..total {
        let mut members: Vec<usize> = base
            .members
            .iter()
            .copied()
            .filter(|j| net.reaction(*j).reverse_of.is_none())
            .collect();
        for (bit, &(fwd, rev)) in pairs.iter().enumerate() {
            members.push(if mask >> bit & 1 == 1 { rev } else { fwd });
        }
        members.sort_unstable();
        out.push(Orientation { members });
    }
    Ok(out)
}

/// Columns of the stoichiometric matrix belonging to the orientation: the matrix of `L_O`.
pub fn l_o_matrix(net: &ReactionNetwork, o: &Orientation) -> RationalMatrix {
    net.stoichiometric_matrix().select_columns(&o.members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::parse_network;

    #[test]
    fn default_orientation_picks_first_listed() {
        let net = parse_network("R1: A <-> B").unwrap();
        assert_eq!(default_orientation(&net).ids(&net), vec!["R1f"]);
        let net = parse_network("R1: A -> B\nR2: B -> C").unwrap();
        assert_eq!(default_orientation(&net).len(), net.r());
    }

    #[test]
    fn orientation_validation() {
        let net = parse_network("R1: A <-> B\nR2: B -> C").unwrap();
        assert!(Orientation::from_ids(&net, &["R1r", "R2"]).is_ok());
        assert!(Orientation::from_ids(&net, &["R1f", "R1r", "R2"]).is_err());
        assert!(Orientation::from_ids(&net, &["R1f"]).is_err());
        assert!(Orientation::from_ids(&net, &["R2"]).is_err());
        assert!(matches!(
            Orientation::from_ids(&net, &["R7"]),
            Err(DecompositionError::UnknownReaction(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let net = parse_network("R1: A -> B").unwrap();
        assert_eq!(enumerate_orientations(&net, 64).unwrap().len(), 1);
        let net = parse_network("R1: A <-> B\nR2: B <-> C\nR3: C -> A").unwrap();
        let all = enumerate_orientations(&net, 64).unwrap();
        assert_eq!(all.len(), 4);
        for o in &all {
            assert!(Orientation::new(&net, o.members().to_vec()).is_ok());
        }
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 4);
        assert!(matches!(
            enumerate_orientations(&net, 3),
            Err(DecompositionError::TooManyOrientations { r_rev: 2, cap: 3 })
        ));
    }

    #[test]
    fn l_o_single_column() {
        let net = parse_network("R1: A -> B").unwrap();
        let lo = l_o_matrix(&net, &default_orientation(&net));
        assert_eq!(lo, RationalMatrix::from_i64_rows(&[&[-1], &[1]]).with_labels(
            vec!["A".into(), "B".into()],
            vec!["R1".into()]
        ));
    }
}
