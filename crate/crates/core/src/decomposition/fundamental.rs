use std::collections::HashMap;

use super::orientation::{default_orientation, l_o_matrix, Orientation};
use super::partition::{PartitionKind, ReactionPartition};
use crate::linalg::{kernel_basis, Rational, RationalMatrix};
use crate::network::ReactionNetwork;

/// `dim Ker L_O`.
pub fn kernel_dimension(net: &ReactionNetwork, o: &Orientation) -> usize {
    kernel_basis(&l_o_matrix(net, o)).cols()
}

/// P-decomposition of the orientation, from the canonical kernel basis.
pub fn p_decomposition(net: &ReactionNetwork, o: &Orientation) -> ReactionPartition {
    p_partition_from_kernel(o, &kernel_basis(&l_o_matrix(net, o)))
}

/// Groups the orientation's reactions by their rows in `kernel` (|O| x d, any basis).
///
/// Zero rows form the zero class; the rest are grouped up to a nonzero scalar.
pub fn p_partition_from_kernel(o: &Orientation, kernel: &RationalMatrix) -> ReactionPartition {
    assert_eq!(kernel.rows(), o.len(), "kernel rows must match the orientation");
    let mut zero = Vec::new();
    let mut keyed: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (row, &j) in o.members().iter().enumerate() {
        let entries = kernel.row(row);
        let Some(lead) = entries.iter().find(|v| !v.is_zero()) else {
            zero.push(j);
            continue;
        };
        let key: Vec<Rational> = entries.iter().map(|v| v / lead).collect();
        let slot = *keyed.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(j);
    }
    let zero = (!zero.is_empty()).then_some(zero);
    ReactionPartition::new(PartitionKind::P, classes, zero).expect("rows of the orientation are disjoint")
}

/// F-decomposition: P-classes under the default orientation with reverse partners merged in.
pub fn f_decomposition(net: &ReactionNetwork) -> ReactionPartition {
    f_decomposition_with(net, &default_orientation(net))
}

/// F-decomposition generated from a specific orientation; the result does not depend on it.
pub fn f_decomposition_with(net: &ReactionNetwork, o: &Orientation) -> ReactionPartition {
    let p = p_decomposition(net, o);
    let widen = |class: &[usize]| -> Vec<usize> {
        class
            .iter()
            .flat_map(|&j| std::iter::once(j).chain(net.reaction(j).reverse_of))
            .collect()
    };
    let zero = p.zero_class().map(widen);
    let classes = p.nonzero_classes().iter().map(|c| widen(c)).collect();
    ReactionPartition::new(PartitionKind::F, classes, zero).expect("partners of distinct classes are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::parse_network;

    #[test]
    fn triangle_is_one_class() {
        let net = parse_network("R1: A -> B\nR2: B -> C\nR3: C -> A").unwrap();
        let p = p_decomposition(&net, &default_orientation(&net));
        assert_eq!(p.classes(), &[vec![0, 1, 2]]);
        assert!(p.zero_class().is_none());
    }

    #[test]
    fn reversible_pair_has_trivial_kernel() {
        let net = parse_network("R1: A <-> B").unwrap();
        let o = default_orientation(&net);
        assert_eq!(kernel_dimension(&net, &o), 0);
        let p = p_decomposition(&net, &o);
        assert_eq!(p.zero_class(), Some(&[0][..]));
        assert_eq!(p.w(), 0);
        let f = f_decomposition(&net);
        assert_eq!(f.zero_class(), Some(&[0, 1][..]));
    }

    #[test]
    fn opposite_sign_rows_are_proportional() {
        // kernel rows (1) and (-1) land in the same class
        let net = parse_network("R1: A -> B\nR2: 2B -> 2A").unwrap();
        let p = p_decomposition(&net, &default_orientation(&net));
        assert_eq!(p.classes(), &[vec![0, 1]]);
    }

    #[test]
    fn separate_cycles_stay_separate() {
        let net = parse_network("R1: A -> B\nR2: B -> A\nR3: C -> D\nR4: D -> E\nR5: E -> C").unwrap();
        let f = f_decomposition(&net);
        assert_eq!(f.classes(), &[vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(f.zero_class(), Some(&[0, 1][..]));
        assert_eq!(f.w(), 1);
    }
}
