use std::collections::BTreeSet;

use fdecomp::decomposition::{
    default_orientation, enumerate_orientations, f_decomposition, f_decomposition_with, l_o_matrix,
    p_decomposition, p_partition_from_kernel,
};
use fdecomp::generators::{random_kinetics, random_network, RandomNetworkParams};
use fdecomp::kinetics::{cf_subsets, classify_plk, PlkClass, PowerLawKinetics};
use fdecomp::linalg::{kernel_basis, rank, rref};
use fdecomp::network::render_network;
use fdecomp::{parse_network, Rational, RationalMatrix, ReactionNetwork};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| {
            let rows: Vec<&[i64]> = rows.iter().map(|v| v.as_slice()).collect();
            RationalMatrix::from_i64_rows(&rows)
        })
    })
}

fn network() -> impl Strategy<Value = ReactionNetwork> {
    (any::<u64>(), 1usize..=4, 1usize..=8, 1u32..=2, 0.0f64..=0.6).prop_filter_map(
        "parameters admit a network",
        |(seed, species, reactions, max_molecularity, reversible_fraction)| {
            random_network(seed, &RandomNetworkParams { species, reactions, reversible_fraction, max_molecularity }).ok()
        },
    )
}

fn ids(net: &ReactionNetwork, classes: &[Vec<usize>]) -> BTreeSet<BTreeSet<String>> {
    classes.iter().map(|c| c.iter().map(|&j| net.reaction(j).id.clone()).collect()).collect()
}

/// Applies `col[a] += factor * col[b]` to every row: a unimodular change of basis.
fn shear(m: &RationalMatrix, a: usize, b: usize, factor: i64) -> RationalMatrix {
    let f = Rational::from_integer(factor);
    RationalMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        if j == a {
            m.get(i, a) + &(&f * m.get(i, b))
        } else {
            m.get(i, j).clone()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn row_rank_equals_column_rank(m in matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_plus_nullity_is_column_count(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.cols(), m.cols());
        if k.cols() > 0 {
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(rank(&k), k.cols());
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let (once, pivots) = rref(&m);
        let (twice, again) = rref(&once);
        prop_assert_eq!(once, twice);
        prop_assert_eq!(pivots, again);
    }

    #[test]
    fn p_classes_do_not_depend_on_the_kernel_basis(
        net in network(),
        ops in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), -2i64..=2), 0..6),
    ) {
        let o = default_orientation(&net);
        let mut k = kernel_basis(&l_o_matrix(&net, &o));
        if k.cols() >= 2 {
            for (a, b, factor) in ops {
                let (a, b) = (a.index(k.cols()), b.index(k.cols()));
                if a != b {
                    k = shear(&k, a, b, factor);
                }
            }
        }
        let p = p_decomposition(&net, &o);
        let q = p_partition_from_kernel(&o, &k);
        prop_assert_eq!(p.as_set(), q.as_set());
        prop_assert_eq!(p.zero_class(), q.zero_class());
    }

    #[test]
    fn f_classes_do_not_depend_on_the_orientation(net in network()) {
        let reference = f_decomposition(&net);
        for o in enumerate_orientations(&net, 64).unwrap() {
            let f = f_decomposition_with(&net, &o);
            prop_assert_eq!(ids(&net, f.classes()), ids(&net, reference.classes()));
        }
    }

    #[test]
    fn mass_action_is_reactant_determined(net in network()) {
        prop_assert_eq!(classify_plk(&net, &PowerLawKinetics::mass_action(&net)), PlkClass::Rdk);
    }

    #[test]
    fn cf_subsets_refine_reactant_fibers(net in network(), seed in any::<u64>()) {
        let k = random_kinetics(seed, &net);
        let mut covered = BTreeSet::new();
        for node in cf_subsets(&net, &k).nodes {
            for subset in &node.subsets {
                let row = k.row(subset[0]);
                for &j in subset {
                    prop_assert_eq!(net.reactant_of(j), node.reactant);
                    prop_assert_eq!(k.row(j), row);
                    prop_assert!(covered.insert(j));
                }
            }
        }
        prop_assert_eq!(covered.len(), net.r());
    }

    #[test]
    fn classification_ignores_reaction_order(net in network(), seed in any::<u64>(), shift in any::<prop::sample::Index>()) {
        let k = random_kinetics(seed, &net);
        let r = net.r();
        let start = shift.index(r);
        let order: Vec<usize> = (0..r).map(|i| (start + i) % r).collect();
        let triples = order
            .iter()
            .map(|&j| {
                let x = net.reaction(j);
                (x.id.clone(), x.reactant.clone(), x.product.clone())
            })
            .collect();
        let rotated = ReactionNetwork::new(net.species().to_vec(), triples).unwrap();
        let rows = order.iter().map(|&j| k.row(j).to_vec()).collect();
        let rates = order.iter().map(|&j| k.rate(j).clone()).collect();
        let rk = PowerLawKinetics::new(&rotated, rows, rates).unwrap();
        prop_assert_eq!(classify_plk(&net, &k), classify_plk(&rotated, &rk));
    }

    #[test]
    fn dsl_round_trip(net in network()) {
        let text = render_network(&net);
        let back = parse_network(&text).unwrap();
        prop_assert_eq!(back.species(), net.species());
        prop_assert_eq!(render_network(&back), text);
        for j in 0..net.r() {
            prop_assert_eq!(&back.reaction(j).reactant, &net.reaction(j).reactant);
            prop_assert_eq!(&back.reaction(j).product, &net.reaction(j).product);
            prop_assert_eq!(back.reaction(j).reverse_of, net.reaction(j).reverse_of);
        }
    }
}
