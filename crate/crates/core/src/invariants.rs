//! Structural invariants recomputed on a concrete network. Shared by the
//! `check` command and the property and acceptance suites.

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{
    analyze_partition, classify_type, default_orientation, enumerate_orientations, f_decomposition,
    f_decomposition_with, kernel_dimension, o_decomposition, p_decomposition, DecompositionReport, Orientation,
    SubnetworkType,
};
use crate::kinetics::{classify_plk, PlkClass, PowerLawKinetics};
use crate::linalg::{rank, RationalMatrix};
use crate::network::ReactionNetwork;
use crate::transform::{cf_ri_plus, verify_transform};

/// Orientation enumeration stops above this many orientations.
pub const ORIENTATION_CAP: u128 = 64;

pub const STRUCTURAL_INVARIANTS: &[&str] = &[
    "kernel_dimension",
    "orientation_invariance",
    "p_f_equivalence",
    "w_bounds",
    "independence_bounds",
    "incidence_bounds",
    "bi_independence",
    "type_trichotomy",
    "o_decomposition",
    "n_minus_l_bound",
    "c_decomposition",
    "type_ii_free_deficiency",
    "full_rank_orientation",
];

pub const KINETIC_INVARIANTS: &[&str] = &["cf_ri_preservation"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("unknown invariant {0:?}")]
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, ok: impl Into<String>) -> InvariantOutcome {
    InvariantOutcome {
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() { ok.into() } else { failures.join("; ") },
    }
}

/// Everything the structural checks share, computed once.
struct Context<'a> {
    net: &'a ReactionNetwork,
    orientation: Orientation,
    f: Result<DecompositionReport, String>,
    p: Result<DecompositionReport, String>,
}

impl<'a> Context<'a> {
    fn new(net: &'a ReactionNetwork) -> Self {
        let orientation = default_orientation(net);
        let f = analyze_partition(net, &f_decomposition(net)).map_err(|e| e.to_string());
        let p = analyze_partition(net, &p_decomposition(net, &orientation)).map_err(|e| e.to_string());
        Context { net, orientation, f, p }
    }

    fn reports(&self) -> Result<(&DecompositionReport, &DecompositionReport), String> {
        match (&self.f, &self.p) {
            (Ok(f), Ok(p)) => Ok((f, p)),
            (Err(e), _) | (_, Err(e)) => Err(format!("analysis failed: {e}")),
        }
    }
}

/// Resolves `names` (or every structural invariant when `None`) against the known list.
pub fn select(names: Option<&[String]>) -> Result<Vec<&'static str>, InvariantError> {
    let all: Vec<&'static str> = STRUCTURAL_INVARIANTS.iter().chain(KINETIC_INVARIANTS).copied().collect();
    match names {
        None => Ok(all),
        Some(names) => names
            .iter()
            .map(|n| all.iter().copied().find(|a| a == n).ok_or_else(|| InvariantError::Unknown(n.clone())))
            .collect(),
    }
}

/// Runs the selected invariants. Kinetic invariants need `kinetics` and are skipped without it.
pub fn check_invariants(
    net: &ReactionNetwork,
    kinetics: Option<&PowerLawKinetics>,
    names: &[&'static str],
) -> Vec<InvariantOutcome> {
    let ctx = Context::new(net);
    names
        .iter()
        .filter_map(|&name| match name {
            "cf_ri_preservation" => kinetics.map(|k| cf_ri_preservation(net, k)),
            _ => Some(structural(&ctx, name)),
        })
        .collect()
}

/// Every structural invariant of `net`.
pub fn check_structural(net: &ReactionNetwork) -> Vec<InvariantOutcome> {
    check_invariants(net, None, STRUCTURAL_INVARIANTS)
}

fn structural(ctx: &Context, name: &'static str) -> InvariantOutcome {
    let net = ctx.net;
    let orientation_size = net.r_irr() + net.r_rev();
    let s = net.rank();
    if name == "kernel_dimension" {
        let d = kernel_dimension(net, &ctx.orientation);
        let failures = if d + s == orientation_size {
            Vec::new()
        } else {
            vec![format!("dim Ker L_O = {d} but r_irr + r_rev - s = {}", orientation_size as i64 - s as i64)]
        };
        return outcome(name, failures, format!("dim Ker L_O = {d}"));
    }
    if name == "orientation_invariance" {
        return orientation_invariance(net);
    }
    if name == "n_minus_l_bound" {
        let st = net.stats();
        let failures = if st.n - st.l <= orientation_size {
            Vec::new()
        } else {
            vec![format!("n - l = {} > r_irr + r_rev = {orientation_size}", st.n - st.l)]
        };
        return outcome(name, failures, format!("n - l = {} <= {orientation_size}", st.n - st.l));
    }
    if name == "o_decomposition" {
        return match o_decomposition(net, &ctx.orientation) {
            Ok(r) => {
                let mut failures = Vec::new();
                if r.trivial != Some(true) {
                    failures.push("S_O differs from S".to_string());
                }
                let d_o = r.classes[0].deficiency;
                if d_o != r.deficiency {
                    failures.push(format!("deficiency {} but deficiency of N_O is {d_o}", r.deficiency));
                }
                outcome(name, failures, format!("S_O = S and both deficiencies are {d_o}"))
            }
            Err(e) => outcome(name, vec![e.to_string()], ""),
        };
    }
    if name == "type_trichotomy" {
        return type_trichotomy(ctx);
    }

    let (f, p) = match ctx.reports() {
        Ok(pair) => pair,
        Err(e) => return outcome(name, vec![e], ""),
    };
    let mut failures = Vec::new();
    match name {
        "p_f_equivalence" => {
            for (what, a, b) in [
                ("independent", p.independent, f.independent),
                ("incidence-independent", p.incidence_independent, f.incidence_independent),
                ("bi-independent", p.bi_independent, f.bi_independent),
            ] {
                if a != b {
                    failures.push(format!("P {what} = {a} but F {what} = {b}"));
                }
            }
            outcome(name, failures, format!("independent = {}, incidence-independent = {}", f.independent, f.incidence_independent))
        }
        "w_bounds" => {
            let lower = orientation_size as i64 - s as i64;
            if (f.w as i64) < lower {
                failures.push(format!("w = {} < r_irr + r_rev - s = {lower}", f.w));
            }
            if f.w > orientation_size {
                failures.push(format!("w = {} > r_irr + r_rev = {orientation_size}", f.w));
            }
            outcome(name, failures, format!("{lower} <= w = {} <= {orientation_size}", f.w))
        }
        "independence_bounds" => {
            if f.independent {
                if f.w > f.s {
                    failures.push(format!("independent but w = {} > s = {}", f.w, f.s));
                }
                if f.deficiency > f.sum_deficiency {
                    failures.push(format!("independent but deficiency {} > sum {}", f.deficiency, f.sum_deficiency));
                }
                if f.deficiency > f.w_ii as i64 {
                    failures.push(format!("independent but deficiency {} > w_II = {}", f.deficiency, f.w_ii));
                }
            }
            outcome(name, failures, if f.independent { "bounds hold" } else { "not independent" })
        }
        "incidence_bounds" => {
            if f.incidence_independent {
                if f.w > f.n_minus_l {
                    failures.push(format!("incidence-independent but w = {} > n - l = {}", f.w, f.n_minus_l));
                }
                if f.deficiency < f.sum_deficiency {
                    failures.push(format!(
                        "incidence-independent but deficiency {} < sum {}",
                        f.deficiency, f.sum_deficiency
                    ));
                }
            }
            outcome(name, failures, if f.incidence_independent { "bounds hold" } else { "not incidence-independent" })
        }
        "bi_independence" => {
            for r in [f, p] {
                let expected = (r.independent || r.incidence_independent) && r.sum_deficiency == r.deficiency;
                if r.bi_independent != expected {
                    failures.push(format!(
                        "{} decomposition: bi-independent = {} but the deficiency criterion gives {expected}",
                        r.kind, r.bi_independent
                    ));
                }
            }
            outcome(name, failures, format!("bi-independent = {}", f.bi_independent))
        }
        "c_decomposition" => {
            if f.is_c_decomposition && !f.incidence_independent {
                failures.push("C-decomposition that is not incidence-independent".into());
            }
            outcome(name, failures, format!("C-decomposition = {}", f.is_c_decomposition))
        }
        "type_ii_free_deficiency" => {
            if f.independent && f.w_ii == 0 && f.deficiency != 0 {
                failures.push(format!("independent without Type II classes but deficiency {}", f.deficiency));
            }
            outcome(name, failures, "holds")
        }
        "full_rank_orientation" => {
            if s == orientation_size {
                if f.deficiency != 0 {
                    failures.push(format!("s = |O| but deficiency {}", f.deficiency));
                }
                let bad = f.classes.iter().filter(|c| c.subnetwork_type != Some(SubnetworkType::TypeI)).count();
                if bad > 0 {
                    failures.push(format!("s = |O| but {bad} classes are not Type I"));
                }
            }
            outcome(name, failures, "holds")
        }
        other => unreachable!("structural invariant {other} is handled above"),
    }
}

fn type_trichotomy(ctx: &Context) -> InvariantOutcome {
    let net = ctx.net;
    let p = p_decomposition(net, &ctx.orientation);
    let mut failures = Vec::new();
    for class in p.classes() {
        let ids: Vec<&str> = class.iter().map(|&j| net.reaction(j).id.as_str()).collect();
        match classify_type(net, class, class) {
            Ok(t) => {
                let d = net.subnetwork_counts(class).deficiency;
                let expected = if t == SubnetworkType::TypeII { 1 } else { 0 };
                if d != expected {
                    failures.push(format!("class {ids:?} is Type {t} with deficiency {d}"));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    outcome("type_trichotomy", failures, format!("{} P-classes classified", p.classes().len()))
}

fn orientation_invariance(net: &ReactionNetwork) -> InvariantOutcome {
    let name = "orientation_invariance";
    let all = match enumerate_orientations(net, ORIENTATION_CAP) {
        Ok(all) => all,
        Err(e) => return outcome(name, Vec::new(), format!("skipped: {e}")),
    };
    let reference = f_decomposition(net).as_set();
    let base = default_orientation(net);
    let base_p = p_decomposition(net, &base);
    let base_d = kernel_dimension(net, &base);
    let n = net.stoichiometric_matrix();
    let mut failures = Vec::new();
    for o in &all {
        if f_decomposition_with(net, o).as_set() != reference {
            failures.push(format!("orientation {:?} gives a different F-decomposition", o.ids(net)));
        }
        if kernel_dimension(net, o) != base_d {
            failures.push(format!("orientation {:?} changes dim Ker L_O", o.ids(net)));
        }
        // P-classes correspond through reverse partners and span the same subspaces
        let p = p_decomposition(net, o);
        for class in p.classes() {
            let image: Vec<usize> = class
                .iter()
                .map(|&j| if base.contains(j) { j } else { net.reaction(j).reverse_of.expect("paired") })
                .collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            let Some(partner) = base_p.classes().iter().find(|c| **c == sorted) else {
                failures.push(format!("P-class {class:?} has no counterpart"));
                continue;
            };
            let a = n.select_columns(class);
            let b = n.select_columns(partner);
            let joint = RationalMatrix::hconcat(&[a.clone(), b.clone()]).expect("same rows");
            if rank(&a) != rank(&joint) || rank(&b) != rank(&joint) {
                failures.push(format!("P-class {class:?} spans a different subspace"));
            }
        }
    }
    failures.dedup();
    outcome(name, failures, format!("{} orientations agree", all.len()))
}

/// CF-RI+ on `(net, k)`: verification checks, idempotence and preserved reversibility counts.
pub fn cf_ri_preservation(net: &ReactionNetwork, k: &PowerLawKinetics) -> InvariantOutcome {
    let name = "cf_ri_preservation";
    let out = cf_ri_plus(net, k);
    let report = verify_transform(net, k, &out);
    let mut failures: Vec<String> = report.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let again = cf_ri_plus(&out.network, &out.kinetics);
    if again.network != out.network || !again.modified.is_empty() {
        failures.push("second application changed the network".into());
    }
    if (out.network.r_irr(), out.network.r_rev()) != (net.r_irr(), net.r_rev()) {
        failures.push("reversibility counts changed".into());
    }
    if out.network.n() < net.n() {
        failures.push("number of complexes decreased".into());
    }
    if classify_plk(&out.network, &out.kinetics) != PlkClass::Rdk {
        failures.push("output is not PL-RDK".into());
    }
    outcome(name, failures, format!("{} reactions relocated", out.modified.len()))
}
