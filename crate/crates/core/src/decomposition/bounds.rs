use serde::Serialize;

use super::analysis::{DecompositionReport, SubnetworkType};
use super::fundamental::kernel_dimension;
use super::orientation::default_orientation;
use super::DecompositionError;
use crate::kinetics::{classify_plk, PlkClass, PowerLawKinetics};
use crate::network::ReactionNetwork;

/// Numbers the counting bounds are evaluated on. Missing values skip the bounds that need them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundsInput {
    pub w: usize,
    pub s: Option<usize>,
    pub n: Option<usize>,
    pub n_minus_l: Option<usize>,
    /// `r_irr + r_rev`, the size of an orientation.
    pub orientation_size: Option<usize>,
    pub deficiency: Option<i64>,
    pub w_ii: Option<usize>,
    pub independent: Option<bool>,
    pub all_type_ii: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Satisfied,
    Violated,
    /// Inputs missing, or the bound only holds under a hypothesis that is not met.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub status: BoundStatus,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    /// What a violation rules out, if anything.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consequence: Option<&'static str>,
}

impl BoundCheck {
    pub fn satisfied(&self) -> bool {
        self.status != BoundStatus::Violated
    }
}

fn check(
    name: &'static str,
    statement: &'static str,
    values: Option<(i64, i64)>,
    holds: impl Fn(i64, i64) -> bool,
    consequence: Option<&'static str>,
) -> BoundCheck {
    match values {
        Some((lhs, rhs)) => BoundCheck {
            name,
            statement,
            status: if holds(lhs, rhs) { BoundStatus::Satisfied } else { BoundStatus::Violated },
            lhs: Some(lhs),
            rhs: Some(rhs),
            consequence,
        },
        None => BoundCheck { name, statement, status: BoundStatus::NotApplicable, lhs: None, rhs: None, consequence },
    }
}

fn pair(a: Option<i64>, b: Option<i64>) -> Option<(i64, i64)> {
    Some((a?, b?))
}

/// Evaluates every counting bound on the given figures.
pub fn evaluate_bounds(input: &BoundsInput) -> Vec<BoundCheck> {
    let w = Some(input.w as i64);
    let s = input.s.map(|v| v as i64);
    let n = input.n.map(|v| v as i64);
    let nl = input.n_minus_l.map(|v| v as i64);
    let size = input.orientation_size.map(|v| v as i64);
    let lower = size.zip(s).map(|(a, b)| a - b);
    let le = |a: i64, b: i64| a <= b;
    let independent = input.independent == Some(true);
    vec![
        check("w_lower", "w >= r_irr + r_rev - s", pair(w, lower), |a, b| a >= b, None),
        check("w_upper", "w <= r_irr + r_rev", pair(w, size), le, None),
        check("w_le_s", "w <= s", pair(w, s), le, Some("not independent")),
        check(
            "w_le_n_minus_l",
            "w <= n - l",
            pair(w, nl),
            le,
            Some("neither independent nor incidence-independent"),
        ),
        check("two_w_le_n", "2w <= n", pair(w.map(|v| 2 * v), n), le, Some("not a C-decomposition")),
        check("n_minus_l_le_orientation", "n - l <= r_irr + r_rev", pair(nl, size), le, None),
        check(
            "deficiency_le_w_ii",
            "deficiency <= w_II (independent)",
            pair(input.deficiency, input.w_ii.map(|v| v as i64)).filter(|_| independent),
            le,
            None,
        ),
        check(
            "deficiency_le_s",
            "deficiency <= s (independent, all Type II)",
            pair(input.deficiency, s).filter(|_| independent && input.all_type_ii == Some(true)),
            le,
            None,
        ),
    ]
}

/// Bounds evaluated on an F-decomposition report of `net`.
pub fn bounds_report(net: &ReactionNetwork, report: &DecompositionReport) -> Vec<BoundCheck> {
    let nonzero: Vec<_> = report.classes.iter().filter(|c| !c.zero).collect();
    let input = BoundsInput {
        w: report.w,
        s: Some(report.s),
        n: Some(report.n),
        n_minus_l: Some(report.n_minus_l),
        orientation_size: Some(net.r_irr() + net.r_rev()),
        deficiency: Some(report.deficiency),
        w_ii: Some(report.w_ii),
        independent: Some(report.independent),
        all_type_ii: Some(
            !nonzero.is_empty() && nonzero.iter().all(|c| c.subnetwork_type == Some(SubnetworkType::TypeII)),
        ),
    };
    evaluate_bounds(&input)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precheck {
    /// The system cannot admit multiple positive equilibria.
    NoCapacity,
    Inconclusive,
}

/// Sufficient test for the absence of multistationarity in a PL-RDK system.
pub fn multistationarity_precheck(
    net: &ReactionNetwork,
    kinetics: &PowerLawKinetics,
) -> Result<Precheck, DecompositionError> {
    if classify_plk(net, kinetics) == PlkClass::Ndk {
        return Err(DecompositionError::NotReactantDetermined);
    }
    let trivial_kernel = kernel_dimension(net, &default_orientation(net)) == 0;
    Ok(if trivial_kernel && net.r_irr() >= 1 { Precheck::NoCapacity } else { Precheck::Inconclusive })
}
