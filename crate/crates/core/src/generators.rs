//! Example networks: literal presets, parametrised families and random corpora.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kinetics::{classify_plk, PlkClass, PowerLawKinetics};
use crate::linalg::Rational;
use crate::network::{parse_network, parse_system, Complex, ReactionNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("cannot satisfy parameters: {0}")]
    Unsatisfiable(String),
}

fn literal(text: &str) -> ReactionNetwork {
    parse_network(text).expect("built-in network text is valid")
}

/// Carbon cycle subnetwork with pools M1..M6.
pub fn schmitz() -> ReactionNetwork {
    literal(SCHMITZ)
}

const SCHMITZ: &str = "\
species: M1 M2 M3 M4 M5 M6
R1: M1 -> M5
R2: M5 -> M1
R3: M5 -> M6
R4: M6 -> M1
R5: M1 -> M3
R6: M3 -> M4
R7: M4 -> M2
R8: M2 -> M1
";

/// The carbon cycle subnetwork with power-law kinetics that make M1 an NF-node.
///
/// The kinetic orders are placeholders: R1 and R5 leave M1 with different rows,
/// R2 and R3 leave M5 with equal rows. Substitute published values for exact replication.
pub fn schmitz_ndk() -> (ReactionNetwork, PowerLawKinetics) {
    let text = format!(
        "{SCHMITZ}kinetics:
R1: M1=0.36
R2: M5=9.4
R3: M5=9.4
R4: M6=10.2
R5: M1=1
R6: M3=1
R7: M4=1
R8: M2=1
"
    );
    let (net, k) = parse_system(&text).expect("built-in system text is valid");
    (net, k.expect("kinetics block present"))
}

fn require_k(k: usize) -> Result<(), GeneratorError> {
    if k < 1 {
        return Err(GeneratorError::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

/// k-site processive phosphorylation/dephosphorylation, transcribed arrow for arrow.
///
/// Kinase branch: `S0+K <-> S0K <-> S1K <-> ... <-> S(k-2)K -> S(k-1)K -> Sk+K`.
/// Phosphatase branch: `Sk+F <-> SkF <-> ... <-> S1F -> S0+F`.
pub fn pd_processive(k: usize) -> Result<ReactionNetwork, GeneratorError> {
    require_k(k)?;
    let mut t = String::new();
    writeln!(t, "Kb|Ku: S0 + K <-> S0K").unwrap();
    for i in 1..k {
        let arrow = if i <= k.saturating_sub(2) { "<->" } else { "->" };
        let ids = if arrow == "<->" { format!("K{i}f|K{i}r") } else { format!("K{i}") };
        writeln!(t, "{ids}: S{}K {arrow} S{i}K", i - 1).unwrap();
    }
    writeln!(t, "Kc: S{}K -> S{k} + K", k - 1).unwrap();
    writeln!(t, "Fb|Fu: S{k} + F <-> S{k}F").unwrap();
    for j in (2..=k).rev() {
        writeln!(t, "F{j}f|F{j}r: S{j}F <-> S{}F", j - 1).unwrap();
    }
    writeln!(t, "Fc: S1F -> S0 + F").unwrap();
    Ok(literal(&t))
}

/// Ids of the 6 reactions of the i-th distributive class, `i` in `0..k`.
pub fn pd_distributive_class_ids(i: usize) -> [String; 6] {
    [
        format!("K{i}b"),
        format!("K{i}u"),
        format!("K{i}c"),
        format!("F{i}b"),
        format!("F{i}u"),
        format!("F{i}c"),
    ]
}

/// k-site distributive phosphorylation/dephosphorylation.
///
/// For each site `i`: `Si+K <-> SiK -> S(i+1)+K` and `S(i+1)+F <-> S(i+1)F -> Si+F`.
pub fn pd_distributive(k: usize) -> Result<ReactionNetwork, GeneratorError> {
    require_k(k)?;
    let mut t = String::new();
    for i in 0..k {
        let [kb, ku, kc, fb, fu, fc] = pd_distributive_class_ids(i);
        let j = i + 1;
        writeln!(t, "{kb}|{ku}: S{i} + K <-> S{i}K").unwrap();
        writeln!(t, "{kc}: S{i}K -> S{j} + K").unwrap();
        writeln!(t, "{fb}|{fu}: S{j} + F <-> S{j}F").unwrap();
        writeln!(t, "{fc}: S{j}F -> S{i} + F").unwrap();
    }
    Ok(literal(&t))
}

/// Dual-site phosphorylation/dephosphorylation with the ERK mechanism.
pub fn pd_erk() -> ReactionNetwork {
    literal(
        "\
S00 + K <-> S00K
S00K -> S01K
S01K -> S11 + K
S11 + F <-> S11F
S11F -> S10F
S10F -> S00 + F
S01K <-> S01 + K
S10F <-> S10 + F
S10 + K <-> S10K
S10K -> S11 + K
S01 + F <-> S01F
S01F -> S00 + F
",
    )
}

/// Dual-site phosphorylation/dephosphorylation with the mixed processive/distributive mechanism.
pub fn pd_mixed() -> ReactionNetwork {
    literal(
        "\
S0 + K <-> S0K
S0K -> S1K
S1K -> S2 + K
S2 + F <-> S2F
S2F -> S1 + F
S1 + F <-> S1F
S1F -> S0 + F
",
    )
}

/// EnvZ-OmpR osmoregulation network.
pub fn envz_ompr() -> ReactionNetwork {
    literal(
        "\
X <-> XT
XT -> Xp
Xp + Y <-> XpY
XpY -> X + Yp
XT + Yp <-> XTYp
XTYp -> XT + Y
",
    )
}

/// Terrestrial carbon recovery model with pools A1..A5.
pub fn heck() -> ReactionNetwork {
    literal(
        "\
species: A1 A2 A3 A4 A5
R1: A1 + 2A2 -> 2A1 + A2
R2: A1 + A2 -> 2A2
R3: A2 -> A3
R4: A3 -> A2
R5: A4 + A5 -> 2A4
R6: A1 + 2A4 -> 2A1 + A4
R7: A1 + A4 -> 2A4
R8: A4 -> A3
R9: A3 -> A4
R10: A1 + A2 + A4 -> A5 + A2 + A4
",
    )
}

/// Replicator dynamics of a two-strategy "playing the field" game.
///
/// For strategy i: `Ri: xi -> 2xi`, `Rmi: xi -> 0`, `Rmip: 2xi -> xi`, with kinetic
/// rows `e_i + F_i`, `e_i + e_2 + F_2` and `e_i + e_1 + F_1`. `payoff` rows must be nonnegative.
pub fn replicator_game_2x2(payoff: [[Rational; 2]; 2]) -> Result<(ReactionNetwork, PowerLawKinetics), GeneratorError> {
    if payoff.iter().flatten().any(|v| v.is_negative()) {
        return Err(GeneratorError::InvalidParameter("payoff exponents must be nonnegative".into()));
    }
    let net = literal(
        "\
species: x1 x2
R1: x1 -> 2x1
Rm1: x1 -> 0
Rm1p: 2x1 -> x1
R2: x2 -> 2x2
Rm2: x2 -> 0
Rm2p: 2x2 -> x2
",
    );
    let unit = |i: usize| -> [Rational; 2] {
        let mut e = [Rational::zero(), Rational::zero()];
        e[i] = Rational::one();
        e
    };
    let sum = |parts: &[[Rational; 2]]| -> Vec<Rational> {
        (0..2).map(|c| parts.iter().map(|p| p[c].clone()).sum()).collect()
    };
    let mut rows = Vec::new();
    for i in 0..2 {
        rows.push(sum(&[unit(i), payoff[i].clone()]));
        rows.push(sum(&[unit(i), unit(1), payoff[1].clone()]));
        rows.push(sum(&[unit(i), unit(0), payoff[0].clone()]));
    }
    let k = PowerLawKinetics::new(&net, rows, vec![Rational::one(); 6]).expect("six rows over two species");
    Ok((net, k))
}

/// The payoff matrix used by the `replicator` preset.
pub fn default_payoff() -> [[Rational; 2]; 2] {
    [
        [Rational::from_integer(2), Rational::from_integer(1)],
        [Rational::from_integer(1), Rational::from_integer(3)],
    ]
}

/// One dependent variable of an S-system: regulators of its inflow and outflow with their orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSystemSpecies {
    pub name: String,
    pub inflow: BTreeMap<String, Rational>,
    pub outflow: BTreeMap<String, Rational>,
}

impl SSystemSpecies {
    /// Reversible exactly when inflow and outflow have the same regulators.
    pub fn is_reversible(&self) -> bool {
        self.inflow.keys().eq(self.outflow.keys())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSystemSpec {
    pub species: Vec<SSystemSpecies>,
}

impl SSystemSpec {
    /// Each species regulates its own inflow with order `g`; outflows are unregulated.
    pub fn self_regulating(m: usize, g: Rational) -> Self {
        let species = (1..=m)
            .map(|i| {
                let name = format!("x{i}");
                SSystemSpecies { inflow: BTreeMap::from([(name.clone(), g.clone())]), outflow: BTreeMap::new(), name }
            })
            .collect();
        SSystemSpec { species }
    }

    pub fn is_irreversible(&self) -> bool {
        self.species.iter().all(|s| !s.is_reversible())
    }
}

fn regulator_complex(regs: &BTreeMap<String, Rational>) -> Complex {
    Complex::from_terms(regs.keys().map(|s| (s.clone(), Rational::one()))).expect("unit coefficients")
}

/// Embedded network of an S-system.
///
/// Species `j` contributes the inflow `sum(R_j) -> sum(R_j) + X_j` and the outflow
/// `sum(P_j) + X_j -> sum(P_j)`, with kinetic rows holding the regulator orders.
pub fn s_system_network(spec: &SSystemSpec) -> Result<(ReactionNetwork, PowerLawKinetics), GeneratorError> {
    if spec.species.is_empty() {
        return Err(GeneratorError::InvalidParameter("an S-system needs at least one species".into()));
    }
    let names: Vec<String> = spec.species.iter().map(|s| s.name.clone()).collect();
    let known: HashSet<&String> = names.iter().collect();
    if known.len() != names.len() {
        return Err(GeneratorError::InvalidParameter("species names must be distinct".into()));
    }
    let mut triples = Vec::new();
    let mut order_maps = Vec::new();
    for s in &spec.species {
        for regulator in s.inflow.keys().chain(s.outflow.keys()) {
            if !known.contains(regulator) {
                return Err(GeneratorError::InvalidParameter(format!("unknown regulator {regulator}")));
            }
        }
        let x = Complex::species(&s.name);
        let inflow = regulator_complex(&s.inflow);
        let outflow = regulator_complex(&s.outflow);
        triples.push((format!("in_{}", s.name), inflow.clone(), inflow.add(&x)));
        triples.push((format!("out_{}", s.name), outflow.add(&x), outflow));
        order_maps.push(&s.inflow);
        order_maps.push(&s.outflow);
    }
    let net = ReactionNetwork::new(names, triples)
        .map_err(|e| GeneratorError::InvalidParameter(format!("invalid S-system: {e}")))?;
    let rows = order_maps
        .iter()
        .map(|orders| {
            net.species().iter().map(|sp| orders.get(sp).cloned().unwrap_or_else(Rational::zero)).collect()
        })
        .collect();
    let k = PowerLawKinetics::new(&net, rows, vec![Rational::one(); net.r()]).expect("one row per reaction");
    Ok((net, k))
}

/// Random S-system over `m` species: regulator sets are random subsets with small orders.
pub fn random_s_system(seed: u64, m: usize) -> Result<SSystemSpec, GeneratorError> {
    if m == 0 {
        return Err(GeneratorError::InvalidParameter("m must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let pick = |rng: &mut ChaCha8Rng| -> BTreeMap<String, Rational> {
        let mut out = BTreeMap::new();
        for s in &names {
            if rng.gen_bool(0.35) {
                out.insert(s.clone(), Rational::new(rng.gen_range(-4..=8), 2));
            }
        }
        out
    };
    let species = names
        .iter()
        .map(|name| {
            let inflow = pick(&mut rng);
            let outflow = if rng.gen_bool(0.2) {
                inflow.keys().map(|s| (s.clone(), Rational::new(rng.gen_range(-4..=8), 2))).collect()
            } else {
                pick(&mut rng)
            };
            SSystemSpecies { name: name.clone(), inflow, outflow }
        })
        .collect();
    Ok(SSystemSpec { species })
}

/// Chain of directed monomolecular cycles; consecutive cycles share one complex unless `broken`.
///
/// In the unbroken chain the first vertex of cycle `i+1` is the last vertex of cycle `i`.
pub fn cycle_chain(lengths: &[usize], broken: bool) -> Result<ReactionNetwork, GeneratorError> {
    if broken {
        return cycle_chain_shared(lengths, None);
    }
    if lengths.iter().any(|&l| l < 3) {
        return Err(GeneratorError::InvalidParameter("every cycle needs at least 3 complexes".into()));
    }
    let positions: Vec<(usize, usize)> = lengths.windows(2).map(|w| (w[0] - 1, 0)).collect();
    cycle_chain_shared(lengths, Some(&positions))
}

/// Cycle chain with explicit shared positions: `positions[i] = (a, b)` identifies vertex `a`
/// of cycle `i` with vertex `b` of cycle `i + 1`. `None` gives a broken chain.
pub fn cycle_chain_shared(
    lengths: &[usize],
    positions: Option<&[(usize, usize)]>,
) -> Result<ReactionNetwork, GeneratorError> {
    if lengths.is_empty() {
        return Err(GeneratorError::InvalidParameter("at least one cycle is required".into()));
    }
    if let Some(&bad) = lengths.iter().find(|&&l| l < 3) {
        return Err(GeneratorError::InvalidParameter(format!("cycle length {bad} is below 3")));
    }
    if let Some(p) = positions {
        if p.len() + 1 != lengths.len() {
            return Err(GeneratorError::InvalidParameter("one shared position per consecutive pair".into()));
        }
        for (i, &(a, b)) in p.iter().enumerate() {
            if a >= lengths[i] || b >= lengths[i + 1] {
                return Err(GeneratorError::InvalidParameter(format!("shared position {i} out of range")));
            }
        }
    }
    let mut next = 0;
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    for (i, &len) in lengths.iter().enumerate() {
        let shared = match (positions, i) {
            (Some(p), i) if i > 0 => Some((p[i - 1].1, vertices[i - 1][p[i - 1].0])),
            _ => None,
        };
        let cycle: Vec<usize> = (0..len)
            .map(|v| match shared {
                Some((pos, existing)) if pos == v => existing,
                _ => {
                    next += 1;
                    next
                }
            })
            .collect();
        vertices.push(cycle);
    }
    let mut t = String::new();
    writeln!(t, "species: {}", (1..=next).map(|v| format!("X{v}")).collect::<Vec<_>>().join(" ")).unwrap();
    for (i, cycle) in vertices.iter().enumerate() {
        for (e, &v) in cycle.iter().enumerate() {
            let w = cycle[(e + 1) % cycle.len()];
            writeln!(t, "C{}E{}: X{v} -> X{w}", i + 1, e + 1).unwrap();
        }
    }
    Ok(literal(&t))
}

/// Reaction ids of cycle `i` (0-based) in a cycle chain.
pub fn cycle_chain_class_ids(lengths: &[usize], i: usize) -> Vec<String> {
    (1..=lengths[i]).map(|e| format!("C{}E{e}", i + 1)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomNetworkParams {
    pub species: usize,
    pub reactions: usize,
    /// Probability that a drawn reaction also gets its reverse.
    pub reversible_fraction: f64,
    /// Upper bound on the total molecularity of each complex.
    pub max_molecularity: u32,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn random_complex(rng: &mut ChaCha8Rng, m: usize, max: u32) -> Vec<u32> {
    let total = rng.gen_range(0..=max);
    let mut c = vec![0u32; m];
    for _ in 0..total {
        c[rng.gen_range(0..m)] += 1;
    }
    c
}

/// Random valid network, deterministic per seed.
pub fn random_network(seed: u64, params: &RandomNetworkParams) -> Result<ReactionNetwork, GeneratorError> {
    let RandomNetworkParams { species: m, reactions: r, reversible_fraction, max_molecularity } = *params;
    if m == 0 || r == 0 || max_molecularity == 0 {
        return Err(GeneratorError::InvalidParameter("species, reactions and molecularity must be positive".into()));
    }
    if !(0.0..=1.0).contains(&reversible_fraction) {
        return Err(GeneratorError::InvalidParameter("reversible fraction must lie in [0, 1]".into()));
    }
    let complexes = binomial(m as u128 + max_molecularity as u128, max_molecularity as u128);
    let available = complexes.saturating_mul(complexes - 1);
    if (r as u128) > available {
        return Err(GeneratorError::Unsatisfiable(format!(
            "{r} reactions requested but only {available} distinct reactions exist"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=m).map(|i| format!("X{i}")).collect();
    let to_complex = |v: &[u32]| {
        Complex::from_terms(
            v.iter()
                .zip(&names)
                .filter(|(c, _)| **c > 0)
                .map(|(c, s)| (s.clone(), Rational::from_integer(i64::from(*c)))),
        )
        .expect("positive coefficients")
    };
    let mut pairs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut used: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    let mut attempts = 0u64;
    while pairs.len() < r {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(GeneratorError::Unsatisfiable("could not draw enough distinct reactions".into()));
        }
        let a = random_complex(&mut rng, m, max_molecularity);
        let b = random_complex(&mut rng, m, max_molecularity);
        if a == b || used.contains(&(a.clone(), b.clone())) {
            continue;
        }
        used.insert((a.clone(), b.clone()));
        pairs.push((a.clone(), b.clone()));
        if pairs.len() < r && rng.gen_bool(reversible_fraction) && used.insert((b.clone(), a.clone())) {
            pairs.push((b, a));
        }
    }
    let triples = pairs
        .iter()
        .enumerate()
        .map(|(j, (a, b))| (format!("R{}", j + 1), to_complex(a), to_complex(b)))
        .collect();
    ReactionNetwork::new(names, triples).map_err(|e| GeneratorError::Unsatisfiable(e.to_string()))
}

/// Random kinetic orders in `{-1, 0, 1/2, 1, 2}` with unit rates.
pub fn random_kinetics(seed: u64, net: &ReactionNetwork) -> PowerLawKinetics {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = [Rational::from_integer(-1), Rational::zero(), Rational::new(1, 2), Rational::one(), Rational::from_integer(2)];
    let rows = (0..net.r())
        .map(|_| (0..net.m()).map(|_| choices.choose(&mut rng).expect("nonempty").clone()).collect())
        .collect();
    PowerLawKinetics::new(net, rows, vec![Rational::one(); net.r()]).expect("shape matches the network")
}

/// Random PL-NDK system; seeds are advanced deterministically until the kinetics are NDK.
pub fn random_ndk_system(
    seed: u64,
    params: &RandomNetworkParams,
) -> Result<(ReactionNetwork, PowerLawKinetics), GeneratorError> {
    if params.reactions < 2 {
        return Err(GeneratorError::Unsatisfiable("a branching reactant needs at least two reactions".into()));
    }
    for attempt in 0..10_000u64 {
        let s = seed.wrapping_mul(10_007).wrapping_add(attempt);
        let net = random_network(s, params)?;
        let k = random_kinetics(s ^ 0x5eed, &net);
        if classify_plk(&net, &k) == PlkClass::Ndk {
            return Ok((net, k));
        }
    }
    Err(GeneratorError::Unsatisfiable("no branching reactant was drawn".into()))
}

/// A named example network, with kinetics when the example carries them.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: String,
    pub network: ReactionNetwork,
    pub kinetics: Option<PowerLawKinetics>,
}

pub const PRESET_NAMES: &[&str] = &[
    "schmitz",
    "schmitz-ndk",
    "pd-processive:<k>",
    "pd-distributive:<k>",
    "erk",
    "mixed",
    "envz-ompr",
    "replicator",
    "heck",
    "s-system:<m>",
    "cycle-chain:<l1,l2,...>",
    "cycle-chain-broken:<l1,l2,...>",
];

fn parse_count(arg: Option<&str>, name: &str) -> Result<usize, GeneratorError> {
    let arg = arg.ok_or_else(|| GeneratorError::InvalidParameter(format!("{name} needs a parameter, e.g. {name}:3")))?;
    arg.parse().map_err(|_| GeneratorError::InvalidParameter(format!("bad parameter {arg:?} for {name}")))
}

fn parse_lengths(arg: Option<&str>, name: &str) -> Result<Vec<usize>, GeneratorError> {
    let arg = arg.ok_or_else(|| GeneratorError::InvalidParameter(format!("{name} needs cycle lengths, e.g. {name}:3,4")))?;
    arg.split(',').map(|s| parse_count(Some(s.trim()), name)).collect()
}

/// Looks up a preset by name, e.g. `schmitz` or `pd-distributive:3`.
pub fn preset(name: &str) -> Result<Preset, GeneratorError> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let plain = |network: ReactionNetwork| (network, None);
    let (network, kinetics) = match base {
        "schmitz" => plain(schmitz()),
        "schmitz-ndk" => {
            let (n, k) = schmitz_ndk();
            (n, Some(k))
        }
        "pd-processive" => plain(pd_processive(parse_count(arg, base)?)?),
        "pd-distributive" => plain(pd_distributive(parse_count(arg, base)?)?),
        "erk" | "pd-erk" => plain(pd_erk()),
        "mixed" | "pd-mixed" => plain(pd_mixed()),
        "envz-ompr" | "envz" => plain(envz_ompr()),
        "heck" => plain(heck()),
        "replicator" => {
            let (n, k) = replicator_game_2x2(default_payoff())?;
            (n, Some(k))
        }
        "s-system" => {
            let (n, k) = s_system_network(&SSystemSpec::self_regulating(parse_count(arg, base)?, Rational::new(1, 2)))?;
            (n, Some(k))
        }
        "cycle-chain" => plain(cycle_chain(&parse_lengths(arg, base)?, false)?),
        "cycle-chain-broken" => plain(cycle_chain(&parse_lengths(arg, base)?, true)?),
        _ => return Err(GeneratorError::UnknownPreset(name.to_string())),
    };
    Ok(Preset { name: name.to_string(), network, kinetics })
}

/// Species touched by each class, used to compare decompositions with species groupings.
pub fn species_of(net: &ReactionNetwork, reactions: &[usize]) -> BTreeSet<String> {
    reactions
        .iter()
        .flat_map(|&j| {
            let r = net.reaction(j);
            r.reactant.terms().keys().chain(r.product.terms().keys()).cloned().collect::<Vec<_>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::render_network;

    #[test]
    fn schmitz_counts() {
        let net = schmitz();
        let st = net.stats();
        assert_eq!((st.m, st.n, st.r, st.r_irr, st.r_rev, st.s, st.l, st.deficiency), (6, 6, 8, 6, 1, 5, 1, 0));
    }

    #[test]
    fn distributive_counts() {
        for k in 1..=4 {
            let st = pd_distributive(k).unwrap().stats();
            assert_eq!(st.r, 6 * k);
            assert_eq!(st.r_irr + st.r_rev, 4 * k);
            assert_eq!((st.n, st.l, st.s, st.m), (4 * k + 2, 2, 3 * k, 3 * k + 3));
        }
        assert!(pd_distributive(0).is_err());
    }

    #[test]
    fn processive_shapes() {
        let net = pd_processive(1).unwrap();
        assert_eq!(net.reaction_ids(), ["Kb", "Ku", "Kc", "Fb", "Fu", "Fc"]);
        let net = pd_processive(3).unwrap();
        assert_eq!(net.render_reaction(net.reaction_index("K2").unwrap()), "K2: S1K -> S2K");
        assert!(net.reaction(net.reaction_index("K1f").unwrap()).reverse_of.is_some());
        assert!(pd_processive(0).is_err());
    }

    #[test]
    fn cycle_chain_vertex_count() {
        let net = cycle_chain(&[3, 4, 5], false).unwrap();
        assert_eq!(net.n(), 3 + 4 + 5 - 2);
        assert_eq!(net.stats().l, 1);
        let net = cycle_chain(&[3, 4], true).unwrap();
        assert_eq!((net.n(), net.stats().l), (7, 2));
        assert!(cycle_chain(&[3, 2], false).is_err());
        let net = cycle_chain_shared(&[3, 3], Some(&[(1, 2)])).unwrap();
        assert_eq!(net.n(), 5);
    }

    #[test]
    fn s_system_self_regulating() {
        let (net, k) = s_system_network(&SSystemSpec::self_regulating(1, Rational::one())).unwrap();
        assert_eq!(net.render_reaction(0), "in_x1: x1 -> 2x1");
        assert_eq!(net.render_reaction(1), "out_x1: x1 -> 0");
        assert_eq!((net.n(), net.stats().l), (3, 1));
        assert_eq!(k.row(1), &[Rational::zero()]);
        assert!(s_system_network(&SSystemSpec { species: vec![] }).is_err());
    }

    #[test]
    fn reversible_s_system_species_pairs_up() {
        let regs = BTreeMap::from([("x2".to_string(), Rational::one())]);
        let spec = SSystemSpec {
            species: vec![
                SSystemSpecies { name: "x1".into(), inflow: regs.clone(), outflow: regs },
                SSystemSpecies { name: "x2".into(), inflow: BTreeMap::new(), outflow: BTreeMap::new() },
            ],
        };
        let (net, _) = s_system_network(&spec).unwrap();
        assert!(spec.species[0].is_reversible());
        assert_eq!(net.r_rev(), 2);
    }

    #[test]
    fn random_network_is_deterministic_and_valid() {
        let p = RandomNetworkParams { species: 4, reactions: 10, reversible_fraction: 0.3, max_molecularity: 2 };
        let a = random_network(7, &p).unwrap();
        assert_eq!(a, random_network(7, &p).unwrap());
        assert_eq!(a.r(), 10);
        let too_many = RandomNetworkParams { species: 1, reactions: 3, reversible_fraction: 0.0, max_molecularity: 1 };
        assert!(matches!(random_network(0, &too_many), Err(GeneratorError::Unsatisfiable(_))));
    }

    #[test]
    fn presets_round_trip() {
        for name in [
            "schmitz", "schmitz-ndk", "pd-processive:3", "pd-distributive:2", "erk", "mixed", "envz-ompr",
            "replicator", "heck", "s-system:3", "cycle-chain:3,4", "cycle-chain-broken:3,5",
        ] {
            let p = preset(name).unwrap();
            let again = parse_network(&render_network(&p.network)).unwrap();
            assert_eq!(again.reaction_ids(), p.network.reaction_ids(), "{name}");
            assert_eq!(again.stoichiometric_matrix(), p.network.stoichiometric_matrix(), "{name}");
        }
        assert!(matches!(preset("nope"), Err(GeneratorError::UnknownPreset(_))));
        assert!(preset("pd-distributive").is_err());
    }

    #[test]
    fn random_ndk_systems_are_ndk() {
        let p = RandomNetworkParams { species: 3, reactions: 6, reversible_fraction: 0.3, max_molecularity: 2 };
        for seed in 0..20 {
            let (net, k) = random_ndk_system(seed, &p).unwrap();
            assert_eq!(classify_plk(&net, &k), PlkClass::Ndk);
        }
    }
}
