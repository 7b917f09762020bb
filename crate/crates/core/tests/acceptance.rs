//! Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fdecomp::decomposition::{
    analyze_partition, default_orientation, evaluate_bounds, f_decomposition, kernel_dimension, p_decomposition,
    BoundStatus, BoundsInput, PartitionKind, ReactionPartition, SubnetworkType,
};
use fdecomp::generators::{
    cycle_chain, cycle_chain_class_ids, cycle_chain_shared, pd_distributive, pd_distributive_class_ids, pd_erk,
    pd_mixed, pd_processive, random_network, random_ndk_system, random_s_system, s_system_network, schmitz,
    schmitz_ndk, RandomNetworkParams, SSystemSpec,
};
use fdecomp::invariants::{cf_ri_preservation, check_structural};
use fdecomp::kinetics::{classify_plk, PlkClass};
use fdecomp::network::ReactionNetwork;
use fdecomp::transform::{cf_ri_plus, verify_transform};
use fdecomp::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn ids(net: &ReactionNetwork, classes: &[Vec<usize>]) -> BTreeSet<BTreeSet<String>> {
    classes.iter().map(|c| c.iter().map(|&j| net.reaction(j).id.clone()).collect()).collect()
}

fn id_sets(classes: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    classes.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect()
}

fn expect(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures)
    }
}

fn within(failures: &mut Vec<String>, started: Instant, budget: Duration, what: &str) {
    let took = started.elapsed();
    expect(failures, took < budget, format!("{what} took {took:?}, budget {budget:?}"));
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let mut f = Vec::new();
    let net = schmitz();
    let o = default_orientation(&net);
    expect(&mut f, o.ids(&net) == ["R1", "R3", "R4", "R5", "R6", "R7", "R8"], format!("orientation {:?}", o.ids(&net)));
    expect(&mut f, kernel_dimension(&net, &o) == 2, "kernel dimension is not 2");
    let p = p_decomposition(&net, &o);
    expect(&mut f, p.zero_class().is_none(), "nonempty zero class");
    expect(
        &mut f,
        ids(&net, p.classes()) == id_sets(&[&["R1", "R3", "R4"], &["R5", "R6", "R7", "R8"]]),
        format!("P-classes {:?}", p.class_ids(&net)),
    );
    let fd = f_decomposition(&net);
    expect(
        &mut f,
        ids(&net, fd.classes()) == id_sets(&[&["R1", "R2", "R3", "R4"], &["R5", "R6", "R7", "R8"]]),
        format!("F-classes {:?}", fd.class_ids(&net)),
    );
    let r = analyze_partition(&net, &fd).map_err(|e| vec![e.to_string()])?;
    expect(&mut f, r.n_minus_l == 5 && r.sum_n_minus_l == 5, format!("n-l {} vs sum {}", r.n_minus_l, r.sum_n_minus_l));
    expect(&mut f, r.independent && r.incidence_independent && r.bi_independent, "not bi-independent");
    expect(&mut f, r.w_iii == 2 && r.types().iter().all(|t| *t == Some(SubnetworkType::TypeIII)), "types are not III, III");
    within(&mut f, started, Duration::from_secs(1), "schmitz analysis");
    finish(f, "F = {R1..R4},{R5..R8}; d = 2; n-l = 5 = 2+3; bi-independent; Type III x2".into())
}

fn criterion_2() -> Outcome {
    let mut f = Vec::new();
    let (net, k) = schmitz_ndk();
    expect(&mut f, classify_plk(&net, &k) == PlkClass::Ndk, "input is not PL-NDK");
    let out = cf_ri_plus(&net, &k);
    expect(&mut f, out.modified == ["R5"], format!("modified {:?}", out.modified));
    let r5 = out.network.reaction_index("R5").map(|j| out.network.render_reaction(j));
    expect(&mut f, r5.as_deref() == Some("R5: 2M1 -> M1 + M3"), format!("R5 became {r5:?}"));
    for j in 0..net.r() {
        let id = &net.reaction(j).id;
        if id != "R5" {
            let t = out.network.reaction_index(id).unwrap();
            expect(
                &mut f,
                out.network.render_reaction(t) == net.render_reaction(j),
                format!("{id} changed to {}", out.network.render_reaction(t)),
            );
        }
    }
    expect(&mut f, classify_plk(&out.network, &out.kinetics) == PlkClass::Rdk, "output is not PL-RDK");
    let report = verify_transform(&net, &k, &out);
    expect(&mut f, report.checks.len() == 6, format!("{} checks ran", report.checks.len()));
    for c in report.failures() {
        f.push(format!("check {} failed: {}", c.name, c.detail));
    }
    let independent = analyze_partition(&out.network, &f_decomposition(&out.network)).map(|r| r.independent);
    expect(&mut f, independent == Ok(true), "transformed F-decomposition is not independent");
    finish(f, "R5 -> 2M1 -> M1 + M3; PL-RDK; all six checks pass; F independent".into())
}

fn single_class(name: &str, net: &ReactionNetwork, f: &mut Vec<String>) {
    let fd = f_decomposition(net);
    let all: BTreeSet<usize> = (0..net.r()).collect();
    if fd.classes().len() != 1 || fd.ground_set() != all || fd.zero_class().is_some() {
        f.push(format!("{name}: {} F-classes {:?}", fd.classes().len(), fd.class_ids(net)));
    }
}

fn criterion_3() -> Outcome {
    let mut f = Vec::new();
    for k in 1..=4 {
        let started = Instant::now();
        let net = pd_processive(k).unwrap();
        single_class(&format!("processive k={k}"), &net, &mut f);
        within(&mut f, started, Duration::from_secs(1), &format!("processive k={k}"));

        let started = Instant::now();
        let net = pd_distributive(k).unwrap();
        let fd = f_decomposition(&net);
        let expected: BTreeSet<BTreeSet<String>> =
            (0..k).map(|i| pd_distributive_class_ids(i).into_iter().collect()).collect();
        expect(&mut f, ids(&net, fd.classes()) == expected, format!("distributive k={k}: {:?}", fd.class_ids(&net)));
        match analyze_partition(&net, &fd) {
            Ok(r) => {
                expect(&mut f, r.classes.iter().all(|c| c.s == 3), format!("distributive k={k}: class ranks"));
                expect(&mut f, r.independent && r.sum_s == 3 * k && r.s == 3 * k, format!("distributive k={k}: not independent"));
                expect(
                    &mut f,
                    r.incidence_independent && r.sum_n_minus_l == 4 * k && r.n_minus_l == 4 * k,
                    format!("distributive k={k}: sum(n_i - l_i) = {}, n - l = {}", r.sum_n_minus_l, r.n_minus_l),
                );
            }
            Err(e) => f.push(e.to_string()),
        }
        within(&mut f, started, Duration::from_secs(1), &format!("distributive k={k}"));
    }
    single_class("ERK", &pd_erk(), &mut f);
    single_class("mixed", &pd_mixed(), &mut f);
    finish(f, "processive: 1 class; distributive: k classes of rank 3, 3k = s, 4k = n-l; ERK, mixed: 1 class".into())
}

fn species_classes(net: &ReactionNetwork) -> BTreeSet<BTreeSet<String>> {
    let name = |j: usize| net.reaction(j).id.clone();
    (0..net.r() / 2).map(|i| [name(2 * i), name(2 * i + 1)].into_iter().collect()).collect()
}

fn criterion_4() -> Outcome {
    let mut f = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut merged = 0;
    let mut specs: Vec<(SSystemSpec, bool)> = (0..1000)
        .map(|seed| (random_s_system(seed, rng.gen_range(1..=8)).unwrap(), false))
        .collect();
    for m in 1..=8 {
        let g = Rational::new(rng.gen_range(1..=6), 2);
        specs.push((SSystemSpec::self_regulating(m, g), true));
    }
    for (spec, self_regulating) in &specs {
        let (net, _) = s_system_network(spec).unwrap();
        let m = spec.species.len();
        let fd = f_decomposition(&net);
        let report = analyze_partition(&net, &fd).unwrap();
        expect(&mut f, report.s == m, format!("s = {} for m = {m}", report.s));
        expect(&mut f, report.independent, format!("not independent: {}", fdecomp::network::render_network(&net)));
        if ids(&net, fd.classes()) != species_classes(&net) {
            let reversible = spec.species.iter().filter(|s| s.is_reversible()).count();
            merged += 1;
            // reversible species all fall into the zero class, which then holds their pairs together
            let mut expected = BTreeSet::new();
            let mut zero = BTreeSet::new();
            for s in &spec.species {
                let pair = [format!("in_{}", s.name), format!("out_{}", s.name)];
                if s.is_reversible() {
                    zero.extend(pair);
                } else {
                    expected.insert(pair.into_iter().collect::<BTreeSet<_>>());
                }
            }
            expected.insert(zero);
            expect(&mut f, ids(&net, fd.classes()) == expected, format!("F is neither form: {:?}", fd.class_ids(&net)));
            if merged <= 3 {
                f.push(format!(
                    "F differs from the species decomposition ({reversible} reversible species, zero class {:?})",
                    fd.zero_class().map(|z| z.iter().map(|&j| net.reaction(j).id.clone()).collect::<Vec<_>>())
                ));
            }
        }
        if *self_regulating {
            expect(
                &mut f,
                report.incidence_independent && report.sum_n_minus_l == 2 * m,
                format!("self-regulating m={m}: sum(n_i - l_i) = {}", report.sum_n_minus_l),
            );
        }
    }
    if merged > 3 {
        f.push(format!(
            "{merged} of {} specs differ from the species decomposition, all with >= 2 reversible species merged in the zero class",
            specs.len()
        ));
    }
    finish(f, format!("{} specs: F = species decomposition, independent, s = m", specs.len()))
}

fn all_length_lists() -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..3 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                [3, 4, 5].into_iter().map(move |l| {
                    let mut v = prefix.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        all.extend(out.iter().cloned());
    }
    all
}

fn check_chain(net: &ReactionNetwork, lengths: &[usize], label: &str, f: &mut Vec<String>) {
    let fd = f_decomposition(net);
    let expected: BTreeSet<BTreeSet<String>> =
        (0..lengths.len()).map(|i| cycle_chain_class_ids(lengths, i).into_iter().collect()).collect();
    expect(f, ids(net, fd.classes()) == expected, format!("{label}: F-classes {:?}", fd.class_ids(net)));
    match analyze_partition(net, &fd) {
        Ok(r) => {
            expect(f, r.bi_independent, format!("{label}: not bi-independent"));
            expect(f, r.w_iii == lengths.len(), format!("{label}: {} Type III classes", r.w_iii));
            expect(f, r.deficiency == 0, format!("{label}: deficiency {}", r.deficiency));
        }
        Err(e) => f.push(format!("{label}: {e}")),
    }
}

fn criterion_5() -> Outcome {
    let mut f = Vec::new();
    let lists = all_length_lists();
    let mut count = 0;
    for lengths in &lists {
        for broken in [false, true] {
            let net = cycle_chain(lengths, broken).unwrap();
            check_chain(&net, lengths, &format!("{lengths:?} broken={broken}"), &mut f);
            count += 1;
        }
        // every choice of shared vertices between consecutive cycles
        if lengths.len() == 2 {
            for a in 0..lengths[0] {
                for b in 0..lengths[1] {
                    let net = cycle_chain_shared(lengths, Some(&[(a, b)])).unwrap();
                    check_chain(&net, lengths, &format!("{lengths:?} shared ({a},{b})"), &mut f);
                    count += 1;
                }
            }
        }
    }
    finish(f, format!("{count} chains: F-classes = cycles, bi-independent, Type III, deficiency 0"))
}

/// Number of distinct reactions over `m` species with complexes of molecularity at most `max`.
fn reaction_capacity(m: usize, max: u32) -> usize {
    let complexes = (0..max as usize).fold(1usize, |acc, i| acc * (m + i + 1) / (i + 1));
    complexes * (complexes - 1)
}

fn draw_params(rng: &mut ChaCha8Rng, species: usize, reactions: usize, reversible_fraction: f64) -> RandomNetworkParams {
    let species = rng.gen_range(1..=species);
    let max_molecularity = rng.gen_range(1..=3);
    let cap = reactions.min(reaction_capacity(species, max_molecularity));
    RandomNetworkParams { species, reactions: rng.gen_range(1..=cap), reversible_fraction, max_molecularity }
}

fn corpus_params(seed: u64) -> RandomNetworkParams {
    draw_params(&mut ChaCha8Rng::seed_from_u64(seed ^ 0xC0FFEE), 6, 12, 0.3)
}

fn criterion_6() -> Outcome {
    let results: Vec<(Vec<String>, bool)> = (0..10_000u64)
        .into_par_iter()
        .map(|seed| match random_network(seed, &corpus_params(seed)) {
            Ok(net) => {
                let violations = check_structural(&net)
                    .into_iter()
                    .filter(|o| !o.passed)
                    .map(|o| format!("seed {seed}: {} ({})", o.name, o.detail))
                    .collect();
                let st = net.stats();
                (violations, f_decomposition(&net).w() > st.n - st.l)
            }
            Err(e) => (vec![format!("seed {seed}: generator failed: {e}")], false),
        })
        .collect();
    let above = results.iter().filter(|r| r.1).count();
    let mut f: Vec<String> = results.into_iter().flat_map(|r| r.0).collect();
    let total = f.len();
    f.truncate(10);
    if total > 10 {
        f.push(format!("{total} violations in total"));
    }
    finish(f, format!("10000 networks, 0 violations; w > n-l observed in {above} networks"))
}

fn criterion_7() -> Outcome {
    let failures: Vec<String> = (0..1000u64)
        .into_par_iter()
        .flat_map_iter(|seed| {
            // some parameter draws admit no NDK system at all (one reaction, or one complex per reactant)
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
            let drawn = (0..20)
                .map(|_| draw_params(&mut rng, 5, 10, 0.4))
                .filter(|p| p.reactions >= 4)
                .find_map(|p| random_ndk_system(seed, &p).ok());
            match drawn.ok_or("no NDK system for this seed") {
                Ok((net, k)) => {
                    let o = cf_ri_preservation(&net, &k);
                    (!o.passed).then(|| format!("seed {seed}: {}", o.detail))
                }
                Err(e) => Some(format!("seed {seed}: {e}")),
            }
        })
        .collect();
    let mut f = failures;
    let total = f.len();
    f.truncate(10);
    if total > 10 {
        f.push(format!("{total} violations in total"));
    }
    finish(f, "1000 NDK systems: idempotent, vectors, |O|, reversibility, F-independence preserved, PL-RDK".into())
}

fn criterion_8() -> Outcome {
    let mut f = Vec::new();
    // the bound evaluation takes numbers only, so no matrix is ever formed
    let checks = evaluate_bounds(&BoundsInput { w: 11, s: Some(7), ..Default::default() });
    let w_le_s = checks.iter().find(|c| c.name == "w_le_s").unwrap();
    expect(&mut f, w_le_s.status == BoundStatus::Violated, "w <= s not violated");
    expect(&mut f, w_le_s.consequence == Some("not independent"), "no independence verdict");
    // the same short-circuit inside the partition analysis: 3 classes over a rank-1 network
    let net = fdecomp::parse_network("X -> 0\nX -> 2X\n2X -> 0").unwrap();
    let p = ReactionPartition::new(PartitionKind::User, vec![vec![0], vec![1], vec![2]], None).unwrap();
    let r = analyze_partition(&net, &p).unwrap();
    expect(&mut f, r.independence_ruled_out_by_count && !r.independent, "analysis did not short-circuit");
    finish(f, "s = 7, w = 11: w <= s violated, not independent without rank work".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 schmitz running example", criterion_1),
        ("2 CF-RI+ on schmitz-ndk", criterion_2),
        ("3 phosphorylation families", criterion_3),
        ("4 S-system suite", criterion_4),
        ("5 cycle chains", criterion_5),
        ("6 invariant corpus", criterion_6),
        ("7 CF-RI+ preservation", criterion_7),
        ("8 bounds short-circuit", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let started = Instant::now();
        match run() {
            Ok(summary) => println!("PASS criterion {name} ({:.2?}): {summary}", started.elapsed()),
            Err(failures) => {
                failed += 1;
                println!("FAIL criterion {name} ({:.2?})", started.elapsed());
                for line in failures {
                    println!("    {line}");
                }
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
