//! Acceptance suite. Prints one PASS/FAIL line per criterion (with the
//! measured values underneath) and exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p pdmetric-core --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::{diagram, gaussian_sum_sq_norm_by_quadrature, random_pairs, rng};
use pdmetric::harness::Emit;
use pdmetric::io::{format_diagram, parse_diagram};
use pdmetric::theory::{
    assouad_packing, landscape_cauchy_tail, pwg_cauchy_tail, run_cauchy_suite, run_s_suite,
    verify_packing,
};
use pdmetric::{
    bottleneck_distance, brute_force_distance, diagram_distance, distance,
    gaussian_sum_l2_distance, landscape_profile, persistence_image, pss_embedding, pwg_embedding,
    run_experiment, sample_uniform_diagram, summarize, topological_vector, DistanceOrder,
    ExperimentConfig, GaussianSumEmbedding, Method, OutputFormat, PersistenceDiagram, PlanePoint,
    WeightFunction,
};
use rand::seq::SliceRandom;
use rand::Rng;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: String) {
        self.pass &= ok;
        self.details
            .push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, what: String) {
        self.details.push(format!("     {what}"));
    }
}

fn oracle_equivalence() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(0xACCE_0001);
    let mut worst = [0.0f64; 3];
    let orders = [
        DistanceOrder::Finite(1),
        DistanceOrder::Finite(2),
        DistanceOrder::Infinity,
    ];
    for _ in 0..1000 {
        let a = diagram(&random_pairs(&mut r, 5));
        let b = diagram(&random_pairs(&mut r, 5));
        for (k, order) in orders.into_iter().enumerate() {
            let fast = match order {
                DistanceOrder::Finite(p) => diagram_distance(&a, &b, p),
                DistanceOrder::Infinity => bottleneck_distance(&a, &b),
            };
            let brute = brute_force_distance(&a, &b, order).expect("within oracle limit");
            worst[k] = worst[k].max((fast - brute).abs());
        }
    }
    for (k, order) in orders.into_iter().enumerate() {
        out.check(
            worst[k] <= 1e-9,
            format!(
                "p = {order}: max |exact − brute force| = {:.3e} over 1000 pairs",
                worst[k]
            ),
        );
    }
    out
}

fn packing_values() -> Outcome {
    let mut out = Outcome::new();
    let family = assouad_packing(2.0, 1.0, 1.0).expect("valid parameters");
    out.check(family.members == 5, format!("M = {}", family.members));
    out.check((family.r - 0.4).abs() < 1e-15, format!("r = {}", family.r));
    let empty = PersistenceDiagram::empty();
    for (order, pairwise) in [
        (DistanceOrder::Finite(1), 0.4),
        (DistanceOrder::Finite(2), std::f64::consts::SQRT_2 * 0.2),
        (DistanceOrder::Infinity, 0.2),
    ] {
        let report = verify_packing(&family, order, 1e-12);
        let mut worst_pair = 0.0f64;
        let mut worst_empty = 0.0f64;
        for (i, a) in family.diagrams.iter().enumerate() {
            worst_empty = worst_empty.max((distance(a, &empty, order) - 0.2).abs());
            for b in &family.diagrams[i + 1..] {
                worst_pair = worst_pair.max((distance(a, b, order) - pairwise).abs());
            }
        }
        out.check(
            report.pass && worst_pair <= 1e-12 && worst_empty <= 1e-12,
            format!(
                "p = {order}: pairwise {:.15} (want {pairwise:.15}), to ∅ {:.15} < r",
                report.max_pairwise, report.max_to_empty
            ),
        );
    }
    out
}

fn gaussian_identity() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(0xACCE_0003);
    let sigmas = [0.5, 1.0, 2.0];
    let mut worst = 0.0f64;
    let random = |r: &mut rand_chacha::ChaCha8Rng, sigma: f64| {
        let n = r.gen_range(1..=5);
        let atoms = (0..n)
            .map(|_| {
                let c = PlanePoint::new(r.gen_range(0.0..1.0), r.gen_range(0.0..1.0));
                (c, r.gen_range(-1.0..1.0))
            })
            .collect();
        GaussianSumEmbedding::new(atoms, sigma).expect("positive bandwidth")
    };
    for case in 0..50 {
        let sigma = sigmas[case % 3];
        let f = random(&mut r, sigma);
        let g = random(&mut r, sigma);
        let atoms: Vec<_> = f
            .atoms()
            .iter()
            .map(|&(c, w)| (c.birth, c.death, w))
            .chain(g.atoms().iter().map(|&(c, w)| (c.birth, c.death, -w)))
            .collect();
        let numeric = gaussian_sum_sq_norm_by_quadrature(&atoms, sigma).sqrt();
        let exact = gaussian_sum_l2_distance(&f, &g).expect("same bandwidth");
        worst = worst.max((exact - numeric).abs() / numeric.max(1e-300));
    }
    out.check(
        worst <= 1e-5,
        format!("max relative gap to adaptive quadrature = {worst:.3e} over 50 pairs"),
    );
    out
}

fn cauchy_tails() -> Outcome {
    let mut out = Outcome::new();
    let report = run_cauchy_suite(200, 1.0).expect("valid grid");
    out.check(
        report.pwg_violations.is_empty(),
        format!(
            "PWG: {} pairs, max tail/bound = {:.17}",
            report.pairs_checked, report.pwg_max_ratio
        ),
    );
    out.check(
        report.landscape_violations.is_empty(),
        format!(
            "landscape: max tail/bound = {:.6}",
            report.landscape_max_ratio
        ),
    );
    let limit = pwg_cauchy_tail(100, 20_000, 1.0).expect("valid range");
    let limit_prev = pwg_cauchy_tail(100, 10_000, 1.0).expect("valid range");
    out.check(
        limit.tail_norm_sq < 3.3e-4 && (limit.tail_norm_sq - limit_prev.tail_norm_sq).abs() < 1e-6,
        format!(
            "PWG tail p = 100, q → ∞ (q = 20000): {:.6e} < 3.3e-4 (bound {:.6e})",
            limit.tail_norm_sq, limit.bound
        ),
    );
    let ls12 = landscape_cauchy_tail(1, 2)
        .expect("valid range")
        .tail_norm_sq;
    out.check(
        (ls12 - 1.0 / 96.0).abs() <= 1e-12,
        format!(
            "landscape tail (1, 2) = {ls12:.17} (1/96 = {:.17})",
            1.0 / 96.0
        ),
    );
    out
}

fn s_set_divergence() -> Outcome {
    let mut out = Outcome::new();
    let report = run_s_suite(4, 40_000, 5.0).expect("valid sizes");
    let oracle_ok = report
        .checks
        .iter()
        .all(|c| c.diagonal_matching_optimal && c.brute_force_d1.is_some());
    out.check(
        oracle_ok,
        format!(
            "{} support pairs with k ≤ 4 agree with the oracle",
            report.checks.len()
        ),
    );
    out.check(
        report.witness_value > 5.0,
        format!("½·H_40000 = {:.12} > 5", report.witness_value),
    );
    out
}

fn distortion_trend() -> Outcome {
    let mut out = Outcome::new();
    let config = ExperimentConfig::desk_scale(0);
    let table = run_experiment(&config).expect("valid config");
    out.check(
        table.failures.is_empty() && table.rows.len() + 6 * table.skipped_pairs == 6 * 3 * 435,
        format!(
            "{} rows, {} skipped pairs, {} failed buckets",
            table.rows.len(),
            table.skipped_pairs,
            table.failures.len()
        ),
    );
    let summary = summarize(&table);
    for method in [Method::Ls, Method::Tv, Method::SwSqrt] {
        let t = summary.trend(method).expect("method was run");
        out.check(
            t.inverse_upper_decile_strictly_increasing,
            format!(
                "{method}: upper-decile mean of d1/dh over {:?} = {:.4?}",
                t.cardinalities, t.inverse_upper_decile_mean
            ),
        );
        out.note(format!(
            "{method}: upper-decile mean of dh/d1 = {:.4?} (increasing: {})",
            t.upper_decile_mean, t.upper_decile_strictly_increasing
        ));
    }
    for method in [Method::Pwg, Method::Pss, Method::Im] {
        let t = summary.trend(method).expect("method was run");
        out.note(format!(
            "{method} (not graded): upper-decile mean of d1/dh = {:.4?}",
            t.inverse_upper_decile_mean
        ));
    }
    out
}

fn property_suites() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(0xACCE_0007);
    let orders = [
        DistanceOrder::Finite(1),
        DistanceOrder::Finite(2),
        DistanceOrder::Infinity,
    ];

    let mut axioms_ok = true;
    for _ in 0..300 {
        let t: Vec<_> = (0..3).map(|_| diagram(&random_pairs(&mut r, 8))).collect();
        for order in orders {
            let d = |i: usize, j: usize| distance(&t[i], &t[j], order);
            axioms_ok &= d(0, 0) == 0.0 && d(0, 1) >= 0.0 && d(0, 1) == d(1, 0);
            axioms_ok &= d(0, 1) <= d(0, 2) + d(2, 1) + 1e-9;
        }
    }
    out.check(
        axioms_ok,
        "metric axioms on 300 triples, p ∈ {1, 2, ∞}".into(),
    );

    let mut ordering_ok = true;
    let mut stability_ok = true;
    for _ in 0..100 {
        let a = diagram(&random_pairs(&mut r, 20));
        let b = diagram(&random_pairs(&mut r, 20));
        let (pa, pb) = (
            landscape_profile(&a, 5).expect("k_max ≥ 1"),
            landscape_profile(&b, 5).expect("k_max ≥ 1"),
        );
        let bound = bottleneck_distance(&a, &b) + 1e-9;
        for i in 0..=1000 {
            let t = -0.1 + 1.2 * i as f64 / 1000.0;
            for k in 1..=5 {
                ordering_ok &= k == 5 || pa.eval(k, t) >= pa.eval(k + 1, t);
                stability_ok &= (pa.eval(k, t) - pb.eval(k, t)).abs() <= bound;
            }
        }
    }
    out.check(
        ordering_ok,
        "landscape envelopes ordered on 100 profiles".into(),
    );
    out.check(stability_ok, "landscape sup-norm ≤ d∞ on 100 pairs".into());

    let mut perm_ok = true;
    for _ in 0..100 {
        let mut pairs = random_pairs(&mut r, 15);
        let a = diagram(&pairs);
        pairs.shuffle(&mut r);
        let b = diagram(&pairs);
        perm_ok &= landscape_profile(&a, 5).ok() == landscape_profile(&b, 5).ok();
        perm_ok &= pwg_embedding(&a, WeightFunction::PersistenceSquared, 1.0).ok()
            == pwg_embedding(&b, WeightFunction::PersistenceSquared, 1.0).ok();
        perm_ok &= pss_embedding(&a, 1.0).ok() == pss_embedding(&b, 1.0).ok();
        perm_ok &= persistence_image(&a, 10, 1.0, WeightFunction::Persistence).ok()
            == persistence_image(&b, 10, 1.0, WeightFunction::Persistence).ok();
        perm_ok &= topological_vector(&a, 10).ok() == topological_vector(&b, 10).ok();
    }
    out.check(
        perm_ok,
        "permutation invariance of LS, PWG, PSS, IM, TV on 100 diagrams".into(),
    );

    let cfg = ExperimentConfig {
        cardinalities: vec![10, 30],
        diagrams_per_cardinality: 8,
        rng_seed: 3,
        methods: Method::ALL.to_vec(),
        params: Default::default(),
    };
    let run = || {
        run_experiment(&cfg)
            .expect("valid config")
            .to_string_as(OutputFormat::Csv)
    };
    out.check(run() == run(), "byte-identical ratio CSV on rerun".into());

    let d = sample_uniform_diagram(1000, 5).expect("n ≥ 1");
    let mut buf = Vec::new();
    format_diagram(&d, &mut buf).expect("in-memory write");
    let diagram_ok = parse_diagram(buf.as_slice(), "<mem>").ok() == Some(d);
    let table = run_experiment(&cfg).expect("valid config");
    let csv = table.to_string_as(OutputFormat::Csv);
    let csv_ok = pdmetric::harness::parse_ratio_csv(csv.as_bytes(), "<mem>")
        .map(|t| t.rows == table.rows)
        .unwrap_or(false);
    let summary = summarize(&table);
    let json_ok =
        serde_json::from_str::<pdmetric::Summary>(&summary.to_string_as(OutputFormat::Json))
            .map(|s| s == summary)
            .unwrap_or(false);
    out.check(
        diagram_ok && csv_ok && json_ok,
        format!("round trips: diagram {diagram_ok}, ratio CSV {csv_ok}, summary JSON {json_ok}"),
    );
    out
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 7] = [
        (
            "oracle equivalence",
            Duration::from_secs(30),
            oracle_equivalence,
        ),
        ("packing values", Duration::from_secs(1), packing_values),
        (
            "Gaussian closed form",
            Duration::from_secs(60),
            gaussian_identity,
        ),
        ("Cauchy tails", Duration::from_secs(10), cauchy_tails),
        ("S-set divergence", Duration::from_secs(5), s_set_divergence),
        (
            "distortion trend",
            Duration::from_secs(240),
            distortion_trend,
        ),
        ("property suites", Duration::from_secs(120), property_suites),
    ];
    let mut failed = 0;
    for (n, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = outcome.pass && in_time;
        failed += usize::from(!pass);
        println!(
            "[{}] criterion {}: {name} ({:.2}s, budget {}s{})",
            if pass { "PASS" } else { "FAIL" },
            n + 1,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" }
        );
        for line in outcome.details {
            println!("    {line}");
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
