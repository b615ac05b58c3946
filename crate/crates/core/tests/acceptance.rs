//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dcsi_core::bench::{adjusted_rand_index, epsilon_sweep, spearman, NoiseConvention, SweepConfig};
use dcsi_core::datagen::{generate, grid, variance_dgp, GenSpec, Generator, GridSpec};
use dcsi_core::dcsi::{core_points, dcsi, eps_heuristic, CoreConfig, CoreParams, MulticlassVariant};
use dcsi_core::graph::build_mst;
use dcsi_core::measures::{battery, ks_statistic, BatteryConfig, MeasureId};
use dcsi_core::{Dataset, Metric};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        if failures.is_empty() {
            Self {
                pass: true,
                detail: summary,
            }
        } else {
            Self {
                pass: false,
                detail: format!("{summary}; failed: {}", failures.join("; ")),
            }
        }
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn measure(ds: &Dataset, id: MeasureId) -> f64 {
    battery(ds, &[id], &BatteryConfig::default())
        .pop()
        .and_then(|(_, v)| v.ok())
        .map_or(f64::NAN, |v| v.value)
}

fn max_ari(ds: &Dataset, cfg: &SweepConfig) -> f64 {
    let dm = ds.distances(Metric::Euclidean);
    epsilon_sweep(&dm, ds.class_indices(), cfg).unwrap().max_ari
}

const TOY_SEEDS: std::ops::RangeInclusive<u64> = 1..=5;

fn toy_suite() -> Outcome {
    let start = Instant::now();
    let mean_over_seeds = |g: Generator, id: MeasureId| -> f64 {
        let total: f64 = TOY_SEEDS
            .map(|seed| measure(&generate(&GenSpec::new(g, seed)).unwrap(), id))
            .sum();
        total / TOY_SEEDS.count() as f64
    };
    let v = |g| mean_over_seeds(g, MeasureId::Dcsi);
    let (a, b, c, d) = (v(Generator::A), v(Generator::B), v(Generator::C), v(Generator::D));
    let (e, f, g, h) = (v(Generator::E), v(Generator::F), v(Generator::G), v(Generator::H));
    let ch_f = mean_over_seeds(Generator::F, MeasureId::Ch);
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    check(&mut failures, g < 0.05, format!("DCSI(G) = {g:.4} not < 0.05"));
    check(
        &mut failures,
        g < h && h < b,
        format!("ordering G < H < B violated ({g:.3}, {h:.3}, {b:.3})"),
    );
    check(
        &mut failures,
        (0.80..1.0).contains(&b),
        format!("DCSI(B) = {b:.4} not in [0.80, 1)"),
    );
    check(
        &mut failures,
        (0.80..1.0).contains(&c),
        format!("DCSI(C) = {c:.4} not in [0.80, 1)"),
    );
    check(
        &mut failures,
        (c - d).abs() < 0.05,
        format!("|DCSI(C) - DCSI(D)| = {:.4} not < 0.05", (c - d).abs()),
    );
    check(&mut failures, e > 0.7, format!("DCSI(E) = {e:.4} not > 0.7"));
    check(&mut failures, f > 0.7, format!("DCSI(F) = {f:.4} not > 0.7"));
    check(&mut failures, ch_f < 0.1, format!("CH*(F) = {ch_f:.4} not < 0.1"));
    check(
        &mut failures,
        a > 0.1 && a < 0.6,
        format!("DCSI(A) = {a:.4} not in (0.1, 0.6)"),
    );
    check(
        &mut failures,
        a < b,
        format!("DCSI(A) = {a:.4} not below DCSI(B) = {b:.4}"),
    );
    check(
        &mut failures,
        elapsed < Duration::from_secs(60),
        format!("runtime {elapsed:?} not under 1 min"),
    );
    Outcome::from_failures(
        failures,
        format!(
            "toy DCSI over seeds 1-5: A {a:.3} B {b:.3} C {c:.3} D {d:.3} E {e:.3} F {f:.3} G {g:.3} H {h:.3}, CH*(F) {ch_f:.3} ({elapsed:.1?})"
        ),
    )
}

fn variance_study() -> Outcome {
    let start = Instant::now();
    let sigmas = [0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
    let (mut dcsi_values, mut aris) = (Vec::new(), Vec::new());
    for (k, sigma) in sigmas.into_iter().enumerate() {
        for ds in variance_dgp(sigma, 20, 1 + 100 * k as u64).unwrap() {
            dcsi_values.push(measure(&ds, MeasureId::Dcsi));
            aris.push(max_ari(&ds, &SweepConfig::default()));
        }
    }
    let rho = spearman(&dcsi_values, &aris).unwrap_or(f64::NAN);
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    check(
        &mut failures,
        dcsi_values.len() == 140,
        format!("{} data sets", dcsi_values.len()),
    );
    check(
        &mut failures,
        rho >= 0.85,
        format!("Spearman(DCSI, max ARI) = {rho:.4} < 0.85"),
    );
    check(
        &mut failures,
        elapsed < Duration::from_secs(600),
        format!("runtime {elapsed:?}"),
    );
    Outcome::from_failures(
        failures,
        format!("140 data sets, Spearman(DCSI, max ARI) = {rho:.4} ({elapsed:.1?})"),
    )
}

fn e1_grid() -> Outcome {
    let specs = grid(&GridSpec {
        generator: Generator::E1,
        stride: 7,
        seed: 1,
    });
    let mut columns = vec![Vec::new(); MeasureId::ALL.len()];
    let mut aris = Vec::new();
    for spec in &specs {
        let ds = generate(spec).unwrap();
        for (col, (_, v)) in columns
            .iter_mut()
            .zip(battery(&ds, &MeasureId::ALL, &BatteryConfig::default()))
        {
            col.push(v.map_or(f64::NAN, |v| v.value));
        }
        aris.push(max_ari(&ds, &SweepConfig::default()));
    }
    let rhos: Vec<(MeasureId, f64)> = MeasureId::ALL
        .iter()
        .zip(&columns)
        .filter_map(|(&id, col)| {
            let keep: Vec<usize> = (0..col.len()).filter(|&i| col[i].is_finite()).collect();
            let xs: Vec<f64> = keep.iter().map(|&i| col[i]).collect();
            let ys: Vec<f64> = keep.iter().map(|&i| aris[i]).collect();
            spearman(&xs, &ys).ok().map(|r| (id, r))
        })
        .collect();
    let rho_of = |id| rhos.iter().find(|(m, _)| *m == id).map_or(f64::NAN, |(_, r)| *r);
    let (rho_dcsi, rho_ch) = (rho_of(MeasureId::Dcsi), rho_of(MeasureId::Ch));
    let (best_id, best) = rhos
        .iter()
        .copied()
        .fold((MeasureId::Dcsi, f64::NEG_INFINITY), |acc, (id, r)| {
            if r > acc.1 {
                (id, r)
            } else {
                acc
            }
        });
    let mut failures = Vec::new();
    check(&mut failures, specs.len() == 35, format!("{} data sets", specs.len()));
    check(
        &mut failures,
        rho_dcsi >= 0.8,
        format!("Spearman(DCSI) = {rho_dcsi:.4} < 0.8"),
    );
    check(
        &mut failures,
        rho_dcsi >= best - 0.05,
        format!("DCSI {rho_dcsi:.4} more than 0.05 below {best_id} {best:.4}"),
    );
    Outcome::from_failures(
        failures,
        format!("35 data sets, Spearman DCSI {rho_dcsi:.4}, CH* {rho_ch:.4}, best {best_id} {best:.4}"),
    )
}

fn spheres() -> Outcome {
    let mut failures = Vec::new();
    let mut dsi = Vec::new();
    let mut parts = Vec::new();
    for n in [2.0, 10.0] {
        let ds = generate(
            &GenSpec::new(Generator::E9, 1)
                .with("n", n)
                .with("r", 10.0)
                .with("sigma", 0.0),
        )
        .unwrap();
        let cfg = SweepConfig {
            convention: NoiseConvention::Singletons,
            ..SweepConfig::high_dim()
        };
        let ari = max_ari(&ds, &cfg);
        check(&mut failures, ari >= 0.5, format!("max ARI (n = {n}) = {ari:.4} < 0.5"));
        dsi.push(measure(&ds, MeasureId::Dsi));
        parts.push(format!("n={n}: max ARI {ari:.4}"));
    }
    check(
        &mut failures,
        dsi[1] > dsi[0],
        format!("DSI(n=10) = {:.4} not > DSI(n=2) = {:.4}", dsi[1], dsi[0]),
    );
    Outcome::from_failures(
        failures,
        format!(
            "{}, DSI {:.4} -> {:.4} (noise as singletons)",
            parts.join(", "),
            dsi[0],
            dsi[1]
        ),
    )
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: 1000,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn oracle_suites() -> Outcome {
    let mut failures = Vec::new();

    let mst = (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(0u8..10, n * (n - 1) / 2)));
    let result = runner().run(&mst, |(n, upper)| {
        let upper: Vec<f64> = upper.into_iter().map(|w| f64::from(w) * 0.5).collect();
        let dm = matrix_from_upper(n, &upper);
        let all: Vec<usize> = (0..n).collect();
        let tree = build_mst(&dm, &all).unwrap();
        let (total, bottleneck) = spanning_tree_oracle(&dm);
        prop_assert_eq!(tree.edges.len(), n - 1);
        prop_assert_eq!(tree.total_weight, total);
        prop_assert_eq!(tree.max_edge().unwrap(), bottleneck);
        Ok(())
    });
    check(&mut failures, result.is_ok(), format!("MST: {result:?}"));

    let partitions = (2usize..=50)
        .prop_flat_map(|n| (Just(n), 1..=n, 1..=n))
        .prop_flat_map(|(n, ka, kb)| (prop::collection::vec(0..ka, n), prop::collection::vec(0..kb, n)));
    let result = runner().run(&partitions, |(a, b)| {
        let fast = adjusted_rand_index(&a, &b).unwrap();
        let slow = ari_by_pairs(&a, &b);
        prop_assert!((fast - slow).abs() < 1e-12, "{} vs {}", fast, slow);
        Ok(())
    });
    check(&mut failures, result.is_ok(), format!("ARI: {result:?}"));

    let result = runner().run(&(sample_values(200), sample_values(200)), |(a, b)| {
        prop_assert_eq!(ks_statistic(&a, &b), ks_by_counting(&a, &b));
        Ok(())
    });
    check(&mut failures, result.is_ok(), format!("KS: {result:?}"));

    let two_classes = (1usize..=5)
        .prop_flat_map(|m| (Just(m), (2 * m + 1)..=30usize, (2 * m + 1)..=30usize, 0.0f64..8.0))
        .prop_flat_map(|(m, a, b, shift)| {
            let coords = prop_oneof![
                prop::collection::vec((0i32..6).prop_map(f64::from), 2 * (a + b)),
                prop::collection::vec(-3.0f64..3.0, 2 * (a + b)),
            ];
            (Just(m), Just(a), Just(shift), coords)
        });
    let result = runner().run(&two_classes, |(m, a, shift, coords)| {
        let n = coords.len() / 2;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| vec![coords[2 * i] + if i < a { 0.0 } else { shift }, coords[2 * i + 1]])
            .collect();
        let labels: Vec<&str> = (0..n).map(|i| if i < a { "0" } else { "1" }).collect();
        let ds = Dataset::from_rows(rows, labels).unwrap();
        let dm = ds.distances(Metric::Euclidean);
        let oracle = dcsi_parts(&dm, ds.class_indices(), m);
        let report = match dcsi(&ds, &dm, &CoreConfig::with_min_pts(m)) {
            Ok(r) => r,
            // a zero radius is rejected; only heavy duplication produces one
            Err(e) => {
                prop_assert!(oracle.eps.contains(&0.0), "{}", e);
                return Ok(());
            }
        };
        prop_assert_eq!(&report.core.params.eps, &oracle.eps.to_vec());
        prop_assert_eq!(&report.core.core, &oracle.core.to_vec());
        let pair = &report.pairs[0];
        prop_assert_eq!(pair.sep, oracle.sep);
        prop_assert_eq!(pair.conn_i, oracle.conn[0]);
        prop_assert_eq!(pair.conn_j, oracle.conn[1]);
        Ok(())
    });
    check(&mut failures, result.is_ok(), format!("DCSI: {result:?}"));

    Outcome::from_failures(failures, "MST, ARI, KS and DCSI suites, 1000 trials each".into())
}

fn random_orthogonal(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

fn invariance_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let euclidean = [
        MeasureId::Dcsi,
        MeasureId::Dunn,
        MeasureId::Ch,
        MeasureId::Db,
        MeasureId::Sil,
        MeasureId::Cvnn,
    ];
    let cfg = BatteryConfig::default();

    for trial in 0..100u64 {
        let (k, dim) = (rng.random_range(2..=3), rng.random_range(2..=3));
        let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(20..=60)).collect();
        let centers = random_centers(k, dim, 8.0, trial);
        let sigma = rng.random_range(0.3..1.5);
        let (rows, labels) = gaussian_classes(&centers, &sizes, sigma, 1000 + trial);
        let ds = Dataset::from_rows(rows.clone(), labels.clone()).unwrap();

        let scale = rng.random_range(0.1..10.0);
        let rot = random_orthogonal(dim, &mut rng);
        let shift: Vec<f64> = (0..dim).map(|_| rng.random_range(-50.0..50.0)).collect();
        let moved: Vec<Vec<f64>> = rows
            .iter()
            .map(|x| {
                (0..dim)
                    .map(|r| scale * rot[r].iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + shift[r])
                    .collect()
            })
            .collect();
        let moved = Dataset::from_rows(moved, labels.clone()).unwrap();

        let before = battery(&ds, &euclidean, &cfg);
        let after = battery(&moved, &euclidean, &cfg);
        for ((id, x), (_, y)) in before.iter().zip(&after) {
            match (x, y) {
                (Ok(x), Ok(y)) => check(
                    &mut failures,
                    (x.value - y.value).abs() <= 1e-9,
                    format!(
                        "trial {trial}: {id} changed under a similarity map ({} vs {})",
                        x.value, y.value
                    ),
                ),
                (Err(_), Err(_)) => {}
                _ => failures.push(format!(
                    "trial {trial}: {id} error status changed under a similarity map"
                )),
            }
        }
        let cores = |d: &Dataset| {
            let dm = d.distances(Metric::Euclidean);
            dcsi(d, &dm, &CoreConfig::default()).map(|r| r.core.core)
        };
        check(
            &mut failures,
            cores(&ds).ok() == cores(&moved).ok(),
            format!("trial {trial}: core points changed under a similarity map"),
        );

        // permutation and relabeling, all measures
        let mut order: Vec<usize> = (0..ds.n()).collect();
        order.shuffle(&mut rng);
        let shuffled = Dataset::from_rows(
            order.iter().map(|&i| rows[i].clone()).collect(),
            order.iter().map(|&i| format!("renamed-{}", labels[i])).collect(),
        )
        .unwrap();
        let before = battery(&ds, &MeasureId::ALL, &cfg);
        let after = battery(&shuffled, &MeasureId::ALL, &cfg);
        for ((id, x), (_, y)) in before.iter().zip(&after) {
            match (x, y) {
                (Ok(x), Ok(y)) => check(
                    &mut failures,
                    (x.value - y.value).abs() <= 1e-9,
                    format!(
                        "trial {trial}: {id} changed under permutation ({} vs {})",
                        x.value, y.value
                    ),
                ),
                (Err(_), Err(_)) => {}
                _ => failures.push(format!("trial {trial}: {id} error status changed under permutation")),
            }
        }
    }

    // radius heuristic keeps at least half of each class
    let mut worst = 1.0f64;
    for trial in 0..500u64 {
        let min_pts = rng.random_range(1..=10);
        let size = rng.random_range(2 * min_pts + 1..=200);
        let dim = rng.random_range(1..=5);
        let (rows, labels) = gaussian_classes(&[vec![0.0; dim]], &[size], rng.random_range(0.1..3.0), 5000 + trial);
        let ds = Dataset::from_rows(rows, labels).unwrap();
        let dm = ds.distances(Metric::Euclidean);
        let eps = eps_heuristic(&ds, &dm, 0, min_pts).unwrap();
        let cs = core_points(&ds, &dm, &CoreParams::uniform(1, min_pts, eps)).unwrap();
        let share = cs.core[0].len() as f64 / size as f64;
        worst = worst.min(share);
        check(
            &mut failures,
            share >= 0.5,
            format!("class {trial}: core share {share:.3} < 0.5"),
        );
    }

    failures.truncate(10);
    Outcome::from_failures(
        failures,
        format!("100 similarity/permutation trials, 500 radius-heuristic classes (min core share {worst:.3})"),
    )
}

fn multiclass() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..20u64 {
        let centers = random_centers(5, 2, 20.0, seed);
        let (rows, labels) = gaussian_classes(&centers, &[100; 5], 1.0, 100 + seed);
        let ds = Dataset::from_rows(rows, labels).unwrap();
        let dm = ds.distances(Metric::Euclidean);
        let r = dcsi(&ds, &dm, &CoreConfig::default()).unwrap();
        check(
            &mut failures,
            r.pairs.len() == 10,
            format!("seed {seed}: {} pairs", r.pairs.len()),
        );
        check(
            &mut failures,
            r.g1_min <= r.g1_mean,
            format!("seed {seed}: g1_min > g1_mean"),
        );
        check(
            &mut failures,
            r.g1_min <= r.g1_median,
            format!("seed {seed}: g1_min > g1_median"),
        );
    }
    let mut two_class = 0;
    for g in Generator::TOYS.into_iter().chain(Generator::EXPERIMENTS) {
        let ds = generate(&GenSpec::new(g, 3)).unwrap();
        let dm = ds.distances(Metric::Euclidean);
        let r = dcsi(&ds, &dm, &CoreConfig::default()).unwrap();
        let pairwise = r.pairs[0].dcsi;
        for v in MulticlassVariant::ALL {
            check(
                &mut failures,
                r.value(v) == pairwise,
                format!("{g}: {v} = {} differs from pairwise {pairwise}", r.value(v)),
            );
        }
        two_class += 1;
    }
    Outcome::from_failures(
        failures,
        format!("20 five-class data sets, {two_class} two-class data sets x 6 variants"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("toy suite", toy_suite),
        ("variance study", variance_study),
        ("E1 grid, stride 7", e1_grid),
        ("nested spheres", spheres),
        ("oracle equivalence", oracle_suites),
        ("invariance", invariance_suites),
        ("multi-class consistency", multiclass),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        all &= outcome.pass;
        println!(
            "criterion {} ({name}): {} - {}",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!("criterion 8 (real-world embeddings): NOT ASSERTED - documented as out of scope");
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
