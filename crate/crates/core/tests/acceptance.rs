//! Acceptance suite: each test enforces one gate criterion exactly and
//! prints a pass line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use comarr::arrangement::Arrangement;
use comarr::exact::{GaussianRational, Rational};
use comarr::geometry::{
    find_parallelogram, in_modified_complement, permute, sum_collision, Configuration,
};
use comarr::lattice::{
    build_lattice, char_poly, finite_field_charpoly, default_oracle_primes, poincare_poly,
    region_count, DEFAULT_FLAT_CAP,
};
use comarr::maps::{stabilize, subset_sums, verify_pullback};
use comarr::poly::IntPolynomial;
use comarr::sampler::{sample, SampleMode, SamplerSpec};

fn assert_budget(start: Instant, budget: Duration, label: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{label} took {elapsed:?}, budget {budget:?}"
    );
}

fn gauss(re: &str, im: &str) -> GaussianRational {
    GaussianRational::new(re.parse().unwrap(), im.parse().unwrap())
}

fn draw_config(rng: &mut ChaCha8Rng, k: usize, bound: i64) -> Configuration {
    let points = (0..k)
        .map(|_| {
            let re = Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into()).unwrap();
            let im = Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into()).unwrap();
            GaussianRational::new(re, im)
        })
        .collect();
    Configuration::new(points).unwrap()
}

/// Criterion 1: for k = 3..6 the characteristic polynomial of the pairwise
/// distinctness arrangement is the falling factorial q(q-1)...(q-k+1), by the
/// lattice route and, independently, by finite-field counting.
#[test]
fn criterion_1_braid_oracle() {
    let start = Instant::now();
    for k in 3..=6usize {
        // independent expectation: multiply out (q - 0)(q - 1)...(q - (k-1))
        let mut expected = vec![BigInt::from(1)];
        for root in 0..k as i64 {
            let mut next = vec![BigInt::zero(); expected.len() + 1];
            for (d, c) in expected.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigInt::from(root);
            }
            expected = next;
        }
        let expected = IntPolynomial::from_coefficients(expected);

        let arrangement = Arrangement::build(1, k).unwrap();
        let lattice = build_lattice(&arrangement, DEFAULT_FLAT_CAP).unwrap();
        let via_lattice = char_poly(&lattice);
        assert_eq!(via_lattice, expected, "lattice route at k={k}");

        let primes = default_oracle_primes(&arrangement);
        let via_counting = finite_field_charpoly(&arrangement, &primes).unwrap();
        assert_eq!(via_counting, expected, "finite-field route at k={k}");
    }
    assert_budget(start, Duration::from_secs(30), "criterion 1");
    println!("criterion 1 (braid oracle, k=3..6): PASS");
}

/// Criterion 2: the pairwise-sum arrangement on three points equals the
/// pairwise-distinctness arrangement as canonical covector sets.
#[test]
fn criterion_2_collapse_at_small_k() {
    let start = Instant::now();
    let sums = Arrangement::build(2, 3).unwrap();
    let braid = Arrangement::build(1, 3).unwrap();
    assert_eq!(sums.normal_set(), braid.normal_set());
    assert_eq!(sums.len(), 3);
    assert_budget(start, Duration::from_secs(1), "criterion 2");
    println!("criterion 2 (collapse at k=3): PASS");
}

/// Sign-vector census of the real arrangement over an integer grid, written
/// directly against i64 arithmetic so it shares nothing with the lattice.
fn sign_census_regions(normals: &[Vec<i64>], k: usize, radius: i64) -> usize {
    let mut seen = std::collections::HashSet::new();
    let span = (2 * radius + 1) as usize;
    let total = span.pow(k as u32);
    'point: for mut index in 0..total {
        let mut point = vec![0i64; k];
        for slot in point.iter_mut() {
            *slot = (index % span) as i64 - radius;
            index /= span;
        }
        let mut signs = Vec::with_capacity(normals.len());
        for normal in normals {
            let value: i64 = normal.iter().zip(&point).map(|(c, x)| c * x).sum();
            if value == 0 {
                continue 'point;
            }
            signs.push(value > 0);
        }
        seen.insert(signs);
    }
    seen.len()
}

/// Criterion 3: invariants of the pairwise-sum arrangement on four points.
#[test]
fn criterion_3_pairwise_sum_arrangement_on_four_points() {
    let start = Instant::now();
    let arrangement = Arrangement::build(2, 4).unwrap();
    assert_eq!(arrangement.len(), 9, "hyperplane count");

    let lattice = build_lattice(&arrangement, DEFAULT_FLAT_CAP).unwrap();
    let chi = char_poly(&lattice);
    let primes = default_oracle_primes(&arrangement);
    let counted = finite_field_charpoly(&arrangement, &primes).unwrap();
    assert_eq!(chi, counted, "lattice and finite-field routes must agree");
    assert_eq!(chi, IntPolynomial::from_i64(&[0, -15, 23, -9, 1]));

    let pi = poincare_poly(&lattice);
    assert_eq!(pi.coefficient(0), BigInt::from(1), "constant term");
    assert_eq!(pi.coefficient(1), BigInt::from(9), "linear coefficient");
    assert_eq!(lattice.flats_by_codim(), vec![1, 9, 13, 1]);

    let (regions, bounded) = region_count(&lattice);
    // regions = (+1) * chi(-1) in even dimension
    assert_eq!(regions, chi.evaluate(&BigInt::from(-1)));
    assert_eq!(regions, BigInt::from(48));
    assert_eq!(bounded, BigInt::zero());

    // independent census: distinct full-sign vectors over the {-3..3}^4 grid
    let normals: Vec<Vec<i64>> = arrangement
        .hyperplanes()
        .iter()
        .map(|h| {
            h.normal
                .coefficients()
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect()
        })
        .collect();
    let censused = sign_census_regions(&normals, 4, 3);
    assert_eq!(BigInt::from(censused), regions, "sign census must reproduce the region count");

    assert_budget(start, Duration::from_secs(60), "criterion 3");
    println!("criterion 3 (pairwise-sum arrangement invariants): PASS");
}

/// Criterion 4: membership read off the subset-sums map agrees with
/// membership read off the defining product, exhaustively over a fixed
/// 9-point grid at (t=2, k=4) and on seeded random configurations for four
/// (t, k) combinations.
#[test]
fn criterion_4_pullback_equivalence() {
    let start = Instant::now();

    let grid: Vec<GaussianRational> = vec![
        gauss("0", "0"),
        gauss("1", "0"),
        gauss("2", "0"),
        gauss("1/2", "0"),
        gauss("-1", "0"),
        gauss("0", "1"),
        gauss("1", "1"),
        gauss("2", "-1"),
        gauss("-3/2", "1/3"),
    ];
    assert_eq!(grid.len(), 9);
    let mut disagreements = 0usize;
    let mut checked = 0usize;
    let mut odometer = [0usize; 4];
    loop {
        let configuration =
            Configuration::new(odometer.iter().map(|&i| grid[i].clone()).collect()).unwrap();
        let report = verify_pullback(2, &configuration).unwrap();
        checked += 1;
        if !report.consistent {
            disagreements += 1;
        }
        let mut pos = 4;
        let done = loop {
            if pos == 0 {
                break true;
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < grid.len() {
                break false;
            }
            odometer[pos] = 0;
        };
        if done {
            break;
        }
    }
    assert_eq!(checked, 9usize.pow(4));
    assert_eq!(disagreements, 0, "exhaustive grid found route disagreements");

    for (t, k) in [(2usize, 4usize), (2, 5), (3, 5), (3, 6)] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ ((t as u64) << 8) ^ k as u64);
        for _ in 0..1000 {
            // raw draws: both membership outcomes occur
            let configuration = draw_config(&mut rng, k, 6);
            let report = verify_pullback(t, &configuration).unwrap();
            assert!(report.consistent, "routes disagree at t={t}, k={k}");
        }
    }

    assert_budget(start, Duration::from_secs(120), "criterion 4");
    println!("criterion 4 (pullback equivalence): PASS");
}

/// Criterion 5: stabilization lands in the modified complement on every
/// sampled member, checked exactly.
#[test]
fn criterion_5_stabilization_landing() {
    let start = Instant::now();
    for (t, k) in [(2usize, 4usize), (2, 5), (3, 5)] {
        let spec = SamplerSpec {
            k,
            t,
            mode: SampleMode::ModifiedComplement,
            seed: 20260811,
            coordinate_bound: 25,
            max_rejections: 100_000,
        };
        let mut landed = 0usize;
        for configuration in sample(&spec, 500).unwrap() {
            let stabilized = stabilize(t, &configuration).unwrap();
            assert_eq!(stabilized.len(), k + 1);
            if in_modified_complement(t, &stabilized).unwrap() {
                landed += 1;
            }
        }
        assert_eq!(landed, 500, "landing must hold in 100% of cases at t={t}, k={k}");
    }
    assert_budget(start, Duration::from_secs(60), "criterion 5");
    println!("criterion 5 (stabilization landing): PASS");
}

/// Quartic reference scan, kept deliberately naive.
fn parallelogram_bruteforce(c: &Configuration) -> Option<((usize, usize), (usize, usize))> {
    let k = c.len();
    let mut best: Option<((usize, usize), (usize, usize))> = None;
    for i in 0..k {
        for j in i + 1..k {
            for u in 0..k {
                for v in u + 1..k {
                    if (u, v) <= (i, j) || u == i || u == j || v == i || v == j {
                        continue;
                    }
                    if c.point(i) + c.point(j) == c.point(u) + c.point(v) {
                        let candidate = ((i, j), (u, v));
                        if best.is_none() || candidate < best.unwrap() {
                            best = Some(candidate);
                        }
                    }
                }
            }
        }
    }
    best
}

/// Criterion 6: the bucketed parallelogram detector agrees with the quartic
/// scan, including on engineered degenerate (collinear) inputs.
#[test]
fn criterion_6_parallelogram_detector_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0C4);
    let mut disagreements = 0usize;
    for round in 0..1000usize {
        let k = 4 + round % 5;
        let mut configuration = draw_config(&mut rng, k, 6);
        match round % 4 {
            1 => {
                // plant a parallelogram: last point = b + c - a
                let pts = configuration.points();
                let planted = &(&pts[1] + &pts[2]) - &pts[0];
                let mut new_pts = pts.to_vec();
                new_pts[k - 1] = planted;
                configuration = Configuration::new(new_pts).unwrap();
            }
            3 => {
                // collinear arithmetic progression: degenerate parallelograms
                let anchor = configuration.point(0).clone();
                let step = gauss("1/3", "0");
                let mut new_pts = Vec::with_capacity(k);
                let mut current = anchor;
                for _ in 0..k {
                    new_pts.push(current.clone());
                    current = &current + &step;
                }
                configuration = Configuration::new(new_pts).unwrap();
            }
            _ => {}
        }
        let fast = find_parallelogram(&configuration).map(|p| (p.first, p.second));
        let slow = parallelogram_bruteforce(&configuration);
        if fast != slow {
            disagreements += 1;
        }
        if round % 4 == 3 {
            assert!(fast.is_some(), "an arithmetic progression of length >= 4 must be detected");
        }
    }
    assert_eq!(disagreements, 0);
    assert_budget(start, Duration::from_secs(30), "criterion 6");
    println!("criterion 6 (parallelogram detector equivalence): PASS");
}

/// Criterion 7: membership and the multiset of subset sums are invariant
/// under relabeling the points.
#[test]
fn criterion_7_symmetric_group_equivariance() {
    let start = Instant::now();
    for (t, k) in [(2usize, 4usize), (3, 5)] {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE9 ^ ((t as u64) << 16) ^ k as u64);
        let mut failures = 0usize;
        for _ in 0..200 {
            let configuration = draw_config(&mut rng, k, 8);
            let mut g: Vec<usize> = (0..k).collect();
            g.shuffle(&mut rng);
            let relabeled = permute(&configuration, &g).unwrap();

            let member = sum_collision(t, &configuration).unwrap().is_none();
            let relabeled_member = sum_collision(t, &relabeled).unwrap().is_none();
            let mut sums_before = subset_sums(t, &configuration).unwrap().entries;
            let mut sums_after = subset_sums(t, &relabeled).unwrap().entries;
            sums_before.sort();
            sums_after.sort();
            if member != relabeled_member || sums_before != sums_after {
                failures += 1;
            }
        }
        assert_eq!(failures, 0, "equivariance failures at t={t}, k={k}");
    }
    assert_budget(start, Duration::from_secs(30), "criterion 7");
    println!("criterion 7 (symmetric-group equivariance): PASS");
}

fn run_cli(dir: &std::path::Path, args: &[&str]) -> (String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_comarr"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        output.status.code().unwrap_or(-1),
    )
}

/// Criterion 8: the worked membership values, frozen as byte-exact golden
/// CLI outputs.
#[test]
fn criterion_8_known_worked_values() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("square.json"),
        r#"{"k":4,"points":[["0","0"],["1","0"],["0","1"],["1","1"]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("progression.json"),
        r#"{"k":4,"points":[["0","0"],["1","0"],["2","0"],["3","0"]]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("sidon.json"),
        r#"{"k":4,"points":[["0","0"],["1","0"],["2","0"],["4","0"]]}"#,
    )
    .unwrap();

    let cases = [
        (
            "square.json",
            concat!(
                r#"{"command":"check","deterministic":true,"parameters":{"file":"square.json","modified":false,"t":2},"#,
                r#""result":{"k":4,"member":false,"parallelogram":{"first":[1,4],"second":[2,3]},"#,
                r#""witness":{"common_value":["1","1"],"left":[1,4],"right":[2,3],"s":2}},"#,
                r#""versions":{"format":"1","tool":"0.1.0"}}"#,
                "\n"
            ),
        ),
        (
            "progression.json",
            concat!(
                r#"{"command":"check","deterministic":true,"parameters":{"file":"progression.json","modified":false,"t":2},"#,
                r#""result":{"k":4,"member":false,"parallelogram":{"first":[1,4],"second":[2,3]},"#,
                r#""witness":{"common_value":["3","0"],"left":[1,4],"right":[2,3],"s":2}},"#,
                r#""versions":{"format":"1","tool":"0.1.0"}}"#,
                "\n"
            ),
        ),
        (
            "sidon.json",
            concat!(
                r#"{"command":"check","deterministic":true,"parameters":{"file":"sidon.json","modified":false,"t":2},"#,
                r#""result":{"k":4,"member":true,"parallelogram":null,"witness":null},"#,
                r#""versions":{"format":"1","tool":"0.1.0"}}"#,
                "\n"
            ),
        ),
    ];
    for (file, golden) in cases {
        let (stdout, code) = run_cli(dir.path(), &["check", "--file", file, "--t", "2"]);
        assert_eq!(code, 0, "check {file} must succeed");
        assert_eq!(stdout, golden, "golden output drifted for {file}");
    }
    assert_budget(start, Duration::from_secs(1), "criterion 8");
    println!("criterion 8 (known worked values, golden CLI): PASS");
}

/// Criterion 9: every CLI command is byte-identical across reruns with the
/// same flags and seed.
#[test]
fn criterion_9_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("config.json"),
        r#"{"k":4,"points":[["0","0"],["1","0"],["3","0"],["7","0"]]}"#,
    )
    .unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["build", "--t", "2", "--k", "4"],
        vec!["build", "--t", "3", "--k", "4", "--modified"],
        vec!["invariants", "--t", "1", "--k", "3", "--oracle", "--flats"],
        vec!["invariants", "--t", "2", "--k", "4"],
        vec!["check", "--file", "config.json", "--t", "2"],
        vec!["check", "--file", "config.json", "--t", "2", "--modified"],
        vec![
            "verify", "--t", "2", "--k", "4", "--count", "50", "--seed", "7",
        ],
        vec!["stabilize", "--file", "config.json", "--t", "2"],
        vec![
            "sample", "--t", "2", "--k", "4", "--mode", "M_prime", "--seed", "11", "--count", "5",
        ],
        vec![
            "census", "--t", "2", "--k", "3", "--grid", r#"["0","1","1/2",["0","1"]]"#,
        ],
    ];
    for args in &commands {
        let (first, code_first) = run_cli(dir.path(), args);
        let (second, code_second) = run_cli(dir.path(), args);
        assert_eq!(code_first, 0, "command {args:?} must succeed");
        assert_eq!(code_first, code_second);
        assert_eq!(first, second, "command {args:?} not byte-deterministic");
        assert!(!first.is_empty());
    }
    println!("criterion 9 (CLI determinism): PASS");
}

/// The stabilization examples stay pinned alongside the criteria.
#[test]
fn stabilization_worked_values() {
    let c = Configuration::from_integers(&[0, 1, 3, 7]);
    let stabilized = stabilize(2, &c).unwrap();
    assert_eq!(stabilized.point(4), &GaussianRational::from_integer(32));
    assert!(in_modified_complement(2, &stabilized).unwrap());

    let single = Configuration::new(vec![GaussianRational::i()]).unwrap();
    let stabilized = stabilize(2, &single).unwrap();
    assert_eq!(stabilized.point(1), &GaussianRational::from_integer(8));
}

/// Region counts stay positive and the Poincare polynomial evaluated at 1
/// counts the regions of the real arrangement, for every suite arrangement.
#[test]
fn poincare_at_one_counts_regions() {
    for arrangement in [
        Arrangement::build(1, 3).unwrap(),
        Arrangement::build(1, 4).unwrap(),
        Arrangement::build(2, 4).unwrap(),
        Arrangement::build_modified(3, 4).unwrap(),
    ] {
        let lattice = build_lattice(&arrangement, DEFAULT_FLAT_CAP).unwrap();
        let pi = poincare_poly(&lattice);
        let (regions, _) = region_count(&lattice);
        assert_eq!(pi.evaluate(&BigInt::from(1)), regions);
        assert!(regions.is_positive());
    }
}
