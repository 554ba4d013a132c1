use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcube::bounds::{bounds_report, lower_partition, BoundsOptions, Direction};
use qcube::codes::{forbidden_weight_greedy, gv_greedy, hamming_code, simplex_code};
use qcube::coloring::{
    coset_coloring, exact_d1_coloring, m_matrix, m_matrix_coloring, slab_coloring,
    verify_coloring, VerifyOutcome,
};
use qcube::cube::{hamming_distance, hamming_weight};
use qcube::exact::{check_witness_distances, max_code_size, SearchBudget, SearchResult};
use qcube::{Coloring, Elem, Field, Mode, ProblemSpec};

fn criterion(number: usize, limit: Duration, body: impl FnOnce() + UnwindSafe) {
    let start = Instant::now();
    let result = catch_unwind(body);
    let elapsed = start.elapsed();
    let verdict = if result.is_ok() && elapsed <= limit { "PASS" } else { "FAIL" };
    println!("criterion {number}: {verdict} ({elapsed:.2?} of {limit:.2?} allowed)");
    if let Err(panic) = result {
        resume_unwind(panic);
    }
    assert!(elapsed <= limit, "criterion {number} exceeded its time limit: {elapsed:.2?}");
}

fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).unwrap())
}

fn spec(q: u64, n: usize, d: usize, mode: Mode) -> ProblemSpec {
    ProblemSpec::new(field(q), n, d, mode).unwrap()
}

fn assert_valid(c: &Coloring, what: &str) {
    match verify_coloring(c).unwrap() {
        VerifyOutcome::Valid => {}
        VerifyOutcome::Invalid(v) => panic!(
            "{} invalid at a={} b={} distance={}",
            what, v.rank_a, v.rank_b, v.distance
        ),
    }
}

fn cli_stdout(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_qcube")).args(args).output().expect("spawn qcube");
    assert!(out.status.success(), "qcube {:?} exited with {:?}", args, out.status.code());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn criterion_01_hamming_coset_tightness_binary() {
    criterion(1, Duration::from_secs(5), || {
        let f = field(2);
        let code = hamming_code(f.clone(), 3).unwrap();
        let spec = ProblemSpec::new(f, 7, 2, Mode::AtMost).unwrap();
        let coloring = coset_coloring(&code, &spec).unwrap();
        assert_eq!(coloring.palette_size(), 8);
        assert_eq!(coloring.labels().len(), 128);
        assert_valid(&coloring, "hamming coset at d=2");
        let out =
            cli_stdout(&["exact", "chromatic", "--q", "2", "--n", "7", "--d", "2", "--mode", "atmost"]);
        assert_eq!(out, "EXACT 8\n");
    });
}

#[test]
fn criterion_02_hamming_coset_tightness_ternary() {
    criterion(2, Duration::from_secs(5), || {
        let f = field(3);
        let code = hamming_code(f.clone(), 2).unwrap();
        let spec = ProblemSpec::new(f, 4, 2, Mode::AtMost).unwrap();
        let coloring = coset_coloring(&code, &spec).unwrap();
        assert_eq!(coloring.palette_size(), 9);
        assert_eq!(coloring.labels().len(), 81);
        assert_valid(&coloring, "hamming coset at d=2");
        let out =
            cli_stdout(&["exact", "chromatic", "--q", "3", "--n", "4", "--d", "2", "--mode", "atmost"]);
        assert_eq!(out, "EXACT 9\n");
    });
}

#[test]
fn criterion_03_simplex_coset_certified_by_the_partition_bound() {
    criterion(3, Duration::from_secs(60), || {
        let f = field(2);
        let code = simplex_code(f.clone(), 3).unwrap();
        assert_eq!((code.n(), code.k(), code.min_distance().unwrap()), (7, 3, 4));
        let spec = ProblemSpec::new(f.clone(), 7, 3, Mode::AtMost).unwrap();
        let coloring = coset_coloring(&code, &spec).unwrap();
        assert_eq!(coloring.palette_size(), 16);
        assert_valid(&coloring, "simplex coset at d=3");
        let out = cli_stdout(&["exact", "codesize", "--q", "2", "--n", "7", "--d", "4"]);
        assert_eq!(out, "EXACT 8\n");
        let bound = lower_partition(&spec, &BigUint::from(8u32)).unwrap();
        assert_eq!(bound, BigUint::from(16u32));
        assert_eq!(bound, BigUint::from(coloring.palette_size()));
    });
}

#[test]
fn criterion_04_digit_sum_matrix_and_its_coloring() {
    criterion(4, Duration::from_secs(5), || {
        let f = field(3);
        let m = m_matrix(&f, 5).unwrap();
        let printed: String = m
            .row_iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                cells.join(" ") + "\n"
            })
            .collect();
        assert_eq!(printed, "0 0 1\n0 1 2\n0 2 0\n1 0 2\n1 1 0\n");
        let coloring = m_matrix_coloring(f, 5).unwrap();
        assert_eq!(coloring.labels().len(), 243);
        assert_eq!(coloring.palette_size(), 27);
        assert_valid(&coloring, "digit-sum coloring at d=2");
    });
}

#[test]
fn criterion_05_two_dimensional_ternary_chromatic_number() {
    criterion(5, Duration::from_secs(1), || {
        let out =
            cli_stdout(&["exact", "chromatic", "--q", "3", "--n", "2", "--d", "2", "--mode", "atmost"]);
        assert_eq!(out, "EXACT 9\n");
        let value: u64 = out.trim().strip_prefix("EXACT ").unwrap().parse().unwrap();
        let mut ceil_log = 0u32;
        while 3u64.pow(ceil_log) < 3 {
            ceil_log += 1;
        }
        assert!(value > 3u64.pow(ceil_log));
    });
}

#[test]
fn criterion_06_exact_distance_colorings_at_the_extremes() {
    criterion(6, Duration::from_secs(60), || {
        for q in [2u64, 3, 4, 5] {
            let f = field(q);
            for n in 2..=5usize {
                if q.pow(n as u32) > 1 << 12 {
                    continue;
                }
                let one = exact_d1_coloring(f.clone(), n).unwrap();
                assert_eq!(one.palette_size() as u64, q, "exact-d1 q={q} n={n}");
                assert_valid(&one, "exact-d1");
                let slab = slab_coloring(f.clone(), n).unwrap();
                assert_eq!(slab.palette_size() as u64, q, "slab q={q} n={n}");
                assert_valid(&slab, "slab");
            }
        }
        let out =
            cli_stdout(&["exact", "chromatic", "--q", "3", "--n", "3", "--d", "1", "--mode", "exactly"]);
        assert_eq!(out, "EXACT 3\n");
        let out =
            cli_stdout(&["exact", "chromatic", "--q", "3", "--n", "3", "--d", "3", "--mode", "exactly"]);
        assert_eq!(out, "EXACT 3\n");
    });
}

#[test]
fn criterion_07_printed_four_sets_and_the_clique_lower_bound() {
    criterion(7, Duration::from_secs(120), || {
        let first: Vec<Vec<Elem>> = vec![
            vec![0, 0, 0, 0, 0],
            vec![1, 1, 1, 0, 0],
            vec![2, 2, 2, 0, 0],
            vec![2, 0, 1, 2, 0],
        ];
        let (ok, matrix) = check_witness_distances(&first, 3, Mode::Exactly).unwrap();
        assert!(ok, "first four-set must be pairwise at distance exactly 3: {matrix:?}");

        let out =
            cli_stdout(&["exact", "clique", "--q", "3", "--n", "5", "--d", "3", "--mode", "exactly"]);
        let size: u64 = out
            .trim()
            .strip_prefix("EXACT ")
            .expect("clique search finishes at this size")
            .parse()
            .unwrap();
        assert!(size >= 4, "clique size {size} certifies the bound only when >= 4");

        let second: Vec<Vec<Elem>> = vec![
            vec![0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 0, 1, 1, 1],
            vec![0, 0, 2, 2, 2, 2, 1],
            vec![0, 1, 1, 1, 2, 1, 0],
        ];
        let (_, matrix) = check_witness_distances(&second, 5, Mode::Exactly).unwrap();
        println!("second printed four-set, pairwise distance matrix:");
        for row in &matrix {
            let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            println!("  {}", cells.join(" "));
        }
    });
}

#[test]
fn criterion_08_greedy_parity_code_and_its_bound() {
    criterion(8, Duration::from_secs(5), || {
        let f = field(2);
        let code = gv_greedy(f, 10, 3).unwrap();
        assert_eq!((code.parity().rows(), code.parity().cols()), (6, 10));
        assert_eq!((code.n(), code.k()), (10, 4));
        let spectrum = code.weight_spectrum().unwrap();
        assert_eq!(spectrum.iter().sum::<u64>(), 16);
        assert!(spectrum[1..4].iter().all(|&c| c == 0), "spectrum: {spectrum:?}");
        assert!(code.min_distance().unwrap() >= 4);
        let report =
            bounds_report(&spec(2, 10, 3, Mode::AtMost), &BoundsOptions::default()).unwrap();
        assert!(report.entries().iter().any(|e| e.direction == Direction::Upper
            && e.value == BigUint::from(64u32)
            && e.source == "Thm2.2"));
    });
}

#[test]
fn criterion_09_forbidden_weight_code_and_its_bound() {
    criterion(9, Duration::from_secs(5), || {
        let f = field(2);
        let code = forbidden_weight_greedy(f.clone(), 5, 2).unwrap();
        let spectrum = code.weight_spectrum().unwrap();
        assert_eq!(spectrum[2], 0, "spectrum: {spectrum:?}");
        let cosets = 2u64.pow((code.n() - code.k()) as u32);
        assert!(cosets <= 8, "{cosets} cosets");
        let spec = ProblemSpec::new(f, 5, 2, Mode::Exactly).unwrap();
        let coloring = coset_coloring(&code, &spec).unwrap();
        assert_eq!(coloring.labels().len(), 32);
        assert_valid(&coloring, "forbidden-weight coset at exactly 2");
        let report = bounds_report(&spec, &BoundsOptions::default()).unwrap();
        assert!(report.entries().iter().any(|e| e.direction == Direction::Upper
            && e.value == BigUint::from(8u32)
            && e.source == "Thm3.4"));
    });
}

#[test]
fn criterion_10_property_sweep() {
    criterion(10, Duration::from_secs(300), || {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = field(q);
            let elems: Vec<Elem> = f.elements().collect();
            for &a in &elems {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in &elems {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(0x51ab);
        let fields: Vec<Arc<Field>> = [2u64, 3, 4, 5, 8, 9].iter().map(|&q| field(q)).collect();
        for _ in 0..10_000 {
            let f = &fields[rng.gen_range(0..fields.len())];
            let n = rng.gen_range(1..=8usize);
            let x: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..f.q()) as Elem).collect();
            let y: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..f.q()) as Elem).collect();
            let diff: Vec<Elem> = x.iter().zip(&y).map(|(&a, &b)| f.sub(a, b)).collect();
            assert_eq!(hamming_distance(&x, &y).unwrap(), hamming_weight(&diff));
        }

        for q in [2u64, 3, 4] {
            let f = field(q);
            for n in 1..=6usize {
                for d in 1..=n {
                    for mode in [Mode::AtMost, Mode::Exactly] {
                        let spec = ProblemSpec::new(f.clone(), n, d, mode).unwrap();
                        let report = bounds_report(&spec, &BoundsOptions::default()).unwrap();
                        if let (Some(lo), Some(hi)) = (report.best_lower(), report.best_upper()) {
                            assert!(lo <= hi, "q={q} n={n} d={d} {mode:?}: {lo} > {hi}");
                        }
                    }
                }
            }
        }

        for q in [2u64, 3, 4, 5] {
            let f = field(q);
            for n in 2..=6usize {
                if q.pow(n as u32) > 1 << 12 {
                    continue;
                }
                if f.m() == 1 {
                    assert_valid(&m_matrix_coloring(f.clone(), n).unwrap(), "m-matrix");
                }
                assert_valid(&exact_d1_coloring(f.clone(), n).unwrap(), "exact-d1");
                assert_valid(&slab_coloring(f.clone(), n).unwrap(), "slab");
                for d in 1..n {
                    let code = gv_greedy(f.clone(), n, d).unwrap();
                    let spec = ProblemSpec::new(f.clone(), n, d, Mode::AtMost).unwrap();
                    assert_valid(&coset_coloring(&code, &spec).unwrap(), "gv coset");
                }
                for d in 1..=n {
                    let code = forbidden_weight_greedy(f.clone(), n, d).unwrap();
                    let spec = ProblemSpec::new(f.clone(), n, d, Mode::Exactly).unwrap();
                    assert_valid(&coset_coloring(&code, &spec).unwrap(), "forbidden coset");
                }
            }
        }
    });
}

#[test]
fn antitone_code_sizes_on_the_sweep_grid() {
    let budget = SearchBudget::default();
    let f = field(2);
    let mut previous = u64::MAX;
    for d in 1..=6usize {
        let size = match max_code_size(&f, 6, d, &budget).unwrap() {
            SearchResult::Exact { value, .. } => value,
            SearchResult::Exhausted { .. } => panic!("code search must finish at this size"),
        };
        assert!(size <= previous);
        previous = size;
    }
}
