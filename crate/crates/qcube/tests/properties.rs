use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcube::bounds::{bounds_report, lower_partition, BoundsOptions};
use qcube::codes::{forbidden_weight_greedy, gv_greedy, hamming_code, simplex_code};
use qcube::coloring::{
    coset_coloring, exact_d1_coloring, m_matrix, m_matrix_coloring, slab_coloring,
    verify_coloring, VerifyOutcome,
};
use qcube::cube::{hamming_distance, hamming_weight, unrank};
use qcube::exact::{chromatic_number, max_code_size, SearchBudget, SearchResult};
use qcube::{Coloring, Elem, Field, Mode, ProblemSpec};

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

#[test]
fn field_axioms_exhaustive() {
    for q in [2u64, 3, 4, 5, 8, 9] {
        let f = field(q);
        let elems: Vec<Elem> = f.elements().collect();
        assert_eq!(elems.len() as u64, q);
        for &a in &elems {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for &b in &elems {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &elems {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn distance_equals_weight_of_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9d5b);
    let orders = [2u64, 3, 4, 5, 8, 9];
    let fields: Vec<Arc<Field>> = orders.iter().map(|&q| field(q)).collect();
    for _ in 0..10_000 {
        let f = &fields[rng.gen_range(0..fields.len())];
        let n = rng.gen_range(1..=8usize);
        let x: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..f.q()) as Elem).collect();
        let y: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..f.q()) as Elem).collect();
        let diff: Vec<Elem> = x.iter().zip(&y).map(|(&a, &b)| f.sub(a, b)).collect();
        assert_eq!(hamming_distance(&x, &y).unwrap(), hamming_weight(&diff));
    }
}

#[test]
fn bounds_reports_are_consistent_on_the_desk_grid() {
    for q in [2u64, 3, 4] {
        let f = field(q);
        for n in 1..=6usize {
            for d in 1..=n {
                for mode in [Mode::AtMost, Mode::Exactly] {
                    let spec = ProblemSpec::new(f.clone(), n, d, mode).unwrap();
                    let report = bounds_report(&spec, &BoundsOptions::default()).unwrap();
                    if let (Some(lo), Some(hi)) = (report.best_lower(), report.best_upper()) {
                        assert!(lo <= hi, "q={} n={} d={} {:?}: {} > {}", q, n, d, mode, lo, hi);
                    }
                }
            }
        }
    }
}

#[test]
fn constructions_are_valid_on_the_desk_grid() {
    for q in [2u64, 3, 4, 5] {
        let f = field(q);
        for n in 2..=6usize {
            let count = (q as f64).powi(n as i32);
            if count > 4096.0 {
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
}

#[test]
fn perfect_code_cosets_are_valid_on_the_desk_grid() {
    for (q, r, d_simplex) in [(2u64, 2u32, 1usize), (3, 2, 2), (4, 2, 3)] {
        let f = field(q);
        let hamming = hamming_code(f.clone(), r).unwrap();
        let n = hamming.n();
        let spec = ProblemSpec::new(f.clone(), n, 2, Mode::AtMost).unwrap();
        assert_valid(&coset_coloring(&hamming, &spec).unwrap(), "hamming coset");
        let simplex = simplex_code(f.clone(), r).unwrap();
        let spec = ProblemSpec::new(f.clone(), n, d_simplex, Mode::AtMost).unwrap();
        assert_valid(&coset_coloring(&simplex, &spec).unwrap(), "simplex coset");
    }
}

#[test]
fn coset_colors_agree_exactly_on_codeword_differences() {
    let f = field(2);
    let code = hamming_code(f.clone(), 3).unwrap();
    let spec = ProblemSpec::new(f.clone(), 7, 2, Mode::AtMost).unwrap();
    let coloring = coset_coloring(&code, &spec).unwrap();
    let vertices: Vec<Vec<Elem>> = (0..128).map(|r| unrank(2, 7, r)).collect();
    for (ra, a) in vertices.iter().enumerate() {
        for (rb, b) in vertices.iter().enumerate() {
            let diff: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect();
            let is_codeword = code.syndrome(&diff).unwrap().iter().all(|&s| s == 0);
            let same_color = coloring.color(ra as u64) == coloring.color(rb as u64);
            assert_eq!(same_color, is_codeword, "ranks {} and {}", ra, rb);
        }
    }
}

#[test]
fn m_matrix_columns_are_pairwise_independent() {
    for q in [2u64, 3, 5, 7] {
        let f = field(q);
        for n in 2..=9usize {
            let m = m_matrix(&f, n).unwrap();
            let mut width = 0u32;
            while q.pow(width) < n as u64 {
                width += 1;
            }
            assert_eq!(m.rows(), n);
            assert_eq!(m.cols(), width as usize + 1);
            let rows: Vec<&[Elem]> = m.row_iter().collect();
            for i in 0..n {
                assert!(rows[i].iter().any(|&x| x != 0), "q={} n={} zero row {}", q, n, i);
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for a in 1..q {
                        let scaled: Vec<Elem> =
                            rows[i].iter().map(|&x| f.mul(x, a as Elem)).collect();
                        assert_ne!(scaled, rows[j], "q={} n={} rows {} {}", q, n, i, j);
                    }
                }
            }
        }
    }
}

#[test]
fn partition_bound_never_exceeds_the_chromatic_number() {
    let budget = SearchBudget::default();
    for (q, n) in [(2u64, 3usize), (2, 4), (3, 2), (3, 3)] {
        let f = field(q);
        for d in 1..n {
            let a = match max_code_size(&f, n, d + 1, &budget).unwrap() {
                SearchResult::Exact { value, .. } => value,
                SearchResult::Exhausted { .. } => panic!("code search must finish at this size"),
            };
            let spec = ProblemSpec::new(f.clone(), n, d, Mode::AtMost).unwrap();
            let bound = lower_partition(&spec, &BigUint::from(a)).unwrap();
            let chromatic = match chromatic_number(&spec, &budget).unwrap() {
                SearchResult::Exact { value, .. } => value,
                SearchResult::Exhausted { .. } => panic!("chromatic must finish at this size"),
            };
            assert!(
                bound.to_u64().unwrap() <= chromatic,
                "q={} n={} d={}: {} > {}",
                q,
                n,
                d,
                bound,
                chromatic
            );
        }
    }
}

#[test]
fn best_code_size_is_antitone_in_distance() {
    let budget = SearchBudget::default();
    for (q, n) in [(2u64, 4usize), (2, 5), (3, 3)] {
        let f = field(q);
        let mut previous = u64::MAX;
        for d in 1..=n {
            let size = match max_code_size(&f, n, d, &budget).unwrap() {
                SearchResult::Exact { value, .. } => value,
                SearchResult::Exhausted { .. } => panic!("code search must finish at this size"),
            };
            assert!(size <= previous, "q={} n={} d={}: {} > {}", q, n, d, size, previous);
            previous = size;
        }
    }
}

#[test]
fn repeated_runs_are_deterministic() {
    let budget = SearchBudget::default();
    let spec = spec(2, 4, 2, Mode::AtMost);
    let describe = |r: SearchResult<Coloring>| match r {
        SearchResult::Exact { value, witness } => (value, witness.labels().to_vec()),
        SearchResult::Exhausted { lower, upper } => (lower, vec![upper as u32]),
    };
    let first = describe(chromatic_number(&spec, &budget).unwrap());
    let second = describe(chromatic_number(&spec, &budget).unwrap());
    assert_eq!(first, second);
    let opts = BoundsOptions { witnesses: true, partition_a: None };
    let a = bounds_report(&spec, &opts).unwrap();
    let b = bounds_report(&spec, &opts).unwrap();
    assert_eq!(format!("{:?}", a.entries()), format!("{:?}", b.entries()));
}

fn compact(labels: Vec<u32>) -> Vec<u32> {
    let mut map: Vec<Option<u32>> = vec![None; labels.len()];
    let mut next = 0u32;
    labels
        .iter()
        .map(|&l| {
            *map[l as usize].get_or_insert_with(|| {
                let c = next;
                next += 1;
                c
            })
        })
        .collect()
}

proptest! {
    #[test]
    fn verify_outcome_is_invariant_under_palette_permutation(
        raw in proptest::collection::vec(0u32..8, 81),
        seed in any::<u64>(),
    ) {
        let spec = spec(3, 4, 2, Mode::AtMost);
        let labels = compact(raw);
        let palette = labels.iter().copied().max().unwrap() + 1;
        let coloring = Coloring::from_labels(spec.clone(), labels.clone()).unwrap();

        let mut perm: Vec<u32> = (0..palette).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let permuted: Vec<u32> = labels.iter().map(|&l| perm[l as usize]).collect();
        let renamed = Coloring::from_labels(spec, permuted).unwrap();

        prop_assert_eq!(verify_coloring(&coloring).unwrap(), verify_coloring(&renamed).unwrap());
    }

    #[test]
    fn coloring_files_roundtrip(raw in proptest::collection::vec(0u32..6, 32)) {
        let spec = spec(2, 5, 2, Mode::Exactly);
        let coloring = Coloring::from_labels(spec, compact(raw)).unwrap();
        let mut buf = Vec::new();
        coloring.write_to(&mut buf).unwrap();
        let back = Coloring::read_from(buf.as_slice()).unwrap();
        prop_assert_eq!(back.labels(), coloring.labels());
        prop_assert_eq!(back.palette_size(), coloring.palette_size());
        let mut again = Vec::new();
        back.write_to(&mut again).unwrap();
        prop_assert_eq!(buf, again);
    }
}
