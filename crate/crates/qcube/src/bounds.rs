//! Closed-form palette bounds for both coloring problems, with witness
//! cliques for the lower bounds.
//!
//! Each bound function checks its own preconditions; `bounds_report`
//! aggregates every bound that applies to a spec, tagging each entry with a
//! stable source label. All arithmetic is exact: values are big integers and
//! logarithms are computed by repeated multiplication.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::coloring::ProblemSpec;
use crate::cube::{enumerate_at_distance, hamming_distance, rank, sphere_size, Mode};
use crate::field::Elem;
use crate::util::{big_pow, binomial, ceil_div, ceil_log, floor_log};
use crate::{Error, Result};

/// Witnesses above this size are reported as values only.
const WITNESS_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Lower => "LOWER",
            Direction::Upper => "UPPER",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BoundEntry {
    pub direction: Direction,
    pub value: BigUint,
    pub source: &'static str,
    pub witness: Option<Vec<Vec<Elem>>>,
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    spec: ProblemSpec,
    entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn entries(&self) -> &[BoundEntry] {
        &self.entries
    }

    pub fn best_lower(&self) -> Option<&BigUint> {
        self.entries
            .iter()
            .filter(|e| e.direction == Direction::Lower)
            .map(|e| &e.value)
            .max()
    }

    pub fn best_upper(&self) -> Option<&BigUint> {
        self.entries
            .iter()
            .filter(|e| e.direction == Direction::Upper)
            .map(|e| &e.value)
            .min()
    }
}

#[derive(Debug, Clone, Default)]
pub struct BoundsOptions {
    /// Attach witness cliques to lower-bound entries when available.
    pub witnesses: bool,
    /// Known value of A_q(n, >= d+1), enabling the partition lower bound.
    pub partition_a: Option<BigUint>,
}

fn require_mode(spec: &ProblemSpec, mode: Mode, what: &str) -> Result<()> {
    if spec.mode() != mode {
        return Err(Error::invalid(format!("{} applies to mode {} only", what, mode.as_str())));
    }
    Ok(())
}

fn sort_by_rank(q: u64, witness: &mut [Vec<Elem>]) {
    witness.sort_by_key(|v| rank(q, v));
}

/// Ball-packing lower bound: vertices within distance d/2 of a common
/// center (even d), or within (d-1)/2 inside each first-coordinate slab
/// (odd d), are pairwise within d and need distinct colors.
pub fn lower_sphere(spec: &ProblemSpec) -> Result<(BigUint, Option<Vec<Vec<Elem>>>)> {
    require_mode(spec, Mode::AtMost, "the ball-packing bound")?;
    let q = spec.q();
    let n = spec.n();
    let d = spec.d();
    if d.is_multiple_of(2) {
        let r = (d / 2).min(n);
        let value = sphere_size(q, n, r);
        let witness = value.to_usize().filter(|&s| s <= WITNESS_CAP).map(|_| {
            let origin = vec![0 as Elem; n];
            let mut w = vec![origin.clone()];
            w.extend(enumerate_at_distance(q, &origin, r, Mode::AtMost));
            w
        });
        Ok((value, witness))
    } else {
        let r = ((d - 1) / 2).min(n.saturating_sub(1));
        let value = sphere_size(q, n - 1, r) * q;
        let witness = value.to_usize().filter(|&s| s <= WITNESS_CAP).map(|_| {
            let sub_origin = vec![0 as Elem; n - 1];
            let ball = enumerate_at_distance(q, &sub_origin, r, Mode::AtMost);
            let mut w = Vec::new();
            for a in 0..q {
                let slab = |tail: &[Elem]| {
                    let mut v = Vec::with_capacity(n);
                    v.push(a as Elem);
                    v.extend_from_slice(tail);
                    v
                };
                w.push(slab(&sub_origin));
                w.extend(ball.iter().map(|tail| slab(tail)));
            }
            w
        });
        Ok((value, witness))
    }
}

/// Star lower bound for d = 2: the origin and every vertex with a single
/// nonzero coordinate are pairwise within distance 2.
pub fn lower_star(spec: &ProblemSpec) -> Result<(BigUint, Option<Vec<Vec<Elem>>>)> {
    require_mode(spec, Mode::AtMost, "the star bound")?;
    if spec.d() != 2 {
        return Err(Error::invalid("the star bound applies to d = 2 only"));
    }
    let q = spec.q();
    let n = spec.n();
    let value = BigUint::from((q - 1) * n as u64 + 1u64);
    let witness = value.to_usize().filter(|&s| s <= WITNESS_CAP).map(|_| {
        let mut w = vec![vec![0 as Elem; n]];
        for i in 0..n {
            for a in 1..q {
                let mut v = vec![0 as Elem; n];
                v[i] = a as Elem;
                w.push(v);
            }
        }
        sort_by_rank(q, &mut w);
        w
    });
    Ok((value, witness))
}

/// Repeated-prefix lower bound: the q vertices (a,...,a,0,...,0) with d
/// copies of a are pairwise at distance exactly d.
pub fn lower_exact_repeat(spec: &ProblemSpec) -> Result<(BigUint, Option<Vec<Vec<Elem>>>)> {
    require_mode(spec, Mode::Exactly, "the repeated-prefix bound")?;
    let d = spec.d();
    let n = spec.n();
    if d > n {
        return Err(Error::invalid("the repeated-prefix bound needs d <= n"));
    }
    let q = spec.q();
    Ok((BigUint::from(q), Some(repeat_witness(q, n, d))))
}

fn repeat_witness(q: u64, n: usize, d: usize) -> Vec<Vec<Elem>> {
    (0..q)
        .map(|a| {
            let mut v = vec![0 as Elem; n];
            v[..d].fill(a as Elem);
            v
        })
        .collect()
}

/// Block-chain lower bound for even d: max(q, floor(2n/d)), witnessed by
/// vertices whose supports are consecutive disjoint blocks of d/2 ones.
pub fn lower_chain(spec: &ProblemSpec) -> Result<(BigUint, Option<Vec<Vec<Elem>>>)> {
    require_mode(spec, Mode::Exactly, "the block-chain bound")?;
    let d = spec.d();
    let n = spec.n();
    if !d.is_multiple_of(2) {
        return Err(Error::invalid("the block-chain bound needs even d"));
    }
    if d > n {
        return Err(Error::invalid("the block-chain bound needs d <= n"));
    }
    let q = spec.q();
    let blocks = 2 * n / d;
    let value = q.max(blocks as u64);
    let witness = if blocks as u64 >= q {
        let h = d / 2;
        let mut w: Vec<Vec<Elem>> = (0..blocks)
            .map(|j| {
                let mut v = vec![0 as Elem; n];
                v[j * h..(j + 1) * h].fill(1);
                v
            })
            .collect();
        sort_by_rank(q, &mut w);
        w
    } else {
        repeat_witness(q, n, d)
    };
    Ok((BigUint::from(value), Some(witness)))
}

/// Greedy parity-matrix upper bound: q^t colors with
/// t = floor(log_q sum_{j<d} (q-1)^j C(n-1,j)) + 1.
pub fn upper_gv(spec: &ProblemSpec) -> Result<BigUint> {
    require_mode(spec, Mode::AtMost, "the greedy parity-matrix bound")?;
    let q = spec.q();
    let n = spec.n();
    let sum: BigUint = (0..spec.d().min(n))
        .map(|j| binomial(n as u64 - 1, j as u64) * big_pow(q - 1, j as u64))
        .sum();
    let t = floor_log(q, &sum) + 1;
    Ok(big_pow(q, t))
}

/// Digit-sum matrix upper bound for d = 2 and prime q: q^(ceil(log_q n)+1).
pub fn upper_m_matrix(spec: &ProblemSpec) -> Result<BigUint> {
    require_mode(spec, Mode::AtMost, "the digit-sum matrix bound")?;
    if spec.d() != 2 {
        return Err(Error::invalid("the digit-sum matrix bound applies to d = 2 only"));
    }
    if spec.field().m() != 1 {
        return Err(Error::invalid("the digit-sum matrix bound needs prime q"));
    }
    let q = spec.q();
    let t = ceil_log(q, &BigUint::from(spec.n())) + 1;
    Ok(big_pow(q, t))
}

/// Forbidden-weight upper bound: q^ceil(log_q(2 + C(n-1,d-1)(q-1)^(d-1))).
pub fn upper_forbidden(spec: &ProblemSpec) -> Result<BigUint> {
    require_mode(spec, Mode::Exactly, "the forbidden-weight bound")?;
    let q = spec.q();
    let n = spec.n() as u64;
    let d = spec.d() as u64;
    let s = 2u32 + binomial(n - 1, d - 1) * big_pow(q - 1, d - 1);
    Ok(big_pow(q, ceil_log(q, &s)))
}

/// Partition lower bound: ceil(q^n / A) where A is the maximum size of a
/// code with minimum distance at least d + 1, supplied by the caller.
pub fn lower_partition(spec: &ProblemSpec, a_value: &BigUint) -> Result<BigUint> {
    require_mode(spec, Mode::AtMost, "the partition bound")?;
    if a_value == &BigUint::from(0u32) {
        return Err(Error::invalid("the partition bound needs a positive code size"));
    }
    Ok(ceil_div(&spec.vertex_count_big(), a_value))
}

/// The r >= 2 with n = (q^r - 1)/(q - 1), if one exists.
fn hamming_length_exponent(q: u64, n: usize) -> Option<u64> {
    let n = n as u64;
    let mut sum = 1u64;
    let mut power = 1u64;
    let mut r = 1u64;
    while sum < n {
        power = power.checked_mul(q)?;
        sum = sum.checked_add(power)?;
        r += 1;
    }
    (sum == n && r >= 2).then_some(r)
}

fn attach_witness(
    spec: &ProblemSpec,
    value: &BigUint,
    witness: Option<Vec<Vec<Elem>>>,
    emit: bool,
) -> Result<Option<Vec<Vec<Elem>>>> {
    match witness {
        Some(w) if emit => {
            validate_witness(spec, value, &w)?;
            Ok(Some(w))
        }
        _ => Ok(None),
    }
}

fn validate_witness(spec: &ProblemSpec, value: &BigUint, witness: &[Vec<Elem>]) -> Result<()> {
    if BigUint::from(witness.len()) != *value {
        return Err(Error::Construction(format!(
            "witness has {} vertices but claims {}",
            witness.len(),
            value
        )));
    }
    for (i, a) in witness.iter().enumerate() {
        for b in &witness[i + 1..] {
            let dist = hamming_distance(a, b)?;
            let ok = match spec.mode() {
                Mode::AtMost => dist >= 1 && dist <= spec.d(),
                Mode::Exactly => dist == spec.d(),
            };
            if !ok {
                return Err(Error::Construction(format!(
                    "witness pair at distance {} violates d = {} ({})",
                    dist,
                    spec.d(),
                    spec.mode()
                )));
            }
        }
    }
    Ok(())
}

/// Evaluates every bound whose preconditions match the spec, plus the exact
/// values known in closed form. Entries list all lower bounds first, each
/// tagged with a stable source label.
pub fn bounds_report(spec: &ProblemSpec, opts: &BoundsOptions) -> Result<BoundsReport> {
    let q = spec.q();
    let n = spec.n();
    let d = spec.d();
    let mut lowers: Vec<BoundEntry> = Vec::new();
    let mut uppers: Vec<BoundEntry> = Vec::new();
    let mut push_lower = |value: BigUint, source: &'static str, witness: Option<Vec<Vec<Elem>>>| {
        lowers.push(BoundEntry { direction: Direction::Lower, value, source, witness });
    };
    let mut push_upper = |value: BigUint, source: &'static str| {
        uppers.push(BoundEntry { direction: Direction::Upper, value, source, witness: None });
    };

    match spec.mode() {
        Mode::AtMost => {
            let (value, witness) = lower_sphere(spec)?;
            let witness = attach_witness(spec, &value, witness, opts.witnesses)?;
            push_lower(value, "Thm2.1", witness);
            if d == 2 {
                let (value, witness) = lower_star(spec)?;
                let witness = attach_witness(spec, &value, witness, opts.witnesses)?;
                push_lower(value, "Thm2.3", witness);
            }
            if let Some(a) = &opts.partition_a {
                push_lower(lower_partition(spec, a)?, "Eq(1)", None);
            }
            let r = hamming_length_exponent(q, n);
            if let Some(r) = r.filter(|_| d == 2) {
                let exact = big_pow(q, r);
                push_lower(exact.clone(), "Eq(5)", None);
                push_upper(exact, "Eq(5)");
            }
            if let Some(r) = r.filter(|&r| Some(d as u64) == big_pow(q, r - 1).to_u64().map(|x| x - 1)) {
                let exact = big_pow(q, n as u64 - r);
                push_lower(exact.clone(), "Eq(6)", None);
                push_upper(exact, "Eq(6)");
            }
            push_upper(upper_gv(spec)?, "Thm2.2");
            if d == 2 && spec.field().m() == 1 {
                push_upper(upper_m_matrix(spec)?, "Thm2.3");
            }
        }
        Mode::Exactly => {
            if d <= n {
                let (value, witness) = lower_exact_repeat(spec)?;
                let witness = attach_witness(spec, &value, witness, opts.witnesses)?;
                push_lower(value, "Thm3.1", witness);
                if d.is_multiple_of(2) {
                    let (value, witness) = lower_chain(spec)?;
                    let witness = attach_witness(spec, &value, witness, opts.witnesses)?;
                    push_lower(value, "Thm3.2", witness);
                }
                if d == 1 || d == n {
                    push_upper(BigUint::from(q), "Thm3.1");
                }
                push_upper(upper_forbidden(spec)?, "Thm3.4");
            } else {
                push_lower(BigUint::one(), "Diameter", None);
                push_upper(BigUint::one(), "Diameter");
            }
        }
    }

    let mut entries = lowers;
    entries.append(&mut uppers);
    let report = BoundsReport { spec: spec.clone(), entries };
    if let (Some(lo), Some(hi)) = (report.best_lower(), report.best_upper()) {
        if lo > hi {
            return Err(Error::Construction(format!(
                "inconsistent report: lower bound {} exceeds upper bound {}",
                lo, hi
            )));
        }
    }
    Ok(report)
}
