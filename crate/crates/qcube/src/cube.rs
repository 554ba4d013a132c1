//! Vertices of Q_n(q): ranking, Hamming metric, and distance enumeration.
//!
//! A vertex is a length-n slice of field element encodings. Its rank is the
//! base-q value of the coordinate string with coordinate 0 most significant,
//! and all enumeration in the crate walks ranks in increasing order so that
//! output is reproducible byte for byte.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::field::Elem;
use crate::util::{big_pow, binomial, checked_pow};
use crate::{Error, Result};

/// Distance semantics for coloring problems: conflicts at distance <= d or
/// at distance exactly d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    AtMost,
    Exactly,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::AtMost => "atmost",
            Mode::Exactly => "exactly",
        }
    }

    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "atmost" => Ok(Mode::AtMost),
            "exactly" => Ok(Mode::Exactly),
            other => Err(Error::Format(format!("unknown mode {:?}", other))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// q^n as u64, or None when it does not fit.
pub fn space_size(q: u64, n: usize) -> Option<u64> {
    checked_pow(q, n as u32)
}

pub fn rank(q: u64, coords: &[Elem]) -> u64 {
    coords.iter().fold(0u64, |acc, &c| acc * q + c as u64)
}

pub fn unrank(q: u64, n: usize, r: u64) -> Vec<Elem> {
    let mut coords = vec![0 as Elem; n];
    let mut x = r;
    for slot in coords.iter_mut().rev() {
        *slot = (x % q) as Elem;
        x /= q;
    }
    debug_assert_eq!(x, 0, "rank out of range");
    coords
}

pub fn hamming_weight(x: &[Elem]) -> usize {
    x.iter().filter(|&&c| c != 0).count()
}

pub fn hamming_distance(x: &[Elem], y: &[Elem]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "vertex lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}

/// Number of vertices within distance r of a fixed center:
/// sum over i <= r of C(n, i) (q-1)^i.
pub fn sphere_size(q: u64, n: usize, r: usize) -> BigUint {
    let mut total = BigUint::zero();
    for i in 0..=r.min(n) {
        total += binomial(n as u64, i as u64) * big_pow(q - 1, i as u64);
    }
    total
}

/// Number of vertices at distance exactly r from a fixed center.
pub fn shell_size(q: u64, n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    binomial(n as u64, r as u64) * big_pow(q - 1, r as u64)
}

/// Vertices whose distance from `center` lies in the mode-d window, excluding
/// `center` itself, in increasing rank order.
pub fn enumerate_at_distance(q: u64, center: &[Elem], d: usize, mode: Mode) -> Vec<Vec<Elem>> {
    let n = center.len();
    if d == 0 {
        return Vec::new();
    }
    let (lo, hi) = match mode {
        Mode::AtMost => (1, d.min(n)),
        Mode::Exactly => (d, d),
    };
    let mut out = Vec::new();
    visit_ranks_in_window(q, center, lo, hi, false, &mut |r| {
        out.push(unrank(q, n, r));
        true
    });
    out
}

/// Depth-first walk over coordinate strings in lexicographic (= rank) order,
/// restricted to strings whose number of disagreements with `center` lands in
/// [lo, hi]. With `only_greater`, strings ranked at or below the center are
/// skipped. The visitor returns false to stop early; the return value is
/// false iff the walk was stopped.
pub(crate) fn visit_ranks_in_window(
    q: u64,
    center: &[Elem],
    lo: usize,
    hi: usize,
    only_greater: bool,
    visit: &mut impl FnMut(u64) -> bool,
) -> bool {
    if lo > hi || lo > center.len() {
        return true;
    }
    recurse(q, center, lo, hi, only_greater, 0, true, 0, 0, visit)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    q: u64,
    center: &[Elem],
    lo: usize,
    hi: usize,
    only_greater: bool,
    i: usize,
    tight: bool,
    diff: usize,
    prefix: u64,
    visit: &mut impl FnMut(u64) -> bool,
) -> bool {
    let n = center.len();
    if i == n {
        if only_greater && tight {
            return true;
        }
        return visit(prefix);
    }
    let c = center[i] as u64;
    let remaining = n - i - 1;

    if diff == hi {
        return recurse(q, center, lo, hi, only_greater, i + 1, tight, diff, prefix * q + c, visit);
    }

    let must_differ = diff + remaining < lo;
    let start = if only_greater && tight { c } else { 0 };
    for v in start..q {
        if must_differ && v == c {
            continue;
        }
        let e = (v != c) as usize;
        if !recurse(
            q,
            center,
            lo,
            hi,
            only_greater,
            i + 1,
            tight && v == c,
            diff + e,
            prefix * q + v,
            visit,
        ) {
            return false;
        }
    }
    true
}

/// Renders a vertex: bare base-q digits for q <= 10, comma-separated decimal
/// encodings otherwise.
pub fn format_vertex(q: u64, coords: &[Elem]) -> String {
    if q <= 10 {
        coords.iter().map(|c| c.to_string()).collect()
    } else {
        coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
