//! Linear codes over GF(q): Hamming and simplex families, two greedy
//! parity-matrix constructions, and codeword statistics by enumeration.
//!
//! A column of a parity matrix is encoded as the base-q value of its entries
//! with the top entry most significant; candidate scans run in increasing
//! encoding so constructions are canonical.

use std::collections::HashMap;
use std::collections::HashSet;
use std::sync::Arc;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::field::{Elem, Field};
use crate::util::{big_pow, binomial, ceil_log, checked_pow, floor_log};
use crate::{Error, Result};

const ENUM_CAP_LOG2: u32 = 24;

/// Dense row-major matrix of field element encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("matrix rows have unequal lengths"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        self.data.chunks_exact(self.cols.max(1))
    }

    /// Matrix-vector product H v^T.
    pub fn mul_vec(&self, f: &Field, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::invalid(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![0 as Elem; self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc: Elem = 0;
            for (c, &x) in v.iter().enumerate() {
                acc = f.add(acc, f.mul(self.get(r, c), x));
            }
            *slot = acc;
        }
        Ok(out)
    }
}

/// Reduced row echelon form; returns the pivot column per pivot row.
fn rref(m: &mut Matrix, f: &Field) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..m.cols {
                let tmp = m.get(row, c);
                m.set(row, c, m.get(pr, c));
                m.set(pr, c, tmp);
            }
        }
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in 0..m.cols {
            m.set(row, c, f.mul(m.get(row, c), inv));
        }
        for r in 0..m.rows {
            if r != row && m.get(r, col) != 0 {
                let factor = m.get(r, col);
                for c in 0..m.cols {
                    let sub = f.mul(factor, m.get(row, c));
                    m.set(r, c, f.sub(m.get(r, c), sub));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn matrix_rank(m: &Matrix, f: &Field) -> usize {
    let mut work = m.clone();
    rref(&mut work, f).len()
}

/// Basis (as rows) of the right null space {x : M x^T = 0}.
fn null_space(m: &Matrix, f: &Field) -> Matrix {
    let mut work = m.clone();
    let pivots = rref(&mut work, f);
    let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Matrix::zero(free.len(), m.cols);
    for (b, &fc) in free.iter().enumerate() {
        basis.set(b, fc, 1);
        for (pr, &pc) in pivots.iter().enumerate() {
            basis.set(b, pc, f.neg(work.get(pr, fc)));
        }
    }
    basis
}

/// A linear [n, k] code, held as generator and/or parity matrix; the missing
/// one is derived by row reduction on demand.
#[derive(Debug)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    k: usize,
    generator: OnceLock<Matrix>,
    parity: OnceLock<Matrix>,
    spectrum: OnceLock<Vec<u64>>,
}

impl LinearCode {
    pub fn from_generator(field: Arc<Field>, g: Matrix) -> Result<LinearCode> {
        validate_entries(&field, &g)?;
        let k = matrix_rank(&g, &field);
        if k != g.rows() {
            return Err(Error::invalid("generator rows are linearly dependent"));
        }
        let code = LinearCode {
            field,
            n: g.cols(),
            k,
            generator: OnceLock::new(),
            parity: OnceLock::new(),
            spectrum: OnceLock::new(),
        };
        code.generator.set(g).expect("fresh cell");
        Ok(code)
    }

    pub fn from_parity(field: Arc<Field>, h: Matrix) -> Result<LinearCode> {
        validate_entries(&field, &h)?;
        let rank = matrix_rank(&h, &field);
        let code = LinearCode {
            field,
            n: h.cols(),
            k: h.cols() - rank,
            generator: OnceLock::new(),
            parity: OnceLock::new(),
            spectrum: OnceLock::new(),
        };
        code.parity.set(h).expect("fresh cell");
        Ok(code)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Matrix {
        self.generator.get_or_init(|| {
            let h = self.parity.get().expect("a code holds generator or parity");
            null_space(h, &self.field)
        })
    }

    pub fn parity(&self) -> &Matrix {
        self.parity.get_or_init(|| {
            let g = self.generator.get().expect("a code holds generator or parity");
            null_space(g, &self.field)
        })
    }

    /// Weight histogram over all q^k codewords; index = weight.
    pub fn weight_spectrum(&self) -> Result<&[u64]> {
        if self.spectrum.get().is_none() {
            let computed = self.enumerate_spectrum()?;
            let _ = self.spectrum.set(computed);
        }
        Ok(self.spectrum.get().expect("just set"))
    }

    pub fn min_distance(&self) -> Result<usize> {
        if self.k == 0 {
            return Err(Error::invalid("the zero code has no nonzero codewords"));
        }
        let spectrum = self.weight_spectrum()?;
        Ok(spectrum
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &count)| count > 0)
            .map(|(w, _)| w)
            .expect("a positive-dimension code has a nonzero codeword"))
    }

    pub fn syndrome(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        self.parity().mul_vec(&self.field, v)
    }

    fn enumerate_spectrum(&self) -> Result<Vec<u64>> {
        let q = self.field.q();
        let count = capped_pow(q, self.k as u32)?;
        let g = self.generator();
        let f = &self.field;
        let mut spectrum = vec![0u64; self.n + 1];
        let mut message = vec![0 as Elem; self.k];
        let mut word = vec![0 as Elem; self.n];
        spectrum[0] += 1;
        for _ in 1..count {
            let mut i = self.k;
            loop {
                i -= 1;
                for (slot, &step) in word.iter_mut().zip(g.row(i)) {
                    *slot = f.add(*slot, step);
                }
                let next = message[i] as u64 + 1;
                if next < q {
                    message[i] = next as Elem;
                    break;
                }
                message[i] = 0;
            }
            spectrum[word.iter().filter(|&&x| x != 0).count()] += 1;
        }
        Ok(spectrum)
    }
}

fn capped_pow(q: u64, e: u32) -> Result<u64> {
    match checked_pow(q, e) {
        Some(c) if c <= 1 << ENUM_CAP_LOG2 => Ok(c),
        other => Err(Error::EnumerationTooLarge {
            count: other.unwrap_or(u64::MAX),
            cap_log2: ENUM_CAP_LOG2,
        }),
    }
}

fn validate_entries(field: &Field, m: &Matrix) -> Result<()> {
    let q = field.q();
    if m.data.iter().any(|&e| e as u64 >= q) {
        return Err(Error::invalid("matrix entry out of field range"));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::invalid("matrix must be nonempty"));
    }
    Ok(())
}

fn column_digits(q: u64, height: usize, encoding: u64) -> Vec<Elem> {
    let mut digits = vec![0 as Elem; height];
    let mut x = encoding;
    for d in digits.iter_mut().rev() {
        *d = (x % q) as Elem;
        x /= q;
    }
    digits
}

fn matrix_from_columns(height: usize, columns: &[Vec<Elem>]) -> Matrix {
    let mut m = Matrix::zero(height, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

/// Hamming code of redundancy r: parity columns are the projective points of
/// GF(q)^r, one representative per line with first nonzero entry 1, ordered
/// by increasing column encoding. Parameters [(q^r-1)/(q-1), n-r, 3].
pub fn hamming_code(field: Arc<Field>, r: u32) -> Result<LinearCode> {
    if r < 2 {
        return Err(Error::invalid("hamming redundancy r must be at least 2"));
    }
    let q = field.q();
    let total = capped_pow(q, r)?;
    let mut columns = Vec::new();
    for enc in 1..total {
        let digits = column_digits(q, r as usize, enc);
        let first = digits.iter().find(|&&d| d != 0).expect("enc > 0");
        if *first == 1 {
            columns.push(digits);
        }
    }
    debug_assert_eq!(columns.len() as u64, (total - 1) / (q - 1));
    LinearCode::from_parity(field, matrix_from_columns(r as usize, &columns))
}

/// Simplex code of dimension r: the dual of the Hamming code; every nonzero
/// codeword has weight q^(r-1).
pub fn simplex_code(field: Arc<Field>, r: u32) -> Result<LinearCode> {
    let hamming = hamming_code(field.clone(), r)?;
    let generator = hamming.parity().clone();
    LinearCode::from_generator(field, generator)
}

fn reduce_column(f: &Field, basis: &[Vec<Elem>], col: &[Elem]) -> Vec<Elem> {
    let mut v = col.to_vec();
    for b in basis {
        let lead = b.iter().position(|&x| x != 0).expect("basis columns are nonzero");
        let factor = v[lead];
        if factor != 0 {
            for (slot, &bx) in v.iter_mut().zip(b.iter()) {
                *slot = f.sub(*slot, f.mul(factor, bx));
            }
        }
    }
    v
}

/// Greedy parity-matrix construction giving minimum distance >= d + 1 with
/// t = floor(log_q(sum over j < d of (q-1)^j C(n-1, j))) + 1 parity rows.
///
/// A candidate column is accepted iff it is nonzero and not a combination of
/// at most d - 1 already-chosen columns with all-nonzero coefficients; the
/// reachable combinations are kept in a map from encoding to the least
/// number of columns that produces it. Once the positions left equal the
/// rank still missing, candidates inside the span of the chosen columns are
/// skipped as well, so the finished matrix has full row rank and the code
/// has dimension exactly n - t.
pub fn gv_greedy(field: Arc<Field>, n: usize, d: usize) -> Result<LinearCode> {
    if d < 1 || d >= n {
        return Err(Error::invalid("gv construction needs 1 <= d < n"));
    }
    let q = field.q();
    let mut sum = BigUint::ZERO;
    for j in 0..d as u64 {
        sum += big_pow(q - 1, j) * binomial(n as u64 - 1, j);
    }
    let t = floor_log(q, &sum) + 1;
    let total = capped_pow(q, t as u32)?;

    let f = field.as_ref();
    let height = t as usize;
    let mut reach: HashMap<u64, usize> = HashMap::new();
    let mut columns: Vec<Vec<Elem>> = Vec::with_capacity(n);
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    for position in 0..n {
        let must_raise_rank = height - basis.len() == n - position;
        let mut chosen = None;
        for enc in 1..total {
            if reach.contains_key(&enc) {
                continue;
            }
            if must_raise_rank {
                let digits = column_digits(q, height, enc);
                if reduce_column(f, &basis, &digits).iter().all(|&x| x == 0) {
                    continue;
                }
            }
            chosen = Some(enc);
            break;
        }
        let Some(enc) = chosen else {
            return Err(Error::Construction(format!(
                "no acceptable column among q^{} candidates",
                t
            )));
        };
        let digits = column_digits(q, height, enc);
        let reduced = reduce_column(f, &basis, &digits);
        if let Some(lead) = reduced.iter().position(|&x| x != 0) {
            let inv = f.inv(reduced[lead])?;
            basis.push(scale_column(f, &reduced, inv));
        }
        if d >= 2 {
            let snapshot: Vec<(u64, usize)> =
                reach.iter().map(|(&v, &s)| (v, s)).filter(|&(_, s)| s <= d - 2).collect();
            for a in 1..q {
                let scaled = scale_column(f, &digits, a as Elem);
                let scaled_enc = column_encoding(q, &scaled);
                insert_min(&mut reach, scaled_enc, 1);
                for &(v, s) in &snapshot {
                    let combo = add_columns(f, &column_digits(q, height, v), &scaled);
                    insert_min(&mut reach, column_encoding(q, &combo), s + 1);
                }
            }
        }
        columns.push(digits);
    }
    LinearCode::from_parity(field, matrix_from_columns(height, &columns))
}

/// Greedy parity-matrix construction whose code has no codeword of weight
/// exactly d, with ceil(log_q(2 + C(n-1, d-1) (q-1)^(d-1))) parity rows.
///
/// Combination values using exactly s distinct chosen columns are tracked per
/// s; each set is closed under nonzero scaling, so a candidate is acceptable
/// iff it is nonzero and absent from the size-(d-1) set.
pub fn forbidden_weight_greedy(field: Arc<Field>, n: usize, d: usize) -> Result<LinearCode> {
    if d < 1 || d > n {
        return Err(Error::invalid("forbidden-weight construction needs 1 <= d <= n"));
    }
    let q = field.q();
    let target = BigUint::from(2u32) + binomial(n as u64 - 1, d as u64 - 1) * big_pow(q - 1, d as u64 - 1);
    let m = ceil_log(q, &target).max(1);
    let total = capped_pow(q, m as u32)?;

    let f = field.as_ref();
    let height = m as usize;
    let mut combos: Vec<HashSet<u64>> = vec![HashSet::new(); d];
    combos[0].insert(0);
    let mut columns: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut chosen = None;
        for enc in 1..total {
            if !combos[d - 1].contains(&enc) {
                chosen = Some(enc);
                break;
            }
        }
        let Some(enc) = chosen else {
            return Err(Error::Construction(format!(
                "no acceptable column among q^{} candidates",
                m
            )));
        };
        let digits = column_digits(q, height, enc);
        for s in (0..d - 1).rev() {
            let snapshot: Vec<u64> = combos[s].iter().copied().collect();
            for a in 1..q {
                let scaled = scale_column(f, &digits, a as Elem);
                for &v in &snapshot {
                    let combo = add_columns(f, &column_digits(q, height, v), &scaled);
                    combos[s + 1].insert(column_encoding(q, &combo));
                }
            }
        }
        columns.push(digits);
    }
    LinearCode::from_parity(field, matrix_from_columns(height, &columns))
}

fn scale_column(f: &Field, col: &[Elem], a: Elem) -> Vec<Elem> {
    col.iter().map(|&x| f.mul(x, a)).collect()
}

fn add_columns(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn column_encoding(q: u64, col: &[Elem]) -> u64 {
    col.iter().fold(0u64, |acc, &d| acc * q + d as u64)
}

fn insert_min(map: &mut HashMap<u64, usize>, key: u64, value: usize) {
    map.entry(key)
        .and_modify(|s| *s = (*s).min(value))
        .or_insert(value);
}

/// Spectrum as an exact big-integer count check helper for tests.
pub fn spectrum_total(spectrum: &[u64]) -> BigUint {
    spectrum.iter().map(|&c| BigUint::from(c)).sum()
}

pub fn spectrum_matches_dimension(code: &LinearCode, spectrum: &[u64]) -> bool {
    spectrum_total(spectrum)
        .to_u64()
        .zip(checked_pow(code.field().q(), code.k() as u32))
        .is_some_and(|(total, expect)| total == expect)
}
