//! Coloring problems on Q_n(q), concrete constructions, and verification.
//!
//! A coloring assigns a label to every vertex in rank order. Labels are
//! always compact: exactly the values 0..palette_size-1, each occurring at
//! least once. Verification scans vertices in rank order and enumerates
//! conflicting partners of higher rank, so the reported violation is the
//! lexicographically least pair.

use std::io::{BufRead, Write};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::codes::{LinearCode, Matrix};
use crate::cube::{
    hamming_distance, shell_size, space_size, sphere_size, unrank, visit_ranks_in_window, Mode,
};
use crate::field::{Elem, Field};
use crate::util::ceil_log;
use crate::{Error, Result};

const SPACE_CAP_LOG2: u32 = 24;

/// Which coloring problem: (q, n, d, mode). The field fixes element
/// encodings; d may exceed n (at-most clamps to n, exactly is vacuous past n).
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    field: Arc<Field>,
    n: usize,
    d: usize,
    mode: Mode,
}

impl ProblemSpec {
    pub fn new(field: Arc<Field>, n: usize, d: usize, mode: Mode) -> Result<ProblemSpec> {
        if n == 0 {
            return Err(Error::invalid("dimension n must be at least 1"));
        }
        if d == 0 {
            return Err(Error::invalid("distance d must be at least 1"));
        }
        Ok(ProblemSpec { field, n, d, mode })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The distance actually enforced: at-most clamps d to the diameter n.
    pub fn effective_d(&self) -> usize {
        match self.mode {
            Mode::AtMost => self.d.min(self.n),
            Mode::Exactly => self.d,
        }
    }

    /// q^n, guarded by the vertex-set cap.
    pub fn vertex_count(&self) -> Result<u64> {
        match space_size(self.q(), self.n) {
            Some(v) if v <= 1 << SPACE_CAP_LOG2 => Ok(v),
            _ => Err(Error::SpaceTooLarge { q: self.q(), n: self.n, cap_log2: SPACE_CAP_LOG2 }),
        }
    }

    /// Vertex count as a big integer, with no cap; for bound formulas.
    pub fn vertex_count_big(&self) -> BigUint {
        crate::util::big_pow(self.q(), self.n as u64)
    }
}

/// A total assignment of compact labels to the vertices of Q_n(q).
#[derive(Debug, Clone)]
pub struct Coloring {
    spec: ProblemSpec,
    labels: Vec<u32>,
    palette: u32,
}

impl Coloring {
    /// Wraps explicit labels, checking compactness: with L distinct values,
    /// every label is below L and every value below L occurs.
    pub fn from_labels(spec: ProblemSpec, labels: Vec<u32>) -> Result<Coloring> {
        let expect = spec.vertex_count()?;
        if labels.len() as u64 != expect {
            return Err(Error::invalid(format!(
                "expected q^n = {} labels, got {}",
                expect,
                labels.len()
            )));
        }
        let palette = labels.iter().max().map_or(0, |&m| m + 1);
        let mut seen = vec![false; palette as usize];
        for &l in &labels {
            seen[l as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::invalid(format!(
                "labels are not compact: {} never occurs below palette size {}",
                missing, palette
            )));
        }
        Ok(Coloring { spec, labels, palette })
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn palette_size(&self) -> u32 {
        self.palette
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn color(&self, rank: u64) -> u32 {
        self.labels[rank as usize]
    }

    /// Serializes the coloring; see `read_from` for the format.
    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        let f = self.spec.field();
        writeln!(w, "qary-coloring 1")?;
        writeln!(
            w,
            "q={} p={} m={} n={} d={} mode={} colors={}",
            f.q(),
            f.p(),
            f.m(),
            self.spec.n(),
            self.spec.d(),
            self.spec.mode(),
            self.palette
        )?;
        for label in &self.labels {
            writeln!(w, "{}", label)?;
        }
        Ok(())
    }

    /// Parses the two header lines and q^n label lines:
    ///
    /// ```text
    /// qary-coloring 1
    /// q=27 p=3 m=3 n=4 d=2 mode=atmost colors=729
    /// <one decimal label per vertex, in rank order>
    /// ```
    pub fn read_from(r: impl BufRead) -> Result<Coloring> {
        let mut lines = r.lines();
        let magic = next_line(&mut lines)?;
        if magic.trim_end() != "qary-coloring 1" {
            return Err(Error::Format("missing qary-coloring 1 header".into()));
        }
        let header = next_line(&mut lines)?;
        let fields: Vec<&str> = header.trim_end().split(' ').collect();
        let keys = ["q", "p", "m", "n", "d", "mode", "colors"];
        if fields.len() != keys.len() {
            return Err(Error::Format(format!(
                "header must have exactly the fields {}",
                keys.join(", ")
            )));
        }
        let mut values = Vec::new();
        for (field, key) in fields.iter().zip(keys) {
            let value = field
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| Error::Format(format!("expected {}=... in header", key)))?;
            values.push(value);
        }
        let q: u64 = parse_num(values[0], "q")?;
        let p: u64 = parse_num(values[1], "p")?;
        let m: u32 = parse_num(values[2], "m")? as u32;
        let n: usize = parse_num(values[3], "n")? as usize;
        let d: usize = parse_num(values[4], "d")? as usize;
        let mode = Mode::parse(values[5]).map_err(|e| Error::Format(e.to_string()))?;
        let colors: u64 = parse_num(values[6], "colors")?;

        let field = Field::new(p, m).map_err(|e| Error::Format(e.to_string()))?;
        if field.q() != q {
            return Err(Error::Format(format!("q = {} does not equal p^m = {}", q, field.q())));
        }
        let spec = ProblemSpec::new(Arc::new(field), n, d, mode)
            .map_err(|e| Error::Format(e.to_string()))?;
        let expect = spec.vertex_count().map_err(|e| Error::Format(e.to_string()))?;

        let mut labels = Vec::with_capacity(expect as usize);
        for line in lines {
            let line = line?;
            let trimmed = line.trim_end();
            if trimmed.is_empty() && labels.len() as u64 == expect {
                continue;
            }
            let label: u64 = parse_num(trimmed, "label")?;
            if label >= colors {
                return Err(Error::Format(format!(
                    "label {} is not below the declared colors {}",
                    label, colors
                )));
            }
            labels.push(label as u32);
            if labels.len() as u64 > expect {
                return Err(Error::Format(format!("more than q^n = {} labels", expect)));
            }
        }
        if (labels.len() as u64) < expect {
            return Err(Error::Format(format!(
                "expected q^n = {} labels, found {}",
                expect,
                labels.len()
            )));
        }
        let coloring = Coloring::from_labels(spec, labels)
            .map_err(|e| Error::Format(e.to_string()))?;
        if coloring.palette_size() as u64 != colors {
            return Err(Error::Format(format!(
                "header declares {} colors but the body uses {}",
                colors,
                coloring.palette_size()
            )));
        }
        Ok(coloring)
    }
}

fn next_line(lines: &mut impl Iterator<Item = std::io::Result<String>>) -> Result<String> {
    lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::Format("unexpected end of file".into()))
}

fn parse_num(s: &str, what: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::Format(format!("bad {} value {:?}", what, s)))
}

/// Relabels raw values to 0..L-1 in order of first occurrence over ranks.
fn compact_labels(raw: impl Iterator<Item = u64>) -> (Vec<u32>, u32) {
    let mut map = std::collections::HashMap::new();
    let mut labels = Vec::new();
    for value in raw {
        let next = map.len() as u32;
        let label = *map.entry(value).or_insert(next);
        labels.push(label);
    }
    (labels, map.len() as u32)
}

/// Colors every vertex by its syndrome under the code's parity matrix, so
/// color classes are exactly the cosets; q^(n-k) colors. Valid at-most-d
/// when the minimum distance exceeds d, and exactly-d when the weight-d
/// spectrum entry is zero.
pub fn coset_coloring(code: &LinearCode, spec: &ProblemSpec) -> Result<Coloring> {
    if code.n() != spec.n() {
        return Err(Error::invalid(format!(
            "code length {} does not match n = {}",
            code.n(),
            spec.n()
        )));
    }
    if code.field().q() != spec.field().q() {
        return Err(Error::invalid("code and spec use different fields"));
    }
    let q = spec.q();
    let count = spec.vertex_count()?;
    let parity = code.parity();
    let field = spec.field().as_ref();
    let raw = (0..count).map(|r| {
        let v = unrank(q, spec.n(), r);
        let syn = parity.mul_vec(field, &v).expect("lengths match");
        syn.iter().fold(0u64, |acc, &s| acc * q + s as u64)
    });
    let (labels, _) = compact_labels(raw);
    Coloring::from_labels(spec.clone(), labels)
}

/// The n x (ceil(log_q n) + 1) matrix whose row i is the q-adic expansion of
/// i (most significant digit first) followed by (digit sum + 1) mod q.
/// Defined for prime q and n >= 2.
pub fn m_matrix(field: &Field, n: usize) -> Result<Matrix> {
    if field.m() != 1 {
        return Err(Error::invalid("the digit-sum matrix is defined for prime q only"));
    }
    if n < 2 {
        return Err(Error::invalid("the digit-sum matrix needs n >= 2"));
    }
    let q = field.q();
    let width = ceil_log(q, &BigUint::from(n)) as usize + 1;
    let mut m = Matrix::zero(n, width);
    for i in 0..n {
        let mut x = i as u64;
        let mut digit_sum = 0u64;
        for c in (0..width - 1).rev() {
            let digit = x % q;
            digit_sum += digit;
            m.set(i, c, digit as Elem);
            x /= q;
        }
        m.set(i, width - 1, ((digit_sum + 1) % q) as Elem);
    }
    Ok(m)
}

/// Colors vertex v by the product v M of the digit-sum matrix; q^(width)
/// colors at most, valid at distance at most 2 for prime q.
pub fn m_matrix_coloring(field: Arc<Field>, n: usize) -> Result<Coloring> {
    let m = m_matrix(&field, n)?;
    let spec = ProblemSpec::new(field.clone(), n, 2, Mode::AtMost)?;
    let q = field.q();
    let count = spec.vertex_count()?;
    let raw = (0..count).map(|r| {
        let v = unrank(q, n, r);
        let mut product = vec![0 as Elem; m.cols()];
        for (i, &x) in v.iter().enumerate() {
            for (c, slot) in product.iter_mut().enumerate() {
                *slot = field.add(*slot, field.mul(x, m.get(i, c)));
            }
        }
        product.iter().fold(0u64, |acc, &s| acc * q + s as u64)
    });
    let (labels, _) = compact_labels(raw);
    Coloring::from_labels(spec, labels)
}

/// Colors vertex x by the integer residue (sum over nonzero coordinates of
/// log_alpha(x_k) + 1) mod q; exactly q colors, valid exactly-1.
pub fn exact_d1_coloring(field: Arc<Field>, n: usize) -> Result<Coloring> {
    let spec = ProblemSpec::new(field.clone(), n, 1, Mode::Exactly)?;
    let q = spec.q();
    let count = spec.vertex_count()?;
    let labels: Vec<u32> = (0..count)
        .map(|r| {
            let v = unrank(q, n, r);
            let gamma = v
                .iter()
                .filter(|&&x| x != 0)
                .map(|&x| field.log(x).expect("nonzero") as u64 + 1)
                .sum::<u64>()
                % q;
            gamma as u32
        })
        .collect();
    Coloring::from_labels(spec, labels)
}

/// Colors every vertex by its first coordinate; q colors, valid exactly-n.
pub fn slab_coloring(field: Arc<Field>, n: usize) -> Result<Coloring> {
    let spec = ProblemSpec::new(field, n, n, Mode::Exactly)?;
    let q = spec.q();
    let count = spec.vertex_count()?;
    let slab = count / q;
    let labels: Vec<u32> = (0..count).map(|r| (r / slab) as u32).collect();
    Coloring::from_labels(spec, labels)
}

/// The least conflicting same-color pair, ordered by (rank_a, rank_b).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub rank_a: u64,
    pub rank_b: u64,
    pub distance: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyOutcome {
    Valid,
    Invalid(Violation),
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Cap on vertex-pair distance checks; the scan refuses to start past it.
    pub max_pair_checks: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_pair_checks: 1 << 30 }
    }
}

pub fn verify_coloring(c: &Coloring) -> Result<VerifyOutcome> {
    verify_coloring_with(c, &VerifyOptions::default())
}

/// Scans every vertex in rank order and enumerates same-color partners in
/// the conflict window of higher rank. Runs on the current rayon pool; the
/// outcome does not depend on the number of threads.
pub fn verify_coloring_with(c: &Coloring, opts: &VerifyOptions) -> Result<VerifyOutcome> {
    let spec = c.spec();
    let q = spec.q();
    let n = spec.n();
    let count = spec.vertex_count()?;
    let (lo, hi) = match spec.mode() {
        Mode::AtMost => (1, spec.effective_d()),
        Mode::Exactly => {
            if spec.d() > n {
                return Ok(VerifyOutcome::Valid);
            }
            (spec.d(), spec.d())
        }
    };

    let per_vertex = match spec.mode() {
        Mode::AtMost => sphere_size(q, n, hi) - 1u32,
        Mode::Exactly => shell_size(q, n, spec.d()),
    };
    let needed = (BigUint::from(count) * per_vertex)
        .to_u64()
        .unwrap_or(u64::MAX);
    if needed > opts.max_pair_checks {
        return Err(Error::VerifyBudget { needed, budget: opts.max_pair_checks });
    }

    let labels = c.labels();
    const CHUNK: u64 = 1 << 12;
    let chunks = count.div_ceil(CHUNK);
    let first = (0..chunks)
        .into_par_iter()
        .filter_map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(count);
            let mut found: Option<Violation> = None;
            'scan: for rank_a in start..end {
                let center = unrank(q, n, rank_a);
                let color = labels[rank_a as usize];
                let mut hit = None;
                visit_ranks_in_window(q, &center, lo, hi, true, &mut |rank_b| {
                    if labels[rank_b as usize] == color {
                        hit = Some(rank_b);
                        false
                    } else {
                        true
                    }
                });
                if let Some(rank_b) = hit {
                    let partner = unrank(q, n, rank_b);
                    let distance = hamming_distance(&center, &partner).expect("equal lengths");
                    found = Some(Violation { rank_a, rank_b, distance });
                    break 'scan;
                }
            }
            found
        })
        .min_by_key(|v| (v.rank_a, v.rank_b));

    Ok(match first {
        None => VerifyOutcome::Valid,
        Some(v) => VerifyOutcome::Invalid(v),
    })
}
