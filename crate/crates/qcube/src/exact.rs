//! Exhaustive search oracles at desk scale: maximum cliques in distance
//! graphs, maximum code sizes, and exact chromatic numbers.
//!
//! All searches are deterministic single-threaded branch and bound with an
//! explicit node budget. Running out of budget is an ordinary outcome that
//! reports the bracket established so far, never a silent wrong answer.

use crate::coloring::{Coloring, ProblemSpec};
use crate::cube::{hamming_distance, space_size, unrank, visit_ranks_in_window, Mode};
use crate::field::{Elem, Field};
use crate::{Error, Result};

const SEARCH_CAP_LOG2: u32 = 14;

#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Branch-and-bound node cap per search phase.
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult<W> {
    Exact { value: u64, witness: W },
    Exhausted { lower: u64, upper: u64 },
}

impl<W> SearchResult<W> {
    pub fn value(&self) -> Option<u64> {
        match self {
            SearchResult::Exact { value, .. } => Some(*value),
            SearchResult::Exhausted { .. } => None,
        }
    }

    pub fn bracket(&self) -> (u64, u64) {
        match self {
            SearchResult::Exact { value, .. } => (*value, *value),
            SearchResult::Exhausted { lower, upper } => (*lower, *upper),
        }
    }
}

struct Counter {
    used: u64,
    cap: u64,
}

impl Counter {
    fn new(cap: u64) -> Counter {
        Counter { used: 0, cap }
    }

    fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.cap
    }
}

/// Vertices of Q_n(q) with an edge between ranks whose Hamming distance
/// falls in [lo, hi]. Adjacency is a bitset when q^n <= 2^12, otherwise
/// recomputed from cached coordinates per query.
struct ConflictGraph {
    q: u64,
    lo: usize,
    hi: usize,
    verts: Vec<Vec<Elem>>,
    bits: Option<Vec<Vec<u64>>>,
}

fn ensure_search_cap(q: u64, n: usize) -> Result<u64> {
    match space_size(q, n) {
        Some(v) if v <= 1 << SEARCH_CAP_LOG2 => Ok(v),
        _ => Err(Error::SpaceTooLarge { q, n, cap_log2: SEARCH_CAP_LOG2 }),
    }
}

impl ConflictGraph {
    fn new(q: u64, n: usize, lo: usize, hi: usize) -> Result<ConflictGraph> {
        let count = ensure_search_cap(q, n)?;
        let verts: Vec<Vec<Elem>> = (0..count).map(|r| unrank(q, n, r)).collect();
        let bits = (count <= 1 << 12).then(|| {
            let words = (count as usize).div_ceil(64);
            let mut rows = vec![vec![0u64; words]; count as usize];
            for (a, center) in verts.iter().enumerate() {
                visit_ranks_in_window(q, center, lo, hi, false, &mut |b| {
                    rows[a][b as usize / 64] |= 1 << (b % 64);
                    true
                });
            }
            rows
        });
        Ok(ConflictGraph { q, lo, hi, verts, bits })
    }

    fn len(&self) -> u32 {
        self.verts.len() as u32
    }

    fn adjacent(&self, a: u32, b: u32) -> bool {
        if a == b {
            return false;
        }
        match &self.bits {
            Some(rows) => rows[a as usize][b as usize / 64] >> (b % 64) & 1 == 1,
            None => {
                let dist = hamming_distance(&self.verts[a as usize], &self.verts[b as usize])
                    .expect("equal lengths");
                dist >= self.lo && dist <= self.hi
            }
        }
    }

    fn neighbor_lists(&self) -> Vec<Vec<u32>> {
        self.verts
            .iter()
            .map(|center| {
                let mut out = Vec::new();
                visit_ranks_in_window(self.q, center, self.lo, self.hi, false, &mut |b| {
                    out.push(b as u32);
                    true
                });
                out
            })
            .collect()
    }

    fn vertex(&self, a: u32) -> &[Elem] {
        &self.verts[a as usize]
    }
}

struct CliqueSearch<'g> {
    graph: &'g ConflictGraph,
    best: Vec<u32>,
    counter: Counter,
    exhausted: bool,
    root_bound: u64,
}

impl<'g> CliqueSearch<'g> {
    fn run(graph: &'g ConflictGraph, budget: &SearchBudget) -> CliqueSearch<'g> {
        let mut search = CliqueSearch {
            graph,
            best: Vec::new(),
            counter: Counter::new(budget.max_nodes),
            exhausted: false,
            root_bound: 0,
        };
        let all: Vec<u32> = (0..graph.len()).collect();
        let mut current = Vec::new();
        search.expand(&mut current, all);
        search
    }

    /// Greedy coloring of the candidates; returns them grouped by color
    /// class with each vertex's 1-based class index, ascending.
    fn number_sort(&self, cands: &[u32]) -> (Vec<u32>, Vec<usize>) {
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for &v in cands {
            match classes
                .iter_mut()
                .find(|class| class.iter().all(|&u| !self.graph.adjacent(u, v)))
            {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut ordered = Vec::with_capacity(cands.len());
        let mut colors = Vec::with_capacity(cands.len());
        for (index, class) in classes.iter().enumerate() {
            for &v in class {
                ordered.push(v);
                colors.push(index + 1);
            }
        }
        (ordered, colors)
    }

    fn expand(&mut self, current: &mut Vec<u32>, cands: Vec<u32>) {
        if !self.counter.tick() {
            self.exhausted = true;
            return;
        }
        if cands.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return;
        }
        let (ordered, colors) = self.number_sort(&cands);
        if current.is_empty() {
            self.root_bound = colors.last().map_or(0, |&c| c as u64);
        }
        for i in (0..ordered.len()).rev() {
            if self.exhausted {
                return;
            }
            if current.len() + colors[i] <= self.best.len() {
                return;
            }
            let v = ordered[i];
            current.push(v);
            let next: Vec<u32> = ordered[..i]
                .iter()
                .copied()
                .filter(|&u| self.graph.adjacent(u, v))
                .collect();
            self.expand(current, next);
            current.pop();
        }
    }
}

fn clique_result(graph: &ConflictGraph, budget: &SearchBudget) -> SearchResult<Vec<Vec<Elem>>> {
    let search = CliqueSearch::run(graph, budget);
    if search.exhausted {
        let upper = match search.root_bound {
            0 => graph.len() as u64,
            bound => bound.max(search.best.len() as u64),
        };
        return SearchResult::Exhausted { lower: search.best.len() as u64, upper };
    }
    let mut ranks = search.best;
    ranks.sort_unstable();
    let witness = ranks.iter().map(|&r| graph.vertex(r).to_vec()).collect();
    SearchResult::Exact { value: ranks.len() as u64, witness }
}

fn window_for(spec: &ProblemSpec) -> (usize, usize) {
    match spec.mode() {
        Mode::AtMost => (1, spec.effective_d()),
        Mode::Exactly => (spec.d(), spec.d()),
    }
}

fn all_vertices(q: u64, n: usize) -> Vec<Vec<Elem>> {
    let count = space_size(q, n).expect("capped earlier");
    (0..count).map(|r| unrank(q, n, r)).collect()
}

fn validate_pairwise(
    witness: &[Vec<Elem>],
    accept: impl Fn(usize) -> bool,
    what: &str,
) -> Result<()> {
    for (i, a) in witness.iter().enumerate() {
        for b in &witness[i + 1..] {
            let dist = hamming_distance(a, b)?;
            if !accept(dist) {
                return Err(Error::Construction(format!(
                    "{} witness contains a pair at distance {}",
                    what, dist
                )));
            }
        }
    }
    Ok(())
}

/// Largest set of vertices pairwise conflicting under the spec. The
/// witness is re-validated before returning.
pub fn max_clique(spec: &ProblemSpec, budget: &SearchBudget) -> Result<SearchResult<Vec<Vec<Elem>>>> {
    let q = spec.q();
    let n = spec.n();
    let count = ensure_search_cap(q, n)?;
    if spec.mode() == Mode::AtMost && spec.d() >= n {
        return Ok(SearchResult::Exact { value: count, witness: all_vertices(q, n) });
    }
    if spec.mode() == Mode::Exactly && spec.d() > n {
        return Ok(SearchResult::Exact { value: 1, witness: vec![vec![0 as Elem; n]] });
    }
    let (lo, hi) = window_for(spec);
    let graph = ConflictGraph::new(q, n, lo, hi)?;
    let result = clique_result(&graph, budget);
    if let SearchResult::Exact { value, witness } = &result {
        let d = spec.d();
        match spec.mode() {
            Mode::AtMost => validate_pairwise(witness, |dist| dist >= 1 && dist <= d, "clique")?,
            Mode::Exactly => validate_pairwise(witness, |dist| dist == d, "clique")?,
        }
        if *value != witness.len() as u64 {
            return Err(Error::Construction("clique witness size mismatch".into()));
        }
    }
    Ok(result)
}

/// Maximum size of a set with pairwise distance at least d, i.e. the best
/// (n, >= d) code, by clique search in the distance-at-least graph.
pub fn max_code_size(
    field: &Field,
    n: usize,
    d: usize,
    budget: &SearchBudget,
) -> Result<SearchResult<Vec<Vec<Elem>>>> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("code search needs n >= 1 and d >= 1"));
    }
    let q = field.q();
    let count = ensure_search_cap(q, n)?;
    if d == 1 {
        return Ok(SearchResult::Exact { value: count, witness: all_vertices(q, n) });
    }
    if d > n {
        return Ok(SearchResult::Exact { value: 1, witness: vec![vec![0 as Elem; n]] });
    }
    let graph = ConflictGraph::new(q, n, d, n)?;
    let result = clique_result(&graph, budget);
    if let SearchResult::Exact { value, witness } = &result {
        validate_pairwise(witness, |dist| dist >= d, "code")?;
        if *value != witness.len() as u64 {
            return Err(Error::Construction("code witness size mismatch".into()));
        }
    }
    Ok(result)
}

enum Decide {
    Found(Vec<u32>),
    Infeasible,
    OutOfBudget,
}

struct ColorSearch<'g> {
    lists: &'g [Vec<u32>],
    k: usize,
    assign: Vec<i32>,
    forbid: Vec<Vec<u32>>,
    counter: Counter,
}

impl<'g> ColorSearch<'g> {
    fn decide(lists: &'g [Vec<u32>], k: usize, budget: &SearchBudget) -> Decide {
        let count = lists.len();
        let mut search = ColorSearch {
            lists,
            k,
            assign: vec![-1; count],
            forbid: vec![vec![0; k]; count],
            counter: Counter::new(budget.max_nodes),
        };
        search.recurse(0)
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.assign.len() {
            if self.assign[v] >= 0 {
                continue;
            }
            let saturation = self.forbid[v].iter().filter(|&&c| c > 0).count();
            if best.is_none_or(|(s, _)| saturation > s) {
                best = Some((saturation, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn recurse(&mut self, used: usize) -> Decide {
        if !self.counter.tick() {
            return Decide::OutOfBudget;
        }
        let v = match self.pick() {
            Some(v) => v,
            None => return Decide::Found(self.assign.iter().map(|&c| c as u32).collect()),
        };
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.forbid[v][c] > 0 {
                continue;
            }
            self.assign[v] = c as i32;
            for &u in &self.lists[v] {
                if self.assign[u as usize] < 0 {
                    self.forbid[u as usize][c] += 1;
                }
            }
            let outcome = self.recurse(used.max(c + 1));
            self.assign[v] = -1;
            for &u in &self.lists[v] {
                if self.assign[u as usize] < 0 {
                    self.forbid[u as usize][c] -= 1;
                }
            }
            match outcome {
                Decide::Infeasible => continue,
                other => return other,
            }
        }
        Decide::Infeasible
    }
}

fn first_fit(lists: &[Vec<u32>]) -> Vec<u32> {
    let mut labels = vec![u32::MAX; lists.len()];
    for v in 0..lists.len() {
        let mut used: Vec<u32> = lists[v]
            .iter()
            .map(|&u| labels[u as usize])
            .filter(|&l| l != u32::MAX)
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut color = 0u32;
        for l in used {
            if l == color {
                color += 1;
            } else if l > color {
                break;
            }
        }
        labels[v] = color;
    }
    labels
}

/// Exact chromatic number by branch and bound: a clique seeds the lower
/// bound, first-fit seeds the upper, then k-colorability is decided for
/// decreasing k. The certifying coloring satisfies the spec by
/// construction and is returned for independent verification.
pub fn chromatic_number(spec: &ProblemSpec, budget: &SearchBudget) -> Result<SearchResult<Coloring>> {
    let q = spec.q();
    let n = spec.n();
    let count = ensure_search_cap(q, n)?;
    if spec.mode() == Mode::Exactly && spec.d() > n {
        let coloring = Coloring::from_labels(spec.clone(), vec![0; count as usize])?;
        return Ok(SearchResult::Exact { value: 1, witness: coloring });
    }
    if spec.mode() == Mode::AtMost && spec.d() >= n {
        let labels: Vec<u32> = (0..count as u32).collect();
        let coloring = Coloring::from_labels(spec.clone(), labels)?;
        return Ok(SearchResult::Exact { value: count, witness: coloring });
    }
    if count > 1 << 12 {
        return Err(Error::SpaceTooLarge { q, n, cap_log2: 12 });
    }

    let (lo, hi) = window_for(spec);
    let graph = ConflictGraph::new(q, n, lo, hi)?;
    let lists = graph.neighbor_lists();

    let clique = CliqueSearch::run(&graph, budget);
    let lower = clique.best.len().max(1) as u64;

    let greedy = first_fit(&lists);
    let mut best = greedy;
    let mut upper = best.iter().max().map_or(0, |&m| m as u64 + 1);

    while upper > lower {
        match ColorSearch::decide(&lists, upper as usize - 1, budget) {
            Decide::Found(assign) => {
                upper = assign.iter().max().map_or(0, |&m| m as u64 + 1);
                best = assign;
            }
            Decide::Infeasible => break,
            Decide::OutOfBudget => {
                return Ok(SearchResult::Exhausted { lower, upper });
            }
        }
    }

    let coloring = Coloring::from_labels(spec.clone(), best)?;
    Ok(SearchResult::Exact { value: upper, witness: coloring })
}

/// Full pairwise distance matrix plus whether every pair satisfies the
/// conflict constraint of the mode; for auditing small witness sets.
pub fn check_witness_distances(
    vertices: &[Vec<Elem>],
    d: usize,
    mode: Mode,
) -> Result<(bool, Vec<Vec<usize>>)> {
    if vertices.len() > 64 {
        return Err(Error::invalid("witness audit is limited to 64 vertices"));
    }
    let count = vertices.len();
    let mut matrix = vec![vec![0usize; count]; count];
    let mut ok = true;
    for i in 0..count {
        for j in i + 1..count {
            let dist = hamming_distance(&vertices[i], &vertices[j])?;
            matrix[i][j] = dist;
            matrix[j][i] = dist;
            ok &= match mode {
                Mode::AtMost => dist >= 1 && dist <= d,
                Mode::Exactly => dist == d,
            };
        }
    }
    Ok((ok, matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming_code, simplex_code};
    use crate::coloring::{verify_coloring, VerifyOutcome};
    use std::sync::Arc;

    fn field(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn spec(q: u64, n: usize, d: usize, mode: Mode) -> ProblemSpec {
        ProblemSpec::new(field(q), n, d, mode).unwrap()
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    /// Exhaustive maximum over all vertex subsets; only for q^n <= 16.
    fn max_clique_by_subsets(spec: &ProblemSpec) -> u64 {
        let q = spec.q();
        let n = spec.n();
        let count = space_size(q, n).unwrap();
        assert!(count <= 16);
        let verts: Vec<Vec<Elem>> = (0..count).map(|r| unrank(q, n, r)).collect();
        let mut best = 0u64;
        for mask in 0u32..1 << count {
            if (mask.count_ones() as u64) <= best {
                continue;
            }
            let members: Vec<usize> =
                (0..count as usize).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = members.iter().enumerate().all(|(idx, &i)| {
                members[idx + 1..].iter().all(|&j| {
                    let dist = hamming_distance(&verts[i], &verts[j]).unwrap();
                    match spec.mode() {
                        Mode::AtMost => dist <= spec.effective_d(),
                        Mode::Exactly => dist == spec.d(),
                    }
                })
            });
            if ok {
                best = members.len() as u64;
            }
        }
        best
    }

    #[test]
    fn clique_matches_subset_oracle_on_tiny_cubes() {
        for (q, n) in [(2u64, 3usize), (2, 4), (3, 2), (4, 2)] {
            for d in 1..=n {
                for mode in [Mode::AtMost, Mode::Exactly] {
                    let s = spec(q, n, d, mode);
                    let expect = max_clique_by_subsets(&s);
                    let got = max_clique(&s, &budget()).unwrap();
                    assert_eq!(got.value(), Some(expect), "q={} n={} d={} {}", q, n, d, mode.as_str());
                }
            }
        }
    }

    #[test]
    fn clique_known_values() {
        let got = max_clique(&spec(2, 3, 1, Mode::AtMost), &budget()).unwrap();
        assert_eq!(got.value(), Some(2));
        let got = max_clique(&spec(3, 2, 2, Mode::AtMost), &budget()).unwrap();
        assert_eq!(got.value(), Some(9));
    }

    #[test]
    fn clique_certifies_the_four_set_in_q5_3() {
        let result = max_clique(&spec(3, 5, 3, Mode::Exactly), &budget()).unwrap();
        let value = result.value().expect("search completes");
        assert!(value >= 4, "got {}", value);
    }

    #[test]
    fn printed_four_sets_audit() {
        let first: Vec<Vec<Elem>> = vec![
            vec![0, 0, 0, 0, 0],
            vec![1, 1, 1, 0, 0],
            vec![2, 2, 2, 0, 0],
            vec![2, 0, 1, 2, 0],
        ];
        let (ok, matrix) = check_witness_distances(&first, 3, Mode::Exactly).unwrap();
        assert!(ok);
        for (i, row) in matrix.iter().enumerate() {
            for (j, &dist) in row.iter().enumerate() {
                assert_eq!(dist, if i == j { 0 } else { 3 });
            }
        }

        let second: Vec<Vec<Elem>> = vec![
            vec![0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 0, 1, 1, 1],
            vec![0, 0, 2, 2, 2, 2, 1],
            vec![0, 1, 1, 1, 2, 1, 0],
        ];
        let (ok5, matrix) = check_witness_distances(&second, 5, Mode::Exactly).unwrap();
        assert!(ok5);
        for (i, row) in matrix.iter().enumerate() {
            for (j, &dist) in row.iter().enumerate() {
                assert_eq!(dist, if i == j { 0 } else { 5 });
            }
        }
        let (ok3, _) = check_witness_distances(&second, 3, Mode::Exactly).unwrap();
        assert!(!ok3);
    }

    #[test]
    fn witness_audit_guards() {
        let (ok, _) = check_witness_distances(&[vec![1, 2]], 3, Mode::Exactly).unwrap();
        assert!(ok);
        assert!(check_witness_distances(&[vec![1], vec![1, 2]], 1, Mode::AtMost).is_err());
        let big: Vec<Vec<Elem>> = (0..65).map(|_| vec![0]).collect();
        assert!(check_witness_distances(&big, 1, Mode::AtMost).is_err());
    }

    fn generate_codewords(code: &crate::codes::LinearCode) -> Vec<Vec<Elem>> {
        let f = code.field();
        let g = code.generator();
        let k = code.k();
        let q = f.q();
        let count = q.pow(k as u32);
        (0..count)
            .map(|index| {
                let mut msg = vec![0 as Elem; k];
                let mut x = index;
                for slot in msg.iter_mut().rev() {
                    *slot = (x % q) as Elem;
                    x /= q;
                }
                let mut word = vec![0 as Elem; code.n()];
                for (i, &m) in msg.iter().enumerate() {
                    for (j, slot) in word.iter_mut().enumerate() {
                        *slot = f.add(*slot, f.mul(m, g.get(i, j)));
                    }
                }
                word
            })
            .collect()
    }

    #[test]
    fn code_sizes_match_the_binary_hamming_family() {
        let f = field(2);
        let a3 = max_code_size(&f, 7, 3, &budget()).unwrap();
        assert_eq!(a3.value(), Some(16));
        let a4 = max_code_size(&f, 7, 4, &budget()).unwrap();
        assert_eq!(a4.value(), Some(8));

        let hamming = hamming_code(f.clone(), 3).unwrap();
        let words = generate_codewords(&hamming);
        assert_eq!(words.len(), 16);
        for (i, a) in words.iter().enumerate() {
            for b in words[i + 1..].iter() {
                assert!(hamming_distance(a, b).unwrap() >= 3);
            }
        }
        let simplex = simplex_code(f.clone(), 3).unwrap();
        let words = generate_codewords(&simplex);
        assert_eq!(words.len(), 8);
        for (i, a) in words.iter().enumerate() {
            for b in words[i + 1..].iter() {
                assert!(hamming_distance(a, b).unwrap() >= 4);
            }
        }
    }

    #[test]
    fn code_size_shortcuts_and_monotonicity() {
        let f = field(2);
        let sizes: Vec<u64> = (1..=4)
            .map(|d| max_code_size(&f, 4, d, &budget()).unwrap().value().unwrap())
            .collect();
        assert_eq!(sizes, vec![16, 8, 2, 2]);
        assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        let past = max_code_size(&f, 4, 5, &budget()).unwrap();
        assert_eq!(past.value(), Some(1));
    }

    #[test]
    fn chromatic_known_values() {
        let whole = chromatic_number(&spec(3, 2, 2, Mode::AtMost), &budget()).unwrap();
        assert_eq!(whole.value(), Some(9));

        let bipartite = chromatic_number(&spec(2, 4, 1, Mode::Exactly), &budget()).unwrap();
        assert_eq!(bipartite.value(), Some(2));

        let d1 = chromatic_number(&spec(3, 3, 1, Mode::Exactly), &budget()).unwrap();
        assert_eq!(d1.value(), Some(3));

        let dn = chromatic_number(&spec(3, 3, 3, Mode::Exactly), &budget()).unwrap();
        assert_eq!(dn.value(), Some(3));
    }

    #[test]
    fn chromatic_certificates_pass_verification() {
        for (q, n, d, mode, expect) in [
            (2u64, 3usize, 1usize, Mode::AtMost, 2u64),
            (2, 3, 2, Mode::AtMost, 4),
            (2, 4, 4, Mode::Exactly, 2),
            (3, 2, 1, Mode::AtMost, 3),
        ] {
            let s = spec(q, n, d, mode);
            let result = chromatic_number(&s, &budget()).unwrap();
            match result {
                SearchResult::Exact { value, witness } => {
                    assert_eq!(value, expect, "q={} n={} d={} {}", q, n, d, mode.as_str());
                    assert_eq!(witness.palette_size() as u64, value);
                    assert_eq!(verify_coloring(&witness).unwrap(), VerifyOutcome::Valid);
                }
                SearchResult::Exhausted { .. } => panic!("budget should suffice"),
            }
        }
    }

    #[test]
    fn chromatic_stays_within_closed_form_bounds() {
        use crate::bounds::{bounds_report, BoundsOptions};
        use num_bigint::BigUint;
        for q in [2u64, 3] {
            for n in 1..=3usize {
                for d in 1..=n {
                    for mode in [Mode::AtMost, Mode::Exactly] {
                        let s = spec(q, n, d, mode);
                        let chi = chromatic_number(&s, &budget()).unwrap().value().unwrap();
                        let report = bounds_report(&s, &BoundsOptions::default()).unwrap();
                        let chi = BigUint::from(chi);
                        if let Some(lo) = report.best_lower() {
                            assert!(lo <= &chi, "q={} n={} d={} {}", q, n, d, mode.as_str());
                        }
                        if let Some(hi) = report.best_upper() {
                            assert!(&chi <= hi, "q={} n={} d={} {}", q, n, d, mode.as_str());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_bound_consistency_on_solved_instances() {
        let f = field(2);
        for d in 1..=2usize {
            let a = max_code_size(&f, 4, d + 1, &budget()).unwrap().value().unwrap();
            let s = spec(2, 4, d, Mode::AtMost);
            let chi = chromatic_number(&s, &budget()).unwrap().value().unwrap();
            assert!(16u64.div_ceil(a) <= chi, "d={} a={} chi={}", d, a, chi);
        }
    }

    #[test]
    fn exhausted_budget_reports_a_bracket() {
        let tiny = SearchBudget { max_nodes: 2 };
        let s = spec(2, 4, 2, Mode::AtMost);
        match max_clique(&s, &tiny).unwrap() {
            SearchResult::Exhausted { lower, upper } => {
                assert!(lower <= upper);
                assert!(upper >= 5);
            }
            SearchResult::Exact { .. } => panic!("two nodes cannot finish"),
        }
    }

    #[test]
    fn searches_are_deterministic() {
        let s = spec(3, 3, 2, Mode::Exactly);
        let a = max_clique(&s, &budget()).unwrap();
        let b = max_clique(&s, &budget()).unwrap();
        assert_eq!(a, b);
        let ca = chromatic_number(&s, &budget()).unwrap();
        let cb = chromatic_number(&s, &budget()).unwrap();
        assert_eq!(ca.value(), cb.value());
    }

    #[test]
    fn space_cap_is_enforced() {
        let s = spec(2, 15, 2, Mode::AtMost);
        assert!(matches!(max_clique(&s, &budget()), Err(Error::SpaceTooLarge { .. })));
    }
}
