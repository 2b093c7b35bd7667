//! Backtracking search for t-semiarcs in small planes.
//!
//! Candidates are decided one at a time, include before exclude. A node is
//! pruned when the size or the required secant can no longer be met, when a
//! chosen point cannot reach t tangents (rule a), or when it already has more
//! than t tangents that no remaining candidate can break (rule b). Every leaf
//! that survives is re-certified with [`is_t_semiarc`].
//!
//! The top of the tree is cut into prefix jobs that run on a rayon pool and
//! are merged in job order, so results do not depend on the worker count.

pub mod scenarios;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{intersection_counts, is_t_semiarc, AnalysisError, PointSet};
use crate::plane::{LineId, Plane, PlaneError, PointId};

/// Largest plane order the engine accepts (q² + q + 1 ≤ 192).
pub const MAX_SEARCH_ORDER: usize = 13;

/// Default ceiling on the estimated tree size.
pub const DEFAULT_NODE_BUDGET: f64 = 1e9;

const PREFIX_DEPTH: usize = 12;
const PROBES: usize = 256;
const WORDS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("estimated {estimate:.3e} nodes exceeds the budget {budget:.3e}")]
    Infeasible { estimate: f64, budget: f64 },
    #[error("inconsistent spec: {0}")]
    Inconsistent(String),
    #[error("search supports q ≤ {MAX_SEARCH_ORDER}, got {0}")]
    TooLarge(usize),
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    FirstWitness,
    #[default]
    Exhaustive,
}

/// A line that must meet the set in exactly `k` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequiredSecant {
    pub line: LineId,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub q: usize,
    pub t: usize,
    pub min_size: usize,
    pub max_size: usize,
    #[serde(default)]
    pub secant: Option<RequiredSecant>,
    /// Only these points may be used.
    #[serde(default)]
    pub within: Option<Vec<PointId>>,
    #[serde(default)]
    pub forbidden: Vec<PointId>,
    #[serde(default)]
    pub mode: SearchMode,
    /// Fix the first points of the secant and the first point off it.
    /// Witnesses are then orbit representatives only.
    #[serde(default)]
    pub symmetry: bool,
    /// Turns off pruning rule (b); used to cross-check nonexistence runs.
    #[serde(default)]
    pub disable_rule_b: bool,
    #[serde(default)]
    pub budget: Option<f64>,
    /// Run even when the estimate exceeds the budget.
    #[serde(default)]
    pub override_budget: bool,
    /// Witnesses kept in the result; the count is always exact.
    #[serde(default)]
    pub max_witnesses: Option<usize>,
}

impl SearchSpec {
    /// Exhaustive search for t-semiarcs of size in `[min_size, max_size]`.
    pub fn new(q: usize, t: usize, min_size: usize, max_size: usize) -> SearchSpec {
        SearchSpec {
            q,
            t,
            min_size,
            max_size,
            secant: None,
            within: None,
            forbidden: Vec::new(),
            mode: SearchMode::Exhaustive,
            symmetry: false,
            disable_rule_b: false,
            budget: None,
            override_budget: false,
            max_witnesses: None,
        }
    }

    pub fn with_secant(mut self, line: LineId, k: usize) -> SearchSpec {
        self.secant = Some(RequiredSecant { line, k });
        self
    }

    pub fn within(mut self, points: Vec<PointId>) -> SearchSpec {
        self.within = Some(points);
        self
    }

    pub fn first_witness(mut self) -> SearchSpec {
        self.mode = SearchMode::FirstWitness;
        self
    }
}

/// Proof data for an exhaustive run: the constraints and the node count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub constraints: SearchSpec,
    pub nodes: u64,
    pub exhausted: bool,
    pub symmetry_reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub witnesses: Vec<PointSet>,
    pub witness_count: u64,
    /// The whole tree was explored.
    pub exhaustive: bool,
    pub nodes: u64,
    pub estimate: f64,
    pub over_budget: bool,
    /// Present for an exhaustive run that found nothing.
    pub certificate: Option<Certificate>,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Copy, Default)]
struct Mask([u64; WORDS]);

impl Mask {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn and(&self, o: &Mask) -> Mask {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0) {
            *a &= b;
        }
        r
    }
    fn for_each(&self, mut f: impl FnMut(usize) -> bool) -> bool {
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                if !f(w * 64 + b) {
                    return false;
                }
                bits &= bits - 1;
            }
        }
        true
    }
}

/// Read-only search problem shared by all jobs.
struct Problem<'a> {
    plane: &'a Plane,
    t: usize,
    min: usize,
    max: usize,
    secant: Option<(usize, usize)>,
    rule_b: bool,
    order: Vec<usize>,
    forced: Vec<bool>,
    line_pts: Vec<Mask>,
    pencil: Vec<Vec<usize>>,
    initial_pot: Vec<u8>,
}

#[derive(Clone)]
struct State {
    chosen: Mask,
    count: Vec<u8>,
    pot: Vec<u8>,
    size: usize,
}

impl<'a> Problem<'a> {
    fn new(plane: &'a Plane, spec: &SearchSpec) -> Result<Problem<'a>, SearchError> {
        let q = plane.order();
        if q > MAX_SEARCH_ORDER {
            return Err(SearchError::TooLarge(q));
        }
        if q != spec.q {
            return Err(SearchError::Inconsistent(format!("plane order {q}, spec q = {}", spec.q)));
        }
        let n = plane.num_points();
        if spec.min_size > spec.max_size {
            return Err(SearchError::Inconsistent("min_size > max_size".into()));
        }
        let mut allowed = vec![spec.within.is_none(); n];
        if let Some(w) = &spec.within {
            for p in w {
                *allowed.get_mut(p.index()).ok_or(AnalysisError::OutOfRange(p.0))? = true;
            }
        }
        for p in &spec.forbidden {
            *allowed.get_mut(p.index()).ok_or(AnalysisError::OutOfRange(p.0))? = false;
        }
        let secant = spec.secant.map(|s| (s.line.index(), s.k));
        if let Some((l, k)) = secant {
            if l >= plane.num_lines() {
                return Err(SearchError::Inconsistent(format!("line {l} out of range")));
            }
            let avail = plane.points_on(LineId(l as u32)).iter().filter(|p| allowed[p.index()]).count();
            if avail < k {
                return Err(SearchError::Inconsistent(format!("required {k}-secant has only {avail} admissible points")));
            }
        }
        let on_secant = |p: usize| secant.is_some_and(|(l, _)| plane.incident(PointId(p as u32), LineId(l as u32)));
        let mut order: Vec<usize> = (0..n).filter(|&p| allowed[p]).collect();
        order.sort_by_key(|&p| (!on_secant(p), p));
        let mut forced = vec![false; order.len()];
        if spec.symmetry {
            let Some((_, k)) = secant else {
                return Err(SearchError::Inconsistent("symmetry reduction needs a required secant".into()));
            };
            if spec.within.is_some() || !spec.forbidden.is_empty() {
                return Err(SearchError::Inconsistent("symmetry reduction needs the full point set as candidates".into()));
            }
            // the stabilizer of the secant is transitive on its points, then on
            // the affine points, then on the remaining points of the secant
            for slot in forced.iter_mut().take(k.min(2)) {
                *slot = true;
            }
            if spec.min_size > k {
                if let Some(i) = order.iter().position(|&p| !on_secant(p)) {
                    forced[i] = true;
                }
            }
        }
        let mut line_pts = vec![Mask::default(); plane.num_lines()];
        let mut initial_pot = vec![0u8; plane.num_lines()];
        for l in plane.lines() {
            for &p in plane.points_on(l) {
                line_pts[l.index()].set(p.index());
                if allowed[p.index()] {
                    initial_pot[l.index()] += 1;
                }
            }
        }
        let pencil = plane.points().map(|p| plane.pencil(p).iter().map(|l| l.index()).collect()).collect();
        Ok(Problem {
            plane,
            t: spec.t,
            min: spec.min_size,
            max: spec.max_size,
            secant,
            rule_b: !spec.disable_rule_b,
            order,
            forced,
            line_pts,
            pencil,
            initial_pot,
        })
    }

    fn root(&self) -> State {
        State { chosen: Mask::default(), count: vec![0; self.line_pts.len()], pot: self.initial_pot.clone(), size: 0 }
    }

    fn apply(&self, s: &mut State, depth: usize, include: bool) {
        let c = self.order[depth];
        if include {
            s.size += 1;
            s.chosen.set(c);
        }
        for &l in &self.pencil[c] {
            s.pot[l] -= 1;
            if include {
                s.count[l] += 1;
            }
        }
    }

    fn undo(&self, s: &mut State, depth: usize, include: bool) {
        let c = self.order[depth];
        if include {
            s.size -= 1;
            s.chosen.clear(c);
        }
        for &l in &self.pencil[c] {
            s.pot[l] += 1;
            if include {
                s.count[l] -= 1;
            }
        }
    }

    fn point_ok(&self, s: &State, p: usize) -> bool {
        let (mut fixed, mut open) = (0, 0);
        for &l in &self.pencil[p] {
            if s.count[l] == 1 {
                if s.pot[l] == 0 {
                    fixed += 1;
                } else {
                    open += 1;
                }
            }
        }
        fixed + open >= self.t && !(self.rule_b && fixed > self.t)
    }

    /// Feasibility after deciding candidate `depth`.
    fn feasible(&self, s: &State, depth: usize, included: bool) -> bool {
        let remaining = self.order.len() - depth - 1;
        if s.size > self.max || s.size + remaining < self.min {
            return false;
        }
        if let Some((l, k)) = self.secant {
            let c = s.count[l] as usize;
            if c > k || c + (s.pot[l] as usize) < k {
                return false;
            }
        }
        let c = self.order[depth];
        for &l in &self.pencil[c] {
            let mut on = self.line_pts[l].and(&s.chosen);
            on.clear(c);
            if !on.for_each(|p| self.point_ok(s, p)) {
                return false;
            }
        }
        !included || self.point_ok(s, c)
    }

    fn choices(&self, depth: usize) -> &'static [bool] {
        if self.forced[depth] {
            &[true]
        } else {
            &[true, false]
        }
    }

    fn leaf(&self, s: &State) -> Option<PointSet> {
        let mut pts = Vec::with_capacity(s.size);
        s.chosen.for_each(|p| {
            pts.push(PointId(p as u32));
            true
        });
        if pts.len() < self.min.max(1) || pts.len() > self.max {
            return None;
        }
        let set = PointSet::new(self.plane, pts, "search witness").ok()?;
        if is_t_semiarc(self.plane, &set) != Some(self.t) {
            return None;
        }
        if let Some((l, k)) = self.secant {
            if intersection_counts(self.plane, set.points())[l] != k {
                return None;
            }
        }
        Some(set)
    }
}

struct JobOutcome {
    witnesses: Vec<PointSet>,
    count: u64,
    nodes: u64,
    complete: bool,
}

struct Job<'p, 'a> {
    problem: &'p Problem<'a>,
    first_only: bool,
    keep: usize,
    cancel: &'p AtomicUsize,
    index: usize,
    out: JobOutcome,
}

impl Job<'_, '_> {
    fn dfs(&mut self, s: &mut State, depth: usize) -> bool {
        if depth == self.problem.order.len() {
            if let Some(w) = self.problem.leaf(s) {
                self.out.count += 1;
                if self.out.witnesses.len() < self.keep {
                    self.out.witnesses.push(w);
                }
                if self.first_only {
                    self.cancel.fetch_min(self.index, Ordering::Relaxed);
                    return false;
                }
            }
            return true;
        }
        if self.first_only && self.out.nodes % 4096 == 0 && self.cancel.load(Ordering::Relaxed) < self.index {
            self.out.complete = false;
            return false;
        }
        for &inc in self.problem.choices(depth) {
            self.problem.apply(s, depth, inc);
            self.out.nodes += 1;
            let go_on = !self.problem.feasible(s, depth, inc) || self.dfs(s, depth + 1);
            self.problem.undo(s, depth, inc);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Decision prefixes of length `depth`, in depth-first order, with the node
/// count spent generating them.
fn prefixes(problem: &Problem, depth: usize) -> (Vec<Vec<bool>>, u64) {
    fn go(problem: &Problem, s: &mut State, d: usize, depth: usize, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>, nodes: &mut u64) {
        if d == depth {
            out.push(path.clone());
            return;
        }
        for &inc in problem.choices(d) {
            problem.apply(s, d, inc);
            *nodes += 1;
            if problem.feasible(s, d, inc) {
                path.push(inc);
                go(problem, s, d + 1, depth, path, out, nodes);
                path.pop();
            }
            problem.undo(s, d, inc);
        }
    }
    let mut out = Vec::new();
    let mut nodes = 0;
    let mut s = problem.root();
    go(problem, &mut s, 0, depth, &mut Vec::new(), &mut out, &mut nodes);
    (out, nodes)
}

/// Knuth's random-probe estimate of the pruned tree size.
fn estimate(problem: &Problem) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut total = 0.0;
    for _ in 0..PROBES {
        let mut s = problem.root();
        let mut weight = 1.0;
        for d in 0..problem.order.len() {
            let mut ok = Vec::with_capacity(2);
            for &inc in problem.choices(d) {
                problem.apply(&mut s, d, inc);
                if problem.feasible(&s, d, inc) {
                    ok.push(inc);
                }
                problem.undo(&mut s, d, inc);
            }
            if ok.is_empty() {
                break;
            }
            weight *= ok.len() as f64;
            total += weight;
            let inc = ok[rng.gen_range(0..ok.len())];
            problem.apply(&mut s, d, inc);
        }
    }
    total / PROBES as f64
}

/// Estimated node count for `spec` without running it.
pub fn estimate_nodes(plane: &Plane, spec: &SearchSpec) -> Result<f64, SearchError> {
    Ok(estimate(&Problem::new(plane, spec)?))
}

/// Runs `spec` on a pool of `workers` threads.
pub fn search_semiarcs(plane: &Plane, spec: &SearchSpec, workers: usize) -> Result<SearchResult, SearchError> {
    let start = Instant::now();
    let problem = Problem::new(plane, spec)?;
    let est = estimate(&problem);
    let budget = spec.budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let over_budget = est > budget;
    if over_budget && !spec.override_budget {
        return Err(SearchError::Infeasible { estimate: est, budget });
    }
    let depth = PREFIX_DEPTH.min(problem.order.len());
    let (jobs, prefix_nodes) = prefixes(&problem, depth);
    let first_only = spec.mode == SearchMode::FirstWitness;
    let keep = spec.max_witnesses.unwrap_or(usize::MAX);
    let cancel = AtomicUsize::new(usize::MAX);
    let run = |index: usize| {
        let mut s = problem.root();
        for (d, &inc) in jobs[index].iter().enumerate() {
            problem.apply(&mut s, d, inc);
        }
        let mut job = Job {
            problem: &problem,
            first_only,
            keep,
            cancel: &cancel,
            index,
            out: JobOutcome { witnesses: Vec::new(), count: 0, nodes: 0, complete: true },
        };
        if cancel.load(Ordering::Relaxed) < index {
            job.out.complete = false;
        } else {
            job.dfs(&mut s, depth);
        }
        job.out
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SearchError::Other(e.to_string()))?;
    let outcomes: Vec<JobOutcome> = pool.install(|| (0..jobs.len()).into_par_iter().map(run).collect());

    let mut witnesses = Vec::new();
    let mut count = 0u64;
    let mut nodes = prefix_nodes;
    let winner = cancel.load(Ordering::Relaxed);
    for (i, o) in outcomes.into_iter().enumerate() {
        if first_only && i > winner {
            break;
        }
        nodes += o.nodes;
        count += o.count;
        for w in o.witnesses {
            if witnesses.len() < keep {
                witnesses.push(w);
            }
        }
    }
    if !first_only {
        witnesses.sort_by(|a: &PointSet, b: &PointSet| a.points().cmp(b.points()));
    }
    let exhaustive = !first_only || count == 0;
    let certificate = (exhaustive && count == 0).then(|| Certificate {
        constraints: spec.clone(),
        nodes,
        exhausted: true,
        symmetry_reduced: spec.symmetry,
    });
    Ok(SearchResult {
        witnesses,
        witness_count: count,
        exhaustive,
        nodes,
        estimate: est,
        over_budget,
        certificate,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::tests::pg;
    use crate::constructions::projective_triangle_semioval;

    #[test]
    fn spec_json_is_strict() {
        let ok: SearchSpec = serde_json::from_str(r#"{"q":5,"t":1,"min_size":5,"max_size":6}"#).unwrap();
        assert_eq!(ok.mode, SearchMode::Exhaustive);
        assert!(serde_json::from_str::<SearchSpec>(r#"{"q":5,"t":1,"min_size":5,"max_size":6,"extra":0}"#).is_err());
        assert!(serde_json::from_str::<SearchSpec>(r#"{"q":5,"t":1}"#).is_err());
    }

    /// All subsets of the candidate list, filtered by the same predicate.
    fn brute(plane: &Plane, spec: &SearchSpec) -> Vec<Vec<PointId>> {
        let cands: Vec<PointId> = spec.within.clone().unwrap_or_else(|| plane.points().collect());
        let mut out = Vec::new();
        for mask in 0u64..(1 << cands.len()) {
            let pts: Vec<PointId> = (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
            if pts.len() < spec.min_size.max(1) || pts.len() > spec.max_size {
                continue;
            }
            let set = PointSet::new(plane, pts, "").unwrap();
            if is_t_semiarc(plane, &set) != Some(spec.t) {
                continue;
            }
            if let Some(s) = spec.secant {
                if intersection_counts(plane, set.points())[s.line.index()] != s.k {
                    continue;
                }
            }
            out.push(set.points().to_vec());
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_on_two_lines() {
        let plane = pg(4);
        let mut within: Vec<PointId> = plane.points_on(LineId(0)).to_vec();
        within.extend(plane.points_on(LineId(1)));
        within.sort();
        within.dedup();
        for t in 1..=4 {
            let spec = SearchSpec::new(4, t, 1, 9).within(within.clone());
            let got: Vec<Vec<PointId>> =
                search_semiarcs(&plane, &spec, 2).unwrap().witnesses.iter().map(|w| w.points().to_vec()).collect();
            assert_eq!(got, brute(&plane, &spec), "t = {t}");
        }
    }

    #[test]
    fn matches_brute_force_in_fano() {
        let plane = pg(2);
        for t in 0..=3 {
            let spec = SearchSpec::new(2, t, 1, 7);
            let res = search_semiarcs(&plane, &spec, 1).unwrap();
            let got: Vec<Vec<PointId>> = res.witnesses.iter().map(|w| w.points().to_vec()).collect();
            assert_eq!(got, brute(&plane, &spec), "t = {t}");
            assert_eq!(res.witness_count as usize, got.len());
        }
    }

    #[test]
    fn matches_brute_force_with_secant() {
        let plane = pg(3);
        let mut within: Vec<PointId> = plane.points().take(13).collect();
        within.retain(|p| p.0 % 5 != 2);
        for (t, k) in [(1, 2), (2, 2), (1, 3), (2, 1)] {
            let spec = SearchSpec::new(3, t, 1, 13).within(within.clone()).with_secant(LineId(0), k);
            let got: Vec<Vec<PointId>> =
                search_semiarcs(&plane, &spec, 3).unwrap().witnesses.iter().map(|w| w.points().to_vec()).collect();
            assert_eq!(got, brute(&plane, &spec), "t = {t}, k = {k}");
        }
    }

    #[test]
    fn finds_the_projective_triangle() {
        let plane = pg(5);
        let tri = projective_triangle_semioval(&plane).unwrap();
        let spec = SearchSpec::new(5, 1, 6, 6).with_secant(plane.line_abc(0, 0, 1).unwrap(), 2);
        let res = search_semiarcs(&plane, &spec, 4).unwrap();
        assert!(res.witnesses.iter().any(|w| w.points() == tri.set.points()));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let plane = pg(5);
        let spec = SearchSpec::new(5, 1, 8, 8).with_secant(LineId(0), 4);
        let base = search_semiarcs(&plane, &spec, 1).unwrap();
        for w in [2, 8] {
            let other = search_semiarcs(&plane, &spec, w).unwrap();
            assert_eq!(other.witnesses, base.witnesses);
            assert_eq!(other.nodes, base.nodes);
        }
        let first = spec.clone().first_witness();
        let a = search_semiarcs(&plane, &first, 1).unwrap();
        let b = search_semiarcs(&plane, &first, 8).unwrap();
        assert_eq!((a.witnesses.clone(), a.nodes), (b.witnesses, b.nodes));
        assert_eq!(a.witnesses[0], base.witnesses[0]);
    }

    #[test]
    fn rule_b_off_agrees() {
        let plane = pg(4);
        let spec = SearchSpec::new(4, 1, 6, 7).with_secant(LineId(0), 3);
        let mut loose = spec.clone();
        loose.disable_rule_b = true;
        let a = search_semiarcs(&plane, &spec, 2).unwrap();
        let b = search_semiarcs(&plane, &loose, 2).unwrap();
        assert_eq!(a.witnesses, b.witnesses);
        assert!(b.nodes >= a.nodes);
    }

    #[test]
    fn symmetry_keeps_existence() {
        let plane = pg(5);
        let spec = SearchSpec::new(5, 1, 8, 8).with_secant(LineId(0), 4);
        let full = search_semiarcs(&plane, &spec, 2).unwrap();
        let mut sym = spec.clone();
        sym.symmetry = true;
        let reduced = search_semiarcs(&plane, &sym, 2).unwrap();
        assert!(full.witness_count > reduced.witness_count && reduced.witness_count > 0);
        for w in &reduced.witnesses {
            assert!(full.witnesses.contains(w));
        }
    }

    #[test]
    fn gate_and_errors() {
        let plane = pg(7);
        let mut spec = SearchSpec::new(7, 2, 1, 57);
        spec.budget = Some(1e3);
        assert!(matches!(search_semiarcs(&plane, &spec, 1), Err(SearchError::Infeasible { .. })));
        let bad = SearchSpec::new(7, 1, 5, 4);
        assert!(matches!(search_semiarcs(&plane, &bad, 1), Err(SearchError::Inconsistent(_))));
        let small = SearchSpec::new(7, 1, 1, 9).within(vec![PointId(0), PointId(1)]).with_secant(LineId(5), 3);
        assert!(matches!(search_semiarcs(&plane, &small, 1), Err(SearchError::Inconsistent(_))));
        assert!(matches!(search_semiarcs(&pg(16), &SearchSpec::new(16, 1, 1, 2), 1), Err(SearchError::TooLarge(16))));
    }

    #[test]
    fn certificate_on_nonexistence() {
        let plane = pg(4);
        // a 1-semiarc has no 5-secant: a full line forces q tangents
        let spec = SearchSpec::new(4, 1, 1, 21).with_secant(LineId(0), 5);
        let res = search_semiarcs(&plane, &spec, 2).unwrap();
        assert_eq!(res.witness_count, 0);
        let cert = res.certificate.unwrap();
        assert!(cert.exhausted && cert.nodes == res.nodes);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = SearchSpec::new(5, 1, 9, 12).with_secant(LineId(0), 5);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<SearchSpec>(&json).unwrap(), spec);
        let minimal: SearchSpec = serde_json::from_str(r#"{"q":5,"t":1,"min_size":6,"max_size":6}"#).unwrap();
        assert_eq!(minimal.mode, SearchMode::Exhaustive);
    }
}
