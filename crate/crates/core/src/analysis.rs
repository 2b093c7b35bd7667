//! Incidence statistics of point sets.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{LineId, Plane, PointId};

/// Largest cover size [`pencil_cover`] will search for.
pub const MAX_COVER: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("point set is empty")]
    Empty,
    #[error("point index {0} out of range")]
    OutOfRange(u32),
    #[error("point {0} listed twice")]
    Duplicate(u32),
    #[error("line {0} does not meet the point set")]
    LineMissesSet(u32),
    #[error("cover size {0} exceeds the exact-search limit {MAX_COVER}")]
    CoverTooLarge(usize),
}

/// A sorted, duplicate-free set of points with a provenance label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<PointId>,
    provenance: String,
}

impl PointSet {
    /// Validates indices against `plane` and rejects duplicates.
    pub fn new(plane: &Plane, mut points: Vec<PointId>, provenance: impl Into<String>) -> Result<PointSet, AnalysisError> {
        points.sort();
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(AnalysisError::Duplicate(w[0].0));
            }
        }
        if let Some(p) = points.iter().find(|p| p.index() >= plane.num_points()) {
            return Err(AnalysisError::OutOfRange(p.0));
        }
        Ok(PointSet { points, provenance: provenance.into() })
    }

    /// Builds from any collection, removing duplicates.
    pub fn from_iter_dedup(plane: &Plane, points: impl IntoIterator<Item = PointId>, provenance: impl Into<String>) -> Result<PointSet, AnalysisError> {
        let mut v: Vec<PointId> = points.into_iter().collect();
        v.sort();
        v.dedup();
        PointSet::new(plane, v, provenance)
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> PointSet {
        self.provenance = provenance.into();
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn bits(&self, plane: &Plane) -> FixedBitSet {
        plane.point_bits_of(&self.points)
    }
}

/// `|ℓ ∩ S|` for every line, indexed by line.
pub fn intersection_counts(plane: &Plane, points: &[PointId]) -> Vec<usize> {
    let mut counts = vec![0usize; plane.num_lines()];
    for &p in points {
        for &l in plane.pencil(p) {
            counts[l.index()] += 1;
        }
    }
    counts
}

/// Number of tangents to S at each point of S.
pub fn tangency_profile(plane: &Plane, set: &PointSet) -> Result<BTreeMap<PointId, usize>, AnalysisError> {
    if set.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let counts = intersection_counts(plane, set.points());
    Ok(set
        .points()
        .iter()
        .map(|&p| (p, plane.pencil(p).iter().filter(|l| counts[l.index()] == 1).count()))
        .collect())
}

/// The common tangent count, if every point of S has the same one.
pub fn is_t_semiarc(plane: &Plane, set: &PointSet) -> Option<usize> {
    if set.is_empty() {
        return None;
    }
    semiarc_parameter(plane, set.points(), &intersection_counts(plane, set.points()))
}

/// Same as [`is_t_semiarc`] with precomputed intersection counts.
pub fn semiarc_parameter(plane: &Plane, points: &[PointId], counts: &[usize]) -> Option<usize> {
    let mut t = None;
    for &p in points {
        let c = plane.pencil(p).iter().filter(|l| counts[l.index()] == 1).count();
        match t {
            None => t = Some(c),
            Some(prev) if prev != c => return None,
            _ => {}
        }
    }
    t
}

/// Histogram of `|ℓ ∩ S|` over all lines, skew lines included.
pub fn secant_spectrum(plane: &Plane, set: &PointSet) -> BTreeMap<usize, usize> {
    let mut spec = BTreeMap::new();
    for c in intersection_counts(plane, set.points()) {
        *spec.entry(c).or_insert(0) += 1;
    }
    spec
}

/// Points of ℓ∖S lying on at most `n` lines skew to S.
pub fn a_n_set(plane: &Plane, set: &PointSet, line: LineId, n: usize) -> Vec<PointId> {
    let counts = intersection_counts(plane, set.points());
    a_n_with_counts(plane, set, &counts, line, n)
}

fn a_n_with_counts(plane: &Plane, set: &PointSet, counts: &[usize], line: LineId, n: usize) -> Vec<PointId> {
    plane
        .points_on(line)
        .iter()
        .copied()
        .filter(|&p| !set.contains(p))
        .filter(|&p| plane.pencil(p).iter().filter(|l| counts[l.index()] == 0).count() <= n)
        .collect()
}

/// Tangent lines to S at the points of ℓ ∩ S, other than ℓ itself.
pub fn tangent_lines_at_secant(plane: &Plane, set: &PointSet, line: LineId) -> Result<Vec<LineId>, AnalysisError> {
    let counts = intersection_counts(plane, set.points());
    let on: Vec<PointId> = plane.points_on(line).iter().copied().filter(|&p| set.contains(p)).collect();
    if on.is_empty() {
        return Err(AnalysisError::LineMissesSet(line.0));
    }
    let mut out: Vec<LineId> = on
        .iter()
        .flat_map(|&p| plane.pencil(p).iter().copied())
        .filter(|&l| l != line && counts[l.index()] == 1)
        .collect();
    out.sort();
    Ok(out)
}

/// Lines skew to S through any of `pts`.
pub fn skew_lines_through(plane: &Plane, set: &PointSet, pts: &[PointId]) -> Vec<LineId> {
    let counts = intersection_counts(plane, set.points());
    let mut out: Vec<LineId> = pts
        .iter()
        .flat_map(|&p| plane.pencil(p).iter().copied())
        .filter(|l| counts[l.index()] == 0)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `|S| − (k + q − t)` for the k-secant ℓ.
pub fn epsilon(plane: &Plane, set: &PointSet, line: LineId, t: usize) -> i64 {
    let k = plane.points_on(line).iter().filter(|&&p| set.contains(p)).count();
    set.len() as i64 - (k + plane.order()) as i64 + t as i64
}

/// Minimum set of carriers (at most `m`) whose pencils contain every line of
/// `lines`, none on `forbidden`; the lexicographically least such sorted list.
pub fn pencil_cover(plane: &Plane, lines: &[LineId], m: usize, forbidden: Option<LineId>) -> Result<Option<Vec<PointId>>, AnalysisError> {
    if m > MAX_COVER {
        return Err(AnalysisError::CoverTooLarge(m));
    }
    let mut lines = lines.to_vec();
    lines.sort();
    lines.dedup();
    if lines.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let admissible = |p: PointId| forbidden.map_or(true, |f| !plane.incident(p, f));

    // Candidates: points on two or more lines of L, plus the least admissible
    // point of every line. Any other carrier can be swapped for one of these
    // without enlarging the cover or raising its sorted index sequence.
    let mut hits = vec![0u32; plane.num_points()];
    for &l in &lines {
        for &p in plane.points_on(l) {
            hits[p.index()] += 1;
        }
    }
    let mut candidates: Vec<PointId> = Vec::new();
    for &l in &lines {
        match plane.points_on(l).iter().copied().find(|&p| admissible(p)) {
            Some(p) => candidates.push(p),
            None => return Ok(None),
        }
    }
    candidates.extend(plane.points().filter(|p| hits[p.index()] >= 2 && admissible(*p)));
    candidates.sort();
    candidates.dedup();

    let cover = CoverProblem::new(plane, &lines, candidates);
    for size in 1..=m {
        if let Some(found) = cover.least_cover(size) {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

struct CoverProblem {
    candidates: Vec<PointId>,
    /// Which lines of L each candidate covers.
    masks: Vec<FixedBitSet>,
    /// Candidate positions on each line of L, ascending.
    on_line: Vec<Vec<usize>>,
    n_lines: usize,
    max_cover: usize,
}

impl CoverProblem {
    fn new(plane: &Plane, lines: &[LineId], candidates: Vec<PointId>) -> CoverProblem {
        let n_lines = lines.len();
        let mut masks = Vec::with_capacity(candidates.len());
        let mut on_line = vec![Vec::new(); n_lines];
        for (ci, &c) in candidates.iter().enumerate() {
            let mut mask = FixedBitSet::with_capacity(n_lines);
            for (li, &l) in lines.iter().enumerate() {
                if plane.incident(c, l) {
                    mask.insert(li);
                    on_line[li].push(ci);
                }
            }
            masks.push(mask);
        }
        let max_cover = masks.iter().map(|m| m.count_ones(..)).max().unwrap_or(0);
        CoverProblem { candidates, masks, on_line, n_lines, max_cover }
    }

    fn least_cover(&self, size: usize) -> Option<Vec<PointId>> {
        let mut covered = FixedBitSet::with_capacity(self.n_lines);
        if !self.exists(&covered, 0, size) {
            return None;
        }
        let mut chosen = Vec::with_capacity(size);
        let mut next = 0;
        for remaining in (1..=size).rev() {
            let pick = (next..self.candidates.len())
                .find(|&ci| {
                    let mut c = covered.clone();
                    c.union_with(&self.masks[ci]);
                    self.exists(&c, ci + 1, remaining - 1)
                })
                .expect("a cover exists");
            covered.union_with(&self.masks[pick]);
            chosen.push(self.candidates[pick]);
            next = pick + 1;
        }
        Some(chosen)
    }

    /// Whether `remaining` candidates with position ≥ `min` complete the cover.
    fn exists(&self, covered: &FixedBitSet, min: usize, remaining: usize) -> bool {
        let uncovered = self.n_lines - covered.count_ones(..);
        if uncovered == 0 {
            return true;
        }
        if remaining == 0 || uncovered > remaining * self.max_cover {
            return false;
        }
        let first = (0..self.n_lines).find(|&i| !covered.contains(i)).expect("uncovered line");
        for &ci in &self.on_line[first] {
            if ci < min {
                continue;
            }
            let mut c = covered.clone();
            c.union_with(&self.masks[ci]);
            if self.exists(&c, min, remaining - 1) {
                return true;
            }
        }
        false
    }
}

/// Shape of a family of lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LineFamilyShape {
    Empty,
    Pencil { carrier: PointId },
    TwoPencils { carriers: [PointId; 2] },
    /// No point lies on three of the lines.
    DualArc,
    Other,
}

/// Classifies a line family; pencil shapes take precedence over the dual-arc test.
pub fn line_family_shape(plane: &Plane, lines: &[LineId]) -> LineFamilyShape {
    let mut lines = lines.to_vec();
    lines.sort();
    lines.dedup();
    if lines.is_empty() {
        return LineFamilyShape::Empty;
    }
    match pencil_cover(plane, &lines, 2, None).expect("size within limit") {
        Some(c) if c.len() == 1 => return LineFamilyShape::Pencil { carrier: c[0] },
        Some(c) => return LineFamilyShape::TwoPencils { carriers: [c[0], c[1]] },
        None => {}
    }
    let mut hits = vec![0u32; plane.num_points()];
    for &l in &lines {
        for &p in plane.points_on(l) {
            hits[p.index()] += 1;
        }
    }
    if hits.iter().all(|&h| h <= 2) {
        LineFamilyShape::DualArc
    } else {
        LineFamilyShape::Other
    }
}

/// Outcome of the two-long-secant inequality on one pair of lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSecantCheck {
    pub n: usize,
    pub m: usize,
    pub holds: bool,
}

/// For a t-semiarc (t > 1) and lines whose meet is outside S, checks
/// `n = m = t` or `q(t−1) ≤ min(n,m)(t−1) + 2nm`, where n and m count the
/// points of each line outside S and off the other line. `None` when the meet
/// lies in S or the lines coincide.
pub fn two_secant_check(plane: &Plane, set: &PointSet, t: usize, l1: LineId, l2: LineId) -> Option<TwoSecantCheck> {
    if t < 2 {
        return None;
    }
    let meet = plane.meet(l1, l2).ok()?;
    if set.contains(meet) {
        return None;
    }
    let outside = |a: LineId, b: LineId| plane.points_on(a).iter().filter(|&&p| !set.contains(p) && !plane.incident(p, b)).count();
    let n = outside(l1, l2);
    let m = outside(l2, l1);
    let q = plane.order();
    let holds = (n == t && m == t) || q * (t - 1) <= n.min(m) * (t - 1) + 2 * n * m;
    Some(TwoSecantCheck { n, m, holds })
}

/// Requested per-line statistics for [`analyze`].
#[derive(Clone, Debug, Default)]
pub struct AnalysisRequest {
    pub line: Option<LineId>,
    pub t: Option<usize>,
    pub a_n: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentEntry {
    pub point: PointId,
    pub tangents: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineReport {
    pub line: LineId,
    pub k: usize,
    pub t: Option<usize>,
    pub epsilon: Option<i64>,
    pub a_n: BTreeMap<usize, Vec<PointId>>,
    pub tangent_lines: Vec<LineId>,
    pub tangent_shape: LineFamilyShape,
}

/// Everything [`analyze`] computes about one set. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub size: usize,
    pub semiarc_t: Option<usize>,
    pub tangency: Vec<TangentEntry>,
    pub secant_spectrum: BTreeMap<usize, usize>,
    pub line: Option<LineReport>,
}

pub fn analyze(plane: &Plane, set: &PointSet, req: &AnalysisRequest) -> Result<AnalysisReport, AnalysisError> {
    let profile = tangency_profile(plane, set)?;
    let counts = intersection_counts(plane, set.points());
    let semiarc_t = semiarc_parameter(plane, set.points(), &counts);
    let mut spectrum = BTreeMap::new();
    for &c in &counts {
        *spectrum.entry(c).or_insert(0) += 1;
    }
    let line = match req.line {
        None => None,
        Some(l) => {
            let k = counts[l.index()];
            let t = req.t.or(semiarc_t);
            let mut a_n = BTreeMap::new();
            for &n in &req.a_n {
                a_n.insert(n, a_n_with_counts(plane, set, &counts, l, n));
            }
            let tangent_lines = if k > 0 { tangent_lines_at_secant(plane, set, l)? } else { Vec::new() };
            let tangent_shape = line_family_shape(plane, &tangent_lines);
            Some(LineReport { line: l, k, t, epsilon: t.map(|t| epsilon(plane, set, l, t)), a_n, tangent_lines, tangent_shape })
        }
    };
    Ok(AnalysisReport {
        size: set.len(),
        semiarc_t,
        tangency: profile.into_iter().map(|(point, tangents)| TangentEntry { point, tangents }).collect(),
        secant_spectrum: spectrum,
        line,
    })
}
