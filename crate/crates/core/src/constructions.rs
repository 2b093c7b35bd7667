//! Catalog of semiarc constructions.
//!
//! Every builder certifies its output with [`is_t_semiarc`] and checks the
//! long secants before returning, so a [`Construction`] is never assumed.
//! Free choices (deleted points, the removed points off the secant) are made
//! through [`Pick`]: lexicographically least by default, seeded, or given.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{intersection_counts, is_t_semiarc, AnalysisError, PointSet};
use crate::blocking::{is_blocking_set, isqrt, redei_lines};
use crate::directions::{trichotomy_class, DirectionsError};
use crate::field::{Field, FieldElement};
use crate::plane::{LineId, Plane, PlaneError, PointId, Projectivity};

/// Node budget for the subset searches behind [`Pick::Least`] and [`Pick::Seeded`].
pub const PICK_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("order {0} must be odd")]
    OddOrderRequired(usize),
    #[error("order {0} must be even")]
    EvenOrderRequired(usize),
    #[error("order {0} is not a square")]
    NotSquare(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("expected {expected} points, got {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("line {line} meets the chosen points in {meets}")]
    LineCondition { line: u32, meets: usize },
    #[error("invalid choice: {0}")]
    BadChoice(String),
    #[error("no valid choice: {0}")]
    NoValidChoice(String),
    #[error("not a small blocking set: {0}")]
    NotSmallBlocking(String),
    #[error("line {0} is not a Rédei line of the blocking set")]
    NotRedeiLine(u32),
    #[error("z = {0}, need z ≥ 3")]
    ZTooSmall(usize),
    #[error("not a direct sum of proper subgroups: {0}")]
    NotDirectSum(String),
    #[error("missing input point set for {0}")]
    MissingInput(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Directions(#[from] DirectionsError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

/// How a free choice of points is made.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pick {
    /// Lexicographically least valid choice.
    #[default]
    Least,
    /// Least valid choice after shuffling the candidates with this seed.
    Seeded(u64),
    /// Exactly these points.
    Given(Vec<PointId>),
}

/// A certified semiarc together with its designated long secants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub set: PointSet,
    pub t: usize,
    pub k: usize,
    pub secants: Vec<LineId>,
}

fn certify(
    plane: &Plane,
    points: Vec<PointId>,
    provenance: String,
    t: usize,
    k: usize,
    secants: Vec<LineId>,
    size: usize,
) -> Result<Construction> {
    let set = PointSet::new(plane, points, provenance)?;
    if set.len() != size {
        return Err(ConstructionError::Certification(format!("size {} instead of {size}", set.len())));
    }
    match is_t_semiarc(plane, &set) {
        Some(found) if found == t => {}
        Some(found) => return Err(ConstructionError::Certification(format!("{found}-semiarc instead of {t}-semiarc"))),
        None => return Err(ConstructionError::Certification("tangent counts are not uniform".into())),
    }
    let counts = intersection_counts(plane, set.points());
    if let Some(l) = secants.iter().find(|l| counts[l.index()] != k) {
        return Err(ConstructionError::Certification(format!(
            "line {l} meets the set in {} points, expected {k}",
            counts[l.index()]
        )));
    }
    Ok(Construction { set, t, k, secants })
}

/// Removes `r` points of `pool` from each line, per `pick`.
fn pick_per_line(plane: &Plane, pool: &[PointId], lines: &[LineId], r: usize, pick: &Pick) -> Result<Vec<PointId>> {
    let on = |l: LineId| -> Vec<PointId> { pool.iter().copied().filter(|&p| plane.incident(p, l)).collect() };
    let mut out = Vec::new();
    match pick {
        Pick::Given(v) => {
            let mut v = v.clone();
            v.sort();
            v.dedup();
            if v.len() != r * lines.len() {
                return Err(ConstructionError::BadChoice(format!("need {} distinct points, got {}", r * lines.len(), v.len())));
            }
            if let Some(p) = v.iter().find(|&&p| !pool.contains(&p) || !lines.iter().any(|&l| plane.incident(p, l))) {
                return Err(ConstructionError::BadChoice(format!("{p} is not on a designated secant")));
            }
            for &l in lines {
                let n = v.iter().filter(|&&p| plane.incident(p, l)).count();
                if n != r {
                    return Err(ConstructionError::BadChoice(format!("{n} points chosen on {l}, need {r}")));
                }
            }
            out = v;
        }
        Pick::Least => {
            for &l in lines {
                out.extend(on(l).into_iter().take(r));
            }
        }
        Pick::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for &l in lines {
                let mut pts = on(l);
                pts.shuffle(&mut rng);
                out.extend(pts.into_iter().take(r));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A `size`-subset of `cands` passing `check`, which returns a witness line
/// and its meet count on failure.
fn pick_subset(
    cands: &[PointId],
    size: usize,
    pick: &Pick,
    what: &str,
    check: impl Fn(&[PointId]) -> Option<(LineId, usize)>,
) -> Result<Vec<PointId>> {
    if let Pick::Given(v) = pick {
        let mut v = v.clone();
        v.sort();
        v.dedup();
        if v.len() != size {
            return Err(ConstructionError::BadChoice(format!("{what}: need {size} distinct points, got {}", v.len())));
        }
        if let Some(p) = v.iter().find(|p| !cands.contains(p)) {
            return Err(ConstructionError::BadChoice(format!("{what}: {p} is not an admissible point")));
        }
        if let Some((l, meets)) = check(&v) {
            return Err(ConstructionError::LineCondition { line: l.0, meets });
        }
        return Ok(v);
    }
    let mut order = cands.to_vec();
    order.sort();
    if let Pick::Seeded(seed) = pick {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
    }
    let mut chosen = Vec::with_capacity(size);
    let mut budget = PICK_BUDGET;
    if first_combination(&order, size, 0, &mut chosen, &mut budget, &check) {
        chosen.sort();
        Ok(chosen)
    } else if budget == 0 {
        Err(ConstructionError::NoValidChoice(format!("{what}: search budget of {PICK_BUDGET} exhausted")))
    } else {
        Err(ConstructionError::NoValidChoice(format!("{what}: no {size}-subset satisfies the line condition")))
    }
}

fn first_combination(
    order: &[PointId],
    size: usize,
    from: usize,
    chosen: &mut Vec<PointId>,
    budget: &mut usize,
    check: &impl Fn(&[PointId]) -> Option<(LineId, usize)>,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if chosen.len() == size {
        let mut sorted = chosen.clone();
        sorted.sort();
        return check(&sorted).is_none();
    }
    let need = size - chosen.len();
    for i in from..order.len() {
        if order.len() - i < need {
            break;
        }
        chosen.push(order[i]);
        if first_combination(order, size, i + 1, chosen, budget, check) {
            return true;
        }
        chosen.pop();
        if *budget == 0 {
            return false;
        }
    }
    false
}

fn field_of(plane: &Plane) -> Result<&Field> {
    Ok(plane.coord_field()?)
}

fn at(plane: &Plane, v: [FieldElement; 3]) -> Result<PointId> {
    Ok(plane.point_at(v)?)
}

/// The three axes x = 0, y = 0, z = 0.
fn axes(plane: &Plane) -> Result<Vec<LineId>> {
    Ok(vec![plane.line_abc(1, 0, 0)?, plane.line_abc(0, 1, 0)?, plane.line_abc(0, 0, 1)?])
}

/// {(0:1:s), (s:0:1), (1:s:0) : −s a non-square}, a semioval of size
/// 3(q−1)/2 with the three axes as (q−1)/2-secants. Requires q odd.
pub fn projective_triangle_semioval(plane: &Plane) -> Result<Construction> {
    projective_triangle_with_deletions(plane, 0, &Pick::Least)
}

/// The projective triangle with `r` points deleted from each axis: a
/// (2r+1)-semiarc with three ((q−1)/2 − r)-secants. Requires r < (q−1)/2 − 1.
pub fn projective_triangle_with_deletions(plane: &Plane, r: usize, pick: &Pick) -> Result<Construction> {
    let f = field_of(plane)?;
    let q = f.order();
    if q % 2 == 0 {
        return Err(ConstructionError::OddOrderRequired(q));
    }
    let half = (q - 1) / 2;
    if r > 0 && r + 1 >= half {
        return Err(ConstructionError::OutOfRange(format!("r = {r}, need r < {}", half.saturating_sub(1))));
    }
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let mut base = Vec::with_capacity(3 * half);
    for s in f.elements().filter(|&s| !s.is_zero() && !f.is_square(f.neg(s))) {
        base.push(at(plane, [zero, one, s])?);
        base.push(at(plane, [s, zero, one])?);
        base.push(at(plane, [one, s, zero])?);
    }
    let lines = axes(plane)?;
    let removed = pick_per_line(plane, &base, &lines, r, pick)?;
    base.retain(|p| removed.binary_search(p).is_err());
    let (t, k) = (2 * r + 1, half - r);
    certify(plane, base, format!("projective triangle q={q} r={r}"), t, k, lines, 3 * k)
}

/// The conic y² = xz together with its nucleus (0:1:0). Requires q even.
pub fn hyperoval(plane: &Plane) -> Result<PointSet> {
    let f = field_of(plane)?;
    let q = f.order();
    if q % 2 == 1 {
        return Err(ConstructionError::EvenOrderRequired(q));
    }
    let mut pts = Vec::with_capacity(q + 2);
    for s in f.elements() {
        pts.push(at(plane, [FieldElement::ONE, s, f.mul(s, s)])?);
    }
    pts.push(plane.point_xyz(0, 0, 1)?);
    pts.push(plane.point_xyz(0, 1, 0)?);
    Ok(PointSet::new(plane, pts, format!("hyperoval q={q}"))?)
}

/// First line meeting `arc` in a number of points other than 0, 2 or τ.
pub fn km_arc_violation(plane: &Plane, arc: &[PointId], tau: usize) -> Option<(LineId, usize)> {
    let counts = intersection_counts(plane, arc);
    plane
        .lines()
        .map(|l| (l, counts[l.index()]))
        .find(|&(_, c)| c != 0 && c != 2 && c != tau)
}

/// Whether `arc` is a (q+τ, τ)-arc of type (0, 2, τ).
pub fn verify_km_arc(plane: &Plane, arc: &[PointId], tau: usize) -> bool {
    check_km_arc(plane, arc, tau).is_ok()
}

fn check_km_arc(plane: &Plane, arc: &[PointId], tau: usize) -> Result<()> {
    let q = plane.order();
    if q % 2 == 1 {
        return Err(ConstructionError::EvenOrderRequired(q));
    }
    if tau == 0 || q % tau != 0 {
        return Err(ConstructionError::OutOfRange(format!("τ = {tau} must divide q = {q}")));
    }
    if arc.len() != q + tau {
        return Err(ConstructionError::WrongSize { expected: q + tau, found: arc.len() });
    }
    if let Some((l, meets)) = km_arc_violation(plane, arc, tau) {
        return Err(ConstructionError::LineCondition { line: l.0, meets });
    }
    Ok(())
}

/// Deletes `r` points from each τ-secant of a (q+τ, τ)-arc of type (0, 2, τ),
/// giving an (rq/τ)-semiarc with q/τ + 1 (τ−r)-secants. Requires 1 ≤ r < τ−1.
pub fn km_deletion(plane: &Plane, arc: &PointSet, tau: usize, r: usize, pick: &Pick) -> Result<Construction> {
    check_km_arc(plane, arc.points(), tau)?;
    let q = plane.order();
    if r == 0 || r + 1 >= tau {
        return Err(ConstructionError::OutOfRange(format!("r = {r}, need 1 ≤ r < {}", tau.saturating_sub(1))));
    }
    let counts = intersection_counts(plane, arc.points());
    let lines: Vec<LineId> = plane.lines().filter(|l| counts[l.index()] == tau).collect();
    if lines.len() != q / tau + 1 {
        return Err(ConstructionError::Certification(format!(
            "{} τ-secants, expected {}",
            lines.len(),
            q / tau + 1
        )));
    }
    let removed = pick_per_line(plane, arc.points(), &lines, r, pick)?;
    let pts: Vec<PointId> = arc.points().iter().copied().filter(|p| removed.binary_search(p).is_err()).collect();
    let (t, k) = (r * q / tau, tau - r);
    certify(plane, pts, format!("km deletion q={q} tau={tau} r={r}"), t, k, lines, k + q - t)
}

fn square_root_order(plane: &Plane) -> Result<usize> {
    let q = plane.order();
    let r = isqrt(q);
    if r * r != q || field_of(plane)?.degree() % 2 != 0 {
        return Err(ConstructionError::NotSquare(q));
    }
    Ok(r)
}

/// Points whose normalized coordinates all lie in GF(√q).
pub fn baer_subplane(plane: &Plane) -> Result<Vec<PointId>> {
    square_root_order(plane)?;
    let f = field_of(plane)?;
    let sub = f.subfield_elements(f.degree() / 2).map_err(|e| ConstructionError::OutOfRange(e.to_string()))?;
    let mut out = Vec::new();
    for p in plane.points() {
        let c = plane.point_coords(p)?;
        if c.iter().all(|x| sub.contains(x)) {
            out.push(p);
        }
    }
    Ok(out)
}

/// (Π △ ℓ) ∖ (T ∪ P) for the canonical Baer subplane Π and its extended line
/// ℓ = [0:0:1]. P is a t-subset of Π ∖ ℓ meeting no line in exactly √q−1
/// points and T a t-subset of ℓ ∖ Π. Gives a t-semiarc with a (q−√q−t)-secant.
pub fn baer_semiarc(plane: &Plane, t: usize, p_pick: &Pick, t_pick: &Pick) -> Result<Construction> {
    let r = square_root_order(plane)?;
    let q = plane.order();
    if q < 9 {
        return Err(ConstructionError::OutOfRange(format!("q = {q}, need q ≥ 9")));
    }
    if t == 0 || t + r + 2 > q {
        return Err(ConstructionError::OutOfRange(format!("t = {t}, need 1 ≤ t ≤ {}", q - r - 2)));
    }
    let b = baer_subplane(plane)?;
    let line = plane.line_at_infinity()?;
    let check = |p: &[PointId]| {
        let counts = intersection_counts(plane, p);
        plane.lines().map(|l| (l, counts[l.index()])).find(|&(_, c)| c == r - 1)
    };
    symmetric_difference(plane, &b, line, t, p_pick, t_pick, check, format!("baer semiarc q={q} t={t}"))
}

/// (B △ ℓ) ∖ (T ∪ P) for a small Rédei-type blocking set B with Rédei line ℓ
/// and z ≥ 3. P is a t-subset of B ∖ ℓ with |ℓ′ ∩ P| ≠ |ℓ′ ∩ B| − 2 for every
/// line ℓ′ meeting B at least twice, T a t-subset of ℓ ∖ B.
pub fn redei_semiarc(plane: &Plane, b: &[PointId], line: LineId, t: usize, p_pick: &Pick, t_pick: &Pick) -> Result<Construction> {
    let q = plane.order();
    let mut b = b.to_vec();
    b.sort();
    b.dedup();
    if !is_blocking_set(plane, &b) {
        return Err(ConstructionError::NotSmallBlocking("some line is skew".into()));
    }
    if 2 * b.len() >= 3 * (q + 1) {
        return Err(ConstructionError::NotSmallBlocking(format!("|B| = {} ≥ 3(q+1)/2", b.len())));
    }
    let b_counts = intersection_counts(plane, &b);
    let on_line = b_counts[line.index()];
    if on_line > q || !redei_lines(plane, &b).contains(&line) {
        return Err(ConstructionError::NotRedeiLine(line.0));
    }
    let proj = Projectivity::line_to_infinity(plane, line)?;
    let affine: Vec<PointId> = b.iter().filter(|&&p| !plane.incident(p, line)).map(|&p| proj.map_point(p)).collect();
    let z = trichotomy_class(plane, &affine)?.z;
    if z < 3 {
        return Err(ConstructionError::ZTooSmall(z));
    }
    if t == 0 || t + on_line + 1 > q {
        return Err(ConstructionError::OutOfRange(format!("t = {t}, need 1 ≤ t ≤ {}", q.saturating_sub(on_line + 1))));
    }
    let check = |p: &[PointId]| {
        let counts = intersection_counts(plane, p);
        plane
            .lines()
            .filter(|l| b_counts[l.index()] > 1)
            .map(|l| (l, counts[l.index()]))
            .find(|&(l, c)| c + 2 == b_counts[l.index()])
    };
    symmetric_difference(plane, &b, line, t, p_pick, t_pick, check, format!("redei semiarc q={q} |B|={} t={t}", b.len()))
}

#[allow(clippy::too_many_arguments)]
fn symmetric_difference(
    plane: &Plane,
    b: &[PointId],
    line: LineId,
    t: usize,
    p_pick: &Pick,
    t_pick: &Pick,
    check: impl Fn(&[PointId]) -> Option<(LineId, usize)>,
    provenance: String,
) -> Result<Construction> {
    let q = plane.order();
    let off: Vec<PointId> = b.iter().copied().filter(|&p| !plane.incident(p, line)).collect();
    let outside: Vec<PointId> = plane.points_on(line).iter().copied().filter(|p| b.binary_search(p).is_err()).collect();
    let p = pick_subset(&off, t, p_pick, "P", check)?;
    let tt = pick_subset(&outside, t, t_pick, "T", |_| None)?;
    let k = outside.len() - t;
    let mut pts: Vec<PointId> = off.into_iter().filter(|x| p.binary_search(x).is_err()).collect();
    pts.extend(outside.into_iter().filter(|x| tt.binary_search(x).is_err()));
    certify(plane, pts, provenance, t, k, vec![line], k + q - t)
}

/// (ℓ △ ℓ′) with t points removed from each line: a t-semiarc with two
/// (q−t)-secants. Requires 1 ≤ t ≤ q−2.
pub fn two_line_semiarc(
    plane: &Plane,
    first: LineId,
    second: LineId,
    t: usize,
    first_pick: &Pick,
    second_pick: &Pick,
) -> Result<Construction> {
    let q = plane.order();
    if first == second {
        return Err(ConstructionError::BadChoice("the two lines coincide".into()));
    }
    if t == 0 || t + 2 > q {
        return Err(ConstructionError::OutOfRange(format!("t = {t}, need 1 ≤ t ≤ {}", q - 2)));
    }
    let corner = plane.meet(first, second)?;
    let side = |l: LineId| -> Vec<PointId> { plane.points_on(l).iter().copied().filter(|&p| p != corner).collect() };
    let (a, b) = (side(first), side(second));
    let ra = pick_subset(&a, t, first_pick, "first line", |_| None)?;
    let rb = pick_subset(&b, t, second_pick, "second line", |_| None)?;
    let mut pts: Vec<PointId> = a.into_iter().filter(|x| ra.binary_search(x).is_err()).collect();
    pts.extend(b.into_iter().filter(|x| rb.binary_search(x).is_err()));
    let k = q - t;
    certify(plane, pts, format!("two lines q={q} t={t}"), t, k, vec![first, second], 2 * k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupKind {
    /// Subgroups of (GF(q), +); yields a 2-semiarc.
    Additive,
    /// Subgroups of (GF(q)^×, ·); yields a 3-semiarc.
    Multiplicative,
}

/// The `index`-th direct-sum pair of the given kind.
pub fn direct_sum_pair(field: &Field, kind: SubgroupKind, index: usize) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let pairs = match kind {
        SubgroupKind::Additive => field.additive_direct_sums(),
        SubgroupKind::Multiplicative => field.multiplicative_direct_sums(),
    };
    let n = pairs.len();
    pairs
        .into_iter()
        .nth(index)
        .ok_or_else(|| ConstructionError::NotDirectSum(format!("pair index {index}, only {n} pairs exist")))
}

fn check_direct_sum(field: &Field, kind: SubgroupKind, a: &[FieldElement], b: &[FieldElement]) -> Result<()> {
    let (subs, identity, order) = match kind {
        SubgroupKind::Additive => (field.additive_subgroups(), FieldElement::ZERO, field.order()),
        SubgroupKind::Multiplicative => (field.multiplicative_subgroups(), FieldElement::ONE, field.order() - 1),
    };
    for s in [a, b] {
        if !subs.iter().any(|g| g.as_slice() == s) {
            return Err(ConstructionError::NotDirectSum(format!("{} elements do not form a subgroup", s.len())));
        }
        if s.len() <= 1 || s.len() >= order {
            return Err(ConstructionError::NotDirectSum(format!("subgroup of size {} is not proper and non-trivial", s.len())));
        }
    }
    let common = a.iter().filter(|x| b.contains(x)).count();
    if a.len() * b.len() != order || common != 1 || !a.contains(&identity) {
        return Err(ConstructionError::NotDirectSum(format!("sizes {} and {} with {common} common elements", a.len(), b.len())));
    }
    Ok(())
}

/// Three point rows indexed by s ∉ A ∪ B. Additive, on three lines through
/// (0:1:0): {(0:s:1), (1:s:1), (1:s:0)}, a 2-semiarc with three
/// (q+1−|A|−|B|)-secants. Multiplicative: {(0:s:1), (s:0:1), (1:−s:0)} with
/// s ≠ 0 on the sides of a triangle, a 3-semiarc with three
/// (q−|A|−|B|)-secants.
pub fn subgroup_semiarc(
    plane: &Plane,
    kind: SubgroupKind,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Result<Construction> {
    let f = field_of(plane)?;
    let q = f.order();
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    a.dedup();
    b.sort();
    b.dedup();
    check_direct_sum(f, kind, &a, &b)?;
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let mut pts = Vec::new();
    let keep = |s: &FieldElement| !a.contains(s) && !b.contains(s) && (kind == SubgroupKind::Additive || !s.is_zero());
    for s in f.elements().filter(keep) {
        match kind {
            SubgroupKind::Additive => {
                pts.push(at(plane, [zero, s, one])?);
                pts.push(at(plane, [one, s, one])?);
                pts.push(at(plane, [one, s, zero])?);
            }
            SubgroupKind::Multiplicative => {
                pts.push(at(plane, [zero, s, one])?);
                pts.push(at(plane, [s, zero, one])?);
                pts.push(at(plane, [one, f.neg(s), zero])?);
            }
        }
    }
    let minus_one = f.neg(one);
    let (t, k, lines) = match kind {
        SubgroupKind::Additive => (
            2,
            q + 1 - a.len() - b.len(),
            vec![plane.line_abc(1, 0, 0)?, plane.line_at([one, zero, minus_one])?, plane.line_abc(0, 0, 1)?],
        ),
        SubgroupKind::Multiplicative => (3, q - a.len() - b.len(), axes(plane)?),
    };
    let label = match kind {
        SubgroupKind::Additive => "additive",
        SubgroupKind::Multiplicative => "multiplicative",
    };
    certify(plane, pts, format!("subgroup rows {label} q={q} |A|={} |B|={}", a.len(), b.len()), t, k, lines, 3 * k)
}

/// The lines x = 0, x = z and z = 0 through (0:1:0), minus (0:1:0) and the
/// points (0:s:1), (1:si:1), (1:s+si:0) for s ∈ GF(√q), where i is the
/// field's quadratic generator. A semioval with three (q−√q)-secants.
pub fn concurrent_sqrtq_semioval(plane: &Plane) -> Result<Construction> {
    square_root_order(plane)?;
    let f = field_of(plane)?;
    let q = f.order();
    let sub = f.subfield_elements(f.degree() / 2).map_err(|e| ConstructionError::OutOfRange(e.to_string()))?;
    let i = f.quadratic_generator().ok_or(ConstructionError::NotSquare(q))?;
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let lines = vec![plane.line_abc(1, 0, 0)?, plane.line_at([one, zero, f.neg(one)])?, plane.line_abc(0, 0, 1)?];
    let mut removed = vec![plane.point_xyz(0, 1, 0)?];
    for &s in &sub {
        let si = f.mul(s, i);
        removed.push(at(plane, [zero, s, one])?);
        removed.push(at(plane, [one, si, one])?);
        removed.push(at(plane, [one, f.add(s, si), zero])?);
    }
    removed.sort();
    let mut pts: Vec<PointId> = lines.iter().flat_map(|&l| plane.points_on(l).iter().copied()).collect();
    pts.sort();
    pts.dedup();
    pts.retain(|p| removed.binary_search(p).is_err());
    let k = q - sub.len();
    certify(plane, pts, format!("concurrent sqrt-q semioval q={q}"), 1, k, lines, 3 * k)
}

/// Names accepted by [`build`] and the `construct` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionName {
    ProjectiveTriangle,
    Hyperoval,
    KmDeletion,
    Baer,
    Redei,
    TwoLines,
    AdditiveSubgroups,
    MultiplicativeSubgroups,
    SqrtqSemioval,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 9] = [
        ConstructionName::ProjectiveTriangle,
        ConstructionName::Hyperoval,
        ConstructionName::KmDeletion,
        ConstructionName::Baer,
        ConstructionName::Redei,
        ConstructionName::TwoLines,
        ConstructionName::AdditiveSubgroups,
        ConstructionName::MultiplicativeSubgroups,
        ConstructionName::SqrtqSemioval,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionName::ProjectiveTriangle => "projective-triangle",
            ConstructionName::Hyperoval => "hyperoval",
            ConstructionName::KmDeletion => "km-deletion",
            ConstructionName::Baer => "baer",
            ConstructionName::Redei => "redei",
            ConstructionName::TwoLines => "two-lines",
            ConstructionName::AdditiveSubgroups => "additive-subgroups",
            ConstructionName::MultiplicativeSubgroups => "multiplicative-subgroups",
            ConstructionName::SqrtqSemioval => "sqrtq-semioval",
        }
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionName {
    type Err = String;

    /// Accepts underscores for hyphens, and the `projective-triangle-semioval` alias.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.replace('_', "-");
        let norm = if norm == "projective-triangle-semioval" { "projective-triangle" } else { &norm };
        ConstructionName::ALL
            .into_iter()
            .find(|n| n.as_str() == norm)
            .ok_or_else(|| format!("unknown construction {s:?}"))
    }
}

/// Everything needed to rebuild a construction deterministically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub name: ConstructionName,
    pub q: usize,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub r: Option<usize>,
    #[serde(default)]
    pub tau: Option<usize>,
    /// Rédei line, or the first of two lines.
    #[serde(default)]
    pub line: Option<LineId>,
    #[serde(default)]
    pub second_line: Option<LineId>,
    /// Deleted points, P, or the points removed from the second line.
    #[serde(default)]
    pub removed: Option<Vec<PointId>>,
    /// T, or the points removed from the first line.
    #[serde(default)]
    pub removed_on_line: Option<Vec<PointId>>,
    /// Index into the field's direct-sum pairs.
    #[serde(default)]
    pub subgroup_pair: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl ConstructionSpec {
    pub fn new(name: ConstructionName, q: usize) -> ConstructionSpec {
        ConstructionSpec {
            name,
            q,
            t: None,
            r: None,
            tau: None,
            line: None,
            second_line: None,
            removed: None,
            removed_on_line: None,
            subgroup_pair: 0,
            seed: None,
        }
    }

    fn pick(&self, given: &Option<Vec<PointId>>, salt: u64) -> Pick {
        match (given, self.seed) {
            (Some(v), _) => Pick::Given(v.clone()),
            (None, Some(s)) => Pick::Seeded(s.wrapping_add(salt)),
            (None, None) => Pick::Least,
        }
    }

    fn need(&self, v: Option<usize>, what: &str) -> Result<usize> {
        v.ok_or_else(|| ConstructionError::OutOfRange(format!("{} needs {what}", self.name)))
    }
}

/// Runs the construction named in `spec` on `plane`. `input` is the KM-arc
/// for `km-deletion` and the blocking set for `redei`.
pub fn build(plane: &Plane, spec: &ConstructionSpec, input: Option<&PointSet>) -> Result<Construction> {
    if plane.order() != spec.q {
        return Err(ConstructionError::OutOfRange(format!("plane has order {}, spec asks for {}", plane.order(), spec.q)));
    }
    let removed = spec.pick(&spec.removed, 0);
    let on_line = spec.pick(&spec.removed_on_line, 1);
    let input_for = |what: &str| input.ok_or_else(|| ConstructionError::MissingInput(what.into()));
    match spec.name {
        ConstructionName::ProjectiveTriangle => projective_triangle_with_deletions(plane, spec.r.unwrap_or(0), &removed),
        ConstructionName::Hyperoval => {
            let set = hyperoval(plane)?;
            certify(plane, set.points().to_vec(), set.provenance().to_string(), 0, 2, Vec::new(), spec.q + 2)
        }
        ConstructionName::KmDeletion => {
            let tau = spec.need(spec.tau, "tau")?;
            km_deletion(plane, input_for("km-deletion")?, tau, spec.need(spec.r, "r")?, &removed)
        }
        ConstructionName::Baer => baer_semiarc(plane, spec.need(spec.t, "t")?, &removed, &on_line),
        ConstructionName::Redei => {
            let b = input_for("redei")?;
            let line = match spec.line {
                Some(l) => l,
                None => *redei_lines(plane, b.points())
                    .iter()
                    .find(|l| intersection_counts(plane, b.points())[l.index()] <= spec.q)
                    .ok_or_else(|| ConstructionError::NotSmallBlocking("no Rédei line".into()))?,
            };
            redei_semiarc(plane, b.points(), line, spec.need(spec.t, "t")?, &removed, &on_line)
        }
        ConstructionName::TwoLines => {
            let first = spec.line.unwrap_or(plane.line_abc(0, 0, 1)?);
            let second = spec.second_line.unwrap_or(plane.line_abc(1, 0, 0)?);
            two_line_semiarc(plane, first, second, spec.need(spec.t, "t")?, &on_line, &removed)
        }
        ConstructionName::AdditiveSubgroups | ConstructionName::MultiplicativeSubgroups => {
            let kind = if spec.name == ConstructionName::AdditiveSubgroups {
                SubgroupKind::Additive
            } else {
                SubgroupKind::Multiplicative
            };
            let (a, b) = direct_sum_pair(field_of(plane)?, kind, spec.subgroup_pair)?;
            subgroup_semiarc(plane, kind, &a, &b)
        }
        ConstructionName::SqrtqSemioval => concurrent_sqrtq_semioval(plane),
    }
}
