//! Directions determined by affine point sets.
//!
//! The line at infinity is always `[0:0:1]`; callers with another secant map
//! it there first with [`Projectivity::line_to_infinity`](crate::plane::Projectivity::line_to_infinity).

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::intersection_counts;
use crate::field::{Field, FieldElement};
use crate::plane::{LineId, Plane, PlaneError, PointId};

/// Largest order for which [`affine_equivalent`] sweeps AGL(2,q).
pub const MAX_EQUIVALENCE_ORDER: usize = 11;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectionsError {
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("point {0} lies on the line at infinity")]
    AtInfinity(u32),
    #[error("expected {expected} affine points, found {found}")]
    WrongSize { expected: String, found: usize },
    #[error("|D_U| = {directions} lies outside the band for z = {z} (q = {q})")]
    BandViolation { q: usize, z: usize, directions: usize },
    #[error("affine equivalence search limited to q ≤ {MAX_EQUIVALENCE_ORDER}, got {0}")]
    TooLarge(usize),
}

const INFINITY: LineId = LineId(0);

/// Checks that `points` are affine points of a coordinatized plane and returns them sorted.
pub fn affine_set(plane: &Plane, points: &[PointId]) -> Result<Vec<PointId>, DirectionsError> {
    plane.coord_field()?;
    if let Some(p) = points.iter().find(|&&p| plane.incident(p, INFINITY)) {
        return Err(DirectionsError::AtInfinity(p.0));
    }
    let mut v = points.to_vec();
    v.sort();
    v.dedup();
    Ok(v)
}

/// The graph `{(x, f(x))}` of a function given by its value table.
pub fn graph_of(plane: &Plane, values: &[FieldElement]) -> Result<Vec<PointId>, DirectionsError> {
    let f = plane.coord_field()?;
    if values.len() != f.order() {
        return Err(DirectionsError::WrongSize { expected: f.order().to_string(), found: values.len() });
    }
    let mut pts = f
        .elements()
        .zip(values)
        .map(|(x, &y)| plane.affine_point(x, y))
        .collect::<Result<Vec<_>, _>>()?;
    pts.sort();
    Ok(pts)
}

/// Points of the line at infinity determined by `u`.
pub fn directions_of(plane: &Plane, u: &[PointId]) -> Result<Vec<PointId>, DirectionsError> {
    let u = affine_set(plane, u)?;
    let counts = intersection_counts(plane, &u);
    Ok(determined(plane, &counts))
}

fn determined(plane: &Plane, counts: &[usize]) -> Vec<PointId> {
    plane
        .points_on(INFINITY)
        .iter()
        .copied()
        .filter(|&d| plane.pencil(d).iter().any(|&l| l != INFINITY && counts[l.index()] >= 2))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Band {
    /// z = 1, (q+3)/2 ≤ |D| ≤ q+1.
    Unrestricted,
    /// 1 < z < q, q/z + 1 ≤ |D| ≤ (q−1)/(z−1).
    Subfield,
    /// z = q, |D| = 1.
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionReport {
    pub directions: Vec<PointId>,
    pub count: usize,
    pub z: usize,
    pub band: Band,
}

/// Direction count, largest z and trichotomy band of a set of q affine points.
///
/// z is the largest power of p dividing every non-zero intersection of U with
/// a line through a determined direction.
pub fn trichotomy_class(plane: &Plane, u: &[PointId]) -> Result<DirectionReport, DirectionsError> {
    let u = affine_set(plane, u)?;
    let f = plane.coord_field()?;
    let q = f.order();
    if u.len() != q {
        return Err(DirectionsError::WrongSize { expected: q.to_string(), found: u.len() });
    }
    let counts = intersection_counts(plane, &u);
    let dirs = determined(plane, &counts);
    let p = f.characteristic() as usize;
    let mut e = f.degree() as usize;
    for &d in &dirs {
        for &l in plane.pencil(d) {
            let c = counts[l.index()];
            if l != INFINITY && c > 0 {
                e = e.min(p_valuation(c, p));
            }
        }
    }
    let z = p.pow(e as u32);
    let n = dirs.len();
    let band = if z == 1 {
        Band::Unrestricted
    } else if z == q {
        Band::Line
    } else {
        Band::Subfield
    };
    let ok = match band {
        Band::Unrestricted => 2 * n >= q + 3 && n <= q + 1,
        Band::Line => n == 1,
        Band::Subfield => f.degree() as usize % e == 0 && n >= q / z + 1 && n * (z - 1) <= q - 1,
    };
    if !ok {
        return Err(DirectionsError::BandViolation { q, z, directions: n });
    }
    Ok(DirectionReport { directions: dirs, count: n, z, band })
}

pub(crate) fn p_valuation(mut n: usize, p: usize) -> usize {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Affine points P ∉ U with `D(U ∪ {P}) = D(U)`.
pub fn extend_preserving_directions(plane: &Plane, u: &[PointId]) -> Result<Vec<PointId>, DirectionsError> {
    let u = affine_set(plane, u)?;
    let q = plane.order();
    if u.is_empty() || u.len() >= q {
        return Err(DirectionsError::WrongSize { expected: format!("1..{q}"), found: u.len() });
    }
    let counts = intersection_counts(plane, &u);
    let mut is_dir = vec![false; plane.num_points()];
    for d in determined(plane, &counts) {
        is_dir[d.index()] = true;
    }
    let in_u = plane.point_bits_of(&u);
    Ok(plane
        .points()
        .filter(|&p| !plane.incident(p, INFINITY) && !in_u.contains(p.index()))
        .filter(|&p| {
            // a line through P meeting U adds its direction unless already determined
            plane.pencil(p).iter().all(|&l| {
                l == INFINITY || counts[l.index()] == 0 || is_dir[plane.meet(l, INFINITY).unwrap().index()]
            })
        })
        .collect())
}

/// For |U| = q − 1 with at most q − 1 determined directions, whether exactly
/// one direction-preserving extension point exists. `None` outside that range.
pub fn unique_extension_holds(plane: &Plane, u: &[PointId]) -> Result<Option<bool>, DirectionsError> {
    let q = plane.order();
    if q < 3 || u.len() + 1 != q || directions_of(plane, u)?.len() > q - 1 {
        return Ok(None);
    }
    Ok(Some(extend_preserving_directions(plane, u)?.len() == 1))
}

/// `v ↦ A·v + b` on affine coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub a: [[FieldElement; 2]; 2],
    pub b: [FieldElement; 2],
}

impl AffineMap {
    pub fn apply(&self, f: &Field, (x, y): (FieldElement, FieldElement)) -> (FieldElement, FieldElement) {
        (
            f.add(f.add(f.mul(self.a[0][0], x), f.mul(self.a[0][1], y)), self.b[0]),
            f.add(f.add(f.mul(self.a[1][0], x), f.mul(self.a[1][1], y)), self.b[1]),
        )
    }

    pub fn apply_point(&self, plane: &Plane, p: PointId) -> Result<PointId, DirectionsError> {
        let f = plane.coord_field()?;
        let xy = plane.affine_coords(p)?.ok_or(DirectionsError::AtInfinity(p.0))?;
        let (x, y) = self.apply(f, xy);
        Ok(plane.affine_point(x, y)?)
    }
}

fn affine_spectrum(plane: &Plane, u: &[PointId]) -> BTreeMap<usize, usize> {
    let mut spec = BTreeMap::new();
    for (i, c) in intersection_counts(plane, u).into_iter().enumerate() {
        if i != INFINITY.index() {
            *spec.entry(c).or_insert(0) += 1;
        }
    }
    spec
}

/// An affine map taking U onto V, if any.
pub fn affine_equivalent(plane: &Plane, u: &[PointId], v: &[PointId]) -> Result<Option<AffineMap>, DirectionsError> {
    let f = plane.coord_field()?;
    let q = f.order();
    if q > MAX_EQUIVALENCE_ORDER {
        return Err(DirectionsError::TooLarge(q));
    }
    let u = affine_set(plane, u)?;
    let v = affine_set(plane, v)?;
    if u.len() != v.len() {
        return Ok(None);
    }
    if u.is_empty() {
        return Ok(Some(AffineMap { a: [[FieldElement::ONE, FieldElement::ZERO], [FieldElement::ZERO, FieldElement::ONE]], b: [FieldElement::ZERO; 2] }));
    }
    if directions_of(plane, &u)?.len() != directions_of(plane, &v)?.len() || affine_spectrum(plane, &u) != affine_spectrum(plane, &v) {
        return Ok(None);
    }
    let uc: Vec<(FieldElement, FieldElement)> = u.iter().map(|&p| plane.affine_coords(p).map(|c| c.unwrap())).collect::<Result<_, _>>()?;
    let vc: HashSet<(FieldElement, FieldElement)> = v.iter().map(|&p| plane.affine_coords(p).map(|c| c.unwrap())).collect::<Result<_, _>>()?;
    let els: Vec<FieldElement> = f.elements().collect();
    for &a00 in &els {
        for &a01 in &els {
            for &a10 in &els {
                for &a11 in &els {
                    if f.sub(f.mul(a00, a11), f.mul(a01, a10)).is_zero() {
                        continue;
                    }
                    let a = [[a00, a01], [a10, a11]];
                    let linear = AffineMap { a, b: [FieldElement::ZERO; 2] };
                    let (x0, y0) = linear.apply(f, uc[0]);
                    for &(vx, vy) in &vc {
                        let map = AffineMap { a, b: [f.sub(vx, x0), f.sub(vy, y0)] };
                        if uc.iter().all(|&c| vc.contains(&map.apply(f, c))) {
                            return Ok(Some(map));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Outcome of checking one instance of the small-direction-set lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Small0Verdict {
    /// z < 3.
    ZTooSmall,
    /// t² z > q (z − 1).
    TTooLarge,
    /// |U| ≠ q − t, |P| ≠ t, P meets U, or E ⊄ F.
    BadShape { reason: String },
    /// Some point of U has fewer than t tangents with direction in F.
    Hypothesis1Fails { point: PointId, tangents: usize },
    /// A tangent with direction in F∖E meets U ∪ P in a non-multiple of z.
    Hypothesis2Fails { line: LineId, meets: usize },
    /// Hypotheses hold and |E| ≥ t.
    Holds { e: usize },
    /// Hypotheses hold but |E| < t.
    Violated { e: usize },
}

/// Checks the hypotheses of the lemma "|E| ≥ t" on a concrete instance and,
/// when they hold, its conclusion. Hypothesis (2) is applied to the tangents
/// whose direction lies in F∖E.
pub fn check_small0_instance(
    plane: &Plane,
    u: &[PointId],
    e: &[PointId],
    f: &[PointId],
    p: &[PointId],
    z: usize,
    t: usize,
) -> Result<Small0Verdict, DirectionsError> {
    let q = plane.order();
    if z < 3 {
        return Ok(Small0Verdict::ZTooSmall);
    }
    if t * t * z > q * (z - 1) {
        return Ok(Small0Verdict::TTooLarge);
    }
    let u = affine_set(plane, u)?;
    let pset = affine_set(plane, p)?;
    let bad = |reason: String| Ok(Small0Verdict::BadShape { reason });
    if u.len() + t != q {
        return bad(format!("|U| = {} but q − t = {}", u.len(), q as i64 - t as i64));
    }
    if pset.len() != t {
        return bad(format!("|P| = {} but t = {t}", pset.len()));
    }
    if pset.iter().any(|x| u.binary_search(x).is_ok()) {
        return bad("P meets U".into());
    }
    if let Some(x) = e.iter().chain(f).find(|&&x| !plane.incident(x, INFINITY)) {
        return bad(format!("direction {} is not on the line at infinity", x.0));
    }
    if let Some(x) = e.iter().find(|x| !f.contains(x)) {
        return bad(format!("E contains {} which is not in F", x.0));
    }
    let counts = intersection_counts(plane, &u);
    let direction = |l: LineId| plane.meet(l, INFINITY).expect("affine line");
    for &x in &u {
        let tangents = plane
            .pencil(x)
            .iter()
            .filter(|&&l| l != INFINITY && counts[l.index()] == 1 && f.contains(&direction(l)))
            .count();
        if tangents < t {
            return Ok(Small0Verdict::Hypothesis1Fails { point: x, tangents });
        }
    }
    let mut union = u.clone();
    union.extend(&pset);
    let union_counts = intersection_counts(plane, &union);
    for l in plane.lines() {
        if l == INFINITY || counts[l.index()] != 1 {
            continue;
        }
        let d = direction(l);
        if f.contains(&d) && !e.contains(&d) && union_counts[l.index()] % z != 0 {
            return Ok(Small0Verdict::Hypothesis2Fails { line: l, meets: union_counts[l.index()] });
        }
    }
    let mut e_sorted = e.to_vec();
    e_sorted.sort();
    e_sorted.dedup();
    let n = e_sorted.len();
    Ok(if n >= t { Small0Verdict::Holds { e: n } } else { Small0Verdict::Violated { e: n } })
}
