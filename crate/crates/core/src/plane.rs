//! Incidence structure of PG(2,q), or of any projective plane loaded from an
//! incidence file.
//!
//! Points and lines are numbered `0..q²+q+1`. For the native PG(2,q) the
//! numbering is lexicographic in the normalized homogeneous triple (leftmost
//! non-zero coordinate equal to 1) under the canonical element encoding, so
//! `(0:0:1)` is point 0 and `[0:0:1]` (the line at infinity) is line 0.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement};

/// Largest plane order accepted by [`Plane::pg2`].
pub const MAX_PLANE_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("projective plane axiom violated: {message} (witness {witness:?})")]
    Axiom { message: String, witness: (usize, usize) },
    #[error("incidence file: {0}")]
    Parse(String),
    #[error("operation needs a coordinatized plane")]
    NotCoordinatized,
    #[error("arguments must be distinct")]
    EqualArguments,
    #[error("plane order {0} exceeds the supported maximum {MAX_PLANE_ORDER}")]
    TooLarge(usize),
    #[error("triple ({0}) is not a valid homogeneous coordinate vector")]
    BadCoordinates(String),
    #[error("points are not in general position")]
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineId(pub u32);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl LineId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

/// A point at infinity seen as a direction of the affine plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `(m)`, i.e. `(1:m:0)`.
    Slope(FieldElement),
    /// `Y∞ = (0:1:0)`.
    Vertical,
}

pub type Triple = [FieldElement; 3];

#[derive(Clone, Debug)]
struct Coordinates {
    field: Arc<Field>,
    points: Vec<Triple>,
    lines: Vec<Triple>,
}

/// An immutable projective plane of order q.
#[derive(Clone, Debug)]
pub struct Plane {
    order: usize,
    line_points: Vec<Vec<PointId>>,
    point_lines: Vec<Vec<LineId>>,
    line_bits: Vec<FixedBitSet>,
    point_bits: Vec<FixedBitSet>,
    coords: Option<Coordinates>,
}

impl Plane {
    /// Native PG(2,q) over `field`, incidence by `ax + by + cz = 0`.
    pub fn pg2(field: Arc<Field>) -> Result<Plane, PlaneError> {
        let q = field.order();
        if q > MAX_PLANE_ORDER {
            return Err(PlaneError::TooLarge(q));
        }
        let triples = normalized_triples(&field);
        let n = triples.len();
        let mut line_points = vec![Vec::with_capacity(q + 1); n];
        for (li, l) in triples.iter().enumerate() {
            for (pi, p) in triples.iter().enumerate() {
                if dot(&field, l, p).is_zero() {
                    line_points[li].push(PointId(pi as u32));
                }
            }
        }
        let mut plane = Plane::from_line_points(q, line_points);
        plane.coords = Some(Coordinates { field, points: triples.clone(), lines: triples });
        Ok(plane)
    }

    /// PG(2,q) with the default field of order q.
    pub fn pg2_order(q: usize) -> Result<Plane, crate::Error> {
        let field = Field::with_order(q)?;
        Ok(Plane::pg2(Arc::new(field))?)
    }

    fn from_line_points(order: usize, mut line_points: Vec<Vec<PointId>>) -> Plane {
        let n = line_points.len();
        let mut point_lines = vec![Vec::with_capacity(order + 1); n];
        let mut line_bits = Vec::with_capacity(n);
        let mut point_bits = vec![FixedBitSet::with_capacity(n); n];
        for (li, pts) in line_points.iter_mut().enumerate() {
            pts.sort();
            let mut bits = FixedBitSet::with_capacity(n);
            for p in pts.iter() {
                bits.insert(p.index());
                point_lines[p.index()].push(LineId(li as u32));
                point_bits[p.index()].insert(li);
            }
            line_bits.push(bits);
        }
        Plane { order, line_points, point_lines, line_bits, point_bits, coords: None }
    }

    /// Parses and validates an incidence file.
    pub fn load_incidence(text: &str) -> Result<Plane, PlaneError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| PlaneError::Parse("empty file".into()))?;
        let order: usize = header
            .strip_prefix("plane order=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| PlaneError::Parse(format!("bad header {header:?}")))?;
        if order < 2 || order > MAX_PLANE_ORDER {
            return Err(PlaneError::Parse(format!("unsupported order {order}")));
        }
        let n = order * order + order + 1;
        let mut line_points = Vec::with_capacity(n);
        for (li, row) in lines.enumerate() {
            let pts = row
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| PlaneError::Parse(format!("line {li}: bad index {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(&bad) = pts.iter().find(|&&p| p as usize >= n) {
                return Err(PlaneError::Parse(format!("line {li}: point index {bad} out of range")));
            }
            let mut sorted = pts.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != order + 1 {
                return Err(PlaneError::Axiom {
                    message: format!("line {li} has {} distinct points, expected {}", sorted.len(), order + 1),
                    witness: (li, sorted.len()),
                });
            }
            line_points.push(sorted.into_iter().map(PointId).collect::<Vec<_>>());
        }
        if line_points.len() != n {
            return Err(PlaneError::Parse(format!("expected {n} lines, found {}", line_points.len())));
        }
        // every pair of points on exactly one line
        let mut joined = vec![u32::MAX; n * n];
        for (li, pts) in line_points.iter().enumerate() {
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    let slot = &mut joined[a.index() * n + b.index()];
                    if *slot != u32::MAX {
                        return Err(PlaneError::Axiom {
                            message: format!("points {} and {} lie on lines {} and {li}", a.0, b.0, *slot),
                            witness: (a.index(), b.index()),
                        });
                    }
                    *slot = li as u32;
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if joined[a * n + b] == u32::MAX {
                    return Err(PlaneError::Axiom {
                        message: format!("points {a} and {b} have no joining line"),
                        witness: (a, b),
                    });
                }
            }
        }
        Ok(Plane::from_line_points(order, line_points))
    }

    /// Incidence file text: `plane order=q`, then one sorted row per line.
    pub fn export_incidence(&self) -> String {
        let mut out = format!("plane order={}\n", self.order);
        for pts in &self.line_points {
            let row: Vec<String> = pts.iter().map(|p| p.0.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// q² + q + 1.
    #[inline]
    pub fn num_points(&self) -> usize {
        self.line_points.len()
    }

    #[inline]
    pub fn num_lines(&self) -> usize {
        self.line_points.len()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.num_points() as u32).map(PointId)
    }

    pub fn lines(&self) -> impl Iterator<Item = LineId> {
        (0..self.num_lines() as u32).map(LineId)
    }

    pub fn is_coordinatized(&self) -> bool {
        self.coords.is_some()
    }

    pub fn field(&self) -> Option<&Arc<Field>> {
        self.coords.as_ref().map(|c| &c.field)
    }

    /// The field of a coordinatized plane.
    pub fn coord_field(&self) -> Result<&Field, PlaneError> {
        self.coords.as_ref().map(|c| c.field.as_ref()).ok_or(PlaneError::NotCoordinatized)
    }

    #[inline]
    pub fn points_on(&self, line: LineId) -> &[PointId] {
        &self.line_points[line.index()]
    }

    /// The pencil of `point`: the q+1 lines through it.
    #[inline]
    pub fn pencil(&self, point: PointId) -> &[LineId] {
        &self.point_lines[point.index()]
    }

    #[inline]
    pub fn line_bits(&self, line: LineId) -> &FixedBitSet {
        &self.line_bits[line.index()]
    }

    #[inline]
    pub fn pencil_bits(&self, point: PointId) -> &FixedBitSet {
        &self.point_bits[point.index()]
    }

    #[inline]
    pub fn incident(&self, point: PointId, line: LineId) -> bool {
        self.line_bits[line.index()].contains(point.index())
    }

    /// The line PQ.
    pub fn line_through(&self, p: PointId, q: PointId) -> Result<LineId, PlaneError> {
        if p == q {
            return Err(PlaneError::EqualArguments);
        }
        Ok(*self
            .pencil(p)
            .iter()
            .find(|&&l| self.incident(q, l))
            .expect("two points lie on a common line"))
    }

    /// The common point of two lines.
    pub fn meet(&self, l1: LineId, l2: LineId) -> Result<PointId, PlaneError> {
        if l1 == l2 {
            return Err(PlaneError::EqualArguments);
        }
        Ok(*self
            .points_on(l1)
            .iter()
            .find(|&&p| self.incident(p, l2))
            .expect("two lines meet"))
    }

    pub fn are_collinear(&self, pts: &[PointId]) -> bool {
        if pts.len() <= 2 {
            return true;
        }
        let mut distinct: Vec<PointId> = pts.to_vec();
        distinct.sort();
        distinct.dedup();
        if distinct.len() <= 2 {
            return true;
        }
        let l = self.line_through(distinct[0], distinct[1]).unwrap();
        distinct.iter().all(|&p| self.incident(p, l))
    }

    /// Bit-set of a point list.
    pub fn point_bits_of(&self, pts: &[PointId]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.num_points());
        for p in pts {
            b.insert(p.index());
        }
        b
    }

    // ---- coordinates ----

    fn coords(&self) -> Result<&Coordinates, PlaneError> {
        self.coords.as_ref().ok_or(PlaneError::NotCoordinatized)
    }

    pub fn point_coords(&self, p: PointId) -> Result<Triple, PlaneError> {
        Ok(self.coords()?.points[p.index()])
    }

    pub fn line_coords(&self, l: LineId) -> Result<Triple, PlaneError> {
        Ok(self.coords()?.lines[l.index()])
    }

    /// Point with homogeneous coordinates `v` (any non-zero scaling).
    pub fn point_at(&self, v: Triple) -> Result<PointId, PlaneError> {
        let c = self.coords()?;
        Ok(PointId(triple_index(&c.field, v)? as u32))
    }

    /// Line with coordinates `[a:b:c]` (any non-zero scaling).
    pub fn line_at(&self, v: Triple) -> Result<LineId, PlaneError> {
        let c = self.coords()?;
        Ok(LineId(triple_index(&c.field, v)? as u32))
    }

    /// Convenience: point from integer-encoded coordinates.
    pub fn point_xyz(&self, x: usize, y: usize, z: usize) -> Result<PointId, PlaneError> {
        let f = self.coord_field()?;
        let e = |v: usize| f.try_elem(v).map_err(|_| PlaneError::BadCoordinates(format!("{x}:{y}:{z}")));
        self.point_at([e(x)?, e(y)?, e(z)?])
    }

    /// Convenience: line from integer-encoded coordinates.
    pub fn line_abc(&self, a: usize, b: usize, c: usize) -> Result<LineId, PlaneError> {
        let f = self.coord_field()?;
        let e = |v: usize| f.try_elem(v).map_err(|_| PlaneError::BadCoordinates(format!("{a}:{b}:{c}")));
        self.line_at([e(a)?, e(b)?, e(c)?])
    }

    /// `ℓ∞ = [0:0:1]`.
    pub fn line_at_infinity(&self) -> Result<LineId, PlaneError> {
        self.coords()?;
        Ok(LineId(0))
    }

    /// The affine point `(a, b) = (a:b:1)`.
    pub fn affine_point(&self, a: FieldElement, b: FieldElement) -> Result<PointId, PlaneError> {
        self.point_at([a, b, FieldElement::ONE])
    }

    /// Cartesian coordinates of a point off `[0:0:1]`.
    pub fn affine_coords(&self, p: PointId) -> Result<Option<(FieldElement, FieldElement)>, PlaneError> {
        let [x, y, z] = self.point_coords(p)?;
        if z.is_zero() {
            return Ok(None);
        }
        let f = self.coord_field()?;
        let zi = f.inv(z).expect("non-zero");
        Ok(Some((f.mul(x, zi), f.mul(y, zi))))
    }

    /// Direction label of a point on `[0:0:1]`.
    pub fn direction_of_point(&self, p: PointId) -> Result<Option<Direction>, PlaneError> {
        let [x, y, z] = self.point_coords(p)?;
        if !z.is_zero() {
            return Ok(None);
        }
        Ok(Some(if x.is_zero() { Direction::Vertical } else { Direction::Slope(y) }))
    }

    pub fn direction_point(&self, d: Direction) -> Result<PointId, PlaneError> {
        match d {
            Direction::Vertical => self.point_at([FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO]),
            Direction::Slope(m) => self.point_at([FieldElement::ONE, m, FieldElement::ZERO]),
        }
    }

    /// Affine points and direction labels with respect to `infinity`.
    ///
    /// For a line other than `[0:0:1]` the labels are those of the image under
    /// [`Projectivity::line_to_infinity`].
    pub fn affine_view(&self, infinity: LineId) -> Result<AffineView, PlaneError> {
        let proj = Projectivity::line_to_infinity(self, infinity)?;
        let mut affine = Vec::new();
        let mut directions = Vec::new();
        for p in self.points() {
            let img = proj.map_point(p);
            if let Some(ab) = self.affine_coords(img)? {
                affine.push((p, ab));
            } else {
                directions.push((p, self.direction_of_point(img)?.expect("on infinity")));
            }
        }
        Ok(AffineView { infinity, affine, directions })
    }

    /// Checks the projective plane axioms exhaustively.
    pub fn verify_axioms(&self) -> Result<(), PlaneError> {
        Plane::load_incidence(&self.export_incidence()).map(|_| ())
    }
}

/// Affine coordinates relative to a chosen line at infinity.
#[derive(Clone, Debug)]
pub struct AffineView {
    pub infinity: LineId,
    pub affine: Vec<(PointId, (FieldElement, FieldElement))>,
    pub directions: Vec<(PointId, Direction)>,
}

fn normalized_triples(f: &Field) -> Vec<Triple> {
    let mut out = Vec::with_capacity(f.order() * f.order() + f.order() + 1);
    out.push([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);
    for c in f.elements() {
        out.push([FieldElement::ZERO, FieldElement::ONE, c]);
    }
    for a in f.elements() {
        for b in f.elements() {
            out.push([FieldElement::ONE, a, b]);
        }
    }
    out
}

fn dot(f: &Field, a: &Triple, b: &Triple) -> FieldElement {
    f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
}

/// Scales `v` so its leftmost non-zero coordinate is 1.
pub fn normalize(f: &Field, v: Triple) -> Option<Triple> {
    let lead = v.iter().copied().find(|c| !c.is_zero())?;
    let inv = f.inv(lead).ok()?;
    Some([f.mul(v[0], inv), f.mul(v[1], inv), f.mul(v[2], inv)])
}

fn triple_index(f: &Field, v: Triple) -> Result<usize, PlaneError> {
    let q = f.order();
    let [x, y, z] = normalize(f, v).ok_or_else(|| PlaneError::BadCoordinates("0:0:0".into()))?;
    Ok(if !x.is_zero() {
        1 + q + y.value() * q + z.value()
    } else if !y.is_zero() {
        1 + z.value()
    } else {
        0
    })
}

type Matrix = [[FieldElement; 3]; 3];

fn mat_vec(f: &Field, m: &Matrix, v: &Triple) -> Triple {
    [dot(f, &m[0], v), dot(f, &m[1], v), dot(f, &m[2], v)]
}

fn mat_inverse(f: &Field, m: &Matrix) -> Option<Matrix> {
    let mut a = *m;
    let mut inv: Matrix = [[FieldElement::ZERO; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = FieldElement::ONE;
    }
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let s = f.inv(a[col][col]).ok()?;
        for j in 0..3 {
            a[col][j] = f.mul(a[col][j], s);
            inv[col][j] = f.mul(inv[col][j], s);
        }
        for r in 0..3 {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for j in 0..3 {
                    a[r][j] = f.sub(a[r][j], f.mul(factor, a[col][j]));
                    inv[r][j] = f.sub(inv[r][j], f.mul(factor, inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

fn transpose(m: &Matrix) -> Matrix {
    let mut t = *m;
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

/// A collineation of a coordinatized plane induced by an invertible 3×3 matrix
/// acting on column vectors, stored as point and line permutations.
#[derive(Clone, Debug)]
pub struct Projectivity {
    matrix: Matrix,
    points: Vec<PointId>,
    lines: Vec<LineId>,
}

impl Projectivity {
    pub fn from_matrix(plane: &Plane, matrix: Matrix) -> Result<Projectivity, PlaneError> {
        let c = plane.coords()?;
        let f = c.field.as_ref();
        let inv = mat_inverse(f, &matrix).ok_or(PlaneError::Degenerate)?;
        // lines transform by the inverse transpose
        let line_matrix = transpose(&inv);
        let points = c
            .points
            .iter()
            .map(|v| PointId(triple_index(f, mat_vec(f, &matrix, v)).unwrap() as u32))
            .collect();
        let lines = c
            .lines
            .iter()
            .map(|v| LineId(triple_index(f, mat_vec(f, &line_matrix, v)).unwrap() as u32))
            .collect();
        Ok(Projectivity { matrix, points, lines })
    }

    /// The projectivity sending `e_x, e_y, e_z` to the given points' coordinate vectors.
    pub fn from_columns(plane: &Plane, cols: [PointId; 3]) -> Result<Projectivity, PlaneError> {
        let v: Vec<Triple> = cols.iter().map(|&p| plane.point_coords(p)).collect::<Result<_, _>>()?;
        let mut m: Matrix = [[FieldElement::ZERO; 3]; 3];
        for (j, col) in v.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        Projectivity::from_matrix(plane, m)
    }

    /// Sends `line` to `[0:0:1]`; identity when it already is.
    pub fn line_to_infinity(plane: &Plane, line: LineId) -> Result<Projectivity, PlaneError> {
        let inf = plane.line_at_infinity()?;
        if line == inf {
            return Ok(Projectivity::identity(plane)?);
        }
        let pts = plane.points_on(line);
        let off = plane.points().find(|&p| !plane.incident(p, line)).expect("plane has points off a line");
        // e_x, e_y ↦ two points of `line`, e_z ↦ a point off it; invert.
        Ok(Projectivity::from_columns(plane, [pts[0], pts[1], off])?.inverse(plane))
    }

    pub fn identity(plane: &Plane) -> Result<Projectivity, PlaneError> {
        let mut m: Matrix = [[FieldElement::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = FieldElement::ONE;
        }
        Projectivity::from_matrix(plane, m)
    }

    pub fn inverse(&self, plane: &Plane) -> Projectivity {
        let f = plane.coord_field().expect("built on a coordinatized plane");
        let inv = mat_inverse(f, &self.matrix).expect("invertible");
        Projectivity::from_matrix(plane, inv).expect("invertible")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    #[inline]
    pub fn map_point(&self, p: PointId) -> PointId {
        self.points[p.index()]
    }

    #[inline]
    pub fn map_line(&self, l: LineId) -> LineId {
        self.lines[l.index()]
    }

    /// Image of a point list, sorted.
    pub fn map_points(&self, pts: &[PointId]) -> Vec<PointId> {
        let mut out: Vec<PointId> = pts.iter().map(|&p| self.map_point(p)).collect();
        out.sort();
        out
    }
}

/// Finds a projectivity mapping point set `a` onto `b`, if one exists.
///
/// Only PGL(3,q) is searched, which is the full collineation group when q is
/// prime. Both sets must contain four points in general position.
pub fn projectively_equivalent(plane: &Plane, a: &[PointId], b: &[PointId]) -> Result<Option<Projectivity>, PlaneError> {
    plane.coords()?;
    if a.len() != b.len() {
        return Ok(None);
    }
    let frame_b = find_frame(plane, b).ok_or(PlaneError::Degenerate)?;
    if find_frame(plane, a).is_none() {
        return Ok(None);
    }
    let mut target: Vec<PointId> = b.to_vec();
    target.sort();
    let to_b = frame_projectivity(plane, frame_b)?;
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let quad = [a[i], a[j], a[k], a[l]];
                    if !in_general_position(plane, &quad) {
                        continue;
                    }
                    let from_a = frame_projectivity(plane, quad)?;
                    // a-frame -> standard -> b-frame
                    let f = plane.coord_field()?;
                    let m = mat_mul(f, to_b.matrix(), &mat_inverse(f, from_a.matrix()).unwrap());
                    let cand = Projectivity::from_matrix(plane, m)?;
                    if cand.map_points(a) == target {
                        return Ok(Some(cand));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn mat_mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let mut m: Matrix = [[FieldElement::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = FieldElement::ZERO;
            for k in 0..3 {
                acc = f.add(acc, f.mul(a[i][k], b[k][j]));
            }
            m[i][j] = acc;
        }
    }
    m
}

fn in_general_position(plane: &Plane, quad: &[PointId; 4]) -> bool {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if quad[i] == quad[j] {
                return false;
            }
            for k in (j + 1)..4 {
                if plane.are_collinear(&[quad[i], quad[j], quad[k]]) {
                    return false;
                }
            }
        }
    }
    true
}

fn find_frame(plane: &Plane, pts: &[PointId]) -> Option<[PointId; 4]> {
    let n = pts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in (k + 1)..n {
                    let quad = [pts[i], pts[j], pts[k], pts[l]];
                    if in_general_position(plane, &quad) {
                        return Some(quad);
                    }
                }
            }
        }
    }
    None
}

/// The projectivity sending the standard frame (e_x, e_y, e_z, e_x+e_y+e_z) to `quad`.
fn frame_projectivity(plane: &Plane, quad: [PointId; 4]) -> Result<Projectivity, PlaneError> {
    let f = plane.coord_field()?;
    let cols = Projectivity::from_columns(plane, [quad[0], quad[1], quad[2]])?;
    let inv = mat_inverse(f, cols.matrix()).ok_or(PlaneError::Degenerate)?;
    let d = mat_vec(f, &inv, &plane.point_coords(quad[3])?);
    let mut m = *cols.matrix();
    for (j, &scale) in d.iter().enumerate() {
        for row in m.iter_mut() {
            row[j] = f.mul(row[j], scale);
        }
    }
    Projectivity::from_matrix(plane, m)
}
