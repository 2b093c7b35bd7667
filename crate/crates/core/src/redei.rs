//! Rédei polynomials and the gcd-degree inequality.
//!
//! For affine points `(a_i, b_i)` the Rédei polynomial is
//! `H(X,Y) = Π (X + a_i Y − b_i)`. Setting `Y = m`, the root `X = k` of
//! `H_m` has multiplicity equal to the number of points with `b_i = m·a_i + k`,
//! that is, the number of points on the affine line `y = m x + k`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{self, intersection_counts, PointSet};
use crate::field::{Field, FieldElement};
use crate::plane::{LineId, Plane, PlaneError, PointId, Projectivity};

/// Degree cap for univariate gcd inputs.
pub const MAX_DEGREE: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RedeiError {
    #[error("the coefficient of X^{0} in f vanishes, where {0} is the total degree of f")]
    LeadingCoefficient(usize),
    #[error("zero polynomial")]
    Zero,
    #[error("degree {0} exceeds {MAX_DEGREE}")]
    TooLarge(usize),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("instance: {0}")]
    Instance(String),
}

/// Dense univariate polynomial, `coeffs[i]` is the coefficient of `X^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniPoly {
    pub coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, f: &Field, x: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn monic(&self, f: &Field) -> UniPoly {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(&lead) => {
                let inv = f.inv(lead).expect("non-zero leading coefficient");
                UniPoly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
            }
        }
    }

    /// Remainder of division by a non-zero divisor.
    pub fn rem(&self, f: &Field, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("non-zero divisor");
        let lead_inv = f.inv(divisor.coeffs[dd]).expect("non-zero");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = *r.last().unwrap();
            if !top.is_zero() {
                let factor = f.mul(top, lead_inv);
                let shift = r.len() - 1 - dd;
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(r[shift + i], f.mul(factor, c));
                }
            }
            r.pop();
        }
        UniPoly::new(r)
    }

    /// Quotient by `X − root`, assuming `root` is a root.
    fn deflate(&self, f: &Field, root: FieldElement) -> UniPoly {
        let n = self.coeffs.len();
        let mut out = vec![FieldElement::ZERO; n - 1];
        let mut carry = FieldElement::ZERO;
        for i in (1..n).rev() {
            carry = f.add(self.coeffs[i], f.mul(carry, root));
            out[i - 1] = carry;
        }
        UniPoly::new(out)
    }
}

/// Monic gcd by the remainder sequence; `gcd(0, 0) = 0`.
pub fn gcd(f: &Field, a: &UniPoly, b: &UniPoly) -> Result<UniPoly, RedeiError> {
    for p in [a, b] {
        if let Some(d) = p.degree() {
            if d > MAX_DEGREE {
                return Err(RedeiError::TooLarge(d));
            }
        }
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(f, &y);
        x = y;
        y = r;
    }
    Ok(x.monic(f))
}

/// Multiplicity of every root in the field; repeated roots are divided out.
pub fn root_multiplicities(f: &Field, poly: &UniPoly) -> BTreeMap<FieldElement, usize> {
    let mut out = BTreeMap::new();
    if poly.is_zero() {
        return out;
    }
    for r in f.elements() {
        let mut p = poly.clone();
        let mut m = 0;
        while p.degree().is_some_and(|d| d > 0) && p.eval(f, r).is_zero() {
            p = p.deflate(f, r);
            m += 1;
        }
        if m > 0 {
            out.insert(r, m);
        }
    }
    out
}

/// Dense bivariate polynomial, `coeffs[i][j]` is the coefficient of `X^i Y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariatePoly {
    pub coeffs: Vec<Vec<FieldElement>>,
}

impl BivariatePoly {
    pub fn new(coeffs: Vec<Vec<FieldElement>>) -> BivariatePoly {
        let mut p = BivariatePoly { coeffs };
        p.trim();
        p
    }

    pub fn one() -> BivariatePoly {
        BivariatePoly { coeffs: vec![vec![FieldElement::ONE]] }
    }

    /// From `(x_degree, y_degree, coefficient)` triples; repeated terms add up.
    pub fn from_terms(f: &Field, terms: &[(usize, usize, FieldElement)]) -> BivariatePoly {
        let mut coeffs: Vec<Vec<FieldElement>> = Vec::new();
        for &(i, j, c) in terms {
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Vec::new());
            }
            if coeffs[i].len() <= j {
                coeffs[i].resize(j + 1, FieldElement::ZERO);
            }
            coeffs[i][j] = f.add(coeffs[i][j], c);
        }
        BivariatePoly::new(coeffs)
    }

    /// Non-zero terms in ascending (x, y) order.
    pub fn terms(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    fn trim(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.coeffs.get(i).and_then(|r| r.get(j)).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().iter().map(|&(i, j, _)| i + j).max()
    }

    pub fn mul(&self, f: &Field, other: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() || other.is_zero() {
            return BivariatePoly { coeffs: Vec::new() };
        }
        let mut out = vec![Vec::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, &c1) in r1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (i2, r2) in other.coeffs.iter().enumerate() {
                    for (j2, &c2) in r2.iter().enumerate() {
                        let row: &mut Vec<FieldElement> = &mut out[i1 + i2];
                        if row.len() <= j1 + j2 {
                            row.resize(j1 + j2 + 1, FieldElement::ZERO);
                        }
                        row[j1 + j2] = f.add(row[j1 + j2], f.mul(c1, c2));
                    }
                }
            }
        }
        BivariatePoly::new(out)
    }

    /// `X + a Y − b`.
    pub fn linear(f: &Field, a: FieldElement, b: FieldElement) -> BivariatePoly {
        BivariatePoly::new(vec![vec![f.neg(b), a], vec![FieldElement::ONE]])
    }

    /// The polynomial in Y multiplying `X^(n−j)`, where n is the X-degree.
    pub fn h(&self, j: usize) -> UniPoly {
        match self.x_degree() {
            Some(n) if j <= n => UniPoly::new(self.coeffs[n - j].clone()),
            _ => UniPoly::zero(),
        }
    }

    /// `H(X, y)` as a polynomial in X.
    pub fn specialize(&self, f: &Field, y: FieldElement) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|row| UniPoly { coeffs: row.clone() }.eval(f, y)).collect())
    }
}

/// `Π (X + a Y − b)` over the affine points `(a, b)` of `u`.
pub fn redei_polynomial(plane: &Plane, u: &[PointId]) -> Result<BivariatePoly, RedeiError> {
    let f = plane.coord_field()?;
    let mut h = BivariatePoly::one();
    for &p in u {
        let (a, b) = plane.affine_coords(p)?.ok_or_else(|| RedeiError::Instance(format!("point {} is not affine", p.0)))?;
        h = h.mul(f, &BivariatePoly::linear(f, a, b));
    }
    Ok(h)
}

fn check_leading(f_poly: &BivariatePoly) -> Result<usize, RedeiError> {
    let d = f_poly.total_degree().ok_or(RedeiError::Zero)?;
    if f_poly.coeff(d, 0).is_zero() {
        return Err(RedeiError::LeadingCoefficient(d));
    }
    Ok(d)
}

/// `y ↦ deg gcd(f(X,y), g(X,y))` over the whole field.
pub fn gcd_degree_profile(field: &Field, f: &BivariatePoly, g: &BivariatePoly) -> Result<BTreeMap<FieldElement, usize>, RedeiError> {
    check_leading(f)?;
    let mut out = BTreeMap::new();
    for y in field.elements() {
        let d = gcd(field, &f.specialize(field, y), &g.specialize(field, y))?.degree().unwrap_or(0);
        out.insert(y, d);
    }
    Ok(out)
}

/// Both sides of `Σ_y (h_y − h_{y0})⁺ ≤ (deg f − h_{y0})(deg g − h_{y0})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzwOutcome {
    pub y0: FieldElement,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub profile: BTreeMap<FieldElement, usize>,
}

pub fn szw_check(field: &Field, f: &BivariatePoly, g: &BivariatePoly, y0: FieldElement) -> Result<SzwOutcome, RedeiError> {
    let df = check_leading(f)? as i64;
    let dg = g.total_degree().ok_or(RedeiError::Zero)? as i64;
    let profile = gcd_degree_profile(field, f, g)?;
    let h0 = profile[&y0] as i64;
    let lhs: i64 = profile.values().map(|&h| (h as i64 - h0).max(0)).sum();
    let rhs = (df - h0) * (dg - h0);
    Ok(SzwOutcome { y0, lhs, rhs, holds: lhs <= rhs, profile })
}

/// Random `Π (X + aY − b)` with `factors` factors.
pub fn random_linear_product<R: Rng>(field: &Field, factors: usize, rng: &mut R) -> BivariatePoly {
    let q = field.order();
    let mut h = BivariatePoly::one();
    for _ in 0..factors {
        let a = field.elem(rng.gen_range(0..q));
        let b = field.elem(rng.gen_range(0..q));
        h = h.mul(field, &BivariatePoly::linear(field, a, b));
    }
    h
}

/// Random dense polynomial of total degree `d` whose `X^d` coefficient is non-zero.
pub fn random_dense<R: Rng>(field: &Field, d: usize, rng: &mut R) -> BivariatePoly {
    let q = field.order();
    let mut coeffs: Vec<Vec<FieldElement>> = (0..=d).map(|i| (0..=(d - i)).map(|_| field.elem(rng.gen_range(0..q))).collect()).collect();
    coeffs[d][0] = field.elem(rng.gen_range(1..q));
    BivariatePoly::new(coeffs)
}

impl BivariatePoly {
    pub fn add(&self, f: &Field, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.coeffs.clone();
        if out.len() < other.coeffs.len() {
            out.resize(other.coeffs.len(), Vec::new());
        }
        for (i, row) in other.coeffs.iter().enumerate() {
            if out[i].len() < row.len() {
                out[i].resize(row.len(), FieldElement::ZERO);
            }
            for (j, &c) in row.iter().enumerate() {
                out[i][j] = f.add(out[i][j], c);
            }
        }
        BivariatePoly::new(out)
    }
}

/// The pair of polynomials attached to a semiarc, a secant ℓ, a point Q on ℓ
/// and a point P off ℓ ∪ S, after moving to coordinates where P = (0),
/// Q = Y∞ and ℓ is `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexInstance {
    /// `Π (X − c)` over the points `(0, c)` of `((S ∩ ℓ) ∪ A(t+1)) ∖ {Q}`.
    pub f: BivariatePoly,
    /// Rédei polynomial of the image of S off ℓ and off the new line at infinity.
    pub g: BivariatePoly,
    pub k_q: usize,
    pub a_q: usize,
    /// Slopes y whose point `(y)` is off the image of S, other than Y∞,
    /// with `k_Q + a_Q − ind_Q((y))`.
    pub predicted: BTreeMap<FieldElement, usize>,
}

/// Builds the instance for semiarc parameter `t`.
pub fn index_instance(plane: &Plane, set: &PointSet, line: LineId, t: usize, q_point: PointId, p_point: PointId) -> Result<IndexInstance, RedeiError> {
    let field = plane.coord_field()?;
    if !plane.incident(q_point, line) {
        return Err(RedeiError::Instance("Q is not on the secant".into()));
    }
    if plane.incident(p_point, line) || set.contains(p_point) {
        return Err(RedeiError::Instance("P must lie off the secant and the set".into()));
    }
    let r_point = *plane.points_on(line).iter().find(|&&x| x != q_point).expect("line has q+1 points");
    // e_x ↦ P, e_y ↦ Q, e_z ↦ R; the inverse sends P to (0), Q to Y∞, ℓ to x = 0
    let to = Projectivity::from_columns(plane, [p_point, q_point, r_point])?.inverse(plane);
    let image = PointSet::new(plane, to.map_points(set.points()), "image").map_err(|e| RedeiError::Instance(e.to_string()))?;
    let new_line = to.map_line(line);
    debug_assert_eq!(Some(new_line), plane.line_abc(1, 0, 0).ok());
    let new_q = to.map_point(q_point);
    let a_t1 = analysis::a_n_set(plane, &image, new_line, t + 1);
    let mut base: Vec<PointId> = plane.points_on(new_line).iter().copied().filter(|&x| image.contains(x)).collect();
    base.extend(&a_t1);
    base.retain(|&x| x != new_q);
    base.sort();
    let k_q = plane.points_on(new_line).iter().filter(|&&x| image.contains(x) && x != new_q).count();
    let a_q = a_t1.iter().filter(|&&x| x != new_q).count();

    let mut f_poly = BivariatePoly::one();
    for &b in &base {
        let (_, c) = plane.affine_coords(b)?.ok_or_else(|| RedeiError::Instance("secant point at infinity".into()))?;
        f_poly = f_poly.mul(field, &BivariatePoly::linear(field, FieldElement::ZERO, c));
    }
    let infinity = plane.line_at_infinity()?;
    let u: Vec<PointId> = image
        .points()
        .iter()
        .copied()
        .filter(|&x| !plane.incident(x, new_line) && !plane.incident(x, infinity))
        .collect();
    let g_poly = redei_polynomial(plane, &u)?;

    // ind_Q(X) counts lines through X meeting ℓ in `base` and missing S off ℓ
    let counts = intersection_counts(plane, image.points());
    let on_line_in_s = |l: LineId| {
        let m = plane.meet(l, new_line).unwrap();
        usize::from(image.contains(m))
    };
    let mut predicted = BTreeMap::new();
    for y in field.elements() {
        let d = plane.point_at([FieldElement::ONE, y, FieldElement::ZERO])?;
        if image.contains(d) {
            continue;
        }
        let ind = plane
            .pencil(d)
            .iter()
            .filter(|&&l| l != new_line && base.contains(&plane.meet(l, new_line).unwrap()))
            .filter(|&&l| counts[l.index()] == on_line_in_s(l))
            .count();
        predicted.insert(y, k_q + a_q - ind);
    }
    Ok(IndexInstance { f: f_poly, g: g_poly, k_q, a_q, predicted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::tests::{pg, set_of};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(q: usize) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn small_redei_polys() {
        let p = pg(5);
        let f = p.coord_field().unwrap();
        let h = redei_polynomial(&p, &[p.point_xyz(0, 0, 1).unwrap()]).unwrap();
        assert_eq!(h.terms(), vec![(1, 0, FieldElement::ONE)]);
        let h2 = redei_polynomial(&p, &[p.point_xyz(0, 0, 1).unwrap(), p.point_xyz(0, 1, 1).unwrap()]).unwrap();
        // X² − X
        assert_eq!(h2.terms(), vec![(1, 0, f.neg(FieldElement::ONE)), (2, 0, FieldElement::ONE)]);
    }

    #[test]
    fn vertical_line_specializes_to_x5_minus_x() {
        let p = pg(5);
        let f = p.coord_field().unwrap();
        let u: Vec<PointId> = f.elements().map(|b| p.affine_point(FieldElement::ZERO, b).unwrap()).collect();
        let h = redei_polynomial(&p, &u).unwrap();
        for m in f.elements() {
            let hm = h.specialize(f, m);
            let mut expect = vec![FieldElement::ZERO; 6];
            expect[5] = FieldElement::ONE;
            expect[1] = f.neg(FieldElement::ONE);
            assert_eq!(hm.coeffs, expect);
            assert_eq!(root_multiplicities(f, &hm).len(), 5);
        }
    }

    #[test]
    fn h_j_degrees_bounded() {
        let p = pg(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let affine: Vec<PointId> = p.points().filter(|&x| !p.incident(x, LineId(0))).collect();
        for _ in 0..20 {
            let u: Vec<PointId> = rand::seq::index::sample(&mut rng, affine.len(), 6).into_iter().map(|i| affine[i]).collect();
            let h = redei_polynomial(&p, &u).unwrap();
            assert_eq!(h.x_degree(), Some(6));
            assert_eq!(h.h(0).coeffs, vec![FieldElement::ONE]);
            for j in 0..=6 {
                assert!(h.h(j).degree().map_or(true, |d| d <= j));
            }
        }
    }

    #[test]
    fn root_multiplicity_matches_incidence() {
        for q in [3, 4, 5, 7, 8, 9] {
            let p = pg(q);
            let f = p.coord_field().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
            let affine: Vec<PointId> = p.points().filter(|&x| !p.incident(x, LineId(0))).collect();
            for size in [1, 3, 6, 12.min(q * q)] {
                let u: Vec<PointId> = rand::seq::index::sample(&mut rng, affine.len(), size).into_iter().map(|i| affine[i]).collect();
                let coords: Vec<(FieldElement, FieldElement)> = u.iter().map(|&x| p.affine_coords(x).unwrap().unwrap()).collect();
                let h = redei_polynomial(&p, &u).unwrap();
                for m in f.elements() {
                    let mult = root_multiplicities(f, &h.specialize(f, m));
                    assert_eq!(mult.values().sum::<usize>(), size);
                    for k in f.elements() {
                        let direct = coords.iter().filter(|&&(a, b)| b == f.add(f.mul(m, a), k)).count();
                        assert_eq!(mult.get(&k).copied().unwrap_or(0), direct, "q={q} m={m:?} k={k:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn gcd_basics() {
        let f = field(7);
        let x = BivariatePoly::from_terms(&f, &[(1, 0, FieldElement::ONE)]);
        let xm1 = BivariatePoly::linear(&f, FieldElement::ZERO, FieldElement::ONE);
        let prof = gcd_degree_profile(&f, &x, &xm1).unwrap();
        assert!(prof.values().all(|&h| h == 0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_linear_product(&f, 4, &mut rng);
        let prof = gcd_degree_profile(&f, &g, &g).unwrap();
        assert!(prof.values().all(|&h| h == 4));
        let out = szw_check(&f, &g, &g, FieldElement::ONE).unwrap();
        assert_eq!((out.lhs, out.rhs, out.holds), (0, 0, true));
        // leading coefficient hypothesis: f = XY has total degree 2 and no X² term
        let bad = BivariatePoly::from_terms(&f, &[(1, 1, FieldElement::ONE)]);
        assert_eq!(gcd_degree_profile(&f, &bad, &g), Err(RedeiError::LeadingCoefficient(2)));
    }

    #[test]
    fn gcd_symmetric_and_bounded() {
        let f = field(9);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_linear_product(&f, rng.gen_range(1..6), &mut rng);
            let b = random_linear_product(&f, rng.gen_range(1..6), &mut rng);
            let pa = gcd_degree_profile(&f, &a, &b).unwrap();
            let pb = gcd_degree_profile(&f, &b, &a).unwrap();
            assert_eq!(pa, pb);
            let bound = a.x_degree().unwrap().min(b.x_degree().unwrap());
            assert!(pa.values().all(|&h| h <= bound));
        }
    }

    #[test]
    fn szw_random_sweep() {
        for q in [5, 7, 8, 9] {
            let f = field(q);
            let mut rng = ChaCha8Rng::seed_from_u64(100 + q as u64);
            for i in 0..250 {
                let (a, b) = if i % 2 == 0 {
                    (random_linear_product(&f, rng.gen_range(1..7), &mut rng), random_linear_product(&f, rng.gen_range(1..7), &mut rng))
                } else {
                    (random_dense(&f, rng.gen_range(1..5), &mut rng), random_dense(&f, rng.gen_range(1..5), &mut rng))
                };
                let y0 = f.elem(rng.gen_range(0..q));
                let out = szw_check(&f, &a, &b, y0).unwrap();
                assert!(out.holds, "q={q} i={i} {out:?}");
            }
        }
    }

    #[test]
    fn index_identity_on_triangle_q5() {
        let p = pg(5);
        let f = p.coord_field().unwrap();
        let s = set_of(&p, &[(0, 1, 2), (0, 1, 3), (2, 0, 1), (3, 0, 1), (1, 2, 0), (1, 3, 0)]);
        let side = p.line_abc(1, 0, 0).unwrap();
        let a2 = analysis::a_n_set(&p, &s, side, 2);
        let q_point = *p.points_on(side).iter().find(|&&x| !s.contains(x) && !a2.contains(&x)).unwrap_or(&a2[0]);
        for p_point in p.points().filter(|&x| !p.incident(x, side) && !s.contains(x)) {
            let inst = index_instance(&p, &s, side, 1, q_point, p_point).unwrap();
            let prof = gcd_degree_profile(f, &inst.f, &inst.g).unwrap();
            assert!(!inst.predicted.is_empty());
            for (y, &h) in &inst.predicted {
                assert_eq!(prof[y], h, "P={p_point} y={y:?}");
            }
            for y0 in f.elements() {
                assert!(szw_check(f, &inst.f, &inst.g, y0).unwrap().holds);
            }
        }
    }
}
