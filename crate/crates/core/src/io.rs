//! Text formats: point-set files and bivariate polynomial files.
//!
//! Both start with the field header `gf(p^h;modulus=c0,...,ch)`. Lines that
//! are blank or start with `#` are ignored, except `# provenance: ...` in a
//! point-set file.

use std::sync::Arc;

use thiserror::Error;

use crate::analysis::{AnalysisError, PointSet};
use crate::field::{Field, FieldError};
use crate::plane::{Plane, PlaneError};
use crate::redei::BivariatePoly;

const PROVENANCE: &str = "# provenance:";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("file is empty")]
    Empty,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

fn header_and_body(text: &str) -> Result<(Field, Vec<(usize, &str)>), FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines.find(|(_, l)| !l.is_empty()).ok_or(FormatError::Empty)?;
    let field = Field::from_header(header)?;
    Ok((field, lines.filter(|(_, l)| !l.is_empty()).collect()))
}

/// Serializes a point set of a coordinatized plane. Points appear in index
/// order, normalized, elements in their integer encoding.
pub fn write_pointset(plane: &Plane, set: &PointSet) -> Result<String, FormatError> {
    let field = plane.coord_field()?;
    let mut out = field.header();
    out.push('\n');
    if !set.provenance().is_empty() {
        out.push_str(&format!("{PROVENANCE} {}\n", set.provenance()));
    }
    for &p in set.points() {
        let [x, y, z] = plane.point_coords(p)?;
        out.push_str(&format!("{}:{}:{}\n", x.value(), y.value(), z.value()));
    }
    Ok(out)
}

/// Parses a point-set file and builds its plane.
pub fn read_pointset(text: &str) -> Result<(Plane, PointSet), FormatError> {
    let (field, body) = header_and_body(text)?;
    let plane = Plane::pg2(Arc::new(field))?;
    let set = read_pointset_in(&plane, &body)?;
    Ok((plane, set))
}

/// Parses a point-set file against an existing plane with the same field.
pub fn read_pointset_for(plane: &Plane, text: &str) -> Result<PointSet, FormatError> {
    let (field, body) = header_and_body(text)?;
    let own = plane.coord_field()?;
    if field.header() != own.header() {
        return Err(parse_err(1, format!("field {} does not match plane field {}", field.header(), own.header())));
    }
    read_pointset_in(plane, &body)
}

fn read_pointset_in(plane: &Plane, body: &[(usize, &str)]) -> Result<PointSet, FormatError> {
    let field = plane.coord_field()?;
    let mut provenance = String::new();
    let mut points = Vec::new();
    for &(n, l) in body {
        if let Some(p) = l.strip_prefix(PROVENANCE) {
            if !provenance.is_empty() {
                return Err(parse_err(n, "second provenance line"));
            }
            provenance = p.trim().to_string();
            continue;
        }
        if l.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = l.split(':').collect();
        if parts.len() != 3 {
            return Err(parse_err(n, format!("expected x:y:z, got {l:?}")));
        }
        let mut v = [crate::field::FieldElement::ZERO; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            let value: usize = part.trim().parse().map_err(|_| parse_err(n, format!("bad element {part:?}")))?;
            *slot = field.try_elem(value).map_err(|e| parse_err(n, e.to_string()))?;
        }
        let p = plane.point_at(v).map_err(|e| parse_err(n, e.to_string()))?;
        points.push(p);
    }
    Ok(PointSet::new(plane, points, provenance)?)
}

/// Serializes a polynomial as `xdeg ydeg coeff` lines, sorted by degrees.
pub fn write_poly(field: &Field, poly: &BivariatePoly) -> String {
    let mut out = field.header();
    out.push('\n');
    for (i, j, c) in poly.terms() {
        out.push_str(&format!("{i} {j} {}\n", c.value()));
    }
    out
}

/// Parses a polynomial file. Repeated monomials are summed.
pub fn read_poly(text: &str) -> Result<(Field, BivariatePoly), FormatError> {
    let (field, body) = header_and_body(text)?;
    let mut terms = Vec::new();
    for &(n, l) in &body {
        if l.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(n, format!("expected `xdeg ydeg coeff`, got {l:?}")));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(n, format!("bad number {s:?}")));
        let (i, j, c) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if i > crate::redei::MAX_DEGREE || j > crate::redei::MAX_DEGREE {
            return Err(parse_err(n, format!("degree above {}", crate::redei::MAX_DEGREE)));
        }
        let c = field.try_elem(c).map_err(|e| parse_err(n, e.to_string()))?;
        terms.push((i, j, c));
    }
    let poly = BivariatePoly::from_terms(&field, &terms);
    Ok((field, poly))
}
