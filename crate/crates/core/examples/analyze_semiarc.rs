//! Reads a point-set file (or uses a conic) and prints the analysis report.
//!
//! cargo run --example analyze_semiarc -- crates/core/fixtures/projective_triangle_q5.pts

use semiarc::analysis::{analyze, AnalysisRequest, PointSet};
use semiarc::io::read_pointset;
use semiarc::plane::{LineId, Plane};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (plane, set) = match std::env::args().nth(1) {
        Some(path) => read_pointset(&std::fs::read_to_string(path)?)?,
        None => {
            // conic y² = xz in PG(2,7), an oval: every point has one tangent
            let plane = Plane::pg2_order(7)?;
            let f = plane.coord_field()?.clone();
            let mut pts = vec![plane.point_xyz(0, 0, 1)?];
            for s in f.elements() {
                pts.push(plane.point_at([f.elem(1), s, f.mul(s, s)])?);
            }
            let set = PointSet::new(&plane, pts, "conic")?;
            (plane, set)
        }
    };
    let req = AnalysisRequest { line: Some(LineId(0)), t: None, a_n: vec![1, 2] };
    let report = analyze(&plane, &set, &req)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
