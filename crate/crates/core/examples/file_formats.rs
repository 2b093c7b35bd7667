//! Point-set and polynomial files: write, read back, compare bytes.

use semiarc::analysis::PointSet;
use semiarc::io::{read_pointset, read_poly, write_pointset, write_poly};
use semiarc::plane::Plane;
use semiarc::redei::redei_polynomial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let plane = Plane::pg2_order(4)?;
    let pts = [plane.point_xyz(1, 2, 3)?, plane.point_xyz(0, 1, 1)?, plane.point_xyz(1, 1, 1)?];
    let set = PointSet::new(&plane, pts.to_vec(), "three points")?;
    let text = write_pointset(&plane, &set)?;
    print!("{text}");
    let (_, back) = read_pointset(&text)?;
    assert_eq!(write_pointset(&plane, &back)?, text);

    let f = plane.coord_field()?;
    let affine: Vec<_> = set.points().iter().copied().filter(|&p| plane.point_coords(p).map(|c| !c[2].is_zero()).unwrap_or(false)).collect();
    let poly = write_poly(f, &redei_polynomial(&plane, &affine)?);
    print!("{poly}");
    let (_, h) = read_poly(&poly)?;
    assert_eq!(write_poly(f, &h), poly);
    Ok(())
}
