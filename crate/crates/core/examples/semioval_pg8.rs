//! 15-point semiovals of PG(2,8) on a triangle with two vertices removed,
//! with a 6-secant whose tangents are not concurrent.

use semiarc::analysis::{intersection_counts, pencil_cover, tangent_lines_at_secant};
use semiarc::io::write_pointset;
use semiarc::plane::{Plane, PointId};
use semiarc::search::{search_semiarcs, SearchSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let plane = Plane::pg2_order(8)?;
    let sides = [plane.line_abc(1, 0, 0)?, plane.line_abc(0, 1, 0)?, plane.line_abc(0, 0, 1)?];
    let dropped = [plane.point_xyz(0, 1, 0)?, plane.point_xyz(0, 0, 1)?];
    let mut within: Vec<PointId> = sides.iter().flat_map(|&l| plane.points_on(l).iter().copied()).filter(|p| !dropped.contains(p)).collect();
    within.sort();
    within.dedup();
    let spec = SearchSpec::new(8, 1, 15, 15).with_secant(sides[0], 6).within(within);
    let res = search_semiarcs(&plane, &spec, 1)?;
    let mut shown = false;
    let mut good = 0;
    for w in &res.witnesses {
        let c = intersection_counts(&plane, w.points());
        let tangents = tangent_lines_at_secant(&plane, w, sides[0])?;
        if c[sides[1].index()] == 5 && c[sides[2].index()] == 5 && pencil_cover(&plane, &tangents, 1, None)?.is_none() {
            good += 1;
            if !shown {
                print!("{}", write_pointset(&plane, &w.clone().with_provenance("15-point semioval, PG(2,8)"))?);
                shown = true;
            }
        }
    }
    println!("{good} of {} semiovals have non-concurrent tangents on the 6-secant", res.witness_count);
    Ok(())
}
