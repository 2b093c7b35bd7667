//! The blocking set attached to a semiarc and one of its secants, then its
//! minimality, Rédei lines and small-set class.

use semiarc::blocking::{associate_blocking_set, blocking_report, classify_small_minimal, minimal_reduction, redei_lines};
use semiarc::constructions::{projective_triangle_semioval, two_line_semiarc, Pick};
use semiarc::plane::{LineId, Plane};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [5, 7, 9] {
        let plane = Plane::pg2_order(q)?;
        let c = projective_triangle_semioval(&plane)?;
        // tangents at the points of a side all pass through one point
        let assoc = associate_blocking_set(&plane, &c.set, c.secants[0], c.t, true)?;
        let (reduced, _) = minimal_reduction(&plane, &assoc.points)?;
        println!(
            "q={q}: {} points, blocking set of {} ({:?}), minimal: {}, Rédei lines: {}, class: {:?}",
            c.set.len(),
            assoc.points.len(),
            assoc.kind,
            reduced == assoc.points,
            redei_lines(&plane, &assoc.points).len(),
            classify_small_minimal(&plane, &assoc.points)?
        );
    }

    // a semiarc on two lines only yields a line
    let plane = Plane::pg2_order(7)?;
    let c = two_line_semiarc(&plane, LineId(0), LineId(1), 2, &Pick::Least, &Pick::Least)?;
    let b = associate_blocking_set(&plane, &c.set, c.secants[0], 2, true)?;
    let report = blocking_report(&plane, &b.points, &[7]);
    println!("two lines, q=7: blocking {}, trivial {}", report.is_blocking, report.is_trivial);
    Ok(())
}
