//! Builds the projective-triangle semioval for small odd q and prints its
//! secant spectrum and the blocking set obtained from one side.

use semiarc::analysis::{is_t_semiarc, secant_spectrum};
use semiarc::blocking::{associate_blocking_set, minimal_reduction};
use semiarc::constructions::projective_triangle_semioval;
use semiarc::io::write_pointset;
use semiarc::plane::Plane;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [5, 7, 9, 11] {
        let plane = Plane::pg2_order(q)?;
        let c = projective_triangle_semioval(&plane)?;
        println!("q={q}: size {}, t={:?}, spectrum {:?}", c.set.len(), is_t_semiarc(&plane, &c.set), secant_spectrum(&plane, &c.set));
        let b = associate_blocking_set(&plane, &c.set, c.secants[0], 1, true)?;
        let (_, minimal) = minimal_reduction(&plane, &b.points)?;
        println!("  blocking set from a side: {} points (expected {}), minimal: {minimal}", b.points.len(), b.expected_size);
    }
    let plane = Plane::pg2_order(5)?;
    print!("{}", write_pointset(&plane, &projective_triangle_semioval(&plane)?.set)?);
    Ok(())
}
