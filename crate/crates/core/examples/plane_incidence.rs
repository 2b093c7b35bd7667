//! Builds PG(2,q), checks the axioms, and round-trips the incidence file.

use semiarc::plane::{Plane, Projectivity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let plane = Plane::pg2_order(q)?;
    plane.verify_axioms()?;
    println!("PG(2,{q}): {} points, {} lines", plane.num_points(), plane.num_lines());
    for l in plane.lines().take(3) {
        let [a, b, c] = plane.line_coords(l)?;
        let pts: Vec<String> = plane
            .points_on(l)
            .iter()
            .map(|&p| plane.point_coords(p).map(|[x, y, z]| format!("({}:{}:{})", x.value(), y.value(), z.value())))
            .collect::<Result<_, _>>()?;
        println!("[{}:{}:{}] {}", a.value(), b.value(), c.value(), pts.join(" "));
    }
    let text = plane.export_incidence();
    let loaded = Plane::load_incidence(&text)?;
    assert_eq!(loaded.export_incidence(), text);
    println!("incidence file: {} bytes, reloads identically", text.len());

    // move an arbitrary line to the line at infinity
    let l = plane.line_abc(1, 1, 1)?;
    let m = Projectivity::line_to_infinity(&plane, l)?;
    println!("[1:1:1] maps to line {}", m.map_line(l).0);
    Ok(())
}
