//! Where semiarcs with a (q+1−t)-secant start to exist, by direct search.

use semiarc::plane::{LineId, Plane};
use semiarc::search::{estimate_nodes, search_semiarcs, SearchSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let plane = Plane::pg2_order(q)?;
    for t in 1..=q / 2 {
        let k = q + 1 - t;
        let mut spec = SearchSpec::new(q, t, k, plane.num_points()).with_secant(LineId(0), k).first_witness();
        spec.symmetry = true;
        let est = estimate_nodes(&plane, &spec)?;
        let res = search_semiarcs(&plane, &spec, 1)?;
        match res.witnesses.first() {
            Some(w) => println!("t={t}: a {t}-semiarc with a {k}-secant, {} points ({} nodes, estimate {est:.0})", w.len(), res.nodes),
            None => println!("t={t}: none with a {k}-secant, exhaustive over {} nodes (estimate {est:.0})", res.nodes),
        }
    }
    Ok(())
}
