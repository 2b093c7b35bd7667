//! Random checks of the gcd-degree inequality, and a Rédei polynomial whose
//! root multiplicities count points on lines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semiarc::field::Field;
use semiarc::redei::{random_linear_product, redei_polynomial, root_multiplicities, szw_check};
use semiarc::plane::{LineId, Plane};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::with_order(7)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0i64;
    for _ in 0..200 {
        let a = random_linear_product(&f, 5, &mut rng);
        let b = random_linear_product(&f, 4, &mut rng);
        for y0 in f.elements() {
            let out = szw_check(&f, &a, &b, y0)?;
            assert!(out.holds);
            worst = worst.max(out.lhs - out.rhs);
        }
    }
    println!("200 pairs over GF(7): inequality held everywhere, tightest slack {}", -worst);

    let plane = Plane::pg2_order(5)?;
    let u: Vec<_> = plane.points().filter(|&p| !plane.incident(p, LineId(0))).step_by(4).take(5).collect();
    let h = redei_polynomial(&plane, &u)?;
    let pf = plane.coord_field()?;
    for m in pf.elements() {
        let roots = root_multiplicities(pf, &h.specialize(pf, m));
        let hits: Vec<String> = roots.iter().map(|(k, n)| format!("b={}:{n}", k.value())).collect();
        println!("slope {}: {}", m.value(), hits.join(" "));
    }
    Ok(())
}
