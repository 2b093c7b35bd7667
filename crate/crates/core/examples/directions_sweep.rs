//! Direction counts of every function graph over GF(q), grouped by band.

use std::collections::BTreeMap;

use semiarc::directions::{graph_of, trichotomy_class, Band};
use semiarc::field::FieldElement;
use semiarc::plane::Plane;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let plane = Plane::pg2_order(q)?;
    let f = plane.coord_field()?.clone();
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut bands: BTreeMap<String, usize> = BTreeMap::new();
    for code in 0..q.pow(q as u32) {
        let values: Vec<FieldElement> = (0..q).map(|i| f.elem(code / q.pow(i as u32) % q)).collect();
        let r = trichotomy_class(&plane, &graph_of(&plane, &values)?)?;
        *table.entry((r.z, r.count)).or_insert(0) += 1;
        let name = match r.band {
            Band::Unrestricted => "unrestricted",
            Band::Subfield => "subfield",
            Band::Line => "line",
        };
        *bands.entry(name.into()).or_insert(0) += 1;
    }
    println!("q={q}: {} graphs", q.pow(q as u32));
    for ((z, n), count) in &table {
        println!("  z={z} |D|={n}: {count}");
    }
    println!("bands: {bands:?}");
    Ok(())
}
