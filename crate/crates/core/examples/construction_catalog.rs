//! Builds every catalog construction at a small order and prints its
//! parameters and point-set file.

use semiarc::analysis::{is_t_semiarc, secant_spectrum, PointSet};
use semiarc::constructions::{build, ConstructionName, ConstructionSpec};
use semiarc::io::{read_pointset_for, write_pointset};
use semiarc::plane::{LineId, Plane};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ConstructionName::ALL {
        let q = match name {
            ConstructionName::ProjectiveTriangle | ConstructionName::MultiplicativeSubgroups => 7,
            ConstructionName::Hyperoval | ConstructionName::KmDeletion => 8,
            ConstructionName::Redei | ConstructionName::TwoLines => 5,
            ConstructionName::Baer | ConstructionName::AdditiveSubgroups | ConstructionName::SqrtqSemioval => 9,
        };
        let plane = Plane::pg2_order(q)?;
        let mut spec = ConstructionSpec::new(name, q);
        spec.t = Some(1);
        spec.r = Some(1);
        spec.tau = Some(4);
        let input = match name {
            ConstructionName::KmDeletion => Some(read_pointset_for(&plane, include_str!("../fixtures/km_arc_q8_tau4.pts"))?),
            ConstructionName::Redei => Some(PointSet::new(&plane, plane.points_on(LineId(1)).to_vec(), "a line")?),
            _ => None,
        };
        let c = build(&plane, &spec, input.as_ref())?;
        assert_eq!(is_t_semiarc(&plane, &c.set), Some(c.t));
        println!("{name} q={q}: t={} k={} size={} spectrum {:?}", c.t, c.k, c.set.len(), secant_spectrum(&plane, &c.set));
        if name == ConstructionName::TwoLines {
            print!("{}", write_pointset(&plane, &c.set)?);
        }
    }
    Ok(())
}
