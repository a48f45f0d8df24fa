//! Orbit data at a few points: stabilizer, orbit dimension, Casimir values
//! and the Kirillov form on a complement of the stabilizer.

use coadjoint::algebra::{Builtin, DualVector};
use coadjoint::galilei::{embed_reduced, ReducedState};
use coadjoint::orbit::{orbit_check, OrbitDescriptor, OrbitReport, DEFAULT_TOL};

fn main() -> coadjoint::Result<()> {
    let so21 = Builtin::So21M;
    let z = DualVector::new(vec![1.5, 0.0, 0.0]);
    let rep = OrbitReport::compute(&so21.algebra(), &z, &so21.casimirs(), DEFAULT_TOL)?;
    println!("{}", rep.to_json());

    let sheet = OrbitDescriptor::so21_upper_sheet(1.5)?;
    for p in [[1.5, 0.0, 0.0], [2.5, 2.0, 0.0], [-1.5, 0.0, 0.0]] {
        let chk = orbit_check(&sheet, &DualVector::new(p.to_vec()), 1e-9);
        println!("{p:?} on the upper sheet: {}", chk.member);
    }

    let gal = Builtin::GalileiN2D3;
    let base = embed_reduced(&ReducedState::base(1.0)?)?.to_dual();
    let rep = OrbitReport::compute(&gal.algebra(), &base, &gal.casimirs(), DEFAULT_TOL)?;
    println!(
        "galilei base point: orbit dimension {}, stabilizer dimension {}",
        rep.orbit_dimension, rep.stabilizer_dimension
    );
    Ok(())
}
