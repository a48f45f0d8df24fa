//! Explicitly time-dependent symmetry generators of the so(2,1) flow and the
//! finite transformations they generate.

use coadjoint::algebra::{AlgebraVector, Builtin, DualVector};
use coadjoint::lie_poisson::{flow_exact, symmetry_transform, time_dep_generators, HamiltonianSpec};

fn main() -> coadjoint::Result<()> {
    let alg = Builtin::So21M.algebra();
    let h = HamiltonianSpec::new(vec![1.0, -1.0, 0.0]);
    let z0 = DualVector::new(vec![2.0, 0.4, -0.7]);

    println!("X~ along the trajectory (constant):");
    for k in 0..=4 {
        let t = 0.5 * k as f64;
        let zt = flow_exact(&alg, &h, &z0, t)?;
        let x = time_dep_generators(&alg, &h, &zt, t)?;
        println!("  t = {t:.1}  zeta = {:?}  X~ = {:?}", round(zt.coeffs()), round(x.coeffs()));
    }

    // a symmetry maps the solution at time t to another solution
    let lambda = AlgebraVector::new(vec![0.0, 0.3, 0.1]);
    let (t, s) = (0.7, 1.2);
    let moved = symmetry_transform(&alg, &h, &lambda, &flow_exact(&alg, &h, &z0, t)?, t)?;
    let later = flow_exact(&alg, &h, &moved, s)?;
    let direct = symmetry_transform(&alg, &h, &lambda, &flow_exact(&alg, &h, &z0, t + s)?, t + s)?;
    println!("transform-then-flow vs flow-then-transform: {:.1e}", later.max_abs_diff(&direct));
    Ok(())
}

fn round(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6).collect()
}
