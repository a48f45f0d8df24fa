//! Free rigid body on so(3)*: exact flow of a linear Hamiltonian against RK4,
//! with the Casimir |J|^2 tracked along the way.

use coadjoint::algebra::{Builtin, DualVector};
use coadjoint::lie_poisson::{flow_exact, flow_rk4, HamiltonianSpec};

fn main() -> coadjoint::Result<()> {
    let alg = Builtin::So3.algebra();
    let casimir = &Builtin::So3.casimirs()[0];
    let h = HamiltonianSpec::new(vec![0.3, -0.2, 1.0]);
    let z0 = DualVector::new(vec![1.0, 2.0, 3.0]);

    let tr = flow_rk4(&alg, &h, &z0, 5.0, 500)?;
    let c0 = casimir.value(z0.coeffs());
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "t", "J1", "J2", "J3", "dC");
    for (t, s) in tr.iter().step_by(100) {
        println!("{t:>6.2} {:>12.6} {:>12.6} {:>12.6} {:>12.2e}", s[0], s[1], s[2], casimir.value(s) - c0);
    }
    let (t, last) = tr.last().expect("trajectory has samples");
    let exact = flow_exact(&alg, &h, &z0, t)?;
    println!("rk4 vs exact at t = {t}: {:.2e}", exact.max_abs_diff(&DualVector::new(last.to_vec())));
    Ok(())
}
