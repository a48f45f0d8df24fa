//! Checks the structure-constant identities of every built-in algebra and
//! rebuilds so(2,1) from sl(2,R) by a change of basis.

use coadjoint::algebra::Builtin;
use nalgebra::DMatrix;

fn main() -> coadjoint::Result<()> {
    for b in Builtin::ALL {
        let alg = b.algebra();
        let rep = alg.validate();
        println!("{:<14} dim {:>2}  nnz {:>3}  {}", b.name(), alg.dim(), alg.nnz(), if rep.passed { "ok" } else { "FAILED" });
    }

    // M0 = (H + K)/2, M1 = (K - H)/2, M2 = D
    let t = DMatrix::from_row_slice(3, 3, &[0.5, -0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 1.0]);
    let names = vec!["M0".into(), "M1".into(), "M2".into()];
    let m = Builtin::Sl2rHkd.algebra().basis_change("so21_from_sl2", names, &t)?;
    let gap = m.constants_distance(&Builtin::So21M.algebra())?;
    println!("sl2r_hkd -> so21_m constants distance {gap:.1e}");
    Ok(())
}
