//! N=2 conformal Galilei dynamics on the reduced phase space (s, t, zeta, eta),
//! compared with the exact 15-dimensional Lie-Poisson flow.

use coadjoint::galilei::{run_example, ReducedState};
use nalgebra::Vector3;

fn main() -> coadjoint::Result<()> {
    let st = ReducedState::project(
        Vector3::new(0.2, -0.5, 0.8),
        Vector3::new(0.4, 0.1, 0.3),
        Vector3::new(1.5, 0.3, -0.6),
        Vector3::new(0.2, 0.7, -0.1),
        1.2,
    )?;
    let (tr, rep) = run_example(&st, 2.0, 10_000, false)?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "t", "zeta0", "zeta1", "zeta2", "energy");
    for (t, s) in tr.iter().step_by(2000) {
        println!("{t:>6.2} {:>10.5} {:>10.5} {:>10.5} {:>10.5}", s[6], s[7], s[8], s[12]);
    }
    println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
    Ok(())
}
