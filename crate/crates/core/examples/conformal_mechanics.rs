//! Conformal mechanics H = p^2/2 + 2 lambda^2/x^2 from the so(2,1) orbit:
//! chart integration against the closed-form solution.
//!
//! Usage: `cargo run --example conformal_mechanics -- [c1] [c2] [lambda]`

use coadjoint::conformal::{run_example, TrajectoryParams};

fn main() -> coadjoint::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let get = |i: usize, d: f64| args.get(i).copied().unwrap_or(d);
    let params = TrajectoryParams::new(get(0, 0.5), get(1, -0.2), get(2, 1.0))?;

    let (tr, rep) = run_example(&params, 4.0, 8000)?;
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "t", "w1", "w2", "x", "p");
    for (t, s) in tr.iter().step_by(1000) {
        println!("{t:>8.3} {:>10.5} {:>10.5} {:>10.5} {:>10.5}", s[0], s[1], s[2], s[3]);
    }
    println!("energy {:.6}", rep.energy);
    println!("energy drift {:.1e}, casimir drift {:.1e}", rep.energy_drift, rep.casimir_drift);
    println!("closed form residual {:.1e}, so(2,1) flow residual {:.1e}", rep.closed_form_residual, rep.dual_flow_residual);
    Ok(())
}
