//! SL(2,R) acting on the coset chart (t, w1, w2): time translations,
//! dilatations and special conformal transformations of a trajectory.

use coadjoint::conformal::{closed_form_trajectory, eom_w, sl2_action, Sl2Element, TrajectoryParams};

fn main() -> coadjoint::Result<()> {
    let p = TrajectoryParams::new(0.2, 0.1, 1.0)?;
    let maps = [
        ("time translation", Sl2Element::time_translation(0.5)),
        ("dilatation", Sl2Element::dilatation(0.4)),
        ("special conformal", Sl2Element::special_conformal(0.1)),
    ];
    for (name, g) in maps {
        // differentiate the transformed curve in its own time and compare to the equations of motion
        let image = |tau: f64| -> coadjoint::Result<_> {
            let (w, t) = closed_form_trajectory(&p, tau)?;
            sl2_action(&g, t, &w)
        };
        let (h, tau) = (1e-5, 0.3);
        let ((tp, wp), (tm, wm), (_, w)) = (image(tau + h)?, image(tau - h)?, image(tau)?);
        let (e1, e2) = eom_w(&w);
        let r1 = (wp.w1 - wm.w1) / (tp - tm) - e1;
        let r2 = (wp.w2 - wm.w2) / (tp - tm) - e2;
        println!("{name:<18} image point ({:.4}, {:.4}); equation residual {:.1e}", w.w1, w.w2, r1.abs().max(r2.abs()));
    }

    let g = Sl2Element::exp(0.3, -0.2, 0.5);
    println!("adjoint matrix of exp(i(0.3 H - 0.2 K + 0.5 D)) on (M0, M1, M2):\n{}", g.adjoint_so21().matrix());
    Ok(())
}
