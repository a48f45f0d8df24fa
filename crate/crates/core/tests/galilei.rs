mod common;

use coadjoint::algebra::{Builtin, DualVector};
use coadjoint::galilei::*;
use coadjoint::lie_poisson::{flow_exact, time_dep_generators, vector_field, HamiltonianSpec};
use coadjoint::Error;
use common::*;
use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use rand::Rng;

const LAMBDA: f64 = 1.3;

/// Embedding written from the so(2,1) constants: `m_a = -c_ab^c eta^b zeta_c`,
/// `j = s x t`, `x_ai = zeta_a s_i`, in the 15-dimensional layout.
fn embed_oracle(y: &[f64]) -> Vec<f64> {
    let so21 = Builtin::So21M.algebra();
    let (s, t, zeta, eta) = (&y[0..3], &y[3..6], &y[6..9], &y[9..12]);
    let mut out = vec![0.0; 15];
    out[0] = s[1] * t[2] - s[2] * t[1];
    out[1] = s[2] * t[0] - s[0] * t[2];
    out[2] = s[0] * t[1] - s[1] * t[0];
    for a in 0..3 {
        out[3 + a] = -(0..3).flat_map(|b| (0..3).map(move |c| (b, c))).map(|(b, c)| so21.c(a, b, c) * eta[b] * zeta[c]).sum::<f64>();
        for i in 0..3 {
            out[6 + 3 * a + i] = zeta[a] * s[i];
        }
    }
    out
}

fn hamiltonian_spec() -> HamiltonianSpec {
    HamiltonianSpec::new(Builtin::GalileiN2D3.conformal_hamiltonian().unwrap())
}

fn random_full_point(r: &mut impl Rng) -> FullDualPoint {
    FullDualPoint::from_dual(&DualVector::new(uniform_vec(r, 15, 1.0))).unwrap()
}

#[test]
fn embedding_matches_oracle() {
    let mut r = rng(61);
    for _ in 0..50 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let e = embed_reduced(&st).unwrap().to_dual();
        let o = embed_oracle(&st.as_array());
        assert!(max_abs(e.coeffs().iter().zip(&o).map(|(a, b)| a - b)) < 1e-13);
    }
}

#[test]
fn reduced_bracket_pushes_forward_to_the_algebra_bracket() {
    let alg = Builtin::GalileiN2D3.algebra();
    let mut r = rng(62);
    for _ in 0..20 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let y = st.as_array();
        let j = jacobian(embed_oracle, &y, 1e-6);
        let b = bracket_reduced(&st).unwrap();
        let pushed = &j * b * j.transpose();
        let target = bracket_oracle(&alg, &embed_oracle(&y));
        assert!(mat_max_abs_diff(&pushed, &target) < 1e-7, "{}", mat_max_abs_diff(&pushed, &target));
    }
}

#[test]
fn reduced_bracket_satisfies_jacobi() {
    let mut r = rng(63);
    for _ in 0..10 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let y = st.as_array();
        let b = bracket_reduced(&st).unwrap();
        let h = 1e-6;
        // dB[l] = d B / d y_l
        let db: Vec<DMatrix<f64>> = (0..12)
            .map(|l| {
                let (mut yp, mut ym) = (y, y);
                yp[l] += h;
                ym[l] -= h;
                (bracket_ambient(&yp, LAMBDA).unwrap() - bracket_ambient(&ym, LAMBDA).unwrap()) / (2.0 * h)
            })
            .collect();
        let mut worst = 0.0f64;
        for i in 0..12 {
            for j in 0..12 {
                for k in 0..12 {
                    let v: f64 = (0..12)
                        .map(|l| b[(i, l)] * db[l][(j, k)] + b[(j, l)] * db[l][(k, i)] + b[(k, l)] * db[l][(i, j)])
                        .sum();
                    worst = worst.max(v.abs());
                }
            }
        }
        assert!(worst < 1e-7, "jacobi residual {worst}");
    }
}

#[test]
fn constraints_are_casimirs_and_flow_is_tangent() {
    let mut r = rng(64);
    for _ in 0..20 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let y = st.as_array();
        let b = bracket_reduced(&st).unwrap();
        let constraints = |y: &[f64]| {
            ReducedState::from_slice(y, LAMBDA).unwrap().constraint_residuals().to_vec()
        };
        let jc = jacobian(constraints, &y, 1e-6);
        assert!(max_abs((&jc * &b).iter().copied()) < 1e-8);
        let v = DVector::from_row_slice(&eom_reduced(&st).unwrap());
        assert!(max_abs((&jc * v).iter().copied()) < 1e-8);
    }
}

#[test]
fn reduced_equations_push_forward_to_the_linear_flow() {
    let alg = Builtin::GalileiN2D3.algebra();
    let h = hamiltonian_spec();
    let mut r = rng(65);
    for _ in 0..20 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let y = st.as_array();
        let j = jacobian(embed_oracle, &y, 1e-6);
        let pushed = j * DVector::from_row_slice(&eom_reduced(&st).unwrap());
        let target = vector_field(&alg, &h, &DualVector::new(embed_oracle(&y))).unwrap();
        assert!(max_abs(pushed.iter().zip(target.coeffs()).map(|(a, b)| a - b)) < 1e-7);
    }
}

#[test]
fn hamiltonian_matches_embedded_m0_minus_m1() {
    let mut r = rng(66);
    for _ in 0..20 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let p = embed_reduced(&st).unwrap();
        let h = hamiltonian_reduced(&st).unwrap();
        assert!((h - (p.m[0] - p.m[1])).abs() < 1e-13);
        let (z, e) = (st.zeta, st.eta);
        let explicit = e[2] * z[1] - e[1] * z[2] - e[0] * z[2] - e[2] * z[0];
        assert!((h - explicit).abs() < 1e-13);
        // the alternative sign on the eta^0 zeta_2 term is not the embedded generator
        let flipped = e[2] * z[1] - e[1] * z[2] + e[0] * z[2] - e[2] * z[0];
        if (e[0] * z[2]).abs() > 1e-3 {
            assert!((h - flipped).abs() > 1e-6);
        }
    }
}

#[test]
fn reduced_flow_matches_full_flow() {
    let mut r = rng(67);
    for _ in 0..20 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let (tr, rep) = run_example(&st, 1.0, 2000, false).unwrap();
        assert_eq!(tr.len(), 2001);
        assert!(rep.full_vs_reduced < 1e-8, "{rep:?}");
        assert!(rep.max_constraint_drift < 1e-8);
        assert!(rep.energy_drift < 1e-9);
        assert!(rep.casimir_drift < 1e-8);
    }
}

#[test]
fn projection_keeps_constraints_tight() {
    let mut r = rng(68);
    let st = random_reduced_state(&mut r, LAMBDA);
    let (_, rep) = run_example(&st, 2.0, 200, true).unwrap();
    assert!(rep.max_constraint_drift < 1e-12);
}

#[test]
fn large_steps_abort_on_constraint_drift() {
    let st = ReducedState::project(
        Vector3::z(),
        Vector3::zeros(),
        Vector3::new(3.0, 2.0, 1.5),
        Vector3::new(10.0, 30.0, -20.0),
        LAMBDA,
    )
    .unwrap();
    match flow_reduced(&st, 100.0, 2, false) {
        Err(Error::Integration { reason, .. }) => assert!(reason.contains("drift")),
        other => panic!("expected abort, got {other:?}"),
    }
    assert!(flow_reduced(&st, 1.0, 0, false).is_err());
}

#[test]
fn invalid_states_are_rejected() {
    let bad = ReducedState { s: Vector3::new(1.0, 1.0, 0.0), ..ReducedState::base(1.0).unwrap() };
    assert!(matches!(embed_reduced(&bad), Err(Error::InvalidState(_))));
    let lower = ReducedState { zeta: Vector3::new(-1.0, 0.0, 0.0), ..ReducedState::base(1.0).unwrap() };
    assert!(lower.validate(CONSTRAINT_TOL).is_err());
    assert!(ReducedState::base(0.0).is_err());
    assert!(ReducedState::project(Vector3::zeros(), Vector3::zeros(), Vector3::x(), Vector3::zeros(), 1.0).is_err());
}

fn random_shift(r: &mut impl Rng) -> AbelianShift {
    AbelianShift::new(Matrix3::from_iterator(uniform_vec(r, 9, 1.0))).unwrap()
}

#[test]
fn abelian_action_properties() {
    let mut r = rng(69);
    for _ in 0..20 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let (z1, z2) = (random_shift(&mut r), random_shift(&mut r));
        let a = abelian_action(&st, &z1).unwrap();
        assert!(a.max_constraint_residual() < 1e-12);
        assert_eq!((a.s, a.zeta), (st.s, st.zeta));
        let twice = abelian_action(&a, &z2).unwrap();
        let once = abelian_action(&st, &AbelianShift::new(z1.z + z2.z).unwrap()).unwrap();
        assert!(max_abs(twice.as_array().iter().zip(once.as_array()).map(|(x, y)| x - y)) < 1e-12);
        // agrees with the coadjoint action of exp(i z X) on the embedded point
        let full = coadjoint_full(&GroupParams { y: z1.z, ..Default::default() }, &embed_reduced(&st).unwrap()).unwrap();
        let emb = embed_reduced(&a).unwrap();
        assert!(max_abs(full.to_dual().coeffs().iter().zip(emb.to_dual().coeffs()).map(|(x, y)| x - y)) < 1e-12);
    }
}

#[test]
fn abelian_action_preserves_the_bracket() {
    let mut r = rng(70);
    for _ in 0..10 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let z = random_shift(&mut r);
        let img = abelian_action(&st, &z).unwrap();
        // pushing the bracket forward through the action gives the bracket at the image
        let map = |y: &[f64]| {
            let p = FullDualPoint::from_dual(&DualVector::new(embed_oracle(y))).unwrap();
            coadjoint_full(&GroupParams { y: z.z, ..Default::default() }, &p).unwrap().to_dual().into_inner()
        };
        let y = st.as_array();
        let j = jacobian(map, &y, 1e-6);
        let pushed = &j * bracket_reduced(&st).unwrap() * j.transpose();
        let je = jacobian(embed_oracle, &img.as_array(), 1e-6);
        let target = &je * bracket_reduced(&img).unwrap() * je.transpose();
        assert!(mat_max_abs_diff(&pushed, &target) < 1e-7);
    }
}

#[test]
fn closed_form_coadjoint_action_matches_generic() {
    let alg = Builtin::GalileiN2D3.algebra();
    let mut r = rng(71);
    for _ in 0..50 {
        let params = GroupParams {
            omega: Vector3::from_iterator(uniform_vec(&mut r, 3, 0.8)),
            eta: Vector3::from_iterator(uniform_vec(&mut r, 3, 1.5)),
            y: Matrix3::from_iterator(uniform_vec(&mut r, 9, 1.0)),
        };
        let [om, et, y] = params.factors();
        let d = alg
            .exp_adjoint(&om, 1.0)
            .unwrap()
            .compose(&alg.exp_adjoint(&et, 1.0).unwrap())
            .compose(&alg.exp_adjoint(&y, 1.0).unwrap());
        let p = random_full_point(&mut r);
        let generic = alg.coadjoint_apply(&d, &p.to_dual()).unwrap();
        let closed = coadjoint_full(&params, &p).unwrap().to_dual();
        assert!(generic.max_abs_diff(&closed) < 1e-11);
    }
}

#[test]
fn rotations_act_as_vectors() {
    let mut r = rng(72);
    let th = 0.9;
    let p = random_full_point(&mut r);
    let q = coadjoint_full(&GroupParams { eta: Vector3::new(0.0, 0.0, th), ..Default::default() }, &p).unwrap();
    // rotation about the third axis leaves the third components alone and preserves lengths
    assert!((q.j[2] - p.j[2]).abs() < 1e-14);
    assert!((q.j.norm() - p.j.norm()).abs() < 1e-13);
    for a in 0..3 {
        assert!((q.x[(a, 2)] - p.x[(a, 2)]).abs() < 1e-14);
        assert!((q.x.row(a).norm() - p.x.row(a).norm()).abs() < 1e-13);
    }
    assert!((q.m - p.m).amax() < 1e-14);
    // boosts by y shift j by -eps y x and m, but leave x fixed
    let yz = Matrix3::from_iterator(uniform_vec(&mut r, 9, 1.0));
    let q = coadjoint_full(&GroupParams { y: yz, ..Default::default() }, &p).unwrap();
    assert_eq!(q.x, p.x);
    let mut shift = Vector3::zeros();
    for a in 0..3 {
        shift += Vector3::from(yz.row(a).transpose()).cross(&Vector3::from(p.x.row(a).transpose()));
    }
    assert!((q.j - (p.j - shift)).amax() < 1e-13);
}

#[test]
fn pullback_round_trip() {
    let mut r = rng(73);
    for _ in 0..50 {
        let st = random_reduced_state(&mut r, LAMBDA);
        let back = pullback(&embed_reduced(&st).unwrap(), LAMBDA).unwrap();
        let e1 = embed_reduced(&back).unwrap().to_dual();
        let e0 = embed_reduced(&st).unwrap().to_dual();
        assert!(e1.max_abs_diff(&e0) < 1e-11);
        // s is recovered up to the sign fixed by zeta_0 > 0, which is already positive
        assert!((back.s - st.s).amax() < 1e-12);
        assert!((back.eta - st.eta).amax() < 1e-11);
    }
    let zero = FullDualPoint { j: Vector3::zeros(), m: Vector3::zeros(), x: Matrix3::zeros() };
    assert!(pullback(&zero, 1.0).is_err());
}

#[test]
fn time_dependent_generators_are_constant_along_the_reduced_flow() {
    let alg = Builtin::GalileiN2D3.algebra();
    let h = hamiltonian_spec();
    let mut r = rng(74);
    let st = random_reduced_state(&mut r, LAMBDA);
    let z0 = embed_reduced(&st).unwrap().to_dual();
    let tr = flow_reduced(&st, 1.5, 3000, false).unwrap();
    for (k, (t, row)) in tr.iter().enumerate() {
        if k % 300 != 0 {
            continue;
        }
        let z = DualVector::new(embed_oracle(&row[..12]));
        let x = time_dep_generators(&alg, &h, &z, t).unwrap();
        assert!(x.max_abs_diff(&z0) < 1e-8, "t={t}: {}", x.max_abs_diff(&z0));
        let full = flow_exact(&alg, &h, &z0, t).unwrap();
        assert!(full.max_abs_diff(&z) < 1e-8);
    }
}

#[test]
fn base_state_values() {
    let lam = 2.0;
    let st = ReducedState::base(lam).unwrap();
    let p = embed_reduced(&st).unwrap();
    assert_eq!(p.j, Vector3::zeros());
    assert_eq!(p.m, Vector3::zeros());
    let mut x = Matrix3::zeros();
    x[(0, 2)] = lam;
    assert_eq!(p.x, x);
    let b = bracket_reduced(&st).unwrap();
    assert_eq!(b[(0, 3)], 1.0);
    assert_eq!(b[(2, 5)], 0.0);
    assert_eq!(hamiltonian_reduced(&st).unwrap(), 0.0);
    let v = eom_reduced(&st).unwrap();
    assert_eq!(&v[..6], &[0.0; 6]);
    assert_eq!(&v[6..9], &[0.0, 0.0, -lam]);
    assert_eq!(&v[9..], &[0.0; 3]);
}

#[test]
fn s_and_t_stay_constant_along_the_flow() {
    let mut r = rng(75);
    let st = random_reduced_state(&mut r, LAMBDA);
    let tr = flow_reduced(&st, 1.0, 500, false).unwrap();
    let (_, last) = tr.last().unwrap();
    let y0 = st.as_array();
    assert!(max_abs((0..6).map(|i| last[i] - y0[i])) < 1e-14);
    for (_, row) in tr.iter() {
        let z = Vector3::new(row[6], row[7], row[8]);
        assert!((z[0] * z[0] - z[1] * z[1] - z[2] * z[2] - LAMBDA * LAMBDA).abs() < 1e-9);
    }
}
