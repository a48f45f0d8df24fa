//! The N = 2, d = 3 conformal Galilei orbit through
//! `j = 0, m = 0, x_ai = zeta_a s_i` with `zeta = (lambda, 0, 0)`, `s = (0, 0, 1)`.
//!
//! Reduced coordinates are `(s, t, zeta, eta)` subject to
//! `s.s = 1`, `zeta_a zeta^a = lambda^2` (`zeta_0 > 0`), `s.t = 0`, `zeta_a eta^a = 0`.
//! Lorentz indices are raised with diag(+, -, -); `zeta` carries lower indices
//! and `eta` upper ones, so `zeta_a eta^a` is a plain sum.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use serde::Serialize;

use crate::algebra::builtin::{eps3, eps_lorentz};
use crate::algebra::{galilei_index as gi, AlgebraVector, Builtin, DualVector, LieAlgebra};
use crate::error::{check_dim, Error, Result};
use crate::integrate::rk4_step;
use crate::lie_poisson::{flow_exact, HamiltonianSpec};
use crate::trajectory::{Trajectory, TrajectoryMeta};

/// Constraint violation accepted by the checked entry points.
pub const CONSTRAINT_TOL: f64 = 1e-8;
/// Integration aborts once any constraint drifts this far.
pub const DRIFT_ABORT: f64 = 1e-4;

pub const COLUMNS: [&str; 12] = [
    "s1", "s2", "s3", "t1", "t2", "t3", "zeta0", "zeta1", "zeta2", "eta0", "eta1", "eta2",
];

/// Point of the reduced phase space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReducedState {
    pub s: Vector3<f64>,
    pub t: Vector3<f64>,
    pub zeta: Vector3<f64>,
    pub eta: Vector3<f64>,
    pub lambda: f64,
}

fn raise(v: &Vector3<f64>) -> Vector3<f64> {
    Vector3::new(v[0], -v[1], -v[2])
}

fn lorentz_sq(z: &Vector3<f64>) -> f64 {
    z[0] * z[0] - z[1] * z[1] - z[2] * z[2]
}

impl ReducedState {
    /// The base point `s = e3`, `t = 0`, `zeta = (lambda, 0, 0)`, `eta = 0`.
    pub fn base(lambda: f64) -> Result<Self> {
        let st = Self {
            s: Vector3::z(),
            t: Vector3::zeros(),
            zeta: Vector3::new(lambda, 0.0, 0.0),
            eta: Vector3::zeros(),
            lambda,
        };
        st.validate(CONSTRAINT_TOL)?;
        Ok(st)
    }

    /// Checked constructor.
    pub fn new(s: Vector3<f64>, t: Vector3<f64>, zeta: Vector3<f64>, eta: Vector3<f64>, lambda: f64) -> Result<Self> {
        let st = Self { s, t, zeta, eta, lambda };
        st.validate(CONSTRAINT_TOL)?;
        Ok(st)
    }

    /// Maps arbitrary data onto the constraint surface: normalizes `s`,
    /// rescales `zeta` onto the hyperboloid, and removes the `s`-component of
    /// `t` and the `zeta`-component of `eta`.
    pub fn project(s: Vector3<f64>, t: Vector3<f64>, zeta: Vector3<f64>, eta: Vector3<f64>, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::Range(format!("lambda must be positive, got {lambda}")));
        }
        let n = s.norm();
        let c = lorentz_sq(&zeta);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidState("s cannot be normalized".into()));
        }
        if !(c > 0.0 && zeta[0] > 0.0) {
            return Err(Error::InvalidState("zeta is not inside the future light cone".into()));
        }
        let s = s / n;
        let zeta = zeta * (lambda / c.sqrt());
        let t = t - s * s.dot(&t);
        let eta = eta - raise(&zeta) * (zeta.dot(&eta) / (lambda * lambda));
        let st = Self { s, t, zeta, eta, lambda };
        if st.as_array().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("projected state".into()));
        }
        Ok(st)
    }

    /// `[s.s - 1, zeta_a zeta^a - lambda^2, s.t, zeta_a eta^a]`.
    pub fn constraint_residuals(&self) -> [f64; 4] {
        [
            self.s.dot(&self.s) - 1.0,
            lorentz_sq(&self.zeta) - self.lambda * self.lambda,
            self.s.dot(&self.t),
            self.zeta.dot(&self.eta),
        ]
    }

    pub fn max_constraint_residual(&self) -> f64 {
        self.constraint_residuals().iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::Range(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.as_array().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("reduced state".into()));
        }
        let r = self.max_constraint_residual();
        if r > tol {
            return Err(Error::InvalidState(format!("constraint residual {r:.3e} exceeds {tol:.1e}")));
        }
        if self.zeta[0] <= 0.0 {
            return Err(Error::InvalidState("zeta_0 must be positive (upper sheet)".into()));
        }
        Ok(())
    }

    /// Coordinates in the order `s, t, zeta, eta`.
    pub fn as_array(&self) -> [f64; 12] {
        let mut y = [0.0; 12];
        for i in 0..3 {
            y[i] = self.s[i];
            y[3 + i] = self.t[i];
            y[6 + i] = self.zeta[i];
            y[9 + i] = self.eta[i];
        }
        y
    }

    /// Inverse of [`ReducedState::as_array`]; no constraint check.
    pub fn from_slice(y: &[f64], lambda: f64) -> Result<Self> {
        check_dim(12, y.len())?;
        let v = |o: usize| Vector3::new(y[o], y[o + 1], y[o + 2]);
        Ok(Self { s: v(0), t: v(3), zeta: v(6), eta: v(9), lambda })
    }
}

/// A point `j_i J^i + m_a M^a + x_ai X^ai` of the 15-dimensional dual space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FullDualPoint {
    pub j: Vector3<f64>,
    pub m: Vector3<f64>,
    /// `x[(a, i)] = x_ai`.
    pub x: Matrix3<f64>,
}

impl FullDualPoint {
    pub fn to_dual(&self) -> DualVector {
        let mut v = vec![0.0; gi::DIM];
        for i in 0..3 {
            v[gi::j(i)] = self.j[i];
            v[gi::m(i)] = self.m[i];
            for a in 0..3 {
                v[gi::x(a, i)] = self.x[(a, i)];
            }
        }
        DualVector::new(v)
    }

    pub fn from_dual(z: &DualVector) -> Result<Self> {
        check_dim(gi::DIM, z.dim())?;
        Ok(Self {
            j: Vector3::from_fn(|i, _| z[gi::j(i)]),
            m: Vector3::from_fn(|a, _| z[gi::m(a)]),
            x: Matrix3::from_fn(|a, i| z[gi::x(a, i)]),
        })
    }
}

/// Parameter `z^a_i` of the abelian element `exp(i z^a_i X_ai)`; `z[(a, i)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbelianShift {
    pub z: Matrix3<f64>,
}

impl AbelianShift {
    pub fn new(z: Matrix3<f64>) -> Result<Self> {
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("abelian shift".into()));
        }
        Ok(Self { z })
    }
}

// A(zeta)^a_b = eps_ab^c zeta_c, so that m = A eta.
fn m_matrix(zeta: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|a, b| (0..3).map(|c| eps_lorentz(a, b, c) * zeta[c]).sum())
}

fn embed_unchecked(st: &ReducedState) -> FullDualPoint {
    FullDualPoint { j: st.s.cross(&st.t), m: m_matrix(&st.zeta) * st.eta, x: st.zeta * st.s.transpose() }
}

/// `m_a = eps_ab^c eta^b zeta_c`, `j = s x t`, `x_ai = zeta_a s_i`.
pub fn embed_reduced(state: &ReducedState) -> Result<FullDualPoint> {
    state.validate(CONSTRAINT_TOL)?;
    Ok(embed_unchecked(state))
}

/// Recovers reduced coordinates from a point of the orbit.
pub fn pullback(point: &FullDualPoint, lambda: f64) -> Result<ReducedState> {
    let x = point.x;
    let (row, norm) = (0..3)
        .map(|a| (a, x.row(a).norm()))
        .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if norm == 0.0 {
        return Err(Error::InvalidState("x vanishes; point is off this orbit".into()));
    }
    let mut s: Vector3<f64> = x.row(row).transpose() / norm;
    let mut zeta = x * s;
    if zeta[0] < 0.0 {
        s = -s;
        zeta = -zeta;
    }
    let t = point.j.cross(&s);
    // m = A(zeta) eta together with zeta . eta = 0, solved in least squares
    let a = m_matrix(&zeta);
    let mut sys = DMatrix::zeros(4, 3);
    let mut rhs = DVector::zeros(4);
    for r in 0..3 {
        for c in 0..3 {
            sys[(r, c)] = a[(r, c)];
        }
        sys[(3, r)] = zeta[r];
        rhs[r] = point.m[r];
    }
    let sol = sys
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::InvalidState(format!("pullback solve failed: {e}")))?;
    let st = ReducedState { s, t, zeta, eta: Vector3::new(sol[0], sol[1], sol[2]), lambda };
    st.validate(CONSTRAINT_TOL)?;
    Ok(st)
}

/// The Poisson tensor formula evaluated at arbitrary ambient coordinates
/// `y = (s, t, zeta, eta)`, without any constraint check. Useful for
/// derivatives of the tensor.
pub fn bracket_ambient(y: &[f64], lambda: f64) -> Result<DMatrix<f64>> {
    check_dim(12, y.len())?;
    Ok(bracket_unchecked(y, lambda))
}

fn bracket_unchecked(y: &[f64], lambda: f64) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(12, 12);
    let l2 = lambda * lambda;
    let s = &y[0..3];
    let t = &y[3..6];
    let zeta = Vector3::new(y[6], y[7], y[8]);
    let zu = raise(&zeta);
    let eta = &y[9..12];
    let mut set = |i: usize, j: usize, v: f64| {
        b[(i, j)] = v;
        b[(j, i)] = -v;
    };
    for i in 0..3 {
        for k in 0..3 {
            let d = if i == k { 1.0 } else { 0.0 };
            set(i, 3 + k, d - s[i] * s[k]);
            set(6 + i, 9 + k, d - zeta[i] * zu[k] / l2);
            if i < k {
                set(3 + i, 3 + k, t[i] * s[k] - t[k] * s[i]);
                set(9 + i, 9 + k, (eta[i] * zu[k] - eta[k] * zu[i]) / l2);
            }
        }
    }
    b
}

/// Poisson tensor on `(s, t, zeta, eta)`.
pub fn bracket_reduced(state: &ReducedState) -> Result<DMatrix<f64>> {
    state.validate(CONSTRAINT_TOL)?;
    Ok(bracket_unchecked(&state.as_array(), state.lambda))
}

// Coefficients of H = M0 - M1 on the m-block.
const H_M: [f64; 3] = [1.0, -1.0, 0.0];

fn hamiltonian_unchecked(y: &[f64]) -> f64 {
    let zeta = Vector3::new(y[6], y[7], y[8]);
    let eta = Vector3::new(y[9], y[10], y[11]);
    Vector3::from(H_M).dot(&(m_matrix(&zeta) * eta))
}

/// `H = m0 - m1 = eta^2 zeta_1 - eta^1 zeta_2 - eta^0 zeta_2 - eta^2 zeta_0`.
pub fn hamiltonian_reduced(state: &ReducedState) -> Result<f64> {
    state.validate(CONSTRAINT_TOL)?;
    Ok(hamiltonian_unchecked(&state.as_array()))
}

fn hamiltonian_gradient(y: &[f64]) -> [f64; 12] {
    let mut g = [0.0; 12];
    for (a, h) in H_M.iter().enumerate() {
        for b in 0..3 {
            for c in 0..3 {
                let e = h * eps_lorentz(a, b, c);
                if e != 0.0 {
                    g[9 + b] += e * y[6 + c];
                    g[6 + c] += e * y[9 + b];
                }
            }
        }
    }
    g
}

fn eom_unchecked(y: &[f64], lambda: f64) -> Vec<f64> {
    let b = bracket_unchecked(y, lambda);
    let g = DVector::from_row_slice(&hamiltonian_gradient(y));
    (b * g).iter().copied().collect()
}

/// `dy/dt = B(y) grad H(y)`.
pub fn eom_reduced(state: &ReducedState) -> Result<[f64; 12]> {
    state.validate(CONSTRAINT_TOL)?;
    let v = eom_unchecked(&state.as_array(), state.lambda);
    let mut out = [0.0; 12];
    out.copy_from_slice(&v);
    Ok(out)
}

/// RK4 on the reduced equations. With `project`, every step is mapped back
/// onto the constraint surface.
///
/// Columns: `s1..eta2, energy, constraint_residual_max`.
pub fn flow_reduced(state: &ReducedState, t_final: f64, steps: usize, project: bool) -> Result<Trajectory> {
    state.validate(CONSTRAINT_TOL)?;
    if steps == 0 {
        return Err(Error::Range("steps must be at least 1".into()));
    }
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(Error::Range(format!("t_final must be finite and positive, got {t_final}")));
    }
    let lambda = state.lambda;
    let h = t_final / steps as f64;
    let mut columns: Vec<String> = COLUMNS.iter().map(|c| c.to_string()).collect();
    columns.push("energy".into());
    columns.push("constraint_residual_max".into());
    let meta = TrajectoryMeta {
        algebra: Builtin::GalileiN2D3.name().into(),
        alpha: Builtin::GalileiN2D3.conformal_hamiltonian().expect("galilei has M0 - M1"),
        method: if project { "rk4-projected" } else { "rk4" }.into(),
        steps,
        step_size: h,
    };
    let mut tr = Trajectory::new(columns, meta);
    let row = |st: &ReducedState| {
        let mut r = st.as_array().to_vec();
        r.push(hamiltonian_unchecked(&r));
        r.push(st.max_constraint_residual());
        r
    };
    tr.push(0.0, row(state))?;
    let field = |y: &[f64]| eom_unchecked(y, lambda);
    let mut y = state.as_array();
    for k in 1..=steps {
        rk4_step(&field, &mut y, h);
        let t = k as f64 * h;
        let mut st = ReducedState::from_slice(&y, lambda)?;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Integration { t, reason: "non-finite state".into() });
        }
        let drift = st.max_constraint_residual();
        if drift > DRIFT_ABORT {
            return Err(Error::Integration {
                t,
                reason: format!("constraint drift {drift:.3e} exceeds {DRIFT_ABORT:.0e}; reduce the step size"),
            });
        }
        if project {
            st = ReducedState::project(st.s, st.t, st.zeta, st.eta, lambda)
                .map_err(|e| Error::Integration { t, reason: e.to_string() })?;
            y = st.as_array();
        }
        tr.push(t, row(&st))?;
    }
    Ok(tr)
}

/// Action of `exp(i z^a_i X_ai)`: `s`, `zeta` fixed,
/// `t' = t + (1 - s s^T) z^T zeta`, `eta' = eta + (1 - zeta^up zeta^T / lambda^2) z s`.
pub fn abelian_action(state: &ReducedState, shift: &AbelianShift) -> Result<ReducedState> {
    state.validate(CONSTRAINT_TOL)?;
    let (s, zeta, l2) = (state.s, state.zeta, state.lambda * state.lambda);
    let zt = shift.z.transpose() * zeta;
    let t = state.t + zt - s * s.dot(&zt);
    let zs = shift.z * s;
    let eta = state.eta + zs - raise(&zeta) * (zeta.dot(&zs) / l2);
    Ok(ReducedState { t, eta, ..*state })
}

/// Parameters of `g = e^{i omega^a M_a} e^{i eta_i J_i} e^{i y^a_i X_ai}`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GroupParams {
    pub omega: Vector3<f64>,
    pub eta: Vector3<f64>,
    /// `y[(a, i)] = y^a_i`.
    pub y: Matrix3<f64>,
}

impl GroupParams {
    fn check(&self) -> Result<()> {
        if self.omega.iter().chain(self.eta.iter()).chain(self.y.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("group parameters".into()));
        }
        Ok(())
    }

    /// Generator coefficients of each factor in the 15-dimensional algebra.
    pub fn factors(&self) -> [AlgebraVector; 3] {
        let mut om = vec![0.0; gi::DIM];
        let mut et = vec![0.0; gi::DIM];
        let mut y = vec![0.0; gi::DIM];
        for i in 0..3 {
            om[gi::m(i)] = self.omega[i];
            et[gi::j(i)] = self.eta[i];
            for a in 0..3 {
                y[gi::x(a, i)] = self.y[(a, i)];
            }
        }
        [AlgebraVector::new(om), AlgebraVector::new(et), AlgebraVector::new(y)]
    }
}

/// 3x3 block of `exp(-G)` for a generator supported on one block.
fn inverse_block(alg: &LieAlgebra, xi: &AlgebraVector, offset: usize) -> Result<Matrix3<f64>> {
    let d = alg.exp_adjoint(xi, -1.0)?;
    Ok(Matrix3::from_fn(|r, c| d.matrix()[(offset + r, offset + c)]))
}

/// Coadjoint action of `g` in closed form:
///
/// ```text
/// x'_bj = (R^-1)_kj (L^-1)^a_b x_ak
/// j'_j  = (R^-1)_kj (j_k - eps_kil y^a_i x_al)
/// m'_a  = (L^-1)^b_a (m_b + eps_bc^r y^c_i x_ri)
/// ```
pub fn coadjoint_full(params: &GroupParams, point: &FullDualPoint) -> Result<FullDualPoint> {
    params.check()?;
    let alg = Builtin::GalileiN2D3.algebra();
    let [om, et, _] = params.factors();
    let r_inv = inverse_block(&alg, &et, gi::j(0))?;
    let l_inv = inverse_block(&alg, &om, gi::m(0))?;
    let (x, y) = (point.x, params.y);

    let x_new = l_inv.transpose() * x * r_inv;
    let mut j_shift = Vector3::zeros();
    let mut m_shift = Vector3::zeros();
    for k in 0..3 {
        for i in 0..3 {
            for l in 0..3 {
                let e = eps3(k, i, l);
                if e != 0.0 {
                    j_shift[k] += e * (0..3).map(|a| y[(a, i)] * x[(a, l)]).sum::<f64>();
                }
            }
        }
    }
    for b in 0..3 {
        for c in 0..3 {
            for r in 0..3 {
                let e = eps_lorentz(b, c, r);
                if e != 0.0 {
                    m_shift[b] += e * (0..3).map(|i| y[(c, i)] * x[(r, i)]).sum::<f64>();
                }
            }
        }
    }
    Ok(FullDualPoint {
        j: r_inv.transpose() * (point.j - j_shift),
        m: l_inv.transpose() * (point.m + m_shift),
        x: x_new,
    })
}

/// Residuals of the worked example.
#[derive(Clone, Debug, Serialize)]
pub struct GalileiReport {
    pub lambda: f64,
    pub t_final: f64,
    pub steps: usize,
    pub project: bool,
    pub max_constraint_drift: f64,
    pub energy_drift: f64,
    /// Max-norm distance between the embedded reduced endpoint and the exact
    /// 15-dimensional flow of the embedded initial point.
    pub full_vs_reduced: f64,
    /// Largest drift of the full algebra's Casimirs along the embedded path.
    pub casimir_drift: f64,
}

/// Integrates the reduced system and compares against the full linear flow.
pub fn run_example(state: &ReducedState, t_final: f64, steps: usize, project: bool) -> Result<(Trajectory, GalileiReport)> {
    let tr = flow_reduced(state, t_final, steps, project)?;
    let alg = Builtin::GalileiN2D3.algebra();
    let h = HamiltonianSpec::new(Builtin::GalileiN2D3.conformal_hamiltonian().expect("galilei has M0 - M1"));
    let z0 = embed_unchecked(state).to_dual();
    let casimirs = Builtin::GalileiN2D3.casimirs();
    let c0: Vec<f64> = casimirs.iter().map(|c| c.value(z0.coeffs())).collect();
    let e0 = hamiltonian_unchecked(&state.as_array());
    let mut report = GalileiReport {
        lambda: state.lambda,
        t_final,
        steps,
        project,
        max_constraint_drift: 0.0,
        energy_drift: 0.0,
        full_vs_reduced: 0.0,
        casimir_drift: 0.0,
    };
    for (_, row) in tr.iter() {
        report.max_constraint_drift = report.max_constraint_drift.max(row[13]);
        report.energy_drift = report.energy_drift.max((row[12] - e0).abs());
        let z = embed_unchecked(&ReducedState::from_slice(&row[..12], state.lambda)?).to_dual();
        for (c, v0) in casimirs.iter().zip(&c0) {
            report.casimir_drift = report.casimir_drift.max((c.value(z.coeffs()) - v0).abs());
        }
    }
    let (t_end, last) = tr.last().expect("trajectory has at least two samples");
    let end = embed_unchecked(&ReducedState::from_slice(&last[..12], state.lambda)?).to_dual();
    report.full_vs_reduced = flow_exact(&alg, &h, &z0, t_end)?.max_abs_diff(&end);
    Ok((tr, report))
}
