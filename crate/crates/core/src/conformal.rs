//! Conformal mechanics as the dynamics on the upper-sheet orbit
//! `zeta0^2 - zeta1^2 - zeta2^2 = lambda^2` of so(2,1)*.
//!
//! The orbit is charted by the coset representative `w = e^{i w1 K} e^{i w2 D}`
//! and the Hamiltonian is `H = M0 - M1`. Group elements of SL(2,R) are real
//! 2x2 matrices with
//!
//! ```text
//! e^{itH} = [[1, -t], [0, 1]]   e^{i w1 K} = [[1, 0], [w1, 1]]   e^{i w2 D} = diag(e^{w2/2}, e^{-w2/2})
//! ```

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};
use serde::Serialize;

use crate::algebra::{AdjointMatrix, AlgebraVector, Builtin, DualVector, LieAlgebra};
use crate::error::{Error, Result};
use crate::integrate::rk4_step;
use crate::lie_poisson::{flow_exact, HamiltonianSpec};
use crate::trajectory::{Trajectory, TrajectoryMeta};

/// `|w2|` beyond this overflows `e^{w2}`-type terms.
pub const W2_LIMIT: f64 = 700.0;
/// Distance kept from the chart boundary `tau = +-pi` of the closed-form solution.
pub const TAU_GUARD: f64 = 0.1;
pub const DET_TOL: f64 = 1e-12;

fn positive(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Range(format!("{what} must be finite and positive, got {v}")))
    }
}

/// Point `(w1, w2)` of the orbit with parameter `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CosetCoords {
    pub w1: f64,
    pub w2: f64,
    pub lambda: f64,
}

impl CosetCoords {
    pub fn new(w1: f64, w2: f64, lambda: f64) -> Result<Self> {
        positive("lambda", lambda)?;
        let w = Self { w1, w2, lambda };
        w.check()?;
        Ok(w)
    }

    fn check(&self) -> Result<()> {
        if !(self.w1.is_finite() && self.w2.is_finite()) {
            return Err(Error::NonFinite(format!("chart point ({}, {})", self.w1, self.w2)));
        }
        if self.w2.abs() > W2_LIMIT {
            return Err(Error::Range(format!("|w2| = {} exceeds {W2_LIMIT}", self.w2.abs())));
        }
        Ok(())
    }
}

/// Canonical pair `x > 0`, `p` with `{x, p} = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CanonicalState {
    pub x: f64,
    pub p: f64,
    pub lambda: f64,
}

impl CanonicalState {
    pub fn new(x: f64, p: f64, lambda: f64) -> Result<Self> {
        positive("x", x)?;
        positive("lambda", lambda)?;
        if !p.is_finite() {
            return Err(Error::NonFinite("p".into()));
        }
        Ok(Self { x, p, lambda })
    }

    /// `p^2/2 + 2 lambda^2 / x^2`.
    pub fn hamiltonian(&self) -> f64 {
        0.5 * self.p * self.p + 2.0 * self.lambda * self.lambda / (self.x * self.x)
    }
}

/// Constants `(c1, c2)` of the trajectory through `w0 = e^{i c1 K} e^{i c2 D}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectoryParams {
    pub c1: f64,
    pub c2: f64,
    pub lambda: f64,
}

impl TrajectoryParams {
    pub fn new(c1: f64, c2: f64, lambda: f64) -> Result<Self> {
        positive("lambda", lambda)?;
        if !(c1.is_finite() && c2.is_finite()) || c2.abs() > W2_LIMIT {
            return Err(Error::Range(format!("bad trajectory constants ({c1}, {c2})")));
        }
        Ok(Self { c1, c2, lambda })
    }

    /// `e^{-c2} + c1^2 e^{c2}`.
    pub fn scale(&self) -> f64 {
        (-self.c2).exp() + self.c1 * self.c1 * self.c2.exp()
    }

    /// Time at which `tau = 0`.
    pub fn time_offset(&self) -> f64 {
        let e = (2.0 * self.c2).exp();
        self.c1 * e / (1.0 + self.c1 * self.c1 * e)
    }

    /// Conserved energy `lambda (e^{-c2} + c1^2 e^{c2})`.
    pub fn energy(&self) -> f64 {
        self.lambda * self.scale()
    }

    /// Inverse of the `t(tau)` relation.
    pub fn tau_at(&self, t: f64) -> f64 {
        2.0 * (self.scale() * (t - self.time_offset())).atan()
    }
}

/// `(zeta0, zeta1, zeta2) = lambda (ch w2 + w1^2 e^{w2}/2, sh w2 - w1^2 e^{w2}/2, -w1 e^{w2})`.
pub fn embed_w(w: &CosetCoords) -> Result<DualVector> {
    w.check()?;
    let (l, w1, e) = (w.lambda, w.w1, w.w2.exp());
    let half = 0.5 * w1 * w1 * e;
    Ok(DualVector::new(vec![
        l * (w.w2.cosh() + half),
        l * (w.w2.sinh() - half),
        -l * w1 * e,
    ]))
}

/// `{w1, w2} = -e^{-w2} / lambda`.
pub fn bracket_w(w: &CosetCoords) -> f64 {
    -(-w.w2).exp() / w.lambda
}

/// `lambda (w1^2 e^{w2} + e^{-w2})`.
pub fn hamiltonian_w(w: &CosetCoords) -> Result<f64> {
    w.check()?;
    Ok(w.lambda * (w.w1 * w.w1 * w.w2.exp() + (-w.w2).exp()))
}

/// Coefficients of `H = M0 - M1` in the (M0, M1, M2) basis.
pub fn hamiltonian_alpha() -> AlgebraVector {
    AlgebraVector::new(Builtin::So21M.conformal_hamiltonian().expect("so(2,1) has M0 - M1"))
}

/// `(dw1/dt, dw2/dt) = (e^{-2 w2} - w1^2, 2 w1)`.
pub fn eom_w(w: &CosetCoords) -> (f64, f64) {
    ((-2.0 * w.w2).exp() - w.w1 * w.w1, 2.0 * w.w1)
}

fn chart_field(lambda: f64) -> impl Fn(&[f64]) -> Vec<f64> {
    move |y: &[f64]| {
        let (a, b) = eom_w(&CosetCoords { w1: y[0], w2: y[1], lambda });
        vec![a, b]
    }
}

/// RK4 on the chart equations from `w0` at time `t0`, recording every step.
pub fn flow_chart(w0: &CosetCoords, t0: f64, duration: f64, steps: usize) -> Result<Trajectory> {
    w0.check()?;
    if steps == 0 {
        return Err(Error::Range("steps must be at least 1".into()));
    }
    positive("duration", duration)?;
    let h = duration / steps as f64;
    let meta = TrajectoryMeta {
        algebra: Builtin::So21M.name().into(),
        alpha: hamiltonian_alpha().into_inner(),
        method: "rk4-chart".into(),
        steps,
        step_size: h,
    };
    let mut tr = Trajectory::new(vec!["w1".into(), "w2".into()], meta);
    let field = chart_field(w0.lambda);
    let mut y = vec![w0.w1, w0.w2];
    tr.push(t0, y.clone())?;
    for s in 1..=steps {
        rk4_step(&field, &mut y, h);
        let t = t0 + s as f64 * h;
        if y.iter().any(|v| !v.is_finite()) || y[1].abs() > W2_LIMIT {
            return Err(Error::Integration { t, reason: "left the chart".into() });
        }
        tr.push(t, y.clone())?;
    }
    Ok(tr)
}

/// Closed-form solution: returns the chart point and the time `t(tau)`.
///
/// ```text
/// w1 = A sin(tau) / 2
/// w2 = -2 ln cos(tau/2) - ln A
/// t  = tan(tau/2) / A + c1 e^{2 c2} / (1 + c1^2 e^{2 c2}),   A = e^{-c2} + c1^2 e^{c2}
/// ```
pub fn closed_form_trajectory(params: &TrajectoryParams, tau: f64) -> Result<(CosetCoords, f64)> {
    if !tau.is_finite() || tau.abs() > PI - TAU_GUARD {
        return Err(Error::Range(format!(
            "tau = {tau} outside the chart interval |tau| <= pi - {TAU_GUARD}"
        )));
    }
    let a = params.scale();
    let half = 0.5 * tau;
    // `+ 0.0` turns the -0.0 at tau = 0 into 0.0
    let w2 = -2.0 * half.cos().ln() - a.ln() + 0.0;
    let w = CosetCoords::new(0.5 * a * tau.sin(), w2, params.lambda)?;
    Ok((w, half.tan() / a + params.time_offset()))
}

/// `x = sqrt(2 lambda) e^{w2/2}`, `p = sqrt(2 lambda) w1 e^{w2/2}`.
pub fn to_canonical(w: &CosetCoords) -> Result<CanonicalState> {
    w.check()?;
    let x = (2.0 * w.lambda).sqrt() * (0.5 * w.w2).exp();
    CanonicalState::new(x, w.w1 * x, w.lambda)
}

pub fn from_canonical(c: &CanonicalState) -> Result<CosetCoords> {
    let w2 = 2.0 * (c.x / (2.0 * c.lambda).sqrt()).ln();
    CosetCoords::new(c.p / c.x, w2, c.lambda)
}

/// Element of SL(2,R) as a real 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2Element(Matrix2<f64>);

impl Sl2Element {
    pub fn new(m: Matrix2<f64>) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("SL(2,R) matrix".into()));
        }
        let det = m.determinant();
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::InvalidState(format!("determinant {det} is not 1")));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    /// `e^{itH}`.
    pub fn time_translation(t: f64) -> Self {
        Self(Matrix2::new(1.0, -t, 0.0, 1.0))
    }

    /// `e^{iaK}`.
    pub fn special_conformal(a: f64) -> Self {
        Self(Matrix2::new(1.0, 0.0, a, 1.0))
    }

    /// `e^{iaD}`.
    pub fn dilatation(a: f64) -> Self {
        Self(Matrix2::new((0.5 * a).exp(), 0.0, 0.0, (-0.5 * a).exp()))
    }

    /// `exp(i (h H + k K + d D))`.
    pub fn exp(h: f64, k: f64, d: f64) -> Self {
        let x = Matrix2::new(0.5 * d, -h, k, -0.5 * d);
        // x^2 = -det(x) I, so the exponential is a cosh/cos combination
        let q = -x.determinant();
        let (c, s) = if q > 0.0 {
            let r = q.sqrt();
            (r.cosh(), r.sinh() / r)
        } else if q < 0.0 {
            let r = (-q).sqrt();
            (r.cos(), r.sin() / r)
        } else {
            (1.0, 1.0)
        };
        Self(Matrix2::identity() * c + x * s)
    }

    /// `e^{itH} e^{i w1 K} e^{i w2 D}`.
    pub fn chart(t: f64, w: &CosetCoords) -> Self {
        Self::time_translation(t) * Self::special_conformal(w.w1) * Self::dilatation(w.w2)
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    pub fn inverse(&self) -> Self {
        let m = self.0;
        Self(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    /// Adjoint matrix `g (iM_a) g^{-1} = D^b_a (iM_b)` in the (M0, M1, M2) basis.
    pub fn adjoint_so21(&self) -> AdjointMatrix {
        let gens = so21_generators();
        let inv = self.inverse().0;
        let mut d = DMatrix::zeros(3, 3);
        for (a, x) in gens.iter().enumerate() {
            let c = so21_coords(&(self.0 * x * inv));
            for b in 0..3 {
                d[(b, a)] = c[b];
            }
        }
        AdjointMatrix::from_matrix(d)
    }

    /// Splits `M = e^{itH} e^{i w1 K} e^{i w2 D}`; needs `M[1][1] > 0`.
    pub fn decompose(&self, lambda: f64) -> Result<(f64, CosetCoords)> {
        let (b, c, d) = (self.0[(0, 1)], self.0[(1, 0)], self.0[(1, 1)]);
        if d.is_nan() || d <= 0.0 {
            return Err(Error::Range(format!(
                "group element leaves the exponential chart (lower-right entry {d})"
            )));
        }
        Ok((-b / d, CosetCoords::new(c * d, -2.0 * d.ln(), lambda)?))
    }
}

impl std::ops::Mul for Sl2Element {
    type Output = Sl2Element;

    fn mul(self, rhs: Sl2Element) -> Sl2Element {
        Sl2Element(self.0 * rhs.0)
    }
}

// iM0, iM1, iM2 as real matrices; M0 = (H+K)/2, M1 = (K-H)/2, M2 = D.
fn so21_generators() -> [Matrix2<f64>; 3] {
    [
        Matrix2::new(0.0, -0.5, 0.5, 0.0),
        Matrix2::new(0.0, 0.5, 0.5, 0.0),
        Matrix2::new(0.5, 0.0, 0.0, -0.5),
    ]
}

fn so21_coords(x: &Matrix2<f64>) -> [f64; 3] {
    let (p, q, r) = (x[(0, 0)], x[(0, 1)], x[(1, 0)]);
    [r - q, r + q, 2.0 * p]
}

/// `g e^{itH} w = e^{it'H} w'`; the stabilizer factor is trivial for this coset.
pub fn sl2_action(g: &Sl2Element, t: f64, w: &CosetCoords) -> Result<(f64, CosetCoords)> {
    w.check()?;
    (*g * Sl2Element::chart(t, w)).decompose(w.lambda)
}

/// Cartan forms and the Kirillov potential in the chart. Each one-form is
/// stored as its `(dw1, dw2)` coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CartanKirillov {
    pub omega: [[f64; 2]; 3],
    /// `omega~ = omega^k zeta0_k`.
    pub potential: [f64; 2],
    /// Coefficient of `dw1 ^ dw2` in `d omega~`.
    pub symplectic: f64,
}

pub fn cartan_kirillov(w: &CosetCoords) -> Result<CartanKirillov> {
    w.check()?;
    let e = w.w2.exp();
    Ok(CartanKirillov {
        omega: [[e, 0.0], [e, 0.0], [0.0, 1.0]],
        potential: [w.lambda * e, 0.0],
        symplectic: -w.lambda * e,
    })
}

/// Worst-case residuals of the worked example.
#[derive(Clone, Debug, Serialize)]
pub struct ConformalReport {
    pub params: TrajectoryParams,
    pub steps: usize,
    pub duration: f64,
    pub energy: f64,
    pub energy_drift: f64,
    pub casimir_drift: f64,
    pub closed_form_residual: f64,
    pub dual_flow_residual: f64,
}

/// Integrates the chart equations from the `tau = 0` point of the closed-form
/// solution and compares against the closed form and the so(2,1) flow.
///
/// The returned trajectory has columns `w1, w2, x, p, energy`.
pub fn run_example(params: &TrajectoryParams, duration: f64, steps: usize) -> Result<(Trajectory, ConformalReport)> {
    let (w0, t0) = closed_form_trajectory(params, 0.0)?;
    let raw = flow_chart(&w0, t0, duration, steps)?;
    let so21: LieAlgebra = Builtin::So21M.algebra();
    let h = HamiltonianSpec { alpha: hamiltonian_alpha() };
    let zeta0 = embed_w(&w0)?;
    let lam2 = params.lambda * params.lambda;
    let energy = params.energy();
    let mut report = ConformalReport {
        params: *params,
        steps,
        duration,
        energy,
        energy_drift: 0.0,
        casimir_drift: 0.0,
        closed_form_residual: 0.0,
        dual_flow_residual: 0.0,
    };
    for (t, y) in raw.iter() {
        let w = CosetCoords::new(y[0], y[1], params.lambda)?;
        let z = embed_w(&w)?;
        let cas = z[0] * z[0] - z[1] * z[1] - z[2] * z[2];
        report.casimir_drift = report.casimir_drift.max((cas - lam2).abs());
        report.energy_drift = report.energy_drift.max((hamiltonian_w(&w)? - energy).abs());
        let tau = params.tau_at(t);
        if tau.abs() <= PI - TAU_GUARD {
            let (wc, _) = closed_form_trajectory(params, tau)?;
            let d = (wc.w1 - w.w1).abs().max((wc.w2 - w.w2).abs());
            report.closed_form_residual = report.closed_form_residual.max(d);
        }
        let up = flow_exact(&so21, &h, &zeta0, t - t0)?;
        report.dual_flow_residual = report.dual_flow_residual.max(up.max_abs_diff(&z));
    }
    let tr = raw.with_columns(&["x", "p", "energy"], |_, y| {
        let w = CosetCoords { w1: y[0], w2: y[1], lambda: params.lambda };
        let c = to_canonical(&w).expect("chart point checked above");
        vec![c.x, c.p, c.hamiltonian()]
    });
    Ok((tr, report))
}
