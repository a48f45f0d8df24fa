//! Lie-Poisson structure on the dual of a Lie algebra and the dynamics of a
//! Hamiltonian that is itself an algebra element.
//!
//! With `H = alpha^i X_i` the equations of motion `zeta_j' = c_ji^k alpha^i zeta_k`
//! are linear, and their solution is `zeta_j(t) = D^i_j(exp(i t H)) zeta_i(0)`.
//! [`flow_exact`] evaluates that propagator; [`flow_rk4`] integrates the same
//! equations numerically and serves as an independent check.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::algebra::{pairing, AdjointMatrix, AlgebraVector, DualVector, LieAlgebra};
use crate::error::{check_dim, check_finite, Error, Result};
use crate::integrate::rk4_step;
use crate::trajectory::{Trajectory, TrajectoryMeta};

type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradientFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A function on the dual space together with its gradient `df/dzeta_i`.
#[derive(Clone)]
pub struct Observable {
    name: String,
    value: Arc<ValueFn>,
    gradient: Arc<GradientFn>,
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Observable").field("name", &self.name).finish()
    }
}

impl Observable {
    pub fn new<V, G>(name: impl Into<String>, value: V, gradient: G) -> Self
    where
        V: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Self { name: name.into(), value: Arc::new(value), gradient: Arc::new(gradient) }
    }

    /// The coordinate function `zeta_i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        Self::new(
            format!("zeta_{i}"),
            move |z: &[f64]| z[i],
            move |_: &[f64]| {
                let mut g = vec![0.0; dim];
                g[i] = 1.0;
                g
            },
        )
    }

    /// `zeta -> coeffs^i zeta_i`.
    pub fn linear(name: impl Into<String>, coeffs: Vec<f64>) -> Self {
        let c2 = coeffs.clone();
        Self::new(
            name,
            move |z: &[f64]| z.iter().zip(&coeffs).map(|(a, b)| a * b).sum(),
            move |_: &[f64]| c2.clone(),
        )
    }

    /// `zeta -> zeta^T Q zeta`.
    pub fn quadratic(name: impl Into<String>, q: DMatrix<f64>) -> Self {
        let sym = &q + q.transpose();
        Self::new(
            name,
            move |z: &[f64]| {
                let v = nalgebra::DVector::from_column_slice(z);
                v.dot(&(&q * &v))
            },
            move |z: &[f64]| {
                let v = nalgebra::DVector::from_column_slice(z);
                (&sym * v).iter().copied().collect()
            },
        )
    }

    /// Pointwise product `f g`.
    pub fn product(f: &Observable, g: &Observable) -> Self {
        let (f1, g1, f2, g2) = (f.clone(), g.clone(), f.clone(), g.clone());
        Self::new(
            format!("{}*{}", f.name, g.name),
            move |z: &[f64]| f1.value(z) * g1.value(z),
            move |z: &[f64]| {
                let (fv, gv) = (f2.value(z), g2.value(z));
                f2.gradient(z)
                    .iter()
                    .zip(g2.gradient(z))
                    .map(|(df, dg)| df * gv + fv * dg)
                    .collect()
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, zeta: &[f64]) -> f64 {
        (self.value)(zeta)
    }

    pub fn gradient(&self, zeta: &[f64]) -> Vec<f64> {
        (self.gradient)(zeta)
    }
}

/// Hamiltonian `H = alpha^i X_i`; on the dual space it is `H(zeta) = alpha^i zeta_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    pub alpha: AlgebraVector,
}

impl HamiltonianSpec {
    pub fn new(alpha: Vec<f64>) -> Self {
        Self { alpha: AlgebraVector::new(alpha) }
    }

    pub fn value(&self, zeta: &DualVector) -> Result<f64> {
        pairing(zeta, &self.alpha)
    }

    pub fn observable(&self) -> Observable {
        Observable::linear("H", self.alpha.coeffs().to_vec())
    }

    fn check(&self, algebra: &LieAlgebra) -> Result<()> {
        check_dim(algebra.dim(), self.alpha.dim())?;
        check_finite("alpha", self.alpha.coeffs())
    }
}

/// Quadratic Casimir `K^ij zeta_i zeta_j` from the inverse Killing form, when
/// the algebra is semisimple (Killing form nondegenerate).
pub fn killing_casimir(algebra: &LieAlgebra) -> Option<Observable> {
    let k = algebra.killing_form();
    let scale = k.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    let det = (&k / scale).determinant();
    if det.abs() < 1e-9 {
        return None;
    }
    let inv = k.try_inverse()?;
    Some(Observable::quadratic("killing_casimir", inv))
}

/// `B_ij = c_ij^k zeta_k = {zeta_i, zeta_j}`.
pub fn bracket_matrix(algebra: &LieAlgebra, zeta: &DualVector) -> Result<DMatrix<f64>> {
    let n = algebra.dim();
    check_dim(n, zeta.dim())?;
    let mut b = DMatrix::zeros(n, n);
    for (i, j, k, v) in algebra.records() {
        let w = v * zeta[k];
        b[(i, j)] += w;
        b[(j, i)] -= w;
    }
    Ok(b)
}

/// `{f1, f2}(zeta) = (df1/dzeta_i)(df2/dzeta_j) c_ij^k zeta_k`.
pub fn bracket(algebra: &LieAlgebra, f1: &Observable, f2: &Observable, zeta: &DualVector) -> Result<f64> {
    let b = bracket_matrix(algebra, zeta)?;
    let g1 = f1.gradient(zeta.coeffs());
    let g2 = f2.gradient(zeta.coeffs());
    check_dim(algebra.dim(), g1.len())?;
    check_dim(algebra.dim(), g2.len())?;
    let v1 = nalgebra::DVector::from_vec(g1);
    let v2 = nalgebra::DVector::from_vec(g2);
    Ok(v1.dot(&(&b * v2)))
}

/// Right-hand side `zeta_j' = c_ji^k alpha^i zeta_k`.
pub fn vector_field(algebra: &LieAlgebra, h: &HamiltonianSpec, zeta: &DualVector) -> Result<DualVector> {
    h.check(algebra)?;
    check_dim(algebra.dim(), zeta.dim())?;
    let g = algebra.ad_generator(&h.alpha)?;
    Ok(DualVector::from_dvector(g.transpose() * zeta.to_dvector()))
}

/// Exact propagator for a fixed Hamiltonian; caches the adjoint generator.
#[derive(Clone, Debug)]
pub struct LinearFlow<'a> {
    algebra: &'a LieAlgebra,
    h: HamiltonianSpec,
}

impl<'a> LinearFlow<'a> {
    pub fn new(algebra: &'a LieAlgebra, h: &HamiltonianSpec) -> Result<Self> {
        h.check(algebra)?;
        Ok(Self { algebra, h: h.clone() })
    }

    /// `D(exp(i t H))`.
    pub fn adjoint(&self, t: f64) -> Result<AdjointMatrix> {
        self.algebra.exp_adjoint(&self.h.alpha, t)
    }

    pub fn at(&self, zeta0: &DualVector, t: f64) -> Result<DualVector> {
        check_dim(self.algebra.dim(), zeta0.dim())?;
        check_finite("initial state", zeta0.coeffs())?;
        let d = self.adjoint(t)?;
        Ok(DualVector::from_dvector(d.matrix().transpose() * zeta0.to_dvector()))
    }
}

/// `zeta_j(t) = D^i_j(exp(i t H)) zeta_i(0)`.
pub fn flow_exact(algebra: &LieAlgebra, h: &HamiltonianSpec, zeta0: &DualVector, t: f64) -> Result<DualVector> {
    LinearFlow::new(algebra, h)?.at(zeta0, t)
}

/// Samples the exact flow at `samples + 1` evenly spaced times on `[0, t_final]`.
pub fn flow_exact_trajectory(
    algebra: &LieAlgebra,
    h: &HamiltonianSpec,
    zeta0: &DualVector,
    t_final: f64,
    samples: usize,
) -> Result<Trajectory> {
    check_time_grid(t_final, samples)?;
    let flow = LinearFlow::new(algebra, h)?;
    let dt = t_final / samples as f64;
    let mut tr = Trajectory::new(algebra.names().to_vec(), meta(algebra, h, "exact", samples, dt));
    for s in 0..=samples {
        let t = s as f64 * dt;
        tr.push(t, flow.at(zeta0, t)?.into_inner())?;
    }
    Ok(tr)
}

fn check_time_grid(t_final: f64, steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::Range("steps must be at least 1".into()));
    }
    if !t_final.is_finite() || t_final <= 0.0 {
        return Err(Error::Range(format!("t_final must be finite and positive, got {t_final}")));
    }
    Ok(())
}

fn meta(algebra: &LieAlgebra, h: &HamiltonianSpec, method: &str, steps: usize, dt: f64) -> TrajectoryMeta {
    TrajectoryMeta {
        algebra: algebra.name().to_string(),
        alpha: h.alpha.coeffs().to_vec(),
        method: method.to_string(),
        steps,
        step_size: dt,
    }
}

/// RK4 integration of `zeta_j' = c_ji^k alpha^i zeta_k`, recording every step.
pub fn flow_rk4(
    algebra: &LieAlgebra,
    h: &HamiltonianSpec,
    zeta0: &DualVector,
    t_final: f64,
    steps: usize,
) -> Result<Trajectory> {
    check_time_grid(t_final, steps)?;
    h.check(algebra)?;
    check_dim(algebra.dim(), zeta0.dim())?;
    check_finite("initial state", zeta0.coeffs())?;
    let gt = algebra.ad_generator(&h.alpha)?.transpose();
    let field = |z: &[f64]| (&gt * nalgebra::DVector::from_column_slice(z)).iter().copied().collect();
    let dt = t_final / steps as f64;
    let mut tr = Trajectory::new(algebra.names().to_vec(), meta(algebra, h, "rk4", steps, dt));
    let mut y = zeta0.coeffs().to_vec();
    tr.push(0.0, y.clone())?;
    for s in 1..=steps {
        rk4_step(&field, &mut y, dt);
        let t = s as f64 * dt;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Integration { t, reason: "non-finite state".into() });
        }
        tr.push(t, y.clone())?;
    }
    Ok(tr)
}

/// Endpoint of [`flow_rk4`] without storing the path.
pub fn flow_rk4_endpoint(
    algebra: &LieAlgebra,
    h: &HamiltonianSpec,
    zeta0: &DualVector,
    t_final: f64,
    steps: usize,
) -> Result<DualVector> {
    check_time_grid(t_final, steps)?;
    h.check(algebra)?;
    check_dim(algebra.dim(), zeta0.dim())?;
    let gt = algebra.ad_generator(&h.alpha)?.transpose();
    let field = |z: &[f64]| (&gt * nalgebra::DVector::from_column_slice(z)).iter().copied().collect();
    let dt = t_final / steps as f64;
    let mut y = zeta0.coeffs().to_vec();
    for s in 1..=steps {
        rk4_step(&field, &mut y, dt);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Integration { t: s as f64 * dt, reason: "non-finite state".into() });
        }
    }
    Ok(DualVector::new(y))
}

/// All explicitly time-dependent generators `X~_i(zeta, t) = D^j_i(exp(-i t H)) zeta_j`.
pub fn time_dep_generators(
    algebra: &LieAlgebra,
    h: &HamiltonianSpec,
    zeta: &DualVector,
    t: f64,
) -> Result<DualVector> {
    LinearFlow::new(algebra, h)?.at(zeta, -t)
}

/// A single generator `X~_i(zeta, t)`.
pub fn time_dep_generator(
    algebra: &LieAlgebra,
    h: &HamiltonianSpec,
    i: usize,
    zeta: &DualVector,
    t: f64,
) -> Result<f64> {
    if i >= algebra.dim() {
        return Err(Error::IndexOutOfRange { index: i, dim: algebra.dim() });
    }
    Ok(time_dep_generators(algebra, h, zeta, t)?[i])
}

/// The generator `X~_i` as an observable at fixed `t`: linear in `zeta` with
/// gradient given by column `i` of `D(exp(-i t H))`.
pub fn time_dep_observable(algebra: &LieAlgebra, h: &HamiltonianSpec, i: usize, t: f64) -> Result<Observable> {
    if i >= algebra.dim() {
        return Err(Error::IndexOutOfRange { index: i, dim: algebra.dim() });
    }
    let d = LinearFlow::new(algebra, h)?.adjoint(-t)?;
    let coeffs = d.matrix().column(i).iter().copied().collect();
    Ok(Observable::linear(format!("X~_{i}"), coeffs))
}

/// Finite symmetry transformation at time `t` by `g = exp(i lambda^l X_l)`:
/// `zeta' = D(exp(i t H))^T D(exp(-i lambda X))^T D(exp(-i t H))^T zeta(t)`.
pub fn symmetry_transform(
    algebra: &LieAlgebra,
    h: &HamiltonianSpec,
    lambda: &AlgebraVector,
    zeta_t: &DualVector,
    t: f64,
) -> Result<DualVector> {
    check_dim(algebra.dim(), lambda.dim())?;
    check_finite("lambda", lambda.coeffs())?;
    let flow = LinearFlow::new(algebra, h)?;
    let back = flow.at(zeta_t, -t)?;
    let g_inv = algebra.exp_adjoint(lambda, -1.0)?;
    let moved = DualVector::from_dvector(g_inv.matrix().transpose() * back.to_dvector());
    flow.at(&moved, t)
}

/// Group action including a change of time `t -> t'`:
/// `zeta'(t') = D(exp(i t' H))^T D(g^{-1})^T D(exp(-i t H))^T zeta(t)`.
pub fn reparametrized_transform(
    algebra: &LieAlgebra,
    h: &HamiltonianSpec,
    g: &AdjointMatrix,
    t: f64,
    t_prime: f64,
    zeta_t: &DualVector,
) -> Result<DualVector> {
    check_dim(algebra.dim(), g.dim())?;
    let flow = LinearFlow::new(algebra, h)?;
    let back = flow.at(zeta_t, -t)?;
    let g_inv = g.inverse_matrix()?;
    let moved = DualVector::from_dvector(g_inv.transpose() * back.to_dvector());
    flow.at(&moved, t_prime)
}
