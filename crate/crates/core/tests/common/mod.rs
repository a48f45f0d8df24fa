//! Shared helpers and independent oracles for the integration tests.
#![allow(dead_code)]

use coadjoint::algebra::{AlgebraVector, Builtin, DualVector, LieAlgebra};
use coadjoint::galilei::ReducedState;
use nalgebra::{DMatrix, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

pub fn random_alpha(rng: &mut impl Rng, alg: &LieAlgebra, scale: f64) -> AlgebraVector {
    AlgebraVector::new(uniform_vec(rng, alg.dim(), scale))
}

pub fn random_zeta(rng: &mut impl Rng, alg: &LieAlgebra, scale: f64) -> DualVector {
    DualVector::new(uniform_vec(rng, alg.dim(), scale))
}

pub fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn mat_max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    max_abs(a.iter().zip(b.iter()).map(|(x, y)| x - y))
}

/// Levi-Civita symbol, written out independently of the library.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// so(2,1) constants `c_ab^c = -eps_abd g^dc` with `g = diag(+,-,-)`, as a dense tensor.
pub fn so21_constants_from_epsilon() -> Vec<f64> {
    let g = [1.0, -1.0, -1.0];
    let mut c = vec![0.0; 27];
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                c[(a * 3 + b) * 3 + k] = -levi_civita(a, b, k) * g[k];
            }
        }
    }
    c
}

/// Series `sum_k A^k / k!` with enough terms for the norms used in tests.
pub fn expm_series(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
    // scale down so the series converges quickly, then square back
    let mut squarings = 0;
    let mut scaled = a.clone();
    let mut s = norm;
    while s > 0.5 {
        scaled /= 2.0;
        s /= 2.0;
        squarings += 1;
    }
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..40 {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Adjoint generator built straight from the constants: `G[(j, i)] = -xi^k c_ki^j`.
pub fn ad_generator_oracle(alg: &LieAlgebra, xi: &[f64]) -> DMatrix<f64> {
    let n = alg.dim();
    DMatrix::from_fn(n, n, |j, i| -(0..n).map(|k| xi[k] * alg.c(k, i, j)).sum::<f64>())
}

/// Bracket tensor `B_ij = c_ij^k zeta_k` from the constants.
pub fn bracket_oracle(alg: &LieAlgebra, zeta: &[f64]) -> DMatrix<f64> {
    let n = alg.dim();
    DMatrix::from_fn(n, n, |i, j| (0..n).map(|k| alg.c(i, j, k) * zeta[k]).sum())
}

/// Central-difference Jacobian of `f: R^m -> R^n` (rows are outputs).
pub fn jacobian<F: Fn(&[f64]) -> Vec<f64>>(f: F, x: &[f64], h: f64) -> DMatrix<f64> {
    let m = x.len();
    let n = f(x).len();
    let mut j = DMatrix::zeros(n, m);
    let mut xp = x.to_vec();
    for c in 0..m {
        xp[c] = x[c] + h;
        let fp = f(&xp);
        xp[c] = x[c] - h;
        let fm = f(&xp);
        xp[c] = x[c];
        for r in 0..n {
            j[(r, c)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    j
}

pub fn fd_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let j = jacobian(|y| vec![f(y)], x, h);
    j.row(0).iter().copied().collect()
}

/// Random point of the reduced Galilei phase space.
pub fn random_reduced_state(rng: &mut impl Rng, lambda: f64) -> ReducedState {
    let v = |rng: &mut dyn rand::RngCore, s: f64| {
        Vector3::new(rng.random_range(-s..s), rng.random_range(-s..s), rng.random_range(-s..s))
    };
    let mut s = v(rng, 1.0);
    if s.norm() < 0.1 {
        s = Vector3::new(0.3, -0.2, 0.9);
    }
    let t = v(rng, 1.0);
    let (a, b) = (rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
    let zeta = Vector3::new((lambda * lambda + a * a + b * b).sqrt(), a, b);
    let eta = v(rng, 1.0);
    ReducedState::project(s, t, zeta, eta, lambda).expect("sampled state projects")
}

pub fn builtins() -> impl Iterator<Item = (Builtin, LieAlgebra)> {
    Builtin::ALL.into_iter().map(|b| (b, b.algebra()))
}
