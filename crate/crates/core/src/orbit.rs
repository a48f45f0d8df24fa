//! Pointwise geometry of coadjoint orbits: stabilizers, the Kirillov form and
//! membership tests against Casimir levels and sheet conditions.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::algebra::{AlgebraVector, Builtin, DualVector, LieAlgebra};
use crate::error::{check_dim, check_finite, Error, Result};
use crate::lie_poisson::{bracket_matrix, Observable};

pub const DEFAULT_TOL: f64 = 1e-10;

struct Split {
    rank: usize,
    kernel: Vec<DVector<f64>>,
    range: Vec<DVector<f64>>,
}

// Right singular vectors of B split at tol * sigma_max.
fn split(b: &DMatrix<f64>, tol: f64) -> Split {
    let n = b.nrows();
    let svd = b.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    let mut kernel = Vec::new();
    let mut range = Vec::new();
    for (idx, &s) in svd.singular_values.iter().enumerate() {
        let v = v_t.row(idx).transpose();
        if smax == 0.0 || s <= tol * smax {
            kernel.push(v);
        } else {
            range.push(v);
        }
    }
    debug_assert_eq!(kernel.len() + range.len(), n);
    Split { rank: range.len(), kernel, range }
}

// Rotates an orthonormal set towards coordinate axes: row-reduce, then
// Gram-Schmidt in pivot order. The span is unchanged.
fn canonicalize(vectors: Vec<DVector<f64>>, n: usize) -> Vec<DVector<f64>> {
    let m = vectors.len();
    if m == 0 {
        return vectors;
    }
    let mut a = DMatrix::from_fn(m, n, |r, c| vectors[r][c]);
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let (piv, val) = (row..m)
            .map(|r| (r, a[(r, col)].abs()))
            .fold((row, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if val < 1e-9 {
            continue;
        }
        a.swap_rows(row, piv);
        let p = a[(row, col)];
        a.row_mut(row).scale_mut(1.0 / p);
        for r in 0..m {
            if r != row {
                let f = a[(r, col)];
                if f != 0.0 {
                    for c in 0..n {
                        let v = a[(row, c)];
                        a[(r, c)] -= f * v;
                    }
                }
            }
        }
        row += 1;
    }
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut v = a.row(r).transpose();
        for u in &out {
            let d = u.dot(&v);
            v.axpy(-d, u, 1.0);
        }
        let norm = v.norm();
        v /= norm;
        v.apply(|x| {
            if x.abs() < 1e-15 {
                *x = 0.0
            }
        });
        out.push(v);
    }
    out
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Range(format!("tolerance must be positive, got {tol}")))
    }
}

/// Orthonormal basis of `{xi : xi^j c_ji^k zeta_k = 0 for all i}`.
///
/// At `zeta = 0` the whole algebra is returned.
pub fn stabilizer_algebra(algebra: &LieAlgebra, zeta: &DualVector, tol: f64) -> Result<Vec<AlgebraVector>> {
    check_tol(tol)?;
    check_finite("zeta", zeta.coeffs())?;
    let b = bracket_matrix(algebra, zeta)?;
    let kernel = canonicalize(split(&b, tol).kernel, algebra.dim());
    Ok(kernel.into_iter().map(AlgebraVector::from_dvector).collect())
}

/// Numerical rank of the Poisson tensor at `zeta`, i.e. the orbit dimension.
pub fn orbit_dimension(algebra: &LieAlgebra, zeta: &DualVector, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    Ok(split(&bracket_matrix(algebra, zeta)?, tol).rank)
}

/// Orthonormal complement of the stabilizer; the tangent directions of the orbit.
pub fn complement_basis(algebra: &LieAlgebra, zeta: &DualVector, tol: f64) -> Result<Vec<AlgebraVector>> {
    check_tol(tol)?;
    let b = bracket_matrix(algebra, zeta)?;
    let range = canonicalize(split(&b, tol).range, algebra.dim());
    Ok(range.into_iter().map(AlgebraVector::from_dvector).collect())
}

/// `omega(xi1, xi2) = c_jk^l xi1^j xi2^k zeta_l = <zeta, [xi1, xi2]>`.
pub fn kirillov_eval(algebra: &LieAlgebra, zeta: &DualVector, xi1: &AlgebraVector, xi2: &AlgebraVector) -> Result<f64> {
    check_dim(algebra.dim(), xi1.dim())?;
    check_dim(algebra.dim(), xi2.dim())?;
    let b = bracket_matrix(algebra, zeta)?;
    Ok(xi1.to_dvector().dot(&(b * xi2.to_dvector())))
}

/// Matrix `omega(e_a, e_b)` for the given tangent basis.
pub fn kirillov_matrix(algebra: &LieAlgebra, zeta: &DualVector, basis: &[AlgebraVector]) -> Result<DMatrix<f64>> {
    let b = bracket_matrix(algebra, zeta)?;
    for v in basis {
        check_dim(algebra.dim(), v.dim())?;
    }
    let cols = DMatrix::from_fn(algebra.dim(), basis.len(), |r, c| basis[c][r]);
    Ok(cols.transpose() * b * cols)
}

/// A condition defining (a sheet of) an orbit.
#[derive(Clone, Debug)]
pub enum OrbitInvariant {
    /// `f(zeta) = value`, checked to a tolerance.
    Equality { observable: Observable, value: f64 },
    /// `f(zeta) > 0`, checked strictly.
    Positive { observable: Observable },
}

impl OrbitInvariant {
    pub fn name(&self) -> &str {
        match self {
            OrbitInvariant::Equality { observable, .. } | OrbitInvariant::Positive { observable } => observable.name(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitDescriptor {
    pub base_point: DualVector,
    pub invariants: Vec<OrbitInvariant>,
    pub stabilizer_basis: Vec<AlgebraVector>,
}

impl OrbitDescriptor {
    /// Orbit through `base_point`; each function is recorded at its base value.
    pub fn through(algebra: &LieAlgebra, base_point: DualVector, functions: Vec<Observable>, tol: f64) -> Result<Self> {
        check_dim(algebra.dim(), base_point.dim())?;
        let stabilizer_basis = stabilizer_algebra(algebra, &base_point, tol)?;
        let invariants = functions
            .into_iter()
            .map(|observable| {
                let value = observable.value(base_point.coeffs());
                OrbitInvariant::Equality { observable, value }
            })
            .collect();
        Ok(Self { base_point, invariants, stabilizer_basis })
    }

    /// Orbit through `base_point` using the builtin's Casimir catalogue.
    pub fn for_builtin(builtin: Builtin, base_point: DualVector, tol: f64) -> Result<Self> {
        Self::through(&builtin.algebra(), base_point, builtin.casimirs(), tol)
    }

    /// Upper sheet of the two-sheeted hyperboloid `zeta0^2 - zeta1^2 - zeta2^2 = lambda^2`, `zeta0 > 0`.
    pub fn so21_upper_sheet(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::Range(format!("lambda must be positive, got {lambda}")));
        }
        let base = DualVector::new(vec![lambda, 0.0, 0.0]);
        Ok(Self::for_builtin(Builtin::So21M, base, DEFAULT_TOL)?.with_positive(Observable::coordinate(3, 0)))
    }

    pub fn with_positive(mut self, observable: Observable) -> Self {
        self.invariants.push(OrbitInvariant::Positive { observable });
        self
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct InvariantResidual {
    pub name: String,
    pub value: f64,
    /// `|f - recorded|` for equalities; `max(0, -f)` for strict positivity.
    pub residual: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OrbitCheck {
    pub member: bool,
    pub residuals: Vec<InvariantResidual>,
}

/// Tests `zeta` against every invariant of the descriptor.
pub fn orbit_check(descriptor: &OrbitDescriptor, zeta: &DualVector, tol: f64) -> OrbitCheck {
    let residuals: Vec<InvariantResidual> = descriptor
        .invariants
        .iter()
        .map(|inv| match inv {
            OrbitInvariant::Equality { observable, value: target } => {
                let value = observable.value(zeta.coeffs());
                let residual = (value - target).abs();
                InvariantResidual { name: observable.name().into(), value, residual, holds: residual <= tol }
            }
            OrbitInvariant::Positive { observable } => {
                let value = observable.value(zeta.coeffs());
                InvariantResidual {
                    name: format!("{} > 0", observable.name()),
                    value,
                    residual: (-value).max(0.0),
                    holds: value > 0.0,
                }
            }
        })
        .collect();
    OrbitCheck { member: residuals.iter().all(|r| r.holds), residuals }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

/// Everything the `orbit` command prints.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub algebra: String,
    pub base_point: Vec<f64>,
    pub orbit_dimension: usize,
    pub stabilizer_dimension: usize,
    pub stabilizer_basis: Vec<Vec<f64>>,
    pub invariants: Vec<NamedValue>,
    pub complement_basis: Vec<Vec<f64>>,
    pub kirillov_matrix: Vec<Vec<f64>>,
    pub kirillov_determinant: f64,
}

impl OrbitReport {
    pub fn compute(algebra: &LieAlgebra, zeta: &DualVector, casimirs: &[Observable], tol: f64) -> Result<Self> {
        check_tol(tol)?;
        check_dim(algebra.dim(), zeta.dim())?;
        check_finite("zeta", zeta.coeffs())?;
        let stab = stabilizer_algebra(algebra, zeta, tol)?;
        let comp = complement_basis(algebra, zeta, tol)?;
        let k = kirillov_matrix(algebra, zeta, &comp)?;
        let det = if comp.is_empty() { 1.0 } else { k.determinant() };
        Ok(Self {
            algebra: algebra.name().to_string(),
            base_point: zeta.coeffs().to_vec(),
            orbit_dimension: comp.len(),
            stabilizer_dimension: stab.len(),
            stabilizer_basis: stab.into_iter().map(AlgebraVector::into_inner).collect(),
            invariants: casimirs
                .iter()
                .map(|c| NamedValue { name: c.name().to_string(), value: c.value(zeta.coeffs()) })
                .collect(),
            complement_basis: comp.into_iter().map(AlgebraVector::into_inner).collect(),
            kirillov_matrix: k.row_iter().map(|r| r.iter().copied().collect()).collect(),
            kirillov_determinant: det,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so21_base_point_stabilizer_is_m0() {
        let alg = Builtin::So21M.algebra();
        let s = stabilizer_algebra(&alg, &DualVector::new(vec![1.0, 0.0, 0.0]), DEFAULT_TOL).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].max_abs_diff(&AlgebraVector::basis(3, 0)) < 1e-14);
    }

    #[test]
    fn zero_point_gives_everything() {
        for b in Builtin::ALL {
            let alg = b.algebra();
            let s = stabilizer_algebra(&alg, &DualVector::zeros(alg.dim()), DEFAULT_TOL).unwrap();
            assert_eq!(s.len(), alg.dim());
            assert_eq!(orbit_dimension(&alg, &DualVector::zeros(alg.dim()), DEFAULT_TOL).unwrap(), 0);
        }
    }

    #[test]
    fn kirillov_value_on_so21() {
        let alg = Builtin::So21M.algebra();
        let lam = 2.5;
        let z = DualVector::new(vec![lam, 0.0, 0.0]);
        let v = kirillov_eval(&alg, &z, &AlgebraVector::basis(3, 1), &AlgebraVector::basis(3, 2)).unwrap();
        assert_eq!(v, -lam);
        let m0 = AlgebraVector::basis(3, 0);
        for k in 0..3 {
            assert_eq!(kirillov_eval(&alg, &z, &m0, &AlgebraVector::basis(3, k)).unwrap(), 0.0);
        }
    }

    #[test]
    fn hyperboloid_membership() {
        let lam = 1.5;
        let d = OrbitDescriptor::so21_upper_sheet(lam).unwrap();
        let at_base = orbit_check(&d, &d.base_point, 1e-12);
        assert!(at_base.member);
        assert!(at_base.residuals.iter().all(|r| r.residual == 0.0));
        let scaled = orbit_check(&d, &DualVector::new(vec![2.0 * lam, 0.0, 0.0]), 1e-12);
        assert!(!scaled.member);
        assert!((scaled.residuals[0].residual - 3.0 * lam * lam).abs() < 1e-12);
        let lower = orbit_check(&d, &DualVector::new(vec![-lam, 0.0, 0.0]), 1e-12);
        assert!(!lower.member, "lower sheet has the same Casimir but is another orbit");
        assert!(lower.residuals[0].holds && !lower.residuals[1].holds);
    }

    #[test]
    fn bad_tolerance_rejected() {
        let alg = Builtin::So3.algebra();
        assert!(stabilizer_algebra(&alg, &DualVector::new(vec![1.0, 0.0, 0.0]), 0.0).is_err());
        assert!(OrbitDescriptor::so21_upper_sheet(-1.0).is_err());
    }

    #[test]
    fn report_serializes() {
        let alg = Builtin::So3.algebra();
        let z = DualVector::new(vec![0.0, 0.0, 2.0]);
        let rep = OrbitReport::compute(&alg, &z, &Builtin::So3.casimirs(), DEFAULT_TOL).unwrap();
        assert_eq!(rep.stabilizer_dimension, 1);
        assert_eq!(rep.orbit_dimension, 2);
        assert!((rep.kirillov_determinant.abs() - 4.0).abs() < 1e-12);
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["stabilizer_basis"][0][2], 1.0);
    }
}
