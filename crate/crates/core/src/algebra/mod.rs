//! Lie algebras given by real structure constants, and the adjoint and
//! coadjoint machinery built on them.
//!
//! Conventions: `[X_i, X_j] = i c_ij^k X_k` with real `c`. The factor of `i`
//! is absorbed so that the adjoint matrix of `exp(i t xi)` is `exp(t G)` with
//! the real generator `G^j_i = -xi^k c_ki^j` (see [`LieAlgebra::ad_generator`]).
//! Matrices are stored with the upper index as the row: `D[(j, i)] = D^j_i`,
//! so column `i` holds the image of `X_i`.

pub(crate) mod builtin;
mod format;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

pub use builtin::{galilei_index, lorentz_casimir, Builtin};
pub use format::{parse_algebra, read_algebra_file, write_algebra};

use crate::error::{check_dim, check_finite, Error, Result};
use crate::expm::{expm, inverse};

/// Tolerance for antisymmetry and Jacobi residuals on unit-scale constants.
pub const IDENTITY_TOL: f64 = 1e-12;

macro_rules! coeff_vector {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Serialize)]
        pub struct $name(Vec<f64>);

        impl $name {
            pub fn new(coeffs: Vec<f64>) -> Self {
                Self(coeffs)
            }

            pub fn zeros(dim: usize) -> Self {
                Self(vec![0.0; dim])
            }

            /// Unit vector along the `i`-th basis element.
            pub fn basis(dim: usize, i: usize) -> Self {
                let mut v = vec![0.0; dim];
                v[i] = 1.0;
                Self(v)
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coeffs(&self) -> &[f64] {
                &self.0
            }

            pub fn into_inner(self) -> Vec<f64> {
                self.0
            }

            pub fn scaled(&self, a: f64) -> Self {
                Self(self.0.iter().map(|v| a * v).collect())
            }

            /// `a * self + b * other`.
            pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(x, y)| a * x + b * y).collect())
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max)
            }

            pub(crate) fn to_dvector(&self) -> DVector<f64> {
                DVector::from_column_slice(&self.0)
            }

            pub(crate) fn from_dvector(v: DVector<f64>) -> Self {
                Self(v.iter().copied().collect())
            }
        }

        impl From<Vec<f64>> for $name {
            fn from(v: Vec<f64>) -> Self {
                Self(v)
            }
        }

        impl Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }
    };
}

coeff_vector!(
    /// Element `xi = xi^i X_i` of the Lie algebra.
    AlgebraVector
);
coeff_vector!(
    /// Element `zeta = zeta_i X^i` of the dual space.
    DualVector
);

/// `<zeta, xi> = zeta_i xi^i`.
pub fn pairing(zeta: &DualVector, xi: &AlgebraVector) -> Result<f64> {
    check_dim(zeta.dim(), xi.dim())?;
    Ok(zeta.0.iter().zip(&xi.0).map(|(a, b)| a * b).sum())
}

/// Adjoint matrix `D^j_i(g)` of a group element, optionally with its inverse
/// when the element is known in exponential form.
#[derive(Clone, Debug)]
pub struct AdjointMatrix {
    matrix: DMatrix<f64>,
    inverse: Option<DMatrix<f64>>,
}

impl AdjointMatrix {
    pub fn from_matrix(matrix: DMatrix<f64>) -> Self {
        Self { matrix, inverse: None }
    }

    pub fn with_inverse(matrix: DMatrix<f64>, inverse: DMatrix<f64>) -> Self {
        Self { matrix, inverse: Some(inverse) }
    }

    pub fn identity(dim: usize) -> Self {
        Self::with_inverse(DMatrix::identity(dim, dim), DMatrix::identity(dim, dim))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.clone().determinant()
    }

    /// `D(g^{-1})`: the stored inverse if present, LU otherwise.
    pub fn inverse_matrix(&self) -> Result<DMatrix<f64>> {
        match &self.inverse {
            Some(inv) => Ok(inv.clone()),
            None => inverse(&self.matrix),
        }
    }

    pub fn inverse(&self) -> Result<AdjointMatrix> {
        let inv = self.inverse_matrix()?;
        Ok(AdjointMatrix::with_inverse(inv, self.matrix.clone()))
    }

    /// Adjoint matrix of the product `g1 g2` where `self = D(g1)`.
    pub fn compose(&self, other: &AdjointMatrix) -> AdjointMatrix {
        let matrix = &self.matrix * &other.matrix;
        let inverse = match (&self.inverse, &other.inverse) {
            (Some(a), Some(b)) => Some(b * a),
            _ => None,
        };
        AdjointMatrix { matrix, inverse }
    }

    /// `Ad_g xi`, components `xi'^i = D^i_j xi^j`.
    pub fn act(&self, xi: &AlgebraVector) -> Result<AlgebraVector> {
        check_dim(self.dim(), xi.dim())?;
        Ok(AlgebraVector::from_dvector(&self.matrix * xi.to_dvector()))
    }
}

/// Outcome of checking the algebra identities.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub algebra: String,
    pub passed: bool,
    pub tolerance: f64,
    /// Worst `|c_ij^k + c_ji^k|`, with the `(i, j, k)` where it occurs.
    pub antisymmetry_residual: f64,
    pub antisymmetry_at: Option<[usize; 3]>,
    /// Worst cyclic Jacobi sum, with the `(i, j, k, l)` where it occurs.
    pub jacobi_residual: f64,
    pub jacobi_at: Option<[usize; 4]>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra: {}", self.algebra)?;
        writeln!(f, "status: {}", if self.passed { "pass" } else { "FAIL" })?;
        write!(f, "antisymmetry worst residual: {:e}", self.antisymmetry_residual)?;
        if let Some([i, j, k]) = self.antisymmetry_at {
            write!(f, " at (i, j, k) = ({i}, {j}, {k})")?;
        }
        writeln!(f)?;
        write!(f, "jacobi worst residual: {:e}", self.jacobi_residual)?;
        if let Some([i, j, k, l]) = self.jacobi_at {
            write!(f, " at (i, j, k; l) = ({i}, {j}, {k}; {l})")?;
        }
        Ok(())
    }
}

/// A finite-dimensional real Lie algebra.
///
/// Constants are kept sparsely for pairs `i < j`; entries with `i > j` are
/// implied by antisymmetry. A dense copy is cached for contractions.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    names: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, f64)>>,
    dense: Vec<f64>,
    // worst antisymmetry defect of a tensor this algebra was built from
    tensor_defect: Option<(f64, [usize; 3])>,
}

impl LieAlgebra {
    /// Builds an algebra from records `(i, j, k, c_ij^k)`.
    ///
    /// Records with `i > j` are folded onto `(j, i)` with a sign flip. A
    /// record with `i == j`, an index out of range, or two records for the
    /// same `(i, j, k)` is a structural error.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        records: impl IntoIterator<Item = (usize, usize, usize, f64)>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Structure("dimension must be at least 1".into()));
        }
        let mut entries: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
        for (i, j, k, v) in records {
            if i >= n || j >= n || k >= n {
                return Err(Error::Structure(format!(
                    "index out of range in ({i}, {j}, {k}) for dimension {n}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Structure(format!("non-finite constant at ({i}, {j}, {k})")));
            }
            if i == j {
                return Err(Error::Structure(format!("diagonal pair ({i}, {i}, {k})")));
            }
            let (a, b, v) = if i < j { (i, j, v) } else { (j, i, -v) };
            if entries.insert((a, b, k), v).is_some() {
                return Err(Error::Structure(format!("duplicate constant for ({a}, {b}, {k})")));
            }
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, f64)>> = BTreeMap::new();
        for ((i, j, k), v) in entries {
            if v != 0.0 {
                brackets.entry((i, j)).or_default().push((k, v));
            }
        }
        Ok(Self::assemble(name.into(), names, brackets, None))
    }

    /// Builds an algebra from a dense tensor `c[(i * n + j) * n + k]`.
    ///
    /// Only the `i < j` half is kept; any failure of the input to be
    /// antisymmetric is recorded and reported by [`LieAlgebra::validate`].
    pub fn from_tensor(name: impl Into<String>, names: Vec<String>, tensor: &[f64]) -> Result<Self> {
        let n = names.len();
        check_dim(n * n * n, tensor.len())?;
        check_finite("structure tensor", tensor)?;
        let at = |i: usize, j: usize, k: usize| tensor[(i * n + j) * n + k];
        let mut defect = (0.0, [0, 0, 0]);
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, f64)>> = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let r = (at(i, j, k) + at(j, i, k)).abs();
                    if r > defect.0 {
                        defect = (r, [i, j, k]);
                    }
                    if i < j && at(i, j, k) != 0.0 {
                        brackets.entry((i, j)).or_default().push((k, at(i, j, k)));
                    }
                }
            }
        }
        Ok(Self::assemble(name.into(), names, brackets, Some(defect)))
    }

    fn assemble(
        name: String,
        names: Vec<String>,
        brackets: BTreeMap<(usize, usize), Vec<(usize, f64)>>,
        tensor_defect: Option<(f64, [usize; 3])>,
    ) -> Self {
        let n = names.len();
        let mut dense = vec![0.0; n * n * n];
        for (&(i, j), list) in &brackets {
            for &(k, v) in list {
                dense[(i * n + j) * n + k] = v;
                dense[(j * n + i) * n + k] = -v;
            }
        }
        Self { name, names, brackets, dense, tensor_defect }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `c_ij^k`.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.dim();
        self.dense[(i * n + j) * n + k]
    }

    /// Canonical records `(i, j, k, c_ij^k)` with `i < j`, nonzero values only.
    pub fn records(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), list)| list.iter().map(move |&(k, v)| (i, j, k, v)))
    }

    /// Number of stored nonzero constants.
    pub fn nnz(&self) -> usize {
        self.brackets.values().map(Vec::len).sum()
    }

    pub fn zero_vector(&self) -> AlgebraVector {
        AlgebraVector::zeros(self.dim())
    }

    /// Cyclic Jacobi sum for `(i, j, k)` projected on `X_l`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        (0..self.dim())
            .map(|m| {
                self.c(i, j, m) * self.c(m, k, l)
                    + self.c(j, k, m) * self.c(m, i, l)
                    + self.c(k, i, m) * self.c(m, j, l)
            })
            .sum()
    }

    /// Checks antisymmetry and the Jacobi identity to [`IDENTITY_TOL`].
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(IDENTITY_TOL)
    }

    pub fn validate_with(&self, tol: f64) -> ValidationReport {
        let n = self.dim();
        let (anti, anti_at) = match self.tensor_defect {
            Some((r, at)) if r > 0.0 => (r, Some(at)),
            _ => (0.0, None),
        };
        let mut worst = 0.0;
        let mut worst_at = None;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let r = self.jacobi_residual(i, j, k, l).abs();
                        if r > worst {
                            worst = r;
                            worst_at = Some([i, j, k, l]);
                        }
                    }
                }
            }
        }
        ValidationReport {
            algebra: self.name.clone(),
            passed: anti < tol && worst < tol,
            tolerance: tol,
            antisymmetry_residual: anti,
            antisymmetry_at: anti_at,
            jacobi_residual: worst,
            jacobi_at: worst_at,
        }
    }

    /// `[xi, eta]` with components `xi^i eta^j c_ij^k`.
    pub fn commutator(&self, xi: &AlgebraVector, eta: &AlgebraVector) -> Result<AlgebraVector> {
        check_dim(self.dim(), xi.dim())?;
        check_dim(self.dim(), eta.dim())?;
        let mut out = vec![0.0; self.dim()];
        for (&(i, j), list) in &self.brackets {
            let w = xi[i] * eta[j] - xi[j] * eta[i];
            if w != 0.0 {
                for &(k, v) in list {
                    out[k] += w * v;
                }
            }
        }
        Ok(AlgebraVector(out))
    }

    /// Real generator of the adjoint action: `G^j_i = -xi^k c_ki^j`.
    pub fn ad_generator(&self, xi: &AlgebraVector) -> Result<DMatrix<f64>> {
        let n = self.dim();
        check_dim(n, xi.dim())?;
        let mut g = DMatrix::zeros(n, n);
        for (&(a, b), list) in &self.brackets {
            // c_ab^j contributes to column b via xi^a, and to column a via xi^b
            for &(j, v) in list {
                g[(j, b)] -= xi[a] * v;
                g[(j, a)] += xi[b] * v;
            }
        }
        Ok(g)
    }

    /// `D(exp(i t xi)) = exp(t G)`, carrying its exact inverse `exp(-t G)`.
    pub fn exp_adjoint(&self, xi: &AlgebraVector, t: f64) -> Result<AdjointMatrix> {
        check_finite("t", &[t])?;
        check_finite("xi", xi.coeffs())?;
        let g = self.ad_generator(xi)? * t;
        let d = expm(&g)?;
        let inv = expm(&(-g))?;
        Ok(AdjointMatrix::with_inverse(d, inv))
    }

    /// Coadjoint action: `zeta'_i = (D^{-1})^j_i zeta_j`.
    pub fn coadjoint_apply(&self, d: &AdjointMatrix, zeta: &DualVector) -> Result<DualVector> {
        check_dim(self.dim(), d.dim())?;
        check_dim(self.dim(), zeta.dim())?;
        let inv = d.inverse_matrix()?;
        Ok(DualVector::from_dvector(inv.transpose() * zeta.to_dvector()))
    }

    /// Worst violation of `c_ij^k D^l_k = D^m_i D^n_j c_mn^l`, i.e. of `D`
    /// being an automorphism of the bracket.
    pub fn preservation_residual(&self, d: &AdjointMatrix) -> f64 {
        let n = self.dim();
        let m = d.matrix();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let di = AlgebraVector(m.column(i).iter().copied().collect());
                let dj = AlgebraVector(m.column(j).iter().copied().collect());
                let rhs = self.commutator(&di, &dj).expect("dimensions match");
                for l in 0..n {
                    let lhs: f64 = (0..n).map(|k| self.c(i, j, k) * m[(l, k)]).sum();
                    worst = worst.max((lhs - rhs[l]).abs());
                }
            }
        }
        worst
    }

    /// New basis `X'_a = T^i_a X_i`, with `T[(i, a)] = T^i_a`.
    ///
    /// The constants transform as `c'_ab^c = T^i_a T^j_b c_ij^k (T^{-1})^c_k`.
    pub fn basis_change(&self, name: impl Into<String>, names: Vec<String>, t: &DMatrix<f64>) -> Result<LieAlgebra> {
        let n = self.dim();
        check_dim(n, names.len())?;
        if t.nrows() != n || t.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: t.nrows().max(t.ncols()) });
        }
        let t_inv = inverse(t)?;
        let mut tensor = vec![0.0; n * n * n];
        for a in 0..n {
            let xa = AlgebraVector(t.column(a).iter().copied().collect());
            for b in 0..n {
                let xb = AlgebraVector(t.column(b).iter().copied().collect());
                let br = self.commutator(&xa, &xb)?;
                let new = &t_inv * br.to_dvector();
                for c in 0..n {
                    tensor[(a * n + b) * n + c] = new[c];
                }
            }
        }
        // drop roundoff-level entries so the sparse form stays sparse
        let scale = tensor.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for v in &mut tensor {
            if v.abs() <= 1e-15 * scale.max(1.0) {
                *v = 0.0;
            }
        }
        LieAlgebra::from_tensor(name, names, &tensor)
    }

    /// Max entrywise difference of two algebras' constants (same dimension).
    pub fn constants_distance(&self, other: &LieAlgebra) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .dense
            .iter()
            .zip(&other.dense)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Killing form `K_ij = tr(ad_i ad_j) = c_ik^l c_jl^k`.
    pub fn killing_form(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| {
            let mut s = 0.0;
            for k in 0..n {
                for l in 0..n {
                    s += self.c(i, k, l) * self.c(j, l, k);
                }
            }
            s
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> LieAlgebra {
        Builtin::Sl2rHkd.algebra()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn structural_errors_are_distinct() {
        let r = LieAlgebra::new("x", names(2), [(0, 2, 0, 1.0)]);
        assert!(matches!(r, Err(Error::Structure(_))));
        let r = LieAlgebra::new("x", names(2), [(0, 1, 0, 1.0), (1, 0, 0, 2.0)]);
        assert!(matches!(r, Err(Error::Structure(_))), "duplicate after folding");
        let r = LieAlgebra::new("x", names(2), [(1, 1, 0, 1.0)]);
        assert!(matches!(r, Err(Error::Structure(_))));
        let r = LieAlgebra::new("x", vec![], []);
        assert!(matches!(r, Err(Error::Structure(_))));
    }

    #[test]
    fn sl2_from_commutation_rules_passes() {
        // [D,H] = -iH, [D,K] = iK, [K,H] = -2iD with (H, K, D) = (0, 1, 2)
        let alg = LieAlgebra::new(
            "sl2",
            vec!["H".into(), "K".into(), "D".into()],
            [(2, 0, 0, -1.0), (2, 1, 1, 1.0), (1, 0, 2, -2.0)],
        )
        .unwrap();
        let rep = alg.validate();
        assert!(rep.passed, "{rep}");
        assert_eq!(alg.constants_distance(&sl2()).unwrap(), 0.0);
    }

    #[test]
    fn abelian_passes() {
        let alg = LieAlgebra::new("abelian", names(4), []).unwrap();
        let rep = alg.validate();
        assert!(rep.passed);
        assert_eq!(rep.jacobi_residual, 0.0);
    }

    #[test]
    fn flipped_sign_breaks_jacobi() {
        let alg = LieAlgebra::new(
            "bad",
            vec!["H".into(), "K".into(), "D".into()],
            [(2, 0, 0, 1.0), (2, 1, 1, 1.0), (1, 0, 2, -2.0)],
        )
        .unwrap();
        let rep = alg.validate();
        assert!(!rep.passed);
        assert_eq!(rep.jacobi_residual, 4.0);
        // (D, K, H) -> D component, evaluated straight from the cyclic sum
        assert_eq!(alg.jacobi_residual(2, 1, 0, 2).abs(), 4.0);
    }

    #[test]
    fn non_antisymmetric_tensor_reported() {
        let mut t = vec![0.0; 8];
        t[1] = 1.0; // c_00^1, a diagonal entry
        let alg = LieAlgebra::from_tensor("t", names(2), &t).unwrap();
        let rep = alg.validate();
        assert!(!rep.passed);
        assert_eq!(rep.antisymmetry_residual, 2.0);
        assert_eq!(rep.antisymmetry_at, Some([0, 0, 1]));
    }

    #[test]
    fn ad_generator_of_dilatation() {
        let alg = sl2();
        let g = alg.ad_generator(&AlgebraVector::basis(3, 2)).unwrap();
        let expect = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 0.0]));
        assert_eq!(g, expect);
        let z = alg.ad_generator(&alg.zero_vector()).unwrap();
        assert_eq!(z, DMatrix::zeros(3, 3));
    }

    #[test]
    fn ad_generator_so21_rotation_block() {
        let alg = Builtin::So21M.algebra();
        let g = alg.ad_generator(&AlgebraVector::basis(3, 0)).unwrap();
        for k in 0..3 {
            assert_eq!(g[(0, k)], 0.0);
            assert_eq!(g[(k, 0)], 0.0);
        }
        assert_eq!(g[(1, 2)], -g[(2, 1)]);
        assert!(g[(1, 2)] != 0.0);
    }

    #[test]
    fn ad_generator_dimension_mismatch() {
        assert!(matches!(
            sl2().ad_generator(&AlgebraVector::zeros(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn exp_adjoint_dilatation_closed_form() {
        let d = sl2().exp_adjoint(&AlgebraVector::basis(3, 2), 1.0).unwrap();
        let m = d.matrix();
        assert!((m[(0, 0)] - std::f64::consts::E).abs() < 1e-14);
        assert!((m[(1, 1)] - (-1.0f64).exp()).abs() < 1e-15);
        assert!((m[(2, 2)] - 1.0).abs() < 1e-15);
        let id = sl2().exp_adjoint(&AlgebraVector::basis(3, 0), 0.0).unwrap();
        assert_eq!(id.matrix(), &DMatrix::identity(3, 3));
    }

    #[test]
    fn exp_adjoint_first_order() {
        // D^j_i = delta + t xi^k c_ik^j + O(t^2)
        let alg = Builtin::GalileiN2D3.algebra();
        let n = alg.dim();
        let xi = AlgebraVector::new((0..n).map(|i| ((i * 7 % 5) as f64 - 2.0) * 0.3).collect());
        let t = 1e-6;
        let d = alg.exp_adjoint(&xi, t).unwrap();
        for i in 0..n {
            for j in 0..n {
                let lin: f64 = (0..n).map(|k| xi[k] * alg.c(i, k, j)).sum();
                let expect = if i == j { 1.0 } else { 0.0 } + t * lin;
                assert!((d.matrix()[(j, i)] - expect).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn exp_adjoint_rejects_non_finite() {
        assert!(sl2().exp_adjoint(&AlgebraVector::basis(3, 0), f64::INFINITY).is_err());
        let xi = AlgebraVector::new(vec![f64::NAN, 0.0, 0.0]);
        assert!(sl2().exp_adjoint(&xi, 1.0).is_err());
    }

    #[test]
    fn coadjoint_identity_and_singular() {
        let alg = sl2();
        let zeta = DualVector::new(vec![1.0, -2.0, 0.5]);
        let out = alg.coadjoint_apply(&AdjointMatrix::identity(3), &zeta).unwrap();
        assert_eq!(out, zeta);
        let sing = AdjointMatrix::from_matrix(DMatrix::zeros(3, 3));
        assert!(matches!(alg.coadjoint_apply(&sing, &zeta), Err(Error::Singular { .. })));
    }

    #[test]
    fn pairing_basics() {
        for i in 0..3 {
            for j in 0..3 {
                let p = pairing(&DualVector::basis(3, i), &AlgebraVector::basis(3, j)).unwrap();
                assert_eq!(p, if i == j { 1.0 } else { 0.0 });
            }
        }
        let xi = AlgebraVector::new(vec![3.0, -1.0, 2.0]);
        assert_eq!(pairing(&DualVector::zeros(3), &xi).unwrap(), 0.0);
        assert!(pairing(&DualVector::zeros(2), &xi).is_err());
    }

    #[test]
    fn basis_change_identity_and_singular() {
        let alg = sl2();
        let same = alg
            .basis_change("same", alg.names().to_vec(), &DMatrix::identity(3, 3))
            .unwrap();
        assert_eq!(alg.constants_distance(&same).unwrap(), 0.0);
        let sing = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            alg.basis_change("s", alg.names().to_vec(), &sing),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn commutator_matches_constants() {
        let alg = Builtin::So3.algebra();
        let e = |i| AlgebraVector::basis(3, i);
        assert_eq!(alg.commutator(&e(0), &e(1)).unwrap(), e(2));
        assert_eq!(alg.commutator(&e(1), &e(0)).unwrap(), e(2).scaled(-1.0));
    }
}
