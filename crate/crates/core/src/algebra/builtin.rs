use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix3};

use super::LieAlgebra;
use crate::error::Error;
use crate::lie_poisson::Observable;

/// Built-in algebras used by the worked examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// sl(2,R) in the basis (H, K, D).
    Sl2rHkd,
    /// so(2,1) in the basis (M0, M1, M2), metric diag(+, -, -).
    So21M,
    /// so(3) in the basis (J1, J2, J3).
    So3,
    /// N = 2 conformal Galilei algebra in d = 3, 15 generators ordered
    /// (J1..J3, M0..M2, X01..X03, X11..X13, X21..X23).
    GalileiN2D3,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [Builtin::Sl2rHkd, Builtin::So21M, Builtin::So3, Builtin::GalileiN2D3];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Sl2rHkd => "sl2r_hkd",
            Builtin::So21M => "so21_m",
            Builtin::So3 => "so3",
            Builtin::GalileiN2D3 => "galilei_n2_d3",
        }
    }

    pub fn algebra(self) -> LieAlgebra {
        let (names, records) = match self {
            Builtin::Sl2rHkd => (
                vec!["H", "K", "D"],
                // [H,K] = 2iD, [H,D] = iH, [K,D] = -iK
                vec![(0, 1, 2, 2.0), (0, 2, 0, 1.0), (1, 2, 1, -1.0)],
            ),
            Builtin::So21M => (vec!["M0", "M1", "M2"], so21_records(0)),
            Builtin::So3 => (vec!["J1", "J2", "J3"], so3_records(0)),
            Builtin::GalileiN2D3 => (galilei_names(), galilei_records()),
        };
        let names = names.into_iter().map(String::from).collect();
        LieAlgebra::new(self.name(), names, records).expect("builtin constants are well formed")
    }

    /// Known Casimir functions on the dual space.
    pub fn casimirs(self) -> Vec<Observable> {
        match self {
            Builtin::So21M => vec![lorentz_casimir()],
            Builtin::Sl2rHkd => {
                // zeta_H zeta_K - zeta_D^2, the so(2,1) form pulled back through the basis change
                let q = DMatrix::from_row_slice(3, 3, &[0.0, 0.5, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, -1.0]);
                vec![Observable::quadratic("casimir", q)]
            }
            Builtin::So3 => vec![Observable::quadratic("casimir", DMatrix::identity(3, 3))],
            Builtin::GalileiN2D3 => galilei_casimirs(),
        }
    }

    /// Coefficients of `H = M0 - M1` in this algebra, when it contains that element.
    pub fn conformal_hamiltonian(self) -> Option<Vec<f64>> {
        match self {
            // M0 - M1 = H in the (H, K, D) basis
            Builtin::Sl2rHkd => Some(vec![1.0, 0.0, 0.0]),
            Builtin::So21M => Some(vec![1.0, -1.0, 0.0]),
            Builtin::So3 => None,
            Builtin::GalileiN2D3 => {
                let mut a = vec![0.0; 15];
                a[galilei_index::m(0)] = 1.0;
                a[galilei_index::m(1)] = -1.0;
                Some(a)
            }
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownAlgebra(s.to_string()))
    }
}

/// Index layout of the 15-dimensional conformal Galilei algebra.
pub mod galilei_index {
    pub const DIM: usize = 15;

    pub const fn j(i: usize) -> usize {
        i
    }

    pub const fn m(alpha: usize) -> usize {
        3 + alpha
    }

    pub const fn x(alpha: usize, i: usize) -> usize {
        6 + 3 * alpha + i
    }
}

/// Euclidean Levi-Civita symbol.
pub(crate) fn eps3(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || i == k {
        0.0
    } else if (i, j, k) == (0, 1, 2) || (i, j, k) == (1, 2, 0) || (i, j, k) == (2, 0, 1) {
        1.0
    } else {
        -1.0
    }
}

/// so(2,1) metric diag(+, -, -).
pub(crate) fn metric(alpha: usize) -> f64 {
    if alpha == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `eps_ab^c = eps_abd g^dc` with `eps_012 = 1`.
pub(crate) fn eps_lorentz(a: usize, b: usize, c: usize) -> f64 {
    eps3(a, b, c) * metric(c)
}

// c_ij^k = eps_ijk, i.e. [J_i, J_j] = i eps_ijk J_k
fn so3_records(offset: usize) -> Vec<(usize, usize, usize, f64)> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            for k in 0..3 {
                let e = eps3(i, j, k);
                if e != 0.0 {
                    out.push((offset + i, offset + j, offset + k, e));
                }
            }
        }
    }
    out
}

// c_ab^c = -eps_ab^c, i.e. [M_a, M_b] = -i eps_ab^c M_c
fn so21_records(offset: usize) -> Vec<(usize, usize, usize, f64)> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in (a + 1)..3 {
            for c in 0..3 {
                let e = eps_lorentz(a, b, c);
                if e != 0.0 {
                    out.push((offset + a, offset + b, offset + c, -e));
                }
            }
        }
    }
    out
}

fn galilei_names() -> Vec<&'static str> {
    vec![
        "J1", "J2", "J3", "M0", "M1", "M2", "X01", "X02", "X03", "X11", "X12", "X13", "X21", "X22", "X23",
    ]
}

fn galilei_records() -> Vec<(usize, usize, usize, f64)> {
    use galilei_index::{j, m, x};
    let mut out = so3_records(j(0));
    out.extend(so21_records(m(0)));
    // [J_i, X_aj] = i eps_ijk X_ak
    for a in 0..3 {
        for i in 0..3 {
            for jj in 0..3 {
                for k in 0..3 {
                    let e = eps3(i, jj, k);
                    if e != 0.0 {
                        out.push((j(i), x(a, jj), x(a, k), e));
                    }
                }
            }
        }
    }
    // [M_a, X_bi] = -i eps_ab^c X_ci
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let e = eps_lorentz(a, b, c);
                if e != 0.0 {
                    for i in 0..3 {
                        out.push((m(a), x(b, i), x(c, i), -e));
                    }
                }
            }
        }
    }
    out
}

/// `zeta_0^2 - zeta_1^2 - zeta_2^2` on so(2,1)*.
pub fn lorentz_casimir() -> Observable {
    let q = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, -1.0]));
    Observable::quadratic("casimir", q)
}

fn x_block(zeta: &[f64]) -> Matrix3<f64> {
    Matrix3::from_fn(|a, i| zeta[galilei_index::x(a, i)])
}

fn scatter_x(grad: Matrix3<f64>) -> Vec<f64> {
    let mut out = vec![0.0; galilei_index::DIM];
    for a in 0..3 {
        for i in 0..3 {
            out[galilei_index::x(a, i)] = grad[(a, i)];
        }
    }
    out
}

// Invariants of x_ai under SO(2,1) x SO(3): tr(x^T g x), tr((x^T g x)^2), det x.
// The X_ai commute among themselves, so these Poisson-commute with everything.
fn galilei_casimirs() -> Vec<Observable> {
    let g = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, -1.0, -1.0));
    let c1 = Observable::new(
        "tr_xgx",
        move |z: &[f64]| {
            let x = x_block(z);
            (x.transpose() * g * x).trace()
        },
        move |z: &[f64]| scatter_x(2.0 * g * x_block(z)),
    );
    let c2 = Observable::new(
        "tr_xgx2",
        move |z: &[f64]| {
            let x = x_block(z);
            let q = x.transpose() * g * x;
            (q * q).trace()
        },
        move |z: &[f64]| {
            let x = x_block(z);
            scatter_x(4.0 * g * x * x.transpose() * g * x)
        },
    );
    let c3 = Observable::new(
        "det_x",
        |z: &[f64]| x_block(z).determinant(),
        |z: &[f64]| {
            let x = x_block(z);
            let cof = Matrix3::from_fn(|a, i| {
                let r: Vec<usize> = (0..3).filter(|&r| r != a).collect();
                let c: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                let minor = x[(r[0], c[0])] * x[(r[1], c[1])] - x[(r[0], c[1])] * x[(r[1], c[0])];
                if (a + i) % 2 == 0 {
                    minor
                } else {
                    -minor
                }
            });
            scatter_x(cof)
        },
    );
    vec![c1, c2, c3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraVector;

    #[test]
    fn all_builtins_validate() {
        for b in Builtin::ALL {
            let rep = b.algebra().validate();
            assert!(rep.passed, "{rep}");
        }
    }

    #[test]
    fn names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert!(matches!("sl3".parse::<Builtin>(), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn galilei_layout() {
        let alg = Builtin::GalileiN2D3.algebra();
        assert_eq!(alg.dim(), 15);
        assert_eq!(alg.names()[galilei_index::x(1, 2)], "X13");
        for p in 0..9 {
            for q in 0..9 {
                let br = alg
                    .commutator(&AlgebraVector::basis(15, 6 + p), &AlgebraVector::basis(15, 6 + q))
                    .unwrap();
                assert!(br.coeffs().iter().all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn so21_signs() {
        let alg = Builtin::So21M.algebra();
        assert_eq!(alg.c(0, 1, 2), 1.0);
        assert_eq!(alg.c(1, 2, 0), -1.0);
        assert_eq!(alg.c(2, 0, 1), 1.0);
    }
}
