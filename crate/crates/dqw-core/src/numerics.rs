//! Fixed-size complex linear algebra shared by every other module: 2×2 and
//! 4×4 dense matrices over `Complex64`, plus the tolerance policy used by all
//! validation predicates.

use core::ops::Mul;

#[allow(unused_imports)]
use num_traits::Float;

pub use num_complex::Complex64;

/// Absolute tolerance for exact-identity checks (unitarity, realness,
/// closed-form agreement).
pub const DEFAULT_EQ_TOL: f64 = 1e-12;
/// Absolute tolerance for probability-mass checks (norm conservation,
/// measure totals); looser because mass accumulates over ~10³ sites.
pub const DEFAULT_PROB_TOL: f64 = 1e-10;

/// Tolerance policy threaded through validation predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Equality tolerance for matrix identities.
    pub eq_tol: f64,
    /// Probability tolerance for norm/mass identities.
    pub prob_tol: f64,
}

impl Tolerance {
    pub fn new(eq_tol: f64, prob_tol: f64) -> Result<Self, Error> {
        if eq_tol > 0.0 && prob_tol > 0.0 && eq_tol.is_finite() && prob_tol.is_finite() {
            Ok(Tolerance { eq_tol, prob_tol })
        } else {
            Err(Error::InvalidTolerance { eq_tol, prob_tol })
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eq_tol: DEFAULT_EQ_TOL,
            prob_tol: DEFAULT_PROB_TOL,
        }
    }
}

use crate::error::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

macro_rules! complex_matrix {
    ($(#[$doc:meta])* $name:ident, $n:expr) => {
        $(#[$doc])*
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct $name(pub [[Complex64; $n]; $n]);

        impl $name {
            pub const DIM: usize = $n;

            pub fn zero() -> Self {
                $name([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zero();
                for i in 0..$n {
                    m.0[i][i] = ONE;
                }
                m
            }

            /// Builds a matrix from purely real entries.
            pub fn from_real(rows: [[f64; $n]; $n]) -> Self {
                let mut m = Self::zero();
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] = Complex64::new(rows[r][c], 0.0);
                    }
                }
                m
            }

            pub fn at(&self, r: usize, c: usize) -> Complex64 {
                self.0[r][c]
            }

            pub fn row(&self, r: usize) -> [Complex64; $n] {
                self.0[r]
            }

            /// Conjugate transpose m*.
            pub fn adjoint(&self) -> Self {
                let mut m = Self::zero();
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] = self.0[c][r].conj();
                    }
                }
                m
            }

            pub fn transpose(&self) -> Self {
                let mut m = Self::zero();
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] = self.0[c][r];
                    }
                }
                m
            }

            pub fn conj(&self) -> Self {
                let mut m = *self;
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] = m.0[r][c].conj();
                    }
                }
                m
            }

            pub fn scale(&self, s: Complex64) -> Self {
                let mut m = *self;
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] *= s;
                    }
                }
                m
            }

            pub fn add(&self, other: &Self) -> Self {
                let mut m = *self;
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] += other.0[r][c];
                    }
                }
                m
            }

            pub fn sub(&self, other: &Self) -> Self {
                let mut m = *self;
                for r in 0..$n {
                    for c in 0..$n {
                        m.0[r][c] -= other.0[r][c];
                    }
                }
                m
            }

            /// Standard matrix product.
            pub fn mat_mul(&self, rhs: &Self) -> Self {
                let mut m = Self::zero();
                for r in 0..$n {
                    for c in 0..$n {
                        let mut acc = ZERO;
                        for k in 0..$n {
                            acc += self.0[r][k] * rhs.0[k][c];
                        }
                        m.0[r][c] = acc;
                    }
                }
                m
            }

            pub fn mul_vec(&self, v: [Complex64; $n]) -> [Complex64; $n] {
                let mut out = [ZERO; $n];
                for r in 0..$n {
                    let mut acc = ZERO;
                    for k in 0..$n {
                        acc += self.0[r][k] * v[k];
                    }
                    out[r] = acc;
                }
                out
            }

            pub fn trace(&self) -> Complex64 {
                let mut t = ZERO;
                for i in 0..$n {
                    t += self.0[i][i];
                }
                t
            }

            /// Largest entry magnitude.
            pub fn max_abs(&self) -> f64 {
                let mut m = 0.0f64;
                for r in 0..$n {
                    for c in 0..$n {
                        m = m.max(self.0[r][c].norm());
                    }
                }
                m
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.sub(other).max_abs()
            }

            /// Max-entry deviation of m*·m from the identity.
            pub fn unitarity_deviation(&self) -> f64 {
                self.adjoint().mat_mul(self).max_abs_diff(&Self::identity())
            }

            /// True iff m*·m equals the identity within `eq_tol`.
            pub fn is_unitary(&self, tol: Tolerance) -> bool {
                self.is_finite() && self.unitarity_deviation() <= tol.eq_tol
            }

            /// Largest imaginary-part magnitude over all entries.
            pub fn realness_deviation(&self) -> f64 {
                let mut m = 0.0f64;
                for r in 0..$n {
                    for c in 0..$n {
                        m = m.max(self.0[r][c].im.abs());
                    }
                }
                m
            }

            /// True iff every entry's imaginary part has magnitude ≤ `eq_tol`.
            pub fn is_real_matrix(&self, tol: Tolerance) -> bool {
                self.is_finite() && self.realness_deviation() <= tol.eq_tol
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                self.mat_mul(&rhs)
            }
        }
    };
}

complex_matrix!(
    /// Dense 2×2 complex matrix (coin matrices M, M_R, M_I).
    ComplexMatrix2,
    2
);
complex_matrix!(
    /// Dense 4×4 complex matrix (the lifted coin M̃, Û(k), and friends).
    ComplexMatrix4,
    4
);

impl ComplexMatrix2 {
    /// The Hadamard coin (1/√2)[[1, 1], [1, −1]].
    pub fn hadamard() -> Self {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Self::from_real([[s, s], [s, -s]])
    }

    /// The Pauli X coin [[0, 1], [1, 0]].
    pub fn pauli_x() -> Self {
        Self::from_real([[0.0, 1.0], [1.0, 0.0]])
    }
}

/// True iff `a` and `b` differ by at most `tol` in complex modulus.
pub fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Squared Euclidean norm of a complex vector.
pub fn vec_norm_sqr<const N: usize>(v: &[Complex64; N]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Hermitian inner product ⟨u|v⟩ = Σ ū_i v_i (conjugate-linear in `u`).
pub fn inner<const N: usize>(u: &[Complex64; N], v: &[Complex64; N]) -> Complex64 {
    let mut acc = ZERO;
    for i in 0..N {
        acc += u[i].conj() * v[i];
    }
    acc
}
