//! Decomposed-type coins and their lift to 4-state walks.
//!
//! A DQW coin is a pair (M_R, M_I) acting on the real and imaginary parts of
//! the state separately. The walk is an isometry iff both matrices are
//! unitary and M_R* M_I is real; such pairs carry the parametrization
//!
//! ```text
//! M_R = e^{iΔ} [[α, β], [−β̄, ᾱ]],   M_I = M_R [[e, f], [f, −e]],
//! ```
//!
//! with |α|² + |β|² = 1, e² + f² = 1, Δ ∈ [−π, π). Identifying ℂ² with ℝ⁴
//! through Ψ ↦ (ℜΨ₁, ℜΨ₂, ℑΨ₁, ℑΨ₂) turns the DQW into a 4-state LQW whose
//! coin is the real orthogonal matrix [`lift_coin`] returns.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::numerics::{Complex64, ComplexMatrix2, ComplexMatrix4, Tolerance};
use crate::walk::{InitialState2, InitialState4, WalkState, WalkState2, WalkState4};

/// Deviations from the three isometry conditions, each a max-abs defect.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometryDiagnostic {
    /// ‖M_R* M_R − I‖_max
    pub unitary_r: f64,
    /// ‖M_I* M_I − I‖_max
    pub unitary_i: f64,
    /// max |ℑ(M_R* M_I)|
    pub product_real: f64,
}

impl IsometryDiagnostic {
    pub fn is_isometry(&self, tol: Tolerance) -> bool {
        self.unitary_r <= tol.eq_tol
            && self.unitary_i <= tol.eq_tol
            && self.product_real <= tol.eq_tol
    }
}

/// Measures how far (M_R, M_I) is from generating an isometric DQW.
pub fn check_isometry(m_r: &ComplexMatrix2, m_i: &ComplexMatrix2) -> IsometryDiagnostic {
    IsometryDiagnostic {
        unitary_r: m_r.unitarity_deviation(),
        unitary_i: m_i.unitarity_deviation(),
        product_real: m_r.adjoint().mat_mul(m_i).realness_deviation(),
    }
}

/// A coin pair already certified to generate an isometric walk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinPair {
    m_r: ComplexMatrix2,
    m_i: ComplexMatrix2,
}

impl CoinPair {
    pub fn new(m_r: ComplexMatrix2, m_i: ComplexMatrix2, tol: Tolerance) -> Result<Self, Error> {
        if !(m_r.is_finite() && m_i.is_finite()) {
            return Err(Error::NonFinite { what: "coin pair" });
        }
        let diag = check_isometry(&m_r, &m_i);
        if diag.is_isometry(tol) {
            Ok(CoinPair { m_r, m_i })
        } else {
            Err(Error::NonIsometric {
                unitary_r: diag.unitary_r,
                unitary_i: diag.unitary_i,
                product_real: diag.product_real,
            })
        }
    }

    pub fn m_r(&self) -> &ComplexMatrix2 {
        &self.m_r
    }

    pub fn m_i(&self) -> &ComplexMatrix2 {
        &self.m_i
    }
}

/// Canonical coordinates (α, β, e, f, Δ) for isometric pairs.
///
/// θ = arg α and φ = arg β are derived; a zero modulus yields phase 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairParams {
    alpha: Complex64,
    beta: Complex64,
    e: f64,
    f: f64,
    delta: f64,
}

impl PairParams {
    pub fn new(
        alpha: Complex64,
        beta: Complex64,
        e: f64,
        f: f64,
        delta: f64,
        tol: Tolerance,
    ) -> Result<Self, Error> {
        let finite = alpha.re.is_finite()
            && alpha.im.is_finite()
            && beta.re.is_finite()
            && beta.im.is_finite()
            && e.is_finite()
            && f.is_finite()
            && delta.is_finite();
        if !finite {
            return Err(Error::NonFinite {
                what: "pair parameters",
            });
        }
        let coin_norm = alpha.norm_sqr() + beta.norm_sqr();
        if (coin_norm - 1.0).abs() > tol.eq_tol {
            return Err(Error::InvalidParams {
                what: "|alpha|^2 + |beta|^2 must be 1",
                deviation: (coin_norm - 1.0).abs(),
            });
        }
        let ef_norm = e * e + f * f;
        if (ef_norm - 1.0).abs() > tol.eq_tol {
            return Err(Error::InvalidParams {
                what: "e^2 + f^2 must be 1",
                deviation: (ef_norm - 1.0).abs(),
            });
        }
        if !(-core::f64::consts::PI..core::f64::consts::PI).contains(&delta) {
            return Err(Error::InvalidParams {
                what: "delta must lie in [-pi, pi)",
                deviation: delta,
            });
        }
        Ok(PairParams {
            alpha,
            beta,
            e,
            f,
            delta,
        })
    }

    /// The one-parameter family through the Grover matrix: θ = 0, e = 0,
    /// f = −1, φ = −π/2, |α| = |β| = 1/√2. Δ = 3π/4 reproduces Grover.
    pub fn grover_family(delta: f64) -> Result<Self, Error> {
        let param = GroverFamilyParam::new(delta)?;
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Ok(PairParams {
            alpha: Complex64::new(s, 0.0),
            beta: Complex64::new(0.0, -s),
            e: 0.0,
            f: -1.0,
            delta: param.delta(),
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// arg α (0 when α = 0).
    pub fn theta(&self) -> f64 {
        self.alpha.im.atan2(self.alpha.re)
    }

    /// arg β (0 when β = 0).
    pub fn phi(&self) -> f64 {
        self.beta.im.atan2(self.beta.re)
    }

    pub fn abs_alpha(&self) -> f64 {
        self.alpha.norm()
    }

    pub fn abs_beta(&self) -> f64 {
        self.beta.norm()
    }
}

/// Builds the coin pair from canonical coordinates. The construction
/// satisfies the isometry conditions identically, so this cannot fail.
pub fn pair_from_params(params: &PairParams) -> CoinPair {
    let phase = Complex64::new(params.delta.cos(), params.delta.sin());
    let a = params.alpha;
    let b = params.beta;
    let m_r = ComplexMatrix2([[phase * a, phase * b], [-phase * b.conj(), phase * a.conj()]]);
    let ef = ComplexMatrix2::from_real([[params.e, params.f], [params.f, -params.e]]);
    let m_i = m_r.mat_mul(&ef);
    CoinPair { m_r, m_i }
}

/// ι: ℂ² → ℝ⁴, Ψ(x) ↦ (ℜΨ₁, ℜΨ₂, ℑΨ₁, ℑΨ₂)(x).
pub fn lift_state(state: &WalkState2) -> WalkState4 {
    let amps = state
        .sites()
        .iter()
        .map(|a| {
            [
                Complex64::new(a[0].re, 0.0),
                Complex64::new(a[1].re, 0.0),
                Complex64::new(a[0].im, 0.0),
                Complex64::new(a[1].im, 0.0),
            ]
        })
        .collect();
    // from_sites only re-checks finiteness, which lifting preserves.
    WalkState::from_sites(state.offset(), amps).expect("lift preserves validity")
}

/// κ: (ψ₁, ψ₂, ψ₃, ψ₄) ↦ (ψ₁ + iψ₃, ψ₂ + iψ₄), inverse of ι on real states.
pub fn unlift_state(state: &WalkState4) -> WalkState2 {
    let i = Complex64::new(0.0, 1.0);
    let amps = state
        .sites()
        .iter()
        .map(|a| [a[0] + i * a[2], a[1] + i * a[3]])
        .collect();
    WalkState::from_sites(state.offset(), amps).expect("unlift preserves validity")
}

/// ι applied to an origin state; the Euclidean norm is preserved term by
/// term, so no revalidation is needed.
pub fn lift_initial(initial: &InitialState2) -> InitialState4 {
    let phi = initial.components();
    InitialState4::new_unchecked([
        Complex64::new(phi[0].re, 0.0),
        Complex64::new(phi[1].re, 0.0),
        Complex64::new(phi[0].im, 0.0),
        Complex64::new(phi[1].im, 0.0),
    ])
}

/// The real orthogonal 4×4 coin M̃ = [[ℜM_R, −ℑM_I], [ℑM_R, ℜM_I]]
/// intertwining the lift: ι ∘ U_D = Ũ ∘ ι.
pub fn lift_coin(pair: &CoinPair) -> ComplexMatrix4 {
    let r = pair.m_r();
    let i = pair.m_i();
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for row in 0..2 {
        for col in 0..2 {
            out[row][col] = Complex64::new(r.0[row][col].re, 0.0);
            out[row][col + 2] = Complex64::new(-i.0[row][col].im, 0.0);
            out[row + 2][col] = Complex64::new(r.0[row][col].im, 0.0);
            out[row + 2][col + 2] = Complex64::new(i.0[row][col].re, 0.0);
        }
    }
    ComplexMatrix4(out)
}

/// Δ alone picks a member of the Grover family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverFamilyParam {
    delta: f64,
}

impl GroverFamilyParam {
    pub fn new(delta: f64) -> Result<Self, Error> {
        if !delta.is_finite() {
            return Err(Error::NonFinite { what: "delta" });
        }
        if !(-core::f64::consts::PI..core::f64::consts::PI).contains(&delta) {
            return Err(Error::InvalidParams {
                what: "delta must lie in [-pi, pi)",
                deviation: delta,
            });
        }
        Ok(GroverFamilyParam { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Closed form of the lifted Grover-family coin,
///
/// ```text
///            ⎡ cosΔ  sinΔ −cosΔ  sinΔ⎤
/// M̃(Δ) = 1/√2⎢ sinΔ  cosΔ  sinΔ −cosΔ⎥
///            ⎢ sinΔ −cosΔ −sinΔ −cosΔ⎥
///            ⎣−cosΔ  sinΔ −cosΔ −sinΔ⎦
/// ```
///
/// which at Δ = 3π/4 is the Grover matrix.
pub fn grover_family_matrix(param: &GroverFamilyParam) -> ComplexMatrix4 {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let c = s * param.delta.cos();
    let d = s * param.delta.sin();
    ComplexMatrix4::from_real([
        [c, d, -c, d],
        [d, c, d, -c],
        [d, -c, -d, -c],
        [-c, d, -c, -d],
    ])
}
