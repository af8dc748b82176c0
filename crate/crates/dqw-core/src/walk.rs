//! Time evolution and probability measures for the three walk models on ℤ:
//! 2-state linear quantum walks (LQW), 2-state decomposed-type quantum walks
//! (DQW), and 4-state LQWs.
//!
//! One step is coin-then-shift. For the 2-state models the first component
//! moves left and the second right; for the 4-state model components 1 and 3
//! move left and components 2 and 4 move right. Equivalently, with P/Q the
//! top/bottom rows of the coin, (UΨ)(x) = PΨ(x+1) + QΨ(x−1).

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::decompose::CoinPair;
use crate::error::Error;
use crate::numerics::{vec_norm_sqr, Complex64, ComplexMatrix2, ComplexMatrix4, Tolerance};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A normalized initial state placed at the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialState<const N: usize> {
    phi: [Complex64; N],
}

pub type InitialState2 = InitialState<2>;
pub type InitialState4 = InitialState<4>;

impl<const N: usize> InitialState<N> {
    /// Validates finiteness and unit Euclidean norm (within `prob_tol`).
    /// Non-normalized inputs are rejected, never silently rescaled.
    pub fn new(phi: [Complex64; N], tol: Tolerance) -> Result<Self, Error> {
        if !phi.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite {
                what: "initial state",
            });
        }
        let norm = vec_norm_sqr(&phi).sqrt();
        if (norm - 1.0).abs() > tol.prob_tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(InitialState { phi })
    }

    pub fn components(&self) -> [Complex64; N] {
        self.phi
    }

    /// For maps that preserve the norm exactly (e.g. the real-imaginary
    /// lift), revalidation would only re-round the same sum.
    pub(crate) fn new_unchecked(phi: [Complex64; N]) -> Self {
        InitialState { phi }
    }
}

/// A finitely supported state: amplitudes on the contiguous window
/// [offset, offset + len).
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState<const N: usize> {
    offset: i64,
    amps: Vec<[Complex64; N]>,
}

pub type WalkState2 = WalkState<2>;
pub type WalkState4 = WalkState<4>;

impl<const N: usize> WalkState<N> {
    pub fn from_initial(initial: &InitialState<N>) -> Self {
        WalkState {
            offset: 0,
            amps: vec![initial.components()],
        }
    }

    /// Builds a state from raw site amplitudes; rejects empty or non-finite
    /// input. No normalization is implied.
    pub fn from_sites(offset: i64, amps: Vec<[Complex64; N]>) -> Result<Self, Error> {
        if amps.is_empty() {
            return Err(Error::Domain {
                what: "walk state needs at least one site",
            });
        }
        if !amps
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite { what: "walk state" });
        }
        Ok(WalkState { offset, amps })
    }

    /// Leftmost stored position.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn sites(&self) -> &[[Complex64; N]] {
        &self.amps
    }

    /// Amplitudes at position `x` (zero outside the stored window).
    pub fn amplitude(&self, x: i64) -> [Complex64; N] {
        let i = x - self.offset;
        if i >= 0 && (i as usize) < self.amps.len() {
            self.amps[i as usize]
        } else {
            [ZERO; N]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &[Complex64; N])> {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, a)| (self.offset + i as i64, a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(vec_norm_sqr).sum()
    }

    /// μ(x) = ‖Ψ(x)‖² per site.
    pub fn measure(&self) -> Distribution {
        Distribution {
            offset: self.offset,
            masses: self.amps.iter().map(vec_norm_sqr).collect(),
        }
    }

    /// Largest per-component amplitude difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.amps.len() as i64)
            .max(other.offset + other.amps.len() as i64);
        let mut worst = 0.0f64;
        for x in lo..hi {
            let a = self.amplitude(x);
            let b = other.amplitude(x);
            for i in 0..N {
                worst = worst.max((a[i] - b[i]).norm());
            }
        }
        worst
    }
}

/// Per-site probability masses on a contiguous window.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    offset: i64,
    masses: Vec<f64>,
}

impl Distribution {
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass(&self, x: i64) -> f64 {
        let i = x - self.offset;
        if i >= 0 && (i as usize) < self.masses.len() {
            self.masses[i as usize]
        } else {
            0.0
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .map(move |(i, &m)| (self.offset + i as i64, m))
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Total mass on positions with lo ≤ x ≤ hi.
    pub fn mass_in(&self, lo: i64, hi: i64) -> f64 {
        self.iter()
            .filter(|&(x, _)| lo <= x && x <= hi)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.masses.len() as i64)
            .max(other.offset + other.masses.len() as i64);
        let mut worst = 0.0f64;
        for x in lo..hi {
            worst = worst.max((self.mass(x) - other.mass(x)).abs());
        }
        worst
    }
}

fn ensure_unitary2(coin: &ComplexMatrix2, tol: Tolerance) -> Result<(), Error> {
    if coin.is_unitary(tol) {
        Ok(())
    } else {
        Err(Error::NonUnitary {
            what: "2x2 coin",
            deviation: coin.unitarity_deviation(),
        })
    }
}

fn ensure_unitary4(coin: &ComplexMatrix4, tol: Tolerance) -> Result<(), Error> {
    if coin.is_unitary(tol) {
        Ok(())
    } else {
        Err(Error::NonUnitary {
            what: "4x4 coin",
            deviation: coin.unitarity_deviation(),
        })
    }
}

fn step2_raw(state: &WalkState2, coined: impl Fn(&[Complex64; 2]) -> [Complex64; 2]) -> WalkState2 {
    let n = state.amps.len();
    let mut out = vec![[ZERO; 2]; n + 2];
    for (i, a) in state.amps.iter().enumerate() {
        let c = coined(a);
        // Site offset+i sends component 1 to x−1 (index i in the widened
        // window) and component 2 to x+1 (index i+2).
        out[i][0] += c[0];
        out[i + 2][1] += c[1];
    }
    WalkState {
        offset: state.offset - 1,
        amps: out,
    }
}

fn dqw_coined(pair: &CoinPair, a: &[Complex64; 2]) -> [Complex64; 2] {
    // Split into real/imaginary component vectors, apply M_R and M_I,
    // recombine: C_D Ψ = M_R ℜΨ + i·M_I ℑΨ.
    let re = [
        Complex64::new(a[0].re, 0.0),
        Complex64::new(a[1].re, 0.0),
    ];
    let im = [
        Complex64::new(a[0].im, 0.0),
        Complex64::new(a[1].im, 0.0),
    ];
    let cr = pair.m_r().mul_vec(re);
    let ci = pair.m_i().mul_vec(im);
    let i = Complex64::new(0.0, 1.0);
    [cr[0] + i * ci[0], cr[1] + i * ci[1]]
}

fn step4_raw(state: &WalkState4, coin: &ComplexMatrix4) -> WalkState4 {
    let n = state.amps.len();
    let mut out = vec![[ZERO; 4]; n + 2];
    for (i, a) in state.amps.iter().enumerate() {
        let c = coin.mul_vec(*a);
        // Components 1 and 3 shift left, components 2 and 4 shift right.
        out[i][0] += c[0];
        out[i][2] += c[2];
        out[i + 2][1] += c[1];
        out[i + 2][3] += c[3];
    }
    WalkState {
        offset: state.offset - 1,
        amps: out,
    }
}

/// One 2-state LQW step (UΨ)(x) = PΨ(x+1) + QΨ(x−1); the coin is validated.
pub fn step_lqw2(
    state: &WalkState2,
    coin: &ComplexMatrix2,
    tol: Tolerance,
) -> Result<WalkState2, Error> {
    ensure_unitary2(coin, tol)?;
    Ok(step2_raw(state, |a| coin.mul_vec(*a)))
}

/// One DQW step: M_R acts on the real part, M_I on the imaginary part, then
/// the components shift. The pair's Lemma-1 isometry holds by construction
/// of [`CoinPair`], so no revalidation happens here.
pub fn step_dqw(state: &WalkState2, pair: &CoinPair) -> WalkState2 {
    step2_raw(state, |a| dqw_coined(pair, a))
}

/// One 4-state LQW step; the coin is validated.
pub fn step_lqw4(
    state: &WalkState4,
    coin: &ComplexMatrix4,
    tol: Tolerance,
) -> Result<WalkState4, Error> {
    ensure_unitary4(coin, tol)?;
    Ok(step4_raw(state, coin))
}

/// n-fold 2-state LQW evolution from the origin (coin validated once).
pub fn evolve_lqw2(
    initial: &InitialState2,
    coin: &ComplexMatrix2,
    n: usize,
    tol: Tolerance,
) -> Result<WalkState2, Error> {
    ensure_unitary2(coin, tol)?;
    let mut state = WalkState::from_initial(initial);
    for _ in 0..n {
        state = step2_raw(&state, |a| coin.mul_vec(*a));
    }
    Ok(state)
}

/// n-fold DQW evolution from the origin.
pub fn evolve_dqw(initial: &InitialState2, pair: &CoinPair, n: usize) -> WalkState2 {
    let mut state = WalkState::from_initial(initial);
    for _ in 0..n {
        state = step_dqw(&state, pair);
    }
    state
}

/// n-fold 4-state LQW evolution from the origin (coin validated once).
pub fn evolve_lqw4(
    initial: &InitialState4,
    coin: &ComplexMatrix4,
    n: usize,
    tol: Tolerance,
) -> Result<WalkState4, Error> {
    ensure_unitary4(coin, tol)?;
    let mut state = WalkState::from_initial(initial);
    for _ in 0..n {
        state = step4_raw(&state, coin);
    }
    Ok(state)
}
