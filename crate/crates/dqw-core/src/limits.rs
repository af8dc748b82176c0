//! Closed-form weak limits of X_n/n.
//!
//! Two exact descriptions are implemented: the arcsine-type law with density
//! (1 − Cy)·f_K(y; |a|) for 2-state walks, and the Grover-family limit
//! measure A·δ₀ + f(x)·1_{(−|p|,|p|)} for lifted walks, together with the
//! exactly periodic / exactly ballistic states at the four special Δ where
//! the continuous description degenerates. Moments can be evaluated both
//! from the densities and from the spectral (momentum-integral)
//! representation; the two routes agree to quadrature accuracy and serve as
//! mutual verification.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::decompose::GroverFamilyParam;
use crate::error::Error;
use crate::numerics::{Complex64, ComplexMatrix2, Tolerance};
use crate::quad::{edge_singular, edge_singular_partial};
use crate::spectral::{eigen_system_grover_family, family_p, family_q, midpoint_k_grid};
use crate::walk::{InitialState2, InitialState4, WalkState, WalkState4};

/// Momentum nodes for spectral moment integrals (even ⇒ avoids k = 0, ±π).
pub const K_QUAD_POINTS: usize = 2048;
/// Nodes for integrals of the limit densities over position space.
pub const X_QUAD_POINTS: usize = 4096;
/// Simpson panels for partial (per-interval) density integrals.
const PARTIAL_PANELS: usize = 256;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The arcsine-type density √(1−r²) / (π(1−x²)√(r²−x²)) on the open
/// interval (−r, r), zero outside — including at the endpoints themselves.
/// Meaningful for 0 < r < 1.
pub fn konno_density(x: f64, r: f64) -> f64 {
    if !(x.abs() < r) {
        return 0.0;
    }
    (1.0 - r * r).sqrt() / (core::f64::consts::PI * (1.0 - x * x) * (r * r - x * x).sqrt())
}

/// Skew coefficient C(a, b; φ₁, φ₂) = |φ₁|² − |φ₂|² − 2ℜ(aφ₁·conj(bφ₂))/|a|²
/// of the 2-state limit density (1 − Cy)·f_K(y; |a|).
pub fn konno_drift_coeff(
    a: Complex64,
    b: Complex64,
    phi: &[Complex64; 2],
) -> Result<f64, Error> {
    let a2 = a.norm_sqr();
    if a2 == 0.0 {
        return Err(Error::Domain {
            what: "drift coefficient needs a nonzero (1,1) coin entry",
        });
    }
    Ok(phi[0].norm_sqr() - phi[1].norm_sqr()
        - 2.0 * (a * phi[0] * (b * phi[1]).conj()).re / a2)
}

/// Weak limit of X_n/n for a 2-state walk: density (1 − Cy)·f_K(y; r).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KonnoLimit {
    r: f64,
    c: f64,
}

impl KonnoLimit {
    /// Reads r = |a| and C off the coin and initial state. The limit law
    /// needs all four coin entries nonzero, i.e. 0 < |a| < 1.
    pub fn new(
        coin: &ComplexMatrix2,
        initial: &InitialState2,
        tol: Tolerance,
    ) -> Result<Self, Error> {
        if !coin.is_unitary(tol) {
            return Err(Error::NonUnitary {
                what: "2x2 coin",
                deviation: coin.unitarity_deviation(),
            });
        }
        let a = coin.at(0, 0);
        let b = coin.at(0, 1);
        let r = a.norm();
        if r <= tol.eq_tol || r >= 1.0 - tol.eq_tol {
            return Err(Error::Domain {
                what: "limit law needs 0 < |a| < 1 (all coin entries nonzero)",
            });
        }
        let c = konno_drift_coeff(a, b, &initial.components())?;
        Ok(KonnoLimit { r, c })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn drift_coeff(&self) -> f64 {
        self.c
    }

    pub fn density(&self, y: f64) -> f64 {
        (1.0 - self.c * y) * konno_density(y, self.r)
    }

    // density(y)·√(r²−y²): the edge singularity removed, as the quadrature
    // substitution expects.
    fn smooth_part(&self, y: f64) -> f64 {
        (1.0 - self.r * self.r).sqrt() * (1.0 - self.c * y)
            / (core::f64::consts::PI * (1.0 - y * y))
    }

    /// ∫ yʳ dμ over the whole support.
    pub fn moment(&self, order: u32) -> f64 {
        edge_singular(self.r, X_QUAD_POINTS, |y| {
            self.smooth_part(y) * y.powi(order as i32)
        })
    }

    /// μ([lo, hi)) — the mass of one histogram bin, say.
    pub fn mass_in(&self, lo: f64, hi: f64) -> f64 {
        edge_singular_partial(self.r, lo, hi, PARTIAL_PANELS, |y| self.smooth_part(y))
    }
}

/// Weak limit of X_n/n for the Grover family: atom A·δ₀ plus a density on
/// (−|p|, |p|).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverLimit {
    p: f64,
    q: f64,
    d0: f64,
    d1: f64,
    d2: f64,
    a_coeff: f64,
}

/// Closed-form limit for Δ outside {±π/4, ±3π/4}. At those four deltas the
/// rescaled walk degenerates (|p| ∈ {0, 1}) and the exact states of
/// [`exact_state_b`] / [`exact_state_c`] replace it.
pub fn grover_limit(
    param: &GroverFamilyParam,
    initial: &InitialState4,
    tol: Tolerance,
) -> Result<GroverLimit, Error> {
    let delta = param.delta();
    let quarter = core::f64::consts::FRAC_PI_4;
    for excluded in [quarter, -quarter, 3.0 * quarter, -3.0 * quarter] {
        if (delta - excluded).abs() <= tol.eq_tol {
            return Err(Error::ExcludedDelta { delta });
        }
    }
    let p = family_p(delta);
    let q = family_q(delta);
    let phi = initial.components();
    let (f1, f2, f3, f4) = (phi[0], phi[1], phi[2], phi[3]);

    let d0 = (f1 - f2).norm_sqr() + (f3 - f4).norm_sqr();
    let d1 = p * ((f2 - f4).norm_sqr() - (f1 - f3).norm_sqr())
        + q * ((f2 + f3).norm_sqr() - (f1 + f4).norm_sqr());
    let d2 = p * q * ((f1 + f2).norm_sqr() - (f3 + f4).norm_sqr())
        + 2.0 * p * p * ((f1 - f4).conj() * (f2 - f3)).re
        + 2.0 * q * q * ((f1 + f3).conj() * (f2 + f4)).re;
    // (1 − √(1−p²))/(2p²) rewritten to avoid the p → 0 cancellation.
    let a_coeff = 1.0 - d0 / 2.0 - d2 / (2.0 * (1.0 + (1.0 - p * p).sqrt()));
    Ok(GroverLimit {
        p,
        q,
        d0,
        d1,
        d2,
        a_coeff,
    })
}

impl GroverLimit {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn d_coeffs(&self) -> (f64, f64, f64) {
        (self.d0, self.d1, self.d2)
    }

    /// Weight A of the δ₀ atom — the localized fraction.
    pub fn delta_weight(&self) -> f64 {
        self.a_coeff
    }

    /// The continuous part
    /// f(x) = √(1−p²)(p²d₀ + p d₁ x + d₂ x²) / (2π p² √(p²−x²)(1−x²))
    /// on the open interval (−|p|, |p|), zero outside and at the edges.
    pub fn density(&self, x: f64) -> f64 {
        let c = self.p.abs();
        if !(x.abs() < c) {
            return 0.0;
        }
        self.smooth_part(x) / (self.p * self.p - x * x).sqrt()
    }

    fn smooth_part(&self, x: f64) -> f64 {
        let p2 = self.p * self.p;
        (1.0 - p2).sqrt() * (p2 * self.d0 + self.p * self.d1 * x + self.d2 * x * x)
            / (2.0 * core::f64::consts::PI * p2 * (1.0 - x * x))
    }

    /// ∫ f over (−|p|, |p|); equals 1 − A.
    pub fn continuous_mass(&self) -> f64 {
        edge_singular(self.p.abs(), X_QUAD_POINTS, |x| self.smooth_part(x))
    }

    /// ∫ xʳ dμ including the atom (which only feeds order 0).
    pub fn moment(&self, order: u32) -> f64 {
        let atom = if order == 0 { self.a_coeff } else { 0.0 };
        atom + edge_singular(self.p.abs(), X_QUAD_POINTS, |x| {
            self.smooth_part(x) * x.powi(order as i32)
        })
    }

    /// Continuous-part mass of [lo, hi); the atom is reported separately by
    /// [`Self::delta_weight`] so callers can treat the origin specially.
    pub fn mass_in(&self, lo: f64, hi: f64) -> f64 {
        edge_singular_partial(self.p.abs(), lo, hi, PARTIAL_PANELS, |x| self.smooth_part(x))
    }
}

/// Free-function form of [`GroverLimit::density`].
pub fn grover_density(limit: &GroverLimit, x: f64) -> f64 {
    limit.density(x)
}

fn ensure_delta(
    param: &GroverFamilyParam,
    allowed: [f64; 2],
    tol: Tolerance,
) -> Result<usize, Error> {
    for (j, want) in allowed.into_iter().enumerate() {
        if (param.delta() - want).abs() <= tol.eq_tol {
            return Ok(j);
        }
    }
    Err(Error::ExcludedDelta {
        delta: param.delta(),
    })
}

fn sign_of(j: usize, n: usize) -> f64 {
    // (−1)^j enters only through odd powers; the tables below already fold
    // in the n-dependence.
    let _ = n;
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Exact state at time n for Δ = π/4 (j = 0) or Δ = −3π/4 (j = 1): the
/// evolution has period 4 and never leaves {−2, …, 2}.
pub fn exact_state_b(
    param: &GroverFamilyParam,
    initial: &InitialState4,
    n: usize,
    tol: Tolerance,
) -> Result<WalkState4, Error> {
    let quarter = core::f64::consts::FRAC_PI_4;
    let j = ensure_delta(param, [quarter, -3.0 * quarter], tol)?;
    let s = sign_of(j, n);
    let phi = initial.components();
    let (f1, f2, f3, f4) = (phi[0], phi[1], phi[2], phi[3]);
    let half = 0.5 * s;
    let state = match n % 4 {
        0 => WalkState::from_sites(0, alloc::vec![phi]),
        1 => WalkState::from_sites(
            -1,
            alloc::vec![
                [
                    (f1 + f2 - f3 + f4) * half,
                    ZERO,
                    (f1 - f2 - f3 - f4) * half,
                    ZERO,
                ],
                [ZERO; 4],
                [
                    ZERO,
                    (f1 + f2 + f3 - f4) * half,
                    ZERO,
                    (-f1 + f2 - f3 - f4) * half,
                ],
            ],
        ),
        2 => WalkState::from_sites(
            -2,
            alloc::vec![
                [(f2 + f4) * 0.5, ZERO, (f2 + f4) * 0.5, ZERO],
                [ZERO; 4],
                [
                    (f2 - f4) * 0.5,
                    (f1 - f3) * 0.5,
                    (f4 - f2) * 0.5,
                    (f3 - f1) * 0.5,
                ],
                [ZERO; 4],
                [ZERO, (f1 + f3) * 0.5, ZERO, (f1 + f3) * 0.5],
            ],
        ),
        _ => WalkState::from_sites(
            -1,
            alloc::vec![
                [
                    (f2 - f4) * half,
                    (f2 + f4) * half,
                    (f2 - f4) * half,
                    -(f2 + f4) * half,
                ],
                [ZERO; 4],
                [
                    (f1 + f3) * half,
                    (f1 - f3) * half,
                    -(f1 + f3) * half,
                    (f1 - f3) * half,
                ],
            ],
        ),
    };
    Ok(state.expect("exact state windows are nonempty and finite"))
}

/// Exact state at time n for Δ = 3π/4 (j = 1, the Grover coin itself) or
/// Δ = −π/4 (j = 0): two counter-propagating fronts at ±n plus a frozen
/// piece near the origin.
pub fn exact_state_c(
    param: &GroverFamilyParam,
    initial: &InitialState4,
    n: usize,
    tol: Tolerance,
) -> Result<WalkState4, Error> {
    let quarter = core::f64::consts::FRAC_PI_4;
    let j = ensure_delta(param, [-quarter, 3.0 * quarter], tol)?;
    let s = sign_of(j, n);
    let phi = initial.components();
    let (f1, f2, f3, f4) = (phi[0], phi[1], phi[2], phi[3]);

    let len = 2 * n + 1;
    let mut amps = alloc::vec![[ZERO; 4]; len];
    let mut add = |x: i64, v: [Complex64; 4]| {
        let i = (x + n as i64) as usize;
        for (slot, z) in amps[i].iter_mut().zip(v) {
            *slot += z;
        }
    };

    let left = [(f1 - f3) * 0.5, ZERO, (f3 - f1) * 0.5, ZERO];
    let right = [ZERO, (f2 - f4) * 0.5, ZERO, (f4 - f2) * 0.5];
    if n % 2 == 0 {
        add(-(n as i64), left);
        add(
            0,
            [
                (f1 + f3) * 0.5,
                (f2 + f4) * 0.5,
                (f1 + f3) * 0.5,
                (f2 + f4) * 0.5,
            ],
        );
        add(n as i64, right);
    } else {
        let scaled = |v: [Complex64; 4]| v.map(|z| z * s);
        add(-(n as i64), scaled(left));
        add(
            -1,
            scaled([-(f2 + f4) * 0.5, ZERO, -(f2 + f4) * 0.5, ZERO]),
        );
        add(1, scaled([ZERO, -(f1 + f3) * 0.5, ZERO, -(f1 + f3) * 0.5]));
        add(n as i64, scaled(right));
    }
    Ok(WalkState::from_sites(-(n as i64), amps)
        .expect("exact state windows are nonempty and finite"))
}

/// lim E[(X_n/n)ʳ] for each requested order, evaluated from the spectral
/// representation ∫ Σⱼ (Dλⱼ/λⱼ)ʳ |⟨vⱼ|φ⟩|² dk/2π on the midpoint grid.
/// A walk launched at the origin has a k-independent Ψ̂₀ = φ.
pub fn limit_moments(
    param: &GroverFamilyParam,
    initial: &InitialState4,
    orders: &[u32],
) -> Result<Vec<f64>, Error> {
    let phi = initial.components();
    let mut sums = alloc::vec![0.0f64; orders.len()];
    let grid = midpoint_k_grid(K_QUAD_POINTS);
    for &k in &grid {
        let sys = eigen_system_grover_family(param, k)?;
        let weights = sys.overlaps(&phi);
        for (slot, &order) in sums.iter_mut().zip(orders) {
            let mut node = 0.0;
            for jdx in 0..4 {
                node += sys.velocities[jdx].powi(order as i32) * weights[jdx];
            }
            *slot += node;
        }
    }
    // Uniform midpoint weights: ∫ · dk/2π → plain average over the grid.
    for slot in &mut sums {
        *slot /= grid.len() as f64;
    }
    Ok(sums)
}
