//! Quantitative agreement between finite-time distributions and their
//! rescaled weak limits.
//!
//! The rescaled variable is y = x/n. Empirical mass is histogrammed into
//! bins [m·w, (m+1)·w) and held against the limit measure's mass of the
//! same bin. Around the origin the limit may carry a point mass that the
//! finite-n distribution smears over a few sites, so comparisons can
//! exclude a small window |y| ≤ ε and account for it separately.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::walk::Distribution;

/// Histogram geometry for rescaled comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareOptions {
    /// Bin width in y-units.
    pub bin_width: f64,
    /// Half-width ε of the origin window.
    pub origin_window: f64,
    /// Skip bins overlapping `[−ε, ε]` in the error norms (used when the
    /// limit has an atom at 0 that the histogram cannot represent).
    pub exclude_origin: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            bin_width: 0.02,
            origin_window: 0.02,
            exclude_origin: false,
        }
    }
}

impl CompareOptions {
    fn validate(&self) -> Result<(), Error> {
        if !(self.bin_width.is_finite() && self.bin_width > 0.0 && self.bin_width <= 1.0) {
            return Err(Error::Domain {
                what: "bin width must lie in (0, 1]",
            });
        }
        if !(self.origin_window.is_finite() && self.origin_window >= 0.0) {
            return Err(Error::Domain {
                what: "origin window must be nonnegative",
            });
        }
        Ok(())
    }
}

/// One histogram bin of the comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinComparison {
    pub lo: f64,
    pub hi: f64,
    pub empirical: f64,
    pub limit: f64,
    /// Whether the bin entered the error norms.
    pub counted: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub bins: Vec<BinComparison>,
    /// Σ |empirical − limit| over counted bins.
    pub l1: f64,
    /// max |empirical − limit| over counted bins.
    pub sup: f64,
    /// Empirical mass inside the excluded window (0 if nothing excluded).
    pub excluded_empirical: f64,
    /// Limit-measure continuous mass inside the excluded window.
    pub excluded_limit: f64,
}

/// Histogram `dist` rescaled by n against a limit measure described by its
/// bin-mass function `limit_mass(lo, hi)` (continuous part only).
pub fn compare_rescaled(
    dist: &Distribution,
    n: usize,
    limit_mass: impl Fn(f64, f64) -> f64,
    opts: &CompareOptions,
) -> Result<ComparisonReport, Error> {
    if n == 0 {
        return Err(Error::Domain {
            what: "rescaled comparison needs n >= 1",
        });
    }
    opts.validate()?;
    let w = opts.bin_width;
    let scale = n as f64;

    // Cover [−1, 1] entirely; the index of y's bin is floor(y/w).
    let m_lo = (-1.0 / w).floor() as i64 - 1;
    let m_hi = (1.0 / w).floor() as i64 + 1;
    let bins_len = (m_hi - m_lo + 1) as usize;
    let mut empirical = alloc::vec![0.0f64; bins_len];
    for (x, mass) in dist.iter() {
        if mass == 0.0 {
            continue;
        }
        let y = x as f64 / scale;
        let m = (y / w).floor() as i64;
        let m = m.clamp(m_lo, m_hi);
        empirical[(m - m_lo) as usize] += mass;
    }

    let mut bins = Vec::with_capacity(bins_len);
    let mut l1 = 0.0f64;
    let mut sup = 0.0f64;
    let mut excluded_empirical = 0.0f64;
    let mut excluded_limit = 0.0f64;
    for (i, &emp) in empirical.iter().enumerate() {
        let m = m_lo + i as i64;
        let lo = m as f64 * w;
        let hi = (m + 1) as f64 * w;
        let lim = limit_mass(lo, hi);
        let overlaps_window = lo < opts.origin_window && hi > -opts.origin_window;
        let counted = !(opts.exclude_origin && overlaps_window);
        if counted {
            let err = (emp - lim).abs();
            l1 += err;
            sup = sup.max(err);
        } else {
            excluded_empirical += emp;
            excluded_limit += lim;
        }
        bins.push(BinComparison {
            lo,
            hi,
            empirical: emp,
            limit: lim,
            counted,
        });
    }
    Ok(ComparisonReport {
        bins,
        l1,
        sup,
        excluded_empirical,
        excluded_limit,
    })
}

/// Time-averaged mass near the origin,
/// (Σ_{|x| ≤ εn} μ_n + Σ_{|x| ≤ ε(n+1)} μ_{n+1}) / 2.
/// The two consecutive times cancel the even/odd parity oscillation; the
/// value converges to the δ₀ weight when the walk localizes.
pub fn localization_mass(
    mu_n: &Distribution,
    mu_next: &Distribution,
    n: usize,
    eps: f64,
) -> f64 {
    let cutoff = |dist: &Distribution, steps: usize| {
        let radius = (eps * steps as f64).floor() as i64;
        dist.mass_in(-radius, radius)
    };
    0.5 * (cutoff(mu_n, n) + cutoff(mu_next, n + 1))
}

/// Σ μ(x) (x/n)^order.
pub fn empirical_moment(dist: &Distribution, n: usize, order: u32) -> f64 {
    let scale = (n.max(1)) as f64;
    dist.iter()
        .map(|(x, mass)| mass * (x as f64 / scale).powi(order as i32))
        .sum()
}

/// Σ μ(x) over lo ≤ x/n ≤ hi.
pub fn mass_within(dist: &Distribution, n: usize, lo: f64, hi: f64) -> f64 {
    let scale = (n.max(1)) as f64;
    dist.iter()
        .filter(|&(x, _)| {
            let y = x as f64 / scale;
            lo <= y && y <= hi
        })
        .map(|(_, mass)| mass)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Complex64, ComplexMatrix2, Tolerance};
    use crate::walk::{evolve_lqw2, InitialState};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn hadamard_dist(n: usize) -> Distribution {
        let initial = InitialState::new(
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            tol(),
        )
        .unwrap();
        evolve_lqw2(&initial, &ComplexMatrix2::hadamard(), n, tol())
            .unwrap()
            .measure()
    }

    #[test]
    fn histogram_conserves_mass() {
        let n = 50;
        let dist = hadamard_dist(n);
        let report =
            compare_rescaled(&dist, n, |_, _| 0.0, &CompareOptions::default()).unwrap();
        let total: f64 = report.bins.iter().map(|b| b.empirical).sum();
        assert!((total - 1.0).abs() <= 1e-12);
        // With a zero limit, l1 is exactly the retained mass.
        assert!((report.l1 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn perfect_limit_gives_zero_error() {
        let n = 40;
        let dist = hadamard_dist(n);
        // Feed the empirical bin masses back in as the "limit".
        let first =
            compare_rescaled(&dist, n, |_, _| 0.0, &CompareOptions::default()).unwrap();
        let lookup = first.bins.clone();
        let w = CompareOptions::default().bin_width;
        let report = compare_rescaled(
            &dist,
            n,
            |lo, _| {
                lookup
                    .iter()
                    .find(|b| (b.lo - lo).abs() < w * 1e-6)
                    .map_or(0.0, |b| b.empirical)
            },
            &CompareOptions::default(),
        )
        .unwrap();
        assert!(report.l1 <= 1e-12);
        assert!(report.sup <= 1e-12);
    }

    #[test]
    fn origin_exclusion_reroutes_mass() {
        let n = 30;
        let dist = hadamard_dist(n);
        let opts = CompareOptions {
            exclude_origin: true,
            ..CompareOptions::default()
        };
        let with = compare_rescaled(&dist, n, |_, _| 0.0, &opts).unwrap();
        let without =
            compare_rescaled(&dist, n, |_, _| 0.0, &CompareOptions::default()).unwrap();
        assert!(with.excluded_empirical > 0.0);
        assert!((with.l1 + with.excluded_empirical - without.l1).abs() <= 1e-12);
        assert_eq!(without.excluded_empirical, 0.0);
    }

    #[test]
    fn moments_and_windows() {
        let n = 12;
        let dist = hadamard_dist(n);
        assert!((empirical_moment(&dist, n, 0) - 1.0).abs() <= 1e-12);
        assert!((mass_within(&dist, n, -1.0, 1.0) - 1.0).abs() <= 1e-12);
        let left = mass_within(&dist, n, -1.0, -0.001);
        let right = mass_within(&dist, n, 0.001, 1.0);
        let origin = mass_within(&dist, n, -0.001, 0.001);
        assert!((left + right + origin - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn localization_mass_averages_consecutive_times() {
        // The X-coin walk alternates all mass between x = 0 and |x| = 1.
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let initial = InitialState::new(
            [Complex64::new(s, 0.0), Complex64::new(0.0, s)],
            tol(),
        )
        .unwrap();
        let coin = ComplexMatrix2::pauli_x();
        let n = 20;
        let mu_n = evolve_lqw2(&initial, &coin, n, tol()).unwrap().measure();
        let mu_next = evolve_lqw2(&initial, &coin, n + 1, tol()).unwrap().measure();
        // ε n < 1, so the window is {0}: full mass at even times, none at odd.
        let avg = localization_mass(&mu_n, &mu_next, n, 0.02);
        assert!((avg - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn invalid_options_rejected() {
        let dist = hadamard_dist(4);
        assert!(compare_rescaled(&dist, 0, |_, _| 0.0, &CompareOptions::default()).is_err());
        let bad = CompareOptions {
            bin_width: 0.0,
            ..CompareOptions::default()
        };
        assert!(compare_rescaled(&dist, 4, |_, _| 0.0, &bad).is_err());
    }
}
