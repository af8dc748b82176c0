//! Quadrature rules for the limit-measure integrals: a periodic composite
//! trapezoid rule for momentum integrals, and a sine substitution that
//! absorbs the inverse-square-root edge singularities of the limit densities.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::{PI, TAU};

/// ∫_{−π}^{π} f(k) dk by the composite trapezoid rule on `points` uniform
/// samples. The grid is midpoint-shifted, which leaves the (spectral)
/// accuracy of the periodic trapezoid rule unchanged while avoiding the
/// endpoints k = 0, ±π where several spectral quantities degenerate.
pub fn trapezoid_periodic(points: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    assert!(points > 0);
    let h = TAU / points as f64;
    let mut sum = 0.0;
    for i in 0..points {
        let k = -PI + (i as f64 + 0.5) * h;
        sum += f(k);
    }
    sum * h
}

/// ∫_{−c}^{c} smooth(y) / √(c² − y²) dy via the substitution y = c·sin t.
///
/// Running t over the full period [−π, π) traverses the support twice; the
/// substituted integrand is smooth and periodic, so the trapezoid rule
/// converges spectrally even though the original integrand diverges at ±c.
pub fn edge_singular(c: f64, points: usize, mut smooth: impl FnMut(f64) -> f64) -> f64 {
    assert!(c > 0.0);
    0.5 * trapezoid_periodic(points, |t| smooth(c * t.sin()))
}

/// Composite Simpson rule on [a, b] with `panels` panels (rounded up to even).
pub fn simpson(a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// ∫ over [a, b] ∩ (−c, c) of smooth(y) / √(c² − y²) dy, again via y = c·sin t.
/// Used for per-bin integrals of the limit densities.
pub fn edge_singular_partial(
    c: f64,
    a: f64,
    b: f64,
    panels: usize,
    mut smooth: impl FnMut(f64) -> f64,
) -> f64 {
    assert!(c > 0.0);
    let lo = (a / c).clamp(-1.0, 1.0).asin();
    let hi = (b / c).clamp(-1.0, 1.0).asin();
    simpson(lo, hi, panels, |t| smooth(c * t.sin()))
}
