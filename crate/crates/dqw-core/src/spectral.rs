//! Momentum-space analysis of lifted walks.
//!
//! After Fourier transform the evolution acts at each k ∈ [−π, π) through
//! Û(k) = diag(e^{ik}, e^{−ik}, e^{ik}, e^{−ik}) M̃. The characteristic
//! polynomial of Û(k) is available in closed form, which yields a complete
//! classification of the coin pairs whose walk has ±1 in the spectrum at
//! every k (the eigenvalues responsible for localization). For the
//! one-parameter family through the Grover matrix the whole eigensystem is
//! explicit; a small self-contained 4×4 eigensolver backs the degenerate
//! corners and arbitrary coins.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::decompose::{grover_family_matrix, GroverFamilyParam, PairParams};
use crate::error::Error;
use crate::numerics::{inner, vec_norm_sqr, Complex64, ComplexMatrix4, Tolerance};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Max acceptable ‖Ûv − λv‖₂ for any eigenpair this module returns.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-9;

/// Grid size used by the verification routines that scan the spectrum in k.
pub const VERIFY_K_POINTS: usize = 64;

/// Û(k): rows 1 and 3 of the coin pick up e^{ik} (left movers), rows 2 and
/// 4 pick up e^{−ik} (right movers).
pub fn fourier_coin(coin: &ComplexMatrix4, k: f64) -> ComplexMatrix4 {
    let left = Complex64::new(k.cos(), k.sin());
    let right = left.conj();
    let mut out = coin.0;
    for (r, row) in out.iter_mut().enumerate() {
        let phase = if r % 2 == 0 { left } else { right };
        for entry in row.iter_mut() {
            *entry *= phase;
        }
    }
    ComplexMatrix4(out)
}

/// Midpoint grid k_i = −π + (i + ½)·2π/n. It never contains ±π, and for
/// even n it also avoids k = 0; at k ∈ {0, ±π} the operator Û(k) = ±M̃ has
/// both ±1 as eigenvalues for every valid coin pair, so spectral tests on
/// those momenta lose their discriminating power. Use even n.
pub fn midpoint_k_grid(points: usize) -> Vec<f64> {
    let step = 2.0 * core::f64::consts::PI / points.max(1) as f64;
    (0..points)
        .map(|i| -core::f64::consts::PI + (i as f64 + 0.5) * step)
        .collect()
}

/// Monic quartic x⁴ + c₃x³ + c₂x² + c₁x + c₀.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharPolyCoeffs {
    pub c3: Complex64,
    pub c2: Complex64,
    pub c1: Complex64,
    pub c0: Complex64,
}

impl CharPolyCoeffs {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        (((x + self.c3) * x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, b) in [
            (self.c3, other.c3),
            (self.c2, other.c2),
            (self.c1, other.c1),
            (self.c0, other.c0),
        ] {
            worst = worst.max((a - b).norm());
        }
        worst
    }
}

/// Closed form of det(xI − Û(k)) for the lifted coin of `params`:
///
/// ```text
/// x⁴ + A x³ + 2i|α| sin(2k) (e|α| + f|β| cos(θ−φ)) x² − Ā x − 1,
/// A = −2cos k {|α|(cosΔ cosθ − e sinΔ sinθ) − f|β| sinΔ sinφ}
///     −2i sin k {|α|(e cosΔ cosθ − sinΔ sinθ) + f|β| cosΔ cosφ}.
/// ```
///
/// The constant coefficient −1 shows det Û(k) = −1 identically, so ±1 are
/// both eigenvalues of Û(0) and Û(±π) no matter the parameters.
pub fn char_poly(params: &PairParams, k: f64) -> CharPolyCoeffs {
    let a = Complex64::new(
        -2.0 * k.cos() * lemma2_even_part(params),
        -2.0 * k.sin() * lemma2_s(params),
    );
    let c2 = Complex64::new(
        0.0,
        2.0 * params.abs_alpha() * (2.0 * k).sin() * lemma2_t(params),
    );
    CharPolyCoeffs {
        c3: a,
        c2,
        c1: -a.conj(),
        c0: Complex64::new(-1.0, 0.0),
    }
}

/// Characteristic polynomial of an arbitrary 4×4 matrix by the
/// Faddeev–LeVerrier recursion (exact in exact arithmetic, no root finding).
pub fn char_poly_numeric(m: &ComplexMatrix4) -> CharPolyCoeffs {
    let id = ComplexMatrix4::identity();
    let shift = |mat: &ComplexMatrix4, c: Complex64| mat.add(&id.scale(c));

    let m1 = *m;
    let c3 = -m1.trace();
    let m2 = m.mat_mul(&shift(&m1, c3));
    let c2 = -m2.trace() / 2.0;
    let m3 = m.mat_mul(&shift(&m2, c2));
    let c1 = -m3.trace() / 3.0;
    let m4 = m.mat_mul(&shift(&m3, c1));
    let c0 = -m4.trace() / 4.0;
    CharPolyCoeffs { c3, c2, c1, c0 }
}

/// All four roots by Durand–Kerner iteration, in lexicographic (re, im)
/// order. Multiple roots come back as a cloud of width ≈ machine-eps^(1/m);
/// the eigensolver re-clusters and refines them afterwards.
pub fn quartic_roots(poly: &CharPolyCoeffs) -> Result<[Complex64; 4], Error> {
    let seed = Complex64::new(0.4, 0.9);
    let mut z = [seed, seed * seed, seed * seed * seed, seed * seed * seed * seed];
    for _ in 0..500 {
        let mut last_step = 0.0f64;
        for j in 0..4 {
            let mut denom = ONE;
            for m in 0..4 {
                if m != j {
                    denom *= z[j] - z[m];
                }
            }
            if denom.norm() < 1e-300 {
                // Collided iterates: nudge apart and keep going.
                z[j] += Complex64::new(1e-12, 1e-12);
                continue;
            }
            let step = poly.eval(z[j]) / denom;
            z[j] -= step;
            last_step = last_step.max(step.norm());
        }
        if last_step <= 1e-14 {
            break;
        }
    }
    // Multiple roots plateau at steps of size ≈ eps^(1/m); judge convergence
    // by the backward error |p(z)| instead of the step size.
    let scale = 1.0
        + poly
            .c3
            .norm()
            .max(poly.c2.norm())
            .max(poly.c1.norm())
            .max(poly.c0.norm());
    let worst_residual = z
        .iter()
        .map(|&r| poly.eval(r).norm())
        .fold(0.0f64, f64::max);
    if !z.iter().all(|r| r.re.is_finite() && r.im.is_finite()) || worst_residual > 1e-10 * scale {
        return Err(Error::Numerical {
            what: "quartic root iteration did not converge",
            value: worst_residual,
        });
    }
    z.sort_unstable_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(z)
}

/// Numerically computed spectral decomposition of a 4×4 matrix.
///
/// Accuracy and orthonormality guarantees hold for normal (in particular
/// unitary) matrices; every returned pair satisfies
/// ‖Mv − λv‖ ≤ [`EIGEN_RESIDUAL_TOL`].
#[derive(Clone, Copy, Debug)]
pub struct Eigen4 {
    pub values: [Complex64; 4],
    pub vectors: [[Complex64; 4]; 4],
}

// Roots closer than this are treated as one cluster: quadruple roots of the
// characteristic polynomial are only resolvable to ~eps^(1/4) ≈ 1e-4.
const CLUSTER_TOL: f64 = 1e-3;

// Fixed, linearly independent starting vectors for inverse iteration.
const II_STARTS: [[Complex64; 4]; 4] = [
    [
        Complex64::new(0.8147, 0.9058),
        Complex64::new(0.1270, -0.9134),
        Complex64::new(-0.6324, 0.0975),
        Complex64::new(0.2785, 0.5469),
    ],
    [
        Complex64::new(0.1576, -0.9706),
        Complex64::new(0.9572, 0.4854),
        Complex64::new(0.8003, -0.1419),
        Complex64::new(-0.4218, 0.9157),
    ],
    [
        Complex64::new(-0.7922, 0.9595),
        Complex64::new(0.6557, -0.0357),
        Complex64::new(0.8491, 0.9340),
        Complex64::new(0.6787, -0.7577),
    ],
    [
        Complex64::new(0.7431, 0.3922),
        Complex64::new(-0.6555, 0.1712),
        Complex64::new(0.7060, -0.0318),
        Complex64::new(0.2769, 0.0462),
    ],
];

fn lu_solve4(
    lu: &[[Complex64; 4]; 4],
    perm: &[usize; 4],
    rhs: &[Complex64; 4],
) -> [Complex64; 4] {
    let mut y = [ZERO; 4];
    for r in 0..4 {
        let mut acc = rhs[perm[r]];
        for c in 0..r {
            acc -= lu[r][c] * y[c];
        }
        y[r] = acc;
    }
    let mut x = [ZERO; 4];
    for r in (0..4).rev() {
        let mut acc = y[r];
        for c in (r + 1)..4 {
            acc -= lu[r][c] * x[c];
        }
        x[r] = acc / lu[r][r];
    }
    x
}

/// Partial-pivot LU of M − λI. Pivots below the floor are replaced by the
/// floor so that a shift sitting exactly on an eigenvalue still produces a
/// solvable (and strongly amplifying) system.
fn lu_shifted(m: &ComplexMatrix4, lambda: Complex64) -> ([[Complex64; 4]; 4], [usize; 4]) {
    let mut a = m.0;
    for (r, row) in a.iter_mut().enumerate() {
        row[r] -= lambda;
    }
    let scale = a
        .iter()
        .flatten()
        .fold(1.0f64, |acc, z| acc.max(z.norm()));
    let pivot_floor = scale * 1e-18;

    let mut perm = [0usize, 1, 2, 3];
    for col in 0..4 {
        let mut best = col;
        for r in (col + 1)..4 {
            if a[perm[r]][col].norm() > a[perm[best]][col].norm() {
                best = r;
            }
        }
        perm.swap(col, best);
        let mut pivot = a[perm[col]][col];
        if pivot.norm() < pivot_floor {
            pivot = Complex64::new(pivot_floor, 0.0);
            a[perm[col]][col] = pivot;
        }
        for r in (col + 1)..4 {
            let factor = a[perm[r]][col] / pivot;
            a[perm[r]][col] = factor;
            for c in (col + 1)..4 {
                let sub = factor * a[perm[col]][c];
                a[perm[r]][c] -= sub;
            }
        }
    }
    // Rearrange into permuted-row storage for the solver.
    let rows = [a[perm[0]], a[perm[1]], a[perm[2]], a[perm[3]]];
    (rows, perm)
}

fn normalize4(v: &mut [Complex64; 4]) -> f64 {
    let norm = vec_norm_sqr(v).sqrt();
    if norm > 0.0 {
        for entry in v.iter_mut() {
            *entry /= norm;
        }
    }
    norm
}

/// Remove the projections on `basis`, returning the remaining norm.
fn orthogonalize(v: &mut [Complex64; 4], basis: &[[Complex64; 4]]) -> f64 {
    for b in basis {
        let coeff = inner(b, v);
        for i in 0..4 {
            v[i] -= coeff * b[i];
        }
    }
    normalize4(v)
}

fn rayleigh_quotient(m: &ComplexMatrix4, v: &[Complex64; 4]) -> Complex64 {
    inner(v, &m.mul_vec(*v))
}

pub(crate) fn eigen_residual(m: &ComplexMatrix4, lambda: Complex64, v: &[Complex64; 4]) -> f64 {
    let mv = m.mul_vec(*v);
    let mut diff = [ZERO; 4];
    for i in 0..4 {
        diff[i] = mv[i] - lambda * v[i];
    }
    vec_norm_sqr(&diff).sqrt()
}

/// First component of modulus above the noise floor is rotated to the
/// positive real axis; this pins the free phase deterministically.
fn gauge_fix(v: &mut [Complex64; 4]) {
    let lead = v
        .iter()
        .find(|z| z.norm() > 1e-9)
        .copied()
        .unwrap_or_else(|| {
            *v.iter()
                .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
                .unwrap()
        });
    let mag = lead.norm();
    if mag > 0.0 {
        let phase = lead / mag;
        let rot = phase.conj();
        for entry in v.iter_mut() {
            *entry *= rot;
        }
    }
}

/// Inverse iteration for one vector near `lambda`, kept orthogonal to
/// `cluster_basis`. Returns the (possibly Rayleigh-refined) pair.
fn refine_pair(
    m: &ComplexMatrix4,
    lambda: Complex64,
    start: usize,
    cluster_basis: &[[Complex64; 4]],
) -> (Complex64, [Complex64; 4]) {
    let (lu, perm) = lu_shifted(m, lambda);
    let mut v = II_STARTS[start % 4];
    orthogonalize(&mut v, cluster_basis);
    for _ in 0..3 {
        v = lu_solve4(&lu, &perm, &v);
        if orthogonalize(&mut v, cluster_basis) == 0.0 {
            v = II_STARTS[(start + 1) % 4];
            orthogonalize(&mut v, cluster_basis);
        }
    }
    let mut mu = rayleigh_quotient(m, &v);
    // Rayleigh-quotient iteration separates genuinely distinct eigenvalues
    // that Durand–Kerner could not resolve; on exact eigenvectors it is a
    // no-op, so honest degeneracies keep their orthogonal basis.
    for _ in 0..2 {
        if eigen_residual(m, mu, &v) <= 1e-13 {
            break;
        }
        let (lu2, perm2) = lu_shifted(m, mu);
        let mut next = lu_solve4(&lu2, &perm2, &v);
        if normalize4(&mut next) == 0.0 {
            break;
        }
        v = next;
        mu = rayleigh_quotient(m, &v);
    }
    (mu, v)
}

/// Self-contained spectral decomposition: characteristic polynomial by
/// Faddeev–LeVerrier, roots by Durand–Kerner, vectors by inverse iteration
/// with Rayleigh refinement. Eigenvalues are ordered lexicographically by
/// the root estimate (deterministic for identical input bits).
pub fn eigensolve4(m: &ComplexMatrix4) -> Result<Eigen4, Error> {
    if !m.is_finite() {
        return Err(Error::NonFinite { what: "matrix" });
    }
    let roots = quartic_roots(&char_poly_numeric(m))?;

    // Chain-cluster the sorted roots.
    let mut cluster_of = [0usize; 4];
    let mut cluster_count = 1;
    for j in 1..4 {
        if (roots[j] - roots[j - 1]).norm() <= CLUSTER_TOL {
            cluster_of[j] = cluster_of[j - 1];
        } else {
            cluster_of[j] = cluster_count;
            cluster_count += 1;
        }
    }

    let mut values = [ZERO; 4];
    let mut vectors = [[ZERO; 4]; 4];
    let mut out = 0usize;
    for cluster in 0..cluster_count {
        let members: Vec<usize> = (0..4).filter(|&j| cluster_of[j] == cluster).collect();
        let mut mean = ZERO;
        for &j in &members {
            mean += roots[j];
        }
        mean /= members.len() as f64;

        let mut basis: Vec<[Complex64; 4]> = Vec::new();
        for slot in 0..members.len() {
            let mut best: Option<(f64, Complex64, [Complex64; 4])> = None;
            for start in 0..4 {
                let (mu, v) = refine_pair(m, mean, slot + start, &basis);
                let res = eigen_residual(m, mu, &v);
                if best.as_ref().map_or(true, |(r, _, _)| res < *r) {
                    best = Some((res, mu, v));
                }
                if res <= EIGEN_RESIDUAL_TOL {
                    break;
                }
            }
            let (res, mu, mut v) = best.unwrap();
            if res > EIGEN_RESIDUAL_TOL {
                return Err(Error::Numerical {
                    what: "eigenpair residual exceeds tolerance",
                    value: res,
                });
            }
            gauge_fix(&mut v);
            values[out] = mu;
            vectors[out] = v;
            out += 1;
            basis.push(v);
        }
    }
    Ok(Eigen4 { values, vectors })
}

// ---- Lemma-2 classification -------------------------------------------

// Even-in-k part of the trace coefficient.
fn lemma2_even_part(params: &PairParams) -> f64 {
    let (d, th, ph) = (params.delta(), params.theta(), params.phi());
    params.abs_alpha() * (d.cos() * th.cos() - params.e() * d.sin() * th.sin())
        - params.f() * params.abs_beta() * d.sin() * ph.sin()
}

// S: the odd-in-k part of the trace coefficient. ℑA = −2 sin(k) · S.
fn lemma2_s(params: &PairParams) -> f64 {
    let (d, th, ph) = (params.delta(), params.theta(), params.phi());
    params.abs_alpha() * (params.e() * d.cos() * th.cos() - d.sin() * th.sin())
        + params.f() * params.abs_beta() * d.cos() * ph.cos()
}

// T: the x² coefficient is 2i|α| sin(2k) · T.
fn lemma2_t(params: &PairParams) -> f64 {
    params.e() * params.abs_alpha()
        + params.f() * params.abs_beta() * (params.theta() - params.phi()).cos()
}

/// How far the pair is from having ±1 in the spectrum of Û(k) at every k:
/// max(|S|, |α|·|T|), zero exactly on the classified set.
pub fn lemma2_defect(params: &PairParams) -> f64 {
    lemma2_s(params)
        .abs()
        .max((params.abs_alpha() * lemma2_t(params)).abs())
}

/// The four exhaustive parameter families with ±1 ∈ spec Û(k) for all k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma2Case {
    /// α = 0 and f·cosφ·cosΔ = 0.
    Case1,
    /// β = 0, e = 0 and sinθ·sinΔ = 0.
    Case2,
    /// α, β, f ≠ 0, e|α| + f|β|cos(θ−φ) = 0 and sinθ = 0.
    Case3,
    /// α, β, f ≠ 0, e|α| + f|β|cos(θ−φ) = 0, cosΔ ≠ 0 and
    /// sinΔ·|α|sinθ = cosΔ·(e|α|cosθ + f|β|cosφ).
    Case4,
    /// Not in the classified set: the ±1 eigenvalues are absent for some k.
    None,
}

/// Decides membership case by case (first match wins, checked 1→4). All
/// comparisons are multiplicative — no divisions by possibly-small moduli.
pub fn classify_lemma2(params: &PairParams, tol: Tolerance) -> Lemma2Case {
    let eps = tol.eq_tol;
    let aa = params.abs_alpha();
    let bb = params.abs_beta();
    let (e, f) = (params.e(), params.f());
    let (d, th, ph) = (params.delta(), params.theta(), params.phi());

    if aa <= eps && (f * ph.cos() * d.cos()).abs() <= eps {
        return Lemma2Case::Case1;
    }
    if bb <= eps && e.abs() <= eps && (th.sin() * d.sin()).abs() <= eps {
        return Lemma2Case::Case2;
    }
    let nondegenerate = aa > eps && bb > eps && f.abs() > eps;
    let t_zero = lemma2_t(params).abs() <= eps;
    if nondegenerate && t_zero && th.sin().abs() <= eps {
        return Lemma2Case::Case3;
    }
    let balance = d.sin() * aa * th.sin() - d.cos() * (e * aa * th.cos() + f * bb * ph.cos());
    if nondegenerate && t_zero && d.cos().abs() > eps && balance.abs() <= eps {
        return Lemma2Case::Case4;
    }
    Lemma2Case::None
}

// ---- Closed-form eigensystem of the Grover family ----------------------

/// p = (cosΔ − sinΔ)/√2: the peak speed of the ballistic part.
pub fn family_p(delta: f64) -> f64 {
    (delta.cos() - delta.sin()) * core::f64::consts::FRAC_1_SQRT_2
}

/// q = (cosΔ + sinΔ)/√2, the complementary combination (p² + q² = 1).
pub fn family_q(delta: f64) -> f64 {
    (delta.cos() + delta.sin()) * core::f64::consts::FRAC_1_SQRT_2
}

/// Spectral data of Û(k) for one Grover-family coin, in the fixed branch
/// order λ₁ = 1, λ₂ = −1, λ₃ = p·cos k + i√(1−p²cos²k), λ₄ = λ̄₃.
///
/// `velocities[j]` is Dλⱼ/λⱼ with D = i d/dk — the value whose distribution
/// under |⟨vⱼ|φ⟩|² dk/2π is the weak limit of X_n/n.
#[derive(Clone, Copy, Debug)]
pub struct EigenSystem {
    pub values: [Complex64; 4],
    pub vectors: [[Complex64; 4]; 4],
    pub velocities: [f64; 4],
}

impl EigenSystem {
    /// |⟨vⱼ|φ⟩|² for each branch.
    pub fn overlaps(&self, phi: &[Complex64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for j in 0..4 {
            out[j] = inner(&self.vectors[j], phi).norm_sqr();
        }
        out
    }
}

fn family_product_vector(
    lambda: Complex64,
    k: f64,
    delta: f64,
) -> [Complex64; 4] {
    let e_ik = Complex64::new(k.cos(), k.sin());
    let e_mik = e_ik.conj();
    let rs = Complex64::new(core::f64::consts::SQRT_2 * delta.sin(), 0.0);
    let rc = Complex64::new(core::f64::consts::SQRT_2 * delta.cos(), 0.0);
    // |λ| = 1, so λ⁻¹ = λ̄.
    let li = lambda.conj();
    let x1 = lambda * e_ik + rs;
    let x2 = li * e_mik - rc;
    let x3 = li * e_ik + rs;
    let x4 = lambda * e_mik - rc;
    [
        x1 * x2 * x3,
        x1.conj() * x3 * x4,
        x1 * x2 * x4.conj(),
        x2 * x3 * x4,
    ]
}

/// Eigenvalues, orthonormal eigenvectors and group velocities for the
/// Grover-family walk at momentum k.
///
/// Eigenvectors use the product closed form where it is non-degenerate
/// (Δ ∉ {3π/4, −π/4}); otherwise the numeric eigensolver fills them in,
/// matched to the closed-form eigenvalue order. Either way the result is
/// gauge-fixed and residual-checked.
pub fn eigen_system_grover_family(
    param: &GroverFamilyParam,
    k: f64,
) -> Result<EigenSystem, Error> {
    if !k.is_finite() {
        return Err(Error::NonFinite { what: "momentum k" });
    }
    let delta = param.delta();
    let p = family_p(delta);
    let disc = 1.0 - p * p * k.cos() * k.cos();
    if disc <= 0.0 {
        // Only reachable for |p| = 1 (Δ = 3π/4 or −π/4) with cos k = ±1,
        // where λ₃ = λ₄ collides with ±1 and the velocities blow up.
        return Err(Error::Domain {
            what: "spectrum degenerates at |p cos k| = 1",
        });
    }
    let w = disc.sqrt();
    let lam3 = Complex64::new(p * k.cos(), w);
    let values = [ONE, -ONE, lam3, lam3.conj()];
    let vel = p * k.sin() / w;
    let velocities = [0.0, 0.0, -vel, vel];

    let coin = grover_family_matrix(param);
    let u_hat = fourier_coin(&coin, k);

    let mut vectors = [[ZERO; 4]; 4];
    let mut need_numeric = false;
    for j in 0..4 {
        let mut v = family_product_vector(values[j], k, delta);
        let norm = normalize4(&mut v);
        if norm <= 1e-8 || eigen_residual(&u_hat, values[j], &v) > EIGEN_RESIDUAL_TOL {
            need_numeric = true;
            break;
        }
        gauge_fix(&mut v);
        vectors[j] = v;
    }

    if need_numeric {
        let numeric = eigensolve4(&u_hat)?;
        let mut used = [false; 4];
        for j in 0..4 {
            let mut best: Option<(f64, usize)> = None;
            for (i, nv) in numeric.values.iter().enumerate() {
                if used[i] {
                    continue;
                }
                let dist = (nv - values[j]).norm();
                if best.map_or(true, |(d, _)| dist < d) {
                    best = Some((dist, i));
                }
            }
            let (_, i) = best.unwrap();
            used[i] = true;
            vectors[j] = numeric.vectors[i];
        }
    }

    for j in 0..4 {
        let res = eigen_residual(&u_hat, values[j], &vectors[j]);
        if res > EIGEN_RESIDUAL_TOL {
            return Err(Error::Numerical {
                what: "eigenpair residual exceeds tolerance",
                value: res,
            });
        }
    }
    Ok(EigenSystem {
        values,
        vectors,
        velocities,
    })
}
