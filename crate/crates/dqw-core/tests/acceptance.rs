//! Acceptance gate: ten end-to-end checks with fixed tolerances and
//! budgets. Each test prints one `criterion NN PASS` line (visible under
//! `--nocapture`) carrying the measured worst-case numbers.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dqw_core::compare::{compare_rescaled, localization_mass, mass_within, CompareOptions};
use dqw_core::decompose::{
    grover_family_matrix, lift_coin, lift_initial, pair_from_params, GroverFamilyParam, PairParams,
};
use dqw_core::limits::{exact_state_b, exact_state_c, grover_limit, limit_moments, KonnoLimit};
use dqw_core::numerics::{ComplexMatrix2, ComplexMatrix4};
use dqw_core::spectral::{
    char_poly_numeric, classify_lemma2, fourier_coin, lemma2_defect, midpoint_k_grid,
    quartic_roots, Lemma2Case,
};
use dqw_core::walk::{evolve_lqw2, evolve_lqw4, step_lqw2, step_lqw4, InitialState, WalkState};
use dqw_core::{Complex64, InitialState4, Tolerance};

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn symmetric_initial2() -> InitialState<2> {
    InitialState::new([c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)], tol()).unwrap()
}

fn random_initial4(rng: &mut ChaCha8Rng) -> InitialState4 {
    loop {
        let v: [f64; 8] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let norm_sqr: f64 = v.iter().map(|x| x * x).sum();
        if norm_sqr < 0.05 {
            continue;
        }
        let norm = norm_sqr.sqrt();
        let q = |re: f64, im: f64| c(re / norm, im / norm);
        return InitialState::new(
            [q(v[0], v[1]), q(v[2], v[3]), q(v[4], v[5]), q(v[6], v[7])],
            tol(),
        )
        .unwrap();
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> PairParams {
    let split = rng.gen_range(0.1..(FRAC_PI_2 - 0.1));
    let eta: f64 = rng.gen_range(-PI..PI);
    PairParams::new(
        Complex64::from_polar(split.cos(), rng.gen_range(-PI..PI)),
        Complex64::from_polar(split.sin(), rng.gen_range(-PI..PI)),
        eta.cos(),
        eta.sin(),
        rng.gen_range(-PI..PI),
        tol(),
    )
    .unwrap()
}

fn random_admissible_delta(rng: &mut ChaCha8Rng) -> f64 {
    let excluded = [FRAC_PI_4, -FRAC_PI_4, 3.0 * FRAC_PI_4, -3.0 * FRAC_PI_4];
    loop {
        let d = rng.gen_range(-PI..PI);
        if excluded.iter().all(|&x| (d - x).abs() > 0.05) {
            return d;
        }
    }
}

#[test]
fn criterion_01_trivial_localization() {
    let start = Instant::now();
    let coin = ComplexMatrix2::pauli_x();
    let mut state = WalkState::from_initial(&symmetric_initial2());
    let mut worst = 0.0f64;
    for n in 1..=1000usize {
        state = step_lqw2(&state, &coin, tol()).unwrap();
        let dist = state.measure();
        if n % 2 == 0 {
            worst = worst.max((dist.mass(0) - 1.0).abs());
        } else {
            worst = worst.max((dist.mass(-1) - 0.5).abs());
            worst = worst.max((dist.mass(1) - 0.5).abs());
        }
        worst = worst.max((dist.total() - 1.0).abs());
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-12, "max deviation {worst:.3e}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 01 PASS: X-coin even/odd pattern exact for n <= 1000 \
         (max deviation {worst:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_02_grover_identification() {
    let param = GroverFamilyParam::new(3.0 * FRAC_PI_4).unwrap();
    let got = grover_family_matrix(&param);
    let grover = ComplexMatrix4::from_real([
        [-0.5, 0.5, 0.5, 0.5],
        [0.5, -0.5, 0.5, 0.5],
        [0.5, 0.5, -0.5, 0.5],
        [0.5, 0.5, 0.5, -0.5],
    ]);
    let diff = got.max_abs_diff(&grover);
    assert!(diff <= 1e-15, "entrywise deviation {diff:.3e}");
    println!("criterion 02 PASS: family at 3pi/4 is the Grover matrix (deviation {diff:.2e})");
}

#[test]
fn criterion_03_lift_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let params = random_params(&mut rng);
        let pair = pair_from_params(&params);
        let n = rng.gen_range(1..=200usize);

        let init8: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let norm = init8.iter().map(|x| x * x).sum::<f64>().sqrt().max(0.1);
        let init = InitialState::new(
            [
                c(init8[0] / norm, init8[1] / norm),
                c(init8[2] / norm, init8[3] / norm),
            ],
            tol(),
        );
        let init = match init {
            Ok(i) => i,
            Err(_) => continue,
        };

        let direct = dqw_core::walk::evolve_dqw(&init, &pair, n).measure();
        let lifted = evolve_lqw4(&lift_initial(&init), &lift_coin(&pair), n, tol())
            .unwrap()
            .measure();
        worst = worst.max(direct.max_abs_diff(&lifted));
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-10, "max distribution deviation {worst:.3e}");
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 03 PASS: DQW vs lifted 4-state distributions agree over 50 pairs \
         (max deviation {worst:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_04_period_four_and_exact_b() {
    let start = Instant::now();
    let param = GroverFamilyParam::new(FRAC_PI_4).unwrap();
    let coin = grover_family_matrix(&param);
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst_period = 0.0f64;
    let mut worst_closed = 0.0f64;
    for _ in 0..20 {
        let init = random_initial4(&mut rng);
        let after4 = evolve_lqw4(&init, &coin, 4, tol()).unwrap();
        worst_period = worst_period.max(after4.max_abs_diff(&WalkState::from_initial(&init)));

        let mut state = WalkState::from_initial(&init);
        for n in 0..=64usize {
            let closed = exact_state_b(&param, &init, n, tol()).unwrap();
            worst_closed = worst_closed.max(closed.max_abs_diff(&state));
            state = step_lqw4(&state, &coin, tol()).unwrap();
        }
    }
    let elapsed = start.elapsed();
    assert!(worst_period <= 1e-12, "period-4 deviation {worst_period:.3e}");
    assert!(worst_closed <= 1e-12, "closed-form deviation {worst_closed:.3e}");
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 04 PASS: period 4 at delta=pi/4 (dev {worst_period:.2e}) and closed forms \
         match evolution for n <= 64 (dev {worst_closed:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_05_exact_c_and_support() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut worst_closed = 0.0f64;
    for delta in [3.0 * FRAC_PI_4, -FRAC_PI_4] {
        let param = GroverFamilyParam::new(delta).unwrap();
        let coin = grover_family_matrix(&param);
        for _ in 0..20 {
            let init = random_initial4(&mut rng);
            let mut state = WalkState::from_initial(&init);
            for n in 0..=64usize {
                let closed = exact_state_c(&param, &init, n, tol()).unwrap();
                worst_closed = worst_closed.max(closed.max_abs_diff(&state));
                let allowed = [-(n as i64), -1, 0, 1, n as i64];
                for (x, amp) in closed.iter() {
                    let weight: f64 = amp.iter().map(|z| z.norm_sqr()).sum();
                    assert!(
                        weight <= 1e-24 || allowed.contains(&x),
                        "support leak at x={x} for n={n}, delta={delta}"
                    );
                }
                state = step_lqw4(&state, &coin, tol()).unwrap();
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(worst_closed <= 1e-12, "closed-form deviation {worst_closed:.3e}");
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 05 PASS: edge-pinned closed forms match evolution with support in \
         {{-n,-1,0,1,n}} (dev {worst_closed:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_06_limit_normalization() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let param = GroverFamilyParam::new(random_admissible_delta(&mut rng)).unwrap();
        let init = random_initial4(&mut rng);
        let limit = grover_limit(&param, &init, tol()).unwrap();
        let total = limit.delta_weight() + limit.continuous_mass();
        worst = worst.max((total - 1.0).abs());
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-6, "worst |A + integral(f) - 1| = {worst:.3e}");
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 06 PASS: atom plus continuous mass sums to 1 over 100 draws \
         (worst deviation {worst:.2e}, {elapsed:?})"
    );
}

#[test]
fn criterion_07_weak_limit_reproduction() {
    let start = Instant::now();
    let n = 1000usize;
    let half = 0.5;
    let configs: [(f64, [f64; 4], &str); 4] = [
        (FRAC_PI_2, [half, half, half, half], "uniform"),
        (FRAC_PI_2, [half, -half, -half, half], "no-atom"),
        (FRAC_PI_2, [half, -half, half, -half], "edge-vanishing"),
        (-PI / 6.0, [half, -half, half, -half], "wide-support"),
    ];
    let opts = CompareOptions {
        bin_width: 0.02,
        origin_window: 0.02,
        exclude_origin: true,
    };
    let mut worst_l1 = 0.0f64;
    let mut worst_loc = 0.0f64;
    for (delta, phi, label) in configs {
        let param = GroverFamilyParam::new(delta).unwrap();
        let coin = grover_family_matrix(&param);
        let init =
            InitialState::new([c(phi[0], 0.0), c(phi[1], 0.0), c(phi[2], 0.0), c(phi[3], 0.0)], tol())
                .unwrap();
        let limit = grover_limit(&param, &init, tol()).unwrap();

        let state_n = evolve_lqw4(&init, &coin, n, tol()).unwrap();
        let state_next = step_lqw4(&state_n, &coin, tol()).unwrap();
        let dist_n = state_n.measure();
        let dist_next = state_next.measure();

        let report = compare_rescaled(&dist_n, n, |lo, hi| limit.mass_in(lo, hi), &opts).unwrap();
        let loc = localization_mass(&dist_n, &dist_next, n, 0.02);
        let loc_err = (loc - limit.delta_weight()).abs();
        assert!(
            report.l1 <= 0.05,
            "{label}: L1 = {:.4} exceeds 0.05",
            report.l1
        );
        assert!(
            loc_err <= 0.03,
            "{label}: localization {loc:.4} vs atom {:.4}",
            limit.delta_weight()
        );
        worst_l1 = worst_l1.max(report.l1);
        worst_loc = worst_loc.max(loc_err);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 07 PASS: four figure settings at n=1000 reproduce the limit \
         (worst L1 {worst_l1:.4}, worst atom-mass deviation {worst_loc:.4}, {elapsed:?})"
    );
}

#[test]
fn criterion_08_konno_limit() {
    let start = Instant::now();
    let n = 1000usize;
    let coin = ComplexMatrix2::hadamard();
    let init = symmetric_initial2();
    let limit = KonnoLimit::new(&coin, &init, tol()).unwrap();
    assert!(limit.drift_coeff().abs() <= 1e-12, "C = {:.3e}", limit.drift_coeff());

    let dist = evolve_lqw2(&init, &coin, n, tol()).unwrap().measure();
    let report = compare_rescaled(
        &dist,
        n,
        |lo, hi| limit.mass_in(lo, hi),
        &CompareOptions::default(),
    )
    .unwrap();
    let edge = FRAC_1_SQRT_2 + 0.02;
    let inside = mass_within(&dist, n, -edge, edge);
    let elapsed = start.elapsed();
    assert!(report.l1 <= 0.05, "L1 = {:.4}", report.l1);
    assert!(inside >= 0.999, "mass inside support edge = {inside:.6}");
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 08 PASS: Hadamard walk at n=1000 matches the arcsine-type density \
         (L1 {:.4}, mass within |y| <= 1/sqrt(2)+0.02: {inside:.5}, {elapsed:?})",
        report.l1
    );
}

#[test]
fn criterion_09_classification_vs_spectrum() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let grid = midpoint_k_grid(64);

    // 120 generic draws plus 20 constructed members of each family.
    let mut cohort: Vec<PairParams> = Vec::new();
    while cohort.len() < 120 {
        let p = random_params(&mut rng);
        if lemma2_defect(&p) > 1e-6 {
            cohort.push(p);
        }
    }
    for _ in 0..20 {
        // α = 0 with one factor of f·cosφ·cosΔ killed.
        let phi = rng.gen_range(-PI..PI);
        let delta = rng.gen_range(-PI..PI);
        match rng.gen_range(0..3) {
            0 => cohort.push(
                PairParams::new(c(0.0, 0.0), Complex64::from_polar(1.0, phi), 1.0, 0.0, delta, tol())
                    .unwrap(),
            ),
            1 => cohort.push(
                PairParams::new(c(0.0, 0.0), c(0.0, 1.0), 0.6, 0.8, delta, tol()).unwrap(),
            ),
            _ => cohort.push(
                PairParams::new(c(0.0, 0.0), Complex64::from_polar(1.0, phi), 0.6, 0.8, FRAC_PI_2, tol())
                    .unwrap(),
            ),
        }
    }
    for _ in 0..20 {
        // β = 0, e = 0, one factor of sinθ·sinΔ killed.
        let (theta, delta) = if rng.gen_bool(0.5) {
            (0.0, rng.gen_range(-PI..PI))
        } else {
            (rng.gen_range(-PI..PI), 0.0)
        };
        cohort.push(
            PairParams::new(Complex64::from_polar(1.0, theta), c(0.0, 0.0), 0.0, 1.0, delta, tol())
                .unwrap(),
        );
    }
    for _ in 0..20 {
        // θ = 0 and e|α| + f|β|cosφ = 0.
        let split = rng.gen_range(0.1..(FRAC_PI_2 - 0.1));
        let (aa, bb) = (split.cos(), split.sin());
        let phi = rng.gen_range(-PI..PI);
        let t = -bb * phi.cos() / aa;
        let scale = (1.0 + t * t).sqrt();
        cohort.push(
            PairParams::new(
                c(aa, 0.0),
                Complex64::from_polar(bb, phi),
                t / scale,
                1.0 / scale,
                rng.gen_range(-PI..PI),
                tol(),
            )
            .unwrap(),
        );
    }
    for _ in 0..20 {
        // sinθ ≠ 0: both balance conditions solved exactly.
        let split = rng.gen_range(0.1..(FRAC_PI_2 - 0.1));
        let (aa, bb) = (split.cos(), split.sin());
        let theta = rng.gen_range(0.1..(PI - 0.1));
        let phi = rng.gen_range(-PI..PI);
        let s = -(bb / aa) * (theta - phi).cos();
        let scale = (1.0 + s * s).sqrt();
        let f = 1.0 / scale;
        let delta = (f * bb * (theta - phi).sin() / aa).atan();
        cohort.push(
            PairParams::new(
                Complex64::from_polar(aa, theta),
                Complex64::from_polar(bb, phi),
                s / scale,
                f,
                delta,
                tol(),
            )
            .unwrap(),
        );
    }
    assert_eq!(cohort.len(), 200);

    let mut disagreements = 0usize;
    let mut tagged = 0usize;
    for params in &cohort {
        let tag = classify_lemma2(params, tol());
        let coin = lift_coin(&pair_from_params(params));
        let everywhere = grid.iter().all(|&k| {
            let poly = char_poly_numeric(&fourier_coin(&coin, k));
            let roots = quartic_roots(&poly).unwrap();
            let has = |target: f64| {
                roots.iter().any(|r| (r - c(target, 0.0)).norm() <= 1e-8)
            };
            has(1.0) && has(-1.0)
        });
        if everywhere != (tag != Lemma2Case::None) {
            disagreements += 1;
        }
        if tag != Lemma2Case::None {
            tagged += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(disagreements, 0, "{disagreements} disagreements out of 200");
    assert_eq!(tagged, 80, "expected exactly the 80 constructed members to be tagged");
    assert!(elapsed.as_secs_f64() < 20.0, "took {elapsed:?}");
    println!(
        "criterion 09 PASS: classification tag matches +-1-in-spectrum over 200 parameter \
         points, 0 disagreements ({tagged} tagged, {elapsed:?})"
    );
}

#[test]
fn criterion_10_moment_duality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let orders = [1u32, 2, 3, 4];
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let param = GroverFamilyParam::new(random_admissible_delta(&mut rng)).unwrap();
        let init = random_initial4(&mut rng);
        let spectral = limit_moments(&param, &init, &orders).unwrap();
        let limit = grover_limit(&param, &init, tol()).unwrap();
        for (i, &order) in orders.iter().enumerate() {
            worst = worst.max((spectral[i] - limit.moment(order)).abs());
        }
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-4, "worst moment mismatch {worst:.3e}");
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 10 PASS: momentum-space moments equal measure moments for r = 1..4 \
         over 20 draws (worst gap {worst:.2e}, {elapsed:?})"
    );
}
