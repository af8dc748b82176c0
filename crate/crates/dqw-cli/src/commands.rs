//! Command implementations. Each returns the bytes destined for the main
//! output (file or stdout); `compare` additionally reports a tolerance
//! verdict so the caller can set the exit status after writing the report.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use dqw_core::compare::{
    compare_rescaled, empirical_moment, localization_mass, CompareOptions,
};
use dqw_core::decompose::{check_isometry, grover_family_matrix, lift_coin, pair_from_params};
use dqw_core::limits::{grover_limit, GroverLimit, KonnoLimit};
use dqw_core::spectral::{char_poly_numeric, classify_lemma2, fourier_coin, lemma2_defect, midpoint_k_grid, Lemma2Case};
use dqw_core::walk::{step_dqw, step_lqw2, step_lqw4, Distribution, WalkState};
use dqw_core::{Complex64, Error, Tolerance, WalkState2, WalkState4};

use crate::config::{
    initial2, initial4, matrix2, required_coin, required_steps, resolve_coin, CheckConfig,
    ClassifyConfig, ExperimentConfig, Model, ResolvedCoin,
};
use crate::format::{g17, json_str};
use crate::CliError;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn core_err(e: Error) -> CliError {
    CliError::Validation(e.to_string())
}

/// The spectrum-degenerate family angles have no continuous limit measure;
/// point users at the exact finite-time distribution instead.
fn limit_err(e: Error) -> CliError {
    match e {
        Error::ExcludedDelta { delta } => CliError::Validation(format!(
            "delta = {} is one of the angles where the walk is exactly periodic or \
             edge-pinned and the rescaled limit has no continuous density; \
             run `dqw simulate` to get the exact distribution instead",
            g17(delta)
        )),
        other => core_err(other),
    }
}

// ---- evolution drivers ----------------------------------------------------

enum Evolver {
    Two(WalkState2, Box<dyn Fn(&WalkState2) -> Result<WalkState2, CliError>>),
    Four(WalkState4, Box<dyn Fn(&WalkState4) -> Result<WalkState4, CliError>>),
}

fn make_evolver(config: &ExperimentConfig) -> Result<Evolver, CliError> {
    let coin = resolve_coin(config.model, required_coin(config)?)?;
    match coin {
        ResolvedCoin::Two(m) => {
            let init = initial2(config)?;
            Ok(Evolver::Two(
                WalkState::from_initial(&init),
                Box::new(move |s| step_lqw2(s, &m, tol()).map_err(core_err)),
            ))
        }
        ResolvedCoin::Pair(pair) => {
            let init = initial2(config)?;
            Ok(Evolver::Two(
                WalkState::from_initial(&init),
                Box::new(move |s| Ok(step_dqw(s, &pair))),
            ))
        }
        ResolvedCoin::Four(m) => {
            let init = initial4(config)?;
            Ok(Evolver::Four(
                WalkState::from_initial(&init),
                Box::new(move |s| step_lqw4(s, &m, tol()).map_err(core_err)),
            ))
        }
        ResolvedCoin::Family(param) => {
            let init = initial4(config)?;
            let m = grover_family_matrix(&param);
            Ok(Evolver::Four(
                WalkState::from_initial(&init),
                Box::new(move |s| step_lqw4(s, &m, tol()).map_err(core_err)),
            ))
        }
    }
}

impl Evolver {
    fn measure(&self) -> Distribution {
        match self {
            Evolver::Two(s, _) => s.measure(),
            Evolver::Four(s, _) => s.measure(),
        }
    }

    fn step(&mut self) -> Result<(), CliError> {
        match self {
            Evolver::Two(s, f) => *s = f(s)?,
            Evolver::Four(s, f) => *s = f(s)?,
        }
        Ok(())
    }
}

fn distribution_csv(dist: &Distribution) -> String {
    let mut out = String::from("position,probability\n");
    for (x, mass) in dist.iter() {
        if mass > 0.0 {
            let _ = writeln!(out, "{x},{}", g17(mass));
        }
    }
    out
}

// ---- simulate --------------------------------------------------------------

pub fn cmd_simulate(config: &ExperimentConfig) -> Result<Vec<u8>, CliError> {
    let steps = required_steps(config)?;
    let mut evolver = make_evolver(config)?;

    let mut trajectory = config
        .trajectory
        .as_ref()
        .map(|_| String::from("step,position,probability\n"));
    let record = |step: usize, dist: &Distribution, sink: &mut Option<String>| {
        if let Some(text) = sink {
            for (x, mass) in dist.iter() {
                if mass > 0.0 {
                    let _ = writeln!(text, "{step},{x},{}", g17(mass));
                }
            }
        }
    };

    record(0, &evolver.measure(), &mut trajectory);
    for step in 1..=steps {
        evolver.step()?;
        record(step, &evolver.measure(), &mut trajectory);
    }
    let final_dist = evolver.measure();

    if let (Some(path), Some(text)) = (config.trajectory.as_ref(), trajectory) {
        write_file(path, text.as_bytes())?;
    }
    Ok(distribution_csv(&final_dist).into_bytes())
}

// ---- limit ------------------------------------------------------------------

enum LimitKind {
    Konno(KonnoLimit),
    Grover(GroverLimit),
}

fn build_limit(config: &ExperimentConfig) -> Result<LimitKind, CliError> {
    match config.model {
        Model::Lqw2 => {
            let coin = match resolve_coin(config.model, required_coin(config)?)? {
                ResolvedCoin::Two(m) => m,
                _ => unreachable!("lqw2 resolves to a 2x2 coin"),
            };
            let init = initial2(config)?;
            KonnoLimit::new(&coin, &init, tol())
                .map(LimitKind::Konno)
                .map_err(core_err)
        }
        Model::GroverFamily => {
            let param = match resolve_coin(config.model, required_coin(config)?)? {
                ResolvedCoin::Family(p) => p,
                _ => unreachable!("grover-family resolves to a family angle"),
            };
            let init = initial4(config)?;
            grover_limit(&param, &init, tol())
                .map(LimitKind::Grover)
                .map_err(limit_err)
        }
        other => Err(CliError::Validation(format!(
            "limit mode supports models lqw2 and grover-family, not {}",
            other.name()
        ))),
    }
}

impl LimitKind {
    fn header(&self) -> String {
        match self {
            LimitKind::Konno(l) => format!(
                "{{\"r\":{},\"C\":{}}}",
                g17(l.r()),
                g17(l.drift_coeff())
            ),
            LimitKind::Grover(l) => {
                let (d0, d1, d2) = l.d_coeffs();
                format!(
                    "{{\"p\":{},\"q\":{},\"d0\":{},\"d1\":{},\"d2\":{},\"A\":{}}}",
                    g17(l.p()),
                    g17(l.q()),
                    g17(d0),
                    g17(d1),
                    g17(d2),
                    g17(l.delta_weight())
                )
            }
        }
    }

    fn support_radius(&self) -> f64 {
        match self {
            LimitKind::Konno(l) => l.r(),
            LimitKind::Grover(l) => l.p().abs(),
        }
    }

    fn density(&self, x: f64) -> f64 {
        match self {
            LimitKind::Konno(l) => l.density(x),
            LimitKind::Grover(l) => l.density(x),
        }
    }

    fn bin_mass(&self, lo: f64, hi: f64) -> f64 {
        match self {
            LimitKind::Konno(l) => l.mass_in(lo, hi),
            LimitKind::Grover(l) => l.mass_in(lo, hi),
        }
    }

    fn moment(&self, order: u32) -> f64 {
        match self {
            LimitKind::Konno(l) => l.moment(order),
            LimitKind::Grover(l) => l.moment(order),
        }
    }

    fn atom(&self) -> f64 {
        match self {
            LimitKind::Konno(_) => 0.0,
            LimitKind::Grover(l) => l.delta_weight(),
        }
    }
}

pub fn cmd_limit(config: &ExperimentConfig) -> Result<Vec<u8>, CliError> {
    let limit = build_limit(config)?;
    let samples = config.samples.unwrap_or(512);
    if samples == 0 {
        return Err(CliError::Validation("samples must be at least 1".to_string()));
    }
    let radius = limit.support_radius();
    let mut out = limit.header();
    out.push('\n');
    out.push_str("x,density\n");
    // Midpoints of a uniform partition of (−radius, radius): the open
    // endpoints, where the density may diverge, are never evaluated.
    for i in 0..samples {
        let x = radius * ((2 * i + 1) as f64 / samples as f64 - 1.0);
        let _ = writeln!(out, "{},{}", g17(x), g17(limit.density(x)));
    }
    Ok(out.into_bytes())
}

// ---- compare ----------------------------------------------------------------

pub struct CompareOutcome {
    pub bytes: Vec<u8>,
    pub failure: Option<String>,
}

pub fn cmd_compare(config: &ExperimentConfig) -> Result<CompareOutcome, CliError> {
    let steps = required_steps(config)?;
    if steps < 100 {
        return Err(CliError::Validation(format!(
            "compare needs steps >= 100 for a meaningful rescaled histogram, got {steps}"
        )));
    }
    let limit = build_limit(config)?;
    let settings = config.compare.unwrap_or_default();

    let mut evolver = make_evolver(config)?;
    for _ in 0..steps {
        evolver.step()?;
    }
    let dist_n = evolver.measure();
    evolver.step()?;
    let dist_next = evolver.measure();

    let opts = CompareOptions {
        bin_width: settings.bin_width,
        origin_window: settings.epsilon,
        exclude_origin: matches!(limit, LimitKind::Grover(_)),
    };
    let report = compare_rescaled(&dist_n, steps, |lo, hi| limit.bin_mass(lo, hi), &opts)
        .map_err(core_err)?;
    let loc = localization_mass(&dist_n, &dist_next, steps, settings.epsilon);
    let atom = limit.atom();

    let mut moments = String::from("[");
    for order in 1u32..=4 {
        if order > 1 {
            moments.push(',');
        }
        let _ = write!(
            moments,
            "{{\"order\":{order},\"empirical\":{},\"limit\":{}}}",
            g17(empirical_moment(&dist_n, steps, order)),
            g17(limit.moment(order))
        );
    }
    moments.push(']');

    let mut failures: Vec<String> = Vec::new();
    if let Some(bound) = settings.l1_threshold {
        if report.l1 > bound {
            failures.push(format!("L1 = {} exceeds {}", g17(report.l1), g17(bound)));
        }
    }
    if let Some(bound) = settings.atom_threshold {
        if (loc - atom).abs() > bound {
            failures.push(format!(
                "localization mass {} deviates from predicted atom {} by more than {}",
                g17(loc),
                g17(atom),
                g17(bound)
            ));
        }
    }

    let json = format!(
        "{{\"model\":{},\"steps\":{steps},\"bin_width\":{},\"epsilon\":{},\
         \"l1\":{},\"sup\":{},\"localization_mass\":{},\"predicted_atom\":{},\
         \"moments\":{moments},\"within_thresholds\":{}}}\n",
        json_str(config.model.name()),
        g17(settings.bin_width),
        g17(settings.epsilon),
        g17(report.l1),
        g17(report.sup),
        g17(loc),
        g17(atom),
        failures.is_empty()
    );
    Ok(CompareOutcome {
        bytes: json.into_bytes(),
        failure: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

// ---- classify -----------------------------------------------------------------

fn case_name(case: Lemma2Case) -> &'static str {
    match case {
        Lemma2Case::Case1 => "case1",
        Lemma2Case::Case2 => "case2",
        Lemma2Case::Case3 => "case3",
        Lemma2Case::Case4 => "case4",
        Lemma2Case::None => "none",
    }
}

pub fn cmd_classify(config: &ClassifyConfig) -> Result<Vec<u8>, CliError> {
    let params = config.params.build()?;
    let case = classify_lemma2(&params, tol());
    let defect = lemma2_defect(&params);

    // Independent spectral verification: ±1 is an eigenvalue of Û(k) exactly
    // when the numeric characteristic polynomial vanishes there.
    let coin = lift_coin(&pair_from_params(&params));
    let grid = midpoint_k_grid(64);
    let mut worst = 0.0f64;
    for &k in &grid {
        let poly = char_poly_numeric(&fourier_coin(&coin, k));
        worst = worst.max(poly.eval(Complex64::new(1.0, 0.0)).norm());
        worst = worst.max(poly.eval(Complex64::new(-1.0, 0.0)).norm());
    }
    let everywhere = worst <= 1e-8;

    let json = format!(
        "{{\"case\":{},\"defect\":{},\"grid_points\":{},\
         \"max_char_poly_at_pm1\":{},\"pm1_eigenvalues_everywhere\":{}}}\n",
        json_str(case_name(case)),
        g17(defect),
        grid.len(),
        g17(worst),
        everywhere
    );
    Ok(json.into_bytes())
}

// ---- check ----------------------------------------------------------------------

pub fn cmd_check(config: &CheckConfig) -> Result<Vec<u8>, CliError> {
    let m_r = matrix2(&config.m_r);
    let m_i = matrix2(&config.m_i);
    if !(m_r.is_finite() && m_i.is_finite()) {
        return Err(CliError::Validation(
            "matrix entries must be finite".to_string(),
        ));
    }
    let diag = check_isometry(&m_r, &m_i);
    let json = format!(
        "{{\"unitary_r\":{},\"unitary_i\":{},\"product_real\":{},\"is_isometry\":{}}}\n",
        g17(diag.unitary_r),
        g17(diag.unitary_i),
        g17(diag.product_real),
        diag.is_isometry(tol())
    );
    Ok(json.into_bytes())
}

// ---- output plumbing --------------------------------------------------------------

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Validation(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    fs::write(path, bytes)
        .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))
}
