//! JSON experiment configuration: parsing, validation, and conversion into
//! the core library's checked types.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use dqw_core::decompose::{
    pair_from_params, CoinPair, GroverFamilyParam, PairParams,
};
use dqw_core::numerics::{ComplexMatrix2, ComplexMatrix4};
use dqw_core::walk::InitialState;
use dqw_core::{Complex64, InitialState2, InitialState4, Tolerance};

use crate::CliError;

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Radians, or a string multiple of π such as "0.75pi", "-pi", "0.5 pi".
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle(pub f64);

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim();
    if let Some(head) = t.strip_suffix("pi") {
        let head = head.trim();
        let mult: f64 = match head {
            "" => 1.0,
            "-" => -1.0,
            "+" => 1.0,
            _ => head
                .parse()
                .map_err(|e| format!("invalid multiple of pi {t:?}: {e}"))?,
        };
        Ok(mult * PI)
    } else {
        t.parse()
            .map_err(|e| format!("invalid angle {t:?}: expected radians or \"<x>pi\" ({e})"))
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct AngleVisitor;
        impl serde::de::Visitor<'_> for AngleVisitor {
            type Value = Angle;
            fn expecting(&self, f: &mut core::fmt::Formatter) -> core::fmt::Result {
                f.write_str("a number in radians or a string like \"0.75pi\"")
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Angle, E> {
                Ok(Angle(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Angle, E> {
                parse_angle(v).map(Angle).map_err(E::custom)
            }
        }
        deserializer.deserialize_any(AngleVisitor)
    }
}

pub type ComplexSpec = [f64; 2];
pub type Matrix2Spec = [[ComplexSpec; 2]; 2];
pub type Matrix4Spec = [[ComplexSpec; 4]; 4];

fn complex(spec: ComplexSpec) -> Complex64 {
    Complex64::new(spec[0], spec[1])
}

pub fn matrix2(spec: &Matrix2Spec) -> ComplexMatrix2 {
    ComplexMatrix2([
        [complex(spec[0][0]), complex(spec[0][1])],
        [complex(spec[1][0]), complex(spec[1][1])],
    ])
}

pub fn matrix4(spec: &Matrix4Spec) -> ComplexMatrix4 {
    let mut m = ComplexMatrix4::zero();
    for r in 0..4 {
        for c in 0..4 {
            m.0[r][c] = complex(spec[r][c]);
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Lqw2,
    Dqw,
    Lqw4,
    GroverFamily,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Lqw2 => "lqw2",
            Model::Dqw => "dqw",
            Model::Lqw4 => "lqw4",
            Model::GroverFamily => "grover-family",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoinName {
    Hadamard,
    PauliX,
    Identity,
    Grover,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CoinSpec {
    Matrix2 { rows: Matrix2Spec },
    Matrix4 { rows: Matrix4Spec },
    Pair { m_r: Matrix2Spec, m_i: Matrix2Spec },
    Params(ParamsSpec),
    Delta { value: Angle },
    Name { value: CoinName },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub alpha: ComplexSpec,
    pub beta: ComplexSpec,
    pub e: f64,
    pub f: f64,
    pub delta: Angle,
}

impl ParamsSpec {
    pub fn build(&self) -> Result<PairParams, CliError> {
        PairParams::new(
            complex(self.alpha),
            complex(self.beta),
            self.e,
            self.f,
            self.delta.0,
            tol(),
        )
        .map_err(|e| CliError::Validation(format!("coin parameters: {e}")))
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareConfig {
    #[serde(default = "default_bin_width")]
    pub bin_width: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub l1_threshold: Option<f64>,
    #[serde(default)]
    pub atom_threshold: Option<f64>,
}

fn default_bin_width() -> f64 {
    0.02
}

fn default_epsilon() -> f64 {
    0.02
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig {
            bin_width: default_bin_width(),
            epsilon: default_epsilon(),
            l1_threshold: None,
            atom_threshold: None,
        }
    }
}

/// One experiment: model, coin, initial state, horizon, and output wiring.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: Model,
    #[serde(default)]
    pub coin: Option<CoinSpec>,
    #[serde(default)]
    pub initial: Option<Vec<ComplexSpec>>,
    #[serde(default)]
    pub steps: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub trajectory: Option<PathBuf>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub compare: Option<CompareConfig>,
}

/// Input to the classify command: the parameter point itself.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    #[serde(flatten)]
    pub params: ParamsSpec,
}

/// Input to the check command: an explicit matrix pair.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub m_r: Matrix2Spec,
    pub m_i: Matrix2Spec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub jobs: Vec<SweepJob>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum SweepJob {
    Simulate {
        #[serde(flatten)]
        config: ExperimentConfig,
    },
    Limit {
        #[serde(flatten)]
        config: ExperimentConfig,
    },
    Compare {
        #[serde(flatten)]
        config: ExperimentConfig,
    },
}

pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// The coin after model-specific resolution.
pub enum ResolvedCoin {
    Two(ComplexMatrix2),
    Pair(CoinPair),
    Four(ComplexMatrix4),
    Family(GroverFamilyParam),
}

fn grover_matrix() -> ComplexMatrix4 {
    ComplexMatrix4::from_real([
        [-0.5, 0.5, 0.5, 0.5],
        [0.5, -0.5, 0.5, 0.5],
        [0.5, 0.5, -0.5, 0.5],
        [0.5, 0.5, 0.5, -0.5],
    ])
}

pub fn resolve_coin(model: Model, spec: &CoinSpec) -> Result<ResolvedCoin, CliError> {
    let mismatch = |needed: &str| {
        Err(CliError::Validation(format!(
            "model {} needs {needed}",
            model.name()
        )))
    };
    match model {
        Model::Lqw2 => match spec {
            CoinSpec::Matrix2 { rows } => Ok(ResolvedCoin::Two(matrix2(rows))),
            CoinSpec::Name { value: CoinName::Hadamard } => {
                Ok(ResolvedCoin::Two(ComplexMatrix2::hadamard()))
            }
            CoinSpec::Name { value: CoinName::PauliX } => {
                Ok(ResolvedCoin::Two(ComplexMatrix2::pauli_x()))
            }
            CoinSpec::Name { value: CoinName::Identity } => {
                Ok(ResolvedCoin::Two(ComplexMatrix2::identity()))
            }
            _ => mismatch("a 2x2 coin: type matrix2 or name hadamard/pauli-x/identity"),
        },
        Model::Dqw => match spec {
            CoinSpec::Pair { m_r, m_i } => CoinPair::new(matrix2(m_r), matrix2(m_i), tol())
                .map(ResolvedCoin::Pair)
                .map_err(|e| CliError::Validation(format!("coin pair: {e}"))),
            CoinSpec::Params(p) => Ok(ResolvedCoin::Pair(pair_from_params(&p.build()?))),
            _ => mismatch("a matrix pair: type pair or params"),
        },
        Model::Lqw4 => match spec {
            CoinSpec::Matrix4 { rows } => Ok(ResolvedCoin::Four(matrix4(rows))),
            CoinSpec::Name { value: CoinName::Grover } => Ok(ResolvedCoin::Four(grover_matrix())),
            CoinSpec::Delta { value } => {
                let param = family_param(value.0)?;
                Ok(ResolvedCoin::Four(dqw_core::decompose::grover_family_matrix(&param)))
            }
            _ => mismatch("a 4x4 coin: type matrix4, name grover, or delta"),
        },
        Model::GroverFamily => match spec {
            CoinSpec::Delta { value } => Ok(ResolvedCoin::Family(family_param(value.0)?)),
            _ => mismatch("a family angle: type delta"),
        },
    }
}

pub fn family_param(delta: f64) -> Result<GroverFamilyParam, CliError> {
    GroverFamilyParam::new(delta)
        .map_err(|e| CliError::Validation(format!("family angle: {e}")))
}

pub fn initial2(config: &ExperimentConfig) -> Result<InitialState2, CliError> {
    let comps = required_initial(config, 2)?;
    InitialState::new([complex(comps[0]), complex(comps[1])], tol())
        .map_err(|e| CliError::Validation(format!("initial state: {e}")))
}

pub fn initial4(config: &ExperimentConfig) -> Result<InitialState4, CliError> {
    let comps = required_initial(config, 4)?;
    InitialState::new(
        [
            complex(comps[0]),
            complex(comps[1]),
            complex(comps[2]),
            complex(comps[3]),
        ],
        tol(),
    )
    .map_err(|e| CliError::Validation(format!("initial state: {e}")))
}

fn required_initial(config: &ExperimentConfig, arity: usize) -> Result<&[ComplexSpec], CliError> {
    let comps = config
        .initial
        .as_deref()
        .ok_or_else(|| CliError::Validation("field `initial` is required".to_string()))?;
    if comps.len() != arity {
        return Err(CliError::Validation(format!(
            "model {} needs {arity} initial components, got {}",
            config.model.name(),
            comps.len()
        )));
    }
    Ok(comps)
}

pub fn required_coin(config: &ExperimentConfig) -> Result<&CoinSpec, CliError> {
    config
        .coin
        .as_ref()
        .ok_or_else(|| CliError::Validation("field `coin` is required".to_string()))
}

pub fn required_steps(config: &ExperimentConfig) -> Result<usize, CliError> {
    let steps = config
        .steps
        .ok_or_else(|| CliError::Validation("field `steps` is required".to_string()))?;
    usize::try_from(steps)
        .map_err(|_| CliError::Validation(format!("steps = {steps} does not fit in usize")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn angle_forms() {
        assert_eq!(parse_angle("0.75pi").unwrap(), 0.75 * PI);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert_eq!(parse_angle("-0.5 pi").unwrap(), -0.5 * PI);
        assert_eq!(parse_angle("1.5707963267948966").unwrap(), FRAC_PI_2);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("one pi").is_err());
    }

    #[test]
    fn angle_json_forms() {
        let a: Angle = serde_json::from_str("\"0.25pi\"").unwrap();
        assert_eq!(a.0, 0.25 * PI);
        let b: Angle = serde_json::from_str("2.5").unwrap();
        assert_eq!(b.0, 2.5);
        let c: Angle = serde_json::from_str("-1").unwrap();
        assert_eq!(c.0, -1.0);
        assert!(serde_json::from_str::<Angle>("\"halfpi please\"").is_err());
    }

    #[test]
    fn coin_spec_variants_parse() {
        let m: CoinSpec = serde_json::from_str(
            r#"{"type":"matrix2","rows":[[[0,0],[1,0]],[[1,0],[0,0]]]}"#,
        )
        .unwrap();
        assert!(matches!(m, CoinSpec::Matrix2 { .. }));
        let p: CoinSpec = serde_json::from_str(
            r#"{"type":"params","alpha":[0.70710678118654752,0],"beta":[0,-0.70710678118654752],
                "e":0,"f":-1,"delta":"0.75pi"}"#,
        )
        .unwrap();
        assert!(matches!(p, CoinSpec::Params(_)));
        let d: CoinSpec = serde_json::from_str(r#"{"type":"delta","value":"0.5pi"}"#).unwrap();
        assert!(matches!(d, CoinSpec::Delta { .. }));
        let n: CoinSpec = serde_json::from_str(r#"{"type":"name","value":"pauli-x"}"#).unwrap();
        assert!(matches!(n, CoinSpec::Name { value: CoinName::PauliX }));
        assert!(serde_json::from_str::<CoinSpec>(r#"{"type":"matrix2","rowz":[]}"#).is_err());
    }

    #[test]
    fn model_coin_mismatch_rejected() {
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"model":"lqw2","coin":{"type":"delta","value":0.5},
                "initial":[[1,0],[0,0]],"steps":4}"#,
        )
        .unwrap();
        let err = resolve_coin(cfg.model, cfg.coin.as_ref().unwrap()).err().unwrap();
        assert!(format!("{err}").contains("lqw2"));
    }

    #[test]
    fn initial_arity_checked() {
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"model":"lqw4","initial":[[1,0],[0,0]]}"#,
        )
        .unwrap();
        assert!(initial4(&cfg).is_err());
    }

    #[test]
    fn sweep_jobs_parse() {
        let sweep: SweepConfig = serde_json::from_str(
            r#"{"jobs":[
                {"command":"simulate","model":"lqw2","coin":{"type":"name","value":"hadamard"},
                 "initial":[[1,0],[0,0]],"steps":10,"output":"a.csv"},
                {"command":"limit","model":"grover-family","coin":{"type":"delta","value":"0.5pi"},
                 "initial":[[0.5,0],[0.5,0],[0.5,0],[0.5,0]],"output":"b.csv"}
            ]}"#,
        )
        .unwrap();
        assert_eq!(sweep.jobs.len(), 2);
        assert!(matches!(sweep.jobs[0], SweepJob::Simulate { .. }));
        assert!(matches!(sweep.jobs[1], SweepJob::Limit { .. }));
    }
}
