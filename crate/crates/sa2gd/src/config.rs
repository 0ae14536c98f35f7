//! Experiment configuration: TOML file sections mirroring the CLI flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};
use sa2gd_core::pareto::{Method, WeightedSumBudget};
use sa2gd_core::prelude::*;
use serde::{Deserialize, Serialize};

/// Step rule as written on the command line: `sc-decay[:c]`,
/// `inverse-t:gamma`, `sqrt-decay:alpha_bar` or `fixed:alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ScheduleArg {
    /// `c` defaults to the problem's strong convexity constant.
    ScDecay(Option<f64>),
    InverseT(f64),
    SqrtDecay(f64),
    Fixed(f64),
}

impl FromStr for ScheduleArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let value = |a: Option<&str>| -> Result<f64, String> {
            let a = a.ok_or_else(|| format!("schedule `{kind}` needs a value, e.g. `{kind}:0.1`"))?;
            let v: f64 = a.parse().map_err(|_| format!("`{a}` is not a number"))?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(format!("schedule parameter must be positive, got {a}"))
            }
        };
        match kind {
            "sc-decay" => Ok(ScheduleArg::ScDecay(arg.map(|a| value(Some(a))).transpose()?)),
            "inverse-t" => Ok(ScheduleArg::InverseT(value(arg)?)),
            "sqrt-decay" => Ok(ScheduleArg::SqrtDecay(value(arg)?)),
            "fixed" => Ok(ScheduleArg::Fixed(value(arg)?)),
            _ => Err(format!("unknown schedule `{s}`; expected sc-decay[:c], inverse-t:g, sqrt-decay:a or fixed:a")),
        }
    }
}

impl TryFrom<String> for ScheduleArg {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl fmt::Display for ScheduleArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleArg::ScDecay(None) => write!(f, "sc-decay"),
            ScheduleArg::ScDecay(Some(c)) => write!(f, "sc-decay:{c}"),
            ScheduleArg::InverseT(g) => write!(f, "inverse-t:{g}"),
            ScheduleArg::SqrtDecay(a) => write!(f, "sqrt-decay:{a}"),
            ScheduleArg::Fixed(a) => write!(f, "fixed:{a}"),
        }
    }
}

impl From<ScheduleArg> for String {
    fn from(s: ScheduleArg) -> String {
        s.to_string()
    }
}

impl ScheduleArg {
    /// `c` comes from `constants` when not given explicitly.
    pub fn resolve(&self, n_total: usize, constants: &ProblemConstants) -> Result<StepSchedule, sa2gd_core::Error> {
        match *self {
            ScheduleArg::ScDecay(Some(c)) => StepSchedule::strongly_convex_decay(c, n_total),
            ScheduleArg::ScDecay(None) => {
                let c = constants.c().or(constants.c_hat()).ok_or_else(|| {
                    sa2gd_core::Error::InvalidInput(
                        "this problem has no known strong convexity constant; use sc-decay:<c> or another schedule".into(),
                    )
                })?;
                StepSchedule::strongly_convex_decay(c, n_total)
            }
            ScheduleArg::InverseT(g) => StepSchedule::inverse_t(g),
            ScheduleArg::SqrtDecay(a) => StepSchedule::convex_sqrt_decay(a, n_total),
            ScheduleArg::Fixed(a) => StepSchedule::fixed(a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PatternArg {
    Block,
    Interleaved,
    Random,
}

impl From<PatternArg> for Pattern {
    fn from(p: PatternArg) -> Pattern {
        match p {
            PatternArg::Block => Pattern::BlockAThenB,
            PatternArg::Interleaved => Pattern::Interleaved,
            PatternArg::Random => Pattern::RandomPositions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Sa2gd,
    WeightedSum,
    Both,
}

impl MethodArg {
    pub fn methods(&self) -> Vec<Method> {
        match self {
            MethodArg::Sa2gd => vec![Method::Sa2gd],
            MethodArg::WeightedSum => vec![Method::WeightedSum],
            MethodArg::Both => vec![Method::Sa2gd, Method::WeightedSum],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetArg {
    /// One combined step per iteration.
    Single,
    /// `n_total` combined steps per iteration.
    Matched,
}

impl From<BudgetArg> for WeightedSumBudget {
    fn from(b: BudgetArg) -> Self {
        match b {
            BudgetArg::Single => WeightedSumBudget::Single,
            BudgetArg::Matched => WeightedSumBudget::MatchEffort,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveSection {
    pub problem: Option<String>,
    pub n_a: usize,
    pub n_b: usize,
    pub iterations: usize,
    pub schedule: ScheduleArg,
    pub sigma: f64,
    pub pattern: PatternArg,
    pub replication: u64,
    /// Starting point; a uniform draw from the region when absent.
    pub x0: Option<Vec<f64>>,
}

impl Default for SolveSection {
    fn default() -> Self {
        SolveSection {
            problem: None,
            n_a: 1,
            n_b: 1,
            iterations: 500,
            schedule: ScheduleArg::ScDecay(None),
            sigma: 0.0,
            pattern: PatternArg::Block,
            replication: 0,
            x0: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub problem: Option<String>,
    pub n_total: usize,
    pub iterations: usize,
    pub step: ScheduleArg,
    pub method: MethodArg,
    pub sigma: f64,
    pub replications: usize,
    pub pattern: PatternArg,
    pub ws_budget: BudgetArg,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            problem: None,
            n_total: 40,
            iterations: 300,
            step: ScheduleArg::ScDecay(None),
            method: MethodArg::Both,
            sigma: 0.0,
            replications: 1,
            pattern: PatternArg::Block,
            ws_budget: BudgetArg::Matched,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RateSection {
    pub regime: String,
    pub n_a: usize,
    pub n_b: usize,
    pub sigma: f64,
    pub horizons: Vec<usize>,
    pub replications: usize,
    pub alpha_bar: f64,
    pub pattern: PatternArg,
}

impl Default for RateSection {
    fn default() -> Self {
        let d = sa2gd_core::analysis::RateSpec::new(Regime::SmoothStronglyConvex);
        RateSection {
            regime: d.regime.as_str().to_string(),
            n_a: d.n_a,
            n_b: d.n_b,
            sigma: d.sigma,
            horizons: d.horizons,
            replications: d.replications,
            alpha_bar: d.alpha_bar,
            pattern: PatternArg::Block,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IvtSection {
    pub instances: usize,
    pub max_points: usize,
    pub max_dim: usize,
    pub degree: u32,
    pub tol: f64,
}

impl Default for IvtSection {
    fn default() -> Self {
        let d = sa2gd_core::analysis::IvtCampaign::default();
        IvtSection { instances: d.instances, max_points: d.max_points, max_dim: d.max_dim, degree: d.degree, tol: d.tol }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub out_dir: Option<PathBuf>,
    pub solve: SolveSection,
    pub sweep: SweepSection,
    pub rate: RateSection,
    pub ivt: IvtSection,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }
}
