//! JSON summary of a rate experiment.

use sa2gd_core::analysis::RateReport;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsSummary {
    pub theta: f64,
    pub l: Option<f64>,
    pub c: Option<f64>,
    pub g_hat: Option<f64>,
    pub l_hat: Option<f64>,
    pub l_tilde: Option<f64>,
    pub c_hat: Option<f64>,
    pub g: f64,
    pub g_bar: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregatedSummary {
    pub mode: String,
    pub horizon: usize,
    pub gap: f64,
    pub std_err: f64,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RateSummary {
    pub regime: String,
    pub n_a: usize,
    pub n_b: usize,
    pub sigma: f64,
    pub replications: usize,
    pub master_seed: u64,
    pub schedule: String,
    pub constants: ConstantsSummary,
    pub horizons: Vec<usize>,
    pub empirical_gap: Vec<f64>,
    pub std_err: Vec<f64>,
    pub theoretical_bound: Vec<f64>,
    pub bound_ok: Vec<bool>,
    pub slope: f64,
    pub slope_window: [f64; 2],
    pub slope_ok: bool,
    pub aggregated: AggregatedSummary,
    pub passed: bool,
}

impl RateSummary {
    pub fn from_report(r: &RateReport) -> Self {
        let k = &r.constants;
        let s = &r.series;
        let last = s.horizons.len() - 1;
        let (lo, hi) = r.spec.slope_window();
        RateSummary {
            regime: r.spec.regime.as_str().to_string(),
            n_a: r.spec.n_a,
            n_b: r.spec.n_b,
            sigma: r.spec.sigma,
            replications: s.replications,
            master_seed: r.spec.master_seed,
            schedule: format!("{:?}", r.schedule),
            constants: ConstantsSummary {
                theta: k.theta,
                l: k.l(),
                c: k.c(),
                g_hat: k.g_hat(),
                l_hat: k.l_hat(),
                l_tilde: k.l_tilde(),
                c_hat: k.c_hat(),
                g: k.g,
                g_bar: k.g_bar,
            },
            horizons: s.horizons.clone(),
            empirical_gap: s.gaps.clone(),
            std_err: s.std_errs.clone(),
            theoretical_bound: r.bounds.clone(),
            bound_ok: r.bound_ok.clone(),
            slope: r.slope,
            slope_window: [lo, hi],
            slope_ok: r.slope_ok,
            aggregated: AggregatedSummary {
                mode: format!("{:?}", s.aggregation),
                horizon: s.horizons[last],
                gap: s.aggregated_gaps[last],
                std_err: s.aggregated_std_errs[last],
                bound: r.bounds[last],
                ok: r.aggregated_ok,
            },
            passed: r.passed(),
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
