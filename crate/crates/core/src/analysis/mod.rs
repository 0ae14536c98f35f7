//! Convergence-rate measurement, closed-form bounds and the convex
//! combination witness.

pub mod bounds;
pub mod gap;
pub mod ivt;
pub mod rate;

pub use bounds::{
    theoretical_bound, theoretical_bound_convex, theoretical_bound_iterate, theoretical_bound_nonsmooth_sc,
    theoretical_bound_smooth_sc, RateBoundInputs,
};
pub use gap::{default_aggregation, fit_loglog_slope, loglog_slope, optimality_gap_series, optimality_gap_series_with, GapSeries};
pub use ivt::{
    campaign_instance, certificate_holds, ivt_witness, run_ivt_campaign, verify_ivt, IvtCampaign, IvtCampaignReport,
    IvtWitness, Polynomial,
};
pub use rate::{canonical_dim, canonical_problem, canonical_schedule, default_horizons, run_rate_experiment, RateReport, RateSpec};
