//! Atomic file output and the CSV schemas.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sa2gd_core::analysis::RateReport;
use sa2gd_core::pareto::{FrontPoint, Method, SweepOutcome};
use sa2gd_core::solver::Trajectory;
use tempfile::NamedTempFile;

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn num(v: f64) -> String {
    format!("{v}")
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner().map_err(|e| anyhow::anyhow!("flushing csv: {}", e.error()))
}

/// Columns `t, x0..x{n-1}, f_a, f_b, S_lambda, alpha_t`; `alpha_t` is empty
/// on the last row.
pub fn trajectory_csv(traj: &Trajectory) -> Result<Vec<u8>> {
    let n = traj.dim();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["t".to_string()];
    header.extend((0..n).map(|i| format!("x{i}")));
    header.extend(["f_a", "f_b", "S_lambda", "alpha_t"].map(String::from));
    w.write_record(&header)?;
    for (t, x) in traj.iterates.iter().enumerate() {
        let mut row = vec![t.to_string()];
        row.extend(x.iter().map(|v| num(*v)));
        row.push(num(traj.f_a[t]));
        row.push(num(traj.f_b[t]));
        row.push(num(traj.s_values[t]));
        row.push(traj.step_sizes.get(t).map(|a| num(*a)).unwrap_or_default());
        w.write_record(&row)?;
    }
    finish(w)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub t: usize,
    pub x: Vec<f64>,
    pub f_a: f64,
    pub f_b: f64,
    pub s_lambda: f64,
    pub alpha_t: Option<f64>,
}

pub fn read_trajectory_csv(bytes: &[u8]) -> Result<Vec<TrajectoryRow>> {
    let mut r = csv::Reader::from_reader(bytes);
    let header = r.headers()?.clone();
    let n = header.len();
    if n < 6 || &header[0] != "t" || &header[n - 1] != "alpha_t" {
        bail!("not a trajectory file: header {:?}", header);
    }
    let dim = n - 5;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let f = |i: usize| -> Result<f64> { Ok(rec[i].parse::<f64>()?) };
        out.push(TrajectoryRow {
            t: rec[0].parse()?,
            x: (1..=dim).map(f).collect::<Result<_>>()?,
            f_a: f(dim + 1)?,
            f_b: f(dim + 2)?,
            s_lambda: f(dim + 3)?,
            alpha_t: if rec[n - 1].is_empty() { None } else { Some(f(n - 1)?) },
        });
    }
    Ok(out)
}

/// Columns `n_a, n_b, lambda_star, method, seed, x0..x{n-1}, f_a, f_b,
/// kept_after_filter` for every raw final iterate of the given sweeps.
pub fn front_csv(outcomes: &[&SweepOutcome]) -> Result<Vec<u8>> {
    let dim = outcomes.iter().flat_map(|o| o.raw.first()).map(|p| p.x.dim()).next().unwrap_or(0);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["n_a", "n_b", "lambda_star", "method", "seed"].map(String::from).to_vec();
    header.extend((0..dim).map(|i| format!("x{i}")));
    header.extend(["f_a", "f_b", "kept_after_filter"].map(String::from));
    w.write_record(&header)?;
    for o in outcomes {
        for (p, kept) in o.raw.iter().zip(&o.kept) {
            let mut row = vec![
                p.n_a.to_string(),
                p.n_b.to_string(),
                num(p.lambda_star),
                p.method.as_str().to_string(),
                p.seed.to_string(),
            ];
            row.extend(p.x.iter().map(|v| num(*v)));
            row.push(num(p.f_a));
            row.push(num(p.f_b));
            row.push(if *kept { "1" } else { "0" }.to_string());
            w.write_record(&row)?;
        }
    }
    finish(w)
}

/// Rows of a front file as `(point, kept_after_filter)`.
pub fn read_front_csv(bytes: &[u8]) -> Result<Vec<(FrontPoint, bool)>> {
    let mut r = csv::Reader::from_reader(bytes);
    let header = r.headers()?.clone();
    let n = header.len();
    if n < 9 || &header[0] != "n_a" || &header[n - 1] != "kept_after_filter" {
        bail!("not a front file: header {:?}", header);
    }
    let dim = n - 8;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let f = |i: usize| -> Result<f64> { Ok(rec[i].parse::<f64>()?) };
        let method = match &rec[3] {
            "sa2gd" => Method::Sa2gd,
            "weighted-sum" => Method::WeightedSum,
            other => bail!("unknown method `{other}`"),
        };
        let x = (5..5 + dim).map(f).collect::<Result<Vec<_>>>()?;
        out.push((
            FrontPoint {
                x: sa2gd_core::point::Point::new(x)?,
                f_a: f(5 + dim)?,
                f_b: f(6 + dim)?,
                n_a: rec[0].parse()?,
                n_b: rec[1].parse()?,
                lambda_star: f(2)?,
                method,
                seed: rec[4].parse()?,
            },
            &rec[n - 1] == "1",
        ));
    }
    Ok(out)
}

/// Columns `T, empirical_gap, std_err, theoretical_bound, regime, n_a, n_b,
/// seed_count`.
pub fn rate_csv(report: &RateReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["T", "empirical_gap", "std_err", "theoretical_bound", "regime", "n_a", "n_b", "seed_count"])?;
    let s = &report.series;
    for i in 0..s.horizons.len() {
        w.write_record([
            s.horizons[i].to_string(),
            num(s.gaps[i]),
            num(s.std_errs[i]),
            num(report.bounds[i]),
            report.spec.regime.as_str().to_string(),
            report.spec.n_a.to_string(),
            report.spec.n_b.to_string(),
            s.replications.to_string(),
        ])?;
    }
    finish(w)
}
