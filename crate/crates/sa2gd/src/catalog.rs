//! Named problems: the benchmark set plus the synthetic presets, described
//! by the manifest shipped with the core crate.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use sa2gd_core::problems::MANIFEST;
use sa2gd_core::{prelude::*, Error};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Benchmark,
    QuadraticPair,
    NonsmoothPair,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ManifestEntry {
    pub family: FamilyTag,
    pub dimension: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub f_a: String,
    pub f_b: String,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Manifest {
    pub version: u32,
    #[serde(flatten)]
    pub entries: BTreeMap<String, ManifestEntry>,
}

pub fn manifest() -> Result<Manifest> {
    let m: Manifest = toml::from_str(MANIFEST).context("parsing the problems manifest")?;
    if m.version != 1 {
        bail!("unsupported manifest version {}", m.version);
    }
    Ok(m)
}

/// Synthetic preset names, in listing order.
pub const PRESETS: [&str; 4] = ["quad-1d", "quad-2d", "l1-2d", "l1-sc-2d"];

fn centres(dim: usize) -> (Point, Point) {
    let mut b = vec![0.0; dim];
    b[0] = 2.0;
    (Point::zeros(dim).expect("dim >= 1"), Point::new(b).expect("finite"))
}

fn preset(name: &str) -> Option<Result<BiObjectiveProblem, Error>> {
    let build = |dim: usize, lower: Vec<f64>, upper: Vec<f64>, l1: Option<f64>| {
        let region = FeasibleRegion::new_box(lower, upper)?;
        let (a, b) = centres(dim);
        match l1 {
            None => quadratic_pair(a, b, 1.0, 1.0, region),
            Some(m) => nonsmooth_pair(a, b, m, region),
        }
    };
    let p = match name {
        "quad-1d" => build(1, vec![-10.0], vec![10.0], None),
        "quad-2d" => build(2, vec![-1.0, -1.0], vec![3.0, 1.0], None),
        "l1-2d" => build(2, vec![-1.0, -1.0], vec![3.0, 1.0], Some(0.0)),
        "l1-sc-2d" => build(2, vec![-1.0, -1.0], vec![3.0, 1.0], Some(1.0)),
        _ => return None,
    };
    Some(p.map(|mut p| {
        p.name = name.to_string();
        p
    }))
}

/// Looks up a preset (exact name) or a benchmark (case-insensitive).
pub fn resolve_problem(name: &str) -> Result<BiObjectiveProblem, Error> {
    if let Some(p) = preset(name) {
        return p;
    }
    benchmark_problem(name).map_err(|_| {
        let mut known: Vec<&str> = PRESETS.to_vec();
        known.extend(BenchmarkName::ALL.iter().map(|b| b.as_str()));
        Error::InvalidInput(format!("unknown problem `{name}`; known problems: {}", known.join(", ")))
    })
}

/// `(name, family, dimension, source)` rows for `problems list`.
pub fn listing() -> Result<Vec<(String, String, usize, String)>> {
    let m = manifest()?;
    let order = BenchmarkName::ALL.iter().map(|b| b.as_str()).chain(PRESETS);
    order
        .map(|name| {
            let e = m.entries.get(name).with_context(|| format!("manifest has no entry for {name}"))?;
            let family = match e.family {
                FamilyTag::Benchmark => "benchmark",
                FamilyTag::QuadraticPair => "quadratic_pair",
                FamilyTag::NonsmoothPair => "nonsmooth_pair",
            };
            Ok((name.to_string(), family.to_string(), e.dimension, e.source.clone()))
        })
        .collect()
}
