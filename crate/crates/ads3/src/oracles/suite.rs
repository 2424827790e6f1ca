//! The `verify` suite: named checks with pass/fail and margins.

use ads3_core::group::{epsilon_upper, standard_class_n};
use ads3_core::thresholds::{eta, m_threshold, ThresholdInputs};
use ads3_core::{AdS3Point, GroupElement, SphericalParams};
use rayon::prelude::*;
use serde::Serialize;

use super::fd::{harmonicity_sweep, laplacian_eigen_check, sample_positive_points, FdConfig};
use super::lemmas::{self, CheckOutcome};
use super::quadrature::radial_norm_sweep;
use crate::formats::json_f64;

/// Selector names accepted by [`run_suite`], besides `all`.
pub const SELECTORS: [&str; 10] = [
    "harmonic",
    "eigen",
    "l2norm",
    "sekoi",
    "progression",
    "koukou",
    "coefficient",
    "displacement",
    "computation-lemma",
    "class-n",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    #[serde(serialize_with = "json_f64::serialize")]
    pub margin: f64,
    pub cases: usize,
    pub detail: String,
}

impl CheckReport {
    fn from_outcome(name: &'static str, o: CheckOutcome, detail: String) -> Self {
        CheckReport { name, passed: o.holds, margin: o.margin, cases: o.cases, detail }
    }
}

/// Unknown selector names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownSelector(pub String);

impl std::fmt::Display for UnknownSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unknown verify selector `{}` (expected all or one of {})", self.0, SELECTORS.join(", "))
    }
}

impl std::error::Error for UnknownSelector {}

/// Grid used for the shell inequality: `C x a x eps x s`.
pub const KOUKOU_C: [f64; 3] = [0.5, 1.0, 10.0];
pub const KOUKOU_A: [f64; 3] = [0.5, 1.0, 2.0];
pub const KOUKOU_EPS: [f64; 3] = [0.1, 0.5, 1.0];
pub const KOUKOU_S: [u32; 3] = [1, 3, 9];

/// Shell inequality over the 81-cell grid at `m = ceil(m_threshold) + 1` and `+ 5`.
///
/// Also returns how many cells fail at `m = floor(m_threshold) - 5`, which is informational.
pub fn koukou_grid(random_trials: usize, seed: u64) -> (CheckOutcome, usize) {
    let mut cells = Vec::new();
    for &c in &KOUKOU_C {
        for &a in &KOUKOU_A {
            for &e in &KOUKOU_EPS {
                for &s in &KOUKOU_S {
                    cells.push((c, a, e, s));
                }
            }
        }
    }
    let results: Vec<(CheckOutcome, bool)> = cells
        .par_iter()
        .enumerate()
        .map(|(i, &(c, a, e, s))| {
            let th = m_threshold(&ThresholdInputs::new(c, a, e, s).expect("grid inputs are positive"));
            let mut out = lemmas::check_koukou(c, a, e, s, th.ceil() as u32 + 1, random_trials, seed + i as u64);
            let plus5 = lemmas::check_koukou(c, a, e, s, th.ceil() as u32 + 5, random_trials, seed + i as u64);
            out.holds &= plus5.holds;
            out.margin = out.margin.min(plus5.margin);
            out.cases += plus5.cases;
            let probe_m = th.floor() - 5.0;
            let probe_fails =
                probe_m >= 1.0 && !lemmas::check_koukou(c, a, e, s, probe_m as u32, 0, seed).holds;
            (out, probe_fails)
        })
        .collect();
    let mut total = CheckOutcome { holds: true, margin: f64::INFINITY, cases: 0 };
    let mut probe_failures = 0;
    for (o, p) in results {
        total.holds &= o.holds;
        total.margin = total.margin.min(o.margin);
        total.cases += o.cases;
        probe_failures += p as usize;
    }
    (total, probe_failures)
}

/// For class-n presentations on `a(r)`, the enumerated upper bound on `eps_Gamma` never drops
/// below `min(eta_n / 3, r / 6)`.
pub fn class_n_epsilon_check(ns: &[u32], rs: &[f64], depth: usize) -> ads3_core::Result<CheckOutcome> {
    let mut out = CheckOutcome { holds: true, margin: f64::INFINITY, cases: 0 };
    for &n in ns {
        for &r in rs {
            let gp = standard_class_n(&[GroupElement::boost(r)], n, r)?;
            let lower = (eta(n, r)? / 3.0).min(r / 6.0);
            let v = epsilon_upper(&gp, depth)? - lower;
            out.holds &= v >= -1e-9;
            out.margin = out.margin.min(v);
            out.cases += 1;
        }
    }
    Ok(out)
}

fn run_one(name: &'static str, seed: u64) -> ads3_core::Result<CheckReport> {
    Ok(match name {
        "harmonic" => {
            let r = harmonicity_sweep(&[1, 2, 3, 4], &[0, 1, 2, 3, 4], &FdConfig::default(), seed)?;
            let ok = r.max_relative < 1e-4 && r.min_ratio >= 3.5 && r.max_ratio <= 4.5;
            CheckReport {
                name,
                passed: ok,
                margin: 1e-4 - r.max_relative,
                cases: r.evaluations,
                detail: format!(
                    "max relative residual {:.3e}; h-halving ratio in [{:.3}, {:.3}]",
                    r.max_relative, r.min_ratio, r.max_ratio
                ),
            }
        }
        "eigen" => {
            let cfg = FdConfig::default();
            let mut worst: f64 = 0.0;
            let mut cases = 0;
            for x in sample_positive_points(cfg.points, seed) {
                let q = fd_q(&x);
                let y = x.map(|v| v / q.sqrt());
                let point = AdS3Point::from_four_vector(y)?;
                for (m, k) in [(1, 0), (2, 1), (3, 2), (4, 4)] {
                    worst = worst.max(laplacian_eigen_check(&SphericalParams::new(m, k)?, &point, &cfg)?);
                    cases += 1;
                }
            }
            CheckReport {
                name,
                passed: worst < 1e-4,
                margin: 1e-4 - worst,
                cases,
                detail: format!("max residual |box_H psi - lambda psi| / (1 + |psi|) = {worst:.3e}"),
            }
        }
        "l2norm" => {
            let worst = radial_norm_sweep(6, 9);
            CheckReport {
                name,
                passed: worst < 1e-8,
                margin: 1e-8 - worst,
                cases: 60,
                detail: format!("max relative gap to B(k+1, 2m-1): {worst:.3e}"),
            }
        }
        "sekoi" => {
            let o = lemmas::sekoi_sweep(12, &[3, 5, 7]);
            CheckReport::from_outcome(name, o, "all sign vectors, k <= 12, N in {3, 5, 7}".into())
        }
        "progression" => {
            let ev = lemmas::arithmetic_progression_search(1000);
            CheckReport {
                name,
                passed: ev.solutions == 0,
                margin: -ev.best_margin,
                cases: ev.grid_points,
                detail: format!("grid evidence only: {} solutions found", ev.solutions),
            }
        }
        "koukou" => {
            let (o, probe) = koukou_grid(8, seed);
            CheckReport::from_outcome(
                name,
                o,
                format!("81 cells at m = ceil(m_threshold) + 1, + 5; log margin; {probe} cells fail at floor - 5"),
            )
        }
        "coefficient" => {
            let mut o = lemmas::coefficient_sweep(12);
            let sine = lemmas::check_sine_bound(10_000);
            o.holds &= sine.holds;
            o.cases += sine.cases;
            CheckReport::from_outcome(name, o, "k <= 12; sin(pi x / 2) >= x on 10^4 points".into())
        }
        "displacement" => {
            let o = lemmas::fuzz_displacement_inequality(100_000, seed);
            CheckReport::from_outcome(name, o, "random pairs and points, slack 1e-9".into())
        }
        "computation-lemma" => {
            let o = lemmas::computation_lemma_sweep(2..=12, &[0.1, 0.5, 1.0, 2.0])?;
            CheckReport::from_outcome(name, o, "n in 2..=12, r in {0.1, 0.5, 1, 2}, slack 1e-12".into())
        }
        "class-n" => {
            let o = class_n_epsilon_check(&[2, 3, 4], &[0.5, 1.0], 6)?;
            CheckReport::from_outcome(name, o, "eps upper bound vs min(eta_n / 3, r / 6), depth 6".into())
        }
        _ => unreachable!("selector validated by run_suite"),
    })
}

fn fd_q(x: &[f64; 4]) -> f64 {
    super::fd::quadratic_form(x)
}

/// Runs the selected checks in [`SELECTORS`] order; `all` runs every check.
pub fn run_suite(selectors: &[String], seed: u64) -> anyhow::Result<Vec<CheckReport>> {
    for s in selectors {
        if s != "all" && !SELECTORS.contains(&s.as_str()) {
            return Err(UnknownSelector(s.clone()).into());
        }
    }
    let everything = selectors.is_empty() || selectors.iter().any(|s| s == "all");
    let mut out = Vec::new();
    for name in SELECTORS {
        if everything || selectors.iter().any(|s| s == name) {
            out.push(run_one(name, seed)?);
        }
    }
    Ok(out)
}
