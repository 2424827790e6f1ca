//! Acceptance run: one PASS/FAIL line per criterion, with the tolerances and time limits pinned.

use std::process::Command;
use std::time::{Duration, Instant};

use ads3::oracles::fd::{harmonicity_sweep, FdConfig};
use ads3::oracles::lemmas;
use ads3::oracles::quadrature::radial_norm_sweep;
use ads3::oracles::suite::{class_n_epsilon_check, koukou_grid};
use ads3_core::certificate::{assemble_certificate, independence_certificate};
use ads3_core::group::{count, epsilon_upper, GrowthConstants, DEFAULT_BUDGET};
use ads3_core::thresholds::m_gamma_detail;
use ads3_core::{
    AdS3Point, CertificateVerdict, CertifiedValue, GroupElement, GroupPresentation, IsometryPair, ReductionStrategy,
    SeriesOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Criterion 1
const FD_H: f64 = 1e-3;
const FD_POINTS: usize = 100;
const FD_REL_TOL: f64 = 1e-4;
const FD_RATIO: (f64, f64) = (3.5, 4.5);
// Criterion 2
const L2_REL_TOL: f64 = 1e-8;
// Criterion 6
const CYCLIC_RMAX: f64 = 40.0;
const SCHOTTKY_RMAX: f64 = 8.0;
const SCHOTTKY_BRUTE_DEPTH: usize = 12;
// Criterion 7
const EPS_GAMMA_CYCLIC: f64 = 2.0 / 3.0;
// Criterion 9
const FUZZ_TRIALS: usize = 100_000;

struct Verdict {
    passed: bool,
    detail: String,
}

fn run(id: u32, title: &str, limit: Duration, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    let ok = v.passed && elapsed <= limit;
    println!(
        "{} {id:>2}. {title}: {} [{:.2}s / {}s]",
        if ok { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn harmonicity() -> Verdict {
    let cfg = FdConfig::new(FD_H, FD_POINTS).unwrap();
    let r = harmonicity_sweep(&[1, 2, 3, 4], &[0, 1, 2, 3, 4], &cfg, 2024).unwrap();
    Verdict {
        passed: r.max_relative < FD_REL_TOL && r.min_ratio >= FD_RATIO.0 && r.max_ratio <= FD_RATIO.1,
        detail: format!(
            "max relative residual {:.2e} < {FD_REL_TOL:e}; h-halving ratio [{:.3}, {:.3}]",
            r.max_relative, r.min_ratio, r.max_ratio
        ),
    }
}

fn radial_norm() -> Verdict {
    let worst = radial_norm_sweep(6, 9);
    Verdict { passed: worst < L2_REL_TOL, detail: format!("max relative gap {worst:.2e} < {L2_REL_TOL:e}") }
}

fn sekoi() -> Verdict {
    let o = lemmas::sekoi_sweep(12, &[3, 5, 7]);
    Verdict {
        passed: o.holds && o.margin > 0.0,
        detail: format!("{} sign conditions, min a_j cos(N^j theta) = {:.3e}", o.cases, o.margin),
    }
}

fn koukou() -> Verdict {
    let (o, probe) = koukou_grid(8, 77);
    Verdict {
        passed: o.holds && o.margin > 0.0,
        detail: format!(
            "{} polynomial trials over 81 cells, min log margin {:.3e}; {probe} cells fail at floor - 5",
            o.cases, o.margin
        ),
    }
}

fn coefficient() -> Verdict {
    let o = lemmas::coefficient_sweep(12);
    let sine = lemmas::check_sine_bound(10_000);
    Verdict {
        passed: o.holds && sine.holds,
        detail: format!("{} coefficients, min 3^(k-1)|cos| - 1 = {:.3e}; sine bound ok", o.cases, o.margin),
    }
}

fn cyclic(s: f64) -> GroupPresentation {
    GroupPresentation::new(
        "cyclic",
        vec![IsometryPair::new(GroupElement::boost(s), GroupElement::IDENTITY)],
        ReductionStrategy::FreeGroup,
    )
    .unwrap()
}

fn mat_mul(x: [f64; 4], y: [f64; 4]) -> [f64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn schottky() -> [[f64; 4]; 2] {
    let (c, s) = (1.0f64.cosh(), 1.0f64.sinh());
    [[c, s, s, c], [c, 9.0 * s, s / 9.0, c]]
}

/// Smallest hyperbolic distance between distinct isometric circles of the generators and their
/// inverses, after checking the circles are pairwise disjoint and `i` lies outside all of them.
///
/// A reduced word of length `L` then moves `i` by at least `(L - 1)` times this distance.
fn isometric_circle_gap(gens: &[[f64; 4]]) -> Option<f64> {
    let mut intervals = Vec::new();
    for g in gens {
        let [a, _, c, d] = *g;
        let r = 1.0 / c.abs();
        intervals.push((-d / c - r, -d / c + r));
        intervals.push((a / c - r, a / c + r));
    }
    for &(lo, hi) in &intervals {
        let center = (lo + hi) / 2.0;
        let radius = (hi - lo) / 2.0;
        if (center * center + 1.0).sqrt() <= radius {
            return None;
        }
    }
    intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut gap = f64::INFINITY;
    for i in 0..intervals.len() {
        for j in i + 1..intervals.len() {
            let ((a, b), (c, d)) = (intervals[i], intervals[j]);
            if c <= b {
                return None;
            }
            gap = gap.min((1.0 + 2.0 * (c - b) * (d - a) / ((b - a) * (d - c))).acosh());
        }
    }
    Some(gap)
}

/// Norms of all freely reduced words up to `depth`, with no pruning.
fn brute_force_norms(gens: &[[f64; 4]], depth: usize) -> Vec<f64> {
    let mut letters: Vec<[f64; 4]> = gens.to_vec();
    letters.extend(gens.iter().map(|g| [g[3], -g[1], -g[2], g[0]]));
    let n = gens.len();
    let inverse = |l: usize| if l < n { l + n } else { l - n };
    let norm = |m: [f64; 4]| (m.iter().map(|v| v * v).sum::<f64>() / 2.0).max(1.0).acosh();
    let mut out = vec![0.0];
    let mut layer: Vec<([f64; 4], usize)> = vec![([1.0, 0.0, 0.0, 1.0], usize::MAX)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for (m, last) in &layer {
            for (l, g) in letters.iter().enumerate() {
                if *last != usize::MAX && l == inverse(*last) {
                    continue;
                }
                let w = mat_mul(*m, *g);
                out.push(norm(w));
                next.push((w, l));
            }
        }
        layer = next;
    }
    out
}

fn orbit_counts() -> Verdict {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for &s in &[0.5, 1.0, 2.0] {
        let gp = cyclic(s);
        for i in 0..=(CYCLIC_RMAX * 4.0) as usize {
            let r = i as f64 / 4.0;
            let expect = 2 * (r / (2.0 * s)).floor() as usize + 1;
            let got = count(&gp, &AdS3Point::ORIGIN, r, DEFAULT_BUDGET).unwrap();
            checked += 1;
            if got != expect {
                mismatches.push(format!("cyclic s={s} R={r}: {got} != {expect}"));
            }
        }
    }
    let gens = schottky();
    let gap = isometric_circle_gap(&gens).expect("Schottky circles are disjoint");
    let needed = 1 + (SCHOTTKY_RMAX / gap).floor() as usize;
    let norms = brute_force_norms(&gens, SCHOTTKY_BRUTE_DEPTH);
    let pairs: Vec<IsometryPair> = gens
        .iter()
        .map(|g| IsometryPair::new(GroupElement::from_entries(*g).unwrap(), GroupElement::IDENTITY))
        .collect();
    for strategy in [ReductionStrategy::FreeGroup, ReductionStrategy::HashDedup] {
        let gp = GroupPresentation::new("schottky", pairs.clone(), strategy).unwrap();
        for i in 0..=(SCHOTTKY_RMAX * 2.0) as usize {
            let r = i as f64 / 2.0;
            let expect = norms.iter().filter(|&&v| v <= r + 1e-9).count();
            let got = count(&gp, &AdS3Point::ORIGIN, r, DEFAULT_BUDGET).unwrap();
            checked += 1;
            if got != expect {
                mismatches.push(format!("schottky {strategy:?} R={r}: {got} != {expect}"));
            }
        }
    }
    Verdict {
        passed: mismatches.is_empty() && needed <= SCHOTTKY_BRUTE_DEPTH,
        detail: format!(
            "{checked} radii exact; Schottky words with norm <= {SCHOTTKY_RMAX} have length <= {needed} \
             (circle gap {gap:.4}), brute force to depth {SCHOTTKY_BRUTE_DEPTH}{}",
            if mismatches.is_empty() { String::new() } else { format!("; {}", mismatches.join("; ")) }
        ),
    }
}

fn end_to_end() -> Verdict {
    let gp = cyclic(1.0);
    let eps_gamma = epsilon_upper(&gp, 8).unwrap();
    let growth = GrowthConstants::user_supplied(1.01, 1.0).unwrap();
    let radii: Vec<f64> = (0..=40).map(|i| i as f64 * 0.25).collect();
    let valid = growth.validate(&gp, &AdS3Point::ORIGIN, &radii, DEFAULT_BUDGET).unwrap();
    let mut parts = vec![format!("eps_Gamma {eps_gamma:.6}, growth (1.01, 1) valid on grid: {valid}")];
    let mut ok = valid && (eps_gamma - EPS_GAMMA_CYCLIC).abs() < 1e-12;
    for k in [2usize, 3] {
        let d = m_gamma_detail(k as u32, &[growth], EPS_GAMMA_CYCLIC).unwrap();
        let m = d.value.ceil() as u32 + 1;
        let cert = independence_certificate(&gp, m, k, d.eps, &growth, &SeriesOptions::default()).unwrap();
        let certified = cert.verdict == CertificateVerdict::Certified;
        ok &= certified;
        parts.push(format!(
            "k={k}: m={m} (m_Gamma {:.3}), sigma_min {:.3e} > error {:.3e}: {}",
            d.value,
            cert.sigma_min,
            cert.total_error,
            if certified { "Certified" } else { "Inconclusive" }
        ));
    }
    Verdict { passed: ok, detail: parts.join("; ") }
}

fn adversarial() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let growth = GrowthConstants::user_supplied(1.0, 1.0).unwrap();
    let mut certified = 0;
    for trial in 0..100 {
        let k = rng.random_range(2..=6usize);
        let rows = 1 << k;
        let radius = 10f64.powi(rng.random_range(-14..-1));
        let weights: Vec<f64> = (0..k - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
        let dependent = rng.random_range(0..k);
        let mut values = Vec::with_capacity(rows * k);
        for _ in 0..rows {
            let free: Vec<f64> = (0..k - 1).map(|_| rng.random_range(-1.0..1.0)).collect();
            let combo: f64 = free.iter().zip(&weights).map(|(x, w)| x * w).sum();
            let mut row = free;
            row.insert(dependent, combo);
            values.extend(row);
        }
        let entries = values
            .iter()
            .map(|v| CertifiedValue::new(v + rng.random_range(-radius..=radius), radius))
            .collect();
        let points = vec![AdS3Point::ORIGIN; rows];
        let cert = assemble_certificate("synthetic", 2, k, 0.1, growth, 1.0, points, entries).unwrap();
        if cert.verdict == CertificateVerdict::Certified {
            certified += 1;
            eprintln!("trial {trial} certified a rank-deficient matrix");
        }
    }
    Verdict { passed: certified == 0, detail: format!("100 rank-deficient matrices, {certified} certified") }
}

fn inequalities() -> Verdict {
    let fuzz = lemmas::fuzz_displacement_inequality(FUZZ_TRIALS, 99);
    let grid = lemmas::computation_lemma_sweep(2..=12, &[0.1, 0.5, 1.0, 2.0]).unwrap();
    let class_n = class_n_epsilon_check(&[2, 3, 4], &[0.5, 1.0], 6).unwrap();
    Verdict {
        passed: fuzz.holds && fuzz.cases == FUZZ_TRIALS && grid.holds && class_n.holds,
        detail: format!(
            "displacement {} cases (min slack {:.2e}); eta_n grid {} cases (min {:.2e}); class-n eps {} cases (min {:.2e})",
            fuzz.cases, fuzz.margin, grid.cases, grid.margin, class_n.cases, class_n.margin
        ),
    }
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("cyclic.json");
    std::fs::write(&group, ads3::formats::GroupFile::from_presentation(&cyclic(1.0)).to_json()).unwrap();
    let mut outputs = Vec::new();
    for (i, workers) in ["1", "4", "4"].iter().enumerate() {
        let out = dir.path().join(format!("cert{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_ads3"))
            .env("ADS3_WORKERS", workers)
            .args(["certify", "--group"])
            .arg(&group)
            .args(["--k", "3", "--eps-gamma", "0.6666666666666666", "--growth", "1.01,1", "--seed", "7", "-o"])
            .arg(&out)
            .status()
            .unwrap();
        if status.code() != Some(0) {
            return Verdict { passed: false, detail: format!("certify exited with {status}") };
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    Verdict { passed: same, detail: format!("3 certify runs, {} bytes each, identical: {same}", outputs[0].len()) }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "ambient harmonicity by finite differences", secs(10), harmonicity),
        run(2, "radial L2 norm by quadrature", secs(5), radial_norm),
        run(3, "geometric-progression sign lemma, exhaustive", secs(5), sekoi),
        run(4, "shell inequality on the 81-cell grid", secs(30), koukou),
        run(5, "coefficient lower bound, exhaustive", secs(5), coefficient),
        run(6, "orbit counts against closed form and brute force", secs(60), orbit_counts),
        run(7, "independence certificates k = 2, 3 on the cyclic group", secs(600), end_to_end),
        run(8, "certificate soundness on rank-deficient matrices", secs(10), adversarial),
        run(9, "displacement, eta_n and class-n epsilon checks", secs(30), inequalities),
        run(10, "byte-identical certify output", secs(120), determinism),
    ];
    let failed = results.iter().filter(|r| !**r).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
