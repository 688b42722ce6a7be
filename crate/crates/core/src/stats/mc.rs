//! Monte Carlo estimators. Trajectories run in parallel and are reduced in
//! trajectory order, so every report is a pure function of its [`SimConfig`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::reference::{f_theta, luroth_series_lyapunov, m_p};
use super::sim::{Lattice, SimConfig, StartPoint};
use crate::error::{Error, Result};
use crate::maps::{self, Region, SignDigit};
use crate::markov;
use crate::rational::{fmt_rational, ratio};
use crate::scalar::real_json;

/// Batches used for the standard error of a single trajectory.
pub const BATCHES: usize = 100;

/// Truncation for the `c = 0` Lyapunov reference.
pub const SERIES_TRUNCATION: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct StatReport {
    pub estimate: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub reference: Option<f64>,
    pub seed: u64,
}

impl StatReport {
    /// `|estimate - reference|` in units of the standard error.
    pub fn z_score(&self) -> Option<f64> {
        self.reference.map(|r| (self.estimate - r).abs() / self.std_error)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "estimate": real_json(self.estimate),
            "std_error": real_json(self.std_error),
            "n_samples": self.n_samples,
            "reference": self.reference.map(real_json),
            "seed": self.seed,
        })
    }
}

/// Sums over one independent unit: a whole trajectory, or one batch of a
/// lone trajectory.
#[derive(Debug, Clone)]
struct Unit {
    n: u64,
    sums: Vec<f64>,
}

fn units_per_trajectory(cfg: &SimConfig) -> usize {
    if cfg.n_trajectories >= 2 {
        1
    } else {
        BATCHES.min(cfg.n_steps)
    }
}

/// Runs every trajectory, feeding each step to `visit`, which adds into the
/// current unit's sums.
fn run_units<F>(cfg: &SimConfig, width: usize, visit: F) -> Result<Vec<Unit>>
where
    F: Fn(&super::sim::SimStep, &mut [f64]) + Sync,
{
    cfg.validate()?;
    let lattice = Lattice::new(&cfg.c)?;
    let per = units_per_trajectory(cfg);
    let units: Vec<Vec<Unit>> = (0..cfg.n_trajectories)
        .into_par_iter()
        .map(|t| {
            let mut orbit = cfg.orbit(&lattice, t);
            let mut units = vec![Unit { n: 0, sums: vec![0.0; width] }; per];
            for i in 0..cfg.n_steps {
                let u = &mut units[i * per / cfg.n_steps];
                let step = orbit.step();
                visit(&step, &mut u.sums);
                u.n += 1;
            }
            units
        })
        .collect();
    Ok(units.into_iter().flatten().collect())
}

fn summarize(units: &[Unit], k: usize) -> (f64, f64, u64) {
    let n: u64 = units.iter().map(|u| u.n).sum();
    let total: f64 = units.iter().map(|u| u.sums[k]).sum();
    let est = total / n as f64;
    let means: Vec<f64> = units.iter().filter(|u| u.n > 0).map(|u| u.sums[k] / u.n as f64).collect();
    let se = if means.len() >= 2 {
        let mu = means.iter().sum::<f64>() / means.len() as f64;
        let var = means.iter().map(|m| (m - mu) * (m - mu)).sum::<f64>() / (means.len() - 1) as f64;
        (var / means.len() as f64).sqrt()
    } else {
        f64::NAN
    };
    (est, se, n)
}

fn report(units: &[Unit], k: usize, reference: Option<f64>, seed: u64) -> StatReport {
    let (estimate, std_error, n_samples) = summarize(units, k);
    StatReport { estimate, std_error, n_samples, reference, seed }
}

/// Exact-model Lyapunov exponent for the configured `(c, p)`, when one exists.
pub fn lyapunov_reference(c: &BigRational, p: f64) -> Option<f64> {
    if c.is_zero() {
        return luroth_series_lyapunov(SERIES_TRUNCATION).ok().map(|e| e.midpoint());
    }
    if p <= 0.0 || p >= 1.0 {
        return None;
    }
    markov::lyapunov_real(c, p).ok()
}

/// Birkhoff average of `ln(d_n(d_n - 1))`.
pub fn lyapunov_mc(cfg: &SimConfig) -> Result<StatReport> {
    let units = run_units(cfg, 1, |s, acc| acc[0] += s.log_slope())?;
    Ok(report(&units, 0, lyapunov_reference(&cfg.c, cfg.p), cfg.seed))
}

#[derive(Debug, Clone)]
pub struct ThetaStats {
    pub mean: StatReport,
    /// `(z, empirical CDF, reference CDF)` on the requested grid.
    pub cdf: Vec<(f64, f64, Option<f64>)>,
    /// Kolmogorov distance between all samples and `p F_L + (1-p) F_A`
    /// (only for `c = 0`).
    pub sup_distance: Option<f64>,
}

impl ThetaStats {
    pub fn to_json(&self) -> Value {
        json!({
            "mean": self.mean.to_json(),
            "sup_distance": self.sup_distance.map(real_json),
            "cdf": self.cdf.iter().map(|(z, e, r)| json!({
                "z": real_json(*z),
                "empirical": real_json(*e),
                "reference": r.map(real_json),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Running mean and empirical distribution of `θ_n`.
pub fn theta_stats_mc(cfg: &SimConfig, grid: &[f64]) -> Result<ThetaStats> {
    cfg.validate()?;
    let lattice = Lattice::new(&cfg.c)?;
    let per = units_per_trajectory(cfg);
    let runs: Vec<(Vec<Unit>, Vec<f64>)> = (0..cfg.n_trajectories)
        .into_par_iter()
        .map(|t| {
            let mut orbit = cfg.orbit(&lattice, t);
            let mut units = vec![Unit { n: 0, sums: vec![0.0] }; per];
            let mut samples = Vec::with_capacity(cfg.n_steps);
            for i in 0..cfg.n_steps {
                let th = orbit.step().theta();
                let u = &mut units[i * per / cfg.n_steps];
                u.sums[0] += th;
                u.n += 1;
                samples.push(th);
            }
            (units, samples)
        })
        .collect();
    let mut units = Vec::new();
    let mut samples = Vec::new();
    for (u, s) in runs {
        units.extend(u);
        samples.extend(s);
    }
    let c_zero = cfg.c.is_zero();
    let reference = if c_zero { Some(m_p(cfg.p)?) } else { None };
    let mean = report(&units, 0, reference, cfg.seed);

    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let cdf = grid
        .iter()
        .map(|&z| {
            let count = samples.partition_point(|&v| v <= z) as f64;
            let r = if c_zero && z > 0.0 && z <= 1.0 { f_theta(z, cfg.p).ok() } else { None };
            (z, count / n, r)
        })
        .collect();
    let sup_distance = if c_zero { Some(kolmogorov_distance(&samples, |z| f_theta(z, cfg.p))?) } else { None };
    Ok(ThetaStats { mean, cdf, sup_distance })
}

/// `sup_z |F_n(z) - F(z)|` for sorted samples and a continuous `F`, with
/// `F = 0` at or below zero.
pub fn kolmogorov_distance(sorted: &[f64], cdf: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let n = sorted.len() as f64;
    let mut worst = 0.0f64;
    for (i, &v) in sorted.iter().enumerate() {
        let f = if v <= 0.0 { 0.0 } else { cdf(v.min(1.0))? };
        worst = worst.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone)]
pub struct FrequencyRow {
    /// `None` sign for a plain digit row; digit 0 for the lumped tail.
    pub sign: Option<u8>,
    pub digit: u64,
    pub report: StatReport,
}

impl FrequencyRow {
    pub fn label(&self) -> String {
        let d = if self.digit == 0 { ">max".to_string() } else { self.digit.to_string() };
        match self.sign {
            Some(s) => format!("({s},{d})"),
            None => d,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FrequencyTable {
    pub max_digit: u64,
    pub rows: Vec<FrequencyRow>,
}

impl FrequencyTable {
    pub fn digit(&self, d: u64) -> Option<&StatReport> {
        self.rows.iter().find(|r| r.sign.is_none() && r.digit == d).map(|r| &r.report)
    }

    pub fn symbol(&self, s: u8, d: u64) -> Option<&StatReport> {
        self.rows.iter().find(|r| r.sign == Some(s) && r.digit == d).map(|r| &r.report)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_digit": self.max_digit,
            "rows": self.rows.iter().map(|r| {
                let mut v = r.report.to_json();
                v["symbol"] = json!(r.label());
                v
            }).collect::<Vec<_>>(),
        })
    }
}

fn digit_alphabet(c: &BigRational, cutoff: Option<u64>) -> Result<u64> {
    if c.is_zero() {
        return Ok(cutoff.unwrap_or(10).max(2));
    }
    use num_traits::ToPrimitive;
    c.recip().ceil().to_integer().to_u64().ok_or_else(|| Error::InvalidParameter("c too small".into()))
}

/// Empirical frequencies of digits and signed symbols. For `c = 0` digits
/// above `max_digit` (default 10) are lumped into a tail row.
pub fn digit_freq_mc(cfg: &SimConfig, max_digit: Option<u64>) -> Result<FrequencyTable> {
    let top = digit_alphabet(&cfg.c, max_digit)?;
    // per digit: [digit, (0,d), (1,d)], then the tail triple
    let width = 3 * (top as usize + 1);
    let idx = move |d: u64| if d <= top { 3 * (d as usize - 2) } else { 3 * (top as usize - 1) };
    let units = run_units(cfg, width, |s, acc| {
        let k = idx(s.symbol.d);
        acc[k] += 1.0;
        acc[k + 1 + s.symbol.s as usize] += 1.0;
    })?;

    let exact = if cfg.c.is_zero() || cfg.p <= 0.0 || cfg.p >= 1.0 {
        None
    } else {
        let dens = markov::stationary_density_real(&cfg.c, cfg.p)?;
        Some(markov::frequencies_from_density(&dens, &cfg.c, &cfg.p)?)
    };
    let mut rows = Vec::new();
    for d in (2..=top).chain(std::iter::once(0).filter(|_| cfg.c.is_zero())) {
        let k = if d == 0 { idx(top + 1) } else { idx(d) };
        let refs: [Option<f64>; 3] = if cfg.c.is_zero() {
            let mass = if d == 0 { 1.0 / top as f64 } else { 1.0 / (d as f64 * (d as f64 - 1.0)) };
            [Some(mass), Some(cfg.p * mass), Some((1.0 - cfg.p) * mass)]
        } else if let Some(f) = &exact {
            [f.digit(d), f.symbol(0, d), f.symbol(1, d)]
        } else {
            [None; 3]
        };
        for (off, sign) in [(0, None), (1, Some(0u8)), (2, Some(1u8))] {
            rows.push(FrequencyRow { sign, digit: d, report: report(&units, k + off, refs[off], cfg.seed) });
        }
    }
    Ok(FrequencyTable { max_digit: top, rows })
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// Mean over trajectories of `(1/n) ln|x - p_n/q_n|`, against `-Λ`.
    pub slope: StatReport,
    /// Per-trajectory slopes, in trajectory order.
    pub per_trajectory: Vec<f64>,
}

/// `(1/n) ln|x - p_n/q_n|` with `|x - p_n/q_n| = x_n / Π d_i(d_i-1)`,
/// accumulated in log space.
pub fn convergence_rate_mc(cfg: &SimConfig) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let lattice = Lattice::new(&cfg.c)?;
    let per = units_per_trajectory(cfg);
    let runs: Vec<(f64, Vec<Unit>)> = (0..cfg.n_trajectories)
        .into_par_iter()
        .map(|t| {
            let mut orbit = cfg.orbit(&lattice, t);
            let mut units = vec![Unit { n: 0, sums: vec![0.0] }; per];
            let mut log_den = 0.0;
            let mut x = orbit.x();
            for i in 0..cfg.n_steps {
                let s = orbit.step();
                log_den += s.log_slope();
                x = s.x();
                let u = &mut units[i * per / cfg.n_steps];
                u.sums[0] -= s.log_slope();
                u.n += 1;
            }
            ((x.ln() - log_den) / cfg.n_steps as f64, units)
        })
        .collect();
    let per_trajectory: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let reference = lyapunov_reference(&cfg.c, cfg.p).map(|l| -l);
    let k = per_trajectory.len() as f64;
    let estimate = per_trajectory.iter().sum::<f64>() / k;
    let std_error = if per_trajectory.len() >= 2 {
        let var = per_trajectory.iter().map(|v| (v - estimate).powi(2)).sum::<f64>() / (k - 1.0);
        (var / k).sqrt()
    } else {
        // a lone trajectory: the slope differs from -Λ's Birkhoff estimate
        // only by ln(x_n)/n, so its batch error carries over
        let units: Vec<Unit> = runs.into_iter().flat_map(|r| r.1).collect();
        summarize(&units, 0).1
    };
    let n_samples = (cfg.n_steps * cfg.n_trajectories) as u64;
    Ok(ConvergenceReport { slope: StatReport { estimate, std_error, n_samples, reference, seed: cfg.seed }, per_trajectory })
}

#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub block_len: usize,
    pub alphabet: Vec<SignDigit>,
    /// Count per block, blocks listed in lexicographic order of symbol index.
    pub counts: Vec<u64>,
    /// Blocks containing a symbol outside the alphabet (`c = 0` cutoff).
    pub other: u64,
    pub total: u64,
    pub missing: Vec<Vec<SignDigit>>,
    /// Length-one frequencies with standard errors over trajectories.
    pub singles: Vec<(SignDigit, StatReport)>,
}

impl CoverageReport {
    pub fn block(&self, index: usize) -> Vec<SignDigit> {
        let a = self.alphabet.len();
        let mut out = vec![self.alphabet[0]; self.block_len];
        let mut r = index;
        for slot in out.iter_mut().rev() {
            *slot = self.alphabet[r % a];
            r /= a;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let word = |b: &[SignDigit]| b.iter().map(|s| s.to_string()).collect::<String>();
        json!({
            "block_len": self.block_len,
            "alphabet": self.alphabet.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "total_blocks": self.total,
            "observed": self.counts.iter().filter(|&&c| c > 0).count(),
            "possible": self.counts.len(),
            "other": self.other,
            "missing": self.missing.iter().map(|b| word(b)).collect::<Vec<_>>(),
            "singles": self.singles.iter().map(|(s, r)| {
                let mut v = r.to_json();
                v["symbol"] = json!(s.to_string());
                v
            }).collect::<Vec<_>>(),
        })
    }
}

const MAX_BLOCKS: usize = 1 << 24;

/// Counts every block of `block_len` consecutive symbols within each
/// trajectory. The alphabet is `{0,1} × {2..⌈1/c⌉}` for `c > 0` and
/// `{0,1} × {2..cutoff}` for `c = 0`.
pub fn block_coverage(cfg: &SimConfig, block_len: usize, digit_cutoff: Option<u64>) -> Result<CoverageReport> {
    cfg.validate()?;
    if block_len == 0 {
        return Err(Error::InvalidParameter("block length must be positive".into()));
    }
    let top = digit_alphabet(&cfg.c, digit_cutoff.or(Some(3)))?;
    let alphabet: Vec<SignDigit> = (2..=top).flat_map(|d| [SignDigit::new(0, d), SignDigit::new(1, d)]).collect();
    let a = alphabet.len();
    let n_blocks = a.checked_pow(block_len as u32).filter(|&n| n <= MAX_BLOCKS).ok_or(Error::CapExceeded { what: "block table", cap: MAX_BLOCKS })?;
    let lattice = Lattice::new(&cfg.c)?;
    let code = move |s: SignDigit| if s.d <= top { Some(2 * (s.d as usize - 2) + s.s as usize) } else { None };

    let runs: Vec<(Vec<u64>, u64, u64, Vec<u64>)> = (0..cfg.n_trajectories)
        .into_par_iter()
        .map(|t| {
            let mut orbit = cfg.orbit(&lattice, t);
            let mut counts = vec![0u64; n_blocks];
            let mut singles = vec![0u64; a];
            let (mut other, mut total) = (0u64, 0u64);
            let mut window: Vec<Option<usize>> = Vec::with_capacity(block_len);
            for _ in 0..cfg.n_steps {
                let sym = code(orbit.step().symbol);
                if let Some(k) = sym {
                    singles[k] += 1;
                }
                if window.len() == block_len {
                    window.remove(0);
                }
                window.push(sym);
                if window.len() == block_len {
                    total += 1;
                    match window.iter().try_fold(0usize, |acc, s| s.map(|k| acc * a + k)) {
                        Some(idx) => counts[idx] += 1,
                        None => other += 1,
                    }
                }
            }
            (counts, other, total, singles)
        })
        .collect();

    let mut counts = vec![0u64; n_blocks];
    let (mut other, mut total) = (0, 0);
    let mut units: Vec<Unit> = Vec::new();
    for (c, o, t, s) in &runs {
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
        other += o;
        total += t;
        units.push(Unit { n: cfg.n_steps as u64, sums: s.iter().map(|&v| v as f64).collect() });
    }
    let exact = if cfg.c.is_zero() || cfg.p <= 0.0 || cfg.p >= 1.0 {
        None
    } else {
        let dens = markov::stationary_density_real(&cfg.c, cfg.p)?;
        Some(markov::frequencies_from_density(&dens, &cfg.c, &cfg.p)?)
    };
    let singles = alphabet
        .iter()
        .enumerate()
        .map(|(k, &sd)| {
            let reference = match &exact {
                Some(f) => f.symbol(sd.s, sd.d),
                None if cfg.c.is_zero() => {
                    let mass = 1.0 / (sd.d as f64 * (sd.d as f64 - 1.0));
                    Some(if sd.s == 0 { cfg.p * mass } else { (1.0 - cfg.p) * mass })
                }
                None => None,
            };
            let (estimate, std_error, n_samples) = summarize(&units, k);
            (sd, StatReport { estimate, std_error, n_samples, reference, seed: cfg.seed })
        })
        .collect();
    let mut report = CoverageReport { block_len, alphabet, counts, other, total, missing: Vec::new(), singles };
    report.missing = (0..n_blocks).filter(|&i| report.counts[i] == 0).map(|i| report.block(i)).collect();
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct HittingReport {
    /// `histogram[n]` trajectories first entered the switch region at step `n`.
    pub histogram: BTreeMap<usize, u64>,
    /// Trajectories still outside the switch region after `max_steps`.
    pub failures: u64,
    pub trajectories: u64,
    pub max_steps: usize,
    pub seed: u64,
}

impl HittingReport {
    pub fn to_json(&self) -> Value {
        json!({
            "trajectories": self.trajectories,
            "failures": self.failures,
            "max_steps": self.max_steps,
            "seed": self.seed,
            "histogram": self.histogram.iter().map(|(n, k)| json!({"n": n, "count": k})).collect::<Vec<_>>(),
        })
    }
}

/// First index `n` with the orbit inside the switch region. A fixed start is
/// iterated exactly in rational arithmetic; a uniform start uses the lattice.
/// Burn-in applies only when set explicitly.
pub fn switch_hitting_mc(cfg: &SimConfig, max_steps: usize) -> Result<HittingReport> {
    cfg.validate()?;
    let cfg = &cfg.clone().with_burn_in(cfg.burn_in.unwrap_or(0));
    if cfg.c.is_zero() || cfg.c > ratio(2, 5) {
        return Err(Error::InvalidParameter(format!("switch hitting needs 0 < c <= 2/5, got {}", fmt_rational(&cfg.c))));
    }
    let lattice = Lattice::new(&cfg.c)?;
    let times: Vec<Option<usize>> = (0..cfg.n_trajectories)
        .into_par_iter()
        .map(|t| -> Result<Option<usize>> {
            match &cfg.x0 {
                StartPoint::Fixed(x0) => {
                    use rand::Rng;
                    let mut rng = cfg.rng(t);
                    let mut x = x0.clone();
                    for n in 0..=max_steps {
                        if maps::switch_contains(&cfg.c, &x)? {
                            return Ok(Some(n));
                        }
                        let bit = if rng.gen_bool(cfg.p) { 0 } else { 1 };
                        x = maps::branch_map(bit, &cfg.c, &x)?;
                    }
                    Ok(None)
                }
                StartPoint::Uniform => {
                    let mut orbit = cfg.orbit(&lattice, t);
                    for n in 0..=max_steps {
                        if orbit.region() == Region::Switch {
                            return Ok(Some(n));
                        }
                        orbit.step();
                    }
                    Ok(None)
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    let mut failures = 0;
    for t in times {
        match t {
            Some(n) => *histogram.entry(n).or_insert(0) += 1,
            None => failures += 1,
        }
    }
    Ok(HittingReport { histogram, failures, trajectories: cfg.n_trajectories as u64, max_steps, seed: cfg.seed })
}

/// Per-trajectory summaries for the `simulate` command.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySummary {
    pub index: usize,
    pub lyapunov: f64,
    pub mean_theta: f64,
    pub switch_fraction: f64,
    pub final_x: f64,
}

pub fn simulate(cfg: &SimConfig) -> Result<Vec<TrajectorySummary>> {
    cfg.validate()?;
    let lattice = Lattice::new(&cfg.c)?;
    Ok((0..cfg.n_trajectories)
        .into_par_iter()
        .map(|t| {
            let mut orbit = cfg.orbit(&lattice, t);
            let (mut lyap, mut theta, mut switch) = (0.0, 0.0, 0u64);
            for _ in 0..cfg.n_steps {
                let s = orbit.step();
                lyap += s.log_slope();
                theta += s.theta();
                switch += (s.region == Region::Switch) as u64;
            }
            let n = cfg.n_steps as f64;
            TrajectorySummary { index: t, lyapunov: lyap / n, mean_theta: theta / n, switch_fraction: switch as f64 / n, final_x: orbit.x() }
        })
        .collect())
}

/// The first `n` steps of one trajectory, for tracing.
pub fn trace(cfg: &SimConfig, index: usize, n: usize) -> Result<Vec<super::sim::SimStep>> {
    cfg.validate()?;
    let lattice = Lattice::new(&cfg.c)?;
    let mut orbit = cfg.orbit(&lattice, index);
    Ok((0..n).map(|_| orbit.step()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn lyapunov_fixed_point() {
        let cfg = SimConfig::new(int(0), 1.0, 1000, 1, 1).with_x0(StartPoint::Fixed(int(1)));
        let r = lyapunov_mc(&cfg).unwrap();
        assert!((r.estimate - 2f64.ln()).abs() < 1e-15);
        let conv = convergence_rate_mc(&cfg).unwrap();
        assert!((conv.slope.estimate + 2f64.ln()).abs() < 1e-12);
        let th = theta_stats_mc(&cfg, &[0.5, 1.0]).unwrap();
        assert_eq!(th.mean.estimate, 1.0);
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let cfg = SimConfig::new(ratio(1, 3), 0.4, 2000, 8, 99);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| lyapunov_mc(&cfg).unwrap());
        let b = four.install(|| lyapunov_mc(&cfg).unwrap());
        assert_eq!(a, b);
        let a = one.install(|| simulate(&cfg).unwrap());
        let b = four.install(|| simulate(&cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn hitting_examples() {
        let cfg = SimConfig::new(ratio(1, 3), 0.5, 1, 50, 5).with_x0(StartPoint::Fixed(ratio(6, 7)));
        let h = switch_hitting_mc(&cfg, 100).unwrap();
        assert_eq!(h.histogram, BTreeMap::from([(1, 50)]));
        let cfg = SimConfig::new(ratio(1, 3), 0.5, 1, 10, 5).with_x0(StartPoint::Fixed(ratio(5, 7)));
        assert_eq!(switch_hitting_mc(&cfg, 100).unwrap().histogram, BTreeMap::from([(0, 10)]));
        assert!(switch_hitting_mc(&SimConfig::new(ratio(1, 2), 0.5, 1, 1, 1), 10).is_err());
    }

    #[test]
    fn small_frequency_run() {
        let cfg = SimConfig::new(int(0), 0.5, 20_000, 4, 3);
        let t = digit_freq_mc(&cfg, Some(4)).unwrap();
        let two = t.digit(2).unwrap();
        assert_eq!(two.reference, Some(0.5));
        assert!(two.z_score().unwrap() < 5.0);
        let total: f64 = t.rows.iter().filter(|r| r.sign.is_none()).map(|r| r.report.estimate).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coverage_block_indexing() {
        let cfg = SimConfig::new(ratio(1, 3), 0.5, 5000, 2, 8);
        let r = block_coverage(&cfg, 2, None).unwrap();
        assert_eq!(r.alphabet.len(), 4);
        assert_eq!(r.counts.len(), 16);
        assert_eq!(r.block(5), vec![SignDigit::new(1, 2), SignDigit::new(1, 2)]);
        assert_eq!(r.total, 2 * 4999);
        assert_eq!(r.counts.iter().sum::<u64>() + r.other, r.total);
    }
}
