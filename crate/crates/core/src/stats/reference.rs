//! Closed-form reference values for the `c = 0` system.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `ζ(2) = π²/6`.
pub const ZETA2: f64 = PI * PI / 6.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Partial sum of `Σ_{d≥2} log(d(d-1))/(d(d-1))` up to `D` with a rigorous
/// enclosure of the full series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEnclosure {
    pub truncation: u64,
    pub partial: f64,
    pub lower: f64,
    pub upper: f64,
}

impl SeriesEnclosure {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    /// Distance from `v` to the interval, relative to the interval's lower end.
    pub fn relative_gap(&self, v: f64) -> f64 {
        if self.contains(v) {
            0.0
        } else {
            (v - self.lower).abs().min((v - self.upper).abs()) / self.lower
        }
    }
}

/// The Lyapunov exponent of the `c = 0` system.
///
/// Tail bounds: with `g(t) = 2 ln t/(t-1)²`, which dominates each term and
/// decreases, the tail is at most `∫_D^∞ g`. With `h(t) = 2 ln(t-1)/t²`,
/// which each term dominates and which decreases for `t ≥ 4`, it is at least
/// `∫_{D+1}^∞ h` once `D ≥ 3`.
pub fn luroth_series_lyapunov(truncation: u64) -> Result<SeriesEnclosure> {
    if truncation < 2 {
        return Err(Error::InvalidParameter("truncation must be at least 2".into()));
    }
    // summing small terms first keeps the rounding error near one ulp per term
    let partial: f64 = (2..=truncation)
        .rev()
        .map(|d| {
            let s = d as f64 * (d as f64 - 1.0);
            s.ln() / s
        })
        .sum();
    let dd = truncation as f64;
    let tail_upper = 2.0 * dd.ln() / (dd - 1.0) + 2.0 * (dd / (dd - 1.0)).ln();
    let tail_lower = if truncation >= 3 { 2.0 * dd.ln() / (dd + 1.0) + 2.0 * ((dd + 1.0) / dd).ln() } else { 0.0 };
    let slack = 4.0 * f64::EPSILON * (truncation as f64).sqrt() * partial;
    Ok(SeriesEnclosure { truncation, partial, lower: partial + tail_lower - slack, upper: partial + tail_upper + slack })
}

/// `H_n`, summed directly for small `n` and by its asymptotic series otherwise.
pub fn harmonic(n: u64) -> f64 {
    if n <= 64 {
        return (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    }
    let x = n as f64;
    let x2 = x * x;
    let x4 = x2 * x2;
    x.ln() + EULER_GAMMA + 1.0 / (2.0 * x) - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x4) - 1.0 / (252.0 * x4 * x2)
}

fn check_z(z: f64) -> Result<u64> {
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::domain(format!("z = {z} is outside (0, 1]")));
    }
    let n = (1.0 / z).floor();
    if n >= 1.8e19 {
        return Err(Error::domain(format!("z = {z} is too small")));
    }
    Ok(n as u64)
}

/// `F_L(z) = Σ_{k=2}^{N+1} z/k + 1/(N+1)` with `N = ⌊1/z⌋`.
pub fn f_l(z: f64) -> Result<f64> {
    let n = check_z(z)?;
    Ok(z * (harmonic(n + 1) - 1.0) + 1.0 / (n + 1) as f64)
}

/// `F_A(z) = Σ_{k=2}^{N} z/(k-1) + 1/N` with `N = ⌊1/z⌋`.
pub fn f_a(z: f64) -> Result<f64> {
    let n = check_z(z)?;
    Ok(z * harmonic(n - 1) + 1.0 / n as f64)
}

/// `p F_L + (1-p) F_A`, the limiting distribution of `θ_n` for `c = 0`.
pub fn f_theta(z: f64, p: f64) -> Result<f64> {
    Ok(p * f_l(z)? + (1.0 - p) * f_a(z)?)
}

/// `M_p = p(2ζ(2) - 3)/2 + (2 - ζ(2))/2`, the mean of `θ_n` for `c = 0`.
pub fn m_p(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} is outside [0, 1]")));
    }
    Ok(p * (2.0 * ZETA2 - 3.0) / 2.0 + (2.0 - ZETA2) / 2.0)
}

pub fn m_l() -> f64 {
    ZETA2 / 2.0 - 0.5
}

pub fn m_a() -> f64 {
    1.0 - ZETA2 / 2.0
}

/// `∫_0^1 (1 - F(z)) dz` by two-point Gauss-Legendre on each piece
/// `(1/(N+1), 1/N]`, `N < pieces`, where `F` is affine; the remaining
/// `(0, 1/pieces]` is taken at its midpoint.
pub fn mean_from_cdf(f: impl Fn(f64) -> Result<f64>, pieces: u64) -> Result<f64> {
    let node = 0.5 / 3f64.sqrt();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut add = |v: f64| {
        // Neumaier summation
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    };
    for n in 1..pieces {
        let (a, b) = (1.0 / (n + 1) as f64, 1.0 / n as f64);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let w = 1.0 / (n as f64 * (n + 1) as f64);
        let v = 1.0 - 0.5 * (f(mid - 2.0 * half * node)? + f(mid + 2.0 * half * node)?);
        add(w * v);
    }
    let eps = 1.0 / pieces as f64;
    add(eps * (1.0 - f(0.5 * eps)?));
    Ok(sum + comp)
}
