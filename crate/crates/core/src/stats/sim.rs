//! Seeded simulation of the random system on a dyadic lattice.
//!
//! Binary64 orbits of these maps collapse: every slope `d(d-1)` is even, so
//! each step shifts at least one bit out of the mantissa and after about
//! sixty steps a float orbit is a short dyadic that lands on a fixed point.
//! Instead the state is a cell `[m, m+1)·2^-62` of a fixed lattice, and the
//! point is taken uniform inside it. An affine branch of slope `k` maps the
//! cell onto `k` consecutive cells, so the next cell is `m' + R` with `R`
//! uniform in `[0, k)`: the bits lost to the shift are refilled with fresh
//! randomness. This is the exact law of the orbit of a point drawn uniformly
//! from the starting cell. Region tests use exact integer thresholds at the
//! cell's left end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::maps::{self, Region, SignDigit};

/// Lattice resolution in bits.
pub const LATTICE_BITS: u32 = 62;
/// The lattice index of `x = 1`.
pub const ONE: u128 = 1 << LATTICE_BITS;

const DEFAULT_BURN_IN: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum StartPoint {
    /// Uniform on `[c, 1]`.
    Uniform,
    Fixed(BigRational),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub c: BigRational,
    /// Probability of the branch `T_{0,c}` at each step.
    pub p: f64,
    pub n_steps: usize,
    pub n_trajectories: usize,
    pub seed: u64,
    pub x0: StartPoint,
    /// Steps discarded before collecting; `None` means 1000 for `c > 0` and
    /// none for `c = 0`, where Lebesgue measure is already stationary.
    pub burn_in: Option<usize>,
}

impl SimConfig {
    pub fn new(c: BigRational, p: f64, n_steps: usize, n_trajectories: usize, seed: u64) -> Self {
        SimConfig { c, p, n_steps, n_trajectories, seed, x0: StartPoint::Uniform, burn_in: None }
    }

    pub fn with_x0(mut self, x0: StartPoint) -> Self {
        self.x0 = x0;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = Some(burn_in);
        self
    }

    pub fn validate(&self) -> Result<()> {
        maps::check_c(&self.c)?;
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidParameter(format!("p = {} is outside [0, 1]", self.p)));
        }
        if self.n_steps == 0 || self.n_trajectories == 0 {
            return Err(Error::InvalidParameter("steps and trajectories must be positive".into()));
        }
        if let StartPoint::Fixed(x) = &self.x0 {
            if x.is_zero() {
                return Err(Error::domain("orbits start from a nonzero point"));
            }
            maps::locate(&self.c, x)?;
        }
        Ok(())
    }

    pub fn effective_burn_in(&self) -> usize {
        self.burn_in.unwrap_or(if self.c.is_zero() { 0 } else { DEFAULT_BURN_IN })
    }

    /// Generator of trajectory `index`: the master seed picks the key and the
    /// trajectory index picks the ChaCha stream.
    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    /// Trajectory `index` after burn-in.
    pub fn orbit<'a>(&self, lattice: &'a Lattice, index: usize) -> Orbit<'a> {
        let mut rng = self.rng(index);
        let m = match &self.x0 {
            StartPoint::Uniform => rng.gen_range(lattice.lo..ONE),
            StartPoint::Fixed(x) => lattice.index_of(x),
        };
        let mut orbit = Orbit { lattice, rng, p: self.p, m };
        for _ in 0..self.effective_burn_in() {
            orbit.step();
        }
        orbit
    }
}

fn ceil_scaled(x: &BigRational) -> u128 {
    (x * BigRational::from_integer(BigInt::from(ONE))).ceil().to_integer().to_u128().expect("lattice index fits")
}

fn floor_scaled(x: &BigRational) -> u128 {
    (x * BigRational::from_integer(BigInt::from(ONE))).floor().to_integer().to_u128().expect("lattice index fits")
}

/// Exact integer thresholds of the region comparator on the lattice.
#[derive(Debug, Clone)]
pub struct Lattice {
    c_zero: bool,
    /// Smallest admissible index, `⌈c·2^62⌉` (1 when `c = 0`).
    pub lo: u128,
    /// `⌈z_d^+ 2^62⌉`, indexed by digit.
    plus_ceil: Vec<u128>,
    /// `⌊z_{d-1}^- 2^62⌋`, indexed by digit.
    minus_floor: Vec<u128>,
}

impl Lattice {
    pub fn new(c: &BigRational) -> Result<Self> {
        maps::check_c(c)?;
        if c.is_zero() {
            return Ok(Lattice { c_zero: true, lo: 1, plus_ceil: Vec::new(), minus_floor: Vec::new() });
        }
        let top: u64 = c.recip().ceil().to_integer().to_u64().ok_or_else(|| Error::InvalidParameter("c too small".into()))?;
        let mut plus_ceil = vec![0; top as usize + 1];
        let mut minus_floor = vec![0; top as usize + 1];
        for d in 2..=top {
            let (_, plus, _) = maps::critical_points(c, d)?;
            let (_, _, minus) = maps::critical_points(c, d - 1)?;
            plus_ceil[d as usize] = ceil_scaled(&plus.expect("d >= 2"));
            minus_floor[d as usize] = floor_scaled(&minus);
        }
        Ok(Lattice { c_zero: false, lo: ceil_scaled(c).max(1), plus_ceil, minus_floor })
    }

    /// Index of the cell containing `x`; `x = 1` maps to [`ONE`].
    pub fn index_of(&self, x: &BigRational) -> u128 {
        if x.is_one() {
            return ONE;
        }
        floor_scaled(x).clamp(self.lo, ONE - 1)
    }

    /// Region and digit of the cell's left end.
    pub fn locate(&self, m: u128) -> (Region, u64) {
        if m >= ONE {
            return (Region::Fixed, 2);
        }
        let d = ONE.div_ceil(m);
        let region = if self.c_zero {
            if m * d == ONE {
                Region::ForcedAlt
            } else {
                Region::Switch
            }
        } else if m < self.plus_ceil[d as usize] {
            Region::ForcedAlt
        } else if m > self.minus_floor[d as usize] {
            Region::ForcedLuroth
        } else {
            Region::Switch
        };
        (region, d as u64)
    }

    /// Image cell under the branch with sign `s`, offset by `refill < d(d-1)`.
    pub fn apply(&self, m: u128, sd: SignDigit, refill: u128) -> u128 {
        if m >= ONE {
            return ONE;
        }
        let d = sd.d as u128;
        let slope = d * (d - 1);
        let next = if sd.s == 0 {
            (slope * m - (d - 1) * ONE) as i128 + refill as i128
        } else {
            (d * ONE - slope * m) as i128 - 1 - refill as i128
        };
        (next.max(0) as u128).clamp(self.lo, ONE - 1)
    }
}

/// One simulated step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimStep {
    pub bit: u8,
    /// Region of the point before the step.
    pub region: Region,
    pub symbol: SignDigit,
    /// Lattice index after the step.
    pub m: u128,
}

impl SimStep {
    pub fn x(&self) -> f64 {
        lattice_to_f64(self.m)
    }

    /// `ln(d(d-1))`.
    pub fn log_slope(&self) -> f64 {
        let d = self.symbol.d as f64;
        (d * (d - 1.0)).ln()
    }

    /// Approximation coefficient: `x_n/(d-1)` after a `T_L` step and
    /// `x_n/d` after a `T_A` step.
    pub fn theta(&self) -> f64 {
        let x = self.x();
        if self.symbol.s == 0 {
            x / (self.symbol.d - 1) as f64
        } else {
            x / self.symbol.d as f64
        }
    }
}

pub fn lattice_to_f64(m: u128) -> f64 {
    m as f64 / ONE as f64
}

pub struct Orbit<'a> {
    lattice: &'a Lattice,
    rng: ChaCha8Rng,
    p: f64,
    m: u128,
}

impl Orbit<'_> {
    pub fn index(&self) -> u128 {
        self.m
    }

    pub fn x(&self) -> f64 {
        lattice_to_f64(self.m)
    }

    pub fn region(&self) -> Region {
        self.lattice.locate(self.m).0
    }

    pub fn step(&mut self) -> SimStep {
        let bit = if self.rng.gen_bool(self.p) { 0 } else { 1 };
        let (region, d) = self.lattice.locate(self.m);
        let symbol = maps::Location { region, digit: d }.sign_digit(bit);
        let refill = if self.m >= ONE { 0 } else { self.rng.gen_range(0..symbol.slope()) };
        self.m = self.lattice.apply(self.m, symbol, refill);
        SimStep { bit, region, symbol, m: self.m }
    }
}
