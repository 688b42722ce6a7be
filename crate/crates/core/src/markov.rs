//! Markov partitions for rational `c`, the transfer operator on piecewise
//! constant densities, and the exact statistics derived from its fixed point.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::maps::{self, Location, SignDigit};
use crate::params::Params;
use crate::rational::{fmt_rational, to_f64};
use crate::scalar::Scalar;

pub const DEFAULT_POINT_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// `c`, `1` or a critical point `z_n, z_n^+, z_{n-1}^-`.
    Critical,
    /// On the random orbit of `c` or `1 - c` only.
    Orbit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovPartition {
    pub c: BigRational,
    pub breakpoints: Vec<BigRational>,
    pub kinds: Vec<PointKind>,
}

fn require_positive_c(c: &BigRational) -> Result<()> {
    maps::check_c(c)?;
    if c.is_zero() {
        return Err(Error::InvalidParameter("Markov partitions need c > 0".into()));
    }
    Ok(())
}

/// `{c, 1}` together with every `z_n, z_n^+, z_{n-1}^-` inside `[c, 1]`.
pub fn critical_set(c: &BigRational) -> Result<BTreeSet<BigRational>> {
    require_positive_c(c)?;
    let one = BigRational::one();
    let mut pts: BTreeSet<BigRational> = [c.clone(), one.clone()].into_iter().collect();
    let top = c.recip().ceil().to_integer();
    let top: u64 = top.try_into().map_err(|_| Error::InvalidParameter("c too small".into()))?;
    for n in 2..=top + 1 {
        let (z, plus, _) = maps::critical_points(c, n)?;
        let (_, _, minus_prev) = maps::critical_points(c, n - 1)?;
        for v in [Some(z), plus, Some(minus_prev)].into_iter().flatten() {
            if v >= *c && v <= one {
                pts.insert(v);
            }
        }
    }
    Ok(pts)
}

/// Exact closure of the random orbits of `c` and `1 - c`.
pub fn orbit_set(c: &BigRational, cap: usize) -> Result<BTreeSet<BigRational>> {
    require_positive_c(c)?;
    let mut seen: HashSet<BigRational> = HashSet::new();
    let mut queue = VecDeque::new();
    for start in [c.clone(), BigRational::one() - c] {
        if seen.insert(start.clone()) {
            queue.push_back(start);
        }
    }
    while let Some(x) = queue.pop_front() {
        for j in 0..2 {
            let y = maps::branch_map(j, c, &x)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { what: "Markov orbit set", cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Breakpoints of the Markov partition for rational `c ∈ (0, 1/2]`, with the
/// Markov property checked cell by cell.
pub fn markov_points(c: &BigRational, cap: usize) -> Result<MarkovPartition> {
    let crit = critical_set(c)?;
    let orbit = orbit_set(c, cap)?;
    let all: BTreeSet<&BigRational> = crit.iter().chain(orbit.iter()).collect();
    let breakpoints: Vec<BigRational> = all.into_iter().cloned().collect();
    let kinds = breakpoints
        .iter()
        .map(|x| if crit.contains(x) { PointKind::Critical } else { PointKind::Orbit })
        .collect();
    let part = MarkovPartition { c: c.clone(), breakpoints, kinds };
    part.cell_images()?;
    Ok(part)
}

/// How one cell is mapped by each branch: its digit, the symbol emitted
/// under each omega bit, and the image as a range of cell indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CellImage {
    pub location: Location,
    pub symbols: [SignDigit; 2],
    /// Half-open index range of the cells covered by the image.
    pub images: [(usize, usize); 2],
}

/// `x -> alpha + beta x` for the branch emitting `sd`.
fn branch_affine(sd: SignDigit) -> (BigRational, BigRational) {
    let slope = BigRational::from_integer(BigInt::from(sd.slope()));
    if sd.s == 0 {
        (BigRational::from_integer(BigInt::from(sd.d - 1)) * -BigRational::one(), slope)
    } else {
        (BigRational::from_integer(BigInt::from(sd.d)), -slope)
    }
}

fn image_interval(sd: SignDigit, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    let (alpha, beta) = branch_affine(sd);
    let fa = &alpha + &beta * a;
    let fb = &alpha + &beta * b;
    if fa <= fb {
        (fa, fb)
    } else {
        (fb, fa)
    }
}

/// Region of the open interval `(a, b)`, assumed free of critical points.
fn piece_location(c: &BigRational, a: &BigRational, b: &BigRational) -> Result<Location> {
    let mid = (a + b) / BigRational::from_integer(2.into());
    maps::locate(c, &mid)
}

impl MarkovPartition {
    pub fn n_cells(&self) -> usize {
        self.breakpoints.len().saturating_sub(1)
    }

    pub fn cell(&self, i: usize) -> (&BigRational, &BigRational) {
        (&self.breakpoints[i], &self.breakpoints[i + 1])
    }

    pub fn cell_len(&self, i: usize) -> BigRational {
        &self.breakpoints[i + 1] - &self.breakpoints[i]
    }

    /// Verifies that every cell image is a union of cells.
    pub fn cell_images(&self) -> Result<Vec<CellImage>> {
        (0..self.n_cells())
            .map(|i| {
                let (a, b) = self.cell(i);
                let location = piece_location(&self.c, a, b)?;
                let symbols = [location.sign_digit(0), location.sign_digit(1)];
                let mut images = [(0, 0); 2];
                for j in 0..2 {
                    let (lo, hi) = image_interval(symbols[j], a, b);
                    let lo_i = self.breakpoints.binary_search(&lo);
                    let hi_i = self.breakpoints.binary_search(&hi);
                    match (lo_i, hi_i) {
                        (Ok(l), Ok(h)) if l < h => images[j] = (l, h),
                        _ => return Err(Error::NonMarkov { cell: i, branch: j as u8 }),
                    }
                }
                Ok(CellImage { location, symbols, images })
            })
            .collect()
    }
}

/// Column `I`, row `J`: mass sent from cell `I` into cell `J` per unit density.
#[derive(Debug, Clone)]
pub struct TransferMatrix<T> {
    pub partition: MarkovPartition,
    pub entries: Vec<Vec<T>>,
}

pub fn transfer_matrix<T: Scalar>(partition: &MarkovPartition, p: &T) -> Result<TransferMatrix<T>> {
    let n = partition.n_cells();
    let weights = [p.clone(), T::one() - p.clone()];
    let mut entries = vec![vec![T::zero(); n]; n];
    for (i, img) in partition.cell_images()?.into_iter().enumerate() {
        for j in 0..2 {
            if weights[j].is_zero() {
                continue;
            }
            let w = weights[j].clone() / T::from_u64(img.symbols[j].slope() as u64);
            let (lo, hi) = img.images[j];
            for row in entries.iter_mut().take(hi).skip(lo) {
                row[i] = row[i].clone() + w.clone();
            }
        }
    }
    Ok(TransferMatrix { partition: partition.clone(), entries })
}

/// Truncated transfer matrix for `c = 0`, a diagnostic: cells are the digit
/// intervals `[1/d, 1/(d-1))` for `d = 2..=max_digit`, and a last cell
/// `(0, 1/max_digit)` lumps the remaining digits. Every branch maps its digit
/// cell onto `(0, 1]`, so each entry equals the source cell's length.
pub fn truncated_c0_matrix(max_digit: u64, p: &BigRational) -> Result<Vec<Vec<BigRational>>> {
    if max_digit < 2 {
        return Err(Error::InvalidParameter("max_digit must be at least 2".into()));
    }
    let mut lens: Vec<BigRational> = (2..=max_digit).map(|d| BigRational::new(1.into(), BigInt::from(d * (d - 1)))).collect();
    lens.push(BigRational::new(1.into(), BigInt::from(max_digit)));
    let one_minus = BigRational::one() - p;
    let col: Vec<BigRational> = lens.iter().map(|l| p * l + &one_minus * l).collect();
    Ok(vec![col; lens.len()])
}

/// A density that is constant on each `[b_i, b_{i+1})`; the last cell is closed.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstantDensity<T> {
    pub breakpoints: Vec<BigRational>,
    pub values: Vec<T>,
    pub merged: bool,
}

impl<T: Scalar> PiecewiseConstantDensity<T> {
    pub fn eval(&self, x: &BigRational) -> Option<T> {
        let n = self.values.len();
        if n == 0 || *x < self.breakpoints[0] || *x > self.breakpoints[n] {
            return None;
        }
        let i = match self.breakpoints.binary_search(x) {
            Ok(i) => i.min(n - 1),
            Err(i) => i - 1,
        };
        Some(self.values[i].clone())
    }

    /// `μ([a, b])`.
    pub fn measure(&self, a: &BigRational, b: &BigRational) -> T {
        let mut total = T::zero();
        for (i, v) in self.values.iter().enumerate() {
            let lo = if a > &self.breakpoints[i] { a } else { &self.breakpoints[i] };
            let hi = if b < &self.breakpoints[i + 1] { b } else { &self.breakpoints[i + 1] };
            if lo < hi {
                total = total + v.clone() * T::from_rational(&(hi - lo));
            }
        }
        total
    }

    pub fn total_mass(&self) -> T {
        let n = self.values.len();
        self.measure(&self.breakpoints[0], &self.breakpoints[n])
    }

    /// Drops breakpoints between equal adjacent values.
    pub fn merged(&self) -> Self {
        self.merged_within(0.0)
    }

    /// Like [`merged`](Self::merged), treating binary64 values within `tol`
    /// of each other as equal.
    pub fn merged_within(&self, tol: f64) -> Self {
        let same = |a: &T, b: &T| if T::EXACT { a == b } else { (a.to_f64() - b.to_f64()).abs() <= tol };
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut vals: Vec<T> = Vec::new();
        for (i, v) in self.values.iter().enumerate() {
            if vals.last().is_some_and(|l| same(l, v)) {
                *bps.last_mut().unwrap() = self.breakpoints[i + 1].clone();
            } else {
                vals.push(v.clone());
                bps.push(self.breakpoints[i + 1].clone());
            }
        }
        PiecewiseConstantDensity { breakpoints: bps, values: vals, merged: true }
    }
}

fn solve_fixed_point<T: Scalar>(partition: &MarkovPartition, p: &T, tol: f64) -> Result<Vec<T>> {
    let m = transfer_matrix(partition, p)?;
    let n = partition.n_cells();
    let mut a = m.entries;
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i].clone() - T::one();
    }
    let mut ns = linalg::nullspace(a, tol);
    if ns.len() != 1 {
        return Err(Error::NonUniqueFixedPoint { dimension: ns.len() });
    }
    let v = ns.pop().unwrap();
    let mass = (0..n).fold(T::zero(), |acc, i| acc + v[i].clone() * T::from_rational(&partition.cell_len(i)));
    Ok(v.into_iter().map(|x| x / mass.clone()).collect())
}

/// The exact stationary density for rational `c ∈ (0, 1/2]` and rational
/// `p ∈ (0, 1)`, on the full Markov partition (call `merged` for the coarse form).
pub fn stationary_density(params: &Params) -> Result<PiecewiseConstantDensity<BigRational>> {
    params.require_open_p()?;
    let part = markov_points(&params.c, DEFAULT_POINT_CAP)?;
    let values = solve_fixed_point(&part, &params.p, 0.0)?;
    Ok(PiecewiseConstantDensity { breakpoints: part.breakpoints, values, merged: false })
}

/// Largest residual tolerated by [`stationary_density_real`].
pub const REAL_RESIDUAL_TOL: f64 = 1e-12;

/// Binary64 solve for a real `p`; fails if the stationarity residual on
/// any cell exceeds `1e-12`.
pub fn stationary_density_real(c: &BigRational, p: f64) -> Result<PiecewiseConstantDensity<f64>> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter("p must lie strictly between 0 and 1".into()));
    }
    let part = markov_points(c, DEFAULT_POINT_CAP)?;
    let values = solve_fixed_point(&part, &p, 1e-13)?;
    let dens = PiecewiseConstantDensity { breakpoints: part.breakpoints, values, merged: false };
    let worst = stationarity_residual(&dens, c, &p)?.into_iter().fold(0.0f64, |m, r| m.max(r.abs()));
    if worst > REAL_RESIDUAL_TOL {
        return Err(Error::Numerical(format!("stationarity residual {worst:e} exceeds {REAL_RESIDUAL_TOL:e}")));
    }
    Ok(dens)
}

/// `μ(J) - p μ(T_0^{-1} J) - (1-p) μ(T_1^{-1} J)` for every cell `J` of the
/// density, computed by intersecting exact preimages with each piece. This
/// does not use the transfer matrix or assume the Markov property.
pub fn stationarity_residual<T: Scalar>(density: &PiecewiseConstantDensity<T>, c: &BigRational, p: &T) -> Result<Vec<T>> {
    let crit = critical_set(c)?;
    let mut pieces: BTreeSet<BigRational> = density.breakpoints.iter().cloned().collect();
    pieces.extend(crit);
    let pieces: Vec<BigRational> = pieces.into_iter().collect();
    let weights = [p.clone(), T::one() - p.clone()];

    struct Piece {
        lo: BigRational,
        hi: BigRational,
        value_index: usize,
        symbols: [SignDigit; 2],
    }
    let mut src = Vec::with_capacity(pieces.len());
    for w in pieces.windows(2) {
        let loc = piece_location(c, &w[0], &w[1])?;
        let mid = (&w[0] + &w[1]) / BigRational::from_integer(2.into());
        let value_index = match density.breakpoints.binary_search(&mid) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        src.push(Piece { lo: w[0].clone(), hi: w[1].clone(), value_index, symbols: [loc.sign_digit(0), loc.sign_digit(1)] });
    }

    let mut out = Vec::with_capacity(density.values.len());
    for (k, w) in density.breakpoints.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        let mut pre = T::zero();
        for piece in &src {
            for j in 0..2 {
                if weights[j].is_zero() {
                    continue;
                }
                let (alpha, beta) = branch_affine(piece.symbols[j]);
                let mut u = (a - &alpha) / &beta;
                let mut v = (b - &alpha) / &beta;
                if u > v {
                    std::mem::swap(&mut u, &mut v);
                }
                let lo = if u > piece.lo { u } else { piece.lo.clone() };
                let hi = if v < piece.hi { v } else { piece.hi.clone() };
                if lo < hi {
                    let len = T::from_rational(&(hi - lo));
                    pre = pre + weights[j].clone() * density.values[piece.value_index].clone() * len;
                }
            }
        }
        let own = density.values[k].clone() * T::from_rational(&(b - a));
        out.push(own - pre);
    }
    Ok(out)
}

/// Limiting frequencies of digits `d` and symbols `(s, d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitFrequencies<T> {
    pub digits: Vec<(u64, T)>,
    pub symbols: Vec<(SignDigit, T)>,
}

impl<T: Scalar> DigitFrequencies<T> {
    pub fn digit(&self, d: u64) -> Option<T> {
        self.digits.iter().find(|(k, _)| *k == d).map(|(_, v)| v.clone())
    }

    pub fn symbol(&self, s: u8, d: u64) -> Option<T> {
        self.symbols.iter().find(|(k, _)| *k == SignDigit::new(s, d)).map(|(_, v)| v.clone())
    }
}

fn clip(a: BigRational, b: BigRational, c: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let a = if a < *c { c.clone() } else { a };
    let b = if b > one { one } else { b };
    (a, b)
}

/// Digit and symbol frequencies from a stationary density on `[c, 1]`.
pub fn frequencies_from_density<T: Scalar>(density: &PiecewiseConstantDensity<T>, c: &BigRational, p: &T) -> Result<DigitFrequencies<T>> {
    require_positive_c(c)?;
    let top: u64 = c.recip().ceil().to_integer().try_into().map_err(|_| Error::InvalidParameter("c too small".into()))?;
    let mu = |a: BigRational, b: BigRational| {
        let (a, b) = clip(a, b, c);
        if a < b {
            density.measure(&a, &b)
        } else {
            T::zero()
        }
    };
    let q = T::one() - p.clone();
    let mut digits = Vec::new();
    let mut symbols = Vec::new();
    for d in 2..=top {
        let (z, plus, _) = maps::critical_points(c, d)?;
        let (z_prev, _, minus_prev) = maps::critical_points(c, d - 1)?;
        let plus = plus.expect("d >= 2");
        let switch = mu(plus.clone(), minus_prev.clone());
        let luroth_only = mu(minus_prev, z_prev.clone());
        let alt_only = mu(z.clone(), plus);
        digits.push((d, mu(z, z_prev)));
        symbols.push((SignDigit::new(0, d), p.clone() * switch.clone() + luroth_only));
        symbols.push((SignDigit::new(1, d), q.clone() * switch + alt_only));
    }
    Ok(DigitFrequencies { digits, symbols })
}

pub fn digit_frequencies(params: &Params) -> Result<DigitFrequencies<BigRational>> {
    let dens = stationary_density(params)?;
    frequencies_from_density(&dens, &params.c, &params.p)
}

/// `Σ_d π_d log(d(d-1))` from exact frequencies.
pub fn lyapunov_from_frequencies<T: Scalar>(freq: &DigitFrequencies<T>) -> f64 {
    freq.digits.iter().map(|(d, pi)| pi.to_f64() * ((*d as f64) * (*d as f64 - 1.0)).ln()).sum()
}

pub fn lyapunov_exact(params: &Params) -> Result<f64> {
    Ok(lyapunov_from_frequencies(&digit_frequencies(params)?))
}

pub fn lyapunov_real(c: &BigRational, p: f64) -> Result<f64> {
    let dens = stationary_density_real(c, p)?;
    Ok(lyapunov_from_frequencies(&frequencies_from_density(&dens, c, &p)?))
}

pub fn fmt_density(d: &PiecewiseConstantDensity<BigRational>) -> String {
    d.values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("[{}, {}): {}", fmt_rational(&d.breakpoints[i]), fmt_rational(&d.breakpoints[i + 1]), fmt_rational(v)))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Largest absolute residual, as binary64.
pub fn max_abs<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
}

pub fn is_exact_zero(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn all_positive(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_positive())
}

pub fn density_f64(d: &PiecewiseConstantDensity<BigRational>) -> Vec<f64> {
    d.values.iter().map(to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn set(v: &[(i64, i64)]) -> Vec<BigRational> {
        let s: BTreeSet<BigRational> = v.iter().map(|&(a, b)| ratio(a, b)).collect();
        s.into_iter().collect()
    }

    fn params(c: BigRational, p: BigRational) -> Params {
        Params::new(c, p).unwrap()
    }

    #[test]
    fn partitions() {
        let quarter = markov_points(&ratio(1, 4), DEFAULT_POINT_CAP).unwrap();
        assert_eq!(
            quarter.breakpoints,
            set(&[(1, 4), (13, 48), (5, 16), (1, 3), (3, 8), (11, 24), (1, 2), (5, 8), (3, 4), (7, 8), (1, 1)])
        );
        let half = markov_points(&ratio(1, 2), DEFAULT_POINT_CAP).unwrap();
        assert_eq!(half.breakpoints, set(&[(1, 2), (3, 4), (1, 1)]));
        let third = markov_points(&ratio(1, 3), DEFAULT_POINT_CAP).unwrap();
        assert_eq!(third.breakpoints, set(&[(1, 3), (7, 18), (4, 9), (1, 2), (2, 3), (5, 6), (1, 1)]));
        let eighth = markov_points(&ratio(1, 8), DEFAULT_POINT_CAP).unwrap();
        let mut want = critical_set(&ratio(1, 8)).unwrap();
        want.extend([ratio(3, 4), ratio(7, 8)]);
        assert_eq!(eighth.breakpoints, want.into_iter().collect::<Vec<_>>());
        assert!(markov_points(&int(0), 10).is_err());
    }

    #[test]
    fn transfer_matrix_examples() {
        let third = markov_points(&ratio(1, 3), DEFAULT_POINT_CAP).unwrap();
        let imgs = third.cell_images().unwrap();
        let k = third.breakpoints.iter().position(|x| *x == ratio(2, 3)).unwrap();
        let lo = third.breakpoints.iter().position(|x| *x == ratio(1, 3)).unwrap();
        let hi = third.breakpoints.iter().position(|x| *x == ratio(2, 3)).unwrap();
        assert_eq!(imgs[k].images[0], (lo, hi));

        let half = markov_points(&ratio(1, 2), DEFAULT_POINT_CAP).unwrap();
        let p = ratio(2, 7);
        let m = transfer_matrix(&half, &p).unwrap();
        let allowed = [int(0), &p / int(2), (int(1) - &p) / int(2), ratio(1, 2)];
        for row in &m.entries {
            for v in row {
                assert!(allowed.contains(v), "{v}");
            }
        }

        let c0 = truncated_c0_matrix(6, &ratio(1, 3)).unwrap();
        for row in &c0 {
            assert_eq!(row.iter().fold(int(0), |a, b| a + b), int(1));
        }
    }

    #[test]
    fn mass_is_conserved() {
        let part = markov_points(&ratio(2, 7), DEFAULT_POINT_CAP).unwrap();
        let m = transfer_matrix(&part, &ratio(3, 5)).unwrap();
        for i in 0..part.n_cells() {
            let col: BigRational = (0..part.n_cells()).map(|j| &m.entries[j][i] * part.cell_len(j)).sum();
            assert_eq!(col, part.cell_len(i));
        }
    }

    #[test]
    fn densities() {
        for p in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
            let d = stationary_density(&params(ratio(1, 3), p)).unwrap().merged();
            assert_eq!(d.breakpoints, vec![ratio(1, 3), ratio(2, 3), int(1)]);
            assert_eq!(d.values, vec![ratio(9, 8), ratio(15, 8)]);
        }
        let p = ratio(3, 10);
        let d = stationary_density(&params(ratio(1, 4), p.clone())).unwrap().merged();
        let den = int(2) * &p + int(3);
        assert_eq!(d.breakpoints, vec![ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)]);
        assert_eq!(d.values, vec![int(4) / &den, (int(4) * &p + int(2)) / &den, int(2)]);
        assert_eq!(d.eval(&ratio(1, 2)), Some(ratio(8, 9)));
        assert_eq!(d.eval(&int(1)), Some(int(2)));
        assert_eq!(d.eval(&ratio(1, 5)), None);
    }

    #[test]
    fn residual_is_exactly_zero() {
        for c in [ratio(1, 3), ratio(2, 5), ratio(3, 10), ratio(1, 7)] {
            let pr = params(c.clone(), ratio(1, 2));
            let d = stationary_density(&pr).unwrap();
            assert!(is_exact_zero(&stationarity_residual(&d, &c, &pr.p).unwrap()));
            assert!(is_exact_zero(&stationarity_residual(&d.merged(), &c, &pr.p).unwrap()));
            assert!(all_positive(&d.values));
            assert_eq!(d.total_mass(), int(1));
        }
        // a wrong density has a nonzero residual
        let bad = PiecewiseConstantDensity {
            breakpoints: vec![ratio(1, 3), ratio(2, 3), int(1)],
            values: vec![ratio(3, 2), ratio(3, 2)],
            merged: false,
        };
        assert!(!is_exact_zero(&stationarity_residual(&bad, &ratio(1, 3), &ratio(1, 2)).unwrap()));
    }

    #[test]
    fn frequencies_third() {
        for p in [ratio(1, 5), ratio(1, 2), ratio(4, 5)] {
            let f = digit_frequencies(&params(ratio(1, 3), p.clone())).unwrap();
            assert_eq!(f.digit(2), Some(ratio(13, 16)));
            assert_eq!(f.digit(3), Some(ratio(3, 16)));
            assert_eq!(f.symbol(0, 2), Some((int(5) + int(5) * &p) / int(16)));
            assert_eq!(f.symbol(1, 2), Some((int(8) - int(5) * &p) / int(16)));
            assert_eq!(f.symbol(1, 3), Some((int(2) - &p) / int(16)));
            let total: BigRational = f.digits.iter().map(|(_, v)| v.clone()).sum();
            assert_eq!(total, int(1));
        }
    }

    #[test]
    fn quarter_frequencies() {
        for p in [ratio(1, 10), ratio(3, 10), ratio(2, 3)] {
            let q = int(2) * &p + int(3);
            let f = digit_frequencies(&params(ratio(1, 4), p.clone())).unwrap();
            assert_eq!(f.digit(2), Some((int(2) * &p + int(2)) / &q));
            assert_eq!(f.digit(3), Some(int(2) / (int(3) * &q)));
            assert_eq!(f.digit(4), Some(int(1) / (int(3) * &q)));
        }
    }

    #[test]
    fn eighth_frequencies_and_lyapunov() {
        let p = ratio(1, 3);
        let q = int(2) * &p * &p + int(3) * &p + int(5);
        let f = digit_frequencies(&params(ratio(1, 8), p.clone())).unwrap();
        let want = [
            (2, (int(2) * &p * &p + int(2) * &p + int(3)) / &q),
            (3, int(2) * (&p + int(1)) / (int(3) * &q)),
            (4, (&p + int(1)) / (int(3) * &q)),
            (5, int(2) / (int(5) * &q)),
            (6, int(4) / (int(15) * &q)),
            // μ([1/7, 1/6)) = (8/q)(1/42); a printed 2/21 would leave the total short of 1
            (7, int(4) / (int(21) * &q)),
            (8, int(1) / (int(7) * &q)),
        ];
        let total: BigRational = want.iter().map(|(_, v)| v.clone()).sum();
        assert_eq!(total, int(1));
        for (d, v) in want {
            assert_eq!(f.digit(d), Some(v), "d={d}");
        }

        // the symbolic form, and the rounded polynomial it is summarized by
        let symbolic = |p: f64| {
            let q = 2.0 * p * p + 3.0 * p + 5.0;
            let t = |k: f64| k.ln() / k;
            (8.0 * (t(56.0) + t(42.0) + t(30.0) + t(20.0)) + (4.0 * p + 4.0) * (t(12.0) + t(6.0)) + (2.0 * p * p + 2.0 * p + 3.0) * 2f64.ln()) / q
        };
        let rounded = |p: f64| (1.38628 * p * p + 3.40908 * p + 7.49448) / (2.0 * p * p + 3.0 * p + 5.0);
        for p in [ratio(1, 3), ratio(1, 2), ratio(9, 10)] {
            let pf = to_f64(&p);
            let l = lyapunov_exact(&params(ratio(1, 8), p)).unwrap();
            assert!((l - symbolic(pf)).abs() < 1e-12);
            assert!((l - rounded(pf)).abs() < 1e-5);
        }
        let near_zero = lyapunov_exact(&params(ratio(1, 8), ratio(1, 1_000_000))).unwrap();
        assert!((near_zero - 1.49890).abs() < 1e-5, "{near_zero}");
        assert!((symbolic(0.0) - 1.49890).abs() < 1e-5);
    }

    #[test]
    fn lyapunov_values() {
        let l = lyapunov_exact(&params(ratio(1, 3), ratio(2, 5))).unwrap();
        assert!((l - (13.0 / 16.0 * 2f64.ln() + 3.0 / 16.0 * 6f64.ln())).abs() < 1e-14);
        let lr = lyapunov_real(&ratio(1, 4), 0.2).unwrap();
        let want = (0.2 * 64f64.ln() + 27648f64.ln()) / (6.0 * 0.2 + 9.0);
        assert!((lr - want).abs() < 1e-12);
        let d = stationary_density_real(&ratio(1, 3), 0.37).unwrap().merged_within(1e-12);
        assert_eq!(d.values.len(), 2);
    }
}
