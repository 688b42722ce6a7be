//! The Lüroth map, its alternating companion, and the two branch maps of the
//! random c-Lüroth system on `[c, 1]`.
//!
//! Every breakpoint decision goes through [`locate`], so the expansion code,
//! the orbit graphs and the Markov partitions agree on half-open conventions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One symbol `(s, d)` of a signed Lüroth expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignDigit {
    pub s: u8,
    pub d: u64,
}

impl SignDigit {
    pub fn new(s: u8, d: u64) -> Self {
        debug_assert!(s <= 1 && d >= 2);
        SignDigit { s, d }
    }

    /// `d(d-1)`, the slope of the branch that emits this symbol.
    pub fn slope(&self) -> u128 {
        self.d as u128 * (self.d as u128 - 1)
    }
}

impl fmt::Display for SignDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.d)
    }
}

impl FromStr for SignDigit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected (s,d), got {s:?}")))?;
        let sign: u8 = a.trim().parse().map_err(|_| Error::Parse(format!("bad sign in {s:?}")))?;
        let d: u64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad digit in {s:?}")))?;
        if sign > 1 || d < 2 {
            return Err(Error::Parse(format!("symbol out of range: {s:?}")));
        }
        Ok(SignDigit { s: sign, d })
    }
}

/// Where a point of `[c, 1]` sits relative to the switch region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `x = 1`, fixed by `T_L`.
    Fixed,
    /// `[z_d, z_d^+)`: both branches apply `T_A`.
    ForcedAlt,
    /// `(z_{d-1}^-, z_{d-1})`: both branches apply `T_L`.
    ForcedLuroth,
    /// `[z_d^+, z_{d-1}^-]`: the omega bit picks the branch.
    Switch,
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::Fixed => "fixed",
            Region::ForcedAlt => "forced-alt",
            Region::ForcedLuroth => "forced-luroth",
            Region::Switch => "switch",
        }
    }
}

/// Region and Lüroth digit of a nonzero point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub region: Region,
    pub digit: u64,
}

impl Location {
    /// Sign emitted when the omega bit is `j`. It always equals the branch
    /// actually applied: 0 for `T_L`, 1 for `T_A`.
    pub fn sign(&self, j: u8) -> u8 {
        match self.region {
            Region::Fixed | Region::ForcedLuroth => 0,
            Region::ForcedAlt => 1,
            Region::Switch => j,
        }
    }

    pub fn sign_digit(&self, j: u8) -> SignDigit {
        SignDigit { s: self.sign(j), d: self.digit }
    }
}

fn show<T: Scalar>(x: &T) -> String {
    match x.to_json() {
        serde_json::Value::String(s) => s,
        v => v.to_string(),
    }
}

pub fn check_c<T: Scalar>(c: &T) -> Result<()> {
    let half = T::reciprocal(2);
    if *c < T::zero() || *c > half {
        return Err(Error::InvalidParameter(format!("c = {} is outside [0, 1/2]", show(c))));
    }
    Ok(())
}

fn check_unit<T: Scalar>(x: &T) -> Result<()> {
    if *x < T::zero() || *x > T::one() {
        return Err(Error::domain(format!("{} is outside [0, 1]", show(x))));
    }
    Ok(())
}

fn check_domain<T: Scalar>(c: &T, x: &T) -> Result<()> {
    check_c(c)?;
    if *x < *c || *x > T::one() {
        return Err(Error::domain(format!("{} is outside [c, 1] for c = {}", show(x), show(c))));
    }
    Ok(())
}

fn digit_of<T: Scalar>(x: &T) -> Result<u64> {
    x.recip_ceil().ok_or_else(|| Error::domain(format!("digit of {} does not fit in 64 bits", show(x))))
}

fn clamp_unit<T: Scalar>(v: T) -> T {
    if T::EXACT {
        return v;
    }
    if v < T::zero() {
        T::zero()
    } else if v > T::one() {
        T::one()
    } else {
        v
    }
}

fn luroth_with_digit<T: Scalar>(x: &T, d: u64) -> T {
    let dm1 = T::from_u64(d - 1);
    clamp_unit(T::from_u64(d) * dm1.clone() * x.clone() - dm1)
}

/// `T_L(x) = d(d-1)x - (d-1)` with `d = ⌈1/x⌉`; fixes 0 and 1.
pub fn luroth_map<T: Scalar>(x: &T) -> Result<T> {
    check_unit(x)?;
    if x.is_zero() || x.is_one() {
        return Ok(x.clone());
    }
    Ok(luroth_with_digit(x, digit_of(x)?))
}

/// `T_A(x) = 1 - T_L(x)`.
pub fn alt_map<T: Scalar>(x: &T) -> Result<T> {
    Ok(T::one() - luroth_map(x)?)
}

/// Critical points `(z_n, z_n^+, z_n^-)`. `z_1^+` involves `z_0` and is
/// returned as `None`.
pub fn critical_points<T: Scalar>(c: &T, n: u64) -> Result<(T, Option<T>, T)> {
    check_c(c)?;
    if n == 0 {
        return Err(Error::InvalidParameter("critical points start at n = 1".into()));
    }
    let z = T::reciprocal(n);
    let plus = (n >= 2).then(|| z.clone() + c.clone() * z.clone() * T::reciprocal(n - 1));
    let minus = z.clone() - c.clone() * z.clone() * T::reciprocal(n + 1);
    Ok((z, plus, minus))
}

/// Classifies a nonzero `x ∈ [c, 1]`. The one comparator behind every
/// half-open interval convention in the crate.
pub fn locate<T: Scalar>(c: &T, x: &T) -> Result<Location> {
    check_domain(c, x)?;
    if x.is_zero() {
        return Err(Error::domain("x = 0 has no Lüroth digit"));
    }
    if x.is_one() {
        return Ok(Location { region: Region::Fixed, digit: 2 });
    }
    let d = digit_of(x)?;
    let z = T::reciprocal(d);
    let z_prev = T::reciprocal(d - 1);
    let plus = z.clone() + c.clone() * z.clone() * z_prev.clone();
    // x = z_d matters only for c = 0, where [z_d, z_d^+) collapses.
    let region = if *x == z || *x < plus {
        Region::ForcedAlt
    } else if *x > z_prev.clone() - c.clone() * z_prev * z {
        Region::ForcedLuroth
    } else {
        Region::Switch
    };
    Ok(Location { region, digit: d })
}

pub fn switch_contains<T: Scalar>(c: &T, x: &T) -> Result<bool> {
    if x.is_zero() {
        check_domain(c, x)?;
        return Ok(false);
    }
    Ok(locate(c, x)?.region == Region::Switch)
}

/// Applies the branch with sign `s` (0 = `T_L`, 1 = `T_A`) at a known digit.
pub fn apply_sign<T: Scalar>(x: &T, sd: SignDigit) -> T {
    if x.is_one() {
        return T::one();
    }
    let l = luroth_with_digit(x, sd.d);
    if sd.s == 0 {
        l
    } else {
        T::one() - l
    }
}

/// One step of `T_{j,c}`. Both branches send 0 to 1.
pub fn branch_map<T: Scalar>(j: u8, c: &T, x: &T) -> Result<T> {
    check_bit(j)?;
    if x.is_zero() {
        check_domain(c, x)?;
        return Ok(T::one());
    }
    let loc = locate(c, x)?;
    Ok(apply_sign(x, loc.sign_digit(j)))
}

pub fn sign_digit<T: Scalar>(j: u8, c: &T, x: &T) -> Result<SignDigit> {
    check_bit(j)?;
    Ok(locate(c, x)?.sign_digit(j))
}

/// One step of the induced system `K_c`: omega is consumed only inside the
/// switch region. Returns the image and whether the bit was used.
pub fn k_step<T: Scalar>(j: u8, c: &T, x: &T) -> Result<(T, bool)> {
    check_bit(j)?;
    if x.is_zero() {
        check_domain(c, x)?;
        return Ok((T::one(), false));
    }
    let loc = locate(c, x)?;
    Ok((apply_sign(x, loc.sign_digit(j)), loc.region == Region::Switch))
}

/// Approximation coefficient of the step `x_prev -> x_next` emitting `sd`:
/// `d x - 1` on a `T_L` step and `1 - (d-1) x` on a `T_A` step.
pub fn theta<T: Scalar>(x_prev: &T, sd: SignDigit) -> T {
    if sd.s == 0 {
        T::from_u64(sd.d) * x_prev.clone() - T::one()
    } else {
        T::one() - T::from_u64(sd.d - 1) * x_prev.clone()
    }
}

fn check_bit(j: u8) -> Result<()> {
    if j > 1 {
        return Err(Error::InvalidParameter(format!("branch bit must be 0 or 1, got {j}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn luroth_and_alt_examples() {
        assert_eq!(luroth_map(&int(1)).unwrap(), int(1));
        assert_eq!(luroth_map(&int(0)).unwrap(), int(0));
        assert_eq!(luroth_map(&q(3, 4)).unwrap(), q(1, 2));
        assert_eq!(alt_map(&int(0)).unwrap(), int(1));
        assert_eq!(alt_map(&q(3, 4)).unwrap(), q(1, 2));
        assert_eq!(alt_map(&q(1, 2)).unwrap(), int(1));
        assert!(luroth_map(&q(5, 4)).is_err());
        assert!(alt_map(&q(-1, 4)).is_err());
    }

    #[test]
    fn critical_point_examples() {
        let (_, plus, minus) = critical_points(&q(1, 4), 2).unwrap();
        assert_eq!(plus.unwrap(), q(5, 8));
        assert_eq!(minus, q(11, 24));
        let (_, plus, _) = critical_points(&q(1, 3), 2).unwrap();
        assert_eq!(plus.unwrap(), q(2, 3));
        let (_, _, minus3) = critical_points(&q(1, 4), 3).unwrap();
        assert_eq!(minus3, q(5, 16));
        for n in 2..8 {
            let (z, plus, minus) = critical_points(&int(0), n).unwrap();
            assert_eq!(plus.unwrap(), z);
            assert_eq!(minus, z);
        }
        assert!(critical_points(&int(0), 1).unwrap().1.is_none());
    }

    #[test]
    fn switch_membership() {
        assert!(switch_contains(&q(1, 3), &q(5, 7)).unwrap());
        assert!(!switch_contains(&q(1, 3), &q(6, 7)).unwrap());
        assert!(!switch_contains(&int(0), &q(1, 2)).unwrap());
        assert!(switch_contains(&int(0), &q(3, 5)).unwrap());
        assert!(switch_contains(&q(1, 2), &q(3, 4)).unwrap());
        assert!(!switch_contains(&q(1, 2), &int(1)).unwrap());
        assert!(switch_contains(&q(1, 3), &q(1, 5)).is_err());
    }

    #[test]
    fn branch_examples() {
        assert_eq!(branch_map(0, &q(1, 3), &q(5, 7)).unwrap(), q(3, 7));
        assert_eq!(branch_map(1, &q(1, 3), &q(5, 7)).unwrap(), q(4, 7));
        assert_eq!(branch_map(0, &q(1, 4), &q(1, 4)).unwrap(), int(1));
        assert_eq!(branch_map(0, &int(0), &int(0)).unwrap(), int(1));
        for n in 2..10 {
            for j in 0..2 {
                assert_eq!(branch_map(j, &int(0), &q(1, n)).unwrap(), int(1));
            }
        }
        assert!(branch_map(0, &q(1, 3), &q(1, 4)).is_err());
    }

    #[test]
    fn sign_digit_examples() {
        assert_eq!(sign_digit(0, &q(1, 3), &q(6, 7)).unwrap(), SignDigit::new(0, 2));
        assert_eq!(sign_digit(1, &q(1, 3), &q(5, 7)).unwrap(), SignDigit::new(1, 2));
        for c in [int(0), q(1, 4), q(1, 2)] {
            for j in 0..2 {
                assert_eq!(sign_digit(j, &c, &int(1)).unwrap(), SignDigit::new(0, 2));
            }
        }
        assert!(sign_digit(0, &int(0), &int(0)).is_err());
    }

    #[test]
    fn k_step_examples() {
        assert_eq!(k_step(1, &q(1, 3), &q(5, 7)).unwrap(), (q(4, 7), true));
        for j in 0..2 {
            assert_eq!(k_step(j, &q(1, 3), &q(6, 7)).unwrap(), (q(5, 7), false));
            assert_eq!(k_step(j, &q(1, 4), &int(1)).unwrap(), (int(1), false));
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&q(6, 7), SignDigit::new(0, 2)), q(5, 7));
        assert_eq!(theta(&q(6, 7), SignDigit::new(1, 2)), q(1, 7));
        assert_eq!(theta(&q(1, 2), SignDigit::new(0, 2)), int(0));
    }

    #[test]
    fn binary64_agrees_with_exact_off_breakpoints() {
        let c = 1.0 / 3.0;
        assert!((branch_map(0, &c, &(5.0 / 7.0)).unwrap() - 3.0 / 7.0).abs() < 1e-15);
        assert!((branch_map(1, &c, &(5.0 / 7.0)).unwrap() - 4.0 / 7.0).abs() < 1e-15);
        assert_eq!(sign_digit(0, &c, &(6.0 / 7.0)).unwrap(), SignDigit::new(0, 2));
    }

    #[test]
    fn sign_digit_parses() {
        assert_eq!("(1,3)".parse::<SignDigit>().unwrap(), SignDigit::new(1, 3));
        assert_eq!(SignDigit::new(0, 2).to_string(), "(0,2)");
        assert!("(2,3)".parse::<SignDigit>().is_err());
        assert!("(0,1)".parse::<SignDigit>().is_err());
    }
}
