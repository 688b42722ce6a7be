//! c-Lüroth expansions: iterating the skew product, the coding map `ψ`,
//! convergents and approximation coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::maps::{self, SignDigit};
use crate::omega::OmegaSource;
use crate::rational::fmt_rational;
use crate::scalar::{fmt_real, Scalar};

/// Everything produced by `n` steps of the skew product from `start`.
///
/// `orbit` holds `x_0 = start, x_1, ..., x_n`, one more entry than the
/// per-step vectors; `orbit[i + 1]` is the image after emitting `digits[i]`.
#[derive(Debug, Clone)]
pub struct ExpansionRecord<T> {
    pub start: T,
    pub digits: Vec<SignDigit>,
    pub orbit: Vec<T>,
    pub omega_used: Vec<u8>,
    pub convergents: Vec<(BigInt, BigInt)>,
    pub thetas: Vec<T>,
}

pub fn expand<T: Scalar>(source: &OmegaSource, x: &T, c: &T, n_steps: usize) -> Result<ExpansionRecord<T>> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter("n_steps must be at least 1".into()));
    }
    maps::check_c(c)?;
    if x.is_zero() {
        return Err(Error::domain("expansions start from a nonzero point"));
    }
    let mut stream = source.stream();
    let mut conv = ConvergentState::default();
    let mut rec = ExpansionRecord {
        start: x.clone(),
        digits: Vec::with_capacity(n_steps),
        orbit: Vec::with_capacity(n_steps + 1),
        omega_used: Vec::with_capacity(n_steps),
        convergents: Vec::with_capacity(n_steps),
        thetas: Vec::with_capacity(n_steps),
    };
    let mut cur = x.clone();
    rec.orbit.push(cur.clone());
    for _ in 0..n_steps {
        let j = stream.next_bit()?;
        let sd = maps::locate(c, &cur)?.sign_digit(j);
        let next = maps::apply_sign(&cur, sd);
        rec.thetas.push(maps::theta(&cur, sd));
        rec.convergents.push(conv.push(sd));
        rec.digits.push(sd);
        rec.omega_used.push(j);
        rec.orbit.push(next.clone());
        cur = next;
    }
    Ok(rec)
}

/// Running `(P_n, D_n, σ_n)`: exact partial sum, `Π d_i(d_i-1)` and the sign
/// parity, from which `(p_n, q_n)` follows.
#[derive(Debug, Clone)]
struct ConvergentState {
    p_scaled: BigInt, // D_n * P_n, always an integer
    denom: BigInt,    // D_n
    parity: u8,
}

impl Default for ConvergentState {
    fn default() -> Self {
        ConvergentState { p_scaled: BigInt::zero(), denom: BigInt::one(), parity: 0 }
    }
}

impl ConvergentState {
    fn push(&mut self, sd: SignDigit) -> (BigInt, BigInt) {
        // q_n * (term n) = (d - s)(d - 1 + s) / (d(d - 1)) = 1 for s ∈ {0, 1},
        // so p_n = (d - s) D_{n-1} P_{n-1} ± 1 is an integer.
        let q = BigInt::from(sd.d - sd.s as u64) * &self.denom;
        let base = BigInt::from(sd.d - sd.s as u64) * &self.p_scaled;
        let p = if self.parity == 0 { base + 1 } else { base - 1 };
        let slope = BigInt::from(sd.slope());
        let term = BigInt::from(sd.d - 1 + sd.s as u64);
        self.p_scaled = &self.p_scaled * &slope + if self.parity == 0 { term } else { -term };
        self.denom *= slope;
        self.parity ^= sd.s;
        (p, q)
    }
}

/// `(p_n, q_n)` of a nonempty prefix with `q_n = (d_n - s_n) Π_{i<n} d_i(d_i-1)`.
/// The pair is not reduced.
pub fn convergent(digits: &[SignDigit]) -> Result<(BigInt, BigInt)> {
    let mut st = ConvergentState::default();
    let mut last = None;
    for &sd in digits {
        last = Some(st.push(sd));
    }
    last.ok_or_else(|| Error::InvalidParameter("convergent of an empty prefix".into()))
}

/// `u -> a + b u` with `a = (d-1+s)/(d(d-1))`, `b = (-1)^s/(d(d-1))`: prepending
/// the symbol to an expansion with value `u`.
fn symbol_affine(sd: SignDigit) -> (BigRational, BigRational) {
    let slope = BigInt::from(sd.slope());
    let a = BigRational::new(BigInt::from(sd.d - 1 + sd.s as u64), slope.clone());
    let b = BigRational::new(if sd.s == 0 { BigInt::one() } else { -BigInt::one() }, slope);
    (a, b)
}

/// Composite affine map of a word, first symbol outermost.
fn word_affine(digits: &[SignDigit]) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::one();
    for &sd in digits {
        let (sa, sb) = symbol_affine(sd);
        a += &b * sa;
        b *= sb;
    }
    (a, b)
}

/// Exact partial sum of a finite prefix.
pub fn psi_prefix(digits: &[SignDigit]) -> BigRational {
    word_affine(digits).0
}

/// Exact value of `pre · period^∞`.
pub fn psi_periodic(pre: &[SignDigit], period: &[SignDigit]) -> Result<BigRational> {
    if period.is_empty() {
        return Err(Error::InvalidParameter("period must be nonempty".into()));
    }
    let (pa, pb) = word_affine(period);
    // |pb| <= 1/2, so the fixed point of the period map is well defined.
    let y = pa / (BigRational::one() - pb);
    let (a, b) = word_affine(pre);
    Ok(a + b * y)
}

pub const DEFAULT_PSI_TOLERANCE: f64 = 1.0 / (1u64 << 60) as f64;

#[derive(Debug, Clone, PartialEq)]
pub struct PsiLimit {
    /// Exact partial sum over the terms used.
    pub value: BigRational,
    /// `Π 1/(d_i(d_i-1))` over the terms used; bounds the remaining tail.
    pub tail_bound: BigRational,
    pub terms: usize,
    /// Whether the tail bound fell below the tolerance before the input ran out.
    pub converged: bool,
}

/// Sums terms until the rigorous tail bound drops below `tolerance`.
pub fn psi_limit<I>(digits: I, tolerance: f64) -> PsiLimit
where
    I: IntoIterator<Item = SignDigit>,
{
    let tol = BigRational::from_float(tolerance.max(f64::MIN_POSITIVE)).unwrap_or_else(BigRational::zero);
    let mut a = BigRational::zero();
    let mut b = BigRational::one();
    let mut terms = 0;
    for sd in digits {
        if b.abs() < tol {
            break;
        }
        let (sa, sb) = symbol_affine(sd);
        a += &b * sa;
        b *= sb;
        terms += 1;
    }
    let tail_bound = b.abs();
    PsiLimit { value: a, converged: tail_bound < tol, tail_bound, terms }
}

impl<T: Scalar> ExpansionRecord<T> {
    pub fn csv_header() -> Vec<String> {
        let mut h: Vec<String> = ["n", "omega_bit", "s", "d"].iter().map(|s| s.to_string()).collect();
        h.extend(T::csv_header("x"));
        h.extend(["p_n", "q_n", "theta_n"].iter().map(|s| s.to_string()));
        h
    }

    /// One row per step; `x` is the point after the step.
    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        (0..self.digits.len())
            .map(|i| {
                let sd = self.digits[i];
                let mut row = vec![(i + 1).to_string(), self.omega_used[i].to_string(), sd.s.to_string(), sd.d.to_string()];
                row.extend(self.orbit[i + 1].csv_fields());
                row.push(self.convergents[i].0.to_string());
                row.push(self.convergents[i].1.to_string());
                row.push(fmt_real(self.thetas[i].to_f64()));
                row
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "start": self.start.to_json(),
            "steps": (0..self.digits.len()).map(|i| json!({
                "n": i + 1,
                "omega_bit": self.omega_used[i],
                "s": self.digits[i].s,
                "d": self.digits[i].d,
                "x": self.orbit[i + 1].to_json(),
                "p_n": self.convergents[i].0.to_string(),
                "q_n": self.convergents[i].1.to_string(),
                "theta_n": self.thetas[i].to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Formats a word as `(s,d)(s,d)...`.
pub fn fmt_word(digits: &[SignDigit]) -> String {
    digits.iter().map(|sd| sd.to_string()).collect()
}

/// Parses `(0,2)(1,2)` or `(0,2),(1,2)` (whitespace tolerated).
pub fn parse_word(s: &str) -> Result<Vec<SignDigit>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|ch: char| ch == ',' || ch.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let end = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed symbol in {s:?}")))?;
        out.push(rest[..=end].parse()?);
        rest = &rest[end + 1..];
    }
    Ok(out)
}

/// Reconstructs the start point from expansion CSV rows: `x_0 = P_n ± x_n/D_n`
/// using the last row's exact `x`. Used for round-trip checks.
pub fn reconstruct(digits: &[SignDigit], x_n: &BigRational) -> BigRational {
    let (a, b) = word_affine(digits);
    a + b * x_n
}

pub fn fmt_pair(p: &BigInt, q: &BigInt) -> String {
    fmt_rational(&BigRational::new(p.clone(), q.clone()))
}
