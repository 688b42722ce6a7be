//! Binary paths `ω` that drive the choice of branch map.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum OmegaSource {
    /// A finite word; reading past its end is an error.
    Word(Vec<u8>),
    /// `pre` followed by `period` repeated forever.
    EventuallyPeriodic { pre: Vec<u8>, period: Vec<u8> },
    /// I.i.d. bits with `P(0) = p`, reproducible from `seed`.
    Bernoulli { p: f64, seed: u64 },
}

impl OmegaSource {
    pub fn periodic(pre: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameter("period word must be nonempty".into()));
        }
        check_bits(&pre)?;
        check_bits(&period)?;
        Ok(OmegaSource::EventuallyPeriodic { pre, period })
    }

    pub fn bernoulli(p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("p = {p} is outside [0, 1]")));
        }
        Ok(OmegaSource::Bernoulli { p, seed })
    }

    pub fn stream(&self) -> OmegaStream<'_> {
        let rng = match self {
            OmegaSource::Bernoulli { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
            _ => None,
        };
        OmegaStream { source: self, pos: 0, rng }
    }
}

fn check_bits(bits: &[u8]) -> Result<()> {
    if bits.iter().any(|&b| b > 1) {
        return Err(Error::Parse("omega words contain only 0 and 1".into()));
    }
    Ok(())
}

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("unexpected {ch:?} in omega word"))),
        })
        .collect()
}

/// `"0110"` is a finite word; `"00(1)"` and `"(011)"` are eventually periodic.
impl FromStr for OmegaSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('(') {
            None => Ok(OmegaSource::Word(parse_bits(s)?)),
            Some((pre, rest)) => {
                let body = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed period in {s:?}")))?;
                OmegaSource::periodic(parse_bits(pre)?, parse_bits(body)?)
            }
        }
    }
}

impl fmt::Display for OmegaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |bits: &[u8]| bits.iter().map(|b| char::from(b'0' + b)).collect::<String>();
        match self {
            OmegaSource::Word(w) => write!(f, "{}", word(w)),
            OmegaSource::EventuallyPeriodic { pre, period } => write!(f, "{}({})", word(pre), word(period)),
            OmegaSource::Bernoulli { p, seed } => write!(f, "bernoulli(p={p}, seed={seed})"),
        }
    }
}

pub struct OmegaStream<'a> {
    source: &'a OmegaSource,
    pos: usize,
    rng: Option<ChaCha8Rng>,
}

impl OmegaStream<'_> {
    /// Next bit, or an exhaustion error for finite words.
    pub fn next_bit(&mut self) -> Result<u8> {
        let i = self.pos;
        let bit = match self.source {
            OmegaSource::Word(w) => *w.get(i).ok_or(Error::OmegaExhausted { needed: i + 1, available: w.len() })?,
            OmegaSource::EventuallyPeriodic { pre, period } => {
                if i < pre.len() {
                    pre[i]
                } else {
                    period[(i - pre.len()) % period.len()]
                }
            }
            OmegaSource::Bernoulli { p, .. } => {
                let rng = self.rng.as_mut().expect("bernoulli stream owns a generator");
                if rng.gen_bool(*p) {
                    0
                } else {
                    1
                }
            }
        };
        self.pos += 1;
        Ok(bit)
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn take(src: &OmegaSource, n: usize) -> Vec<u8> {
        let mut st = src.stream();
        (0..n).map(|_| st.next_bit().unwrap()).collect()
    }

    #[test]
    fn parses_words() {
        let w: OmegaSource = "(011)".parse().unwrap();
        assert_eq!(take(&w, 7), vec![0, 1, 1, 0, 1, 1, 0]);
        let w: OmegaSource = "00(1)".parse().unwrap();
        assert_eq!(take(&w, 5), vec![0, 0, 1, 1, 1]);
        assert_eq!(w.to_string(), "00(1)");
        assert!("0()".parse::<OmegaSource>().is_err());
        assert!("012".parse::<OmegaSource>().is_err());
    }

    #[test]
    fn finite_word_exhausts() {
        let w: OmegaSource = "01".parse().unwrap();
        let mut st = w.stream();
        st.next_bit().unwrap();
        st.next_bit().unwrap();
        assert_eq!(st.next_bit(), Err(Error::OmegaExhausted { needed: 3, available: 2 }));
    }

    #[test]
    fn bernoulli_is_reproducible() {
        let a = OmegaSource::bernoulli(0.3, 42).unwrap();
        assert_eq!(take(&a, 200), take(&a, 200));
        let zeros = take(&a, 100_000).iter().filter(|&&b| b == 0).count();
        assert!((zeros as f64 / 1e5 - 0.3).abs() < 0.01);
        assert_eq!(take(&OmegaSource::bernoulli(1.0, 1).unwrap(), 50), vec![0; 50]);
        assert!(OmegaSource::bernoulli(1.5, 1).is_err());
    }
}
