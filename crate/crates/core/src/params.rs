use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::maps;
use crate::rational;

/// Parameters `(c, p)` of the random system: `c ∈ [0, 1/2]` and `p`, the
/// probability of choosing the branch `T_{0,c}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub c: BigRational,
    pub p: BigRational,
}

impl Params {
    pub fn new(c: BigRational, p: BigRational) -> Result<Self> {
        maps::check_c(&c)?;
        if p < BigRational::zero() || p > BigRational::one() {
            return Err(Error::InvalidParameter(format!("p = {} is outside [0, 1]", rational::fmt_rational(&p))));
        }
        Ok(Params { c, p })
    }

    /// Statistical quantities need both branches to occur.
    pub fn require_open_p(&self) -> Result<()> {
        if self.p.is_zero() || self.p.is_one() {
            return Err(Error::InvalidParameter("p must lie strictly between 0 and 1".into()));
        }
        Ok(())
    }

    pub fn p_f64(&self) -> f64 {
        rational::to_f64(&self.p)
    }
}
