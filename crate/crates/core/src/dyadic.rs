//! Exact dyadic rationals.
//!
//! Every quantity the engine reports — state-sum weights, Fourier
//! coefficients, correlation probabilities — is a rational number whose
//! denominator is a power of two. [`Dyadic`] stores such values exactly as
//! `num / 2^exp` with `num` odd (or zero), so equality is structural and no
//! floating point enters any computation. [`DyadicProbability`] is the
//! restriction to `[0, 1]` used for reported probabilities.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A signed rational `num / 2^exp` in canonical form: `num` is odd, or the
/// value is zero and stored as `0 / 2^0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    /// Builds `num / 2^exp`, reducing to canonical form.
    pub fn new(num: i128, exp: u32) -> Dyadic {
        if num == 0 {
            return Dyadic::ZERO;
        }
        let strip = (num.trailing_zeros()).min(exp);
        Dyadic {
            num: num >> strip,
            exp: exp - strip,
        }
    }

    pub fn from_integer(n: i128) -> Dyadic {
        Dyadic::new(n, 0)
    }

    /// `1 / 2^k`.
    pub fn half_pow(k: u32) -> Dyadic {
        Dyadic { num: 1, exp: k }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    /// Base-2 logarithm of the denominator.
    pub fn log2_denominator(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Divides by `2^k` (always exact for dyadics).
    pub fn div_pow2(&self, k: u32) -> Dyadic {
        Dyadic::new(self.num, self.exp + k)
    }

    /// Numerators rescaled to the common denominator `2^max(exp)`.
    fn aligned(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let exp = a.exp.max(b.exp);
        let na = a
            .num
            .checked_shl(exp - a.exp)
            .expect("dyadic exponent spread too large");
        let nb = b
            .num
            .checked_shl(exp - b.exp)
            .expect("dyadic exponent spread too large");
        (na, nb, exp)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 * (-(self.exp as f64)).exp2()
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (na, nb, exp) = Dyadic::aligned(self, rhs);
        Dyadic::new(na + nb, exp)
    }
}

impl AddAssign for Dyadic {
    fn add_assign(&mut self, rhs: Dyadic) {
        *self = *self + rhs;
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        let (na, nb, exp) = Dyadic::aligned(self, rhs);
        Dyadic::new(na - nb, exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    // denominators 2^e multiply, so the exponents add
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Dyadic) -> Dyadic {
        // integers (exp = 0) may carry even numerators, so re-canonicalize
        Dyadic::new(
            self.num.checked_mul(rhs.num).expect("dyadic overflow"),
            self.exp + rhs.exp,
        )
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let (na, nb, _) = Dyadic::aligned(*self, *other);
        na.cmp(&nb)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// An exact probability: an odd (or zero) numerator over a power-of-two
/// denominator, guaranteed to lie in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicProbability {
    numerator: u64,
    log2_denominator: u32,
}

impl DyadicProbability {
    pub const ZERO: DyadicProbability = DyadicProbability {
        numerator: 0,
        log2_denominator: 0,
    };
    pub const ONE: DyadicProbability = DyadicProbability {
        numerator: 1,
        log2_denominator: 0,
    };

    /// `1 / 2^k`.
    pub fn half_pow(k: u32) -> DyadicProbability {
        DyadicProbability {
            numerator: 1,
            log2_denominator: k,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_denominator
    }

    pub fn to_f64(&self) -> f64 {
        Dyadic::from(*self).to_f64()
    }

    /// Canonical textual form `num/2^e`, e.g. `1/2^3`; `1` and `0` keep an
    /// explicit `/2^0` so the format is uniform.
    pub fn to_exact_string(&self) -> String {
        format!("{}/2^{}", self.numerator, self.log2_denominator)
    }
}

impl TryFrom<Dyadic> for DyadicProbability {
    type Error = Error;

    fn try_from(value: Dyadic) -> Result<DyadicProbability> {
        if value < Dyadic::ZERO || value > Dyadic::ONE {
            return Err(Error::NotAProbability {
                value: value.to_string(),
            });
        }
        Ok(DyadicProbability {
            numerator: value.numerator() as u64,
            log2_denominator: value.log2_denominator(),
        })
    }
}

impl From<DyadicProbability> for Dyadic {
    fn from(p: DyadicProbability) -> Dyadic {
        Dyadic {
            num: p.numerator as i128,
            exp: p.log2_denominator,
        }
    }
}

impl Ord for DyadicProbability {
    fn cmp(&self, other: &DyadicProbability) -> Ordering {
        Dyadic::from(*self).cmp(&Dyadic::from(*other))
    }
}

impl PartialOrd for DyadicProbability {
    fn partial_cmp(&self, other: &DyadicProbability) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}
