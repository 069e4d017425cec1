//! Exact dyadic rationals `num / 2^shift`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A dyadic rational kept in lowest terms: `num` is odd unless `shift == 0`.
///
/// Arithmetic panics on `i128` overflow; the counterexample module stays
/// far below that range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    num: i128,
    shift: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, shift: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, shift: 0 };

    pub fn new(num: i128, shift: u32) -> Self {
        let mut d = Dyadic { num, shift };
        d.reduce();
        d
    }

    pub fn from_int(n: i128) -> Self {
        Dyadic { num: n, shift: 0 }
    }

    /// `2^{-k}`.
    pub fn recip_pow2(k: u32) -> Self {
        Dyadic { num: 1, shift: k }
    }

    pub fn numerator(self) -> i128 {
        self.num
    }

    pub fn shift(self) -> u32 {
        self.shift
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn abs(self) -> Self {
        Dyadic {
            num: self.num.abs(),
            shift: self.shift,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Exact whenever `num` fits in 53 bits.
    pub fn to_f64(self) -> f64 {
        self.num as f64 * (-(self.shift as f64)).exp2()
    }

    fn reduce(&mut self) {
        if self.num == 0 {
            self.shift = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.shift);
        self.num >>= tz;
        self.shift -= tz;
    }

    /// Numerator rescaled to denominator `2^shift` (`shift >= self.shift`).
    fn aligned(self, shift: u32) -> i128 {
        let by = shift - self.shift;
        self.num
            .checked_mul(1i128.checked_shl(by).filter(|m| *m > 0).expect("dyadic shift overflow"))
            .expect("dyadic overflow")
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let s = self.shift.max(rhs.shift);
        let num = self
            .aligned(s)
            .checked_add(rhs.aligned(s))
            .expect("dyadic overflow");
        Dyadic::new(num, s)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            shift: self.shift,
        }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Dyadic) -> Dyadic {
        let num = self.num.checked_mul(rhs.num).expect("dyadic overflow");
        Dyadic::new(num, self.shift + rhs.shift)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.shift.max(other.shift);
        self.aligned(s).cmp(&other.aligned(s))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n as i128)
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.shift)
        }
    }
}
