use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Closed interval `[lo / 2^bits, hi / 2^bits]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_shift(x: &BigInt, k: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << k))
}

fn ceil_shift(x: &BigInt, k: u32) -> BigInt {
    -floor_shift(&-x, k)
}

impl DyadicInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        assert!(lo <= hi, "empty interval");
        DyadicInterval { lo, hi, bits }
    }

    pub fn exact_int(v: impl Into<BigInt>, bits: u32) -> Self {
        let v: BigInt = v.into() << bits;
        DyadicInterval {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }

    pub fn zero(bits: u32) -> Self {
        Self::exact_int(0, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo() <= x && x <= &self.hi()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    /// Rounds outward to `bits` fractional bits (never gains precision).
    pub fn round_to(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => DyadicInterval {
                lo: &self.lo << (bits - self.bits),
                hi: &self.hi << (bits - self.bits),
                bits,
            },
            Ordering::Less => {
                let k = self.bits - bits;
                DyadicInterval {
                    lo: floor_shift(&self.lo, k),
                    hi: ceil_shift(&self.hi, k),
                    bits,
                }
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let bits = self.bits.max(other.bits);
        (self.round_to(bits), other.round_to(bits))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        DyadicInterval {
            lo: a.lo + b.lo,
            hi: a.hi + b.hi,
            bits: a.bits,
        }
    }

    pub fn add_int(&self, c: i64) -> Self {
        self.add(&Self::exact_int(c, self.bits))
    }

    /// Multiplication by an integer; the endpoints swap for negative `c`.
    pub fn scale_int(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        let (a, b) = (&self.lo * &c, &self.hi * &c);
        let (lo, hi) = if c.is_negative() { (b, a) } else { (a, b) };
        DyadicInterval {
            lo,
            hi,
            bits: self.bits,
        }
    }

    /// `self^e` for an interval with `lo >= 0`, rounded outward.
    pub fn pow_nonneg(&self, e: u32) -> Self {
        assert!(
            !self.lo.is_negative(),
            "pow_nonneg on an interval reaching below 0"
        );
        if e == 0 {
            return Self::exact_int(1, self.bits);
        }
        let shift = self.bits * (e - 1);
        DyadicInterval {
            lo: floor_shift(&num_traits::pow(self.lo.clone(), e as usize), shift),
            hi: ceil_shift(&num_traits::pow(self.hi.clone(), e as usize), shift),
            bits: self.bits,
        }
    }

    /// Certifies `x <= self`: true only if `x <= lo`.
    pub fn certainly_at_least(&self, x: &BigRational) -> bool {
        x <= &self.lo()
    }

    /// Certifies `self < x`: true only if `hi < x`.
    pub fn certainly_below(&self, x: &BigRational) -> bool {
        &self.hi() < x
    }

    /// Certifies `self > x`: true only if `lo > x`.
    pub fn certainly_above(&self, x: &BigRational) -> bool {
        &self.lo() > x
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (self.lo() + self.hi()) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo().to_f64().unwrap_or(f64::NAN);
        let hi = self.hi().to_f64().unwrap_or(f64::NAN);
        if self.is_exact() && self.lo().is_integer() {
            write!(f, "{}", self.lo().numer())
        } else {
            write!(f, "[{lo:.12}, {hi:.12}]")
        }
    }
}
