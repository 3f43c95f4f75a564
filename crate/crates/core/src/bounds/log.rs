use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::interval::DyadicInterval;
use crate::error::{Error, Result};

/// Extra fractional bits carried internally before the final outward
/// rounding.
const GUARD_BITS: u32 = 32;

pub const DEFAULT_PRECISION_BITS: u32 = 64;
pub const MAX_PRECISION_BITS: u32 = 4096;

/// Certified natural logarithms at a fixed precision, with `ln 2` cached.
#[derive(Debug, Clone)]
pub struct LogContext {
    bits: u32,
    ln2: DyadicInterval,
}

impl Default for LogContext {
    fn default() -> Self {
        LogContext::new(DEFAULT_PRECISION_BITS).expect("default precision is valid")
    }
}

/// `[floor, ceil]` of `2^w * sum_{i>=0} y^(2i+1)/(2i+1)` for `y = a/b`,
/// `0 <= y < 1/3`, as internal fixed-point integers.
fn atanh_fixed(a: &BigInt, b: &BigInt, w: u32) -> (BigInt, BigInt) {
    debug_assert!(&(a * 3) <= b);
    let scale = BigInt::one() << w;
    let b2 = b * b;
    let a2 = a * a;
    let mut num = a.clone();
    let mut den = b.clone();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    if a.is_zero() {
        return (lo, hi);
    }
    let mut m: u64 = 1;
    loop {
        let t_den = &den * m;
        let (q, r) = (&num * &scale).div_rem(&t_den);
        lo += &q;
        hi += if r.is_zero() { q } else { q + 1 };
        num *= &a2;
        den *= &b2;
        m += 2;
        // Remaining terms are bounded by y^m / (m (1 - y^2)) <= 9 y^m / (8 m).
        let tail_num = &num * 9 * &scale;
        let tail_den = &den * 8 * m;
        if tail_num < tail_den {
            hi += 1;
            return (lo, hi);
        }
    }
}

impl LogContext {
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > MAX_PRECISION_BITS {
            return Err(Error::OutOfRange {
                what: "precision bits",
                value: bits as i64,
            });
        }
        let w = bits + GUARD_BITS;
        let (lo, hi) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
        let ln2 = DyadicInterval::new(lo * 2, hi * 2, w);
        Ok(LogContext { bits, ln2 })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The same computation at twice the precision, if allowed.
    pub fn refined(&self) -> Option<LogContext> {
        let bits = self.bits.checked_mul(2)?;
        LogContext::new(bits).ok()
    }

    pub fn ln2(&self) -> DyadicInterval {
        self.ln2.round_to(self.bits)
    }

    /// `ln n` for `n >= 1`; `ln 1` is exactly zero.
    ///
    /// Writes `n = 2^k (1 + y) / (1 - y)` with `y = (n - 2^k)/(n + 2^k)`,
    /// `0 <= y < 1/3`, so `ln n = k ln 2 + 2 atanh(y)`.
    pub fn ln(&self, n: &BigInt) -> Result<DyadicInterval> {
        if n < &BigInt::one() {
            return Err(Error::InvalidArgument(format!(
                "ln of {n} is not defined here"
            )));
        }
        let k = n.bits() - 1;
        let pow = BigInt::one() << k;
        let a = n - &pow;
        let b = n + &pow;
        let w = self.bits + GUARD_BITS;
        let (lo, hi) = atanh_fixed(&a, &b, w);
        let series = DyadicInterval::new(lo * 2, hi * 2, w);
        let k =
            i64::try_from(k).map_err(|_| Error::InvalidArgument("argument too large".into()))?;
        Ok(self.ln2.scale_int(k).add(&series).round_to(self.bits))
    }

    pub fn ln_u64(&self, n: u64) -> Result<DyadicInterval> {
        self.ln(&BigInt::from(n))
    }
}
