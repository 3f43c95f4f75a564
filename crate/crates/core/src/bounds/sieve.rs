use crate::error::{Error, Result};

/// Sieve of Eratosthenes on `0..=limit`, with the primes `= 3 (mod 4)`
/// listed separately.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    composite: Vec<bool>,
    primes_3mod4: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Self {
        let len = limit as usize + 1;
        let mut composite = vec![false; len.max(2)];
        composite[0] = true;
        composite[1] = true;
        let mut i = 2usize;
        while i * i < len {
            if !composite[i] {
                for j in (i * i..len).step_by(i) {
                    composite[j] = true;
                }
            }
            i += 1;
        }
        composite.truncate(len);
        let primes_3mod4 = (3..len)
            .step_by(4)
            .filter(|&n| !composite[n])
            .map(|n| n as u64)
            .collect();
        PrimeSieve {
            limit,
            composite,
            primes_3mod4,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::OutOfRange {
                what: "sieve query above limit",
                value: n as i64,
            });
        }
        Ok(!self.composite[n as usize])
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(n, _)| n as u64)
    }

    /// Increasing.
    pub fn primes_3mod4(&self) -> &[u64] {
        &self.primes_3mod4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sieve() {
        let s = PrimeSieve::new(30);
        let ps: Vec<u64> = s.primes().collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(s.primes_3mod4(), &[3, 7, 11, 19, 23]);
        assert!(s.is_prime(29).unwrap());
        assert!(s.is_prime(31).is_err());
    }

    #[test]
    fn degenerate_limits() {
        assert_eq!(PrimeSieve::new(0).primes().count(), 0);
        assert_eq!(PrimeSieve::new(1).primes().count(), 0);
        assert_eq!(PrimeSieve::new(2).primes().collect::<Vec<_>>(), vec![2]);
    }
}
