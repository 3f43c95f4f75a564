use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A named generator of the local Hecke algebra in degree `n`.
///
/// The derived ordering is the canonical one used for monomials:
/// `T(p) < T(p^2) < T_0(p^2) < T_1(p^2) < ... < T_n(p^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `T(p)`.
    Tp,
    /// `T(p^2)`, the sum of all `T_j(p^2)`. Kept as its own symbol so that
    /// relations can be stated the way they are usually written.
    Tp2,
    /// `T_j(p^2)` for `0 <= j <= n`.
    Tj(usize),
}

impl Generator {
    /// All generators available in degree `n`, in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = Generator> {
        [Generator::Tp, Generator::Tp2]
            .into_iter()
            .chain((0..=n).map(Generator::Tj))
    }

    pub fn validate(self, n: usize) -> Result<Self> {
        match self {
            Generator::Tj(j) if j > n => Err(Error::OutOfRange {
                what: "generator index j",
                value: j as i64,
            }),
            g => Ok(g),
        }
    }

    pub(crate) fn slot(self) -> usize {
        match self {
            Generator::Tp => 0,
            Generator::Tp2 => 1,
            Generator::Tj(j) => 2 + j,
        }
    }

    pub(crate) fn from_slot(slot: usize) -> Self {
        match slot {
            0 => Generator::Tp,
            1 => Generator::Tp2,
            s => Generator::Tj(s - 2),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Tp => f.write_str("T(p)"),
            Generator::Tp2 => f.write_str("T(p^2)"),
            Generator::Tj(j) => write!(f, "T_{j}(p^2)"),
        }
    }
}

/// Exponent vector indexed by generator slot.
///
/// Monomials sort in descending lexicographic order of their exponent
/// vectors, so iterating a `BTreeMap<Monomial, _>` yields the leading term
/// first and the constant term last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n + 3])
    }

    pub fn from_powers(n: usize, powers: &[(Generator, u32)]) -> Result<Self> {
        let mut m = Monomial::one(n);
        for &(g, e) in powers {
            m.0[g.validate(n)?.slot()] += e;
        }
        Ok(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.0.get(g.slot()).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Nonzero `(generator, exponent)` pairs in canonical order.
    pub fn powers(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (Generator::from_slot(s), e))
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn without(&self, g: Generator) -> Monomial {
        let mut m = self.clone();
        m.0[g.slot()] = 0;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.powers().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}
