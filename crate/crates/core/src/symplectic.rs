//! Integer matrices for the symplectic group and its similitudes.
//!
//! Membership is always decided over `Z`: every double-coset representative
//! that matters here is an integer diagonal matrix.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::prime::Prime;

/// Square integer matrix of even dimension `2n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::Structural(format!(
                "matrix dimension must be even and positive, got {dim}"
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Structural(format!(
                "matrix is not square: row of length {} in a {dim}x{dim} matrix",
                bad.len()
            )));
        }
        Ok(IntMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::diagonal((0..dim).map(|_| BigInt::one()).collect())
    }

    pub fn diagonal(diag: Vec<BigInt>) -> Result<Self> {
        let dim = diag.len();
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![BigInt::zero(); dim];
                row[i] = d;
                row
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension, `n` for a `2n x 2n` matrix.
    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let entries = (0..d * d).map(|k| self.get(k % d, k / d).clone()).collect();
        IntMatrix { dim: d, entries }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DegreeMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.get(k, j);
                }
            }
        }
        Ok(IntMatrix { dim: d, entries })
    }

    /// `c` if `self == c * other` entrywise for some integer `c`.
    fn ratio_to(&self, other: &Self) -> Option<BigInt> {
        let mut ratio: Option<BigInt> = None;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if b.is_zero() {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            if (a % b) != BigInt::zero() {
                return None;
            }
            let c = a / b;
            match &ratio {
                Some(r) if *r != c => return None,
                Some(_) => {}
                None => ratio = Some(c),
            }
        }
        ratio
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on dimension mismatch.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Display for IntMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, line)| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<BigInt>()
                            .map_err(|_| Error::parse(i + 1, format!("not an integer: `{tok}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(rows)
    }
}

/// `J = [[0, I_n], [-I_n, 0]]`.
pub fn standard_j(n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "degree n",
            value: 0,
        });
    }
    let d = 2 * n;
    let rows = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i < n && j == i + n {
                        BigInt::one()
                    } else if i >= n && j + n == i {
                        -BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows)
}

/// The similitude factor `eta` with `g J g^t = eta J`, if `g` is a
/// symplectic similitude (`eta` nonzero).
pub fn similitude(g: &IntMatrix) -> Option<BigInt> {
    let j = standard_j(g.genus()).ok()?;
    let form = &(g * &j) * &g.transpose();
    form.ratio_to(&j).filter(|eta| !eta.is_zero())
}

pub fn is_symplectic(g: &IntMatrix) -> bool {
    similitude(g).is_some_and(|eta| eta.is_one())
}

/// Whether `g^t J g = p^r J`.
pub fn in_o(g: &IntMatrix, p: Prime, r: u32) -> bool {
    let Ok(j) = standard_j(g.genus()) else {
        return false;
    };
    let lhs = &(&g.transpose() * &j) * g;
    lhs == j.scale(&p.pow(r))
}

/// Double coset whose diagonal representative is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetKind {
    /// `T(p)`: `diag(1^n, p^n)`.
    Tp,
    /// `T_j(p^2)`: `diag(1^{n-j}, p^j, (p^2)^{n-j}, p^j)`.
    Tj(usize),
}

impl CosetKind {
    /// The exponent `r` with representative in `O_n(p^r)`.
    pub fn level_exponent(self) -> u32 {
        match self {
            CosetKind::Tp => 1,
            CosetKind::Tj(_) => 2,
        }
    }
}

pub fn coset_representative(kind: CosetKind, n: usize, p: Prime) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "degree n",
            value: 0,
        });
    }
    let one = BigInt::one();
    let p1 = p.pow(1);
    let p2 = p.pow(2);
    let diag: Vec<BigInt> = match kind {
        CosetKind::Tp => std::iter::repeat_n(one, n)
            .chain(std::iter::repeat_n(p1, n))
            .collect(),
        CosetKind::Tj(j) if j > n => {
            return Err(Error::OutOfRange {
                what: "coset index j",
                value: j as i64,
            })
        }
        CosetKind::Tj(j) => std::iter::repeat_n(one, n - j)
            .chain(std::iter::repeat_n(p1.clone(), j))
            .chain(std::iter::repeat_n(p2, n - j))
            .chain(std::iter::repeat_n(p1, j))
            .collect(),
    };
    let g = IntMatrix::diagonal(diag)?;
    if !in_o(&g, p, kind.level_exponent()) {
        return Err(Error::Internal(format!(
            "representative for {kind:?} (n={n}, p={p}) is not in O_n(p^{})",
            kind.level_exponent()
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn j_in_degree_one_and_two() {
        assert_eq!(standard_j(1).unwrap().to_string(), "0 1\n-1 0");
        assert_eq!(
            standard_j(2).unwrap().to_string(),
            "0 0 1 0\n0 0 0 1\n-1 0 0 0\n0 -1 0 0"
        );
        let j = standard_j(3).unwrap();
        assert_eq!(&j * &j.transpose(), IntMatrix::identity(6).unwrap());
    }

    #[test]
    fn similitude_of_identity_and_tp_representative() {
        assert_eq!(
            similitude(&IntMatrix::identity(4).unwrap()),
            Some(BigInt::one())
        );
        let g = coset_representative(CosetKind::Tp, 3, p(5)).unwrap();
        assert_eq!(similitude(&g), Some(BigInt::from(5)));
    }

    #[test]
    fn non_similitude_is_detected() {
        // g J g^t scales the two symplectic planes by 1 and 2.
        let g = IntMatrix::diagonal(ints(&[1, 2, 1, 1])).unwrap();
        let j = standard_j(2).unwrap();
        let form = &(&g * &j) * &g.transpose();
        assert!(form.ratio_to(&j).is_none());
        assert_eq!(similitude(&g), None);
        // Singular matrices are never similitudes.
        assert_eq!(
            similitude(&IntMatrix::from_rows(vec![ints(&[1, 1]), ints(&[1, 1])]).unwrap()),
            None
        );
    }

    #[test]
    fn diag_1_2_in_degree_one_is_a_similitude() {
        let g = IntMatrix::diagonal(ints(&[1, 2])).unwrap();
        assert_eq!(similitude(&g), Some(BigInt::from(2)));
    }

    #[test]
    fn o_membership_examples() {
        let tp = coset_representative(CosetKind::Tp, 2, p(3)).unwrap();
        assert!(in_o(&tp, p(3), 1));
        assert!(!in_o(&tp, p(3), 2));
        let t1 = coset_representative(CosetKind::Tj(1), 2, p(3)).unwrap();
        assert!(in_o(&t1, p(3), 2));
        assert!(!in_o(&IntMatrix::identity(4).unwrap(), p(3), 1));
    }

    #[test]
    fn documented_representatives() {
        assert_eq!(
            coset_representative(CosetKind::Tp, 2, p(3)).unwrap(),
            IntMatrix::diagonal(ints(&[1, 1, 3, 3])).unwrap()
        );
        assert_eq!(
            coset_representative(CosetKind::Tj(2), 2, p(3)).unwrap(),
            IntMatrix::diagonal(ints(&[3, 3, 3, 3])).unwrap()
        );
        assert_eq!(
            coset_representative(CosetKind::Tj(0), 2, p(3)).unwrap(),
            IntMatrix::diagonal(ints(&[1, 1, 9, 9])).unwrap()
        );
        assert!(coset_representative(CosetKind::Tj(3), 2, p(3)).is_err());
    }

    #[test]
    fn rejects_odd_or_ragged_input() {
        assert!(IntMatrix::identity(3).is_err());
        assert!("1 0\n0".parse::<IntMatrix>().is_err());
        assert!("1 x\n0 1".parse::<IntMatrix>().is_err());
        let m: IntMatrix = "2 0\n0 -3\n".parse().unwrap();
        assert_eq!(m.to_string(), "2 0\n0 -3");
    }
}
