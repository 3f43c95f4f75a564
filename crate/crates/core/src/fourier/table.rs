use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::distinguish::{Verdict, Witness};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::hecke::Weight;
use crate::prime::Prime;

/// The comparison runs over `c(p^r I)` for `0 <= r <= FOURIER_MAX_R`.
pub const FOURIER_MAX_R: u32 = 6;

/// Fourier coefficients `c(p^r I)` of a degree-2 form, one vector per `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    label: String,
    prime: Prime,
    weight: Weight,
    coeffs: BTreeMap<u32, Vec<BigRational>>,
}

impl CoefficientTable {
    /// Keys must be `0..=r_max` and all vectors of one nonzero length.
    pub fn new(
        label: impl Into<String>,
        prime: Prime,
        weight: Weight,
        coeffs: BTreeMap<u32, Vec<BigRational>>,
    ) -> Result<Self> {
        if weight.degree() != 2 {
            return Err(Error::InvalidWeight(format!(
                "coefficient tables are degree 2, got weight {weight}"
            )));
        }
        if let Some((i, r)) = coeffs.keys().enumerate().find(|(i, r)| **r != *i as u32) {
            return Err(Error::Structural(format!(
                "coefficient indices must be contiguous from 0; missing r = {i} (next present is {r})"
            )));
        }
        let mut lengths = coeffs.values().map(Vec::len);
        if let Some(first) = lengths.next() {
            if first == 0 || lengths.any(|l| l != first) {
                return Err(Error::Structural(
                    "coefficient vectors must share one nonzero length".into(),
                ));
            }
        }
        Ok(CoefficientTable {
            label: label.into(),
            prime,
            weight,
            coeffs,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn get(&self, r: u32) -> Option<&[BigRational]> {
        self.coeffs.get(&r).map(Vec::as_slice)
    }

    /// Number of stored indices.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Component count of each coefficient vector.
    pub fn dimension(&self) -> Option<usize> {
        self.coeffs.values().next().map(Vec::len)
    }
}

impl fmt::Display for CoefficientTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "label {}", self.label)?;
        writeln!(f, "prime {}", self.prime)?;
        let parts: Vec<String> = self
            .weight
            .parts()
            .iter()
            .map(ToString::to_string)
            .collect();
        writeln!(f, "weight {}", parts.join(" "))?;
        for (r, v) in &self.coeffs {
            let entries: Vec<String> = v.iter().map(format_rational).collect();
            writeln!(f, "coeff {r} {}", entries.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for CoefficientTable {
    type Err = Error;

    /// ```text
    /// label F
    /// prime 3
    /// weight 10 10
    /// coeff 0 1
    /// coeff 1 -4/3
    /// ```
    fn from_str(s: &str) -> Result<Self> {
        let mut label: Option<String> = None;
        let mut prime: Option<Prime> = None;
        let mut weight: Option<Weight> = None;
        let mut coeffs = BTreeMap::new();
        for (i, raw) in s.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let at = |e: Error| Error::parse(line_no, e.to_string());
            match key {
                "label" => label = Some(rest.to_string()),
                "prime" => {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad prime `{rest}`")))?;
                    prime = Some(Prime::new(p).map_err(at)?);
                }
                "weight" => weight = Some(rest.parse().map_err(at)?),
                "coeff" => {
                    let mut it = rest.split_whitespace();
                    let r: u32 = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| {
                        Error::parse(line_no, "expected `coeff <r> <rational>...`")
                    })?;
                    let v = it
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()
                        .map_err(at)?;
                    if v.is_empty() {
                        return Err(Error::parse(line_no, "coefficient vector is empty"));
                    }
                    if coeffs.insert(r, v).is_some() {
                        return Err(Error::parse(
                            line_no,
                            format!("duplicate coefficient r = {r}"),
                        ));
                    }
                }
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }
        let prime = prime.ok_or_else(|| Error::parse(0, "missing `prime` line"))?;
        let weight = weight.ok_or_else(|| Error::parse(0, "missing `weight` line"))?;
        CoefficientTable::new(label.unwrap_or_default(), prime, weight, coeffs)
    }
}

fn is_zero_vector(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Compares `c_F(p^r I)` and `c_G(p^r I)` for `r = 0..=6`, componentwise.
///
/// Structural problems (different primes, `p != 3 (mod 4)`, a missing `r`,
/// different vector lengths) are errors. Equal weight sums or
/// `c_F(I) = c_G(I) = 0` void the hypotheses and give
/// [`Verdict::NotApplicable`]. Otherwise the first differing `r` is the
/// witness, and seven agreements are [`Verdict::Inconsistent`].
pub fn distinguish_by_fourier(f: &CoefficientTable, g: &CoefficientTable) -> Result<Verdict> {
    if f.prime != g.prime {
        return Err(Error::Structural(format!(
            "tables are at different primes {} and {}",
            f.prime, g.prime
        )));
    }
    if f.prime.get() % 4 != 3 {
        return Err(Error::Structural(format!("p = {} is not 3 mod 4", f.prime)));
    }
    for t in [f, g] {
        if let Some(r) = (0..=FOURIER_MAX_R).find(|r| t.get(*r).is_none()) {
            return Err(Error::Structural(format!(
                "table `{}` has no coefficient at r = {r}",
                t.label
            )));
        }
    }
    if f.dimension() != g.dimension() {
        return Err(Error::Structural(format!(
            "coefficient vectors have lengths {:?} and {:?}",
            f.dimension(),
            g.dimension()
        )));
    }
    if f.weight.sum() == g.weight.sum() {
        return Ok(Verdict::NotApplicable(format!(
            "hypothesis failed: weight sums are equal ({})",
            f.weight.sum()
        )));
    }
    let (cf, cg) = (f.get(0).expect("checked"), g.get(0).expect("checked"));
    if is_zero_vector(cf) && is_zero_vector(cg) {
        return Ok(Verdict::NotApplicable(
            "hypothesis failed: both c(I) zero".into(),
        ));
    }
    for r in 0..=FOURIER_MAX_R {
        if f.get(r) != g.get(r) {
            return Ok(Verdict::Distinguished(Witness::FourierIndex(r)));
        }
    }
    // Sorted so the verdict does not depend on argument order.
    let (lo, hi) = {
        let (a, b) = (f.weight.sum(), g.weight.sum());
        (a.min(b), a.max(b))
    };
    Ok(Verdict::Inconsistent(format!(
        "c(p^r I) agree for all 0 <= r <= {FOURIER_MAX_R} although the weight sums {lo} and {hi} \
         differ and c(I) is nonzero; the tables cannot both be correct"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn table(label: &str, p: u64, w: (i64, i64), values: &[i64]) -> CoefficientTable {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(r, &v)| (r as u32, vec![q(v)]))
            .collect();
        CoefficientTable::new(
            label,
            Prime::new(p).unwrap(),
            Weight::new(vec![w.0, w.1]).unwrap(),
            coeffs,
        )
        .unwrap()
    }

    #[test]
    fn verdicts() {
        let f = table("F", 3, (10, 10), &[1, 2, 3, 4, 5, 6, 7]);
        let g = table("G", 3, (12, 10), &[1, 9, 3, 4, 5, 6, 7]);
        assert_eq!(
            distinguish_by_fourier(&f, &g).unwrap(),
            Verdict::Distinguished(Witness::FourierIndex(1))
        );
        let g2 = table("G", 3, (12, 10), &[1, 2, 3, 4, 5, 6, 7]);
        assert!(matches!(
            distinguish_by_fourier(&f, &g2).unwrap(),
            Verdict::Inconsistent(_)
        ));
        let fz = table("F", 3, (10, 10), &[0, 2, 3, 4, 5, 6, 7]);
        let gz = table("G", 3, (12, 10), &[0, 2, 3, 4, 5, 6, 8]);
        assert_eq!(
            distinguish_by_fourier(&fz, &gz).unwrap(),
            Verdict::NotApplicable("hypothesis failed: both c(I) zero".into())
        );
        let same_sum = table("G", 3, (11, 9), &[1, 9, 3, 4, 5, 6, 7]);
        assert!(matches!(
            distinguish_by_fourier(&f, &same_sum).unwrap(),
            Verdict::NotApplicable(_)
        ));
    }

    #[test]
    fn structural_errors() {
        let f = table("F", 3, (10, 10), &[1, 2, 3, 4, 5, 6, 7]);
        let short = table("G", 3, (12, 10), &[1, 2, 3, 4, 5, 6]);
        assert!(distinguish_by_fourier(&f, &short).is_err());
        let other_p = table("G", 7, (12, 10), &[1, 2, 3, 4, 5, 6, 7]);
        assert!(distinguish_by_fourier(&f, &other_p).is_err());
        let p5 = table("F", 5, (10, 10), &[1, 2, 3, 4, 5, 6, 7]);
        assert!(distinguish_by_fourier(&p5, &p5).is_err());
        let gap: BTreeMap<u32, Vec<BigRational>> = [(0, vec![q(1)]), (2, vec![q(1)])].into();
        assert!(CoefficientTable::new(
            "x",
            Prime::new(3).unwrap(),
            Weight::new(vec![4, 4]).unwrap(),
            gap
        )
        .is_err());
    }

    #[test]
    fn file_round_trip() {
        let text = "label F\nprime 7\nweight 10 9\ncoeff 0 1 0\ncoeff 1 -1/2 3\n";
        let t: CoefficientTable = text.parse().unwrap();
        assert_eq!(t.dimension(), Some(2));
        assert_eq!(t.to_string(), text);
        assert!("prime 7\nweight 10 9\ncoeff 0 1\ncoeff 1 1 2\n"
            .parse::<CoefficientTable>()
            .is_err());
        assert!(matches!(
            "prime 7\nweight 10 9\ncoeff 0 x\n".parse::<CoefficientTable>(),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
