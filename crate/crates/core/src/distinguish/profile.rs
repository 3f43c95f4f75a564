use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::hecke::Weight;
use crate::prime::Prime;

/// Operators whose eigenvalues a profile can carry. The derived order is the
/// canonical comparison order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorName {
    Tp,
    Tp2,
    /// `T_j(p^2)`.
    Tjp2(usize),
    /// `T(p^r)`; `r = 1, 2` are stored as `Tp`, `Tp2`.
    Tpr(u32),
}

impl OperatorName {
    fn canonical(self) -> Self {
        match self {
            OperatorName::Tpr(1) => OperatorName::Tp,
            OperatorName::Tpr(2) => OperatorName::Tp2,
            other => other,
        }
    }

    /// `Tp`, `Tp2`, `Tjp2:j`, `Tpr:r`.
    pub fn token(self) -> String {
        match self {
            OperatorName::Tp => "Tp".into(),
            OperatorName::Tp2 => "Tp2".into(),
            OperatorName::Tjp2(j) => format!("Tjp2:{j}"),
            OperatorName::Tpr(r) => format!("Tpr:{r}"),
        }
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorName::Tp => f.write_str("T(p)"),
            OperatorName::Tp2 => f.write_str("T(p^2)"),
            OperatorName::Tjp2(j) => write!(f, "T_{j}(p^2)"),
            OperatorName::Tpr(r) => write!(f, "T(p^{r})"),
        }
    }
}

impl FromStr for OperatorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown operator `{s}`"));
        let index = |v: &str| v.parse::<u32>().map_err(|_| bad());
        match s.split_once(':') {
            None if s == "Tp" => Ok(OperatorName::Tp),
            None if s == "Tp2" => Ok(OperatorName::Tp2),
            Some(("Tjp2", j)) => Ok(OperatorName::Tjp2(index(j)? as usize)),
            Some(("Tpr", r)) => match index(r)? {
                0 => Err(bad()),
                r => Ok(OperatorName::Tpr(r)),
            },
            _ => Err(bad()),
        }
    }
}

/// Exact eigenvalues of one eigenform at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueProfile {
    prime: Prime,
    degree: usize,
    weight: Option<Weight>,
    values: BTreeMap<OperatorName, BigRational>,
}

impl EigenvalueProfile {
    pub fn new(degree: usize, prime: Prime) -> Result<Self> {
        if degree == 0 {
            return Err(Error::OutOfRange {
                what: "degree n",
                value: 0,
            });
        }
        Ok(EigenvalueProfile {
            prime,
            degree,
            weight: None,
            values: BTreeMap::new(),
        })
    }

    pub fn with_weight(mut self, weight: Weight) -> Result<Self> {
        if weight.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: weight.degree(),
            });
        }
        self.weight = Some(weight);
        Ok(self)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> Option<&Weight> {
        self.weight.as_ref()
    }

    /// Records a value. Re-inserting the same value is a no-op; a different
    /// value for an operator already present is an error.
    pub fn insert(&mut self, op: OperatorName, value: BigRational) -> Result<()> {
        let op = op.canonical();
        if let OperatorName::Tjp2(j) = op {
            if j > self.degree {
                return Err(Error::OutOfRange {
                    what: "operator index j",
                    value: j as i64,
                });
            }
        }
        match self.values.get(&op) {
            Some(old) if *old != value => Err(Error::InvalidArgument(format!(
                "conflicting values for {op}: {} and {}",
                format_rational(old),
                format_rational(&value)
            ))),
            _ => {
                self.values.insert(op, value);
                Ok(())
            }
        }
    }

    pub fn with(mut self, op: OperatorName, value: BigRational) -> Result<Self> {
        self.insert(op, value)?;
        Ok(self)
    }

    pub fn get(&self, op: OperatorName) -> Option<&BigRational> {
        self.values.get(&op.canonical())
    }

    pub fn require(&self, op: OperatorName) -> Result<&BigRational> {
        self.get(op)
            .ok_or_else(|| Error::MissingEntry(format!("{op} (token `{}`)", op.token())))
    }

    /// `a(p^r)`, with `a(p^0) = 1`.
    pub fn a_pr(&self, r: u32) -> Option<BigRational> {
        if r == 0 {
            Some(BigRational::one())
        } else {
            self.get(OperatorName::Tpr(r)).cloned()
        }
    }

    pub fn require_pr(&self, r: u32) -> Result<BigRational> {
        if r == 0 {
            return Ok(BigRational::one());
        }
        self.require(OperatorName::Tpr(r)).cloned()
    }

    pub fn values(&self) -> impl Iterator<Item = (OperatorName, &BigRational)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    /// Operators making up the profile `E(p)`:
    /// `T(p), T(p^2), T_1(p^2), ..., T_{n-1}(p^2)`.
    pub fn listed_operators(degree: usize) -> Vec<OperatorName> {
        [OperatorName::Tp, OperatorName::Tp2]
            .into_iter()
            .chain((1..degree).map(OperatorName::Tjp2))
            .collect()
    }
}

impl fmt::Display for EigenvalueProfile {
    /// The line-oriented file format accepted by [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        writeln!(f, "prime {}", self.prime)?;
        if let Some(w) = &self.weight {
            let parts: Vec<String> = w.parts().iter().map(ToString::to_string).collect();
            writeln!(f, "weight {}", parts.join(" "))?;
        }
        for (op, v) in &self.values {
            writeln!(f, "op {} {}", op.token(), format_rational(v))?;
        }
        Ok(())
    }
}

impl FromStr for EigenvalueProfile {
    type Err = Error;

    /// ```text
    /// degree 2
    /// prime 3
    /// weight 10 10
    /// op Tp 0
    /// op Tpr:4 -17/2
    /// ```
    ///
    /// `#` starts a comment. `degree` and `prime` must precede the `op`
    /// lines.
    fn from_str(s: &str) -> Result<Self> {
        let mut degree: Option<usize> = None;
        let mut prime: Option<Prime> = None;
        let mut weight: Option<Weight> = None;
        let mut ops: Vec<(usize, OperatorName, BigRational)> = Vec::new();
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
                "degree" => {
                    let n: usize = rest
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad degree `{rest}`")))?;
                    degree = Some(n);
                }
                "prime" => {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad prime `{rest}`")))?;
                    prime = Some(Prime::new(p).map_err(at)?);
                }
                "weight" => weight = Some(rest.parse().map_err(at)?),
                "op" => {
                    let mut it = rest.split_whitespace();
                    let (Some(name), Some(value), None) = (it.next(), it.next(), it.next()) else {
                        return Err(Error::parse(line_no, "expected `op <name> <rational>`"));
                    };
                    ops.push((
                        line_no,
                        name.parse().map_err(at)?,
                        parse_rational(value).map_err(at)?,
                    ));
                }
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }
        let degree = degree.ok_or_else(|| Error::parse(0, "missing `degree` line"))?;
        let prime = prime.ok_or_else(|| Error::parse(0, "missing `prime` line"))?;
        let mut profile = EigenvalueProfile::new(degree, prime)?;
        if let Some(w) = weight {
            profile = profile.with_weight(w)?;
        }
        for (line_no, op, v) in ops {
            profile
                .insert(op, v)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
        }
        Ok(profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn operator_tokens_round_trip() {
        for op in [
            OperatorName::Tp,
            OperatorName::Tp2,
            OperatorName::Tjp2(3),
            OperatorName::Tpr(6),
        ] {
            assert_eq!(op.token().parse::<OperatorName>().unwrap(), op);
        }
        assert!("Tpr:0".parse::<OperatorName>().is_err());
        assert!("Tq".parse::<OperatorName>().is_err());
    }

    #[test]
    fn low_powers_alias_the_generators() {
        let p = Prime::new(3).unwrap();
        let mut prof = EigenvalueProfile::new(2, p).unwrap();
        prof.insert(OperatorName::Tpr(1), q(5)).unwrap();
        assert_eq!(prof.get(OperatorName::Tp), Some(&q(5)));
        prof.insert(OperatorName::Tp, q(5)).unwrap();
        assert!(prof.insert(OperatorName::Tp, q(6)).is_err());
        assert_eq!(prof.a_pr(0), Some(q(1)));
        assert!(prof.insert(OperatorName::Tjp2(3), q(1)).is_err());
    }

    #[test]
    fn file_format_round_trip() {
        let text = "# sample\ndegree 2\nprime 3\nweight 10 8\nop Tp 0\nop Tp2 -7/2\nop Tjp2:1 4\nop Tpr:4 9\n";
        let prof: EigenvalueProfile = text.parse().unwrap();
        assert_eq!(prof.weight().unwrap().sum(), 18);
        assert_eq!(prof.to_string().parse::<EigenvalueProfile>().unwrap(), prof);
        assert_eq!(
            prof.get(OperatorName::Tp2),
            Some(&BigRational::new((-7).into(), 2.into()))
        );
    }

    #[test]
    fn file_errors_carry_line_numbers() {
        let err = "degree 2\nprime 4\n"
            .parse::<EigenvalueProfile>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = "degree 2\nprime 3\nop Tp 1/0\n"
            .parse::<EigenvalueProfile>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!("prime 3\n".parse::<EigenvalueProfile>().is_err());
    }
}
