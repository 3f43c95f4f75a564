use std::fmt;

use super::profile::OperatorName;

/// What tells two forms apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Operator(OperatorName),
    /// Fourier coefficient at `p^r I`.
    FourierIndex(u32),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Operator(op) => write!(f, "{op}"),
            Witness::FourierIndex(r) => write!(f, "c(p^{r}I)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The first differing quantity in canonical order.
    Distinguished(Witness),
    /// Identical data and identical weight sums: nothing is contradicted.
    ProfilesEqualConsistent,
    /// The data contradicts a theorem; the input is wrong.
    Inconsistent(String),
    /// A hypothesis of the governing theorem fails, so no conclusion is drawn.
    NotApplicable(String),
}

impl Verdict {
    /// 0 for a conclusion or a declined comparison, 2 for inconsistent data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Inconsistent(_) => 2,
            _ => 0,
        }
    }

    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Distinguished(_) => "distinguished",
            Verdict::ProfilesEqualConsistent => "consistent",
            Verdict::Inconsistent(_) => "inconsistent",
            Verdict::NotApplicable(_) => "not-applicable",
        }
    }

    /// Human-readable explanation to print under the record line.
    pub fn explanation(&self) -> String {
        match self {
            Verdict::Distinguished(w) => format!("the two forms differ at {w}"),
            Verdict::ProfilesEqualConsistent => {
                "all compared values agree and the weight sums agree; no conclusion".into()
            }
            Verdict::Inconsistent(why) | Verdict::NotApplicable(why) => why.clone(),
        }
    }
}

impl fmt::Display for Verdict {
    /// Single-line `key=value` record.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verdict={}", self.kind())?;
        if let Verdict::Distinguished(w) = self {
            write!(f, " witness={w}")?;
        }
        Ok(())
    }
}
