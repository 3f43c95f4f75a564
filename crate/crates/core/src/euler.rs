//! Degree-2 spin Euler factor and the operators `T(p^r)`.
//!
//! With
//!
//! ```text
//! f(X) = X^4 - T(p) X^3 + [T(p)^2 - T(p^2) - p^2 T_2(p^2)] X^2
//!        - p^3 T(p) T_2(p^2) X + p^6 T_2(p^2)^2
//! ```
//!
//! the operators satisfy `z^4 f(1/z) * sum_i T(p^i) z^i = 1 - p^2 T_2(p^2) z^2`.
//! Equating coefficients of `z^m` gives a four-term recurrence which
//! [`solve_tpr`] runs symbolically. Everything else here is a consequence of
//! that table.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{BigInt, Generator, HeckePolynomial, Substitution, TruncatedSeries};
use crate::hecke::Weight;
use crate::prime::Prime;

const DEGREE: usize = 2;

fn gen(g: Generator) -> HeckePolynomial {
    HeckePolynomial::generator(DEGREE, g).expect("generator valid in degree 2")
}

fn int(c: BigInt) -> BigRational {
    BigRational::from_integer(c)
}

/// Coefficients `e_0..e_4` of `z^4 f(1/z) = e_0 + e_1 z + ... + e_4 z^4`,
/// i.e. `f(X) = e_0 X^4 + e_1 X^3 + ... + e_4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFactor {
    pub prime: Prime,
    pub coeffs: [HeckePolynomial; 5],
}

impl EulerFactor {
    /// `z^4 f(1/z)` as a series truncated at `order`.
    pub fn reversed_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(DEGREE, order, self.coeffs.iter().cloned())
            .expect("degree-2 coefficients")
    }
}

pub fn build_euler_factor(p: Prime) -> EulerFactor {
    let tp = gen(Generator::Tp);
    let tp2 = gen(Generator::Tp2);
    let t2 = gen(Generator::Tj(2));
    let p2 = int(p.pow(2));
    let p3 = int(p.pow(3));
    let p6 = int(p.pow(6));
    EulerFactor {
        prime: p,
        coeffs: [
            HeckePolynomial::one(DEGREE),
            -&tp,
            tp.pow(2) - tp2 - t2.scale(&p2),
            -(&tp * &t2).scale(&p3),
            t2.pow(2).scale(&p6),
        ],
    }
}

/// Right-hand side of the generating identity: `1 - p^2 T_2(p^2) z^2`.
pub fn generating_rhs(p: Prime, order: usize) -> TruncatedSeries {
    let t2 = gen(Generator::Tj(2)).scale(&-int(p.pow(2)));
    TruncatedSeries::from_coeffs(
        DEGREE,
        order,
        [
            HeckePolynomial::one(DEGREE),
            HeckePolynomial::zero(DEGREE),
            t2,
        ],
    )
    .expect("degree-2 coefficients")
}

/// `T(p^0), ..., T(p^{r_max})` as polynomials in `T(p), T(p^2), T_2(p^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TprTable {
    prime: Prime,
    entries: Vec<HeckePolynomial>,
}

impl TprTable {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn r_max(&self) -> usize {
        self.entries.len() - 1
    }

    /// `T(p^r)`; zero for negative `r`, `None` beyond the table.
    pub fn get(&self, r: i64) -> Option<HeckePolynomial> {
        if r < 0 {
            Some(HeckePolynomial::zero(DEGREE))
        } else {
            self.entries.get(r as usize).cloned()
        }
    }

    pub fn entries(&self) -> &[HeckePolynomial] {
        &self.entries
    }

    pub fn as_series(&self) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(DEGREE, self.r_max(), self.entries.iter().cloned())
            .expect("degree-2 coefficients")
    }

    /// The same table with every entry specialised.
    pub fn substitute(&self, bindings: &Substitution) -> Result<TprTable> {
        Ok(TprTable {
            prime: self.prime,
            entries: self
                .entries
                .iter()
                .map(|e| e.substitute(bindings))
                .collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for TprTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, e) in self.entries.iter().enumerate() {
            if r > 0 {
                f.write_str("\n")?;
            }
            write!(f, "T(p^{r}) = {e}")?;
        }
        Ok(())
    }
}

/// Solves the generating identity order by order:
/// `T(p^m) = rhs_m - sum_{j=1}^{4} e_j T(p^{m-j})`.
pub fn solve_tpr(p: Prime, r_max: usize) -> Result<TprTable> {
    if r_max == 0 {
        return Err(Error::OutOfRange {
            what: "r_max",
            value: 0,
        });
    }
    let factor = build_euler_factor(p);
    let rhs = generating_rhs(p, r_max);
    let mut entries: Vec<HeckePolynomial> = Vec::with_capacity(r_max + 1);
    for m in 0..=r_max {
        let mut value = rhs.coeff(m).cloned().expect("within order");
        for j in 1..=4.min(m) {
            value = value - &factor.coeffs[j] * &entries[m - j];
        }
        entries.push(value);
    }
    Ok(TprTable { prime: p, entries })
}

/// `T(p) -> 0`.
pub fn vanishing_tp() -> Substitution {
    Substitution::new().scalar(Generator::Tp, BigRational::zero())
}

/// `T_2(p^2) -> p^(l_1 + l_2 - 6)`, the eigenvalue on a form of this weight.
pub fn weight_binding(weight: &Weight, p: Prime) -> Result<Substitution> {
    if weight.degree() != DEGREE {
        return Err(Error::InvalidWeight(format!(
            "expected a degree-2 weight, got {weight}"
        )));
    }
    Ok(Substitution::new().scalar(Generator::Tj(2), p.pow_rational(weight.sum() - 6)))
}

/// Whether `T(p^{2i+1})` vanishes identically once `T(p) = 0`, for every
/// `i <= i_max`.
pub fn check_odd_vanishing(p: Prime, i_max: usize) -> Result<bool> {
    let table = solve_tpr(p, 2 * i_max + 1)?;
    let zero_tp = vanishing_tp();
    for i in 0..=i_max {
        let entry = table.get(2 * i as i64 + 1).expect("within table");
        if !entry.substitute(&zero_tp)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Eigenvalue identities obtained from the table in degree 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `a(p^3) - 2a(p)a(p^2) + a(p)^3 - p^(s-4)(p+1)a(p) = 0`.
    Ap3,
    /// With `a(p) = 0`: `a(p^4) - a(p^2)^2 - p^(s-4)a(p^2) + p^(2s-6) = 0`.
    Ap4,
    /// With `a(p) = 0`:
    /// `a(p^6) - a(p^4)a(p^2) - p^(s-4)a(p^4) + p^(2s-6)a(p^2) = 0`.
    Ap6,
}

impl Identity {
    pub const ALL: [Identity; 3] = [Identity::Ap3, Identity::Ap4, Identity::Ap6];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Ap3 => "ap3",
            Identity::Ap4 => "ap4",
            Identity::Ap6 => "ap6",
        }
    }

    pub fn requires_vanishing_tp(self) -> bool {
        !matches!(self, Identity::Ap3)
    }

    fn r_max(self) -> usize {
        match self {
            Identity::Ap3 => 3,
            Identity::Ap4 => 4,
            Identity::Ap6 => 6,
        }
    }

    /// Left-hand side in terms of eigenvalues `a(p^r)`, where `a(p^r)` is
    /// supplied by `a` and `s = l_1 + l_2`.
    pub fn lhs<F>(self, p: Prime, weight_sum: i64, a: F) -> HeckePolynomial
    where
        F: Fn(i64) -> HeckePolynomial,
    {
        let w4 = p.pow_rational(weight_sum - 4);
        let w6 = p.pow_rational(2 * weight_sum - 6);
        match self {
            Identity::Ap3 => {
                let p1 = BigRational::from_integer(p.to_bigint() + 1);
                a(3) - (a(1) * a(2)).scale(&BigRational::from_integer(2.into())) + a(1).pow(3)
                    - a(1).scale(&(w4 * p1))
            }
            Identity::Ap4 => {
                a(4) - a(2).pow(2) - a(2).scale(&w4) + HeckePolynomial::constant(DEGREE, w6)
            }
            Identity::Ap6 => a(6) - a(4) * a(2) - a(4).scale(&w4) + a(2).scale(&w6),
        }
    }
}

/// Evaluates the identity's left-hand side with `a(p^r)` replaced by the
/// solved `T(p^r)`, `T_2(p^2)` bound by the weight and (for `Ap4`/`Ap6`)
/// `T(p) = 0`. The result must be the zero polynomial; anything else is
/// reported as an internal error rather than returned.
pub fn derive_identity(which: Identity, weight: &Weight, p: Prime) -> Result<HeckePolynomial> {
    let lhs = identity_residual(which, weight, p)?;
    if lhs.is_zero() {
        Ok(lhs)
    } else {
        Err(Error::Internal(format!(
            "{} does not vanish for weight {weight} at p={p}: residual {lhs}",
            which.name()
        )))
    }
}

/// Like [`derive_identity`] but returns the residual whatever it is.
pub fn identity_residual(which: Identity, weight: &Weight, p: Prime) -> Result<HeckePolynomial> {
    let mut table = solve_tpr(p, which.r_max())?.substitute(&weight_binding(weight, p)?)?;
    if which.requires_vanishing_tp() {
        table = table.substitute(&vanishing_tp())?;
    }
    let lhs = which.lhs(p, weight.sum(), |r| table.get(r).expect("within table"));
    // For Ap4/Ap6 the symbol a(p) also has to vanish.
    if which.requires_vanishing_tp() {
        lhs.substitute(&vanishing_tp())
    } else {
        Ok(lhs)
    }
}

/// The `z^m` coefficient identity of the generating function, written with
/// the `T(p^i)` left symbolic:
/// `T(p^m) + sum_{j=1}^4 e_j T(p^{m-j}) = rhs_m`.
pub fn coefficient_identity_display(p: Prime, m: usize) -> String {
    let factor = build_euler_factor(p);
    let rhs = generating_rhs(p, m.max(2));
    let mut parts = vec![format!("T(p^{m})")];
    for j in 1..=4.min(m) {
        let e = &factor.coeffs[j];
        if !e.is_zero() {
            parts.push(format!("({e})*T(p^{})", m - j));
        }
    }
    format!(
        "{} = {}",
        parts.join(" + "),
        rhs.coeff(m)
            .cloned()
            .unwrap_or_else(|| HeckePolynomial::zero(DEGREE))
    )
}

/// A hand-transcribed expansion of a `z^m` coefficient of the generating
/// identity, evaluated on the solved table. A correct transcription has zero
/// residual; the residual is reported, not asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscribedExpansion {
    pub name: &'static str,
    pub transcribed: &'static str,
    pub derived: String,
    pub residual: HeckePolynomial,
}

/// The degree-3, degree-4, degree-6 and general odd (at `2i+1 = 5`)
/// expansions as commonly written, checked against the recurrence.
pub fn transcribed_expansions(p: Prime) -> Result<Vec<TranscribedExpansion>> {
    let table = solve_tpr(p, 6)?;
    let t = |r: i64| table.get(r).expect("within table");
    let tp = gen(Generator::Tp);
    let tp2 = gen(Generator::Tp2);
    let t2 = gen(Generator::Tj(2));
    let c = |e: u32| int(p.pow(e));
    let p1 = int(p.to_bigint() + 1);
    let e2 = tp.pow(2) - &tp2 - t2.scale(&c(2));

    let deg3 =
        t(3) - (&tp * &tp2).scale(&int(2.into())) + tp.pow(3) - (&tp * &t2).scale(&(c(2) * &p1));
    let deg4 = t(4) - &tp * &t(3) + tp.pow(2) * &tp2
        - tp2.pow(2)
        - t2.scale(&c(2))
        - (tp.pow(2) * &t2).scale(&c(3))
        + t2.pow(2).scale(&c(6));
    let inner = t(5) - &tp * &t(4) + (&t2 * &t(3)).scale(&c(3));
    let deg6 = t(6) - &tp * &inner - &tp2 * &t(4) - (t2.pow(2) * &t(4)).scale(&c(2))
        + (t2.pow(2) * &tp2).scale(&c(6));
    let i = 2;
    let odd = t(2 * i + 1) - &tp * &t(2 * i) + &e2 * &t(2 * (i - 1) + 1)
        - (&tp * &t2 * &t(2 * i - 2)).scale(&c(3))
        + (&t2 * &t(2 * (i - 2) + 1)).scale(&c(6));

    Ok(vec![
        TranscribedExpansion {
            name: "degree 3",
            transcribed: "T(p^3)-2T(p)T(p^2)+T(p)^3-p^2(p+1)T(p)T_2(p^2)=0",
            derived: coefficient_identity_display(p, 3),
            residual: deg3,
        },
        TranscribedExpansion {
            name: "degree 4",
            transcribed: "T(p^4)-T(p)T(p^3)+T(p)^2T(p^2)-T(p^2)^2-p^2T_2(p^2)-p^3T(p)^2T_2(p^2)+p^6T_2(p^2)^2=0",
            derived: coefficient_identity_display(p, 4),
            residual: deg4,
        },
        TranscribedExpansion {
            name: "degree 6",
            transcribed: "T(p^6)-T(p)[T(p^5)-T(p)T(p^4)+p^3T_2(p^2)T(p^3)]-T(p^2)T(p^4)-p^2T_2(p^2)^2T(p^4)+p^6T_2(p^2)^2T(p^2)=0",
            derived: coefficient_identity_display(p, 6),
            residual: deg6,
        },
        TranscribedExpansion {
            name: "odd coefficient, 2i+1 = 5",
            transcribed: "T(p^{2i+1})-T(p)T(p^{2i})+[T(p)^2-T(p^2)-p^2T_2(p^2)]T(p^{2(i-1)+1})-p^3T(p)T_2(p^2)T(p^{2i-2})+p^6T_2(p^2)T(p^{2(i-2)+1})=0",
            derived: coefficient_identity_display(p, 5),
            residual: odd,
        },
    ])
}
