//! Ring laws, substitution, truncated series and canonical rendering,
//! checked on random degree-2 polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use siegel_hecke::exact::{Generator, HeckePolynomial, Substitution, TruncatedSeries};

const DEGREE: usize = 2;

fn gens() -> Vec<Generator> {
    Generator::all(DEGREE).collect()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn term() -> impl Strategy<Value = (Vec<u32>, BigRational)> {
    (
        proptest::collection::vec(0u32..=2, gens().len()),
        rational(),
    )
}

fn poly() -> impl Strategy<Value = HeckePolynomial> {
    proptest::collection::vec(term(), 0..5).prop_map(|terms| {
        let g = gens();
        terms
            .into_iter()
            .fold(HeckePolynomial::zero(DEGREE), |acc, (exps, c)| {
                let powers: Vec<(Generator, u32)> = g
                    .iter()
                    .copied()
                    .zip(exps)
                    .filter(|(_, e)| *e > 0)
                    .collect();
                acc + HeckePolynomial::monomial(DEGREE, &powers, c).unwrap()
            })
    })
}

/// Evaluates every generator at a rational point, independently of
/// `substitute`.
fn evaluate(p: &HeckePolynomial, point: &[BigRational]) -> BigRational {
    let g = gens();
    p.terms()
        .map(|(m, c)| {
            g.iter().zip(point).fold(c.clone(), |acc, (gen, v)| {
                acc * num_traits::pow(v.clone(), m.exponent(*gen) as usize)
            })
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &HeckePolynomial::one(DEGREE), a.clone());
        prop_assert_eq!(a.pow(3), &(&a * &a) * &a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), point in proptest::collection::vec(rational(), 5)) {
        let sub = gens()
            .into_iter()
            .zip(&point)
            .fold(Substitution::new(), |s, (g, v)| s.scalar(g, v.clone()));
        let sa = a.substitute(&sub).unwrap();
        prop_assert_eq!(sa.as_constant(), Some(evaluate(&a, &point)));
        let prod = (&a * &b).substitute(&sub).unwrap();
        prop_assert_eq!(prod.as_constant(), Some(evaluate(&a, &point) * evaluate(&b, &point)));
    }

    #[test]
    fn polynomial_substitution_respects_products(a in poly(), b in poly(), image in poly()) {
        let image_has_tp2 = image.generators().contains(&Generator::Tp2);
        let sub = Substitution::new().poly(Generator::Tp2, image);
        let lhs = (&a * &b).substitute(&sub).unwrap();
        let rhs = &a.substitute(&sub).unwrap() * &b.substitute(&sub).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(
            (&a + &b).substitute(&sub).unwrap(),
            &a.substitute(&sub).unwrap() + &b.substitute(&sub).unwrap()
        );
        if !image_has_tp2 {
            prop_assert!(!lhs.generators().contains(&Generator::Tp2));
        }
    }

    #[test]
    fn render_parse_round_trip(a in poly()) {
        let text = a.to_string();
        let back = HeckePolynomial::parse(DEGREE, &text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn series_product_matches_naive_convolution(
        xs in proptest::collection::vec(poly(), 1..6),
        ys in proptest::collection::vec(poly(), 1..6),
        order in 0usize..7,
    ) {
        let x = TruncatedSeries::from_coeffs(DEGREE, order, xs.clone()).unwrap();
        let y = TruncatedSeries::from_coeffs(DEGREE, order, ys.clone()).unwrap();
        let prod = x.checked_mul(&y).unwrap();
        let at = |v: &[HeckePolynomial], i: usize| v.get(i).cloned().unwrap_or_else(|| HeckePolynomial::zero(DEGREE));
        for k in 0..=order {
            let naive = (0..=k).fold(HeckePolynomial::zero(DEGREE), |acc, i| acc + at(&xs, i) * at(&ys, k - i));
            prop_assert_eq!(prod.coeff(k).unwrap(), &naive);
        }
    }
}

#[test]
fn rendering_rules() {
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let tp = HeckePolynomial::generator(DEGREE, Generator::Tp).unwrap();
    let t1 = HeckePolynomial::generator(DEGREE, Generator::Tj(1)).unwrap();
    let t2 = HeckePolynomial::generator(DEGREE, Generator::Tj(2)).unwrap();
    let p = tp.pow(2) - t1.scale(&q(15)) - t2;
    assert_eq!(p.to_string(), "T(p)^2 - 15*T_1(p^2) - 1*T_2(p^2)");
    assert_eq!(HeckePolynomial::zero(DEGREE).to_string(), "0");
    assert_eq!((-&tp).to_string(), "-1*T(p)");
}
