//! Class numbers against the analytic class number formula, inertness in
//! Q(i), and symmetry of the Fourier distinguisher.

use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use siegel_hecke::fourier::{
    class_number, distinguish_by_fourier, is_fundamental_discriminant, kronecker_symbol,
    CoefficientTable,
};
use siegel_hecke::hecke::Weight;
use siegel_hecke::prime::{is_prime, Prime};

/// Jacobi symbol `(a / n)` for odd `n > 0`.
fn jacobi(a: i64, n: i64) -> i64 {
    let (mut a, mut n, mut t) = (a.rem_euclid(n), n, 1);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(d / m)` for `m > 0`.
fn kronecker(d: i64, mut m: i64) -> i64 {
    let mut k = 1;
    while m % 2 == 0 {
        m /= 2;
        k *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    k * jacobi(d, m)
}

/// `h(d) = -(w / 2|d|) sum_{a=1}^{|d|} (d/a) a` for fundamental `d < 0`.
fn analytic_class_number(d: i64) -> i64 {
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let s: i64 = (1..=-d).map(|a| kronecker(d, a) * a).sum();
    let num = -w * s;
    assert_eq!(num % (-2 * d), 0, "formula not integral at d={d}");
    num / (-2 * d)
}

#[test]
fn class_numbers_match_analytic_formula() {
    let mut checked = 0;
    for d in -2000..=-3i64 {
        if is_fundamental_discriminant(d) {
            assert_eq!(
                class_number(d).unwrap() as i64,
                analytic_class_number(d),
                "d={d}"
            );
            checked += 1;
        }
    }
    assert!(checked > 500);
}

#[test]
fn three_mod_four_is_inert_in_gaussian_field() {
    for q in (3..=10_000u64).filter(|&q| is_prime(q)) {
        let chi = kronecker_symbol(-4, Prime::new(q).unwrap());
        assert_eq!(chi == -1, q % 4 == 3, "p={q}");
        assert_eq!(chi as i64, kronecker(-4, q as i64), "p={q}");
    }
}

#[test]
fn kronecker_matches_reference_for_many_discriminants() {
    for q in [2u64, 3, 5, 7, 11, 13, 101] {
        for d in -300..=-3i64 {
            assert_eq!(
                kronecker_symbol(d, Prime::new(q).unwrap()) as i64,
                kronecker(d, q as i64),
                "({d}/{q})"
            );
        }
    }
}

fn table(label: &str, w: (i64, i64), values: &[(i64, i64)]) -> CoefficientTable {
    let coeffs: BTreeMap<u32, Vec<BigRational>> = values
        .iter()
        .enumerate()
        .map(|(r, &(a, b))| {
            (
                r as u32,
                vec![
                    BigRational::from_integer(a.into()),
                    BigRational::from_integer(b.into()),
                ],
            )
        })
        .collect();
    CoefficientTable::new(
        label,
        Prime::new(3).unwrap(),
        Weight::new(vec![w.0, w.1]).unwrap(),
        coeffs,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn fourier_verdict_is_symmetric(
        wf in (6i64..12, 3i64..6),
        wg in (6i64..12, 3i64..6),
        vf in proptest::collection::vec((-2i64..=2, -2i64..=2), 7),
        flips in proptest::collection::vec(any::<bool>(), 7),
    ) {
        // G copies F except where a flip perturbs the first component.
        let vg: Vec<(i64, i64)> = vf.iter().zip(&flips).map(|(&(a, b), &f)| (if f { a + 1 } else { a }, b)).collect();
        let f = table("F", wf, &vf);
        let g = table("G", wg, &vg);
        let fg = distinguish_by_fourier(&f, &g).unwrap();
        let gf = distinguish_by_fourier(&g, &f).unwrap();
        prop_assert_eq!(&fg, &gf);
        let text = f.to_string();
        prop_assert_eq!(text.parse::<CoefficientTable>().unwrap(), f);
    }
}
