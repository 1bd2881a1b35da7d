use geneuler::chars::{enumerate_characters, DirichletCharacter};
use geneuler::euler::{
    alternating_character_sum_series, alternating_character_sum_series_product, euler_numbers, euler_polynomial,
    euler_polynomial_via_series, evaluate_eq4, generating_series, power_sum, power_sums,
};
use geneuler::exactnum::{binomial_row, integer, rational, CycloElement};
use geneuler::series::UnivariatePolynomial;
use geneuler::Error;
use proptest::prelude::*;

fn all_characters(moduli: &[u64]) -> Vec<DirichletCharacter> {
    moduli.iter().flat_map(|&d| enumerate_characters(d).unwrap()).collect()
}

fn pick(d: u64, seed: usize) -> DirichletCharacter {
    let mut chars = enumerate_characters(d).unwrap();
    let i = seed % chars.len();
    chars.swap_remove(i)
}

#[test]
fn trivial_modulus_gives_classical_values() {
    let chi = &enumerate_characters(1).unwrap()[0];
    let t = euler_numbers(chi, 1, 9);
    let expected = [
        rational(1, 1),
        rational(-1, 2),
        rational(0, 1),
        rational(1, 4),
        rational(0, 1),
        rational(-1, 2),
        rational(0, 1),
        rational(17, 8),
        rational(0, 1),
        rational(-31, 2),
    ];
    for (n, want) in expected.iter().enumerate() {
        assert_eq!(t.numbers[n].as_rational().as_ref(), Some(want), "E_{n}");
    }
    assert_eq!(
        euler_polynomial(chi, 1, 2),
        UnivariatePolynomial::from_coeffs(
            chi.value_field(),
            vec![
                CycloElement::zero(chi.value_field()),
                CycloElement::from_integer(chi.value_field(), -1),
                CycloElement::one(chi.value_field()),
            ]
        )
    );
}

#[test]
fn order_zero_is_the_monomial() {
    for chi in all_characters(&[1, 3, 5]) {
        let t = euler_numbers(&chi, 0, 6);
        assert!(t.numbers[0].is_one());
        assert!(t.numbers[1..].iter().all(CycloElement::is_zero));
        let p = euler_polynomial(&chi, 0, 4);
        assert_eq!(p, UnivariatePolynomial::monomial(CycloElement::one(chi.value_field()), 4));
    }
}

#[test]
fn both_polynomial_constructions_agree() {
    for chi in all_characters(&[1, 3, 5, 7]) {
        for m in 0..=3 {
            for n in 0..=8 {
                assert_eq!(
                    euler_polynomial(&chi, m, n),
                    euler_polynomial_via_series(&chi, m, n),
                    "d = {}, chi = {}, m = {m}, n = {n}",
                    chi.modulus(),
                    chi.index()
                );
            }
        }
    }
}

#[test]
fn leading_coefficient_is_base_value_to_the_order() {
    // E^{(m)}_{0,χ} = (Σ_{a<d} (-1)^a χ(a))^m, the leading coefficient of every polynomial
    for chi in all_characters(&[3, 5, 9]) {
        let field = chi.value_field().clone();
        let s = (0..chi.modulus()).fold(CycloElement::zero(&field), |acc, a| {
            let v = chi.eval(a);
            if a % 2 == 1 {
                &acc - v
            } else {
                &acc + v
            }
        });
        for m in 1..=3 {
            let p = euler_polynomial(&chi, m, 5);
            assert_eq!(p.coeff(5), s.pow(m));
        }
    }
}

#[test]
fn direct_and_product_forms_agree() {
    for chi in all_characters(&[1, 3, 5, 9]) {
        for w in [1, 3, 5, 7] {
            assert_eq!(
                alternating_character_sum_series(&chi, w, 12).unwrap(),
                alternating_character_sum_series_product(&chi, w, 12).unwrap()
            );
        }
    }
}

#[test]
fn even_weights_rejected() {
    let chi = &enumerate_characters(3).unwrap()[1];
    assert_eq!(alternating_character_sum_series(chi, 2, 4).unwrap_err(), Error::InvalidWeight(2));
    assert_eq!(
        alternating_character_sum_series_product(chi, 0, 4).unwrap_err(),
        Error::InvalidWeight(0)
    );
}

#[test]
fn alternating_series_generates_power_sums() {
    for chi in all_characters(&[3, 5, 7]) {
        for w in [1, 3, 5] {
            let upper = w * chi.modulus() - 1;
            let series = alternating_character_sum_series(&chi, w, 8).unwrap();
            let sums = power_sums(&chi, 8, upper);
            for (k, sum) in sums.iter().enumerate() {
                assert_eq!(&series.egf_coefficient(k).unwrap(), sum);
                assert_eq!(&power_sum(&chi, k, upper), sum);
            }
        }
    }
}

#[test]
fn odd_multipliers_relate_polynomials_and_power_sums() {
    for chi in all_characters(&[1, 3, 5, 7, 9]) {
        for n in [1, 3, 5, 7] {
            for k in 0..=10 {
                let r = evaluate_eq4(&chi, k, n).unwrap();
                assert!(r.equal && r.within_hypothesis, "{r:?}");
            }
        }
    }
}

#[test]
fn even_multipliers_are_flagged() {
    let chi = &enumerate_characters(3).unwrap()[1];
    let r = evaluate_eq4(chi, 1, 2).unwrap();
    assert!(!r.within_hypothesis);
    assert!(!r.equal);
    assert_eq!(geneuler::euler::check_eq4(chi, 1, 2).unwrap_err(), Error::InvalidMultiplier(2));
    assert_eq!(evaluate_eq4(chi, 1, 0).unwrap_err(), Error::InvalidMultiplier(0));
}

#[test]
fn cached_tables_extend_consistently() {
    let chi = &enumerate_characters(7).unwrap()[2];
    let short = euler_numbers(chi, 2, 4);
    let long = euler_numbers(chi, 2, 12);
    assert_eq!(&long.numbers[..5], &short.numbers[..]);
    assert_eq!(euler_numbers(chi, 2, 4), short);
    assert_eq!(long.numbers, generating_series(chi, 2, 12).egf_coefficients());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orders_add_under_convolution(
        d in prop::sample::select(vec![1u64, 3, 5, 7, 9, 15]),
        seed in 0usize..64,
        m1 in 0u64..3,
        m2 in 0u64..3,
        n in 0usize..9,
    ) {
        let chi = pick(d, seed);
        let a = euler_numbers(&chi, m1, n);
        let b = euler_numbers(&chi, m2, n);
        let binom = binomial_row(n as u64);
        let conv = (0..=n).fold(CycloElement::zero(chi.value_field()), |acc, k| {
            &acc + &(&a.numbers[k] * &b.numbers[n - k]).scale(&binom[k])
        });
        prop_assert_eq!(&euler_numbers(&chi, m1 + m2, n).numbers[n], &conv);
    }

    #[test]
    fn polynomials_form_an_appell_sequence(
        d in prop::sample::select(vec![1u64, 3, 5, 9]),
        seed in 0usize..64,
        m in 0u64..4,
        n in 1usize..10,
        shift in -5i64..6,
    ) {
        let chi = pick(d, seed);
        let p = euler_polynomial(&chi, m, n);
        // shifting x by h: E_n(x + h) = Σ C(n,k) E_k(x) h^{n-k}
        let shifted = p.compose_linear_rational(&integer(shift), &integer(1));
        let binom = binomial_row(n as u64);
        let mut expected = UnivariatePolynomial::zero(chi.value_field());
        let mut h = integer(1);
        for k in (0..=n).rev() {
            expected = expected.add(&euler_polynomial(&chi, m, k).scale_rational(&(&binom[k] * &h)));
            h *= integer(shift);
        }
        prop_assert_eq!(shifted, expected);
        // and the derivative lowers the index
        let lower = euler_polynomial(&chi, m, n - 1).scale_rational(&integer(n as i64));
        let derivative: Vec<CycloElement> = p
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&integer(j as i64)))
            .collect();
        prop_assert_eq!(UnivariatePolynomial::from_coeffs(chi.value_field(), derivative), lower);
    }

    #[test]
    fn polynomial_at_zero_is_the_number(
        d in prop::sample::select(vec![1u64, 3, 5, 7]),
        seed in 0usize..64,
        m in 0u64..4,
        n in 0usize..12,
    ) {
        let chi = pick(d, seed);
        let p = euler_polynomial(&chi, m, n);
        prop_assert_eq!(p.evaluate_rational(&integer(0)), euler_numbers(&chi, m, n).numbers[n].clone());
    }
}
