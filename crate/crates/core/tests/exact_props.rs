use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use vieta::exact::{
    elementary_symmetric_all, numeric_roots, poly_from_roots, verify_vieta, vieta_from_coefficients,
    ExactRational, Polynomial, RootMultiset, DEFAULT_TOLERANCE,
};

fn q(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = ExactRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn root_set() -> impl Strategy<Value = Vec<ExactRational>> {
    prop::collection::vec((-10i64..=10, 1i64..=4).prop_map(|(n, d)| q(n, d)), 1..=8)
}

fn nonzero() -> impl Strategy<Value = ExactRational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// `prod (x - r)` expanded one factor at a time by schoolbook convolution.
fn expand_naive(roots: &[ExactRational]) -> Vec<ExactRational> {
    let mut c = vec![ExactRational::one()];
    for r in roots {
        let mut next = vec![ExactRational::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c
}

proptest! {
    #[test]
    fn symmetric_functions_match_coefficient_ratios(roots in root_set(), lead in nonzero()) {
        let ms = RootMultiset::new(roots.clone());
        let p = poly_from_roots(&ms, &lead).unwrap();
        let s = vieta_from_coefficients(&p).unwrap();
        let e = elementary_symmetric_all(&ms);
        prop_assert_eq!(s.len(), roots.len());
        for (j, ej) in e.iter().enumerate().skip(1) {
            prop_assert_eq!(s.get(j).unwrap(), ej);
        }
        prop_assert!(verify_vieta(&p, &ms, 0.0).unwrap().passed());
    }

    #[test]
    fn expansion_agrees_with_convolution(roots in root_set()) {
        let p = poly_from_roots(&RootMultiset::new(roots.clone()), &ExactRational::one()).unwrap();
        let naive = expand_naive(&roots);
        prop_assert_eq!(p.coefficients(), naive.as_slice());
    }

    #[test]
    fn scaling_leaves_symmetric_values(roots in root_set(), lead in nonzero(), k in nonzero()) {
        let p = poly_from_roots(&RootMultiset::new(roots), &lead).unwrap();
        let a = vieta_from_coefficients(&p).unwrap();
        let b = vieta_from_coefficients(&p.scale(&k)).unwrap();
        prop_assert_eq!(a.as_slice(), b.as_slice());
    }

    #[test]
    fn every_root_is_a_zero(roots in root_set(), lead in nonzero()) {
        let p = poly_from_roots(&RootMultiset::new(roots.clone()), &lead).unwrap();
        for r in &roots {
            prop_assert!(p.evaluate(r).is_zero());
        }
    }

    #[test]
    fn text_form_round_trips(coeffs in prop::collection::vec(rational(), 1..=9)) {
        let p = Polynomial::new(coeffs);
        let back: Polynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn distinct_integer_roots_recovered(mut roots in prop::collection::btree_set(-10i64..=10, 1..=8)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>()))
    {
        let p = poly_from_roots(&RootMultiset::from_integers(&roots), &ExactRational::one()).unwrap();
        let found = numeric_roots(&p, DEFAULT_TOLERANCE).unwrap();
        let mut re: Vec<f64> = found.roots.iter().map(|r| r.re).collect();
        re.sort_by(f64::total_cmp);
        roots.sort();
        prop_assert_eq!(re.len(), roots.len());
        for (x, r) in re.iter().zip(&roots) {
            prop_assert!((x - *r as f64).abs() <= 1e-10, "{} vs {}", x, r);
        }
        for r in &found.roots {
            prop_assert!(r.im.abs() <= 1e-10);
        }
    }
}

#[test]
fn numeric_roots_of_a_complex_pair() {
    // x² + 2x + 5 has roots -1 ± 2i
    let p = Polynomial::from_integers(&[5, 2, 1]);
    let mut r = numeric_roots(&p, DEFAULT_TOLERANCE).unwrap().roots;
    r.sort_by(|a, b| a.im.total_cmp(&b.im));
    assert!((r[0].re + 1.0).abs() < 1e-12 && (r[0].im + 2.0).abs() < 1e-12);
    assert!((r[1].re + 1.0).abs() < 1e-12 && (r[1].im - 2.0).abs() < 1e-12);
}
