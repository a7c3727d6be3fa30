mod common;

use common::small_rational;
use companion::field::{FieldElement, FieldSpec, Gf, Gf5, Rational, Scalar};
use proptest::prelude::*;

fn axioms<T: Scalar>(a: T, b: T, c: T) {
    let spec = a.spec();
    let (zero, one) = (T::zero_in(&spec), T::one_in(&spec));
    assert_eq!(
        (a.clone() + b.clone()) + c.clone(),
        a.clone() + (b.clone() + c.clone())
    );
    assert_eq!(
        (a.clone() * b.clone()) * c.clone(),
        a.clone() * (b.clone() * c.clone())
    );
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    assert_eq!(a.clone() + zero.clone(), a);
    assert_eq!(a.clone() * one.clone(), a);
    assert_eq!(a.clone() + (-a.clone()), zero);
    assert_eq!(a.clone() - b.clone(), a.clone() + (-b.clone()));
    if a.is_zero() {
        assert!(a.inv().is_err());
    } else {
        assert_eq!(a.clone() * a.inv().unwrap(), one);
    }
}

fn round_trip<T: Scalar>(a: &T) {
    let spec = a.spec();
    let text = a.to_string();
    assert_eq!(&T::parse_in(&text, &spec).unwrap(), a);
    assert_eq!(FieldElement::parse(&text, &spec).unwrap().to_string(), text);
}

type Gf101 = Gf<101>;

proptest! {
    #[test]
    fn rational_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        axioms(a, b, c);
    }

    #[test]
    fn gf5_axioms(a in 0u64..5, b in 0u64..5, c in 0u64..5) {
        axioms(Gf5::new(a), Gf5::new(b), Gf5::new(c));
    }

    #[test]
    fn gf101_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
        axioms(Gf101::new(a), Gf101::new(b), Gf101::new(c));
    }

    #[test]
    fn runtime_prime_field_axioms(a in 0u64..7919, b in 0u64..7919, c in 0u64..7919) {
        let spec = FieldSpec::prime(7919).unwrap();
        let f = |v| FieldElement::from_residue(v, &spec);
        axioms(f(a), f(b), f(c));
    }

    #[test]
    fn runtime_rational_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        let f = FieldElement::from_rational;
        axioms(f(a), f(b), f(c));
    }

    #[test]
    fn parse_render_identity(n in -10_000i64..10_000, d in 1i64..10_000, r in 0u64..101) {
        round_trip(&Rational::new(n.into(), d.into()));
        round_trip(&Gf101::new(r));
    }

    #[test]
    fn static_and_runtime_agree(a in 0u64..5, b in 0u64..5) {
        let spec = Gf5::field();
        let (x, y) = (FieldElement::from_residue(a, &spec), FieldElement::from_residue(b, &spec));
        prop_assert_eq!((x.clone() * y.clone()).to_string(), (Gf5::new(a) * Gf5::new(b)).to_string());
        prop_assert_eq!((x - y).to_string(), (Gf5::new(a) - Gf5::new(b)).to_string());
    }

    #[test]
    fn negative_literals_reduce_mod_p(v in -1000i64..1000) {
        let spec = FieldSpec::prime(7).unwrap();
        let x = FieldElement::parse(&v.to_string(), &spec).unwrap();
        prop_assert_eq!(x.as_residue(), Some(v.rem_euclid(7) as u64));
    }
}

#[test]
fn composite_moduli_rejected() {
    for m in [0u64, 1, 4, 6, 9, 15, 91, 561, 1_000_000_007 * 3] {
        assert!(FieldSpec::prime(m).is_err(), "{m}");
        assert!(format!("GF:{m}").parse::<FieldSpec>().is_err());
    }
    for p in [2u64, 3, 5, 7919, 1_000_000_007, 18_446_744_073_709_551_557] {
        assert!(FieldSpec::prime(p).is_ok(), "{p}");
    }
}

#[test]
fn mixed_fields_are_errors() {
    let a = FieldElement::parse("1", &FieldSpec::RATIONALS).unwrap();
    let b = FieldElement::parse("1", &FieldSpec::prime(3).unwrap()).unwrap();
    assert!(a.checked_add(&b).is_err());
    assert!(a.checked_mul(&b).is_err());
}
