mod common;

use common::*;
use companion::field::{FieldSpec, Gf2, Gf3, Rational, Scalar};
use companion::matrix::{poly_eval_matrix, Matrix};
use companion::oracle::{char_poly_by_cofactors, enumerate_matrices, DEFAULT_BUDGET};
use proptest::prelude::*;

fn cayley_hamilton<T: Scalar>(a: &Matrix<T>) {
    let chi = a.char_poly().unwrap();
    assert!(chi.is_monic());
    assert_eq!(chi.degree(), Some(a.rows()));
    let full = chi.coeffs();
    // chi(A) via Horner, allowing degree n
    let spec = a.spec();
    let mut acc = Matrix::zeros(a.rows(), a.rows(), spec);
    for c in full.iter().rev() {
        acc = acc
            .matmul(a)
            .unwrap()
            .add(&Matrix::identity(a.rows(), spec).scale(c))
            .unwrap();
    }
    assert!(acc.is_zero(), "chi(A) != 0 for\n{a}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_hamilton_over_q(a in sized_matrix(1, 5)) {
        cayley_hamilton(&a);
    }

    #[test]
    fn berkowitz_matches_leibniz_over_q(a in sized_matrix(1, 5)) {
        prop_assert_eq!(a.char_poly().unwrap().coeffs().to_vec(), char_poly_leibniz(&a));
    }

    #[test]
    fn cayley_hamilton_over_gf3(e in prop::collection::vec(0u64..3, 16)) {
        let a = Matrix::new(4, 4, e.into_iter().map(Gf3::new).collect(), Gf3::field()).unwrap();
        cayley_hamilton(&a);
        prop_assert_eq!(a.char_poly().unwrap().coeffs().to_vec(), char_poly_leibniz(&a));
    }

    #[test]
    fn kron_mixed_product(a in rational_matrix(2), b in rational_matrix(2),
                          c in rational_matrix(2), d in rational_matrix(2)) {
        let lhs = a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_bilinear(a in rational_matrix(2), b in rational_matrix(2),
                     c in rational_matrix(3), s in small_rational()) {
        prop_assert_eq!(
            a.add(&b).unwrap().kron(&c).unwrap(),
            a.kron(&c).unwrap().add(&b.kron(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.scale(&s).kron(&c).unwrap(), a.kron(&c.scale(&s)).unwrap());
    }

    #[test]
    fn matmul_associative_and_transpose(a in rational_matrix(3), b in rational_matrix(3), c in rational_matrix(3)) {
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.matmul(&c).unwrap(), a.matmul(&b.matmul(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.transpose(), b.transpose().matmul(&a.transpose()).unwrap());
    }

    #[test]
    fn polynomial_evaluation_is_a_homomorphism(a in rational_matrix(3), p in rational_vec(3), r in rational_vec(2)) {
        // (p + r)(A) = p(A) + r(A); (z * r)(A) = A r(A)
        let sum: Vec<Rational> = (0..3)
            .map(|i| p[i].clone() + r.get(i).cloned().unwrap_or_else(|| q(0)))
            .collect();
        prop_assert_eq!(
            poly_eval_matrix(&sum, &a).unwrap(),
            poly_eval_matrix(&p, &a).unwrap().add(&poly_eval_matrix(&r, &a).unwrap()).unwrap()
        );
        let shifted = vec![q(0), r[0].clone(), r[1].clone()];
        prop_assert_eq!(
            poly_eval_matrix(&shifted, &a).unwrap(),
            a.matmul(&poly_eval_matrix(&r, &a).unwrap()).unwrap()
        );
    }
}

#[test]
fn berkowitz_matches_both_oracles_on_all_gf2_3x3() {
    let mut count = 0;
    for a in enumerate_matrices::<Gf2>(Gf2::field(), 3, DEFAULT_BUDGET).unwrap() {
        let chi = a.char_poly().unwrap();
        let leibniz = char_poly_leibniz(&a);
        assert_eq!(chi.coeffs(), &leibniz[..], "{a}");
        assert_eq!(char_poly_by_cofactors(&a).unwrap(), leibniz);
        cayley_hamilton(&a);
        count += 1;
    }
    assert_eq!(count, 512);
}

#[test]
fn berkowitz_on_small_characteristic() {
    // p <= n: the algorithm must not divide
    for a in enumerate_matrices::<Gf2>(Gf2::field(), 2, DEFAULT_BUDGET).unwrap() {
        assert_eq!(a.char_poly().unwrap().coeffs(), &char_poly_leibniz(&a)[..]);
    }
    let a = Matrix::from_fn(5, 5, Gf3::field(), |i, j| {
        Gf3::new(((i * 7 + j * 3) % 3) as u64)
    });
    assert_eq!(a.char_poly().unwrap().coeffs(), &char_poly_leibniz(&a)[..]);
}

#[test]
fn char_poly_of_known_matrices() {
    let a = qm(&[&[2, 1], &[1, 2]]);
    // z^2 - 4z + 3
    assert_eq!(a.char_poly().unwrap().coeffs(), &[q(3), q(-4), q(1)]);
    let n = qm(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    assert_eq!(n.char_poly().unwrap().coeffs(), &[q(0), q(0), q(0), q(1)]);
    let i: Matrix<Rational> = Matrix::identity(4, FieldSpec::RATIONALS);
    assert_eq!(
        i.char_poly().unwrap().coeffs(),
        &[q(1), q(-4), q(6), q(-4), q(1)]
    );
}
