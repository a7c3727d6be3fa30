mod common;

use common::*;
use companion::bilinear::{
    check_crossover_universal, check_crossover_with_p, check_h_symmetry, check_jmtrs,
    check_u_symmetry, crossover_p, crossover_reachability_sides, crossover_sides, h_map, l_matrix,
    q_matrix, recognize, rows_below_first_are_companion, u_map, ExtendedCoeffVector, TheoremId,
};
use companion::companion::{
    is_companion_krylov, is_companion_structural, krylov_basis_test, make_companion, reachability,
    Structure,
};
use companion::field::{FieldSpec, Gf2, Gf3, Rational};
use companion::matrix::{poly_eval_matrix, unit_vector, Matrix};
use companion::oracle::{
    enumerate_matrices, run_against, run_equivalence, EnumerationMode, EnumerationTask,
    DEFAULT_BUDGET,
};
use companion::CoeffVector;
use proptest::prelude::*;

fn ext(v: Vec<Rational>) -> ExtendedCoeffVector<Rational> {
    ExtendedCoeffVector::from_entries(v, FieldSpec::RATIONALS).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reachability_times_b_is_b_of_a(a in sized_matrix(1, 5), seed in any::<u64>()) {
        let n = a.rows();
        let mut rng = companion::random::Lcg64::new(seed);
        let b: CoeffVector<Rational> = companion::random::coeff_vector(n, FieldSpec::RATIONALS, &mut rng);
        let g: CoeffVector<Rational> = companion::random::coeff_vector(n, FieldSpec::RATIONALS, &mut rng);
        let lhs = reachability(&a, &g.to_column()).unwrap().matmul(&b.to_column()).unwrap();
        let rhs = poly_eval_matrix(b.entries(), &a).unwrap().matmul(&g.to_column()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn companion_round_trip(p in (1usize..=6).prop_flat_map(rational_vec)) {
        let p = coeffs(p);
        let f = make_companion(&p);
        match is_companion_structural(&f).unwrap() {
            Structure::Companion(found) => prop_assert_eq!(found, p.clone()),
            Structure::NotCompanion(w) => prop_assert!(false, "{}", w),
        }
        prop_assert!(is_companion_krylov(&f).unwrap());
        let e_last = unit_vector(f.rows() - 1, f.rows(), FieldSpec::RATIONALS).unwrap();
        prop_assert_eq!(f.matmul(&e_last).unwrap(), p.to_column());
        // chi_{F_p} = z^n - p(z)
        let chi = f.char_poly().unwrap();
        for i in 0..p.len() {
            prop_assert_eq!(chi.coeff(i), -p.get(i).clone());
        }
        prop_assert_eq!(chi.coeff(p.len()), q(1));
    }

    #[test]
    fn reachability_equals_g_of_f(p in rational_vec(4), g in rational_vec(4)) {
        let f = make_companion(&coeffs(p));
        let g = coeffs(g);
        prop_assert_eq!(reachability(&f, &g.to_column()).unwrap(), g.eval_at(&f).unwrap());
    }

    #[test]
    fn companion_maps_are_symmetric(p in (1usize..=6).prop_flat_map(|n| (rational_vec(n), rational_vec(n), rational_vec(n)))) {
        let (p, b, g) = p;
        let f = make_companion(&coeffs(p));
        let (b, g) = (coeffs(b), coeffs(g));
        prop_assert_eq!(h_map(&f, &b, &g).unwrap(), h_map(&f, &g, &b).unwrap());
        prop_assert_eq!(u_map(&f, &b, &g).unwrap(), u_map(&f, &g, &b).unwrap());
        prop_assert_eq!(l_matrix(&f, &g).unwrap(), q_matrix(&f, &g).unwrap());
    }

    #[test]
    fn u_is_l_times_b_for_every_matrix(a in sized_matrix(1, 4), seed in any::<u64>()) {
        let n = a.rows();
        let mut rng = companion::random::Lcg64::new(seed);
        let b: CoeffVector<Rational> = companion::random::coeff_vector(n, FieldSpec::RATIONALS, &mut rng);
        let g: CoeffVector<Rational> = companion::random::coeff_vector(n, FieldSpec::RATIONALS, &mut rng);
        let u = u_map(&a, &b, &g).unwrap();
        prop_assert_eq!(&u, &l_matrix(&a, &g).unwrap().matmul(&b.to_column()).unwrap());
        prop_assert_eq!(u_map(&a, &g, &b).unwrap(), q_matrix(&a, &g).unwrap().matmul(&b.to_column()).unwrap());
    }

    #[test]
    fn crossover_forms_agree_for_every_matrix(a in rational_matrix(3), p in rational_vec(3),
                                              b in rational_vec(4), g in rational_vec(4)) {
        let p = coeffs(p);
        let (b, g) = (ext(b), ext(g));
        let (l1, r1) = crossover_sides(&a, &p, &b, &g).unwrap();
        let (l2, r2) = crossover_reachability_sides(&a, &p, &b, &g).unwrap();
        prop_assert_eq!(l1.sub(&r1).unwrap(), l2.sub(&r2).unwrap());
    }

    #[test]
    fn crossover_on_companion(p in (1usize..=5).prop_flat_map(|n| (rational_vec(n), rational_vec(n + 1), rational_vec(n + 1)))) {
        let (p, b, g) = p;
        let p = coeffs(p);
        let f = make_companion(&p);
        prop_assert_eq!(crossover_p(&f).unwrap(), p.clone());
        prop_assert!(check_crossover_with_p(&f, &p, &ext(b), &ext(g)).unwrap());
    }

    #[test]
    fn random_matrices_are_recognized_consistently(a in sized_matrix(2, 4)) {
        // recognize errors if the characterizing criteria disagree
        let report = recognize(&a).unwrap();
        prop_assert_eq!(report.is_companion(), is_companion_structural(&a).unwrap().is_companion());
        prop_assert_eq!(check_jmtrs(&a).unwrap().holds(), rows_below_first_are_companion(&a).unwrap());
        prop_assert_eq!(check_u_symmetry(&a).unwrap().holds(), rows_below_first_are_companion(&a).unwrap());
    }

    #[test]
    fn first_row_is_invisible_to_u_and_jmtrs(p in (2usize..=5).prop_flat_map(|n| (rational_vec(n), rational_vec(n)))) {
        let (p, row) = p;
        let n = p.len();
        let mut a = make_companion(&coeffs(p));
        for (j, x) in row.into_iter().enumerate().take(n - 1) {
            a.set(0, j, x);
        }
        prop_assert!(check_u_symmetry(&a).unwrap().holds());
        prop_assert!(check_jmtrs(&a).unwrap().holds());
        prop_assert_eq!(
            check_h_symmetry(&a).unwrap().holds(),
            is_companion_structural(&a).unwrap().is_companion()
        );
    }
}

#[test]
fn lemma_exhaustive_counts() {
    for (spec, n, companions) in [(Gf2::field(), 2, 4), (Gf2::field(), 3, 8)] {
        let task = EnumerationTask::new(spec, n, TheoremId::Reachability);
        let r = run_equivalence::<Gf2>(&task).unwrap();
        assert_eq!(r.companion_count, companions);
        assert!(r.mismatches.is_empty());
    }
    let r = run_equivalence::<Gf3>(&EnumerationTask::new(
        Gf3::field(),
        2,
        TheoremId::Reachability,
    ))
    .unwrap();
    assert_eq!((r.total, r.companion_count), (81, 9));
    assert!(r.mismatches.is_empty());
}

#[test]
fn all_81_gf3_matrices_recognized() {
    let mut companions = 0;
    for a in enumerate_matrices::<Gf3>(Gf3::field(), 2, DEFAULT_BUDGET).unwrap() {
        let report = recognize(&a).unwrap();
        let structural = is_companion_structural(&a).unwrap().is_companion();
        assert_eq!(report.is_companion(), structural);
        assert_eq!(krylov_basis_test(&a).unwrap(), structural);
        assert_eq!(check_h_symmetry(&a).unwrap().holds(), structural);
        assert_eq!(check_crossover_universal(&a).unwrap().holds(), structural);
        if structural {
            assert_eq!(report.extracted_p().unwrap().to_column(), a.col(1));
            companions += 1;
        } else {
            assert!(report.witness().is_some());
        }
    }
    assert_eq!(companions, 9);
}

#[test]
fn exhaustive_h_and_crossover() {
    for theorem in [TheoremId::HSymmetry, TheoremId::Crossover] {
        for n in [2, 3] {
            let r =
                run_equivalence::<Gf2>(&EnumerationTask::new(Gf2::field(), n, theorem)).unwrap();
            assert!(r.mismatches.is_empty(), "{theorem} n={n}");
            assert_eq!(r.predicate_pass_count, r.companion_count);
        }
        let r = run_equivalence::<Gf3>(&EnumerationTask::new(Gf3::field(), 2, theorem)).unwrap();
        assert!(r.mismatches.is_empty());
    }
}

#[test]
fn u_and_jmtrs_characterize_the_lower_rows() {
    for theorem in [TheoremId::Jmtrs, TheoremId::USymmetry] {
        for (n, shaped) in [(2, 8), (3, 32)] {
            let task = EnumerationTask::new(Gf2::field(), n, theorem);
            let r = run_against::<Gf2, _>(&task, rows_below_first_are_companion).unwrap();
            assert!(r.mismatches.is_empty(), "{theorem} n={n}");
            assert_eq!(r.companion_count, shaped);
            // against companion shape itself, every extra matrix is a mismatch
            let s = run_equivalence::<Gf2>(&task).unwrap();
            assert_eq!(s.mismatches.len() as u64, shaped - 2u64.pow(n as u32));
            assert!(s
                .mismatches
                .iter()
                .all(|m| !m.structural && m.brute_force && m.library));
        }
        let task = EnumerationTask::new(Gf3::field(), 2, theorem);
        let r = run_against::<Gf3, _>(&task, rows_below_first_are_companion).unwrap();
        assert!(r.mismatches.is_empty());
        assert_eq!(r.companion_count, 27);
    }
}

#[test]
fn companion_only_enumeration() {
    for theorem in [
        TheoremId::HSymmetry,
        TheoremId::USymmetry,
        TheoremId::Jmtrs,
        TheoremId::Crossover,
    ] {
        let task = EnumerationTask::new(Gf3::field(), 3, theorem)
            .with_mode(EnumerationMode::CompanionOnly);
        let r = run_equivalence::<Gf3>(&task).unwrap();
        assert_eq!(
            (r.total, r.companion_count, r.predicate_pass_count),
            (27, 27, 27),
            "{theorem}"
        );
    }
}

#[test]
fn identity_fails_every_criterion() {
    let i3: Matrix<Rational> = Matrix::identity(3, FieldSpec::RATIONALS);
    let report = recognize(&i3).unwrap();
    assert!(!report.is_companion());
    assert!(report.criteria().iter().all(|(_, holds)| !holds));
    let w = report.witness().unwrap();
    assert_eq!((w.row, w.column), (0, 0));
}
