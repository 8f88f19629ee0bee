//! Property tests for the algebraic invariants of every module.
//!
//! Scalars are drawn by proptest strategies directly; matrices and tuples
//! are drawn from the crate's seeded generators with proptest choosing the
//! seed, which keeps shrinking meaningful (smaller seeds, smaller sizes)
//! without reimplementing the generators as strategies.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use csai::cones::{self, HermitianSquare, PivotOrder};
use csai::involution::{self, Involution};
use csai::matrix::{star_embed, Matrix, MatrixTuple};
use csai::random::{self, rng};
use csai::scalars::{rat, GaussRational, Quaternion, Rational, Scalar};
use csai::structure::{self, catalog, BasisFamily, MatrixAlgebra, StructureConstantAlgebra};
use csai::words::{
    cayley_unitary, conjugate_tuple, decide_similarity, enumerate_words, word_trace, Outcome,
    ScanOptions,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    [rational(), rational(), rational(), rational()]
        .prop_map(|[a, b, c, d]| Quaternion::new(a, b, c, d))
}

fn hermitian_or_degenerate<T: Scalar>(seed: u64, n: usize) -> Matrix<T> {
    let mut r = rng(seed);
    let mut h = random::hermitian::<T, _>(&mut r, n, 6);
    if seed.is_multiple_of(3) {
        for i in 0..n {
            h.set(i, i, T::zero());
        }
    }
    h
}

// Scalars.

proptest! {
    #[test]
    fn quaternion_multiplication_is_associative(p in quaternion(), q in quaternion(), r in quaternion()) {
        prop_assert_eq!((p.clone() * &q) * &r, p * &(q * &r));
    }

    #[test]
    fn conjugation_reverses_products(p in quaternion(), q in quaternion()) {
        prop_assert_eq!((p.clone() * &q).conj(), q.conj() * &p.conj());
    }

    #[test]
    fn quaternion_norm_is_anisotropic(q in quaternion()) {
        let n = q.clone() * &q.conj();
        prop_assert!(n.is_rational());
        prop_assert!(!n.real_part().is_negative());
        prop_assert_eq!(n.real_part().is_zero(), q.is_zero());
        if let Some(inv) = q.inv() {
            prop_assert!((q * &inv).is_one());
        }
    }

    #[test]
    fn split_round_trips(q in quaternion()) {
        let (q1, q2) = q.split();
        prop_assert_eq!(Quaternion::from_split(&q1, &q2), q);
    }
}

// Matrix models.

fn trace_symmetry<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let a: Matrix<T> = random::matrix(&mut r, n, 8);
    let b: Matrix<T> = random::matrix(&mut r, n, 8);
    (&a * &b).reduced_trace() == (&b * &a).reduced_trace()
}

fn conjugation_invariance<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let a: Matrix<T> = random::matrix(&mut r, n, 8);
    let g: Matrix<T> = random::invertible(&mut r, n, 4);
    let gi = g.inverse().unwrap();
    (&(&g * &a) * &gi).reduced_trace() == a.reduced_trace()
}

fn inverse_is_two_sided<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let a: Matrix<T> = random::integer_matrix(&mut r, n, 3);
    match a.inverse() {
        Ok(ai) => &ai * &a == Matrix::identity(n) && &a * &ai == Matrix::identity(n),
        Err(_) => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_trace_is_symmetric(seed in any::<u64>(), n in 1usize..=4) {
        prop_assert!(trace_symmetry::<Rational>(seed, n));
        prop_assert!(trace_symmetry::<GaussRational>(seed, n));
        prop_assert!(trace_symmetry::<Quaternion>(seed, n));
    }

    #[test]
    fn reduced_trace_is_conjugation_invariant(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(conjugation_invariance::<Rational>(seed, n));
        prop_assert!(conjugation_invariance::<GaussRational>(seed, n));
        prop_assert!(conjugation_invariance::<Quaternion>(seed, n));
    }

    #[test]
    fn inverses_are_two_sided(seed in any::<u64>(), n in 1usize..=4) {
        prop_assert!(inverse_is_two_sided::<Rational>(seed, n));
        prop_assert!(inverse_is_two_sided::<GaussRational>(seed, n));
        prop_assert!(inverse_is_two_sided::<Quaternion>(seed, n));
    }

    #[test]
    fn star_is_a_morphism_of_rings_with_involution(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let a: Matrix<Quaternion> = random::matrix(&mut r, n, 8);
        let b: Matrix<Quaternion> = random::matrix(&mut r, n, 8);
        prop_assert_eq!(star_embed(&(&a + &b)), &star_embed(&a) + &star_embed(&b));
        prop_assert_eq!(star_embed(&(&a * &b)), &star_embed(&a) * &star_embed(&b));
        prop_assert_eq!(star_embed(&a.adjoint()), star_embed(&a).adjoint());
        prop_assert_eq!(
            star_embed(&a).trace(),
            GaussRational::from_rational(a.reduced_trace())
        );
    }
}

// Involutions.

fn classification_ignores_scaling<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let a: Matrix<T> = random::hermitian(&mut r, n, 6);
    match Involution::new(a) {
        Ok(inv) => inv.classify().unwrap() == Involution::<T>::canonical(n).classify().unwrap(),
        Err(_) => true,
    }
}

fn scaling_round_trips<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let a: Matrix<T> = random::hermitian(&mut r, n, 6);
    let Ok(sigma) = Involution::new(a) else {
        return true;
    };
    let gamma = Involution::<T>::canonical(n);
    let Ok(found) = involution::solve_scaling(&sigma, &gamma) else {
        return false;
    };
    let rebuilt = Involution::new(found).unwrap();
    Matrix::<T>::basis(n)
        .iter()
        .all(|e| rebuilt.apply(e).unwrap() == sigma.apply(e).unwrap())
}

fn positive_scalings_are_definite<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let a: Matrix<T> = if seed.is_multiple_of(2) {
        cones::random_psd(&mut r, n, 4)
    } else {
        random::hermitian(&mut r, n, 6)
    };
    let Ok(inv) = Involution::new(a.clone()) else {
        return true;
    };
    !inv.is_positive().positive
        || cones::is_psd(&a).unwrap().psd
        || cones::is_psd(&-&a).unwrap().psd
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn classification_is_scaling_invariant(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(classification_ignores_scaling::<Rational>(seed, n));
        prop_assert!(classification_ignores_scaling::<GaussRational>(seed, n));
        prop_assert!(classification_ignores_scaling::<Quaternion>(seed, n));
    }

    #[test]
    fn solve_scaling_reproduces_sigma(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(scaling_round_trips::<Rational>(seed, n));
        prop_assert!(scaling_round_trips::<GaussRational>(seed, n));
        prop_assert!(scaling_round_trips::<Quaternion>(seed, n));
    }

    #[test]
    fn positivity_forces_a_definite_scale(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(positive_scalings_are_definite::<Rational>(seed, n));
        prop_assert!(positive_scalings_are_definite::<GaussRational>(seed, n));
        prop_assert!(positive_scalings_are_definite::<Quaternion>(seed, n));
    }
}

#[test]
fn canonical_involutions_are_positive() {
    for n in 1..=4 {
        assert!(Involution::<Rational>::canonical(n).is_positive().positive);
        assert!(
            Involution::<GaussRational>::canonical(n)
                .is_positive()
                .positive
        );
        assert!(
            Involution::<Quaternion>::canonical(n)
                .is_positive()
                .positive
        );
    }
}

// Cones.

fn pivot_orders_agree<T: Scalar>(seed: u64, n: usize) -> bool {
    let h: Matrix<T> = hermitian_or_degenerate(seed, n);
    let a = cones::diagonalize_congruence_with(&h, PivotOrder::First).unwrap();
    let b = cones::diagonalize_congruence_with(&h, PivotOrder::Last).unwrap();
    a.verifies(&h) && b.verifies(&h) && a.signature() == b.signature()
}

fn gram_matrices_are_psd<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let g: Matrix<T> = random::matrix(&mut r, n, 6);
    let h = &g.adjoint() * &g;
    let psd = cones::is_psd(&h).unwrap().psd;
    let factor_ok = match cones::hermitian_square_certificate(&h).unwrap() {
        HermitianSquare::ExactFactor(b) => &b.adjoint() * &b == h,
        HermitianSquare::RealClosureFactor(c) => c.verifies(&h) && c.is_psd(),
        HermitianSquare::NotPsd(_) => false,
    };
    psd && factor_ok
}

fn scaled_cone_is_closed<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let Ok(inv) = Involution::new(random::hermitian::<T, _>(&mut r, n, 5)) else {
        return true;
    };
    let a = inv.scale().clone();
    let x = &a * &cones::random_psd::<T, _>(&mut r, n, 4);
    let y: Matrix<T> = random::matrix(&mut r, n, 4);
    let moved = &(&inv.apply(&y).unwrap() * &x) * &y;
    cones::cone_membership_scaled(&a, &x).unwrap()
        && cones::cone_membership_scaled(&a, &moved).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inertia_is_independent_of_pivot_order(seed in any::<u64>(), n in 1usize..=4) {
        prop_assert!(pivot_orders_agree::<Rational>(seed, n));
        prop_assert!(pivot_orders_agree::<GaussRational>(seed, n));
        prop_assert!(pivot_orders_agree::<Quaternion>(seed, n));
    }

    #[test]
    fn hermitian_squares_are_psd(seed in any::<u64>(), n in 1usize..=4) {
        prop_assert!(gram_matrices_are_psd::<Rational>(seed, n));
        prop_assert!(gram_matrices_are_psd::<GaussRational>(seed, n));
        prop_assert!(gram_matrices_are_psd::<Quaternion>(seed, n));
    }

    #[test]
    fn quaternion_signature_halves_through_star(seed in any::<u64>(), n in 1usize..=3) {
        let h: Matrix<Quaternion> = hermitian_or_degenerate(seed, n);
        let q = cones::signature(&h).unwrap();
        let c = cones::signature(&star_embed(&h)).unwrap();
        prop_assert_eq!(
            (2 * q.positives, 2 * q.negatives, 2 * q.zeros, 2 * q.signature),
            (c.positives, c.negatives, c.zeros, c.signature)
        );
    }

    #[test]
    fn scaled_cones_satisfy_p3(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(scaled_cone_is_closed::<Rational>(seed, n));
        prop_assert!(scaled_cone_is_closed::<GaussRational>(seed, n));
        prop_assert!(scaled_cone_is_closed::<Quaternion>(seed, n));
    }
}

// Words.

fn tuple<T: Scalar>(seed: u64, n: usize, d: usize) -> MatrixTuple<T> {
    let mut r = rng(seed);
    MatrixTuple::new(
        (0..d)
            .map(|_| random::integer_matrix(&mut r, n, 4))
            .collect(),
    )
    .unwrap()
}

fn rotations_preserve_traces<T: Scalar>(seed: u64, n: usize, d: usize) -> bool {
    let x = tuple::<T>(seed, n, d);
    enumerate_words(d, 4, false).all(|w| {
        let t = word_trace(&x, &w).unwrap();
        (1..w.len()).all(|r| word_trace(&x, &w.rotate(r)).unwrap() == t)
    })
}

fn perturbed<T: Scalar>(x: &MatrixTuple<T>, seed: u64) -> MatrixTuple<T> {
    let n = x.n();
    let i = (seed as usize) % x.len();
    let (r, c) = ((seed as usize / 7) % n, (seed as usize / 11) % n);
    let mut items = x.items().to_vec();
    let v = items[i].get(r, c).clone() + T::one();
    items[i].set(r, c, v);
    MatrixTuple::new(items).unwrap()
}

fn conjugates_are_equivalent<T: Scalar>(seed: u64, n: usize, d: usize) -> bool {
    let x = tuple::<T>(seed, n, d);
    let mut r = rng(seed ^ 0x5eed);
    let Ok(o) = cayley_unitary(&random::anti_hermitian::<T, _>(&mut r, n, 6)) else {
        return true;
    };
    let y = conjugate_tuple(&x, &o);
    decide_similarity(&x, &y, &ScanOptions::default())
        .unwrap()
        .is_equivalent()
}

fn witnesses_separate<T: Scalar>(seed: u64, n: usize, d: usize) -> bool {
    let x = tuple::<T>(seed, n, d);
    let y = perturbed(&x, seed);
    let v = decide_similarity(&x, &y, &ScanOptions::default()).unwrap();
    match (v.outcome, v.witness, v.traces) {
        (Outcome::Equivalent, None, None) => true,
        (Outcome::Inequivalent, Some(w), Some((tx, ty))) => {
            w.len() <= n * n
                && word_trace(&x, &w).unwrap() == tx
                && word_trace(&y, &w).unwrap() == ty
                && tx != ty
        }
        _ => false,
    }
}

fn scans_are_monotone<T: Scalar>(seed: u64, n: usize, d: usize, short: usize) -> bool {
    let x = tuple::<T>(seed, n, d);
    let y = perturbed(&x, seed);
    let a = decide_similarity(&x, &y, &ScanOptions::with_max_len(short)).unwrap();
    let b = decide_similarity(&x, &y, &ScanOptions::with_max_len(short + 2)).unwrap();
    match a.witness {
        Some(w) => b.witness.is_some_and(|v| v.len() <= w.len()),
        None => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn traces_are_rotation_invariant(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=2) {
        prop_assert!(rotations_preserve_traces::<Rational>(seed, n, d));
        prop_assert!(rotations_preserve_traces::<GaussRational>(seed, n, d));
        prop_assert!(rotations_preserve_traces::<Quaternion>(seed, n, d));
    }

    #[test]
    fn unitary_conjugates_are_equivalent(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=2) {
        prop_assert!(conjugates_are_equivalent::<Rational>(seed, n, d));
        prop_assert!(conjugates_are_equivalent::<GaussRational>(seed, n, d));
        prop_assert!(conjugates_are_equivalent::<Quaternion>(seed, n, d));
    }

    #[test]
    fn witnesses_reverify(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=2) {
        prop_assert!(witnesses_separate::<Rational>(seed, n, d));
        prop_assert!(witnesses_separate::<GaussRational>(seed, n, d));
        prop_assert!(witnesses_separate::<Quaternion>(seed, n, d));
    }

    #[test]
    fn longer_scans_keep_short_witnesses(seed in any::<u64>(), n in 2usize..=3, short in 1usize..=3) {
        prop_assert!(scans_are_monotone::<Rational>(seed, n, 2, short));
        prop_assert!(scans_are_monotone::<GaussRational>(seed, n, 1, short));
        prop_assert!(scans_are_monotone::<Quaternion>(seed, n, 1, short));
    }

    #[test]
    fn quaternion_verdicts_survive_star(seed in any::<u64>(), n in 1usize..=2, d in 1usize..=2, bump in any::<bool>()) {
        let x = tuple::<Quaternion>(seed, n, d);
        let y = if bump { perturbed(&x, seed) } else {
            let mut r = rng(seed ^ 0x5eed);
            match cayley_unitary(&random::anti_hermitian::<Quaternion, _>(&mut r, n, 6)) {
                Ok(o) => conjugate_tuple(&x, &o),
                Err(_) => x.clone(),
            }
        };
        let q = decide_similarity(&x, &y, &ScanOptions::default()).unwrap();
        if q.is_equivalent() {
            let star = |t: &MatrixTuple<Quaternion>| {
                MatrixTuple::new(t.items().iter().map(star_embed).collect()).unwrap()
            };
            let c = decide_similarity(&star(&x), &star(&y), &ScanOptions::with_max_len(n * n)).unwrap();
            prop_assert!(c.is_equivalent());
        }
    }

    #[test]
    fn parallel_scans_match_sequential(seed in any::<u64>(), n in 2usize..=3) {
        let x = tuple::<GaussRational>(seed, n, 2);
        let y = perturbed(&x, seed);
        let seq = decide_similarity(&x, &y, &ScanOptions::default()).unwrap();
        let par = decide_similarity(&x, &y, &ScanOptions { parallel: true, ..ScanOptions::default() }).unwrap();
        prop_assert_eq!(seq, par);
    }
}

// Structure.

fn conjugated_delta_families<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut r = rng(seed);
    let p: Matrix<T> = random::invertible(&mut r, n, 3);
    let pi = p.inverse().unwrap();
    let fam = BasisFamily::<Matrix<T>>::canonical(n).map(|e| &(&p * e) * &pi);
    let alg = MatrixAlgebra::<T>::new();
    let holds = structure::verify_delta(&alg, &fam).holds;
    holds && structure::check_linear_independence(fam.map(Matrix::coords).elements())
}

fn broken_delta_families_fail<T: Scalar>(seed: u64, n: usize) -> bool {
    let mut fam = BasisFamily::<Matrix<T>>::canonical(n);
    let r = (seed as usize) % n;
    let s = (seed as usize / 5) % n;
    let doubled = fam.get(0, r, s).scale(&Rational::from_integer(2.into()));
    fam.set(0, r, s, doubled);
    !structure::verify_delta(&MatrixAlgebra::<T>::new(), &fam).holds
}

fn model_center_is_the_center_field<T: Scalar>(n: usize) -> bool {
    let alg = StructureConstantAlgebra::from_matrix_model::<T>(n);
    let expected: Vec<Vec<Rational>> = (0..<T::Center as Scalar>::KIND.rank())
        .map(|i| {
            let z = T::from_components(&{
                let mut c = vec![Rational::zero(); T::KIND.rank()];
                c[i] = Rational::one();
                c
            });
            Matrix::scalar(n, z).coords()
        })
        .collect();
    let center = alg.center();
    center.len() == expected.len()
        && expected.iter().all(|e| {
            let mut rows = center.clone();
            rows.push(e.clone());
            !structure::check_linear_independence(&rows)
        })
}

fn perturbed_trace_fails<T: Scalar>(n: usize, u: usize) -> bool {
    let mut f = structure::reduced_trace_values::<T>(n);
    let u = u % f.len();
    f[u] = f[u].clone() + <T::Center as One>::one();
    let mut r = structure::verify_matrix_trace_functional::<T>(n, &f).unwrap();
    r.matches_reduced_trace = None;
    !r.passed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_families_are_independent(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(conjugated_delta_families::<Rational>(seed, n));
        prop_assert!(conjugated_delta_families::<GaussRational>(seed, n));
        prop_assert!(conjugated_delta_families::<Quaternion>(seed, n));
    }

    #[test]
    fn scaled_units_break_delta(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(broken_delta_families_fail::<Rational>(seed, n));
        prop_assert!(broken_delta_families_fail::<GaussRational>(seed, n));
        prop_assert!(broken_delta_families_fail::<Quaternion>(seed, n));
    }

    #[test]
    fn trace_perturbations_fail(n in 1usize..=3, u in any::<usize>()) {
        prop_assert!(perturbed_trace_fails::<Rational>(n, u));
        prop_assert!(perturbed_trace_fails::<GaussRational>(n, u));
        prop_assert!(perturbed_trace_fails::<Quaternion>(n, u));
    }

    #[test]
    fn base_change_preserves_semisimplicity(seed in any::<u64>(), which in 0usize..6) {
        let (name, alg) = catalog::catalog().swap_remove(which);
        let mut r = rng(seed);
        let p: Matrix<Rational> = random::invertible(&mut r, alg.m(), 3);
        let moved = alg.change_basis(&p).unwrap();
        prop_assert_eq!(moved.is_semisimple(), alg.is_semisimple(), "{}", name);
        prop_assert_eq!(moved.center().len(), alg.center().len(), "{}", name);
        prop_assert_eq!(moved.csa_model_check(seed).verdict, alg.csa_model_check(seed).verdict, "{}", name);
    }
}

#[test]
fn matrix_model_centers_match_the_center_field() {
    for n in 1..=3 {
        assert!(model_center_is_the_center_field::<Rational>(n));
        assert!(model_center_is_the_center_field::<GaussRational>(n));
        assert!(model_center_is_the_center_field::<Quaternion>(n));
    }
}

#[test]
fn field_certificates_hold_for_many_seeds() {
    for seed in 0..20 {
        for (name, alg) in catalog::catalog() {
            match alg.center_is_field(seed) {
                structure::FieldVerdict::NotField { left, right } => {
                    assert!(alg.mul(&left, &right).iter().all(Zero::is_zero), "{name}");
                    assert!(left.iter().any(|x| !x.is_zero()), "{name}");
                    assert!(right.iter().any(|x| !x.is_zero()), "{name}");
                }
                structure::FieldVerdict::Field {
                    theta,
                    minimal_polynomial,
                } => {
                    assert_eq!(minimal_polynomial.len() - 1, alg.center().len(), "{name}");
                    // Horner evaluation of μ at θ.
                    let mut acc = vec![Rational::zero(); alg.m()];
                    for c in minimal_polynomial.iter().rev() {
                        acc = alg.mul(&theta, &acc);
                        for (a, u) in acc.iter_mut().zip(alg.unit()) {
                            *a += c * u;
                        }
                    }
                    assert!(acc.iter().all(Zero::is_zero), "{name}");
                }
                structure::FieldVerdict::Inconclusive => panic!("{name}: inconclusive"),
            }
        }
    }
}
