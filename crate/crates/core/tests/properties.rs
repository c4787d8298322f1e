use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::Strategy;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sieve_core::basis::ghz_family_basis;
use sieve_core::matrix::{complete_orthonormal_basis, unitarity_deviation};
use sieve_core::partition::meet_all;
use sieve_core::pauli::ghz_parity_system;
use sieve_core::sieve::{measure_state_in_order, sieve_search};
use sieve_core::system::system_partitions;
use sieve_core::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Kronecker product assembled block by block: block (i, j) is `a[i][j] · b`.
fn block_kronecker(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(a.rows() * p, a.cols() * q);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

fn entry() -> impl Strategy<Value = Complex64> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(entry(), r * c).prop_map(move |d| ComplexMatrix::new(r, c, d).unwrap())
    })
}

fn square(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec(entry(), d * d).prop_map(move |e| ComplexMatrix::new(d, d, e).unwrap())
    })
}

fn state(dim: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec(entry(), dim)
        .prop_filter("non-zero", |v| v.iter().any(|z| z.norm() > 1e-3))
        .prop_map(|v| StateVector::new(v).unwrap().normalized())
}

/// Random unitary from orthonormalising a random spanning set.
fn unitary(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(state(dim), 1..=dim).prop_map(move |vs| {
        let cols = complete_orthonormal_basis(&vs, tol())
            .unwrap_or_else(|_| complete_orthonormal_basis(&vs[..1], tol()).unwrap());
        ComplexMatrix::from_columns(&cols).unwrap()
    })
}

fn permutation(size: usize) -> impl Strategy<Value = SystemPermutation> {
    any::<u64>().prop_map(move |seed| SystemPermutation::random(size, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn partition(ground: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u8..4, ground).prop_map(|keys| Partition::from_keys(&keys))
}

proptest! {
    #[test]
    fn tensor_matches_block_construction(a in square(4), b in square(4)) {
        prop_assert_eq!(tensor(&a, &b).unwrap(), block_kronecker(&a, &b));
    }

    #[test]
    fn tensor_is_associative(a in square(3), b in square(3), c in square(2)) {
        let left = tensor(&tensor(&a, &b).unwrap(), &c).unwrap();
        let right = tensor(&a, &tensor(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12 * left.max_abs().max(1.0));
    }

    #[test]
    fn conjugation_preserves_projector_and_trace(u in unitary(8), perm in permutation(8)) {
        let std = standard_system(3).unwrap();
        let moved = permute_system(&std, &perm, tol()).unwrap();
        let p = &moved.projectors()[0];
        let q = conjugate(&u, p, tol()).unwrap();
        prop_assert!(is_projector(&q, tol()));
        prop_assert!((q.trace() - p.trace()).norm() <= 1e-10);
    }

    #[test]
    fn gram_schmidt_output_is_orthonormal(vs in prop::collection::vec(state(6), 1..=6)) {
        if let Ok(out) = gram_schmidt(&vs, tol()) {
            for (i, a) in out.iter().enumerate() {
                for (j, b) in out.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((a.inner(b) - Complex64::new(expected, 0.0)).norm() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn product_of_unitaries_is_unitary(u in unitary(4), v in unitary(4)) {
        prop_assert!(unitarity_deviation(&u).unwrap() <= 1e-10);
        prop_assert!(is_unitary(&(&u * &v), tol()));
    }

    #[test]
    fn meet_laws(a in partition(8), b in partition(8), c in partition(8)) {
        let ab = meet(&a, &b).unwrap();
        prop_assert!(ab.refines(&a) && ab.refines(&b));
        prop_assert_eq!(&ab, &meet(&b, &a).unwrap());
        prop_assert_eq!(meet(&a, &a).unwrap(), a.clone());
        prop_assert_eq!(meet(&ab, &c).unwrap(), meet(&a, &meet(&b, &c).unwrap()).unwrap());
    }

    #[test]
    fn permutation_is_a_group_action(p in permutation(8), q in permutation(8)) {
        let s = standard_system(3).unwrap();
        let stepwise = permute_system(&permute_system(&s, &p, tol()).unwrap(), &q, tol()).unwrap();
        let composed = permute_system(&s, &q.after(&p).unwrap(), tol()).unwrap();
        prop_assert_eq!(stepwise, composed);
    }

    #[test]
    fn distinct_permutations_give_distinct_systems(p in permutation(8), q in permutation(8)) {
        let s = standard_system(3).unwrap();
        let (sp, sq) = (permute_system(&s, &p, tol()).unwrap(), permute_system(&s, &q, tol()).unwrap());
        prop_assert_eq!(p == q, sp == sq);
    }

    #[test]
    fn permuted_systems_remain_separating(perm in permutation(16)) {
        let s = permute_system(&standard_system(4).unwrap(), &perm, tol()).unwrap();
        let basis = standard_basis(4).unwrap();
        s.certify(tol()).unwrap();
        prop_assert!(verify_requirements(&s, &basis, tol()).unwrap().all_pass());
        let mut values: Vec<usize> = column_codes(&s, tol()).unwrap().iter().map(|c| c.value()).collect();
        values.sort_unstable();
        prop_assert_eq!(values, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn disjoint_site_operators_commute(n in 2usize..=4, a in 0usize..3, b in 0usize..3, s in any::<u16>()) {
        let axes = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
        let i = usize::from(s) % n + 1;
        let j = (i % n) + 1;
        let x = embed(axes[a], i, n).unwrap();
        let y = embed(axes[b], j, n).unwrap();
        prop_assert!(commutator_norm(&x, &y).unwrap() <= 1e-12);
    }

    #[test]
    fn sigma_products_are_half_rank_projectors(axes in "[xyz]{1,4}") {
        let a: AxisAssignment = axes.parse().unwrap();
        let p = sigma_product_proposition(&a).unwrap();
        prop_assert!(is_projector(&p, tol()));
        let half = (1u32 << (a.len() - 1)) as f64;
        prop_assert!((p.trace() - Complex64::new(half, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn transformed_systems_keep_their_codes(u in unitary(8), perm in permutation(8)) {
        let s = permute_system(&standard_system(3).unwrap(), &perm, tol()).unwrap();
        let basis = Basis::from_unitary(&u, (1..=8).map(|k| k.to_string()).collect(), tol()).unwrap();
        let t = transformed_system(&u, &s, tol()).unwrap();
        prop_assert!(verify_requirements(&t, &basis, tol()).unwrap().all_pass());
        let std = standard_basis(3).unwrap();
        for k in 1..=8 {
            prop_assert_eq!(
                route_basis_state(&t, &basis, k, tol()).unwrap(),
                route_basis_state(&s, &std, k, tol()).unwrap()
            );
        }
    }

    #[test]
    fn measurement_is_complete_and_order_independent(v in state(8), seed in any::<u64>()) {
        let (basis, u) = ghz_basis();
        let sys = transformed_system(&u.matrix, &standard_system(3).unwrap(), tol()).unwrap();
        let base = measure_state(&sys, &v, tol()).unwrap();
        prop_assert!((base.total() - 1.0).abs() <= 1e-10);
        // Born rule: detector of basis state k clicks with |<b_k|v>|^2.
        for k in 1..=8 {
            let d = route_basis_state(&sys, &basis, k, tol()).unwrap().detector;
            let born = basis.vector(k).unwrap().inner(&v).norm_sqr();
            prop_assert!((base.probabilities[d - 1] - born).abs() <= 1e-10);
        }
        let mut order = vec![1, 2, 3];
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let other = measure_state_in_order(&sys, &v, &order, tol()).unwrap();
        for (x, y) in base.probabilities.iter().zip(&other.probabilities) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn routing_agrees_with_measurement(n in 1usize..=4, k in any::<u16>()) {
        let s = standard_system(n).unwrap();
        let basis = standard_basis(n).unwrap();
        let k = usize::from(k) % (1 << n) + 1;
        let routed = route_basis_state(&s, &basis, k, tol()).unwrap();
        let dist = measure_state(&s, basis.vector(k).unwrap(), tol()).unwrap();
        prop_assert_eq!(dist.point_mass(tol()), Some(routed.detector));
        prop_assert_eq!(routed.detector, k);
        prop_assert_eq!(sieve_search(n, k).unwrap().questions_asked, n);
    }

    #[test]
    fn matrix_json_round_trip_is_bit_identical(m in matrix(4)) {
        let text = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        for (x, y) in m.entries().iter().zip(back.entries()) {
            prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
            prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn system_json_round_trip(perm in permutation(8)) {
        let s = permute_system(&standard_system(3).unwrap(), &perm, tol()).unwrap();
        let back: PropositionSystem = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn partition_json_round_trip(p in partition(8)) {
        let back: Partition = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn ghz_parity_family_is_atomic_up_to_six_particles() {
    for n in 2..=6 {
        let s = ghz_parity_system(n).unwrap();
        let basis = ghz_family_basis(n).unwrap();
        s.certify(tol()).unwrap();
        let report = verify_requirements(&s, &basis, tol()).unwrap();
        assert!(report.all_pass(), "n = {n}: {report:?}");
        let parts = system_partitions(&s, &basis, tol()).unwrap();
        assert!(is_atomic(&meet_all(&parts).unwrap().unwrap()), "n = {n}");
    }
}

#[test]
fn sieve_search_matches_routing_for_small_n() {
    for n in 1..=4 {
        let s = standard_system(n).unwrap();
        let basis = standard_basis(n).unwrap();
        for k in 1..=(1 << n) {
            let rec = sieve_search(n, k).unwrap();
            assert_eq!(rec.questions_asked, n);
            assert_eq!(route_basis_state(&s, &basis, k, tol()).unwrap().detector, k);
        }
    }
}
