//! Property tests over randomized matrices and states. Inputs are drawn
//! through the crate's seeded generator so every failure reproduces from the
//! printed seed.

use num_complex::Complex64;
use proptest::prelude::*;

use remo::criteria::{self, Criterion};
use remo::linalg::{hermitian_eigenvalues, kron, matmul, singular_values, ComplexMatrix};
use remo::moments::{centered_moments, pt_moments, realignment_moments};
use remo::reshape::{partial_trace, partial_transpose, realign, vec_row, BipartiteDims, Subsystem};
use remo::rng::Rng;
use remo::states::{parse_state, random_density, random_separable, serialize_state};

fn random_matrix(rng: &mut Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| rng.standard_complex())
}

fn random_hermitian(rng: &mut Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    g.add(&g.dagger()).unwrap().scale_re(0.5)
}

/// Unitary matrix from Gram-Schmidt orthonormalization of a Gaussian matrix.
fn random_unitary(rng: &mut Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let delta = proj * cols[k][i];
                cols[j][i] -= delta;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

fn dims_strategy() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 2)), Just((2, 3)), Just((3, 2)), Just((3, 3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dagger_is_an_involution(seed: u64, rows in 1usize..5, cols in 1usize..5) {
        let mut rng = Rng::seed_from(seed);
        let a = random_matrix(&mut rng, rows, cols);
        prop_assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn kron_trace_is_multiplicative(seed: u64, n in 1usize..4, m in 1usize..4) {
        let mut rng = Rng::seed_from(seed);
        let a = random_matrix(&mut rng, n, n);
        let b = random_matrix(&mut rng, m, m);
        let lhs = kron(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        prop_assert!((lhs - rhs).norm() < 1e-11 * rhs.norm().max(1.0));
    }

    #[test]
    fn realignment_is_an_entry_permutation(seed: u64, (da, db) in dims_strategy()) {
        let mut rng = Rng::seed_from(seed);
        let dims = BipartiteDims::new(da, db).unwrap();
        let d = dims.total();
        let z = random_matrix(&mut rng, d, d);
        let r = realign(&z, dims).unwrap();
        let (nz, nr) = (z.frobenius_norm(), r.frobenius_norm());
        prop_assert!((nz - nr).abs() < 1e-12 * nz.max(1.0));

        // and indeed a permutation: sorted absolute entries agree
        let mut a: Vec<f64> = z.entries().iter().map(|e| e.norm_sqr()).collect();
        let mut b: Vec<f64> = r.entries().iter().map(|e| e.norm_sqr()).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity(seed: u64, (da, db) in dims_strategy()) {
        let mut rng = Rng::seed_from(seed);
        let dims = BipartiteDims::new(da, db).unwrap();
        let h = random_hermitian(&mut rng, dims.total());
        let pt = partial_transpose(&h, dims).unwrap();
        prop_assert!((pt.trace() - h.trace()).norm() < 1e-12);
        prop_assert!(pt.hermitian_deviation() < 1e-12);
        let back = partial_transpose(&pt, dims).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn partial_trace_preserves_trace(seed: u64, (da, db) in dims_strategy()) {
        let mut rng = Rng::seed_from(seed);
        let dims = BipartiteDims::new(da, db).unwrap();
        let z = random_matrix(&mut rng, dims.total(), dims.total());
        for keep in [Subsystem::A, Subsystem::B] {
            let reduced = partial_trace(&z, dims, keep).unwrap();
            prop_assert!((reduced.trace() - z.trace()).norm() < 1e-12);
        }
    }

    #[test]
    fn vec_row_reshapes_without_loss(seed: u64, rows in 1usize..5, cols in 1usize..5) {
        let mut rng = Rng::seed_from(seed);
        let a = random_matrix(&mut rng, rows, cols);
        let v = vec_row(&a);
        prop_assert_eq!(v.rows(), 1);
        prop_assert_eq!(v.cols(), rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                prop_assert_eq!(v.get(0, c * rows + r), a.get(r, c));
            }
        }
    }

    #[test]
    fn eigenvalue_sum_is_trace(seed: u64, n in 2usize..8) {
        let mut rng = Rng::seed_from(seed);
        let h = random_hermitian(&mut rng, n);
        let eig = hermitian_eigenvalues(&h).unwrap();
        let trace = h.trace().re;
        prop_assert!((eig.sum() - trace).abs() < 1e-10 * trace.abs().max(1.0));
        // descending order
        for w in eig.values().windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn singular_values_square_to_gram_eigenvalues(seed: u64, rows in 2usize..5, cols in 2usize..5) {
        let mut rng = Rng::seed_from(seed);
        let a = random_matrix(&mut rng, rows, cols);
        let sv = singular_values(&a).unwrap();
        prop_assert_eq!(sv.len(), rows.min(cols));
        let gram = matmul(&a, &a.dagger()).unwrap();
        let eig = hermitian_eigenvalues(&gram).unwrap();
        for (s, l) in sv.values().iter().zip(eig.values()) {
            let expect = l.max(0.0).sqrt();
            prop_assert!((s - expect).abs() < 1e-9 * expect.max(1.0));
        }
    }

    #[test]
    fn singular_values_are_unitarily_invariant(seed: u64, n in 2usize..5) {
        let mut rng = Rng::seed_from(seed);
        let a = random_matrix(&mut rng, n, n);
        let u = random_unitary(&mut rng, n);
        let sa = singular_values(&a).unwrap();
        let sua = singular_values(&matmul(&u, &a).unwrap()).unwrap();
        for (x, y) in sa.values().iter().zip(sua.values()) {
            prop_assert!((x - y).abs() < 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn moment_identities_on_random_states(seed: u64, (da, db) in dims_strategy()) {
        let dims = BipartiteDims::new(da, db).unwrap();
        let s = random_density(dims, seed);
        let r = realignment_moments(&s, 3).unwrap();
        let p = pt_moments(&s, 2).unwrap();
        let purity = s.purity();
        prop_assert!((r.get(2) - purity).abs() < 1e-10);
        prop_assert!((p.get(2) - purity).abs() < 1e-10);
        prop_assert!((p.get(1) - 1.0).abs() < 1e-10);
        // Schatten-norm inequality, all states
        prop_assert!(r.get(2) * r.get(2) <= r.get(1) * r.get(3) + 1e-12);
    }

    #[test]
    fn product_states_have_no_centered_moments(seed: u64, (da, db) in dims_strategy()) {
        let dims = BipartiteDims::new(da, db).unwrap();
        let s = random_separable(dims, 1, seed).unwrap();
        let q = centered_moments(&s, 3).unwrap();
        for k in 1..=3 {
            prop_assert!(q.get(k).abs() < 1e-9);
        }
        // CCNR necessary condition on products: r1 = sqrt(TrA²·TrB²) ≤ 1
        let r = realignment_moments(&s, 1).unwrap();
        prop_assert!(r.get(1) <= 1.0 + 1e-9);
        let expect = (s.reduced_purity(Subsystem::A) * s.reduced_purity(Subsystem::B)).sqrt();
        prop_assert!((r.get(1) - expect).abs() < 1e-9);
    }

    #[test]
    fn b_hat_one_verdict_equals_r_moment_verdict(seed: u64) {
        let dims = BipartiteDims::new(2, 2).unwrap();
        let s = random_density(dims, seed);
        let e = criteria::evaluate(&s).unwrap();
        prop_assert_eq!(
            e.group_entangled(Criterion::RMoment),
            e.group_entangled(Criterion::RHankel)
        );
    }

    #[test]
    fn r_moment_flag_implies_ccnr_flag(seed: u64, (da, db) in dims_strategy()) {
        let dims = BipartiteDims::new(da, db).unwrap();
        let s = random_density(dims, seed);
        let e = criteria::evaluate(&s).unwrap();
        if e.group_entangled(Criterion::RMoment) {
            prop_assert!(e.group_entangled(Criterion::Ccnr));
        }
    }

    #[test]
    fn state_documents_round_trip_exactly(seed: u64, (da, db) in dims_strategy()) {
        let dims = BipartiteDims::new(da, db).unwrap();
        let s = random_density(dims, seed);
        let back = parse_state(&serialize_state(&s)).unwrap();
        prop_assert_eq!(s, back);
    }
}
