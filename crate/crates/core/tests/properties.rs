//! Property tests for the algebraic and geometric invariants.

use latcast_core::fp::{FpMatrix, PrimeField};
use latcast_core::lattice::{LatticeFamily, LatticeSpec};
use latcast_core::vecmath::{add, norm, sub};
use proptest::prelude::*;

fn family_and_dim() -> impl Strategy<Value = (LatticeFamily, usize)> {
    prop_oneof![
        (1usize..=6).prop_map(|n| (LatticeFamily::Zn, n)),
        (2usize..=6).prop_map(|n| (LatticeFamily::Dn, n)),
        Just((LatticeFamily::E8, 8)),
    ]
}

proptest! {
    #[test]
    fn mod_lattice_is_distributive(
        (family, n) in family_and_dim(),
        scale in 0.5f64..4.0,
        seed_a in proptest::collection::vec(-10.0f64..10.0, 8),
        seed_b in proptest::collection::vec(-10.0f64..10.0, 8),
    ) {
        let l = LatticeSpec::new(family, n, scale).unwrap();
        let a = &seed_a[..n];
        let b = &seed_b[..n];
        let lhs = l.mod_lattice(&add(a, b)).unwrap();
        let rhs = l.mod_lattice(&add(&l.mod_lattice(a).unwrap(), b)).unwrap();
        for (x, y) in lhs.iter().zip(&rhs) {
            prop_assert!((x - y).abs() < 1e-9, "{lhs:?} vs {rhs:?}");
        }
    }

    #[test]
    fn mod_lattice_is_idempotent_and_zero_on_lattice(
        (family, n) in family_and_dim(),
        scale in 0.5f64..4.0,
        point in proptest::collection::vec(-10.0f64..10.0, 8),
        coeffs in proptest::collection::vec(-4i64..=4, 8),
    ) {
        let l = LatticeSpec::new(family, n, scale).unwrap();
        let x = &point[..n];
        let m = l.mod_lattice(x).unwrap();
        let mm = l.mod_lattice(&m).unwrap();
        prop_assert!(norm(&sub(&m, &mm)) < 1e-9);

        let real: Vec<f64> = coeffs[..n].iter().map(|&c| c as f64).collect();
        let lp = l.lattice_point(&real);
        prop_assert!(norm(&l.mod_lattice(&lp).unwrap()) < 1e-9);
    }

    #[test]
    fn solver_and_kernel_invariants(
        p_idx in 0usize..3,
        rows in 1usize..5,
        cols in 1usize..5,
        entries in proptest::collection::vec(0u64..7, 25),
        x_entries in proptest::collection::vec(0u64..7, 5),
    ) {
        let p = [2u64, 3, 7][p_idx];
        let field = PrimeField::new(p).unwrap();
        let row_data: Vec<Vec<u64>> = (0..rows)
            .map(|i| (0..cols).map(|j| entries[i * 5 + j] % p).collect())
            .collect();
        let m = FpMatrix::from_rows(field, &row_data);

        let basis = m.null_space_basis();
        prop_assert!(m.mul(&basis).is_zero());
        prop_assert_eq!(basis.rank(), cols - m.rank());
        prop_assert_eq!(m.rank(), m.transpose().rank());

        let x = FpMatrix::column_vector(field, &x_entries[..cols].iter().map(|&e| e % p).collect::<Vec<_>>());
        let u = m.mul(&x);
        let v = m.particular_solution(&u).unwrap();
        prop_assert_eq!(m.mul(&v), u);
    }
}
