mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;
use partvar::classify::{isomorphic, obfuscation_matrix};
use partvar::cohomring::build_ring;
use partvar::groebner::normal_form;
use partvar::polyring::{LinearForm, ZPoly};
use partvar::rookcomb::{rook_number, FerrersBoard};
use partvar::Partition;

fn board_partition(max_rows: usize, max_part: u32) -> impl Strategy<Value = Vec<u32>> {
    (1..=max_rows).prop_flat_map(move |n| proptest::collection::vec(0..=max_part, n)).prop_map(move |raw| {
        // Cumulative maxima with λᵢ ≥ i, clipped to the bound.
        let mut out = Vec::with_capacity(raw.len());
        let mut prev = 1;
        for (i, r) in raw.into_iter().enumerate() {
            let p = r.max(prev).max(i as u32 + 1);
            out.push(p);
            prev = p;
        }
        out
    })
    .prop_filter("parts within bound", move |p| p.last().is_some_and(|&l| l <= max_part))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn decompose_matches_row_oracle(parts in board_partition(7, 9)) {
        let lam = Partition::new(parts.clone()).unwrap();
        let comps = lam.decompose().unwrap();
        let values = component_values(&parts);
        let rows: usize = comps.components().iter().map(Partition::len).sum();
        prop_assert_eq!(rows, values.iter().flatten().count());
        for c in comps.components() {
            prop_assert!(c.is_indecomposable().unwrap());
        }
        let from_library: Vec<Option<u32>> = lam.row_components().unwrap().into_iter().map(|c| c.map(|(_, v)| v)).collect();
        prop_assert_eq!(from_library, values);
    }

    #[test]
    fn segments_reassemble(parts in board_partition(7, 9)) {
        let lam = Partition::new(parts).unwrap();
        prop_assert_eq!(Partition::reassemble(&lam.segments().unwrap()), lam);
    }

    #[test]
    fn rook_numbers_transpose(parts in board_partition(5, 7)) {
        let b = FerrersBoard::from_partition(&Partition::new(parts.clone()).unwrap());
        let t = b.transpose();
        for k in 0..=parts.len() {
            prop_assert_eq!(rook_number(&b, k), rook_number(&t, k));
        }
    }

    #[test]
    fn delete_row_recurrence(parts in board_partition(5, 7)) {
        prop_assume!(parts.len() >= 2);
        let n = parts.len();
        let b = FerrersBoard::new(parts.clone()).unwrap();
        let smaller = FerrersBoard::new(parts[..n - 1].to_vec()).unwrap();
        for k in 1..=n {
            let factor = BigInt::from(parts[n - 1] as i64 - k as i64 + 1);
            prop_assert_eq!(rook_number(&b, k), rook_number(&smaller, k) + factor * rook_number(&smaller, k - 1));
        }
    }

    #[test]
    fn table_orders_match_expansion(parts in board_partition(4, 6), coeffs in proptest::collection::vec(-2i64..=2, 4)) {
        let lam = Partition::new(parts.clone()).unwrap();
        let r = build_ring(&lam).unwrap();
        let c = &coeffs[..parts.len()];
        let want = order_by_expansion(&linear(c), r.basis().unwrap(), 40).unwrap() as usize;
        prop_assert_eq!(r.nilpotence_order(&LinearForm::new(c.to_vec())).unwrap(), want);
    }

    #[test]
    fn orders_survive_coordinate_changes(parts in board_partition(4, 6), seed in 0u64..1000, coeffs in proptest::collection::vec(-2i64..=2, 4)) {
        let lam = Partition::new(parts.clone()).unwrap();
        let n = parts.len();
        let r = build_ring(&lam).unwrap();
        let a = obfuscation_matrix(n, seed);
        let hidden = r.obfuscate(&a).unwrap();
        // c' = Aᵀc names the same element in the new generators.
        let c = &coeffs[..n];
        let moved: Vec<i64> = (0..n).map(|j| (0..n).map(|i| a[i][j] * c[i]).sum()).collect();
        prop_assert_eq!(
            hidden.nilpotence_order(&LinearForm::new(moved)).unwrap(),
            r.nilpotence_order(&LinearForm::new(c.to_vec())).unwrap()
        );
        prop_assert_eq!(hidden.hilbert_series(), r.hilbert_series());
    }

    #[test]
    fn isomorphism_is_symmetric(a in board_partition(6, 8), b in board_partition(6, 8)) {
        let (a, b) = (Partition::new(a).unwrap(), Partition::new(b).unwrap());
        prop_assert_eq!(isomorphic(&a, &b).unwrap().isomorphic, isomorphic(&b, &a).unwrap().isomorphic);
        prop_assert!(isomorphic(&a, &a).unwrap().isomorphic);
    }

    #[test]
    fn normal_form_is_multiplicative(parts in board_partition(4, 6), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = parts.len();
        let basis = partvar::cohomring::bases::standard_basis(&Partition::new(parts).unwrap()).unwrap();
        let (f, g) = (random_poly(&mut rng, n, 4, 3), random_poly(&mut rng, n, 4, 3));
        let nf = |p: &ZPoly| normal_form(p, &basis).unwrap();
        prop_assert_eq!(nf(&f.mul(&g)), nf(&nf(&f).mul(&nf(&g))));
    }
}
