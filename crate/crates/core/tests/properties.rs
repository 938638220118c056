mod common;

use aybe_core::bd::{
    check_complement_split, check_positivity_and_closure, check_triple_equivalence, enumerate, sigma, AssocBD,
    CyclicPerm,
};
use aybe_core::bundles::{bd_from_matrix, SplittingMatrix};
use aybe_core::cmath::c;
use aybe_core::rmatrix::schedler_symmetry;
use aybe_core::tensor::{embed, MatA, Tensor2};
use aybe_core::C64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| c(a, b))
}

fn tensor(n: usize) -> impl Strategy<Value = Tensor2> {
    prop::collection::vec(complex(), n.pow(4)).prop_map(move |v| {
        let mut it = v.into_iter();
        Tensor2::from_coeff_fn(n, |_, _, _, _| it.next().unwrap())
    })
}

fn mat(n: usize) -> impl Strategy<Value = MatA> {
    prop::collection::vec(complex(), n * n).prop_map(move |v| MatA::from_fn(n, |i, j| v[i * n + j]))
}

fn sized_tensors(k: usize) -> impl Strategy<Value = Vec<Tensor2>> {
    (1usize..=3).prop_flat_map(move |n| prop::collection::vec(tensor(n), k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn op_and_pairing_round_trip(ts in sized_tensors(1)) {
        let t = &ts[0];
        let n = t.n();
        let via_op = Tensor2::from_op_matrix(n, t.op_matrix().clone()).unwrap();
        let via_pairing = Tensor2::from_pairing_matrix(n, &t.pairing_matrix()).unwrap();
        prop_assert_eq!(&via_op, t);
        prop_assert_eq!(&via_pairing, t);
    }

    #[test]
    fn compose_distributes(ts in sized_tensors(3)) {
        let (a, b, d) = (&ts[0], &ts[1], &ts[2]);
        let lhs = a.compose(&(b + d)).unwrap();
        let rhs = &a.compose(b).unwrap() + &a.compose(d).unwrap();
        prop_assert!(lhs.dist(&rhs) < 1e-12);
    }

    #[test]
    fn embed_is_multiplicative(ts in sized_tensors(2), slot in 0usize..6) {
        let slots = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)][slot];
        let prod = embed(&ts[0].compose(&ts[1]).unwrap(), slots).unwrap();
        let sep = &embed(&ts[0], slots).unwrap() * &embed(&ts[1], slots).unwrap();
        prop_assert!(prod.dist(&sep) < 1e-11);
    }

    #[test]
    fn embed_swapped_slots_is_swap(ts in sized_tensors(1)) {
        let t = &ts[0];
        prop_assert!(embed(t, (2, 1)).unwrap().dist(&embed(&t.swap_factors(), (1, 2)).unwrap()) < 1e-15);
    }

    #[test]
    fn swap_respects_compose(ts in sized_tensors(2)) {
        let lhs = ts[0].compose(&ts[1]).unwrap().swap_factors();
        let rhs = ts[0].swap_factors().compose(&ts[1].swap_factors()).unwrap();
        prop_assert!(lhs.dist(&rhs) < 1e-12);
        prop_assert_eq!(ts[0].swap_factors().swap_factors(), ts[0].clone());
    }

    #[test]
    fn p_commutes_with_diagonal_action(n in 1usize..=4, entries in prop::collection::vec(complex(), 16)) {
        let a = MatA::from_fn(n, |i, j| entries[i * 4 + j]);
        prop_assert!(Tensor2::perm_p(n).sym_commutator(&a).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn p_conjugates_to_swap(ts in sized_tensors(1)) {
        let t = &ts[0];
        let p = Tensor2::perm_p(t.n());
        prop_assert!(p.compose(t).unwrap().compose(&p).unwrap().dist(&t.swap_factors()) < 1e-12);
    }

    #[test]
    fn project_sl_kills_traces(ts in sized_tensors(1)) {
        let t = ts[0].project_sl(&[1, 2]);
        prop_assert!(t.partial_trace(1).max_abs() < 1e-12);
        prop_assert!(t.partial_trace(2).max_abs() < 1e-12);
    }

    #[test]
    fn kron_mu2_is_product(n in 1usize..=3, a in mat(3), b in mat(3)) {
        let a = MatA::from_fn(n, |i, j| a.get(i, j));
        let b = MatA::from_fn(n, |i, j| b.get(i, j));
        let lhs = Tensor2::kron(&a, &b).unwrap().mu2();
        prop_assert!((&lhs - &(&a * &b)).max_abs() < 1e-12);
    }

    #[test]
    fn cyclic_perm_powers(n in 1usize..=7, k in -20i64..20, shuffle in any::<u64>()) {
        // build a random N-cycle by ordering labels with a seeded key
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (i as u64 + 1).wrapping_mul(shuffle | 1).rotate_left(17));
        let mut images = vec![0; n];
        for w in 0..n {
            images[order[w]] = order[(w + 1) % n];
        }
        let p = CyclicPerm::new(images).unwrap();
        let fwd = p.pow(k);
        let back = p.pow(-k);
        for i in 0..n {
            prop_assert_eq!(back[fwd[i]], i);
        }
        prop_assert_eq!(p.pow(k + n as i64), fwd);
    }
}

#[test]
fn chain_lemmas_hold_for_every_admissible_order_up_to_five() {
    let mut violations_outside = 0;
    for bd in common::structures(5) {
        for obd in bd.orders() {
            let ok = check_triple_equivalence(&obd).is_ok()
                && check_complement_split(&obd).is_ok()
                && check_positivity_and_closure(&obd).is_ok();
            if obd.alpha0_in_gamma2() {
                violations_outside += usize::from(!ok);
            } else {
                assert!(ok, "{obd:?}");
            }
        }
    }
    // the hypothesis α0 ∉ Γ2 is needed
    assert!(violations_outside > 0);
}

#[test]
fn nilpotency_depth_is_bounded() {
    for bd in common::structures(5) {
        let depth = bd.nilpotency_depth();
        assert!(depth <= bd.n() * bd.gamma1().len());
        let last = bd.tau_domain(depth + 1);
        assert!(last.is_empty(), "{bd:?}");
    }
}

#[test]
fn chain_sets_are_related_by_c() {
    for bd in common::structures(5) {
        let (p1, p2) = bd.chain_sets();
        let image: std::collections::BTreeSet<_> = p1.iter().map(|&(a, b)| (bd.c().apply(a), bd.c().apply(b))).collect();
        assert_eq!(&image, p2);
        assert!(p1.iter().all(|&(a, b)| a != b));
    }
}

#[test]
fn opposite_structure_flips_chain_sets() {
    for bd in common::structures(5) {
        let op: AssocBD = bd.opposite();
        let flipped: std::collections::BTreeSet<_> = bd.chain_sets().0.iter().map(|&p| sigma(p)).collect();
        assert_eq!(op.chain_sets().0, &flipped);
    }
}

#[test]
fn enumeration_sizes() {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 3, 14, 38]);
}

#[test]
fn hom_dim_is_one_exactly_at_roots_of_unity() {
    for m in common::matrix_corpus().iter().step_by(7) {
        let big_n = m.big_n();
        for k in 0..big_n {
            let root = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / big_n as f64);
            assert_eq!(m.hom_dim(root), 1, "{:?} at {root}", m.rows());
        }
        for x in [c(0.5, 0.0), c(0.2, 1.3), C64::from_polar(1.0, 0.37)] {
            assert_eq!(m.hom_dim(x), 0, "{:?} at {x}", m.rows());
        }
    }
}

#[test]
fn negation_inverts_c0_and_flips_chain_set() {
    for m in common::matrix_corpus() {
        let neg: SplittingMatrix = m.negated();
        if !neg.is_simple() {
            continue;
        }
        let p = m.p1().unwrap();
        let q = neg.p1().unwrap();
        let flipped: std::collections::BTreeSet<_> = p.iter().map(|&a| sigma(a)).collect();
        assert_eq!(q, flipped, "{:?}", m.rows());
        let a = bd_from_matrix(&m).unwrap();
        let b = bd_from_matrix(&neg).unwrap();
        assert_eq!(b.bd().c0(), &a.bd().c0().inverse());
    }
}

#[test]
fn schedler_symmetry_is_diagonal_with_fractional_entries() {
    for bd in common::structures(4) {
        for i0 in 0..bd.n() {
            if let Ok(a) = schedler_symmetry(&bd, i0) {
                assert!(a.is_diagonal());
                assert_eq!(a.get(i0, i0), c(0.0, 0.0));
                let mut d: Vec<f64> = a.diag().iter().map(|z| z.re * bd.n() as f64).collect();
                d.sort_by(f64::total_cmp);
                for (k, x) in d.iter().enumerate() {
                    assert!((x - k as f64).abs() < 1e-12);
                }
            }
        }
    }
}
