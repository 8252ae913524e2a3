use dwork_core::arith::primes::prime_powers_below;
use dwork_core::arith::{CyclotomicInt, Fe, FiniteField, Matrix};
use dwork_core::monodromy::*;
use dwork_core::params::{grid_b_set, EigenvalueSet};
use proptest::prelude::*;

#[test]
fn local_data_on_small_grid() {
    let mut cases = 0;
    for n in 2..=6u64 {
        for modulus in [5u64, 7, 11, 13] {
            let Some((b, _)) = grid_b_set(n, modulus) else { continue };
            for (p, k) in prime_powers_below(300) {
                if (p.pow(k) - 1) % modulus != 0 {
                    continue;
                }
                let f = FiniteField::build(p, k).unwrap();
                let t = build_integral_pair(n as usize, modulus, &f, &b).unwrap();
                let r = verify_local_data(&t, &b);
                assert!(r.all_pass(), "n={n} N={modulus} q={}: {:?}", f.order(), r.failed());
                cases += 1;
            }
        }
    }
    assert!(cases > 50);
}

#[test]
fn sl2_orders() {
    for (modulus, q, b, order) in [(5u64, 11u64, [2i64, 3], 1320u64), (7, 29, [3, 4], 24360)] {
        let f = FiniteField::build(q, 1).unwrap();
        let b = EigenvalueSet::new(modulus, &b).unwrap();
        let t = build_integral_pair(2, modulus, &f, &b).unwrap();
        let c = classify_image(&t, DEFAULT_BFS_CAP);
        assert_eq!(c.verdict, Verdict::FullSl);
        assert_eq!(c.bfs.unwrap().order, order);
        assert_eq!(sl_order(2, q), Some(order as u128));
    }
}

#[test]
fn symplectic_control_and_alpha_stable_sets() {
    let f = FiniteField::build(2, 3).unwrap();
    let b = EigenvalueSet::new(7, &[1, 6, 2, 5]).unwrap();
    let t = build_integral_pair(4, 7, &f, &b).unwrap();
    let form = invariant_bilinear_form(&t.generators());
    let m = form.alternating.expect("minus-stable set preserves an alternating form");
    assert!(!m.is_zero());

    // Non-minus-stable closed-form sets: no invariant bilinear form at all.
    for (n, modulus, q) in [(3u64, 11u64, 23u64), (4, 11, 23), (5, 13, 53)] {
        let (b, derived) = grid_b_set(n, modulus).unwrap();
        assert!(derived && !b.is_minus_stable());
        let f = FiniteField::build(q, 1).unwrap();
        let t = build_integral_pair(n as usize, modulus, &f, &b).unwrap();
        let form = invariant_bilinear_form(&t.generators());
        assert!(form.alternating.is_none(), "n={n} N={modulus}");
        assert_eq!(form.dimension, 0);
    }
}

#[test]
fn goursat_product_over_f7_f13() {
    let b = EigenvalueSet::new(3, &[1, 2]).unwrap();
    let f7 = FiniteField::build(7, 1).unwrap();
    let f13 = FiniteField::build(13, 1).unwrap();
    let t7 = build_integral_pair(2, 3, &f7, &b).unwrap();
    let t13 = build_integral_pair(2, 3, &f13, &b).unwrap();
    let c7 = classify_image(&t7, DEFAULT_BFS_CAP);
    let c13 = classify_image(&t13, DEFAULT_BFS_CAP);
    let v = product_goursat_check(2, &c7, &f7, &c13, &f13).unwrap();
    assert!(v.surjective);
    let bfs = bfs_product_order(&t7, &t13, 1_000_000);
    assert!(bfs.complete);
    assert_eq!(bfs.order, 336 * 2184);
}

#[test]
fn subfield_case_over_f8() {
    let f = FiniteField::build(2, 3).unwrap();
    let b = EigenvalueSet::new(7, &[1, 2, 4]).unwrap();
    let t = build_integral_pair(3, 7, &f, &b).unwrap();
    let c = classify_image(&t, DEFAULT_BFS_CAP);
    assert_eq!(c.verdict, Verdict::SubfieldDefined);
    assert_eq!(c.bfs.unwrap().order, sl_order(3, 2).unwrap() as u64);
}

/// A random invertible matrix over F_q from a seed, by rejection.
fn invertible(f: &FiniteField, n: usize, seed: &[u64]) -> Option<Matrix> {
    let q = f.order();
    let rows = seed.chunks(n).take(n).map(|r| r.iter().map(|&x| f.from_u64(x % q)).collect()).collect();
    let m = Matrix::from_rows(f, rows);
    m.inverse().map(|_| m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_survive_conjugation(seed in prop::collection::vec(any::<u64>(), 9)) {
        let f = FiniteField::build(29, 1).unwrap();
        let b = EigenvalueSet::new(7, &[1, 2, 4]).unwrap();
        let t = build_integral_pair(3, 7, &f, &b).unwrap();
        let Some(h) = invertible(&f, 3, &seed) else { return Ok(()) };
        let hi = h.inverse().unwrap();
        let conj = |g: &Matrix| hi.mul(g).mul(&h);
        let mut u = t.clone();
        u.g0 = conj(&t.g0);
        u.g1 = conj(&t.g1);
        u.ginf = conj(&t.ginf);
        prop_assert!(verify_local_data(&u, &b).all_pass());
        prop_assert_eq!(
            absolutely_irreducible(&u.generators()),
            absolutely_irreducible(&t.generators())
        );
        prop_assert_eq!(
            invariant_bilinear_form(&u.generators()).dimension,
            invariant_bilinear_form(&t.generators()).dimension
        );
        prop_assert_eq!(trace_field(&u.generators(), 3).degree, trace_field(&t.generators(), 3).degree);
    }

    #[test]
    fn root_choice_does_not_change_local_data(k in 1u64..7) {
        let f = FiniteField::build(29, 1).unwrap();
        let b = EigenvalueSet::new(7, &[3, 4]).unwrap();
        let z = CyclotomicInt::assigned_root(7, &f).unwrap();
        let zk = f.pow(z, k);
        let t = build_companion_pair(2, 7, &f, zk, &b).unwrap();
        prop_assert!(verify_local_data(&t, &b).all_pass());
        prop_assert_eq!(t.g0.mul(&t.g1).mul(&t.ginf), Matrix::identity(&f, 2));
        prop_assert_eq!(t.g1.det(), Fe(1));
    }
}
