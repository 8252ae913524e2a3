use dwork_core::arith::primes::prime_powers_below;
use dwork_core::gauss::*;
use dwork_core::params::{build_exponents, derive_b_set, CharacterExponents, EigenvalueSet};

fn contexts(modulus: u64, limit: u64) -> Vec<GaussSumContext> {
    prime_powers_below(limit)
        .into_iter()
        .filter(|&(p, k)| p != 2 && (p.pow(k) - 1) % modulus == 0)
        .map(|(p, k)| GaussSumContext::new(p, k, modulus, 1).unwrap())
        .collect()
}

fn case(n: u64, modulus: u64) -> (CharacterExponents, EigenvalueSet) {
    let e = build_exponents(n, modulus).unwrap();
    let b = derive_b_set(&e).unwrap();
    (e, b)
}

#[test]
fn pairing_is_plus_or_minus_q() {
    let mut checked = 0;
    for modulus in [5u64, 7, 11, 13] {
        for ctx in contexts(modulus, 201) {
            for a in 1..modulus as i64 {
                let sign = pairing_sign(&ctx, a).unwrap();
                assert_eq!(sign, predicted_pairing_sign(&ctx, a), "q={} N={modulus} a={a}", ctx.q());
                checked += 1;
            }
            let fp = full_product_identity(&ctx);
            assert!(fp.square_holds);
            assert!(fp.sign.is_some());
        }
    }
    assert!(checked > 100);
}

#[test]
fn integral_product_and_galois_on_grid() {
    let mut grid: Vec<(u64, u64)> = vec![(2, 5), (2, 7), (2, 11), (2, 13), (3, 11), (4, 11)];
    grid.retain(|&(n, m)| build_exponents(n, m).is_ok());
    for (n, modulus) in grid {
        let (e, b) = case(n, modulus);
        for ctx in contexts(modulus, 201).into_iter().take(3) {
            let r = integral_product_check(&ctx, &e, &b).unwrap();
            assert!(r.holds, "n={n} N={modulus} q={}", ctx.q());
            let g = galois_invariance(&ctx, &b).unwrap();
            assert_eq!(g.checked.len() as u64, ctx.p() - 1);
            assert!(g.passes(), "n={n} N={modulus} q={}: {:?}", ctx.q(), g.failures);
        }
    }
}

#[test]
fn worked_cases_at_q11_and_q29() {
    for (modulus, q) in [(5u64, 11u64), (7, 29)] {
        let ctx = GaussSumContext::for_order(q, modulus, 1).unwrap();
        let (e, b) = case(2, modulus);
        assert!(integral_product_check(&ctx, &e, &b).unwrap().holds);
        assert_eq!(galois_invariance(&ctx, &b).unwrap().conjugation, Some((true, true)));
        let psi = psi_independence(&ctx, &e, &b).unwrap();
        assert!(psi.scalars_agree);
        assert!(galois_permutes_gauss_sums(&ctx).unwrap());
    }
}

#[test]
fn membership_and_integrality() {
    for (n, modulus, q) in [(2u64, 5u64, 11u64), (2, 7, 29), (2, 5, 31), (3, 11, 23)] {
        let ctx = GaussSumContext::for_order(q, modulus, 1).unwrap();
        let (e, b) = case(n, modulus);
        for l in [19u64, 29] {
            if l == ctx.p() {
                assert!(frobenius_det_membership(&ctx, &e, &b, l).is_err());
                continue;
            }
            let r = frobenius_det_membership(&ctx, &e, &b, l).unwrap();
            assert!(r.orders_agree);
            assert!(r.member, "n={n} N={modulus} q={q} l={l}");
            assert_eq!(r.determinant.conductor(), modulus);
            assert_eq!(r.target_degree % 2, 0);
        }
    }
}

#[test]
fn prime_power_field() {
    // q = 9, N = 4: a context over a non-prime field.
    let ctx = GaussSumContext::for_order(9, 4, 1).unwrap();
    for a in 1..4 {
        assert_eq!(pairing_sign(&ctx, a).unwrap(), predicted_pairing_sign(&ctx, a));
    }
    assert!(full_product_identity(&ctx).square_holds);
}

#[test]
fn trivial_modulus() {
    let ctx = GaussSumContext::for_order(7, 1, 1).unwrap();
    let fp = full_product_identity(&ctx);
    assert_eq!(fp.sign, Some(1));
    assert!(fp.square_holds);
}

#[test]
fn invalid_contexts() {
    assert!(GaussSumContext::for_order(8, 7, 1).is_err());
    assert!(GaussSumContext::for_order(13, 5, 1).is_err());
    assert!(GaussSumContext::for_order(15, 7, 1).is_err());
    assert!(GaussSumContext::for_order(11, 5, 11).is_err());
}

#[test]
fn mismatched_modulus_rejected() {
    let ctx = GaussSumContext::for_order(29, 7, 1).unwrap();
    let (e, b) = case(2, 5);
    assert!(integral_product_check(&ctx, &e, &b).is_err());
}
