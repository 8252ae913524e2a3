use dwork_core::arith::primes::{gcd, is_prime};
use dwork_core::arith::residue::multiplicative_order;
use dwork_core::arith::{CyclotomicInt, Fe, FiniteField, Matrix, Poly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn naive_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

/// det(M) by the permutation expansion, independent of elimination.
fn leibniz_det(m: &Matrix) -> Fe {
    let f = m.field();
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Fe(0);
    fn sign(p: &[usize]) -> bool {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }
    loop {
        let mut term = Fe(1);
        for (i, &j) in perm.iter().enumerate() {
            term = f.mul(term, m.get(i, j));
        }
        total = if sign(&perm) { f.add(total, term) } else { f.sub(total, term) };
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return total;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn small_field() -> impl Strategy<Value = FiniteField> {
    prop::sample::select(vec![(2u64, 1u32), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4), (11, 1)])
        .prop_map(|(p, k)| FiniteField::build(p, k).unwrap())
}

fn square_matrix() -> impl Strategy<Value = Matrix> {
    (small_field(), 1usize..=5).prop_flat_map(|(f, n)| {
        let q = f.order();
        prop::collection::vec(0..q, n * n).prop_map(move |v| {
            let rows = v.chunks(n).map(|r| r.iter().map(|&x| f.from_u64(x)).collect()).collect();
            Matrix::from_rows(&f, rows)
        })
    })
}

proptest! {
    #[test]
    fn order_matches_naive_loop(a in 1u64..2000, m in 2u64..2000) {
        prop_assume!(gcd(a, m) == 1);
        prop_assert_eq!(multiplicative_order(a, m).unwrap(), naive_order(a, m));
    }

    #[test]
    fn field_laws(f in small_field(), xs in prop::collection::vec(any::<u64>(), 3)) {
        let q = f.order();
        let [x, y, z] = [0, 1, 2].map(|i| f.from_u64(xs[i] % q));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.pow(x, q), x);
        if x != Fe(0) {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe(1));
        }
        let p = f.characteristic();
        prop_assert_eq!(f.frobenius(f.add(x, y), 1), f.add(f.pow(x, p), f.pow(y, p)));
    }

    #[test]
    fn cayley_hamilton_and_leibniz(m in square_matrix()) {
        let f = m.field().clone();
        let cp = m.charpoly();
        prop_assert_eq!(cp.degree(), Some(m.rows()));
        prop_assert!(cp.is_monic());
        prop_assert!(m.eval_poly(&cp).is_zero());
        for c in f.elements().take(8) {
            let shifted = Matrix::identity(&f, m.rows()).scale(c).sub(&m);
            prop_assert_eq!(cp.eval(c), leibniz_det(&shifted));
        }
        prop_assert_eq!(m.det(), leibniz_det(&m));
    }

    #[test]
    fn minpoly_divides_charpoly(m in square_matrix()) {
        let mp = m.minpoly();
        prop_assert!(mp.is_monic());
        prop_assert!(m.eval_poly(&mp).is_zero());
        prop_assert!(mp.divides(&m.charpoly()));
    }

    #[test]
    fn poly_divrem_reconstructs(
        f in small_field(),
        a in prop::collection::vec(any::<u64>(), 0..8),
        b in prop::collection::vec(any::<u64>(), 1..5),
    ) {
        let q = f.order();
        let pa = Poly::new(&f, a.iter().map(|&x| f.from_u64(x % q)).collect());
        let pb = Poly::new(&f, b.iter().map(|&x| f.from_u64(x % q)).collect());
        prop_assume!(!pb.is_zero());
        let (quo, rem) = pa.divrem(&pb);
        prop_assert_eq!(quo.mul(&pb).add(&rem), pa);
        prop_assert!(rem.is_zero() || rem.degree() < pb.degree());
    }
}

/// Conductors paired with a prime field containing μ_m.
const RINGS: [(u64, u64); 5] = [(5, 11), (7, 29), (12, 13), (15, 31), (9, 19)];

fn cyclo_triple() -> impl Strategy<Value = (u64, u64, [CyclotomicInt; 3])> {
    prop::sample::select(RINGS.to_vec()).prop_flat_map(|(m, p)| {
        let coeffs = prop::collection::vec(-50i64..50, m as usize);
        (coeffs.clone(), coeffs.clone(), coeffs).prop_map(move |(a, b, c)| {
            let mk = |v: Vec<i64>| CyclotomicInt::from_coeffs(m, v.into_iter().map(BigInt::from).collect()).unwrap();
            (m, p, [mk(a), mk(b), mk(c)])
        })
    })
}

proptest! {
    #[test]
    fn cyclotomic_ring_laws((m, _, [a, b, c]) in cyclo_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &CyclotomicInt::one(m).unwrap(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn galois_is_a_ring_homomorphism((m, _, [a, b, _]) in cyclo_triple(), k in 1i64..60) {
        prop_assume!(gcd(k as u64, m) == 1);
        let s = |x: &CyclotomicInt| x.galois(k).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn reduction_is_a_ring_homomorphism((_, p, [a, b, _]) in cyclo_triple()) {
        let f = FiniteField::build(p, 1).unwrap();
        let r = |x: &CyclotomicInt| x.reduce_mod_prime(&f).unwrap();
        prop_assert_eq!(r(&(&a * &b)), f.mul(r(&a), r(&b)));
        prop_assert_eq!(r(&(&a + &b)), f.add(r(&a), r(&b)));
    }

    #[test]
    fn embed_then_descend((m, _, [a, _, _]) in cyclo_triple(), k in prop::sample::select(vec![2u64, 3, 7, 11])) {
        prop_assume!(gcd(m, k) == 1);
        let big = a.embed(m * k).unwrap();
        prop_assert_eq!(big.descend(m).unwrap(), a);
    }

    #[test]
    fn exponent_counts_agree_with_zeta_sums(counts in prop::collection::vec(-5i64..5, 21)) {
        let direct = CyclotomicInt::from_exponent_counts(21, &counts).unwrap();
        let mut sum = CyclotomicInt::zero(21).unwrap();
        for (k, &c) in counts.iter().enumerate() {
            sum = &sum + &CyclotomicInt::zeta_pow(21, k as i64).unwrap().scale(&BigInt::from(c));
        }
        prop_assert_eq!(direct, sum);
    }
}

#[test]
fn cyclotomic_polynomials_vanish_at_roots() {
    for (m, p) in RINGS {
        let f = FiniteField::build(p, 1).unwrap();
        let phi = dwork_core::arith::cyclotomic_polynomial(m);
        let poly = Poly::from_ints(&f, &phi);
        for z in f.primitive_roots_of_unity(m).unwrap() {
            assert_eq!(poly.eval(z), Fe(0));
        }
        assert!(is_prime(p));
    }
}

#[test]
fn field_construction_is_deterministic() {
    for (p, k) in [(2, 8), (3, 5), (7, 3), (101, 2)] {
        let a = FiniteField::build(p, k).unwrap();
        let b = FiniteField::build(p, k).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.generator(), b.generator());
        assert!(a.is_generator(a.generator()));
    }
}
