use crate::arith::{CyclotomicInt, Fe, FiniteField, Matrix, Poly};
use crate::params::EigenvalueSet;
use crate::{Error, Result};

/// Images of the loops around 0, 1, ∞, with g0·g1·g∞ = 1.
#[derive(Clone, Debug)]
pub struct MonodromyTriple {
    pub field: FiniteField,
    pub n: usize,
    pub modulus: u64,
    pub zeta: Fe,
    pub b: EigenvalueSet,
    pub g0: Matrix,
    pub g1: Matrix,
    pub ginf: Matrix,
}

impl MonodromyTriple {
    /// Generators used for every group computation.
    pub fn generators(&self) -> [Matrix; 2] {
        [self.g0.clone(), self.g1.clone()]
    }
}

/// ∏ (X − ζ^{e·b}) over the eigenvalue set.
fn eigen_poly(field: &FiniteField, zeta: Fe, b: &EigenvalueSet, sign: i64) -> Poly {
    let n = b.modulus() as i64;
    let roots: Vec<Fe> = b.members().iter().map(|&x| field.pow(zeta, (sign * x as i64).rem_euclid(n) as u64)).collect();
    Poly::from_roots(field, &roots)
}

/// A = companion of (X − 1)^n, B = companion of ∏(X − ζ^{−b}); the triple is
/// (B^{−1}, B·A^{−1}, A).
pub fn build_companion_pair(
    n: usize,
    modulus: u64,
    field: &FiniteField,
    zeta: Fe,
    b: &EigenvalueSet,
) -> Result<MonodromyTriple> {
    if field.element_order(zeta) != Some(modulus) {
        return Err(Error::InvalidParameter(format!("zeta = {zeta} does not have exact order {modulus}")));
    }
    if b.modulus() != modulus || b.len() != n {
        return Err(Error::InvalidParameter(format!(
            "eigenvalue set {:?} mod {} does not match n = {n}, N = {modulus}",
            b.members(),
            b.modulus()
        )));
    }
    let a_poly = Poly::linear(field, Fe(1)).pow(n as u32);
    let b_poly = eigen_poly(field, zeta, b, -1);
    let a = Matrix::companion(&a_poly);
    let bm = Matrix::companion(&b_poly);
    let a_inv = a.inverse().expect("unipotent companion is invertible");
    let g0 = bm.inverse().ok_or_else(|| Error::CheckFailed("B is singular".into()))?;
    let g1 = bm.mul(&a_inv);
    let t = MonodromyTriple { field: field.clone(), n, modulus, zeta, b: b.clone(), g0, g1, ginf: a };
    if !t.g0.mul(&t.g1).mul(&t.ginf).is_identity() {
        return Err(Error::CheckFailed("g0·g1·ginf != 1".into()));
    }
    for (name, g) in [("g0", &t.g0), ("g1", &t.g1), ("ginf", &t.ginf)] {
        if g.det() != Fe(1) {
            return Err(Error::CheckFailed(format!("det {name} != 1")));
        }
    }
    Ok(t)
}

/// The same construction with coefficients first computed in Z[ζ_N] and then
/// reduced through the deterministic root assignment; the two routes to the
/// B-polynomial are compared.
pub fn build_integral_pair(n: usize, modulus: u64, field: &FiniteField, b: &EigenvalueSet) -> Result<MonodromyTriple> {
    let zeta = CyclotomicInt::assigned_root(modulus, field)?;
    // Elementary symmetric functions of ζ^{−b} in Z[ζ_N].
    let mut coeffs = vec![CyclotomicInt::one(modulus)?];
    for &x in b.members() {
        let root = CyclotomicInt::zeta_pow(modulus, -(x as i64))?;
        let mut next = vec![CyclotomicInt::zero(modulus)?; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &root);
        }
        coeffs = next;
    }
    let reduced: Vec<Fe> = coeffs.iter().map(|c| c.reduce_mod_prime_with(field, zeta)).collect::<Result<_>>()?;
    let t = build_companion_pair(n, modulus, field, zeta, b)?;
    let from_field = eigen_poly(field, zeta, b, -1);
    if Poly::new(field, reduced) != from_field {
        return Err(Error::CheckFailed("integral B-polynomial reduces incorrectly".into()));
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDataReport {
    pub checks: Vec<LocalCheck>,
}

impl LocalDataReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect()
    }
}

/// The four local checks: charpoly(g0) = ∏(X − ζ^b), charpoly(g∞) = (X − 1)^n,
/// minpoly(g∞) = (X − 1)^n, and rank(g1 − 1) = 1 with g1 unipotent.
pub fn verify_local_data(t: &MonodromyTriple, b: &EigenvalueSet) -> LocalDataReport {
    let f = &t.field;
    let unipotent = Poly::linear(f, Fe(1)).pow(t.n as u32);
    let want_g0 = eigen_poly(f, t.zeta, b, 1);
    let cp0 = t.g0.charpoly();
    let cpi = t.ginf.charpoly();
    let mpi = t.ginf.minpoly();
    let id = Matrix::identity(f, t.n);
    let rank = t.g1.sub(&id).rank();
    let g1_unipotent = t.g1.charpoly() == unipotent;
    let checks = vec![
        LocalCheck { name: "charpoly(g0)", pass: cp0 == want_g0, detail: format!("{cp0} vs {want_g0}") },
        LocalCheck { name: "charpoly(ginf)", pass: cpi == unipotent, detail: format!("{cpi}") },
        LocalCheck { name: "minpoly(ginf)", pass: mpi == unipotent, detail: format!("{mpi}") },
        LocalCheck {
            name: "transvection(g1)",
            pass: rank == 1 && g1_unipotent,
            detail: format!("rank(g1 - 1) = {rank}, unipotent = {g1_unipotent}"),
        },
    ];
    LocalDataReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> MonodromyTriple {
        let f = FiniteField::build(11, 1).unwrap();
        let b = EigenvalueSet::new(5, &[2, 3]).unwrap();
        build_companion_pair(2, 5, &f, Fe(3), &b).unwrap()
    }

    #[test]
    fn worked_pair_over_f11() {
        let t = worked();
        let f = &t.field;
        assert_eq!(t.ginf, Matrix::from_ints(f, &[&[0, -1], &[1, 2]]));
        assert_eq!(t.g1, Matrix::from_ints(f, &[&[1, 0], &[-1, 1]]));
        assert_eq!(t.g0.inverse().unwrap().charpoly(), Poly::from_ints(f, &[1, -3, 1]));
        assert!(verify_local_data(&t, &t.b).all_pass());
    }

    #[test]
    fn identity_g1_fails_transvection() {
        let mut t = worked();
        t.g1 = Matrix::identity(&t.field, 2);
        let r = verify_local_data(&t, &t.b.clone());
        assert_eq!(r.failed(), vec!["transvection(g1)"]);
    }

    #[test]
    fn wrong_order_root_rejected() {
        let f = FiniteField::build(11, 1).unwrap();
        let b = EigenvalueSet::new(5, &[2, 3]).unwrap();
        assert!(build_companion_pair(2, 5, &f, Fe(2), &b).is_err());
    }

    #[test]
    fn integral_route_agrees() {
        let f = FiniteField::build(11, 1).unwrap();
        let b = EigenvalueSet::new(5, &[2, 3]).unwrap();
        let t = build_integral_pair(2, 5, &f, &b).unwrap();
        assert!(verify_local_data(&t, &b).all_pass());
    }
}
