//! Dense matrices over a finite field.

use std::fmt;

use super::field::{Fe, FiniteField};
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![Fe(0); rows * cols] }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe(1));
        }
        m
    }

    pub fn from_rows(field: &FiniteField, rows: Vec<Vec<Fe>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(field: &FiniteField, rows: &[&[i64]]) -> Self {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())
    }

    pub fn diagonal(field: &FiniteField, diag: &[Fe]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Companion matrix of a monic polynomial X^n + c_1 X^{n-1} + ... + c_n:
    /// ones on the subdiagonal, last column (−c_n, ..., −c_1) from top to bottom.
    pub fn companion(poly: &Poly) -> Self {
        assert!(poly.is_monic(), "companion matrix needs a monic polynomial");
        let f = poly.field();
        let n = poly.degree().unwrap();
        let mut m = Self::zeros(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, Fe(1));
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(poly.coeff(i)));
        }
        m
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major entries; doubles as the canonical serialization.
    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).0).collect()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Self { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Self { data, ..self.clone() }
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &self.field;
        Self { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn map(&self, g: impl Fn(Fe) -> Fe) -> Self {
        Self { data: self.data.iter().map(|&a| g(a)).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Fe(0) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows).map(|i| (0..self.cols).fold(Fe(0), |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> Fe {
        (0..self.rows.min(self.cols)).fold(Fe(0), |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.field, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == Fe(0))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != Fe(0)) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == Fe(0) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : Mv = 0}, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Fe(0); self.cols];
            v[free] = Fe(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Fe {
        assert!(self.is_square());
        let f = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Fe(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != Fe(0)) else {
                return Fe(0);
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == Fe(0) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe(1));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Characteristic polynomial det(X·I − M), by similarity reduction to
    /// upper Hessenberg form followed by the standard determinant recurrence.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h.get(i, j) != Fe(0)) else {
                continue;
            };
            h.swap_rows(i, j + 1);
            h.swap_cols(i, j + 1);
            let inv = f.inv(h.get(j + 1, j)).unwrap();
            for k in j + 2..n {
                let u = f.mul(h.get(k, j), inv);
                if u == Fe(0) {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(k, c), f.mul(u, h.get(j + 1, c)));
                    h.set(k, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), f.mul(u, h.get(r, k)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p[m] is the charpoly of the leading m×m block.
        let mut p = vec![Poly::one(&f)];
        for m in 1..=n {
            let mut next = Poly::linear(&f, h.get(m - 1, m - 1)).mul(&p[m - 1]);
            let mut t = Fe(1);
            for i in (1..m).rev() {
                t = f.mul(t, h.get(i, i - 1));
                let c = f.mul(h.get(i - 1, m - 1), t);
                if c != Fe(0) {
                    next = next.sub(&p[i - 1].scale(c));
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Horner evaluation of a polynomial at this matrix.
    pub fn eval_poly(&self, poly: &Poly) -> Self {
        let n = self.rows;
        let id = Self::identity(&self.field, n);
        poly.coeffs().iter().rev().fold(Self::zeros(&self.field, n, n), |acc, &c| acc.mul(self).add(&id.scale(c)))
    }

    /// Minimal polynomial: lcm over basis vectors e_k of the least monic
    /// polynomial annihilating e_k, read off the first Krylov dependency.
    pub fn minpoly(&self) -> Poly {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut result = Poly::one(f);
        for k in 0..n {
            let mut v = vec![Fe(0); n];
            v[k] = Fe(1);
            let mut krylov = vec![v];
            loop {
                let next = self.mul_vec(krylov.last().unwrap());
                krylov.push(next);
                let d = krylov.len();
                let mut cols = Self::zeros(f, n, d);
                for (j, col) in krylov.iter().enumerate() {
                    for (i, &x) in col.iter().enumerate() {
                        cols.set(i, j, x);
                    }
                }
                let kernel = cols.nullspace();
                if let Some(rel) = kernel.first() {
                    // Earlier vectors are independent, so the relation uses the newest one.
                    let local = Poly::new(f, rel.clone()).monic();
                    result = result.lcm(&local);
                    break;
                }
            }
        }
        result
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}
