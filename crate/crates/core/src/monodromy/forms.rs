use crate::arith::primes::gcd;
use crate::arith::{Fe, FiniteField, Matrix};

/// Incrementally maintained row-echelon basis of a subspace of F^d.
struct Echelon {
    field: FiniteField,
    rows: Vec<(usize, Vec<Fe>)>,
}

impl Echelon {
    fn new(field: &FiniteField) -> Self {
        Self { field: field.clone(), rows: Vec::new() }
    }

    /// Reduces `v` against the basis; adds it and returns true when independent.
    fn insert(&mut self, mut v: Vec<Fe>) -> bool {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != Fe(0) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != Fe(0)) else {
            return false;
        };
        let inv = f.inv(v[pivot]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Keep the basis fully reduced on pivots.
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != Fe(0) {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Burnside criterion: the generators span the full matrix algebra M_n(F).
pub fn absolutely_irreducible(gens: &[Matrix]) -> bool {
    let Some(first) = gens.first() else {
        return false;
    };
    let f = first.field();
    let n = first.rows();
    let mut basis = Echelon::new(f);
    let id = Matrix::identity(f, n);
    basis.insert(id.entries().to_vec());
    let mut queue = vec![id];
    while let Some(m) = queue.pop() {
        for g in gens {
            let prod = m.mul(g);
            if basis.insert(prod.entries().to_vec()) {
                if basis.dim() == n * n {
                    return true;
                }
                queue.push(prod);
            }
        }
    }
    basis.dim() == n * n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Alternating,
    Symmetric,
    General,
}

#[derive(Clone, Debug)]
pub struct BilinearForm {
    /// Dimension of the space of all invariant bilinear forms.
    pub dimension: usize,
    /// A nonzero invariant form, if any.
    pub form: Option<Matrix>,
    pub kind: Option<FormKind>,
    /// A nonzero invariant alternating form, if any.
    pub alternating: Option<Matrix>,
}

/// Solves the linear system σ(g)ᵀ·M·g = M for all generators, plus optional
/// extra linear constraints on the entries of M. Returns a kernel basis.
fn solve_forms(gens: &[Matrix], twist: impl Fn(Fe) -> Fe, extra: &[Vec<Fe>]) -> Vec<Matrix> {
    let f = gens[0].field().clone();
    let n = gens[0].rows();
    let unknowns = n * n;
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for g in gens {
        let gt = g.map(&twist).transpose();
        // Column k of the system is the image of the basis matrix E_k.
        let images: Vec<Matrix> = (0..unknowns)
            .map(|k| {
                let mut e = Matrix::zeros(&f, n, n);
                e.set(k / n, k % n, Fe(1));
                gt.mul(&e).mul(g).sub(&e)
            })
            .collect();
        for r in 0..unknowns {
            rows.push(images.iter().map(|img| img.entries()[r]).collect());
        }
    }
    rows.extend(extra.iter().cloned());
    let system = Matrix::from_rows(&f, rows);
    system.nullspace().into_iter().map(|v| Matrix::from_rows(&f, v.chunks(n).map(|c| c.to_vec()).collect())).collect()
}

fn classify_form(m: &Matrix) -> FormKind {
    let f = m.field();
    let n = m.rows();
    let antisym = (0..n).all(|i| m.get(i, i) == Fe(0) && (0..n).all(|j| f.add(m.get(i, j), m.get(j, i)) == Fe(0)));
    if antisym {
        FormKind::Alternating
    } else if *m == m.transpose() {
        FormKind::Symmetric
    } else {
        FormKind::General
    }
}

/// Invariant bilinear forms gᵀ·M·g = M for every generator.
pub fn invariant_bilinear_form(gens: &[Matrix]) -> BilinearForm {
    let n = gens[0].rows();
    let all = solve_forms(gens, |x| x, &[]);
    let mut alt_constraints = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = vec![Fe(0); n * n];
            row[i * n + j] = Fe(1);
            if i != j {
                row[j * n + i] = Fe(1);
            }
            alt_constraints.push(row);
        }
    }
    let alternating = solve_forms(gens, |x| x, &alt_constraints).into_iter().next();
    let form = all.first().cloned();
    BilinearForm { dimension: all.len(), kind: form.as_ref().map(classify_form), form, alternating }
}

#[derive(Clone, Debug)]
pub enum SesquilinearForm {
    /// The field has odd degree over its prime field.
    NoQuadraticSubfield,
    Solved {
        dimension: usize,
        form: Option<Matrix>,
    },
}

impl SesquilinearForm {
    pub fn form(&self) -> Option<&Matrix> {
        match self {
            SesquilinearForm::Solved { form, .. } => form.as_ref(),
            SesquilinearForm::NoQuadraticSubfield => None,
        }
    }
}

/// Invariant forms σ(g)ᵀ·M·g = M with σ(x) = x^{√q}.
pub fn invariant_sesquilinear_form(gens: &[Matrix]) -> SesquilinearForm {
    let f = gens[0].field().clone();
    let k = f.degree();
    if k % 2 == 1 {
        return SesquilinearForm::NoQuadraticSubfield;
    }
    let sols = solve_forms(gens, |x| f.frobenius(x, k / 2), &[]);
    SesquilinearForm::Solved { dimension: sols.len(), form: sols.into_iter().next() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceField {
    /// Degree over the prime field of the field generated by the traces seen.
    pub degree: u32,
    pub field_degree: u32,
    pub words: usize,
    pub max_len: usize,
}

impl TraceField {
    pub fn is_proper(&self) -> bool {
        self.degree < self.field_degree
    }
}

/// Traces of all words of length 1..=max_len in the generators; the result is
/// the least d | k with every trace fixed by x ↦ x^{p^d}.
pub fn trace_field(gens: &[Matrix], max_len: usize) -> TraceField {
    let f = gens[0].field().clone();
    let k = f.degree();
    let mut traces = Vec::new();
    let mut layer: Vec<Matrix> = vec![Matrix::identity(&f, gens[0].rows())];
    let mut words = 0;
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in gens {
                let m = w.mul(g);
                traces.push(m.trace());
                words += 1;
                next.push(m);
            }
        }
        layer = next;
    }
    traces.sort();
    traces.dedup();
    let degree = (1..=k)
        .filter(|d| gcd(*d as u64, k as u64) == *d as u64)
        .find(|&d| traces.iter().all(|&t| f.in_subfield(t, d)))
        .unwrap_or(k);
    TraceField { degree, field_degree: k, words, max_len }
}
