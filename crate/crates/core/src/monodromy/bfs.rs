use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use crate::arith::Matrix;

use super::triple::MonodromyTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BfsOutcome {
    /// Exact order when `complete`, otherwise the number of elements seen.
    pub order: u64,
    pub complete: bool,
    pub cap: u64,
}

fn run<K: Hash + Eq>(gens: &[Vec<Matrix>], cap: u64, key: impl Fn(&[Matrix]) -> K) -> BfsOutcome {
    let identity: Vec<Matrix> = gens[0].iter().map(|g| Matrix::identity(g.field(), g.rows())).collect();
    let mut seen = HashSet::new();
    seen.insert(key(&identity));
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<Matrix> = x.iter().zip(g).map(|(a, b)| a.mul(b)).collect();
            if seen.insert(key(&y)) {
                if seen.len() as u64 > cap {
                    return BfsOutcome { order: seen.len() as u64, complete: false, cap };
                }
                queue.push_back(y);
            }
        }
    }
    BfsOutcome { order: seen.len() as u64, complete: true, cap }
}

/// Breadth-first closure of the group generated by tuples of matrices
/// (one matrix per component, multiplied componentwise). Elements are
/// deduplicated by their row-major entries; the traversal order is fixed.
pub fn bfs_closure(gens: &[Vec<Matrix>], cap: u64) -> BfsOutcome {
    assert!(!gens.is_empty());
    let radices: Vec<(u64, usize)> = gens[0].iter().map(|g| (g.field().order(), g.rows() * g.cols())).collect();
    let bits: f64 = radices.iter().map(|&(q, len)| (q as f64).log2() * len as f64).sum();
    if bits < 127.0 {
        run(gens, cap, |xs| {
            let mut k: u128 = 0;
            for (m, &(q, _)) in xs.iter().zip(&radices) {
                for e in m.entries() {
                    k = k * q as u128 + e.0 as u128;
                }
            }
            k
        })
    } else {
        run(gens, cap, |xs| xs.iter().flat_map(|m| m.entries().iter().map(|e| e.0)).collect::<Vec<u64>>())
    }
}

/// Order of ⟨g0, g1⟩.
pub fn bfs_group_order(t: &MonodromyTriple, cap: u64) -> BfsOutcome {
    bfs_closure(&[vec![t.g0.clone()], vec![t.g1.clone()]], cap)
}

/// Order of the diagonal image ⟨(g0, g0′), (g1, g1′)⟩ in the product.
pub fn bfs_product_order(t1: &MonodromyTriple, t2: &MonodromyTriple, cap: u64) -> BfsOutcome {
    bfs_closure(&[vec![t1.g0.clone(), t2.g0.clone()], vec![t1.g1.clone(), t2.g1.clone()]], cap)
}
