//! Exhaustive search for a basis change making two algebras compatible.
//!
//! Only the second algebra is moved: transporting both by the same matrix
//! does not change whether the mixed axiom holds.

use serde::Serialize;

use crate::algebra::{is_compatible, transport_scaled, Algebra, AlgebraPair, DefectReport};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nonlinear::{check_bound, Grid};
use crate::scalar::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub p: Matrix<Poly>,
    pub pair: AlgebraPair,
    pub defect: DefectReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exhaustion {
    pub dim: usize,
    pub bound: i64,
    /// Candidates with nonzero determinant that were checked.
    pub candidates: u64,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Found(Witness),
    Exhausted(Exhaustion),
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::Exhausted(_) => None,
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Identity first, then the other permutation matrices, then every
/// remaining integer matrix in lexicographic order of row-major entries.
fn candidates(n: usize, bound: i64) -> impl Iterator<Item = Matrix<i64>> {
    let priority: Vec<Matrix<i64>> = permutations(n)
        .into_iter()
        .map(|perm| Matrix::from_fn(n, n, |r, c| i64::from(perm[c] == r)))
        .collect();
    let skip = priority.clone();
    priority
        .into_iter()
        .chain(Grid::new(n, bound).filter(move |m| !skip.contains(m)))
}

/// First integer matrix `P` (entries in `[-bound, bound]`, nonzero
/// determinant) for which `(A, B transported by P)` satisfies the mixed
/// axiom, or a report of the exhausted space.
pub fn search_witness(a: &Algebra, b: &Algebra, bound: i64) -> Result<SearchOutcome> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let n = a.dim();
    check_bound(n, bound)?;
    a.ensure_associative()?;
    b.ensure_associative()?;
    let (Some(ta), Some(tb)) = (a.tensor.to_i64(), b.tensor.to_i64()) else {
        return Err(Error::InvalidArgument(
            "witness search needs integral structure constants".into(),
        ));
    };
    let mut checked = 0u64;
    for p in candidates(n, bound) {
        let det = p.det();
        if det == 0 {
            continue;
        }
        checked += 1;
        // det(P) * P^{-1}(Pu * Pv) vanishes exactly where the transport does,
        // and the mixed axiom is linear in the second product.
        let moved = transport_scaled(&tb, &p, &p.adjugate());
        if is_compatible(&ta, &moved) {
            let p = p.map(|&x| Poly::from_i64(x));
            let pair = AlgebraPair::new(a.clone(), b.transport(&p)?)?;
            let defect = pair.compatibility_defects();
            return Ok(SearchOutcome::Found(Witness { p, pair, defect }));
        }
    }
    Ok(SearchOutcome::Exhausted(Exhaustion {
        dim: n,
        bound,
        candidates: checked,
        description: format!(
            "all {checked} invertible integer {n}x{n} matrices with entries in [-{bound}, {bound}]"
        ),
    }))
}

/// Recomputes the transport and the full defect from the witness matrix
/// alone, ignoring the stored transformed pair and defect.
pub fn verify_witness(original: &AlgebraPair, w: &Witness) -> bool {
    let Ok(moved) = original.second.transport(&w.p) else {
        return false;
    };
    let Ok(pair) = AlgebraPair::new(original.first.clone(), moved) else {
        return false;
    };
    pair.tensors() == w.pair.tensors() && pair.compatibility_defects().is_empty()
}
