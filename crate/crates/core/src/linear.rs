//! Invariants defined by identities that are linear in the unknown maps:
//! derivations, centroids, quasi-centroids, quasi-derivations and
//! generalized derivations of a pair.
//!
//! Unknowns are operator matrix entries flattened column by column, one
//! block of `n * n` per map in the tuple `(d, d', d'')`. The entry in row
//! `r`, column `i` of the map labelled `x` is named `x{r}_{i}` (1-based).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{add_vec, sub_vec, unit, AlgebraPair, StructureTensor};
use crate::error::{Error, Result};
use crate::invariant::Invariant;
use crate::linalg::{self, LinearSystem, Nullspace};
use crate::matrix::Matrix;
use crate::nonlinear::{check_bound, Grid};
use crate::scalar::{Poly, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantKind {
    Derivation,
    Centroid,
    QuasiCentroid,
    QuasiDerivation,
    GeneralizedDerivation,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 5] = [
        InvariantKind::Derivation,
        InvariantKind::Centroid,
        InvariantKind::QuasiCentroid,
        InvariantKind::QuasiDerivation,
        InvariantKind::GeneralizedDerivation,
    ];

    /// Parameter letters of the maps in the tuple, `d` first.
    pub fn letters(self) -> &'static [&'static str] {
        match self {
            InvariantKind::Derivation => &["d"],
            InvariantKind::Centroid => &["beta"],
            InvariantKind::QuasiCentroid => &["delta"],
            InvariantKind::QuasiDerivation => &["d", "dp"],
            InvariantKind::GeneralizedDerivation => &["d", "dp", "dpp"],
        }
    }

    /// Number of maps in a solution tuple.
    pub fn components(self) -> usize {
        self.letters().len()
    }

    pub fn invariant(self) -> Invariant {
        match self {
            InvariantKind::Derivation => Invariant::Derivation,
            InvariantKind::Centroid => Invariant::Centroid,
            InvariantKind::QuasiCentroid => Invariant::QuasiCentroid,
            InvariantKind::QuasiDerivation => Invariant::QuasiDerivation,
            InvariantKind::GeneralizedDerivation => Invariant::GeneralizedDerivation,
        }
    }

    pub fn from_invariant(inv: Invariant) -> Option<Self> {
        InvariantKind::ALL
            .into_iter()
            .find(|k| k.invariant() == inv)
    }

    fn branches(self) -> &'static [&'static [(i64, Term)]] {
        use Term::*;
        match self {
            InvariantKind::Derivation => &[&[(1, Outer(0)), (-1, Left(0)), (-1, Right(0))]],
            InvariantKind::Centroid => &[
                &[(1, Outer(0)), (-1, Left(0))],
                &[(1, Outer(0)), (-1, Right(0))],
            ],
            InvariantKind::QuasiCentroid => &[&[(1, Left(0)), (-1, Right(0))]],
            InvariantKind::QuasiDerivation => &[&[(1, Outer(1)), (-1, Left(0)), (-1, Right(0))]],
            InvariantKind::GeneralizedDerivation => {
                &[&[(1, Outer(2)), (-1, Left(0)), (-1, Right(1))]]
            }
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.invariant(), f)
    }
}

/// One side term of a linear identity evaluated on `(e_i, e_j)`; the index
/// selects the map in the tuple.
#[derive(Clone, Copy, Debug)]
enum Term {
    /// `M(e_i * e_j)`
    Outer(usize),
    /// `M(e_i) * e_j`
    Left(usize),
    /// `e_i * M(e_j)`
    Right(usize),
}

/// Index of unknown `(component, r, i)` in the flattened unknown vector.
pub fn unknown_index(n: usize, component: usize, r: usize, i: usize) -> usize {
    component * n * n + i * n + r
}

pub fn unknown_labels(kind: InvariantKind, n: usize) -> Vec<String> {
    let mut labels = Vec::with_capacity(kind.components() * n * n);
    for letter in kind.letters() {
        for i in 0..n {
            for r in 0..n {
                labels.push(format!("{letter}{}_{}", r + 1, i + 1));
            }
        }
    }
    labels
}

/// One homogeneous row per `(product, branch, i, j, r)` in that order,
/// zero rows included.
pub fn assemble_system(pair: &AlgebraPair, kind: InvariantKind) -> LinearSystem {
    let n = pair.dim();
    let mut sys = LinearSystem::new(unknown_labels(kind, n));
    let cols = sys.cols();
    for c in pair.tensors() {
        for branch in kind.branches() {
            for i in 0..n {
                for j in 0..n {
                    for r in 0..n {
                        let mut row = vec![Poly::zero(); cols];
                        for &(sign, term) in branch.iter() {
                            add_term(&mut row, c, n, sign, term, i, j, r);
                        }
                        sys.rows.push(row);
                    }
                }
            }
        }
    }
    sys
}

#[allow(clippy::too_many_arguments)]
fn add_term(
    row: &mut [Poly],
    c: &StructureTensor<Poly>,
    n: usize,
    sign: i64,
    term: Term,
    i: usize,
    j: usize,
    r: usize,
) {
    let signed = |p: &Poly| if sign < 0 { -p } else { p.clone() };
    for k in 0..n {
        let (coef, idx) = match term {
            // r-th coordinate of M(sum_k c_ij^k e_k) = sum_k c_ij^k M[r][k]
            Term::Outer(m) => (c.get(i, j, k), unknown_index(n, m, r, k)),
            // (sum_k M[k][i] e_k) * e_j, r-th coordinate
            Term::Left(m) => (c.get(k, j, r), unknown_index(n, m, k, i)),
            Term::Right(m) => (c.get(i, k, r), unknown_index(n, m, k, j)),
        };
        if !coef.is_zero() {
            row[idx] += &signed(coef);
        }
    }
}

/// Both sides' differences of the identity on `(e_i, e_j)` for one product,
/// one vector per branch.
fn branch_values<T: Ring>(
    c: &StructureTensor<T>,
    kind: InvariantKind,
    maps: &[Matrix<T>],
    i: usize,
    j: usize,
) -> Vec<Vec<T>> {
    let n = c.dim();
    let (u, v) = (unit::<T>(n, i), unit::<T>(n, j));
    let uv = c.multiply(&u, &v);
    let leibniz = |outer: &Matrix<T>, left: &Matrix<T>, right: &Matrix<T>| {
        sub_vec(
            outer.apply(&uv),
            &add_vec(
                c.multiply(&left.apply(&u), &v),
                &c.multiply(&u, &right.apply(&v)),
            ),
        )
    };
    match kind {
        InvariantKind::Derivation => vec![leibniz(&maps[0], &maps[0], &maps[0])],
        InvariantKind::Centroid => {
            let b = maps[0].apply(&uv);
            vec![
                sub_vec(b.clone(), &c.multiply(&maps[0].apply(&u), &v)),
                sub_vec(b, &c.multiply(&u, &maps[0].apply(&v))),
            ]
        }
        InvariantKind::QuasiCentroid => vec![sub_vec(
            c.multiply(&maps[0].apply(&u), &v),
            &c.multiply(&u, &maps[0].apply(&v)),
        )],
        InvariantKind::QuasiDerivation => vec![leibniz(&maps[1], &maps[0], &maps[0])],
        InvariantKind::GeneralizedDerivation => vec![leibniz(&maps[2], &maps[0], &maps[1])],
    }
}

/// Defects of the defining identity for a concrete tuple of maps, computed
/// by applying the maps to basis vectors (independently of the assembled
/// system). Returns `(product, branch, i, j, value)` for nonzero values.
pub fn identity_defects(
    pair: &AlgebraPair,
    kind: InvariantKind,
    maps: &[Matrix<Poly>],
) -> Vec<(usize, usize, usize, usize, Vec<Poly>)> {
    assert_eq!(maps.len(), kind.components());
    let n = pair.dim();
    let mut out = Vec::new();
    for (p, c) in pair.tensors().into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                for (b, value) in branch_values(c, kind, maps, i, j).into_iter().enumerate() {
                    if value.iter().any(|x| !x.is_zero()) {
                        out.push((p + 1, b, i, j, value));
                    }
                }
            }
        }
    }
    out
}

/// Whether a tuple of maps satisfies the identity on both products, with
/// early exit. Works over any exact ring, so integer grids stay cheap.
pub fn satisfies_linear<T: Ring>(
    tensors: [&StructureTensor<T>; 2],
    kind: InvariantKind,
    maps: &[Matrix<T>],
) -> bool {
    let n = tensors[0].dim();
    tensors.iter().all(|c| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                branch_values(c, kind, maps, i, j)
                    .iter()
                    .all(|v| v.iter().all(Zero::is_zero))
            })
        })
    })
}

/// Integer matrices with entries in `[-bound, bound]` satisfying a
/// single-map invariant, in lexicographic order of row-major entries.
pub fn linear_grid_solve(
    pair: &AlgebraPair,
    kind: InvariantKind,
    bound: i64,
) -> Result<Vec<Matrix<i64>>> {
    if kind.components() != 1 {
        return Err(Error::InvalidArgument(format!(
            "{kind} has a tuple of maps; grid search covers single maps"
        )));
    }
    let n = pair.dim();
    check_bound(n, bound)?;
    let (Some(a), Some(b)) = (pair.first.tensor.to_i64(), pair.second.tensor.to_i64()) else {
        return Err(Error::InvalidArgument(
            "grid search needs integral structure constants".into(),
        ));
    };
    Ok(Grid::new(n, bound)
        .filter(|m| satisfies_linear([&a, &b], kind, std::slice::from_ref(m)))
        .collect())
}

/// Solution space of a linear invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpace {
    pub kind: InvariantKind,
    pub n: usize,
    pub labels: Vec<String>,
    /// Each basis member is a tuple of `kind.components()` matrices.
    pub basis: Vec<Vec<Matrix<Poly>>>,
    /// Label of the free column each basis member is normalized at.
    pub free_labels: Vec<String>,
    pub solution: Nullspace,
}

impl OperatorSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis members as flat unknown vectors.
    pub fn flat_basis(&self) -> &[Vec<Poly>] {
        &self.solution.basis
    }

    /// `sum_t label_t * basis_t`, the general element with parameters named
    /// after each basis member's free column.
    pub fn general_element(&self) -> Vec<Matrix<Poly>> {
        let n = self.n;
        let mut out = vec![Matrix::zeros(n, n); self.kind.components()];
        for (b, name) in self.basis.iter().zip(&self.free_labels) {
            let t = Poly::var(name);
            for (acc, m) in out.iter_mut().zip(b) {
                *acc = Matrix::from_fn(n, n, |r, c| &acc[(r, c)] + &(&t * &m[(r, c)]));
            }
        }
        out
    }

    pub fn contains(&self, maps: &[Matrix<Poly>]) -> bool {
        linalg::in_span(&self.solution.basis, &flatten(maps))
    }

    /// Dimension of the image of the space under projection to one map of
    /// the tuple.
    pub fn projection_dim(&self, component: usize) -> usize {
        let n2 = self.n * self.n;
        let rows: Vec<Vec<Poly>> = self
            .solution
            .basis
            .iter()
            .map(|v| v[component * n2..(component + 1) * n2].to_vec())
            .collect();
        if rows.is_empty() {
            0
        } else {
            linalg::rank(&rows)
        }
    }
}

pub fn flatten(maps: &[Matrix<Poly>]) -> Vec<Poly> {
    let n = maps.first().map_or(0, Matrix::rows);
    let mut out = vec![Poly::zero(); maps.len() * n * n];
    for (m, map) in maps.iter().enumerate() {
        for i in 0..n {
            for r in 0..n {
                out[unknown_index(n, m, r, i)] = map[(r, i)].clone();
            }
        }
    }
    out
}

pub fn unflatten(v: &[Poly], n: usize, components: usize) -> Vec<Matrix<Poly>> {
    (0..components)
        .map(|m| Matrix::from_fn(n, n, |r, i| v[unknown_index(n, m, r, i)].clone()))
        .collect()
}

/// Exact solution space of `kind` for the pair, with every basis member
/// re-checked by direct application of the identity.
pub fn invariant_space(pair: &AlgebraPair, kind: InvariantKind) -> Result<OperatorSpace> {
    let sys = assemble_system(pair, kind);
    let exclusions: BTreeMap<String, Vec<Rational>> = pair.exclusions();
    let solution = linalg::nullspace(&sys, &exclusions);
    build_space(pair, kind, sys.labels, solution)
}

/// The same space computed with a different column elimination order.
pub fn invariant_space_with_order(
    pair: &AlgebraPair,
    kind: InvariantKind,
    order: &[usize],
) -> Result<OperatorSpace> {
    let sys = assemble_system(pair, kind);
    let solution = linalg::nullspace_with_order(&sys, order, &pair.exclusions());
    build_space(pair, kind, sys.labels, solution)
}

fn build_space(
    pair: &AlgebraPair,
    kind: InvariantKind,
    labels: Vec<String>,
    solution: Nullspace,
) -> Result<OperatorSpace> {
    let n = pair.dim();
    let basis: Vec<Vec<Matrix<Poly>>> = solution
        .basis
        .iter()
        .map(|v| unflatten(v, n, kind.components()))
        .collect();
    for (t, maps) in basis.iter().enumerate() {
        if !identity_defects(pair, kind, maps).is_empty() {
            return Err(Error::Internal(format!(
                "{kind} basis member {t} of {} fails its identity",
                pair.name()
            )));
        }
    }
    let free_labels = solution
        .free_columns
        .iter()
        .map(|&c| labels[c].clone())
        .collect();
    Ok(OperatorSpace {
        kind,
        n,
        labels,
        basis,
        free_labels,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::pair;

    fn space(a: &str, b: &str, kind: InvariantKind) -> OperatorSpace {
        invariant_space(&pair(a, b).unwrap(), kind).unwrap()
    }

    #[test]
    fn row_counts() {
        let p = pair("A2_2", "A2_3").unwrap();
        let d = assemble_system(&p, InvariantKind::Derivation);
        assert_eq!((d.rows.len(), d.cols()), (16, 4));
        let c = assemble_system(&p, InvariantKind::Centroid);
        assert_eq!((c.rows.len(), c.cols()), (32, 4));
        assert_eq!(
            assemble_system(&p, InvariantKind::QuasiDerivation).cols(),
            8
        );
        assert_eq!(
            assemble_system(&p, InvariantKind::GeneralizedDerivation).cols(),
            12
        );
        let z = pair("Zero_2", "Zero_2").unwrap();
        for kind in InvariantKind::ALL {
            assert!(assemble_system(&z, kind).is_zero());
        }
    }

    #[test]
    fn labels_follow_row_column_convention() {
        let l = unknown_labels(InvariantKind::Derivation, 2);
        assert_eq!(l, ["d1_1", "d2_1", "d1_2", "d2_2"]);
        assert_eq!(
            unknown_labels(InvariantKind::QuasiDerivation, 2)[4],
            "dp1_1"
        );
    }

    #[test]
    fn two_dimensional_derivations() {
        let s = space("A2_2", "A2_3", InvariantKind::Derivation);
        assert_eq!(s.dim(), 2);
        assert_eq!(
            s.general_element()[0].to_strings(),
            vec![vec!["0", "0"], vec!["d2_1", "d2_2"]]
        );
        let s = space("A2_2", "A2_4", InvariantKind::Derivation);
        assert_eq!(
            s.general_element()[0].to_strings(),
            vec![vec!["0", "0"], vec!["0", "d2_2"]]
        );
    }

    #[test]
    fn three_dimensional_examples() {
        assert_eq!(space("A3_1", "A3_3", InvariantKind::Derivation).dim(), 0);
        // Both products force beta(e2) = beta(e1) e1, so only scalars survive.
        let c = space("A3_1", "A3_3", InvariantKind::Centroid);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis[0][0], Matrix::identity(3));
        assert_eq!(space("A3_1", "A3_3", InvariantKind::QuasiCentroid).dim(), 3);
    }

    #[test]
    fn zero_pair_everything_is_a_derivation() {
        assert_eq!(
            space("Zero_2", "Zero_2", InvariantKind::Derivation).dim(),
            4
        );
        assert_eq!(
            space("Zero_2", "Zero_2", InvariantKind::GeneralizedDerivation).dim(),
            12
        );
    }

    #[test]
    fn tuple_relations() {
        let p = pair("A2_2", "A2_3").unwrap();
        let q = invariant_space(&p, InvariantKind::QuasiDerivation).unwrap();
        let d = invariant_space(&p, InvariantKind::Derivation).unwrap();
        for b in &d.basis {
            assert!(q.contains(&[b[0].clone(), b[0].clone()]));
        }
        let g = invariant_space(&p, InvariantKind::GeneralizedDerivation).unwrap();
        let id = Matrix::identity(2);
        assert!(g.contains(&[id.clone(), id.clone(), id.scale(&Poly::from_i64(2))]));
        assert!(q.projection_dim(0) <= q.dim());
    }

    #[test]
    fn symbolic_pair_reports_generic_answer() {
        let s = space("A3_2", "A3_4", InvariantKind::Derivation);
        for b in &s.basis {
            assert!(identity_defects(&pair("A3_2", "A3_4").unwrap(), s.kind, b).is_empty());
        }
        assert!(s.solution.exceptions.iter().all(|e| e.parameter == "alpha"));
    }

    #[test]
    fn elimination_order_does_not_change_dimension() {
        let p = pair("A3_5", "A3_9").unwrap();
        for kind in InvariantKind::ALL {
            let a = invariant_space(&p, kind).unwrap();
            let cols = a.labels.len();
            let order: Vec<usize> = (0..cols).collect();
            let b = invariant_space_with_order(&p, kind, &order).unwrap();
            assert_eq!(a.dim(), b.dim(), "{kind}");
        }
    }
}
