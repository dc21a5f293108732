//! Exact homogeneous linear systems over `Q[params]`.
//!
//! Elimination prefers nonzero rational pivots. When only polynomial
//! candidates remain it falls back to fraction-free row operations and
//! records the pivot as a condition: the computed rank is then the generic
//! rank over the field of rational functions, and every rational root of a
//! condition that is an admissible parameter value is re-solved separately
//! so rank drops are reported instead of hidden.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::{Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub rows: Vec<Vec<Poly>>,
    pub labels: Vec<String>,
}

impl LinearSystem {
    pub fn new(labels: Vec<String>) -> Self {
        LinearSystem {
            rows: Vec::new(),
            labels,
        }
    }

    pub fn cols(&self) -> usize {
        self.labels.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn evaluate(&self, x: &[Poly]) -> Vec<Poly> {
        self.rows.iter().map(|row| dot(row, x)).collect()
    }
}

pub(crate) fn dot(a: &[Poly], b: &[Poly]) -> Poly {
    let mut acc = Poly::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// A specialization of parameters at which the solution space is larger
/// than the generic one.
#[derive(Clone, Debug, PartialEq)]
pub struct Exception {
    pub parameter: String,
    pub value: Rational,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Nullspace {
    pub cols: usize,
    pub rank: usize,
    /// Free columns in ascending order; `basis[t]` has its leading entry at
    /// `free_columns[t]`.
    pub free_columns: Vec<usize>,
    pub basis: Vec<Vec<Poly>>,
    /// Polynomial pivots assumed nonzero by the generic computation.
    pub conditions: Vec<Poly>,
    pub exceptions: Vec<Exception>,
    /// Parts of conditions without rational roots, or in several parameters.
    pub unresolved: Vec<Poly>,
}

impl Nullspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

struct Echelon {
    rows: Vec<Vec<Poly>>,
    /// `(pivot column, row index)` in the order pivots were chosen.
    pivots: Vec<(usize, usize)>,
    conditions: Vec<Poly>,
}

fn monic(p: &Poly) -> Poly {
    match p.leading() {
        Some((_, c)) => p.scale(&(Rational::one() / c)),
        None => p.clone(),
    }
}

fn eliminate(mut rows: Vec<Vec<Poly>>, order: &[usize]) -> Echelon {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut used = vec![false; rows.len()];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut conditions: Vec<Poly> = Vec::new();
    for &c in order {
        let candidates = (0..rows.len()).filter(|&r| !used[r] && !rows[r][c].is_zero());
        let choice = candidates.min_by_key(|&r| {
            let e = &rows[r][c];
            (!e.is_constant(), e.degree(), e.num_terms(), r)
        });
        let Some(pr) = choice else { continue };
        used[pr] = true;
        let pivot = rows[pr][c].clone();
        if let Some(value) = pivot.as_rational() {
            let inv = Rational::one() / value;
            for x in rows[pr].iter_mut() {
                *x = x.scale(&inv);
            }
            let prow = rows[pr].clone();
            for (s, row) in rows.iter_mut().enumerate() {
                if s == pr || row[c].is_zero() {
                    continue;
                }
                let a = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &(&a * y);
                    }
                }
            }
        } else {
            let m = monic(&pivot);
            if !conditions.contains(&m) {
                conditions.push(m);
            }
            let prow = rows[pr].clone();
            for (s, row) in rows.iter_mut().enumerate() {
                if s == pr || row[c].is_zero() {
                    continue;
                }
                let a = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    let scaled = &pivot * x;
                    *x = if y.is_zero() {
                        scaled
                    } else {
                        &scaled - &(&a * y)
                    };
                }
            }
        }
        // Keep rows whose pivot became a rational multiple normalized.
        for &(pc, r) in &pivots {
            if let Some(v) = rows[r][pc].as_rational() {
                if !v.is_one() {
                    let inv = Rational::one() / v;
                    for x in rows[r].iter_mut() {
                        *x = x.scale(&inv);
                    }
                }
            }
        }
        pivots.push((c, pr));
    }
    Echelon {
        rows,
        pivots,
        conditions,
    }
}

fn basis_from(e: &Echelon, cols: usize) -> (Vec<usize>, Vec<Vec<Poly>>) {
    let pivot_cols: Vec<bool> = {
        let mut v = vec![false; cols];
        for &(c, _) in &e.pivots {
            v[c] = true;
        }
        v
    };
    let free: Vec<usize> = (0..cols).filter(|&c| !pivot_cols[c]).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let involved: Vec<(usize, usize)> = e
            .pivots
            .iter()
            .copied()
            .filter(|&(_, r)| !e.rows[r][f].is_zero())
            .collect();
        let piv = |r: usize, c: usize| e.rows[r][c].clone();
        let mut x = vec![Poly::zero(); cols];
        x[f] = involved
            .iter()
            .fold(Poly::one(), |acc, &(c, r)| &acc * &piv(r, c));
        for &(c, r) in &involved {
            let others = involved
                .iter()
                .filter(|&&(_, s)| s != r)
                .fold(Poly::one(), |acc, &(c2, s)| &acc * &piv(s, c2));
            x[c] = -(&e.rows[r][f] * &others);
        }
        if let Some(lead) = x[f].as_rational() {
            let inv = Rational::one() / lead;
            x = x.iter().map(|v| v.scale(&inv)).collect();
        }
        basis.push(x);
    }
    (free, basis)
}

/// Canonical nullspace: columns are eliminated right to left, so free
/// columns are as early as possible and each basis vector has a 1 at its
/// free column, which is also its first nonzero coordinate.
pub fn nullspace(sys: &LinearSystem, exclusions: &BTreeMap<String, Vec<Rational>>) -> Nullspace {
    let order: Vec<usize> = (0..sys.cols()).rev().collect();
    nullspace_with_order(sys, &order, exclusions)
}

/// Nullspace with an explicit column elimination order. Different orders
/// give different bases of the same space.
pub fn nullspace_with_order(
    sys: &LinearSystem,
    order: &[usize],
    exclusions: &BTreeMap<String, Vec<Rational>>,
) -> Nullspace {
    let cols = sys.cols();
    let e = eliminate(sys.rows.clone(), order);
    let (free_columns, basis) = basis_from(&e, cols);
    let rank = e.pivots.len();
    let mut exceptions = Vec::new();
    let mut unresolved = Vec::new();
    for cond in &e.conditions {
        let vars = cond.indeterminates();
        if vars.len() != 1 {
            unresolved.push(cond.clone());
            continue;
        }
        let name = vars.into_iter().next().unwrap();
        let (roots, rest) = split_rational_roots(cond, &name);
        if !rest.is_constant() {
            unresolved.push(rest);
        }
        let excluded = exclusions.get(&name).cloned().unwrap_or_default();
        for root in roots {
            if excluded.contains(&root)
                || exceptions
                    .iter()
                    .any(|x: &Exception| x.parameter == name && x.value == root)
            {
                continue;
            }
            let bind: BTreeMap<String, Poly> =
                [(name.clone(), Poly::constant(root.clone()))].into();
            let special = LinearSystem {
                rows: sys
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|p| p.substitute(&bind)).collect())
                    .collect(),
                labels: sys.labels.clone(),
            };
            let dim = cols - rank_of(&special.rows, order);
            if dim != cols - rank {
                exceptions.push(Exception {
                    parameter: name.clone(),
                    value: root,
                    dim,
                });
            }
        }
    }
    exceptions.sort_by(|a, b| (&a.parameter, &a.value).cmp(&(&b.parameter, &b.value)));
    Nullspace {
        cols,
        rank,
        free_columns,
        basis,
        conditions: e.conditions,
        exceptions,
        unresolved,
    }
}

/// Generic rank over the rational function field of the parameters.
pub fn rank(rows: &[Vec<Poly>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..cols).rev().collect();
    rank_of(rows, &order)
}

fn rank_of(rows: &[Vec<Poly>], order: &[usize]) -> usize {
    eliminate(rows.to_vec(), order).pivots.len()
}

/// Row-reduced basis of the span of `vectors`, each with a leading 1 at a
/// distinct coordinate, sorted by that coordinate. Other basis vectors
/// vanish at each leading coordinate.
pub fn span_echelon(vectors: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let Some(cols) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let order: Vec<usize> = (0..cols).collect();
    let e = eliminate(vectors.to_vec(), &order);
    let mut out: Vec<(usize, Vec<Poly>)> = e
        .pivots
        .iter()
        .map(|&(c, r)| (c, e.rows[r].clone()))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(_, v)| v).collect()
}

/// Leading (first nonzero) coordinate of a vector.
pub fn leading_index(v: &[Poly]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// True iff `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Poly>], v: &[Poly]) -> bool {
    let mut rows = basis.to_vec();
    let before = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == before
}

/// Basis of the intersection of two spans, in row-reduced form.
pub fn intersect_spans(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = a[0].len();
    // Solve sum x_s a_s - sum y_t b_t = 0 coordinatewise.
    let unknowns = a.len() + b.len();
    let rows: Vec<Vec<Poly>> = (0..len)
        .map(|coord| {
            a.iter()
                .map(|v| v[coord].clone())
                .chain(b.iter().map(|v| -v[coord].clone()))
                .collect()
        })
        .collect();
    let sys = LinearSystem {
        rows,
        labels: (0..unknowns).map(|i| format!("x{i}")).collect(),
    };
    let ns = nullspace(&sys, &BTreeMap::new());
    let vectors: Vec<Vec<Poly>> = ns
        .basis
        .iter()
        .map(|coeffs| {
            let mut acc = vec![Poly::zero(); len];
            for (s, v) in a.iter().enumerate() {
                if coeffs[s].is_zero() {
                    continue;
                }
                for (x, y) in acc.iter_mut().zip(v) {
                    *x += &(&coeffs[s] * y);
                }
            }
            acc
        })
        .collect();
    span_echelon(&vectors)
}

/// Splits a univariate polynomial into its rational roots (with repetition
/// removed) and the cofactor left after dividing out every rational root
/// with its multiplicity.
fn split_rational_roots(p: &Poly, name: &str) -> (Vec<Rational>, Poly) {
    let mut coeffs: Vec<Rational> = p
        .coefficients_in(name)
        .iter()
        .map(|c| c.as_rational().unwrap_or_default())
        .collect();
    let roots = p.rational_roots().unwrap_or_default();
    for r in &roots {
        loop {
            let (q, rem) = synthetic_division(&coeffs, r);
            if !rem.is_zero() || coeffs.len() <= 1 {
                break;
            }
            coeffs = q;
        }
    }
    let x = Poly::var(name);
    let rest = coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (k, c)| acc + x.pow(k as u32).scale(c));
    (roots, rest)
}

fn synthetic_division(coeffs: &[Rational], root: &Rational) -> (Vec<Rational>, Rational) {
    let deg = coeffs.len() - 1;
    let mut q = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for k in (0..=deg).rev() {
        let v = &coeffs[k] + &carry * root;
        if k == 0 {
            return (q, v);
        }
        q[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, rat};

    fn sys(rows: &[&[&str]]) -> LinearSystem {
        let rows: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s).unwrap()).collect())
            .collect();
        let cols = rows[0].len();
        LinearSystem {
            rows,
            labels: (0..cols).map(|i| format!("x{i}")).collect(),
        }
    }

    fn ints(v: &[i64]) -> Vec<Poly> {
        v.iter().map(|&x| Poly::from_i64(x)).collect()
    }

    fn none() -> BTreeMap<String, Vec<Rational>> {
        BTreeMap::new()
    }

    #[test]
    fn rank_one_example() {
        let ns = nullspace(&sys(&[&["1", "1"], &["2", "2"]]), &none());
        assert_eq!(ns.dim(), 1);
        assert_eq!(ns.basis, vec![ints(&[1, -1])]);
    }

    #[test]
    fn identity_and_zero() {
        let id = sys(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(nullspace(&id, &none()).dim(), 0);
        let zero = sys(&[&["0", "0", "0"], &["0", "0", "0"]]);
        let ns = nullspace(&zero, &none());
        assert_eq!(
            ns.basis,
            vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]
        );
    }

    #[test]
    fn basis_vectors_solve_the_system() {
        let s = sys(&[
            &["1", "2", "0", "-1"],
            &["0", "1", "1", "3"],
            &["1", "3", "1", "2"],
        ]);
        let ns = nullspace(&s, &none());
        assert_eq!(ns.dim(), 2);
        for b in &ns.basis {
            assert!(s.evaluate(b).iter().all(Zero::is_zero));
        }
        // Each basis vector starts at its free column with a 1.
        for (f, b) in ns.free_columns.iter().zip(&ns.basis) {
            assert_eq!(leading_index(b), Some(*f));
            assert!(b[*f].is_one());
        }
    }

    #[test]
    fn symbolic_pivot_gives_generic_rank_and_exception() {
        // (a + 1) x = 0: generic dim 0, dim 1 at a = -1.
        let s = sys(&[&["a + 1", "0"], &["0", "1"]]);
        let ns = nullspace(&s, &none());
        assert_eq!(ns.dim(), 0);
        assert_eq!(ns.conditions, vec![parse_scalar("a + 1").unwrap()]);
        assert_eq!(
            ns.exceptions,
            vec![Exception {
                parameter: "a".into(),
                value: rat(-1, 1),
                dim: 1
            }]
        );
        // Excluded values are not reported.
        let excl: BTreeMap<String, Vec<Rational>> = [("a".to_string(), vec![rat(-1, 1)])].into();
        assert!(nullspace(&s, &excl).exceptions.is_empty());
    }

    #[test]
    fn symbolic_basis_is_polynomial_and_exact() {
        let s = sys(&[&["a", "1", "0"], &["0", "a - 1", "2"]]);
        let ns = nullspace(&s, &none());
        assert_eq!(ns.dim(), 1);
        for b in &ns.basis {
            assert!(s.evaluate(b).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn irrational_roots_are_unresolved() {
        let s = sys(&[&["a^2 - 2", "0"], &["0", "1"]]);
        let ns = nullspace(&s, &none());
        assert!(ns.exceptions.is_empty());
        assert_eq!(ns.unresolved, vec![parse_scalar("a^2 - 2").unwrap()]);
    }

    #[test]
    fn order_independence_of_rank() {
        let s = sys(&[
            &["1", "2", "3", "4"],
            &["2", "4", "6", "8"],
            &["0", "1", "0", "1"],
        ]);
        let a = nullspace(&s, &none());
        let b = nullspace_with_order(&s, &[0, 2, 1, 3], &none());
        assert_eq!(a.dim(), b.dim());
        for v in &b.basis {
            assert!(in_span(&a.basis, v));
        }
    }

    #[test]
    fn span_intersection() {
        let a = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])];
        let b = vec![ints(&[0, 1, 1]), ints(&[1, 1, 0])];
        let meet = intersect_spans(&a, &b);
        assert_eq!(meet, vec![ints(&[1, 1, 0])]);
        assert!(intersect_spans(&a, &[]).is_empty());
    }
}
