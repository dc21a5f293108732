//! Second cohomology of a pair with coefficients in its own underlying
//! space (trivial actions).
//!
//! A cochain is a pair `(g, h)` of bilinear maps, `g[i][j][r]` the `e_r`
//! coefficient of `phi_1(e_i, e_j)` and `h` likewise for `phi_2`. The mixed
//! condition is
//! `phi_2(u *1 v, w) + phi_1(u *2 v, w) = phi_1(u, v *2 w) + phi_2(u, v *1 w)`;
//! strict mode adds `phi_p(u *p v, w) = phi_p(u, v *p w)` for each product.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraPair, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::{self, Exception, LinearSystem};
use crate::scalar::Poly;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CohomologyMode {
    #[default]
    Mixed,
    Strict,
}

impl CohomologyMode {
    pub const ALL: [CohomologyMode; 2] = [CohomologyMode::Mixed, CohomologyMode::Strict];
}

impl fmt::Display for CohomologyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CohomologyMode::Mixed => "mixed",
            CohomologyMode::Strict => "strict",
        })
    }
}

impl std::str::FromStr for CohomologyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mixed" => Ok(CohomologyMode::Mixed),
            "strict" => Ok(CohomologyMode::Strict),
            other => Err(Error::InvalidArgument(format!(
                "unknown cohomology mode {other:?}"
            ))),
        }
    }
}

/// Position of `(component, i, j, r)` among the `2 n^3` cochain unknowns.
pub fn cochain_index(n: usize, component: usize, i: usize, j: usize, r: usize) -> usize {
    ((component * n + i) * n + j) * n + r
}

/// `g{r}_{i}{j}` then `h{r}_{i}{j}`, 1-based.
pub fn cochain_labels(n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(2 * n * n * n);
    for letter in ["g", "h"] {
        for i in 1..=n {
            for j in 1..=n {
                for r in 1..=n {
                    out.push(format!("{letter}{r}_{i}{j}"));
                }
            }
        }
    }
    out
}

/// Rows of the cocycle system: one per `(i, j, k, r)` for the mixed
/// condition, then one per `(product, i, j, k, r)` in strict mode.
pub fn cocycle_system(pair: &AlgebraPair, mode: CohomologyMode) -> LinearSystem {
    let n = pair.dim();
    let [b, c] = pair.tensors();
    let mut sys = LinearSystem::new(cochain_labels(n));
    let cols = sys.cols();
    let idx = |comp, i, j, r| cochain_index(n, comp, i, j, r);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for r in 0..n {
                    let mut row = vec![Poly::zero(); cols];
                    for m in 0..n {
                        row[idx(1, m, k, r)] += b.get(i, j, m);
                        row[idx(0, m, k, r)] += c.get(i, j, m);
                        row[idx(0, i, m, r)] -= c.get(j, k, m);
                        row[idx(1, i, m, r)] -= b.get(j, k, m);
                    }
                    sys.rows.push(row);
                }
            }
        }
    }
    if mode == CohomologyMode::Strict {
        for (comp, t) in [(0, b), (1, c)] {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for r in 0..n {
                            let mut row = vec![Poly::zero(); cols];
                            for m in 0..n {
                                row[idx(comp, m, k, r)] += t.get(i, j, m);
                                row[idx(comp, i, m, r)] -= t.get(j, k, m);
                            }
                            sys.rows.push(row);
                        }
                    }
                }
            }
        }
    }
    sys
}

fn bilinear(phi: &[Poly], n: usize, comp: usize, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); n];
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            if ui.is_zero() || vj.is_zero() {
                continue;
            }
            let w = ui * vj;
            for (r, o) in out.iter_mut().enumerate() {
                let x = &phi[cochain_index(n, comp, i, j, r)];
                if !x.is_zero() {
                    *o += &(&w * x);
                }
            }
        }
    }
    out
}

/// Direct evaluation of the cocycle conditions on basis triples.
pub fn is_cocycle(pair: &AlgebraPair, mode: CohomologyMode, phi: &[Poly]) -> bool {
    let n = pair.dim();
    let [b, c] = pair.tensors();
    let e = |i: usize| {
        let mut v = vec![Poly::zero(); n];
        v[i] = Poly::from_i64(1);
        v
    };
    let vanish = |x: Vec<Poly>| x.iter().all(Zero::is_zero);
    let sub =
        |a: Vec<Poly>, b: Vec<Poly>| a.into_iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();
    let add =
        |a: Vec<Poly>, b: Vec<Poly>| a.into_iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (u, v, w) = (e(i), e(j), e(k));
                let lhs = add(
                    bilinear(phi, n, 1, &b.multiply(&u, &v), &w),
                    bilinear(phi, n, 0, &c.multiply(&u, &v), &w),
                );
                let rhs = add(
                    bilinear(phi, n, 0, &u, &c.multiply(&v, &w)),
                    bilinear(phi, n, 1, &u, &b.multiply(&v, &w)),
                );
                if !vanish(sub(lhs, rhs)) {
                    return false;
                }
                if mode == CohomologyMode::Strict {
                    for (comp, t) in [(0, b), (1, c)] {
                        let l = bilinear(phi, n, comp, &t.multiply(&u, &v), &w);
                        let r = bilinear(phi, n, comp, &u, &t.multiply(&v, &w));
                        if !vanish(sub(l, r)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// The cochain `(-T o *1, -T o *2)` induced by `T` (entry `(r, s)` is the
/// `e_r` coefficient of `T(e_s)`).
pub fn coboundary_of(pair: &AlgebraPair, t: &crate::matrix::Matrix<Poly>) -> Vec<Poly> {
    let n = pair.dim();
    let mut out = vec![Poly::zero(); 2 * n * n * n];
    for (comp, prod) in pair.tensors().into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let img = t.apply(prod.basis_product(i, j));
                for (r, x) in img.into_iter().enumerate() {
                    out[cochain_index(n, comp, i, j, r)] = -x;
                }
            }
        }
    }
    out
}

/// Row-reduced basis of the coboundaries, the images of the elementary
/// matrices `E_{rs}`.
pub fn coboundary_space(pair: &AlgebraPair) -> Vec<Vec<Poly>> {
    linalg::span_echelon(&coboundary_images(pair))
}

fn coboundary_images(pair: &AlgebraPair) -> Vec<Vec<Poly>> {
    let n = pair.dim();
    let mut images = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let t = crate::matrix::Matrix::from_fn(n, n, |a, b| {
                Poly::from_i64(i64::from(a == r && b == s))
            });
            images.push(coboundary_of(pair, &t));
        }
    }
    images
}

fn tensor_is_symbolic(t: &StructureTensor<Poly>) -> bool {
    t.to_rational().is_none()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyResult {
    pub mode: CohomologyMode,
    pub n: usize,
    pub labels: Vec<String>,
    pub dim_z2: usize,
    pub dim_b2: usize,
    pub dim_b2_in_z2: usize,
    pub dim_h2: usize,
    pub z2_basis: Vec<Vec<Poly>>,
    /// Cocycles whose classes form a basis of the quotient.
    pub representatives: Vec<Vec<Poly>>,
    /// Whether every coboundary is a cocycle.
    pub b2_within_z2: bool,
    pub exceptions: Vec<Exception>,
    pub unresolved: Vec<Poly>,
}

impl CohomologyResult {
    /// Number of representatives with support in the `g` and `h` halves.
    pub fn split_counts(&self) -> (usize, usize) {
        let half = self.labels.len() / 2;
        let mut g = 0;
        let mut h = 0;
        for v in &self.representatives {
            if v[..half].iter().any(|x| !x.is_zero()) {
                g += 1;
            }
            if v[half..].iter().any(|x| !x.is_zero()) {
                h += 1;
            }
        }
        (g, h)
    }

    /// `(i, j)` pairs (1-based) at which every cocycle of the given
    /// component vanishes identically.
    pub fn zero_rows(&self, component: usize) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let zero = self
                    .z2_basis
                    .iter()
                    .all(|v| (0..n).all(|r| v[cochain_index(n, component, i, j, r)].is_zero()));
                if zero {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn representative_labels(&self) -> Vec<String> {
        self.representatives
            .iter()
            .map(|v| linalg::leading_index(v).map_or_else(String::new, |k| self.labels[k].clone()))
            .collect()
    }
}

/// `H^2 = Z^2 / (B^2 cap Z^2)` using the canonical elimination order.
pub fn second_cohomology(pair: &AlgebraPair, mode: CohomologyMode) -> Result<CohomologyResult> {
    let sys = cocycle_system(pair, mode);
    let cols = sys.cols();
    let order: Vec<usize> = (0..cols).rev().collect();
    compute(pair, mode, &sys, &order)
}

/// Same quotient computed with columns eliminated left to right, used as
/// an independent cross-check of the dimensions.
pub fn second_cohomology_permuted(
    pair: &AlgebraPair,
    mode: CohomologyMode,
) -> Result<CohomologyResult> {
    let sys = cocycle_system(pair, mode);
    let order: Vec<usize> = (0..sys.cols()).collect();
    compute(pair, mode, &sys, &order)
}

fn compute(
    pair: &AlgebraPair,
    mode: CohomologyMode,
    sys: &LinearSystem,
    order: &[usize],
) -> Result<CohomologyResult> {
    let ns = linalg::nullspace_with_order(sys, order, &pair.exclusions());
    for (t, v) in ns.basis.iter().enumerate() {
        if !is_cocycle(pair, mode, v) {
            return Err(Error::Internal(format!(
                "cocycle basis member {t} of {} fails the {mode} condition",
                pair.name()
            )));
        }
    }
    let images = coboundary_images(pair);
    let b2 = linalg::span_echelon(&images);
    let b2_within_z2 = images.iter().all(|v| is_cocycle(pair, mode, v));
    let meet = if b2_within_z2 {
        b2.clone()
    } else {
        linalg::intersect_spans(&b2, &ns.basis)
    };
    // Complement of the meet inside Z^2, built greedily from the cocycle basis.
    let mut span = meet.clone();
    let mut representatives: Vec<Vec<Poly>> = Vec::new();
    for v in &ns.basis {
        if !linalg::in_span(&span, v) {
            representatives.push(v.clone());
            span.push(v.clone());
            span = linalg::span_echelon(&span);
        }
    }
    let dim_z2 = ns.dim();
    let result = CohomologyResult {
        mode,
        n: pair.dim(),
        labels: sys.labels.clone(),
        dim_z2,
        dim_b2: b2.len(),
        dim_b2_in_z2: meet.len(),
        dim_h2: dim_z2 - meet.len(),
        z2_basis: ns.basis.clone(),
        representatives,
        b2_within_z2,
        exceptions: ns.exceptions.clone(),
        unresolved: ns.unresolved.clone(),
    };
    if result.representatives.len() != result.dim_h2 && !tensor_is_symbolic(&pair.first.tensor) {
        return Err(Error::Internal(format!(
            "{} representatives for an H^2 of dimension {}",
            result.representatives.len(),
            result.dim_h2
        )));
    }
    Ok(result)
}
