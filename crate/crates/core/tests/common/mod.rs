//! Independent reference computations for the integration tests.
//!
//! Everything here works from raw structure constants with plain rational
//! arithmetic and dense Gaussian elimination. Nothing calls the library's
//! solvers, identity evaluators or cohomology code.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use compalg::{Poly, Rational as Q, StructureTensor};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Dense multiplication table, `c[(i * n + j) * n + k]` the `e_k`
/// coefficient of `e_i e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub n: usize,
    pub c: Vec<Q>,
}

impl Table {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> Q) -> Table {
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(f(i, j, k));
                }
            }
        }
        Table { n, c }
    }

    /// Numeric table of a catalog tensor after binding its parameters.
    pub fn of(t: &StructureTensor<Poly>, bind: &BTreeMap<String, Poly>) -> Table {
        Table::from_fn(t.dim(), |i, j, k| {
            t.get(i, j, k)
                .substitute(bind)
                .as_rational()
                .expect("all parameters bound")
        })
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn mul(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let n = self.n;
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let w = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let x = self.get(i, j, k);
                    if !x.is_zero() {
                        *o += &w * x;
                    }
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let (a, b, c) = (unit(n, i), unit(n, j), unit(n, k));
                    self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                })
            })
        })
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n)
        .map(|k| if k == i { Q::one() } else { Q::zero() })
        .collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Square matrix, `m[r][c]` the `e_r` coefficient of the image of `e_c`.
pub type Map = Vec<Vec<Q>>;

pub fn apply(m: &Map, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn zero_map(n: usize) -> Map {
    vec![vec![Q::zero(); n]; n]
}

pub fn identity_map(n: usize) -> Map {
    (0..n).map(|r| unit(n, r)).collect()
}

pub fn elementary(n: usize, r: usize, c: usize) -> Map {
    let mut m = zero_map(n);
    m[r][c] = Q::one();
    m
}

pub fn compose(a: &Map, b: &Map) -> Map {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| &a[r][k] * &b[k][c]).sum())
                .collect()
        })
        .collect()
}

pub fn det(m: &Map) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= a[col][col].clone();
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let x = &f * &a[col][c];
                a[r][c] -= x;
            }
        }
    }
    d
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in col..cols {
                    let x = &f * &a[rank][c];
                    a[r][c] -= x;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// True when the functional `f` vanishes on every solution of `rows x = 0`.
pub fn implied(rows: &[Vec<Q>], f: Vec<Q>) -> bool {
    let mut ext = rows.to_vec();
    ext.push(f);
    rank(&ext) == rank(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linear {
    Derivation,
    Centroid,
    QuasiCentroid,
}

/// Residual of a linear defining identity, evaluated on all basis pairs of
/// both products.
pub fn linear_residual(kind: Linear, tabs: [&Table; 2], m: &Map) -> Vec<Q> {
    let mut out = Vec::new();
    for t in tabs {
        let n = t.n;
        for i in 0..n {
            for j in 0..n {
                let (u, v) = (unit(n, i), unit(n, j));
                let uv = apply(m, &t.mul(&u, &v));
                let left = t.mul(&apply(m, &u), &v);
                let right = t.mul(&u, &apply(m, &v));
                match kind {
                    Linear::Derivation => out.extend(sub(&uv, &add(&left, &right))),
                    Linear::Centroid => {
                        out.extend(sub(&uv, &left));
                        out.extend(sub(&uv, &right));
                    }
                    Linear::QuasiCentroid => out.extend(sub(&left, &right)),
                }
            }
        }
    }
    out
}

/// Constraint rows over the `n^2` unknowns, unknown `r * n + c` being the
/// matrix entry `(r, c)`.
pub fn linear_constraints(kind: Linear, tabs: [&Table; 2]) -> Vec<Vec<Q>> {
    let n = tabs[0].n;
    let columns: Vec<Vec<Q>> = (0..n * n)
        .map(|x| linear_residual(kind, tabs, &elementary(n, x / n, x % n)))
        .collect();
    transpose(&columns)
}

pub fn transpose(columns: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let len = columns.first().map_or(0, Vec::len);
    (0..len)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect()
}

pub fn linear_dim(kind: Linear, tabs: [&Table; 2]) -> usize {
    let n = tabs[0].n;
    n * n - rank(&linear_constraints(kind, tabs))
}

/// Entries `(r, c)` forced to vanish on the whole solution space.
pub fn forced_zeros(kind: Linear, tabs: [&Table; 2]) -> Vec<(usize, usize)> {
    let n = tabs[0].n;
    let rows = linear_constraints(kind, tabs);
    (0..n * n)
        .filter(|&x| implied(&rows, unit(n * n, x)))
        .map(|x| (x / n, x % n))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Automorphism,
    RotaBaxter,
    Nijenhuis,
    Averaging,
    Reynolds,
}

pub const OPS: [Op; 5] = [
    Op::Automorphism,
    Op::RotaBaxter,
    Op::Nijenhuis,
    Op::Averaging,
    Op::Reynolds,
];

/// Residual of an operator identity in the displayed form, on basis pairs of
/// both products. Determinants are not checked.
pub fn op_residual(op: Op, tabs: [&Table; 2], m: &Map) -> Vec<Q> {
    let mut out = Vec::new();
    for t in tabs {
        let n = t.n;
        let p = |a: &[Q], b: &[Q]| t.mul(a, b);
        let f = |a: &[Q]| apply(m, a);
        for i in 0..n {
            for j in 0..n {
                let (u, v) = (unit(n, i), unit(n, j));
                let (fu, fv) = (f(&u), f(&v));
                let fu_fv = p(&fu, &fv);
                let fu_v = p(&fu, &v);
                let u_fv = p(&u, &fv);
                let uv = p(&u, &v);
                match op {
                    Op::Automorphism => out.extend(sub(&f(&uv), &fu_fv)),
                    Op::RotaBaxter => out.extend(sub(&fu_fv, &f(&add(&fu_v, &u_fv)))),
                    Op::Nijenhuis => {
                        let rhs = sub(&add(&f(&fu_v), &u_fv), &f(&uv));
                        out.extend(sub(&fu_fv, &rhs));
                    }
                    Op::Averaging => {
                        out.extend(sub(&f(&fu_v), &fu_fv));
                        out.extend(sub(&fu_fv, &f(&u_fv)));
                    }
                    Op::Reynolds => {
                        let inner = sub(&add(&fu_v, &u_fv), &fu_fv);
                        out.extend(sub(&f(&fu_v), &f(&inner)));
                    }
                }
            }
        }
    }
    out
}

pub fn vanishes(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Every integer matrix with entries in `[-bound, bound]`.
pub fn integer_grid(n: usize, bound: i64) -> Vec<Map> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow((n * n) as u32);
    (0..total)
        .map(|mut code| {
            let mut flat = vec![0i64; n * n];
            for x in flat.iter_mut().rev() {
                *x = (code % side) as i64 - bound;
                code /= side;
            }
            (0..n)
                .map(|r| (0..n).map(|c| q(flat[r * n + c])).collect())
                .collect()
        })
        .collect()
}

pub fn to_i64(m: &Map) -> Vec<Vec<i64>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).unwrap()
                })
                .collect()
        })
        .collect()
}

/// Numeric value of a printed entry under a parameter assignment.
pub fn eval_entry(text: &str, bind: &BTreeMap<String, Poly>) -> Q {
    compalg::parse_scalar(text)
        .expect("printed entry parses")
        .substitute(bind)
        .as_rational()
        .expect("all parameters bound")
}

pub fn printed_parameters(rows: &[Vec<String>]) -> Vec<String> {
    let mut out: Vec<String> = rows
        .iter()
        .flatten()
        .flat_map(|e| {
            compalg::parse_scalar(e)
                .expect("printed entry parses")
                .indeterminates()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn eval_printed(rows: &[Vec<String>], bind: &BTreeMap<String, Poly>) -> Map {
    rows.iter()
        .map(|row| row.iter().map(|e| eval_entry(e, bind)).collect())
        .collect()
}

pub fn binding(values: &[(String, Q)]) -> BTreeMap<String, Poly> {
    values
        .iter()
        .map(|(k, v)| (k.clone(), Poly::constant(v.clone())))
        .collect()
}

/// A printed linear family as the images of its unit parameter vectors.
pub fn printed_generators(rows: &[Vec<String>]) -> Vec<Map> {
    let params = printed_parameters(rows);
    params
        .iter()
        .map(|p| {
            let vals: Vec<(String, Q)> = params
                .iter()
                .map(|x| (x.clone(), if x == p { Q::one() } else { Q::zero() }))
                .collect();
            eval_printed(rows, &binding(&vals))
        })
        .collect()
}

pub fn flat(m: &Map) -> Vec<Q> {
    m.iter().flatten().cloned().collect()
}

/// Seeded stream of small nonzero rationals for sampling parameters.
pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn nonzero(&mut self) -> Q {
        loop {
            let num: i64 = self.0.gen_range(-9..=9);
            let den: i64 = self.0.gen_range(1..=4);
            if num != 0 {
                return Q::new(num.into(), den.into());
            }
        }
    }

    pub fn small(&mut self) -> i64 {
        self.0.gen_range(-1..=1)
    }

    pub fn assign(&mut self, names: &[String]) -> BTreeMap<String, Poly> {
        let vals: Vec<(String, Q)> = names.iter().map(|x| (x.clone(), self.nonzero())).collect();
        binding(&vals)
    }
}

/// Verdict of sampling a printed operator family: whether the identity
/// held at every sample, and whether some sample had nonzero determinant.
pub struct SampleVerdict {
    pub identity_holds: bool,
    pub some_invertible: bool,
}

pub fn sample_family(
    op: Op,
    tabs: [&Table; 2],
    rows: &[Vec<String>],
    seed: u64,
    trials: usize,
) -> SampleVerdict {
    let params = printed_parameters(rows);
    let mut s = Sampler::new(seed);
    let mut identity_holds = true;
    let mut some_invertible = false;
    for _ in 0..trials {
        let m = eval_printed(rows, &s.assign(&params));
        identity_holds &= vanishes(&op_residual(op, tabs, &m));
        some_invertible |= !det(&m).is_zero();
    }
    SampleVerdict {
        identity_holds,
        some_invertible,
    }
}

/// Cochain unknown `(component, i, j, r)`: the `e_r` coefficient of
/// `phi_component(e_i, e_j)`.
fn cochain_at(n: usize, comp: usize, i: usize, j: usize, r: usize) -> usize {
    ((comp * n + i) * n + j) * n + r
}

fn phi(x: &[Q], n: usize, comp: usize, u: &[Q], v: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let w = &u[i] * &v[j];
            if w.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                *o += &w * &x[cochain_at(n, comp, i, j, r)];
            }
        }
    }
    out
}

/// Mixed cocycle residual, optionally with the per-product conditions.
pub fn cocycle_residual(tabs: [&Table; 2], strict: bool, x: &[Q]) -> Vec<Q> {
    let n = tabs[0].n;
    let [s1, s2] = tabs;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (u, v, w) = (unit(n, i), unit(n, j), unit(n, k));
                let lhs = add(
                    &phi(x, n, 1, &s1.mul(&u, &v), &w),
                    &phi(x, n, 0, &s2.mul(&u, &v), &w),
                );
                let rhs = add(
                    &phi(x, n, 0, &u, &s2.mul(&v, &w)),
                    &phi(x, n, 1, &u, &s1.mul(&v, &w)),
                );
                out.extend(sub(&lhs, &rhs));
                if strict {
                    for (comp, t) in [(0, s1), (1, s2)] {
                        let l = phi(x, n, comp, &t.mul(&u, &v), &w);
                        let r = phi(x, n, comp, &u, &t.mul(&v, &w));
                        out.extend(sub(&l, &r));
                    }
                }
            }
        }
    }
    out
}

/// `(-T(u *1 v), -T(u *2 v))` as a cochain vector.
pub fn coboundary(tabs: [&Table; 2], t: &Map) -> Vec<Q> {
    let n = tabs[0].n;
    let mut out = vec![Q::zero(); 2 * n * n * n];
    for (comp, tab) in tabs.into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let img = apply(t, &tab.mul(&unit(n, i), &unit(n, j)));
                for (r, x) in img.into_iter().enumerate() {
                    out[cochain_at(n, comp, i, j, r)] = -x;
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H2Dims {
    pub z2: usize,
    pub b2: usize,
    pub b2_in_z2: usize,
    pub h2: usize,
}

pub fn h2_dims(tabs: [&Table; 2], strict: bool) -> H2Dims {
    let n = tabs[0].n;
    let unknowns = 2 * n * n * n;
    let columns: Vec<Vec<Q>> = (0..unknowns)
        .map(|x| cocycle_residual(tabs, strict, &unit(unknowns, x)))
        .collect();
    let z2 = unknowns - rank(&transpose(&columns));
    let images: Vec<Vec<Q>> = (0..n * n)
        .map(|x| coboundary(tabs, &elementary(n, x / n, x % n)))
        .collect();
    let b2 = rank(&images);
    let constrained: Vec<Vec<Q>> = images
        .iter()
        .map(|b| cocycle_residual(tabs, strict, b))
        .collect();
    let b2_in_z2 = b2 - rank(&constrained);
    H2Dims {
        z2,
        b2,
        b2_in_z2,
        h2: z2 - b2_in_z2,
    }
}

/// `u *1 (v *2 w) + u *2 (v *1 w) - (u *1 v) *2 w - (u *2 v) *1 w` on basis
/// triples, computed symbolically from the structure constants.
pub fn compatibility_defect(
    a: &StructureTensor<Poly>,
    b: &StructureTensor<Poly>,
) -> BTreeMap<(usize, usize, usize), Vec<Poly>> {
    let n = a.dim();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let value: Vec<Poly> = (0..n)
                    .map(|r| {
                        let mut acc = Poly::zero();
                        for m in 0..n {
                            acc += b.get(j, k, m) * a.get(i, m, r);
                            acc += a.get(j, k, m) * b.get(i, m, r);
                            acc -= &(a.get(i, j, m) * b.get(m, k, r));
                            acc -= &(b.get(i, j, m) * a.get(m, k, r));
                        }
                        acc
                    })
                    .collect();
                if value.iter().any(|x| !x.is_zero()) {
                    out.insert((i, j, k), value);
                }
            }
        }
    }
    out
}

/// Associator `(e_i e_j) e_k - e_i (e_j e_k)` computed symbolically.
pub fn associator_vanishes(t: &StructureTensor<Poly>) -> bool {
    let n = t.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                (0..n).all(|r| {
                    let mut acc = Poly::zero();
                    for m in 0..n {
                        acc += t.get(i, j, m) * t.get(m, k, r);
                        acc -= &(t.get(j, k, m) * t.get(i, m, r));
                    }
                    acc.is_zero()
                })
            })
        })
    })
}

/// Integral automorphisms with entries in `[-bound, bound]`, found by plain
/// integer arithmetic. `None` when a table has non-integral constants.
pub fn automorphism_grid(tabs: [&Table; 2], bound: i64) -> Option<Vec<Vec<Vec<i64>>>> {
    let n = tabs[0].n;
    let ints: Vec<Vec<i64>> = tabs
        .iter()
        .map(|t| {
            t.c.iter()
                .map(|x| {
                    x.is_integer()
                        .then(|| i64::try_from(x.to_integer()).ok())
                        .flatten()
                })
                .collect::<Option<Vec<i64>>>()
        })
        .collect::<Option<_>>()?;
    let side = 2 * bound + 1;
    let total = side.pow((n * n) as u32);
    let mut out = Vec::new();
    let mut m = vec![0i64; n * n];
    for code in 0..total {
        let mut x = code;
        for e in m.iter_mut().rev() {
            *e = x % side - bound;
            x /= side;
        }
        let ok = ints.iter().all(|c| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    // theta(e_i e_j) against theta(e_i) theta(e_j), coordinate r.
                    (0..n).all(|r| {
                        let lhs: i64 = (0..n).map(|k| c[(i * n + j) * n + k] * m[r * n + k]).sum();
                        let mut rhs = 0;
                        for a in 0..n {
                            for b in 0..n {
                                rhs += m[a * n + i] * m[b * n + j] * c[(a * n + b) * n + r];
                            }
                        }
                        lhs == rhs
                    })
                })
            })
        });
        if ok {
            let map: Map = (0..n)
                .map(|r| (0..n).map(|c| q(m[r * n + c])).collect())
                .collect();
            if !det(&map).is_zero() {
                out.push((0..n).map(|r| m[r * n..(r + 1) * n].to_vec()).collect());
            }
        }
    }
    Some(out)
}
