//! Operator identities that are polynomial in the unknown map: automorphism,
//! Rota-Baxter (weight zero), Nijenhuis, averaging and Reynolds.
//!
//! Residuals are `LHS - RHS` of each identity on every pair of basis
//! vectors. Families with denominators are handled by clearing: a matrix
//! `M = A / q` is evaluated through `A`, and every term that applies the
//! operator `k` times is multiplied by `q^(D - k)`, `D` being the largest
//! number of applications in the identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{unit, AlgebraPair, StructureTensor};
use crate::catalog::PrintedMatrix;
use crate::error::{Error, Result};
use crate::invariant::Invariant;
use crate::matrix::Matrix;
use crate::scalar::{parse_scalar, Poly, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityTag {
    Automorphism,
    RotaBaxter,
    Nijenhuis,
    Averaging,
    Reynolds,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 5] = [
        IdentityTag::Automorphism,
        IdentityTag::RotaBaxter,
        IdentityTag::Nijenhuis,
        IdentityTag::Averaging,
        IdentityTag::Reynolds,
    ];

    pub fn invariant(self) -> Invariant {
        match self {
            IdentityTag::Automorphism => Invariant::Automorphism,
            IdentityTag::RotaBaxter => Invariant::RotaBaxter,
            IdentityTag::Nijenhuis => Invariant::Nijenhuis,
            IdentityTag::Averaging => Invariant::Averaging,
            IdentityTag::Reynolds => Invariant::Reynolds,
        }
    }

    pub fn from_invariant(inv: Invariant) -> Option<Self> {
        IdentityTag::ALL.into_iter().find(|t| t.invariant() == inv)
    }

    /// Whether a standard variant differing from the default exists.
    pub fn has_variants(self) -> bool {
        matches!(self, IdentityTag::Nijenhuis | IdentityTag::Reynolds)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Paper,
    Standard,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Variant::Paper),
            "standard" => Ok(Variant::Standard),
            other => Err(Error::InvalidArgument(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OperatorIdentity {
    pub tag: IdentityTag,
    pub variant: Variant,
}

impl OperatorIdentity {
    pub fn new(tag: IdentityTag) -> Self {
        OperatorIdentity {
            tag,
            variant: Variant::Paper,
        }
    }

    pub fn standard(tag: IdentityTag) -> Self {
        OperatorIdentity {
            tag,
            variant: Variant::Standard,
        }
    }

    /// Branches of the identity, each a signed sum that must vanish.
    fn branches(self) -> Vec<Vec<(i64, Expr)>> {
        use Expr::{U, V};
        let m = |a: Expr, b: Expr| Expr::Mul(Box::new(a), Box::new(b));
        let t = |a: Expr| Expr::Op(Box::new(a));
        match (self.tag, self.variant) {
            (IdentityTag::Automorphism, _) => vec![vec![(1, t(m(U, V))), (-1, m(t(U), t(V)))]],
            (IdentityTag::RotaBaxter, _) => vec![vec![
                (1, m(t(U), t(V))),
                (-1, t(m(t(U), V))),
                (-1, t(m(U, t(V)))),
            ]],
            (IdentityTag::Nijenhuis, Variant::Paper) => vec![vec![
                (1, m(t(U), t(V))),
                (-1, t(m(t(U), V))),
                (-1, m(U, t(V))),
                (1, t(m(U, V))),
            ]],
            (IdentityTag::Nijenhuis, Variant::Standard) => vec![vec![
                (1, m(t(U), t(V))),
                (-1, t(m(t(U), V))),
                (-1, t(m(U, t(V)))),
                (1, t(t(m(U, V)))),
            ]],
            (IdentityTag::Averaging, _) => vec![
                vec![(1, t(m(t(U), V))), (-1, m(t(U), t(V)))],
                vec![(1, m(t(U), t(V))), (-1, t(m(U, t(V))))],
            ],
            (IdentityTag::Reynolds, Variant::Paper) => vec![vec![
                (1, t(m(t(U), V))),
                (-1, t(m(t(U), V))),
                (-1, t(m(U, t(V)))),
                (1, t(m(t(U), t(V)))),
            ]],
            (IdentityTag::Reynolds, Variant::Standard) => vec![vec![
                (1, m(t(U), t(V))),
                (-1, t(m(t(U), V))),
                (-1, t(m(U, t(V)))),
                (1, t(m(t(U), t(V)))),
            ]],
        }
    }
}

impl fmt::Display for OperatorIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag.invariant())?;
        if self.tag.has_variants() && self.variant == Variant::Standard {
            write!(f, " (standard)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Expr {
    U,
    V,
    Op(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn degree(&self) -> u32 {
        match self {
            Expr::U | Expr::V => 0,
            Expr::Op(e) => 1 + e.degree(),
            Expr::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    fn eval<T: Ring>(&self, u: &[T], v: &[T], c: &StructureTensor<T>, m: &Matrix<T>) -> Vec<T> {
        match self {
            Expr::U => u.to_vec(),
            Expr::V => v.to_vec(),
            Expr::Op(e) => m.apply(&e.eval(u, v, c, m)),
            Expr::Mul(a, b) => c.multiply(&a.eval(u, v, c, m), &b.eval(u, v, c, m)),
        }
    }
}

fn pow<T: Ring>(x: &T, e: u32) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}

fn branch_value<T: Ring>(
    terms: &[(i64, Expr)],
    u: &[T],
    v: &[T],
    c: &StructureTensor<T>,
    m: &Matrix<T>,
    denom: &T,
) -> Vec<T> {
    let top = terms.iter().map(|(_, e)| e.degree()).max().unwrap_or(0);
    let mut acc = vec![T::zero(); u.len()];
    for (sign, e) in terms {
        let scale = T::from_i64(*sign) * pow(denom, top - e.degree());
        for (a, x) in acc.iter_mut().zip(e.eval(u, v, c, m)) {
            if !x.is_zero() {
                *a = a.clone() + scale.clone() * x;
            }
        }
    }
    acc
}

/// True iff `m` satisfies the identity on both products; stops at the first
/// nonzero residual. Determinant conditions are not checked here.
pub fn satisfies<T: Ring>(
    tensors: [&StructureTensor<T>; 2],
    id: OperatorIdentity,
    m: &Matrix<T>,
) -> bool {
    let n = m.rows();
    let branches = id.branches();
    let one = T::one();
    tensors.iter().all(|c| {
        branches.iter().all(|terms| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    branch_value(terms, &unit::<T>(n, i), &unit::<T>(n, j), c, m, &one)
                        .iter()
                        .all(Zero::is_zero)
                })
            })
        })
    })
}

/// An operator matrix whose entries may carry polynomial denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricMatrix {
    pub num: Matrix<Poly>,
    pub den: Matrix<Poly>,
    /// Extra quantities required to be nonzero, beyond the denominators.
    pub side_conditions: Vec<Poly>,
}

impl ParametricMatrix {
    pub fn new(m: Matrix<Poly>) -> Self {
        let n = m.rows();
        ParametricMatrix {
            den: Matrix::from_fn(m.rows(), m.cols(), |_, _| Poly::one()),
            num: m,
            side_conditions: Vec::new(),
        }
        .checked(n)
    }

    fn checked(self, n: usize) -> Self {
        assert_eq!(self.num.rows(), n);
        self
    }

    pub fn dim(&self) -> usize {
        self.num.rows()
    }

    /// Parses printed entries; an entry `a/b` whose `b` is not an integer
    /// literal is read as a quotient of polynomials.
    pub fn from_printed(rows: &PrintedMatrix) -> Result<Self> {
        let n = rows.len();
        let mut num = Matrix::zeros(n, n);
        let mut den = Matrix::zeros(n, n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (c, text) in row.iter().enumerate() {
                let (a, b) = parse_quotient(text)?;
                num[(r, c)] = a;
                den[(r, c)] = b;
            }
        }
        Ok(ParametricMatrix {
            num,
            den,
            side_conditions: Vec::new(),
        })
    }

    /// Distinct nonconstant denominators, in first-appearance order.
    pub fn denominators(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for d in self.den.entries() {
            if !d.is_constant() && !out.contains(d) {
                out.push(d.clone());
            }
        }
        out
    }

    /// `(A, q)` with `M = A / q`, `q` the product of the distinct
    /// denominators (constant denominators folded into `A`).
    pub fn cleared(&self) -> (Matrix<Poly>, Poly) {
        let dens = self.denominators();
        let q = dens.iter().fold(Poly::one(), |acc, d| &acc * d);
        let n = self.dim();
        let a = Matrix::from_fn(n, n, |r, c| {
            let d = &self.den[(r, c)];
            let entry = match d.as_rational() {
                Some(k) => self.num[(r, c)].scale(&(Rational::one() / k)),
                None => self.num[(r, c)].clone(),
            };
            let others = dens
                .iter()
                .filter(|x| d.is_constant() || *x != d)
                .fold(Poly::one(), |acc, x| &acc * x);
            &entry * &others
        });
        (a, q)
    }

    /// Entries as polynomials; `None` when a denominator is nonconstant.
    pub fn polynomial(&self) -> Option<Matrix<Poly>> {
        if !self.denominators().is_empty() {
            return None;
        }
        Some(self.cleared().0)
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.num
            .entries()
            .iter()
            .chain(self.den.entries())
            .chain(&self.side_conditions)
            .flat_map(Poly::indeterminates)
            .collect()
    }

    /// Row-major entry text, `num/den` where a denominator is present.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        let n = self.dim();
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let (a, b) = (&self.num[(r, c)], &self.den[(r, c)]);
                        if b.is_one() {
                            a.to_string()
                        } else {
                            format!("({a})/({b})")
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

fn parse_quotient(text: &str) -> Result<(Poly, Poly)> {
    let mut depth = 0i32;
    let mut split = None;
    for (pos, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                let rest = text[pos + 1..].trim();
                if !rest.chars().all(|c| c.is_ascii_digit()) || rest.is_empty() {
                    split = Some(pos);
                }
            }
            _ => {}
        }
    }
    match split {
        None => Ok((parse_scalar(text)?, Poly::one())),
        Some(pos) => {
            let den = parse_scalar(&text[pos + 1..])?;
            if den.is_identically_zero() {
                return Err(Error::InvalidArgument(format!(
                    "zero denominator in {text:?}"
                )));
            }
            Ok((parse_scalar(&text[..pos])?, den))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    /// 1 or 2.
    pub product: usize,
    pub branch: usize,
    /// 1-based basis indices and output coordinate.
    pub i: usize,
    pub j: usize,
    pub r: usize,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub value: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSet {
    pub residuals: Vec<Residual>,
    pub side_conditions: Vec<Poly>,
}

impl ResidualSet {
    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.value.is_identically_zero())
    }

    pub fn failing(&self) -> Vec<&Residual> {
        self.residuals
            .iter()
            .filter(|r| !r.value.is_identically_zero())
            .collect()
    }

    pub fn at(&self, product: usize, i: usize, j: usize, r: usize) -> Option<&Poly> {
        self.residuals
            .iter()
            .find(|x| (x.product, x.i, x.j, x.r) == (product, i, j, r) && x.branch == 0)
            .map(|x| &x.value)
    }
}

fn check_dim(pair: &AlgebraPair, m: &ParametricMatrix) -> Result<()> {
    if m.dim() != pair.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.dim(),
            found: m.dim(),
        });
    }
    Ok(())
}

/// Every residual coefficient, zero ones included, after denominator
/// clearing. Denominators are listed as side conditions.
pub fn residuals(
    pair: &AlgebraPair,
    id: OperatorIdentity,
    m: &ParametricMatrix,
) -> Result<ResidualSet> {
    check_dim(pair, m)?;
    let n = pair.dim();
    let (a, q) = m.cleared();
    let mut out = Vec::new();
    for (p, c) in pair.tensors().into_iter().enumerate() {
        for (b, terms) in id.branches().iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let val = branch_value(terms, &unit(n, i), &unit(n, j), c, &a, &q);
                    for (r, value) in val.into_iter().enumerate() {
                        out.push(Residual {
                            product: p + 1,
                            branch: b,
                            i: i + 1,
                            j: j + 1,
                            r: r + 1,
                            value,
                        });
                    }
                }
            }
        }
    }
    let mut side = m.denominators();
    side.extend(m.side_conditions.iter().cloned());
    Ok(ResidualSet {
        residuals: out,
        side_conditions: side,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideCondition {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub value: Poly,
    /// False when the condition is identically zero, so no member of the
    /// family can satisfy it.
    pub satisfiable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyVerdict {
    pub verified: bool,
    pub failing: Vec<Residual>,
    pub side_conditions: Vec<SideCondition>,
}

/// Symbolic soundness check of a whole family. Automorphism families also
/// need a determinant that is not identically zero, recorded as a side
/// condition.
pub fn verify_family(
    pair: &AlgebraPair,
    id: OperatorIdentity,
    m: &ParametricMatrix,
) -> Result<FamilyVerdict> {
    let set = residuals(pair, id, m)?;
    let mut conditions = set.side_conditions.clone();
    if id.tag == IdentityTag::Automorphism {
        let det = m.cleared().0.det();
        if !det.is_constant() || det.is_identically_zero() {
            conditions.push(det);
        }
    }
    let side_conditions: Vec<SideCondition> = conditions
        .into_iter()
        .map(|value| SideCondition {
            satisfiable: !value.is_identically_zero(),
            value,
        })
        .collect();
    let failing: Vec<Residual> = set.failing().into_iter().cloned().collect();
    Ok(FamilyVerdict {
        verified: failing.is_empty() && side_conditions.iter().all(|s| s.satisfiable),
        failing,
        side_conditions,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefutationReport {
    pub trials: usize,
    pub failed: usize,
    /// Sampled off-family matrices that nevertheless satisfy the identity.
    pub unexpected_solutions: Vec<Vec<Vec<i64>>>,
    pub fraction_failed: f64,
}

/// Samples integer matrices with entries in `-2..=2` that are nonzero at
/// one or more positions the family forces to zero, and checks them
/// exactly. Deterministic in `seed`.
pub fn refute_sample(
    pair: &AlgebraPair,
    id: OperatorIdentity,
    family: &ParametricMatrix,
    trials: usize,
    seed: u64,
) -> Result<RefutationReport> {
    check_dim(pair, family)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let n = pair.dim();
    let forced: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| family.num[(r, c)].is_identically_zero())
        .collect();
    if forced.is_empty() {
        return Err(Error::InvalidArgument(
            "family has no forced-zero entry".into(),
        ));
    }
    let tensors = rational_tensors(pair)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = 0;
    let mut unexpected = Vec::new();
    for _ in 0..trials {
        let mut m: Matrix<i64> = Matrix::from_fn(n, n, |_, _| rng.gen_range(-2..=2));
        let (r, c) = forced[rng.gen_range(0..forced.len())];
        let nonzero = [-2, -1, 1, 2];
        m[(r, c)] = nonzero[rng.gen_range(0..nonzero.len())];
        let q = m.map(|&x| Rational::from_integer(x.into()));
        let ok = satisfies([&tensors[0], &tensors[1]], id, &q)
            && (id.tag != IdentityTag::Automorphism || !q.det().is_zero());
        if ok {
            unexpected.push((0..n).map(|r| m.row(r).to_vec()).collect());
        } else {
            failed += 1;
        }
    }
    Ok(RefutationReport {
        trials,
        failed,
        unexpected_solutions: unexpected,
        fraction_failed: failed as f64 / trials as f64,
    })
}

fn rational_tensors(pair: &AlgebraPair) -> Result<[StructureTensor<Rational>; 2]> {
    let conv = |t: &StructureTensor<Poly>| {
        t.to_rational().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} has symbolic structure constants; specialize parameters first",
                pair.name()
            ))
        })
    };
    Ok([conv(&pair.first.tensor)?, conv(&pair.second.tensor)?])
}

/// Largest entry bound the exhaustive enumerations accept in dimension `n`.
pub fn max_bound(n: usize) -> Result<i64> {
    match n {
        1 => Ok(10),
        2 => Ok(2),
        3 => Ok(1),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

pub(crate) fn check_bound(n: usize, bound: i64) -> Result<()> {
    let max = max_bound(n)?;
    if bound < 1 || bound > max {
        return Err(Error::BoundOutOfRange { dim: n, bound, max });
    }
    Ok(())
}

/// Odometer over integer `n x n` matrices with entries in `[-bound, bound]`,
/// row-major flattened entries in lexicographic order.
pub(crate) struct Grid {
    n: usize,
    bound: i64,
    current: Option<Vec<i64>>,
}

impl Grid {
    pub(crate) fn new(n: usize, bound: i64) -> Self {
        Grid {
            n,
            bound,
            current: Some(vec![-bound; n * n]),
        }
    }
}

impl Iterator for Grid {
    type Item = Matrix<i64>;
    fn next(&mut self) -> Option<Matrix<i64>> {
        let cur = self.current.as_mut()?;
        let n = self.n;
        let out = Matrix::from_fn(n, n, |r, c| cur[r * n + c]);
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            if cur[pos] < self.bound {
                cur[pos] += 1;
                break;
            }
            cur[pos] = -self.bound;
        }
        Some(out)
    }
}

/// Every integer matrix with entries in `[-bound, bound]` satisfying the
/// identity exactly (automorphisms also need a nonzero determinant), in
/// lexicographic order of row-major entries.
pub fn grid_solve(
    pair: &AlgebraPair,
    id: OperatorIdentity,
    bound: i64,
) -> Result<Vec<Matrix<i64>>> {
    let n = pair.dim();
    check_bound(n, bound)?;
    let ints = match (pair.first.tensor.to_i64(), pair.second.tensor.to_i64()) {
        (Some(a), Some(b)) => Some([a, b]),
        _ => None,
    };
    let rats = rational_tensors(pair)?;
    let mut out = Vec::new();
    for m in Grid::new(n, bound) {
        if id.tag == IdentityTag::Automorphism && m.det() == 0 {
            continue;
        }
        let ok = match &ints {
            Some([a, b]) => satisfies([a, b], id, &m),
            None => satisfies(
                [&rats[0], &rats[1]],
                id,
                &m.map(|&x| Rational::from_integer(x.into())),
            ),
        };
        if ok {
            out.push(m);
        }
    }
    Ok(out)
}

/// Parameter values placing a constant matrix inside a printed family, if
/// any: solves entries that are linear (or have rational roots) in a single
/// remaining parameter, and tries small values for parameters left free.
pub fn match_family(
    family: &ParametricMatrix,
    target: &Matrix<Rational>,
) -> Option<BTreeMap<String, Rational>> {
    let n = family.dim();
    let eqs: Vec<Poly> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| &family.num[(r, c)] - &family.den[(r, c)].scale(&target[(r, c)]))
        .collect();
    let mut side = family.denominators();
    side.extend(family.side_conditions.iter().cloned());
    solve_bindings(&eqs, &side, &family.parameters(), BTreeMap::new(), 0)
}

const TRIAL_VALUES: [(i64, i64); 9] = [
    (0, 1),
    (1, 1),
    (-1, 1),
    (2, 1),
    (-2, 1),
    (3, 1),
    (-3, 1),
    (1, 2),
    (-1, 2),
];

fn solve_bindings(
    eqs: &[Poly],
    side: &[Poly],
    params: &BTreeSet<String>,
    mut bound: BTreeMap<String, Rational>,
    depth: usize,
) -> Option<BTreeMap<String, Rational>> {
    loop {
        let subst: BTreeMap<String, Poly> = bound
            .iter()
            .map(|(k, v)| (k.clone(), Poly::constant(v.clone())))
            .collect();
        let current: Vec<Poly> = eqs.iter().map(|e| e.substitute(&subst)).collect();
        if current
            .iter()
            .any(|e| e.is_constant() && !e.is_identically_zero())
        {
            return None;
        }
        let mut progress = false;
        for e in &current {
            let vars = e.indeterminates();
            if vars.len() != 1 {
                continue;
            }
            let name = vars.into_iter().next().unwrap();
            let coeffs = e.coefficients_in(&name);
            if coeffs.len() == 2 {
                let c0 = coeffs[0].as_rational()?;
                let c1 = coeffs[1].as_rational()?;
                bound.insert(name, -c0 / c1);
                progress = true;
                break;
            }
            // Higher degree: branch over rational roots.
            let roots = e.rational_roots().unwrap_or_default();
            for root in roots {
                let mut next = bound.clone();
                next.insert(name.clone(), root);
                if let Some(found) = solve_bindings(eqs, side, params, next, depth + 1) {
                    return Some(found);
                }
            }
            return None;
        }
        if progress {
            continue;
        }
        let free: Vec<&String> = params.iter().filter(|p| !bound.contains_key(*p)).collect();
        if free.is_empty() {
            let subst: BTreeMap<String, Poly> = bound
                .iter()
                .map(|(k, v)| (k.clone(), Poly::constant(v.clone())))
                .collect();
            let ok = current.iter().all(Poly::is_identically_zero)
                && side
                    .iter()
                    .all(|s| !s.substitute(&subst).is_identically_zero());
            return ok.then_some(bound);
        }
        if depth > 12 {
            return None;
        }
        let name = free[0].clone();
        for (a, b) in TRIAL_VALUES {
            let mut next = bound.clone();
            next.insert(name.clone(), crate::scalar::rat(a, b));
            if let Some(found) = solve_bindings(eqs, side, params, next, depth + 1) {
                return Some(found);
            }
        }
        return None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::pair;

    fn pm(rows: &[&[&str]]) -> ParametricMatrix {
        ParametricMatrix::from_printed(
            &rows
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn id(tag: IdentityTag) -> OperatorIdentity {
        OperatorIdentity::new(tag)
    }

    #[test]
    fn identity_and_zero_matrices() {
        let p = pair("A2_2", "A2_3").unwrap();
        let eye = ParametricMatrix::new(Matrix::identity(2));
        assert!(residuals(&p, id(IdentityTag::Automorphism), &eye)
            .unwrap()
            .is_zero());
        let zero = ParametricMatrix::new(Matrix::zeros(2, 2));
        for tag in [
            IdentityTag::RotaBaxter,
            IdentityTag::Nijenhuis,
            IdentityTag::Averaging,
            IdentityTag::Reynolds,
        ] {
            for variant in [Variant::Paper, Variant::Standard] {
                let oi = OperatorIdentity { tag, variant };
                assert!(residuals(&p, oi, &zero).unwrap().is_zero(), "{oi}");
            }
        }
        assert!(
            verify_family(&p, id(IdentityTag::Nijenhuis), &eye)
                .unwrap()
                .verified
        );
    }

    #[test]
    fn rota_baxter_identity_residual() {
        let p = pair("A2_2", "A2_3").unwrap();
        let eye = ParametricMatrix::new(Matrix::identity(2));
        let set = residuals(&p, id(IdentityTag::RotaBaxter), &eye).unwrap();
        assert_eq!(set.at(1, 1, 1, 1), Some(&Poly::from_i64(-1)));
    }

    #[test]
    fn printed_quotients() {
        let m = pm(&[&["a", "1/2"], &["-(b)^2/c", "3"]]);
        assert_eq!(m.denominators(), vec![parse_scalar("c").unwrap()]);
        let (a, q) = m.cleared();
        assert_eq!(q, parse_scalar("c").unwrap());
        assert_eq!(a[(0, 1)], parse_scalar("1/2*c").unwrap());
        assert_eq!(a[(1, 0)], parse_scalar("-b^2").unwrap());
        assert!(m.polynomial().is_none());
        assert!(ParametricMatrix::from_printed(&vec![vec!["x/0".to_string()]]).is_err());
    }

    #[test]
    fn verify_examples() {
        let p23 = pair("A2_2", "A2_3").unwrap();
        let v = verify_family(
            &p23,
            id(IdentityTag::Automorphism),
            &pm(&[&["1", "0"], &["0", "theta2_2"]]),
        )
        .unwrap();
        assert!(v.verified);
        assert_eq!(
            v.side_conditions[0].value,
            parse_scalar("theta2_2").unwrap()
        );

        let p24 = pair("A2_2", "A2_4").unwrap();
        let v = verify_family(
            &p24,
            id(IdentityTag::RotaBaxter),
            &pm(&[&["0", "0"], &["R2_1", "0"]]),
        )
        .unwrap();
        assert!(v.verified && v.side_conditions.is_empty());

        let singular = pm(&[&["0", "0"], &["t", "0"]]);
        assert!(
            !verify_family(&p23, id(IdentityTag::Automorphism), &singular)
                .unwrap()
                .verified
        );
    }

    #[test]
    fn grid_examples() {
        let p24 = pair("A2_2", "A2_4").unwrap();
        let rb = grid_solve(&p24, id(IdentityTag::RotaBaxter), 1).unwrap();
        let expect: Vec<Matrix<i64>> = (-1..=1)
            .map(|r| Matrix::from_rows(vec![vec![0, 0], vec![r, 0]]))
            .collect();
        assert_eq!(rb, expect);

        let p23 = pair("A2_2", "A2_3").unwrap();
        let aut = grid_solve(&p23, id(IdentityTag::Automorphism), 1).unwrap();
        assert!(aut
            .iter()
            .all(|m| m[(0, 0)] == 1 && m[(0, 1)] == 0 && m[(1, 1)] != 0));

        let z = pair("Zero_2", "Zero_2").unwrap();
        assert_eq!(
            grid_solve(&z, id(IdentityTag::Reynolds), 1).unwrap().len(),
            81
        );
        assert!(matches!(
            grid_solve(&p23, id(IdentityTag::RotaBaxter), 3),
            Err(Error::BoundOutOfRange { .. })
        ));
        assert!(grid_solve(
            &pair("A4_1", "A4_2").unwrap(),
            id(IdentityTag::RotaBaxter),
            1
        )
        .is_err());
    }

    #[test]
    fn refutation() {
        let p24 = pair("A2_2", "A2_4").unwrap();
        let fam = pm(&[&["0", "0"], &["r", "0"]]);
        let rep = refute_sample(&p24, id(IdentityTag::RotaBaxter), &fam, 50, 7).unwrap();
        assert_eq!(rep.failed + rep.unexpected_solutions.len(), 50);
        assert!(rep.unexpected_solutions.is_empty());
        assert_eq!(
            rep,
            refute_sample(&p24, id(IdentityTag::RotaBaxter), &fam, 50, 7).unwrap()
        );
        assert!(refute_sample(&p24, id(IdentityTag::RotaBaxter), &fam, 0, 7).is_err());
        let full = pm(&[&["a", "b"], &["c", "d"]]);
        assert!(refute_sample(&p24, id(IdentityTag::RotaBaxter), &full, 5, 7).is_err());
    }

    #[test]
    fn family_matching() {
        let fam = pm(&[&["R1_1", "R1_2"], &["-(R2_1)^2/R2_2", "-R2_1"]]);
        let target = Matrix::from_rows(vec![
            vec![crate::scalar::rat(1, 1), crate::scalar::rat(2, 1)],
            vec![crate::scalar::rat(-1, 1), crate::scalar::rat(-1, 1)],
        ]);
        let b = match_family(&fam, &target).unwrap();
        assert_eq!(b["R2_2"], crate::scalar::rat(1, 1));
        let bad = Matrix::from_rows(vec![
            vec![crate::scalar::rat(0, 1); 2],
            vec![crate::scalar::rat(1, 1), crate::scalar::rat(0, 1)],
        ]);
        assert!(match_family(&fam, &bad).is_none());
        let diag = pm(&[&["1", "0"], &["0", "t"]]);
        assert!(match_family(&diag, &Matrix::identity(2)).is_some());
    }
}
