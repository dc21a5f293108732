//! Structure-constant algebras, pairs of products on one space, and exact
//! defect tensors for associativity and the compatibility axiom.
//!
//! Indices are 0-based internally; reports and documents show them 1-based.
//! `c[i][j][k]` is the `e_k` coefficient of `e_i * e_j`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{fmt_rational, Poly, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructureTensor<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Ring> StructureTensor<T> {
    pub fn zeros(dim: usize) -> Self {
        StructureTensor {
            dim,
            data: vec![T::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.data[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        let o = self.offset(i, j, k);
        self.data[o] = v;
    }

    /// Coordinates of `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[T] {
        let o = self.offset(i, j, 0);
        &self.data[o..o + self.dim]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> StructureTensor<U> {
        StructureTensor {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries as `(i, j, k, value)` in lexicographic order.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, T)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let w = ui.clone() * vj.clone();
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// `e_i (e_j e_k) - (e_i e_j) e_k`.
    pub fn associator(&self, i: usize, j: usize, k: usize) -> Vec<T> {
        let right = self.multiply(&unit(self.dim, i), self.basis_product(j, k));
        let left = self.multiply(self.basis_product(i, j), &unit(self.dim, k));
        sub_vec(right, &left)
    }
}

impl StructureTensor<Poly> {
    pub fn to_rational(&self) -> Option<StructureTensor<Rational>> {
        let data: Option<Vec<Rational>> = self.data.iter().map(Poly::as_rational).collect();
        data.map(|data| StructureTensor {
            dim: self.dim,
            data,
        })
    }

    pub fn to_i64(&self) -> Option<StructureTensor<i64>> {
        let data: Option<Vec<i64>> = self.data.iter().map(Poly::as_i64).collect();
        data.map(|data| StructureTensor {
            dim: self.dim,
            data,
        })
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, Poly>) -> StructureTensor<Poly> {
        self.map(|p| p.substitute(bindings))
    }

    /// Builds a tensor from `(i, j, k, coefficient)` entries with 1-based
    /// indices, the form the catalog tables are written in.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Poly)]) -> Self {
        let mut t = StructureTensor::zeros(dim);
        for (i, j, k, v) in entries {
            t.set(i - 1, j - 1, k - 1, v.clone());
        }
        t
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for StructureTensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureTensor(dim {}", self.dim)?;
        for (i, j, k, v) in self.nonzero() {
            write!(f, ", e{}e{}->{}*e{}", i + 1, j + 1, v, k + 1)?;
        }
        write!(f, ")")
    }
}

pub(crate) fn unit<T: Ring>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

pub(crate) fn sub_vec<T: Ring>(a: Vec<T>, b: &[T]) -> Vec<T> {
    a.into_iter().zip(b).map(|(x, y)| x - y.clone()).collect()
}

pub(crate) fn add_vec<T: Ring>(a: Vec<T>, b: &[T]) -> Vec<T> {
    a.into_iter().zip(b).map(|(x, y)| x + y.clone()).collect()
}

/// `u*1(v*2 w) + u*2(v*1 w) - (u*1 v)*2 w - (u*2 v)*1 w` on basis vectors.
pub fn compatibility_defect<T: Ring>(
    first: &StructureTensor<T>,
    second: &StructureTensor<T>,
    i: usize,
    j: usize,
    k: usize,
) -> Vec<T> {
    let n = first.dim();
    let ei = unit::<T>(n, i);
    let ek = unit::<T>(n, k);
    let right = add_vec(
        first.multiply(&ei, second.basis_product(j, k)),
        &second.multiply(&ei, first.basis_product(j, k)),
    );
    let left = add_vec(
        second.multiply(first.basis_product(i, j), &ek),
        &first.multiply(second.basis_product(i, j), &ek),
    );
    sub_vec(right, &left)
}

/// True iff the mixed axiom holds on every basis triple; stops at the first
/// failing triple.
pub fn is_compatible<T: Ring>(first: &StructureTensor<T>, second: &StructureTensor<T>) -> bool {
    let n = first.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                compatibility_defect(first, second, i, j, k)
                    .iter()
                    .all(Zero::is_zero)
            })
        })
    })
}

pub fn format_element(v: &[Poly]) -> String {
    let mut parts = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let basis = format!("e{}", k + 1);
        let coeff = c.to_string();
        let term = if c.num_terms() > 1 {
            format!("({coeff})*{basis}")
        } else if coeff == "1" {
            basis
        } else if coeff == "-1" {
            format!("-{basis}")
        } else {
            format!("{coeff}*{basis}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

/// A named indeterminate of an algebra family together with the values it
/// may not take.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
}

impl Parameter {
    pub fn excluded_values(&self) -> Vec<Rational> {
        self.excluded
            .iter()
            .filter_map(|s| crate::scalar::parse_scalar(s).ok()?.as_rational())
            .collect()
    }

    pub fn excluding(name: &str, values: &[Rational]) -> Self {
        Parameter {
            name: name.to_string(),
            excluded: values.iter().map(fmt_rational).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub name: String,
    pub tensor: StructureTensor<Poly>,
    pub parameters: Vec<Parameter>,
}

impl Algebra {
    pub fn new(name: impl Into<String>, tensor: StructureTensor<Poly>) -> Self {
        Algebra {
            name: name.into(),
            tensor,
            parameters: Vec::new(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Algebra::new(format!("Zero_{dim}"), StructureTensor::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn multiply(&self, u: &[Poly], v: &[Poly]) -> Result<Vec<Poly>> {
        for x in [u, v] {
            if x.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: x.len(),
                });
            }
        }
        Ok(self.tensor.multiply(u, v))
    }

    /// Associators on all basis triples; empty iff associative identically
    /// in every indeterminate.
    pub fn check_associative(&self) -> DefectReport {
        let n = self.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = self.tensor.associator(i, j, k);
                    if d.iter().any(|x| !x.is_zero()) {
                        entries.push(Defect {
                            triple: (i, j, k),
                            value: d,
                        });
                    }
                }
            }
        }
        DefectReport {
            kind: DefectKind::Associativity,
            entries,
        }
    }

    pub fn ensure_associative(&self) -> Result<()> {
        let report = self.check_associative();
        if report.is_empty() {
            Ok(())
        } else {
            Err(Error::NotAssociative {
                name: self.name.clone(),
                report: Box::new(report),
            })
        }
    }

    /// The algebra with product `u *' v = P^{-1}(P u * P v)`, so that `P` is
    /// an isomorphism from the result onto `self`.
    pub fn transport(&self, p: &Matrix<Poly>) -> Result<Algebra> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let inv = p.inverse()?;
        let nonzero = self.tensor.nonzero();
        let mut out = StructureTensor::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut prod = vec![Poly::zero(); n];
                for (a, b, k, c) in &nonzero {
                    let w = &p[(*a, i)] * &p[(*b, j)];
                    if !w.is_zero() {
                        prod[*k] += &w * c;
                    }
                }
                for (k, v) in inv.apply(&prod).into_iter().enumerate() {
                    out.set(i, j, k, v);
                }
            }
        }
        Ok(Algebra {
            name: format!("{}^P", self.name),
            tensor: out,
            parameters: self.parameters.clone(),
        })
    }

    /// Parameters with their admissibility exclusions, keyed by name.
    pub fn exclusions(&self) -> BTreeMap<String, Vec<Rational>> {
        self.parameters
            .iter()
            .map(|p| (p.name.clone(), p.excluded_values()))
            .collect()
    }
}

/// `det(P) * P^{-1}(P u * P v)` computed without division; zero exactly when
/// the transported structure is zero. Used by exhaustive searches over
/// integer matrices.
pub fn transport_scaled<T: Ring>(
    tensor: &StructureTensor<T>,
    p: &Matrix<T>,
    adj: &Matrix<T>,
) -> StructureTensor<T> {
    let n = tensor.dim();
    let nonzero = tensor.nonzero();
    let mut out = StructureTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut prod = vec![T::zero(); n];
            for (a, b, k, c) in &nonzero {
                let (x, y) = (&p[(*a, i)], &p[(*b, j)]);
                if !x.is_zero() && !y.is_zero() {
                    prod[*k] = prod[*k].clone() + x.clone() * y.clone() * c.clone();
                }
            }
            for (k, v) in adj.apply(&prod).into_iter().enumerate() {
                out.set(i, j, k, v);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPair {
    pub first: Algebra,
    pub second: Algebra,
}

impl AlgebraPair {
    pub fn new(first: Algebra, second: Algebra) -> Result<Self> {
        if first.dim() != second.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: second.dim(),
            });
        }
        Ok(AlgebraPair { first, second })
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn name(&self) -> String {
        format!("({}, {})", self.first.name, self.second.name)
    }

    pub fn swapped(&self) -> AlgebraPair {
        AlgebraPair {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    pub fn tensors(&self) -> [&StructureTensor<Poly>; 2] {
        [&self.first.tensor, &self.second.tensor]
    }

    /// Union of both components' parameters, deduplicated by name.
    pub fn exclusions(&self) -> BTreeMap<String, Vec<Rational>> {
        let mut out = self.first.exclusions();
        for (k, v) in self.second.exclusions() {
            out.entry(k).or_default().extend(v);
        }
        out
    }

    /// Mixed-axiom defects on all basis triples. Refuses pairs whose
    /// components are not associative.
    pub fn check_compatible(&self) -> Result<DefectReport> {
        self.first.ensure_associative()?;
        self.second.ensure_associative()?;
        Ok(self.compatibility_defects())
    }

    /// Mixed-axiom defects without the associativity precondition.
    pub fn compatibility_defects(&self) -> DefectReport {
        let n = self.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = compatibility_defect(&self.first.tensor, &self.second.tensor, i, j, k);
                    if d.iter().any(|x| !x.is_zero()) {
                        entries.push(Defect {
                            triple: (i, j, k),
                            value: d,
                        });
                    }
                }
            }
        }
        DefectReport {
            kind: DefectKind::Compatibility,
            entries,
        }
    }

    /// Applies the same basis change to both products.
    pub fn transport(&self, p: &Matrix<Poly>) -> Result<AlgebraPair> {
        AlgebraPair::new(self.first.transport(p)?, self.second.transport(p)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefectKind {
    Associativity,
    Compatibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Defect {
    /// 0-based basis triple `(i, j, k)`.
    pub triple: (usize, usize, usize),
    pub value: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefectReport {
    pub kind: DefectKind,
    pub entries: Vec<Defect>,
}

impl DefectReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Defect at a 1-based triple, `None` when it vanishes.
    pub fn at(&self, i: usize, j: usize, k: usize) -> Option<&[Poly]> {
        self.entries
            .iter()
            .find(|d| d.triple == (i - 1, j - 1, k - 1))
            .map(|d| d.value.as_slice())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "holds": self.is_empty(),
            "defects": self.entries.iter().map(|d| serde_json::json!({
                "triple": [d.triple.0 + 1, d.triple.1 + 1, d.triple.2 + 1],
                "value": format_element(&d.value),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for DefectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            DefectKind::Associativity => "associativity",
            DefectKind::Compatibility => "compatibility",
        };
        if self.is_empty() {
            return write!(f, "{label}: holds");
        }
        writeln!(f, "{label}: {} defective triples", self.entries.len())?;
        for d in &self.entries {
            let (i, j, k) = d.triple;
            writeln!(
                f,
                "  (e{}, e{}, e{}): {}",
                i + 1,
                j + 1,
                k + 1,
                format_element(&d.value)
            )?;
        }
        Ok(())
    }
}
