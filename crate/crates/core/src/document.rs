//! JSON algebra documents, the only persistence format.
//!
//! ```json
//! {
//!   "name": "A3_2",
//!   "dim": 3,
//!   "basis": ["e1", "e2", "e3"],
//!   "parameters": [{"name": "alpha", "excluded": ["1"]}],
//!   "products": {"star1": [["e1", "e3", "e2", "1"], ["e3", "e1", "e2", "alpha"]]}
//! }
//! ```
//!
//! Each product entry `[i, j, k, c]` reads `e_i e_j = c e_k`; absent entries
//! are zero. A document with a `star2` product describes a pair.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraPair, Parameter, StructureTensor};
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub parameters: Vec<Parameter>,
    pub products: Products,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Products {
    #[serde(default)]
    pub star1: Vec<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star2: Option<Vec<[String; 4]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Loaded {
    Algebra(Algebra),
    Pair(AlgebraPair),
}

fn doc_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        location: location.into(),
        message: message.into(),
    }
}

fn basis_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl AlgebraDocument {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraDocument {
            name: Some(a.name.clone()),
            second_name: None,
            dim: a.dim(),
            basis: basis_names(a.dim()),
            parameters: a.parameters.clone(),
            products: Products {
                star1: entries(&a.tensor),
                star2: None,
            },
        }
    }

    pub fn from_pair(p: &AlgebraPair) -> Self {
        let mut params = p.first.parameters.clone();
        for q in &p.second.parameters {
            if !params.iter().any(|x| x.name == q.name) {
                params.push(q.clone());
            }
        }
        AlgebraDocument {
            name: Some(p.first.name.clone()),
            second_name: Some(p.second.name.clone()),
            dim: p.dim(),
            basis: basis_names(p.dim()),
            parameters: params,
            products: Products {
                star1: entries(&p.first.tensor),
                star2: Some(entries(&p.second.tensor)),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Validates names, coefficients, duplicates and associativity.
    pub fn resolve(&self) -> Result<Loaded> {
        if self.basis.len() != self.dim {
            return Err(doc_err(
                "basis",
                format!("{} names for dimension {}", self.basis.len(), self.dim),
            ));
        }
        if self.dim == 0 {
            return Err(doc_err("dim", "dimension must be at least 1"));
        }
        let mut index = BTreeMap::new();
        for (i, name) in self.basis.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(doc_err(
                    format!("basis[{i}]"),
                    format!("duplicate basis name {name:?}"),
                ));
            }
        }
        let mut declared = BTreeSet::new();
        for (i, p) in self.parameters.iter().enumerate() {
            if !declared.insert(p.name.clone()) {
                return Err(doc_err(
                    format!("parameters[{i}]"),
                    format!("duplicate parameter {:?}", p.name),
                ));
            }
            for (k, v) in p.excluded.iter().enumerate() {
                let ok = parse_scalar(v).ok().and_then(|x| x.as_rational()).is_some();
                if !ok {
                    return Err(doc_err(
                        format!("parameters[{i}].excluded[{k}]"),
                        format!("excluded value {v:?} is not a rational constant"),
                    ));
                }
            }
        }
        let build = |label: &str, list: &[[String; 4]], name: Option<&String>| -> Result<Algebra> {
            let mut t = StructureTensor::zeros(self.dim);
            let mut seen = BTreeSet::new();
            for (e, entry) in list.iter().enumerate() {
                let loc = |f: usize| format!("products.{label}[{e}][{f}]");
                let mut idx = [0usize; 3];
                for f in 0..3 {
                    idx[f] = *index.get(entry[f].as_str()).ok_or_else(|| {
                        doc_err(loc(f), format!("unknown basis name {:?}", entry[f]))
                    })?;
                }
                let coef =
                    parse_scalar(&entry[3]).map_err(|err| doc_err(loc(3), err.to_string()))?;
                if let Some(x) = coef
                    .indeterminates()
                    .into_iter()
                    .find(|x| !declared.contains(x))
                {
                    return Err(doc_err(loc(3), format!("undeclared parameter {x:?}")));
                }
                if !seen.insert(idx) {
                    return Err(doc_err(
                        format!("products.{label}[{e}]"),
                        format!(
                            "duplicate entry for ({}, {}, {})",
                            entry[0], entry[1], entry[2]
                        ),
                    ));
                }
                t.set(idx[0], idx[1], idx[2], coef);
            }
            let mut a = Algebra::new(name.cloned().unwrap_or_else(|| label.to_string()), t);
            let used: BTreeSet<String> = a
                .tensor
                .nonzero()
                .iter()
                .flat_map(|(_, _, _, c)| c.indeterminates())
                .collect();
            a.parameters = self
                .parameters
                .iter()
                .filter(|p| used.contains(&p.name))
                .cloned()
                .collect();
            a.ensure_associative()?;
            Ok(a)
        };
        let first = build("star1", &self.products.star1, self.name.as_ref())?;
        match &self.products.star2 {
            None => Ok(Loaded::Algebra(first)),
            Some(list) => {
                let second = build("star2", list, self.second_name.as_ref())?;
                Ok(Loaded::Pair(AlgebraPair::new(first, second)?))
            }
        }
    }
}

fn entries(t: &StructureTensor<Poly>) -> Vec<[String; 4]> {
    t.nonzero()
        .into_iter()
        .map(|(i, j, k, c)| {
            [
                format!("e{}", i + 1),
                format!("e{}", j + 1),
                format!("e{}", k + 1),
                c.to_string(),
            ]
        })
        .collect()
}

pub fn parse_document(text: &str) -> Result<Loaded> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| {
        doc_err(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    doc.resolve()
}

pub fn load_document(path: impl AsRef<Path>) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)?;
    parse_document(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_entries, get_algebra, pair};

    #[test]
    fn catalog_round_trip() {
        for e in all_entries() {
            let text = AlgebraDocument::from_algebra(&e.algebra).to_json();
            assert_eq!(
                parse_document(&text).unwrap(),
                Loaded::Algebra(e.algebra.clone()),
                "{}",
                e.name
            );
        }
        let p = pair("A3_2", "A3_5").unwrap();
        let text = AlgebraDocument::from_pair(&p).to_json();
        assert_eq!(parse_document(&text).unwrap(), Loaded::Pair(p));
    }

    #[test]
    fn hand_written_a22() {
        let text = r#"{"dim": 2, "basis": ["e1", "e2"],
            "products": {"star1": [["e1","e1","e1","1"], ["e1","e2","e2","1"]]}}"#;
        let Loaded::Algebra(a) = parse_document(text).unwrap() else {
            panic!()
        };
        assert_eq!(a.tensor, get_algebra("A2_2").unwrap().algebra.tensor);
    }

    #[test]
    fn empty_products_give_zero_algebra() {
        let text = r#"{"dim": 3, "basis": ["a", "b", "c"], "products": {}}"#;
        let Loaded::Algebra(a) = parse_document(text).unwrap() else {
            panic!()
        };
        assert!(a.tensor.is_zero());
    }

    #[test]
    fn non_associative_document_carries_defect() {
        let text = r#"{"dim": 2, "basis": ["e1", "e2"],
            "products": {"star1": [["e1","e1","e2","1"], ["e2","e2","e1","1"]]}}"#;
        match parse_document(text) {
            Err(Error::NotAssociative { report, .. }) => {
                assert!(report.at(1, 2, 2).is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structured_errors() {
        let dup = r#"{"dim": 1, "basis": ["e"], "products": {"star1": [["e","e","e","1"], ["e","e","e","2"]]}}"#;
        assert!(
            matches!(parse_document(dup), Err(Error::Document { location, .. }) if location == "products.star1[1]")
        );
        let bad_name = r#"{"dim": 1, "basis": ["e"], "products": {"star1": [["e","f","e","1"]]}}"#;
        assert!(
            matches!(parse_document(bad_name), Err(Error::Document { location, .. }) if location == "products.star1[0][1]")
        );
        let bad_coef =
            r#"{"dim": 1, "basis": ["e"], "products": {"star1": [["e","e","e","1 +"]]}}"#;
        assert!(matches!(
            parse_document(bad_coef),
            Err(Error::Document { .. })
        ));
        let undeclared =
            r#"{"dim": 1, "basis": ["e"], "products": {"star1": [["e","e","e","t"]]}}"#;
        assert!(matches!(
            parse_document(undeclared),
            Err(Error::Document { .. })
        ));
        let syntax = "{\"dim\": 1,\n \"basis\": [}";
        assert!(
            matches!(parse_document(syntax), Err(Error::Document { location, .. }) if location.starts_with("line 2"))
        );
    }
}
