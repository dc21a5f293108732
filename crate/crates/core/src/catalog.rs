//! Embedded algebras, reference pair lists and reference tables.
//!
//! The 2- and 3-dimensional algebras are the standard isomorphism-class
//! representatives of complex associative algebras; the two 4-dimensional
//! algebras form the worked 4-dimensional pair. Unlisted products are zero.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraPair, DefectReport, Parameter, StructureTensor};
use crate::error::{Error, Result};
use crate::invariant::Invariant;
use crate::scalar::{parse_scalar, rat};

/// Products written as `(i, j, k, coefficient)`: `e_i e_j = coefficient e_k`.
type Table = &'static [(usize, usize, usize, &'static str)];

const TABLES: &[(&str, usize, Table)] = &[
    ("A2_1", 2, &[(1, 1, 2, "1")]),
    ("A2_2", 2, &[(1, 1, 1, "1"), (1, 2, 2, "1")]),
    ("A2_3", 2, &[(1, 1, 1, "1"), (2, 1, 2, "1")]),
    ("A2_4", 2, &[(1, 1, 1, "1"), (1, 2, 2, "1"), (2, 1, 2, "1")]),
    ("A3_1", 3, &[(1, 3, 2, "1"), (3, 1, 2, "1")]),
    ("A3_2", 3, &[(1, 3, 2, "1"), (3, 1, 2, "alpha")]),
    ("A3_3", 3, &[(1, 1, 2, "1"), (1, 2, 3, "1"), (2, 1, 3, "1")]),
    ("A3_4", 3, &[(1, 3, 2, "1"), (2, 3, 2, "1"), (3, 3, 3, "1")]),
    ("A3_5", 3, &[(2, 3, 2, "1"), (3, 1, 1, "1"), (3, 3, 3, "1")]),
    ("A3_6", 3, &[(3, 1, 2, "1"), (3, 2, 2, "1"), (3, 3, 3, "1")]),
    (
        "A3_7",
        3,
        &[
            (1, 2, 1, "1"),
            (2, 2, 2, "1"),
            (3, 1, 1, "1"),
            (3, 3, 3, "1"),
        ],
    ),
    (
        "A3_8",
        3,
        &[
            (1, 3, 1, "1"),
            (2, 3, 2, "1"),
            (3, 1, 1, "1"),
            (3, 3, 3, "1"),
        ],
    ),
    (
        "A3_9",
        3,
        &[
            (2, 3, 2, "1"),
            (3, 1, 1, "1"),
            (3, 2, 2, "1"),
            (3, 3, 3, "1"),
        ],
    ),
    (
        "A3_10",
        3,
        &[
            (1, 3, 1, "1"),
            (2, 3, 2, "1"),
            (3, 1, 1, "1"),
            (3, 2, 2, "1"),
            (3, 3, 3, "1"),
        ],
    ),
    (
        "A3_11",
        3,
        &[
            (1, 3, 2, "1"),
            (2, 3, 2, "1"),
            (3, 1, 2, "1"),
            (3, 2, 2, "1"),
            (3, 3, 3, "1"),
        ],
    ),
    (
        "A3_12",
        3,
        &[
            (1, 1, 2, "1"),
            (1, 3, 1, "1"),
            (2, 3, 2, "1"),
            (3, 1, 1, "1"),
            (3, 2, 2, "1"),
            (3, 3, 3, "1"),
        ],
    ),
    ("A4_1", 4, &[(1, 1, 4, "1"), (2, 2, 2, "1"), (3, 2, 3, "1")]),
    (
        "A4_2",
        4,
        &[
            (1, 1, 1, "1"),
            (1, 3, 3, "1"),
            (2, 2, 2, "1"),
            (2, 4, 4, "1"),
            (4, 1, 4, "1"),
        ],
    ),
];

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: Algebra,
}

fn build(name: &str, dim: usize, table: Table) -> CatalogEntry {
    let entries: Vec<_> = table
        .iter()
        .map(|&(i, j, k, c)| (i, j, k, parse_scalar(c).expect("catalog coefficient")))
        .collect();
    let mut algebra = Algebra::new(name, StructureTensor::from_entries(dim, &entries));
    if name == "A3_2" {
        algebra.parameters = vec![Parameter::excluding("alpha", &[rat(1, 1)])];
    }
    CatalogEntry {
        name: name.to_string(),
        algebra,
    }
}

/// Looks up `A2_1..A2_4`, `A3_1..A3_12`, `A4_1`, `A4_2` or `Zero_n` (n <= 4).
pub fn get_algebra(name: &str) -> Result<CatalogEntry> {
    if let Some(n) = name.strip_prefix("Zero_") {
        return match n.parse::<usize>() {
            Ok(n @ 1..=4) => Ok(CatalogEntry {
                name: name.to_string(),
                algebra: Algebra::zero(n),
            }),
            _ => Err(Error::UnknownAlgebra(name.to_string())),
        };
    }
    TABLES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(n, d, t)| build(n, d, t))
        .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))
}

/// The 18 classification algebras, in catalog order.
pub fn named_algebras() -> Vec<CatalogEntry> {
    TABLES.iter().map(|&(n, d, t)| build(n, d, t)).collect()
}

/// Every entry including the zero algebras.
pub fn all_entries() -> Vec<CatalogEntry> {
    let mut out = named_algebras();
    out.extend((1..=4).map(|n| get_algebra(&format!("Zero_{n}")).unwrap()));
    out
}

pub fn algebras_of_dim(dim: usize) -> Vec<CatalogEntry> {
    named_algebras()
        .into_iter()
        .filter(|e| e.algebra.dim() == dim)
        .collect()
}

/// Parses `"A,B"` (or `"A+B"`) into a catalog pair.
pub fn get_pair(spec: &str) -> Result<AlgebraPair> {
    let mut parts = spec.split([',', '+']).map(str::trim);
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::InvalidArgument(format!(
            "expected a pair like A2_2,A2_3, got {spec:?}"
        )));
    };
    pair(a, b)
}

pub fn pair(first: &str, second: &str) -> Result<AlgebraPair> {
    AlgebraPair::new(get_algebra(first)?.algebra, get_algebra(second)?.algebra)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferencePair {
    pub first: String,
    pub second: String,
    pub source: &'static str,
}

impl ReferencePair {
    pub fn resolve(&self) -> Result<AlgebraPair> {
        pair(&self.first, &self.second)
    }

    pub fn label(&self) -> String {
        format!("({}, {})", self.first, self.second)
    }
}

const PAIRS_DIM2: &[(usize, usize)] = &[(2, 3), (2, 4)];

const PAIRS_DIM3: &[(usize, usize)] = &[
    (1, 3),
    (1, 10),
    (1, 11),
    (2, 4),
    (2, 5),
    (3, 11),
    (4, 8),
    (4, 12),
    (5, 7),
    (5, 8),
    (5, 9),
    (5, 10),
    (5, 11),
    (5, 12),
    (6, 7),
    (6, 8),
    (6, 9),
    (6, 10),
    (6, 12),
    (7, 9),
    (7, 10),
    (7, 12),
    (8, 9),
    (8, 10),
    (8, 12),
    (9, 10),
    (9, 12),
    (10, 11),
    (10, 12),
    (11, 12),
];

/// The published lists of compatible pairs, in their published order.
pub fn reference_pairs(dim: usize) -> Result<Vec<ReferencePair>> {
    let (list, source) = match dim {
        2 => (PAIRS_DIM2, "pairs-dim2"),
        3 => (PAIRS_DIM3, "pairs-dim3"),
        other => return Err(Error::UnsupportedDimension(other)),
    };
    Ok(list
        .iter()
        .map(|&(a, b)| ReferencePair {
            first: format!("A{dim}_{a}"),
            second: format!("A{dim}_{b}"),
            source,
        })
        .collect())
}

/// Every unordered pair (including diagonal ones) of classification
/// algebras of the given dimension with its on-the-nose compatibility
/// defect, in catalog order.
pub fn enumerate_onnose_compatible(dim: usize) -> Result<Vec<(ReferencePair, DefectReport)>> {
    if !(2..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let algebras = algebras_of_dim(dim);
    let mut out = Vec::new();
    for (a, ea) in algebras.iter().enumerate() {
        for eb in &algebras[a..] {
            let pair = AlgebraPair::new(ea.algebra.clone(), eb.algebra.clone())?;
            let report = pair.check_compatible()?;
            out.push((
                ReferencePair {
                    first: ea.name.clone(),
                    second: eb.name.clone(),
                    source: "enumeration",
                },
                report,
            ));
        }
    }
    Ok(out)
}

/// How a reference table row relates to the exact recomputation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PaperStatus {
    Confirmed,
    GarbledInPaper,
    Unattributed,
}

/// A printed matrix, row-major. `"?"` marks an entry missing from the table;
/// entries may be `numerator/denominator` with a polynomial denominator.
pub type PrintedMatrix = Vec<Vec<String>>;

/// A 1-based `(i, j)` coordinate of a bilinear map.
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Expected {
    /// Union of parametric families, each a single operator matrix.
    Families(Vec<PrintedMatrix>),
    /// One family of operator tuples `(d, d', ...)`.
    Tuple(Vec<PrintedMatrix>),
    /// Generator counts for the two cocycle components and the coordinates
    /// `(i, j)` (1-based) printed as zero rows of each component.
    Cohomology {
        generators: (usize, usize),
        zero_rows: (Vec<Cell>, Vec<Cell>),
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedResult {
    pub id: String,
    pub source: &'static str,
    /// `None` for rows not attached to a pair.
    pub pair: Option<(String, String)>,
    pub invariant: Invariant,
    pub expected: Expected,
    pub status: PaperStatus,
    pub note: &'static str,
}

fn pm(rows: &[&[&str]]) -> PrintedMatrix {
    rows.iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect()
}

fn diag(entries: &[&str]) -> PrintedMatrix {
    let n = entries.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        entries[r].to_string()
                    } else {
                        "0".into()
                    }
                })
                .collect()
        })
        .collect()
}

fn zero(n: usize) -> PrintedMatrix {
    vec![vec!["0".to_string(); n]; n]
}

struct RowBuilder {
    out: Vec<ExpectedResult>,
}

impl RowBuilder {
    fn push(
        &mut self,
        source: &'static str,
        pair: Option<(&str, &str)>,
        invariant: Invariant,
        expected: Expected,
        status: PaperStatus,
        note: &'static str,
    ) {
        let who = pair.map_or("unattributed".to_string(), |(a, b)| format!("{a}+{b}"));
        let id = format!("{source}/{who}/{invariant}");
        assert!(self.out.iter().all(|r| r.id != id), "duplicate row {id}");
        self.out.push(ExpectedResult {
            id,
            source,
            pair: pair.map(|(a, b)| (a.to_string(), b.to_string())),
            invariant,
            expected,
            status,
            note,
        });
    }

    fn family(
        &mut self,
        source: &'static str,
        pair: (&str, &str),
        invariant: Invariant,
        m: PrintedMatrix,
        status: PaperStatus,
        note: &'static str,
    ) {
        self.push(
            source,
            Some(pair),
            invariant,
            Expected::Families(vec![m]),
            status,
            note,
        );
    }
}

use Invariant::*;
use PaperStatus::*;

const NOT_A_CENTROID: &str = "independent diagonal entries fail the identity; \
     they are forced to agree";
const MISSING_FAMILY_MEMBERS: &str =
    "printed family is sound but misses solutions found by exact recomputation";
const UNSOUND: &str = "printed family fails the defining identity";

/// All reference table rows, each exactly once.
pub fn expected_results() -> Vec<ExpectedResult> {
    let mut b = RowBuilder { out: Vec::new() };

    // 2-dimensional pairs: derivations, centroids, automorphisms, quasi-centroids.
    let src = "invariants-dim2";
    for (second, der) in [
        ("A2_3", pm(&[&["0", "0"], &["d2_1", "d2_2"]])),
        ("A2_4", pm(&[&["0", "0"], &["0", "d2_2"]])),
    ] {
        let p = ("A2_2", second);
        b.family(src, p, Derivation, der, Confirmed, "");
        b.family(
            src,
            p,
            Centroid,
            diag(&["beta1_1", "beta1_2"]),
            GarbledInPaper,
            NOT_A_CENTROID,
        );
        let aut_status = if second == "A2_3" {
            GarbledInPaper
        } else {
            Confirmed
        };
        let aut_note = if second == "A2_3" {
            MISSING_FAMILY_MEMBERS
        } else {
            ""
        };
        b.family(
            src,
            p,
            Automorphism,
            diag(&["1", "theta2_2"]),
            aut_status,
            aut_note,
        );
        b.family(
            src,
            p,
            QuasiCentroid,
            diag(&["delta1_1", "delta1_2"]),
            GarbledInPaper,
            NOT_A_CENTROID,
        );
    }

    // 2-dimensional Rota-Baxter operators.
    let src = "rota-baxter-dim2";
    b.push(
        src,
        Some(("A2_2", "A2_3")),
        RotaBaxter,
        Expected::Families(vec![
            pm(&[&["R1_1", "R1_2"], &["-(R2_1)^2/R2_2", "-R2_1"]]),
            pm(&[&["0", "0"], &["R2_1", "0"]]),
        ]),
        GarbledInPaper,
        "first printed family fails the identity with independent parameters",
    );
    b.family(
        src,
        ("A2_2", "A2_4"),
        RotaBaxter,
        pm(&[&["0", "0"], &["R2_1", "0"]]),
        Confirmed,
        "",
    );

    // 3-dimensional pairs.
    let src = "invariants-dim3";
    let centroid_111 = diag(&["beta1_1", "beta2_1", "beta3_1"]);
    let qc_111 = diag(&["delta1_1", "delta2_1", "delta3_1"]);
    let qc_upper = pm(&[
        &["delta1_1", "0", "delta1_3"],
        &["0", "delta2_1", "delta2_3"],
        &["0", "0", "delta3_1"],
    ]);
    let der_block = pm(&[
        &["d1_1", "0", "0"],
        &["0", "d2_1", "d3_3"],
        &["0", "0", "0"],
    ]);
    let aut_block = pm(&[
        &["theta1_1", "0", "0"],
        &["0", "theta2_1", "theta3_3"],
        &["0", "0", "1"],
    ]);

    let p = ("A3_1", "A3_3");
    b.family(src, p, Derivation, zero(3), Confirmed, "");
    b.family(
        src,
        p,
        Centroid,
        centroid_111.clone(),
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(
        src,
        p,
        Automorphism,
        pm(&[
            &["0", "0", "0"],
            &["theta2_1", "0", "0"],
            &["theta3_1", "0", "0"],
        ]),
        GarbledInPaper,
        "printed matrix has a zero first row and cannot be invertible",
    );
    b.family(
        src,
        p,
        QuasiCentroid,
        qc_111.clone(),
        GarbledInPaper,
        "diagonal entries must agree; the exact space adds e1 -> e2 and e1 -> e3 components",
    );

    let p = ("A3_1", "A3_10");
    b.family(
        src,
        p,
        Derivation,
        pm(&[
            &["d1_1", "0", "0"],
            &["d2_1", "d2_1", "0"],
            &["0", "0", "0"],
        ]),
        GarbledInPaper,
        "entry (2, 2) must equal entry (1, 1), not entry (2, 1)",
    );
    b.family(
        src,
        p,
        Centroid,
        centroid_111.clone(),
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(
        src,
        p,
        Automorphism,
        pm(&[
            &["theta1_1", "0", "0"],
            &["theta2_1", "theta2_1", "0"],
            &["0", "0", "1"],
        ]),
        GarbledInPaper,
        UNSOUND,
    );
    b.family(
        src,
        p,
        QuasiCentroid,
        qc_upper.clone(),
        GarbledInPaper,
        UNSOUND,
    );

    let p = ("A3_1", "A3_11");
    b.family(
        src,
        p,
        Derivation,
        pm(&[&["d1_1", "0", "0"], &["0", "d2_1", "?"], &["0", "0", "0"]]),
        GarbledInPaper,
        "printed matrix is missing an entry",
    );
    b.family(
        src,
        p,
        Centroid,
        pm(&[
            &["beta1_1", "0", "0"],
            &["0", "beta2_1", "beta3_3"],
            &["0", "0", "beta3_1"],
        ]),
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(
        src,
        p,
        Automorphism,
        pm(&[&["1", "0", "0"], &["theta2_1", "1", "0"], &["0", "0", "1"]]),
        GarbledInPaper,
        UNSOUND,
    );
    b.family(src, p, QuasiCentroid, qc_upper, GarbledInPaper, UNSOUND);

    for (second, qc, qc_status, qc_note) in [
        (
            "A3_4",
            diag(&["delta1_3", "delta2_3", "delta3_3"]),
            GarbledInPaper,
            NOT_A_CENTROID,
        ),
        (
            "A3_5",
            diag(&["delta3_3", "delta3_3", "delta3_3"]),
            Confirmed,
            "",
        ),
    ] {
        let p = ("A3_2", second);
        b.family(
            src,
            p,
            Derivation,
            der_block.clone(),
            GarbledInPaper,
            "entry (2, 2) must equal entry (1, 1)",
        );
        b.family(
            src,
            p,
            Centroid,
            diag(&["beta1_2", "beta2_2", "beta3_2"]),
            GarbledInPaper,
            NOT_A_CENTROID,
        );
        b.family(
            src,
            p,
            Automorphism,
            aut_block.clone(),
            GarbledInPaper,
            UNSOUND,
        );
        b.family(src, p, QuasiCentroid, qc, qc_status, qc_note);
    }

    let p = ("A3_3", "A3_11");
    b.family(src, p, Derivation, zero(3), Confirmed, "");
    b.family(
        src,
        p,
        Centroid,
        centroid_111.clone(),
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(src, p, Automorphism, diag(&["1", "1", "1"]), Confirmed, "");
    b.family(
        src,
        p,
        QuasiCentroid,
        qc_111.clone(),
        GarbledInPaper,
        NOT_A_CENTROID,
    );

    let p = ("A3_4", "A3_8");
    b.family(
        src,
        p,
        Derivation,
        der_block,
        GarbledInPaper,
        "entry (2, 2) must equal entry (1, 1)",
    );
    b.family(
        src,
        p,
        Centroid,
        centroid_111.clone(),
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(
        src,
        p,
        Automorphism,
        pm(&[
            &["theta_11", "0", "0"],
            &["0", "theta1_1", "theta3_3"],
            &["0", "0", "1"],
        ]),
        GarbledInPaper,
        "unsound as printed; reading theta_11 as theta1_1 gives a sound family",
    );
    b.family(
        src,
        p,
        QuasiCentroid,
        qc_111,
        GarbledInPaper,
        NOT_A_CENTROID,
    );

    let p = ("A3_4", "A3_11");
    b.family(
        src,
        p,
        Derivation,
        pm(&[
            &["d1_1", "0", "0"],
            &["d2_1", "d2_1 + d2_1", "0"],
            &["0", "0", "0"],
        ]),
        GarbledInPaper,
        "entry (2, 2) repeats a parameter; the exact space has d1_1 + d2_1 there",
    );
    b.family(
        src,
        p,
        Centroid,
        centroid_111,
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(
        src,
        p,
        Automorphism,
        pm(&[
            &["theta1_1", "0", "0"],
            &["theta2_2 - theta2_1", "theta2_2", "0"],
            &["0", "0", "1"],
        ]),
        GarbledInPaper,
        UNSOUND,
    );

    // 3-dimensional operator lists printed without a pair.
    let src = "unattributed-dim3";
    b.push(
        src,
        None,
        Reynolds,
        Expected::Families(vec![
            pm(&[
                &["chi1_1", "0", "0"],
                &["chi2_1", "0", "0"],
                &["chi3_1", "0", "0"],
            ]),
            pm(&[
                &["0", "0", "0"],
                &["chi2_1", "0", "0"],
                &["chi3_1", "0", "0"],
            ]),
            pm(&[
                &["0", "0", "0"],
                &["0", "0", "0"],
                &["chi3_1", "0", "chi3_3"],
            ]),
            pm(&[
                &["0", "0", "0"],
                &["chi2_1", "chi2_2", "0"],
                &["0", "0", "0"],
            ]),
        ]),
        Unattributed,
        "",
    );
    b.push(
        src,
        None,
        Nijenhuis,
        Expected::Families(vec![
            pm(&[
                &["N1_1", "0", "0"],
                &["N2_1", "0", "0"],
                &["N3_1", "0", "0"],
            ]),
            pm(&[&["0", "0", "0"], &["N2_1", "0", "0"], &["N3_1", "0", "0"]]),
            pm(&[&["N1_3", "0", "0"], &["0", "0", "0"], &["0", "0", "N3_1"]]),
            pm(&[
                &["N1_3", "0", "0"],
                &["0", "0", "0"],
                &["N3_1", "0", "N3_1"],
            ]),
        ]),
        Unattributed,
        "",
    );
    b.push(
        src,
        None,
        QuasiDerivation,
        Expected::Tuple(vec![
            diag(&["d1_1", "d2_1", "d3_1"]),
            pm(&[
                &["d1_1", "d1_2", "d1_3"],
                &["d2_1", "d2_2", "-d2_1 - d2_2 + 2*d2_1"],
                &["d3_1", "d3_2", "-d3_1 - d3_2 + 2*d3_1"],
            ]),
        ]),
        Unattributed,
        "",
    );
    b.push(
        src,
        None,
        GeneralizedDerivation,
        Expected::Tuple(vec![
            pm(&[
                &["d1_1", "0", "0"],
                &["0", "d2_2", "0"],
                &["0", "0", "d3_1 + d3_2"],
            ]),
            pm(&[
                &["d1_1", "d1_12", "d1_13"],
                &["d1_21", "d1_11 + d1_21", "0"],
                &["-d_31", "0", "d1_11 + d1_21"],
            ]),
            pm(&[
                &["dpp1_1", "dpp1_2", "dpp1_3"],
                &["dpp_21", "dpp_22", "dpp2_1 + d2_1 + d2_1 - dpp2_1 - dpp2_2"],
                &["dpp3_1", "dpp3_2", "d3_2 - d3_1 - dpp3_1 - dpp3_2"],
            ]),
        ]),
        Unattributed,
        "",
    );

    // The 4-dimensional pair.
    let src = "invariants-dim4";
    let p = ("A4_1", "A4_2");
    b.family(
        src,
        p,
        Derivation,
        pm(&[
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["d4_1", "-d4_1", "0", "0"],
        ]),
        GarbledInPaper,
        "printed family fails the identity on e2 e2 = e2; the exact space is spanned by e3 -> e3",
    );
    b.family(
        src,
        p,
        Centroid,
        diag(&["beta1_1", "beta2_1", "beta3_1", "beta4_1"]),
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(
        src,
        p,
        QuasiCentroid,
        diag(&["delta1_1", "delta2_1", "delta3_1", "delta4_1"]),
        GarbledInPaper,
        NOT_A_CENTROID,
    );
    b.family(
        src,
        p,
        Reynolds,
        pm(&[
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["chi3_1", "chi3_2", "0", "0"],
            &["chi4_1", "chi4_2", "0", "0"],
        ]),
        Confirmed,
        "",
    );
    b.family(
        src,
        p,
        Averaging,
        pm(&[
            &["xi1_4", "0", "0", "0"],
            &["xi2_1", "xi2_2", "xi3_3", "0"],
            &["0", "0", "xi3_4", "0"],
            &["xi4_1", "xi4_2 - xi4_4", "xi4_3", "xi4_4"],
        ]),
        GarbledInPaper,
        UNSOUND,
    );
    b.family(
        src,
        p,
        Nijenhuis,
        pm(&[
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["0", "0", "N3_3", "0"],
            &["N4_1", "N4_2", "N4_3", "0"],
        ]),
        GarbledInPaper,
        "fails the displayed identity; sound under the standard Nijenhuis identity",
    );
    b.family(
        src,
        p,
        Automorphism,
        pm(&[
            &["1", "0", "0", "0"],
            &["0", "1", "0", "0"],
            &["0", "0", "1", "0"],
            &["theta4_1", "-theta4_1", "0", "1"],
        ]),
        GarbledInPaper,
        UNSOUND,
    );

    // Second cohomology.
    let src = "cohomology";
    for (a, c, gens, h_zero) in [
        ("A2_2", "A2_3", (2, 2), vec![(1, 2), (2, 2)]),
        ("A2_2", "A2_4", (2, 3), vec![(2, 2)]),
        (
            "A3_5",
            "A3_8",
            (3, 4),
            vec![(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)],
        ),
        (
            "A3_9",
            "A3_10",
            (4, 5),
            vec![(1, 1), (1, 2), (2, 1), (2, 2)],
        ),
    ] {
        b.push(
            src,
            Some((a, c)),
            Cohomology,
            Expected::Cohomology {
                generators: gens,
                zero_rows: (Vec::new(), h_zero),
            },
            GarbledInPaper,
            "generator count matches neither cocycle mode",
        );
    }

    b.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Poly;
    use num_traits::Zero;

    #[test]
    fn lookup_examples() {
        let a23 = get_algebra("A2_3").unwrap().algebra;
        assert_eq!(a23.tensor.get(0, 0, 0), &Poly::from_i64(1));
        assert_eq!(a23.tensor.get(1, 0, 1), &Poly::from_i64(1));
        assert_eq!(a23.tensor.nonzero().len(), 2);

        assert!(get_algebra("Zero_2").unwrap().algebra.tensor.is_zero());

        let a32 = get_algebra("A3_2").unwrap().algebra;
        assert_eq!(a32.tensor.get(2, 0, 1), &parse_scalar("alpha").unwrap());
        assert_eq!(a32.parameters[0].excluded_values(), vec![rat(1, 1)]);

        assert!(matches!(get_algebra("A5_1"), Err(Error::UnknownAlgebra(_))));
        assert!(get_algebra("Zero_5").is_err());
    }

    #[test]
    fn lookups_are_pure() {
        assert_eq!(get_algebra("A3_12").unwrap(), get_algebra("A3_12").unwrap());
    }

    #[test]
    fn catalog_is_associative() {
        assert_eq!(named_algebras().len(), 18);
        for e in all_entries() {
            assert!(e.algebra.check_associative().is_empty(), "{}", e.name);
        }
    }

    #[test]
    fn reference_pair_lists() {
        let two = reference_pairs(2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(
            (two[0].first.as_str(), two[0].second.as_str()),
            ("A2_2", "A2_3")
        );
        assert_eq!(
            (two[1].first.as_str(), two[1].second.as_str()),
            ("A2_2", "A2_4")
        );

        let three = reference_pairs(3).unwrap();
        assert_eq!(three.len(), 30);
        assert_eq!(three[0].label(), "(A3_1, A3_3)");
        assert_eq!(three[29].label(), "(A3_11, A3_12)");
        let mut seen = std::collections::BTreeSet::new();
        for p in &three {
            let key = if p.first <= p.second {
                (p.first.clone(), p.second.clone())
            } else {
                (p.second.clone(), p.first.clone())
            };
            assert!(seen.insert(key));
            assert!(p.resolve().is_ok());
        }
        assert!(matches!(
            reference_pairs(4),
            Err(Error::UnsupportedDimension(4))
        ));
    }

    #[test]
    fn enumeration_covers_diagonal_and_reports_defects() {
        let rows = enumerate_onnose_compatible(2).unwrap();
        assert_eq!(rows.len(), 10);
        for (p, report) in &rows {
            if p.first == p.second {
                assert!(report.is_empty());
            }
        }
        let (_, r) = rows
            .iter()
            .find(|(p, _)| p.first == "A2_2" && p.second == "A2_4")
            .unwrap();
        assert_eq!(r.at(2, 1, 1).unwrap(), &[Poly::zero(), Poly::from_i64(1)]);
        assert_eq!(enumerate_onnose_compatible(3).unwrap().len(), 78);
        assert!(enumerate_onnose_compatible(4).is_err());
    }

    #[test]
    fn expected_rows_are_unique_and_resolve() {
        let rows = expected_results();
        let mut ids = std::collections::BTreeSet::new();
        for r in &rows {
            assert!(ids.insert(r.id.clone()));
            if let Some((a, b)) = &r.pair {
                assert!(pair(a, b).is_ok(), "{}", r.id);
            }
        }
    }

    #[test]
    fn pair_spec_parsing() {
        assert_eq!(get_pair("A2_2,A2_3").unwrap().dim(), 2);
        assert_eq!(get_pair("A2_2 + A2_4").unwrap().second.name, "A2_4");
        assert!(get_pair("A2_2").is_err());
        assert!(get_pair("A2_2,A3_1").is_err());
    }
}
