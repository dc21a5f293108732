use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

/// Every invariant the workbench computes or verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    Derivation,
    Centroid,
    QuasiCentroid,
    QuasiDerivation,
    GeneralizedDerivation,
    Automorphism,
    RotaBaxter,
    Nijenhuis,
    Averaging,
    Reynolds,
    Cohomology,
}

impl Invariant {
    pub const ALL: [Invariant; 11] = [
        Invariant::Derivation,
        Invariant::Centroid,
        Invariant::QuasiCentroid,
        Invariant::QuasiDerivation,
        Invariant::GeneralizedDerivation,
        Invariant::Automorphism,
        Invariant::RotaBaxter,
        Invariant::Nijenhuis,
        Invariant::Averaging,
        Invariant::Reynolds,
        Invariant::Cohomology,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Invariant::Derivation => "derivation",
            Invariant::Centroid => "centroid",
            Invariant::QuasiCentroid => "quasi-centroid",
            Invariant::QuasiDerivation => "quasi-derivation",
            Invariant::GeneralizedDerivation => "generalized-derivation",
            Invariant::Automorphism => "automorphism",
            Invariant::RotaBaxter => "rota-baxter",
            Invariant::Nijenhuis => "nijenhuis",
            Invariant::Averaging => "averaging",
            Invariant::Reynolds => "reynolds",
            Invariant::Cohomology => "cohomology",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Invariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Invariant::ALL
            .into_iter()
            .find(|k| k.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownInvariant(s.to_string()))
    }
}
