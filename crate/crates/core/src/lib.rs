//! Computational coarse geometry of finitely generated (and countable-rank)
//! abelian groups.
//!
//! The layers, bottom up:
//!
//! - [`intlat`]: exact integer lattice algebra (Hermite/Smith normal forms,
//!   kernels, solving, membership, index) — every decision procedure above
//!   reduces to it;
//! - [`fgab`]: f.g. abelian groups in invariant-factor normal form,
//!   homomorphisms as integer matrices, kernels/images/quotients/pullbacks
//!   and the cardinal/numerical invariants;
//! - [`coarse`]: group ideals and the coarse structures they induce;
//! - [`morph`]: decision procedures for bornologous / proper / large-scale
//!   properties of homomorphisms, quotient and classification checks;
//! - [`quasihom`]: quasi-homomorphisms on Z^n with window-relative defect
//!   certification and coarse-inverse constructions;
//! - [`cgcat`]: the category layer — closeness classes, spans with
//!   coarse-equivalence left legs, Ore squares, and the rational model of
//!   the localization;
//! - [`bigrank`]: the countable-rank group ⊕_N Z with structured
//!   endomorphisms and the rank ideal;
//! - [`geom`]: asymptotic-dimension cover witnesses and small/large set
//!   decisions for eventually periodic subsets of Z;
//! - [`literal`]: the shared textual grammars for groups, homs, ideals,
//!   quasi-homomorphism descriptors, endos, and periodic sets.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;

pub mod bigrank;
pub mod cgcat;
pub mod coarse;
pub mod fgab;
pub mod geom;
pub mod intlat;
pub mod literal;
pub mod morph;
pub mod quasihom;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("theorem-backed assertion violated (implementation bug): {0}")]
    TheoremViolation(String),
}

/// Extended natural: a finite cardinal or ALEPH0. All groups in scope are
/// countable, so no higher cardinal ever arises.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(BigUint),
    Infinite,
}

impl ExtNat {
    pub fn finite<T: Into<BigUint>>(n: T) -> Self {
        ExtNat::Finite(n.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => write!(f, "INFINITE"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        if raw == "INFINITE" {
            Ok(ExtNat::Infinite)
        } else {
            raw.parse::<BigUint>()
                .map(ExtNat::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}

/// Cardinal on the two-level scale {finite naturals} ∪ {ALEPH0} used by the
/// cardinal invariants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(BigUint),
    Aleph0,
}

impl Cardinal {
    pub fn finite<T: Into<BigUint>>(n: T) -> Self {
        Cardinal::Finite(n.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => write!(f, "ALEPH0"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        if raw == "ALEPH0" {
            Ok(Cardinal::Aleph0)
        } else {
            raw.parse::<BigUint>()
                .map(Cardinal::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}
