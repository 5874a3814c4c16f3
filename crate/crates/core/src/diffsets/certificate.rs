use alloc::vec::Vec;
use core::fmt;

use crate::field::FieldSpec;

/// What a set or family was verified to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Kind {
    Pds,
    /// The set is the PDS itself or a translate of it.
    TrivialSkewPds,
    SkewPds,
    Ads,
    Ddf,
    Edf,
    Dpdf,
    Epdf,
    RelativeDpdf,
    RelativeEpdf,
    None,
}

impl Kind {
    pub fn is_family(self) -> bool {
        matches!(self, Kind::Ddf | Kind::Edf | Kind::Dpdf | Kind::Epdf | Kind::RelativeDpdf | Kind::RelativeEpdf)
    }

    /// Whether the family statement concerns external differences.
    pub fn mode(self) -> Option<Mode> {
        match self {
            Kind::Ddf | Kind::Dpdf | Kind::RelativeDpdf => Some(Mode::Internal),
            Kind::Edf | Kind::Epdf | Kind::RelativeEpdf => Some(Mode::External),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Pds => "PDS",
            Kind::TrivialSkewPds => "trivial skew PDS",
            Kind::SkewPds => "skew PDS",
            Kind::Ads => "ADS",
            Kind::Ddf => "DDF",
            Kind::Edf => "EDF",
            Kind::Dpdf => "DPDF",
            Kind::Epdf => "EPDF",
            Kind::RelativeDpdf => "relative DPDF",
            Kind::RelativeEpdf => "relative EPDF",
            Kind::None => "none",
        })
    }
}

/// Which difference multiset of a family is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Mode {
    Internal,
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PdsType {
    Paley,
    LatinSquare { n: u64, r: u64 },
    NegativeLatinSquare { n: u64, r: u64 },
    DifferenceSet,
    Other,
}

/// `v` group order, `m` number of sets, `k` set sizes, `lambda`/`mu` the two
/// frequencies (`mu` absent for DDF/EDF), `t` the ADS support size.
/// `family` distinguishes a one-set family from a single set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Params {
    pub v: u64,
    pub m: u64,
    pub k: Vec<u64>,
    pub lambda: u64,
    pub mu: Option<u64>,
    pub t: Option<u64>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub family: bool,
}

impl Params {
    pub fn set(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        Params { v, m: 1, k: alloc::vec![k], lambda, mu: Some(mu), t: None, family: false }
    }

    pub fn family(v: u64, k: Vec<u64>, lambda: u64, mu: Option<u64>) -> Self {
        Params { v, m: k.len() as u64, k, lambda, mu, t: None, family: true }
    }
}

/// Set-shaped parameters print as `(v,k,lambda,mu)`; family-shaped as
/// `(v,m,k;lambda,mu)` or `(v,m,k,lambda)`; unequal sizes are listed.
impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},", self.v)?;
        if let Some(t) = self.t {
            return write!(f, "{},{},{t})", self.k[0], self.lambda);
        }
        if !self.family && self.mu.is_some() {
            return write!(f, "{},{},{})", self.k[0], self.lambda, self.mu.unwrap_or_default());
        }
        write!(f, "{},", self.m)?;
        let uniform = self.k.windows(2).all(|w| w[0] == w[1]);
        let ks: &[u64] = if uniform && !self.k.is_empty() { &self.k[..1] } else { &self.k };
        for (i, k) in ks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        match self.mu {
            Some(mu) => write!(f, ";{},{mu})", self.lambda),
            None => write!(f, ",{})", self.lambda),
        }
    }
}

/// A verified classification, self-contained enough to re-verify.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Certificate {
    pub kind: Kind,
    pub field: FieldSpec,
    pub sets: Vec<Vec<u32>>,
    /// The PDS `A` of a (skew) PDS, `T` of a relative family, `S` otherwise;
    /// the lower-frequency set of an ADS. Sorted codes.
    pub reference_set: Vec<u32>,
    pub params: Params,
    pub pds_type: Option<PdsType>,
    pub trivial: bool,
    /// PDS only: `0 not in A` and `A = -A`.
    pub regular: Option<bool>,
    /// Trivial skew PDS: the `a` with `D = a + A`.
    pub translate: Option<u32>,
}

impl Certificate {
    pub fn none(field: FieldSpec, sets: Vec<Vec<u32>>) -> Self {
        Certificate {
            kind: Kind::None,
            field,
            sets,
            reference_set: Vec::new(),
            params: Params::default(),
            pds_type: None,
            trivial: false,
            regular: None,
            translate: None,
        }
    }

    pub fn is_some(&self) -> bool {
        self.kind != Kind::None
    }
}
