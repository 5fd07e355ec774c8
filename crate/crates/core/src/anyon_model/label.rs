use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;

/// An anyon type, identified by its index in alphabetical order.
///
/// The D(S3) labels are available as associated constants `A` through `H`.
/// The derived ordering is the alphabetical one used for the rows of S and T.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnyonLabel(pub u8);

impl AnyonLabel {
    pub const A: AnyonLabel = AnyonLabel(0);
    pub const B: AnyonLabel = AnyonLabel(1);
    pub const C: AnyonLabel = AnyonLabel(2);
    pub const D: AnyonLabel = AnyonLabel(3);
    pub const E: AnyonLabel = AnyonLabel(4);
    pub const F: AnyonLabel = AnyonLabel(5);
    pub const G: AnyonLabel = AnyonLabel(6);
    pub const H: AnyonLabel = AnyonLabel(7);

    /// The unit object.
    pub const UNIT: AnyonLabel = AnyonLabel(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn letter(self) -> char {
        (b'A' + self.0) as char
    }

    pub fn from_letter(c: char) -> Result<Self, ModelError> {
        if c.is_ascii_uppercase() {
            Ok(AnyonLabel(c as u8 - b'A'))
        } else {
            Err(ModelError::UnknownLabel(c.to_string()))
        }
    }

    /// Parses a run of letters such as `"BGG"`.
    pub fn parse_word(s: &str) -> Result<Vec<AnyonLabel>, ModelError> {
        s.chars().filter(|c| *c != ',').map(Self::from_letter).collect()
    }
}

/// The eight D(S3) labels in alphabetical order.
pub const DS3_LABELS: [AnyonLabel; 8] = [
    AnyonLabel::A,
    AnyonLabel::B,
    AnyonLabel::C,
    AnyonLabel::D,
    AnyonLabel::E,
    AnyonLabel::F,
    AnyonLabel::G,
    AnyonLabel::H,
];

/// Ordering of fusion channels inside F-matrices and basis tables: A, B, G, D, E, F, C, H.
pub const DS3_BASIS_ORDER: [AnyonLabel; 8] = [
    AnyonLabel::A,
    AnyonLabel::B,
    AnyonLabel::G,
    AnyonLabel::D,
    AnyonLabel::E,
    AnyonLabel::F,
    AnyonLabel::C,
    AnyonLabel::H,
];

impl fmt::Display for AnyonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl fmt::Debug for AnyonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for AnyonLabel {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut it = s.trim().chars();
        match (it.next(), it.next()) {
            (Some(c), None) => Self::from_letter(c),
            _ => Err(ModelError::UnknownLabel(s.to_string())),
        }
    }
}

impl Serialize for AnyonLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AnyonLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Formats a sequence of labels as a compact word, e.g. `GG` or `FC`.
pub fn word(labels: &[AnyonLabel]) -> String {
    labels.iter().map(|l| l.letter()).collect()
}
