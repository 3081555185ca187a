use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A dimension in ℕ ∪ {−∞}. The empty set has dimension `NegInf`, which
/// sorts below every finite value and is distinct from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    NegInf,
    Finite(u32),
}

impl Dim {
    pub fn finite(self) -> Option<u32> {
        match self {
            Dim::NegInf => None,
            Dim::Finite(d) => Some(d),
        }
    }

    pub fn is_empty(self) -> bool {
        self == Dim::NegInf
    }

    /// Sum with −∞ absorbing.
    pub fn plus(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::NegInf,
        }
    }
}

impl From<u32> for Dim {
    fn from(d: u32) -> Self {
        Dim::Finite(d)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::NegInf => f.write_str("-inf"),
            Dim::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dim::NegInf => s.serialize_str("-inf"),
            Dim::Finite(d) => s.serialize_u32(*d),
        }
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u32),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(n) => Ok(Dim::Finite(n)),
            Repr::S(s) if s == "-inf" => Ok(Dim::NegInf),
            Repr::S(s) => Err(serde::de::Error::custom(format!("bad dimension `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_is_bottom() {
        assert!(Dim::NegInf < Dim::Finite(0));
        assert_eq!(Dim::Finite(2).plus(Dim::NegInf), Dim::NegInf);
        assert_eq!(Dim::Finite(2).max(Dim::NegInf), Dim::Finite(2));
        assert_eq!(serde_json::to_string(&Dim::NegInf).unwrap(), "\"-inf\"");
        assert_eq!(serde_json::from_str::<Dim>("3").unwrap(), Dim::Finite(3));
    }
}
