use std::fmt;

use serde::Serialize;

use super::pairing::PairingSpec;
use crate::roots::{Family, SystemType};

/// How the restricted invariant compares with the Tits class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subgroup {
    Zero,
    SameAsTitsClass,
    /// Neither zero nor a unit multiple of the Tits-class expression.
    Unrelated,
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subgroup::Zero => "Zero",
            Subgroup::SameAsTitsClass => "SameAsTitsClass",
            Subgroup::Unrelated => "Unrelated",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub subgroup: Subgroup,
    pub pairing: PairingSpec,
    pub notes: String,
}

/// Order of the center of the simply connected group of type `t`.
pub fn center_order(t: SystemType) -> u64 {
    let l = t.rank() as u64;
    match (t.family(), l) {
        (Family::A, _) => l + 1,
        (Family::B | Family::C, _) => 2,
        (Family::D, _) => 4,
        (Family::E, 6) => 3,
        (Family::E, 7) => 2,
        _ => 1,
    }
}

/// The answer table: nonzero exactly for A, C_ℓ with ℓ odd, D, E6 and E7.
pub fn theorem_verdict(t: SystemType) -> TheoremVerdict {
    let l = t.rank();
    let (subgroup, notes) = match t.family() {
        Family::A => (Subgroup::SameAsTitsClass, "type A".to_string()),
        Family::C if l % 2 == 1 => (Subgroup::SameAsTitsClass, "type C, odd rank".to_string()),
        Family::C => (Subgroup::Zero, "type C, even rank".to_string()),
        Family::D => (Subgroup::SameAsTitsClass, "type D".to_string()),
        Family::E if l == 6 || l == 7 => (Subgroup::SameAsTitsClass, format!("type E{l}")),
        Family::B => (Subgroup::Zero, "type B".to_string()),
        Family::E | Family::F | Family::G => (Subgroup::Zero, "trivial center".to_string()),
    };
    let pairing = if t.family() == Family::D && l.is_multiple_of(2) {
        PairingSpec::d_even(l)
    } else {
        PairingSpec::standard(center_order(t))
    };
    TheoremVerdict {
        subgroup,
        pairing,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(s: &str) -> Subgroup {
        theorem_verdict(s.parse().unwrap()).subgroup
    }

    #[test]
    fn table() {
        assert_eq!(verdict("E7"), Subgroup::SameAsTitsClass);
        assert_eq!(verdict("C6"), Subgroup::Zero);
        assert_eq!(verdict("C7"), Subgroup::SameAsTitsClass);
        assert_eq!(verdict("G2"), Subgroup::Zero);
        assert_eq!(verdict("B5"), Subgroup::Zero);
        assert_eq!(verdict("A1"), Subgroup::SameAsTitsClass);
        assert_eq!(verdict("D5"), Subgroup::SameAsTitsClass);
        assert_eq!(verdict("E8"), Subgroup::Zero);
    }

    #[test]
    fn pairings() {
        let d8 = theorem_verdict("D8".parse().unwrap());
        assert_eq!(d8.pairing, PairingSpec::hyperbolic());
        let d6 = theorem_verdict("D6".parse().unwrap());
        assert_eq!(d6.pairing, PairingSpec::diagonal());
        assert_eq!(theorem_verdict("E6".parse().unwrap()).pairing.modulus, 3);
    }
}
