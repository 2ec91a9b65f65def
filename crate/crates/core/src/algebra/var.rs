use std::fmt;

use serde::{Deserialize, Serialize};

/// Variable families. The declaration order is the canonical family order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Family {
    Z,
    U,
    Frozen,
    EllPlus,
    EllMinus,
    Y,
    AInvBase,
    Psi,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Z,
        Family::U,
        Family::Frozen,
        Family::EllPlus,
        Family::EllMinus,
        Family::Y,
        Family::AInvBase,
        Family::Psi,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Z => "z",
            Family::U => "u",
            Family::Frozen => "f",
            Family::EllPlus => "l+",
            Family::EllMinus => "l-",
            Family::Y => "Y",
            Family::AInvBase => "A",
            Family::Psi => "Psi",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.symbol() == s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct VarKey {
    pub family: Family,
    pub node: u32,
    pub shift: i64,
}

impl VarKey {
    pub fn new(family: Family, node: u32, shift: i64) -> Self {
        Self { family, node, shift }
    }

    pub fn z(node: u32, shift: i64) -> Self {
        Self::new(Family::Z, node, shift)
    }
    pub fn u(node: u32, shift: i64) -> Self {
        Self::new(Family::U, node, shift)
    }
    /// Frozen coefficient f_j of column j.
    pub fn f(j: u32) -> Self {
        Self::new(Family::Frozen, j, 0)
    }
    pub fn ell(node: u32, shift: i64) -> Self {
        Self::new(Family::EllPlus, node, shift)
    }
    pub fn ell_minus(node: u32, shift: i64) -> Self {
        Self::new(Family::EllMinus, node, shift)
    }
    pub fn y(node: u32, shift: i64) -> Self {
        Self::new(Family::Y, node, shift)
    }
    pub fn a(node: u32, shift: i64) -> Self {
        Self::new(Family::AInvBase, node, shift)
    }
    pub fn psi(node: u32, shift: i64) -> Self {
        Self::new(Family::Psi, node, shift)
    }
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.family.symbol(), self.node, self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_family_node_shift() {
        let mut keys = vec![VarKey::y(1, 3), VarKey::z(2, -1), VarKey::z(1, 5), VarKey::y(1, -3)];
        keys.sort();
        assert_eq!(
            keys,
            vec![VarKey::z(1, 5), VarKey::z(2, -1), VarKey::y(1, -3), VarKey::y(1, 3)]
        );
    }

    #[test]
    fn symbols_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::from_symbol(f.symbol()), Some(f));
        }
        assert_eq!(VarKey::ell(2, 3).to_string(), "l+(2,3)");
    }
}
