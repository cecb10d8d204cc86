use serde::{Deserialize, Serialize};

use super::FiniteMonoid;

/// Elementary algebraic properties of a monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoidProfile {
    pub is_group: bool,
    pub has_right_absorbing: bool,
    pub has_left_absorbing: bool,
    pub has_zero: bool,
    pub is_right_ore: bool,
    pub is_right_collapsible: bool,
    pub is_left_cancellative: bool,
    pub is_right_cancellative: bool,
    pub right_ideal_count: usize,
}

pub fn algebraic_profile(m: &FiniteMonoid) -> MonoidProfile {
    MonoidProfile {
        is_group: m.is_group(),
        has_right_absorbing: m.elements().any(|z| m.is_right_absorbing(z)),
        has_left_absorbing: m.elements().any(|z| m.is_left_absorbing(z)),
        has_zero: m.elements().any(|z| m.is_right_absorbing(z) && m.is_left_absorbing(z)),
        is_right_ore: m.is_right_ore(),
        is_right_collapsible: m.is_right_collapsible(),
        is_left_cancellative: m.is_left_cancellative(),
        is_right_cancellative: m.is_right_cancellative(),
        right_ideal_count: m.right_ideals().len(),
    }
}

impl FiniteMonoid {
    pub fn is_group(&self) -> bool {
        self.elements().all(|x| self.is_unit(x))
    }

    /// `m₁M ∩ m₂M ≠ ∅` for all `m₁, m₂`.
    pub fn is_right_ore(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.principal_right_ideal(a).intersects(&self.principal_right_ideal(b)))
        })
    }

    /// `Mm₁ ∩ Mm₂ ≠ ∅` for all `m₁, m₂`.
    pub fn is_left_ore(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.principal_left_ideal(a).intersects(&self.principal_left_ideal(b)))
        })
    }

    /// For all `m₁, m₂` some `m` has `m₁m = m₂m`.
    pub fn is_right_collapsible(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.elements().any(|m| self.mul(a, m) == self.mul(b, m)))
        })
    }

    pub fn is_left_cancellative(&self) -> bool {
        self.elements()
            .all(|m| self.principal_right_ideal(m).len() == self.size())
    }

    pub fn is_right_cancellative(&self) -> bool {
        self.elements()
            .all(|m| self.principal_left_ideal(m).len() == self.size())
    }
}
