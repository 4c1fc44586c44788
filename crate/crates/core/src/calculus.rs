//! Associators, inner mappings and the structural subloops of `F3(x,y)`.
//!
//! Everything here is computed from the defining equations through division.
//! None of the derived identities (symmetries, product expansions, power
//! formulas) are used to compute anything; they are tested against these
//! definitions instead.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::loop_core::{Elem8, FreeLoop, Loop};

/// Loop calculus available on every [`Loop`].
pub trait Calculus: Loop {
    /// The unique `t` with `(a * bc) * t == ab * c`.
    fn associator(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        let left = self.mul(a, &self.mul(b, c));
        let right = self.mul(&self.mul(a, b), c);
        self.left_div(&left, &right)
    }

    /// Image of `c` under `L_{a,b} = L_a L_b L_{ba}^{-1}` (maps act on the right).
    fn inner_l(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.left_div(&self.mul(b, a), &self.mul(b, &self.mul(a, c)))
    }

    /// Image of `c` under `R_{a,b} = R_a R_b R_{ab}^{-1}`.
    ///
    /// Right division is left division with the arguments swapped, which is
    /// only valid because every loop in this crate is commutative.
    fn inner_r(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.left_div(&self.mul(a, b), &self.mul(&self.mul(c, a), b))
    }

    /// Image of `c` under `T_a = R_a L_a^{-1}`.
    fn inner_t(&self, a: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.left_div(a, &self.mul(c, a))
    }
}

impl<L: Loop + ?Sized> Calculus for L {}

fn free() -> FreeLoop {
    FreeLoop::default()
}

pub fn associator(a: &Elem8, b: &Elem8, c: &Elem8) -> Elem8 {
    free().associator(&a.coords, &b.coords, &c.coords).into()
}

pub fn inner_l(a: &Elem8, b: &Elem8, c: &Elem8) -> Elem8 {
    free().inner_l(&a.coords, &b.coords, &c.coords).into()
}

pub fn inner_r(a: &Elem8, b: &Elem8, c: &Elem8) -> Elem8 {
    free().inner_r(&a.coords, &b.coords, &c.coords).into()
}

pub fn inner_t(a: &Elem8, c: &Elem8) -> Elem8 {
    free().inner_t(&a.coords, &c.coords).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NucleusKind {
    Left,
    Middle,
    Right,
    Full,
    Center,
    AssociatorSubloop,
}

impl NucleusKind {
    pub const ALL: [NucleusKind; 6] = [
        NucleusKind::Left,
        NucleusKind::Middle,
        NucleusKind::Right,
        NucleusKind::Full,
        NucleusKind::Center,
        NucleusKind::AssociatorSubloop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NucleusKind::Left => "left",
            NucleusKind::Middle => "middle",
            NucleusKind::Right => "right",
            NucleusKind::Full => "full",
            NucleusKind::Center => "center",
            NucleusKind::AssociatorSubloop => "associator-subloop",
        }
    }
}

impl fmt::Display for NucleusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown subloop kind {0:?} (expected one of left, middle, right, full, center, associator-subloop)")]
pub struct UnknownKind(pub String);

impl FromStr for NucleusKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NucleusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// Membership in the subloops of `F3(x,y)`, by their coordinate description:
/// `A(Q) = N_mu(Q) = 0 x 0 x Z^6` and
/// `N_lambda(Q) = N_rho(Q) = N(Q) = Z(Q) = 0^4 x Z^4`.
pub fn is_member(z: &Elem8, kind: NucleusKind) -> bool {
    let zero_prefix = |n: usize| z.coords[..n].iter().all(Zero::is_zero);
    match kind {
        NucleusKind::Middle | NucleusKind::AssociatorSubloop => zero_prefix(2),
        NucleusKind::Left | NucleusKind::Right | NucleusKind::Full | NucleusKind::Center => {
            zero_prefix(4)
        }
    }
}

/// Where the tested element sits in a witnessing associator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Slot {
    First,
    Middle,
    Last,
}

/// Concrete evidence that `z` is not in a subloop: the associator with `z`
/// in `slot` and `a`, `b` in the remaining slots (in order) is nontrivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub slot: Slot,
    pub a: Elem8,
    pub b: Elem8,
    pub associator: Elem8,
}

impl Witness {
    fn try_at(slot: Slot, z: &Elem8, a: &Elem8, b: &Elem8) -> Option<Self> {
        let t = match slot {
            Slot::First => associator(z, a, b),
            Slot::Middle => associator(a, z, b),
            Slot::Last => associator(a, b, z),
        };
        (!t.is_identity()).then(|| Witness { slot, a: a.clone(), b: b.clone(), associator: t })
    }
}

/// A witness pair for `z` failing to lie in `kind`, or `None` if `z` is a
/// member. Candidates are drawn from `x, y, u1, u2`, which always suffices
/// in `F3(x,y)`; the associator-subloop uses the middle-nucleus test since
/// the two subloops coincide.
pub fn witness_noncentral(kind: NucleusKind, z: &Elem8) -> Option<Witness> {
    if is_member(z, kind) {
        return None;
    }
    let slots: &[Slot] = match kind {
        NucleusKind::Left => &[Slot::First],
        NucleusKind::Right => &[Slot::Last],
        NucleusKind::Middle | NucleusKind::AssociatorSubloop => &[Slot::Middle],
        NucleusKind::Full | NucleusKind::Center => &[Slot::Last, Slot::First, Slot::Middle],
    };
    let candidates: Vec<Elem8> = (1..=4).map(Elem8::basis).collect();
    slots.iter().find_map(|&slot| {
        candidates
            .iter()
            .flat_map(|a| candidates.iter().map(move |b| (a, b)))
            .find_map(|(a, b)| Witness::try_at(slot, z, a, b))
    })
}
