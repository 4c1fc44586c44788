//! Exact arithmetic in the free commutative automorphic loop of nilpotency
//! class 3 on two generators, realised as `(Z^8, *)`.
//!
//! * [`loop_core`]: elements, multiplication, division, powers, and the
//!   projection onto the class-2 free loop on `Z^4`.
//! * [`calculus`]: associators, inner mappings, nuclei and center.
//! * [`symbolic`]: a sparse polynomial engine and a catalog of identities
//!   proved over generic (variable) exponents.
//! * [`parser`]: loop words such as `assoc(x,x,y) * y^-2`.
//! * [`quotient`]: the finite loops `(Z/m)^8` for `gcd(m, 3) = 1`.

pub mod arith;
pub mod calculus;
pub mod law;
pub mod loop_core;
pub mod parser;
pub mod quotient;
pub mod symbolic;

pub use arith::{alpha, beta, Int, ModInt, Rat};
pub use calculus::{associator, inner_l, inner_t, is_member, witness_noncentral, NucleusKind, Witness};
pub use loop_core::{
    identity8, inverse8, left_divide8, mul4, mul8, pow8, project, Elem4, Elem8, FreeLoop, Loop,
};
