//! Loop elements whose exponents are polynomials.

use std::sync::Arc;

use num_traits::One;

use super::poly::{PolyError, Polynomial, VarTable};
use crate::arith::{Int, Rat};
use crate::law::{self, Coords, FreeLaw};
use crate::loop_core::{Elem8, LawLoop};

/// The free loop law evaluated over polynomial exponents.
pub type SymbolicLoop = LawLoop<Polynomial, FreeLaw>;

/// Which coordinates of a generic element are forced to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// All eight exponents free.
    Free,
    /// `0 x 0 x Z^6`: the associator subloop.
    Associator,
    /// `0^4 x Z^4`: the center.
    Central,
}

impl Shape {
    pub fn zero_prefix(self) -> usize {
        match self {
            Shape::Free => 0,
            Shape::Associator => 2,
            Shape::Central => 4,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SymElem8 {
    pub coords: Coords<Polynomial>,
    pub vars: Arc<VarTable>,
}

impl SymElem8 {
    /// The element with exponents `p1..p8`, which must be in `vars`.
    pub fn generic(vars: &Arc<VarTable>, prefix: &str) -> Result<Self, PolyError> {
        Self::generic_shaped(vars, prefix, Shape::Free)
    }

    pub fn generic_shaped(vars: &Arc<VarTable>, prefix: &str, shape: Shape) -> Result<Self, PolyError> {
        let mut coords = law::zero_coords::<Polynomial>();
        for (i, c) in coords.iter_mut().enumerate().skip(shape.zero_prefix()) {
            *c = vars.var(&format!("{prefix}{}", i + 1))?;
        }
        Ok(Self { coords, vars: vars.clone() })
    }

    pub fn identity(vars: &Arc<VarTable>) -> Self {
        Self { coords: law::zero_coords(), vars: vars.clone() }
    }

    pub fn constant(vars: &Arc<VarTable>, e: &Elem8) -> Self {
        Self { coords: e.coords.clone().map(Polynomial::from_int), vars: vars.clone() }
    }

    /// Moves the element onto a table that extends its own.
    pub fn rebase(&self, vars: &Arc<VarTable>) -> Result<Self, PolyError> {
        if self.vars.is_prefix_of(vars) {
            Ok(Self { coords: self.coords.clone(), vars: vars.clone() })
        } else {
            Err(PolyError::VariableTableMismatch)
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableTableMismatch)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    /// Evaluates every coordinate at an integer point. Fails if any value is
    /// not an integer.
    pub fn evaluate(&self, point: &[Int]) -> Result<Option<Elem8>, PolyError> {
        let mut out: [Int; 8] = std::array::from_fn(|_| Int::default());
        for (o, c) in out.iter_mut().zip(&self.coords) {
            let v: Rat = c.evaluate(point)?;
            if !v.denom().is_one() {
                return Ok(None);
            }
            *o = v.to_integer();
        }
        Ok(Some(Elem8::new(out)))
    }

    pub fn max_degree(&self) -> u32 {
        self.coords.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn term_counts(&self) -> [usize; 8] {
        std::array::from_fn(|i| self.coords[i].num_terms())
    }
}

pub fn sym_mul8(a: &SymElem8, b: &SymElem8) -> Result<SymElem8, PolyError> {
    a.check(b)?;
    Ok(SymElem8 { coords: law::free_product(&a.coords, &b.coords), vars: a.vars.clone() })
}

pub fn sym_left_divide8(a: &SymElem8, c: &SymElem8) -> Result<SymElem8, PolyError> {
    a.check(c)?;
    Ok(SymElem8 { coords: law::left_quotient(&FreeLaw, &a.coords, &c.coords), vars: a.vars.clone() })
}
