//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial is a map from monomials to nonzero coefficients, ordered by
//! graded lexicographic order on the monomials. Zero coefficients are never
//! stored, so structural equality is polynomial equality.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{ExpRing, Int, Rat};

pub type Var = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable tables differ")]
    VariableTableMismatch,
    #[error("no value supplied for variable index {0}")]
    MissingValue(Var),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable {0:?} declared twice")]
    DuplicateVariable(String),
}

/// A product of variables with positive exponents, sorted by variable index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    degree: u32,
    powers: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self { degree: 1, powers: vec![(v, 1)] }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order;
    /// zero exponents are dropped and repeated variables merged.
    pub fn from_powers(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        let powers: Vec<_> = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let degree = powers.iter().map(|&(_, e)| e).sum();
        Self { degree, powers }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.powers
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.powers[i].1)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (v, e) = self.powers[i];
            let (w, f) = other.powers[j];
            match v.cmp(&w) {
                Ordering::Less => {
                    powers.push((v, e));
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push((w, f));
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((v, e + f));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        powers.extend_from_slice(&other.powers[j..]);
        Self { degree: self.degree + other.degree, powers }
    }

    fn without(&self, v: Var) -> (Self, u32) {
        let k = self.exponent(v);
        let powers: Vec<_> = self.powers.iter().copied().filter(|&(w, _)| w != v).collect();
        (Self { degree: self.degree - k, powers }, k)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with variable 0 the most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (&(v, e), &(w, f)) in self.powers.iter().zip(&other.powers) {
                if v != w {
                    // the smaller index is present in one and absent in the other
                    return if v < w { Ordering::Greater } else { Ordering::Less };
                }
                if e != f {
                    return e.cmp(&f);
                }
            }
            self.powers.len().cmp(&other.powers.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

thread_local! {
    static TERM_CEILING: Cell<usize> = const { Cell::new(usize::MAX) };
}

/// Raised (as a panic payload) when a polynomial grows past the ceiling set
/// with [`with_term_ceiling`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermCeilingExceeded {
    pub terms: usize,
    pub ceiling: usize,
}

/// Runs `f` with a per-thread cap on the number of terms any polynomial
/// operation may produce. Exceeding it unwinds with a
/// [`TermCeilingExceeded`] payload.
pub fn with_term_ceiling<T>(ceiling: usize, f: impl FnOnce() -> T) -> T {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            TERM_CEILING.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(TERM_CEILING.with(|c| c.replace(ceiling)));
    f()
}

fn check_ceiling(terms: usize) {
    let ceiling = TERM_CEILING.with(Cell::get);
    if terms > ceiling {
        std::panic::panic_any(TermCeilingExceeded { terms, ceiling });
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Self { terms }
    }

    pub fn from_int(n: Int) -> Self {
        Self::constant(Rat::from_integer(n))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rat::one());
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest variable index used, if any.
    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(|m| m.powers.last().map(|&(v, _)| v)).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_assign_ref(&mut self, other: &Self, sign: bool) {
        for (m, c) in &other.terms {
            let c = if sign { c.clone() } else { -c.clone() };
            self.add_term(m.clone(), c);
        }
        check_ceiling(self.terms.len());
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = Self::zero();
        for (m, c) in &small.terms {
            for (n, d) in &large.terms {
                out.add_term(m.mul(n), c * d);
            }
            check_ceiling(out.terms.len());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// `(p^3 - p) / 3`.
    pub fn sym_alpha(&self) -> Self {
        let cube = self.mul_ref(self).mul_ref(self);
        (cube - self).scale(&Rat::new(<Int as One>::one(), Int::from(3)))
    }

    /// `p^2 - p`.
    pub fn sym_beta(&self) -> Self {
        self.mul_ref(self) - self
    }

    /// Replaces variable `v` by `value`.
    pub fn substitute(&self, v: Var, value: &Polynomial) -> Self {
        let mut powers: Vec<Polynomial> = vec![Self::constant(Rat::one())];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (rest, k) = m.without(v);
            while powers.len() <= k as usize {
                let next = powers.last().unwrap().mul_ref(value);
                powers.push(next);
            }
            let mut term = Self::zero();
            term.add_term(rest, c.clone());
            out.add_assign_ref(&term.mul_ref(&powers[k as usize]), true);
        }
        out
    }

    /// Value at an integer point; `point[i]` is the value of variable `i`.
    pub fn evaluate(&self, point: &[Int]) -> Result<Rat, PolyError> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = <Int as One>::one();
            for &(var, e) in &m.powers {
                let x = point.get(var as usize).ok_or(PolyError::MissingValue(var))?;
                v *= num_traits::pow(x.clone(), e as usize);
            }
            acc += c * Rat::from_integer(v);
        }
        Ok(acc)
    }

    /// Formats with variable names from `table`.
    pub fn display<'a>(&'a self, table: &'a VarTable) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, table: Some(table) }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    table: Option<&'a VarTable>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = abs.is_one();
            if !unit || m.powers.is_empty() {
                write!(f, "{abs}")?;
            }
            for (j, &(v, e)) in m.powers.iter().enumerate() {
                if j > 0 || !unit {
                    f.write_str("*")?;
                }
                match self.table.and_then(|t| t.name(v)) {
                    Some(name) => f.write_str(name)?,
                    None => write!(f, "X{v}")?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", PolyDisplay { poly: self, table: None })
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self.add_assign_ref(&rhs, true);
        self
    }
}

impl<'a> Add<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &'a Polynomial) -> Polynomial {
        self.add_assign_ref(rhs, true);
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self.add_assign_ref(&rhs, false);
        self
    }
}

impl<'a> Sub<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: &'a Polynomial) -> Polynomial {
        self.add_assign_ref(rhs, false);
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.mul_ref(rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl ExpRing for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn from_i64(n: i64) -> Self {
        Polynomial::from_int(Int::from(n))
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn alpha(&self) -> Self {
        self.sym_alpha()
    }
    fn beta(&self) -> Self {
        self.sym_beta()
    }
}

/// Names of the variables a family of polynomials is written in.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, PolyError> {
        let mut t = VarTable::default();
        for n in names {
            t.push(n.into())?;
        }
        Ok(Arc::new(t))
    }

    /// Variables `p1..p8` for every prefix `p`.
    pub fn for_elements(prefixes: &[&str]) -> Arc<Self> {
        let names = prefixes.iter().flat_map(|p| (1..=8).map(move |i| format!("{p}{i}")));
        Self::new(names).expect("element prefixes must be distinct")
    }

    fn push(&mut self, name: String) -> Result<Var, PolyError> {
        if self.names.contains(&name) {
            return Err(PolyError::DuplicateVariable(name));
        }
        self.names.push(name);
        Ok((self.names.len() - 1) as Var)
    }

    /// A new table with this one as a prefix, so existing polynomials remain
    /// valid over it.
    pub fn extend<S: Into<String>>(&self, names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, PolyError> {
        let mut t = self.clone();
        for n in names {
            t.push(n.into())?;
        }
        Ok(Arc::new(t))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Var) -> Option<&str> {
        self.names.get(v as usize).map(String::as_str)
    }

    pub fn lookup(&self, name: &str) -> Result<Var, PolyError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Var)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<Polynomial, PolyError> {
        self.lookup(name).map(Polynomial::var)
    }

    /// True if `other` starts with all of this table's variables.
    pub fn is_prefix_of(&self, other: &VarTable) -> bool {
        other.names.starts_with(&self.names)
    }
}
