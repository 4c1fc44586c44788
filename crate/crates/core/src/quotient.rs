//! Finite quotients `(Z/m)^8` of the free loop.
//!
//! Reducing coordinates mod `m` is a loop homomorphism exactly when `alpha`
//! is periodic mod `m`, that is when `gcd(m, 3) = 1`. Elements of a quotient
//! of order `m^8` are numbered lexicographically, coordinate 1 being the most
//! significant digit, so the identity has index 0.

use std::fmt;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{alpha, Int};
use crate::law::{free_product, left_quotient, Coords, FreeLaw};
use crate::loop_core::{Elem8, Loop};

/// Larger moduli are refused so that products of lifts stay inside `i128`.
pub const MAX_MODULUS: u64 = 65535;

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("modulus must be at least 2, got {0}")]
    TooSmall(Int),
    #[error(
        "modulus {0} is divisible by 3: alpha(n) = (n^3 - n)/3 is not periodic mod 3 \
         (alpha(3) = 8 is not congruent to alpha(0) = 0 mod 3), so reducing coordinates \
         does not give a well-defined loop"
    )]
    DivisibleByThree(Int),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    TooLarge(Int),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{what} for m = {modulus} needs {work} operations on a loop of order {order}; the budget allows {limit}")]
    BudgetExceeded { what: &'static str, modulus: u64, order: u128, work: String, limit: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Validates `m` and returns the quotient loop `(Z/m)^8`.
pub fn make_quotient(m: &Int) -> Result<Quotient, QuotientError> {
    if *m < Int::from(2) {
        return Err(QuotientError::TooSmall(m.clone()));
    }
    if m.is_multiple_of(&Int::from(3)) {
        return Err(QuotientError::DivisibleByThree(m.clone()));
    }
    match m.to_u64() {
        Some(v) if v <= MAX_MODULUS => Ok(Quotient { m: v }),
        _ => Err(QuotientError::TooLarge(m.clone())),
    }
}

/// Whether `alpha(n + m) = alpha(n) mod m` for every `n` in `0..m`, checked
/// directly. Holds exactly for `gcd(m, 3) = 1`.
pub fn alpha_is_periodic(m: u64) -> bool {
    let mm = Int::from(m);
    (0..m).all(|n| {
        let n = Int::from(n);
        (alpha(&(&n + &mm)) - alpha(&n)).is_multiple_of(&mm)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModElem8 {
    pub modulus: u64,
    pub coords: [u64; 8],
}

impl ModElem8 {
    pub fn identity(modulus: u64) -> Self {
        Self { modulus, coords: [0; 8] }
    }

    /// Reduces an integer element.
    pub fn reduce(e: &Elem8, modulus: u64) -> Self {
        let m = Int::from(modulus);
        let coords = std::array::from_fn(|i| e.coords[i].mod_floor(&m).to_u64().unwrap());
        Self { modulus, coords }
    }

    /// The representative with coordinates in `[0, m)`.
    pub fn lift(&self) -> Elem8 {
        Elem8::new(self.coords.map(Int::from))
    }

    fn lift_i128(&self) -> Coords<i128> {
        self.coords.map(|c| c as i128)
    }

    fn from_i128(modulus: u64, c: Coords<i128>) -> Self {
        Self { modulus, coords: c.map(|v| v.rem_euclid(modulus as i128) as u64) }
    }

    fn check(&self, other: &Self) -> Result<(), QuotientError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(QuotientError::ModulusMismatch(self.modulus, other.modulus))
        }
    }
}

impl fmt::Display for ModElem8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.coords, self.modulus)
    }
}

pub fn mul_mod(a: &ModElem8, b: &ModElem8) -> Result<ModElem8, QuotientError> {
    a.check(b)?;
    Ok(ModElem8::from_i128(a.modulus, free_product(&a.lift_i128(), &b.lift_i128())))
}

pub fn left_div_mod(a: &ModElem8, c: &ModElem8) -> Result<ModElem8, QuotientError> {
    a.check(c)?;
    Ok(ModElem8::from_i128(a.modulus, left_quotient(&FreeLaw, &a.lift_i128(), &c.lift_i128())))
}

/// Handle on `(Z/m)^8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quotient {
    m: u64,
}

impl Quotient {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn order(&self) -> u128 {
        (self.m as u128).pow(8)
    }

    pub fn reduce(&self, e: &Elem8) -> ModElem8 {
        ModElem8::reduce(e, self.m)
    }

    pub fn index(&self, e: &ModElem8) -> u128 {
        e.coords.iter().fold(0u128, |acc, &c| acc * self.m as u128 + c as u128)
    }

    pub fn element(&self, mut index: u128) -> ModElem8 {
        let m = self.m as u128;
        let mut coords = [0u64; 8];
        for c in coords.iter_mut().rev() {
            *c = (index % m) as u64;
            index /= m;
        }
        ModElem8 { modulus: self.m, coords }
    }

    /// Builds the full multiplication table; refuses orders above the budget.
    pub fn table(&self, budget: &Budget) -> Result<CayleyTable, QuotientError> {
        let order = self.order();
        if order > budget.max_table_order as u128 {
            return Err(QuotientError::BudgetExceeded {
                what: "the Cayley table",
                modulus: self.m,
                order,
                work: format!("{}", order * order),
                limit: format!("order <= {}", budget.max_table_order),
            });
        }
        Ok(CayleyTable::build(*self))
    }
}

impl Loop for Quotient {
    type Elem = ModElem8;

    fn identity(&self) -> ModElem8 {
        ModElem8::identity(self.m)
    }

    fn mul(&self, a: &ModElem8, b: &ModElem8) -> ModElem8 {
        mul_mod(a, b).expect("elements of this quotient")
    }

    fn left_div(&self, a: &ModElem8, c: &ModElem8) -> ModElem8 {
        left_div_mod(a, c).expect("elements of this quotient")
    }
}

/// Row-major multiplication table on lexicographic indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    modulus: u64,
    order: usize,
    entries: Vec<u32>,
}

impl CayleyTable {
    fn build(q: Quotient) -> Self {
        let order = q.order() as usize;
        let elems: Vec<ModElem8> = (0..order).map(|i| q.element(i as u128)).collect();
        let mut entries = vec![0u32; order * order];
        entries.par_chunks_mut(order).enumerate().for_each(|(a, row)| {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = q.index(&q.mul(&elems[a], &elems[b])) as u32;
            }
        });
        Self { modulus: q.m, order, entries }
    }

    /// Wraps an arbitrary square table, e.g. one read back from a file.
    /// Returns `None` unless `entries` has `n * n` values below `n`.
    pub fn from_entries(modulus: u64, entries: Vec<u32>) -> Option<Self> {
        let order = (entries.len() as f64).sqrt().round() as usize;
        (order * order == entries.len() && entries.iter().all(|&v| (v as usize) < order))
            .then_some(Self { modulus, order, entries })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.order + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.entries[a * self.order..(a + 1) * self.order]
    }

    /// `d[a * n + c]` is the `b` with `ab = c`. Only meaningful for a Latin square.
    pub fn left_division(&self) -> Vec<u32> {
        let n = self.order;
        let mut d = vec![0u32; n * n];
        d.par_chunks_mut(n).enumerate().for_each(|(a, row)| {
            for b in 0..n {
                row[self.get(a, b)] = b as u32;
            }
        });
        d
    }

    pub fn write<W: Write>(&self, format: TableFormat, mut w: W) -> io::Result<()> {
        match format {
            TableFormat::Csv => {
                writeln!(w, "caloop-table m={} order={} ordering=lex", self.modulus, self.order)?;
                let mut line = String::new();
                for a in 0..self.order {
                    line.clear();
                    for (i, v) in self.row(a).iter().enumerate() {
                        if i > 0 {
                            line.push(',');
                        }
                        line.push_str(&v.to_string());
                    }
                    line.push('\n');
                    w.write_all(line.as_bytes())?;
                }
            }
            TableFormat::Bin => {
                w.write_all(b"CLT1")?;
                w.write_all(&(self.modulus as u32).to_le_bytes())?;
                for v in &self.entries {
                    w.write_all(&v.to_le_bytes())?;
                }
            }
        }
        w.flush()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Bin,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "bin" => Ok(Self::Bin),
            _ => Err(format!("unknown table format `{s}` (expected csv or bin)")),
        }
    }
}

/// Writes the Cayley table of `(Z/m)^8` to `path`.
pub fn export_table(m: &Int, format: TableFormat, path: &Path, budget: &Budget) -> Result<CayleyTable, QuotientError> {
    let table = make_quotient(m)?.table(budget)?;
    let file = std::fs::File::create(path)?;
    table.write(format, io::BufWriter::new(file))?;
    Ok(table)
}

/// Size limits for the enumerative checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_table_order: u64,
    /// Orders above 256 are never accepted for the full check.
    pub max_full_order: u64,
    pub max_sampled_modulus: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_table_order: 256, max_full_order: 256, max_sampled_modulus: 5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckLevel {
    Axioms,
    AutomorphicSampled,
    AutomorphicFull,
}

impl CheckLevel {
    pub fn name(self) -> &'static str {
        match self {
            Self::Axioms => "axioms",
            Self::AutomorphicSampled => "automorphic-sampled",
            Self::AutomorphicFull => "automorphic-full",
        }
    }
}

impl FromStr for CheckLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Self::Axioms, Self::AutomorphicSampled, Self::AutomorphicFull]
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown level `{s}` (expected axioms, automorphic-sampled or automorphic-full)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub modulus: u64,
    pub order: u128,
    pub level: CheckLevel,
    /// Number of equations evaluated.
    pub checked: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub millis: u64,
}

/// Brute-force verification of the loop axioms or of the automorphic
/// property in `(Z/m)^8`.
pub fn exhaustive_check(
    m: &Int,
    level: CheckLevel,
    budget: &Budget,
    trials: u64,
    seed: u64,
) -> Result<QuotientReport, QuotientError> {
    let q = make_quotient(m)?;
    let start = Instant::now();
    let order = q.order();
    let (checked, counterexample) = match level {
        CheckLevel::Axioms => {
            let t = q.table(budget)?;
            let n = t.order() as u64;
            (3 * n * n, axioms_counterexample(&t))
        }
        CheckLevel::AutomorphicFull => {
            if order > budget.max_full_order.min(256) as u128 {
                return Err(QuotientError::BudgetExceeded {
                    what: "the full automorphic check",
                    modulus: q.m,
                    order,
                    work: format!("{}", order.saturating_pow(4)),
                    limit: format!("order <= {}", budget.max_full_order.min(256)),
                });
            }
            let t = q.table(&Budget { max_table_order: 256, ..*budget })?;
            let n = t.order() as u64;
            (n.pow(4), automorphic_counterexample(&t))
        }
        CheckLevel::AutomorphicSampled => {
            if q.m > budget.max_sampled_modulus {
                return Err(QuotientError::BudgetExceeded {
                    what: "the sampled automorphic check",
                    modulus: q.m,
                    order,
                    work: format!("{trials} random quadruples"),
                    limit: format!("m <= {}", budget.max_sampled_modulus),
                });
            }
            (trials, check_automorphic_sampled(q, trials, seed))
        }
    };
    Ok(QuotientReport {
        modulus: q.m,
        order,
        level,
        checked,
        pass: counterexample.is_none(),
        counterexample,
        millis: start.elapsed().as_millis() as u64,
    })
}

pub fn axioms_counterexample(t: &CayleyTable) -> Option<String> {
    let n = t.order();
    (0..n).into_par_iter().find_map_first(|a| {
        if t.get(0, a) != a || t.get(a, 0) != a {
            return Some(format!("identity fails at index {a}"));
        }
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for b in 0..n {
            if t.get(a, b) != t.get(b, a) {
                return Some(format!("{a}*{b} != {b}*{a}"));
            }
            row_seen[t.get(a, b)] = true;
            col_seen[t.get(b, a)] = true;
        }
        if row_seen.contains(&false) {
            return Some(format!("row {a} is not a permutation"));
        }
        if col_seen.contains(&false) {
            return Some(format!("column {a} is not a permutation"));
        }
        None
    })
}

pub fn automorphic_counterexample(t: &CayleyTable) -> Option<String> {
    let n = t.order();
    assert!(n <= 256);
    let tab: Vec<u8> = t.entries.iter().map(|&v| v as u8).collect();
    let div: Vec<u8> = t.left_division().into_iter().map(|v| v as u8).collect();
    let mul = |a: usize, b: usize| tab[a * n + b] as usize;

    (0..n).into_par_iter().find_map_first(|a| {
        let mut l = vec![0u8; n];
        for b in 0..n {
            // L_{a,b}(c) = (ba) \ (b(ac))
            let ba = mul(b, a);
            for (c, lc) in l.iter_mut().enumerate() {
                *lc = div[ba * n + mul(b, mul(a, c))];
            }
            for c in 0..n {
                let lc = l[c] as usize;
                let row = &tab[c * n..(c + 1) * n];
                let lrow = &tab[lc * n..(lc + 1) * n];
                for d in 0..n {
                    if l[row[d] as usize] != lrow[l[d] as usize] {
                        return Some(format!("L_({a},{b}) is not multiplicative at ({c},{d})"));
                    }
                }
            }
        }
        None
    })
}

fn check_automorphic_sampled(q: Quotient, trials: u64, seed: u64) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = || ModElem8 { modulus: q.m, coords: std::array::from_fn(|_| rng.gen_range(0..q.m)) };
    let l_map = |a: &ModElem8, b: &ModElem8, c: &ModElem8| q.left_div(&q.mul(b, a), &q.mul(b, &q.mul(a, c)));
    for _ in 0..trials {
        let (a, b, c, d) = (random(), random(), random(), random());
        let lhs = l_map(&a, &b, &q.mul(&c, &d));
        let rhs = q.mul(&l_map(&a, &b, &c), &l_map(&a, &b, &d));
        if lhs != rhs {
            return Some(format!("L_(a,b) is not multiplicative at a={a}, b={b}, c={c}, d={d}"));
        }
    }
    None
}

/// Indices of elements that associate with everything in every position.
pub fn center_bruteforce(t: &CayleyTable) -> Vec<usize> {
    let n = t.order();
    (0..n)
        .into_par_iter()
        .filter(|&z| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = t.get(a, b);
                    t.get(t.get(z, a), b) == t.get(z, ab)
                        && t.get(t.get(a, z), b) == t.get(a, t.get(z, b))
                        && t.get(ab, z) == t.get(a, t.get(b, z))
                })
            })
        })
        .collect()
}

/// Indices of elements fixed by every `L_{a,b}` and `R_{a,b}`.
pub fn inner_fixed_points(t: &CayleyTable) -> Vec<usize> {
    let n = t.order();
    let d = t.left_division();
    let div = |a: usize, c: usize| d[a * n + c] as usize;
    (0..n)
        .into_par_iter()
        .filter(|&z| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    let l = div(t.get(b, a), t.get(b, t.get(a, z)));
                    let r = div(t.get(a, b), t.get(t.get(z, a), b));
                    l == z && r == z
                })
            })
        })
        .collect()
}
