//! Exact integer, rational and modular arithmetic.
//!
//! Exponents of canonical words are unbounded integers ([`Int`]); the
//! symbolic engine needs rationals ([`Rat`]) because `alpha` of a polynomial
//! carries a factor of 1/3. [`ExpRing`] abstracts over every coefficient
//! domain the multiplication formula is evaluated in.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Exact rational, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be positive")]
    ZeroModulus,
}

/// `(n^3 - n) / 3`. The division is exact for every integer `n`.
pub fn alpha(n: &Int) -> Int {
    let cube_minus = n * n * n - n;
    let (q, r) = cube_minus.div_rem(&Int::from(3));
    assert!(Zero::is_zero(&r), "3 does not divide n^3 - n for n = {n}");
    q
}

/// `n^2 - n`.
pub fn beta(n: &Int) -> Int {
    n * n - n
}

/// Multiplicative inverse of a rational, or an error for zero.
pub fn rat_inverse(r: &Rat) -> Result<Rat, ArithError> {
    if r.is_zero() {
        Err(ArithError::DivisionByZero)
    } else {
        Ok(r.recip())
    }
}

/// Exact quotient `a / b` of rationals.
pub fn rat_div(a: &Rat, b: &Rat) -> Result<Rat, ArithError> {
    Ok(a * rat_inverse(b)?)
}

/// Residue class modulo a positive modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModInt {
    residue: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: i64, modulus: u64) -> Result<Self, ArithError> {
        if modulus == 0 {
            return Err(ArithError::ZeroModulus);
        }
        let residue = (value as i128).rem_euclid(modulus as i128) as u64;
        Ok(Self { residue, modulus })
    }

    pub fn from_int(value: &Int, modulus: u64) -> Result<Self, ArithError> {
        if modulus == 0 {
            return Err(ArithError::ZeroModulus);
        }
        let m = Int::from(modulus);
        let r = value.mod_floor(&m);
        let residue = r.try_into().expect("residue fits in u64");
        Ok(Self { residue, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(ArithError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let r = (self.residue as u128 + other.residue as u128) % self.modulus as u128;
        Ok(Self { residue: r as u64, modulus: self.modulus })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let r = (self.residue as u128 * other.residue as u128) % self.modulus as u128;
        Ok(Self { residue: r as u64, modulus: self.modulus })
    }

    pub fn neg(&self) -> Self {
        let r = (self.modulus - self.residue) % self.modulus;
        Self { residue: r, modulus: self.modulus }
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// A commutative ring in which the exponent polynomials of the product
/// formula can be evaluated.
///
/// `alpha` must agree with `(n^3 - n)/3` wherever the ring embeds the
/// integers; for fixed-width integers it is only exact while no overflow
/// occurs.
pub trait ExpRing:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn alpha(&self) -> Self;

    fn beta(&self) -> Self {
        self.clone() * self - self
    }

    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl ExpRing for Int {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(n: i64) -> Self {
        Int::from(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn alpha(&self) -> Self {
        alpha(self)
    }
    fn beta(&self) -> Self {
        beta(self)
    }
    fn one() -> Self {
        One::one()
    }
}

macro_rules! machine_ring {
    ($t:ty) => {
        impl ExpRing for $t {
            fn zero() -> Self {
                0
            }
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn is_zero(&self) -> bool {
                *self == 0
            }
            fn alpha(&self) -> Self {
                let n = *self;
                let v = n * n * n - n;
                debug_assert_eq!(v % 3, 0);
                v / 3
            }
        }
    };
}

machine_ring!(i64);
machine_ring!(i128);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&int(0)), int(0));
        assert_eq!(alpha(&int(2)), int(2));
        assert_eq!(alpha(&int(3)), int(8));
        assert_eq!(alpha(&int(-3)), int(-8));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&int(0)), int(0));
        assert_eq!(beta(&int(1)), int(0));
        assert_eq!(beta(&int(-2)), int(6));
    }

    #[test]
    fn alpha_recurrences_on_range() {
        for n in -1000i64..1000 {
            let big = int(n);
            assert_eq!(alpha(&big) * 3, int(n * n * n - n));
            assert_eq!(alpha(&int(n + 1)), alpha(&big) + int(n * n + n));
            assert_eq!(beta(&int(n + 1)), beta(&big) + int(2 * n));
            assert_eq!(alpha(&int(-n)), -alpha(&big));
            assert_eq!(beta(&int(-n)), int(2 * n * n) - beta(&big));
        }
    }

    #[test]
    fn alpha_huge_argument() {
        let n: Int = "123456789012345678901234567890".parse().unwrap();
        let a = alpha(&n);
        assert_eq!(a * 3, &n * &n * &n - &n);
    }

    #[test]
    fn machine_rings_agree_with_bigint() {
        for n in -300i64..300 {
            assert_eq!(Int::from(ExpRing::alpha(&n)), alpha(&int(n)));
            assert_eq!(Int::from(ExpRing::beta(&(n as i128))), beta(&int(n)));
        }
    }

    #[test]
    fn rational_examples() {
        let third = Rat::new(int(1), int(3));
        let two_thirds = Rat::new(int(2), int(3));
        assert_eq!(third + two_thirds, Rat::from_integer(int(1)));
        let half = Rat::new(int(2), int(4));
        assert_eq!(half.numer(), &int(1));
        assert_eq!(half.denom(), &int(2));
        let neg = Rat::new(int(3), int(-6));
        assert_eq!(neg.denom(), &int(2));
        assert_eq!(neg.numer(), &int(-1));
        assert_eq!(rat_inverse(&Rat::zero()), Err(ArithError::DivisionByZero));
        assert_eq!(rat_inverse(&neg).unwrap(), Rat::from_integer(int(-2)));
        assert!(rat_div(&half, &Rat::zero()).is_err());
    }

    #[test]
    fn modint_examples() {
        let a = ModInt::new(3, 5).unwrap();
        let b = ModInt::new(4, 5).unwrap();
        assert_eq!(a.add(&b).unwrap(), ModInt::new(2, 5).unwrap());
        let c = ModInt::new(2, 5).unwrap();
        assert_eq!(c.mul(&a).unwrap(), ModInt::new(1, 5).unwrap());
        let d = ModInt::new(1, 7).unwrap();
        assert_eq!(a.add(&d), Err(ArithError::ModulusMismatch(5, 7)));
        assert_eq!(ModInt::new(-1, 5).unwrap().residue(), 4);
        assert_eq!(a.neg().residue(), 2);
        assert_eq!(ModInt::new(0, 5).unwrap().neg().residue(), 0);
        assert_eq!(ModInt::new(1, 0), Err(ArithError::ZeroModulus));
        assert_eq!(ModInt::from_int(&int(-12), 5).unwrap().residue(), 3);
    }

    proptest! {
        #[test]
        fn rat_agrees_with_int_embedding(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let ra = Rat::from_integer(int(a));
            let rb = Rat::from_integer(int(b));
            prop_assert_eq!(&ra + &rb, Rat::from_integer(int(a + b)));
            prop_assert_eq!(&ra * &rb, Rat::from_integer(int(a * b)));
            prop_assert_eq!(-ra, Rat::from_integer(int(-a)));
        }

        #[test]
        fn modint_agrees_with_integer_arithmetic(a in -1000i64..1000, b in -1000i64..1000, m in 1u64..50) {
            let ma = ModInt::new(a, m).unwrap();
            let mb = ModInt::new(b, m).unwrap();
            prop_assert_eq!(ma.add(&mb).unwrap(), ModInt::new(a + b, m).unwrap());
            prop_assert_eq!(ma.mul(&mb).unwrap(), ModInt::new(a * b, m).unwrap());
            prop_assert_eq!(ma.neg(), ModInt::new(-a, m).unwrap());
        }
    }
}
