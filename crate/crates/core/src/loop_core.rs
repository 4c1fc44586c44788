//! The concrete loops `F2(x,y)` on `Z^4` and `F3(x,y)` on `Z^8`.

use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::{ExpRing, Int};
use crate::law::{self, Coords, Coords4, FreeLaw, ProductLaw};

/// A commutative loop presented by multiplication and left division.
///
/// Calculus on top of this trait (associators, inner mappings) lives in
/// [`crate::calculus::Calculus`]. The trait is object safe so that identity
/// builders can be shared between loops.
pub trait Loop {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The unique `b` with `a * b == c`.
    fn left_div(&self, a: &Self::Elem, c: &Self::Elem) -> Self::Elem;

    fn inverse(&self, a: &Self::Elem) -> Self::Elem {
        self.left_div(a, &self.identity())
    }

    /// `n`-fold product by iterated multiplication; negative `n` goes
    /// through the inverse.
    fn pow(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }
}

/// `Z^8` (over any exponent ring) with multiplication given by a product law.
pub struct LawLoop<R, L = FreeLaw> {
    law: L,
    _ring: PhantomData<fn() -> R>,
}

impl<R, L: Default> Default for LawLoop<R, L> {
    fn default() -> Self {
        Self::new(L::default())
    }
}

impl<R, L> LawLoop<R, L> {
    pub fn new(law: L) -> Self {
        Self { law, _ring: PhantomData }
    }

    pub fn law(&self) -> &L {
        &self.law
    }
}

impl<R: ExpRing, L: ProductLaw> Loop for LawLoop<R, L> {
    type Elem = Coords<R>;

    fn identity(&self) -> Coords<R> {
        law::zero_coords()
    }

    fn mul(&self, a: &Coords<R>, b: &Coords<R>) -> Coords<R> {
        self.law.product(a, b)
    }

    fn left_div(&self, a: &Coords<R>, c: &Coords<R>) -> Coords<R> {
        law::left_quotient(&self.law, a, c)
    }
}

/// The free loop with exact integer exponents.
pub type FreeLoop = LawLoop<Int, FreeLaw>;

/// An element of `F3(x,y)`: exponents of `x, y, u1, u2, v1, v2, v3, v4` in
/// the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elem8 {
    pub coords: [Int; 8],
}

/// An element of `F2(x,y)`: exponents of `x, y, u1, u2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elem4 {
    pub coords: [Int; 4],
}

impl Elem8 {
    pub fn new(coords: [Int; 8]) -> Self {
        Self { coords }
    }

    pub fn from_i64s(c: [i64; 8]) -> Self {
        Self { coords: c.map(Int::from) }
    }

    /// The basis vector `e_i`, `i` in `1..=8`.
    pub fn basis(i: usize) -> Self {
        assert!((1..=8).contains(&i), "basis index {i} out of range");
        let mut coords: [Int; 8] = std::array::from_fn(|_| <Int as Zero>::zero());
        coords[i - 1] = <Int as One>::one();
        Self { coords }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl Elem4 {
    pub fn new(coords: [Int; 4]) -> Self {
        Self { coords }
    }

    pub fn from_i64s(c: [i64; 4]) -> Self {
        Self { coords: c.map(Int::from) }
    }
}

impl From<Coords<Int>> for Elem8 {
    fn from(coords: Coords<Int>) -> Self {
        Self { coords }
    }
}

pub fn identity8() -> Elem8 {
    Elem8 { coords: law::zero_coords() }
}

pub fn mul8(a: &Elem8, b: &Elem8) -> Elem8 {
    Elem8 { coords: law::free_product(&a.coords, &b.coords) }
}

/// The unique `b` with `mul8(a, b) == c`.
pub fn left_divide8(a: &Elem8, c: &Elem8) -> Elem8 {
    Elem8 { coords: law::left_quotient(&FreeLaw, &a.coords, &c.coords) }
}

pub fn inverse8(a: &Elem8) -> Elem8 {
    left_divide8(a, &identity8())
}

/// `a^n` by repeated squaring. Powers of a single element associate
/// (automorphic loops are power-associative), so this agrees with the
/// iterated product [`Loop::pow`], which the tests compare it against.
pub fn pow8(a: &Elem8, n: &Int) -> Elem8 {
    let mut sq = if n.is_negative() { inverse8(a) } else { a.clone() };
    let mut acc = identity8();
    let k = n.magnitude();
    for i in 0..k.bits() {
        if k.bit(i) {
            acc = mul8(&acc, &sq);
        }
        if i + 1 < k.bits() {
            sq = mul8(&sq, &sq);
        }
    }
    acc
}

pub fn mul4(a: &Elem4, b: &Elem4) -> Elem4 {
    Elem4 { coords: law::f2_product(&a.coords, &b.coords) }
}

/// Truncation to the first four exponents: a homomorphism onto `F2(x,y)`.
pub fn project(a: &Elem8) -> Elem4 {
    Elem4 { coords: std::array::from_fn(|i| a.coords[i].clone()) }
}

/// Project an exponent vector over any ring.
pub fn project_coords<R: ExpRing>(a: &Coords<R>) -> Coords4<R> {
    std::array::from_fn(|i| a[i].clone())
}

impl fmt::Display for Elem8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_canonical(self))
    }
}

/// Integers that fit in 64 bits are written as JSON numbers, all others as
/// decimal strings.
pub(crate) struct JsonInt<'a>(pub &'a Int);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int::from(v))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int::from(v))
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.trim().parse::<BigInt>().map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

struct DeInt(Int);

impl<'de> Deserialize<'de> for DeInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor).map(DeInt)
    }
}

fn serialize_ints<S: Serializer>(ints: &[Int], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(ints.len()))?;
    for v in ints {
        seq.serialize_element(&JsonInt(v))?;
    }
    seq.end()
}

fn deserialize_ints<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[Int; N], D::Error> {
    struct Seq<const N: usize>;
    impl<'de, const N: usize> Visitor<'de> for Seq<N> {
        type Value = [Int; N];
        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "exactly {N} integers")
        }
        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<[Int; N], A::Error> {
            let mut out = Vec::with_capacity(N);
            while let Some(DeInt(v)) = seq.next_element()? {
                out.push(v);
            }
            let len = out.len();
            out.try_into().map_err(|_| de::Error::invalid_length(len, &self))
        }
    }
    d.deserialize_seq(Seq::<N>)
}

#[derive(Serialize)]
struct CoordsOut<'a> {
    #[serde(serialize_with = "serialize_ints")]
    coords: &'a [Int],
}

impl Serialize for Elem8 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CoordsOut { coords: &self.coords }.serialize(s)
    }
}

impl Serialize for Elem4 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CoordsOut { coords: &self.coords }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Elem8 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct In {
            #[serde(deserialize_with = "deserialize_ints")]
            coords: [Int; 8],
        }
        In::deserialize(d).map(|i| Elem8 { coords: i.coords })
    }
}

impl<'de> Deserialize<'de> for Elem4 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct In {
            #[serde(deserialize_with = "deserialize_ints")]
            coords: [Int; 4],
        }
        In::deserialize(d).map(|i| Elem4 { coords: i.coords })
    }
}
