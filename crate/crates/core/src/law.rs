//! The coordinate product formulas of the two free loops.
//!
//! A canonical element `(x^a1 y^a2 . u1^a3 u2^a4) v1^a5 v2^a6 v3^a7 v4^a8`
//! is stored as its exponent vector. The product of two such vectors is, in
//! every coordinate, `a_i + b_i` plus a correction that only depends on
//! coordinates of lower "weight": coordinates 3 and 4 are corrected by
//! polynomials in coordinates 1 and 2, and coordinates 5..8 by polynomials in
//! coordinates 1..4. [`left_quotient`] relies on exactly that triangular
//! shape.

use crate::arith::ExpRing;

/// Exponent vector of an element of the class-3 loop.
pub type Coords<R> = [R; 8];

/// Exponent vector of an element of the class-2 loop.
pub type Coords4<R> = [R; 4];

/// A product law on exponent vectors.
///
/// Implementations must keep the triangular shape described in the module
/// documentation, otherwise [`left_quotient`] does not invert them.
pub trait ProductLaw: Send + Sync {
    fn product<R: ExpRing>(&self, a: &Coords<R>, b: &Coords<R>) -> Coords<R>;
}

/// The multiplication of the free commutative automorphic loop of class 3 on
/// two generators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FreeLaw;

impl ProductLaw for FreeLaw {
    fn product<R: ExpRing>(&self, a: &Coords<R>, b: &Coords<R>) -> Coords<R> {
        free_product(a, b)
    }
}

pub fn zero_coords<R: ExpRing>() -> Coords<R> {
    std::array::from_fn(|_| R::zero())
}

/// Product of exponent vectors in the class-3 free loop.
pub fn free_product<R: ExpRing>(a: &Coords<R>, b: &Coords<R>) -> Coords<R> {
    let [a1, a2, a3, a4, a5, a6, a7, a8] = a;
    let [b1, b2, b3, b4, b5, b6, b7, b8] = b;
    let two = R::from_i64(2);

    let s1 = a1.clone() + b1;
    let s2 = a2.clone() + b2;
    let s3 = a3.clone() + b3;
    let s4 = a4.clone() + b4;
    let p1 = a1.clone() * b1;
    let p2 = a2.clone() * b2;
    // a1 b2 + a2 b1
    let cross = a1.clone() * b2 + a2.clone() * b1;

    let (al_a1, al_b1, al_a2, al_b2) = (a1.alpha(), b1.alpha(), a2.alpha(), b2.alpha());
    let (be_a1, be_b1, be_a2, be_b2) = (a1.beta(), b1.beta(), a2.beta(), b2.beta());

    let c3 = s3.clone() - p1.clone() * &s2;
    let c4 = s4.clone() + p2.clone() * &s1;

    let c5 = a5.clone()
        + b5
        + s2.clone() * &(b1.clone() * &al_a1 + a1.clone() * &al_b1)
        + a2.clone() * &(a1.clone() * &be_b1 + b1.clone() * b1 * &be_a1)
        + b2.clone() * &(b1.clone() * &be_a1 + a1.clone() * a1 * &be_b1)
        - p1.clone() * &s3;

    // a1 b1^2 + b1 a1^2 = a1 b1 (a1 + b1)
    let c6 = a6.clone()
        + b6
        + two.clone() * &p1 * &p2 * &s1
        + s2.clone() * &(a1.clone() * &be_b1 + b1.clone() * &be_a1)
        + (be_a2.clone() + &be_b2) * &p1 * &s1
        - p2.clone() * &s1.alpha()
        - p1.clone() * &s4
        - s3.clone() * &cross;

    let c7 = a7.clone() + b7
        - two * &p1 * &p2 * &s2
        - s1.clone() * &(a2.clone() * &be_b2 + b2.clone() * &be_a2)
        - (be_a1 + &be_b1) * &p2 * &s2
        + p1 * &s2.alpha()
        - p2.clone() * &s3
        - s4.clone() * &cross;

    let c8 = a8.clone() + b8
        - s1.clone() * &(a2.clone() * &al_b2 + b2.clone() * &al_a2)
        - a1.clone() * &(a2.clone() * &be_b2 + b2.clone() * b2 * &be_a2)
        - b1.clone() * &(b2.clone() * &be_a2 + a2.clone() * a2 * &be_b2)
        - p2 * &s4;

    [s1, s2, c3, c4, c5, c6, c7, c8]
}

/// Product of exponent vectors in the class-2 free loop on `x, y, u1, u2`.
pub fn f2_product<R: ExpRing>(a: &Coords4<R>, b: &Coords4<R>) -> Coords4<R> {
    let [a1, a2, a3, a4] = a;
    let [b1, b2, b3, b4] = b;
    let s1 = a1.clone() + b1;
    let s2 = a2.clone() + b2;
    let c3 = a3.clone() + b3 - a1.clone() * b1 * &s2;
    let c4 = a4.clone() + b4 + a2.clone() * b2 * &s1;
    [s1, s2, c3, c4]
}

/// The unique `b` with `law.product(a, b) == c`, by back-substitution over
/// the three triangular layers of the law.
pub fn left_quotient<R: ExpRing, L: ProductLaw + ?Sized>(
    law: &L,
    a: &Coords<R>,
    c: &Coords<R>,
) -> Coords<R> {
    let mut b = zero_coords::<R>();
    b[0] = c[0].clone() - &a[0];
    b[1] = c[1].clone() - &a[1];
    // With b3..b8 = 0, coordinate i of the product is a_i + correction(b1, b2).
    let partial = law.product(a, &b);
    b[2] = c[2].clone() - &partial[2];
    b[3] = c[3].clone() - &partial[3];
    let partial = law.product(a, &b);
    for i in 4..8 {
        b[i] = c[i].clone() - &partial[i];
    }
    b
}
