//! A second, deliberately plain transcription of the coordinate product on
//! `i128`, kept apart from the library so the two can be compared.
#![allow(dead_code)]

pub type C8 = [i128; 8];

pub fn alpha(n: i128) -> i128 {
    assert_eq!((n * n * n - n) % 3, 0);
    (n * n * n - n) / 3
}

pub fn beta(n: i128) -> i128 {
    n * n - n
}

pub fn mul(a: &C8, b: &C8) -> C8 {
    let [a1, a2, a3, a4, a5, a6, a7, a8] = *a;
    let [b1, b2, b3, b4, b5, b6, b7, b8] = *b;
    let (al, be) = (alpha, beta);
    [
        a1 + b1,
        a2 + b2,
        a3 + b3 - a1 * b1 * (a2 + b2),
        a4 + b4 + a2 * b2 * (a1 + b1),
        a5 + b5 + (a2 + b2) * (b1 * al(a1) + a1 * al(b1))
            + a2 * (a1 * be(b1) + b1 * b1 * be(a1))
            + b2 * (b1 * be(a1) + a1 * a1 * be(b1))
            - a1 * b1 * (a3 + b3),
        a6 + b6 + 2 * a1 * a2 * b1 * b2 * (a1 + b1)
            + (a2 + b2) * (a1 * be(b1) + b1 * be(a1))
            + (be(a2) + be(b2)) * (a1 * b1 * b1 + b1 * a1 * a1)
            - a2 * b2 * al(a1 + b1)
            - a1 * b1 * (a4 + b4)
            - (a3 + b3) * (a1 * b2 + a2 * b1),
        a7 + b7 - 2 * a1 * a2 * b1 * b2 * (a2 + b2)
            - (a1 + b1) * (a2 * be(b2) + b2 * be(a2))
            - (be(a1) + be(b1)) * (a2 * b2 * b2 + b2 * a2 * a2)
            + a1 * b1 * al(a2 + b2)
            - a2 * b2 * (a3 + b3)
            - (a4 + b4) * (a1 * b2 + a2 * b1),
        a8 + b8 - (a1 + b1) * (a2 * al(b2) + b2 * al(a2))
            - a1 * (a2 * be(b2) + b2 * b2 * be(a2))
            - b1 * (b2 * be(a2) + a2 * a2 * be(b2))
            - a2 * b2 * (a4 + b4),
    ]
}

pub fn mul4(a: &[i128; 4], b: &[i128; 4]) -> [i128; 4] {
    let [a1, a2, a3, a4] = *a;
    let [b1, b2, b3, b4] = *b;
    [a1 + b1, a2 + b2, a3 + b3 - a1 * b1 * (a2 + b2), a4 + b4 + a2 * b2 * (a1 + b1)]
}

/// Left division by search-free back substitution, checked by multiplying.
pub fn ldiv(a: &C8, c: &C8) -> C8 {
    let mut b = [0i128; 8];
    b[0] = c[0] - a[0];
    b[1] = c[1] - a[1];
    let p = mul(a, &b);
    b[2] = c[2] - p[2];
    b[3] = c[3] - p[3];
    let p = mul(a, &b);
    for i in 4..8 {
        b[i] = c[i] - p[i];
    }
    assert_eq!(&mul(a, &b), c);
    b
}

pub fn inv(a: &C8) -> C8 {
    ldiv(a, &[0; 8])
}

pub fn assoc(a: &C8, b: &C8, c: &C8) -> C8 {
    ldiv(&mul(a, &mul(b, c)), &mul(&mul(a, b), c))
}

pub fn inner_l(a: &C8, b: &C8, c: &C8) -> C8 {
    ldiv(&mul(b, a), &mul(b, &mul(a, c)))
}

/// Square-and-multiply power; valid because the loop is power-associative.
pub fn pow(a: &C8, n: i128) -> C8 {
    let base = if n < 0 { inv(a) } else { *a };
    let mut k = n.unsigned_abs();
    let (mut acc, mut sq) = ([0i128; 8], base);
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &sq);
        }
        sq = mul(&sq, &sq);
        k >>= 1;
    }
    acc
}

pub fn pow_iterated(a: &C8, n: i128) -> C8 {
    let base = if n < 0 { inv(a) } else { *a };
    (0..n.unsigned_abs()).fold([0; 8], |acc, _| mul(&acc, &base))
}

pub fn product(factors: &[C8]) -> C8 {
    factors.iter().fold([0; 8], |acc, f| mul(&acc, f))
}

pub fn basis(i: usize) -> C8 {
    let mut c = [0; 8];
    c[i - 1] = 1;
    c
}
