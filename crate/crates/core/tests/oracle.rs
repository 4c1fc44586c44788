mod support;

use caloop::{inverse8, left_divide8, mul4, mul8, pow8, project, Elem4, Elem8, Int};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracle::{self, C8};

fn to_elem(c: &C8) -> Elem8 {
    Elem8::new(c.map(Int::from))
}

fn from_elem(e: &Elem8) -> C8 {
    e.coords.clone().map(|v| v.to_i128().expect("fits"))
}

fn random(rng: &mut ChaCha8Rng, k: i128) -> C8 {
    std::array::from_fn(|_| rng.gen_range(-k..=k))
}

#[test]
fn product_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [3, 50, 10_000] {
        for _ in 0..2000 {
            let (a, b) = (random(&mut rng, k), random(&mut rng, k));
            assert_eq!(from_elem(&mul8(&to_elem(&a), &to_elem(&b))), oracle::mul(&a, &b), "{a:?} {b:?}");
        }
    }
}

#[test]
fn division_and_inverse_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..2000 {
        let (a, c) = (random(&mut rng, 100), random(&mut rng, 100));
        assert_eq!(from_elem(&left_divide8(&to_elem(&a), &to_elem(&c))), oracle::ldiv(&a, &c));
        assert_eq!(from_elem(&inverse8(&to_elem(&a))), oracle::inv(&a));
    }
}

#[test]
fn class_two_product_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..2000 {
        let (a, b) = (random(&mut rng, 1000), random(&mut rng, 1000));
        let a4 = [a[0], a[1], a[2], a[3]];
        let b4 = [b[0], b[1], b[2], b[3]];
        let got = mul4(&Elem4::new(a4.map(Int::from)), &Elem4::new(b4.map(Int::from)));
        assert_eq!(got.coords.clone().map(|v| v.to_i128().unwrap()), oracle::mul4(&a4, &b4));
        // the projection forgets v1..v4
        assert_eq!(project(&to_elem(&a)).coords.clone().map(|v| v.to_i128().unwrap()), a4);
    }
}

#[test]
fn powers_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let a = random(&mut rng, 5);
        for n in -12i128..=12 {
            let expect = oracle::pow_iterated(&a, n);
            assert_eq!(oracle::pow(&a, n), expect);
            assert_eq!(from_elem(&pow8(&to_elem(&a), &Int::from(n))), expect);
        }
    }
}
