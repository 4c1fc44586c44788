//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use caloop::arith::ExpRing;
use caloop::calculus::Calculus;
use caloop::law::{free_product, Coords, FreeLaw, ProductLaw};
use caloop::loop_core::LawLoop;
use caloop::parser::{eval_str, format_canonical, parse};
use caloop::quotient::{center_bruteforce, exhaustive_check, make_quotient, Budget, CheckLevel};
use caloop::symbolic::{verify_all, verify_all_in, verify_identity, Polynomial};
use caloop::{alpha, associator, beta, identity8, inverse8, left_divide8, mul8, Elem8, Int, Loop};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(i: usize) -> Elem8 {
    Elem8::basis(i)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = verify_identity("L-automorphism").map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.pass, || format!("residual term counts {:?}", r.residual_term_counts))?;
    ensure(r.residual_term_counts == [0; 8], || "nonzero residual".into())?;
    ensure(r.variables == 32, || format!("{} variables", r.variables))?;
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;

    let out = Command::new(env!("CARGO_BIN_EXE_caloop"))
        .args(["--json", "verify", "--identity", "L-automorphism"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("cli exit {:?}", out.status.code()))?;
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let rep = &doc[0];
    ensure(rep["pass"] == true && rep["variables"] == 32, || format!("cli report {rep}"))?;
    ensure(rep["residual_term_counts"] == serde_json::json!([0, 0, 0, 0, 0, 0, 0, 0]), || "cli residuals".into())?;
    Ok(format!(
        "L_(a,b) is an automorphism: 32 variables, zero residual, max degree {}, max terms {}, {} ms",
        r.max_degree, r.max_terms, elapsed.as_millis()
    ))
}

/// The product formula with one coefficient altered.
struct Perturbed(usize);

impl ProductLaw for Perturbed {
    fn product<R: ExpRing>(&self, a: &Coords<R>, b: &Coords<R>) -> Coords<R> {
        let mut p = free_product(a, b);
        match self.0 {
            // -a1 b1 (a3 + b3) in v1 becomes -2 a1 b1 (a3 + b3)
            0 => p[4] = p[4].clone() - a[0].clone() * &b[0] * &(a[2].clone() + &b[2]),
            // -a2 b2 (a4 + b4) in v4 becomes +a2 b2 (a4 + b4)
            _ => {
                let t = a[1].clone() * &b[1] * &(a[3].clone() + &b[3]);
                p[7] = p[7].clone() + &t + &t;
            }
        }
        p
    }
}

fn criterion_2() -> Outcome {
    let reports = verify_all();
    let failing: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    ensure(failing.is_empty(), || format!("failing: {failing:?}"))?;
    let mut flips = Vec::new();
    for k in 0..2 {
        let mutant: LawLoop<Polynomial, Perturbed> = LawLoop::new(Perturbed(k));
        let flipped: Vec<String> =
            verify_all_in(&mutant).into_iter().filter(|r| !r.pass).map(|r| r.name).collect();
        ensure(!flipped.is_empty(), || format!("mutation {k} survived the whole catalog"))?;
        flips.push(flipped.len());
    }
    Ok(format!(
        "{} identities pass; the two coefficient mutations break {} and {} of them",
        reports.len(),
        flips[0],
        flips[1]
    ))
}

fn criterion_3() -> Outcome {
    let table = [((1, 1, 2), 3), ((1, 2, 2), 4), ((1, 1, 3), 5), ((1, 1, 4), 6), ((2, 2, 3), 7), ((2, 2, 4), 8)];
    for ((a, b, c), want) in table {
        let got = associator(&e(a), &e(b), &e(c));
        ensure(got == e(want), || format!("(e{a},e{b},e{c}) = {got:?}, expected e{want}"))?;
    }
    Ok("all six free relations hold".into())
}

type C = Coords<i128>;

/// Square-and-multiply in the library loop; powers of one element associate.
fn fast_pow(l: &LawLoop<i128, FreeLaw>, a: &C, n: i128) -> C {
    let base = if n < 0 { l.inverse(a) } else { *a };
    let (mut acc, mut sq, mut k) = (l.identity(), base, n.unsigned_abs());
    while k > 0 {
        if k & 1 == 1 {
            acc = l.mul(&acc, &sq);
        }
        sq = l.mul(&sq, &sq);
        k >>= 1;
    }
    acc
}

fn criterion_4() -> Outcome {
    let l: LawLoop<i128, FreeLaw> = LawLoop::default();
    let al = |n: i128| n.alpha();
    let be = |n: i128| ExpRing::beta(&n);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let tuples = 1000;
    let mut checks = 0u64;
    for _ in 0..tuples {
        let mut r = || -> C { std::array::from_fn(|_| rng.gen_range(-4..=4)) };
        let (a, b, c) = (r(), r(), r());
        let t = l.associator(&a, &b, &c);
        let prod = |fs: &[C]| fs.iter().fold(l.identity(), |acc, f| l.mul(&acc, f));
        let p = |x: &C, n: i128| fast_pow(&l, x, n);

        for n in -6i128..=6 {
            // pow here is the library's iterated power
            let an = l.pow(&a, n as i64);
            let bn = l.pow(&b, n as i64);
            let cn = l.pow(&c, n as i64);
            let cases = [
                (l.associator(&an, &b, &c), [&a, &a, &b, &c]),
                (l.associator(&a, &bn, &c), [&b, &b, &a, &c]),
                (l.associator(&a, &b, &cn), [&c, &c, &a, &b]),
            ];
            for (lhs, [s1, s2, o1, o2]) in cases {
                let rhs = prod(&[
                    p(&t, n),
                    p(&l.associator(&t, s1, s2), al(n)),
                    p(&l.associator(&t, s1, o1), be(n)),
                    p(&l.associator(&t, s1, o2), be(n)),
                ]);
                ensure(lhs == rhs, || format!("power formula fails at n={n}, a={a:?}, b={b:?}, c={c:?}"))?;
                checks += 1;
            }
        }

        let tq = |x: &C, y: &C| l.associator(&t, x, y);
        let (taa, tab, tac, tba, tbb, tbc, tca, tcb, tcc) =
            (tq(&a, &a), tq(&a, &b), tq(&a, &c), tq(&b, &a), tq(&b, &b), tq(&b, &c), tq(&c, &a), tq(&c, &b), tq(&c, &c));
        let pa: Vec<C> = (-4..=4).map(|i| p(&a, i)).collect();
        let pb: Vec<C> = (-4..=4).map(|i| p(&b, i)).collect();
        let pc: Vec<C> = (-4..=4).map(|i| p(&c, i)).collect();
        for i in -4i128..=4 {
            for j in -4i128..=4 {
                for k in -4i128..=4 {
                    let lhs = l.associator(&pa[(i + 4) as usize], &pb[(j + 4) as usize], &pc[(k + 4) as usize]);
                    let rhs = prod(&[
                        p(&t, i * j * k),
                        p(&taa, al(i) * j * k),
                        p(&tab, be(i) * j * j * k),
                        p(&tac, be(i) * j * k * k),
                        p(&tba, i * be(j) * k),
                        p(&tbb, i * al(j) * k),
                        p(&tbc, i * be(j) * k * k),
                        p(&tca, i * j * be(k)),
                        p(&tcb, i * j * be(k)),
                        p(&tcc, i * j * al(k)),
                    ]);
                    ensure(lhs == rhs, || format!("triple power formula fails at ({i},{j},{k}), a={a:?}"))?;
                    checks += 1;
                }
            }
        }
    }

    // z2 = z3 = z5 and z4 = z6 = z7, on the generators and on random pairs
    let mut pairs: Vec<(C, C)> = vec![(oracle::basis(1), oracle::basis(2))];
    for _ in 0..200 {
        let mut r = || -> C { std::array::from_fn(|_| rng.gen_range(-6..=6)) };
        pairs.push((r(), r()));
    }
    for (x, y) in &pairs {
        let u1 = l.associator(x, x, y);
        let u2 = l.associator(x, y, y);
        let z2 = l.associator(x, x, &u2);
        let z3 = l.associator(x, y, &u1);
        let z5 = l.associator(y, x, &u1);
        let z4 = l.associator(x, y, &u2);
        let z6 = l.associator(y, x, &u2);
        let z7 = l.associator(y, y, &u1);
        ensure(z2 == z3 && z3 == z5, || format!("z2, z3, z5 differ for x={x:?}, y={y:?}"))?;
        ensure(z4 == z6 && z6 == z7, || format!("z4, z6, z7 differ for x={x:?}, y={y:?}"))?;
    }
    let gen = |a, b, c: usize| associator(&e(a), &e(b), &associator(&e(1), &e(c), &e(2)));
    ensure(gen(1, 1, 2) == e(6) && gen(1, 2, 1) == e(6), || "z2 = z3 = v2 on generators".into())?;
    ensure(gen(2, 2, 1) == e(7) && gen(1, 2, 2) == e(7), || "z4 = z7 = v3 on generators".into())?;
    // alpha and beta themselves, against the oracle
    for n in -6i64..=6 {
        ensure(alpha(&Int::from(n)) == Int::from(oracle::alpha(n as i128)), || format!("alpha({n})"))?;
        ensure(beta(&Int::from(n)) == Int::from(oracle::beta(n as i128)), || format!("beta({n})"))?;
    }
    Ok(format!(
        "{checks} power-formula instances over {tuples} random triples, reduction equalities on {} pairs",
        pairs.len()
    ))
}

fn criterion_5() -> Outcome {
    let m = Int::from(2);
    let budget = Budget::default();
    let axioms = exhaustive_check(&m, CheckLevel::Axioms, &budget, 0, 0).map_err(|e| e.to_string())?;
    ensure(axioms.pass, || format!("axioms: {:?}", axioms.counterexample))?;
    let start = Instant::now();
    let full = exhaustive_check(&m, CheckLevel::AutomorphicFull, &budget, 0, 0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(full.pass, || format!("automorphic: {:?}", full.counterexample))?;
    ensure(full.checked == 256u64.pow(4), || format!("checked {}", full.checked))?;
    ensure(elapsed < Duration::from_secs(900), || format!("took {elapsed:?}"))?;
    let q = make_quotient(&m).map_err(|e| e.to_string())?;
    let center = center_bruteforce(&q.table(&budget).map_err(|e| e.to_string())?);
    let expected: Vec<usize> =
        (0..256).filter(|&i| q.element(i as u128).coords[..4] == [0, 0, 0, 0]).collect();
    ensure(center == expected && center.len() == 16, || format!("center {center:?}"))?;
    Ok(format!(
        "Latin square and commutative over 256^2 products, 256^4 automorphic quadruples in {} ms, center of 16 elements",
        elapsed.as_millis()
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pairs = 10_000;
    for _ in 0..pairs {
        let mut r = || -> [i64; 8] { std::array::from_fn(|_| rng.gen_range(-1_000_000..=1_000_000)) };
        let (ra, rb) = (r(), r());
        let (a, b) = (Elem8::from_i64s(ra), Elem8::from_i64s(rb));
        let ab = mul8(&a, &b);
        let want = oracle::mul(&ra.map(i128::from), &rb.map(i128::from));
        ensure(ab == Elem8::new(want.map(Int::from)), || format!("product differs from oracle at {ra:?}"))?;
        ensure(left_divide8(&a, &ab) == b, || format!("division round trip fails at {ra:?}, {rb:?}"))?;
        ensure(inverse8(&ab) == mul8(&inverse8(&a), &inverse8(&b)), || format!("AIP fails at {ra:?}, {rb:?}"))?;
    }
    Ok(format!("{pairs} pairs with coordinates up to 10^6"))
}

const GOLDEN: &[(&str, [i64; 8], &str)] = &[
    ("x", [1, 0, 0, 0, 0, 0, 0, 0], "x"),
    ("y", [0, 1, 0, 0, 0, 0, 0, 0], "y"),
    ("1", [0, 0, 0, 0, 0, 0, 0, 0], "1"),
    ("u1", [0, 0, 1, 0, 0, 0, 0, 0], "u1"),
    ("v4", [0, 0, 0, 0, 0, 0, 0, 1], "v4"),
    ("x*y", [1, 1, 0, 0, 0, 0, 0, 0], "(x y)"),
    ("(x*y)*x", [2, 1, -1, 0, 0, 0, 0, 0], "(x^2 y . u1^-1)"),
    ("x*(y*x)", [2, 1, -1, 0, 0, 0, 0, 0], "(x^2 y . u1^-1)"),
    ("x*y*x", [2, 1, -1, 0, 0, 0, 0, 0], "(x^2 y . u1^-1)"),
    ("x^2", [2, 0, 0, 0, 0, 0, 0, 0], "x^2"),
    ("x^-1", [-1, 0, 0, 0, 0, 0, 0, 0], "x^-1"),
    ("y^3", [0, 3, 0, 0, 0, 0, 0, 0], "y^3"),
    ("(x*y)^2", [2, 2, -2, 2, 0, 2, -2, 0], "(x^2 y^2 . u1^-2 u2^2) v2^2 v3^-2"),
    ("(x y)^-2", [-2, -2, 2, -2, 0, -2, 2, 0], "(x^-2 y^-2 . u1^2 u2^-2) v2^-2 v3^2"),
    ("assoc(x,x,y)", [0, 0, 1, 0, 0, 0, 0, 0], "u1"),
    ("assoc(x,y,y)", [0, 0, 0, 1, 0, 0, 0, 0], "u2"),
    ("assoc(x,x,u1)", [0, 0, 0, 0, 1, 0, 0, 0], "v1"),
    ("assoc(x,x,u2)", [0, 0, 0, 0, 0, 1, 0, 0], "v2"),
    ("assoc(y,y,u1)", [0, 0, 0, 0, 0, 0, 1, 0], "v3"),
    ("assoc(y,y,u2)", [0, 0, 0, 0, 0, 0, 0, 1], "v4"),
    ("assoc(y,x,x)", [0, 0, -1, 0, 0, 0, 0, 0], "u1^-1"),
    ("assoc(x,y,x)", [0, 0, 0, 0, 0, 0, 0, 0], "1"),
    ("assoc(x*y,x,y)", [0, 0, 1, 0, 0, -2, -1, 0], "u1 v2^-2 v3^-1"),
    ("innL(x,x,y)", [0, 1, -1, 0, 0, -2, 0, 0], "(y . u1^-1) v2^-2"),
    ("innL(y,x,x)", [1, 0, 0, 0, 0, 0, 0, 0], "x"),
    ("inv(x*y)", [-1, -1, 0, 0, 0, 0, 0, 0], "(x^-1 y^-1)"),
    ("pow(x*y,3)", [3, 3, -8, 8, 16, 32, -32, -16], "(x^3 y^3 . u1^-8 u2^8) v1^16 v2^32 v3^-32 v4^-16"),
    ("pow(y,-2)*x", [1, -2, 0, 0, 0, 0, 0, 0], "(x y^-2)"),
    ("x*(x*y)", [2, 1, -1, 0, 0, 0, 0, 0], "(x^2 y . u1^-1)"),
    ("(x*x)*y", [2, 1, 0, 0, 0, 0, 0, 0], "(x^2 y)"),
    ("x^2 y . u1^-1", [2, 1, -1, 0, 0, 0, 0, 0], "(x^2 y . u1^-1)"),
    ("(x^2 y . u1^-1) v1 v3^-2", [2, 1, -1, 0, 1, 0, -2, 0], "(x^2 y . u1^-1) v1 v3^-2"),
    (
        "assoc(elem[1,-2,3,0,1,0,-1,2],elem[0,1,-1,2,0,3,0,-1],elem[1,-2,3,0,1,0,-1,2])",
        [0, 0, 0, 0, 0, 0, 0, 0],
        "1",
    ),
    (
        "elem[1,-2,3,0,1,0,-1,2] * elem[0,1,-1,2,0,3,0,-1]",
        [1, -1, 2, 0, 1, 1, -5, 1],
        "(x y^-1 . u1^2) v1 v2 v3^-5 v4",
    ),
    (
        "assoc(elem[1,-2,3,0,1,0,-1,2],elem[0,1,-1,2,0,3,0,-1],elem[2,2,0,0,1,1,0,0])",
        [0, 0, 0, 6, 0, -22, -12, 24],
        "u2^6 v2^-22 v3^-12 v4^24",
    ),
    (
        "innL(elem[1,-2,3,0,1,0,-1,2],elem[0,1,-1,2,0,3,0,-1],elem[2,2,0,0,1,1,0,0])",
        [2, 2, 2, -4, -1, 9, 8, -16],
        "(x^2 y^2 . u1^2 u2^-4) v1^-1 v2^9 v3^8 v4^-16",
    ),
    ("inv(elem[2,2,0,0,1,1,0,0])", [-2, -2, 0, 0, -1, -1, 0, 0], "(x^-2 y^-2) v1^-1 v2^-1"),
    ("assoc(x^2,y,y^-1)", [0, 0, 0, -2, 0, 2, -4, -4], "u2^-2 v2^2 v3^-4 v4^-4"),
];

fn criterion_7() -> Outcome {
    for (text, coords, canonical) in GOLDEN {
        let got = eval_str(text).map_err(|err| format!("{text}: {err}"))?;
        ensure(got == Elem8::from_i64s(*coords), || format!("{text} evaluated to {got:?}"))?;
        let shown = format_canonical(&got);
        ensure(shown == *canonical, || format!("{text} printed as {shown:?}, expected {canonical:?}"))?;
        let again = eval_str(&shown).map_err(|err| format!("{shown}: {err}"))?;
        ensure(again == got, || format!("{shown} does not re-evaluate to itself"))?;
    }
    // flexibility on literal elements
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut literal = || {
        let c: [i64; 8] = std::array::from_fn(|_| rng.gen_range(-50..=50));
        format!("elem[{}]", c.map(|v| v.to_string()).join(","))
    };
    for _ in 0..200 {
        let (a, b) = (literal(), literal());
        let v = eval_str(&format!("assoc({a},{b},{a})")).map_err(|e| e.to_string())?;
        ensure(v == identity8(), || format!("assoc({a},{b},{a}) is not trivial"))?;
    }
    // format, parse, eval is the identity map
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..2000 {
        let c: [i64; 8] = std::array::from_fn(|_| match rng.gen_range(0..3) {
            0 => 0,
            1 => rng.gen_range(-3..=3),
            _ => rng.gen_range(-1_000_000_000..=1_000_000_000),
        });
        let a = Elem8::from_i64s(c);
        let shown = format_canonical(&a);
        let back = parse(&shown).map(|e| caloop::parser::eval(&e)).map_err(|e| format!("{shown}: {e}"))?;
        ensure(back == a, || format!("{shown} round-trips to {back:?}"))?;
    }
    Ok(format!("{} golden expressions, flexibility on literals, 2000 format/parse round trips", GOLDEN.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("symbolic L-automorphism", criterion_1),
        ("symbolic catalog and mutation", criterion_2),
        ("free relations", criterion_3),
        ("numeric power and reduction identities", criterion_4),
        ("quotient m=2", criterion_5),
        ("division and AIP with big coordinates", criterion_6),
        ("parser goldens", criterion_7),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS ({name}, {secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL ({name}, {secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
