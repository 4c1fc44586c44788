//! The catalog of loop identities and the prover that checks them.
//!
//! Each entry says how many loop elements it quantifies over (and which
//! coordinates of each are forced to zero) and how to build both sides of
//! its equations from those elements. Builders are ordinary functions over
//! any [`Loop`] on exponent vectors, so the same entry is checked
//! symbolically (exponents are independent variables, equality is equality
//! of polynomials) and numerically (random integer exponents).

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::elem::{Shape, SymElem8, SymbolicLoop};
use super::poly::{self, Polynomial, TermCeilingExceeded, VarTable};
use crate::arith::ExpRing;
use crate::calculus::Calculus;
use crate::law::{self, Coords};
use crate::loop_core::{project_coords, Loop};

/// Both sides of one equation.
pub type Equation<R> = (Coords<R>, Coords<R>);

/// A loop on exponent vectors over `R`, as seen by identity builders.
pub type DynLoop<R> = dyn Loop<Elem = Coords<R>> + Sync;

pub type Builder<R> = fn(&DynLoop<R>, &[Coords<R>]) -> Vec<Equation<R>>;

pub struct Identity<R: ExpRing> {
    pub name: &'static str,
    pub summary: &'static str,
    pub inputs: &'static [Shape],
    pub build: Builder<R>,
}

impl<R: ExpRing> Identity<R> {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Whether every equation holds for these inputs.
    pub fn holds_at(&self, l: &DynLoop<R>, inputs: &[Coords<R>]) -> bool {
        (self.build)(l, inputs).iter().all(|(lhs, rhs)| lhs == rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// Default cap on the size of any intermediate polynomial.
pub const DEFAULT_TERM_CEILING: usize = 10_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub pass: bool,
    /// Terms in the residual `lhs - rhs` of each coordinate, summed over the
    /// entry's equations.
    pub residual_term_counts: [usize; 8],
    /// Largest total degree of any coordinate of any side.
    pub max_degree: u32,
    /// Largest number of terms in any coordinate of any side.
    pub max_terms: usize,
    pub variables: usize,
    pub equations: usize,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Nonzero residuals, one per failing equation.
    #[serde(skip)]
    pub residuals: Vec<Coords<Polynomial>>,
}

impl IdentityReport {
    /// Clears the elapsed time so that reports compare and print identically
    /// across runs.
    pub fn without_timing(mut self) -> Self {
        self.millis = 0;
        self
    }
}

fn zero<R: ExpRing>() -> Coords<R> {
    law::zero_coords()
}

/// Keeps the first `n` coordinates, zeroing the rest.
fn truncate<R: ExpRing>(a: &Coords<R>, n: usize) -> Coords<R> {
    std::array::from_fn(|i| if i < n { a[i].clone() } else { R::zero() })
}

fn product<R: ExpRing>(l: &DynLoop<R>, factors: &[Coords<R>]) -> Coords<R> {
    factors.iter().fold(l.identity(), |acc, f| l.mul(&acc, f))
}

fn identity_law<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let a = &x[0];
    vec![(l.mul(&l.identity(), a), a.clone()), (l.mul(a, &l.identity()), a.clone())]
}

fn commutativity<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b) = (&x[0], &x[1]);
    vec![(l.mul(a, b), l.mul(b, a)), (l.inner_t(a, b), b.clone())]
}

fn division_round_trip<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b) = (&x[0], &x[1]);
    let inv = l.inverse(a);
    vec![
        (l.left_div(a, &l.mul(a, b)), b.clone()),
        (l.mul(a, &l.left_div(a, b)), b.clone()),
        (l.mul(a, &inv), l.identity()),
        (l.mul(&inv, a), l.identity()),
    ]
}

fn aip<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b) = (&x[0], &x[1]);
    vec![(l.inverse(&l.mul(a, b)), l.mul(&l.inverse(a), &l.inverse(b)))]
}

fn flexibility<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b) = (&x[0], &x[1]);
    vec![(l.associator(a, b, a), l.identity())]
}

fn compound_inverse_symmetry<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let [a, b, c, d, e] = [&x[0], &x[1], &x[2], &x[3], &x[4]];
    let t = l.associator(a, b, c);
    vec![(l.inverse(&l.associator(&t, d, e)), l.associator(e, d, &t))]
}

fn compound_middle_split<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let [a, b, c, d, e] = [&x[0], &x[1], &x[2], &x[3], &x[4]];
    let t = l.associator(b, c, d);
    vec![(l.associator(a, &t, e), l.mul(&l.associator(a, e, &t), &l.associator(&t, a, e)))]
}

fn double_compound_vanishing<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let [a, b, c, d, e, f, g] = [&x[0], &x[1], &x[2], &x[3], &x[4], &x[5], &x[6]];
    let bcd = l.associator(b, c, d);
    let efg = l.associator(e, f, g);
    let abc = l.associator(a, b, c);
    let def = l.associator(d, e, f);
    vec![
        (l.associator(a, &bcd, &efg), l.identity()),
        (l.associator(&abc, d, &efg), l.identity()),
        (l.associator(&abc, &def, g), l.identity()),
    ]
}

fn associator_reversal<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b, c) = (&x[0], &x[1], &x[2]);
    vec![(l.associator(a, b, c), l.inverse(&l.associator(c, b, a)))]
}

fn associator_split<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b, c) = (&x[0], &x[1], &x[2]);
    vec![(l.associator(a, b, c), l.mul(&l.associator(a, c, b), &l.associator(b, a, c)))]
}

fn inner_l_closed_form<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b, c) = (&x[0], &x[1], &x[2]);
    let t = l.associator(a, b, c);
    let closed = l.mul(&l.mul(a, &t), &l.associator(&l.mul(b, c), a, &t));
    vec![(l.inner_l(b, c, a), closed)]
}

fn associator_product_expansion<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let s = |p: &Coords<R>, q: &Coords<R>, r: &Coords<R>| l.associator(p, q, r);

    let (acd, bcd) = (s(a, c, d), s(b, c, d));
    let first = product(
        l,
        &[
            acd.clone(),
            bcd.clone(),
            s(&acd, a, b),
            s(&bcd, b, a),
            s(&acd, b, c),
            s(&bcd, a, c),
            s(&acd, b, d),
            s(&bcd, a, d),
        ],
    );

    let (abc, abd) = (s(a, b, c), s(a, b, d));
    let last = product(
        l,
        &[
            abc.clone(),
            abd.clone(),
            s(&abc, c, d),
            s(&abd, d, c),
            s(&abc, d, b),
            s(&abd, c, b),
            s(&abc, d, a),
            s(&abd, c, a),
        ],
    );

    let (abd2, acd2) = (s(a, b, d), s(a, c, d));
    let middle = product(
        l,
        &[
            abd2.clone(),
            acd2.clone(),
            s(&abd2, b, c),
            s(&acd2, c, b),
            s(&abd2, c, a),
            s(&acd2, b, a),
            s(&abd2, c, d),
            s(&acd2, b, d),
        ],
    );

    vec![
        (s(&l.mul(a, b), c, d), first),
        (s(a, b, &l.mul(c, d)), last),
        (s(a, &l.mul(b, c), d), middle),
    ]
}

fn associators_in_middle_nucleus<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, n, b) = (&x[0], &x[1], &x[2]);
    vec![(l.associator(a, n, b), l.identity())]
}

fn compounded_centrality<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let [a, b, c, d, e, f, g] = [&x[0], &x[1], &x[2], &x[3], &x[4], &x[5], &x[6]];
    let compounded = [
        l.associator(&l.associator(a, b, c), d, e),
        l.associator(a, &l.associator(b, c, d), e),
        l.associator(a, b, &l.associator(c, d, e)),
    ];
    let mut eqs = Vec::new();
    for z in &compounded {
        eqs.push((l.mul(z, f), l.mul(f, z)));
        eqs.push((l.associator(z, f, g), l.identity()));
        eqs.push((l.associator(f, z, g), l.identity()));
        eqs.push((l.associator(f, g, z), l.identity()));
    }
    eqs
}

fn nuclei_membership<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let [z, n, a, b, c] = [&x[0], &x[1], &x[2], &x[3], &x[4]];
    vec![
        // 0^4 x Z^4 lies in all three nuclei and is fixed by the inner mappings
        (l.associator(z, a, b), l.identity()),
        (l.associator(a, z, b), l.identity()),
        (l.associator(a, b, z), l.identity()),
        (l.inner_l(a, b, z), z.clone()),
        (l.inner_r(a, b, z), z.clone()),
        (l.inner_t(a, z), z.clone()),
        // 0 x 0 x Z^6 lies in the middle nucleus
        (l.associator(a, n, b), l.identity()),
        // and contains every associator
        (truncate(&l.associator(a, b, c), 2), zero()),
    ]
}

fn f2_projection<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b) = (&x[0], &x[1]);
    let lhs = truncate(&l.mul(a, b), 4);
    let p = law::f2_product(&project_coords(a), &project_coords(b));
    let mut rhs = zero::<R>();
    rhs[..4].clone_from_slice(&p);
    vec![(lhs, rhs)]
}

fn l_automorphism<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let lhs = l.inner_l(a, b, &l.mul(c, d));
    let rhs = l.mul(&l.inner_l(a, b, c), &l.inner_l(a, b, d));
    vec![(lhs, rhs)]
}

fn local_linearity<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let ab = l.mul(a, b);
    vec![
        (l.associator(&ab, c, d), l.mul(&l.associator(a, c, d), &l.associator(b, c, d))),
        (l.associator(c, &ab, d), l.mul(&l.associator(c, a, d), &l.associator(c, b, d))),
        (l.associator(c, d, &ab), l.mul(&l.associator(c, d, a), &l.associator(c, d, b))),
    ]
}

fn linearity_mod_center<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let s = |p: &Coords<R>, q: &Coords<R>, r: &Coords<R>| l.associator(p, q, r);
    let m = |p: &Coords<R>, q: &Coords<R>| l.mul(p, q);
    let eq = |lhs: Coords<R>, rhs: Coords<R>| (truncate(&lhs, 4), truncate(&rhs, 4));
    vec![
        eq(s(&m(a, b), c, d), m(&s(a, c, d), &s(b, c, d))),
        eq(s(a, &m(b, c), d), m(&s(a, b, d), &s(a, c, d))),
        eq(s(a, b, &m(c, d)), m(&s(a, b, c), &s(a, b, d))),
    ]
}

fn central_associator_inner_maps<R: ExpRing>(l: &DynLoop<R>, x: &[Coords<R>]) -> Vec<Equation<R>> {
    let (n, p, q) = (&x[0], &x[1], &x[2]);
    let mut eqs = Vec::new();
    // an argument in the associator subloop makes the associator compounded, hence central
    for [a, b, c] in [[n, p, q], [p, n, q], [p, q, n]] {
        let t = l.associator(a, b, c);
        eqs.push((l.inner_l(b, a, c), l.mul(c, &l.inverse(&t))));
        eqs.push((l.inner_r(b, c, a), l.mul(a, &t)));
        // b L_a R_c L_a^{-1} R_c^{-1}
        let moved = l.left_div(c, &l.left_div(a, &l.mul(&l.mul(a, b), c)));
        eqs.push((moved, l.mul(b, &t)));
    }
    eqs
}

use Shape::{Associator as A, Central as Z, Free as F};

/// Every registered identity, in reporting order.
pub fn catalog<R: ExpRing>() -> Vec<Identity<R>> {
    vec![
        Identity { name: "identity", summary: "1a = a1 = a", inputs: &[F], build: identity_law },
        Identity { name: "commutativity", summary: "ab = ba and T_a is trivial", inputs: &[F, F], build: commutativity },
        Identity {
            name: "division-round-trip",
            summary: "a\\(ab) = b, a(a\\b) = b, a a^-1 = a^-1 a = 1",
            inputs: &[F, F],
            build: division_round_trip,
        },
        Identity { name: "aip", summary: "(ab)^-1 = a^-1 b^-1", inputs: &[F, F], build: aip },
        Identity { name: "flexibility", summary: "(a,b,a) = 1", inputs: &[F, F], build: flexibility },
        Identity {
            name: "compound-inverse-symmetry",
            summary: "((a,b,c),d,e)^-1 = (e,d,(a,b,c))",
            inputs: &[F, F, F, F, F],
            build: compound_inverse_symmetry,
        },
        Identity {
            name: "compound-middle-split",
            summary: "(a,(b,c,d),e) = (a,e,(b,c,d))((b,c,d),a,e)",
            inputs: &[F, F, F, F, F],
            build: compound_middle_split,
        },
        Identity {
            name: "double-compound-vanishing",
            summary: "(a,(b,c,d),(e,f,g)) = ((a,b,c),d,(e,f,g)) = ((a,b,c),(d,e,f),g) = 1",
            inputs: &[F, F, F, F, F, F, F],
            build: double_compound_vanishing,
        },
        Identity {
            name: "associator-reversal",
            summary: "(a,b,c) = (c,b,a)^-1",
            inputs: &[F, F, F],
            build: associator_reversal,
        },
        Identity {
            name: "associator-split",
            summary: "(a,b,c) = (a,c,b)(b,a,c)",
            inputs: &[F, F, F],
            build: associator_split,
        },
        Identity {
            name: "inner-l-closed-form",
            summary: "a L_{b,c} = a(a,b,c)(bc,a,(a,b,c))",
            inputs: &[F, F, F],
            build: inner_l_closed_form,
        },
        Identity {
            name: "associator-product-expansion",
            summary: "expansions of (ab,c,d), (a,b,cd), (a,bc,d)",
            inputs: &[F, F, F, F],
            build: associator_product_expansion,
        },
        Identity {
            name: "local-linearity",
            summary: "associators are multiplicative in an argument from 0x0xZ^6",
            inputs: &[A, A, F, F],
            build: local_linearity,
        },
        Identity {
            name: "linearity-mod-center",
            summary: "associators are multiplicative in each argument modulo the center",
            inputs: &[F, F, F, F],
            build: linearity_mod_center,
        },
        Identity {
            name: "central-associator-inner-maps",
            summary: "c L_{b,a} = c(a,b,c)^-1, a R_{b,c} = a(a,b,c), b L_a R_c L_a^-1 R_c^-1 = b(a,b,c) for central (a,b,c)",
            inputs: &[A, F, F],
            build: central_associator_inner_maps,
        },
        Identity {
            name: "associators-in-middle-nucleus",
            summary: "(a,n,b) = 1 for n in 0x0xZ^6",
            inputs: &[F, A, F],
            build: associators_in_middle_nucleus,
        },
        Identity {
            name: "compounded-centrality",
            summary: "compounded associators commute and associate with everything",
            inputs: &[F, F, F, F, F, F, F],
            build: compounded_centrality,
        },
        Identity {
            name: "nuclei-membership",
            summary: "0^4xZ^4 is central and 0x0xZ^6 middle-nuclear and contains all associators",
            inputs: &[Z, A, F, F, F],
            build: nuclei_membership,
        },
        Identity {
            name: "f2-projection",
            summary: "truncation to four coordinates is a homomorphism onto F2",
            inputs: &[F, F],
            build: f2_projection,
        },
        Identity {
            name: "L-automorphism",
            summary: "(cd) L_{a,b} = (c L_{a,b})(d L_{a,b})",
            inputs: &[F, F, F, F],
            build: l_automorphism,
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    catalog::<Polynomial>().iter().map(|i| i.name).collect()
}

const PREFIXES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn generic_inputs(shapes: &[Shape]) -> (Arc<VarTable>, Vec<Coords<Polynomial>>, usize) {
    let vars = VarTable::for_elements(&PREFIXES[..shapes.len()]);
    let mut used = 0;
    let inputs = shapes
        .iter()
        .zip(PREFIXES)
        .map(|(&shape, p)| {
            used += 8 - shape.zero_prefix();
            SymElem8::generic_shaped(&vars, p, shape).expect("prefix is in the table").coords
        })
        .collect();
    (vars, inputs, used)
}

/// Proves (or refutes) one identity over generic elements.
pub fn run_identity(l: &DynLoop<Polynomial>, id: &Identity<Polynomial>, term_ceiling: usize) -> IdentityReport {
    let start = Instant::now();
    let (_vars, inputs, variables) = generic_inputs(id.inputs);
    let built = panic::catch_unwind(AssertUnwindSafe(|| {
        poly::with_term_ceiling(term_ceiling, || {
            let eqs = (id.build)(l, &inputs);
            let residuals: Vec<Coords<Polynomial>> = eqs
                .iter()
                .map(|(lhs, rhs)| std::array::from_fn(|i| lhs[i].clone() - &rhs[i]))
                .collect();
            (eqs, residuals)
        })
    }));
    let mut report = IdentityReport {
        name: id.name.to_string(),
        pass: false,
        residual_term_counts: [0; 8],
        max_degree: 0,
        max_terms: 0,
        variables,
        equations: 0,
        millis: 0,
        error: None,
        residuals: Vec::new(),
    };
    match built {
        Ok((eqs, residuals)) => {
            report.equations = eqs.len();
            for (lhs, rhs) in &eqs {
                for p in lhs.iter().chain(rhs.iter()) {
                    report.max_degree = report.max_degree.max(p.degree());
                    report.max_terms = report.max_terms.max(p.num_terms());
                }
            }
            for r in residuals {
                for (count, p) in report.residual_term_counts.iter_mut().zip(&r) {
                    *count += p.num_terms();
                }
                if r.iter().any(|p| !p.is_zero()) {
                    report.residuals.push(r);
                }
            }
            report.pass = report.residuals.is_empty();
        }
        Err(payload) => match payload.downcast_ref::<TermCeilingExceeded>() {
            Some(e) => {
                report.error = Some(format!(
                    "aborted: an intermediate polynomial reached {} terms (ceiling {})",
                    e.terms, e.ceiling
                ))
            }
            None => panic::resume_unwind(payload),
        },
    }
    report.millis = start.elapsed().as_millis() as u64;
    report
}

pub fn verify_identity_in(l: &DynLoop<Polynomial>, name: &str) -> Result<IdentityReport, CatalogError> {
    let cat = catalog::<Polynomial>();
    let id = cat
        .iter()
        .find(|i| i.name == name)
        .ok_or_else(|| CatalogError::UnknownIdentity(name.to_string()))?;
    Ok(run_identity(l, id, DEFAULT_TERM_CEILING))
}

/// Proves one named identity for the free loop.
pub fn verify_identity(name: &str) -> Result<IdentityReport, CatalogError> {
    verify_identity_in(&SymbolicLoop::default(), name)
}

/// Runs the whole catalog in parallel; reports come back in catalog order.
pub fn verify_all_in(l: &DynLoop<Polynomial>) -> Vec<IdentityReport> {
    catalog::<Polynomial>()
        .par_iter()
        .map(|id| run_identity(l, id, DEFAULT_TERM_CEILING))
        .collect()
}

pub fn verify_all() -> Vec<IdentityReport> {
    verify_all_in(&SymbolicLoop::default())
}
