//! Seeded property suites behind `klein selftest`.
//!
//! Each suite draws its cases from a ChaCha stream keyed by the seed and the
//! suite's position in [`SUITES`], so filtering never changes the cases a suite
//! sees. The total Steenrod square is passed in, which lets a test inject a
//! broken one and watch the Cartan suite fail.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::proof::{closure_certified_forms, orbit_sum_equation, sq1_equations};
use crate::classify::{
    orbit_generates_closed_parameter_ideal, orbit_generates_parameter_ideal, p_map, PMapValue,
};
use crate::equivariance::{is_invariant, orbit_sum, phi, phi2, phi_poly, reynolds};
use crate::ideal::GradedIdeal;
use crate::linalg::{kernel, BitMatrix};
use crate::parse::{parse, render};
use crate::poly::{BiPoly, HomogPoly};
use crate::steenrod::{kameko, kappa, sq1, sq_k, KamekoIndex};
use crate::unipoly::{coprime, dehomogenize, gcd_homog, homogenize};
use crate::BitRow;

pub const DEFAULT_SEED: u64 = 0x6b6c_6569_6e34;
pub const DEFAULT_CASES: usize = 1000;

pub type SqFn = dyn Fn(&BiPoly) -> BiPoly + Sync;

/// Random inputs.
pub mod gen {
    use super::*;

    pub fn homog(rng: &mut impl Rng, degree: u32) -> HomogPoly {
        let mut row = BitRow::zeros(degree as usize + 1);
        for i in 0..=degree as usize {
            if rng.random::<bool>() {
                row.set(i, true);
            }
        }
        HomogPoly::new(degree, row)
    }

    pub fn homog_up_to(rng: &mut impl Rng, max_degree: u32) -> HomogPoly {
        let d = rng.random_range(0..=max_degree);
        homog(rng, d)
    }

    pub fn nonzero_homog(rng: &mut impl Rng, min_degree: u32, max_degree: u32) -> HomogPoly {
        loop {
            let d = rng.random_range(min_degree..=max_degree);
            let f = homog(rng, d);
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn bipoly(rng: &mut impl Rng, max_degree: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for d in 0..=max_degree {
            if rng.random_ratio(1, 2) {
                out.add_homog(&homog(rng, d));
            }
        }
        out
    }

    pub fn matrix(rng: &mut impl Rng, rows: usize, width: usize) -> BitMatrix {
        let mut m = BitMatrix::new(width);
        for _ in 0..rows {
            let mut r = BitRow::zeros(width);
            for i in 0..width {
                if rng.random::<bool>() {
                    r.set(i, true);
                }
            }
            m.push(r);
        }
        m
    }
}

struct Ctx<'a> {
    rng: ChaCha8Rng,
    sq: &'a SqFn,
    cases: usize,
    run: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Ctx<'_> {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.run += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    run: fn(&mut Ctx),
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub cases: usize,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

fn cartan(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::bipoly(&mut c.rng, 8);
        let g = gen::bipoly(&mut c.rng, 8);
        let lhs = (c.sq)(&(&f * &g));
        let rhs = &(c.sq)(&f) * &(c.sq)(&g);
        c.check(lhs == rhs, || format!("Sq(fg) != Sq(f)Sq(g) for f = {f}, g = {g}"));
    }
}

fn sq_additive(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::bipoly(&mut c.rng, 16);
        let g = gen::bipoly(&mut c.rng, 16);
        let ok = (c.sq)(&(&f + &g)) == &(c.sq)(&f) + &(c.sq)(&g);
        c.check(ok, || format!("Sq not additive on f = {f}, g = {g}"));
    }
}

fn sq1_derivation(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::homog_up_to(&mut c.rng, 12);
        let g = gen::homog_up_to(&mut c.rng, 12);
        let lhs = sq1(&f.mul(&g));
        let rhs = &sq1(&f).mul(&g) + &f.mul(&sq1(&g));
        c.check(lhs == rhs, || format!("Sq^1 derivation fails for f = {f}, g = {g}"));
    }
}

fn sq1_degree_one(c: &mut Ctx) {
    for _ in 0..c.cases {
        let z = gen::homog(&mut c.rng, 1);
        let from_total = (c.sq)(&z.to_bipoly()).component(2);
        let ok = sq1(&z) == z.square() && from_total == z.square();
        c.check(ok, || format!("Sq^1(z) != z^2 for z = {z}"));
    }
}

fn sq_k_pieces(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::homog_up_to(&mut c.rng, 16);
        let total = (c.sq)(&f.to_bipoly());
        let n = f.degree();
        let ok = (0..=n).all(|k| total.component(n + k) == sq_k(&f, k))
            && sq_k(&f, 0) == f
            && sq_k(&f, n) == f.square();
        c.check(ok, || format!("graded pieces of Sq disagree on {f}"));
    }
}

fn kameko_identities(c: &mut Ctx) {
    for _ in 0..c.cases {
        let x = gen::bipoly(&mut c.rng, 12);
        let y = gen::bipoly(&mut c.rng, 12);
        let z = gen::bipoly(&mut c.rng, 5);
        let h = gen::homog_up_to(&mut c.rng, 20);
        let dx = kameko(&x);
        c.check(dx.reconstruct() == x, || format!("reconstruction fails on {x}"));
        let z2 = z.square();
        for index in KamekoIndex::ALL {
            let additive = kappa(index, &(&x + &y)) == &kappa(index, &x) + &kappa(index, &y);
            c.check(additive, || format!("kappa_{index:?} not additive on {x}, {y}"));
            let shift = kappa(index, &(&x * &z2)) == &kappa(index, &x) * &z;
            c.check(shift, || format!("kappa_{index:?}(x z^2) != kappa(x) z for x = {x}, z = {z}"));
            let vanishing = match (index, h.degree() % 2) {
                (KamekoIndex::A | KamekoIndex::B, 0) | (KamekoIndex::One | KamekoIndex::AB, 1) => {
                    kappa(index, &h.to_bipoly()).is_zero()
                }
                _ => true,
            };
            c.check(vanishing, || format!("kappa_{index:?} does not vanish on {h}"));
        }
    }
}

fn phi_order_three(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::bipoly(&mut c.rng, 32);
        let ok = phi_poly(&phi_poly(&phi_poly(&f))) == f;
        c.check(ok, || format!("phi^3 != id on {f}"));
    }
}

fn phi_multiplicative(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::bipoly(&mut c.rng, 12);
        let g = gen::bipoly(&mut c.rng, 12);
        let ok = phi_poly(&(&f * &g)) == &phi_poly(&f) * &phi_poly(&g);
        c.check(ok, || format!("phi(fg) != phi(f)phi(g) for f = {f}, g = {g}"));
    }
}

fn reynolds_invariance(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::bipoly(&mut c.rng, 24);
        let r = reynolds(&f);
        let ok = is_invariant(&r) && reynolds(&r) == r;
        c.check(ok, || format!("Reynolds image of {f} is not a fixed point"));
        let x = gen::homog_up_to(&mut c.rng, 16);
        let squared = orbit_sum(&x.square()) == orbit_sum(&x).square();
        c.check(squared, || format!("orbit_sum(x^2) != orbit_sum(x)^2 for {x}"));
    }
}

fn frobenius(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::bipoly(&mut c.rng, 16);
        let g = gen::bipoly(&mut c.rng, 16);
        let ok = (&f + &g).square() == &f.square() + &g.square()
            && f.square() == &f * &f
            && f.square().sqrt().as_ref() == Ok(&f);
        c.check(ok, || format!("Frobenius fails on f = {f}, g = {g}"));
    }
}

fn gcd_properties(c: &mut Ctx) {
    for _ in 0..c.cases {
        let common = gen::homog_up_to(&mut c.rng, 3);
        let common = if common.is_zero() { HomogPoly::one() } else { common };
        let f = gen::nonzero_homog(&mut c.rng, 0, 8).mul(&common);
        let g = gen::nonzero_homog(&mut c.rng, 0, 8).mul(&common);
        let h = gcd_homog(&f, &g).expect("nonzero");
        let ok = match (f.div_exact(&h), g.div_exact(&h)) {
            (Some(fq), Some(gq)) => common.divides(&h) && coprime(&fq, &gq) == Ok(true),
            _ => false,
        };
        c.check(ok, || format!("gcd({f}, {g}) = {h} is wrong"));
        let (e, u) = dehomogenize(&f).expect("nonzero");
        let back = homogenize(&u).expect("nonzero").mul_monomial(e, 0);
        c.check(back == f, || format!("dehomogenize round trip fails on {f}"));
    }
}

fn parse_render(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::bipoly(&mut c.rng, 32);
        let text = render(&f);
        let ok = parse(&text).as_ref() == Ok(&f);
        c.check(ok, || format!("parse(render(f)) != f for {text}"));
    }
}

fn linear_algebra(c: &mut Ctx) {
    for _ in 0..c.cases {
        let rows = c.rng.random_range(0..12);
        let width = c.rng.random_range(1..12);
        let m = gen::matrix(&mut c.rng, rows, width);
        let ok = m.rank() + kernel(&m).len() == m.len();
        c.check(ok, || format!("rank-nullity fails on {m:?}"));
        let ech = m.rref();
        let v = gen::matrix(&mut c.rng, 1, width).rows()[0].clone();
        if let Some(indices) = ech.member(&v).expect("widths agree") {
            let mut sum = BitRow::zeros(width);
            for i in indices {
                sum.xor_assign(&m.rows()[i]);
            }
            c.check(sum == v, || format!("membership certificate wrong for {v:?} in {m:?}"));
        }
    }
}

fn parameter_oracles(c: &mut Ctx) {
    for _ in 0..c.cases {
        let f = gen::nonzero_homog(&mut c.rng, 1, 12);
        let g = gen::nonzero_homog(&mut c.rng, 1, 12);
        let j = GradedIdeal::from_forms(vec![f.clone(), g.clone()]).expect("positive degree");
        let by_gcd = coprime(&f, &g).expect("nonzero");
        c.check(by_gcd == j.has_finite_quotient(), || {
            format!("gcd and finite-quotient tests disagree on <{f}, {g}>")
        });
    }
}

/// Quotient dimensions of `<f, g>` against `(1 - t^d1)(1 - t^d2) / (1 - t)^2`.
fn hilbert_series(c: &mut Ctx) {
    let mut done = 0;
    while done < c.cases / 10 {
        let f = gen::nonzero_homog(&mut c.rng, 1, 10);
        let g = gen::nonzero_homog(&mut c.rng, 1, 10);
        if coprime(&f, &g) != Ok(true) {
            continue;
        }
        done += 1;
        let (d1, d2) = (f.degree() as i64, g.degree() as i64);
        let j = GradedIdeal::from_forms(vec![f.clone(), g.clone()]).expect("positive degree");
        for d in 0..=(d1 + d2) {
            let expected = (d + 1) - (d - d1 + 1).max(0) - (d - d2 + 1).max(0) + (d - d1 - d2 + 1).max(0);
            let found = j.quotient_dim(d as u32) as i64;
            c.check(found == expected, || {
                format!("dim (F2[a,b]/<{f}, {g}>)_{d} = {found}, series gives {expected}")
            });
        }
    }
}

fn p_map_lemma(c: &mut Ctx) {
    for d in 1..=14u32 {
        for mask in 1..(1u64 << (d + 1)) {
            let x = HomogPoly::from_mask(d, mask);
            if !orbit_generates_parameter_ideal(&x).expect("nonzero") {
                continue;
            }
            let values = [p_map(&x), p_map(&phi(&x)), p_map(&phi2(&x))];
            let mut sorted: Vec<_> = values.iter().map(|p| p.bits()).collect();
            sorted.sort();
            let ok = sorted == [(0, 1), (1, 0), (1, 1)];
            c.check(ok, || format!("p-values of the orbit of {x} are {values:?}"));
            let v = [x.clone(), phi(&x), phi2(&x)]
                .into_iter()
                .find(|w| p_map(w) == PMapValue(true, false));
            let ok = v.is_some_and(|v| {
                p_map(&phi(&v)) == PMapValue(false, true) && p_map(&phi2(&v)) == PMapValue(true, true)
            });
            c.check(ok, || format!("p is not equivariant on the orbit of {x}"));
        }
    }
}

fn squaring_reduction(c: &mut Ctx) {
    let mut inputs: Vec<HomogPoly> = (1..=6u32)
        .flat_map(|d| (1..(1u64 << (d + 1))).map(move |m| HomogPoly::from_mask(d, m)))
        .collect();
    for _ in 0..c.cases {
        inputs.push(gen::nonzero_homog(&mut c.rng, 1, 10));
    }
    for x in inputs {
        let up = orbit_generates_closed_parameter_ideal(&x).expect("nonzero");
        let x2 = x.square();
        let down = orbit_generates_closed_parameter_ideal(&x2).expect("nonzero");
        let root = x2.sqrt().expect("a square");
        c.check(up == down && root == x, || {
            format!("squaring changes the verdict for {x}: {up} vs {down}")
        });
    }
}

fn proof_equations(c: &mut Ctx) {
    let pool = closure_certified_forms(10);
    for _ in 0..c.cases / 2 {
        let (v, coefficients) = &pool[c.rng.random_range(0..pool.len())];
        let eqs = sq1_equations(v, coefficients).expect("forced shape");
        for e in eqs {
            c.check(e.holds, || format!("{} fails for {v}", e.name));
        }
    }
    for _ in 0..c.cases {
        let x = gen::nonzero_homog(&mut c.rng, 1, 15);
        if x.degree().is_multiple_of(2) || !orbit_sum(&x).is_zero() {
            continue;
        }
        let e = orbit_sum_equation(&x).expect("odd degree");
        c.check(e.holds, || format!("{} fails for {x}", e.name));
    }
    // Odd-degree forms with vanishing orbit sum are rare among random ones.
    for d in (1..=11u32).step_by(2) {
        for mask in 1..(1u64 << (d + 1)) {
            let x = HomogPoly::from_mask(d, mask);
            if orbit_sum(&x).is_zero() {
                let e = orbit_sum_equation(&x).expect("odd degree");
                c.check(e.holds, || format!("{} fails for {x}", e.name));
            }
        }
    }
}

pub static SUITES: &[Suite] = &[
    Suite { name: "cartan", about: "Sq(fg) = Sq(f) Sq(g)", run: cartan },
    Suite { name: "sq-additive", about: "Sq(f + g) = Sq(f) + Sq(g)", run: sq_additive },
    Suite { name: "sq1-derivation", about: "Sq^1(fg) = Sq^1(f) g + f Sq^1(g)", run: sq1_derivation },
    Suite { name: "sq1-degree-one", about: "Sq^1(z) = z^2 for |z| = 1", run: sq1_degree_one },
    Suite { name: "sq-pieces", about: "Sq^k is the degree n+k part of Sq", run: sq_k_pieces },
    Suite {
        name: "kameko",
        about: "reconstruction, additivity, kappa(x z^2) = kappa(x) z, parity vanishing",
        run: kameko_identities,
    },
    Suite { name: "phi-order", about: "phi^3 = id", run: phi_order_three },
    Suite { name: "phi-multiplicative", about: "phi(fg) = phi(f) phi(g)", run: phi_multiplicative },
    Suite { name: "reynolds", about: "Reynolds images are invariant; orbit sums commute with squaring", run: reynolds_invariance },
    Suite { name: "frobenius", about: "(f + g)^2 = f^2 + g^2 and sqrt(f^2) = f", run: frobenius },
    Suite { name: "gcd", about: "gcd divides both with coprime cofactors; dehomogenize round trip", run: gcd_properties },
    Suite { name: "parse-render", about: "parse(render(f)) = f", run: parse_render },
    Suite { name: "linalg", about: "rank-nullity and membership certificates", run: linear_algebra },
    Suite { name: "parameter", about: "gcd test agrees with the finite-quotient test", run: parameter_oracles },
    Suite { name: "hilbert-series", about: "complete-intersection quotient dimensions", run: hilbert_series },
    Suite { name: "p-map", about: "p-values of orbits generating parameter ideals, degrees <= 14", run: p_map_lemma },
    Suite { name: "squaring", about: "orbit of x is closed parameter iff orbit of x^2 is", run: squaring_reduction },
    Suite { name: "proof-equations", about: "Kameko-split Sq^1 and orbit-sum equations", run: proof_equations },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Run the suites whose name is in `filter` (all when empty).
pub fn run_with(seed: u64, cases: usize, filter: &[String], sq: &SqFn) -> SelftestReport {
    let mut results = Vec::new();
    for (stream, suite) in SUITES.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| f == suite.name) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream as u64);
        let mut ctx = Ctx {
            rng,
            sq,
            cases,
            run: 0,
            failures: 0,
            first_failure: None,
        };
        (suite.run)(&mut ctx);
        log::debug!("suite {} drew {} words", suite.name, ctx.rng.next_u32());
        results.push(SuiteResult {
            name: suite.name,
            checks: ctx.run,
            failures: ctx.failures,
            first_failure: ctx.first_failure,
        });
    }
    SelftestReport {
        seed,
        cases,
        suites: results,
    }
}

/// Run with the library's own total square.
pub fn run(seed: u64, filter: &[String]) -> SelftestReport {
    run_with(seed, DEFAULT_CASES, filter, &crate::steenrod::total_sq)
}
