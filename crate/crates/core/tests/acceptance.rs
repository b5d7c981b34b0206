//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Oracles here are computed independently of the code under test where the
//! expected value is derived rather than quoted.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use klein::classify::proof::{closure_certified_forms, has_forced_shape};
use klein::classify::{
    admissible_pairs, enumerate_single_degree_ideals, family_c_count, orbit_generates_closed_parameter_ideal,
    pair_density, search_degree, search_degrees, Family, SearchConfig, Sq1Coefficients,
};
use klein::equivariance::{orbit_sum, orbit_sum_kernel, phi, phi2};
use klein::selftest;
use klein::unipoly::coprime;
use klein::{BitRow, GradedIdeal, HomogPoly};
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

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(0x5eed);
    r.set_stream(stream);
    r
}

fn random_form(rng: &mut impl Rng, degree: u32) -> HomogPoly {
    loop {
        let mask = rng.random::<u64>() & ((1u64 << (degree + 1)) - 1);
        if mask != 0 {
            return HomogPoly::from_mask(degree, mask);
        }
    }
}

fn all_forms(degree: u32) -> impl Iterator<Item = HomogPoly> {
    (1..(1u64 << (degree + 1))).map(move |m| HomogPoly::from_mask(degree, m))
}

fn config(workers: usize, kernel_prefilter: bool) -> SearchConfig {
    SearchConfig {
        degree_cap: 20,
        workers,
        kernel_prefilter,
    }
}

/// `<x, phi x, phi^2 x>` is a parameter ideal closed under `Sq`, checked with
/// the general ideal machinery rather than the orbit shortcuts.
fn orbit_ideal_oracle(x: &HomogPoly) -> bool {
    let j = GradedIdeal::from_forms(vec![x.clone(), phi(x), phi2(x)]).unwrap();
    let minimal = j.minimalized();
    minimal.generators().len() == 2 && minimal.has_finite_quotient() && j.is_steenrod_closed()
}

fn criterion_1() -> Outcome {
    let reports = search_degrees(1..=20, &config(4, true)).map_err(|e| e.to_string())?;
    let mut hit = Vec::new();
    for r in &reports {
        let forms = r.survivor_forms();
        if forms.is_empty() {
            continue;
        }
        hit.push(r.degree);
        ensure(forms == [HomogPoly::monomial(r.degree, 0)], || {
            format!("degree {}: survivors {forms:?}, expected a^{}", r.degree, r.degree)
        })?;
        ensure(r.survivors[0].certificate.verify(), || {
            format!("degree {}: certificate does not verify", r.degree)
        })?;
        ensure(orbit_ideal_oracle(&forms[0]), || format!("oracle rejects a^{}", r.degree))?;
    }
    ensure(hit == [1, 2, 4, 8, 16], || format!("survivor degrees {hit:?}"))?;
    Ok(format!("survivor degrees {hit:?}, each a^n"))
}

fn criterion_2() -> Outcome {
    for n in 1..=12 {
        let fast = search_degree(n, &config(4, true)).map_err(|e| e.to_string())?;
        let slow = search_degree(n, &config(4, false)).map_err(|e| e.to_string())?;
        ensure(fast.survivor_forms() == slow.survivor_forms(), || {
            format!("degree {n}: prefilter {:?} vs brute force {:?}", fast.survivor_forms(), slow.survivor_forms())
        })?;
        ensure(slow.candidates == 1 << (n - 1), || format!("degree {n}: {} candidates", slow.candidates))?;
        // Independent brute force over p(v) = (1, 0) with the general ideal oracle.
        if n <= 8 {
            let oracle: Vec<HomogPoly> = (0..1u64 << (n - 1))
                .map(|t| HomogPoly::from_mask(n, (t << 1) | (1 << n)))
                .filter(|v| orbit_sum(v).is_zero() && orbit_ideal_oracle(v))
                .collect();
            ensure(oracle == slow.survivor_forms(), || {
                format!("degree {n}: oracle {oracle:?} vs search {:?}", slow.survivor_forms())
            })?;
        }
    }
    Ok("prefilter and brute force agree for n <= 12".into())
}

fn criterion_3() -> Outcome {
    let mut found = Vec::new();
    for d in 1..=8u32 {
        let all = enumerate_single_degree_ideals(d).map_err(|e| e.to_string())?;
        // [d+1 choose 2]_2 computed as a product of q-integers.
        let expected_count = ((1u64 << (d + 1)) - 1) * ((1u64 << d) - 1) / 3;
        ensure(all.len() as u64 == expected_count, || {
            format!("degree {d}: {} subspaces, expected {expected_count}", all.len())
        })?;
        let hits: Vec<_> = all
            .iter()
            .filter(|j| j.parameter && j.c3_invariant && j.steenrod_closed)
            .collect();
        let orbit_hits: Vec<_> = all.iter().filter(|j| j.orbit_generated && j.steenrod_closed).collect();
        ensure(hits == orbit_hits, || format!("degree {d}: orbit-generated set differs"))?;
        for j in &hits {
            let elements: BTreeSet<HomogPoly> = j.elements().into_iter().collect();
            let expected: BTreeSet<HomogPoly> = [
                HomogPoly::monomial(d, 0),
                HomogPoly::monomial(0, d),
                &HomogPoly::monomial(d, 0) + &HomogPoly::monomial(0, d),
            ]
            .into_iter()
            .collect();
            ensure(elements == expected, || format!("degree {d}: unexpected ideal {:?}", j.basis))?;
            found.push(d);
        }
    }
    ensure(found == [1, 2, 4, 8], || format!("found degrees {found:?}"))?;
    Ok("only <a^d, b^d> for d in {1, 2, 4, 8}".into())
}

fn criterion_4() -> Outcome {
    let j = GradedIdeal::parse(&["a^3", "b^4"]).map_err(|e| e.to_string())?;
    ensure(j.is_parameter_ideal() == Ok(true), || "<a^3, b^4> not parameter".into())?;
    ensure(j.is_steenrod_closed(), || "<a^3, b^4> not closed".into())?;
    ensure(!j.is_c3_invariant(), || "<a^3, b^4> invariant".into())?;

    let k = GradedIdeal::parse(&["a^2*b + a*b^2", "a^4 + a^2*b^2 + b^4"]).map_err(|e| e.to_string())?;
    ensure(k.is_parameter_ideal() == Ok(true), || "second ideal not parameter".into())?;
    ensure(k.is_steenrod_closed(), || "second ideal not closed".into())?;
    ensure(k.is_c3_invariant(), || "second ideal not invariant".into())?;
    ensure(
        k.rep_type() == Ok(klein::ideal::RepType::Trivial),
        || format!("rep type {:?}", k.rep_type()),
    )?;
    let system = k
        .invariant_generating_system()
        .map_err(|e| e.to_string())?
        .ok_or("no invariant generating system")?;
    for g in &system {
        ensure(phi(g) == *g, || format!("{g} is not invariant"))?;
    }
    let regenerated = GradedIdeal::from_forms(system.to_vec()).unwrap();
    ensure(klein::ideal::equal_ideals(&regenerated, &k), || {
        format!("{system:?} does not generate the ideal")
    })?;
    Ok(format!("invariant system {}, {}", system[0], system[1]))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut inputs: Vec<HomogPoly> = (1..=6).flat_map(all_forms).collect();
    for _ in 0..500 {
        let d = r.random_range(1..=10);
        inputs.push(random_form(&mut r, d));
    }
    let mut positives = 0;
    for x in &inputs {
        let up = orbit_generates_closed_parameter_ideal(x).map_err(|e| e.to_string())?;
        let x2 = x.square();
        let down = orbit_generates_closed_parameter_ideal(&x2).map_err(|e| e.to_string())?;
        ensure(up == down, || format!("{x}: {up} but x^2 gives {down}"))?;
        ensure(x2.sqrt().as_ref() == Ok(x), || format!("sqrt(({x})^2) != {x}"))?;
        if x.degree() <= 5 {
            ensure(orbit_ideal_oracle(x) == up, || format!("oracle disagrees on {x}"))?;
        }
        positives += up as usize;
    }
    Ok(format!("{} inputs, {positives} closed", inputs.len()))
}

fn criterion_6() -> Outcome {
    let names = [
        "cartan",
        "sq1-derivation",
        "sq1-degree-one",
        "kameko",
        "phi-order",
        "reynolds",
    ];
    let filter: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let report = selftest::run_with(selftest::DEFAULT_SEED, 1000, &filter, &klein::steenrod::total_sq);
    ensure(report.suites.len() == names.len(), || "missing suites".into())?;
    for s in &report.suites {
        ensure(s.checks >= 1000, || format!("{}: only {} checks", s.name, s.checks))?;
        ensure(s.passed(), || format!("{}: {:?}", s.name, s.first_failure))?;
    }
    let total: usize = report.suites.iter().map(|s| s.checks).sum();
    Ok(format!("{total} checks, seed {}", report.seed))
}

/// `v = a x^2 + b y^2` (odd degree) or `v = x^2 + ab y^2` (even degree), read
/// off monomial by monomial.
fn split(v: &HomogPoly) -> (HomogPoly, HomogPoly) {
    let n = v.degree();
    let odd = n % 2 == 1;
    let (dx, dy) = if odd { ((n - 1) / 2, (n - 1) / 2) } else { (n / 2, n / 2 - 1) };
    let mut x = BitRow::zeros(dx as usize + 1);
    let mut y = BitRow::zeros(dy as usize + 1);
    for (i, j) in v.monomials() {
        match (i % 2, j % 2) {
            (1, 0) if odd => x.set(((i - 1) / 2) as usize, true),
            (0, 1) if odd => y.set((i / 2) as usize, true),
            (0, 0) if !odd => x.set((i / 2) as usize, true),
            (1, 1) if !odd => y.set(((i - 1) / 2) as usize, true),
            _ => unreachable!("parity of a^{i} b^{j} in degree {n}"),
        }
    }
    (HomogPoly::new(dx, x), HomogPoly::new(dy, y))
}

fn when(on: bool, f: HomogPoly) -> HomogPoly {
    if on {
        f
    } else {
        HomogPoly::zero(f.degree())
    }
}

fn check_sq1_equations(v: &HomogPoly, c: &Sq1Coefficients) -> Result<usize, String> {
    ensure(has_forced_shape(v, c), || format!("{v}: coefficients {c:?} lack the forced shape"))?;
    let (x, y) = split(v);
    let (l2, n1) = (c.lambda2, c.nu1);
    let a = HomogPoly::a();
    let b = HomogPoly::b();
    let by = b.mul(&y);
    if v.degree() % 2 == 1 {
        let rhs = &when(l2, by.clone()) + &when(n1, a.mul(&phi(&y)));
        ensure(by == rhs, || format!("{v}: b*y = l2*b*y + n1*a*phi(y) fails"))?;
        let rhs = &(&y + &when(l2, x.clone())) + &when(n1, &phi(&x) + &phi(&y));
        ensure(rhs.is_zero(), || format!("{v}: 0 = y + l2*x + n1*(phi(x) + phi(y)) fails"))?;
    } else {
        let rhs = &(&when(l2, by.clone()) + &when(n1, phi(&x))) + &when(n1, b.mul(&phi(&y)));
        ensure(by == rhs, || format!("{v}: b*y = l2*b*y + n1*phi(x) + n1*b*phi(y) fails"))?;
        let rhs = &when(l2, x.clone()) + &when(n1, a.mul(&phi(&y)));
        ensure(a.mul(&y) == rhs, || format!("{v}: a*y = l2*x + n1*a*phi(y) fails"))?;
    }
    Ok(2)
}

fn check_orbit_sum_equation(v: &HomogPoly) -> Result<(), String> {
    let (x, y) = split(v);
    let rhs = &(&(&x + &phi(&y)) + &phi2(&x)) + &phi2(&y);
    ensure(rhs.is_zero(), || format!("{v}: 0 = x + phi(y) + phi^2(x) + phi^2(y) fails"))
}

fn criterion_7() -> Outcome {
    let mut equations = 0;
    let reports = search_degrees(1..=16, &config(4, true)).map_err(|e| e.to_string())?;
    for s in reports.iter().flat_map(|r| &r.survivors) {
        equations += check_sq1_equations(&s.v, &s.certificate.sq1)?;
        if s.v.degree() % 2 == 1 {
            check_orbit_sum_equation(&s.v)?;
            equations += 1;
        }
    }
    let pool = closure_certified_forms(14);
    ensure(pool.len() >= 200, || format!("only {} closure-certified forms", pool.len()))?;
    let mut r = rng(7);
    for _ in 0..200 {
        let (v, c) = &pool[r.random_range(0..pool.len())];
        // The recorded coefficients must reproduce Sq^1(v).
        ensure(c.combine(v, &phi(v)) == klein::steenrod::sq1(v), || format!("{v}: {c:?} is not a certificate"))?;
        equations += check_sq1_equations(v, c)?;
    }
    // Odd-degree forms with vanishing orbit sum, drawn from the kernel.
    for _ in 0..200 {
        let n = 2 * r.random_range(0..=7u32) + 1;
        let basis = orbit_sum_kernel(n);
        let mut v = BitRow::zeros(n as usize + 1);
        for row in basis.rows() {
            if r.random::<bool>() {
                v.xor_assign(row);
            }
        }
        let v = HomogPoly::new(n, v);
        ensure(orbit_sum(&v).is_zero(), || format!("{v} not in the kernel"))?;
        check_orbit_sum_equation(&v)?;
        equations += 1;
    }
    Ok(format!("{equations} equations hold"))
}

/// Family membership of an ordered pair, straight from the defining formulas.
fn oriented_families(p: u64, q: u64) -> BTreeSet<Family> {
    let mut out = BTreeSet::new();
    // A: p = 3k, q = 2l, 1 <= k <= 2^t where 2^t exactly divides l
    if p.is_multiple_of(3) && q.is_multiple_of(2) {
        let (k, l) = (p / 3, q / 2);
        let mut two_t = 1;
        while l % (two_t * 2) == 0 {
            two_t *= 2;
        }
        if k >= 1 && k <= two_t {
            out.insert(Family::A);
        }
    }
    // B: p = 3i + 2^(s+r+1) - 2^(s+1), q = 2^(s+r+1) - 2^s, 0 <= i < 2^(s-1)
    for s in 0..8u32 {
        for r in 1..8u32 {
            let top = 1u64 << (s + r + 1);
            if q + (1 << s) != top || p + (1 << (s + 1)) < top {
                continue;
            }
            let rest = p + (1 << (s + 1)) - top;
            // i < 2^(s-1) over the rationals, so 2i < 2^s
            if rest.is_multiple_of(3) && 2 * (rest / 3) < (1 << s) {
                out.insert(Family::B);
            }
        }
    }
    if p == q && p.is_power_of_two() {
        out.insert(Family::C);
    }
    out
}

fn criterion_8() -> Outcome {
    let pairs = admissible_pairs(16);
    let find = |p: u64, q: u64| pairs.iter().find(|d| d.matches(p, q));
    for (p, q) in [(3, 2), (3, 4), (2, 3), (6, 7), (1, 1), (2, 2), (4, 4), (8, 8), (16, 16)] {
        ensure(find(p, q).is_some(), || format!("({p},{q}) missing"))?;
    }
    ensure(find(6, 7).is_some_and(|d| d.families.contains(&Family::B)), || "(6,7) not in B".into())?;
    for d in 1..=16u64 {
        if !d.is_power_of_two() {
            ensure(find(d, d).is_none(), || format!("({d},{d}) listed"))?;
        }
    }
    let mut oracle = Vec::new();
    for low in 1..=16u64 {
        for high in low..=16u64 {
            let mut fams = oriented_families(low, high);
            fams.extend(oriented_families(high, low));
            if !fams.is_empty() {
                oracle.push((low, high, fams.into_iter().collect::<Vec<_>>()));
            }
        }
    }
    let listed: Vec<_> = pairs.iter().map(|d| (d.low, d.high, d.families.clone())).collect();
    ensure(listed == oracle, || format!("listed {listed:?}\noracle {oracle:?}"))?;
    Ok(format!("{} pairs match the direct re-derivation", listed.len()))
}

fn criterion_9() -> Outcome {
    let d: Vec<_> = [64u64, 256, 1024].iter().map(|&r| pair_density(r)).collect();
    ensure(d[0] > d[1] && d[1] > d[2], || format!("densities {d:?} not decreasing"))?;
    for r in [0u64, 1, 2, 3, 15, 16, 64, 100, 255, 256, 1000, 1024] {
        let mut powers = 0;
        let mut p = 1u64;
        while p <= r + 1 {
            powers += 1;
            p *= 2;
        }
        ensure(family_c_count(r) == powers, || format!("r = {r}: {} vs {powers}", family_c_count(r)))?;
    }
    Ok(format!("densities {} > {} > {}", d[0], d[1], d[2]))
}

fn criterion_10() -> Outcome {
    let forms: Vec<HomogPoly> = (1..=5).flat_map(all_forms).collect();
    let mut checked = 0;
    for f in &forms {
        for g in &forms {
            let j = GradedIdeal::from_forms(vec![f.clone(), g.clone()]).unwrap();
            let by_gcd = coprime(f, g).map_err(|e| e.to_string())?;
            ensure(by_gcd == j.has_finite_quotient(), || format!("<{f}, {g}>: gcd says {by_gcd}"))?;
            checked += 1;
        }
    }
    let mut r = rng(10);
    for _ in 0..500 {
        let (d1, d2) = (r.random_range(1..=12), r.random_range(1..=12));
        let (f, g) = (random_form(&mut r, d1), random_form(&mut r, d2));
        let j = GradedIdeal::from_forms(vec![f.clone(), g.clone()]).unwrap();
        let by_gcd = coprime(&f, &g).map_err(|e| e.to_string())?;
        ensure(by_gcd == j.has_finite_quotient(), || format!("<{f}, {g}>: gcd says {by_gcd}"))?;
        checked += 1;
    }
    Ok(format!("{checked} pairs agree"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("classification of orbit ideals, degrees 1..20", criterion_1),
        ("kernel prefilter equals brute force, n <= 12", criterion_2),
        ("single-degree ideals, d <= 8", criterion_3),
        ("example ideals", criterion_4),
        ("squaring reduction", criterion_5),
        ("operator identity suites", criterion_6),
        ("proof equations after Kameko splitting", criterion_7),
        ("admissible degree pairs up to 16", criterion_8),
        ("density decay and family C count", criterion_9),
        ("gcd vs finite quotient", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
