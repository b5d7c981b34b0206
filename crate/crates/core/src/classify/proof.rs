//! The identities the classification argument runs on, checked on concrete
//! forms after Kameko splitting.
//!
//! Odd `n`, `v = a x^2 + b y^2`, with `Sq^1 v = (a + l2 b) v + n1 a phi(v)`:
//!
//! ```text
//! b y = l2 b y + n1 a phi(y)                  (kappa_1)
//! 0   = y + l2 x + n1 (phi(x) + phi(y))       (kappa_ab)
//! 0   = x + phi(y) + phi^2(x) + phi^2(y)      (kappa_a of the orbit sum, when it vanishes)
//! ```
//!
//! Even `n`, `v = x^2 + ab y^2`, with `Sq^1 v = l2 b v + n1 a phi(v)`:
//!
//! ```text
//! b y = l2 b y + n1 phi(x) + n1 b phi(y)      (kappa_a)
//! a y = l2 x + n1 a phi(y)                    (kappa_b)
//! ```

use serde::Serialize;

use super::orbit::{p_map, PMapValue, Sq1Coefficients};
use crate::equivariance::{phi, phi2};
use crate::poly::HomogPoly;
use crate::steenrod::{sq1, sq1_split, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofEquation {
    pub name: &'static str,
    pub holds: bool,
}

fn scaled(on: bool, f: &HomogPoly) -> HomogPoly {
    if on {
        f.clone()
    } else {
        HomogPoly::zero(f.degree())
    }
}

fn eq(name: &'static str, lhs: HomogPoly, rhs: HomogPoly) -> ProofEquation {
    ProofEquation {
        name,
        holds: lhs == rhs,
    }
}

/// The shape forced on the coefficients by `p(v) = (1, 0)`: `l1 = [n odd]`, `n2 = 0`.
pub fn has_forced_shape(v: &HomogPoly, c: &Sq1Coefficients) -> bool {
    c.lambda1 == (v.degree() % 2 == 1) && !c.nu2
}

/// Coefficients of the forced shape with `Sq^1(v) = lambda v + nu phi(v)`,
/// trying `(l2, n1)` in lexicographic order.
pub fn forced_shape_coefficients(v: &HomogPoly) -> Option<Sq1Coefficients> {
    let w = phi(v);
    let target = sq1(v);
    let odd = v.degree() % 2 == 1;
    [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .map(|(lambda2, nu1)| Sq1Coefficients {
            lambda1: odd,
            lambda2,
            nu1,
            nu2: false,
        })
        .find(|c| c.combine(v, &w) == target)
}

/// The two `Sq^1` equations for the parity of `deg v`. `None` unless the
/// coefficients have the forced shape.
pub fn sq1_equations(v: &HomogPoly, c: &Sq1Coefficients) -> Option<Vec<ProofEquation>> {
    if v.degree() == 0 || !has_forced_shape(v, c) {
        return None;
    }
    let split = sq1_split(v);
    let (x, y) = (&split.x, &split.y);
    let (l2, n1) = (c.lambda2, c.nu1);
    let by = y.mul_monomial(0, 1);
    Some(match split.parity {
        Parity::Odd => vec![
            eq(
                "b*y = l2*b*y + n1*a*phi(y)",
                by.clone(),
                &scaled(l2, &by) + &scaled(n1, &phi(y).mul_monomial(1, 0)),
            ),
            eq(
                "0 = y + l2*x + n1*(phi(x) + phi(y))",
                HomogPoly::zero(y.degree()),
                &(y + &scaled(l2, x)) + &scaled(n1, &(&phi(x) + &phi(y))),
            ),
        ],
        Parity::Even => vec![
            eq(
                "b*y = l2*b*y + n1*phi(x) + n1*b*phi(y)",
                by.clone(),
                &(&scaled(l2, &by) + &scaled(n1, &phi(x))) + &scaled(n1, &phi(y).mul_monomial(0, 1)),
            ),
            eq(
                "a*y = l2*x + n1*a*phi(y)",
                y.mul_monomial(1, 0),
                &scaled(l2, x) + &scaled(n1, &phi(y).mul_monomial(1, 0)),
            ),
        ],
    })
}

/// `0 = x + phi(y) + phi^2(x) + phi^2(y)` for odd `deg v`; `None` for even degree.
pub fn orbit_sum_equation(v: &HomogPoly) -> Option<ProofEquation> {
    let split = sq1_split(v);
    if split.parity != Parity::Odd {
        return None;
    }
    let (x, y) = (&split.x, &split.y);
    let rhs = &(&(x + &phi(y)) + &phi2(x)) + &phi2(y);
    Some(eq(
        "0 = x + phi(y) + phi^2(x) + phi^2(y)",
        HomogPoly::zero(x.degree()),
        rhs,
    ))
}

/// Every `v` of degree `1..=max_degree` with `p(v) = (1, 0)` admitting
/// forced-shape `Sq^1` coefficients, in increasing degree and mask order.
pub fn closure_certified_forms(max_degree: u32) -> Vec<(HomogPoly, Sq1Coefficients)> {
    let mut out = Vec::new();
    for n in 1..=max_degree.min(20) {
        for t in 0..(1u64 << (n - 1)) {
            let v = HomogPoly::from_mask(n, (t << 1) | (1u64 << n));
            debug_assert_eq!(p_map(&v), PMapValue(true, false));
            if let Some(c) = forced_shape_coefficients(&v) {
                out.push((v, c));
            }
        }
    }
    out
}
