//! The order-three automorphism `phi: a -> b, b -> a + b` of `F2[a,b]`, its
//! orbits, and the orbit-sum (Reynolds) operator.
//!
//! The averaging operator of a group of order three carries a factor `1/3`.
//! Over F2, `3 = 1`, so the Reynolds operator here is the plain orbit sum
//! `f + phi(f) + phi^2(f)`, with no scalar.

use std::sync::OnceLock;

use thiserror::Error;

use crate::bits::BitRow;
use crate::linalg::{kernel, BitMatrix};
use crate::poly::{BiPoly, HomogPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivarianceError {
    #[error("orbit of the zero element requested")]
    ZeroInput,
}

/// A ring endomorphism of `F2[a,b]`, given by the images of `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingEndo {
    image_a: BiPoly,
    image_b: BiPoly,
}

impl RingEndo {
    pub fn new(image_a: BiPoly, image_b: BiPoly) -> Self {
        RingEndo { image_a, image_b }
    }

    pub fn identity() -> Self {
        RingEndo::new(BiPoly::a(), BiPoly::b())
    }

    /// The generator of the C3-action.
    pub fn phi() -> Self {
        RingEndo::new(BiPoly::b(), &BiPoly::a() + &BiPoly::b())
    }

    pub fn image_a(&self) -> &BiPoly {
        &self.image_a
    }

    pub fn image_b(&self) -> &BiPoly {
        &self.image_b
    }

    /// Substitute the images of `a` and `b` into `f`.
    pub fn apply(&self, f: &BiPoly) -> BiPoly {
        let Some(top) = f.max_degree() else {
            return BiPoly::zero();
        };
        let pow_a = powers(&self.image_a, top);
        let pow_b = powers(&self.image_b, top);
        let mut out = BiPoly::zero();
        for (i, j) in f.monomials() {
            out += &(&pow_a[i as usize] * &pow_b[j as usize]);
        }
        out
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &RingEndo) -> RingEndo {
        RingEndo::new(self.apply(&other.image_a), self.apply(&other.image_b))
    }

    /// Matrix of the restriction to degree `d` (row `i` is the image of
    /// `a^i b^(d-i)`), when both images are linear forms.
    pub fn matrix_on_degree(&self, d: u32) -> Option<BitMatrix> {
        let la = self.image_a.homogeneous_of_degree(1)?;
        let lb = self.image_b.homogeneous_of_degree(1)?;
        let rows = (0..=d)
            .map(|i| la.pow(i).mul(&lb.pow(d - i)).coeffs().clone())
            .collect();
        Some(BitMatrix::from_rows(d as usize + 1, rows))
    }
}

fn powers(f: &BiPoly, top: u32) -> Vec<BiPoly> {
    let mut out = Vec::with_capacity(top as usize + 1);
    out.push(BiPoly::one());
    for k in 1..=top as usize {
        let next = &out[k - 1] * f;
        out.push(next);
    }
    out
}

const CACHED_DEGREES: usize = 256;

fn phi_table(d: u32) -> Option<&'static [BitRow]> {
    static TABLES: OnceLock<Vec<OnceLock<Vec<BitRow>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| (0..CACHED_DEGREES).map(|_| OnceLock::new()).collect());
    tables
        .get(d as usize)
        .map(|cell| cell.get_or_init(|| phi_rows(d)).as_slice())
}

/// `phi(a^i b^(d-i)) = b^i (a+b)^(d-i)`. By Lucas' theorem the coefficient of
/// `a^j b^(d-j)` is one exactly when `j` is a submask of `d - i`.
fn phi_monomial(d: u32, i: u32) -> BitRow {
    let k = (d - i) as usize;
    let mut row = BitRow::zeros(d as usize + 1);
    let mut s = k;
    loop {
        row.set(s, true);
        if s == 0 {
            break;
        }
        s = (s - 1) & k;
    }
    row
}

fn phi_rows(d: u32) -> Vec<BitRow> {
    (0..=d).map(|i| phi_monomial(d, i)).collect()
}

/// `phi(x)` for a homogeneous `x`, via the cached per-degree matrix.
pub fn phi(x: &HomogPoly) -> HomogPoly {
    let d = x.degree();
    let mut out = BitRow::zeros(d as usize + 1);
    match phi_table(d) {
        Some(rows) => {
            for i in x.coeffs().ones() {
                out.xor_assign(&rows[i]);
            }
        }
        None => {
            for i in x.coeffs().ones() {
                out.xor_assign(&phi_monomial(d, i as u32));
            }
        }
    }
    HomogPoly::new(d, out)
}

pub fn phi2(x: &HomogPoly) -> HomogPoly {
    phi(&phi(x))
}

/// `phi` applied componentwise.
pub fn phi_poly(f: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for g in f.components() {
        out.add_homog(&phi(g));
    }
    out
}

/// Matrix of `phi` on the degree-`d` component (row `i` is `phi(a^i b^(d-i))`).
pub fn phi_matrix(d: u32) -> BitMatrix {
    BitMatrix::from_rows(d as usize + 1, phi_rows(d))
}

/// The C3-orbit `{x, phi(x), phi^2(x)}` of a nonzero form, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    base: HomogPoly,
    elements: Vec<HomogPoly>,
}

impl Orbit {
    pub fn base(&self) -> &HomogPoly {
        &self.base
    }

    /// `[x]` for a fixed point, otherwise `[x, phi(x), phi^2(x)]`.
    pub fn elements(&self) -> &[HomogPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_fixed_point(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, y: &HomogPoly) -> bool {
        self.elements.contains(y)
    }
}

pub fn orbit(x: &HomogPoly) -> Result<Orbit, EquivarianceError> {
    if x.is_zero() {
        return Err(EquivarianceError::ZeroInput);
    }
    let y = phi(x);
    let elements = if &y == x {
        vec![x.clone()]
    } else {
        let z = phi(&y);
        vec![x.clone(), y, z]
    };
    Ok(Orbit {
        base: x.clone(),
        elements,
    })
}

/// `x + phi(x) + phi^2(x)`.
pub fn orbit_sum(x: &HomogPoly) -> HomogPoly {
    let y = phi(x);
    let z = phi(&y);
    &(x + &y) + &z
}

/// Orbit sum of every component; the result is phi-invariant.
pub fn reynolds(f: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for g in f.components() {
        out.add_homog(&orbit_sum(g));
    }
    out
}

pub fn is_invariant(f: &BiPoly) -> bool {
    &phi_poly(f) == f
}

/// Basis (as coefficient rows) of the phi-invariant forms of degree `d`:
/// the kernel of `phi + id` on that component.
pub fn invariants_of_degree(d: u32) -> BitMatrix {
    let rows = phi_rows(d)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.flip(i);
            row
        })
        .collect();
    kernel(&BitMatrix::from_rows(d as usize + 1, rows))
}

/// Basis of the kernel of `1 + phi + phi^2` on the degree-`d` component.
pub fn orbit_sum_kernel(d: u32) -> BitMatrix {
    let rows = (0..=d)
        .map(|i| orbit_sum(&HomogPoly::monomial(i, d - i)).coeffs().clone())
        .collect();
    kernel(&BitMatrix::from_rows(d as usize + 1, rows))
}
