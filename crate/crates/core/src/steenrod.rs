//! The total Steenrod square `Sq: a -> a + a^2, b -> b + b^2`, its graded
//! pieces `Sq^k`, and the Kameko maps.
//!
//! `Sq(a^i b^j) = a^i (1+a)^i b^j (1+b)^j`, and by Lucas' theorem
//! `(1+a)^i = sum of a^s over submasks s of i`. So `Sq^k(a^i b^j)` is the sum of
//! `a^(i+s) b^(j+t)` over submasks `s` of `i` and `t` of `j` with `s + t = k`.

use crate::bits::BitRow;
use crate::poly::{BiPoly, HomogPoly};

/// Adds `Sq^k(a^i b^j)` into `out`, a row for degree `i + j + k`.
fn xor_sq_monomial(out: &mut BitRow, i: u32, j: u32, k: u32) {
    let mut s = i;
    loop {
        if s <= k {
            let t = k - s;
            if t & j == t {
                out.flip((i + s) as usize);
            }
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & i;
    }
    #[cfg(feature = "corrupt-sq")]
    if k == 2 && i + j >= 2 {
        out.flip((i + 1) as usize);
    }
}

/// `Sq^k(f)`, of degree `deg f + k`. Zero when `k > deg f`; `Sq^0 = id`;
/// `Sq^(deg f)(f) = f^2`.
pub fn sq_k(f: &HomogPoly, k: u32) -> HomogPoly {
    let n = f.degree();
    let mut out = BitRow::zeros((n + k) as usize + 1);
    if k <= n {
        for (i, j) in f.monomials() {
            xor_sq_monomial(&mut out, i, j, k);
        }
    }
    HomogPoly::new(n + k, out)
}

/// `Sq^1`.
pub fn sq1(f: &HomogPoly) -> HomogPoly {
    sq_k(f, 1)
}

/// Total square of a homogeneous form.
pub fn total_sq_homog(f: &HomogPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for k in 0..=f.degree() {
        out.add_homog(&sq_k(f, k));
    }
    out
}

/// The ring endomorphism `a -> a + a^2, b -> b + b^2`.
pub fn total_sq(f: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for g in f.components() {
        out += &total_sq_homog(g);
    }
    out
}

/// Which Kameko component a monomial lands in, by exponent parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KamekoIndex {
    One,
    A,
    B,
    AB,
}

impl KamekoIndex {
    pub const ALL: [KamekoIndex; 4] = [KamekoIndex::One, KamekoIndex::A, KamekoIndex::B, KamekoIndex::AB];

    /// The monomial `m` with `x = sum of kappa_m(x)^2 * m`.
    pub fn monomial(self) -> HomogPoly {
        match self {
            KamekoIndex::One => HomogPoly::one(),
            KamekoIndex::A => HomogPoly::a(),
            KamekoIndex::B => HomogPoly::b(),
            KamekoIndex::AB => HomogPoly::monomial(1, 1),
        }
    }

    fn of(a_exp: u32, b_exp: u32) -> Self {
        match (a_exp % 2, b_exp % 2) {
            (0, 0) => KamekoIndex::One,
            (1, 0) => KamekoIndex::A,
            (0, 1) => KamekoIndex::B,
            _ => KamekoIndex::AB,
        }
    }
}

/// The unique `x = k1^2 + ka^2 a + kb^2 b + kab^2 ab`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KamekoDecomposition {
    pub k1: BiPoly,
    pub ka: BiPoly,
    pub kb: BiPoly,
    pub kab: BiPoly,
}

impl KamekoDecomposition {
    pub fn get(&self, index: KamekoIndex) -> &BiPoly {
        match index {
            KamekoIndex::One => &self.k1,
            KamekoIndex::A => &self.ka,
            KamekoIndex::B => &self.kb,
            KamekoIndex::AB => &self.kab,
        }
    }

    fn get_mut(&mut self, index: KamekoIndex) -> &mut BiPoly {
        match index {
            KamekoIndex::One => &mut self.k1,
            KamekoIndex::A => &mut self.ka,
            KamekoIndex::B => &mut self.kb,
            KamekoIndex::AB => &mut self.kab,
        }
    }

    pub fn reconstruct(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for index in KamekoIndex::ALL {
            out += &self.get(index).square().mul_homog(&index.monomial());
        }
        out
    }
}

pub fn kameko(x: &BiPoly) -> KamekoDecomposition {
    let mut out = KamekoDecomposition::default();
    for (i, j) in x.monomials() {
        out.get_mut(KamekoIndex::of(i, j))
            .add_homog(&HomogPoly::monomial(i / 2, j / 2));
    }
    out
}

/// A single Kameko map.
pub fn kappa(index: KamekoIndex, x: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (i, j) in x.monomials().filter(|&(i, j)| KamekoIndex::of(i, j) == index) {
        out.add_homog(&HomogPoly::monomial(i / 2, j / 2));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The split behind the closed forms of `Sq^1`:
/// odd degree `v = a x^2 + b y^2` gives `Sq^1 v = a^2 x^2 + b^2 y^2`;
/// even degree `v = x^2 + ab y^2` gives `Sq^1 v = (a^2 b + a b^2) y^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sq1Split {
    pub parity: Parity,
    pub x: HomogPoly,
    pub y: HomogPoly,
    pub closed_form: HomogPoly,
}

pub fn sq1_split(v: &HomogPoly) -> Sq1Split {
    let n = v.degree();
    let d = kameko(&v.to_bipoly());
    if n % 2 == 1 {
        let half = (n - 1) / 2;
        let x = d.ka.homogeneous_of_degree(half).expect("kappa_a of a form is a form");
        let y = d.kb.homogeneous_of_degree(half).expect("kappa_b of a form is a form");
        let closed_form = &x.square().mul_monomial(2, 0) + &y.square().mul_monomial(0, 2);
        Sq1Split {
            parity: Parity::Odd,
            x,
            y,
            closed_form,
        }
    } else {
        let x = d.k1.homogeneous_of_degree(n / 2).expect("kappa_1 of a form is a form");
        let y = d
            .kab
            .homogeneous_of_degree((n / 2).saturating_sub(1))
            .expect("kappa_ab of a form is a form");
        let closed_form = if n == 0 {
            HomogPoly::zero(1)
        } else {
            let c = &HomogPoly::monomial(2, 1) + &HomogPoly::monomial(1, 2);
            y.square().mul(&c)
        };
        Sq1Split {
            parity: Parity::Even,
            x,
            y,
            closed_form,
        }
    }
}
