//! Univariate polynomials over F2, and the reduction of binary forms to them.
//!
//! A nonzero form `f` of degree `n` factors as `a^e * h` with `a` not dividing
//! `h`. Setting `a = 1` sends `h` to a univariate polynomial `u(t)` of degree
//! exactly `n - e`, and homogenizing `u` at that degree recovers `h`. GCDs of
//! forms are then a power of `a` times a homogenized univariate Euclidean GCD.

use crate::bits::BitRow;
use crate::poly::{HomogPoly, PolyError};

/// Bit `i` is the coefficient of `t^i`. The row is trimmed so that its top bit
/// is set; zero is the empty row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    row: BitRow,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { row: BitRow::zeros(0) }
    }

    pub fn one() -> Self {
        UniPoly { row: BitRow::unit(1, 0) }
    }

    /// `t^k`.
    pub fn power_of_t(k: usize) -> Self {
        UniPoly { row: BitRow::unit(k + 1, k) }
    }

    pub fn from_row(row: &BitRow) -> Self {
        match row.highest_one() {
            Some(h) => UniPoly { row: row.slice(0, h + 1) },
            None => UniPoly::zero(),
        }
    }

    /// Coefficients as a row of `len` bits. Panics if the degree does not fit.
    pub fn to_row(&self, len: usize) -> BitRow {
        self.row.resized(len)
    }

    pub fn coeffs(&self) -> &BitRow {
        &self.row
    }

    pub fn degree(&self) -> Option<usize> {
        self.row.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.row.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.row.len() == 1
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        UniPoly::from_row(&self.row.clmul(&other.row))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.row.len().max(other.row.len());
        let mut sum = self.row.resized(len);
        sum.xor_assign(&other.row.resized(len));
        UniPoly::from_row(&sum)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(sd) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if sd < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.row.clone();
        let mut quot = BitRow::zeros(sd - dd + 1);
        for top in (dd..=sd).rev() {
            if rem.get(top) {
                quot.set(top - dd, true);
                rem.xor_shifted(&divisor.row, top - dd);
            }
        }
        (UniPoly::from_row(&quot), UniPoly::from_row(&rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Monic GCD by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut x, mut y) = (self.clone(), other.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x
    }
}

/// `(e, u)` with `u(t) = f(1, t)` and `f = a^e * homogenize(u)`.
/// `e` is the exact multiplicity of `a` in `f`, and `deg u = deg f - e`.
pub fn dehomogenize(f: &HomogPoly) -> Result<(u32, UniPoly), PolyError> {
    let e = f.coeffs().lowest_one().ok_or(PolyError::ZeroInput)?;
    let n = f.degree() as usize;
    // c_i multiplies t^(n - i) after setting a = 1.
    let u = UniPoly::from_row(&f.coeffs().reversed());
    debug_assert_eq!(u.degree(), Some(n - e));
    Ok((e as u32, u))
}

/// The form of degree `deg u` whose dehomogenization is `u`. Not divisible by `a`.
pub fn homogenize(u: &UniPoly) -> Result<HomogPoly, PolyError> {
    let k = u.degree().ok_or(PolyError::ZeroInput)?;
    Ok(HomogPoly::new(k as u32, u.coeffs().reversed()))
}

/// GCD of two nonzero forms, normalized (over F2 the only unit is 1).
pub fn gcd_homog(f: &HomogPoly, g: &HomogPoly) -> Result<HomogPoly, PolyError> {
    let (ef, uf) = dehomogenize(f)?;
    let (eg, ug) = dehomogenize(g)?;
    let h = homogenize(&uf.gcd(&ug))?;
    Ok(h.mul_monomial(ef.min(eg), 0))
}

/// Nonzero forms with trivial GCD.
pub fn coprime(f: &HomogPoly, g: &HomogPoly) -> Result<bool, PolyError> {
    Ok(gcd_homog(f, g)?.degree() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn h(s: &str) -> HomogPoly {
        parse(s).unwrap().as_homogeneous().unwrap().clone()
    }

    /// Count how often `a` divides `f` by repeated trial division.
    fn a_multiplicity_oracle(f: &HomogPoly) -> u32 {
        let mut g = f.clone();
        let mut count = 0;
        while let Some(q) = g.div_exact(&HomogPoly::a()) {
            g = q;
            count += 1;
        }
        count
    }

    #[test]
    fn dehomogenize_examples() {
        let f = h("a^2*b");
        assert_eq!(a_multiplicity_oracle(&f), 2);
        assert_eq!(dehomogenize(&f).unwrap(), (2, UniPoly::power_of_t(1)));
        assert_eq!(dehomogenize(&h("b^3")).unwrap(), (0, UniPoly::power_of_t(3)));
        assert_eq!(dehomogenize(&h("a^3")).unwrap(), (3, UniPoly::one()));
        assert_eq!(dehomogenize(&HomogPoly::zero(3)), Err(PolyError::ZeroInput));
    }

    #[test]
    fn roundtrip_through_univariate() {
        for mask in 1u64..(1 << 9) {
            let f = HomogPoly::from_mask(8, mask);
            let (e, u) = dehomogenize(&f).unwrap();
            assert_eq!(e, a_multiplicity_oracle(&f));
            assert_eq!(homogenize(&u).unwrap().mul_monomial(e, 0), f);
        }
    }

    /// All divisors among degree-one forms, by trial division.
    fn linear_common_factors(f: &HomogPoly, g: &HomogPoly) -> Vec<HomogPoly> {
        ["a", "b", "a + b"]
            .iter()
            .map(|s| h(s))
            .filter(|l| l.divides(f) && l.divides(g))
            .collect()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_homog(&h("a^3"), &h("b^4")).unwrap(), HomogPoly::one());
        let (f, g) = (h("a*b"), h("a*b + b^2"));
        assert_eq!(linear_common_factors(&f, &g), vec![h("b")]);
        assert_eq!(gcd_homog(&f, &g).unwrap(), h("b"));
        let (f, g) = (h("a^2*b + a*b^2"), h("a^4 + a^2*b^2 + b^4"));
        let euclid = UniPoly::from_row(&f.coeffs().reversed())
            .gcd(&UniPoly::from_row(&g.coeffs().reversed()));
        assert!(euclid.is_one());
        assert_eq!(gcd_homog(&f, &g).unwrap(), HomogPoly::one());
        assert_eq!(gcd_homog(&HomogPoly::zero(2), &f), Err(PolyError::ZeroInput));
    }

    #[test]
    fn gcd_keeps_powers_of_a() {
        let f = h("a^3*b + a^2*b^2");
        let g = h("a^2");
        assert_eq!(gcd_homog(&f, &g).unwrap(), h("a^2"));
        assert_eq!(gcd_homog(&h("a^2*b"), &h("a*b^3")).unwrap(), h("a*b"));
    }

    #[test]
    fn univariate_division() {
        // t^3 + 1 = (t + 1)(t^2 + t + 1)
        let f = UniPoly::from_row(&BitRow::from_u64(4, 0b1001));
        let g = UniPoly::from_row(&BitRow::from_u64(2, 0b11));
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_row(&BitRow::from_u64(3, 0b111)));
        assert_eq!(q.mul(&g), f);
        assert_eq!(f.add(&f), UniPoly::zero());
    }
}
