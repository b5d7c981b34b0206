//! Polynomials in `F2[a,b]` graded by total degree.
//!
//! A [`HomogPoly`] of degree `n` is a row of `n + 1` bits where bit `i` is the
//! coefficient of `a^i b^(n-i)`. Multiplying by `a` shifts the row up by one,
//! multiplying by `b` only widens it, and a product of forms is the carry-less
//! product of their rows.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::BitRow;
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("not a square: monomial a^{a_exp}*b^{b_exp} has an odd exponent")]
    NotASquare { a_exp: u32, b_exp: u32 },
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
}

/// A homogeneous element of `F2[a,b]`, possibly zero, with a fixed degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogPoly {
    degree: u32,
    coeffs: BitRow,
}

impl HomogPoly {
    /// Panics unless `coeffs.len() == degree + 1`.
    pub fn new(degree: u32, coeffs: BitRow) -> Self {
        assert_eq!(
            coeffs.len(),
            degree as usize + 1,
            "coefficient row of a degree-{degree} form must have {} bits",
            degree + 1
        );
        HomogPoly { degree, coeffs }
    }

    pub fn zero(degree: u32) -> Self {
        HomogPoly::new(degree, BitRow::zeros(degree as usize + 1))
    }

    pub fn one() -> Self {
        HomogPoly::monomial(0, 0)
    }

    pub fn a() -> Self {
        HomogPoly::monomial(1, 0)
    }

    pub fn b() -> Self {
        HomogPoly::monomial(0, 1)
    }

    /// `a^a_exp * b^b_exp`.
    pub fn monomial(a_exp: u32, b_exp: u32) -> Self {
        let degree = a_exp + b_exp;
        HomogPoly::new(degree, BitRow::unit(degree as usize + 1, a_exp as usize))
    }

    /// Form of the given degree whose a-exponents are the set bits of `mask`.
    pub fn from_mask(degree: u32, mask: u64) -> Self {
        assert!(degree < 64, "from_mask supports degrees below 64");
        HomogPoly::new(degree, BitRow::from_u64(degree as usize + 1, mask))
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Bit `i` is the coefficient of `a^i b^(n-i)`.
    #[inline]
    pub fn coeffs(&self) -> &BitRow {
        &self.coeffs
    }

    /// Coefficient of `a^a_exp * b^(n - a_exp)`.
    #[inline]
    pub fn coeff(&self, a_exp: u32) -> bool {
        self.coeffs.get(a_exp as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.count_ones()
    }

    /// `(a_exp, b_exp)` of each monomial with coefficient one, a-exponent ascending.
    pub fn monomials(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.degree;
        self.coeffs.ones().map(move |i| (i as u32, n - i as u32))
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        HomogPoly::new(self.degree + other.degree, self.coeffs.clmul(&other.coeffs))
    }

    /// `self * a^a_exp * b^b_exp`.
    pub fn mul_monomial(&self, a_exp: u32, b_exp: u32) -> HomogPoly {
        let degree = self.degree + a_exp + b_exp;
        HomogPoly::new(
            degree,
            self.coeffs.shifted(a_exp as usize, degree as usize + 1),
        )
    }

    pub fn pow(&self, exp: u32) -> HomogPoly {
        let mut acc = HomogPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn square(&self) -> HomogPoly {
        HomogPoly::new(2 * self.degree, self.coeffs.spread())
    }

    pub fn sqrt(&self) -> Result<HomogPoly, PolyError> {
        if self.degree % 2 == 1 {
            if let Some((a_exp, b_exp)) = self.monomials().next() {
                return Err(PolyError::NotASquare { a_exp, b_exp });
            }
            // The zero form of odd degree has no square root of integral degree.
            return Err(PolyError::NotASquare {
                a_exp: self.degree,
                b_exp: 0,
            });
        }
        match self.coeffs.unspread() {
            Some(row) => Ok(HomogPoly::new(self.degree / 2, row)),
            None => {
                let (a_exp, b_exp) = self
                    .monomials()
                    .find(|(i, _)| i % 2 == 1)
                    .expect("unspread fails only on an odd exponent");
                Err(PolyError::NotASquare { a_exp, b_exp })
            }
        }
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide `self`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_exact(&self, divisor: &HomogPoly) -> Option<HomogPoly> {
        assert!(!divisor.is_zero(), "division by the zero form");
        if divisor.degree > self.degree {
            return self.is_zero().then(|| HomogPoly::zero(0));
        }
        let qdeg = self.degree - divisor.degree;
        // Rows are polynomials in a/b, so exact division of forms is exact
        // univariate division of rows with a quotient of degree at most qdeg.
        let (q, r) = UniPoly::from_row(&self.coeffs).div_rem(&UniPoly::from_row(&divisor.coeffs));
        if !r.is_zero() {
            return None;
        }
        match q.degree() {
            Some(d) if d > qdeg as usize => None,
            _ => Some(HomogPoly::new(qdeg, q.to_row(qdeg as usize + 1))),
        }
    }

    pub fn divides(&self, other: &HomogPoly) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly::from(self.clone())
    }

    pub(crate) fn xor_assign(&mut self, other: &HomogPoly) {
        assert_eq!(
            self.degree, other.degree,
            "adding forms of different degrees"
        );
        self.coeffs.xor_assign(&other.coeffs);
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogPoly[{}]({})", self.degree, crate::parse::render_homog(self))
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render_homog(self))
    }
}

impl Add for &HomogPoly {
    type Output = HomogPoly;

    /// Panics if the degrees differ.
    fn add(self, rhs: &HomogPoly) -> HomogPoly {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add for HomogPoly {
    type Output = HomogPoly;

    fn add(mut self, rhs: HomogPoly) -> HomogPoly {
        self.xor_assign(&rhs);
        self
    }
}

impl Mul for &HomogPoly {
    type Output = HomogPoly;

    fn mul(self, rhs: &HomogPoly) -> HomogPoly {
        HomogPoly::mul(self, rhs)
    }
}

/// A general element of `F2[a,b]`: nonzero homogeneous components keyed by degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BiPoly {
    components: BTreeMap<u32, HomogPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        HomogPoly::one().into()
    }

    pub fn a() -> Self {
        HomogPoly::a().into()
    }

    pub fn b() -> Self {
        HomogPoly::b().into()
    }

    pub fn monomial(a_exp: u32, b_exp: u32) -> Self {
        HomogPoly::monomial(a_exp, b_exp).into()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Nonzero components in ascending degree.
    pub fn components(&self) -> impl DoubleEndedIterator<Item = &HomogPoly> {
        self.components.values()
    }

    /// Degree-`degree` component, zero if absent.
    pub fn component(&self, degree: u32) -> HomogPoly {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| HomogPoly::zero(degree))
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.components.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.components.keys().next_back().copied()
    }

    /// The single component of a nonzero homogeneous polynomial.
    pub fn as_homogeneous(&self) -> Option<&HomogPoly> {
        if self.components.len() == 1 {
            self.components.values().next()
        } else {
            None
        }
    }

    /// Homogeneous form with the given degree; zero is homogeneous of every degree.
    pub fn homogeneous_of_degree(&self, degree: u32) -> Option<HomogPoly> {
        match self.components.len() {
            0 => Some(HomogPoly::zero(degree)),
            1 if self.components.contains_key(&degree) => self.components.get(&degree).cloned(),
            _ => None,
        }
    }

    pub fn add_homog(&mut self, f: &HomogPoly) {
        if f.is_zero() {
            return;
        }
        match self.components.get_mut(&f.degree()) {
            Some(existing) => {
                existing.xor_assign(f);
                if existing.is_zero() {
                    self.components.remove(&f.degree());
                }
            }
            None => {
                self.components.insert(f.degree(), f.clone());
            }
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += other;
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for f in self.components() {
            for g in other.components() {
                out.add_homog(&f.mul(g));
            }
        }
        out
    }

    pub fn mul_homog(&self, g: &HomogPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for f in self.components() {
            out.add_homog(&f.mul(g));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = BiPoly::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Frobenius: doubles every exponent.
    pub fn square(&self) -> BiPoly {
        BiPoly {
            components: self
                .components
                .values()
                .map(|f| (2 * f.degree(), f.square()))
                .collect(),
        }
    }

    /// The unique `g` with `g^2 == self`, if every exponent is even.
    pub fn sqrt(&self) -> Result<BiPoly, PolyError> {
        let mut out = BiPoly::zero();
        for f in self.components() {
            out.add_homog(&f.sqrt()?);
        }
        Ok(out)
    }

    /// Every monomial `(a_exp, b_exp)` with coefficient one, by ascending degree.
    pub fn monomials(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.components().flat_map(|f| f.monomials())
    }

    pub fn term_count(&self) -> usize {
        self.components().map(HomogPoly::term_count).sum()
    }

    pub fn check_degree_cap(&self, cap: u32) -> Result<(), PolyError> {
        match self.max_degree() {
            Some(degree) if degree > cap => Err(PolyError::DegreeCap { degree, cap }),
            _ => Ok(()),
        }
    }
}

impl From<HomogPoly> for BiPoly {
    fn from(f: HomogPoly) -> Self {
        let mut out = BiPoly::zero();
        if !f.is_zero() {
            out.components.insert(f.degree(), f);
        }
        out
    }
}

/// Serialized as its rendered text. A zero form renders as `"0"` and loses its degree.
impl Serialize for HomogPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&crate::parse::render_homog(self))
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&crate::parse::render(self))
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        crate::parse::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", crate::parse::render(self))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render(self))
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for g in rhs.components() {
            self.add_homog(g);
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::add(self, rhs)
    }
}

impl Add for BiPoly {
    type Output = BiPoly;

    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::mul(self, rhs)
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: BiPoly) -> BiPoly {
        BiPoly::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(s: &str) -> BiPoly {
        parse(s).unwrap()
    }

    /// Schoolbook product over explicit monomial lists, independent of row packing.
    fn convolution_oracle(f: &BiPoly, g: &BiPoly) -> BiPoly {
        let mut counts: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for (i, j) in f.monomials() {
            for (k, l) in g.monomials() {
                *counts.entry((i + k, j + l)).or_default() += 1;
            }
        }
        let mut out = BiPoly::zero();
        for ((i, j), c) in counts {
            if c % 2 == 1 {
                out.add_homog(&HomogPoly::monomial(i, j));
            }
        }
        out
    }

    #[test]
    fn add_examples() {
        assert!((&p("a") + &p("a")).is_zero());
        let s = &p("a") + &p("b");
        let form = s.as_homogeneous().unwrap();
        assert_eq!(form.coeffs(), &BitRow::from_bits([true, true]));
        assert_eq!(&p("a^2 + a*b") + &p("a*b + b^2"), p("a^2 + b^2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("a + b") * &p("a + b"), p("a^2 + b^2"));
        assert_eq!(&p("a") * &p("b"), p("a*b"));
        assert_eq!(&p("a + b") * &p("b"), p("a*b + b^2"));
    }

    #[test]
    fn square_examples() {
        assert_eq!(p("a + b").square(), p("a^2 + b^2"));
        let f = p("a^2*b + a*b^2");
        assert_eq!(f.square(), convolution_oracle(&f, &f));
        assert_eq!(f.square(), p("a^4*b^2 + a^2*b^4"));
        assert!(BiPoly::zero().square().is_zero());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(p("a^4*b^2").sqrt().unwrap(), p("a^2*b"));
        assert_eq!(
            p("a^3").sqrt(),
            Err(PolyError::NotASquare { a_exp: 3, b_exp: 0 })
        );
        assert_eq!(p("a^2 + b^2").sqrt().unwrap(), p("a + b"));
        assert_eq!(p("1 + a^2").sqrt().unwrap(), p("1 + a"));
    }

    #[test]
    fn mixed_degree_product_matches_oracle() {
        let f = p("1 + a + a*b^3 + b^5");
        let g = p("a^2 + b + a^4*b");
        assert_eq!(&f * &g, convolution_oracle(&f, &g));
    }

    #[test]
    fn exact_division() {
        let f = HomogPoly::monomial(1, 1).mul(&p("a + b").as_homogeneous().unwrap().clone());
        let b = HomogPoly::b();
        assert_eq!(f.div_exact(&b).unwrap().to_bipoly(), p("a^2 + a*b"));
        assert!(HomogPoly::a().div_exact(&b).is_none());
        assert!(HomogPoly::b().pow(3).div_exact(&HomogPoly::a()).is_none());
        assert_eq!(
            HomogPoly::a().pow(5).div_exact(&HomogPoly::a().pow(2)),
            Some(HomogPoly::a().pow(3))
        );
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = p("a + a*b + b^2");
        let mut acc = BiPoly::one();
        for e in 0..6 {
            assert_eq!(f.pow(e), acc);
            acc = &acc * &f;
        }
    }

    #[test]
    fn homogeneous_accessors() {
        let f = p("a^2 + b");
        assert!(f.as_homogeneous().is_none());
        assert_eq!(f.component(2), HomogPoly::monomial(2, 0));
        assert_eq!(f.component(7), HomogPoly::zero(7));
        assert_eq!(BiPoly::zero().homogeneous_of_degree(4), Some(HomogPoly::zero(4)));
        assert_eq!(f.min_degree(), Some(1));
        assert_eq!(f.max_degree(), Some(2));
    }
}
