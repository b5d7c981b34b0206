use rayon::prelude::*;
use serde::Serialize;

use super::ClassifyError;
use crate::equivariance::{orbit_sum, phi};
use crate::ideal::GradedIdeal;
use crate::poly::HomogPoly;
use crate::unipoly::coprime;

pub const SINGLE_DEGREE_CAP: u32 = 8;

/// `J = <x, y>` for a two-dimensional space `V = span{x, y}` of degree-`d` forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingleDegreeIdeal {
    pub degree: u32,
    /// The two nonzero elements of `V` with the smallest coefficient masks.
    pub basis: [HomogPoly; 2],
    pub parameter: bool,
    pub c3_invariant: bool,
    pub steenrod_closed: bool,
    /// Every nonzero `z` in `V` has vanishing orbit sum, is coprime to
    /// `phi(z)`, and `<z, phi(z)> = J`.
    pub orbit_generated: bool,
}

impl SingleDegreeIdeal {
    pub fn ideal(&self) -> GradedIdeal {
        GradedIdeal::from_forms(self.basis.to_vec()).expect("nonzero forms of positive degree")
    }

    pub fn elements(&self) -> [HomogPoly; 3] {
        let [x, y] = &self.basis;
        [x.clone(), y.clone(), x + y]
    }
}

/// Number of two-dimensional subspaces of `F2^(d+1)`.
pub fn gaussian_binomial_2(d: u32) -> u64 {
    let n = d as u64 + 1;
    if n < 2 {
        return 0;
    }
    ((1u64 << n) - 1) * ((1u64 << (n - 1)) - 1) / 3
}

fn in_span(z: &HomogPoly, elements: &[HomogPoly; 3]) -> bool {
    z.is_zero() || elements.contains(z)
}

fn classify_space(d: u32, x: u64, y: u64) -> SingleDegreeIdeal {
    let basis = [HomogPoly::from_mask(d, x), HomogPoly::from_mask(d, y)];
    let elements = [basis[0].clone(), basis[1].clone(), &basis[0] + &basis[1]];
    let parameter = coprime(&basis[0], &basis[1]).expect("nonzero basis");
    let c3_invariant = basis.iter().all(|g| in_span(&phi(g), &elements));
    let steenrod_closed = GradedIdeal::from_forms(basis.to_vec())
        .expect("nonzero forms of positive degree")
        .is_steenrod_closed();
    // <z, phi z> = J in a single degree means span{z, phi z} = V.
    let orbit_generated = elements.iter().all(|z| {
        let w = phi(z);
        orbit_sum(z).is_zero()
            && coprime(z, &w).expect("nonzero")
            && w != *z
            && in_span(&w, &elements)
    });
    SingleDegreeIdeal {
        degree: d,
        basis,
        parameter,
        c3_invariant,
        steenrod_closed,
        orbit_generated,
    }
}

/// Every two-dimensional space of degree-`d` forms with its flags, in
/// increasing order of the basis masks.
pub fn enumerate_single_degree_ideals(d: u32) -> Result<Vec<SingleDegreeIdeal>, ClassifyError> {
    enumerate_single_degree_ideals_with_cap(d, SINGLE_DEGREE_CAP)
}

pub fn enumerate_single_degree_ideals_with_cap(
    d: u32,
    cap: u32,
) -> Result<Vec<SingleDegreeIdeal>, ClassifyError> {
    if d == 0 {
        return Err(ClassifyError::ZeroDegree);
    }
    let cap = cap.min(30);
    if d > cap {
        return Err(ClassifyError::DegreeCap { degree: d, cap });
    }
    let top = 1u64 << (d + 1);
    // A space {0, x, y, x^y} is listed once, by its two smallest nonzero elements.
    Ok((1..top)
        .into_par_iter()
        .flat_map_iter(|x| {
            (x + 1..top)
                .filter(move |&y| x ^ y > y)
                .map(move |y| classify_space(d, x, y))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_gaussian_binomial() {
        for d in 1..=6 {
            assert_eq!(
                enumerate_single_degree_ideals(d).unwrap().len() as u64,
                gaussian_binomial_2(d)
            );
        }
        assert_eq!(gaussian_binomial_2(1), 1);
        assert_eq!(gaussian_binomial_2(2), 7);
        assert_eq!(gaussian_binomial_2(8), 43435);
    }

    #[test]
    fn degree_one() {
        let all = enumerate_single_degree_ideals(1).unwrap();
        assert_eq!(all.len(), 1);
        let j = &all[0];
        assert!(j.parameter && j.c3_invariant && j.steenrod_closed && j.orbit_generated);
    }

    #[test]
    fn degree_two_has_one_closed_invariant_parameter_ideal() {
        let hits: Vec<_> = enumerate_single_degree_ideals(2)
            .unwrap()
            .into_iter()
            .filter(|j| j.parameter && j.c3_invariant && j.steenrod_closed)
            .collect();
        assert_eq!(hits.len(), 1);
        let mut elements = hits[0].elements().to_vec();
        elements.sort();
        let mut expected = vec![
            HomogPoly::monomial(2, 0),
            HomogPoly::monomial(0, 2),
            HomogPoly::from_mask(2, 0b101),
        ];
        expected.sort();
        assert_eq!(elements, expected);
    }

    #[test]
    fn degree_three_has_none() {
        assert!(!enumerate_single_degree_ideals(3)
            .unwrap()
            .iter()
            .any(|j| j.parameter && j.c3_invariant && j.steenrod_closed));
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(
            enumerate_single_degree_ideals(9).unwrap_err(),
            ClassifyError::DegreeCap { degree: 9, cap: 8 }
        );
        assert_eq!(enumerate_single_degree_ideals(0).unwrap_err(), ClassifyError::ZeroDegree);
    }
}
