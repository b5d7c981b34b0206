use serde::Serialize;

use super::ClassifyError;
use crate::equivariance::{orbit_sum, phi, Orbit};
use crate::ideal::GradedIdeal;
use crate::poly::HomogPoly;
use crate::steenrod::{sq1, sq_k};
use crate::unipoly::coprime;

/// `(coefficient of a^n, coefficient of b^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PMapValue(pub bool, pub bool);

impl PMapValue {
    pub fn bits(self) -> (u8, u8) {
        (self.0 as u8, self.1 as u8)
    }
}

pub fn p_map(v: &HomogPoly) -> PMapValue {
    PMapValue(v.coeff(v.degree()), v.coeff(0))
}

/// `orbit_sum(x) = 0` and `gcd(x, phi(x)) = 1`.
pub fn orbit_generates_parameter_ideal(x: &HomogPoly) -> Result<bool, ClassifyError> {
    if x.is_zero() {
        return Err(ClassifyError::ZeroInput);
    }
    Ok(orbit_sum(x).is_zero() && coprime(x, &phi(x))?)
}

/// The unique element of the orbit with `p = (1, 0)`.
pub fn normalize_orbit(orbit: &Orbit) -> Result<HomogPoly, ClassifyError> {
    if !orbit_generates_parameter_ideal(orbit.base())? {
        return Err(ClassifyError::NotNormalizable);
    }
    let v = orbit
        .elements()
        .iter()
        .find(|w| p_map(w) == PMapValue(true, false))
        .cloned()
        .ok_or(ClassifyError::NotNormalizable)?;
    let w = phi(&v);
    assert_eq!(p_map(&w), PMapValue(false, true), "p(phi v) for v = {v}");
    assert_eq!(p_map(&phi(&w)), PMapValue(true, true), "p(phi^2 v) for v = {v}");
    Ok(v)
}

pub fn square_orbit(x: &HomogPoly) -> HomogPoly {
    x.square()
}

/// `Sq^1(v) = (l1 a + l2 b) v + (n1 a + n2 b) phi(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sq1Coefficients {
    pub lambda1: bool,
    pub lambda2: bool,
    pub nu1: bool,
    pub nu2: bool,
}

impl Sq1Coefficients {
    fn from_index(t: u8) -> Self {
        Sq1Coefficients {
            lambda1: t & 8 != 0,
            lambda2: t & 4 != 0,
            nu1: t & 2 != 0,
            nu2: t & 1 != 0,
        }
    }

    pub fn lambda(&self) -> HomogPoly {
        linear(self.lambda1, self.lambda2)
    }

    pub fn nu(&self) -> HomogPoly {
        linear(self.nu1, self.nu2)
    }

    /// The right-hand side evaluated at `v` and `w = phi(v)`.
    pub fn combine(&self, v: &HomogPoly, w: &HomogPoly) -> HomogPoly {
        &self.lambda().mul(v) + &self.nu().mul(w)
    }
}

fn linear(on_a: bool, on_b: bool) -> HomogPoly {
    let mut f = HomogPoly::zero(1);
    if on_a {
        f = &f + &HomogPoly::a();
    }
    if on_b {
        f = &f + &HomogPoly::b();
    }
    f
}

/// Lexicographically first `(l1, l2, n1, n2)` with `Sq^1(v) = (l1 a + l2 b) v +
/// (n1 a + n2 b) w`, if any. Unique when `v, w` are coprime of degree at least 2.
pub fn sq1_coefficients(v: &HomogPoly, w: &HomogPoly) -> Option<Sq1Coefficients> {
    let target = sq1(v);
    let rows = [
        v.mul_monomial(1, 0),
        v.mul_monomial(0, 1),
        w.mul_monomial(1, 0),
        w.mul_monomial(0, 1),
    ];
    (0u8..16).map(Sq1Coefficients::from_index).find(|c| {
        let mut sum = HomogPoly::zero(v.degree() + 1);
        for (bit, row) in [c.lambda1, c.lambda2, c.nu1, c.nu2].into_iter().zip(&rows) {
            if bit {
                sum = &sum + row;
            }
        }
        sum == target
    })
}

/// `Sq^k(v) = coefficient_v * v + coefficient_phi_v * phi(v)` with both
/// coefficients of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SqCertificate {
    pub k: u32,
    pub coefficient_v: HomogPoly,
    pub coefficient_phi_v: HomogPoly,
}

/// Evidence that `<v, phi(v)>` is Steenrod closed, for the normalized `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitIdealCertificate {
    pub v: HomogPoly,
    pub phi_v: HomogPoly,
    pub sq1: Sq1Coefficients,
    /// One entry per `k` in `2..=deg v`.
    pub higher: Vec<SqCertificate>,
}

impl OrbitIdealCertificate {
    /// Recompute every `Sq^k(v)` from the recorded coefficients.
    pub fn verify(&self) -> bool {
        if self.sq1.combine(&self.v, &self.phi_v) != sq1(&self.v) {
            return false;
        }
        self.higher.iter().all(|c| {
            let rhs = &c.coefficient_v.mul(&self.v) + &c.coefficient_phi_v.mul(&self.phi_v);
            c.coefficient_v.degree() == c.k
                && c.coefficient_phi_v.degree() == c.k
                && rhs == sq_k(&self.v, c.k)
        })
    }
}

/// Closure of `<v, phi(v)>` under `Sq` for an already-normalized `v` whose
/// orbit generates a parameter ideal. `Sq` commutes with `phi` and the ideal is
/// `phi`-stable, so `Sq(v) in J` is enough.
pub(crate) fn closure_certificate(v: &HomogPoly) -> Option<OrbitIdealCertificate> {
    let w = phi(v);
    let sq1_coefficients = sq1_coefficients(v, &w)?;
    let ideal = GradedIdeal::from_forms(vec![v.clone(), w.clone()]).expect("nonzero forms of positive degree");
    let mut higher = Vec::new();
    for k in 2..=v.degree() {
        let cert = ideal.contains(&sq_k(v, k).to_bipoly())?;
        let coefficient = |i: usize| {
            cert.coefficients[i]
                .homogeneous_of_degree(k)
                .unwrap_or_else(|| HomogPoly::zero(k))
        };
        higher.push(SqCertificate {
            k,
            coefficient_v: coefficient(0),
            coefficient_phi_v: coefficient(1),
        });
    }
    Some(OrbitIdealCertificate {
        v: v.clone(),
        phi_v: w,
        sq1: sq1_coefficients,
        higher,
    })
}

/// Whether `<C3 x>` is Steenrod closed; the certificate is for the normalized
/// representative of the orbit.
pub fn orbit_ideal_is_steenrod_closed(
    x: &HomogPoly,
) -> Result<Option<OrbitIdealCertificate>, ClassifyError> {
    if !orbit_generates_parameter_ideal(x)? {
        return Err(ClassifyError::NotOrbitParameter(x.to_string()));
    }
    let orbit = crate::equivariance::orbit(x).map_err(|_| ClassifyError::ZeroInput)?;
    let v = normalize_orbit(&orbit)?;
    Ok(closure_certificate(&v))
}

/// `<C3 x>` is a Steenrod-closed parameter ideal. Unlike
/// [`orbit_ideal_is_steenrod_closed`] this accepts every nonzero `x`.
pub fn orbit_generates_closed_parameter_ideal(x: &HomogPoly) -> Result<bool, ClassifyError> {
    if !orbit_generates_parameter_ideal(x)? {
        return Ok(false);
    }
    Ok(orbit_ideal_is_steenrod_closed(x)?.is_some())
}

/// Some `z` with `J = <z, phi(z), phi^2(z)>`, the one with the smallest
/// coefficient mask. Such a `J` is generated in a single degree `d`, and `z`
/// ranges over the nonzero elements of `J_d`.
pub fn orbit_generator(j: &GradedIdeal) -> Option<HomogPoly> {
    let gens = j.minimal_generators();
    let d = gens.first()?.degree();
    if gens.iter().any(|g| g.degree() != d) || gens.len() > 3 {
        return None;
    }
    let component = j.component(d);
    let basis: Vec<HomogPoly> = component
        .basis()
        .rows()
        .iter()
        .map(|r| HomogPoly::new(d, r.clone()))
        .collect();
    let mut elements: Vec<HomogPoly> = (1u32..(1 << basis.len()))
        .map(|t| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| t >> i & 1 == 1)
                .fold(HomogPoly::zero(d), |acc, (_, b)| &acc + b)
        })
        .collect();
    elements.sort();
    elements.into_iter().find(|z| {
        let orbit = [z.clone(), phi(z), phi(&phi(z))];
        let span = crate::linalg::BitMatrix::from_rows(
            d as usize + 1,
            orbit.iter().map(|w| w.coeffs().clone()).collect(),
        );
        span.rank() == component.dim() && orbit.iter().all(|w| component.contains(w))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariance::orbit;
    use crate::parse::parse_homog;

    fn h(s: &str) -> HomogPoly {
        parse_homog(s).unwrap()
    }

    #[test]
    fn p_map_examples() {
        assert_eq!(p_map(&h("a*b")), PMapValue(false, false));
        assert_eq!(phi(&h("a*b")), h("a*b + b^2"));
        assert_eq!(p_map(&phi(&h("a*b"))), PMapValue(false, true));
        for n in 1..10 {
            assert_eq!(p_map(&HomogPoly::monomial(n, 0)), PMapValue(true, false));
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_orbit(&orbit(&h("a")).unwrap()).unwrap(), h("a"));
        assert_eq!(normalize_orbit(&orbit(&h("b")).unwrap()).unwrap(), h("a"));
        assert_eq!(normalize_orbit(&orbit(&h("a + b")).unwrap()).unwrap(), h("a"));
        assert_eq!(
            normalize_orbit(&orbit(&h("a*b")).unwrap()),
            Err(ClassifyError::NotNormalizable)
        );
    }

    #[test]
    fn orbit_parameter_examples() {
        assert!(orbit_generates_parameter_ideal(&h("a")).unwrap());
        assert!(!orbit_generates_parameter_ideal(&h("a*b")).unwrap());
        assert!(!orbit_generates_parameter_ideal(&h("a^2 + a*b + b^2")).unwrap());
        assert_eq!(
            orbit_generates_parameter_ideal(&HomogPoly::zero(3)),
            Err(ClassifyError::ZeroInput)
        );
    }

    #[test]
    fn closure_examples() {
        let cert = orbit_ideal_is_steenrod_closed(&h("a")).unwrap().unwrap();
        assert_eq!(
            (cert.sq1.lambda1, cert.sq1.lambda2, cert.sq1.nu1, cert.sq1.nu2),
            (true, false, false, false)
        );
        assert!(cert.verify());
        let cert = orbit_ideal_is_steenrod_closed(&h("b^2")).unwrap().unwrap();
        assert_eq!(cert.v, h("a^2"));
        assert!(cert.verify());
        // a^3 + b^3 + (a + b)^3 = a^2 b + a b^2, so the orbit of a^3 is not a parameter ideal.
        assert!(!orbit_generates_parameter_ideal(&h("a^3")).unwrap());
        assert!(matches!(
            orbit_ideal_is_steenrod_closed(&h("a^3")),
            Err(ClassifyError::NotOrbitParameter(_))
        ));
        assert!(!orbit_generates_closed_parameter_ideal(&h("a^3")).unwrap());
        assert!(orbit_generates_closed_parameter_ideal(&h("a^4 + b^4")).unwrap());
        assert!(matches!(
            orbit_ideal_is_steenrod_closed(&h("a*b")),
            Err(ClassifyError::NotOrbitParameter(_))
        ));
    }

    #[test]
    fn orbit_generator_examples() {
        let ideal = |gens: &[&str]| GradedIdeal::parse(gens).unwrap();
        assert_eq!(orbit_generator(&ideal(&["a", "b"])), Some(h("b")));
        assert_eq!(orbit_generator(&ideal(&["a^4", "b^4"])), Some(h("b^4")));
        assert_eq!(orbit_generator(&ideal(&["a^3", "b^4"])), None);
        assert_eq!(orbit_generator(&ideal(&["a^2", "b^2"])), Some(h("b^2")));
        // span{a^3, b^3} is not phi-stable
        assert_eq!(orbit_generator(&ideal(&["a^3", "b^3"])), None);
    }

    #[test]
    fn square_orbit_examples() {
        assert_eq!(square_orbit(&h("a")), h("a^2"));
        assert_eq!(square_orbit(&h("a^3 + a^2*b")), h("a^6 + a^4*b^2"));
        let x = h("a^3 + a*b^2 + b^3");
        assert_eq!(square_orbit(&x).sqrt().unwrap(), x);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = orbit_ideal_is_steenrod_closed(&h("a^2")).unwrap().unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["v"], "a^2");
        assert_eq!(json["phi_v"], "b^2");
        assert_eq!(json["higher"][0]["k"], 2);
    }
}
