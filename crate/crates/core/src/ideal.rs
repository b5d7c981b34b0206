//! Homogeneous ideals of `F2[a,b]`, handled one degree at a time.
//!
//! The degree-`d` component of `J = <g_1, ..., g_k>` is spanned by the
//! monomial multiples `a^s b^(d - deg g - s) g`, which are just shifted copies
//! of the generator's coefficient row. Membership, equality and the minimal
//! generator module `J / <a,b>J` all reduce to F2 elimination on those rows.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitRow;
use crate::equivariance::{invariants_of_degree, phi, reynolds};
use crate::linalg::{intersection, BitMatrix, RowEchelon};
use crate::parse::{parse_with_cap, render, ParseError};
use crate::poly::{BiPoly, HomogPoly, PolyError};
use crate::steenrod::total_sq_homog;
use crate::unipoly::gcd_homog;
use crate::DEFAULT_DEGREE_CAP;

/// Degree bound used by [`equal_ideals`] when an input is not a parameter ideal.
pub const EQUALITY_FALLBACK_BOUND: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("generator {index} is a nonzero constant; generators must have positive degree")]
    ConstantGenerator { index: usize },
    #[error("generator {index} is not homogeneous (it has components in degrees {degrees:?})")]
    Inhomogeneous { index: usize, degrees: Vec<u32> },
    #[error("expected 2 minimal generators, found {count}")]
    GeneratorCount { count: usize },
    #[error("the ideal is not a parameter ideal")]
    NotParameter,
    #[error("the ideal is not C3-invariant")]
    NotInvariant,
    #[error("generator {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The reduced degree-`d` component of an ideal.
#[derive(Debug)]
pub struct Component {
    degree: u32,
    echelon: RowEchelon,
    /// For each input row: (generator index, a-exponent of the multiplier).
    sources: Vec<(usize, u32)>,
}

impl Component {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &RowEchelon {
        &self.echelon
    }

    /// Reduced basis as a matrix of coefficient rows.
    pub fn basis(&self) -> BitMatrix {
        self.echelon.matrix()
    }

    pub fn contains(&self, f: &HomogPoly) -> bool {
        assert_eq!(f.degree(), self.degree, "degree mismatch");
        self.echelon.contains(f.coeffs()).expect("widths agree by degree")
    }
}

fn build_component(generators: &[HomogPoly], d: u32, below: bool) -> Component {
    let width = d as usize + 1;
    let mut rows = BitMatrix::new(width);
    let mut sources = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        let e = g.degree();
        if e > d || (below && e == d) {
            continue;
        }
        for shift in 0..=(d - e) {
            rows.push(g.coeffs().shifted(shift as usize, width));
            sources.push((gi, shift));
        }
    }
    Component {
        degree: d,
        echelon: rows.rref(),
        sources,
    }
}

/// `f = sum_i coefficients[i] * generator_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub coefficients: Vec<BiPoly>,
}

impl MembershipCertificate {
    pub fn combine(&self, generators: &[HomogPoly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (c, g) in self.coefficients.iter().zip(generators) {
            out += &c.mul_homog(g);
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(render).collect()
    }
}

/// JSON form `{"generators": ["a^3", "b^4"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub generators: Vec<String>,
}

/// A homogeneous ideal with positive-degree homogeneous generators.
///
/// Components are computed on demand and cached. Concurrent readers see a
/// degree either absent or fully reduced; racing writers compute the same value.
#[derive(Debug)]
pub struct GradedIdeal {
    generators: Vec<HomogPoly>,
    cache: RwLock<BTreeMap<u32, Arc<Component>>>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        GradedIdeal::from_forms_unchecked(self.generators.clone())
    }
}

impl GradedIdeal {
    pub fn new(generators: Vec<BiPoly>) -> Result<Self, IdealError> {
        let mut forms = Vec::with_capacity(generators.len());
        for (index, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(IdealError::ZeroGenerator { index });
            }
            let Some(form) = g.as_homogeneous() else {
                return Err(IdealError::Inhomogeneous {
                    index,
                    degrees: g.components().map(HomogPoly::degree).collect(),
                });
            };
            forms.push(form.clone());
        }
        GradedIdeal::from_forms(forms)
    }

    pub fn from_forms(generators: Vec<HomogPoly>) -> Result<Self, IdealError> {
        if generators.is_empty() {
            return Err(IdealError::NoGenerators);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(IdealError::ZeroGenerator { index });
            }
            if g.degree() == 0 {
                return Err(IdealError::ConstantGenerator { index });
            }
        }
        Ok(GradedIdeal::from_forms_unchecked(generators))
    }

    fn from_forms_unchecked(generators: Vec<HomogPoly>) -> Self {
        GradedIdeal {
            generators,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    /// Parse each generator with the given degree cap.
    pub fn parse_with_cap<S: AsRef<str>>(texts: &[S], cap: u32) -> Result<Self, IdealError> {
        let polys = texts
            .iter()
            .enumerate()
            .map(|(index, t)| {
                parse_with_cap(t.as_ref(), cap).map_err(|source| IdealError::Parse { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        GradedIdeal::new(polys)
    }

    pub fn parse<S: AsRef<str>>(texts: &[S]) -> Result<Self, IdealError> {
        GradedIdeal::parse_with_cap(texts, DEFAULT_DEGREE_CAP)
    }

    pub fn from_spec(spec: &IdealSpec) -> Result<Self, IdealError> {
        GradedIdeal::parse(&spec.generators)
    }

    pub fn to_spec(&self) -> IdealSpec {
        IdealSpec {
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn generators(&self) -> &[HomogPoly] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(HomogPoly::degree).collect()
    }

    pub fn min_generator_degree(&self) -> u32 {
        self.generators.iter().map(HomogPoly::degree).min().expect("nonempty")
    }

    /// Reduced basis of the degree-`d` component, cached.
    pub fn component(&self, d: u32) -> Arc<Component> {
        if let Some(c) = self.cache.read().expect("cache lock").get(&d) {
            return Arc::clone(c);
        }
        let built = Arc::new(build_component(&self.generators, d, false));
        let mut cache = self.cache.write().expect("cache lock");
        Arc::clone(cache.entry(d).or_insert(built))
    }

    /// `(<a,b> J)_d`: the part of `J_d` generated from strictly lower degrees.
    pub fn decomposable_component(&self, d: u32) -> Component {
        build_component(&self.generators, d, true)
    }

    /// `dim F2[a,b]_d - dim J_d`.
    pub fn quotient_dim(&self, d: u32) -> usize {
        d as usize + 1 - self.component(d).dim()
    }

    fn certify_form(&self, f: &HomogPoly, coefficients: &mut [BiPoly]) -> bool {
        let d = f.degree();
        let comp = self.component(d);
        let Some(indices) = comp.echelon.member(f.coeffs()).expect("widths agree by degree") else {
            return false;
        };
        for i in indices {
            let (gi, shift) = comp.sources[i];
            let rest = d - self.generators[gi].degree() - shift;
            coefficients[gi].add_homog(&HomogPoly::monomial(shift, rest));
        }
        true
    }

    /// Membership of every homogeneous component of `f`, with coefficients
    /// `c_i` such that `f = sum c_i g_i`.
    pub fn contains(&self, f: &BiPoly) -> Option<MembershipCertificate> {
        let mut coefficients = vec![BiPoly::zero(); self.generators.len()];
        for g in f.components() {
            if !self.certify_form(g, &mut coefficients) {
                return None;
            }
        }
        Some(MembershipCertificate { coefficients })
    }

    pub fn contains_form(&self, f: &HomogPoly) -> bool {
        f.is_zero() || self.component(f.degree()).contains(f)
    }

    /// Minimal generating set, chosen greedily from the listed generators in
    /// ascending degree.
    pub fn minimal_generators(&self) -> Vec<HomogPoly> {
        let mut sorted = self.generators.clone();
        sorted.sort_by_key(HomogPoly::degree);
        let mut kept: Vec<HomogPoly> = Vec::new();
        for g in sorted {
            let redundant = !kept.is_empty()
                && build_component(&kept, g.degree(), false)
                    .echelon
                    .contains(g.coeffs())
                    .expect("widths agree by degree");
            if !redundant {
                kept.push(g);
            }
        }
        kept
    }

    pub fn minimalized(&self) -> GradedIdeal {
        GradedIdeal::from_forms_unchecked(self.minimal_generators())
    }

    fn generator_pair(&self) -> Result<[HomogPoly; 2], IdealError> {
        let gens = if self.generators.len() == 2 {
            self.generators.clone()
        } else {
            self.minimal_generators()
        };
        match <[HomogPoly; 2]>::try_from(gens) {
            Ok(pair) => Ok(pair),
            Err(gens) => Err(IdealError::GeneratorCount { count: gens.len() }),
        }
    }

    /// Two generators (after minimalization, if more are listed) that are coprime.
    pub fn is_parameter_ideal(&self) -> Result<bool, IdealError> {
        let [x, y] = self.generator_pair()?;
        let coprime = gcd_homog(&x, &y)?.degree() == 0;
        debug_assert_eq!(
            coprime,
            GradedIdeal::from_forms_unchecked(vec![x.clone(), y.clone()]).has_finite_quotient(),
            "gcd and finite-quotient parameter tests disagree on <{x}, {y}>"
        );
        Ok(coprime)
    }

    /// For a two-generator ideal of degrees `d1, d2`: the quotient vanishes in
    /// degree `d1 + d2 - 1`. This holds exactly when the generators are coprime.
    pub fn has_finite_quotient(&self) -> bool {
        let Ok([x, y]) = self.generator_pair() else {
            return false;
        };
        let top = x.degree() + y.degree() - 1;
        GradedIdeal::from_forms_unchecked(vec![x, y]).quotient_dim(top) == 0
    }

    /// `Sq(g) in J` for each generator. This is full closure: `Sq` is a ring
    /// homomorphism, so `Sq(sum f_i g_i) = sum Sq(f_i) Sq(g_i)`.
    pub fn steenrod_closure(&self) -> SteenrodClosure {
        let certificates: Vec<_> = self
            .generators
            .iter()
            .map(|g| self.contains(&total_sq_homog(g)))
            .collect();
        SteenrodClosure {
            closed: certificates.iter().all(Option::is_some),
            certificates,
        }
    }

    pub fn is_steenrod_closed(&self) -> bool {
        self.generators
            .iter()
            .all(|g| self.contains(&total_sq_homog(g)).is_some())
    }

    pub fn is_c3_invariant(&self) -> bool {
        self.generators.iter().all(|g| self.contains_form(&phi(g)))
    }

    /// Bases of `J / <a,b>J` per degree and the action of `phi` on them.
    pub fn cogenerators(&self) -> Result<CogeneratorModule, IdealError> {
        if !self.is_parameter_ideal()? {
            return Err(IdealError::NotParameter);
        }
        let mut degrees: Vec<u32> = self.generator_degrees();
        degrees.sort_unstable();
        degrees.dedup();
        let mut blocks = Vec::new();
        for d in degrees {
            let decomposable = self.decomposable_component(d);
            let remainders: Vec<BitRow> = self
                .component(d)
                .echelon
                .rows()
                .iter()
                .map(|r| decomposable.echelon.reduce(r).expect("widths agree").0)
                .collect();
            let reps = BitMatrix::from_rows(d as usize + 1, remainders).rref();
            if reps.rank() > 0 {
                blocks.push(CogeneratorBlock {
                    degree: d,
                    decomposable,
                    reps: reps.matrix().rref(),
                });
            }
        }
        let representatives: Vec<HomogPoly> = blocks
            .iter()
            .flat_map(|b| {
                b.reps
                    .rows()
                    .iter()
                    .map(move |r| HomogPoly::new(b.degree, r.clone()))
            })
            .collect();
        let action = self.is_c3_invariant().then(|| {
            let dim = representatives.len();
            let mut rows = Vec::with_capacity(dim);
            let mut offset = 0;
            for b in &blocks {
                for rep in b.reps.rows() {
                    let image = phi(&HomogPoly::new(b.degree, rep.clone()));
                    let (rem, _) = b.decomposable.echelon.reduce(image.coeffs()).expect("widths agree");
                    let coords = b
                        .reps
                        .member(&rem)
                        .expect("widths agree")
                        .expect("phi preserves J and <a,b>J");
                    let mut row = BitRow::zeros(dim);
                    for c in coords {
                        row.set(offset + c, true);
                    }
                    rows.push(row);
                }
                offset += b.reps.rank();
            }
            BitMatrix::from_rows(dim, rows)
        });
        Ok(CogeneratorModule {
            representatives,
            action,
        })
    }

    /// Whether `phi` acts trivially on `J / <a,b>J`.
    pub fn rep_type(&self) -> Result<RepType, IdealError> {
        let module = self.cogenerators()?;
        module.rep_type().ok_or(IdealError::NotInvariant)
    }

    /// Orbit sums of the cogenerator representatives when the action is
    /// trivial. They are invariant, represent the same classes, and so
    /// generate `J` by graded Nakayama. `None` when the action is nontrivial.
    pub fn invariant_generating_system(&self) -> Result<Option<[HomogPoly; 2]>, IdealError> {
        let module = self.cogenerators()?;
        match module.rep_type() {
            None => Err(IdealError::NotInvariant),
            Some(RepType::Nontrivial) => Ok(None),
            Some(RepType::Trivial) => {
                let forms: Vec<HomogPoly> = module
                    .representatives
                    .iter()
                    .map(|r| {
                        reynolds(&r.to_bipoly())
                            .homogeneous_of_degree(r.degree())
                            .expect("orbit sum of a form is a form")
                    })
                    .collect();
                let pair = <[HomogPoly; 2]>::try_from(forms)
                    .map_err(|f| IdealError::GeneratorCount { count: f.len() })?;
                Ok(Some(pair))
            }
        }
    }

    /// Whether some invariant form in `J` is part of a minimal generating
    /// pair, i.e. has nonzero class in `J / <a,b>J`.
    pub fn has_invariant_parameter(&self) -> Result<bool, IdealError> {
        if !self.is_parameter_ideal()? {
            return Err(IdealError::NotParameter);
        }
        let mut degrees = self.generator_degrees();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let common = intersection(&invariants_of_degree(d), &self.component(d).basis());
            let decomposable = self.decomposable_component(d);
            for row in common.rows() {
                if !decomposable.echelon.contains(row).expect("widths agree") {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

struct CogeneratorBlock {
    degree: u32,
    decomposable: Component,
    reps: RowEchelon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Trivial,
    Nontrivial,
}

/// `J / <a,b>J` with chosen representatives (reduced modulo `<a,b>J`, then
/// row-reduced within each degree) and, for invariant `J`, the matrix of `phi`:
/// row `i` holds the coordinates of `phi(rep_i)`.
#[derive(Debug, Clone)]
pub struct CogeneratorModule {
    pub representatives: Vec<HomogPoly>,
    pub action: Option<BitMatrix>,
}

impl CogeneratorModule {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for r in &self.representatives {
            *out.entry(r.degree()).or_default() += 1;
        }
        out
    }

    pub fn rep_type(&self) -> Option<RepType> {
        self.action.as_ref().map(|m| {
            if *m == BitMatrix::identity(self.dim()) {
                RepType::Trivial
            } else {
                RepType::Nontrivial
            }
        })
    }
}

/// Per-generator certificates for `Sq(g) in J`.
#[derive(Debug, Clone)]
pub struct SteenrodClosure {
    pub closed: bool,
    pub certificates: Vec<Option<MembershipCertificate>>,
}

/// Compare components in degrees `0..=bound`.
pub fn equal_ideals_up_to(j: &GradedIdeal, k: &GradedIdeal, bound: u32) -> bool {
    (0..=bound).all(|d| j.component(d).echelon.rows() == k.component(d).echelon.rows())
}

fn parameter_bound(j: &GradedIdeal) -> Option<u32> {
    match j.is_parameter_ideal() {
        Ok(true) => {
            let [x, y] = j.generator_pair().ok()?;
            Some(x.degree() + y.degree())
        }
        _ => None,
    }
}

/// Equality of ideals. For parameter ideals every component above
/// `d1 + d2 - 2` is full, so degrees up to the larger `d1 + d2` decide it.
/// Other inputs are compared up to [`EQUALITY_FALLBACK_BOUND`] with a warning.
pub fn equal_ideals(j: &GradedIdeal, k: &GradedIdeal) -> bool {
    match (parameter_bound(j), parameter_bound(k)) {
        (Some(bj), Some(bk)) => equal_ideals_up_to(j, k, bj.max(bk)),
        _ => {
            log::warn!(
                "equal_ideals on a non-parameter ideal; comparing up to degree {EQUALITY_FALLBACK_BOUND}"
            );
            equal_ideals_up_to(j, k, EQUALITY_FALLBACK_BOUND)
        }
    }
}
