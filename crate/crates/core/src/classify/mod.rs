//! Orbit-generated parameter ideals and the searches built on them.
//!
//! An orbit `C3 x` generates a parameter ideal exactly when `x + phi(x) +
//! phi^2(x) = 0` and `x, phi(x)` are coprime; the ideal is then `<x, phi(x)>`.
//! [`search_degree`] looks for the Steenrod-closed ones in a fixed degree,
//! [`enumerate_single_degree_ideals`] runs through every two-dimensional space
//! of forms of one degree, and [`admissible_pairs`] lists the degree pairs that
//! Steenrod-closed invariant parameter ideals may have.

mod degrees;
mod orbit;
pub mod proof;
mod search;
mod single_degree;

use thiserror::Error;

pub use degrees::{
    admissible_pairs, family_c_count, pair_density, pairs_to_csv, DegreePair, Family,
};
pub use orbit::{
    normalize_orbit, orbit_generates_closed_parameter_ideal, orbit_generates_parameter_ideal, orbit_generator, orbit_ideal_is_steenrod_closed, p_map,
    sq1_coefficients, square_orbit, OrbitIdealCertificate, PMapValue, Sq1Coefficients,
    SqCertificate,
};
pub use search::{search_degree, DEFAULT_SEARCH_CAP, MAX_SEARCH_DEGREE, search_degrees, ClassificationReport, SearchConfig, Survivor};
pub use single_degree::{
    enumerate_single_degree_ideals, enumerate_single_degree_ideals_with_cap,
    gaussian_binomial_2, SingleDegreeIdeal, SINGLE_DEGREE_CAP,
};

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("operation requires a nonzero form")]
    ZeroInput,
    #[error("the orbit does not generate a parameter ideal")]
    NotNormalizable,
    #[error("the orbit of {0} does not generate a parameter ideal")]
    NotOrbitParameter(String),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("degree must be at least 1")]
    ZeroDegree,
}

impl From<PolyError> for ClassifyError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::DegreeCap { degree, cap } => ClassifyError::DegreeCap { degree, cap },
            _ => ClassifyError::ZeroInput,
        }
    }
}
