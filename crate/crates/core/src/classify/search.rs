use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::orbit::{closure_certificate, OrbitIdealCertificate};
use super::ClassifyError;
use crate::bits::BitRow;
use crate::equivariance::{orbit_sum, orbit_sum_kernel, phi};
use crate::linalg::{kernel, BitMatrix};
use crate::poly::HomogPoly;
use crate::unipoly::coprime;

pub const DEFAULT_SEARCH_CAP: u32 = 20;
/// Candidate counts are `u64`, so no configuration searches beyond this.
pub const MAX_SEARCH_DEGREE: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub degree_cap: u32,
    pub workers: usize,
    /// Enumerate only the `p(v) = (1, 0)` slice of `ker(1 + phi + phi^2)`
    /// instead of every `v` with `p(v) = (1, 0)`.
    pub kernel_prefilter: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree_cap: DEFAULT_SEARCH_CAP,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            kernel_prefilter: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survivor {
    pub v: HomogPoly,
    pub certificate: OrbitIdealCertificate,
}

/// Counts are monotone: `candidates >= after_kernel >= after_coprime >= survivors`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub degree: u32,
    /// Forms of degree `n` with `p(v) = (1, 0)`: `2^(n-1)`.
    pub candidates: u64,
    /// Of those, the ones with vanishing orbit sum.
    pub after_kernel: u64,
    pub after_coprime: u64,
    pub survivors: Vec<Survivor>,
    pub elapsed_ms: u64,
    pub config: SearchConfig,
}

impl ClassificationReport {
    pub fn survivor_forms(&self) -> Vec<HomogPoly> {
        self.survivors.iter().map(|s| s.v.clone()).collect()
    }
}

/// Affine slice `v0 + span(directions)` of `ker(1 + phi + phi^2)` in degree `n`
/// cut out by `p(v) = (1, 0)`; `None` when the slice is empty.
fn kernel_slice(n: u32) -> Option<(BitRow, Vec<BitRow>)> {
    let width = n as usize + 1;
    let basis = orbit_sum_kernel(n);
    let boundary = |r: &BitRow| BitRow::from_bits([r.get(n as usize), r.get(0)]);
    let q = BitMatrix::from_rows(2, basis.rows().iter().map(boundary).collect());
    let combine = |indices: &mut dyn Iterator<Item = usize>| {
        let mut v = BitRow::zeros(width);
        for i in indices {
            v.xor_assign(&basis.rows()[i]);
        }
        v
    };
    let particular = q
        .rref()
        .member(&BitRow::from_bits([true, false]))
        .expect("width 2")?;
    let v0 = combine(&mut particular.into_iter());
    let directions = kernel(&q)
        .rows()
        .iter()
        .map(|c| combine(&mut c.ones()))
        .collect();
    Some((v0, directions))
}

#[derive(Default)]
struct Tally {
    after_kernel: u64,
    after_coprime: u64,
    survivors: Vec<Survivor>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.after_kernel += other.after_kernel;
        self.after_coprime += other.after_coprime;
        self.survivors.extend(other.survivors);
        self
    }

    fn visit(mut self, v: HomogPoly, check_kernel: bool) -> Tally {
        if check_kernel && !orbit_sum(&v).is_zero() {
            return self;
        }
        self.after_kernel += 1;
        if !coprime(&v, &phi(&v)).expect("v has a nonzero a^n term") {
            return self;
        }
        self.after_coprime += 1;
        if let Some(certificate) = closure_certificate(&v) {
            self.survivors.push(Survivor { v, certificate });
        }
        self
    }
}

/// All `v` of degree `n` with `p(v) = (1, 0)` whose orbit generates a
/// Steenrod-closed parameter ideal. Every qualifying orbit has exactly one
/// such `v`, so each orbit is reported once. Survivors are sorted, so the
/// report does not depend on the worker count.
pub fn search_degree(n: u32, config: &SearchConfig) -> Result<ClassificationReport, ClassifyError> {
    if n == 0 {
        return Err(ClassifyError::ZeroDegree);
    }
    let cap = config.degree_cap.min(MAX_SEARCH_DEGREE);
    if n > cap {
        return Err(ClassifyError::DegreeCap { degree: n, cap });
    }
    let start = Instant::now();
    let width = n as usize + 1;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .expect("thread pool");
    let tally = pool.install(|| {
        if config.kernel_prefilter {
            let Some((v0, directions)) = kernel_slice(n) else {
                return Tally::default();
            };
            let size = 1usize << directions.len();
            (0..size)
                .into_par_iter()
                .with_min_len(64)
                .fold(Tally::default, |tally, t| {
                    let mut v = v0.clone();
                    for (i, d) in directions.iter().enumerate() {
                        if t >> i & 1 == 1 {
                            v.xor_assign(d);
                        }
                    }
                    tally.visit(HomogPoly::new(n, v), false)
                })
                .reduce(Tally::default, Tally::merge)
        } else {
            let size = 1usize << (n - 1);
            (0..size)
                .into_par_iter()
                .with_min_len(64)
                .fold(Tally::default, |tally, t| {
                    // bit n is 1, bit 0 is 0, bits 1..n-1 come from t
                    let mut v = BitRow::from_u64(width, (t as u64) << 1);
                    v.set(n as usize, true);
                    tally.visit(HomogPoly::new(n, v), true)
                })
                .reduce(Tally::default, Tally::merge)
        }
    });
    let mut survivors = tally.survivors;
    survivors.sort_by(|x, y| x.v.cmp(&y.v));
    Ok(ClassificationReport {
        degree: n,
        candidates: 1u64 << (n - 1),
        after_kernel: tally.after_kernel,
        after_coprime: tally.after_coprime,
        survivors,
        elapsed_ms: start.elapsed().as_millis() as u64,
        config: config.clone(),
    })
}

pub fn search_degrees(
    degrees: impl IntoIterator<Item = u32>,
    config: &SearchConfig,
) -> Result<Vec<ClassificationReport>, ClassifyError> {
    degrees.into_iter().map(|n| search_degree(n, config)).collect()
}
