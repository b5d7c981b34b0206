//! Dense linear algebra over F2 on packed bit rows.
//!
//! Elimination is always augmented: every reduced row remembers which input
//! rows sum to it, so membership answers come with a certificate and the
//! dependencies among the inputs fall out as a kernel basis.

use thiserror::Error;

use crate::bits::BitRow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("row width mismatch: matrix has width {expected}, vector has {found}")]
    WidthMismatch { expected: usize, found: usize },
}

/// Rows of a common width. Row `i` is also read as the image of basis vector `i`
/// when the matrix stands for a linear map (see [`kernel`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitRow>,
}

impl BitMatrix {
    pub fn new(width: usize) -> Self {
        BitMatrix {
            width,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(width: usize, rows: Vec<BitRow>) -> Self {
        for row in &rows {
            assert_eq!(row.len(), width, "row width mismatch");
        }
        BitMatrix { width, rows }
    }

    pub fn identity(width: usize) -> Self {
        BitMatrix::from_rows(width, (0..width).map(|i| BitRow::unit(width, i)).collect())
    }

    pub fn push(&mut self, row: BitRow) {
        assert_eq!(row.len(), self.width, "row width mismatch");
        self.rows.push(row);
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rref(&self) -> RowEchelon {
        let mut ech = RowEchelon::empty(self.width, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            ech.insert(row.clone(), BitRow::unit(self.rows.len(), i));
        }
        ech.finish();
        ech
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }
}

/// Reduced row-echelon form: pivots are the lowest set bit of each row, rows
/// are sorted by pivot, and every pivot column is zero outside its own row.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    width: usize,
    source_count: usize,
    rows: Vec<BitRow>,
    pivots: Vec<usize>,
    combos: Vec<BitRow>,
    dependencies: Vec<BitRow>,
}

impl RowEchelon {
    fn empty(width: usize, source_count: usize) -> Self {
        RowEchelon {
            width,
            source_count,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            dependencies: Vec::new(),
        }
    }

    fn reduce_in_place(&self, v: &mut BitRow, combo: &mut BitRow) {
        for ((row, &p), c) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            if v.get(p) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
    }

    fn insert(&mut self, mut v: BitRow, mut combo: BitRow) {
        self.reduce_in_place(&mut v, &mut combo);
        let Some(p) = v.lowest_one() else {
            self.dependencies.push(combo);
            return;
        };
        for (row, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row.get(p) {
                row.xor_assign(&v);
                c.xor_assign(&combo);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        self.combos.push(combo);
    }

    fn finish(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        self.rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        self.combos = order.iter().map(|&i| self.combos[i].clone()).collect();
        self.pivots = order.iter().map(|&i| self.pivots[i]).collect();
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// For each reduced row, the input rows (as a bit set) that sum to it.
    pub fn combinations(&self) -> &[BitRow] {
        &self.combos
    }

    /// Basis of the linear relations among the input rows.
    pub fn dependencies(&self) -> &[BitRow] {
        &self.dependencies
    }

    /// The reduced rows as a matrix.
    pub fn matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.width, self.rows.clone())
    }

    /// Canonical remainder of `v` modulo the row space (zero at every pivot),
    /// and the input rows whose sum was subtracted.
    pub fn reduce(&self, v: &BitRow) -> Result<(BitRow, BitRow), LinalgError> {
        self.check_width(v)?;
        let mut rem = v.clone();
        let mut combo = BitRow::zeros(self.source_count);
        self.reduce_in_place(&mut rem, &mut combo);
        Ok((rem, combo))
    }

    /// Input row indices summing to `v`, or `None` if `v` is outside the row space.
    pub fn member(&self, v: &BitRow) -> Result<Option<Vec<usize>>, LinalgError> {
        let (rem, combo) = self.reduce(v)?;
        Ok(rem.is_zero().then(|| combo.ones().collect()))
    }

    pub fn contains(&self, v: &BitRow) -> Result<bool, LinalgError> {
        Ok(self.reduce(v)?.0.is_zero())
    }

    fn check_width(&self, v: &BitRow) -> Result<(), LinalgError> {
        if v.len() == self.width {
            Ok(())
        } else {
            Err(LinalgError::WidthMismatch {
                expected: self.width,
                found: v.len(),
            })
        }
    }
}

/// Null space of the linear map whose row `i` is the image of basis vector `i`:
/// all coefficient vectors `c` with `sum c_i * row_i = 0`. Rows of the result
/// have width `map.len()` and are in reduced row-echelon form.
pub fn kernel(map: &BitMatrix) -> BitMatrix {
    let deps = map.rref().dependencies().to_vec();
    BitMatrix::from_rows(map.len(), deps).rref().matrix()
}

/// Basis of the intersection of two row spaces of equal width.
pub fn intersection(x: &BitMatrix, y: &BitMatrix) -> BitMatrix {
    assert_eq!(x.width(), y.width(), "row width mismatch");
    // Relations sum(c_i x_i) + sum(d_j y_j) = 0 give the common vectors sum(c_i x_i).
    let mut stacked = x.clone();
    for row in y.rows() {
        stacked.push(row.clone());
    }
    let mut out = BitMatrix::new(x.width());
    for dep in stacked.rref().dependencies() {
        let mut v = BitRow::zeros(x.width());
        for i in dep.ones().filter(|&i| i < x.len()) {
            v.xor_assign(&x.rows()[i]);
        }
        out.push(v);
    }
    out.rref().matrix()
}
