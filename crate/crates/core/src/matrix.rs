//! Dense matrices over an exact field, incremental echelon forms, and
//! fraction-free (Bareiss) rank over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over `F`.
#[derive(Clone, Debug)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> PartialEq for ExactMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { field, rows, cols, entries })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        ExactMatrix { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Invalid(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            entries.extend(r);
        }
        Ok(ExactMatrix { field, rows: n, cols, entries })
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, entries }
    }

    /// Entrywise image under a map into another field.
    pub fn map_field<G: Field>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<ExactMatrix<G>> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { field: target, rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (a, b)| {
                    self.field.add(&acc, &self.field.mul(a, b))
                })
            })
            .collect()
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.field.rank_of_rows(self.row_vecs(), self.cols)
    }

    pub fn rref(&self) -> Rref<F> {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for r in self.row_vecs() {
            ech.insert(r);
        }
        ech.into_rref()
    }

    /// Basis of `{v : self * v = 0}` read off the reduced row echelon form:
    /// one vector per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        self.rref().kernel_basis()
    }
}

/// Incrementally maintained row echelon form. Rows are stored as inserted
/// (after reduction); pivots are unique per column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivot_cols: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new(), pivot_cols: Vec::new(), row_of_col: vec![None; cols] }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Rows in insertion order; each has a distinct pivot column.
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// The whole space `F^cols`.
    pub fn full(field: F, cols: usize) -> Self {
        let mut ech = Echelon::new(field, cols);
        for c in 0..cols {
            let mut v = vec![ech.field.zero(); cols];
            v[c] = ech.field.one();
            ech.row_of_col[c] = Some(c);
            ech.pivot_cols.push(c);
            ech.rows.push(v);
        }
        ech
    }

    /// Reduces `v` against the current rows; if something survives it becomes
    /// a new row. Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        if self.is_full() {
            return false;
        }
        self.field.prepare_row(&mut v);
        for c in 0..self.cols {
            if self.field.is_zero(&v[c]) {
                continue;
            }
            match self.row_of_col[c] {
                Some(r) => self.field.eliminate(&mut v, &self.rows[r], c),
                None => {
                    self.field.make_pivot_row(&mut v, c);
                    self.row_of_col[c] = Some(self.rows.len());
                    self.pivot_cols.push(c);
                    self.rows.push(v);
                    return true;
                }
            }
        }
        false
    }

    /// Whether `v` lies in the span of the rows.
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut v = v.to_vec();
        self.field.prepare_row(&mut v);
        for c in 0..self.cols {
            if self.field.is_zero(&v[c]) {
                continue;
            }
            match self.row_of_col[c] {
                Some(r) => self.field.eliminate(&mut v, &self.rows[r], c),
                None => return false,
            }
        }
        true
    }

    /// Back-substitutes to the reduced row echelon form with unit pivots,
    /// rows sorted by pivot column.
    pub fn into_rref(self) -> Rref<F> {
        let Echelon { field, cols, mut rows, pivot_cols, .. } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&r| pivot_cols[r]);
        let mut sorted: Vec<Vec<F::Elem>> = Vec::with_capacity(rows.len());
        let mut pivots = Vec::with_capacity(rows.len());
        for &r in &order {
            sorted.push(std::mem::take(&mut rows[r]));
            pivots.push(pivot_cols[r]);
        }
        // Clear above each pivot, last pivot first.
        for k in (0..sorted.len()).rev() {
            let c = pivots[k];
            let (above, rest) = sorted.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                field.eliminate(row, pivot_row, c);
            }
        }
        for (row, &c) in sorted.iter_mut().zip(&pivots) {
            let inv = field.inv(&row[c]).expect("pivot entry is nonzero");
            for x in row.iter_mut() {
                if !field.is_zero(x) {
                    *x = field.mul(x, &inv);
                }
            }
        }
        Rref { field, cols, rows: sorted, pivots }
    }
}

/// Reduced row echelon form: unit pivots, zeros above and below each pivot,
/// rows ordered by pivot column. Canonical for the row space.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of a vector of the row space in the basis `rows()`.
    /// Because pivots are unit and isolated these are just the pivot entries.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = f.neg(&row[free]);
                }
                v
            })
            .collect()
    }
}

/// Rank of an integer matrix by fraction-free Gaussian elimination. Every
/// intermediate entry is a minor of the input, so the divisions are exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = piv * &row[j] - &f * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    rank
}
