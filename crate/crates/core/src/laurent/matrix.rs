use std::fmt;

use num_bigint::BigInt;

use super::poly::{LaurentPoly, Ring};
use super::modular::{det_bounds, det_multimodular};
use super::sparse::eliminate_units;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Dense matrix over the Laurent ring, row-major.
/// Below this size Bareiss elimination is cheaper than evaluation.
const MODULAR_DET_MIN_DIM: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    /// Integer matrix embedded as constant polynomials.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), c, |i, j| LaurentPoly::constant(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn ring(&self) -> Ring {
        if self.entries.iter().all(|e| e.is_integral()) {
            Ring::Int
        } else {
            Ring::Rat
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        let cell = &mut out.entries[i * other.cols + j];
                        *cell = &*cell + &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension("shape mismatch in add".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension("shape mismatch in sub".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &LaurentPoly) -> PolyMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Exact determinant: unit pivots are eliminated sparsely first, the
    /// remainder goes through fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<LaurentPoly> {
        self.det_budgeted(&Budget::unlimited())
    }

    pub fn det_budgeted(&self, budget: &Budget) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let red = eliminate_units(self, budget)?;
        if red.rest.rows() < MODULAR_DET_MIN_DIM {
            return Ok(&red.factor * &red.rest.bareiss_det(budget)?);
        }
        // the remainder has fewer rows but wider entries; the original
        // usually gives the tighter window, shifted by the unit factor
        let (Ok(own), Ok(outer)) = (det_bounds(&red.rest), det_bounds(self)) else {
            return Ok(LaurentPoly::zero());
        };
        let shift = red.factor.min_exp().expect("unit factor");
        let bounds = match (own, outer) {
            (Some(a), Some(b)) => a.meet(b.shifted(-shift)),
            (Some(a), None) => a,
            _ => return Ok(&red.factor * &red.rest.bareiss_det(budget)?),
        };
        Ok(&red.factor * &det_multimodular(&red.rest, bounds, budget)?)
    }

    pub(crate) fn bareiss_det(&self, budget: &Budget) -> Result<LaurentPoly> {
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut a: Vec<Vec<LaurentPoly>> = self.to_rows();
        let mut prev = LaurentPoly::one();
        let mut negate = false;
        for k in 0..n {
            budget.check()?;
            // smallest nonzero pivot in column k keeps the intermediate entries short
            let pivot = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (a[i][k].span().unwrap(), a[i][k].term_count(), a[i][k].height_bits()));
            let Some(p) = pivot else {
                return Ok(LaurentPoly::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let akk = &pivot_row[k];
            for row in rest.iter_mut() {
                let aik = row[k].clone();
                for j in k + 1..n {
                    let mut v = akk * &row[j];
                    if !aik.is_zero() && !pivot_row[j].is_zero() {
                        v = v - &aik * &pivot_row[j];
                    }
                    row[j] = if prev.is_one() {
                        v
                    } else {
                        v.div_exact(&prev).expect("Bareiss division is exact")
                    };
                }
                row[k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank over Q(t) by fraction-free elimination to row echelon form.
    /// Shares no code with the Euclidean echelon used for kernels, so it
    /// serves as an independent check.
    pub fn rank_fraction_free(&self, budget: &Budget) -> Result<usize> {
        let red = eliminate_units(self, budget)?;
        Ok(red.eliminated + red.rest.bareiss_rank(budget)?)
    }

    fn bareiss_rank(&self, budget: &Budget) -> Result<usize> {
        let (n, m) = (self.rows, self.cols);
        let mut a: Vec<Vec<LaurentPoly>> = self.to_rows();
        let mut prev = LaurentPoly::one();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            budget.check()?;
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let arc = &pivot_row[c];
            for row in rest.iter_mut() {
                let aic = row[c].clone();
                for j in c + 1..m {
                    let mut v = arc * &row[j];
                    if !aic.is_zero() && !pivot_row[j].is_zero() {
                        v = v - &aic * &pivot_row[j];
                    }
                    row[j] = if prev.is_one() {
                        v
                    } else {
                        v.div_exact(&prev).expect("fraction-free division is exact")
                    };
                }
                row[c] = LaurentPoly::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        Ok(r)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Scales every entry by the integer `c`.
    pub fn scale_int(&self, c: &BigInt) -> PolyMatrix {
        self.map(|a| a.scale_int(c))
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
