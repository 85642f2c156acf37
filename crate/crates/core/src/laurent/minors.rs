use super::gcd::gcd2_z;
use super::matrix::PolyMatrix;
use super::poly::LaurentPoly;
use super::sparse::unit_inverse;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Gcd over Z[t^{±1}] of all `size x size` minors (0 if they all vanish).
///
/// Entries that are units `±t^k` are eliminated first: clearing the row and
/// column of a unit pivot lowers the minor size by one without changing the
/// gcd. Whatever is left is enumerated directly.
pub fn minors_gcd(m: &PolyMatrix, size: usize) -> Result<LaurentPoly> {
    minors_gcd_budgeted(m, size, &Budget::unlimited())
}

pub fn minors_gcd_budgeted(m: &PolyMatrix, size: usize, budget: &Budget) -> Result<LaurentPoly> {
    if size > m.rows().min(m.cols()) {
        return Err(Error::MinorSize { size, rows: m.rows(), cols: m.cols() });
    }
    if !m.entries().iter().all(|e| e.is_integral()) {
        return Err(Error::NotIntegral);
    }
    let mut a = m.to_rows();
    let mut s = size;
    loop {
        budget.check()?;
        if s == 0 {
            return Ok(LaurentPoly::one());
        }
        drop_zero_lines(&mut a);
        let cols = a.first().map_or(0, |r| r.len());
        if a.len() < s || cols < s {
            return Ok(LaurentPoly::zero());
        }
        let Some((p, c)) = find_unit(&a) else {
            break;
        };
        let inv = unit_inverse(&a[p][c]);
        let pivot_row = a[p].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == p || row[c].is_zero() {
                continue;
            }
            let q = &row[c] * &inv;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    let d = &q * y;
                    *x = &*x - &d;
                }
            }
        }
        a.remove(p);
        for row in a.iter_mut() {
            row.remove(c);
        }
        s -= 1;
    }

    let rows = a.len();
    let cols = a[0].len();
    let mut acc = LaurentPoly::zero();
    for rs in Combinations::new(rows, s) {
        for cs in Combinations::new(cols, s) {
            budget.check()?;
            let minor = PolyMatrix::from_fn(s, s, |i, j| a[rs[i]][cs[j]].clone()).det_budgeted(budget)?;
            if minor.is_zero() {
                continue;
            }
            acc = gcd2_z(&acc, &minor);
            if acc.is_one() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

fn find_unit(a: &[Vec<LaurentPoly>]) -> Option<(usize, usize)> {
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.is_unit_z() {
                return Some((i, j));
            }
        }
    }
    None
}

fn drop_zero_lines(a: &mut Vec<Vec<LaurentPoly>>) {
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    if a.is_empty() {
        return;
    }
    let cols = a[0].len();
    let keep: Vec<usize> = (0..cols).filter(|&j| a.iter().any(|row| !row[j].is_zero())).collect();
    if keep.len() < cols {
        for row in a.iter_mut() {
            *row = keep.iter().map(|&j| std::mem::take(&mut row[j])).collect();
        }
    }
}

/// Lexicographic k-subsets of 0..n.
pub(crate) struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}
