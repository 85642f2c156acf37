use std::collections::{BTreeMap, BTreeSet};

use super::matrix::PolyMatrix;
use super::poly::LaurentPoly;
use crate::budget::Budget;
use crate::error::Result;

/// Result of clearing every unit pivot `±t^k` from a matrix.
pub(crate) struct UnitReduction {
    /// Product of the pivots, with the sign of the row and column moves.
    pub factor: LaurentPoly,
    /// What is left once no unit entry remains.
    pub rest: PolyMatrix,
    pub eliminated: usize,
}

/// Eliminates unit pivots in Markowitz order (fewest updates first) on a
/// sparse copy of `m`. Each step removes one row and one column and
/// multiplies the factor by the pivot, so that for square input
/// `det(m) = factor * det(rest)`, and in general
/// `rank(m) = eliminated + rank(rest)`.
///
/// Boundary matrices of twisted complexes are sums of a few signed
/// permutation matrices times powers of t, so most of the work happens here
/// with little fill-in, before any dense elimination.
pub(crate) fn eliminate_units(m: &PolyMatrix, budget: &Budget) -> Result<UnitReduction> {
    let (nr, nc) = m.shape();
    let mut rows: Vec<BTreeMap<usize, LaurentPoly>> = vec![BTreeMap::new(); nr];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nc];
    for i in 0..nr {
        for j in 0..nc {
            let x = &m[(i, j)];
            if !x.is_zero() {
                rows[i].insert(j, x.clone());
                cols[j].insert(i);
            }
        }
    }
    let mut alive_rows: BTreeSet<usize> = (0..nr).collect();
    let mut alive_cols: BTreeSet<usize> = (0..nc).collect();
    let mut factor = LaurentPoly::one();
    let mut negate = false;
    let mut eliminated = 0;

    loop {
        budget.check()?;
        let mut best: Option<(usize, usize, usize)> = None;
        for &i in &alive_rows {
            if best.is_some_and(|(s, _, _)| s == 0) {
                break;
            }
            let rl = rows[i].len();
            for (&j, x) in &rows[i] {
                if !x.is_unit_z() {
                    continue;
                }
                let score = (rl - 1) * (cols[j].len() - 1);
                if best.is_none_or(|(s, _, _)| score < s) {
                    best = Some((score, i, j));
                }
            }
        }
        let Some((_, p, c)) = best else {
            break;
        };

        let pos_p = alive_rows.range(..p).count();
        let pos_c = alive_cols.range(..c).count();
        if (pos_p + pos_c) % 2 == 1 {
            negate = !negate;
        }
        let pivot_row = std::mem::take(&mut rows[p]);
        let u = pivot_row[&c].clone();
        let inv = unit_inverse(&u);
        let targets: Vec<usize> = cols[c].iter().copied().filter(|&i| i != p).collect();
        for i in targets {
            let f = &rows[i][&c] * &inv;
            for (&j, v) in &pivot_row {
                let cur = rows[i].remove(&j).unwrap_or_else(LaurentPoly::zero);
                let next = cur - &f * v;
                if next.is_zero() {
                    cols[j].remove(&i);
                } else {
                    rows[i].insert(j, next);
                    cols[j].insert(i);
                }
            }
        }
        for &j in pivot_row.keys() {
            cols[j].remove(&p);
        }
        debug_assert!(cols[c].is_empty());
        alive_rows.remove(&p);
        alive_cols.remove(&c);
        factor = &factor * &u;
        eliminated += 1;
    }

    let ar: Vec<usize> = alive_rows.into_iter().collect();
    let ac: Vec<usize> = alive_cols.into_iter().collect();
    let rest = PolyMatrix::from_fn(ar.len(), ac.len(), |i, j| {
        rows[ar[i]].get(&ac[j]).cloned().unwrap_or_else(LaurentPoly::zero)
    });
    Ok(UnitReduction { factor: if negate { -factor } else { factor }, rest, eliminated })
}

pub(crate) fn unit_inverse(u: &LaurentPoly) -> LaurentPoly {
    let e = u.min_exp().expect("unit is nonzero");
    // ±1 is its own inverse
    LaurentPoly::monomial(u.coeff(e).numer().clone(), -e)
}
