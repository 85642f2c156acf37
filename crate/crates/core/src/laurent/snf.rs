//! Linear algebra over the principal ideal domain Q[t^{±1}].
//!
//! Euclidean steps use the span (max exponent minus min exponent) as the
//! size function. Rows and columns are rescaled by units (nonzero rationals
//! and powers of t) after every update so that coefficients stay integral
//! and primitive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd_q, lcm_q};
use super::matrix::PolyMatrix;
use super::poly::LaurentPoly;
use crate::budget::Budget;
use crate::error::Result;

/// Invariant factors of a matrix over Q[t^{±1}].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors `d_1 | d_2 | ...`, each monic with constant
    /// term at exponent 0.
    pub factors: Vec<LaurentPoly>,
    pub rank: usize,
}

impl SnfResult {
    /// Product of the invariant factors, i.e. the order of the cokernel when
    /// the matrix has full column rank.
    pub fn product(&self) -> LaurentPoly {
        self.factors.iter().cloned().product()
    }
}

pub fn snf_q(m: &PolyMatrix) -> SnfResult {
    snf_q_budgeted(m, &Budget::unlimited()).expect("unlimited budget")
}

pub fn snf_q_budgeted(m: &PolyMatrix, budget: &Budget) -> Result<SnfResult> {
    let mut a = m.to_rows();
    let diag = diagonalize(&mut a, m.rows(), m.cols(), budget)?;
    let rank = diag.len();
    let mut d: Vec<LaurentPoly> = diag.into_iter().map(|x| x.monic_q()).collect();
    // enforce d_i | d_j for i < j; (a, b) -> (gcd, lcm) preserves the module
    for i in 0..d.len() {
        budget.check()?;
        for j in i + 1..d.len() {
            if d[i].is_one() {
                break;
            }
            if d[i].divides(&d[j]) {
                continue;
            }
            let g = gcd_q(&d[i], &d[j]);
            let l = lcm_q(&d[i], &d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort_by_key(|x| x.span().unwrap());
    Ok(SnfResult { factors: d, rank })
}

/// Reduces `a` to diagonal form by unimodular row and column operations and
/// returns the nonzero diagonal entries.
fn diagonalize(
    a: &mut [Vec<LaurentPoly>],
    rows: usize,
    cols: usize,
    budget: &Budget,
) -> Result<Vec<LaurentPoly>> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        budget.check()?;
        let Some((pi, pj)) = best_entry(a, t..rows, t..cols) else {
            break;
        };
        swap_rows(a, t, pi);
        swap_cols(a, t, pj);
        loop {
            budget.check()?;
            let mut dirty = false;
            let pivot = a[t][t].clone();
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&pivot);
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(i);
                    sub_row_multiple(&mut tail[0][t..], &head[t][t..], &q);
                }
                if !r.is_zero() {
                    dirty = true;
                }
                normalize_slice(&mut a[i][t..]);
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&pivot);
                if !q.is_zero() {
                    for row in a[t..rows].iter_mut() {
                        if !row[t].is_zero() {
                            let d = &q * &row[t];
                            row[j] = &row[j] - &d;
                        }
                    }
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a remainder of smaller span now sits in row t or column t
            let mut best = (t, t);
            let mut key = entry_key(&a[t][t]);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && entry_key(&a[i][t]) < key {
                    key = entry_key(&a[i][t]);
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && entry_key(&a[t][j]) < key {
                    key = entry_key(&a[t][j]);
                    best = (t, j);
                }
            }
            swap_rows(a, t, best.0);
            swap_cols(a, t, best.1);
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Ok(diag)
}

fn entry_key(p: &LaurentPoly) -> (usize, usize, u64) {
    (p.span().unwrap_or(usize::MAX), p.term_count(), p.height_bits())
}

fn best_entry(
    a: &[Vec<LaurentPoly>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize, u64), (usize, usize))> = None;
    for i in rows {
        for j in cols.clone() {
            let e = &a[i][j];
            if e.is_zero() {
                continue;
            }
            let k = entry_key(e);
            if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                let unit = k.0 == 0;
                best = Some((k, (i, j)));
                if unit && e.term_count() == 1 && e.height_bits() <= 2 {
                    return best.map(|(_, ij)| ij);
                }
            }
        }
    }
    best.map(|(_, ij)| ij)
}

fn swap_rows(a: &mut [Vec<LaurentPoly>], i: usize, j: usize) {
    if i != j {
        a.swap(i, j);
    }
}

fn swap_cols(a: &mut [Vec<LaurentPoly>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `target -= q * source`, entrywise.
fn sub_row_multiple(target: &mut [LaurentPoly], source: &[LaurentPoly], q: &LaurentPoly) {
    for (x, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            let d = q * s;
            *x = &*x - &d;
        }
    }
}

/// `target += q * source`, entrywise.
fn add_row_multiple(target: &mut [LaurentPoly], source: &[LaurentPoly], q: &LaurentPoly) {
    for (x, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            let d = q * s;
            *x = &*x + &d;
        }
    }
}

/// The unit `c * t^k` that makes the slice primitive and integral with
/// minimum exponent 0, or `None` if the slice is zero or already normal.
fn normalizing_unit(v: &[LaurentPoly]) -> Option<LaurentPoly> {
    let mut den = BigInt::one();
    let mut lo = i64::MAX;
    for x in v.iter().filter(|x| !x.is_zero()) {
        den = den.lcm(x.denom());
        lo = lo.min(x.low());
    }
    if lo == i64::MAX {
        return None;
    }
    let mut g = BigInt::zero();
    for x in v.iter().filter(|x| !x.is_zero()) {
        let f = &den / x.denom();
        for c in x.numer_coeffs().iter().filter(|c| !c.is_zero()) {
            g = g.gcd(&(c * &f));
            if g.is_one() {
                break;
            }
        }
    }
    if den.is_one() && g.is_one() && lo == 0 {
        return None;
    }
    Some(LaurentPoly::rational_constant(BigRational::new(den, g)).shift(-lo))
}

fn normalize_slice(v: &mut [LaurentPoly]) -> Option<LaurentPoly> {
    let u = normalizing_unit(v)?;
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * &u;
        }
    }
    Some(u)
}

fn unit_inverse(u: &LaurentPoly) -> LaurentPoly {
    let e = u.min_exp().unwrap();
    let c = u.coeff(e);
    LaurentPoly::rational_constant(c.recip()).shift(-e)
}

/// Row echelon form `U * M = E` with `U` unimodular over Q[t^{±1}].
#[derive(Debug, Clone)]
pub struct LeftEchelon {
    pub echelon: PolyMatrix,
    pub transform: PolyMatrix,
    /// `transform^{-1}`, when requested.
    pub inverse: Option<PolyMatrix>,
    pub rank: usize,
}

impl LeftEchelon {
    /// Rows of the transform spanning the left kernel `{v : v M = 0}`.
    pub fn kernel(&self) -> PolyMatrix {
        let r = self.transform.rows();
        let rows: Vec<usize> = (self.rank..r).collect();
        let cols: Vec<usize> = (0..r).collect();
        self.transform.select(&rows, &cols)
    }
}

pub fn left_echelon(m: &PolyMatrix, track_inverse: bool, budget: &Budget) -> Result<LeftEchelon> {
    let r = m.rows();
    let c = m.cols();
    let mut a = m.to_rows();
    let mut u = PolyMatrix::identity(r).to_rows();
    // inverse kept transposed so its column operations become row operations
    let mut uinv_t = if track_inverse { Some(PolyMatrix::identity(r).to_rows()) } else { None };
    let mut prow = 0;
    for col in 0..c {
        if prow == r {
            break;
        }
        loop {
            budget.check()?;
            let best = (prow..r)
                .filter(|&i| !a[i][col].is_zero())
                .min_by_key(|&i| entry_key(&a[i][col]));
            let Some(p) = best else {
                break;
            };
            if p != prow {
                a.swap(p, prow);
                u.swap(p, prow);
                if let Some(w) = uinv_t.as_mut() {
                    w.swap(p, prow);
                }
            }
            let pivot = a[prow][col].clone();
            let mut dirty = false;
            for i in prow + 1..r {
                if a[i][col].is_zero() {
                    continue;
                }
                let (q, rem) = a[i][col].div_rem(&pivot);
                if !q.is_zero() {
                    {
                        let (head, tail) = a.split_at_mut(i);
                        sub_row_multiple(&mut tail[0][col..], &head[prow][col..], &q);
                    }
                    {
                        let (head, tail) = u.split_at_mut(i);
                        sub_row_multiple(&mut tail[0], &head[prow], &q);
                    }
                    if let Some(w) = uinv_t.as_mut() {
                        // column prow of U^{-1} gains q times column i
                        let (head, tail) = w.split_at_mut(i);
                        add_row_multiple(&mut head[prow], &tail[0], &q);
                    }
                }
                if !rem.is_zero() {
                    dirty = true;
                }
                normalize_pair(&mut a, &mut u, uinv_t.as_mut(), i, col);
            }
            if !dirty {
                prow += 1;
                break;
            }
        }
    }
    // kernel rows: a fixed sign and shift convention makes them reproducible
    for i in prow..r {
        if let Some(unit) = kernel_row_unit(&u[i]) {
            scale_row(&mut u, uinv_t.as_mut(), i, &unit);
        }
    }
    let echelon = rows_to_matrix(a, r, c);
    let transform = rows_to_matrix(u, r, r);
    let inverse = uinv_t.map(|w| rows_to_matrix(w, r, r).transpose());
    Ok(LeftEchelon { echelon, transform, inverse, rank: prow })
}

fn rows_to_matrix(rows: Vec<Vec<LaurentPoly>>, r: usize, c: usize) -> PolyMatrix {
    if r == 0 {
        return PolyMatrix::zeros(0, c);
    }
    PolyMatrix::from_rows(rows).expect("rectangular")
}

fn normalize_pair(
    a: &mut [Vec<LaurentPoly>],
    u: &mut [Vec<LaurentPoly>],
    uinv_t: Option<&mut Vec<Vec<LaurentPoly>>>,
    i: usize,
    col: usize,
) {
    // the unit is chosen from the M-part and U-part jointly
    let mut joined: Vec<LaurentPoly> = a[i][col..].to_vec();
    joined.extend_from_slice(&u[i]);
    if let Some(unit) = normalizing_unit(&joined) {
        for x in a[i][col..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &unit;
            }
        }
        scale_row(u, uinv_t, i, &unit);
    }
}

fn scale_row(
    u: &mut [Vec<LaurentPoly>],
    uinv_t: Option<&mut Vec<Vec<LaurentPoly>>>,
    i: usize,
    unit: &LaurentPoly,
) {
    for x in u[i].iter_mut() {
        if !x.is_zero() {
            *x = &*x * unit;
        }
    }
    if let Some(w) = uinv_t {
        let inv = unit_inverse(unit);
        for x in w[i].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
    }
}

/// Primitive, integral, minimum exponent 0, first nonzero entry with a
/// positive leading coefficient.
fn kernel_row_unit(row: &[LaurentPoly]) -> Option<LaurentPoly> {
    let mut unit = normalizing_unit(row).unwrap_or_else(LaurentPoly::one);
    let first = row.iter().find(|x| !x.is_zero())?;
    if (first * &unit).leading_coeff().is_negative() {
        unit = -unit;
    }
    (!unit.is_one()).then_some(unit)
}

/// Free basis (as rows) of the left kernel `{v : v M = 0}` over Q[t^{±1}].
pub fn kernel_basis_q(m: &PolyMatrix) -> PolyMatrix {
    left_echelon(m, false, &Budget::unlimited()).expect("unlimited budget").kernel()
}

pub fn kernel_basis_q_budgeted(m: &PolyMatrix, budget: &Budget) -> Result<PolyMatrix> {
    Ok(left_echelon(m, false, budget)?.kernel())
}

/// Rank over Q(t).
pub fn rank_q(m: &PolyMatrix) -> usize {
    left_echelon(m, false, &Budget::unlimited()).expect("unlimited budget").rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(low, c)
    }

    fn diag(entries: &[LaurentPoly]) -> PolyMatrix {
        let n = entries.len();
        PolyMatrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { LaurentPoly::zero() })
    }

    #[test]
    fn snf_examples() {
        let a = p(0, &[-1, 1]);
        let b = p(0, &[-1, 0, 1]);
        let r = snf_q(&diag(&[a.clone(), b.clone()]));
        assert_eq!(r.factors, vec![a.clone(), b]);
        assert_eq!(r.rank, 2);

        let m = PolyMatrix::from_rows(vec![
            vec![LaurentPoly::t(), LaurentPoly::one()],
            vec![LaurentPoly::zero(), a.clone()],
        ])
        .unwrap();
        let r = snf_q(&m);
        assert_eq!(r.factors, vec![LaurentPoly::one(), a]);
        assert_eq!(r.rank, 2);

        let r = snf_q(&PolyMatrix::zeros(2, 3));
        assert!(r.factors.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn snf_fixes_divisibility_chain() {
        // diag(t-1, t+1) has invariant factors 1, t^2-1
        let r = snf_q(&diag(&[p(0, &[-1, 1]), p(0, &[1, 1])]));
        assert_eq!(r.factors, vec![LaurentPoly::one(), p(0, &[-1, 0, 1])]);
    }

    #[test]
    fn snf_of_rational_matrix_is_monic() {
        let m = PolyMatrix::from_rows(vec![vec![p(0, &[-2, 4])]]).unwrap();
        let m = m.map(|x| x.scale(&BigRational::new(1.into(), 3.into())));
        let r = snf_q(&m);
        assert_eq!(r.factors, vec![LaurentPoly::from_terms([
            (0, BigRational::new((-1).into(), 2.into())),
            (1, BigRational::one())
        ])]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis_q(&PolyMatrix::zeros(2, 2)), PolyMatrix::identity(2));

        let a = p(0, &[-1, 1]);
        let col = PolyMatrix::from_rows(vec![vec![a.clone()], vec![a.clone()]]).unwrap();
        let k = kernel_basis_q(&col);
        assert_eq!(k, PolyMatrix::from_int_rows(&[vec![1, -1]]));

        let col = PolyMatrix::from_rows(vec![vec![a], vec![p(0, &[-1, 0, 1])]]).unwrap();
        let k = kernel_basis_q(&col);
        assert_eq!(k, PolyMatrix::from_rows(vec![vec![p(0, &[1, 1]), LaurentPoly::constant(-1)]]).unwrap());
    }

    #[test]
    fn echelon_inverse_is_inverse() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(0, &[-1, 1]), p(0, &[2])],
            vec![p(0, &[1, 0, 1]), p(1, &[3, 1])],
            vec![p(0, &[0, 2]), p(0, &[5])],
        ])
        .unwrap();
        let e = left_echelon(&m, true, &Budget::unlimited()).unwrap();
        let inv = e.inverse.clone().unwrap();
        assert_eq!(e.transform.mul(&inv).unwrap(), PolyMatrix::identity(3));
        assert_eq!(e.transform.mul(&m).unwrap(), e.echelon);
        assert_eq!(e.rank, 2);
        assert!(e.kernel().mul(&m).unwrap().is_zero());
    }
}
