//! Determinants of larger integral matrices by evaluation at many points
//! modulo word-sized primes, followed by interpolation and Chinese
//! remaindering. Both the exponent window and the coefficient size are
//! bounded in advance, so the result is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use pathfinding::prelude::{kuhn_munkres, kuhn_munkres_min, Matrix};
use strength_reduce::StrengthReducedU64;

use super::matrix::PolyMatrix;
use super::poly::LaurentPoly;
use crate::budget::Budget;
use crate::error::Result;

const FORBIDDEN: i64 = 1 << 40;

struct Entry {
    low: i64,
    coeffs: Vec<BigInt>,
}

/// A priori limits on a determinant: every exponent lies in `lo..=hi` and
/// every coefficient is below `2^(bits - 1)` in absolute value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct DetBounds {
    pub lo: i64,
    pub hi: i64,
    pub bits: u64,
}

impl DetBounds {
    pub fn shifted(self, k: i64) -> DetBounds {
        DetBounds { lo: self.lo + k, hi: self.hi + k, bits: self.bits }
    }

    pub fn meet(self, other: DetBounds) -> DetBounds {
        DetBounds { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi), bits: self.bits.min(other.bits) }
    }
}

fn integral_entries(m: &PolyMatrix) -> Option<Vec<Option<Entry>>> {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for x in m.entries() {
        if x.is_zero() {
            entries.push(None);
            continue;
        }
        if !x.is_integral() {
            return None;
        }
        let low = x.min_exp().unwrap();
        let coeffs = (low..=x.max_exp().unwrap()).map(|e| x.coeff(e).to_integer()).collect();
        entries.push(Some(Entry { low, coeffs }));
    }
    Some(entries)
}

/// Bounds for the determinant of a square integral matrix. `Ok(None)` means
/// no bound is available (rational entries, or overflow); `Err(())` means
/// every transversal meets a zero entry, so the determinant vanishes.
pub(crate) fn det_bounds(m: &PolyMatrix) -> std::result::Result<Option<DetBounds>, ()> {
    let n = m.rows();
    let Some(entries) = integral_entries(m) else {
        return Ok(None);
    };
    if n == 0 {
        return Ok(Some(DetBounds { lo: 0, hi: 0, bits: 2 }));
    }
    let at = |i: usize, j: usize| entries[i * n + j].as_ref();

    // exponents of det lie between the cheapest and the dearest transversal
    let hi_w = Matrix::from_fn(n, n, |(i, j)| at(i, j).map_or(-FORBIDDEN, |e| e.low + e.coeffs.len() as i64 - 1));
    let (hi, hi_perm) = kuhn_munkres(&hi_w);
    if hi_perm.iter().enumerate().any(|(i, &j)| at(i, j).is_none()) {
        return Err(());
    }
    let lo_w = Matrix::from_fn(n, n, |(i, j)| at(i, j).map_or(FORBIDDEN, |e| e.low));
    let (lo, _) = kuhn_munkres_min(&lo_w);

    // Hadamard on |t| = 1 bounds every coefficient
    let mut log_bound = 0.0f64;
    for i in 0..n {
        let mut s = 0.0f64;
        for j in 0..n {
            if let Some(e) = at(i, j) {
                let l1: f64 = e.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum();
                s += l1 * l1;
            }
        }
        log_bound += 0.5 * s.log2();
    }
    if !log_bound.is_finite() {
        return Ok(None);
    }
    Ok(Some(DetBounds { lo, hi, bits: log_bound.ceil() as u64 + 2 }))
}

/// Exact determinant of a square integral matrix whose determinant is known
/// to satisfy `bounds`.
pub(crate) fn det_multimodular(m: &PolyMatrix, bounds: DetBounds, budget: &Budget) -> Result<LaurentPoly> {
    let n = m.rows();
    if bounds.hi < bounds.lo {
        return Ok(LaurentPoly::zero());
    }
    let entries = integral_entries(m).expect("multimodular determinant needs integral entries");
    let degree = (bounds.hi - bounds.lo) as u64;
    let mut modulus = BigInt::from(1);
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); degree as usize + 1];
    let mut candidate: u64 = (1 << 31) - 1;
    while modulus.bits() < bounds.bits {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        let p = Modulus::new(candidate);
        candidate -= 2;
        let residues = det_mod_p(n, &entries, bounds.lo, degree, &p, budget)?;
        crt_merge(&mut acc, &mut modulus, &residues, p.p);
    }
    let half = &modulus >> 1;
    let terms = acc.into_iter().enumerate().map(|(k, c)| {
        let c = if c > half { c - &modulus } else { c };
        (bounds.lo + k as i64, c)
    });
    Ok(LaurentPoly::from_int_terms(terms))
}

struct Modulus {
    p: u64,
    reduce: StrengthReducedU64,
}

impl Modulus {
    fn new(p: u64) -> Self {
        Modulus { p, reduce: StrengthReducedU64::new(p) }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.reduce
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b = b % self.reduce;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn signed_pow(&self, x: u64, x_inv: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(x, e as u64)
        } else {
            self.pow(x_inv, e.unsigned_abs())
        }
    }
}

/// Coefficients of `t^(-lo) det` modulo p, from values at 1, 2, ..., degree + 1.
fn det_mod_p(n: usize, entries: &[Option<Entry>], lo: i64, degree: u64, m: &Modulus, budget: &Budget) -> Result<Vec<u64>> {
    let pb = BigInt::from(m.p);
    let reduced: Vec<Option<(i64, Vec<u64>)>> = entries
        .iter()
        .map(|e| e.as_ref().map(|e| (e.low, e.coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())))
        .collect();
    let mut xs = Vec::with_capacity(degree as usize + 1);
    let mut ys = Vec::with_capacity(degree as usize + 1);
    let mut a = vec![0u64; n * n];
    for x in 1..=degree + 1 {
        budget.check()?;
        let x_inv = m.inv(x);
        for (slot, e) in a.iter_mut().zip(&reduced) {
            *slot = match e {
                None => 0,
                Some((low, cs)) => {
                    let v = cs.iter().rev().fold(0, |acc, &c| (acc * x + c) % m.reduce);
                    m.mul(v, m.signed_pow(x, x_inv, *low))
                }
            };
        }
        let d = gauss_det(n, &mut a, m);
        xs.push(x);
        ys.push(m.mul(d, m.signed_pow(x, x_inv, -lo)));
    }
    Ok(interpolate(&xs, &ys, m))
}

fn gauss_det(n: usize, a: &mut [u64], m: &Modulus) -> u64 {
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in k..n {
                a.swap(piv * n + j, k * n + j);
            }
            det = m.sub(0, det);
        }
        let akk = a[k * n + k];
        det = m.mul(det, akk);
        let inv = m.inv(akk);
        let (top, bottom) = a.split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n + k + 1..(k + 1) * n];
        for row in bottom.chunks_exact_mut(n) {
            let f = m.mul(row[k], inv);
            if f == 0 {
                continue;
            }
            for (cell, &v) in row[k + 1..].iter_mut().zip(pivot_row) {
                *cell = m.sub(*cell, m.mul(f, v));
            }
        }
    }
    det
}

/// Newton interpolation, returned in the monomial basis.
fn interpolate(xs: &[u64], ys: &[u64], m: &Modulus) -> Vec<u64> {
    let len = xs.len();
    let mut c = ys.to_vec();
    for j in 1..len {
        for i in (j..len).rev() {
            let num = m.sub(c[i], c[i - 1]);
            c[i] = m.mul(num, m.inv(m.sub(xs[i], xs[i - j])));
        }
    }
    let mut poly = vec![0u64; len];
    for i in (0..len).rev() {
        // poly = poly * (t - xs[i]) + c[i]
        for k in (1..len).rev() {
            poly[k] = m.sub(poly[k - 1], m.mul(poly[k], xs[i]));
        }
        poly[0] = m.sub(c[i], m.mul(poly[0], xs[i]));
    }
    poly
}

fn crt_merge(acc: &mut [BigInt], modulus: &mut BigInt, residues: &[u64], p: u64) {
    let pb = BigInt::from(p);
    let m = Modulus::new(p);
    let inv = BigInt::from(m.inv(modulus.mod_floor(&pb).to_u64().unwrap()));
    for (a, &r) in acc.iter_mut().zip(residues) {
        // a + modulus * ((r - a) / modulus mod p)
        let diff = (BigInt::from(r) - &*a).mod_floor(&pb);
        let k = (diff * &inv).mod_floor(&pb);
        *a += &*modulus * k;
    }
    *modulus *= pb;
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
