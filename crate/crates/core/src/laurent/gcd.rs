use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// Greatest common divisor in Z[t^{±1}], canonicalized.
///
/// Computed as gcd(contents) times the primitive gcd, the latter by a
/// primitive pseudo-remainder sequence so coefficients stay integral.
pub fn gcd_z(ps: &[LaurentPoly]) -> Result<LaurentPoly> {
    if ps.is_empty() {
        return Err(Error::EmptyGcd);
    }
    if ps.iter().any(|p| !p.is_integral()) {
        return Err(Error::NotIntegral);
    }
    let mut content = BigInt::zero();
    let mut prim: Option<Vec<BigInt>> = None;
    for p in ps.iter().filter(|p| !p.is_zero()) {
        let coeffs = p.numer_coeffs();
        content = content.gcd(&int_content(coeffs));
        let pp = primitive(coeffs);
        prim = Some(match prim {
            None => pp,
            Some(g) => primitive_gcd(&g, &pp),
        });
    }
    Ok(match prim {
        None => LaurentPoly::zero(),
        Some(g) => LaurentPoly::from_parts(0, g, BigInt::one()).scale_int(&content).canonical(),
    })
}

/// Pairwise convenience wrapper for [`gcd_z`].
pub fn gcd2_z(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    gcd_z(&[a.clone(), b.clone()]).expect("integral inputs")
}

/// Gcd in Q[t^{±1}]: monic, constant term at exponent 0. Accepts rational
/// inputs.
pub fn gcd_q(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return LaurentPoly::zero(),
        (true, false) => return b.monic_q(),
        (false, true) => return a.monic_q(),
        _ => {}
    }
    let pa = primitive(a.primitive_part().numer_coeffs());
    let pb = primitive(b.primitive_part().numer_coeffs());
    LaurentPoly::from_parts(0, primitive_gcd(&pa, &pb), BigInt::one()).monic_q()
}

/// Least common multiple in Q[t^{±1}], normalized like [`gcd_q`].
pub fn lcm_q(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let g = gcd_q(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product").monic_q()
}

fn int_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = int_content(v);
    let mut out: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    out
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` (dense, low order first, both nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let m = b.len();
    while r.len() >= m {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - m;
        let g = lr.gcd(lb);
        let fr = lb / &g;
        let fb = &lr / &g;
        for c in r.iter_mut() {
            *c *= &fr;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &fb * c;
        }
        trim(&mut r);
    }
    r
}

/// Gcd of two primitive integer polynomials, primitive with positive lead.
/// Both inputs have their lowest coefficient nonzero, so no power of t
/// divides either and the result is a genuine Laurent gcd.
fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
    loop {
        if b.is_empty() {
            return primitive(&a);
        }
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive(&strip_low(r)) };
    }
}

fn strip_low(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let z = v.iter().take_while(|c| c.is_zero()).count();
    v.drain(..z);
    v
}
