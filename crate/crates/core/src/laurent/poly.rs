use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Which coefficient ring a polynomial (or matrix) currently lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Int,
    Rat,
}

/// Univariate Laurent polynomial with exact rational coefficients.
///
/// Stored as `t^low * (num[0] + num[1] t + ...) / den` with `num` trimmed at
/// both ends, `den > 0` and `gcd(content(num), den) = 1`. These invariants
/// make structural equality coincide with equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, num: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::from_parts(0, vec![c.into()], BigInt::one())
    }

    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        Self::from_parts(exp, vec![c.into()], BigInt::one())
    }

    pub fn rational_constant(c: BigRational) -> Self {
        Self::from_parts(0, vec![c.numer().clone()], c.denom().clone())
    }

    /// Integer coefficients `coeffs[i]` at exponent `low + i`.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_parts(low, coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<(i64, BigRational)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap();
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            num[(e - lo) as usize] += c.numer() * (&den / c.denom());
        }
        Self::from_parts(lo, num, den)
    }

    pub fn from_int_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        Self::from_terms(terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c))))
    }

    pub(crate) fn from_parts(low: i64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        let lead_zeros = num.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == num.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            num.drain(..lead_zeros);
        }
        let low = low + lead_zeros as i64;
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                den /= &g;
                for c in num.iter_mut() {
                    *c /= &g;
                }
            }
        }
        LaurentPoly { low, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// `c * t^k` with `c` a nonzero rational: a unit of Q[t^{±1}].
    pub fn is_unit_q(&self) -> bool {
        self.num.len() == 1
    }

    /// `±t^k`: a unit of Z[t^{±1}].
    pub fn is_unit_z(&self) -> bool {
        self.num.len() == 1 && self.den.is_one() && self.num[0].abs().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn ring(&self) -> Ring {
        if self.is_integral() {
            Ring::Int
        } else {
            Ring::Rat
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.num.len() as i64 - 1)
    }

    /// `max_exp - min_exp`; the Euclidean size on Q[t^{±1}].
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.num.len() - 1)
    }

    pub fn term_count(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.num.len() as i64 {
            return BigRational::zero();
        }
        BigRational::new(self.num[idx as usize].clone(), self.den.clone())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, BigRational)> + '_ {
        self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| {
            (self.low + i as i64, BigRational::new(c.clone(), self.den.clone()))
        })
    }

    pub fn leading_coeff(&self) -> BigRational {
        match self.num.last() {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn trailing_coeff(&self) -> BigRational {
        match self.num.first() {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    /// Positive rational content: gcd of numerators over the denominator.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(int_content(&self.num), self.den.clone())
    }

    /// Primitive integer polynomial with the same sign and exponents.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = int_content(&self.num);
        LaurentPoly { low: self.low, num: self.num.iter().map(|c| c / &g).collect(), den: BigInt::one() }
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, num: self.num.clone(), den: self.den.clone() }
    }

    /// Representative of `p * (±t^k)` with minimum exponent 0 and positive
    /// leading coefficient.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let flip = self.num.last().unwrap().is_negative();
        let num = if flip { self.num.iter().map(|c| -c).collect() } else { self.num.clone() };
        LaurentPoly { low: 0, num, den: self.den.clone() }
    }

    /// Canonical form up to units of Q[t^{±1}]: monic with constant term at
    /// exponent 0.
    pub fn monic_q(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.num.last().unwrap().clone();
        Self::from_parts(0, self.num.clone(), lead)
    }

    /// Canonical primitive integer representative of the Q[t^{±1}]-unit class.
    pub fn primitive_canonical(&self) -> Self {
        self.primitive_part().canonical()
    }

    /// True iff the top coefficient is a unit of Z, i.e. ±1 with integer
    /// coefficients throughout. Zero is never monic.
    pub fn is_monic(&self) -> bool {
        self.is_integral() && self.num.last().is_some_and(|c| c.abs().is_one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let num = self.num.iter().map(|x| x * c.numer()).collect();
        Self::from_parts(self.low, num, &self.den * c.denom())
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let num = self.num.iter().map(|x| x * c).collect();
        Self::from_parts(self.low, num, self.den.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn reverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let hi = self.max_exp().unwrap();
        let num = self.num.iter().rev().cloned().collect();
        LaurentPoly { low: -hi, num, den: self.den.clone() }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.num.iter().rev() {
            acc = acc * t + BigRational::from_integer(c.clone());
        }
        if self.low != 0 {
            let tp = if self.low > 0 {
                num_traits::pow(t.clone(), self.low as usize)
            } else {
                num_traits::pow(t.recip(), (-self.low) as usize)
            };
            acc *= tp;
        }
        acc / BigRational::from_integer(self.den.clone())
    }

    /// Exact quotient `self / d` in Q[t^{±1}], or `None` if `d` does not
    /// divide. Dividing by zero yields `None`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.num.len() < d.num.len() {
            return None;
        }
        let low = self.low - d.low;
        let ratio = BigRational::new(d.den.clone(), self.den.clone());
        match int_div_exact(&self.num, &d.num) {
            IntDiv::Exact(q) => Some(Self::from_parts(low, q, BigInt::one()).scale(&ratio)),
            IntDiv::NotDivisible => None,
            IntDiv::NeedsRationals => {
                let (q, r) = rat_div_rem(&self.num, &d.num);
                if r.iter().any(|c| !c.is_zero()) {
                    return None;
                }
                Some(from_rat_vec(low, &q).scale(&ratio))
            }
        }
    }

    /// Euclidean division in Q[t^{±1}] with respect to `span`:
    /// `self = q * d + r` with `r = 0` or `span(r) < span(d)`.
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        if self.num.len() < d.num.len() {
            return (Self::zero(), self.clone());
        }
        let (q, r) = rat_div_rem(&self.num, &d.num);
        // q, r are over Z-numerators of self and d; restore the denominators
        let ratio = BigRational::new(d.den.clone(), self.den.clone());
        let qn = from_rat_vec(self.low - d.low, &q).scale(&ratio);
        let rn = from_rat_vec(self.low, &r).scale(&BigRational::new(BigInt::one(), self.den.clone()));
        (qn, rn)
    }

    /// Divisibility in Z[t^{±1}] when both inputs are integral, in
    /// Q[t^{±1}] otherwise. Every `p` divides 0; 0 divides only 0.
    pub fn divides(&self, q: &LaurentPoly) -> bool {
        if q.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        match q.div_exact(self) {
            None => false,
            Some(r) => !(self.is_integral() && q.is_integral()) || r.is_integral(),
        }
    }

    pub(crate) fn numer_coeffs(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denom(&self) -> &BigInt {
        &self.den
    }

    pub(crate) fn low(&self) -> i64 {
        self.low
    }

    /// Max bit length over the numerators; a cheap size heuristic for pivoting.
    pub(crate) fn height_bits(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).max().unwrap_or(0) + self.den.bits()
    }
}

fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn from_rat_vec(low: i64, v: &[BigRational]) -> LaurentPoly {
    if v.iter().all(|c| c.is_zero()) {
        return LaurentPoly::zero();
    }
    let den = rat_vec_lcm_den(v);
    let num = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    LaurentPoly::from_parts(low, num, den)
}

fn rat_vec_lcm_den(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, c| if c.is_zero() { acc } else { acc.lcm(c.denom()) })
}

enum IntDiv {
    Exact(Vec<BigInt>),
    NotDivisible,
    NeedsRationals,
}

/// Integer long division `a / b` (dense, low-order first) that stays in Z.
/// Bails out to the rational path when a quotient coefficient is not an
/// integer but the division might still be exact over Q.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> IntDiv {
    let n = a.len();
    let m = b.len();
    let lead = b.last().unwrap();
    let unit_lead = lead.abs().is_one();
    let fail = if unit_lead { IntDiv::NotDivisible } else { IntDiv::NeedsRationals };
    let mut r: Vec<BigInt> = a.to_vec();
    let mut q = vec![BigInt::zero(); n - m + 1];
    for i in (0..=n - m).rev() {
        if r[i + m - 1].is_zero() {
            continue;
        }
        let (qc, rem) = r[i + m - 1].div_rem(lead);
        if !rem.is_zero() {
            return fail;
        }
        for j in 0..m {
            if !b[j].is_zero() {
                r[i + j] -= &qc * &b[j];
            }
        }
        q[i] = qc;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return fail;
    }
    IntDiv::Exact(q)
}

fn rat_div_rem(a: &[BigInt], b: &[BigInt]) -> (Vec<BigRational>, Vec<BigRational>) {
    let n = a.len();
    let m = b.len();
    let mut r: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    if n < m {
        return (Vec::new(), r);
    }
    let bq: Vec<BigRational> = b.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let lead = bq.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); n - m + 1];
    for i in (0..=n - m).rev() {
        if r[i + m - 1].is_zero() {
            continue;
        }
        let qc = &r[i + m - 1] / &lead;
        for j in 0..m {
            if !bq[j].is_zero() {
                let d = &qc * &bq[j];
                r[i + j] -= d;
            }
        }
        q[i] = qc;
    }
    r.truncate(m - 1);
    (q, r)
}

fn add_aligned(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.low.min(b.low);
    let hi = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut num = vec![BigInt::zero(); (hi - lo + 1) as usize];
    let (fa, fb, den) = if a.den == b.den {
        (BigInt::one(), BigInt::one(), a.den.clone())
    } else {
        let l = a.den.lcm(&b.den);
        (&l / &a.den, &l / &b.den, l)
    };
    let oa = (a.low - lo) as usize;
    for (i, c) in a.num.iter().enumerate() {
        if fa.is_one() {
            num[oa + i] += c;
        } else {
            num[oa + i] += c * &fa;
        }
    }
    let ob = (b.low - lo) as usize;
    for (i, c) in b.num.iter().enumerate() {
        let v = if fb.is_one() { c.clone() } else { c * &fb };
        if negate_b {
            num[ob + i] -= v;
        } else {
            num[ob + i] += v;
        }
    }
    LaurentPoly::from_parts(lo, num, den)
}

fn mul_polys(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let mut num = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
    for (i, x) in a.num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.num.iter().enumerate() {
            if !y.is_zero() {
                num[i + j] += x * y;
            }
        }
    }
    let den = if a.den.is_one() && b.den.is_one() { BigInt::one() } else { &a.den * &b.den };
    LaurentPoly::from_parts(a.low + b.low, num, den)
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.num.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_aligned(a, b, false));
forward_binop!(Sub, sub, |a, b| add_aligned(a, b, true));
forward_binop!(Mul, mul, mul_polys);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| a * b)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order (span, then exponents, then coefficients), used
/// only for deterministic sorting.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num
            .len()
            .cmp(&other.num.len())
            .then(self.low.cmp(&other.low))
            .then_with(|| self.num.iter().rev().cmp(other.num.iter().rev()))
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}
