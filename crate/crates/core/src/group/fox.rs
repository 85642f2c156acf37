use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::word::FreeWord;

/// Finitely supported integer combination of free-group words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: FreeWord, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn coeff(&self, w: &FreeWord) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a single group element.
    pub fn left_mul_word(&self, w: &FreeWord) -> Self {
        let mut out = Self::zero();
        for (v, c) in self.terms() {
            out.add_term(w.mul(v), c);
        }
        out
    }

    /// Augmentation: sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

/// Fox derivative of `w` with respect to generator `gen`.
///
/// Each occurrence of `gen` contributes `+prefix` and each occurrence of its
/// inverse contributes `-(prefix * gen^{-1})`, where `prefix` is the part of
/// `w` before that letter.
pub fn fox_derivative(w: &FreeWord, gen: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let letters = w.letters();
    for (k, l) in letters.iter().enumerate() {
        if l.gen != gen {
            continue;
        }
        if l.inv {
            out.add_term(w.prefix(k + 1), -1);
        } else {
            out.add_term(w.prefix(k), 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: i32 = 1;
    const Y: i32 = 2;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::from_signed(l)
    }

    fn elem(terms: &[(&[i32], i64)]) -> GroupRingElement {
        let mut e = GroupRingElement::zero();
        for (l, c) in terms {
            e.add_term(w(l), *c);
        }
        e
    }

    #[test]
    fn defining_rules() {
        assert_eq!(fox_derivative(&w(&[X]), 0), GroupRingElement::one());
        assert_eq!(fox_derivative(&w(&[Y]), 0), GroupRingElement::zero());
        assert_eq!(fox_derivative(&w(&[-X]), 0), elem(&[(&[-X], -1)]));
    }

    #[test]
    fn conjugate_derivative() {
        // d(x y x^-1)/dx = 1 - x y x^-1
        let d = fox_derivative(&w(&[X, Y, -X]), 0);
        assert_eq!(d, elem(&[(&[], 1), (&[X, Y, -X], -1)]));
    }

    #[test]
    fn trefoil_relator_derivative() {
        // d(xyxY XY)/dx = 1 + xy - xyxYX
        let d = fox_derivative(&w(&[X, Y, X, -Y, -X, -Y]), 0);
        assert_eq!(d, elem(&[(&[], 1), (&[X, Y], 1), (&[X, Y, X, -Y, -X], -1)]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut e = elem(&[(&[X], 2), (&[Y], 1)]);
        e.add_term(w(&[X]), -2);
        assert_eq!(e, elem(&[(&[Y], 1)]));
        assert_eq!(e.terms().count(), 1);
    }
}
