use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::FreeWord;
use crate::error::{Error, Result};

/// Word in the Artin generators of the braid group on `strands` strands.
/// Letter `i` is `sigma_i`, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        let b = BraidWord { strands, word };
        b.check()?;
        Ok(b)
    }

    pub fn check(&self) -> Result<()> {
        if self.strands < 2 {
            return Err(Error::InvalidBraid(format!("need at least 2 strands, got {}", self.strands)));
        }
        for (pos, &l) in self.word.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize >= self.strands {
                return Err(Error::InvalidBraid(format!(
                    "word[{pos}] = {l} is not a generator of B_{}",
                    self.strands
                )));
            }
        }
        Ok(())
    }

    /// Strand permutation: position `j` at the top ends at `perm[j]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = strand
        for &l in &self.word {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Closure component of each strand, numbered by first appearance.
    pub fn components(&self) -> Vec<usize> {
        let perm = self.permutation();
        let mut tag = vec![usize::MAX; self.strands];
        let mut next = 0;
        for start in 0..self.strands {
            if tag[start] != usize::MAX {
                continue;
            }
            let mut j = start;
            while tag[j] == usize::MAX {
                tag[j] = next;
                j = perm[j];
            }
            next += 1;
        }
        tag
    }
}

/// Images of the generators under the Artin action of one braid letter.
pub fn artin_action(strands: usize, letter: i32) -> Vec<FreeWord> {
    let i = letter.unsigned_abs() as usize - 1;
    let mut images: Vec<FreeWord> = (0..strands).map(FreeWord::gen).collect();
    let xi = FreeWord::gen(i);
    let xj = FreeWord::gen(i + 1);
    if letter > 0 {
        images[i] = xi.mul(&xj).mul(&xi.inverse());
        images[i + 1] = xi;
    } else {
        images[i] = xj.clone();
        images[i + 1] = xj.inverse().mul(&xi).mul(&xj);
    }
    images
}

/// Automorphism of the free group induced by the whole braid word.
pub fn braid_automorphism(b: &BraidWord) -> Vec<FreeWord> {
    let mut images: Vec<FreeWord> = (0..b.strands).map(FreeWord::gen).collect();
    for &l in &b.word {
        let act = artin_action(b.strands, l);
        for img in images.iter_mut() {
            *img = img.substitute(&act);
        }
    }
    images
}

/// Presentation of the closure's link group: relators `x_j^{-1} beta(x_j)`
/// for every strand but the last, trivial relators dropped, `phi = 1` on
/// every meridian.
pub fn braid_to_presentation(b: &BraidWord) -> Result<Presentation> {
    b.check()?;
    let n = b.strands;
    let beta = braid_automorphism(b);
    let relators: Vec<FreeWord> = (0..n - 1)
        .map(|j| FreeWord::gen_inv(j).mul(&beta[j]))
        .filter(|r| !r.is_identity())
        .collect();
    let names = (1..=n).map(|j| format!("x{j}")).collect();
    Ok(Presentation::new(names, relators, vec![1; n])
        .with_components(b.components())
        .with_link_exterior(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_presentation() {
        let p = braid_to_presentation(&BraidWord::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators().len(), 1);
        assert!(p.validate().is_valid());
        assert_eq!(p.components(), Some(&[0, 0][..]));
    }

    #[test]
    fn unlink_has_no_relators() {
        let p = braid_to_presentation(&BraidWord::new(2, vec![]).unwrap()).unwrap();
        assert!(p.relators().is_empty());
        assert_eq!(p.components(), Some(&[0, 1][..]));
    }

    #[test]
    fn hopf_link_components() {
        let b = BraidWord::new(2, vec![1, 1]).unwrap();
        assert_eq!(b.components(), vec![0, 1]);
        let f8 = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        assert_eq!(f8.components(), vec![0, 0, 0]);
    }

    #[test]
    fn bad_braids() {
        assert!(BraidWord::new(1, vec![]).is_err());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
    }

    #[test]
    fn letter_then_inverse_is_identity() {
        for n in 2..5 {
            for i in 1..n as i32 {
                let mut images: Vec<FreeWord> = (0..n).map(FreeWord::gen).collect();
                for l in [i, -i] {
                    let act = artin_action(n, l);
                    for img in images.iter_mut() {
                        *img = img.substitute(&act);
                    }
                }
                let id: Vec<FreeWord> = (0..n).map(FreeWord::gen).collect();
                assert_eq!(images, id);
            }
        }
    }

    #[test]
    fn braid_relation_holds() {
        // s1 s2 s1 = s2 s1 s2 as automorphisms
        let a = braid_automorphism(&BraidWord::new(3, vec![1, 2, 1]).unwrap());
        let b = braid_automorphism(&BraidWord::new(3, vec![2, 1, 2]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn exponent_sums_vanish() {
        let b = BraidWord::new(4, vec![1, 1, 2, -1, -3, 2, -3]).unwrap();
        let p = braid_to_presentation(&b).unwrap();
        for r in p.relators() {
            let total: i64 = (0..4).map(|g| r.exponent_sum(g)).sum();
            assert_eq!(total, 0);
        }
        assert!(p.validate().is_valid());
    }
}
