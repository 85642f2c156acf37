use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finite::{IntMatrix, RepInfo, Representation};
use crate::group::{FreeWord, GroupRingElement, Presentation};
use crate::laurent::{LaurentPoly, PolyMatrix};

/// Sum of integer matrices times powers of t, kept sparse by exponent until
/// it is turned into a polynomial matrix.
struct BlockAccumulator {
    k: usize,
    by_exp: BTreeMap<i64, Vec<i64>>,
}

impl BlockAccumulator {
    fn new(k: usize) -> Self {
        BlockAccumulator { k, by_exp: BTreeMap::new() }
    }

    fn add(&mut self, m: &IntMatrix, exp: i64, sign: i64) {
        let k = self.k;
        let acc = self.by_exp.entry(exp).or_insert_with(|| vec![0; k * k]);
        for i in 0..k {
            for j in 0..k {
                acc[i * k + j] += sign * m.get(i, j);
            }
        }
    }

    fn into_matrix(self) -> PolyMatrix {
        let k = self.k;
        PolyMatrix::from_fn(k, k, |i, j| {
            LaurentPoly::from_int_terms(
                self.by_exp.iter().filter(|(_, acc)| acc[i * k + j] != 0).map(|(&e, acc)| (e, BigInt::from(acc[i * k + j]))),
            )
        })
    }
}

/// `Phi(w) = alpha(w) t^{phi(w)}`.
pub fn tensor_word(rep: &Representation, phi: &[i64], w: &FreeWord) -> Result<PolyMatrix> {
    check_letters(rep, phi, w)?;
    let exp: i64 = w.letters().iter().map(|l| phi[l.gen] * l.exponent()).sum();
    Ok(rep.evaluate(w).to_poly(exp))
}

/// `Phi` extended linearly to the group ring.
pub fn tensor_element(rep: &Representation, phi: &[i64], e: &GroupRingElement) -> Result<PolyMatrix> {
    let mut acc = BlockAccumulator::new(rep.dim());
    for (w, c) in e.terms() {
        check_letters(rep, phi, w)?;
        let exp: i64 = w.letters().iter().map(|l| phi[l.gen] * l.exponent()).sum();
        acc.add(&rep.evaluate(w), exp, c);
    }
    Ok(acc.into_matrix())
}

fn check_letters(rep: &Representation, phi: &[i64], w: &FreeWord) -> Result<()> {
    match w.max_gen() {
        Some(g) if g >= rep.matrices().len() || g >= phi.len() => Err(Error::UnknownGenerator(format!("#{g}"))),
        _ => Ok(()),
    }
}

/// Boundary maps of the twisted chain complex of the presentation 2-complex.
/// Chains are row vectors and boundaries act by right multiplication, so
/// `d2 * d1 = 0`.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    pub k: usize,
    pub generators: usize,
    pub relators: usize,
    /// `(relators*k) x (generators*k)`, block `(i, j)` is `Phi(d r_i / d x_j)`.
    pub d2: PolyMatrix,
    /// `(generators*k) x k`, block `j` is `Phi(x_j) - I`.
    pub d1: PolyMatrix,
    /// `det(Phi(x_j) - I)` for every generator.
    pub generator_dets: Vec<LaurentPoly>,
    /// Smallest generator with nonvanishing `det(Phi(x_j) - I)`.
    pub pivot: Option<usize>,
    pub rep: RepInfo,
    pub link_exterior: bool,
}

impl TwistedComplex {
    /// `d2` with block column `j` removed.
    pub fn minor_matrix(&self, j: usize) -> PolyMatrix {
        let k = self.k;
        let rows: Vec<usize> = (0..self.d2.rows()).collect();
        let cols: Vec<usize> = (0..self.d2.cols()).filter(|c| c / k != j).collect();
        self.d2.select(&rows, &cols)
    }

    pub fn generator_block(&self, j: usize) -> PolyMatrix {
        self.d1.block(j * self.k, 0, self.k, self.k)
    }

    pub fn valid_pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.generator_dets.iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(j, _)| j)
    }

    pub fn is_deficiency_one(&self) -> bool {
        self.relators + 1 == self.generators
    }
}

pub fn assemble(p: &Presentation, rep: &Representation) -> Result<TwistedComplex> {
    assemble_budgeted(p, rep, &Budget::unlimited())
}

pub fn assemble_budgeted(p: &Presentation, rep: &Representation, budget: &Budget) -> Result<TwistedComplex> {
    p.validate().into_result()?;
    let n = p.num_generators();
    if rep.matrices().len() != n {
        return Err(Error::InvalidRepresentation(format!(
            "{} matrices for {} generators",
            rep.matrices().len(),
            n
        )));
    }
    rep.check_relators(p)?;
    let k = rep.dim();
    let m = p.relators().len();
    let phi = p.phi();

    let mut d2 = PolyMatrix::zeros(m * k, n * k);
    for (i, r) in p.relators().iter().enumerate() {
        budget.check()?;
        let mut blocks: Vec<BlockAccumulator> = (0..n).map(|_| BlockAccumulator::new(k)).collect();
        // Fox rule: x at position q contributes +Phi(prefix), x^{-1} contributes
        // -Phi(prefix * x^{-1})
        let mut prefix = IntMatrix::identity(k);
        let mut exp = 0i64;
        for l in r.letters() {
            if l.inv {
                prefix = prefix.mul(rep.inverse_matrix(l.gen));
                exp -= phi[l.gen];
                blocks[l.gen].add(&prefix, exp, -1);
            } else {
                blocks[l.gen].add(&prefix, exp, 1);
                prefix = prefix.mul(rep.matrix(l.gen));
                exp += phi[l.gen];
            }
        }
        for (j, b) in blocks.into_iter().enumerate() {
            d2.set_block(i * k, j * k, &b.into_matrix());
        }
    }

    let mut d1 = PolyMatrix::zeros(n * k, k);
    let mut generator_dets = Vec::with_capacity(n);
    for j in 0..n {
        let block = rep.matrix(j).to_poly(phi[j]).sub(&PolyMatrix::identity(k))?;
        generator_dets.push(block.det_budgeted(budget)?);
        d1.set_block(j * k, 0, &block);
    }

    if !d2.mul(&d1)?.is_zero() {
        return Err(Error::ChainCondition);
    }
    let pivot = generator_dets.iter().position(|d| !d.is_zero());
    Ok(TwistedComplex {
        k,
        generators: n,
        relators: m,
        d2,
        d1,
        generator_dets,
        pivot,
        rep: rep.info(p),
        link_exterior: p.is_link_exterior(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{regular_of_hom, HomAssignment, Permutation};
    use crate::group::parse_word;

    fn trefoil() -> Presentation {
        let names = vec!["x".to_string(), "y".to_string()];
        let r = parse_word(&names, "x y x Y X Y").unwrap();
        Presentation::new(names, vec![r], vec![1, 1])
    }

    #[test]
    fn tensor_examples() {
        let p = trefoil();
        let triv = Representation::trivial(2);
        let x = FreeWord::gen(0);
        assert_eq!(tensor_word(&triv, p.phi(), &x).unwrap()[(0, 0)], LaurentPoly::t());
        assert!(tensor_word(&triv, p.phi(), &FreeWord::identity()).unwrap().entries()[0].is_one());

        let swap = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let rep = regular_of_hom(&HomAssignment::new(2, vec![swap]));
        let x2 = x.pow(2);
        let m = tensor_word(&rep, &[1], &x2).unwrap();
        let t2 = LaurentPoly::monomial(1, 2);
        assert_eq!(m.to_rows(), vec![vec![t2.clone(), LaurentPoly::zero()], vec![LaurentPoly::zero(), t2]]);
    }

    #[test]
    fn element_matches_blockwise_fox() {
        let p = trefoil();
        let triv = Representation::trivial(2);
        let tc = assemble(&p, &triv).unwrap();
        let fx = p.fox_derivative(&p.relators()[0], "x").unwrap();
        let via_elem = tensor_element(&triv, p.phi(), &fx).unwrap();
        assert_eq!(tc.d2.block(0, 0, 1, 1), via_elem);
        assert_eq!(tc.d2[(0, 0)], LaurentPoly::from_ints(0, &[1, -1, 1]));
        assert_eq!(tc.pivot, Some(0));
    }

    #[test]
    fn unknot_complex() {
        let tc = assemble(&Presentation::unknot(), &Representation::trivial(1)).unwrap();
        assert_eq!(tc.d2.shape(), (0, 1));
        assert_eq!(tc.d1[(0, 0)], LaurentPoly::from_ints(0, &[-1, 1]));
        assert_eq!(tc.pivot, Some(0));
    }
}
