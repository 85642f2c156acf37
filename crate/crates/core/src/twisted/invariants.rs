use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::complex::{assemble_budgeted, TwistedComplex};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finite::{RepInfo, Representation};
use crate::group::Presentation;
use crate::laurent::{left_echelon, minors_gcd_budgeted, snf_q_budgeted, LaurentPoly};

/// Gcd of the `k x k` minors of `d1`, canonical.
pub fn delta0(tc: &TwistedComplex, budget: &Budget) -> Result<LaurentPoly> {
    Ok(minors_gcd_budgeted(&tc.d1, tc.k, budget)?.canonical())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta1 {
    /// Primitive integer lift of the order of `H_1` over Q[t^{±1}], or zero.
    pub poly: LaurentPoly,
    /// Rank of `H_1` over Q(t).
    pub free_rank: usize,
}

/// Order of `H_1 = ker d1 / im d2` over the PID Q[t^{±1}].
///
/// With `U d1 = E` in echelon form, the rows of `U` past the rank span the
/// left kernel, and `d2 U^{-1}` gives the coordinates of the rows of `d2` in
/// the basis of `U`'s rows. The coordinates on the kernel rows form a
/// presentation matrix of `H_1`.
pub fn delta1_q(tc: &TwistedComplex, budget: &Budget) -> Result<Delta1> {
    let ech = left_echelon(&tc.d1, true, budget)?;
    let rank1 = ech.rank;
    let total = tc.d1.rows();
    let kernel_dim = total - rank1;
    if kernel_dim == 0 {
        return Ok(Delta1 { poly: LaurentPoly::one(), free_rank: 0 });
    }
    let uinv = ech.inverse.as_ref().expect("inverse requested");
    let coords = tc.d2.mul(uinv)?;
    let rows: Vec<usize> = (0..coords.rows()).collect();
    for i in &rows {
        if (0..rank1).any(|j| !coords[(*i, j)].is_zero()) {
            return Err(Error::ChainCondition);
        }
    }
    let cols: Vec<usize> = (rank1..total).collect();
    let c = coords.select(&rows, &cols);

    // a square presentation matrix has order det; otherwise multiply the
    // invariant factors
    let (order, rank2) = if c.rows() == c.cols() {
        let d = c.det_budgeted(budget)?;
        if d.is_zero() {
            (d, snf_q_budgeted(&c, budget)?.rank)
        } else {
            (d, kernel_dim)
        }
    } else {
        let snf = snf_q_budgeted(&c, budget)?;
        let order = if snf.rank < kernel_dim { LaurentPoly::zero() } else { snf.product() };
        (order, snf.rank)
    };
    if order.is_zero() {
        return Ok(Delta1 { poly: order, free_rank: kernel_dim - rank2 });
    }
    Ok(Delta1 { poly: order.primitive_canonical(), free_rank: 0 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wada {
    pub pivot: usize,
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

/// `det(A_j) / det(Phi(x_j) - I)` at the stored pivot.
pub fn wada(tc: &TwistedComplex, budget: &Budget) -> Result<Wada> {
    let j = tc.pivot.ok_or(Error::DegeneratePivot)?;
    wada_at(tc, j, budget)
}

pub fn wada_at(tc: &TwistedComplex, j: usize, budget: &Budget) -> Result<Wada> {
    if !tc.is_deficiency_one() {
        return Err(Error::NotDeficiencyOne { generators: tc.generators, relators: tc.relators });
    }
    let den = tc.generator_dets[j].clone();
    if den.is_zero() {
        return Err(Error::DegeneratePivot);
    }
    let num = tc.minor_matrix(j).det_budgeted(budget)?;
    Ok(Wada { pivot: j, num: num.canonical(), den: den.canonical() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralDelta1 {
    /// Canonical integral representative (primitive part when anomalous).
    pub poly: LaurentPoly,
    /// Content of `det(A_j) * delta0 / det(Phi(x_j) - I)`.
    pub content_ratio: BigRational,
    /// The quotient was not in Z[t^{±1}].
    pub anomalous: bool,
}

/// Integral normalization via `det(A_j) * delta0 = delta1 * det(Phi(x_j) - I)`.
pub fn delta1_z(delta0: &LaurentPoly, w: &Wada) -> Result<IntegralDelta1> {
    if delta0.is_zero() {
        return Err(Error::Unavailable("delta0 vanishes".into()));
    }
    let prod = &w.num * delta0;
    if prod.is_zero() {
        return Ok(IntegralDelta1 { poly: prod, content_ratio: BigRational::one(), anomalous: false });
    }
    let q = prod
        .div_exact(&w.den)
        .ok_or_else(|| Error::Inconsistent("det(Phi(x_j) - I) does not divide det(A_j) * delta0 over Q".into()))?;
    let content = q.content();
    if q.is_integral() {
        Ok(IntegralDelta1 { poly: q.canonical(), content_ratio: content, anomalous: false })
    } else {
        Ok(IntegralDelta1 { poly: q.primitive_canonical(), content_ratio: content, anomalous: true })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WadaJson {
    pub pivot: String,
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

/// Everything computed for one (presentation, representation) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistedPolyReport {
    pub delta0: LaurentPoly,
    pub delta1: LaurentPoly,
    pub delta1_zero: bool,
    pub free_rank: usize,
    pub delta1_z: Option<LaurentPoly>,
    pub content_ratio: Option<String>,
    pub content_anomaly: bool,
    /// `None` when monicness over Z cannot be decided.
    pub monic: Option<bool>,
    pub degree: Option<usize>,
    pub wada: Option<WadaJson>,
    pub rep: RepInfo,
    /// "link exterior" or "presentation invariant".
    pub scope: String,
}

impl TwistedPolyReport {
    /// Non-monic over Z with no content anomaly.
    pub fn is_nonmonic_certificate(&self) -> bool {
        !self.delta1_zero && !self.content_anomaly && self.monic == Some(false)
    }
}

pub fn twisted_report(p: &Presentation, rep: &Representation, budget: &Budget) -> Result<TwistedPolyReport> {
    let tc = assemble_budgeted(p, rep, budget)?;
    report_for_complex(p, &tc, budget)
}

pub fn report_for_complex(p: &Presentation, tc: &TwistedComplex, budget: &Budget) -> Result<TwistedPolyReport> {
    let d0 = delta0(tc, budget)?;
    let d1 = delta1_q(tc, budget)?;
    let w = if tc.is_deficiency_one() && tc.pivot.is_some() { Some(wada(tc, budget)?) } else { None };

    let mut dz = None;
    if let Some(w) = &w {
        if !d0.is_zero() {
            let z = delta1_z(&d0, w)?;
            if z.poly.monic_q() != d1.poly.monic_q() {
                return Err(Error::Inconsistent(format!(
                    "order relation: {} vs {}",
                    z.poly, d1.poly
                )));
            }
            dz = Some(z);
        }
    }
    let zero = d1.poly.is_zero();
    let anomaly = dz.as_ref().is_some_and(|z| z.anomalous);
    let monic = if zero {
        Some(false)
    } else {
        match &dz {
            Some(z) if !z.anomalous => Some(z.poly.is_monic()),
            _ => None,
        }
    };
    Ok(TwistedPolyReport {
        delta0: d0,
        degree: d1.poly.span(),
        delta1_zero: zero,
        free_rank: d1.free_rank,
        delta1: d1.poly,
        delta1_z: dz.as_ref().map(|z| z.poly.clone()),
        content_ratio: dz.as_ref().map(|z| z.content_ratio.to_string()),
        content_anomaly: anomaly,
        monic,
        wada: w.map(|w| WadaJson { pivot: p.generators()[w.pivot].clone(), num: w.num, den: w.den }),
        rep: tc.rep.clone(),
        scope: if tc.link_exterior { "link exterior" } else { "presentation invariant" }.to_string(),
    })
}

/// Free rank of `H_1` from fraction-free ranks of the boundary maps, sharing
/// no code with [`delta1_q`].
pub fn free_rank_independent(tc: &TwistedComplex, budget: &Budget) -> Result<usize> {
    let r1 = tc.d1.rank_fraction_free(budget)?;
    let r2 = tc.d2.rank_fraction_free(budget)?;
    Ok(tc.d1.rows() - r1 - r2)
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

    fn b() -> Budget {
        Budget::unlimited()
    }

    #[test]
    fn trefoil_trivial() {
        let r = twisted_report(&trefoil(), &Representation::trivial(2), &b()).unwrap();
        assert_eq!(r.delta1, LaurentPoly::from_ints(0, &[1, -1, 1]));
        assert_eq!(r.delta0, LaurentPoly::from_ints(0, &[-1, 1]));
        assert_eq!(r.monic, Some(true));
        assert_eq!(r.degree, Some(2));
        let w = r.wada.unwrap();
        assert_eq!(w.num, LaurentPoly::from_ints(0, &[1, -1, 1]));
        assert_eq!(w.den, LaurentPoly::from_ints(0, &[-1, 1]));
        assert_eq!(r.content_ratio.as_deref(), Some("1"));
    }

    #[test]
    fn unknot_trivial() {
        let r = twisted_report(&Presentation::unknot(), &Representation::trivial(1), &b()).unwrap();
        assert!(r.delta1.is_one());
        assert_eq!(r.delta1_z, Some(LaurentPoly::one()));
        let w = r.wada.unwrap();
        assert!(w.num.is_one());
    }

    #[test]
    fn trefoil_s3_regular() {
        let p = trefoil();
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let rep = regular_of_hom(&HomAssignment::new(3, vec![a, c]));
        assert_eq!(rep.dim(), 6);
        let tc = super::super::assemble(&p, &rep).unwrap();
        let r = report_for_complex(&p, &tc, &b()).unwrap();
        assert!(!r.delta1_zero);
        assert_eq!(r.monic, Some(true));
        assert_eq!(free_rank_independent(&tc, &b()).unwrap(), 0);
        // delta0 divides det(Phi(x) - I)
        assert!(r.delta0.divides(&tc.generator_dets[0]));
    }

    #[test]
    fn free_group_has_vanishing_delta1() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = Presentation::new(names, vec![], vec![1, 0]);
        let tc = super::super::assemble(&p, &Representation::trivial(2)).unwrap();
        let d = delta1_q(&tc, &b()).unwrap();
        assert!(d.poly.is_zero());
        assert_eq!(d.free_rank, 1);
        assert_eq!(free_rank_independent(&tc, &b()).unwrap(), 1);
    }
}
