use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::homs::{HomAssignment, HomAssignmentJson};
use super::perm::FiniteGroupTable;
use crate::error::{Error, Result};
use crate::group::{FreeWord, Presentation};
use crate::laurent::{LaurentPoly, PolyMatrix};

/// Square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidRepresentation(format!("matrix rows must have length {n}")));
        }
        Ok(IntMatrix { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        IntMatrix { n, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn is_permutation_matrix(&self) -> bool {
        let n = self.n;
        self.data.iter().all(|&x| x == 0 || x == 1)
            && (0..n).all(|i| (0..n).map(|j| self.get(i, j)).sum::<i64>() == 1)
            && (0..n).all(|j| (0..n).map(|i| self.get(i, j)).sum::<i64>() == 1)
    }

    /// Inverse over Z, if the matrix is unimodular.
    pub fn inverse(&self) -> Option<IntMatrix> {
        if self.is_permutation_matrix() {
            return Some(self.transpose());
        }
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        let v = if j < n { self.get(i, j) } else { i64::from(j - n == i) };
                        BigRational::from_integer(v.into())
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(p, c);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..2 * n {
                        let d = &f * &a[c][j];
                        a[r][j] -= d;
                    }
                }
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &a {
            for x in &row[n..] {
                if !x.is_integer() {
                    return None;
                }
                data.push(x.to_integer().to_i64()?);
            }
        }
        Some(IntMatrix { n, data })
    }

    /// Entries times `t^exp` as a polynomial matrix.
    pub fn to_poly(&self, exp: i64) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, self.n, |i, j| {
            let v = self.get(i, j);
            if v == 0 {
                LaurentPoly::zero()
            } else {
                LaurentPoly::monomial(v, exp)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Trivial,
    /// Left regular representation of the image of a homomorphism.
    Regular(HomAssignment),
    User,
}

/// Assignment of invertible integer matrices to the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    matrices: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
    provenance: Provenance,
}

impl Representation {
    pub fn trivial(num_generators: usize) -> Self {
        let id = IntMatrix::identity(1);
        Representation {
            dim: 1,
            matrices: vec![id.clone(); num_generators],
            inverses: vec![id; num_generators],
            provenance: Provenance::Trivial,
        }
    }

    /// User-supplied matrices, checked for unimodularity and against the
    /// relators of `p`.
    pub fn from_matrices(p: &Presentation, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.len() != p.num_generators() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for {} generators",
                matrices.len(),
                p.num_generators()
            )));
        }
        let dim = matrices.first().map_or(1, |m| m.dim());
        let mut inverses = Vec::with_capacity(matrices.len());
        for (g, m) in p.generators().iter().zip(&matrices) {
            if m.dim() != dim {
                return Err(Error::InvalidRepresentation(format!("matrix for `{g}` is not {dim}x{dim}")));
            }
            let inv = m
                .inverse()
                .ok_or_else(|| Error::InvalidRepresentation(format!("matrix for `{g}` is not invertible over Z")))?;
            inverses.push(inv);
        }
        let rep = Representation { dim, matrices, inverses, provenance: Provenance::User };
        rep.check_relators(p)?;
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, gen: usize) -> &IntMatrix {
        &self.matrices[gen]
    }

    pub fn inverse_matrix(&self, gen: usize) -> &IntMatrix {
        &self.inverses[gen]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.matrices.iter().all(|m| m.is_identity())
    }

    pub fn evaluate(&self, w: &FreeWord) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.dim);
        for l in w.letters() {
            let m = if l.inv { &self.inverses[l.gen] } else { &self.matrices[l.gen] };
            acc = acc.mul(m);
        }
        acc
    }

    pub fn check_relators(&self, p: &Presentation) -> Result<()> {
        for (i, r) in p.relators().iter().enumerate() {
            if !self.evaluate(r).is_identity() {
                return Err(Error::InvalidRepresentation(format!(
                    "relators[{i}] does not map to the identity"
                )));
            }
        }
        Ok(())
    }

    pub fn info(&self, p: &Presentation) -> RepInfo {
        let (kind, hom) = match &self.provenance {
            Provenance::Trivial => ("trivial", None),
            Provenance::Regular(h) => ("regular", Some(h.to_json(p.generators()))),
            Provenance::User => ("user", None),
        };
        RepInfo { kind: kind.to_string(), dimension: self.dim, hom }
    }
}

/// Left regular representation of `g`, pulled back along `h`: generator `x`
/// acts by the permutation matrix of `b -> h(x) ∘ b` on the element list,
/// so that `M(u) M(v) = M(u ∘ v)`.
pub fn regular_representation(g: &FiniteGroupTable, h: &HomAssignment) -> Result<Representation> {
    let k = g.order();
    let mut matrices = Vec::with_capacity(h.images().len());
    for img in h.images() {
        let gi = g
            .index_of(img)
            .ok_or_else(|| Error::InvalidRepresentation("generator image outside the group".into()))?;
        let mut data = vec![0i64; k * k];
        for b in 0..k {
            let a = g.product(gi, b);
            data[a * k + b] = 1;
        }
        matrices.push(IntMatrix { n: k, data });
    }
    let inverses = matrices.iter().map(|m| m.transpose()).collect();
    Ok(Representation { dim: k, matrices, inverses, provenance: Provenance::Regular(h.clone()) })
}

/// Regular representation of the image subgroup of `h`.
pub fn regular_of_hom(h: &HomAssignment) -> Representation {
    regular_representation(&h.image_subgroup(), h).expect("images generate the group")
}

/// Wire description of a representation inside reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepInfo {
    pub kind: String,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hom: Option<HomAssignmentJson>,
}

/// User representation file: `{"dimension":2,"matrices":{"x":[[0,1],[1,0]]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub dimension: usize,
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

impl RepresentationJson {
    pub fn build(&self, p: &Presentation) -> Result<Representation> {
        let mut ms = Vec::new();
        for g in p.generators() {
            let rows = self
                .matrices
                .get(g)
                .ok_or_else(|| Error::InvalidRepresentation(format!("no matrix for `{g}`")))?;
            let m = IntMatrix::from_rows(rows)?;
            if m.dim() != self.dimension {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix for `{g}` is not {0}x{0}",
                    self.dimension
                )));
            }
            ms.push(m);
        }
        Representation::from_matrices(p, ms)
    }
}

/// Determinant of an integer matrix, for unimodularity checks.
pub fn int_det(m: &IntMatrix) -> i64 {
    let pm = m.to_poly(0);
    let d = pm.det().expect("square");
    d.coeff(0).to_integer().to_i64().unwrap_or(if d.coeff(0).is_positive() { i64::MAX } else { i64::MIN })
}

#[allow(dead_code)]
fn is_unimodular(m: &IntMatrix) -> bool {
    int_det(m).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::Permutation;
    use crate::group::parse_word;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn trivial_group_gives_one_by_one() {
        let h = HomAssignment::new(3, vec![Permutation::identity(3); 2]);
        let r = regular_of_hom(&h);
        assert_eq!(r.dim(), 1);
        assert!(r.matrices().iter().all(|m| m.is_identity()));
    }

    #[test]
    fn z2_swap_matrix() {
        let h = HomAssignment::new(2, vec![cyc(2, &[&[0, 1]])]);
        let r = regular_of_hom(&h);
        assert_eq!(r.matrix(0).rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn s3_matrices_respect_cayley_table() {
        let h = HomAssignment::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])]);
        let g = h.image_subgroup();
        assert_eq!(g.order(), 6);
        // one matrix per group element, via a hom from the free group on all elements
        let all = HomAssignment::new(3, g.elements().to_vec());
        let r = regular_representation(&g, &all).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let ab = g.product(a, b);
                assert_eq!(r.matrix(a).mul(r.matrix(b)), *r.matrix(ab));
            }
            assert_eq!(*r.inverse_matrix(a), r.matrix(a).transpose());
        }
        let distinct: std::collections::HashSet<_> = r.matrices().iter().collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn user_representation_checks() {
        let names = vec!["x".to_string(), "y".to_string()];
        let rel = parse_word(&names, "x y x Y X Y").unwrap();
        let p = Presentation::new(names, vec![rel], vec![1, 1]);
        // Burau-free check: the S_3 permutation representation satisfies the braid relation
        let a = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(Representation::from_matrices(&p, vec![a.clone(), b]).is_ok());
        let bad = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(Representation::from_matrices(&p, vec![a, bad]).is_err());
        let singular = IntMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(Representation::from_matrices(&p, vec![singular.clone(), singular]).is_err());
    }

    #[test]
    fn integer_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(int_det(&m), 1);
        assert!(IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap().inverse().is_none());
    }
}
