use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perm::{class_representatives, closure, symmetric_group, FiniteGroupTable, Permutation};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FreeWord, Presentation};

/// Homomorphism from a presented group to `S_n`, given by generator images.
/// Every homomorphism is an epimorphism onto its image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomAssignment {
    degree: usize,
    images: Vec<Permutation>,
    image_order: usize,
}

impl HomAssignment {
    pub fn new(degree: usize, images: Vec<Permutation>) -> Self {
        debug_assert!(images.iter().all(|p| p.degree() == degree));
        let image_order = closure(degree, &images, usize::MAX).len();
        HomAssignment { degree, images, image_order }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn image_order(&self) -> usize {
        self.image_order
    }

    pub fn evaluate(&self, w: &FreeWord) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for l in w.letters() {
            let g = &self.images[l.gen];
            acc = if l.inv { acc.compose(&g.inverse()) } else { acc.compose(g) };
        }
        acc
    }

    pub fn satisfies(&self, p: &Presentation) -> bool {
        self.images.len() == p.num_generators() && p.relators().iter().all(|r| self.evaluate(r).is_identity())
    }

    pub fn image_subgroup(&self) -> FiniteGroupTable {
        FiniteGroupTable::generated_by(self.degree, &self.images)
    }

    /// Post-composition with conjugation by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> HomAssignment {
        HomAssignment {
            degree: self.degree,
            images: self.images.iter().map(|p| p.conjugate_by(g)).collect(),
            image_order: self.image_order,
        }
    }

    pub fn to_json(&self, names: &[String]) -> HomAssignmentJson {
        HomAssignmentJson {
            degree: self.degree,
            images: names.iter().cloned().zip(self.images.iter().cloned()).collect(),
            image_order: self.image_order,
        }
    }

    pub fn from_json(j: &HomAssignmentJson, p: &Presentation) -> Result<Self> {
        let mut images = Vec::with_capacity(p.num_generators());
        for g in p.generators() {
            let img = j.images.get(g).ok_or_else(|| Error::Parse {
                location: format!("images.{g}"),
                message: "missing generator image".into(),
            })?;
            if img.degree() != j.degree {
                return Err(Error::Parse {
                    location: format!("images.{g}"),
                    message: format!("expected a permutation of degree {}", j.degree),
                });
            }
            Permutation::from_images(img.images().to_vec())?;
            images.push(img.clone());
        }
        Ok(HomAssignment::new(j.degree, images))
    }
}

/// Wire form: `{"degree":3,"images":{"x":[1,0,2]},"imageOrder":6}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HomAssignmentJson {
    pub degree: usize,
    pub images: BTreeMap<String, Permutation>,
    pub image_order: usize,
}

#[derive(Clone, Debug, Default)]
pub struct HomSearchOptions {
    /// Restrict generators to images conjugate to the first generator of their
    /// link component, and fix the very first generator to one
    /// representative per conjugacy class. Only sound when generators in a
    /// component are conjugate (meridians).
    pub meridional: bool,
    /// Keep one representative per simultaneous-conjugacy orbit.
    pub dedupe: bool,
    pub budget: Budget,
}

struct Search<'a> {
    n: usize,
    relators_at: Vec<Vec<&'a FreeWord>>,
    all: Vec<Permutation>,
    by_type: HashMap<Vec<usize>, Vec<Permutation>>,
    leader: Vec<Option<usize>>,
    meridional: bool,
    budget: &'a Budget,
}

impl Search<'_> {
    fn candidates(&self, gen: usize, assigned: &[Permutation]) -> &[Permutation] {
        if !self.meridional {
            return &self.all;
        }
        match self.leader[gen] {
            Some(l) => &self.by_type[&assigned[l].cycle_type()],
            None => &self.all,
        }
    }

    fn relator_holds(&self, w: &FreeWord, assigned: &[Permutation], inverses: &[Permutation]) -> bool {
        let letters = w.letters();
        (0..self.n).all(|start| {
            let mut i = start;
            for l in letters.iter().rev() {
                i = if l.inv { inverses[l.gen].apply(i) } else { assigned[l.gen].apply(i) };
            }
            i == start
        })
    }

    fn extend(
        &self,
        assigned: &mut Vec<Permutation>,
        inverses: &mut Vec<Permutation>,
        out: &mut Vec<Vec<Permutation>>,
        steps: &mut u64,
    ) -> Result<()> {
        let depth = assigned.len();
        if depth == self.leader.len() {
            out.push(assigned.clone());
            return Ok(());
        }
        let cands = self.candidates(depth, assigned).to_vec();
        for c in cands {
            *steps += 1;
            if *steps % 4096 == 0 {
                self.budget.check()?;
            }
            inverses.push(c.inverse());
            assigned.push(c);
            if self.relators_at[depth].iter().all(|r| self.relator_holds(r, assigned, inverses)) {
                self.extend(assigned, inverses, out, steps)?;
            }
            assigned.pop();
            inverses.pop();
        }
        Ok(())
    }
}

/// All homomorphisms from the presented group to `S_n`, subject to the
/// pruning in `opts`, sorted by images.
///
/// Generators are assigned in presentation order and each relator is checked
/// as soon as its highest generator is assigned. The first generator's
/// candidates are explored in parallel.
pub fn enumerate_homs(p: &Presentation, n: usize, opts: &HomSearchOptions) -> Result<Vec<HomAssignment>> {
    assert!(n >= 1, "degree must be positive");
    let g = p.num_generators();
    let mut relators_at: Vec<Vec<&FreeWord>> = vec![Vec::new(); g.max(1)];
    for r in p.relators() {
        if let Some(top) = r.max_gen() {
            relators_at[top].push(r);
        }
    }
    let all = symmetric_group(n);
    let mut by_type: HashMap<Vec<usize>, Vec<Permutation>> = HashMap::new();
    for q in &all {
        by_type.entry(q.cycle_type()).or_default().push(q.clone());
    }
    let comps: Vec<usize> = match p.components() {
        Some(c) => c.to_vec(),
        None => vec![0; g],
    };
    let mut first_of: HashMap<usize, usize> = HashMap::new();
    let leader: Vec<Option<usize>> = (0..g)
        .map(|i| match first_of.get(&comps[i]) {
            Some(&l) => Some(l),
            None => {
                first_of.insert(comps[i], i);
                None
            }
        })
        .collect();

    if g == 0 {
        return Ok(vec![HomAssignment::new(n, Vec::new())]);
    }

    let search = Search { n, relators_at, all, by_type, leader, meridional: opts.meridional, budget: &opts.budget };
    let first: Vec<Permutation> =
        if opts.meridional { class_representatives(n) } else { search.all.clone() };

    let chunks: Vec<Result<Vec<Vec<Permutation>>>> = first
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            let mut assigned = vec![c.clone()];
            let mut inverses = vec![c.inverse()];
            if search.relators_at[0].iter().all(|r| search.relator_holds(r, &assigned, &inverses)) {
                let mut steps = 0;
                search.extend(&mut assigned, &mut inverses, &mut out, &mut steps)?;
            }
            Ok(out)
        })
        .collect();

    let mut homs = Vec::new();
    for chunk in chunks {
        for images in chunk? {
            homs.push(HomAssignment::new(n, images));
        }
    }
    opts.budget.check()?;
    homs.sort();
    if opts.dedupe {
        homs = dedupe(&homs);
    }
    Ok(homs)
}

/// Canonical representative of the simultaneous-conjugation orbit: the
/// lexicographically least conjugate.
pub fn canonical_conjugate(h: &HomAssignment) -> HomAssignment {
    symmetric_group(h.degree)
        .iter()
        .map(|g| h.conjugate_by(g))
        .min()
        .expect("S_n is nonempty")
}

/// One representative per orbit under simultaneous conjugation in `S_n`.
pub fn dedupe(hs: &[HomAssignment]) -> Vec<HomAssignment> {
    let set: BTreeSet<HomAssignment> = hs.par_iter().map(canonical_conjugate).collect();
    set.into_iter().collect()
}

/// Whether two homomorphisms of the same group have the same kernel, i.e.
/// induce isomorphic regular representations. Tested by checking that the
/// diagonal image in `S_a × S_b` is no larger than either factor's image.
pub fn same_kernel(a: &HomAssignment, b: &HomAssignment) -> bool {
    if a.image_order != b.image_order || a.images.len() != b.images.len() {
        return false;
    }
    let pairs: Vec<Permutation> = a.images.iter().zip(&b.images).map(|(x, y)| x.direct_sum(y)).collect();
    closure(a.degree + b.degree, &pairs, a.image_order).len() == a.image_order
}

/// Keeps the first homomorphism of each kernel class, preserving order.
pub fn dedupe_by_kernel(hs: &[HomAssignment]) -> Vec<HomAssignment> {
    let mut kept: Vec<HomAssignment> = Vec::new();
    for h in hs {
        if !kept.iter().any(|k| same_kernel(k, h)) {
            kept.push(h.clone());
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_word;

    fn trefoil() -> Presentation {
        let names = vec!["x".to_string(), "y".to_string()];
        let r = parse_word(&names, "x y x Y X Y").unwrap();
        Presentation::new(names, vec![r], vec![1, 1])
    }

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn trefoil_to_s3_contains_transpositions() {
        let homs = enumerate_homs(&trefoil(), 3, &HomSearchOptions::default()).unwrap();
        let h = HomAssignment::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])]);
        assert!(homs.contains(&h));
        assert_eq!(h.image_order(), 6);
        assert!(homs.iter().all(|h| h.satisfies(&trefoil())));
    }

    #[test]
    fn degree_one_has_one_hom() {
        let homs = enumerate_homs(&trefoil(), 1, &HomSearchOptions::default()).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].image_order(), 1);
    }

    #[test]
    fn free_group_to_s2() {
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![], vec![1, 0]);
        assert_eq!(enumerate_homs(&p, 2, &HomSearchOptions::default()).unwrap().len(), 4);
    }

    #[test]
    fn dedupe_examples() {
        let h = HomAssignment::new(3, vec![cyc(3, &[&[0, 1]])]);
        assert_eq!(dedupe(std::slice::from_ref(&h)).len(), 1);
        let k = HomAssignment::new(3, vec![cyc(3, &[&[1, 2]])]);
        assert_eq!(dedupe(&[h, k]).len(), 1);
    }

    #[test]
    fn kernels() {
        // x -> (0 1) in S_2 and x -> (0 1)(2 3) in S_4 have the same kernel
        let a = HomAssignment::new(2, vec![cyc(2, &[&[0, 1]])]);
        let b = HomAssignment::new(4, vec![cyc(4, &[&[0, 1], &[2, 3]])]);
        assert!(same_kernel(&a, &b));
        let c = HomAssignment::new(3, vec![cyc(3, &[&[0, 1, 2]])]);
        assert!(!same_kernel(&a, &c));
        // free group on two letters: (x,y) -> (s, s) vs (s, 1) differ
        let d = HomAssignment::new(2, vec![cyc(2, &[&[0, 1]]), cyc(2, &[&[0, 1]])]);
        let e = HomAssignment::new(2, vec![cyc(2, &[&[0, 1]]), Permutation::identity(2)]);
        assert!(!same_kernel(&d, &e));
        assert_eq!(dedupe_by_kernel(&[a.clone(), b, c]).len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let p = trefoil();
        let h = HomAssignment::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])]);
        let j = serde_json::to_string(&h.to_json(p.generators())).unwrap();
        assert_eq!(j, r#"{"degree":3,"images":{"x":[1,0,2],"y":[0,2,1]},"imageOrder":6}"#);
        let back: HomAssignmentJson = serde_json::from_str(&j).unwrap();
        assert_eq!(HomAssignment::from_json(&back, &p).unwrap(), h);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Presentation::new((0..4).map(|i| format!("g{i}")).collect(), vec![], vec![1, 0, 0, 0]);
        let opts = HomSearchOptions { budget: Budget::with_secs(0.0), ..Default::default() };
        assert_eq!(enumerate_homs(&p, 4, &opts), Err(Error::BudgetExhausted));
    }
}
