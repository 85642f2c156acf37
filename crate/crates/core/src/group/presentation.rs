use std::collections::{BTreeMap, HashSet};
use std::fmt;

use super::fox::{fox_derivative, GroupRingElement};
use super::word::{FreeWord, Letter};
use crate::error::{Error, Result};

/// Finite presentation with a distinguished class `phi: generators -> Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
    phi: Vec<i64>,
    /// Link-component index per generator, when the generators are meridians.
    components: Option<Vec<usize>>,
    /// Deficiency-one meridional presentation of a link exterior (braid
    /// closures and their connected sums). Everything else is treated as a
    /// bare group presentation.
    link_exterior: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `phi(relator) != 0`.
    PhiOnRelator { relator: usize, value: i64 },
    PhiTrivial,
    DuplicateGenerator(String),
    PhiLength { generators: usize, phi: usize },
    LetterOutOfRange { relator: usize, gen: usize },
    ComponentLength { generators: usize, components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PhiOnRelator { relator, value } => {
                write!(f, "relators[{relator}]: phi evaluates to {value}, expected 0")
            }
            Violation::PhiTrivial => write!(f, "phi: class is identically zero"),
            Violation::DuplicateGenerator(g) => write!(f, "generators: duplicate name `{g}`"),
            Violation::PhiLength { generators, phi } => {
                write!(f, "phi: {phi} values for {generators} generators")
            }
            Violation::LetterOutOfRange { relator, gen } => {
                write!(f, "relators[{relator}]: generator index {gen} out of range")
            }
            Violation::ComponentLength { generators, components } => {
                write!(f, "components: {components} tags for {generators} generators")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            return Ok(());
        }
        let msg: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        Err(Error::InvalidPresentation(msg.join("; ")))
    }
}

impl Presentation {
    /// Assembles a presentation without validating it; see [`Self::validate`].
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>, phi: Vec<i64>) -> Self {
        Presentation { generators, relators, phi, components: None, link_exterior: false }
    }

    /// `new` followed by `validate`.
    pub fn checked(generators: Vec<String>, relators: Vec<FreeWord>, phi: Vec<i64>) -> Result<Self> {
        let p = Self::new(generators, relators, phi);
        p.validate().into_result()?;
        Ok(p)
    }

    pub fn with_components(mut self, components: Vec<usize>) -> Self {
        self.components = Some(components);
        self
    }

    pub fn with_link_exterior(mut self, flag: bool) -> Self {
        self.link_exterior = flag;
        self
    }

    pub fn with_phi(mut self, phi: Vec<i64>) -> Self {
        self.phi = phi;
        self
    }

    /// The unknot exterior group `<x | >`.
    pub fn unknot() -> Self {
        Self::new(vec!["x".into()], Vec::new(), vec![1])
            .with_components(vec![0])
            .with_link_exterior(true)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn components(&self) -> Option<&[usize]> {
        self.components.as_deref()
    }

    pub fn num_components(&self) -> usize {
        match &self.components {
            Some(c) => c.iter().max().map_or(0, |m| m + 1),
            None => 1,
        }
    }

    pub fn is_link_exterior(&self) -> bool {
        self.link_exterior
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// The literal `<x | >` with a nonzero class: the solid torus.
    pub fn is_trivial_knot_group(&self) -> bool {
        self.generators.len() == 1 && self.relators.iter().all(|r| r.is_identity())
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let n = self.generators.len();
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.as_str()) {
                v.push(Violation::DuplicateGenerator(g.clone()));
            }
        }
        if self.phi.len() != n {
            v.push(Violation::PhiLength { generators: n, phi: self.phi.len() });
        }
        if let Some(c) = &self.components {
            if c.len() != n {
                v.push(Violation::ComponentLength { generators: n, components: c.len() });
            }
        }
        let mut letters_ok = true;
        for (i, r) in self.relators.iter().enumerate() {
            if let Some(g) = r.max_gen().filter(|&g| g >= n) {
                v.push(Violation::LetterOutOfRange { relator: i, gen: g });
                letters_ok = false;
            }
        }
        if self.phi.len() == n {
            if self.phi.iter().all(|&x| x == 0) {
                v.push(Violation::PhiTrivial);
            }
            if letters_ok {
                for (i, r) in self.relators.iter().enumerate() {
                    let value = self.phi_of_indexed(r);
                    if value != 0 {
                        v.push(Violation::PhiOnRelator { relator: i, value });
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    fn phi_of_indexed(&self, w: &FreeWord) -> i64 {
        w.letters().iter().map(|l| l.exponent() * self.phi[l.gen]).sum()
    }

    /// Sum of the signed phi-values of the letters of `w`.
    pub fn evaluate_phi(&self, w: &FreeWord) -> Result<i64> {
        self.check_word(w)?;
        Ok(self.phi_of_indexed(w))
    }

    fn check_word(&self, w: &FreeWord) -> Result<()> {
        match w.max_gen() {
            Some(g) if g >= self.generators.len() => Err(Error::UnknownGenerator(format!("#{g}"))),
            _ => Ok(()),
        }
    }

    pub fn fox_derivative(&self, w: &FreeWord, gen: &str) -> Result<GroupRingElement> {
        self.check_word(w)?;
        Ok(fox_derivative(w, self.generator_index(gen)?))
    }

    /// Parses a space-separated word: a generator name stands for itself; an
    /// upper-cased name or a trailing apostrophe denotes the inverse.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        parse_word(&self.generators, text)
    }

    pub fn format_word(&self, w: &FreeWord) -> String {
        w.display_with(&self.generators).to_string()
    }

    /// Per-component value of phi, used to match classes across presentations.
    /// `None` when phi is not constant on some component.
    pub fn phi_signature(&self) -> Option<Vec<i64>> {
        let k = self.num_components();
        let mut sig: Vec<Option<i64>> = vec![None; k];
        for (g, &val) in self.phi.iter().enumerate() {
            let c = self.components.as_ref().map_or(0, |c| c[g]);
            match sig[c] {
                None => sig[c] = Some(val),
                Some(prev) if prev != val => return None,
                _ => {}
            }
        }
        sig.into_iter().collect()
    }

    /// Relabelled copy used when gluing; component tags shifted by `offset`.
    fn shifted_components(&self, offset: usize) -> Vec<usize> {
        match &self.components {
            Some(c) => c.iter().map(|x| x + offset).collect(),
            None => vec![offset; self.generators.len()],
        }
    }
}

pub fn parse_word(names: &[String], text: &str) -> Result<FreeWord> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        letters.push(parse_letter(names, tok)?);
    }
    Ok(FreeWord::from_letters(letters))
}

fn parse_letter(names: &[String], tok: &str) -> Result<Letter> {
    if let Some(base) = tok.strip_suffix('\'') {
        if let Some(i) = names.iter().position(|g| g == base) {
            return Ok(Letter::new(i, true));
        }
    }
    if let Some(i) = names.iter().position(|g| g == tok) {
        return Ok(Letter::new(i, false));
    }
    let lower = tok.to_lowercase();
    if lower != tok {
        if let Some(i) = names.iter().position(|g| *g == lower) {
            return Ok(Letter::new(i, true));
        }
    }
    Err(Error::UnknownGenerator(tok.to_string()))
}

/// Disjoint union of two knot presentations plus the relator `m0 m1^{-1}`
/// identifying the chosen meridians.
pub fn connected_sum(p0: &Presentation, m0: &str, p1: &Presentation, m1: &str) -> Result<Presentation> {
    let i0 = p0.generator_index(m0)?;
    let i1 = p1.generator_index(m1)?;
    if p0.phi[i0] != p1.phi[i1] {
        return Err(Error::PhiMismatch(format!(
            "phi({m0}) = {} but phi({m1}) = {}",
            p0.phi[i0], p1.phi[i1]
        )));
    }
    let n0 = p0.generators.len();
    let mut names = p0.generators.clone();
    let taken: HashSet<String> = p0.generators.iter().chain(&p1.generators).cloned().collect();
    for g in &p1.generators {
        let mut name = g.clone();
        if names.contains(&name) {
            let mut k = 2;
            loop {
                let cand = format!("{g}_{k}");
                if !taken.contains(&cand) && !names.contains(&cand) {
                    name = cand;
                    break;
                }
                k += 1;
            }
        }
        names.push(name);
    }
    let shift: Vec<FreeWord> = (0..p1.generators.len()).map(|g| FreeWord::gen(g + n0)).collect();
    let mut relators = p0.relators.clone();
    relators.extend(p1.relators.iter().map(|r| r.substitute(&shift)));
    relators.push(FreeWord::gen(i0).mul(&FreeWord::gen_inv(i1 + n0)));
    let mut phi = p0.phi.clone();
    phi.extend_from_slice(&p1.phi);

    // the glued components merge; renumber in order of first appearance
    let c0 = p0.shifted_components(0);
    let offset = p0.num_components();
    let mut c1 = p1.shifted_components(offset);
    let (keep, merge) = (c0[i0], c1[i1]);
    for c in c1.iter_mut() {
        if *c == merge {
            *c = keep;
        }
    }
    let raw: Vec<usize> = c0.into_iter().chain(c1).collect();
    let mut relabel = BTreeMap::new();
    let comps = raw
        .iter()
        .map(|c| {
            let next = relabel.len();
            *relabel.entry(*c).or_insert(next)
        })
        .collect();

    Ok(Presentation::new(names, relators, phi)
        .with_components(comps)
        .with_link_exterior(p0.link_exterior && p1.link_exterior))
}
