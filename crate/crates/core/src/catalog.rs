//! Built-in knots and links with their known classical data.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{braid_to_presentation, BraidWord, Presentation};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogEntry {
    pub name: &'static str,
    /// `None` for the unknot, which is entered as `<x | >`.
    pub braid: Option<BraidWord>,
    /// Classical Alexander polynomial, canonical. This is the order of the
    /// untwisted `H_1`, the single-variable polynomial for links.
    pub alexander: LaurentPoly,
    pub fibered: bool,
    /// Seifert genus; `None` for links.
    pub genus: Option<u32>,
    pub components: usize,
}

impl CatalogEntry {
    pub fn presentation(&self) -> Presentation {
        match &self.braid {
            Some(b) => braid_to_presentation(b).expect("catalog braids are valid"),
            None => Presentation::unknot(),
        }
    }
}

fn braid(strands: usize, word: &[i32]) -> Option<BraidWord> {
    Some(BraidWord { strands, word: word.to_vec() })
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "unknot",
            braid: None,
            alexander: LaurentPoly::one(),
            fibered: true,
            genus: Some(0),
            components: 1,
        },
        CatalogEntry {
            name: "3_1",
            braid: braid(2, &[1, 1, 1]),
            alexander: LaurentPoly::from_ints(0, &[1, -1, 1]),
            fibered: true,
            genus: Some(1),
            components: 1,
        },
        CatalogEntry {
            name: "4_1",
            braid: braid(3, &[1, -2, 1, -2]),
            alexander: LaurentPoly::from_ints(0, &[1, -3, 1]),
            fibered: true,
            genus: Some(1),
            components: 1,
        },
        CatalogEntry {
            name: "5_1",
            braid: braid(2, &[1, 1, 1, 1, 1]),
            alexander: LaurentPoly::from_ints(0, &[1, -1, 1, -1, 1]),
            fibered: true,
            genus: Some(2),
            components: 1,
        },
        CatalogEntry {
            name: "5_2",
            braid: braid(3, &[1, 1, 1, 2, -1, 2]),
            alexander: LaurentPoly::from_ints(0, &[2, -3, 2]),
            fibered: false,
            genus: Some(1),
            components: 1,
        },
        CatalogEntry {
            name: "6_1",
            braid: braid(4, &[1, 1, 2, -1, -3, 2, -3]),
            alexander: LaurentPoly::from_ints(0, &[2, -5, 2]),
            fibered: false,
            genus: Some(1),
            components: 1,
        },
        CatalogEntry {
            name: "hopf",
            braid: braid(2, &[1, 1]),
            // order of H_1 for the class sending both meridians to 1
            alexander: LaurentPoly::from_ints(0, &[-1, 1]),
            fibered: true,
            genus: None,
            components: 2,
        },
    ]
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    catalog().into_iter().find(|e| e.name.eq_ignore_ascii_case(name)).ok_or_else(|| Error::Parse {
        location: format!("catalog:{name}"),
        message: format!(
            "unknown catalog entry; known: {}",
            catalog().iter().map(|e| e.name).collect::<Vec<_>>().join(", ")
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::Representation;
    use crate::twisted::twisted_report;
    use crate::Budget;

    #[test]
    fn engine_matches_catalog() {
        for e in catalog() {
            let p = e.presentation();
            let r = twisted_report(&p, &Representation::trivial(p.num_generators()), &Budget::unlimited()).unwrap();
            assert_eq!(r.delta1, e.alexander, "{}", e.name);
        }
    }
}
