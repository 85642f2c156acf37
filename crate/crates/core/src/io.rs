//! Input parsing: braid JSON, presentation JSON and `catalog:NAME` references.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::catalog::{lookup, CatalogEntry};
use crate::error::{Error, Result};
use crate::group::{braid_to_presentation, parse_word, BraidWord, Presentation};

/// A parsed input, with its catalog entry when it came from the catalog.
#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub presentation: Presentation,
    pub entry: Option<CatalogEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<String>,
    phi: BTreeMap<String, i64>,
    #[serde(default)]
    components: Option<BTreeMap<String, usize>>,
    /// Generators are meridians of a link exterior and the presentation has
    /// deficiency one.
    #[serde(default)]
    meridional: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BraidFile {
    strands: usize,
    word: Vec<i32>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn json_err(e: serde_json::Error) -> Error {
    parse_err(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

/// Resolves `catalog:NAME`, inline JSON (text starting with `{`), or a path
/// to a JSON file.
pub fn parse_input(arg: &str) -> Result<Input> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        let entry = lookup(name)?;
        return Ok(Input { name: entry.name.to_string(), presentation: entry.presentation(), entry: Some(entry) });
    }
    let (name, text) = if arg.trim_start().starts_with('{') {
        ("inline".to_string(), arg.to_string())
    } else {
        let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| parse_err(arg, e.to_string()))?;
        (arg.to_string(), text)
    };
    let presentation = parse_json(&text)?;
    Ok(Input { name, presentation, entry: None })
}

/// Dispatches on the shape of the JSON object and validates the result.
pub fn parse_json(text: &str) -> Result<Presentation> {
    let v: Value = serde_json::from_str(text).map_err(json_err)?;
    let obj = v.as_object().ok_or_else(|| parse_err("top level", "expected a JSON object"))?;
    let p = if obj.contains_key("strands") {
        let b: BraidFile = serde_json::from_value(v).map_err(|e| parse_err("braid", e.to_string()))?;
        braid_to_presentation(&BraidWord::new(b.strands, b.word)?)?
    } else if obj.contains_key("generators") {
        let f: PresentationFile =
            serde_json::from_value(v).map_err(|e| parse_err("presentation", e.to_string()))?;
        build_presentation(f)?
    } else {
        return Err(parse_err(
            "top level",
            "expected a braid {\"strands\",\"word\"} or a presentation {\"generators\",\"relators\",\"phi\"}",
        ));
    };
    p.validate().into_result()?;
    Ok(p)
}

fn build_presentation(f: PresentationFile) -> Result<Presentation> {
    let names = f.generators;
    let mut relators = Vec::with_capacity(f.relators.len());
    for (i, r) in f.relators.iter().enumerate() {
        let w = parse_word(&names, r).map_err(|e| parse_err(format!("relators[{i}]"), e.to_string()))?;
        relators.push(w);
    }
    for key in f.phi.keys() {
        if !names.contains(key) {
            return Err(parse_err(format!("phi.{key}"), "not a generator"));
        }
    }
    let mut phi = Vec::with_capacity(names.len());
    for g in &names {
        phi.push(*f.phi.get(g).ok_or_else(|| parse_err(format!("phi.{g}"), "missing value"))?);
    }
    let mut p = Presentation::new(names.clone(), relators, phi);
    if let Some(c) = f.components {
        let mut tags = Vec::with_capacity(names.len());
        for g in &names {
            tags.push(*c.get(g).ok_or_else(|| parse_err(format!("components.{g}"), "missing tag"))?);
        }
        p = p.with_components(tags);
    }
    if f.meridional {
        if p.deficiency() != 1 {
            return Err(parse_err(
                "meridional",
                format!("a meridional presentation must have deficiency one, got {}", p.deficiency()),
            ));
        }
        p = p.with_link_exterior(true);
    }
    Ok(p)
}
