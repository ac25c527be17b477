//! Reading matrices, elements and residues from command-line values.

use std::path::Path;

use serde_json::Value;
use twinbuild::coxeter::{CoxeterGroup, CoxeterMatrix, Element, Subset};
use twinbuild::thinb::{Chamber, Residue, Sign, TwinRoot};
use twinbuild::twintree::{Field, LaurentMat};
use twinbuild::{Error, Result};

fn read_source(text: &str) -> Result<Option<String>> {
    let t = text.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(t.to_string()));
    }
    let path = t.strip_prefix('@').unwrap_or(t);
    if Path::new(path).is_file() {
        return std::fs::read_to_string(path).map(Some).map_err(|e| Error::Parse(format!("{path}: {e}")));
    }
    Ok(None)
}

/// A few names for quick experiments: A3, B3, I2(5), affA2 (or A~2).
fn named(name: &str) -> Option<CoxeterMatrix> {
    let n = name.trim();
    let tail = |p: &str| n.strip_prefix(p).and_then(|r| r.parse::<usize>().ok());
    if let Some(k) = tail("affA").or_else(|| tail("A~")) {
        return (k >= 1).then(|| CoxeterMatrix::affine_a(k));
    }
    if let Some(m) = n.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')).and_then(|r| r.parse::<u32>().ok()) {
        return Some(CoxeterMatrix::dihedral(m));
    }
    if let Some(k) = tail("A") {
        return (k >= 1).then(|| CoxeterMatrix::type_a(k));
    }
    if let Some(k) = tail("B") {
        return (k >= 2).then(|| CoxeterMatrix::type_b(k));
    }
    None
}

/// A JSON file path, inline JSON, or a name such as `affA2`.
pub fn matrix(text: &str) -> Result<CoxeterMatrix> {
    match read_source(text)? {
        Some(json) => CoxeterMatrix::from_json(&json),
        None => named(text).ok_or_else(|| Error::Parse(format!("no matrix file or known name {text:?}"))),
    }
}

pub fn group(text: &str) -> Result<CoxeterGroup> {
    Ok(CoxeterGroup::new(matrix(text)?))
}

pub fn element(g: &CoxeterGroup, text: &str) -> Result<Element> {
    g.parse(text)
}

pub fn subset(g: &CoxeterGroup, text: &str) -> Result<Subset> {
    Subset::parse(text, g.rank())
}

pub fn chamber(g: &CoxeterGroup, text: &str) -> Result<Chamber> {
    Chamber::parse(g, text)
}

pub fn residue(g: &CoxeterGroup, text: &str) -> Result<Residue> {
    Residue::parse(g, text)
}

pub fn twin_root(g: &CoxeterGroup, text: &str) -> Result<TwinRoot> {
    TwinRoot::parse(g, text)
}

pub fn sign(text: &str) -> Result<Sign> {
    text.parse()
}

/// A Laurent matrix as inline JSON or a file; checks it is over GF(q).
pub fn laurent(text: &str, q: Option<u32>) -> Result<LaurentMat> {
    let src = read_source(text)?.ok_or_else(|| Error::Parse(format!("no matrix file or JSON {text:?}")))?;
    let v: Value = serde_json::from_str(&src).map_err(|e| Error::Parse(e.to_string()))?;
    let m = LaurentMat::from_json(&v)?;
    if let Some(q) = q {
        if m.field() != Field::get(q)? {
            return Err(Error::Parse(format!("matrix is over GF({}), expected GF({q})", m.field().q())));
        }
    }
    Ok(m)
}
