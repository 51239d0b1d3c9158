use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde_json::Value;

use propcalc::gradedlinear::ComplexJson;
use propcalc::propcore::{parse_biarity, Presentation, PropJson, TruncatedProp};
use propcalc::ChainComplex;

use crate::report::RunReport;

/// What a JSON input file holds, guessed from its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Complex,
    Map,
    BiObject,
    Prop,
    Presentation,
    Algebra,
    Lift,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Complex => "complex",
            Kind::Map => "morphism",
            Kind::BiObject => "biobject",
            Kind::Prop => "prop",
            Kind::Presentation => "presentation",
            Kind::Algebra => "algebra",
            Kind::Lift => "lift",
        }
    }
}

pub fn detect(v: &Value) -> Result<Kind> {
    let o = v.as_object().context("input must be a JSON object")?;
    let has = |k: &str| o.contains_key(k);
    Ok(if has("solutions") && has("prop") {
        Kind::Lift
    } else if has("degrees") {
        Kind::Complex
    } else if has("source") && has("target") {
        Kind::Map
    } else if has("components") && has("units") {
        Kind::Prop
    } else if has("components") {
        Kind::BiObject
    } else if has("generators") && has("words") {
        Kind::Presentation
    } else if has("complex") {
        Kind::Algebra
    } else {
        bail!("cannot tell what kind of input this is (keys: {:?})", o.keys().collect::<Vec<_>>())
    })
}

pub struct Loaded {
    pub bytes: Vec<u8>,
    pub value: Value,
}

pub fn read(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let value = serde_json::from_slice(&bytes).with_context(|| format!("parse error in {}", path.display()))?;
    Ok(Loaded { bytes, value })
}

pub fn typed<T: DeserializeOwned>(l: &Loaded, what: &str) -> Result<T> {
    serde_json::from_value(l.value.clone()).with_context(|| format!("not a valid {what} file"))
}

pub fn load_complex(path: &Path, report: &mut RunReport) -> Result<Arc<ChainComplex>> {
    let l = read(path)?;
    report.input("complex", &l.bytes);
    let j: ComplexJson = typed(&l, "complex")?;
    Ok(Arc::new(j.to_complex()?))
}

/// Reads a prop, optionally cut down to a smaller bound.
pub fn load_prop(path: &Path, bound: Option<usize>, report: &mut RunReport) -> Result<Arc<TruncatedProp>> {
    let l = read(path)?;
    report.input("prop", &l.bytes);
    let mut j: PropJson = typed(&l, "prop")?;
    if let Some(b) = bound {
        j = truncate(j, b)?;
    }
    Ok(Arc::new(TruncatedProp::from_json(&j)?))
}

pub fn load_presentation(path: Option<&Path>, p: &TruncatedProp, report: &mut RunReport) -> Result<Presentation> {
    match path {
        Some(path) => {
            let l = read(path)?;
            report.input("presentation", &l.bytes);
            typed(&l, "presentation")
        }
        None => {
            let v = p.presentation.clone().context("the prop carries no presentation; pass --presentation")?;
            serde_json::from_value(v).context("malformed presentation block in the prop")
        }
    }
}

/// Drops everything of total arity above `bound`.
pub fn truncate(mut j: PropJson, bound: usize) -> Result<PropJson> {
    if bound > j.bound {
        bail!("--bound {bound} exceeds the bound {} of the input prop", j.bound);
    }
    let within = |k: &str| parse_biarity(k).map(|(m, n)| m + n <= bound).unwrap_or(false);
    let pair_within = |k: &str, vertical: bool| {
        let Some((x, y)) = k.split_once('|') else { return false };
        let (Ok(x), Ok(y)) = (parse_biarity(x), parse_biarity(y)) else { return false };
        let r = if vertical { (y.0, x.1) } else { (x.0 + y.0, x.1 + y.1) };
        [x, y, r].iter().all(|(m, n)| m + n <= bound)
    };
    j.components.retain(|k, _| within(k));
    j.right_actions.retain(|k, _| within(k));
    j.left_actions.retain(|k, _| within(k));
    j.units.retain(|k, _| k.parse::<usize>().map(|n| 2 * n <= bound).unwrap_or(false));
    j.vertical.retain(|k, _| pair_within(k, true));
    j.horizontal.retain(|k, _| pair_within(k, false));
    if let Some(v) = j.presentation.take() {
        let mut pres: Presentation = serde_json::from_value(v).context("malformed presentation block")?;
        pres.words.retain(|k, _| within(k));
        pres.generators.retain(|_, g| within(&g.biarity));
        let kept: Vec<String> = pres.generators.keys().cloned().collect();
        pres.dwords.retain(|g, _| kept.contains(g));
        j.presentation = Some(serde_json::to_value(pres)?);
    }
    j.bound = bound;
    Ok(j)
}
