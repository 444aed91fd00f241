//! JSON certificates for matrices and spaces.
//!
//! Both carry `"type"` (`"hdm"` or `"space"`) so one reader handles either;
//! files without it are classified by whether they have `rows` or `classes`.
//! Nothing is trusted on load: callers re-verify through the returned objects.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::halfset::HalfSet;
use crate::hdm::HeffterDifferenceMatrix;
use crate::search::SearchMeta;
use crate::space::HeffterSpace;

fn bad<E: std::fmt::Display>(e: E) -> Error {
    Error::Certificate(e.to_string())
}

fn hdm_tag() -> String {
    "hdm".into()
}

fn space_tag() -> String {
    "space".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdmCertificate {
    #[serde(rename = "type", default = "hdm_tag")]
    pub kind: String,
    pub q: u32,
    pub k: u32,
    pub r: usize,
    pub primitive_root: u32,
    pub signs: Vec<u8>,
    pub rows: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchMeta>,
}

impl HdmCertificate {
    pub fn new(b: &HeffterDifferenceMatrix, search: Option<SearchMeta>) -> Self {
        let ctx = b.ctx();
        Self {
            kind: hdm_tag(),
            q: ctx.q(),
            k: ctx.k(),
            r: b.r(),
            primitive_root: ctx.primitive_root(),
            signs: b.halfset().signs().to_vec(),
            rows: b.rows().to_vec(),
            search,
        }
    }

    /// Rebuilds the matrix; structural problems are errors, validity is left to the caller.
    pub fn to_hdm(&self) -> Result<HeffterDifferenceMatrix> {
        if self.rows.len() != self.r {
            return Err(bad(format!("r = {} but {} rows given", self.r, self.rows.len())));
        }
        let halfset = load_halfset(self.q, self.k, self.primitive_root, &self.signs)?;
        HeffterDifferenceMatrix::new(halfset, self.rows.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceCertificate {
    #[serde(rename = "type", default = "space_tag")]
    pub kind: String,
    pub q: u32,
    pub k: u32,
    pub r: usize,
    pub primitive_root: u32,
    pub signs: Vec<u8>,
    pub classes: Vec<Vec<Vec<u32>>>,
}

impl SpaceCertificate {
    pub fn new(s: &HeffterSpace) -> Self {
        let ctx = s.ctx();
        Self {
            kind: space_tag(),
            q: ctx.q(),
            k: ctx.k(),
            r: s.r(),
            primitive_root: ctx.primitive_root(),
            signs: s.halfset().signs().to_vec(),
            classes: s.classes().to_vec(),
        }
    }

    pub fn to_space(&self) -> Result<HeffterSpace> {
        if self.classes.len() != self.r {
            return Err(bad(format!("r = {} but {} classes given", self.r, self.classes.len())));
        }
        let halfset = load_halfset(self.q, self.k, self.primitive_root, &self.signs)?;
        HeffterSpace::new(halfset, self.classes.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

fn load_halfset(q: u32, k: u32, g: u32, signs: &[u8]) -> Result<HalfSet> {
    let ctx = Arc::new(FieldCtx::new(q, k, Some(g))?);
    HalfSet::new(ctx, signs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Hdm(HdmCertificate),
    Space(SpaceCertificate),
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(bad)?;
        let kind = match value.get("type").and_then(Value::as_str) {
            Some(t) => t.to_string(),
            None if value.get("rows").is_some() => hdm_tag(),
            None if value.get("classes").is_some() => space_tag(),
            None => return Err(bad("cannot tell an hdm from a space certificate")),
        };
        match kind.as_str() {
            "hdm" => Ok(Certificate::Hdm(serde_json::from_value(value).map_err(bad)?)),
            "space" => Ok(Certificate::Space(serde_json::from_value(value).map_err(bad)?)),
            other => Err(bad(format!("unknown certificate type `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F73: &str = r#"{"q":73,"k":4,"r":4,"primitive_root":5,"signs":[0,1,0,0],"rows":[[1,68,25,52],[1,53,49,43],[1,33,50,62],[1,59,35,51]]}"#;

    #[test]
    fn untyped_hdm_certificate_loads() {
        let Certificate::Hdm(c) = Certificate::parse(F73).unwrap() else { panic!("not an hdm") };
        let b = c.to_hdm().unwrap();
        assert!(b.is_valid());
        assert!(HdmCertificate::new(&b, None).to_json().starts_with(r#"{"type":"hdm","q":73"#));
    }

    #[test]
    fn space_round_trip() {
        let Certificate::Hdm(c) = Certificate::parse(F73).unwrap() else { panic!() };
        let s = crate::space::expand(&c.to_hdm().unwrap()).unwrap();
        let text = SpaceCertificate::new(&s).to_json();
        let Certificate::Space(back) = Certificate::parse(&text).unwrap() else { panic!() };
        assert_eq!(back.to_space().unwrap().classes(), s.classes());
    }

    #[test]
    fn malformed_input() {
        assert!(Certificate::parse("{not json").is_err());
        assert!(Certificate::parse(r#"{"q":73}"#).is_err());
        assert!(Certificate::parse(r#"{"type":"cube"}"#).is_err());
        let wrong_r = F73.replace(r#""r":4"#, r#""r":3"#);
        let Certificate::Hdm(c) = Certificate::parse(&wrong_r).unwrap() else { panic!() };
        assert!(c.to_hdm().is_err());
    }
}
