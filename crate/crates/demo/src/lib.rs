//! Browser bindings: every entry point takes plain values and returns a JSON string,
//! so the page needs no generated types.

use std::sync::Arc;

use heffter::certificate::{Certificate, HdmCertificate};
use heffter::search::{find_hdm, q_bound, q_exceeds_bound, simplified_bound, Strategy};
use heffter::space::{expand, to_heffter_array, verify_space, SpaceReport};
use heffter::{FieldCtx, HalfSet};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Node budget for in-browser searches; keeps the page responsive.
const DEMO_BUDGET: u64 = 2_000_000;

fn failure(msg: impl ToString) -> String {
    json!({ "ok": false, "error": msg.to_string() }).to_string()
}

fn axioms(rep: &SpaceReport) -> Value {
    rep.axioms()
        .iter()
        .map(|(name, w)| json!({ "axiom": name, "ok": w.is_none(), "witness": w }))
        .collect()
}

/// Verifies a certificate; an hdm is also expanded, and its first two classes
/// are laid out as a Heffter array.
#[wasm_bindgen]
pub fn verify_certificate(text: &str) -> String {
    let cert = match Certificate::parse(text) {
        Ok(c) => c,
        Err(e) => return failure(e),
    };
    match cert {
        Certificate::Space(c) => match c.to_space() {
            Ok(s) => {
                let rep = verify_space(&s);
                json!({ "ok": rep.is_valid(), "kind": "space", "space": axioms(&rep) }).to_string()
            }
            Err(e) => failure(e),
        },
        Certificate::Hdm(c) => {
            let b = match c.to_hdm() {
                Ok(b) => b,
                Err(e) => return failure(e),
            };
            let rep = match b.verify() {
                Ok(r) => r,
                Err(e) => return failure(e),
            };
            let mut out = json!({
                "ok": rep.is_valid(),
                "kind": "hdm",
                "report": rep.to_string(),
                "simple": b.is_simple(),
            });
            if rep.is_valid() {
                let s = expand(&b).expect("valid matrices expand");
                let srep = verify_space(&s);
                out["space"] = axioms(&srep);
                out["v"] = json!(s.v());
                out["density"] = json!(s.density().to_string());
                out["classes"] = json!(s.classes());
                if s.r() >= 2 {
                    if let Ok(a) = to_heffter_array(&s.classes()[0], &s.classes()[1]) {
                        let grid: Vec<Vec<Option<u32>>> = (0..a.n()).map(|i| a.row(i).collect()).collect();
                        out["array"] = json!({ "cells": grid, "valid": a.verify(s.ctx(), s.k()) });
                    }
                }
            }
            out.to_string()
        }
    }
}

/// Seeded random search; returns the certificate on success.
#[wasm_bindgen]
pub fn random_search(q: u32, k: u32, signs: &str, r: u32, seed: u32) -> String {
    let ctx = match FieldCtx::new(q, k, None) {
        Ok(c) => Arc::new(c),
        Err(e) => return failure(e),
    };
    let signs: Vec<u8> = if signs.trim() == "standard" {
        vec![0; k as usize]
    } else {
        match signs.split(',').map(|s| s.trim().parse::<u8>()).collect() {
            Ok(v) => v,
            Err(_) => return failure("signs must be `standard` or a comma list of 0/1"),
        }
    };
    let hs = match HalfSet::new(ctx, &signs) {
        Ok(h) => h,
        Err(e) => return failure(e),
    };
    match find_hdm(&hs, r as usize, Strategy::Random, Some(seed.into()), DEMO_BUDGET) {
        Ok(f) => {
            let nodes = f.meta.nodes;
            let cert = HdmCertificate::new(&f.hdm, Some(f.meta));
            json!({ "ok": true, "nodes": nodes, "certificate": cert.to_json() }).to_string()
        }
        Err(e) => failure(e),
    }
}

/// Q(k,r), its simplified form 8k⁴r, and whether `q` (0 for none) lies above Q.
#[wasm_bindgen]
pub fn bound(k: u32, r: u32, q: u32) -> String {
    if k < 3 {
        return failure("k must be at least 3");
    }
    let mut out = json!({
        "ok": true,
        "q_bound": format!("{:.6}", q_bound(k, r)),
        "simplified": simplified_bound(k, r),
    });
    if q > 0 {
        out["above"] = json!(q_exceeds_bound(q.into(), k, r));
    }
    out.to_string()
}
