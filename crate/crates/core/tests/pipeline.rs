use std::sync::Arc;

use heffter::certificate::{Certificate, HdmCertificate, SpaceCertificate};
use heffter::cycles::{build_cycle_systems, verify_cycle_system, verify_orthogonal, CycleSystem};
use heffter::search::{exhaustive_max_r, find_hdm, greedy_build, Strategy, DEFAULT_BUDGET};
use heffter::space::{automorphism_check, expand, verify_space};
use heffter::{FieldCtx, HalfSet};

fn halfset(q: u32, k: u32, signs: &[u8]) -> HalfSet {
    HalfSet::new(Arc::new(FieldCtx::new(q, k, None).unwrap()), signs).unwrap()
}

#[test]
fn search_certificate_space_cycles() {
    let found = find_hdm(&halfset(71, 5, &[0, 1, 0, 1, 0]), 5, Strategy::Exhaustive, None, DEFAULT_BUDGET).unwrap();
    let text = HdmCertificate::new(&found.hdm, Some(found.meta.clone())).to_json();
    let Certificate::Hdm(c) = Certificate::parse(&text).unwrap() else { panic!() };
    assert_eq!(c.search.as_ref(), Some(&found.meta));
    let b = c.to_hdm().unwrap();
    assert!(b.is_valid() && b.is_simple());

    let space = expand(&b).unwrap();
    assert!(verify_space(&space).is_valid());
    let g2k = space.ctx().subgroup_generator();
    assert!(automorphism_check(&space, g2k).unwrap());

    let Certificate::Space(sc) = Certificate::parse(&SpaceCertificate::new(&space).to_json()).unwrap() else {
        panic!()
    };
    let space = sc.to_space().unwrap();
    let systems = build_cycle_systems(&space).unwrap();
    assert_eq!(systems.len(), 5);
    for (h, cs) in systems.iter().enumerate() {
        let (back, idx) = CycleSystem::from_text(&cs.to_text(h)).unwrap();
        assert_eq!(idx, h);
        assert!(verify_cycle_system(&back));
        assert_eq!(back.len(), 71 * 70 / 2 / 5);
    }
    for a in 0..systems.len() {
        for b in a + 1..systems.len() {
            assert!(verify_orthogonal(&systems[a], &systems[b]));
        }
    }
}

#[test]
fn max_r_witness_is_a_space() {
    let best = exhaustive_max_r(&halfset(109, 6, &[0; 6]), false, DEFAULT_BUDGET).unwrap();
    assert_eq!(best.r_max, 5);
    assert!(verify_space(&expand(&best.witness).unwrap()).is_valid());
}

#[test]
fn greedy_output_flows_through() {
    let ctx = Arc::new(FieldCtx::new(919, 3, None).unwrap());
    let (b, _) = greedy_build(ctx, 2, Some(7)).unwrap();
    let space = expand(&b).unwrap();
    assert!(verify_space(&space).is_valid());
    let systems = build_cycle_systems(&space).unwrap();
    assert!(verify_orthogonal(&systems[0], &systems[1]));
}

#[test]
fn random_search_is_reproducible() {
    let hs = halfset(229, 6, &[0; 6]);
    let a = find_hdm(&hs, 6, Strategy::Random, Some(11), DEFAULT_BUDGET).unwrap();
    let b = find_hdm(&hs, 6, Strategy::Random, Some(11), DEFAULT_BUDGET).unwrap();
    assert_eq!(HdmCertificate::new(&a.hdm, Some(a.meta)).to_json(), HdmCertificate::new(&b.hdm, Some(b.meta)).to_json());
}
