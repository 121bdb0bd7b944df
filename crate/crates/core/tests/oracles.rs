mod common;

use std::sync::Arc;

use common::*;
use plocal::category::{build_linking, build_orbit, build_transporter, one_object_category};
use plocal::homology::{bar_complex, nerve_complex, DEFAULT_BUDGET};
use plocal::limits::p_subgroup_classes;
use plocal::omega::is_centric;
use plocal::Prime;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/s4_p2_bg_homology.json");

#[test]
fn bar_oracle_on_cyclic_groups() {
    // H_d(B Z/n; F_p) is 1-dimensional in every degree when p | n
    assert_eq!(bar_dims(&group("cyc:2"), 2, 4), vec![1, 1, 1, 1]);
    assert_eq!(bar_dims(&group("cyc:3"), 3, 4), vec![1, 1, 1, 1]);
    assert_eq!(bar_dims(&group("cyc:3"), 2, 4), vec![1, 0, 0, 0]);
}

#[test]
fn bar_oracle_agrees_with_library() {
    for (spec, p) in [("sym:3", 2), ("sym:3", 3), ("dih:8", 2), ("cyc:6", 3)] {
        let g = group(spec);
        let lib = bar_complex(&g, Prime::new(p).unwrap(), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(lib.complex.homology().dims, bar_dims(&g, p, 3), "{spec} p={p}");
    }
}

#[test]
fn nerve_oracle_agrees_with_library() {
    for (spec, p) in [("sym:3", 2), ("sym:3", 3), ("alt:4", 2), ("dih:8", 2)] {
        let g = group(spec);
        let prime = Prime::new(p).unwrap();
        let s = g.sylow_subgroup(prime);
        let reps = p_subgroup_classes(&g, &s);
        let centric: Vec<_> = reps.iter().filter(|q| is_centric(&g, prime, q)).cloned().collect();
        let cats = [
            build_transporter(&g, &reps),
            build_linking(&g, prime, &centric).unwrap(),
            build_orbit(&g, &reps),
            one_object_category(&g),
        ];
        for c in cats {
            let c = Arc::new(c);
            let lib = nerve_complex(&c, prime, 3, DEFAULT_BUDGET).unwrap();
            assert_eq!(lib.complex.homology().dims, nerve_dims(&c, p, 3), "{spec} p={p} {:?}", c.kind());
        }
    }
}

#[test]
fn frozen_s4_bar_homology() {
    // H_0..H_2 of B S_4 over F_2, from the unnormalized bar complex through degree 3
    let dims = bar_dims(&group("sym:4"), 2, 3);
    if std::env::var_os("PLOCAL_REGENERATE_GOLDEN").is_some() {
        let value = serde_json::json!({ "group": "sym:4", "prime": 2, "dims": dims });
        std::fs::write(GOLDEN, serde_json::to_string_pretty(&value).unwrap() + "\n").unwrap();
    }
    let golden: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(GOLDEN).unwrap()).unwrap();
    let frozen: Vec<usize> = serde_json::from_value(golden["dims"].clone()).unwrap();
    assert_eq!(dims, frozen);
}

#[test]
fn rank_oracle() {
    assert_eq!(rank(vec![vec![1, 2], vec![2, 4]], 3), 1);
    assert_eq!(rank(vec![vec![1, 2], vec![2, 1]], 3), 1);
    assert_eq!(rank(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 2), 2);
    assert_eq!(rank(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3), 3);
}
