use lietriad_core::catalog::{self, find_class, involution_classes, Algebra};
use lietriad_core::classify::{classify_algebra, lookup_triad};
use lietriad_core::double::{weyl_max_rank_with, DoubleSatakeDiagram};
use lietriad_core::render;
use lietriad_core::sigma::{reconstruct_sigma, SatakeDiagram};
use lietriad_core::{Error, Execution};

#[test]
fn sequential_and_parallel_reports_match() {
    for g in ["so8", "su6", "e6", "sp4"] {
        let a: Algebra = g.parse().unwrap();
        let seq = classify_algebra(a, Execution::Sequential).unwrap();
        let par = classify_algebra(a, Execution::Parallel).unwrap();
        assert_eq!(seq.classes, par.classes, "{g}");
        assert_eq!(serde_json::to_string(&seq).unwrap(), serde_json::to_string(&par).unwrap());
    }
}

#[test]
fn report_json_fields() {
    let r = classify_algebra(Algebra::G2, Execution::Sequential).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["g"], "g2");
    assert_eq!(v["catalog_sha256"].as_str().unwrap().len(), 64);
    let row = &v["classes"][0];
    assert_eq!(row["k1"], "su(2)⊕su(2)");
    assert_eq!((row["rank"].as_u64(), row["order"].as_u64()), (Some(2), Some(1)));
    assert_eq!((row["diagram"]["type"].as_str(), row["diagram"]["rank"].as_u64()), (Some("G"), Some(2)));
}

#[test]
fn diagram_json_round_trip() {
    for a in Algebra::defaults() {
        for c in involution_classes(a).unwrap() {
            let text = serde_json::to_string(&c.diagram).unwrap();
            let back: SatakeDiagram = serde_json::from_str(&text).unwrap();
            assert_eq!(back, c.diagram);
        }
    }
    let t = lookup_triad(
        Algebra::So(8),
        &find_class(Algebra::So(8), "so1+so7").unwrap(),
        &find_class(Algebra::So(8), "so2+so6").unwrap(),
        "kappa",
    )
    .unwrap();
    let text = serde_json::to_string(&t.representative).unwrap();
    let back: DoubleSatakeDiagram = serde_json::from_str(&text).unwrap();
    assert_eq!(back, t.representative);
}

#[test]
fn malformed_diagrams_rejected() {
    let bad = r#"{"type":"D4","rank":4,"black":[7],"arrows":[]}"#;
    assert!(serde_json::from_str::<SatakeDiagram>(bad).is_err());
    // White node 1 next to black node 2 with nothing to compensate.
    let d = SatakeDiagram::new("A2".parse().unwrap(), vec![1], vec![]).unwrap();
    assert!(matches!(reconstruct_sigma(&d), Err(Error::Inadmissible(_))));
}

#[test]
fn snapshot_matches_catalog() {
    assert_eq!(catalog::snapshot_json(), catalog::SNAPSHOT);
}

// Rank 2 is below both symmetric-pair ranks, so the sweep cannot stop early.
#[test]
fn weyl_cap_is_enforced() {
    let t = lookup_triad(
        Algebra::E7,
        &find_class(Algebra::E7, "so12+su2").unwrap(),
        &find_class(Algebra::E7, "e6+so2").unwrap(),
        "id",
    )
    .unwrap();
    let ds = t.double_sigma().unwrap();
    assert!(matches!(weyl_max_rank_with(&ds, 200_000, Execution::Sequential), Err(Error::CapExceeded { .. })));
}

#[test]
fn rendering_is_stable() {
    let c = find_class(Algebra::So(12), "u6").unwrap();
    assert_eq!(render::satake_text(&c.diagram), render::satake_text(&c.diagram.clone()));
    assert!(render::satake_dot(&c.diagram).contains("a5 [xlabel=\"α5\", fillcolor=black];"));
}
