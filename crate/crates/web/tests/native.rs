use stardecomp_web::{hrc, sd_drawing, shelling, Drawing};

#[test]
fn triangle_subdivisions_have_expected_sizes() {
    for (level, tris) in [(0, 1), (1, 6), (2, 36)] {
        let d: Drawing = serde_json::from_str(&sd_drawing("0 1 2", "", level).unwrap()).unwrap();
        assert_eq!(d.triangles.len(), tris);
    }
}

#[test]
fn barycentres_follow_given_positions() {
    let d: Drawing =
        serde_json::from_str(&sd_drawing("0 1", r#"{"0":[0,0],"1":[2,4]}"#, 1).unwrap()).unwrap();
    // sd ids follow graded order: {0}, {1}, {0,1}.
    assert_eq!(d.points[&2], [1.0, 2.0]);
    assert_eq!(d.labels[&2], "{0,1}");
}

#[test]
fn rejects_bad_input() {
    assert!(sd_drawing("0 x", "", 1).is_err());
    assert!(sd_drawing("0 1 2 3", "", 1).is_err());
    assert!(sd_drawing("0 1", "{", 1).is_err());
}

#[test]
fn hrc_verdicts() {
    let ok: serde_json::Value = serde_json::from_str(&hrc("0 1 2\n0 2 3", 10_000).unwrap()).unwrap();
    assert_eq!(ok["result"], "certified");
    let bad: serde_json::Value = serde_json::from_str(&hrc("1 2 3\n3 4 5", 10_000).unwrap()).unwrap();
    assert_eq!(bad["result"], "fails");
    assert_eq!(bad["witness"], serde_json::json!([3]));
}

#[test]
fn shelling_animation_covers_every_facet_once() {
    let r: serde_json::Value = serde_json::from_str(&shelling("0 1 2\n0 2 3", "", 100_000).unwrap()).unwrap();
    assert_eq!(r["result"], "shelled");
    let anim = &r["animation"];
    let order = anim["order"].as_array().unwrap();
    assert_eq!(order.len(), 72);
    let mut facets: Vec<Vec<u64>> = order
        .iter()
        .map(|f| f.as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect())
        .collect();
    let mut tris: Vec<Vec<u64>> = anim["drawing"]["triangles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect())
        .collect();
    facets.sort();
    tris.sort();
    assert_eq!(facets, tris);
}

#[test]
fn shelling_reports_hrc_failure() {
    let r: serde_json::Value = serde_json::from_str(&shelling("1 2 3\n3 4 5", "", 10_000).unwrap()).unwrap();
    assert_eq!(r["result"], "hrc_failure");
}
