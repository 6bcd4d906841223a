use nalgebra::Point3;
use peelkit::catalog;
use peelkit::formats::{read_json, read_off, write_json, write_off};
use peelkit::graph::{dual, face_graph, isomorphic, peel_implies_path, skeleton};
use peelkit::planar::embed;
use peelkit::unfold::{check_overlap, partial_unfold, unfold, FaceRole};
use peelkit::{peel, peel_all_pairs, Error, PeelConfig, Polyhedron};

fn lookup(name: &str) -> &'static Polyhedron {
    &catalog::lookup(name).unwrap().polyhedron
}

fn same_vertices(a: &Polyhedron, b: &Polyhedron, tol: f64) -> bool {
    a.vertices().len() == b.vertices().len()
        && a.vertices()
            .iter()
            .zip(b.vertices())
            .all(|(u, v)| (u - v).norm() < tol)
}

#[test]
fn off_and_json_round_trip_every_solid() {
    for r in catalog::all() {
        let p = &r.polyhedron;
        let off = read_off(&write_off(p)).unwrap();
        assert_eq!(off.faces(), p.faces(), "{}", r.name);
        assert!(same_vertices(&off, p, 1e-12), "{}", r.name);
        let json = read_json(&write_json(p)).unwrap();
        assert_eq!(json.faces(), p.faces());
        assert!(same_vertices(&json, p, 1e-12));
        assert_eq!(json.name(), Some(r.name));
    }
}

#[test]
fn off_count_mismatch_names_the_line() {
    let text = "OFF\n4 5 6\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";
    match read_off(text) {
        Err(Error::Parse { line, .. }) => assert!(line >= 2),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn dual_of_dual_has_the_original_skeleton() {
    for r in catalog::all() {
        let p = &r.polyhedron;
        let dd = dual(&dual(p));
        assert!(isomorphic(&skeleton(&dd), &skeleton(p)), "{}", r.name);
    }
}

#[test]
fn face_graph_is_the_dual_skeleton() {
    for r in catalog::all() {
        let p = &r.polyhedron;
        assert!(
            isomorphic(&face_graph(p), &skeleton(&dual(p))),
            "{}",
            r.name
        );
        assert!(
            isomorphic(&face_graph(p), &skeleton(&r.dual_record().polyhedron)),
            "{}",
            r.name
        );
    }
}

#[test]
fn nets_preserve_faces_and_hinges() {
    for name in ["cube", "dodecahedron", "{5,6,6}", "{4,6,8}", "[3,4,4,4]"] {
        let p = lookup(name);
        for run in peel_all_pairs(p, &PeelConfig::default())
            .unwrap()
            .iter()
            .filter(|r| r.is_complete())
        {
            let net = unfold(p, run).unwrap();
            assert_eq!(net.faces.len(), p.face_count());
            assert!(
                (net.area() - (0..p.face_count()).map(|f| p.face_area(f)).sum::<f64>()).abs()
                    < 1e-9
            );
            for (k, nf) in net.faces.iter().enumerate() {
                let k3 = p.face_edge_lengths(nf.face);
                let m = nf.polygon.len();
                for (i, want) in k3.iter().enumerate() {
                    let len = (nf.polygon[(i + 1) % m] - nf.polygon[i]).norm();
                    assert!((len - want).abs() < 1e-9);
                }
                if let Some((a, b)) = nf.hinge {
                    let prev = &net.faces[k - 1];
                    for v in [a, b] {
                        let d = (nf.point_of(v).unwrap() - prev.point_of(v).unwrap()).norm();
                        assert!(d < 1e-9, "{name}: hinge vertex {v} off by {d}");
                    }
                }
            }
        }
    }
}

#[test]
fn cube_net_has_no_overlap() {
    let p = lookup("cube");
    let run = peel(
        p,
        0,
        p.adjacency().faces(0).next().unwrap(),
        &PeelConfig::default(),
    )
    .unwrap();
    let net = unfold(p, &run).unwrap();
    assert!(check_overlap(&net, 1e-9).is_empty());
    assert_eq!(net.to_svg().matches("<polygon").count(), 6);
}

#[test]
fn partial_unfold_truncated_icosahedron_step_18() {
    let p = lookup("{5,6,6}");
    let run = peel(p, 0, 1, &PeelConfig::default()).unwrap();
    let state = partial_unfold(p, &run, 18).unwrap();
    assert_eq!(state.count(FaceRole::Unfolded), 18);
    assert_eq!(state.count(FaceRole::LastSelected), 1);
    assert_eq!(state.count(FaceRole::NotUnfolded), 13);
    // faces still in place keep their coordinates
    for f in state.faces.iter().filter(|f| f.role != FaceRole::Unfolded) {
        let original: Vec<Point3<f64>> = p.face(f.face).iter().map(|&v| p.vertices()[v]).collect();
        assert_eq!(f.points, original);
    }
}

#[test]
fn partial_unfold_last_step_is_flat_and_congruent_to_the_net() {
    let p = lookup("dodecahedron");
    let run = peel(
        p,
        0,
        p.adjacency().faces(0).next().unwrap(),
        &PeelConfig::default(),
    )
    .unwrap();
    let t = run.len();
    let state = partial_unfold(p, &run, t - 1).unwrap();
    let last = run.order()[t - 1];
    let n = p.face_normal(last);
    let anchor = p.vertices()[p.face(last)[0]];
    let points: Vec<Point3<f64>> = run
        .order()
        .iter()
        .flat_map(|&f| state.faces[f].points.clone())
        .collect();
    for q in &points {
        assert!((q - anchor).dot(&n).abs() < 1e-9);
    }
    let net = unfold(p, &run).unwrap();
    let flat: Vec<nalgebra::Point2<f64>> =
        net.faces.iter().flat_map(|f| f.polygon.clone()).collect();
    assert_eq!(flat.len(), points.len());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d3 = (points[i] - points[j]).norm();
            let d2 = (flat[i] - flat[j]).norm();
            assert!((d3 - d2).abs() < 1e-9);
        }
    }
    assert!(partial_unfold(p, &run, 0).is_err());
    assert!(partial_unfold(p, &run, t).is_err());
}

#[test]
fn tutte_drawings_of_every_skeleton() {
    for r in catalog::all() {
        let p = &r.polyhedron;
        let f2 = p.adjacency().faces(0).next().unwrap();
        let run = peel(p, 0, f2, &PeelConfig::default()).unwrap();
        let e = embed(p, &run).unwrap();
        assert!(e.crossings(1e-9).is_empty(), "{}", r.name);
        assert!(e.barycentric_residual() < 1e-9, "{}", r.name);
        assert!(e.faces_simple(1e-9), "{}", r.name);
        assert_eq!(e.trace.len(), run.len());
    }
}

#[test]
fn swapped_peel_order_is_not_a_path() {
    let p = lookup("{5,6,6}");
    let run = peel(p, 0, 1, &PeelConfig::default()).unwrap();
    let g = face_graph(p);
    assert!(peel_implies_path(&run, &g).unwrap());
    let mut broken = run.clone();
    let last = broken.steps.len() - 1;
    broken.steps.swap(1, last);
    assert!(!peel_implies_path(&broken, &g).unwrap());

    let incomplete = peel(lookup("cuboctahedron"), 0, 1, &PeelConfig::default()).unwrap();
    assert!(matches!(
        peel_implies_path(&incomplete, &face_graph(lookup("cuboctahedron"))),
        Err(Error::IncompleteSequence { .. })
    ));
}
