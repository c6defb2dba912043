use facelat::exactgeom::{rat, ratio, PolyCone, RatVec};
use facelat::fixtures;
use facelat::io::Body;
use facelat::planar::{Cone2, FaceDescriptor, Feature, PlanarBody};
use facelat::polytope::Polytope;
use facelat::rv;
use proptest::prelude::*;

fn planar(name: &str) -> PlanarBody {
    match fixtures::load(name).unwrap().body {
        Body::Planar(b) => b,
        Body::Polytope(_) => panic!("{name} is a polytope"),
    }
}

const CLOSED: &[&str] = &["quarter_disk", "stadium", "lens", "unit_disk", "square_planar", "truncated_disk_closed"];
const ALL: &[&str] = &[
    "quarter_disk",
    "stadium",
    "lens",
    "unit_disk",
    "square_planar",
    "truncated_disk_closed",
    "truncated_disk_open",
    "fig5_left",
    "fig5_right",
    "triangle_deleted_vertex",
];

fn triangle(features: [bool; 3], junctions: [bool; 3]) -> Option<PlanarBody> {
    let v = [rv![0, 0], rv![2, 0], rv![1, 2]];
    let fs = (0..3).map(|i| Feature::Segment { from: v[i].clone(), to: v[(i + 1) % 3].clone() }).collect();
    PlanarBody::new(fs, features.to_vec(), junctions.to_vec()).ok()
}

fn proper_exposed(b: &PlanarBody) -> Vec<FaceDescriptor> {
    b.special_exposed_faces().into_iter().filter(|f| !matches!(f, FaceDescriptor::Empty | FaceDescriptor::Whole)).collect()
}

fn left_condition(b: &PlanarBody) -> bool {
    let s = b.summary();
    s.proper_touching == 3
        && s.touching_not_normal.is_empty()
        && proper_exposed(b).iter().all(|f| b.coatom_check(f).unwrap().is_coatom_intersection)
}

fn right_condition(left: &PlanarBody, right: &PlanarBody) -> bool {
    let (l, r) = (left.summary(), right.summary());
    r.proper_normal == l.proper_normal + 1
        && r.proper_touching == l.proper_touching + 2
        && matches!(right.coatom_check(&FaceDescriptor::Vertex(2)), Ok(c) if !c.is_coatom_intersection)
}

#[test]
fn fig5_encoding_by_enumeration() {
    let mut matches = Vec::new();
    for mask in 0..32u32 {
        let f = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
        let j = [mask & 8 != 0, mask & 16 != 0, false];
        let (Some(left), Some(right)) = (triangle(f, j), triangle(f, [j[0], j[1], true])) else { continue };
        if left_condition(&left) && right_condition(&left, &right) {
            matches.push((f, j));
        }
    }
    // the pinned encoding and its mirror image
    assert_eq!(matches, vec![([true, false, true], [true, false, false]), ([true, true, false], [false, true, false])]);

    let (left, right) = (planar("fig5_left"), planar("fig5_right"));
    assert_eq!(Some(left.clone()), triangle([true, true, false], [false, true, false]));
    assert_eq!(Some(right.clone()), triangle([true, true, false], [false, true, true]));
    assert!(left_condition(&left) && right_condition(&left, &right));

    // deleting all three vertices gives three normal touching cones but adding the top
    // vertex brings only one new touching cone
    let bare = triangle([true; 3], [false; 3]).unwrap();
    let topped = triangle([true; 3], [false, false, true]).unwrap();
    assert!(left_condition(&bare));
    assert_eq!(topped.summary().proper_touching, bare.summary().proper_touching + 1);
}

#[test]
fn polygon_cones_do_not_depend_on_ambient_space() {
    let polys = [
        vec![rv![-1, -1], rv![1, -1], rv![1, 1], rv![-1, 1]],
        vec![rv![0, 0], rv![2, 0], rv![1, 2]],
        vec![rv![0, 0], rv![3, 0], rv![4, 2], rv![1, 3], rv![-1, 1]],
    ];
    for vs in polys {
        let b = PlanarBody::polygon(&vs).unwrap();
        let p2 = Polytope::new(vs.clone()).unwrap();
        let lifted: Vec<RatVec> = vs.iter().map(|v| RatVec::new(vec![v.get(0).clone(), v.get(1).clone(), rat(0)])).collect();
        let p3 = Polytope::new(lifted.clone()).unwrap();
        let z = PolyCone::pos_hull(3, &[rv![0, 0, 1], rv![0, 0, -1]]);
        let embed = |c: &PolyCone| {
            let gens: Vec<RatVec> =
                c.generators().iter().map(|g| RatVec::new(vec![g.get(0).clone(), g.get(1).clone(), rat(0)])).collect();
            PolyCone::pos_hull(3, &gens).sum(&z)
        };
        let mut pts: Vec<RatVec> = vs.clone();
        for i in 0..vs.len() {
            pts.push((&vs[i] + &vs[(i + 1) % vs.len()]).scale(&ratio(1, 2)));
        }
        for x in &pts {
            let n2 = b.normal_cone_at(x).unwrap().to_polycone();
            assert_eq!(n2, p2.normal_cone_at(x).unwrap());
            let x3 = RatVec::new(vec![x.get(0).clone(), x.get(1).clone(), rat(0)]);
            assert_eq!(embed(&n2), p3.normal_cone_at(&x3).unwrap());
        }
        assert_eq!(b.special_normal_cones().len(), p2.normal_cones().len());
        assert_eq!(b.special_touching_cones().len(), p2.touching_cones().len());
        assert_eq!(p3.normal_cones().len(), p2.normal_cones().len());
    }
}

fn directions() -> Vec<RatVec> {
    let mut v = Vec::new();
    for x in -4i64..=4 {
        for y in -4i64..=4 {
            if (x, y) != (0, 0) {
                v.push(rv![x, y]);
            }
        }
    }
    v
}

/// Rational boundary points: junctions, segment midpoints, and Pythagorean arc points.
fn boundary_points(b: &PlanarBody) -> Vec<RatVec> {
    let mut pts = Vec::new();
    for (i, f) in b.features().iter().enumerate() {
        pts.push(f.from().clone());
        match f {
            Feature::Segment { from, to } => pts.push((from + to).scale(&ratio(1, 2))),
            Feature::Arc { .. } => {
                for d in [rv![3, 4], rv![4, 3], rv![-3, 4], rv![3, -4], rv![5, 12], rv![-12, -5], rv![1, 0], rv![0, 1], rv![-1, 0], rv![0, -1]] {
                    if let (true, Some(p)) = (b.is_face(&FaceDescriptor::ArcPoint { feature: i, normal: d.clone() }), b.arc_point(i, &d)) {
                        pts.push(p);
                    }
                }
            }
        }
    }
    pts.into_iter().filter(|x| b.contains(x)).collect()
}

#[test]
fn pointwise_duality() {
    // u ∈ N(C,x) iff x ∈ F⊥(C,u); for polygons also iff ⟨u,x⟩ = h(C,u)
    for name in ALL {
        let b = planar(name);
        for x in boundary_points(&b) {
            let fx = b.face_at(&x).unwrap();
            let n = b.normal_cone(&fx).unwrap();
            for u in directions() {
                let g = b.exposed_face(&u).unwrap();
                assert_eq!(n.contains(&u), b.face_leq(&fx, &g), "{name} x={x} u={u}");
                if b.is_polygon() && b.is_closed() {
                    let h = (0..b.features().len()).map(|j| u.dot(b.junction(j))).max().unwrap();
                    assert_eq!(n.contains(&u), u.dot(&x) == h);
                }
            }
        }
    }
}

#[test]
fn touching_cone_properties() {
    for name in ALL {
        let b = planar(name);
        // the plane is N(C,∅), not a touching cone of a direction
        for c in b.special_touching_cones().into_iter().filter(|c| *c != Cone2::Plane) {
            if c.ri_contains(&RatVec::zeros(2)) {
                assert_eq!(c, Cone2::Zero);
            }
        }
        for u in directions() {
            let Ok((t, normal)) = b.touching_cone(&u) else { continue };
            assert_eq!(normal, b.is_normal_cone(&t), "{name} u={u}");
            assert_eq!(normal, b.is_sharp_normal(&u).unwrap());
            let f = b.exposed_face(&u).unwrap();
            let samples: Vec<RatVec> = match &t {
                Cone2::Sector(a, c) => vec![a + c, &(a + a) + c, &(&(c + c) + c) + a],
                other => vec![other.ri_direction().unwrap().scale(&rat(5))],
            };
            for v in samples {
                assert_eq!(b.exposed_face(&v).unwrap(), f, "{name}: exposed face varies over ri of {t}");
            }
        }
    }
}

#[test]
fn sharp_exposed_points_expose_themselves() {
    for name in CLOSED {
        let b = planar(name);
        for x in boundary_points(&b) {
            let f = b.face_at(&x).unwrap();
            assert_eq!(b.is_sharp_exposed(&x).unwrap(), b.is_exposed(&f).unwrap() && b.sup_exposed(&f).unwrap() == f);
        }
    }
}

#[test]
fn non_closed_minkowski_failure() {
    let b = planar("triangle_deleted_vertex");
    let fails = b.minkowski_failures();
    assert!(!fails.is_empty());
    for name in ["square_planar", "quarter_disk", "truncated_disk_closed", "unit_disk"] {
        assert!(planar(name).minkowski_failures().is_empty(), "{name}");
    }
}

#[test]
fn fig5_right_top_vertex() {
    let r = planar("fig5_right");
    let c = r.coatom_check(&FaceDescriptor::Vertex(2)).unwrap();
    assert!(!c.is_coatom_intersection && !c.hypothesis_holds);
    assert_eq!(c.note, "hypothesis fails and the face is not an intersection of coatoms");
}

proptest! {
    #[test]
    fn face_at_partitions_the_body(x in -12i64..=12, y in -12i64..=12, k in 0usize..10) {
        let b = planar(ALL[k]);
        let p = RatVec::new(vec![ratio(x, 8), ratio(y, 8)]);
        if let Ok(f) = b.face_at(&p) {
            // x lies in exactly one special relative interior, except arc points not sampled
            let n = b.normal_cone(&f).unwrap();
            if let Some(u) = n.ri_direction() {
                let g = b.exposed_face(&u).unwrap();
                prop_assert!(b.face_leq(&f, &g));
            }
            prop_assert_eq!(b.sup_exposed(&f).unwrap() == f, b.is_exposed(&f).unwrap());
        } else {
            prop_assert!(!b.contains(&p));
        }
    }
}
