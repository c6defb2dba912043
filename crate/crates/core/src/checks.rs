//! Named check suites over body files, collected into a JSON-serializable report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exactgeom::{PolyCone, RatVec, Subspace};
use crate::io::Body;
use crate::lattice::{verify_isomorphism, Direction, LatticeMap};
use crate::planar::{FaceDescriptor, PlanarBody, PlanarError};
use crate::polytope::{PolyFace, Polytope, PolytopeError};
use crate::statespace::{cone_experiment, verify_sharp_properties, Algebra, StateSpaceError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub fixture: String,
    pub verdicts: Vec<Verdict>,
    pub counts: BTreeMap<String, i64>,
}

impl CheckReport {
    fn new(suite: &str, fixture: &str) -> Self {
        CheckReport { suite: suite.into(), fixture: fixture.into(), verdicts: Vec::new(), counts: BTreeMap::new() }
    }

    fn push(&mut self, id: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.verdicts.push(Verdict { id: id.into(), status, detail: detail.into() });
    }

    fn check(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    fn count(&mut self, k: &str, v: usize) {
        self.counts.insert(k.into(), v as i64);
    }

    fn merge(&mut self, o: CheckReport) {
        self.verdicts.extend(o.verdicts);
        self.counts.extend(o.counts);
    }

    fn finish(mut self) -> Self {
        self.verdicts.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    /// Skipped checks do not count against the report.
    pub fn passes(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.id == id)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Antitone,
    Meets,
    Lift,
    Sharp,
    Touching,
    Coatoms,
    Polar,
    Partition,
    TwoD,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Antitone,
        Suite::Meets,
        Suite::Lift,
        Suite::Sharp,
        Suite::Touching,
        Suite::Coatoms,
        Suite::Polar,
        Suite::Partition,
        Suite::TwoD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Antitone => "antitone",
            Suite::Meets => "meets",
            Suite::Lift => "lift",
            Suite::Sharp => "sharp",
            Suite::Touching => "touching",
            Suite::Coatoms => "coatoms",
            Suite::Polar => "polar",
            Suite::Partition => "partition",
            Suite::TwoD => "2d",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// `n` integer directions spread evenly around the circle, including the axes.
pub fn circle_directions(n: usize) -> Vec<RatVec> {
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            RatVec::from_ints(&[(1000.0 * t.cos()).round() as i64, (1000.0 * t.sin()).round() as i64])
        })
        .collect()
}

/// Nonzero integer vectors with entries in -r..=r.
pub fn grid_directions(dim: usize, r: i64) -> Vec<RatVec> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v: Vec<i64>| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.into_iter().filter(|v| v.iter().any(|&x| x != 0)).map(|v| RatVec::from_ints(&v)).collect()
}

fn directions_for(dim: usize) -> Vec<RatVec> {
    if dim == 2 {
        circle_directions(360)
    } else {
        grid_directions(dim, 2)
    }
}

pub fn run_suite(fixture: &str, body: &Body, suite: Suite) -> CheckReport {
    let mut r = CheckReport::new(suite.name(), fixture);
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        let part = match body {
            Body::Polytope(p) => polytope_suite(fixture, p, s),
            Body::Planar(b) => planar_suite(fixture, b, s),
        };
        r.merge(part);
    }
    r.finish()
}

fn skip_all(r: &mut CheckReport, suite: Suite, why: &str) {
    r.push(format!("{suite}.applicable"), Status::Skip, why);
}

fn show_face(p: &Polytope, f: &PolyFace) -> String {
    let pts: Vec<String> = p.points_of(f).iter().map(|x| x.to_string()).collect();
    format!("conv{{{}}}", pts.join(", "))
}

fn polytope_suite(fixture: &str, p: &Polytope, suite: Suite) -> CheckReport {
    let mut r = CheckReport::new(suite.name(), fixture);
    match poly_checks(&mut r, p, suite) {
        Ok(()) => {}
        Err(e) => r.push(format!("{suite}.error"), Status::Fail, e.to_string()),
    }
    r
}

fn poly_checks(r: &mut CheckReport, p: &Polytope, suite: Suite) -> Result<(), PolytopeError> {
    let d = p.ambient_dim();
    match suite {
        Suite::All => unreachable!("expanded by run_suite"),
        Suite::Antitone => {
            let src = p.exposed_face_lattice()?;
            let tgt = p.normal_cone_lattice()?;
            let rep = verify_isomorphism(&LatticeMap::from_fn(&src, &tgt, Direction::Antitone, |f| p.normal_cone(f).ok()));
            let detail = format!("exposed faces to normal cones, F ↦ N(P,F), is an antitone lattice isomorphism: {rep:?}");
            if p.dim() == 0 {
                // N(P,∅) and N(P,P) are both the whole space
                r.push("antitone.exposed_to_normal", Status::Skip, format!("single point, so the map is not injective; {detail}"));
            } else {
                r.check("antitone.exposed_to_normal", rep.passes(), detail);
            }
            r.check(
                "antitone.all_faces_exposed",
                p.faces().len() == p.exposed_faces().len(),
                "every face of a polytope is exposed",
            );
            r.count("faces", p.faces().len());
            r.count("exposed_faces", p.exposed_faces().len());
            r.count("normal_cones", tgt.len());
            r.count("touching_cones", p.touching_cones().len());
        }
        Suite::Meets => {
            let l = p.exposed_face_lattice()?;
            let mut ok = true;
            for a in 0..l.len() {
                for b in 0..l.len() {
                    let (fa, fb) = (l.element(a), l.element(b));
                    let inter = p.face_from_vertices(fa.vertices.iter().copied().filter(|v| fb.contains_vertex(*v)));
                    ok &= *l.element(l.meet2(a, b)) == inter;
                }
            }
            r.check("meets.lattice_meet_is_intersection", ok, "the meet of exposed faces is their intersection");
            let mut dirs: Vec<RatVec> = p.facets().iter().map(|f| f.normal.clone()).collect();
            dirs.extend((0..d).map(|i| RatVec::unit(d, i)));
            let mut bad = Vec::new();
            for u in &dirs {
                for v in &dirs {
                    let m = p.exposed_meet(&[u.clone(), v.clone()])?;
                    if !m.witness_agrees {
                        bad.push(format!("{u} & {v}"));
                    }
                }
            }
            r.check(
                "meets.single_direction_witness",
                bad.is_empty(),
                format!("a nonempty intersection of exposed faces is exposed by a direction in ri conv U; failures: {bad:?}"),
            );
        }
        Suite::Lift => {
            let mut spaces: Vec<(String, Subspace)> = (0..d).map(|i| (format!("axis{i}"), Subspace::span(d, &[RatVec::unit(d, i)]))).collect();
            if d >= 3 {
                for i in 0..d {
                    for j in i + 1..d {
                        spaces.push((format!("plane{i}{j}"), Subspace::span(d, &[RatVec::unit(d, i), RatVec::unit(d, j)])));
                    }
                }
            }
            for (name, v) in &spaces {
                let (_, _, rep) = p.lifted_face_lattices(v)?;
                r.check(format!("lift.lattices.{name}"), rep.passes(), format!("lifts of faces of the projection form isotone isomorphic lattices: {rep:?}"));
                let mut bad = Vec::new();
                for a in p.vertices() {
                    let c = p.cylinder_normal_check(v, a)?;
                    if !c.equal {
                        bad.push(format!("{a}: {} vs {}", c.projected_side, c.formula_side));
                    }
                }
                r.check(format!("lift.cylinder.{name}"), bad.is_empty(), format!("N(π_V P, π_V a) = (N(P,a) ∩ V) + V⊥ at every vertex; failures: {bad:?}"));
            }
        }
        Suite::Sharp => {
            let mut bad = Vec::new();
            for u in directions_for(d) {
                if !p.is_sharp_normal(&u)? {
                    bad.push(u.to_string());
                }
            }
            r.check("sharp.normal", bad.is_empty(), format!("every direction is sharp normal for a polytope; failures: {bad:?}"));
            let mut bad = Vec::new();
            for f in p.faces().iter().filter(|f| !f.is_empty()) {
                let x = p.centroid(f).expect("nonempty");
                if !p.is_sharp_exposed(&x)? {
                    bad.push(show_face(p, f));
                }
            }
            r.check("sharp.exposed", bad.is_empty(), format!("every point is sharp exposed for a polytope; failures: {bad:?}"));
        }
        Suite::Touching => {
            let normals = p.normal_cones();
            let touching = p.touching_cones();
            let extra: Vec<String> = touching.iter().filter(|t| !normals.contains(t)).map(|t| format!("{t:?}")).collect();
            r.check("touching.equals_normal", extra.is_empty(), format!("every touching cone of a polytope is a normal cone; extra: {extra:?}"));
            let mut bad = Vec::new();
            for u in directions_for(d) {
                let t = p.touching_cone_at(&u)?;
                if !t.ri_contains(&u) || !normals.contains(&t) {
                    bad.push(u.to_string());
                }
            }
            r.check("touching.at_directions", bad.is_empty(), format!("T(P,u) is a normal cone with u in its relative interior; failures: {bad:?}"));
            r.count("touching_not_normal", extra.len());
        }
        Suite::Coatoms => {
            let mut saturated = 0;
            let proper: Vec<PolyFace> =
                p.exposed_faces().into_iter().filter(|f| !f.is_empty() && *f != p.whole()).collect();
            for f in &proper {
                let name = show_face(p, f);
                let n = p.normal_cone(f)?;
                record_decomposition(r, format!("coatoms.face.{name}"), "face is an intersection of at most dim N(P,F) coatoms", p.coatom_decomposition(f), &mut saturated);
                record_decomposition(r, format!("coatoms.normal_atoms.{name}"), "normal cone is a join of at most dim N(P,F) atoms", p.atom_decomposition(&n), &mut saturated);
                record_decomposition(r, format!("coatoms.minkowski.{name}"), "face is a join of at most dim F + 1 extreme points", p.minkowski_atom_check(f), &mut saturated);
                record_decomposition(r, format!("coatoms.normal_coatoms.{name}"), "normal cone is an intersection of at most dim F + 1 coatoms", p.normal_coatom_check(&n), &mut saturated);
            }
            r.count("proper_faces", proper.len());
            r.count("bounds_saturated", saturated);
        }
        Suite::Polar => match p.pos_iso_check() {
            Err(e @ PolytopeError::OriginNotInterior) => skip_all(r, suite, &e.to_string()),
            Err(e) => return Err(e),
            Ok(rep) => {
                r.check("polar.pos_isomorphism", rep.passes(), format!("pos maps faces of the polar onto touching cones and exposed faces onto normal cones: {rep:?}"));
                let pp = p.polar()?.polar()?;
                r.check("polar.bipolar", pp == *p, "the polar of the polar is the polytope");
                r.count("polar_faces", rep.polar_faces);
            }
        },
        Suite::Partition => {
            let full = PolyCone::full(d);
            // the whole space is N(P,∅), unless P is a point
            let cones: Vec<PolyCone> = p.touching_cones().into_iter().filter(|c| p.dim() == 0 || *c != full).collect();
            let dirs = directions_for(d);
            let bad: Vec<String> = dirs
                .iter()
                .filter(|u| cones.iter().filter(|c| c.ri_contains(u)).count() != 1)
                .map(|u| u.to_string())
                .collect();
            r.check("partition.touching_ri", bad.is_empty(), format!("each nonzero direction lies in the relative interior of exactly one touching cone; failures: {bad:?}"));
            r.count("directions", dirs.len());
        }
        Suite::TwoD => skip_all(r, suite, "planar-body rules; polytopes are covered by the other suites"),
    }
    Ok(())
}

fn record_decomposition<T>(
    r: &mut CheckReport,
    id: String,
    what: &str,
    d: Result<crate::polytope::Decomposition<T>, PolytopeError>,
    saturated: &mut usize,
) {
    match d {
        Ok(d) => {
            *saturated += usize::from(d.saturated);
            r.check(id, d.within_bound, format!("{what}: {} parts, bound {}", d.parts.len(), d.bound));
        }
        Err(PolytopeError::HypothesisFailed(why)) => r.push(id, Status::Skip, format!("{what}: hypothesis fails ({why})")),
        Err(e) => r.push(id, Status::Fail, e.to_string()),
    }
}

fn planar_suite(fixture: &str, b: &PlanarBody, suite: Suite) -> CheckReport {
    let mut r = CheckReport::new(suite.name(), fixture);
    if let Err(e) = planar_checks(&mut r, b, suite) {
        r.push(format!("{suite}.error"), Status::Fail, e.to_string());
    }
    r
}

fn planar_checks(r: &mut CheckReport, b: &PlanarBody, suite: Suite) -> Result<(), PlanarError> {
    match suite {
        Suite::All => unreachable!("expanded by run_suite"),
        Suite::Antitone => {
            let rep = b.special_antitone_check()?;
            r.check("antitone.exposed_to_normal", rep.passes(), format!("special exposed faces to special normal cones is an antitone lattice isomorphism: {rep:?}"));
            let s = b.summary();
            r.count("special_faces", s.special_faces);
            r.count("exposed_faces", s.exposed_faces);
            r.count("non_exposed_faces", s.non_exposed.len());
            r.count("normal_cones", s.normal_cones.len());
            r.count("touching_cones", s.touching_cones.len());
            r.count("arc_families", s.arc_families);
        }
        Suite::Meets | Suite::Lift => skip_all(r, suite, "polytope-only suite"),
        Suite::Sharp => {
            let mut bad = Vec::new();
            for u in grid_directions(2, 4) {
                let normal = match b.touching_cone(&u) {
                    Ok((_, n)) => n,
                    Err(PlanarError::UndefinedTouchingCone(_)) => continue,
                    Err(e) => return Err(e),
                };
                if b.is_sharp_normal(&u)? != normal {
                    bad.push(u.to_string());
                }
            }
            r.check("sharp.normal_iff_touching_normal", bad.is_empty(), format!("u is sharp normal iff T(C,u) is a normal cone; failures: {bad:?}"));
            let mut bad = Vec::new();
            for j in 0..b.features().len() {
                let x = b.junction(j);
                if !b.contains(x) {
                    continue;
                }
                let f = b.face_at(x)?;
                if b.is_sharp_exposed(x)? != (b.is_exposed(&f)? && b.sup_exposed(&f)? == f) {
                    bad.push(x.to_string());
                }
            }
            r.check("sharp.exposed_iff_exposed_point", bad.is_empty(), format!("a boundary point is sharp exposed iff its face is exposed; failures: {bad:?}"));
        }
        Suite::Touching => {
            let mut bad = Vec::new();
            let mut unattained = 0;
            for u in circle_directions(360) {
                let (t, normal) = match b.touching_cone(&u) {
                    Ok(t) => t,
                    Err(PlanarError::UndefinedTouchingCone(_)) => {
                        unattained += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                if !t.ri_contains(&u) || normal != b.is_normal_cone(&t) {
                    bad.push(u.to_string());
                }
            }
            r.check("touching.classification", bad.is_empty(), format!("T(C,u) contains u in its relative interior and is classified consistently; failures: {bad:?}"));
            let tn: Vec<String> = b.touching_not_normal().iter().map(|c| c.to_string()).collect();
            r.push("touching.not_normal", Status::Pass, format!("touching cones that are not normal cones: {tn:?}"));
            r.count("touching_not_normal", tn.len());
            r.count("directions_without_maximizer", unattained);
        }
        Suite::Coatoms => {
            let proper: Vec<FaceDescriptor> = b
                .special_exposed_faces()
                .into_iter()
                .filter(|f| !matches!(f, FaceDescriptor::Empty | FaceDescriptor::Whole))
                .collect();
            let mut coatoms = 0;
            for f in &proper {
                let c = b.coatom_check(f)?;
                coatoms += usize::from(c.is_coatom);
                let id = format!("coatoms.face.{}", c.face);
                let detail = format!("{}; coatoms used {:?}, bound {}", c.note, c.coatoms, c.bound);
                if c.hypothesis_holds {
                    r.check(id, c.passes(), detail);
                } else {
                    r.push(id, Status::Skip, detail);
                }
            }
            // vertices that are faces but not exposed still get their coatom verdict listed
            for f in b.non_exposed_faces() {
                r.push(format!("coatoms.face.{}", b.describe(&f)), Status::Skip, "not an exposed face, so not an intersection of coatoms of the exposed face lattice");
            }
            let fails = b.minkowski_failures();
            let listed: Vec<String> = fails.iter().map(|m| format!("{} from {:?}", m.face, m.atoms)).collect();
            if b.is_closed() {
                r.check("coatoms.minkowski", fails.is_empty(), format!("every proper exposed face is a join of at most dim F + 1 atoms; failures: {listed:?}"));
            } else {
                r.push("coatoms.minkowski", Status::Skip, format!("body is not closed; faces that are not joins of dim F + 1 atoms: {listed:?}"));
            }
            r.count("proper_exposed_faces", proper.len());
            r.count("proper_faces_that_are_coatoms", coatoms);
            r.count("minkowski_failures", fails.len());
        }
        Suite::Polar => match b.pos_iso_check() {
            Err(e @ (PlanarError::NotClosed | PlanarError::OriginNotInterior | PlanarError::UnsupportedArcCenter(_))) => {
                skip_all(r, suite, &e.to_string())
            }
            Err(e) => return Err(e),
            Ok(rep) => {
                r.check("polar.pos_isomorphism", rep.passes(), format!("pos maps special faces of the polar onto touching cones and special exposed faces onto normal cones: {rep:?}"));
                r.check("polar.bipolar", b.polar()?.polar()?.same_body(b), "the polar of the polar is the body");
                r.count("polar_special_faces", rep.polar_special_faces);
                r.count("polar_non_exposed", b.polar()?.non_exposed_faces().len());
            }
        },
        Suite::Partition if !b.is_closed() => {
            r.push("partition.touching_ri", Status::Skip, "body is not closed, so touching cones need not cover every direction");
        }
        Suite::Partition => {
            let rep = b.partition_check(&circle_directions(360));
            r.check("partition.touching_ri", rep.passes, format!("each nonzero direction lies in the relative interior of exactly one touching cone; failures: {:?}", rep.failures));
            r.count("directions", rep.directions);
        }
        Suite::TwoD => {
            for (id, rep) in [("2d.nonexposed_rule", b.check_2d_nonexposed_rule()), ("2d.smoothness", b.check_2d_smoothness())] {
                match rep {
                    Ok(rep) => r.check(id, rep.passes, format!("listed: {:?}; failures: {:?}", rep.items, rep.failures)),
                    Err(PlanarError::HypothesisFailed(why)) => r.push(id, Status::Skip, why),
                    Err(e) => return Err(e),
                }
            }
            let ne: Vec<String> = b.non_exposed_faces().iter().map(|f| b.describe(f)).collect();
            r.count("non_exposed_faces", ne.len());
            r.count("singular_points", b.singular_points().len());
        }
    }
    Ok(())
}

/// Numeric state-space reports in the same format.
pub fn bloch_report(samples: usize, seed: u64, tau: f64) -> Result<CheckReport, StateSpaceError> {
    let mut r = CheckReport::new("bloch", "statespace");
    for (name, blocks) in [("qubit", vec![2]), ("qubit_plus_c", vec![2, 1])] {
        let rep = verify_sharp_properties(&Algebra::new(blocks), samples, tau, seed)?;
        r.check(
            format!("bloch.{name}"),
            rep.passes(),
            format!("sampled u are sharp normal and sampled states sharp exposed (numeric, tau {tau:e}): {:?}, max violation {:e}", rep.by_check, rep.max_violation),
        );
        r.count(&format!("{name}_violations"), rep.violations);
        r.count(&format!("{name}_samples"), rep.samples);
    }
    Ok(r.finish())
}

pub fn cone_report(phi_deg: f64, resolution: usize, tau_flat: f64) -> Result<CheckReport, StateSpaceError> {
    let c = cone_experiment(phi_deg, resolution, tau_flat)?;
    let mut r = CheckReport::new("cone", "statespace");
    r.push("cone.conic_type", Status::Pass, format!("{} (plane at {phi_deg} degrees from the axis; transition at {:.6} degrees)", c.conic_type, c.phi_star_deg));
    r.check(
        "cone.projection_touching_normal",
        c.projection.touching_equals_normal,
        format!("every flat spot of the projection is exposed by its normal (numeric); {} flat spots, {} tangency non-exposed points", c.projection.flat_spots, c.projection.non_exposed_points),
    );
    r.check(
        "cone.intersection_exposed",
        c.intersection.all_exposed,
        format!("all sampled boundary faces of the section are exposed (numeric); {} of {} samples failed", c.intersection.non_exposed_samples, c.intersection.boundary_samples),
    );
    r.check("cone.projection_equals_section", c.duality_max_deviation < 1e-9, format!("support functions of the projected state space and the cone agree to {:e}", c.duality_max_deviation));
    r.count("projection_flat_spots", c.projection.flat_spots);
    r.count("projection_non_exposed_points", c.projection.non_exposed_points);
    r.count("intersection_flat_spots", c.intersection.flat_spots);
    Ok(r.finish())
}
