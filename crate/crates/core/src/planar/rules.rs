use serde::Serialize;

use super::{Cone2, FaceDescriptor, PlanarBody, PlanarError, Result};
use crate::exactgeom::RatVec;
use crate::lattice::{build_lattice, verify_isomorphism, Direction, FiniteLattice, IsoReport, LatticeMap};
use crate::polytope::min_subset;

#[derive(Clone, Debug, Serialize)]
pub struct RuleReport {
    pub passes: bool,
    /// Faces the rule talks about (non-exposed faces, singular points).
    pub items: Vec<String>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoatomPlanarReport {
    pub face: String,
    /// Every touching cone inside N(C,F) is a normal cone.
    pub hypothesis_holds: bool,
    pub coatoms: Vec<String>,
    pub is_coatom_intersection: bool,
    pub is_coatom: bool,
    pub bound: usize,
    pub within_bound: bool,
    pub note: String,
}

impl CoatomPlanarReport {
    /// Only a failure when the hypothesis holds and the conclusion does not.
    pub fn passes(&self) -> bool {
        !self.hypothesis_holds || (self.is_coatom_intersection && self.within_bound)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinkowskiPlanarReport {
    pub face: String,
    pub atoms: Vec<String>,
    pub joins_to_face: bool,
    pub bound: usize,
    pub within_bound: bool,
    pub body_closed: bool,
}

impl MinkowskiPlanarReport {
    pub fn passes(&self) -> bool {
        self.joins_to_face && self.within_bound
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub directions: usize,
    /// Directions not in exactly one relative interior, with the count found.
    pub failures: Vec<(String, usize)>,
    pub passes: bool,
}

/// Finite inventory of a planar body's lattices. Each closed arc contributes a
/// continuum of one-point faces and normal rays, counted once under `arc_families`.
#[derive(Clone, Debug, Serialize)]
pub struct PlanarSummary {
    pub special_faces: usize,
    pub exposed_faces: usize,
    pub non_exposed: Vec<String>,
    pub normal_cones: Vec<String>,
    pub touching_cones: Vec<String>,
    pub touching_not_normal: Vec<String>,
    pub arc_families: usize,
    /// Counts without {0} and the plane.
    pub proper_normal: usize,
    pub proper_touching: usize,
}

fn proper(cs: &[Cone2]) -> Vec<&Cone2> {
    cs.iter().filter(|c| !matches!(c, Cone2::Zero | Cone2::Plane)).collect()
}

impl PlanarBody {
    pub fn summary(&self) -> PlanarSummary {
        let normal = self.special_normal_cones();
        let touching = self.special_touching_cones();
        PlanarSummary {
            special_faces: self.special_faces().len(),
            exposed_faces: self.special_exposed_faces().len(),
            non_exposed: self.non_exposed_faces().iter().map(|f| self.describe(f)).collect(),
            normal_cones: normal.iter().map(|c| c.to_string()).collect(),
            touching_cones: touching.iter().map(|c| c.to_string()).collect(),
            touching_not_normal: self.touching_not_normal().iter().map(|c| c.to_string()).collect(),
            arc_families: self.features.iter().zip(&self.feature_closed).filter(|(f, &c)| c && f.is_arc()).count(),
            proper_normal: proper(&normal).len(),
            proper_touching: proper(&touching).len(),
        }
    }

    fn closed_segments_at(&self, j: usize) -> usize {
        [self.prev(j), j].iter().filter(|&&i| !self.features[i].is_arc() && self.feature_closed[i]).count()
    }

    fn require_touching_equals_normal(&self) -> Result<()> {
        let bad = self.touching_not_normal();
        if bad.is_empty() {
            Ok(())
        } else {
            let s: Vec<String> = bad.iter().map(|c| c.to_string()).collect();
            Err(PlanarError::HypothesisFailed(format!("touching cones that are not normal: {}", s.join(", "))))
        }
    }

    /// A face is non-exposed iff it is a point ending exactly one one-dimensional face.
    /// Requires every touching cone to be a normal cone.
    pub fn check_2d_nonexposed_rule(&self) -> Result<RuleReport> {
        self.require_touching_equals_normal()?;
        let mut items = Vec::new();
        let mut failures = Vec::new();
        for f in self.special_faces() {
            if matches!(f, FaceDescriptor::Empty | FaceDescriptor::Whole) {
                continue;
            }
            let non_exposed = !self.is_exposed(&f)?;
            let rule = matches!(f, FaceDescriptor::Vertex(j) if self.closed_segments_at(j) == 1);
            if non_exposed {
                items.push(self.describe(&f));
            }
            if non_exposed != rule {
                failures.push(self.describe(&f));
            }
        }
        Ok(RuleReport { passes: failures.is_empty(), items, failures })
    }

    /// Boundary points with a two-dimensional normal cone.
    pub fn singular_points(&self) -> Vec<FaceDescriptor> {
        (0..self.features.len())
            .filter(|&j| self.junction_closed[j] && !self.is_smooth_junction(j))
            .map(FaceDescriptor::Vertex)
            .collect()
    }

    /// Every singular point is where two distinct boundary segments meet.
    pub fn check_2d_smoothness(&self) -> Result<RuleReport> {
        self.require_touching_equals_normal()?;
        let mut items = Vec::new();
        let mut failures = Vec::new();
        for f in self.singular_points() {
            let FaceDescriptor::Vertex(j) = f else { unreachable!() };
            items.push(self.describe(&f));
            if self.closed_segments_at(j) != 2 {
                failures.push(self.describe(&f));
            }
        }
        Ok(RuleReport { passes: failures.is_empty(), items, failures })
    }

    pub fn special_face_lattice(&self) -> Result<FiniteLattice<FaceDescriptor>> {
        Ok(build_lattice(self.special_faces(), |a, b| self.face_leq(a, b))?)
    }

    pub fn special_exposed_faces(&self) -> Vec<FaceDescriptor> {
        self.special_faces().into_iter().filter(|f| self.is_exposed(f).expect("special faces are faces")).collect()
    }

    pub fn special_exposed_lattice(&self) -> Result<FiniteLattice<FaceDescriptor>> {
        Ok(build_lattice(self.special_exposed_faces(), |a, b| self.face_leq(a, b))?)
    }

    pub fn special_normal_lattice(&self) -> Result<FiniteLattice<Cone2>> {
        Ok(build_lattice(self.special_normal_cones(), |a, b| b.contains_cone(a))?)
    }

    pub fn special_touching_lattice(&self) -> Result<FiniteLattice<Cone2>> {
        Ok(build_lattice(self.special_touching_cones(), |a, b| b.contains_cone(a))?)
    }

    /// F ↦ N(C,F) on special exposed faces.
    pub fn special_antitone_check(&self) -> Result<IsoReport> {
        let src = self.special_exposed_lattice()?;
        let tgt = self.special_normal_lattice()?;
        let m = LatticeMap::from_fn(&src, &tgt, Direction::Antitone, |f| self.normal_cone(f).ok());
        Ok(verify_isomorphism(&m))
    }

    fn require_proper_exposed(&self, f: &FaceDescriptor) -> Result<()> {
        if matches!(f, FaceDescriptor::Empty | FaceDescriptor::Whole) || !self.is_exposed(f)? {
            return Err(PlanarError::HypothesisFailed(format!("{} is not a proper exposed face", self.describe(f))));
        }
        Ok(())
    }

    /// Tries to write F as an intersection of coatoms of the exposed face lattice.
    pub fn coatom_check(&self, f: &FaceDescriptor) -> Result<CoatomPlanarReport> {
        self.require_proper_exposed(f)?;
        let n = self.normal_cone(f)?;
        let hypothesis_holds = n.faces().iter().all(|t| self.is_normal_cone(t));
        let l = self.special_exposed_lattice()?;
        let t = l.index_of(f).expect("exposed");
        let coatoms = l.coatoms();
        let above: Vec<usize> = coatoms.iter().copied().filter(|&c| l.leq(t, c)).collect();
        let found = min_subset(&l, &above, t, false);
        let bound = n.dim();
        let is_coatom_intersection = found.is_some();
        let parts = found.unwrap_or_default();
        let within_bound = is_coatom_intersection && parts.len() <= bound;
        let note = match (hypothesis_holds, is_coatom_intersection) {
            (true, true) => "intersection of coatoms",
            (true, false) => "hypothesis holds but the face is not an intersection of coatoms",
            (false, true) => "hypothesis fails, yet the face is an intersection of coatoms: the condition is sufficient only",
            (false, false) => "hypothesis fails and the face is not an intersection of coatoms",
        };
        Ok(CoatomPlanarReport {
            face: self.describe(f),
            hypothesis_holds,
            coatoms: parts.iter().map(|&i| self.describe(l.element(i))).collect(),
            is_coatom_intersection,
            is_coatom: coatoms.contains(&t),
            bound,
            within_bound,
            note: note.into(),
        })
    }

    /// Tries to write F as a join of at most dim(F)+1 atoms of the exposed face lattice.
    pub fn minkowski_check(&self, f: &FaceDescriptor) -> Result<MinkowskiPlanarReport> {
        self.require_proper_exposed(f)?;
        let l = self.special_exposed_lattice()?;
        let t = l.index_of(f).expect("exposed");
        let below: Vec<usize> = l.atoms().into_iter().filter(|&a| l.leq(a, t)).collect();
        let found = min_subset(&l, &below, t, true);
        let bound = (f.dim() + 1) as usize;
        let joins_to_face = found.is_some();
        let parts = found.unwrap_or(below);
        Ok(MinkowskiPlanarReport {
            face: self.describe(f),
            atoms: parts.iter().map(|&i| self.describe(l.element(i))).collect(),
            joins_to_face,
            within_bound: parts.len() <= bound,
            bound,
            body_closed: self.is_closed(),
        })
    }

    /// Proper exposed special faces that are not joins of few enough atoms.
    pub fn minkowski_failures(&self) -> Vec<MinkowskiPlanarReport> {
        self.special_exposed_faces()
            .iter()
            .filter(|f| !matches!(f, FaceDescriptor::Empty | FaceDescriptor::Whole))
            .map(|f| self.minkowski_check(f).expect("proper exposed"))
            .filter(|r| !r.passes())
            .collect()
    }

    /// Each direction lies in the relative interior of exactly one touching cone other
    /// than the plane.
    pub fn partition_check(&self, dirs: &[RatVec]) -> PartitionReport {
        let base: Vec<Cone2> = self.special_touching_cones().into_iter().filter(|c| *c != Cone2::Plane).collect();
        let mut failures = Vec::new();
        for u in dirs {
            let mut cones = base.clone();
            for (i, f) in self.features.iter().enumerate() {
                if self.feature_closed[i] && f.arc_has_normal(u) {
                    cones.push(Cone2::ray(u));
                }
            }
            cones.sort();
            cones.dedup();
            let hits: Vec<&Cone2> = cones.iter().filter(|c| c.ri_contains(u)).collect();
            let agrees = matches!(self.touching_cone(u), Ok((t, _)) if hits.len() == 1 && *hits[0] == t);
            if !agrees {
                failures.push((u.to_string(), hits.len()));
            }
        }
        PartitionReport { directions: dirs.len(), passes: failures.is_empty(), failures }
    }
}
