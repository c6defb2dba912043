use num::{One, Signed};
use serde::Serialize;

use super::{seg_normal, Cone2, FaceDescriptor, Feature, PlanarBody, PlanarError, Result};
use crate::exactgeom::{Rat, RatVec};
use crate::lattice::{build_lattice, verify_isomorphism, Direction, IsoReport, LatticeMap};

#[derive(Clone, Debug, Serialize)]
pub struct PlanarPosIsoReport {
    /// pos: special exposed faces of the polar → special normal cones.
    pub exposed_to_normal: IsoReport,
    /// pos: special faces of the polar → special touching cones.
    pub faces_to_touching: IsoReport,
    pub polar_special_faces: usize,
    pub touching_cones: usize,
}

impl PlanarPosIsoReport {
    pub fn passes(&self) -> bool {
        self.exposed_to_normal.passes() && self.faces_to_touching.passes()
    }
}

enum Dual {
    Point(RatVec),
    Arc { radius_sq: Rat, from: RatVec, to: RatVec },
}

impl Dual {
    fn start(&self) -> &RatVec {
        match self {
            Dual::Point(p) => p,
            Dual::Arc { from, .. } => from,
        }
    }

    fn end(&self) -> &RatVec {
        match self {
            Dual::Point(p) => p,
            Dual::Arc { to, .. } => to,
        }
    }
}

impl PlanarBody {
    /// K° = {u : ⟨u,x⟩ ≤ 1 on K}. Needs a closed body, 0 in the interior and arcs centered
    /// at 0. A segment on ⟨a,x⟩ = 1 becomes the vertex a, an arc of radius r becomes an
    /// arc of radius 1/r, and a corner becomes the segment of its supporting lines.
    pub fn polar(&self) -> Result<PlanarBody> {
        if !self.is_closed() {
            return Err(PlanarError::NotClosed);
        }
        let mut duals = Vec::new();
        for (i, f) in self.features.iter().enumerate() {
            duals.push(match f {
                Feature::Segment { from, to } => {
                    let n = seg_normal(from, to);
                    let h = n.dot(from);
                    if !h.is_positive() {
                        return Err(PlanarError::OriginNotInterior);
                    }
                    Dual::Point(n.scale(&(Rat::one() / h)))
                }
                Feature::Arc { center, radius_sq, from, to } => {
                    if !center.is_zero() {
                        return Err(PlanarError::UnsupportedArcCenter(i));
                    }
                    let s = Rat::one() / radius_sq;
                    Dual::Arc { radius_sq: s.clone(), from: from.scale(&s), to: to.scale(&s) }
                }
            });
        }
        let n = duals.len();
        let mut out = Vec::new();
        for i in 0..n {
            if let Dual::Arc { radius_sq, from, to } = &duals[i] {
                out.push(Feature::Arc {
                    center: RatVec::zeros(2),
                    radius_sq: radius_sq.clone(),
                    from: from.clone(),
                    to: to.clone(),
                });
            }
            let (a, b) = (duals[i].end(), duals[(i + 1) % n].start());
            if a != b {
                out.push(Feature::Segment { from: a.clone(), to: b.clone() });
            }
        }
        PlanarBody::closed(out)
    }

    /// The same body with features rotated to start at the smallest junction point.
    pub fn canonical(&self) -> PlanarBody {
        let n = self.features.len();
        let k = (0..n).min_by(|&a, &b| self.junction(a).cmp(self.junction(b))).expect("nonempty");
        let rot = |v: &[_]| -> Vec<_> { (0..n).map(|i| v[(i + k) % n]).collect() };
        let features = (0..n).map(|i| self.features[(i + k) % n].clone()).collect();
        PlanarBody { features, feature_closed: rot(&self.feature_closed), junction_closed: rot(&self.junction_closed) }
    }

    pub fn same_body(&self, o: &PlanarBody) -> bool {
        self.canonical() == o.canonical()
    }

    /// pos of a face of this body, which is taken to be the polar of something.
    fn pos_of(&self, f: &FaceDescriptor) -> Cone2 {
        match f {
            FaceDescriptor::Empty => Cone2::Zero,
            FaceDescriptor::Whole => Cone2::Plane,
            FaceDescriptor::Vertex(j) => Cone2::ray(self.junction(*j)),
            FaceDescriptor::Edge(i) => Cone2::sector(self.features[*i].from(), self.features[*i].to()),
            FaceDescriptor::ArcPoint { normal, .. } => Cone2::ray(normal),
        }
    }

    /// The positive hull maps special faces of K° onto special touching cones of K, and
    /// special exposed faces onto special normal cones.
    pub fn pos_iso_check(&self) -> Result<PlanarPosIsoReport> {
        let polar = self.polar()?;
        let faces = polar.special_face_lattice()?;
        let exposed = build_lattice(polar.special_exposed_faces(), |a, b| polar.face_leq(a, b))?;
        let normal = self.special_normal_lattice()?;
        let touching = self.special_touching_lattice()?;
        let pos = |g: &FaceDescriptor| Some(polar.pos_of(g));
        let exposed_to_normal = verify_isomorphism(&LatticeMap::from_fn(&exposed, &normal, Direction::Isotone, pos));
        let faces_to_touching = verify_isomorphism(&LatticeMap::from_fn(&faces, &touching, Direction::Isotone, pos));
        Ok(PlanarPosIsoReport {
            exposed_to_normal,
            faces_to_touching,
            polar_special_faces: faces.len(),
            touching_cones: touching.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::exactgeom::ratio;
    use crate::rv;

    #[test]
    fn polar_examples() {
        let d = unit_disk();
        assert!(d.polar().unwrap().same_body(&d));
        let sq = square();
        let diamond = PlanarBody::polygon(&[rv![0, -1], rv![1, 0], rv![0, 1], rv![-1, 0]]).unwrap();
        assert!(sq.polar().unwrap().same_body(&diamond));
        let t = truncated_disk(true).polar().unwrap();
        let pts: Vec<RatVec> = (0..t.features().len()).map(|j| t.junction(j).clone()).collect();
        assert!(pts.contains(&rv![2, 0]));
        assert!(pts.contains(&RatVec::new(vec![ratio(2, 5), ratio(4, 5)])));
        assert_eq!(t.non_exposed_faces().len(), 2);
        assert_eq!(truncated_disk(false).polar().unwrap_err(), PlanarError::NotClosed);
        assert_eq!(quarter_disk().polar().unwrap_err(), PlanarError::OriginNotInterior);
        assert!(matches!(stadium().polar(), Err(PlanarError::UnsupportedArcCenter(_))));
    }

    #[test]
    fn bipolar() {
        for b in [unit_disk(), square(), truncated_disk(true)] {
            assert!(b.polar().unwrap().polar().unwrap().same_body(&b));
        }
    }

    #[test]
    fn pos_iso() {
        for b in [unit_disk(), square(), truncated_disk(true)] {
            let r = b.pos_iso_check().unwrap();
            assert!(r.passes(), "{r:?}");
        }
        let r = truncated_disk(true).pos_iso_check().unwrap();
        assert_eq!((r.polar_special_faces, r.touching_cones), (8, 8));
    }
}
