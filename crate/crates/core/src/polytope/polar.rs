use num::{One, Signed};
use serde::Serialize;

use super::{PolyFace, Polytope, PolytopeError, Result};
use crate::exactgeom::{PolyCone, Rat};
use crate::lattice::{verify_isomorphism, Direction, IsoReport, LatticeMap};

#[derive(Clone, Debug, Serialize)]
pub struct PosIsoReport {
    /// pos: exposed faces of the polar → normal cones.
    pub exposed_to_normal: IsoReport,
    /// pos: faces of the polar → touching cones.
    pub faces_to_touching: IsoReport,
    /// For every proper normal cone N, rb(P°) ∩ N is a face whose positive hull is N.
    pub inverse_ok: bool,
    pub polar_faces: usize,
    pub touching_cones: usize,
}

impl PosIsoReport {
    pub fn passes(&self) -> bool {
        self.exposed_to_normal.passes() && self.faces_to_touching.passes() && self.inverse_ok
    }
}

impl Polytope {
    fn require_interior_origin(&self) -> Result<()> {
        if self.dim() != self.ambient || self.facets.iter().any(|f| !f.offset.is_positive()) {
            return Err(PolytopeError::OriginNotInterior);
        }
        Ok(())
    }

    /// P° = {u : ⟨u,x⟩ ≤ 1 on P}; its vertices are a/b for the facets a·x ≤ b, in facet order.
    pub fn polar(&self) -> Result<Polytope> {
        self.require_interior_origin()?;
        let vs = self.facets.iter().map(|f| f.normal.scale(&(Rat::one() / &f.offset))).collect();
        Polytope::new(vs)
    }

    /// F̂ = {x ∈ P° : ⟨x,y⟩ = 1 for all y ∈ F}, as a face of `self.polar()`.
    pub fn conjugate_face(&self, f: &PolyFace) -> Result<PolyFace> {
        let f = self.require_face(f)?;
        let polar = self.polar()?;
        let pts = self.points_of(&f);
        let idx = (0..polar.vertices().len()).filter(|&j| pts.iter().all(|y| polar.vertex(j).dot(y) == Rat::one()));
        Ok(polar.face_from_vertices(idx))
    }

    pub fn pos_iso_check(&self) -> Result<PosIsoReport> {
        let polar = self.polar()?;
        let d = self.ambient;
        let pos = |g: &PolyFace| PolyCone::pos_hull(d, &polar.points_of(g));

        let exp_src = polar.exposed_face_lattice()?;
        let normal = self.normal_cone_lattice()?;
        let m1 = LatticeMap::from_fn(&exp_src, &normal, Direction::Isotone, |g| Some(pos(g)));
        let exposed_to_normal = verify_isomorphism(&m1);

        let face_src = polar.face_lattice()?;
        let touching = self.touching_cone_lattice()?;
        let m2 = LatticeMap::from_fn(&face_src, &touching, Direction::Isotone, |g| Some(pos(g)));
        let faces_to_touching = verify_isomorphism(&m2);

        let full = PolyCone::full(d);
        let zero = PolyCone::zero(d);
        let mut inverse_ok = true;
        for n in normal.elements() {
            if *n == full || *n == zero {
                continue;
            }
            let g = polar.face_from_vertices((0..polar.vertices().len()).filter(|&j| n.contains(polar.vertex(j))));
            if !polar.is_face(&g) || pos(&g) != *n {
                inverse_ok = false;
            }
        }
        Ok(PosIsoReport {
            exposed_to_normal,
            faces_to_touching,
            inverse_ok,
            polar_faces: face_src.len(),
            touching_cones: touching.len(),
        })
    }
}
