use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use serde::Serialize;

use super::{PolyFace, Polytope, PolytopeError, Result};
use crate::exactgeom::lp::{self, LpResult};
use crate::exactgeom::{PolyCone, Rat, RatVec, Subspace};
use crate::lattice::{build_lattice, verify_isomorphism, Direction, FiniteLattice, IsoReport, LatticeMap};

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub faces_iso: IsoReport,
    pub exposed_iso: IsoReport,
    /// Meets in the lifted lattices are set intersections.
    pub meet_is_intersection: bool,
    /// For every face F of P: F is a lifted face iff L(F) = F.
    pub invariance_matches: bool,
    /// Vertex sets of the lift-invariant faces of P.
    pub invariant_faces: Vec<Vec<usize>>,
    /// Lifts along V and along its projection onto lin(P) agree.
    pub canonical_subspace_ok: bool,
}

impl LiftReport {
    pub fn passes(&self) -> bool {
        self.faces_iso.passes()
            && self.exposed_iso.passes()
            && self.meet_is_intersection
            && self.invariance_matches
            && self.canonical_subspace_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderReport {
    /// N(π_V(P), π_V(a)), computed on the projected polytope.
    pub projected_side: String,
    /// (N(P,a) ∩ V) + V⊥.
    pub formula_side: String,
    pub equal: bool,
}

impl Polytope {
    /// π_V(P), in the same ambient space.
    pub fn project_polytope(&self, v: &Subspace) -> Polytope {
        let pts: Vec<RatVec> = self.vertices.iter().map(|x| v.project(x)).collect();
        Polytope::hull(&pts).expect("projection of a nonempty polytope")
    }

    /// L(G) = (G + V⊥) ∩ P for a face G of `projected`, as the face of P spanned by the
    /// vertices projecting into G.
    pub fn lift_face(&self, v: &Subspace, projected: &Polytope, g: &PolyFace) -> Result<PolyFace> {
        let g = projected.require_face(g)?;
        let pts = projected.points_of(&g);
        let idx: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| !pts.is_empty() && crate::exactgeom::in_convex_hull(&pts, &v.project(&self.vertices[i])))
            .collect();
        let f = self.face_from_vertices(idx);
        self.require_face(&f)
    }

    /// Decides L(F) = F: is there a point of P outside F projecting into π_V(F)?
    pub fn is_lift_invariant(&self, v: &Subspace, f: &PolyFace) -> bool {
        if f.is_empty() {
            return true;
        }
        let n = self.vertices.len();
        let k = f.vertices.len();
        let basis = v.basis();
        // variables λ (P weights) then μ (F weights); B(Σλv - Σμw) = 0, Σλ = 1, Σμ = 1
        let mut a: Vec<Vec<Rat>> = Vec::new();
        let mut b: Vec<Rat> = Vec::new();
        for bv in basis {
            let mut row: Vec<Rat> = self.vertices.iter().map(|x| bv.dot(x)).collect();
            row.extend(f.vertices.iter().map(|&i| -bv.dot(&self.vertices[i])));
            a.push(row);
            b.push(Rat::zero());
        }
        let mut s1 = vec![Rat::one(); n];
        s1.extend(vec![Rat::zero(); k]);
        a.push(s1);
        b.push(Rat::one());
        let mut s2 = vec![Rat::zero(); n];
        s2.extend(vec![Rat::one(); k]);
        a.push(s2);
        b.push(Rat::one());
        let mut c: Vec<Rat> = (0..n).map(|i| if f.contains_vertex(i) { Rat::zero() } else { Rat::one() }).collect();
        c.extend(vec![Rat::zero(); k]);
        match lp::maximize(&c, &a, &b) {
            LpResult::Optimal { value, .. } => !value.is_positive(),
            _ => true,
        }
    }

    fn lifted_sets(&self, v: &Subspace) -> (Polytope, Vec<(PolyFace, PolyFace)>) {
        let q = self.project_polytope(v);
        let pairs = q.faces().iter().map(|g| (g.clone(), self.lift_face(v, &q, g).expect("lifts are faces"))).collect();
        (q, pairs)
    }

    /// The lifted face lattice, the lifted exposed face lattice, and the checks on them.
    pub fn lifted_face_lattices(
        &self,
        v: &Subspace,
    ) -> Result<(FiniteLattice<PolyFace>, FiniteLattice<PolyFace>, LiftReport)> {
        let (q, pairs) = self.lifted_sets(v);
        let exposed_q: BTreeSet<PolyFace> = q.exposed_faces().into_iter().collect();
        let lifted: BTreeSet<PolyFace> = pairs.iter().map(|(_, l)| l.clone()).collect();
        let lifted_exp: BTreeSet<PolyFace> =
            pairs.iter().filter(|(g, _)| exposed_q.contains(g)).map(|(_, l)| l.clone()).collect();
        let lf = build_lattice(lifted.iter().cloned().collect(), |a, b| a.is_subset(b))?;
        let le = build_lattice(lifted_exp.iter().cloned().collect(), |a, b| a.is_subset(b))?;
        let fq = q.face_lattice()?;
        let eq = q.exposed_face_lattice()?;
        let lift_of = |g: &PolyFace| pairs.iter().find(|(h, _)| h == g).map(|(_, l)| l.clone());
        let faces_iso = verify_isomorphism(&LatticeMap::from_fn(&fq, &lf, Direction::Isotone, lift_of));
        let exposed_iso = verify_isomorphism(&LatticeMap::from_fn(&eq, &le, Direction::Isotone, lift_of));
        let mut meet_is_intersection = true;
        for l in [&lf, &le] {
            for a in 0..l.len() {
                for b in 0..l.len() {
                    let m = l.element(l.meet2(a, b));
                    let inter: Vec<usize> =
                        l.element(a).vertices.iter().filter(|x| l.element(b).contains_vertex(**x)).copied().collect();
                    if m.vertices != inter {
                        meet_is_intersection = false;
                    }
                }
            }
        }
        let mut invariance_matches = true;
        let mut invariant_faces = Vec::new();
        for f in self.faces() {
            let inv = self.is_lift_invariant(v, f);
            if inv {
                invariant_faces.push(f.vertices.clone());
            }
            if inv != lifted.contains(f) {
                invariance_matches = false;
            }
        }
        let u = Subspace::span(self.ambient, &v.basis().iter().map(|b| self.lin().project(b)).collect::<Vec<_>>());
        let (_, pairs_u) = self.lifted_sets(&u);
        let lifted_u: BTreeSet<PolyFace> = pairs_u.into_iter().map(|(_, l)| l).collect();
        let canonical_subspace_ok =
            lifted_u == lifted && self.faces().iter().all(|f| self.is_lift_invariant(&u, f) == self.is_lift_invariant(v, f));
        let report =
            LiftReport { faces_iso, exposed_iso, meet_is_intersection, invariance_matches, invariant_faces, canonical_subspace_ok };
        Ok((lf, le, report))
    }

    /// Compares N(π_V(P), π_V(a)) with (N(P,a) ∩ V) + V⊥.
    pub fn cylinder_normal_check(&self, v: &Subspace, a: &RatVec) -> Result<CylinderReport> {
        if !self.contains(a)? {
            return Err(PolytopeError::PointNotInBody(a.clone()));
        }
        let q = self.project_polytope(v);
        let lhs = q.normal_cone_at(&v.project(a))?;
        let vcone = PolyCone::from_subspace(v);
        let vperp = PolyCone::from_subspace(&v.orth_complement());
        let rhs = self.normal_cone_at(a)?.intersect(&vcone).sum(&vperp);
        Ok(CylinderReport { projected_side: lhs.to_string(), formula_side: rhs.to_string(), equal: lhs == rhs })
    }
}
