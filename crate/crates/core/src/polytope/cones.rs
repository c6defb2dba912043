use std::collections::BTreeSet;

use num::One;

use super::{PolyFace, Polytope, PolytopeError, Result};
use crate::exactgeom::{ri_contains_hull, PolyCone, Rat, RatVec};
use crate::lattice::{build_lattice, FiniteLattice};

/// Both formulas for the smallest exposed face containing a face.
#[derive(Clone, Debug)]
pub struct SupExposed {
    /// Intersection of all exposed faces containing the face.
    pub by_meet: PolyFace,
    /// F⊥(P,v) for a nonzero v in the relative interior of the normal cone, if one exists.
    pub by_normal: Option<PolyFace>,
}

#[derive(Clone, Debug)]
pub struct ExposedMeet {
    pub face: PolyFace,
    /// A single direction exposing the intersection, when it is nonempty.
    pub witness: Option<RatVec>,
    /// The witness exposes exactly the intersection.
    pub witness_agrees: bool,
}

impl Polytope {
    /// N(P,F) = pos(normals of facets containing F) + lin(P)⊥; N(P,∅) is the whole space.
    pub fn normal_cone(&self, f: &PolyFace) -> Result<PolyCone> {
        let f = self.require_face(f)?;
        let d = self.ambient;
        if f.is_empty() {
            return Ok(PolyCone::full(d));
        }
        let mut gens: Vec<RatVec> =
            self.facets.iter().filter(|fc| f.is_subset_of_indices(&fc.vertices)).map(|fc| fc.normal.clone()).collect();
        let perp = self.lin_perp();
        gens.extend(perp.basis().iter().cloned());
        gens.extend(perp.basis().iter().map(|v| -v));
        Ok(PolyCone::pos_hull(d, &gens))
    }

    pub fn normal_cone_at(&self, x: &RatVec) -> Result<PolyCone> {
        let f = self.face_at(x)?;
        self.normal_cone(&f)
    }

    /// Normal cones of all faces, deduplicated and sorted.
    pub fn normal_cones(&self) -> Vec<PolyCone> {
        let set: BTreeSet<PolyCone> = self.faces().iter().map(|f| self.normal_cone(f).expect("face")).collect();
        set.into_iter().collect()
    }

    /// All nonempty faces of all normal cones.
    pub fn touching_cones(&self) -> Vec<PolyCone> {
        let mut set: BTreeSet<PolyCone> = BTreeSet::new();
        for n in self.normal_cones() {
            set.extend(n.faces());
        }
        set.into_iter().collect()
    }

    pub fn normal_cone_lattice(&self) -> Result<FiniteLattice<PolyCone>> {
        Ok(build_lattice(self.normal_cones(), |a, b| b.contains_cone(a))?)
    }

    pub fn touching_cone_lattice(&self) -> Result<FiniteLattice<PolyCone>> {
        Ok(build_lattice(self.touching_cones(), |a, b| b.contains_cone(a))?)
    }

    /// T(P,u): the face of N(P,F⊥(P,u)) with u in its relative interior.
    pub fn touching_cone_at(&self, u: &RatVec) -> Result<PolyCone> {
        let (_, f) = self.support(u)?;
        let n = self.normal_cone(&f)?;
        Ok(n.face_containing(u).expect("u lies in the normal cone of the face it exposes"))
    }

    pub fn sup_exposed(&self, f: &PolyFace) -> Result<SupExposed> {
        let f = self.require_face(f)?;
        let exposed = self.exposed_faces();
        let inter: BTreeSet<usize> = exposed
            .iter()
            .filter(|g| f.is_subset(g))
            .fold(None::<BTreeSet<usize>>, |acc, g| {
                let gs: BTreeSet<usize> = g.vertices.iter().copied().collect();
                Some(match acc {
                    None => gs,
                    Some(a) => a.intersection(&gs).copied().collect(),
                })
            })
            .unwrap_or_default();
        let by_meet = self.face_from_vertices(inter);
        let by_normal = if f.is_empty() {
            None
        } else {
            match self.normal_cone(&f)?.nonzero_ri_point() {
                Some(v) => Some(self.exposed_face(&v)?),
                None => None,
            }
        };
        Ok(SupExposed { by_meet, by_normal })
    }

    /// ∩_{u∈U} F⊥(P,u), with a single-direction witness from ri(conv U) when nonempty.
    pub fn exposed_meet(&self, us: &[RatVec]) -> Result<ExposedMeet> {
        let first = us.first().ok_or(PolytopeError::ZeroDirection)?;
        let mut inter: Option<BTreeSet<usize>> = None;
        for u in us {
            let (_, f) = self.support(u)?;
            let s: BTreeSet<usize> = f.vertices.into_iter().collect();
            inter = Some(match inter {
                None => s,
                Some(a) => a.intersection(&s).copied().collect(),
            });
        }
        let face = self.face_from_vertices(inter.unwrap_or_default());
        if face.is_empty() {
            return Ok(ExposedMeet { face, witness: None, witness_agrees: true });
        }
        let n = Rat::from_integer((us.len() as i64).into());
        let mut v = RatVec::sum(self.ambient, us).scale(&(Rat::one() / n));
        if v.is_zero() {
            // (c + u₀)/2 stays in ri(conv U) and is nonzero when c = 0
            v = first.scale(&(Rat::one() / Rat::from_integer(2.into())));
        }
        let got = self.exposed_face(&v)?;
        let witness_agrees = got == face;
        let mut face = face;
        face.exposing_normal = Some(v.clone());
        Ok(ExposedMeet { face, witness: Some(v), witness_agrees })
    }

    /// u is sharp normal if every x ∈ ri F⊥(P,u) has u ∈ ri N(P,x). N(P,x) is constant
    /// on ri of a face, so one point of ri F⊥(P,u) decides it.
    pub fn is_sharp_normal(&self, u: &RatVec) -> Result<bool> {
        let (_, f) = self.support(u)?;
        let x = self.centroid(&f).expect("exposed faces of polytopes are nonempty");
        let n = self.normal_cone_at(&x)?;
        Ok(n.ri_contains(u))
    }

    /// x is sharp exposed if every nonzero u ∈ ri N(P,x) exposes a face with x in its
    /// relative interior. Evaluated at the ri point and its shifts along each generator.
    pub fn is_sharp_exposed(&self, x: &RatVec) -> Result<bool> {
        let f = self.face_at(x)?;
        let n = self.normal_cone(&f)?;
        let base = n.ri_point();
        let mut cands = vec![base.clone()];
        for g in n.generators() {
            cands.push(&base + &g);
        }
        for u in cands.into_iter().filter(|u| !u.is_zero() && n.ri_contains(u)) {
            let (_, g) = self.support(&u)?;
            if !ri_contains_hull(&self.points_of(&g), x).expect("dims") {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The exposed face whose normal cone is `n`.
    pub(crate) fn face_of_normal_cone(&self, n: &PolyCone) -> Option<PolyFace> {
        self.exposed_faces().into_iter().find(|f| self.normal_cone(f).ok().as_ref() == Some(n))
    }
}

impl PolyFace {
    fn is_subset_of_indices(&self, idx: &[usize]) -> bool {
        self.vertices.iter().all(|v| idx.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::exactgeom::Subspace;
    use crate::lattice::{verify_isomorphism, Direction, LatticeMap};
    use crate::rv;

    #[test]
    fn normal_cone_examples() {
        let sq = square();
        let v = sq.face_from_vertices([0]);
        assert_eq!(sq.normal_cone(&v).unwrap(), PolyCone::pos_hull(2, &[rv![1, 0], rv![0, 1]]));
        let e = sq.face_from_vertices([0, 3]);
        assert_eq!(sq.normal_cone(&e).unwrap(), PolyCone::pos_hull(2, &[rv![1, 0]]));
        assert_eq!(sq.normal_cone(&sq.whole()).unwrap(), PolyCone::zero(2));
        assert_eq!(sq.normal_cone(&sq.empty_face()).unwrap(), PolyCone::full(2));
        let bad = sq.face_from_vertices([0, 2]);
        assert!(matches!(sq.normal_cone(&bad), Err(PolytopeError::NotAFace(_))));
    }

    #[test]
    fn normal_lattice_sizes() {
        assert_eq!(square().normal_cone_lattice().unwrap().len(), 10);
        assert_eq!(segment().normal_cone_lattice().unwrap().len(), 4);
        assert_eq!(point().normal_cone_lattice().unwrap().len(), 1);
        assert_eq!(cube().touching_cones(), cube().normal_cones());
        let seg = segment();
        let whole = seg.normal_cone(&seg.whole()).unwrap();
        assert_eq!(whole, PolyCone::from_subspace(&Subspace::span(2, &[rv![0, 1]])));
    }

    #[test]
    fn touching_examples() {
        let sq = square();
        assert_eq!(sq.touching_cone_at(&rv![1, 0]).unwrap(), PolyCone::pos_hull(2, &[rv![1, 0]]));
        let q = PolyCone::pos_hull(2, &[rv![1, 0], rv![0, 1]]);
        assert_eq!(sq.touching_cone_at(&rv![2, 1]).unwrap(), q);
        assert_eq!(sq.touching_cone_at(&rv![1, 1]).unwrap(), q);
    }

    #[test]
    fn antitone_on_square_and_cube() {
        for p in [square(), cube(), triangle(), segment()] {
            let src = p.exposed_face_lattice().unwrap();
            let tgt = p.normal_cone_lattice().unwrap();
            let m = LatticeMap::from_fn(&src, &tgt, Direction::Antitone, |f| p.normal_cone(f).ok());
            assert!(verify_isomorphism(&m).passes());
        }
    }

    #[test]
    fn exposed_meet_examples() {
        let sq = square();
        let m = sq.exposed_meet(&[rv![1, 0], rv![0, 1]]).unwrap();
        assert_eq!(sq.points_of(&m.face), vec![rv![1, 1]]);
        assert_eq!(m.witness.unwrap(), RatVec::new(vec![crate::exactgeom::ratio(1, 2), crate::exactgeom::ratio(1, 2)]));
        assert!(m.witness_agrees);
        assert!(sq.exposed_meet(&[rv![1, 0], rv![-1, 0]]).unwrap().face.is_empty());
        let c = cube();
        let m = c.exposed_meet(&[rv![1, 0, 0], rv![0, 1, 0], rv![0, 0, 1]]).unwrap();
        assert_eq!(c.points_of(&m.face), vec![rv![1, 1, 1]]);
        // centroid zero but intersection nonempty
        let seg = segment();
        let m = seg.exposed_meet(&[rv![0, 1], rv![0, -1]]).unwrap();
        assert_eq!(m.face, seg.whole());
        assert!(m.witness_agrees);
    }

    #[test]
    fn sup_exposed_identity_on_faces() {
        for p in [square(), cube()] {
            for f in p.faces() {
                let s = p.sup_exposed(f).unwrap();
                assert_eq!(&s.by_meet, f);
                if let Some(b) = s.by_normal {
                    assert_eq!(&b, f);
                }
            }
        }
    }

    #[test]
    fn sharpness_on_square() {
        let sq = square();
        for u in [rv![1, 1], rv![1, 0], rv![3, -1], rv![0, -2]] {
            assert!(sq.is_sharp_normal(&u).unwrap());
        }
        for x in sq.vertices().to_vec() {
            assert!(sq.is_sharp_exposed(&x).unwrap());
        }
        assert!(sq.is_sharp_exposed(&rv![0, 0]).unwrap());
    }
}
