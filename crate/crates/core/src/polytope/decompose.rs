use serde::Serialize;

use super::{PolyFace, Polytope, PolytopeError, Result};
use crate::exactgeom::{k_subsets, PolyCone};
use crate::lattice::FiniteLattice;

/// A minimum-size set of atoms (or coatoms) combining to a target, with the theorem's bound.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition<T> {
    pub parts: Vec<T>,
    pub bound: usize,
    pub within_bound: bool,
    pub saturated: bool,
}

/// Lexicographically smallest subset of `cands` of minimum size whose fold equals `target`.
pub(crate) fn min_subset<T: Eq + std::hash::Hash + Clone>(
    l: &FiniteLattice<T>,
    cands: &[usize],
    target: usize,
    use_join: bool,
) -> Option<Vec<usize>> {
    for k in 0..=cands.len() {
        for sub in k_subsets(cands.len(), k) {
            let s: Vec<usize> = sub.iter().map(|&i| cands[i]).collect();
            let r = if use_join { l.join(&s) } else { l.meet(&s) };
            if r == target {
                return Some(s);
            }
        }
    }
    None
}

fn finish<T: Clone + Eq + std::hash::Hash>(l: &FiniteLattice<T>, found: Vec<usize>, bound: usize) -> Decomposition<T> {
    Decomposition {
        within_bound: found.len() <= bound,
        saturated: found.len() == bound,
        parts: found.iter().map(|&i| l.element(i).clone()).collect(),
        bound,
    }
}

impl Polytope {
    fn touching_inside_are_normal(&self, n: &PolyCone) -> bool {
        let normals = self.normal_cones();
        self.touching_cones().iter().filter(|t| n.contains_cone(t)).all(|t| normals.contains(t))
    }

    fn faces_inside_are_exposed(&self, f: &PolyFace) -> bool {
        let exposed = self.exposed_faces();
        self.faces().iter().filter(|g| g.is_subset(f)).all(|g| exposed.contains(g))
    }

    fn require_proper_exposed(&self, f: &PolyFace) -> Result<PolyFace> {
        let f = self.require_face(f)?;
        if f.is_empty() || f == self.whole() || !self.exposed_faces().contains(&f) {
            return Err(PolytopeError::HypothesisFailed("not a proper exposed face".into()));
        }
        Ok(f)
    }

    /// N as a join of atoms of the normal cone lattice.
    pub fn atom_decomposition(&self, n: &PolyCone) -> Result<Decomposition<PolyCone>> {
        let l = self.normal_cone_lattice()?;
        let t = l.index_of(n).ok_or_else(|| PolytopeError::HypothesisFailed("not a normal cone".into()))?;
        if t == l.top() && l.len() > 1 {
            return Err(PolytopeError::HypothesisFailed("not a proper normal cone".into()));
        }
        if !self.touching_inside_are_normal(n) {
            return Err(PolytopeError::HypothesisFailed("a touching cone inside is not a normal cone".into()));
        }
        let cands: Vec<usize> = l.atoms().into_iter().filter(|&a| l.leq(a, t)).collect();
        let found = min_subset(&l, &cands, t, true).expect("join over all atoms below");
        let bound = n.cone_dim() - self.lin_perp().dim();
        Ok(finish(&l, found, bound))
    }

    /// F as an intersection of coatoms of the exposed face lattice.
    pub fn coatom_decomposition(&self, f: &PolyFace) -> Result<Decomposition<PolyFace>> {
        let f = self.require_proper_exposed(f)?;
        let n = self.normal_cone(&f)?;
        if !self.touching_inside_are_normal(&n) {
            return Err(PolytopeError::HypothesisFailed("a touching cone inside the normal cone is not normal".into()));
        }
        let l = self.exposed_face_lattice()?;
        let t = l.index_of(&f).expect("exposed");
        let cands: Vec<usize> = l.coatoms().into_iter().filter(|&c| l.leq(t, c)).collect();
        let found = min_subset(&l, &cands, t, false)
            .ok_or_else(|| PolytopeError::HypothesisFailed("not an intersection of coatoms".into()))?;
        let bound = n.cone_dim() - self.lin_perp().dim();
        Ok(finish(&l, found, bound))
    }

    /// F as a join of at most dim(F)+1 extreme points.
    pub fn minkowski_atom_check(&self, f: &PolyFace) -> Result<Decomposition<PolyFace>> {
        let f = self.require_proper_exposed(f)?;
        if !self.faces_inside_are_exposed(&f) {
            return Err(PolytopeError::HypothesisFailed("a face inside is not exposed".into()));
        }
        let l = self.exposed_face_lattice()?;
        let t = l.index_of(&f).expect("exposed");
        let cands: Vec<usize> = l.atoms().into_iter().filter(|&a| l.leq(a, t)).collect();
        let found = min_subset(&l, &cands, t, true)
            .ok_or_else(|| PolytopeError::HypothesisFailed("not a join of atoms".into()))?;
        Ok(finish(&l, found, f.dim as usize + 1))
    }

    /// N as an intersection of at most dim(F⊥(N))+1 coatoms of the normal cone lattice.
    pub fn normal_coatom_check(&self, n: &PolyCone) -> Result<Decomposition<PolyCone>> {
        let f = self
            .face_of_normal_cone(n)
            .ok_or_else(|| PolytopeError::HypothesisFailed("not a normal cone".into()))?;
        let f = self.require_proper_exposed(&f)?;
        if !self.faces_inside_are_exposed(&f) {
            return Err(PolytopeError::HypothesisFailed("a face inside is not exposed".into()));
        }
        let l = self.normal_cone_lattice()?;
        let t = l.index_of(n).expect("normal cone");
        let cands: Vec<usize> = l.coatoms().into_iter().filter(|&c| l.leq(t, c)).collect();
        let found = min_subset(&l, &cands, t, false)
            .ok_or_else(|| PolytopeError::HypothesisFailed("not an intersection of coatoms".into()))?;
        Ok(finish(&l, found, f.dim as usize + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::rv;

    #[test]
    fn cube_corner() {
        let c = cube();
        let corner = c.face_from_vertices([c.vertices().iter().position(|v| *v == rv![1, 1, 1]).unwrap()]);
        let n = c.normal_cone(&corner).unwrap();
        let a = c.atom_decomposition(&n).unwrap();
        assert_eq!(a.parts.len(), 3);
        assert!(a.saturated);
        let d = c.coatom_decomposition(&corner).unwrap();
        assert_eq!(d.parts.len(), 3);
        assert!(d.saturated);
    }

    #[test]
    fn square_cases() {
        let s = square();
        let q = s.normal_cone(&s.face_from_vertices([0])).unwrap();
        assert_eq!(s.atom_decomposition(&q).unwrap().parts.len(), 2);
        let ray = PolyCone::pos_hull(2, &[rv![1, 0]]);
        assert_eq!(s.atom_decomposition(&ray).unwrap().parts, vec![ray.clone()]);
        let v = s.face_from_vertices([0]);
        let d = s.coatom_decomposition(&v).unwrap();
        assert_eq!(d.parts.len(), 2);
        let e = s.face_from_vertices([0, 3]);
        assert_eq!(s.coatom_decomposition(&e).unwrap().parts, vec![e.clone()]);
        assert_eq!(s.minkowski_atom_check(&e).unwrap().parts.len(), 2);
        assert_eq!(s.minkowski_atom_check(&v).unwrap().parts, vec![v.clone()]);
    }

    #[test]
    fn cube_facet_bounds() {
        let c = cube();
        let top = c.exposed_face(&rv![0, 0, 1]).unwrap();
        let m = c.minkowski_atom_check(&top).unwrap();
        assert!(m.within_bound);
        assert_eq!(m.bound, 3);
        let n = c.normal_cone(&top).unwrap();
        let dual = c.normal_coatom_check(&n).unwrap();
        assert_eq!(dual.bound, 3);
        assert!(dual.within_bound);
        // two opposite corners of the facet already cut the ray out
        assert_eq!(dual.parts.len(), 2);
    }
}
