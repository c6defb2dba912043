use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use num::{Signed, Zero};

use super::linalg::{nullspace, rank, Subspace};
use super::vec::{Rat, RatVec};

/// Finitely generated convex cone in canonical form.
///
/// `lineality` is the reduced echelon basis of the lineality space (primitive, first
/// nonzero coordinate positive). `rays` are the extreme rays of the pointed part,
/// projected onto the orthogonal complement of the lineality space, primitive and sorted.
/// The H-representation is kept alongside: `eqs` (x·a = 0) and `facets` (x·a ≤ 0).
#[derive(Clone)]
pub struct PolyCone {
    dim: usize,
    rays: Vec<RatVec>,
    lineality: Vec<RatVec>,
    eqs: Vec<RatVec>,
    facets: Vec<RatVec>,
}

impl PartialEq for PolyCone {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.rays == o.rays && self.lineality == o.lineality
    }
}
impl Eq for PolyCone {}

impl Hash for PolyCone {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.dim.hash(h);
        self.rays.hash(h);
        self.lineality.hash(h);
    }
}

impl PartialOrd for PolyCone {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for PolyCone {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.dim, self.cone_dim(), &self.lineality, &self.rays).cmp(&(o.dim, o.cone_dim(), &o.lineality, &o.rays))
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

fn dedupe_primitive(vs: impl IntoIterator<Item = RatVec>) -> Vec<RatVec> {
    let set: BTreeSet<RatVec> = vs.into_iter().filter(|v| !v.is_zero()).map(|v| v.primitive()).collect();
    set.into_iter().collect()
}

/// Facet normals (outward, x·a ≤ 0) and equations of pos(gens).
fn h_from_generators(d: usize, gens: &[RatVec]) -> (Vec<RatVec>, Vec<RatVec>) {
    let gens = dedupe_primitive(gens.iter().cloned());
    let span = Subspace::span(d, &gens);
    let eqs: Vec<RatVec> = span.orth_complement().basis().iter().map(|v| v.line_normal()).collect();
    let k = span.dim();
    if k == 0 {
        return (eqs, vec![]);
    }
    let mut facets = BTreeSet::new();
    for sub in subsets(gens.len(), k - 1) {
        let mut rows: Vec<RatVec> = sub.iter().map(|&i| gens[i].clone()).collect();
        if rank(&rows) != k - 1 {
            continue;
        }
        rows.extend(eqs.iter().cloned());
        let ns = nullspace(&rows, d);
        if ns.len() != 1 {
            continue;
        }
        let a = &ns[0];
        let signs: Vec<Rat> = gens.iter().map(|g| g.dot(a)).collect();
        let pos = signs.iter().any(|s| s.is_positive());
        let neg = signs.iter().any(|s| s.is_negative());
        match (pos, neg) {
            (true, true) | (false, false) => continue,
            (false, true) => facets.insert(a.primitive()),
            (true, false) => facets.insert((-a).primitive()),
        };
    }
    (eqs, facets.into_iter().collect())
}

impl PolyCone {
    /// Positive hull of a finite point set.
    pub fn pos_hull(d: usize, points: &[RatVec]) -> PolyCone {
        let (eqs, facets) = h_from_generators(d, points);
        Self::from_h(d, &eqs, &facets)
    }

    pub fn zero(d: usize) -> PolyCone {
        Self::pos_hull(d, &[])
    }

    pub fn full(d: usize) -> PolyCone {
        Self::from_subspace(&Subspace::full(d))
    }

    pub fn from_subspace(s: &Subspace) -> PolyCone {
        let mut g: Vec<RatVec> = s.basis().to_vec();
        g.extend(s.basis().iter().map(|v| -v));
        Self::pos_hull(s.ambient(), &g)
    }

    /// Cone {x : eqs·x = 0, facets·x ≤ 0}.
    pub fn from_h(d: usize, eqs: &[RatVec], ineqs: &[RatVec]) -> PolyCone {
        let mut all: Vec<RatVec> = eqs.to_vec();
        all.extend(ineqs.iter().cloned());
        let lin = Subspace::span(d, &nullspace(&all, d));
        let lineality: Vec<RatVec> = lin.basis().iter().map(|v| v.line_normal()).collect();
        let mut base: Vec<RatVec> = eqs.to_vec();
        base.extend(lin.basis().iter().cloned());
        let pointed_dim = nullspace(&base, d).len();
        let mut rays = BTreeSet::new();
        if pointed_dim > 0 {
            for sub in subsets(ineqs.len(), pointed_dim - 1) {
                let mut rows = base.clone();
                rows.extend(sub.iter().map(|&i| ineqs[i].clone()));
                let ns = nullspace(&rows, d);
                if ns.len() != 1 {
                    continue;
                }
                let r = &ns[0];
                if ineqs.iter().all(|a| !a.dot(r).is_positive()) {
                    rays.insert(r.primitive());
                } else if ineqs.iter().all(|a| !a.dot(r).is_negative()) {
                    rays.insert((-r).primitive());
                }
            }
        }
        let rays: Vec<RatVec> = rays.into_iter().collect();
        let mut gens = rays.clone();
        gens.extend(lineality.iter().cloned());
        gens.extend(lineality.iter().map(|v| -v));
        let (eqs, facets) = h_from_generators(d, &gens);
        PolyCone { dim: d, rays, lineality, eqs, facets }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[RatVec] {
        &self.lineality
    }

    pub fn equations(&self) -> &[RatVec] {
        &self.eqs
    }

    pub fn facet_normals(&self) -> &[RatVec] {
        &self.facets
    }

    pub fn generators(&self) -> Vec<RatVec> {
        let mut g = self.rays.clone();
        g.extend(self.lineality.iter().cloned());
        g.extend(self.lineality.iter().map(|v| -v));
        g
    }

    pub fn lineality_space(&self) -> Subspace {
        Subspace::span(self.dim, &self.lineality)
    }

    /// Dimension of the linear hull.
    pub fn cone_dim(&self) -> usize {
        self.dim - self.eqs.len()
    }

    pub fn is_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.eqs.iter().all(|a| a.dot(x).is_zero()) && self.facets.iter().all(|a| !a.dot(x).is_positive())
    }

    pub fn ri_contains(&self, x: &RatVec) -> bool {
        self.eqs.iter().all(|a| a.dot(x).is_zero()) && self.facets.iter().all(|a| a.dot(x).is_negative())
    }

    pub fn contains_cone(&self, o: &PolyCone) -> bool {
        o.generators().iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, o: &PolyCone) -> PolyCone {
        let mut eqs = self.eqs.clone();
        eqs.extend(o.eqs.iter().cloned());
        let mut ineqs = self.facets.clone();
        ineqs.extend(o.facets.iter().cloned());
        Self::from_h(self.dim, &eqs, &ineqs)
    }

    pub fn sum(&self, o: &PolyCone) -> PolyCone {
        let mut g = self.generators();
        g.extend(o.generators());
        Self::pos_hull(self.dim, &g)
    }

    /// A point of the relative interior: the sum of the extreme rays.
    pub fn ri_point(&self) -> RatVec {
        RatVec::sum(self.dim, &self.rays)
    }

    /// A nonzero relative-interior point, if the cone is not {0}.
    pub fn nonzero_ri_point(&self) -> Option<RatVec> {
        let p = self.ri_point();
        if !p.is_zero() {
            return Some(p);
        }
        self.lineality.first().cloned()
    }

    /// All nonempty faces, including the cone itself and its lineality space.
    pub fn faces(&self) -> Vec<PolyCone> {
        let mut seen: HashSet<PolyCone> = HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.clone()) {
                continue;
            }
            for a in &f.facets {
                let mut eqs = f.eqs.clone();
                eqs.push(a.clone());
                let g = Self::from_h(self.dim, &eqs, &f.facets);
                if !seen.contains(&g) {
                    stack.push(g);
                }
            }
        }
        let mut out: Vec<PolyCone> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// The face of this cone containing `x` in its relative interior.
    pub fn face_containing(&self, x: &RatVec) -> Option<PolyCone> {
        if !self.contains(x) {
            return None;
        }
        let mut eqs = self.eqs.clone();
        eqs.extend(self.facets.iter().filter(|a| a.dot(x).is_zero()).cloned());
        Some(Self::from_h(self.dim, &eqs, &self.facets))
    }

    pub fn is_face_of(&self, o: &PolyCone) -> bool {
        o.contains_cone(self) && o.face_containing(&self.ri_point()).as_ref() == Some(self)
    }
}

impl fmt::Display for PolyCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pos{{")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")?;
        if !self.lineality.is_empty() {
            write!(f, "+span{{")?;
            for (i, r) in self.lineality.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rv;

    #[test]
    fn pos_hull_examples() {
        assert_eq!(PolyCone::pos_hull(2, &[]), PolyCone::zero(2));
        assert!(PolyCone::zero(2).rays().is_empty());
        let q = PolyCone::pos_hull(2, &[rv![1, 0], rv![1, 1], rv![0, 1]]);
        assert_eq!(q.rays(), &[rv![0, 1], rv![1, 0]]);
        let h = PolyCone::pos_hull(2, &[rv![1, 0], rv![-1, 0], rv![0, 1]]);
        assert_eq!(h.lineality(), &[rv![1, 0]]);
        assert_eq!(h.rays(), &[rv![0, 1]]);
    }

    #[test]
    fn faces_examples() {
        let q = PolyCone::pos_hull(2, &[rv![1, 0], rv![0, 1]]);
        assert_eq!(q.faces().len(), 4);
        let h = PolyCone::pos_hull(2, &[rv![1, 0], rv![-1, 0], rv![0, 1]]);
        assert_eq!(h.faces().len(), 2);
        assert_eq!(PolyCone::full(2).faces().len(), 1);
        let octant = PolyCone::pos_hull(3, &[rv![1, 0, 0], rv![0, 1, 0], rv![0, 0, 1]]);
        assert_eq!(octant.faces().len(), 8);
    }

    #[test]
    fn ri_and_intersection() {
        let q = PolyCone::pos_hull(2, &[rv![1, 0], rv![0, 1]]);
        assert!(q.ri_contains(&rv![1, 1]));
        assert!(!q.ri_contains(&rv![1, 0]));
        let lower = PolyCone::pos_hull(2, &[rv![1, 0], rv![-1, 0], rv![0, -1]]);
        assert_eq!(q.intersect(&lower), PolyCone::pos_hull(2, &[rv![3, 0]]));
        assert!(PolyCone::zero(2).ri_contains(&rv![0, 0]));
        assert!(PolyCone::full(2).ri_contains(&rv![5, 1]));
    }

    #[test]
    fn pointed_empty_intersection() {
        let q = PolyCone::pos_hull(2, &[rv![1, 0], rv![0, 1]]);
        let nq = PolyCone::pos_hull(2, &[rv![-1, 0], rv![0, -1]]);
        assert_eq!(q.intersect(&nq), PolyCone::zero(2));
    }
}
