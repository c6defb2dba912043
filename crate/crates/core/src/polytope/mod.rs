//! Rational polytopes: faces, exposed faces, normal and touching cones, polarity, lifts.

mod cones;
mod decompose;
mod lift;
mod polar;

pub use cones::{ExposedMeet, SupExposed};
pub use decompose::Decomposition;
pub(crate) use decompose::min_subset;
pub use lift::{CylinderReport, LiftReport};
pub use polar::PosIsoReport;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::exactgeom::lp::{self, LpResult};
use crate::exactgeom::{convex_combination, k_subsets, nullspace, rank, AffineSubspace, Rat, RatVec, Subspace};
use crate::lattice::{build_lattice, FiniteLattice, LatticeError};

pub const MAX_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope needs at least one vertex")]
    NoVertices,
    #[error("ambient dimension {0} outside 1..=4")]
    BadDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vertex {0} is listed twice")]
    DuplicateVertex(usize),
    #[error("vertex {0} is not an extreme point")]
    NotExtreme(usize),
    #[error("zero direction")]
    ZeroDirection,
    #[error("vertex set {0:?} is not a face")]
    NotAFace(Vec<usize>),
    #[error("point {0} is not in the body")]
    PointNotInBody(RatVec),
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("too many vertices ({0}) for brute-force enumeration")]
    TooLarge(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, PolytopeError>;

/// A relative facet: `normal·x ≤ offset` with equality exactly on `vertices`.
/// The normal lies in lin(P).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: RatVec,
    pub offset: Rat,
    pub vertices: Vec<usize>,
}

/// A face, identified by the sorted indices of the vertices it contains.
#[derive(Clone)]
pub struct PolyFace {
    pub vertices: Vec<usize>,
    pub dim: i64,
    pub exposing_normal: Option<RatVec>,
}

impl PartialEq for PolyFace {
    fn eq(&self, o: &Self) -> bool {
        self.vertices == o.vertices
    }
}
impl Eq for PolyFace {}
impl Hash for PolyFace {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.vertices.hash(h);
    }
}
impl PartialOrd for PolyFace {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for PolyFace {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.dim, &self.vertices).cmp(&(o.dim, &o.vertices))
    }
}

impl fmt::Debug for PolyFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{:?}", self.vertices)
    }
}

impl PolyFace {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_subset(&self, o: &PolyFace) -> bool {
        self.vertices.iter().all(|v| o.vertices.binary_search(v).is_ok())
    }

    pub fn contains_vertex(&self, i: usize) -> bool {
        self.vertices.binary_search(&i).is_ok()
    }
}

#[derive(Clone)]
pub struct Polytope {
    vertices: Vec<RatVec>,
    ambient: usize,
    aff: AffineSubspace,
    facets: Vec<Facet>,
    faces: OnceLock<Vec<PolyFace>>,
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope").field("vertices", &self.vertices).finish()
    }
}

impl PartialEq for Polytope {
    /// Same vertex set, in any order.
    fn eq(&self, o: &Self) -> bool {
        let a: BTreeSet<&RatVec> = self.vertices.iter().collect();
        let b: BTreeSet<&RatVec> = o.vertices.iter().collect();
        self.ambient == o.ambient && a == b
    }
}

fn check_dims(points: &[RatVec]) -> Result<usize> {
    let d = points.first().ok_or(PolytopeError::NoVertices)?.dim();
    if d == 0 || d > MAX_DIM {
        return Err(PolytopeError::BadDimension(d));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(PolytopeError::DimensionMismatch { expected: d, got: p.dim() });
    }
    Ok(d)
}

/// Is `points[i]` outside the convex hull of the other points?
fn is_extreme(points: &[RatVec], i: usize) -> bool {
    let others: Vec<RatVec> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
    others.is_empty() || convex_combination(&others, &points[i]).is_none()
}

impl Polytope {
    /// Builds a polytope from a list of extreme points.
    pub fn new(vertices: Vec<RatVec>) -> Result<Self> {
        let d = check_dims(&vertices)?;
        for i in 0..vertices.len() {
            if vertices[..i].contains(&vertices[i]) {
                return Err(PolytopeError::DuplicateVertex(i));
            }
        }
        if let Some(i) = (0..vertices.len()).find(|&i| !is_extreme(&vertices, i)) {
            return Err(PolytopeError::NotExtreme(i));
        }
        Ok(Self::build(vertices, d))
    }

    /// Convex hull of arbitrary points, keeping the extreme ones in first-seen order.
    pub fn hull(points: &[RatVec]) -> Result<Self> {
        let d = check_dims(points)?;
        let mut uniq: Vec<RatVec> = Vec::new();
        for p in points {
            if !uniq.contains(p) {
                uniq.push(p.clone());
            }
        }
        let keep: Vec<RatVec> =
            (0..uniq.len()).filter(|&i| is_extreme(&uniq, i)).map(|i| uniq[i].clone()).collect();
        Ok(Self::build(keep, d))
    }

    fn build(vertices: Vec<RatVec>, d: usize) -> Self {
        let aff = AffineSubspace::aff_hull(&vertices).expect("nonempty");
        let facets = compute_facets(&vertices, &aff, d);
        Polytope { vertices, ambient: d, aff, facets, faces: OnceLock::new() }
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &RatVec {
        &self.vertices[i]
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.aff.dim()
    }

    pub fn lin(&self) -> &Subspace {
        &self.aff.directions
    }

    pub fn lin_perp(&self) -> Subspace {
        self.aff.directions.orth_complement()
    }

    pub fn aff(&self) -> &AffineSubspace {
        &self.aff
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    fn check_vec(&self, x: &RatVec) -> Result<()> {
        if x.dim() != self.ambient {
            return Err(PolytopeError::DimensionMismatch { expected: self.ambient, got: x.dim() });
        }
        Ok(())
    }

    pub fn contains(&self, x: &RatVec) -> Result<bool> {
        self.check_vec(x)?;
        Ok(convex_combination(&self.vertices, x).is_some())
    }

    /// The face spanned by the given vertices, dimension from their affine hull.
    pub fn face_from_vertices(&self, idx: impl IntoIterator<Item = usize>) -> PolyFace {
        let set: BTreeSet<usize> = idx.into_iter().collect();
        let vertices: Vec<usize> = set.into_iter().collect();
        let dim = match vertices.first() {
            None => -1,
            Some(&i0) => {
                let diffs: Vec<RatVec> = vertices.iter().map(|&i| &self.vertices[i] - &self.vertices[i0]).collect();
                rank(&diffs) as i64
            }
        };
        PolyFace { vertices, dim, exposing_normal: None }
    }

    pub fn empty_face(&self) -> PolyFace {
        self.face_from_vertices([])
    }

    pub fn whole(&self) -> PolyFace {
        self.face_from_vertices(0..self.vertices.len())
    }

    pub fn points_of(&self, f: &PolyFace) -> Vec<RatVec> {
        f.vertices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn centroid(&self, f: &PolyFace) -> Option<RatVec> {
        if f.is_empty() {
            return None;
        }
        let s = RatVec::sum(self.ambient, f.vertices.iter().map(|&i| &self.vertices[i]));
        Some(s.scale(&(Rat::one() / Rat::from_integer((f.vertices.len() as i64).into()))))
    }

    /// h(P,u) and the exposed face F⊥(P,u).
    pub fn support(&self, u: &RatVec) -> Result<(Rat, PolyFace)> {
        self.check_vec(u)?;
        if u.is_zero() {
            return Err(PolytopeError::ZeroDirection);
        }
        let vals: Vec<Rat> = self.vertices.iter().map(|v| v.dot(u)).collect();
        let h = vals.iter().max().expect("nonempty").clone();
        let mut f = self.face_from_vertices((0..vals.len()).filter(|&i| vals[i] == h));
        f.exposing_normal = Some(u.clone());
        Ok((h, f))
    }

    pub fn exposed_face(&self, u: &RatVec) -> Result<PolyFace> {
        Ok(self.support(u)?.1)
    }

    /// Vertices carrying positive weight in some convex representation of x: the vertex
    /// set of the unique face with x in its relative interior.
    fn minimal_face_vertices(&self, x: &RatVec, known: &[usize]) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut a: Vec<Vec<Rat>> =
            (0..self.ambient).map(|j| self.vertices.iter().map(|v| v.get(j).clone()).collect()).collect();
        a.push(vec![Rat::one(); n]);
        let mut b: Vec<Rat> = x.coords().to_vec();
        b.push(Rat::one());
        lp::feasible(&a, &b)?;
        let mut out = Vec::new();
        for i in 0..n {
            if known.contains(&i) {
                out.push(i);
                continue;
            }
            let mut c = vec![Rat::zero(); n];
            c[i] = Rat::one();
            if let LpResult::Optimal { value, .. } = lp::maximize(&c, &a, &b) {
                if value.is_positive() {
                    out.push(i);
                }
            }
        }
        Some(out)
    }

    /// F(P,x): the face with x in its relative interior.
    pub fn face_at(&self, x: &RatVec) -> Result<PolyFace> {
        self.check_vec(x)?;
        let vs = self.minimal_face_vertices(x, &[]).ok_or_else(|| PolytopeError::PointNotInBody(x.clone()))?;
        Ok(self.face_from_vertices(vs))
    }

    /// All faces, as the closure of the facets under intersection, plus ∅ and P.
    pub fn faces(&self) -> &[PolyFace] {
        self.faces.get_or_init(|| {
            let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
            sets.insert((0..self.vertices.len()).collect());
            sets.insert(vec![]);
            let facet_sets: Vec<Vec<usize>> = self.facets.iter().map(|f| f.vertices.clone()).collect();
            let mut frontier: Vec<Vec<usize>> = facet_sets.clone();
            while let Some(s) = frontier.pop() {
                if !sets.insert(s.clone()) {
                    continue;
                }
                for f in &facet_sets {
                    let i: Vec<usize> = s.iter().filter(|x| f.contains(x)).copied().collect();
                    if !sets.contains(&i) {
                        frontier.push(i);
                    }
                }
            }
            let mut out: Vec<PolyFace> = sets.into_iter().map(|s| self.face_from_vertices(s)).collect();
            out.sort();
            out
        })
    }

    pub fn is_face(&self, f: &PolyFace) -> bool {
        self.faces().iter().any(|g| g == f)
    }

    fn require_face(&self, f: &PolyFace) -> Result<PolyFace> {
        self.faces()
            .iter()
            .find(|g| *g == f)
            .cloned()
            .ok_or_else(|| PolytopeError::NotAFace(f.vertices.clone()))
    }

    /// Face test straight from the definition: W is a face iff the minimal face of the
    /// centroid of W has exactly the vertices W.
    pub fn is_face_by_definition(&self, w: &[usize]) -> bool {
        if w.is_empty() {
            return true;
        }
        let f = self.face_from_vertices(w.iter().copied());
        let c = self.centroid(&f).expect("nonempty");
        self.minimal_face_vertices(&c, &f.vertices).as_deref() == Some(&f.vertices[..])
    }

    /// Brute force over all vertex subsets.
    pub fn faces_by_definition(&self) -> Result<Vec<PolyFace>> {
        let n = self.vertices.len();
        if n > 12 {
            return Err(PolytopeError::TooLarge(n));
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let w: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if self.is_face_by_definition(&w) {
                out.push(self.face_from_vertices(w));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Exposed faces from supporting hyperplanes with normals summed from facet subsets,
    /// plus ∅ and P.
    pub fn exposed_faces(&self) -> Vec<PolyFace> {
        let m = self.facets.len();
        assert!(m <= 20, "too many facets for subset enumeration");
        let mut found: BTreeSet<PolyFace> = BTreeSet::new();
        found.insert(self.empty_face());
        let mut whole = self.whole();
        whole.exposing_normal = self.lin_perp().basis().first().cloned();
        found.insert(whole);
        for mask in 1u32..(1 << m) {
            let u = RatVec::sum(self.ambient, (0..m).filter(|i| mask & (1 << i) != 0).map(|i| &self.facets[i].normal));
            if u.is_zero() {
                continue;
            }
            let (_, f) = self.support(&u).expect("nonzero");
            if !found.contains(&f) {
                found.insert(f);
            }
        }
        found.into_iter().collect()
    }

    pub fn face_lattice(&self) -> Result<FiniteLattice<PolyFace>> {
        Ok(build_lattice(self.faces().to_vec(), |a, b| a.is_subset(b))?)
    }

    pub fn exposed_face_lattice(&self) -> Result<FiniteLattice<PolyFace>> {
        Ok(build_lattice(self.exposed_faces(), |a, b| a.is_subset(b))?)
    }
}

fn compute_facets(vertices: &[RatVec], aff: &AffineSubspace, d: usize) -> Vec<Facet> {
    let k = aff.dim();
    if k == 0 {
        return vec![];
    }
    let perp = aff.directions.orth_complement();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for sub in k_subsets(vertices.len(), k) {
        let p0 = &vertices[sub[0]];
        let mut rows: Vec<RatVec> = sub[1..].iter().map(|&i| &vertices[i] - p0).collect();
        if rank(&rows) != k - 1 {
            continue;
        }
        rows.extend(perp.basis().iter().cloned());
        let ns = nullspace(&rows, d);
        if ns.len() != 1 {
            continue;
        }
        let a = ns[0].primitive();
        let b = a.dot(p0);
        let vals: Vec<Rat> = vertices.iter().map(|v| a.dot(v) - &b).collect();
        let above = vals.iter().any(|x| x.is_positive());
        let below = vals.iter().any(|x| x.is_negative());
        let (a, b) = match (above, below) {
            (true, true) | (false, false) => continue,
            (false, true) => (a, b),
            (true, false) => (-a, -b),
        };
        let tight: Vec<usize> = (0..vertices.len()).filter(|&i| vals[i].is_zero()).collect();
        if seen.insert(tight.clone()) {
            out.push(Facet { normal: a, offset: b, vertices: tight });
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::rv;

    pub fn square() -> Polytope {
        Polytope::new(vec![rv![1, 1], rv![-1, 1], rv![-1, -1], rv![1, -1]]).unwrap()
    }

    pub fn cube() -> Polytope {
        let mut vs = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    vs.push(rv![x, y, z]);
                }
            }
        }
        Polytope::new(vs).unwrap()
    }

    pub fn triangle() -> Polytope {
        Polytope::new(vec![rv![0, 0], rv![2, 0], rv![1, 1]]).unwrap()
    }

    pub fn segment() -> Polytope {
        Polytope::new(vec![rv![0, 0], rv![2, 0]]).unwrap()
    }

    pub fn point() -> Polytope {
        Polytope::new(vec![rv![1, 2]]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use crate::exactgeom::rat;
    use crate::rv;
    use proptest::prelude::*;

    #[test]
    fn construction_errors() {
        assert_eq!(Polytope::new(vec![]).unwrap_err(), PolytopeError::NoVertices);
        assert_eq!(
            Polytope::new(vec![rv![0, 0], rv![1, 0], rv![2, 0]]).unwrap_err(),
            PolytopeError::NotExtreme(1)
        );
        assert_eq!(Polytope::new(vec![rv![0, 0], rv![0, 0]]).unwrap_err(), PolytopeError::DuplicateVertex(1));
        assert!(matches!(Polytope::new(vec![rv![0, 0], rv![1]]), Err(PolytopeError::DimensionMismatch { .. })));
        let h = Polytope::hull(&[rv![0, 0], rv![1, 0], rv![2, 0], rv![0, 0]]).unwrap();
        assert_eq!(h.vertices(), &[rv![0, 0], rv![2, 0]]);
    }

    #[test]
    fn support_examples() {
        let sq = square();
        let (h, f) = sq.support(&rv![1, 0]).unwrap();
        assert_eq!(h, rat(1));
        assert_eq!(sq.points_of(&f), vec![rv![1, 1], rv![1, -1]]);
        let (h, f) = sq.support(&rv![1, 1]).unwrap();
        assert_eq!(h, rat(2));
        assert_eq!(sq.points_of(&f), vec![rv![1, 1]]);
        let seg = segment();
        let (h, f) = seg.support(&rv![0, 1]).unwrap();
        assert_eq!(h, rat(0));
        assert_eq!(f, seg.whole());
        assert_eq!(sq.support(&rv![0, 0]).unwrap_err(), PolytopeError::ZeroDirection);
    }

    #[test]
    fn facet_counts() {
        assert_eq!(square().facets().len(), 4);
        assert_eq!(cube().facets().len(), 6);
        assert_eq!(segment().facets().len(), 2);
        assert_eq!(point().facets().len(), 0);
        for f in segment().facets() {
            assert!(f.normal.get(1).is_zero());
        }
    }

    #[test]
    fn face_counts() {
        assert_eq!(segment().faces().len(), 4);
        assert_eq!(square().faces().len(), 10);
        assert_eq!(cube().faces().len(), 28);
        assert_eq!(point().faces().len(), 2);
        assert_eq!(point().exposed_faces().len(), 2);
        let dims: Vec<i64> = cube().faces().iter().map(|f| f.dim).collect();
        for (d, c) in [(-1, 1), (0, 8), (1, 12), (2, 6), (3, 1)] {
            assert_eq!(dims.iter().filter(|&&x| x == d).count(), c);
        }
    }

    #[test]
    fn three_routes_agree() {
        for p in [square(), cube(), triangle(), segment(), point()] {
            let a = p.faces().to_vec();
            let b = p.faces_by_definition().unwrap();
            let c = p.exposed_faces();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }

    #[test]
    fn face_at_examples() {
        let sq = square();
        assert_eq!(sq.face_at(&rv![0, 0]).unwrap(), sq.whole());
        assert_eq!(sq.face_at(&rv![1, 0]).unwrap().dim, 1);
        assert_eq!(sq.face_at(&rv![1, 1]).unwrap().dim, 0);
        assert!(matches!(sq.face_at(&rv![2, 0]), Err(PolytopeError::PointNotInBody(_))));
    }

    #[test]
    fn lattice_shape() {
        let l = square().face_lattice().unwrap();
        assert_eq!(l.len(), 10);
        assert_eq!(l.atoms().len(), 4);
        assert_eq!(l.coatoms().len(), 4);
        assert_eq!(l.hasse_edges().len(), 16);
        let sq = square();
        let ex = sq.face_from_vertices([0, 3]);
        let ey = sq.face_from_vertices([0, 1]);
        let m = l.meet(&[l.index_of(&ex).unwrap(), l.index_of(&ey).unwrap()]);
        assert_eq!(sq.points_of(l.element(m)), vec![rv![1, 1]]);
    }

    fn random_polygon() -> impl Strategy<Value = Vec<RatVec>> {
        prop::collection::vec((-4i64..=4, -4i64..=4), 1..8)
            .prop_map(|ps| ps.into_iter().map(|(x, y)| rv![x, y]).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn hull_routes_agree(pts in random_polygon()) {
            let p = Polytope::hull(&pts).unwrap();
            prop_assert_eq!(p.faces().to_vec(), p.faces_by_definition().unwrap());
            prop_assert_eq!(p.faces().to_vec(), p.exposed_faces());
            for q in &pts {
                prop_assert!(p.contains(q).unwrap());
            }
        }

        #[test]
        fn exposing_normal_exposes(pts in random_polygon()) {
            let p = Polytope::hull(&pts).unwrap();
            for f in p.exposed_faces() {
                if let Some(u) = &f.exposing_normal {
                    prop_assert_eq!(p.exposed_face(u).unwrap(), f.clone());
                }
            }
        }
    }
}
