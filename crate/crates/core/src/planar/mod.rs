//! Planar convex bodies bounded by segments and circular arcs, possibly with deleted
//! boundary pieces.
//!
//! Junction `j` is the start point of feature `j` (and the end of feature `j-1`).
//! Faces are named symbolically by [`FaceDescriptor`]; arc points are identified by
//! their outward normal direction, since most of them have irrational coordinates.

mod cone2;
mod polar;
mod rules;

use std::fmt;

use num::{Signed, Zero};
use thiserror::Error;

pub use cone2::{ccw_cmp, cross, crossings, rot90, strictly_between, Cone2};
pub use polar::PlanarPosIsoReport;
pub use rules::{CoatomPlanarReport, MinkowskiPlanarReport, PartitionReport, PlanarSummary, RuleReport};

use crate::exactgeom::{Rat, RatVec};
use crate::lattice::LatticeError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanarError {
    #[error("a body needs at least two boundary features")]
    TooFewFeatures,
    #[error("expected one closed flag per feature and per junction")]
    FlagCount,
    #[error("feature {0} is degenerate")]
    Degenerate(usize),
    #[error("feature {0} does not end where feature {1} starts")]
    Discontinuous(usize, usize),
    #[error("feature {feature}: point {point} is not on the circle")]
    OffCircle { feature: usize, point: String },
    #[error("feature {0}: radius squared must be positive")]
    BadRadius(usize),
    #[error("boundary turns clockwise at junction {0}")]
    NotConvex(usize),
    #[error("segments meeting at junction {0} are collinear")]
    CollinearSegments(usize),
    #[error("outward normals wind {0} times instead of once")]
    Winding(usize),
    #[error("deleted segment {0} keeps both endpoints, which is not convex")]
    NonConvexDeletion(usize),
    #[error("zero direction")]
    ZeroDirection,
    #[error("point {0} is not in the body")]
    PointNotInBody(RatVec),
    #[error("{0} is not a face of the body")]
    NotAFace(String),
    #[error("no point of the body attains the supremum in direction {0}")]
    UndefinedTouchingCone(RatVec),
    #[error("arc feature {0} is not centered at the origin")]
    UnsupportedArcCenter(usize),
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("body is not closed")]
    NotClosed,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, PlanarError>;

/// A boundary piece, traversed counterclockwise around the body.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Segment { from: RatVec, to: RatVec },
    /// Counterclockwise arc of the circle |x - center|² = radius_sq.
    Arc { center: RatVec, radius_sq: Rat, from: RatVec, to: RatVec },
}

impl Feature {
    pub fn from(&self) -> &RatVec {
        match self {
            Feature::Segment { from, .. } | Feature::Arc { from, .. } => from,
        }
    }

    pub fn to(&self) -> &RatVec {
        match self {
            Feature::Segment { to, .. } | Feature::Arc { to, .. } => to,
        }
    }

    pub fn is_arc(&self) -> bool {
        matches!(self, Feature::Arc { .. })
    }

    /// Outward normal at the start point (not normalized).
    pub fn start_normal(&self) -> RatVec {
        match self {
            Feature::Segment { from, to } => seg_normal(from, to),
            Feature::Arc { center, from, .. } => from - center,
        }
    }

    pub fn end_normal(&self) -> RatVec {
        match self {
            Feature::Segment { from, to } => seg_normal(from, to),
            Feature::Arc { center, to, .. } => to - center,
        }
    }

    /// Outward normal u lies strictly inside this feature's normal range (arcs only).
    fn arc_has_normal(&self, u: &RatVec) -> bool {
        self.is_arc() && strictly_between(&self.start_normal(), &self.end_normal(), u)
    }
}

fn seg_normal(from: &RatVec, to: &RatVec) -> RatVec {
    let d = to - from;
    RatVec::new(vec![d.get(1).clone(), -d.get(0).clone()])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceDescriptor {
    Empty,
    /// The junction point with this index.
    Vertex(usize),
    /// The segment feature with this index, minus any deleted endpoints.
    Edge(usize),
    /// The point of an arc feature with the given primitive outward normal.
    ArcPoint { feature: usize, normal: RatVec },
    Whole,
}

impl FaceDescriptor {
    pub fn dim(&self) -> i64 {
        match self {
            FaceDescriptor::Empty => -1,
            FaceDescriptor::Vertex(_) | FaceDescriptor::ArcPoint { .. } => 0,
            FaceDescriptor::Edge(_) => 1,
            FaceDescriptor::Whole => 2,
        }
    }
}

impl fmt::Display for FaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceDescriptor::Empty => write!(f, "empty"),
            FaceDescriptor::Vertex(j) => write!(f, "vertex#{j}"),
            FaceDescriptor::Edge(i) => write!(f, "edge#{i}"),
            FaceDescriptor::ArcPoint { feature, normal } => write!(f, "arc#{feature}@{normal}"),
            FaceDescriptor::Whole => write!(f, "whole"),
        }
    }
}

/// Where a point sits relative to the closure of the body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Outside,
    Interior,
    Junction(usize),
    OnSegment(usize),
    OnArc(usize),
}

/// The piece of the closure's boundary maximizing a linear functional.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Piece {
    Segment(usize),
    Arc(usize),
    Junction(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarBody {
    features: Vec<Feature>,
    feature_closed: Vec<bool>,
    junction_closed: Vec<bool>,
}

impl PlanarBody {
    pub fn new(features: Vec<Feature>, feature_closed: Vec<bool>, junction_closed: Vec<bool>) -> Result<Self> {
        let n = features.len();
        if n < 2 {
            return Err(PlanarError::TooFewFeatures);
        }
        if feature_closed.len() != n || junction_closed.len() != n {
            return Err(PlanarError::FlagCount);
        }
        for (i, f) in features.iter().enumerate() {
            if f.from() == f.to() || f.from().dim() != 2 || f.to().dim() != 2 {
                return Err(PlanarError::Degenerate(i));
            }
            if let Feature::Arc { center, radius_sq, from, to } = f {
                if !radius_sq.is_positive() {
                    return Err(PlanarError::BadRadius(i));
                }
                for p in [from, to] {
                    if (p - center).norm_sq() != *radius_sq {
                        return Err(PlanarError::OffCircle { feature: i, point: p.to_string() });
                    }
                }
            }
            let next = (i + 1) % n;
            if f.to() != features[next].from() {
                return Err(PlanarError::Discontinuous(i, next));
            }
        }
        let body = PlanarBody { features, feature_closed, junction_closed };
        let mut winding = 0;
        for j in 0..n {
            let (a, b) = (body.in_normal(j), body.out_normal(j));
            if a.same_direction(&b) {
                if !body.features[body.prev(j)].is_arc() && !body.features[j].is_arc() {
                    return Err(PlanarError::CollinearSegments(j));
                }
            } else if !cross(&a, &b).is_positive() {
                return Err(PlanarError::NotConvex(j));
            }
            winding += crossings(&a, &b);
            let f = &body.features[j];
            if f.is_arc() {
                winding += crossings(&f.start_normal(), &f.end_normal());
            }
        }
        if winding != 1 {
            return Err(PlanarError::Winding(winding));
        }
        for i in 0..n {
            if !body.features[i].is_arc()
                && !body.feature_closed[i]
                && body.junction_closed[i]
                && body.junction_closed[(i + 1) % n]
            {
                return Err(PlanarError::NonConvexDeletion(i));
            }
        }
        Ok(body)
    }

    /// All boundary pieces present.
    pub fn closed(features: Vec<Feature>) -> Result<Self> {
        let n = features.len();
        Self::new(features, vec![true; n], vec![true; n])
    }

    /// The closed polygon with the given counterclockwise vertices.
    pub fn polygon(vertices: &[RatVec]) -> Result<Self> {
        let n = vertices.len();
        let fs = (0..n).map(|i| Feature::Segment { from: vertices[i].clone(), to: vertices[(i + 1) % n].clone() }).collect();
        Self::closed(fs)
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn feature_closed(&self) -> &[bool] {
        &self.feature_closed
    }

    pub fn junction_closed(&self) -> &[bool] {
        &self.junction_closed
    }

    pub fn is_closed(&self) -> bool {
        self.feature_closed.iter().chain(&self.junction_closed).all(|&c| c)
    }

    pub fn is_polygon(&self) -> bool {
        self.features.iter().all(|f| !f.is_arc())
    }

    pub fn junction(&self, j: usize) -> &RatVec {
        self.features[j].from()
    }

    fn prev(&self, j: usize) -> usize {
        (j + self.features.len() - 1) % self.features.len()
    }

    fn next(&self, j: usize) -> usize {
        (j + 1) % self.features.len()
    }

    /// Outward normal of the feature ending at junction `j`.
    pub fn in_normal(&self, j: usize) -> RatVec {
        self.features[self.prev(j)].end_normal()
    }

    /// Outward normal of the feature starting at junction `j`.
    pub fn out_normal(&self, j: usize) -> RatVec {
        self.features[j].start_normal()
    }

    /// The junction has a single outward normal.
    pub fn is_smooth_junction(&self, j: usize) -> bool {
        self.in_normal(j).same_direction(&self.out_normal(j))
    }

    /// Membership in the closure.
    pub fn closure_contains(&self, x: &RatVec) -> bool {
        self.features.iter().all(|f| match f {
            Feature::Segment { from, to } => !seg_normal(from, to).dot(&(x - from)).is_positive(),
            Feature::Arc { center, radius_sq, from, to } => {
                let d = x - center;
                let (s, e) = (from - center, to - center);
                if s.dot(&d) > *radius_sq || e.dot(&d) > *radius_sq {
                    return false;
                }
                let in_range = d.same_direction(&s) || d.same_direction(&e) || strictly_between(&s, &e, &d);
                d.is_zero() || !in_range || d.norm_sq() <= *radius_sq
            }
        })
    }

    pub fn locate(&self, x: &RatVec) -> Location {
        if x.dim() != 2 || !self.closure_contains(x) {
            return Location::Outside;
        }
        if let Some(j) = (0..self.features.len()).find(|&j| self.junction(j) == x) {
            return Location::Junction(j);
        }
        for (i, f) in self.features.iter().enumerate() {
            match f {
                Feature::Segment { from, to } => {
                    if seg_normal(from, to).dot(&(x - from)).is_zero() {
                        return Location::OnSegment(i);
                    }
                }
                Feature::Arc { center, radius_sq, from, to } => {
                    let d = x - center;
                    if d.norm_sq() == *radius_sq && strictly_between(&(from - center), &(to - center), &d) {
                        return Location::OnArc(i);
                    }
                }
            }
        }
        Location::Interior
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.face_at(x).is_ok()
    }

    /// The unique face with x in its relative interior.
    pub fn face_at(&self, x: &RatVec) -> Result<FaceDescriptor> {
        let missing = || PlanarError::PointNotInBody(x.clone());
        match self.locate(x) {
            Location::Outside => Err(missing()),
            Location::Interior => Ok(FaceDescriptor::Whole),
            Location::Junction(j) => self.junction_closed[j].then_some(FaceDescriptor::Vertex(j)).ok_or_else(missing),
            Location::OnSegment(i) => self.feature_closed[i].then_some(FaceDescriptor::Edge(i)).ok_or_else(missing),
            Location::OnArc(i) => {
                let Feature::Arc { center, .. } = &self.features[i] else { unreachable!() };
                let normal = (x - center).primitive();
                self.feature_closed[i].then_some(FaceDescriptor::ArcPoint { feature: i, normal }).ok_or_else(missing)
            }
        }
    }

    pub fn is_face(&self, f: &FaceDescriptor) -> bool {
        let n = self.features.len();
        match f {
            FaceDescriptor::Empty | FaceDescriptor::Whole => true,
            FaceDescriptor::Vertex(j) => *j < n && self.junction_closed[*j],
            FaceDescriptor::Edge(i) => *i < n && !self.features[*i].is_arc() && self.feature_closed[*i],
            FaceDescriptor::ArcPoint { feature, normal } => {
                *feature < n && self.feature_closed[*feature] && self.features[*feature].arc_has_normal(normal)
            }
        }
    }

    fn require_face(&self, f: &FaceDescriptor) -> Result<()> {
        if self.is_face(f) {
            Ok(())
        } else {
            Err(PlanarError::NotAFace(f.to_string()))
        }
    }

    /// Face inclusion between descriptors.
    pub fn face_leq(&self, a: &FaceDescriptor, b: &FaceDescriptor) -> bool {
        use FaceDescriptor::*;
        match (a, b) {
            (Empty, _) | (_, Whole) => true,
            (Vertex(j), Edge(i)) => *j == *i || *j == self.next(*i),
            _ => a == b,
        }
    }

    /// The point of an arc with outward normal `d`, when it has rational coordinates.
    pub fn arc_point(&self, feature: usize, d: &RatVec) -> Option<RatVec> {
        let Feature::Arc { center, radius_sq, .. } = self.features.get(feature)? else { return None };
        // c + d * sqrt(r²/|d|²)
        let q = radius_sq / d.norm_sq();
        let s = rational_sqrt(&q)?;
        Some(center + &d.scale(&s))
    }

    /// A normal direction in the middle of an arc's normal range.
    pub fn arc_representative(&self, feature: usize) -> RatVec {
        let f = &self.features[feature];
        let (s, e) = (f.start_normal(), f.end_normal());
        // |s| = |e| = r, so s + e bisects the range when it is shorter than π
        let c = cross(&s, &e);
        let v = if c.is_positive() {
            &s + &e
        } else if c.is_negative() {
            -&(&s + &e)
        } else {
            rot90(&s)
        };
        v.primitive()
    }

    /// Human readable descriptor with coordinates.
    pub fn describe(&self, f: &FaceDescriptor) -> String {
        match f {
            FaceDescriptor::Vertex(j) => format!("vertex {}", self.junction(*j)),
            FaceDescriptor::Edge(i) => format!("edge {}-{}", self.features[*i].from(), self.features[*i].to()),
            FaceDescriptor::ArcPoint { feature, normal } => match self.arc_point(*feature, normal) {
                Some(p) => format!("arc point {p}"),
                None => format!("arc point of feature {feature} with normal {normal}"),
            },
            _ => f.to_string(),
        }
    }

    /// N(C,F) for a face F.
    pub fn normal_cone(&self, f: &FaceDescriptor) -> Result<Cone2> {
        self.require_face(f)?;
        Ok(match f {
            FaceDescriptor::Empty => Cone2::Plane,
            FaceDescriptor::Whole => Cone2::Zero,
            FaceDescriptor::Vertex(j) => Cone2::sector(&self.in_normal(*j), &self.out_normal(*j)),
            FaceDescriptor::Edge(i) => Cone2::ray(&self.features[*i].start_normal()),
            FaceDescriptor::ArcPoint { normal, .. } => Cone2::ray(normal),
        })
    }

    pub fn normal_cone_at(&self, x: &RatVec) -> Result<Cone2> {
        self.normal_cone(&self.face_at(x)?)
    }

    fn closure_argmax(&self, u: &RatVec) -> Piece {
        let n = self.features.len();
        for (i, f) in self.features.iter().enumerate() {
            if !f.is_arc() && f.start_normal().same_direction(u) {
                return Piece::Segment(i);
            }
            if f.arc_has_normal(u) {
                return Piece::Arc(i);
            }
        }
        for j in 0..n {
            if Cone2::sector(&self.in_normal(j), &self.out_normal(j)).contains(u) {
                return Piece::Junction(j);
            }
        }
        unreachable!("outward normals cover every direction")
    }

    /// F⊥(C,u); empty when the supremum is not attained.
    pub fn exposed_face(&self, u: &RatVec) -> Result<FaceDescriptor> {
        if u.is_zero() {
            return Err(PlanarError::ZeroDirection);
        }
        Ok(match self.closure_argmax(u) {
            Piece::Segment(i) => {
                if self.feature_closed[i] {
                    FaceDescriptor::Edge(i)
                } else if self.junction_closed[i] {
                    FaceDescriptor::Vertex(i)
                } else if self.junction_closed[self.next(i)] {
                    FaceDescriptor::Vertex(self.next(i))
                } else {
                    FaceDescriptor::Empty
                }
            }
            Piece::Arc(i) if self.feature_closed[i] => FaceDescriptor::ArcPoint { feature: i, normal: u.primitive() },
            Piece::Junction(j) if self.junction_closed[j] => FaceDescriptor::Vertex(j),
            _ => FaceDescriptor::Empty,
        })
    }

    /// Is F an exposed face of C?
    pub fn is_exposed(&self, f: &FaceDescriptor) -> Result<bool> {
        self.require_face(f)?;
        if matches!(f, FaceDescriptor::Empty | FaceDescriptor::Whole) {
            return Ok(true);
        }
        let n = self.normal_cone(f)?;
        // the exposing directions of F lie in N(C,F); the ri direction and the two boundary
        // rays cover every case in the plane
        let mut cands: Vec<RatVec> = n.ri_direction().into_iter().collect();
        if let Cone2::Sector(a, b) = &n {
            cands.extend([a.clone(), b.clone()]);
        }
        for u in cands {
            if self.exposed_face(&u)? == *f {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// u is sharp normal: u ∈ ri N(C,x) for x ∈ ri F⊥(C,u). Normal cones are constant on
    /// relative interiors of faces, so the face's own normal cone decides.
    pub fn is_sharp_normal(&self, u: &RatVec) -> Result<bool> {
        let f = self.exposed_face(u)?;
        if f == FaceDescriptor::Empty {
            return Err(PlanarError::UndefinedTouchingCone(u.clone()));
        }
        Ok(self.normal_cone(&f)?.ri_contains(u))
    }

    /// x is sharp exposed: every nonzero u ∈ ri N(C,x) exposes a face with x in its ri.
    pub fn is_sharp_exposed(&self, x: &RatVec) -> Result<bool> {
        let f = self.face_at(x)?;
        let n = self.normal_cone(&f)?;
        let cands: Vec<RatVec> = match &n {
            Cone2::Sector(a, b) => vec![a + b, &(a + a) + b, &(b + b) + a],
            c => c.ri_direction().into_iter().collect(),
        };
        for u in cands {
            if self.exposed_face(&u)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// T(C,u) and whether it is a normal cone.
    pub fn touching_cone(&self, u: &RatVec) -> Result<(Cone2, bool)> {
        let f = self.exposed_face(u)?;
        if f == FaceDescriptor::Empty {
            return Err(PlanarError::UndefinedTouchingCone(u.clone()));
        }
        let n = self.normal_cone(&f)?;
        let t = n.faces().into_iter().find(|c| c.ri_contains(u)).expect("u lies in the normal cone it exposes");
        Ok((t, n.ri_contains(u)))
    }

    /// Empty, Whole, closed junctions, closed segments and one point per closed arc.
    pub fn special_faces(&self) -> Vec<FaceDescriptor> {
        let mut out = vec![FaceDescriptor::Empty];
        for (j, &c) in self.junction_closed.iter().enumerate() {
            if c {
                out.push(FaceDescriptor::Vertex(j));
            }
        }
        for (i, f) in self.features.iter().enumerate() {
            if !self.feature_closed[i] {
                continue;
            }
            out.push(if f.is_arc() {
                FaceDescriptor::ArcPoint { feature: i, normal: self.arc_representative(i) }
            } else {
                FaceDescriptor::Edge(i)
            });
        }
        out.push(FaceDescriptor::Whole);
        out
    }

    pub fn non_exposed_faces(&self) -> Vec<FaceDescriptor> {
        self.special_faces().into_iter().filter(|f| !self.is_exposed(f).expect("special faces are faces")).collect()
    }

    /// Is `c` the normal cone of some face?
    pub fn is_normal_cone(&self, c: &Cone2) -> bool {
        if let Cone2::Ray(d) = c {
            if self.features.iter().enumerate().any(|(i, f)| self.feature_closed[i] && f.arc_has_normal(d)) {
                return true;
            }
        }
        self.special_faces().iter().any(|f| self.normal_cone(f).ok().as_ref() == Some(c))
    }

    /// Normal cones of special faces, deduplicated.
    pub fn special_normal_cones(&self) -> Vec<Cone2> {
        let mut v: Vec<Cone2> = self.special_faces().iter().map(|f| self.normal_cone(f).expect("face")).collect();
        v.sort();
        v.dedup();
        v
    }

    /// All nonempty faces of the special normal cones.
    pub fn special_touching_cones(&self) -> Vec<Cone2> {
        let mut v: Vec<Cone2> = self.special_normal_cones().iter().flat_map(|n| n.faces()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Proper touching cones that are not normal cones. Only boundary rays of junction
    /// sectors can qualify.
    pub fn touching_not_normal(&self) -> Vec<Cone2> {
        let mut out: Vec<Cone2> = self
            .special_touching_cones()
            .into_iter()
            .filter(|t| !matches!(t, Cone2::Zero | Cone2::Plane) && !self.is_normal_cone(t))
            .collect();
        out.sort();
        out
    }

    /// The smallest exposed face containing F, as F⊥(C,v) for v ∈ ri N(C,F)∖{0}.
    pub fn sup_exposed(&self, f: &FaceDescriptor) -> Result<FaceDescriptor> {
        self.require_face(f)?;
        match self.normal_cone(f)?.ri_direction() {
            None => Ok(FaceDescriptor::Whole),
            Some(v) => self.exposed_face(&v),
        }
    }
}

fn rational_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rat::new(n, d))
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::exactgeom::{rat, ratio};
    use crate::rv;

    pub fn arc(center: RatVec, radius_sq: Rat, from: RatVec, to: RatVec) -> Feature {
        Feature::Arc { center, radius_sq, from, to }
    }

    pub fn seg(from: RatVec, to: RatVec) -> Feature {
        Feature::Segment { from, to }
    }

    /// a=(0,0), b=(1,0), c=(0,1) with the unit arc from b to c.
    pub fn quarter_disk() -> PlanarBody {
        PlanarBody::closed(vec![
            seg(rv![0, 0], rv![1, 0]),
            arc(rv![0, 0], rat(1), rv![1, 0], rv![0, 1]),
            seg(rv![0, 1], rv![0, 0]),
        ])
        .unwrap()
    }

    /// [-1,1]² with half-disks glued on the sides x = ±1.
    pub fn stadium() -> PlanarBody {
        PlanarBody::closed(vec![
            seg(rv![-1, -1], rv![1, -1]),
            arc(rv![1, 0], rat(1), rv![1, -1], rv![1, 1]),
            seg(rv![1, 1], rv![-1, 1]),
            arc(rv![-1, 0], rat(1), rv![-1, 1], rv![-1, -1]),
        ])
        .unwrap()
    }

    pub fn lens() -> PlanarBody {
        let y = ratio(4, 5);
        let top = RatVec::new(vec![rat(0), y.clone()]);
        let bot = RatVec::new(vec![rat(0), -y]);
        PlanarBody::closed(vec![
            arc(RatVec::new(vec![ratio(-3, 5), rat(0)]), rat(1), bot.clone(), top.clone()),
            arc(RatVec::new(vec![ratio(3, 5), rat(0)]), rat(1), top, bot),
        ])
        .unwrap()
    }

    pub fn unit_disk() -> PlanarBody {
        PlanarBody::closed(vec![
            arc(rv![0, 0], rat(1), rv![1, 0], rv![-1, 0]),
            arc(rv![0, 0], rat(1), rv![-1, 0], rv![1, 0]),
        ])
        .unwrap()
    }

    pub fn square() -> PlanarBody {
        PlanarBody::polygon(&[rv![-1, -1], rv![1, -1], rv![1, 1], rv![-1, 1]]).unwrap()
    }

    /// Disk of radius² 5/4 cut by the chord x = 1/2, which ends at (1/2, ±1).
    pub fn truncated_disk(chord_closed: bool) -> PlanarBody {
        let h = ratio(1, 2);
        let lo = RatVec::new(vec![h.clone(), rat(-1)]);
        let hi = RatVec::new(vec![h, rat(1)]);
        PlanarBody::new(
            vec![seg(lo.clone(), hi.clone()), arc(rv![0, 0], ratio(5, 4), hi, lo)],
            vec![chord_closed, true],
            vec![chord_closed, chord_closed],
        )
        .unwrap()
    }

    /// Triangle (0,0), (2,0), (1,2); features 0: bottom, 1: right, 2: left; junction j starts feature j.
    pub fn triangle_flags(features: [bool; 3], junctions: [bool; 3]) -> Result<PlanarBody> {
        let v = [rv![0, 0], rv![2, 0], rv![1, 2]];
        let fs = (0..3).map(|i| seg(v[i].clone(), v[(i + 1) % 3].clone())).collect();
        PlanarBody::new(fs, features.to_vec(), junctions.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use crate::exactgeom::{rat, ratio};
    use crate::rv;
    use FaceDescriptor::*;

    #[test]
    fn validation() {
        let bad = PlanarBody::polygon(&[rv![0, 0], rv![0, 1], rv![1, 0]]);
        assert_eq!(bad.unwrap_err(), PlanarError::NotConvex(0));
        let col = PlanarBody::polygon(&[rv![0, 0], rv![1, 0], rv![2, 0], rv![0, 1]]);
        assert_eq!(col.unwrap_err(), PlanarError::CollinearSegments(1));
        let off = PlanarBody::closed(vec![arc(rv![0, 0], rat(1), rv![1, 0], rv![1, 1]), seg(rv![1, 1], rv![1, 0])]);
        assert!(matches!(off, Err(PlanarError::OffCircle { feature: 0, .. })));
        // pentagram-like double winding is rejected
        let star = PlanarBody::polygon(&[rv![2, 0], rv![0, 2], rv![-2, 0], rv![0, -2], rv![2, 0]]);
        assert!(star.is_err());
        let gap = PlanarBody::closed(vec![seg(rv![0, 0], rv![1, 0]), seg(rv![1, 0], rv![0, 1])]);
        assert_eq!(gap.unwrap_err(), PlanarError::Discontinuous(1, 0));
        assert_eq!(triangle_flags([false, true, true], [true, true, true]).unwrap_err(), PlanarError::NonConvexDeletion(0));
        for b in [quarter_disk(), stadium(), lens(), unit_disk(), square(), truncated_disk(true), truncated_disk(false)] {
            assert!(b.closure_contains(&b.features()[0].from().clone()));
        }
    }

    #[test]
    fn quarter_disk_faces() {
        let q = quarter_disk();
        assert_eq!(q.face_at(&RatVec::new(vec![ratio(1, 2), rat(0)])).unwrap(), Edge(0));
        let p = RatVec::new(vec![ratio(3, 5), ratio(4, 5)]);
        assert_eq!(q.face_at(&p).unwrap(), ArcPoint { feature: 1, normal: rv![3, 4] });
        assert_eq!(q.face_at(&RatVec::new(vec![ratio(1, 4), ratio(1, 4)])).unwrap(), Whole);
        assert!(matches!(q.face_at(&rv![1, 1]), Err(PlanarError::PointNotInBody(_))));
        assert_eq!(q.normal_cone(&Vertex(0)).unwrap(), Cone2::sector(&rv![-1, 0], &rv![0, -1]));
        assert_eq!(q.normal_cone(&Edge(0)).unwrap(), Cone2::ray(&rv![0, -1]));
        assert_eq!(q.normal_cone_at(&p).unwrap(), Cone2::ray(&rv![3, 4]));
        assert_eq!(q.arc_point(1, &rv![3, 4]), Some(p));
        assert_eq!(q.exposed_face(&rv![1, 0]).unwrap(), Vertex(1));
        assert_eq!(q.touching_cone(&rv![1, 0]).unwrap(), (Cone2::ray(&rv![1, 0]), false));
        assert_eq!(q.touching_cone(&rv![1, -1]).unwrap(), (Cone2::sector(&rv![0, -1], &rv![1, 0]), true));
        assert!(q.non_exposed_faces().is_empty());
        assert_eq!(q.touching_not_normal(), vec![Cone2::ray(&rv![0, 1]), Cone2::ray(&rv![1, 0])]);
        assert_eq!(q.sup_exposed(&Vertex(1)).unwrap(), Vertex(1));
        assert_eq!(q.sup_exposed(&Whole).unwrap(), Whole);
    }

    #[test]
    fn stadium_faces() {
        let s = stadium();
        assert_eq!(s.exposed_face(&rv![0, 1]).unwrap(), Edge(2));
        assert_eq!(s.touching_cone(&rv![0, 1]).unwrap(), (Cone2::ray(&rv![0, 1]), true));
        let mut ne = s.non_exposed_faces();
        ne.sort();
        assert_eq!(ne, vec![Vertex(0), Vertex(1), Vertex(2), Vertex(3)]);
        assert!(s.touching_not_normal().is_empty());
        assert_eq!(s.sup_exposed(&Vertex(2)).unwrap(), Edge(2));
        assert_eq!(s.sup_exposed(&Vertex(3)).unwrap(), Edge(2));
    }

    #[test]
    fn lens_faces() {
        let l = lens();
        assert!(l.non_exposed_faces().is_empty());
        assert_eq!(l.touching_not_normal().len(), 4);
        assert_eq!(l.normal_cone(&Vertex(1)).unwrap(), Cone2::sector(&rv![3, 4], &rv![-3, 4]));
    }

    #[test]
    fn deleted_pieces() {
        // all vertices deleted: sector directions expose nothing
        let b = triangle_flags([true; 3], [false; 3]).unwrap();
        assert_eq!(b.exposed_face(&rv![-1, -1]).unwrap(), Empty);
        assert!(matches!(b.touching_cone(&rv![-1, -1]), Err(PlanarError::UndefinedTouchingCone(_))));
        assert!(!b.contains(&rv![0, 0]));
        assert!(b.contains(&rv![1, 0]));
        let open = truncated_disk(false);
        assert_eq!(open.exposed_face(&rv![1, 0]).unwrap(), Empty);
        assert!(!open.contains(&RatVec::new(vec![ratio(1, 2), rat(0)])));
        assert!(open.contains(&rv![0, 0]));
    }

    #[test]
    fn smooth_and_arc_points() {
        let d = unit_disk();
        assert_eq!(d.face_at(&rv![1, 0]).unwrap(), Vertex(0));
        assert_eq!(d.normal_cone(&Vertex(0)).unwrap(), Cone2::ray(&rv![1, 0]));
        assert_eq!(d.exposed_face(&rv![0, 1]).unwrap(), ArcPoint { feature: 0, normal: rv![0, 1] });
        assert_eq!(d.arc_representative(0), rv![0, 1]);
        assert!(d.touching_not_normal().is_empty());
        assert!(d.is_sharp_exposed(&rv![0, 1]).unwrap());
        assert!(!quarter_disk().is_sharp_normal(&rv![1, 0]).unwrap());
    }
}
