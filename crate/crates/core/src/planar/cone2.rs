use std::cmp::Ordering;
use std::fmt;

use num::{Signed, Zero};

use crate::exactgeom::{PolyCone, Rat, RatVec};
use crate::rv;

pub fn cross(a: &RatVec, b: &RatVec) -> Rat {
    a.get(0) * b.get(1) - a.get(1) * b.get(0)
}

pub fn rot90(a: &RatVec) -> RatVec {
    RatVec::new(vec![-a.get(1).clone(), a.get(0).clone()])
}

/// 0 for angles in [0, π), 1 for [π, 2π).
fn half(a: &RatVec) -> u8 {
    let (x, y) = (a.get(0), a.get(1));
    if y.is_positive() || (y.is_zero() && x.is_positive()) {
        0
    } else {
        1
    }
}

/// Compares the ccw angles of `a` and `b` measured from `base`, each in [0, 2π).
pub fn ccw_cmp(base: &RatVec, a: &RatVec, b: &RatVec) -> Ordering {
    let rel = |x: &RatVec| RatVec::new(vec![base.dot(x), cross(base, x)]);
    let (ra, rb) = (rel(a), rel(b));
    half(&ra).cmp(&half(&rb)).then_with(|| {
        let c = cross(&ra, &rb);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// `u` lies strictly inside the ccw sweep from `a` to `b` (a and b not equal in direction).
pub fn strictly_between(a: &RatVec, b: &RatVec, u: &RatVec) -> bool {
    !u.same_direction(a) && ccw_cmp(a, u, b) == Ordering::Less
}

/// Number of times the ccw sweep from `a` to `b` passes the direction (1,0), counting
/// the endpoint `b` but not `a`.
pub fn crossings(a: &RatVec, b: &RatVec) -> usize {
    let r = rv![1, 0];
    if a.same_direction(b) || r.same_direction(a) {
        return 0;
    }
    usize::from(ccw_cmp(a, &r, b) != Ordering::Greater)
}

/// Closed convex cones in the plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cone2 {
    Zero,
    Ray(RatVec),
    /// ccw from the first direction to the second, angle < π
    Sector(RatVec, RatVec),
    /// {x : w·x ≥ 0}
    Halfplane(RatVec),
    Line(RatVec),
    Plane,
}

impl Cone2 {
    pub fn ray(d: &RatVec) -> Cone2 {
        Cone2::Ray(d.primitive())
    }

    /// Sector spanned ccw from `a` to `b`; collapses to a ray when they agree.
    pub fn sector(a: &RatVec, b: &RatVec) -> Cone2 {
        if a.same_direction(b) {
            Cone2::ray(a)
        } else {
            Cone2::Sector(a.primitive(), b.primitive())
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Cone2::Zero => 0,
            Cone2::Ray(_) | Cone2::Line(_) => 1,
            _ => 2,
        }
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        match self {
            Cone2::Zero => x.is_zero(),
            Cone2::Ray(d) => x.is_zero() || d.same_direction(x),
            Cone2::Sector(a, b) => !cross(a, x).is_negative() && !cross(x, b).is_negative(),
            Cone2::Halfplane(w) => !w.dot(x).is_negative(),
            Cone2::Line(d) => cross(d, x).is_zero(),
            Cone2::Plane => true,
        }
    }

    pub fn ri_contains(&self, x: &RatVec) -> bool {
        match self {
            Cone2::Zero => x.is_zero(),
            Cone2::Ray(d) => d.same_direction(x),
            Cone2::Sector(a, b) => cross(a, x).is_positive() && cross(x, b).is_positive(),
            Cone2::Halfplane(w) => w.dot(x).is_positive(),
            Cone2::Line(d) => cross(d, x).is_zero(),
            Cone2::Plane => true,
        }
    }

    /// A nonzero relative-interior direction, if any.
    pub fn ri_direction(&self) -> Option<RatVec> {
        match self {
            Cone2::Zero => None,
            Cone2::Ray(d) | Cone2::Line(d) => Some(d.clone()),
            Cone2::Sector(a, b) => Some(&(a + a) + &(b + b)).map(|v| v.primitive()),
            Cone2::Halfplane(w) => Some(w.clone()),
            Cone2::Plane => Some(rv![1, 0]),
        }
    }

    /// All nonempty faces.
    pub fn faces(&self) -> Vec<Cone2> {
        match self {
            Cone2::Zero => vec![Cone2::Zero],
            Cone2::Ray(_) => vec![Cone2::Zero, self.clone()],
            Cone2::Sector(a, b) => vec![Cone2::Zero, Cone2::Ray(a.clone()), Cone2::Ray(b.clone()), self.clone()],
            Cone2::Halfplane(w) => vec![Cone2::Line(rot90(w).line_normal()), self.clone()],
            Cone2::Line(_) | Cone2::Plane => vec![self.clone()],
        }
    }

    pub fn contains_cone(&self, o: &Cone2) -> bool {
        match o {
            Cone2::Zero => true,
            Cone2::Ray(d) => self.contains(d),
            Cone2::Sector(a, b) => self.contains(a) && self.contains(b),
            Cone2::Halfplane(w) => {
                let t = rot90(w);
                self.contains(&t) && self.contains(&-&t) && self.contains(w)
            }
            Cone2::Line(d) => self.contains(d) && self.contains(&-d),
            Cone2::Plane => *self == Cone2::Plane,
        }
    }

    pub fn to_polycone(&self) -> PolyCone {
        match self {
            Cone2::Zero => PolyCone::zero(2),
            Cone2::Ray(d) => PolyCone::pos_hull(2, &[d.clone()]),
            Cone2::Sector(a, b) => PolyCone::pos_hull(2, &[a.clone(), b.clone()]),
            Cone2::Halfplane(w) => {
                let t = rot90(w);
                PolyCone::pos_hull(2, &[t.clone(), -&t, w.clone()])
            }
            Cone2::Line(d) => PolyCone::pos_hull(2, &[d.clone(), -d]),
            Cone2::Plane => PolyCone::full(2),
        }
    }

    pub fn from_polycone(k: &PolyCone) -> Cone2 {
        assert_eq!(k.ambient_dim(), 2, "planar cones live in the plane");
        match (k.lineality().len(), k.rays()) {
            (0, []) => Cone2::Zero,
            (0, [r]) => Cone2::Ray(r.clone()),
            (0, [r0, r1]) => {
                if cross(r0, r1).is_positive() {
                    Cone2::Sector(r0.clone(), r1.clone())
                } else {
                    Cone2::Sector(r1.clone(), r0.clone())
                }
            }
            (1, []) => Cone2::Line(k.lineality()[0].clone()),
            (1, [r]) => Cone2::Halfplane(r.clone()),
            _ => Cone2::Plane,
        }
    }
}

impl fmt::Display for Cone2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cone2::Zero => write!(f, "{{0}}"),
            Cone2::Ray(d) => write!(f, "ray{d}"),
            Cone2::Sector(a, b) => write!(f, "sector[{a},{b}]"),
            Cone2::Halfplane(w) => write!(f, "halfplane{w}"),
            Cone2::Line(d) => write!(f, "line{d}"),
            Cone2::Plane => write!(f, "plane"),
        }
    }
}

impl fmt::Debug for Cone2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn angles() {
        let e = rv![1, 0];
        assert_eq!(ccw_cmp(&e, &rv![0, 1], &rv![-1, 0]), Ordering::Less);
        assert_eq!(ccw_cmp(&e, &rv![0, -1], &rv![-1, 0]), Ordering::Greater);
        assert!(strictly_between(&rv![0, -1], &rv![0, 1], &rv![1, 0]));
        assert!(!strictly_between(&rv![0, 1], &rv![0, -1], &rv![1, 0]));
        assert!(strictly_between(&rv![1, 0], &rv![1, -1], &rv![-1, 0]));
        assert_eq!(crossings(&rv![0, -1], &rv![0, 1]), 1);
        assert_eq!(crossings(&rv![0, 1], &rv![1, 0]), 1);
        assert_eq!(crossings(&rv![1, 0], &rv![0, 1]), 0);
    }

    #[test]
    fn cone_roundtrip() {
        let cones = [
            Cone2::Zero,
            Cone2::ray(&rv![2, 4]),
            Cone2::sector(&rv![1, 0], &rv![0, 1]),
            Cone2::Halfplane(rv![0, 1]),
            Cone2::Line(rv![1, 1]),
            Cone2::Plane,
        ];
        for c in cones {
            assert_eq!(Cone2::from_polycone(&c.to_polycone()), c);
            let fs: Vec<Cone2> = c.to_polycone().faces().iter().map(Cone2::from_polycone).collect();
            let mut a = fs.clone();
            a.sort();
            let mut b = c.faces();
            b.sort();
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn membership_matches_polycone(a in (-3i64..=3, -3i64..=3), b in (-3i64..=3, -3i64..=3), x in (-4i64..=4, -4i64..=4)) {
            let (a, b, x) = (rv![a.0, a.1], rv![b.0, b.1], rv![x.0, x.1]);
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assume!(cross(&a, &b).is_positive() || a.same_direction(&b));
            let c = Cone2::sector(&a, &b);
            let k = c.to_polycone();
            prop_assert_eq!(c.contains(&x), k.contains(&x));
            prop_assert_eq!(c.ri_contains(&x), k.ri_contains(&x));
            if let Some(d) = c.ri_direction() {
                prop_assert!(c.ri_contains(&d));
            }
        }
    }
}
