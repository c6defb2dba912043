//! Exact rational vectors, subspaces, a small LP solver and polyhedral cones.

mod cone;
mod linalg;
pub mod lp;
mod vec;

pub use cone::PolyCone;
pub(crate) use cone::k_subsets;
pub use linalg::{nullspace, rank, rref, solve, AffineSubspace, Subspace};
pub use vec::{parse_rat, rat, ratio, Rat, RatVec};

use num::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Coefficients λ ≥ 0 with Σλ = 1 and Σλ_i p_i = x, if x ∈ conv(points).
pub fn convex_combination(points: &[RatVec], x: &RatVec) -> Option<Vec<Rat>> {
    let d = x.dim();
    let mut a: Vec<Vec<Rat>> = (0..d).map(|j| points.iter().map(|p| p.get(j).clone()).collect()).collect();
    a.push(vec![Rat::one(); points.len()]);
    let mut b: Vec<Rat> = x.coords().to_vec();
    b.push(Rat::one());
    lp::feasible(&a, &b)
}

pub fn in_convex_hull(points: &[RatVec], x: &RatVec) -> bool {
    !points.is_empty() && convex_combination(points, x).is_some()
}

/// Relative-interior test for a cone.
pub fn ri_contains_cone(k: &PolyCone, x: &RatVec) -> Result<bool, GeomError> {
    if k.ambient_dim() != x.dim() {
        return Err(GeomError::DimensionMismatch { expected: k.ambient_dim(), got: x.dim() });
    }
    Ok(k.ri_contains(x))
}

/// Relative-interior test for conv(points), via the homogenized cone pos{(p,1)}.
pub fn ri_contains_hull(points: &[RatVec], x: &RatVec) -> Result<bool, GeomError> {
    let d = x.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(GeomError::DimensionMismatch { expected: d, got: p.dim() });
    }
    if points.is_empty() {
        return Ok(false);
    }
    let lift = |v: &RatVec| {
        let mut c = v.coords().to_vec();
        c.push(Rat::one());
        RatVec::new(c)
    };
    let hom: Vec<RatVec> = points.iter().map(lift).collect();
    Ok(PolyCone::pos_hull(d + 1, &hom).ri_contains(&lift(x)))
}

pub fn intersect_cones(a: &PolyCone, b: &PolyCone) -> PolyCone {
    a.intersect(b)
}

pub fn orth_complement(v: &Subspace) -> Subspace {
    v.orth_complement()
}

pub fn aff_hull(points: &[RatVec]) -> Option<AffineSubspace> {
    AffineSubspace::aff_hull(points)
}

pub fn project(v: &Subspace, x: &RatVec) -> RatVec {
    v.project(x)
}
