use num::{One, Zero};

use super::vec::{Rat, RatVec};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[RatVec], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(vs: &[RatVec]) -> usize {
    match vs.first() {
        None => 0,
        Some(v) => rref(vs, v.dim()).1.len(),
    }
}

/// Basis of {x : r·x = 0 for every row r}.
pub fn nullspace(rows: &[RatVec], dim: usize) -> Vec<RatVec> {
    let (m, pivots) = rref(rows, dim);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); dim];
            x[f] = Rat::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            RatVec::new(x)
        })
        .collect()
}

/// Solves `a x = b` for square or overdetermined consistent systems; None if inconsistent
/// or not uniquely solvable.
pub fn solve(a: &[RatVec], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first()?.dim();
    let aug: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut c = r.coords().to_vec();
            c.push(bi.clone());
            RatVec::new(c)
        })
        .collect();
    let (m, pivots) = rref(&aug, n + 1);
    if pivots.contains(&n) || pivots.len() < n {
        return None;
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

/// Linear subspace with a canonical basis (rows of the reduced echelon form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: usize,
    basis: Vec<RatVec>,
}

impl Subspace {
    pub fn span(ambient: usize, vs: &[RatVec]) -> Self {
        let (m, _) = rref(vs, ambient);
        Subspace { dim: ambient, basis: m.into_iter().map(RatVec::new).collect() }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { dim: ambient, basis: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        let b: Vec<RatVec> = (0..ambient).map(|i| RatVec::unit(ambient, i)).collect();
        Subspace::span(ambient, &b)
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVec] {
        &self.basis
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        let mut vs = self.basis.clone();
        vs.push(x.clone());
        rank(&vs) == self.basis.len()
    }

    pub fn orth_complement(&self) -> Subspace {
        Subspace::span(self.dim, &nullspace(&self.basis, self.dim))
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|b| self.contains(b))
    }

    /// Orthogonal projection onto this subspace.
    pub fn project(&self, x: &RatVec) -> RatVec {
        let k = self.basis.len();
        if k == 0 {
            return RatVec::zeros(self.dim);
        }
        let gram: Vec<RatVec> = self
            .basis
            .iter()
            .map(|bi| RatVec::new(self.basis.iter().map(|bj| bi.dot(bj)).collect()))
            .collect();
        let rhs: Vec<Rat> = self.basis.iter().map(|b| b.dot(x)).collect();
        let c = solve(&gram, &rhs).expect("gram matrix of a basis is invertible");
        self.basis
            .iter()
            .zip(&c)
            .fold(RatVec::zeros(self.dim), |acc, (b, ci)| &acc + &b.scale(ci))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(o.basis.iter().cloned());
        Subspace::span(self.dim, &vs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub basepoint: RatVec,
    pub directions: Subspace,
}

impl AffineSubspace {
    pub fn aff_hull(points: &[RatVec]) -> Option<Self> {
        let p0 = points.first()?.clone();
        let diffs: Vec<RatVec> = points[1..].iter().map(|p| p - &p0).collect();
        Some(AffineSubspace { directions: Subspace::span(p0.dim(), &diffs), basepoint: p0 })
    }

    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.directions.contains(&(x - &self.basepoint))
    }

    pub fn project(&self, x: &RatVec) -> RatVec {
        &self.basepoint + &self.directions.project(&(x - &self.basepoint))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::vec::ratio;
    use crate::rv;

    #[test]
    fn projections() {
        let xaxis = Subspace::span(2, &[rv![1, 0]]);
        assert_eq!(xaxis.project(&rv![3, 4]), rv![3, 0]);
        let diag = Subspace::span(2, &[rv![1, 1]]);
        assert_eq!(diag.project(&rv![1, 0]), RatVec::new(vec![ratio(1, 2), ratio(1, 2)]));
        assert_eq!(Subspace::full(2).project(&rv![5, -7]), rv![5, -7]);
    }

    #[test]
    fn complement_and_hull() {
        let xaxis = Subspace::span(2, &[rv![2, 0]]);
        assert_eq!(xaxis.orth_complement(), Subspace::span(2, &[rv![0, 1]]));
        let a = AffineSubspace::aff_hull(&[rv![0, 0], rv![1, 0], rv![0, 1]]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.directions, Subspace::full(2));
    }

    #[test]
    fn nullspace_rank() {
        let ns = nullspace(&[rv![1, 1, 0]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v.dot(&rv![1, 1, 0]).is_zero());
        }
        assert_eq!(rank(&[rv![1, 2], rv![2, 4]]), 1);
    }
}
