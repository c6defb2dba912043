//! Finite complete lattices with explicit order matrices.

use std::collections::HashSet;
use std::fmt::{self, Debug, Write as _};
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("no elements")]
    Empty,
    #[error("duplicate element at indices {0} and {1}")]
    DuplicateElement(usize, usize),
    #[error("order is not {0}")]
    NotAPartialOrder(&'static str),
    #[error("elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
}

#[derive(Clone)]
pub struct FiniteLattice<T> {
    elements: Vec<T>,
    leq: Vec<Vec<bool>>,
    bottom: usize,
    top: usize,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

pub fn build_lattice<T, F>(elements: Vec<T>, leq: F) -> Result<FiniteLattice<T>, LatticeError>
where
    T: Eq + Hash + Clone,
    F: Fn(&T, &T) -> bool,
{
    let n = elements.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let mut seen = std::collections::HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        if let Some(j) = seen.insert(e, i) {
            return Err(LatticeError::DuplicateElement(j, i));
        }
    }
    let m: Vec<Vec<bool>> = elements.iter().map(|a| elements.iter().map(|b| leq(a, b)).collect()).collect();
    for i in 0..n {
        if !m[i][i] {
            return Err(LatticeError::NotAPartialOrder("reflexive"));
        }
        for j in 0..n {
            if i != j && m[i][j] && m[j][i] {
                return Err(LatticeError::NotAPartialOrder("antisymmetric"));
            }
            for k in 0..n {
                if m[i][j] && m[j][k] && !m[i][k] {
                    return Err(LatticeError::NotAPartialOrder("transitive"));
                }
            }
        }
    }
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a..n {
            let lower: Vec<usize> = (0..n).filter(|&z| m[z][a] && m[z][b]).collect();
            let g = lower
                .iter()
                .copied()
                .find(|&z| lower.iter().all(|&y| m[y][z]))
                .ok_or(LatticeError::NotALattice(a, b, "meet"))?;
            let upper: Vec<usize> = (0..n).filter(|&z| m[a][z] && m[b][z]).collect();
            let l = upper
                .iter()
                .copied()
                .find(|&z| upper.iter().all(|&y| m[z][y]))
                .ok_or(LatticeError::NotALattice(a, b, "join"))?;
            meet[a][b] = g;
            meet[b][a] = g;
            join[a][b] = l;
            join[b][a] = l;
        }
    }
    let bottom = (0..n).find(|&z| (0..n).all(|y| m[z][y])).ok_or(LatticeError::NotALattice(0, 0, "bottom"))?;
    let top = (0..n).find(|&z| (0..n).all(|y| m[y][z])).ok_or(LatticeError::NotALattice(0, 0, "top"))?;
    Ok(FiniteLattice { elements, leq: m, bottom, top, meet, join })
}

impl<T: Eq + Hash + Clone> FiniteLattice<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b] && (0..self.len()).all(|z| z == a || z == b || !(self.leq[a][z] && self.leq[z][b]))
    }

    /// Elements other than bottom with nothing strictly between them and bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| x != self.bottom && self.covers(self.bottom, x)).collect()
    }

    /// Elements other than top with nothing strictly between them and top.
    pub fn coatoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| x != self.top && self.covers(x, self.top)).collect()
    }

    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, s: &[usize]) -> usize {
        s.iter().fold(self.top, |acc, &x| self.meet[acc][x])
    }

    pub fn join(&self, s: &[usize]) -> usize {
        s.iter().fold(self.bottom, |acc, &x| self.join[acc][x])
    }

    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// x ≤ z ⟹ x ∨ (y ∧ z) = (x ∨ y) ∧ z for all triples.
    pub fn is_modular(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|z| {
                !self.leq[x][z] || (0..n).all(|y| self.join[x][self.meet[y][z]] == self.meet[self.join[x][y]][z])
            })
        })
    }

    /// Hasse diagram in DOT, nodes ranked by `rank`.
    pub fn to_dot(&self, name: &str, label: impl Fn(&T) -> String, rank: impl Fn(&T) -> i64) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", label(e).replace('"', "'"));
        }
        let mut ranks: Vec<i64> = self.elements.iter().map(&rank).collect();
        ranks.sort();
        ranks.dedup();
        for r in ranks {
            let ids: Vec<String> =
                (0..self.len()).filter(|&i| rank(&self.elements[i]) == r).map(|i| format!("n{i}")).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join("; "));
        }
        for (a, b) in self.hasse_edges() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

impl<T: Debug> Debug for FiniteLattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.elements)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Isotone,
    Antitone,
}

/// A map between the index sets of two lattices. `None` marks a source element whose
/// image is not an element of the target.
pub struct LatticeMap<'a, S, T> {
    pub source: &'a FiniteLattice<S>,
    pub target: &'a FiniteLattice<T>,
    pub mapping: Vec<Option<usize>>,
    pub direction: Direction,
}

impl<'a, S: Eq + Hash + Clone, T: Eq + Hash + Clone> LatticeMap<'a, S, T> {
    pub fn from_fn(
        source: &'a FiniteLattice<S>,
        target: &'a FiniteLattice<T>,
        direction: Direction,
        f: impl Fn(&S) -> Option<T>,
    ) -> Self {
        let mapping = source.elements().iter().map(|e| f(e).and_then(|t| target.index_of(&t))).collect();
        LatticeMap { source, target, mapping, direction }
    }

    /// The inverse map; only meaningful when the map is bijective.
    pub fn inverse(&self) -> Option<LatticeMap<'a, T, S>> {
        let mut inv = vec![None; self.target.len()];
        for (i, m) in self.mapping.iter().enumerate() {
            let j = (*m)?;
            if inv[j].is_some() {
                return None;
            }
            inv[j] = Some(i);
        }
        if inv.iter().any(|x| x.is_none()) {
            return None;
        }
        Some(LatticeMap { source: self.target, target: self.source, mapping: inv, direction: self.direction })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub direction: Direction,
    pub total: bool,
    pub bijective: bool,
    pub order_preserving: bool,
    pub inverse_preserving: bool,
    pub source_size: usize,
    pub target_size: usize,
}

impl IsoReport {
    pub fn passes(&self) -> bool {
        self.total && self.bijective && self.order_preserving && self.inverse_preserving
    }
}

pub fn verify_isomorphism<S: Eq + Hash + Clone, T: Eq + Hash + Clone>(m: &LatticeMap<'_, S, T>) -> IsoReport {
    let total = m.mapping.iter().all(|x| x.is_some());
    let images: HashSet<usize> = m.mapping.iter().flatten().copied().collect();
    let bijective = total && images.len() == m.source.len() && images.len() == m.target.len();
    let n = m.source.len();
    let rel = |a: usize, b: usize| match m.direction {
        Direction::Isotone => m.target.leq(a, b),
        Direction::Antitone => m.target.leq(b, a),
    };
    let mut order_preserving = true;
    let mut inverse_preserving = true;
    for a in 0..n {
        for b in 0..n {
            let (Some(fa), Some(fb)) = (m.mapping[a], m.mapping[b]) else {
                order_preserving = false;
                inverse_preserving = false;
                continue;
            };
            let src = m.source.leq(a, b);
            let tgt = rel(fa, fb);
            if src && !tgt {
                order_preserving = false;
            }
            if tgt && !src {
                inverse_preserving = false;
            }
        }
    }
    IsoReport {
        direction: m.direction,
        total,
        bijective,
        order_preserving,
        inverse_preserving,
        source_size: m.source.len(),
        target_size: m.target.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn powerset(n: u32) -> FiniteLattice<BTreeSet<u32>> {
        let els: Vec<BTreeSet<u32>> =
            (0..1u32 << n).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect();
        build_lattice(els, |a, b| a.is_subset(b)).unwrap()
    }

    #[test]
    fn boolean_lattice() {
        let l = powerset(2);
        assert_eq!(l.len(), 4);
        assert!(l.element(l.bottom()).is_empty());
        assert_eq!(l.element(l.top()).len(), 2);
        assert_eq!(l.atoms().len(), 2);
        assert_eq!(l.coatoms().len(), 2);
        assert_eq!(l.hasse_edges().len(), 4);
        assert_eq!(l.meet(&[]), l.top());
        assert_eq!(l.join(&[]), l.bottom());
        assert_eq!(l.meet(&[l.top()]), l.top());
        assert!(l.is_modular());
    }

    #[test]
    fn not_a_lattice() {
        let els: Vec<BTreeSet<u32>> = vec![BTreeSet::new(), [0].into(), [1].into()];
        assert!(matches!(build_lattice(els, |a, b| a.is_subset(b)), Err(LatticeError::NotALattice(..))));
        let dup: Vec<BTreeSet<u32>> = vec![BTreeSet::new(), BTreeSet::new()];
        assert!(matches!(build_lattice(dup, |a, b| a.is_subset(b)), Err(LatticeError::DuplicateElement(0, 1))));
    }

    #[test]
    fn two_chain() {
        let l = build_lattice(vec![0u8, 1], |a, b| a <= b).unwrap();
        assert_eq!(l.hasse_edges(), vec![(0, 1)]);
        // the top covers the bottom, so it is an atom; dually the bottom is a coatom
        assert_eq!(l.atoms(), vec![1]);
        assert_eq!(l.coatoms(), vec![0]);
    }

    #[test]
    fn pentagon_not_modular() {
        // 0 < a < c < 1, 0 < b < 1
        let leq = |x: &u8, y: &u8| x == y || *x == 0 || *y == 4 || (*x == 1 && *y == 2);
        let l = build_lattice(vec![0u8, 1, 2, 3, 4], leq).unwrap();
        assert!(!l.is_modular());
    }

    #[test]
    fn isomorphism_identity_and_antitone() {
        let l = powerset(2);
        let id = LatticeMap::from_fn(&l, &l, Direction::Isotone, |s| Some(s.clone()));
        assert!(verify_isomorphism(&id).passes());
        let comp = LatticeMap::from_fn(&l, &l, Direction::Antitone, |s| {
            Some((0..2).filter(|i| !s.contains(i)).collect())
        });
        assert!(verify_isomorphism(&comp).passes());
        assert!(verify_isomorphism(&comp.inverse().unwrap()).passes());
        let wrong = LatticeMap::from_fn(&l, &l, Direction::Isotone, |s| {
            Some((0..2).filter(|i| !s.contains(i)).collect())
        });
        assert!(!verify_isomorphism(&wrong).passes());
    }

    #[test]
    fn dot_output() {
        let l = powerset(2);
        let dot = l.to_dot("b2", |s| format!("{s:?}"), |s| s.len() as i64);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.starts_with("digraph"));
    }
}
