//! Dense two-phase simplex over the rationals, Bland's rule.
//! Solves: maximize c·x subject to A x = b, x ≥ 0.

use num::{Signed, Zero};

use super::vec::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { value: Rat, x: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    obj: Vec<Rat>,
    basis: Vec<usize>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Runs to optimality over columns `< ncols`. Returns false if unbounded.
    fn run(&mut self, ncols: usize) -> bool {
        loop {
            let Some(c) = (0..ncols).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let q = &row[self.rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, bq)) => q < *bq || (q == *bq && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, q));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpResult {
    let n = c.len();
    let m = a.len();
    let rhs = n + m;
    let mut rows = Vec::with_capacity(m);
    for (ai, bi) in a.iter().zip(b) {
        let neg = bi.is_negative();
        let mut row: Vec<Rat> = ai.iter().map(|x| if neg { -x } else { x.clone() }).collect();
        row.resize(n + m + 1, Rat::zero());
        row[rhs] = if neg { -bi } else { bi.clone() };
        rows.push(row);
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[n + i] = Rat::from_integer(1.into());
    }
    // phase 1: maximize -sum(artificials)
    let mut obj = vec![Rat::zero(); n + m + 1];
    for row in &rows {
        for (o, x) in obj.iter_mut().zip(row) {
            *o -= x;
        }
    }
    for j in n..n + m {
        obj[j] = Rat::zero();
    }
    let mut t = Tableau { rows, obj, basis: (n..n + m).collect(), rhs };
    t.run(n + m);
    if !t.obj[rhs].is_zero() {
        return LpResult::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let mut obj = vec![Rat::zero(); n + m + 1];
    for j in 0..n {
        obj[j] = -c[j].clone();
    }
    for (row, &bj) in t.rows.iter().zip(&t.basis) {
        if !obj[bj].is_zero() {
            let f = obj[bj].clone();
            for (o, x) in obj.iter_mut().zip(row) {
                *o -= &f * x;
            }
        }
    }
    t.obj = obj;
    if !t.run(n) {
        return LpResult::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &bj) in t.rows.iter().zip(&t.basis) {
        x[bj] = row[rhs].clone();
    }
    LpResult::Optimal { value: t.obj[rhs].clone(), x }
}

pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, |r| r.len());
    match maximize(&vec![Rat::zero(); n], a, b) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::vec::{rat, ratio};

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn small_lp() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let res = maximize(&r(&[1, 1, 0, 0]), &[r(&[1, 2, 1, 0]), r(&[3, 1, 0, 1])], &r(&[4, 6]));
        match res {
            LpResult::Optimal { value, .. } => assert_eq!(value, ratio(14, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&r(&[1]), &[r(&[1])], &r(&[-1])), LpResult::Infeasible);
        assert_eq!(maximize(&r(&[1, 0]), &[r(&[1, -1])], &r(&[0])), LpResult::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let res = maximize(&r(&[1, 1]), &[r(&[1, 1]), r(&[2, 2])], &r(&[1, 2]));
        assert!(matches!(res, LpResult::Optimal { value, .. } if value == rat(1)));
    }
}
