//! Exact two-phase simplex over arbitrary-precision rationals.
//!
//! Solves min c·x subject to A·x = b, x ≥ 0 with every pivot carried out
//! in exact rational arithmetic.  Entering and leaving variables follow
//! Bland's rule (smallest eligible index), which guarantees termination
//! and makes the returned basic solution deterministic — the projectivity
//! certificate and the grading vector derived from it are therefore
//! byte-stable across runs.
//!
//! Problem sizes here are tiny (tens of variables), so a dense tableau is
//! the right tool; no sparsity or numerical pivoting tricks are wanted.

use crate::poly::QRat;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<QRat>, objective: QRat },
    Infeasible,
    Unbounded,
}

/// Minimizes c·x over A·x = b, x ≥ 0.
pub fn solve_standard(a: &[Vec<QRat>], b: &[QRat], c: &[QRat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    for row in a {
        assert_eq!(row.len(), n, "ragged constraint matrix");
    }
    assert_eq!(b.len(), m, "rhs length mismatch");

    // Tableau columns: 0..n structural, n..n+m artificial, last = rhs.
    let total = n + m;
    let mut tab: Vec<Vec<QRat>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<QRat> = Vec::with_capacity(total + 1);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for j in 0..m {
            r.push(if j == i { QRat::one() } else { QRat::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        tab.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the sum of artificials.  Reduced costs for the
    // artificial basis are the negated column sums of the structural part.
    let mut obj: Vec<QRat> = vec![QRat::zero(); total + 1];
    for j in 0..=total {
        let mut s = QRat::zero();
        for row in &tab {
            s += &row[j];
        }
        if j < n || j == total {
            obj[j] = -s;
        }
    }
    if run_simplex(&mut tab, &mut basis, &mut obj, n).is_none() {
        // Phase 1 is bounded below by 0; unboundedness cannot occur.
        unreachable!("phase 1 simplex cannot be unbounded");
    }
    let phase1_value = -obj[total].clone();
    if phase1_value > QRat::zero() {
        return LpOutcome::Infeasible;
    }

    // Drive leftover artificials out of the basis (degenerate rows) or drop
    // redundant rows entirely.
    let mut drop_rows: Vec<usize> = Vec::new();
    for i in 0..tab.len() {
        if basis[i] < n {
            continue;
        }
        match (0..n).find(|&j| !tab[i][j].is_zero()) {
            Some(j) => pivot(&mut tab, &mut obj, &mut basis, i, j),
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        tab.remove(i);
        basis.remove(i);
    }

    // Phase 2: rebuild reduced costs for the real objective.
    let mut obj2: Vec<QRat> = vec![QRat::zero(); total + 1];
    for j in 0..n {
        obj2[j] = c[j].clone();
    }
    for (i, &bv) in basis.iter().enumerate() {
        debug_assert!(bv < n, "artificials were eliminated");
        let cost = c[bv].clone();
        if cost.is_zero() {
            continue;
        }
        for j in 0..=total {
            let delta = &cost * &tab[i][j];
            obj2[j] -= delta;
        }
    }
    match run_simplex(&mut tab, &mut basis, &mut obj2, n) {
        None => LpOutcome::Unbounded,
        Some(()) => {
            let mut x = vec![QRat::zero(); n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    x[bv] = tab[i][total].clone();
                }
            }
            let objective = -obj2[total].clone();
            LpOutcome::Optimal { x, objective }
        }
    }
}

/// Runs the simplex loop restricted to the first `allowed` columns.
/// Returns `None` on unboundedness.
fn run_simplex(
    tab: &mut Vec<Vec<QRat>>,
    basis: &mut [usize],
    obj: &mut Vec<QRat>,
    allowed: usize,
) -> Option<()> {
    let total = obj.len() - 1;
    loop {
        // Bland: entering column is the smallest index with negative
        // reduced cost.  Artificial columns stay eligible during phase 1
        // via `allowed` = n there too; they are simply never negative.
        let entering = (0..allowed).find(|&j| obj[j].is_negative());
        let j = match entering {
            None => return Some(()),
            Some(j) => j,
        };
        let mut leaving: Option<(usize, QRat)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[j] <= QRat::zero() {
                continue;
            }
            let ratio = &row[total] / &row[j];
            let better = match &leaving {
                None => true,
                Some((cur, best)) => {
                    ratio < *best || (ratio == *best && basis[i] < basis[*cur])
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let (i, _) = leaving?;
        pivot(tab, obj, basis, i, j);
    }
}

fn pivot(
    tab: &mut [Vec<QRat>],
    obj: &mut [QRat],
    basis: &mut [usize],
    pivot_row: usize,
    pivot_col: usize,
) {
    let p = tab[pivot_row][pivot_col].clone();
    debug_assert!(!p.is_zero());
    let inv = QRat::one() / p;
    for v in tab[pivot_row].iter_mut() {
        *v = &*v * &inv;
    }
    let prow = tab[pivot_row].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pivot_row {
            continue;
        }
        let f = row[pivot_col].clone();
        if f.is_zero() {
            continue;
        }
        for (v, pv) in row.iter_mut().zip(&prow) {
            *v = &*v - &(&f * pv);
        }
    }
    let f = obj[pivot_col].clone();
    if !f.is_zero() {
        for (v, pv) in obj.iter_mut().zip(&prow) {
            *v = &*v - &(&f * pv);
        }
    }
    basis[pivot_row] = pivot_col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qrat;

    fn q(n: i64) -> QRat {
        qrat(n, 1)
    }

    #[test]
    fn solves_a_small_program() {
        // min x1 + x2  s.t.  x1 + 2 x2 = 4, x1, x2 ≥ 0 → x = (0, 2).
        let a = vec![vec![q(1), q(2)]];
        let b = vec![q(4)];
        let c = vec![q(1), q(1)];
        match solve_standard(&a, &b, &c) {
            LpOutcome::Optimal { x, objective } => {
                assert_eq!(x, vec![q(0), q(2)]);
                assert_eq!(objective, q(2));
            }
            other => panic!("unexpected outcome {:?}", other),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x1 = 1 and x1 = 2 cannot both hold.
        let a = vec![vec![q(1)], vec![q(1)]];
        let b = vec![q(1), q(2)];
        let c = vec![q(0)];
        assert_eq!(solve_standard(&a, &b, &c), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // min −x1 with x1 − x2 = 0: x1 can grow without bound.
        let a = vec![vec![q(1), q(-1)]];
        let b = vec![q(0)];
        let c = vec![q(-1), q(0)];
        assert_eq!(solve_standard(&a, &b, &c), LpOutcome::Unbounded);
    }

    #[test]
    fn handles_negative_rhs_and_redundant_rows() {
        // Same plane written twice with flipped signs.
        let a = vec![vec![q(-1), q(-2)], vec![q(1), q(2)]];
        let b = vec![q(-4), q(4)];
        let c = vec![q(3), q(1)];
        match solve_standard(&a, &b, &c) {
            LpOutcome::Optimal { x, objective } => {
                assert_eq!(x, vec![q(0), q(2)]);
                assert_eq!(objective, q(2));
            }
            other => panic!("unexpected outcome {:?}", other),
        }
    }

    #[test]
    fn exact_fractions_survive() {
        // min x1 s.t. 3 x1 = 1 → x1 = 1/3 exactly.
        let a = vec![vec![q(3)]];
        let b = vec![q(1)];
        let c = vec![q(1)];
        match solve_standard(&a, &b, &c) {
            LpOutcome::Optimal { x, .. } => assert_eq!(x[0], qrat(1, 3)),
            other => panic!("unexpected outcome {:?}", other),
        }
    }
}
