//! Phase 1: finding a starting vertex.
//!
//! The auxiliary program over `(x, y) ∈ R^{n+m}` is
//!
//! ```text
//! max -Σ y   s.t.   A x - y <= b,   -y <= 0
//! ```
//!
//! whose constraint matrix `[[A, -I], [0, -I]]` has full column rank and the
//! same subdeterminants as `A`. A vertex is known up front: fix `x` by `n`
//! independent rows of `A` and set `y = max(Ax - b, 0)`. Its optimum has
//! value `0` exactly when `Ax <= b` is feasible.

use num_traits::{One, Signed, Zero};

use crate::driver::is_optimal;
use crate::error::{Error, Result};
use crate::linalg::{independent_rows, solve_exact};
use crate::lp_model::{BasicSolution, LinearProgram};
use crate::num::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct Phase1Problem {
    pub lp: LinearProgram,
    pub initial: BasicSolution,
    /// Rows of `A` that fix `x` at the initial vertex.
    pub anchor_rows: Vec<usize>,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Phase1Result {
    Feasible(BasicSolution),
    /// The optimal total violation, which is positive.
    Infeasible { value: Rational },
}

/// `[[A, -I], [0, -I]]` for any field-like entry type.
pub fn phase1_matrix<T: Clone + Zero + One + std::ops::Neg<Output = T>>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(2 * m);
    for (i, row) in a.iter().enumerate() {
        let mut r = row.clone();
        r.extend((0..m).map(|k| if k == i { -T::one() } else { T::zero() }));
        out.push(r);
    }
    for i in 0..m {
        let mut r = vec![T::zero(); n];
        r.extend((0..m).map(|k| if k == i { -T::one() } else { T::zero() }));
        out.push(r);
    }
    out
}

/// Builds the auxiliary program of `lp` and its initial vertex. `lp` must
/// have full column rank.
pub fn build_phase1(lp: &LinearProgram) -> Result<Phase1Problem> {
    let (m, n) = (lp.num_rows(), lp.num_vars());
    let anchors = independent_rows(lp.rows());
    if anchors.len() < n {
        return Err(Error::RankDeficient { rank: anchors.len(), required: n });
    }
    let sub: Vec<Vec<Rational>> = anchors.iter().map(|&i| lp.row(i).to_vec()).collect();
    let rhs: Vec<Rational> = anchors.iter().map(|&i| lp.rhs()[i].clone()).collect();
    let x = solve_exact(&sub, &rhs)?;
    let y: Vec<Rational> = (0..m)
        .map(|i| {
            let s = lp.slack(i, &x);
            if s.is_negative() {
                -s
            } else {
                Rational::zero()
            }
        })
        .collect();

    let a = phase1_matrix(lp.rows());
    let mut b = lp.rhs().to_vec();
    b.extend((0..m).map(|_| Rational::zero()));
    let mut c = vec![Rational::zero(); n];
    c.extend((0..m).map(|_| -Rational::one()));
    let aux = LinearProgram::new(a, b, c)?;

    let mut basis: Vec<usize> = anchors.clone();
    basis.extend(anchors.iter().map(|&i| m + i));
    for k in (0..m).filter(|k| !anchors.contains(k)) {
        basis.push(if y[k].is_positive() { k } else { m + k });
    }
    let mut point = x;
    point.extend(y);
    let initial = BasicSolution { point, basis };
    initial.verify(&aux)?;
    Ok(Phase1Problem { lp: aux, initial, anchor_rows: anchors, m, n })
}

/// Reads the result off an optimal vertex `sol` of the auxiliary program.
///
/// `certified_on` is the program whose optimality test `sol` must pass (the
/// auxiliary program, possibly with box rows). A feasible `x` is moved to a
/// vertex of `lp`.
pub fn extract_bfs(
    sol: &BasicSolution,
    certified_on: &LinearProgram,
    problem: &Phase1Problem,
    lp: &LinearProgram,
) -> Result<Phase1Result> {
    if !is_optimal(certified_on, sol)? {
        return Err(Error::Uncertified);
    }
    let n = problem.n;
    let violation: Rational = sol.point[n..].iter().sum();
    if violation.is_positive() {
        return Ok(Phase1Result::Infeasible { value: violation });
    }
    let x = &sol.point[..n];
    if let Some(i) = lp.first_violation(x) {
        return Err(Error::Infeasible(i));
    }
    let rows: Vec<usize> = (0..lp.num_rows()).collect();
    Ok(Phase1Result::Feasible(lp.purify(x, &rows, false)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{delta_of_rows, max_subdeterminant};
    use crate::linalg::rank_exact;
    use crate::num::int;

    #[test]
    fn matrix_layout() {
        let a = vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]];
        let b = phase1_matrix(&a);
        assert_eq!(b.len(), 6);
        assert_eq!(b[1], vec![3.0, 4.0, 0.0, -1.0, 0.0]);
        assert_eq!(b[5], vec![0.0, 0.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn initial_vertex_of_infeasible_interval() {
        // x <= 0, -x <= -1, x <= 5
        let lp = LinearProgram::from_integers(&[vec![1], vec![-1], vec![1]], &[0, -1, 5], &[1]).unwrap();
        let p = build_phase1(&lp).unwrap();
        assert_eq!(p.anchor_rows, vec![0]);
        // x = 0, violations (0, 1, 0)
        assert_eq!(p.initial.point, vec![int(0), int(0), int(1), int(0)]);
        assert_eq!(p.initial.basis, vec![0, 3, 1, 5]);
        assert_eq!(rank_exact(p.lp.rows()), 4);
    }

    #[test]
    fn subdeterminants_and_delta_bound() {
        let a: Vec<Vec<Rational>> =
            [[2, 1], [1, -1], [-1, 3]].iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        let b = phase1_matrix(&a);
        assert_eq!(max_subdeterminant(&b).unwrap().max(), max_subdeterminant(&a).unwrap().max());
        let (da, db) = (delta_of_rows(&a[..2]).unwrap(), delta_of_rows(&b[..5]).unwrap());
        assert!(da > 0.0 && db > 0.0);
    }

    #[test]
    fn extraction_rejects_uncertified_vertices() {
        let lp = LinearProgram::from_integers(&[vec![1], vec![-1], vec![1]], &[0, -1, 5], &[1]).unwrap();
        let p = build_phase1(&lp).unwrap();
        // the initial vertex (x = 0, y2 = 1) is optimal: the total violation is 1
        match extract_bfs(&p.initial, &p.lp, &p, &lp).unwrap() {
            Phase1Result::Infeasible { value } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
        let feasible = LinearProgram::from_integers(&[vec![1], vec![-1]], &[3, 1], &[1]).unwrap();
        let q = build_phase1(&feasible).unwrap();
        match extract_bfs(&q.initial, &q.lp, &q, &feasible).unwrap() {
            Phase1Result::Feasible(v) => assert_eq!(v.point, vec![int(3)]),
            other => panic!("{other:?}"),
        }
    }
}
