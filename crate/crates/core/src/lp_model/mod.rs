//! Linear programs `max { c0·x | Ax <= b }` and their preprocessing.
//!
//! The constraint data is always kept exactly. Normalization does not touch
//! it: it records per-row scales so that the floating point view `a_i / s_i`
//! has unit norm while certificates keep working on the original rationals.

mod preprocess;
mod text;

pub use preprocess::{
    assert_unbounded_if_box_tight, bound_polytope, box_radius, encoding_length, normalize,
    raise_rank_preserving_delta, raise_rank_preserving_subdeterminants, recession_program, BackMap,
    BoxCheck, RankRaise,
};
pub use text::{parse_lp, to_lp_string, write_matrix_csv};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{independent_rows, orthogonal_complement_exact, rank_exact, solve_exact, EchelonBasis};
use crate::num::{dot, to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LpFlags {
    pub normalized: bool,
    pub full_rank: bool,
    pub bounded: bool,
}

/// Where a constraint row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Original,
    /// `±o·x <= 0` rows added to remove a lineality space.
    Synthetic,
    /// `±a_i·x <= r‖a_i‖₁` rows of the bounding box.
    Box,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c0: Vec<Rational>,
    row_scales: Vec<f64>,
    objective_scale: f64,
    flags: LpFlags,
    kinds: Vec<RowKind>,
}

impl LinearProgram {
    /// Builds a program from exact data. Every row of `a` must be nonzero.
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, c0: Vec<Rational>) -> Result<Self> {
        let n = c0.len();
        if n == 0 {
            return Err(Error::Dimension("program has no variables".into()));
        }
        if a.len() != b.len() {
            return Err(Error::Dimension(format!("{} rows but {} right hand sides", a.len(), b.len())));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if row.iter().all(Zero::is_zero) {
                return Err(Error::ZeroRow(i));
            }
        }
        let m = a.len();
        let mut lp = Self {
            a,
            b,
            c0,
            row_scales: vec![1.0; m],
            objective_scale: 1.0,
            flags: LpFlags::default(),
            kinds: vec![RowKind::Original; m],
        };
        lp.flags.full_rank = rank_exact(&lp.a) == n;
        Ok(lp)
    }

    /// Integer convenience constructor used heavily by tests and generators.
    pub fn from_integers(a: &[Vec<i64>], b: &[i64], c0: &[i64]) -> Result<Self> {
        let r = |v: &i64| Rational::from_integer((*v).into());
        Self::new(
            a.iter().map(|row| row.iter().map(r).collect()).collect(),
            b.iter().map(r).collect(),
            c0.iter().map(r).collect(),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.c0.len()
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.a[i]
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.b
    }

    pub fn objective(&self) -> &[Rational] {
        &self.c0
    }

    pub fn flags(&self) -> LpFlags {
        self.flags
    }

    pub fn kind(&self, i: usize) -> RowKind {
        self.kinds[i]
    }

    pub fn row_scale(&self, i: usize) -> f64 {
        self.row_scales[i]
    }

    pub fn objective_scale(&self) -> f64 {
        self.objective_scale
    }

    /// Indices of rows that are not bounding box rows.
    pub fn non_box_rows(&self) -> Vec<usize> {
        (0..self.num_rows()).filter(|&i| self.kinds[i] != RowKind::Box).collect()
    }

    pub fn rows_of_kind(&self, kind: RowKind) -> Vec<usize> {
        (0..self.num_rows()).filter(|&i| self.kinds[i] == kind).collect()
    }

    /// Float view of row `i`: `a_i / s_i`.
    pub fn float_row(&self, i: usize) -> Vec<f64> {
        let s = self.row_scales[i];
        self.a[i].iter().map(|v| to_f64(v) / s).collect()
    }

    pub fn float_rhs(&self, i: usize) -> f64 {
        to_f64(&self.b[i]) / self.row_scales[i]
    }

    /// Float view of the objective: `c0 / ‖c0‖` once normalized.
    pub fn float_objective(&self) -> Vec<f64> {
        self.c0.iter().map(|v| to_f64(v) / self.objective_scale).collect()
    }

    pub fn with_objective(&self, c0: Vec<Rational>) -> Result<Self> {
        if c0.len() != self.num_vars() {
            return Err(Error::Dimension("objective length differs from variable count".into()));
        }
        let mut lp = self.clone();
        lp.c0 = c0;
        if lp.flags.normalized {
            lp.objective_scale = crate::num::norm_f64(&lp.c0.iter().map(to_f64).collect::<Vec<_>>());
            if lp.objective_scale == 0.0 {
                return Err(Error::ZeroObjective);
            }
        }
        Ok(lp)
    }

    pub(crate) fn push_row(&mut self, row: Vec<Rational>, rhs: Rational, kind: RowKind) {
        debug_assert_eq!(row.len(), self.num_vars());
        let scale = if self.flags.normalized { exact_norm_f64(&row) } else { 1.0 };
        self.a.push(row);
        self.b.push(rhs);
        self.row_scales.push(scale);
        self.kinds.push(kind);
    }

    pub(crate) fn set_scales(&mut self, rows: Vec<f64>, objective: f64) {
        self.row_scales = rows;
        self.objective_scale = objective;
        self.flags.normalized = true;
    }

    pub(crate) fn flags_mut(&mut self) -> &mut LpFlags {
        &mut self.flags
    }

    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        &self.b[i] - dot(&self.a[i], x)
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.c0, x)
    }

    /// First violated row, if any.
    pub fn first_violation(&self, x: &[Rational]) -> Option<usize> {
        (0..self.num_rows()).find(|&i| self.slack(i, x).is_negative())
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        self.first_violation(x).is_none()
    }

    pub fn tight_rows(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.num_rows()).filter(|&i| self.slack(i, x).is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.a)
    }

    /// Moves `x` inside `{a_i·x <= b_i, i in rows}` until the tight rows
    /// among `rows` have full rank, then returns that vertex with its
    /// lexicographically first basis. With `keep_objective` the moves never
    /// decrease `c0·x`.
    pub fn purify(&self, x: &[Rational], rows: &[usize], keep_objective: bool) -> Result<BasicSolution> {
        let n = self.num_vars();
        if let Some(&i) = rows.iter().find(|&&i| self.slack(i, x).is_negative()) {
            return Err(Error::Infeasible(i));
        }
        let mut x = x.to_vec();
        loop {
            let tight: Vec<usize> = rows.iter().copied().filter(|&i| self.slack(i, &x).is_zero()).collect();
            let tight_rows: Vec<Vec<Rational>> = tight.iter().map(|&i| self.a[i].clone()).collect();
            let basis_local = independent_rows(&tight_rows);
            if basis_local.len() == n {
                let basis: Vec<usize> = basis_local.iter().map(|&k| tight[k]).collect();
                return Ok(BasicSolution { point: x, basis });
            }
            let mut d = orthogonal_complement_exact(&tight_rows, n).swap_remove(0);
            if keep_objective && self.objective_value(&d).is_negative() {
                d.iter_mut().for_each(|v| *v = -v.clone());
            }
            let step = |d: &[Rational]| -> Option<Rational> {
                rows.iter()
                    .filter_map(|&j| {
                        let t = dot(&self.a[j], d);
                        t.is_positive().then(|| self.slack(j, &x) / t)
                    })
                    .min()
            };
            let theta = match step(&d) {
                Some(t) => t,
                None if !keep_objective || self.objective_value(&d).is_zero() => {
                    d.iter_mut().for_each(|v| *v = -v.clone());
                    step(&d).ok_or_else(|| Error::Precondition("rows do not have full rank".into()))?
                }
                None => return Err(Error::Precondition("objective is unbounded along a face direction".into())),
            };
            for (xi, di) in x.iter_mut().zip(&d) {
                *xi += &theta * di;
            }
        }
    }
}

pub(crate) fn exact_norm_f64(row: &[Rational]) -> f64 {
    to_f64(&crate::num::norm_sq(row)).sqrt()
}

/// A vertex together with `n` linearly independent rows tight at it.
#[derive(Debug, Clone, PartialEq)]
pub struct BasicSolution {
    pub point: Vec<Rational>,
    pub basis: Vec<usize>,
}

impl BasicSolution {
    /// The unique point where the rows in `basis` are tight.
    pub fn from_basis(lp: &LinearProgram, basis: Vec<usize>) -> Result<Self> {
        if basis.len() != lp.num_vars() {
            return Err(Error::Dimension(format!("basis has {} rows, need {}", basis.len(), lp.num_vars())));
        }
        let rows: Vec<Vec<Rational>> = basis.iter().map(|&i| lp.row(i).to_vec()).collect();
        let rhs: Vec<Rational> = basis.iter().map(|&i| lp.rhs()[i].clone()).collect();
        let point = solve_exact(&rows, &rhs).map_err(|_| Error::DependentRows)?;
        Ok(Self { point, basis })
    }

    /// Checks feasibility, tightness and independence of the basis exactly.
    pub fn verify(&self, lp: &LinearProgram) -> Result<()> {
        if self.point.len() != lp.num_vars() || self.basis.len() != lp.num_vars() {
            return Err(Error::Dimension("basic solution does not match the program".into()));
        }
        if let Some(i) = lp.first_violation(&self.point) {
            return Err(Error::Infeasible(i));
        }
        let mut ech = EchelonBasis::new();
        for &i in &self.basis {
            if !lp.slack(i, &self.point).is_zero() {
                return Err(Error::Precondition(format!("basis row {i} is not tight")));
            }
            if !ech.insert(lp.row(i)) {
                return Err(Error::DependentRows);
            }
        }
        Ok(())
    }

    pub fn value(&self, lp: &LinearProgram) -> Rational {
        lp.objective_value(&self.point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int};

    fn unit_square() -> LinearProgram {
        LinearProgram::from_integers(
            &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[1, 1, 0, 0],
            &[1, 1],
        )
        .unwrap()
    }

    #[test]
    fn rejects_zero_rows_and_ragged_input() {
        assert_eq!(LinearProgram::from_integers(&[vec![0, 0]], &[1], &[1, 0]), Err(Error::ZeroRow(0)));
        assert!(matches!(
            LinearProgram::from_integers(&[vec![1]], &[1], &[1, 0]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn basic_solution_from_basis_verifies() {
        let lp = unit_square();
        let sol = BasicSolution::from_basis(&lp, vec![0, 1]).unwrap();
        assert_eq!(sol.point, vec![int(1), int(1)]);
        sol.verify(&lp).unwrap();
        assert_eq!(sol.value(&lp), int(2));
        let bad = BasicSolution { point: vec![frac(1, 2), int(1)], basis: vec![0, 1] };
        assert!(bad.verify(&lp).is_err());
    }

    #[test]
    fn purify_moves_to_a_vertex_without_losing_value() {
        let lp = LinearProgram::from_integers(
            &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[1, 1, 0, 0],
            &[0, 1],
        )
        .unwrap();
        let x = vec![frac(1, 3), int(1)];
        let rows: Vec<usize> = (0..4).collect();
        let v = lp.purify(&x, &rows, true).unwrap();
        v.verify(&lp).unwrap();
        assert_eq!(v.value(&lp), int(1));
    }
}
