//! The shadow vertex walk.
//!
//! A [`Tableau`] holds a basis `B` (one row per position), the exact inverse
//! `M = A_B⁻¹` whose column `p` pairs with position `p`, the vertex and its
//! slacks. Moving away from the basis row at position `p` follows the edge
//! `d_p = -M[:,p]`, and `a_j·d_p` for a non-basis row `j` is computed from the
//! sparse row on demand, so the full `m×n` tableau is never stored.
//!
//! Degeneracy is resolved by the symbolic perturbation `b_j + ε^{π(j)}`:
//! ratio test ties on the real part are broken by comparing the perturbed
//! slacks coefficient by coefficient in increasing exponent order. The
//! exponent order `π` is reset at the start of every walk so that the
//! starting basis is feasible for the perturbed program.

use std::cmp::Ordering;
use std::io::Write;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::inverse_exact;
use crate::lp_model::{BasicSolution, LinearProgram};
use crate::num::{dot, to_f64, Rational};

/// How edge slopes are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pricing {
    /// Floating point with error bounds; exact fallback on near ties.
    Float,
    /// Exact rational arithmetic throughout.
    Exact,
}

#[derive(Debug, Clone)]
pub struct WalkObjectives {
    c: Vec<Rational>,
    w: Vec<Rational>,
    c_f64: Vec<f64>,
    w_f64: Vec<f64>,
    pricing: Pricing,
}

impl WalkObjectives {
    pub fn new(c: Vec<Rational>, w: Vec<Rational>, pricing: Pricing) -> Self {
        let c_f64 = c.iter().map(to_f64).collect();
        let w_f64 = w.iter().map(to_f64).collect();
        Self { c, w, c_f64, w_f64, pricing }
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    pub fn w(&self) -> &[Rational] {
        &self.w
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub entering_row: usize,
    pub leaving_row: usize,
    /// `w·d / c·d` of the edge direction `d`.
    pub slope: Rational,
    /// `c·x` at the vertex reached by this pivot.
    pub c_value: Rational,
    /// Step length along the edge; zero for a degenerate pivot.
    pub step: Rational,
    /// Basis after the pivot, by position.
    pub basis: Vec<usize>,
    pub vertex: Vec<Rational>,
}

impl EdgeRecord {
    pub fn is_degenerate(&self) -> bool {
        self.step.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ShadowPath {
    pub start_basis: Vec<usize>,
    pub start_vertex: Vec<Rational>,
    /// Rows held tight for the whole walk.
    pub locked_rows: Vec<usize>,
    /// `π(j)` for every row `j`, in `1..=m`.
    pub order: Vec<usize>,
    pub steps: Vec<EdgeRecord>,
}

impl ShadowPath {
    pub fn pivots(&self) -> usize {
        self.steps.len()
    }

    /// CSV with columns `pivot_index,entering_row,leaving_row,slope,c_value`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["pivot_index", "entering_row", "leaving_row", "slope", "c_value"])?;
        for (i, s) in self.steps.iter().enumerate() {
            w.write_record([
                i.to_string(),
                s.entering_row.to_string(),
                s.leaving_row.to_string(),
                format!("{:e}", to_f64(&s.slope)),
                format!("{:e}", to_f64(&s.c_value)),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PivotOutcome {
    Step(EdgeRecord),
    AtOptimum,
}

pub struct Tableau<'a> {
    lp: &'a LinearProgram,
    sparse: Vec<Vec<(usize, Rational)>>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    locked: Vec<bool>,
    inv: Vec<Vec<Rational>>,
    x: Vec<Rational>,
    slack: Vec<Rational>,
    order: Vec<usize>,
    pivots: u64,
    ops: u64,
}

struct Candidate {
    position: usize,
    cd_f: f64,
    wd_f: f64,
    /// Relative error bound of `wd_f / cd_f`; `None` if the float value is unusable.
    rel_err: Option<f64>,
}

const EPS: f64 = f64::EPSILON;

impl<'a> Tableau<'a> {
    pub fn new(lp: &'a LinearProgram, start: &BasicSolution) -> Result<Self> {
        start.verify(lp)?;
        let n = lp.num_vars();
        let m = lp.num_rows();
        let rows: Vec<Vec<Rational>> = start.basis.iter().map(|&i| lp.row(i).to_vec()).collect();
        let inv = inverse_exact(&rows)?;
        let sparse = lp
            .rows()
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect())
            .collect();
        let mut position = vec![None; m];
        for (p, &r) in start.basis.iter().enumerate() {
            position[r] = Some(p);
        }
        let slack = (0..m).map(|j| lp.slack(j, &start.point)).collect();
        let mut tab = Self {
            lp,
            sparse,
            basis: start.basis.clone(),
            position,
            locked: vec![false; n],
            inv,
            x: start.point.clone(),
            slack,
            order: vec![0; m],
            pivots: 0,
            ops: 0,
        };
        tab.reset_order();
        Ok(tab)
    }

    pub fn lp(&self) -> &LinearProgram {
        self.lp
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn point(&self) -> &[Rational] {
        &self.x
    }

    pub fn solution(&self) -> BasicSolution {
        BasicSolution { point: self.x.clone(), basis: self.basis.clone() }
    }

    pub fn pivots(&self) -> u64 {
        self.pivots
    }

    /// Rational multiply-adds spent so far.
    pub fn operations(&self) -> u64 {
        self.ops
    }

    pub fn inverse(&self) -> &[Vec<Rational>] {
        &self.inv
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_locked(&self, position: usize) -> bool {
        self.locked[position]
    }

    pub fn locked_rows(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&p| self.locked[p]).map(|p| self.basis[p]).collect()
    }

    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&p| !self.locked[p]).collect()
    }

    /// Keeps the basis row `row` tight for all later pivots.
    pub fn lock_row(&mut self, row: usize) -> Result<()> {
        let p = self.position[row].ok_or_else(|| Error::Precondition(format!("row {row} is not in the basis")))?;
        self.locked[p] = true;
        Ok(())
    }

    /// Non-basis rows get exponents `1..=m-n` by index, basis rows the rest.
    pub fn reset_order(&mut self) {
        let mut next = 1;
        for j in 0..self.lp.num_rows() {
            if self.position[j].is_none() {
                self.order[j] = next;
                next += 1;
            }
        }
        let mut basic: Vec<usize> = self.basis.clone();
        basic.sort_unstable();
        for j in basic {
            self.order[j] = next;
            next += 1;
        }
    }

    /// `a_j · M[:,q]` for every position `q`.
    fn row_times_inverse(&mut self, j: usize) -> Vec<Rational> {
        let n = self.basis.len();
        let mut out = vec![Rational::zero(); n];
        for (i, v) in &self.sparse[j] {
            for (o, m) in out.iter_mut().zip(&self.inv[*i]) {
                if !m.is_zero() {
                    *o += v * m;
                }
            }
        }
        self.ops += (self.sparse[j].len() * n) as u64;
        out
    }

    /// `a_j · d_p = -a_j · M[:,p]`.
    fn edge_dot(&self, j: usize, p: usize) -> Rational {
        let mut acc = Rational::zero();
        for (i, v) in &self.sparse[j] {
            let m = &self.inv[*i][p];
            if !m.is_zero() {
                acc -= v * m;
            }
        }
        acc
    }

    fn direction_dot(&self, obj: &[Rational], p: usize) -> Rational {
        let mut acc = Rational::zero();
        for (o, row) in obj.iter().zip(&self.inv) {
            if !o.is_zero() && !row[p].is_zero() {
                acc -= o * &row[p];
            }
        }
        acc
    }

    /// Perturbed slack of non-basis row `j` as coefficients by exponent.
    fn lex_slack(&mut self, j: usize) -> Vec<Rational> {
        let m = self.lp.num_rows();
        let mut v = vec![Rational::zero(); m + 1];
        v[0] = self.slack[j].clone();
        v[self.order[j]] += Rational::from_integer(1.into());
        let t = self.row_times_inverse(j);
        for (q, tq) in t.into_iter().enumerate() {
            v[self.order[self.basis[q]]] -= tq;
        }
        v
    }

    /// Lexicographic minimum ratio test along `d_p`; returns the entering row
    /// and the real step length.
    fn ratio_test(&mut self, p: usize) -> Result<(usize, Rational)> {
        let m = self.lp.num_rows();
        let mut best: Option<(Rational, Vec<usize>)> = None;
        let mut ts: Vec<Option<Rational>> = vec![None; m];
        for j in 0..m {
            if self.position[j].is_some() {
                continue;
            }
            let t = self.edge_dot(j, p);
            if !t.is_positive() {
                continue;
            }
            let ratio = &self.slack[j] / &t;
            ts[j] = Some(t);
            match &mut best {
                None => best = Some((ratio, vec![j])),
                Some((r, rows)) => match ratio.cmp(r) {
                    Ordering::Less => best = Some((ratio, vec![j])),
                    Ordering::Equal => rows.push(j),
                    Ordering::Greater => {}
                },
            }
        }
        self.ops += self.sparse.iter().map(|r| r.len() as u64).sum::<u64>();
        let (theta, tied) = best.ok_or(Error::UnboundedEdge(p))?;
        if tied.len() == 1 {
            return Ok((tied[0], theta));
        }
        let mut winner: Option<(usize, Vec<Rational>)> = None;
        for j in tied {
            let t = ts[j].clone().unwrap();
            let scaled: Vec<Rational> = self.lex_slack(j).into_iter().map(|v| v / &t).collect();
            let better = match &winner {
                None => true,
                Some((_, w)) => scaled.cmp(w) == Ordering::Less,
            };
            if better {
                winner = Some((j, scaled));
            }
        }
        Ok((winner.unwrap().0, theta))
    }

    fn float_candidate(&self, obj: &WalkObjectives, p: usize) -> (f64, f64, f64, f64) {
        let mut cd = 0.0;
        let mut wd = 0.0;
        let mut sc = 0.0;
        let mut sw = 0.0;
        for (i, row) in self.inv.iter().enumerate() {
            if row[p].is_zero() {
                continue;
            }
            let m = -to_f64(&row[p]);
            let a = obj.c_f64[i] * m;
            let b = obj.w_f64[i] * m;
            cd += a;
            wd += b;
            sc += a.abs();
            sw += b.abs();
        }
        let k = 4.0 * (self.basis.len() as f64 + 2.0) * EPS;
        (cd, wd, k * sc, k * sw)
    }

    fn exact_slope(&self, obj: &WalkObjectives, p: usize) -> Option<Rational> {
        let cd = self.direction_dot(&obj.c, p);
        cd.is_positive().then(|| self.direction_dot(&obj.w, p) / cd)
    }

    /// One step of the walk: among improving edges (`c·d > 0`) take the one
    /// with the smallest slope `w·d / c·d`, ties to the smaller entering row.
    pub fn shadow_pivot(&mut self, obj: &WalkObjectives) -> Result<PivotOutcome> {
        let n = self.basis.len();
        self.ops += (2 * n * n) as u64;
        let mut candidates: Vec<Candidate> = Vec::new();
        for p in 0..n {
            if self.locked[p] {
                continue;
            }
            match obj.pricing {
                Pricing::Exact => {
                    if self.direction_dot(&obj.c, p).is_positive() {
                        candidates.push(Candidate { position: p, cd_f: 0.0, wd_f: 0.0, rel_err: None });
                    }
                }
                Pricing::Float => {
                    let (cd, wd, ec, ew) = self.float_candidate(obj, p);
                    let improving = if cd > ec {
                        true
                    } else if cd < -ec {
                        false
                    } else {
                        self.direction_dot(&obj.c, p).is_positive()
                    };
                    if !improving {
                        continue;
                    }
                    let rel_err = (cd > ec && wd.abs() > ew).then(|| ew / wd.abs() + ec / cd.abs() + 1e-12);
                    candidates.push(Candidate { position: p, cd_f: cd, wd_f: wd, rel_err });
                }
            }
        }
        if candidates.is_empty() {
            return Ok(PivotOutcome::AtOptimum);
        }

        // narrow down to the candidates whose slope may be minimal
        let contenders: Vec<usize> = match obj.pricing {
            Pricing::Exact => (0..candidates.len()).collect(),
            Pricing::Float => {
                let slope = |c: &Candidate| c.wd_f / c.cd_f;
                let trusted: Vec<usize> = (0..candidates.len()).filter(|&k| candidates[k].rel_err.is_some()).collect();
                match trusted.iter().copied().min_by(|&a, &b| slope(&candidates[a]).total_cmp(&slope(&candidates[b]))) {
                    None => (0..candidates.len()).collect(),
                    Some(best) => {
                        let s0 = slope(&candidates[best]);
                        let e0 = candidates[best].rel_err.unwrap();
                        (0..candidates.len())
                            .filter(|&k| match candidates[k].rel_err {
                                None => true,
                                Some(e) => {
                                    let s = slope(&candidates[k]);
                                    s - s0 <= (e + e0) * s.abs().max(s0.abs())
                                }
                            })
                            .collect()
                    }
                }
            }
        };

        let mut exact: Vec<(Rational, usize)> = contenders
            .iter()
            .map(|&k| {
                let p = candidates[k].position;
                (self.exact_slope(obj, p).expect("improving edge"), p)
            })
            .collect();
        let min = exact.iter().map(|(s, _)| s.clone()).min().unwrap();
        exact.retain(|(s, _)| *s == min);
        let position = if exact.len() == 1 {
            exact[0].1
        } else {
            let mut best = (usize::MAX, usize::MAX);
            for &(_, p) in &exact {
                let (entering, _) = self.ratio_test(p)?;
                if entering < best.0 {
                    best = (entering, p);
                }
            }
            best.1
        };

        let (entering, theta) = self.ratio_test(position)?;
        let leaving = self.apply_pivot(position, entering, &theta);
        let c_value = dot(&obj.c, &self.x);
        Ok(PivotOutcome::Step(EdgeRecord {
            entering_row: entering,
            leaving_row: leaving,
            slope: min,
            c_value,
            step: theta,
            basis: self.basis.clone(),
            vertex: self.x.clone(),
        }))
    }

    /// Replaces the basis row at `position` by `entering`, moving `theta`
    /// along `d_position`. Returns the leaving row.
    fn apply_pivot(&mut self, position: usize, entering: usize, theta: &Rational) -> usize {
        let n = self.basis.len();
        let m = self.lp.num_rows();
        if !theta.is_zero() {
            let d: Vec<Rational> = self.inv.iter().map(|row| -&row[position]).collect();
            for (xi, di) in self.x.iter_mut().zip(&d) {
                if !di.is_zero() {
                    *xi += theta * di;
                }
            }
            for j in 0..m {
                let t = self.edge_dot(j, position);
                if !t.is_zero() {
                    self.slack[j] -= theta * t;
                }
            }
            self.ops += (m + n) as u64;
        }
        // rank one update of M with alpha = a_entering · M
        let alpha = self.row_times_inverse(entering);
        let pivot = alpha[position].clone();
        for row in self.inv.iter_mut() {
            if row[position].is_zero() {
                continue;
            }
            let col_p = &row[position] / &pivot;
            for (q, aq) in alpha.iter().enumerate() {
                if q != position && !aq.is_zero() {
                    row[q] -= &col_p * aq;
                }
            }
            row[position] = col_p;
        }
        self.ops += (n * n) as u64;
        // slacks of the two rows involved are known exactly
        self.slack[entering] = Rational::zero();
        let leaving = self.basis[position];
        self.position[leaving] = None;
        self.position[entering] = Some(position);
        self.basis[position] = entering;
        self.pivots += 1;
        leaving
    }

    /// Pivots until no improving edge is left or `cap` pivots were made.
    /// Returns the path and whether the walk finished.
    pub fn walk(&mut self, obj: &WalkObjectives, cap: Option<u64>) -> Result<(ShadowPath, bool)> {
        let mut path = ShadowPath {
            start_basis: self.basis.clone(),
            start_vertex: self.x.clone(),
            locked_rows: self.locked_rows(),
            order: self.order.clone(),
            steps: Vec::new(),
        };
        loop {
            if cap.is_some_and(|c| path.steps.len() as u64 >= c) {
                // a capped walk that already sits at the optimum still finishes
                let at_optimum = self.free_positions().iter().all(|&p| !self.direction_dot(&obj.c, p).is_positive());
                return Ok((path, at_optimum));
            }
            match self.shadow_pivot(obj)? {
                PivotOutcome::AtOptimum => return Ok((path, true)),
                PivotOutcome::Step(rec) => path.steps.push(rec),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WalkOutcome {
    Finished { solution: BasicSolution, path: ShadowPath },
    CapExceeded { path: ShadowPath },
}

/// Walks from `x0` with objectives `c` and `w` on the whole program.
pub fn shadow_walk(
    lp: &LinearProgram,
    x0: &BasicSolution,
    c: &[Rational],
    w: &[Rational],
    pricing: Pricing,
    pivot_cap: Option<u64>,
) -> Result<WalkOutcome> {
    let mut tab = Tableau::new(lp, x0)?;
    let obj = WalkObjectives::new(c.to_vec(), w.to_vec(), pricing);
    let (path, finished) = tab.walk(&obj, pivot_cap)?;
    Ok(if finished {
        WalkOutcome::Finished { solution: tab.solution(), path }
    } else {
        WalkOutcome::CapExceeded { path }
    })
}

/// Float view of the basis rows of `x0`, each scaled to unit length.
pub fn tight_rows_at(lp: &LinearProgram, x0: &BasicSolution) -> Result<Vec<Vec<f64>>> {
    x0.verify(lp)?;
    Ok(x0
        .basis
        .iter()
        .map(|&i| {
            let r: Vec<f64> = lp.row(i).iter().map(to_f64).collect();
            let l = crate::num::norm_f64(&r);
            r.into_iter().map(|v| v / l).collect()
        })
        .collect())
}

/// Facts about a recorded path, recomputed from the bases alone.
#[derive(Debug, Clone, PartialEq)]
pub struct PathCheck {
    /// Consecutive bases share all but one row.
    pub neighbors: bool,
    /// `c·x(ε)` strictly increases in the lexicographic order.
    pub lex_increasing: bool,
    /// Real `c·x` never decreases.
    pub value_monotone: bool,
    /// Recorded slopes never decrease.
    pub slopes_monotone: bool,
    /// Recorded slopes strictly increase.
    pub slopes_strict: bool,
}

impl PathCheck {
    pub fn all_hold(&self, require_strict_slopes: bool) -> bool {
        self.neighbors && self.lex_increasing && self.value_monotone && self.slopes_monotone && (!require_strict_slopes || self.slopes_strict)
    }
}

/// `c·x(ε)` of a basis as coefficients by exponent of `ε`, computed from a
/// fresh inverse.
pub fn lex_objective(lp: &LinearProgram, basis: &[usize], order: &[usize], c: &[Rational]) -> Result<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = basis.iter().map(|&i| lp.row(i).to_vec()).collect();
    let inv = inverse_exact(&rows)?;
    let n = basis.len();
    let rhs: Vec<Rational> = basis.iter().map(|&i| lp.rhs()[i].clone()).collect();
    let mut v = vec![Rational::zero(); lp.num_rows() + 1];
    for p in 0..n {
        // μ_p = c · M[:,p]
        let mu: Rational = (0..n).map(|i| &c[i] * &inv[i][p]).sum();
        v[0] += &mu * &rhs[p];
        v[order[basis[p]]] += mu;
    }
    Ok(v)
}

pub fn verify_path(lp: &LinearProgram, c: &[Rational], path: &ShadowPath) -> Result<PathCheck> {
    let mut check = PathCheck {
        neighbors: true,
        lex_increasing: true,
        value_monotone: true,
        slopes_monotone: true,
        slopes_strict: true,
    };
    let mut prev_basis = path.start_basis.clone();
    let mut prev_lex = lex_objective(lp, &prev_basis, &path.order, c)?;
    let mut prev_value = dot(c, &path.start_vertex);
    let mut prev_slope: Option<&Rational> = None;
    for step in &path.steps {
        let mut a = prev_basis.clone();
        let mut b = step.basis.clone();
        a.sort_unstable();
        b.sort_unstable();
        let shared = a.iter().filter(|r| b.binary_search(r).is_ok()).count();
        check.neighbors &= shared + 1 == a.len();
        let lex = lex_objective(lp, &step.basis, &path.order, c)?;
        check.lex_increasing &= lex > prev_lex;
        check.value_monotone &= step.c_value >= prev_value && lex[0] == step.c_value;
        if let Some(s) = prev_slope {
            check.slopes_monotone &= step.slope >= *s;
            check.slopes_strict &= step.slope > *s;
        }
        prev_slope = Some(&step.slope);
        prev_basis = step.basis.clone();
        prev_lex = lex;
        prev_value = step.c_value.clone();
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int};

    fn square() -> LinearProgram {
        LinearProgram::from_integers(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[1, 1, 0, 0], &[1, 1]).unwrap()
    }

    fn origin(lp: &LinearProgram) -> BasicSolution {
        BasicSolution::from_basis(lp, vec![2, 3]).unwrap()
    }

    #[test]
    fn first_pivot_from_origin_follows_smaller_slope() {
        // w = -(λ1·(-e1) + λ2·(-e2)) = (λ1, λ2); edges e1 and e2 from the origin
        // have slopes λ1/c1 and λ2/c2; here 1/1 > (1/2)/(9/10)
        let lp = square();
        let c = vec![int(1), frac(9, 10)];
        let w = vec![int(1), frac(1, 2)];
        for pricing in [Pricing::Exact, Pricing::Float] {
            let mut tab = Tableau::new(&lp, &origin(&lp)).unwrap();
            let obj = WalkObjectives::new(c.clone(), w.clone(), pricing);
            let PivotOutcome::Step(rec) = tab.shadow_pivot(&obj).unwrap() else { panic!() };
            assert_eq!(rec.vertex, vec![int(0), int(1)]);
            assert_eq!(rec.entering_row, 1);
            assert_eq!(rec.leaving_row, 3);
            assert_eq!(rec.slope, frac(5, 9));
        }
    }

    #[test]
    fn walk_ends_at_argmax() {
        let lp = square();
        let c = vec![frac(3, 5), frac(4, 5)];
        let w = vec![frac(1, 3), frac(2, 3)];
        let WalkOutcome::Finished { solution, path } = shadow_walk(&lp, &origin(&lp), &c, &w, Pricing::Exact, None).unwrap() else {
            panic!()
        };
        assert_eq!(solution.point, vec![int(1), int(1)]);
        assert!(path.pivots() >= 1 && path.pivots() <= 2);
        assert!(verify_path(&lp, &c, &path).unwrap().all_hold(true));
    }

    #[test]
    fn optimal_start_gives_empty_path_and_zero_cap_stops() {
        let lp = square();
        let top = BasicSolution::from_basis(&lp, vec![0, 1]).unwrap();
        let c = vec![int(1), int(1)];
        let w = vec![int(-1), int(-1)];
        let WalkOutcome::Finished { path, .. } = shadow_walk(&lp, &top, &c, &w, Pricing::Exact, None).unwrap() else {
            panic!()
        };
        assert_eq!(path.pivots(), 0);
        let out = shadow_walk(&lp, &origin(&lp), &c, &[int(1), int(1)], Pricing::Exact, Some(0)).unwrap();
        assert!(matches!(out, WalkOutcome::CapExceeded { ref path } if path.pivots() == 0));
    }

    #[test]
    fn equal_slopes_pick_smaller_entering_row() {
        let lp = square();
        let c = vec![int(1), int(1)];
        let w = vec![int(1), int(1)];
        for pricing in [Pricing::Exact, Pricing::Float] {
            let mut tab = Tableau::new(&lp, &origin(&lp)).unwrap();
            let obj = WalkObjectives::new(c.clone(), w.clone(), pricing);
            let PivotOutcome::Step(rec) = tab.shadow_pivot(&obj).unwrap() else { panic!() };
            assert_eq!(rec.entering_row, 0);
        }
    }

    #[test]
    fn degenerate_apex_is_left_without_cycling() {
        // square pyramid apex (0,0,1) has four tight facets
        let lp = LinearProgram::from_integers(
            &[vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1], vec![0, 0, -1]],
            &[1, 1, 1, 1, 0],
            &[1, 1, -1],
        )
        .unwrap();
        let apex = BasicSolution::from_basis(&lp, vec![0, 1, 2]).unwrap();
        let c = vec![frac(7, 10), frac(6, 10), frac(-4, 10)];
        let w = vec![frac(1, 7), frac(-1, 5), frac(1, 3)];
        let WalkOutcome::Finished { solution, path } = shadow_walk(&lp, &apex, &c, &w, Pricing::Exact, Some(50)).unwrap() else {
            panic!("walk did not finish")
        };
        solution.verify(&lp).unwrap();
        let check = verify_path(&lp, &c, &path).unwrap();
        assert!(check.neighbors && check.lex_increasing && check.value_monotone);
    }

    #[test]
    fn tight_rows_at_origin() {
        let lp = square();
        let rows = tight_rows_at(&lp, &origin(&lp)).unwrap();
        assert_eq!(rows, vec![vec![-1.0, 0.0], vec![0.0, -1.0]]);
    }
}
