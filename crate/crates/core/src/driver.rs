//! Repeated shadow vertex algorithm, the φ doubling schedule and the end to
//! end solver.
//!
//! One call of [`repeated_shadow_vertex`] runs up to `n` walks on a single
//! [`Tableau`]. After each walk one basis row is identified as belonging to
//! an optimal basis and locked, which restricts later walks to that facet.
//! The perturbed objective of a round is drawn in coordinates of the face
//! (an orthonormal basis `U` of the directions orthogonal to the locked
//! rows) and mapped back with `c = U c_red`; the walk itself stays in the
//! original coordinates and exact arithmetic.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{complete_orthonormal, inverse_exact, orthogonal_residual, solve_exact, Rotation};
use crate::lp_model::{
    assert_unbounded_if_box_tight, bound_polytope, normalize, raise_rank_preserving_delta, BasicSolution, BoxCheck,
    LinearProgram,
};
use crate::num::{dot_f64, from_f64, norm_f64, norm_sq, to_f64, Rational};
use crate::phase1::{build_phase1, extract_bfs, Phase1Result};
use crate::randomness::{bit_budget, cone_objective, draw_lambda, perturb_objective, DrawMode, RandomSource};
use crate::shadow::{verify_path, PathCheck, Pricing, ShadowPath, Tableau, WalkObjectives};

// ---------------------------------------------------------------------------
// facet identification and optimality

/// `a > b` for `a = μ_a·√sq_a` and `b = μ_b·√sq_b`, decided exactly.
fn scaled_greater(mu_a: &Rational, sq_a: &Rational, mu_b: &Rational, sq_b: &Rational) -> bool {
    let (sa, sb) = (mu_a.signum(), mu_b.signum());
    if sa != sb {
        return sa > sb;
    }
    if sa.is_zero() {
        return false;
    }
    let va = mu_a * mu_a * sq_a;
    let vb = mu_b * mu_b * sq_b;
    if sa.is_positive() {
        va > vb
    } else {
        va < vb
    }
}

/// Index of the largest `μ_k·‖r_k‖` among `candidates`; ties go to the
/// earliest candidate.
fn argmax_scaled(mu: &[Rational], sq_norms: &[Rational], candidates: &[usize]) -> usize {
    let mut best = candidates[0];
    for &k in &candidates[1..] {
        if scaled_greater(&mu[k], &sq_norms[k], &mu[best], &sq_norms[best]) {
            best = k;
        }
    }
    best
}

/// Solves `Σ μ_k r_k = c` and returns the `k` maximizing `μ_k·‖r_k‖`, i.e.
/// the largest coefficient once the rows are scaled to unit length.
pub fn identify_basis_element(rows: &[Vec<Rational>], c: &[Rational]) -> Result<usize> {
    let n = rows.len();
    let transposed: Vec<Vec<Rational>> = (0..n).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect();
    let mu = solve_exact(&transposed, c)?;
    let sq: Vec<Rational> = rows.iter().map(|r| norm_sq(r)).collect();
    let all: Vec<usize> = (0..n).collect();
    Ok(argmax_scaled(&mu, &sq, &all))
}

/// A basis among the rows tight at `x` whose multipliers for `c0` are all
/// nonnegative, or `None` when `c0` is outside the normal cone.
///
/// Starts from `x.basis` and runs Bland's rule on the tangent cone, where
/// every pivot has length zero.
pub fn optimality_certificate(lp: &LinearProgram, x: &BasicSolution) -> Result<Option<Vec<usize>>> {
    x.verify(lp)?;
    let n = lp.num_vars();
    let tight = lp.tight_rows(&x.point);
    let mut basis = x.basis.clone();
    loop {
        let rows: Vec<Vec<Rational>> = basis.iter().map(|&i| lp.row(i).to_vec()).collect();
        let inv = inverse_exact(&rows)?;
        let mu: Vec<Rational> = (0..n).map(|p| (0..n).map(|i| &lp.objective()[i] * &inv[i][p]).sum()).collect();
        let Some(p) = (0..n).filter(|&p| mu[p].is_negative()).min_by_key(|&p| basis[p]) else {
            return Ok(Some(basis));
        };
        let d: Vec<Rational> = (0..n).map(|i| -&inv[i][p]).collect();
        let blocking = tight
            .iter()
            .copied()
            .filter(|j| !basis.contains(j))
            .find(|&j| crate::num::dot(lp.row(j), &d).is_positive());
        match blocking {
            Some(j) => basis[p] = j,
            None => return Ok(None),
        }
    }
}

/// Whether `c0` lies in the normal cone of the vertex `x`, decided exactly.
pub fn is_optimal(lp: &LinearProgram, x: &BasicSolution) -> Result<bool> {
    Ok(optimality_certificate(lp, x)?.is_some())
}

// ---------------------------------------------------------------------------
// explicit dimension reduction

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionEntry {
    pub rotation: Rotation,
    pub fixed_row: usize,
    /// Right hand side of the fixed row in the float view.
    pub fixed_rhs: f64,
    pub dim_before: usize,
    /// Row of the program before the reduction for every surviving row.
    pub kept_rows: Vec<usize>,
}

/// Chain of rotations used to go from a face back to the full space.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStack {
    dim: usize,
    entries: Vec<ReductionEntry>,
}

impl ReductionStack {
    pub fn new(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    pub fn entries(&self) -> &[ReductionEntry] {
        &self.entries
    }

    pub fn original_dim(&self) -> usize {
        self.dim
    }

    pub fn current_dim(&self) -> usize {
        self.dim - self.entries.len()
    }

    pub fn push(&mut self, entry: ReductionEntry) {
        debug_assert_eq!(entry.dim_before, self.current_dim());
        self.entries.push(entry);
    }

    /// Orthonormal columns spanning the current face directions, expressed in
    /// the original coordinates.
    pub fn face_basis(&self) -> Vec<Vec<f64>> {
        let n = self.dim;
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|k| {
                let mut e = vec![0.0; n];
                e[k] = 1.0;
                e
            })
            .collect();
        for entry in &self.entries {
            cols = entry.rotation.rows()[1..]
                .iter()
                .map(|q| {
                    let mut v = vec![0.0; n];
                    for (col, &qk) in cols.iter().zip(q) {
                        for (vi, ci) in v.iter_mut().zip(col) {
                            *vi += qk * ci;
                        }
                    }
                    v
                })
                .collect();
        }
        cols
    }
}

/// Rotates the unit row `row` onto the first axis, fixes that coordinate at
/// the row's right hand side and drops it. Rows that become constant are
/// removed; the others are renormalized.
pub fn reduce_dimension(lp: &LinearProgram, row: usize, stack: &ReductionStack) -> Result<(LinearProgram, ReductionStack)> {
    let n = lp.num_vars();
    if n <= 1 {
        return Err(Error::Precondition("cannot reduce a one dimensional program".into()));
    }
    if stack.current_dim() != n {
        return Err(Error::Dimension("stack does not match the program".into()));
    }
    let axis = lp.float_row(row);
    if (norm_f64(&axis) - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(format!("row {row} is not a unit row")));
    }
    let rotation = complete_orthonormal(&axis)?;
    let fixed_rhs = lp.float_rhs(row);
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut kept = Vec::new();
    for j in 0..lp.num_rows() {
        if j == row {
            continue;
        }
        let r = rotation.apply(&lp.float_row(j));
        let rest = &r[1..];
        if norm_f64(rest) <= 1e-12 {
            continue;
        }
        a.push(rest.iter().map(|&v| from_f64(v)).collect());
        b.push(from_f64(lp.float_rhs(j) - r[0] * fixed_rhs));
        kept.push(j);
    }
    let c = rotation.apply(&lp.float_objective());
    let reduced_c: Vec<Rational> = c[1..].iter().map(|&v| from_f64(v)).collect();
    let mut reduced = LinearProgram::new(a, b, reduced_c)?;
    let scales = reduced.rows().iter().map(|r| crate::lp_model::exact_norm_f64(r)).collect();
    let obj = crate::lp_model::exact_norm_f64(reduced.objective());
    reduced.set_scales(scales, if obj > 0.0 { obj } else { 1.0 });
    let mut out = stack.clone();
    out.push(ReductionEntry { rotation, fixed_row: row, fixed_rhs, dim_before: n, kept_rows: kept });
    Ok((reduced, out))
}

/// Maps a point of the innermost reduced program back to the original
/// coordinates by undoing every rotation.
pub fn lift_solution(stack: &ReductionStack, x_reduced: &[f64]) -> Result<Vec<f64>> {
    if x_reduced.len() != stack.current_dim() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, stack expects {}",
            x_reduced.len(),
            stack.current_dim()
        )));
    }
    let mut x = x_reduced.to_vec();
    for entry in stack.entries.iter().rev() {
        let mut y = Vec::with_capacity(entry.dim_before);
        y.push(entry.fixed_rhs);
        y.extend_from_slice(&x);
        x = entry.rotation.apply_transpose(&y);
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// schedule and caps

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    /// `φ_i = 2^i n^{3/2}`
    N32,
    /// `φ_i = 2^i n^{5/2}`
    N52,
    /// `φ_i = 2^i √m (n+m)^{3/2}` in terms of the original `m`, `n`.
    Phase1,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSchedule {
    pub kind: ScheduleKind,
    pub m: usize,
    pub n: usize,
}

impl PhiSchedule {
    pub fn new(kind: ScheduleKind, m: usize, n: usize) -> Self {
        Self { kind, m, n }
    }

    pub fn phi(&self, i: u32) -> f64 {
        let (m, n) = (self.m as f64, self.n as f64);
        let base = match self.kind {
            ScheduleKind::N32 => n.powf(1.5),
            ScheduleKind::N52 => n.powf(2.5),
            ScheduleKind::Phase1 => m.sqrt() * (n + m).powf(1.5),
        };
        base * 2f64.powi(i as i32)
    }
}

/// `δ̂ = 2n^{3/2}/φ`, capped at 1.
pub fn delta_hat(n: usize, phi: f64) -> f64 {
    (2.0 * (n as f64).powf(1.5) / phi).min(1.0)
}

/// `p(m,n,φ,δ) = ⌈K (mn²/δ² + m√n φ/δ)⌉`.
pub fn pivot_bound(m: usize, n: usize, phi: f64, delta: f64, k: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    (k * (m * n * n / (delta * delta) + m * n.sqrt() * phi / delta)).ceil()
}

/// Per-walk cap `8n·p(m, n, φ, δ̂(n, φ))` used with finite-bit draws.
pub fn pivot_cap(m: usize, n: usize, phi: f64, k: f64) -> u64 {
    let cap = 8.0 * n as f64 * pivot_bound(m, n, phi, delta_hat(n, phi), k);
    if cap >= u64::MAX as f64 {
        u64::MAX
    } else {
        cap as u64
    }
}

// ---------------------------------------------------------------------------
// configuration and results

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BitsPolicy {
    Fixed(u32),
    /// Bits from the budget formula; `delta = None` uses `δ̂(n, φ)`.
    Budget { delta: Option<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Randomness {
    /// 53-bit draws, float pricing, no pivot cap.
    Continuous,
    /// Finite-bit draws, exact pricing, pivot cap per walk.
    Dyadic(BitsPolicy),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    pub randomness: Randomness,
    pub schedule: ScheduleKind,
    pub cap_constant: f64,
    pub max_doublings: u32,
    /// Keep every walk with its verified path structure.
    pub record_paths: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            randomness: Randomness::Continuous,
            schedule: ScheduleKind::N32,
            cap_constant: 16.0,
            max_doublings: 64,
            record_paths: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Phase1,
    Main,
    Ray,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkTrace {
    pub stage: Stage,
    pub iteration: u32,
    pub round: usize,
    pub phi: f64,
    pub pivots: u64,
    pub finished: bool,
    pub identified_row: Option<usize>,
    pub path: ShadowPath,
    pub check: PathCheck,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolveStats {
    pub total_pivots: u64,
    pub phase1_pivots: u64,
    pub main_pivots: u64,
    pub ray_pivots: u64,
    /// Pivots of each round of the accepted main iteration.
    pub pivots_per_round: Vec<u64>,
    pub bits_consumed: u64,
    /// `φ` of the accepted main iteration.
    pub accepted_phi: Option<f64>,
    /// Index `i` of the accepted main iteration; `Some(0)` is also used when
    /// the starting vertex was already optimal and no walk ran.
    pub accepted_index: Option<u32>,
    pub phase1_index: Option<u32>,
    pub walks: Vec<WalkTrace>,
    /// Rows identified as optimal basis elements in the accepted main iteration.
    pub identified_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    /// `solution.basis` indexes the rows of the rank-raised program, which
    /// extends the input by appended rows only.
    Optimal { solution: BasicSolution, value: Rational, stats: SolveStats },
    Unbounded { ray: Vec<Rational>, stats: SolveStats },
    Infeasible { phase1_value: Rational, stats: SolveStats },
}

impl SolveOutcome {
    pub fn stats(&self) -> &SolveStats {
        match self {
            SolveOutcome::Optimal { stats, .. } | SolveOutcome::Unbounded { stats, .. } | SolveOutcome::Infeasible { stats, .. } => stats,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SolveOutcome::Optimal { .. } => "optimal",
            SolveOutcome::Unbounded { .. } => "unbounded",
            SolveOutcome::Infeasible { .. } => "infeasible",
        }
    }
}

// ---------------------------------------------------------------------------
// repeated shadow vertex

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkSettings {
    pub pricing: Pricing,
    pub cap: Option<u64>,
    pub record_paths: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub pivots: u64,
    pub finished: bool,
    pub identified_row: Option<usize>,
    pub path: Option<(ShadowPath, PathCheck)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RsvOutcome {
    Candidate { solution: BasicSolution, rounds: Vec<RoundRecord> },
    CapExceeded { rounds: Vec<RoundRecord> },
}

/// Up to `n` rounds of perturb, walk, identify and lock, starting at `x0`.
/// `lp` must be normalized and bounded.
pub fn repeated_shadow_vertex(
    lp: &LinearProgram,
    x0: &BasicSolution,
    phi: f64,
    settings: &WalkSettings,
    rng: &mut RandomSource,
) -> Result<RsvOutcome> {
    if !lp.flags().normalized {
        return Err(Error::Precondition("program must be normalized".into()));
    }
    let n = lp.num_vars();
    let c0 = lp.float_objective();
    let mut tab = Tableau::new(lp, x0)?;
    let mut stack = ReductionStack::new(n);
    let mut rounds = Vec::new();
    for round in 0..n {
        let d = n - round;
        let u = stack.face_basis();
        let c_red: Vec<f64> = u.iter().map(|col| dot_f64(col, &c0)).collect();
        let len = norm_f64(&c_red);
        if len <= 1e-12 {
            let locked: Vec<Vec<Rational>> = tab.locked_rows().iter().map(|&r| lp.row(r).to_vec()).collect();
            if orthogonal_residual(lp.objective(), &locked).iter().all(Zero::is_zero) {
                // c0 is orthogonal to the face, so the whole face is optimal
                break;
            }
        }
        let c_red: Vec<f64> = c_red.iter().map(|v| v / len).collect();
        let pert = perturb_objective(&c_red, phi, rng)?;
        let u_exact: Vec<Vec<Rational>> = u.iter().map(|col| col.iter().map(|&v| from_f64(v)).collect()).collect();
        let mut c = vec![Rational::zero(); n];
        for (col, ck) in u_exact.iter().zip(&pert.c) {
            for (ci, ui) in c.iter_mut().zip(col) {
                if !ui.is_zero() {
                    *ci += ui * ck;
                }
            }
        }

        // w = -Σ λ_k a_k / ‖proj a_k‖ over the free basis rows, so the
        // current vertex is the unique minimizer of w on the face
        let free = tab.free_positions();
        let lambda = draw_lambda(free.len(), rng);
        let mut scaled_rows = Vec::with_capacity(free.len());
        for &p in &free {
            let row = lp.row(tab.basis()[p]);
            let row_f: Vec<f64> = row.iter().map(to_f64).collect();
            let proj: Vec<f64> = u.iter().map(|col| dot_f64(col, &row_f)).collect();
            let s = from_f64(1.0 / norm_f64(&proj));
            scaled_rows.push(row.iter().map(|v| v * &s).collect::<Vec<_>>());
        }
        let w = cone_objective(&scaled_rows, &lambda)?;

        tab.reset_order();
        let obj = WalkObjectives::new(c, w, settings.pricing);
        let before = tab.pivots();
        let (path, finished) = tab.walk(&obj, settings.cap)?;
        let pivots = tab.pivots() - before;
        let recorded = if settings.record_paths {
            let check = verify_path(lp, obj.c(), &path)?;
            Some((path, check))
        } else {
            None
        };
        if !finished {
            rounds.push(RoundRecord { pivots, finished, identified_row: None, path: recorded });
            return Ok(RsvOutcome::CapExceeded { rounds });
        }
        if d == 1 {
            rounds.push(RoundRecord { pivots, finished, identified_row: None, path: recorded });
            break;
        }

        // identify the free basis row with the largest multiplier measured in
        // face coordinates: μ_p · ‖proj_F a_p‖
        let inv = tab.inverse();
        let mu: Vec<Rational> = (0..n).map(|p| (0..n).map(|i| &obj.c()[i] * &inv[i][p]).sum()).collect();
        let locked: Vec<Vec<Rational>> = tab.locked_rows().iter().map(|&r| lp.row(r).to_vec()).collect();
        let sq: Vec<Rational> = (0..n)
            .map(|p| {
                if tab.is_locked(p) {
                    Rational::zero()
                } else {
                    norm_sq(&orthogonal_residual(lp.row(tab.basis()[p]), &locked))
                }
            })
            .collect();
        let free = tab.free_positions();
        let p = argmax_scaled(&mu, &sq, &free);
        let row = tab.basis()[p];
        tab.lock_row(row)?;
        rounds.push(RoundRecord { pivots, finished, identified_row: Some(row), path: recorded });

        let row_f: Vec<f64> = lp.row(row).iter().map(to_f64).collect();
        let reduced: Vec<f64> = u.iter().map(|col| dot_f64(col, &row_f)).collect();
        let l = norm_f64(&reduced);
        let axis: Vec<f64> = reduced.iter().map(|v| v / l).collect();
        let rotation = complete_orthonormal(&axis)?;
        stack.push(ReductionEntry {
            rotation,
            fixed_row: row,
            fixed_rhs: lp.float_rhs(row),
            dim_before: d,
            kept_rows: Vec::new(),
        });
    }
    Ok(RsvOutcome::Candidate { solution: tab.solution(), rounds })
}

// ---------------------------------------------------------------------------
// solve

struct Run<'a> {
    cfg: &'a SolverConfig,
    rng: RandomSource,
    stats: SolveStats,
}

impl Run<'_> {
    fn settings(&mut self, lp: &LinearProgram, phi: f64, m_orig: usize) -> WalkSettings {
        let n = lp.num_vars();
        let m = lp.num_rows();
        match self.cfg.randomness {
            Randomness::Continuous => {
                self.rng.set_mode(DrawMode::Continuous);
                WalkSettings { pricing: Pricing::Float, cap: None, record_paths: self.cfg.record_paths }
            }
            Randomness::Dyadic(policy) => {
                let bits = match policy {
                    BitsPolicy::Fixed(k) => k,
                    BitsPolicy::Budget { delta } => bit_budget(m_orig.max(2), n, phi, delta.unwrap_or_else(|| delta_hat(n, phi))),
                };
                self.rng.set_mode(DrawMode::Dyadic { bits });
                WalkSettings {
                    pricing: Pricing::Exact,
                    cap: Some(pivot_cap(m, n, phi, self.cfg.cap_constant)),
                    record_paths: self.cfg.record_paths,
                }
            }
        }
    }

    fn add_pivots(&mut self, stage: Stage, pivots: u64) {
        self.stats.total_pivots += pivots;
        match stage {
            Stage::Phase1 => self.stats.phase1_pivots += pivots,
            Stage::Main => self.stats.main_pivots += pivots,
            Stage::Ray => self.stats.ray_pivots += pivots,
        }
    }

    /// Doubles `φ` until the repeated shadow vertex algorithm returns a
    /// vertex that passes the exact optimality test.
    fn schedule_loop(
        &mut self,
        lp: &LinearProgram,
        x0: &BasicSolution,
        schedule: PhiSchedule,
        stage: Stage,
    ) -> Result<BasicSolution> {
        if is_optimal(lp, x0)? {
            self.accept(stage, 0, None, &[]);
            return Ok(x0.clone());
        }
        for i in 0..self.cfg.max_doublings {
            let phi = schedule.phi(i);
            let settings = self.settings(lp, phi, schedule.m);
            let outcome = repeated_shadow_vertex(lp, x0, phi, &settings, &mut self.rng)?;
            let (rounds, candidate) = match outcome {
                RsvOutcome::Candidate { solution, rounds } => (rounds, Some(solution)),
                RsvOutcome::CapExceeded { rounds } => (rounds, None),
            };
            for (r, rec) in rounds.iter().enumerate() {
                self.add_pivots(stage, rec.pivots);
                if let Some((path, check)) = &rec.path {
                    self.stats.walks.push(WalkTrace {
                        stage,
                        iteration: i,
                        round: r,
                        phi,
                        pivots: rec.pivots,
                        finished: rec.finished,
                        identified_row: rec.identified_row,
                        path: path.clone(),
                        check: check.clone(),
                    });
                }
            }
            if let Some(sol) = candidate {
                if is_optimal(lp, &sol)? {
                    self.accept(stage, i, Some(phi), &rounds);
                    return Ok(sol);
                }
            }
        }
        Err(Error::IterationGuard(self.cfg.max_doublings))
    }

    fn accept(&mut self, stage: Stage, i: u32, phi: Option<f64>, rounds: &[RoundRecord]) {
        match stage {
            Stage::Main => {
                self.stats.accepted_index = Some(i);
                self.stats.accepted_phi = phi;
                self.stats.pivots_per_round = rounds.iter().map(|r| r.pivots).collect();
                self.stats.identified_rows = rounds.iter().filter_map(|r| r.identified_row).collect();
            }
            Stage::Phase1 => self.stats.phase1_index = Some(i),
            Stage::Ray => {}
        }
    }

    /// A vertex of `lp` (full rank), or the positive phase 1 optimum.
    fn find_start(&mut self, lp: &LinearProgram) -> Result<Phase1Result> {
        let problem = build_phase1(lp)?;
        let aux = normalize(&problem.lp)?;
        let boxed = bound_polytope(&aux)?;
        let schedule = PhiSchedule::new(ScheduleKind::Phase1, problem.m, problem.n);
        let sol = self.schedule_loop(&boxed, &problem.initial, schedule, Stage::Phase1)?;
        // the phase 1 objective is bounded, so a box-tight optimum only needs
        // to be moved to a vertex of the unboxed program
        let sol = if boxed.non_box_rows().len() == boxed.num_rows() || !touches_box(&boxed, &sol) {
            sol
        } else {
            let v = aux.purify(&sol.point, &(0..aux.num_rows()).collect::<Vec<_>>(), true)?;
            if !is_optimal(&aux, &v)? {
                return Err(Error::Uncertified);
            }
            v
        };
        let certified_on = if sol.basis.iter().all(|&i| i < aux.num_rows()) { &aux } else { &boxed };
        extract_bfs(&sol, certified_on, &problem, lp)
    }

    fn ray_search(&mut self, rec: &LinearProgram, start: &BasicSolution) -> Result<Option<Vec<Rational>>> {
        let schedule = PhiSchedule::new(self.cfg.schedule, rec.num_rows(), rec.num_vars());
        let d = self.schedule_loop(rec, start, schedule, Stage::Ray)?;
        Ok(rec.objective_value(&d.point).is_positive().then_some(d.point))
    }
}

fn touches_box(lp: &LinearProgram, x: &BasicSolution) -> bool {
    lp.rows_of_kind(crate::lp_model::RowKind::Box).iter().any(|&i| lp.slack(i, &x.point).is_zero())
}

/// Solves `max { c0·x | Ax <= b }` exactly.
pub fn solve(lp_raw: &LinearProgram, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let mut run = Run { cfg, rng: RandomSource::new(cfg.seed, DrawMode::Continuous), stats: SolveStats::default() };
    let result = solve_inner(lp_raw, &mut run);
    run.stats.bits_consumed = run.rng.bits_consumed();
    let stats = std::mem::take(&mut run.stats);
    Ok(match result? {
        Finished::Optimal(solution, value) => SolveOutcome::Optimal { solution, value, stats },
        Finished::Unbounded(ray) => SolveOutcome::Unbounded { ray, stats },
        Finished::Infeasible(phase1_value) => SolveOutcome::Infeasible { phase1_value, stats },
    })
}

/// Runs only the phase 1 stage on `lp` (after rank raising if needed).
pub fn find_start(lp_raw: &LinearProgram, cfg: &SolverConfig) -> Result<(Phase1Result, SolveStats)> {
    let mut run = Run { cfg, rng: RandomSource::new(cfg.seed, DrawMode::Continuous), stats: SolveStats::default() };
    let work = if lp_raw.rank() < lp_raw.num_vars() { raise_rank_preserving_delta(lp_raw)?.lp } else { lp_raw.clone() };
    let result = run.find_start(&work)?;
    run.stats.bits_consumed = run.rng.bits_consumed();
    Ok((result, run.stats))
}

enum Finished {
    Optimal(BasicSolution, Rational),
    Unbounded(Vec<Rational>),
    Infeasible(Rational),
}

fn solve_inner(lp_raw: &LinearProgram, run: &mut Run) -> Result<Finished> {
    let n = lp_raw.num_vars();
    let (work, lineality_ray) = if lp_raw.rank() < n {
        let raised = raise_rank_preserving_delta(lp_raw)?;
        (raised.lp, raised.unbounded_direction)
    } else {
        (lp_raw.clone(), None)
    };
    let x0 = match run.find_start(&work)? {
        Phase1Result::Feasible(x0) => x0,
        Phase1Result::Infeasible { value } => return Ok(Finished::Infeasible(value)),
    };
    if let Some(ray) = lineality_ray {
        return Ok(Finished::Unbounded(ray));
    }
    if work.objective().iter().all(Zero::is_zero) {
        run.accept(Stage::Main, 0, None, &[]);
        let value = Rational::zero();
        return Ok(Finished::Optimal(x0, value));
    }
    let normalized = normalize(&work)?;
    let boxed = bound_polytope(&normalized)?;
    let schedule = PhiSchedule::new(run.cfg.schedule, lp_raw.num_rows(), n);
    let sol = run.schedule_loop(&boxed, &x0, schedule, Stage::Main)?;
    let check = assert_unbounded_if_box_tight(&sol, &boxed, |rec, start| run.ray_search(rec, start))?;
    let sol = match check {
        BoxCheck::Unbounded { ray } => return Ok(Finished::Unbounded(ray)),
        BoxCheck::Bounded if touches_box(&boxed, &sol) => {
            let rows: Vec<usize> = (0..normalized.num_rows()).collect();
            normalized.purify(&sol.point, &rows, true)?
        }
        BoxCheck::Bounded => sol,
    };
    // final certificate on the program without box rows
    if !is_optimal(&normalized, &sol)? {
        return Err(Error::Uncertified);
    }
    let value = lp_raw.objective_value(&sol.point);
    Ok(Finished::Optimal(sol, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int};

    fn square(c: &[i64]) -> LinearProgram {
        LinearProgram::from_integers(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[1, 1, 0, 0], c).unwrap()
    }

    #[test]
    fn identify_examples() {
        let rows = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(identify_basis_element(&rows, &[frac(9, 10), frac(1, 10)]).unwrap(), 0);
        assert_eq!(identify_basis_element(&rows, &[int(1), int(1)]).unwrap(), 0);
        // rows e1 and (1,1): c = (1, 1/10) gives μ = (9/10, 1/10), scaled (9/10, √2/10)
        let skew = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
        assert_eq!(identify_basis_element(&skew, &[int(1), frac(1, 10)]).unwrap(), 0);
        // c = (1, 9/10): μ = (1/10, 9/10), scaled (1/10, 9√2/10)
        assert_eq!(identify_basis_element(&skew, &[int(1), frac(9, 10)]).unwrap(), 1);
    }

    #[test]
    fn optimality_examples() {
        let lp = square(&[1, 1]);
        assert!(is_optimal(&lp, &BasicSolution::from_basis(&lp, vec![0, 1]).unwrap()).unwrap());
        let lp2 = square(&[0, 1]);
        assert!(!is_optimal(&lp2, &BasicSolution::from_basis(&lp2, vec![0, 3]).unwrap()).unwrap());
    }

    #[test]
    fn degenerate_vertex_is_certified_through_another_basis() {
        // apex of a pyramid with four tight facets; the first basis has a
        // negative multiplier but the vertex is optimal for c0 = e3
        let lp = LinearProgram::from_integers(
            &[vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1], vec![0, 0, -1]],
            &[1, 1, 1, 1, 0],
            &[1, 0, 1],
        )
        .unwrap();
        let apex = BasicSolution::from_basis(&lp, vec![1, 2, 3]).unwrap();
        assert_eq!(apex.point, vec![int(0), int(0), int(1)]);
        assert!(is_optimal(&lp, &apex).unwrap());
    }

    #[test]
    fn reduce_and_lift_unit_square() {
        let lp = normalize(&square(&[1, 1])).unwrap();
        let (reduced, stack) = reduce_dimension(&lp, 0, &ReductionStack::new(2)).unwrap();
        assert_eq!(reduced.num_vars(), 1);
        // surviving rows are ±y (up to the orientation of the rotation)
        assert_eq!(reduced.num_rows(), 2);
        let mut bounds: Vec<f64> = (0..2).map(|i| reduced.float_rhs(i) * reduced.float_row(i)[0].signum()).collect();
        bounds.sort_by(f64::total_cmp);
        assert!((bounds[0] - 0.0).abs() < 1e-12 && (bounds[1] - 1.0).abs() < 1e-12);
        let y_max = if reduced.float_row(0)[0] * reduced.float_rhs(0) > 0.0 { reduced.float_rhs(0) * reduced.float_row(0)[0] } else { reduced.float_rhs(1) * reduced.float_row(1)[0] };
        let lifted = lift_solution(&stack, &[y_max]).unwrap();
        assert!((lifted[0] - 1.0).abs() < 1e-12 && (lifted[1] - 1.0).abs() < 1e-12, "{lifted:?}");
        assert_eq!(lift_solution(&ReductionStack::new(2), &[0.5, 0.25]).unwrap(), vec![0.5, 0.25]);
        assert!(reduce_dimension(&reduced, 0, &stack).is_err());
    }

    #[test]
    fn schedules_double() {
        let s = PhiSchedule::new(ScheduleKind::N32, 3, 4);
        assert_eq!(s.phi(0), 8.0);
        assert_eq!(s.phi(3), 64.0);
        let p = PhiSchedule::new(ScheduleKind::Phase1, 4, 5);
        assert!((p.phi(1) - 2.0 * 2.0 * 27.0).abs() < 1e-9);
    }

    #[test]
    fn solve_small_cases() {
        let cfg = SolverConfig::default();
        let out = solve(&square(&[1, 1]), &cfg).unwrap();
        let SolveOutcome::Optimal { value, solution, .. } = out else { panic!("{out:?}") };
        assert_eq!(value, int(2));
        assert_eq!(solution.point, vec![int(1), int(1)]);

        let infeasible = LinearProgram::from_integers(&[vec![1], vec![-1]], &[0, -1], &[1]).unwrap();
        let out = solve(&infeasible, &cfg).unwrap();
        assert!(matches!(out, SolveOutcome::Infeasible { ref phase1_value, .. } if *phase1_value == int(1)), "{out:?}");

        let open = LinearProgram::from_integers(&[vec![-1]], &[0], &[1]).unwrap();
        let out = solve(&open, &cfg).unwrap();
        assert!(matches!(out, SolveOutcome::Unbounded { ref ray, .. } if ray[0].is_positive()), "{out:?}");
    }
}
