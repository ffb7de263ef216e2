use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{independent_rows, orthogonal_complement_exact, orthogonal_residual, EchelonBasis};
use crate::num::{bit_length, dot, is_integral, lcm, pow2, Rational};

use super::{exact_norm_f64, BasicSolution, LinearProgram, RowKind};

/// Records per-row and objective scales so the float view has unit rows and
/// a unit objective. The feasible set and the exact data are unchanged.
pub fn normalize(lp: &LinearProgram) -> Result<LinearProgram> {
    let objective = exact_norm_f64(lp.objective());
    if objective == 0.0 {
        return Err(Error::ZeroObjective);
    }
    let scales = lp.rows().iter().map(|r| exact_norm_f64(r)).collect();
    let mut out = lp.clone();
    out.set_scales(scales, objective);
    Ok(out)
}

/// Relates a rank-raised program back to the program it came from. The
/// variables are shared; only rows were appended.
#[derive(Debug, Clone, PartialEq)]
pub struct BackMap {
    pub original_rows: usize,
    pub appended_rows: Vec<usize>,
}

impl BackMap {
    pub fn is_original_row(&self, i: usize) -> bool {
        i < self.original_rows
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRaise {
    pub lp: LinearProgram,
    pub back_map: BackMap,
    /// `Some(d)` with `A d = 0` and `c0·d > 0` when the objective is not in
    /// the row space: the program is then unbounded as soon as it is feasible.
    pub unbounded_direction: Option<Vec<Rational>>,
}

fn raise_with(lp: &LinearProgram, directions: Vec<Vec<Rational>>) -> RankRaise {
    let mut out = lp.clone();
    let original_rows = lp.num_rows();
    let mut appended = Vec::new();
    for d in directions {
        let neg: Vec<Rational> = d.iter().map(|v| -v).collect();
        for row in [d, neg] {
            appended.push(out.num_rows());
            out.push_row(row, Rational::zero(), RowKind::Synthetic);
        }
    }
    out.flags_mut().full_rank = true;
    let residual = orthogonal_residual(lp.objective(), lp.rows());
    let unbounded_direction = residual.iter().any(|v| !v.is_zero()).then_some(residual);
    RankRaise { lp: out, back_map: BackMap { original_rows, appended_rows: appended }, unbounded_direction }
}

fn require_deficient(lp: &LinearProgram) -> Result<()> {
    let rank = lp.rank();
    if rank == lp.num_vars() {
        return Err(Error::Precondition("matrix already has full column rank".into()));
    }
    Ok(())
}

/// Appends `±o·x <= 0` for an exact orthogonal basis `o` of `ker A`. The
/// appended rows are orthogonal to every row of `A`, so δ is unchanged.
pub fn raise_rank_preserving_delta(lp: &LinearProgram) -> Result<RankRaise> {
    require_deficient(lp)?;
    let dirs = orthogonal_complement_exact(lp.rows(), lp.num_vars());
    Ok(raise_with(lp, dirs))
}

/// Appends `±e_i·x <= 0` for unit vectors completing the row space. Unit
/// rows keep an integral matrix's largest subdeterminant unchanged.
pub fn raise_rank_preserving_subdeterminants(lp: &LinearProgram) -> Result<RankRaise> {
    require_deficient(lp)?;
    if !lp.rows().iter().flatten().all(is_integral) {
        return Err(Error::NotIntegral);
    }
    let n = lp.num_vars();
    let mut ech = EchelonBasis::new();
    for r in lp.rows() {
        ech.insert(r);
    }
    let mut dirs = Vec::new();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        if ech.insert(&e) {
            dirs.push(e);
        }
    }
    Ok(raise_with(lp, dirs))
}

/// Binary encoding length of `A` and `b`: each entry `p/q` costs
/// `1 + bits(|p|) + bits(q)`.
pub fn encoding_length(lp: &LinearProgram) -> u64 {
    let entry = |x: &Rational| 1 + bit_length(x.numer()) + bit_length(x.denom());
    lp.rows().iter().flatten().chain(lp.rhs()).map(entry).sum()
}

/// Radius `r` such that every vertex `v` of the program has `‖v‖₂ < r`:
/// `⌈√n⌉ · 2^(enc - n²) · L^n` where `L` is the common denominator of `A`.
pub fn box_radius(lp: &LinearProgram) -> Rational {
    let n = lp.num_vars();
    let mut l = BigInt::one();
    for x in lp.rows().iter().flatten() {
        l = lcm(&l, x.denom());
    }
    let sqrt_ceil = (n as f64).sqrt().ceil() as i64;
    let exp = encoding_length(lp) as i64 - (n * n) as i64;
    Rational::from_integer(BigInt::from(sqrt_ceil)) * pow2(exp) * Rational::from_integer(num_traits::pow(l, n))
}

/// Appends `±a_i·x <= r‖a_i‖₁` for the lexicographically first basis of
/// rows `a_i`. Every vertex of the input lies strictly inside these rows.
pub fn bound_polytope(lp: &LinearProgram) -> Result<LinearProgram> {
    if !lp.rows_of_kind(RowKind::Box).is_empty() {
        return Err(Error::Precondition("program already has box rows".into()));
    }
    let anchors = independent_rows(lp.rows());
    if anchors.len() < lp.num_vars() {
        return Err(Error::RankDeficient { rank: anchors.len(), required: lp.num_vars() });
    }
    let r = box_radius(lp);
    let mut out = lp.clone();
    for i in anchors {
        let row = lp.row(i).to_vec();
        let l1: Rational = row.iter().map(|v| v.abs()).sum();
        let rhs = &r * l1;
        let neg: Vec<Rational> = row.iter().map(|v| -v).collect();
        out.push_row(row, rhs.clone(), RowKind::Box);
        out.push_row(neg, rhs, RowKind::Box);
    }
    let flags = out.flags_mut();
    flags.bounded = true;
    flags.full_rank = true;
    Ok(out)
}

/// The bounded recession program `max { c0·d | A d <= 0, ±a_i·d <= 1 }`
/// over the non-box rows of `lp`, with box rows on the same anchors, and
/// its starting vertex `d = 0`.
pub fn recession_program(lp: &LinearProgram) -> Result<(LinearProgram, BasicSolution)> {
    let inner = lp.non_box_rows();
    let boxes = lp.rows_of_kind(RowKind::Box);
    if boxes.is_empty() {
        return Err(Error::Precondition("program has no box rows".into()));
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &i in &inner {
        rows.push(lp.row(i).to_vec());
        rhs.push(Rational::zero());
    }
    let mut rec = LinearProgram::new(rows, rhs, lp.objective().to_vec())?;
    for (k, &i) in inner.iter().enumerate() {
        rec.kinds[k] = lp.kind(i);
    }
    for &i in &boxes {
        rec.push_row(lp.row(i).to_vec(), Rational::one(), RowKind::Box);
    }
    if lp.flags().normalized {
        rec = normalize(&rec)?;
    }
    rec.flags_mut().bounded = true;
    let basis = independent_rows(&rec.rows()[..inner.len()]);
    if basis.len() < rec.num_vars() {
        return Err(Error::RankDeficient { rank: basis.len(), required: rec.num_vars() });
    }
    let start = BasicSolution { point: vec![Rational::zero(); rec.num_vars()], basis };
    Ok((rec, start))
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoxCheck {
    Bounded,
    Unbounded { ray: Vec<Rational> },
}

/// Decides whether a vertex of the boxed program that touches a box row
/// witnesses unboundedness of the unboxed program.
///
/// `ray_search` receives the recession program and its start vertex and
/// returns a direction `d` with `A d <= 0` and `c0·d > 0` if one exists.
/// The returned ray is checked exactly.
pub fn assert_unbounded_if_box_tight<F>(vertex: &BasicSolution, lp: &LinearProgram, ray_search: F) -> Result<BoxCheck>
where
    F: FnOnce(&LinearProgram, &BasicSolution) -> Result<Option<Vec<Rational>>>,
{
    if let Some(i) = lp.first_violation(&vertex.point) {
        return Err(Error::Infeasible(i));
    }
    let boxes = lp.rows_of_kind(RowKind::Box);
    if !boxes.iter().any(|&i| lp.slack(i, &vertex.point).is_zero()) {
        return Ok(BoxCheck::Bounded);
    }
    let (rec, start) = recession_program(lp)?;
    match ray_search(&rec, &start)? {
        None => Ok(BoxCheck::Bounded),
        Some(ray) => {
            let recedes = lp.non_box_rows().iter().all(|&i| !dot(lp.row(i), &ray).is_positive());
            if !recedes || !lp.objective_value(&ray).is_positive() {
                return Err(Error::Precondition("ray search returned a direction that is not an improving ray".into()));
            }
            Ok(BoxCheck::Unbounded { ray })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int, to_f64};

    #[test]
    fn normalize_scales_rows_and_rhs_consistently() {
        let lp = LinearProgram::from_integers(&[vec![1, 1]], &[2], &[3, 4]).unwrap();
        let nl = normalize(&lp).unwrap();
        let row = nl.float_row(0);
        let s = 1.0 / 2f64.sqrt();
        assert!((row[0] - s).abs() < 1e-15 && (row[1] - s).abs() < 1e-15);
        assert!((nl.float_rhs(0) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(nl.float_objective(), vec![0.6, 0.8]);
        assert_eq!(nl.rows(), lp.rows());
    }

    #[test]
    fn normalize_rejects_zero_objective() {
        let lp = LinearProgram::from_integers(&[vec![1, 1]], &[2], &[0, 0]).unwrap();
        assert_eq!(normalize(&lp), Err(Error::ZeroObjective));
    }

    #[test]
    fn rank_raise_adds_orthogonal_rows() {
        let lp = LinearProgram::from_integers(&[vec![1, 1, 0], vec![0, 0, 1]], &[1, 1], &[1, 1, 1]).unwrap();
        let raised = raise_rank_preserving_delta(&lp).unwrap();
        assert_eq!(raised.lp.rank(), 3);
        assert_eq!(raised.back_map.appended_rows, vec![2, 3]);
        for &i in &raised.back_map.appended_rows {
            for r in lp.rows() {
                assert!(dot(r, raised.lp.row(i)).is_zero());
            }
        }
        assert!(raised.unbounded_direction.is_none());
        let skew = lp.with_objective(vec![int(1), int(0), int(0)]).unwrap();
        let d = raise_rank_preserving_delta(&skew).unwrap().unbounded_direction.unwrap();
        assert_eq!(d, vec![frac(1, 2), frac(-1, 2), int(0)]);
    }

    #[test]
    fn rank_raise_rejects_full_rank() {
        let lp = LinearProgram::from_integers(&[vec![1, 0], vec![0, 1]], &[1, 1], &[1, 1]).unwrap();
        assert!(matches!(raise_rank_preserving_delta(&lp), Err(Error::Precondition(_))));
    }

    #[test]
    fn box_contains_every_vertex_strictly() {
        let lp = LinearProgram::from_integers(
            &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            &[1, 1, 0, 0],
            &[1, 1],
        )
        .unwrap();
        let boxed = bound_polytope(&lp).unwrap();
        assert_eq!(boxed.num_rows(), 8);
        assert!(to_f64(&box_radius(&lp)) > 2f64.sqrt());
        let v = vec![int(1), int(1)];
        for i in boxed.rows_of_kind(RowKind::Box) {
            assert!(boxed.slack(i, &v).is_positive());
        }
    }
}
