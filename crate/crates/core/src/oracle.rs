//! Exact ground truth for small programs: vertex enumeration, extreme ray
//! enumeration and a Bland's rule simplex. Nothing here shares code with
//! the shadow vertex walk beyond the basic exact solves.

use num_traits::{One, Signed, Zero};

use crate::delta::{binomial, combinations, SUBSET_GUARD};
use crate::error::{Error, Result};
use crate::linalg::{inverse_exact, orthogonal_complement_exact, rank_exact, solve_exact};
use crate::lp_model::{BasicSolution, LinearProgram};
use crate::num::{dot, norm_f64, Rational};

fn guard(m: usize, k: usize) -> Result<()> {
    let count = binomial(m, k);
    if count > SUBSET_GUARD {
        return Err(Error::GuardExceeded { count, limit: SUBSET_GUARD });
    }
    Ok(())
}

fn submatrix(lp: &LinearProgram, rows: &[usize]) -> Vec<Vec<Rational>> {
    rows.iter().map(|&i| lp.row(i).to_vec()).collect()
}

/// Every vertex once, with the lexicographically first basis defining it.
pub fn enumerate_vertices(lp: &LinearProgram) -> Result<Vec<BasicSolution>> {
    let n = lp.num_vars();
    let rank = rank_exact(lp.rows());
    if rank < n {
        return Err(Error::RankDeficient { rank, required: n });
    }
    guard(lp.num_rows(), n)?;
    let mut out: Vec<BasicSolution> = Vec::new();
    for basis in combinations(lp.num_rows(), n) {
        let rhs: Vec<Rational> = basis.iter().map(|&i| lp.rhs()[i].clone()).collect();
        let Ok(point) = solve_exact(&submatrix(lp, &basis), &rhs) else {
            continue;
        };
        if !lp.is_feasible(&point) || out.iter().any(|v| v.point == point) {
            continue;
        }
        out.push(BasicSolution { point, basis });
    }
    Ok(out)
}

/// Extreme rays of `{d | A d <= 0}` for a full-rank `A`, one per ray.
pub fn enumerate_extreme_rays(lp: &LinearProgram) -> Result<Vec<Vec<Rational>>> {
    let n = lp.num_vars();
    guard(lp.num_rows(), n - 1)?;
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    for subset in combinations(lp.num_rows(), n - 1) {
        let rows = submatrix(lp, &subset);
        if rank_exact(&rows) != n - 1 {
            continue;
        }
        let d = orthogonal_complement_exact(&rows, n).swap_remove(0);
        for dir in [d.clone(), d.iter().map(|v| -v).collect::<Vec<_>>()] {
            let recedes = lp.rows().iter().all(|r| !dot(r, &dir).is_positive());
            if recedes && !rays.contains(&dir) {
                rays.push(dir);
            }
        }
    }
    Ok(rays)
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Infeasible,
    /// Feasible with an improving recession direction.
    UnboundedSuspicion { ray: Vec<Rational> },
}

/// Optimum by vertex and extreme ray enumeration. Rank deficient programs
/// are handled by fixing coordinates that complete the row space.
pub fn brute_force_optimum(lp: &LinearProgram) -> Result<OracleOutcome> {
    let n = lp.num_vars();
    let mut work = lp.clone();
    let mut lineality: Option<Vec<Rational>> = None;
    if rank_exact(lp.rows()) < n {
        // x ∈ P iff x − v ∈ P for v ∈ ker A, so fixing x_i = 0 for
        // coordinates completing the row space keeps feasibility.
        let mut rows = lp.rows().to_vec();
        let mut rank = rank_exact(&rows);
        let mut extra = Vec::new();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            rows.push(e.clone());
            let r = rank_exact(&rows);
            if r > rank {
                rank = r;
                extra.push(e);
            } else {
                rows.pop();
            }
        }
        let mut a = lp.rows().to_vec();
        let mut b = lp.rhs().to_vec();
        for e in extra {
            let neg: Vec<Rational> = e.iter().map(|v| -v).collect();
            a.push(e);
            b.push(Rational::zero());
            a.push(neg);
            b.push(Rational::zero());
        }
        work = LinearProgram::new(a, b, lp.objective().to_vec())?;
        for d in orthogonal_complement_exact(lp.rows(), n) {
            let v = dot(lp.objective(), &d);
            if !v.is_zero() {
                lineality = Some(if v.is_positive() { d } else { d.iter().map(|x| -x).collect() });
                break;
            }
        }
    }
    let vertices = enumerate_vertices(&work)?;
    if vertices.is_empty() {
        return Ok(OracleOutcome::Infeasible);
    }
    if let Some(ray) = lineality {
        return Ok(OracleOutcome::UnboundedSuspicion { ray });
    }
    for ray in enumerate_extreme_rays(&work)? {
        if work.objective_value(&ray).is_positive() {
            return Ok(OracleOutcome::UnboundedSuspicion { ray });
        }
    }
    let best = vertices
        .into_iter()
        .map(|v| {
            let value = lp.objective_value(&v.point);
            (value, v.point)
        })
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .unwrap();
    Ok(OracleOutcome::Optimal { point: best.1, value: best.0 })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceOutcome {
    Optimal { solution: BasicSolution, pivots: usize },
    Unbounded { ray: Vec<Rational> },
}

/// Simplex with Bland's rule on the rows: the basis row with the smallest
/// index and a negative multiplier leaves, the blocking row with the
/// smallest index enters.
pub fn reference_simplex(lp: &LinearProgram, start: &BasicSolution) -> Result<ReferenceOutcome> {
    start.verify(lp).map_err(|e| Error::Precondition(format!("inconsistent start: {e}")))?;
    let n = lp.num_vars();
    let mut basis = start.basis.clone();
    let mut x = start.point.clone();
    let mut pivots = 0;
    loop {
        let inv = inverse_exact(&submatrix(lp, &basis))?;
        // μ = A_B^{-T} c0, one multiplier per basis position
        let mu: Vec<Rational> = (0..n).map(|p| (0..n).map(|i| &inv[i][p] * &lp.objective()[i]).sum()).collect();
        let leaving = (0..n).filter(|&p| mu[p].is_negative()).min_by_key(|&p| basis[p]);
        let Some(p) = leaving else {
            basis.sort_unstable();
            return Ok(ReferenceOutcome::Optimal { solution: BasicSolution { point: x, basis }, pivots });
        };
        let d: Vec<Rational> = (0..n).map(|i| -&inv[i][p]).collect();
        let mut entering: Option<(Rational, usize)> = None;
        for j in 0..lp.num_rows() {
            if basis.contains(&j) {
                continue;
            }
            let t = dot(lp.row(j), &d);
            if !t.is_positive() {
                continue;
            }
            let ratio = lp.slack(j, &x) / t;
            if entering.as_ref().is_none_or(|(r, _)| ratio < *r) {
                entering = Some((ratio, j));
            }
        }
        let Some((theta, j)) = entering else {
            return Ok(ReferenceOutcome::Unbounded { ray: d });
        };
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi += &theta * di;
        }
        basis[p] = j;
        pivots += 1;
    }
}

/// Any vertex, found by enumeration; used to seed the reference simplex.
pub fn any_vertex(lp: &LinearProgram) -> Result<Option<BasicSolution>> {
    Ok(enumerate_vertices(lp)?.into_iter().next())
}

/// δ from the angle definition: the smallest distance of a normalized basis
/// row to the span of the other basis rows, by explicit projection.
pub fn delta_by_angles(rows: &[Vec<f64>]) -> Result<f64> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    guard(m, n)?;
    let unit: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let l = norm_f64(r);
            r.iter().map(|v| v / l).collect()
        })
        .collect();
    let mut best = f64::INFINITY;
    for subset in combinations(m, n) {
        let mut dists = Vec::with_capacity(n);
        let mut independent = true;
        for (k, &i) in subset.iter().enumerate() {
            let others: Vec<&Vec<f64>> = subset.iter().enumerate().filter(|&(q, _)| q != k).map(|(_, &j)| &unit[j]).collect();
            let dist = distance_to_span(&unit[i], &others);
            if dist < 1e-12 {
                independent = false;
                break;
            }
            dists.push(dist);
        }
        if independent {
            best = dists.into_iter().fold(best, f64::min);
        }
    }
    Ok(best)
}

fn distance_to_span(v: &[f64], span: &[&Vec<f64>]) -> f64 {
    let mut q: Vec<Vec<f64>> = Vec::new();
    for s in span {
        let mut w = s.to_vec();
        for _ in 0..2 {
            for u in &q {
                let c: f64 = w.iter().zip(u).map(|(a, b)| a * b).sum();
                w.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
            }
        }
        let l = norm_f64(&w);
        if l > 1e-12 {
            q.push(w.into_iter().map(|x| x / l).collect());
        }
    }
    let mut r = v.to_vec();
    for _ in 0..2 {
        for u in &q {
            let c: f64 = r.iter().zip(u).map(|(a, b)| a * b).sum();
            r.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
        }
    }
    norm_f64(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    fn square(c: &[i64]) -> LinearProgram {
        LinearProgram::from_integers(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[1, 1, 0, 0], c).unwrap()
    }

    #[test]
    fn square_has_four_vertices_and_optimum_one_one() {
        let lp = square(&[1, 1]);
        assert_eq!(enumerate_vertices(&lp).unwrap().len(), 4);
        let OracleOutcome::Optimal { point, value } = brute_force_optimum(&lp).unwrap() else { panic!() };
        assert_eq!(point, vec![int(1), int(1)]);
        assert_eq!(value, int(2));
    }

    #[test]
    fn empty_polyhedron() {
        let lp = LinearProgram::from_integers(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], &[0, -1, 1, 0], &[1, 0]).unwrap();
        assert!(enumerate_vertices(&lp).unwrap().is_empty());
        assert_eq!(brute_force_optimum(&lp).unwrap(), OracleOutcome::Infeasible);
    }

    #[test]
    fn cut_cube_has_ten_vertices() {
        // unit cube with the corner (1,1,1) cut by x + y + z <= 5/2
        let mut a: Vec<Vec<i64>> = Vec::new();
        let mut b = Vec::new();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 2;
            a.push(e.clone());
            b.push(2);
            e[i] = -1;
            a.push(e);
            b.push(0);
        }
        a.push(vec![2, 2, 2]);
        b.push(5);
        let lp = LinearProgram::from_integers(&a, &b, &[1, 1, 1]).unwrap();
        let v = enumerate_vertices(&lp).unwrap().len();
        // Euler: V - E + F = 2 with F = 7 facets and E = 15 edges
        assert_eq!(v, 10);
        assert_eq!(v + 7 - 15, 2);
    }

    #[test]
    fn unbounded_and_rank_deficient_cases() {
        let open = LinearProgram::from_integers(&[vec![-1, 0], vec![0, -1]], &[0, 0], &[1, 1]).unwrap();
        assert!(matches!(brute_force_optimum(&open).unwrap(), OracleOutcome::UnboundedSuspicion { .. }));
        let slab = LinearProgram::from_integers(&[vec![1, 0], vec![-1, 0]], &[1, 0], &[1, 0]).unwrap();
        assert!(matches!(brute_force_optimum(&slab).unwrap(), OracleOutcome::Optimal { .. }));
        let skew = slab.with_objective(vec![int(1), int(1)]).unwrap();
        assert!(matches!(brute_force_optimum(&skew).unwrap(), OracleOutcome::UnboundedSuspicion { .. }));
    }

    #[test]
    fn reference_simplex_walks_the_square() {
        let lp = square(&[1, 1]);
        let start = BasicSolution::from_basis(&lp, vec![2, 3]).unwrap();
        let ReferenceOutcome::Optimal { solution, .. } = reference_simplex(&lp, &start).unwrap() else { panic!() };
        assert_eq!(solution.point, vec![int(1), int(1)]);
    }

    #[test]
    fn angle_delta_of_unit_square_is_one() {
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]];
        assert!((delta_by_angles(&rows).unwrap() - 1.0).abs() < 1e-12);
    }
}
