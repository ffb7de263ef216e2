//! Brute force δ-distance and subdeterminant computations.
//!
//! For independent rows `r_1..r_n` with inverse columns `m_k`, the distance
//! of `r_k/‖r_k‖` to the span of the others is `1 / (‖r_k‖·‖m_k‖)`. Hence
//! `1/δ² = max_k ‖r_k‖²·‖m_k‖²` is rational and all comparisons use it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{inverse_columns, inverse_exact, rank_exact};
use crate::num::{is_integral, norm_sq, to_f64, Rational};

pub const SUBSET_GUARD: u128 = 1_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn guard(count: u128) -> Result<()> {
    if count > SUBSET_GUARD {
        return Err(Error::GuardExceeded { count, limit: SUBSET_GUARD });
    }
    Ok(())
}

/// `1/δ²` of a set of independent rows together with the row attaining it.
pub fn inv_delta_sq_of_rows(rows: &[Vec<Rational>]) -> Result<(Rational, usize)> {
    let inv = inverse_exact(rows).map_err(|_| Error::DependentRows)?;
    let n = rows.len();
    let mut best = (Rational::zero(), 0);
    for k in 0..n {
        let col_sq: Rational = inv.iter().map(|r| &r[k] * &r[k]).sum();
        let v = norm_sq(&rows[k]) * col_sq;
        if v > best.0 {
            best = (v, k);
        }
    }
    Ok(best)
}

/// δ of `n` independent rows.
pub fn delta_of_rows(rows: &[Vec<Rational>]) -> Result<f64> {
    let (inv_sq, _) = inv_delta_sq_of_rows(rows)?;
    Ok(1.0 / to_f64(&inv_sq).sqrt())
}

/// Float version for rows that are only available approximately.
pub fn delta_of_rows_f64(rows: &[Vec<f64>]) -> Result<f64> {
    let cols = inverse_columns(rows).map_err(|_| Error::DependentRows)?;
    let worst = rows
        .iter()
        .zip(&cols)
        .map(|(r, c)| crate::num::norm_f64(r) * crate::num::norm_f64(c))
        .fold(0.0_f64, f64::max);
    Ok(1.0 / worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubdeterminantReport {
    /// `by_order[k-1]` is the largest `|det|` of a `k×k` submatrix.
    pub by_order: Vec<BigInt>,
}

impl SubdeterminantReport {
    pub fn max(&self) -> BigInt {
        self.by_order.iter().max().cloned().unwrap_or_default()
    }

    pub fn order(&self, k: usize) -> BigInt {
        if k == 0 {
            return BigInt::one();
        }
        self.by_order.get(k - 1).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaReport {
    pub inv_delta_sq: Rational,
    pub delta: f64,
    pub witness_rows: Vec<usize>,
    /// Position within `witness_rows` of the row closest to the span of the rest.
    pub witness_position: usize,
    pub subdeterminants: Option<SubdeterminantReport>,
    /// `1/δ <= nΔ²`, when `Δ` is known.
    pub bound_ok: Option<bool>,
    /// `1/δ <= nΔ₁Δ_{n-1}`, when `Δ` is known.
    pub tight_bound_ok: Option<bool>,
}

/// Minimum δ over all bases among the rows of a full-rank matrix.
pub fn delta_matrix(a: &[Vec<Rational>]) -> Result<DeltaReport> {
    let n = a.first().map_or(0, Vec::len);
    let rank = rank_exact(a);
    if rank < n || n == 0 {
        return Err(Error::RankDeficient { rank, required: n });
    }
    guard(binomial(a.len(), n))?;
    let best = combinations(a.len(), n)
        .into_par_iter()
        .filter_map(|subset| {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| a[i].clone()).collect();
            inv_delta_sq_of_rows(&rows).ok().map(|(v, k)| (v, subset, k))
        })
        .reduce_with(|x, y| match x.0.cmp(&y.0) {
            std::cmp::Ordering::Greater => x,
            std::cmp::Ordering::Less => y,
            std::cmp::Ordering::Equal => {
                if x.1 <= y.1 {
                    x
                } else {
                    y
                }
            }
        })
        .expect("full rank matrix has a basis");
    let (inv_delta_sq, witness_rows, witness_position) = best;
    Ok(DeltaReport {
        delta: 1.0 / to_f64(&inv_delta_sq).sqrt(),
        inv_delta_sq,
        witness_rows,
        witness_position,
        subdeterminants: None,
        bound_ok: None,
        tight_bound_ok: None,
    })
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Largest absolute subdeterminant of every order of an integral matrix.
pub fn max_subdeterminant(a: &[Vec<Rational>]) -> Result<SubdeterminantReport> {
    if !a.iter().flatten().all(is_integral) {
        return Err(Error::NotIntegral);
    }
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let kmax = m.min(n);
    let total: u128 = (1..=kmax).map(|k| binomial(m, k) * binomial(n, k)).sum();
    guard(total)?;
    let ints: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|v| v.to_integer()).collect()).collect();
    let by_order = (1..=kmax)
        .map(|k| {
            let col_sets = combinations(n, k);
            combinations(m, k)
                .into_par_iter()
                .map(|rs| {
                    col_sets
                        .iter()
                        .map(|cs| {
                            let sub = rs.iter().map(|&r| cs.iter().map(|&c| ints[r][c].clone()).collect()).collect();
                            bareiss_determinant(sub).abs()
                        })
                        .max()
                        .unwrap_or_default()
                })
                .max()
                .unwrap_or_default()
        })
        .collect();
    Ok(SubdeterminantReport { by_order })
}

/// Whether `1/δ <= nΔ²`; also fills in the `nΔ₁Δ_{n-1}` comparison.
pub fn check_bounds(report: &mut DeltaReport, n: usize) -> bool {
    let Some(sub) = &report.subdeterminants else {
        return false;
    };
    let n_r = Rational::from_integer(BigInt::from(n));
    let big = Rational::from_integer(sub.max());
    let loose = &n_r * &big * &big;
    let tight = &n_r * Rational::from_integer(sub.order(1) * sub.order(n.saturating_sub(1)));
    // 1/δ <= t  <=>  1/δ² <= t²  (both sides positive)
    let ok = report.inv_delta_sq <= &loose * &loose;
    report.tight_bound_ok = Some(report.inv_delta_sq <= &tight * &tight);
    report.bound_ok = Some(ok);
    ok
}

/// δ together with `Δ` and the bound checks when `A` is integral.
pub fn analyze_matrix(a: &[Vec<Rational>]) -> Result<DeltaReport> {
    let mut report = delta_matrix(a)?;
    if a.iter().flatten().all(is_integral) {
        report.subdeterminants = Some(max_subdeterminant(a)?);
        let n = a[0].len();
        check_bounds(&mut report, n);
    }
    Ok(report)
}
