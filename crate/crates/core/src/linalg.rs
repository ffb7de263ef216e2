//! Dense linear algebra over exact rationals and over `f64`.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Exact routines never lose
//! precision; float routines use partial pivoting and report singularity
//! when a pivot falls below a scale-relative threshold.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{dot, dot_f64, norm_f64, Rational};

const FLOAT_SINGULAR_TOL: f64 = 1e-12;

fn check_square<T>(matrix: &[Vec<T>], rhs_len: Option<usize>) -> Result<usize> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("matrix with {n} rows is not square")));
    }
    if let Some(len) = rhs_len {
        if len != n {
            return Err(Error::Dimension(format!("rhs has {len} entries, matrix has {n} rows")));
        }
    }
    Ok(n)
}

/// Solves `M x = rhs` exactly.
pub fn solve_exact(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = check_square(matrix, Some(rhs.len()))?;
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::Singular)?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Solves `M x = rhs` in floating point with partial pivoting.
pub fn solve_f64(matrix: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = check_square(matrix, Some(rhs.len()))?;
    let scale = matrix.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 && n > 0 {
        return Err(Error::Singular);
    }
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() <= FLOAT_SINGULAR_TOL * scale {
            return Err(Error::Singular);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r][k] -= f * a[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Ok(x)
}

/// Exact inverse `M` with `matrix · M = I`. Column `p` of `M` pairs with row
/// `p` of `matrix`.
pub fn inverse_exact(matrix: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = check_square(matrix, None)?;
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &p;
        }
        for v in inv[col].iter_mut() {
            *v *= &p;
        }
        let (prow, pinv) = (a[col].clone(), inv[col].clone());
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (v, q) in a[r].iter_mut().zip(&prow) {
                if !q.is_zero() {
                    *v -= &f * q;
                }
            }
            for (v, q) in inv[r].iter_mut().zip(&pinv) {
                if !q.is_zero() {
                    *v -= &f * q;
                }
            }
        }
    }
    Ok(inv)
}

/// Columns of `matrix⁻¹` in floating point: entry `k` of the result is the
/// `k`-th column.
pub fn inverse_columns(matrix: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = check_square(matrix, None)?;
    (0..n)
        .map(|k| {
            let mut e = vec![0.0; n];
            e[k] = 1.0;
            solve_f64(matrix, &e)
        })
        .collect()
}

/// Exact determinant by fraction-free elimination over rationals.
pub fn determinant_exact(matrix: &[Vec<Rational>]) -> Result<Rational> {
    let n = check_square(matrix, None)?;
    let mut a = matrix.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            let prow = a[col].clone();
            for (v, q) in a[r][col..].iter_mut().zip(&prow[col..]) {
                *v -= &f * q;
            }
        }
    }
    Ok(det)
}

/// Incremental exact row-echelon basis used for independence tests.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn is_independent(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Inserts `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pc].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // keep existing rows reduced in the new pivot column
        for (_, row) in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, q) in row.iter_mut().zip(&r) {
                if !q.is_zero() {
                    *x -= &f * q;
                }
            }
        }
        self.rows.push((pc, r));
        true
    }
}

pub fn rank_exact(rows: &[Vec<Rational>]) -> usize {
    let mut basis = EchelonBasis::new();
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// Indices of the lexicographically first maximal independent subset of rows.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis = EchelonBasis::new();
    rows.iter()
        .enumerate()
        .filter_map(|(i, r)| basis.insert(r).then_some(i))
        .collect()
}

/// Mutually orthogonal (unnormalized) exact basis of the span of `rows`.
pub fn orthogonal_basis_exact(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut basis: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for r in rows {
        let v = residual_against(r, &basis);
        if v.iter().any(|x| !x.is_zero()) {
            let sq = dot(&v, &v);
            basis.push((v, sq));
        }
    }
    basis.into_iter().map(|(v, _)| v).collect()
}

fn residual_against(v: &[Rational], basis: &[(Vec<Rational>, Rational)]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for (q, sq) in basis {
        let coef = dot(&out, q) / sq;
        if coef.is_zero() {
            continue;
        }
        for (x, y) in out.iter_mut().zip(q) {
            if !y.is_zero() {
                *x -= &coef * y;
            }
        }
    }
    out
}

/// Component of `v` orthogonal to the span of `rows`, exactly.
pub fn orthogonal_residual(v: &[Rational], rows: &[Vec<Rational>]) -> Vec<Rational> {
    let basis: Vec<(Vec<Rational>, Rational)> = orthogonal_basis_exact(rows)
        .into_iter()
        .map(|q| {
            let sq = dot(&q, &q);
            (q, sq)
        })
        .collect();
    residual_against(v, &basis)
}

/// Exact mutually orthogonal basis of the orthogonal complement of
/// `span(rows)` in `Q^dim`, each vector scaled to a primitive integer vector.
pub fn orthogonal_complement_exact(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut basis: Vec<(Vec<Rational>, Rational)> = orthogonal_basis_exact(rows)
        .into_iter()
        .map(|q| {
            let sq = dot(&q, &q);
            (q, sq)
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut e = vec![Rational::zero(); dim];
        e[i] = Rational::from_integer(1.into());
        let v = residual_against(&e, &basis);
        if v.iter().any(|x| !x.is_zero()) {
            let v = primitive_integer(&v);
            let sq = dot(&v, &v);
            basis.push((v.clone(), sq));
            out.push(v);
        }
    }
    out
}

/// Positive rational multiple of `v` with coprime integer entries.
pub fn primitive_integer(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let mut l = num_bigint::BigInt::from(1);
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = num_bigint::BigInt::from(0);
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Orthonormal basis (in floating point) of the complement of `span(rows)`,
/// computed by two passes of Gram-Schmidt.
pub fn orthonormal_complement_basis(rows: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        if let Some(v) = gram_schmidt_step(r, &q) {
            q.push(v);
        }
    }
    let span = q.len();
    for i in 0..dim {
        if q.len() == dim {
            break;
        }
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        if let Some(v) = gram_schmidt_step(&e, &q) {
            q.push(v);
        }
    }
    q.split_off(span)
}

fn gram_schmidt_step(v: &[f64], q: &[Vec<f64>]) -> Option<Vec<f64>> {
    let original = norm_f64(v);
    if original == 0.0 {
        return None;
    }
    let mut w = v.to_vec();
    for _ in 0..2 {
        for u in q {
            let c = dot_f64(&w, u);
            for (x, y) in w.iter_mut().zip(u) {
                *x -= c * y;
            }
        }
    }
    let len = norm_f64(&w);
    // a residual this small means v lies in span(q) up to rounding
    if len <= 1e-10 * original {
        return None;
    }
    Some(w.into_iter().map(|x| x / len).collect())
}

/// Orthogonal map `Q` with `Q · axis = e1`, stored by rows: row 0 is the
/// axis itself and rows `1..n` span its orthogonal complement.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    rows: Vec<Vec<f64>>,
}

impl Rotation {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// `Q x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| dot_f64(r, x)).collect()
    }

    /// `Qᵀ y`.
    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for (r, &coef) in self.rows.iter().zip(y) {
            for (o, v) in out.iter_mut().zip(r) {
                *o += coef * v;
            }
        }
        out
    }
}

/// Completes the unit vector `v` to an orthonormal basis.
pub fn complete_orthonormal(v: &[f64]) -> Result<Rotation> {
    let n = v.len();
    let len = norm_f64(v);
    if n == 0 || (len - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!("axis must be a unit vector, has norm {len}")));
    }
    let axis: Vec<f64> = v.iter().map(|x| x / len).collect();
    let mut rows = vec![axis];
    let mut rest = orthonormal_complement_basis(&rows, n);
    rows.append(&mut rest);
    debug_assert_eq!(rows.len(), n);
    Ok(Rotation { rows })
}

pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn exact_solve_hand_example() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve_exact(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
    }

    #[test]
    fn singular_is_reported() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_exact(&a, &[int(1), int(1)]), Err(Error::Singular));
        assert_eq!(solve_f64(&[vec![1.0, 2.0], vec![2.0, 4.0]], &[1.0, 1.0]), Err(Error::Singular));
        assert_eq!(inverse_exact(&a), Err(Error::Singular));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let inv = inverse_exact(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: Rational = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(v, if i == j { int(1) } else { int(0) });
            }
        }
        assert_eq!(determinant_exact(&a).unwrap(), int(2));
    }

    #[test]
    fn independent_rows_are_lexicographically_first() {
        let a = m(&[&[1, 0, 0], &[2, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(independent_rows(&a), vec![0, 2, 4]);
        assert_eq!(rank_exact(&a), 3);
    }

    #[test]
    fn exact_complement_is_orthogonal() {
        let a = m(&[&[1, 1, 0]]);
        let comp = orthogonal_complement_exact(&a, 3);
        assert_eq!(comp.len(), 2);
        for c in &comp {
            assert!(dot(c, &a[0]).is_zero());
            assert!(c.iter().all(|x| x.denom() == &1.into()));
        }
        assert!(dot(&comp[0], &comp[1]).is_zero());
    }

    #[test]
    fn rotation_maps_axis_to_e1() {
        let s = 1.0 / 3.0_f64.sqrt();
        let rot = complete_orthonormal(&[s, s, s]).unwrap();
        let img = rot.apply(&[s, s, s]);
        assert!((img[0] - 1.0).abs() < 1e-14 && img[1].abs() < 1e-14 && img[2].abs() < 1e-14);
        let back = rot.apply_transpose(&[0.3, -0.2, 0.7]);
        let again = rot.apply(&back);
        assert!((again[0] - 0.3).abs() < 1e-14 && (again[2] - 0.7).abs() < 1e-14);
    }
}
