//! Seeded instance generators.
//!
//! TU families stack a totally unimodular core with unit rows, which keeps
//! the whole matrix totally unimodular. The right hand side is built around
//! a random integral point `x*`, so every TU instance is feasible, and each
//! family carries enough rows to make the feasible region bounded.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lp_model::LinearProgram;
use crate::num::{frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TuKind {
    /// Unsigned edge-node incidence of a random bipartite multigraph whose
    /// edges cover every node, plus `-x <= -l`. Needs `n >= 2` and
    /// `m >= n + ⌈n/2⌉`.
    Incidence,
    /// Consecutive-ones rows with random signs, plus `-x <= -l` and the
    /// all-ones row. Needs `m >= n + 1`.
    Interval,
    /// Directed incidence rows `x_u - x_v` containing a spanning in-tree to
    /// node 0, plus `-x <= -l` and `x_0 <= u`. Needs `m >= 2n`.
    Network,
}

impl TuKind {
    pub fn name(self) -> &'static str {
        match self {
            TuKind::Incidence => "tu-incidence",
            TuKind::Interval => "interval-matrix",
            TuKind::Network => "network",
        }
    }

    /// Smallest `m` the family supports for `n` variables.
    pub fn min_rows(self, n: usize) -> usize {
        match self {
            TuKind::Incidence => n + n.div_ceil(2),
            TuKind::Interval => n + 1,
            TuKind::Network => 2 * n,
        }
    }
}

/// Mixes `parts` into a 64 bit seed (splitmix64 finalizer per word).
pub fn derive_seed(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for &p in parts {
        let mut z = h ^ p.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h = z ^ (z >> 31);
    }
    h
}

/// Nonzero objective with entries `p/q`, `|p| <= 5`, `1 <= q <= 4`.
fn random_objective(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    loop {
        let c: Vec<Rational> = (0..n).map(|_| frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
        if c.iter().any(|v| *v != int(0)) {
            return c;
        }
    }
}

/// TU core rows (entries in {-1, 0, 1}) for `kind`, before the unit rows.
fn tu_core(kind: TuKind, m: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let unit = |i: usize, s: i64| {
        let mut r = vec![0; n];
        r[i] = s;
        r
    };
    match kind {
        TuKind::Incidence => {
            let k = m - n;
            let mut nodes: Vec<usize> = (0..n).collect();
            nodes.shuffle(rng);
            let (left, right) = nodes.split_at(n / 2);
            let edge = |u: usize, v: usize| {
                let mut r = vec![0; n];
                r[u] = 1;
                r[v] = 1;
                r
            };
            let mut rows = Vec::with_capacity(k);
            // cover every node first
            for (i, &u) in right.iter().enumerate() {
                if i < left.len() {
                    rows.push(edge(left[i], u));
                } else {
                    rows.push(edge(*left.choose(rng).unwrap(), u));
                }
            }
            while rows.len() < k {
                rows.push(edge(*left.choose(rng).unwrap(), *right.choose(rng).unwrap()));
            }
            rows.shuffle(rng);
            rows
        }
        TuKind::Interval => {
            let mut rows: Vec<Vec<i64>> = (0..m - n - 1)
                .map(|_| {
                    let lo = rng.gen_range(0..n);
                    let hi = rng.gen_range(lo..n);
                    let s = if rng.gen_bool(0.3) { -1 } else { 1 };
                    (0..n).map(|j| if (lo..=hi).contains(&j) { s } else { 0 }).collect()
                })
                .collect();
            rows.push(vec![1; n]);
            rows
        }
        TuKind::Network => {
            let k = m - n - 1;
            let arc = |u: usize, v: usize| {
                let mut r = vec![0; n];
                r[u] += 1;
                r[v] -= 1;
                r
            };
            let mut rows = Vec::with_capacity(k + 1);
            // in-tree: every node u > 0 gets an arc to an earlier node
            for u in 1..n {
                rows.push(arc(u, rng.gen_range(0..u)));
            }
            while rows.len() < k {
                let u = rng.gen_range(0..n);
                let v = (u + rng.gen_range(1..n.max(2))) % n;
                if u != v {
                    rows.push(arc(u, v));
                }
            }
            rows.shuffle(rng);
            rows.push(unit(0, 1));
            rows
        }
    }
}

/// A feasible, bounded instance with a totally unimodular constraint matrix
/// of `m` rows and `n` columns.
pub fn generate_tu_instance(kind: TuKind, m: usize, n: usize, seed: u64) -> Result<LinearProgram> {
    if n == 0 || m < kind.min_rows(n) || (kind == TuKind::Incidence && n < 2) || (kind == TuKind::Network && n < 2) {
        return Err(Error::Dimension(format!("{} needs n >= 2 and m >= {} (got {m}x{n})", kind.name(), kind.min_rows(n))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = tu_core(kind, m, n, &mut rng);
    let x_star: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let rhs_above = |row: &[i64], rng: &mut ChaCha8Rng| -> i64 {
        row.iter().zip(&x_star).map(|(r, x)| r * x).sum::<i64>() + rng.gen_range(0..=2)
    };
    // interval rows and the in-tree come before the lower bounds; the
    // closing rows (all-ones, x_0 <= u) are part of the core
    for row in &core {
        b.push(rhs_above(row, &mut rng));
        a.push(row.clone());
    }
    for j in 0..n {
        let mut r = vec![0; n];
        r[j] = -1;
        b.push(rhs_above(&r, &mut rng));
        a.push(r);
    }
    debug_assert_eq!(a.len(), m);
    let a: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
    let b: Vec<Rational> = b.into_iter().map(int).collect();
    LinearProgram::new(a, b, random_objective(n, &mut rng))
}

/// Entries of `A`, `b` and `c` uniform in `[-range, range]`; zero rows and a
/// zero objective are redrawn. Feasibility and boundedness are arbitrary.
pub fn generate_random_integer(m: usize, n: usize, range: i64, seed: u64) -> Result<LinearProgram> {
    if m == 0 || n == 0 || range < 1 {
        return Err(Error::Dimension(format!("invalid random instance {m}x{n} with range {range}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_nonzero = |rng: &mut ChaCha8Rng| loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    };
    let a: Vec<Vec<i64>> = (0..m).map(|_| draw_nonzero(&mut rng)).collect();
    let b: Vec<i64> = (0..m).map(|_| rng.gen_range(-range..=range)).collect();
    let c = draw_nonzero(&mut rng);
    LinearProgram::from_integers(&a, &b, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::max_subdeterminant;
    use crate::oracle::{brute_force_optimum, OracleOutcome};
    use num_bigint::BigInt;

    #[test]
    fn path_graph_incidence_is_unimodular() {
        let a: Vec<Vec<Rational>> =
            [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]].iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        assert_eq!(max_subdeterminant(&a).unwrap().max(), BigInt::from(1));
    }

    #[test]
    fn interval_matrix_is_unimodular() {
        let a: Vec<Vec<Rational>> = [[1, 1, 0], [0, 1, 1], [1, 1, 1], [0, 1, 0], [1, 0, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        assert_eq!(max_subdeterminant(&a).unwrap().max(), BigInt::from(1));
    }

    #[test]
    fn generated_tu_instances_are_feasible_bounded_and_unimodular() {
        for (kind, m, n) in [(TuKind::Incidence, 6, 4), (TuKind::Interval, 7, 4), (TuKind::Network, 8, 4)] {
            for seed in 0..5 {
                let lp = generate_tu_instance(kind, m, n, seed).unwrap();
                assert_eq!((lp.num_rows(), lp.num_vars()), (m, n));
                assert_eq!(max_subdeterminant(lp.rows()).unwrap().max(), BigInt::from(1), "{kind:?} {seed}");
                assert!(matches!(brute_force_optimum(&lp).unwrap(), OracleOutcome::Optimal { .. }), "{kind:?} {seed}");
            }
        }
        assert!(generate_tu_instance(TuKind::Network, 5, 3, 0).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(generate_random_integer(5, 3, 3, 11).unwrap(), generate_random_integer(5, 3, 3, 11).unwrap());
        assert_ne!(derive_seed(&[1, 2]), derive_seed(&[2, 1]));
    }
}
