//! Random draws: objective perturbation, cone weights and dyadic numbers.
//!
//! Draw number `i` of a [`RandomSource`] reads the ChaCha stream `i` of the
//! seed, so every draw owns an unbounded bit string `0.b1 b2 b3 ...`. A
//! `k`-bit dyadic draw keeps the first `k` bits and the continuous mode keeps
//! 53, which makes the two modes agree up to truncation on the same seed.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::rank_exact;
use crate::num::{from_f64, norm_f64, pow2, Rational};

pub const CONTINUOUS_BITS: u32 = 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawMode {
    /// 53-bit draws with floating point pricing in the walk.
    Continuous,
    /// `bits`-bit draws with exact pricing in the walk.
    Dyadic { bits: u32 },
}

impl DrawMode {
    pub fn bits(self) -> u32 {
        match self {
            DrawMode::Continuous => CONTINUOUS_BITS,
            DrawMode::Dyadic { bits } => bits,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    mode: DrawMode,
    draws: u64,
    bits_consumed: u64,
}

impl RandomSource {
    pub fn new(seed: u64, mode: DrawMode) -> Self {
        if let DrawMode::Dyadic { bits } = mode {
            assert!(bits >= 1, "dyadic draws need at least one bit");
        }
        Self { seed, mode, draws: 0, bits_consumed: 0 }
    }

    pub fn mode(&self) -> DrawMode {
        self.mode
    }

    pub fn set_mode(&mut self, mode: DrawMode) {
        self.mode = mode;
    }

    pub fn bits_consumed(&self) -> u64 {
        self.bits_consumed
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// `j / 2^k` with `j` uniform on `0..2^k`.
    pub fn dyadic_unit_draw(&mut self, k: u32) -> Rational {
        assert!(k >= 1, "dyadic draws need at least one bit");
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.draws);
        self.draws += 1;
        self.bits_consumed += u64::from(k);
        let words = k.div_ceil(64) as usize;
        let mut j = BigUint::zero();
        for _ in 0..words {
            j = (j << 64u32) | BigUint::from(rng.next_u64());
        }
        let excess = words as u32 * 64 - k;
        j >>= excess;
        Rational::new(j.into(), pow2(i64::from(k)).to_integer())
    }

    /// A draw at the precision of the current mode.
    pub fn unit_draw(&mut self) -> Rational {
        let k = self.mode.bits();
        self.dyadic_unit_draw(k)
    }
}

/// `⌈6n log₂m + 6 log₂n + 3 log₂φ + 3 log₂(1/δ) + 12⌉` bits per draw.
pub fn bit_budget(m: usize, n: usize, phi: f64, delta: f64) -> u32 {
    let lg = |x: f64| x.log2();
    let v = 6.0 * n as f64 * lg(m as f64) + 6.0 * lg(n as f64) + 3.0 * lg(phi) + 3.0 * lg(1.0 / delta) + 12.0;
    // absorb float noise when the exact value is an integer
    (v - 1e-9).ceil().max(1.0) as u32
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedObjective {
    pub c: Vec<Rational>,
    /// Closed intervals `[lo, hi]` of length `1/φ`.
    pub intervals: Vec<(Rational, Rational)>,
}

/// Draws `c_i` uniformly from an interval of length `1/φ` that contains
/// `(c0)_i` and stays inside `[-1, 1]`.
pub fn perturb_objective(c0: &[f64], phi: f64, rng: &mut RandomSource) -> Result<PerturbedObjective> {
    let n = c0.len();
    if (norm_f64(c0) - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition("objective must be a unit vector".into()));
    }
    if !(phi >= (n as f64).sqrt() * (1.0 - 1e-12)) {
        return Err(Error::Precondition(format!("phi = {phi} is below sqrt(n)")));
    }
    let len = from_f64(phi).recip();
    let one = Rational::one();
    let mut c = Vec::with_capacity(n);
    let mut intervals = Vec::with_capacity(n);
    for &v in c0 {
        let ci = from_f64(v.clamp(-1.0, 1.0));
        let lo = if ci > &one - &len { &ci - &len } else { ci };
        let hi = &lo + &len;
        let u = rng.unit_draw();
        c.push(&lo + &len * u);
        intervals.push((lo, hi));
    }
    Ok(PerturbedObjective { c, intervals })
}

/// `λ ∈ (0, 1]^n` as `1 - draw`.
pub fn draw_lambda(n: usize, rng: &mut RandomSource) -> Vec<Rational> {
    (0..n).map(|_| Rational::one() - rng.unit_draw()).collect()
}

/// `w = -Σ λ_k u_k`. The rows are expected to have unit length in the space
/// the walk runs in.
pub fn cone_objective(rows: &[Vec<Rational>], lambda: &[Rational]) -> Result<Vec<Rational>> {
    if rows.len() != lambda.len() {
        return Err(Error::Dimension("one weight per row required".into()));
    }
    if lambda.iter().any(|l| !l.is_positive() || l > &Rational::one()) {
        return Err(Error::Precondition("weights must lie in (0, 1]".into()));
    }
    if rank_exact(rows) < rows.len() {
        return Err(Error::DependentRows);
    }
    let n = rows.first().map_or(0, Vec::len);
    let mut w = vec![Rational::zero(); n];
    for (row, l) in rows.iter().zip(lambda) {
        for (wi, ri) in w.iter_mut().zip(row) {
            if !ri.is_zero() {
                *wi -= l * ri;
            }
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int, to_f64};

    #[test]
    fn single_bit_draws_are_half_or_zero() {
        let mut rng = RandomSource::new(3, DrawMode::Dyadic { bits: 1 });
        for _ in 0..50 {
            let v = rng.unit_draw();
            assert!(v == int(0) || v == frac(1, 2));
        }
        assert_eq!(rng.bits_consumed(), 50);
    }

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RandomSource::new(42, DrawMode::Dyadic { bits: 8 });
        let mut b = RandomSource::new(42, DrawMode::Dyadic { bits: 8 });
        for _ in 0..10 {
            assert_eq!(a.unit_draw(), b.unit_draw());
        }
    }

    #[test]
    fn dyadic_draw_is_truncation_of_continuous_draw() {
        let mut cont = RandomSource::new(9, DrawMode::Continuous);
        let mut dy = RandomSource::new(9, DrawMode::Dyadic { bits: 12 });
        for _ in 0..20 {
            let x = cont.unit_draw();
            let y = dy.unit_draw();
            let scaled = (x * pow2(12)).floor() / pow2(12);
            assert_eq!(scaled, y);
        }
    }

    #[test]
    fn bit_budget_examples() {
        assert_eq!(bit_budget(2, 1, 1.0, 1.0), 18);
        assert_eq!(bit_budget(4, 2, 4.0, 0.5), 51);
        assert_eq!(bit_budget(4, 2, 8.0, 0.5), 54);
    }

    #[test]
    fn perturbation_of_e1_uses_clamped_intervals() {
        let mut rng = RandomSource::new(1, DrawMode::Continuous);
        let p = perturb_objective(&[1.0, 0.0], 2.0, &mut rng).unwrap();
        assert_eq!(p.intervals[0], (frac(1, 2), int(1)));
        assert_eq!(p.intervals[1], (int(0), frac(1, 2)));
        for (c, (lo, hi)) in p.c.iter().zip(&p.intervals) {
            assert!(lo <= c && c <= hi);
        }
        assert!(perturb_objective(&[1.0, 0.0], 1.0, &mut rng).is_err());
    }

    #[test]
    fn cone_objective_of_unit_rows() {
        let rows = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let w = cone_objective(&rows, &[int(1), int(1)]).unwrap();
        assert_eq!(w, vec![int(-1), int(-1)]);
        let dep = vec![vec![int(1), int(0)], vec![int(2), int(0)]];
        assert_eq!(cone_objective(&dep, &[int(1), int(1)]), Err(Error::DependentRows));
        assert!((to_f64(&w[0]) + 1.0).abs() < 1e-15);
    }
}
