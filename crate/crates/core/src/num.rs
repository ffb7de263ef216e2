//! Rational number helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact value of a finite float. Every `f64` is a dyadic rational.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("non-finite float has no rational value")
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn vec_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

pub fn vec_from_f64(v: &[f64]) -> Vec<Rational> {
    v.iter().map(|&x| from_f64(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc += x * y;
    }
    acc
}

pub fn dot_f64(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}

pub fn norm_f64(a: &[f64]) -> f64 {
    dot_f64(a, a).sqrt()
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Number of binary digits of `|v|` (zero has none).
pub fn bit_length(v: &BigInt) -> u64 {
    v.bits()
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Canonical text form: reduced `p/q`, or `p` when integral.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    match token.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            if let Ok(v) = token.parse::<BigInt>() {
                return Some(Rational::from_integer(v));
            }
            // decimal literals such as 0.25 are accepted and read exactly
            let (whole, fraction) = token.split_once('.')?;
            if fraction.is_empty() || !fraction.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            let negative = whole.starts_with('-');
            let whole_abs = whole.trim_start_matches(['-', '+']);
            let digits = format!("{whole_abs}{fraction}");
            let numer: BigInt = digits.parse().ok()?;
            let denom = num_traits::pow(BigInt::from(10), fraction.len());
            let value = Rational::new(numer, denom);
            Some(if negative { -value } else { value })
        }
    }
}

pub fn pow2(exp: i64) -> Rational {
    let base = num_traits::pow(BigInt::from(2), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

pub fn max_abs_f64(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}
