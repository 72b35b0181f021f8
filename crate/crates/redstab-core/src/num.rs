//! Exact rational scalars and conversions.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for all linear algebra.
pub type Rat = BigRational;

pub fn int(i: i64) -> Rat {
    Rat::from_integer(BigInt::from(i))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact conversion of a finite binary64 value.
pub fn from_f64(x: f64) -> Option<Rat> {
    if x.is_finite() {
        Rat::from_float(x)
    } else {
        None
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(k: usize) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

pub fn pow(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn to_f64_vec(v: &[Rat]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Smallest-denominator rational within the continued-fraction expansion of
/// `x` whose denominator stays below `max_den`, checked by `accept`.
pub fn snap<F: Fn(&Rat) -> bool>(x: f64, max_den: i64, accept: F) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = libm::floor(r);
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 || h2.abs() > (1i128 << 62) {
            break;
        }
        let cand = Rat::new(BigInt::from(h2), BigInt::from(k2));
        if accept(&cand) {
            return Some(cand);
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let f = r - a;
        if f.abs() < 1e-300 {
            break;
        }
        r = 1.0 / f;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrip_is_exact() {
        for x in [0.1, -3.75, 1e-12, 123456.789] {
            assert_eq!(to_f64(&from_f64(x).unwrap()), x);
        }
        assert!(from_f64(f64::INFINITY).is_none());
    }

    #[test]
    fn snap_finds_thirds() {
        let third = snap(1.0 / 3.0, 1000, |c| c * int(3) == int(1)).unwrap();
        assert_eq!(third, frac(1, 3));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
    }
}
