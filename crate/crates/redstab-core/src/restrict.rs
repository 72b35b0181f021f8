//! Hypersurface restriction on parameters: the map `Ξ_m` on root tuples,
//! the pushforward matrix `Λ_{n−1} → Λ_n`, and restricted central charges.

use alloc::string::ToString;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::charge::{reduced_charge, un_decompose, CentralCharge, ReducedCharge};
use crate::error::{Error, Result};
use crate::interlace::{poly_to_roots, sep_pencil, Polynomial, RootTuple};
use crate::linalg::{self, Mat};
use crate::num::{factorial, frac, pow, to_f64, Rat};
use crate::poly::Poly;

fn check_sep(t: &RootTuple, m: &Rat, stage: usize) -> Result<()> {
    let ok = match t.sep_exact() {
        None => true,
        Some(s) => s > *m,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::SepViolation { stage, m: to_f64(m), sep: t.sep() })
    }
}

/// `Ξ_m(t)`: the roots of `∏(x − t_i) − ∏(x − t_i − m)`; a trailing `+∞`
/// is dropped from the product and appended to the output.
pub fn xi(t: &RootTuple, m: &Rat) -> Result<RootTuple> {
    xi_stage(t, m, 0)
}

fn xi_stage(t: &RootTuple, m: &Rat, stage: usize) -> Result<RootTuple> {
    if !m.is_positive() {
        return Err(Error::InvalidParams("restriction degree must be positive".to_string()));
    }
    if t.n() < 2 {
        return Err(Error::InvalidAmbient("restriction needs ambient degree at least 2".to_string()));
    }
    check_sep(t, m, stage)?;
    let f = Poly::from_roots(t.finite_entries());
    let diff = f.sub(&f.shift(&-m.clone()));
    let out_n = t.n() - 1;
    let p = Polynomial::new(diff, out_n).map_err(|e| match e {
        Error::NotDistinctRoots | Error::ComplexRoots => {
            Error::SepViolation { stage, m: to_f64(m), sep: t.sep() }
        }
        other => other,
    })?;
    Ok(poly_to_roots(&p))
}

/// Iterated `Ξ`, applying the degrees left to right; a separation failure
/// reports the zero-based stage.
pub fn xi_multi(t: &RootTuple, ms: &[Rat]) -> Result<RootTuple> {
    let mut cur = t.clone();
    for (stage, m) in ms.iter().enumerate() {
        cur = xi_stage(&cur, m, stage)?;
    }
    Ok(cur)
}

/// `M[j][k] = (−1)^{j−k+1} m^{j−k}/(j−k)!` for `k < j`, the map
/// `Λ_{n−1} → Λ_n` with `M γ_{n−1}(x) = γ_n(x) − γ_n(x − m)`.
pub fn pushforward_matrix(n: usize, m: &Rat) -> Mat {
    (0..=n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if k < j {
                        let e = j - k;
                        let v = pow(m, e) / factorial(e);
                        if (e + 1) % 2 == 0 { v } else { -v }
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `B ∘ M`, a functional on `Λ_{n−1}`.
pub fn pull_back(b: &ReducedCharge, m: &Rat) -> ReducedCharge {
    let n = b.n();
    let mat = pushforward_matrix(n, m);
    let w: Vec<Rat> = (0..n)
        .map(|k| (0..=n).fold(Rat::zero(), |acc, j| acc + &b.weights()[j] * &mat[j][k]))
        .collect();
    ReducedCharge::from_weights(w).expect("ambient at least 1")
}

/// Restricted central charge with its predicted parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedCharge {
    pub z: CentralCharge,
    pub s: RootTuple,
    pub t: RootTuple,
    /// Scalars with `Re = c₁' B_{Ξ(s)}`, `Im = c₂' B_{Ξ(t)}`, read from the
    /// leading weight.
    pub re_scalar: Rat,
    pub im_scalar: Rat,
    /// Largest relative deviation between the composed charge and the
    /// prediction (zero when the restricted roots are rational).
    pub max_deviation: f64,
}

fn leading_scalar(w: &[Rat], t: &RootTuple) -> Rat {
    let n = w.len() - 1;
    if t.has_infinity() {
        -w[n - 1].clone()
    } else {
        w[n].clone()
    }
}

fn deviation(w: &ReducedCharge, pred: &ReducedCharge) -> f64 {
    let scale = pred.norm_max().max(w.norm_max()).max(f64::MIN_POSITIVE);
    w.weights()
        .iter()
        .zip(pred.weights())
        .map(|(a, b)| to_f64(&(a - b)).abs() / scale)
        .fold(0.0, f64::max)
}

/// Tolerance on the composed-versus-predicted comparison.
pub const RESTRICT_TOL: f64 = 1e-10;

/// `Z ∘ ι_* = c₁m·B_{Ξ_m(s)} + i·c₂m·B_{Ξ_m(t)}` for `Z = c₁B_s + i c₂B_t`.
pub fn restrict_charge(z: &CentralCharge, m: &Rat) -> Result<RestrictedCharge> {
    let dec = un_decompose(z)
        .ok_or_else(|| Error::PreconditionViolated("Z must decompose as c1 B_s + i c2 B_t".to_string()))?;
    let sp = sep_pencil(&dec.pencil).value;
    if !(sp > to_f64(m)) {
        return Err(Error::SepViolation { stage: 0, m: to_f64(m), sep: sp });
    }
    let s = xi(&dec.s, m)?;
    let t = xi(&dec.t, m)?;
    let re = pull_back(&z.re, m);
    let im = pull_back(&z.im, m);
    let pred_re = reduced_charge(&s).scale(&(&dec.c1 * m));
    let pred_im = reduced_charge(&t).scale(&(&dec.c2 * m));
    let dev = deviation(&re, &pred_re).max(deviation(&im, &pred_im));
    if dev > RESTRICT_TOL {
        return Err(Error::DecompositionFailed(alloc::format!(
            "composed charge deviates from the restriction prediction by {dev:e}"
        )));
    }
    let re_scalar = leading_scalar(re.weights(), &s);
    let im_scalar = leading_scalar(im.weights(), &t);
    Ok(RestrictedCharge {
        z: CentralCharge { re, im },
        s,
        t,
        re_scalar,
        im_scalar,
        max_deviation: dev,
    })
}

/// Curve parameter `½(m² + m t₁ + m t₂)` of a restricted surface charge.
pub fn curve_parameter(t1: &Rat, t2: &Rat, m: &Rat) -> Rat {
    (m * m + m * t1 + m * t2) * frac(1, 2)
}

/// Closed form of `Ξ_m` on a finite threefold tuple:
/// `(2Σt + 3m ± √(2Σ_{i<j}(t_i − t_j)² − 3m²))/6`.
pub fn xi_threefold_closed_form(t: [f64; 3], m: f64) -> [f64; 2] {
    let s: f64 = t.iter().sum();
    let q = (t[0] - t[1]).powi(2) + (t[0] - t[2]).powi(2) + (t[1] - t[2]).powi(2);
    let r = libm::sqrt(2.0 * q - 3.0 * m * m);
    [(2.0 * s + 3.0 * m - r) / 6.0, (2.0 * s + 3.0 * m + r) / 6.0]
}

/// Whether `M γ_{n−1}(x) = γ_n(x) − γ_n(x − m)` holds exactly at `x`.
pub fn pushforward_identity_holds(n: usize, m: &Rat, x: &Rat) -> bool {
    use crate::charge::gamma;
    let lhs = linalg::matvec(&pushforward_matrix(n, m), gamma(x, n - 1).coords());
    let a = gamma(x, n);
    let b = gamma(&(x - m), n);
    lhs.iter()
        .zip(a.coords().iter().zip(b.coords()))
        .all(|(l, (p, q))| *l == p - q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;

    #[test]
    fn xi_examples() {
        let t = RootTuple::from_ints(&[0, 3]);
        assert_eq!(xi(&t, &int(1)).unwrap(), RootTuple::from_ints(&[2]));
        let t = RootTuple::from_ints(&[0, 2, 4]);
        let r = xi(&t, &int(1)).unwrap().to_f64();
        let s45 = libm::sqrt(45.0);
        assert!((r[0] - (15.0 - s45) / 6.0).abs() < 1e-12);
        assert!((r[1] - (15.0 + s45) / 6.0).abs() < 1e-12);
        let cf = xi_threefold_closed_form([0.0, 2.0, 4.0], 1.0);
        assert!((cf[0] - r[0]).abs() < 1e-12 && (cf[1] - r[1]).abs() < 1e-12);
        assert!(matches!(xi(&t, &int(2)), Err(Error::SepViolation { .. })));
    }

    #[test]
    fn xi_with_infinity() {
        let t = RootTuple::new(alloc::vec![int(0), int(3)], true).unwrap();
        let r = xi(&t, &int(1)).unwrap();
        assert_eq!(r, RootTuple::new(alloc::vec![int(2)], true).unwrap());
    }

    #[test]
    fn xi_multi_orders() {
        let t = RootTuple::from_ints(&[0, 3, 6]);
        assert_eq!(xi_multi(&t, &[]).unwrap(), t);
        let a = xi_multi(&t, &[int(1), int(1)]).unwrap().to_f64();
        assert_eq!(a.len(), 1);
        let b = xi_multi(&t, &[int(2), int(1)]).unwrap().to_f64();
        let c = xi_multi(&t, &[int(1), int(2)]).unwrap().to_f64();
        assert!((b[0] - c[0]).abs() < 1e-10);
    }

    #[test]
    fn pushforward_examples() {
        let m = frac(3, 2);
        let mat = pushforward_matrix(2, &m);
        // (rk, deg) ↦ (0, m·rk, m·deg − ½m²·rk)
        assert_eq!(mat[0], alloc::vec![int(0), int(0)]);
        assert_eq!(mat[1], alloc::vec![m.clone(), int(0)]);
        assert_eq!(mat[2], alloc::vec![-(&m * &m) / int(2), m.clone()]);
        for x in [-1, 0, 1, 2] {
            assert!(pushforward_identity_holds(4, &m, &int(x)));
        }
    }

    #[test]
    fn restrict_surface_to_curve() {
        let s = RootTuple::from_ints(&[-1, 3]);
        let t = RootTuple::from_ints(&[1, 5]);
        let z = CentralCharge { re: reduced_charge(&s), im: reduced_charge(&t) };
        let r = restrict_charge(&z, &int(1)).unwrap();
        assert_eq!(r.t, RootTuple::finite(alloc::vec![frac(7, 2)]).unwrap());
        assert_eq!(r.s, RootTuple::finite(alloc::vec![frac(3, 2)]).unwrap());
        assert_eq!(r.im_scalar, int(1));
        assert_eq!(r.max_deviation, 0.0);
        assert_eq!(curve_parameter(&int(1), &int(5), &int(1)), r.t.finite_entries()[0]);
    }
}
