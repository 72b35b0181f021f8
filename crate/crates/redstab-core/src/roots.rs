//! Real root isolation: companion-matrix eigenvalues, Newton polishing and
//! Sturm-certified isolating intervals.

use alloc::vec::Vec;
use core::cmp::Ordering;
use nalgebra::DMatrix;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::{from_f64, int, snap, to_f64, Rat};
use crate::poly::{sign_variations_at, sign_variations_inf, Poly};

/// Isolating interval `(lo, hi]` holding exactly one root; `lo == hi` marks
/// an exactly known rational root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootIso {
    pub lo: Rat,
    pub hi: Rat,
    pub approx: f64,
}

impl RootIso {
    pub fn exact(x: Rat) -> Self {
        let approx = to_f64(&x);
        RootIso { lo: x.clone(), hi: x, approx }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Exact value when known, otherwise the binary64 approximation.
    pub fn value(&self) -> Rat {
        if self.is_exact() {
            self.lo.clone()
        } else {
            from_f64(self.approx).unwrap_or_else(|| self.hi.clone())
        }
    }
}

/// Effective degree after dropping leading coefficients below
/// `rel_tol · max|c|`.
pub fn effective_degree(c: &[f64], rel_tol: f64) -> Option<usize> {
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    (0..c.len()).rev().find(|&k| c[k].abs() > rel_tol * scale)
}

/// All complex roots of `Σ c_k x^k` via the companion matrix.
pub fn complex_roots_f64(c: &[f64]) -> Vec<(f64, f64)> {
    let Some(d) = effective_degree(c, 0.0) else {
        return Vec::new();
    };
    match d {
        0 => Vec::new(),
        1 => alloc::vec![(-c[0] / c[1], 0.0)],
        _ => {
            let mut m = DMatrix::<f64>::zeros(d, d);
            for i in 1..d {
                m[(i, i - 1)] = 1.0;
            }
            for k in 0..d {
                m[(k, d - 1)] = -c[k] / c[d];
            }
            m.complex_eigenvalues()
                .iter()
                .map(|z| (z.re, z.im))
                .collect()
        }
    }
}

fn eval_with_derivative(c: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Newton iteration from `x`, stopping on stagnation.
pub fn newton_polish(c: &[f64], mut x: f64, iters: usize) -> f64 {
    for _ in 0..iters {
        let (p, dp) = eval_with_derivative(c, x);
        if dp == 0.0 || !p.is_finite() {
            break;
        }
        let nx = x - p / dp;
        if !nx.is_finite() {
            break;
        }
        let step = (nx - x).abs();
        let (np, _) = eval_with_derivative(c, nx);
        if np.abs() > p.abs() {
            break;
        }
        x = nx;
        if step <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Sorted real parts of the roots after Newton polishing. Leading
/// coefficients below `rel_lc_tol` relative to the largest coefficient are
/// treated as zero (a degree drop).
pub fn real_roots_f64(c: &[f64], rel_lc_tol: f64) -> Vec<f64> {
    let Some(d) = effective_degree(c, rel_lc_tol) else {
        return Vec::new();
    };
    let c = &c[..=d];
    let mut r: Vec<f64> = complex_roots_f64(c)
        .into_iter()
        .map(|(re, _)| newton_polish(c, re, 8))
        .collect();
    r.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    r
}

fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / int(2)
}

/// Isolate all real roots of a squarefree polynomial whose roots are all real.
///
/// Errors with `NotDistinctRoots` on a repeated root and `ComplexRoots` when
/// the Sturm count is below the degree.
pub fn isolate(p: &Poly) -> Result<Vec<RootIso>> {
    let d = match p.degree() {
        None => return Err(Error::InvalidPolynomial("zero polynomial".into())),
        Some(d) => d,
    };
    if d == 0 {
        return Ok(Vec::new());
    }
    if !p.is_squarefree() {
        return Err(Error::NotDistinctRoots);
    }
    let chain = p.sturm_chain();
    let total = sign_variations_inf(&chain, false) - sign_variations_inf(&chain, true);
    if total < d {
        return Err(Error::ComplexRoots);
    }
    let bound = p.root_bound();
    let cf = p.to_f64();
    let approx: Vec<f64> = real_roots_f64(&cf, 0.0);
    let isos = certify(p, &chain, &bound, &approx).unwrap_or_else(|| bisect_all(p, &chain, &bound, d));
    Ok(isos.into_iter().map(|iso| finish(p, iso)).collect())
}

/// Try to certify companion approximations with midpoint separators.
fn certify(p: &Poly, chain: &[Poly], bound: &Rat, approx: &[f64]) -> Option<Vec<RootIso>> {
    let d = approx.len();
    if d == 0 || approx.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let mut seps = Vec::with_capacity(d + 1);
    seps.push(-bound.clone());
    for w in approx.windows(2) {
        let m = from_f64(0.5 * (w[0] + w[1]))?;
        if p.eval(&m).is_zero() {
            return None;
        }
        seps.push(m);
    }
    seps.push(bound.clone());
    if seps.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    let v: Vec<usize> = seps.iter().map(|s| sign_variations_at(chain, s)).collect();
    if v.windows(2).any(|w| w[0].checked_sub(w[1]) != Some(1)) {
        return None;
    }
    Some(
        (0..d)
            .map(|i| RootIso {
                lo: seps[i].clone(),
                hi: seps[i + 1].clone(),
                approx: approx[i],
            })
            .collect(),
    )
}

fn bisect_all(p: &Poly, chain: &[Poly], bound: &Rat, d: usize) -> Vec<RootIso> {
    let mut out = Vec::new();
    let lo = -bound.clone();
    let hi = bound.clone();
    let mut stack = alloc::vec![(lo.clone(), hi.clone(), sign_variations_at(chain, &lo), sign_variations_at(chain, &hi))];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va - vb;
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(RootIso { lo: a.clone(), hi: b.clone(), approx: to_f64(&midpoint(&a, &b)) });
            continue;
        }
        let m = midpoint(&a, &b);
        let vm = sign_variations_at(chain, &m);
        stack.push((a, m.clone(), va, vm));
        stack.push((m, b, vm, vb));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    debug_assert_eq!(out.len(), d);
    let _ = p;
    out
}

/// One bisection step on a non-exact interval.
pub fn bisect_step(p: &Poly, iso: &mut RootIso) {
    if iso.is_exact() {
        return;
    }
    let m = midpoint(&iso.lo, &iso.hi);
    let sm = p.sign_at(&m);
    if sm == 0 {
        *iso = RootIso::exact(m);
        return;
    }
    let shi = p.sign_at(&iso.hi);
    if shi == 0 {
        *iso = RootIso::exact(iso.hi.clone());
        return;
    }
    if sm == shi {
        iso.hi = m;
    } else {
        iso.lo = m;
    }
}

fn inside(iso: &RootIso, x: &Rat) -> bool {
    *x > iso.lo && *x <= iso.hi
}

/// Polish the approximation, snap exact rational roots, tighten the interval.
fn finish(p: &Poly, mut iso: RootIso) -> RootIso {
    if p.sign_at(&iso.hi) == 0 {
        return RootIso::exact(iso.hi);
    }
    let cf = p.to_f64();
    let width_ok = |iso: &RootIso| {
        let w = to_f64(&(&iso.hi - &iso.lo));
        w <= 1e-6 * (1.0 + iso.approx.abs())
    };
    let ax = from_f64(iso.approx);
    if !ax.as_ref().is_some_and(|x| inside(&iso, x)) {
        while !iso.is_exact() && !width_ok(&iso) {
            bisect_step(p, &mut iso);
            iso.approx = to_f64(&midpoint(&iso.lo, &iso.hi));
        }
        if iso.is_exact() {
            return iso;
        }
    }
    let x = newton_polish(&cf, iso.approx, 60);
    if from_f64(x).is_some_and(|r| inside(&iso, &r)) {
        iso.approx = x;
    }
    if let Some(r) = snap(iso.approx, 1_000_000, |c| inside(&iso, c) && p.eval(c).is_zero()) {
        return RootIso::exact(r);
    }
    // Tighten around the approximation when a sign change confirms it.
    for k in [4.0, 64.0, 4096.0] {
        let eps = k * f64::EPSILON * (1.0 + iso.approx.abs());
        let (Some(a), Some(b)) = (from_f64(iso.approx - eps), from_f64(iso.approx + eps)) else {
            break;
        };
        if a >= iso.lo && b <= iso.hi && a < b {
            let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
            if sb == 0 {
                return RootIso::exact(b);
            }
            if sa != 0 && sa != sb {
                iso.lo = a;
                iso.hi = b;
                break;
            }
        }
    }
    if !from_f64(iso.approx).is_some_and(|r| inside(&iso, &r)) {
        iso.approx = to_f64(&midpoint(&iso.lo, &iso.hi));
    }
    iso
}

/// Order two roots of (possibly different) polynomials, refining the
/// isolating intervals as needed. Returns `Equal` only for a common root.
pub fn compare_roots(p: &Poly, a: &mut RootIso, q: &Poly, b: &mut RootIso) -> Ordering {
    for _ in 0..400 {
        match (a.is_exact(), b.is_exact()) {
            (true, true) => return a.lo.cmp(&b.lo),
            (true, false) => {
                if a.lo <= b.lo {
                    return Ordering::Less;
                }
                if a.lo > b.hi {
                    return Ordering::Greater;
                }
                if q.eval(&a.lo).is_zero() {
                    return Ordering::Equal;
                }
                bisect_step(q, b);
            }
            (false, true) => return compare_roots(q, b, p, a).reverse(),
            (false, false) => {
                if a.hi <= b.lo {
                    return Ordering::Less;
                }
                if b.hi <= a.lo {
                    return Ordering::Greater;
                }
                let wa = &a.hi - &a.lo;
                let wb = &b.hi - &b.lo;
                if wa >= wb {
                    bisect_step(p, a);
                } else {
                    bisect_step(q, b);
                }
            }
        }
    }
    a.approx.partial_cmp(&b.approx).unwrap_or(Ordering::Equal)
}

/// Sign of `q` at the root of `p` isolated by `iso`.
pub fn sign_at_root(q: &Poly, p: &Poly, iso: &mut RootIso) -> i32 {
    if q.is_zero() {
        return 0;
    }
    let chain = q.sturm_chain();
    for _ in 0..400 {
        if iso.is_exact() {
            return q.sign_at(&iso.lo);
        }
        let clean = sign_variations_at(&chain, &iso.lo) == sign_variations_at(&chain, &iso.hi);
        let shi = q.sign_at(&iso.hi);
        if clean && shi != 0 {
            return shi;
        }
        bisect_step(p, iso);
    }
    let v = q.eval_f64(iso.approx);
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Number of real roots in `(a, b]` of a squarefree polynomial.
pub fn count_in(p: &Poly, a: &Rat, b: &Rat) -> usize {
    let chain = p.sturm_chain();
    sign_variations_at(&chain, a).saturating_sub(sign_variations_at(&chain, b))
}

/// Number of distinct real roots.
pub fn count_real(p: &Poly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let sq = p.divrem(&p.gcd(&p.derivative())).0;
    let chain = sq.sturm_chain();
    sign_variations_inf(&chain, false) - sign_variations_inf(&chain, true)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::frac;

    #[test]
    fn exact_integer_roots_snap() {
        let p = Poly::from_roots(&[int(-1), int(0), int(1)]);
        let r = isolate(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(RootIso::is_exact));
        assert_eq!(r[0].lo, int(-1));
        assert_eq!(r[2].lo, int(1));
    }

    #[test]
    fn irrational_roots_are_bracketed() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let r = isolate(&p).unwrap();
        assert_eq!(r.len(), 2);
        let s2 = core::f64::consts::SQRT_2;
        assert!((r[1].approx - s2).abs() < 1e-15);
        assert!(r[1].lo < from_f64(s2).unwrap() + frac(1, 1_000_000));
        assert!(!r[1].is_exact());
    }

    #[test]
    fn complex_and_repeated_roots_rejected() {
        assert_eq!(isolate(&Poly::from_ints(&[1, 0, 1])), Err(Error::ComplexRoots));
        let p = Poly::from_roots(&[int(2), int(2)]);
        assert_eq!(isolate(&p), Err(Error::NotDistinctRoots));
    }

    #[test]
    fn clustered_roots_fall_back_to_bisection() {
        let p = Poly::from_roots(&[frac(1, 1), frac(1_000_001, 1_000_000), frac(1_000_002, 1_000_000)]);
        let r = isolate(&p).unwrap();
        assert_eq!(r.len(), 3);
        for (iso, k) in r.iter().zip([0, 1, 2]) {
            let x = frac(1_000_000 + k, 1_000_000);
            assert!(iso.is_exact() && iso.lo == x || (iso.lo < x && x <= iso.hi));
        }
    }

    #[test]
    fn compare_across_polynomials() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let q = Poly::from_ints(&[-3, 0, 1]);
        let mut a = isolate(&p).unwrap()[1].clone();
        let mut b = isolate(&q).unwrap()[1].clone();
        assert_eq!(compare_roots(&p, &mut a, &q, &mut b), Ordering::Less);
        let mut c = isolate(&p).unwrap()[1].clone();
        let mut d = isolate(&p).unwrap()[1].clone();
        assert_eq!(compare_roots(&p, &mut c, &p, &mut d), Ordering::Equal);
    }

    #[test]
    fn sign_at_irrational_root() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let mut r = isolate(&p).unwrap()[1].clone();
        let q = Poly::from_ints(&[-1, 1]);
        assert_eq!(sign_at_root(&q, &p, &mut r), 1);
    }
}
