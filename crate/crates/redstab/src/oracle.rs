//! Independent reference computations for the acceptance suite.
//!
//! Nothing here calls the root isolation, interlacing, charge or
//! quadratic-form code under test: roots come from a Durand–Kerner
//! iteration, real-root counts from a self-contained Sturm sequence, and
//! charges from the polynomial correspondence rather than determinants.

use nalgebra::Complex;
use num_traits::{One, Signed, Zero};
use redstab_core::num::{factorial, int, to_f64};
use redstab_core::poly::Poly;
use redstab_core::Rat;

/// All complex roots of `Σ c_k x^k` (ascending, nonzero leading entry) by
/// simultaneous Durand–Kerner iteration.
pub fn dk_roots(c: &[f64]) -> Vec<Complex<f64>> {
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lc = c[deg];
    let a: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let radius = 1.0 + a[..deg].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..deg).map(|k| seed.powi(k as i32) * radius).collect();
    let eval = |x: Complex<f64>| a.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &k| acc * x + k);
    for _ in 0..2000 {
        let mut change: f64 = 0.0;
        for i in 0..deg {
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex::new(f64::EPSILON, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            change = change.max(step.norm() / (1.0 + z[i].norm()));
        }
        // Clustered roots stall well above machine precision; Newton polishes
        // the rest.
        if change < 1e-11 {
            break;
        }
    }
    // Newton polish on the original coefficients.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (mut p, mut dp) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
            for &k in a.iter().rev() {
                dp = dp * *zi + p;
                p = p * *zi + k;
            }
            if dp.norm() == 0.0 {
                break;
            }
            *zi -= p / dp;
        }
    }
    z
}

/// Sorted real roots when every root is real and the roots are pairwise
/// separated; `None` otherwise.
pub fn real_distinct_roots(c: &[f64]) -> Option<Vec<f64>> {
    let z = dk_roots(c);
    let scale = 1.0 + z.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if z.iter().any(|x| x.im.abs() > 1e-7 * scale) {
        return None;
    }
    let mut r: Vec<f64> = z.iter().map(|x| x.re).collect();
    r.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if r.windows(2).any(|w| w[1] - w[0] < 1e-7 * scale) {
        return None;
    }
    Some(r)
}

/// Exact polynomial membership in `B_n`: degree `n` or `n − 1`, all roots
/// real and distinct (decided numerically on the exact coefficients).
pub fn in_bn(p: &Poly, n: usize) -> Option<Vec<f64>> {
    let d = p.degree()?;
    if d + 1 < n || d > n {
        return None;
    }
    real_distinct_roots(&p.to_f64())
}

/// Number of distinct real roots by an independent exact Sturm sequence.
pub fn sturm_count(p: &Poly) -> usize {
    if p.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    let var = |positive: bool| {
        let signs: Vec<i32> = chain
            .iter()
            .map(|q| {
                let d = q.degree().unwrap_or(0);
                let s = if q.lc().is_positive() { 1 } else { -1 };
                if positive || d % 2 == 0 { s } else { -s }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    var(false) - var(true)
}

/// Determinant by fraction-based Gaussian elimination.
pub fn det(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let x = &f * &a[c][k];
                a[r][k] -= x;
            }
        }
    }
    d
}

/// Resultant of `p` (formal degree `dp`) and `q` (formal degree `dq`)
/// from the Sylvester matrix.
pub fn resultant(p: &[Rat], dp: usize, q: &[Rat], dq: usize) -> Rat {
    let size = dp + dq;
    if size == 0 {
        return Rat::one();
    }
    let coef = |c: &[Rat], k: usize| c.get(k).cloned().unwrap_or_else(Rat::zero);
    let mut m = vec![vec![Rat::zero(); size]; size];
    for i in 0..dq {
        for k in 0..=dp {
            m[i][i + k] = coef(p, dp - k);
        }
    }
    for i in 0..dp {
        for k in 0..=dq {
            m[dq + i][i + k] = coef(q, dq - k);
        }
    }
    det(m)
}

/// Lagrange interpolation through `(x_i, y_i)`.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::constant(Rat::one());
        let mut den = Rat::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::linear(xj));
                den *= xi - xj;
            }
        }
        out = out.add(&basis.scale(&(yi / den)));
    }
    out
}

/// Brute-force pencil oracle: `f`, `g` in `B_n` span a line inside `B_n`.
///
/// Checks 256 members on the projective circle plus the generators and the
/// degree-drop member, and requires that the discriminant of `f + c·g`
/// (as a polynomial in `c`, with degree-drop factors removed) has no real
/// root.
pub fn pencil_oracle(f: &Poly, g: &Poly, n: usize) -> bool {
    let k = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
    if k == 0 {
        // Constants in ambient 1: two nonzero constants are dependent.
        return false;
    }
    let member = |a: &Rat, b: &Rat| f.scale(a).add(&g.scale(b));
    let (lf, lg) = (f.coeff(k), g.coeff(k));
    // Generators and the degree-drop member, exactly.
    let mut exact: Vec<(Rat, Rat)> = vec![(int(1), int(0)), (int(0), int(1))];
    if !lg.is_zero() {
        exact.push((lg.clone(), -lf.clone()));
    }
    for (a, b) in &exact {
        let h = member(a, b);
        if h.is_zero() || in_bn(&h, n).is_none() {
            return false;
        }
    }
    // Members on the projective circle, in floating point.
    let pad = |p: &Poly| {
        let mut c = p.to_f64();
        c.resize(k + 1, 0.0);
        c
    };
    let (fc, gc) = (pad(f), pad(g));
    for j in 0..256 {
        let th = (j as f64 + 0.5) * core::f64::consts::PI / 256.0;
        let (a, b) = (th.cos(), th.sin());
        let mut h: Vec<f64> = fc.iter().zip(&gc).map(|(x, y)| a * x + b * y).collect();
        let top = h.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        while h.len() > 1 && h.last().is_some_and(|x| x.abs() <= 1e-14 * top) {
            h.pop();
        }
        let d = h.len() - 1;
        if top == 0.0 || d + 1 < n || d > n || real_distinct_roots(&h).is_none() {
            return false;
        }
    }
    // D(c) = Res(h_c, h_c') with formal degree k: the leading coefficient
    // times the discriminant, of degree at most 2k − 1 in c.
    let pts: Vec<Rat> = (0..2 * k).map(|i| int(i as i64 * 7 + 3) / int(5)).collect();
    let vals: Vec<Rat> = pts
        .iter()
        .map(|c| {
            let h = member(&int(1), c).padded(k + 1);
            let dh: Vec<Rat> = (1..=k).map(|i| &h[i] * int(i as i64)).collect();
            resultant(&h, k, &dh, k - 1)
        })
        .collect();
    let mut d = interpolate(&pts, &vals);
    if d.is_zero() {
        return false;
    }
    if !lg.is_zero() {
        let c0 = -(&lf / &lg);
        let lin = Poly::linear(&c0);
        loop {
            let (q, r) = d.divrem(&lin);
            if !r.is_zero() || q.is_zero() {
                break;
            }
            d = q;
        }
    }
    sturm_count(&d) == 0
}

/// Weights of `B_s` from the correspondence `n!·B_s(γ(x)) = ∏(x − s_i)`:
/// `w_k = k!·(−1)^{n−k}·e_{n−k}(s)/n!`.
pub fn charge_weights(s: &[Rat]) -> Vec<Rat> {
    let n = s.len();
    let mut e = vec![Rat::zero(); n + 1];
    e[0] = Rat::one();
    for x in s {
        for j in (1..=n).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    (0..=n)
        .map(|k| {
            let v = factorial(k) * &e[n - k] / factorial(n);
            if (n - k) % 2 == 0 { v } else { -v }
        })
        .collect()
}

fn dotr(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Extended value at a vertex: a finite rational or a signed infinity.
#[derive(Clone, Debug, PartialEq)]
enum Ext {
    Fin(Rat),
    Inf(i32),
}

impl Ext {
    fn sign(&self) -> i32 {
        match self {
            Ext::Fin(x) => {
                if x.is_positive() {
                    1
                } else if x.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Ext::Inf(s) => *s,
        }
    }
}

/// Whether some `s` strictly interlaced with the finite tuple `t` has
/// `B_s(v) = 0`.
///
/// `s ↦ B_s(v)` is affine in each `s_i`, so on each of the two boxes of
/// interlaced tuples its range is spanned by the vertex values, with an
/// unbounded coordinate contributing the sign of its slope.
pub fn kernel_meets_interlaced(t: &[Rat], v: &[Rat]) -> bool {
    let n = t.len();
    let eval = |s: &[Rat]| dotr(&charge_weights(s), v);
    // Orientation s < t < s[1]: s_1 ∈ (−∞, t_1), s_i ∈ (t_{i−1}, t_i).
    let below: Vec<(Option<Rat>, Option<Rat>)> = (0..n)
        .map(|i| if i == 0 { (None, Some(t[0].clone())) } else { (Some(t[i - 1].clone()), Some(t[i].clone())) })
        .collect();
    // Orientation t < s < t[1]: s_i ∈ (t_i, t_{i+1}), s_n ∈ (t_n, ∞).
    let above: Vec<(Option<Rat>, Option<Rat>)> = (0..n)
        .map(|i| if i + 1 == n { (Some(t[i].clone()), None) } else { (Some(t[i].clone()), Some(t[i + 1].clone())) })
        .collect();
    [below, above].iter().any(|bx| {
        let mut signs = Vec::new();
        for mask in 0..(1usize << n) {
            let mut s = Vec::with_capacity(n);
            let mut inf: Option<(usize, i32)> = None;
            for (i, (lo, hi)) in bx.iter().enumerate() {
                let pick_hi = mask >> i & 1 == 1;
                match (pick_hi, lo, hi) {
                    (false, Some(x), _) | (true, _, Some(x)) => s.push(x.clone()),
                    (false, None, _) => {
                        inf = Some((i, -1));
                        s.push(Rat::zero());
                    }
                    (true, _, None) => {
                        inf = Some((i, 1));
                        s.push(Rat::zero());
                    }
                }
            }
            let val = match inf {
                None => Ext::Fin(eval(&s)),
                Some((i, dir)) => {
                    let f0 = eval(&s);
                    s[i] = Rat::one();
                    let slope = eval(&s) - &f0;
                    if slope.is_zero() {
                        Ext::Fin(f0)
                    } else {
                        Ext::Inf(if slope.is_positive() { dir } else { -dir })
                    }
                }
            };
            signs.push(val.sign());
        }
        let all_zero = signs.iter().all(|&x| x == 0);
        all_zero || (signs.contains(&1) && signs.contains(&-1))
    })
}

/// `(N, M)` by exhaustive integer search.
pub fn hilb_bounds_brute(m: u64) -> (u64, u64) {
    let six_m = 6 * m as i128;
    let n = (1..).find(|&k: &i128| (k + 1) * (k + 2) * (k + 3) > six_m).unwrap();
    let big_m = (1..=m as i128 + 2).filter(|&k| k * k * (k - 4) < six_m).max().unwrap();
    (n as u64, big_m as u64)
}

/// Relative deviation `|a − b| / max(1, |a|, |b|)`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

pub fn rat_rel(a: &Rat, b: &Rat) -> f64 {
    if a == b {
        return 0.0;
    }
    rel(to_f64(a), to_f64(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use redstab_core::num::frac;

    #[test]
    fn dk_finds_roots() {
        let r = real_distinct_roots(&[-6.0, 11.0, -6.0, 1.0]).unwrap();
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(real_distinct_roots(&[1.0, 0.0, 1.0]).is_none());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_count(&Poly::from_ints(&[-1, 0, 1])), 2);
        assert_eq!(sturm_count(&Poly::from_ints(&[1, 0, 1])), 0);
        assert_eq!(sturm_count(&Poly::from_ints(&[0, 0, 1])), 1);
    }

    #[test]
    fn pencil_examples() {
        let f = Poly::from_ints(&[0, -2, 1]);
        assert!(pencil_oracle(&f, &Poly::from_ints(&[3, -4, 1]), 2));
        assert!(!pencil_oracle(&Poly::from_ints(&[0, -1, 1]), &Poly::from_ints(&[12, -7, 1]), 2));
        assert!(pencil_oracle(&f, &Poly::from_ints(&[-1, 1]), 2));
        // Roots (−1, −1/2) against (−7/8, −3/8) with non-monic generators.
        let f = Poly::new(vec![frac(-10, 3), int(-10), frac(-20, 3)]);
        let g = Poly::new(vec![frac(21, 8), int(10), int(8)]);
        assert!(pencil_oracle(&f, &g, 2));
    }

    #[test]
    fn correspondence_weights() {
        // t = (0, 2): B(v) = v₂ − v₁.
        assert_eq!(charge_weights(&[int(0), int(2)]), vec![int(0), int(-1), int(1)]);
    }

    #[test]
    fn brute_bounds() {
        assert_eq!(hilb_bounds_brute(1), (1, 3));
        assert_eq!(hilb_bounds_brute(4), (2, 4));
    }

    #[test]
    fn interlaced_kernel_scan() {
        let t = [int(0), int(2)];
        // γ(2) − γ(0): coefficients (1, 1), coherent.
        assert!(!kernel_meets_interlaced(&t, &[int(0), int(2), int(2)]));
        // γ(0) + γ(2): mixed.
        assert!(kernel_meets_interlaced(&t, &[int(2), int(2), int(2)]));
    }
}
