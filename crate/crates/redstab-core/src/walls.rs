//! Numerical wall loci on the reduced charge space: the surface loci `Sb_v`,
//! pairwise numerical walls, and the Hilbert-scheme bounds and emptiness
//! boundary for curves in `P³`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::Zero;

use crate::charge::{eval_charge, reduced_charge, LatticeVector};
use crate::error::{Error, Result};
use crate::interlace::RootTuple;
use crate::linalg::{self, Mat};
use crate::num::{factorial, frac, int, to_f64, Rat};
use crate::roots::real_roots_f64;

/// Relative residual bound for emitted locus points.
pub const LOCUS_TOL: f64 = 1e-10;

/// Coordinates of a locus plot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordSystem {
    /// `(p, q) = (t₁ + t₂, t₁t₂)`.
    Surface,
    /// `(X, Y) = (−Σt_i, Σ_{i<j} t_i t_j)`.
    Hilbert,
}

impl CoordSystem {
    pub fn name(self) -> &'static str {
        match self {
            CoordSystem::Surface => "surface",
            CoordSystem::Hilbert => "hilbert",
        }
    }

    pub fn axes(self) -> (&'static str, &'static str) {
        match self {
            CoordSystem::Surface => ("p", "q"),
            CoordSystem::Hilbert => ("X", "Y"),
        }
    }
}

/// Plot window `[x_min, x_max] × [y_min, y_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let ok = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite())
            && x_min < x_max
            && y_min < y_max;
        if !ok {
            return Err(Error::InvalidParams("viewport needs finite bounds with min < max".to_string()));
        }
        Ok(Viewport { x_min, x_max, y_min, y_max })
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.x_min..=self.x_max).contains(&x) && (self.y_min..=self.y_max).contains(&y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocusPoint {
    pub x: f64,
    pub y: f64,
    pub residual: f64,
}

/// Sampled locus of the characters' kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct WallLocus {
    pub characters: Vec<LatticeVector>,
    pub coords: CoordSystem,
    /// Implicit equation or parametrization in the plot coordinates.
    pub description: String,
    /// Codimension in the parameter space of root tuples.
    pub codim: usize,
    pub points: Vec<LocusPoint>,
    /// Samples dropped for exceeding `LOCUS_TOL`.
    pub rejected: usize,
}

impl WallLocus {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let step = if count > 1 { (hi - lo) / (count - 1) as f64 } else { 0.0 };
    (0..count).map(move |i| if i + 1 == count && count > 1 { hi } else { lo + step * i as f64 })
}

/// `|B_t(v)|` relative to `‖v‖·(1 + max|t_i|)^n`, evaluated exactly on the
/// binary64 tuple.
pub fn relative_residual(v: &LatticeVector, t: &[f64]) -> Option<f64> {
    let tuple = RootTuple::from_f64(t).ok()?;
    let b = reduced_charge(&tuple);
    let val = to_f64(&eval_charge(&b, v).ok()?).abs();
    let r = t.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let scale = v.norm_max().max(f64::MIN_POSITIVE) * libm::pow(1.0 + r, v.n() as f64);
    Some(val / scale)
}

/// Affine coefficients `c_i(u)` with `B_t(u) = Σ_i c_i(u) e_i(t)`, `e_0 = 1`.
fn elementary_coeffs(u: &LatticeVector) -> Vec<Rat> {
    let n = u.n();
    let c = u.coords();
    (0..=n)
        .map(|i| {
            let v = factorial(n - i) * &c[n - i] / factorial(n);
            if i % 2 == 0 { v } else { -v }
        })
        .collect()
}

/// The line `c_p·p + c_q·q + c_0 = 0` carrying `Sb_v` for ambient 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLine {
    pub cp: Rat,
    pub cq: Rat,
    pub c0: Rat,
}

impl SurfaceLine {
    pub fn eval(&self, p: f64, q: f64) -> f64 {
        to_f64(&self.cp) * p + to_f64(&self.cq) * q + to_f64(&self.c0)
    }

    pub fn describe(&self) -> String {
        format!("{}*p + {}*q + {} = 0, q < p^2/4", self.cp, self.cq, self.c0)
    }
}

/// `q·v₀/2 − p·v₁/2 + v₂ = 0`.
pub fn surface_line(v: &LatticeVector) -> Result<SurfaceLine> {
    if v.n() != 2 {
        return Err(Error::AmbientMismatch { expected: 2, found: v.n() });
    }
    let c = elementary_coeffs(v);
    Ok(SurfaceLine { cp: c[1].clone(), cq: c[2].clone(), c0: c[0].clone() })
}

/// Ordered roots of `x² − p x + q` when `q < p²/4`.
pub fn surface_tuple(p: f64, q: f64) -> Option<[f64; 2]> {
    let disc = p * p - 4.0 * q;
    if !(disc > 0.0) {
        return None;
    }
    let s = libm::sqrt(disc);
    let big = if p >= 0.0 { (p + s) / 2.0 } else { (p - s) / 2.0 };
    if big == 0.0 {
        return None;
    }
    let small = q / big;
    let (a, b) = if big > small { (small, big) } else { (big, small) };
    (a < b).then_some([a, b])
}

/// `Sb_v` for ambient 2, sampled at `samples` points across the viewport.
pub fn sb_v_surface(v: &LatticeVector, view: &Viewport, samples: usize) -> Result<WallLocus> {
    let line = surface_line(v)?;
    if line.cp.is_zero() && line.cq.is_zero() {
        return Err(Error::DegenerateInput);
    }
    let cand: Vec<(f64, f64)> = if !line.cq.is_zero() {
        let (cp, cq, c0) = (to_f64(&line.cp), to_f64(&line.cq), to_f64(&line.c0));
        linspace(view.x_min, view.x_max, samples).map(|p| (p, -(c0 + cp * p) / cq)).collect()
    } else {
        let p = to_f64(&(-&line.c0 / &line.cp));
        linspace(view.y_min, view.y_max, samples).map(|q| (p, q)).collect()
    };
    let mut points = Vec::new();
    let mut rejected = 0;
    for (p, q) in cand {
        if !view.contains(p, q) {
            continue;
        }
        let Some(t) = surface_tuple(p, q) else { continue };
        match relative_residual(v, &t) {
            Some(r) if r < LOCUS_TOL => points.push(LocusPoint { x: p, y: q, residual: r }),
            _ => rejected += 1,
        }
    }
    Ok(WallLocus {
        characters: alloc::vec![v.clone()],
        coords: CoordSystem::Surface,
        description: line.describe(),
        codim: 1,
        points,
        rejected,
    })
}

/// `(N, M)`: `N` least with `(N+1)(N+2)(N+3) > 6m`; `M` greatest with
/// `M²(M−4) < 6m` and `M ≤ m + 2`.
pub fn hilb_bounds(m: u64) -> Result<(u64, u64)> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be a positive integer".to_string()));
    }
    let six_m = 6 * m as i128;
    let cube = |k: i128| (k + 1) * (k + 2) * (k + 3);
    let mut n = libm::cbrt(six_m as f64).floor().max(1.0) as i128;
    while n > 1 && cube(n - 1) > six_m {
        n -= 1;
    }
    while cube(n) <= six_m {
        n += 1;
    }
    let second = |k: i128| k * k * (k - 4) < six_m;
    let cap = m as i128 + 2;
    let mut k = ((libm::cbrt(six_m as f64) + 5.0).ceil() as i128).min(cap);
    while k < cap && second(k + 1) {
        k += 1;
    }
    while k > 1 && !second(k) {
        k -= 1;
    }
    Ok((n as u64, k as u64))
}

/// Figure coordinates `(2t + 6m/t², t² + 12m/t)` of the double-root
/// degeneration with `t₁ = t₂ = −t` or `t₂ = t₃ = −t`.
pub fn hilb_boundary_point(m: u64, t: f64) -> (f64, f64) {
    let m = m as f64;
    (2.0 * t + 6.0 * m / (t * t), t * t + 12.0 * m / t)
}

/// Boundary curve sampled at `count` parameters in `[t_lo, t_hi] ⊂ (0, ∞)`.
/// Residuals measure the cubic and its derivative at the double root `−t`.
pub fn hilb_boundary(m: u64, t_lo: f64, t_hi: f64, count: usize) -> Result<WallLocus> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be a positive integer".to_string()));
    }
    if !(t_lo > 0.0 && t_lo <= t_hi && t_hi.is_finite()) {
        return Err(Error::InvalidParams("boundary parameter range must lie in (0, ∞)".to_string()));
    }
    let mf = m as f64;
    let points = linspace(t_lo, t_hi, count)
        .map(|t| {
            let (x, y) = hilb_boundary_point(m, t);
            let c = [6.0 * mf, y, x, 1.0];
            let r = -t;
            let f = ((r + x) * r + y) * r + 6.0 * mf;
            let df = (3.0 * r + 2.0 * x) * r + y;
            let scale = c.iter().map(|v| v.abs()).fold(0.0, f64::max) * (1.0 + t).powi(3);
            LocusPoint { x, y, residual: f.abs().max(df.abs()) / scale }
        })
        .collect();
    Ok(WallLocus {
        characters: alloc::vec![hilb_character(m)],
        coords: CoordSystem::Hilbert,
        description: format!("(2t + {}/t^2, t^2 + {}/t), t > 0", 6 * m, 12 * m),
        codim: 2,
        points,
        rejected: 0,
    })
}

/// `(1, 0, 0, −m)`, the character of the ideal sheaf of a degree-`m` curve
/// up to the lower-order terms.
pub fn hilb_character(m: u64) -> LatticeVector {
    LatticeVector::new(alloc::vec![int(1), int(0), int(0), -Rat::from_integer((m as i64).into())])
        .expect("nonempty")
}

/// Normalized `B_t(1, 0, 0, −m) = −m − t₁t₂t₃/6`.
pub fn hilb_charge(m: u64, t: &[f64; 3]) -> f64 {
    -(m as f64) - t[0] * t[1] * t[2] / 6.0
}

/// Whether `(X, Y)` carries three distinct real roots of
/// `x³ + Xx² + Yx + 6m` (the interior of the locus).
pub fn hilb_interior(m: u64, x: f64, y: f64) -> Option<[f64; 3]> {
    let c = [6.0 * m as f64, y, x, 1.0];
    let disc = cubic_discriminant(x, y, 6.0 * m as f64);
    if !(disc > 0.0) {
        return None;
    }
    let r = real_roots_f64(&c, 1e-14);
    (r.len() == 3 && r[0] < r[1] && r[1] < r[2]).then(|| [r[0], r[1], r[2]])
}

/// Discriminant of `x³ + b x² + c x + d`.
pub fn cubic_discriminant(b: f64, c: f64, d: f64) -> f64 {
    18.0 * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * c * c * c - 27.0 * d * d
}

/// Interior of `{t₁t₂t₃ = −6m, t₁ < t₂ < t₃ < 0}` sampled on a
/// `samples × samples` grid over the viewport in row-major order.
pub fn hilb_locus(m: u64, view: &Viewport, samples: usize) -> Result<WallLocus> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be a positive integer".to_string()));
    }
    let mut points = Vec::new();
    let mut rejected = 0;
    let ys: Vec<f64> = linspace(view.y_min, view.y_max, samples).collect();
    for y in ys.iter().rev() {
        for x in linspace(view.x_min, view.x_max, samples) {
            let Some(t) = hilb_interior(m, x, *y) else { continue };
            let scale = m as f64 + (t[0] * t[1] * t[2]).abs() / 6.0;
            let r = hilb_charge(m, &t).abs() / scale;
            if r < LOCUS_TOL {
                points.push(LocusPoint { x, y: *y, residual: r });
            } else {
                rejected += 1;
            }
        }
    }
    Ok(WallLocus {
        characters: alloc::vec![hilb_character(m)],
        coords: CoordSystem::Hilbert,
        description: format!("x^3 + X*x^2 + Y*x + {} has three distinct real roots", 6 * m),
        codim: 1,
        points,
        rejected,
    })
}

/// Line `Y = K·X − K² + 6m/K` of tuples with a root at `−K`, as
/// `(slope, intercept)`.
pub fn hilb_root_line(m: u64, k: u64) -> Result<(Rat, Rat)> {
    if k == 0 {
        return Err(Error::InvalidParams("K must be positive".to_string()));
    }
    let kr = Rat::from_integer((k as i64).into());
    let intercept = -(&kr * &kr) + frac(6 * m as i64, k as i64);
    Ok((kr, intercept))
}

/// The red (`t₁ = −M`) and green (`t₃ = −N`) lines of the Hilbert figure.
pub fn hilb_figure_lines(m: u64) -> Result<[(u64, Rat, Rat); 2]> {
    let (n, big_m) = hilb_bounds(m)?;
    let (sm, im) = hilb_root_line(m, big_m)?;
    let (sn, inn) = hilb_root_line(m, n)?;
    Ok([(big_m, sm, im), (n, sn, inn)])
}

/// `{t in [lo, hi]^n : B_t(v) = B_t(w) = 0}` for ambient 2 or 3.
///
/// Both conditions are affine in the elementary symmetric functions of
/// `t`; the common solution set is a point (ambient 2) or a line
/// (ambient 3), which is sampled at `samples` points and mapped back to
/// ordered real roots.
pub fn numerical_wall(
    v: &LatticeVector,
    w: &LatticeVector,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<WallLocus> {
    let n = v.n();
    if w.n() != n {
        return Err(Error::AmbientMismatch { expected: n, found: w.n() });
    }
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidAmbient("numerical walls are computed for ambient 2 and 3".to_string()));
    }
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParams("region needs finite bounds with lo < hi".to_string()));
    }
    let pair: Mat = alloc::vec![v.coords().to_vec(), w.coords().to_vec()];
    if linalg::rank(&pair) < 2 {
        return Err(Error::DependentCharacters);
    }
    let (cv, cw) = (elementary_coeffs(v), elementary_coeffs(w));
    let mut aug: Mat = [&cv, &cw]
        .iter()
        .map(|c| {
            let mut row: Vec<Rat> = c[1..].to_vec();
            row.push(-c[0].clone());
            row
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    let coords = if n == 2 { CoordSystem::Surface } else { CoordSystem::Hilbert };
    let mut locus = WallLocus {
        characters: alloc::vec![v.clone(), w.clone()],
        coords,
        description: String::new(),
        codim: 2,
        points: Vec::new(),
        rejected: 0,
    };
    if pivots.contains(&n) {
        locus.description = "empty: B_t(v) = B_t(w) = 0 is inconsistent".to_string();
        return Ok(locus);
    }
    // Two independent characters give independent affine rows, so a
    // consistent system has rank 2: a point for n = 2, a line for n = 3.
    let mut base = alloc::vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        base[p] = aug[r][n].clone();
    }
    let coeff: Mat = aug.iter().map(|r| r[..n].to_vec()).collect();
    let dir = linalg::nullspace(&coeff, n).into_iter().next();
    let e_of = |s: f64| -> Vec<f64> {
        base.iter()
            .enumerate()
            .map(|(i, b)| to_f64(b) + dir.as_ref().map_or(0.0, |d| s * to_f64(&d[i])))
            .collect()
    };
    let params: Vec<f64> = match &dir {
        None => {
            locus.description = format!("point e = ({}, {})", base[0], base[1]);
            alloc::vec![0.0]
        }
        Some(d) => {
            let rr = lo.abs().max(hi.abs());
            let bounds = [3.0 * rr, 3.0 * rr * rr, rr * rr * rr];
            let (mut s_lo, mut s_hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for i in 0..n {
                let (b, di) = (to_f64(&base[i]), to_f64(&d[i]));
                if di == 0.0 {
                    if b.abs() > bounds[i] {
                        s_lo = f64::INFINITY;
                    }
                    continue;
                }
                let (a, c) = ((-bounds[i] - b) / di, (bounds[i] - b) / di);
                s_lo = s_lo.max(a.min(c));
                s_hi = s_hi.min(a.max(c));
            }
            locus.description = format!(
                "line e = ({}, {}, {}) + s*({}, {}, {})",
                base[0], base[1], base[2], d[0], d[1], d[2]
            );
            if s_lo > s_hi {
                return Ok(locus);
            }
            linspace(s_lo, s_hi, samples).collect()
        }
    };
    for s in params {
        let e = e_of(s);
        // Monic polynomial with roots t: Σ (−1)^i e_i x^{n−i}.
        let mut c = alloc::vec![0.0; n + 1];
        for i in 0..=n {
            let ei = if i == 0 { 1.0 } else { e[i - 1] };
            c[n - i] = if i % 2 == 0 { ei } else { -ei };
        }
        let t = real_roots_f64(&c, 1e-14);
        if t.len() != n || t.windows(2).any(|p| !(p[0] < p[1])) || t[0] < lo || t[n - 1] > hi {
            continue;
        }
        let (x, y) = if n == 2 { (e[0], e[1]) } else { (-e[0], e[1]) };
        let r = relative_residual(v, &t).zip(relative_residual(w, &t)).map(|(a, b)| a.max(b));
        match r {
            Some(r) if r < LOCUS_TOL => locus.points.push(LocusPoint { x, y, residual: r }),
            _ => locus.rejected += 1,
        }
    }
    Ok(locus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::gamma;

    fn view() -> Viewport {
        Viewport::new(-6.0, 6.0, -6.0, 9.0).unwrap()
    }

    #[test]
    fn surface_lines() {
        let l = surface_line(&LatticeVector::from_ints(&[2, 0, -3])).unwrap();
        // v = (1, 0, −c) gives q = 2c.
        assert_eq!(-&l.c0 / &l.cq, int(3));
        assert!(l.cp.is_zero());
        let v = LatticeVector::new(alloc::vec![int(1), int(-1), frac(1, 2)]).unwrap();
        let loc = sb_v_surface(&v, &view(), 101).unwrap();
        assert!(!loc.is_empty());
        for p in &loc.points {
            assert!((p.y - (-1.0 - p.x)).abs() < 1e-12);
            assert!(p.y < p.x * p.x / 4.0);
            assert!(p.residual < LOCUS_TOL);
        }
        assert!(matches!(
            sb_v_surface(&LatticeVector::from_ints(&[1, 0, 0, 0]), &view(), 5),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn surface_tangent_line() {
        let v = gamma(&int(1), 2);
        let loc = sb_v_surface(&v, &view(), 201).unwrap();
        assert!(loc.points.len() > 100);
        assert!(loc.points.iter().all(|p| p.y < p.x * p.x / 4.0 && p.residual < LOCUS_TOL));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(hilb_bounds(1).unwrap(), (1, 3));
        assert_eq!(hilb_bounds(4).unwrap(), (2, 4));
        assert!(hilb_bounds(0).is_err());
    }

    #[test]
    fn boundary_example() {
        assert_eq!(hilb_boundary_point(1, 1.0), (8.0, 13.0));
        let b = hilb_boundary(2, 0.5, 5.0, 50).unwrap();
        assert!(b.max_residual() < 1e-12);
    }

    #[test]
    fn hilb_interior_points() {
        let v = Viewport::new(0.0, 20.0, 0.0, 60.0).unwrap();
        let loc = hilb_locus(1, &v, 40).unwrap();
        assert!(!loc.is_empty());
        assert!(loc.max_residual() < 1e-12);
        // (−1, −2, −3): X = 6, Y = 11.
        assert!(hilb_interior(1, 6.0, 11.0).is_some());
        assert!(hilb_interior(1, 8.0, 13.0).is_none());
    }

    #[test]
    fn figure_lines_pass_through_roots() {
        let [(k, s, i), _] = hilb_figure_lines(1).unwrap();
        assert_eq!(k, 3);
        // t = (−3, −2, −1): X = 6, Y = 11 lies on the line for K = 3.
        assert_eq!(&s * int(6) + &i, int(11));
    }

    #[test]
    fn numerical_walls() {
        let v = LatticeVector::from_ints(&[1, 0, -1]);
        assert!(matches!(numerical_wall(&v, &v, -5.0, 5.0, 10), Err(Error::DependentCharacters)));
        let w = LatticeVector::from_ints(&[0, 1, 0]);
        let loc = numerical_wall(&v, &w, -5.0, 5.0, 10).unwrap();
        assert!(loc.is_empty());
        let w = LatticeVector::from_ints(&[0, 1, 1]);
        // q = 2 and p = 2: clipped (2 ≥ 1).
        assert!(numerical_wall(&v, &w, -5.0, 5.0, 10).unwrap().is_empty());
        let v = LatticeVector::from_ints(&[1, 0, 4]);
        let w = LatticeVector::from_ints(&[0, 1, 3]);
        // q = −8, p = 6: roots −... of x² − 6x − 8.
        let loc = numerical_wall(&v, &w, -10.0, 10.0, 10).unwrap();
        assert_eq!(loc.points.len(), 1);
        assert_eq!((loc.points[0].x, loc.points[0].y), (6.0, -8.0));

        let v = hilb_character(1);
        let w = LatticeVector::from_ints(&[0, 0, 1, -3]);
        let loc = numerical_wall(&v, &w, -12.0, 0.0, 400).unwrap();
        assert!(!loc.is_empty());
        for p in &loc.points {
            assert!((p.x - 9.0).abs() < 1e-12);
            assert!(p.residual < LOCUS_TOL);
        }
    }
}
