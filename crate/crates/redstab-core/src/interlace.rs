//! Real-rooted polynomials with distinct roots, strict interlacing, root
//! separation and operations on pencils of polynomials.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::num::{from_f64, int, to_f64, Rat};
use crate::poly::Poly;
use crate::roots::{self, compare_roots, sign_at_root, RootIso};

/// Strictly increasing parameters `t_1 < … < t_n`, the last possibly `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootTuple {
    finite: Vec<Rat>,
    infinite: bool,
}

impl RootTuple {
    pub fn new(finite: Vec<Rat>, infinite: bool) -> Result<Self> {
        if finite.is_empty() && !infinite {
            return Err(Error::InvalidTuple("empty tuple".to_string()));
        }
        if finite.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTuple("entries not strictly increasing".to_string()));
        }
        Ok(RootTuple { finite, infinite })
    }

    pub fn finite(finite: Vec<Rat>) -> Result<Self> {
        RootTuple::new(finite, false)
    }

    /// From binary64 entries; `f64::INFINITY` is allowed in the last slot.
    pub fn from_f64(entries: &[f64]) -> Result<Self> {
        let mut fin = Vec::new();
        let mut inf = false;
        for (i, &x) in entries.iter().enumerate() {
            if x == f64::INFINITY && i + 1 == entries.len() {
                inf = true;
            } else {
                fin.push(from_f64(x).ok_or_else(|| {
                    Error::InvalidTuple("non-finite entry before the last slot".to_string())
                })?);
            }
        }
        RootTuple::new(fin, inf)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RootTuple::finite(entries.iter().map(|&x| int(x)).collect()).expect("increasing integers")
    }

    /// Ambient degree `n`.
    pub fn n(&self) -> usize {
        self.finite.len() + usize::from(self.infinite)
    }

    pub fn finite_entries(&self) -> &[Rat] {
        &self.finite
    }

    pub fn has_infinity(&self) -> bool {
        self.infinite
    }

    /// Entries as binary64, with `+∞` for the infinite slot.
    pub fn to_f64(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.finite.iter().map(to_f64).collect();
        if self.infinite {
            v.push(f64::INFINITY);
        }
        v
    }

    /// Minimum gap between consecutive finite entries; `+∞` when fewer than two.
    pub fn sep(&self) -> f64 {
        self.finite
            .windows(2)
            .map(|w| to_f64(&(&w[1] - &w[0])))
            .fold(f64::INFINITY, f64::min)
    }

    /// Exact minimum gap, `None` when fewer than two finite entries.
    pub fn sep_exact(&self) -> Option<Rat> {
        self.finite.windows(2).map(|w| &w[1] - &w[0]).min()
    }
}

impl fmt::Display for RootTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.finite.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        if self.infinite {
            if !self.finite.is_empty() {
                write!(f, ", ")?;
            }
            write!(f, "+inf")?;
        }
        write!(f, ")")
    }
}

/// Whether `s < t < s[1]`: `s_1 < t_1 < s_2 < … < s_n < t_n`, where `+∞`
/// exceeds every finite value.
pub fn tuples_interlace(s: &RootTuple, t: &RootTuple) -> bool {
    let n = s.n();
    if t.n() != n || s.infinite {
        return false;
    }
    let tf = &t.finite;
    if tf.len() + usize::from(t.infinite) != n {
        return false;
    }
    (0..n).all(|i| {
        let lower = s.finite[i] < *tf.get(i).unwrap_or(&s.finite[i]) || tf.get(i).is_none();
        let upper = i + 1 >= n || tf.get(i).is_some_and(|x| *x < s.finite[i + 1]);
        lower && upper
    })
}

/// Element of `B_n`: a nonzero polynomial of degree `n` or `n − 1` with
/// distinct real roots, certified at construction.
#[derive(Clone, Debug)]
pub struct Polynomial {
    poly: Poly,
    n: usize,
    roots: Vec<RootIso>,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.poly == o.poly
    }
}

impl Polynomial {
    pub fn new(poly: Poly, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAmbient("ambient degree must be at least 1".to_string()));
        }
        let d = poly
            .degree()
            .ok_or_else(|| Error::InvalidPolynomial("zero polynomial".to_string()))?;
        if d != n && d + 1 != n {
            return Err(Error::InvalidPolynomial(alloc::format!(
                "degree {d} is neither {n} nor {}",
                n - 1
            )));
        }
        let roots = roots::isolate(&poly)?;
        Ok(Polynomial { poly, n, roots })
    }

    /// Polynomial with degree-based ambient `n = deg`.
    pub fn with_degree(poly: Poly) -> Result<Self> {
        let n = poly.degree().unwrap_or(0);
        Polynomial::new(poly, n)
    }

    pub fn from_coeffs(c: &[Rat], n: usize) -> Result<Self> {
        Polynomial::new(Poly::new(c.to_vec()), n)
    }

    pub fn from_f64(c: &[f64], n: usize) -> Result<Self> {
        let c: Option<Vec<Rat>> = c.iter().map(|&x| from_f64(x)).collect();
        let c = c.ok_or_else(|| Error::InvalidPolynomial("non-finite coefficient".to_string()))?;
        Polynomial::new(Poly::new(c), n)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Whether the root tuple carries `+∞` (degree `n − 1`).
    pub fn has_infinite_root(&self) -> bool {
        self.degree() + 1 == self.n
    }

    pub fn root_isolation(&self) -> &[RootIso] {
        &self.roots
    }

    /// Coefficients padded to length `n + 1`.
    pub fn coeffs(&self) -> Vec<Rat> {
        self.poly.padded(self.n + 1)
    }

    pub fn largest_root(&self) -> Option<&RootIso> {
        self.roots.last()
    }
}

/// Monic polynomial with the finite entries of `t` as roots, in ambient `n(t)`.
pub fn roots_to_poly(t: &RootTuple) -> Polynomial {
    Polynomial {
        poly: Poly::from_roots(&t.finite),
        n: t.n(),
        roots: t.finite.iter().cloned().map(RootIso::exact).collect(),
    }
}

/// Sorted roots, with `+∞` appended when the degree is `n − 1`.
pub fn poly_to_roots(f: &Polynomial) -> RootTuple {
    RootTuple {
        finite: f.roots.iter().map(RootIso::value).collect(),
        infinite: f.has_infinite_root(),
    }
}

/// Minimum gap between consecutive finite roots; `+∞` for fewer than two.
pub fn sep(f: &Polynomial) -> f64 {
    f.roots
        .windows(2)
        .map(|w| {
            if w[0].is_exact() && w[1].is_exact() {
                to_f64(&(&w[1].lo - &w[0].lo))
            } else {
                w[1].approx - w[0].approx
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// Which generator's roots come first in the interlacing pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `roots(f) < roots(g) < roots(f)[1]`.
    FirstLeads,
    /// `roots(g) < roots(f) < roots(g)[1]`.
    SecondLeads,
}

fn independent(f: &Poly, g: &Poly, len: usize) -> bool {
    linalg::rank(&alloc::vec![f.padded(len), g.padded(len)]) == 2
}

/// Interlacing pattern of two elements of `B_n`, `None` when they do not
/// strictly interlace.
pub fn interlace_orientation(f: &Polynomial, g: &Polynomial) -> Result<Option<Orientation>> {
    if f.n != g.n {
        return Err(Error::AmbientMismatch { expected: f.n, found: g.n });
    }
    if !independent(&f.poly, &g.poly, f.n + 1) {
        return Err(Error::DegenerateInput);
    }
    if f.has_infinite_root() && g.has_infinite_root() {
        return Ok(None);
    }
    if f.poly.gcd(&g.poly).degree() != Some(0) {
        return Ok(None);
    }
    let mut fr = f.roots.clone();
    let mut gr = g.roots.clone();
    // Merge labels: false for f, true for g.
    let mut labels = Vec::with_capacity(fr.len() + gr.len());
    let (mut i, mut j) = (0, 0);
    while i < fr.len() || j < gr.len() {
        if j == gr.len() {
            labels.push(false);
            i += 1;
        } else if i == fr.len() {
            labels.push(true);
            j += 1;
        } else {
            match compare_roots(&f.poly, &mut fr[i], &g.poly, &mut gr[j]) {
                Ordering::Less => {
                    labels.push(false);
                    i += 1;
                }
                Ordering::Greater => {
                    labels.push(true);
                    j += 1;
                }
                Ordering::Equal => return Ok(None),
            }
        }
    }
    let alternating = |first: bool| labels.iter().enumerate().all(|(k, &l)| l == (first ^ (k % 2 == 1)));
    let n = f.n;
    let pattern = |lead: &Polynomial, other: &Polynomial, first: bool| {
        !lead.has_infinite_root() && alternating(first) && labels.len() == lead.roots.len() + other.roots.len() && lead.roots.len() == n
    };
    if pattern(f, g, false) {
        Ok(Some(Orientation::FirstLeads))
    } else if pattern(g, f, true) {
        Ok(Some(Orientation::SecondLeads))
    } else {
        Ok(None)
    }
}

/// Strict interlacing in either direction.
pub fn is_interlaced(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    Ok(interlace_orientation(f, g)?.is_some())
}

/// `f ◁ g`: interlaced with `g` negative at the largest root of `f`, or
/// `lc(g) < 0` when `deg f = n − 1`.
pub fn precedes(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    if !is_interlaced(f, g)? {
        return Ok(false);
    }
    if f.has_infinite_root() {
        return Ok(g.poly.lc().is_negative());
    }
    let Some(iso) = f.largest_root() else {
        return Ok(g.poly.lc().is_negative());
    };
    let mut iso = iso.clone();
    Ok(sign_at_root(&g.poly, &f.poly, &mut iso) < 0)
}

/// Projective line `ℓ(f, g)` of polynomials with interlaced generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    a: Polynomial,
    b: Polynomial,
    orientation: Orientation,
}

impl Pencil {
    pub fn new(a: Polynomial, b: Polynomial) -> Result<Self> {
        let orientation = interlace_orientation(&a, &b)?.ok_or(Error::NotInterlaced)?;
        Ok(Pencil { a, b, orientation })
    }

    pub fn from_polys(a: Poly, b: Poly, n: usize) -> Result<Self> {
        Pencil::new(Polynomial::new(a, n)?, Polynomial::new(b, n)?)
    }

    pub fn gen_a(&self) -> &Polynomial {
        &self.a
    }

    pub fn gen_b(&self) -> &Polynomial {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.n
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `x · gen_a + y · gen_b` without certification.
    pub fn member(&self, x: &Rat, y: &Rat) -> Poly {
        self.a.poly.scale(x).add(&self.b.poly.scale(y))
    }

    /// Binary64 coefficients of `cos θ · â + sin θ · b̂` with both generators
    /// scaled to unit max-norm.
    pub fn member_f64(&self, theta: f64) -> Vec<f64> {
        let a = unit_f64(&self.a.coeffs());
        let b = unit_f64(&self.b.coeffs());
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        a.iter().zip(&b).map(|(x, y)| c * x + s * y).collect()
    }

    /// Whether `h` lies on this line.
    pub fn contains(&self, h: &Poly) -> bool {
        let len = self.n() + 1;
        linalg::rank(&alloc::vec![self.a.coeffs(), self.b.coeffs(), h.padded(len)]) == 2
    }

    /// Whether two pencils span the same line.
    pub fn same_line(&self, o: &Pencil) -> bool {
        self.n() == o.n() && self.contains(&o.a.poly) && self.contains(&o.b.poly)
    }
}

fn unit_f64(c: &[Rat]) -> Vec<f64> {
    let v: Vec<f64> = c.iter().map(to_f64).collect();
    let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    v.iter().map(|x| x / m).collect()
}

/// Unique monic member of degree `n − 1`.
pub fn pencil_canonical(l: &Pencil) -> Polynomial {
    let n = l.n();
    let an = l.a.poly.coeff(n);
    let bn = l.b.poly.coeff(n);
    let p = if an.is_zero() {
        l.a.poly.monic()
    } else if bn.is_zero() {
        l.b.poly.monic()
    } else {
        l.a.poly.scale(&bn).sub(&l.b.poly.scale(&an)).monic()
    };
    Polynomial::new(p, n).expect("pencil members lie in B_n")
}

/// `π(ℓ) = ℓ(f − x·f_ℓ, f_ℓ)` in ambient `n − 1`, with `f` the monic degree-`n`
/// member built from the generators.
pub fn pencil_project(l: &Pencil) -> Result<Pencil> {
    let n = l.n();
    if n < 2 {
        return Err(Error::InvalidAmbient("projection needs ambient degree at least 2".to_string()));
    }
    let f = if !l.a.poly.coeff(n).is_zero() { l.a.poly.monic() } else { l.b.poly.monic() };
    project_with(l, &f)
}

/// Projection using a caller-chosen monic degree-`n` member `f` of the line.
pub fn project_with(l: &Pencil, f: &Poly) -> Result<Pencil> {
    let n = l.n();
    if n < 2 {
        return Err(Error::InvalidAmbient("projection needs ambient degree at least 2".to_string()));
    }
    if f.degree() != Some(n) || !f.lc().is_one() || !l.contains(f) {
        return Err(Error::PreconditionViolated("f must be a monic degree-n member".to_string()));
    }
    let fl = pencil_canonical(l);
    let h = f.sub(&fl.poly.mul_x());
    Pencil::from_polys(h, fl.poly, n - 1)
}

/// Unique member vanishing at `r`, scaled to be monic.
pub fn member_with_root(l: &Pencil, r: &Rat) -> Polynomial {
    let p = l.member(&l.b.poly.eval(r), &-l.a.poly.eval(r)).monic();
    Polynomial::new(p, l.n()).expect("pencil members lie in B_n")
}

/// `ℓ(f(x), f(x + m))` for `0 < m < sep(f)`.
pub fn shift_pencil(f: &Polynomial, m: &Rat) -> Result<Pencil> {
    if !m.is_positive() {
        return Err(Error::InvalidParams("shift must be positive".to_string()));
    }
    if f.has_infinite_root() {
        return Err(Error::PreconditionViolated("f must have degree n".to_string()));
    }
    let exact_sep = if f.roots.iter().all(RootIso::is_exact) {
        f.roots.windows(2).map(|w| &w[1].lo - &w[0].lo).min()
    } else {
        None
    };
    let too_small = match exact_sep {
        Some(s) => *m >= s,
        None => to_f64(m) >= sep(f),
    };
    if too_small {
        return Err(Error::SepTooSmall { m: to_f64(m), sep: sep(f) });
    }
    Pencil::from_polys(f.poly.clone(), f.poly.shift(m), f.n)
}

/// Sampled estimate of `sep(ℓ) = min { sep(f) : f ∈ ℓ }`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SepEstimate {
    pub value: f64,
    pub theta: f64,
    /// Always false: the sampling resolution is heuristic.
    pub certified: bool,
}

/// Coarse angle count for [`sep_pencil`].
pub const SEP_ANGLES: usize = 720;

fn sep_of_coeffs(c: &[f64]) -> f64 {
    let r = roots::real_roots_f64(c, 1e-12);
    r.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// Minimum root separation over the pencil: 720 angles on `[0, π)` followed
/// by golden-section refinement to `1e-10` around the best angle.
pub fn sep_pencil(l: &Pencil) -> SepEstimate {
    sep_pencil_with(l, SEP_ANGLES, 1e-10)
}

pub fn sep_pencil_with(l: &Pencil, angles: usize, tol: f64) -> SepEstimate {
    let pi = core::f64::consts::PI;
    let a = unit_f64(&l.a.coeffs());
    let b = unit_f64(&l.b.coeffs());
    let member = |theta: f64| -> f64 {
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        let m: Vec<f64> = a.iter().zip(&b).map(|(x, y)| c * x + s * y).collect();
        sep_of_coeffs(&m)
    };
    let step = pi / angles as f64;
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..angles {
        let th = k as f64 * step;
        let v = member(th);
        if v < best.0 {
            best = (v, th);
        }
    }
    if best.0.is_infinite() {
        return SepEstimate { value: f64::INFINITY, theta: 0.0, certified: false };
    }
    let g = 0.5 * (libm::sqrt(5.0) - 1.0);
    let (mut lo, mut hi) = (best.1 - step, best.1 + step);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (member(x1), member(x2));
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = member(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = member(x2);
        }
        if f1 < best.0 {
            best = (f1, x1);
        }
        if f2 < best.0 {
            best = (f2, x2);
        }
    }
    let theta = best.1.rem_euclid(pi);
    SepEstimate { value: best.0, theta, certified: false }
}

/// Default doubling budget for [`stabilizing_shift`].
pub const SHIFT_BUDGET: usize = 40;

/// Smallest power of two `N` (found by doubling) with
/// `sep(ℓ(f(x), (x + N) g(x))) > d`.
pub fn stabilizing_shift(f: &Polynomial, g: &Polynomial, d: f64) -> Result<Rat> {
    stabilizing_shift_with(f, g, d, SHIFT_BUDGET)
}

pub fn stabilizing_shift_with(f: &Polynomial, g: &Polynomial, d: f64, budget: usize) -> Result<Rat> {
    let n = f.n;
    if f.has_infinite_root() || g.has_infinite_root() || g.n != n {
        return Err(Error::PreconditionViolated("f and g must both have degree n".to_string()));
    }
    let base = Pencil::new(f.clone(), g.clone())
        .map_err(|_| Error::PreconditionViolated("f and g must interlace".to_string()))?;
    if base.orientation != Orientation::FirstLeads {
        return Err(Error::PreconditionViolated("need roots(f) < roots(g) < roots(f)[1]".to_string()));
    }
    let s = sep_pencil(&base).value;
    if d >= s {
        return Err(Error::PreconditionViolated(alloc::format!("d = {d} is not below sep = {s}")));
    }
    let mut big_n = Rat::one();
    for _ in 0..budget {
        let shifted = g.poly.mul(&Poly::new(alloc::vec![big_n.clone(), Rat::one()]));
        if let Ok(l) = Pencil::from_polys(f.poly.clone(), shifted, n + 1) {
            if sep_pencil(&l).value > d {
                return Ok(big_n);
            }
        }
        big_n *= int(2);
    }
    Err(Error::SearchBudgetExceeded(alloc::format!("no N up to 2^{budget} reached sep > {d}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::frac;

    fn p(c: &[i64], n: usize) -> Polynomial {
        Polynomial::new(Poly::from_ints(c), n).unwrap()
    }

    #[test]
    fn roots_to_poly_examples() {
        assert_eq!(roots_to_poly(&RootTuple::from_ints(&[0, 2])).poly(), &Poly::from_ints(&[0, -2, 1]));
        let t = RootTuple::new(alloc::vec![int(1), int(3)], true).unwrap();
        let f = roots_to_poly(&t);
        assert_eq!(f.poly(), &Poly::from_ints(&[3, -4, 1]));
        assert_eq!(f.n(), 3);
        assert_eq!(roots_to_poly(&RootTuple::from_ints(&[-1, 0, 1])).poly(), &Poly::from_ints(&[0, -1, 0, 1]));
    }

    #[test]
    fn poly_to_roots_examples() {
        assert_eq!(poly_to_roots(&p(&[0, -2, 1], 2)), RootTuple::from_ints(&[0, 2]));
        let t = poly_to_roots(&p(&[3, -4, 1], 3));
        assert_eq!(t, RootTuple::new(alloc::vec![int(1), int(3)], true).unwrap());
        assert_eq!(Polynomial::new(Poly::from_ints(&[1, 0, 1]), 2).unwrap_err(), Error::ComplexRoots);
    }

    #[test]
    fn interlacing_examples() {
        assert!(is_interlaced(&p(&[0, -2, 1], 2), &p(&[3, -4, 1], 2)).unwrap());
        assert!(!is_interlaced(&p(&[0, -1, 1], 2), &p(&[12, -7, 1], 2)).unwrap());
        assert!(is_interlaced(&p(&[0, -2, 1], 2), &p(&[-1, 1], 2)).unwrap());
        let f = p(&[0, -2, 1], 2);
        assert_eq!(is_interlaced(&f, &f), Err(Error::DegenerateInput));
    }

    #[test]
    fn tuple_interlace_with_infinity() {
        let s = RootTuple::from_ints(&[0, 2]);
        let t = RootTuple::new(alloc::vec![int(1)], true).unwrap();
        assert!(tuples_interlace(&s, &t));
        assert!(!tuples_interlace(&t, &s));
        assert!(tuples_interlace(&RootTuple::from_ints(&[0, 2]), &RootTuple::from_ints(&[1, 3])));
        assert!(!tuples_interlace(&RootTuple::from_ints(&[1, 3]), &RootTuple::from_ints(&[0, 2])));
    }

    #[test]
    fn sep_examples() {
        assert_eq!(sep(&roots_to_poly(&RootTuple::from_ints(&[0, 2, 5]))), 2.0);
        assert_eq!(sep(&p(&[-1, 1], 1)), f64::INFINITY);
        let t = RootTuple::new(alloc::vec![int(0), int(1), int(3)], true).unwrap();
        assert_eq!(sep(&roots_to_poly(&t)), 1.0);
    }

    #[test]
    fn canonical_members() {
        let l = Pencil::new(p(&[0, -2, 1], 2), p(&[-1, 1], 2)).unwrap();
        assert_eq!(pencil_canonical(&l).poly(), &Poly::from_ints(&[-1, 1]));
        let l = Pencil::new(p(&[0, -2, 1], 2), p(&[3, -4, 1], 2)).unwrap();
        assert_eq!(pencil_canonical(&l).poly(), &Poly::new(alloc::vec![frac(-3, 2), int(1)]));
        let l = Pencil::new(p(&[0, -1, 0, 1], 3), p(&[0, 2, -3, 1], 3));
        // (−1,0,1) vs (0,1,2) share roots: not a valid pencil.
        assert!(l.is_err());
        let l = Pencil::new(p(&[0, -1, 0, 1], 3), p(&[-6, 11, -6, 1], 3)).unwrap_err();
        assert_eq!(l, Error::NotInterlaced);
    }

    #[test]
    fn projection_example_and_choice_independence() {
        let l = Pencil::new(p(&[0, -2, 1], 2), p(&[-1, 1], 2)).unwrap();
        let pi = pencil_project(&l).unwrap();
        assert_eq!(pi.n(), 1);
        assert!(pi.contains(&Poly::from_ints(&[0, -1])));
        assert!(pi.contains(&Poly::from_ints(&[-1, 1])));
        assert_eq!(pencil_canonical(&pi).poly(), &Poly::from_ints(&[1]));
        let fl = pencil_canonical(&l);
        for c in [1, -2, 5] {
            let f = Poly::from_ints(&[0, -2, 1]).add(&fl.poly().scale(&int(c)));
            assert!(project_with(&l, &f).unwrap().same_line(&pi));
        }
        assert!(matches!(pencil_project(&pi), Err(Error::InvalidAmbient(_))));
    }

    #[test]
    fn member_with_root_examples() {
        let l = Pencil::new(p(&[0, -2, 1], 2), p(&[-1, 1], 2)).unwrap();
        assert_eq!(member_with_root(&l, &int(1)).poly(), &Poly::from_ints(&[-1, 1]));
        assert_eq!(member_with_root(&l, &int(0)).poly(), &Poly::from_ints(&[0, -2, 1]));
        assert_eq!(member_with_root(&l, &int(3)).poly(), &Poly::new(alloc::vec![frac(3, 2), frac(-7, 2), int(1)]));
    }

    #[test]
    fn shift_pencil_examples() {
        let f = roots_to_poly(&RootTuple::from_ints(&[0, 2, 4]));
        let l = shift_pencil(&f, &int(1)).unwrap();
        assert!(sep_pencil(&l).value > 1.0 - 1e-9);
        let g = roots_to_poly(&RootTuple::from_ints(&[0, 2]));
        assert!(matches!(shift_pencil(&g, &int(2)), Err(Error::SepTooSmall { .. })));
        let h = roots_to_poly(&RootTuple::from_ints(&[0, 3]));
        let l = shift_pencil(&h, &int(1)).unwrap();
        assert!(l.contains(&Poly::from_roots(&[int(-1), int(2)])));
    }

    #[test]
    fn stabilizing_shift_example() {
        let f = p(&[0, -2, 1], 2);
        let g = p(&[3, -4, 1], 2);
        let big_n = stabilizing_shift(&f, &g, 0.5).unwrap();
        let shifted = g.poly().mul(&Poly::new(alloc::vec![big_n, int(1)]));
        let l = Pencil::from_polys(f.poly().clone(), shifted, 3).unwrap();
        assert!(sep_pencil(&l).value > 0.5);
        assert!(matches!(stabilizing_shift(&f, &g, 10.0), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn precedes_sign_convention() {
        // g = (x−1)(x−3) is negative at 2, the largest root of f.
        let f = p(&[0, -2, 1], 2);
        let g = p(&[3, -4, 1], 2);
        assert!(precedes(&f, &g).unwrap());
        let mg = p(&[-3, 4, -1], 2);
        assert!(!precedes(&f, &mg).unwrap());
    }
}
