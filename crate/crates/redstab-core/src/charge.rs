//! The lattice `Λ_n`, twisted vectors `γ_n`, reduced central charges `B_t`,
//! membership in `𝔅_n^{>d}` and `𝔘_n^{>d}`, and the sign decomposition of
//! kernel vectors.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interlace::{
    interlace_orientation, poly_to_roots, sep, sep_pencil, Orientation, Pencil, Polynomial,
    RootTuple, SepEstimate,
};
use crate::linalg::{self, det, Mat};
use crate::num::{factorial, from_f64, int, pow, to_f64, Rat};
use crate::poly::Poly;

/// Element of `Λ_n ≅ Q^{n+1}`, read as `(H^n ch_0, H^{n−1} ch_1, …, ch_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: Vec<Rat>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidAmbient("lattice vector needs n + 1 ≥ 1 coordinates".to_string()));
        }
        Ok(LatticeVector { coords })
    }

    pub fn from_ints(c: &[i64]) -> Self {
        LatticeVector::new(c.iter().map(|&x| int(x)).collect()).expect("nonempty")
    }

    pub fn from_f64(c: &[f64]) -> Result<Self> {
        let v: Option<Vec<Rat>> = c.iter().map(|&x| from_f64(x)).collect();
        LatticeVector::new(v.ok_or_else(|| Error::InvalidParams("non-finite coordinate".to_string()))?)
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector { coords: vec![Rat::zero(); n + 1] }
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn add(&self, o: &Self) -> Self {
        LatticeVector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        LatticeVector { coords: self.coords.iter().map(|a| a * s).collect() }
    }

    pub fn norm_max(&self) -> f64 {
        self.coords.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max)
    }
}

/// `γ_n(t) = (1, t, t²/2!, …, tⁿ/n!)`.
pub fn gamma(t: &Rat, n: usize) -> LatticeVector {
    LatticeVector { coords: (0..=n).map(|k| pow(t, k) / factorial(k)).collect() }
}

/// `γ_n(+∞) = (0, …, 0, 1)`.
pub fn gamma_inf(n: usize) -> LatticeVector {
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    LatticeVector { coords: c }
}

/// Binary64 twisted vector; `t = +∞` gives `e_n`.
pub fn gamma_f64(t: f64, n: usize) -> Vec<f64> {
    if t == f64::INFINITY {
        let mut v = vec![0.0; n + 1];
        v[n] = 1.0;
        return v;
    }
    let mut v = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    for k in 0..=n {
        if k > 0 {
            term *= t / k as f64;
        }
        v.push(term);
    }
    v
}

/// Twisted vectors of every entry of a tuple.
pub fn gammas(t: &RootTuple) -> Vec<LatticeVector> {
    let n = t.n();
    let mut out: Vec<LatticeVector> = t.finite_entries().iter().map(|x| gamma(x, n)).collect();
    if t.has_infinity() {
        out.push(gamma_inf(n));
    }
    out
}

/// Linear functional on `Λ_n` by its weights against `e*_0, …, e*_n`, with an
/// optional parameter cache `(c, t)` meaning the functional is `c · B_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedCharge {
    weights: Vec<Rat>,
    param: Option<(Rat, RootTuple)>,
}

impl ReducedCharge {
    pub fn from_weights(weights: Vec<Rat>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidAmbient("charge needs n + 1 ≥ 1 weights".to_string()));
        }
        Ok(ReducedCharge { weights, param: None })
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn param(&self) -> Option<&(Rat, RootTuple)> {
        self.param.as_ref()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        ReducedCharge {
            weights: self.weights.iter().map(|w| w * s).collect(),
            param: self.param.as_ref().map(|(c, t)| (c * s, t.clone())),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ReducedCharge {
            weights: self.weights.iter().zip(&o.weights).map(|(a, b)| a + b).collect(),
            param: None,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    pub fn norm_max(&self) -> f64 {
        self.weights.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max)
    }

    pub fn eval_f64(&self, v: &[f64]) -> f64 {
        self.weights.iter().zip(v).map(|(w, x)| to_f64(w) * x).sum()
    }
}

/// Square matrix with rows `γ_n(t_i)` and the column `k` removed.
fn gamma_minor(rows: &[LatticeVector], k: usize) -> Mat {
    rows.iter()
        .map(|r| r.coords.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// `C_t = 1 / det(γ_n(t_i)_j)_{i, j < n}` for a finite tuple, so that the
/// coefficient of `v_n` in `B_t(v)` is 1.
pub fn normalization(t: &RootTuple) -> Result<Rat> {
    if t.has_infinity() {
        return Err(Error::PreconditionViolated("normalization is defined for finite tuples".to_string()));
    }
    let n = t.n();
    let rows = gammas(t);
    Ok(Rat::one() / det(&gamma_minor(&rows, n)))
}

/// `B_t(v) = C_t · det(γ_n(t_1), …, γ_n(t_n), v)`; for `t_n = +∞`,
/// `B_t(v) = −B_{t_1…t_{n−1}}(v_0, …, v_{n−1})`.
pub fn reduced_charge(t: &RootTuple) -> ReducedCharge {
    let weights = charge_weights(t.finite_entries(), t.has_infinity());
    ReducedCharge { weights, param: Some((Rat::one(), t.clone())) }
}

fn charge_weights(finite: &[Rat], infinite: bool) -> Vec<Rat> {
    if infinite {
        let mut w: Vec<Rat> = charge_weights(finite, false).into_iter().map(|x| -x).collect();
        w.push(Rat::zero());
        return w;
    }
    let n = finite.len();
    if n == 0 {
        return vec![Rat::one()];
    }
    let rows: Vec<LatticeVector> = finite.iter().map(|x| gamma(x, n)).collect();
    // Cofactor expansion along the last row v.
    let cof: Vec<Rat> = (0..=n)
        .map(|k| {
            let m = det(&gamma_minor(&rows, k));
            if (n + k) % 2 == 0 { m } else { -m }
        })
        .collect();
    let lead = cof[n].clone();
    cof.into_iter().map(|c| c / &lead).collect()
}

/// Dot product of weights and coordinates.
pub fn eval_charge(b: &ReducedCharge, v: &LatticeVector) -> Result<Rat> {
    if b.n() != v.n() {
        return Err(Error::AmbientMismatch { expected: b.n(), found: v.n() });
    }
    Ok(linalg::dot(&b.weights, &v.coords))
}

/// `L(Σ a_k x^k) = Σ k!·a_k e*_k`, padded to ambient `n`.
pub fn l_map(f: &Poly, n: usize) -> Vec<Rat> {
    (0..=n).map(|k| f.coeff(k) * factorial(k)).collect()
}

/// Inverse of [`l_map`].
pub fn l_inverse(w: &[Rat]) -> Poly {
    Poly::new(w.iter().enumerate().map(|(k, x)| x / factorial(k)).collect())
}

/// `lc(f) · B_{roots(f)}`: `L(f)/n!` for degree `n`, `−L(f)/(n−1)!` for degree
/// `n − 1`.
pub fn charge_of_poly(f: &Polynomial) -> ReducedCharge {
    let n = f.n();
    let w = charge_weights_of_poly(f.poly(), n);
    ReducedCharge { weights: w, param: Some((f.poly().lc(), poly_to_roots(f))) }
}

/// Weights of [`charge_of_poly`] without root extraction.
pub fn charge_weights_of_poly(f: &Poly, n: usize) -> Vec<Rat> {
    let l = l_map(f, n);
    if f.degree() == Some(n) {
        let s = Rat::one() / factorial(n);
        l.into_iter().map(|x| x * &s).collect()
    } else {
        let s = -(Rat::one() / factorial(n - 1));
        l.into_iter().map(|x| x * &s).collect()
    }
}

/// Inverse of [`charge_of_poly`] on each degree stratum: `n!·L⁻¹(B)` when the
/// `e*_n` weight is nonzero, `−(n−1)!·L⁻¹(B)` otherwise.
pub fn poly_of_charge(b: &ReducedCharge) -> Poly {
    let n = b.n();
    let p = l_inverse(&b.weights);
    if !b.weights[n].is_zero() {
        p.scale(&factorial(n))
    } else if n == 0 {
        Poly::zero()
    } else {
        p.scale(&-factorial(n - 1))
    }
}

fn sep_exceeds(f: &Polynomial, d: f64) -> bool {
    let isos = f.root_isolation();
    if isos.iter().all(|r| r.is_exact()) {
        match (poly_to_roots(f).sep_exact(), from_f64(d)) {
            (None, _) => true,
            (Some(s), Some(d)) => s > d,
            (Some(_), None) => false,
        }
    } else {
        sep(f) > d
    }
}

/// `B = c·B_t` with `c > 0` and `sep(t) > d`; returns `(c, t)`.
pub fn in_bn(b: &ReducedCharge, d: f64) -> Option<(Rat, RootTuple)> {
    let n = b.n();
    if n == 0 {
        return None;
    }
    let f = Polynomial::new(poly_of_charge(b), n).ok()?;
    let c = f.poly().lc();
    if !c.is_positive() || !sep_exceeds(&f, d) {
        return None;
    }
    Some((c, poly_to_roots(&f)))
}

/// Central charge `Z = Re + i·Im` as two functionals on `Λ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralCharge {
    pub re: ReducedCharge,
    pub im: ReducedCharge,
}

/// Decomposition `Re = c₁B_s`, `Im = c₂B_t` of a member of `𝔘_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnDecomposition {
    pub c1: Rat,
    pub s: RootTuple,
    pub c2: Rat,
    pub t: RootTuple,
    pub pencil: Pencil,
}

/// Decompose `Z` and check the orientation and sign pattern:
/// `t < s < t[1]` with `c₁ < 0`, or `s < t < s[1]` with `c₁ > 0`.
pub fn un_decompose(z: &CentralCharge) -> Option<UnDecomposition> {
    let n = z.im.n();
    if z.re.n() != n || n == 0 {
        return None;
    }
    let (c2, t) = in_bn(&z.im, 0.0)?;
    let fs = Polynomial::new(poly_of_charge(&z.re), n).ok()?;
    let ft = Polynomial::new(poly_of_charge(&z.im), n).ok()?;
    let c1 = fs.poly().lc();
    let orient = interlace_orientation(&ft, &fs).ok()??;
    let ok = match orient {
        Orientation::FirstLeads => c1.is_negative(),
        Orientation::SecondLeads => c1.is_positive(),
    };
    if !ok {
        return None;
    }
    let s = poly_to_roots(&fs);
    let pencil = Pencil::new(fs.clone(), ft).ok()?;
    Some(UnDecomposition { c1, s, c2, t, pencil })
}

/// Membership in `𝔘_n^{>d}`; the pencil separation is a sampled estimate.
pub fn in_un(z: &CentralCharge, d: f64) -> bool {
    in_un_detail(z, d).0
}

/// Membership together with the sampled pencil separation (absent when the
/// shape checks fail or `d ≤ 0`, where interlacing alone suffices).
pub fn in_un_detail(z: &CentralCharge, d: f64) -> (bool, Option<SepEstimate>) {
    let Some(dec) = un_decompose(z) else {
        return (false, None);
    };
    if d <= 0.0 {
        return (true, None);
    }
    let s = sep_pencil(&dec.pencil);
    (s.value > d, Some(s))
}

/// Sign pattern of the decomposition coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignVerdict {
    AllNonneg,
    AllNonpos,
    Mixed,
}

impl SignVerdict {
    pub fn name(self) -> &'static str {
        match self {
            SignVerdict::AllNonneg => "ALL_NONNEG",
            SignVerdict::AllNonpos => "ALL_NONPOS",
            SignVerdict::Mixed => "MIXED",
        }
    }
}

/// Coefficients of `v = Σ (−1)^i a_i γ_n(t_i)` with a sign verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub coeffs: Vec<Rat>,
    pub verdict: SignVerdict,
    /// Some `a_i` satisfies `0 < |a_i| < 1e-8`.
    pub boundary: bool,
}

/// Coefficients within this bound count as zero for the verdict.
pub const VERDICT_ZERO: f64 = 1e-12;
/// Nonzero coefficients below this bound flag a boundary case.
pub const BOUNDARY: f64 = 1e-8;

pub fn verdict_of(coeffs: &[Rat]) -> (SignVerdict, bool) {
    let a: Vec<f64> = coeffs.iter().map(to_f64).collect();
    let boundary = coeffs
        .iter()
        .zip(&a)
        .any(|(x, f)| !x.is_zero() && f.abs() < BOUNDARY);
    let nonneg = a.iter().all(|x| *x >= -VERDICT_ZERO);
    let nonpos = a.iter().all(|x| *x <= VERDICT_ZERO);
    let verdict = if nonneg {
        SignVerdict::AllNonneg
    } else if nonpos {
        SignVerdict::AllNonpos
    } else {
        SignVerdict::Mixed
    };
    (verdict, boundary)
}

/// Solve `v = Σ_{i=1}^n (−1)^i a_i γ_n(t_i)` for `v ∈ Ker B_t`.
pub fn decompose(v: &LatticeVector, t: &RootTuple) -> Result<Decomposition> {
    let n = t.n();
    if v.n() != n {
        return Err(Error::AmbientMismatch { expected: n, found: v.n() });
    }
    let b = reduced_charge(t);
    let val = eval_charge(&b, v)?;
    if !val.is_zero() && to_f64(&val).abs() > 1e-9 * v.norm_max() * b.norm_max() {
        return Err(Error::NotInKernel);
    }
    let cols: Vec<Vec<Rat>> = gammas(t)
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            if i % 2 == 0 {
                g.coords.into_iter().map(|x| -x).collect()
            } else {
                g.coords
            }
        })
        .collect();
    // Rows 0..n−1, or rows 0..n−2 and n when t_n = +∞: an invertible block.
    let rows: Vec<usize> = if t.has_infinity() {
        (0..n - 1).chain(core::iter::once(n)).collect()
    } else {
        (0..n).collect()
    };
    let a: Mat = rows.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let rhs: Vec<Rat> = rows.iter().map(|&r| v.coords[r].clone()).collect();
    let coeffs = linalg::solve(&a, &rhs)
        .ok_or_else(|| Error::DecompositionFailed("singular twisted-vector system".to_string()))?;
    let (verdict, boundary) = verdict_of(&coeffs);
    Ok(Decomposition { coeffs, verdict, boundary })
}

/// Root tuple of the unique member of the pencil of charges `ℓ` that
/// vanishes on `v`.
pub fn kernel_parameter(l: &Pencil, v: &LatticeVector) -> Result<RootTuple> {
    let n = l.n();
    if v.n() != n {
        return Err(Error::AmbientMismatch { expected: n, found: v.n() });
    }
    let a = charge_of_poly(l.gen_a());
    let b = charge_of_poly(l.gen_b());
    let av = eval_charge(&a, v)?;
    let bv = eval_charge(&b, v)?;
    if av.is_zero() && bv.is_zero() {
        return Err(Error::InKernelOfLine);
    }
    let member = a.scale(&bv).add(&b.scale(&-av));
    let f = Polynomial::new(poly_of_charge(&member), n)?;
    Ok(poly_to_roots(&f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interlace::roots_to_poly;
    use crate::num::frac;

    fn tup(x: &[i64]) -> RootTuple {
        RootTuple::from_ints(x)
    }

    fn tup_inf(x: &[i64]) -> RootTuple {
        RootTuple::new(x.iter().map(|&v| int(v)).collect(), true).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&int(2), 3).coords(), &[int(1), int(2), int(2), frac(4, 3)]);
        assert_eq!(gamma_inf(3).coords(), &[int(0), int(0), int(0), int(1)]);
        assert_eq!(gamma(&int(0), 2).coords(), &[int(1), int(0), int(0)]);
    }

    #[test]
    fn surface_charge_formula() {
        let b = reduced_charge(&tup(&[0, 2]));
        assert_eq!(b.weights(), &[int(0), int(-1), int(1)]);
        let t = RootTuple::finite(vec![frac(3, 2)]).unwrap();
        assert_eq!(reduced_charge(&t).weights(), &[frac(-3, 2), int(1)]);
    }

    #[test]
    fn vanishing_and_normalization() {
        let t = tup(&[-1, 1, 4]);
        let b = reduced_charge(&t);
        for g in gammas(&t) {
            assert!(eval_charge(&b, &g).unwrap().is_zero());
        }
        assert_eq!(eval_charge(&b, &gamma_inf(3)).unwrap(), int(1));
        let ti = tup_inf(&[0, 3]);
        let bi = reduced_charge(&ti);
        assert!(eval_charge(&bi, &gamma_inf(3)).unwrap().is_zero());
        assert_eq!(bi.weights()[2], int(-1));
    }

    #[test]
    fn hilbert_locus_constant() {
        // B_t(1,0,0,−m) = −m − t₁t₂t₃/6 with the v₃-coefficient normalized.
        let t = tup(&[-3, -2, -1]);
        let b = reduced_charge(&t);
        let v = LatticeVector::from_ints(&[1, 0, 0, -5]);
        assert_eq!(eval_charge(&b, &v).unwrap(), int(-5) + int(1));
        // C_t = 2 / ∏_{i<j} (t_j − t_i).
        assert_eq!(normalization(&t).unwrap(), int(2) / int(2));
        assert_eq!(normalization(&tup(&[0, 1, 3])).unwrap(), int(2) / int(6));
    }

    #[test]
    fn poly_correspondence_examples() {
        let f = Polynomial::new(Poly::from_ints(&[0, -2, 1]), 2).unwrap();
        let b = charge_of_poly(&f);
        for x in -1..=3 {
            let val = eval_charge(&b, &gamma(&int(x), 2)).unwrap();
            assert_eq!(val, f.poly().eval(&int(x)) / int(2));
        }
        assert_eq!(&poly_of_charge(&b), f.poly());
        let g = Polynomial::new(Poly::from_ints(&[-1, 1]), 2).unwrap();
        let bg = charge_of_poly(&g);
        assert_eq!(bg.weights(), reduced_charge(&tup_inf(&[1])).weights());
        for x in -2..=2 {
            assert_eq!(eval_charge(&bg, &gamma(&int(x), 2)).unwrap(), -(int(x) - int(1)));
        }
        assert_eq!(&poly_of_charge(&bg), g.poly());
    }

    #[test]
    fn in_bn_examples() {
        let f = Polynomial::new(Poly::from_ints(&[0, -2, 1]), 2).unwrap();
        let b = charge_of_poly(&f).scale(&int(3));
        let (c, t) = in_bn(&b, 1.0).unwrap();
        assert_eq!(c, int(3));
        assert_eq!(t, tup(&[0, 2]));
        assert!(in_bn(&b, 2.0).is_none());
        let w = ReducedCharge::from_weights(l_map(&Poly::from_ints(&[1, 0, 1]), 2)).unwrap();
        assert!(in_bn(&w, 0.0).is_none());
        assert!(in_bn(&b.neg(), 0.0).is_none());
    }

    #[test]
    fn in_un_examples() {
        let b02 = reduced_charge(&tup(&[0, 2]));
        let b13 = reduced_charge(&tup(&[1, 3]));
        let z = CentralCharge { re: b13.neg(), im: b02.clone() };
        assert!(in_un(&z, 0.0));
        let z = CentralCharge { re: b13.clone(), im: b02.clone() };
        assert!(!in_un(&z, 0.0));
        let t = RootTuple::finite(vec![frac(1, 2), int(4)]).unwrap();
        let z = CentralCharge { re: b02, im: reduced_charge(&t) };
        assert!(in_un(&z, 0.0));
    }

    #[test]
    fn decompose_examples() {
        let t = tup(&[0, 2]);
        let d = decompose(&LatticeVector::from_ints(&[0, 2, 2]), &t).unwrap();
        assert_eq!(d.coeffs, vec![int(1), int(1)]);
        assert_eq!(d.verdict, SignVerdict::AllNonneg);
        let d = decompose(&LatticeVector::from_ints(&[2, 2, 2]), &t).unwrap();
        assert_eq!(d.coeffs, vec![int(-1), int(1)]);
        assert_eq!(d.verdict, SignVerdict::Mixed);
        let t3 = tup(&[-1, 2, 5]);
        let v = gamma(&int(-1), 3).scale(&int(-1));
        let d = decompose(&v, &t3).unwrap();
        assert_eq!(d.coeffs, vec![int(1), int(0), int(0)]);
        assert!(!d.boundary);
        assert_eq!(decompose(&LatticeVector::from_ints(&[0, 0, 1]), &t), Err(Error::NotInKernel));
        let ti = tup_inf(&[0]);
        let d = decompose(&gamma_inf(2), &ti).unwrap();
        assert_eq!(d.coeffs, vec![int(0), int(1)]);
    }

    #[test]
    fn kernel_parameter_examples() {
        let f = roots_to_poly(&tup(&[0, 2]));
        let g = roots_to_poly(&tup(&[1, 3]));
        let l = Pencil::new(f, g).unwrap();
        let v = gamma(&int(1), 2).add(&gamma(&int(3), 2).scale(&int(-1)));
        assert_eq!(kernel_parameter(&l, &v).unwrap(), tup(&[1, 3]));
        let w = LatticeVector::from_ints(&[0, 0, 0]);
        assert_eq!(kernel_parameter(&l, &w), Err(Error::InKernelOfLine));
        let u = LatticeVector::from_ints(&[1, 0, 0]);
        let t = kernel_parameter(&l, &u).unwrap();
        let val = to_f64(&eval_charge(&reduced_charge(&t), &u).unwrap());
        assert!(val.abs() < 1e-12);
    }
}
