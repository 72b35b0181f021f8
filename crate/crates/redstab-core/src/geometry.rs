//! Polarized-variety numerics: twisted Chern characters, the discriminants
//! `Δ_H` and `∇_H^β`, the threefold stability slice, and the abelian-surface
//! pairing with its Bayer-step and restriction criteria.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::charge::{decompose, CentralCharge, LatticeVector, ReducedCharge, SignVerdict};
use crate::error::{Error, Result};
use crate::interlace::{interlace_orientation, Orientation, Polynomial, RootTuple};
use crate::linalg::{self, Mat};
use crate::num::{factorial, frac, int, pow, to_f64, Rat};
use crate::poly::Poly;
use crate::quadform::QuadraticForm;

/// Matrix of the twist `v ↦ v·e^{−βH}`: `ch_k^β = Σ_{j≤k} (−β)^{k−j}/(k−j)! · v_j`.
pub fn twist_matrix(n: usize, beta: &Rat) -> Mat {
    let mb = -beta.clone();
    (0..=n)
        .map(|k| {
            (0..=n)
                .map(|j| if j <= k { pow(&mb, k - j) / factorial(k - j) } else { Rat::zero() })
                .collect()
        })
        .collect()
}

/// All twisted components `(ch_0^β, …, ch_n^β)`.
pub fn twisted_vector(v: &LatticeVector, beta: &Rat) -> LatticeVector {
    let c = linalg::matvec(&twist_matrix(v.n(), beta), v.coords());
    LatticeVector::new(c).expect("nonempty")
}

/// The `k`-th `β`-twisted polarized component.
pub fn twisted_chern(v: &LatticeVector, beta: &Rat, k: usize) -> Result<Rat> {
    if k > v.n() {
        return Err(Error::IndexOutOfRange { index: k, n: v.n() });
    }
    let m = twist_matrix(v.n(), beta);
    Ok(linalg::dot(&m[k], v.coords()))
}

fn require_ambient(v: &LatticeVector, allowed: &[usize]) -> Result<()> {
    if allowed.contains(&v.n()) {
        Ok(())
    } else {
        Err(Error::AmbientMismatch { expected: allowed[0], found: v.n() })
    }
}

/// `Δ_H = v_1² − 2 v_0 v_2` for ambient 2 or 3.
pub fn delta_h(v: &LatticeVector) -> Result<Rat> {
    require_ambient(v, &[2, 3])?;
    let c = v.coords();
    Ok(&c[1] * &c[1] - int(2) * &c[0] * &c[2])
}

/// `∇_H^β = 4(ch_2^β)² − 6 ch_1^β ch_3^β` on ambient 3.
pub fn nabla_beta(v: &LatticeVector, beta: &Rat) -> Result<Rat> {
    require_ambient(v, &[3])?;
    let w = twisted_vector(v, beta);
    let c = w.coords();
    Ok(int(4) * &c[2] * &c[2] - int(6) * &c[1] * &c[3])
}

/// `Q_K^β = K·Δ_H + ∇_H^β`.
pub fn q_k_beta(v: &LatticeVector, k: &Rat, beta: &Rat) -> Result<Rat> {
    Ok(k * delta_h(v)? + nabla_beta(v, beta)?)
}

/// Gram of `Δ_H` on `Λ_n`, `n ∈ {2, 3}`.
pub fn delta_form(n: usize) -> Result<QuadraticForm> {
    if n != 2 && n != 3 {
        return Err(Error::AmbientMismatch { expected: 2, found: n });
    }
    Ok(QuadraticForm::from_terms(n, &[(1, 1, int(1)), (0, 2, int(-2))]))
}

/// Gram of `∇_H^β` on `Λ_3`.
pub fn nabla_form(beta: &Rat) -> QuadraticForm {
    let inner = QuadraticForm::from_terms(3, &[(2, 2, int(4)), (1, 3, int(-6))]);
    let m = twist_matrix(3, beta);
    let g = linalg::matmul(&linalg::transpose(&m), &linalg::matmul(inner.gram(), &m));
    QuadraticForm::new(g).expect("congruent to a symmetric form")
}

/// Point `(α, β, a, b)` of the threefold slice.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreefoldParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub a: Rat,
    pub b: Rat,
}

impl ThreefoldParams {
    /// Validated: `α > 0` and `a > α²/6 + |b|α/2`.
    pub fn new(alpha: Rat, beta: Rat, a: Rat, b: Rat) -> Result<Self> {
        let p = ThreefoldParams { alpha, beta, a, b };
        if !p.alpha.is_positive() {
            return Err(Error::InvalidParams("alpha must be positive".to_string()));
        }
        if !p.is_valid() {
            return Err(Error::InvalidParams("need a > alpha^2/6 + |b|·alpha/2".to_string()));
        }
        Ok(p)
    }

    pub fn is_valid(&self) -> bool {
        self.alpha.is_positive()
            && self.a > &self.alpha * &self.alpha / int(6) + self.b.abs() * &self.alpha / int(2)
    }
}

/// `Re = −ch_3^β + b·ch_2^β + a·ch_1^β`, `Im = ch_2^β − ½α²·ch_0`.
pub fn threefold_charge(p: &ThreefoldParams) -> Result<CentralCharge> {
    if !p.is_valid() {
        return Err(Error::InvalidParams("need a > alpha^2/6 + |b|·alpha/2".to_string()));
    }
    Ok(threefold_charge_unchecked(p))
}

pub fn threefold_charge_unchecked(p: &ThreefoldParams) -> CentralCharge {
    let m = twist_matrix(3, &p.beta);
    let combo = |c: [Rat; 4]| -> ReducedCharge {
        let w: Vec<Rat> = (0..4)
            .map(|j| (0..4).fold(Rat::zero(), |acc, k| acc + &c[k] * &m[k][j]))
            .collect();
        ReducedCharge::from_weights(w).expect("four weights")
    };
    let re = combo([Rat::zero(), p.a.clone(), p.b.clone(), int(-1)]);
    let im = combo([-(&p.alpha * &p.alpha) / int(2), Rat::zero(), int(1), Rat::zero()]);
    CentralCharge { re, im }
}

/// Kernel roots of the two parts: real `β + {(3b ∓ √(9b²+24a))/2, 0}` and
/// imaginary `(β − α, β + α, +∞)`.
pub fn threefold_roots(p: &ThreefoldParams) -> ([f64; 3], [f64; 3]) {
    let (a, b, al, be) = (to_f64(&p.a), to_f64(&p.b), to_f64(&p.alpha), to_f64(&p.beta));
    let s = libm::sqrt(9.0 * b * b + 24.0 * a);
    (
        [be + (3.0 * b - s) / 2.0, be, be + (3.0 * b + s) / 2.0],
        [be - al, be + al, f64::INFINITY],
    )
}

/// Parameters recovered from a sorted tuple: pairs give `(α, β)`, triples
/// give `(β, a, b)` with `β = t_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialParams {
    pub alpha: Option<Rat>,
    pub beta: Rat,
    pub a: Option<Rat>,
    pub b: Option<Rat>,
}

pub fn params_from_tuples(t: &[Rat]) -> Result<PartialParams> {
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidTuple("entries not strictly increasing".to_string()));
    }
    match t {
        [t1, t2] => Ok(PartialParams {
            alpha: Some((t2 - t1) / int(2)),
            beta: (t2 + t1) / int(2),
            a: None,
            b: None,
        }),
        [t1, t2, t3] => {
            let b = (t1 + t3 - int(2) * t2) / int(3);
            let d = t3 - t1;
            let a = (&d * &d - int(9) * &b * &b) / int(24);
            Ok(PartialParams { alpha: None, beta: t2.clone(), a: Some(a), b: Some(b) })
        }
        _ => Err(Error::InvalidTuple("expected 2 or 3 entries".to_string())),
    }
}

/// `(validity inequality, strict interlacing of the kernel tuples with the
/// real part first)`, the latter decided exactly on the shifted polynomials
/// `x(x² − 3bx − 6a)` and `x² − α²`.
pub fn validity_iff_interlaced(p: &ThreefoldParams) -> (bool, bool) {
    let valid = p.is_valid();
    let re = Poly::new(vec![Rat::zero(), int(-6) * &p.a, int(-3) * &p.b, int(1)]);
    let im = Poly::new(vec![-(&p.alpha * &p.alpha), Rat::zero(), int(1)]);
    let inter = match (Polynomial::new(re, 3), Polynomial::new(im, 3)) {
        (Ok(f), Ok(g)) => matches!(interlace_orientation(&f, &g), Ok(Some(Orientation::FirstLeads))),
        _ => false,
    };
    (valid, inter)
}

/// Outcome of [`family_equiv_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub verdict: SignVerdict,
    pub boundary: bool,
    /// `Q_K^β(v) ≥ 0` at every grid value of `K`.
    pub family_nonneg: bool,
    pub failing_k: Option<Rat>,
    pub k_range: (Rat, Rat),
    /// Sign-coherent verdict coincides with `family_nonneg`.
    pub agree: bool,
}

/// Default scan `[0, 10·max(1, |∇|/max(Δ, 1))]`.
pub fn default_k_interval(v: &LatticeVector, beta: &Rat) -> Result<(Rat, Rat)> {
    let d = delta_h(v)?;
    let nb = nabla_beta(v, beta)?.abs();
    let denom = if d > int(1) { d } else { int(1) };
    let r = nb / denom;
    let m = if r > int(1) { r } else { int(1) };
    Ok((Rat::zero(), int(10) * m))
}

/// `[0, (t_2 − t_1)(t_3 − t_2)]` for `β = t_2`, the range on which the sign
/// verdict and nonnegativity of the family agree.
pub fn natural_k_interval(t: &RootTuple) -> Result<(Rat, Rat)> {
    let f = t.finite_entries();
    if t.has_infinity() || f.len() != 3 {
        return Err(Error::PreconditionViolated("needs a finite tuple of length 3".to_string()));
    }
    Ok((Rat::zero(), (&f[1] - &f[0]) * (&f[2] - &f[1])))
}

/// Compare nonnegativity of `Q_K^β(v)` over a `K` grid with the sign
/// verdict of the decomposition of `v` along `t`.
pub fn family_equiv_check(
    v: &LatticeVector,
    t: &RootTuple,
    k_interval: (Rat, Rat),
    beta: &Rat,
    grid: usize,
) -> Result<FamilyReport> {
    require_ambient(v, &[3])?;
    let dec = decompose(v, t)?;
    let (lo, hi) = k_interval;
    let steps = grid.max(2) - 1;
    let mut failing_k = None;
    for i in 0..=steps {
        let k = &lo + (&hi - &lo) * int(i as i64) / int(steps as i64);
        if q_k_beta(v, &k, beta)?.is_negative() {
            failing_k = Some(k);
            break;
        }
    }
    let family_nonneg = failing_k.is_none();
    let coherent = dec.verdict != SignVerdict::Mixed;
    Ok(FamilyReport {
        verdict: dec.verdict,
        boundary: dec.boundary,
        family_nonneg,
        failing_k,
        k_range: (lo, hi),
        agree: coherent == family_nonneg,
    })
}

/// Néron–Severi lattice with an intersection form of signature `(1, ρ − 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NsLattice {
    gram: Mat,
}

impl NsLattice {
    pub fn new(gram: Mat) -> Result<Self> {
        let q = QuadraticForm::new(gram)?;
        let rho = q.gram().len();
        let (p, m, z) = q.inertia();
        if (p, m, z) != (1, rho - 1, 0) {
            return Err(Error::WrongSignature { pos: p, neg: m, zero: z, want_pos: 1, want_neg: rho - 1 });
        }
        Ok(NsLattice { gram: q.gram().clone() })
    }

    pub fn rho(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    /// Intersection `D · D'`.
    pub fn dot(&self, d: &[Rat], e: &[Rat]) -> Result<Rat> {
        if d.len() != self.rho() || e.len() != self.rho() {
            return Err(Error::LatticeMismatch("divisor length differs from the lattice rank".to_string()));
        }
        Ok(linalg::bilinear(&self.gram, d, e))
    }
}

/// Character `(r, D, s)` on an abelian surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NsVector {
    pub r: Rat,
    pub d: Vec<Rat>,
    pub s: Rat,
}

/// `Δ(v, v') = D·D' − r s' − r' s`.
pub fn ab_delta(lat: &NsLattice, v: &NsVector, w: &NsVector) -> Result<Rat> {
    Ok(lat.dot(&v.d, &w.d)? - &v.r * &w.s - &w.r * &v.s)
}

/// `Δ(v) = Δ(v, v)`.
pub fn ab_delta_self(lat: &NsLattice, v: &NsVector) -> Result<Rat> {
    ab_delta(lat, v, v)
}

/// `v·e^G = (r, D + rG, s + D·G + ½rG²)`.
pub fn ab_twist(lat: &NsLattice, v: &NsVector, g: &[Rat]) -> Result<NsVector> {
    let dg = lat.dot(&v.d, g)?;
    let gg = lat.dot(g, g)?;
    Ok(NsVector {
        r: v.r.clone(),
        d: v.d.iter().zip(g).map(|(a, b)| a + &v.r * b).collect(),
        s: &v.s + dg + &v.r * gg * frac(1, 2),
    })
}

/// `Δ(v, w)² < Δ(v)·Δ(w)`.
pub fn criterion_neg_def(lat: &NsLattice, v: &NsVector, w: &NsVector) -> Result<bool> {
    let x = ab_delta(lat, v, w)?;
    Ok(&x * &x < ab_delta_self(lat, v)? * ab_delta_self(lat, w)?)
}

/// `0 < r²G² < 4Δ(v)`.
pub fn criterion_bayer_step(lat: &NsLattice, v: &NsVector, g: &[Rat]) -> Result<bool> {
    let x = &v.r * &v.r * lat.dot(g, g)?;
    Ok(x.is_positive() && x < int(4) * ab_delta_self(lat, v)?)
}

/// `D₂²H² + (D₁·D₂ − s₂)² < (D₁² − 2s₁)D₂²` for `v₁ = (1, D₁, s₁)`,
/// `v₂ = (0, D₂, s₂)`.
pub fn criterion_restrict(lat: &NsLattice, v1: &NsVector, v2: &NsVector, h: &[Rat]) -> Result<bool> {
    if v1.r != int(1) || !v2.r.is_zero() {
        return Err(Error::InvalidParams("expects ranks 1 and 0".to_string()));
    }
    let d2 = lat.dot(&v2.d, &v2.d)?;
    let hh = lat.dot(h, h)?;
    let x = lat.dot(&v1.d, &v2.d)? - &v2.s;
    let d1 = lat.dot(&v1.d, &v1.d)?;
    Ok(&d2 * hh + &x * &x < (d1 - int(2) * &v1.s) * d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::{eval_charge, gamma, gamma_inf, reduced_charge};

    #[test]
    fn twisted_chern_examples() {
        let v = LatticeVector::from_ints(&[2, -1, 3, 5]);
        for k in 0..4 {
            assert_eq!(twisted_chern(&v, &int(0), k).unwrap(), v.coords()[k]);
        }
        let beta = frac(3, 2);
        let g = gamma(&int(4), 3);
        assert_eq!(twisted_vector(&g, &beta), gamma(&(int(4) - &beta), 3));
        assert!(twisted_chern(&gamma(&beta, 3), &beta, 3).unwrap().is_zero());
        assert_eq!(twisted_chern(&v, &int(0), 4), Err(Error::IndexOutOfRange { index: 4, n: 3 }));
    }

    #[test]
    fn discriminant_examples() {
        assert!(delta_h(&gamma(&frac(5, 3), 2)).unwrap().is_zero());
        assert_eq!(delta_h(&LatticeVector::from_ints(&[1, 0, -7])).unwrap(), int(14));
        assert!(nabla_beta(&gamma(&int(3), 3), &frac(1, 2)).unwrap().is_zero());
        assert!(matches!(delta_h(&LatticeVector::from_ints(&[1, 0])), Err(Error::AmbientMismatch { .. })));
        let v = LatticeVector::from_ints(&[1, 2, -1, 4]);
        assert_eq!(nabla_form(&int(2)).eval(v.coords()), nabla_beta(&v, &int(2)).unwrap());
    }

    #[test]
    fn threefold_kernel_roots() {
        let p = ThreefoldParams::new(int(1), int(0), int(1), int(0)).unwrap();
        let (re, im) = threefold_roots(&p);
        let s6 = libm::sqrt(6.0);
        assert!((re[0] + s6).abs() < 1e-12 && re[1] == 0.0 && (re[2] - s6).abs() < 1e-12);
        assert_eq!(im, [-1.0, 1.0, f64::INFINITY]);
        let z = threefold_charge(&p).unwrap();
        assert!(eval_charge(&z.re, &gamma(&int(0), 3)).unwrap().is_zero());
        assert!(eval_charge(&z.im, &gamma(&int(1), 3)).unwrap().is_zero());
        assert!(eval_charge(&z.im, &gamma_inf(3)).unwrap().is_zero());
        // Im equals −B_{(β−α, β+α, ∞)}.
        let t = RootTuple::new(vec![int(-1), int(1)], true).unwrap();
        assert_eq!(z.im.weights(), reduced_charge(&t).neg().weights());
    }

    #[test]
    fn params_from_tuple_examples() {
        let p = params_from_tuples(&[int(-1), int(3)]).unwrap();
        assert_eq!((p.alpha.unwrap(), p.beta), (int(2), int(1)));
        let p = params_from_tuples(&[int(-1), int(0), int(2)]).unwrap();
        assert_eq!((p.beta, p.b.unwrap(), p.a.unwrap()), (int(0), frac(1, 3), frac(1, 3)));
    }

    #[test]
    fn validity_boundary() {
        let p = ThreefoldParams { alpha: int(1), beta: int(0), a: frac(1, 6), b: int(0) };
        assert_eq!(validity_iff_interlaced(&p), (false, false));
        let p = ThreefoldParams { alpha: int(1), beta: int(0), a: int(1), b: frac(1, 2) };
        assert_eq!(validity_iff_interlaced(&p), (true, true));
        let p = ThreefoldParams { alpha: int(2), beta: int(0), a: int(1), b: int(1) };
        assert_eq!(validity_iff_interlaced(&p), (false, false));
    }

    #[test]
    fn family_check_examples() {
        let t = RootTuple::from_ints(&[-1, 0, 2]);
        let k = natural_k_interval(&t).unwrap();
        assert_eq!(k.1, int(2));
        let single = gamma(&int(0), 3).scale(&int(3));
        let r = family_equiv_check(&single, &t, k.clone(), &int(0), 21).unwrap();
        assert!(r.agree && r.family_nonneg);
        // γ(t₁) + γ(t₂): coefficients a = (−1, 1, 0), mixed.
        let mixed = gamma(&int(-1), 3).add(&gamma(&int(0), 3));
        let r = family_equiv_check(&mixed, &t, k.clone(), &int(0), 21).unwrap();
        assert_eq!(r.verdict, SignVerdict::Mixed);
        assert!(r.agree && !r.family_nonneg);
        let pos = gamma(&int(0), 3).add(&gamma(&int(-1), 3).scale(&int(-1))).add(&gamma(&int(2), 3).scale(&int(-1)));
        let r = family_equiv_check(&pos, &t, k, &int(0), 21).unwrap();
        assert_eq!(r.verdict, SignVerdict::AllNonneg);
        assert!(r.agree && r.family_nonneg);
    }

    fn lattice1() -> NsLattice {
        NsLattice::new(vec![vec![int(2)]]).unwrap()
    }

    #[test]
    fn abelian_examples() {
        let lat = lattice1();
        let v = NsVector { r: int(1), d: vec![int(0)], s: int(0) };
        let g = vec![int(1)];
        assert_eq!(ab_twist(&lat, &v, &g).unwrap(), NsVector { r: int(1), d: vec![int(1)], s: int(1) });
        let w = NsVector { r: int(2), d: vec![frac(1, 2)], s: int(-3) };
        let tw = ab_twist(&lat, &w, &g).unwrap();
        assert_eq!(ab_delta_self(&lat, &tw).unwrap(), ab_delta_self(&lat, &w).unwrap());
        assert!(NsLattice::new(vec![vec![int(-1)]]).is_err());
        assert!(matches!(lat.dot(&[int(1), int(0)], &[int(1)]), Err(Error::LatticeMismatch(_))));
    }
}
