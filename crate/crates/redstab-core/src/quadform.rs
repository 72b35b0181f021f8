//! Support-property quadratic forms: the tilde operator, the line forms
//! `Q_ℓ`, the inductive forms `Q̃_ℓ`, dual forms with the `W(Q)` test, and
//! the deformation of a form along a pencil of real parts.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charge::{charge_weights_of_poly, gamma, gamma_f64, gamma_inf};
use crate::error::{Error, Result};
use crate::interlace::{pencil_canonical, pencil_project, Pencil};
use crate::linalg::{self, Mat};
use crate::num::{from_f64, frac, int, to_f64, Rat};
use crate::roots::real_roots_f64;

/// Symmetric bilinear form on `Λ_n` stored by its Gram matrix, with
/// `Q(v) = vᵀGv` and `P(u, v) = uᵀGv`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    gram: Mat,
    /// Scalars `α` chosen at each level of the inductive construction,
    /// innermost first.
    pub alphas: Vec<Rat>,
}

impl QuadraticForm {
    pub fn new(gram: Mat) -> Result<Self> {
        let k = gram.len();
        if k == 0 || gram.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidParams("Gram matrix must be square and nonempty".to_string()));
        }
        for i in 0..k {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidParams("Gram matrix must be symmetric".to_string()));
                }
            }
        }
        Ok(QuadraticForm { gram, alphas: Vec::new() })
    }

    pub fn zero(n: usize) -> Self {
        QuadraticForm { gram: linalg::zeros(n + 1, n + 1), alphas: Vec::new() }
    }

    /// `Σ c_ij v_i v_j` given as a symmetric coefficient list `(i, j, c)`;
    /// off-diagonal terms are split evenly.
    pub fn from_terms(n: usize, terms: &[(usize, usize, Rat)]) -> Self {
        let mut g = linalg::zeros(n + 1, n + 1);
        for (i, j, c) in terms {
            if i == j {
                g[*i][*j] += c;
            } else {
                let h = c / int(2);
                g[*i][*j] += &h;
                g[*j][*i] += &h;
            }
        }
        QuadraticForm { gram: g, alphas: Vec::new() }
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn n(&self) -> usize {
        self.gram.len() - 1
    }

    pub fn eval(&self, v: &[Rat]) -> Rat {
        linalg::bilinear(&self.gram, v, v)
    }

    pub fn polar(&self, u: &[Rat], v: &[Rat]) -> Rat {
        linalg::bilinear(&self.gram, u, v)
    }

    pub fn gram_f64(&self) -> Vec<Vec<f64>> {
        self.gram.iter().map(|r| r.iter().map(to_f64).collect()).collect()
    }

    pub fn polar_f64(&self, u: &[f64], v: &[f64]) -> f64 {
        polar_f64(&self.gram_f64(), u, v)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        QuadraticForm {
            gram: self.gram.iter().map(|r| r.iter().map(|x| x * s).collect()).collect(),
            alphas: self.alphas.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadraticForm {
            gram: self
                .gram
                .iter()
                .zip(&o.gram)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            alphas: Vec::new(),
        }
    }

    /// Zero-extension to `Λ_m`, `m ≥ n`: the form of `(v_0, …, v_n)`.
    pub fn extend(&self, m: usize) -> Self {
        let mut g = linalg::zeros(m + 1, m + 1);
        for (i, r) in self.gram.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                g[i][j] = x.clone();
            }
        }
        QuadraticForm { gram: g, alphas: self.alphas.clone() }
    }

    pub fn inertia(&self) -> (usize, usize, usize) {
        linalg::inertia(&self.gram)
    }

    pub fn norm_max(&self) -> f64 {
        self.gram
            .iter()
            .flat_map(|r| r.iter().map(|x| to_f64(x).abs()))
            .fold(0.0, f64::max)
    }
}

fn polar_f64(g: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    g.iter()
        .zip(u)
        .map(|(row, ui)| ui * row.iter().zip(v).map(|(a, b)| a * b).sum::<f64>())
        .sum()
}

/// `Σ |g_kl| |u_k| |v_l|`, the rounding scale of [`polar_f64`].
fn polar_abs_f64(g: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    g.iter()
        .zip(u)
        .map(|(row, ui)| ui.abs() * row.iter().zip(v).map(|(a, b)| (a * b).abs()).sum::<f64>())
        .sum()
}

/// `B̃ = Σ_{k=1}^n k·a_{k−1} e*_k` for `B = Σ a_k e*_k`.
pub fn tilde(b: &[Rat]) -> Vec<Rat> {
    let n = b.len() - 1;
    (0..=n)
        .map(|k| if k == 0 { Rat::zero() } else { int(k as i64) * &b[k - 1] })
        .collect()
}

/// Gram matrix of the product `(x·v)(y·v)` symmetrized.
fn sym_product(x: &[Rat], y: &[Rat]) -> Mat {
    let half = frac(1, 2);
    x.iter()
        .enumerate()
        .map(|(i, xi)| {
            y.iter()
                .enumerate()
                .map(|(j, yj)| (xi * yj + &x[j] * &y[i]) * &half)
                .collect()
        })
        .collect()
}

/// Weights of `B_ℓ` (from the canonical member, leading weight `−e*_{n−1}`)
/// and of `B_{π(ℓ)}` embedded in `Λ*_n` (leading weight `−e*_{n−2}`).
pub fn line_charges(l: &Pencil) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let n = l.n();
    let pi = pencil_project(l)?;
    let bl = charge_weights_of_poly(pencil_canonical(l).poly(), n);
    let mut bp = charge_weights_of_poly(pencil_canonical(&pi).poly(), n - 1);
    bp.push(Rat::zero());
    Ok((bl, bp))
}

/// `Q_ℓ = B_ℓ·B̃_{π(ℓ)} − B_{π(ℓ)}·B̃_ℓ`.
pub fn q_line(l: &Pencil) -> Result<QuadraticForm> {
    let (bl, bp) = line_charges(l)?;
    let a = sym_product(&bl, &tilde(&bp));
    let b = sym_product(&bp, &tilde(&bl));
    let gram = a
        .iter()
        .zip(&b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect();
    Ok(QuadraticForm { gram, alphas: Vec::new() })
}

/// Outcome of [`verify_support`].
#[derive(Clone, Debug, PartialEq)]
pub struct SupportReport {
    /// `|Q(γ(t))|` small at every sampled `t`, including `+∞`.
    pub vanishing: bool,
    pub max_residual: f64,
    /// Strict negative definiteness on `Ker ℓ` by exact leading minors.
    pub kernel_negative: bool,
    /// `(−1)^{i+j} P(γ(t_i), γ(t_j)) > margin · Σ|g_kl||γ_k(t_i)||γ_l(t_j)|`
    /// on sampled members.
    pub alternating: bool,
    pub min_alternating: f64,
    pub witness: Option<String>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.vanishing && self.kernel_negative && self.alternating
    }
}

/// Sampled data reused across the `α` search: twisted vectors of sampled
/// pencil members and the exact kernel basis of the line.
#[derive(Clone, Debug)]
pub struct SupportSamples {
    n: usize,
    ts: Vec<Rat>,
    members: Vec<Vec<Vec<f64>>>,
    kernel: Vec<Vec<Rat>>,
}

/// Margin of the alternating-sign check, relative to the rounding scale of
/// each pairing (about 10⁴ ulps).
pub const SUPPORT_MARGIN: f64 = 1e-12;

impl SupportSamples {
    pub fn new(l: &Pencil, samples: usize) -> Self {
        let n = l.n();
        let samples = samples.max(2);
        let span = int(4) + l.gen_a().poly().root_bound().max(l.gen_b().poly().root_bound());
        let ts = (0..samples - 1)
            .map(|k| -span.clone() + span.clone() * int(2 * k as i64) / int((samples - 2).max(1) as i64))
            .collect();
        let pi = core::f64::consts::PI;
        let mut members = Vec::with_capacity(samples + 1);
        for j in 0..samples {
            let theta = (j as f64 + 0.5) * pi / samples as f64;
            let c = l.member_f64(theta);
            let mut r: Vec<f64> = real_roots_f64(&c, 1e-12);
            if r.len() + 1 == n {
                r.push(f64::INFINITY);
            }
            if r.len() == n {
                members.push(r.iter().map(|&t| gamma_f64(t, n)).collect());
            }
        }
        let fl = pencil_canonical(l);
        let mut r: Vec<f64> = fl.root_isolation().iter().map(|x| x.approx).collect();
        r.push(f64::INFINITY);
        members.push(r.iter().map(|&t| gamma_f64(t, n)).collect());
        let rows = vec![
            charge_weights_of_poly(l.gen_a().poly(), n),
            charge_weights_of_poly(l.gen_b().poly(), n),
        ];
        let kernel = linalg::nullspace(&rows, n + 1);
        SupportSamples { n, ts, members, kernel }
    }
}

/// Check the three support properties of `Q` against the line `ℓ`.
pub fn verify_support(q: &QuadraticForm, l: &Pencil, samples: usize) -> SupportReport {
    verify_with(q, &SupportSamples::new(l, samples), SUPPORT_MARGIN)
}

pub fn verify_with(q: &QuadraticForm, s: &SupportSamples, margin: f64) -> SupportReport {
    let n = s.n;
    let gnorm = q.norm_max().max(f64::MIN_POSITIVE);
    let mut witness = None;
    let mut max_residual: f64 = 0.0;
    let mut vanishing = true;
    let mut points: Vec<Vec<Rat>> = s.ts.iter().map(|t| gamma(t, n).into_coords()).collect();
    points.push(gamma_inf(n).into_coords());
    for (k, g) in points.iter().enumerate() {
        let val = to_f64(&q.eval(g)).abs();
        let gn = g.iter().map(|x| to_f64(x).abs()).sum::<f64>();
        let rel = val / (gnorm * gn * gn);
        max_residual = max_residual.max(rel);
        if rel > 1e-8 {
            vanishing = false;
            if witness.is_none() {
                let t = s.ts.get(k).map_or("+inf".to_string(), |t| format!("{t}"));
                witness = Some(format!("Q(gamma({t})) = {val:e}"));
            }
        }
    }
    let kernel_negative = s.kernel.is_empty()
        || linalg::is_negative_definite(&linalg::restrict_form(&q.gram, &s.kernel));
    if !kernel_negative && witness.is_none() {
        witness = Some("restriction to Ker l is not negative definite".to_string());
    }
    let g = q.gram_f64();
    let mut alternating = true;
    let mut min_alt = f64::INFINITY;
    for gs in &s.members {
        for i in 0..gs.len() {
            for j in 0..i {
                let p = polar_f64(&g, &gs[i], &gs[j]);
                let signed = if (i + j) % 2 == 0 { p } else { -p };
                let rel = signed / polar_abs_f64(&g, &gs[i], &gs[j]).max(f64::MIN_POSITIVE);
                min_alt = min_alt.min(rel);
                if !(rel > margin) {
                    alternating = false;
                    if witness.is_none() {
                        witness = Some(format!("alternating pairing {rel:e} at roots ({j}, {i})"));
                    }
                }
            }
        }
    }
    SupportReport {
        vanishing,
        max_residual,
        kernel_negative,
        alternating,
        min_alternating: min_alt,
        witness,
    }
}

/// Sample count used inside the `α` search.
pub const ALPHA_SAMPLES: usize = 50;
/// Largest exponent tried in the `α` doubling search.
pub const ALPHA_MAX_EXP: u32 = 60;

/// `Q̃_ℓ = α·Q_ℓ + Q̃_{π(ℓ)}`, with `Q̃ = 0` in ambient 1 and `α` the first
/// power of two passing [`verify_support`] on a 50-point sample.
pub fn q_tilde(l: &Pencil) -> Result<QuadraticForm> {
    let n = l.n();
    if n == 1 {
        return Ok(QuadraticForm::zero(1));
    }
    let pi = pencil_project(l)?;
    let inner = q_tilde(&pi)?.extend(n);
    let ql = q_line(l)?;
    let samples = SupportSamples::new(l, ALPHA_SAMPLES);
    let mut alpha = Rat::one();
    let mut last = None;
    for _ in 0..=ALPHA_MAX_EXP {
        let cand = ql.scale(&alpha).add(&inner);
        let rep = verify_with(&cand, &samples, SUPPORT_MARGIN);
        if rep.passed() {
            let mut alphas = inner.alphas.clone();
            alphas.push(alpha);
            return Ok(QuadraticForm { gram: cand.gram, alphas });
        }
        last = rep.witness;
        alpha *= int(2);
    }
    Err(Error::AlphaSearchFailed(format!(
        "ambient {n}: no alpha up to 2^{ALPHA_MAX_EXP}; last witness: {}",
        last.unwrap_or_default()
    )))
}

/// Gram inverse, the form on the dual space.
pub fn dual_form(q: &QuadraticForm) -> Result<QuadraticForm> {
    let inv = linalg::inverse(&q.gram).ok_or(Error::SingularForm)?;
    Ok(QuadraticForm { gram: inv, alphas: Vec::new() })
}

/// Both sides of the `W(Q)` membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct WqReport {
    /// `Q*(f, g)² < Q*(f)·Q*(g)` and `Q*(f) > 0`, with `f = Im Z`, `g = Re Z`.
    pub dual_criterion: bool,
    /// `Q` negative definite on `Ker Z`.
    pub kernel_criterion: bool,
}

/// Membership of `Z` in `W(Q)` for `Q` of signature `(2, ρ − 2)`.
pub fn in_wq(z: &crate::charge::CentralCharge, q: &QuadraticForm) -> Result<WqReport> {
    let rho = q.gram.len();
    let (p, m, zr) = q.inertia();
    if rho < 2 || (p, m, zr) != (2, rho - 2, 0) {
        return Err(Error::WrongSignature { pos: p, neg: m, zero: zr, want_pos: 2, want_neg: rho.saturating_sub(2) });
    }
    let f = z.im.weights();
    let g = z.re.weights();
    if f.len() != rho || g.len() != rho {
        return Err(Error::AmbientMismatch { expected: rho - 1, found: f.len().max(g.len()) - 1 });
    }
    let dual = dual_form(q)?;
    let qf = dual.eval(f);
    let qg = dual.eval(g);
    let qfg = dual.polar(f, g);
    let dual_criterion = &qfg * &qfg < &qf * &qg && qf.is_positive();
    let kernel = linalg::nullspace(&vec![f.to_vec(), g.to_vec()], rho);
    let kernel_criterion =
        kernel.is_empty() || linalg::is_negative_definite(&linalg::restrict_form(&q.gram, &kernel));
    Ok(WqReport { dual_criterion, kernel_criterion })
}

/// Result of [`deform_form`].
#[derive(Clone, Debug, PartialEq)]
pub struct DeformReport {
    pub form: QuadraticForm,
    pub lambda: Rat,
    pub big_d: Rat,
    pub d1: Rat,
    pub d2: Rat,
    pub eps: Rat,
    /// Sampled `t ∈ [0, N]` where `Q̃` is negative definite on
    /// `Ker h ∩ Ker(f₁ + t f₂)`.
    pub kernel_checks: usize,
    pub kernel_pass: bool,
    pub samples: usize,
    /// Samples with `Q̃(v) < 0`.
    pub neg_samples: usize,
    /// Every negative sample lies in `M_d` or has `Q(v) < 0`.
    pub containment_pass: bool,
}

impl DeformReport {
    pub fn passed(&self) -> bool {
        self.kernel_pass && self.containment_pass
    }
}

/// Membership in `M_d = { f₁f₂ < 0, h² < d f₁², h² < d f₂² }`.
pub fn in_md(h: &[Rat], f1: &[Rat], f2: &[Rat], d: &Rat, v: &[Rat]) -> bool {
    let (x1, x2, x3) = (linalg::dot(h, v), linalg::dot(f1, v), linalg::dot(f2, v));
    (&x2 * &x3).is_negative() && &x1 * &x1 < d * &x2 * &x2 && &x1 * &x1 < d * &x3 * &x3
}

/// Deform `Q` to `Q̃` of signature `(2, ρ − 2)` with
/// `Ker h ∩ ⋃_{0≤t≤N} Ker(f₁ + t f₂) ⊂ neg(Q̃) ⊂ M_d ∪ neg(Q)`.
///
/// Works in coordinates `x = T v` whose first rows are `h, f₁, f₂`. A model
/// form `Q' = D x₁² + D x₂² − Σ_{k≥3} x_k²` with `λQ' − Q` positive definite
/// gives `neg(Q') ⊂ neg(Q)`, and `Q̃` is built from `D`. The report replays
/// both containments on `samples` seeded random vectors.
pub fn deform_form(
    h: &[Rat],
    f1: &[Rat],
    f2: &[Rat],
    q: &QuadraticForm,
    d: &Rat,
    big_n: &Rat,
    samples: usize,
    seed: u64,
) -> Result<DeformReport> {
    let rho = q.gram.len();
    if h.len() != rho || f1.len() != rho || f2.len() != rho {
        return Err(Error::AmbientMismatch { expected: rho - 1, found: h.len().max(f1.len()).max(f2.len()) - 1 });
    }
    if !d.is_positive() || !big_n.is_positive() {
        return Err(Error::InvalidParams("d and N must be positive".to_string()));
    }
    let base = vec![h.to_vec(), f1.to_vec(), f2.to_vec()];
    if linalg::rank(&base) < 3 {
        return Err(Error::AssumptionViolated("h, f1, f2 must be linearly independent".to_string()));
    }
    let (p, m, z) = q.inertia();
    if (p, m, z) != (2, rho - 2, 0) {
        return Err(Error::AssumptionViolated(format!("Q has signature ({p},{m},{z}), expected (2,{})", rho - 2)));
    }
    let k01 = linalg::nullspace(&base[..2].to_vec(), rho);
    if !linalg::is_negative_definite(&linalg::restrict_form(&q.gram, &k01)) {
        return Err(Error::AssumptionViolated("Q must be negative definite on Ker h ∩ Ker f1".to_string()));
    }
    // Complete h, f1, f2 to a basis of the dual by coordinate functionals.
    let mut t_rows = base;
    for k in 0..rho {
        let mut e = vec![Rat::zero(); rho];
        e[k] = Rat::one();
        let mut cand = t_rows.clone();
        cand.push(e.clone());
        if linalg::rank(&cand) == cand.len() {
            t_rows = cand;
        }
        if t_rows.len() == rho {
            break;
        }
    }
    let t_inv = linalg::inverse(&t_rows).ok_or(Error::SingularForm)?;
    // Gram of Q in x-coordinates: T⁻ᵀ G T⁻¹.
    let gx = linalg::matmul(&linalg::transpose(&t_inv), &linalg::matmul(&q.gram, &t_inv));
    let model = |big_d: &Rat| -> Mat {
        let mut g = linalg::zeros(rho, rho);
        g[0][0] = big_d.clone();
        g[1][1] = big_d.clone();
        for (k, row) in g.iter_mut().enumerate().skip(2) {
            row[k] = int(-1);
        }
        g
    };
    let mut found = None;
    let mut lambda = Rat::one();
    'outer: for _ in 0..64 {
        let mut big_d = int(2);
        for _ in 0..64 {
            let mq = model(&big_d);
            let diff: Mat = mq
                .iter()
                .zip(&gx)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| &lambda * a - b).collect())
                .collect();
            if linalg::is_positive_definite(&diff) {
                found = Some(big_d);
                break 'outer;
            }
            big_d *= int(2);
        }
        lambda /= int(2);
    }
    let big_d = found.ok_or_else(|| Error::SearchBudgetExceeded("no model form dominating Q".to_string()))?;
    let nn = big_n.clone();
    let d2 = &big_d + int(1);
    let mut eps = (Rat::one() / (int(2) * &nn * &nn)).min(frac(1, 4));
    let build = |eps: &Rat, d1: &Rat| -> Mat {
        // D̃₁x₁² + D̃₂x₂(x₂ + N x₃) − Σ_{k≥4} x_k² − ε(x₂² + (x₂ + N x₃)²)
        let mut g = linalg::zeros(rho, rho);
        g[0][0] = d1.clone();
        g[1][1] = &d2 - int(2) * eps;
        let off = &d2 * &nn / int(2) - eps * &nn;
        g[1][2] = off.clone();
        g[2][1] = off;
        g[2][2] = -(eps * &nn * &nn);
        for (k, row) in g.iter_mut().enumerate().skip(3) {
            row[k] = int(-1);
        }
        g
    };
    // Bound on D̃₁ making x₁² < d x₂² and x₁² < d x₃² on neg(Q̃) \ neg(Q).
    let d1_for = |eps: &Rat| -> Rat {
        let a = Rat::one() - eps * &nn * &nn;
        let b = &nn * (&d2 - int(2) * eps);
        let c = Rat::one() - int(2) * eps;
        let r2 = &b * &b / (int(4) * &a) - &c;
        let r3 = &b * &b / (int(4) * &c) - &a;
        &big_d + r2.max(r3).max(Rat::zero()) / d + Rat::one()
    };
    let mut gt = None;
    for _ in 0..64 {
        let d1 = d1_for(&eps);
        let g = build(&eps, &d1);
        if linalg::inertia(&g) == (2, rho - 2, 0) {
            gt = Some((g, d1));
            break;
        }
        eps /= int(2);
    }
    let (gt, d1) = gt.ok_or_else(|| Error::SearchBudgetExceeded("no epsilon giving signature (2, rho-2)".to_string()))?;
    let gram = linalg::matmul(&linalg::transpose(&t_rows), &linalg::matmul(&gt, &t_rows));
    let form = QuadraticForm { gram, alphas: Vec::new() };

    // First containment on t ∈ {0, N/4, N/2, 3N/4, N}.
    let mut kernel_pass = true;
    let kernel_checks = 5;
    for k in 0..kernel_checks {
        let t = &nn * int(k as i64) / int(kernel_checks as i64 - 1);
        let ft: Vec<Rat> = f1.iter().zip(f2).map(|(a, b)| a + &t * b).collect();
        let ker = linalg::nullspace(&vec![h.to_vec(), ft], rho);
        if !ker.is_empty() && !linalg::is_negative_definite(&linalg::restrict_form(&form.gram, &ker)) {
            kernel_pass = false;
        }
    }
    // Second containment on random vectors, drawn in x-coordinates.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut neg_samples = 0;
    let mut containment_pass = true;
    for _ in 0..samples {
        let x: Vec<Rat> = (0..rho)
            .map(|_| from_f64(rng.gen_range(-4.0f64..4.0)).unwrap_or_else(Rat::zero))
            .collect();
        let v = linalg::matvec(&t_inv, &x);
        if form.eval(&v).is_negative() {
            neg_samples += 1;
            if !(in_md(h, f1, f2, d, &v) || q.eval(&v).is_negative()) {
                containment_pass = false;
            }
        }
    }
    Ok(DeformReport {
        form,
        lambda,
        big_d,
        d1,
        d2,
        eps,
        kernel_checks,
        kernel_pass,
        samples,
        neg_samples,
        containment_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::{reduced_charge, CentralCharge};
    use crate::interlace::{Polynomial, RootTuple};
    use crate::poly::Poly;

    fn delta2() -> QuadraticForm {
        QuadraticForm::from_terms(2, &[(1, 1, int(1)), (0, 2, int(-2))])
    }

    fn line(a: &[i64], b: &[i64], n: usize) -> Pencil {
        Pencil::new(
            Polynomial::new(Poly::from_ints(a), n).unwrap(),
            Polynomial::new(Poly::from_ints(b), n).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde(&[int(1), int(-1), int(0)]), vec![int(0), int(1), int(-2)]);
        assert_eq!(tilde(&[int(-1), int(0), int(0)]), vec![int(0), int(-1), int(0)]);
        let l = line(&[0, -2, 1], &[-1, 1], 2);
        let (bl, _) = line_charges(&l).unwrap();
        assert_eq!(linalg::dot(&tilde(&bl), gamma_inf(2).coords()), int(-2));
    }

    #[test]
    fn q_line_surface_is_delta() {
        let l = line(&[0, -2, 1], &[-1, 1], 2);
        let (bl, bp) = line_charges(&l).unwrap();
        assert_eq!(bl, vec![int(1), int(-1), int(0)]);
        assert_eq!(bp, vec![int(-1), int(0), int(0)]);
        assert_eq!(q_line(&l).unwrap().gram(), delta2().gram());
    }

    #[test]
    fn q_line_vanishes_on_gamma() {
        let l = line(&[0, -1, 0, 1], &[-1, 0, 3], 3);
        let q = q_line(&l).unwrap();
        for t in -6..=6 {
            assert!(q.eval(gamma(&frac(t, 3), 3).coords()).is_zero());
        }
        assert!(q.eval(gamma_inf(3).coords()).is_zero());
    }

    #[test]
    fn q_tilde_low_ambient() {
        let l1 = line(&[0, 1], &[1], 1);
        assert_eq!(q_tilde(&l1).unwrap(), QuadraticForm::zero(1));
        let l = line(&[0, -2, 1], &[3, -4, 1], 2);
        let q = q_tilde(&l).unwrap();
        let ql = q_line(&l).unwrap();
        assert_eq!(q.gram(), ql.scale(q.alphas.last().unwrap()).gram());
        assert!(verify_support(&q, &l, 60).passed());
    }

    #[test]
    fn q_tilde_threefold_passes() {
        let l = line(&[0, -1, 0, 1], &[-1, 0, 3], 3);
        let q = q_tilde(&l).unwrap();
        let rep = verify_support(&q, &l, 100);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn negative_identity_fails_support() {
        // Non-adjacent roots only exist from ambient 3 on.
        let l = line(&[0, -1, 0, 1], &[-1, 0, 3], 3);
        let q = QuadraticForm::new(linalg::identity(4)).unwrap().scale(&int(-1));
        let rep = verify_support(&q, &l, 20);
        assert!(!rep.vanishing && !rep.alternating);
    }

    #[test]
    fn dual_form_examples() {
        let id = QuadraticForm::new(linalg::identity(3)).unwrap();
        assert_eq!(dual_form(&id).unwrap(), id);
        let d = QuadraticForm::from_terms(2, &[(0, 0, int(1)), (1, 1, int(1)), (2, 2, int(-1))]);
        assert_eq!(dual_form(&d).unwrap(), d);
        let s = QuadraticForm::from_terms(1, &[(0, 0, int(1))]);
        assert_eq!(dual_form(&s), Err(Error::SingularForm));
    }

    #[test]
    fn wq_examples() {
        let b13 = reduced_charge(&RootTuple::from_ints(&[1, 3]));
        let b02 = reduced_charge(&RootTuple::from_ints(&[0, 2]));
        let z = CentralCharge { re: b13.clone(), im: b02.clone() };
        let r = in_wq(&z, &delta2()).unwrap();
        assert!(r.dual_criterion && r.kernel_criterion);
        let z = CentralCharge { re: b02.scale(&int(3)), im: b02.clone() };
        assert!(!in_wq(&z, &delta2()).unwrap().dual_criterion);
        let neg = QuadraticForm::new(linalg::identity(3)).unwrap().scale(&int(-1));
        assert!(matches!(in_wq(&z, &neg), Err(Error::WrongSignature { .. })));
    }

    fn unit(k: usize, rho: usize) -> Vec<Rat> {
        (0..rho).map(|i| if i == k { int(1) } else { int(0) }).collect()
    }

    #[test]
    fn deform_model_case() {
        let rho = 5;
        let q = QuadraticForm::from_terms(
            4,
            &[(0, 0, int(3)), (1, 1, int(3)), (2, 2, int(-1)), (3, 3, int(-1)), (4, 4, int(-1))],
        );
        let (h, f1, f2) = (unit(0, rho), unit(1, rho), unit(2, rho));
        let rep = deform_form(&h, &f1, &f2, &q, &frac(1, 2), &int(2), 2000, 0).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.form.inertia(), (2, 3, 0));
        assert!(rep.neg_samples > 0);
        let dep = deform_form(&h, &f1, &h, &q, &frac(1, 2), &int(2), 10, 0);
        assert!(matches!(dep, Err(Error::AssumptionViolated(_))));
    }
}
