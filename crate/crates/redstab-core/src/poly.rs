//! Dense univariate polynomials over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

use crate::num::{int, to_f64, Rat};

/// Polynomial with ascending coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: Rat) -> Self {
        Poly::new(vec![a])
    }

    /// `x - r`.
    pub fn linear(r: &Rat) -> Self {
        Poly::new(vec![-r.clone(), Rat::one()])
    }

    /// Monic polynomial `∏ (x - r_i)`.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots
            .iter()
            .fold(Poly::constant(Rat::one()), |acc, r| acc.mul(&Poly::linear(r)))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<Rat> {
        let mut v = self.c.clone();
        v.resize(len.max(v.len()), Rat::zero());
        v
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.c
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + to_f64(a))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(to_f64).collect()
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        crate::num::sign(&self.eval(x))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.c.iter().map(|a| -a.clone()).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `x · p(x)`.
    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero()];
        c.extend(self.c.iter().cloned());
        Poly::new(c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Rat::one() / self.lc()))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        let inv = Rat::one() / d.lc();
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &inv;
            if !f.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &f * dj;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Taylor shift `p(x + m)`.
    pub fn shift(&self, m: &Rat) -> Poly {
        let lin = Poly::new(vec![m.clone(), Rat::one()]);
        self.c
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, a| acc.mul(&lin).add(&Poly::constant(a.clone())))
    }

    /// Sturm chain with positive rescaling of each remainder.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            let s = r.lc().abs();
            chain.push(r.neg().scale(&(Rat::one() / s)));
        }
        chain
    }

    /// Upper bound on the absolute value of every root (Cauchy).
    pub fn root_bound(&self) -> Rat {
        let lc = self.lc().abs();
        let m = self.c[..self.c.len().saturating_sub(1)]
            .iter()
            .map(|a| a.abs() / &lc)
            .fold(Rat::zero(), |acc, x| if x > acc { x } else { acc });
        m + Rat::one()
    }
}

/// Sign variations at `+∞` (`positive = true`) or `-∞`.
pub fn sign_variations_inf(chain: &[Poly], positive: bool) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| {
            let s = crate::num::sign(&p.lc());
            let d = p.degree().unwrap_or(0);
            if positive || d % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    count_changes(&signs)
}

pub fn sign_variations_at(chain: &[Poly], x: &Rat) -> usize {
    let signs: Vec<i32> = chain.iter().map(|p| p.sign_at(x)).collect();
    count_changes(&signs)
}

fn count_changes(signs: &[i32]) -> usize {
    let mut prev = 0;
    let mut n = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            n += 1;
        }
        prev = s;
    }
    n
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})x")?,
                _ => write!(f, "({a})x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::frac;

    #[test]
    fn from_roots_expands() {
        assert_eq!(Poly::from_roots(&[int(0), int(2)]), Poly::from_ints(&[0, -2, 1]));
        assert_eq!(
            Poly::from_roots(&[int(-1), int(0), int(1)]),
            Poly::from_ints(&[0, -1, 0, 1])
        );
    }

    #[test]
    fn divrem_reconstructs() {
        let a = Poly::from_ints(&[3, -1, 4, 1, 5]);
        let b = Poly::from_ints(&[2, 0, 7]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = Poly::from_roots(&[int(1), int(1), int(2)]);
        assert!(!p.is_squarefree());
        assert_eq!(p.gcd(&p.derivative()), Poly::from_ints(&[-1, 1]));
        assert!(Poly::from_ints(&[1, 0, 1]).is_squarefree());
    }

    #[test]
    fn taylor_shift() {
        let p = Poly::from_ints(&[0, -2, 1]);
        assert_eq!(p.shift(&int(1)), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(p.shift(&frac(1, 2)).eval(&int(0)), p.eval(&frac(1, 2)));
    }

    #[test]
    fn sturm_counts_real_roots() {
        let p = Poly::from_roots(&[int(-3), int(0), int(5)]);
        let ch = p.sturm_chain();
        assert_eq!(sign_variations_inf(&ch, false) - sign_variations_inf(&ch, true), 3);
        assert_eq!(sign_variations_at(&ch, &int(-1)) - sign_variations_at(&ch, &int(1)), 1);
        let q = Poly::from_ints(&[1, 0, 1]);
        let ch = q.sturm_chain();
        assert_eq!(sign_variations_inf(&ch, false), sign_variations_inf(&ch, true));
    }
}
