//! Property tests over random rational tuples, pencils and lattices.

use proptest::prelude::*;
use redstab_core::charge::{decompose, eval_charge, gamma, gamma_inf, reduced_charge, LatticeVector, SignVerdict};
use redstab_core::geometry::{ab_delta, ab_delta_self, ab_twist, NsLattice, NsVector};
use redstab_core::interlace::{
    is_interlaced, poly_to_roots, roots_to_poly, sep, sep_pencil, tuples_interlace, Pencil, Polynomial, RootTuple,
};
use redstab_core::num::{frac, int};
use redstab_core::quadform::{q_line, q_tilde, verify_support};
use redstab_core::restrict::{pull_back, pushforward_matrix, xi};
use redstab_core::Rat;
use num_traits::{Signed, Zero};

/// Strictly increasing rationals with denominators up to 4.
fn sorted_rats(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Rat>> {
    (-20i64..20, prop::collection::vec((1i64..12, 1i64..5), len)).prop_map(|(start, gaps)| {
        let mut x = int(start);
        gaps.into_iter()
            .map(|(p, q)| {
                x = &x + frac(p, q);
                x.clone()
            })
            .collect()
    })
}

fn tuple(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RootTuple> {
    (sorted_rats(len), any::<bool>()).prop_map(|(t, inf)| RootTuple::new(t, inf).expect("sorted"))
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-30i64..30, 1i64..7).prop_map(|(p, q)| frac(p, q))
}

/// `t` together with a tuple strictly interlacing it on the right.
fn interlaced_pair(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (RootTuple, RootTuple)> {
    sorted_rats(len).prop_map(|t| {
        let mut s: Vec<Rat> = t.windows(2).map(|w| (&w[0] + &w[1]) * frac(1, 2)).collect();
        s.push(t.last().expect("nonempty") + int(1));
        (RootTuple::finite(t).unwrap(), RootTuple::finite(s).unwrap())
    })
}

fn matvec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| row.iter().zip(v).fold(Rat::zero(), |a, (x, y)| a + x * y)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn charge_is_normalized_and_vanishes_on_its_roots(t in tuple(1..=5)) {
        let b = reduced_charge(&t);
        let n = t.n();
        let top = eval_charge(&b, &gamma_inf(n)).unwrap();
        prop_assert_eq!(top, if t.has_infinity() { int(0) } else { int(1) });
        for x in t.finite_entries() {
            prop_assert!(eval_charge(&b, &gamma(x, n)).unwrap().is_zero());
        }
    }

    #[test]
    fn charge_matches_root_polynomial(t in sorted_rats(1..=5), x in small_rat()) {
        let n = t.len();
        let b = reduced_charge(&RootTuple::finite(t.clone()).unwrap());
        let lhs = eval_charge(&b, &gamma(&x, n)).unwrap() * (1..=n as i64).fold(int(1), |a, k| a * int(k));
        let rhs = t.iter().fold(int(1), |a, s| a * (&x - s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn roots_round_trip(t in tuple(1..=5)) {
        prop_assert_eq!(poly_to_roots(&roots_to_poly(&t)), t);
    }

    #[test]
    fn midpoint_tuples_interlace((t, s) in interlaced_pair(1..=5)) {
        prop_assert!(tuples_interlace(&t, &s));
        prop_assert!(is_interlaced(&roots_to_poly(&t), &roots_to_poly(&s)).unwrap());
    }

    #[test]
    fn crowded_gap_breaks_interlacing(t in sorted_rats(2..=5)) {
        let (a, b) = (&t[0], &t[1]);
        let mut s = vec![a + (b - a) * frac(1, 3), a + (b - a) * frac(2, 3)];
        let mut x = t.last().unwrap().clone();
        while s.len() < t.len() {
            x = &x + int(1);
            s.push(x.clone());
        }
        let (f, g) = (roots_to_poly(&RootTuple::finite(t).unwrap()), roots_to_poly(&RootTuple::finite(s).unwrap()));
        prop_assert!(!is_interlaced(&f, &g).unwrap_or(false));
    }

    #[test]
    fn decompose_recovers_coefficients(t in sorted_rats(1..=4), a in prop::collection::vec(small_rat(), 4)) {
        let n = t.len();
        let tt = RootTuple::finite(t.clone()).unwrap();
        let mut v = LatticeVector::zero(n);
        for (i, x) in t.iter().enumerate() {
            let c = if i % 2 == 0 { -a[i].clone() } else { a[i].clone() };
            v = v.add(&gamma(x, n).scale(&c));
        }
        let d = decompose(&v, &tt).unwrap();
        prop_assert_eq!(&d.coeffs[..], &a[..n]);
        if a[..n].iter().all(|x| x > &Rat::zero()) {
            prop_assert_eq!(d.verdict, SignVerdict::AllNonneg);
        }
    }

    #[test]
    fn derivative_pencil_keeps_separation(t in sorted_rats(2..=4)) {
        // The sampled estimate loses accuracy in proportion to the root scale.
        let scale = t.iter().map(|x| x.abs()).max().unwrap();
        let slack = 1e-9 * (1.0 + redstab_core::num::to_f64(&scale));
        let f = roots_to_poly(&RootTuple::finite(t).unwrap());
        let df = Polynomial::new(f.poly().derivative(), f.n()).unwrap();
        let l = Pencil::new(f.clone(), df).unwrap();
        prop_assert!(sep_pencil(&l).value >= sep(&f) - slack);
    }

    #[test]
    fn pushforward_identity(n in 1usize..5, m in (1i64..6, 1i64..4), x in small_rat()) {
        let m = frac(m.0, m.1);
        let mat = pushforward_matrix(n, &m);
        let lhs = matvec(&mat, gamma(&x, n - 1).coords());
        let rhs = gamma(&x, n).add(&gamma(&(&x - &m), n).scale(&int(-1)));
        prop_assert_eq!(&lhs[..], rhs.coords());
    }

    #[test]
    fn pull_back_commutes_with_evaluation(t in sorted_rats(2..=4), m in (1i64..6, 1i64..4), x in small_rat()) {
        let m = frac(m.0, m.1);
        let n = t.len();
        let b = reduced_charge(&RootTuple::finite(t).unwrap());
        let p = pull_back(&b, &m);
        let v = matvec(&pushforward_matrix(n, &m), gamma(&x, n - 1).coords());
        let lhs = eval_charge(&p, &gamma(&x, n - 1)).unwrap();
        prop_assert_eq!(lhs, eval_charge(&b, &LatticeVector::new(v).unwrap()).unwrap());
    }

    #[test]
    fn xi_for_pairs_is_the_shifted_midpoint(a in small_rat(), gap in small_rat(), m in (1i64..6, 1i64..4)) {
        let m = frac(m.0, m.1);
        // Ξ_m needs sep(t) > m.
        let t = [a.clone(), &a + &m + gap.abs() + frac(1, 7)];
        let s = xi(&RootTuple::finite(t.to_vec()).unwrap(), &m).unwrap();
        prop_assert_eq!(s.finite_entries(), &[(&t[0] + &t[1] + &m) * frac(1, 2)][..]);
    }

    #[test]
    fn support_forms_pass_on_interlaced_pencils((t, s) in interlaced_pair(2..=3)) {
        let l = Pencil::new(roots_to_poly(&t), roots_to_poly(&s)).unwrap();
        prop_assert!(verify_support(&q_tilde(&l).unwrap(), &l, 20).passed());
        if t.n() == 2 {
            prop_assert!(verify_support(&q_line(&l).unwrap(), &l, 20).passed());
        }
    }

    #[test]
    fn abelian_twists(
        diag in prop::collection::vec(1i64..6, 1..=3),
        r in -4i64..5,
        d in prop::collection::vec(-5i64..6, 3),
        s in -6i64..7,
        g in prop::collection::vec(small_rat(), 3),
        h in prop::collection::vec(small_rat(), 3),
    ) {
        let rho = diag.len();
        let gram: Vec<Vec<Rat>> = (0..rho)
            .map(|i| (0..rho).map(|j| if i != j { int(0) } else if i == 0 { int(diag[0]) } else { int(-diag[i]) }).collect())
            .collect();
        let lat = NsLattice::new(gram).unwrap();
        let v = NsVector { r: int(r), d: d[..rho].iter().map(|&x| int(x)).collect(), s: int(s) };
        let (g, h) = (&g[..rho], &h[..rho]);
        let vg = ab_twist(&lat, &v, g).unwrap();
        prop_assert_eq!(ab_delta_self(&lat, &vg).unwrap(), ab_delta_self(&lat, &v).unwrap());
        let gh: Vec<Rat> = g.iter().zip(h).map(|(a, b)| a + b).collect();
        prop_assert_eq!(ab_twist(&lat, &vg, h).unwrap(), ab_twist(&lat, &v, &gh).unwrap());
        let r2g2 = int(r * r) * lat.dot(g, g).unwrap();
        let dv = ab_delta_self(&lat, &v).unwrap();
        prop_assert_eq!(ab_delta(&lat, &v, &vg).unwrap(), &dv - &r2g2 * frac(1, 2));
        let cross = ab_delta(&lat, &v, &vg).unwrap();
        prop_assert_eq!(&dv * &dv - &cross * &cross, &r2g2 * (&dv - &r2g2 * frac(1, 4)));
    }
}
