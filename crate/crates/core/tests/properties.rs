use hecke_zeta::binom::{binom, binom_next};
use hecke_zeta::bounds::{BoundFactors, DEFAULT_N_MAX};
use hecke_zeta::matrix::{det_one_minus, f_n, Basis, GroupParam, TransferMatrix};
use hecke_zeta::polylog::{polylog_neg, PolylogOrder};
use hecke_zeta::{c_upper, total_bound, zeta_complex, PrecisionContext};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float};

fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::for_digits(digits)
}

fn cplx(c: &PrecisionContext, re: f64, im: f64) -> Complex {
    Complex::with_val(c.working_bits(), (re, im))
}

fn dist(a: &Complex, b: &Complex) -> Float {
    Float::with_val(64, Complex::with_val(a.prec().0, a - b).abs_ref())
}

fn abs(a: &Complex) -> Float {
    Float::with_val(64, a.abs_ref())
}

/// Stays at least 0.01 away from the excluded points 1/2 - k.
fn admissible(re: f64, im: f64) -> bool {
    let t = 0.5 - re;
    im.abs() > 0.01 || (t - t.round()).abs() > 0.01 || t.round() < 0.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zeta_reflects_under_conjugation(re in -6.0f64..6.0, im in 0.1f64..40.0) {
        let c = ctx(30);
        let s = cplx(&c, re, im);
        let a = zeta_complex(&s, &c).unwrap();
        let b = zeta_complex(&Complex::with_val(c.working_bits(), s.conj_ref()), &c).unwrap();
        let b = Complex::with_val(c.working_bits(), b.conj_ref());
        prop_assert!(dist(&a, &b) <= c.error_allotment() * 2u32);
    }

    #[test]
    fn zeta_matches_dirichlet_series(re in 2.0f64..4.0, im in -20.0f64..20.0) {
        let c = ctx(30);
        let bits = c.working_bits();
        let s = cplx(&c, re, im);
        let terms = 4000u32;
        let mut sum = Complex::new(bits);
        for n in 1..=terms {
            let ln = Float::with_val(bits, n).ln();
            sum += (-Complex::with_val(bits, &s * &ln)).exp();
        }
        // |Σ_{n>M} n^-s| ≤ M^{1-σ} / (σ - 1)
        let tail = Float::with_val(64, terms).pow(1.0 - re) / (re - 1.0);
        let z = zeta_complex(&s, &c).unwrap();
        prop_assert!(dist(&z, &sum) <= tail + c.error_allotment());
    }

    #[test]
    fn binomial_recurrence_matches_product(re in -10.0f64..10.0, im in -10.0f64..10.0, k in 1u32..60) {
        let c = ctx(40);
        let z = cplx(&c, re, im);
        let mut rec = binom(&z, 0);
        for j in 0..k {
            rec = binom_next(&rec, &z, j);
        }
        let direct = binom(&z, k);
        let scale = abs(&direct).max(&Float::with_val(64, 1u32));
        prop_assert!(dist(&rec, &direct) <= scale * 1e-35);
    }

    #[test]
    fn polylog_bound_dominates_partial_sums(x in 0.01f64..0.9, terms in 1u32..3000) {
        let c = ctx(30);
        let xv = c.real(x);
        for (order, p) in [(PolylogOrder::MinusHalf, 0.5f64), (PolylogOrder::MinusThreeHalves, 1.5)] {
            let bound = polylog_neg(order, &xv, &c).unwrap();
            let mut sum = Float::new(c.working_bits());
            let mut power = xv.clone();
            for n in 1..=terms {
                sum += Float::with_val(c.working_bits(), n).pow(p) * &power;
                power *= &xv;
            }
            prop_assert!(bound >= sum);
        }
    }

    #[test]
    fn c_upper_dominates_zeta_values(re in -2.0f64..2.0, im in -5.0f64..5.0) {
        prop_assume!(admissible(re, im));
        let c = ctx(12);
        let s = cplx(&c, re, im);
        let bound = c_upper(&s, &c).unwrap();
        for n in (0..=200).step_by(2) {
            let arg = Complex::with_val(c.working_bits(), &s * 2u32) + n;
            let z = zeta_complex(&arg, &c).unwrap();
            prop_assert!(abs(&z) <= bound.value, "n = {}", n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn determinant_conjugation_symmetry(re in -1.5f64..1.5, im in 0.1f64..3.0, n in 1usize..50, w in 2.2f64..20.0) {
        let c = ctx(25);
        let w = GroupParam::new(c.real(w)).unwrap();
        let s = cplx(&c, re, im);
        let sc = Complex::with_val(c.working_bits(), s.conj_ref());
        let a = f_n(&s, n, &w, &c).unwrap().value;
        let b = f_n(&sc, n, &w, &c).unwrap().value;
        let b = Complex::with_val(c.working_bits(), b.conj_ref());
        let scale = abs(&a).max(&Float::with_val(64, 1u32));
        prop_assert!(dist(&a, &b) <= c.error_allotment() * scale);
    }

    #[test]
    fn basis_invariance(re in -1.5f64..1.5, im in -3.0f64..3.0, n in 1usize..30, w in 2.2f64..20.0) {
        prop_assume!(admissible(re, im));
        let c = ctx(25);
        let w = GroupParam::new(c.real(w)).unwrap();
        let s = cplx(&c, re, im);
        let sym = TransferMatrix::build(n, &s, &w, Basis::Symmetric, &c).unwrap();
        let plain = TransferMatrix::build(n, &s, &w, Basis::Plain, &c).unwrap();
        let a = det_one_minus(&sym, &c).value;
        let b = det_one_minus(&plain, &c).value;
        let scale = abs(&a).max(&Float::with_val(64, 1u32));
        prop_assert!(dist(&a, &b) <= c.error_allotment() * scale);
    }

    #[test]
    fn determinant_stable_under_more_guard_bits(re in 0.2f64..1.5, im in -2.0f64..2.0, n in 1usize..40) {
        prop_assume!(admissible(re, im));
        let c = ctx(25);
        let fine = c.raised(64);
        let w = GroupParam::from_int(4, fine.working_bits()).unwrap();
        let a = f_n(&cplx(&c, re, im), n, &w, &c).unwrap().value;
        let b = f_n(&cplx(&fine, re, im), n, &w, &fine).unwrap().value;
        prop_assert!(dist(&a, &b) <= c.error_allotment());
    }

    #[test]
    fn bounds_shrink_with_precision(re in -1.0f64..1.5, im in -2.0f64..2.0, n in 1usize..300, w in 2.5f64..30.0) {
        prop_assume!(admissible(re, im));
        let lo = ctx(20);
        let hi = ctx(60);
        let wp = GroupParam::new(Float::with_val(53, w)).unwrap();
        let s = cplx(&lo, re, im);
        let a = total_bound(&s, n, &wp, &lo).unwrap();
        let b = total_bound(&s, n, &wp, &hi).unwrap();
        prop_assert!(b.total <= a.total);
        prop_assert!(b.p_n <= a.p_n);
        prop_assert!(b.q <= a.q);
        prop_assert!(b.c.value <= a.c.value);
        prop_assert!(a.total >= a.p_n);
    }

    #[test]
    fn chosen_n_is_minimal(re in 0.55f64..1.0, w in 3.0f64..50.0, digits in 5u32..60) {
        let c = ctx(30);
        let wp = GroupParam::new(c.real(w)).unwrap();
        let f = BoundFactors::new(&cplx(&c, re, 0.0), &wp, &c).unwrap();
        let eps = Float::with_val(c.working_bits(), Float::i_pow_u(10, digits)).recip();
        let n = f.choose_n(&eps, DEFAULT_N_MAX).unwrap();
        prop_assert!(f.total(n) < eps);
        prop_assert!(n == 1 || f.total(n - 1) >= eps);
    }
}

#[test]
fn total_ratio_tends_to_two_over_w() {
    let c = ctx(30);
    for wv in [3u32, 8] {
        let w = GroupParam::from_int(wv, c.working_bits()).unwrap();
        let f = BoundFactors::new(&cplx(&c, 0.75, 0.0), &w, &c).unwrap();
        for n in [200usize, 400, 1000] {
            let r = Float::with_val(64, f.total(n + 1) / f.total(n)).to_f64();
            let target = 2.0 / f64::from(wv);
            assert!((r / target - 1.0).abs() < 0.01, "w = {wv}, N = {n}: {r}");
        }
    }
}

#[test]
fn truncations_agree_within_bounds() {
    let c = ctx(30);
    for (re, im) in [(0.8, 0.0), (0.6, 1.0), (-0.25, 0.5)] {
        let s = cplx(&c, re, im);
        for wv in [4u32, 10] {
            let w = GroupParam::from_int(wv, c.working_bits()).unwrap();
            for n in [20usize, 40] {
                let a = f_n(&s, n, &w, &c).unwrap().value;
                let b = f_n(&s, 2 * n, &w, &c).unwrap().value;
                let slack = total_bound(&s, n, &w, &c).unwrap().total + total_bound(&s, 2 * n, &w, &c).unwrap().total;
                assert!(dist(&a, &b) <= slack, "s = {re}+{im}i, w = {wv}, N = {n}");
            }
        }
    }
}
