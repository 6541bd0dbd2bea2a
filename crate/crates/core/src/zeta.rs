//! Riemann zeta function by Euler–Maclaurin summation.
//!
//! For `M` terms and `ν` Bernoulli corrections,
//!
//! ```text
//! ζ(s) = Σ_{n<M} n^-s + M^-s/2 + M^(1-s)/(s-1)
//!        + Σ_{k=1..ν} B_2k/(2k)! · s(s+1)…(s+2k-2) · M^(-s-2k+1) + R_ν
//! ```
//!
//! with `|R_ν| ≤ |T_{ν+1}| · |s+2ν+1| / (σ+2ν+1)` whenever `σ + 2ν + 1 > 0`,
//! where `T_k` is the k-th correction term. `M` and `ν` are raised until the
//! remainder is below half of the context's error allotment.

use std::sync::{Mutex, OnceLock};

use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::{factorial, PrecisionContext, Scalar};

const MAX_TERMS: usize = 1 << 20;
const MAX_CORRECTIONS: usize = 4000;

/// Exact even-index Bernoulli numbers `B_0, B_2, B_4, …`, shared by all
/// precisions.
fn bernoulli_even(count: usize) -> Vec<Rational> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut b = table.lock().expect("bernoulli table poisoned");
    while b.len() < count {
        // Σ_{k=0}^{2n} C(2n+1, k) B_k = 0 with B_1 = -1/2 and odd B_k = 0 beyond.
        let n = b.len() as u32;
        let top = 2 * n + 1;
        let mut acc = Rational::from(1) - Rational::from((top, 2u32));
        for (k, bk) in b.iter().enumerate().skip(1) {
            let c = Integer::from(Integer::binomial_u(top, 2 * k as u32));
            acc += Rational::from(bk * c);
        }
        let next = -acc / Rational::from(top);
        b.push(next);
    }
    b[..count].to_vec()
}

/// `B_{2k}` as an exact rational.
pub fn bernoulli_2k(k: usize) -> Rational {
    bernoulli_even(k + 1).pop().expect("nonempty")
}

/// Reusable tables for many zeta evaluations at one precision.
#[derive(Debug, Clone)]
pub(crate) struct ZetaEngine {
    bits: u32,
    err_exp: i32,
    logs: Vec<Float>,
    coeffs: Vec<Float>,
}

impl ZetaEngine {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Self {
            bits: ctx.working_bits(),
            err_exp: ctx.error_exponent(),
            logs: vec![Float::new(ctx.working_bits())],
            coeffs: vec![Float::with_val(ctx.working_bits(), 1u32)],
        }
    }

    fn log(&mut self, n: usize) -> &Float {
        while self.logs.len() <= n {
            let k = self.logs.len() as u32;
            self.logs.push(Float::with_val(self.bits, k).ln());
        }
        &self.logs[n]
    }

    /// `B_{2k} / (2k)!`.
    fn coeff(&mut self, k: usize) -> &Float {
        if self.coeffs.len() <= k {
            let bern = bernoulli_even(k + 1);
            for (j, b) in bern.iter().enumerate().take(k + 1).skip(self.coeffs.len()) {
                let q = b / Rational::from(factorial(2 * j as u32));
                self.coeffs.push(Float::with_val(self.bits, &q));
            }
        }
        &self.coeffs[k]
    }

    fn exact_at_nonpositive_integer(&self, n: u32) -> Float {
        // ζ(-n) = (-1)^n B_{n+1} / (n+1)
        if n == 0 {
            return Float::with_val(self.bits, -0.5f64);
        }
        if n.is_multiple_of(2) {
            return Float::new(self.bits);
        }
        let b = bernoulli_2k(n.div_ceil(2) as usize);
        Float::with_val(self.bits, -b / Rational::from(n + 1))
    }

    pub fn eval<S: Scalar>(&mut self, s_in: &S) -> Result<S> {
        let bits = self.bits;
        let s = s_in.with_prec(bits);
        let sigma = s.real_part();
        let t = s.imag_part();

        if t.is_zero() && sigma <= 0 && sigma.is_integer() {
            let n = sigma.to_f64().abs() as u32;
            return Ok(S::from_real(self.exact_at_nonpositive_integer(n)));
        }
        let one = Float::with_val(bits, 1u32);
        let s_minus_1 = s.add_real(&-one.clone());
        let allot = Float::with_val(64, 1u32) << self.err_exp;
        if s_minus_1.modulus() <= allot {
            return Err(Error::PoleAt1);
        }

        let sigma_f = sigma.to_f64();
        let t_f = t.to_f64().abs();
        let target_bits = f64::from(-self.err_exp) + 2.0;
        let m_height = ((t_f / std::f64::consts::PI).ceil() as usize)
            .max((f64::from(bits) * std::f64::consts::LN_2 / 4.0).ceil() as usize);
        let mut m = if sigma_f > 1.0 && target_bits / (sigma_f - 1.0) < 40.0 {
            let direct = 2f64.powf(target_bits / (sigma_f - 1.0)).ceil() as usize + 1;
            direct.min(m_height)
        } else {
            m_height
        }
        .max(2);

        let half_allot = Float::with_val(64, 1u32) << (self.err_exp - 1);
        loop {
            if m > MAX_TERMS {
                return Err(Error::PrecisionExhausted(format!(
                    "zeta: no Euler-Maclaurin parameters below M = {MAX_TERMS}"
                )));
            }
            if let Some(value) = self.try_with_terms(&s, &s_minus_1, m, &half_allot)? {
                return Ok(value);
            }
            m *= 2;
        }
    }

    fn try_with_terms<S: Scalar>(&mut self, s: &S, s_minus_1: &S, m: usize, tolerance: &Float) -> Result<Option<S>> {
        let bits = self.bits;
        let neg_s = s.neg_ref();
        let mut sum = S::from_real(Float::with_val(bits, 1u32));
        for n in 2..m {
            let ln = self.log(n).clone();
            sum = sum.add_ref(&neg_s.mul_real(&ln).exp_ref());
        }
        let ln_m = self.log(m).clone();
        let m_pow = neg_s.mul_real(&ln_m).exp_ref();
        let m_f = Float::with_val(bits, m as u64);
        let half = Float::with_val(bits, 0.5f64);
        sum = sum.add_ref(&m_pow.mul_real(&half));
        sum = sum.add_ref(&m_pow.mul_real(&m_f).div_ref(s_minus_1));

        let sigma = s.real_part();
        let inv_m = Float::with_val(bits, 1u32) / &m_f;
        let inv_m2 = Float::with_val(bits, inv_m.square_ref());
        // u_k = s(s+1)…(s+2k-2) · M^(-s-2k+1)
        let mut u = s.mul_ref(&m_pow).mul_real(&inv_m);
        let mut prev_bound: Option<Float> = None;
        for k in 1..MAX_CORRECTIONS {
            let term = u.mul_real(&self.coeff(k).clone());
            let shift = Float::with_val(bits, (2 * k - 1) as u64);
            let denom = Float::with_val(bits, &sigma + &shift);
            if denom > 0 {
                let lever = s.add_real(&shift).modulus();
                let bound = Float::with_val(64, term.modulus() * lever / denom);
                if bound <= *tolerance {
                    return Ok(Some(sum));
                }
                if let Some(prev) = &prev_bound {
                    if bound > *prev && k > 2 {
                        return Ok(None);
                    }
                }
                prev_bound = Some(bound);
            }
            sum = sum.add_ref(&term);
            let a = s.add_real(&shift);
            let b = s.add_real(&Float::with_val(bits, (2 * k) as u64));
            u = u.mul_ref(&a).mul_ref(&b).mul_real(&inv_m2);
        }
        Ok(None)
    }
}

/// `ζ(s)` for complex `s ≠ 1`, with absolute error at most the context's
/// allotment `2^(-working_bits + guard_bits)`.
pub fn zeta_complex(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let bits = ctx.working_bits();
    if s.imag().is_zero() {
        let re = Float::with_val(bits, s.real());
        let v = ZetaEngine::new(ctx).eval(&re)?;
        return Ok(Complex::with_val(bits, (v, 0u32)));
    }
    let z = Complex::with_val(bits, s);
    ZetaEngine::new(ctx).eval(&z)
}

/// `ζ(s)` for real `s ≠ 1`.
pub fn zeta_real(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let re = Float::with_val(ctx.working_bits(), s);
    ZetaEngine::new(ctx).eval(&re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn ctx() -> PrecisionContext {
        PrecisionContext::for_digits(40)
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_2k(0), Rational::from(1));
        assert_eq!(bernoulli_2k(1), Rational::from((1, 6)));
        assert_eq!(bernoulli_2k(2), Rational::from((-1, 30)));
        assert_eq!(bernoulli_2k(6), Rational::from((691, -2730)));
    }

    #[test]
    fn closed_forms() {
        let c = ctx();
        let tol = c.error_allotment();
        assert_eq!(zeta_real(&c.real(0), &c).unwrap(), -0.5f64);
        assert!(zeta_real(&c.real(-2), &c).unwrap().is_zero());
        let z2 = zeta_real(&c.real(2), &c).unwrap();
        let pi2_6 = c.pi().square() / 6u32;
        assert!(Float::with_val(64, &z2 - &pi2_6).abs() < tol);
        let z4 = zeta_real(&c.real(4), &c).unwrap();
        let pi4_90 = Float::with_val(c.working_bits(), Constant::Pi).square().square() / 90u32;
        assert!(Float::with_val(64, &z4 - &pi4_90).abs() < tol);
        // ζ(-1) = -1/12
        let zm1 = zeta_real(&c.real(-1), &c).unwrap();
        assert_eq!(zm1, Float::with_val(c.working_bits(), -1) / 12u32);
    }

    #[test]
    fn pole_rejected() {
        let c = ctx();
        assert_eq!(zeta_real(&c.real(1), &c), Err(Error::PoleAt1));
        let s = Complex::with_val(c.working_bits(), (1, 0));
        assert_eq!(zeta_complex(&s, &c), Err(Error::PoleAt1));
    }

    #[test]
    fn zeta_three_against_series() {
        // ζ(3) from the series with tail between ∫_{N+1}^∞ and ∫_N^∞ of x^-3.
        let c = ctx();
        let z = zeta_real(&c.real(3), &c).unwrap();
        let expect = c
            .parse_real("1.2020569031595942853997381615114499907649862923405")
            .unwrap();
        assert!(Float::with_val(64, &z - &expect).abs() < 1e-39);
    }

    #[test]
    fn negative_real_part() {
        // ζ(-0.5) ≈ -0.20788622497735456602 (functional-equation value)
        let c = ctx();
        let z = zeta_real(&c.real(-0.5f64), &c).unwrap();
        let expect = c.parse_real("-0.2078862249773545660173067253970493022262").unwrap();
        assert!(Float::with_val(64, &z - &expect).abs() < 1e-38);
    }

    #[test]
    fn large_real_argument_is_near_one() {
        let c = ctx();
        let z = zeta_real(&c.real(400), &c).unwrap();
        let diff = Float::with_val(64, &z - 1u32);
        assert!(diff.abs() < c.error_allotment());
    }
}
