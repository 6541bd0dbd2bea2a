//! Explicit truncation bounds for `|Z(s) - F_N(s)|`.
//!
//! ```text
//! P_N(s) = (2/w)^N (N+1)^{1/2} w C(s) 2^{⌈2|s|⌉} w^{-2σ} L (1 + √2 L),   L = Li_{-1/2}(2/w)
//! Q(s)   = 2 C(s) w^{2|s| - 2σ} (w-1)^{1 - 2|s|} Li_{-3/2}(1/(w-1))
//! |Z(s) - F_N(s)| ≤ P_N(s) exp(P_N(s) + Q(s) + 1)
//! ```
//!
//! Every quantity is rounded toward +∞, with `C(s)` replaced by the upper
//! bound from [`c_upper`].

use rug::float::Round;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::cbound::{c_upper, CBound};
use crate::error::{Error, Result};
use crate::matrix::{check_admissible, GroupParam};
use crate::outward::{abs_down, abs_up, add_up, div_up, exp_up, mul_up, pow_up, sqrt_up, sub_down, sub_up};
use crate::polylog::{polylog_neg, PolylogOrder};
use crate::precision::{format_sci, powi_up, PrecisionContext};

/// Largest truncation size [`choose_n`] will try by default.
pub const DEFAULT_N_MAX: usize = 5000;

/// The bound quantities at one `(s, N, w)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    #[serde(with = "crate::hexfloat::float")]
    pub p_n: Float,
    #[serde(with = "crate::hexfloat::float")]
    pub q: Float,
    pub c: CBound,
    #[serde(with = "crate::hexfloat::float")]
    pub total: Float,
    pub n: usize,
    #[serde(with = "crate::hexfloat::complex")]
    pub s: Complex,
    pub w: GroupParam,
}

/// The `N`-independent parts of the bound at fixed `(s, w)`.
#[derive(Debug, Clone)]
pub struct BoundFactors {
    s: Complex,
    w: GroupParam,
    c: CBound,
    q: Float,
    /// Upper bound on `2/w`.
    ratio: Float,
    /// `w C 2^{⌈2|s|⌉} w^{-2σ} L (1 + √2 L)`.
    p_scale: Float,
    bits: u32,
}

impl BoundFactors {
    pub fn new(s: &Complex, w: &GroupParam, ctx: &PrecisionContext) -> Result<Self> {
        check_admissible(s, ctx)?;
        let c = c_upper(s, ctx)?;
        Self::with_c(s, w, c, ctx)
    }

    /// Uses a caller-supplied upper bound for `C(s)`.
    pub fn with_c(s: &Complex, w: &GroupParam, c: CBound, ctx: &PrecisionContext) -> Result<Self> {
        check_admissible(s, ctx)?;
        let bits = ctx.working_bits();
        let s = Complex::with_val(bits, s);
        let wv = w.w().clone();
        let two = Float::with_val(bits, 2u32);
        let one = Float::with_val(bits, 1u32);

        let ratio = div_up(&two, &wv, bits);
        if ratio >= 1 {
            return Err(Error::Domain("bounds need w > 2".into()));
        }
        let lookup = polylog_neg(PolylogOrder::MinusHalf, &ratio, ctx)?;

        let two_sigma = Float::with_val(bits, s.real() * 2u32);
        let abs_hi = abs_up(&s, bits);
        let abs_lo = abs_down(&s, bits);
        let two_abs_hi = mul_up(&abs_hi, &two, bits);
        let two_abs_lo = Float::with_val_round(bits, &abs_lo * 2u32, Round::Down).0;

        // 2^{⌈2|s|⌉}, taking the ceiling of the rounded-up modulus.
        let ceil = two_abs_hi.clone().ceil();
        let pow2 = Float::with_val(bits, 1u32) << ceil.to_i32_saturating().unwrap_or(i32::MAX);
        let neg_two_sigma = Float::with_val(bits, -&two_sigma);
        let w_sigma = pow_up(&wv, &wv, &neg_two_sigma, &neg_two_sigma, bits);
        let sqrt2 = sqrt_up(&two, bits);
        let shape = mul_up(&lookup, &add_up(&one, &mul_up(&sqrt2, &lookup, bits), bits), bits);

        let mut p_scale = mul_up(&wv, &c.value, bits);
        p_scale = mul_up(&p_scale, &pow2, bits);
        p_scale = mul_up(&p_scale, &w_sigma, bits);
        p_scale = mul_up(&p_scale, &shape, bits);

        // Q(s)
        let w_minus_lo = sub_down(&wv, &one, bits);
        let w_minus_hi = sub_up(&wv, &one, bits);
        let x = div_up(&one, &w_minus_lo, bits);
        let li = polylog_neg(PolylogOrder::MinusThreeHalves, &x, ctx)?;
        let gap_lo = sub_down(&two_abs_lo, &two_sigma, bits);
        let gap_hi = sub_up(&two_abs_hi, &two_sigma, bits);
        let w_gap = pow_up(&wv, &wv, &gap_lo, &gap_hi, bits);
        let e_lo = Float::with_val_round(bits, 1u32 - &two_abs_hi, Round::Down).0;
        let e_hi = Float::with_val_round(bits, 1u32 - &two_abs_lo, Round::Up).0;
        let wm = pow_up(&w_minus_lo, &w_minus_hi, &e_lo, &e_hi, bits);
        let mut q = mul_up(&two, &c.value, bits);
        q = mul_up(&q, &w_gap, bits);
        q = mul_up(&q, &wm, bits);
        q = mul_up(&q, &li, bits);

        Ok(Self {
            s,
            w: w.clone(),
            c,
            q,
            ratio,
            p_scale,
            bits,
        })
    }

    pub fn c(&self) -> &CBound {
        &self.c
    }

    pub fn q(&self) -> &Float {
        &self.q
    }

    /// `P_N(s)`, rounded up.
    pub fn p_n(&self, n: usize) -> Float {
        let bits = self.bits;
        let geometric = powi_up(&self.ratio, n.min(i32::MAX as usize) as i32, bits);
        let root = sqrt_up(&Float::with_val(bits, n as u64 + 1), bits);
        mul_up(&mul_up(&geometric, &root, bits), &self.p_scale, bits)
    }

    /// `P_N exp(P_N + Q + 1)`, rounded up.
    pub fn total(&self, n: usize) -> Float {
        let p = self.p_n(n);
        self.total_from_p(&p)
    }

    fn total_from_p(&self, p: &Float) -> Float {
        let bits = self.bits;
        let exponent = add_up(&add_up(p, &self.q, bits), &Float::with_val(bits, 1u32), bits);
        mul_up(p, &exp_up(&exponent, bits), bits)
    }

    pub fn budget(&self, n: usize) -> ErrorBudget {
        let p_n = self.p_n(n);
        let total = self.total_from_p(&p_n);
        ErrorBudget {
            p_n,
            q: self.q.clone(),
            c: self.c.clone(),
            total,
            n,
            s: self.s.clone(),
            w: self.w.clone(),
        }
    }

    /// Smallest `N ≤ n_max` with `total(N) < eps`, found by doubling then
    /// bisection, followed by a downward scan.
    pub fn choose_n(&self, eps: &Float, n_max: usize) -> Result<usize> {
        let ok = |n: usize| self.total(n) < *eps;
        let mut hi = 1usize;
        while !ok(hi) {
            if hi >= n_max {
                return Err(Error::BoundUnreachable {
                    n: n_max,
                    achieved: format_sci(&self.total(n_max), 6),
                });
            }
            hi = (hi * 2).min(n_max);
        }
        let mut lo = hi / 2;
        // invariant: ok(hi); lo == 0 or !ok(lo)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        while hi > 1 && ok(hi - 1) {
            hi -= 1;
        }
        Ok(hi)
    }
}

/// `P_N(s)` for a given bound on `C(s)`.
pub fn p_n(s: &Complex, n: usize, w: &GroupParam, c: &CBound, ctx: &PrecisionContext) -> Result<Float> {
    Ok(BoundFactors::with_c(s, w, c.clone(), ctx)?.p_n(n))
}

/// `Q(s)` for a given bound on `C(s)`.
pub fn q(s: &Complex, w: &GroupParam, c: &CBound, ctx: &PrecisionContext) -> Result<Float> {
    Ok(BoundFactors::with_c(s, w, c.clone(), ctx)?.q)
}

/// The full budget at `(s, N, w)`.
pub fn total_bound(s: &Complex, n: usize, w: &GroupParam, ctx: &PrecisionContext) -> Result<ErrorBudget> {
    Ok(BoundFactors::new(s, w, ctx)?.budget(n))
}

/// Smallest `N` whose total bound is below `eps`, up to [`DEFAULT_N_MAX`].
pub fn choose_n(s: &Complex, w: &GroupParam, eps: &Float, ctx: &PrecisionContext) -> Result<usize> {
    if eps.is_nan() || *eps <= 0 {
        return Err(Error::Domain("eps must be positive".into()));
    }
    BoundFactors::new(s, w, ctx)?.choose_n(eps, DEFAULT_N_MAX)
}
