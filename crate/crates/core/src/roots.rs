//! Certified signs of `Z` on the real line and bisection for `δ_w`.
//!
//! At a real point `s₁`, `|Z(s₁) - F_N(s₁)| ≤ total(N)`. Whenever the total
//! bound is smaller than `|F_N(s₁)|`, `Z(s₁)` has the sign of `F_N(s₁)`.
//! Opposite certified signs at two points enclose a zero of `Z`.

use rayon::prelude::*;
use rug::float::Round;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundFactors, DEFAULT_N_MAX};
use crate::error::{Error, Result};
use crate::matrix::{f_n_real, GroupParam};
use crate::outward::add_up;
use crate::precision::{format_sci, format_truncated, PrecisionContext};

/// Certification retries after the first attempt, each tightening the
/// target by `10^-5`.
pub const DEFAULT_RETRIES: u32 = 3;

/// Smallest `k` tried for the lower bracket point `1/2 + 2^-k`.
const BRACKET_K_START: u32 = 4;
/// Largest `k` tried for the lower bracket point.
const BRACKET_K_MAX: u32 = 40;
/// Extra decimal digits refined beyond the target while the truncations of
/// the endpoints disagree.
const TRUNCATION_SLACK: u32 = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn of(x: &Float) -> Option<Self> {
        if x.is_sign_positive() && !x.is_zero() {
            Some(Sign::Positive)
        } else if x.is_sign_negative() && !x.is_zero() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Proof that `Z(s1)` has sign `sign`: `bound < |f_value|` with
/// `|Z(s1) - f_value| ≤ bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignCertificate {
    #[serde(with = "crate::hexfloat::float")]
    pub s1: Float,
    pub n: usize,
    #[serde(with = "crate::hexfloat::float")]
    pub f_value: Float,
    /// Truncation bound plus the evaluation allotment of the context.
    #[serde(with = "crate::hexfloat::float")]
    pub bound: Float,
    pub sign: Sign,
}

impl SignCertificate {
    /// Re-checks the stored inequality.
    pub fn verify(&self) -> bool {
        let mag = Float::with_val(self.f_value.prec(), self.f_value.abs_ref());
        self.bound < mag && Sign::of(&self.f_value) == Some(self.sign)
    }
}

/// Tuning for [`certified_sign_with`].
#[derive(Debug, Clone)]
pub struct SignOptions {
    pub eps_hint: Float,
    pub retries: u32,
    pub n_max: usize,
}

impl SignOptions {
    /// `eps_hint = 10^-(digits + 10)`.
    pub fn for_digits(digits: u32, ctx: &PrecisionContext) -> Self {
        let bits = ctx.working_bits();
        let eps = Float::with_val(bits, Float::i_pow_u(10, digits + 10)).recip();
        Self {
            eps_hint: eps,
            retries: DEFAULT_RETRIES,
            n_max: DEFAULT_N_MAX,
        }
    }
}

/// Certifies the sign of `Z(s1)` with the default retry schedule.
pub fn certified_sign(s1: &Float, w: &GroupParam, ctx: &PrecisionContext, eps_hint: &Float) -> Result<SignCertificate> {
    let opts = SignOptions {
        eps_hint: eps_hint.clone(),
        retries: DEFAULT_RETRIES,
        n_max: DEFAULT_N_MAX,
    };
    certified_sign_with(s1, w, ctx, &opts)
}

pub fn certified_sign_with(
    s1: &Float,
    w: &GroupParam,
    ctx: &PrecisionContext,
    opts: &SignOptions,
) -> Result<SignCertificate> {
    let bits = ctx.working_bits();
    let s1 = Float::with_val(bits, s1);
    let s = Complex::with_val(bits, (&s1, 0u32));
    let factors = BoundFactors::new(&s, w, ctx)?;
    let allot = ctx.error_allotment();
    let tighten = Float::with_val(bits, Float::i_pow_u(10, 5)).recip();
    let mut eps = Float::with_val(bits, &opts.eps_hint);
    let mut last = None;
    for _ in 0..=opts.retries {
        let n = factors.choose_n(&eps, opts.n_max)?;
        let f = f_n_real(&s1, n, w, ctx)?;
        let bound = add_up(&factors.total(n), &allot, bits);
        let mag = Float::with_val(bits, f.abs_ref());
        if bound < mag {
            if let Some(sign) = Sign::of(&f) {
                return Ok(SignCertificate {
                    s1,
                    n,
                    f_value: f,
                    bound,
                    sign,
                });
            }
        }
        last = Some((n, bound, f));
        eps *= &tighten;
    }
    let (n, bound, f) = last.expect("at least one attempt");
    Err(Error::Undetermined {
        s: format_sci(&s1, 25),
        n,
        bound: format_sci(&bound, 6),
        value: format_sci(&f, 6),
    })
}

/// A certified interval around a zero of `Z` on the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    #[serde(with = "crate::hexfloat::float")]
    pub lo: Float,
    #[serde(with = "crate::hexfloat::float")]
    pub hi: Float,
    pub lo_cert: SignCertificate,
    pub hi_cert: SignCertificate,
    /// `⌊-log10(hi - lo)⌋`.
    pub digits: u32,
    pub w: GroupParam,
}

impl RootEnclosure {
    pub fn width(&self) -> Float {
        Float::with_val(self.lo.prec(), &self.hi - &self.lo)
    }

    /// The common `digits`-place truncation of both endpoints, if they agree.
    pub fn truncated(&self, digits: u32) -> Option<String> {
        let a = format_truncated(&self.lo, digits);
        (a == format_truncated(&self.hi, digits)).then_some(a)
    }

    pub fn midpoint(&self) -> Float {
        Float::with_val(self.lo.prec(), &self.lo + &self.hi) / 2u32
    }

    /// Opposite certified signs and `lo < hi`.
    pub fn verify(&self) -> bool {
        self.lo < self.hi
            && self.lo_cert.verify()
            && self.hi_cert.verify()
            && self.lo_cert.sign != self.hi_cert.sign
            && self.lo_cert.s1 == self.lo
            && self.hi_cert.s1 == self.hi
    }
}

fn decimal_digits(width: &Float) -> u32 {
    if width.is_zero() {
        return u32::MAX;
    }
    let l = Float::with_val(64, width.log10_ref());
    let v = (-l).floor().to_f64();
    if v < 0.0 {
        0
    } else {
        v as u32
    }
}

/// Bisection on `(1/2, 1)` for the unique zero `δ_w`, until the endpoints
/// are `10^-digits` apart and agree to `digits` truncated places.
pub fn bisect_delta(w: &GroupParam, digits: u32, ctx: &PrecisionContext) -> Result<RootEnclosure> {
    bisect_delta_capped(w, digits, ctx, DEFAULT_N_MAX)
}

/// [`bisect_delta`] with truncation sizes limited to `n_max`.
pub fn bisect_delta_capped(w: &GroupParam, digits: u32, ctx: &PrecisionContext, n_max: usize) -> Result<RootEnclosure> {
    let mut ctx = *ctx;
    let mut opts = SignOptions::for_digits(digits, &ctx);
    opts.n_max = n_max;
    let bits = ctx.working_bits();

    let hi_point = Float::with_val(bits, 1u32) - (Float::with_val(bits, 1u32) >> 10u32);
    let hi_cert = match certified_sign_with(&hi_point, w, &ctx, &opts) {
        Ok(c) if c.sign == Sign::Positive => c,
        Ok(_) => {
            return Err(Error::BracketFailure(format!(
                "F is not certified positive at s = 1 - 2^-10 for w = {}",
                w.label()
            )))
        }
        Err(e) => return Err(Error::BracketFailure(format!("upper endpoint: {e}"))),
    };

    let mut lo_cert = None;
    for k in BRACKET_K_START..=BRACKET_K_MAX {
        let point = Float::with_val(bits, 0.5f64) + (Float::with_val(bits, 1u32) >> k);
        match certified_sign_with(&point, w, &ctx, &opts) {
            Ok(c) if c.sign == Sign::Negative => {
                lo_cert = Some(c);
                break;
            }
            Ok(_) | Err(Error::Undetermined { .. }) | Err(Error::BoundUnreachable { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let lo_cert = lo_cert.ok_or_else(|| {
        Error::BracketFailure(format!(
            "no certified negative value of F at 1/2 + 2^-k, k ≤ {BRACKET_K_MAX}, for w = {}",
            w.label()
        ))
    })?;

    let mut enc = RootEnclosure {
        lo: lo_cert.s1.clone(),
        hi: hi_cert.s1.clone(),
        lo_cert,
        hi_cert,
        digits: 0,
        w: w.clone(),
    };
    let target = Float::with_val(bits, Float::i_pow_u(10, digits)).recip();
    let floor = Float::with_val(bits, Float::i_pow_u(10, digits + TRUNCATION_SLACK)).recip();

    loop {
        let width = enc.width();
        let narrow = width < target;
        if narrow && (enc.truncated(digits).is_some() || width < floor) {
            break;
        }
        let cert = certify_near_midpoint(&enc, w, &mut ctx, &mut opts)?;
        let s1 = cert.s1.clone();
        if cert.sign == enc.lo_cert.sign {
            enc.lo = s1;
            enc.lo_cert = cert;
        } else {
            enc.hi = s1;
            enc.hi_cert = cert;
        }
    }
    enc.digits = decimal_digits(&enc.width());
    Ok(enc)
}

/// Certifies the midpoint, else a point `width/1000` to either side, else
/// the midpoint again at 128 more bits.
fn certify_near_midpoint(
    enc: &RootEnclosure,
    w: &GroupParam,
    ctx: &mut PrecisionContext,
    opts: &mut SignOptions,
) -> Result<SignCertificate> {
    let mid = enc.midpoint();
    let nudge = Float::with_val(mid.prec(), enc.width() / 1000u32);
    let candidates = [
        mid.clone(),
        Float::with_val(mid.prec(), &mid + &nudge),
        Float::with_val(mid.prec(), &mid - &nudge),
    ];
    let mut last = None;
    for point in &candidates {
        match certified_sign_with(point, w, ctx, opts) {
            Ok(c) => return Ok(c),
            Err(e @ Error::Undetermined { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    *ctx = ctx.raised(128);
    opts.eps_hint = Float::with_val(ctx.working_bits(), &opts.eps_hint);
    let mid = Float::with_val_round(ctx.working_bits(), &mid, Round::Nearest).0;
    certified_sign_with(&mid, w, ctx, opts).map_err(|e| match e {
        Error::Undetermined { .. } => e,
        other => last.unwrap_or(other),
    })
}

/// One row of a dimension table.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub w: GroupParam,
    pub result: Result<RootEnclosure>,
}

/// [`bisect_delta`] over several parameters, in parallel. Failures are kept
/// per row.
pub fn hausdorff_table(ws: &[GroupParam], digits: u32, ctx: &PrecisionContext) -> Vec<TableRow> {
    hausdorff_table_capped(ws, digits, ctx, DEFAULT_N_MAX)
}

pub fn hausdorff_table_capped(ws: &[GroupParam], digits: u32, ctx: &PrecisionContext, n_max: usize) -> Vec<TableRow> {
    ws.par_iter()
        .map(|w| TableRow {
            w: w.clone(),
            result: bisect_delta_capped(w, digits, ctx, n_max),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(digits: u32) -> (PrecisionContext, GroupParam) {
        let ctx = PrecisionContext::for_bisection(digits);
        let w = GroupParam::from_int(3, ctx.working_bits()).unwrap();
        (ctx, w)
    }

    #[test]
    fn signs_on_either_side() {
        let (ctx, w) = setup(10);
        let eps = SignOptions::for_digits(10, &ctx).eps_hint;
        let above = certified_sign(&ctx.real(0.9f64), &w, &ctx, &eps).unwrap();
        assert_eq!(above.sign, Sign::Positive);
        assert!(above.verify());
        let below = certified_sign(&ctx.real(0.6f64), &w, &ctx, &eps).unwrap();
        assert_eq!(below.sign, Sign::Negative);
        assert!(below.verify());
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let (ctx, w) = setup(10);
        let eps = SignOptions::for_digits(10, &ctx).eps_hint;
        let mut c = certified_sign(&ctx.real(0.9f64), &w, &ctx, &eps).unwrap();
        c.sign = Sign::Negative;
        assert!(!c.verify());
        c.sign = Sign::Positive;
        c.bound = Float::with_val(64, 10u32);
        assert!(!c.verify());
    }

    #[test]
    fn undetermined_near_the_zero() {
        let (ctx, w) = setup(10);
        let s1 = ctx
            .parse_real("0.75194008038202898753355087134612238565071248482239")
            .unwrap();
        let opts = SignOptions {
            eps_hint: Float::with_val(ctx.working_bits(), 1e-20f64),
            retries: 1,
            n_max: DEFAULT_N_MAX,
        };
        assert!(matches!(
            certified_sign_with(&s1, &w, &ctx, &opts),
            Err(Error::Undetermined { .. })
        ));
    }

    #[test]
    fn short_bisection() {
        let (ctx, w) = setup(6);
        let enc = bisect_delta(&w, 6, &ctx).unwrap();
        assert!(enc.verify());
        assert!(enc.digits >= 6);
        assert_eq!(enc.truncated(6).as_deref(), Some("0.751940"));
    }

    #[test]
    fn empty_table() {
        let (ctx, _) = setup(3);
        assert!(hausdorff_table(&[], 3, &ctx).is_empty());
    }
}
