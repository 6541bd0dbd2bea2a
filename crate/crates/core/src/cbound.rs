//! A computable upper bound for `C(s) = sup_{n ∈ 2ℕ₀} |ζ(2s + n)|`.
//!
//! Let `n₀` be the smallest even integer with `2 Re(s) + n₀ ≥ 2`. For even
//! `n ≥ n₀` the argument lies in the region of absolute convergence, so
//! `|ζ(2s + n)| ≤ ζ(2 Re(s) + n) ≤ ζ(2 Re(s) + n₀)`. The finitely many even
//! `n < n₀` are evaluated directly.

use rug::float::Round;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outward::{abs_up, add_up};
use crate::precision::{format_sci, PrecisionContext};
use crate::zeta::ZetaEngine;

/// Certified upper bound for `C(s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CBound {
    #[serde(with = "crate::hexfloat::float")]
    pub value: Float,
    /// The even cutoff `n₀`.
    pub scan_cutoff: u32,
}

impl CBound {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Upper bound of `C(s)`, rounded up and including the zeta error allotment.
pub fn c_upper(s: &Complex, ctx: &PrecisionContext) -> Result<CBound> {
    let bits = ctx.working_bits();
    let s = Complex::with_val(bits, s);
    let two_sigma = Float::with_val(bits, s.real() * 2u32);

    // n₀: smallest even integer with 2σ + n₀ ≥ 2.
    let gap = Float::with_val(bits, 2u32 - &two_sigma);
    let mut n0: u32 = if gap <= 0 {
        0
    } else {
        let g = gap.ceil().to_f64();
        if g > 1e6 {
            return Err(Error::Domain(format!("Re(s) = {} is too negative", s.real().to_f64())));
        }
        g as u32
    };
    if n0 % 2 == 1 {
        n0 += 1;
    }

    let mut engine = ZetaEngine::new(ctx);
    let proximity = Float::with_val(64, 1u32) >> ctx.guard_bits();
    let allot = ctx.error_allotment();
    let mut best = Float::new(bits);

    for n in (0..n0).step_by(2) {
        let arg = Complex::with_val(bits, &s * 2u32) + n;
        let dist = Float::with_val(bits, Complex::with_val(bits, &arg - 1u32).abs().real());
        if dist < proximity {
            return Err(Error::PoleProximity(format!(
                "s = {} (2s + {n} lies within 2^-{} of 1)",
                format_complex_short(&s),
                ctx.guard_bits()
            )));
        }
        let z = if arg.imag().is_zero() {
            let v = engine.eval(arg.real())?;
            Complex::with_val(bits, (v, 0u32))
        } else {
            engine.eval(&arg)?
        };
        let m = add_up(&abs_up(&z, bits), &allot, bits);
        if m > best {
            best = m;
        }
    }

    let tail_arg = Float::with_val(bits, &two_sigma + n0);
    let tail = engine.eval(&tail_arg)?;
    let tail = add_up(&tail, &allot, bits);
    if tail > best {
        best = tail;
    }
    Ok(CBound {
        value: Float::with_val_round(bits, &best, Round::Up).0,
        scan_cutoff: n0,
    })
}

fn format_complex_short(s: &Complex) -> String {
    format!("{}{:+}i", format_sci(s.real(), 12), s.imag().to_f64())
}
