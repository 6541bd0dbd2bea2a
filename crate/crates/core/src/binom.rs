//! Binomial coefficients with a complex upper argument.

use rug::{Complex, Float};

use crate::precision::{factorial, PrecisionContext, Scalar};

/// `binom(z, k) = z (z-1) … (z-k+1) / k!` by the product formula.
pub fn binom<S: Scalar>(z: &S, k: u32) -> S {
    let bits = z.prec();
    let mut acc = S::from_real(Float::with_val(bits, 1u32));
    for t in 0..k {
        let factor = z.add_real(&Float::with_val(bits, -i64::from(t)));
        acc = acc.mul_ref(&factor);
    }
    let k_fact = Float::with_val(bits, factorial(k));
    acc.mul_real(&Float::with_val(bits, 1u32 / k_fact))
}

/// One step of the recurrence `binom(z, k+1) = binom(z, k) · (z - k) / (k + 1)`.
pub fn binom_next<S: Scalar>(prev: &S, z: &S, k: u32) -> S {
    let bits = z.prec();
    let factor = z.add_real(&Float::with_val(bits, -i64::from(k)));
    let inv = Float::with_val(bits, 1u32) / Float::with_val(bits, k + 1);
    prev.mul_ref(&factor).mul_real(&inv)
}

/// `binom(z, k)` at the context precision.
pub fn binom_complex(z: &Complex, k: u32, ctx: &PrecisionContext) -> Complex {
    binom(&Complex::with_val(ctx.working_bits(), z), k)
}
