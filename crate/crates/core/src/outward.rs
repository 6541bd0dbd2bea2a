//! Directed-rounding helpers for quantities that must stay valid upper
//! bounds despite rounding.

use rug::float::Round;
use rug::ops::{AddAssignRound, DivAssignRound, MulAssignRound};
use rug::{Complex, Float};

/// `a + b` rounded toward +∞.
pub(crate) fn add_up(a: &Float, b: &Float, bits: u32) -> Float {
    let mut r = Float::with_val_round(bits, a, Round::Up).0;
    r.add_assign_round(b, Round::Up);
    r
}

/// `a - b` rounded toward +∞.
pub(crate) fn sub_up(a: &Float, b: &Float, bits: u32) -> Float {
    Float::with_val_round(bits, a - b, Round::Up).0
}

/// `a - b` rounded toward -∞.
pub(crate) fn sub_down(a: &Float, b: &Float, bits: u32) -> Float {
    Float::with_val_round(bits, a - b, Round::Down).0
}

/// `a · b` rounded toward +∞.
pub(crate) fn mul_up(a: &Float, b: &Float, bits: u32) -> Float {
    let mut r = Float::with_val_round(bits, a, Round::Up).0;
    r.mul_assign_round(b, Round::Up);
    r
}

/// `a / b` rounded toward +∞.
pub(crate) fn div_up(a: &Float, b: &Float, bits: u32) -> Float {
    let mut r = Float::with_val_round(bits, a, Round::Up).0;
    r.div_assign_round(b, Round::Up);
    r
}

pub(crate) fn sqrt_up(a: &Float, bits: u32) -> Float {
    Float::with_val_round(bits, a.sqrt_ref(), Round::Up).0
}

pub(crate) fn exp_up(a: &Float, bits: u32) -> Float {
    Float::with_val_round(bits, a.exp_ref(), Round::Up).0
}

/// `|z|` rounded toward +∞.
pub(crate) fn abs_up(z: &Complex, bits: u32) -> Float {
    let re2 = Float::with_val_round(bits, z.real().square_ref(), Round::Up).0;
    let im2 = Float::with_val_round(bits, z.imag().square_ref(), Round::Up).0;
    sqrt_up(&add_up(&re2, &im2, bits), bits)
}

/// `|z|` rounded toward -∞.
pub(crate) fn abs_down(z: &Complex, bits: u32) -> Float {
    let re2 = Float::with_val_round(bits, z.real().square_ref(), Round::Down).0;
    let im2 = Float::with_val_round(bits, z.imag().square_ref(), Round::Down).0;
    let sum = Float::with_val_round(bits, &re2 + &im2, Round::Down).0;
    Float::with_val_round(bits, sum.sqrt_ref(), Round::Down).0
}

/// Upper bound of `b^e` over `b ∈ [base_lo, base_hi]` (positive) and
/// `e ∈ [exp_lo, exp_hi]`.
pub(crate) fn pow_up(base_lo: &Float, base_hi: &Float, exp_lo: &Float, exp_hi: &Float, bits: u32) -> Float {
    let ln_lo = Float::with_val_round(bits, base_lo.ln_ref(), Round::Down).0;
    let ln_hi = Float::with_val_round(bits, base_hi.ln_ref(), Round::Up).0;
    let corners = [
        mul_up(exp_lo, &ln_lo, bits),
        mul_up(exp_lo, &ln_hi, bits),
        mul_up(exp_hi, &ln_lo, bits),
        mul_up(exp_hi, &ln_hi, bits),
    ];
    let worst = corners
        .into_iter()
        .reduce(|a, b| if b > a { b } else { a })
        .expect("four corners");
    exp_up(&worst, bits)
}
