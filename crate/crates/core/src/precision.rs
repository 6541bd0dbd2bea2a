//! Working precision, decimal conversion and the [`Scalar`] abstraction that
//! lets the same code run on real or complex multiprecision values.

use std::fmt;

use rug::float::{Constant, Round};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float, Integer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Minimum number of guard bits carried beyond the requested decimal digits.
pub const MIN_GUARD_BITS: u32 = 32;

/// Default number of guard bits.
pub const DEFAULT_GUARD_BITS: u32 = 64;

/// Binary precision used by every computation.
///
/// Values are passed explicitly; there is no global precision state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecisionContext {
    working_bits: u32,
    guard_bits: u32,
    target_digits: u32,
}

fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32
}

impl PrecisionContext {
    /// Smallest context that holds `target_digits` decimal digits plus
    /// `guard_bits`.
    pub fn new(target_digits: u32, guard_bits: u32) -> Result<Self> {
        Self::with_working_bits(target_digits, guard_bits, bits_for_digits(target_digits) + guard_bits)
    }

    /// Context with an explicit working precision; rejects contexts whose
    /// working precision does not cover the digits and guard bits.
    pub fn with_working_bits(target_digits: u32, guard_bits: u32, working_bits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::Domain("target digits must be positive".into()));
        }
        if guard_bits < MIN_GUARD_BITS {
            return Err(Error::Domain(format!(
                "guard bits must be at least {MIN_GUARD_BITS}, got {guard_bits}"
            )));
        }
        let needed = bits_for_digits(target_digits) + guard_bits;
        if working_bits < needed {
            return Err(Error::Domain(format!(
                "working precision {working_bits} bits is below the {needed} bits needed for {target_digits} digits"
            )));
        }
        Ok(Self {
            working_bits,
            guard_bits,
            target_digits,
        })
    }

    /// `target_digits` decimal digits with the default 64 guard bits.
    pub fn for_digits(target_digits: u32) -> Self {
        Self::new(target_digits.max(1), DEFAULT_GUARD_BITS).expect("valid default context")
    }

    /// Context used by the root enclosure: `digits + 20` decimal digits and
    /// 64 guard bits.
    pub fn for_bisection(digits: u32) -> Self {
        Self::for_digits(digits + 20)
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    /// Same digits and guard, `extra` more working bits.
    pub fn raised(&self, extra: u32) -> Self {
        Self {
            working_bits: self.working_bits + extra,
            ..*self
        }
    }

    /// Exponent `e` of the absolute error allotment `2^e` granted to special
    /// function evaluations.
    pub fn error_exponent(&self) -> i32 {
        -((self.working_bits - self.guard_bits) as i32)
    }

    /// The error allotment `2^(-working_bits + guard_bits)`.
    pub fn error_allotment(&self) -> Float {
        Float::with_val(64, 1u32) << self.error_exponent()
    }

    pub fn real<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits, value)
    }

    pub fn complex(&self, re: &Float, im: &Float) -> Complex {
        Complex::with_val(self.working_bits, (re, im))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.working_bits, Constant::Pi)
    }

    /// Parses a decimal (or `pi`-multiple such as `2pi`) string at working
    /// precision.
    pub fn parse_real(&self, text: &str) -> Result<Float> {
        parse_real(text, self.working_bits)
    }
}

impl fmt::Display for PrecisionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} bits ({} digits + {} guard bits)",
            self.working_bits, self.target_digits, self.guard_bits
        )
    }
}

/// Parses decimals and the symbolic forms `pi`, `2pi`, `2*pi`, `0.5pi`.
pub fn parse_real(text: &str, bits: u32) -> Result<Float> {
    let t = text.trim().to_ascii_lowercase();
    if let Some(head) = t.strip_suffix("pi") {
        let head = head.trim_end_matches('*').trim();
        let factor = if head.is_empty() {
            Float::with_val(bits, 1u32)
        } else if head == "-" {
            Float::with_val(bits, -1i32)
        } else {
            parse_decimal(head, bits)?
        };
        return Ok(factor * Float::with_val(bits, Constant::Pi));
    }
    parse_decimal(&t, bits)
}

fn parse_decimal(text: &str, bits: u32) -> Result<Float> {
    let parsed = Float::parse(text).map_err(|e| Error::Parse(format!("`{text}`: {e}")))?;
    let value = Float::with_val(bits, parsed);
    if !value.is_finite() {
        return Err(Error::Parse(format!("`{text}` is not a finite number")));
    }
    Ok(value)
}

/// Fixed-point decimal rendering with exactly `digits` fractional digits,
/// rounded to nearest. Independent of locale.
pub fn format_fixed(x: &Float, digits: u32) -> String {
    let scaled = scaled_integer(x, digits, Round::Nearest);
    render_scaled(&scaled, digits)
}

/// Fixed-point rendering truncated toward negative infinity.
pub fn format_truncated(x: &Float, digits: u32) -> String {
    let scaled = scaled_integer(x, digits, Round::Down);
    render_scaled(&scaled, digits)
}

/// `round(x * 10^digits)` as an integer in the given direction.
pub fn scaled_integer(x: &Float, digits: u32, round: Round) -> Integer {
    let bits = x.prec().max(64) + bits_for_digits(digits) + 16;
    let scale = Integer::from(10u32).pow(digits);
    let y = Float::with_val(bits, x * &scale);
    let r = match round {
        Round::Down => y.floor(),
        Round::Up => y.ceil(),
        _ => y.round(),
    };
    r.to_integer().expect("finite value")
}

fn render_scaled(scaled: &Integer, digits: u32) -> String {
    let negative = *scaled < 0;
    let mut body = Integer::from(scaled.abs_ref()).to_string();
    let width = digits as usize + 1;
    if body.len() < width {
        body = format!("{}{}", "0".repeat(width - body.len()), body);
    }
    let split = body.len() - digits as usize;
    let mut out = String::with_capacity(body.len() + 2);
    if negative {
        out.push('-');
    }
    out.push_str(&body[..split]);
    if digits > 0 {
        out.push('.');
        out.push_str(&body[split..]);
    }
    out
}

/// Scientific rendering with `sig` significant digits, for bounds.
pub fn format_sci(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(sig.max(2)))
}

/// Arithmetic shared by real and complex evaluation paths.
///
/// Implemented for [`Float`] and [`Complex`]. Operations use the precision of
/// `self` and round to nearest.
pub trait Scalar: Clone + fmt::Debug + Send + Sync {
    fn from_real(x: Float) -> Self;
    fn prec(&self) -> u32;
    /// Copy rounded to `bits` of precision.
    fn with_prec(&self, bits: u32) -> Self;
    fn real_part(&self) -> Float;
    /// Imaginary part; exactly zero for real scalars.
    fn imag_part(&self) -> Float;
    fn is_exact_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;
    fn add_real(&self, x: &Float) -> Self;
    fn mul_real(&self, x: &Float) -> Self;
    fn neg_ref(&self) -> Self;
    fn exp_ref(&self) -> Self;
    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self);
    /// Squared modulus, cheaper than the modulus and ordered the same way.
    fn norm_sqr(&self) -> Float;
    fn modulus(&self) -> Float;
    fn into_complex(self) -> Complex;
    /// Takes the real part when `Self` is real.
    fn from_complex(z: &Complex) -> Self;
}

impl Scalar for Float {
    fn from_real(x: Float) -> Self {
        x
    }
    fn prec(&self) -> u32 {
        Float::prec(self)
    }
    fn with_prec(&self, bits: u32) -> Self {
        Float::with_val(bits, self)
    }
    fn real_part(&self) -> Float {
        self.clone()
    }
    fn imag_part(&self) -> Float {
        Float::new(Float::prec(self))
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        (self + other).complete(Float::prec(self))
    }
    fn sub_ref(&self, other: &Self) -> Self {
        (self - other).complete(Float::prec(self))
    }
    fn mul_ref(&self, other: &Self) -> Self {
        (self * other).complete(Float::prec(self))
    }
    fn div_ref(&self, other: &Self) -> Self {
        (self / other).complete(Float::prec(self))
    }
    fn add_real(&self, x: &Float) -> Self {
        self.add_ref(x)
    }
    fn mul_real(&self, x: &Float) -> Self {
        self.mul_ref(x)
    }
    fn neg_ref(&self) -> Self {
        (-self).complete(Float::prec(self))
    }
    fn exp_ref(&self) -> Self {
        self.exp_ref().complete(Float::prec(self))
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn norm_sqr(&self) -> Float {
        self.square_ref().complete(Float::prec(self))
    }
    fn modulus(&self) -> Float {
        self.abs_ref().complete(Float::prec(self))
    }
    fn into_complex(self) -> Complex {
        let p = Float::prec(&self);
        Complex::with_val(p, (self, 0u32))
    }
    fn from_complex(z: &Complex) -> Self {
        z.real().clone()
    }
}

impl Scalar for Complex {
    fn from_real(x: Float) -> Self {
        let p = x.prec();
        Complex::with_val(p, (x, 0u32))
    }
    fn prec(&self) -> u32 {
        Complex::prec(self).0
    }
    fn with_prec(&self, bits: u32) -> Self {
        Complex::with_val(bits, self)
    }
    fn real_part(&self) -> Float {
        self.real().clone()
    }
    fn imag_part(&self) -> Float {
        self.imag().clone()
    }
    fn is_exact_zero(&self) -> bool {
        self.real().is_zero() && self.imag().is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        (self + other).complete(Complex::prec(self))
    }
    fn sub_ref(&self, other: &Self) -> Self {
        (self - other).complete(Complex::prec(self))
    }
    fn mul_ref(&self, other: &Self) -> Self {
        (self * other).complete(Complex::prec(self))
    }
    fn div_ref(&self, other: &Self) -> Self {
        (self / other).complete(Complex::prec(self))
    }
    fn add_real(&self, x: &Float) -> Self {
        (self + x).complete(Complex::prec(self))
    }
    fn mul_real(&self, x: &Float) -> Self {
        (self * x).complete(Complex::prec(self))
    }
    fn neg_ref(&self) -> Self {
        (-self).complete(Complex::prec(self))
    }
    fn exp_ref(&self) -> Self {
        self.exp_ref().complete(Complex::prec(self))
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn norm_sqr(&self) -> Float {
        Float::with_val(Complex::prec(self).0, self.norm_ref())
    }
    fn modulus(&self) -> Float {
        self.abs_ref().complete(Complex::prec(self)).real().clone()
    }
    fn into_complex(self) -> Complex {
        self
    }
    fn from_complex(z: &Complex) -> Self {
        z.clone()
    }
}

/// `n!` as an exact integer.
pub(crate) fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Upper bound of `x^e` for a positive base and an integer exponent.
pub(crate) fn powi_up(x: &Float, e: i32, bits: u32) -> Float {
    Float::with_val_round(bits, x.pow(e), Round::Up).0
}
