//! Truncated transfer-operator matrices and the determinants
//! `F_N(s) = det(1 - L(s))`.
//!
//! Entry `(i, j)` vanishes when `i + j` is odd; otherwise, with `k = i + j`,
//!
//! ```text
//! a_ij(s) = 2 ζ(2s + k) w^{-(2s + k)} binom(2s + k - 1, i)      (plain basis)
//! ℓ_ij(s) = sqrt((j + 1)/(i + 1)) · a_ij(s)                      (symmetric basis)
//! ```
//!
//! Entries depend on `i + j` only through `ζ(2s + k)` and `w^{-(2s+k)}`, so
//! these are computed once per anti-diagonal. The binomials are filled along
//! each anti-diagonal by the lower-index recurrence, restarting from the
//! product formula at the first entry of each anti-diagonal.

use rug::ops::Pow;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::binom::{binom, binom_next};
use crate::cache::ZetaCache;
use crate::error::{Error, Result};
use crate::lu::lu_determinant;
use crate::precision::{format_sci, parse_real, PrecisionContext, Scalar};
use crate::zeta::ZetaEngine;

/// Powers `w^{-(2s+k)}` are re-anchored by a fresh exponential this often.
const REANCHOR_EVERY: usize = 64;

/// The Hecke parameter `w > 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupParamRepr", into = "GroupParamRepr")]
pub struct GroupParam {
    w: Float,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct GroupParamRepr {
    label: String,
    #[serde(with = "crate::hexfloat::float")]
    value: Float,
}

impl From<GroupParam> for GroupParamRepr {
    fn from(g: GroupParam) -> Self {
        Self {
            label: g.label,
            value: g.w,
        }
    }
}

impl TryFrom<GroupParamRepr> for GroupParam {
    type Error = Error;

    fn try_from(r: GroupParamRepr) -> Result<Self> {
        let mut g = GroupParam::new(r.value)?;
        g.label = r.label;
        Ok(g)
    }
}

impl GroupParam {
    pub fn new(w: Float) -> Result<Self> {
        if w.is_nan() || w <= 2 {
            return Err(Error::Domain(format!(
                "Hecke parameter must satisfy w > 2, got {}",
                w.to_f64()
            )));
        }
        let label = format_sci(&w, 20);
        Ok(Self { w, label })
    }

    /// Parses decimals or symbolic multiples of π (`2pi`) at `bits` of
    /// precision. The label keeps the caller's spelling.
    pub fn parse(text: &str, bits: u32) -> Result<Self> {
        let w = parse_real(text, bits)?;
        let mut g = Self::new(w)?;
        g.label = text.trim().to_string();
        Ok(g)
    }

    pub fn from_int(w: u32, bits: u32) -> Result<Self> {
        let mut g = Self::new(Float::with_val(bits, w))?;
        g.label = w.to_string();
        Ok(g)
    }

    pub fn w(&self) -> &Float {
        &self.w
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `w` at the context precision. Symbolic inputs should be parsed at (at
    /// least) the working precision.
    pub fn at(&self, ctx: &PrecisionContext) -> Float {
        Float::with_val(ctx.working_bits(), &self.w)
    }
}

/// Which normalisation of the basis the matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// Entries `ℓ_ij`, the orthonormal-basis coefficients.
    Symmetric,
    /// Entries `a_ij = sqrt((i+1)/(j+1)) ℓ_ij`.
    Plain,
}

/// The `N × N` matrix of entries at fixed `(s, w)`.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    n: usize,
    s: Complex,
    w: GroupParam,
    basis: Basis,
    entries: Vec<Complex>,
}

impl TransferMatrix {
    pub fn build(n: usize, s: &Complex, w: &GroupParam, basis: Basis, ctx: &PrecisionContext) -> Result<Self> {
        Self::build_with_cache(n, s, w, basis, ctx, None)
    }

    pub fn build_with_cache(
        n: usize,
        s: &Complex,
        w: &GroupParam,
        basis: Basis,
        ctx: &PrecisionContext,
        cache: Option<&ZetaCache>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("matrix size must be at least 1".into()));
        }
        let bits = ctx.working_bits();
        let s = Complex::with_val(bits, s);
        let entries = if s.imag().is_zero() {
            fill(n, s.real(), w, basis, ctx, cache)?
                .into_iter()
                .map(Scalar::into_complex)
                .collect()
        } else {
            fill(n, &s, w, basis, ctx, cache)?
        };
        Ok(Self {
            n,
            s,
            w: w.clone(),
            basis,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &Complex {
        &self.s
    }

    pub fn w(&self) -> &GroupParam {
        &self.w
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    /// Row-major entries of `1 - M`.
    pub fn one_minus(&self) -> Vec<Complex> {
        one_minus(&self.entries, self.n)
    }
}

/// `F_N(s)` together with the point it was evaluated at.
#[derive(Debug, Clone)]
pub struct FNValue {
    pub value: Complex,
    pub n: usize,
    pub s: Complex,
    pub w: GroupParam,
}

fn one_minus<S: Scalar>(m: &[S], n: usize) -> Vec<S> {
    let mut out: Vec<S> = m.iter().map(Scalar::neg_ref).collect();
    for i in 0..n {
        let bits = out[i * n + i].prec();
        out[i * n + i] = out[i * n + i].add_real(&Float::with_val(bits, 1u32));
    }
    out
}

/// `det(1 - M)` for a matrix whose odd anti-diagonals vanish.
///
/// Such a matrix is block diagonal after grouping even and odd indices, so
/// the determinant is the product of the two parity blocks, each computed by
/// LU with partial pivoting.
pub(crate) fn det_one_minus_checkerboard<S: Scalar>(m: &[S], n: usize) -> S {
    let block = |parity: usize| -> S {
        let idx: Vec<usize> = (parity..n).step_by(2).collect();
        let size = idx.len();
        let mut b = Vec::with_capacity(size * size);
        for &i in &idx {
            for &j in &idx {
                let mut v = m[i * n + j].neg_ref();
                if i == j {
                    let bits = v.prec();
                    v = v.add_real(&Float::with_val(bits, 1u32));
                }
                b.push(v);
            }
        }
        lu_determinant(b, size)
    };
    let even = block(0);
    if n < 2 {
        return even;
    }
    even.mul_ref(&block(1))
}

/// `det(1 - M)` at the context precision. Real matrices take a real fast
/// path.
pub fn det_one_minus(m: &TransferMatrix, ctx: &PrecisionContext) -> FNValue {
    let bits = ctx.working_bits();
    let value = if m.entries.iter().all(|z| z.imag().is_zero()) {
        let real: Vec<Float> = m.entries.iter().map(|z| Float::with_val(bits, z.real())).collect();
        det_one_minus_checkerboard(&real, m.n).into_complex()
    } else {
        let cplx: Vec<Complex> = m.entries.iter().map(|z| Complex::with_val(bits, z)).collect();
        det_one_minus_checkerboard(&cplx, m.n)
    };
    FNValue {
        value,
        n: m.n,
        s: m.s.clone(),
        w: m.w.clone(),
    }
}

/// Checks that `s` stays away from the excluded points `½(1 - 2ℕ₀)` by at
/// least `2^-guard_bits`.
pub fn check_admissible(s: &Complex, ctx: &PrecisionContext) -> Result<()> {
    let bits = ctx.working_bits();
    let two_s = Complex::with_val(bits, s * 2u32);
    // 2s + k = 1 for some even k ≥ 0  ⇔  1 - 2s is a nonnegative even integer.
    let one_minus = Float::with_val(bits, 1u32 - two_s.real());
    let nearest_even = {
        let half = Float::with_val(bits, &one_minus / 2u32).round();
        let v = Float::with_val(bits, half * 2u32);
        if v < 0 {
            Float::new(bits)
        } else {
            v
        }
    };
    let dre = Float::with_val(bits, &one_minus - &nearest_even);
    let dist = Float::with_val(bits, dre.hypot(two_s.imag()));
    let proximity = Float::with_val(64, 1u32) >> ctx.guard_bits();
    if dist < proximity {
        return Err(Error::PoleProximity(format!(
            "s = {}{:+}i",
            format_sci(s.real(), 15),
            s.imag().to_f64()
        )));
    }
    Ok(())
}

/// Remark-driven guard: resolving the zero at `s = -m` needs `N ≥ m + 1`.
fn check_size_at_negative_integer(s: &Complex, n: usize) -> Result<()> {
    if s.imag().is_zero() && s.real().is_integer() && *s.real() < 0 {
        let m = s.real().to_f64().abs() as u32;
        let required = m as usize + 1;
        if n < required {
            return Err(Error::InsufficientSize { m, n, required });
        }
    }
    Ok(())
}

/// `F_N(s) = det(1 - L(s))`.
pub fn f_n(s: &Complex, n: usize, w: &GroupParam, ctx: &PrecisionContext) -> Result<FNValue> {
    f_n_with_cache(s, n, w, ctx, None)
}

pub fn f_n_with_cache(
    s: &Complex,
    n: usize,
    w: &GroupParam,
    ctx: &PrecisionContext,
    cache: Option<&ZetaCache>,
) -> Result<FNValue> {
    check_admissible(s, ctx)?;
    check_size_at_negative_integer(s, n)?;
    let m = TransferMatrix::build_with_cache(n, s, w, Basis::Plain, ctx, cache)?;
    Ok(det_one_minus(&m, ctx))
}

/// `F_N(s)` for real `s`, entirely in real arithmetic.
pub fn f_n_real(s: &Float, n: usize, w: &GroupParam, ctx: &PrecisionContext) -> Result<Float> {
    let sc = Complex::with_val(ctx.working_bits(), (s, 0u32));
    check_admissible(&sc, ctx)?;
    check_size_at_negative_integer(&sc, n)?;
    let s = Float::with_val(ctx.working_bits(), s);
    let entries = fill(n, &s, w, Basis::Plain, ctx, None)?;
    Ok(det_one_minus_checkerboard(&entries, n))
}

/// `ℓ_ij(s)`.
pub fn entry_l(i: usize, j: usize, s: &Complex, w: &GroupParam, ctx: &PrecisionContext) -> Result<Complex> {
    single_entry(i, j, s, w, Basis::Symmetric, ctx)
}

/// `a_ij(s)`.
pub fn entry_a(i: usize, j: usize, s: &Complex, w: &GroupParam, ctx: &PrecisionContext) -> Result<Complex> {
    single_entry(i, j, s, w, Basis::Plain, ctx)
}

fn single_entry(
    i: usize,
    j: usize,
    s: &Complex,
    w: &GroupParam,
    basis: Basis,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    let bits = ctx.working_bits();
    if (i + j) % 2 == 1 {
        return Ok(Complex::new(bits));
    }
    let s = Complex::with_val(bits, s);
    let k = i + j;
    let mut engine = ZetaEngine::new(ctx);
    let arg = Complex::with_val(bits, &s * 2u32) + k as u64;
    let z = engine.eval(&arg)?;
    let p = w_power(&s, k, w, ctx);
    let b = binom(&Complex::with_val(bits, &arg - 1u32), i as u32);
    let mut v = Complex::with_val(bits, &z * &p) * &b * 2u32;
    if basis == Basis::Symmetric {
        v *= symmetric_weight(i, j, bits);
    }
    Ok(v)
}

/// `sqrt((j+1)/(i+1))`.
fn symmetric_weight(i: usize, j: usize, bits: u32) -> Float {
    let r = Float::with_val(bits, (j + 1) as u64) / Float::with_val(bits, (i + 1) as u64);
    r.sqrt()
}

/// `w^{-(2s + k)}` directly.
fn w_power<S: Scalar>(s: &S, k: usize, w: &GroupParam, ctx: &PrecisionContext) -> S {
    let bits = ctx.working_bits();
    let w = w.at(ctx);
    if let Some(e) = integer_exponent(s, k) {
        return S::from_real(Float::with_val(bits, (&w).pow(-e)));
    }
    let ln_w = Float::with_val(bits, w.ln_ref());
    let two_s_k = s
        .mul_real(&Float::with_val(bits, 2u32))
        .add_real(&Float::with_val(bits, k as u64));
    two_s_k.mul_real(&ln_w).neg_ref().exp_ref()
}

/// `2s + k` as an integer when `s` is real and `2s` is integral.
fn integer_exponent<S: Scalar>(s: &S, k: usize) -> Option<i32> {
    if !s.imag_part().is_zero() {
        return None;
    }
    let two_s = Float::with_val(s.prec() + 1, s.real_part() * 2u32);
    if !two_s.is_integer() {
        return None;
    }
    let v = two_s.to_f64() + k as f64;
    (v.abs() < 1e9).then_some(v as i32)
}

fn cached_zeta<S: Scalar>(
    engine: &mut ZetaEngine,
    s: &S,
    k: usize,
    ctx: &PrecisionContext,
    cache: Option<&ZetaCache>,
) -> Result<S> {
    let bits = ctx.working_bits();
    let arg = s
        .mul_real(&Float::with_val(bits, 2u32))
        .add_real(&Float::with_val(bits, k as u64));
    let Some(cache) = cache else {
        return engine.eval(&arg);
    };
    let key_s = s.clone().into_complex();
    if let Some(v) = cache.get(bits, &key_s, k as u32) {
        return Ok(S::from_complex(&v));
    }
    let v = engine.eval(&arg)?;
    cache.insert(bits, &key_s, k as u32, &v.clone().into_complex());
    Ok(v)
}

/// All `N²` entries, row-major.
pub(crate) fn fill<S: Scalar>(
    n: usize,
    s: &S,
    w: &GroupParam,
    basis: Basis,
    ctx: &PrecisionContext,
    cache: Option<&ZetaCache>,
) -> Result<Vec<S>> {
    let bits = ctx.working_bits();
    let s = s.with_prec(bits);
    let zero = S::from_real(Float::new(bits));
    let mut out = vec![zero; n * n];
    let mut engine = ZetaEngine::new(ctx);
    let w_val = w.at(ctx);
    let inv_w2 = Float::with_val(bits, w_val.square_ref()).recip();
    let two = Float::with_val(bits, 2u32);

    let mut power: Option<S> = None;
    for (step, k) in (0..=2 * (n - 1)).step_by(2).enumerate() {
        // w^{-(2s+k)}, advanced by 1/w² and re-anchored periodically.
        let p = match power.take() {
            Some(prev) if step % REANCHOR_EVERY != 0 && integer_exponent(&s, k).is_none() => prev.mul_real(&inv_w2),
            _ => w_power(&s, k, w, ctx),
        };
        power = Some(p.clone());

        let zeta = cached_zeta(&mut engine, &s, k, ctx, cache)?;
        let scale = zeta.mul_ref(&p).mul_real(&two);
        if scale.is_exact_zero() {
            continue;
        }
        let upper = s.mul_real(&two).add_real(&Float::with_val(bits, k as i64 - 1));
        let i_start = k.saturating_sub(n - 1);
        let i_end = k.min(n - 1);
        let mut b = binom(&upper, i_start as u32);
        for i in i_start..=i_end {
            if i > i_start {
                b = binom_next(&b, &upper, (i - 1) as u32);
            }
            let j = k - i;
            let mut v = scale.mul_ref(&b);
            if basis == Basis::Symmetric {
                v = v.mul_real(&symmetric_weight(i, j, bits));
            }
            out[i * n + j] = v;
        }
    }
    Ok(out)
}
