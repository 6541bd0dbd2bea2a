//! The value at `s = 0` and the trivial zeros at `s = -m`.
//!
//! In the plain basis the first column of `V_N(0)` is `(-1, 0, …, 0)ᵀ` and
//! the remaining block is the transpose of `V_{N-1}(1)`, so
//! `F_N(0) = 2 F_{N-1}(1)` exactly. Near `s = -m` the leading
//! `(2m+1) × (2m+1)` block `U(s)` of `V(-m + s)` decides the order of the
//! zero.

use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lu::{lu_determinant, numerical_rank};
use crate::matrix::{f_n, Basis, GroupParam, TransferMatrix};
use crate::precision::{PrecisionContext, LOG2_10};

/// `F_N(0)` against `2 F_{N-1}(1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuelleReport {
    pub n: usize,
    pub w: GroupParam,
    #[serde(with = "crate::hexfloat::float")]
    pub f0: Float,
    #[serde(with = "crate::hexfloat::float")]
    pub f1: Float,
    /// `|f0 - 2 f1|`
    #[serde(with = "crate::hexfloat::float")]
    pub defect: Float,
    /// `f0 / f1`, the estimate of `R(0)`.
    #[serde(with = "crate::hexfloat::float")]
    pub ratio: Float,
    /// `2^(-working_bits + guard_bits + 8) max(1, |f0|)`
    #[serde(with = "crate::hexfloat::float")]
    pub tolerance: Float,
}

impl RuelleReport {
    pub fn holds(&self) -> bool {
        if self.defect > self.tolerance {
            return false;
        }
        let bits = self.ratio.prec();
        let dev = Float::with_val(bits, &self.ratio - 2u32).abs();
        let scale = Float::with_val(bits, self.f0.abs_ref()).max(&Float::with_val(bits, 1u32));
        let rel = Float::with_val(bits, &self.tolerance / scale);
        dev <= rel * 2u32
    }
}

pub fn ruelle_at_zero(w: &GroupParam, n: usize, ctx: &PrecisionContext) -> Result<RuelleReport> {
    if n < 2 {
        return Err(Error::Domain(format!("the identity needs N >= 2, got {n}")));
    }
    let bits = ctx.working_bits();
    let zero = Complex::new(bits);
    let one = Complex::with_val(bits, (1u32, 0u32));
    let f0 = f_n(&zero, n, w, ctx)?.value.real().clone();
    let f1 = f_n(&one, n - 1, w, ctx)?.value.real().clone();
    let defect = Float::with_val(bits, &f0 - Float::with_val(bits, &f1 * 2u32)).abs();
    let ratio = Float::with_val(bits, &f0 / &f1);
    let scale = Float::with_val(bits, f0.abs_ref()).max(&Float::with_val(bits, 1u32));
    let tolerance = (Float::with_val(bits, 1u32) << (ctx.error_exponent() + 8)) * scale;
    Ok(RuelleReport {
        n,
        w: w.clone(),
        f0,
        f1,
        defect,
        ratio,
        tolerance,
    })
}

/// `U(s) = (a_ij(-m + s))_{i,j=0..2m}`.
#[derive(Debug, Clone)]
pub struct UMatrix {
    pub m: u32,
    pub s_offset: Complex,
    pub w: GroupParam,
    matrix: TransferMatrix,
}

impl UMatrix {
    pub fn size(&self) -> usize {
        self.matrix.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        self.matrix.get(i, j)
    }

    /// Row-major `1 - U(s)`.
    pub fn one_minus(&self) -> Vec<Complex> {
        self.matrix.one_minus()
    }

    /// `det(1 - U(s))`.
    pub fn det_one_minus(&self) -> Complex {
        lu_determinant(self.one_minus(), self.size())
    }
}

pub fn u_matrix(m: u32, s_offset: &Complex, w: &GroupParam, ctx: &PrecisionContext) -> Result<UMatrix> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let bits = ctx.working_bits();
    let s = Complex::with_val(bits, s_offset) - m;
    let matrix = TransferMatrix::build(2 * m as usize + 1, &s, w, Basis::Plain, ctx)?;
    Ok(UMatrix {
        m,
        s_offset: Complex::with_val(bits, s_offset),
        w: w.clone(),
        matrix,
    })
}

/// Rank of `1 - U(0)` against the structure predicted for the zero at `-m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub m: u32,
    pub observed_rank: usize,
    /// `m + 1` for even `m`, `m` for odd `m`.
    pub predicted_rank: usize,
    /// Lower bound `m` on the order of the zero.
    pub degree_lower: u32,
    /// Upper bound `2m + 1` on the order of the zero.
    pub degree_upper: u32,
    /// `2m + 1 - observed_rank`
    pub nullity: usize,
    pub pattern_ok: bool,
}

impl RankReport {
    pub fn holds(&self) -> bool {
        self.pattern_ok && self.observed_rank == self.predicted_rank
    }
}

pub fn predicted_rank(m: u32) -> usize {
    if m.is_multiple_of(2) {
        m as usize + 1
    } else {
        m as usize
    }
}

/// Rank of `1 - U(0)` by complete pivoting with threshold
/// `2^(-working_bits/2)`, plus checks of the support pattern and of the
/// pairing of column `j` with column `2m - j`.
pub fn rank_analysis(m: u32, w: &GroupParam, ctx: &PrecisionContext) -> Result<RankReport> {
    let bits = ctx.working_bits();
    let u = u_matrix(m, &Complex::new(bits), w, ctx)?;
    let a = u.one_minus();
    let size = u.size();
    let threshold = Float::with_val(bits, 1u32) >> (bits / 2);

    let small = |z: &Complex| Float::with_val(bits, z.abs_ref()) <= threshold;
    let center = m as usize;
    for i in 0..size {
        for j in 0..size {
            let on_support = i == j || i + j == size - 1;
            let z = &a[i * size + j];
            if !on_support && !small(z) {
                return Err(Error::PatternMismatch(format!(
                    "entry ({i},{j}) of 1 - U(0) is off the two diagonals"
                )));
            }
            if on_support && i == center && j == center {
                if m % 2 == 1 && !small(z) {
                    return Err(Error::PatternMismatch("central entry is nonzero for odd m".into()));
                }
            } else if on_support && small(z) {
                return Err(Error::PatternMismatch(format!(
                    "entry ({i},{j}) on the diagonals vanishes"
                )));
            }
        }
    }
    for j in 0..=center {
        let k = size - 1 - j;
        for r in 0..size {
            for r2 in r + 1..size {
                let minor = Complex::with_val(bits, &a[r * size + j] * &a[r2 * size + k])
                    - Complex::with_val(bits, &a[r2 * size + j] * &a[r * size + k]);
                if !small(&minor) {
                    return Err(Error::PatternMismatch(format!(
                        "columns {j} and {k} are not proportional"
                    )));
                }
            }
        }
    }

    let (observed_rank, _) = numerical_rank(a, size, size, &threshold);
    Ok(RankReport {
        m,
        observed_rank,
        predicted_rank: predicted_rank(m),
        degree_lower: m,
        degree_upper: 2 * m + 1,
        nullity: size - observed_rank,
        pattern_ok: true,
    })
}

/// Heuristic estimate of the order of the zero of `det(1 - U(s))` at `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub m: u32,
    /// `(k, log10 |det(1 - U(10^-k))|)`
    pub samples: Vec<(u32, f64)>,
    pub slope_estimate: f64,
    /// Largest relative deviation of a consecutive-sample slope from the fit.
    pub residual: f64,
    pub degree_lower: u32,
    pub degree_upper: u32,
    /// Always `false`: the slope is not certified.
    pub certified: bool,
}

impl ProbeReport {
    /// Slope within `[m - 0.25, 2m + 1.25]`.
    pub fn within_bounds(&self) -> bool {
        self.slope_estimate >= f64::from(self.degree_lower) - 0.25
            && self.slope_estimate <= f64::from(self.degree_upper) + 0.25
    }
}

pub const PROBE_EXPONENTS: [u32; 5] = [4, 5, 6, 7, 8];

/// Samples `det(1 - U(s))` at `s = 10^-k`, `k = 4…8`, and fits the slope of
/// `log |det|` against `log s`.
pub fn vanishing_order_probe(m: u32, w: &GroupParam, ctx: &PrecisionContext) -> Result<ProbeReport> {
    let size = 2 * m + 1;
    let w_digits = w.w().to_f64().log10().max(1.0);
    let digits = 8.0 * f64::from(size) + f64::from(size * 2 * m) * w_digits + 20.0;
    let bits = ((digits * LOG2_10).ceil() as u32 + ctx.guard_bits()).max(ctx.working_bits());
    let probe_ctx = PrecisionContext::with_working_bits(ctx.target_digits(), ctx.guard_bits(), bits)?;
    let w_hi = GroupParam::new(Float::with_val(bits, w.w()))?;

    let mut samples = Vec::new();
    for &k in &PROBE_EXPONENTS {
        let s = Complex::with_val(bits, (Float::with_val(bits, Float::i_pow_u(10, k)).recip(), 0u32));
        let det = u_matrix(m, &s, &w_hi, &probe_ctx)?.det_one_minus();
        let mag = Float::with_val(bits, det.abs_ref());
        if mag.is_zero() {
            return Err(Error::IllConditioned(format!("det(1 - U(1e-{k})) evaluated to zero")));
        }
        samples.push((k, Float::with_val(bits, mag.log10_ref()).to_f64()));
    }

    // log10|det| ≈ c + slope · log10 s = c - slope · k
    let xs: Vec<f64> = samples.iter().map(|&(k, _)| -f64::from(k)).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, y)| y).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let residual = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| ((y[1] - y[0]) / (x[1] - x[0]) - slope).abs() / slope.abs().max(1e-300))
        .fold(0.0, f64::max);
    if !residual.is_finite() || residual > 0.1 {
        return Err(Error::IllConditioned(format!(
            "local slopes deviate from the fitted slope {slope:.4} by {:.1}%",
            residual * 100.0
        )));
    }
    Ok(ProbeReport {
        m,
        samples,
        slope_estimate: slope,
        residual,
        degree_lower: m,
        degree_upper: 2 * m + 1,
        certified: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::entry_a;

    fn ctx() -> PrecisionContext {
        PrecisionContext::for_digits(30)
    }

    fn w(c: &PrecisionContext, v: u32) -> GroupParam {
        GroupParam::from_int(v, c.working_bits()).unwrap()
    }

    fn as_f64(z: &Complex) -> f64 {
        assert!(z.imag().is_zero());
        z.real().to_f64()
    }

    #[test]
    fn identity_at_small_sizes() {
        let c = ctx();
        for n in [2usize, 3, 7] {
            let r = ruelle_at_zero(&w(&c, 3), n, &c).unwrap();
            assert!(r.holds(), "n = {n}: defect {}", r.defect.to_f64());
        }
        assert!(ruelle_at_zero(&w(&c, 3), 1, &c).is_err());
    }

    #[test]
    fn shifted_entries_match() {
        let c = ctx();
        let wv = w(&c, 5);
        let zero = Complex::new(c.working_bits());
        let one = Complex::with_val(c.working_bits(), (1, 0));
        for (i, j) in [(0usize, 0usize), (1, 3), (4, 2), (5, 5)] {
            let a = entry_a(i + 1, j + 1, &zero, &wv, &c).unwrap();
            let b = entry_a(j, i, &one, &wv, &c).unwrap();
            let d = Float::with_val(64, Complex::with_val(64, &a - &b).abs_ref());
            assert!(d < 1e-29, "({i},{j})");
        }
    }

    #[test]
    fn u_matrix_m1_is_displayed_matrix() {
        let c = ctx();
        let u = u_matrix(1, &Complex::new(c.working_bits()), &w(&c, 3), &c).unwrap();
        let expect = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        let got: Vec<f64> = u.one_minus().iter().map(as_f64).collect();
        assert_eq!(got, expect);
        assert!(u.get(0, 0).is_zero());
    }

    #[test]
    fn u_matrix_m2_is_displayed_matrix() {
        let c = ctx();
        let u = u_matrix(2, &Complex::new(c.working_bits()), &w(&c, 7), &c).unwrap();
        #[rustfmt::skip]
        let expect = [
            1.0, 0.0, 0.0, 0.0, 1.0,
            0.0, 1.0, 0.0, -1.0, 0.0,
            0.0, 0.0, 2.0, 0.0, 0.0,
            0.0, -1.0, 0.0, 1.0, 0.0,
            1.0, 0.0, 0.0, 0.0, 1.0,
        ];
        let got: Vec<f64> = u.one_minus().iter().map(as_f64).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn ranks() {
        let c = ctx();
        for (m, r) in [(1u32, 1usize), (2, 3), (3, 3), (4, 5)] {
            let rep = rank_analysis(m, &w(&c, 3), &c).unwrap();
            assert_eq!(rep.observed_rank, r, "m = {m}");
            assert_eq!((rep.degree_lower, rep.degree_upper), (m, 2 * m + 1));
            assert!(rep.holds());
        }
    }

    #[test]
    fn block_below_u_vanishes() {
        let c = ctx();
        let wv = w(&c, 4);
        for m in 1..=3u32 {
            let s = Complex::with_val(c.working_bits(), (-(m as i32), 0));
            for i in (2 * m as usize + 1)..(2 * m as usize + 10) {
                for j in 0..=2 * m as usize {
                    assert!(entry_a(i, j, &s, &wv, &c).unwrap().is_zero(), "m={m} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn probe_m1() {
        let c = ctx();
        let p = vanishing_order_probe(1, &w(&c, 3), &c).unwrap();
        assert!(p.within_bounds(), "slope {}", p.slope_estimate);
        assert!(!p.certified);
    }
}
