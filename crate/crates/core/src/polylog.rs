//! Upper bounds for the polylogarithms `Li_{-1/2}` and `Li_{-3/2}` on `[0, 1)`.

use rug::float::Round;
use rug::ops::AddAssignRound;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outward::{div_up, mul_up, sqrt_up, sub_down};
use crate::precision::PrecisionContext;

/// The two negative orders that enter the error bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolylogOrder {
    /// `Li_{-1/2}(x) = Σ n^{1/2} x^n`
    MinusHalf,
    /// `Li_{-3/2}(x) = Σ n^{3/2} x^n`
    MinusThreeHalves,
}

impl PolylogOrder {
    fn term_weight_up(self, n: u64, bits: u32) -> Float {
        let root = sqrt_up(&Float::with_val(bits, n), bits);
        match self {
            PolylogOrder::MinusHalf => root,
            PolylogOrder::MinusThreeHalves => mul_up(&root, &Float::with_val(bits, n), bits),
        }
    }

    /// Upper bound on `(1 + 1/n)^{-order}`, the growth of the weights from
    /// `n` to `n + 1`.
    fn weight_ratio_up(self, n: u64, bits: u32) -> Float {
        let base = Float::with_val_round(bits, Float::with_val(bits, n + 1) / n, Round::Up).0;
        let root = sqrt_up(&base, bits);
        match self {
            PolylogOrder::MinusHalf => root,
            PolylogOrder::MinusThreeHalves => mul_up(&root, &base, bits),
        }
    }
}

/// An upper bound on `Li_order(x)` within the context's allotment of the
/// true value: the partial sum rounded up plus a ratio-test tail bound.
pub fn polylog_neg(order: PolylogOrder, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if x.is_nan() || *x < 0 || *x >= 1 {
        return Err(Error::Domain(format!(
            "polylogarithm argument must lie in [0, 1), got {}",
            x.to_f64()
        )));
    }
    let bits = ctx.working_bits();
    if x.is_zero() {
        return Ok(Float::new(bits));
    }
    let x = Float::with_val_round(bits, x, Round::Up).0;
    let tolerance = Float::with_val(64, 1u32) << (ctx.error_exponent() - 1);
    let one = Float::with_val(bits, 1u32);

    let mut power = x.clone();
    let mut sum = Float::new(bits);
    let mut n: u64 = 1;
    loop {
        let term = mul_up(&order.term_weight_up(n, bits), &power, bits);
        sum.add_assign_round(&term, Round::Up);
        let ratio = mul_up(&order.weight_ratio_up(n, bits), &x, bits);
        if ratio < one {
            // Σ_{m>n} t_m ≤ t_n · r / (1 - r), since t_{m+1}/t_m ≤ r for m ≥ n.
            let tail = div_up(&mul_up(&term, &ratio, bits), &sub_down(&one, &ratio, bits), bits);
            if tail <= tolerance {
                sum.add_assign_round(&tail, Round::Up);
                return Ok(sum);
            }
        }
        n += 1;
        power = mul_up(&power, &x, bits);
        if n > 50_000_000 {
            return Err(Error::PrecisionExhausted(
                "polylogarithm series did not converge".into(),
            ));
        }
    }
}
