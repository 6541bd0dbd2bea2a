//! The dimension at `w = 2π` sits close to, but not on, `1/φ`.
//!
//! ```bash
//! cargo run --release --example golden_ratio
//! ```

use hecke_zeta::{bisect_delta, GroupParam, PrecisionContext};
use rug::Float;

fn main() -> Result<(), hecke_zeta::Error> {
    let digits = 15;
    let ctx = PrecisionContext::for_bisection(digits);
    let bits = ctx.working_bits();
    let w = GroupParam::parse("2pi", bits)?;
    let enc = bisect_delta(&w, digits, &ctx)?;

    let phi_inv = (Float::with_val(bits, 5u32).sqrt() - 1u32) / 2u32;
    let gap = Float::with_val(bits, &enc.midpoint() - &phi_inv);
    println!("delta(2pi)    = {}", enc.truncated(digits).unwrap_or_default());
    println!(
        "1/phi         = {}",
        hecke_zeta::precision::format_truncated(&phi_inv, digits)
    );
    println!("delta - 1/phi = {:.4e}", gap.to_f64());
    Ok(())
}
