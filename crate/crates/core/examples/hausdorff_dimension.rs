//! Certified digits of the Hausdorff dimension of the limit set of `Γ_w`.
//!
//! ```bash
//! cargo run --release --example hausdorff_dimension -- 3 50
//! ```

use std::time::Instant;

use hecke_zeta::{bisect_delta, GroupParam, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let w_text = args.next().unwrap_or_else(|| "3".into());
    let digits: u32 = args.next().map_or(Ok(20), |d| d.parse())?;

    let ctx = PrecisionContext::for_bisection(digits);
    let w = GroupParam::parse(&w_text, ctx.working_bits())?;

    let start = Instant::now();
    let enc = bisect_delta(&w, digits, &ctx)?;
    let elapsed = start.elapsed();

    println!("w          = {}", w.label());
    println!(
        "delta      = {}",
        enc.truncated(digits).unwrap_or_else(|| "(endpoints disagree)".into())
    );
    println!(
        "lo         = {}",
        hecke_zeta::precision::format_truncated(&enc.lo, digits + 5)
    );
    println!(
        "hi         = {}",
        hecke_zeta::precision::format_truncated(&enc.hi, digits + 5)
    );
    println!("N at lo/hi = {} / {}", enc.lo_cert.n, enc.hi_cert.n);
    println!("verified   = {}", enc.verify());
    println!("time       = {:.1}s", elapsed.as_secs_f64());
    Ok(())
}
