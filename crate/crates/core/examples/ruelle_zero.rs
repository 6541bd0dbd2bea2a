//! `F_N(0) = 2 F_{N-1}(1)` for every truncation size, so `R(0) = 2`.
//!
//! ```bash
//! cargo run --release --example ruelle_zero
//! ```

use hecke_zeta::precision::{format_fixed, format_sci};
use hecke_zeta::{ruelle_at_zero, GroupParam, PrecisionContext};

fn main() -> Result<(), hecke_zeta::Error> {
    let ctx = PrecisionContext::for_digits(30);
    println!("  w     N  F_N(0)                          ratio     defect");
    for w in ["3", "8", "2pi"] {
        let w = GroupParam::parse(w, ctx.working_bits())?;
        for n in [5usize, 20, 100] {
            let r = ruelle_at_zero(&w, n, &ctx)?;
            println!(
                "{:>3} {:>5}  {:<32}  {}  {}  {}",
                w.label(),
                n,
                format_fixed(&r.f0, 28),
                format_fixed(&r.ratio, 6),
                format_sci(&r.defect, 3),
                if r.holds() { "ok" } else { "FAILED" }
            );
        }
    }
    Ok(())
}
