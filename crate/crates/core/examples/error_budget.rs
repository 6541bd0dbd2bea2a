//! The truncation bound `P_N Q C` and the smallest `N` reaching a target.
//!
//! ```bash
//! cargo run --release --example error_budget -- 3 0.75 50
//! ```

use hecke_zeta::bounds::DEFAULT_N_MAX;
use hecke_zeta::precision::format_sci;
use hecke_zeta::{BoundFactors, GroupParam, PrecisionContext};
use rug::{Complex, Float};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let w_text = args.next().unwrap_or_else(|| "3".into());
    let s_text = args.next().unwrap_or_else(|| "0.75".into());
    let digits: u32 = args.next().map_or(Ok(50), |d| d.parse())?;

    let ctx = PrecisionContext::for_digits(digits + 10);
    let bits = ctx.working_bits();
    let w = GroupParam::parse(&w_text, bits)?;
    let s = Complex::with_val(bits, (ctx.parse_real(&s_text)?, 0u32));
    let factors = BoundFactors::new(&s, &w, &ctx)?;

    println!("w = {}, s = {s_text}", w.label());
    println!("Q = {}", format_sci(factors.q(), 6));
    println!("C = {}", format_sci(&factors.c().value, 6));
    println!();
    println!("    N  P_N           total");
    for n in [10usize, 50, 100, 200, 350, 500] {
        let b = factors.budget(n);
        println!("{n:>5}  {:<12}  {}", format_sci(&b.p_n, 6), format_sci(&b.total, 6));
    }

    let eps = Float::with_val(bits, Float::i_pow_u(10, digits)).recip();
    let n = factors.choose_n(&eps, DEFAULT_N_MAX)?;
    println!();
    println!(
        "smallest N with total < 1e-{digits}: {n} ({})",
        format_sci(&factors.total(n), 6)
    );
    Ok(())
}
