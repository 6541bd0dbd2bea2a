//! `F_N(s) = det(1 - L_N(s))` at a complex point with its certified bound.
//!
//! ```bash
//! cargo run --release --example evaluate_selberg -- 4 0.3 2.0 25
//! ```

use hecke_zeta::bounds::DEFAULT_N_MAX;
use hecke_zeta::precision::{format_fixed, format_sci};
use hecke_zeta::{f_n, BoundFactors, GroupParam, PrecisionContext};
use rug::{Complex, Float};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let w_text = args.next().unwrap_or_else(|| "4".into());
    let re: f64 = args.next().map_or(Ok(0.3), |x| x.parse())?;
    let im: f64 = args.next().map_or(Ok(2.0), |x| x.parse())?;
    let digits: u32 = args.next().map_or(Ok(25), |d| d.parse())?;

    let ctx = PrecisionContext::for_digits(digits + 10);
    let bits = ctx.working_bits();
    let w = GroupParam::parse(&w_text, bits)?;
    let s = Complex::with_val(bits, (re, im));

    let factors = BoundFactors::new(&s, &w, &ctx)?;
    let eps = Float::with_val(bits, Float::i_pow_u(10, digits)).recip();
    let n = factors.choose_n(&eps, DEFAULT_N_MAX)?;
    let f = f_n(&s, n, &w, &ctx)?;

    println!("w = {}, s = {re} {im:+}i, N = {n}", w.label());
    println!("Re F_N = {}", format_fixed(f.value.real(), digits));
    println!("Im F_N = {}", format_fixed(f.value.imag(), digits));
    println!("|Z(s) - F_N(s)| <= {}", format_sci(&factors.total(n), 6));

    // The sequence F_N settles as N grows.
    for k in [n / 4, n / 2, n] {
        let v = f_n(&s, k.max(1), &w, &ctx)?.value;
        let d = Float::with_val(64, Complex::with_val(bits, &v - &f.value).abs_ref());
        println!("  N = {:>4}: |F_N - F_{n}| = {:.3e}", k.max(1), d.to_f64());
    }
    Ok(())
}
