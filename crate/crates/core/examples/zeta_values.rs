//! Riemann zeta at a few real and complex points.
//!
//! ```bash
//! cargo run --release --example zeta_values -- 40
//! ```

use hecke_zeta::precision::format_fixed;
use hecke_zeta::{zeta_complex, zeta_real, PrecisionContext};
use rug::{Complex, Float};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let digits: u32 = std::env::args().nth(1).map_or(Ok(30), |d| d.parse())?;
    let ctx = PrecisionContext::for_digits(digits);
    let bits = ctx.working_bits();

    for s in [-3.0, -1.0, 0.0, 0.5, 2.0, 3.0, 4.0] {
        let z = zeta_real(&Float::with_val(bits, s), &ctx)?;
        println!("zeta({s:>4}) = {}", format_fixed(&z, digits));
    }

    let pi = ctx.pi();
    let exact = Float::with_val(bits, pi.square_ref()) / 6u32;
    println!("pi^2/6     = {}", format_fixed(&exact, digits));

    let gamma1 = Float::with_val(
        bits,
        Float::parse("14.134725141734693790457251983562470270784257115699")?,
    );
    let rho = Complex::with_val(bits, (0.5, gamma1));
    let z = zeta_complex(&rho, &ctx)?;
    println!(
        "|zeta(1/2 + 14.1347...i)| = {:.3e}",
        Float::with_val(64, z.abs_ref()).to_f64()
    );

    let s = Complex::with_val(bits, (0.3, 2.0));
    let z = zeta_complex(&s, &ctx)?;
    println!(
        "zeta(0.3 + 2i) = {} + ({})i",
        format_fixed(z.real(), 20),
        format_fixed(z.imag(), 20)
    );
    Ok(())
}
