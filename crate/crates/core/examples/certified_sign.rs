//! Sign certificates for `Z(s)` on the real line, including a point too
//! close to the zero for the default effort.
//!
//! ```bash
//! cargo run --release --example certified_sign
//! ```

use hecke_zeta::precision::format_sci;
use hecke_zeta::roots::{certified_sign_with, SignOptions};
use hecke_zeta::{certified_sign, GroupParam, PrecisionContext};
use rug::Float;

fn main() -> Result<(), hecke_zeta::Error> {
    let ctx = PrecisionContext::for_bisection(15);
    let bits = ctx.working_bits();
    let w = GroupParam::from_int(3, bits)?;
    let eps = SignOptions::for_digits(15, &ctx).eps_hint;

    for s in [0.55, 0.7, 0.75, 0.76, 0.9] {
        let cert = certified_sign(&ctx.real(s), &w, &ctx, &eps)?;
        println!(
            "s = {s:<5} sign {:?}  N = {:>3}  |F_N| = {}  bound = {}  verified = {}",
            cert.sign,
            cert.n,
            format_sci(&Float::with_val(bits, cert.f_value.abs_ref()), 4),
            format_sci(&cert.bound, 4),
            cert.verify()
        );
    }

    // Within 1e-40 of the zero a loose target cannot separate |F_N| from the bound.
    let near = ctx.parse_real("0.7519400803820289875335508713461223856507")?;
    let opts = SignOptions {
        eps_hint: Float::with_val(bits, 1e-20),
        retries: 1,
        n_max: 5000,
    };
    match certified_sign_with(&near, &w, &ctx, &opts) {
        Ok(c) => println!("near the zero: {:?}", c.sign),
        Err(e) => println!("near the zero: {e}"),
    }
    Ok(())
}
