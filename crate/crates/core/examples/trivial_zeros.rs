//! Structure of the trivial zeros at `s = -m`: the rank of `1 - U(0)`, the
//! resulting bounds on the order, and a numerical slope probe.
//!
//! ```bash
//! cargo run --release --example trivial_zeros
//! ```

use hecke_zeta::{rank_analysis, u_matrix, vanishing_order_probe, GroupParam, PrecisionContext};
use rug::Complex;

fn main() -> Result<(), hecke_zeta::Error> {
    let ctx = PrecisionContext::for_digits(30);

    let w = GroupParam::from_int(3, ctx.working_bits())?;
    let u = u_matrix(2, &Complex::new(ctx.working_bits()), &w, &ctx)?;
    println!("1 - U(0) for m = 2:");
    let a = u.one_minus();
    for row in a.chunks(u.size()) {
        let cells: Vec<String> = row.iter().map(|z| format!("{:>3}", z.real().to_f64() + 0.0)).collect();
        println!("  [{}]", cells.join(" "));
    }
    println!();

    println!(" w  m  rank  predicted  order bounds  probe slope");
    for wv in [3u32, 10] {
        let w = GroupParam::from_int(wv, ctx.working_bits())?;
        for m in 1..=4 {
            let rank = rank_analysis(m, &w, &ctx)?;
            let probe = vanishing_order_probe(m, &w, &ctx)?;
            println!(
                "{:>2} {:>2} {:>5} {:>10}  [{}, {}]        {:.3}",
                wv,
                m,
                rank.observed_rank,
                rank.predicted_rank,
                rank.degree_lower,
                rank.degree_upper,
                probe.slope_estimate
            );
        }
    }
    Ok(())
}
