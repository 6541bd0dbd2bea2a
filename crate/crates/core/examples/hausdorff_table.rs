//! Dimensions for several Hecke parameters at once.
//!
//! ```bash
//! cargo run --release --example hausdorff_table -- 20
//! cargo run --release --example hausdorff_table -- 50 3 4 5 6 8 10 16 40 100
//! ```

use std::time::Instant;

use hecke_zeta::{hausdorff_table, GroupParam, PrecisionContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let digits: u32 = args.next().map_or(Ok(20), |d| d.parse())?;
    let mut ws: Vec<String> = args.collect();
    if ws.is_empty() {
        ws = ["3", "4", "5", "6", "8", "10", "16", "40", "100"]
            .map(String::from)
            .to_vec();
    }

    let ctx = PrecisionContext::for_bisection(digits);
    let groups = ws
        .iter()
        .map(|w| GroupParam::parse(w, ctx.working_bits()))
        .collect::<Result<Vec<_>, _>>()?;

    let start = Instant::now();
    let rows = hausdorff_table(&groups, digits, &ctx);
    println!("{:>5}  delta", "w");
    for row in rows {
        match row.result {
            Ok(enc) => println!("{:>5}  {}", row.w.label(), enc.truncated(digits).unwrap_or_default()),
            Err(e) => println!("{:>5}  failed: {e}", row.w.label()),
        }
    }
    println!("{} bits, {:.1}s", ctx.working_bits(), start.elapsed().as_secs_f64());
    Ok(())
}
