//! Reusing zeta values across evaluations through an on-disk cache.
//!
//! ```bash
//! cargo run --release --example zeta_cache -- /tmp/hecke.cache
//! ```

use std::time::Instant;

use hecke_zeta::matrix::f_n_with_cache;
use hecke_zeta::{GroupParam, PrecisionContext, ZetaCache};
use rug::Complex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("hecke-zeta-example.cache"));

    let ctx = PrecisionContext::for_digits(30);
    let bits = ctx.working_bits();
    let s = Complex::with_val(bits, (0.6, 1.5));
    let n = 120;

    for round in 1..=2 {
        let cache = ZetaCache::open(&path)?;
        let stats = cache.stats();
        let start = Instant::now();
        let mut values = Vec::new();
        for w in [3u32, 4, 5] {
            let w = GroupParam::from_int(w, bits)?;
            values.push(f_n_with_cache(&s, n, &w, &ctx, Some(&cache))?.value);
        }
        cache.persist()?;
        println!(
            "round {round}: loaded {} entries ({} rejected), now {}, {:.2}s",
            stats.loaded,
            stats.rejected,
            cache.len(),
            start.elapsed().as_secs_f64()
        );
        for v in values {
            println!("  F_N = {:.20e} {:+.20e}i", v.real().to_f64(), v.imag().to_f64());
        }
    }
    println!("cache file: {}", path.display());
    Ok(())
}
