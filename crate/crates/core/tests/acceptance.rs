//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use hecke_zeta::lu::lu_determinant;
use hecke_zeta::matrix::{det_one_minus, Basis, GroupParam, TransferMatrix};
use hecke_zeta::polylog::{polylog_neg, PolylogOrder};
use hecke_zeta::{
    f_n, hausdorff_table, rank_analysis, ruelle_at_zero, total_bound, u_matrix, vanishing_order_probe, zeta_complex,
    zeta_real, PrecisionContext,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Round;
use rug::ops::{AddAssignRound, MulAssignRound};
use rug::{Complex, Float};

const TABLE: [(&str, &str); 9] = [
    ("3", "0.75194008038202898753355087134612238565071248482239"),
    ("4", "0.68367105376320840963103084607448961221631125476496"),
    ("5", "0.64665638884984061955006624797665443932208623918330"),
    ("6", "0.62296896860108742758578970214133058127260612238989"),
    ("8", "0.59395687467303202626541162773916197787885310359836"),
    ("10", "0.57660658272884532239298217889172324836908688431275"),
    ("16", "0.55011004182730371669178285114466116320309677135534"),
    ("40", "0.52182151093148260901879103287698690165007405447213"),
    ("100", "0.50927941737580653723736709527094585385489171074337"),
];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn abs(z: &Complex) -> Float {
    Float::with_val(64, z.abs_ref())
}

fn dist(a: &Complex, b: &Complex) -> Float {
    Float::with_val(64, Complex::with_val(a.prec().0, a - b).abs_ref())
}

fn sci(x: &Float) -> String {
    format!("{:.3e}", x.to_f64())
}

fn table_reproduction() -> Check {
    let digits = 50;
    let ctx = PrecisionContext::for_bisection(digits);
    let ws: Vec<GroupParam> = TABLE
        .iter()
        .map(|(w, _)| GroupParam::parse(w, ctx.working_bits()).unwrap())
        .collect();
    let rows = hausdorff_table(&ws, digits, &ctx);
    let mut n_max = 0;
    for (row, (w, expected)) in rows.iter().zip(TABLE) {
        let enc = row.result.as_ref().map_err(|e| format!("w = {w}: {e}"))?;
        ensure(enc.verify(), format!("w = {w}: enclosure does not verify"))?;
        let got = enc
            .truncated(digits)
            .ok_or(format!("w = {w}: endpoints disagree at {digits} digits"))?;
        ensure(got == expected, format!("w = {w}: got {got}, expected {expected}"))?;
        n_max = n_max.max(enc.lo_cert.n).max(enc.hi_cert.n);
    }
    ensure(n_max <= 400, format!("N reached {n_max}"))?;
    ensure(ctx.working_bits() <= 400, format!("{} bits", ctx.working_bits()))?;
    Ok(format!("9/9 rows match, max N = {n_max}, {} bits", ctx.working_bits()))
}

fn stated_sizes_suffice() -> Check {
    let ctx = PrecisionContext::for_digits(60);
    let eps = Float::with_val(ctx.working_bits(), Float::i_pow_u(10, 50)).recip();
    let mut out = Vec::new();
    for (s, n, w) in [(0.75, 350, 3u32), (0.55, 100, 8)] {
        let w = GroupParam::from_int(w, ctx.working_bits()).unwrap();
        let s = Complex::with_val(ctx.working_bits(), (s, 0));
        let b = total_bound(&s, n, &w, &ctx).map_err(|e| e.to_string())?;
        ensure(b.total < eps, format!("N = {n}: bound {}", sci(&b.total)))?;
        out.push(format!("N = {n}: {}", sci(&b.total)));
    }
    Ok(out.join(", "))
}

fn golden_ratio() -> Check {
    let digits = 12;
    let ctx = PrecisionContext::for_bisection(digits);
    let bits = ctx.working_bits();
    let w = GroupParam::parse("2pi", bits).map_err(|e| e.to_string())?;
    let enc = hecke_zeta::bisect_delta(&w, digits, &ctx).map_err(|e| e.to_string())?;
    ensure(enc.verify(), "enclosure does not verify")?;
    let phi_inv = (Float::with_val(bits, 5u32).sqrt() - 1u32) / 2u32;
    let lo = Float::with_val(bits, &enc.lo - &phi_inv).abs();
    let hi = Float::with_val(bits, &enc.hi - &phi_inv).abs();
    let upper = Float::with_val(bits, 3.5e-4);
    let lower = Float::with_val(bits, 1e-5);
    for d in [&lo, &hi] {
        ensure(*d < upper && *d > lower, format!("distance {}", sci(d)))?;
    }
    Ok(format!(
        "delta = {}, |delta - 1/phi| = {}",
        enc.truncated(digits).unwrap_or_default(),
        sci(&lo)
    ))
}

fn ruelle_identity() -> Check {
    let ctx = PrecisionContext::for_digits(30);
    let mut worst = 0.0f64;
    for w in [3u32, 8] {
        let w = GroupParam::from_int(w, ctx.working_bits()).unwrap();
        for n in [5usize, 20, 100] {
            let r = ruelle_at_zero(&w, n, &ctx).map_err(|e| e.to_string())?;
            ensure(
                r.holds(),
                format!(
                    "w = {}, N = {n}: defect {}, ratio {}",
                    w.label(),
                    sci(&r.defect),
                    r.ratio
                ),
            )?;
            worst = worst.max(Float::with_val(64, &r.defect / &r.tolerance).to_f64());
        }
    }
    Ok(format!("6 cases, largest defect/tolerance = {worst:.3e}"))
}

fn trivial_zero_structure() -> Check {
    let ctx = PrecisionContext::for_digits(30);
    let bits = ctx.working_bits();
    let allot = ctx.error_allotment();
    let displayed: [(u32, Vec<i32>); 2] = [
        (1, vec![1, 0, 1, 0, 0, 0, 1, 0, 1]),
        (
            2,
            vec![
                1, 0, 0, 0, 1, 0, 1, 0, -1, 0, 0, 0, 2, 0, 0, 0, -1, 0, 1, 0, 1, 0, 0, 0, 1,
            ],
        ),
    ];
    for wv in [3u32, 10] {
        let w = GroupParam::from_int(wv, bits).unwrap();
        for (m, entries) in &displayed {
            let u = u_matrix(*m, &Complex::new(bits), &w, &ctx).map_err(|e| e.to_string())?;
            for (got, want) in u.one_minus().iter().zip(entries) {
                let want = Complex::with_val(bits, (*want, 0));
                ensure(
                    dist(got, &want) <= allot,
                    format!("w = {wv}, m = {m}: entry {got} != {want}"),
                )?;
            }
        }
        for m in 1..=4 {
            let r = rank_analysis(m, &w, &ctx).map_err(|e| e.to_string())?;
            ensure(
                r.holds(),
                format!("w = {wv}, m = {m}: rank {} vs {}", r.observed_rank, r.predicted_rank),
            )?;
            ensure(
                r.degree_lower == m && r.degree_upper == 2 * m + 1,
                format!(
                    "w = {wv}, m = {m}: degree bounds [{}, {}]",
                    r.degree_lower, r.degree_upper
                ),
            )?;
        }
    }
    let mut slopes = Vec::new();
    for wv in [3u32, 10] {
        let w = GroupParam::from_int(wv, bits).unwrap();
        for m in 1..=3 {
            let p = vanishing_order_probe(m, &w, &ctx).map_err(|e| e.to_string())?;
            ensure(
                p.within_bounds(),
                format!("w = {wv}, m = {m}: slope {}", p.slope_estimate),
            )?;
            slopes.push(format!("{:.2}", p.slope_estimate));
        }
    }
    Ok(format!("ranks 1,3,3,5; probe slopes {}", slopes.join(" ")))
}

/// Laplace expansion along the first row.
fn cofactor_det(a: &[Complex], n: usize, bits: u32) -> Complex {
    if n == 1 {
        return a[0].clone();
    }
    let mut total = Complex::new(bits);
    for j in 0..n {
        let minor: Vec<Complex> = (1..n)
            .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| a[r * n + c].clone())
            .collect();
        let term = Complex::with_val(bits, &a[j] * cofactor_det(&minor, n - 1, bits));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn oracle_equivalence() -> Check {
    let ctx = PrecisionContext::for_digits(40);
    let bits = ctx.working_bits();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let tol = Float::with_val(bits, 1u32) >> (bits / 2);
    let mut worst = Float::new(64);
    for case in 0..100 {
        let n = rng.gen_range(1..=6);
        let a: Vec<Complex> = (0..n * n)
            .map(|_| Complex::with_val(bits, (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        let lu = lu_determinant(a.clone(), n);
        let oracle = cofactor_det(&a, n, bits);
        let d = dist(&lu, &oracle);
        ensure(d <= tol, format!("case {case} (n = {n}): difference {}", sci(&d)))?;
        worst.max_mut(&d);
    }
    let ctx = PrecisionContext::for_digits(25);
    let bits = ctx.working_bits();
    for case in 0..20 {
        let n = rng.gen_range(1..=30);
        let w = GroupParam::new(Float::with_val(bits, rng.gen_range(2.2..30.0))).unwrap();
        let s = Complex::with_val(bits, (rng.gen_range(-1.2..1.5), rng.gen_range(0.05..4.0)));
        let sym = TransferMatrix::build(n, &s, &w, Basis::Symmetric, &ctx).map_err(|e| e.to_string())?;
        let plain = TransferMatrix::build(n, &s, &w, Basis::Plain, &ctx).map_err(|e| e.to_string())?;
        let a = det_one_minus(&sym, &ctx).value;
        let b = det_one_minus(&plain, &ctx).value;
        let scale = abs(&a).max(&Float::with_val(64, 1u32));
        ensure(
            dist(&a, &b) <= ctx.error_allotment() * scale,
            format!("basis case {case}: N = {n}, s = {s}, difference {}", sci(&dist(&a, &b))),
        )?;
    }
    Ok(format!(
        "100 LU cases (largest difference {}), 20 basis cases",
        sci(&worst)
    ))
}

fn special_functions() -> Check {
    let ctx = PrecisionContext::for_digits(40);
    let bits = ctx.working_bits();
    let allot = ctx.error_allotment();
    let pi = ctx.pi();
    let zero = zeta_real(&Float::new(bits), &ctx).map_err(|e| e.to_string())?;
    ensure(zero == -0.5f64, format!("zeta(0) = {zero}"))?;
    let pi2 = Float::with_val(bits, pi.square_ref());
    for (s, exact) in [
        (2u32, Float::with_val(bits, &pi2 / 6u32)),
        (4, Float::with_val(bits, pi2.square_ref()) / 90u32),
    ] {
        let z = zeta_real(&Float::with_val(bits, s), &ctx).map_err(|e| e.to_string())?;
        let d = Float::with_val(bits, &z - &exact).abs();
        ensure(d <= allot, format!("zeta({s}) off by {}", sci(&d)))?;
    }
    let t = Float::with_val(bits, Float::parse("14.134725141734693790457251983562").unwrap());
    let rho = Complex::with_val(bits, (0.5, t));
    let at_zero = abs(&zeta_complex(&rho, &ctx).map_err(|e| e.to_string())?);
    ensure(at_zero < 1e-10, format!("|zeta(rho)| = {}", sci(&at_zero)))?;

    let terms = 1_000_000u32;
    for x in [0.05f64, 0.25, 0.5, 0.9] {
        let xv = ctx.real(x);
        let mut half = Float::new(128);
        let mut three_halves = Float::new(128);
        let x128 = Float::with_val(128, x);
        let mut power = x128.clone();
        for n in 1..=terms {
            let mut r = Float::with_val(128, n);
            r.sqrt_round(Round::Down);
            let a = Float::with_val_round(128, &r * &power, Round::Down).0;
            let b = Float::with_val_round(128, &a * n, Round::Down).0;
            half.add_assign_round(&a, Round::Down);
            three_halves.add_assign_round(&b, Round::Down);
            power.mul_assign_round(&x128, Round::Down);
        }
        let h = polylog_neg(PolylogOrder::MinusHalf, &xv, &ctx).map_err(|e| e.to_string())?;
        let t = polylog_neg(PolylogOrder::MinusThreeHalves, &xv, &ctx).map_err(|e| e.to_string())?;
        ensure(h >= half, format!("Li_-1/2({x}) bound {h} below partial sum {half}"))?;
        ensure(
            t >= three_halves,
            format!("Li_-3/2({x}) bound {t} below partial sum {three_halves}"),
        )?;
    }
    Ok(format!(
        "zeta(0), zeta(2), zeta(4) exact to {}; |zeta(rho)| = {}; polylog bounds dominate",
        sci(&allot),
        sci(&at_zero)
    ))
}

fn bound_consistency() -> Check {
    let ctx = PrecisionContext::for_digits(30);
    let bits = ctx.working_bits();
    let mut count = 0;
    for (re, im) in [(0.3, 2.0), (-0.25, 0.0), (0.75, 0.0)] {
        let s = Complex::with_val(bits, (re, im));
        for wv in [3u32, 8] {
            let w = GroupParam::from_int(wv, bits).unwrap();
            for n in [50usize, 100] {
                let a = f_n(&s, n, &w, &ctx).map_err(|e| e.to_string())?.value;
                let b = f_n(&s, 2 * n, &w, &ctx).map_err(|e| e.to_string())?.value;
                let ta = total_bound(&s, n, &w, &ctx).map_err(|e| e.to_string())?.total;
                let tb = total_bound(&s, 2 * n, &w, &ctx).map_err(|e| e.to_string())?.total;
                let d = dist(&a, &b);
                ensure(
                    d <= ta + tb,
                    format!("s = {s}, w = {wv}, N = {n}: difference {}", sci(&d)),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("dimension table to 50 digits", table_reproduction),
        ("stated matrix sizes meet 1e-50", stated_sizes_suffice),
        ("delta at w = 2pi near 1/phi", golden_ratio),
        ("Ruelle value at zero", ruelle_identity),
        ("trivial-zero structure", trivial_zero_structure),
        ("determinant oracles", oracle_equivalence),
        ("special functions", special_functions),
        ("truncation consistency", bound_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
