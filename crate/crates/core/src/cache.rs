//! On-disk cache of zeta values `ζ(2s + k)`.
//!
//! File layout:
//!
//! ```text
//! hecke-zeta-cache v1
//! <bits> <re(s) hex> <im(s) hex> <k> <re(ζ) hex> <im(ζ) hex>
//! ...
//! ```
//!
//! Hex fields are exact (see [`crate::hexfloat`]). Files with another header
//! are ignored and replaced on the next write. Every entry is checked on load
//! against a low-precision recomputation and dropped if it disagrees. New
//! entries are appended in one write per [`ZetaCache::persist`] call.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::hexfloat::{from_hex, to_hex};
use crate::precision::PrecisionContext;
use crate::zeta::ZetaEngine;

pub const CACHE_HEADER: &str = "hecke-zeta-cache v1";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Key {
    bits: u32,
    s_re: String,
    s_im: String,
    k: u32,
}

impl Key {
    fn new(bits: u32, s: &Complex, k: u32) -> Self {
        Self {
            bits,
            s_re: to_hex(&Float::with_val(bits, s.real())),
            s_im: to_hex(&Float::with_val(bits, s.imag())),
            k,
        }
    }
}

/// Load statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub loaded: usize,
    pub rejected: usize,
    pub stale_file: bool,
}

#[derive(Debug)]
pub struct ZetaCache {
    path: Option<PathBuf>,
    entries: Mutex<HashMap<Key, Complex>>,
    pending: Mutex<Vec<String>>,
    stats: CacheStats,
}

impl ZetaCache {
    pub fn in_memory() -> Self {
        Self {
            path: None,
            entries: Mutex::new(HashMap::new()),
            pending: Mutex::new(Vec::new()),
            stats: CacheStats::default(),
        }
    }

    /// Opens (or prepares to create) the cache file at `path`.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = Self::in_memory();
        cache.path = Some(path.clone());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(CACHE_HEADER) {
            cache.stats.stale_file = true;
            return Ok(cache);
        }
        let mut map = HashMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            match parse_line(line).and_then(|(key, v, s)| validate(&key, &s, &v).map(|()| (key, v))) {
                Ok((key, v)) => {
                    map.insert(key, v);
                    cache.stats.loaded += 1;
                }
                Err(_) => cache.stats.rejected += 1,
            }
        }
        cache.entries = Mutex::new(map);
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `ζ(2s + k)` computed earlier at `bits` of working precision.
    pub fn get(&self, bits: u32, s: &Complex, k: u32) -> Option<Complex> {
        let key = Key::new(bits, s, k);
        self.entries.lock().expect("cache lock").get(&key).cloned()
    }

    pub fn insert(&self, bits: u32, s: &Complex, k: u32, value: &Complex) {
        let key = Key::new(bits, s, k);
        let value = Complex::with_val(bits, value);
        let line = format!(
            "{} {} {} {} {} {}",
            bits,
            key.s_re,
            key.s_im,
            k,
            to_hex(value.real()),
            to_hex(value.imag())
        );
        let mut entries = self.entries.lock().expect("cache lock");
        if entries.insert(key, value).is_none() {
            self.pending.lock().expect("cache lock").push(line);
        }
    }

    /// Appends entries added since the last call. A file with a foreign
    /// header is replaced.
    pub fn persist(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut pending = self.pending.lock().expect("cache lock");
        let fresh = match fs::read_to_string(path) {
            Ok(t) => t.lines().next().map(str::trim) != Some(CACHE_HEADER),
            Err(_) => true,
        };
        if pending.is_empty() && !fresh {
            return Ok(());
        }
        let mut block = String::new();
        if fresh {
            block.push_str(CACHE_HEADER);
            block.push('\n');
        }
        for line in pending.iter() {
            block.push_str(line);
            block.push('\n');
        }
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let mut file = if fresh {
            OpenOptions::new()
                .create(true)
                .write(true)
                .truncate(true)
                .open(path)
                .map_err(io)?
        } else {
            OpenOptions::new().append(true).open(path).map_err(io)?
        };
        file.write_all(block.as_bytes()).map_err(io)?;
        pending.clear();
        Ok(())
    }
}

fn parse_line(line: &str) -> Result<(Key, Complex, Complex)> {
    let bad = || Error::Cache(format!("malformed cache line {line:?}"));
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 6 {
        return Err(bad());
    }
    let bits: u32 = fields[0].parse().map_err(|_| bad())?;
    if !(rug::float::prec_min()..=rug::float::prec_max()).contains(&bits) {
        return Err(bad());
    }
    let k: u32 = fields[3].parse().map_err(|_| bad())?;
    let s = Complex::with_val(bits, (from_hex(fields[1], bits)?, from_hex(fields[2], bits)?));
    let v = Complex::with_val(bits, (from_hex(fields[4], bits)?, from_hex(fields[5], bits)?));
    let key = Key::new(bits, &s, k);
    if key.s_re != fields[1] || key.s_im != fields[2] {
        return Err(bad());
    }
    Ok((key, v, s))
}

/// Recomputes `ζ(2s + k)` at 64 bits and compares to 24 bits.
fn validate(key: &Key, s: &Complex, value: &Complex) -> Result<()> {
    let ctx = PrecisionContext::with_working_bits(4, 32, 64)?;
    let arg = Complex::with_val(64, s * 2u32) + key.k;
    let mut engine = ZetaEngine::new(&ctx);
    let check: Complex = if arg.imag().is_zero() {
        Complex::with_val(64, (engine.eval(arg.real())?, 0u32))
    } else {
        engine.eval(&arg)?
    };
    let diff = Float::with_val(64, Complex::with_val(64, value - &check).abs().real());
    let scale = Float::with_val(64, check.abs_ref()).max(&Float::with_val(64, 1u32));
    if diff > scale >> 24u32 {
        return Err(Error::Cache(format!("entry for k = {} fails validation", key.k)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::zeta_complex;

    fn zeta_entry(bits: u32, s: &Complex, k: u32) -> Complex {
        let ctx = PrecisionContext::with_working_bits(10, 64, bits).unwrap();
        let arg = Complex::with_val(bits, s * 2u32) + k;
        zeta_complex(&arg, &ctx).unwrap()
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z.cache");
        let s = Complex::with_val(200, (0.3f64, 1.25f64));
        let cache = ZetaCache::open(&path).unwrap();
        for k in [0u32, 2, 4] {
            cache.insert(200, &s, k, &zeta_entry(200, &s, k));
        }
        cache.persist().unwrap();
        cache.persist().unwrap();

        let reopened = ZetaCache::open(&path).unwrap();
        assert_eq!(
            reopened.stats(),
            CacheStats {
                loaded: 3,
                rejected: 0,
                stale_file: false
            }
        );
        assert_eq!(reopened.get(200, &s, 2).unwrap(), zeta_entry(200, &s, 2));
        assert!(reopened.get(201, &s, 2).is_none());
        assert!(reopened.get(200, &s, 6).is_none());
    }

    #[test]
    fn corrupted_entries_are_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z.cache");
        let s = Complex::with_val(128, (0.75f64, 0));
        let good = zeta_entry(128, &s, 2);
        let wrong = Complex::with_val(128, &good + 0.5f64);
        let body = format!(
            "{CACHE_HEADER}\n128 {} 0 2 {} 0\n128 {} 0 4 {} 0\nnot a line\n",
            to_hex(s.real()),
            to_hex(good.real()),
            to_hex(s.real()),
            to_hex(wrong.real()),
        );
        fs::write(&path, body).unwrap();
        let cache = ZetaCache::open(&path).unwrap();
        assert_eq!(cache.stats().loaded, 1);
        assert_eq!(cache.stats().rejected, 2);
        assert!(cache.get(128, &s, 4).is_none());
    }

    #[test]
    fn stale_header_is_ignored_and_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z.cache");
        fs::write(&path, "hecke-zeta-cache v0\n1 2 3 4 5 6\n").unwrap();
        let cache = ZetaCache::open(&path).unwrap();
        assert!(cache.stats().stale_file && cache.is_empty());
        cache.persist().unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), format!("{CACHE_HEADER}\n"));
    }
}
