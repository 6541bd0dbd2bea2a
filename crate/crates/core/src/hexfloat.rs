//! Exact text encodings of multiprecision values: `"<prec>:<hex mantissa>"`.

use rug::{Complex, Float};

use crate::error::{Error, Result};

/// Exact hexadecimal digits of `x`, with `@` introducing the exponent.
pub fn to_hex(x: &Float) -> String {
    x.to_string_radix(16, None)
}

/// Reads a value written by [`to_hex`] at `bits` of precision.
pub fn from_hex(text: &str, bits: u32) -> Result<Float> {
    let parsed = Float::parse_radix(text, 16).map_err(|e| Error::Parse(format!("bad hex float {text:?}: {e}")))?;
    Ok(Float::with_val(bits, parsed))
}

pub fn encode_float(x: &Float) -> String {
    format!("{}:{}", x.prec(), to_hex(x))
}

pub fn decode_float(text: &str) -> Result<Float> {
    let (prec, hex) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected <prec>:<hex>, got {text:?}")))?;
    let prec: u32 = prec
        .parse()
        .map_err(|_| Error::Parse(format!("bad precision in {text:?}")))?;
    if !(rug::float::prec_min()..=rug::float::prec_max()).contains(&prec) {
        return Err(Error::Parse(format!("precision {prec} out of range")));
    }
    from_hex(hex, prec)
}

pub fn encode_complex(z: &Complex) -> String {
    format!("{}:{},{}", z.prec().0, to_hex(z.real()), to_hex(z.imag()))
}

pub fn decode_complex(text: &str) -> Result<Complex> {
    let (prec, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected <prec>:<re>,<im>, got {text:?}")))?;
    let (re, im) = rest
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected <prec>:<re>,<im>, got {text:?}")))?;
    let re = decode_float(&format!("{prec}:{re}"))?;
    let im = decode_float(&format!("{prec}:{im}"))?;
    let bits = re.prec();
    Ok(Complex::with_val(bits, (re, im)))
}

/// `#[serde(with = "crate::hexfloat::float")]`
pub mod float {
    use rug::Float;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Float, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::encode_float(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Float, D::Error> {
        let text = String::deserialize(d)?;
        super::decode_float(&text).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "crate::hexfloat::complex")]`
pub mod complex {
    use rug::Complex;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::encode_complex(z))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex, D::Error> {
        let text = String::deserialize(d)?;
        super::decode_complex(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trip_is_exact() {
        for bits in [53u32, 297, 1000] {
            let x = Float::with_val(bits, Float::with_val(bits, 2u32).sqrt() / -7000i32);
            let back = decode_float(&encode_float(&x)).unwrap();
            assert_eq!(back, x);
            assert_eq!(back.prec(), bits);
        }
        assert_eq!(decode_float(&encode_float(&Float::new(64))).unwrap(), 0);
    }

    #[test]
    fn complex_round_trip_is_exact() {
        let z = Complex::with_val(200, (Float::with_val(200, 1u32) / 3u32, -2.5f64));
        assert_eq!(decode_complex(&encode_complex(&z)).unwrap(), z);
    }

    #[test]
    fn malformed_input() {
        assert!(decode_float("abc").is_err());
        assert!(decode_float("64:zz").is_err());
        assert!(decode_float("0:1").is_err());
        assert!(decode_complex("64:1").is_err());
    }
}
