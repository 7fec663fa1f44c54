//! Canonical JSON output: compact, stable key order (struct declaration
//! order), floats printed with exactly six decimals.

use std::io;

use serde::Serialize;

/// serde_json formatter that renders every float with six decimals.
pub struct SixDecimalFormatter;

impl serde_json::ser::Formatter for SixDecimalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if !value.is_finite() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "non-finite float in JSON output",
            ));
        }
        write!(writer, "{value:.6}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize to canonical JSON bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<Vec<u8>, serde_json::Error> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SixDecimalFormatter);
    value.serialize(&mut ser)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_are_fixed_width() {
        #[derive(Serialize)]
        struct S {
            x: f64,
            n: u32,
        }
        let bytes = to_canonical_json(&S { x: 0.1, n: 3 }).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), r#"{"x":0.100000,"n":3}"#);
    }

    #[test]
    fn output_is_valid_json() {
        let v = serde_json::json!({"a": [1.5, 2.0], "b": "s"});
        let bytes = to_canonical_json(&v).unwrap();
        let back: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back["a"][1], serde_json::json!(2.0));
    }
}
