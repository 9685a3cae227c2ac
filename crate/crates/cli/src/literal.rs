use num_complex::Complex;

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, with optional exponents
/// (`1e-3-2.5i`). Whitespace is ignored.
pub fn parse_complex(s: &str) -> Result<Complex<f64>, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("not a complex literal: {s:?} (expected a+bi, bi or a)");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return match t.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

/// `a+bi` with enough digits to round-trip.
pub fn format_complex(z: Complex<f64>) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:e}{}{:e}i", z.re, sign, z.im.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let c = |re, im| Complex::new(re, im);
        for (s, want) in [
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("0.35i", c(0.0, 0.35)),
            ("0.2", c(0.2, 0.0)),
            ("1+2i", c(1.0, 2.0)),
            ("-0.5-i", c(-0.5, -1.0)),
            ("1e-3-2.5e1i", c(1e-3, -25.0)),
            ("+i", c(0.0, 1.0)),
            (" 0.1 + 1.2i ", c(0.1, 1.2)),
        ] {
            assert_eq!(parse_complex(s).unwrap(), want, "{s}");
        }
        for s in ["", "j", "1+", "ii", "1+2j", "nan", "1+infi"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for z in [Complex::new(0.1, -0.3), Complex::new(-1e-20, 5.0), Complex::new(0.0, 0.0)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}
