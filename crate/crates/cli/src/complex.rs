//! Parsing of `a+bi` complex literals for command-line flags.

use num_complex::Complex64;

/// Parse a complex literal: `0.2`, `-1.5e-3`, `0.2+0.05i`, `1-2i`, `0.9i`,
/// `i`, `-i`. The imaginary unit must come last.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".to_string());
    }
    if let Some(body) = s.strip_suffix('i') {
        // find the split between real and imaginary parts: the last +/- that
        // is not a leading sign and not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().rev() {
            if (b == b'+' || b == b'-') && idx > 0 {
                let prev = bytes[idx - 1];
                if prev != b'e' && prev != b'E' {
                    split = Some(idx);
                    break;
                }
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let re: f64 = if re_str.is_empty() {
            0.0
        } else {
            re_str
                .parse()
                .map_err(|_| format!("bad real part in {s:?}"))?
        };
        let im: f64 = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse()
                .map_err(|_| format!("bad imaginary part in {s:?}"))?,
        };
        Ok(Complex64::new(re, im))
    } else {
        let re: f64 = s.parse().map_err(|_| format!("bad complex literal {s:?}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Render as `a+bi` with enough digits to round-trip.
pub fn format_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else if v.im < 0.0 {
        format!("{}-{}i", v.re, -v.im)
    } else {
        format!("{}+{}i", v.re, v.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reals_and_complexes() {
        assert_eq!(parse_complex("0.25").unwrap(), Complex64::new(0.25, 0.0));
        assert_eq!(
            parse_complex("0.2+0.05i").unwrap(),
            Complex64::new(0.2, 0.05)
        );
        assert_eq!(parse_complex("1-2i").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex("0.9i").unwrap(), Complex64::new(0.0, 0.9));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(
            parse_complex("1e-2-3e-1i").unwrap(),
            Complex64::new(0.01, -0.3)
        );
        assert!(parse_complex("pi").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn round_trips() {
        for s in ["0.25", "0.2+0.05i", "1-2i"] {
            let v = parse_complex(s).unwrap();
            assert_eq!(parse_complex(&format_complex(v)).unwrap(), v);
        }
    }
}
