//! Length strings with explicit units, as used throughout the TOML
//! config: "670nm", "4um", "87.58 µm", "0.5mm", "1e-3m".

/// Parses a length with a mandatory unit suffix into metres.
pub fn parse_length(text: &str) -> Result<f64, String> {
    // Longest suffixes first so "mm" is not read as a number ending in "m".
    const UNITS: [(&str, f64); 6] = [
        ("nm", 1e-9),
        ("um", 1e-6),
        ("µm", 1e-6),
        ("mm", 1e-3),
        ("cm", 1e-2),
        ("m", 1.0),
    ];
    let trimmed = text.trim();
    for (suffix, scale) in UNITS {
        if let Some(number) = trimmed.strip_suffix(suffix) {
            let number = number.trim_end();
            let value: f64 = number
                .parse()
                .map_err(|_| format!("bad length '{text}': '{number}' is not a number"))?;
            if !value.is_finite() {
                return Err(format!("bad length '{text}': not finite"));
            }
            return Ok(value * scale);
        }
    }
    Err(format!(
        "bad length '{text}': expected a number with one of the suffixes nm, um, µm, mm, cm, m"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parses_all_suffixes() {
        assert_relative_eq!(parse_length("670nm").unwrap(), 670e-9);
        assert_relative_eq!(parse_length("20um").unwrap(), 20e-6);
        assert_relative_eq!(parse_length("87.5817µm").unwrap(), 87.5817e-6);
        assert_relative_eq!(parse_length("0.5mm").unwrap(), 0.5e-3);
        assert_relative_eq!(parse_length("2cm").unwrap(), 0.02);
        assert_relative_eq!(parse_length("1e-3m").unwrap(), 1e-3);
    }

    #[test]
    fn tolerates_spacing() {
        assert_relative_eq!(parse_length(" 4 um ").unwrap(), 4e-6);
        assert_relative_eq!(parse_length("0.67 um").unwrap(), 0.67e-6);
    }

    #[test]
    fn negative_and_zero_pass_through() {
        // Range checks belong to the consumer; units only convert.
        assert_relative_eq!(parse_length("0um").unwrap(), 0.0);
        assert_relative_eq!(parse_length("-4um").unwrap(), -4e-6);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_length("670").is_err());
        assert!(parse_length("fastm").is_err());
        assert!(parse_length("12 parsec").is_err());
        assert!(parse_length("nm").is_err());
        assert!(parse_length("inf m").is_err());
    }
}
