//! Angle parsing: plain radians or pi-fractions like "pi/6", "3pi/8", "pi".

/// Parses `"<coef>pi/<den>"` with optional coefficient and denominator, or a
/// plain float in radians.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let cleaned: String = text
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    if cleaned.is_empty() {
        return Err("empty angle".into());
    }
    let pi_token = if cleaned.contains("pi") {
        Some("pi")
    } else if cleaned.contains('\u{03c0}') {
        Some("\u{03c0}")
    } else {
        None
    };
    let Some(token) = pi_token else {
        return cleaned
            .parse::<f64>()
            .map_err(|_| format!("cannot parse angle '{text}'"));
    };

    let mut parts = cleaned.splitn(2, token);
    let coef_text = parts.next().unwrap_or("");
    let rest = parts.next().unwrap_or("");

    let coef = match coef_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c
            .parse::<f64>()
            .map_err(|_| format!("cannot parse coefficient in angle '{text}'"))?,
    };
    let den = if rest.is_empty() {
        1.0
    } else {
        let stripped = rest
            .strip_prefix('/')
            .ok_or_else(|| format!("cannot parse angle '{text}'"))?;
        let d: f64 = stripped
            .parse()
            .map_err(|_| format!("cannot parse denominator in angle '{text}'"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in angle '{text}'"));
        }
        d
    };
    Ok(coef * std::f64::consts::PI / den)
}

#[cfg(test)]
mod tests {
    use super::parse_angle;
    use std::f64::consts::PI;

    #[test]
    fn parses_fractions_and_radians() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/6").unwrap(), PI / 6.0);
        assert_eq!(parse_angle("3pi/8").unwrap(), 3.0 * PI / 8.0);
        assert_eq!(parse_angle("2*pi/12").unwrap(), 2.0 * PI / 12.0);
        assert_eq!(parse_angle("0.75").unwrap(), 0.75);
        assert_eq!(parse_angle(" Pi / 4 ").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("0").unwrap(), 0.0);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_angle("").is_err());
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("one half").is_err());
    }
}
