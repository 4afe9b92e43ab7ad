//! Fixed-precision float formatting for emitted data files.

/// Formats `v` with 12 significant digits in the style of C's `%.12g`:
/// plain decimal for moderate exponents, scientific otherwise, trailing
/// zeros trimmed.
pub fn format_sig(v: f64) -> String {
    const DIGITS: usize = 12;
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS as i32 {
        return format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn matches_printf_g12() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.06000000000000001, "0.06"),
            (0.1 + 0.2, "0.3"),
            (1.0 / 3.0, "0.333333333333"),
            (123456.789, "123456.789"),
            (1e-7, "1e-07"),
            (1.2345e-5, "1.2345e-05"),
            (0.0001234, "0.0001234"),
            (1e12, "1e+12"),
            (999999999999.0, "999999999999"),
            (2.175, "2.175"),
        ];
        for (v, want) in cases {
            assert_eq!(format_sig(v), want, "{v:e}");
        }
    }
}
