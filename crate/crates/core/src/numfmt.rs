//! Stable decimal rendering for reports.

/// `x` rounded to `digits` significant digits, without trailing zeros.
pub fn significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    // Rounding can land on a value like "-0".
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// `x` rounded to `digits` significant digits as a number.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    significant(x, digits).parse().unwrap_or(x)
}
