//! Fixed-width numeric formatting for CSV and text output.

/// Formats `x` with 9 significant digits. Magnitudes below `1e-4` or at least
/// `1e7` switch to lowercase scientific notation.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.8e}");
    let exponent: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if x.abs() < 1e-4 || exponent >= 7 {
        return sci;
    }
    let decimals = (8 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}
