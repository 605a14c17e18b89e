/// Round to three significant figures, halves away from zero, trailing zeros
/// dropped: `−0.1875 → "-0.188"`, `0.5 → "0.5"`, `−2 → "-2"`.
pub fn sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let mut exp = x.abs().log10().floor() as i32;
    let mut rounded = round_at(x, 2 - exp);
    // rounding may carry into the next decade (9.996 → 10.0)
    let carried = rounded.abs().log10().floor() as i32;
    if carried != exp {
        exp = carried;
        rounded = round_at(x, 2 - exp);
    }
    let decimals = (2 - exp).max(0) as usize;
    trim_zeros(format!("{rounded:.decimals$}"))
}

fn round_at(x: f64, decimals: i32) -> f64 {
    if decimals >= 0 {
        let s = 10f64.powi(decimals);
        (x * s).round() / s
    } else {
        let s = 10f64.powi(-decimals);
        (x / s).round() * s
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Fixed CSV float format: 17 significant digits in scientific notation.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}
