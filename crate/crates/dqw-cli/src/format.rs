//! Deterministic number formatting for CSV and JSON output.
//!
//! `g17` mirrors C's `%.17g`: 17 significant digits, trailing zeros
//! stripped, scientific notation once the decimal exponent leaves
//! [-4, 17). 17 digits round-trip every finite f64 exactly, so identical
//! runs produce byte-identical files.

pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponential form");
    let exponent: i32 = exponent.parse().expect("numeric exponent");
    if (-4..17).contains(&exponent) {
        let precision = (16 - exponent).max(0) as usize;
        let fixed = format!("{x:.precision$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    } else {
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    }
}

/// JSON string literal (quotes and escaping included).
pub fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}
