//! Output formatting shared by the `mlynar` binary and its tests.
//!
//! All floating-point values are rendered through [`fmt_sig`] at a fixed
//! number of significant digits, so emitted CSV parses back to the same
//! bytes: for up to 15 digits, decimal -> f64 -> decimal is the identity.

/// Render `x` to `sig` significant digits, C `%g` style: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64, sig: u32) -> String {
    assert!((1..=17).contains(&sig));
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", sig as usize - 1, x);
    let (_, exp) = sci.split_once('e').expect("scientific notation has an e");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp >= -4 && exp < sig as i32 {
        let frac = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.frac$}"))
    } else {
        let (mantissa, _) = sci.split_once('e').unwrap();
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// One CSV line from pre-rendered cells.
pub fn csv_line(cells: &[String]) -> String {
    cells.join(",")
}

/// Minimal JSON string escape; the emitted strings carry no exotic content
/// but control characters are handled for completeness.
pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// JSON object from pre-rendered value fragments.
pub fn json_object(pairs: &[(&str, String)]) -> String {
    let body: Vec<String> = pairs
        .iter()
        .map(|(k, v)| format!("{}:{}", json_string(k), v))
        .collect();
    format!("{{{}}}", body.join(","))
}

/// JSON array from pre-rendered fragments.
pub fn json_array(items: &[String]) -> String {
    format!("[{}]", items.join(","))
}
