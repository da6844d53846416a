use num_complex::Complex64;

pub const DEFAULT_DIGITS: usize = 12;
pub const PRECISION_VAR: &str = "VIETA_PRECISION";

/// Significant digits for plain-text output: `VIETA_PRECISION` (4 to 17) or
/// [`DEFAULT_DIGITS`].
pub fn precision_from_env() -> Result<usize, String> {
    match std::env::var(PRECISION_VAR) {
        Err(_) => Ok(DEFAULT_DIGITS),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(d) if (4..=17).contains(&d) => Ok(d),
            _ => Err(format!("{PRECISION_VAR}={v} is not an integer in 4..=17")),
        },
    }
}

/// `x` rounded to `digits` significant digits, trailing zeros dropped.
/// Positional notation for exponents in -5..16, scientific otherwise.
pub fn fmt_num(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits.max(1) - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let mut d: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    while d.len() > 1 && d.ends_with('0') {
        d.pop();
    }
    let sign = if negative { "-" } else { "" };
    if !(-5..16).contains(&exp) {
        let (head, tail) = d.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    if exp < 0 {
        return format!("{sign}0.{}{d}", "0".repeat((-exp - 1) as usize));
    }
    let int_len = exp as usize + 1;
    if d.len() <= int_len {
        format!("{sign}{d}{}", "0".repeat(int_len - d.len()))
    } else {
        format!("{sign}{}.{}", &d[..int_len], &d[int_len..])
    }
}

pub fn fmt_complex(z: Complex64, digits: usize) -> String {
    if z.im == 0.0 {
        return fmt_num(z.re, digits);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {}i", fmt_num(z.re, digits), fmt_num(z.im.abs(), digits))
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if k > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            if k + 1 < cells.len() {
                s.push_str(&" ".repeat(w - cell.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Comma-separated rows with a header; numbers keep full precision.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Shortest text that reads back to the same double.
pub fn exact_num(x: f64) -> String {
    format!("{x:?}")
}
