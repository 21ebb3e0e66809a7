//! Text rendering of bicomplex values.
//!
//! `{}` prints each component at full round-trip precision; `{:.p}` prints
//! `p` significant digits relative to the largest component, so rounding
//! noise below that scale shows as `0`.

use std::fmt;

use crate::bicomplex::{Bicomplex, Complex, IdempotentPair};

/// `x` to `digits` significant digits, `%g` style: fixed notation for
/// decimal exponents in `[-5, digits)`, scientific otherwise, trailing
/// zeros dropped.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').unwrap_or((&sci, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
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

/// Writes `c0 + c1*u1 + c2*u2 + ...` with the signs folded into the operators.
fn write_terms(f: &mut fmt::Formatter<'_>, parts: &[(f64, &str)]) -> fmt::Result {
    let scale = parts.iter().fold(0.0f64, |m, (x, _)| m.max(x.abs()));
    let precision = f.precision();
    let show = |x: f64| -> String {
        match precision {
            Some(p) if x.abs() < scale * 10f64.powi(-(p as i32)) => "0".into(),
            Some(p) => format_significant(x.abs(), p),
            None => (x.abs()).to_string(),
        }
    };
    for (k, &(x, unit)) in parts.iter().enumerate() {
        let negative = x < 0.0 && show(x) != "0";
        let body = show(x);
        let sep = match (k, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let unit = if unit.is_empty() { String::new() } else { format!("*{unit}") };
        write!(f, "{sep}{body}{unit}")?;
    }
    Ok(())
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x1, x2, x3, x4] = self.to_four_reals();
        write_terms(f, &[(x1, ""), (x2, "i1"), (x3, "i2"), (x4, "j")])
    }
}

struct ComplexText(Complex);

impl fmt::Display for ComplexText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &[(self.0.re, ""), (self.0.im, "i1")])
    }
}

impl fmt::Display for IdempotentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.p$} | {:.p$}]", ComplexText(self.p1), ComplexText(self.p2)),
            None => write!(f, "[{} | {}]", ComplexText(self.p1), ComplexText(self.p2)),
        }
    }
}
