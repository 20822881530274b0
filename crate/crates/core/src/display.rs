//! Canonical text forms shared by the algebraic types.
//!
//! Rational coefficients print bare (`1/2*t^2`); other ground elements print
//! as a bracketed symbolic sum (`[3+2*i]*t`). A negative single-term
//! coefficient has its sign pulled out (`-[i]*t`).

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_traits::One;

use crate::ground::GroundElement;

/// A signed summand ready for joining.
pub(crate) struct Term {
    pub negative: bool,
    pub body: String,
}

fn single_term(s: &str) -> bool {
    !s[1..].contains(['+', '-'])
}

/// Splits a coefficient into sign and bracketed body, then attaches the
/// monomial (empty for the constant term).
pub(crate) fn coefficient_term(c: &GroundElement, monomial: &str) -> Term {
    if let Some(r) = c.as_rational() {
        let negative = r.is_negative();
        let abs = r.abs();
        let body = if monomial.is_empty() {
            format!("{abs}")
        } else if abs.is_one() {
            String::from(monomial)
        } else {
            format!("{abs}*{monomial}")
        };
        return Term { negative, body };
    }
    let s = format!("{c}");
    let (negative, inner) = if s.starts_with('-') && single_term(&s) {
        (true, format!("{}", -c))
    } else {
        (false, s)
    };
    let body = if monomial.is_empty() {
        format!("[{inner}]")
    } else {
        format!("[{inner}]*{monomial}")
    };
    Term { negative, body }
}

pub(crate) fn power(var: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => String::from(var),
        _ => format!("{var}^{k}"),
    }
}

/// Joins terms as `a + b - c`; an empty list prints `0`.
pub(crate) fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, t) in terms.iter().enumerate() {
        match (n, t.negative) {
            (0, true) => write!(f, "-{}", t.body)?,
            (0, false) => write!(f, "{}", t.body)?,
            (_, true) => write!(f, " - {}", t.body)?,
            (_, false) => write!(f, " + {}", t.body)?,
        }
    }
    Ok(())
}
