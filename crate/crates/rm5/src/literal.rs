//! Rational literals `p/q` and `p`, and field literals `p/q + r/s*sqrt5`.

use rm5_core::arith::{Integer, Rational, Sqrt5};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid literal `{0}`")]
pub struct LiteralError(pub String);

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

pub fn parse_rational(s: &str) -> Result<Rational, LiteralError> {
    let err = || LiteralError(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (body, "1"),
    };
    if !digits(num) || !digits(den) {
        return Err(err());
    }
    let num: Integer = num.parse().map_err(|_| err())?;
    let den: Integer = den.parse().map_err(|_| err())?;
    if den == Integer::from(0) {
        return Err(err());
    }
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Accepts `a`, `b*sqrt5`, `sqrt5`, `a + b*sqrt5` and `a - b*sqrt5`.
pub fn parse_sqrt5(s: &str) -> Result<Sqrt5, LiteralError> {
    let err = || LiteralError(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(head) = t.strip_suffix("sqrt5") else {
        return Ok(Sqrt5::from_rational(parse_rational(&t)?));
    };
    let head = head.strip_suffix('*').unwrap_or(head);
    let split = head.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last().map(|(i, _)| i);
    let (a, b) = match split {
        Some(i) => (parse_rational(&head[..i])?, &head[i..]),
        None => (Rational::from_integer(0.into()), head),
    };
    let b = match b {
        "" | "+" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        _ => parse_rational(b)?,
    };
    if head.ends_with('/') {
        return Err(err());
    }
    Ok(Sqrt5::new(a, b))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn format_sqrt5(x: &Sqrt5) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rm5_core::arith::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational(" +2/3 ").unwrap(), rat(2, 3));
        for bad in ["1.5", "1/0", "", "/2", "1/", "a", "1e3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn field_elements() {
        let x = |a, b, c, d| Sqrt5::new(rat(a, b), rat(c, d));
        assert_eq!(parse_sqrt5("1/2 + 3/4*sqrt5").unwrap(), x(1, 2, 3, 4));
        assert_eq!(parse_sqrt5("-3 - sqrt5").unwrap(), x(-3, 1, -1, 1));
        assert_eq!(parse_sqrt5("-1/2*sqrt5").unwrap(), x(0, 1, -1, 2));
        assert_eq!(parse_sqrt5("sqrt5").unwrap(), x(0, 1, 1, 1));
        assert_eq!(parse_sqrt5("4").unwrap(), x(4, 1, 0, 1));
        assert!(parse_sqrt5("1 + 0.5*sqrt5").is_err());
        assert!(parse_sqrt5("1 + sqrt7").is_err());
    }

    #[test]
    fn display_round_trip() {
        for (a, b) in [(0, 1), (3, -2), (-5, 7), (4, 0), (0, 0)] {
            let x = Sqrt5::new(rat(a, 3), rat(b, 2));
            assert_eq!(parse_sqrt5(&format_sqrt5(&x)).unwrap(), x);
        }
    }
}
