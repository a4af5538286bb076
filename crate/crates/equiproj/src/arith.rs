//! Exact scalar arithmetic: arbitrary-precision integers and rationals.
//!
//! Every predicate in the crate is a sign or coincidence condition, so the
//! scalar types must never round. `Rat` is kept reduced with a positive
//! denominator by construction.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

pub type Int = BigInt;

/// Reduced rational with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn rat_frac(numer: i64, denom: i64) -> Rat {
    Rat::new(int(numer), int(denom))
}

/// Sign of an integer as -1, 0 or +1.
pub fn sign(n: &Int) -> i8 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

pub fn sign_rat(r: &Rat) -> i8 {
    sign(r.numer())
}

/// Parses an exact rational in `p` or `p/q` form.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: Int = numer.parse().map_err(|_| mk_err())?;
    let d: Int = match denom {
        Some(d) => d.parse().map_err(|_| mk_err())?,
        None => Int::from(1),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Canonical string form: `p` for integers, `p/q` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point decimal rendering of a rational, rounded half away from zero.
pub fn rat_to_decimal(r: &Rat, digits: usize) -> String {
    let scale = Int::from(10u32).pow(digits as u32);
    let scaled = r * Rat::from_integer(scale.clone());
    // round half away from zero
    let twice = scaled.numer() * 2;
    let denom = scaled.denom();
    let mut q = &twice / (denom * 2);
    let rem = &twice - &q * (denom * 2);
    if rem.abs() * 2 >= denom.abs() * 2 {
        if twice.is_negative() {
            q -= 1;
        } else {
            q += 1;
        }
    }
    let neg = q.is_negative();
    let q = q.abs();
    let whole = &q / &scale;
    let frac = &q - &whole * &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>width$}", width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "22/7", "-5/9"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // reduction and sign normalization on load
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_to_decimal(&rat_frac(1, 2), 3), "0.500");
        assert_eq!(rat_to_decimal(&rat_frac(-1, 3), 4), "-0.3333");
        assert_eq!(rat_to_decimal(&rat(5), 2), "5.00");
        assert_eq!(rat_to_decimal(&rat_frac(2, 3), 2), "0.67");
    }
}
