//! Exact rational scalars.
//!
//! Everything in this crate is computed over arbitrary-precision rationals;
//! no floating point appears anywhere. `Rat` is kept in lowest terms with a
//! positive denominator by construction, so `0` is canonically `0/1`.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"` with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::InvalidInput(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| mk_err())?;
            let q: BigInt = q.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Render as `"p"` or `"p/q"`; inverse of [`parse_rat`].
pub fn render_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reduce into `[0, 1)`.
pub fn mod_one(r: &Rat) -> Rat {
    let f = r - r.floor();
    debug_assert!(!f.is_negative() && f < Rat::one());
    f
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / a.gcd(b)
}

/// Least common multiple of the denominators of a slice of rationals.
/// Empty input gives 1.
pub fn denominator_lcm(rs: &[Rat]) -> BigInt {
    let mut acc = BigInt::one();
    for r in rs {
        acc = lcm_big(&acc, r.denom());
    }
    acc
}

/// Exact conversion to a nonnegative machine integer, if possible.
pub fn rat_to_u64(r: &Rat) -> Option<u64> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    let n = r.to_integer();
    let (sign, digits) = n.to_u64_digits();
    match (sign, digits.len()) {
        (Sign::NoSign, 0) => Some(0),
        (Sign::Plus, 1) => Some(digits[0]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["0", "5", "-3", "2/3", "-7/2", "10/4"] {
            let r = parse_rat(s).unwrap();
            let back = parse_rat(&render_rat(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(render_rat(&parse_rat("10/4").unwrap()), "5/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn canonical_form_is_maintained() {
        let r = rat(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rat(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn mod_one_lands_in_unit_interval() {
        assert_eq!(mod_one(&rat(-1, 2)), rat(1, 2));
        assert_eq!(mod_one(&rat(7, 3)), rat(1, 3));
        assert_eq!(mod_one(&rat_int(-2)), rat_int(0));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        // (a/b + c/d) two ways agrees bit for bit
        let a = rat(1, 3);
        let b = rat(1, 6);
        let lhs = &a + &b;
        let rhs = rat(2, 6) + rat(1, 6);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, rat(1, 2));
    }

    #[test]
    fn denominator_lcm_examples() {
        assert_eq!(denominator_lcm(&[]), BigInt::one());
        assert_eq!(denominator_lcm(&[rat(1, 2), rat(1, 3)]), BigInt::from(6));
        assert_eq!(denominator_lcm(&[rat_int(4)]), BigInt::one());
    }

    #[test]
    fn u64_conversion() {
        assert_eq!(rat_to_u64(&rat_int(7)), Some(7));
        assert_eq!(rat_to_u64(&rat_int(0)), Some(0));
        assert_eq!(rat_to_u64(&rat(1, 2)), None);
        assert_eq!(rat_to_u64(&rat_int(-1)), None);
    }
}
