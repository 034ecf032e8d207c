//! Exact exponents in ℤ[1/p] and the rational helpers shared by every module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn pow_p(p: u32, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `n`, `n/d`, and `n/b^k`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = match d.split_once('^') {
                None => parse_int(d)?,
                Some((b, k)) => {
                    let b = parse_int(b)?;
                    let k: usize = k.trim().parse().map_err(|_| bad())?;
                    num_traits::pow(b, k)
                }
            };
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// `v_p` of the denominator, or `None` when the denominator is not a power of `p`.
pub fn denom_log(r: &Rat, p: u32) -> Option<u32> {
    let mut d = r.denom().clone();
    let bp = BigInt::from(p);
    let mut k = 0;
    while !d.is_one() {
        let (q, rem) = d.div_rem(&bp);
        if !rem.is_zero() {
            return None;
        }
        d = q;
        k += 1;
    }
    Some(k)
}

/// Checks that `r` lies in ℤ[1/p] with denominator at most `p^cap`.
pub fn check_exponent(r: &Rat, p: u32, cap: u32) -> Result<()> {
    match denom_log(r, p) {
        None => Err(Error::NotPAdicExponent { exponent: fmt_rat(r), p }),
        Some(k) if k > cap => Err(Error::DenominatorCap { exponent: fmt_rat(r), cap }),
        Some(_) => Ok(()),
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Largest element of ℤ[1/p] with denominator `p^k` that is `≤ x`.
pub fn floor_at(x: f64, p: u32, k: u32) -> Rat {
    let scale = (p as f64).powi(k as i32);
    let n = (x * scale).floor();
    Rat::new(BigInt::from(n as i128), pow_p(p, k))
}

pub fn max_abs(v: &[Rat]) -> Rat {
    v.iter().map(|r| r.abs()).fold(Rat::zero(), |a, b| if b > a { b } else { a })
}

/// An element `numerator / p^denom_log` of ℤ[1/p] in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PExponent {
    pub numerator: BigInt,
    pub denom_log: u32,
}

impl PExponent {
    pub fn from_rational(r: &Rat, p: u32) -> Result<Self> {
        let k = denom_log(r, p).ok_or_else(|| Error::NotPAdicExponent { exponent: fmt_rat(r), p })?;
        Ok(PExponent { numerator: r.numer().clone(), denom_log: k })
    }

    pub fn to_rational(&self, p: u32) -> Rat {
        Rat::new(self.numerator.clone(), pow_p(p, self.denom_log))
    }

    /// Renders as `n/p^k` for the given `p`.
    pub fn render(&self, p: u32) -> String {
        if self.denom_log == 0 {
            self.numerator.to_string()
        } else {
            format!("{}/{}^{}", self.numerator, p, self.denom_log)
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/p^{}", self.numerator, self.denom_log)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), int(3));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("3/2^4").unwrap(), rat(3, 16));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn denominators() {
        assert_eq!(denom_log(&rat(5, 8), 2), Some(3));
        assert_eq!(denom_log(&rat(5, 6), 2), None);
        assert_eq!(denom_log(&rat(1, 9), 3), Some(2));
        assert!(check_exponent(&rat(1, 1 << 17), 2, 16).is_err());
        assert!(check_exponent(&rat(1, 1 << 16), 2, 16).is_ok());
    }

    #[test]
    fn pexponent_roundtrip() {
        let e = PExponent::from_rational(&rat(-3, 27), 3).unwrap();
        assert_eq!(e.denom_log, 2);
        assert_eq!(e.render(3), "-1/3^2");
        assert_eq!(e.to_rational(3), rat(-1, 9));
    }

    #[test]
    fn floor_at_grid() {
        assert_eq!(floor_at(1.3, 2, 2), rat(5, 4));
        assert_eq!(floor_at(-0.1, 2, 1), rat(-1, 2));
    }
}
