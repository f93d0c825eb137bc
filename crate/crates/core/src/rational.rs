//! Rational helpers: canonical `"p/q"` text form, serde adapters, bounded
//! denominator rounding and rational square-root approximation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}: expected \"p/q\" with q != 0")]
pub struct ParseRatError(pub String);

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

/// Canonical text form. Always `p/q`, including integers (`3/1`).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`; the result is reduced.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(s.to_string());
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued-fraction convergents and the final semiconvergent.
pub fn round_to_rat(x: f64, max_den: u64) -> Rat {
    if !x.is_finite() {
        return Rat::zero();
    }
    let max_den = max_den.max(1);
    let neg = x < 0.0;
    let ax = x.abs();
    let (mut p0, mut q0, mut p1, mut q1): (u128, u128, u128, u128) = (0, 1, 1, 0);
    let mut frac = ax;
    let limit = max_den as u128;
    for _ in 0..64 {
        let a = frac.floor();
        if a > 1e30 {
            break;
        }
        let a = a as u128;
        let q2 = a * q1 + q0;
        if q2 > limit {
            // largest semiconvergent that still fits
            let k = (limit - q0) / q1.max(1);
            let ps = k * p1 + p0;
            let qs = k * q1 + q0;
            if q1 > 0 && qs > 0 {
                let err_s = (ps as f64 / qs as f64 - ax).abs();
                let err_c = (p1 as f64 / q1 as f64 - ax).abs();
                if err_s < err_c {
                    p1 = ps;
                    q1 = qs;
                }
            }
            break;
        }
        let p2 = a * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let rem = frac - a as f64;
        if rem < 1e-18 {
            break;
        }
        frac = 1.0 / rem;
    }
    if q1 == 0 {
        return Rat::zero();
    }
    let r = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        -r
    } else {
        r
    }
}

/// Rational `s` with `|s - sqrt(d)| <= 2^-bits`, `d >= 0`.
pub fn sqrt_approx(d: &Rat, bits: u32) -> Rat {
    assert!(!d.is_negative(), "sqrt of negative rational");
    // sqrt(n/q) = sqrt(n*q)/q ; scale by 2^bits before the integer root
    let scale = BigInt::one() << bits;
    let radicand = d.numer() * d.denom() * &scale * &scale;
    let root = radicand.sqrt();
    BigRational::new(root, d.denom() * scale)
}

pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        assert_eq!(format_rat(&parse_rat("6/-4").unwrap()), "-3/2");
        assert_eq!(format_rat(&parse_rat("7").unwrap()), "7/1");
        assert_eq!(format_rat(&parse_rat("0/5").unwrap()), "0/1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x/2").is_err());
    }

    #[test]
    fn bounded_rounding() {
        assert_eq!(round_to_rat(0.5, 10), rat(1, 2));
        assert_eq!(round_to_rat(std::f64::consts::PI, 1000), rat(355, 113));
        assert_eq!(round_to_rat(-0.333333333, 100), rat(-1, 3));
        let r = round_to_rat(0.123456789, 1_000_000);
        assert!(r.denom() <= &BigInt::from(1_000_000));
        assert!((to_f64(&r) - 0.123456789).abs() < 1e-6);
        assert_eq!(round_to_rat(3.0, 7), int(3));
    }

    #[test]
    fn rounding_matches_brute_force_best_approximation() {
        for &x in &[
            0.123456789,
            2.718281828,
            -1.414213562,
            0.999,
            7.0 / 13.0,
            0.0031,
        ] {
            let bound = 200u64;
            let best = (1..=bound)
                .map(|q| {
                    let p = (x * q as f64).round();
                    (p / q as f64 - x).abs()
                })
                .fold(f64::INFINITY, f64::min);
            let got = (to_f64(&round_to_rat(x, bound)) - x).abs();
            assert!(got <= best + 1e-15, "x={x}: got {got}, best {best}");
        }
    }

    #[test]
    fn sqrt_approximation_is_tight() {
        let s = sqrt_approx(&rat(3, 4), 40);
        let err = (to_f64(&s) - 0.75f64.sqrt()).abs();
        assert!(err < 1e-11);
        assert_eq!(sqrt_approx(&int(16), 10), int(4));
    }
}
