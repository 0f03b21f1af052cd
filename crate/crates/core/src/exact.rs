//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Largest `d` with `d^den <= m^num`.
pub fn floor_pow_ratio(m: u64, num: u32, den: u32) -> BigUint {
    assert!(den > 0);
    BigUint::from(m).pow(num).nth_root(den)
}

/// Smallest `d` with `d^den >= m^num`.
pub fn ceil_pow_ratio(m: u64, num: u32, den: u32) -> BigUint {
    let target = BigUint::from(m).pow(num);
    let floor = target.nth_root(den);
    if Pow::pow(&floor, den) == target {
        floor
    } else {
        floor + 1u32
    }
}

/// `⌈log2 x⌉` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

pub fn to_u64_saturating(x: &BigUint) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

pub fn rational(num: impl Into<num_bigint::BigInt>, den: impl Into<num_bigint::BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn rational_int(v: impl Into<num_bigint::BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` text for an exact rational (integers print without a denominator).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes a rational as its `p/q` text.
pub fn serialize_rational<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn serialize_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// Parses `p/q`, an integer, or a decimal with optional exponent (`1e-9`,
/// `0.25`) into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().ok()?;
        let q: num_bigint::BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: num_bigint::BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = num_bigint::BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(digits, Pow::pow(&ten, (-scale) as u32))
    };
    Some(if negative { -value } else { value })
}
