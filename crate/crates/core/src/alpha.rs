//! The target entropy-dimension exponent, kept as an exact rational so that
//! every floor in the level arithmetic is computed with integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `0 < num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alpha {
    num: u32,
    den: u32,
}

impl Alpha {
    pub const HALF: Alpha = Alpha { num: 1, den: 2 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::AlphaOutOfRange(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Alpha {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌊1/α⌋`, the exponent applied to slot indices.
    pub fn reciprocal_floor(&self) -> u32 {
        self.den / self.num
    }

    /// `⌊n^α⌋` computed exactly as the `den`-th integer root of `n^num`.
    pub fn floor_pow(&self, n: &BigUint) -> BigUint {
        if n.is_zero() {
            return BigUint::zero();
        }
        let raised: BigUint = Pow::pow(n, self.num);
        raised.nth_root(self.den)
    }

    pub fn floor_pow_u64(&self, n: u64) -> u64 {
        let r = self.floor_pow(&BigUint::from(n));
        u64::try_from(r).expect("floor power of a u64 fits in u64")
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Alpha {
    type Err = Error;

    /// Accepts `p/q` or a finite decimal such as `0.3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: u32 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad alpha numerator in {s:?}")))?;
            let q: u32 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad alpha denominator in {s:?}")))?;
            return Alpha::new(p, q);
        }
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if int_part.trim_start_matches('0') != "" || frac_part.is_empty() {
            return Err(Error::AlphaOutOfRange(s.to_string()));
        }
        if frac_part.len() > 9 || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal alpha {s:?}")));
        }
        let num: u32 = frac_part.parse().map_err(|_| Error::Parse(s.to_string()))?;
        let den = 10u32.pow(frac_part.len() as u32);
        Alpha::new(num, den)
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Natural logarithm of a big integer, accurate to double precision.
pub fn ln_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        let digits = n.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        return v.ln();
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    let top = u64::try_from(top).unwrap_or(u64::MAX) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Largest `r` with `r^e <= n`.
pub fn integer_root(n: &BigUint, e: u32) -> BigUint {
    if e == 1 {
        return n.clone();
    }
    n.nth_root(e)
}

/// True when `n` is an exact `e`-th power; returns its root.
pub fn exact_root(n: &BigUint, e: u32) -> Option<BigUint> {
    let r = integer_root(n, e);
    if Pow::pow(&r, e) == *n {
        Some(r)
    } else {
        None
    }
}
