//! Exact real scalars of the form `sum_k q_k * sqrt(k)`.
//!
//! Each `k` is a square-free positive integer and each `q_k` a nonzero
//! rational. The set is closed under the ring operations, which keeps the
//! coefficients produced by the weights `d^{-1/2}` of the isometry `T` exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    // square-free radicand -> rational coefficient (never zero)
    parts: BTreeMap<u64, BigRational>,
}

/// Splits `n` into `(a, b)` with `n = a^2 * b` and `b` square-free.
pub fn split_square(n: u64) -> (u64, u64) {
    assert!(n > 0, "radicand must be positive");
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut count = 0;
        while m % p == 0 {
            m /= p;
            count += 1;
        }
        outside *= p.pow(count / 2);
        if count % 2 == 1 {
            inside *= p;
        }
        p += 1;
    }
    (outside, inside * m)
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        let mut parts = BTreeMap::new();
        if !q.is_zero() {
            parts.insert(1, q);
        }
        Surd { parts }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `q * sqrt(k)`, with square factors of `k` pulled out.
    pub fn q_sqrt(q: BigRational, k: u64) -> Self {
        let (a, b) = split_square(k);
        let q = q * BigRational::from_integer(BigInt::from(a));
        let mut parts = BTreeMap::new();
        if !q.is_zero() {
            parts.insert(b, q);
        }
        Surd { parts }
    }

    pub fn sqrt(k: u64) -> Self {
        Self::q_sqrt(BigRational::one(), k)
    }

    /// `k^{-1/2} = sqrt(k) / k`.
    pub fn inv_sqrt(k: u64) -> Self {
        assert!(k > 0, "inverse square root of zero");
        Self::q_sqrt(BigRational::new(BigInt::one(), BigInt::from(k)), k)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.parts.len() == 1 && self.parts.get(&1).is_some_and(One::is_one)
    }

    /// The rational value when there is no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.parts.len() {
            0 => Some(BigRational::zero()),
            1 => self.parts.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.parts.iter().map(|(&k, q)| (k, q))
    }

    pub fn to_f64(&self) -> f64 {
        self.parts
            .iter()
            .map(|(&k, q)| q.to_f64().unwrap_or(f64::NAN) * (k as f64).sqrt())
            .sum()
    }

    fn add_part(&mut self, k: u64, q: BigRational) {
        let entry = self.parts.entry(k).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.parts.remove(&k);
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Surd::zero();
        }
        Surd {
            parts: self.parts.iter().map(|(&k, c)| (k, c * q)).collect(),
        }
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (&k, q) in &rhs.parts {
            out.add_part(k, q.clone());
        }
        out
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            parts: self.parts.iter().map(|(&k, q)| (k, -q)).collect(),
        }
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (&k1, q1) in &self.parts {
            for (&k2, q2) in &rhs.parts {
                let (a, b) = split_square(k1 * k2);
                let q = q1 * q2 * BigRational::from_integer(BigInt::from(a));
                out.add_part(b, q);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Surd {
    /// `0`, `q`, `q√k`, or a `+`-joined sum of such parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .parts
            .iter()
            .map(|(&k, q)| {
                if k == 1 {
                    fmt_rational(q)
                } else {
                    format!("{}√{}", fmt_rational(q), k)
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::InvalidArgument(format!("invalid rational `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
    }
}

impl FromStr for Surd {
    type Err = Error;

    /// Parses a single part: `q`, `q√k`, `√k`, or the ASCII form `q*sqrt(k)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("invalid coefficient `{s}`"));
        let (q_text, k_text) = if let Some((q, k)) = s.split_once('√') {
            (q, Some(k))
        } else if let Some(idx) = s.find("sqrt(") {
            let k = s[idx + 5..].strip_suffix(')').ok_or_else(bad)?;
            (s[..idx].trim_end_matches('*'), Some(k))
        } else {
            (s, None)
        };
        let q = match q_text.trim() {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t)?,
        };
        match k_text {
            None => Ok(Surd::rational(q)),
            Some(k) => {
                let k: u64 = k.trim().parse().map_err(|_| bad())?;
                if k == 0 {
                    return Ok(Surd::zero());
                }
                Ok(Surd::q_sqrt(q, k))
            }
        }
    }
}

impl Surd {
    pub fn abs_bound(&self) -> f64 {
        self.parts
            .iter()
            .map(|(&k, q)| q.abs().to_f64().unwrap_or(f64::INFINITY) * (k as f64).sqrt())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_factors_are_pulled_out() {
        assert_eq!(split_square(12), (2, 3));
        assert_eq!(split_square(36), (6, 1));
        assert_eq!(split_square(7), (1, 7));
        assert_eq!(Surd::sqrt(8), Surd::q_sqrt(BigRational::from_integer(2.into()), 2));
    }

    #[test]
    fn inverse_square_roots_square_to_reciprocals() {
        let h = Surd::inv_sqrt(2);
        assert_eq!(&h * &h, Surd::ratio(1, 2));
        assert_eq!(&Surd::inv_sqrt(6) * &Surd::sqrt(6), Surd::one());
        assert_eq!(&Surd::sqrt(2) * &Surd::sqrt(3), Surd::sqrt(6));
    }

    #[test]
    fn mixed_sums_stay_exact() {
        let a = &Surd::sqrt(2) + &Surd::sqrt(3);
        let b = &Surd::sqrt(2) - &Surd::sqrt(3);
        assert_eq!(&a * &b, Surd::integer(-1));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn parse_and_display() {
        for text in ["3", "-1/2", "1/2√2", "2√3"] {
            let s: Surd = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        let s: Surd = "1/4*sqrt(8)".parse().unwrap();
        assert_eq!(s.to_string(), "1/2√2");
        assert!("x".parse::<Surd>().is_err());
        assert!("1/0".parse::<Surd>().is_err());
    }
}
