//! Exact Gaussian-rational arithmetic.
//!
//! Every coefficient in the crate is an element of Q(i) with
//! arbitrary-precision rational real and imaginary parts. There is no
//! floating-point fallback anywhere: a nonzero residual in any identity
//! check is a bug, not rounding noise.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational. `BigRational` keeps the invariants we
/// need: reduced fraction, positive denominator, zero as 0/1.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// An element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    pub re: Rational,
    pub im: Rational,
}

impl GaussScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussScalar { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussScalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// n/d as a real scalar.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussScalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    /// i^k for k >= 0.
    pub fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "division by zero in Q(i)");
        GaussScalar {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussScalar {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

impl Add for GaussScalar {
    type Output = GaussScalar;
    fn add(self, rhs: GaussScalar) -> GaussScalar {
        GaussScalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a GaussScalar> for GaussScalar {
    type Output = GaussScalar;
    fn add(self, rhs: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, rhs: &GaussScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussScalar {
    type Output = GaussScalar;
    fn sub(self, rhs: GaussScalar) -> GaussScalar {
        GaussScalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, rhs: &GaussScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for GaussScalar {
    type Output = GaussScalar;
    fn mul(self, rhs: GaussScalar) -> GaussScalar {
        &self * &rhs
    }
}

impl<'a, 'b> Mul<&'b GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, rhs: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, rhs: &GaussScalar) {
        *self = &*self * rhs;
    }
}

impl Div for GaussScalar {
    type Output = GaussScalar;
    fn div(self, rhs: GaussScalar) -> GaussScalar {
        &self * &rhs.inv()
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussScalar {
    /// Canonical form `a/b+c/d*i`, omitting zero parts; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            if !self.re.is_zero() && self.im.is_positive() {
                out.push('+');
            }
            if self.im == Rational::one() {
                out.push('i');
            } else if self.im == -Rational::one() {
                out.push_str("-i");
            } else {
                out.push_str(&fmt_rational(&self.im));
                out.push_str("*i");
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid Gaussian rational literal: {0}")]
pub struct ParseScalarError(String);

fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| ParseScalarError(s.to_string()))?;
    let d = BigInt::from_str(den).map_err(|_| ParseScalarError(s.to_string()))?;
    if d.is_zero() {
        return Err(ParseScalarError(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for GaussScalar {
    type Err = ParseScalarError;

    /// Parses `a/b+c/d*i` and the obvious degenerate forms (`-1/2`, `i`,
    /// `-i`, `3*i`, `1-i`, ...).
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseScalarError(input.to_string()));
        }
        // Split into at most two signed summands at a top-level +/- that is
        // not a leading sign.
        let bytes = s.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if b == b'+' || b == b'-' {
                split = Some(idx);
            }
        }
        let parse_term = |t: &str| -> Result<GaussScalar, ParseScalarError> {
            if let Some(stripped) = t.strip_suffix("*i").or_else(|| t.strip_suffix("i")) {
                let r = match stripped {
                    "" => Rational::one(),
                    "-" => -Rational::one(),
                    "+" => Rational::one(),
                    other => parse_rational(other)?,
                };
                Ok(GaussScalar::new(Rational::zero(), r))
            } else {
                Ok(GaussScalar::from_rational(parse_rational(t)?))
            }
        };
        match split {
            None => parse_term(&s),
            Some(idx) => {
                let first = parse_term(&s[..idx])?;
                let sign = if bytes[idx] == b'-' {
                    -GaussScalar::one()
                } else {
                    GaussScalar::one()
                };
                let second = parse_term(&s[idx + 1..].trim_start_matches('+').to_string())?;
                Ok(first + &(&sign * &second))
            }
        }
    }
}

impl Serialize for GaussScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Generalized binomial coefficient with rational top:
/// `t(t-1)...(t-k+1)/k!`, exact.
pub fn gen_binomial(t: &Rational, k: usize) -> Rational {
    let mut num = Rational::one();
    let mut fact = Rational::one();
    for j in 0..k {
        num *= t - rat_int(j as i64);
        fact *= rat_int(j as i64 + 1);
    }
    num / fact
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&rat(1, 2), 1), rat(1, 2));
        assert_eq!(gen_binomial(&rat(3, 2), 2), rat(3, 8));
        assert_eq!(gen_binomial(&rat_int(5), 2), rat_int(10));
        assert_eq!(gen_binomial(&rat(7, 3), 0), rat_int(1));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = GaussScalar::i();
        assert_eq!(&i * &i, -GaussScalar::one());
        assert_eq!(i.conj().conj(), i);
    }

    #[test]
    fn parse_round_trip_examples() {
        for s in [
            "0",
            "1",
            "-1",
            "1/2",
            "-3/7",
            "i",
            "-i",
            "2*i",
            "-5/3*i",
            "1/2+1/3*i",
            "-2/5-7*i",
            "4-i",
        ] {
            let v: GaussScalar = s.parse().unwrap();
            let back: GaussScalar = v.to_string().parse().unwrap();
            assert_eq!(v, back, "round trip through display failed for {s}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<GaussScalar>().is_err());
        assert!("1/0".parse::<GaussScalar>().is_err());
        assert!("x+1".parse::<GaussScalar>().is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..40).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_scalar() -> impl Strategy<Value = GaussScalar> {
        (arb_rational(), arb_rational()).prop_map(|(re, im)| GaussScalar::new(re, im))
    }

    proptest! {
        #[test]
        fn pascal_identity(t in arb_rational(), k in 1usize..=12) {
            let lhs = gen_binomial(&t, k);
            let tm1 = &t - rat_int(1);
            let rhs = gen_binomial(&tm1, k) + gen_binomial(&tm1, k - 1);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_round_trip(v in arb_scalar()) {
            let back: GaussScalar = v.to_string().parse().unwrap();
            prop_assert_eq!(v, back);
        }

        #[test]
        fn field_axioms_spot_checks(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            let ab_c = &(&a * &b) * &c;
            let a_bc = &a * &(&b * &c);
            prop_assert_eq!(ab_c, a_bc);
            let dist = &a * &(b.clone() + &c);
            let expand = (&a * &b) + &(&a * &c);
            prop_assert_eq!(dist, expand);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv(), GaussScalar::one());
            }
        }
    }
}
