//! Exact coefficient rings: arbitrary-precision rationals and the cyclotomic
//! extension Q(w) with w^2 + w + 1 = 0.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;

pub type Rational = BigRational;

/// Ring tag carried by serialized polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    Q,
    Qw,
}

impl RingTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RingTag::Q => "Q",
            RingTag::Qw => "Qw",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CoeffParseError {
    #[error("malformed coefficient `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("expected {expected} coefficient parts, got {got}")]
    WrongArity { expected: usize, got: usize },
}

pub fn rational_from_str(s: &str) -> Result<Rational, CoeffParseError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num.trim()).map_err(|_| CoeffParseError::Malformed(s.into()))?;
    let d = BigInt::from_str(den.trim()).map_err(|_| CoeffParseError::Malformed(s.into()))?;
    if d.is_zero() {
        return Err(CoeffParseError::ZeroDenominator(s.into()));
    }
    Ok(Rational::new(n, d))
}

pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact field scalar usable as a polynomial coefficient.
pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const RING: RingTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; None for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }
    /// Serialized coefficient parts per the JSON schema.
    fn coeff_parts(&self) -> Vec<String>;
    fn parse_parts(parts: &[String]) -> Result<Self, CoeffParseError>;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero scalar"))
    }
}

impl Scalar for Rational {
    const RING: RingTag = RingTag::Q;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<Rational as One>::one() / self)
        }
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn coeff_parts(&self) -> Vec<String> {
        vec![rational_to_string(self)]
    }
    fn parse_parts(parts: &[String]) -> Result<Self, CoeffParseError> {
        if parts.len() != 1 {
            return Err(CoeffParseError::WrongArity {
                expected: 1,
                got: parts.len(),
            });
        }
        rational_from_str(&parts[0])
    }
}

/// Element re + om*w of Q(w), where w is a primitive cube root of unity:
/// w^2 = -1 - w and 1 + w + w^2 = 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    pub re: Rational,
    pub om: Rational,
}

impl Cyclotomic {
    pub fn new(re: Rational, om: Rational) -> Self {
        Cyclotomic { re, om }
    }

    /// The generator w itself.
    pub fn omega() -> Self {
        Cyclotomic::new(<Rational as Zero>::zero(), <Rational as One>::one())
    }

    /// w^2 = -1 - w.
    pub fn omega_sq() -> Self {
        Cyclotomic::new(-<Rational as One>::one(), -<Rational as One>::one())
    }

    /// Field norm (a + bw)(a + bw^2) = a^2 - ab + b^2; zero iff the element is zero.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.om)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}w)", self.re, self.om)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.om) {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}*w", self.om)
        } else {
            write!(f, "{} + {}*w", self.re, self.om)
        }
    }
}

impl Scalar for Cyclotomic {
    const RING: RingTag = RingTag::Qw;

    fn zero() -> Self {
        Cyclotomic::new(<Rational as Zero>::zero(), <Rational as Zero>::zero())
    }
    fn one() -> Self {
        Cyclotomic::new(<Rational as One>::one(), <Rational as Zero>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.om)
    }
    fn add(&self, rhs: &Self) -> Self {
        Cyclotomic::new(&self.re + &rhs.re, &self.om + &rhs.om)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Cyclotomic::new(&self.re - &rhs.re, &self.om - &rhs.om)
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, w^2 = -1 - w
        let ac = &self.re * &rhs.re;
        let bd = &self.om * &rhs.om;
        let ad_bc = &self.re * &rhs.om + &self.om * &rhs.re;
        Cyclotomic::new(ac - &bd, ad_bc - bd)
    }
    fn neg(&self) -> Self {
        Cyclotomic::new(-&self.re, -&self.om)
    }
    fn inv(&self) -> Option<Self> {
        // (a + bw)^{-1} = (a - b - bw) / (a^2 - ab + b^2)
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(Cyclotomic::new(
            (&self.re - &self.om) / &n,
            -&self.om / &n,
        ))
    }
    fn from_rational(r: Rational) -> Self {
        Cyclotomic::new(r, <Rational as Zero>::zero())
    }
    fn coeff_parts(&self) -> Vec<String> {
        vec![rational_to_string(&self.re), rational_to_string(&self.om)]
    }
    fn parse_parts(parts: &[String]) -> Result<Self, CoeffParseError> {
        if parts.len() != 2 {
            return Err(CoeffParseError::WrongArity {
                expected: 2,
                got: parts.len(),
            });
        }
        Ok(Cyclotomic::new(
            rational_from_str(&parts[0])?,
            rational_from_str(&parts[1])?,
        ))
    }
}

/// Random rational with numerator in [-19, 19] and denominator in {1,2,3,5,7}.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    const DENOMS: [i64; 5] = [1, 2, 3, 5, 7];
    let num = rng.gen_range(-19i64..=19);
    let den = DENOMS[rng.gen_range(0..DENOMS.len())];
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nonzero random rational.
pub fn random_rational_nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = random_rational(rng);
        if !Zero::is_zero(&r) {
            return r;
        }
    }
}

/// A tuple of pairwise-distinct nonzero random rationals; handy as an
/// evaluation point off most degenerate loci.
pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    loop {
        let pt: Vec<Rational> = (0..n).map(|_| random_rational_nonzero(rng)).collect();
        let mut distinct = true;
        'outer: for i in 0..n {
            for j in i + 1..n {
                if pt[i] == pt[j] || pt[i] == -&pt[j] {
                    distinct = false;
                    break 'outer;
                }
            }
        }
        if distinct {
            return pt;
        }
    }
}

pub fn rational_is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn rational_abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_cube_root() {
        let w = Cyclotomic::omega();
        let w2 = w.mul(&w);
        assert_eq!(w2, Cyclotomic::omega_sq());
        let w3 = w2.mul(&w);
        assert_eq!(w3, Cyclotomic::one());
        // 1 + w + w^2 = 0
        let s = Cyclotomic::one().add(&w).add(&w2);
        assert!(s.is_zero());
    }

    #[test]
    fn cyclotomic_inverse() {
        let x = Cyclotomic::new(q(3, 2), q(-5, 7));
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), Cyclotomic::one());
        assert!(Cyclotomic::zero().inv().is_none());
    }

    #[test]
    fn rational_string_round_trip() {
        let r = q(-14, 21); // reduces to -2/3
        let s = rational_to_string(&r);
        assert_eq!(s, "-2/3");
        assert_eq!(rational_from_str(&s).unwrap(), r);
        assert!(rational_from_str("1/0").is_err());
        assert_eq!(rational_from_str("7").unwrap(), q(7, 1));
    }
}
