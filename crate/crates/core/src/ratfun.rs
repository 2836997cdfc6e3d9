//! Rational functions as unnormalized fractions of polynomials. No GCDs are
//! ever taken; equality is decided by cross-multiplication, which is all the
//! operator-identity tests need.

use crate::poly::{ArithError, Polynomial};
use crate::ring::Scalar;

#[derive(Clone, Debug)]
pub struct RationalFunction<C: Scalar> {
    pub num: Polynomial<C>,
    pub den: Polynomial<C>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(num: Polynomial<C>, den: Polynomial<C>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial<C>) -> Self {
        let n = p.n_vars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::from_poly(Polynomial::one(n_vars))
    }

    pub fn zero(n_vars: usize) -> Self {
        Self::from_poly(Polynomial::zero(n_vars))
    }

    pub fn n_vars(&self) -> usize {
        self.num.n_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalFunction {
            num: self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalFunction {
            num: self
                .num
                .mul(&other.den)
                .sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(RationalFunction {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        })
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Cross-multiplication equality: num1 * den2 == num2 * den1.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// tau_i applied to numerator and denominator.
    pub fn swap_adjacent(&self, i: usize) -> Self {
        RationalFunction {
            num: self.num.swap_adjacent(i),
            den: self.den.swap_adjacent(i),
        }
    }

    /// Collapse to a polynomial when the division happens to be exact.
    pub fn to_polynomial(&self) -> Result<Polynomial<C>, ArithError> {
        self.num.exact_div(&self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QPoly;

    #[test]
    fn self_division_is_one() {
        let n = 1;
        let x = RationalFunction::from_poly(QPoly::var(n, 1));
        let q = x.div(&x).unwrap();
        assert!(q.equivalent(&RationalFunction::one(n)));
    }

    #[test]
    fn division_by_zero_rejected() {
        let n = 1;
        let x = RationalFunction::from_poly(QPoly::var(n, 1));
        assert!(x.div(&RationalFunction::zero(n)).is_err());
        assert!(RationalFunction::new(QPoly::one(n), QPoly::zero(n)).is_err());
    }
}
