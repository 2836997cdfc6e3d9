//! Sparse multivariate polynomials with exact coefficients, plus the
//! elementary variable operators (swap, divided difference, substitution)
//! everything else is built from.
//!
//! Terms are keyed by monomial in graded-lex order (total degree first, ties
//! broken lexicographically on the exponent vector), which makes iteration
//! and serialization canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::One;

use crate::ring::{Rational, Scalar};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("partial degree {found} exceeds bound {bound} in variable {var}")]
    DegreeBound {
        var: usize,
        bound: usize,
        found: usize,
    },
    #[error("degrees of the zero polynomial are undefined")]
    ZeroPolynomial,
}

/// Exponent vector; length equals the ambient variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        debug_assert!(i >= 1 && i <= n_vars);
        let mut e = vec![0; n_vars];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// Exponentwise quotient; None if any exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the scalar field `C`; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C: Scalar> {
    n_vars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: C) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(n_vars), c);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, C::one())
    }

    /// The variable z_i (1-based).
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n_vars, "variable index {i} out of range");
        let mut p = Self::zero(n_vars);
        p.terms.insert(Monomial::var(n_vars, i), C::one());
        p
    }

    /// c0 + sum of ci * z_i for the listed (index, coefficient) pairs.
    pub fn affine(n_vars: usize, c0: C, linear: &[(usize, C)]) -> Self {
        let mut p = Self::constant(n_vars, c0);
        for (i, ci) in linear {
            let mut t = Self::zero(n_vars);
            if !ci.is_zero() {
                t.terms.insert(Monomial::var(n_vars, *i), ci.clone());
            }
            p = p.add(&t);
        }
        p
    }

    pub fn from_terms(n_vars: usize, terms: Vec<(Monomial, C)>) -> Self {
        let mut p = Self::zero(n_vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), n_vars);
            p.add_term(m, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::constant(self.n_vars))
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), ArithError> {
        if self.n_vars != other.n_vars {
            return Err(ArithError::ArityMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other).expect("polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_arity(other).expect("polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn scalar_mul(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n_vars);
        }
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let p = c.mul(s);
            if !p.is_zero() {
                out.terms.insert(m.clone(), p);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other).expect("polynomial arity mismatch");
        let mut out = Self::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    /// Like `mul`, but drops products above the given total degree as it goes.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        self.check_arity(other).expect("polynomial arity mismatch");
        let mut out = Self::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            if da > max_degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.total_degree() > max_degree {
                    continue;
                }
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    /// Leading (greatest graded-lex) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Exchanges z_i and z_{i+1} in every monomial (the operator tau_i).
    pub fn swap_adjacent(&self, i: usize) -> Self {
        assert!(
            i >= 1 && i < self.n_vars,
            "swap index {i} out of range for {} variables",
            self.n_vars
        );
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i - 1, i);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Divided difference: (tau_i f - f) / (z_i - z_{i+1}); always exact.
    pub fn divided_difference(&self, i: usize) -> Self {
        let num = self.swap_adjacent(i).sub(self);
        let den = Self::var(self.n_vars, i).sub(&Self::var(self.n_vars, i + 1));
        num.exact_div(&den)
            .expect("divided difference must divide exactly")
    }

    /// Exact quotient `h` with self = g * h; `NotDivisible` otherwise.
    pub fn exact_div(&self, g: &Self) -> Result<Self, ArithError> {
        self.check_arity(g)?;
        if g.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (glm, glc) = g.leading_term().expect("nonzero divisor");
        let glm = glm.clone();
        let glc_inv = glc.inv().expect("field coefficient");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n_vars);
        while let Some((rlm, rlc)) = rem.leading_term() {
            let qm = match rlm.try_div(&glm) {
                Some(qm) => qm,
                None => return Err(ArithError::NotDivisible),
            };
            let qc = rlc.mul(&glc_inv);
            // rem -= (qc * qm) * g
            for (m, c) in &g.terms {
                rem.add_term(qm.mul(m), qc.mul(c).neg());
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Substitute a constant for z_i.
    pub fn substitute_const(&self, i: usize, value: &C) -> Self {
        assert!(i >= 1 && i <= self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[i - 1];
            let mut m2 = m.0.clone();
            m2[i - 1] = 0;
            out.add_term(Monomial(m2), c.mul(&pow_scalar(value, e)));
        }
        out
    }

    /// Substitute z_i <- alpha * z_j + beta (j may equal i).
    pub fn substitute_affine(&self, i: usize, alpha: &C, j: usize, beta: &C) -> Self {
        assert!(i >= 1 && i <= self.n_vars);
        assert!(j >= 1 && j <= self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[i - 1];
            let mut base = m.0.clone();
            base[i - 1] = 0;
            // (alpha z_j + beta)^e expanded binomially
            let mut binom = <Rational as One>::one();
            for k in 0..=e {
                if k > 0 {
                    let num = BigInt::from((e - k + 1) as i64);
                    let den = BigInt::from(k as i64);
                    binom = binom * Rational::new(num, den);
                }
                let coeff = c
                    .mul(&C::from_rational(binom.clone()))
                    .mul(&pow_scalar(alpha, k))
                    .mul(&pow_scalar(beta, e - k));
                let mut m2 = base.clone();
                m2[j - 1] += k;
                out.add_term(Monomial(m2), coeff);
            }
        }
        out
    }

    /// z_i <- -z_i.
    pub fn sign_flip(&self, i: usize) -> Self {
        let minus_one = C::one().neg();
        self.substitute_affine(i, &minus_one, i, &C::zero())
    }

    /// Full point evaluation.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.n_vars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&pow_scalar(v, e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// z_i^d * f|_{z_i <- 1/z_i}: reflects exponents e -> d - e in variable i.
    pub fn reciprocal_substitute(&self, i: usize, d: usize) -> Result<Self, ArithError> {
        assert!(i >= 1 && i <= self.n_vars);
        let pd = self.partial_degree(i);
        if pd > d {
            return Err(ArithError::DegreeBound {
                var: i,
                bound: d,
                found: pd,
            });
        }
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[i - 1] = d as u32 - e[i - 1];
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficient polynomial of z_i^d (variable i zeroed in the result).
    pub fn leading_coefficient_in(&self, i: usize, d: usize) -> Self {
        assert!(i >= 1 && i <= self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            if m.0[i - 1] as usize == d {
                let mut e = m.0.clone();
                e[i - 1] = 0;
                out.terms.insert(Monomial(e), c.clone());
            }
        }
        out
    }

    pub fn partial_degree(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n_vars);
        self.terms
            .keys()
            .map(|m| m.0[i - 1] as usize)
            .max()
            .unwrap_or(0)
    }

    /// Total degree and per-variable partial degrees; error on zero.
    pub fn degrees(&self) -> Result<(usize, Vec<usize>), ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let total = self
            .terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0);
        let partials = (1..=self.n_vars).map(|i| self.partial_degree(i)).collect();
        Ok((total, partials))
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Drops all monomials of total degree > d.
    pub fn truncate_total_degree(&self, d: usize) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            if m.total_degree() <= d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The homogeneous part of maximal total degree.
    pub fn top_homogeneous_part(&self) -> Self {
        let d = self.total_degree();
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            if m.total_degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Reinterpret in `new_n_vars` variables, sending old variable k to
    /// `map[k-1]` (1-based, injective).
    pub fn map_vars(&self, new_n_vars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.n_vars);
        let mut seen = vec![false; new_n_vars];
        for &t in map {
            assert!(t >= 1 && t <= new_n_vars && !seen[t - 1], "map not injective");
            seen[t - 1] = true;
        }
        let mut out = Self::zero(new_n_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_n_vars];
            for (k, &exp) in m.0.iter().enumerate() {
                e[map[k] - 1] = exp;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Removes the last variable; it must not occur.
    pub fn drop_last_var(&self) -> Result<Self, ArithError> {
        if self.partial_degree(self.n_vars) != 0 && !self.is_zero() {
            return Err(ArithError::DegreeBound {
                var: self.n_vars,
                bound: 0,
                found: self.partial_degree(self.n_vars),
            });
        }
        let mut out = Self::zero(self.n_vars - 1);
        for (m, c) in &self.terms {
            out.terms
                .insert(Monomial(m.0[..self.n_vars - 1].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// True when f is symmetric under z_i <-> z_{i+1}.
    pub fn symmetric_in_adjacent(&self, i: usize) -> bool {
        self.swap_adjacent(i) == *self
    }
}

fn pow_scalar<C: Scalar>(base: &C, e: u32) -> C {
    let mut acc = C::one();
    let mut b = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b);
        }
    }
    acc
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*z{}", k + 1)?,
                    _ => write!(f, "*z{}^{}", k + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Product over index pairs a < b of (z_{idx[a]}^2 - z_{idx[b]}^2).
pub fn polynomial_vandermonde_sq<C: Scalar>(n_vars: usize, idx: &[usize]) -> Polynomial<C> {
    let mut f = Polynomial::one(n_vars);
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            let zi = Polynomial::var(n_vars, idx[a]);
            let zj = Polynomial::var(n_vars, idx[b]);
            f = f.mul(&zi.mul(&zi).sub(&zj.mul(&zj)));
        }
    }
    f
}

/// Convenience alias used by the Brauer-model modules.
pub type QPoly = Polynomial<Rational>;
/// Polynomials over Q(w), used by the non-crossing model.
pub type WPoly = Polynomial<crate::ring::Cyclotomic>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Cyclotomic;
    use num::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn z(n: usize, i: usize) -> QPoly {
        QPoly::var(n, i)
    }

    #[test]
    fn ring_ops_textbook_expansion() {
        // (z1 - z2)(z1 + z2) = z1^2 - z2^2
        let n = 2;
        let prod = z(n, 1).sub(&z(n, 2)).mul(&z(n, 1).add(&z(n, 2)));
        let expect = z(n, 1).mul(&z(n, 1)).sub(&z(n, 2).mul(&z(n, 2)));
        assert_eq!(prod, expect);
    }

    #[test]
    fn a_plus_b_factors() {
        // a_{1,2} + b_{1,2} = 2 - 2 z2
        let n = 2;
        let a12 = QPoly::affine(n, q(1), &[(1, q(1)), (2, q(-1))]);
        let b12 = QPoly::affine(n, q(1), &[(1, q(-1)), (2, q(-1))]);
        let sum = a12.add(&b12);
        let expect = QPoly::affine(n, q(2), &[(2, q(-2))]);
        assert_eq!(sum, expect);
    }

    #[test]
    fn swap_adjacent_examples() {
        // tau_1(z1^2 z2) = z1 z2^2
        let n = 2;
        let f = z(n, 1).mul(&z(n, 1)).mul(&z(n, 2));
        let g = z(n, 1).mul(&z(n, 2)).mul(&z(n, 2));
        assert_eq!(f.swap_adjacent(1), g);
        // symmetric input is fixed
        let s = z(n, 1).add(&z(n, 2));
        assert_eq!(s.swap_adjacent(1), s);
        // tau_1(a_{1,2}) = a_{2,1}
        let a12 = QPoly::affine(n, q(1), &[(1, q(1)), (2, q(-1))]);
        let a21 = QPoly::affine(n, q(1), &[(2, q(1)), (1, q(-1))]);
        assert_eq!(a12.swap_adjacent(1), a21);
    }

    #[test]
    fn divided_difference_examples() {
        let n = 4;
        // dd_1(z1) = -1
        assert_eq!(
            z(n, 1).divided_difference(1),
            QPoly::constant(n, q(-1))
        );
        // dd_i of symmetric is 0
        let s = z(n, 1).mul(&z(n, 2));
        assert!(s.divided_difference(1).is_zero());
        // dd_1(a_{2,4}) = 1
        let a24 = QPoly::affine(n, q(1), &[(2, q(1)), (4, q(-1))]);
        assert_eq!(a24.divided_difference(1), QPoly::one(n));
    }

    #[test]
    fn exact_div_examples() {
        let n = 2;
        let f = z(n, 1).mul(&z(n, 1)).sub(&z(n, 2).mul(&z(n, 2)));
        let g = z(n, 1).sub(&z(n, 2));
        assert_eq!(f.exact_div(&g).unwrap(), z(n, 1).add(&z(n, 2)));
        // (z1 + 1) / z2 is not divisible
        let h = z(n, 1).add(&QPoly::one(n));
        assert_eq!(h.exact_div(&z(n, 2)), Err(ArithError::NotDivisible));
    }

    #[test]
    fn substitution_examples() {
        let n = 2;
        // a_{1,2} with z2 <- 1 + z1 vanishes
        let a12 = QPoly::affine(n, q(1), &[(1, q(1)), (2, q(-1))]);
        let sub = a12.substitute_affine(2, &q(1), 1, &q(1));
        assert!(sub.is_zero());
        // sign flip twice is identity
        let f = z(n, 1).mul(&z(n, 2)).add(&z(n, 1));
        assert_eq!(f.sign_flip(1).sign_flip(1), f);
    }

    #[test]
    fn reciprocal_substitute_examples() {
        let n = 2;
        // z1^2 + 1 with d=2 is palindromic
        let f = z(n, 1).mul(&z(n, 1)).add(&QPoly::one(n));
        assert_eq!(f.reciprocal_substitute(1, 2).unwrap(), f);
        // twice with the same bound is the identity
        let g = z(n, 1).mul(&z(n, 2)).add(&z(n, 2));
        let g2 = g
            .reciprocal_substitute(1, 3)
            .unwrap()
            .reciprocal_substitute(1, 3)
            .unwrap();
        assert_eq!(g, g2);
        // degree bound violation
        assert!(f.reciprocal_substitute(1, 1).is_err());
    }

    #[test]
    fn reciprocal_substitute_cyclotomic() {
        // (q z1 - z2) with d=2 in z1 gives q z1 - z1^2 z2
        let n = 2;
        let w = Cyclotomic::omega();
        let f = WPoly::var(n, 1)
            .scalar_mul(&w)
            .sub(&WPoly::var(n, 2));
        let r = f.reciprocal_substitute(1, 2).unwrap();
        let expect = WPoly::var(n, 1).scalar_mul(&w).sub(
            &WPoly::var(n, 1)
                .mul(&WPoly::var(n, 1))
                .mul(&WPoly::var(n, 2)),
        );
        assert_eq!(r, expect);
    }

    #[test]
    fn degree_and_truncate() {
        let n = 2;
        let f = QPoly::one(n)
            .add(&z(n, 1))
            .add(&z(n, 1).mul(&z(n, 2)));
        let (tot, parts) = f.degrees().unwrap();
        assert_eq!(tot, 2);
        assert_eq!(parts, vec![1, 1]);
        assert_eq!(
            f.truncate_total_degree(1),
            QPoly::one(n).add(&z(n, 1))
        );
        assert_eq!(f.truncate_total_degree(2), f);
        assert!(QPoly::zero(n).degrees().is_err());
        assert_eq!(QPoly::one(n).degrees().unwrap(), (0, vec![0, 0]));
    }

    #[test]
    fn leading_coefficient_in_examples() {
        let n = 2;
        // coefficient of z2^1 in z1 + 3 z2 is 3
        let f = z(n, 1).add(&z(n, 2).scalar_mul(&q(3)));
        assert_eq!(
            f.leading_coefficient_in(2, 1),
            QPoly::constant(n, q(3))
        );
        assert!(f.leading_coefficient_in(1, 5).is_zero());
    }

    #[test]
    fn graded_lex_order_is_canonical() {
        let a = Monomial(vec![1, 0]);
        let b = Monomial(vec![0, 1]);
        let c = Monomial(vec![0, 2]);
        assert!(a > b); // same degree, lex on exponents
        assert!(c > a); // higher total degree wins
    }
}
