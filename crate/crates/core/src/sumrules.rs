//! Exact Pfaffians and determinants, the closed Pfaffian/determinant sum
//! rules for both models, component sums over the built vectors, and the
//! homogeneous-limit integer values.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::brauer::{GroundStateVector, Model};
use crate::poly::{polynomial_vandermonde_sq, ArithError, Polynomial, QPoly, WPoly};
use crate::ring::{Cyclotomic, Rational, Scalar};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("Pfaffian needs even dimension, got {0}")]
    OddDimension(usize),
    #[error("evaluation point hits a singular locus")]
    SingularPoint,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub fn check_square<C: Clone>(m: &[Vec<C>]) -> Result<usize, MatrixError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(MatrixError::NotSquare);
    }
    Ok(n)
}

fn check_skew<C: Scalar>(m: &[Vec<C>]) -> Result<usize, MatrixError> {
    let n = check_square(m)?;
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != m[j][i].neg() {
                return Err(MatrixError::NotSkew);
            }
        }
    }
    Ok(n)
}

/// Pfaffian by skew-symmetric elimination with pivoting; exact over any
/// scalar field.
pub fn pfaffian<C: Scalar>(mat: &[Vec<C>]) -> Result<C, MatrixError> {
    let n = check_skew(mat)?;
    if n % 2 != 0 {
        return Err(MatrixError::OddDimension(n));
    }
    let mut a: Vec<Vec<C>> = mat.to_vec();
    let mut sign = false;
    let mut prod = C::one();
    let mut k = 0;
    while k < n {
        // pivot: bring a nonzero entry into a[k][k+1]
        let piv = (k + 1..n).find(|&j| !a[k][j].is_zero());
        let piv = match piv {
            None => return Ok(C::zero()),
            Some(p) => p,
        };
        if piv != k + 1 {
            a.swap(piv, k + 1);
            for row in a.iter_mut() {
                row.swap(piv, k + 1);
            }
            sign = !sign;
        }
        let pivot = a[k][k + 1].clone();
        prod = prod.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 2..n {
            // zero out a[k][i] and a[k+1][i] with simultaneous row+column ops
            let f1 = a[k][i].mul(&inv);
            if !f1.is_zero() {
                for j in 0..n {
                    let d = a[k + 1][j].mul(&f1);
                    a[i][j] = a[i][j].sub(&d);
                }
                for r in 0..n {
                    let d = a[r][k + 1].mul(&f1);
                    a[r][i] = a[r][i].sub(&d);
                }
            }
            let f2 = a[k + 1][i].mul(&inv);
            if !f2.is_zero() {
                for j in 0..n {
                    let d = a[k][j].mul(&f2);
                    a[i][j] = a[i][j].add(&d);
                }
                for r in 0..n {
                    let d = a[r][k].mul(&f2);
                    a[r][i] = a[r][i].add(&d);
                }
            }
        }
        k += 2;
    }
    if sign {
        prod = prod.neg();
    }
    Ok(prod)
}

fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let first = points[0];
    let mut out = Vec::new();
    for k in 1..points.len() {
        let mate = points[k];
        let rest: Vec<usize> = points[1..k]
            .iter()
            .chain(&points[k + 1..])
            .copied()
            .collect();
        for mut m in matchings(&rest) {
            m.insert(0, (first, mate));
            out.push(m);
        }
    }
    out
}

/// Sign of the permutation (i1 j1 i2 j2 ...) read off a matching.
pub fn matching_sign(m: &[(usize, usize)]) -> i32 {
    let seq: Vec<usize> = m.iter().flat_map(|&(i, j)| [i, j]).collect();
    let mut inversions = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pfaffian by the perfect-matching expansion; cross-check for dim <= 8.
pub fn pfaffian_expansion<C: Scalar>(mat: &[Vec<C>]) -> Result<C, MatrixError> {
    let n = check_skew(mat)?;
    if n % 2 != 0 {
        return Err(MatrixError::OddDimension(n));
    }
    assert!(n <= 8, "matching expansion is meant for small cross-checks");
    let pts: Vec<usize> = (0..n).collect();
    let mut acc = C::zero();
    for m in matchings(&pts) {
        let mut term = if matching_sign(&m) > 0 {
            C::one()
        } else {
            C::one().neg()
        };
        for (i, j) in m {
            term = term.mul(&mat[i][j]);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Determinant by Gaussian elimination over a scalar field.
pub fn determinant<C: Scalar>(mat: &[Vec<C>]) -> Result<C, MatrixError> {
    let n = check_square(mat)?;
    let mut a = mat.to_vec();
    let mut det = C::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero());
        let piv = match piv {
            None => return Ok(C::zero()),
            Some(p) => p,
        };
        if piv != col {
            a.swap(piv, col);
            det = det.neg();
        }
        let pivot = a[col][col].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        for r in col + 1..n {
            let f = a[r][col].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let d = a[col][c].mul(&f);
                a[r][c] = a[r][c].sub(&d);
            }
        }
    }
    Ok(det)
}

/// Fraction-free determinant (Bareiss) for polynomial entries; every division
/// is exact.
pub fn determinant_bareiss<C: Scalar>(
    mat: &[Vec<Polynomial<C>>],
) -> Result<Polynomial<C>, MatrixError> {
    let n = check_square(mat)?;
    if n == 0 {
        return Err(MatrixError::NotSquare);
    }
    let n_vars = mat[0][0].n_vars();
    let mut a = mat.to_vec();
    let mut prev = Polynomial::one(n_vars);
    let mut sign = false;
    for col in 0..n.saturating_sub(1) {
        let piv = (col..n).find(|&r| !a[r][col].is_zero());
        let piv = match piv {
            None => return Ok(Polynomial::zero(n_vars)),
            Some(p) => p,
        };
        if piv != col {
            a.swap(piv, col);
            sign = !sign;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let t = a[col][col]
                    .mul(&a[r][c])
                    .sub(&a[r][col].mul(&a[col][c]));
                a[r][c] = t.exact_div(&prev)?;
            }
            a[r][col] = Polynomial::zero(n_vars);
        }
        prev = a[col][col].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if sign {
        det = det.neg();
    }
    Ok(det)
}

// ---- Brauer-model sum rules ----

/// Z^{(N)} for even N as an exact polynomial: the Pfaffian sum rule with all
/// denominators cleared, then one exact division by the Vandermonde in the
/// squared variables.
pub fn brauer_z_polynomial(n_points: usize) -> QPoly {
    assert!(n_points % 2 == 0);
    let nn = n_points;
    let zi2_minus_zj2 = |i: usize, j: usize| -> QPoly {
        let zi = QPoly::var(nn, i);
        let zj = QPoly::var(nn, j);
        zi.mul(&zi).sub(&zj.mul(&zj))
    };
    // d_{ij} = (1 - (z_i - z_j)^2)(1 - (z_i + z_j)^2)
    let d_factor = |i: usize, j: usize| -> QPoly {
        let zi = QPoly::var(nn, i);
        let zj = QPoly::var(nn, j);
        let one = QPoly::one(nn);
        let m = zi.sub(&zj);
        let p = zi.add(&zj);
        one.sub(&m.mul(&m)).mul(&one.sub(&p.mul(&p)))
    };
    let pts: Vec<usize> = (1..=nn).collect();
    let mut total = QPoly::zero(nn);
    for m in matchings(&pts) {
        let mut term = QPoly::constant(nn, q(matching_sign(&m) as i64));
        let in_m = |i: usize, j: usize| m.iter().any(|&(a, b)| (a, b) == (i, j));
        for i in 1..=nn {
            for j in i + 1..=nn {
                term = if in_m(i, j) {
                    term.mul(&zi2_minus_zj2(i, j))
                } else {
                    term.mul(&d_factor(i, j))
                };
            }
        }
        total = total.add(&term);
    }
    let vdm = polynomial_vandermonde_sq::<Rational>(nn, &(1..=nn).collect::<Vec<_>>());
    total.exact_div(&vdm).expect("divisible by the Vandermonde")
}

/// Z^{(N)} evaluated at a point (even N), via the cleared form; the point
/// must have pairwise distinct squares.
pub fn brauer_z_at(point: &[Rational]) -> Result<Rational, MatrixError> {
    let nn = point.len();
    assert!(nn % 2 == 0);
    let mut vdm = q(1);
    for i in 0..nn {
        for j in i + 1..nn {
            vdm = vdm * (&point[i] * &point[i] - &point[j] * &point[j]);
        }
    }
    if Zero::is_zero(&vdm) {
        return Err(MatrixError::SingularPoint);
    }
    let pts: Vec<usize> = (0..nn).collect();
    let mut total = q(0);
    for m in matchings(&pts) {
        let mut term = q(matching_sign(&m) as i64);
        let in_m = |i: usize, j: usize| m.iter().any(|&(a, b)| (a, b) == (i, j));
        for i in 0..nn {
            for j in i + 1..nn {
                let zi = &point[i];
                let zj = &point[j];
                if in_m(i, j) {
                    term = term * (zi * zi - zj * zj);
                } else {
                    let dm = &q(1) - &((zi - zj) * (zi - zj));
                    let dp = &q(1) - &((zi + zj) * (zi + zj));
                    term = term * dm * dp;
                }
            }
        }
        total = total + term;
    }
    Ok(total / vdm)
}

/// Homogeneous value Z^{(N)}(0,...,0) through the binomial Pfaffian; exact
/// integer for both parities.
pub fn brauer_z_homog(n_points: usize) -> BigInt {
    let idx: Vec<usize> = if n_points % 2 == 0 {
        (0..n_points).collect()
    } else {
        (1..n_points).collect()
    };
    let dim = idx.len();
    let mut m = vec![vec![<Rational as Zero>::zero(); dim]; dim];
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            if r == c {
                continue;
            }
            let e = binomial(2 * i + 2 * j + 1, 2 * j) - binomial(2 * i + 2 * j + 1, 2 * i);
            let half = Rational::new(e, BigInt::from(2));
            // observed integral; asserted rather than assumed
            assert!(
                half.denom().is_one(),
                "binomial Pfaffian entry ({i},{j}) is not an integer"
            );
            m[r][c] = half;
        }
    }
    let pf = pfaffian(&m).expect("skew by construction");
    assert!(pf.denom().is_one());
    pf.numer().clone()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// W^{(N)}: the factorized permutation-sector sum rule. Odd sizes reduce from
/// N+1 by taking the top coefficient in the last variable.
pub fn brauer_w_polynomial(n_points: usize) -> QPoly {
    if n_points % 2 == 1 {
        let even = brauer_w_polynomial(n_points + 1);
        let n = (n_points + 1) / 2;
        return even
            .leading_coefficient_in(n_points + 1, 4 * (n - 1))
            .drop_last_var()
            .expect("top coefficient eliminates z_N");
    }
    let nn = n_points;
    let n = nn / 2;
    use crate::brauer::{lin_a, lin_b, lin_c};
    let one = QPoly::one(nn);
    let mut f = one.clone();
    for i in 1..=n {
        for j in i + 1..=n {
            f = f
                .mul(&lin_a(nn, i, j))
                .mul(&lin_b(nn, i, j))
                .mul(&one.add(&lin_c(nn, i, j)))
                .mul(&one.add(&lin_a(nn, j, i)));
        }
    }
    for i in n + 1..=nn {
        for j in i + 1..=nn {
            f = f
                .mul(&lin_a(nn, i, j))
                .mul(&lin_c(nn, i, j))
                .mul(&one.add(&lin_b(nn, i, j)))
                .mul(&one.add(&lin_a(nn, j, i)));
        }
    }
    f
}

// ---- TL-model sum rules ----

fn tl_g_factor(nn: usize, i: usize, j: usize) -> WPoly {
    // (z_i^2 + z_i z_j + z_j^2)(1 + z_i z_j + z_i^2 z_j^2)
    let zi = WPoly::var(nn, i);
    let zj = WPoly::var(nn, j);
    let zizj = zi.mul(&zj);
    let f1 = zi.mul(&zi).add(&zizj).add(&zj.mul(&zj));
    let f2 = WPoly::one(nn).add(&zizj).add(&zizj.mul(&zizj));
    f1.mul(&f2)
}

/// Z^{(2n)} for the non-crossing model as an exact polynomial, by clearing
/// the Cauchy-like determinant: sum over permutations of prod_{j != sigma(i)}
/// g_{i,j}, divided by the in-half Vandermonde-type products.
pub fn tl_z_polynomial(n_points: usize) -> WPoly {
    assert!(n_points % 2 == 0);
    let nn = n_points;
    let n = nn / 2;
    let mut total = WPoly::zero(nn);
    for (sigma, sign) in permutations_with_sign(n) {
        let mut term = WPoly::constant(nn, Cyclotomic::from_rational(q(sign as i64)));
        for i in 1..=n {
            for j in 1..=n {
                if sigma[i - 1] != j {
                    term = term.mul(&tl_g_factor(nn, i, j + n));
                }
            }
        }
        total = total.add(&term);
    }
    let mut den = WPoly::one(nn);
    let z = |i| WPoly::var(nn, i);
    for half in [0usize, n] {
        for i in 1..=n {
            for j in i + 1..=n {
                let zi = z(half + i);
                let zj = z(half + j);
                den = den.mul(&zi.sub(&zj));
                den = den.mul(&WPoly::one(nn).sub(&zi.mul(&zj)));
            }
        }
    }
    total.exact_div(&den).expect("divisible by the half-products")
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n + 1];
    fn rec(
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, i32)>,
    ) {
        if cur.len() == n {
            let mut inv = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if cur[a] > cur[b] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// tl_z via the cleared determinant at a rational point.
pub fn tl_z_at(point: &[Rational]) -> Result<Rational, MatrixError> {
    let nn = point.len();
    assert!(nn % 2 == 0);
    let n = nn / 2;
    let g = |i: usize, j: usize| -> Rational {
        let zi = &point[i - 1];
        let zj = &point[j - 1];
        let zizj = zi * zj;
        (zi * zi + &zizj + zj * zj) * (q(1) + &zizj + &zizj * &zizj)
    };
    let mut den = q(1);
    for half in [0usize, n] {
        for i in 1..=n {
            for j in i + 1..=n {
                let zi = &point[half + i - 1];
                let zj = &point[half + j - 1];
                den = den * (zi - zj) * (q(1) - zi * zj);
            }
        }
    }
    if Zero::is_zero(&den) {
        return Err(MatrixError::SingularPoint);
    }
    let mut total = q(0);
    for (sigma, sign) in permutations_with_sign(n) {
        let mut term = q(sign as i64);
        for i in 1..=n {
            for j in 1..=n {
                if sigma[i - 1] != j {
                    term = term * g(i, j + n);
                }
            }
        }
        total = total + term;
    }
    Ok(total / den)
}

/// Z^{(2n)} squared as the cleared Pfaffian expression at a rational point.
pub fn tl_z_pf_squared_at(point: &[Rational]) -> Result<Rational, MatrixError> {
    let nn = point.len();
    assert!(nn % 2 == 0);
    let b = |i: usize, j: usize| -> Rational {
        let zi = &point[i - 1];
        let zj = &point[j - 1];
        (zi - zj) * (q(1) - zi * zj)
    };
    let g = |i: usize, j: usize| -> Rational {
        let zi = &point[i - 1];
        let zj = &point[j - 1];
        let zizj = zi * zj;
        (zi * zi + &zizj + zj * zj) * (q(1) + &zizj + &zizj * &zizj)
    };
    let mut den = q(1);
    for i in 1..=nn {
        for j in i + 1..=nn {
            den = den * b(i, j);
        }
    }
    if Zero::is_zero(&den) {
        return Err(MatrixError::SingularPoint);
    }
    let pts: Vec<usize> = (1..=nn).collect();
    let mut total = q(0);
    for m in matchings(&pts) {
        let mut term = q(matching_sign(&m) as i64);
        let in_m = |i: usize, j: usize| m.iter().any(|&(a, b)| (a, b) == (i, j));
        for i in 1..=nn {
            for j in i + 1..=nn {
                term = term * if in_m(i, j) { b(i, j) } else { g(i, j) };
            }
        }
        total = total + term;
    }
    Ok(total / den)
}

// ---- component sums and homogeneous values ----

pub fn component_sum<C: Scalar>(gsv: &GroundStateVector<C>) -> Polynomial<C> {
    gsv.components
        .iter()
        .fold(Polynomial::zero(gsv.n_points), |acc, f| acc.add(f))
}

/// Sum over the permutation-sector components (crossing model only).
pub fn permutation_sector_sum(gsv: &GroundStateVector<Rational>) -> QPoly {
    assert_eq!(
        gsv.model,
        Model::Brauer,
        "the permutation sector is a crossing-model notion"
    );
    gsv.patterns
        .iter()
        .zip(&gsv.components)
        .filter(|(pi, _)| pi.permutation_sector().is_some())
        .fold(QPoly::zero(gsv.n_points), |acc, (_, f)| acc.add(f))
}

/// Component sum at the all-ones point, together with the quotient by
/// 3^{n(n-1)}, which must come out a positive integer.
pub fn tl_homog(gsv: &GroundStateVector<Cyclotomic>) -> (Rational, BigInt) {
    assert_eq!(gsv.model, Model::Tl);
    let nn = gsv.n_points;
    let n = nn / 2;
    let ones = vec![Cyclotomic::one(); nn];
    let total = component_sum(gsv).eval(&ones);
    assert!(total.is_rational(), "all-ones value must be omega-free");
    let value = total.re;
    let mut power = BigInt::one();
    for _ in 0..n * (n - 1) {
        power *= 3;
    }
    let quotient = &value / Rational::from_integer(power);
    assert!(
        quotient.denom().is_one() && quotient.numer().is_positive(),
        "quotient by 3^(n(n-1)) must be a positive integer, got {quotient}"
    );
    (value, quotient.numer().clone())
}

/// Top-degree sum checks: the sum of exact leading parts of all components
/// equals the cleared Pfaffian of 1/(z_i^2 - z_j^2); the permutation-sector
/// analog equals the squared Vandermonde product.
pub fn leading_sum_checks(gsv: &GroundStateVector<Rational>) -> crate::report::CheckReport {
    assert_eq!(gsv.model, Model::Brauer);
    let nn = gsv.n_points;
    let n = nn / 2;
    let mut chk = crate::report::Checker::new();

    let top_sum = gsv
        .components
        .iter()
        .fold(QPoly::zero(nn), |acc, f| acc.add(&f.top_homogeneous_part()));
    let pts: Vec<usize> = (1..=nn).collect();
    let mut cleared = QPoly::zero(nn);
    for m in matchings(&pts) {
        let mut term = QPoly::constant(nn, q(matching_sign(&m) as i64));
        let in_m = |i: usize, j: usize| m.iter().any(|&(a, b)| (a, b) == (i, j));
        for i in 1..=nn {
            for j in i + 1..=nn {
                if !in_m(i, j) {
                    let zi = QPoly::var(nn, i);
                    let zj = QPoly::var(nn, j);
                    term = term.mul(&zi.mul(&zi).sub(&zj.mul(&zj)));
                }
            }
        }
        cleared = cleared.add(&term);
    }
    chk.record(
        "leading-sum-all",
        1,
        if top_sum == cleared {
            vec![]
        } else {
            vec!["top-degree sum differs from cleared Pfaffian".into()]
        },
    );

    let sector_top = gsv
        .patterns
        .iter()
        .zip(&gsv.components)
        .filter(|(pi, _)| pi.permutation_sector().is_some())
        .fold(QPoly::zero(nn), |acc, (_, f)| {
            acc.add(&f.top_homogeneous_part())
        });
    let first: Vec<usize> = (1..=n).collect();
    let second: Vec<usize> = (n + 1..=nn).collect();
    let v1 = polynomial_vandermonde_sq::<Rational>(nn, &first);
    let v2 = polynomial_vandermonde_sq::<Rational>(nn, &second);
    let expect = v1.mul(&v1).mul(&v2).mul(&v2);
    chk.record(
        "leading-sum-sector",
        1,
        if sector_top == expect {
            vec![]
        } else {
            vec!["sector top-degree sum differs from squared Vandermonde product".into()]
        },
    );
    chk.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::build_vector;
    use crate::fixtures;
    use crate::ring::random_point;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qq(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pfaffian_small_cases() {
        // 2x2: Pf = A_{12}
        let a = qq(5, 3);
        let m = vec![
            vec![q(0), a.clone()],
            vec![-a.clone(), q(0)],
        ];
        assert_eq!(pfaffian(&m).unwrap(), a);
        // 4x4: A12 A34 - A13 A24 + A14 A23
        let e = |v: i64| q(v);
        let m = vec![
            vec![e(0), e(1), e(2), e(3)],
            vec![e(-1), e(0), e(7), e(24)],
            vec![e(-2), e(-7), e(0), e(66)],
            vec![e(-3), e(-24), e(-66), e(0)],
        ];
        let pf = pfaffian(&m).unwrap();
        assert_eq!(pf, q(1 * 66 - 2 * 24 + 3 * 7));
        assert_eq!(pfaffian_expansion(&m).unwrap(), pf);
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let n = 6;
            let mut m = vec![vec![q(0); n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let v = crate::ring::random_rational(&mut rng);
                    m[i][j] = v.clone();
                    m[j][i] = -v;
                }
            }
            let pf = pfaffian(&m).unwrap();
            assert_eq!(pfaffian_expansion(&m).unwrap(), pf);
            let det = determinant(&m).unwrap();
            assert_eq!(&pf * &pf, det);
        }
    }

    #[test]
    fn pfaffian_rejects_bad_input() {
        let m = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert!(matches!(pfaffian(&m), Err(MatrixError::NotSkew)));
        let m3 = vec![vec![q(0); 3]; 3];
        assert!(matches!(pfaffian(&m3), Err(MatrixError::OddDimension(3))));
    }

    #[test]
    fn determinant_small() {
        let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(determinant(&id).unwrap(), q(1));
        let m = vec![vec![q(3), q(5)], vec![q(2), q(4)]];
        assert_eq!(determinant(&m).unwrap(), q(2));
    }

    #[test]
    fn bareiss_matches_field_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..5 {
            let n = 4;
            let m: Vec<Vec<QPoly>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| crate::brauer::random_poly(&mut rng, 2, 1))
                        .collect()
                })
                .collect();
            let sym = determinant_bareiss(&m).unwrap();
            let pt = random_point(&mut rng, 2);
            let mval: Vec<Vec<Rational>> = m
                .iter()
                .map(|row| row.iter().map(|p| p.eval(&pt)).collect())
                .collect();
            assert_eq!(sym.eval(&pt), determinant(&mval).unwrap());
        }
    }

    #[test]
    fn cauchy_determinant_identity() {
        // det(1/(z_i^2 - z_{j+n}^2)) cleared row-wise equals the two
        // Vandermondes in the squared variables, up to the sign from the
        // second block's reversal.
        for n in [2usize, 3] {
            let nn = 2 * n;
            let h = |i: usize, j: usize| -> QPoly {
                let zi = QPoly::var(nn, i);
                let zj = QPoly::var(nn, j + n);
                zi.mul(&zi).sub(&zj.mul(&zj))
            };
            // row i cleared by prod_k h_{i,k}: entries prod_{k != j} h_{i,k}
            let m: Vec<Vec<QPoly>> = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| {
                            let mut e = QPoly::one(nn);
                            for k in 1..=n {
                                if k != j {
                                    e = e.mul(&h(i, k));
                                }
                            }
                            e
                        })
                        .collect()
                })
                .collect();
            let det = determinant_bareiss(&m).unwrap();
            let v1 = polynomial_vandermonde_sq::<Rational>(nn, &(1..=n).collect::<Vec<_>>());
            let v2 =
                polynomial_vandermonde_sq::<Rational>(nn, &(n + 1..=nn).collect::<Vec<_>>());
            let mut expect = v1.mul(&v2);
            if (n * (n - 1) / 2) % 2 == 1 {
                expect = expect.neg();
            }
            assert_eq!(det, expect);
        }
    }

    #[test]
    fn brauer_z4_symbolic() {
        let z = brauer_z_polynomial(4);
        assert_eq!(z, fixtures::z4_sum_brauer());
        let z2 = brauer_z_polynomial(2);
        assert_eq!(z2, QPoly::one(2));
    }

    #[test]
    fn brauer_z_matches_component_sum_at_points() {
        let v4 = build_vector(4).unwrap();
        let zsum = component_sum(&v4);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let pt = random_point(&mut rng, 4);
            assert_eq!(brauer_z_at(&pt).unwrap(), zsum.eval(&pt));
        }
    }

    #[test]
    fn brauer_homogeneous_sequence() {
        let expect: [i64; 9] = [
            1,
            7,
            39,
            1771,
            57163,
            16457953,
            3125503009,
            5643044005273,
            6357601085989209,
        ];
        for (k, nn) in (2..=10).enumerate() {
            assert_eq!(brauer_z_homog(nn), BigInt::from(expect[k]));
        }
    }

    #[test]
    fn w_sum_rule_n4() {
        let v4 = build_vector(4).unwrap();
        let w = permutation_sector_sum(&v4);
        assert_eq!(w, brauer_w_polynomial(4));
        assert_eq!(w.eval(&vec![q(0); 4]), q(16));
        // odd reduction: W^{(3)}(0,0,0) = 2^{2(n-1)^2} with n = 2
        let w3 = brauer_w_polynomial(3);
        assert_eq!(w3.eval(&vec![q(0); 3]), q(4));
        assert_eq!(brauer_w_polynomial(2), QPoly::one(2));
    }

    #[test]
    fn tl_z4_symbolic() {
        let z = tl_z_polynomial(4);
        let expect = fixtures::z4_sum_tl();
        assert_eq!(z, expect);
        assert_eq!(tl_z_polynomial(2), WPoly::one(2));
    }

    #[test]
    fn tl_z_point_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let fix = fixtures::z4_sum_tl();
        for _ in 0..10 {
            let pt = random_point(&mut rng, 4);
            let wpt: Vec<Cyclotomic> = pt
                .iter()
                .map(|r| Cyclotomic::from_rational(r.clone()))
                .collect();
            let direct = fix.eval(&wpt);
            let z = tl_z_at(&pt).unwrap();
            assert_eq!(direct, Cyclotomic::from_rational(z.clone()));
            let z2 = tl_z_pf_squared_at(&pt).unwrap();
            assert_eq!(z2, &z * &z);
        }
    }

    #[test]
    fn tl_homog_values() {
        let v = crate::tl::build_vector_tl(4).unwrap();
        let (value, quotient) = tl_homog(&v);
        assert_eq!(value, q(27));
        assert_eq!(quotient, BigInt::from(3));
        let v2 = crate::tl::build_vector_tl(2).unwrap();
        let (value, quotient) = tl_homog(&v2);
        assert_eq!(value, q(1));
        assert_eq!(quotient, BigInt::from(1));
    }

    #[test]
    fn leading_sums_n4() {
        let v4 = build_vector(4).unwrap();
        let report = leading_sum_checks(&v4);
        assert!(report.all_passed(), "{}", report.render_text());
    }

    #[test]
    fn z_recursion_at_points() {
        // Z^{(4)}(z2-1, z2, z3, z4) = Z^{(2)} * quadruple product
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let z4 = fixtures::z4_sum_brauer();
        for _ in 0..10 {
            let pt3 = random_point(&mut rng, 3);
            let full = vec![
                &pt3[0] - q(1),
                pt3[0].clone(),
                pt3[1].clone(),
                pt3[2].clone(),
            ];
            let lhs = z4.eval(&full);
            let mut rhs = q(1); // Z^{(2)} = 1
            for zk in &pt3[1..] {
                rhs = rhs
                    * (q(1) + &pt3[0] + zk)
                    * (q(1) + &pt3[0] - zk)
                    * (q(2) + zk - &pt3[0])
                    * (q(2) - zk - &pt3[0]);
            }
            assert_eq!(lhs, rhs);
        }
    }
}
