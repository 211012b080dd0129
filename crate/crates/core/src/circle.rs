//! Rogers-Szego polynomials on the unit circle and their orthogonality functional.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use crate::qcore::{q_binomial, q_shifted_factorial, q_triangular, Scalar};

/// Finite sum `sum_k c_k z^k` with `k` ranging over all integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Scalar>,
}

/// Trigonometric polynomials in `z = e^{i theta}`.
pub type LaurentCirclePoly = LaurentPoly;

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Scalar::one())
    }

    pub fn monomial(k: i64, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(k, &c);
        p
    }

    pub fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `z -> 1/z`; the complex conjugate on `|z| = 1` since all coefficients are real.
    pub fn conjugate(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    pub fn eval_f64(&self, z: f64, v: f64) -> f64 {
        self.coeffs.iter().map(|(k, c)| c.eval_f64(v) * z.powi(*k as i32)).sum()
    }

    pub fn eval_complex(&self, z: num_complex::Complex64, v: f64) -> num_complex::Complex64 {
        self.coeffs.iter().map(|(k, c)| z.powi(*k as i32) * c.eval_f64(v)).sum()
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

/// `R_n(z, -v, q) = sum_k (-1)^(n-k) [n,k] v^(n-k) z^k`.
pub fn rs_unit(n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for k in 0..=n as i64 {
        let d = n as i64 - k;
        let sign = Scalar::from_int(if d % 2 == 0 { 1 } else { -1 });
        p.add_term(k, &(sign * q_binomial(n as i64, k) * Scalar::v_pow(d)));
    }
    p
}

/// Linear extension of `z^n -> v^(n^2)`.
pub fn lambda_r(p: &LaurentPoly) -> Scalar {
    p.terms().map(|(k, c)| c * &Scalar::v_pow(k * k)).sum()
}

/// `Lambda_R(R_m conj(R_n))` by direct expansion of the product.
pub fn inner_product(m: u32, n: u32) -> Scalar {
    lambda_r(&(&rs_unit(m) * &rs_unit(n).conjugate()))
}

/// The closed single sum reached by the standard derivation,
/// `(-1)^(m+n) v^(m+n) sum_j (-1)^j q^C(j,2) [m,j] prod_{l<n} (1 - q^(l-j))`.
pub fn inner_product_derived(m: u32, n: u32) -> Scalar {
    let sign = Scalar::from_int(if (m + n) % 2 == 0 { 1 } else { -1 });
    let sum: Scalar = (0..=m as i64)
        .map(|j| {
            let prod: Scalar = (0..n as i64).map(|l| Scalar::one() - Scalar::q_pow(l - j)).product();
            let sj = Scalar::from_int(if j % 2 == 0 { 1 } else { -1 });
            sj * q_triangular(j) * q_binomial(m as i64, j) * prod
        })
        .sum();
    sign * Scalar::v_pow((m + n) as i64) * sum
}

/// The expected value `(q;q)_n [m = n]`.
pub fn inner_product_expected(m: u32, n: u32) -> Scalar {
    if m == n {
        q_shifted_factorial(n)
    } else {
        Scalar::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::parse_scalar;

    #[test]
    fn rs_unit_values() {
        assert_eq!(rs_unit(0), LaurentPoly::one());
        let mut r1 = LaurentPoly::monomial(1, Scalar::one());
        r1.add_term(0, &-Scalar::v());
        assert_eq!(rs_unit(1), r1);
        let r2 = rs_unit(2);
        assert_eq!(r2.coeff(1), -(Scalar::one() + Scalar::q()) * Scalar::v());
        assert_eq!(r2.coeff(0), Scalar::q());
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_r(&LaurentPoly::one()), Scalar::one());
        assert_eq!(lambda_r(&LaurentPoly::monomial(2, Scalar::one())), Scalar::q_pow(2));
        assert_eq!(lambda_r(&LaurentPoly::monomial(-1, Scalar::one())), Scalar::v());
    }

    #[test]
    fn small_inner_products() {
        assert_eq!(inner_product(0, 0), Scalar::one());
        assert_eq!(inner_product(1, 1), parse_scalar("1-q").unwrap());
        assert!(inner_product(0, 1).is_zero());
        assert_eq!(inner_product(3, 3), q_shifted_factorial(3));
    }

    #[test]
    fn derived_sum_agrees() {
        for m in 0..=5 {
            for n in 0..=5 {
                assert_eq!(inner_product_derived(m, n), inner_product(m, n), "m={m} n={n}");
            }
        }
    }
}
