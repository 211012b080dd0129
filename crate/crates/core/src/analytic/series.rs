//! Truncated formal power series in `t` with polynomial coefficients, and the
//! exact series and finite-product identities.

use std::fmt;
use std::str::FromStr;

use crate::circle::LaurentPoly;
use crate::error::{Error, Result};
use crate::families::{family_poly, FamilyId};
use crate::qcore::{q_binomial, q_factorial, q_shifted_factorial, q_triangular, Poly, Scalar};

/// `c_0 + c_1 t + ... + c_N t^N (mod t^(N+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<Poly>,
}

impl TruncSeries {
    pub fn from_fn(order: usize, f: impl Fn(u32) -> Poly) -> Self {
        TruncSeries { coeffs: (0..=order as u32).map(f).collect() }
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { Poly::one() } else { Poly::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| {
            (0..=n as usize).map(|k| &self.coeffs[k] * &other.coeffs[n as usize - k]).sum()
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| &self.coeffs[n as usize] + &other.coeffs[n as usize])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| &self.coeffs[n as usize] - &other.coeffs[n as usize])
    }

    /// `f(t) -> f(a t)` for a polynomial `a`.
    pub fn dilate(&self, a: &Poly) -> Self {
        let mut pow = Poly::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pow);
            pow = &pow * a;
        }
        TruncSeries { coeffs }
    }

    /// Multiply by `1 - a t`.
    pub fn times_one_minus(&self, a: &Poly) -> Self {
        Self::from_fn(self.order(), |n| {
            let n = n as usize;
            if n == 0 {
                self.coeffs[0].clone()
            } else {
                &self.coeffs[n] - &(a * &self.coeffs[n - 1])
            }
        })
    }

    /// First index where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }
}

/// `e_q(t) = sum t^n / [n]!`.
pub fn q_exp_series(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| Poly::constant(q_factorial(n).inv().expect("[n]! is nonzero")))
}

/// `sum (-1)^n q^C(n,2) t^n / [n]!`, the reciprocal of `e_q(t)`.
pub fn q_exp_reciprocal(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        let sign = Scalar::from_int(if n % 2 == 0 { 1 } else { -1 });
        Poly::constant(sign * q_triangular(n as i64) / q_factorial(n))
    })
}

/// `sum t^n / (q;q)_n`.
pub fn big_q_exp(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| Poly::constant(q_shifted_factorial(n).inv().expect("nonzero")))
}

/// `sum (-1)^n q^C(n,2) t^n / (q;q)_n`.
pub fn small_q_exp(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        let sign = Scalar::from_int(if n % 2 == 0 { 1 } else { -1 });
        Poly::constant(sign * q_triangular(n as i64) / q_shifted_factorial(n))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesId {
    /// `sum R_n t^n / [n]! = e(xt) e(yt)`.
    Eq2_16,
    /// `e(t) * sum (-1)^n q^C(n,2) t^n/[n]! = 1`.
    Eq2_17,
    /// `E(t) = sum t^n/(q;q)_n` satisfies `(1-t) E(t) = E(qt)`.
    Eq2_25,
    /// `S(t) = sum (-1)^n q^C(n,2) t^n/(q;q)_n` satisfies `S(t) = (1-t) S(qt)` and `E S = 1`.
    Eq2_26,
    /// `w(0) = 1`, `w(1) = 1 - q`, `w(n) = 0` for `n >= 2`.
    Eq6_18,
}

impl SeriesId {
    pub const ALL: [SeriesId; 5] =
        [SeriesId::Eq2_16, SeriesId::Eq2_17, SeriesId::Eq2_25, SeriesId::Eq2_26, SeriesId::Eq6_18];

    pub fn as_str(self) -> &'static str {
        match self {
            SeriesId::Eq2_16 => "eq_2_16",
            SeriesId::Eq2_17 => "eq_2_17",
            SeriesId::Eq2_25 => "eq_2_25",
            SeriesId::Eq2_26 => "eq_2_26",
            SeriesId::Eq6_18 => "eq_6_18",
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeriesId::ALL.iter().copied().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesVerdict {
    pub id: SeriesId,
    pub order: usize,
    /// Index of the first failing coefficient, if any.
    pub first_failure: Option<usize>,
}

impl SeriesVerdict {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `w(n) = sum_k (-1)^k [n,k] q^((k^2+3k)/2 - nk)`.
pub fn w_value(n: u32) -> Scalar {
    let n = n as i64;
    (0..=n)
        .map(|k| {
            let sign = Scalar::from_int(if k % 2 == 0 { 1 } else { -1 });
            sign * q_binomial(n, k) * Scalar::q_pow((k * k + 3 * k) / 2 - n * k)
        })
        .sum()
}

pub fn series_identity_check(id: SeriesId, order: usize) -> SeriesVerdict {
    let q = Poly::constant(Scalar::q());
    let first_failure = match id {
        SeriesId::Eq2_16 => {
            let lhs = TruncSeries::from_fn(order, |n| {
                family_poly(FamilyId::RogersSzego, n).scale(&q_factorial(n).inv().expect("nonzero"))
            });
            let e = q_exp_series(order);
            let rhs = e.dilate(&Poly::x()).mul(&e.dilate(&Poly::s()));
            lhs.first_difference(&rhs)
        }
        SeriesId::Eq2_17 => q_exp_series(order).mul(&q_exp_reciprocal(order)).first_difference(&TruncSeries::one(order)),
        SeriesId::Eq2_25 => {
            let e = big_q_exp(order);
            e.times_one_minus(&Poly::one()).first_difference(&e.dilate(&q))
        }
        SeriesId::Eq2_26 => {
            let s = small_q_exp(order);
            let shifted = s.dilate(&q).times_one_minus(&Poly::one());
            s.first_difference(&shifted).or_else(|| {
                big_q_exp(order).mul(&s).first_difference(&TruncSeries::one(order))
            })
        }
        SeriesId::Eq6_18 => (0..=order as u32).position(|n| {
            let expect = match n {
                0 => Scalar::one(),
                1 => Scalar::one() - Scalar::q(),
                _ => Scalar::zero(),
            };
            w_value(n) != expect
        }),
    };
    SeriesVerdict { id, order, first_failure }
}

/// Both sides of the finite triple-product step as Laurent polynomials in `x`:
/// `prod_{i=1..n} (1 - q^i/x) prod_{i<n} (1 - q^i x)` and
/// `sum_{|j| <= n} (-1)^j q^C(j,2) [2n, n+j] x^j`.
pub fn finite_jacobi_sides(n: u32) -> (LaurentPoly, LaurentPoly) {
    let mut lhs = LaurentPoly::one();
    for i in 1..=n as i64 {
        let mut f = LaurentPoly::one();
        f.add_term(-1, &-Scalar::q_pow(i));
        lhs = &lhs * &f;
    }
    for i in 0..n as i64 {
        let mut f = LaurentPoly::one();
        f.add_term(1, &-Scalar::q_pow(i));
        lhs = &lhs * &f;
    }
    let mut rhs = LaurentPoly::zero();
    let ni = n as i64;
    for j in -ni..=ni {
        let sign = Scalar::from_int(if j % 2 == 0 { 1 } else { -1 });
        rhs.add_term(j, &(sign * q_triangular(j) * q_binomial(2 * ni, ni + j)));
    }
    (lhs, rhs)
}

pub fn finite_jacobi_check(n: u32) -> bool {
    let (lhs, rhs) = finite_jacobi_sides(n);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{parse_poly, parse_scalar};

    #[test]
    fn q_exp_coefficients() {
        let e = q_exp_series(4);
        assert_eq!(*e.coeff(0), Poly::one());
        assert_eq!(*e.coeff(2), parse_poly("1/(1+q)").unwrap());
        let one = num_rational::BigRational::from_integer(1.into());
        let c = e.coeff(4).as_scalar().unwrap().eval_v(&one).unwrap();
        assert_eq!(c, num_rational::BigRational::new(1.into(), 24.into()));
    }

    #[test]
    fn series_identities_hold() {
        for id in SeriesId::ALL {
            assert!(series_identity_check(id, 6).holds(), "{id}");
        }
    }

    #[test]
    fn rs_series_coefficient() {
        let e = q_exp_series(5);
        let rhs = e.dilate(&Poly::x()).mul(&e.dilate(&Poly::s()));
        let r3 = family_poly(FamilyId::RogersSzego, 3);
        assert_eq!(*rhs.coeff(3), r3.scale(&q_factorial(3).inv().unwrap()));
    }

    #[test]
    fn w_small_values() {
        assert_eq!(w_value(0), Scalar::one());
        assert_eq!(w_value(1), parse_scalar("1-q").unwrap());
        assert!(w_value(2).is_zero());
    }

    #[test]
    fn jacobi_step() {
        let (lhs, rhs) = finite_jacobi_sides(1);
        // (1 - q/x)(1 - x) = -x + (1 + q) - q/x
        assert_eq!(lhs.coeff(1), Scalar::from_int(-1));
        assert_eq!(lhs.coeff(0), parse_scalar("1+q").unwrap());
        assert_eq!(lhs.coeff(-1), -Scalar::q());
        assert_eq!(lhs, rhs);
        assert!(finite_jacobi_check(2));
    }
}
