//! Coefficient matrices, umbral inversion and moment functionals.
//!
//! Matrix entries are polynomials in `s` (free of `x`); diagonal entries must be
//! plain scalars so that triangular solves stay polynomial in `s`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::families::{double_factorial_odd, family_basis, FamilyId};
use crate::qcore::{binomial, q_binomial, q_int, q_triangular, Poly, Scalar};

/// Lower triangular matrix; `rows[n][k]` is the coefficient of `x^k` in `p_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    rows: Vec<Vec<Poly>>,
}

impl CoeffMatrix {
    pub fn identity(n: usize) -> CoeffMatrix {
        CoeffMatrix {
            rows: (0..=n)
                .map(|i| (0..=i).map(|k| if k == i { Poly::one() } else { Poly::zero() }).collect())
                .collect(),
        }
    }

    /// Rows from polynomials; row `n` keeps the coefficients of `x^0..x^n`.
    pub fn from_polys(polys: &[Poly]) -> CoeffMatrix {
        CoeffMatrix {
            rows: polys
                .iter()
                .enumerate()
                .map(|(n, p)| (0..=n as u32).map(|k| p.coeff_x(k)).collect())
                .collect(),
        }
    }

    /// Size minus one (the largest row index).
    pub fn order(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn entry(&self, n: usize, k: usize) -> Poly {
        if k > n {
            return Poly::zero();
        }
        self.rows[n][k].clone()
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn row_poly(&self, n: usize) -> Poly {
        self.rows[n].iter().enumerate().map(|(k, c)| c.shift(k as u32, 0)).sum()
    }

    fn diagonal_scalar(&self, n: usize) -> Result<Scalar> {
        match self.rows[n][n].as_scalar() {
            Some(d) if !d.is_zero() => Ok(d),
            _ => Err(Error::ZeroDiagonal(n)),
        }
    }

    pub fn mul(&self, other: &CoeffMatrix) -> CoeffMatrix {
        let n = self.order().min(other.order());
        CoeffMatrix {
            rows: (0..=n)
                .map(|i| {
                    (0..=i)
                        .map(|k| (k..=i).map(|j| &self.rows[i][j] * &other.rows[j][k]).sum())
                        .collect()
                })
                .collect(),
        }
    }

    /// `b(n) = sum_k m[n][k] a(k)`.
    pub fn apply(&self, a: &[Poly]) -> Vec<Poly> {
        self.rows
            .iter()
            .take(a.len())
            .map(|row| row.iter().zip(a).map(|(m, x)| m * x).sum())
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> CoeffMatrix {
        CoeffMatrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }
}

/// Rows are the degree-ordered basis members `p_0 .. p_N` of the family.
pub fn coeff_matrix(id: FamilyId, n: usize) -> Result<CoeffMatrix> {
    let polys: Vec<Poly> = (0..=n as u32).map(|k| family_basis(id, k)).collect();
    for (k, p) in polys.iter().enumerate() {
        let lead_ok = p.degree_x() == Some(k as u32) && p.coeff_x(k as u32).as_scalar().is_some();
        if !lead_ok {
            return Err(Error::DegreeDeficiency { family: id.as_str(), n: k });
        }
    }
    Ok(CoeffMatrix::from_polys(&polys))
}

/// Exact inverse of a lower triangular matrix with invertible scalar diagonal.
pub fn umbral_inverse(m: &CoeffMatrix) -> Result<CoeffMatrix> {
    let size = m.rows.len();
    let mut inv: Vec<Vec<Poly>> = Vec::with_capacity(size);
    for n in 0..size {
        let d_inv = m.diagonal_scalar(n)?.inv()?;
        let mut row = vec![Poly::zero(); n + 1];
        row[n] = Poly::constant(d_inv.clone());
        for k in (0..n).rev() {
            let acc: Poly = (k..n).map(|j| &m.rows[n][j] * &inv[j][k]).sum();
            row[k] = (-acc).scale(&d_inv);
        }
        inv.push(row);
    }
    Ok(CoeffMatrix { rows: inv })
}

/// Values `Lambda(x^n)` of the functional attached to a family.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentFunctional {
    pub family: FamilyId,
    /// Each moment is a polynomial in `s` only.
    pub moments: Vec<Poly>,
}

impl MomentFunctional {
    /// `Lambda(p)` for `p` of degree at most the number of stored moments minus one.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mu = self.moments.get(m.0 as usize).ok_or_else(|| {
                Error::Domain(format!("degree {} exceeds the {} computed moments", m.0, self.moments.len()))
            })?;
            out = out + mu.shift(0, m.1).scale(c);
        }
        Ok(out)
    }
}

/// Forward triangular solve of `Lambda(1) = 1`, `Lambda(p_n) = 0` for `1 <= n <= N`.
///
/// Normalizing by `Lambda(1) = 1` rather than `Lambda(p_0) = 1` matters only for the
/// families whose constant member is not 1 (`lucas`, `chebyshev_t_star`).
pub fn moments(id: FamilyId, n: usize) -> Result<MomentFunctional> {
    let m = coeff_matrix(id, n)?;
    let mut mu: Vec<Poly> = vec![Poly::one()];
    for row in 1..=n {
        let acc: Poly = (0..row).map(|k| &m.rows[row][k] * &mu[k]).sum();
        let d = m.diagonal_scalar(row)?;
        mu.push((-acc).div_scalar(&d)?);
    }
    Ok(MomentFunctional { family: id, moments: mu })
}

fn big(n: BigInt) -> Scalar {
    Scalar::from_bigint(n)
}

fn neg_s_pow(m: u32) -> Poly {
    Poly::term(Scalar::from_int(if m % 2 == 0 { 1 } else { -1 }), 0, m)
}

/// Alternating sum of ballot differences times `q^(j(j+1)/2)`: the even moments of
/// the q-Hermite functional divided by `s^m`.
pub fn touchard_riordan(m: u32) -> Scalar {
    let m = m as i64;
    (0..=m)
        .map(|j| {
            let ballot = binomial(2 * m, m - j) - binomial(2 * m, m - j - 1);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            big(ballot * sign) * q_triangular(j + 1)
        })
        .sum()
}

/// Closed formula for `Lambda(x^n)`, where one is known.
pub fn closed_moments(id: FamilyId, n: u32) -> Result<Poly> {
    if id == FamilyId::RogersSzego {
        return Ok(neg_s_pow(n).scale(&q_triangular(n as i64)));
    }
    if id == FamilyId::Monomials {
        return Ok(if n == 0 { Poly::one() } else { Poly::zero() });
    }
    if n % 2 == 1 {
        return Ok(Poly::zero());
    }
    let m = n / 2;
    let mi = m as i64;
    let four_m = Scalar::from_int(4).pow(mi);
    let one_minus_q = Scalar::one() - Scalar::q();
    let central = big(binomial(2 * mi, mi));
    let catalan = &central / &Scalar::from_int(mi + 1);
    Ok(match id {
        FamilyId::HermiteClassical => Poly::term(big(double_factorial_odd(m)), 0, m),
        FamilyId::HermiteBivarTilde => Poly::term(touchard_riordan(m) / one_minus_q.pow(mi), 0, m),
        FamilyId::QHermite => Poly::term(touchard_riordan(m), 0, m),
        FamilyId::ContQHermite => Poly::constant(touchard_riordan(m) / four_m),
        FamilyId::PhysicistsQHermite => {
            Poly::constant(touchard_riordan(m).stretch_v(2) / (four_m * one_minus_q.pow(mi)))
        }
        FamilyId::Fibonacci => neg_s_pow(m).scale(&catalan),
        FamilyId::Lucas | FamilyId::LucasStar => neg_s_pow(m).scale(&central),
        FamilyId::ChebyshevT | FamilyId::ChebyshevTStar => Poly::constant(central / four_m),
        FamilyId::ChebyshevU => Poly::constant(catalan / four_m),
        FamilyId::QFibonacci => {
            let c = Scalar::q_pow(mi) * q_binomial(2 * mi, mi) / q_int(m + 1);
            neg_s_pow(m).scale(&c)
        }
        FamilyId::QLucas => neg_s_pow(m).scale(&q_binomial(2 * mi, mi)),
        FamilyId::RogersSzego | FamilyId::Monomials => unreachable!("handled above"),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    /// `Lambda(p_n^2)` for `n <= N`.
    pub diagonal: Vec<Poly>,
    /// First `(m, n)` with `m < n` and `Lambda(p_m p_n) != 0`, if any.
    pub first_nonzero_off_diagonal: Option<(usize, usize)>,
}

impl GramReport {
    pub fn is_orthogonal(&self) -> bool {
        self.first_nonzero_off_diagonal.is_none()
    }
}

/// Gram matrix `Lambda(p_m p_n)` for `m, n <= N`.
pub fn gram_diagonal(id: FamilyId, n: usize) -> Result<GramReport> {
    let lam = moments(id, 2 * n)?;
    let polys: Vec<Poly> = (0..=n as u32).map(|k| family_basis(id, k)).collect();
    let mut diagonal = Vec::with_capacity(n + 1);
    let mut first = None;
    for i in 0..=n {
        for j in i..=n {
            let v = lam.apply(&(&polys[i] * &polys[j]))?;
            if i == j {
                diagonal.push(v);
            } else if first.is_none() && !v.is_zero() {
                first = Some((i, j));
            }
        }
    }
    Ok(GramReport { diagonal, first_nonzero_off_diagonal: first })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{parse_poly, q_shifted_factorial};

    fn p(t: &str) -> Poly {
        parse_poly(t).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let u = coeff_matrix(FamilyId::ChebyshevU, 2).unwrap();
        assert_eq!(u.rows()[2], vec![p("-1"), p("0"), p("4")]);
        assert_eq!(coeff_matrix(FamilyId::Monomials, 4).unwrap(), CoeffMatrix::identity(4));
        let h = coeff_matrix(FamilyId::HermiteClassical, 2).unwrap();
        assert_eq!(h.rows()[2], vec![p("-s"), p("0"), p("1")]);
    }

    #[test]
    fn hermite_inverse_flips_s() {
        let m = coeff_matrix(FamilyId::HermiteClassical, 8).unwrap();
        let inv = umbral_inverse(&m).unwrap();
        assert_eq!(inv, m.map(|c| c.subs_s_poly(&p("-s"))));
        assert_eq!(m.mul(&inv), CoeffMatrix::identity(8));
    }

    #[test]
    fn moment_examples() {
        let f = moments(FamilyId::Fibonacci, 4).unwrap();
        assert_eq!(f.moments[4].subs_s(&Scalar::from_int(-1)), Poly::from_int(2));
        let h = moments(FamilyId::QHermite, 4).unwrap();
        assert_eq!(h.moments[2], p("(1-q)*s"));
        assert_eq!(h.moments[4], p("(1-q)^2*(q+2)*s^2"));
        assert_eq!(closed_moments(FamilyId::HermiteClassical, 4).unwrap(), p("3*s^2"));
        assert_eq!(closed_moments(FamilyId::Lucas, 4).unwrap().subs_s(&Scalar::from_int(-1)), p("6"));
        assert_eq!(closed_moments(FamilyId::QHermite, 4).unwrap(), p("s^2*(2 - 3*q + q^3)"));
    }

    #[test]
    fn moments_match_closed_forms() {
        for id in FamilyId::ALL {
            let lam = moments(id, 10).unwrap();
            for n in 0..=10u32 {
                assert_eq!(lam.moments[n as usize], closed_moments(id, n).unwrap(), "{id} n={n}");
            }
        }
    }

    #[test]
    fn gram_examples() {
        let g = gram_diagonal(FamilyId::HermiteClassical, 5).unwrap();
        assert!(g.is_orthogonal());
        let mut fact = Scalar::one();
        for (n, d) in g.diagonal.iter().enumerate() {
            if n > 0 {
                fact = fact * Scalar::from_int(n as i64);
            }
            assert_eq!(*d, Poly::term(fact.clone(), 0, n as u32));
        }
        let g = gram_diagonal(FamilyId::ContQHermite, 5).unwrap();
        assert!(g.is_orthogonal());
        for (n, d) in g.diagonal.iter().enumerate() {
            assert_eq!(*d, Poly::constant(q_shifted_factorial(n as u32)));
        }
        assert!(!gram_diagonal(FamilyId::QFibonacci, 4).unwrap().is_orthogonal());
    }
}
