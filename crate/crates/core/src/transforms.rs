//! Changes of basis, the connection identities between families, and the
//! sequence-level inverse relations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::families::{family_basis, family_poly, lucas_weight, q_lucas_weight, FamilyId};
use crate::qcore::{binomial, q_binomial, q_triangular, Poly, Scalar};

pub use crate::qoperators::{cheb_basis_convert, ChebBasis, ChebPoly};

/// Coefficients `c_k` (polynomials in `s`) with `p = sum_k c_k b_k`, `b_k` the
/// degree-`k` basis member of the family.
pub fn to_basis(p: &Poly, id: FamilyId) -> Result<Vec<Poly>> {
    let Some(top) = p.degree_x() else {
        return Ok(Vec::new());
    };
    let mut coeffs = vec![Poly::zero(); top as usize + 1];
    let mut rest = p.clone();
    while let Some(d) = rest.degree_x() {
        let b = family_basis(id, d);
        let lead = b
            .coeff_x(d)
            .as_scalar()
            .filter(|c| !c.is_zero() && b.degree_x() == Some(d))
            .ok_or(Error::DegreeDeficiency { family: id.as_str(), n: d as usize })?;
        let c = rest.coeff_x(d).div_scalar(&lead)?;
        rest = rest - &c * &b;
        coeffs[d as usize] = c;
    }
    Ok(coeffs)
}

/// `sum_k c_k b_k`.
pub fn from_basis(coeffs: &[Poly], id: FamilyId) -> Poly {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * &family_basis(id, k as u32))
        .sum()
}

/// `s -> -s`.
pub fn negate_s(p: &Poly) -> Poly {
    p.subs_s_poly(&-Poly::s())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConnectionId {
    Eq3_4,
    Eq3_5,
    Eq4_10,
    Eq4_11,
    Eq5_11,
    Eq5_12,
    Eq5_20,
    Eq5_23,
    Eq5_28,
    Eq5_29,
    Eq6_4,
    Eq6_5,
    Eq6_6,
    Eq6_7,
}

impl ConnectionId {
    pub const ALL: [ConnectionId; 14] = [
        ConnectionId::Eq3_4,
        ConnectionId::Eq3_5,
        ConnectionId::Eq4_10,
        ConnectionId::Eq4_11,
        ConnectionId::Eq5_11,
        ConnectionId::Eq5_12,
        ConnectionId::Eq5_20,
        ConnectionId::Eq5_23,
        ConnectionId::Eq5_28,
        ConnectionId::Eq5_29,
        ConnectionId::Eq6_4,
        ConnectionId::Eq6_5,
        ConnectionId::Eq6_6,
        ConnectionId::Eq6_7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConnectionId::Eq3_4 => "eq_3_4",
            ConnectionId::Eq3_5 => "eq_3_5",
            ConnectionId::Eq4_10 => "eq_4_10",
            ConnectionId::Eq4_11 => "eq_4_11",
            ConnectionId::Eq5_11 => "eq_5_11",
            ConnectionId::Eq5_12 => "eq_5_12",
            ConnectionId::Eq5_20 => "eq_5_20",
            ConnectionId::Eq5_23 => "eq_5_23",
            ConnectionId::Eq5_28 => "eq_5_28",
            ConnectionId::Eq5_29 => "eq_5_29",
            ConnectionId::Eq6_4 => "eq_6_4",
            ConnectionId::Eq6_5 => "eq_6_5",
            ConnectionId::Eq6_6 => "eq_6_6",
            ConnectionId::Eq6_7 => "eq_6_7",
        }
    }
}

impl fmt::Display for ConnectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConnectionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConnectionId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionVerdict {
    pub id: ConnectionId,
    pub n: u32,
    pub lhs: Poly,
    pub rhs: Poly,
    /// `lhs - rhs`; zero exactly when the identity holds.
    pub residual: Poly,
}

impl ConnectionVerdict {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

fn int(n: BigInt) -> Scalar {
    Scalar::from_bigint(n)
}

fn ballot(n: i64, k: i64) -> Scalar {
    int(binomial(n, k) - binomial(n, k - 1))
}

fn q_ballot(n: i64, k: i64) -> Scalar {
    q_binomial(n, k) - q_binomial(n, k - 1)
}

fn sign(k: u32) -> Scalar {
    Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })
}

/// `sum_{k <= n/2} w(k) s^k p(n - 2k)`.
fn half_sum(n: u32, w: impl Fn(u32) -> Scalar, s_power: bool, p: impl Fn(u32) -> Poly) -> Poly {
    (0..=n / 2)
        .map(|k| {
            let t = p(n - 2 * k).scale(&w(k));
            if s_power {
                t.shift(0, k)
            } else {
                t
            }
        })
        .sum()
}

/// Both sides of the named identity at index `n`, with `s` symbolic.
pub fn connection_sides(id: ConnectionId, n: u32) -> (Poly, Poly) {
    let ni = n as i64;
    let fam = |f: FamilyId| move |m: u32| family_poly(f, m);
    let fib_neg = |m: u32| negate_s(&family_poly(FamilyId::Fibonacci, m + 1));
    let luc_neg = |m: u32| negate_s(&family_poly(FamilyId::LucasStar, m));
    let xn = Poly::x_pow(n);
    match id {
        ConnectionId::Eq3_4 => (half_sum(n, |k| ballot(ni, k as i64), true, fib_neg), xn),
        ConnectionId::Eq3_5 => (half_sum(n, |k| int(binomial(ni, k as i64)), true, luc_neg), xn),
        ConnectionId::Eq4_10 => {
            let lhs = half_sum(n, |k| ballot(ni, k as i64), false, fam(FamilyId::ChebyshevU));
            (lhs.scale(&Scalar::ratio(1, 2).pow(ni)), xn)
        }
        ConnectionId::Eq4_11 => {
            let lhs = half_sum(n, |k| int(binomial(ni, k as i64)), false, fam(FamilyId::ChebyshevTStar));
            (lhs.scale(&Scalar::from_int(2).pow(1 - ni)), xn)
        }
        ConnectionId::Eq5_11 => (
            half_sum(n, |k| q_binomial(ni, k as i64), true, luc_neg),
            family_poly(FamilyId::QHermite, n),
        ),
        ConnectionId::Eq5_12 => (
            half_sum(n, |k| q_ballot(ni, k as i64), true, fib_neg),
            family_poly(FamilyId::QHermite, n),
        ),
        ConnectionId::Eq5_20 => (
            half_sum(n, |k| q_binomial(ni, k as i64), true, |m| negate_s(&family_poly(FamilyId::QLucas, m))),
            xn,
        ),
        ConnectionId::Eq5_23 => (
            half_sum(n, |k| q_ballot(ni, k as i64), true, |m| {
                negate_s(&family_poly(FamilyId::QFibonacci, m + 1))
            }),
            xn,
        ),
        ConnectionId::Eq5_28 => (
            luc_neg(n),
            half_sum(
                n,
                |k| q_triangular(k as i64) * q_lucas_weight(n, k) * sign(k),
                true,
                fam(FamilyId::QHermite),
            ),
        ),
        ConnectionId::Eq5_29 => (
            fib_neg(n),
            half_sum(
                n,
                |k| q_binomial(ni - k as i64, k as i64) * q_triangular(k as i64 + 1) * sign(k),
                true,
                fam(FamilyId::QHermite),
            ),
        ),
        ConnectionId::Eq6_4 => (
            half_sum(n, |k| q_ballot(ni, k as i64), false, fam(FamilyId::ChebyshevU)),
            family_poly(FamilyId::ContQHermite, n),
        ),
        ConnectionId::Eq6_5 => (
            family_poly(FamilyId::ChebyshevU, n),
            half_sum(
                n,
                |k| q_binomial(ni - k as i64, k as i64) * q_triangular(k as i64 + 1) * sign(k),
                false,
                fam(FamilyId::ContQHermite),
            ),
        ),
        ConnectionId::Eq6_6 => {
            // two-sided sum; T_{-m} is folded to T_m
            let rhs = (0..=n)
                .map(|k| {
                    let idx = (ni - 2 * k as i64).unsigned_abs() as u32;
                    family_poly(FamilyId::ChebyshevT, idx).scale(&q_binomial(ni, k as i64))
                })
                .sum();
            (family_poly(FamilyId::ContQHermite, n), rhs)
        }
        ConnectionId::Eq6_7 => {
            let rhs = half_sum(
                n,
                |k| q_triangular(k as i64) * q_lucas_weight(n, k) * sign(k),
                false,
                fam(FamilyId::ContQHermite),
            );
            (family_poly(FamilyId::ChebyshevTStar, n), rhs.scale(&Scalar::ratio(1, 2)))
        }
    }
}

pub fn connection_check(id: ConnectionId, n: u32) -> ConnectionVerdict {
    let (lhs, rhs) = connection_sides(id, n);
    let residual = &lhs - &rhs;
    ConnectionVerdict { id, n, lhs, rhs, residual }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairId {
    /// Fibonacci-type coefficients and their ballot-number inverse.
    Pair3_6,
    /// Lucas-type coefficients and the binomial inverse.
    Pair3_8,
    /// Gaussian binomial weights and the q-Lucas inverse.
    Pair5_21,
    /// q-ballot weights and the q-Fibonacci inverse.
    Pair5_24,
}

impl PairId {
    pub const ALL: [PairId; 4] = [PairId::Pair3_6, PairId::Pair3_8, PairId::Pair5_21, PairId::Pair5_24];

    pub fn as_str(self) -> &'static str {
        match self {
            PairId::Pair3_6 => "pair_3_6",
            PairId::Pair3_8 => "pair_3_8",
            PairId::Pair5_21 => "pair_5_21",
            PairId::Pair5_24 => "pair_5_24",
        }
    }

    /// Forward weight `w_f(n, k)`, without the factor `s^k`.
    fn forward(self, n: u32, k: u32) -> Scalar {
        let (ni, ki) = (n as i64, k as i64);
        match self {
            PairId::Pair3_6 => int(binomial(ni - ki, ki)),
            PairId::Pair3_8 => int(lucas_weight(n, k)),
            PairId::Pair5_21 => q_binomial(ni, ki),
            PairId::Pair5_24 => q_ballot(ni, ki),
        }
    }

    /// Backward weight `w_b(n, k)`, without the factor `(-s)^k`.
    fn backward(self, n: u32, k: u32) -> Scalar {
        let (ni, ki) = (n as i64, k as i64);
        match self {
            PairId::Pair3_6 => ballot(ni, ki),
            PairId::Pair3_8 => int(binomial(ni, ki)),
            PairId::Pair5_21 => q_triangular(ki) * q_lucas_weight(n, k),
            PairId::Pair5_24 => q_binomial(ni - ki, ki) * q_triangular(ki + 1),
        }
    }
}

impl fmt::Display for PairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PairId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// `b(n) = sum_k w_f(n,k) s^k a(n-2k)` (forward) or
/// `a(n) = sum_k w_b(n,k) (-s)^k b(n-2k)` (backward).
pub fn inverse_pair_apply(id: PairId, s: &Scalar, seq: &[Scalar], direction: Direction) -> Result<Vec<Scalar>> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let step = match direction {
        Direction::Forward => s.clone(),
        Direction::Backward => -s,
    };
    Ok((0..seq.len() as u32)
        .map(|n| {
            (0..=n / 2)
                .map(|k| {
                    let w = match direction {
                        Direction::Forward => id.forward(n, k),
                        Direction::Backward => id.backward(n, k),
                    };
                    w * step.pow(k as i64) * &seq[(n - 2 * k) as usize]
                })
                .sum()
        })
        .collect())
}
