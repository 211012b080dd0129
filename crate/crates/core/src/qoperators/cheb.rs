//! Polynomials in a Chebyshev basis and the Askey-Wilson divided difference.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::families::{family_poly, FamilyId};
use crate::qcore::{q_int, Poly, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChebBasis {
    T,
    U,
    Monomial,
}

impl FromStr for ChebBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "T" | "t" => Ok(ChebBasis::T),
            "U" | "u" => Ok(ChebBasis::U),
            "monomial" | "x" => Ok(ChebBasis::Monomial),
            _ => Err(Error::UnknownId(s.to_string())),
        }
    }
}

impl ChebBasis {
    fn element(self, n: u32) -> Poly {
        match self {
            ChebBasis::T => family_poly(FamilyId::ChebyshevT, n),
            ChebBasis::U => family_poly(FamilyId::ChebyshevU, n),
            ChebBasis::Monomial => Poly::x_pow(n),
        }
    }
}

/// `sum_n c_n B_n(x)` for the basis `B` named by the tag.
#[derive(Clone, PartialEq, Eq)]
pub struct ChebPoly {
    basis: ChebBasis,
    coeffs: BTreeMap<u32, Scalar>,
}

impl fmt::Debug for ChebPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.basis {
            ChebBasis::T => "T",
            ChebBasis::U => "U",
            ChebBasis::Monomial => "x^",
        };
        let parts: Vec<String> = self.coeffs.iter().map(|(n, c)| format!("({c}){name}{n}")).collect();
        write!(f, "ChebPoly[{}]", parts.join(" + "))
    }
}

impl ChebPoly {
    pub fn zero(basis: ChebBasis) -> ChebPoly {
        ChebPoly { basis, coeffs: BTreeMap::new() }
    }

    pub fn single(basis: ChebBasis, n: u32, c: Scalar) -> ChebPoly {
        let mut p = ChebPoly::zero(basis);
        p.add(n, &c);
        p
    }

    pub fn basis(&self) -> ChebBasis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, n: u32) -> Scalar {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&mut self, n: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(n).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn scale(&self, c: &Scalar) -> ChebPoly {
        let mut out = ChebPoly::zero(self.basis);
        for (n, a) in &self.coeffs {
            out.add(*n, &(a * c));
        }
        out
    }

    pub fn plus(&self, other: &ChebPoly) -> ChebPoly {
        let other = cheb_basis_convert(other, self.basis);
        let mut out = self.clone();
        for (n, c) in &other.coeffs {
            out.add(*n, c);
        }
        out
    }

    /// Expand into an ordinary polynomial in `x`.
    pub fn to_poly(&self) -> Poly {
        self.coeffs.iter().map(|(n, c)| self.basis.element(*n).scale(c)).sum()
    }

    /// Express a polynomial in `x` (no `s`) in the given basis.
    pub fn from_poly(p: &Poly, basis: ChebBasis) -> ChebPoly {
        let mut rest = p.clone();
        let mut out = ChebPoly::zero(basis);
        while let Some(d) = rest.degree_x() {
            let e = basis.element(d);
            let lead = rest.coeff(d, 0) / e.coeff(d, 0);
            rest = rest - e.scale(&lead);
            out.add(d, &lead);
        }
        out
    }

    /// Multiplication by `2x`, done inside the T or U basis.
    pub fn mul_2x(&self) -> ChebPoly {
        let mut out = ChebPoly::zero(self.basis);
        match self.basis {
            // 2x T_n = T_{n+1} + T_{|n-1|}
            ChebBasis::T => {
                for (n, c) in &self.coeffs {
                    out.add(n + 1, c);
                    out.add(n.abs_diff(1), c);
                }
            }
            // 2x U_n = U_{n+1} + U_{n-1}, with U_{-1} = 0
            ChebBasis::U => {
                for (n, c) in &self.coeffs {
                    out.add(n + 1, c);
                    if *n > 0 {
                        out.add(n - 1, c);
                    }
                }
            }
            ChebBasis::Monomial => {
                let two = Scalar::from_int(2);
                for (n, c) in &self.coeffs {
                    out.add(n + 1, &(c * &two));
                }
            }
        }
        out
    }
}

fn u_to_t(p: &ChebPoly) -> ChebPoly {
    // U_n = 2(T_n + T_{n-2} + ...), with T_0 counted once
    let mut out = ChebPoly::zero(ChebBasis::T);
    let two = Scalar::from_int(2);
    for (n, c) in &p.coeffs {
        let mut j = *n as i64;
        while j >= 0 {
            let w = if j == 0 { c.clone() } else { c * &two };
            out.add(j as u32, &w);
            j -= 2;
        }
    }
    out
}

fn t_to_u(p: &ChebPoly) -> ChebPoly {
    // T_0 = U_0, T_1 = U_1 / 2, T_n = (U_n - U_{n-2}) / 2
    let mut out = ChebPoly::zero(ChebBasis::U);
    let half = Scalar::ratio(1, 2);
    for (n, c) in &p.coeffs {
        match n {
            0 => out.add(0, c),
            1 => out.add(1, &(c * &half)),
            _ => {
                let h = c * &half;
                out.add(*n, &h);
                out.add(n - 2, &-h);
            }
        }
    }
    out
}

/// Exact change of basis.
pub fn cheb_basis_convert(p: &ChebPoly, to: ChebBasis) -> ChebPoly {
    match (p.basis, to) {
        (a, b) if a == b => p.clone(),
        (ChebBasis::U, ChebBasis::T) => u_to_t(p),
        (ChebBasis::T, ChebBasis::U) => t_to_u(p),
        (ChebBasis::Monomial, b) => ChebPoly::from_poly(&p.to_poly(), b),
        (_, ChebBasis::Monomial) => {
            let mut out = ChebPoly::zero(ChebBasis::Monomial);
            for (m, c) in p.to_poly().terms() {
                out.add(m.0, c);
            }
            out
        }
        _ => unreachable!("all basis pairs are covered"),
    }
}

/// Askey-Wilson operator on the T basis: `T_n -> [n] v^-(n-1) U_{n-1}`, returned in the T basis.
pub fn aw_delta(p: &ChebPoly) -> ChebPoly {
    let t = cheb_basis_convert(p, ChebBasis::T);
    let mut u = ChebPoly::zero(ChebBasis::U);
    for (n, c) in &t.coeffs {
        if *n == 0 {
            continue;
        }
        u.add(n - 1, &(c * &q_int(*n) * Scalar::v_pow(-(*n as i64 - 1))));
    }
    u_to_t(&u)
}

/// `(2x - (1-q)/2 v^(e_{n-1}) Delta) ... (2x - (1-q)/2 v^(e_0) Delta) 1`, where the
/// factor producing degree `m + 1` from degree `m` carries `v^(exponent(m))`.
pub fn aw_raising_chain_with(n: u32, exponent: impl Fn(u32) -> i64) -> ChebPoly {
    let half_one_minus_q = (Scalar::one() - Scalar::q()) * Scalar::ratio(1, 2);
    let mut p = ChebPoly::single(ChebBasis::T, 0, Scalar::one());
    for m in 0..n {
        let lowered = aw_delta(&p).scale(&(&half_one_minus_q * &Scalar::v_pow(exponent(m))));
        p = p.mul_2x().plus(&lowered.scale(&Scalar::from_int(-1)));
    }
    p
}

/// The raising chain with exponents `m - 1` (so the outermost factor carries
/// `v^(n-2)`); the innermost factor acts on a constant, where `Delta` vanishes.
pub fn aw_raising_chain(n: u32) -> ChebPoly {
    aw_raising_chain_with(n, |m| m as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::parse_poly;

    fn t(n: u32) -> ChebPoly {
        ChebPoly::single(ChebBasis::T, n, Scalar::one())
    }

    #[test]
    fn conversions() {
        let u2 = ChebPoly::single(ChebBasis::U, 2, Scalar::one());
        let mut expect = ChebPoly::single(ChebBasis::T, 2, Scalar::from_int(2));
        expect.add(0, &Scalar::one());
        assert_eq!(cheb_basis_convert(&u2, ChebBasis::T), expect);
        assert_eq!(t(2).to_poly(), parse_poly("2*x^2 - 1").unwrap());
        let u1 = ChebPoly::single(ChebBasis::U, 1, Scalar::one());
        assert_eq!(cheb_basis_convert(&u1, ChebBasis::T), ChebPoly::single(ChebBasis::T, 1, Scalar::from_int(2)));
        let x2 = ChebPoly::from_poly(&parse_poly("x^2").unwrap(), ChebBasis::T);
        assert_eq!(x2.coeff(0), Scalar::ratio(1, 2));
        assert_eq!(x2.coeff(2), Scalar::ratio(1, 2));
    }

    #[test]
    fn round_trips() {
        for n in 0..10 {
            let u = ChebPoly::single(ChebBasis::U, n, Scalar::q() + Scalar::one());
            let back = cheb_basis_convert(&cheb_basis_convert(&u, ChebBasis::T), ChebBasis::U);
            assert_eq!(back, u);
            let m = cheb_basis_convert(&u, ChebBasis::Monomial);
            assert_eq!(cheb_basis_convert(&m, ChebBasis::U), u);
            assert_eq!(m.to_poly(), u.to_poly());
        }
    }

    #[test]
    fn mul_2x_matches_polynomial_product() {
        for basis in [ChebBasis::T, ChebBasis::U] {
            for n in 0..6 {
                let p = ChebPoly::single(basis, n, Scalar::one());
                assert_eq!(p.mul_2x().to_poly(), p.to_poly().shift(1, 0).scale(&Scalar::from_int(2)));
            }
        }
    }

    #[test]
    fn delta_small_cases() {
        assert!(aw_delta(&t(0)).is_zero());
        assert_eq!(aw_delta(&t(1)), t(0));
        let expect = ChebPoly::single(
            ChebBasis::T,
            1,
            Scalar::from_int(2) * (Scalar::one() + Scalar::q()) * Scalar::v_pow(-1),
        );
        assert_eq!(aw_delta(&t(2)), expect);
    }

    #[test]
    fn chain_small_cases() {
        assert_eq!(aw_raising_chain(0), t(0));
        assert_eq!(aw_raising_chain(1), ChebPoly::single(ChebBasis::T, 1, Scalar::from_int(2)));
        assert_eq!(aw_raising_chain(2).to_poly(), parse_poly("4*x^2 + q - 1").unwrap());
    }
}
