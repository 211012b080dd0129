//! Linear operators on polynomials: `D`, `D_q`, `eps_q`, their compositions and
//! powers, substitution of an operator into a polynomial, the Gaussian carrier for
//! the classical Rodrigues formula, and the Askey-Wilson operator on the
//! Chebyshev basis.

mod cheb;
mod gauss;

pub use cheb::{aw_delta, aw_raising_chain, aw_raising_chain_with, cheb_basis_convert, ChebBasis, ChebPoly};
pub use gauss::{gauss_derivative_power, gauss_rodrigues, CarrierSign, GaussPair};

use crate::qcore::{q_int, Poly, Scalar};

/// `D_q x^n = [n] x^(n-1)`, acting on `x` only.
pub fn d_q(p: &Poly) -> Poly {
    Poly::from_terms(
        p.terms()
            .filter(|(m, _)| m.0 > 0)
            .map(|(m, c)| ((m.0 - 1, m.1), c * &q_int(m.0))),
    )
}

/// `p(x) -> p(qx)`.
pub fn eps_q(p: &Poly) -> Poly {
    p.scale_x(&Scalar::q())
}

/// Symbolic operator expression, evaluated by its action on polynomials.
#[derive(Debug, Clone, PartialEq)]
pub enum OpSpec {
    MulX,
    Mul2X,
    /// Ordinary derivative in `x`.
    D,
    Dq,
    Eps,
    /// Multiplication by a fixed polynomial (scalars, `s`, `y`, ...).
    Mul(Poly),
    Sum(Vec<OpSpec>),
    /// Composition; the rightmost factor acts first.
    Product(Vec<OpSpec>),
    Pow(Box<OpSpec>, u32),
}

impl OpSpec {
    pub fn scalar(c: Scalar) -> OpSpec {
        OpSpec::Mul(Poly::constant(c))
    }

    /// `x + c * op`
    pub fn x_plus(c: Poly, op: OpSpec) -> OpSpec {
        OpSpec::Sum(vec![OpSpec::MulX, OpSpec::Product(vec![OpSpec::Mul(c), op])])
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        match self {
            OpSpec::MulX => p.shift(1, 0),
            OpSpec::Mul2X => p.shift(1, 0).scale(&Scalar::from_int(2)),
            OpSpec::D => p.derivative_x(),
            OpSpec::Dq => d_q(p),
            OpSpec::Eps => eps_q(p),
            OpSpec::Mul(m) => m * p,
            OpSpec::Sum(ops) => ops.iter().map(|o| o.apply(p)).sum(),
            OpSpec::Product(ops) => ops.iter().rev().fold(p.clone(), |acc, o| o.apply(&acc)),
            OpSpec::Pow(op, n) => op_power_apply(op, *n, p),
        }
    }
}

/// `op^n (target)`.
pub fn op_power_apply(op: &OpSpec, n: u32, target: &Poly) -> Poly {
    (0..n).fold(target.clone(), |acc, _| op.apply(&acc))
}

/// `p(op) 1`: every `x^a s^b` of `p` becomes `s^b op^a 1`.
pub fn op_substitute(p: &Poly, op: &OpSpec) -> Poly {
    let top = p.degree_x().unwrap_or(0);
    let mut powers = Vec::with_capacity(top as usize + 1);
    powers.push(Poly::one());
    for a in 1..=top as usize {
        let next = op.apply(&powers[a - 1]);
        powers.push(next);
    }
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        out = out + powers[m.0 as usize].shift(0, m.1).scale(c);
    }
    out
}

/// `x + (1-q) s D_q`.
pub fn q_hermite_raising() -> OpSpec {
    OpSpec::x_plus(Poly::s().scale(&(Scalar::one() - Scalar::q())), OpSpec::Dq)
}

/// `h_n = (x + (1-q) s D_q)^n 1`, the umbral inverse of the q-Hermite family.
pub fn h_poly(n: u32) -> Poly {
    op_power_apply(&q_hermite_raising(), n, &Poly::one())
}

/// The physicists' Hermite polynomial `H_n(2x, 2)` in terms of the bivariate family.
pub fn physicists_hermite(n: u32) -> Poly {
    crate::families::family_poly(crate::families::FamilyId::HermiteClassical, n)
        .scale_x(&Scalar::from_int(2))
        .subs_s(&Scalar::from_int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_poly, FamilyId};
    use crate::qcore::{parse_poly, q_binomial};

    fn p(t: &str) -> Poly {
        parse_poly(t).unwrap()
    }

    #[test]
    fn d_q_and_eps_basics() {
        assert_eq!(d_q(&p("x^3")), p("(1+q+q^2)*x^2"));
        assert_eq!(d_q(&p("7*s")), Poly::zero());
        assert_eq!(eps_q(&p("x^2 + 1")), p("q^2*x^2 + 1"));
    }

    #[test]
    fn d_q_lowers_rogers_szego() {
        for n in 1..=8 {
            let lhs = d_q(&family_poly(FamilyId::RogersSzego, n));
            let rhs = family_poly(FamilyId::RogersSzego, n - 1).scale(&q_int(n));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn operator_powers() {
        let minus = OpSpec::x_plus(p("-s"), OpSpec::D);
        assert_eq!(op_power_apply(&minus, 3, &Poly::one()), p("x^3 - 3*s*x"));
        let qplus = OpSpec::x_plus(p("(1-q)*s"), OpSpec::Dq);
        assert_eq!(op_power_apply(&qplus, 2, &Poly::one()), p("x^2 + (1-q)*s"));
        // ((x + y) eps)^n 1 is the product (y + x)(y + qx)...(y + q^(n-1) x)
        let op = OpSpec::Product(vec![OpSpec::Mul(p("x + s")), OpSpec::Eps]);
        let mut prod = Poly::one();
        for j in 0..4 {
            prod = prod * p(&format!("s + q^{j}*x"));
        }
        assert_eq!(op_power_apply(&op, 4, &Poly::one()), prod);
    }

    #[test]
    fn substitution_examples() {
        let h3 = family_poly(FamilyId::HermiteClassical, 3);
        assert_eq!(op_substitute(&h3, &OpSpec::x_plus(Poly::s(), OpSpec::D)), p("x^3"));
        let half = OpSpec::x_plus(p("1/2"), OpSpec::D);
        assert_eq!(op_substitute(&physicists_hermite(2), &half), p("4*x^2"));
    }

    #[test]
    fn product_rule_on_monomials() {
        for a in 0..5u32 {
            for b in 0..5u32 {
                let f = Poly::x_pow(a) + Poly::from_int(1);
                let g = Poly::x_pow(b) - p("q*x");
                let lhs = d_q(&(&f * &g));
                let rhs = &g * &d_q(&f) + &eps_q(&f) * &d_q(&g);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn noncommuting_binomial() {
        // (x + eps)^n = sum [n,k] x^k eps^(n-k), checked on x^m
        let sum = OpSpec::Sum(vec![OpSpec::MulX, OpSpec::Eps]);
        for n in 0..=6u32 {
            for m in 0..3u32 {
                let t = Poly::x_pow(m);
                let lhs = op_power_apply(&sum, n, &t);
                let rhs: Poly = (0..=n)
                    .map(|k| {
                        op_power_apply(&OpSpec::Eps, n - k, &t)
                            .shift(k, 0)
                            .scale(&q_binomial(n as i64, k as i64))
                    })
                    .sum();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
