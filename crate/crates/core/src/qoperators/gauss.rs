//! Polynomials times a Gaussian `exp(-+x^2 / 2s)`, closed under `D`.

use crate::qcore::{Poly, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierSign {
    /// `exp(-x^2 / 2s)`
    Minus,
    /// `exp(+x^2 / 2s)`
    Plus,
}

/// `(g / s^d) * exp(-+x^2 / 2s)` with `g` a polynomial in `x` and `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussPair {
    pub g: Poly,
    pub s_den: u32,
    pub sign: CarrierSign,
}

impl GaussPair {
    pub fn unit(sign: CarrierSign) -> GaussPair {
        GaussPair { g: Poly::one(), s_den: 0, sign }
    }

    /// `D(g e) = (s g' -+ x g) / s^(d+1) e`, with common powers of `s` cancelled.
    pub fn d(&self) -> GaussPair {
        let xg = self.g.shift(1, 0);
        let sg = self.g.derivative_x().shift(0, 1);
        let g = match self.sign {
            CarrierSign::Minus => sg - xg,
            CarrierSign::Plus => sg + xg,
        };
        GaussPair { g, s_den: self.s_den + 1, sign: self.sign }.reduced()
    }

    pub fn mul(&self, p: &Poly) -> GaussPair {
        GaussPair { g: &self.g * p, ..self.clone() }.reduced()
    }

    fn reduced(mut self) -> GaussPair {
        let common = self.g.terms().map(|(m, _)| m.1).min().unwrap_or(0).min(self.s_den);
        if common > 0 {
            self.g = Poly::from_terms(self.g.terms().map(|(m, c)| ((m.0, m.1 - common), c.clone())));
            self.s_den -= common;
        }
        self
    }

    /// The polynomial factor when the `s` denominator has cancelled.
    pub fn polynomial(&self) -> Option<&Poly> {
        (self.s_den == 0).then_some(&self.g)
    }

    /// Prefactor `g / s^d` evaluated at a nonzero scalar `s`.
    pub fn prefactor_at(&self, s: &Scalar) -> Poly {
        self.g.subs_s(s).scale(&s.pow(-(self.s_den as i64)))
    }
}

/// `(-sD)^n` applied to the unit carrier of the given sign.
pub fn gauss_rodrigues(n: u32, sign: CarrierSign) -> GaussPair {
    let minus_s = Poly::term(Scalar::from_int(-1), 0, 1);
    (0..n).fold(GaussPair::unit(sign), |acc, _| acc.d().mul(&minus_s))
}

/// `D^n` applied to the unit carrier.
pub fn gauss_derivative_power(n: u32, sign: CarrierSign) -> GaussPair {
    (0..n).fold(GaussPair::unit(sign), |acc, _| acc.d())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::parse_poly;

    #[test]
    fn small_rodrigues_values() {
        assert_eq!(gauss_rodrigues(0, CarrierSign::Minus).polynomial(), Some(&Poly::one()));
        assert_eq!(gauss_rodrigues(2, CarrierSign::Minus).polynomial(), Some(&parse_poly("x^2 - s").unwrap()));
        assert_eq!(
            gauss_rodrigues(3, CarrierSign::Minus).polynomial(),
            Some(&parse_poly("x^3 - 3*s*x").unwrap())
        );
    }

    #[test]
    fn plus_carrier_gives_reflected_hermite() {
        // (-sD)^2 e^{+} = (x^2 + s) e^{+}
        assert_eq!(gauss_rodrigues(2, CarrierSign::Plus).polynomial(), Some(&parse_poly("x^2 + s").unwrap()));
    }

    #[test]
    fn derivative_keeps_denominator() {
        let d1 = gauss_derivative_power(1, CarrierSign::Minus);
        assert_eq!(d1.s_den, 1);
        assert_eq!(d1.g, parse_poly("-x").unwrap());
    }
}
