//! Sparse polynomials in `x` and `s` with [`Scalar`] coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed};

use super::scalar::{render_v_power, Scalar};
use super::QError;

/// Exponent pair `(x, s)`.
pub type Monomial = (u32, u32);

/// Polynomial `sum c_{a,b} x^a s^b`. No zero coefficient is ever stored.
///
/// The second variable `s` also plays the role of `y` for the Rogers-Szego family and
/// of a symbolic parameter in moment formulas.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Scalar::from_int(n))
    }

    /// `c * x^a * s^b`
    pub fn term(c: Scalar, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Poly::term(Scalar::one(), 1, 0)
    }

    pub fn s() -> Self {
        Poly::term(Scalar::one(), 0, 1)
    }

    pub fn x_pow(a: u32) -> Self {
        Poly::term(Scalar::one(), a, 0)
    }

    pub fn s_pow(b: u32) -> Self {
        Poly::term(Scalar::one(), 0, b)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Scalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Degree in `x`, `None` for the zero polynomial.
    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    pub fn degree_s(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    /// Coefficient of `x^a` as a polynomial in `s`.
    pub fn coeff_x(&self, a: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0 == a)
                .map(|(m, c)| ((0, m.1), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the top power of `x`.
    pub fn leading_coeff_x(&self) -> Poly {
        match self.degree_x() {
            Some(d) => self.coeff_x(d),
            None => Poly::zero(),
        }
    }

    /// The constant Scalar value, if the polynomial involves neither `x` nor `s`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// True when `x` does not occur.
    pub fn is_free_of_x(&self) -> bool {
        self.terms.keys().all(|m| m.0 == 0)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// Divide by a nonzero scalar.
    pub fn div_scalar(&self, c: &Scalar) -> Result<Poly, QError> {
        Ok(self.scale(&c.inv()?))
    }

    /// Multiply by `x^a s^b`.
    pub fn shift(&self, a: u32, b: u32) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, v)| ((m.0 + a, m.1 + b), v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn map_scalars<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn try_map_scalars<F: Fn(&Scalar) -> Result<Scalar, QError>>(&self, f: F) -> Result<Poly, QError> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }

    /// Substitute `s -> value`.
    pub fn subs_s(&self, value: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term((m.0, 0), &(c * &value.pow(m.1 as i64)));
        }
        out
    }

    /// Substitute `s -> value` where the value may itself be a polynomial.
    pub fn subs_s_poly(&self, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out = &out + &value.pow(m.1).shift(m.0, 0).scale(c);
        }
        out
    }

    /// Substitute `x -> factor * x`.
    pub fn scale_x(&self, factor: &Scalar) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, c * &factor.pow(m.0 as i64))))
    }

    /// Substitute `x -> value` where the value may itself be a polynomial in `x` and `s`.
    pub fn subs_x_poly(&self, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out = &out + &value.pow(m.0).shift(0, m.1).scale(c);
        }
        out
    }

    /// Exact evaluation at Scalar values of `x` and `s`.
    pub fn eval(&self, x: &Scalar, s: &Scalar) -> Scalar {
        self.terms
            .iter()
            .map(|(m, c)| c * &x.pow(m.0 as i64) * s.pow(m.1 as i64))
            .sum()
    }

    /// Floating point evaluation with `v = sqrt(q)`.
    pub fn eval_f64(&self, x: f64, s: f64, v: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.eval_f64(v) * x.powi(m.0 as i32) * s.powi(m.1 as i32))
            .sum()
    }

    pub fn eval_complex(&self, x: Complex64, s: Complex64, v: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| x.powi(m.0 as i32) * s.powi(m.1 as i32) * c.eval_f64(v))
            .sum()
    }

    /// Ordinary derivative in `x`.
    pub fn derivative_x(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.0 > 0)
                .map(|(m, c)| ((m.0 - 1, m.1), c * &Scalar::from_int(m.0 as i64))),
        )
    }

    /// True when every coefficient lies in `Q(q)` (no odd powers of `v`).
    pub fn is_even_in_v(&self) -> bool {
        self.terms.values().all(Scalar::is_even_in_v)
    }

    /// Terms in display order: descending `x`, then descending `s`.
    fn display_order(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0 .0.cmp(&a.0 .0).then(b.0 .1.cmp(&a.0 .1)));
        v
    }

    /// Canonical text: every Laurent coefficient is expanded into monomials
    /// `c*q^k*s^b*x^a`, joined by ` + ` / ` - `.
    pub fn render(&self) -> String {
        render_with(self, Style::Text)
    }

    pub fn render_latex(&self) -> String {
        render_with(self, Style::Latex)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Style {
    Text,
    Latex,
}

fn var_power(name: &str, e: u32, style: Style) -> Option<String> {
    match (e, style) {
        (0, _) => None,
        (1, _) => Some(name.to_string()),
        (e, Style::Text) => Some(format!("{name}^{e}")),
        (e, Style::Latex) => Some(format!("{name}^{{{e}}}")),
    }
}

fn latex_v_power(e: i64) -> Option<String> {
    match e {
        0 => None,
        2 => Some("q".into()),
        1 => Some("q^{1/2}".into()),
        e if e % 2 == 0 => Some(format!("q^{{{}}}", e / 2)),
        e => Some(format!("q^{{{e}/2}}")),
    }
}

fn render_with(p: &Poly, style: Style) -> String {
    let sep = if style == Style::Text { "*" } else { " " };
    // (negative, body) pairs
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for ((a, b), c) in p.display_order() {
        let vars: Vec<String> = [var_power("s", *b, style), var_power("x", *a, style)]
            .into_iter()
            .flatten()
            .collect();
        match c.laurent_terms() {
            Some(mut lt) => {
                lt.sort_by(|u, w| w.0.cmp(&u.0));
                for (e, k) in lt {
                    let mut factors = Vec::new();
                    let vp = match style {
                        Style::Text => render_v_power(e),
                        Style::Latex => latex_v_power(e),
                    };
                    if !k.abs().is_one() || (vp.is_none() && vars.is_empty()) {
                        factors.push(k.abs().to_string());
                    }
                    factors.extend(vp);
                    factors.extend(vars.iter().cloned());
                    pieces.push((k.is_negative(), factors.join(sep)));
                }
            }
            None => {
                let coeff = match style {
                    Style::Text => format!("({c})"),
                    Style::Latex => format!("\\left({c}\\right)"),
                };
                let mut factors = vec![coeff];
                factors.extend(vars.iter().cloned());
                pieces.push((false, factors.join(sep)));
            }
        }
    }
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in pieces.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term((ma.0 + mb.0, ma.1 + mb.1), &(ca * cb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_expands_coefficients() {
        // 4x^2 + q - 1
        let p = Poly::term(Scalar::from_int(4), 2, 0) + Poly::constant(Scalar::q() - Scalar::one());
        assert_eq!(p.render(), "4*x^2 + q - 1");
        let h3 = Poly::x_pow(3) - Poly::term(Scalar::from_int(3), 1, 1);
        assert_eq!(h3.render(), "x^3 - 3*s*x");
        assert_eq!(h3.render_latex(), "x^{3} - 3 s x");
        assert_eq!(Poly::zero().render(), "0");
        assert_eq!((-Poly::one()).render(), "-1");
    }

    #[test]
    fn no_zero_terms_after_cancellation() {
        let p = Poly::x() + Poly::s();
        let d = &p - &Poly::x();
        assert_eq!(d, Poly::s());
        assert_eq!(d.num_terms(), 1);
    }

    #[test]
    fn substitution() {
        let p = Poly::x_pow(2) - Poly::s();
        assert_eq!(p.subs_s(&Scalar::from_int(-1)), Poly::x_pow(2) + Poly::one());
        assert_eq!(p.scale_x(&Scalar::from_int(2)), Poly::term(Scalar::from_int(4), 2, 0) - Poly::s());
        assert_eq!(p.eval(&Scalar::from_int(3), &Scalar::from_int(2)), Scalar::from_int(7));
    }
}
