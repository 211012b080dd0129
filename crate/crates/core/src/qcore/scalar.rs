//! Elements of the rational function field `Q(v)` with `v^2 = q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::QError;

/// A canonical fraction `v^shift * num(v) / den(v)`.
///
/// Canonical form: `num(0) != 0` and `den(0) != 0` (all powers of `v` live in `shift`),
/// `num` and `den` are coprime over `Q[v]`, their integer contents are coprime, and
/// `den` has a positive leading coefficient. Zero is `0 / 1` with `shift = 0`.
/// Two scalars are equal iff their canonical forms are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i64,
    num: IntPoly,
    den: IntPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { shift: 0, num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        if n.is_zero() {
            return Scalar::zero();
        }
        Scalar { shift: 0, num: IntPoly::constant(n), den: IntPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Scalar::from_bigint(r.numer().clone()) / Scalar::from_bigint(r.denom().clone())
    }

    /// `p / r`
    pub fn ratio(p: i64, r: i64) -> Self {
        Scalar::from_int(p) / Scalar::from_int(r)
    }

    /// `v = q^(1/2)`
    pub fn v() -> Self {
        Scalar::v_pow(1)
    }

    pub fn q() -> Self {
        Scalar::v_pow(2)
    }

    /// `v^k` for any integer `k`.
    pub fn v_pow(k: i64) -> Self {
        Scalar { shift: k, num: IntPoly::one(), den: IntPoly::one() }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Scalar::v_pow(2 * k)
    }

    /// Polynomial in `q` from its coefficient list `c[0] + c[1] q + ...`.
    pub fn from_q_coeffs(coeffs: &[BigInt]) -> Self {
        Scalar::from_laurent(0, IntPoly::new(coeffs.to_vec()).stretch(2))
    }

    /// `v^shift * poly(v)`; always canonical after stripping low zeros.
    pub fn from_laurent(shift: i64, poly: IntPoly) -> Self {
        match poly.valuation() {
            None => Scalar::zero(),
            Some(k) => Scalar { shift: shift + k as i64, num: poly.shift_down(k), den: IntPoly::one() },
        }
    }

    /// Canonicalize `v^shift * num / den`.
    pub fn normalize(shift: i64, num: IntPoly, den: IntPoly) -> Result<Self, QError> {
        let Some(dk) = den.valuation() else {
            return Err(QError::DivisionByZero);
        };
        let Some(nk) = num.valuation() else {
            return Ok(Scalar::zero());
        };
        let shift = shift + nk as i64 - dk as i64;
        let mut num = num.shift_down(nk);
        let mut den = den.shift_down(dk);
        if !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        Ok(Scalar { shift, num, den })
    }

    pub fn numerator(&self) -> (i64, &IntPoly) {
        (self.shift, &self.num)
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial in `v`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value is a rational constant (no `v` dependence).
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.shift == 0 && self.num.is_constant() && self.den.is_constant())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        Some(BigRational::new(self.num.coeffs()[0].clone(), self.den.coeffs()[0].clone()))
    }

    /// Laurent terms `(v-exponent, coefficient)` in ascending order, when the denominator is 1.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        if !self.is_laurent() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.shift + i as i64, c.clone()))
                .collect(),
        )
    }

    /// True when every `v` power in numerator and denominator is even, i.e. the value lies in `Q(q)`.
    pub fn is_even_in_v(&self) -> bool {
        self.shift % 2 == 0
            && [&self.num, &self.den]
                .iter()
                .all(|p| p.coeffs().iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero()))
    }

    pub fn inv(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let (num, den) = if self.num.leading().is_some_and(|l| l.is_negative()) {
            (self.den.neg(), self.num.neg())
        } else {
            (self.den.clone(), self.num.clone())
        };
        // num and den stay coprime with coprime contents, so no further work is needed
        Ok(Scalar { shift: -self.shift, num, den })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitute a rational value for `v`.
    pub fn eval_v(&self, v: &BigRational) -> Result<BigRational, QError> {
        let d = self.den.eval_rational(v);
        if d.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let n = self.num.eval_rational(v);
        let p = rational_pow(v, self.shift)?;
        Ok(n * p / d)
    }

    /// Substitute a rational value for `q`; requires only even powers of `v`.
    pub fn eval_q(&self, q: &BigRational) -> Result<BigRational, QError> {
        if !self.is_even_in_v() {
            return Err(QError::OddPowerOfV);
        }
        let half = |p: &IntPoly| {
            IntPoly::new(p.coeffs().iter().step_by(2).cloned().collect())
        };
        let d = half(&self.den).eval_rational(q);
        if d.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let n = half(&self.num).eval_rational(q);
        Ok(n * rational_pow(q, self.shift / 2)? / d)
    }

    /// Evaluate at a floating-point value of `v`.
    pub fn eval_f64(&self, v: f64) -> f64 {
        self.num.eval_f64(v) * v.powi(self.shift as i32) / self.den.eval_f64(v)
    }

    pub fn eval_complex(&self, v: Complex64) -> Complex64 {
        self.num.eval_complex(v) * v.powi(self.shift as i32) / self.den.eval_complex(v)
    }

    /// Substitute `v -> v^k` (for instance `k = 2` sends `q` to `q^2`).
    pub fn stretch_v(&self, k: usize) -> Self {
        Scalar {
            shift: self.shift * k as i64,
            num: self.num.stretch(k),
            den: self.den.stretch(k),
        }
    }

    /// Nonzero terms as `(v-exponent, coefficient)`, highest exponent first.
    fn render_terms(poly: &IntPoly, shift: i64) -> Vec<(i64, BigInt)> {
        let mut terms: Vec<(i64, BigInt)> = poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (shift + i as i64, c.clone()))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        terms
    }
}

fn rational_pow(v: &BigRational, k: i64) -> Result<BigRational, QError> {
    if k >= 0 {
        Ok(num_traits::pow(v.clone(), k as usize))
    } else if v.is_zero() {
        Err(QError::DivisionByZero)
    } else {
        Ok(num_traits::pow(v.recip(), (-k) as usize))
    }
}

/// Render `c * v^e` in the textual grammar (`q^k` for even `e`, `v^e` for odd).
pub(crate) fn render_v_power(e: i64) -> Option<String> {
    match e {
        0 => None,
        2 => Some("q".into()),
        1 => Some("v".into()),
        e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
        e => Some(format!("v^{e}")),
    }
}

/// Compact sum of monomials, highest power first, no spaces.
pub(crate) fn render_laurent(terms: &[(i64, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        match render_v_power(*e) {
            None => out.push_str(&mag.to_string()),
            Some(p) if mag.is_one() => out.push_str(&p),
            Some(p) => {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(&p);
            }
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = render_laurent(&Scalar::render_terms(&self.num, self.shift));
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = render_laurent(&Scalar::render_terms(&self.den, 0));
        let wrap = |s: String, simple: bool| if simple { s } else { format!("({s})") };
        let num_simple = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        let den_simple = self.den.is_constant();
        write!(f, "{}/{}", wrap(num, num_simple), wrap(den, den_simple))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order on canonical forms, so scalars can key ordered maps.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shift
            .cmp(&other.shift)
            .then_with(|| self.num.coeffs().cmp(other.num.coeffs()))
            .then_with(|| self.den.coeffs().cmp(other.den.coeffs()))
    }
}

fn add_laurent(a: &Scalar, b: &Scalar) -> Scalar {
    let lo = a.shift.min(b.shift);
    let pa = a.num.shift_up((a.shift - lo) as usize);
    let pb = b.num.shift_up((b.shift - lo) as usize);
    Scalar::from_laurent(lo, pa.add(&pb))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return add_laurent(self, rhs);
        }
        let lo = self.shift.min(rhs.shift);
        let a = self.num.shift_up((self.shift - lo) as usize);
        let b = rhs.num.shift_up((rhs.shift - lo) as usize);
        if self.den == rhs.den {
            return Scalar::normalize(lo, a.add(&b), self.den.clone()).expect("nonzero denominator");
        }
        let num = a.mul(&rhs.den).add(&b.mul(&self.den));
        Scalar::normalize(lo, num, self.den.mul(&rhs.den)).expect("nonzero denominator")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let shift = self.shift + rhs.shift;
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { shift, num: self.num.mul(&rhs.num), den: IntPoly::one() };
        }
        Scalar::normalize(shift, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("nonzero denominator")
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a fallible version.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

/// Canonicalize a raw fraction `v^num_shift * num(v) / den(v)`.
pub fn scalar_normalize(num_shift: i64, num: IntPoly, den: IntPoly) -> Result<Scalar, QError> {
    Scalar::normalize(num_shift, num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let s = scalar_normalize(0, p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(s, Scalar::from_laurent(0, p(&[1, 1])));
        assert_eq!(s.to_string(), "v+1");
    }

    #[test]
    fn normalize_zero_numerator() {
        let s = scalar_normalize(0, IntPoly::zero(), p(&[0, 0, 0, 1])).unwrap();
        assert!(s.is_zero());
        assert_eq!(s, Scalar::zero());
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn normalize_integer_ratio() {
        // (2q - 2) / (q - 1)
        let s = scalar_normalize(0, p(&[-2, 0, 2]), p(&[-1, 0, 1])).unwrap();
        assert_eq!(s, Scalar::from_int(2));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(scalar_normalize(0, p(&[1]), IntPoly::zero()), Err(QError::DivisionByZero));
    }

    #[test]
    fn normalize_moves_v_factors_into_shift() {
        // v^3 / (v^2 + v^3)  ==  v / (1 + v)
        let s = scalar_normalize(0, p(&[0, 0, 0, 1]), p(&[0, 0, 1, 1])).unwrap();
        assert_eq!(s, Scalar::v() / (Scalar::one() + Scalar::v()));
    }

    #[test]
    fn denominator_sign_is_positive() {
        let s = Scalar::one() / Scalar::from_laurent(0, p(&[1, -1]));
        assert!(s.denominator().leading().unwrap().is_positive());
        assert_eq!(s.to_string(), "-1/(v-1)");
    }

    #[test]
    fn rendering_uses_q_for_even_powers() {
        let s = Scalar::q_pow(4) + Scalar::q_pow(3) + Scalar::from_int(2) * Scalar::q_pow(2)
            + Scalar::q() + Scalar::one();
        assert_eq!(s.to_string(), "q^4+q^3+2*q^2+q+1");
        assert_eq!(Scalar::v_pow(-3).to_string(), "v^-3");
        assert_eq!(Scalar::q_pow(-1).to_string(), "q^-1");
        assert_eq!((Scalar::one() - Scalar::q()).checked_div(&Scalar::from_int(4)).unwrap().to_string(), "(-q+1)/4");
    }

    #[test]
    fn evaluation() {
        let s = (Scalar::one() + Scalar::q()) / Scalar::v();
        let r = s.eval_v(&BigRational::from_integer(2.into())).unwrap();
        assert_eq!(r, BigRational::new(5.into(), 2.into()));
        assert!(s.eval_q(&BigRational::from_integer(2.into())).is_err());
        assert!((s.eval_f64(2.0) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn stretch_maps_q_to_q_squared() {
        let s = Scalar::one() + Scalar::q();
        assert_eq!(s.stretch_v(2), Scalar::one() + Scalar::q_pow(2));
    }
}
