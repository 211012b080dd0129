//! Polynomial families built from three-term recurrences, with independent
//! closed-form coefficient rules and a few special evaluations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qcore::{binomial, q_binomial, q_int, q_triangular, Poly, Scalar};
use crate::qoperators::d_q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    HermiteClassical,
    HermiteBivarTilde,
    QHermite,
    ContQHermite,
    PhysicistsQHermite,
    Fibonacci,
    Lucas,
    LucasStar,
    ChebyshevT,
    ChebyshevTStar,
    ChebyshevU,
    RogersSzego,
    QFibonacci,
    QLucas,
    Monomials,
}

impl FamilyId {
    /// The fourteen named families (everything except `monomials`).
    pub const ALL: [FamilyId; 14] = [
        FamilyId::HermiteClassical,
        FamilyId::HermiteBivarTilde,
        FamilyId::QHermite,
        FamilyId::ContQHermite,
        FamilyId::PhysicistsQHermite,
        FamilyId::Fibonacci,
        FamilyId::Lucas,
        FamilyId::LucasStar,
        FamilyId::ChebyshevT,
        FamilyId::ChebyshevTStar,
        FamilyId::ChebyshevU,
        FamilyId::RogersSzego,
        FamilyId::QFibonacci,
        FamilyId::QLucas,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::HermiteClassical => "hermite_classical",
            FamilyId::HermiteBivarTilde => "hermite_bivar_tilde",
            FamilyId::QHermite => "q_hermite",
            FamilyId::ContQHermite => "cont_q_hermite",
            FamilyId::PhysicistsQHermite => "physicists_q_hermite",
            FamilyId::Fibonacci => "fibonacci",
            FamilyId::Lucas => "lucas",
            FamilyId::LucasStar => "lucas_star",
            FamilyId::ChebyshevT => "chebyshev_t",
            FamilyId::ChebyshevTStar => "chebyshev_t_star",
            FamilyId::ChebyshevU => "chebyshev_u",
            FamilyId::RogersSzego => "rogers_szego",
            FamilyId::QFibonacci => "q_fibonacci",
            FamilyId::QLucas => "q_lucas",
            FamilyId::Monomials => "monomials",
        }
    }

    /// Index shift between the family's own numbering and its degree:
    /// the degree-`n` member is `p_{n + offset}`.
    pub fn degree_offset(self) -> u32 {
        match self {
            FamilyId::Fibonacci | FamilyId::QFibonacci => 1,
            _ => 0,
        }
    }

    /// Whether the family involves `q`.
    pub fn is_q_family(self) -> bool {
        matches!(
            self,
            FamilyId::HermiteBivarTilde
                | FamilyId::QHermite
                | FamilyId::ContQHermite
                | FamilyId::PhysicistsQHermite
                | FamilyId::RogersSzego
                | FamilyId::QFibonacci
                | FamilyId::QLucas
        )
    }

    /// Whether the second variable `s` occurs.
    pub fn uses_s(self) -> bool {
        !matches!(
            self,
            FamilyId::ContQHermite
                | FamilyId::PhysicistsQHermite
                | FamilyId::ChebyshevT
                | FamilyId::ChebyshevTStar
                | FamilyId::ChebyshevU
                | FamilyId::Monomials
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .iter()
            .chain(std::iter::once(&FamilyId::Monomials))
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

type ScalarRule = fn(u32) -> Scalar;
type PolyRule = fn(u32) -> Poly;

/// `p_n = A(n) x p_{n-1} + B(n) p_{n-1} + E(n) D_q p_{n-1} + C(n) p_{n-2}` for `n >= 2`.
///
/// `B`, `C` and `E` are polynomials so that the symbolic parameter `s` (and, for
/// Rogers-Szego, the factor `x y`) can enter.
pub struct FamilySpec {
    pub id: FamilyId,
    pub a: ScalarRule,
    pub b: Option<PolyRule>,
    pub c: PolyRule,
    pub e: Option<PolyRule>,
    pub p0: Poly,
    pub p1: Poly,
    /// Replaces `p_0` in the output without feeding into the recurrence.
    pub zero_override: Option<Poly>,
    pub closed_form: Option<PolyRule>,
}

fn s_times(c: Scalar) -> Poly {
    Poly::term(c, 0, 1)
}

fn one(_: u32) -> Scalar {
    Scalar::one()
}

fn two(_: u32) -> Scalar {
    Scalar::from_int(2)
}

fn sign(k: u32) -> Scalar {
    Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })
}

fn big(n: BigInt) -> Scalar {
    Scalar::from_bigint(n)
}

/// `(2k-1)!!`, equal to 1 for `k = 0`.
pub fn double_factorial_odd(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1))
}

/// Coefficient `h(n, k, q)` of `s^k x^(n-2k)` in the bivariate q-Hermite polynomial,
/// as an alternating sum of ballot-type differences of Gaussian binomials.
pub fn q_hermite_coeff(n: u32, k: u32) -> Scalar {
    let (n, k) = (n as i64, k as i64);
    (0..=k)
        .map(|j| {
            let ballot = q_binomial(n, j) - q_binomial(n, j - 1);
            ballot * big(binomial(n - k - j, k - j)) * sign((k - j) as u32)
        })
        .sum()
}

/// `[n]/[n-k] [n-k choose k]` in its polynomial form `q^k [n-k, k] + [n-k-1, k-1]`.
pub fn q_lucas_weight(n: u32, k: u32) -> Scalar {
    let (n, k) = (n as i64, k as i64);
    Scalar::q_pow(k) * q_binomial(n - k, k) + q_binomial(n - k - 1, k - 1)
}

/// `n/(n-k) C(n-k, k)` as an integer `C(n-k, k) + C(n-k-1, k-1)`.
pub fn lucas_weight(n: u32, k: u32) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    binomial(n - k, k) + binomial(n - k - 1, k - 1)
}

fn symmetric_sum(n: u32, coeff: impl Fn(u32) -> Scalar) -> Poly {
    let mut p = Poly::zero();
    for k in 0..=n / 2 {
        p.add_term((n - 2 * k, k), &coeff(k));
    }
    p
}

fn closed_hermite_classical(n: u32) -> Poly {
    symmetric_sum(n, |k| {
        sign(k) * big(binomial(n as i64, 2 * k as i64) * double_factorial_odd(k))
    })
}

fn closed_hermite_tilde(n: u32) -> Poly {
    let one_minus_q = Scalar::one() - Scalar::q();
    symmetric_sum(n, |k| q_hermite_coeff(n, k) / one_minus_q.pow(k as i64))
}

fn closed_q_hermite(n: u32) -> Poly {
    symmetric_sum(n, |k| q_hermite_coeff(n, k))
}

fn closed_cont_q_hermite(n: u32) -> Poly {
    symmetric_sum(n, |k| q_hermite_coeff(n, k) * Scalar::from_int(2).pow((n - 2 * k) as i64))
        .subs_s(&Scalar::one())
}

fn closed_physicists(n: u32) -> Poly {
    let one_minus_q = Scalar::one() - Scalar::q();
    symmetric_sum(n, |k| {
        q_hermite_coeff(n, k).stretch_v(2) * Scalar::from_int(2).pow((n - 2 * k) as i64)
            / one_minus_q.pow(k as i64)
    })
    .subs_s(&Scalar::one())
}

fn closed_fibonacci(n: u32) -> Poly {
    if n == 0 {
        return Poly::zero();
    }
    let m = n - 1;
    symmetric_sum(m, |k| big(binomial((m - k) as i64, k as i64)))
}

fn closed_lucas(n: u32) -> Poly {
    if n == 0 {
        return Poly::from_int(2);
    }
    symmetric_sum(n, |k| big(lucas_weight(n, k)))
}

fn closed_lucas_star(n: u32) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    closed_lucas(n)
}

fn closed_chebyshev_t(n: u32) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    symmetric_sum(n, |k| {
        Scalar::ratio(1, 2) * big(lucas_weight(n, k)) * sign(k) * Scalar::from_int(2).pow((n - 2 * k) as i64)
    })
    .subs_s(&Scalar::one())
}

fn closed_chebyshev_t_star(n: u32) -> Poly {
    if n == 0 {
        return Poly::constant(Scalar::ratio(1, 2));
    }
    closed_chebyshev_t(n)
}

fn closed_chebyshev_u(n: u32) -> Poly {
    symmetric_sum(n, |k| {
        big(binomial((n - k) as i64, k as i64)) * sign(k) * Scalar::from_int(2).pow((n - 2 * k) as i64)
    })
    .subs_s(&Scalar::one())
}

fn closed_rogers_szego(n: u32) -> Poly {
    let mut p = Poly::zero();
    for k in 0..=n {
        p.add_term((k, n - k), &q_binomial(n as i64, k as i64));
    }
    p
}

fn closed_q_fibonacci(n: u32) -> Poly {
    if n == 0 {
        return Poly::zero();
    }
    let m = n - 1;
    symmetric_sum(m, |k| q_binomial((m - k) as i64, k as i64) * q_triangular(k as i64 + 1))
}

fn closed_q_lucas(n: u32) -> Poly {
    symmetric_sum(n, |k| q_triangular(k as i64) * q_lucas_weight(n, k))
}

fn closed_monomials(n: u32) -> Poly {
    Poly::x_pow(n)
}

impl FamilySpec {
    pub fn get(id: FamilyId) -> FamilySpec {
        let x = Poly::x();
        let zero_c: PolyRule = |_| Poly::zero();
        let base = |a: ScalarRule, c: PolyRule, p0: Poly, p1: Poly, closed: PolyRule| FamilySpec {
            id,
            a,
            b: None,
            c,
            e: None,
            p0,
            p1,
            zero_override: None,
            closed_form: Some(closed),
        };
        match id {
            FamilyId::HermiteClassical => base(
                one,
                |n| s_times(Scalar::from_int(-(n as i64 - 1))),
                Poly::one(),
                x,
                closed_hermite_classical,
            ),
            FamilyId::HermiteBivarTilde => base(
                one,
                |n| s_times(-q_int(n - 1)),
                Poly::one(),
                x,
                closed_hermite_tilde,
            ),
            FamilyId::QHermite => base(
                one,
                |n| s_times(Scalar::q_pow(n as i64 - 1) - Scalar::one()),
                Poly::one(),
                x,
                closed_q_hermite,
            ),
            FamilyId::ContQHermite => base(
                two,
                |n| Poly::constant(Scalar::q_pow(n as i64 - 1) - Scalar::one()),
                Poly::one(),
                Poly::from_int(2).shift(1, 0),
                closed_cont_q_hermite,
            ),
            FamilyId::PhysicistsQHermite => base(
                two,
                |n| Poly::constant(-q_int(2 * (n - 1))),
                Poly::one(),
                Poly::from_int(2).shift(1, 0),
                closed_physicists,
            ),
            FamilyId::Fibonacci => base(one, |_| Poly::s(), Poly::zero(), Poly::one(), closed_fibonacci),
            FamilyId::Lucas => base(one, |_| Poly::s(), Poly::from_int(2), x, closed_lucas),
            FamilyId::LucasStar => FamilySpec {
                zero_override: Some(Poly::one()),
                ..base(one, |_| Poly::s(), Poly::from_int(2), x, closed_lucas_star)
            },
            FamilyId::ChebyshevT => base(
                two,
                |_| Poly::from_int(-1),
                Poly::one(),
                x,
                closed_chebyshev_t,
            ),
            FamilyId::ChebyshevTStar => FamilySpec {
                zero_override: Some(Poly::constant(Scalar::ratio(1, 2))),
                ..base(two, |_| Poly::from_int(-1), Poly::one(), x, closed_chebyshev_t_star)
            },
            FamilyId::ChebyshevU => base(
                two,
                |_| Poly::from_int(-1),
                Poly::one(),
                Poly::from_int(2).shift(1, 0),
                closed_chebyshev_u,
            ),
            FamilyId::RogersSzego => FamilySpec {
                b: Some(|_| Poly::s()),
                ..base(
                    one,
                    |n| Poly::term(Scalar::q_pow(n as i64 - 1) - Scalar::one(), 1, 1),
                    Poly::one(),
                    &x + &Poly::s(),
                    closed_rogers_szego,
                )
            },
            FamilyId::QFibonacci => FamilySpec {
                e: Some(|_| s_times(Scalar::q() - Scalar::one())),
                ..base(one, |_| Poly::s(), Poly::zero(), Poly::one(), closed_q_fibonacci)
            },
            FamilyId::QLucas => FamilySpec {
                e: Some(|_| s_times(Scalar::q() - Scalar::one())),
                zero_override: Some(Poly::one()),
                ..base(one, |_| Poly::s(), Poly::from_int(2), x, closed_q_lucas)
            },
            FamilyId::Monomials => base(one, zero_c, Poly::one(), x, closed_monomials),
        }
    }

    /// One recurrence step producing raw `p_n` from raw `p_{n-1}`, `p_{n-2}`.
    fn step(&self, n: u32, prev: &Poly, prev2: &Poly) -> Poly {
        let mut next = prev.shift(1, 0).scale(&(self.a)(n));
        if let Some(b) = self.b {
            next = next + &b(n) * prev;
        }
        if let Some(e) = self.e {
            next = next + &e(n) * &d_q(prev);
        }
        next + &(self.c)(n) * prev2
    }
}

/// Memo table of raw recurrence sequences, safe for concurrent readers.
#[derive(Default)]
pub struct Families {
    cache: RwLock<HashMap<FamilyId, Vec<Poly>>>,
}

impl Families {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shared instance used by the free functions of this module.
    pub fn global() -> &'static Families {
        static GLOBAL: OnceLock<Families> = OnceLock::new();
        GLOBAL.get_or_init(Families::new)
    }

    /// `p_n` generated by the recurrence.
    pub fn poly(&self, id: FamilyId, n: u32) -> Poly {
        let n_us = n as usize;
        if let Some(p) = self.cache.read().expect("family cache poisoned").get(&id).and_then(|v| v.get(n_us)) {
            return Self::finish(id, n, p);
        }
        let spec = FamilySpec::get(id);
        let mut guard = self.cache.write().expect("family cache poisoned");
        let seq = guard.entry(id).or_insert_with(|| vec![spec.p0.clone(), spec.p1.clone()]);
        while seq.len() <= n_us {
            let m = seq.len();
            let next = spec.step(m as u32, &seq[m - 1], &seq[m - 2]);
            seq.push(next);
        }
        Self::finish(id, n, &seq[n_us])
    }

    fn finish(id: FamilyId, n: u32, raw: &Poly) -> Poly {
        if n == 0 {
            if let Some(p) = FamilySpec::get(id).zero_override {
                return p;
            }
        }
        raw.clone()
    }

    /// Degree-`n` member of the basis (applies the Fibonacci index shift).
    pub fn basis(&self, id: FamilyId, n: u32) -> Poly {
        self.poly(id, n + id.degree_offset())
    }
}

/// `p_n` of the family, by recurrence.
pub fn family_poly(id: FamilyId, n: u32) -> Poly {
    Families::global().poly(id, n)
}

/// Degree-`n` basis element of the family.
pub fn family_basis(id: FamilyId, n: u32) -> Poly {
    Families::global().basis(id, n)
}

/// `p_n` built from the family's coefficient formula alone.
pub fn family_closed_form(id: FamilyId, n: u32) -> Result<Poly> {
    let rule = FamilySpec::get(id).closed_form.ok_or(Error::NoClosedForm(id.as_str()))?;
    Ok(rule(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialValue {
    /// `R_{2n}(1, -1, q)` against `(1-q)(1-q^3)...(1-q^(2n-1))`.
    Gauss(u32),
    /// `R_n(q, 1, q^2)` against `(1+q)(1+q^2)...(1+q^n)`.
    RsQ2(u32),
    /// `R_n(-q, 1, q)` against the product of `(1 - q^j)` over odd `j`.
    RsNegQ(u32),
    /// `H_n(v + 1/v, 1, q^2)` against `(1+q)...(1+q^n) / v^n`.
    QhSpecialQ2(u32),
    /// `H_n(1-q, -q, q)` against the same odd product as `RsNegQ`.
    QhSpecialNegQ(u32),
}

impl FromStr for SpecialValue {
    type Err = Error;
    /// Accepts `name(n)` or `name:n`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::UnknownId(text.to_string());
        let t = text.trim();
        let (name, arg) = if let Some(open) = t.find('(') {
            let close = t.strip_suffix(')').ok_or_else(bad)?;
            (&t[..open], &close[open + 1..])
        } else {
            t.split_once(':').ok_or_else(bad)?
        };
        let n: u32 = arg.trim().parse().map_err(|_| bad())?;
        match name.trim() {
            "gauss" => Ok(SpecialValue::Gauss(n)),
            "rs_q2" => Ok(SpecialValue::RsQ2(n)),
            "rs_negq" => Ok(SpecialValue::RsNegQ(n)),
            "qh_special_q2" => Ok(SpecialValue::QhSpecialQ2(n)),
            "qh_special_negq" => Ok(SpecialValue::QhSpecialNegQ(n)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialValueReport {
    /// Evaluation of the polynomial (sum side).
    pub sum: Scalar,
    /// Closed product side.
    pub product: Scalar,
    pub equal: bool,
}

fn odd_product(n: u32) -> Scalar {
    let top = 2 * ((n + 1) / 2);
    (1..top).step_by(2).map(|j| Scalar::one() - Scalar::q_pow(j as i64)).product()
}

fn plus_product(n: u32) -> Scalar {
    (1..=n).map(|j| Scalar::one() + Scalar::q_pow(j as i64)).product()
}

/// Evaluate both sides of a known special value independently.
pub fn special_value(id: SpecialValue) -> SpecialValueReport {
    let q = Scalar::q();
    let (sum, product) = match id {
        SpecialValue::Gauss(n) => {
            let r = family_poly(FamilyId::RogersSzego, 2 * n);
            let prod = (1..=n).map(|j| Scalar::one() - Scalar::q_pow(2 * j as i64 - 1)).product();
            (r.eval(&Scalar::one(), &Scalar::from_int(-1)), prod)
        }
        SpecialValue::RsQ2(n) => {
            let r = family_poly(FamilyId::RogersSzego, n).map_scalars(|c| c.stretch_v(2));
            (r.eval(&q, &Scalar::one()), plus_product(n))
        }
        SpecialValue::RsNegQ(n) => {
            let r = family_poly(FamilyId::RogersSzego, n);
            (r.eval(&-q, &Scalar::one()), odd_product(n))
        }
        SpecialValue::QhSpecialQ2(n) => {
            let h = family_poly(FamilyId::QHermite, n).map_scalars(|c| c.stretch_v(2));
            let x = Scalar::v() + Scalar::v_pow(-1);
            (h.eval(&x, &Scalar::one()), plus_product(n) * Scalar::v_pow(-(n as i64)))
        }
        SpecialValue::QhSpecialNegQ(n) => {
            let h = family_poly(FamilyId::QHermite, n);
            (h.eval(&(Scalar::one() - q.clone()), &-q), odd_product(n))
        }
    };
    let equal = sum == product;
    SpecialValueReport { sum, product, equal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::parse_poly;

    fn p(text: &str) -> Poly {
        parse_poly(text).unwrap()
    }

    #[test]
    fn printed_first_values() {
        assert_eq!(family_poly(FamilyId::HermiteClassical, 3), p("x^3 - 3*s*x"));
        assert_eq!(family_poly(FamilyId::QHermite, 2), p("x^2 - (1-q)*s"));
        assert_eq!(family_poly(FamilyId::QHermite, 3), p("x^3 - (1-q)*(q+2)*s*x"));
        assert_eq!(
            family_poly(FamilyId::QHermite, 4),
            p("x^4 - (1-q)*(q^2+2*q+3)*s*x^2 + (1-q)^2*(1+q+q^2)*s^2")
        );
        assert_eq!(
            family_poly(FamilyId::ContQHermite, 4),
            p("16*x^4 + 4*(q^3+q^2+q-3)*x^2 + q^4-q^3-q+1")
        );
        assert_eq!(family_poly(FamilyId::QFibonacci, 5), p("x^4 + q*(1+q+q^2)*s*x^2 + q^3*s^2"));
        assert_eq!(family_poly(FamilyId::QFibonacci, 6), p("x^5 + q*(1+q+q^2+q^3)*s*x^3 + q^3*(1+q+q^2)*s^2*x"));
    }

    #[test]
    fn closed_forms_match_recurrence() {
        for id in FamilyId::ALL.iter().copied().chain([FamilyId::Monomials]) {
            for n in 0..=10 {
                assert_eq!(family_poly(id, n), family_closed_form(id, n).unwrap(), "{id} n={n}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(family_closed_form(FamilyId::Fibonacci, 5).unwrap(), p("x^4 + 3*s*x^2 + s^2"));
        assert_eq!(family_closed_form(FamilyId::Lucas, 4).unwrap(), p("x^4 + 4*s*x^2 + 2*s^2"));
    }

    #[test]
    fn overrides_only_touch_index_zero() {
        assert_eq!(family_poly(FamilyId::Lucas, 0), Poly::from_int(2));
        assert_eq!(family_poly(FamilyId::LucasStar, 0), Poly::one());
        assert_eq!(family_poly(FamilyId::LucasStar, 2), family_poly(FamilyId::Lucas, 2));
        assert_eq!(family_poly(FamilyId::ChebyshevTStar, 0), Poly::constant(Scalar::ratio(1, 2)));
        assert_eq!(family_poly(FamilyId::ChebyshevTStar, 3), family_poly(FamilyId::ChebyshevT, 3));
    }

    #[test]
    fn ids_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), id);
        }
        assert!("hermite".parse::<FamilyId>().is_err());
    }

    #[test]
    fn special_value_examples() {
        let r = special_value(SpecialValue::RsNegQ(2));
        assert!(r.equal);
        assert_eq!(r.product, Scalar::one() - Scalar::q());
        let r = special_value(SpecialValue::Gauss(1));
        assert!(r.equal);
        assert_eq!(r.sum, Scalar::one() - Scalar::q());
        let r = special_value(SpecialValue::QhSpecialQ2(2));
        assert!(r.equal);
        assert_eq!(r.sum, (Scalar::one() + Scalar::q()) * (Scalar::one() + Scalar::q_pow(2)) / Scalar::q());
        assert_eq!("rs_q2(3)".parse::<SpecialValue>().unwrap(), SpecialValue::RsQ2(3));
    }

    #[test]
    fn gauss_odd_index_vanishes() {
        for n in 0..6 {
            let r = family_poly(FamilyId::RogersSzego, 2 * n + 1);
            assert!(r.eval(&Scalar::one(), &Scalar::from_int(-1)).is_zero());
        }
    }
}
