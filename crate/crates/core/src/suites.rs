//! Named verification suites: each suite is a fixed list of exact or numeric
//! checks, run independently and reported in check-id order.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::analytic::{
    cheb_t, cheb_u, finite_jacobi_check, integrate_against, jacobi_tail_residual, product_gf_check,
    q_rodrigues_iterated, q_rodrigues_pointwise, quadrature_moment, series_identity_check, w_value, weight_density,
    wrapped_gauss_moment, Measure, NumericConfig, ProductGf, SeriesId,
};
use crate::circle::{inner_product, inner_product_derived, inner_product_expected, lambda_r, LaurentPoly};
use crate::error::{Error, Result};
use crate::families::{family_closed_form, family_poly, special_value, FamilyId, SpecialValue};
use crate::qcore::{
    binomial, parse_poly, q_binomial, q_int, q_shifted_factorial, q_triangular, Poly, QError, Scalar,
};
use crate::qoperators::{
    aw_delta, aw_raising_chain, cheb_basis_convert, d_q, eps_q, gauss_rodrigues, h_poly, op_power_apply,
    op_substitute, physicists_hermite, q_hermite_raising, CarrierSign, ChebBasis, ChebPoly, OpSpec,
};
use crate::transforms::{
    connection_check, connection_sides, from_basis, inverse_pair_apply, negate_s, to_basis, ConnectionId,
    Direction, PairId,
};
use crate::umbral::{closed_moments, coeff_matrix, gram_diagonal, moments, touchard_riordan, umbral_inverse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Classical,
    QBinomial,
    RogersSzego,
    FibLucasCheb,
    QHermiteExact,
    Operators,
    AskeyWilson,
    Circle,
    NumericWeights,
    NumericSeries,
    All,
}

impl SuiteId {
    pub const ALL: [SuiteId; 11] = [
        SuiteId::Classical,
        SuiteId::QBinomial,
        SuiteId::RogersSzego,
        SuiteId::FibLucasCheb,
        SuiteId::QHermiteExact,
        SuiteId::Operators,
        SuiteId::AskeyWilson,
        SuiteId::Circle,
        SuiteId::NumericWeights,
        SuiteId::NumericSeries,
        SuiteId::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Classical => "classical",
            SuiteId::QBinomial => "q_binomial",
            SuiteId::RogersSzego => "rogers_szego",
            SuiteId::FibLucasCheb => "fib_lucas_cheb",
            SuiteId::QHermiteExact => "q_hermite_exact",
            SuiteId::Operators => "operators",
            SuiteId::AskeyWilson => "askey_wilson",
            SuiteId::Circle => "circle",
            SuiteId::NumericWeights => "numeric_weights",
            SuiteId::NumericSeries => "numeric_series",
            SuiteId::All => "all",
        }
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, SuiteId::NumericWeights | SuiteId::NumericSeries)
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL.iter().copied().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// Bounds and tolerances for a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    /// Largest index used by the exact checks.
    pub upto: u32,
    /// Values of `q` used by the numeric checks.
    pub qs: Vec<f64>,
    /// Overrides every numeric check's own tolerance when set.
    pub tol: Option<f64>,
    /// Overrides the product truncation `K` when set.
    pub trunc: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { upto: 10, qs: vec![0.25, 0.5, 0.75], tol: None, trunc: None }
    }
}

impl SuiteConfig {
    fn tol(&self, natural: f64) -> f64 {
        self.tol.unwrap_or(natural)
    }

    fn numeric(&self, q: f64) -> Result<NumericConfig> {
        let cfg = NumericConfig::new(q)?;
        let cfg = match self.trunc {
            Some(k) => cfg.with_truncation(k)?,
            None => cfg,
        };
        match self.tol {
            Some(t) => cfg.with_tol(t.min(cfg.tol)),
            None => Ok(cfg),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub id: &'static str,
    /// Equation the check exercises.
    pub tag: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

type Outcome = std::result::Result<String, String>;

struct Check {
    id: &'static str,
    tag: &'static str,
    suites: &'static [SuiteId],
    run: fn(&SuiteConfig) -> Outcome,
}

/// Ids of the checks a suite runs, in report order.
pub fn suite_check_ids(suite: SuiteId) -> Vec<&'static str> {
    selected(suite).iter().map(|c| c.id).collect()
}

fn selected(suite: SuiteId) -> Vec<&'static Check> {
    let mut out: Vec<&Check> =
        CATALOG.iter().filter(|c| suite == SuiteId::All || c.suites.contains(&suite)).collect();
    out.sort_by_key(|c| c.id);
    out
}

fn run_one(check: &Check, cfg: &SuiteConfig) -> CheckRecord {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (check.run)(cfg)))
        .unwrap_or_else(|_| Err("check panicked".to_string()));
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckRecord { id: check.id, tag: check.tag, pass, detail, elapsed: start.elapsed() }
}

/// Runs every check of `suite` in parallel; `QORTHO_THREADS` caps the worker count.
pub fn run_suite(suite: SuiteId, cfg: &SuiteConfig) -> SuiteReport {
    let checks = selected(suite);
    let run_all = || checks.par_iter().map(|c| run_one(c, cfg)).collect::<Vec<_>>();
    let threads = std::env::var("QORTHO_THREADS").ok().and_then(|t| t.trim().parse::<usize>().ok());
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.filter(|n| *n > 0) {
        builder = builder.num_threads(n);
    }
    let records = match builder.build() {
        Ok(pool) => pool.install(run_all),
        Err(_) => checks.iter().map(|c| run_one(c, cfg)).collect(),
    };
    SuiteReport { suite, records }
}

// ---------------------------------------------------------------------------
// helpers

fn over(ns: impl IntoIterator<Item = u32>, f: impl Fn(u32) -> Result<bool>) -> Outcome {
    let mut first = None;
    let mut last = None;
    for n in ns {
        match f(n) {
            Ok(true) => {
                first.get_or_insert(n);
                last = Some(n);
            }
            Ok(false) => return Err(format!("nonzero residual at n = {n}")),
            Err(e) => return Err(format!("n = {n}: {e}")),
        }
    }
    match (first, last) {
        (Some(a), Some(b)) => Ok(format!("residual 0 for n = {a}..={b}")),
        _ => Ok("no cases in range".to_string()),
    }
}

fn over_pairs(ms: u32, ns: u32, f: impl Fn(u32, u32) -> Result<bool>) -> Outcome {
    for m in 0..=ms {
        for n in 0..=ns {
            match f(m, n) {
                Ok(true) => {}
                Ok(false) => return Err(format!("nonzero residual at (m, n) = ({m}, {n})")),
                Err(e) => return Err(format!("(m, n) = ({m}, {n}): {e}")),
            }
        }
    }
    Ok(format!("residual 0 for m <= {ms}, n <= {ns}"))
}

fn within(values: impl IntoIterator<Item = Result<f64>>, tol: f64) -> Outcome {
    let mut worst = 0f64;
    let mut count = 0;
    for v in values {
        let r = v.map_err(|e| e.to_string())?;
        if !(r <= tol) {
            return Err(format!("residual {r:.3e} exceeds tolerance {tol:.1e}"));
        }
        worst = worst.max(r);
        count += 1;
    }
    Ok(format!("max residual {worst:.3e} over {count} cases (tol {tol:.1e})"))
}

fn per_q(cfg: &SuiteConfig, f: impl Fn(&NumericConfig) -> Vec<Result<f64>>) -> Vec<Result<f64>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        match cfg.numeric(q) {
            Ok(c) => out.extend(f(&c)),
            Err(e) => out.push(Err(e)),
        }
    }
    out
}

fn sign(k: u32) -> Scalar {
    Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })
}

fn big(n: num_bigint::BigInt) -> Scalar {
    Scalar::from_bigint(n)
}

fn at_v_one(p: &Poly) -> std::result::Result<Poly, QError> {
    let one = BigRational::one();
    p.try_map_scalars(|c| c.eval_v(&one).map(|r| Scalar::from_rational(&r)))
}

fn printed(id: FamilyId, list: &[&str]) -> Outcome {
    for (n, text) in list.iter().enumerate() {
        let expected = parse_poly(text).map_err(|e| format!("bad printed value {text}: {e}"))?;
        let got = family_poly(id, n as u32);
        if got.render() != expected.render() {
            return Err(format!("{id}({n}): got {} expected {}", got.render(), expected.render()));
        }
    }
    Ok(format!("{} printed values reproduced", list.len()))
}

fn closed_forms(ids: &[FamilyId], upto: u32) -> Outcome {
    for &id in ids {
        over(0..=upto, |n| Ok(family_poly(id, n) == family_closed_form(id, n)?))
            .map_err(|e| format!("{id}: {e}"))?;
    }
    Ok(format!("recurrence equals closed form for {} families, n <= {upto}", ids.len()))
}

fn moments_closed(ids: &[FamilyId], upto: u32) -> Outcome {
    for &id in ids {
        let lam = moments(id, upto as usize).map_err(|e| e.to_string())?;
        over(0..=upto, |n| Ok(lam.moments[n as usize] == closed_moments(id, n)?))
            .map_err(|e| format!("{id}: {e}"))?;
    }
    Ok(format!("triangular-solve moments equal closed forms for {} families, n <= {upto}", ids.len()))
}

fn connections(ids: &[ConnectionId], upto: u32) -> Outcome {
    for &id in ids {
        over(0..=upto, |n| Ok(connection_check(id, n).holds())).map_err(|e| format!("{id}: {e}"))?;
    }
    Ok(format!("{} identities with zero residual, n <= {upto}", ids.len()))
}

fn specials(ids: impl IntoIterator<Item = SpecialValue>) -> Outcome {
    let mut count = 0;
    for id in ids {
        let r = special_value(id);
        if !r.equal {
            return Err(format!("{id:?}: sum {} differs from product {}", r.sum, r.product));
        }
        count += 1;
    }
    Ok(format!("{count} evaluations equal their products"))
}

/// Deterministic sample polynomials with integer and `q` coefficients.
fn sample_polys(count: usize, degree: u32) -> Vec<Poly> {
    (0..count)
        .map(|i| {
            let mut p = Poly::zero();
            for k in 0..=degree {
                let c = ((7 * k as i64 + 3 * i as i64 + 1) % 11) - 5;
                let e = ((k as i64) + i as i64) % 3;
                p = p + Poly::term(Scalar::from_int(c) * Scalar::q_pow(e), k, 0);
            }
            p
        })
        .collect()
}

fn pair_round_trip(id: PairId, upto: u32) -> Outcome {
    let len = upto as usize + 1;
    for (i, s) in [Scalar::from_int(1), Scalar::from_int(-2), Scalar::ratio(3, 2)].iter().enumerate() {
        let seq: Vec<Scalar> = (0..len)
            .map(|n| if n == 0 { Scalar::one() } else { Scalar::from_int(((5 * n as i64 + 3 * i as i64) % 9) - 4) })
            .collect();
        let fwd = inverse_pair_apply(id, s, &seq, Direction::Forward).map_err(|e| e.to_string())?;
        let back = inverse_pair_apply(id, s, &fwd, Direction::Backward).map_err(|e| e.to_string())?;
        let back_fwd = inverse_pair_apply(id, s, &seq, Direction::Backward).map_err(|e| e.to_string())?;
        let again = inverse_pair_apply(id, s, &back_fwd, Direction::Forward).map_err(|e| e.to_string())?;
        if back != seq || again != seq {
            return Err(format!("round trip failed for s = {s}"));
        }
    }
    Ok(format!("forward and backward maps are mutually inverse, length {len}"))
}

// ---------------------------------------------------------------------------
// classical Hermite

fn hermite_printed(_: &SuiteConfig) -> Outcome {
    printed(
        FamilyId::HermiteClassical,
        &["1", "x", "x^2 - s", "x^3 - 3*s*x", "x^4 - 6*s*x^2 + 3*s^2", "x^5 - 10*s*x^3 + 15*s^2*x"],
    )
}

fn hermite_closed_form(c: &SuiteConfig) -> Outcome {
    closed_forms(&[FamilyId::HermiteClassical], c.upto)
}

fn hermite_substitution(c: &SuiteConfig) -> Outcome {
    let op = OpSpec::x_plus(Poly::s(), OpSpec::D);
    over(0..=c.upto, |n| Ok(op_substitute(&family_poly(FamilyId::HermiteClassical, n), &op) == Poly::x_pow(n)))
}

fn hermite_derivative(c: &SuiteConfig) -> Outcome {
    over(1..=c.upto, |n| {
        let lhs = family_poly(FamilyId::HermiteClassical, n).derivative_x();
        Ok(lhs == family_poly(FamilyId::HermiteClassical, n - 1).scale(&Scalar::from_int(n as i64)))
    })
}

fn hermite_lowering_power(c: &SuiteConfig) -> Outcome {
    let minus = OpSpec::x_plus(-Poly::s(), OpSpec::D);
    let plus = OpSpec::x_plus(Poly::s(), OpSpec::D);
    over(0..=c.upto, |n| {
        let h = family_poly(FamilyId::HermiteClassical, n);
        Ok(op_power_apply(&minus, n, &Poly::one()) == h && op_power_apply(&plus, n, &Poly::one()) == negate_s(&h))
    })
}

fn hermite_umbral(c: &SuiteConfig) -> Outcome {
    let n = c.upto.min(12) as usize;
    let m = coeff_matrix(FamilyId::HermiteClassical, n).map_err(|e| e.to_string())?;
    let inv = umbral_inverse(&m).map_err(|e| e.to_string())?;
    over(0..=n as u32, |k| Ok(inv.row_poly(k as usize) == negate_s(&m.row_poly(k as usize))))?;
    over(0..=n as u32, |k| {
        let k = k as i64;
        let lhs: Poly = (0..=k / 2)
            .map(|j| {
                let w = big(binomial(k, 2 * j) * crate::families::double_factorial_odd(j as u32));
                family_poly(FamilyId::HermiteClassical, (k - 2 * j) as u32).scale(&w).shift(0, j as u32)
            })
            .sum();
        Ok(lhs == Poly::x_pow(k as u32))
    })
}

fn gauss_carrier(c: &SuiteConfig) -> Outcome {
    over(0..=c.upto, |n| {
        let minus = gauss_rodrigues(n, CarrierSign::Minus);
        let plus = gauss_rodrigues(n, CarrierSign::Plus);
        let h = family_poly(FamilyId::HermiteClassical, n);
        let reflected = negate_s(&h).scale(&sign(n));
        Ok(minus.polynomial() == Some(&h) && plus.polynomial() == Some(&reflected))
    })
}

fn physicists_relations(c: &SuiteConfig) -> Outcome {
    let two_x_minus_d = OpSpec::Sum(vec![OpSpec::Mul2X, OpSpec::Product(vec![OpSpec::scalar(Scalar::from_int(-1)), OpSpec::D])]);
    let x_half_d = OpSpec::x_plus(Poly::constant(Scalar::ratio(1, 2)), OpSpec::D);
    over(0..=c.upto, |n| {
        let h = physicists_hermite(n);
        let deriv_ok = n == 0
            || h.derivative_x() == physicists_hermite(n - 1).scale(&Scalar::from_int(2 * n as i64));
        let power_ok = op_power_apply(&two_x_minus_d, n, &Poly::one()) == h;
        let subst_ok = op_substitute(&h, &x_half_d) == Poly::term(Scalar::from_int(2).pow(n as i64), n, 0);
        Ok(deriv_ok && power_ok && subst_ok)
    })
}

fn physicists_limit(c: &SuiteConfig) -> Outcome {
    over(0..=c.upto, |n| Ok(at_v_one(&family_poly(FamilyId::PhysicistsQHermite, n))? == physicists_hermite(n)))
}

fn hermite_moments(c: &SuiteConfig) -> Outcome {
    moments_closed(&[FamilyId::HermiteClassical], c.upto)
}

fn hermite_gram(c: &SuiteConfig) -> Outcome {
    let r = gram_diagonal(FamilyId::HermiteClassical, c.upto as usize).map_err(|e| e.to_string())?;
    if let Some((m, n)) = r.first_nonzero_off_diagonal {
        return Err(format!("Lambda(H_{m} H_{n}) is nonzero"));
    }
    over(0..=c.upto, |n| {
        let fact: num_bigint::BigInt = (1..=n as i64).map(num_bigint::BigInt::from).product();
        Ok(r.diagonal[n as usize] == Poly::term(big(fact), 0, n))
    })
}

fn umbral_involution(c: &SuiteConfig) -> Outcome {
    let n = c.upto.min(12) as usize;
    for id in FamilyId::ALL {
        let m = coeff_matrix(id, n).map_err(|e| e.to_string())?;
        let back = umbral_inverse(&umbral_inverse(&m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if back.rows() != m.rows() {
            return Err(format!("{id}: double inverse differs"));
        }
    }
    Ok(format!("involution holds for all families, N = {n}"))
}

// ---------------------------------------------------------------------------
// q-binomial calculus

fn product_rule(c: &SuiteConfig) -> Outcome {
    let polys = sample_polys(6, c.upto.min(8));
    for f in &polys {
        for g in &polys {
            let lhs = d_q(&(f * g));
            let rhs = g * &d_q(f) + &eps_q(f) * &d_q(g);
            if lhs != rhs {
                return Err("product rule fails on a sample pair".into());
            }
        }
    }
    Ok(format!("{} sample pairs", polys.len() * polys.len()))
}

fn eps_identity(c: &SuiteConfig) -> Outcome {
    let polys = sample_polys(8, c.upto);
    let q_minus_1 = Scalar::q() - Scalar::one();
    for p in &polys {
        if eps_q(p) != p + &d_q(p).shift(1, 0).scale(&q_minus_1) {
            return Err("eps_q p differs from p + (q-1) x D_q p".into());
        }
    }
    Ok(format!("{} sample polynomials", polys.len()))
}

fn noncommuting_binomial(c: &SuiteConfig) -> Outcome {
    for k in 0..=12 {
        let p = Poly::x_pow(k);
        if eps_q(&p.shift(1, 0)) != eps_q(&p).shift(1, 0).scale(&Scalar::q()) {
            return Err(format!("eps x != q x eps on x^{k}"));
        }
    }
    let b = OpSpec::Product(vec![OpSpec::Mul(Poly::s()), OpSpec::Eps]);
    let sum = OpSpec::Sum(vec![OpSpec::MulX, b.clone()]);
    let plain = OpSpec::Sum(vec![OpSpec::MulX, OpSpec::Eps]);
    over(0..=c.upto.min(8), |n| {
        for j in 0..=3 {
            let p = Poly::x_pow(j);
            let expand = |bop: &OpSpec| -> Poly {
                (0..=n)
                    .map(|k| {
                        let t = op_power_apply(bop, n - k, &p).shift(k, 0);
                        t.scale(&q_binomial(n as i64, k as i64))
                    })
                    .sum()
            };
            if op_power_apply(&sum, n, &p) != expand(&b) || op_power_apply(&plain, n, &p) != expand(&OpSpec::Eps) {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

fn binomial_product(c: &SuiteConfig) -> Outcome {
    over(0..=c.upto, |n| {
        let lhs = (0..n as i64).fold(Poly::one(), |acc, i| &acc * &(Poly::s() + Poly::term(Scalar::q_pow(i), 1, 0)));
        let rhs: Poly = (0..=n)
            .map(|k| Poly::term(q_triangular(k as i64) * q_binomial(n as i64, k as i64), k, n - k))
            .sum();
        Ok(lhs == rhs)
    })
}

fn series(id: SeriesId) -> Outcome {
    let v = series_identity_check(id, 8);
    match v.first_failure {
        None => Ok("coefficients agree through order 8".into()),
        Some(k) => Err(format!("coefficient {k} differs")),
    }
}

fn series_rs(_: &SuiteConfig) -> Outcome {
    series(SeriesId::Eq2_16)
}
fn series_reciprocal(_: &SuiteConfig) -> Outcome {
    series(SeriesId::Eq2_17)
}
fn series_big_e(_: &SuiteConfig) -> Outcome {
    series(SeriesId::Eq2_25)
}
fn series_small_e(_: &SuiteConfig) -> Outcome {
    series(SeriesId::Eq2_26)
}

fn jacobi_finite(_: &SuiteConfig) -> Outcome {
    over(1..=4, |n| Ok(finite_jacobi_check(n)))
}

fn q_pascal(c: &SuiteConfig) -> Outcome {
    over(1..=c.upto, |n| {
        let n = n as i64;
        Ok((0..=n).all(|k| {
            let a = q_binomial(n, k);
            a == q_binomial(n - 1, k - 1) + Scalar::q_pow(k) * q_binomial(n - 1, k)
                && a == Scalar::q_pow(n - k) * q_binomial(n - 1, k - 1) + q_binomial(n - 1, k)
                && a == q_binomial(n, n - k)
        }))
    })
}

// ---------------------------------------------------------------------------
// Rogers-Szego

fn rs_operator(c: &SuiteConfig) -> Outcome {
    let op = OpSpec::Sum(vec![OpSpec::MulX, OpSpec::Product(vec![OpSpec::Mul(Poly::s()), OpSpec::Eps])]);
    over(0..=c.upto, |n| {
        let r = family_poly(FamilyId::RogersSzego, n);
        Ok(op_power_apply(&op, n, &Poly::one()) == r && family_closed_form(FamilyId::RogersSzego, n)? == r)
    })
}

fn rs_lowering(c: &SuiteConfig) -> Outcome {
    over(1..=c.upto, |n| {
        Ok(d_q(&family_poly(FamilyId::RogersSzego, n)) == family_poly(FamilyId::RogersSzego, n - 1).scale(&q_int(n)))
    })
}

fn rs_recurrence(c: &SuiteConfig) -> Outcome {
    over(2..=c.upto, |n| {
        let r = |k: u32| family_closed_form(FamilyId::RogersSzego, k);
        let x_plus_y = Poly::x() + Poly::s();
        let rhs = &x_plus_y * &r(n - 1)? + r(n - 2)?.shift(1, 1).scale(&(Scalar::q_pow(n as i64 - 1) - Scalar::one()));
        Ok(r(n)? == rhs)
    })
}

fn rs_umbral(c: &SuiteConfig) -> Outcome {
    let n = c.upto.min(12) as usize;
    let inv = umbral_inverse(&coeff_matrix(FamilyId::RogersSzego, n).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    over(0..=n as u32, |m| {
        let mi = m as i64;
        let expect: Poly = (0..=m)
            .map(|k| {
                let d = m - k;
                Poly::term(sign(d) * q_triangular(d as i64) * q_binomial(mi, k as i64), k, d)
            })
            .sum();
        let product = (0..mi).fold(Poly::one(), |acc, i| &acc * &(Poly::x() - Poly::term(Scalar::q_pow(i), 0, 1)));
        let row = inv.row_poly(m as usize);
        Ok(row == expect && row == product)
    })
}

fn rs_moments(c: &SuiteConfig) -> Outcome {
    moments_closed(&[FamilyId::RogersSzego], c.upto)
}

fn rs_special(c: &SuiteConfig) -> Outcome {
    let n = c.upto;
    specials((0..=n).flat_map(|k| [SpecialValue::Gauss(k), SpecialValue::RsQ2(k), SpecialValue::RsNegQ(k)]))?;
    over(0..=n, |k| {
        Ok(family_poly(FamilyId::RogersSzego, 2 * k + 1).eval(&Scalar::one(), &Scalar::from_int(-1)).is_zero())
    })
    .map(|d| format!("special values and odd Gauss zeros: {d}"))
}

// ---------------------------------------------------------------------------
// Fibonacci, Lucas, Chebyshev

fn flc_closed_forms(c: &SuiteConfig) -> Outcome {
    closed_forms(
        &[
            FamilyId::Fibonacci,
            FamilyId::Lucas,
            FamilyId::LucasStar,
            FamilyId::ChebyshevT,
            FamilyId::ChebyshevTStar,
            FamilyId::ChebyshevU,
        ],
        c.upto,
    )
}

fn lucas_from_fibonacci(c: &SuiteConfig) -> Outcome {
    over(1..=c.upto, |n| {
        let f = |k: u32| family_poly(FamilyId::Fibonacci, k);
        Ok(family_poly(FamilyId::Lucas, n) == f(n + 1) + f(n - 1).shift(0, 1))
    })
}

fn chebyshev_from_lucas(c: &SuiteConfig) -> Outcome {
    let two = Scalar::from_int(2);
    let minus_one = Scalar::from_int(-1);
    over(0..=c.upto, |n| {
        let l = family_poly(FamilyId::Lucas, n).scale_x(&two).subs_s(&minus_one).scale(&Scalar::ratio(1, 2));
        let f = family_poly(FamilyId::Fibonacci, n + 1).scale_x(&two).subs_s(&minus_one);
        Ok(l == family_poly(FamilyId::ChebyshevT, n) && f == family_poly(FamilyId::ChebyshevU, n))
    })
}

fn pell(c: &SuiteConfig) -> Outcome {
    let x2m1 = Poly::x_pow(2) - Poly::one();
    over(1..=c.upto, |n| {
        let t = family_poly(FamilyId::ChebyshevT, n);
        let u = family_poly(FamilyId::ChebyshevU, n - 1);
        Ok(&t * &t - &x2m1 * &(&u * &u) == Poly::one())
    })
}

fn fibonacci_gcd(_: &SuiteConfig) -> Outcome {
    let one = Scalar::one();
    let value = |n: u32| -> std::result::Result<num_bigint::BigInt, String> {
        let r = family_poly(FamilyId::Fibonacci, n).eval(&one, &one).to_rational().ok_or("not rational")?;
        Ok(r.to_integer())
    };
    for m in 1..=20u32 {
        for n in 1..=20u32 {
            if value(m)?.gcd(&value(n)?) != value(m.gcd(&n))? {
                return Err(format!("gcd fails at ({m}, {n})"));
            }
        }
    }
    Ok("gcd(F_m, F_n) = F_gcd(m,n) for m, n <= 20".into())
}

fn flc_moments(c: &SuiteConfig) -> Outcome {
    moments_closed(
        &[
            FamilyId::Fibonacci,
            FamilyId::Lucas,
            FamilyId::LucasStar,
            FamilyId::ChebyshevT,
            FamilyId::ChebyshevTStar,
            FamilyId::ChebyshevU,
        ],
        c.upto,
    )
}

fn flc_connections(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq3_4, ConnectionId::Eq3_5, ConnectionId::Eq4_10, ConnectionId::Eq4_11], c.upto)
}

fn pairs_classical(c: &SuiteConfig) -> Outcome {
    pair_round_trip(PairId::Pair3_6, c.upto)?;
    pair_round_trip(PairId::Pair3_8, c.upto)
}

fn chebyshev_gram(c: &SuiteConfig) -> Outcome {
    for id in [FamilyId::ChebyshevT, FamilyId::ChebyshevU, FamilyId::Fibonacci, FamilyId::Lucas] {
        let r = gram_diagonal(id, c.upto as usize).map_err(|e| e.to_string())?;
        if !r.is_orthogonal() {
            return Err(format!("{id} is not orthogonal"));
        }
    }
    Ok(format!("off-diagonal entries vanish, n <= {}", c.upto))
}

// ---------------------------------------------------------------------------
// q-Hermite, q-Fibonacci, q-Lucas

fn q_printed(_: &SuiteConfig) -> Outcome {
    printed(
        FamilyId::QHermite,
        &[
            "1",
            "x",
            "x^2 - (1-q)*s",
            "x^3 - (1-q)*(q+2)*s*x",
            "x^4 - (1-q)*(q^2 + 2*q + 3)*s*x^2 + (1-q)^2*(1+q+q^2)*s^2",
        ],
    )?;
    printed(
        FamilyId::QFibonacci,
        &[
            "0",
            "1",
            "x",
            "x^2 + q*s",
            "x^3 + q*(1+q)*s*x",
            "x^4 + q*(1+q+q^2)*s*x^2 + q^3*s^2",
            "x^5 + q*(1+q+q^2+q^3)*s*x^3 + q^3*(1+q+q^2)*s^2*x",
        ],
    )
    .map(|_| "12 printed values reproduced".into())
}

fn q_closed_forms(c: &SuiteConfig) -> Outcome {
    closed_forms(
        &[
            FamilyId::HermiteBivarTilde,
            FamilyId::QHermite,
            FamilyId::ContQHermite,
            FamilyId::PhysicistsQHermite,
            FamilyId::RogersSzego,
        ],
        c.upto,
    )
}

fn q_fibonacci_closed_form(c: &SuiteConfig) -> Outcome {
    closed_forms(&[FamilyId::QFibonacci], c.upto)
}

fn q_lucas_closed_form(c: &SuiteConfig) -> Outcome {
    closed_forms(&[FamilyId::QLucas], c.upto)
}

fn q_hermite_substitution(c: &SuiteConfig) -> Outcome {
    let op = q_hermite_raising();
    over(0..=c.upto, |n| Ok(op_substitute(&family_poly(FamilyId::QHermite, n), &op) == Poly::x_pow(n)))
}

fn q_hermite_umbral(c: &SuiteConfig) -> Outcome {
    let n = c.upto.min(12) as usize;
    let inv = umbral_inverse(&coeff_matrix(FamilyId::QHermite, n).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    over(0..=n as u32, |k| Ok(inv.row_poly(k as usize) == h_poly(k)))
}

fn q_fibonacci_operator(c: &SuiteConfig) -> Outcome {
    let op = OpSpec::x_plus(Poly::s().scale(&(Scalar::q() - Scalar::one())), OpSpec::Dq);
    let mut seq = vec![Poly::zero(), Poly::one()];
    for n in 2..=c.upto.max(1) as usize {
        let next = op.apply(&seq[n - 1]) + seq[n - 2].shift(0, 1);
        seq.push(next);
    }
    over(0..=c.upto, |n| Ok(seq[n as usize] == family_closed_form(FamilyId::QFibonacci, n)?))
}

fn classical_substituted(c: &SuiteConfig) -> Outcome {
    let op = q_hermite_raising();
    over(0..=c.upto, |n| {
        let lucas = op_substitute(&negate_s(&family_poly(FamilyId::LucasStar, n)), &op);
        let fib = op_substitute(&negate_s(&family_poly(FamilyId::Fibonacci, n + 1)), &op);
        Ok(lucas == negate_s(&family_poly(FamilyId::QLucas, n))
            && fib == negate_s(&family_poly(FamilyId::QFibonacci, n + 1)))
    })
}

fn h_expansions(c: &SuiteConfig) -> Outcome {
    let op = q_hermite_raising();
    over(0..=c.upto, |n| {
        let ni = n as i64;
        let h = h_poly(n);
        let mut sub_l = Poly::zero();
        let mut sub_f = Poly::zero();
        let mut fam_l = Poly::zero();
        let mut fam_f = Poly::zero();
        for k in 0..=n / 2 {
            let ki = k as i64;
            let c1 = big(binomial(ni, ki));
            let c2 = big(binomial(ni, ki) - binomial(ni, ki - 1));
            let l_cl = negate_s(&family_poly(FamilyId::LucasStar, n - 2 * k));
            let f_cl = negate_s(&family_poly(FamilyId::Fibonacci, n + 1 - 2 * k));
            sub_l = sub_l + op_substitute(&l_cl, &op).scale(&c1).shift(0, k);
            sub_f = sub_f + op_substitute(&f_cl, &op).scale(&c2).shift(0, k);
            fam_l = fam_l + negate_s(&family_poly(FamilyId::QLucas, n - 2 * k)).scale(&c1).shift(0, k);
            fam_f = fam_f + negate_s(&family_poly(FamilyId::QFibonacci, n + 1 - 2 * k)).scale(&c2).shift(0, k);
        }
        let direct = op_power_apply(&op, n, &Poly::one());
        Ok(h == direct && sub_l == h && sub_f == h && fam_l == h && fam_f == h)
    })
}

fn touchard_riordan_check(c: &SuiteConfig) -> Outcome {
    let lam = moments(FamilyId::QHermite, 2 * c.upto as usize).map_err(|e| e.to_string())?;
    over(0..=c.upto, |m| {
        let tr = Poly::term(touchard_riordan(m), 0, m);
        let from_h = Poly::term(h_poly(2 * m).coeff(0, m), 0, m);
        Ok(lam.moments[2 * m as usize] == tr && from_h == tr && lam.moments.get(2 * m as usize + 1).map_or(true, Poly::is_zero))
    })
}

fn q_moments(c: &SuiteConfig) -> Outcome {
    moments_closed(
        &[
            FamilyId::HermiteBivarTilde,
            FamilyId::QHermite,
            FamilyId::ContQHermite,
            FamilyId::PhysicistsQHermite,
            FamilyId::QFibonacci,
            FamilyId::QLucas,
        ],
        c.upto,
    )
}

fn q_connection_5_11(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq5_11], c.upto)
}

fn q_connection_5_12(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq5_12], c.upto)
}

fn q_connection_5_20(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq5_20], c.upto)
}

fn q_connection_5_23(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq5_23], c.upto)
}

fn q_connection_5_28(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq5_28], c.upto)
}

fn q_connection_5_29(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq5_29], c.upto)
}

fn q_connection_limit(c: &SuiteConfig) -> Outcome {
    over(0..=c.upto, |n| {
        let (l_q, r_q) = connection_sides(ConnectionId::Eq5_11, n);
        let (l, r) = connection_sides(ConnectionId::Eq3_5, n);
        Ok(at_v_one(&l_q)? == l && at_v_one(&r_q)? == r)
    })
}

fn q_basis_expansions(c: &SuiteConfig) -> Outcome {
    over(0..=c.upto, |n| {
        let ni = n as i64;
        let lucas = to_basis(&negate_s(&family_poly(FamilyId::LucasStar, n)), FamilyId::QHermite)?;
        let fib = to_basis(&negate_s(&family_poly(FamilyId::Fibonacci, n + 1)), FamilyId::QHermite)?;
        let mut ok = true;
        for j in 0..=n {
            let (lj, fj) = (&lucas[j as usize], &fib[j as usize]);
            if (n - j) % 2 == 1 {
                ok &= lj.is_zero() && fj.is_zero();
                continue;
            }
            let k = (n - j) / 2;
            let ki = k as i64;
            let neg_s_k = Poly::term(sign(k), 0, k);
            let wl = crate::families::q_lucas_weight(n, k) * q_triangular(ki);
            let wf = q_binomial(ni - ki, ki) * q_triangular(ki + 1);
            ok &= *lj == neg_s_k.scale(&wl) && *fj == neg_s_k.scale(&wf);
        }
        Ok(ok)
    })
}

fn q_pairs(c: &SuiteConfig) -> Outcome {
    pair_round_trip(PairId::Pair5_21, c.upto)?;
    pair_round_trip(PairId::Pair5_24, c.upto)
}

fn q_specials(c: &SuiteConfig) -> Outcome {
    specials((0..=c.upto).flat_map(|n| [SpecialValue::QhSpecialQ2(n), SpecialValue::QhSpecialNegQ(n)]))
}

fn q_limits(c: &SuiteConfig) -> Outcome {
    over(0..=c.upto, |n| {
        let tilde = at_v_one(&family_poly(FamilyId::HermiteBivarTilde, n))? == family_poly(FamilyId::HermiteClassical, n);
        let fib = at_v_one(&family_poly(FamilyId::QFibonacci, n))? == family_poly(FamilyId::Fibonacci, n);
        let herm = at_v_one(&family_poly(FamilyId::QHermite, n))? == Poly::x_pow(n);
        Ok(tilde && fib && herm)
    })
}

fn q_fibonacci_not_orthogonal(c: &SuiteConfig) -> Outcome {
    for id in [FamilyId::QFibonacci, FamilyId::QLucas] {
        let r = gram_diagonal(id, c.upto.max(4) as usize).map_err(|e| e.to_string())?;
        if r.is_orthogonal() {
            return Err(format!("{id} unexpectedly orthogonal"));
        }
    }
    Ok("both families have a nonzero off-diagonal Gram entry".into())
}

fn even_in_v(c: &SuiteConfig) -> Outcome {
    for id in FamilyId::ALL {
        over(0..=c.upto, |n| Ok(family_poly(id, n).is_even_in_v())).map_err(|e| format!("{id}: {e}"))?;
    }
    Ok(format!("no odd powers of v in any family, n <= {}", c.upto))
}

fn basis_round_trip(c: &SuiteConfig) -> Outcome {
    let polys = sample_polys(3, c.upto.min(12));
    let extra = Poly::s() * Poly::x_pow(3) + Poly::s_pow(2);
    for id in FamilyId::ALL {
        for p in polys.iter().chain(std::iter::once(&extra)) {
            let coeffs = to_basis(p, id).map_err(|e| e.to_string())?;
            if from_basis(&coeffs, id) != *p {
                return Err(format!("{id}: round trip changed the polynomial"));
            }
        }
    }
    Ok(format!("round trip is the identity for all families, degree <= {}", c.upto.min(12)))
}

// ---------------------------------------------------------------------------
// Askey-Wilson

fn cont_printed(_: &SuiteConfig) -> Outcome {
    printed(
        FamilyId::ContQHermite,
        &["1", "2*x", "4*x^2 + q - 1", "8*x^3 + 2*(q^2 + q - 2)*x", "16*x^4 + 4*(q^3 + q^2 + q - 3)*x^2 + q^4 - q^3 - q + 1"],
    )
}

fn aw_definition(c: &SuiteConfig) -> Outcome {
    let v = 0.5f64.sqrt();
    let mut worst = 0f64;
    for n in 0..=c.upto {
        let exact = aw_delta(&ChebPoly::single(ChebBasis::T, n, Scalar::one())).to_poly();
        for theta in [0.3, 1.1, 2.5] {
            let z = Complex64::from_polar(1.0, theta);
            let t = |w: Complex64| (w.powi(n as i32) + w.powi(-(n as i32))) / 2.0;
            let x = |w: Complex64| (w + w.inv()) / 2.0;
            let divided = (t(z * v) - t(z / v)) / (x(z * v) - x(z / v));
            let value = exact.eval_f64(theta.cos(), 0.0, v);
            worst = worst.max((divided - Complex64::new(value, 0.0)).norm());
        }
        let u = ChebPoly::single(ChebBasis::U, n.saturating_sub(1), q_int(n) * Scalar::v_pow(1 - n as i64));
        let by_rule = if n == 0 { ChebPoly::zero(ChebBasis::T) } else { cheb_basis_convert(&u, ChebBasis::T) };
        if aw_delta(&ChebPoly::single(ChebBasis::T, n, Scalar::one())) != by_rule {
            return Err(format!("T_{n} image differs from the U-basis rule"));
        }
    }
    if worst > 1e-9 {
        return Err(format!("divided difference differs by {worst:.3e}"));
    }
    Ok(format!("matches the divided difference on the circle, max deviation {worst:.1e}"))
}

fn aw_on_hermite(c: &SuiteConfig) -> Outcome {
    over(1..=c.upto, |n| {
        let h = ChebPoly::from_poly(&family_poly(FamilyId::ContQHermite, n), ChebBasis::T);
        let lower = ChebPoly::from_poly(&family_poly(FamilyId::ContQHermite, n - 1), ChebBasis::T);
        let factor = Scalar::from_int(2) * Scalar::v_pow(1 - n as i64) * q_int(n);
        Ok(aw_delta(&h) == lower.scale(&factor))
    })
}

fn aw_chain(c: &SuiteConfig) -> Outcome {
    over(0..=c.upto, |n| {
        Ok(aw_raising_chain(n) == ChebPoly::from_poly(&family_poly(FamilyId::ContQHermite, n), ChebBasis::T))
    })
}

fn cont_connections(c: &SuiteConfig) -> Outcome {
    connections(&[ConnectionId::Eq6_4, ConnectionId::Eq6_5, ConnectionId::Eq6_6, ConnectionId::Eq6_7], c.upto)
}

fn cont_gram(c: &SuiteConfig) -> Outcome {
    let r = gram_diagonal(FamilyId::ContQHermite, c.upto as usize).map_err(|e| e.to_string())?;
    if let Some((m, n)) = r.first_nonzero_off_diagonal {
        return Err(format!("Lambda(H_{m} H_{n}) is nonzero"));
    }
    over(0..=c.upto, |n| Ok(r.diagonal[n as usize] == Poly::constant(q_shifted_factorial(n))))
}

fn w_vanishes(c: &SuiteConfig) -> Outcome {
    let v = series_identity_check(SeriesId::Eq6_18, c.upto as usize);
    match v.first_failure {
        None => Ok(format!("w(0) = 1, w(1) = 1 - q, w(n) = 0 for 2 <= n <= {}", c.upto)),
        Some(n) => Err(format!("w({n}) = {}", w_value(n as u32))),
    }
}

// ---------------------------------------------------------------------------
// unit circle

fn circle_orthogonality(c: &SuiteConfig) -> Outcome {
    let n = c.upto.min(8);
    over_pairs(n, n, |a, b| Ok(inner_product(a, b) == inner_product_expected(a, b)))
}

fn circle_derived(c: &SuiteConfig) -> Outcome {
    let n = c.upto.min(8);
    over_pairs(n, n, |a, b| Ok(inner_product_derived(a, b) == inner_product(a, b)))
}

fn circle_intermediate(_: &SuiteConfig) -> Outcome {
    over_pairs(6, 6, |n, j| {
        let (ni, ji) = (n as i64, j as i64);
        let lhs: Scalar = (0..=ni)
            .map(|k| sign(k as u32) * q_triangular(k) * q_binomial(ni, k) * Scalar::q_pow(-ji * k))
            .sum();
        let rhs: Scalar = (0..ni).map(|l| Scalar::one() - Scalar::q_pow(l - ji)).product();
        Ok(lhs == rhs)
    })
}

fn circle_lambda_numeric(c: &SuiteConfig) -> Outcome {
    let tol = c.tol(1e-8);
    within(
        per_q(c, |cfg| {
            (0..=4)
                .map(|n: i64| {
                    let exact = lambda_r(&LaurentPoly::monomial(n, Scalar::one())).eval_f64(cfg.v());
                    let mirror = lambda_r(&LaurentPoly::monomial(-n, Scalar::one())).eval_f64(cfg.v());
                    let num = wrapped_gauss_moment(n, cfg)?;
                    Ok((exact - num).abs().max((mirror - num).abs()))
                })
                .collect()
        }),
        tol,
    )
}

fn circle_specials(c: &SuiteConfig) -> Outcome {
    specials((0..=c.upto).flat_map(|n| {
        [
            SpecialValue::Gauss(n),
            SpecialValue::RsQ2(n),
            SpecialValue::RsNegQ(n),
            SpecialValue::QhSpecialQ2(n),
            SpecialValue::QhSpecialNegQ(n),
        ]
    }))
}

// ---------------------------------------------------------------------------
// numeric weights

fn t_even_expected(n: u32, q: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let s = if n % 2 == 0 { 1.0 } else { -1.0 };
    s / 2.0 * q.powi((n * (n - 1) / 2) as i32) * (1.0 + q.powi(n as i32))
}

fn u_even_expected(n: u32, q: f64) -> f64 {
    let s = if n % 2 == 0 { 1.0 } else { -1.0 };
    s * q.powi((n * (n + 1) / 2) as i32)
}

fn weight_moments(c: &SuiteConfig) -> Outcome {
    let lam = moments(FamilyId::ContQHermite, 8).map_err(|e| e.to_string())?;
    within(
        per_q(c, |cfg| {
            (0..=8u32)
                .map(|n| {
                    let exact = lam.moments[n as usize].eval_f64(0.0, 0.0, cfg.v());
                    Ok((quadrature_moment(Measure::QHermiteWeight, n, cfg)? - exact).abs())
                })
                .collect()
        }),
        c.tol(1e-8),
    )
}

fn weight_chebyshev(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            (0..=4u32)
                .flat_map(|n| {
                    let u = integrate_against(Measure::QHermiteWeight, &|x| cheb_u(2 * n, x), cfg)
                        .map(|val| (val - u_even_expected(n, cfg.q)).abs());
                    let t = integrate_against(Measure::QHermiteWeight, &|x| cheb_t(2 * n, x), cfg)
                        .map(|val| (val - t_even_expected(n, cfg.q)).abs());
                    [u, t]
                })
                .collect()
        }),
        c.tol(1e-6),
    )
}

fn circle_integral(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            (0..=4u32)
                .flat_map(|n| {
                    let t = integrate_against(Measure::QHermiteCircle, &|x| cheb_t(2 * n, x), cfg)
                        .map(|val| (val - t_even_expected(n, cfg.q)).abs());
                    let odd = integrate_against(Measure::QHermiteCircle, &|x| cheb_t(2 * n + 1, x), cfg)
                        .map(f64::abs);
                    [t, odd]
                })
                .collect()
        }),
        c.tol(1e-6),
    )
}

fn weight_nonnegative(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            (0..=200)
                .map(|i| {
                    let x = -1.0 + i as f64 / 100.0;
                    weight_density(x.clamp(-1.0, 1.0), cfg).map(|w| (-w).max(0.0))
                })
                .collect()
        }),
        1e-12,
    )
    .map(|d| format!("density nonnegative on a 201-point grid: {d}"))
}

fn chebyshev_orthogonality(c: &SuiteConfig) -> Outcome {
    let cfg = c.numeric(0.5).map_err(|e| e.to_string())?;
    let mut values = Vec::new();
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let expect = if m == n { 1.0 } else { 0.0 };
            values.push(
                integrate_against(Measure::Semicircle { r: 1.0 }, &|x| cheb_u(m, x) * cheb_u(n, x), &cfg)
                    .map(|v| (v - expect).abs()),
            );
        }
    }
    within(values, c.tol(1e-8))
}

fn gauss_numeric(c: &SuiteConfig) -> Outcome {
    let cfg = c.numeric(0.5).map_err(|e| e.to_string())?;
    let mut values = Vec::new();
    let exact = moments(FamilyId::HermiteClassical, 12).map_err(|e| e.to_string())?;
    for n in 0..=12u32 {
        let e = exact.moments[n as usize].eval_f64(0.0, 1.0, 1.0);
        values.push(quadrature_moment(Measure::Gauss { s: 1.0 }, n, &cfg).map(|v| (v - e).abs()));
    }
    let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let hm = family_poly(FamilyId::HermiteClassical, m);
            let hn = family_poly(FamilyId::HermiteClassical, n);
            let expect = if m == n { fact(n) } else { 0.0 };
            let f = |x: f64| hm.eval_f64(x, 1.0, 1.0) * hn.eval_f64(x, 1.0, 1.0);
            values.push(integrate_against(Measure::Gauss { s: 1.0 }, &f, &cfg).map(|v| (v - expect).abs()));
        }
    }
    within(values, c.tol(1e-6))
}

fn classical_measures(c: &SuiteConfig) -> Outcome {
    let cfg = c.numeric(0.5).map_err(|e| e.to_string())?;
    let cases = [
        (Measure::Semicircle { r: 2.0 }, FamilyId::Fibonacci, -1.0),
        (Measure::Arcsine { r: 2.0 }, FamilyId::Lucas, -1.0),
        (Measure::Arcsine { r: 1.0 }, FamilyId::ChebyshevT, 0.0),
        (Measure::Semicircle { r: 1.0 }, FamilyId::ChebyshevU, 0.0),
    ];
    let mut values = Vec::new();
    for (measure, id, s) in cases {
        let lam = moments(id, 8).map_err(|e| e.to_string())?;
        for n in 0..=8u32 {
            let exact = lam.moments[n as usize].eval_f64(0.0, s, 1.0);
            values.push(quadrature_moment(measure, n, &cfg).map(|v| (v - exact).abs()));
        }
    }
    within(values, c.tol(1e-8))
}

fn wrapped_moments(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            (0..=4i64).map(|n| Ok((wrapped_gauss_moment(n, cfg)? - cfg.q.powf((n * n) as f64 / 2.0)).abs())).collect()
        }),
        c.tol(1e-8),
    )
}

const ANGLES: [f64; 3] = [0.7, std::f64::consts::FRAC_PI_2, 2.2];

fn rodrigues_pointwise(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            (0..=3u32).flat_map(|n| ANGLES.iter().map(move |&t| q_rodrigues_pointwise(n, t, cfg))).collect()
        }),
        c.tol(1e-8),
    )
}

fn rodrigues_iterated(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            (0..=3u32).flat_map(|n| ANGLES.iter().map(move |&t| q_rodrigues_iterated(n, t, cfg))).collect()
        }),
        c.tol(1e-8),
    )
}

fn weight_truncation(c: &SuiteConfig) -> Outcome {
    let tol = c.tol(1e-8);
    within(
        per_q(c, |cfg| {
            let wide = cfg.doubled();
            let pair = |f: &dyn Fn(&NumericConfig) -> Result<f64>| -> Result<f64> { Ok((f(cfg)? - f(&wide)?).abs()) };
            vec![
                pair(&|k| quadrature_moment(Measure::QHermiteWeight, 6, k)),
                pair(&|k| integrate_against(Measure::QHermiteCircle, &|x| cheb_t(4, x), k)),
                pair(&|k| q_rodrigues_pointwise(2, 1.0, k)),
                pair(&|k| wrapped_gauss_moment(3, k)),
            ]
        }),
        tol,
    )
}

// ---------------------------------------------------------------------------
// numeric series and products

fn generating_products(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            [
                ProductGf::Eq5_10 { x: 0.3, s: 0.1, t: 0.2 },
                ProductGf::Eq5_10 { x: -0.5, s: -0.2, t: 0.3 },
                ProductGf::Eq5_10 { x: 0.3, s: 0.1, t: 0.0 },
            ]
            .into_iter()
            .map(|g| product_gf_check(g, cfg).map(|r| r.residual))
            .collect()
        }),
        c.tol(1e-10),
    )
}

fn circle_products(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            let mut out: Vec<Result<f64>> = [(1.0, 0.3), (2.2, -0.4), (0.4, 0.35)]
                .into_iter()
                .map(|(theta, t)| product_gf_check(ProductGf::Eq6_3 { theta, t }, cfg).map(|r| r.residual))
                .collect();
            out.extend((0..=8).map(|n| product_gf_check(ProductGf::Eq6_2 { n, theta: 1.0 }, cfg).map(|r| r.residual)));
            out
        }),
        c.tol(1e-10),
    )
}

fn jacobi_tail(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| [0.25, -0.6, 2.0].into_iter().map(|x| jacobi_tail_residual(x, cfg)).collect()),
        c.tol(1e-10),
    )
}

fn product_truncation(c: &SuiteConfig) -> Outcome {
    within(
        per_q(c, |cfg| {
            let wide = cfg.doubled();
            let pair = |f: &dyn Fn(&NumericConfig) -> Result<f64>| -> Result<f64> { Ok((f(cfg)? - f(&wide)?).abs()) };
            vec![
                pair(&|k| product_gf_check(ProductGf::Eq5_10 { x: 0.3, s: 0.1, t: 0.2 }, k).map(|r| r.lhs)),
                pair(&|k| product_gf_check(ProductGf::Eq6_3 { theta: 1.0, t: 0.3 }, k).map(|r| r.rhs)),
                pair(&|k| jacobi_tail_residual(0.25, k)),
            ]
        }),
        c.tol(1e-10),
    )
}

// ---------------------------------------------------------------------------

use SuiteId::*;

static CATALOG: &[Check] = &[
    Check { id: "hermite_printed", tag: "eq_1_4", suites: &[Classical], run: hermite_printed },
    Check { id: "hermite_closed_form", tag: "eq_1_4", suites: &[Classical], run: hermite_closed_form },
    Check { id: "hermite_substitution", tag: "eq_1_7", suites: &[Classical, Operators], run: hermite_substitution },
    Check { id: "hermite_derivative", tag: "eq_1_8", suites: &[Classical, Operators], run: hermite_derivative },
    Check { id: "hermite_operator_power", tag: "eq_1_10", suites: &[Classical, Operators], run: hermite_lowering_power },
    Check { id: "hermite_umbral_inverse", tag: "eq_1_13", suites: &[Classical], run: hermite_umbral },
    Check { id: "hermite_rodrigues", tag: "eq_1_16", suites: &[Classical, Operators], run: gauss_carrier },
    Check { id: "physicists_operators", tag: "eq_1_17", suites: &[Classical, Operators], run: physicists_relations },
    Check { id: "physicists_limit", tag: "eq_1_17", suites: &[Classical], run: physicists_limit },
    Check { id: "hermite_moments", tag: "eq_1_22", suites: &[Classical], run: hermite_moments },
    Check { id: "hermite_gram", tag: "eq_1_27", suites: &[Classical], run: hermite_gram },
    Check { id: "umbral_involution", tag: "sec_1_3", suites: &[Classical], run: umbral_involution },
    Check { id: "product_rule", tag: "eq_2_3", suites: &[QBinomial, Operators], run: product_rule },
    Check { id: "noncommuting_binomial", tag: "eq_2_6", suites: &[QBinomial, Operators], run: noncommuting_binomial },
    Check { id: "eps_identity", tag: "eq_2_10", suites: &[QBinomial, Operators], run: eps_identity },
    Check { id: "binomial_product", tag: "eq_2_13", suites: &[QBinomial, Operators], run: binomial_product },
    Check { id: "q_pascal", tag: "sec_2_1", suites: &[QBinomial], run: q_pascal },
    Check { id: "series_rogers_szego", tag: "eq_2_16", suites: &[QBinomial, RogersSzego], run: series_rs },
    Check { id: "series_reciprocal", tag: "eq_2_17", suites: &[QBinomial], run: series_reciprocal },
    Check { id: "series_big_exponential", tag: "eq_2_25", suites: &[QBinomial], run: series_big_e },
    Check { id: "series_small_exponential", tag: "eq_2_26", suites: &[QBinomial], run: series_small_e },
    Check { id: "jacobi_finite_step", tag: "eq_2_27", suites: &[QBinomial], run: jacobi_finite },
    Check { id: "rs_operator_form", tag: "eq_2_7", suites: &[RogersSzego, Operators], run: rs_operator },
    Check { id: "rs_lowering", tag: "eq_2_8", suites: &[RogersSzego, Operators], run: rs_lowering },
    Check { id: "rs_recurrence", tag: "eq_2_9", suites: &[RogersSzego, Operators], run: rs_recurrence },
    Check { id: "rs_umbral_inverse", tag: "eq_2_18", suites: &[RogersSzego], run: rs_umbral },
    Check { id: "rs_moments", tag: "eq_2_20", suites: &[RogersSzego], run: rs_moments },
    Check { id: "rs_special_values", tag: "eq_2_11", suites: &[RogersSzego], run: rs_special },
    Check { id: "flc_closed_forms", tag: "eq_3_1", suites: &[FibLucasCheb], run: flc_closed_forms },
    Check { id: "lucas_from_fibonacci", tag: "eq_3_3", suites: &[FibLucasCheb], run: lucas_from_fibonacci },
    Check { id: "chebyshev_from_lucas", tag: "eq_4_1", suites: &[FibLucasCheb], run: chebyshev_from_lucas },
    Check { id: "chebyshev_pell", tag: "eq_4_5", suites: &[FibLucasCheb], run: pell },
    Check { id: "fibonacci_gcd", tag: "sec_3_1", suites: &[FibLucasCheb], run: fibonacci_gcd },
    Check { id: "flc_moments", tag: "eq_3_10", suites: &[FibLucasCheb], run: flc_moments },
    Check { id: "flc_connections", tag: "eq_3_4", suites: &[FibLucasCheb], run: flc_connections },
    Check { id: "flc_inverse_pairs", tag: "eq_3_6", suites: &[FibLucasCheb], run: pairs_classical },
    Check { id: "flc_orthogonality", tag: "eq_1_23", suites: &[FibLucasCheb], run: chebyshev_gram },
    Check { id: "q_printed", tag: "eq_5_3", suites: &[QHermiteExact], run: q_printed },
    Check { id: "q_closed_forms", tag: "eq_5_14", suites: &[QHermiteExact], run: q_closed_forms },
    Check { id: "q_fibonacci_closed_form", tag: "eq_5_17", suites: &[QHermiteExact], run: q_fibonacci_closed_form },
    Check { id: "q_lucas_closed_form", tag: "eq_5_19", suites: &[QHermiteExact], run: q_lucas_closed_form },
    Check { id: "q_hermite_substitution", tag: "eq_5_4", suites: &[QHermiteExact, Operators], run: q_hermite_substitution },
    Check { id: "q_hermite_umbral_inverse", tag: "eq_5_5", suites: &[QHermiteExact, Operators], run: q_hermite_umbral },
    Check { id: "q_fibonacci_operator", tag: "eq_5_17", suites: &[QHermiteExact, Operators], run: q_fibonacci_operator },
    Check { id: "classical_substituted", tag: "eq_5_15", suites: &[QHermiteExact, Operators], run: classical_substituted },
    Check { id: "h_expansions", tag: "eq_5_30", suites: &[QHermiteExact, Operators], run: h_expansions },
    Check { id: "touchard_riordan", tag: "eq_5_31", suites: &[QHermiteExact], run: touchard_riordan_check },
    Check { id: "q_moments", tag: "eq_5_26", suites: &[QHermiteExact], run: q_moments },
    Check { id: "q_connection_lucas", tag: "eq_5_11", suites: &[QHermiteExact], run: q_connection_5_11 },
    Check { id: "q_connection_fibonacci", tag: "eq_5_12", suites: &[QHermiteExact], run: q_connection_5_12 },
    Check { id: "q_lucas_inverse", tag: "eq_5_20", suites: &[QHermiteExact], run: q_connection_5_20 },
    Check { id: "q_fibonacci_inverse", tag: "eq_5_23", suites: &[QHermiteExact], run: q_connection_5_23 },
    Check { id: "q_hermite_in_lucas", tag: "eq_5_28", suites: &[QHermiteExact], run: q_connection_5_28 },
    Check { id: "q_hermite_in_fibonacci", tag: "eq_5_29", suites: &[QHermiteExact], run: q_connection_5_29 },
    Check { id: "q_connection_limit", tag: "eq_5_11", suites: &[QHermiteExact], run: q_connection_limit },
    Check { id: "q_basis_expansions", tag: "eq_5_28", suites: &[QHermiteExact], run: q_basis_expansions },
    Check { id: "q_inverse_pairs", tag: "eq_5_21", suites: &[QHermiteExact], run: q_pairs },
    Check { id: "q_special_values", tag: "eq_5_7", suites: &[QHermiteExact], run: q_specials },
    Check { id: "q_limits", tag: "eq_5_2", suites: &[QHermiteExact], run: q_limits },
    Check { id: "q_not_orthogonal", tag: "sec_5_4", suites: &[QHermiteExact], run: q_fibonacci_not_orthogonal },
    Check { id: "even_in_v", tag: "eq_5_2", suites: &[QHermiteExact], run: even_in_v },
    Check { id: "basis_round_trip", tag: "sec_1_3", suites: &[QHermiteExact, FibLucasCheb], run: basis_round_trip },
    Check { id: "cont_printed", tag: "eq_6_1", suites: &[AskeyWilson], run: cont_printed },
    Check { id: "aw_definition", tag: "eq_6_20", suites: &[AskeyWilson], run: aw_definition },
    Check { id: "aw_on_hermite", tag: "eq_6_21", suites: &[AskeyWilson], run: aw_on_hermite },
    Check { id: "aw_raising_chain", tag: "eq_6_22", suites: &[AskeyWilson], run: aw_chain },
    Check { id: "cont_connections", tag: "eq_6_4", suites: &[AskeyWilson], run: cont_connections },
    Check { id: "cont_gram", tag: "eq_6_8", suites: &[AskeyWilson], run: cont_gram },
    Check { id: "w_vanishes", tag: "eq_6_18", suites: &[AskeyWilson], run: w_vanishes },
    Check { id: "circle_orthogonality", tag: "eq_2_23", suites: &[Circle], run: circle_orthogonality },
    Check { id: "circle_derived_sum", tag: "eq_2_24", suites: &[Circle], run: circle_derived },
    Check { id: "circle_intermediate", tag: "eq_2_13", suites: &[Circle], run: circle_intermediate },
    Check { id: "circle_lambda_numeric", tag: "eq_2_22", suites: &[Circle], run: circle_lambda_numeric },
    Check { id: "circle_special_values", tag: "eq_2_11", suites: &[Circle], run: circle_specials },
    Check { id: "weight_moments", tag: "eq_6_11", suites: &[NumericWeights], run: weight_moments },
    Check { id: "weight_chebyshev", tag: "eq_6_9", suites: &[NumericWeights], run: weight_chebyshev },
    Check { id: "weight_circle_integral", tag: "eq_6_14", suites: &[NumericWeights], run: circle_integral },
    Check { id: "weight_nonnegative", tag: "eq_6_12", suites: &[NumericWeights], run: weight_nonnegative },
    Check { id: "chebyshev_orthogonality", tag: "eq_6_13", suites: &[NumericWeights], run: chebyshev_orthogonality },
    Check { id: "gauss_measure", tag: "eq_1_26", suites: &[NumericWeights], run: gauss_numeric },
    Check { id: "classical_measures", tag: "eq_3_11", suites: &[NumericWeights], run: classical_measures },
    Check { id: "wrapped_moments", tag: "eq_2_22", suites: &[NumericWeights], run: wrapped_moments },
    Check { id: "rodrigues_pointwise", tag: "eq_6_23", suites: &[NumericWeights], run: rodrigues_pointwise },
    Check { id: "rodrigues_iterated", tag: "eq_6_24", suites: &[NumericWeights], run: rodrigues_iterated },
    Check { id: "weight_truncation", tag: "eq_6_12", suites: &[NumericWeights], run: weight_truncation },
    Check { id: "product_generating", tag: "eq_5_10", suites: &[NumericSeries], run: generating_products },
    Check { id: "product_circle", tag: "eq_6_3", suites: &[NumericSeries], run: circle_products },
    Check { id: "jacobi_tail", tag: "eq_2_27", suites: &[NumericSeries], run: jacobi_tail },
    Check { id: "product_truncation", tag: "eq_5_10", suites: &[NumericSeries], run: product_truncation },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_parse() {
        let mut ids: Vec<_> = CATALOG.iter().map(|c| c.id).collect();
        ids.sort();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
        for s in SuiteId::ALL {
            assert_eq!(s.as_str().parse::<SuiteId>().unwrap(), s);
            assert!(!suite_check_ids(s).is_empty(), "{s}");
        }
        assert!("everything".parse::<SuiteId>().is_err());
    }

    #[test]
    fn small_exact_suites_pass() {
        let cfg = SuiteConfig { upto: 5, ..SuiteConfig::default() };
        for s in [SuiteId::Classical, SuiteId::QBinomial, SuiteId::Circle] {
            let r = run_suite(s, &cfg);
            let failed: Vec<_> = r.failures().map(|rec| format!("{}: {}", rec.id, rec.detail)).collect();
            assert!(failed.is_empty(), "{failed:?}");
        }
    }
}
