//! Double-precision evaluation of infinite products, weight functions and
//! integrals, with truncation and panel-doubling controls.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::{family_poly, FamilyId};
use crate::qcore::{q_binomial, Poly};

/// Default number of series terms `J`.
pub const SERIES_TERMS: usize = 40;
/// Largest accepted `J`.
pub const MAX_SERIES_TERMS: usize = 80;

/// Truncation and tolerance settings shared by the numeric routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    pub q: f64,
    /// Number of factors kept in `(a; q)_infinity`.
    pub k: usize,
    /// Number of terms kept in series.
    pub j: usize,
    /// Initial number of quadrature panels.
    pub panels: usize,
    /// Panel budget for the doubling loop.
    pub max_panels: usize,
    pub tol: f64,
}

impl NumericConfig {
    /// Defaults for a given `q` in `[0, 1)`: `K` is at least 60 and large enough that
    /// `q^K` is below double-precision resolution.
    pub fn new(q: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&q) || !q.is_finite() {
            return Err(Error::Domain(format!("q = {q} must satisfy 0 <= q < 1")));
        }
        let k = if q > 0.0 { ((-17.0 * 10f64.ln()) / q.ln()).ceil().max(60.0) as usize } else { 60 };
        Ok(NumericConfig { q, k, j: SERIES_TERMS, panels: 32, max_panels: 1 << 20, tol: 1e-10 })
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tolerance {tol} must be positive")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_truncation(mut self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("truncation must be at least 1".into()));
        }
        self.k = k;
        Ok(self)
    }

    pub fn with_series_terms(mut self, j: usize) -> Result<Self> {
        if j == 0 || j > MAX_SERIES_TERMS {
            return Err(Error::Domain(format!("series terms must lie in 1..={MAX_SERIES_TERMS}")));
        }
        self.j = j;
        Ok(self)
    }

    /// Same settings with `K` and the starting panel count doubled; `J` is doubled up
    /// to `MAX_SERIES_TERMS`, since each extra term needs an exact polynomial.
    pub fn doubled(&self) -> Self {
        let j = (2 * self.j).min(MAX_SERIES_TERMS).max(self.j);
        NumericConfig { k: 2 * self.k, j, panels: 2 * self.panels, ..*self }
    }

    pub fn v(&self) -> f64 {
        self.q.sqrt()
    }
}

/// `(a; q)_K` for complex `a`.
pub fn q_poch_complex(a: Complex64, q: f64, k: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut qj = 1.0;
    for _ in 0..k {
        acc *= Complex64::new(1.0, 0.0) - a * qj;
        qj *= q;
    }
    acc
}

pub fn q_poch_real(a: f64, q: f64, k: usize) -> f64 {
    q_poch_complex(Complex64::new(a, 0.0), q, k).re
}

/// Composite trapezoid rule on `[a, b]`, doubling panels until two successive
/// estimates agree to within `tol / 100`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, cfg: &NumericConfig) -> Result<f64> {
    let mut panels = cfg.panels.max(2);
    let mut h = (b - a) / panels as f64;
    let mut sum = 0.5 * (f(a) + f(b)) + (1..panels).map(|i| f(a + i as f64 * h)).sum::<f64>();
    let mut estimate = sum * h;
    while panels < cfg.max_panels {
        let mids: f64 = (0..panels).map(|i| f(a + (i as f64 + 0.5) * h)).sum();
        sum += mids;
        panels *= 2;
        h *= 0.5;
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if !estimate.is_finite() {
            return Err(Error::Convergence("integrand is not finite".into()));
        }
        if diff <= (cfg.tol * 1e-2).max(1e-15 * estimate.abs()) {
            return Ok(estimate);
        }
    }
    Err(Error::Convergence(format!("quadrature did not settle within {} panels", cfg.max_panels)))
}

/// `w(x; q) = (2/pi) sqrt(1-x^2) sum_k (-1)^k q^C(k+1,2) U_2k(x)` with `K` terms,
/// evaluated through `sqrt(1-x^2) U_2k(cos t) = sin((2k+1) t)`.
pub fn weight_density(x: f64, cfg: &NumericConfig) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} lies outside [-1, 1]")));
    }
    Ok(weight_at_angle(x.acos(), cfg))
}

fn weight_at_angle(theta: f64, cfg: &NumericConfig) -> f64 {
    let mut total = 0.0;
    for k in 0..cfg.k {
        let e = (k * (k + 1) / 2) as i32;
        let c = if cfg.q == 0.0 && e > 0 { 0.0 } else { cfg.q.powi(e) };
        if c == 0.0 {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * c * ((2 * k + 1) as f64 * theta).sin();
    }
    2.0 / PI * total
}

/// Probability measures with known moment sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    /// `w(x; q) dx` on `[-1, 1]`.
    QHermiteWeight,
    /// `(q;q)_inf / (2 pi) |(e^{2it}; q)_inf|^2 dt` on `[0, pi]`, `x = cos t`.
    QHermiteCircle,
    /// Normal density with variance `s`.
    Gauss { s: f64 },
    /// Semicircle on `[-r, r]`.
    Semicircle { r: f64 },
    /// Arcsine law on `[-r, r]`.
    Arcsine { r: f64 },
}

impl FromStr for Measure {
    type Err = Error;
    /// `qhermite_weight`, `qhermite_circle`, `gauss` / `gauss(s)`, `semicircle` (radius 2),
    /// `arcsine` (radius 2), `wigner` (semicircle of radius 1), `arcsine_unit` (radius 1).
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "qhermite_weight" => return Ok(Measure::QHermiteWeight),
            "qhermite_circle" => return Ok(Measure::QHermiteCircle),
            "gauss" => return Ok(Measure::Gauss { s: 1.0 }),
            "semicircle" => return Ok(Measure::Semicircle { r: 2.0 }),
            "arcsine" => return Ok(Measure::Arcsine { r: 2.0 }),
            "wigner" => return Ok(Measure::Semicircle { r: 1.0 }),
            "arcsine_unit" => return Ok(Measure::Arcsine { r: 1.0 }),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("gauss(").and_then(|r| r.strip_suffix(')')) {
            let s: f64 = inner.trim().parse().map_err(|_| Error::UnknownId(text.to_string()))?;
            if s > 0.0 && s.is_finite() {
                return Ok(Measure::Gauss { s });
            }
            return Err(Error::Domain(format!("variance {s} must be positive")));
        }
        Err(Error::UnknownId(text.to_string()))
    }
}

/// `(q;q)_K`.
pub fn q_poch_q(cfg: &NumericConfig) -> f64 {
    q_poch_real(cfg.q, cfg.q, cfg.k)
}

/// `integral f d(measure)`.
pub fn integrate_against(measure: Measure, f: &dyn Fn(f64) -> f64, cfg: &NumericConfig) -> Result<f64> {
    match measure {
        Measure::QHermiteWeight => {
            integrate(&|t: f64| f(t.cos()) * weight_at_angle(t, cfg) * t.sin(), 0.0, PI, cfg)
        }
        Measure::QHermiteCircle => {
            let pref = q_poch_q(cfg) / (2.0 * PI);
            let g = |t: f64| {
                let z2 = Complex64::from_polar(1.0, 2.0 * t);
                f(t.cos()) * q_poch_complex(z2, cfg.q, cfg.k).norm_sqr()
            };
            Ok(pref * integrate(&g, 0.0, PI, cfg)?)
        }
        Measure::Gauss { s } => {
            if !(s > 0.0) {
                return Err(Error::Domain(format!("variance {s} must be positive")));
            }
            let half = 14.0 * s.sqrt();
            let norm = 1.0 / (2.0 * PI * s).sqrt();
            Ok(norm * integrate(&|x: f64| f(x) * (-x * x / (2.0 * s)).exp(), -half, half, cfg)?)
        }
        Measure::Semicircle { r } => {
            let g = |t: f64| f(r * t.cos()) * t.sin() * t.sin();
            Ok(2.0 / PI * integrate(&g, 0.0, PI, cfg)?)
        }
        Measure::Arcsine { r } => Ok(integrate(&|t: f64| f(r * t.cos()), 0.0, PI, cfg)? / PI),
    }
}

/// `integral x^n d(measure)`.
pub fn quadrature_moment(measure: Measure, n: u32, cfg: &NumericConfig) -> Result<f64> {
    integrate_against(measure, &|x: f64| x.powi(n as i32), cfg)
}

/// `T_n(x)` by the three-term recurrence.
pub fn cheb_t(n: u32, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        (a, b) = (b, 2.0 * x * b - a);
    }
    b
}

/// `U_n(x)` by the three-term recurrence.
pub fn cheb_u(n: u32, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, 2.0 * x);
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        (a, b) = (b, 2.0 * x * b - a);
    }
    b
}

/// Wrapped normal density with variance `s` on `[0, 2 pi)`.
pub fn wrapped_density(theta: f64, s: f64) -> f64 {
    let m = ((2.0 * s * 60.0).sqrt() / (2.0 * PI)).ceil() as i64 + 2;
    let norm = 1.0 / (2.0 * PI * s).sqrt();
    (-m..=m).map(|k| (-(theta + 2.0 * PI * k as f64).powi(2) / (2.0 * s)).exp()).sum::<f64>() * norm
}

/// `integral_0^{2 pi} e^{i n t} v(t) dt` (real part) for the wrapped normal with
/// `s = -ln q`; its exact value is `q^(n^2/2)`.
pub fn wrapped_gauss_moment(n: i64, cfg: &NumericConfig) -> Result<f64> {
    if cfg.q <= 0.0 {
        return Err(Error::Domain("wrapped normal needs q > 0".into()));
    }
    let s = -cfg.q.ln();
    integrate(&|t: f64| (n as f64 * t).cos() * wrapped_density(t, s), 0.0, 2.0 * PI, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProductGf {
    /// `1 / prod (1 - q^n x t + q^2n s t^2)` against `sum H_n(x,s,q) t^n / (q;q)_n`.
    Eq5_10 { x: f64, s: f64, t: f64 },
    /// `1 / |(e^{i theta} t; q)_inf|^2` against `sum H_n(cos theta | q) t^n / (q;q)_n`.
    Eq6_3 { theta: f64, t: f64 },
    /// `H_n(cos theta | q)` against `sum_k [n,k] e^{i(n-2k) theta}`.
    Eq6_2 { n: u32, theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

fn check_t(t: f64) -> Result<()> {
    if t.abs() >= 1.0 || !t.is_finite() {
        return Err(Error::Domain(format!("|t| = {} must be below 1", t.abs())));
    }
    Ok(())
}

fn hermite_series(terms: usize, cfg: &NumericConfig, eval: impl Fn(&Poly) -> f64, family: FamilyId, t: f64) -> f64 {
    let mut total = 0.0;
    let mut poch = 1.0;
    let mut tn = 1.0;
    for n in 0..=terms {
        if n > 0 {
            poch *= 1.0 - cfg.q.powi(n as i32);
            tn *= t;
        }
        total += eval(&family_poly(family, n as u32)) * tn / poch;
    }
    total
}

pub fn product_gf_check(which: ProductGf, cfg: &NumericConfig) -> Result<ProductCheck> {
    let v = cfg.v();
    let q = cfg.q;
    let (lhs, rhs) = match which {
        ProductGf::Eq5_10 { x, s, t } => {
            check_t(t)?;
            let disc = Complex64::new(x * x - 4.0 * s, 0.0).sqrt();
            let (alpha, beta) = ((x + disc) / 2.0, (x - disc) / 2.0);
            if (alpha * t).norm() >= 1.0 || (beta * t).norm() >= 1.0 {
                return Err(Error::Domain("product roots lie outside the disc of convergence".into()));
            }
            let mut prod = 1.0;
            let mut qn = 1.0;
            for _ in 0..cfg.k {
                prod *= 1.0 - qn * x * t + qn * qn * s * t * t;
                qn *= q;
            }
            let series = hermite_series(cfg.j, cfg, |p| p.eval_f64(x, s, v), FamilyId::QHermite, t);
            (1.0 / prod, series)
        }
        ProductGf::Eq6_3 { theta, t } => {
            check_t(t)?;
            let a = Complex64::from_polar(t, theta);
            let prod = q_poch_complex(a, q, cfg.k).norm_sqr();
            let x = theta.cos();
            let series = hermite_series(cfg.j, cfg, |p| p.eval_f64(x, 1.0, v), FamilyId::ContQHermite, t);
            (1.0 / prod, series)
        }
        ProductGf::Eq6_2 { n, theta } => {
            let h = family_poly(FamilyId::ContQHermite, n).eval_f64(theta.cos(), 1.0, v);
            let sum: Complex64 = (0..=n as i64)
                .map(|k| Complex64::from_polar(1.0, (n as i64 - 2 * k) as f64 * theta) * q_binomial(n as i64, k).eval_f64(v))
                .sum();
            let residual = (Complex64::new(h, 0.0) - sum).norm();
            return Ok(ProductCheck { lhs: h, rhs: sum.re, residual });
        }
    };
    Ok(ProductCheck { lhs, rhs, residual: (lhs - rhs).abs() })
}

/// Partial theta sum `sum_{|k| <= J} (-1)^k q^C(k,2) x^k` against the truncated
/// product `(x;q)_K (q/x;q)_K (q;q)_K`; returns `|difference|`.
pub fn jacobi_tail_residual(x: f64, cfg: &NumericConfig) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain("x must be a nonzero finite number".into()));
    }
    let q = cfg.q;
    let j = cfg.j as i64;
    let sum: f64 = (-j..=j)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let e = (k * (k - 1) / 2) as f64;
            sign * (e * q.ln() + k as f64 * x.abs().ln()).exp() * if x < 0.0 && k % 2 != 0 { -1.0 } else { 1.0 }
        })
        .sum();
    let prod = q_poch_real(x, q, cfg.k) * q_poch_real(q / x, q, cfg.k) * q_poch_real(q, q, cfg.k);
    Ok((sum - prod).abs())
}

/// `(z^2; q)_K (z^-2; q)_K / sin(theta)` continued to complex `z = e^{i theta}`.
pub fn rodrigues_carrier(z: Complex64, cfg: &NumericConfig) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let sin = (z - z.inv()) / (2.0 * i);
    q_poch_complex(z * z, cfg.q, cfg.k) * q_poch_complex((z * z).inv(), cfg.q, cfg.k) / sin
}

fn check_angle(theta: f64) -> Result<()> {
    if !(theta.is_finite() && theta.sin() > 1e-4 && theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("theta = {theta} is too close to 0 or pi")));
    }
    Ok(())
}

fn cont_hermite_complex(n: u32, z: Complex64, v: f64) -> Complex64 {
    let x = (z + z.inv()) / 2.0;
    family_poly(FamilyId::ContQHermite, n).eval_complex(x, Complex64::new(1.0, 0.0), v)
}

/// Askey-Wilson divided difference of `g` at `z`.
fn aw_apply(g: &dyn Fn(Complex64) -> Complex64, z: Complex64, v: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let sin = (z - z.inv()) / (2.0 * i);
    (g(z * v) - g(z / v)) / (i * (v - 1.0 / v) * sin)
}

/// `|Delta_q (carrier H_n) + 2/(1-q) carrier H_{n+1} / v^n|` at `theta`.
pub fn q_rodrigues_pointwise(n: u32, theta: f64, cfg: &NumericConfig) -> Result<f64> {
    check_angle(theta)?;
    if cfg.q <= 0.0 {
        return Err(Error::Domain("q must be positive".into()));
    }
    let v = cfg.v();
    let z = Complex64::from_polar(1.0, theta);
    let g = |w: Complex64| rodrigues_carrier(w, cfg) * cont_hermite_complex(n, w, v);
    let lhs = aw_apply(&g, z, v);
    let rhs = -2.0 / (1.0 - cfg.q) * rodrigues_carrier(z, cfg) * cont_hermite_complex(n + 1, z, v) / v.powi(n as i32);
    Ok((lhs - rhs).norm())
}

/// `|H_n - ((q-1)/2)^n q^(n(n-1)/4) v(theta)^-1 Delta_q^n v(theta)|` at `theta`.
pub fn q_rodrigues_iterated(n: u32, theta: f64, cfg: &NumericConfig) -> Result<f64> {
    check_angle(theta)?;
    if cfg.q <= 0.0 {
        return Err(Error::Domain("q must be positive".into()));
    }
    let v = cfg.v();
    fn power(k: u32, w: Complex64, v: f64, cfg: &NumericConfig) -> Complex64 {
        if k == 0 {
            return rodrigues_carrier(w, cfg);
        }
        aw_apply(&|u| power(k - 1, u, v, cfg), w, v)
    }
    let z = Complex64::from_polar(1.0, theta);
    let pref = ((cfg.q - 1.0) / 2.0).powi(n as i32) * cfg.q.powf((n * n.saturating_sub(1)) as f64 / 4.0);
    let value = power(n, z, v, cfg) * pref / rodrigues_carrier(z, cfg);
    let h = family_poly(FamilyId::ContQHermite, n).eval_f64(theta.cos(), 1.0, v);
    Ok((value - Complex64::new(h, 0.0)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(q: f64) -> NumericConfig {
        NumericConfig::new(q).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert!((weight_density(0.0, &cfg(0.0)).unwrap() - 2.0 / PI).abs() < 1e-15);
        assert!(weight_density(1.0, &cfg(0.5)).unwrap().abs() < 1e-15);
        assert!(weight_density(-1.0, &cfg(0.3)).unwrap().abs() < 1e-15);
        assert!(weight_density(1.5, &cfg(0.5)).is_err());
        let total = quadrature_moment(Measure::QHermiteWeight, 0, &cfg(0.5)).unwrap();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn moment_examples() {
        let c = cfg(0.5);
        assert!((quadrature_moment(Measure::Gauss { s: 1.0 }, 4, &c).unwrap() - 3.0).abs() < 1e-8);
        assert!((quadrature_moment(Measure::Semicircle { r: 2.0 }, 4, &c).unwrap() - 2.0).abs() < 1e-8);
        assert!((quadrature_moment(Measure::QHermiteWeight, 2, &c).unwrap() - 0.125).abs() < 1e-8);
        let t2 = integrate_against(Measure::QHermiteCircle, &|x| cheb_t(2, x), &c).unwrap();
        assert!((t2 + 0.75).abs() < 1e-6);
    }

    #[test]
    fn wrapped_examples() {
        let c = cfg(0.5);
        assert!((wrapped_gauss_moment(0, &c).unwrap() - 1.0).abs() < 1e-10);
        assert!((wrapped_gauss_moment(1, &c).unwrap() - 0.5f64.sqrt()).abs() < 1e-8);
        assert!((wrapped_gauss_moment(2, &c).unwrap() - 0.25).abs() < 1e-8);
    }

    #[test]
    fn product_examples() {
        let c = cfg(0.5).with_truncation(40).unwrap();
        let r = product_gf_check(ProductGf::Eq5_10 { x: 0.3, s: 0.1, t: 0.2 }, &c).unwrap();
        assert!(r.residual < 1e-10, "{r:?}");
        let r = product_gf_check(ProductGf::Eq5_10 { x: 0.3, s: 0.1, t: 0.0 }, &c).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        let r = product_gf_check(ProductGf::Eq6_2 { n: 3, theta: 1.0 }, &c).unwrap();
        assert!(r.residual < 1e-12);
        assert!(product_gf_check(ProductGf::Eq6_3 { theta: 1.0, t: 1.0 }, &c).is_err());
    }

    #[test]
    fn rodrigues_examples() {
        let c = cfg(0.5);
        for (n, theta) in [(1, PI / 2.0), (2, 1.0), (0, 0.4)] {
            assert!(q_rodrigues_pointwise(n, theta, &c).unwrap() < 1e-8);
        }
        assert!(q_rodrigues_pointwise(1, 0.0, &c).is_err());
        for n in 0..=3 {
            assert!(q_rodrigues_iterated(n, 1.1, &c).unwrap() < 1e-8);
        }
    }

    #[test]
    fn jacobi_tail() {
        let c = cfg(0.5);
        assert!(jacobi_tail_residual(0.25, &c).unwrap() < 1e-10);
    }
}
