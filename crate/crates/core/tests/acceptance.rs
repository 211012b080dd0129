//! One PASS/FAIL line per acceptance criterion, at the stated bounds and tolerances.

use std::time::{Duration, Instant};

use qortho::analytic::{finite_jacobi_check, jacobi_tail_residual, series_identity_check, NumericConfig, SeriesId};
use qortho::circle::{inner_product, inner_product_expected};
use qortho::families::{family_closed_form, family_poly, special_value, FamilyId, SpecialValue};
use qortho::qcore::{parse_poly, q_binomial, q_int, q_triangular, Poly, Scalar};
use qortho::qoperators::{aw_delta, aw_raising_chain, cheb_basis_convert, h_poly, ChebBasis, ChebPoly};
use qortho::suites::{run_suite, SuiteConfig, SuiteId};
use qortho::transforms::{connection_check, negate_s, ConnectionId};
use qortho::umbral::{closed_moments, coeff_matrix, moments, umbral_inverse};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn suite_passes(id: SuiteId, cfg: &SuiteConfig) -> Result<(), String> {
    let report = run_suite(id, cfg);
    let failure = report.failures().next().map(|r| format!("{}: {}", r.id, r.detail));
    failure.map_or(Ok(()), Err)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    for id in FamilyId::ALL {
        for n in 0..=16 {
            let closed = family_closed_form(id, n).map_err(|e| e.to_string())?;
            ensure(family_poly(id, n) == closed, || format!("{id}({n}) recurrence differs from closed form"))?;
        }
    }
    let printed: [(FamilyId, &[&str]); 4] = [
        (FamilyId::HermiteClassical, &["1", "x", "x^2 - s", "x^3 - 3*s*x", "x^4 - 6*s*x^2 + 3*s^2", "x^5 - 10*s*x^3 + 15*s^2*x"]),
        (
            FamilyId::QHermite,
            &[
                "1",
                "x",
                "x^2 - (1-q)*s",
                "x^3 - (1-q)*(q+2)*s*x",
                "x^4 - (1-q)*(q^2 + 2*q + 3)*s*x^2 + (1-q)^2*(1+q+q^2)*s^2",
            ],
        ),
        (
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
        ),
        (
            FamilyId::ContQHermite,
            &["1", "2*x", "4*x^2 + q - 1", "8*x^3 + 2*(q^2 + q - 2)*x", "16*x^4 + 4*(q^3 + q^2 + q - 3)*x^2 + q^4 - q^3 - q + 1"],
        ),
    ];
    let mut count = 0;
    for (id, list) in printed {
        for (n, text) in list.iter().enumerate() {
            let want = parse_poly(text).map_err(|e| e.to_string())?.render();
            let got = family_poly(id, n as u32).render();
            ensure(got == want, || format!("{id}({n}): {got} vs {want}"))?;
            count += 1;
        }
    }
    let t = within_time(start, Duration::from_secs(5))?;
    Ok(format!("14 families agree for n <= 16, {count} printed values match, {t:.2?}"))
}

fn criterion_2() -> Verdict {
    let n = 12;
    let err = |e: qortho::Error| e.to_string();
    let h = coeff_matrix(FamilyId::HermiteClassical, n).map_err(err)?;
    let h_inv = umbral_inverse(&h).map_err(err)?;
    for k in 0..=n {
        ensure(h_inv.row_poly(k) == negate_s(&h.row_poly(k)), || format!("hermite row {k}"))?;
    }
    let r_inv = umbral_inverse(&coeff_matrix(FamilyId::RogersSzego, n).map_err(err)?).map_err(err)?;
    for m in 0..=n as u32 {
        let expect: Poly = (0..=m)
            .map(|k| {
                let d = m - k;
                let sign = Scalar::from_int(if d % 2 == 0 { 1 } else { -1 });
                Poly::term(sign * q_triangular(d as i64) * q_binomial(m as i64, k as i64), k, d)
            })
            .sum();
        ensure(r_inv.row_poly(m as usize) == expect, || format!("rogers_szego row {m}"))?;
    }
    let qh_inv = umbral_inverse(&coeff_matrix(FamilyId::QHermite, n).map_err(err)?).map_err(err)?;
    for k in 0..=n {
        ensure(qh_inv.row_poly(k) == h_poly(k as u32), || format!("q_hermite row {k}"))?;
    }
    Ok(format!("three inverse matrices exact, N = {n}"))
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let ids = [
        FamilyId::HermiteClassical,
        FamilyId::Fibonacci,
        FamilyId::Lucas,
        FamilyId::LucasStar,
        FamilyId::ChebyshevT,
        FamilyId::ChebyshevTStar,
        FamilyId::ChebyshevU,
        FamilyId::QFibonacci,
        FamilyId::QLucas,
        FamilyId::QHermite,
        FamilyId::HermiteBivarTilde,
        FamilyId::ContQHermite,
        FamilyId::PhysicistsQHermite,
        FamilyId::RogersSzego,
    ];
    for id in ids {
        let lam = moments(id, 16).map_err(|e| e.to_string())?;
        for n in 0..=16 {
            let closed = closed_moments(id, n).map_err(|e| e.to_string())?;
            ensure(lam.moments[n as usize] == closed, || format!("{id} moment {n}"))?;
        }
    }
    let t = within_time(start, Duration::from_secs(10))?;
    Ok(format!("{} families, n <= 16, {t:.2?}", ids.len()))
}

fn criterion_4() -> Verdict {
    for id in ConnectionId::ALL {
        for n in 0..=12 {
            let v = connection_check(id, n);
            ensure(v.holds(), || format!("{id} at n = {n}: residual {}", v.residual.render()))?;
        }
    }
    Ok(format!("{} identities, zero residual for n <= 12", ConnectionId::ALL.len()))
}

fn criterion_5() -> Verdict {
    let cfg = SuiteConfig { upto: 10, ..SuiteConfig::default() };
    suite_passes(SuiteId::Operators, &cfg)?;
    Ok("operator suite exact for n <= 10".into())
}

fn criterion_6() -> Verdict {
    for n in 0..=10u32 {
        let image = aw_delta(&ChebPoly::single(ChebBasis::T, n, Scalar::one()));
        let rule = if n == 0 {
            ChebPoly::zero(ChebBasis::T)
        } else {
            let u = ChebPoly::single(ChebBasis::U, n - 1, q_int(n) * Scalar::v_pow(1 - n as i64));
            cheb_basis_convert(&u, ChebBasis::T)
        };
        ensure(image == rule, || format!("T_{n} image"))?;
    }
    for n in 1..=10u32 {
        let h = ChebPoly::from_poly(&family_poly(FamilyId::ContQHermite, n), ChebBasis::T);
        let lower = ChebPoly::from_poly(&family_poly(FamilyId::ContQHermite, n - 1), ChebBasis::T);
        let factor = Scalar::from_int(2) * Scalar::v_pow(1 - n as i64) * q_int(n);
        ensure(aw_delta(&h) == lower.scale(&factor), || format!("Delta H_{n}"))?;
    }
    for n in 0..=8u32 {
        let h = ChebPoly::from_poly(&family_poly(FamilyId::ContQHermite, n), ChebBasis::T);
        ensure(aw_raising_chain(n) == h, || format!("raising chain at n = {n}"))?;
    }
    Ok("operator rule on T_n, action on H_n for n <= 10, chain for n <= 8".into())
}

fn criterion_7() -> Verdict {
    for m in 0..=8 {
        for n in 0..=8 {
            ensure(inner_product(m, n) == inner_product_expected(m, n), || format!("I({m}, {n})"))?;
        }
    }
    for n in 0..=10 {
        for id in [
            SpecialValue::Gauss(n),
            SpecialValue::RsQ2(n),
            SpecialValue::RsNegQ(n),
            SpecialValue::QhSpecialQ2(n),
            SpecialValue::QhSpecialNegQ(n),
        ] {
            ensure(special_value(id).equal, || format!("{id:?}"))?;
        }
    }
    Ok("I(m,n) exact for m, n <= 8; five special values for n <= 10".into())
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    suite_passes(SuiteId::NumericWeights, &SuiteConfig::default())?;
    let t = within_time(start, Duration::from_secs(30))?;
    Ok(format!("numeric measure suite at q in {{1/4, 1/2, 3/4}}, {t:.2?}"))
}

fn criterion_9() -> Verdict {
    for id in [SeriesId::Eq2_16, SeriesId::Eq2_17, SeriesId::Eq2_25, SeriesId::Eq2_26] {
        let v = series_identity_check(id, 8);
        ensure(v.holds(), || format!("{id} fails at coefficient {:?}", v.first_failure))?;
    }
    ensure(series_identity_check(SeriesId::Eq6_18, 10).holds(), || "w(n) nonzero for some 2 <= n <= 10".into())?;
    for n in 1..=4 {
        ensure(finite_jacobi_check(n), || format!("finite triple product at n = {n}"))?;
    }
    let cfg = NumericConfig::new(0.5).map_err(|e| e.to_string())?;
    let tail = jacobi_tail_residual(0.25, &cfg).map_err(|e| e.to_string())?;
    ensure(tail < 1e-10, || format!("theta tail residual {tail:.3e}"))?;
    Ok(format!("series exact through order 8, w(n) = 0 up to 10, tail residual {tail:.1e}"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Verdict); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {n}: PASS  {detail}"),
            Err(detail) => {
                println!("criterion {n}: FAIL  {detail}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
