//! q-integers, q-binomial coefficients and q-Pochhammer products.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::Scalar;

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u32) -> Scalar {
    Scalar::from_q_coeffs(&vec![BigInt::one(); n as usize])
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: u32) -> Scalar {
    (1..=n).map(q_int).product()
}

/// Coefficients (in powers of `q`) of the Gaussian binomial, built row by row from
/// `[m+1, j] = q^j [m, j] + [m, j-1]`.
fn q_binomial_coeffs(n: u32, k: u32) -> Vec<BigInt> {
    let k = k.min(n - k) as usize;
    // row[j] holds [m, j] as a q-coefficient vector
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 0..n as usize {
        let width = (m + 1).min(k) + 1;
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(width);
        for j in 0..width {
            let mut c: Vec<BigInt> = Vec::new();
            if j < row.len() {
                let prev = &row[j];
                c.resize(prev.len() + j, BigInt::zero());
                for (i, a) in prev.iter().enumerate() {
                    c[i + j] += a;
                }
            }
            if j >= 1 && j - 1 < row.len() {
                let prev = &row[j - 1];
                if c.len() < prev.len() {
                    c.resize(prev.len(), BigInt::zero());
                }
                for (i, a) in prev.iter().enumerate() {
                    c[i] += a;
                }
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Gaussian binomial `[n choose k]_q`; zero when `k < 0` or `k > n`.
pub fn q_binomial(n: i64, k: i64) -> Scalar {
    if n < 0 || k < 0 || k > n {
        return Scalar::zero();
    }
    Scalar::from_q_coeffs(&q_binomial_coeffs(n as u32, k as u32))
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `(x; q)_n = (1 - x)(1 - qx)...(1 - q^(n-1) x)` expanded in `x`.
pub fn q_pochhammer(n: u32) -> Poly {
    let mut acc = Poly::one();
    for j in 0..n {
        let factor = Poly::one() - Poly::term(Scalar::q_pow(j as i64), 1, 0);
        acc = &acc * &factor;
    }
    acc
}

/// `(a; q)_n` for a scalar `a`.
pub fn q_pochhammer_at(a: &Scalar, n: u32) -> Scalar {
    (0..n).map(|j| Scalar::one() - a * &Scalar::q_pow(j as i64)).product()
}

/// `(q; q)_n`.
pub fn q_shifted_factorial(n: u32) -> Scalar {
    q_pochhammer_at(&Scalar::q(), n)
}

/// `q^(k choose 2)` with the polynomial extension `k(k-1)/2` for negative `k`.
pub fn q_triangular(k: i64) -> Scalar {
    Scalar::q_pow(k * (k - 1) / 2)
}

/// `q^(n/2)` for any integer `n`, i.e. `v^n`.
pub fn q_half_pow(n: i64) -> Scalar {
    Scalar::v_pow(n)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::parse::parse_scalar;
    use num_rational::BigRational;

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(0), Scalar::zero());
        assert_eq!(q_int(1), Scalar::one());
        assert_eq!(q_int(3), parse_scalar("1+q+q^2").unwrap());
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(7, 0), Scalar::one());
        assert_eq!(q_binomial(4, 2), parse_scalar("1+q+2*q^2+q^3+q^4").unwrap());
        assert_eq!(q_binomial(2, 3), Scalar::zero());
        assert_eq!(q_binomial(3, -1), Scalar::zero());
    }

    /// Brute force: Pascal rule (2.1) from the base cases `[n,0] = [n,n] = 1`.
    fn pascal_oracle(n: i64, k: i64) -> Scalar {
        if k < 0 || k > n {
            return Scalar::zero();
        }
        if k == 0 || k == n {
            return Scalar::one();
        }
        Scalar::q_pow(k) * pascal_oracle(n - 1, k) + pascal_oracle(n - 1, k - 1)
    }

    #[test]
    fn q_binomial_matches_pascal_oracle() {
        for n in 0..=9 {
            for k in -1..=n + 1 {
                assert_eq!(q_binomial(n, k), pascal_oracle(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn q_binomial_matches_factorial_quotient() {
        for n in 0..=10u32 {
            for k in 0..=n {
                let f = q_factorial(n) / (q_factorial(k) * q_factorial(n - k));
                assert_eq!(q_binomial(n as i64, k as i64), f);
            }
        }
    }

    #[test]
    fn symmetric_and_both_pascal_rules() {
        for n in 0..=20i64 {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
            }
            for k in 0..=n + 1 {
                let lhs = q_binomial(n + 1, k);
                let r1 = Scalar::q_pow(k) * q_binomial(n, k) + q_binomial(n, k - 1);
                let r2 = q_binomial(n, k) + Scalar::q_pow(n + 1 - k) * q_binomial(n, k - 1);
                assert_eq!(lhs, r1, "(2.1) n={n} k={k}");
                assert_eq!(lhs, r2, "(2.2) n={n} k={k}");
            }
        }
    }

    #[test]
    fn q_binomial_at_v_one_is_binomial() {
        let one = BigRational::from_integer(1.into());
        for n in 0..=20i64 {
            for k in 0..=n {
                let r = q_binomial(n, k).eval_v(&one).unwrap();
                assert_eq!(r, BigRational::from_integer(binomial(n, k)));
            }
        }
    }

    #[test]
    fn q_pochhammer_values() {
        assert_eq!(q_pochhammer(0), Poly::one());
        let expected = crate::qcore::parse::parse_poly("1 - (1+q)*x + q*x^2").unwrap();
        assert_eq!(q_pochhammer(2), expected);
        for n in 0..=8u32 {
            let p = q_pochhammer(n);
            for k in 0..=n {
                let c = Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })
                    * q_triangular(k as i64)
                    * q_binomial(n as i64, k as i64);
                assert_eq!(p.coeff(k, 0), c, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn large_coefficients_do_not_overflow() {
        // central q-binomial coefficients near n = 60 exceed the i64 range
        let p = q_shifted_factorial(24);
        assert!(p.is_even_in_v());
        let b = q_binomial(60, 30);
        assert!(b.is_laurent());
    }
}
