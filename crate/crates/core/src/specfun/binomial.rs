//! Binomial coefficients: integer-exact for small n, log-gamma beyond.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest n for which the multiplicative u128 path is used.
const EXACT_LIMIT: u64 = 60;

/// Binomial coefficient C(n, k).
///
/// Integer-exact arithmetic for n ≤ 60 (the result is then correctly
/// rounded to the scalar type); log-gamma based beyond, relative error
/// ≤ 1e-12.
pub fn binomial<T: Scalar>(n: u64, k: u64) -> Result<T> {
    if k > n {
        return Err(Error::domain(format!(
            "binomial requires k <= n, got ({n}, {k})"
        )));
    }
    if n <= EXACT_LIMIT {
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 1..=k {
            // stays integral at every step: acc is C(n-k+i-1, i-1) * ...
            acc = acc * (n - k + i) as u128 / i as u128;
        }
        return Ok(T::of(acc as f64));
    }
    let ln = ln_gamma(T::of((n + 1) as f64))?
        - ln_gamma(T::of((k + 1) as f64))?
        - ln_gamma(T::of((n - k + 1) as f64))?;
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial::<f64>(4, 2).unwrap(), 6.0);
        assert_eq!(binomial::<f64>(0, 0).unwrap(), 1.0);
        assert_eq!(binomial::<f64>(10, 3).unwrap(), 120.0);
        assert_eq!(binomial::<f64>(60, 30).unwrap(), 118264581564861424.0f64);
    }

    #[test]
    fn pascal_recurrence_exact() {
        for n in 1..=30u64 {
            for k in 1..n {
                let lhs: f64 = binomial(n, k).unwrap();
                let rhs: f64 =
                    binomial::<f64>(n - 1, k - 1).unwrap() + binomial::<f64>(n - 1, k).unwrap();
                assert_eq!(lhs, rhs, "Pascal failed at ({n},{k})");
            }
        }
    }

    #[test]
    fn large_n_log_gamma_path() {
        // C(100, 50) = 100891344545564193334812497256
        let v: f64 = binomial(100, 50).unwrap();
        let exact = 1.00891344545564193334812497256e29;
        assert!((v - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn rejects_k_above_n() {
        assert!(binomial::<f64>(3, 4).is_err());
    }
}
