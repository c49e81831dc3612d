//! Binomial tail `Pr(X >= k)` for `X ~ Bin(n, alpha(1 - alpha))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Alpha, Tail};

/// `P1* = Pr(X >= k_a)` and `Pr(X < k_a)`, both summed term by term.
///
/// Terms come from log-space pmf values; `ln C(n, k)` is advanced by the
/// ratio `(n - k) / (k + 1)` so no factorial table is needed and `n` may be
/// large without overflow or underflow of intermediate products.
pub fn p1_star(n: usize, k_a: usize, alpha: Alpha) -> Tail {
    if k_a == 0 {
        return Tail { tail: 1.0, complement: 0.0 };
    }
    if k_a > n {
        return Tail { tail: 0.0, complement: 1.0 };
    }
    let den2 = alpha.den() as f64 * alpha.den() as f64;
    let hit = alpha.num() as f64 * alpha.complement_num() as f64;
    // 1 - p as an exact integer ratio before going to floating point
    let miss = (alpha.den() as u128 * alpha.den() as u128 - alpha.num() as u128 * alpha.complement_num() as u128) as f64;
    let ln_p = (hit / den2).ln();
    let ln_q = (miss / den2).ln();

    let mut ln_choose = 0.0f64;
    let (mut lower, mut upper) = (0.0f64, 0.0f64);
    for k in 0..=n {
        let term = (ln_choose + k as f64 * ln_p + (n - k) as f64 * ln_q).exp();
        if k < k_a {
            lower += term;
        } else {
            upper += term;
        }
        if k < n {
            ln_choose += ((n - k) as f64).ln() - ((k + 1) as f64).ln();
        }
    }
    Tail { tail: upper, complement: lower }
}

/// Exact rational `(Pr(X >= k_a), Pr(X < k_a))`.
pub fn p1_star_exact(n: usize, k_a: usize, alpha: Alpha) -> (BigRational, BigRational) {
    let den = BigInt::from(alpha.den());
    let p = BigRational::new(BigInt::from(alpha.num()) * BigInt::from(alpha.complement_num()), &den * &den);
    let q = BigRational::one() - &p;
    let mut choose = BigInt::one();
    let (mut lower, mut upper) = (BigRational::zero(), BigRational::zero());
    let mut p_pow = vec![BigRational::one(); n + 1];
    let mut q_pow = vec![BigRational::one(); n + 1];
    for i in 1..=n {
        p_pow[i] = &p_pow[i - 1] * &p;
        q_pow[i] = &q_pow[i - 1] * &q;
    }
    for k in 0..=n {
        let term = BigRational::from_integer(choose.clone()) * &p_pow[k] * &q_pow[n - k];
        if k < k_a {
            lower += term;
        } else {
            upper += term;
        }
        choose = choose * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    (upper, lower)
}
