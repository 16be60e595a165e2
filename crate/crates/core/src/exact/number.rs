use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::{ExactError, Rational};

/// Exact integer square root test.
///
/// Returns `Some(r)` with `r >= 0` and `r * r == n`, or `None` when `n` is not
/// a perfect square. Negative input is a domain error rather than `None`: the
/// callers that feed this (discriminants, determinants) are expected to handle
/// sign themselves, and a silent `None` would blur "negative" with "not a
/// square", which several certificates must keep apart.
pub fn is_perfect_square(n: &BigInt) -> Result<Option<BigInt>, ExactError> {
    if n.is_negative() {
        return Err(ExactError::NegativeInput(n.clone()));
    }
    let root = n.sqrt();
    if &(&root * &root) == n {
        Ok(Some(root))
    } else {
        Ok(None)
    }
}

/// Exact rational square test.
///
/// `Some(r)` with `r >= 0` and `r * r == q` iff `q` is the square of a
/// rational; negative input yields `None`. Since `q` is stored reduced, it is
/// a rational square exactly when numerator and denominator are both perfect
/// squares.
pub fn rational_is_square(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num = is_perfect_square(q.numer()).expect("numerator is non-negative")?;
    let den = is_perfect_square(q.denom()).expect("denominator is positive")?;
    Some(Rational::new(num, den))
}

/// All ordered pairs `(u, v)` of non-negative integers with `u^2 + v^2 = n`,
/// sorted by `u` ascending. `n = 0` yields `[(0, 0)]`; negative `n` has no
/// representations and yields the empty list.
pub fn two_square_representations(n: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    if n.is_negative() {
        return out;
    }
    let mut u = BigInt::zero();
    loop {
        let u_sq = &u * &u;
        if &u_sq > n {
            break;
        }
        let rest = n - &u_sq;
        if let Some(v) = is_perfect_square(&rest).expect("rest is non-negative") {
            out.push((u.clone(), v));
        }
        u += 1;
    }
    out
}
