//! Deterministic dyadic approximation of 2^t for rational t.
//!
//! Integer exponents are exact. Otherwise the exponent is floored onto the
//! 2^-46 grid and the fractional part is assembled from a fixed table of
//! repeated square roots of 2 in 100-bit fixed point, so every call returns
//! the same exact rational and the total error stays far below the 2^-40
//! budget that callers advertise.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use std::sync::OnceLock;

const EXP_BITS: u32 = 46;
const FIXED_BITS: u32 = 100;
const OUT_BITS: u32 = 50;

/// s[i] ≈ 2^(2^-(i+1)) in FIXED_BITS fixed point, i = 0..EXP_BITS.
fn sqrt_table() -> &'static Vec<BigInt> {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(EXP_BITS as usize);
        let one_fixed = BigInt::one() << FIXED_BITS;
        let mut cur = (BigInt::from(2) << (2 * FIXED_BITS)).sqrt();
        for _ in 0..EXP_BITS {
            table.push(cur.clone());
            cur = (&cur * &one_fixed).sqrt();
        }
        table
    })
}

/// Approximation of 2^t: exact for integer t, otherwise a fixed dyadic
/// rational within 2^-45 of the true value (relative).
pub fn pow2_approx(t: &Rational) -> Rational {
    if t.is_integer() {
        return Rational::pow2(t.floor().to_i64().expect("exponent fits in i64"));
    }
    let snapped = t.round_dyadic_down(EXP_BITS);
    let e = snapped.floor();
    let frac = &snapped - &Rational::from_big(e.clone(), BigInt::one());
    // frac = m / 2^EXP_BITS with 0 < m < 2^EXP_BITS.
    let m = (&frac * &Rational::pow2(EXP_BITS as i64)).floor();
    let m = m.to_u64().expect("fraction numerator fits in u64");
    let mut acc = BigInt::one() << FIXED_BITS;
    let table = sqrt_table();
    for (i, s) in table.iter().enumerate() {
        if (m >> (EXP_BITS as usize - 1 - i)) & 1 == 1 {
            acc = (&acc * s) >> FIXED_BITS;
        }
    }
    let e = e.to_i64().expect("exponent fits in i64");
    &Rational::from_big(acc, BigInt::one() << FIXED_BITS) * &Rational::pow2(e)
}

/// The y-action conjugated through the logistic chart: with y = f(z) for
/// f(z) = 1/(1+2^-z), return f(z + s) computed from y alone.
///
/// Exact for integer s; otherwise rounded onto the 2^-50 grid.
pub fn logistic_shift(y: &Rational, s: &Rational) -> Rational {
    debug_assert!(*y > Rational::zero() && *y < Rational::one());
    let c = pow2_approx(&-s);
    let one = Rational::one();
    let shifted = y / &(y + &(&(&one - y) * &c));
    if s.is_integer() {
        shifted
    } else {
        shifted.round_dyadic_down(OUT_BITS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn integer_exponents_exact() {
        assert_eq!(pow2_approx(&rat(3, 1)), rat(8, 1));
        assert_eq!(pow2_approx(&rat(-2, 1)), rat(1, 4));
        assert_eq!(pow2_approx(&Rational::zero()), rat(1, 1));
    }

    #[test]
    fn half_exponent_close_to_sqrt2() {
        let v = pow2_approx(&rat(1, 2));
        // (2^(1/2))^2 = 2 within a comfortable dyadic tolerance.
        let err = (&(&v * &v) - &rat(2, 1)).abs();
        assert!(err < Rational::pow2(-42), "err = {}", err);
    }

    #[test]
    fn negative_fraction_consistent_with_reciprocal() {
        let p = pow2_approx(&rat(1, 3));
        let n = pow2_approx(&rat(-1, 3));
        let err = (&(&p * &n) - &Rational::one()).abs();
        assert!(err < Rational::pow2(-42), "err = {}", err);
    }

    #[test]
    fn monotone_on_a_sample_grid() {
        let mut prev = pow2_approx(&rat(-3, 1));
        for k in -23..=24i64 {
            let v = pow2_approx(&rat(k, 8));
            if k > -24 {
                assert!(v >= prev);
            }
            prev = v;
        }
    }

    #[test]
    fn logistic_shift_integer_exact() {
        // f(0)=1/2 shifted by 1 is f(1)=2/3.
        assert_eq!(logistic_shift(&rat(1, 2), &rat(1, 1)), rat(2, 3));
        assert_eq!(logistic_shift(&rat(1, 2), &rat(-1, 1)), rat(1, 3));
        // Integer round trip is exact for any starting value.
        let y = rat(3, 7);
        let fwd = logistic_shift(&y, &rat(5, 1));
        assert_eq!(logistic_shift(&fwd, &rat(-5, 1)), y);
    }

    #[test]
    fn deterministic() {
        let a = pow2_approx(&rat(7, 13));
        let b = pow2_approx(&rat(7, 13));
        assert_eq!(a, b);
    }
}
