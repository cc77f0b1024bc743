//! Exact rational arithmetic.
//!
//! Every probability in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. No floating
//! point is used anywhere in verification — the security theorems are
//! if-and-only-if statements and tolerances would make them untestable.
//! Decimal output, where offered, is explicitly an approximation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number. Backed by [`num::rational::BigRational`],
/// which normalizes on construction: lowest terms, denominator `> 0`.
pub type Rational = BigRational;

/// Builds `num/den` as an exact rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `0/1`.
pub fn zero() -> Rational {
    Rational::zero()
}

/// `1/1`.
pub fn one() -> Rational {
    Rational::one()
}

/// Strictly between 0 and 1.
pub fn is_strictly_between_zero_and_one(p: &Rational) -> bool {
    p.is_positive() && p < &one()
}

/// Renders `num/den` (canonical report form, always exact).
pub fn render(p: &Rational) -> String {
    format!("{}/{}", p.numer(), p.denom())
}

/// Decimal approximation for human-oriented output; callers must label it
/// as approximate.
pub fn approx(p: &Rational) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i32>(), 1..10_000i32).prop_map(|(n, d)| ratio(n as i64, d as i64))
    }

    proptest! {
        #[test]
        fn add_then_subtract_is_identity(p in arb_rational(), q in arb_rational()) {
            prop_assert_eq!((p.clone() + q.clone()) - q, p);
        }

        #[test]
        fn multiply_then_divide_is_identity(p in arb_rational(), q in arb_rational()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((p.clone() * q.clone()) / q, p);
        }

        #[test]
        fn lowest_terms_and_positive_denominator(p in arb_rational()) {
            prop_assert!(p.denom() > &BigInt::from(0));
            let g = num::integer::gcd(p.numer().clone(), p.denom().clone());
            prop_assert_eq!(g, BigInt::from(1));
        }
    }

    #[test]
    fn rendering_is_exact() {
        assert_eq!(render(&ratio(2, 4)), "1/2");
        assert_eq!(render(&ratio(-2, 4)), "-1/2");
        assert_eq!(render(&ratio(0, 7)), "0/1");
    }

    #[test]
    fn between_zero_and_one() {
        assert!(is_strictly_between_zero_and_one(&ratio(1, 3)));
        assert!(!is_strictly_between_zero_and_one(&ratio(0, 1)));
        assert!(!is_strictly_between_zero_and_one(&ratio(1, 1)));
        assert!(!is_strictly_between_zero_and_one(&ratio(-1, 3)));
    }
}
