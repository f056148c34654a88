//! Exact coefficient arithmetic: rationals, Laurent polynomials over Q, dense
//! polynomials, and cyclotomic polynomials.

mod cyclotomic;
mod laurent;
mod poly;

pub use cyclotomic::{
    cyclotomic, distinct_prime_factors, euler_phi, is_prime_power, prime_power_decomposition,
    FACTOR_GUARD,
};
pub use laurent::LaurentPoly;
pub use poly::Poly;

/// Arbitrary-precision rational numbers; always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand used throughout for rationals built from small integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(num_bigint::BigInt::from(n), num_bigint::BigInt::from(d))
}

/// A nonzero Laurent polynomial considered up to multiplication by `±t^k`,
/// stored via its canonical representative (lowest exponent 0, positive
/// leading coefficient).  Rational rescaling is deliberately *not* quotiented:
/// `3t − 3` and `t − 1` are distinct classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitClass {
    rep: LaurentPoly,
}

impl UnitClass {
    /// Panics on the zero polynomial, which has no unit class.
    pub fn new(p: &LaurentPoly) -> Self {
        assert!(!p.is_zero(), "the zero polynomial has no unit class");
        UnitClass { rep: p.unit_normalize() }
    }

    pub fn rep(&self) -> &LaurentPoly {
        &self.rep
    }

    pub fn eval_at_one(&self) -> Rational {
        self.rep.eval_at_one()
    }

    /// Class of the k-th power (well-defined on classes).
    pub fn pow(&self, k: u32) -> Self {
        UnitClass::new(&self.rep.pow(k))
    }
}

impl std::fmt::Display for UnitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.rep.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (
            -4i64..4,
            proptest::collection::vec((-6i64..6, 1i64..4), 0..6),
        )
            .prop_map(|(low, cs)| {
                LaurentPoly::new(low, cs.into_iter().map(|(n, d)| rat(n, d)).collect())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_commutes_and_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn distributivity(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn involution_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).involution(), &a.involution() * &b.involution());
            prop_assert_eq!((&a + &b).involution(), &a.involution() + &b.involution());
        }

        #[test]
        fn unit_normalize_constant_on_unit_orbit(a in arb_poly(), k in -5i64..5, flip in any::<bool>()) {
            let mut u = a.shift(k);
            if flip { u = -&u; }
            prop_assert_eq!(a.unit_normalize(), u.unit_normalize());
            prop_assert!(a.unit_eq(&u));
        }

        #[test]
        fn unit_normalize_is_idempotent(a in arb_poly()) {
            let n = a.unit_normalize();
            prop_assert_eq!(n.clone(), n.unit_normalize());
        }

        #[test]
        fn exact_division_roundtrip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            let q = prod.div_exact(&b).expect("constructed product must divide");
            prop_assert_eq!(q, a);
        }
    }
}
