//! Exact arithmetic over Q and Q(sqrt 2), plus exact 3-vector algebra.
//!
//! Everything here is immutable after construction and may be shared freely
//! between threads.

mod scalar;
mod vec3;

pub use scalar::{ExactScalar, Rational};
pub use vec3::ExactVec3;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cross product of parallel vectors")]
    ParallelVectors,
    #[error("cannot parse scalar `{input}`: {reason}")]
    ParseScalar { input: String, reason: String },
}

#[cfg(test)]
mod proptests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-200i64..=200, 1i64..=40)
            .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
        (arb_rational(), arb_rational()).prop_map(|(rat, irr)| ExactScalar::new(rat, irr))
    }

    fn arb_rational_vec() -> impl Strategy<Value = ExactVec3> {
        ([-50i64..=50, -50i64..=50, -50i64..=50])
            .prop_map(|[x, y, z]| ExactVec3::from_ints(x, y, z))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms_hold_exactly(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            // associativity
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            // commutativity
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            // distributivity
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn inverse_is_exact(a in arb_scalar()) {
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(&a * &inv, ExactScalar::one());
            } else {
                prop_assert!(a.is_zero());
            }
        }

        #[test]
        fn equality_iff_canonical_fields_match(a in arb_scalar(), b in arb_scalar()) {
            let fields_match = a.rat == b.rat && a.irr == b.irr;
            prop_assert_eq!(a == b, fields_match);
        }

        #[test]
        fn exact_sign_agrees_with_float_embedding(a in arb_scalar()) {
            let f = a.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(a.signum(), if f > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn parse_display_roundtrip(a in arb_scalar()) {
            let text = a.to_string();
            let back: ExactScalar = text.parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn cross_is_orthogonal_to_both_inputs(u in arb_rational_vec(), v in arb_rational_vec()) {
            if let Ok(w) = u.cross(&v) {
                prop_assert!(u.dot(&w).is_zero());
                prop_assert!(v.dot(&w).is_zero());
            }
        }
    }
}
