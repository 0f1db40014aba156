use std::fmt::Debug;

use proptest::prelude::*;
use slimsell_core::semiring::{Boolean, Real, SelMax, Semiring, Tropical};
use slimsell_core::INF;

fn check_axioms<S: Semiring>(
    s: &S,
    a: S::Scalar,
    b: S::Scalar,
    c: S::Scalar,
) -> Result<(), TestCaseError>
where
    S::Scalar: Debug,
{
    prop_assert_eq!(s.plus(a, b), s.plus(b, a));
    prop_assert_eq!(s.plus(s.plus(a, b), c), s.plus(a, s.plus(b, c)));
    prop_assert_eq!(s.times(s.times(a, b), c), s.times(a, s.times(b, c)));
    prop_assert_eq!(s.plus(a, s.zero()), a);
    prop_assert_eq!(s.times(a, s.one()), a);
    prop_assert_eq!(s.times(s.one(), a), a);
    prop_assert_eq!(s.times(a, s.zero()), s.zero());
    prop_assert_eq!(s.times(s.zero(), a), s.zero());
    prop_assert_eq!(
        s.times(a, s.plus(b, c)),
        s.plus(s.times(a, b), s.times(a, c))
    );
    prop_assert_eq!(
        s.times(s.plus(a, b), c),
        s.plus(s.times(a, c), s.times(b, c))
    );
    Ok(())
}

fn tropical_scalar() -> impl Strategy<Value = u32> {
    prop_oneof![Just(INF), 0u32..1000]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn tropical(a in tropical_scalar(), b in tropical_scalar(), c in tropical_scalar()) {
        check_axioms(&Tropical, a, b, c)?;
    }

    #[test]
    fn real(a in 0i32..64, b in -64i32..64, c in -64i32..64) {
        // small integers keep f64 arithmetic exact
        check_axioms(&Real, a as f64, b as f64, c as f64)?;
    }

    #[test]
    fn boolean(a in 0u8..2, b in 0u8..2, c in 0u8..2) {
        check_axioms(&Boolean, a, b, c)?;
    }

    #[test]
    fn selmax(a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        check_axioms(&SelMax, a, b, c)?;
    }
}

#[test]
fn identities_and_edge_values() {
    assert_eq!(
        (Tropical.zero(), Tropical.one(), Tropical.edge_value()),
        (INF, 0, 1)
    );
    assert_eq!(
        (Real.zero(), Real.one(), Real.edge_value()),
        (0.0, 1.0, 1.0)
    );
    assert_eq!(
        (Boolean.zero(), Boolean.one(), Boolean.edge_value()),
        (0, 1, 1)
    );
    assert_eq!((SelMax.zero(), SelMax.one()), (0, 1));
    assert_eq!(Tropical.pad_value(), Tropical.zero());
    assert_eq!(SelMax.pad_value(), 0);
}
