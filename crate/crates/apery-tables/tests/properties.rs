//! Property-based invariants for the numeric kernels: ball arithmetic must
//! enclose exact rational arithmetic, and the lcm ladder must agree with a
//! brute-force fold.

use num_integer::Integer;
use proptest::prelude::*;

use apery_tables::ball::BallReal;
use apery_tables::integrality::LcmCache;
use apery_tables::poly::Rat;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-10_000i64..10_000, 1i64..10_000)
        .prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn ball_mul_encloses_exact_product(a in small_rat(), b in small_rat(), digits in 12u32..40) {
        let ba = BallReal::from_rational(&a, digits);
        let bb = BallReal::from_rational(&b, digits);
        let prod = ba.mul(&bb);
        prop_assert!(prod.contains_rat(&(&a * &b)));
    }

    #[test]
    fn ball_add_sub_enclose_exact_values(a in small_rat(), b in small_rat(), digits in 12u32..40) {
        let ba = BallReal::from_rational(&a, digits);
        let bb = BallReal::from_rational(&b, digits);
        prop_assert!(ba.add(&bb).contains_rat(&(&a + &b)));
        prop_assert!(ba.sub(&bb).contains_rat(&(&a - &b)));
    }

    #[test]
    fn ball_addition_reassociates_within_radii(
        a in small_rat(), b in small_rat(), c in small_rat(), digits in 12u32..30
    ) {
        let (ba, bb, bc) = (
            BallReal::from_rational(&a, digits),
            BallReal::from_rational(&b, digits),
            BallReal::from_rational(&c, digits),
        );
        let left = ba.add(&bb).add(&bc);
        let right = ba.add(&bb.add(&bc));
        prop_assert!(left.overlaps(&right));
        prop_assert!(left.contains_rat(&(&a + &b + &c)));
    }

    #[test]
    fn ball_div_encloses_exact_quotient(a in small_rat(), b in small_rat(), digits in 12u32..40) {
        prop_assume!(!num_traits::Zero::is_zero(&b));
        let ba = BallReal::from_rational(&a, digits);
        let bb = BallReal::from_rational(&b, digits);
        if let Ok(q) = ba.div(&bb) {
            prop_assert!(q.contains_rat(&(&a / &b)));
        }
    }

    #[test]
    fn lcm_cache_matches_brute_fold(n in 1u32..400) {
        let cache = LcmCache::new(n);
        let mut acc = num_bigint::BigInt::from(1);
        for k in 1..=n {
            acc = acc.lcm(&k.into());
        }
        prop_assert_eq!(cache.get(n).clone(), acc);
    }
}
