mod common;

use common::{floor_times, Surd};
use num_bigint::BigInt;
use proptest::prelude::*;
use walklab_core::qarith::{floor_scaled, FloorStream};
use walklab_core::QuadraticSurd;

fn surd(s: Surd) -> QuadraticSurd {
    QuadraticSurd::new(s.a, s.b, s.d as u64, s.c).unwrap()
}

fn non_square(d: i64) -> bool {
    let r = (d as f64).sqrt().round() as i64;
    r * r != d
}

fn arb_surd() -> impl Strategy<Value = Surd> {
    (-40i64..40, -12i64..12, 2i64..60, 1i64..25)
        .prop_filter("irrational", |&(_, b, d, _)| b != 0 && non_square(d))
        .prop_map(|(a, b, d, c)| Surd { a, b, d, c })
}

proptest! {
    #[test]
    fn floor_scaled_matches_bisection(s in arb_surd(), j in 0u64..1_000_000) {
        prop_assert_eq!(floor_scaled(j, &surd(s)), floor_times(j as i64, s));
    }

    #[test]
    fn stream_matches_bisection(s in arb_surd(), skip in 0usize..200) {
        let mut stream = FloorStream::new(&surd(s));
        for j in 1..=(skip as i64 + 50) {
            let got = stream.next_floor();
            prop_assert_eq!(BigInt::from(got), floor_times(j, s), "j = {}", j);
        }
    }
}

#[test]
fn fixtures_near_a_million() {
    for s in [common::SQRT2M1, common::HALF_SQRT2M1, common::XI4, common::SQRT3_HALF] {
        for j in (999_000..=1_000_000).step_by(7) {
            assert_eq!(floor_scaled(j, &surd(s)), floor_times(j as i64, s));
        }
    }
}

#[test]
fn stream_fixtures_long_run() {
    for s in [common::SQRT2M1, common::XI4, Surd { a: 0, b: 2, d: 2, c: 1 }] {
        let mut stream = FloorStream::new(&surd(s));
        for j in 1..=30_000i64 {
            assert_eq!(BigInt::from(stream.next_floor()), floor_times(j, s), "j = {j}");
        }
    }
}
