mod common;

use proptest::prelude::*;

use zerocohom::cohomology::{nerve, Variant};

use common::{suites, zero_pool};

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn coboundary_squares_to_zero(pick in any::<usize>(), module in any::<usize>(), n in 0usize..3, seed in any::<u64>()) {
        suites::dd_trial(pick, module, n, seed);
    }

    #[test]
    fn natural_system_coboundary_squares_to_zero(pick in any::<usize>(), kind in 0usize..4, seed in any::<u64>()) {
        let r = suites::natsys_dd_trial(pick, kind, seed);
        prop_assert!(r.is_ok(), "{}", r.unwrap_err());
    }
}

#[test]
fn faces_of_zero_nerve_tuples_stay_in_the_nerve() {
    for s in zero_pool() {
        for n in 1..=3 {
            let cur = nerve(&s, n, Variant::Zero).unwrap();
            let prev = nerve(&s, n - 1, Variant::Zero).unwrap();
            for t in cur.tuples() {
                assert!(prev.position(&t[1..]).is_some());
                assert!(prev.position(&t[..n - 1]).is_some());
                for i in 0..n - 1 {
                    let mut f = t[..i].to_vec();
                    f.push(s.mul(t[i], t[i + 1]));
                    f.extend_from_slice(&t[i + 2..]);
                    assert!(prev.position(&f).is_some(), "{f:?} from {t:?}");
                }
            }
        }
    }
}
