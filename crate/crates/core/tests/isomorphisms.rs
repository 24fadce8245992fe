mod common;

use zerocohom::cohomology::{cohomology_group, Variant};
use zerocohom::module::{trivial_bimodule, trivial_module, Bimodule};
use zerocohom::presentation::{enumerate, parse_presentation, Mode};
use zerocohom::semigroup::catalog::uvw_semigroup;
use zerocohom::{AbGroup, Int, IntMatrix, Module};

use common::{regular_module, suites, z};

#[test]
fn cohomology_reduces_to_a_left_ideal_with_identity() {
    suites::left_ideal_reduction();
}

#[test]
fn degree_three_of_completely_simple_reduces_to_the_group() {
    suites::completely_simple_reduction();
}

#[test]
fn bimodule_second_cohomology_of_uvw_never_vanishes() {
    let s = uvw_semigroup();
    let zero = |k: usize| IntMatrix::zeros(k, k);
    let mut bims: Vec<Bimodule<Int>> = common::groups()
        .iter()
        .map(|a| trivial_bimodule(&s, a))
        .collect();
    for a in [z(2), z(3), AbGroup::free(1)] {
        let k = a.ngens();
        for (l, r) in [
            (zero(k), IntMatrix::identity(k)),
            (IntMatrix::identity(k), zero(k)),
            (zero(k), zero(k)),
        ] {
            let b = Bimodule::new(s.clone(), a.clone(), vec![l.clone(); 4], vec![r.clone(); 4])
                .unwrap();
            b.validate().unwrap();
            bims.push(b);
        }
    }
    for b in &bims {
        let h = cohomology_group(b, 2, Variant::Bimodule).unwrap();
        assert!(!h.is_trivial(), "{:?}", b.group());
    }
}

#[test]
fn zero_free_monoids_have_no_second_cohomology() {
    let samples = [
        "gens: a; zeros: aaa",
        "gens: a b; zeros: aa, bb, aba, bab",
        "gens: a b; zeros: aa, bb, ab, ba",
        "gens: a b; zeros: aa, bb, aba",
    ];
    for text in samples {
        let p = parse_presentation(text).unwrap();
        let s = enumerate(&p, 100, Mode::Monoid)
            .unwrap()
            .complete()
            .unwrap()
            .semigroup;
        let mut ms: Vec<Module> = common::groups()
            .iter()
            .map(|a| trivial_module(&s, a))
            .collect();
        ms.push(regular_module(&s, 2));
        ms.push(regular_module(&s, 0));
        for m in &ms {
            m.validate().unwrap();
            for n in [2, 3] {
                let h = cohomology_group(m, n, Variant::Zero).unwrap();
                assert!(h.is_trivial(), "{text}: degree {n} is {h}");
            }
        }
    }
}
