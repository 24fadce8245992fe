#![allow(dead_code)]

pub mod suites;

use zerocohom::module::{trivial_module, ZeroModule};
use zerocohom::semigroup::catalog::{
    all_monoids, all_semigroups, brandt2, chain, cyclic_group, mitchell_quotient, monogenic,
    null_semigroup, uvw_semigroup,
};
use zerocohom::semigroup::{adjoin, Adjoin, Semigroup};
use zerocohom::{AbGroup, Int, IntMatrix, Module};

pub fn z(n: i64) -> AbGroup {
    AbGroup::cyclic(Int::from(n))
}

pub fn groups() -> Vec<AbGroup> {
    vec![
        z(2),
        z(3),
        z(4),
        AbGroup::free(1),
        AbGroup::from_orders(&[Int::from(2), Int::from(2)]),
    ]
}

/// Small semigroups with a designated zero.
pub fn zero_pool() -> Vec<Semigroup> {
    let mut out: Vec<Semigroup> = all_semigroups(3)
        .into_iter()
        .filter(Semigroup::has_zero)
        .collect();
    out.extend([
        uvw_semigroup(),
        brandt2(),
        mitchell_quotient(),
        chain(3),
        null_semigroup(&["a", "b"]),
        adjoin(&cyclic_group(2), Adjoin::Zero),
        adjoin(&cyclic_group(3), Adjoin::Zero),
        monogenic(3, 1),
    ]);
    out.retain(Semigroup::has_zero);
    out
}

/// Monoids with zero.
pub fn monoid_zero_pool() -> Vec<Semigroup> {
    let mut out: Vec<Semigroup> = all_monoids(3)
        .into_iter()
        .filter(Semigroup::has_zero)
        .collect();
    out.extend([
        adjoin(&uvw_semigroup(), Adjoin::Identity),
        adjoin(&brandt2(), Adjoin::Identity),
        adjoin(&null_semigroup(&["a", "b"]), Adjoin::Identity),
        adjoin(&cyclic_group(2), Adjoin::Zero),
        chain(3),
    ]);
    out.retain(|s| s.has_zero() && s.is_monoid() && s.len() > 1);
    out
}

/// The free module on `S∖0` over `A = Z/m` (or `Z` for `m = 0`), with
/// `s·[t] = [st]` and `[st] = 0` when `st` is the zero. The zero acts as 0.
pub fn regular_module(s: &Semigroup, m: i64) -> Module {
    let basis = s.nonzero();
    let k = basis.len();
    let a = AbGroup::from_orders(&vec![Int::from(m); k]);
    let pos = |x: usize| basis.iter().position(|&b| b == x);
    let action = (0..s.len())
        .map(|x| {
            IntMatrix::from_fn(k, k, |i, j| {
                let target = s.mul(x, basis[j]);
                if !s.is_zero(target) && pos(target) == Some(i) && !s.is_zero(x) {
                    Int::from(1)
                } else {
                    Int::from(0)
                }
            })
        })
        .collect();
    ZeroModule::new(s.clone(), a, action).expect("regular action is an endomorphism")
}

/// A few modules over `s`: trivial ones and regular ones.
pub fn modules(s: &Semigroup) -> Vec<Module> {
    let mut out: Vec<Module> = groups().iter().map(|a| trivial_module(s, a)).collect();
    if !s.nonzero().is_empty() {
        out.push(regular_module(s, 2));
        out.push(regular_module(s, 0));
    }
    out
}
