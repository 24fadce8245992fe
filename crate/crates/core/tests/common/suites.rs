//! Property checks shared by the individual suites and the acceptance run.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zerocohom::brauer::enumerate_modifications;
use zerocohom::cohomology::{coboundary, cohomology_group, nerve, Cochain, Coefficients, Variant};
use zerocohom::module::{corner_module, trivial_bimodule, trivial_module, Bimodule, ZeroModule};
use zerocohom::natsys::{natsys_complex, NaturalSystem};
use zerocohom::partial::{enumerate_t_subsets, is_idempotent_pfactor};
use zerocohom::schur::FactorSet;
use zerocohom::semigroup::catalog::{
    all_monoids, all_semigroups, brandt2, chain, cyclic_group, full_transformations2, klein_four,
    left_zero, right_zero, symmetric_group3, uvw_semigroup,
};
use zerocohom::semigroup::{
    adjoin, direct_product, ideals, zero_cancellative_witness, Adjoin, Ideal, Semigroup,
};
use zerocohom::{AbGroup, Int, IntMatrix, Module};

use super::{groups, modules, monoid_zero_pool, regular_module, z, zero_pool};

pub fn random_value(a: &AbGroup, rng: &mut ChaCha8Rng) -> Vec<Int> {
    let raw: Vec<Int> = a
        .factors()
        .iter()
        .map(|d| {
            if d == &Int::from(0) {
                Int::from(rng.gen_range(-5i64..=5))
            } else {
                Int::from(rng.gen_range(0..1000i64))
            }
        })
        .collect();
    a.normalize(&raw)
}

pub fn random_cochain(
    s: &Semigroup,
    a: &AbGroup,
    n: usize,
    v: Variant,
    rng: &mut ChaCha8Rng,
) -> Cochain<Int> {
    let nv = nerve(s, n, v).unwrap();
    Cochain {
        degree: n,
        values: nv
            .tuples()
            .iter()
            .map(|t| (t.clone(), random_value(a, rng)))
            .collect(),
    }
}

pub fn assert_dd_zero<C: Coefficients<Int>>(c: &C, n: usize, v: Variant, rng: &mut ChaCha8Rng) {
    let f = random_cochain(c.semigroup(), c.group(), n, v, rng);
    let once = coboundary(c, &f, v).unwrap();
    let twice = coboundary(c, &once, v).unwrap();
    for (t, x) in &twice.values {
        assert!(
            c.group().is_zero_element(x),
            "∂∂f ≠ 0 at {t:?} (degree {n}, {v:?})"
        );
    }
}

/// Left regular action with the trivial right action.
pub fn left_regular_bimodule(s: &Semigroup) -> Option<Bimodule<Int>> {
    let m = regular_module(s, 3);
    let k = m.group().ngens();
    let right = vec![IntMatrix::identity(k); s.len()];
    let left = (0..s.len()).map(|x| m.action(x).clone()).collect();
    let b = Bimodule::new(s.clone(), m.group().clone(), left, right).ok()?;
    b.validate().ok().map(|_| b)
}

/// One randomized `∂∂ = 0` trial over every cochain variant.
pub fn dd_trial(pick: usize, module: usize, n: usize, seed: u64) {
    let pool = zero_pool();
    let s = &pool[pick % pool.len()];
    let ms = modules(s);
    let m = &ms[module % ms.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    assert_dd_zero(m, n, Variant::Zero, &mut rng);
    if s.len() <= 4 {
        assert_dd_zero(m, n, Variant::Em, &mut rng);
    }
    assert_dd_zero(
        &trivial_bimodule(s, &groups()[module % 5]),
        n,
        Variant::Bimodule,
        &mut rng,
    );
    if let Some(b) = left_regular_bimodule(s) {
        assert_dd_zero(&b, n, Variant::Bimodule, &mut rng);
    }
}

/// One randomized `ΔΔ = 0` trial for a natural system.
pub fn natsys_dd_trial(pick: usize, kind: usize, seed: u64) -> Result<(), String> {
    let pool = monoid_zero_pool();
    let s = &pool[pick % pool.len()];
    let d = match kind % 4 {
        0 => NaturalSystem::trivial_z(s).unwrap(),
        1 => NaturalSystem::from_zero_module(&regular_module(s, 2)).unwrap(),
        2 => NaturalSystem::from_zero_module(&regular_module(s, 0)).unwrap(),
        _ => NaturalSystem::from_zero_module(&trivial_module(s, &z(4))).unwrap(),
    };
    let top = if s.len() <= 4 { 3 } else { 2 };
    let cx = natsys_complex(&d, top).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..top {
        let moduli = &cx.moduli[n];
        let v: Vec<Int> = moduli
            .iter()
            .map(|m| {
                if m == &Int::from(0) {
                    Int::from(rng.gen_range(-9i64..=9))
                } else {
                    Int::from(rng.gen_range(0..64i64)) % m
                }
            })
            .collect();
        let w = cx.differentials[n + 1].mul_vec(&cx.differentials[n].mul_vec(&v));
        for (x, m) in w.iter().zip(&cx.moduli[n + 2]) {
            let r = if m == &Int::from(0) { x.clone() } else { x % m };
            if r != Int::from(0) {
                return Err(format!("ΔΔ ≠ 0 in degree {n} over {:?}", s.names()));
            }
        }
    }
    Ok(())
}

/// An element `e` of `members` with `ex = xe = x` for every member `x`.
fn identity_of(s: &Semigroup, members: &[usize]) -> Option<usize> {
    members.iter().copied().find(|&e| {
        members
            .iter()
            .all(|&x| s.mul(e, x) == x && s.mul(x, e) == x)
    })
}

/// Projection on the first of two `Z/2` summands for elements of `ideal`,
/// identity elsewhere. A module when the complement of `ideal` is closed.
fn projection_module(s: &Semigroup, ideal: &[usize]) -> Option<Module> {
    let outside: Vec<usize> = (0..s.len()).filter(|x| !ideal.contains(x)).collect();
    let closed = outside
        .iter()
        .all(|&x| outside.iter().all(|&y| outside.contains(&s.mul(x, y))));
    if !closed {
        return None;
    }
    let proj = IntMatrix::from_rows(vec![
        vec![Int::from(1), Int::from(0)],
        vec![Int::from(0), Int::from(0)],
    ]);
    let action = (0..s.len())
        .map(|x| {
            if ideal.contains(&x) {
                proj.clone()
            } else {
                IntMatrix::identity(2)
            }
        })
        .collect();
    let m = ZeroModule::new(s.clone(), groups()[4].clone(), action).ok()?;
    m.validate_total().ok().map(|_| m)
}

fn catalogue() -> Vec<Semigroup> {
    let mut out = all_semigroups(3);
    out.extend(all_monoids(3));
    out.extend([
        right_zero(3),
        chain(3),
        full_transformations2(),
        brandt2(),
        uvw_semigroup(),
        adjoin(&cyclic_group(2), Adjoin::Identity),
        adjoin(&right_zero(2), Adjoin::Identity),
        direct_product(&right_zero(2), &cyclic_group(2)),
    ]);
    out
}

/// EM cohomology of `S` equals that of a left ideal with identity `e`
/// acting on `eA`. Returns the number of (ideal, module, degree) cases.
pub fn left_ideal_reduction() -> usize {
    let mut cases = 0;
    let mut proper = 0;
    for s in catalogue() {
        let mut seen = Vec::new();
        for x in 0..s.len() {
            let members: Vec<usize> = (0..s.len()).filter(|&y| s.left_ideal_of(x)[y]).collect();
            if seen.contains(&members) {
                continue;
            }
            seen.push(members.clone());
            let Some(e) = identity_of(&s, &members) else {
                continue;
            };
            if members.len() < s.len() {
                proper += 1;
            }
            let mut ms = vec![
                trivial_module(&s, &z(2)),
                trivial_module(&s, &AbGroup::free(1)),
            ];
            let reg = regular_module(&s, 2);
            if reg.validate_total().is_ok() {
                ms.push(reg);
            }
            ms.extend(projection_module(&s, &members));
            for m in &ms {
                let (corner, _) = corner_module(m, e, &members).unwrap();
                for n in 0..=2 {
                    let whole = cohomology_group(m, n, Variant::Em).unwrap();
                    let part = cohomology_group(&corner, n, Variant::Em).unwrap();
                    cases += 1;
                    assert_eq!(
                        whole,
                        part,
                        "{:?} with left ideal {members:?}, degree {n}",
                        s.names()
                    );
                }
            }
        }
    }
    assert!(
        proper >= 3,
        "only {proper} proper left ideals with identity"
    );
    cases
}

/// `I × Λ` rectangular band times a group: completely simple.
fn completely_simple(i: usize, lambda: usize, g: &Semigroup) -> Semigroup {
    direct_product(&direct_product(&left_zero(i), &right_zero(lambda)), g)
}

/// Degree-3 EM cohomology of a completely simple semigroup equals that of
/// its structure group. Returns the number of cases.
pub fn completely_simple_reduction() -> usize {
    let mut count = 0;
    let cases = [
        (2, 1, cyclic_group(2)),
        (1, 2, cyclic_group(2)),
        (2, 2, cyclic_group(1)),
        (2, 1, cyclic_group(3)),
    ];
    for (i, lambda, g) in cases {
        let s = completely_simple(i, lambda, &g);
        let e = (0..s.len()).find(|&x| s.mul(x, x) == x).unwrap();
        let corner: Vec<usize> = (0..s.len())
            .filter(|&x| s.mul(s.mul(e, x), e) == x)
            .collect();
        assert_eq!(corner.len(), g.len());
        let mut ms = vec![
            trivial_module(&s, &z(2)),
            trivial_module(&s, &z(3)),
            trivial_module(&s, &AbGroup::free(1)),
        ];
        if g.len() == 2 {
            // the group element acts by -1 on Z/3
            let neg = IntMatrix::from_rows(vec![vec![Int::from(-1)]]);
            let action = (0..s.len())
                .map(|x| {
                    if x % 2 == 1 {
                        neg.clone()
                    } else {
                        IntMatrix::identity(1)
                    }
                })
                .collect();
            let m = ZeroModule::new(s.clone(), z(3), action).unwrap();
            m.validate_total().unwrap();
            ms.push(m);
        }
        for m in &ms {
            let (c, _) = corner_module(m, e, &corner).unwrap();
            let whole = cohomology_group(m, 3, Variant::Em).unwrap();
            let group = cohomology_group(&c, 3, Variant::Em).unwrap();
            count += 1;
            assert_eq!(whole, group, "{i}x{lambda} over order {}", g.len());
        }
    }
    count
}

/// Idempotent factor sets with coefficients in `Z/2` are exactly the
/// `ε_I`, one per ideal. Returns the number of monoids checked.
pub fn idempotents_match_ideals(max_order: usize) -> usize {
    let mut checked = 0;
    for order in 1..=max_order {
        for s in all_monoids(order) {
            checked += 1;
            let a = z(2);
            let others: Vec<(usize, usize)> = (0..order)
                .flat_map(|x| (0..order).map(move |y| (x, y)))
                .collect();
            let mut found: BTreeSet<Ideal> = BTreeSet::new();
            let mut count = 0;
            for mask in 0u32..(1 << others.len()) {
                let zeros: Vec<(usize, usize)> = (0..others.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| others[i])
                    .collect();
                let f = FactorSet::from_fn(&s, &a, |x, y| {
                    if zeros.contains(&(x, y)) {
                        None
                    } else {
                        Some(a.zero_element())
                    }
                })
                .unwrap();
                if f.validate().is_err() {
                    continue;
                }
                count += 1;
                let ideal = f.support_ideal().unwrap();
                // the zero set is exactly the pairs whose product lies in the ideal
                for x in 0..order {
                    for y in 0..order {
                        assert_eq!(zeros.contains(&(x, y)), ideal.contains(s.mul(x, y)));
                    }
                }
                assert_eq!(FactorSet::epsilon(&s, &a, &ideal), f);
                assert!(found.insert(ideal), "two idempotents with the same ideal");
            }
            let mut expected: BTreeSet<Ideal> = ideals(&s).into_iter().collect();
            expected.insert(Ideal::empty());
            assert_eq!(found, expected, "{:?}", s.names());
            assert_eq!(count, expected.len());
        }
    }
    checked
}

pub fn small_groups() -> Vec<Semigroup> {
    let mut out: Vec<Semigroup> = (1..=6).map(cyclic_group).collect();
    out.push(klein_four());
    out.push(symmetric_group3());
    out
}

struct Pairs {
    n: usize,
    one: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl Pairs {
    fn new(g: &Semigroup) -> Self {
        let n = g.len();
        let one = g.identity().unwrap();
        let mul = (0..n * n).map(|k| g.mul(k / n, k % n)).collect();
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| g.mul(x, y) == one).unwrap())
            .collect();
        Pairs { n, one, mul, inv }
    }

    /// The three images demanded by the idempotent factor-set condition.
    fn images(&self, x: usize, y: usize) -> [(usize, usize); 3] {
        let n = self.n;
        [
            (self.mul[x * n + y], self.inv[y]),
            (self.inv[y], self.inv[x]),
            (x, self.one),
        ]
    }

    fn satisfies_condition(&self, set: &[bool]) -> bool {
        let n = self.n;
        (0..n * n).filter(|&k| set[k]).all(|k| {
            self.images(k / n, k % n)
                .iter()
                .all(|&(a, b)| set[a * n + b])
        })
    }

    fn closure(&self, seed: &[usize]) -> Vec<bool> {
        let n = self.n;
        let mut set = vec![false; n * n];
        let mut queue: VecDeque<usize> = seed.iter().copied().collect();
        while let Some(k) = queue.pop_front() {
            if set[k] {
                continue;
            }
            set[k] = true;
            for (a, b) in self.images(k / n, k % n) {
                queue.push_back(a * n + b);
            }
        }
        set
    }

    /// Every closed set, as unions of closures of single pairs.
    fn closed_sets(&self) -> BTreeSet<Vec<bool>> {
        let n = self.n;
        let principal: Vec<Vec<bool>> = (0..n * n).map(|k| self.closure(&[k])).collect();
        let mut out = BTreeSet::new();
        let mut queue = VecDeque::from([vec![false; n * n]]);
        while let Some(set) = queue.pop_front() {
            if !out.insert(set.clone()) {
                continue;
            }
            for p in &principal {
                let u: Vec<bool> = set.iter().zip(p).map(|(a, b)| *a || *b).collect();
                if !out.contains(&u) {
                    queue.push_back(u);
                }
            }
        }
        out
    }
}

fn library_accepts(g: &Semigroup, set: &[bool]) -> bool {
    is_idempotent_pfactor(g, set).unwrap().is_none()
}

/// Closedness of a subset of at most 64 pairs given as a bitmask.
fn closed_mask(images: &[[usize; 3]], mask: u64) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if images[k].iter().any(|&i| mask >> i & 1 == 0) {
            return false;
        }
    }
    true
}

/// Scope of [`condition_matches_closure`].
#[derive(Debug, Default)]
pub struct ClosureCheck {
    pub subsets: u64,
    /// Orders of the groups on which every subset was checked.
    pub exhaustive: Vec<usize>,
    /// Orders covered by closed sets, their one-point changes and random
    /// subsets only.
    pub sampled: Vec<usize>,
}

/// The idempotent factor-set condition holds exactly on closed subsets, and
/// the library enumerates exactly the closed subsets. Every subset is
/// checked for groups of order at most `exhaustive_up_to`; larger groups get
/// closed sets, their one-point changes and `random` random subsets.
pub fn condition_matches_closure(
    exhaustive_up_to: usize,
    random: usize,
    seed: u64,
) -> ClosureCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ClosureCheck::default();
    for g in small_groups() {
        let p = Pairs::new(&g);
        let n = p.n;
        let base = p.one * n + p.one;
        let closed = p.closed_sets();
        let library: BTreeSet<Vec<bool>> = enumerate_t_subsets(&g)
            .unwrap()
            .iter()
            .map(|t| t.members().to_vec())
            .collect();
        assert_eq!(closed, library, "closed subsets of a group of order {n}");
        if n <= exhaustive_up_to {
            out.exhaustive.push(n);
            let images: Vec<[usize; 3]> = (0..n * n)
                .map(|k| p.images(k / n, k % n).map(|(a, b)| a * n + b))
                .collect();
            let free: Vec<usize> = (0..n * n).filter(|&k| k != base).collect();
            let mut set = vec![false; n * n];
            set[base] = true;
            let mut accepted = 0;
            for mask in 0u64..(1 << free.len()) {
                let mut full = 1u64 << base;
                for (i, &k) in free.iter().enumerate() {
                    let bit = mask >> i & 1 == 1;
                    set[k] = bit;
                    if bit {
                        full |= 1 << k;
                    }
                }
                let expected = closed_mask(&images, full);
                assert_eq!(
                    library_accepts(&g, &set),
                    expected,
                    "order {n}, set {set:?}"
                );
                if expected {
                    accepted += 1;
                    assert!(closed.contains(&set));
                }
                out.subsets += 1;
            }
            assert_eq!(accepted, closed.iter().filter(|c| c[base]).count());
            continue;
        }
        out.sampled.push(n);
        let mut check = |set: &Vec<bool>| {
            out.subsets += 1;
            assert_eq!(
                library_accepts(&g, set),
                p.satisfies_condition(set),
                "order {n}, set {set:?}"
            );
            assert_eq!(p.satisfies_condition(set), closed.contains(set));
        };
        for c in closed.iter().filter(|c| c[base]) {
            check(c);
            for k in 0..n * n {
                if k == base {
                    continue;
                }
                let mut other = c.clone();
                other[k] = !other[k];
                check(&other);
            }
        }
        for _ in 0..random {
            let mut set: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(0.7)).collect();
            set[base] = true;
            check(&set);
        }
    }
    out.exhaustive.sort_unstable();
    out.exhaustive.dedup();
    out.sampled.sort_unstable();
    out.sampled.dedup();
    out
}

/// Every modification of a group of order at most 6 is 0-cancellative and
/// its non-units form a nilpotent ideal. Returns the number checked.
pub fn modification_structure() -> usize {
    let mut checked = 0;
    for g in small_groups() {
        let mods = enumerate_modifications(&g).unwrap();
        assert!(mods.iter().any(|m| m.is_trivial()));
        for m in &mods {
            checked += 1;
            assert_eq!(m.structure_failure(), None);
            let s = m.semigroup();
            assert_eq!(zero_cancellative_witness(s), None);
            let units = s.units();
            let rest: Vec<usize> = (0..s.len()).filter(|x| !units.contains(x)).collect();
            // the non-units form an ideal
            for &x in &rest {
                for y in 0..s.len() {
                    assert!(rest.contains(&s.mul(x, y)) && rest.contains(&s.mul(y, x)));
                }
            }
            // and every product of |rest| non-units is zero
            let zero = s.zero().unwrap();
            let mut power: BTreeSet<usize> = rest.iter().copied().collect();
            for _ in 1..rest.len().max(1) {
                power = power
                    .iter()
                    .flat_map(|&a| rest.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| s.mul(a, b))
                    .collect();
            }
            assert!(
                power.iter().all(|&x| x == zero),
                "non-units are not nilpotent"
            );
        }
    }
    checked
}
