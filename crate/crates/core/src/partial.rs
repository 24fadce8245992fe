//! Partial projective representations at the level of factor sets: the
//! monoid 𝒯 acting on `G × G`, idempotent factor sets and their supports,
//! the Exel monoid `Σ(G)` and the passage from its factor sets to factor
//! sets of `G`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::abelian::{decompose_table, AbelianError};
use crate::linalg::Matrix;
use crate::presentation::{
    enumerate, parse_presentation, Enumerated, Mode, PresentationError, Word,
};
use crate::schur::{schur_multiplier, FactorSet, SchurError, SemilatticeOfGroups, Value};
use crate::semigroup::catalog::cyclic_group;
use crate::semigroup::{c0s_decompose, C0sDecomposition, Ideal, Semigroup, SemigroupError};
use crate::{AbGroup, Hom, Int};

/// 𝒯 on generators `A = α`, `B = β`, `C = γ`.
pub const T_PRESENTATION: &str =
    "gens: A B C; rels: AA=1, BB=1, ABABAB=1, CC=C, AC=C, CABC=CBAB; zeros: CBC";

pub const MAX_T_GROUP: usize = 8;
pub const MAX_T_SUBSETS: usize = 1 << 20;
pub const MAX_EXEL_GROUP: usize = 6;
/// Bounds for [`partial_multiplier`] on `|G|` and `|A|`.
pub const MAX_PM_GROUP: usize = 3;
pub const MAX_PM_COEFFICIENTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartialError {
    #[error("not a group")]
    NotAGroup,
    #[error("enumeration too large: {0}")]
    CapExceeded(String),
    #[error("structure of 𝒯 is wrong: {0}")]
    TStructure(String),
    #[error("expected {expected} values, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("value at ({x}, {y}) is not an element of the coefficient group")]
    BadValue { x: usize, y: usize },
    #[error("σ(1, 1) must be nonzero")]
    NotNormalized,
    #[error("support is not 𝒯-closed: {0}")]
    NotClosed(ConditionFailure),
    #[error("cocycle identity fails at ({x}, {y}, {z})")]
    CocycleLaw { x: usize, y: usize, z: usize },
    #[error("division by zero at ({x}, {y})")]
    DivisionUndefined { x: usize, y: usize },
    #[error("factor set was not produced by a certified construction")]
    UncertifiedInput,
    #[error("factor sets live over different groups or semigroups")]
    Mismatch,
    #[error("map is not a partial homomorphism at ({x}, {y})")]
    NotAPartialHomomorphism { x: usize, y: usize },
    #[error("the canonical brackets do not generate the model")]
    NotGenerated,
    #[error("partial homomorphism does not factor through the Exel monoid")]
    NoFactorization,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Identity and inverses of a finite group.
struct GroupData {
    n: usize,
    one: usize,
    inv: Vec<usize>,
}

impl GroupData {
    fn new(g: &Semigroup) -> Result<Self, PartialError> {
        if !g.is_group() {
            return Err(PartialError::NotAGroup);
        }
        let one = g.identity().ok_or(PartialError::NotAGroup)?;
        let inv = (0..g.len())
            .map(|x| g.inverse(x).ok_or(PartialError::NotAGroup))
            .collect::<Result<_, _>>()?;
        Ok(GroupData {
            n: g.len(),
            one,
            inv,
        })
    }
}

/// One of the three generating maps of 𝒯 on `G × G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TMap {
    Alpha,
    Beta,
    Gamma,
}

impl TMap {
    pub const ALL: [TMap; 3] = [TMap::Alpha, TMap::Beta, TMap::Gamma];

    pub fn apply(self, g: &Semigroup, x: usize, y: usize) -> (usize, usize) {
        let inv = |z: usize| g.inverse(z).expect("group element");
        match self {
            TMap::Alpha => (g.mul(x, y), inv(y)),
            TMap::Beta => (inv(y), inv(x)),
            TMap::Gamma => (x, g.identity().expect("group")),
        }
    }
}

impl fmt::Display for TMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TMap::Alpha => "α",
            TMap::Beta => "β",
            TMap::Gamma => "γ",
        })
    }
}

/// The maps `α, β, γ` as permutations/transformations of pair indices
/// `x * |G| + y`.
pub fn t_action(g: &Semigroup) -> Result<[Vec<usize>; 3], PartialError> {
    let gd = GroupData::new(g)?;
    let n = gd.n;
    let map = |t: TMap| {
        (0..n * n)
            .map(|p| {
                let (x, y) = t.apply(g, p / n, p % n);
                x * n + y
            })
            .collect::<Vec<_>>()
    };
    Ok([map(TMap::Alpha), map(TMap::Beta), map(TMap::Gamma)])
}

/// Action of a word over `α, β, γ` (generator indices 0, 1, 2); the
/// rightmost letter acts first.
pub fn word_action(maps: &[Vec<usize>; 3], word: &[usize]) -> Vec<usize> {
    let mut cur: Vec<usize> = (0..maps[0].len()).collect();
    for &letter in word.iter().rev() {
        cur = cur.iter().map(|&p| maps[letter][p]).collect();
    }
    cur
}

/// Relations of 𝒯 not involving the zero that fail as transformations of
/// `G × G`, as printed words.
pub fn action_relation_failures(g: &Semigroup) -> Result<Vec<String>, PartialError> {
    let maps = t_action(g)?;
    let p = parse_presentation(T_PRESENTATION)?;
    Ok(p.relations
        .iter()
        .filter(|(l, r)| word_action(&maps, l) != word_action(&maps, r))
        .map(|(l, r)| format!("{} = {}", p.word_to_string(l), p.word_to_string(r)))
        .collect())
}

/// The 25-element monoid with zero 𝒯 together with its unit group `H` and
/// the ideal `U = 𝒯 ∖ H`.
#[derive(Clone, Debug)]
pub struct TSemigroup {
    pub enumerated: Enumerated,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub units: Vec<usize>,
    pub ideal: Vec<usize>,
    /// Rees coordinates of `U` as a semigroup in its own right.
    pub rees: C0sDecomposition,
    /// Whether `U ≅ M⁰(Z/2; 3, 3; P)` for `P` = [`t_sandwich`].
    pub matches_t_sandwich: bool,
    /// Size of the subsemigroup generated by the idempotents of `U`; 10 for
    /// the all-ones `P`, 19 when the sandwich carries a nontrivial cycle.
    pub idempotent_generated: usize,
}

impl TSemigroup {
    pub fn semigroup(&self) -> &Semigroup {
        &self.enumerated.semigroup
    }

    /// Shortlex word over `α, β, γ` of a nonzero element.
    pub fn word(&self, x: usize) -> Option<&Word> {
        self.enumerated.normal_forms[x].as_ref()
    }

    /// Transformation of `G × G` induced by each nonzero element; `None`
    /// for the zero.
    pub fn element_actions(&self, g: &Semigroup) -> Result<Vec<Option<Vec<usize>>>, PartialError> {
        let maps = t_action(g)?;
        let s = self.semigroup();
        Ok((0..s.len())
            .map(|x| {
                if s.is_zero(x) {
                    None
                } else {
                    self.word(x).map(|w| word_action(&maps, w))
                }
            })
            .collect())
    }
}

/// The all-ones 3×3 sandwich matrix with zeros off a 6-cycle, over
/// `Z/2 = {1, g}`.
pub fn t_sandwich() -> Vec<Vec<Option<usize>>> {
    vec![
        vec![Some(0), Some(0), None],
        vec![Some(0), None, Some(0)],
        vec![None, Some(0), Some(0)],
    ]
}

/// Enumerates 𝒯 and checks its order, unit group and the Rees shape of `U`
/// (any mismatch is an error). Equivalence of the sandwich matrix with
/// [`t_sandwich`] is recorded, not enforced.
pub fn build_t() -> Result<TSemigroup, PartialError> {
    let fail = |m: String| PartialError::TStructure(m);
    let p = parse_presentation(T_PRESENTATION)?;
    let e = enumerate(&p, 100, Mode::Monoid)?
        .complete()
        .ok_or_else(|| fail("enumeration did not finish".into()))?;
    let s = &e.semigroup;
    if s.len() != 25 {
        return Err(fail(format!("order {} instead of 25", s.len())));
    }
    let (alpha, beta, gamma) = (e.generators[0], e.generators[1], e.generators[2]);
    let mut units = s.generated_by(&[alpha, beta]);
    units.sort_unstable();
    let mut all_units = s.units();
    all_units.sort_unstable();
    if units != all_units || units.len() != 6 {
        return Err(fail(format!(
            "unit group has order {}, ⟨α, β⟩ has order {}",
            all_units.len(),
            units.len()
        )));
    }
    if units
        .iter()
        .all(|&a| units.iter().all(|&b| s.mul(a, b) == s.mul(b, a)))
    {
        return Err(fail("unit group is abelian".into()));
    }
    let ideal: Vec<usize> = (0..s.len())
        .filter(|x| units.binary_search(x).is_err())
        .collect();
    Ideal::new(s, ideal.iter().copied())
        .map_err(|_| fail("complement of the units is not an ideal".into()))?;
    let (u, _) = s.subsemigroup(&ideal)?;
    let rees = c0s_decompose(&u).ok_or_else(|| fail("U is not completely 0-simple".into()))?;
    if (rees.i_count, rees.lambda_count, rees.group.len()) != (3, 3, 2) {
        return Err(fail(format!(
            "U has Rees data {}×{} over a group of order {}",
            rees.i_count,
            rees.lambda_count,
            rees.group.len()
        )));
    }
    let idempotents: Vec<usize> = ideal
        .iter()
        .copied()
        .filter(|&x| s.mul(x, x) == x)
        .collect();
    let idempotent_generated = s.generated_by(&idempotents).len();
    let matches_t_sandwich = rees.matches(&cyclic_group(2), 3, 3, &t_sandwich());
    Ok(TSemigroup {
        enumerated: e,
        alpha,
        beta,
        gamma,
        units,
        ideal,
        rees,
        matches_t_sandwich,
        idempotent_generated,
    })
}

/// A subset of `G × G` closed under `α, β, γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TSet {
    order: usize,
    members: Vec<bool>,
}

impl TSet {
    pub fn empty(order: usize) -> Self {
        TSet {
            order,
            members: vec![false; order * order],
        }
    }

    pub fn full(order: usize) -> Self {
        TSet {
            order,
            members: vec![true; order * order],
        }
    }

    /// Checks closure against `g`.
    pub fn new(g: &Semigroup, members: Vec<bool>) -> Result<Self, PartialError> {
        let n = g.len();
        if members.len() != n * n {
            return Err(PartialError::Shape {
                expected: n * n,
                found: members.len(),
            });
        }
        if let Some(w) = closure_failure(g, &members)? {
            return Err(PartialError::NotClosed(w));
        }
        Ok(TSet { order: n, members })
    }

    /// Order of the group.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.members[x * self.order + y]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.members.len())
            .filter(|&p| self.members[p])
            .map(|p| (p / self.order, p % self.order))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &TSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &TSet) -> TSet {
        TSet {
            order: self.order,
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| a && b)
                .collect(),
        }
    }
}

fn closure_points(maps: &[Vec<usize>; 3], seeds: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; maps[0].len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for p in seeds {
        if !seen[p] {
            seen[p] = true;
            queue.push_back(p);
        }
    }
    while let Some(p) = queue.pop_front() {
        for m in maps {
            let q = m[p];
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// The smallest 𝒯-closed subset containing the given pairs.
pub fn t_closure(g: &Semigroup, pairs: &[(usize, usize)]) -> Result<TSet, PartialError> {
    let maps = t_action(g)?;
    let n = g.len();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(PartialError::BadValue { x, y });
    }
    Ok(TSet {
        order: n,
        members: closure_points(&maps, pairs.iter().map(|&(x, y)| x * n + y)),
    })
}

/// All 𝒯-closed subsets of `G × G`, smallest first.
///
/// A closed set is a union of `⟨α, β⟩`-orbits that is downward closed for
/// the reachability order that `γ` induces between orbits; the sets are
/// produced as all unions of orbit closures.
pub fn enumerate_t_subsets(g: &Semigroup) -> Result<Vec<TSet>, PartialError> {
    let n = g.len();
    if n > MAX_T_GROUP {
        return Err(PartialError::CapExceeded(format!(
            "group of order {n} exceeds {MAX_T_GROUP}"
        )));
    }
    let maps = t_action(g)?;
    let m = n * n;
    let mut orbit = vec![usize::MAX; m];
    let mut reps = Vec::new();
    for p in 0..m {
        if orbit[p] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(p);
        orbit[p] = k;
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            for r in [maps[0][q], maps[1][q]] {
                if orbit[r] == usize::MAX {
                    orbit[r] = k;
                    stack.push(r);
                }
            }
        }
    }
    let down: Vec<u64> = reps
        .iter()
        .map(|&p| {
            closure_points(&maps, [p])
                .iter()
                .enumerate()
                .filter(|(_, &s)| s)
                .fold(0u64, |acc, (q, _)| acc | 1 << orbit[q])
        })
        .collect();
    let mut sets: BTreeSet<u64> = BTreeSet::from([0]);
    for &d in &down {
        let grown: Vec<u64> = sets.iter().map(|s| s | d).collect();
        sets.extend(grown);
        if sets.len() > MAX_T_SUBSETS {
            return Err(PartialError::CapExceeded(format!(
                "more than {MAX_T_SUBSETS} closed subsets"
            )));
        }
    }
    let mut out: Vec<TSet> = sets
        .into_iter()
        .map(|bits| TSet {
            order: n,
            members: (0..m).map(|p| bits >> orbit[p] & 1 == 1).collect(),
        })
        .collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| b.members.cmp(&a.members))
    });
    Ok(out)
}

/// A pair in the support whose image under one of `α, β, γ` is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionFailure {
    pub pair: (usize, usize),
    pub map: TMap,
    pub image: (usize, usize),
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{:?} = {:?} leaves the support",
            self.map, self.pair, self.image
        )
    }
}

fn closure_failure(
    g: &Semigroup,
    support: &[bool],
) -> Result<Option<ConditionFailure>, PartialError> {
    let gd = GroupData::new(g)?;
    let n = gd.n;
    for p in (0..n * n).filter(|&p| support[p]) {
        let (x, y) = (p / n, p % n);
        for t in TMap::ALL {
            let (a, b) = t.apply(g, x, y);
            if !support[a * n + b] {
                return Ok(Some(ConditionFailure {
                    pair: (x, y),
                    map: t,
                    image: (a, b),
                }));
            }
        }
    }
    Ok(None)
}

/// Whether the `{0, 1}`-valued map with the given support (row-major over
/// `G × G`, `σ(1, 1) = 1`) is a factor set: `σ(x, y) = 1` must force
/// `σ(xy, y⁻¹) = σ(y⁻¹, x⁻¹) = σ(x, 1) = 1`. Returns the first failure.
pub fn is_idempotent_pfactor(
    g: &Semigroup,
    support: &[bool],
) -> Result<Option<ConditionFailure>, PartialError> {
    let gd = GroupData::new(g)?;
    let n = gd.n;
    if support.len() != n * n {
        return Err(PartialError::Shape {
            expected: n * n,
            found: support.len(),
        });
    }
    if !support[gd.one * n + gd.one] {
        return Err(PartialError::NotNormalized);
    }
    for x in 0..n {
        for y in 0..n {
            if !support[x * n + y] {
                continue;
            }
            let checks = [
                (TMap::Alpha, (g.mul(x, y), gd.inv[y])),
                (TMap::Beta, (gd.inv[y], gd.inv[x])),
                (TMap::Gamma, (x, gd.one)),
            ];
            for (map, (a, b)) in checks {
                if !support[a * n + b] {
                    return Ok(Some(ConditionFailure {
                        pair: (x, y),
                        map,
                        image: (a, b),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// How a [`PFactorSet`] came to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// `{0, 1}`-valued with closed support.
    Idempotent,
    /// A totally defined group 2-cocycle.
    GroupCocycle,
    /// Obtained from a factor set of the Exel monoid.
    Exel,
    /// Product, inverse or twist of certified factor sets.
    Derived,
    Uncertified,
}

impl Provenance {
    pub fn is_certified(self) -> bool {
        self != Provenance::Uncertified
    }
}

/// A map `G × G → A ∪ {0}` (written additively, `None` the zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFactorSet {
    group: Semigroup,
    coefficients: AbGroup,
    values: Vec<Value>,
    provenance: Provenance,
}

impl PFactorSet {
    fn build(
        g: &Semigroup,
        a: &AbGroup,
        values: Vec<Value>,
        provenance: Provenance,
    ) -> Result<Self, PartialError> {
        let n = GroupData::new(g)?.n;
        if values.len() != n * n {
            return Err(PartialError::Shape {
                expected: n * n,
                found: values.len(),
            });
        }
        let mut values = values;
        for (k, v) in values.iter_mut().enumerate() {
            if let Some(x) = v {
                if x.len() != a.ngens() {
                    return Err(PartialError::BadValue { x: k / n, y: k % n });
                }
                *x = a.normalize(x);
            }
        }
        Ok(PFactorSet {
            group: g.clone(),
            coefficients: a.clone(),
            values,
            provenance,
        })
    }

    /// The idempotent with the given support, which must satisfy the
    /// closure condition.
    pub fn idempotent(g: &Semigroup, a: &AbGroup, support: &[bool]) -> Result<Self, PartialError> {
        if let Some(w) = is_idempotent_pfactor(g, support)? {
            return Err(PartialError::NotClosed(w));
        }
        let one = a.zero_element();
        let values = support.iter().map(|&s| s.then(|| one.clone())).collect();
        Self::build(g, a, values, Provenance::Idempotent)
    }

    /// A totally defined map satisfying the group cocycle identity.
    pub fn group_cocycle(
        g: &Semigroup,
        a: &AbGroup,
        values: Vec<Vec<Int>>,
    ) -> Result<Self, PartialError> {
        let f = Self::build(
            g,
            a,
            values.into_iter().map(Some).collect(),
            Provenance::GroupCocycle,
        )?;
        if let Some(bad) = cohomological_eq_check(&f).first() {
            return Err(PartialError::CocycleLaw {
                x: bad.x,
                y: bad.y,
                z: bad.z,
            });
        }
        Ok(f)
    }

    /// Arbitrary values; usable for inspection but rejected by products.
    pub fn uncertified(
        g: &Semigroup,
        a: &AbGroup,
        values: Vec<Value>,
    ) -> Result<Self, PartialError> {
        Self::build(g, a, values, Provenance::Uncertified)
    }

    pub fn group(&self) -> &Semigroup {
        &self.group
    }

    pub fn coefficients(&self) -> &AbGroup {
        &self.coefficients
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&Vec<Int>> {
        self.values[x * self.group.len() + y].as_ref()
    }

    pub fn support(&self) -> Vec<bool> {
        self.values.iter().map(Option::is_some).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|v| self.coefficients.is_zero_element(v))
    }

    fn derived(&self) -> Provenance {
        if self.provenance.is_certified() {
            Provenance::Derived
        } else {
            Provenance::Uncertified
        }
    }

    /// Pointwise inverse on the support.
    pub fn inverse(&self) -> PFactorSet {
        let values = self
            .values
            .iter()
            .map(|v| v.as_ref().map(|x| self.coefficients.neg(x)))
            .collect();
        PFactorSet {
            values,
            provenance: self.derived(),
            ..self.clone()
        }
    }

    /// `σ(x, y) · β(x) β(y) / β(xy)` on the support.
    pub fn twisted(&self, beta: &[Vec<Int>]) -> PFactorSet {
        let (g, a) = (&self.group, &self.coefficients);
        let n = g.len();
        let values = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                self.values[k].as_ref().map(|v| {
                    a.add(
                        &a.add(v, &beta[x]),
                        &a.add(&beta[y], &a.neg(&beta[g.mul(x, y)])),
                    )
                })
            })
            .collect();
        PFactorSet {
            values,
            provenance: self.derived(),
            ..self.clone()
        }
    }
}

/// Pointwise product of two certified factor sets.
pub fn pfactor_product(s: &PFactorSet, t: &PFactorSet) -> Result<PFactorSet, PartialError> {
    if !s.provenance.is_certified() || !t.provenance.is_certified() {
        return Err(PartialError::UncertifiedInput);
    }
    if s.group != t.group || s.coefficients != t.coefficients {
        return Err(PartialError::Mismatch);
    }
    let a = &s.coefficients;
    let values = s
        .values
        .iter()
        .zip(&t.values)
        .map(|(u, v)| Some(a.add(u.as_ref()?, v.as_ref()?)))
        .collect();
    Ok(PFactorSet {
        values,
        provenance: Provenance::Derived,
        ..s.clone()
    })
}

/// A triple where `σ(x, y)σ(xy, z) ≠ σ(x, yz)σ(y, z)`, zero absorbing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationFailure {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub lhs: Value,
    pub rhs: Value,
}

impl EquationFailure {
    /// Failures with both sides nonzero contradict the cocycle law that
    /// holds wherever `Γ(x)Γ(y)Γ(z) ≠ 0`.
    pub fn both_sides_nonzero(&self) -> bool {
        self.lhs.is_some() && self.rhs.is_some()
    }
}

/// Every triple on which the cohomological equation fails.
pub fn cohomological_eq_check(sigma: &PFactorSet) -> Vec<EquationFailure> {
    let (g, a) = (&sigma.group, &sigma.coefficients);
    let n = g.len();
    let get = |x: usize, y: usize| sigma.values[x * n + y].as_ref();
    let sum = |u: Option<&Vec<Int>>, v: Option<&Vec<Int>>| Some(a.add(u?, v?));
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = sum(get(x, y), get(g.mul(x, y), z));
                let rhs = sum(get(x, g.mul(y, z)), get(y, z));
                if lhs != rhs {
                    out.push(EquationFailure { x, y, z, lhs, rhs });
                }
            }
        }
    }
    out
}

/// First `(x, y)` where one of the three partial homomorphism laws fails
/// for `φ: G → S`.
pub fn partial_hom_failure(g: &Semigroup, s: &Semigroup, phi: &[usize]) -> Option<(usize, usize)> {
    let one = g.identity()?;
    let inv = |x: usize| g.inverse(x).expect("group element");
    for x in 0..g.len() {
        if s.mul(phi[x], phi[one]) != phi[x] {
            return Some((x, one));
        }
        for y in 0..g.len() {
            let xy = phi[g.mul(x, y)];
            let first = s.product(&[phi[inv(x)], phi[x], phi[y]]) == s.mul(phi[inv(x)], xy);
            let second = s.product(&[phi[x], phi[y], phi[inv(y)]]) == s.mul(xy, phi[inv(y)]);
            if !first || !second {
                return Some((x, y));
            }
        }
    }
    None
}

/// `Σ(G)` as pairs `(A, g)` with `{1, g} ⊆ A ⊆ G` and product
/// `(A, g)(B, h) = (A ∪ gB, gh)`.
#[derive(Clone, Debug)]
pub struct ExelMonoid {
    group: Semigroup,
    /// Subsets as bitmasks over group elements.
    carrier: Vec<(u64, usize)>,
    semigroup: Semigroup,
    canonical: Vec<usize>,
}

impl ExelMonoid {
    pub fn group(&self) -> &Semigroup {
        &self.group
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn carrier(&self) -> &[(u64, usize)] {
        &self.carrier
    }

    /// `[x] = ({1, x}, x)` for every group element.
    pub fn canonical(&self) -> &[usize] {
        &self.canonical
    }

    pub fn bracket(&self, x: usize) -> usize {
        self.canonical[x]
    }

    /// The homomorphism `φ̃: Σ(G) → S` with `φ̃([x]) = φ(x)`.
    pub fn factor(&self, s: &Semigroup, phi: &[usize]) -> Result<Vec<usize>, PartialError> {
        let g = &self.group;
        if phi.len() != g.len() || phi.iter().any(|&v| v >= s.len()) {
            return Err(PartialError::Shape {
                expected: g.len(),
                found: phi.len(),
            });
        }
        if let Some((x, y)) = partial_hom_failure(g, s, phi) {
            return Err(PartialError::NotAPartialHomomorphism { x, y });
        }
        let m = &self.semigroup;
        let one = g.identity().expect("checked group");
        let start = self.canonical[one];
        let mut value: Vec<Option<usize>> = vec![None; m.len()];
        value[start] = Some(phi[one]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let vu = value[u].expect("queued elements have values");
            for x in 0..g.len() {
                let w = m.mul(u, self.canonical[x]);
                let vw = s.mul(vu, phi[x]);
                match value[w] {
                    None => {
                        value[w] = Some(vw);
                        queue.push_back(w);
                    }
                    Some(old) if old != vw => return Err(PartialError::NoFactorization),
                    Some(_) => {}
                }
            }
        }
        let value: Vec<usize> = value
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(PartialError::NotGenerated)?;
        for u in 0..m.len() {
            for w in 0..m.len() {
                if value[m.mul(u, w)] != s.mul(value[u], value[w]) {
                    return Err(PartialError::NoFactorization);
                }
            }
        }
        if (0..g.len()).any(|x| value[self.canonical[x]] != phi[x]) {
            return Err(PartialError::NoFactorization);
        }
        Ok(value)
    }

    /// Factors every partial homomorphism `G → S` for each `S` in the
    /// battery; returns how many were factored.
    pub fn verify_universal_property(&self, battery: &[Semigroup]) -> Result<usize, PartialError> {
        let n = self.group.len();
        let mut count = 0;
        for s in battery {
            let total = (s.len() as u64)
                .checked_pow(n as u32)
                .filter(|&t| t <= 1 << 20);
            if total.is_none() {
                return Err(PartialError::CapExceeded(format!("{}^{} maps", s.len(), n)));
            }
            let mut phi = vec![0usize; n];
            loop {
                if partial_hom_failure(&self.group, s, &phi).is_none() {
                    self.factor(s, &phi)?;
                    count += 1;
                }
                let Some(k) = phi.iter().position(|&v| v + 1 < s.len()) else {
                    break;
                };
                phi[k] += 1;
                phi[..k].iter_mut().for_each(|v| *v = 0);
            }
        }
        Ok(count)
    }
}

/// Builds the pair model of `Σ(G)` and checks that the canonical map is a
/// partial homomorphism whose image generates.
pub fn exel_monoid(g: &Semigroup) -> Result<ExelMonoid, PartialError> {
    let gd = GroupData::new(g)?;
    let n = gd.n;
    if n > MAX_EXEL_GROUP {
        return Err(PartialError::CapExceeded(format!(
            "group of order {n} exceeds {MAX_EXEL_GROUP}"
        )));
    }
    let mut carrier = Vec::new();
    for x in 0..n {
        let need = 1u64 << gd.one | 1u64 << x;
        for mask in 0..1u64 << n {
            if mask & need == need {
                carrier.push((mask, x));
            }
        }
    }
    let index: HashMap<(u64, usize), usize> =
        carrier.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let translate = |x: usize, mask: u64| {
        (0..n)
            .filter(|&b| mask >> b & 1 == 1)
            .fold(0u64, |acc, b| acc | 1 << g.mul(x, b))
    };
    let names = carrier
        .iter()
        .map(|&(mask, x)| {
            let set: Vec<&str> = (0..n)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| g.name(b))
                .collect();
            format!("({{{}}},{})", set.join(","), g.name(x))
        })
        .collect();
    let semigroup = Semigroup::from_fn(names, None, |i, j| {
        let ((a, x), (b, y)) = (carrier[i], carrier[j]);
        index[&(a | translate(x, b), g.mul(x, y))]
    })?;
    let canonical: Vec<usize> = (0..n)
        .map(|x| index[&(1u64 << gd.one | 1u64 << x, x)])
        .collect();
    if let Some((x, y)) = partial_hom_failure(g, &semigroup, &canonical) {
        return Err(PartialError::NotAPartialHomomorphism { x, y });
    }
    if semigroup.generated_by(&canonical).len() != carrier.len() {
        return Err(PartialError::NotGenerated);
    }
    Ok(ExelMonoid {
        group: g.clone(),
        carrier,
        semigroup,
        canonical,
    })
}

/// The factor set of `G` determined by a factor set `ρ` of `Σ(G)`:
/// `σ(x, y) = ρ([x], [y]) ρ([x⁻¹], [x][y]) / ρ([x⁻¹], [xy])`, zero exactly
/// where `ρ([x], [y])` is.
pub fn sigma_from_rho(model: &ExelMonoid, rho: &FactorSet) -> Result<PFactorSet, PartialError> {
    if rho.semigroup() != &model.semigroup {
        return Err(PartialError::Mismatch);
    }
    rho.validate()?;
    let (g, m, a) = (&model.group, &model.semigroup, rho.group());
    let gd = GroupData::new(g)?;
    let n = gd.n;
    let br = |x: usize| model.canonical[x];
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let Some(first) = rho.get(br(x), br(y)) else {
                values.push(None);
                continue;
            };
            let xinv = br(gd.inv[x]);
            let num = rho.get(xinv, m.mul(br(x), br(y)));
            let den = rho.get(xinv, br(g.mul(x, y)));
            match (num, den) {
                (Some(u), Some(d)) => values.push(Some(a.add(&a.add(first, u), &a.neg(d)))),
                _ => return Err(PartialError::DivisionUndefined { x, y }),
            }
        }
    }
    PFactorSet::build(g, a, values, Provenance::Exel)
}

fn all_maps(domain: usize, a: &AbGroup) -> Vec<Vec<Vec<Int>>> {
    let elements = a.elements();
    let mut out = Vec::new();
    let mut idx = vec![0usize; domain];
    loop {
        out.push(idx.iter().map(|&i| elements[i].clone()).collect());
        let Some(k) = idx.iter().position(|&i| i + 1 < elements.len()) else {
            break;
        };
        idx[k] += 1;
        idx[..k].iter_mut().for_each(|i| *i = 0);
    }
    out
}

/// `PM(G)` with coefficients `A`: every factor set of `G` is lifted from a
/// factor set of `Σ(G)`, grouped by support and taken modulo
/// `σ ~ σ · β(x)β(y)/β(xy)`. Links restrict support along `Y ⊆ X`.
pub fn partial_multiplier(
    g: &Semigroup,
    a: &AbGroup,
) -> Result<SemilatticeOfGroups<TSet>, PartialError> {
    let n = GroupData::new(g)?.n;
    let order = a
        .order()
        .and_then(|o| usize::try_from(o).ok())
        .filter(|&o| o <= MAX_PM_COEFFICIENTS);
    if n > MAX_PM_GROUP || order.is_none() {
        return Err(PartialError::CapExceeded(format!(
            "|G| = {n}, A = {:?}",
            a.factors()
        )));
    }
    let model = exel_monoid(g)?;
    let ms = schur_multiplier(&model.semigroup, a)?;
    let twists = all_maps(model.semigroup.len(), a);
    let mut sigmas: HashSet<Vec<Value>> = HashSet::new();
    for (i, comp) in ms.semilattice.components.iter().enumerate() {
        for class in comp.elements() {
            let rep = ms.representative(i, &class);
            for alpha in &twists {
                sigmas.insert(sigma_from_rho(&model, &rep.twisted(alpha))?.values);
            }
        }
    }
    let betas = all_maps(n, a);
    let canonical = |values: &[Value]| -> Vec<Value> {
        let s = PFactorSet {
            group: g.clone(),
            coefficients: a.clone(),
            values: values.to_vec(),
            provenance: Provenance::Exel,
        };
        betas
            .iter()
            .map(|b| s.twisted(b).values)
            .min()
            .expect("at least the zero twist")
    };
    let mut by_support: Vec<(Vec<bool>, Vec<Vec<Value>>)> = Vec::new();
    for s in &sigmas {
        let support: Vec<bool> = s.iter().map(Option::is_some).collect();
        let c = canonical(s);
        match by_support.iter_mut().find(|(sp, _)| *sp == support) {
            Some((_, classes)) if !classes.contains(&c) => classes.push(c),
            Some(_) => {}
            None => by_support.push((support, vec![c])),
        }
    }
    by_support.sort_by(|x, y| {
        x.0.iter()
            .filter(|&&b| b)
            .count()
            .cmp(&y.0.iter().filter(|&&b| b).count())
            .then_with(|| y.0.cmp(&x.0))
    });
    let product = |u: &[Value], v: &[Value]| -> Vec<Value> {
        u.iter()
            .zip(v)
            .map(|(p, q)| Some(a.add(p.as_ref()?, q.as_ref()?)))
            .collect()
    };
    let mut components = Vec::new();
    let mut coords: Vec<HashMap<Vec<Value>, Vec<Int>>> = Vec::new();
    let mut indices = Vec::new();
    for (support, classes) in &by_support {
        indices.push(TSet::new(g, support.clone())?);
        let add = |i: usize, j: usize| {
            let p = canonical(&product(&classes[i], &classes[j]));
            classes
                .iter()
                .position(|c| *c == p)
                .expect("factor sets with one support are closed under products")
        };
        let (group, co) = decompose_table::<Int>(classes.len(), add);
        components.push(group);
        coords.push(classes.iter().cloned().zip(co).collect());
    }
    let mut links = std::collections::BTreeMap::new();
    for i in 0..indices.len() {
        for k in 0..indices.len() {
            if !indices[k].is_subset(&indices[i]) {
                continue;
            }
            let (src, tgt) = (&components[i], &components[k]);
            let eps: Vec<Value> = by_support[k]
                .0
                .iter()
                .map(|&s| s.then(|| a.zero_element()))
                .collect();
            let mut cols = Vec::new();
            for j in 0..src.ngens() {
                let mut unit = vec![Int::from(0); src.ngens()];
                unit[j] = Int::from(1);
                let f = coords[i]
                    .iter()
                    .find(|(_, v)| **v == unit)
                    .map(|(f, _)| f)
                    .expect("decomposition hits every unit vector");
                cols.push(coords[k][&canonical(&product(f, &eps))].clone());
            }
            links.insert(
                (i, k),
                Hom::new(
                    src.clone(),
                    tgt.clone(),
                    Matrix::from_columns(tgt.ngens(), &cols),
                )?,
            );
        }
    }
    Ok(SemilatticeOfGroups {
        indices,
        components,
        links,
    })
}
