//! Natural systems on a monoid with zero: the category of factorizations,
//! cohomology with coefficients in a natural system, the bar resolution of
//! the trivial system and its comparison with the cochain complex.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use thiserror::Error;

use crate::abelian::{homology_of, AbelianError};
use crate::cohomology::{nerve, CohomologyError, Nerve, Variant};
use crate::linalg::{kernel_mod, Matrix, Subquotient};
use crate::semigroup::{Semigroup, SemigroupError};
use crate::{AbGroup, Hom, Int, Module};

pub const MAX_NATSYS_DEGREE: usize = 3;
/// Bound on the total number of bar symbols in one degree.
pub const MAX_BAR_SYMBOLS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatSysError {
    #[error("semigroup must be a monoid with zero")]
    NotMonoidWithZero,
    #[error("malformed natural system: {0}")]
    Shape(String),
    #[error("D(1, 1) is not the identity on object {0}")]
    Identity(usize),
    #[error("functoriality fails for {second:?} ∘ {first:?}")]
    Functoriality { first: Morphism, second: Morphism },
    #[error("too large: {0}")]
    CapExceeded(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// The morphism `(α, a, β): a → αaβ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub left: usize,
    pub object: usize,
    pub right: usize,
}

fn check_monoid_with_zero(s: &Semigroup) -> Result<usize, NatSysError> {
    match (s.identity(), s.zero()) {
        (Some(one), Some(_)) => Ok(one),
        _ => Err(NatSysError::NotMonoidWithZero),
    }
}

/// `Fac S`: objects `S ∖ 0`, morphisms `(α, a, β)` with `αaβ ≠ 0`.
#[derive(Clone, Debug)]
pub struct FacCategory {
    semigroup: Semigroup,
    objects: Vec<usize>,
    morphisms: Vec<Morphism>,
}

pub fn fac_category(s: &Semigroup) -> Result<FacCategory, NatSysError> {
    check_monoid_with_zero(s)?;
    let objects = s.nonzero();
    let mut morphisms = Vec::new();
    for &a in &objects {
        for left in 0..s.len() {
            for right in 0..s.len() {
                if !s.is_zero(s.product(&[left, a, right])) {
                    morphisms.push(Morphism {
                        left,
                        object: a,
                        right,
                    });
                }
            }
        }
    }
    Ok(FacCategory {
        semigroup: s.clone(),
        objects,
        morphisms,
    })
}

impl FacCategory {
    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn target(&self, m: &Morphism) -> usize {
        self.semigroup.product(&[m.left, m.object, m.right])
    }

    pub fn identity(&self, a: usize) -> Morphism {
        let one = self.semigroup.identity().expect("checked monoid");
        Morphism {
            left: one,
            object: a,
            right: one,
        }
    }

    /// `second ∘ first = (α′α, a, ββ′)` when `first` ends where `second` starts.
    pub fn compose(&self, second: &Morphism, first: &Morphism) -> Option<Morphism> {
        if self.target(first) != second.object {
            return None;
        }
        let s = &self.semigroup;
        Some(Morphism {
            left: s.mul(second.left, first.left),
            object: first.object,
            right: s.mul(first.right, second.right),
        })
    }

    /// First composable triple violating associativity or a unit law.
    pub fn composition_failure(&self) -> Option<(Morphism, Morphism, Morphism)> {
        for f in &self.morphisms {
            let id_src = self.identity(f.object);
            let id_tgt = self.identity(self.target(f));
            if self.compose(f, &id_src) != Some(*f) || self.compose(&id_tgt, f) != Some(*f) {
                return Some((*f, id_src, id_tgt));
            }
            for g in self.morphisms.iter().filter(|g| g.object == self.target(f)) {
                let gf = self.compose(g, f).expect("composable");
                for h in self.morphisms.iter().filter(|h| h.object == self.target(g)) {
                    let left = self.compose(h, &gf);
                    let right = self.compose(&self.compose(h, g).expect("composable"), f);
                    if left != right {
                        return Some((*f, *g, *h));
                    }
                }
            }
        }
        None
    }
}

/// A functor `Fac S → Ab` given by `α_* = D(α, 1)` and `β^* = D(1, β)`.
#[derive(Clone, Debug)]
pub struct NaturalSystem {
    semigroup: Semigroup,
    groups: Vec<Option<AbGroup>>,
    /// `(α, a) ↦ α_*: D_a → D_{αa}` for `αa ≠ 0`.
    left: BTreeMap<(usize, usize), Hom>,
    /// `(a, β) ↦ β^*: D_a → D_{aβ}` for `aβ ≠ 0`.
    right: BTreeMap<(usize, usize), Hom>,
}

impl NaturalSystem {
    /// `groups` is indexed by element (`None` at the zero). Validates
    /// functoriality on every composable pair of `Fac S`.
    pub fn new(
        s: &Semigroup,
        groups: Vec<Option<AbGroup>>,
        left: BTreeMap<(usize, usize), Hom>,
        right: BTreeMap<(usize, usize), Hom>,
    ) -> Result<Self, NatSysError> {
        check_monoid_with_zero(s)?;
        if groups.len() != s.len()
            || groups
                .iter()
                .enumerate()
                .any(|(x, g)| g.is_some() == s.is_zero(x))
        {
            return Err(NatSysError::Shape("one group per nonzero element".into()));
        }
        let d = NaturalSystem {
            semigroup: s.clone(),
            groups,
            left,
            right,
        };
        d.check_shape()?;
        d.check_functoriality()?;
        Ok(d)
    }

    fn check_shape(&self) -> Result<(), NatSysError> {
        let s = &self.semigroup;
        let mut expected_left = 0;
        let mut expected_right = 0;
        for a in s.nonzero() {
            for x in 0..s.len() {
                for (map, key, target, count) in [
                    (&self.left, (x, a), s.mul(x, a), &mut expected_left),
                    (&self.right, (a, x), s.mul(a, x), &mut expected_right),
                ] {
                    if s.is_zero(target) {
                        continue;
                    }
                    *count += 1;
                    let h = map
                        .get(&key)
                        .ok_or_else(|| NatSysError::Shape(format!("missing map for {key:?}")))?;
                    if Some(h.source()) != self.groups[a].as_ref()
                        || Some(h.target()) != self.groups[target].as_ref()
                    {
                        return Err(NatSysError::Shape(format!(
                            "map for {key:?} has the wrong source or target"
                        )));
                    }
                }
            }
        }
        if self.left.len() != expected_left || self.right.len() != expected_right {
            return Err(NatSysError::Shape(
                "maps given for products that vanish".into(),
            ));
        }
        Ok(())
    }

    fn check_functoriality(&self) -> Result<(), NatSysError> {
        let fac = fac_category(&self.semigroup)?;
        for &a in fac.objects() {
            let d = self.group(a).expect("object");
            if self.morphism(&fac.identity(a)) != Hom::identity(d) {
                return Err(NatSysError::Identity(a));
            }
        }
        for first in fac.morphisms() {
            let d1 = self.morphism(first);
            for second in fac
                .morphisms()
                .iter()
                .filter(|m| m.object == fac.target(first))
            {
                let composite = fac.compose(second, first).expect("composable");
                if d1.then(&self.morphism(second))? != self.morphism(&composite) {
                    return Err(NatSysError::Functoriality {
                        first: *first,
                        second: *second,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn group(&self, a: usize) -> Option<&AbGroup> {
        self.groups[a].as_ref()
    }

    pub fn left(&self, alpha: usize, a: usize) -> Option<&Hom> {
        self.left.get(&(alpha, a))
    }

    pub fn right(&self, a: usize, beta: usize) -> Option<&Hom> {
        self.right.get(&(a, beta))
    }

    /// `D(α, β) = α_* β^*` on a morphism of `Fac S`.
    pub fn morphism(&self, m: &Morphism) -> Hom {
        let s = &self.semigroup;
        let r = &self.right[&(m.object, m.right)];
        let l = &self.left[&(m.left, s.mul(m.object, m.right))];
        r.then(l).expect("shapes checked on construction")
    }

    /// The system of a 0-module: `D_a = A`, `α_* = α`, `β^* = 1`.
    pub fn from_zero_module(m: &Module) -> Result<Self, NatSysError> {
        let s = m.semigroup();
        check_monoid_with_zero(s)?;
        let a = m.group();
        let groups = (0..s.len())
            .map(|x| (!s.is_zero(x)).then(|| a.clone()))
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for x in s.nonzero() {
            for y in 0..s.len() {
                if !s.is_zero(s.mul(y, x)) {
                    left.insert((y, x), Hom::new(a.clone(), a.clone(), m.action(y).clone())?);
                }
                if !s.is_zero(s.mul(x, y)) {
                    right.insert((x, y), Hom::identity(a));
                }
            }
        }
        Self::new(s, groups, left, right)
    }

    /// `Z_a = Z[a]`, every morphism sends `[a]` to `[b]`.
    pub fn trivial_z(s: &Semigroup) -> Result<Self, NatSysError> {
        check_monoid_with_zero(s)?;
        let z = AbGroup::free(1);
        let groups = (0..s.len())
            .map(|x| (!s.is_zero(x)).then(|| z.clone()))
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for x in s.nonzero() {
            for y in 0..s.len() {
                if !s.is_zero(s.mul(y, x)) {
                    left.insert((y, x), Hom::identity(&z));
                }
                if !s.is_zero(s.mul(x, y)) {
                    right.insert((x, y), Hom::identity(&z));
                }
            }
        }
        Self::new(s, groups, left, right)
    }
}

fn tuple_product(s: &Semigroup, t: &[usize]) -> usize {
    if t.is_empty() {
        s.identity().expect("checked monoid")
    } else {
        s.product(t)
    }
}

/// Block layout of `⊕ D_{p(t)}` over a list of objects.
#[derive(Clone, Debug)]
struct Blocks {
    offsets: Vec<usize>,
    moduli: Vec<Int>,
}

impl Blocks {
    fn new<'a>(groups: impl IntoIterator<Item = &'a AbGroup>) -> Self {
        let mut offsets = Vec::new();
        let mut moduli = Vec::new();
        for g in groups {
            offsets.push(moduli.len());
            moduli.extend(g.factors().iter().cloned());
        }
        Blocks { offsets, moduli }
    }

    fn dim(&self) -> usize {
        self.moduli.len()
    }
}

fn add_block(m: &mut Matrix<Int>, row: usize, col: usize, block: &Matrix<Int>, sign: i64) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = &block[(i, j)];
            if v.is_zero() {
                continue;
            }
            let cur = m[(row + i, col + j)].clone();
            m[(row + i, col + j)] = cur + v * Int::from(sign);
        }
    }
}

/// The cochain complex `{Cⁿ(S, D), Δⁿ}` in degrees `0..=top + 1`.
#[derive(Clone, Debug)]
pub struct NatSysComplex {
    pub nerves: Vec<Nerve>,
    /// Orders of the coordinates of each `Cⁿ`.
    pub moduli: Vec<Vec<Int>>,
    /// `differentials[n] = Δⁿ: Cⁿ → Cⁿ⁺¹`.
    pub differentials: Vec<Matrix<Int>>,
    blocks: Vec<Blocks>,
}

impl NatSysComplex {
    pub fn group(&self, n: usize) -> AbGroup {
        AbGroup::from_orders(&self.moduli[n])
    }

    pub fn homology(&self, n: usize) -> Result<AbGroup, NatSysError> {
        let d_in = if n == 0 {
            Matrix::zeros(self.moduli[0].len(), 0)
        } else {
            self.differentials[n - 1].clone()
        };
        let h = homology_of(
            &d_in,
            &self.moduli[n],
            &self.differentials[n],
            &self.moduli[n + 1],
        )?;
        Ok(h.group().clone())
    }
}

fn natsys_nerve(s: &Semigroup, n: usize) -> Result<Nerve, NatSysError> {
    Ok(nerve(s, n, Variant::Zero)?)
}

/// Cochains and coboundaries up to degree `top + 1`.
pub fn natsys_complex(d: &NaturalSystem, top: usize) -> Result<NatSysComplex, NatSysError> {
    if top > MAX_NATSYS_DEGREE {
        return Err(NatSysError::CapExceeded(format!(
            "degree {top} exceeds {MAX_NATSYS_DEGREE}"
        )));
    }
    let s = &d.semigroup;
    let nerves: Vec<Nerve> = (0..=top + 1)
        .map(|n| natsys_nerve(s, n))
        .collect::<Result<_, _>>()?;
    let blocks: Vec<Blocks> = nerves
        .iter()
        .map(|nv| {
            Blocks::new(nv.tuples().iter().map(|t| {
                d.group(tuple_product(s, t))
                    .expect("nerve products are nonzero")
            }))
        })
        .collect();
    let mut differentials = Vec::new();
    for n in 0..=top {
        let (src, tgt) = (&nerves[n], &nerves[n + 1]);
        let mut m = Matrix::zeros(blocks[n + 1].dim(), blocks[n].dim());
        for (row, x) in tgt.tuples().iter().enumerate() {
            let r = blocks[n + 1].offsets[row];
            let col = |t: &[usize]| {
                blocks[n].offsets[src
                    .position(t)
                    .expect("faces of nerve tuples lie in the nerve")]
            };
            let tail = &x[1..];
            add_block(
                &mut m,
                r,
                col(tail),
                d.left(x[0], tuple_product(s, tail))
                    .expect("nonzero product")
                    .matrix(),
                1,
            );
            for i in 0..n {
                let mut t = x[..i].to_vec();
                t.push(s.mul(x[i], x[i + 1]));
                t.extend_from_slice(&x[i + 2..]);
                let ident =
                    Matrix::identity(d.group(tuple_product(s, x)).expect("nonzero").ngens());
                add_block(&mut m, r, col(&t), &ident, if i % 2 == 0 { -1 } else { 1 });
            }
            let head = &x[..n];
            let sign = if n % 2 == 0 { -1 } else { 1 };
            add_block(
                &mut m,
                r,
                col(head),
                d.right(tuple_product(s, head), x[n])
                    .expect("nonzero product")
                    .matrix(),
                sign,
            );
        }
        m.reduce_rows(&blocks[n + 1].moduli);
        differentials.push(m);
    }
    let moduli = blocks.iter().map(|b| b.moduli.clone()).collect();
    Ok(NatSysComplex {
        nerves,
        moduli,
        differentials,
        blocks,
    })
}

/// `Hⁿ(S, D)` for `n ≤ 3`.
pub fn natsys_cohomology(d: &NaturalSystem, n: usize) -> Result<AbGroup, NatSysError> {
    natsys_complex(d, n)?.homology(n)
}

/// `Bₙ`: the free group on symbols `[a₀, …, aₙ₊₁]` at each object `a`.
#[derive(Clone, Debug)]
pub struct BarSystem {
    pub degree: usize,
    symbols: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl BarSystem {
    fn new(s: &Semigroup, degree: usize) -> Result<Self, NatSysError> {
        let all = natsys_nerve(s, degree + 2)?;
        if all.len() > MAX_BAR_SYMBOLS {
            return Err(NatSysError::CapExceeded(format!(
                "{} bar symbols in degree {degree}",
                all.len()
            )));
        }
        let mut symbols = vec![Vec::new(); s.len()];
        for t in all.tuples() {
            symbols[s.product(t)].push(t.clone());
        }
        let index = symbols
            .iter()
            .map(|v| v.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        Ok(BarSystem {
            degree,
            symbols,
            index,
        })
    }

    pub fn symbols(&self, a: usize) -> &[Vec<usize>] {
        &self.symbols[a]
    }

    pub fn rank(&self, a: usize) -> usize {
        self.symbols[a].len()
    }

    pub fn position(&self, a: usize, symbol: &[usize]) -> Option<usize> {
        self.index[a].get(symbol).copied()
    }

    /// Index in `Bₙ(αaβ)` of `[αa₀, …, aₙ₊₁β]`.
    pub fn act(&self, s: &Semigroup, m: &Morphism, k: usize) -> usize {
        let mut t = self.symbols[m.object][k].clone();
        t[0] = s.mul(m.left, t[0]);
        let last = t.len() - 1;
        t[last] = s.mul(t[last], m.right);
        self.position(s.product(&[m.left, m.object, m.right]), &t)
            .expect("morphisms have nonzero targets")
    }
}

/// `B₀, …, B_top` with boundaries and the augmentation `[a₀, a₁] ↦ [a]`.
#[derive(Clone, Debug)]
pub struct BarResolution {
    semigroup: Semigroup,
    pub systems: Vec<BarSystem>,
}

pub fn bar_resolution(s: &Semigroup, top: usize) -> Result<BarResolution, NatSysError> {
    check_monoid_with_zero(s)?;
    if top > MAX_NATSYS_DEGREE + 1 {
        return Err(NatSysError::CapExceeded(format!("degree {top}")));
    }
    let systems = (0..=top)
        .map(|n| BarSystem::new(s, n))
        .collect::<Result<_, _>>()?;
    Ok(BarResolution {
        semigroup: s.clone(),
        systems,
    })
}

fn face(s: &Semigroup, t: &[usize], i: usize) -> Vec<usize> {
    let mut out = t[..i].to_vec();
    out.push(s.mul(t[i], t[i + 1]));
    out.extend_from_slice(&t[i + 2..]);
    out
}

impl BarResolution {
    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn top(&self) -> usize {
        self.systems.len() - 1
    }

    /// `(∂ₙ)_a: Bₙ(a) → Bₙ₋₁(a)` for `n ≥ 1`.
    pub fn boundary(&self, n: usize, a: usize) -> Matrix<Int> {
        let s = &self.semigroup;
        let (src, tgt) = (&self.systems[n], &self.systems[n - 1]);
        let mut m = Matrix::<Int>::zeros(tgt.rank(a), src.rank(a));
        for (k, t) in src.symbols(a).iter().enumerate() {
            for i in 0..=n {
                let row = tgt
                    .position(a, &face(s, t, i))
                    .expect("faces keep the product");
                let cur = m[(row, k)].clone();
                m[(row, k)] = cur + Int::from(if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// `ε_a: B₀(a) → Z`.
    pub fn augmentation(&self, a: usize) -> Matrix<Int> {
        Matrix::from_fn(1, self.systems[0].rank(a), |_, _| Int::from(1))
    }

    /// First `(n, a)` with `∂ₙ₋₁∂ₙ ≠ 0` (or `ε∂₁ ≠ 0` for `n = 1`).
    pub fn boundary_failure(&self) -> Option<(usize, usize)> {
        for a in self.semigroup.nonzero() {
            for n in 1..=self.top() {
                let prev = if n == 1 {
                    self.augmentation(a)
                } else {
                    self.boundary(n - 1, a)
                };
                if !prev.mul(&self.boundary(n, a)).is_zero() {
                    return Some((n, a));
                }
            }
        }
        None
    }

    /// First `(n, m)` where `∂ₙ` fails to commute with `Bₙ(m)`, or `Bₙ` is
    /// not functorial on a pair starting with `m`.
    pub fn naturality_failure(&self) -> Result<Option<(usize, Morphism)>, NatSysError> {
        let s = &self.semigroup;
        let fac = fac_category(s)?;
        for (n, sys) in self.systems.iter().enumerate() {
            for m in fac.morphisms() {
                let b = fac.target(m);
                for k in 0..sys.rank(m.object) {
                    let moved = sys.act(s, m, k);
                    for second in fac.morphisms().iter().filter(|g| g.object == b) {
                        let c = fac.compose(second, m).expect("composable");
                        if sys.act(s, second, moved) != sys.act(s, &c, k) {
                            return Ok(Some((n, *m)));
                        }
                    }
                    if n == 0 {
                        continue;
                    }
                    let prev = &self.systems[n - 1];
                    let t = &sys.symbols(m.object)[k];
                    let moved_t = &sys.symbols(b)[moved];
                    for i in 0..=n {
                        let f = prev.position(m.object, &face(s, t, i)).expect("face");
                        let lhs = prev.act(s, m, f);
                        let rhs = prev.position(b, &face(s, moved_t, i)).expect("face");
                        if lhs != rhs {
                            return Ok(Some((n, *m)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Objectwise homology of `B_top → … → B₀ → Z → 0` at `Z` (degree `-1`)
    /// and at `B₀, …, B_{top-1}`; returns the first nonzero `(a, degree)`.
    pub fn exactness_failure(&self) -> Result<Option<(usize, isize)>, NatSysError> {
        for a in self.semigroup.nonzero() {
            let eps = self.augmentation(a);
            let h = homology_of(&eps, &[Int::from(0)], &Matrix::zeros(0, 1), &[])?;
            if !h.group().is_trivial() {
                return Ok(Some((a, -1)));
            }
            for n in 0..self.top() {
                let d_out = if n == 0 {
                    eps.clone()
                } else {
                    self.boundary(n, a)
                };
                let d_in = self.boundary(n + 1, a);
                let zeros = |k: usize| vec![Int::from(0); k];
                let h = homology_of(&d_in, &zeros(d_in.rows()), &d_out, &zeros(d_out.rows()))?;
                if !h.group().is_trivial() {
                    return Ok(Some((a, n as isize)));
                }
            }
        }
        Ok(None)
    }
}

/// Comparison of `Cⁿ(S, D)` with `Hom(Bₙ, D)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub cochains: AbGroup,
    pub natural_transformations: AbGroup,
    /// `f ↦ (a₀)_*(aₙ₊₁)^* f(a₁, …, aₙ)` is natural and inverse to
    /// evaluation at `[1, a₁, …, aₙ, 1]`.
    pub isomorphism: bool,
    /// The isomorphism intertwines `Δⁿ` with composition by `∂ₙ₊₁`.
    pub chain_map: bool,
    pub cochain_cohomology: Option<AbGroup>,
    pub hom_cohomology: Option<AbGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub degrees: Vec<DegreeComparison>,
}

impl ComparisonReport {
    pub fn mismatch(&self) -> Option<String> {
        for c in &self.degrees {
            if !c.isomorphism {
                return Some(format!(
                    "degree {}: cochains and natural transformations are not matched",
                    c.degree
                ));
            }
            if c.cochains != c.natural_transformations {
                return Some(format!("degree {}: groups differ", c.degree));
            }
            if !c.chain_map {
                return Some(format!("degree {}: differentials do not commute", c.degree));
            }
            if c.cochain_cohomology != c.hom_cohomology {
                return Some(format!("degree {}: cohomology differs", c.degree));
            }
        }
        None
    }
}

fn reduced_equal(a: &Matrix<Int>, b: &Matrix<Int>, moduli: &[Int]) -> bool {
    let mut diff = a.sub(b);
    diff.reduce_rows(moduli);
    diff.is_zero()
}

/// Builds `Hom(Bₙ, D)` as the natural families inside
/// `⊕_a ⊕_{symbols} D_a`, compares it degreewise with `Cⁿ(S, D)` and
/// computes the cohomology of both complexes independently, `n ≤ top`.
pub fn hom_complex_compare(d: &NaturalSystem, top: usize) -> Result<ComparisonReport, NatSysError> {
    let s = &d.semigroup;
    let one = check_monoid_with_zero(s)?;
    let cochains = natsys_complex(d, top)?;
    let bar = bar_resolution(s, top + 1)?;
    let objects = s.nonzero();
    let group = |a: usize| d.group(a).expect("object");
    // ambient coordinates: per object, per symbol, one block of D_a
    let ambient: Vec<Blocks> = bar
        .systems
        .iter()
        .map(|sys| {
            Blocks::new(
                objects
                    .iter()
                    .flat_map(|&a| std::iter::repeat(group(a)).take(sys.rank(a))),
            )
        })
        .collect();
    let symbol_base: Vec<HashMap<usize, usize>> = bar
        .systems
        .iter()
        .map(|sys| {
            let mut base = HashMap::new();
            let mut k = 0;
            for &a in &objects {
                base.insert(a, k);
                k += sys.rank(a);
            }
            base
        })
        .collect();
    let block_of = |n: usize, a: usize, k: usize| ambient[n].offsets[symbol_base[n][&a] + k];
    let generators: Vec<Morphism> = objects
        .iter()
        .flat_map(|&a| {
            (0..s.len()).flat_map(move |x| {
                [
                    Morphism {
                        left: x,
                        object: a,
                        right: one,
                    },
                    Morphism {
                        left: one,
                        object: a,
                        right: x,
                    },
                ]
            })
        })
        .filter(|m| {
            (m.left != one || m.right != one) && !s.is_zero(s.product(&[m.left, m.object, m.right]))
        })
        .collect();

    let mut naturality = Vec::new();
    let mut naturality_moduli = Vec::new();
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    let mut kernels = Vec::new();
    let mut reports = Vec::new();
    for (n, sys) in bar.systems.iter().enumerate() {
        let dim = ambient[n].dim();
        // naturality constraints η_b(B(g)s) − D(g)η_a(s)
        let mut rows = 0;
        let mut row_moduli = Vec::new();
        let mut entries: Vec<(usize, usize, Matrix<Int>, i64)> = Vec::new();
        for g in &generators {
            let b = s.product(&[g.left, g.object, g.right]);
            let dg = d.morphism(g);
            for k in 0..sys.rank(g.object) {
                entries.push((
                    rows,
                    block_of(n, b, sys.act(s, g, k)),
                    Matrix::identity(group(b).ngens()),
                    1,
                ));
                entries.push((rows, block_of(n, g.object, k), dg.matrix().clone(), -1));
                rows += group(b).ngens();
                row_moduli.extend(group(b).factors().iter().cloned());
            }
        }
        let mut nat = Matrix::zeros(rows, dim);
        for (r, c, block, sign) in &entries {
            add_block(&mut nat, *r, *c, block, *sign);
        }
        // Φ: Cⁿ → ambient and Ψ: ambient → Cⁿ
        let nv = &cochains.nerves[n];
        let cb = &cochains.blocks[n];
        let mut p = Matrix::zeros(dim, cb.dim());
        let mut q = Matrix::zeros(cb.dim(), dim);
        for &a in &objects {
            for (k, t) in sys.symbols(a).iter().enumerate() {
                let mid = &t[1..t.len() - 1];
                let col = cb.offsets[nv
                    .position(mid)
                    .expect("middle of a symbol is in the nerve")];
                let m = Morphism {
                    left: t[0],
                    object: tuple_product(s, mid),
                    right: t[t.len() - 1],
                };
                add_block(&mut p, block_of(n, a, k), col, d.morphism(&m).matrix(), 1);
            }
        }
        for (i, t) in nv.tuples().iter().enumerate() {
            let a = tuple_product(s, t);
            let mut sym = vec![one];
            sym.extend_from_slice(t);
            sym.push(one);
            let k = sys.position(a, &sym).expect("[1, t, 1] is a symbol");
            add_block(
                &mut q,
                cb.offsets[i],
                block_of(n, a, k),
                &Matrix::identity(group(a).ngens()),
                1,
            );
        }
        let kernel = kernel_mod(&nat, &row_moduli);
        let natural = reduced_equal(&nat.mul(&p), &Matrix::zeros(rows, cb.dim()), &row_moduli);
        let retraction = reduced_equal(&q.mul(&p), &Matrix::identity(cb.dim()), &cb.moduli);
        let onto = reduced_equal(&p.mul(&q).mul(&kernel), &kernel, &ambient[n].moduli);
        let relations: Vec<Vec<Int>> = ambient[n]
            .moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut v = vec![Int::from(0); dim];
                v[i] = m.clone();
                v
            })
            .collect();
        let sub = Subquotient::new(kernel.clone(), &Matrix::from_columns(dim, &relations))
            .expect("moduli multiples are natural");
        reports.push(DegreeComparison {
            degree: n,
            cochains: cochains.group(n),
            natural_transformations: AbGroup::from_orders(sub.orders()),
            isomorphism: natural && retraction && onto,
            chain_map: true,
            cochain_cohomology: None,
            hom_cohomology: None,
        });
        naturality.push(nat);
        naturality_moduli.push(row_moduli);
        phi.push(p);
        psi.push(q);
        kernels.push(kernel);
    }
    // precomposition with ∂ₙ₊₁ on the ambient groups
    let mut hom_diff = Vec::new();
    for n in 0..=top {
        let next = &bar.systems[n + 1];
        let mut m = Matrix::zeros(ambient[n + 1].dim(), ambient[n].dim());
        for &a in &objects {
            let id = Matrix::identity(group(a).ngens());
            for (k, t) in next.symbols(a).iter().enumerate() {
                for i in 0..=n + 1 {
                    let f = bar.systems[n].position(a, &face(s, t, i)).expect("face");
                    add_block(
                        &mut m,
                        block_of(n + 1, a, k),
                        block_of(n, a, f),
                        &id,
                        if i % 2 == 0 { 1 } else { -1 },
                    );
                }
            }
        }
        m.reduce_rows(&ambient[n + 1].moduli);
        hom_diff.push(m);
    }
    for n in 0..=top {
        reports[n].chain_map = reduced_equal(
            &hom_diff[n].mul(&phi[n]),
            &phi[n + 1].mul(&cochains.differentials[n]),
            &ambient[n + 1].moduli,
        );
        let d_in = if n == 0 {
            Matrix::zeros(ambient[0].dim(), 0)
        } else {
            hom_diff[n - 1].mul(&kernels[n - 1])
        };
        let d_out = naturality[n].vcat(&hom_diff[n]);
        let mut out_moduli = naturality_moduli[n].clone();
        out_moduli.extend(ambient[n + 1].moduli.iter().cloned());
        let h = homology_of(&d_in, &ambient[n].moduli, &d_out, &out_moduli)?;
        reports[n].hom_cohomology = Some(h.group().clone());
        reports[n].cochain_cohomology = Some(cochains.homology(n)?);
    }
    reports.truncate(top + 1);
    Ok(ComparisonReport { degrees: reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_group;
    use crate::module::trivial_module;
    use crate::semigroup::catalog::{cyclic_group, null_semigroup, uvw_semigroup};
    use crate::semigroup::{adjoin, Adjoin};

    fn one_zero() -> Semigroup {
        Semigroup::from_named_table(&["1", "0"], &[&["1", "0"], &["0", "0"]], Some("0")).unwrap()
    }

    fn uvw_one() -> Semigroup {
        adjoin(&uvw_semigroup(), Adjoin::Identity)
    }

    fn samples() -> Vec<Semigroup> {
        vec![
            one_zero(),
            uvw_one(),
            adjoin(&null_semigroup(&["a", "b"]), Adjoin::Identity),
            adjoin(&cyclic_group(2), Adjoin::Zero),
        ]
    }

    #[test]
    fn fac_category_basics() {
        let s = uvw_one();
        let fac = fac_category(&s).unwrap();
        assert_eq!(fac.objects().len(), s.len() - 1);
        assert!(fac.composition_failure().is_none());
        let one = s.identity().unwrap();
        for m in fac.morphisms() {
            assert!(!s.is_zero(fac.target(m)));
            let l = Morphism {
                left: m.left,
                object: s.mul(m.object, m.right),
                right: one,
            };
            let r = Morphism {
                left: one,
                object: m.object,
                right: m.right,
            };
            assert_eq!(fac.compose(&l, &r), Some(*m));
            let l2 = Morphism {
                left: m.left,
                object: m.object,
                right: one,
            };
            let r2 = Morphism {
                left: one,
                object: s.mul(m.left, m.object),
                right: m.right,
            };
            assert_eq!(fac.compose(&r2, &l2), Some(*m));
        }
        assert_eq!(
            fac_category(&uvw_semigroup()).unwrap_err(),
            NatSysError::NotMonoidWithZero
        );
    }

    #[test]
    fn constructors_are_functorial() {
        for s in samples() {
            let z2 = AbGroup::cyclic(Int::from(2));
            let d = NaturalSystem::from_zero_module(&trivial_module(&s, &z2)).unwrap();
            let fac = fac_category(&s).unwrap();
            for m in fac.morphisms() {
                assert_eq!(d.morphism(m), Hom::identity(&z2));
            }
            NaturalSystem::trivial_z(&s).unwrap();
        }
    }

    #[test]
    fn broken_map_is_rejected() {
        let s = adjoin(&cyclic_group(2), Adjoin::Zero);
        let z3 = AbGroup::cyclic(Int::from(3));
        let d = NaturalSystem::from_zero_module(&trivial_module(&s, &z3)).unwrap();
        let mut left = d.left.clone();
        let g = s.index_of("g").unwrap();
        left.insert(
            (g, g),
            Hom::new(
                z3.clone(),
                z3.clone(),
                Matrix::from_rows(vec![vec![Int::from(2)]]),
            )
            .unwrap(),
        );
        let err = NaturalSystem::new(&s, d.groups.clone(), left, d.right.clone()).unwrap_err();
        assert!(matches!(err, NatSysError::Functoriality { .. }), "{err:?}");
    }

    #[test]
    fn zero_module_bridge() {
        for s in samples() {
            for a in [AbGroup::cyclic(Int::from(2)), AbGroup::free(1)] {
                let m = trivial_module(&s, &a);
                let d = NaturalSystem::from_zero_module(&m).unwrap();
                for n in 0..=2 {
                    assert_eq!(
                        natsys_cohomology(&d, n).unwrap(),
                        cohomology_group(&m, n, Variant::Zero).unwrap(),
                        "n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_system_on_one_zero() {
        let d = NaturalSystem::trivial_z(&one_zero()).unwrap();
        assert_eq!(natsys_cohomology(&d, 0).unwrap(), AbGroup::free(1));
        assert!(natsys_cohomology(&d, 1).unwrap().is_trivial());
        assert!(natsys_cohomology(&d, 2).unwrap().is_trivial());
    }

    #[test]
    fn bar_resolution_is_exact() {
        let r = bar_resolution(&one_zero(), 1).unwrap();
        assert_eq!(r.systems[0].rank(0), 1);
        for s in samples() {
            let r = bar_resolution(&s, 3).unwrap();
            assert_eq!(r.boundary_failure(), None);
            assert_eq!(r.naturality_failure().unwrap(), None);
            assert_eq!(r.exactness_failure().unwrap(), None);
        }
    }

    #[test]
    fn hom_complex_matches_cochains() {
        for s in samples() {
            for d in [
                NaturalSystem::trivial_z(&s).unwrap(),
                NaturalSystem::from_zero_module(&trivial_module(
                    &s,
                    &AbGroup::cyclic(Int::from(2)),
                ))
                .unwrap(),
            ] {
                let report = hom_complex_compare(&d, 2).unwrap();
                assert_eq!(report.mismatch(), None, "{}", s.names().join(" "));
            }
        }
        let g0 = adjoin(&cyclic_group(2), Adjoin::Zero);
        let z2 = AbGroup::cyclic(Int::from(2));
        let report = hom_complex_compare(
            &NaturalSystem::from_zero_module(&trivial_module(&g0, &z2)).unwrap(),
            2,
        )
        .unwrap();
        assert_eq!(report.degrees[2].hom_cohomology, Some(z2.clone()));
        let e = uvw_one();
        let m = trivial_module(&e, &z2);
        let report = hom_complex_compare(&NaturalSystem::from_zero_module(&m).unwrap(), 2).unwrap();
        assert_eq!(
            report.degrees[2].hom_cohomology.as_ref(),
            Some(&cohomology_group(&m, 2, Variant::Zero).unwrap())
        );
        assert_eq!(
            report.degrees[1].natural_transformations,
            report.degrees[1].cochains
        );
    }

    #[test]
    fn adjoined_zero_matches_classical_cohomology() {
        let g = cyclic_group(2);
        let g0 = adjoin(&g, Adjoin::Zero);
        let a = AbGroup::cyclic(Int::from(2));
        let d = NaturalSystem::from_zero_module(&trivial_module(&g0, &a)).unwrap();
        for n in 1..=2 {
            assert_eq!(
                natsys_cohomology(&d, n).unwrap(),
                cohomology_group(&trivial_module(&g, &a), n, Variant::Em).unwrap()
            );
        }
    }
}
