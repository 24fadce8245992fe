//! Factor sets of projective representations of monoids and the Schur
//! multiplier as a semilattice of groups indexed by ideals.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::abelian::{decompose_table, AbelianError};
use crate::cohomology::{cohomology, Cochain, CohomologyError, Variant};
use crate::linalg::Matrix;
use crate::module::trivial_module;
use crate::semigroup::{ideals, rees_quotient_with_map, Ideal, Semigroup, SemigroupError};
use crate::{AbGroup, Computation, Hom, Int};

/// A value of a factor set: an element of `A` (written additively) or the
/// zero marker `None`.
pub type Value = Option<Vec<Int>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("semigroup has no identity")]
    NotAMonoid,
    #[error("expected {expected} values, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("value at ({x}, {y}) is not an element of the coefficient group")]
    BadValue { x: usize, y: usize },
    #[error("cocycle law fails at ({x}, {y}, {z})")]
    CocycleLaw { x: usize, y: usize, z: usize },
    #[error("normalization fails at ({x}, {y})")]
    Normalization { x: usize, y: usize },
    #[error("factor sets live over different semigroups or groups")]
    Mismatch,
    #[error("zero set of the factor set is not an ideal")]
    NotAnIdeal,
    #[error("enumeration too large: {0}")]
    CapExceeded(String),
    #[error("link from component {from} to {to} is not well defined on classes")]
    IllDefinedLink { from: usize, to: usize },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// A totally defined map `S × S → A ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    semigroup: Semigroup,
    group: AbGroup,
    values: Vec<Value>,
}

impl FactorSet {
    /// Values in row-major order of pairs `(x, y)`.
    pub fn new(
        semigroup: Semigroup,
        group: AbGroup,
        values: Vec<Value>,
    ) -> Result<Self, SchurError> {
        let n = semigroup.len();
        if values.len() != n * n {
            return Err(SchurError::Shape {
                expected: n * n,
                found: values.len(),
            });
        }
        let mut values = values;
        for (k, v) in values.iter_mut().enumerate() {
            if let Some(a) = v {
                if a.len() != group.ngens() {
                    return Err(SchurError::BadValue { x: k / n, y: k % n });
                }
                *a = group.normalize(a);
            }
        }
        Ok(FactorSet {
            semigroup,
            group,
            values,
        })
    }

    pub fn from_fn(
        semigroup: &Semigroup,
        group: &AbGroup,
        f: impl Fn(usize, usize) -> Value,
    ) -> Result<Self, SchurError> {
        let n = semigroup.len();
        let values = (0..n * n).map(|k| f(k / n, k % n)).collect();
        FactorSet::new(semigroup.clone(), group.clone(), values)
    }

    /// The idempotent `ε_I`: identity off `I`, zero on it.
    pub fn epsilon(semigroup: &Semigroup, group: &AbGroup, ideal: &Ideal) -> Self {
        let one = group.zero_element();
        FactorSet::from_fn(semigroup, group, |x, y| {
            if ideal.contains(semigroup.mul(x, y)) {
                None
            } else {
                Some(one.clone())
            }
        })
        .expect("shape is right by construction")
    }

    /// The factor set that is the identity everywhere.
    pub fn one(semigroup: &Semigroup, group: &AbGroup) -> Self {
        Self::epsilon(semigroup, group, &Ideal::empty())
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&Vec<Int>> {
        self.values[x * self.semigroup.len() + y].as_ref()
    }

    fn sum(&self, a: Option<&Vec<Int>>, b: Option<&Vec<Int>>) -> Value {
        Some(self.group.add(a?, b?))
    }

    /// Checks the cocycle law with zero absorbing on every triple, then
    /// `ρ(x, y) = 0 ⟺ ρ(1, xy) = 0` on every pair.
    pub fn validate(&self) -> Result<(), SchurError> {
        let s = &self.semigroup;
        let one = s.identity().ok_or(SchurError::NotAMonoid)?;
        let n = s.len();
        for x in 0..n {
            for y in 0..n {
                let xy = s.mul(x, y);
                for z in 0..n {
                    let yz = s.mul(y, z);
                    let lhs = self.sum(self.get(x, y), self.get(xy, z));
                    let rhs = self.sum(self.get(x, yz), self.get(y, z));
                    if lhs != rhs {
                        return Err(SchurError::CocycleLaw { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.get(x, y).is_none() != self.get(one, s.mul(x, y)).is_none() {
                    return Err(SchurError::Normalization { x, y });
                }
            }
        }
        Ok(())
    }

    fn same_carrier(&self, other: &FactorSet) -> Result<(), SchurError> {
        if self.semigroup != other.semigroup || self.group != other.group {
            return Err(SchurError::Mismatch);
        }
        Ok(())
    }

    /// Pointwise product, zero absorbing.
    pub fn product(&self, other: &FactorSet) -> Result<FactorSet, SchurError> {
        self.same_carrier(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.sum(a.as_ref(), b.as_ref()))
            .collect();
        Ok(FactorSet {
            semigroup: self.semigroup.clone(),
            group: self.group.clone(),
            values,
        })
    }

    /// Pointwise inverse on the support.
    pub fn inverse(&self) -> FactorSet {
        let values = self
            .values
            .iter()
            .map(|v| v.as_ref().map(|a| self.group.neg(a)))
            .collect();
        FactorSet {
            semigroup: self.semigroup.clone(),
            group: self.group.clone(),
            values,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|a| self.group.is_zero_element(a))
    }

    /// `ρ(x, y) · α(x) α(xy)⁻¹ α(y)` on the support.
    pub fn twisted(&self, alpha: &[Vec<Int>]) -> FactorSet {
        let s = &self.semigroup;
        let n = s.len();
        let g = &self.group;
        let values = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                self.values[k].as_ref().map(|a| {
                    let t = g.add(&g.add(a, &alpha[x]), &alpha[y]);
                    g.add(&t, &g.neg(&alpha[s.mul(x, y)]))
                })
            })
            .collect();
        FactorSet {
            semigroup: s.clone(),
            group: g.clone(),
            values,
        }
    }

    /// `{z : ρ(1, z) = 0}`, checked to be an ideal.
    pub fn support_ideal(&self) -> Result<Ideal, SchurError> {
        let one = self.semigroup.identity().ok_or(SchurError::NotAMonoid)?;
        let members = (0..self.semigroup.len()).filter(|&z| self.get(one, z).is_none());
        Ideal::new(&self.semigroup, members).map_err(|_| SchurError::NotAnIdeal)
    }

    /// `Some(α)` with `self = other · ∂α` when the two factor sets are
    /// equivalent; `α` is the identity on the common zero ideal.
    pub fn equivalent(&self, other: &FactorSet) -> Result<Option<Vec<Vec<Int>>>, SchurError> {
        self.same_carrier(other)?;
        self.validate()?;
        other.validate()?;
        let ideal = self.support_ideal()?;
        if ideal != other.support_ideal()? {
            return Ok(None);
        }
        let part = Part::new(&self.semigroup, &self.group, ideal)?;
        let ratio = self.product(&other.inverse())?;
        let v = part
            .cochain(&ratio)
            .to_vector(part.computation.nerve(), &self.group)?;
        if !part.computation.homology().is_boundary(&v) {
            return Ok(None);
        }
        let phi = part
            .computation
            .preimage(&v)
            .expect("boundaries have preimages");
        let alpha = (0..self.semigroup.len())
            .map(|x| match part.to_quotient[x] {
                Some(q) => phi
                    .get(&[q])
                    .cloned()
                    .expect("degree-one nerve holds every nonzero element"),
                None => self.group.zero_element(),
            })
            .collect();
        Ok(Some(alpha))
    }
}

/// Abelian groups indexed by a finite semilattice, with structure maps
/// `links[(i, j)]` from component `i` to component `j` whenever `i ≤ j`.
#[derive(Clone, Debug)]
pub struct SemilatticeOfGroups<I> {
    pub indices: Vec<I>,
    pub components: Vec<AbGroup>,
    pub links: BTreeMap<(usize, usize), Hom>,
}

impl<I> SemilatticeOfGroups<I> {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn link(&self, from: usize, to: usize) -> Option<&Hom> {
        self.links.get(&(from, to))
    }

    /// First `(i, j, k)` where `link(i, k) ≠ link(j, k) ∘ link(i, j)`, or
    /// `(i, i, i)` where `link(i, i)` is not the identity.
    pub fn composition_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.len() {
            if let Some(h) = self.link(i, i) {
                if *h != Hom::identity(&self.components[i]) {
                    return Some((i, i, i));
                }
            }
        }
        for (&(i, j), ij) in &self.links {
            for (&(j2, k), jk) in &self.links {
                if j2 != j {
                    continue;
                }
                let Some(ik) = self.link(i, k) else {
                    return Some((i, j, k));
                };
                match ij.then(jk) {
                    Ok(c) if c == *ik => {}
                    _ => return Some((i, j, k)),
                }
            }
        }
        None
    }
}

impl<I: PartialEq + std::fmt::Debug> SemilatticeOfGroups<I> {
    /// Compares indices, components and, for every link, the isomorphism
    /// types of kernel and image. Returns a description of the first
    /// difference.
    pub fn mismatch(&self, other: &SemilatticeOfGroups<I>) -> Option<String> {
        if self.indices != other.indices {
            return Some(format!(
                "indices differ: {:?} vs {:?}",
                self.indices, other.indices
            ));
        }
        for (i, (a, b)) in self.components.iter().zip(&other.components).enumerate() {
            if a != b {
                return Some(format!("component {:?}: {a} vs {b}", self.indices[i]));
            }
        }
        let keys_a: Vec<_> = self.links.keys().collect();
        let keys_b: Vec<_> = other.links.keys().collect();
        if keys_a != keys_b {
            return Some("link sets differ".into());
        }
        for (k, h) in &self.links {
            let g = &other.links[k];
            if h.kernel() != g.kernel() || h.image() != g.image() {
                return Some(format!(
                    "link {k:?}: kernel {} image {} vs kernel {} image {}",
                    h.kernel(),
                    h.image(),
                    g.kernel(),
                    g.image()
                ));
            }
        }
        None
    }
}

/// One component: `H₀²(S/I, A)` with the index bookkeeping between `S` and `S/I`.
#[derive(Clone, Debug)]
struct Part {
    ideal: Ideal,
    to_quotient: Vec<Option<usize>>,
    from_quotient: Vec<usize>,
    computation: Computation,
}

impl Part {
    fn new(s: &Semigroup, a: &AbGroup, ideal: Ideal) -> Result<Self, SchurError> {
        let (q, to_quotient) = rees_quotient_with_map(s, &ideal)?;
        let mut from_quotient = vec![usize::MAX; q.len()];
        for (x, t) in to_quotient.iter().enumerate() {
            if let Some(t) = t {
                from_quotient[*t] = x;
            }
        }
        let computation = cohomology(&trivial_module(&q, a), 2, Variant::Zero)?;
        Ok(Part {
            ideal,
            to_quotient,
            from_quotient,
            computation,
        })
    }

    /// Restriction of a factor set to the 2-nerve of `S/I`.
    fn cochain(&self, rho: &FactorSet) -> Cochain<Int> {
        let a = rho.group();
        let values = self
            .computation
            .nerve()
            .tuples()
            .iter()
            .map(|t| {
                let v = rho
                    .get(self.from_quotient[t[0]], self.from_quotient[t[1]])
                    .cloned()
                    .unwrap_or_else(|| a.zero_element());
                (t.clone(), v)
            })
            .collect();
        Cochain { degree: 2, values }
    }

    /// The factor set vanishing on `I` that extends a cochain on `S/I`.
    fn factor_set(&self, s: &Semigroup, a: &AbGroup, f: &Cochain<Int>) -> FactorSet {
        FactorSet::from_fn(s, a, |x, y| {
            match (self.to_quotient[x], self.to_quotient[y]) {
                (Some(qx), Some(qy)) => f.get(&[qx, qy]).cloned(),
                _ => None,
            }
        })
        .expect("shape is right by construction")
    }
}

/// The Schur multiplier with enough data to classify factor sets.
#[derive(Clone, Debug)]
pub struct SchurMultiplier {
    pub semilattice: SemilatticeOfGroups<Ideal>,
    semigroup: Semigroup,
    group: AbGroup,
    parts: Vec<Part>,
}

impl SchurMultiplier {
    /// Component index and class coordinates of a valid factor set.
    pub fn class_of(&self, rho: &FactorSet) -> Result<(usize, Vec<Int>), SchurError> {
        if rho.semigroup() != &self.semigroup || rho.group() != &self.group {
            return Err(SchurError::Mismatch);
        }
        rho.validate()?;
        let ideal = rho.support_ideal()?;
        let i = self
            .parts
            .iter()
            .position(|p| p.ideal == ideal)
            .ok_or(SchurError::NotAnIdeal)?;
        let class = self.parts[i]
            .computation
            .class_of(&self.parts[i].cochain(rho))?
            .expect("valid factor sets restrict to cocycles");
        Ok((i, class))
    }

    /// A factor set representing the given class of component `i`.
    pub fn representative(&self, i: usize, class: &[Int]) -> FactorSet {
        let part = &self.parts[i];
        let comp = &part.computation;
        let mut v = vec![Int::from(0); comp.nerve().len() * self.group.ngens()];
        for (c, g) in class.iter().zip(comp.homology().generators()) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += c * gi;
            }
        }
        let f = Cochain::from_vector(comp.nerve(), &self.group, &v);
        part.factor_set(&self.semigroup, &self.group, &f)
    }
}

/// `M(S)` with trivial coefficients in `A`: one component `H₀²(S/I, A)` per
/// ideal `I` (with `S/∅ = S⁰`), linked by restriction of support.
pub fn schur_multiplier(s: &Semigroup, a: &AbGroup) -> Result<SchurMultiplier, SchurError> {
    s.identity().ok_or(SchurError::NotAMonoid)?;
    let parts: Vec<Part> = ideals(s)
        .into_iter()
        .map(|i| Part::new(s, a, i))
        .collect::<Result<_, _>>()?;
    let mut links = BTreeMap::new();
    for (i, pi) in parts.iter().enumerate() {
        for (k, pk) in parts.iter().enumerate() {
            if !pi.ideal.is_subset(&pk.ideal) {
                continue;
            }
            let restrict = |f: &Cochain<Int>| -> Option<Vec<Int>> {
                let rho = pi
                    .factor_set(s, a, f)
                    .product(&FactorSet::epsilon(s, a, &pk.ideal))
                    .expect("same carrier");
                pk.computation
                    .class_of(&pk.cochain(&rho))
                    .expect("cochain on the right nerve")
            };
            let src = pi.computation.group().clone();
            let tgt = pk.computation.group().clone();
            let mut cols = Vec::new();
            for w in pi.computation.witnesses() {
                cols.push(restrict(&w).ok_or(SchurError::IllDefinedLink { from: i, to: k })?);
            }
            let (d_in, _) = pi.computation.differentials();
            for j in 0..d_in.cols() {
                let b = Cochain::from_vector(pi.computation.nerve(), a, &d_in.column(j));
                let c = restrict(&b).ok_or(SchurError::IllDefinedLink { from: i, to: k })?;
                if !tgt.is_zero_element(&c) {
                    return Err(SchurError::IllDefinedLink { from: i, to: k });
                }
            }
            let hom = Hom::new(src, tgt.clone(), Matrix::from_columns(tgt.ngens(), &cols))
                .map_err(|_| SchurError::IllDefinedLink { from: i, to: k })?;
            links.insert((i, k), hom);
        }
    }
    let semilattice = SemilatticeOfGroups {
        indices: parts.iter().map(|p| p.ideal.clone()).collect(),
        components: parts
            .iter()
            .map(|p| p.computation.group().clone())
            .collect(),
        links,
    };
    Ok(SchurMultiplier {
        semilattice,
        semigroup: s.clone(),
        group: a.clone(),
        parts,
    })
}

/// Encoded factor set values: `0` is the zero marker, `k + 1` the `k`-th
/// element of `A`.
type Code = Vec<u8>;

struct BruteGroup {
    elements: Vec<Vec<Int>>,
    add: Vec<Vec<usize>>,
    neg: Vec<usize>,
}

impl BruteGroup {
    fn new(a: &AbGroup) -> Self {
        let elements = a.elements();
        let index: HashMap<Vec<Int>, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let add = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&a.add(x, y)]).collect())
            .collect();
        let neg = elements.iter().map(|x| index[&a.neg(x)]).collect();
        BruteGroup { elements, add, neg }
    }

    fn plus(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            self.add[a as usize - 1][b as usize - 1] as u8 + 1
        }
    }
}

/// Every total map `S × S → A ∪ {0}` satisfying the cocycle law and the
/// normalization, found by backtracking over pairs.
fn brute_factor_sets(s: &Semigroup, g: &BruteGroup) -> Vec<Code> {
    let n = s.len();
    let one = s.identity().expect("checked by caller");
    let pair = |x: usize, y: usize| x * n + y;
    // constraints grouped by the last pair they mention
    let mut cocycle: Vec<Vec<[usize; 4]>> = vec![Vec::new(); n * n];
    let mut normal: Vec<Vec<[usize; 2]>> = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let c = [
                    pair(x, y),
                    pair(s.mul(x, y), z),
                    pair(x, s.mul(y, z)),
                    pair(y, z),
                ];
                cocycle[*c.iter().max().unwrap()].push(c);
            }
            let c = [pair(x, y), pair(one, s.mul(x, y))];
            normal[c[0].max(c[1])].push(c);
        }
    }
    let symbols = g.elements.len() as u8 + 1;
    let mut out = Vec::new();
    let mut cur = vec![0u8; n * n];
    fn go(
        k: usize,
        cur: &mut Vec<u8>,
        symbols: u8,
        g: &BruteGroup,
        cocycle: &[Vec<[usize; 4]>],
        normal: &[Vec<[usize; 2]>],
        out: &mut Vec<Code>,
    ) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..symbols {
            cur[k] = v;
            let ok = cocycle[k]
                .iter()
                .all(|c| g.plus(cur[c[0]], cur[c[1]]) == g.plus(cur[c[2]], cur[c[3]]))
                && normal[k]
                    .iter()
                    .all(|c| (cur[c[0]] == 0) == (cur[c[1]] == 0));
            if ok {
                go(k + 1, cur, symbols, g, cocycle, normal, out);
            }
        }
    }
    go(0, &mut cur, symbols, g, &cocycle, &normal, &mut out);
    out
}

/// Canonical representative of the equivalence class: least code in the
/// orbit under all `α : S → A`.
fn brute_canonical(s: &Semigroup, g: &BruteGroup, rho: &Code) -> Code {
    let n = s.len();
    let m = g.elements.len();
    let mut best = rho.clone();
    let mut alpha = vec![0usize; n];
    loop {
        let twisted: Code = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                if rho[k] == 0 {
                    return 0;
                }
                let t = g.add[rho[k] as usize - 1][alpha[x]];
                let t = g.add[t][alpha[y]];
                (g.add[t][g.neg[alpha[s.mul(x, y)]]] + 1) as u8
            })
            .collect();
        if twisted < best {
            best = twisted;
        }
        let mut i = 0;
        while i < n {
            alpha[i] += 1;
            if alpha[i] < m {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

/// Exhaustive twin of [`schur_multiplier`]: enumerates all factor sets,
/// groups them by zero set and divides out equivalence by brute force.
pub fn brute_multiplier(
    s: &Semigroup,
    a: &AbGroup,
) -> Result<SemilatticeOfGroups<Ideal>, SchurError> {
    let one = s.identity().ok_or(SchurError::NotAMonoid)?;
    let order = a.order().and_then(|o| usize::try_from(o).ok());
    match order {
        Some(o) if s.len() <= 4 && o <= 3 => {}
        _ => {
            return Err(SchurError::CapExceeded(format!(
                "|S| = {}, A = {a}",
                s.len()
            )))
        }
    }
    let g = BruteGroup::new(a);
    let n = s.len();
    let all = brute_factor_sets(s, &g);
    let index = ideals(s);
    // classes of each component, as canonical codes
    let mut classes: Vec<Vec<Code>> = vec![Vec::new(); index.len()];
    for rho in &all {
        let zeros = (0..n).filter(|&z| rho[one * n + z] == 0);
        let ideal = Ideal::new(s, zeros).map_err(|_| SchurError::NotAnIdeal)?;
        let i = index
            .iter()
            .position(|j| *j == ideal)
            .ok_or(SchurError::NotAnIdeal)?;
        let c = brute_canonical(s, &g, rho);
        if !classes[i].contains(&c) {
            classes[i].push(c);
        }
    }
    let mut components = Vec::new();
    let mut coords: Vec<HashMap<Code, Vec<Int>>> = Vec::new();
    for cl in &classes {
        let lookup: HashMap<&Code, usize> = cl.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let add = |i: usize, j: usize| {
            let p: Code = cl[i]
                .iter()
                .zip(&cl[j])
                .map(|(&u, &v)| g.plus(u, v))
                .collect();
            lookup[&brute_canonical(s, &g, &p)]
        };
        let (group, co) = decompose_table::<Int>(cl.len(), add);
        components.push(group);
        coords.push(cl.iter().cloned().zip(co).collect());
    }
    let mut links = BTreeMap::new();
    for i in 0..index.len() {
        for k in 0..index.len() {
            if !index[i].is_subset(&index[k]) {
                continue;
            }
            let src = &components[i];
            let tgt = &components[k];
            let mut cols = Vec::new();
            for j in 0..src.ngens() {
                let mut unit = vec![Int::from(0); src.ngens()];
                unit[j] = Int::from(1);
                let code = coords[i]
                    .iter()
                    .find(|(_, v)| **v == unit)
                    .map(|(c, _)| c)
                    .expect("decomposition hits every unit vector");
                let restricted: Code = (0..n * n)
                    .map(|p| {
                        if index[k].contains(s.mul(p / n, p % n)) {
                            0
                        } else {
                            code[p]
                        }
                    })
                    .collect();
                cols.push(coords[k][&brute_canonical(s, &g, &restricted)].clone());
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
        indices: index,
        components,
        links,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{adjoin, catalog, Adjoin};

    fn z(n: i64) -> AbGroup {
        AbGroup::cyclic(Int::from(n))
    }

    fn val(v: i64) -> Value {
        Some(vec![Int::from(v)])
    }

    #[test]
    fn group_cocycles_and_epsilons_validate() {
        let g = catalog::cyclic_group(2);
        let a = z(2);
        FactorSet::one(&g, &a).validate().unwrap();
        let nontrivial =
            FactorSet::from_fn(&g, &a, |x, y| val(i64::from(x == 1 && y == 1))).unwrap();
        nontrivial.validate().unwrap();
        let s = adjoin(&catalog::uvw_semigroup(), Adjoin::Identity);
        for i in ideals(&s) {
            let e = FactorSet::epsilon(&s, &a, &i);
            e.validate().unwrap();
            assert!(e.is_idempotent());
            assert_eq!(e.support_ideal().unwrap(), i);
        }
    }

    #[test]
    fn normalization_violation() {
        let s = adjoin(&catalog::null_semigroup(&["a"]), Adjoin::Identity);
        let a = z(2);
        let zero = s.zero().unwrap();
        let one = s.identity().unwrap();
        let rho = FactorSet::from_fn(
            &s,
            &a,
            |x, y| if (x, y) == (one, zero) { None } else { val(0) },
        )
        .unwrap();
        assert!(matches!(
            rho.validate(),
            Err(SchurError::Normalization { .. }) | Err(SchurError::CocycleLaw { .. })
        ));
    }

    #[test]
    fn epsilon_products_follow_unions() {
        let s = adjoin(&catalog::uvw_semigroup(), Adjoin::Identity);
        let a = z(3);
        let ids = ideals(&s);
        for i in &ids {
            for j in &ids {
                let p = FactorSet::epsilon(&s, &a, i)
                    .product(&FactorSet::epsilon(&s, &a, j))
                    .unwrap();
                assert_eq!(p, FactorSet::epsilon(&s, &a, &i.union(j)));
            }
        }
    }

    #[test]
    fn equivalence_recovers_twist() {
        let s = adjoin(&catalog::uvw_semigroup(), Adjoin::Identity);
        let a = z(4);
        let w = s.index_of("w").unwrap();
        let zero = s.zero().unwrap();
        let ideal = Ideal::new(&s, [w, zero]).unwrap();
        let rho = FactorSet::epsilon(&s, &a, &ideal);
        let alpha: Vec<Vec<Int>> = (0..s.len()).map(|x| vec![Int::from(x as i64)]).collect();
        let sigma = rho.twisted(&alpha);
        sigma.validate().unwrap();
        let found = sigma
            .equivalent(&rho)
            .unwrap()
            .expect("twists are equivalent");
        assert_eq!(rho.twisted(&found), sigma);
        assert_eq!(rho.support_ideal().unwrap(), ideal);
        assert!(FactorSet::one(&s, &a).equivalent(&rho).unwrap().is_none());
    }

    #[test]
    fn multiplier_of_z2_with_z4() {
        let g = catalog::cyclic_group(2);
        let m = schur_multiplier(&g, &z(4)).unwrap();
        assert_eq!(m.semilattice.len(), 2);
        assert_eq!(m.semilattice.components[0], z(2));
        assert!(m.semilattice.components[1].is_trivial());
        assert_eq!(m.semilattice.composition_failure(), None);
    }

    #[test]
    fn multiplier_matches_brute_force_on_small_monoids() {
        for n in 1..=3 {
            for s in catalog::all_monoids(n) {
                for a in [z(2), z(3)] {
                    let fast = schur_multiplier(&s, &a).unwrap();
                    let slow = brute_multiplier(&s, &a).unwrap();
                    assert_eq!(
                        fast.semilattice.mismatch(&slow),
                        None,
                        "{:?}",
                        s.table_rows()
                    );
                    assert_eq!(slow.composition_failure(), None);
                }
            }
        }
    }

    #[test]
    fn component_at_ideal_is_multiplier_of_quotient() {
        let s = adjoin(&catalog::uvw_semigroup(), Adjoin::Identity);
        let a = z(2);
        let m = schur_multiplier(&s, &a).unwrap();
        for (i, ideal) in m.semilattice.indices.iter().enumerate() {
            if ideal.is_empty() || ideal.len() == s.len() {
                continue;
            }
            let q = crate::semigroup::rees_quotient(&s, ideal).unwrap();
            let mq = schur_multiplier(&q, &a).unwrap();
            let zero_only = mq
                .semilattice
                .indices
                .iter()
                .position(|j| j.len() == 1)
                .unwrap();
            assert_eq!(
                m.semilattice.components[i],
                mq.semilattice.components[zero_only]
            );
        }
    }

    #[test]
    fn classes_respect_products() {
        let s = adjoin(&catalog::uvw_semigroup(), Adjoin::Identity);
        let a = z(2);
        let m = schur_multiplier(&s, &a).unwrap();
        let ids = &m.semilattice.indices;
        for i in 0..ids.len() {
            for j in 0..ids.len() {
                let gi = &m.semilattice.components[i];
                let gj = &m.semilattice.components[j];
                for x in gi.elements() {
                    for y in gj.elements() {
                        let p = m
                            .representative(i, &x)
                            .product(&m.representative(j, &y))
                            .unwrap();
                        let (k, _) = m.class_of(&p).unwrap();
                        assert_eq!(ids[k], ids[i].union(&ids[j]));
                    }
                }
            }
        }
    }
}
