//! Weak 2-cocycles of finite-field extensions, modifications of finite
//! groups and the Brauer monoid as a semilattice of 0-cohomology groups.
//!
//! Elements of `K^×` are written as exponents of a fixed generator, so
//! `K^× = Z/(qⁿ − 1)` and the Frobenius power `φ^i` multiplies exponents by
//! `q^i`. The Galois group is `Z/n` with `φ^i` stored as `i`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::abelian::{decompose_table, AbelianError};
use crate::cohomology::{cohomology, Cochain, CohomologyError, Variant};
use crate::linalg::Matrix;
use crate::module::{galois_units_module, ModuleError};
use crate::schur::SemilatticeOfGroups;
use crate::semigroup::{catalog, zero_cancellative_witness, Semigroup, SemigroupError};
use crate::{Computation, Hom, Int};

/// Largest `qⁿ − 1` accepted.
pub const MAX_UNITS: u64 = 1 << 20;
/// Largest group whose modifications are searched.
pub const MAX_MODIFIED_GROUP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("too large: {0}")]
    CapExceeded(String),
    #[error("expected {expected} values, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("normalization fails at ({0}, {1})")]
    Normalization(usize, usize),
    #[error("crossed product is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("not a group")]
    NotAGroup,
    #[error("not a modification: {0}")]
    NotAModification(String),
    #[error("weak cocycle is not idempotent")]
    NotIdempotent,
    #[error("weak cocycles over different extensions")]
    Mismatch,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// `GF(qⁿ)/GF(q)` in exponent form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Extension {
    pub q: u64,
    pub n: u32,
    /// `qⁿ − 1`, the order of `K^×`.
    pub units: u64,
}

impl Extension {
    pub fn new(q: u64, n: u32) -> Result<Self, BrauerError> {
        if q < 2
            || (2..q).find(|d| q % d == 0).is_some_and(|p| {
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                }
                r != 1
            })
        {
            return Err(BrauerError::NotPrimePower(q));
        }
        if n == 0 {
            return Err(BrauerError::ZeroDegree);
        }
        let units = q
            .checked_pow(n)
            .map(|v| v - 1)
            .filter(|&u| u <= MAX_UNITS)
            .ok_or_else(|| BrauerError::CapExceeded(format!("{q}^{n}")))?;
        Ok(Extension { q, n, units })
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    /// `φ^i(g^k)` as an exponent.
    pub fn frobenius(&self, i: usize, k: u64) -> u64 {
        let mut f = 1 % self.units.max(1);
        for _ in 0..i {
            f = f * self.q % self.units.max(1);
        }
        k * f % self.units.max(1)
    }

    /// Product in `K` of elements given as optional exponents (`None` is 0).
    pub fn mul(&self, a: Option<u64>, b: Option<u64>) -> Option<u64> {
        Some((a? + b?) % self.units.max(1))
    }

    pub fn inv(&self, a: u64) -> u64 {
        (self.units - a % self.units.max(1)) % self.units.max(1)
    }

    /// The galois group `Z/n`.
    pub fn galois_group(&self) -> Semigroup {
        catalog::cyclic_group(self.degree())
    }
}

/// A map `G × G → K` on the Galois group, values in exponent form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakCocycle {
    ext: Extension,
    values: Vec<Option<u64>>,
}

type Monomial = (Option<u64>, usize);

impl WeakCocycle {
    /// Values in row-major order of pairs `(σ, τ)`, reduced mod `qⁿ − 1`.
    pub fn new(ext: Extension, values: Vec<Option<u64>>) -> Result<Self, BrauerError> {
        let n = ext.degree();
        if values.len() != n * n {
            return Err(BrauerError::Shape {
                expected: n * n,
                found: values.len(),
            });
        }
        let values = values
            .into_iter()
            .map(|v| v.map(|k| k % ext.units.max(1)))
            .collect();
        Ok(WeakCocycle { ext, values })
    }

    pub fn from_fn(ext: Extension, f: impl Fn(usize, usize) -> Option<u64>) -> Self {
        let n = ext.degree();
        let values = (0..n * n)
            .map(|k| f(k / n, k % n).map(|v| v % ext.units.max(1)))
            .collect();
        WeakCocycle { ext, values }
    }

    pub fn one(ext: Extension) -> Self {
        Self::from_fn(ext, |_, _| Some(0))
    }

    pub fn extension(&self) -> Extension {
        self.ext
    }

    pub fn values(&self) -> &[Option<u64>] {
        &self.values
    }

    pub fn get(&self, s: usize, t: usize) -> Option<u64> {
        self.values[s * self.ext.degree() + t]
    }

    fn compose(&self, s: usize, t: usize) -> usize {
        (s + t) % self.ext.degree()
    }

    /// `aσ · bτ = a σ(b) f(σ, τ) στ`.
    pub fn multiply(&self, x: Monomial, y: Monomial) -> Monomial {
        let (a, s) = x;
        let (b, t) = y;
        let c = self.ext.mul(
            self.ext.mul(a, b.map(|k| self.ext.frobenius(s, k))),
            self.get(s, t),
        );
        match c {
            None => (None, 0),
            Some(c) => (Some(c), self.compose(s, t)),
        }
    }

    /// Normalization at the identity, then associativity of the crossed
    /// product on all basis triples with coefficients `1` and `g`.
    pub fn validate(&self) -> Result<(), BrauerError> {
        let n = self.ext.degree();
        for s in 0..n {
            if self.get(0, s) != Some(0) {
                return Err(BrauerError::Normalization(0, s));
            }
            if self.get(s, 0) != Some(0) {
                return Err(BrauerError::Normalization(s, 0));
            }
        }
        let coeffs = if self.ext.units > 1 {
            vec![0, 1]
        } else {
            vec![0]
        };
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    for &a in &coeffs {
                        for &b in &coeffs {
                            for &c in &coeffs {
                                let (x, y, z) = ((Some(a), s), (Some(b), t), (Some(c), u));
                                if self.multiply(self.multiply(x, y), z)
                                    != self.multiply(x, self.multiply(y, z))
                                {
                                    return Err(BrauerError::NotAssociative(s, t, u));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// First triple violating `σ(f(τ, ω)) f(σ, τω) = f(σ, τ) f(στ, ω)`.
    pub fn identity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.ext.degree();
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let lhs = self.ext.mul(
                        self.get(t, u).map(|k| self.ext.frobenius(s, k)),
                        self.get(s, self.compose(t, u)),
                    );
                    let rhs = self
                        .ext
                        .mul(self.get(s, t), self.get(self.compose(s, t), u));
                    if lhs != rhs {
                        return Some((s, t, u));
                    }
                }
            }
        }
        None
    }

    pub fn is_idempotent(&self) -> bool {
        self.values.iter().all(|v| matches!(v, None | Some(0)))
    }

    /// The idempotent with the same zero set.
    pub fn support_idempotent(&self) -> WeakCocycle {
        let values = self.values.iter().map(|v| v.map(|_| 0)).collect();
        WeakCocycle {
            ext: self.ext,
            values,
        }
    }

    pub fn zero_set(&self) -> Vec<bool> {
        self.values.iter().map(Option::is_none).collect()
    }

    pub fn product(&self, other: &WeakCocycle) -> Result<WeakCocycle, BrauerError> {
        if self.ext != other.ext {
            return Err(BrauerError::Mismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| self.ext.mul(a, b))
            .collect();
        Ok(WeakCocycle {
            ext: self.ext,
            values,
        })
    }

    /// `f(σ, τ) p(σ) σ(p(τ)) p(στ)⁻¹`, the effect of the basis change
    /// `σ ↦ p(σ)σ` on the crossed product.
    pub fn twisted(&self, p: &[u64]) -> WeakCocycle {
        let n = self.ext.degree();
        let e = &self.ext;
        let values = (0..n * n)
            .map(|k| {
                let (s, t) = (k / n, k % n);
                let v = e.mul(self.values[k], Some(p[s]));
                let v = e.mul(v, Some(e.frobenius(s, p[t])));
                e.mul(v, Some(e.inv(p[self.compose(s, t)])))
            })
            .collect();
        WeakCocycle {
            ext: self.ext,
            values,
        }
    }
}

/// A monoid structure on `G ∪ {0}` where each product is the group product
/// or `0`; `zero_pairs[x·|G| + y]` marks `x ∘ y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modification {
    group: Semigroup,
    zero_pairs: Vec<bool>,
    semigroup: Semigroup,
}

impl Modification {
    pub fn new(group: &Semigroup, zero_pairs: Vec<bool>) -> Result<Self, BrauerError> {
        if !group.is_group() {
            return Err(BrauerError::NotAGroup);
        }
        let n = group.len();
        if zero_pairs.len() != n * n {
            return Err(BrauerError::Shape {
                expected: n * n,
                found: zero_pairs.len(),
            });
        }
        let one = group.identity().expect("groups have identities");
        if (0..n).any(|x| zero_pairs[one * n + x] || zero_pairs[x * n + one]) {
            return Err(BrauerError::NotAModification(
                "the identity must not multiply to zero".into(),
            ));
        }
        let mut names = group.names().to_vec();
        names.push(crate::semigroup::fresh_name(&names, "0"));
        let semigroup = Semigroup::from_fn(names, Some(n), |x, y| {
            if x == n || y == n || zero_pairs[x * n + y] {
                n
            } else {
                group.mul(x, y)
            }
        })
        .map_err(|e| BrauerError::NotAModification(e.to_string()))?;
        Ok(Modification {
            group: group.clone(),
            zero_pairs,
            semigroup,
        })
    }

    /// The modification `G_e` of the Galois group.
    pub fn from_idempotent(e: &WeakCocycle) -> Result<Self, BrauerError> {
        if !e.is_idempotent() {
            return Err(BrauerError::NotIdempotent);
        }
        e.validate()?;
        Modification::new(&e.ext.galois_group(), e.zero_set())
    }

    /// The idempotent weak cocycle of a modification of the Galois group.
    pub fn to_idempotent(&self, ext: Extension) -> Result<WeakCocycle, BrauerError> {
        if self.group != ext.galois_group() {
            return Err(BrauerError::Mismatch);
        }
        WeakCocycle::new(
            ext,
            self.zero_pairs
                .iter()
                .map(|&z| if z { None } else { Some(0) })
                .collect(),
        )
    }

    pub fn group(&self) -> &Semigroup {
        &self.group
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn zero_pairs(&self) -> &[bool] {
        &self.zero_pairs
    }

    pub fn zero_count(&self) -> usize {
        self.zero_pairs.iter().filter(|&&z| z).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.zero_count() == 0
    }

    /// Checks that the units form a subgroup, that the rest is a nilpotent
    /// ideal and that the monoid is 0-cancellative.
    pub fn structure_failure(&self) -> Option<String> {
        let s = &self.semigroup;
        let units = s.units();
        for &x in &units {
            for &y in &units {
                if !units.contains(&s.mul(x, y)) {
                    return Some(format!("units not closed at ({x}, {y})"));
                }
            }
        }
        let rest: Vec<usize> = (0..s.len()).filter(|x| !units.contains(x)).collect();
        for &x in &rest {
            for y in 0..s.len() {
                if !rest.contains(&s.mul(x, y)) || !rest.contains(&s.mul(y, x)) {
                    return Some(format!("non-units are not an ideal at ({x}, {y})"));
                }
            }
        }
        let zero = s.zero().expect("modifications have a zero");
        let mut power = rest.clone();
        let mut steps = 0;
        while power.iter().any(|&x| x != zero) {
            steps += 1;
            if steps > s.len() {
                return Some("non-units are not nilpotent".into());
            }
            let mut next: Vec<usize> = power
                .iter()
                .flat_map(|&x| rest.iter().map(move |&y| (x, y)))
                .map(|(x, y)| s.mul(x, y))
                .collect();
            next.sort_unstable();
            next.dedup();
            power = next;
        }
        if let Some((a, b, x)) = zero_cancellative_witness(s) {
            return Some(format!("not 0-cancellative: {a}, {b} agree on {x}"));
        }
        None
    }
}

/// All modifications of a group, ordered by number of zero products and
/// then lexicographically by zero pattern.
pub fn enumerate_modifications(group: &Semigroup) -> Result<Vec<Modification>, BrauerError> {
    if !group.is_group() {
        return Err(BrauerError::NotAGroup);
    }
    let n = group.len();
    if n > MAX_MODIFIED_GROUP {
        return Err(BrauerError::CapExceeded(format!("group of order {n}")));
    }
    let one = group.identity().expect("groups have identities");
    let free: Vec<usize> = (0..n).filter(|&x| x != one).collect();
    // decision variables: pairs of non-identity elements
    let mut var = vec![None; n * n];
    let mut pairs = Vec::new();
    for &x in &free {
        for &y in &free {
            var[x * n + y] = Some(pairs.len());
            pairs.push((x, y));
        }
    }
    // (x∘y)∘z = 0  ⟺  x∘(y∘z) = 0, attached to the last variable it reads
    let mut checks: Vec<Vec<[Option<usize>; 4]>> = vec![Vec::new(); pairs.len()];
    for &x in &free {
        for &y in &free {
            for &z in &free {
                let c = [
                    var[x * n + y],
                    var[group.mul(x, y) * n + z],
                    var[y * n + z],
                    var[x * n + group.mul(y, z)],
                ];
                if let Some(last) = c.iter().flatten().max() {
                    checks[*last].push(c);
                }
            }
        }
    }
    let mut found = Vec::new();
    let mut cur = vec![false; pairs.len()];
    fn holds(cur: &[bool], c: &[Option<usize>; 4]) -> bool {
        let z = |v: Option<usize>| v.is_some_and(|i| cur[i]);
        (z(c[0]) || z(c[1])) == (z(c[2]) || z(c[3]))
    }
    fn go(
        k: usize,
        cur: &mut Vec<bool>,
        checks: &[Vec<[Option<usize>; 4]>],
        found: &mut Vec<Vec<bool>>,
    ) {
        if k == cur.len() {
            found.push(cur.clone());
            return;
        }
        for v in [false, true] {
            cur[k] = v;
            if checks[k].iter().all(|c| holds(cur, c)) {
                go(k + 1, cur, checks, found);
            }
        }
        cur[k] = false;
    }
    go(0, &mut cur, &checks, &mut found);
    let mut out: Vec<Modification> = found
        .into_iter()
        .map(|bits| {
            let mut zero_pairs = vec![false; n * n];
            for (i, &(x, y)) in pairs.iter().enumerate() {
                zero_pairs[x * n + y] = bits[i];
            }
            Modification::new(group, zero_pairs)
        })
        .collect::<Result<_, _>>()?;
    out.sort_by(|a, b| {
        a.zero_count()
            .cmp(&b.zero_count())
            .then_with(|| a.zero_pairs.cmp(&b.zero_pairs))
    });
    Ok(out)
}

fn labels(m: &Modification) -> Vec<Option<u32>> {
    let n = m.group.len();
    (0..=n)
        .map(|x| if x == n { None } else { Some(x as u32) })
        .collect()
}

/// `H₀²(G(∘), K^×)` for a modification of the Galois group.
pub fn modification_cohomology(
    ext: Extension,
    m: &Modification,
) -> Result<Computation, BrauerError> {
    if m.group != ext.galois_group() {
        return Err(BrauerError::Mismatch);
    }
    let module = galois_units_module::<Int>(ext.q, ext.n, &m.semigroup, &labels(m))?;
    Ok(cohomology(&module, 2, Variant::Zero)?)
}

/// Restriction of a weak cocycle to the 2-nerve of `G_e`, `e` its support
/// idempotent; it is a 0-cocycle for the Galois module.
pub fn weak_cocycle_0cocycle_bridge(
    f: &WeakCocycle,
) -> Result<(Modification, Cochain<Int>), BrauerError> {
    f.validate()?;
    let m = Modification::from_idempotent(&f.support_idempotent())?;
    let comp = modification_cohomology(f.ext, &m)?;
    let c = restrict(f, &comp);
    let w = comp.witness(&c)?;
    assert!(
        w.is_cocycle,
        "restriction of a valid weak cocycle must be a 0-cocycle"
    );
    Ok((m, c))
}

fn restrict(f: &WeakCocycle, comp: &Computation) -> Cochain<Int> {
    let values = comp
        .nerve()
        .tuples()
        .iter()
        .map(|t| {
            (
                t.clone(),
                vec![Int::from(
                    f.get(t[0], t[1]).expect("nerve pairs are in the support"),
                )],
            )
        })
        .collect();
    Cochain { degree: 2, values }
}

/// Inverse of [`weak_cocycle_0cocycle_bridge`]: the weak cocycle vanishing
/// off the nerve of `G_e`.
pub fn weak_cocycle_from_cochain(
    ext: Extension,
    m: &Modification,
    c: &Cochain<Int>,
) -> Result<WeakCocycle, BrauerError> {
    let units = Int::from(ext.units);
    let n = ext.degree();
    let f = WeakCocycle::from_fn(ext, |s, t| {
        if m.zero_pairs[s * n + t] {
            None
        } else {
            let v = c.get(&[s, t]).map(|v| v[0].clone()).unwrap_or_default();
            let r: Int = ((v % &units) + &units) % &units;
            Some(u64::try_from(r).expect("reduced exponent fits"))
        }
    });
    f.validate()?;
    Ok(f)
}

/// The Brauer monoid with the cohomology computations behind each component.
#[derive(Clone, Debug)]
pub struct BrauerMonoid {
    pub extension: Extension,
    pub semilattice: SemilatticeOfGroups<Modification>,
    computations: Vec<Computation>,
}

impl BrauerMonoid {
    /// Component and class coordinates of a weak cocycle.
    pub fn class_of(&self, f: &WeakCocycle) -> Result<(usize, Vec<Int>), BrauerError> {
        if f.ext != self.extension {
            return Err(BrauerError::Mismatch);
        }
        f.validate()?;
        let zs = f.zero_set();
        let i = self
            .semilattice
            .indices
            .iter()
            .position(|m| m.zero_pairs == zs)
            .ok_or_else(|| {
                BrauerError::NotAModification("zero set matches no modification".into())
            })?;
        let class = self.computations[i]
            .class_of(&restrict(f, &self.computations[i]))?
            .expect("weak cocycles restrict to cocycles");
        Ok((i, class))
    }

    /// Twisting element `p` with `g = f · ∂p`, if the two are equivalent.
    pub fn equivalence(
        &self,
        f: &WeakCocycle,
        g: &WeakCocycle,
    ) -> Result<Option<Vec<u64>>, BrauerError> {
        let (i, cf) = self.class_of(f)?;
        let (j, cg) = self.class_of(g)?;
        if i != j || cf != cg {
            return Ok(None);
        }
        let comp = &self.computations[i];
        let ext = self.extension;
        let ratio = g.product(&WeakCocycle::from_fn(ext, |s, t| {
            f.get(s, t).map(|k| ext.inv(k))
        }))?;
        let v = restrict(&ratio, comp).to_vector(comp.nerve(), comp.coefficients())?;
        let phi = comp
            .preimage(&v)
            .expect("equal classes differ by a coboundary");
        let units = Int::from(ext.units);
        let p = (0..ext.degree())
            .map(|s| {
                let r: Int = ((phi.get(&[s]).expect("every group element is in the nerve")[0]
                    .clone()
                    % &units)
                    + &units)
                    % &units;
                u64::try_from(r).expect("reduced exponent fits")
            })
            .collect();
        Ok(Some(p))
    }
}

/// `Br(G, K)` for `K = GF(qⁿ)`: one component `H₀²(G(∘), K^×)` per
/// modification, linked by enlarging the zero set.
pub fn brauer_monoid(q: u64, n: u32) -> Result<BrauerMonoid, BrauerError> {
    let ext = Extension::new(q, n)?;
    let mods = enumerate_modifications(&ext.galois_group())?;
    let computations: Vec<Computation> = mods
        .iter()
        .map(|m| modification_cohomology(ext, m))
        .collect::<Result<_, _>>()?;
    let mut links = BTreeMap::new();
    for (i, mi) in mods.iter().enumerate() {
        for (k, mk) in mods.iter().enumerate() {
            if !mi
                .zero_pairs
                .iter()
                .zip(&mk.zero_pairs)
                .all(|(&a, &b)| !a || b)
            {
                continue;
            }
            let (ci, ck) = (&computations[i], &computations[k]);
            let shrink = |c: &Cochain<Int>| -> Option<Vec<Int>> {
                let values = ck
                    .nerve()
                    .tuples()
                    .iter()
                    .map(|t| (t.clone(), c.get(t).expect("smaller nerve").clone()))
                    .collect();
                ck.class_of(&Cochain { degree: 2, values })
                    .expect("cochain on the right nerve")
            };
            let mut cols = Vec::new();
            for w in ci.witnesses() {
                cols.push(shrink(&w).ok_or_else(|| {
                    BrauerError::NotAModification(format!("link {i} -> {k} leaves cocycles"))
                })?);
            }
            let (d_in, _) = ci.differentials();
            for j in 0..d_in.cols() {
                let b = Cochain::from_vector(ci.nerve(), ci.coefficients(), &d_in.column(j));
                if shrink(&b).is_none_or(|c| !ck.group().is_zero_element(&c)) {
                    return Err(BrauerError::NotAModification(format!(
                        "link {i} -> {k} not defined on classes"
                    )));
                }
            }
            links.insert(
                (i, k),
                Hom::new(
                    ci.group().clone(),
                    ck.group().clone(),
                    Matrix::from_columns(ck.group().ngens(), &cols),
                )?,
            );
        }
    }
    let semilattice = SemilatticeOfGroups {
        components: computations.iter().map(|c| c.group().clone()).collect(),
        indices: mods,
        links,
    };
    Ok(BrauerMonoid {
        extension: ext,
        semilattice,
        computations,
    })
}

/// Every map `G × G → K` that passes [`WeakCocycle::validate`].
pub fn brute_weak_cocycles(ext: Extension) -> Result<Vec<WeakCocycle>, BrauerError> {
    let n = ext.degree();
    let symbols = ext.units + 1;
    let free = (n - 1) * (n - 1);
    if (symbols as f64).powi(free as i32) > 2e6 {
        return Err(BrauerError::CapExceeded(format!(
            "{symbols}^{free} candidate maps"
        )));
    }
    let mut out = Vec::new();
    let total = symbols.pow(free as u32);
    for code in 0..total {
        let mut c = code;
        let mut values = vec![Some(0); n * n];
        for s in 1..n {
            for t in 1..n {
                let d = c % symbols;
                c /= symbols;
                values[s * n + t] = if d == 0 { None } else { Some(d - 1) };
            }
        }
        let f = WeakCocycle { ext, values };
        if f.validate().is_ok() {
            out.push(f);
        }
    }
    Ok(out)
}

/// Least twist of `f` over all `p : G → K^×`.
fn brute_canonical(f: &WeakCocycle) -> WeakCocycle {
    let ext = f.ext;
    let n = ext.degree();
    let mut best = f.clone();
    let mut p = vec![0u64; n];
    loop {
        let g = f.twisted(&p);
        if g.values < best.values {
            best = g;
        }
        let mut i = 0;
        while i < n {
            p[i] += 1;
            if p[i] < ext.units {
                break;
            }
            p[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

/// Exhaustive twin of [`brauer_monoid`]: all weak cocycles grouped by zero
/// set, divided by equivalence through explicit twisting.
pub fn brute_brauer(q: u64, n: u32) -> Result<SemilatticeOfGroups<Modification>, BrauerError> {
    let ext = Extension::new(q, n)?;
    if ext.units.pow(n) > 1_000_000 {
        return Err(BrauerError::CapExceeded(format!(
            "{} twists",
            ext.units.pow(n)
        )));
    }
    let all = brute_weak_cocycles(ext)?;
    let mut patterns: Vec<Vec<bool>> = all.iter().map(WeakCocycle::zero_set).collect();
    patterns.sort_by(|a, b| {
        a.iter()
            .filter(|&&z| z)
            .count()
            .cmp(&b.iter().filter(|&&z| z).count())
            .then_with(|| a.cmp(b))
    });
    patterns.dedup();
    let mut classes: Vec<Vec<WeakCocycle>> = vec![Vec::new(); patterns.len()];
    for f in &all {
        let i = patterns
            .iter()
            .position(|p| *p == f.zero_set())
            .expect("pattern collected above");
        let c = brute_canonical(f);
        if !classes[i].contains(&c) {
            classes[i].push(c);
        }
    }
    let mut components = Vec::new();
    let mut coords: Vec<HashMap<WeakCocycle, Vec<Int>>> = Vec::new();
    for cl in &classes {
        let add = |i: usize, j: usize| {
            let p = brute_canonical(&cl[i].product(&cl[j]).expect("same extension"));
            cl.iter()
                .position(|c| *c == p)
                .expect("components are closed under products")
        };
        let (group, co) = decompose_table::<Int>(cl.len(), add);
        components.push(group);
        coords.push(cl.iter().cloned().zip(co).collect());
    }
    let group = ext.galois_group();
    let indices: Vec<Modification> = patterns
        .iter()
        .map(|p| Modification::new(&group, p.clone()))
        .collect::<Result<_, _>>()?;
    let mut links = BTreeMap::new();
    for i in 0..patterns.len() {
        for k in 0..patterns.len() {
            if !patterns[i].iter().zip(&patterns[k]).all(|(&a, &b)| !a || b) {
                continue;
            }
            let (src, tgt) = (&components[i], &components[k]);
            let mut cols = Vec::new();
            for j in 0..src.ngens() {
                let mut unit = vec![Int::from(0); src.ngens()];
                unit[j] = Int::from(1);
                let f = coords[i]
                    .iter()
                    .find(|(_, v)| **v == unit)
                    .map(|(f, _)| f)
                    .expect("decomposition hits every unit vector");
                let restricted = WeakCocycle {
                    ext,
                    values: f
                        .values
                        .iter()
                        .zip(&patterns[k])
                        .map(|(&v, &z)| if z { None } else { v })
                        .collect(),
                };
                cols.push(coords[k][&brute_canonical(&restricted)].clone());
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

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Extension {
        Extension::new(2, 2).unwrap()
    }

    #[test]
    fn extension_arithmetic() {
        let e = gf4();
        assert_eq!(e.units, 3);
        assert_eq!(e.frobenius(1, 1), 2);
        assert_eq!(e.frobenius(2, 1), 1);
        assert!(matches!(
            Extension::new(6, 1),
            Err(BrauerError::NotPrimePower(6))
        ));
        assert!(matches!(Extension::new(2, 0), Err(BrauerError::ZeroDegree)));
    }

    #[test]
    fn one_and_idempotents_validate() {
        let e = gf4();
        WeakCocycle::one(e).validate().unwrap();
        let f = WeakCocycle::from_fn(e, |s, t| if s == 1 && t == 1 { None } else { Some(0) });
        f.validate().unwrap();
        let m = Modification::from_idempotent(&f).unwrap();
        assert_eq!(m.semigroup().mul(1, 1), 2);
        assert_eq!(m.to_idempotent(e).unwrap(), f);
        let bad = WeakCocycle::from_fn(e, |s, _| if s == 0 { None } else { Some(0) });
        assert!(matches!(
            bad.validate(),
            Err(BrauerError::Normalization(0, 0))
        ));
    }

    #[test]
    fn associativity_agrees_with_identity() {
        for (q, n) in [(2, 2), (3, 2), (2, 3)] {
            let ext = Extension::new(q, n).unwrap();
            let symbols = ext.units + 1;
            // a pseudo-random sweep of candidate maps
            let mut state = 12345u64;
            for _ in 0..3000 {
                let n = ext.degree();
                let values = (0..n * n)
                    .map(|k| {
                        if k / n == 0 || k % n == 0 {
                            return Some(0);
                        }
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        let d = (state >> 33) % symbols;
                        if d == 0 {
                            None
                        } else {
                            Some(d - 1)
                        }
                    })
                    .collect();
                let f = WeakCocycle::new(ext, values).unwrap();
                assert_eq!(
                    f.validate().is_ok(),
                    f.identity_failure().is_none(),
                    "{f:?}"
                );
            }
            for f in brute_weak_cocycles(ext).unwrap_or_default() {
                assert!(f.identity_failure().is_none());
            }
        }
    }

    #[test]
    fn modifications_of_small_groups() {
        assert_eq!(
            enumerate_modifications(&catalog::cyclic_group(2))
                .unwrap()
                .len(),
            2
        );
        for g in [
            catalog::cyclic_group(3),
            catalog::klein_four(),
            catalog::cyclic_group(4),
            catalog::symmetric_group3(),
        ] {
            let mods = enumerate_modifications(&g).unwrap();
            assert!(mods[0].is_trivial());
            for m in &mods {
                assert_eq!(m.structure_failure(), None);
                assert!(m.semigroup().associativity_witness().is_none());
            }
            // products of idempotents stay idempotent
            for a in &mods {
                for b in &mods {
                    let union: Vec<bool> = a
                        .zero_pairs()
                        .iter()
                        .zip(b.zero_pairs())
                        .map(|(&x, &y)| x || y)
                        .collect();
                    assert!(mods.iter().any(|m| m.zero_pairs() == union.as_slice()));
                }
            }
        }
    }

    #[test]
    fn modifications_against_all_subsets() {
        let g = catalog::cyclic_group(3);
        let mods = enumerate_modifications(&g).unwrap();
        let mut count = 0;
        for bits in 0u32..16 {
            let mut zp = vec![false; 9];
            for (i, (x, y)) in [(1, 1), (1, 2), (2, 1), (2, 2)].into_iter().enumerate() {
                zp[x * 3 + y] = bits >> i & 1 == 1;
            }
            if Modification::new(&g, zp).is_ok() {
                count += 1;
            }
        }
        assert_eq!(mods.len(), count);
    }

    #[test]
    fn brauer_gf4() {
        let b = brauer_monoid(2, 2).unwrap();
        assert_eq!(b.semilattice.len(), 2);
        assert!(b.semilattice.components.iter().all(|g| g.is_trivial()));
        let brute = brute_brauer(2, 2).unwrap();
        assert_eq!(b.semilattice.mismatch(&brute), None);
    }

    #[test]
    fn brauer_gf9_matches_brute_force() {
        let b = brauer_monoid(3, 2).unwrap();
        let brute = brute_brauer(3, 2).unwrap();
        assert_eq!(b.semilattice.mismatch(&brute), None);
        assert_eq!(b.semilattice.composition_failure(), None);
    }

    #[test]
    fn bridge_is_bijective_on_classes() {
        let ext = gf4();
        let b = brauer_monoid(2, 2).unwrap();
        let all = brute_weak_cocycles(ext).unwrap();
        for f in &all {
            let (m, c) = weak_cocycle_0cocycle_bridge(f).unwrap();
            assert_eq!(&weak_cocycle_from_cochain(ext, &m, &c).unwrap(), f);
            for g in &all {
                let brute_equal = brute_canonical(f) == brute_canonical(g);
                assert_eq!(
                    b.class_of(f).unwrap() == b.class_of(g).unwrap(),
                    brute_equal
                );
                if let Some(p) = b.equivalence(f, g).unwrap() {
                    assert_eq!(f.twisted(&p), *g);
                }
            }
        }
    }
}
