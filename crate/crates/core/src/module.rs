//! Coefficient modules: abelian groups with an action of a finite semigroup.

use thiserror::Error;

use crate::abelian::{AbelianError, FinAbGroup, GroupHom};
use crate::linalg::{lattice_basis, Matrix, Subquotient};
use crate::scalar::Scalar;
use crate::semigroup::{Semigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("expected {expected} action matrices, got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("action of element {element} is not an endomorphism: {source}")]
    BadEndomorphism {
        element: usize,
        source: AbelianError,
    },
    #[error("action is not compatible with the product of elements {s} and {t}")]
    Violation { s: usize, t: usize },
    #[error("left action of {s} does not commute with right action of {t}")]
    NotCommuting { s: usize, t: usize },
    #[error("labeling is not additive on the pair ({s}, {t})")]
    InvalidLabeling { s: usize, t: usize },
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("element {s} does not map the corner into itself")]
    NotInvariant { s: usize },
    #[error("semigroup has no zero")]
    NoZero,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A finitely generated abelian group `A` with one endomorphism per element
/// of `S`.
///
/// As a 0-module only the elements of `S∖0` matter; the entry for the zero
/// is kept so the same value can serve as an ordinary module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroModule<T> {
    semigroup: Semigroup,
    group: FinAbGroup<T>,
    action: Vec<Matrix<T>>,
}

/// Left and right actions of `S∖0` on the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule<T> {
    semigroup: Semigroup,
    group: FinAbGroup<T>,
    left: Vec<Matrix<T>>,
    right: Vec<Matrix<T>>,
}

fn check_endomorphisms<T: Scalar>(
    g: &FinAbGroup<T>,
    mats: &[Matrix<T>],
) -> Result<Vec<Matrix<T>>, ModuleError> {
    mats.iter()
        .enumerate()
        .map(|(i, m)| {
            GroupHom::new(g.clone(), g.clone(), m.clone())
                .map(|h| h.matrix().clone())
                .map_err(|source| ModuleError::BadEndomorphism { element: i, source })
        })
        .collect()
}

fn same_map<T: Scalar>(g: &FinAbGroup<T>, a: &Matrix<T>, b: &Matrix<T>) -> bool {
    let mut d = a.sub(b);
    d.reduce_rows(g.factors());
    d.is_zero()
}

impl<T: Scalar> ZeroModule<T> {
    /// Builds a module; every matrix must be a well-defined endomorphism.
    /// The action law is not checked here, see [`ZeroModule::validate`].
    pub fn new(
        semigroup: Semigroup,
        group: FinAbGroup<T>,
        action: Vec<Matrix<T>>,
    ) -> Result<Self, ModuleError> {
        if action.len() != semigroup.len() {
            return Err(ModuleError::WrongCount {
                expected: semigroup.len(),
                found: action.len(),
            });
        }
        let action = check_endomorphisms(&group, &action)?;
        Ok(ZeroModule {
            semigroup,
            group,
            action,
        })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn group(&self) -> &FinAbGroup<T> {
        &self.group
    }

    pub fn action(&self, s: usize) -> &Matrix<T> {
        &self.action[s]
    }

    /// `s · a`, reduced.
    pub fn act(&self, s: usize, a: &[T]) -> Vec<T> {
        self.group.normalize(&self.action[s].mul_vec(a))
    }

    /// Checks `s(ta) = (st)a` whenever `st ≠ 0` (for `s, t ≠ 0`).
    pub fn validate(&self) -> Result<(), ModuleError> {
        let s = &self.semigroup;
        let nz = s.nonzero();
        for &x in &nz {
            for &y in &nz {
                let xy = s.mul(x, y);
                if s.is_zero(xy) {
                    continue;
                }
                if !same_map(
                    &self.group,
                    &self.action[x].mul(&self.action[y]),
                    &self.action[xy],
                ) {
                    return Err(ModuleError::Violation { s: x, t: y });
                }
            }
        }
        Ok(())
    }

    /// Checks the action law for all pairs, the zero included.
    pub fn validate_total(&self) -> Result<(), ModuleError> {
        let s = &self.semigroup;
        for x in 0..s.len() {
            for y in 0..s.len() {
                if !same_map(
                    &self.group,
                    &self.action[x].mul(&self.action[y]),
                    &self.action[s.mul(x, y)],
                ) {
                    return Err(ModuleError::Violation { s: x, t: y });
                }
            }
        }
        Ok(())
    }

    /// The same action on a copy of `S` with extra or different structure
    /// (for instance `S` with a zero adjoined); `embedding[i]` is the index
    /// in `target` of element `i`. Unmapped elements act by `fill`.
    pub fn transport(
        &self,
        target: &Semigroup,
        embedding: &[usize],
        fill: &Matrix<T>,
    ) -> Result<ZeroModule<T>, ModuleError> {
        let mut action = vec![fill.clone(); target.len()];
        for (i, &j) in embedding.iter().enumerate() {
            action[j] = self.action[i].clone();
        }
        ZeroModule::new(target.clone(), self.group.clone(), action)
    }

    /// Restriction to a subsemigroup given with its embedding.
    pub fn restrict(
        &self,
        sub: &Semigroup,
        embedding: &[usize],
    ) -> Result<ZeroModule<T>, ModuleError> {
        let action = embedding.iter().map(|&x| self.action[x].clone()).collect();
        ZeroModule::new(sub.clone(), self.group.clone(), action)
    }
}

impl<T: Scalar> Bimodule<T> {
    pub fn new(
        semigroup: Semigroup,
        group: FinAbGroup<T>,
        left: Vec<Matrix<T>>,
        right: Vec<Matrix<T>>,
    ) -> Result<Self, ModuleError> {
        for v in [&left, &right] {
            if v.len() != semigroup.len() {
                return Err(ModuleError::WrongCount {
                    expected: semigroup.len(),
                    found: v.len(),
                });
            }
        }
        let left = check_endomorphisms(&group, &left)?;
        let right = check_endomorphisms(&group, &right)?;
        Ok(Bimodule {
            semigroup,
            group,
            left,
            right,
        })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn group(&self) -> &FinAbGroup<T> {
        &self.group
    }

    pub fn left(&self, s: usize) -> &Matrix<T> {
        &self.left[s]
    }

    pub fn right(&self, s: usize) -> &Matrix<T> {
        &self.right[s]
    }

    /// Left and right 0-module laws plus `(sa)t = s(at)` for `s, t ∈ S∖0`.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let s = &self.semigroup;
        let nz = s.nonzero();
        for &x in &nz {
            for &y in &nz {
                let xy = s.mul(x, y);
                if !s.is_zero(xy) {
                    if !same_map(
                        &self.group,
                        &self.left[x].mul(&self.left[y]),
                        &self.left[xy],
                    ) {
                        return Err(ModuleError::Violation { s: x, t: y });
                    }
                    // (a·x)·y = a·(xy)
                    if !same_map(
                        &self.group,
                        &self.right[y].mul(&self.right[x]),
                        &self.right[xy],
                    ) {
                        return Err(ModuleError::Violation { s: x, t: y });
                    }
                }
                if !same_map(
                    &self.group,
                    &self.left[x].mul(&self.right[y]),
                    &self.right[y].mul(&self.left[x]),
                ) {
                    return Err(ModuleError::NotCommuting { s: x, t: y });
                }
            }
        }
        Ok(())
    }
}

/// Every element acts as the identity.
pub fn trivial_module<T: Scalar>(s: &Semigroup, a: &FinAbGroup<T>) -> ZeroModule<T> {
    let id = Matrix::identity(a.ngens());
    ZeroModule {
        semigroup: s.clone(),
        group: a.clone(),
        action: vec![id; s.len()],
    }
}

/// Bimodule with trivial actions on both sides.
pub fn trivial_bimodule<T: Scalar>(s: &Semigroup, a: &FinAbGroup<T>) -> Bimodule<T> {
    let id = Matrix::identity(a.ngens());
    Bimodule {
        semigroup: s.clone(),
        group: a.clone(),
        left: vec![id.clone(); s.len()],
        right: vec![id; s.len()],
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q has a divisor");
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

/// Multiplicative group of `GF(q^n)` in exponent form, `Z/(q^n − 1)`, with the
/// element labelled `k` acting as the Frobenius power `x ↦ x^(q^k)`.
/// Unlabelled elements (the zero) act as the identity.
pub fn galois_units_module<T: Scalar>(
    q: u64,
    n: u32,
    s: &Semigroup,
    labeling: &[Option<u32>],
) -> Result<ZeroModule<T>, ModuleError> {
    if !is_prime_power(q) {
        return Err(ModuleError::NotPrimePower(q));
    }
    if n == 0 {
        return Err(ModuleError::ZeroDegree);
    }
    assert_eq!(labeling.len(), s.len(), "one label per element");
    for x in s.nonzero() {
        for y in s.nonzero() {
            let xy = s.mul(x, y);
            if s.is_zero(xy) {
                continue;
            }
            match (labeling[x], labeling[y], labeling[xy]) {
                (Some(a), Some(b), Some(c)) if (a + b) % n == c % n => {}
                _ => return Err(ModuleError::InvalidLabeling { s: x, t: y }),
            }
        }
    }
    let modulus = num_traits::pow(T::int(q as i64), n as usize) - T::one();
    let group = FinAbGroup::cyclic(modulus.clone());
    let action = labeling
        .iter()
        .map(|l| {
            if group.is_trivial() {
                return Matrix::zeros(0, 0);
            }
            let k = l.unwrap_or(0);
            let factor = num_traits::pow(T::int(q as i64), k as usize).reduce(&modulus);
            Matrix::from_rows(vec![vec![factor]])
        })
        .collect();
    ZeroModule::new(s.clone(), group, action)
}

/// The module `eA` over the subsemigroup on `sub` (which must be closed under
/// products and contain `e`). Returns the module and the ambient
/// representatives of its generators.
pub fn corner_module<T: Scalar>(
    m: &ZeroModule<T>,
    e: usize,
    sub: &[usize],
) -> Result<(ZeroModule<T>, Vec<Vec<T>>), ModuleError> {
    let s = m.semigroup();
    if s.mul(e, e) != e {
        return Err(ModuleError::NotIdempotent(e));
    }
    let (sub_s, emb) = s.subsemigroup(sub)?;
    let a = m.group();
    let rel = Matrix::diagonal(a.factors());
    let image = lattice_basis(&m.action(e).hcat(&rel));
    let corner = Subquotient::new(image, &rel).expect("relations lie in the image lattice");
    let gens = corner.generators().to_vec();
    let new_group = FinAbGroup::from_orders(corner.orders());
    debug_assert_eq!(new_group.factors(), corner.orders());
    let mut action = Vec::with_capacity(emb.len());
    for &x in &emb {
        let cols: Vec<Vec<T>> = gens
            .iter()
            .map(|g| {
                corner
                    .coordinates(&m.action(x).mul_vec(g))
                    .ok_or(ModuleError::NotInvariant { s: x })
            })
            .collect::<Result<_, _>>()?;
        action.push(Matrix::from_columns(gens.len(), &cols));
    }
    Ok((ZeroModule::new(sub_s, new_group, action)?, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{adjoin, catalog, Adjoin};

    type G = FinAbGroup<i64>;

    #[test]
    fn trivial_modules_validate() {
        for s in [
            catalog::uvw_semigroup(),
            catalog::brandt2(),
            catalog::mitchell_quotient(),
        ] {
            let m = trivial_module(&s, &G::cyclic(2));
            m.validate().unwrap();
            assert!(m.action(0).is_identity());
        }
    }

    #[test]
    fn violation_is_reported() {
        let s = adjoin(&catalog::cyclic_group(2), Adjoin::Zero);
        // g acts by -1 on Z/3 but the identity also acts by -1
        let neg = Matrix::from_i64_rows(&[&[-1]]);
        let m = ZeroModule::new(s, G::cyclic(3), vec![neg.clone(), neg.clone(), neg]).unwrap();
        assert_eq!(
            m.validate().unwrap_err(),
            ModuleError::Violation { s: 0, t: 0 }
        );
    }

    #[test]
    fn galois_modules() {
        let z2 = adjoin(&catalog::cyclic_group(2), Adjoin::Zero);
        let m: ZeroModule<i64> = galois_units_module(2, 2, &z2, &[Some(0), Some(1), None]).unwrap();
        assert_eq!(m.group().factors(), &[3]);
        assert_eq!(m.action(1), &Matrix::from_i64_rows(&[&[2]]));
        m.validate().unwrap();
        // GF(4)^× table: ζ^a ↦ ζ^(2a) is the Frobenius; squaring twice is the identity
        for a in 0..3i64 {
            assert_eq!(m.act(1, &m.act(1, &[a])), vec![a]);
        }
        let z3 = adjoin(&catalog::cyclic_group(3), Adjoin::Zero);
        let m: ZeroModule<i64> =
            galois_units_module(2, 3, &z3, &[Some(0), Some(1), Some(2), None]).unwrap();
        assert_eq!(m.group().factors(), &[7]);
        assert_eq!(m.action(1), &Matrix::from_i64_rows(&[&[2]]));
        m.validate().unwrap();
        let one = adjoin(&catalog::cyclic_group(1), Adjoin::Zero);
        let m: ZeroModule<i64> = galois_units_module(3, 1, &one, &[Some(0), None]).unwrap();
        assert_eq!(m.group().factors(), &[2]);
        assert!(m.action(0).is_identity());
        assert!(matches!(
            galois_units_module::<i64>(2, 2, &z2, &[Some(1), Some(1), None]),
            Err(ModuleError::InvalidLabeling { .. })
        ));
        assert_eq!(
            galois_units_module::<i64>(6, 1, &one, &[Some(0), None]).unwrap_err(),
            ModuleError::NotPrimePower(6)
        );
    }

    #[test]
    fn corner_modules() {
        let s = catalog::chain(2);
        let a = G::from_orders(&[2, 2]);
        let proj = Matrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
        let m = ZeroModule::new(s.clone(), a.clone(), vec![Matrix::identity(2), proj]).unwrap();
        m.validate_total().unwrap();
        let (c, gens) = corner_module(&m, 1, &[1]).unwrap();
        assert_eq!(c.group().factors(), &[2]);
        assert_eq!(gens.len(), 1);
        let (c, _) = corner_module(&m, 0, &[0, 1]).unwrap();
        assert_eq!(c.group(), &a);
        let t = trivial_module(&s, &a);
        assert_eq!(corner_module(&t, 1, &[1]).unwrap().0.group(), &a);
        let ex = trivial_module(&catalog::uvw_semigroup(), &a);
        assert_eq!(
            corner_module(&ex, 0, &[0]).unwrap_err(),
            ModuleError::NotIdempotent(0)
        );
    }

    #[test]
    fn bimodule_checks() {
        let s = catalog::uvw_semigroup();
        trivial_bimodule(&s, &G::cyclic(2)).validate().unwrap();
        let z = Matrix::<i64>::zeros(1, 1);
        let id = Matrix::<i64>::identity(1);
        let b = Bimodule::new(
            s.clone(),
            G::cyclic(2),
            vec![z.clone(); 4],
            vec![id.clone(); 4],
        )
        .unwrap();
        b.validate().unwrap();
    }
}
