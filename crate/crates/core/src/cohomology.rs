//! Nerves, cochains and the coboundary operator; 0-cohomology, the
//! classical (Eilenberg–MacLane) cohomology and its bimodule version.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::abelian::{homology_of, AbelianError, FinAbGroup, Homology};
use crate::linalg::{solve, Matrix};
use crate::module::{Bimodule, ZeroModule};
use crate::scalar::Scalar;
use crate::semigroup::Semigroup;

/// Highest degree for which cohomology is computed.
pub const MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("the 0-nerve needs a semigroup with zero")]
    NoZero,
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    CapExceeded(usize),
    #[error("cochain has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain is missing tuple {0:?} or has a value of the wrong length")]
    BadCochain(Vec<usize>),
    #[error("tuple {0:?} is not in the nerve")]
    NotInNerve(Vec<usize>),
    #[error("bimodule coefficients need the bimodule variant and vice versa")]
    VariantMismatch,
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Which cochains and which coboundary to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Cochains on tuples over `S∖0` with nonzero product.
    Zero,
    /// Cochains on all tuples (classical cohomology).
    Em,
    /// As `Zero`, with the right action in the last coboundary term.
    Bimodule,
}

/// Tuples on which cochains of a given degree are defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    degree: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Nerve {
    fn from_tuples(degree: usize, tuples: Vec<Vec<usize>>) -> Self {
        let index = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Nerve {
            degree,
            tuples,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Degree-`n` nerve in lexicographic order; degree 0 is the empty tuple.
pub fn nerve(s: &Semigroup, n: usize, variant: Variant) -> Result<Nerve, CohomologyError> {
    let zero_nerve = variant != Variant::Em;
    if zero_nerve && !s.has_zero() {
        return Err(CohomologyError::NoZero);
    }
    let letters: Vec<usize> = if zero_nerve {
        s.nonzero()
    } else {
        (0..s.len()).collect()
    };
    // extend tuple by tuple, keeping the running product
    let mut level: Vec<(Vec<usize>, Option<usize>)> = vec![(Vec::new(), None)];
    for _ in 0..n {
        let mut next = Vec::new();
        for (t, p) in &level {
            for &x in &letters {
                let q = match p {
                    None => x,
                    Some(p) => s.mul(*p, x),
                };
                if zero_nerve && s.is_zero(q) {
                    continue;
                }
                let mut u = t.clone();
                u.push(x);
                next.push((u, Some(q)));
            }
        }
        level = next;
    }
    Ok(Nerve::from_tuples(
        n,
        level.into_iter().map(|(t, _)| t).collect(),
    ))
}

/// Action data used by the coboundary: a left action and, for bimodules,
/// a right action.
pub trait Coefficients<T: Scalar> {
    fn semigroup(&self) -> &Semigroup;
    fn group(&self) -> &FinAbGroup<T>;
    fn left(&self, s: usize) -> &Matrix<T>;
    /// `None` means the last coboundary term carries no action.
    fn right(&self, s: usize) -> Option<&Matrix<T>>;
    fn is_bimodule(&self) -> bool;
}

impl<T: Scalar> Coefficients<T> for ZeroModule<T> {
    fn semigroup(&self) -> &Semigroup {
        ZeroModule::semigroup(self)
    }
    fn group(&self) -> &FinAbGroup<T> {
        ZeroModule::group(self)
    }
    fn left(&self, s: usize) -> &Matrix<T> {
        self.action(s)
    }
    fn right(&self, _: usize) -> Option<&Matrix<T>> {
        None
    }
    fn is_bimodule(&self) -> bool {
        false
    }
}

impl<T: Scalar> Coefficients<T> for Bimodule<T> {
    fn semigroup(&self) -> &Semigroup {
        Bimodule::semigroup(self)
    }
    fn group(&self) -> &FinAbGroup<T> {
        Bimodule::group(self)
    }
    fn left(&self, s: usize) -> &Matrix<T> {
        Bimodule::left(self, s)
    }
    fn right(&self, s: usize) -> Option<&Matrix<T>> {
        Some(Bimodule::right(self, s))
    }
    fn is_bimodule(&self) -> bool {
        true
    }
}

/// A cochain: one group element per nerve tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<T> {
    pub degree: usize,
    pub values: BTreeMap<Vec<usize>, Vec<T>>,
}

impl<T: Scalar> Cochain<T> {
    pub fn zero(nerve: &Nerve, a: &FinAbGroup<T>) -> Self {
        Cochain {
            degree: nerve.degree,
            values: nerve
                .tuples
                .iter()
                .map(|t| (t.clone(), a.zero_element()))
                .collect(),
        }
    }

    /// Flattens to coordinates in the nerve's order.
    pub fn to_vector(&self, nerve: &Nerve, a: &FinAbGroup<T>) -> Result<Vec<T>, CohomologyError> {
        if self.degree != nerve.degree {
            return Err(CohomologyError::DegreeMismatch {
                expected: nerve.degree,
                found: self.degree,
            });
        }
        if self.values.len() != nerve.len() {
            let extra = self
                .values
                .keys()
                .find(|t| nerve.position(t).is_none())
                .cloned();
            return Err(CohomologyError::BadCochain(extra.unwrap_or_default()));
        }
        let mut out = Vec::with_capacity(nerve.len() * a.ngens());
        for t in &nerve.tuples {
            let v = self
                .values
                .get(t)
                .ok_or_else(|| CohomologyError::BadCochain(t.clone()))?;
            if v.len() != a.ngens() {
                return Err(CohomologyError::BadCochain(t.clone()));
            }
            out.extend(a.normalize(v));
        }
        Ok(out)
    }

    pub fn from_vector(nerve: &Nerve, a: &FinAbGroup<T>, v: &[T]) -> Self {
        let k = a.ngens();
        assert_eq!(v.len(), nerve.len() * k);
        Cochain {
            degree: nerve.degree,
            values: nerve
                .tuples
                .iter()
                .enumerate()
                .map(|(i, t)| (t.clone(), a.normalize(&v[i * k..(i + 1) * k])))
                .collect(),
        }
    }

    pub fn get(&self, t: &[usize]) -> Option<&Vec<T>> {
        self.values.get(t)
    }
}

fn check_variant<T: Scalar, C: Coefficients<T> + ?Sized>(
    c: &C,
    variant: Variant,
) -> Result<(), CohomologyError> {
    if (variant == Variant::Bimodule) != c.is_bimodule() {
        return Err(CohomologyError::VariantMismatch);
    }
    Ok(())
}

/// Matrix of `∂ⁿ : Cⁿ → Cⁿ⁺¹` in the coordinates of the two nerves.
pub fn coboundary_matrix<T: Scalar, C: Coefficients<T> + ?Sized>(
    c: &C,
    source: &Nerve,
    target: &Nerve,
) -> Result<Matrix<T>, CohomologyError> {
    let n = source.degree;
    assert_eq!(target.degree, n + 1);
    let s = c.semigroup();
    let k = c.group().ngens();
    let mut d = Matrix::zeros(target.len() * k, source.len() * k);
    let add_block =
        |d: &mut Matrix<T>, row: usize, col: usize, block: Option<&Matrix<T>>, sign: i64| {
            for a in 0..k {
                for b in 0..k {
                    let v = match block {
                        Some(m) => m[(a, b)].clone(),
                        None if a == b => T::one(),
                        None => continue,
                    };
                    if v.is_zero() {
                        continue;
                    }
                    let cur = d[(row * k + a, col * k + b)].clone();
                    d[(row * k + a, col * k + b)] = cur + v * T::int(sign);
                }
            }
        };
    let lookup = |t: Vec<usize>| source.position(&t).ok_or(CohomologyError::NotInNerve(t));
    for (row, x) in target.tuples.iter().enumerate() {
        // x_1 · f(x_2, ..., x_{n+1})
        let first = lookup(x[1..].to_vec())?;
        add_block(&mut d, row, first, Some(c.left(x[0])), 1);
        for i in 0..n {
            let mut t: Vec<usize> = x[..i].to_vec();
            t.push(s.mul(x[i], x[i + 1]));
            t.extend_from_slice(&x[i + 2..]);
            let col = lookup(t)?;
            add_block(&mut d, row, col, None, if i % 2 == 0 { -1 } else { 1 });
        }
        let last = lookup(x[..n].to_vec())?;
        let sign = if n % 2 == 0 { -1 } else { 1 };
        add_block(&mut d, row, last, c.right(x[n]), sign);
    }
    d.reduce_rows(&cochain_moduli(c.group(), target.len()));
    Ok(d)
}

fn cochain_moduli<T: Scalar>(a: &FinAbGroup<T>, count: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(count * a.ngens());
    for _ in 0..count {
        out.extend(a.factors().iter().cloned());
    }
    out
}

/// Applies the coboundary to a cochain.
pub fn coboundary<T: Scalar, C: Coefficients<T> + ?Sized>(
    c: &C,
    f: &Cochain<T>,
    variant: Variant,
) -> Result<Cochain<T>, CohomologyError> {
    check_variant(c, variant)?;
    let src = nerve(c.semigroup(), f.degree, variant)?;
    let tgt = nerve(c.semigroup(), f.degree + 1, variant)?;
    let d = coboundary_matrix(c, &src, &tgt)?;
    let v = f.to_vector(&src, c.group())?;
    Ok(Cochain::from_vector(&tgt, c.group(), &d.mul_vec(&v)))
}

/// Everything needed to work with `Hⁿ`: nerves, differentials and the
/// decomposed homology group.
#[derive(Clone, Debug)]
pub struct CohomologyComputation<T> {
    group: FinAbGroup<T>,
    coefficients: FinAbGroup<T>,
    degree: usize,
    variant: Variant,
    prev_nerve: Option<Nerve>,
    nerve: Nerve,
    next_nerve: Nerve,
    d_in: Matrix<T>,
    d_out: Matrix<T>,
    homology: Homology<T>,
}

/// Outcome of [`CohomologyComputation::witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<T> {
    pub is_cocycle: bool,
    pub is_coboundary: bool,
    pub preimage: Option<Cochain<T>>,
    /// Coordinates of the class in the invariant-factor decomposition.
    pub class: Option<Vec<T>>,
}

impl<T: Scalar> CohomologyComputation<T> {
    pub fn group(&self) -> &FinAbGroup<T> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn coefficients(&self) -> &FinAbGroup<T> {
        &self.coefficients
    }

    /// Incoming and outgoing differentials.
    pub fn differentials(&self) -> (&Matrix<T>, &Matrix<T>) {
        (&self.d_in, &self.d_out)
    }

    /// Cocycles representing the cyclic generators of the group.
    pub fn witnesses(&self) -> Vec<Cochain<T>> {
        self.homology
            .generators()
            .iter()
            .map(|g| Cochain::from_vector(&self.nerve, &self.coefficients, g))
            .collect()
    }

    pub fn homology(&self) -> &Homology<T> {
        &self.homology
    }

    /// Coordinates of a cochain's class; `None` unless it is a cocycle.
    pub fn class_of(&self, f: &Cochain<T>) -> Result<Option<Vec<T>>, CohomologyError> {
        let v = f.to_vector(&self.nerve, &self.coefficients)?;
        Ok(self.homology.class_of(&v))
    }

    pub fn class_of_vector(&self, v: &[T]) -> Option<Vec<T>> {
        self.homology.class_of(v)
    }

    /// Decides cocycle and coboundary status and finds a preimage if any.
    pub fn witness(&self, f: &Cochain<T>) -> Result<Witness<T>, CohomologyError> {
        let v = f.to_vector(&self.nerve, &self.coefficients)?;
        let is_cocycle = self.homology.is_cycle(&v);
        if !is_cocycle {
            return Ok(Witness {
                is_cocycle,
                is_coboundary: false,
                preimage: None,
                class: None,
            });
        }
        let is_coboundary = self.homology.is_boundary(&v);
        let preimage = if is_coboundary {
            self.preimage(&v)
        } else {
            None
        };
        Ok(Witness {
            is_cocycle,
            is_coboundary,
            preimage,
            class: self.homology.class_of(&v),
        })
    }

    /// Solves `∂φ = f` over the integers modulo the relations of `Cⁿ`.
    pub fn preimage(&self, v: &[T]) -> Option<Cochain<T>> {
        let prev = self.prev_nerve.as_ref()?;
        let moduli = cochain_moduli(&self.coefficients, self.nerve.len());
        let rel_cols: Vec<Vec<T>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut c = vec![T::zero(); moduli.len()];
                c[i] = m.clone();
                c
            })
            .collect();
        let sys = self
            .d_in
            .hcat(&Matrix::from_columns(moduli.len(), &rel_cols));
        let y = solve(&sys, v)?;
        let phi = &y[..self.d_in.cols()];
        Some(Cochain::from_vector(prev, &self.coefficients, phi))
    }
}

/// `Hⁿ` of a module (`Zero` or `Em`) or bimodule (`Bimodule`).
pub fn cohomology<T: Scalar, C: Coefficients<T> + ?Sized>(
    c: &C,
    n: usize,
    variant: Variant,
) -> Result<CohomologyComputation<T>, CohomologyError> {
    if n > MAX_DEGREE {
        return Err(CohomologyError::CapExceeded(n));
    }
    check_variant(c, variant)?;
    let s = c.semigroup();
    let a = c.group();
    let cur = nerve(s, n, variant)?;
    let next = nerve(s, n + 1, variant)?;
    let d_out = coboundary_matrix(c, &cur, &next)?;
    let (prev_nerve, d_in) = if n == 0 {
        (None, Matrix::zeros(cur.len() * a.ngens(), 0))
    } else {
        let prev = nerve(s, n - 1, variant)?;
        let d = coboundary_matrix(c, &prev, &cur)?;
        (Some(prev), d)
    };
    let homology = homology_of(
        &d_in,
        &cochain_moduli(a, cur.len()),
        &d_out,
        &cochain_moduli(a, next.len()),
    )?;
    Ok(CohomologyComputation {
        group: homology.group().clone(),
        coefficients: a.clone(),
        degree: n,
        variant,
        prev_nerve,
        nerve: cur,
        next_nerve: next,
        d_in,
        d_out,
        homology,
    })
}

/// Invariant factors of `Hⁿ`.
pub fn cohomology_group<T: Scalar, C: Coefficients<T> + ?Sized>(
    c: &C,
    n: usize,
    variant: Variant,
) -> Result<FinAbGroup<T>, CohomologyError> {
    cohomology(c, n, variant).map(|h| h.group)
}

impl<T: Scalar> CohomologyComputation<T> {
    pub fn next_nerve(&self) -> &Nerve {
        &self.next_nerve
    }

    pub fn prev_nerve(&self) -> Option<&Nerve> {
        self.prev_nerve.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::trivial_module;
    use crate::semigroup::catalog;

    type G = FinAbGroup<i128>;

    #[test]
    fn uvw_nerves() {
        let s = catalog::uvw_semigroup();
        let n2 = nerve(&s, 2, Variant::Zero).unwrap();
        assert_eq!(
            n2.tuples(),
            &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert!(nerve(&s, 3, Variant::Zero).unwrap().is_empty());
        assert_eq!(
            nerve(&s, 0, Variant::Zero).unwrap().tuples(),
            &[Vec::<usize>::new()]
        );
        let g = catalog::cyclic_group(3);
        assert_eq!(nerve(&g, 2, Variant::Em).unwrap().len(), 9);
        assert_eq!(
            nerve(&g, 2, Variant::Zero).unwrap_err(),
            CohomologyError::NoZero
        );
    }

    #[test]
    fn degree_one_trivial_formula() {
        // ∂φ(x, y) = φ(y) − φ(xy) + φ(x)
        let s = catalog::uvw_semigroup();
        let a = G::cyclic(5);
        let m = trivial_module(&s, &a);
        let n1 = nerve(&s, 1, Variant::Zero).unwrap();
        let phi = Cochain::from_vector(&n1, &a, &[1, 2, 3]);
        let d = coboundary(&m, &phi, Variant::Zero).unwrap();
        for (t, v) in &d.values {
            let (x, y) = (t[0], t[1]);
            let expect = (phi.get(&[y]).unwrap()[0] - phi.get(&[s.mul(x, y)]).unwrap()[0]
                + phi.get(&[x]).unwrap()[0])
                .rem_euclid(5);
            assert_eq!(v[0], expect);
        }
    }

    #[test]
    fn uvw_h2() {
        let s = catalog::uvw_semigroup();
        let m = trivial_module(&s, &G::cyclic(2));
        let h = cohomology(&m, 2, Variant::Zero).unwrap();
        assert_eq!(h.group().factors(), &[2, 2]);
        let mut f = Cochain::zero(h.nerve(), &G::cyclic(2));
        f.values.insert(vec![0, 0], vec![1]);
        let w = h.witness(&f).unwrap();
        assert!(w.is_cocycle && !w.is_coboundary);
    }

    #[test]
    fn em_with_zero_vanishes() {
        let s = catalog::uvw_semigroup();
        let m = trivial_module(&s, &G::cyclic(4));
        for n in 1..=3 {
            assert!(cohomology_group(&m, n, Variant::Em).unwrap().is_trivial());
        }
        assert_eq!(
            cohomology_group(&m, 0, Variant::Em).unwrap().factors(),
            &[4]
        );
    }

    #[test]
    fn group_cohomology_of_z2() {
        let g = catalog::cyclic_group(2);
        let m = trivial_module(&g, &G::cyclic(2));
        assert_eq!(
            cohomology_group(&m, 2, Variant::Em).unwrap().factors(),
            &[2]
        );
        let z = trivial_module(&g, &G::free(1));
        assert_eq!(
            cohomology_group(&z, 2, Variant::Em).unwrap().factors(),
            &[2]
        );
        assert!(cohomology_group(&z, 1, Variant::Em).unwrap().is_trivial());
    }

    #[test]
    fn degree_cap() {
        let m = trivial_module(&catalog::uvw_semigroup(), &G::cyclic(2));
        assert_eq!(
            cohomology(&m, 5, Variant::Zero).unwrap_err(),
            CohomologyError::CapExceeded(5)
        );
        assert_eq!(
            cohomology(&m, 2, Variant::Bimodule).unwrap_err(),
            CohomologyError::VariantMismatch
        );
    }

    #[test]
    fn preimages_solve_the_system() {
        let s = catalog::mitchell_quotient();
        let a = G::cyclic(4);
        let m = trivial_module(&s, &a);
        let h = cohomology(&m, 2, Variant::Zero).unwrap();
        assert!(h.group().is_trivial());
        let mut f = Cochain::zero(h.nerve(), &a);
        f.values.insert(vec![0, 1], vec![3]);
        f.values.insert(vec![2, 3], vec![1]);
        let w = h.witness(&f).unwrap();
        assert!(w.is_coboundary);
        let phi = w.preimage.unwrap();
        assert_eq!(coboundary(&m, &phi, Variant::Zero).unwrap(), f);
    }
}
