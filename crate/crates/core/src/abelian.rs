//! Finitely generated abelian groups in invariant-factor form, homomorphisms
//! between them and homology of short complexes.

use std::fmt;

use thiserror::Error;

use crate::linalg::{kernel_mod, lattice_basis, smith_with, Matrix, Subquotient, Transforms};
use crate::scalar::Scalar;

/// `Z/d₁ ⊕ ... ⊕ Z/d_k` with `d₁ | d₂ | ...`, all `d_i > 1`, followed by the
/// free summands (written as `0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup<T> {
    factors: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("invariant factors are not in canonical form: {0}")]
    NotCanonical(String),
    #[error("matrix shape {rows}x{cols} does not match groups with {target_gens} and {source_gens} generators")]
    Shape {
        rows: usize,
        cols: usize,
        target_gens: usize,
        source_gens: usize,
    },
    #[error("homomorphism is not well defined on generator {generator}")]
    NotWellDefined { generator: usize },
    #[error("maps do not compose: target rank {0} vs source rank {1}")]
    Incompatible(usize, usize),
    #[error("not a complex: d_out ∘ d_in is nonzero on generator {generator}")]
    NotAComplex { generator: usize },
}

impl<T: Scalar> FinAbGroup<T> {
    pub fn trivial() -> Self {
        FinAbGroup {
            factors: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: T) -> Self {
        Self::from_orders(&[n])
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            factors: vec![T::zero(); rank],
        }
    }

    /// Accepts a list that is already canonical.
    pub fn from_invariant_factors(factors: Vec<T>) -> Result<Self, AbelianError> {
        let g = Self::from_orders(&factors);
        if g.factors != factors {
            return Err(AbelianError::NotCanonical(format!("{factors:?}")));
        }
        Ok(g)
    }

    /// Canonical form of `⊕ Z/n_i` for arbitrary orders (1 is dropped, 0 is free,
    /// negative values are taken in absolute value).
    pub fn from_orders(orders: &[T]) -> Self {
        let abs: Vec<T> = orders.iter().map(|o| o.abs()).collect();
        let snf = smith_with(&Matrix::diagonal(&abs), Transforms::NONE);
        FinAbGroup {
            factors: snf.cokernel_factors(),
        }
    }

    pub fn factors(&self) -> &[T] {
        &self.factors
    }

    /// Number of cyclic summands in the canonical decomposition.
    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<T> {
        if self.is_finite() {
            Some(self.factors.iter().fold(T::one(), |a, d| a * d.clone()))
        } else {
            None
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all = self.factors.clone();
        all.extend(other.factors.iter().cloned());
        Self::from_orders(&all)
    }

    /// Reduces a coordinate vector into canonical range.
    pub fn normalize(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.factors.len());
        x.iter()
            .zip(&self.factors)
            .map(|(v, d)| v.reduce(d))
            .collect()
    }

    pub fn zero_element(&self) -> Vec<T> {
        vec![T::zero(); self.factors.len()]
    }

    pub fn add(&self, x: &[T], y: &[T]) -> Vec<T> {
        let s: Vec<T> = x
            .iter()
            .zip(y)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        self.normalize(&s)
    }

    pub fn neg(&self, x: &[T]) -> Vec<T> {
        let s: Vec<T> = x.iter().map(|a| -a.clone()).collect();
        self.normalize(&s)
    }

    pub fn is_zero_element(&self, x: &[T]) -> bool {
        self.normalize(x).iter().all(|v| v.is_zero())
    }

    /// All elements of a finite group in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<T>> {
        assert!(
            self.is_finite(),
            "cannot list elements of an infinite group"
        );
        let mut out = vec![Vec::new()];
        for d in &self.factors {
            let k = d.to_usize().expect("factor too large to enumerate");
            let mut next = Vec::with_capacity(out.len() * k);
            for v in &out {
                for i in 0..k {
                    let mut w = v.clone();
                    w.push(T::of_usize(i));
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

impl<T: fmt::Display> fmt::Display for FinAbGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| {
                if d.to_string() == "0" {
                    "Z".to_string()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<T: fmt::Debug> fmt::Debug for FinAbGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup{:?}", self.factors)
    }
}

/// Homomorphism given by an integer matrix; column `j` is the image of the
/// `j`-th canonical generator of the source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom<T> {
    source: FinAbGroup<T>,
    target: FinAbGroup<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> GroupHom<T> {
    pub fn new(
        source: FinAbGroup<T>,
        target: FinAbGroup<T>,
        matrix: Matrix<T>,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(AbelianError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                target_gens: target.ngens(),
                source_gens: source.ngens(),
            });
        }
        let mut matrix = matrix;
        matrix.reduce_rows(target.factors());
        for (j, d) in source.factors().iter().enumerate() {
            let col: Vec<T> = matrix
                .column(j)
                .into_iter()
                .map(|v| v * d.clone())
                .collect();
            if !target.is_zero_element(&col) {
                return Err(AbelianError::NotWellDefined { generator: j });
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FinAbGroup<T>) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: Matrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FinAbGroup<T>, target: &FinAbGroup<T>) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &FinAbGroup<T> {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup<T> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.target.normalize(&self.matrix.mul_vec(x))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom<T>) -> Result<GroupHom<T>, AbelianError> {
        if self.target != other.source {
            return Err(AbelianError::Incompatible(
                self.target.ngens(),
                other.source.ngens(),
            ));
        }
        GroupHom::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Isomorphism type of the image.
    pub fn image(&self) -> FinAbGroup<T> {
        let rel = Matrix::diagonal(self.target.factors());
        let gens = self.matrix.hcat(&rel);
        let basis = lattice_basis(&gens);
        let q = Subquotient::new(basis, &rel).expect("relations lie in image lattice");
        FinAbGroup::from_orders(q.orders())
    }

    /// Isomorphism type of the kernel.
    pub fn kernel(&self) -> FinAbGroup<T> {
        let k = kernel_mod(&self.matrix, self.target.factors());
        let rel = Matrix::diagonal(self.source.factors());
        let q = Subquotient::new(k, &rel).expect("source relations lie in kernel");
        FinAbGroup::from_orders(q.orders())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.target
    }
}

/// `ker d_out / im d_in` with a cyclic decomposition.
#[derive(Clone, Debug)]
pub struct Homology<T> {
    group: FinAbGroup<T>,
    quotient: Subquotient<T>,
}

impl<T: Scalar> Homology<T> {
    pub fn group(&self) -> &FinAbGroup<T> {
        &self.group
    }

    /// Representatives (in the middle term's coordinates) of the cyclic
    /// generators, in the order of the invariant factors.
    pub fn generators(&self) -> &[Vec<T>] {
        self.quotient.generators()
    }

    /// Class of a cycle in the decomposition, `None` if `z` is not a cycle.
    pub fn class_of(&self, z: &[T]) -> Option<Vec<T>> {
        self.quotient.coordinates(z)
    }

    pub fn is_cycle(&self, z: &[T]) -> bool {
        self.quotient.contains(z)
    }

    pub fn is_boundary(&self, z: &[T]) -> bool {
        self.quotient.is_trivial_class(z)
    }
}

/// Homology at the middle term `Z^k / (moduli)` of `d_in: Z^a → mid`, `d_out: mid → next`.
/// `d_in` need not be reduced; `next_moduli` are the orders of the target coordinates.
pub fn homology_of<T: Scalar>(
    d_in: &Matrix<T>,
    mid_moduli: &[T],
    d_out: &Matrix<T>,
    next_moduli: &[T],
) -> Result<Homology<T>, AbelianError> {
    let k = mid_moduli.len();
    assert_eq!(d_in.rows(), k);
    assert_eq!(d_out.cols(), k);
    let comp = d_out.mul(d_in);
    for j in 0..comp.cols() {
        if comp
            .column(j)
            .iter()
            .zip(next_moduli)
            .any(|(v, m)| !v.reduce(m).is_zero())
        {
            return Err(AbelianError::NotAComplex { generator: j });
        }
    }
    let cycles = kernel_mod(d_out, next_moduli);
    let rel_cols: Vec<Vec<T>> = mid_moduli
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| {
            let mut v = vec![T::zero(); k];
            v[i] = m.clone();
            v
        })
        .collect();
    let boundaries = d_in.hcat(&Matrix::from_columns(k, &rel_cols));
    let quotient =
        Subquotient::new(cycles, &boundaries).expect("boundaries of a verified complex are cycles");
    let group = FinAbGroup::from_orders(quotient.orders());
    Ok(Homology { group, quotient })
}

/// Homology `ker d_out / im d_in` of a composable pair.
pub fn complex_homology<T: Scalar>(
    d_in: &GroupHom<T>,
    d_out: &GroupHom<T>,
) -> Result<Homology<T>, AbelianError> {
    if d_in.target != d_out.source {
        return Err(AbelianError::Incompatible(
            d_in.target.ngens(),
            d_out.source.ngens(),
        ));
    }
    homology_of(
        &d_in.matrix,
        d_in.target.factors(),
        &d_out.matrix,
        d_out.target.factors(),
    )
}

/// A finite abelian group given by its addition table, decomposed into
/// invariant factors. Returns the group and the coordinates of each element.
pub fn decompose_table<T: Scalar>(
    n: usize,
    add: impl Fn(usize, usize) -> usize,
) -> (FinAbGroup<T>, Vec<Vec<T>>) {
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut c = vec![T::zero(); n];
            c[i] = c[i].clone() + T::one();
            c[j] = c[j].clone() + T::one();
            let k = add(i, j);
            c[k] = c[k].clone() - T::one();
            rels.push(c);
        }
    }
    let q = Subquotient::new(Matrix::identity(n), &Matrix::from_columns(n, &rels))
        .expect("relations lie in the free lattice");
    let group = FinAbGroup::from_orders(q.orders());
    debug_assert_eq!(group.factors(), q.orders());
    let coords = (0..n)
        .map(|i| {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            q.coordinates(&e)
                .expect("unit vector lies in the free lattice")
        })
        .collect();
    (group, coords)
}
