use crate::linalg::snf::{smith_with, SmithForm, Transforms};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// The quotient `K / I` of two lattices `I ⊆ K ⊆ Z^k`, decomposed into
/// cyclic factors with explicit generators and a coordinate map.
#[derive(Clone, Debug)]
pub struct Subquotient<T> {
    ambient: usize,
    basis: Matrix<T>,
    basis_snf: SmithForm<T>,
    quotient_u: Matrix<T>,
    kept: Vec<usize>,
    orders: Vec<T>,
    generators: Vec<Vec<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotASublattice {
    /// Index of the first image generator lying outside the kernel lattice.
    pub generator: usize,
}

impl<T: Scalar> Subquotient<T> {
    /// `kernel_basis` must have linearly independent columns;
    /// `image_gens` columns must lie in their span.
    pub fn new(kernel_basis: Matrix<T>, image_gens: &Matrix<T>) -> Result<Self, NotASublattice> {
        let ambient = kernel_basis.rows();
        assert_eq!(image_gens.rows(), ambient, "ambient dimension mismatch");
        let r = kernel_basis.cols();
        let basis_snf = smith_with(
            &kernel_basis,
            Transforms {
                u: true,
                u_inv: false,
                v: true,
                v_inv: false,
            },
        );
        debug_assert_eq!(basis_snf.rank, r, "kernel basis must be independent");
        let mut coords = Matrix::zeros(r, image_gens.cols());
        for j in 0..image_gens.cols() {
            let c = coords_in(&basis_snf, &image_gens.column(j))
                .ok_or(NotASublattice { generator: j })?;
            for (i, v) in c.into_iter().enumerate() {
                coords[(i, j)] = v;
            }
        }
        let qs = smith_with(
            &coords,
            Transforms {
                u: true,
                u_inv: true,
                v: false,
                v_inv: false,
            },
        );
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..r {
            let d = if i < qs.rank {
                qs.diag[i].clone()
            } else {
                T::zero()
            };
            if !d.is_one() {
                kept.push(i);
                orders.push(d);
            }
        }
        let ui = qs.u_inv.as_ref().expect("requested U^-1");
        let generators = kept
            .iter()
            .map(|&i| kernel_basis.mul_vec(&ui.column(i)))
            .collect();
        Ok(Subquotient {
            ambient,
            basis: kernel_basis,
            basis_snf,
            quotient_u: qs.u.expect("requested U"),
            kept,
            orders,
            generators,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Cyclic orders of the decomposition; torsion first, zeros (free) last.
    pub fn orders(&self) -> &[T] {
        &self.orders
    }

    /// Ambient representatives of the cyclic generators.
    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    pub fn kernel_basis(&self) -> &Matrix<T> {
        &self.basis
    }

    /// Coordinates of `z ∈ K` in the cyclic decomposition, reduced;
    /// `None` when `z ∉ K`.
    pub fn coordinates(&self, z: &[T]) -> Option<Vec<T>> {
        let c = coords_in(&self.basis_snf, z)?;
        let w = self.quotient_u.mul_vec(&c);
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&i, d)| w[i].reduce(d))
                .collect(),
        )
    }

    pub fn contains(&self, z: &[T]) -> bool {
        coords_in(&self.basis_snf, z).is_some()
    }

    /// True when `z ∈ K` represents the zero class.
    pub fn is_trivial_class(&self, z: &[T]) -> bool {
        self.coordinates(z)
            .is_some_and(|c| c.iter().all(|v| v.is_zero()))
    }
}

fn coords_in<T: Scalar>(snf: &SmithForm<T>, z: &[T]) -> Option<Vec<T>> {
    let u = snf.u.as_ref().expect("basis solver needs U");
    let v = snf.v.as_ref().expect("basis solver needs V");
    let uz = u.mul_vec(z);
    let mut y = vec![T::zero(); snf.cols];
    for (i, val) in uz.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = val.div_rem(&snf.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_mod_two_z() {
        let k = Matrix::<i64>::identity(1);
        let i = Matrix::from_i64_rows(&[&[2]]);
        let q = Subquotient::new(k, &i).unwrap();
        assert_eq!(q.orders(), &[2]);
        assert_eq!(q.coordinates(&[3]), Some(vec![1]));
        assert_eq!(q.coordinates(&[4]), Some(vec![0]));
    }

    #[test]
    fn free_and_torsion() {
        // Z^2 / <(2, 0)> = Z/2 ⊕ Z
        let k = Matrix::<i64>::identity(2);
        let i = Matrix::from_i64_rows(&[&[2], &[0]]);
        let q = Subquotient::new(k, &i).unwrap();
        assert_eq!(q.orders(), &[2, 0]);
        for g in q.generators() {
            assert!(q.contains(g));
        }
    }

    #[test]
    fn rejects_non_sublattice() {
        let k = Matrix::<i64>::from_i64_rows(&[&[2]]);
        let i = Matrix::from_i64_rows(&[&[3]]);
        assert_eq!(
            Subquotient::new(k, &i).unwrap_err(),
            NotASublattice { generator: 0 }
        );
    }
}
