use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Which unimodular transforms to accumulate alongside the reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Transforms {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Transforms {
    pub const ALL: Transforms = Transforms {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const NONE: Transforms = Transforms {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
    pub const V_ONLY: Transforms = Transforms {
        u: false,
        u_inv: false,
        v: true,
        v_inv: false,
    };
}

/// Smith normal form `U · M · V = D`.
///
/// `diag` has length `min(rows, cols)`; the first `rank` entries are positive
/// and form a divisibility chain, the rest are zero.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<T>,
    pub rank: usize,
    pub u: Option<Matrix<T>>,
    pub u_inv: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
    pub v_inv: Option<Matrix<T>>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn d_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, v) in self.diag.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    /// Nontrivial invariant factors of the cokernel `Z^rows / im M`:
    /// torsion factors (> 1) followed by one zero per free summand.
    pub fn cokernel_factors(&self) -> Vec<T> {
        let mut out: Vec<T> = self.diag[..self.rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        out.extend(std::iter::repeat(T::zero()).take(self.rows - self.rank));
        out
    }
}

struct Work<T> {
    a: Matrix<T>,
    u: Option<Matrix<T>>,
    u_inv: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
    v_inv: Option<Matrix<T>>,
}

impl<T: Scalar> Work<T> {
    // row[dst] += c * row[src]
    fn row_add(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, c);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-c.clone());
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    // col[dst] += c * col[src]
    fn col_add(&mut self, dst: usize, src: usize, c: &T) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &-c.clone());
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(a, b);
        }
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), T)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let av = v.abs();
                let better = match &best {
                    None => true,
                    Some((_, b)) => av < *b,
                };
                if better {
                    let is_unit = av.is_one();
                    best = Some(((i, j), av));
                    if is_unit {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn reduce_pivot(&mut self, t: usize) {
        let (m, n) = (self.a.rows(), self.a.cols());
        loop {
            // clear column t below the pivot and row t right of it
            let p = self.a[(t, t)].clone();
            let mut smallest: Option<(bool, usize, T)> = None;
            for i in t + 1..m {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&p);
                self.row_add(i, t, &-q);
                let r = self.a[(i, t)].abs();
                if !r.is_zero() && smallest.as_ref().map_or(true, |(_, _, s)| r < *s) {
                    smallest = Some((true, i, r));
                }
            }
            for j in t + 1..n {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&p);
                self.col_add(j, t, &-q);
                let r = self.a[(t, j)].abs();
                if !r.is_zero() && smallest.as_ref().map_or(true, |(_, _, s)| r < *s) {
                    smallest = Some((false, j, r));
                }
            }
            if let Some((is_row, k, _)) = smallest {
                if is_row {
                    self.row_swap(t, k);
                } else {
                    self.col_swap(t, k);
                }
                continue;
            }
            // divisibility of the remaining block by the pivot
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !self.a[(i, j)].is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => self.row_add(t, i, &T::one()),
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.row_negate(t);
        }
    }
}

/// Smith normal form with all four transforms.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithForm<T> {
    smith_with(m, Transforms::ALL)
}

/// Smith normal form accumulating only the requested transforms.
pub fn smith_with<T: Scalar>(m: &Matrix<T>, want: Transforms) -> SmithForm<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: want.u.then(|| Matrix::identity(rows)),
        u_inv: want.u_inv.then(|| Matrix::identity(rows)),
        v: want.v.then(|| Matrix::identity(cols)),
        v_inv: want.v_inv.then(|| Matrix::identity(cols)),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.min_abs_entry(t) else {
            break;
        };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        w.reduce_pivot(t);
        rank += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| w.a[(i, i)].clone()).collect();
    SmithForm {
        rows,
        cols,
        diag,
        rank,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Basis (as columns) of the integer kernel `{x : M x = 0}`.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let snf = smith_with(m, Transforms::V_ONLY);
    let v = snf.v.expect("requested V");
    let keep: Vec<usize> = (snf.rank..m.cols()).collect();
    v.select_columns(&keep)
}

/// Some integer solution of `M x = b`, if one exists.
pub fn solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let snf = smith_with(
        m,
        Transforms {
            u: true,
            u_inv: false,
            v: true,
            v_inv: false,
        },
    );
    solve_with(&snf, b)
}

/// Solves `M x = b` reusing a Smith form of `M` that carries `u` and `v`.
pub fn solve_with<T: Scalar>(snf: &SmithForm<T>, b: &[T]) -> Option<Vec<T>> {
    let u = snf.u.as_ref().expect("solve needs U");
    let v = snf.v.as_ref().expect("solve needs V");
    let ub = u.mul_vec(b);
    let mut y = vec![T::zero(); snf.cols];
    for (i, val) in ub.iter().enumerate() {
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

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis<T: Scalar>(gens: &Matrix<T>) -> Matrix<T> {
    let snf = smith_with(
        gens,
        Transforms {
            u: false,
            u_inv: true,
            v: false,
            v_inv: false,
        },
    );
    let ui = snf.u_inv.as_ref().expect("requested U^-1");
    Matrix::from_fn(gens.rows(), snf.rank, |i, j| {
        ui[(i, j)].clone() * snf.diag[j].clone()
    })
}

/// Basis of `{x ∈ Z^cols : (M x)_i ≡ 0 mod moduli[i]}`; a zero modulus asks for exact vanishing.
pub fn kernel_mod<T: Scalar>(m: &Matrix<T>, moduli: &[T]) -> Matrix<T> {
    assert_eq!(m.rows(), moduli.len(), "one modulus per row");
    let n = m.cols();
    let exact: Vec<usize> = (0..m.rows()).filter(|&i| moduli[i].is_zero()).collect();
    let torsion: Vec<usize> = (0..m.rows()).filter(|&i| !moduli[i].is_zero()).collect();
    let w = if exact.is_empty() {
        Matrix::identity(n)
    } else {
        kernel_basis(&m.select_rows(&exact))
    };
    if torsion.is_empty() || w.cols() == 0 {
        return w;
    }
    // scale every torsion row to the common exponent e
    let e = torsion.iter().fold(T::one(), |acc, &i| acc.lcm(&moduli[i]));
    let scaled = Matrix::from_fn(torsion.len(), n, |r, j| {
        let i = torsion[r];
        m[(i, j)].clone() * (e.clone() / moduli[i].clone())
    });
    // only the residues modulo e matter for the congruence
    let mut tw = scaled.mul(&w);
    let es = vec![e.clone(); tw.rows()];
    tw.reduce_rows(&es);
    let snf = smith_with(&tw, Transforms::V_ONLY);
    let v = snf.v.expect("requested V");
    let scale: Vec<T> = (0..w.cols())
        .map(|i| {
            if i < snf.rank {
                let g = snf.diag[i].gcd(&e);
                e.clone() / g
            } else {
                T::one()
            }
        })
        .collect();
    let wv = w.mul(&v);
    Matrix::from_fn(n, w.cols(), |i, j| wv[(i, j)].clone() * scale[j].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Matrix<i64>;

    fn check_identity(m: &M) -> SmithForm<i64> {
        let s = smith_normal_form(m);
        let u = s.u.clone().unwrap();
        let v = s.v.clone().unwrap();
        assert_eq!(u.mul(m).mul(&v), s.d_matrix(), "U M V = D");
        assert!(u.mul(s.u_inv.as_ref().unwrap()).is_identity());
        assert!(v.mul(s.v_inv.as_ref().unwrap()).is_identity());
        for w in s.diag[..s.rank].windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain {:?}", s.diag);
        }
        s
    }

    #[test]
    fn two_by_two_example() {
        let m = M::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let s = check_identity(&m);
        assert_eq!(s.diag, vec![2, 4]);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(check_identity(&M::identity(3)).diag, vec![1, 1, 1]);
        let s = check_identity(&M::zeros(2, 3));
        assert_eq!(s.rank, 0);
        assert_eq!(s.diag, vec![0, 0]);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is already diagonal but not in normal form
        let s = check_identity(&M::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diag, vec![1, 6]);
    }

    #[test]
    fn bigint_agrees_with_i64() {
        let m = M::from_i64_rows(&[&[4, 6, 2], &[2, 2, 8], &[0, 10, 14]]);
        let big: Matrix<BigInt> = m.map(|v| BigInt::from(*v));
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&big);
        let bd: Vec<i64> = b
            .diag
            .iter()
            .map(|d| i64::try_from(d.clone()).unwrap())
            .collect();
        assert_eq!(a.diag, bd);
    }

    #[test]
    fn kernel_and_solve() {
        let m = M::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        let x = solve(&m, &[5, 10]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![5, 10]);
        assert!(solve(&m, &[1, 1]).is_none());
        // 2x = 3 has no integer solution
        assert!(solve(&M::from_i64_rows(&[&[2]]), &[3]).is_none());
    }

    #[test]
    fn kernel_mod_mixed() {
        // x + y ≡ 0 mod 2, x - y = 0 exactly
        let m = M::from_i64_rows(&[&[1, 1], &[1, -1]]);
        let k = kernel_mod(&m, &[2, 0]);
        let l = lattice_basis(&k);
        // the lattice is {(t, t)} with 2t ≡ 0 mod 2, i.e. all (t, t)
        assert_eq!(l.cols(), 1);
        let col = l.column(0);
        assert_eq!(col[0].abs(), 1);
        assert_eq!(col[0], col[1]);
    }

    #[test]
    fn lattice_basis_of_dependent_generators() {
        let g = M::from_i64_rows(&[&[2, 4, 6], &[0, 0, 0]]);
        let b = lattice_basis(&g);
        assert_eq!(b.cols(), 1);
        assert_eq!(b[(0, 0)].abs(), 2);
    }
}
