//! Rees matrix semigroups and the decomposition of completely 0-simple ones.

use std::collections::VecDeque;

use super::{find_isomorphism, ideals, validate_table, RawTable, Semigroup, SemigroupError};

/// Sandwich matrix indexed `[λ][i]`; entries are group element indices,
/// `None` is the zero.
pub type Sandwich = Vec<Vec<Option<usize>>>;

/// Rees coordinates of a completely 0-simple semigroup.
#[derive(Clone, Debug)]
pub struct C0sDecomposition {
    /// The maximal subgroup `H_e`, as a group in its own right.
    pub group: Semigroup,
    pub i_count: usize,
    pub lambda_count: usize,
    /// Normalized sandwich matrix over `group`.
    pub sandwich: Sandwich,
    /// For every nonzero element of the input, its `(i, g, λ)` coordinates.
    pub coordinates: Vec<Option<(usize, usize, usize)>>,
}

/// `M⁰(D; I, Λ; P)` with elements `(i, g, λ)` in lexicographic order, then `0`.
pub fn rees_matrix(
    d: &Semigroup,
    i_count: usize,
    lambda_count: usize,
    p: &Sandwich,
) -> Result<Semigroup, SemigroupError> {
    if !d.is_group() {
        return Err(SemigroupError::NotAGroup);
    }
    if p.len() != lambda_count
        || p.iter()
            .any(|row| row.len() != i_count || row.iter().flatten().any(|&g| g >= d.len()))
    {
        return Err(SemigroupError::BadSandwich);
    }
    let zero_row = p.iter().any(|row| row.iter().all(Option::is_none));
    let zero_col = (0..i_count).any(|i| p.iter().all(|row| row[i].is_none()));
    if zero_row || zero_col {
        return Err(SemigroupError::DegenerateSandwich);
    }
    let g = d.len();
    let n = i_count * g * lambda_count;
    let enc = |i: usize, x: usize, l: usize| (i * g + x) * lambda_count + l;
    let dec = |k: usize| {
        (
            k / (g * lambda_count),
            (k / lambda_count) % g,
            k % lambda_count,
        )
    };
    let mut names: Vec<String> = (0..n)
        .map(|k| {
            let (i, x, l) = dec(k);
            format!("({},{},{})", i + 1, d.name(x), l + 1)
        })
        .collect();
    names.push("0".into());
    let table = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| {
                    if a == n || b == n {
                        return n;
                    }
                    let (i, x, l) = dec(a);
                    let (j, y, m) = dec(b);
                    match p[l][j] {
                        Some(pij) => enc(i, d.mul(d.mul(x, pij), y), m),
                        None => n,
                    }
                })
                .collect()
        })
        .collect();
    validate_table(RawTable {
        names,
        table,
        zero: Some(n),
    })
}

/// Scales columns so the nonzero entries of the first row become the
/// identity, then rows so the nonzero entries of the first column do.
pub fn normalize_sandwich(d: &Semigroup, p: &Sandwich) -> Sandwich {
    let mut q = p.clone();
    if q.is_empty() {
        return q;
    }
    let cols = q[0].len();
    for i in 0..cols {
        if let Some(g) = q[0][i] {
            let gi = d.inverse(g).expect("group element");
            for row in q.iter_mut() {
                row[i] = row[i].map(|x| d.mul(x, gi));
            }
        }
    }
    if cols == 0 {
        return q;
    }
    for row in q.iter_mut() {
        if let Some(h) = row[0] {
            let hi = d.inverse(h).expect("group element");
            for x in row.iter_mut() {
                *x = x.map(|v| d.mul(hi, v));
            }
        }
    }
    q
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// All automorphisms of a small group, as index maps.
pub fn automorphisms(d: &Semigroup) -> Vec<Vec<usize>> {
    let n = d.len();
    let e = d.identity().expect("group");
    let mut out = Vec::new();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    phi[e] = e;
    used[e] = true;
    fn rec(
        d: &Semigroup,
        k: usize,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = d.len();
        if k == n {
            if (0..n).all(|a| (0..n).all(|b| phi[d.mul(a, b)] == d.mul(phi[a], phi[b]))) {
                out.push(phi.clone());
            }
            return;
        }
        if phi[k] != usize::MAX {
            rec(d, k + 1, phi, used, out);
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            phi[k] = c;
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    let (pa, pb, pab) = (phi[a], phi[b], phi[d.mul(a, b)]);
                    pa == usize::MAX
                        || pb == usize::MAX
                        || pab == usize::MAX
                        || pab == d.mul(pa, pb)
                })
            });
            if ok {
                used[c] = true;
                rec(d, k + 1, phi, used, out);
                used[c] = false;
            }
            phi[k] = usize::MAX;
        }
    }
    rec(d, 0, &mut phi, &mut used, &mut out);
    out
}

/// Decides whether `Q = u_λ θ(P(πλ, τi)) v_i` for some permutations,
/// automorphism `θ` and scalars. Brute force; meant for `|D| ≤ 8` and
/// matrices up to 4×4.
pub fn sandwich_equivalent(d: &Semigroup, p: &Sandwich, q: &Sandwich) -> bool {
    let lam = p.len();
    if q.len() != lam {
        return false;
    }
    let icount = p.first().map_or(0, Vec::len);
    if q.iter().any(|r| r.len() != icount) {
        return false;
    }
    let auts = automorphisms(d);
    let row_perms = permutations(lam);
    let col_perms = permutations(icount);
    for rp in &row_perms {
        for cp in &col_perms {
            let zero_match = (0..lam)
                .all(|l| (0..icount).all(|i| p[rp[l]][cp[i]].is_some() == q[l][i].is_some()));
            if !zero_match {
                continue;
            }
            for theta in &auts {
                let moved: Sandwich = (0..lam)
                    .map(|l| {
                        (0..icount)
                            .map(|i| p[rp[l]][cp[i]].map(|x| theta[x]))
                            .collect()
                    })
                    .collect();
                if scalings_exist(d, &moved, q) {
                    return true;
                }
            }
        }
    }
    false
}

/// Searches `u, v` with `q[l][i] = u[l]·p[l][i]·v[i]` on the common support.
fn scalings_exist(d: &Semigroup, p: &Sandwich, q: &Sandwich) -> bool {
    let lam = p.len();
    let icount = p.first().map_or(0, Vec::len);
    let inv = |x: usize| d.inverse(x).expect("group element");
    let mut u: Vec<Option<usize>> = vec![None; lam];
    let mut v: Vec<Option<usize>> = vec![None; icount];
    for start in 0..lam {
        if u[start].is_some() {
            continue;
        }
        // try every value for the root of this component
        let mut solved = false;
        for root in 0..d.len() {
            let mut uu = u.clone();
            let mut vv = v.clone();
            uu[start] = Some(root);
            let mut queue = VecDeque::from([(true, start)]);
            let mut ok = true;
            while let Some((is_row, k)) = queue.pop_front() {
                if is_row {
                    let ul = uu[k].unwrap();
                    for i in 0..icount {
                        if let (Some(pv), Some(qv)) = (p[k][i], q[k][i]) {
                            // v_i = p⁻¹ u⁻¹ q
                            let want = d.mul(d.mul(inv(pv), inv(ul)), qv);
                            match vv[i] {
                                None => {
                                    vv[i] = Some(want);
                                    queue.push_back((false, i));
                                }
                                Some(x) if x != want => ok = false,
                                _ => {}
                            }
                        }
                    }
                } else {
                    let vi = vv[k].unwrap();
                    for l in 0..lam {
                        if let (Some(pv), Some(qv)) = (p[l][k], q[l][k]) {
                            let want = d.mul(d.mul(qv, inv(vi)), inv(pv));
                            match uu[l] {
                                None => {
                                    uu[l] = Some(want);
                                    queue.push_back((true, l));
                                }
                                Some(x) if x != want => ok = false,
                                _ => {}
                            }
                        }
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                u = uu;
                v = vv;
                solved = true;
                break;
            }
        }
        if !solved {
            return false;
        }
    }
    true
}

/// Rees coordinates of a finite completely 0-simple semigroup, or `None`
/// when `s` is not completely 0-simple.
pub fn c0s_decompose(s: &Semigroup) -> Option<C0sDecomposition> {
    let zero = s.zero()?;
    let n = s.len();
    if n < 2 || ideals(s).len() != 3 {
        return None;
    }
    if (0..n).all(|a| (0..n).all(|b| s.mul(a, b) == zero)) {
        return None;
    }
    let e = s.idempotents().into_iter().find(|&x| x != zero)?;
    let rmask: Vec<Vec<bool>> = (0..n).map(|x| s.right_ideal_of(x)).collect();
    let lmask: Vec<Vec<bool>> = (0..n).map(|x| s.left_ideal_of(x)).collect();
    let classes = |mask: &Vec<Vec<bool>>, first: usize| -> Vec<Vec<usize>> {
        let mut reps: Vec<usize> = vec![first];
        for x in 0..n {
            if x != zero && !reps.iter().any(|&r| mask[r] == mask[x]) {
                reps.push(x);
            }
        }
        reps.iter()
            .map(|&r| {
                (0..n)
                    .filter(|&x| x != zero && mask[x] == mask[r])
                    .collect()
            })
            .collect()
    };
    let rcls = classes(&rmask, e);
    let lcls = classes(&lmask, e);
    let h: Vec<usize> = rcls[0]
        .iter()
        .copied()
        .filter(|x| lcls[0].contains(x))
        .collect();
    let (group, emb) = s.subsemigroup(&h).ok()?;
    if !group.is_group() {
        return None;
    }
    let to_group = |x: usize| emb.iter().position(|&y| y == x);
    // r_i ∈ R_i ∩ L_e, q_λ ∈ R_e ∩ L_λ
    let mut r: Vec<usize> = Vec::new();
    for rc in &rcls {
        r.push(*rc.iter().find(|x| lcls[0].contains(x))?);
    }
    let mut q: Vec<usize> = Vec::new();
    for lc in &lcls {
        q.push(*lc.iter().find(|x| rcls[0].contains(x))?);
    }
    r[0] = e;
    q[0] = e;
    for ri in r.iter_mut() {
        let p = s.mul(e, *ri);
        if p != zero {
            let g = to_group(p)?;
            *ri = s.mul(*ri, emb[group.inverse(g)?]);
        }
    }
    for ql in q.iter_mut() {
        let p = s.mul(*ql, e);
        if p != zero {
            let g = to_group(p)?;
            *ql = s.mul(emb[group.inverse(g)?], *ql);
        }
    }
    let (ic, lc) = (r.len(), q.len());
    let mut sandwich: Sandwich = vec![vec![None; ic]; lc];
    for l in 0..lc {
        for i in 0..ic {
            let p = s.mul(q[l], r[i]);
            if p != zero {
                sandwich[l][i] = Some(to_group(p)?);
            }
        }
    }
    let mut coordinates = vec![None; n];
    for i in 0..ic {
        for (gi, &g) in emb.iter().enumerate() {
            for l in 0..lc {
                let x = s.product(&[r[i], g, q[l]]);
                if x == zero || coordinates[x].is_some() {
                    return None;
                }
                coordinates[x] = Some((i, gi, l));
            }
        }
    }
    if (0..n).any(|x| x != zero && coordinates[x].is_none()) {
        return None;
    }
    // multiplication must follow the Rees rule
    for a in 0..n {
        for b in 0..n {
            let (Some((i, x, l)), Some((j, y, m))) = (coordinates[a], coordinates[b]) else {
                continue;
            };
            let expected = sandwich[l][j].map(|p| (i, group.mul(group.mul(x, p), y), m));
            let got = coordinates[s.mul(a, b)];
            if expected != got {
                return None;
            }
        }
    }
    Some(C0sDecomposition {
        group,
        i_count: ic,
        lambda_count: lc,
        sandwich,
        coordinates,
    })
}

impl C0sDecomposition {
    /// True when the decomposition matches `M⁰(d; i, λ; p)` up to group
    /// isomorphism and sandwich equivalence.
    pub fn matches(
        &self,
        d: &Semigroup,
        i_count: usize,
        lambda_count: usize,
        p: &Sandwich,
    ) -> bool {
        if (self.i_count, self.lambda_count) != (i_count, lambda_count) {
            return false;
        }
        let Some(phi) = find_isomorphism(d, &self.group) else {
            return false;
        };
        let moved: Sandwich = p
            .iter()
            .map(|row| row.iter().map(|x| x.map(|g| phi[g])).collect())
            .collect();
        sandwich_equivalent(&self.group, &moved, &self.sandwich)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{adjoin, catalog, predicates, Adjoin};
    use super::*;

    fn paper_p() -> Sandwich {
        vec![
            vec![Some(0), Some(0), None],
            vec![Some(0), None, Some(0)],
            vec![None, Some(0), Some(0)],
        ]
    }

    #[test]
    fn rees_matrix_sizes() {
        let z2 = catalog::cyclic_group(2);
        let m = rees_matrix(&z2, 3, 3, &paper_p()).unwrap();
        assert_eq!(m.len(), 19);
        assert_eq!(predicates(&m).categorical_at_zero, Some(true));
        let t = catalog::cyclic_group(1);
        assert_eq!(
            rees_matrix(&t, 1, 1, &vec![vec![Some(0)]]).unwrap().len(),
            2
        );
    }

    #[test]
    fn rees_matrix_rejects_bad_input() {
        let z2 = catalog::cyclic_group(2);
        assert_eq!(
            rees_matrix(&z2, 2, 1, &vec![vec![Some(0), None]]).unwrap_err(),
            SemigroupError::DegenerateSandwich
        );
        assert_eq!(
            rees_matrix(&catalog::left_zero(2), 1, 1, &vec![vec![Some(0)]]).unwrap_err(),
            SemigroupError::NotAGroup
        );
    }

    #[test]
    fn decompose_round_trip() {
        let z2 = catalog::cyclic_group(2);
        let m = rees_matrix(&z2, 3, 3, &paper_p()).unwrap();
        let dec = c0s_decompose(&m).unwrap();
        assert_eq!((dec.group.len(), dec.i_count, dec.lambda_count), (2, 3, 3));
        assert!(dec.matches(&z2, 3, 3, &paper_p()));

        let s3 = catalog::symmetric_group3();
        let p = vec![vec![Some(0), Some(0)], vec![Some(0), Some(4)]];
        let m = rees_matrix(&s3, 2, 2, &p).unwrap();
        let dec = c0s_decompose(&m).unwrap();
        assert!(dec.matches(&s3, 2, 2, &p));
        let other = vec![vec![Some(0), Some(0)], vec![Some(0), Some(0)]];
        assert!(!dec.matches(&s3, 2, 2, &other));
    }

    #[test]
    fn group_with_zero_is_one_by_one() {
        let g0 = adjoin(&catalog::cyclic_group(3), Adjoin::Zero);
        let dec = c0s_decompose(&g0).unwrap();
        assert_eq!((dec.group.len(), dec.i_count, dec.lambda_count), (3, 1, 1));
        assert!(c0s_decompose(&catalog::null_semigroup(&["a"])).is_none());
        assert!(c0s_decompose(&catalog::uvw_semigroup()).is_none());
        assert!(c0s_decompose(&catalog::brandt2()).is_some());
    }

    #[test]
    fn normalization_fixes_first_row_and_column() {
        let z2 = catalog::cyclic_group(2);
        let p = vec![vec![Some(1), Some(0)], vec![Some(1), Some(1)]];
        let n = normalize_sandwich(&z2, &p);
        assert_eq!(n[0], vec![Some(0), Some(0)]);
        assert_eq!(n[1][0], Some(0));
        assert!(sandwich_equivalent(&z2, &p, &n));
    }

    #[test]
    fn inequivalent_sandwiches() {
        let z2 = catalog::cyclic_group(2);
        let a = vec![vec![Some(0), Some(0)], vec![Some(0), Some(0)]];
        let b = vec![vec![Some(0), Some(0)], vec![Some(0), Some(1)]];
        let c = vec![vec![Some(0), None], vec![Some(0), Some(0)]];
        assert!(!sandwich_equivalent(&z2, &a, &b));
        assert!(!sandwich_equivalent(&z2, &a, &c));
        assert_eq!(automorphisms(&catalog::symmetric_group3()).len(), 6);
        assert_eq!(automorphisms(&catalog::cyclic_group(5)).len(), 4);
    }
}
