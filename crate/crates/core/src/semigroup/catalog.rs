//! Small named semigroups used throughout the tests and the CLI.

use std::collections::HashSet;

use super::{validate_table, RawTable, Semigroup};

fn build(names: Vec<String>, zero: Option<usize>, f: impl Fn(usize, usize) -> usize) -> Semigroup {
    Semigroup::from_fn(names, zero, f).expect("catalogue table is valid")
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// Cyclic group `Z/n` on `1, g, g^2, ...`.
pub fn cyclic_group(n: usize) -> Semigroup {
    assert!(n >= 1);
    build(
        (0..n).map(|k| power_name("g", k)).collect(),
        None,
        |a, b| (a + b) % n,
    )
}

/// Elementary abelian group `(Z/2)^k`; element `m` is the product of the
/// letters `a, b, c, ...` whose bits are set in `m`.
pub fn elementary_abelian2(k: usize) -> Semigroup {
    assert!(k <= 6);
    let letters = ['a', 'b', 'c', 'd', 'e', 'f'];
    let names = (0..1usize << k)
        .map(|m| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..k)
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| letters[i])
                    .collect()
            }
        })
        .collect();
    build(names, None, |a, b| a ^ b)
}

pub fn klein_four() -> Semigroup {
    elementary_abelian2(2)
}

/// Dihedral group of order `2n`: element `k + n·e` stands for `r^k s^e`.
pub fn dihedral(n: usize) -> Semigroup {
    assert!(n >= 1);
    let names = (0..2 * n)
        .map(|x| {
            let (k, e) = (x % n, x / n);
            match (k, e) {
                (0, 0) => "1".to_string(),
                (_, 0) => power_name("r", k),
                (0, _) => "s".to_string(),
                _ => format!("{}s", power_name("r", k)),
            }
        })
        .collect();
    // r^a s^e · r^b s^f = r^(a + (-1)^e b) s^(e+f)
    build(names, None, move |x, y| {
        let (a, e) = (x % n, x / n);
        let (b, f) = (y % n, y / n);
        let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
        k + n * ((e + f) % 2)
    })
}

/// Symmetric group on three points, composing right-to-left.
pub fn symmetric_group3() -> Semigroup {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let names = ["()", "(12)", "(23)", "(13)", "(123)", "(132)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let perms2 = perms.clone();
    build(names, None, move |a, b| {
        let p = perms2[a];
        let q = perms2[b];
        let c = [p[q[0]], p[q[1]], p[q[2]]];
        perms2.iter().position(|r| *r == c).unwrap()
    })
}

/// Null semigroup: the given names plus a zero `0`, all products zero.
pub fn null_semigroup(names: &[&str]) -> Semigroup {
    let n = names.len();
    let mut all: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    all.push("0".into());
    build(all, Some(n), move |_, _| n)
}

/// `{u, v, w, 0}` with `u² = v² = uv = vu = w` and all other products zero.
pub fn uvw_semigroup() -> Semigroup {
    let names = ["u", "v", "w", "0"].iter().map(|s| s.to_string()).collect();
    build(names, Some(3), |a, b| if a < 2 && b < 2 { 2 } else { 3 })
}

/// Brandt semigroup of 2×2 matrix units `e11, e12, e21, e22` and `0`.
pub fn brandt2() -> Semigroup {
    let names = ["e11", "e12", "e21", "e22", "0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    build(names, Some(4), |a, b| {
        if a == 4 || b == 4 {
            return 4;
        }
        let (i, j) = (a / 2, a % 2);
        let (k, l) = (b / 2, b % 2);
        if j == k {
            i * 2 + l
        } else {
            4
        }
    })
}

/// `{a, b, c, d, ab, 0}` with `a·b = c·d = ab` and every other product zero.
pub fn mitchell_quotient() -> Semigroup {
    let names = ["a", "b", "c", "d", "ab", "0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    build(names, Some(5), |x, y| {
        if (x, y) == (0, 1) || (x, y) == (2, 3) {
            4
        } else {
            5
        }
    })
}

/// `⟨x, y | xy = y, x^p = x^q, yx = y² = 0⟩` for `1 ≤ p < q`: elements
/// `x, ..., x^(q-1), y, 0`.
pub fn monogenic_with_fixed_point(p: usize, q: usize) -> Semigroup {
    assert!(1 <= p && p < q);
    let m = q - 1;
    let (y, zero) = (m, m + 1);
    let mut names: Vec<String> = (1..=m).map(|k| power_name("x", k)).collect();
    names.push("y".into());
    names.push("0".into());
    // x^k has index k-1
    let reduce = move |k: usize| if k < q { k } else { p + (k - p) % (q - p) };
    build(names, Some(zero), move |a, b| {
        if a == zero || b == zero {
            zero
        } else if a < m && b < m {
            reduce(a + b + 2) - 1
        } else if a < m && b == y {
            y
        } else {
            zero
        }
    })
}

/// Left-zero band: `xy = x`.
pub fn left_zero(n: usize) -> Semigroup {
    build((1..=n).map(|i| format!("l{i}")).collect(), None, |a, _| a)
}

/// Right-zero band: `xy = y`.
pub fn right_zero(n: usize) -> Semigroup {
    build((1..=n).map(|i| format!("r{i}")).collect(), None, |_, b| b)
}

/// Chain semilattice `e1 > e2 > ... > en` under meet.
pub fn chain(n: usize) -> Semigroup {
    build((1..=n).map(|i| format!("e{i}")).collect(), None, |a, b| {
        a.max(b)
    })
}

/// Monogenic semigroup `⟨x | x^(index+period) = x^index⟩`.
pub fn monogenic(index: usize, period: usize) -> Semigroup {
    assert!(index >= 1 && period >= 1);
    let size = index + period - 1;
    let reduce = move |k: usize| {
        if k < index + period {
            k
        } else {
            index + (k - index) % period
        }
    };
    build(
        (1..=size).map(|k| power_name("x", k)).collect(),
        None,
        move |a, b| reduce(a + b + 2) - 1,
    )
}

/// Transformations of `{1, 2}`: identity, swap and the two constants, with
/// `(fg)(i) = f(g(i))`.
pub fn full_transformations2() -> Semigroup {
    let maps: Vec<[usize; 2]> = vec![[0, 1], [1, 0], [0, 0], [1, 1]];
    let names = ["id", "sw", "c1", "c2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    build(names, None, move |a, b| {
        let (f, g) = (maps[a], maps[b]);
        let c = [f[g[0]], f[g[1]]];
        maps.iter().position(|m| *m == c).unwrap()
    })
}

/// All monoids of order `n` (1 ≤ n ≤ 4) up to isomorphism. Element `0` is
/// the identity, named `1`; the others are `a, b, c`.
pub fn all_monoids(n: usize) -> Vec<Semigroup> {
    assert!((1..=4).contains(&n));
    let names: Vec<String> = std::iter::once("1".to_string())
        .chain(["a", "b", "c"].iter().take(n - 1).map(|s| s.to_string()))
        .collect();
    let free = (n - 1) * (n - 1);
    let mut found: Vec<Semigroup> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let total = n.pow(free as u32);
    for code in 0..total {
        let mut t = vec![0usize; n * n];
        for i in 0..n {
            t[i] = i;
            t[i * n] = i;
        }
        let mut c = code;
        for i in 1..n {
            for j in 1..n {
                t[i * n + j] = c % n;
                c /= n;
            }
        }
        if !is_associative(&t, n) {
            continue;
        }
        let canon = canonical_monoid_form(&t, n);
        if seen.insert(canon) {
            let table = (0..n).map(|i| t[i * n..(i + 1) * n].to_vec()).collect();
            let s = validate_table(RawTable {
                names: names.clone(),
                table,
                zero: None,
            })
            .expect("associative");
            found.push(s.with_detected_zero());
        }
    }
    found
}

/// All semigroups of order `n` (1 ≤ n ≤ 3) up to isomorphism, named `a, b, c`.
pub fn all_semigroups(n: usize) -> Vec<Semigroup> {
    assert!((1..=3).contains(&n));
    let names: Vec<String> = ["a", "b", "c"]
        .iter()
        .take(n)
        .map(|s| s.to_string())
        .collect();
    let mut found = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for code in 0..n.pow((n * n) as u32) {
        let mut c = code;
        let t: Vec<usize> = (0..n * n)
            .map(|_| {
                let v = c % n;
                c /= n;
                v
            })
            .collect();
        if !is_associative(&t, n) {
            continue;
        }
        let canon = canonical_form(&t, n, 0);
        if seen.insert(canon) {
            let table = (0..n).map(|i| t[i * n..(i + 1) * n].to_vec()).collect();
            let s = validate_table(RawTable {
                names: names.clone(),
                table,
                zero: None,
            })
            .expect("associative");
            found.push(s.with_detected_zero());
        }
    }
    found
}

fn is_associative(t: &[usize], n: usize) -> bool {
    (0..n)
        .all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]])))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Lexicographically least relabelled table over permutations fixing the
/// first `fixed` elements.
fn canonical_form(t: &[usize], n: usize, fixed: usize) -> Vec<usize> {
    let movable: Vec<usize> = (fixed..n).collect();
    permutations(&movable)
        .into_iter()
        .map(|p| {
            let perm: Vec<usize> = (0..fixed).chain(p).collect();
            let mut inv = vec![0; n];
            for (i, &x) in perm.iter().enumerate() {
                inv[x] = i;
            }
            (0..n * n)
                .map(|k| perm[t[inv[k / n] * n + inv[k % n]]])
                .collect::<Vec<usize>>()
        })
        .min()
        .expect("at least one permutation")
}

fn canonical_monoid_form(t: &[usize], n: usize) -> Vec<usize> {
    canonical_form(t, n, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_sizes() {
        assert_eq!(cyclic_group(5).len(), 5);
        assert!(cyclic_group(5).is_group());
        assert!(dihedral(4).is_group());
        assert!(!dihedral(3).is_commutative());
        assert!(symmetric_group3().is_group());
        assert!(brandt2().has_zero());
        assert_eq!(
            monogenic_with_fixed_point(2, 3).names(),
            &["x", "x^2", "y", "0"]
        );
        assert_eq!(monogenic(2, 2).len(), 3);
        assert!(full_transformations2().is_monoid());
    }

    #[test]
    fn fixed_point_table() {
        let s = monogenic_with_fixed_point(2, 3);
        let [x, x2, y, z] = [0, 1, 2, 3];
        assert_eq!(s.mul(x, x), x2);
        assert_eq!(s.mul(x2, x), x2);
        assert_eq!(s.mul(x, y), y);
        assert_eq!(s.mul(x2, y), y);
        assert_eq!(s.mul(y, x), z);
        assert_eq!(s.mul(y, y), z);
    }

    #[test]
    fn monoid_counts() {
        // known counts of monoids up to isomorphism: 1, 2, 7, 35
        assert_eq!(all_monoids(1).len(), 1);
        assert_eq!(all_monoids(2).len(), 2);
        assert_eq!(all_monoids(3).len(), 7);
        assert_eq!(all_monoids(4).len(), 35);
    }

    #[test]
    fn semigroup_counts() {
        // up to isomorphism: 1, 5, 24
        assert_eq!(all_semigroups(1).len(), 1);
        assert_eq!(all_semigroups(2).len(), 5);
        assert_eq!(all_semigroups(3).len(), 24);
    }
}
