//! Finite semigroups given by multiplication tables.
//!
//! Elements are indexed `0..len()`; names only matter for display and for
//! serialization. A declared zero is checked to be absorbing, an identity is
//! detected automatically.

pub mod catalog;
mod rees;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use rees::{
    c0s_decompose, normalize_sandwich, rees_matrix, sandwich_equivalent, C0sDecomposition, Sandwich,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("semigroup must have at least one element")]
    Empty,
    #[error("table is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("not associative: ({x}{y}){z} != {x}({y}{z})")]
    Associativity { x: String, y: String, z: String },
    #[error("declared zero {zero:?} is not absorbing against {witness:?}")]
    ZeroError { zero: String, witness: String },
    #[error("semigroup has no zero")]
    MissingZero,
    #[error("subset is not an ideal (witness element {0})")]
    NotAnIdeal(usize),
    #[error("subset is not closed under multiplication")]
    NotClosed,
    #[error("semigroup is not a group")]
    NotAGroup,
    #[error("sandwich matrix has a zero row or column")]
    DegenerateSandwich,
    #[error("sandwich matrix has wrong shape or entries")]
    BadSandwich,
}

/// A finite semigroup with an optional distinguished zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    names: Vec<String>,
    table: Vec<usize>,
    zero: Option<usize>,
    identity: Option<usize>,
}

/// Raw, unvalidated table input.
#[derive(Clone, Debug)]
pub struct RawTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub zero: Option<usize>,
}

/// Validates a raw table: shape, index range, unique names, associativity, absorbing zero.
pub fn validate_table(raw: RawTable) -> Result<Semigroup, SemigroupError> {
    let n = raw.names.len();
    if n == 0 {
        return Err(SemigroupError::Empty);
    }
    if raw.table.len() != n {
        return Err(SemigroupError::NotSquare {
            row: raw.table.len(),
            expected: n,
            found: 0,
        });
    }
    let mut seen = HashSet::new();
    for name in &raw.names {
        if !seen.insert(name.as_str()) {
            return Err(SemigroupError::DuplicateName(name.clone()));
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for (i, row) in raw.table.iter().enumerate() {
        if row.len() != n {
            return Err(SemigroupError::NotSquare {
                row: i,
                expected: n,
                found: row.len(),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(SemigroupError::IndexOutOfRange {
                    row: i,
                    col: j,
                    value: v,
                });
            }
            table.push(v);
        }
    }
    if let Some(z) = raw.zero {
        if z >= n {
            return Err(SemigroupError::IndexOutOfRange {
                row: z,
                col: z,
                value: z,
            });
        }
    }
    let mut s = Semigroup {
        names: raw.names,
        table,
        zero: raw.zero,
        identity: None,
    };
    if let Some((x, y, z)) = s.associativity_witness() {
        return Err(SemigroupError::Associativity {
            x: s.names[x].clone(),
            y: s.names[y].clone(),
            z: s.names[z].clone(),
        });
    }
    if let Some(z) = s.zero {
        if let Some(w) = (0..n).find(|&i| s.mul(z, i) != z || s.mul(i, z) != z) {
            return Err(SemigroupError::ZeroError {
                zero: s.names[z].clone(),
                witness: s.names[w].clone(),
            });
        }
    }
    s.identity = s.find_identity();
    Ok(s)
}

/// Which kind of element [`adjoin`] adds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjoin {
    Zero,
    Identity,
}

/// Structural flags; the zero-dependent ones are `None` without a zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub has_zero: bool,
    pub is_monoid: bool,
    pub categorical_at_zero: Option<bool>,
    pub zero_cancellative: Option<bool>,
}

/// A two-sided ideal, as a sorted list of element indices. May be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    members: Vec<usize>,
}

impl Ideal {
    pub fn empty() -> Self {
        Ideal {
            members: Vec::new(),
        }
    }

    /// Checks the ideal property against `s`.
    pub fn new(
        s: &Semigroup,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, SemigroupError> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= s.len()) {
            return Err(SemigroupError::NotAnIdeal(bad));
        }
        for &x in &set {
            for y in 0..s.len() {
                if !set.contains(&s.mul(x, y)) || !set.contains(&s.mul(y, x)) {
                    return Err(SemigroupError::NotAnIdeal(x));
                }
            }
        }
        Ok(Ideal {
            members: set.into_iter().collect(),
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &Ideal) -> Ideal {
        let set: BTreeSet<usize> = self.members.iter().chain(&other.members).copied().collect();
        Ideal {
            members: set.into_iter().collect(),
        }
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }
}

impl Semigroup {
    /// Convenience constructor from a product function.
    pub fn from_fn(
        names: Vec<String>,
        zero: Option<usize>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, SemigroupError> {
        let n = names.len();
        let table = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        validate_table(RawTable { names, table, zero })
    }

    /// Builds from element names and a table of names; `zero` is a name.
    pub fn from_named_table(
        names: &[&str],
        table: &[&[&str]],
        zero: Option<&str>,
    ) -> Result<Self, SemigroupError> {
        let idx: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let lookup = |n: &str| {
            idx.get(n)
                .copied()
                .ok_or_else(|| SemigroupError::UnknownName(n.to_string()))
        };
        let mut rows = Vec::with_capacity(table.len());
        for row in table {
            rows.push(
                row.iter()
                    .map(|n| lookup(n))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let zero = zero.map(lookup).transpose()?;
        validate_table(RawTable {
            names: names.iter().map(|s| s.to_string()).collect(),
            table: rows,
            zero,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.names.len() + b]
    }

    /// Product of a nonempty sequence, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        let (first, rest) = xs.split_first().expect("product of an empty sequence");
        rest.iter().fold(*first, |acc, &x| self.mul(acc, x))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn has_zero(&self) -> bool {
        self.zero.is_some()
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn is_zero(&self, x: usize) -> bool {
        self.zero == Some(x)
    }

    /// Elements other than the zero (all elements when there is no zero).
    pub fn nonzero(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !self.is_zero(x)).collect()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n)
            .map(|i| self.table[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    /// Same table with a different (or no) declared zero; revalidated.
    pub fn with_zero(&self, zero: Option<usize>) -> Result<Semigroup, SemigroupError> {
        validate_table(RawTable {
            names: self.names.clone(),
            table: self.table_rows(),
            zero,
        })
    }

    /// Declares the absorbing element as zero when one exists.
    pub fn with_detected_zero(&self) -> Semigroup {
        let n = self.len();
        let z = (0..n).find(|&z| (0..n).all(|i| self.mul(z, i) == z && self.mul(i, z) == z));
        let mut s = self.clone();
        s.zero = z;
        s
    }

    pub fn renamed(&self, names: Vec<String>) -> Result<Semigroup, SemigroupError> {
        assert_eq!(names.len(), self.len());
        validate_table(RawTable {
            names,
            table: self.table_rows(),
            zero: self.zero,
        })
    }

    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn find_identity(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|i| self.mul(e, i) == i && self.mul(i, e) == i))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.mul(x, x) == x).collect()
    }

    pub fn is_group(&self) -> bool {
        match self.identity {
            None => false,
            Some(e) => (0..self.len())
                .all(|x| (0..self.len()).any(|y| self.mul(x, y) == e && self.mul(y, x) == e)),
        }
    }

    /// Inverse in a group or in the unit group of a monoid.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        let e = self.identity?;
        (0..self.len()).find(|&y| self.mul(x, y) == e && self.mul(y, x) == e)
    }

    /// Units of a monoid (empty when there is no identity).
    pub fn units(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.inverse(x).is_some())
            .collect()
    }

    /// Restriction to a subset closed under multiplication; returns the
    /// subsemigroup and the embedding (new index -> old index).
    pub fn subsemigroup(
        &self,
        members: &[usize],
    ) -> Result<(Semigroup, Vec<usize>), SemigroupError> {
        let mut emb: Vec<usize> = members.to_vec();
        emb.sort_unstable();
        emb.dedup();
        if emb.is_empty() {
            return Err(SemigroupError::Empty);
        }
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(emb.len());
        for &a in &emb {
            let mut row = Vec::with_capacity(emb.len());
            for &b in &emb {
                row.push(*pos.get(&self.mul(a, b)).ok_or(SemigroupError::NotClosed)?);
            }
            table.push(row);
        }
        let zero = self.zero.and_then(|z| pos.get(&z).copied());
        let names = emb.iter().map(|&x| self.names[x].clone()).collect();
        let s = validate_table(RawTable { names, table, zero })?;
        Ok((s, emb))
    }

    /// Sub-semigroup generated by the given elements.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = gens.iter().copied().collect();
        let mut queue: VecDeque<usize> = gens.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Two-sided principal ideal `S¹ x S¹`.
    pub fn principal_ideal(&self, x: usize) -> Vec<bool> {
        let n = self.len();
        let mut mark = vec![false; n];
        mark[x] = true;
        for a in 0..n {
            mark[self.mul(a, x)] = true;
            mark[self.mul(x, a)] = true;
            for b in 0..n {
                mark[self.mul(self.mul(a, x), b)] = true;
            }
        }
        mark
    }

    /// Right principal ideal `x S¹`.
    pub fn right_ideal_of(&self, x: usize) -> Vec<bool> {
        let mut mark = vec![false; self.len()];
        mark[x] = true;
        for a in 0..self.len() {
            mark[self.mul(x, a)] = true;
        }
        mark
    }

    /// Left principal ideal `S¹ x`.
    pub fn left_ideal_of(&self, x: usize) -> Vec<bool> {
        let mut mark = vec![false; self.len()];
        mark[x] = true;
        for a in 0..self.len() {
            mark[self.mul(a, x)] = true;
        }
        mark
    }

    /// `true` when every product of two elements is the zero.
    pub fn is_null(&self) -> bool {
        match self.zero {
            None => false,
            Some(z) => self.table.iter().all(|&v| v == z),
        }
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Semigroup {:?} zero={:?} identity={:?}",
            self.names, self.zero, self.identity
        )?;
        for row in self.table_rows() {
            let r: Vec<&str> = row.iter().map(|&i| self.names[i].as_str()).collect();
            writeln!(f, "  {}", r.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn fresh_name(existing: &[String], base: &str) -> String {
    let mut candidate = base.to_string();
    while existing.iter().any(|n| *n == candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Adds a new zero or a new identity element at the end.
pub fn adjoin(s: &Semigroup, what: Adjoin) -> Semigroup {
    let n = s.len();
    let mut names = s.names.clone();
    let (base, zero) = match what {
        Adjoin::Zero => ("0", Some(n)),
        Adjoin::Identity => ("1", s.zero),
    };
    names.push(fresh_name(&s.names, base));
    let table = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| match (i == n, j == n, what) {
                    (false, false, _) => s.mul(i, j),
                    (_, _, Adjoin::Zero) => n,
                    (true, _, Adjoin::Identity) => j,
                    (false, true, Adjoin::Identity) => i,
                })
                .collect()
        })
        .collect();
    validate_table(RawTable { names, table, zero }).expect("adjoining preserves associativity")
}

/// The opposite semigroup: transposed table.
pub fn opposite(s: &Semigroup) -> Semigroup {
    let n = s.len();
    let table = (0..n)
        .map(|i| (0..n).map(|j| s.mul(j, i)).collect())
        .collect();
    validate_table(RawTable {
        names: s.names.clone(),
        table,
        zero: s.zero,
    })
    .expect("opposite of a semigroup is a semigroup")
}

/// All two-sided ideals, including the empty one, sorted by size and then
/// lexicographically. Every ideal is a union of principal ideals, so the
/// search runs over unions of those.
pub fn ideals(s: &Semigroup) -> Vec<Ideal> {
    let n = s.len();
    let principals: Vec<Vec<bool>> = {
        let mut ps: Vec<Vec<bool>> = (0..n).map(|x| s.principal_ideal(x)).collect();
        ps.sort();
        ps.dedup();
        ps
    };
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let empty = vec![false; n];
    seen.insert(empty.clone());
    let mut queue = VecDeque::from([empty]);
    while let Some(cur) = queue.pop_front() {
        for p in &principals {
            let next: Vec<bool> = cur.iter().zip(p).map(|(a, b)| *a || *b).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Ideal> = seen
        .into_iter()
        .map(|mask| Ideal {
            members: (0..n).filter(|&i| mask[i]).collect(),
        })
        .collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    out
}

/// Rees quotient together with the map from old to new indices
/// (`None` for ideal members, which go to the new zero).
///
/// `S/∅` is `S` with a zero adjoined; `S/S` is the one-element semigroup.
pub fn rees_quotient_with_map(
    s: &Semigroup,
    ideal: &Ideal,
) -> Result<(Semigroup, Vec<Option<usize>>), SemigroupError> {
    let checked = Ideal::new(s, ideal.members.iter().copied())?;
    if checked.is_empty() {
        let q = adjoin(s, Adjoin::Zero);
        return Ok((q, (0..s.len()).map(Some).collect()));
    }
    let keep: Vec<usize> = (0..s.len()).filter(|&x| !checked.contains(x)).collect();
    let zero = keep.len();
    let mut map = vec![None; s.len()];
    for (i, &x) in keep.iter().enumerate() {
        map[x] = Some(i);
    }
    let mut names: Vec<String> = keep.iter().map(|&x| s.names[x].clone()).collect();
    let zero_name = match s.zero {
        Some(z) => s.names[z].clone(),
        None => fresh_name(&names, "0"),
    };
    names.push(zero_name);
    let table = (0..=zero)
        .map(|i| {
            (0..=zero)
                .map(|j| {
                    if i == zero || j == zero {
                        zero
                    } else {
                        map[s.mul(keep[i], keep[j])].unwrap_or(zero)
                    }
                })
                .collect()
        })
        .collect();
    let q = validate_table(RawTable {
        names,
        table,
        zero: Some(zero),
    })?;
    Ok((q, map))
}

pub fn rees_quotient(s: &Semigroup, ideal: &Ideal) -> Result<Semigroup, SemigroupError> {
    rees_quotient_with_map(s, ideal).map(|(q, _)| q)
}

pub fn predicates(s: &Semigroup) -> Predicates {
    Predicates {
        has_zero: s.has_zero(),
        is_monoid: s.is_monoid(),
        categorical_at_zero: s.zero.map(|_| categorical_at_zero_witness(s).is_none()),
        zero_cancellative: s.zero.map(|_| zero_cancellative_witness(s).is_none()),
    }
}

/// A triple with `xyz = 0` but `xy ≠ 0` and `yz ≠ 0`.
pub fn categorical_at_zero_witness(s: &Semigroup) -> Option<(usize, usize, usize)> {
    let z = s.zero?;
    let n = s.len();
    for x in 0..n {
        for y in 0..n {
            let xy = s.mul(x, y);
            if xy == z {
                continue;
            }
            for w in 0..n {
                if s.mul(y, w) != z && s.mul(xy, w) == z {
                    return Some((x, y, w));
                }
            }
        }
    }
    None
}

/// `(a, b, x)` with `a ≠ b` and `ax = bx ≠ 0` or `xa = xb ≠ 0`.
pub fn zero_cancellative_witness(s: &Semigroup) -> Option<(usize, usize, usize)> {
    let z = s.zero?;
    let n = s.len();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            for x in 0..n {
                let right = s.mul(a, x) == s.mul(b, x) && s.mul(a, x) != z;
                let left = s.mul(x, a) == s.mul(x, b) && s.mul(x, a) != z;
                if right || left {
                    return Some((a, b, x));
                }
            }
        }
    }
    None
}

/// 0-direct union: zeros identified, cross products zero. Elements of `t`
/// follow those of `s`; clashing names get primes appended.
pub fn zero_direct_union(s: &Semigroup, t: &Semigroup) -> Result<Semigroup, SemigroupError> {
    let zs = s.zero.ok_or(SemigroupError::MissingZero)?;
    let zt = t.zero.ok_or(SemigroupError::MissingZero)?;
    let t_rest: Vec<usize> = (0..t.len()).filter(|&x| x != zt).collect();
    let mut names = s.names.clone();
    let mut t_index = vec![zs; t.len()];
    for &x in &t_rest {
        let name = fresh_name(&names, &t.names[x]);
        t_index[x] = names.len();
        names.push(name);
    }
    let n = names.len();
    let sn = s.len();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i < sn, j < sn) {
                    (true, true) => s.mul(i, j),
                    (false, false) => t_index[t.mul(t_rest[i - sn], t_rest[j - sn])],
                    _ => zs,
                })
                .collect()
        })
        .collect();
    validate_table(RawTable {
        names,
        table,
        zero: Some(zs),
    })
}

/// Direct product `s × t` with elements ordered lexicographically.
pub fn direct_product(s: &Semigroup, t: &Semigroup) -> Semigroup {
    let (n, m) = (s.len(), t.len());
    let names = (0..n * m)
        .map(|k| format!("({},{})", s.names[k / m], t.names[k % m]))
        .collect();
    let table = (0..n * m)
        .map(|a| {
            (0..n * m)
                .map(|b| s.mul(a / m, b / m) * m + t.mul(a % m, b % m))
                .collect()
        })
        .collect();
    validate_table(RawTable {
        names,
        table,
        zero: None,
    })
    .expect("direct product is associative")
}

/// Brute-force isomorphism search; returns `phi` with `phi[s-index] = t-index`.
/// Intended for small semigroups (groups up to order 8, test catalogues).
pub fn find_isomorphism(s: &Semigroup, t: &Semigroup) -> Option<Vec<usize>> {
    let n = s.len();
    if n != t.len()
        || s.is_commutative() != t.is_commutative()
        || s.idempotents().len() != t.idempotents().len()
    {
        return None;
    }
    // cheap invariant: multiset of squaring behaviour
    let sig = |g: &Semigroup, x: usize| {
        let sq = g.mul(x, x);
        (
            sq == x,
            g.identity == Some(x),
            g.zero == Some(x),
            (0..g.len()).filter(|&y| g.mul(x, y) == x).count(),
        )
    };
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        s: &Semigroup,
        t: &Semigroup,
        k: usize,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig: &dyn Fn(&Semigroup, usize) -> (bool, bool, bool, usize),
    ) -> bool {
        let n = s.len();
        if k == n {
            return true;
        }
        for c in 0..n {
            if used[c] || sig(s, k) != sig(t, c) {
                continue;
            }
            phi[k] = c;
            let consistent = (0..=k).all(|a| {
                [(a, k), (k, a)].iter().all(|&(x, y)| {
                    let p = s.mul(x, y);
                    phi[p] == usize::MAX || phi[p] == t.mul(phi[x], phi[y])
                })
            }) && (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let p = s.mul(a, b);
                    p > k || phi[p] == t.mul(phi[a], phi[b])
                })
            });
            if consistent {
                used[c] = true;
                if extend(s, t, k + 1, phi, used, sig) {
                    return true;
                }
                used[c] = false;
            }
            phi[k] = usize::MAX;
        }
        false
    }
    if extend(s, t, 0, &mut phi, &mut used, &sig) {
        Some(phi)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::catalog;
    use super::*;

    #[test]
    fn uvw_is_valid_without_identity() {
        let s = catalog::uvw_semigroup();
        assert_eq!(s.len(), 4);
        assert!(!s.is_monoid());
        assert!(s.has_zero());
        assert!(s.is_commutative());
    }

    #[test]
    fn associativity_error_has_witness() {
        // a·a = b, everything else a: (aa)a = ba = a, a(aa) = ab = a ... adjust
        let raw = RawTable {
            names: vec!["x".into(), "y".into()],
            table: vec![vec![1, 0], vec![0, 0]],
            zero: None,
        };
        match validate_table(raw) {
            Err(SemigroupError::Associativity { .. }) => {}
            other => panic!("expected associativity error, got {other:?}"),
        }
    }

    #[test]
    fn zero_must_absorb() {
        let raw = RawTable {
            names: vec!["z".into(), "x".into()],
            table: vec![vec![0, 1], vec![1, 1]],
            zero: Some(0),
        };
        assert!(matches!(
            validate_table(raw),
            Err(SemigroupError::ZeroError { .. })
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let raw = RawTable {
            names: vec!["a".into(), "a".into()],
            table: vec![vec![0, 0], vec![0, 0]],
            zero: None,
        };
        assert_eq!(
            validate_table(raw).unwrap_err(),
            SemigroupError::DuplicateName("a".into())
        );
    }

    #[test]
    fn adjoin_zero_and_identity() {
        let g = catalog::cyclic_group(2);
        let g0 = adjoin(&g, Adjoin::Zero);
        assert_eq!(g0.len(), 3);
        assert!(predicates(&g0).has_zero);
        let s1 = adjoin(&catalog::uvw_semigroup(), Adjoin::Identity);
        assert_eq!(s1.len(), 5);
        assert!(s1.is_monoid() && s1.has_zero());
    }

    #[test]
    fn opposite_is_involution() {
        let t = catalog::monogenic_with_fixed_point(2, 3);
        let op = opposite(&t);
        for i in 0..t.len() {
            for j in 0..t.len() {
                assert_eq!(op.mul(i, j), t.mul(j, i));
            }
        }
        assert_eq!(opposite(&op), t);
        let c = catalog::uvw_semigroup();
        assert_eq!(opposite(&c), c);
    }

    fn brute_ideals(s: &Semigroup) -> Vec<Vec<usize>> {
        let n = s.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if Ideal::new(s, members.iter().copied()).is_ok() {
                out.push(members);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn ideals_match_subset_enumeration() {
        for s in [
            catalog::uvw_semigroup(),
            catalog::null_semigroup(&["a", "b"]),
            catalog::brandt2(),
            catalog::cyclic_group(3),
        ] {
            let got: Vec<Vec<usize>> = ideals(&s).iter().map(|i| i.members().to_vec()).collect();
            assert_eq!(got, brute_ideals(&s));
        }
        assert_eq!(ideals(&catalog::uvw_semigroup()).len(), 6);
        assert_eq!(ideals(&catalog::null_semigroup(&["a", "b"])).len(), 5);
        assert_eq!(ideals(&catalog::cyclic_group(4)).len(), 2);
    }

    #[test]
    fn uvw_ideal_list() {
        let s = catalog::uvw_semigroup();
        let named: Vec<Vec<&str>> = ideals(&s)
            .iter()
            .map(|i| i.members().iter().map(|&x| s.name(x)).collect())
            .collect();
        assert_eq!(
            named,
            vec![
                vec![],
                vec!["0"],
                vec!["w", "0"],
                vec!["u", "w", "0"],
                vec!["v", "w", "0"],
                vec!["u", "v", "w", "0"]
            ]
        );
    }

    #[test]
    fn rees_quotients() {
        let s = catalog::uvw_semigroup();
        let i = Ideal::new(&s, [2, 3]).unwrap();
        let q = rees_quotient(&s, &i).unwrap();
        assert_eq!(q.names(), &["u", "v", "0"]);
        assert!(q.is_null());
        let q0 = rees_quotient(&s, &Ideal::empty()).unwrap();
        assert_eq!(q0, adjoin(&s, Adjoin::Zero));
        let all = Ideal::new(&s, 0..4).unwrap();
        assert_eq!(rees_quotient(&s, &all).unwrap().len(), 1);
        assert!(matches!(
            rees_quotient(&s, &Ideal { members: vec![0] }),
            Err(SemigroupError::NotAnIdeal(_))
        ));
    }

    #[test]
    fn categorical_at_zero_examples() {
        let s = catalog::uvw_semigroup();
        assert_eq!(predicates(&s).categorical_at_zero, Some(false));
        let (x, y, z) = categorical_at_zero_witness(&s).unwrap();
        assert_eq!(s.product(&[x, y, z]), 3);
        assert_eq!(
            predicates(&catalog::brandt2()).categorical_at_zero,
            Some(true)
        );
        assert_eq!(
            predicates(&catalog::null_semigroup(&["a", "b"])).categorical_at_zero,
            Some(true)
        );
        assert_eq!(
            predicates(&catalog::cyclic_group(2)).categorical_at_zero,
            None
        );
    }

    #[test]
    fn zero_direct_union_shape() {
        let a = adjoin(&catalog::cyclic_group(2), Adjoin::Zero);
        let b = adjoin(&catalog::left_zero(2), Adjoin::Zero);
        let u = zero_direct_union(&a, &b).unwrap();
        assert_eq!(u.len(), 5);
        let z = u.zero().unwrap();
        for x in [0, 1] {
            for y in [3, 4] {
                assert_eq!(u.mul(x, y), z);
                assert_eq!(u.mul(y, x), z);
            }
        }
        assert_eq!(predicates(&u).categorical_at_zero, Some(true));
        assert!(zero_direct_union(&a, &catalog::cyclic_group(2)).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let z4 = catalog::cyclic_group(4);
        let k4 = catalog::klein_four();
        assert!(find_isomorphism(&z4, &k4).is_none());
        assert!(find_isomorphism(&z4, &z4).is_some());
        let s3 = catalog::symmetric_group3();
        let d3 = catalog::dihedral(3);
        assert!(find_isomorphism(&s3, &d3).is_some());
        assert!(find_isomorphism(&s3, &catalog::cyclic_group(6)).is_none());
    }
}
