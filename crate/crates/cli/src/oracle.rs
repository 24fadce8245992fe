//! Brute-force cohomology by listing every cochain, used by `--oracle`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use zerocohom::cohomology::{Coefficients, Variant};
use zerocohom::semigroup::Semigroup;
use zerocohom::Int;

/// Largest number of cochains the brute force will list in one degree.
pub const MAX_BRUTE_COCHAINS: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCount {
    pub cocycles: u64,
    pub coboundaries: u64,
}

impl BruteCount {
    pub fn order(&self) -> u64 {
        self.cocycles / self.coboundaries
    }
}

fn tuples(s: &Semigroup, n: usize, variant: Variant) -> Vec<Vec<usize>> {
    let letters: Vec<usize> = match variant {
        Variant::Em => (0..s.len()).collect(),
        Variant::Zero | Variant::Bimodule => s.nonzero(),
    };
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            for &x in &letters {
                let mut u = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out = next;
    }
    if variant != Variant::Em {
        out.retain(|t| t.is_empty() || !s.is_zero(s.product(t)));
    }
    out
}

/// All elements of `A^k`, or `None` past the cap.
fn all_cochains(orders: &[u64], k: usize) -> Option<Vec<Vec<Vec<Int>>>> {
    let per: u64 = orders.iter().product();
    let total = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(per).filter(|&t| t <= MAX_BRUTE_COCHAINS))?;
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut f = Vec::with_capacity(k);
        for _ in 0..k {
            let mut v = Vec::with_capacity(orders.len());
            for &d in orders {
                v.push(Int::from(code % d));
                code /= d;
            }
            f.push(v);
        }
        out.push(f);
    }
    Some(out)
}

struct Evaluator<'a, C: ?Sized> {
    c: &'a C,
    source: HashMap<Vec<usize>, usize>,
    target: Vec<Vec<usize>>,
}

impl<C: Coefficients<Int> + ?Sized> Evaluator<'_, C> {
    fn reduce(&self, v: Vec<Int>) -> Vec<Int> {
        self.c.group().normalize(&v)
    }

    fn coboundary(&self, f: &[Vec<Int>]) -> Vec<Vec<Int>> {
        let s = self.c.semigroup();
        let k = self.c.group().ngens();
        self.target
            .iter()
            .map(|x| {
                let n = x.len() - 1;
                let value = |t: &[usize]| &f[self.source[t]];
                let mut acc = self.c.left(x[0]).mul_vec(value(&x[1..]));
                for i in 0..n {
                    let mut t = x[..i].to_vec();
                    t.push(s.mul(x[i], x[i + 1]));
                    t.extend_from_slice(&x[i + 2..]);
                    let v = value(&t);
                    for j in 0..k {
                        if i % 2 == 0 {
                            acc[j] -= &v[j];
                        } else {
                            acc[j] += &v[j];
                        }
                    }
                }
                let last = value(&x[..n]);
                let last = match self.c.right(x[n]) {
                    Some(m) => m.mul_vec(last),
                    None => last.clone(),
                };
                for j in 0..k {
                    if n % 2 == 0 {
                        acc[j] -= &last[j];
                    } else {
                        acc[j] += &last[j];
                    }
                }
                self.reduce(acc)
            })
            .collect()
    }
}

/// Counts `Zⁿ` and `Bⁿ` by listing cochains; `None` when the coefficient
/// group is infinite or a cochain group is too large to list.
pub fn brute_cohomology<C: Coefficients<Int> + ?Sized>(c: &C, n: usize, variant: Variant) -> Option<BruteCount> {
    let s = c.semigroup();
    let a = c.group();
    if !a.is_finite() {
        return None;
    }
    let orders: Vec<u64> = a.factors().iter().map(|d| d.to_u64()).collect::<Option<_>>()?;
    let cur = tuples(s, n, variant);
    let next = tuples(s, n + 1, variant);
    let index = |ts: &[Vec<usize>]| ts.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect::<HashMap<_, _>>();
    let zero = vec![vec![Int::from(0); orders.len()]; next.len()];
    let out = Evaluator { c, source: index(&cur), target: next };
    let cochains = all_cochains(&orders, cur.len())?;
    let cocycles = cochains.iter().filter(|f| out.coboundary(f) == zero).count() as u64;
    let coboundaries = if n == 0 {
        1
    } else {
        let prev = tuples(s, n - 1, variant);
        let into = Evaluator { c, source: index(&prev), target: cur };
        let lower = all_cochains(&orders, prev.len())?;
        lower.iter().map(|f| into.coboundary(f)).collect::<BTreeSet<_>>().len() as u64
    };
    Some(BruteCount { cocycles, coboundaries })
}

/// Order of a finite group given by invariant factors.
pub fn order_of(factors: &[BigInt]) -> Option<u64> {
    if factors.iter().any(|d| d.to_u64() == Some(0)) {
        return None;
    }
    factors.iter().fold(Some(BigInt::one()), |acc, d| acc.map(|a| a * d)).and_then(|o| o.to_u64())
}
