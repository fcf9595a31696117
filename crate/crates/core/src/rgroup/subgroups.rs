//! Subgroups of the finite abelian group `Γ/ℚ×`.

use std::collections::{HashSet, VecDeque};

use super::RadicalGroup;
use crate::arith::factor_u64;
use crate::error::{resource, Result};
use crate::radical::Radical;

pub const DEFAULT_SUBGROUP_BOUND: u64 = 256;

/// Hard cap on the number of subgroups produced.
const MAX_SUBGROUPS: usize = 50_000;

struct Abelian {
    moduli: Vec<u64>,
    order: usize,
}

impl Abelian {
    fn decode(&self, mut i: usize) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.moduli.len());
        for &d in &self.moduli {
            v.push((i % d as usize) as u64);
            i /= d as usize;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> usize {
        let mut i = 0usize;
        for (x, &d) in v.iter().zip(&self.moduli).rev() {
            i = i * d as usize + *x as usize;
        }
        i
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.moduli).map(|((p, q), d)| (p + q) % d).collect();
        self.encode(&s)
    }
}

fn with_element(a: &Abelian, members: &[bool], x: usize) -> Vec<bool> {
    let mut out = members.to_vec();
    let base: Vec<usize> = (0..a.order).filter(|&i| members[i]).collect();
    let mut shift = x;
    while !members[shift] {
        for &s in &base {
            out[a.add(s, shift)] = true;
        }
        shift = a.add(shift, x);
    }
    out
}

pub(super) fn enumerate(gamma: &RadicalGroup, bound: u64) -> Result<Vec<RadicalGroup>> {
    let index = gamma.index();
    if index > bound {
        return resource(format!("index {index} exceeds the subgroup bound {bound}"));
    }
    let a = Abelian { moduli: gamma.invariant_factors(), order: index as usize };
    let gens = gamma.invariant_generators();
    let to_radical = |i: usize| {
        a.decode(i)
            .iter()
            .zip(&gens)
            .fold(Radical::one(), |acc, (k, g)| acc.mul(&g.pow(*k as i64)))
    };

    let mut trivial = vec![false; a.order];
    trivial[0] = true;
    let mut seen: HashSet<Vec<bool>> = HashSet::from([trivial.clone()]);
    let mut found: Vec<(Vec<bool>, Vec<usize>)> = vec![(trivial.clone(), Vec::new())];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let (members, chain) = found[k].clone();
        for x in 0..a.order {
            if members[x] {
                continue;
            }
            let next = with_element(&a, &members, x);
            if seen.insert(next.clone()) {
                if found.len() >= MAX_SUBGROUPS {
                    return resource(format!("more than {MAX_SUBGROUPS} subgroups"));
                }
                let mut c = chain.clone();
                c.push(x);
                found.push((next, c));
                queue.push_back(found.len() - 1);
            }
        }
    }
    let mut out: Vec<RadicalGroup> = found
        .into_iter()
        .map(|(_, chain)| RadicalGroup::new(chain.into_iter().map(to_radical).collect()))
        .collect();
    out.sort_by_key(|g| g.index());
    Ok(out)
}

/// Gaussian binomial `[n choose k]_q`.
fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Conjugate partition, padded to `len` parts.
fn conjugate(parts: &[u32], len: usize) -> Vec<u32> {
    (1..=len as u32).map(|i| parts.iter().filter(|&&p| p >= i).count() as u32).collect()
}

fn partitions_inside(lambda: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &l in lambda {
        let mut next = Vec::new();
        for mu in &out {
            let cap = mu.last().copied().unwrap_or(u32::MAX).min(l);
            for m in 0..=cap {
                let mut v = mu.clone();
                v.push(m);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Number of subgroups of `⊕ ℤ/dᵢ`, from the per-prime partition types.
pub fn subgroup_count(invariants: &[u64]) -> u128 {
    let mut primes: Vec<u64> = invariants.iter().flat_map(|&d| factor_u64(d)).map(|(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut total: u128 = 1;
    for p in primes {
        let mut lambda: Vec<u32> = invariants.iter().map(|&d| crate::arith::valuation(d, p)).filter(|&v| v > 0).collect();
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let len = lambda[0] as usize;
        let lc = conjugate(&lambda, len + 1);
        let mut count: u128 = 0;
        for mu in partitions_inside(&lambda) {
            let mc = conjugate(&mu, len + 1);
            let mut c: u128 = 1;
            for i in 0..len {
                let exp = mc[i + 1] * (lc[i] - mc[i]);
                c *= (p as u128).pow(exp) * gaussian_binomial(lc[i] - mc[i + 1], mc[i] - mc[i + 1], p);
            }
            count += c;
        }
        total *= count;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> RadicalGroup {
        RadicalGroup::parse(spec).unwrap()
    }

    #[test]
    fn small_examples() {
        let subs = g("rt(2,4)").subgroups_containing_base(256).unwrap();
        assert_eq!(subs.iter().map(|s| s.index()).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(g("rt(2,2), rt(3,2)").subgroups_containing_base(256).unwrap().len(), 5);
        assert_eq!(g("").subgroups_containing_base(256).unwrap().len(), 1);
        assert!(g("rt(2,16), rt(3,32)").subgroups_containing_base(256).is_err());
    }

    #[test]
    fn counting_formula() {
        assert_eq!(subgroup_count(&[]), 1);
        assert_eq!(subgroup_count(&[4]), 3);
        assert_eq!(subgroup_count(&[2, 2]), 5);
        assert_eq!(subgroup_count(&[2, 2, 2]), 16);
        assert_eq!(subgroup_count(&[2, 4]), 8);
        assert_eq!(subgroup_count(&[6]), 4);
        assert_eq!(subgroup_count(&[p2(8)]), 9);
    }

    fn p2(n: u32) -> u64 {
        1 << n
    }

    #[test]
    fn enumeration_matches_formula() {
        for spec in [
            "zeta(4), rt(2,4)",
            "rt(2,2), rt(3,2), rt(5,2)",
            "rt(2,4), rt(3,4)",
            "zeta(3), rt(2,3), rt(5,2)",
            "rt(2,8), rt(3,2)",
            "zeta(8)*rt(2,2), rt(3,6)",
            "rt(2,3), rt(3,3), rt(5,3)",
        ] {
            let gamma = g(spec);
            let subs = gamma.subgroups_containing_base(256).unwrap();
            assert_eq!(subs.len() as u128, subgroup_count(&gamma.invariant_factors()), "{spec}");
            for s in &subs {
                assert!(s.generators().iter().all(|x| gamma.contains(x)));
                assert_eq!(gamma.index() % s.index(), 0);
            }
        }
    }
}
