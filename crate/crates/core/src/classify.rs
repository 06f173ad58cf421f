//! Counting good `C_n`-gradings on `M_m(k)` up to isomorphism.
//!
//! Isomorphism types correspond to orbits of the cyclic shift `τ` on the
//! compositions `F_{n,m}` of `m` into `n` nonnegative parts. The closed count
//! goes through the stabilized sets `A_d` and the exact-length sets `B_d`;
//! [`count_good_orbits`] enumerates orbits directly and serves as its oracle.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{internal, invalid, Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::poly::{is_prime, prime_factors};

/// Default cap on the number of compositions the orbit oracle may visit.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// `(k_0, …, k_{n-1})` with `Σ k_i = m`; `k_i` counts the entries equal to `c^i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionProfile {
    parts: Vec<u64>,
    m: u64,
}

impl CompositionProfile {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid!("a profile needs at least one part"));
        }
        let m = parts
            .iter()
            .try_fold(0u64, |acc, &k| acc.checked_add(k))
            .ok_or_else(|| invalid!("profile sum overflows"))?;
        Ok(Self { parts, m })
    }

    pub fn n(&self) -> u64 {
        self.parts.len() as u64
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// `τ^s`: part `i` moves to position `i + s`.
    pub fn rotate(&self, s: usize) -> Self {
        let n = self.parts.len();
        let mut parts = vec![0; n];
        for (i, &k) in self.parts.iter().enumerate() {
            parts[(i + s) % n] = k;
        }
        Self { parts, m: self.m }
    }

    /// Length of the `⟨τ⟩`-orbit, i.e. the least period of the parts.
    pub fn orbit_length(&self) -> u64 {
        let n = self.parts.len();
        (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| (0..n - d).all(|i| self.parts[i] == self.parts[i + d]))
            .unwrap_or(n) as u64
    }

    /// Lexicographically least element of the orbit.
    pub fn canonical(&self) -> Self {
        let start = least_rotation(&self.parts);
        let n = self.parts.len();
        Self {
            parts: (0..n).map(|i| self.parts[(start + i) % n]).collect(),
            m: self.m,
        }
    }

    /// A degree tuple realizing this profile, `c^i` repeated `k_i` times.
    pub fn to_tuple(&self, group: &FiniteAbelianGroup) -> Result<Vec<GroupElement>> {
        cyclic_order(group).and_then(|n| {
            if n != self.n() {
                return Err(invalid!("profile has {} parts but the group has order {n}", self.n()));
            }
            let c = group.generator(0);
            Ok(self
                .parts
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| core::iter::repeat(group.pow(&c, i as u64)).take(k as usize))
                .collect())
        })
    }
}

fn cyclic_order(group: &FiniteAbelianGroup) -> Result<u64> {
    if group.rank() != 1 {
        return Err(invalid!(
            "expected a cyclic group C_n, got factors {:?}",
            group.factors()
        ));
    }
    Ok(group.order())
}

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation(s: &[u64]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k
}

/// Iterates `F_{n,m}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<u64>>,
}

impl Compositions {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if n == 0 {
            return Err(invalid!("n must be at least 1"));
        }
        let n = usize::try_from(n).map_err(|_| invalid!("n = {n} does not fit in memory"))?;
        let mut first = vec![0; n];
        first[n - 1] = m;
        Ok(Self { next: Some(first) })
    }
}

impl Iterator for Compositions {
    type Item = CompositionProfile;

    fn next(&mut self) -> Option<CompositionProfile> {
        let current = self.next.take()?;
        let n = current.len();
        // Successor: bump the rightmost position that has mass to its right,
        // then put all the remaining mass in the last part.
        let mut succ = current.clone();
        let mut tail: u64 = succ[n - 1];
        let mut pos = n - 1;
        while pos > 0 {
            pos -= 1;
            if tail > 0 {
                succ[pos] += 1;
                for x in succ.iter_mut().skip(pos + 1) {
                    *x = 0;
                }
                succ[n - 1] = tail - 1;
                self.next = Some(succ);
                break;
            }
            tail += succ[pos];
        }
        let m = current.iter().sum();
        Some(CompositionProfile { parts: current, m })
    }
}

/// All of `F_{n,m}`, lexicographically ordered.
pub fn enumerate_compositions(n: u64, m: u64) -> Result<Vec<CompositionProfile>> {
    Ok(Compositions::new(n, m)?.collect())
}

/// Multiplicity profile of a tuple over `C_n`.
pub fn profile_of_tuple(group: &FiniteAbelianGroup, tuple: &[GroupElement]) -> Result<CompositionProfile> {
    let n = cyclic_order(group)?;
    let mut parts = vec![0u64; n as usize];
    for g in tuple {
        if !group.contains(g) {
            return Err(invalid!("({g}) is not an element of C_{n}"));
        }
        parts[g.coords()[0] as usize] += 1;
    }
    Ok(CompositionProfile {
        parts,
        m: tuple.len() as u64,
    })
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `D(n,m)`: divisors `d` of `n` with `n/d | m`, and for each its maximal
/// proper divisors inside the lattice, `D_0(n,m,d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLattice {
    n: u64,
    m: u64,
    divisors: Vec<u64>,
    maximal_below: BTreeMap<u64, Vec<u64>>,
}

impl DivisorLattice {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }

    pub fn maximal_below(&self, d: u64) -> &[u64] {
        self.maximal_below.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }
}

pub fn divisor_lattice(n: u64, m: u64) -> Result<DivisorLattice> {
    if n == 0 || m == 0 {
        return Err(invalid!("divisor lattice needs n, m >= 1 (got n={n}, m={m})"));
    }
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0 && m % (n / d) == 0).collect();
    let maximal_below = divisors
        .iter()
        .map(|&d| {
            let below: Vec<u64> = divisors.iter().copied().filter(|&e| e != d && d % e == 0).collect();
            let maximal = below
                .iter()
                .copied()
                .filter(|&e| !below.iter().any(|&f| f != e && f % e == 0))
                .collect();
            (d, maximal)
        })
        .collect();
    Ok(DivisorLattice {
        n,
        m,
        divisors,
        maximal_below,
    })
}

fn require_in_lattice(lattice: &DivisorLattice, d: u64) -> Result<()> {
    if lattice.contains(d) {
        Ok(())
    } else {
        Err(invalid!(
            "d = {d} is not in D({}, {}) = {:?}",
            lattice.n,
            lattice.m,
            lattice.divisors
        ))
    }
}

fn a_size_unchecked(n: u64, m: u64, d: u64) -> BigUint {
    let per_block = m * d / n;
    binomial(per_block + d - 1, d - 1)
}

/// `|A_d|`: compositions fixed by `τ^d`.
pub fn a_size(n: u64, m: u64, d: u64) -> Result<BigUint> {
    let lattice = divisor_lattice(n, m)?;
    require_in_lattice(&lattice, d)?;
    Ok(a_size_unchecked(n, m, d))
}

fn b_size_in(lattice: &DivisorLattice, d: u64) -> Result<BigUint> {
    let (n, m) = (lattice.n, lattice.m);
    let primes: Vec<u64> = prime_factors(d)
        .into_iter()
        .filter(|p| lattice.contains(d / p))
        .collect();
    let mut total = BigInt::zero();
    for mask in 0u32..(1u32 << primes.len()) {
        let mut index = d;
        for (bit, p) in primes.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                index /= p;
            }
        }
        // intersections of the A_{d/p} collapse to gcds, which stay in D
        if !lattice.contains(index) {
            return Err(internal!("inclusion-exclusion index {index} left D({n}, {m})"));
        }
        let term = BigInt::from(a_size_unchecked(n, m, index));
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let size = total
        .to_biguint()
        .ok_or_else(|| internal!("|B_{d}| came out negative for n={n}, m={m}"))?;
    if !(&size % d).is_zero() {
        return Err(internal!("|B_{d}| = {size} is not divisible by {d} for n={n}, m={m}"));
    }
    Ok(size)
}

/// `|B_d|`: compositions whose orbit has length exactly `d`.
pub fn b_size(n: u64, m: u64, d: u64) -> Result<BigUint> {
    let lattice = divisor_lattice(n, m)?;
    require_in_lattice(&lattice, d)?;
    b_size_in(&lattice, d)
}

/// A count of isomorphism types, split by orbit length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodCount {
    pub n: u64,
    pub m: u64,
    pub count: BigUint,
    /// `d ↦ |B_d| / d` for each `d ∈ D(n,m)`, ascending.
    pub by_orbit_length: Vec<(u64, BigUint)>,
}

/// Number of isomorphism types of good `C_n`-gradings on `M_m(k)`.
pub fn count_good_formula(n: u64, m: u64) -> Result<GoodCount> {
    let lattice = divisor_lattice(n, m)?;
    let mut by_orbit_length = Vec::with_capacity(lattice.divisors.len());
    let mut count = BigUint::zero();
    for &d in &lattice.divisors {
        let (orbits, rem) = b_size_in(&lattice, d)?.div_rem(&BigUint::from(d));
        if !rem.is_zero() {
            return Err(internal!("|B_{d}| / {d} is not exact"));
        }
        count += &orbits;
        by_orbit_length.push((d, orbits));
    }
    Ok(GoodCount {
        n,
        m,
        count,
        by_orbit_length,
    })
}

/// Orbit oracle output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCount {
    pub counts: GoodCount,
    /// Lexicographically least member of every orbit, in lexicographic order.
    pub representatives: Vec<CompositionProfile>,
}

/// Enumerates `F_{n,m}` and counts `⟨τ⟩`-orbits directly.
pub fn count_good_orbits(n: u64, m: u64, budget: u64) -> Result<OrbitCount> {
    if n == 0 {
        return Err(invalid!("n must be at least 1"));
    }
    let size = binomial(m + n - 1, n - 1);
    if size > BigUint::from(budget) {
        return Err(Error::ResourceLimit {
            what: "orbit enumeration of F_{n,m}",
            needed: size.to_string(),
            bound: budget,
        });
    }
    let mut by_length: BTreeMap<u64, u64> = BTreeMap::new();
    let mut representatives = Vec::new();
    for profile in Compositions::new(n, m)? {
        if profile.canonical() != profile {
            continue;
        }
        *by_length.entry(profile.orbit_length()).or_insert(0) += 1;
        representatives.push(profile);
    }
    let count = BigUint::from(representatives.len());
    Ok(OrbitCount {
        counts: GoodCount {
            n,
            m,
            count,
            by_orbit_length: by_length.into_iter().map(|(d, c)| (d, BigUint::from(c))).collect(),
        },
        representatives,
    })
}

/// Closed form of the count for `n = p^r`.
///
/// With `q` the exponent of `p` in `m` capped at `r`, the lattice is
/// `{p^i : r-q <= i <= r}`; the bottom term counts `A_{p^{r-q}}` whole and
/// each higher `p^i` contributes `(|A_{p^i}| - |A_{p^{i-1}}|) / p^i`.
pub fn count_prime_power(p: u64, r: u32, m: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(invalid!("{p} is not prime"));
    }
    if r == 0 || m == 0 {
        return Err(invalid!("need r >= 1 and m >= 1 (got r={r}, m={m})"));
    }
    p.checked_pow(r).ok_or_else(|| invalid!("{p}^{r} overflows"))?;
    let mut q = 0u32;
    let mut rest = m;
    while q < r && rest % p == 0 {
        rest /= p;
        q += 1;
    }
    let pw = |e: u32| p.pow(e);
    let a = |i: u32| binomial(m / pw(r - i) + pw(i) - 1, pw(i) - 1);

    let mut total = BigInt::from(a(r - q));
    let mut denominator_ok = (&total % BigInt::from(pw(r - q))).is_zero();
    total /= BigInt::from(pw(r - q));
    for i in (r - q + 1)..=r {
        let diff = BigInt::from(a(i)) - BigInt::from(a(i - 1));
        let (quot, rem) = diff.div_rem(&BigInt::from(pw(i)));
        denominator_ok &= rem.is_zero();
        total += quot;
    }
    if !denominator_ok {
        return Err(internal!(
            "prime-power count for p={p}, r={r}, m={m} has a non-integral term"
        ));
    }
    total
        .to_biguint()
        .ok_or_else(|| internal!("prime-power count for p={p}, r={r}, m={m} is negative"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(v: &[CompositionProfile]) -> Vec<Vec<u64>> {
        v.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn compositions_small() {
        assert_eq!(
            parts(&enumerate_compositions(2, 2).unwrap()),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(parts(&enumerate_compositions(1, 5).unwrap()), vec![vec![5]]);
        assert_eq!(enumerate_compositions(4, 2).unwrap().len(), 10);
        assert_eq!(parts(&enumerate_compositions(3, 0).unwrap()), vec![vec![0, 0, 0]]);
        assert!(enumerate_compositions(0, 2).is_err());
    }

    #[test]
    fn compositions_are_sorted_and_complete() {
        let all = enumerate_compositions(4, 5).unwrap();
        assert_eq!(BigUint::from(all.len()), binomial(8, 3));
        assert!(all.windows(2).all(|w| w[0].parts() < w[1].parts()));
        assert!(all.iter().all(|p| p.m() == 5));
    }

    #[test]
    fn profiles_of_tuples() {
        let c2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let e = c2.identity();
        let s = c2.generator(0);
        assert_eq!(profile_of_tuple(&c2, &[e.clone(), s]).unwrap().parts(), &[1, 1]);
        assert_eq!(profile_of_tuple(&c2, &[e.clone(), e]).unwrap().parts(), &[2, 0]);
        let c4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let c = c4.generator(0);
        let c3 = c4.pow(&c, 3);
        assert_eq!(
            profile_of_tuple(&c4, &[c.clone(), c, c3]).unwrap().parts(),
            &[0, 2, 0, 1]
        );
        let klein = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        assert!(profile_of_tuple(&klein, &[klein.identity()]).is_err());
    }

    #[test]
    fn lattices() {
        let l = divisor_lattice(4, 2).unwrap();
        assert_eq!(l.divisors(), &[2, 4]);
        assert_eq!(l.maximal_below(4), &[2]);
        assert!(l.maximal_below(2).is_empty());

        let l = divisor_lattice(2, 3).unwrap();
        assert_eq!(l.divisors(), &[2]);
        assert!(l.maximal_below(2).is_empty());

        assert_eq!(divisor_lattice(5, 10).unwrap().divisors(), &[1, 5]);
        assert_eq!(divisor_lattice(12, 6).unwrap().maximal_below(12), &[4, 6]);
    }

    #[test]
    fn a_and_b_sizes() {
        assert_eq!(a_size(4, 2, 2).unwrap(), BigUint::from(2u8));
        assert_eq!(a_size(4, 2, 4).unwrap(), BigUint::from(10u8));
        assert_eq!(a_size(2, 2, 1).unwrap(), BigUint::from(1u8));
        assert!(a_size(4, 2, 1).is_err());

        assert_eq!(b_size(4, 2, 4).unwrap(), BigUint::from(8u8));
        assert_eq!(b_size(4, 2, 2).unwrap(), BigUint::from(2u8));
        assert_eq!(b_size(2, 3, 2).unwrap(), BigUint::from(4u8));
        assert_eq!(b_size(2, 2, 2).unwrap(), BigUint::from(2u8));
        assert_eq!(b_size(2, 2, 1).unwrap(), BigUint::from(1u8));
        assert!(b_size(2, 3, 1).is_err());
    }

    #[test]
    fn formula_counts() {
        let count = |n, m| count_good_formula(n, m).unwrap().count;
        assert_eq!(count(2, 2), BigUint::from(2u8));
        assert_eq!(count(4, 2), BigUint::from(3u8));
        assert_eq!(count(2, 3), BigUint::from(2u8));
        assert_eq!(count(1, 7), BigUint::from(1u8));
    }

    #[test]
    fn oracle_counts() {
        let r = count_good_orbits(2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.counts.count, BigUint::from(2u8));
        assert_eq!(parts(&r.representatives), vec![vec![0, 2], vec![1, 1]]);
        assert_eq!(
            count_good_orbits(4, 2, DEFAULT_BUDGET).unwrap().counts.count,
            BigUint::from(3u8)
        );
        assert_eq!(
            count_good_orbits(1, 9, DEFAULT_BUDGET).unwrap().counts.count,
            BigUint::from(1u8)
        );
    }

    #[test]
    fn oracle_budget() {
        let err = count_good_orbits(12, 7, 100).unwrap_err();
        match err {
            Error::ResourceLimit { needed, bound, .. } => {
                assert_eq!(needed, "31824");
                assert_eq!(bound, 100);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prime_power_closed_form() {
        assert_eq!(count_prime_power(2, 1, 2).unwrap(), BigUint::from(2u8));
        assert_eq!(count_prime_power(3, 1, 3).unwrap(), BigUint::from(4u8));
        assert_eq!(count_prime_power(2, 2, 2).unwrap(), BigUint::from(3u8));
        assert!(count_prime_power(4, 1, 2).is_err());
    }

    #[test]
    fn booth_least_rotation() {
        assert_eq!(least_rotation(&[2, 0]), 1);
        assert_eq!(least_rotation(&[1, 1]), 0);
        assert_eq!(least_rotation(&[1, 0, 1, 0, 0]), 3);
        assert_eq!(least_rotation(&[3, 1, 2, 1, 2]), 1);
    }

    #[test]
    fn rotation_and_period() {
        let p = CompositionProfile::new(vec![1, 0, 1, 0]).unwrap();
        assert_eq!(p.orbit_length(), 2);
        assert_eq!(p.rotate(1).parts(), &[0, 1, 0, 1]);
        assert_eq!(p.canonical().parts(), &[0, 1, 0, 1]);
        assert_eq!(CompositionProfile::new(vec![2, 0, 0]).unwrap().orbit_length(), 3);
    }
}
