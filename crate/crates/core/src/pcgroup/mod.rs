//! Power-commutator presentations of finite p-groups, collection, and the
//! vendored free Burnside groups.

pub mod coset;
mod engine;
mod parse;
mod subgroup;

use std::fmt;

pub use engine::{
    burnside_engine, burnside_order, eval_word, load_pcp, random_element, BurnsideEngine, DATA_DIR_ENV, PCP_NAMES,
};
pub use parse::{parse_pcp, to_pcp_string};
pub use subgroup::{normal_closure_by_enumeration, SubgroupEnum};

use crate::error::{Error, Result};

/// Step budget for one collection during consistency checking.
pub const COLLECTION_STEP_BUDGET: u64 = 1 << 24;

/// Element of a pc group: base-p digit vector packed into a `u64`, digit
/// `i` (0-based) in bits `[i * b, (i + 1) * b)` where `b` is the
/// presentation's digit width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PcElement(pub u64);

impl PcElement {
    pub const IDENTITY: PcElement = PcElement(0);

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

/// Consistent power-commutator presentation over a prime `p` on pc
/// generators `g_1..g_m`:
/// `g_i^p = power_rhs[i]` and `[g_i, g_j] = comm_rhs[i][j]` for `j < i`,
/// where `[a, b] = a^-1 b^-1 a b`.
#[derive(Clone, PartialEq, Eq)]
pub struct PcPresentation {
    prime: u32,
    weights: Vec<usize>,
    power: Vec<Vec<u8>>,
    comm: Vec<Vec<Vec<u8>>>,
    bits: u32,
    power_sparse: Vec<Vec<(usize, u8)>>,
    comm_sparse: Vec<Vec<Vec<(usize, u8)>>>,
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcPresentation")
            .field("prime", &self.prime)
            .field("weights", &self.weights)
            .finish_non_exhaustive()
    }
}

fn sparse(v: &[u8]) -> Vec<(usize, u8)> {
    v.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect()
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PcPresentation {
    /// Builds a presentation and checks its shape: digit ranges, weights,
    /// and that right-hand sides only involve later generators of
    /// sufficient weight. Consistency is checked separately.
    pub fn new(prime: u32, weights: Vec<usize>, power: Vec<Vec<u8>>, comm: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        let bad = |m: String| Error::Inconsistent(m);
        if !is_prime(prime) {
            return Err(bad(format!("{prime} is not prime")));
        }
        let m = weights.len();
        let bits = 32 - (prime - 1).leading_zeros();
        if m as u32 * bits > 64 {
            return Err(Error::EngineTooSmall(format!("{m} generators do not fit a packed element")));
        }
        if weights.contains(&0) || weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad("weights must be positive and nondecreasing".into()));
        }
        if power.len() != m || comm.len() != m {
            return Err(bad("relation table size does not match generator count".into()));
        }
        let check = |v: &[u8], above: usize, min_weight: usize, what: &str| -> Result<()> {
            if v.len() != m {
                return Err(bad(format!("{what}: vector of length {} for {m} generators", v.len())));
            }
            for (l, &e) in v.iter().enumerate() {
                if e as u32 >= prime {
                    return Err(bad(format!("{what}: digit {e} out of range")));
                }
                if e != 0 && (l <= above || weights[l] < min_weight) {
                    return Err(bad(format!("{what}: involves generator {} of weight {}", l + 1, weights[l])));
                }
            }
            Ok(())
        };
        for i in 0..m {
            check(&power[i], i, weights[i], &format!("power of g{}", i + 1))?;
            if comm[i].len() != i {
                return Err(bad(format!("commutator row {} has {} entries", i + 1, comm[i].len())));
            }
            for j in 0..i {
                check(&comm[i][j], i, weights[i] + weights[j], &format!("[g{}, g{}]", i + 1, j + 1))?;
            }
        }
        let power_sparse = power.iter().map(|v| sparse(v)).collect();
        let comm_sparse = comm.iter().map(|row| row.iter().map(|v| sparse(v)).collect()).collect();
        Ok(PcPresentation { prime, weights, power, comm, bits, power_sparse, comm_sparse })
    }

    /// Elementary abelian group of rank `m`.
    pub fn elementary_abelian(prime: u32, m: usize) -> Result<Self> {
        let power = vec![vec![0; m]; m];
        let comm = (0..m).map(|i| vec![vec![0; m]; i]).collect();
        PcPresentation::new(prime, vec![1; m], power, comm)
    }

    /// Cyclic group of order `prime^k` on pc generators `g, g^p, g^(p^2), ...`.
    pub fn cyclic(prime: u32, k: usize) -> Result<Self> {
        let power = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                if i + 1 < k {
                    v[i + 1] = 1;
                }
                v
            })
            .collect();
        let comm = (0..k).map(|i| vec![vec![0; k]; i]).collect();
        PcPresentation::new(prime, vec![1; k], power, comm)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Number of pc generators `m`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn power_rhs(&self, i: usize) -> &[u8] {
        &self.power[i]
    }

    /// Right side of `[g_i, g_j]`, `j < i` (0-based).
    pub fn comm_rhs(&self, i: usize, j: usize) -> &[u8] {
        &self.comm[i][j]
    }

    /// `p^m`.
    pub fn order(&self) -> u128 {
        (self.prime as u128).pow(self.len() as u32)
    }

    pub fn digit(&self, e: PcElement, i: usize) -> u8 {
        ((e.0 >> (i as u32 * self.bits)) & ((1 << self.bits) - 1)) as u8
    }

    pub fn digits(&self, e: PcElement) -> Vec<u8> {
        (0..self.len()).map(|i| self.digit(e, i)).collect()
    }

    pub fn from_digits(&self, v: &[u8]) -> PcElement {
        debug_assert_eq!(v.len(), self.len());
        let mut packed = 0u64;
        for (i, &d) in v.iter().enumerate() {
            packed |= ((d as u32 % self.prime) as u64) << (i as u32 * self.bits);
        }
        PcElement(packed)
    }

    /// The pc generator `g_{i+1}` (0-based index `i`).
    pub fn generator(&self, i: usize) -> PcElement {
        let mut v = vec![0; self.len()];
        v[i] = 1;
        self.from_digits(&v)
    }

    /// Index of the first nonzero digit.
    pub fn leading(&self, e: PcElement) -> Option<usize> {
        (!e.is_identity()).then(|| (e.0.trailing_zeros() / self.bits) as usize)
    }

    /// Multiplies the normal word in `v` on the right by `g_k`.
    ///
    /// With `v = h * t` where `t` collects the digits above `k`, the product
    /// is `h g_k * t^(g_k)`, and `g_j^(g_k) = g_j [g_j, g_k]`.
    fn mul_gen(&self, v: &mut [u8], k: usize, budget: &mut u64) -> Result<()> {
        if *budget == 0 {
            return Err(Error::Inconsistent("collection step budget exhausted".into()));
        }
        *budget -= 1;
        let mut tail = [(0u8, 0u8); 64];
        let mut len = 0;
        for (j, d) in v.iter_mut().enumerate().skip(k + 1) {
            if *d != 0 {
                tail[len] = (j as u8, *d);
                len += 1;
                *d = 0;
            }
        }
        v[k] += 1;
        if v[k] as u32 == self.prime {
            v[k] = 0;
            for &(l, e) in &self.power_sparse[k] {
                for _ in 0..e {
                    self.mul_gen(v, l, budget)?;
                }
            }
        }
        for &(j, e) in &tail[..len] {
            let j = j as usize;
            for _ in 0..e {
                self.mul_gen(v, j, budget)?;
                for &(l, f) in &self.comm_sparse[j][k] {
                    for _ in 0..f {
                        self.mul_gen(v, l, budget)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_digits(&self, v: &mut [u8], b: PcElement, budget: &mut u64) -> Result<()> {
        for i in 0..self.len() {
            for _ in 0..self.digit(b, i) {
                self.mul_gen(v, i, budget)?;
            }
        }
        Ok(())
    }

    /// Product with a collection step budget; fails on runaway collection,
    /// which only an inconsistent presentation can cause.
    pub fn try_multiply(&self, a: PcElement, b: PcElement, budget: u64) -> Result<PcElement> {
        let mut v = self.digits(a);
        let mut budget = budget;
        self.mul_digits(&mut v, b, &mut budget)?;
        Ok(self.from_digits(&v))
    }

    pub fn multiply(&self, a: PcElement, b: PcElement) -> PcElement {
        if b.is_identity() {
            return a;
        }
        if a.is_identity() {
            return b;
        }
        self.try_multiply(a, b, u64::MAX).expect("unbounded collection")
    }

    /// Product of pc generators (0-based indices) collected left to right.
    pub fn collect_letters(&self, letters: &[usize], budget: u64) -> Result<PcElement> {
        let mut v = vec![0; self.len()];
        let mut budget = budget;
        for &k in letters {
            self.mul_gen(&mut v, k, &mut budget)?;
        }
        Ok(self.from_digits(&v))
    }

    pub fn inverse(&self, a: PcElement) -> PcElement {
        // choose x digit by digit so that a * x = 1
        let mut r = self.digits(a);
        let mut x = vec![0; self.len()];
        let mut budget = u64::MAX;
        for i in 0..self.len() {
            if r[i] != 0 {
                let e = (self.prime - r[i] as u32) as u8;
                x[i] = e;
                for _ in 0..e {
                    self.mul_gen(&mut r, i, &mut budget).expect("unbounded collection");
                }
            }
        }
        debug_assert!(r.iter().all(|&d| d == 0));
        self.from_digits(&x)
    }

    /// `a^k` by square and multiply; negative `k` inverts.
    pub fn power(&self, a: PcElement, k: i64) -> PcElement {
        let mut base = if k < 0 { self.inverse(a) } else { a };
        let mut k = k.unsigned_abs();
        let mut acc = PcElement::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: PcElement, b: PcElement) -> PcElement {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(self.inverse(ba), ab)
    }

    /// `[[..[a1, a2], a3]..., ak]`.
    pub fn left_normed(&self, elems: &[PcElement]) -> Result<PcElement> {
        if elems.len() < 2 {
            return Err(Error::CommutatorTooShort);
        }
        Ok(elems[1..].iter().fold(elems[0], |acc, &b| self.commutator(acc, b)))
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: PcElement, b: PcElement) -> PcElement {
        self.multiply(self.inverse(b), self.multiply(a, b))
    }

    /// Every element of the group, in increasing packed order of digit
    /// vectors. Intended for small groups.
    pub fn elements(&self) -> impl Iterator<Item = PcElement> + '_ {
        let total = self.order() as u64;
        (0..total).map(move |mut n| {
            let mut v = vec![0u8; self.len()];
            for d in v.iter_mut() {
                *d = (n % self.prime as u64) as u8;
                n /= self.prime as u64;
            }
            self.from_digits(&v)
        })
    }

    /// Overlap tests that certify the presentation defines a group of order
    /// `p^m`: `(g_k g_j) g_i = g_k (g_j g_i)` for `k > j > i`, and the
    /// overlaps of power relations with each other and with commutators.
    pub fn check_consistency(&self) -> Result<()> {
        let m = self.len();
        let p = self.prime as usize;
        let b = COLLECTION_STEP_BUDGET;
        let g = |i: usize| self.generator(i);
        let pw = |i: usize| self.from_digits(&self.power[i]);
        let fail = |what: String| Err(Error::Inconsistent(what));
        for k in 0..m {
            for j in 0..k {
                for i in 0..j {
                    let left = self.collect_letters(&[k, j, i], b)?;
                    let right = self.try_multiply(g(k), self.collect_letters(&[j, i], b)?, b)?;
                    if left != right {
                        return fail(format!("g{} g{} g{}", k + 1, j + 1, i + 1));
                    }
                }
            }
        }
        for j in 0..m {
            for i in 0..j {
                // (g_j^(p-1) g_j) g_i = g_j^(p-1) (g_j g_i)
                let left = self.try_multiply(pw(j), g(i), b)?;
                let right =
                    self.try_multiply(self.collect_letters(&vec![j; p - 1], b)?, self.collect_letters(&[j, i], b)?, b)?;
                if left != right {
                    return fail(format!("g{}^p g{}", j + 1, i + 1));
                }
                // (g_j g_i^(p-1)) g_i = g_j (g_i^(p-1) g_i)
                let mut letters = vec![j];
                letters.extend(std::iter::repeat_n(i, p));
                let left = self.collect_letters(&letters, b)?;
                let right = self.try_multiply(g(j), pw(i), b)?;
                if left != right {
                    return fail(format!("g{} g{}^p", j + 1, i + 1));
                }
            }
        }
        for i in 0..m {
            let left = self.try_multiply(pw(i), g(i), b)?;
            let right = self.try_multiply(g(i), pw(i), b)?;
            if left != right {
                return fail(format!("g{}^(p+1)", i + 1));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_elementary_abelian() {
        let z4 = PcPresentation::cyclic(2, 2).unwrap();
        z4.check_consistency().unwrap();
        let g = z4.generator(0);
        assert_eq!(z4.power(g, 2), z4.generator(1));
        assert!(z4.power(g, 4).is_identity());
        assert!(!z4.power(g, 3).is_identity());
        assert_eq!(z4.inverse(g), z4.power(g, 3));
        let e = PcPresentation::elementary_abelian(3, 3).unwrap();
        e.check_consistency().unwrap();
        assert_eq!(e.elements().count(), 27);
    }

    #[test]
    fn detects_inconsistent_presentation() {
        // g1^2 = g2, g2^2 = 1 but [g2, g1] = g3 with g3 central of order 2:
        // g1 commutes with g1^2 = g2, so [g2, g1] must be trivial
        let power = vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]];
        let comm = vec![vec![], vec![vec![0, 0, 1]], vec![vec![0, 0, 0], vec![0, 0, 0]]];
        let pc = PcPresentation::new(2, vec![1, 1, 2], power, comm).unwrap();
        assert!(pc.check_consistency().is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(PcPresentation::elementary_abelian(4, 2).is_err());
        assert!(PcPresentation::new(2, vec![2, 1], vec![vec![0, 0]; 2], vec![vec![], vec![vec![0, 0]]]).is_err());
        // power of g2 may not involve g1
        assert!(
            PcPresentation::new(2, vec![1, 1], vec![vec![0, 0], vec![1, 0]], vec![vec![], vec![vec![0, 0]]]).is_err()
        );
        assert!(PcPresentation::elementary_abelian(2, 65).is_err());
    }

    #[test]
    fn packing() {
        let pc = PcPresentation::elementary_abelian(3, 5).unwrap();
        let e = pc.from_digits(&[2, 0, 1, 2, 1]);
        assert_eq!(pc.digits(e), vec![2, 0, 1, 2, 1]);
        assert_eq!(pc.leading(e), Some(0));
        assert_eq!(pc.leading(pc.from_digits(&[0, 0, 0, 1, 0])), Some(3));
        assert_eq!(pc.leading(PcElement::IDENTITY), None);
    }

    #[test]
    fn left_normed_needs_two_entries() {
        let pc = PcPresentation::cyclic(3, 1).unwrap();
        assert_eq!(pc.left_normed(&[pc.generator(0)]), Err(Error::CommutatorTooShort));
    }
}
