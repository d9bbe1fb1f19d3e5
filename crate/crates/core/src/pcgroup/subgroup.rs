use std::collections::HashSet;

use super::{PcElement, PcPresentation};
use crate::error::{Error, Result};

/// Subgroup of a pc group, stored as an induced pc sequence: at most one
/// element per leading index, each with leading digit 1. Every element of
/// the subgroup is uniquely `b_1^e_1 ... b_k^e_k` with `0 <= e_i < p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupEnum {
    base: Vec<Option<PcElement>>,
}

impl SubgroupEnum {
    pub fn trivial(g: &PcPresentation) -> Self {
        SubgroupEnum { base: vec![None; g.len()] }
    }

    /// The whole group.
    pub fn full(g: &PcPresentation) -> Self {
        SubgroupEnum { base: (0..g.len()).map(|i| Some(g.generator(i))).collect() }
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> usize {
        self.base.iter().filter(|b| b.is_some()).count()
    }

    pub fn order(&self, g: &PcPresentation) -> u128 {
        (g.prime() as u128).pow(self.log_order() as u32)
    }

    pub fn pcgs(&self) -> Vec<PcElement> {
        self.base.iter().flatten().copied().collect()
    }

    /// Divides `x` by base elements from the left end; the remainder is the
    /// identity iff `x` lies in the subgroup.
    pub fn sift(&self, g: &PcPresentation, mut x: PcElement) -> PcElement {
        while let Some(i) = g.leading(x) {
            match self.base[i] {
                Some(b) => {
                    let e = g.digit(x, i) as i64;
                    x = g.multiply(x, g.power(b, -e));
                }
                None => return x,
            }
        }
        x
    }

    pub fn contains(&self, g: &PcPresentation, x: PcElement) -> bool {
        self.sift(g, x).is_identity()
    }

    /// Adds `x` and closes under products; with `normal`, also under
    /// conjugation by every pc generator.
    fn absorb(&mut self, g: &PcPresentation, x: PcElement, normal: bool) {
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            let r = self.sift(g, y);
            let Some(i) = g.leading(r) else { continue };
            // scale so the leading digit is 1
            let d = g.digit(r, i) as u64;
            let inv = (1..g.prime() as u64).find(|k| k * d % g.prime() as u64 == 1).unwrap();
            let b = g.power(r, inv as i64);
            queue.push(g.power(b, g.prime() as i64));
            for other in self.base.iter().flatten() {
                queue.push(g.commutator(b, *other));
            }
            if normal {
                for k in 0..g.len() {
                    queue.push(g.commutator(b, g.generator(k)));
                }
            }
            self.base[i] = Some(b);
        }
    }

    pub fn generated_by(g: &PcPresentation, gens: &[PcElement]) -> Self {
        let mut s = SubgroupEnum::trivial(g);
        for &x in gens {
            s.absorb(g, x, false);
        }
        s
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(g: &PcPresentation, gens: &[PcElement]) -> Self {
        let mut s = SubgroupEnum::trivial(g);
        for &x in gens {
            s.absorb(g, x, true);
        }
        debug_assert!(s.verify(g, true));
        s
    }

    /// Checks that the stored sequence is closed: powers and commutators of
    /// base elements (and, with `normal`, their conjugates by the pc
    /// generators) all sift to the identity.
    pub fn verify(&self, g: &PcPresentation, normal: bool) -> bool {
        let pcgs = self.pcgs();
        for (a, &x) in pcgs.iter().enumerate() {
            if !self.contains(g, g.power(x, g.prime() as i64)) {
                return false;
            }
            if pcgs[..a].iter().any(|&y| !self.contains(g, g.commutator(x, y))) {
                return false;
            }
            if normal && (0..g.len()).any(|k| !self.contains(g, g.conjugate(x, g.generator(k)))) {
                return false;
            }
        }
        true
    }

    /// All elements, refusing to materialize more than `budget` of them.
    pub fn elements(&self, g: &PcPresentation, budget: u64) -> Result<HashSet<PcElement>> {
        let order = self.order(g);
        if order > budget as u128 {
            return Err(Error::EngineTooSmall(format!(
                "subgroup of order {order} exceeds the element budget {budget}"
            )));
        }
        let mut out: Vec<PcElement> = vec![PcElement::IDENTITY];
        // b_1^e_1 ... b_k^e_k, building from the last factor
        for b in self.pcgs().into_iter().rev() {
            let mut next = Vec::with_capacity(out.len() * g.prime() as usize);
            let mut pw = PcElement::IDENTITY;
            for _ in 0..g.prime() {
                next.extend(out.iter().map(|&t| g.multiply(pw, t)));
                pw = g.multiply(pw, b);
            }
            out = next;
        }
        Ok(out.into_iter().collect())
    }
}

/// Worklist closure over an explicit element set: the smallest set
/// containing the identity, closed under right multiplication by `gens` and
/// conjugation by the pc generators. Used to cross-check the sifting
/// closure on small groups.
pub fn normal_closure_by_enumeration(
    g: &PcPresentation,
    gens: &[PcElement],
    budget: u64,
) -> Result<HashSet<PcElement>> {
    let mut seen: HashSet<PcElement> = HashSet::from([PcElement::IDENTITY]);
    let mut work = vec![PcElement::IDENTITY];
    let conj: Vec<(PcElement, PcElement)> = (0..g.len()).map(|k| (g.generator(k), g.inverse(g.generator(k)))).collect();
    while let Some(x) = work.pop() {
        let products = gens.iter().map(|&s| g.multiply(x, s));
        let conjugates = conj.iter().map(|&(c, ci)| g.multiply(ci, g.multiply(x, c)));
        for y in products.chain(conjugates).collect::<Vec<_>>() {
            if seen.insert(y) {
                if seen.len() as u64 > budget {
                    return Err(Error::EngineTooSmall(format!("closure exceeds the element budget {budget}")));
                }
                work.push(y);
            }
        }
    }
    Ok(seen)
}
