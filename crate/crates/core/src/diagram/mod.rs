//! Link diagrams: braid words, planar-diagram crossing lists, rational tangles
//! and tangle-replacement moves.
//!
//! A diagram is stored as a list of crossings `(over, under_in, under_out)`
//! over arc ids `1..=arc_count`. Crossing signs are not stored: the core
//! group relation at a crossing does not depend on them. Components that
//! carry no crossing at all are kept as a count of free loops.

pub mod braid;
mod moves;
pub mod pd;
pub mod tangle;

pub use braid::{braid_closure, parse_braid, parse_braid_with_strands, BraidWord};
pub use moves::apply_pq_move;
pub use pd::{parse_pd, to_pd_string};
pub use tangle::{conway_slope, pq_tangle_from_slope, tangles_equivalent, RationalTangleSpec, SlopeOf, TangleDiagram};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One crossing: the over-arc and the two under-arcs meeting at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

impl Crossing {
    pub fn new(over: usize, under_in: usize, under_out: usize) -> Self {
        Crossing { over, under_in, under_out }
    }
}

/// How the second strand of a move site runs relative to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SiteOrientation {
    /// Both strands enter on the same side of the site.
    Parallel,
    /// The second strand enters on the side where the first leaves.
    Antiparallel,
}

/// Two strand segments bounding a crossing-free disk, where an identity
/// tangle can be replaced.
///
/// Strand ids `1..=arc_count` name arcs; ids `arc_count + 1 ..` name the free
/// loops. The site sits at the end of each arc (just before the undercrossing
/// that terminates it), so every overpass of the arc stays on the near side.
/// Planarity of the site is the caller's responsibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveSite {
    pub arcs: [usize; 2],
    pub orientation: SiteOrientation,
}

impl MoveSite {
    pub fn new(a: usize, b: usize, orientation: SiteOrientation) -> Self {
        MoveSite { arcs: [a, b], orientation }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    arc_count: usize,
    crossings: Vec<Crossing>,
    free_components: usize,
    marked_sites: Vec<MoveSite>,
}

impl LinkDiagram {
    /// Builds a diagram, checking arc ranges and under-arc incidence.
    pub fn new(
        arc_count: usize,
        crossings: Vec<Crossing>,
        free_components: usize,
        marked_sites: Vec<MoveSite>,
    ) -> Result<Self> {
        let d = LinkDiagram { arc_count, crossings, free_components, marked_sites };
        d.validate()?;
        Ok(d)
    }

    /// Builds a diagram from crossings whose under-arcs are an unordered pair,
    /// choosing `under_in`/`under_out` by walking each component.
    pub fn from_unoriented(
        arc_count: usize,
        crossings: &[(usize, usize, usize)],
        free_components: usize,
        marked_sites: Vec<MoveSite>,
    ) -> Result<Self> {
        let oriented = orient_under_pairs(arc_count, crossings)?;
        LinkDiagram::new(arc_count, oriented, free_components, marked_sites)
    }

    /// Crossingless diagram of the `k`-component unlink.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram { arc_count: 0, crossings: Vec::new(), free_components: k, marked_sites: Vec::new() }
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_components(&self) -> usize {
        self.free_components
    }

    pub fn marked_sites(&self) -> &[MoveSite] {
        &self.marked_sites
    }

    pub fn with_marked_sites(mut self, sites: Vec<MoveSite>) -> Result<Self> {
        self.marked_sites = sites;
        self.validate()?;
        Ok(self)
    }

    /// Number of strand ids a move site may refer to (arcs plus free loops).
    pub fn strand_count(&self) -> usize {
        self.arc_count + self.free_components
    }

    /// Number of link components.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.arc_count + 1);
        for c in &self.crossings {
            uf.union(c.under_in, c.under_out);
        }
        let arcs = (1..=self.arc_count).filter(|&a| uf.find(a) == a).count();
        arcs + self.free_components
    }

    /// Checks that a move site refers to two distinct existing strands.
    pub fn check_site(&self, site: &MoveSite) -> Result<()> {
        let [a, b] = site.arcs;
        let n = self.strand_count();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidSite(format!("strand ids {a}, {b} not in 1..={n}")));
        }
        if a == b {
            return Err(Error::InvalidSite(format!("site uses strand {a} twice")));
        }
        Ok(())
    }

    /// All sites a random move may use: every pair of distinct strands, in
    /// both orientations.
    pub fn candidate_sites(&self) -> Vec<MoveSite> {
        let n = self.strand_count();
        let mut out = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                out.push(MoveSite::new(a, b, SiteOrientation::Parallel));
                out.push(MoveSite::new(a, b, SiteOrientation::Antiparallel));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.arc_count + self.free_components == 0 {
            return Err(Error::InvalidDiagram("diagram has no components".into()));
        }
        let n = self.arc_count;
        let mut ins = vec![0usize; n + 1];
        let mut outs = vec![0usize; n + 1];
        let mut seen = vec![false; n + 1];
        for (idx, c) in self.crossings.iter().enumerate() {
            for a in [c.over, c.under_in, c.under_out] {
                if a == 0 || a > n {
                    return Err(Error::InvalidDiagram(format!(
                        "crossing {} refers to arc {a} outside 1..={n}",
                        idx + 1
                    )));
                }
                seen[a] = true;
            }
            ins[c.under_in] += 1;
            outs[c.under_out] += 1;
        }
        for a in 1..=n {
            if !seen[a] {
                return Err(Error::InvalidDiagram(format!("arc {a} meets no crossing; record it as a free component")));
            }
            if ins[a] > 1 || outs[a] > 1 {
                return Err(Error::InvalidDiagram(format!("arc {a} ends at more than one undercrossing")));
            }
            if ins[a] != outs[a] {
                return Err(Error::InvalidDiagram(format!("arc {a} has a dangling end")));
            }
        }
        for s in &self.marked_sites {
            self.check_site(s)?;
        }
        Ok(())
    }
}

/// Orients under-arc pairs so each arc is `under_in` at one crossing and
/// `under_out` at another, walking components in order of their smallest arc.
pub(crate) fn orient_under_pairs(arc_count: usize, crossings: &[(usize, usize, usize)]) -> Result<Vec<Crossing>> {
    // incidences[a] = list of (crossing, slot) where arc a is an under-arc
    let mut incidences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); arc_count + 1];
    for (i, &(o, u1, u2)) in crossings.iter().enumerate() {
        for a in [o, u1, u2] {
            if a == 0 || a > arc_count {
                return Err(Error::InvalidDiagram(format!("arc {a} outside 1..={arc_count}")));
            }
        }
        incidences[u1].push((i, 0));
        incidences[u2].push((i, 1));
    }
    for (a, inc) in incidences.iter().enumerate().skip(1) {
        if !(inc.is_empty() || inc.len() == 2) {
            return Err(Error::InvalidDiagram(format!("arc {a} is an under-arc {} times", inc.len())));
        }
    }
    let mut oriented: Vec<Option<Crossing>> = vec![None; crossings.len()];
    let mut used = vec![[false; 2]; crossings.len()];
    for start in 1..=arc_count {
        if incidences[start].is_empty() || incidences[start].iter().any(|&(c, s)| used[c][s]) {
            continue;
        }
        // enter at the first incidence of `start` as under_in
        let (mut c, mut s) = incidences[start][0];
        loop {
            if used[c][s] {
                break;
            }
            let (o, u1, u2) = crossings[c];
            let (arc_in, arc_out) = if s == 0 { (u1, u2) } else { (u2, u1) };
            used[c][0] = true;
            used[c][1] = true;
            oriented[c] = Some(Crossing::new(o, arc_in, arc_out));
            let out_slot = 1 - s;
            match incidences[arc_out].iter().find(|&&(c2, s2)| !(c2 == c && s2 == out_slot)) {
                Some(&(c2, s2)) => {
                    c = c2;
                    s = s2;
                }
                None => break,
            }
        }
    }
    Ok(oriented.into_iter().map(|c| c.expect("every crossing lies on a component")).collect())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes of `a` and `b`; the smaller root wins.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hopf() -> LinkDiagram {
        LinkDiagram::new(2, vec![Crossing::new(1, 2, 2), Crossing::new(2, 1, 1)], 0, vec![]).unwrap()
    }

    pub(crate) fn trefoil() -> LinkDiagram {
        LinkDiagram::new(3, vec![Crossing::new(1, 2, 3), Crossing::new(2, 3, 1), Crossing::new(3, 1, 2)], 0, vec![])
            .unwrap()
    }

    #[test]
    fn component_counts_of_small_diagrams() {
        assert_eq!(hopf().component_count(), 2);
        assert_eq!(trefoil().component_count(), 1);
        assert_eq!(LinkDiagram::unlink(3).component_count(), 3);
    }

    #[test]
    fn rejects_bad_incidence() {
        let r = LinkDiagram::new(2, vec![Crossing::new(1, 2, 2), Crossing::new(2, 2, 1)], 0, vec![]);
        assert!(r.is_err());
        let r = LinkDiagram::new(3, vec![Crossing::new(1, 2, 3)], 0, vec![]);
        assert!(r.is_err());
        assert!(LinkDiagram::new(0, vec![], 0, vec![]).is_err());
    }

    #[test]
    fn orientation_walk_recovers_trefoil() {
        let flipped = [(1, 3, 2), (2, 3, 1), (3, 2, 1)];
        let d = LinkDiagram::from_unoriented(3, &flipped, 0, vec![]).unwrap();
        assert_eq!(d.component_count(), 1);
        for a in 1..=3 {
            assert_eq!(d.crossings().iter().filter(|c| c.under_in == a).count(), 1);
            assert_eq!(d.crossings().iter().filter(|c| c.under_out == a).count(), 1);
        }
    }

    #[test]
    fn kink_is_a_single_arc_loop() {
        let d = LinkDiagram::from_unoriented(1, &[(1, 1, 1)], 0, vec![]).unwrap();
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn site_checks() {
        let d = hopf();
        assert!(d.check_site(&MoveSite::new(1, 2, SiteOrientation::Parallel)).is_ok());
        assert!(d.check_site(&MoveSite::new(1, 1, SiteOrientation::Parallel)).is_err());
        assert!(d.check_site(&MoveSite::new(1, 3, SiteOrientation::Parallel)).is_err());
        assert_eq!(LinkDiagram::unlink(2).candidate_sites().len(), 2);
    }
}
