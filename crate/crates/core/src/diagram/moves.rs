use super::tangle::{pq_tangle_from_slope, TangleDiagram};
use super::{LinkDiagram, MoveSite, SiteOrientation, UnionFind};
use crate::error::Result;

/// Replaces the identity tangle at `site` by the rational tangle of slope
/// `p/q`.
///
/// The first site strand runs NW to NE and the second SW to SE (reversed for
/// an antiparallel site). Each strand is cut just before the undercrossing
/// that ends it; a loop with no undercrossing is cut anywhere. Arcs of the
/// result are numbered by first appearance, old arcs first, and marked sites
/// of `d` are carried over when both of their strands survive as distinct
/// arcs.
pub fn apply_pq_move(d: &LinkDiagram, site: &MoveSite, p: i64, q: i64) -> Result<LinkDiagram> {
    d.check_site(site)?;
    let spec = pq_tangle_from_slope(p, q)?;
    let tangle = TangleDiagram::rational(&spec);

    let arcs = d.arc_count();
    let strands = d.strand_count();
    // ids: 1..=strands old strands, then one "after" piece per cut arc, then
    // the tangle's own arcs
    let mut crossings: Vec<(usize, usize, usize)> =
        d.crossings().iter().map(|c| (c.over, c.under_in, c.under_out)).collect();
    let mut next = strands + 1;
    let mut pieces = [(0usize, 0usize); 2];
    for (k, &s) in site.arcs.iter().enumerate() {
        let end = if s <= arcs { crossings.iter().position(|c| c.1 == s) } else { None };
        pieces[k] = match end {
            Some(ci) => {
                let after = next;
                next += 1;
                crossings[ci].1 = after;
                (s, after)
            }
            None => (s, s),
        };
    }
    let offset = next - 1;
    next += tangle.arc_count;
    crossings.extend(tangle.crossings.iter().map(|&(o, a, b)| (o + offset, a + offset, b + offset)));

    let mut uf = UnionFind::new(next);
    let [nw, ne, sw, se] = tangle.endpoints.map(|a| a + offset);
    let (a_before, a_after) = pieces[0];
    let (b_before, b_after) = pieces[1];
    uf.union(nw, a_before);
    uf.union(ne, a_after);
    match site.orientation {
        SiteOrientation::Parallel => {
            uf.union(sw, b_before);
            uf.union(se, b_after);
        }
        SiteOrientation::Antiparallel => {
            uf.union(se, b_before);
            uf.union(sw, b_after);
        }
    }

    let mut used = vec![false; next];
    for &(o, a, b) in &crossings {
        for x in [o, a, b] {
            let r = uf.find(x);
            used[r] = true;
        }
    }
    let mut label = vec![0usize; next];
    let mut counted = vec![false; next];
    let mut new_arcs = 0;
    let mut free = 0;
    for id in 1..next {
        let r = uf.find(id);
        if counted[r] {
            continue;
        }
        counted[r] = true;
        if used[r] {
            new_arcs += 1;
            label[r] = new_arcs;
        } else {
            free += 1;
        }
    }
    let relabeled: Vec<(usize, usize, usize)> =
        crossings.iter().map(|&(o, a, b)| (label[uf.find(o)], label[uf.find(a)], label[uf.find(b)])).collect();

    // strand id in the new diagram for an old strand id
    let mut free_label = vec![0usize; next];
    let mut f = 0;
    let mut seen = vec![false; next];
    for id in 1..next {
        let r = uf.find(id);
        if !used[r] && !seen[r] {
            seen[r] = true;
            f += 1;
            free_label[r] = new_arcs + f;
        }
    }
    let mut map_strand = |s: usize| {
        let r = uf.find(s);
        if used[r] {
            label[r]
        } else {
            free_label[r]
        }
    };
    let sites: Vec<MoveSite> = d
        .marked_sites()
        .iter()
        .filter_map(|m| {
            let (a, b) = (map_strand(m.arcs[0]), map_strand(m.arcs[1]));
            (a != b).then(|| MoveSite::new(a, b, m.orientation))
        })
        .collect();

    LinkDiagram::from_unoriented(new_arcs, &relabeled, free, sites)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::{braid_closure, BraidWord};
    use crate::diagram::Crossing;

    fn normalized(d: &LinkDiagram) -> LinkDiagram {
        let raw: Vec<_> = d.crossings().iter().map(|c| (c.over, c.under_in, c.under_out)).collect();
        LinkDiagram::from_unoriented(d.arc_count(), &raw, d.free_components(), d.marked_sites().to_vec()).unwrap()
    }

    #[test]
    fn n_move_on_two_component_unlink_gives_torus_link() {
        let unlink = LinkDiagram::unlink(2);
        let site = MoveSite::new(1, 2, SiteOrientation::Parallel);
        for n in 1..6i64 {
            let d = apply_pq_move(&unlink, &site, n, 1).unwrap();
            assert_eq!(d.crossing_count(), n as usize);
            assert_eq!(d.component_count(), if n % 2 == 0 { 2 } else { 1 });
        }
        let hopf = apply_pq_move(&unlink, &site, 2, 1).unwrap();
        assert_eq!(hopf.arc_count(), 2);
        let over: Vec<usize> = hopf.crossings().iter().map(|c| c.over).collect();
        assert_eq!(over.len(), 2);
        assert_ne!(over[0], over[1]);
        for c in hopf.crossings() {
            assert_eq!(c.under_in, c.under_out);
            assert_ne!(c.over, c.under_in);
        }
    }

    #[test]
    fn zero_move_is_identity_up_to_orientation() {
        let trefoil = LinkDiagram::new(
            3,
            vec![Crossing::new(1, 2, 3), Crossing::new(2, 3, 1), Crossing::new(3, 1, 2)],
            0,
            vec![],
        )
        .unwrap();
        for site in trefoil.candidate_sites() {
            let d = apply_pq_move(&trefoil, &site, 0, 1).unwrap();
            assert_eq!(d, normalized(&trefoil));
        }
        let u = LinkDiagram::unlink(3);
        for site in u.candidate_sites() {
            assert_eq!(apply_pq_move(&u, &site, 0, 1).unwrap(), u);
        }
    }

    #[test]
    fn crossing_count_grows_by_tangle_size() {
        let d = braid_closure(&BraidWord::new(3, vec![1, -2]).unwrap().pow(3));
        for site in d.candidate_sites().into_iter().take(6) {
            for (p, q) in [(3, 1), (3, -1), (3, 2), (5, 3), (1, 0)] {
                let e = apply_pq_move(&d, &site, p, q).unwrap();
                let extra = pq_tangle_from_slope(p, q).unwrap().crossing_count();
                assert_eq!(e.crossing_count(), d.crossing_count() + extra);
            }
        }
    }

    #[test]
    fn three_move_twice() {
        let u = LinkDiagram::unlink(2);
        let site = MoveSite::new(1, 2, SiteOrientation::Parallel);
        let once = apply_pq_move(&u, &site, 3, 1).unwrap().with_marked_sites(vec![]).unwrap();
        assert_eq!(once.crossing_count(), 3);
        let s2 = once.candidate_sites();
        let twice = apply_pq_move(&once, &s2[0], 3, 1).unwrap();
        assert_eq!(twice.crossing_count(), 6);
    }

    #[test]
    fn rejects_bad_sites() {
        let u = LinkDiagram::unlink(2);
        assert!(apply_pq_move(&u, &MoveSite::new(1, 1, SiteOrientation::Parallel), 3, 1).is_err());
        assert!(apply_pq_move(&u, &MoveSite::new(1, 2, SiteOrientation::Parallel), 0, 0).is_err());
    }
}
