//! Brute-force census of labelled chordal planar graphs on up to 6 vertices.
//!
//! This module is an independent oracle: it shares no code with the series
//! pipeline and works by exhaustive enumeration over edge subsets, so any
//! agreement with the generating-function counts is meaningful evidence.
//! Everything here is quadratic-ish in tiny sizes; clarity over speed.

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub const MAX_CENSUS_VERTICES: usize = 6;

/// Graph on at most 8 labelled vertices; adjacency as per-vertex bitmasks.
#[derive(Clone, Copy, Debug)]
pub struct SmallGraph {
    pub n: usize,
    adj: [u8; 8],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 8);
        SmallGraph { n, adj: [0; 8] }
    }

    /// Decodes an edge bitmask in lexicographic (i, j), i < j order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = SmallGraph::empty(n);
        let mut bit = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, i: usize) -> u8 {
        self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    fn full_mask(&self) -> u8 {
        ((1u16 << self.n) - 1) as u8
    }

    /// Vertices of `within` reachable from its lowest member.
    fn reach(&self, within: u8) -> u8 {
        if within == 0 {
            return 0;
        }
        let start = within.trailing_zeros() as usize;
        let mut seen = 1u8 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u8;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & within
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.reach(self.full_mask()) == self.full_mask()
    }

    fn subset_connected(&self, within: u8) -> bool {
        within != 0 && self.reach(within) == within
    }

    /// Connected with no cut vertex; a single edge counts as 2-connected.
    pub fn is_two_connected(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        match self.n {
            0 | 1 => false,
            2 => self.edge_count() == 1,
            _ => (0..self.n).all(|v| self.subset_connected(self.full_mask() & !(1 << v))),
        }
    }

    fn is_clique(&self, set: u8) -> bool {
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            if self.adj[v] & set & !(1 << v) != set & !(1 << v) {
                return false;
            }
        }
        true
    }
}

/// Chordality via simplicial elimination: repeatedly delete a vertex whose
/// neighborhood is a clique; chordal iff everything can be eliminated.
pub fn is_chordal(g: &SmallGraph) -> bool {
    let mut alive = g.full_mask();
    let mut adj = g.adj;
    for _ in 0..g.n {
        if alive == 0 {
            return true;
        }
        let mut found = None;
        let mut s = alive;
        'scan: while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            let nb = adj[v] & alive;
            let mut t = nb;
            while t != 0 {
                let u = t.trailing_zeros() as usize;
                t &= t - 1;
                if adj[u] & nb & !(1 << u) != nb & !(1 << u) {
                    continue 'scan;
                }
            }
            found = Some(v);
            break;
        }
        match found {
            Some(v) => {
                alive &= !(1 << v);
                for a in adj.iter_mut() {
                    *a &= !(1 << v);
                }
            }
            None => return false,
        }
    }
    alive == 0
}

/// Second chordality test: maximum cardinality search, then verify the
/// reverse order is a perfect elimination ordering.
pub fn is_chordal_mcs(g: &SmallGraph) -> bool {
    let n = g.n;
    if n == 0 {
        return true;
    }
    let mut order = Vec::with_capacity(n);
    let mut numbered = 0u8;
    let mut weight = [0usize; 8];
    for _ in 0..n {
        let v = (0..n)
            .filter(|v| numbered >> v & 1 == 0)
            .max_by_key(|&v| weight[v])
            .unwrap();
        order.push(v);
        numbered |= 1 << v;
        for u in 0..n {
            if numbered >> u & 1 == 0 && g.has_edge(v, u) {
                weight[u] += 1;
            }
        }
    }
    // order reversed is the elimination order; for each vertex, its already
    // numbered neighbors at selection time must form a clique.
    let mut seen = 0u8;
    for &v in &order {
        let prior = g.neighbors(v) & seen;
        if !g.is_clique(prior) {
            return false;
        }
        seen |= 1 << v;
    }
    true
}

/// Planarity for n <= 6 by excluded minors. On so few vertices the branch
/// sets of a K5 minor have sizes (1,1,1,1,1) or (2,1,1,1,1) and a K33 minor
/// forces six singleton branch sets, so the search reduces to clique checks
/// after contracting at most one edge, plus tripartition checks.
pub fn is_planar(g: &SmallGraph) -> bool {
    let n = g.n;
    if n <= 4 {
        return true;
    }
    let m = g.edge_count();
    if m <= 8 {
        // K5 needs 10 edges; a K33 minor needs 9 edge-disjoint connections.
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    !has_k5_minor(g) && !has_k33_minor(g)
}

fn has_k5_minor(g: &SmallGraph) -> bool {
    let n = g.n;
    // Five singleton branch sets: a K5 subgraph.
    for skip in 0..=n {
        if n - (if skip < n { 1 } else { 0 }) < 5 {
            continue;
        }
        let set = g.full_mask() & !(if skip < n { 1 << skip } else { 0 });
        if set.count_ones() == 5 && g.is_clique(set) {
            return true;
        }
    }
    if n < 6 {
        return false;
    }
    // One doubleton branch set {u, v} with u ~ v: contract and clique-check.
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                continue;
            }
            let mut c = SmallGraph::empty(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if g.has_edge(i, j) {
                        let a = if i == v { u } else { i };
                        let b = if j == v { u } else { j };
                        if a != b {
                            c.add_edge(a, b);
                        }
                    }
                }
            }
            let set = g.full_mask() & !(1 << v);
            if c.is_clique(set) {
                return true;
            }
        }
    }
    false
}

fn has_k33_minor(g: &SmallGraph) -> bool {
    if g.n != 6 {
        return false;
    }
    // Six branch sets on six vertices: singletons, so check tripartitions.
    for mask in 0u8..64 {
        if mask.count_ones() != 3 || mask & 1 == 0 {
            continue; // fix vertex 0 on one side to halve the work
        }
        let other = 0b111111 & !mask;
        let mut ok = true;
        'outer: for a in 0..6 {
            if mask >> a & 1 == 0 {
                continue;
            }
            for b in 0..6 {
                if other >> b & 1 == 1 && !g.has_edge(a, b) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return true;
        }
    }
    false
}

/// Reference minor test by exhaustive vertex-to-branch-set assignment;
/// used only to cross-validate the specialized search in tests.
pub fn has_minor_by_assignment(g: &SmallGraph, parts: usize, bipartite: bool) -> bool {
    let n = g.n;
    let mut assign = vec![parts; n]; // parts == "unused"
    fn rec(g: &SmallGraph, assign: &mut [usize], v: usize, parts: usize, bipartite: bool) -> bool {
        if v == assign.len() {
            let mut sets = vec![0u8; parts];
            for (i, &a) in assign.iter().enumerate() {
                if a < parts {
                    sets[a] |= 1 << i;
                }
            }
            if sets.iter().any(|&s| s == 0 || !g.subset_connected(s)) {
                return false;
            }
            for a in 0..parts {
                for b in (a + 1)..parts {
                    if bipartite && a / (parts / 2) == b / (parts / 2) {
                        continue;
                    }
                    let mut touch = false;
                    let mut s = sets[a];
                    while s != 0 {
                        let x = s.trailing_zeros() as usize;
                        s &= s - 1;
                        if g.neighbors(x) & sets[b] != 0 {
                            touch = true;
                            break;
                        }
                    }
                    if !touch {
                        return false;
                    }
                }
            }
            return true;
        }
        for a in 0..=parts {
            assign[v] = a;
            if rec(g, assign, v + 1, parts, bipartite) {
                return true;
            }
        }
        false
    }
    rec(g, &mut assign, 0, parts, bipartite)
}

/// Exhaustive counts over all labelled graphs on n vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    /// chordal planar graphs
    pub all: BigInt,
    /// connected chordal planar graphs
    pub connected: BigInt,
    /// 2-connected chordal planar graphs
    pub two_connected: BigInt,
    /// chordal planar graphs with 3n - 6 edges (the planar triangulations)
    pub triangulations: BigInt,
}

/// Walks every edge subset on n labelled vertices. Refuses n > 6: beyond
/// that the enumeration is no longer an overnight-safe oracle.
pub fn census(n: usize) -> Result<CensusRow> {
    if n == 0 || n > MAX_CENSUS_VERTICES {
        return Err(Error::Domain(format!(
            "census supports 1..={MAX_CENSUS_VERTICES} vertices, got {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    let (mut all, mut connected, mut two_connected, mut triangulations) =
        (0u64, 0u64, 0u64, 0u64);
    for mask in 0..(1u64 << pairs) {
        let g = SmallGraph::from_edge_mask(n, mask);
        if !is_chordal(&g) || !is_planar(&g) {
            continue;
        }
        all += 1;
        if g.is_connected() {
            connected += 1;
        }
        if g.is_two_connected() {
            two_connected += 1;
        }
        if n >= 3 && g.edge_count() == 3 * n - 6 {
            triangulations += 1;
        }
    }
    Ok(CensusRow {
        n,
        all: all.into(),
        connected: connected.into(),
        two_connected: two_connected.into(),
        triangulations: triangulations.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;
    use rand::rngs::StdRng;
    use rand::{RngExt, SeedableRng};

    #[test]
    fn census_matches_reference_tables() {
        for n in 1..=6 {
            let row = census(n).unwrap();
            assert_eq!(row.all, tables::graph_all(n), "g_{n}");
            assert_eq!(row.connected, tables::graph_connected(n), "c_{n}");
            assert_eq!(row.two_connected, tables::graph_two_connected(n), "b_{n}");
        }
    }

    #[test]
    fn census_counts_triangulations() {
        assert_eq!(census(4).unwrap().triangulations, BigInt::from(1));
        assert_eq!(census(5).unwrap().triangulations, BigInt::from(10));
        // Settles the 3-connected count at n = 6 independently of any formula.
        assert_eq!(census(6).unwrap().triangulations, BigInt::from(180));
    }

    #[test]
    fn census_refuses_large_n() {
        assert!(census(7).is_err());
    }

    #[test]
    fn chordality_implementations_agree() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let n = rng.random_range(1..=8);
            let pairs = n * (n - 1) / 2;
            let mask = rng.random_range(0..(1u64 << pairs.max(1)));
            let g = SmallGraph::from_edge_mask(n, mask);
            assert_eq!(is_chordal(&g), is_chordal_mcs(&g), "n={n} mask={mask}");
        }
    }

    #[test]
    fn planarity_matches_assignment_search() {
        // Full sweep at n = 5, seeded sample at n = 6.
        for mask in 0..(1u64 << 10) {
            let g = SmallGraph::from_edge_mask(5, mask);
            let by_assignment =
                !has_minor_by_assignment(&g, 5, false) && !has_minor_by_assignment(&g, 6, true);
            assert_eq!(is_planar(&g), by_assignment, "n=5 mask={mask}");
        }
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..300 {
            let mask = rng.random_range(0..(1u64 << 15));
            let g = SmallGraph::from_edge_mask(6, mask);
            let by_assignment =
                !has_minor_by_assignment(&g, 5, false) && !has_minor_by_assignment(&g, 6, true);
            assert_eq!(is_planar(&g), by_assignment, "n=6 mask={mask}");
        }
    }

    #[test]
    fn known_graphs() {
        // K5 is chordal but not planar.
        let k5 = SmallGraph::from_edge_mask(5, (1 << 10) - 1);
        assert!(is_chordal(&k5));
        assert!(!is_planar(&k5));
        // C4 is planar but not chordal.
        let mut c4 = SmallGraph::empty(4);
        c4.add_edge(0, 1);
        c4.add_edge(1, 2);
        c4.add_edge(2, 3);
        c4.add_edge(3, 0);
        assert!(!is_chordal(&c4));
        assert!(is_planar(&c4));
        assert!(c4.is_two_connected());
        // K33 is not planar.
        let mut k33 = SmallGraph::empty(6);
        for a in 0..3 {
            for b in 3..6 {
                k33.add_edge(a, b);
            }
        }
        assert!(!is_planar(&k33));
    }
}
