//! Uniform hypergraphs, edge colourings, link graphs and the small-instance
//! exact quantities (independence number, density) everything else builds on.
//!
//! Vertices are dense integers `0..n`. Edges are stored as sorted vertex
//! vectors in ordered sets, so every serialisation of the same hypergraph is
//! byte-identical.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::Ratio;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Colour = usize;
pub type Edge = Vec<Vertex>;

/// Default cap for the exact independence-number search.
pub const DEFAULT_INDEPENDENCE_BOUND: usize = 24;

/// Sorts and validates a candidate edge against uniformity `k` and vertex
/// count `n`.
pub fn canonical_edge(k: usize, n: usize, edge: &[Vertex]) -> Result<Edge> {
    if edge.len() != k {
        return Err(Error::InvalidArgument(format!(
            "edge {:?} has {} vertices, expected {}",
            edge,
            edge.len(),
            k
        )));
    }
    let mut e = edge.to_vec();
    e.sort_unstable();
    e.dedup();
    if e.len() != k {
        return Err(Error::InvalidArgument(format!(
            "edge {:?} repeats a vertex",
            edge
        )));
    }
    if let Some(&v) = e.last() {
        if v >= n {
            return Err(Error::InvalidArgument(format!(
                "edge {:?} mentions vertex {} but n = {}",
                edge, v, n
            )));
        }
    }
    Ok(e)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// A k-uniform hypergraph on vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    pub fn new(k: usize, n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument("uniformity must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            set.insert(canonical_edge(k, n, &e)?);
        }
        Ok(Hypergraph { k, n, edges: set })
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Hypergraph {
            k,
            n,
            edges: BTreeSet::new(),
        }
    }

    /// The complete k-graph `K_n^{(k)}`.
    pub fn complete(k: usize, n: usize) -> Self {
        Hypergraph {
            k,
            n,
            edges: k_subsets(n, k).into_iter().collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn contains(&self, edge: &[Vertex]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.contains(&e)
    }

    /// Edge lookup keyed by bitmask, usable whenever `n <= 64`. The search
    /// kernels convert once and test membership in O(1).
    pub fn edge_masks(&self) -> Option<HashSet<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.edges
                .iter()
                .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect(),
        )
    }

    /// Exact density |E| / C(n, k).
    pub fn density(&self) -> Result<Ratio<i64>> {
        if self.n < self.k {
            return Err(Error::InvalidArgument(format!(
                "density undefined: n = {} < k = {}",
                self.n, self.k
            )));
        }
        let total = binomial(self.n, self.k);
        Ok(Ratio::new(self.edges.len() as i64, total as i64))
    }

    /// Exact independence number by branch and bound. For graphs (`k = 2`) a
    /// greedy colouring of the complement sharpens the bound; for higher
    /// uniformities the candidate count is used.
    pub fn independence_number(&self, cap: usize) -> Result<usize> {
        if self.n > cap {
            return Err(Error::SizeLimit {
                what: "independence number",
                limit: cap,
                actual: self.n,
            });
        }
        if self.n == 0 {
            return Ok(0);
        }
        let masks: Vec<u64> = self
            .edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        // edges through each vertex, for the feasibility test
        let mut through: Vec<Vec<u64>> = vec![Vec::new(); self.n];
        for &em in &masks {
            for v in 0..self.n {
                if em & (1 << v) != 0 {
                    through[v].push(em);
                }
            }
        }
        // graph adjacency for the k = 2 colouring bound
        let adj: Option<Vec<u64>> = if self.k == 2 {
            let mut a = vec![0u64; self.n];
            for e in &self.edges {
                a[e[0]] |= 1 << e[1];
                a[e[1]] |= 1 << e[0];
            }
            Some(a)
        } else {
            None
        };
        let mut best = 0usize;
        self.bb_independent(0, 0u64, 0, &through, adj.as_deref(), &mut best);
        Ok(best)
    }

    fn bb_independent(
        &self,
        next: Vertex,
        chosen: u64,
        chosen_count: usize,
        through: &[Vec<u64>],
        adj: Option<&[u64]>,
        best: &mut usize,
    ) {
        if chosen_count > *best {
            *best = chosen_count;
        }
        if next >= self.n {
            return;
        }
        let remaining_bound = match adj {
            Some(adj) => greedy_complement_colour_bound(next, self.n, chosen, adj),
            None => self.n - next,
        };
        if chosen_count + remaining_bound <= *best {
            return;
        }
        // include `next` unless it completes an edge inside chosen ∪ {next}
        let with = chosen | (1 << next);
        let completes = through[next].iter().any(|&em| em & !with == 0);
        if !completes {
            self.bb_independent(next + 1, with, chosen_count + 1, through, adj, best);
        }
        self.bb_independent(next + 1, chosen, chosen_count, through, adj, best);
    }
}

/// Upper bound on how many of the candidates `next..n` can still join the
/// independent set: partition them greedily into cliques (equivalently,
/// colour the complement); an independent set meets each clique at most once.
fn greedy_complement_colour_bound(next: Vertex, n: usize, chosen: u64, adj: &[u64]) -> usize {
    let mut classes: Vec<u64> = Vec::new();
    for v in next..n {
        if adj[v] & chosen != 0 {
            continue; // already excluded by a chosen neighbour
        }
        let mut placed = false;
        for class in classes.iter_mut() {
            // v joins a class only if adjacent to every current member,
            // keeping the class a clique
            if *class & !adj[v] == 0 {
                *class |= 1 << v;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(1 << v);
        }
    }
    classes.len()
}

/// An r-edge-colouring of a host hypergraph; the colour map is total on the
/// host's edges and colours are 1-based in `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredHypergraph {
    host: Hypergraph,
    r: usize,
    colours: BTreeMap<Edge, Colour>,
}

impl ColouredHypergraph {
    pub fn new(k: usize, n: usize, r: usize, coloured: impl IntoIterator<Item = (Edge, Colour)>) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidArgument("colour count must be positive".into()));
        }
        let mut colours = BTreeMap::new();
        for (e, c) in coloured {
            let e = canonical_edge(k, n, &e)?;
            if c < 1 || c > r {
                return Err(Error::InvalidArgument(format!(
                    "colour {} of edge {:?} outside 1..={}",
                    c, e, r
                )));
            }
            if let Some(&prev) = colours.get(&e) {
                if prev != c {
                    return Err(Error::InvalidArgument(format!(
                        "edge {:?} coloured both {} and {}",
                        e, prev, c
                    )));
                }
            }
            colours.insert(e, c);
        }
        let host = Hypergraph {
            k,
            n,
            edges: colours.keys().cloned().collect(),
        };
        Ok(ColouredHypergraph { host, r, colours })
    }

    /// Wraps a complete host: the colour list enumerates the k-subsets of
    /// `0..n` in lexicographic order.
    pub fn complete_with_colouring(k: usize, n: usize, r: usize, colour_list: &[Colour]) -> Result<Self> {
        let subsets = k_subsets(n, k);
        if subsets.len() != colour_list.len() {
            return Err(Error::InvalidArgument(format!(
                "complete colouring needs {} colours, got {}",
                subsets.len(),
                colour_list.len()
            )));
        }
        Self::new(k, n, r, subsets.into_iter().zip(colour_list.iter().copied()))
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn k(&self) -> usize {
        self.host.k
    }

    pub fn n(&self) -> usize {
        self.host.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.colours.len()
    }

    pub fn coloured_edges(&self) -> impl Iterator<Item = (&Edge, Colour)> {
        self.colours.iter().map(|(e, &c)| (e, c))
    }

    pub fn colour_of(&self, edge: &[Vertex]) -> Option<Colour> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.colours.get(&e).copied()
    }

    /// The subgraph formed by the edges of one colour.
    pub fn colour_class(&self, colour: Colour) -> Hypergraph {
        Hypergraph {
            k: self.host.k,
            n: self.host.n,
            edges: self
                .colours
                .iter()
                .filter(|&(_, &c)| c == colour)
                .map(|(e, _)| e.clone())
                .collect(),
        }
    }

    /// Per-colour bitmask lookups (`n <= 64`), indexed by colour - 1.
    pub fn colour_masks(&self) -> Option<Vec<HashSet<u64>>> {
        if self.host.n > 64 {
            return None;
        }
        let mut out = vec![HashSet::new(); self.r];
        for (e, &c) in &self.colours {
            let m = e.iter().fold(0u64, |m, &v| m | (1 << v));
            out[c - 1].insert(m);
        }
        Some(out)
    }

    /// Hash of the canonical instance content (uniformity, size, colour
    /// count, sorted coloured edge list). Certificates embed this digest so
    /// they cannot be replayed against a different instance.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("tightcycle/1 k={} n={} r={}\n", self.host.k, self.host.n, self.r));
        for (e, c) in &self.colours {
            let mut line = String::new();
            for v in e {
                line.push_str(&v.to_string());
                line.push(' ');
            }
            line.push_str(&format!(": {}\n", c));
            hasher.update(line);
        }
        let out = hasher.finalize();
        out.iter().map(|b| format!("{:02x}", b)).collect()
    }
}

/// An ordered list of pairwise disjoint, non-empty vertex blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<Vertex>>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut canon = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty partition block".into()));
            }
            let mut b = b;
            b.sort_unstable();
            b.dedup();
            for &v in &b {
                if !seen.insert(v) {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {} appears in two blocks",
                        v
                    )));
                }
            }
            canon.push(b);
        }
        Ok(VertexPartition { blocks: canon })
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `v`, if any.
    pub fn block_of(&self, v: Vertex) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }
}

/// A link graph: the residual (k - l)-sets completing a pinned vertex list to
/// an edge, optionally restricted to a transversal of listed parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub uniformity: usize,
    pub parts: Option<Vec<Vec<Vertex>>>,
    pub edges: BTreeSet<Edge>,
}

impl LinkGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Computes `Lk(pins; parts)` in `g`, optionally keeping only edges of one
/// colour.
pub fn link_graph(
    g: &ColouredHypergraph,
    pins: &[Vertex],
    parts: Option<&[Vec<Vertex>]>,
    colour_filter: Option<Colour>,
) -> Result<LinkGraph> {
    let k = g.k();
    if pins.len() >= k {
        return Err(Error::InvalidArgument(format!(
            "{} pins but uniformity is {}",
            pins.len(),
            k
        )));
    }
    let pin_set: BTreeSet<Vertex> = pins.iter().copied().collect();
    if pin_set.len() != pins.len() {
        return Err(Error::InvalidArgument("pins repeat a vertex".into()));
    }
    if let Some(c) = colour_filter {
        if c < 1 || c > g.r() {
            return Err(Error::InvalidArgument(format!(
                "unknown colour {} (r = {})",
                c,
                g.r()
            )));
        }
    }
    let residual = k - pins.len();
    let parts_canon: Option<Vec<Vec<Vertex>>> = match parts {
        None => None,
        Some(ps) => {
            if ps.len() != residual {
                return Err(Error::InvalidArgument(format!(
                    "{} parts listed but residual uniformity is {}",
                    ps.len(),
                    residual
                )));
            }
            let mut seen = pin_set.clone();
            let mut canon = Vec::with_capacity(ps.len());
            for p in ps {
                let mut p = p.clone();
                p.sort_unstable();
                p.dedup();
                for &v in &p {
                    if !seen.insert(v) {
                        return Err(Error::InvalidArgument(format!(
                            "part vertex {} collides with a pin or another part",
                            v
                        )));
                    }
                }
                canon.push(p);
            }
            Some(canon)
        }
    };
    let mut edges = BTreeSet::new();
    for (e, c) in g.coloured_edges() {
        if let Some(cf) = colour_filter {
            if c != cf {
                continue;
            }
        }
        if !pins.iter().all(|p| e.binary_search(p).is_ok()) {
            continue;
        }
        let rest: Edge = e.iter().copied().filter(|v| !pin_set.contains(v)).collect();
        if let Some(ps) = &parts_canon {
            let mut ok = true;
            let mut used = vec![false; ps.len()];
            for &v in &rest {
                match ps.iter().position(|p| p.binary_search(&v).is_ok()) {
                    Some(i) if !used[i] => used[i] = true,
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok || !used.iter().all(|&u| u) {
                continue;
            }
        }
        edges.insert(rest);
    }
    Ok(LinkGraph {
        uniformity: residual,
        parts: parts_canon,
        edges,
    })
}

/// The complete partition-partite k-graph: all k-sets meeting each block at
/// most once.
pub fn partite_clique_set(p: &VertexPartition, k: usize) -> Hypergraph {
    let n = p
        .blocks()
        .iter()
        .flat_map(|b| b.iter().copied())
        .max()
        .map_or(0, |v| v + 1);
    let mut edges = BTreeSet::new();
    let t = p.len();
    if k <= t {
        for combo in k_subsets(t, k) {
            let chosen: Vec<&Vec<Vertex>> = combo.iter().map(|&i| &p.blocks()[i]).collect();
            let mut idx = vec![0usize; k];
            'outer: loop {
                let mut e: Edge = idx.iter().zip(&chosen).map(|(&i, b)| b[i]).collect();
                e.sort_unstable();
                edges.insert(e);
                let mut pos = k;
                loop {
                    if pos == 0 {
                        break 'outer;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < chosen[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    if pos == 0 {
                        break 'outer;
                    }
                }
            }
        }
    }
    Hypergraph { k, n, edges }
}

/// The k-sets all of whose j-subsets are edges of `h` (the clique
/// hypergraph `K^{(k)}(h)`).
pub fn clique_hypergraph(h: &Hypergraph, k: usize) -> Result<Hypergraph> {
    let j = h.k();
    if k < j {
        return Err(Error::InvalidArgument(format!(
            "target uniformity {} below source uniformity {}",
            k, j
        )));
    }
    let mut edges = BTreeSet::new();
    for cand in k_subsets(h.n(), k) {
        if k_subsets(k, j)
            .iter()
            .all(|sub| h.contains(&sub.iter().map(|&i| cand[i]).collect::<Vec<_>>()))
        {
            edges.insert(cand);
        }
    }
    Ok(Hypergraph {
        k,
        n: h.n(),
        edges,
    })
}

/// Coloured variant: the k-sets spanning a monochromatic j-clique, coloured
/// by the clique's (necessarily unique) edge colour.
pub fn mono_clique_hypergraph(g: &ColouredHypergraph, k: usize) -> Result<ColouredHypergraph> {
    let j = g.k();
    if k < j {
        return Err(Error::InvalidArgument(format!(
            "target uniformity {} below source uniformity {}",
            k, j
        )));
    }
    let subs = k_subsets(k, j);
    let mut coloured = Vec::new();
    'cand: for cand in k_subsets(g.n(), k) {
        let mut colour = None;
        for sub in &subs {
            let e: Edge = sub.iter().map(|&i| cand[i]).collect();
            match g.colour_of(&e) {
                None => continue 'cand,
                Some(c) => match colour {
                    None => colour = Some(c),
                    Some(prev) if prev != c => continue 'cand,
                    _ => {}
                },
            }
        }
        if let Some(c) = colour {
            coloured.push((cand, c));
        }
    }
    ColouredHypergraph::new(k, g.n(), g.r(), coloured)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_one_coloured(k: usize, n: usize) -> ColouredHypergraph {
        ColouredHypergraph::new(k, n, 1, k_subsets(n, k).into_iter().map(|e| (e, 1))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![0, 1, 4]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![2, 0, 1]]).is_ok());
    }

    #[test]
    fn density_examples() {
        assert_eq!(
            Hypergraph::complete(3, 6).density().unwrap(),
            Ratio::from_integer(1)
        );
        assert_eq!(
            Hypergraph::empty(3, 6).density().unwrap(),
            Ratio::from_integer(0)
        );
        let edges: Vec<Edge> = k_subsets(6, 3).into_iter().take(10).collect();
        let h = Hypergraph::new(3, 6, edges).unwrap();
        assert_eq!(h.density().unwrap(), Ratio::new(10, 20));
        assert!(Hypergraph::empty(3, 2).density().is_err());
    }

    #[test]
    fn independence_trivial_cases() {
        assert_eq!(Hypergraph::empty(3, 5).independence_number(24).unwrap(), 5);
        assert_eq!(Hypergraph::complete(3, 5).independence_number(24).unwrap(), 2);
        assert!(matches!(
            Hypergraph::empty(3, 30).independence_number(24),
            Err(Error::SizeLimit { .. })
        ));
    }

    /// Exhaustive oracle: maximum subset containing no edge.
    fn independence_by_enumeration(h: &Hypergraph) -> usize {
        let masks: Vec<u64> = h
            .edges()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let mut best = 0;
        for s in 0u64..(1 << h.n()) {
            if masks.iter().all(|&em| em & s != em) {
                best = best.max(s.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn independence_matches_enumeration() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..40 {
            let n = 5 + (trial % 6);
            let k = if trial % 2 == 0 { 2 } else { 3 };
            let edges: Vec<Edge> = k_subsets(n, k)
                .into_iter()
                .filter(|_| rng.random_bool(0.3))
                .collect();
            let h = Hypergraph::new(k, n, edges).unwrap();
            assert_eq!(
                h.independence_number(24).unwrap(),
                independence_by_enumeration(&h),
                "mismatch on n={} k={}",
                n,
                k
            );
        }
    }

    #[test]
    fn link_of_complete_graph() {
        let g = complete_one_coloured(3, 4);
        let lk = link_graph(&g, &[0], None, None).unwrap();
        let expect: BTreeSet<Edge> = vec![vec![1, 2], vec![1, 3], vec![2, 3]]
            .into_iter()
            .collect();
        assert_eq!(lk.edges, expect);
        assert_eq!(lk.uniformity, 2);
    }

    #[test]
    fn link_colour_filter() {
        let g = ColouredHypergraph::new(3, 4, 2, vec![(vec![0, 1, 2], 1)]).unwrap();
        let lk = link_graph(&g, &[0], None, Some(2)).unwrap();
        assert!(lk.edges.is_empty());
        assert!(link_graph(&g, &[0], None, Some(3)).is_err());
        assert!(link_graph(&g, &[0, 1, 2], None, None).is_err());
        assert!(link_graph(&g, &[0, 0], None, None).is_err());
    }

    #[test]
    fn partite_link_matches_brute_scan() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = 9;
            let mut edges: Vec<(Edge, Colour)> = Vec::new();
            for e in k_subsets(n, 3) {
                if rng.random_bool(0.5) {
                    let c = rng.random_range(1..=2);
                    edges.push((e, c));
                }
            }
            let g = ColouredHypergraph::new(3, n, 2, edges).unwrap();
            let parts = vec![vec![1, 2, 3], vec![4, 5, 6]];
            for colour in 1..=2 {
                let lk = link_graph(&g, &[0], Some(&parts), Some(colour)).unwrap();
                let direct = g
                    .coloured_edges()
                    .filter(|&(e, c)| {
                        c == colour
                            && e.contains(&0)
                            && e.iter().filter(|v| parts[0].contains(v)).count() == 1
                            && e.iter().filter(|v| parts[1].contains(v)).count() == 1
                    })
                    .count();
                assert_eq!(lk.edge_count(), direct);
            }
        }
    }

    #[test]
    fn partite_clique_set_examples() {
        let p = VertexPartition::new(vec![vec![0], vec![1], vec![2]]).unwrap();
        let h = partite_clique_set(&p, 3);
        assert_eq!(h.edge_count(), 1);
        assert!(h.contains(&[0, 1, 2]));

        let p = VertexPartition::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let h = partite_clique_set(&p, 2);
        assert_eq!(h.edge_count(), 4);
        assert!(!h.contains(&[0, 1]));
    }

    #[test]
    fn partite_clique_set_product_formula() {
        let p = VertexPartition::new(vec![vec![0, 1, 2], vec![3, 4], vec![5, 6, 7, 8]]).unwrap();
        let h = partite_clique_set(&p, 3);
        assert_eq!(h.edge_count(), 3 * 2 * 4);
    }

    #[test]
    fn clique_hypergraph_examples() {
        let complete2 = Hypergraph::complete(2, 6);
        let lifted = clique_hypergraph(&complete2, 4).unwrap();
        assert_eq!(lifted, Hypergraph::complete(4, 6));

        let c5 = Hypergraph::new(
            2,
            5,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
        )
        .unwrap();
        assert_eq!(clique_hypergraph(&c5, 3).unwrap().edge_count(), 0);
    }

    #[test]
    fn mono_cliques_match_enumeration() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let n = 8;
            let edges: Vec<(Edge, Colour)> = k_subsets(n, 2)
                .into_iter()
                .map(|e| (e, rng.random_range(1..=2)))
                .collect();
            let g = ColouredHypergraph::new(2, n, 2, edges).unwrap();
            let lifted = mono_clique_hypergraph(&g, 4).unwrap();
            // brute enumeration of monochromatic K_4s
            let mut expect = 0;
            for cand in k_subsets(n, 4) {
                for colour in 1..=2 {
                    if k_subsets(4, 2).iter().all(|s| {
                        g.colour_of(&[cand[s[0]], cand[s[1]]]) == Some(colour)
                    }) {
                        expect += 1;
                        assert_eq!(lifted.colour_of(&cand), Some(colour));
                    }
                }
            }
            assert_eq!(lifted.edge_count(), expect);
        }
    }

    #[test]
    fn clique_hypergraph_monotone() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let all = k_subsets(7, 2);
        let some: Vec<Edge> = all.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
        let h1 = Hypergraph::new(2, 7, some.clone()).unwrap();
        let mut more = some;
        more.extend(all.iter().filter(|_| rng.random_bool(0.3)).cloned());
        let h2 = Hypergraph::new(2, 7, more).unwrap();
        let k1 = clique_hypergraph(&h1, 3).unwrap();
        let k2 = clique_hypergraph(&h2, 3).unwrap();
        for e in k1.edges() {
            assert!(k2.contains(e));
        }
    }

    #[test]
    fn degree_sum_identity() {
        // summing partite link counts over one part counts each partite edge
        // through the pinned configuration once
        let g = complete_one_coloured(3, 9);
        let parts = vec![vec![3, 4, 5], vec![6, 7, 8]];
        let total: usize = vec![0, 1, 2]
            .into_iter()
            .map(|v| {
                link_graph(&g, &[v], Some(&parts), None)
                    .unwrap()
                    .edge_count()
            })
            .sum();
        // each of the 3 pins completes to 3 * 3 transversal pairs
        assert_eq!(total, 27);
    }

    #[test]
    fn digest_stable_and_content_sensitive() {
        let g1 = ColouredHypergraph::new(3, 5, 2, vec![(vec![0, 1, 2], 1)]).unwrap();
        let g2 = ColouredHypergraph::new(3, 5, 2, vec![(vec![2, 1, 0], 1)]).unwrap();
        let g3 = ColouredHypergraph::new(3, 5, 2, vec![(vec![0, 1, 2], 2)]).unwrap();
        assert_eq!(g1.digest(), g2.digest());
        assert_ne!(g1.digest(), g3.digest());
    }
}
