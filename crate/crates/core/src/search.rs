//! Bounded exact and budgeted searches: longest monochromatic tight cycle,
//! crown embedding, spanning cycles, and fixed-length connector paths.
//!
//! Every search is deterministic: candidates are tried in ascending vertex
//! order, cycles are reported with their minimum vertex first and the
//! lexicographically smaller direction, and budgets count search nodes.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypergraph::{Colour, ColouredHypergraph, LinkGraph, Vertex, VertexPartition};
use crate::tight::{
    oriented_order, prescribed_length, tp, tp_pair, CycleColour, TightCycle, TightPath,
};

pub const DEFAULT_EXACT_CYCLE_BOUND: usize = 14;

/// Limits for one search invocation. Node limits drive determinism; the
/// time limit is a safety net that should be generous enough to never bind
/// before the node limit when reproducibility matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit_ms: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 4_000_000,
            time_limit_ms: 60_000,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        SearchBudget {
            seed,
            ..Default::default()
        }
    }
}

struct Ticker {
    nodes_left: u64,
    started: Instant,
    time_limit_ms: u64,
    exhausted: bool,
}

impl Ticker {
    fn new(budget: &SearchBudget) -> Self {
        Ticker {
            nodes_left: budget.node_limit,
            started: Instant::now(),
            time_limit_ms: budget.time_limit_ms,
            exhausted: false,
        }
    }

    /// Returns false once the budget is spent.
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if self.nodes_left == 0 {
            self.exhausted = true;
            return false;
        }
        self.nodes_left -= 1;
        if self.nodes_left % 8192 == 0
            && self.started.elapsed().as_millis() as u64 > self.time_limit_ms
        {
            self.exhausted = true;
            return false;
        }
        true
    }
}

fn mask_of(verts: &[Vertex]) -> u64 {
    verts.iter().fold(0u64, |m, &v| m | (1 << v))
}

fn bits_ascending(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// One colour class prepared for mask-based window tests.
struct ColourClass<'a> {
    k: usize,
    edges: &'a HashSet<u64>,
}

impl ColourClass<'_> {
    fn window_ok(&self, seq: &[Vertex], next: Vertex) -> bool {
        if seq.len() + 1 < self.k {
            return true;
        }
        let mut m = 1u64 << next;
        for &v in &seq[seq.len() + 1 - self.k..] {
            m |= 1 << v;
        }
        self.edges.contains(&m)
    }

    /// Wrap-around windows of a closed sequence.
    fn closes(&self, seq: &[Vertex]) -> bool {
        let l = seq.len();
        for start in l + 1 - self.k..l {
            let mut m = 0u64;
            for d in 0..self.k {
                m |= 1 << seq[(start + d) % l];
            }
            if !self.edges.contains(&m) {
                return false;
            }
        }
        true
    }
}

/// Depth-first enumeration of tight cycles in one colour class. Cycles are
/// produced with minimum vertex first and `seq[1] < seq[last]`, which is the
/// canonical representative under rotation and reflection. The callback may
/// stop the search by returning `Some`.
fn for_each_cycle<R>(
    class: &ColourClass,
    allowed: u64,
    len_range: (usize, usize),
    ticker: &mut Ticker,
    on_found: &mut impl FnMut(&[Vertex]) -> Option<R>,
) -> Option<R> {
    let (min_len, max_len) = len_range;
    let mut seq: Vec<Vertex> = Vec::with_capacity(max_len);
    for v0 in bits_ascending(allowed) {
        // all other cycle vertices exceed the minimum vertex v0
        let pool = allowed & !((1u64 << (v0 + 1)) - 1);
        seq.clear();
        seq.push(v0);
        if let Some(r) = cycle_dfs(class, pool, min_len, max_len, &mut seq, 1 << v0, ticker, on_found)
        {
            return Some(r);
        }
        if ticker.exhausted {
            return None;
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn cycle_dfs<R>(
    class: &ColourClass,
    pool: u64,
    min_len: usize,
    max_len: usize,
    seq: &mut Vec<Vertex>,
    used: u64,
    ticker: &mut Ticker,
    on_found: &mut impl FnMut(&[Vertex]) -> Option<R>,
) -> Option<R> {
    if !ticker.tick() {
        return None;
    }
    let l = seq.len();
    if l >= min_len && l > class.k && seq[1] < seq[l - 1] && class.closes(seq) {
        if let Some(r) = on_found(seq) {
            return Some(r);
        }
    }
    if l == max_len {
        return None;
    }
    for v in bits_ascending(pool & !used) {
        if !class.window_ok(seq, v) {
            continue;
        }
        seq.push(v);
        let r = cycle_dfs(class, pool, min_len, max_len, seq, used | (1 << v), ticker, on_found);
        seq.pop();
        if r.is_some() || ticker.exhausted {
            return r;
        }
    }
    None
}

/// A monochromatic tight cycle spanning exactly `verts`, if one exists.
/// Colours are tried in ascending order; within a colour the first cycle in
/// canonical depth-first order is returned.
pub fn spanning_mono_tight_cycle(
    g: &ColouredHypergraph,
    verts: &BTreeSet<Vertex>,
) -> Option<(TightCycle, CycleColour)> {
    let k = g.k();
    match verts.len() {
        0 => return None,
        1 => {
            return Some((
                TightCycle::degenerate(k, *verts.iter().next().unwrap()),
                CycleColour::Any,
            ))
        }
        l if l <= k => return None,
        _ => {}
    }
    let masks = g.colour_masks()?;
    let allowed = verts.iter().fold(0u64, |m, &v| m | (1 << v));
    let target = verts.len();
    let mut ticker = Ticker::new(&SearchBudget {
        node_limit: u64::MAX,
        time_limit_ms: u64::MAX,
        seed: 0,
    });
    for (ci, edges) in masks.iter().enumerate() {
        let class = ColourClass { k, edges };
        let found = for_each_cycle(
            &class,
            allowed,
            (target, target),
            &mut ticker,
            &mut |seq| Some(seq.to_vec()),
        );
        if let Some(seq) = found {
            return Some((TightCycle::new(k, seq), CycleColour::Fixed(ci + 1)));
        }
    }
    None
}

/// The longest monochromatic tight cycle avoiding `forbidden`: exact when
/// the residual vertex count is within `exact_bound`, otherwise the best
/// cycle found within the budget. Always returns at least a degenerate
/// cycle on the smallest available vertex.
pub fn longest_mono_tight_cycle(
    g: &ColouredHypergraph,
    forbidden: &BTreeSet<Vertex>,
    budget: &SearchBudget,
    exact_bound: usize,
) -> Result<(TightCycle, CycleColour)> {
    let k = g.k();
    let n = g.n();
    if n > 64 {
        return Err(Error::SizeLimit {
            what: "cycle search",
            limit: 64,
            actual: n,
        });
    }
    let allowed_verts: Vec<Vertex> = (0..n).filter(|v| !forbidden.contains(v)).collect();
    let first = *allowed_verts.first().ok_or_else(|| {
        Error::InvalidArgument("no vertices left to search".into())
    })?;
    let allowed = mask_of(&allowed_verts);
    let avail = allowed_verts.len();
    let mut best: (TightCycle, CycleColour) = (TightCycle::degenerate(k, first), CycleColour::Any);
    let mut best_len = 1usize;
    let masks = g.colour_masks().unwrap();
    let mut ticker = if avail <= exact_bound {
        Ticker::new(&SearchBudget {
            node_limit: u64::MAX,
            time_limit_ms: budget.time_limit_ms.max(1),
            seed: budget.seed,
        })
    } else {
        Ticker::new(budget)
    };
    for (ci, edges) in masks.iter().enumerate() {
        if best_len == avail {
            break;
        }
        let class = ColourClass { k, edges };
        for_each_cycle::<()>(&class, allowed, (k + 1, avail), &mut ticker, &mut |seq| {
            let better = match seq.len().cmp(&best_len) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => seq < best.0.seq.as_slice(),
                std::cmp::Ordering::Less => false,
            };
            if better {
                best = (TightCycle::new(k, seq.to_vec()), CycleColour::Fixed(ci + 1));
                best_len = seq.len();
            }
            if best_len == avail {
                Some(())
            } else {
                None
            }
        });
    }
    Ok(best)
}

/// A monochromatic crown embedded in the host: the base sequence is aligned
/// so rim vertex `i` absorbs base segment `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedCrown {
    pub k: usize,
    pub base: Vec<Vertex>,
    pub rim: Vec<Vertex>,
    pub colour: Colour,
}

impl EmbeddedCrown {
    pub fn t(&self) -> usize {
        self.rim.len()
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.base.iter().chain(self.rim.iter()).copied().collect()
    }

    /// Re-checks all `t(2k-1)` crown edges against the host, independently
    /// of how the embedding was produced.
    pub fn verify(&self, g: &ColouredHypergraph) -> bool {
        let k = self.k;
        let m = self.base.len();
        if m != self.rim.len() * (k - 1) {
            return false;
        }
        for start in 0..m {
            let w: Vec<Vertex> = (0..k).map(|d| self.base[(start + d) % m]).collect();
            if g.colour_of(&w) != Some(self.colour) {
                return false;
            }
        }
        for (i, &u) in self.rim.iter().enumerate() {
            for j in 0..k {
                let mut e: Vec<Vertex> =
                    (0..k - 1).map(|d| self.base[((k - 1) * i + j + d) % m]).collect();
                e.push(u);
                if g.colour_of(&e) != Some(self.colour) {
                    return false;
                }
            }
        }
        true
    }

    /// The spanning cycle over the base and a rim subset.
    pub fn insertion_cycle(&self, selected: &BTreeSet<Vertex>) -> TightCycle {
        let seq =
            crate::tight::crown_insertion_sequence(self.k, &self.base, &self.rim, selected);
        TightCycle::new(self.k, seq).canonical()
    }
}

/// Searches for a monochromatic crown of order `t` avoiding `forbidden`.
/// Not-found is only reported after the budget is exhausted or the search
/// space is empty.
pub fn find_mono_crown(
    g: &ColouredHypergraph,
    t: usize,
    forbidden: &BTreeSet<Vertex>,
    budget: &SearchBudget,
) -> Result<Option<EmbeddedCrown>> {
    let k = g.k();
    let m = t * (k - 1);
    if m < k + 1 {
        return Err(Error::InvalidArgument(format!(
            "crown order {} too small for uniformity {}",
            t, k
        )));
    }
    if g.n() > 64 {
        return Err(Error::SizeLimit {
            what: "crown search",
            limit: 64,
            actual: g.n(),
        });
    }
    let allowed_verts: Vec<Vertex> = (0..g.n()).filter(|v| !forbidden.contains(v)).collect();
    if allowed_verts.len() < m + t {
        return Ok(None);
    }
    let allowed = mask_of(&allowed_verts);
    let masks = g.colour_masks().unwrap();
    let mut ticker = Ticker::new(budget);
    for (ci, edges) in masks.iter().enumerate() {
        let colour = ci + 1;
        let class = ColourClass { k, edges };
        let found = for_each_cycle(&class, allowed, (m, m), &mut ticker, &mut |seq| {
            // try every segment alignment of the base cycle
            for offset in 0..k - 1 {
                let base: Vec<Vertex> = (0..m).map(|i| seq[(offset + i) % m]).collect();
                let used = mask_of(&base);
                let mut rim = Vec::with_capacity(t);
                if rim_dfs(&class, g, colour, &base, allowed & !used, 0, &mut rim) {
                    return Some(EmbeddedCrown {
                        k,
                        base,
                        rim,
                        colour,
                    });
                }
            }
            None
        });
        if found.is_some() {
            return Ok(found);
        }
        if ticker.exhausted {
            break;
        }
    }
    Ok(None)
}

fn rim_dfs(
    class: &ColourClass,
    g: &ColouredHypergraph,
    colour: Colour,
    base: &[Vertex],
    pool: u64,
    slot: usize,
    rim: &mut Vec<Vertex>,
) -> bool {
    let k = class.k;
    let m = base.len();
    let t = m / (k - 1);
    if slot == t {
        return true;
    }
    for u in bits_ascending(pool) {
        let fits = (0..k).all(|j| {
            let mut e: Vec<Vertex> = (0..k - 1).map(|d| base[((k - 1) * slot + j + d) % m]).collect();
            e.push(u);
            g.colour_of(&e) == Some(colour)
        });
        if fits {
            rim.push(u);
            if rim_dfs(class, g, colour, base, pool & !(1 << u), slot + 1, rim) {
                return true;
            }
            rim.pop();
        }
    }
    false
}

/// A positively oriented tight path of exactly the type-prescribed number of
/// edges from `e` to `f` inside the partite graph `h`, internally avoiding
/// `s`. `Ok(None)` means not found within budget (or structurally
/// impossible).
pub fn connect(
    h: &LinkGraph,
    e: &[Vertex],
    f: &[Vertex],
    s: &BTreeSet<Vertex>,
    budget: &SearchBudget,
) -> Result<Option<TightPath>> {
    let parts = h
        .parts
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("connect needs a partite graph".into()))?;
    let p = VertexPartition::new(parts.clone())?;
    let target = prescribed_length(e, f, &p)?;
    connect_with_edges(h, e, f, s, target, budget)
}

/// Fixed-length variant: the connector must have exactly `edge_target`
/// windows. The absorption pipeline uses `2j - 1` edges so every connector
/// contributes exactly `j` fresh internal vertices, one aux segment.
pub fn connect_with_edges(
    h: &LinkGraph,
    e: &[Vertex],
    f: &[Vertex],
    s: &BTreeSet<Vertex>,
    edge_target: usize,
    budget: &SearchBudget,
) -> Result<Option<TightPath>> {
    let parts = h
        .parts
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("connect needs a partite graph".into()))?;
    let j = parts.len();
    if h.uniformity != j {
        return Err(Error::InvalidArgument(format!(
            "uniformity {} does not match {} parts",
            h.uniformity, j
        )));
    }
    if e.iter().any(|v| s.contains(v)) || f.iter().any(|v| s.contains(v)) {
        return Err(Error::InvalidArgument(
            "path endpoints intersect the forbidden set".into(),
        ));
    }
    let p = VertexPartition::new(parts.clone())?;
    let covers = |set: &[Vertex]| h.edges.iter().any(|edge| set.iter().all(|v| edge.contains(v)));
    if !covers(e) || !covers(f) {
        return Ok(None); // zero co-degree: nothing to connect
    }
    let e_set: BTreeSet<Vertex> = e.iter().copied().collect();
    if f.iter().any(|v| e_set.contains(v)) {
        return Ok(None);
    }
    let internals = match (edge_target + 1).checked_sub(j) {
        Some(x) if x >= 1 => x,
        _ => return Ok(None),
    };
    let tpp = tp_pair(e, f, &p)?;
    if internals % j != (tpp + 1) % j {
        return Ok(None); // length infeasible for these types
    }
    let start_seq = oriented_order(e, &p)?;
    let end_seq = oriented_order(f, &p)?;
    let start_part = (tp(e, &p)?.0) % j; // 0-based index of the part after the missed one
    let mut seq: Vec<Vertex> = start_seq.clone();
    let mut ticker = Ticker::new(budget);
    let found = connector_dfs(
        h, parts, s, &end_seq, j, start_part, internals, &mut seq, &mut ticker,
    );
    if let Some(full) = found {
        return Ok(Some(TightPath::new(j, full)?));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn connector_dfs(
    h: &LinkGraph,
    parts: &[Vec<Vertex>],
    s: &BTreeSet<Vertex>,
    end_seq: &[Vertex],
    j: usize,
    start_part: usize,
    internals_left: usize,
    seq: &mut Vec<Vertex>,
    ticker: &mut Ticker,
) -> Option<Vec<Vertex>> {
    if !ticker.tick() {
        return None;
    }
    let window_ok = |seq: &[Vertex]| -> bool {
        if seq.len() < j {
            return true;
        }
        let mut w: Vec<Vertex> = seq[seq.len() - j..].to_vec();
        w.sort_unstable();
        h.edges.contains(&w)
    };
    if internals_left == 0 {
        // append the forced end order and check the remaining windows
        let mut full = seq.clone();
        for &v in end_seq {
            if full.contains(&v) {
                return None;
            }
            full.push(v);
            if !window_ok(&full) {
                return None;
            }
        }
        return Some(full);
    }
    let part_idx = (start_part + seq.len()) % j;
    for &v in &parts[part_idx] {
        if s.contains(&v) || seq.contains(&v) || end_seq.contains(&v) {
            continue;
        }
        seq.push(v);
        if window_ok(seq) {
            if let Some(full) = connector_dfs(
                h, parts, s, end_seq, j, start_part, internals_left - 1, seq, ticker,
            ) {
                return Some(full);
            }
        }
        seq.pop();
        if ticker.exhausted {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{k_subsets, Edge};
    use crate::tight::{validate_cycle, Conventions};
    use rand::prelude::*;

    fn complete_one_coloured(k: usize, n: usize) -> ColouredHypergraph {
        ColouredHypergraph::new(k, n, 1, k_subsets(n, k).into_iter().map(|e| (e, 1))).unwrap()
    }

    fn random_coloured(k: usize, n: usize, r: usize, seed: u64) -> ColouredHypergraph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<(Edge, Colour)> = k_subsets(n, k)
            .into_iter()
            .map(|e| (e, rng.random_range(1..=r)))
            .collect();
        ColouredHypergraph::new(k, n, r, edges).unwrap()
    }

    #[test]
    fn hamiltonian_on_complete_host() {
        for (k, n) in [(2, 7), (3, 8)] {
            let g = complete_one_coloured(k, n);
            let (c, colour) =
                longest_mono_tight_cycle(&g, &BTreeSet::new(), &SearchBudget::default(), 14)
                    .unwrap();
            assert_eq!(c.seq.len(), n);
            assert!(colour.admits(1));
            assert!(validate_cycle(&g, &c, &Conventions::strict()).is_ok());
        }
    }

    #[test]
    fn edgeless_yields_degenerate() {
        let g = ColouredHypergraph::new(3, 6, 1, vec![]).unwrap();
        let (c, colour) =
            longest_mono_tight_cycle(&g, &BTreeSet::new(), &SearchBudget::default(), 14).unwrap();
        assert!(c.is_degenerate());
        assert_eq!(c.seq, vec![0]);
        assert!(matches!(colour, CycleColour::Any));
    }

    /// Naive oracle: enumerate all vertex subsets and test spannability by
    /// permutation, entirely independent of the DFS kernel.
    fn oracle_longest(g: &ColouredHypergraph) -> usize {
        let n = g.n();
        let k = g.k();
        let mut best = 1;
        let verts: Vec<Vertex> = (0..n).collect();
        for mask in 1u64..(1 << n) {
            let subset: Vec<Vertex> = verts
                .iter()
                .copied()
                .filter(|&v| mask & (1 << v) != 0)
                .collect();
            if subset.len() <= best || subset.len() <= k {
                continue;
            }
            let mut perm = subset.clone();
            let found = permutation_cycle(g, &mut perm, 1);
            if found {
                best = subset.len();
            }
        }
        best
    }

    fn permutation_cycle(g: &ColouredHypergraph, perm: &mut Vec<Vertex>, fixed: usize) -> bool {
        let l = perm.len();
        if fixed == l {
            let cycle = TightCycle::new(g.k(), perm.clone());
            return validate_cycle(g, &cycle, &Conventions::strict()).is_ok();
        }
        for i in fixed..l {
            perm.swap(fixed, i);
            if permutation_cycle(g, perm, fixed + 1) {
                perm.swap(fixed, i);
                return true;
            }
            perm.swap(fixed, i);
        }
        false
    }

    #[test]
    fn longest_matches_exhaustive_oracle() {
        for seed in 0..6u64 {
            let g = random_coloured(3, 9, 2, seed);
            let (c, _) =
                longest_mono_tight_cycle(&g, &BTreeSet::new(), &SearchBudget::default(), 14)
                    .unwrap();
            let expect = oracle_longest(&g);
            let got = if c.is_degenerate() { 1 } else { c.seq.len() };
            assert_eq!(got, expect, "seed {}", seed);
        }
    }

    #[test]
    fn forbidden_vertices_are_avoided() {
        let g = complete_one_coloured(3, 8);
        let forbidden: BTreeSet<Vertex> = [0, 1].into_iter().collect();
        let (c, _) =
            longest_mono_tight_cycle(&g, &forbidden, &SearchBudget::default(), 14).unwrap();
        assert_eq!(c.seq.len(), 6);
        assert!(c.seq.iter().all(|v| !forbidden.contains(v)));
    }

    #[test]
    fn search_is_deterministic() {
        let g = random_coloured(3, 10, 2, 99);
        let a = longest_mono_tight_cycle(&g, &BTreeSet::new(), &SearchBudget::with_seed(1), 8)
            .unwrap();
        let b = longest_mono_tight_cycle(&g, &BTreeSet::new(), &SearchBudget::with_seed(1), 8)
            .unwrap();
        assert_eq!(a.0, b.0);
    }

    #[test]
    fn crown_found_in_complete_host() {
        let g = complete_one_coloured(3, 12);
        let crown = find_mono_crown(&g, 4, &BTreeSet::new(), &SearchBudget::default())
            .unwrap()
            .expect("complete host contains every crown");
        assert!(crown.verify(&g));
        assert_eq!(crown.base.len(), 8);
        assert_eq!(crown.rim.len(), 4);
    }

    #[test]
    fn crown_found_in_itself() {
        let crown = crate::tight::build_crown(3, 4).unwrap();
        let g = crown.as_coloured();
        let found = find_mono_crown(&g, 4, &BTreeSet::new(), &SearchBudget::default())
            .unwrap()
            .expect("a crown embeds into itself");
        assert!(found.verify(&g));
    }

    #[test]
    fn crowns_in_random_hosts_reverify() {
        let mut found_any = false;
        for seed in 0..8u64 {
            let g = random_coloured(3, 12, 2, seed);
            if let Some(crown) =
                find_mono_crown(&g, 2, &BTreeSet::new(), &SearchBudget::default()).unwrap()
            {
                assert!(crown.verify(&g), "seed {}", seed);
                found_any = true;
            }
        }
        assert!(found_any, "no crown found on any seed");
    }

    fn complete_partite_link(parts: &[Vec<Vertex>]) -> LinkGraph {
        let p = VertexPartition::new(parts.to_vec()).unwrap();
        let h = crate::hypergraph::partite_clique_set(&p, parts.len());
        LinkGraph {
            uniformity: parts.len(),
            parts: Some(parts.to_vec()),
            edges: h.edges().cloned().collect(),
        }
    }

    #[test]
    fn connect_in_complete_partite_graph() {
        let parts = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9, 10, 11]];
        let h = complete_partite_link(&parts);
        let p = VertexPartition::new(parts.clone()).unwrap();
        // e misses part 3, f misses part 1: tp_pair = (1 - 3) mod 3 = 1
        let e = vec![0, 4];
        let f = vec![5, 8];
        let target = prescribed_length(&e, &f, &p).unwrap();
        assert_eq!(target, 7); // j = 3, tp = 1 -> 2j + 1
        let path = connect(&h, &e, &f, &BTreeSet::new(), &SearchBudget::default())
            .unwrap()
            .expect("complete partite graphs connect everything");
        assert_eq!(path.edge_count(), target);
        for w in path.windows() {
            let mut w = w.to_vec();
            w.sort_unstable();
            assert!(h.edges.contains(&w));
        }
        // positively oriented: parts in cyclic order
        let part_of = |v: Vertex| parts.iter().position(|p| p.contains(&v)).unwrap();
        for pair in path.seq.windows(2) {
            assert_eq!((part_of(pair[0]) + 1) % 3, part_of(pair[1]));
        }
    }

    #[test]
    fn connect_respects_prescribed_length_at_tp2() {
        let parts = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        let h = complete_partite_link(&parts);
        let p = VertexPartition::new(parts.clone()).unwrap();
        // e misses part 1, f misses part 3: tp_pair = 2 -> length j + 2 = 5
        let e = vec![3, 6];
        let f = vec![1, 4];
        assert_eq!(prescribed_length(&e, &f, &p).unwrap(), 5);
        let path = connect(&h, &e, &f, &BTreeSet::new(), &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(path.edge_count(), 5);
    }

    #[test]
    fn connect_avoids_forbidden_set() {
        let parts = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9, 10, 11]];
        let h = complete_partite_link(&parts);
        let s: BTreeSet<Vertex> = [1, 5, 9].into_iter().collect();
        let e = vec![0, 4];
        let f = vec![6, 8];
        let path = connect(&h, &e, &f, &s, &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert!(path.seq.iter().all(|v| !s.contains(v)));
        // endpoint inside S is a hard error
        let bad: BTreeSet<Vertex> = [0].into_iter().collect();
        assert!(connect(&h, &e, &f, &bad, &SearchBudget::default()).is_err());
    }

    #[test]
    fn connect_random_dense_reverifies() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let parts = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9, 10, 11]];
        let mut successes = 0;
        for _ in 0..20 {
            let full = complete_partite_link(&parts);
            let edges: BTreeSet<Edge> = full
                .edges
                .iter()
                .filter(|_| rng.random_bool(0.9))
                .cloned()
                .collect();
            let h = LinkGraph {
                uniformity: 3,
                parts: Some(parts.clone()),
                edges,
            };
            let e = vec![0, 4];
            let f = vec![5, 8];
            if let Some(path) = connect(&h, &e, &f, &BTreeSet::new(), &SearchBudget::default())
                .unwrap()
            {
                for w in path.windows() {
                    let mut w = w.to_vec();
                    w.sort_unstable();
                    assert!(h.edges.contains(&w));
                }
                successes += 1;
            }
        }
        assert!(successes > 0);
    }

    #[test]
    fn spanning_search_finds_crown_witnesses() {
        let crown = crate::tight::build_crown(3, 2).unwrap();
        let g = crown.as_coloured();
        let verts: BTreeSet<Vertex> = crown.base.iter().copied().collect();
        let (c, _) = spanning_mono_tight_cycle(&g, &verts).expect("base is a cycle");
        assert_eq!(c.vertex_set(), verts);
    }
}
