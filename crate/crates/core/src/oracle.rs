//! Independent brute-force oracles: exhaustive tight-cycle enumeration,
//! exact minimum partition, and exhaustive colouring scans with isomorphism
//! pruning. Deliberately written without the optimized search kernels so
//! the two sides can check each other.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{k_subsets, Colour, ColouredHypergraph, Edge, Vertex};
use crate::tight::{validate_cycle, Conventions, CycleColour, TightCycle};

pub const ENUMERATION_BOUND: usize = 14;
pub const MIN_PARTITION_BOUND: usize = 10;

/// Every non-degenerate monochromatic tight cycle of the host, one
/// representative per rotation/reflection class, each re-validated.
pub fn enumerate_mono_tight_cycles(
    g: &ColouredHypergraph,
    max_len: Option<usize>,
) -> Result<Vec<(TightCycle, Colour)>> {
    if g.n() > ENUMERATION_BOUND {
        return Err(Error::SizeLimit {
            what: "cycle enumeration",
            limit: ENUMERATION_BOUND,
            actual: g.n(),
        });
    }
    let _k = g.k();
    let n = g.n();
    let cap = max_len.unwrap_or(n).min(n);
    let mut out = Vec::new();
    for colour in 1..=g.r() {
        // plain recursive enumeration over vertex sequences: the first
        // vertex is the cycle minimum, the second smaller than the last
        let mut seq: Vec<Vertex> = Vec::new();
        for v0 in 0..n {
            seq.push(v0);
            enumerate_from(g, colour, cap, &mut seq, &mut out);
            seq.pop();
        }
    }
    let conv = Conventions::strict();
    for (cycle, colour) in &out {
        debug_assert_eq!(
            validate_cycle(g, cycle, &conv),
            Ok(CycleColour::Fixed(*colour))
        );
    }
    Ok(out)
}

fn enumerate_from(
    g: &ColouredHypergraph,
    colour: Colour,
    cap: usize,
    seq: &mut Vec<Vertex>,
    out: &mut Vec<(TightCycle, Colour)>,
) {
    let k = g.k();
    let l = seq.len();
    if l > k && seq[1] < seq[l - 1] {
        let closed = (0..l).all(|start| {
            let w: Vec<Vertex> = (0..k).map(|d| seq[(start + d) % l]).collect();
            g.colour_of(&w) == Some(colour)
        });
        if closed {
            out.push((TightCycle::new(k, seq.clone()), colour));
        }
    }
    if l == cap {
        return;
    }
    let v0 = seq[0];
    for v in v0 + 1..g.n() {
        if seq.contains(&v) {
            continue;
        }
        if l + 1 >= k {
            let w: Vec<Vertex> = seq[l + 1 - k..].iter().copied().chain([v]).collect();
            if g.colour_of(&w) != Some(colour) {
                continue;
            }
        }
        seq.push(v);
        enumerate_from(g, colour, cap, seq, out);
        seq.pop();
    }
}

/// Exact minimum number of monochromatic tight cycles partitioning all
/// vertices, with one witness partition, via subset dynamic programming
/// fed by the enumeration oracle.
pub fn min_partition_size(
    g: &ColouredHypergraph,
    conv: &Conventions,
) -> Result<(usize, Vec<(TightCycle, Colour)>)> {
    let n = g.n();
    if n > MIN_PARTITION_BOUND {
        return Err(Error::SizeLimit {
            what: "minimum partition",
            limit: MIN_PARTITION_BOUND,
            actual: n,
        });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let k = g.k();
    // spanning options per vertex-set mask
    let mut options: HashMap<u64, (TightCycle, Colour)> = HashMap::new();
    for (cycle, colour) in enumerate_mono_tight_cycles(g, None)? {
        let mask = cycle.seq.iter().fold(0u64, |m, &v| m | (1 << v));
        options.entry(mask).or_insert((cycle, colour));
    }
    for v in 0..n {
        options.insert(
            1 << v,
            (TightCycle::degenerate(k, v), 1),
        );
    }
    if k == 2 && conv.lehel_edge_cycles {
        for (e, c) in g.coloured_edges() {
            let mask = (1u64 << e[0]) | (1 << e[1]);
            options.entry(mask).or_insert((TightCycle::new(2, e.clone()), c));
        }
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut dp = vec![u32::MAX; (full + 1) as usize];
    let mut choice = vec![0u64; (full + 1) as usize];
    dp[0] = 0;
    for mask in 1..=full {
        let low = mask.trailing_zeros();
        let rest = mask & !(1 << low);
        let mut sub = rest;
        loop {
            let piece = sub | (1 << low);
            if options.contains_key(&piece) {
                let other = dp[(mask & !piece) as usize];
                if other != u32::MAX && other + 1 < dp[mask as usize] {
                    dp[mask as usize] = other + 1;
                    choice[mask as usize] = piece;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut witness = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let piece = choice[mask as usize];
        witness.push(options[&piece].clone());
        mask &= !piece;
    }
    Ok((dp[full as usize] as usize, witness))
}

/// Result of an exhaustive colouring scan.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub k: usize,
    pub r: usize,
    pub n: usize,
    pub lehel: bool,
    pub pruned: bool,
    pub total_colourings: u128,
    pub classes_scanned: u64,
    /// Maximum over all colourings of the minimum partition size.
    pub worst_case: usize,
    /// Lexicographically first colouring attaining the worst case, as the
    /// colour of each k-subset in lex order.
    pub witness: Vec<Colour>,
    pub complete: bool,
}

impl ScanReport {
    /// Re-solves the witness and checks it reproduces the reported count.
    pub fn witness_reproduces(&self) -> Result<bool> {
        let g = ColouredHypergraph::complete_with_colouring(self.k, self.n, self.r, &self.witness)?;
        let conv = if self.lehel {
            Conventions::lehel()
        } else {
            Conventions::strict()
        };
        let (count, _) = min_partition_size(&g, &conv)?;
        Ok(count == self.worst_case)
    }
}

/// Index to colour vector with the first edge as the most significant
/// digit, so ascending indices are ascending colour vectors.
fn colouring_of_index(mut idx: u128, edges: usize, r: usize) -> Vec<Colour> {
    let mut out = vec![1; edges];
    for slot in out.iter_mut().rev() {
        *slot = (idx % r as u128) as usize + 1;
        idx /= r as u128;
    }
    out
}

/// Lexicographically minimal relabelling of a colour vector under vertex
/// permutations.
fn canonical_colouring(
    colours: &[Colour],
    perms: &[Vec<usize>],
    edge_index: &HashMap<Edge, usize>,
    edges: &[Edge],
) -> Vec<Colour> {
    let mut best = colours.to_vec();
    let mut buf = vec![0usize; colours.len()];
    for perm in perms {
        for (i, e) in edges.iter().enumerate() {
            let mut img: Edge = e.iter().map(|&v| perm[v]).collect();
            img.sort_unstable();
            buf[edge_index[&img]] = colours[i];
        }
        if buf.as_slice() < best.as_slice() {
            best.copy_from_slice(&buf);
        }
    }
    best
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation in lexicographic order
        let mut i = n.saturating_sub(1);
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Scans every r-colouring of the complete k-graph on n vertices and
/// records the worst minimum partition size. With pruning, only the
/// lexicographically minimal representative of each isomorphism class is
/// solved; the scan is parallel over colouring indices and merged in
/// canonical order.
pub fn colouring_scan(
    k: usize,
    r: usize,
    n: usize,
    conv: &Conventions,
    prune: bool,
    threads: usize,
    class_budget: u64,
) -> Result<ScanReport> {
    if n > MIN_PARTITION_BOUND || (k == 2 && n > 8) {
        return Err(Error::SizeLimit {
            what: "colouring scan",
            limit: if k == 2 { 8 } else { MIN_PARTITION_BOUND },
            actual: n,
        });
    }
    let edges = k_subsets(n, k);
    let e = edges.len();
    let total: u128 = (r as u128).pow(e as u32);
    if total > u64::MAX as u128 {
        return Err(Error::SizeLimit {
            what: "colouring scan",
            limit: 64,
            actual: e,
        });
    }
    let edge_index: HashMap<Edge, usize> =
        edges.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let perms = permutations(n);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {}", e)))?;

    // each index is evaluated independently: with pruning a colouring is
    // solved only when it equals its own canonical form, so every class is
    // solved exactly once, at its smallest member
    let indices: Vec<u64> = (0..total as u64).collect();
    let solved: Vec<Option<(usize, u64)>> = pool.install(|| {
        indices
            .par_iter()
            .map(|&idx| {
                let colours = colouring_of_index(idx as u128, e, r);
                if prune {
                    let canon = canonical_colouring(&colours, &perms, &edge_index, &edges);
                    if canon != colours {
                        return None;
                    }
                }
                let g = ColouredHypergraph::complete_with_colouring(k, n, r, &colours)
                    .expect("enumerated colouring is valid");
                let (count, _) = min_partition_size(&g, conv).expect("within bound");
                Some((count, idx))
            })
            .collect()
    });
    let mut classes = 0u64;
    let mut worst = 0usize;
    let mut witness_idx = 0u64;
    let mut complete = true;
    for entry in solved.into_iter().flatten() {
        classes += 1;
        if classes > class_budget {
            complete = false;
            break;
        }
        let (count, idx) = entry;
        if count > worst {
            worst = count;
            witness_idx = idx;
        }
    }
    Ok(ScanReport {
        k,
        r,
        n,
        lehel: conv.lehel_edge_cycles,
        pruned: prune,
        total_colourings: total,
        classes_scanned: classes.min(class_budget),
        worst_case: worst,
        witness: colouring_of_index(witness_idx as u128, e, r),
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn complete_one_coloured(k: usize, n: usize) -> ColouredHypergraph {
        ColouredHypergraph::new(k, n, 1, k_subsets(n, k).into_iter().map(|e| (e, 1))).unwrap()
    }

    #[test]
    fn k4_has_three_cycle_classes() {
        let g = complete_one_coloured(3, 4);
        let cycles = enumerate_mono_tight_cycles(&g, None).unwrap();
        assert_eq!(cycles.len(), 3);
        let seqs: BTreeSet<Vec<Vertex>> = cycles.into_iter().map(|(c, _)| c.seq).collect();
        let expect: BTreeSet<Vec<Vertex>> = [
            vec![0, 1, 2, 3],
            vec![0, 1, 3, 2],
            vec![0, 2, 1, 3],
        ]
        .into_iter()
        .collect();
        assert_eq!(seqs, expect);
    }

    #[test]
    fn edgeless_and_single_edge_have_no_cycles() {
        let g = ColouredHypergraph::new(3, 6, 1, vec![]).unwrap();
        assert!(enumerate_mono_tight_cycles(&g, None).unwrap().is_empty());
        let g = ColouredHypergraph::new(3, 6, 1, vec![(vec![0, 1, 2], 1)]).unwrap();
        assert!(enumerate_mono_tight_cycles(&g, None).unwrap().is_empty());
    }

    #[test]
    fn min_partition_examples() {
        let g = complete_one_coloured(3, 7);
        let (count, witness) = min_partition_size(&g, &Conventions::strict()).unwrap();
        assert_eq!(count, 1);
        assert_eq!(witness.len(), 1);

        // 2-coloured K_4 under the graph convention needs at most 2
        for colours in [[1, 1, 2, 2, 1, 2], [1, 2, 1, 2, 1, 2], [2, 2, 2, 1, 1, 1]] {
            let g = ColouredHypergraph::complete_with_colouring(2, 4, 2, &colours).unwrap();
            let (count, _) = min_partition_size(&g, &Conventions::lehel()).unwrap();
            assert!(count <= 2, "colouring {:?} needed {}", colours, count);
        }
    }

    #[test]
    fn scan_single_colour_graphs() {
        for n in 1..=5usize {
            let report =
                colouring_scan(2, 1, n, &Conventions::lehel(), true, 2, u64::MAX).unwrap();
            assert_eq!(report.worst_case, 1, "n={}", n);
            assert!(report.complete);
            assert!(report.witness_reproduces().unwrap());
        }
    }

    #[test]
    fn scan_two_colour_k4() {
        let report = colouring_scan(2, 2, 4, &Conventions::lehel(), true, 2, u64::MAX).unwrap();
        assert!(report.worst_case <= 2);
        assert!(report.witness_reproduces().unwrap());
    }

    #[test]
    fn pruned_and_unpruned_scans_agree() {
        for n in 2..=4usize {
            let a = colouring_scan(2, 2, n, &Conventions::lehel(), true, 2, u64::MAX).unwrap();
            let b = colouring_scan(2, 2, n, &Conventions::lehel(), false, 2, u64::MAX).unwrap();
            assert_eq!(a.worst_case, b.worst_case, "n={}", n);
            assert!(a.classes_scanned <= b.classes_scanned);
        }
    }

    #[test]
    fn scan_deterministic_across_thread_counts() {
        let a = colouring_scan(2, 2, 4, &Conventions::lehel(), true, 1, u64::MAX).unwrap();
        let b = colouring_scan(2, 2, 4, &Conventions::lehel(), true, 4, u64::MAX).unwrap();
        assert_eq!(a.worst_case, b.worst_case);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.classes_scanned, b.classes_scanned);
    }
}
