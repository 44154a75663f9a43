//! Stand-alone combinatorial lemmas: grouping a subset family into 4-blocks
//! with large common intersection, the rotation–extension cycle cover, and
//! the greedy independent transversal.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

pub type OwnerId = usize;

/// A family of subsets of a ground set `{0..ground_size-1}`, each tagged
/// with an owner.
#[derive(Debug, Clone)]
pub struct SubsetFamily {
    pub ground_size: usize,
    pub members: Vec<(OwnerId, BTreeSet<usize>)>,
}

impl SubsetFamily {
    pub fn new(ground_size: usize, members: Vec<(OwnerId, BTreeSet<usize>)>) -> Result<Self> {
        for (owner, m) in &members {
            if let Some(&x) = m.iter().next_back() {
                if x >= ground_size {
                    return Err(Error::InvalidArgument(format!(
                        "member of owner {} contains {} outside the ground set",
                        owner, x
                    )));
                }
            }
        }
        Ok(SubsetFamily {
            ground_size,
            members,
        })
    }
}

/// A 4-element owner group together with its recorded common intersection.
#[derive(Debug, Clone)]
pub struct Block {
    pub owners: Vec<OwnerId>,
    pub intersection: BTreeSet<usize>,
}

#[derive(Debug, Clone)]
pub struct BlockGrouping {
    pub blocks: Vec<Block>,
    pub leftover: Vec<OwnerId>,
}

/// The intersection guarantee of `group_blocks`: eps^4 / 2^6.
pub fn block_delta(eps: Ratio<i64>) -> Ratio<i64> {
    eps * eps * eps * eps / Ratio::from_integer(64)
}

fn ratio_at_least(count: usize, bound: Ratio<i64>) -> bool {
    Ratio::from_integer(count as i64) >= bound
}

/// Greedy maximal matching over an implicit intersection graph: indices
/// are scanned in order and paired with the first later index meeting the
/// threshold. The unmatched indices are pairwise below threshold.
fn threshold_matching(
    sets: &[BTreeSet<usize>],
    threshold: Ratio<i64>,
) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut taken = vec![false; sets.len()];
    let mut pairs = Vec::new();
    for i in 0..sets.len() {
        if taken[i] {
            continue;
        }
        for j in i + 1..sets.len() {
            if taken[j] {
                continue;
            }
            let inter = sets[i].intersection(&sets[j]).count();
            if ratio_at_least(inter, threshold) {
                taken[i] = true;
                taken[j] = true;
                pairs.push((i, j));
                break;
            }
        }
    }
    let unmatched = (0..sets.len()).filter(|&i| !taken[i]).collect();
    (pairs, unmatched)
}

/// Partitions almost all family members into groups of 4 whose common
/// intersection has at least `eps^4/2^6 * m` elements: match members whose
/// pairwise intersection reaches `(eps/2)^2 m`, then match the pair
/// intersections once more at the threshold derived the same way from the
/// first-round guarantee.
pub fn group_blocks(family: &SubsetFamily, eps: Ratio<i64>) -> Result<BlockGrouping> {
    if eps <= Ratio::from_integer(0) || eps > Ratio::from_integer(1) {
        return Err(Error::InvalidArgument(format!("eps = {} out of (0, 1]", eps)));
    }
    let m = family.ground_size as i64;
    let floor = eps * Ratio::from_integer(m);
    for (owner, set) in &family.members {
        if !ratio_at_least(set.len(), floor) {
            return Err(Error::InvalidArgument(format!(
                "member of owner {} has {} elements, below eps*m = {}",
                owner,
                set.len(),
                floor
            )));
        }
    }
    let half = |x: Ratio<i64>| x / Ratio::from_integer(2);
    let lambda1 = half(eps) * half(eps) * Ratio::from_integer(m);
    let sets: Vec<BTreeSet<usize>> = family.members.iter().map(|(_, s)| s.clone()).collect();
    let (pairs, unmatched1) = threshold_matching(&sets, lambda1);

    let eps1 = half(eps) * half(eps); // first-round size guarantee, relative
    let lambda2 = half(eps1) * half(eps1) * Ratio::from_integer(m);
    let pair_sets: Vec<BTreeSet<usize>> = pairs
        .iter()
        .map(|&(i, j)| sets[i].intersection(&sets[j]).copied().collect())
        .collect();
    let (quads, unmatched2) = threshold_matching(&pair_sets, lambda2);

    let mut blocks = Vec::new();
    for &(a, b) in &quads {
        let (i1, j1) = pairs[a];
        let (i2, j2) = pairs[b];
        let mut owners = vec![
            family.members[i1].0,
            family.members[j1].0,
            family.members[i2].0,
            family.members[j2].0,
        ];
        owners.sort_unstable();
        let intersection: BTreeSet<usize> =
            pair_sets[a].intersection(&pair_sets[b]).copied().collect();
        blocks.push(Block {
            owners,
            intersection,
        });
    }
    let mut leftover: Vec<OwnerId> = unmatched1
        .into_iter()
        .map(|i| family.members[i].0)
        .collect();
    for a in unmatched2 {
        let (i, j) = pairs[a];
        leftover.push(family.members[i].0);
        leftover.push(family.members[j].0);
    }
    leftover.sort_unstable();
    Ok(BlockGrouping { blocks, leftover })
}

impl BlockGrouping {
    /// Recomputes every recorded intersection and checks the delta bound.
    pub fn validate(&self, family: &SubsetFamily, eps: Ratio<i64>) -> bool {
        let delta = block_delta(eps) * Ratio::from_integer(family.ground_size as i64);
        let mut seen: BTreeSet<OwnerId> = self.leftover.iter().copied().collect();
        if seen.len() != self.leftover.len() {
            return false;
        }
        for block in &self.blocks {
            if block.owners.len() != 4 {
                return false;
            }
            let mut inter: Option<BTreeSet<usize>> = None;
            for owner in &block.owners {
                if !seen.insert(*owner) {
                    return false;
                }
                let set = match self.find_member(family, *owner) {
                    Some(s) => s,
                    None => return false,
                };
                inter = Some(match inter {
                    None => set.clone(),
                    Some(acc) => acc.intersection(set).copied().collect(),
                });
            }
            let inter = inter.unwrap();
            if inter != block.intersection || !ratio_at_least(inter.len(), delta) {
                return false;
            }
        }
        seen.len() == family.members.len()
    }

    fn find_member<'a>(&self, family: &'a SubsetFamily, owner: OwnerId) -> Option<&'a BTreeSet<usize>> {
        family
            .members
            .iter()
            .find(|(o, _)| *o == owner)
            .map(|(_, s)| s)
    }
}

/// Vertex-disjoint cycles covering every vertex of a graph, at most
/// independence-number many. Single vertices and single edges count as
/// cycles here, per the graph convention.
///
/// Rotation–extension: grow a path greedily, rotate to reach extendable
/// endpoints, and close the cycle at the earliest neighbour of the final
/// endpoint. All neighbours of that endpoint lie on the closed part, which
/// is what bounds the number of pieces by the independence number.
pub fn posa_cycle_cover(g: &Hypergraph) -> Result<Vec<Vec<Vertex>>> {
    if g.k() != 2 {
        return Err(Error::InvalidArgument(format!(
            "cycle cover expects a graph, got uniformity {}",
            g.k()
        )));
    }
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for e in g.edges() {
        adj[e[0]].insert(e[1]);
        adj[e[1]].insert(e[0]);
    }
    let mut remaining: BTreeSet<Vertex> = (0..n).collect();
    let mut cycles = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut path = vec![start];
        let mut on_path: BTreeSet<Vertex> = [start].into_iter().collect();
        loop {
            // extend at the tail while possible
            loop {
                let tail = *path.last().unwrap();
                let next = adj[tail]
                    .iter()
                    .copied()
                    .find(|v| remaining.contains(v) && !on_path.contains(v));
                match next {
                    Some(v) => {
                        path.push(v);
                        on_path.insert(v);
                    }
                    None => break,
                }
            }
            // rotation phase: breadth-first over endpoints reachable by
            // Pósa rotations, looking for one with an off-path neighbour
            let mut seen_tails: BTreeSet<Vertex> = [*path.last().unwrap()].into_iter().collect();
            let mut queue: Vec<Vec<Vertex>> = vec![path.clone()];
            let mut extended = None;
            'bfs: while let Some(p) = queue.pop() {
                let tail = *p.last().unwrap();
                for &u in adj[tail].iter() {
                    if !remaining.contains(&u) || !on_path.contains(&u) {
                        continue;
                    }
                    let pos = p.iter().position(|&x| x == u).unwrap();
                    if pos + 1 >= p.len() {
                        continue;
                    }
                    // rotate: reverse the segment after u
                    let mut rotated = p[..=pos].to_vec();
                    rotated.extend(p[pos + 1..].iter().rev());
                    let new_tail = *rotated.last().unwrap();
                    if !seen_tails.insert(new_tail) {
                        continue;
                    }
                    let can_extend = adj[new_tail]
                        .iter()
                        .any(|v| remaining.contains(v) && !on_path.contains(v));
                    if can_extend {
                        extended = Some(rotated);
                        break 'bfs;
                    }
                    queue.push(rotated);
                }
            }
            match extended {
                Some(p) => path = p,
                None => break,
            }
        }
        // close at the earliest neighbour of the tail; every neighbour of
        // the tail is on the path, so the cycle swallows them all
        let tail = *path.last().unwrap();
        let close_at = path
            .iter()
            .position(|v| adj[tail].contains(v) && *v != tail)
            .unwrap_or(path.len() - 1);
        let cycle: Vec<Vertex> = path[close_at..].to_vec();
        for &v in &cycle {
            remaining.remove(&v);
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Opens each cycle of the cover into a path (identity on degenerate
/// pieces); the auxiliary block graph of the absorption pipeline is covered
/// this way.
pub fn posa_path_cover(g: &Hypergraph) -> Result<Vec<Vec<Vertex>>> {
    posa_cycle_cover(g)
}

/// Checks that a cycle cover is an exact partition into valid cycles.
pub fn cycle_cover_is_valid(g: &Hypergraph, cover: &[Vec<Vertex>]) -> bool {
    let mut seen = BTreeSet::new();
    for cycle in cover {
        match cycle.len() {
            0 => return false,
            1 => {}
            2 => {
                if !g.contains(&[cycle[0], cycle[1]]) {
                    return false;
                }
            }
            l => {
                for i in 0..l {
                    if !g.contains(&[cycle[i], cycle[(i + 1) % l]]) {
                        return false;
                    }
                }
            }
        }
        for &v in cycle {
            if !seen.insert(v) {
                return false;
            }
        }
    }
    seen.len() == g.n()
}

/// Outcome of the greedy independent transversal construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransversalOutcome {
    /// One vertex per block, spanning no edge.
    Found(Vec<Vertex>),
    /// Checked mode only: the link hypothesis fails at this witness.
    HypothesisViolation {
        block: usize,
        lower_blocks: Vec<usize>,
        vertex: Vertex,
        link_count: usize,
    },
    /// Unchecked mode only: every candidate of the named block was bad.
    Stuck { block: usize },
}

/// Greedy independent transversal: picks `v_m .. v_1` descending, always
/// avoiding the bad sets — vertices whose partial links with the already
/// chosen vertices are too dense, and neighbourhoods of chosen tuples.
/// With `checked` the link hypothesis (at eps = m^{-(k-1)^2}) is verified
/// first; without it the greedy may get stuck and reports where.
pub fn independent_transversal(
    h: &Hypergraph,
    blocks: &[Vec<Vertex>],
    checked: bool,
) -> Result<TransversalOutcome> {
    let k = h.k();
    let m = blocks.len();
    if m == 0 {
        return Ok(TransversalOutcome::Found(Vec::new()));
    }
    let mut seen = BTreeSet::new();
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidArgument("empty block".into()));
        }
        for &v in b {
            if v >= h.n() || !seen.insert(v) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} repeated across blocks or out of range",
                    v
                )));
            }
        }
    }
    let m_i64 = m as i64;
    let pow = |e: u32| -> Result<i64> {
        m_i64
            .checked_pow(e)
            .ok_or_else(|| Error::InvalidArgument("block count too large for exact bounds".into()))
    };
    let delta = Ratio::new(1, pow((k - 1) as u32)?);
    let eps = Ratio::new(1, pow(((k - 1) * (k - 1)) as u32)?);

    // count of edges through `pins` whose remainder is a transversal of the
    // listed blocks (one vertex in each, nothing elsewhere)
    let link_count = |pins: &[Vertex], parts: &[&Vec<Vertex>]| -> usize {
        h.edges()
            .filter(|e| {
                if !pins.iter().all(|p| e.binary_search(p).is_ok()) {
                    return false;
                }
                let rest: Vec<Vertex> =
                    e.iter().copied().filter(|v| !pins.contains(v)).collect();
                if rest.len() != parts.len() {
                    return false;
                }
                let mut used = vec![false; parts.len()];
                rest.iter().all(|v| {
                    match parts.iter().position(|p| p.binary_search(v).is_ok()) {
                        Some(i) if !used[i] => {
                            used[i] = true;
                            true
                        }
                        _ => false,
                    }
                })
            })
            .count()
    };

    if checked && m >= k {
        for i in k..=m {
            for combo in crate::hypergraph::k_subsets(i - 1, k - 1) {
                let parts: Vec<&Vec<Vertex>> = combo.iter().map(|&x| &blocks[x]).collect();
                let prod: i64 = parts.iter().map(|p| p.len() as i64).product();
                let bound = eps * Ratio::from_integer(prod);
                for &v in &blocks[i - 1] {
                    let cnt = link_count(&[v], &parts);
                    if Ratio::from_integer(cnt as i64) > bound {
                        return Ok(TransversalOutcome::HypothesisViolation {
                            block: i,
                            lower_blocks: combo.iter().map(|&x| x + 1).collect(),
                            vertex: v,
                            link_count: cnt,
                        });
                    }
                }
            }
        }
    }

    let mut chosen: Vec<Option<Vertex>> = vec![None; m];
    for j in (1..=m).rev() {
        let mut bad: BTreeSet<Vertex> = BTreeSet::new();
        // tuples i_1 < .. < i_{s-1} < j < i_{s+1} < .. < i_k with pins from
        // the already chosen upper indices
        for s in 1..k.min(m + 1) {
            let uppers_needed = k - s;
            let lowers_needed = s - 1;
            if lowers_needed > j - 1 {
                continue;
            }
            let upper_pool: Vec<usize> = (j + 1..=m).collect();
            if uppers_needed > upper_pool.len() {
                continue;
            }
            for upper_combo in crate::hypergraph::k_subsets(upper_pool.len(), uppers_needed) {
                let pins: Vec<Vertex> = upper_combo
                    .iter()
                    .map(|&x| chosen[upper_pool[x] - 1].unwrap())
                    .collect();
                for lower_combo in crate::hypergraph::k_subsets(j - 1, lowers_needed) {
                    let parts: Vec<&Vec<Vertex>> =
                        lower_combo.iter().map(|&x| &blocks[x]).collect();
                    if s == 1 {
                        // direct neighbourhood of the pinned tuple in B_j
                        for &u in &blocks[j - 1] {
                            let mut e: Vec<Vertex> = pins.clone();
                            e.push(u);
                            e.sort_unstable();
                            if e.len() == k && h.contains(&e) {
                                bad.insert(u);
                            }
                        }
                    } else {
                        let prod: i64 = parts.iter().map(|p| p.len() as i64).product();
                        let threshold =
                            eps / pow_ratio(delta, (k - s) as u32) * Ratio::from_integer(prod);
                        for &u in &blocks[j - 1] {
                            let mut all_pins = pins.clone();
                            all_pins.push(u);
                            let cnt = link_count(&all_pins, &parts);
                            if Ratio::from_integer(cnt as i64) >= threshold {
                                bad.insert(u);
                            }
                        }
                    }
                }
            }
        }
        if checked {
            debug_assert!(
                Ratio::from_integer(bad.len() as i64)
                    < Ratio::from_integer(blocks[j - 1].len() as i64),
                "bad sets swallowed block {}",
                j
            );
        }
        match blocks[j - 1].iter().find(|v| !bad.contains(v)) {
            Some(&v) => chosen[j - 1] = Some(v),
            None => {
                if checked {
                    return Err(Error::Internal(format!(
                        "greedy transversal stuck at block {} despite verified hypothesis",
                        j
                    )));
                }
                return Ok(TransversalOutcome::Stuck { block: j });
            }
        }
    }
    let out: Vec<Vertex> = chosen.into_iter().map(|v| v.unwrap()).collect();
    Ok(TransversalOutcome::Found(out))
}

fn pow_ratio(x: Ratio<i64>, e: u32) -> Ratio<i64> {
    let mut acc = Ratio::from_integer(1);
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// True iff `transversal` meets each block exactly once and spans no edge.
pub fn transversal_is_independent(
    h: &Hypergraph,
    blocks: &[Vec<Vertex>],
    transversal: &[Vertex],
) -> bool {
    if transversal.len() != blocks.len() {
        return false;
    }
    for (b, &v) in blocks.iter().zip(transversal) {
        if !b.contains(&v) {
            return false;
        }
    }
    let set: BTreeSet<Vertex> = transversal.iter().copied().collect();
    if set.len() != transversal.len() {
        return false;
    }
    for combo in crate::hypergraph::k_subsets(transversal.len(), h.k()) {
        let e: Vec<Vertex> = combo.iter().map(|&i| transversal[i]).collect();
        if h.contains(&e) {
            return false;
        }
    }
    true
}
