//! The absorption pipeline: cover a densely linked part by boundedly many
//! monochromatic tight cycles, via colour splitting, grouping the link
//! graphs into 4-blocks, covering the block graph by paths, choosing shared
//! edges and fixed-length connectors, and lifting the assembled auxiliary
//! cycle with one rim vertex per segment.
//!
//! Every stage that misses a density or search target aborts with a
//! structured soft failure so the caller can fall back; nothing degrades
//! silently.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, Soft, SoftFailure};
use crate::hypergraph::{link_graph, Colour, ColouredHypergraph, Edge, Hypergraph, LinkGraph, Vertex};
use crate::lemmas::{group_blocks, posa_path_cover, SubsetFamily};
use crate::search::{connect_with_edges, SearchBudget};
use crate::tight::{lift_cycle, TightCycle, TightPath};

/// Density thresholds and budgets for one absorption run, mirroring the
/// chain gamma << delta3 << delta2 << delta1 << eps.
#[derive(Debug, Clone)]
pub struct AbsorptionConfig {
    /// Link density floor of the target part.
    pub eps: Ratio<i64>,
    /// Minimum block intersection density.
    pub delta1: Ratio<i64>,
    /// Path-cover budget: at most 2/delta2 paths.
    pub delta2: Ratio<i64>,
    /// Block graph adjacency threshold.
    pub delta3: Ratio<i64>,
    /// Size ratio: |B_k| <= gamma * min |B_i|.
    pub gamma: Ratio<i64>,
    pub split_retries: u32,
    pub connector_budget: SearchBudget,
}

impl AbsorptionConfig {
    pub fn defaults_for(k: usize, r: usize) -> Self {
        let eps = Ratio::new(1, (4 * r * k) as i64);
        let two = Ratio::from_integer(2);
        AbsorptionConfig {
            eps,
            delta1: eps / two,
            delta2: eps / (two * two),
            delta3: eps / (two * two * two),
            gamma: eps / (two * two * two * two),
            split_retries: 64,
            connector_budget: SearchBudget::default(),
        }
    }

    /// A permissive configuration for dense, hand-built instances.
    pub fn generous() -> Self {
        AbsorptionConfig {
            eps: Ratio::new(15, 16),
            delta1: Ratio::new(7, 8),
            delta2: Ratio::new(3, 4),
            delta3: Ratio::new(5, 8),
            gamma: Ratio::new(1, 2),
            split_retries: 64,
            connector_budget: SearchBudget::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Ratio::from_integer(0);
        if !(zero < self.gamma
            && self.gamma < self.delta3
            && self.delta3 < self.delta2
            && self.delta2 < self.delta1
            && self.delta1 < self.eps)
        {
            return Err(Error::InvalidArgument(format!(
                "threshold chain violated: need 0 < {} < {} < {} < {} < {}",
                self.gamma, self.delta3, self.delta2, self.delta1, self.eps
            )));
        }
        Ok(())
    }
}

/// One colour's sub-instance after splitting.
#[derive(Debug, Clone)]
pub struct ColourClassInstance {
    pub colour: Colour,
    pub parts: Vec<Vec<Vertex>>,
    pub targets: Vec<Vertex>,
    /// Link floor every target is re-verified at: eps / (2r).
    pub floor: Ratio<i64>,
}

fn link_count(
    g: &ColouredHypergraph,
    v: Vertex,
    parts: &[Vec<Vertex>],
    colour: Option<Colour>,
) -> Result<usize> {
    Ok(link_graph(g, &[v], Some(parts), colour)?.edge_count())
}

fn parts_product(parts: &[Vec<Vertex>]) -> i64 {
    parts.iter().map(|p| p.len() as i64).product()
}

/// Splits the target part by majority link colour and the other parts into
/// r near-equal pieces so every target keeps link density eps/(2r) into its
/// own piece, retrying seeded random splits until it works.
pub fn colour_split(
    g: &ColouredHypergraph,
    parts: &[Vec<Vertex>],
    targets: &[Vertex],
    eps: Ratio<i64>,
    retries: u32,
    seed: u64,
) -> Result<Soft<Vec<ColourClassInstance>>> {
    let k = g.k();
    let r = g.r();
    if parts.len() != k - 1 {
        return Err(Error::InvalidArgument(format!(
            "{} parts for uniformity {}",
            parts.len(),
            k
        )));
    }
    let prod = parts_product(parts);
    let full_floor = eps * Ratio::from_integer(prod);
    let class_floor = eps / Ratio::from_integer(r as i64);
    // majority colour per target
    let mut by_colour: Vec<Vec<Vertex>> = vec![Vec::new(); r];
    for &v in targets {
        let total = link_count(g, v, parts, None)?;
        if Ratio::from_integer(total as i64) < full_floor {
            return Err(Error::HypothesisViolation(format!(
                "target {} has link count {} below eps * product = {}",
                v, total, full_floor
            )));
        }
        let mut picked = None;
        for c in 1..=r {
            let cnt = link_count(g, v, parts, Some(c))?;
            if Ratio::from_integer(cnt as i64) >= class_floor * Ratio::from_integer(prod) {
                picked = Some(c);
                break;
            }
        }
        match picked {
            Some(c) => by_colour[c - 1].push(v),
            // impossible when the total meets the floor, by pigeonhole
            None => {
                return Err(Error::HypothesisViolation(format!(
                    "no colour of target {} reaches eps/r",
                    v
                )))
            }
        }
    }
    if r == 1 {
        return Ok(Ok(vec![ColourClassInstance {
            colour: 1,
            parts: parts.to_vec(),
            targets: by_colour[0].clone(),
            floor: eps / Ratio::from_integer(2),
        }]));
    }
    let half_floor = eps / Ratio::from_integer(2 * r as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'retry: for _ in 0..retries.max(1) {
        // split each part into r near-equal pieces
        let mut pieces: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(parts.len());
        for p in parts {
            let mut shuffled = p.clone();
            shuffled.shuffle(&mut rng);
            let mut split: Vec<Vec<Vertex>> = vec![Vec::new(); r];
            for (i, v) in shuffled.into_iter().enumerate() {
                split[i % r].push(v);
            }
            for s in split.iter_mut() {
                s.sort_unstable();
            }
            pieces.push(split);
        }
        let mut out = Vec::with_capacity(r);
        for c in 1..=r {
            let class_parts: Vec<Vec<Vertex>> =
                pieces.iter().map(|split| split[c - 1].clone()).collect();
            if class_parts.iter().any(|p| p.is_empty()) {
                continue 'retry;
            }
            let class_prod = parts_product(&class_parts);
            for &v in &by_colour[c - 1] {
                let cnt = link_count(g, v, &class_parts, Some(c))?;
                if Ratio::from_integer(cnt as i64)
                    < half_floor * Ratio::from_integer(class_prod)
                {
                    continue 'retry;
                }
            }
            out.push(ColourClassInstance {
                colour: c,
                parts: class_parts,
                targets: by_colour[c - 1].clone(),
                floor: half_floor,
            });
        }
        return Ok(Ok(out));
    }
    Ok(Err(SoftFailure::new(
        "colour-split",
        format!("no admissible split of the parts after {} retries", retries),
    )))
}

/// The assembled plan for one path of blocks: shared edges, fixed-length
/// connectors, the auxiliary cycle and its rim labelling.
#[derive(Debug, Clone)]
pub struct BlockPathPlan {
    pub colour: Colour,
    /// Owners of each block along the path, 4 per block.
    pub block_owners: Vec<Vec<Vertex>>,
    /// e_0 .. e_t, each ordered by part.
    pub shared_edges: Vec<Vec<Vertex>>,
    /// e'_1 .. e'_{t-1}, each ordered by part.
    pub return_edges: Vec<Vec<Vertex>>,
    /// P_1 .. P_t.
    pub forward_connectors: Vec<TightPath>,
    /// Q_1 .. Q_t.
    pub return_connectors: Vec<TightPath>,
    pub aux_seq: Vec<Vertex>,
    pub rim: Vec<Vertex>,
}

#[derive(Debug, Clone)]
pub struct AbsorptionOutcome {
    /// Lifted cycles, in path order.
    pub lifted: Vec<(TightCycle, Colour)>,
    /// Targets covered as degenerate single-vertex cycles.
    pub singletons: Vec<Vertex>,
    pub plans: Vec<BlockPathPlan>,
}

impl AbsorptionOutcome {
    /// Every target is either on a lifted cycle or an explicit singleton.
    pub fn covers(&self, targets: &[Vertex]) -> bool {
        let mut covered: BTreeSet<Vertex> = self.singletons.iter().copied().collect();
        for plan in &self.plans {
            covered.extend(plan.rim.iter().copied());
        }
        targets.iter().all(|v| covered.contains(v))
    }
}

/// Covers the target part by vertex-disjoint monochromatic tight cycles
/// drawn from the parts and the targets, or reports which stage failed.
pub fn absorb_cover(
    g: &ColouredHypergraph,
    parts: &[Vec<Vertex>],
    targets: &[Vertex],
    config: &AbsorptionConfig,
    seed: u64,
) -> Result<Soft<AbsorptionOutcome>> {
    config.validate()?;
    let k = g.k();
    if k < 2 {
        return Err(Error::InvalidArgument("uniformity below 2".into()));
    }
    if parts.len() != k - 1 {
        return Err(Error::InvalidArgument(format!(
            "{} parts for uniformity {}",
            parts.len(),
            k
        )));
    }
    let mut outcome = AbsorptionOutcome {
        lifted: Vec::new(),
        singletons: Vec::new(),
        plans: Vec::new(),
    };
    if targets.is_empty() {
        return Ok(Ok(outcome));
    }
    let min_part = parts.iter().map(|p| p.len()).min().unwrap_or(0) as i64;
    if Ratio::from_integer(targets.len() as i64)
        > config.gamma * Ratio::from_integer(min_part)
    {
        return Ok(Err(SoftFailure::new(
            "size-ratio",
            format!(
                "{} targets exceed gamma * min part = {} * {}",
                targets.len(),
                config.gamma,
                min_part
            ),
        )));
    }
    let classes = match colour_split(g, parts, targets, config.eps, config.split_retries, seed)? {
        Ok(c) => c,
        Err(soft) => return Ok(Err(soft)),
    };
    for class in classes {
        match mono_cover(g, &class, config)? {
            Ok(mut part_outcome) => {
                outcome.lifted.append(&mut part_outcome.lifted);
                outcome.singletons.append(&mut part_outcome.singletons);
                outcome.plans.append(&mut part_outcome.plans);
            }
            Err(soft) => return Ok(Err(soft)),
        }
    }
    Ok(Ok(outcome))
}

/// The single-colour pipeline: blocks, path cover, plans, lifts.
fn mono_cover(
    g: &ColouredHypergraph,
    class: &ColourClassInstance,
    config: &AbsorptionConfig,
) -> Result<Soft<AbsorptionOutcome>> {
    let _k = g.k();
    let mut outcome = AbsorptionOutcome {
        lifted: Vec::new(),
        singletons: Vec::new(),
        plans: Vec::new(),
    };
    if class.targets.is_empty() {
        return Ok(Ok(outcome));
    }
    // ground set: all transversal (k-1)-tuples of the parts, in lex order
    let ground = transversal_tuples(&class.parts);
    let ground_index: HashMap<Edge, usize> = ground
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let m_ground = ground.len();
    let mut members = Vec::with_capacity(class.targets.len());
    for &v in &class.targets {
        let lk = link_graph(g, &[v], Some(&class.parts), Some(class.colour))?;
        let idx: BTreeSet<usize> = lk.edges.iter().map(|e| ground_index[e]).collect();
        if Ratio::from_integer(idx.len() as i64)
            < class.floor * Ratio::from_integer(m_ground as i64)
        {
            return Ok(Err(SoftFailure::new(
                "link-floor",
                format!("target {} fell below the class link floor", v),
            )));
        }
        members.push((v, idx));
    }
    let family = SubsetFamily::new(m_ground, members)?;
    let grouping = group_blocks(&family, class.floor)?;
    outcome.singletons.extend(grouping.leftover.iter().copied());
    if grouping.blocks.is_empty() {
        // fewer than four usable owners: everything becomes a singleton
        return Ok(Ok(outcome));
    }
    let delta1_bound = config.delta1 * Ratio::from_integer(m_ground as i64);
    for block in &grouping.blocks {
        if Ratio::from_integer(block.intersection.len() as i64) < delta1_bound {
            return Ok(Err(SoftFailure::new(
                "block-intersection",
                format!(
                    "block {:?} intersection {} below delta1 bound {}",
                    block.owners,
                    block.intersection.len(),
                    delta1_bound
                ),
            )));
        }
    }
    // block edge sets as (k-1)-tuples
    let block_edges: Vec<BTreeSet<Edge>> = grouping
        .blocks
        .iter()
        .map(|b| b.intersection.iter().map(|&i| ground[i].clone()).collect())
        .collect();
    // auxiliary block graph and its path cover
    let b = grouping.blocks.len();
    let delta3_bound = config.delta3 * Ratio::from_integer(m_ground as i64);
    let mut graph_edges = Vec::new();
    for i in 0..b {
        for j in i + 1..b {
            let common = block_edges[i].intersection(&block_edges[j]).count();
            if Ratio::from_integer(common as i64) >= delta3_bound {
                graph_edges.push(vec![i, j]);
            }
        }
    }
    let block_graph = Hypergraph::new(2, b, graph_edges)?;
    let paths = posa_path_cover(&block_graph)?;
    let path_budget = Ratio::from_integer(2) / config.delta2;
    if Ratio::from_integer(paths.len() as i64) > path_budget {
        return Ok(Err(SoftFailure::new(
            "path-count",
            format!("{} paths exceed 2/delta2 = {}", paths.len(), path_budget),
        )));
    }
    let mut reserved: BTreeSet<Vertex> = BTreeSet::new();
    for path in paths {
        let owners: Vec<Vec<Vertex>> = path
            .iter()
            .map(|&bi| grouping.blocks[bi].owners.clone())
            .collect();
        let edges_along: Vec<&BTreeSet<Edge>> = path.iter().map(|&bi| &block_edges[bi]).collect();
        let plan = match build_plan(g, class, config, &edges_along, &owners, &reserved)? {
            Ok(p) => p,
            Err(soft) => return Ok(Err(soft)),
        };
        let cycle = match lift_cycle(g, &class.parts, &plan.aux_seq, &plan.rim, class.colour) {
            Ok(c) => c,
            Err(e) => {
                return Ok(Err(SoftFailure::new(
                    "lift",
                    format!("assembled plan failed lifting: {}", e),
                )))
            }
        };
        reserved.extend(plan.aux_seq.iter().copied());
        reserved.extend(plan.rim.iter().copied());
        outcome.lifted.push((cycle, class.colour));
        outcome.plans.push(plan);
    }
    Ok(Ok(outcome))
}

fn transversal_tuples(parts: &[Vec<Vertex>]) -> Vec<Edge> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; parts.len()];
    if parts.iter().any(|p| p.is_empty()) {
        return out;
    }
    'outer: loop {
        let mut e: Edge = idx.iter().zip(parts).map(|(&i, p)| p[i]).collect();
        e.sort_unstable();
        out.push(e);
        let mut pos = parts.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < parts[pos].len() {
                break;
            }
            idx[pos] = 0;
            if pos == 0 {
                break 'outer;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Orders a transversal edge by part index.
fn by_part(parts: &[Vec<Vertex>], e: &Edge) -> Vec<Vertex> {
    let mut out = vec![0; e.len()];
    for &v in e {
        let i = parts.iter().position(|p| p.contains(&v)).unwrap();
        out[i] = v;
    }
    out
}

/// Picks the lexicographically first edge of `pool` whose vertices avoid
/// `used`.
fn pick_edge(pool: &BTreeSet<Edge>, used: &BTreeSet<Vertex>) -> Option<Edge> {
    pool.iter()
        .find(|e| e.iter().all(|v| !used.contains(v)))
        .cloned()
}

#[allow(clippy::too_many_arguments)]
fn build_plan(
    g: &ColouredHypergraph,
    class: &ColourClassInstance,
    config: &AbsorptionConfig,
    edges_along: &[&BTreeSet<Edge>],
    owners: &[Vec<Vertex>],
    reserved: &BTreeSet<Vertex>,
) -> Result<Soft<BlockPathPlan>> {
    let k = g.k();
    let j = k - 1; // auxiliary uniformity
    let t = edges_along.len();
    let mut used: BTreeSet<Vertex> = reserved.clone();

    // shared edges e_0..e_t: e_0 in the first block, e_s in consecutive
    // intersections, e_t in the last block, all pairwise disjoint
    let mut shared: Vec<Edge> = Vec::with_capacity(t + 1);
    for s in 0..=t {
        let pool: BTreeSet<Edge> = if s == 0 {
            edges_along[0].clone()
        } else if s == t {
            edges_along[t - 1].clone()
        } else {
            edges_along[s - 1]
                .intersection(edges_along[s])
                .cloned()
                .collect()
        };
        match pick_edge(&pool, &used) {
            Some(e) => {
                used.extend(e.iter().copied());
                shared.push(e);
            }
            None => {
                return Ok(Err(SoftFailure::new(
                    "edge-choice",
                    format!("no unreserved shared edge between blocks {} and {}", s, s + 1),
                )))
            }
        }
    }
    // return edges e'_1..e'_{t-1}
    let mut returns: Vec<Edge> = Vec::with_capacity(t.saturating_sub(1));
    for s in 1..t {
        let pool: BTreeSet<Edge> = edges_along[s - 1]
            .intersection(edges_along[s])
            .cloned()
            .collect();
        match pick_edge(&pool, &used) {
            Some(e) => {
                used.extend(e.iter().copied());
                returns.push(e);
            }
            None => {
                return Ok(Err(SoftFailure::new(
                    "edge-choice",
                    format!("no unreserved return edge between blocks {} and {}", s, s + 1),
                )))
            }
        }
    }
    let seg_of = |e: &Edge| by_part(&class.parts, e);
    // e'_0 = e_0 and e'_t = e_t
    let return_seg = |s: usize| -> Vec<Vertex> {
        if s == 0 {
            seg_of(&shared[0])
        } else if s == t {
            seg_of(&shared[t])
        } else {
            seg_of(&returns[s - 1])
        }
    };

    let connector_len = 2 * j - 1; // j fresh internal vertices, one segment
    let connect_between = |from: &Edge,
                               to: &Edge,
                               block: usize,
                               used: &mut BTreeSet<Vertex>|
     -> Result<Soft<TightPath>> {
        let h = LinkGraph {
            uniformity: j,
            parts: Some(class.parts.clone()),
            edges: edges_along[block].clone(),
        };
        let from_seg = seg_of(from);
        let to_seg = seg_of(to);
        let e: Vec<Vertex> = from_seg[1..].to_vec(); // drop the first part
        let f: Vec<Vertex> = to_seg[..j - 1].to_vec(); // drop the last part
        let avoid: BTreeSet<Vertex> = used
            .iter()
            .copied()
            .filter(|v| !e.contains(v) && !f.contains(v))
            .collect();
        match connect_with_edges(&h, &e, &f, &avoid, connector_len, &config.connector_budget)? {
            Some(path) => {
                used.extend(path.seq.iter().copied());
                Ok(Ok(path))
            }
            None => Ok(Err(SoftFailure::new(
                "connector",
                format!("no length-{} connector inside block {}", connector_len, block + 1),
            ))),
        }
    };

    let mut forward: Vec<TightPath> = Vec::with_capacity(t);
    for s in 1..=t {
        match connect_between(&shared[s - 1], &shared[s], s - 1, &mut used)? {
            Ok(p) => forward.push(p),
            Err(soft) => return Ok(Err(soft)),
        }
    }
    let mut backward: Vec<Option<TightPath>> = vec![None; t];
    for s in (1..=t).rev() {
        let from = if s == t { shared[t].clone() } else { returns[s - 1].clone() };
        let to = if s == 1 { shared[0].clone() } else { returns[s - 2].clone() };
        match connect_between(&from, &to, s - 1, &mut used)? {
            Ok(p) => backward[s - 1] = Some(p),
            Err(soft) => return Ok(Err(soft)),
        }
    }
    let backward: Vec<TightPath> = backward.into_iter().map(|p| p.unwrap()).collect();

    // assemble the 4t segments of the auxiliary cycle
    let internals = |p: &TightPath| -> Vec<Vertex> { p.seq[j - 1..2 * j - 1].to_vec() };
    let mut aux_seq: Vec<Vertex> = Vec::with_capacity(4 * t * j);
    aux_seq.extend(seg_of(&shared[0]));
    for s in 1..=t {
        aux_seq.extend(internals(&forward[s - 1]));
        aux_seq.extend(seg_of(&shared[s]));
    }
    for s in (1..=t).rev() {
        aux_seq.extend(internals(&backward[s - 1]));
        if s > 1 {
            aux_seq.extend(return_seg(s - 1));
        }
    }
    debug_assert_eq!(aux_seq.len(), 4 * t * j);

    // rim labelling: block i+1 owns slots 2i+1, 2i+2 (forward) and
    // 4t-2i-1, 4t-2i (backward); owners are assigned to their slots in
    // ascending order
    let mut rim: Vec<Vertex> = vec![0; 4 * t];
    for (i, block_owner) in owners.iter().enumerate() {
        if block_owner.len() != 4 {
            return Err(Error::Internal(format!(
                "block {} has {} owners, expected 4",
                i + 1,
                block_owner.len()
            )));
        }
        let mut slots = [2 * i + 1, 2 * i + 2, 4 * t - 2 * i - 1, 4 * t - 2 * i];
        slots.sort_unstable();
        let mut sorted = block_owner.clone();
        sorted.sort_unstable();
        for (slot, owner) in slots.iter().zip(sorted) {
            rim[slot - 1] = owner;
        }
    }

    Ok(Ok(BlockPathPlan {
        colour: class.colour,
        block_owners: owners.to_vec(),
        shared_edges: shared.iter().map(seg_of).collect(),
        return_edges: returns.iter().map(seg_of).collect(),
        forward_connectors: forward,
        return_connectors: backward,
        aux_seq,
        rim,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tight::{validate_cycle, Conventions};

    /// A complete partite 1-coloured instance: parts of the given sizes,
    /// then the target part.
    fn complete_partite(k: usize, part_size: usize, targets: usize) -> (ColouredHypergraph, Vec<Vec<Vertex>>, Vec<Vertex>) {
        let mut parts: Vec<Vec<Vertex>> = Vec::new();
        let mut next = 0;
        for _ in 0..k - 1 {
            parts.push((next..next + part_size).collect());
            next += part_size;
        }
        let target: Vec<Vertex> = (next..next + targets).collect();
        next += targets;
        let mut edges = Vec::new();
        for tup in transversal_tuples(&parts) {
            for &v in &target {
                let mut e = tup.clone();
                e.push(v);
                e.sort_unstable();
                edges.push((e, 1));
            }
        }
        let g = ColouredHypergraph::new(k, next, 1, edges).unwrap();
        (g, parts, target)
    }

    #[test]
    fn colour_split_identity_for_one_colour() {
        let (g, parts, target) = complete_partite(3, 6, 2);
        let out = colour_split(&g, &parts, &target, Ratio::new(1, 2), 8, 0)
            .unwrap()
            .unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].parts, parts);
        assert_eq!(out[0].targets, target);
    }

    #[test]
    fn colour_split_empty_class_when_one_colour_missing() {
        // two colours declared, all edges coloured 1
        let (g1, parts, target) = complete_partite(3, 6, 2);
        let edges: Vec<(Edge, Colour)> = g1
            .coloured_edges()
            .map(|(e, _)| (e.clone(), 1))
            .collect();
        let g = ColouredHypergraph::new(3, g1.n(), 2, edges).unwrap();
        let out = colour_split(&g, &parts, &target, Ratio::new(1, 2), 32, 1)
            .unwrap()
            .unwrap();
        let class2 = out.iter().find(|c| c.colour == 2);
        assert!(class2.is_none() || class2.unwrap().targets.is_empty());
        let class1 = out.iter().find(|c| c.colour == 1).unwrap();
        assert_eq!(class1.targets, target);
    }

    #[test]
    fn colour_split_verifies_density() {
        let (g, parts, mut target) = complete_partite(3, 6, 2);
        // an isolated extra vertex has no links at all
        let edges: Vec<(Edge, Colour)> = g
            .coloured_edges()
            .map(|(e, c)| (e.clone(), c))
            .collect();
        let g = ColouredHypergraph::new(3, g.n() + 1, 1, edges).unwrap();
        target.push(g.n() - 1);
        assert!(matches!(
            colour_split(&g, &parts, &target, Ratio::new(1, 2), 8, 0),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn absorb_cover_single_target() {
        let (g, parts, target) = complete_partite(3, 8, 1);
        let out = absorb_cover(&g, &parts, &target, &AbsorptionConfig::generous(), 0)
            .unwrap()
            .unwrap();
        // a single owner cannot form a block of four: it is covered as a
        // degenerate singleton
        assert!(out.covers(&target));
        assert_eq!(out.singletons, target);
    }

    #[test]
    fn absorb_cover_single_block_of_four() {
        let (g, parts, target) = complete_partite(3, 16, 4);
        let out = absorb_cover(&g, &parts, &target, &AbsorptionConfig::generous(), 0)
            .unwrap()
            .unwrap();
        assert_eq!(out.lifted.len(), 1);
        assert!(out.singletons.is_empty());
        assert!(out.covers(&target));
        let plan = &out.plans[0];
        assert_eq!(plan.rim.len(), 4);
        // two owners forwards, two backwards: slots 1,2 and 3,4
        let (cycle, colour) = &out.lifted[0];
        assert_eq!(*colour, 1);
        assert!(validate_cycle(&g, cycle, &Conventions::strict()).is_ok());
        // lifted cycle holds all four targets exactly once
        let on_cycle: Vec<Vertex> = cycle
            .seq
            .iter()
            .copied()
            .filter(|v| target.contains(v))
            .collect();
        assert_eq!(on_cycle.len(), 4);
        for p in plan
            .forward_connectors
            .iter()
            .chain(plan.return_connectors.iter())
        {
            assert_eq!(p.edge_count(), 2 * g.k() - 3);
        }
    }

    #[test]
    fn absorb_cover_eight_targets_two_blocks() {
        let (g, parts, target) = complete_partite(3, 16, 8);
        let out = absorb_cover(&g, &parts, &target, &AbsorptionConfig::generous(), 0)
            .unwrap()
            .unwrap();
        assert!(out.covers(&target));
        assert!(out.singletons.is_empty());
        // the two blocks are adjacent in the block graph, giving one path
        // and a single lifted cycle using each target exactly once
        assert_eq!(out.lifted.len(), 1);
        let (cycle, _) = &out.lifted[0];
        assert!(validate_cycle(&g, cycle, &Conventions::strict()).is_ok());
        let mut rim_seen = BTreeSet::new();
        for v in cycle.seq.iter().filter(|v| target.contains(v)) {
            assert!(rim_seen.insert(*v), "rim vertex {} reused", v);
        }
        assert_eq!(rim_seen.len(), 8);
    }

    #[test]
    fn absorb_cover_k2() {
        let (g, parts, target) = complete_partite(2, 16, 4);
        let out = absorb_cover(&g, &parts, &target, &AbsorptionConfig::generous(), 0)
            .unwrap()
            .unwrap();
        assert!(out.covers(&target));
        assert_eq!(out.lifted.len(), 1);
        let (cycle, _) = &out.lifted[0];
        assert!(validate_cycle(&g, cycle, &Conventions::strict()).is_ok());
    }

    #[test]
    fn absorb_cover_soft_fails_on_size_ratio() {
        let (g, parts, target) = complete_partite(3, 4, 4);
        // gamma * 4 < 4 targets
        let soft = absorb_cover(&g, &parts, &target, &AbsorptionConfig::generous(), 0)
            .unwrap()
            .unwrap_err();
        assert_eq!(soft.stage, "size-ratio");
    }

    #[test]
    fn config_chain_is_enforced() {
        let mut c = AbsorptionConfig::defaults_for(3, 2);
        assert!(c.validate().is_ok());
        c.gamma = c.eps;
        assert!(c.validate().is_err());
    }
}
