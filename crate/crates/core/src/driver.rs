//! End-to-end partitioning: crown absorber reservation, greedy cover,
//! absorption of the densely linked leftover, a contradiction probe for the
//! final residue, absorber closure, and an exhaustive fallback that
//! guarantees termination at desk scale. Also the power reduction and the
//! independent certificate checker.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;

use crate::absorption::{absorb_cover, AbsorptionConfig};
use crate::error::{Error, Result};
use crate::hypergraph::{
    k_subsets, link_graph, mono_clique_hypergraph, Colour, ColouredHypergraph, Vertex,
    DEFAULT_INDEPENDENCE_BOUND,
};
use crate::lemmas::{independent_transversal, TransversalOutcome};
use crate::search::{
    find_mono_crown, longest_mono_tight_cycle, spanning_mono_tight_cycle, EmbeddedCrown,
    SearchBudget, DEFAULT_EXACT_CYCLE_BOUND,
};
use crate::tight::{validate_cycle, Conventions, CycleColour, CycleFailure, TightCycle};

pub const DEFAULT_FALLBACK_BOUND: usize = 14;

/// How a certified cycle was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Greedy,
    Absorber,
    Fallback,
    Degenerate,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Greedy => "greedy",
            Provenance::Absorber => "absorber",
            Provenance::Fallback => "fallback",
            Provenance::Degenerate => "degenerate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "greedy" => Some(Provenance::Greedy),
            "absorber" => Some(Provenance::Absorber),
            "fallback" => Some(Provenance::Fallback),
            "degenerate" => Some(Provenance::Degenerate),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedCycle {
    pub cycle: TightCycle,
    pub colour: Colour,
    pub provenance: Provenance,
}

/// The deliverable: vertex-disjoint monochromatic tight cycles jointly
/// covering every vertex, bound to one instance by its digest.
#[derive(Debug, Clone)]
pub struct PartitionCertificate {
    pub instance_digest: String,
    pub cycles: Vec<CertifiedCycle>,
}

impl PartitionCertificate {
    pub fn provenance_histogram(&self) -> BTreeMap<&'static str, usize> {
        let mut h = BTreeMap::new();
        for c in &self.cycles {
            *h.entry(c.provenance.label()).or_insert(0) += 1;
        }
        h
    }
}

#[derive(Debug, Clone)]
pub struct DriverConfig {
    /// Link density floor separating absorbable leftover from residue.
    pub eps: Ratio<i64>,
    /// Crown rim fraction of the current pool.
    pub beta: Ratio<i64>,
    /// Greedy cover target fraction.
    pub gamma: Ratio<i64>,
    pub absorption: AbsorptionConfig,
    pub exact_cycle_bound: usize,
    pub fallback_bound: usize,
    pub alpha_check_bound: usize,
    pub budget: SearchBudget,
    pub seed: u64,
}

impl DriverConfig {
    pub fn defaults_for(k: usize, r: usize) -> Self {
        let mut absorption = AbsorptionConfig::defaults_for(k, r);
        let eps = Ratio::new(1, (4 * r * k) as i64);
        absorption.eps = eps;
        DriverConfig {
            eps,
            beta: Ratio::new(1, 8),
            gamma: Ratio::new(1, (8 * k) as i64),
            absorption,
            exact_cycle_bound: DEFAULT_EXACT_CYCLE_BOUND,
            fallback_bound: DEFAULT_FALLBACK_BOUND,
            alpha_check_bound: DEFAULT_INDEPENDENCE_BOUND,
            budget: SearchBudget::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DriverReport {
    pub certificate: PartitionCertificate,
    pub diagnostics: Vec<String>,
    /// An independent transversal over the final blocks and residue, when
    /// one was found: evidence that the declared independence bound was not
    /// tight.
    pub contradiction_witness: Option<Vec<Vertex>>,
}

/// Repeatedly extracts the longest monochromatic tight cycle until at most
/// `gamma * |allowed|` vertices stay uncovered or no non-degenerate cycle
/// remains. Returns the extracted cycles and the uncovered set.
pub fn greedy_cover(
    g: &ColouredHypergraph,
    forbidden: &BTreeSet<Vertex>,
    gamma: Ratio<i64>,
    budget: &SearchBudget,
    exact_bound: usize,
) -> Result<(Vec<(TightCycle, CycleColour)>, BTreeSet<Vertex>)> {
    let mut uncovered: BTreeSet<Vertex> =
        (0..g.n()).filter(|v| !forbidden.contains(v)).collect();
    let target = (gamma * Ratio::from_integer(uncovered.len() as i64))
        .floor()
        .to_integer() as usize;
    let mut cycles = Vec::new();
    while uncovered.len() > target && !uncovered.is_empty() {
        let blocked: BTreeSet<Vertex> = (0..g.n()).filter(|v| !uncovered.contains(v)).collect();
        let (cycle, colour) = longest_mono_tight_cycle(g, &blocked, budget, exact_bound)?;
        if cycle.is_degenerate() {
            break;
        }
        for v in cycle.seq.iter() {
            uncovered.remove(v);
        }
        cycles.push((cycle, colour));
    }
    Ok((cycles, uncovered))
}

/// Minimum-count partition of `subset` into monochromatic tight cycles by
/// subset dynamic programming. Above the bound the subset is emitted as
/// singletons and `exhaustive` is false.
pub fn brute_force_partition(
    g: &ColouredHypergraph,
    subset: &BTreeSet<Vertex>,
    conv: &Conventions,
    bound: usize,
) -> Result<(Vec<(TightCycle, CycleColour)>, bool)> {
    let k = g.k();
    if subset.is_empty() {
        return Ok((Vec::new(), true));
    }
    if subset.len() > bound {
        let cycles = subset
            .iter()
            .map(|&v| (TightCycle::degenerate(k, v), CycleColour::Any))
            .collect();
        return Ok((cycles, false));
    }
    let verts: Vec<Vertex> = subset.iter().copied().collect();
    let s = verts.len();
    let full: u64 = (1 << s) - 1;
    let mut spannable: HashMap<u64, Option<(TightCycle, CycleColour)>> = HashMap::new();
    let span = |mask: u64, spannable: &mut HashMap<u64, Option<(TightCycle, CycleColour)>>| {
        spannable
            .entry(mask)
            .or_insert_with(|| {
                let vs: BTreeSet<Vertex> = (0..s)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| verts[i])
                    .collect();
                if vs.len() == 2 && k == 2 && conv.lehel_edge_cycles {
                    let pair: Vec<Vertex> = vs.iter().copied().collect();
                    return g
                        .colour_of(&pair)
                        .map(|c| (TightCycle::new(k, pair), CycleColour::Fixed(c)));
                }
                spanning_mono_tight_cycle(g, &vs)
            })
            .clone()
    };
    // dp[mask] = minimum number of cycles partitioning the masked vertices
    let mut dp: Vec<u32> = vec![u32::MAX; (full + 1) as usize];
    let mut choice: Vec<u64> = vec![0; (full + 1) as usize];
    dp[0] = 0;
    for mask in 1..=full {
        let low = mask.trailing_zeros();
        let rest = mask & !(1 << low);
        // enumerate submasks of `rest`, each joined with the low bit
        let mut sub = rest;
        loop {
            let piece = sub | (1 << low);
            if span(piece, &mut spannable).is_some() {
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
    let mut out = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let piece = choice[mask as usize];
        debug_assert_ne!(piece, 0, "singletons keep the dp total");
        out.push(span(piece, &mut spannable).unwrap());
        mask &= !piece;
    }
    Ok((out, true))
}

/// Validates one certified cycle against its claimed colour.
fn check_claimed_cycle(
    g: &ColouredHypergraph,
    cycle: &TightCycle,
    claimed: Colour,
    conv: &Conventions,
) -> std::result::Result<(), CycleFailure> {
    match validate_cycle(g, cycle, conv)? {
        CycleColour::Any => Ok(()),
        CycleColour::Fixed(_) => {
            // re-walk the windows against the claimed colour so a flipped
            // tag is rejected at its first window
            let m = cycle.seq.len();
            let effective = if m == 2 { 1 } else { m };
            for start in 0..effective {
                let w = crate::tight::cyclic_window(&cycle.seq, start, g.k());
                let found = g.colour_of(&w).unwrap();
                if found != claimed {
                    return Err(CycleFailure::ColourMismatch {
                        start,
                        window: w,
                        expected: claimed,
                        found,
                    });
                }
            }
            Ok(())
        }
    }
}

/// Why a certificate was rejected; the first violation in checking order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    DigestMismatch { expected: String, found: String },
    ColourOutOfRange { index: usize, colour: Colour },
    InvalidCycle { index: usize, failure: CycleFailure },
    DuplicateVertex { vertex: Vertex },
    MissingVertex { vertex: Vertex },
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::DigestMismatch { expected, found } => {
                write!(f, "certificate digest {} does not match instance {}", found, expected)
            }
            RejectReason::ColourOutOfRange { index, colour } => {
                write!(f, "cycle {} claims colour {} outside the palette", index, colour)
            }
            RejectReason::InvalidCycle { index, failure } => {
                write!(f, "cycle {}: {}", index, failure)
            }
            RejectReason::DuplicateVertex { vertex } => {
                write!(f, "vertex {} appears in two cycles", vertex)
            }
            RejectReason::MissingVertex { vertex } => {
                write!(f, "vertex {} is not covered", vertex)
            }
        }
    }
}

/// Checks exact cover plus per-cycle monochromatic validity, independent of
/// how the certificate was produced.
pub fn verify_certificate(
    g: &ColouredHypergraph,
    cert: &PartitionCertificate,
    conv: &Conventions,
) -> std::result::Result<(), RejectReason> {
    let expected = g.digest();
    if cert.instance_digest != expected {
        return Err(RejectReason::DigestMismatch {
            expected,
            found: cert.instance_digest.clone(),
        });
    }
    let mut covered: BTreeSet<Vertex> = BTreeSet::new();
    for (index, cc) in cert.cycles.iter().enumerate() {
        if cc.colour < 1 || cc.colour > g.r() {
            return Err(RejectReason::ColourOutOfRange {
                index,
                colour: cc.colour,
            });
        }
        check_claimed_cycle(g, &cc.cycle, cc.colour, conv)
            .map_err(|failure| RejectReason::InvalidCycle { index, failure })?;
        for &v in &cc.cycle.seq {
            if !covered.insert(v) {
                return Err(RejectReason::DuplicateVertex { vertex: v });
            }
        }
    }
    for v in 0..g.n() {
        if !covered.contains(&v) {
            return Err(RejectReason::MissingVertex { vertex: v });
        }
    }
    Ok(())
}

/// Minimum crown order whose base is a valid tight cycle.
fn min_crown_order(k: usize) -> usize {
    let mut t = 2;
    while t * (k - 1) < k + 1 {
        t += 1;
    }
    t
}

struct DriverState {
    pool: BTreeSet<Vertex>,
    /// Current contents of each reserved rim block.
    blocks: Vec<Vec<Vertex>>,
    /// Crown absorbers with the indices of the blocks they close over.
    crowns: Vec<(EmbeddedCrown, Vec<usize>)>,
    emitted: Vec<CertifiedCycle>,
    diagnostics: Vec<String>,
}

impl DriverState {
    /// Every vertex lives in exactly one place: an emitted cycle, a block,
    /// a crown base, or the pool.
    fn audit(&self, n: usize) -> bool {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let add = |v: Vertex, seen: &mut BTreeSet<Vertex>| seen.insert(v);
        for c in &self.emitted {
            for &v in &c.cycle.seq {
                if !add(v, &mut seen) {
                    return false;
                }
            }
        }
        for b in &self.blocks {
            for &v in b {
                if !add(v, &mut seen) {
                    return false;
                }
            }
        }
        for (crown, _) in &self.crowns {
            for &v in &crown.base {
                if !add(v, &mut seen) {
                    return false;
                }
            }
        }
        for &v in &self.pool {
            if !add(v, &mut seen) {
                return false;
            }
        }
        seen.len() == n
    }
}

/// Partitions the vertices of `g` into monochromatic tight cycles and
/// returns an independently verified certificate. `alpha` is the declared
/// independence bound; it is checked exactly on small instances.
pub fn partition(
    g: &ColouredHypergraph,
    alpha: Option<usize>,
    config: &DriverConfig,
    conv: &Conventions,
) -> Result<DriverReport> {
    config.absorption.validate()?;
    let n = g.n();
    let k = g.k();
    let digest = g.digest();
    if n == 0 {
        return Ok(DriverReport {
            certificate: PartitionCertificate {
                instance_digest: digest,
                cycles: Vec::new(),
            },
            diagnostics: vec!["empty instance".into()],
            contradiction_witness: None,
        });
    }
    let alpha = resolve_alpha(g, alpha, config)?;
    let mut state = DriverState {
        pool: (0..n).collect(),
        blocks: Vec::new(),
        crowns: Vec::new(),
        emitted: Vec::new(),
        diagnostics: Vec::new(),
    };
    let t_min = min_crown_order(k);

    let mut step = k - 1;
    while !state.pool.is_empty() && step <= alpha {
        let before = (state.pool.len(), state.emitted.len(), state.crowns.len());

        // crown reservation: rim becomes k-1 fresh blocks on the folded
        // first step, a single block afterwards
        let rim_target = (config.beta * Ratio::from_integer(state.pool.len() as i64))
            .floor()
            .to_integer() as usize;
        // a crown is only worth reserving if its rim blocks are big enough
        // for the absorption stage to absorb at least one vertex: the
        // size-ratio precondition needs a rim block of at least 1/gamma
        let min_rim_block = config
            .absorption
            .gamma
            .recip()
            .ceil()
            .to_integer()
            .max(1) as usize;
        let piece_count = if step == k - 1 { k - 1 } else { 1 };
        let useful_t = min_rim_block * piece_count;
        let mut found_crown = None;
        let mut t = rim_target.max(t_min);
        while t >= t_min.max(useful_t) {
            let forbidden: BTreeSet<Vertex> =
                (0..n).filter(|v| !state.pool.contains(v)).collect();
            if t * k <= state.pool.len() {
                if let Some(crown) = find_mono_crown(g, t, &forbidden, &config.budget)? {
                    found_crown = Some(crown);
                    break;
                }
            }
            t -= 1;
        }
        if let Some(crown) = found_crown {
            for v in crown.vertices() {
                state.pool.remove(&v);
            }
            let mut pieces: Vec<Vec<Vertex>> = vec![Vec::new(); piece_count];
            for (i, &v) in crown.rim.iter().enumerate() {
                pieces[i % piece_count].push(v);
            }
            pieces.retain(|p| !p.is_empty());
            let indices: Vec<usize> =
                (state.blocks.len()..state.blocks.len() + pieces.len()).collect();
            state.diagnostics.push(format!(
                "step {}: crown t={} colour {} reserved ({} rim blocks)",
                step,
                crown.t(),
                crown.colour,
                pieces.len()
            ));
            state.blocks.extend(pieces);
            state.crowns.push((crown, indices));
        } else {
            state.diagnostics.push(format!("step {}: no crown found", step));
        }

        // greedy cover of the pool
        let forbidden: BTreeSet<Vertex> = (0..n).filter(|v| !state.pool.contains(v)).collect();
        let (cycles, uncovered) = greedy_cover(
            g,
            &forbidden,
            config.gamma,
            &config.budget,
            config.exact_cycle_bound,
        )?;
        for (cycle, colour) in cycles {
            for v in &cycle.seq {
                state.pool.remove(v);
            }
            state.emitted.push(CertifiedCycle {
                colour: colour.pick(),
                cycle,
                provenance: Provenance::Greedy,
            });
        }
        debug_assert!(uncovered == state.pool);

        // split the leftover by link density into the reserved blocks
        let mut residue: BTreeSet<Vertex> = BTreeSet::new();
        let mut groups: BTreeMap<Vec<usize>, Vec<Vertex>> = BTreeMap::new();
        if k >= 2 && state.blocks.iter().filter(|b| !b.is_empty()).count() >= k - 1 {
            let nonempty: Vec<usize> = (0..state.blocks.len())
                .filter(|&i| !state.blocks[i].is_empty())
                .collect();
            for &v in state.pool.iter() {
                let mut placed = false;
                for combo in k_subsets(nonempty.len(), k - 1) {
                    let tuple: Vec<usize> = combo.iter().map(|&x| nonempty[x]).collect();
                    let parts: Vec<Vec<Vertex>> =
                        tuple.iter().map(|&i| state.blocks[i].clone()).collect();
                    let prod: i64 = parts.iter().map(|p| p.len() as i64).product();
                    let cnt = link_graph(g, &[v], Some(&parts), None)?.edge_count();
                    if cnt > 0
                        && Ratio::from_integer(cnt as i64)
                            >= config.eps * Ratio::from_integer(prod)
                    {
                        groups.entry(tuple).or_default().push(v);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    residue.insert(v);
                }
            }
        } else {
            residue.extend(state.pool.iter().copied());
        }

        // absorb each densely linked group into its tuple of blocks
        for (tuple, group) in groups {
            let parts: Vec<Vec<Vertex>> =
                tuple.iter().map(|&i| state.blocks[i].clone()).collect();
            match absorb_cover(g, &parts, &group, &config.absorption, config.seed)? {
                Ok(outcome) => {
                    let mut used_from_blocks: BTreeSet<Vertex> = BTreeSet::new();
                    for (cycle, colour) in outcome.lifted {
                        for &v in &cycle.seq {
                            state.pool.remove(&v);
                            used_from_blocks.insert(v);
                        }
                        state.emitted.push(CertifiedCycle {
                            cycle,
                            colour,
                            provenance: Provenance::Absorber,
                        });
                    }
                    for v in outcome.singletons {
                        state.pool.remove(&v);
                        state.emitted.push(CertifiedCycle {
                            cycle: TightCycle::degenerate(k, v),
                            colour: 1,
                            provenance: Provenance::Degenerate,
                        });
                    }
                    for b in state.blocks.iter_mut() {
                        b.retain(|v| !used_from_blocks.contains(v));
                    }
                    state
                        .diagnostics
                        .push(format!("step {}: absorbed {} vertices into blocks {:?}", step, group.len(), tuple));
                }
                Err(soft) => {
                    state
                        .diagnostics
                        .push(format!("step {}: absorption fell back ({})", step, soft));
                    residue.extend(group);
                }
            }
        }

        state.pool = residue;
        debug_assert!(state.audit(n), "driver bookkeeping lost a vertex");
        let after = (state.pool.len(), state.emitted.len(), state.crowns.len());
        if before == after {
            state
                .diagnostics
                .push(format!("step {}: no progress, deferring to fallback", step));
            break;
        }
        step += 1;
    }

    // contradiction probe: the surviving blocks plus the residue admit an
    // independent transversal only if the declared bound was loose
    let mut contradiction_witness = None;
    if !state.pool.is_empty() {
        let mut probe_blocks: Vec<Vec<Vertex>> = state
            .blocks
            .iter()
            .filter(|b| !b.is_empty())
            .cloned()
            .collect();
        probe_blocks.push(state.pool.iter().copied().collect());
        if probe_blocks.len() > alpha {
            if let TransversalOutcome::Found(witness) =
                independent_transversal(g.host(), &probe_blocks, false)?
            {
                state.diagnostics.push(format!(
                    "independent transversal of size {} found: declared alpha {} is not tight",
                    witness.len(),
                    alpha
                ));
                contradiction_witness = Some(witness);
            }
        }
    }

    // fallback: exhaust the residue by minimum-count partition
    if !state.pool.is_empty() {
        let residue = state.pool.clone();
        let (cycles, exhaustive) =
            brute_force_partition(g, &residue, conv, config.fallback_bound)?;
        if !exhaustive {
            state
                .diagnostics
                .push(format!("fallback above bound: {} singletons emitted", residue.len()));
        }
        for (cycle, colour) in cycles {
            for v in &cycle.seq {
                state.pool.remove(v);
            }
            state.emitted.push(CertifiedCycle {
                colour: colour.pick(),
                cycle,
                provenance: Provenance::Fallback,
            });
        }
    }

    // absorber closure, most recent crown first
    for (crown, block_indices) in state.crowns.iter().rev() {
        let mut surviving: BTreeSet<Vertex> = BTreeSet::new();
        for &bi in block_indices {
            surviving.extend(state.blocks[bi].iter().copied());
            state.blocks[bi].clear();
        }
        let cycle = crown.insertion_cycle(&surviving);
        state.emitted.push(CertifiedCycle {
            cycle,
            colour: crown.colour,
            provenance: Provenance::Absorber,
        });
    }
    state.pool.clear();

    let certificate = PartitionCertificate {
        instance_digest: digest,
        cycles: state.emitted,
    };
    if let Err(reason) = verify_certificate(g, &certificate, conv) {
        return Err(Error::Internal(format!(
            "driver assembled an invalid certificate: {}",
            reason
        )));
    }
    Ok(DriverReport {
        certificate,
        diagnostics: state.diagnostics,
        contradiction_witness,
    })
}

fn resolve_alpha(g: &ColouredHypergraph, alpha: Option<usize>, config: &DriverConfig) -> Result<usize> {
    if g.n() <= config.alpha_check_bound {
        let exact = g.host().independence_number(config.alpha_check_bound)?;
        if let Some(a) = alpha {
            if a < exact {
                return Err(Error::InvalidArgument(format!(
                    "declared alpha {} below the true independence number {}",
                    a, exact
                )));
            }
            return Ok(a);
        }
        Ok(exact.max(1))
    } else {
        alpha.ok_or_else(|| {
            Error::InvalidArgument(
                "alpha must be declared for instances above the exact-check bound".into(),
            )
        })
    }
}

/// Reduces the instance for power partitioning: edges of the reduced
/// (k+p-1)-graph are the monochromatic (k+p-1)-cliques.
pub fn power_reduce(g: &ColouredHypergraph, p: usize) -> Result<ColouredHypergraph> {
    if p < 1 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let target = g.k() + p - 1;
    if g.n() < target {
        return Err(Error::InvalidArgument(format!(
            "n = {} below reduced uniformity {}",
            g.n(),
            target
        )));
    }
    mono_clique_hypergraph(g, target)
}

/// A p-th power of a tight cycle, witnessed in the original instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCycle {
    pub seq: Vec<Vertex>,
    pub colour: Colour,
}

/// Verifies that a tight cycle of the reduced instance expands to a p-th
/// power of a tight cycle in `g`: every k-subset of every (k+p-1)-window
/// must be an edge of the claimed colour.
pub fn power_lift_back(
    g: &ColouredHypergraph,
    p: usize,
    cycle: &TightCycle,
    colour: Colour,
) -> Result<PowerCycle> {
    let k = g.k();
    let kp = k + p - 1;
    if colour < 1 || colour > g.r() {
        return Err(Error::InvalidArgument(format!("unknown colour {}", colour)));
    }
    let m = cycle.seq.len();
    if m == 0 {
        return Err(Error::MalformedCycle("empty sequence".into()));
    }
    let distinct: BTreeSet<Vertex> = cycle.seq.iter().copied().collect();
    if distinct.len() != m {
        return Err(Error::MalformedCycle("repeated vertex".into()));
    }
    if m == 1 {
        return Ok(PowerCycle {
            seq: cycle.seq.clone(),
            colour,
        });
    }
    if m <= kp {
        return Err(Error::MalformedCycle(format!(
            "sequence of length {} below minimum {}",
            m,
            kp + 1
        )));
    }
    for start in 0..m {
        let window: Vec<Vertex> = (0..kp).map(|d| cycle.seq[(start + d) % m]).collect();
        for sub in k_subsets(kp, k) {
            let e: Vec<Vertex> = sub.iter().map(|&i| window[i]).collect();
            match g.colour_of(&e) {
                Some(c) if c == colour => {}
                other => {
                    return Err(Error::MalformedCycle(format!(
                        "window at {} has k-subset {:?} with colour {:?}, expected {}",
                        start, e, other, colour
                    )))
                }
            }
        }
    }
    Ok(PowerCycle {
        seq: cycle.seq.clone(),
        colour,
    })
}

/// Exact-cover check for a list of power cycles against the original
/// instance.
pub fn verify_power_certificate(
    g: &ColouredHypergraph,
    p: usize,
    items: &[PowerCycle],
) -> std::result::Result<(), String> {
    let mut covered = BTreeSet::new();
    for (i, item) in items.iter().enumerate() {
        let cycle = TightCycle::new(g.k() + p - 1, item.seq.clone());
        let colour = if item.seq.len() == 1 { item.colour.min(g.r()).max(1) } else { item.colour };
        power_lift_back(g, p, &cycle, colour).map_err(|e| format!("item {}: {}", i, e))?;
        for &v in &item.seq {
            if !covered.insert(v) {
                return Err(format!("vertex {} covered twice", v));
            }
        }
    }
    for v in 0..g.n() {
        if !covered.contains(&v) {
            return Err(format!("vertex {} uncovered", v));
        }
    }
    Ok(())
}

/// Full power pipeline: reduce, partition the reduced instance, lift every
/// certified cycle back as a power-of-cycle witness.
pub fn power_partition(
    g: &ColouredHypergraph,
    p: usize,
    alpha: Option<usize>,
    config: &DriverConfig,
) -> Result<(Vec<PowerCycle>, DriverReport)> {
    let reduced = power_reduce(g, p)?;
    let mut cfg = config.clone();
    if cfg.eps == DriverConfig::defaults_for(g.k(), g.r()).eps {
        cfg = DriverConfig::defaults_for(reduced.k(), reduced.r());
        cfg.seed = config.seed;
        cfg.budget = config.budget;
    }
    let report = partition(&reduced, alpha, &cfg, &Conventions::strict())?;
    let mut out = Vec::new();
    for cc in &report.certificate.cycles {
        out.push(power_lift_back(g, p, &cc.cycle, cc.colour)?);
    }
    verify_power_certificate(g, p, &out).map_err(Error::Internal)?;
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Edge;
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
    fn greedy_cover_complete_host() {
        let g = complete_one_coloured(3, 10);
        let (cycles, uncovered) = greedy_cover(
            &g,
            &BTreeSet::new(),
            Ratio::new(1, 10),
            &SearchBudget::default(),
            14,
        )
        .unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].0.seq.len(), 10);
        assert!(uncovered.is_empty());
    }

    #[test]
    fn greedy_cover_edgeless() {
        let g = ColouredHypergraph::new(3, 5, 1, vec![]).unwrap();
        let (cycles, uncovered) = greedy_cover(
            &g,
            &BTreeSet::new(),
            Ratio::new(1, 10),
            &SearchBudget::default(),
            14,
        )
        .unwrap();
        assert!(cycles.is_empty());
        assert_eq!(uncovered.len(), 5);
    }

    #[test]
    fn fallback_examples() {
        let g = complete_one_coloured(3, 4);
        let all: BTreeSet<Vertex> = (0..4).collect();
        let (cycles, exhaustive) =
            brute_force_partition(&g, &all, &Conventions::strict(), 14).unwrap();
        assert!(exhaustive);
        assert_eq!(cycles.len(), 1);

        let single: BTreeSet<Vertex> = [2].into_iter().collect();
        let (cycles, _) = brute_force_partition(&g, &single, &Conventions::strict(), 14).unwrap();
        assert_eq!(cycles.len(), 1);
        assert!(cycles[0].0.is_degenerate());
    }

    #[test]
    fn lehel_pairs_lower_fallback_counts() {
        // 2-coloured K_6 split into two triangles of different colours is
        // coverable by 2 cycles; with lehel pairs a red/blue split of K_4
        // needs at most 2 as well
        let mut edges: Vec<(Edge, Colour)> = Vec::new();
        for e in k_subsets(4, 2) {
            let c = if e == vec![0, 1] || e == vec![2, 3] { 1 } else { 2 };
            edges.push((e, c));
        }
        let g = ColouredHypergraph::new(2, 4, 2, edges).unwrap();
        let all: BTreeSet<Vertex> = (0..4).collect();
        let (strictc, _) =
            brute_force_partition(&g, &all, &Conventions::strict(), 14).unwrap();
        let (lehelc, _) = brute_force_partition(&g, &all, &Conventions::lehel(), 14).unwrap();
        assert!(lehelc.len() <= 2);
        assert!(lehelc.len() <= strictc.len());
    }

    #[test]
    fn partition_monochromatic_complete() {
        let g = complete_one_coloured(3, 9);
        let config = DriverConfig::defaults_for(3, 1);
        let report = partition(&g, None, &config, &Conventions::strict()).unwrap();
        assert_eq!(report.certificate.cycles.len(), 1);
        assert!(verify_certificate(&g, &report.certificate, &Conventions::strict()).is_ok());
    }

    #[test]
    fn partition_tiny_instances() {
        for n in 1..=3usize {
            let g = ColouredHypergraph::new(3, n, 2, vec![]).unwrap();
            let config = DriverConfig::defaults_for(3, 2);
            let report = partition(&g, None, &config, &Conventions::strict()).unwrap();
            assert!(report.certificate.cycles.len() <= 3);
            assert!(
                verify_certificate(&g, &report.certificate, &Conventions::strict()).is_ok()
            );
        }
    }

    #[test]
    fn partition_random_instances_verify() {
        for seed in 0..20u64 {
            let k = if seed % 2 == 0 { 2 } else { 3 };
            let r = 1 + (seed % 3) as usize;
            let n = 6 + (seed % 7) as usize;
            let g = random_coloured(k, n, r, seed);
            let config = DriverConfig::defaults_for(k, r);
            let report = partition(&g, None, &config, &Conventions::strict()).unwrap();
            assert!(
                verify_certificate(&g, &report.certificate, &Conventions::strict()).is_ok(),
                "seed {}",
                seed
            );
        }
    }

    #[test]
    fn partition_rejects_false_alpha() {
        let g = ColouredHypergraph::new(3, 8, 1, vec![]).unwrap(); // alpha = 8
        let config = DriverConfig::defaults_for(3, 1);
        assert!(partition(&g, Some(2), &config, &Conventions::strict()).is_err());
    }

    #[test]
    fn verifier_rejects_mutations() {
        let g = random_coloured(3, 9, 2, 5);
        let config = DriverConfig::defaults_for(3, 2);
        let report = partition(&g, None, &config, &Conventions::strict()).unwrap();
        let cert = report.certificate;

        let mut dropped = cert.clone();
        let removed = dropped.cycles.remove(0);
        let victim = removed.cycle.seq[0];
        match verify_certificate(&g, &dropped, &Conventions::strict()) {
            Err(RejectReason::MissingVertex { vertex }) => {
                assert!(removed.cycle.seq.contains(&vertex) || vertex == victim)
            }
            other => panic!("expected missing vertex, got {:?}", other),
        }

        let mut wrong_digest = cert.clone();
        wrong_digest.instance_digest = "beef".into();
        assert!(matches!(
            verify_certificate(&g, &wrong_digest, &Conventions::strict()),
            Err(RejectReason::DigestMismatch { .. })
        ));

        // flip a non-degenerate cycle's colour tag
        let mut flipped = cert.clone();
        if let Some(pos) = flipped.cycles.iter().position(|c| !c.cycle.is_degenerate()) {
            let old = flipped.cycles[pos].colour;
            flipped.cycles[pos].colour = if old == 1 { 2 } else { 1 };
            assert!(matches!(
                verify_certificate(&g, &flipped, &Conventions::strict()),
                Err(RejectReason::InvalidCycle {
                    failure: CycleFailure::ColourMismatch { .. },
                    ..
                })
            ));
        }
    }

    #[test]
    fn partition_uses_crown_and_absorption_at_scale() {
        // large enough that the crown's rim blocks clear the absorption
        // size-ratio gate: crown t=18 (54 vertices) plus 4 leftover to lift
        let g = complete_one_coloured(3, 58);
        let mut config = DriverConfig::defaults_for(3, 1);
        config.beta = Ratio::new(5, 16);
        config.gamma = Ratio::new(1, 1); // leave the leftover to absorption
        config.eps = Ratio::new(1, 2);
        config.absorption = crate::absorption::AbsorptionConfig::generous();
        let report = partition(&g, Some(2), &config, &Conventions::strict()).unwrap();
        assert!(verify_certificate(&g, &report.certificate, &Conventions::strict()).is_ok());
        let hist = report.certificate.provenance_histogram();
        assert!(
            hist.get("absorber").copied().unwrap_or(0) >= 2,
            "expected a lifted cycle and a crown closure, got {:?} ({:?})",
            hist,
            report.diagnostics
        );
        assert_eq!(hist.get("fallback"), None, "{:?}", report.diagnostics);
    }

    #[test]
    fn power_reduce_identity_and_complete() {
        let g = random_coloured(2, 6, 2, 3);
        let same = power_reduce(&g, 1).unwrap();
        assert_eq!(g, same);

        let mono = complete_one_coloured(2, 6);
        let reduced = power_reduce(&mono, 2).unwrap();
        assert_eq!(reduced.edge_count(), k_subsets(6, 3).len());
    }

    #[test]
    fn power_partition_squares_of_cycles() {
        let g = random_coloured(2, 8, 2, 11);
        let config = DriverConfig::defaults_for(2, 2);
        let (items, report) = power_partition(&g, 2, None, &config).unwrap();
        assert!(verify_power_certificate(&g, 2, &items).is_ok());
        assert!(!report.certificate.cycles.is_empty());
    }
}
