//! Tight paths and cycles, type arithmetic for partite (k-1)-sets, crowns,
//! absorber checking and the rim-insertion lifting construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, LiftError, Result};
use crate::hypergraph::{Colour, ColouredHypergraph, Edge, Hypergraph, Vertex, VertexPartition};

/// Which degenerate cycles the ambient convention admits. Single vertices
/// are always cycles. In the graph setting (`k = 2`) a single edge may also
/// count as a cycle; that is opt-in and never mixed silently into the
/// k-graph convention.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Conventions {
    pub lehel_edge_cycles: bool,
}

impl Conventions {
    pub fn strict() -> Self {
        Conventions {
            lehel_edge_cycles: false,
        }
    }

    pub fn lehel() -> Self {
        Conventions {
            lehel_edge_cycles: true,
        }
    }
}

/// A tight path: consecutive k-windows of the vertex sequence are edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightPath {
    pub k: usize,
    pub seq: Vec<Vertex>,
}

impl TightPath {
    pub fn new(k: usize, seq: Vec<Vertex>) -> Result<Self> {
        let set: BTreeSet<Vertex> = seq.iter().copied().collect();
        if set.len() != seq.len() {
            return Err(Error::InvalidArgument("path repeats a vertex".into()));
        }
        Ok(TightPath { k, seq })
    }

    /// Number of k-windows, i.e. edges, of the path.
    pub fn edge_count(&self) -> usize {
        (self.seq.len() + 1).saturating_sub(self.k)
    }

    pub fn windows(&self) -> impl Iterator<Item = &[Vertex]> {
        self.seq.windows(self.k)
    }
}

/// A tight cycle: a cyclic vertex sequence whose k-windows are all edges.
/// The degenerate case is a single vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TightCycle {
    pub k: usize,
    pub seq: Vec<Vertex>,
}

impl TightCycle {
    pub fn new(k: usize, seq: Vec<Vertex>) -> Self {
        TightCycle { k, seq }
    }

    pub fn degenerate(k: usize, v: Vertex) -> Self {
        TightCycle { k, seq: vec![v] }
    }

    pub fn is_degenerate(&self) -> bool {
        self.seq.len() == 1
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.seq.iter().copied().collect()
    }

    /// Cyclic k-window starting at position `i` (indices mod length).
    pub fn window(&self, i: usize) -> Edge {
        cyclic_window(&self.seq, i, self.k)
    }

    /// Rewrites the sequence as the lexicographically smallest among all
    /// rotations of both directions. Rotation and reflection preserve the
    /// window set, so validity is unaffected.
    pub fn canonicalize(&mut self) {
        let m = self.seq.len();
        if m <= 1 {
            return;
        }
        let mut best: Option<Vec<Vertex>> = None;
        let mut consider = |cand: Vec<Vertex>| match &best {
            Some(b) if *b <= cand => {}
            _ => best = Some(cand),
        };
        let rev: Vec<Vertex> = self.seq.iter().rev().copied().collect();
        for start in 0..m {
            consider((0..m).map(|i| self.seq[(start + i) % m]).collect());
            consider((0..m).map(|i| rev[(start + i) % m]).collect());
        }
        self.seq = best.unwrap();
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }
}

/// Sorted k-window of a cyclic sequence starting at position `i`.
pub fn cyclic_window(seq: &[Vertex], i: usize, k: usize) -> Edge {
    let m = seq.len();
    let mut w: Edge = (0..k).map(|d| seq[(i + d) % m]).collect();
    w.sort_unstable();
    w
}

/// Witnessing colour of a validated cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleColour {
    /// Degenerate cycles are valid in every colour.
    Any,
    Fixed(Colour),
}

impl CycleColour {
    pub fn admits(&self, c: Colour) -> bool {
        match self {
            CycleColour::Any => true,
            CycleColour::Fixed(f) => *f == c,
        }
    }

    /// A concrete representative colour.
    pub fn pick(&self) -> Colour {
        match self {
            CycleColour::Any => 1,
            CycleColour::Fixed(c) => *c,
        }
    }
}

/// Why a cycle failed validation; names the first offending window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleFailure {
    Empty,
    RepeatedVertex(Vertex),
    VertexOutOfRange(Vertex),
    /// Sequences of length 2..=k cannot close into distinct windows.
    TooShort { len: usize },
    MissingWindow { start: usize, window: Edge },
    ColourMismatch {
        start: usize,
        window: Edge,
        expected: Colour,
        found: Colour,
    },
}

impl std::fmt::Display for CycleFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CycleFailure::Empty => write!(f, "empty vertex sequence"),
            CycleFailure::RepeatedVertex(v) => write!(f, "vertex {} repeats", v),
            CycleFailure::VertexOutOfRange(v) => write!(f, "vertex {} out of range", v),
            CycleFailure::TooShort { len } => {
                write!(f, "sequence of length {} is below the minimum cycle length", len)
            }
            CycleFailure::MissingWindow { start, window } => {
                write!(f, "window at position {} ({:?}) is not a host edge", start, window)
            }
            CycleFailure::ColourMismatch {
                start,
                window,
                expected,
                found,
            } => write!(
                f,
                "window at position {} ({:?}) has colour {} but the cycle started with {}",
                start, window, found, expected
            ),
        }
    }
}

/// Checks a tight cycle against a coloured host and reports its witnessing
/// colour, or the first violated window.
pub fn validate_cycle(
    g: &ColouredHypergraph,
    cycle: &TightCycle,
    conv: &Conventions,
) -> std::result::Result<CycleColour, CycleFailure> {
    let k = g.k();
    let m = cycle.seq.len();
    if m == 0 {
        return Err(CycleFailure::Empty);
    }
    let mut seen = BTreeSet::new();
    for &v in &cycle.seq {
        if v >= g.n() {
            return Err(CycleFailure::VertexOutOfRange(v));
        }
        if !seen.insert(v) {
            return Err(CycleFailure::RepeatedVertex(v));
        }
    }
    if m == 1 {
        return Ok(CycleColour::Any);
    }
    if m == 2 && k == 2 && conv.lehel_edge_cycles {
        let w = cyclic_window(&cycle.seq, 0, k);
        return match g.colour_of(&w) {
            Some(c) => Ok(CycleColour::Fixed(c)),
            None => Err(CycleFailure::MissingWindow { start: 0, window: w }),
        };
    }
    if m <= k {
        return Err(CycleFailure::TooShort { len: m });
    }
    let mut colour = None;
    for start in 0..m {
        let w = cyclic_window(&cycle.seq, start, k);
        match g.colour_of(&w) {
            None => return Err(CycleFailure::MissingWindow { start, window: w }),
            Some(c) => match colour {
                None => colour = Some(c),
                Some(expected) if expected != c => {
                    return Err(CycleFailure::ColourMismatch {
                        start,
                        window: w,
                        expected,
                        found: c,
                    })
                }
                _ => {}
            },
        }
    }
    Ok(CycleColour::Fixed(colour.unwrap()))
}

/// The type of a partite (k-1)-set: the unique block it misses (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeIndex(pub usize);

/// Computes `tp(e)` for `e` a transversal (|blocks| - 1)-set of `p`.
pub fn tp(e: &[Vertex], p: &VertexPartition) -> Result<TypeIndex> {
    let j = p.len();
    if e.len() + 1 != j {
        return Err(Error::InvalidArgument(format!(
            "type of a {}-set undefined for a partition into {} blocks",
            e.len(),
            j
        )));
    }
    let mut hit = vec![false; j];
    for &v in e {
        match p.block_of(v) {
            None => {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} not in any block",
                    v
                )))
            }
            Some(i) => {
                if hit[i] {
                    return Err(Error::InvalidArgument(format!(
                        "block {} met twice",
                        i + 1
                    )));
                }
                hit[i] = true;
            }
        }
    }
    let missed = hit.iter().position(|h| !h).unwrap();
    Ok(TypeIndex(missed + 1))
}

/// `tp(e, f) = tp(f) - tp(e) (mod |blocks|)`.
pub fn tp_pair(e: &[Vertex], f: &[Vertex], p: &VertexPartition) -> Result<usize> {
    let te = tp(e, p)?.0;
    let tf = tp(f, p)?.0;
    let j = p.len();
    Ok((tf + j - te) % j)
}

/// The connector length forced by the types in a j-block partition:
/// `j + tp` when `tp >= 2`, otherwise `2j + tp`; always within
/// `{j+2, ..., 2j+1}`.
pub fn prescribed_from_type(j: usize, tp_pair: usize) -> usize {
    if tp_pair >= 2 {
        j + tp_pair
    } else {
        2 * j + tp_pair
    }
}

pub fn prescribed_length(e: &[Vertex], f: &[Vertex], p: &VertexPartition) -> Result<usize> {
    Ok(prescribed_from_type(p.len(), tp_pair(e, f, p)?))
}

/// The forced vertex order of `e` inside a positively oriented path starting
/// (or ending) at `e`: blocks appear in cyclic order beginning right after
/// the missed block.
pub fn oriented_order(e: &[Vertex], p: &VertexPartition) -> Result<Vec<Vertex>> {
    let missed = tp(e, p)?.0 - 1; // 0-based
    let j = p.len();
    let mut by_block: BTreeMap<usize, Vertex> = BTreeMap::new();
    for &v in e {
        by_block.insert(p.block_of(v).unwrap(), v);
    }
    Ok((1..j).map(|d| by_block[&((missed + d) % j)]).collect())
}

/// The crown gadget: a base tight cycle on `t(k-1)` vertices plus `t` rim
/// vertices, each joined by the k window edges straddling its insertion
/// point. Vertices are labelled `0..t(k-1)` (base) then onwards (rim).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crown {
    pub k: usize,
    pub t: usize,
    pub base: Vec<Vertex>,
    pub rim: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

pub fn build_crown(k: usize, t: usize) -> Result<Crown> {
    if k < 2 || t < 2 {
        return Err(Error::InvalidArgument(format!(
            "crown needs k >= 2 and t >= 2, got k={} t={}",
            k, t
        )));
    }
    let m = t * (k - 1);
    if m < k + 1 {
        return Err(Error::InvalidArgument(format!(
            "base on {} vertices is not a valid tight cycle (needs {} or more)",
            m,
            k + 1
        )));
    }
    let base: Vec<Vertex> = (0..m).collect();
    let rim: Vec<Vertex> = (m..m + t).collect();
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..m {
        let mut w: Edge = (0..k).map(|d| (i + d) % m).collect();
        w.sort_unstable();
        edges.insert(w);
    }
    for i in 0..t {
        for j in 0..k {
            let mut e: Edge = (0..k - 1).map(|d| ((k - 1) * i + j + d) % m).collect();
            e.push(rim[i]);
            e.sort_unstable();
            edges.insert(e);
        }
    }
    Ok(Crown {
        k,
        t,
        base,
        rim,
        edges: edges.into_iter().collect(),
    })
}

impl Crown {
    pub fn vertex_count(&self) -> usize {
        self.base.len() + self.rim.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.k, self.vertex_count(), self.edges.iter().cloned()).unwrap()
    }

    /// The crown as a 1-coloured instance; all its edges exist monochromatically.
    pub fn as_coloured(&self) -> ColouredHypergraph {
        ColouredHypergraph::new(
            self.k,
            self.vertex_count(),
            1,
            self.edges.iter().cloned().map(|e| (e, 1)),
        )
        .unwrap()
    }
}

/// The explicit spanning cycle over `base` plus a subset of rim vertices:
/// rim vertex `i` slots in after the last vertex of base segment `i`. Every
/// window of the result is either a base window or one of rim vertex `i`'s
/// crown edges, so the sequence is a tight cycle whenever those edges exist
/// in the host.
pub fn crown_insertion_sequence(
    k: usize,
    base: &[Vertex],
    rim: &[Vertex],
    selected: &BTreeSet<Vertex>,
) -> Vec<Vertex> {
    let t = rim.len();
    let mut seq = Vec::with_capacity(base.len() + selected.len());
    for i in 0..t {
        seq.extend_from_slice(&base[(k - 1) * i..(k - 1) * (i + 1)]);
        if selected.contains(&rim[i]) {
            seq.push(rim[i]);
        }
    }
    seq
}

/// Result of an absorber check: for every subset of `b`, is there a
/// monochromatic tight cycle spanning exactly `a` plus that subset?
#[derive(Debug, Clone)]
pub struct AbsorbsReport {
    pub holds: bool,
    /// One witness cycle per checked subset (keyed by the sorted subset).
    pub witnesses: BTreeMap<Vec<Vertex>, (TightCycle, CycleColour)>,
    pub counterexample: Option<Vec<Vertex>>,
}

pub const DEFAULT_ABSORB_BUDGET: usize = 12;

/// Exhaustive absorber check by Hamilton-tight-cycle search per subset.
pub fn absorbs(
    g: &ColouredHypergraph,
    a: &[Vertex],
    b: &[Vertex],
    max_b: usize,
) -> Result<AbsorbsReport> {
    let a_set: BTreeSet<Vertex> = a.iter().copied().collect();
    let b_set: BTreeSet<Vertex> = b.iter().copied().collect();
    if a_set.is_empty() {
        return Err(Error::InvalidArgument("absorber set A must be non-empty".into()));
    }
    if !a_set.is_disjoint(&b_set) {
        return Err(Error::InvalidArgument("A and B must be disjoint".into()));
    }
    if b_set.len() > max_b {
        return Err(Error::SizeLimit {
            what: "absorber subset enumeration",
            limit: max_b,
            actual: b_set.len(),
        });
    }
    let b_vec: Vec<Vertex> = b_set.iter().copied().collect();
    let mut report = AbsorbsReport {
        holds: true,
        witnesses: BTreeMap::new(),
        counterexample: None,
    };
    for mask in 0u64..(1u64 << b_vec.len()) {
        let mut verts = a_set.clone();
        let mut key = Vec::new();
        for (i, &v) in b_vec.iter().enumerate() {
            if mask & (1 << i) != 0 {
                verts.insert(v);
                key.push(v);
            }
        }
        match crate::search::spanning_mono_tight_cycle(g, &verts) {
            Some((cycle, colour)) => {
                report.witnesses.insert(key, (cycle, colour));
            }
            None => {
                report.holds = false;
                report.counterexample = Some(key);
                break;
            }
        }
    }
    Ok(report)
}

/// Lifts an auxiliary (k-1)-uniform tight cycle over parts `B_1..B_{k-1}`
/// together with rim vertices `v_1..v_t` into a k-uniform tight cycle,
/// eagerly validating every link condition against the host in colour
/// `colour`. The rim vertex `v_s` follows the s-th aux segment; the window
/// starting at aux position `(s-1)(k-1) + (i-1)` must lie in `Lk(v_s)`, and
/// each segment itself also in `Lk(v_{s-1})` (wrapping).
pub fn lift_cycle(
    g: &ColouredHypergraph,
    parts: &[Vec<Vertex>],
    aux_seq: &[Vertex],
    rim: &[Vertex],
    colour: Colour,
) -> std::result::Result<TightCycle, LiftError> {
    let k = g.k();
    if k < 2 {
        return Err(LiftError::Structure("host uniformity below 2".into()));
    }
    if parts.len() != k - 1 {
        return Err(LiftError::Structure(format!(
            "{} parts given, expected {}",
            parts.len(),
            k - 1
        )));
    }
    if colour < 1 || colour > g.r() {
        return Err(LiftError::Structure(format!("unknown colour {}", colour)));
    }
    let t = rim.len();
    if t < 2 {
        return Err(LiftError::Structure("rim must have at least 2 vertices".into()));
    }
    if aux_seq.len() != t * (k - 1) {
        return Err(LiftError::Structure(format!(
            "aux sequence has {} vertices, expected t(k-1) = {}",
            aux_seq.len(),
            t * (k - 1)
        )));
    }
    let aux_set: BTreeSet<Vertex> = aux_seq.iter().copied().collect();
    let rim_set: BTreeSet<Vertex> = rim.iter().copied().collect();
    if aux_set.len() != aux_seq.len() || rim_set.len() != rim.len() {
        return Err(LiftError::Structure("repeated vertex".into()));
    }
    if !aux_set.is_disjoint(&rim_set) {
        return Err(LiftError::Structure("aux and rim overlap".into()));
    }
    let part_of = |v: Vertex| parts.iter().position(|p| p.contains(&v));
    for &v in aux_seq {
        if part_of(v).is_none() {
            return Err(LiftError::Structure(format!(
                "aux vertex {} lies in no part",
                v
            )));
        }
    }
    for &v in rim {
        if part_of(v).is_some() {
            return Err(LiftError::Structure(format!(
                "rim vertex {} lies inside a part",
                v
            )));
        }
    }
    let m = aux_seq.len();
    // every cyclic (k-1)-window of the aux cycle must be a transversal of
    // the parts, i.e. the aux sequence is a tight cycle in the complete
    // partite (k-1)-graph
    if k >= 3 {
        for start in 0..m {
            let mut hit = vec![false; k - 1];
            for d in 0..k - 1 {
                let i = part_of(aux_seq[(start + d) % m]).unwrap();
                if hit[i] {
                    return Err(LiftError::Structure(format!(
                        "aux window at {} meets part {} twice",
                        start,
                        i + 1
                    )));
                }
                hit[i] = true;
            }
        }
    }
    let aux_window = |start: usize| -> Vec<Vertex> {
        (0..k - 1).map(|d| aux_seq[(start + d) % m]).collect()
    };
    let check = |window: &[Vertex], v: Vertex| -> bool {
        let mut e: Edge = window.to_vec();
        e.push(v);
        g.colour_of(&e) == Some(colour)
    };
    for s in 1..=t {
        let seg_start = (s - 1) * (k - 1);
        let prev_rim = rim[(s + t - 2) % t]; // v_{s-1}, wrapping to v_t
        if !check(&aux_window(seg_start), prev_rim) {
            return Err(LiftError::Wrap { s });
        }
        for i in 1..=k - 1 {
            if !check(&aux_window(seg_start + i - 1), rim[s - 1]) {
                return Err(LiftError::Window { s, i });
            }
        }
    }
    let mut seq = Vec::with_capacity(m + t);
    for s in 0..t {
        seq.extend_from_slice(&aux_seq[s * (k - 1)..(s + 1) * (k - 1)]);
        seq.push(rim[s]);
    }
    Ok(TightCycle::new(k, seq).canonical())
}
