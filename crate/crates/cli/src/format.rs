//! Text formats for instances, certificates, subset families and power
//! certificates. Writers emit a canonical field order so identical content
//! is always byte-identical; the parser reports the offending line number.

use std::collections::BTreeSet;

use num_rational::Ratio;

use tightcycle::driver::{CertifiedCycle, PartitionCertificate, PowerCycle, Provenance};
use tightcycle::hypergraph::{k_subsets, Colour, ColouredHypergraph, Vertex};
use tightcycle::lemmas::{OwnerId, SubsetFamily};
use tightcycle::tight::{Conventions, TightCycle};

pub const INSTANCE_HEADER: &str = "tightcycle instance v1";
pub const CERT_HEADER: &str = "tightcycle certificate v1";
pub const FAMILY_HEADER: &str = "tightcycle family v1";
pub const POWER_HEADER: &str = "tightcycle power-certificate v1";

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            msg: msg.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

type PResult<T> = std::result::Result<T, ParseError>;

/// A parsed instance: the coloured hypergraph plus the declared
/// independence bound and convention flags.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: ColouredHypergraph,
    pub alpha: Option<usize>,
    pub lehel: bool,
}

impl Instance {
    pub fn conventions(&self) -> Conventions {
        if self.lehel {
            Conventions::lehel()
        } else {
            Conventions::strict()
        }
    }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> PResult<usize> {
    tok.parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected {}, got `{}`", what, tok)))
}

/// Accepts `a/b` or a bare integer.
pub fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    match s.split_once('/') {
        Some((a, b)) => {
            let num = a.trim().parse::<i64>().ok()?;
            let den = b.trim().parse::<i64>().ok()?;
            if den == 0 {
                return None;
            }
            Some(Ratio::new(num, den))
        }
        None => Some(Ratio::from_integer(s.trim().parse::<i64>().ok()?)),
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-empty, non-comment line as (1-based number, tokens).
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((i + 1, line.split_whitespace().collect()));
        }
        None
    }
}

fn expect_header(lines: &mut Lines, header: &str) -> PResult<()> {
    match lines.next_tokens() {
        Some((no, toks)) => {
            if toks.join(" ") == header {
                Ok(())
            } else {
                Err(ParseError::new(
                    no,
                    format!("expected header `{}`", header),
                ))
            }
        }
        None => Err(ParseError::new(1, format!("missing header `{}`", header))),
    }
}

pub fn parse_instance(text: &str) -> PResult<Instance> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, INSTANCE_HEADER)?;
    let mut k = None;
    let mut n = None;
    let mut r = None;
    let mut alpha = None;
    let mut lehel = false;
    let mut edges: Vec<(Vec<Vertex>, Colour, usize)> = Vec::new();
    let mut complete: Option<(Vec<Colour>, usize)> = None;
    while let Some((no, toks)) = lines.next_tokens() {
        match toks[0] {
            "k" if toks.len() == 2 => k = Some(parse_usize(no, toks[1], "uniformity")?),
            "n" if toks.len() == 2 => n = Some(parse_usize(no, toks[1], "vertex count")?),
            "r" if toks.len() == 2 => r = Some(parse_usize(no, toks[1], "colour count")?),
            "alpha" if toks.len() == 2 => {
                alpha = Some(parse_usize(no, toks[1], "independence bound")?)
            }
            "lehel" if toks.len() == 1 => lehel = true,
            "complete" => {
                let cs: PResult<Vec<Colour>> = toks[1..]
                    .iter()
                    .map(|t| parse_usize(no, t, "colour"))
                    .collect();
                complete = Some((cs?, no));
            }
            "edge" if toks.len() >= 3 => {
                let c = parse_usize(no, toks[1], "colour")?;
                let vs: PResult<Vec<Vertex>> = toks[2..]
                    .iter()
                    .map(|t| parse_usize(no, t, "vertex"))
                    .collect();
                edges.push((vs?, c, no));
            }
            other => {
                return Err(ParseError::new(no, format!("unknown keyword `{}`", other)))
            }
        }
    }
    let k = k.ok_or_else(|| ParseError::new(1, "missing `k` line"))?;
    let n = n.ok_or_else(|| ParseError::new(1, "missing `n` line"))?;
    let r = r.ok_or_else(|| ParseError::new(1, "missing `r` line"))?;
    if lehel && k != 2 {
        return Err(ParseError::new(
            1,
            "the lehel flag applies only to graphs (k = 2)",
        ));
    }
    let graph = match complete {
        Some((colours, no)) => {
            if !edges.is_empty() {
                return Err(ParseError::new(
                    no,
                    "`complete` and `edge` lines are mutually exclusive",
                ));
            }
            ColouredHypergraph::complete_with_colouring(k, n, r, &colours)
                .map_err(|e| ParseError::new(no, e.to_string()))?
        }
        None => {
            let mut coloured = Vec::with_capacity(edges.len());
            for (vs, c, no) in edges {
                if vs.len() != k {
                    return Err(ParseError::new(
                        no,
                        format!("edge has {} vertices, expected {}", vs.len(), k),
                    ));
                }
                if c < 1 || c > r {
                    return Err(ParseError::new(no, format!("colour {} outside 1..={}", c, r)));
                }
                coloured.push((vs, c));
            }
            // report duplicate or malformed edges at the file level
            ColouredHypergraph::new(k, n, r, coloured)
                .map_err(|e| ParseError::new(1, e.to_string()))?
        }
    };
    Ok(Instance {
        graph,
        alpha,
        lehel,
    })
}

pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    out.push_str(INSTANCE_HEADER);
    out.push('\n');
    out.push_str(&format!("k {}\n", g.k()));
    out.push_str(&format!("n {}\n", g.n()));
    out.push_str(&format!("r {}\n", g.r()));
    if let Some(a) = inst.alpha {
        out.push_str(&format!("alpha {}\n", a));
    }
    if inst.lehel {
        out.push_str("lehel\n");
    }
    let all = k_subsets(g.n(), g.k());
    if all.len() == g.edge_count() && !all.is_empty() {
        out.push_str("complete");
        for e in &all {
            out.push_str(&format!(" {}", g.colour_of(e).unwrap()));
        }
        out.push('\n');
    } else {
        for (e, c) in g.coloured_edges() {
            out.push_str(&format!("edge {}", c));
            for v in e {
                out.push_str(&format!(" {}", v));
            }
            out.push('\n');
        }
    }
    out
}

/// Parses a certificate; `k` is the uniformity of the instance it will be
/// checked against (cycles carry it for window computations).
pub fn parse_certificate(text: &str, k: usize) -> PResult<PartitionCertificate> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, CERT_HEADER)?;
    let (no, toks) = lines
        .next_tokens()
        .ok_or_else(|| ParseError::new(1, "missing `instance` line"))?;
    if toks.len() != 2 || toks[0] != "instance" {
        return Err(ParseError::new(no, "expected `instance <digest>`"));
    }
    let digest = toks[1].to_string();
    let (no, toks) = lines
        .next_tokens()
        .ok_or_else(|| ParseError::new(no, "missing `cycles` line"))?;
    if toks.len() != 2 || toks[0] != "cycles" {
        return Err(ParseError::new(no, "expected `cycles <count>`"));
    }
    let count = parse_usize(no, toks[1], "cycle count")?;
    let mut cycles = Vec::with_capacity(count);
    while let Some((no, toks)) = lines.next_tokens() {
        if toks[0] != "cycle" || toks.len() < 4 {
            return Err(ParseError::new(
                no,
                "expected `cycle <colour> <provenance> <vertices...>`",
            ));
        }
        let colour = parse_usize(no, toks[1], "colour")?;
        let provenance = Provenance::parse(toks[2])
            .ok_or_else(|| ParseError::new(no, format!("unknown provenance `{}`", toks[2])))?;
        let seq: PResult<Vec<Vertex>> = toks[3..]
            .iter()
            .map(|t| parse_usize(no, t, "vertex"))
            .collect();
        cycles.push(CertifiedCycle {
            cycle: TightCycle::new(k, seq?),
            colour,
            provenance,
        });
    }
    if cycles.len() != count {
        return Err(ParseError::new(
            1,
            format!("declared {} cycles but found {}", count, cycles.len()),
        ));
    }
    Ok(PartitionCertificate {
        instance_digest: digest,
        cycles,
    })
}

pub fn write_certificate(cert: &PartitionCertificate) -> String {
    let mut out = String::new();
    out.push_str(CERT_HEADER);
    out.push('\n');
    out.push_str(&format!("instance {}\n", cert.instance_digest));
    out.push_str(&format!("cycles {}\n", cert.cycles.len()));
    for cc in &cert.cycles {
        out.push_str(&format!("cycle {} {}", cc.colour, cc.provenance.label()));
        for v in &cc.cycle.seq {
            out.push_str(&format!(" {}", v));
        }
        out.push('\n');
    }
    out
}

pub fn parse_family(text: &str) -> PResult<SubsetFamily> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, FAMILY_HEADER)?;
    let (no, toks) = lines
        .next_tokens()
        .ok_or_else(|| ParseError::new(1, "missing `ground` line"))?;
    if toks.len() != 2 || toks[0] != "ground" {
        return Err(ParseError::new(no, "expected `ground <size>`"));
    }
    let ground = parse_usize(no, toks[1], "ground size")?;
    let mut members = Vec::new();
    while let Some((no, toks)) = lines.next_tokens() {
        if toks[0] != "member" || toks.len() < 2 {
            return Err(ParseError::new(no, "expected `member <owner> <elements...>`"));
        }
        let owner: OwnerId = parse_usize(no, toks[1], "owner id")?;
        let elems: PResult<BTreeSet<usize>> = toks[2..]
            .iter()
            .map(|t| parse_usize(no, t, "element"))
            .collect();
        members.push((owner, elems?));
    }
    SubsetFamily::new(ground, members).map_err(|e| ParseError::new(1, e.to_string()))
}

pub fn write_family(family: &SubsetFamily) -> String {
    let mut out = String::new();
    out.push_str(FAMILY_HEADER);
    out.push('\n');
    out.push_str(&format!("ground {}\n", family.ground_size));
    for (owner, set) in &family.members {
        out.push_str(&format!("member {}", owner));
        for x in set {
            out.push_str(&format!(" {}", x));
        }
        out.push('\n');
    }
    out
}

pub fn parse_power_certificate(text: &str) -> PResult<(String, usize, Vec<PowerCycle>)> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, POWER_HEADER)?;
    let (no, toks) = lines
        .next_tokens()
        .ok_or_else(|| ParseError::new(1, "missing `instance` line"))?;
    if toks.len() != 2 || toks[0] != "instance" {
        return Err(ParseError::new(no, "expected `instance <digest>`"));
    }
    let digest = toks[1].to_string();
    let (no, toks) = lines
        .next_tokens()
        .ok_or_else(|| ParseError::new(no, "missing `p` line"))?;
    if toks.len() != 2 || toks[0] != "p" {
        return Err(ParseError::new(no, "expected `p <power>`"));
    }
    let p = parse_usize(no, toks[1], "power")?;
    let (no, toks) = lines
        .next_tokens()
        .ok_or_else(|| ParseError::new(no, "missing `cycles` line"))?;
    if toks.len() != 2 || toks[0] != "cycles" {
        return Err(ParseError::new(no, "expected `cycles <count>`"));
    }
    let count = parse_usize(no, toks[1], "count")?;
    let mut items = Vec::with_capacity(count);
    while let Some((no, toks)) = lines.next_tokens() {
        if toks[0] != "cycle" || toks.len() < 3 {
            return Err(ParseError::new(no, "expected `cycle <colour> <vertices...>`"));
        }
        let colour = parse_usize(no, toks[1], "colour")?;
        let seq: PResult<Vec<Vertex>> = toks[2..]
            .iter()
            .map(|t| parse_usize(no, t, "vertex"))
            .collect();
        items.push(PowerCycle { seq: seq?, colour });
    }
    if items.len() != count {
        return Err(ParseError::new(
            1,
            format!("declared {} cycles but found {}", count, items.len()),
        ));
    }
    Ok((digest, p, items))
}

pub fn write_power_certificate(digest: &str, p: usize, items: &[PowerCycle]) -> String {
    let mut out = String::new();
    out.push_str(POWER_HEADER);
    out.push('\n');
    out.push_str(&format!("instance {}\n", digest));
    out.push_str(&format!("p {}\n", p));
    out.push_str(&format!("cycles {}\n", items.len()));
    for item in items {
        out.push_str(&format!("cycle {}", item.colour));
        for v in &item.seq {
            out.push_str(&format!(" {}", v));
        }
        out.push('\n');
    }
    out
}
