//! Oriented knot/link diagrams.
//!
//! Two levels of structure coexist here:
//!
//! * [`ArcDiagram`] — arc-level combinatorics: arcs and signed crossings
//!   `(over, under_in, under_out, sign)`. Enough for Fox colorings, Wirtinger
//!   presentations and Seifert-matrix work, but it does **not** determine a
//!   planar embedding (the order of over-passages along an arc is lost).
//! * [`EmbeddedLink`] — a full planar embedding as a PD code with explicit
//!   edge successors. This is what the branched-cover engine consumes: faces
//!   of the underlying 4-valent graph are recoverable from it.
//!
//! Embedded diagrams are produced either by parsing a PD code or through the
//! [`MorseBuilder`], which assembles a diagram bottom-to-top from cups, caps
//! and crossings (the form in which plats and band scenes are generated).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("two-bridge spec must have even length >= 2 and nonzero entries")]
    BadTwoBridgeSpec,
    #[error("family parameters must be nonzero")]
    ZeroParameter,
    #[error("arc-level data has no embedding; this operation needs a PD code")]
    InsufficientEmbedding,
    #[error("parse error: {0}")]
    Parse(String),
}

/// One crossing at the arc level: the over-arc and the two under-arcs, with
/// sign +1 for a right-handed crossing (frame `[over-tangent, under-tangent]`
/// positively oriented) and -1 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// Arc-level oriented diagram. Arcs are dense integers `0..arcs` in traversal
/// order; for a knot with at least one crossing, `arcs == crossings.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDiagram {
    pub arcs: usize,
    pub crossings: Vec<Crossing>,
}

impl ArcDiagram {
    pub fn unknot() -> Self {
        ArcDiagram {
            arcs: 1,
            crossings: vec![],
        }
    }

    /// Check the incidence invariants: every arc occurs exactly once as
    /// `under_in` and once as `under_out` (when there are crossings), and
    /// signs are ±1.
    pub fn validate(&self) -> Result<(), DiagramError> {
        if self.arcs == 0 {
            return Err(DiagramError::Invalid("no arcs".into()));
        }
        if self.crossings.is_empty() {
            return Ok(());
        }
        let mut ins = vec![0usize; self.arcs];
        let mut outs = vec![0usize; self.arcs];
        for c in &self.crossings {
            if c.over >= self.arcs || c.under_in >= self.arcs || c.under_out >= self.arcs {
                return Err(DiagramError::Invalid("arc index out of range".into()));
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::Invalid("crossing sign must be ±1".into()));
            }
            ins[c.under_in] += 1;
            outs[c.under_out] += 1;
        }
        for a in 0..self.arcs {
            if ins[a] != 1 || outs[a] != 1 {
                return Err(DiagramError::Invalid(format!(
                    "arc {a} must appear exactly once as under_in and under_out"
                )));
            }
        }
        Ok(())
    }

    /// Wirtinger presentation: generators are the arcs, one relation per
    /// crossing of the form `under_out = over^sign · under_in · over^(-sign)`.
    /// Returned as the abelianized relation matrix rows
    /// (under_out − under_in = 0), plus the word data for each relation.
    pub fn wirtinger(&self) -> WirtingerPresentation {
        let relations = self
            .crossings
            .iter()
            .map(|c| WirtingerRelation {
                over: c.over,
                under_in: c.under_in,
                under_out: c.under_out,
                sign: c.sign,
            })
            .collect();
        WirtingerPresentation {
            generators: self.arcs,
            relations,
        }
    }

    pub fn to_json(&self) -> String {
        let rec = InterchangeRecord {
            arcs: self.arcs,
            crossings: self
                .crossings
                .iter()
                .map(|c| [c.over as i64, c.under_in as i64, c.under_out as i64, c.sign as i64])
                .collect(),
            embedded: None,
        };
        serde_json::to_string_pretty(&rec).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, DiagramError> {
        let rec: InterchangeRecord =
            serde_json::from_str(s).map_err(|e| DiagramError::Parse(e.to_string()))?;
        rec.arc_diagram()
    }
}

/// Conjugation relation `under_out = over^sign · under_in · over^(−sign)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WirtingerRelation {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct WirtingerPresentation {
    pub generators: usize,
    pub relations: Vec<WirtingerRelation>,
}

impl WirtingerPresentation {
    /// Abelianized relation matrix (one row per relation).
    pub fn abelianized(&self) -> Vec<Vec<crate::Int>> {
        self.relations
            .iter()
            .map(|r| {
                let mut row = vec![crate::Int::from(0); self.generators];
                row[r.under_out] += 1;
                row[r.under_in] -= 1;
                row
            })
            .collect()
    }
}

/// JSON interchange record: `{arcs, crossings: [[over,under_in,under_out,sign]…]}`
/// with an optional embedded payload carrying a PD code and edge successors.
#[derive(Serialize, Deserialize)]
struct InterchangeRecord {
    arcs: usize,
    crossings: Vec<[i64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedded: Option<EmbeddedRecord>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddedRecord {
    pd: Vec<[usize; 4]>,
    next: Vec<usize>,
}

impl InterchangeRecord {
    fn arc_diagram(&self) -> Result<ArcDiagram, DiagramError> {
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let idx = |v: i64| -> Result<usize, DiagramError> {
                usize::try_from(v).map_err(|_| DiagramError::Parse("negative arc index".into()))
            };
            crossings.push(Crossing {
                over: idx(c[0])?,
                under_in: idx(c[1])?,
                under_out: idx(c[2])?,
                sign: if c[3] == 1 {
                    1
                } else if c[3] == -1 {
                    -1
                } else {
                    return Err(DiagramError::Parse("sign must be ±1".into()));
                },
            });
        }
        let d = ArcDiagram {
            arcs: self.arcs,
            crossings,
        };
        d.validate()?;
        Ok(d)
    }
}

/// Parse an interchange JSON document into an embedded link, failing with
/// [`DiagramError::InsufficientEmbedding`] when only arc-level data is given.
pub fn embedded_from_json(s: &str) -> Result<EmbeddedLink, DiagramError> {
    let rec: InterchangeRecord =
        serde_json::from_str(s).map_err(|e| DiagramError::Parse(e.to_string()))?;
    let emb = rec.embedded.as_ref().ok_or(DiagramError::InsufficientEmbedding)?;
    EmbeddedLink::new(emb.pd.clone(), emb.next.clone())
}

/// Serialize an embedded link together with its arc-level projection.
pub fn embedded_to_json(link: &EmbeddedLink) -> String {
    let arc = link.arc_diagram();
    let rec = InterchangeRecord {
        arcs: arc.arcs,
        crossings: arc
            .crossings
            .iter()
            .map(|c| [c.over as i64, c.under_in as i64, c.under_out as i64, c.sign as i64])
            .collect(),
        embedded: Some(EmbeddedRecord {
            pd: link.pd.clone(),
            next: link.next.clone(),
        }),
    };
    serde_json::to_string_pretty(&rec).expect("serializable")
}

/// Planar diagram with full embedding data.
///
/// `pd[x] = [a, b, c, d]` lists the four edges at crossing `x` counterclockwise
/// starting from the incoming under-edge `a` (so the under-strand runs
/// `a → c`). `next[e]` is the edge following `e` along its component. The sign
/// convention matches [`Crossing::sign`]: the crossing is `+1` exactly when the
/// over-strand runs `d → b`.
#[derive(Clone, Debug)]
pub struct EmbeddedLink {
    pub pd: Vec<[usize; 4]>,
    pub next: Vec<usize>,
    pub signs: Vec<i8>,
    /// Edge cycles of the components, in orientation order.
    pub components: Vec<Vec<usize>>,
    /// Arc id of each edge (arcs = maximal over-strands between
    /// under-passages; single-component arcs without under-passages get one
    /// arc for the whole component).
    pub edge_arc: Vec<usize>,
    pub n_arcs: usize,
    /// Component id of each edge.
    pub edge_component: Vec<usize>,
}

impl EmbeddedLink {
    pub fn n_edges(&self) -> usize {
        self.next.len()
    }

    pub fn n_crossings(&self) -> usize {
        self.pd.len()
    }

    pub fn new(pd: Vec<[usize; 4]>, next: Vec<usize>) -> Result<Self, DiagramError> {
        let n_edges = next.len();
        if n_edges != 2 * pd.len() {
            return Err(DiagramError::Invalid(format!(
                "expected {} edges for {} crossings, got {}",
                2 * pd.len(),
                pd.len(),
                n_edges
            )));
        }
        // every edge appears exactly twice among the PD slots
        let mut uses = vec![0usize; n_edges];
        for x in &pd {
            for &e in x {
                if e >= n_edges {
                    return Err(DiagramError::Invalid("edge index out of range".into()));
                }
                uses[e] += 1;
            }
        }
        if uses.iter().any(|&u| u != 2) {
            return Err(DiagramError::Invalid(
                "every edge must occur exactly twice in the PD code".into(),
            ));
        }
        // successor must be a permutation
        let mut seen = vec![false; n_edges];
        for &e in &next {
            if e >= n_edges || seen[e] {
                return Err(DiagramError::Invalid("next is not a permutation".into()));
            }
            seen[e] = true;
        }
        // under-strand consistency and signs
        let mut signs = Vec::with_capacity(pd.len());
        for (i, x) in pd.iter().enumerate() {
            let [a, b, c, d] = *x;
            if next[a] != c {
                return Err(DiagramError::Invalid(format!(
                    "crossing {i}: under strand must run slot0 → slot2"
                )));
            }
            let over_db = next[d] == b;
            let over_bd = next[b] == d;
            if over_db == over_bd {
                return Err(DiagramError::Invalid(format!(
                    "crossing {i}: over strand direction is ambiguous"
                )));
            }
            signs.push(if over_db { 1 } else { -1 });
        }
        // components from the successor permutation
        let mut comp_of = vec![usize::MAX; n_edges];
        let mut components = Vec::new();
        for e0 in 0..n_edges {
            if comp_of[e0] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut cyc = Vec::new();
            let mut e = e0;
            loop {
                comp_of[e] = id;
                cyc.push(e);
                e = next[e];
                if e == e0 {
                    break;
                }
            }
            components.push(cyc);
        }
        // arcs: merge edges across over-passages. union-find over edges.
        let mut parent: Vec<usize> = (0..n_edges).collect();
        fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in &pd {
            let (b, d) = (x[1], x[3]);
            // over-incoming and over-outgoing edges belong to one arc
            let (rb, rd) = (find(&mut parent, b), find(&mut parent, d));
            if rb != rd {
                parent[rb] = rd;
            }
        }
        let mut arc_ids = std::collections::HashMap::new();
        let mut edge_arc = vec![0usize; n_edges];
        // deterministic arc numbering: first appearance in component order
        for cyc in &components {
            for &e in cyc {
                let r = find(&mut parent, e);
                let n = arc_ids.len();
                let id = *arc_ids.entry(r).or_insert(n);
                edge_arc[e] = id;
            }
        }
        Ok(EmbeddedLink {
            pd,
            next,
            signs,
            components,
            edge_arc,
            n_arcs: arc_ids.len(),
            edge_component: comp_of,
        })
    }

    /// Project to the arc-level diagram (forgetting the embedding).
    pub fn arc_diagram(&self) -> ArcDiagram {
        let crossings = self
            .pd
            .iter()
            .zip(&self.signs)
            .map(|(x, &s)| Crossing {
                over: self.edge_arc[x[1]],
                under_in: self.edge_arc[x[0]],
                under_out: self.edge_arc[x[2]],
                sign: s,
            })
            .collect();
        ArcDiagram {
            arcs: self.n_arcs,
            crossings,
        }
    }

    /// Faces of the underlying 4-valent planar graph. Each face is returned
    /// as a cyclic list of (crossing, slot) corners, where corner `(x, s)`
    /// denotes the sector between slots `s` and `s+1 (mod 4)` of crossing `x`.
    /// Euler's formula `c - 2c + f = 2` is asserted.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.pd.len();
        if n == 0 {
            return vec![vec![]];
        }
        // incidences of each edge: (crossing, slot), exactly two per edge
        let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n_edges()];
        for (x, quad) in self.pd.iter().enumerate() {
            for (s, &e) in quad.iter().enumerate() {
                inc[e].push((x, s));
            }
        }
        // face walk: from corner (x, s), traverse edge at slot s, arriving at
        // its other incidence (y, t); the next corner of the same face is
        // (y, (t + 3) % 4) — i.e. turn so the face stays on the same side.
        let mut visited = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for x0 in 0..n {
            for s0 in 0..4 {
                if visited[x0][s0] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut x, mut s) = (x0, s0);
                loop {
                    visited[x][s] = true;
                    face.push((x, s));
                    let e = self.pd[x][s];
                    let (y, t) = if inc[e][0] == (x, s) {
                        // a loop edge has both incidences at the same crossing
                        if inc[e][1] == (x, s) {
                            inc[e][0]
                        } else {
                            inc[e][1]
                        }
                    } else {
                        inc[e][0]
                    };
                    x = y;
                    s = (t + 3) % 4;
                    if (x, s) == (x0, s0) {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        assert_eq!(
            faces.len(),
            n + 2,
            "face count must satisfy Euler's formula for a planar diagram"
        );
        faces
    }
}

/// Parse a PD code in the textual form `X[1,4,2,5] X[3,6,4,1] …` (1-indexed
/// edges numbered consecutively along a single knot component, as in standard
/// PD tables). Separators between crossings may be whitespace or commas.
pub fn parse_pd_text(input: &str) -> Result<EmbeddedLink, DiagramError> {
    let mut pd = Vec::new();
    let mut rest = input.trim();
    while !rest.is_empty() {
        let start = rest
            .find(|ch| ch == 'X' || ch == 'x')
            .ok_or_else(|| DiagramError::Parse("expected X[...]".into()))?;
        rest = &rest[start + 1..];
        let open = rest
            .find(['[', '('])
            .ok_or_else(|| DiagramError::Parse("expected [ after X".into()))?;
        let close = rest
            .find([']', ')'])
            .ok_or_else(|| DiagramError::Parse("unterminated crossing".into()))?;
        if close < open {
            return Err(DiagramError::Parse("malformed brackets".into()));
        }
        let body = &rest[open + 1..close];
        let nums: Result<Vec<usize>, _> = body
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect();
        let nums = nums.map_err(|e| DiagramError::Parse(e.to_string()))?;
        if nums.len() != 4 {
            return Err(DiagramError::Parse("crossing needs 4 edges".into()));
        }
        if nums.iter().any(|&v| v == 0) {
            return Err(DiagramError::Parse("edges are 1-indexed".into()));
        }
        pd.push([nums[0] - 1, nums[1] - 1, nums[2] - 1, nums[3] - 1]);
        rest = rest[close + 1..].trim_start_matches([',', ' ', '\n', '\t', '\r']);
    }
    if pd.is_empty() {
        return Err(DiagramError::Parse("no crossings".into()));
    }
    let n_edges = 2 * pd.len();
    // consecutive numbering along one component: successor is e+1 cyclically
    let next: Vec<usize> = (0..n_edges).map(|e| (e + 1) % n_edges).collect();
    EmbeddedLink::new(pd, next)
}

/// Twist-region description of a two-bridge plat: nonzero twist counts of
/// even length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBridgeSpec {
    pub e: Vec<i64>,
}

impl TwoBridgeSpec {
    pub fn new(e: Vec<i64>) -> Result<Self, DiagramError> {
        if e.len() < 2 || e.len() % 2 != 0 || e.iter().any(|&x| x == 0) {
            return Err(DiagramError::BadTwoBridgeSpec);
        }
        Ok(TwoBridgeSpec { e })
    }

    /// The spec `C(2a, 2, 2b, −2, −2a, 2b)`.
    pub fn k1(a: i64, b: i64) -> Result<Self, DiagramError> {
        if a == 0 || b == 0 {
            return Err(DiagramError::ZeroParameter);
        }
        TwoBridgeSpec::new(vec![2 * a, 2, 2 * b, -2, -2 * a, 2 * b])
    }

    /// The spec `C(2a, 2, 2b, 2a, 2, 2b)`.
    pub fn k2(a: i64, b: i64) -> Result<Self, DiagramError> {
        if a == 0 || b == 0 {
            return Err(DiagramError::ZeroParameter);
        }
        TwoBridgeSpec::new(vec![2 * a, 2, 2 * b, 2 * a, 2, 2 * b])
    }
}

// ---------------------------------------------------------------------------
// Morse-position diagram builder
// ---------------------------------------------------------------------------

/// Which strand passes over at a [`MorseBuilder::cross`] event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    Left,
    Right,
}

/// Flow direction of a strand end relative to the upward sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Up,
    Down,
}

#[derive(Clone, Debug)]
struct StrandEnd {
    edge: usize,
    dir: Dir,
    /// arbitrary user tag carried along for layout bookkeeping
    tag: u64,
}

/// Builds an [`EmbeddedLink`] bottom-to-top from Morse events. Strand ends are
/// indexed by their current left-to-right position.
pub struct MorseBuilder {
    strands: Vec<StrandEnd>,
    pd: Vec<[usize; 4]>,
    n_edges: usize,
    // successor pairs collected during the sweep (pre-union-find edge ids)
    succ: Vec<(usize, usize)>,
    // union-find joining edge halves at caps/cups
    parent: Vec<usize>,
}

impl MorseBuilder {
    pub fn new() -> Self {
        MorseBuilder {
            strands: Vec::new(),
            pd: Vec::new(),
            n_edges: 0,
            succ: Vec::new(),
            parent: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.strands.len()
    }

    pub fn tag(&self, pos: usize) -> u64 {
        self.strands[pos].tag
    }

    pub fn dir(&self, pos: usize) -> Dir {
        self.strands[pos].dir
    }

    fn fresh_edge(&mut self) -> usize {
        let e = self.n_edges;
        self.n_edges += 1;
        self.parent.push(e);
        e
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Insert a local minimum at position `pos` (its two ends occupy
    /// positions `pos` and `pos+1` afterwards). `left_dir` orients the
    /// component: the left end flows in `left_dir`, the right end opposite.
    pub fn cup(&mut self, pos: usize, left_dir: Dir, tag: u64) {
        assert!(pos <= self.strands.len());
        let e = self.fresh_edge();
        let right_dir = match left_dir {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
        };
        self.strands.insert(
            pos,
            StrandEnd {
                edge: e,
                dir: right_dir,
                tag,
            },
        );
        self.strands.insert(
            pos,
            StrandEnd {
                edge: e,
                dir: left_dir,
                tag,
            },
        );
    }

    /// Join the strand ends at positions `pos` and `pos+1` with a local
    /// maximum. Their flow directions must be compatible (one in, one out).
    pub fn cap(&mut self, pos: usize) {
        assert!(pos + 1 < self.strands.len());
        let l = self.strands.remove(pos);
        let r = self.strands.remove(pos);
        assert_ne!(l.dir, r.dir, "cap requires opposite flow directions");
        let (rl, rr) = (self.find(l.edge), self.find(r.edge));
        assert_ne!(rl, rr, "cap would close a crossing-free loop");
        self.parent[rl] = rr;
    }

    /// Cross the strands at positions `pos` and `pos+1`; `over` selects which
    /// strand passes over. Returns the crossing index.
    pub fn cross(&mut self, pos: usize, over: Over) -> usize {
        assert!(pos + 1 < self.strands.len());
        let bl = self.strands[pos].clone(); // bottom-left
        let br = self.strands[pos + 1].clone(); // bottom-right
        let tl = self.fresh_edge(); // new top-left edge
        let tr = self.fresh_edge(); // new top-right edge
        // strands swap: bottom-left continues to top-right and vice versa
        self.succ.push(match bl.dir {
            Dir::Up => (bl.edge, tr),
            Dir::Down => (tr, bl.edge),
        });
        self.succ.push(match br.dir {
            Dir::Up => (br.edge, tl),
            Dir::Down => (tl, br.edge),
        });
        // PD slots counterclockwise: SW, SE, NE, NW
        let sw = bl.edge;
        let se = br.edge;
        let ne = tr;
        let nw = tl;
        // incoming under-edge: the under strand is the one not passing over
        let a_slot = match over {
            Over::Left => {
                // under strand runs SE ↔ NW
                match br.dir {
                    Dir::Up => 1,   // enters at SE
                    Dir::Down => 3, // enters at NW
                }
            }
            Over::Right => {
                // under strand runs SW ↔ NE
                match bl.dir {
                    Dir::Up => 0,   // enters at SW
                    Dir::Down => 2, // enters at NE
                }
            }
        };
        let slots = [sw, se, ne, nw];
        let quad = [
            slots[a_slot],
            slots[(a_slot + 1) % 4],
            slots[(a_slot + 2) % 4],
            slots[(a_slot + 3) % 4],
        ];
        self.pd.push(quad);
        self.strands[pos] = StrandEnd {
            edge: tl,
            dir: br.dir,
            tag: br.tag,
        };
        self.strands[pos + 1] = StrandEnd {
            edge: tr,
            dir: bl.dir,
            tag: bl.tag,
        };
        self.pd.len() - 1
    }

    /// Finish the sweep: all strands must be capped off already.
    pub fn finish(mut self) -> Result<EmbeddedLink, DiagramError> {
        if !self.strands.is_empty() {
            return Err(DiagramError::Invalid(format!(
                "{} strand ends left open",
                self.strands.len()
            )));
        }
        // renumber edges to union-find representatives, densely
        let mut dense = std::collections::HashMap::new();
        let mut rep_of = vec![0usize; self.n_edges];
        for e in 0..self.n_edges {
            let r = self.find(e);
            let n = dense.len();
            rep_of[e] = *dense.entry(r).or_insert(n);
        }
        let n_final = dense.len();
        let pd: Vec<[usize; 4]> = self
            .pd
            .iter()
            .map(|q| [rep_of[q[0]], rep_of[q[1]], rep_of[q[2]], rep_of[q[3]]])
            .collect();
        let mut next = vec![usize::MAX; n_final];
        for &(from, to) in &self.succ {
            let (f, t) = (rep_of[from], rep_of[to]);
            if next[f] != usize::MAX {
                return Err(DiagramError::Invalid("conflicting successors".into()));
            }
            next[f] = t;
        }
        if next.iter().any(|&e| e == usize::MAX) {
            return Err(DiagramError::Invalid(
                "diagram contains a crossing-free component".into(),
            ));
        }
        EmbeddedLink::new(pd, next)
    }
}

impl Default for MorseBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// A Morse event in a diagram program (see [`compile_program`]).
#[derive(Clone, Copy, Debug)]
pub enum Event {
    Cup { pos: usize, tag: u64 },
    Cap { pos: usize },
    Cross { pos: usize, over: Over },
}

/// Compile a Morse program into an embedded link.
///
/// Cup flow directions cannot be chosen independently — they are determined
/// (per component) by the closed-curve structure. This pass first simulates
/// the program to discover components and then orients each one. `anchors`
/// may pin the orientation of specific components: `(cup_ordinal, left_dir)`
/// demands that the left end of the given cup (0-based in program order)
/// flows in `left_dir`. Unanchored components are oriented deterministically.
pub fn compile_program(
    events: &[Event],
    anchors: &[(usize, Dir)],
) -> Result<EmbeddedLink, DiagramError> {
    // pass 1: track cup-end tokens through the program; caps join tokens
    #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
    struct Token {
        cup: usize,
        right: bool,
    }
    let mut stack: Vec<Token> = Vec::new();
    let mut n_cups = 0usize;
    let mut cap_pairs: Vec<(Token, Token)> = Vec::new();
    for ev in events {
        match *ev {
            Event::Cup { pos, .. } => {
                if pos > stack.len() {
                    return Err(DiagramError::Invalid("cup position out of range".into()));
                }
                stack.insert(
                    pos,
                    Token {
                        cup: n_cups,
                        right: true,
                    },
                );
                stack.insert(
                    pos,
                    Token {
                        cup: n_cups,
                        right: false,
                    },
                );
                n_cups += 1;
            }
            Event::Cap { pos } => {
                if pos + 1 >= stack.len() {
                    return Err(DiagramError::Invalid("cap position out of range".into()));
                }
                let l = stack.remove(pos);
                let r = stack.remove(pos);
                cap_pairs.push((l, r));
            }
            Event::Cross { pos, .. } => {
                if pos + 1 >= stack.len() {
                    return Err(DiagramError::Invalid("crossing position out of range".into()));
                }
                stack.swap(pos, pos + 1);
            }
        }
    }
    if !stack.is_empty() {
        return Err(DiagramError::Invalid("unclosed strands in program".into()));
    }
    // degree-2 graph on cup ends: min edges (within a cup) + cap edges
    let end_idx = |t: Token| 2 * t.cup + t.right as usize;
    let mut cap_partner = vec![usize::MAX; 2 * n_cups];
    for &(a, b) in &cap_pairs {
        cap_partner[end_idx(a)] = end_idx(b);
        cap_partner[end_idx(b)] = end_idx(a);
    }
    // traverse cycles; left_dirs[cup] = Some(dir) once oriented
    let mut left_dirs: Vec<Option<Dir>> = vec![None; n_cups];
    let mut comp_of_cup = vec![usize::MAX; n_cups];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n_cups {
        if comp_of_cup[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut cups_in = Vec::new();
        // walk the cycle: pass through each cup's min once, alternating with
        // cap edges; each cup of the component is entered exactly once
        let mut at = 2 * start; // enter `start` at its left end
        loop {
            let cup = at / 2;
            comp_of_cup[cup] = id;
            cups_in.push(cup);
            let entering_left = at % 2 == 0;
            // traversal L→R means flow goes down the left side of the min
            left_dirs[cup] = Some(if entering_left { Dir::Down } else { Dir::Up });
            let exit = if entering_left { at + 1 } else { at - 1 };
            let nxt = cap_partner[exit];
            if nxt == usize::MAX {
                return Err(DiagramError::Invalid("unmatched cup end".into()));
            }
            at = nxt;
            if at == 2 * start {
                break;
            }
        }
        comps.push(cups_in);
    }
    // apply anchors: flip whole components where requested
    let mut flip = vec![false; comps.len()];
    let mut pinned = vec![false; comps.len()];
    for &(cup, want) in anchors {
        if cup >= n_cups {
            return Err(DiagramError::Invalid("anchor references missing cup".into()));
        }
        let comp = comp_of_cup[cup];
        let have = left_dirs[cup].unwrap();
        let need_flip = have != want;
        if pinned[comp] && flip[comp] != need_flip {
            return Err(DiagramError::Invalid(
                "conflicting orientation anchors in one component".into(),
            ));
        }
        flip[comp] = need_flip;
        pinned[comp] = true;
    }
    let flipd = |d: Dir| match d {
        Dir::Up => Dir::Down,
        Dir::Down => Dir::Up,
    };
    // pass 2: replay with concrete orientations
    let mut b = MorseBuilder::new();
    let mut cup_no = 0usize;
    for ev in events {
        match *ev {
            Event::Cup { pos, tag } => {
                let mut d = left_dirs[cup_no].unwrap();
                if flip[comp_of_cup[cup_no]] {
                    d = flipd(d);
                }
                b.cup(pos, d, tag);
                cup_no += 1;
            }
            Event::Cap { pos } => b.cap(pos),
            Event::Cross { pos, over } => {
                b.cross(pos, over);
            }
        }
    }
    b.finish()
}

// ---------------------------------------------------------------------------
// Two-bridge plats
// ---------------------------------------------------------------------------

/// Embedded 4-plat for `C(e₁,…,e₂ₖ)`: the plat closure of
/// `σ₂^{e₁} σ₁^{−e₂} σ₂^{e₃} σ₁^{−e₄} ⋯` with cups `(1 2)(3 4)` and nested
/// caps `(1 4)(2 3)`. This normal form reproduces the symmetrized Seifert
/// form with diagonal `(−e₁, e₂, −e₃, …)`: the determinant of the diagram
/// equals `|det(L + Lᵀ)|` for every twist vector (checked in tests down to
/// the closed K₁/K₂ formulas).
pub fn embedded_two_bridge(spec: &TwoBridgeSpec) -> Result<EmbeddedLink, DiagramError> {
    let mut ev = vec![Event::Cup { pos: 0, tag: 0 }, Event::Cup { pos: 2, tag: 1 }];
    for (i, &e) in spec.e.iter().enumerate() {
        let pos = if i % 2 == 0 { 1 } else { 0 };
        let eff = if i % 2 == 0 { e } else { -e };
        let over = if eff > 0 { Over::Right } else { Over::Left };
        for _ in 0..eff.unsigned_abs() {
            ev.push(Event::Cross { pos, over });
        }
    }
    ev.push(Event::Cap { pos: 1 });
    ev.push(Event::Cap { pos: 0 });
    compile_program(&ev, &[])
}

/// Arc-level diagram of `C(e₁,…,e₂ₖ)` (projection of the embedded plat).
pub fn build_two_bridge(spec: &TwoBridgeSpec) -> Result<ArcDiagram, DiagramError> {
    Ok(embedded_two_bridge(spec)?.arc_diagram())
}

pub fn build_k1(a: i64, b: i64) -> Result<ArcDiagram, DiagramError> {
    build_two_bridge(&TwoBridgeSpec::k1(a, b)?)
}

pub fn build_k2(a: i64, b: i64) -> Result<ArcDiagram, DiagramError> {
    build_two_bridge(&TwoBridgeSpec::k2(a, b)?)
}

pub fn embedded_k1(a: i64, b: i64) -> Result<EmbeddedLink, DiagramError> {
    embedded_two_bridge(&TwoBridgeSpec::k1(a, b)?)
}

pub fn embedded_k2(a: i64, b: i64) -> Result<EmbeddedLink, DiagramError> {
    embedded_two_bridge(&TwoBridgeSpec::k2(a, b)?)
}

/// The standard 3-crossing trefoil as an embedded diagram.
pub fn embedded_trefoil() -> EmbeddedLink {
    parse_pd_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::smith_divisors;

    #[test]
    fn plat_crossing_counts() {
        let spec = TwoBridgeSpec::new(vec![2, 2, 4, -2, -2, 4]).unwrap();
        let d = build_two_bridge(&spec).unwrap();
        assert_eq!(d.crossings.len(), 16);
        d.validate().unwrap();

        let k1 = build_k1(1, 1).unwrap();
        assert_eq!(k1.crossings.len(), 12);
        k1.validate().unwrap();
    }

    #[test]
    fn bad_specs_rejected() {
        assert!(TwoBridgeSpec::new(vec![2, 0]).is_err());
        assert!(TwoBridgeSpec::new(vec![2, 2, 2]).is_err());
        assert!(TwoBridgeSpec::k1(0, 1).is_err());
        assert!(TwoBridgeSpec::k2(1, 0).is_err());
    }

    #[test]
    fn small_odd_specs() {
        // C(1,-2) closes to a 3-crossing unknot diagram in this normal form
        let l = embedded_two_bridge(&TwoBridgeSpec::new(vec![1, -2]).unwrap()).unwrap();
        assert_eq!(l.n_crossings(), 3);
        assert_eq!(l.components.len(), 1);
        l.arc_diagram().validate().unwrap();
    }

    #[test]
    fn wirtinger_abelianization_is_z() {
        let d = embedded_trefoil().arc_diagram();
        assert_eq!(d.arcs, 3);
        assert_eq!(d.crossings.len(), 3);
        let pres = d.wirtinger();
        let rel = pres.abelianized();
        let div = smith_divisors(&rel);
        // H1 of the knot complement: 3 generators, rank of relations 2,
        // no torsion → Z
        assert!(div.iter().all(|d| d == &crate::Int::from(1)));
        assert_eq!(pres.generators - div.len(), 1);
    }

    #[test]
    fn embedded_link_validation_and_faces() {
        let t = embedded_trefoil();
        assert_eq!(t.n_crossings(), 3);
        assert_eq!(t.n_edges(), 6);
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.n_arcs, 3);
        let faces = t.faces();
        assert_eq!(faces.len(), 5);
        // total corners = 4 per crossing
        let total: usize = faces.iter().map(|f| f.len()).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn signs_are_consistent_under_mirror() {
        let pos = embedded_two_bridge(&TwoBridgeSpec::new(vec![2, -2]).unwrap()).unwrap();
        let neg = embedded_two_bridge(&TwoBridgeSpec::new(vec![-2, 2]).unwrap()).unwrap();
        let sp: Vec<i8> = pos.signs.clone();
        let sn: Vec<i8> = neg.signs.iter().map(|&s| -s).collect();
        assert_eq!(sp, sn, "mirror diagram must flip every crossing sign");
    }

    #[test]
    fn pd_text_roundtrip() {
        // standard trefoil PD
        let t = parse_pd_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(t.n_crossings(), 3);
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.n_arcs, 3);
        t.faces();
        let d = t.arc_diagram();
        d.validate().unwrap();
        assert!(parse_pd_text("X[1,2,3]").is_err());
        assert!(parse_pd_text("garbage").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let d = embedded_trefoil();
        let s = embedded_to_json(&d);
        let d2 = embedded_from_json(&s).unwrap();
        assert_eq!(d.pd, d2.pd);
        assert_eq!(d.next, d2.next);
        let arc = ArcDiagram::from_json(&d.arc_diagram().to_json()).unwrap();
        assert_eq!(arc, d.arc_diagram());
        // arc-level-only JSON refuses to produce an embedding
        let arc_only = d.arc_diagram().to_json();
        assert_eq!(
            embedded_from_json(&arc_only).unwrap_err(),
            DiagramError::InsufficientEmbedding
        );
    }
}
