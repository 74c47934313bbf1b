//! Band-surface scenes.
//!
//! The two-bridge knot `C(e₁,…,e₂ₖ)` bounds a genus-`k` surface `V` drawn as
//! a rectangular disk whose top edge carries `2k` bands in the interleaved
//! order `1L 2L 1R 3L 2R 4L 3R …`. Band `b` carries `d_b` half-twists, where
//! `d` is the diagonal of the symmetrized Seifert matrix, and rises to its
//! own height range so that consecutive bands cross exactly once in
//! projection.
//!
//! Curves on `V` are described combinatorially: a cyclic sequence of band
//! visits (band, direction, a block key ordering parallel strands inside the
//! band). Between visits a curve runs through the disk as a rectangular
//! "staple" below the top edge. Every described curve is realized by four
//! overlay components — the two normal push-offs `γ⁻, γ⁺` of the curve and
//! the push-offs `γ∥⁻, γ∥⁺` of its in-surface parallel copy — drawn at
//! per-curve z-levels. The conceptual curve itself is never drawn.
//!
//! The whole picture is an arrangement of closed integer polylines with a
//! z-level per segment; it is flattened into an [`EmbeddedLink`] by an exact
//! segment-intersection sweep. Marker edges (one per overlay component, in a
//! common vertical corridor per described curve, plus one on the disk's
//! bottom bar) let cover computations pair lifted components consistently.

use crate::diagram::{DiagramError, EmbeddedLink};

pub const LANE: i64 = 4;
const GAP: i64 = 32;

type P = (i64, i64);

// ---------------------------------------------------------------------------
// polyline arrangement -> EmbeddedLink
// ---------------------------------------------------------------------------

/// A closed polyline with a z-level per segment. Segment `i` runs from
/// `pts[i]` to `pts[(i+1) % n]` at level `layers[i]`; at every projection
/// crossing the strand with the larger level passes over.
#[derive(Clone, Debug)]
pub struct Strand {
    pub pts: Vec<P>,
    pub layers: Vec<i64>,
    /// Optional marker: (segment index, x-coordinate on that segment). The
    /// assembler reports which diagram edge contains the marker point.
    pub marker: Option<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct Assembled {
    pub link: EmbeddedLink,
    /// Component id of each strand.
    pub strand_component: Vec<usize>,
    /// Marker edge of each strand that declared a marker.
    pub marker_edge: Vec<Option<usize>>,
}

fn cross2(a: P, b: P) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

/// Exact parameter of a proper intersection along segment `p0->p1`, as a
/// positive-denominator fraction.
fn inter_param(p0: P, p1: P, q0: P, q1: P) -> (i128, i128) {
    let dq = sub(q1, q0);
    let num = cross2(dq, sub(p0, q0));
    let den = cross2(dq, sub(p1, p0));
    // t = num/den with the segment parametrized p0 + t (p1-p0)
    if den < 0 {
        (num, -den) // flip to make denominator positive; num sign flips too
    } else {
        (-num, den)
    }
}

fn frac_less(a: (i128, i128), b: (i128, i128)) -> bool {
    a.0 * b.1 < b.0 * a.1
}

struct Passage {
    seg: usize,
    t: (i128, i128),
    crossing: usize,
    over: bool,
    dir: P,
}

/// Flatten an arrangement of closed polylines into a link diagram.
///
/// Requirements (checked): all crossings are transversal double points in the
/// interiors of segments, the two segments at a crossing have distinct
/// levels, every strand is crossed at least once, and the diagram is
/// connected.
pub fn assemble(strands: &[Strand]) -> Result<Assembled, DiagramError> {
    let err = |m: String| DiagramError::Invalid(m);
    // collect segments
    struct Seg {
        strand: usize,
        idx: usize,
        a: P,
        b: P,
        layer: i64,
    }
    let mut segs: Vec<Seg> = Vec::new();
    for (si, s) in strands.iter().enumerate() {
        if s.pts.len() < 3 {
            return Err(err(format!("strand {si} has fewer than 3 points")));
        }
        if s.layers.len() != s.pts.len() {
            return Err(err(format!("strand {si}: layers/pts length mismatch")));
        }
        let n = s.pts.len();
        for i in 0..n {
            let a = s.pts[i];
            let b = s.pts[(i + 1) % n];
            if a == b {
                return Err(err(format!("strand {si} segment {i} has zero length")));
            }
            segs.push(Seg {
                strand: si,
                idx: i,
                a,
                b,
                layer: s.layers[i],
            });
        }
    }
    // crossings by exhaustive pairwise test with bbox prefilter
    let mut crossings: Vec<(usize, usize)> = Vec::new(); // (under seg id, over seg id)
    let mut passages: Vec<Vec<Passage>> =
        (0..strands.len()).map(|_| Vec::new()).collect();
    let bbox = |s: &Seg| {
        (
            s.a.0.min(s.b.0),
            s.a.0.max(s.b.0),
            s.a.1.min(s.b.1),
            s.a.1.max(s.b.1),
        )
    };
    let boxes: Vec<_> = segs.iter().map(bbox).collect();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (x0, x1, y0, y1) = boxes[i];
            let (u0, u1, v0, v1) = boxes[j];
            if x1 < u0 || u1 < x0 || y1 < v0 || v1 < y0 {
                continue;
            }
            let (p, q) = (&segs[i], &segs[j]);
            let adjacent = p.strand == q.strand && {
                let n = strands[p.strand].pts.len();
                (p.idx + 1) % n == q.idx || (q.idx + 1) % n == p.idx
            };
            if adjacent {
                continue;
            }
            let d1 = cross2(sub(p.b, p.a), sub(q.a, p.a));
            let d2 = cross2(sub(p.b, p.a), sub(q.b, p.a));
            let d3 = cross2(sub(q.b, q.a), sub(p.a, q.a));
            let d4 = cross2(sub(q.b, q.a), sub(p.b, q.a));
            let proper = d1 * d2 < 0 && d3 * d4 < 0;
            if !proper {
                // reject any non-generic contact
                let touching = (d1 == 0 && on_seg(p.a, p.b, q.a))
                    || (d2 == 0 && on_seg(p.a, p.b, q.b))
                    || (d3 == 0 && on_seg(q.a, q.b, p.a))
                    || (d4 == 0 && on_seg(q.a, q.b, p.b));
                if touching {
                    return Err(err(format!(
                        "non-transversal contact between strand {} seg {} and strand {} seg {}",
                        p.strand, p.idx, q.strand, q.idx
                    )));
                }
                continue;
            }
            if p.layer == q.layer {
                return Err(err(format!(
                    "equal-level crossing between strand {} seg {} ({:?}-{:?}) and strand {} seg {} ({:?}-{:?}), level {}",
                    p.strand, p.idx, p.a, p.b, q.strand, q.idx, q.a, q.b, p.layer
                )));
            }
            let (iu, io) = if p.layer < q.layer { (i, j) } else { (j, i) };
            let xid = crossings.len();
            crossings.push((iu, io));
            for (sid, over) in [(iu, false), (io, true)] {
                let s = &segs[sid];
                let other = &segs[if sid == iu { io } else { iu }];
                let t = inter_param(s.a, s.b, other.a, other.b);
                assert!(t.0 > 0 && t.0 < t.1, "interior intersection expected");
                passages[s.strand].push(Passage {
                    seg: s.idx,
                    t,
                    crossing: xid,
                    over,
                    dir: sub(s.b, s.a),
                });
            }
        }
    }
    // order passages along each strand
    for (si, ps) in passages.iter_mut().enumerate() {
        if ps.is_empty() {
            return Err(err(format!("strand {si} has no crossings")));
        }
        ps.sort_by(|a, b| {
            a.seg
                .cmp(&b.seg)
                .then_with(|| {
                    if frac_less(a.t, b.t) {
                        std::cmp::Ordering::Less
                    } else if frac_less(b.t, a.t) {
                        std::cmp::Ordering::Greater
                    } else {
                        std::cmp::Ordering::Equal
                    }
                })
        });
        for w in ps.windows(2) {
            if w[0].seg == w[1].seg && !frac_less(w[0].t, w[1].t) {
                return Err(err(format!("coincident crossing points on strand {si}")));
            }
        }
    }
    // edge ids: strand s passage j is followed by edge base[s]+j
    let mut base = vec![0usize; strands.len()];
    let mut acc = 0;
    for (s, ps) in passages.iter().enumerate() {
        base[s] = acc;
        acc += ps.len();
    }
    let n_edges = acc;
    let mut next = vec![0usize; n_edges];
    for (s, ps) in passages.iter().enumerate() {
        let m = ps.len();
        for j in 0..m {
            next[base[s] + j] = base[s] + (j + 1) % m;
        }
    }
    // pd slots
    let mut under_at: Vec<Option<(usize, usize)>> = vec![None; crossings.len()];
    let mut over_at: Vec<Option<(usize, usize)>> = vec![None; crossings.len()];
    for (s, ps) in passages.iter().enumerate() {
        for (j, p) in ps.iter().enumerate() {
            if p.over {
                over_at[p.crossing] = Some((s, j));
            } else {
                under_at[p.crossing] = Some((s, j));
            }
        }
    }
    let mut pd = Vec::with_capacity(crossings.len());
    for x in 0..crossings.len() {
        let (su, ju) = under_at[x].unwrap();
        let (so, jo) = over_at[x].unwrap();
        let mu = passages[su].len();
        let mo = passages[so].len();
        let a = base[su] + (ju + mu - 1) % mu;
        let c = base[su] + ju;
        let oi = base[so] + (jo + mo - 1) % mo;
        let oo = base[so] + jo;
        let u = passages[su][ju].dir;
        let o = passages[so][jo].dir;
        let (b, d) = if cross2(u, o) < 0 { (oo, oi) } else { (oi, oo) };
        pd.push([a, b, c, d]);
    }
    let link = EmbeddedLink::new(pd, next)?;
    let strand_component: Vec<usize> = (0..strands.len())
        .map(|s| link.edge_component[base[s]])
        .collect();
    // markers
    let mut marker_edge = vec![None; strands.len()];
    for (s, st) in strands.iter().enumerate() {
        if let Some((seg, x)) = st.marker {
            let n = st.pts.len();
            let a = st.pts[seg];
            let b = st.pts[(seg + 1) % n];
            if a.1 != b.1 || (x - a.0).signum() * (x - b.0).signum() >= 0 {
                return Err(err(format!("strand {s}: marker not interior to segment")));
            }
            // param of the marker on its segment
            let tm = if b.0 > a.0 {
                ((x - a.0) as i128, (b.0 - a.0) as i128)
            } else {
                ((a.0 - x) as i128, (a.0 - b.0) as i128)
            };
            let mut cnt = 0usize;
            for p in &passages[s] {
                if p.seg < seg || (p.seg == seg && frac_less(p.t, tm)) {
                    cnt += 1;
                }
                if p.seg == seg && !frac_less(p.t, tm) && !frac_less(tm, p.t) {
                    return Err(err(format!("strand {s}: marker hits a crossing")));
                }
            }
            let m = passages[s].len();
            marker_edge[s] = Some(base[s] + (cnt + m - 1) % m);
        }
    }
    Ok(Assembled {
        link,
        strand_component,
        marker_edge,
    })
}

fn on_seg(a: P, b: P, q: P) -> bool {
    q.0 >= a.0.min(b.0) && q.0 <= a.0.max(b.0) && q.1 >= a.1.min(b.1) && q.1 <= a.1.max(b.1)
}

// ---------------------------------------------------------------------------
// scene specification
// ---------------------------------------------------------------------------

/// One pass of a curve through a band.
#[derive(Clone, Debug)]
pub struct Visit {
    /// Band index, 0-based.
    pub band: usize,
    /// `+1`: enter at the left foot, exit at the right; `-1`: the reverse.
    pub dir: i8,
    /// Ordering key among the parallel strand blocks inside this band
    /// (unique per band across all visits of all curves).
    pub block: i64,
}

pub fn visit(band: usize, dir: i8, block: i64) -> Visit {
    Visit { band, dir, block }
}

/// A curve on the surface, as a cyclic visit sequence plus its declared
/// homology class in the band basis (verified geometrically by
/// [`verify_scene_form`]).
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub visits: Vec<Visit>,
    pub class: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct SceneSpec {
    /// Continued-fraction parameters of the boundary knot `C(e₁,…,e₂ₖ)`.
    pub e: Vec<i64>,
    /// Curves; by convention curve 0 (when present) is the distinguished one
    /// that all others must avoid on the surface.
    pub curves: Vec<CurveSpec>,
}

/// Orientation of the homology basis curve of band `b` relative to the
/// left-to-right traversal of the band: `+1, +1, -1, -1, +1, +1, …`.
/// Pinned empirically against the Seifert matrix by the
/// `band_class_orientations_are_uniform` test.
pub fn band_sign(b: usize) -> i64 {
    if b % 4 < 2 {
        1
    } else {
        -1
    }
}

/// Index of the four overlay copies of a curve.
pub const COPY_PAR_NEG: usize = 0;
pub const COPY_NEG: usize = 1;
pub const COPY_POS: usize = 2;
pub const COPY_PAR_POS: usize = 3;

#[derive(Clone, Debug)]
pub struct Scene {
    pub link: EmbeddedLink,
    pub alpha_component: usize,
    /// Edge on the disk's crossing-free bottom bar.
    pub alpha_marker_edge: usize,
    /// Per curve: component ids of `[γ∥⁻, γ⁻, γ⁺, γ∥⁺]`.
    pub copy_components: Vec<[usize; 4]>,
    /// Per curve: marker edges of the four copies, all in one clear vertical
    /// corridor over the curve's first staple.
    pub copy_markers: Vec<[usize; 4]>,
    /// Declared homology classes.
    pub classes: Vec<Vec<i64>>,
    /// z-levels of the four copies of each curve.
    pub z_levels: Vec<[i64; 4]>,
}

// Geometry conventions, pinned by the linking self-check in the tests below:
// in a positive (d_b > 0) half-twist the strand that starts the half-twist
// nearer the band's right edge crosses over, and where consecutive bands
// cross, the higher band passes over.
const TWIST_RIGHT_OVER: bool = false;
const BAND_UPPER_OVER: bool = false;

// layer levels
const BAND_LAYER_0: i64 = 1_000_000;
const BAND_LAYER_STEP: i64 = 10_000;

fn band_layer(b: usize) -> i64 {
    if BAND_UPPER_OVER {
        BAND_LAYER_0 + BAND_LAYER_STEP * b as i64
    } else {
        BAND_LAYER_0 - BAND_LAYER_STEP * b as i64
    }
}

fn z_levels(q: usize) -> [i64; 4] {
    let q = q as i64;
    [-(4 * q + 4), -(4 * q + 3), 4 * q + 3, 4 * q + 4]
}

/// Interleaved foot order: `1L 2L 1R 3L 2R … nL (n-1)R nR` (0-based bands).
fn foot_order(n: usize) -> Vec<(usize, bool)> {
    let mut v = vec![(0, false)];
    for b in 1..n {
        v.push((b, false));
        v.push((b - 1, true));
    }
    v.push((n - 1, true));
    v
}

struct Layout {
    n: usize,
    feet: Vec<(usize, bool)>,
    foot_of: Vec<[usize; 2]>, // band -> [left foot pos, right foot pos]
    foot_x0: Vec<i64>,
    gad_x0: Vec<i64>,
    w: Vec<usize>,  // lanes per band
    t: Vec<i64>,    // signed half-twist counts
    h: Vec<i64>,    // rail base heights
    x_max: i64,
    /// per band: blocks in lane order as (curve, visit index)
    blocks: Vec<Vec<(usize, usize)>>,
}

fn layout(spec: &SceneSpec) -> Result<Layout, DiagramError> {
    let n = spec.e.len();
    if n < 2 || n % 2 != 0 || spec.e.iter().any(|&x| x == 0) {
        return Err(DiagramError::BadTwoBridgeSpec);
    }
    let t: Vec<i64> = spec
        .e
        .iter()
        .enumerate()
        .map(|(i, &e)| if i % 2 == 0 { -e } else { e })
        .collect();
    // blocks per band
    let mut blocks: Vec<Vec<(i64, usize, usize)>> = vec![Vec::new(); n];
    for (q, c) in spec.curves.iter().enumerate() {
        if c.visits.is_empty() || c.class.len() != n {
            return Err(DiagramError::Invalid(format!("curve {q}: bad spec")));
        }
        let mut dirs = vec![0i64; n];
        for (i, v) in c.visits.iter().enumerate() {
            if v.band >= n || (v.dir != 1 && v.dir != -1) {
                return Err(DiagramError::Invalid(format!("curve {q} visit {i}: bad")));
            }
            dirs[v.band] += v.dir as i64;
            blocks[v.band].push((v.block, q, i));
        }
        for b in 0..n {
            if c.class[b] != band_sign(b) * dirs[b] {
                return Err(DiagramError::Invalid(format!(
                    "curve {q}: class coordinate {b} is {} but signed band passages give {}",
                    c.class[b],
                    band_sign(b) * dirs[b]
                )));
            }
        }
    }
    let mut blk = Vec::with_capacity(n);
    for (b, mut v) in blocks.into_iter().enumerate() {
        v.sort();
        for w in v.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(DiagramError::Invalid(format!(
                    "band {b}: duplicate block key {}",
                    w[0].0
                )));
            }
        }
        blk.push(v.into_iter().map(|(_, q, i)| (q, i)).collect::<Vec<_>>());
    }
    let w: Vec<usize> = blk.iter().map(|v| 2 + 4 * v.len()).collect();
    let feet = foot_order(n);
    let mut foot_of = vec![[0usize; 2]; n];
    for (p, &(b, right)) in feet.iter().enumerate() {
        foot_of[b][right as usize] = p;
    }
    let mut x = 0i64;
    let mut foot_x0 = vec![0i64; feet.len()];
    let mut gad_x0 = vec![0i64; n];
    for (p, &(b, right)) in feet.iter().enumerate() {
        if right {
            // twist gadget zone immediately left of the band's right foot
            let wb = w[b] as i64;
            let slots = t[b].abs() * wb * (wb - 1) / 2;
            gad_x0[b] = x;
            x += LANE * (slots + 4);
        }
        foot_x0[p] = x;
        x += LANE * (w[b] as i64 + 1) + GAP;
    }
    let h: Vec<i64> = (0..n).map(|b| 200 + 240 * b as i64).collect();
    Ok(Layout {
        n,
        feet,
        foot_of,
        foot_x0,
        gad_x0,
        w,
        t,
        h,
        x_max: x,
        blocks: blk,
    })
}

impl Layout {
    fn lane_x_left(&self, b: usize, lane: usize) -> i64 {
        self.foot_x0[self.foot_of[b][0]] + LANE * (lane as i64 + 1)
    }
    fn rail_x_right(&self, b: usize, rail: usize) -> i64 {
        self.foot_x0[self.foot_of[b][1]] + LANE * (rail as i64 + 1)
    }
    fn rail_y(&self, b: usize, rail: usize) -> i64 {
        self.h[b] + LANE * rail as i64
    }
    fn foot_end(&self, p: usize) -> i64 {
        let (b, _) = self.feet[p];
        self.foot_x0[p] + LANE * (self.w[b] as i64 + 1)
    }
}

/// Open path with per-segment layers.
#[derive(Clone, Debug, Default)]
struct Path {
    pts: Vec<P>,
    layers: Vec<i64>,
}

impl Path {
    fn push(&mut self, p: P, layer: i64) {
        if let Some(&last) = self.pts.last() {
            if last == p {
                return;
            }
            self.layers.push(layer);
        }
        self.pts.push(p);
    }
    fn extend_path(&mut self, other: &Path, reversed: bool) {
        if !reversed {
            for (i, &p) in other.pts.iter().enumerate() {
                let layer = if i == 0 {
                    *other.layers.first().unwrap_or(&0)
                } else {
                    other.layers[i - 1]
                };
                self.push(p, layer);
            }
        } else {
            for (i, &p) in other.pts.iter().enumerate().rev() {
                let layer = if i == other.pts.len() - 1 {
                    *other.layers.last().unwrap_or(&0)
                } else {
                    other.layers[i]
                };
                self.push(p, layer);
            }
        }
    }
}

/// Build the lane paths of one band, left foot to right foot, including the
/// twist gadget. Lane 0 is the band's left edge (a boundary strand), lane
/// `w-1` the right edge.
fn band_paths(ly: &Layout, b: usize) -> Vec<Path> {
    let w = ly.w[b];
    let base = band_layer(b);
    let mut paths: Vec<Path> = (0..w)
        .map(|l| {
            let mut p = Path::default();
            let x = ly.lane_x_left(b, l);
            p.push((x, 0), base);
            p.push((x, ly.rail_y(b, w - 1 - l)), base);
            p
        })
        .collect();
    // rail occupancy: at_rail[r] = strand (lane) currently on rail r
    let mut rail_of: Vec<usize> = (0..w).map(|l| w - 1 - l).collect(); // lane -> rail
    let mut at_rail: Vec<usize> = (0..w).rev().collect(); // rail -> lane
    let mut cur_x = ly.gad_x0[b] + 2 * LANE;
    let st = ly.t[b].signum();
    for _ in 0..ly.t[b].abs() {
        let start_rail = rail_of.clone();
        for i in 0..w.saturating_sub(1) {
            for j in 0..(w - 1 - i) {
                let lo = at_rail[j];
                let hi = at_rail[j + 1];
                // over/under by position at the start of this half-twist
                let hi_over = ((st > 0) == TWIST_RIGHT_OVER) == (start_rail[hi] < start_rail[lo]);
                // rail index grows upward; "right edge" of the band at the
                // left foot is lane w-1 = rail 0, so smaller start rail means
                // nearer the right edge.
                let (ol, ul) = (base + 901, base + 900);
                let y_lo = ly.rail_y(b, j);
                let y_hi = ly.rail_y(b, j + 1);
                paths[lo].push((cur_x, y_lo), base);
                paths[lo].push((cur_x + LANE, y_hi), if hi_over { ul } else { ol });
                paths[hi].push((cur_x, y_hi), base);
                paths[hi].push((cur_x + LANE, y_lo), if hi_over { ol } else { ul });
                rail_of[lo] = j + 1;
                rail_of[hi] = j;
                at_rail[j] = hi;
                at_rail[j + 1] = lo;
                cur_x += LANE;
            }
        }
    }
    debug_assert!(cur_x <= ly.gad_x0[b] + LANE * (ly.t[b].abs() * (w as i64) * (w as i64 - 1) / 2 + 4));
    for (l, path) in paths.iter_mut().enumerate() {
        let r = rail_of[l];
        debug_assert_eq!(r, w - 1 - l, "even twist count restores lane order");
        let x = ly.rail_x_right(b, r);
        path.push((x, ly.rail_y(b, r)), base);
        path.push((x, 0), base);
    }
    paths
}

/// Conceptual chord endpoints: x-position of a visit's entry/exit at a foot,
/// at the center of its block (offset 2 mod 4, between the copy lanes).
fn block_center_left(ly: &Layout, b: usize, rank: usize) -> i64 {
    ly.lane_x_left(b, 1 + 4 * rank) + 2 * LANE - 2
}
fn block_center_right(ly: &Layout, b: usize, rank: usize) -> i64 {
    // lanes 1+4r..4+4r sit on rails w-2-4r-3..w-2-4r, centered accordingly
    let w = ly.w[b];
    ly.rail_x_right(b, w - 1 - (1 + 4 * rank)) - 2 * LANE + 2
}

struct ChordEnd {
    foot: usize, // foot position index
    x_concept: i64,
    x_copy: [i64; 4],
}

/// Exit/entry data of a visit. `entry = true` gives the end where the curve
/// enters the band.
fn visit_end(ly: &Layout, spec: &SceneSpec, q: usize, i: usize, entry: bool) -> ChordEnd {
    let v = &spec.curves[q].visits[i];
    let b = v.band;
    let rank = ly.blocks[b].iter().position(|&x| x == (q, i)).unwrap();
    let left = (v.dir == 1) == entry;
    let foot = ly.foot_of[b][if left { 0 } else { 1 }];
    if left {
        let x_concept = block_center_left(ly, b, rank);
        let x_copy =
            core::array::from_fn(|c| ly.lane_x_left(b, 1 + 4 * rank + c));
        ChordEnd {
            foot,
            x_concept,
            x_copy,
        }
    } else {
        let w = ly.w[b];
        let x_concept = block_center_right(ly, b, rank);
        let x_copy =
            core::array::from_fn(|c| ly.rail_x_right(b, w - 1 - (1 + 4 * rank + c)));
        ChordEnd {
            foot,
            x_concept,
            x_copy,
        }
    }
}

/// Build the scene. Fails if the conceptual curves violate the surface
/// embedding rules (self-crossings, or any curve crossing curve 0 on `V`).
pub fn build_scene(spec: &SceneSpec) -> Result<Scene, DiagramError> {
    let ly = layout(spec)?;
    let nq = spec.curves.len();

    // --- conceptual chords, depth ranks ---
    // chord i of curve q runs from exit(visit i) to entry(visit i+1)
    let mut chords: Vec<(usize, usize, ChordEnd, ChordEnd)> = Vec::new();
    for (q, c) in spec.curves.iter().enumerate() {
        let m = c.visits.len();
        for i in 0..m {
            let e = visit_end(&ly, spec, q, i, false);
            let f = visit_end(&ly, spec, q, (i + 1) % m, true);
            chords.push((q, i, e, f));
        }
    }
    // depth ranks by conceptual span (nested chords must nest in depth)
    let mut order: Vec<usize> = (0..chords.len()).collect();
    order.sort_by_key(|&k| {
        let c = &chords[k];
        ((c.2.x_concept - c.3.x_concept).abs(), c.0, c.1)
    });
    let mut rank_of = vec![0usize; chords.len()];
    for (r, &k) in order.iter().enumerate() {
        rank_of[k] = r;
    }
    let concept_depth = |k: usize| -(24 + LANE * rank_of[k] as i64);
    // copy staple depths: 4 consecutive slots per conceptual chord, shallower
    // copies = narrower spans
    let copy_depth = |k: usize, c: usize| {
        let ch = &chords[k];
        let span = |c: usize| (ch.2.x_copy[c] - ch.3.x_copy[c]).abs();
        let mut s: Vec<usize> = (0..4).collect();
        s.sort_by_key(|&c| (span(c), c));
        let slot = s.iter().position(|&x| x == c).unwrap();
        -(24 + LANE * (4 * rank_of[k] + slot) as i64) - LANE * chords.len() as i64
    };
    // (conceptual and copy depths live in disjoint ranges; they are never in
    // the same arrangement, but keeping them apart avoids any confusion)

    // --- conceptual embedding check ---
    {
        let mut c_strands: Vec<Strand> = Vec::new();
        for (q, c) in spec.curves.iter().enumerate() {
            let m = c.visits.len();
            let mut path = Path::default();
            for i in 0..m {
                let v = &c.visits[i];
                let b = v.band;
                let rank = ly.blocks[b].iter().position(|&x| x == (q, i)).unwrap();
                let xl = block_center_left(&ly, b, rank);
                let xr = block_center_right(&ly, b, rank);
                let w = ly.w[b];
                // conceptual rail height: center of the block's rail range
                let yr = ly.rail_y(b, w - 1 - (1 + 4 * rank)) - 2 * LANE + 2;
                let band_pts = [(xl, 0), (xl, yr), (xr, yr), (xr, 0)];
                let it: Vec<P> = if v.dir == 1 {
                    band_pts.to_vec()
                } else {
                    band_pts.iter().rev().cloned().collect()
                };
                for p in it {
                    path.push(p, 10 + q as i64);
                }
                // staple to next visit
                let k = chords
                    .iter()
                    .position(|&(cq, ci, _, _)| cq == q && ci == i)
                    .unwrap();
                let d = concept_depth(k);
                let (xe, xn) = (chords[k].2.x_concept, chords[k].3.x_concept);
                path.push((xe, d), 10 + q as i64);
                path.push((xn, d), 10 + q as i64);
                path.push((xn, 0), 10 + q as i64);
            }
            assert_eq!(path.pts[0], *path.pts.last().unwrap());
            path.pts.pop();
            c_strands.push(Strand {
                pts: path.pts,
                layers: path.layers,
                marker: None,
            });
        }
        // pairwise proper intersections with y<0 are genuine on-surface
        // crossings; in the bands (y>0) projection overlaps are not.
        let viol = conceptual_violations(&c_strands);
        if !viol.is_empty() {
            return Err(DiagramError::Invalid(format!(
                "conceptual curve system not embeddable as specified: {}",
                viol.join("; ")
            )));
        }
    }

    // --- real strands ---
    let paths_per_band: Vec<Vec<Path>> = (0..ly.n).map(|b| band_paths(&ly, b)).collect();
    let mut strands: Vec<Strand> = Vec::new();
    // strand 0: alpha (the boundary knot)
    {
        // open pieces: per band the two edge lanes, plus top gaps and the
        // bottom bar; stitched into one closed loop
        let mut pieces: Vec<Path> = Vec::new();
        for b in 0..ly.n {
            pieces.push(paths_per_band[b][0].clone());
            pieces.push(paths_per_band[b][ly.w[b] - 1].clone());
        }
        let left_conn = |p: usize| ly.foot_x0[p] + LANE;
        let right_conn = |p: usize| {
            let (b, _) = ly.feet[p];
            ly.foot_x0[p] + LANE * ly.w[b] as i64
        };
        for p in 0..ly.feet.len() - 1 {
            let mut g = Path::default();
            g.push((right_conn(p), 0), 1);
            g.push((left_conn(p + 1), 0), 1);
            pieces.push(g);
        }
        let depth_bot = -(24 + LANE * (5 * chords.len() as i64) + 40);
        let mut u = Path::default();
        u.push((right_conn(ly.feet.len() - 1), 0), 1);
        u.push((ly.x_max, 0), 1);
        u.push((ly.x_max, depth_bot), 1);
        u.push((-GAP, depth_bot), 1);
        u.push((-GAP, 0), 1);
        u.push((left_conn(0), 0), 1);
        pieces.push(u);
        // stitch
        let mut used = vec![false; pieces.len()];
        let mut alpha = Path::default();
        alpha.extend_path(&pieces[0], false);
        used[0] = true;
        loop {
            let cur = *alpha.pts.last().unwrap();
            if cur == alpha.pts[0] {
                break;
            }
            let mut found = false;
            for (i, pc) in pieces.iter().enumerate() {
                if used[i] {
                    continue;
                }
                if pc.pts[0] == cur {
                    alpha.extend_path(pc, false);
                    used[i] = true;
                    found = true;
                    break;
                }
                if *pc.pts.last().unwrap() == cur {
                    alpha.extend_path(pc, true);
                    used[i] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(DiagramError::Invalid(
                    "boundary stitching failed".to_string(),
                ));
            }
        }
        if used.iter().any(|&u| !u) {
            return Err(DiagramError::Invalid(
                "boundary is not a single loop".to_string(),
            ));
        }
        alpha.pts.pop();
        // marker on the bottom bar
        let seg = (0..alpha.pts.len())
            .find(|&i| {
                alpha.pts[i].1 == depth_bot && alpha.pts[(i + 1) % alpha.pts.len()].1 == depth_bot
            })
            .unwrap();
        let a = alpha.pts[seg];
        let bpt = alpha.pts[(seg + 1) % alpha.pts.len()];
        let mid = (a.0 + bpt.0) / 2;
        let mid = mid - mid.rem_euclid(4) + 2;
        strands.push(Strand {
            pts: alpha.pts,
            layers: alpha.layers,
            marker: Some((seg, mid)),
        });
    }
    // overlay copies
    let mut copy_strand_idx = vec![[0usize; 4]; nq];
    for (q, c) in spec.curves.iter().enumerate() {
        let m = c.visits.len();
        let zl = z_levels(q);
        for copy in 0..4 {
            let mut path = Path::default();
            let mut marker: Option<(P, P, i64)> = None; // seg endpoints + x
            for i in 0..m {
                let v = &c.visits[i];
                let b = v.band;
                let rank = ly.blocks[b].iter().position(|&x| x == (q, i)).unwrap();
                let lane = 1 + 4 * rank + copy;
                path.extend_path(&paths_per_band[b][lane], v.dir != 1);
                let k = chords
                    .iter()
                    .position(|&(cq, ci, _, _)| cq == q && ci == i)
                    .unwrap();
                let d = copy_depth(k, copy);
                let exit = *path.pts.last().unwrap();
                debug_assert_eq!(exit.1, 0);
                let x_entry = chords[k].3.x_copy[copy];
                path.push((exit.0, d), zl[copy]);
                path.push((x_entry, d), zl[copy]);
                path.push((x_entry, 0), zl[copy]);
                if i == 0 {
                    // marker corridor: a top-edge gap strictly between the
                    // first staple's endpoint feet
                    let (fa, fb) = (chords[k].2.foot, chords[k].3.foot);
                    if fa == fb {
                        return Err(DiagramError::Invalid(format!(
                            "curve {q}: first staple must join distinct feet"
                        )));
                    }
                    let (lo, hi) = (fa.min(fb), fa.max(fb));
                    let gp = lo; // gap between feet lo and lo+1 <= hi
                    debug_assert!(gp + 1 <= hi);
                    let x = ly.foot_end(gp) + 14;
                    debug_assert!(x < ly.foot_x0[gp + 1]);
                    marker = Some(((exit.0, d), (x_entry, d), x));
                }
            }
            assert_eq!(path.pts[0], *path.pts.last().unwrap());
            path.pts.pop();
            let (ma, mb, mx) = marker.unwrap();
            let seg = (0..path.pts.len())
                .find(|&i| path.pts[i] == ma && path.pts[(i + 1) % path.pts.len()] == mb)
                .unwrap();
            copy_strand_idx[q][copy] = strands.len();
            strands.push(Strand {
                pts: path.pts,
                layers: path.layers,
                marker: Some((seg, mx)),
            });
        }
    }
    let asm = assemble(&strands)?;
    let copy_components =
        copy_strand_idx
            .iter()
            .map(|row| core::array::from_fn(|c| asm.strand_component[row[c]]))
            .collect();
    let copy_markers = copy_strand_idx
        .iter()
        .map(|row| core::array::from_fn(|c| asm.marker_edge[row[c]].unwrap()))
        .collect();
    Ok(Scene {
        alpha_component: asm.strand_component[0],
        alpha_marker_edge: asm.marker_edge[0].unwrap(),
        copy_components,
        copy_markers,
        classes: spec.curves.iter().map(|c| c.class.clone()).collect(),
        z_levels: (0..nq).map(z_levels).collect(),
        link: asm.link,
    })
}

/// Proper pairwise intersections of conceptual strands below the top edge
/// (y < 0) are genuine on-surface intersections. Forbidden: any self
/// intersection, and any intersection involving strand 0.
fn conceptual_violations(strands: &[Strand]) -> Vec<String> {
    let mut out = Vec::new();
    let mut segs: Vec<(usize, usize, P, P)> = Vec::new();
    for (si, s) in strands.iter().enumerate() {
        let n = s.pts.len();
        for i in 0..n {
            segs.push((si, i, s.pts[i], s.pts[(i + 1) % n]));
        }
    }
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (s1, i1, a, b) = segs[i];
            let (s2, i2, c, d) = segs[j];
            if s1 == s2 {
                let n = strands[s1].pts.len();
                if (i1 + 1) % n == i2 || (i2 + 1) % n == i1 {
                    continue;
                }
            }
            let d1 = cross2(sub(b, a), sub(c, a));
            let d2 = cross2(sub(b, a), sub(d, a));
            let d3 = cross2(sub(d, c), sub(a, c));
            let d4 = cross2(sub(d, c), sub(b, c));
            if d1 * d2 < 0 && d3 * d4 < 0 {
                // intersection y-coordinate sign: both segments are axis
                // aligned here, so one of them is horizontal
                let y = if a.1 == b.1 { a.1 } else { c.1 };
                if y < 0 && (s1 == s2 || s1 == 0 || s2 == 0) {
                    out.push(format!(
                        "curves {s1}/{s2} intersect on the disk near x∈[{},{}]",
                        a.0.min(b.0).max(c.0.min(d.0)),
                        a.0.max(b.0).min(c.0.max(d.0))
                    ));
                }
            }
        }
    }
    out
}

/// Signed diagram linking number of two distinct components.
pub fn diagram_linking(link: &EmbeddedLink, ca: usize, cb: usize) -> i64 {
    assert_ne!(ca, cb);
    let mut total = 0i64;
    for (x, p) in link.pd.iter().enumerate() {
        let cu = link.edge_component[p[0]];
        let co = link.edge_component[p[1]];
        if (cu == ca && co == cb) || (cu == cb && co == ca) {
            total += link.signs[x] as i64;
        }
    }
    assert_eq!(total % 2, 0, "inter-component crossing sign sum must be even");
    total / 2
}

/// Verify the scene against the Seifert pairing: for every pair of overlay
/// copies, the diagram linking number must equal the Seifert form evaluated
/// on the declared classes, with the class of the lower-z copy as the first
/// argument (equivalently, `L[x][y]` is the linking of `y` with the negative
/// push-off of `x` in this z-orientation).
pub fn verify_scene_form(scene: &Scene, l: &[Vec<i64>]) -> Result<(), String> {
    let form = |x: &[i64], y: &[i64]| -> i64 {
        let mut acc = 0;
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += x[i] * l[i][j] * y[j];
            }
        }
        acc
    };
    let nq = scene.classes.len();
    let mut items: Vec<(usize, usize)> = Vec::new();
    for q in 0..nq {
        for c in 0..4 {
            items.push((q, c));
        }
    }
    for a in 0..items.len() {
        for b in (a + 1)..items.len() {
            let (qa, ca) = items[a];
            let (qb, cb) = items[b];
            let za = scene.z_levels[qa][ca];
            let zb = scene.z_levels[qb][cb];
            let got = diagram_linking(
                &scene.link,
                scene.copy_components[qa][ca],
                scene.copy_components[qb][cb],
            );
            let (lo_q, hi_q) = if za < zb { (qa, qb) } else { (qb, qa) };
            let want = form(&scene.classes[lo_q], &scene.classes[hi_q]);
            if got != want {
                return Err(format!(
                    "lk mismatch for curve {qa} copy {ca} vs curve {qb} copy {cb}: got {got}, want {want}"
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// shipped curve systems
// ---------------------------------------------------------------------------

/// The curve systems used by the Ξ pipeline: for each knot, one or more
/// realizations of a characteristic curve β (curve 0) together with a set of
/// surface curves spanning, with β, the full homology of the band surface
/// and disjoint from β on the surface.
pub mod systems {
    use super::{visit, CurveSpec, SceneSpec, Visit};

    fn curve(visits: Vec<Visit>, class: Vec<i64>) -> CurveSpec {
        CurveSpec { visits, class }
    }

    /// Trefoil `C(2,-2)`: β of class (1,-1) in two realizations (direct and
    /// with a finger through band 1), plus a third curve of class (4,-1) in
    /// the same mod-3 characteristic class, realized as a spiral.
    pub fn trefoil_realizations() -> Vec<SceneSpec> {
        let e = vec![2i64, -2];
        let direct = SceneSpec {
            e: e.clone(),
            curves: vec![curve(
                vec![visit(0, 1, 0), visit(1, -1, 0)],
                vec![1, -1],
            )],
        };
        let finger = SceneSpec {
            e: e.clone(),
            curves: vec![curve(
                vec![
                    visit(0, 1, 0),
                    visit(1, 1, 2),
                    visit(1, -1, 1),
                    visit(1, -1, 0),
                ],
                vec![1, -1],
            )],
        };
        let spiral = SceneSpec {
            e,
            curves: vec![curve(
                vec![
                    visit(0, 1, 3),
                    visit(0, 1, 2),
                    visit(0, 1, 1),
                    visit(0, 1, 0),
                    visit(1, -1, 0),
                ],
                vec![4, -1],
            )],
        };
        vec![direct, finger, spiral]
    }

    /// `K₁(3,2) = C(6,2,4,-2,-6,4)` (admissibility case 1): characteristic
    /// β of class (1,0,1,1,-1,1) with four companion curves, in two β
    /// realizations.
    pub fn k1_case1_realizations() -> Vec<SceneSpec> {
        let e = vec![6i64, 2, 4, -2, -6, 4];
        let w = |beta: CurveSpec| SceneSpec {
            e: e.clone(),
            curves: vec![
                beta,
                curve(vec![visit(3, 1, -1)], vec![0, 0, 0, -1, 0, 0]),
                curve(
                    vec![visit(2, 1, 1), visit(3, 1, 1), visit(4, 1, 1), visit(2, 1, -1)],
                    vec![0, 0, -2, -1, 1, 0],
                ),
                curve(
                    vec![visit(1, 1, 0), visit(4, 1, -1)],
                    vec![0, 1, 0, 0, 1, 0],
                ),
                curve(
                    vec![visit(1, 1, 1), visit(2, -1, -2), visit(5, 1, 1)],
                    vec![0, 1, 1, 0, 0, 1],
                ),
            ],
        };
        let beta_class = vec![1i64, 0, 1, 1, -1, 1];
        let direct = curve(
            vec![
                visit(0, 1, 0),
                visit(4, -1, 0),
                visit(3, -1, 0),
                visit(2, -1, 0),
                visit(5, 1, 0),
            ],
            beta_class.clone(),
        );
        let finger = curve(
            vec![
                visit(0, 1, 0),
                visit(1, 1, 3),
                visit(1, -1, 2),
                visit(4, -1, 0),
                visit(3, -1, 0),
                visit(2, -1, 0),
                visit(5, 1, 0),
            ],
            beta_class,
        );
        vec![w(direct), w(finger)]
    }

    /// `K₁(1,1) = C(2,2,2,-2,-2,2)` (admissibility case 2): characteristic
    /// β of class (-1,1,1,0,1,1) with four companion curves, in two β
    /// realizations.
    pub fn k1_case2_realizations() -> Vec<SceneSpec> {
        let e = vec![2i64, 2, 2, -2, -2, 2];
        let w = |beta: CurveSpec| SceneSpec {
            e: e.clone(),
            curves: vec![
                beta,
                curve(
                    vec![visit(3, 1, 0), visit(2, 1, -1), visit(2, 1, 1)],
                    vec![0, 0, -2, -1, 0, 0],
                ),
                curve(
                    vec![visit(4, 1, 1), visit(5, 1, 1)],
                    vec![0, 0, 0, 0, 1, 1],
                ),
                curve(
                    vec![visit(5, 1, -1), visit(0, 1, -1)],
                    vec![1, 0, 0, 0, 0, 1],
                ),
                curve(
                    vec![visit(1, 1, -1), visit(3, 1, 1), visit(0, -1, -2), visit(0, -1, 1)],
                    vec![-2, 1, 0, -1, 0, 0],
                ),
            ],
        };
        let beta_class = vec![-1i64, 1, 1, 0, 1, 1];
        let direct = curve(
            vec![
                visit(1, 1, 0),
                visit(2, -1, 0),
                visit(4, 1, 0),
                visit(5, 1, 0),
                visit(0, -1, 0),
            ],
            beta_class.clone(),
        );
        let finger = curve(
            vec![
                visit(1, 1, 0),
                visit(2, -1, 0),
                visit(4, 1, 0),
                visit(5, 1, 0),
                visit(0, -1, 0),
                visit(1, 1, 2),
                visit(1, -1, 1),
            ],
            beta_class,
        );
        vec![w(direct), w(finger)]
    }
}
