//! The swap operator on perfect matchings, the six-way classification of a
//! black/red matching-edge pair, and the structured searches the balancing
//! case analysis needs.
//!
//! Every search scans candidates in ascending vertex order and returns the
//! first hit, so results are reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{colour_split, Colour, EdgeColouring, Matching};

/// A vertex quadruple `(u, v, x, y)` naming the swap that replaces matching
/// edges `uv`, `xy` by `ux`, `vy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwapQuad {
    pub u: usize,
    pub v: usize,
    pub x: usize,
    pub y: usize,
}

impl SwapQuad {
    pub fn new(u: usize, v: usize, x: usize, y: usize) -> Self {
        SwapQuad { u, v, x, y }
    }

    /// True when the four vertices are distinct and `uv`, `xy` are both
    /// edges of `m`.
    pub fn applies_to(&self, m: &Matching) -> bool {
        let SwapQuad { u, v, x, y } = *self;
        let distinct = u != v && u != x && u != y && v != x && v != y && x != y;
        distinct && m.contains(u, v) && m.contains(x, y)
    }
}

impl fmt::Display for SwapQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.u, self.v, self.x, self.y)
    }
}

/// Replaces `uv`, `xy` by `ux`, `vy` when both are edges of `m`; otherwise
/// returns `m` unchanged.
pub fn swap(m: &Matching, q: SwapQuad) -> Matching {
    if !q.applies_to(m) {
        return m.clone();
    }
    let mut partner = m.partners().to_vec();
    partner[q.u] = q.x;
    partner[q.x] = q.u;
    partner[q.v] = q.y;
    partner[q.y] = q.v;
    Matching::from_partner_unchecked(partner)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyLabel {
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
}

impl VarietyLabel {
    /// Varieties that admit a swap replacing the pair by two red edges.
    pub fn reducible(self) -> bool {
        matches!(self, VarietyLabel::V4 | VarietyLabel::V5 | VarietyLabel::V6)
    }
}

/// Classification of the four cross edges between a black matching edge `uv`
/// and a red matching edge `xy`.
///
/// The pair is stored in canonical orientation: among the relabellings
/// `u <-> v` and `x <-> y`, the one whose colours read in the order
/// `(ux, uy, vx, vy)` are smallest with black before red. This reproduces the
/// drawn forms: V2 has its red edge at `vy`, V4 has red `uy` and `vx`, V5 has
/// its black edge at `ux`. V3 covers both ways two red cross edges can share
/// a vertex; the canonical form puts them at `vy, vx` (shared black-edge
/// endpoint) or `uy, vy` (shared red-edge endpoint).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairVariety {
    pub label: VarietyLabel,
    /// Canonically oriented quadruple.
    pub quad: SwapQuad,
    /// Colours of `(ux, vy, uy, vx)` in the canonical orientation.
    pub cross_colours: [Colour; 4],
}

impl PairVariety {
    pub fn reducible(&self) -> bool {
        self.label.reducible()
    }

    pub fn red_cross(&self) -> usize {
        self.cross_colours
            .iter()
            .filter(|&&c| c == Colour::Red)
            .count()
    }

    pub fn black_cross(&self) -> usize {
        4 - self.red_cross()
    }
}

fn cross_of<G: EdgeColouring + ?Sized>(g: &G, q: SwapQuad) -> [Colour; 4] {
    [
        g.colour(q.u, q.x),
        g.colour(q.v, q.y),
        g.colour(q.u, q.y),
        g.colour(q.v, q.x),
    ]
}

fn label_of(cross: [Colour; 4]) -> VarietyLabel {
    let [ux, vy, uy, vx] = cross.map(|c| c == Colour::Red);
    match cross.iter().filter(|&&c| c == Colour::Red).count() {
        0 => VarietyLabel::V1,
        1 => VarietyLabel::V2,
        2 if (ux && vy) || (uy && vx) => VarietyLabel::V4,
        2 => VarietyLabel::V3,
        3 => VarietyLabel::V5,
        _ => VarietyLabel::V6,
    }
}

/// Classifies the pair formed by black matching edge `black_edge` and red
/// matching edge `red_edge`.
pub fn classify_pair<G: EdgeColouring + ?Sized>(
    g: &G,
    m: &Matching,
    black_edge: (usize, usize),
    red_edge: (usize, usize),
) -> Result<PairVariety> {
    for (a, b) in [black_edge, red_edge] {
        if !m.contains(a, b) {
            return Err(Error::NotMatchingEdges(a, b));
        }
    }
    for ((a, b), expected) in [(black_edge, Colour::Black), (red_edge, Colour::Red)] {
        let found = g.colour(a, b);
        if found != expected {
            return Err(Error::WrongColours {
                u: a,
                v: b,
                expected,
                found,
            });
        }
    }
    let (u, v) = black_edge;
    let (x, y) = red_edge;
    let orientations = [
        SwapQuad::new(u, v, x, y),
        SwapQuad::new(u, v, y, x),
        SwapQuad::new(v, u, x, y),
        SwapQuad::new(v, u, y, x),
    ];
    let (quad, cross) = orientations
        .into_iter()
        .map(|q| (q, cross_of(g, q)))
        .min_by_key(|&(_, [ux, vy, uy, vx])| [ux, uy, vx, vy])
        .expect("four orientations");
    Ok(PairVariety {
        label: label_of(cross),
        quad,
        cross_colours: cross,
    })
}

/// Finds a swap that replaces one `decreasing`-coloured matching edge and one
/// edge of the other colour by two edges of the other colour.
///
/// Returns `(u, v, x, y)` with `uv` of colour `decreasing`, `xy` of the
/// opposite colour, and both `ux`, `vy` of the opposite colour.
pub fn find_reducing_swap<G: EdgeColouring + ?Sized>(
    g: &G,
    m: &Matching,
    decreasing: Colour,
) -> Option<SwapQuad> {
    let other = decreasing.opposite();
    let majority: Vec<_> = m
        .edges()
        .filter(|&(a, b)| g.colour(a, b) == decreasing)
        .collect();
    let minority: Vec<_> = m
        .edges()
        .filter(|&(a, b)| g.colour(a, b) == other)
        .collect();
    for &(u, v) in &majority {
        for &(x, y) in &minority {
            for (a, b) in [(x, y), (y, x)] {
                if g.colour(u, a) == other && g.colour(v, b) == other {
                    return Some(SwapQuad::new(u, v, a, b));
                }
            }
        }
    }
    None
}

/// Finds a red edge `ux` inside `G[V_B]`. The result is `(u, v, x, y)` with
/// `v`, `y` the partners of `u`, `x`, ready to pass to [`swap`].
pub fn find_red_edge_in_black_side<G: EdgeColouring + ?Sized>(
    g: &G,
    m: &Matching,
) -> Option<SwapQuad> {
    let vb = colour_split(g, m).black_vertices;
    for (k, &u) in vb.iter().enumerate() {
        for &x in &vb[k + 1..] {
            if g.is_red(u, x) {
                return Some(SwapQuad::new(u, m.partner(u), x, m.partner(x)));
            }
        }
    }
    None
}

/// Finds `(p, q, r, s)` in `V_B \ excluded` with `pq`, `rs` matching edges
/// and both `pr`, `qs` red.
pub fn find_parallel_red_pair<G: EdgeColouring + ?Sized>(
    g: &G,
    m: &Matching,
    excluded: &[usize],
) -> Option<SwapQuad> {
    let vb: Vec<usize> = colour_split(g, m)
        .black_vertices
        .into_iter()
        .filter(|v| !excluded.contains(v))
        .collect();
    for &p in &vb {
        let q = m.partner(p);
        if excluded.contains(&q) {
            continue;
        }
        for &r in &vb {
            if r == p || r == q {
                continue;
            }
            let s = m.partner(r);
            if excluded.contains(&s) {
                continue;
            }
            if g.is_red(p, r) && g.is_red(q, s) {
                return Some(SwapQuad::new(p, q, r, s));
            }
        }
    }
    None
}

/// Finds `(u, v, x, y)` with all four vertices on the `side` colour class,
/// `uv`, `xy` matching edges, `ux` coloured `pattern.0` and `vy` coloured
/// `pattern.1`. Both orientations of `xy` are considered.
pub fn find_mixed_quad<G: EdgeColouring + ?Sized>(
    g: &G,
    m: &Matching,
    side: Colour,
    pattern: (Colour, Colour),
) -> Option<SwapQuad> {
    let split = colour_split(g, m);
    let vs = split.side(side);
    for &u in vs {
        let v = m.partner(u);
        for &x in vs {
            if x == u || x == v {
                continue;
            }
            let y = m.partner(x);
            if g.colour(u, x) == pattern.0 && g.colour(v, y) == pattern.1 {
                return Some(SwapQuad::new(u, v, x, y));
            }
        }
    }
    None
}
