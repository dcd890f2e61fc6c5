//! Balanced 2-edge-coloured complete graphs, perfect matchings, and the
//! colour-counting queries the balancing procedure is built on.
//!
//! Vertices are `0..order`. Unordered pairs are canonicalised as `(min, max)`
//! and stored one bit per edge in a flat triangular array, row-major over
//! `(i, j)` with `i < j`.

use std::fmt;

use crate::error::{Error, Result};

/// Edge colour. Black and red stand in for the two signs of a `{-1, +1}`
/// labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Black,
    Red,
}

impl Colour {
    pub fn opposite(self) -> Colour {
        match self {
            Colour::Black => Colour::Red,
            Colour::Red => Colour::Black,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Colour::Black => 'B',
            Colour::Red => 'R',
        }
    }
}

/// Number of unordered pairs on `order` vertices.
pub const fn pair_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// Row-major index of the pair `(i, j)`, `i < j`, in the triangular store.
#[inline]
pub fn pair_index(order: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < order);
    i * (2 * order - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)`, `i < j`, in row-major order.
pub fn pairs(order: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..order).flat_map(move |i| (i + 1..order).map(move |j| (i, j)))
}

/// Read access to a complete edge colouring.
///
/// Implemented by [`ColouredGraph`] and by the colour-exchanged
/// [`ColourView`]; every search and counting query is generic over it so the
/// balancing logic can always see a black majority.
pub trait EdgeColouring {
    fn order(&self) -> usize;

    /// Colour of the edge `uv`. Callers guarantee `u != v`, both in range.
    fn colour(&self, u: usize, v: usize) -> Colour;

    fn n(&self) -> usize {
        self.order() / 4
    }

    fn is_red(&self, u: usize, v: usize) -> bool {
        self.colour(u, v) == Colour::Red
    }

    fn is_black(&self, u: usize, v: usize) -> bool {
        self.colour(u, v) == Colour::Black
    }
}

/// A complete graph on `4n` vertices with a balanced 2-edge-colouring.
///
/// Immutable after construction. Construction rejects any order that is not a
/// positive multiple of four, any colouring that is not total, and any
/// colouring whose colour classes differ in size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    order: usize,
    // bit set = red
    bits: Vec<u64>,
}

impl ColouredGraph {
    /// Builds a graph from an explicit pair-to-colour assignment. Every
    /// unordered pair must appear exactly once, in either orientation.
    pub fn new<I>(order: usize, colours: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Colour)>,
    {
        check_order(order)?;
        let total = pair_count(order);
        let mut seen = vec![false; total];
        let mut assigned = vec![Colour::Black; total];
        for ((u, v), c) in colours {
            let (i, j) = canonical_pair(order, u, v)?;
            let idx = pair_index(order, i, j);
            if seen[idx] {
                return Err(Error::Incomplete(format!("duplicate pair ({i},{j})")));
            }
            seen[idx] = true;
            assigned[idx] = c;
        }
        if let Some(idx) = seen.iter().position(|s| !s) {
            let (i, j) = pairs(order).nth(idx).expect("index in range");
            return Err(Error::Incomplete(format!("missing pair ({i},{j})")));
        }
        Self::from_colours(order, &assigned)
    }

    /// Builds a graph from its row-major colour sequence.
    pub fn from_colours(order: usize, colours: &[Colour]) -> Result<Self> {
        check_order(order)?;
        let total = pair_count(order);
        if colours.len() != total {
            return Err(Error::Incomplete(format!(
                "expected {total} pair colours, got {}",
                colours.len()
            )));
        }
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut red = 0;
        for (idx, c) in colours.iter().enumerate() {
            if *c == Colour::Red {
                bits[idx / 64] |= 1 << (idx % 64);
                red += 1;
            }
        }
        let black = total - red;
        if black != red {
            return Err(Error::Unbalanced { black, red });
        }
        Ok(ColouredGraph { order, bits })
    }

    /// Builds a graph in which exactly the listed pairs are black.
    pub fn from_black_edges(order: usize, black: &[(usize, usize)]) -> Result<Self> {
        check_order(order)?;
        let mut colours = vec![Colour::Red; pair_count(order)];
        let mut seen = vec![false; colours.len()];
        for &(u, v) in black {
            let (i, j) = canonical_pair(order, u, v)?;
            let idx = pair_index(order, i, j);
            if seen[idx] {
                return Err(Error::Incomplete(format!("duplicate pair ({i},{j})")));
            }
            seen[idx] = true;
            colours[idx] = Colour::Black;
        }
        Self::from_colours(order, &colours)
    }

    /// Checked colour lookup.
    pub fn colour_of(&self, u: usize, v: usize) -> Result<Colour> {
        let (i, j) = canonical_pair(self.order, u, v)?;
        Ok(self.colour_at(pair_index(self.order, i, j)))
    }

    fn colour_at(&self, idx: usize) -> Colour {
        if self.bits[idx / 64] >> (idx % 64) & 1 == 1 {
            Colour::Red
        } else {
            Colour::Black
        }
    }

    /// Colours of all pairs in row-major order.
    pub fn colours(&self) -> impl Iterator<Item = Colour> + '_ {
        (0..pair_count(self.order)).map(|idx| self.colour_at(idx))
    }

    /// Edges of each colour; equal by construction, `4n^2 - n`.
    pub fn colour_total(&self) -> usize {
        pair_count(self.order) / 2
    }

    pub fn view(&self, flipped: bool) -> ColourView<'_> {
        ColourView {
            graph: self,
            flipped,
        }
    }
}

impl EdgeColouring for ColouredGraph {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn colour(&self, u: usize, v: usize) -> Colour {
        debug_assert!(u != v && u < self.order && v < self.order);
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.colour_at(pair_index(self.order, i, j))
    }
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.colours().map(Colour::as_char).collect();
        f.debug_struct("ColouredGraph")
            .field("order", &self.order)
            .field("colours", &s)
            .finish()
    }
}

/// A read-only view of a graph, optionally with black and red exchanged.
#[derive(Clone, Copy, Debug)]
pub struct ColourView<'a> {
    graph: &'a ColouredGraph,
    flipped: bool,
}

impl<'a> ColourView<'a> {
    pub fn graph(&self) -> &'a ColouredGraph {
        self.graph
    }

    pub fn flipped(&self) -> bool {
        self.flipped
    }
}

impl EdgeColouring for ColourView<'_> {
    fn order(&self) -> usize {
        self.graph.order
    }

    #[inline]
    fn colour(&self, u: usize, v: usize) -> Colour {
        let c = self.graph.colour(u, v);
        if self.flipped {
            c.opposite()
        } else {
            c
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || !order.is_multiple_of(4) {
        return Err(Error::BadOrder(order));
    }
    Ok(())
}

fn canonical_pair(order: usize, u: usize, v: usize) -> Result<(usize, usize)> {
    for w in [u, v] {
        if w >= order {
            return Err(Error::OutOfRange { vertex: w, order });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(if u < v { (u, v) } else { (v, u) })
}

/// A perfect matching, stored as an involutive partner map with no fixed
/// points. Validated once at construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    pub fn new(partner: Vec<usize>) -> Result<Self> {
        let order = partner.len();
        if order == 0 || !order.is_multiple_of(2) {
            return Err(Error::InvalidMatching(format!(
                "order {order} admits no perfect matching"
            )));
        }
        for (v, &p) in partner.iter().enumerate() {
            if p >= order {
                return Err(Error::InvalidMatching(format!(
                    "partner {p} of vertex {v} out of range"
                )));
            }
            if p == v {
                return Err(Error::InvalidMatching(format!("vertex {v} is unmatched")));
            }
            if partner[p] != v {
                return Err(Error::InvalidMatching(format!(
                    "vertex {v} is matched to {p} but {p} is matched to {}",
                    partner[p]
                )));
            }
        }
        Ok(Matching { partner })
    }

    /// Builds a matching from its edge list; every vertex must be covered once.
    pub fn from_pairs(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; order];
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::InvalidMatching(format!(
                    "edge {u}-{v} out of range for order {order}"
                )));
            }
            if u == v {
                return Err(Error::InvalidMatching(format!("loop {u}-{v}")));
            }
            if partner[u] != usize::MAX || partner[v] != usize::MAX {
                return Err(Error::InvalidMatching(format!(
                    "edge {u}-{v} reuses a matched vertex"
                )));
            }
            partner[u] = v;
            partner[v] = u;
        }
        if let Some(v) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidMatching(format!("vertex {v} is unmatched")));
        }
        Matching::new(partner)
    }

    /// `{(0,1), (2,3), ...}`.
    pub fn canonical(order: usize) -> Result<Self> {
        if order == 0 || !order.is_multiple_of(2) {
            return Err(Error::OddOrder(order));
        }
        Ok(Matching {
            partner: (0..order).map(|v| v ^ 1).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.partner.len()
    }

    #[inline]
    pub fn partner(&self, v: usize) -> usize {
        self.partner[v]
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && u != v && self.partner[u] == v
    }

    /// Edges `(u, v)` with `u < v`, sorted by `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(u, &v)| u < v)
            .map(|(u, &v)| (u, v))
    }

    pub fn edge_count(&self) -> usize {
        self.order() / 2
    }

    // Only for the swap operator, which preserves the involution.
    pub(crate) fn from_partner_unchecked(partner: Vec<usize>) -> Self {
        debug_assert!(Matching::new(partner.clone()).is_ok());
        Matching { partner }
    }

    pub(crate) fn partners(&self) -> &[usize] {
        &self.partner
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching{{")?;
        for (k, (u, v)) in self.edges().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "}}")
    }
}

/// Per-colour edge counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColourCounts {
    pub black: usize,
    pub red: usize,
}

impl ColourCounts {
    pub fn total(&self) -> usize {
        self.black + self.red
    }

    pub fn add(&mut self, c: Colour) {
        match c {
            Colour::Black => self.black += 1,
            Colour::Red => self.red += 1,
        }
    }

    pub fn get(&self, c: Colour) -> usize {
        match c {
            Colour::Black => self.black,
            Colour::Red => self.red,
        }
    }
}

/// How a matching splits by colour: `b`, `r`, and the vertex sets covered by
/// black and red matching edges (`V_B`, `V_R`), each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourSplit {
    pub black_edges: usize,
    pub red_edges: usize,
    pub black_vertices: Vec<usize>,
    pub red_vertices: Vec<usize>,
}

impl ColourSplit {
    /// `b - r` as a signed quantity.
    pub fn signed_difference(&self) -> i64 {
        self.black_edges as i64 - self.red_edges as i64
    }

    pub fn discrepancy(&self) -> usize {
        self.black_edges.abs_diff(self.red_edges)
    }

    pub fn side(&self, c: Colour) -> &[usize] {
        match c {
            Colour::Black => &self.black_vertices,
            Colour::Red => &self.red_vertices,
        }
    }
}

pub fn colour_split<G: EdgeColouring + ?Sized>(g: &G, m: &Matching) -> ColourSplit {
    debug_assert_eq!(g.order(), m.order());
    let mut split = ColourSplit {
        black_edges: 0,
        red_edges: 0,
        black_vertices: Vec::new(),
        red_vertices: Vec::new(),
    };
    for v in 0..m.order() {
        let c = g.colour(v, m.partner(v));
        match c {
            Colour::Black => split.black_vertices.push(v),
            Colour::Red => split.red_vertices.push(v),
        }
        if v < m.partner(v) {
            match c {
                Colour::Black => split.black_edges += 1,
                Colour::Red => split.red_edges += 1,
            }
        }
    }
    split
}

/// `|b(M) - r(M)|`.
pub fn discrepancy<G: EdgeColouring + ?Sized>(g: &G, m: &Matching) -> usize {
    let mut counts = ColourCounts::default();
    for (u, v) in m.edges() {
        counts.add(g.colour(u, v));
    }
    counts.black.abs_diff(counts.red)
}

/// Colour counts over `E(A, B)`.
pub fn cross_colour_counts<G: EdgeColouring + ?Sized>(
    g: &G,
    a: &[usize],
    b: &[usize],
) -> Result<ColourCounts> {
    let mut in_a = vec![false; g.order()];
    for &v in a {
        check_vertex(g, v)?;
        in_a[v] = true;
    }
    for &v in b {
        check_vertex(g, v)?;
        if in_a[v] {
            return Err(Error::NotDisjoint(v));
        }
    }
    let mut counts = ColourCounts::default();
    for &u in a {
        for &v in b {
            counts.add(g.colour(u, v));
        }
    }
    Ok(counts)
}

/// Colour counts over the edges of the induced subgraph `G[S]`.
pub fn induced_colour_counts<G: EdgeColouring + ?Sized>(
    g: &G,
    s: &[usize],
) -> Result<ColourCounts> {
    for &v in s {
        check_vertex(g, v)?;
    }
    let mut counts = ColourCounts::default();
    for (k, &u) in s.iter().enumerate() {
        for &v in &s[k + 1..] {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            counts.add(g.colour(u, v));
        }
    }
    Ok(counts)
}

fn check_vertex<G: EdgeColouring + ?Sized>(g: &G, v: usize) -> Result<()> {
    if v >= g.order() {
        return Err(Error::OutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn opposite_is_an_involution() {
        for c in [Colour::Black, Colour::Red] {
            assert_eq!(c.opposite().opposite(), c);
            assert_ne!(c.opposite(), c);
        }
    }

    #[test]
    fn new_graph_accepts_triangle_star_split() {
        let g = ColouredGraph::new(
            4,
            [
                ((0, 1), Colour::Black),
                ((0, 2), Colour::Black),
                ((2, 1), Colour::Black),
                ((0, 3), Colour::Red),
                ((1, 3), Colour::Red),
                ((3, 2), Colour::Red),
            ],
        )
        .unwrap();
        assert_eq!(g, g1());
        assert_eq!(g.colour_total(), 3);
        let black = g.colours().filter(|&c| c == Colour::Black).count();
        assert_eq!(black, 3);
    }

    #[test]
    fn new_graph_rejects_bad_input() {
        let all_black: Vec<_> = pairs(4).map(|p| (p, Colour::Black)).collect();
        assert!(matches!(
            ColouredGraph::new(4, all_black),
            Err(Error::Unbalanced { black: 6, red: 0 })
        ));

        let six: Vec<_> = pairs(6)
            .enumerate()
            .map(|(k, p)| {
                (
                    p,
                    if k % 2 == 0 {
                        Colour::Black
                    } else {
                        Colour::Red
                    },
                )
            })
            .collect();
        assert!(matches!(
            ColouredGraph::new(6, six),
            Err(Error::BadOrder(6))
        ));
        assert!(matches!(
            ColouredGraph::from_colours(0, &[]),
            Err(Error::BadOrder(0))
        ));

        let missing = vec![((0, 1), Colour::Black), ((0, 2), Colour::Red)];
        assert!(matches!(
            ColouredGraph::new(4, missing),
            Err(Error::Incomplete(_))
        ));

        let mut dup: Vec<_> = g1().colours().zip(pairs(4)).map(|(c, p)| (p, c)).collect();
        dup.push(((1, 0), Colour::Black));
        assert!(matches!(
            ColouredGraph::new(4, dup),
            Err(Error::Incomplete(_))
        ));
    }

    #[test]
    fn colour_lookup_is_symmetric_and_checked() {
        let g = g1();
        assert_eq!(g.colour_of(0, 1).unwrap(), Colour::Black);
        assert_eq!(g.colour_of(3, 0).unwrap(), Colour::Red);
        assert_eq!(g.colour_of(0, 3).unwrap(), Colour::Red);
        assert!(matches!(g.colour_of(2, 2), Err(Error::SelfLoop(2))));
        assert!(matches!(
            g.colour_of(0, 4),
            Err(Error::OutOfRange { vertex: 4, .. })
        ));
    }

    #[test]
    fn pair_index_is_row_major() {
        for order in [4, 8, 12] {
            for (k, (i, j)) in pairs(order).enumerate() {
                assert_eq!(pair_index(order, i, j), k);
            }
        }
    }

    #[test]
    fn colour_split_examples() {
        let s = colour_split(&g1(), &matching(4, &[(0, 1), (2, 3)]));
        assert_eq!((s.black_edges, s.red_edges), (1, 1));
        assert_eq!(s.black_vertices, vec![0, 1]);
        assert_eq!(s.red_vertices, vec![2, 3]);

        let s = colour_split(&g2(), &matching(4, &[(0, 1), (2, 3)]));
        assert_eq!((s.black_edges, s.red_edges), (2, 0));
        assert_eq!(s.black_vertices, vec![0, 1, 2, 3]);
        assert!(s.red_vertices.is_empty());

        let s = colour_split(&g2(), &matching(4, &[(0, 3), (1, 2)]));
        assert_eq!((s.black_edges, s.red_edges), (0, 2));
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(discrepancy(&g2(), &matching(4, &[(0, 1), (2, 3)])), 2);
        assert_eq!(discrepancy(&g1(), &matching(4, &[(0, 2), (1, 3)])), 0);
    }

    #[test]
    fn cross_and_induced_counts() {
        let g = g1();
        let c = cross_colour_counts(&g, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(c, ColourCounts { black: 2, red: 2 });
        assert_eq!(cross_colour_counts(&g, &[], &[0, 1, 2]).unwrap().total(), 0);
        assert!(matches!(
            cross_colour_counts(&g, &[0, 1], &[1, 2]),
            Err(Error::NotDisjoint(1))
        ));

        assert_eq!(
            induced_colour_counts(&g, &[0, 1, 2]).unwrap(),
            ColourCounts { black: 3, red: 0 }
        );
        assert_eq!(induced_colour_counts(&g, &[3]).unwrap().total(), 0);
    }

    #[test]
    fn view_exchanges_colours() {
        let g = g2();
        let v = g.view(true);
        for (i, j) in pairs(4) {
            assert_eq!(v.colour(i, j), g.colour(i, j).opposite());
        }
        let s = colour_split(&v, &matching(4, &[(0, 3), (1, 2)]));
        assert_eq!((s.black_edges, s.red_edges), (2, 0));
    }

    #[test]
    fn matching_validation() {
        assert!(Matching::new(vec![1, 0, 3, 2]).is_ok());
        assert!(Matching::new(vec![0, 1]).is_err());
        assert!(Matching::new(vec![1, 2, 0, 3]).is_err());
        assert!(Matching::new(vec![1, 0, 2]).is_err());
        assert!(Matching::from_pairs(4, &[(0, 1)]).is_err());
        assert!(Matching::from_pairs(4, &[(0, 1), (1, 2)]).is_err());
        let m = Matching::canonical(8).unwrap();
        assert_eq!(
            m.edges().collect::<Vec<_>>(),
            vec![(0, 1), (2, 3), (4, 5), (6, 7)]
        );
        assert_eq!(m.edge_count(), 4);
        assert!(m.contains(5, 4));
        assert!(!m.contains(0, 2));
    }
}
