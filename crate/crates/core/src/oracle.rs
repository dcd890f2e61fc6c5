//! Brute-force ground truth at small order: perfect-matching enumeration,
//! balanced-matching existence, the exhaustive order-4 colouring corpus, and
//! probes for the k-colour and balanced-decomposition questions.
//!
//! Nothing here calls into the balancer or the swap engine.

use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, pairs, Colour, ColouredGraph, EdgeColouring, Matching};

/// Largest order [`enumerate_matchings`] accepts; `15!! = 2_027_025`.
pub const MATCHING_CAP: usize = 16;
/// Largest order [`decompose_balanced`] accepts.
pub const DECOMPOSE_CAP: usize = 8;
/// The only order [`enumerate_balanced_colourings`] accepts.
pub const COLOURING_ORDER: usize = 4;

/// Every perfect matching of `K_order`, each exactly once. The lowest
/// unmatched vertex is paired with each free candidate in ascending order.
pub struct Matchings {
    order: usize,
    matched: Vec<bool>,
    chosen: Vec<(usize, usize)>,
    started: bool,
}

impl Matchings {
    fn lowest_free(&self, above: usize) -> Option<usize> {
        (above..self.order).find(|&v| !self.matched[v])
    }

    fn fill(&mut self) {
        while let Some(a) = self.lowest_free(0) {
            let b = self
                .lowest_free(a + 1)
                .expect("even number of free vertices");
            self.take(a, b);
        }
    }

    fn take(&mut self, a: usize, b: usize) {
        self.matched[a] = true;
        self.matched[b] = true;
        self.chosen.push((a, b));
    }

    fn current(&self) -> Matching {
        Matching::from_pairs(self.order, &self.chosen).expect("enumerator keeps a perfect matching")
    }
}

impl Iterator for Matchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if !self.started {
            self.started = true;
            self.fill();
            return Some(self.current());
        }
        while let Some((a, b)) = self.chosen.pop() {
            self.matched[a] = false;
            self.matched[b] = false;
            if let Some(c) = self.lowest_free(b + 1) {
                self.take(a, c);
                self.fill();
                return Some(self.current());
            }
        }
        None
    }
}

pub fn enumerate_matchings(order: usize) -> Result<Matchings> {
    if order == 0 || !order.is_multiple_of(2) {
        return Err(Error::OddOrder(order));
    }
    if order > MATCHING_CAP {
        return Err(Error::TooLarge {
            order,
            cap: MATCHING_CAP,
        });
    }
    Ok(Matchings {
        order,
        matched: vec![false; order],
        chosen: Vec::with_capacity(order / 2),
        started: false,
    })
}

/// Black and red edge counts of `m`, computed by direct lookup.
pub fn matching_colour_counts(g: &ColouredGraph, m: &Matching) -> (usize, usize) {
    let black = m
        .edges()
        .filter(|&(u, v)| g.colour(u, v) == Colour::Black)
        .count();
    (black, m.edge_count() - black)
}

pub fn is_balanced(g: &ColouredGraph, m: &Matching) -> bool {
    let (b, r) = matching_colour_counts(g, m);
    m.order() == g.order() && b == r
}

/// First balanced perfect matching in enumeration order.
pub fn exists_balanced_matching(g: &ColouredGraph) -> Result<Option<Matching>> {
    Ok(enumerate_matchings(g.order())?.find(|m| is_balanced(g, m)))
}

/// All balanced perfect matchings, in enumeration order.
pub fn balanced_matchings(g: &ColouredGraph) -> Result<Vec<Matching>> {
    Ok(enumerate_matchings(g.order())?
        .filter(|m| is_balanced(g, m))
        .collect())
}

/// All 20 balanced colourings of `K_4`, black sets in lexicographic order of
/// pair-index combinations.
pub fn enumerate_balanced_colourings(order: usize) -> Result<impl Iterator<Item = ColouredGraph>> {
    if order != COLOURING_ORDER {
        if order == 0 || !order.is_multiple_of(4) {
            return Err(Error::BadOrder(order));
        }
        return Err(Error::TooLarge {
            order,
            cap: COLOURING_ORDER,
        });
    }
    let all: Vec<(usize, usize)> = pairs(order).collect();
    let quota = all.len() / 2;
    let mut graphs = Vec::new();
    let mut combo: Vec<usize> = (0..quota).collect();
    loop {
        let black: Vec<_> = combo.iter().map(|&k| all[k]).collect();
        graphs.push(ColouredGraph::from_black_edges(order, &black)?);
        // next combination
        let Some(i) = (0..quota).rev().find(|&i| combo[i] < all.len() - quota + i) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..quota {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok(graphs.into_iter())
}

/// A complete graph on `2kn` vertices with `k` edge colours of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KColouredGraph {
    order: usize,
    k: usize,
    colours: Vec<u8>,
}

impl KColouredGraph {
    /// `colours` is row-major over pairs `i < j`.
    pub fn new(order: usize, k: usize, colours: Vec<u8>) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadParameter(format!(
                "need at least 2 colours, got {k}"
            )));
        }
        if order == 0 || !order.is_multiple_of(2 * k) {
            return Err(Error::BadParameter(format!(
                "order {order} is not 2kn for k = {k}"
            )));
        }
        let edges = pair_count(order);
        if colours.len() != edges {
            return Err(Error::Incomplete(format!(
                "expected {edges} pair colours, got {}",
                colours.len()
            )));
        }
        let mut sizes = vec![0usize; k];
        for &c in &colours {
            let c = c as usize;
            if c >= k {
                return Err(Error::BadParameter(format!(
                    "colour {c} out of range for k = {k}"
                )));
            }
            sizes[c] += 1;
        }
        if sizes.iter().any(|&s| s != edges / k) {
            return Err(Error::BadParameter(format!(
                "colour classes must be equal, sizes are {sizes:?}"
            )));
        }
        Ok(KColouredGraph { order, k, colours })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.order / (2 * self.k)
    }

    pub fn colours(&self) -> &[u8] {
        &self.colours
    }

    pub fn colour(&self, u: usize, v: usize) -> u8 {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.colours[pair_index(self.order, i, j)]
    }

    /// The two-colour reading (0 = black, 1 = red), when `k = 2`.
    pub fn to_two_coloured(&self) -> Result<ColouredGraph> {
        if self.k != 2 {
            return Err(Error::BadParameter(format!("k = {} is not 2", self.k)));
        }
        let colours: Vec<Colour> = self
            .colours
            .iter()
            .map(|&c| if c == 0 { Colour::Black } else { Colour::Red })
            .collect();
        ColouredGraph::from_colours(self.order, &colours)
    }
}

/// A perfect matching with exactly `n` edges of each of the `k` colours.
pub fn kcolour_balanced_matching(g: &KColouredGraph) -> Result<Option<Matching>> {
    let n = g.n();
    Ok(enumerate_matchings(g.order())?.find(|m| {
        let mut counts = vec![0usize; g.k()];
        for (u, v) in m.edges() {
            counts[g.colour(u, v) as usize] += 1;
        }
        counts.iter().all(|&c| c == n)
    }))
}

/// Partition of all edges into `4n - 1` perfect matchings, each balanced, or
/// `None` when no such 1-factorization exists.
pub fn decompose_balanced(g: &ColouredGraph) -> Result<Option<Vec<Matching>>> {
    let order = g.order();
    if order > DECOMPOSE_CAP {
        return Err(Error::TooLarge {
            order,
            cap: DECOMPOSE_CAP,
        });
    }
    let mut search = Decomposer {
        g,
        order,
        per_colour: order / 4,
        used: vec![false; pair_count(order)],
        factors: Vec::new(),
    };
    if search.next_factor() {
        let factors = search
            .factors
            .iter()
            .map(|edges| Matching::from_pairs(order, edges))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(factors))
    } else {
        Ok(None)
    }
}

struct Decomposer<'a> {
    g: &'a ColouredGraph,
    order: usize,
    per_colour: usize,
    used: Vec<bool>,
    factors: Vec<Vec<(usize, usize)>>,
}

impl Decomposer<'_> {
    /// Factor `f` is the one pairing vertex 0 with `f + 1`.
    fn next_factor(&mut self) -> bool {
        let f = self.factors.len();
        if f == self.order - 1 {
            return true;
        }
        let first = (0, f + 1);
        if self.used[pair_index(self.order, 0, f + 1)] {
            return false;
        }
        let mut matched = vec![false; self.order];
        matched[0] = true;
        matched[f + 1] = true;
        let mut counts = [0usize; 2];
        counts[self.g.colour(0, f + 1) as usize] += 1;
        let mut edges = vec![first];
        self.fill(&mut matched, &mut edges, &mut counts)
    }

    fn fill(
        &mut self,
        matched: &mut [bool],
        edges: &mut Vec<(usize, usize)>,
        counts: &mut [usize; 2],
    ) -> bool {
        let Some(a) = (0..self.order).find(|&v| !matched[v]) else {
            for &(u, v) in edges.iter() {
                self.used[pair_index(self.order, u, v)] = true;
            }
            self.factors.push(edges.clone());
            if self.next_factor() {
                return true;
            }
            self.factors.pop();
            for &(u, v) in edges.iter() {
                self.used[pair_index(self.order, u, v)] = false;
            }
            return false;
        };
        for b in a + 1..self.order {
            if matched[b] || self.used[pair_index(self.order, a, b)] {
                continue;
            }
            let c = self.g.colour(a, b) as usize;
            if counts[c] == self.per_colour {
                continue;
            }
            counts[c] += 1;
            matched[a] = true;
            matched[b] = true;
            edges.push((a, b));
            if self.fill(matched, edges, counts) {
                return true;
            }
            edges.pop();
            matched[a] = false;
            matched[b] = false;
            counts[c] -= 1;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn odd_double_factorial(order: usize) -> usize {
        (1..order).step_by(2).product()
    }

    #[test]
    fn order_four_matchings_in_order() {
        let all: Vec<Vec<(usize, usize)>> = enumerate_matchings(4)
            .unwrap()
            .map(|m| m.edges().collect())
            .collect();
        assert_eq!(
            all,
            vec![
                vec![(0, 1), (2, 3)],
                vec![(0, 2), (1, 3)],
                vec![(0, 3), (1, 2)],
            ]
        );
    }

    #[test]
    fn matching_counts_match_double_factorial() {
        for order in [2, 4, 6, 8, 10, 12] {
            let all: Vec<Matching> = enumerate_matchings(order).unwrap().collect();
            assert_eq!(all.len(), odd_double_factorial(order), "order {order}");
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
        assert_eq!(odd_double_factorial(8), 105);
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(
            enumerate_matchings(18),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(enumerate_matchings(5), Err(Error::OddOrder(5))));
    }

    #[test]
    fn balanced_matching_examples() {
        assert_eq!(
            exists_balanced_matching(&g1()).unwrap(),
            Some(matching(4, &[(0, 1), (2, 3)]))
        );
        assert_eq!(
            exists_balanced_matching(&g2()).unwrap(),
            Some(matching(4, &[(0, 2), (1, 3)]))
        );
    }

    #[test]
    fn colouring_corpus() {
        let all: Vec<_> = enumerate_balanced_colourings(4).unwrap().collect();
        assert_eq!(all.len(), 20);
        assert_eq!(
            all[0],
            ColouredGraph::from_black_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
        );
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 20);
        for g in &all {
            assert!(exists_balanced_matching(g).unwrap().is_some());
        }
        assert!(matches!(
            enumerate_balanced_colourings(8),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn kcolour_two_agrees_with_two_colour_oracle() {
        let colours: Vec<u8> = g1()
            .colours()
            .map(|c| if c == Colour::Black { 0 } else { 1 })
            .collect();
        let kg = KColouredGraph::new(4, 2, colours).unwrap();
        assert_eq!(kg.to_two_coloured().unwrap(), g1());
        assert_eq!(
            kcolour_balanced_matching(&kg).unwrap(),
            exists_balanced_matching(&g1()).unwrap()
        );
    }

    #[test]
    fn kcolour_constructor_checks() {
        assert!(KColouredGraph::new(6, 3, vec![0; 15]).is_err());
        assert!(KColouredGraph::new(6, 3, vec![3; 15]).is_err());
        assert!(KColouredGraph::new(8, 3, vec![0; 28]).is_err());
        let ok: Vec<u8> = (0..15).map(|k| (k % 3) as u8).collect();
        let g = KColouredGraph::new(6, 3, ok).unwrap();
        assert_eq!(g.n(), 1);
    }

    #[test]
    fn decompose_fixtures() {
        let d = decompose_balanced(&g1()).unwrap().unwrap();
        let factors: Vec<Vec<_>> = d.iter().map(|m| m.edges().collect()).collect();
        assert_eq!(
            factors,
            vec![
                vec![(0, 1), (2, 3)],
                vec![(0, 2), (1, 3)],
                vec![(0, 3), (1, 2)],
            ]
        );
        assert_eq!(decompose_balanced(&g2()).unwrap(), None);
        let g12 = ColouredGraph::from_colours(
            12,
            &(0..66)
                .map(|k| if k < 33 { Colour::Black } else { Colour::Red })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(matches!(
            decompose_balanced(&g12),
            Err(Error::TooLarge { .. })
        ));
    }

    /// Circle-method 1-factorization of K_8 with each factor coloured two
    /// black, two red: decomposable by construction.
    fn round_robin_coloured() -> ColouredGraph {
        let mut black = Vec::new();
        for r in 0..7 {
            let mut factor = vec![(r, 7)];
            for i in 1..4 {
                factor.push(((r + i) % 7, (r + 7 - i) % 7));
            }
            black.extend(factor.into_iter().take(2));
        }
        ColouredGraph::from_black_edges(8, &black).unwrap()
    }

    #[test]
    fn decompose_order_eight_covers_every_edge() {
        let g = round_robin_coloured();
        let factors = decompose_balanced(&g)
            .unwrap()
            .expect("decomposable by construction");
        assert_eq!(factors.len(), 7);
        let mut seen = [0; 28];
        for m in &factors {
            assert!(is_balanced(&g, m));
            for (u, v) in m.edges() {
                seen[pair_index(8, u, v)] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }
}
