//! Seeded instance generators.
//!
//! Randomness comes from ChaCha8 keyed by the 64-bit seed: the 32-byte key is
//! the seed in little-endian order followed by 24 zero bytes, stream 0. Draws
//! are whole `u64` words of the keystream. A bounded draw in `[0, m)` rejects
//! words below `2^64 mod m` and returns the remainder mod `m`. Shuffles are
//! Fisher-Yates from the last index down: for `i = len-1 .. 1`, swap `i` with
//! a bounded draw in `[0, i]`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, pairs, Colour, ColouredGraph, Matching};
use crate::oracle::KColouredGraph;

/// The generator's random source.
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        SeededRng(ChaCha8Rng::from_seed(key))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Seed for the `index`-th member of a corpus drawn from `base`
/// (the SplitMix64 output function applied to `base + (index + 1) * φ`).
pub fn corpus_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    Ok(())
}

/// Uniform balanced colouring of `K_{4n}`: shuffle the row-major edge list,
/// colour the first half black.
pub fn random_balanced_colouring(n: usize, seed: u64) -> Result<ColouredGraph> {
    check_n(n)?;
    let order = 4 * n;
    let total = pair_count(order);
    let mut idx: Vec<usize> = (0..total).collect();
    SeededRng::new(seed).shuffle(&mut idx);
    let mut colours = vec![Colour::Red; total];
    for &k in &idx[..total / 2] {
        colours[k] = Colour::Black;
    }
    ColouredGraph::from_colours(order, &colours)
}

/// Black clique on `{0, .., s-1}`; the rest of the black quota is filled in
/// row-major order; everything else red.
pub fn clique_split_colouring(n: usize, s: usize) -> Result<ColouredGraph> {
    check_n(n)?;
    let order = 4 * n;
    if s < 2 || s > order {
        return Err(Error::BadParameter(format!(
            "clique size {s} outside 2..={order}"
        )));
    }
    let quota = pair_count(order) / 2;
    let needed = pair_count(s);
    if needed > quota {
        return Err(Error::QuotaExceeded { needed, quota });
    }
    let mut remaining = quota - needed;
    let colours: Vec<Colour> = pairs(order)
        .map(|(_, j)| {
            if j < s {
                Colour::Black
            } else if remaining > 0 {
                remaining -= 1;
                Colour::Black
            } else {
                Colour::Red
            }
        })
        .collect();
    ColouredGraph::from_colours(order, &colours)
}

/// Uniform perfect matching: shuffle `0..order`, pair consecutive entries.
pub fn random_matching(order: usize, seed: u64) -> Result<Matching> {
    if order == 0 || !order.is_multiple_of(2) {
        return Err(Error::OddOrder(order));
    }
    let mut vs: Vec<usize> = (0..order).collect();
    SeededRng::new(seed).shuffle(&mut vs);
    let edges: Vec<(usize, usize)> = vs.chunks(2).map(|c| (c[0], c[1])).collect();
    Matching::from_pairs(order, &edges)
}

/// Uniform colouring of `K_{2kn}` with `k` equal colour classes: shuffle the
/// edge list, give the `c`-th block of `C(2kn,2)/k` edges colour `c`.
pub fn random_k_colouring(k: usize, n: usize, seed: u64) -> Result<KColouredGraph> {
    check_n(n)?;
    if k < 2 {
        return Err(Error::BadParameter(format!(
            "need at least 2 colours, got {k}"
        )));
    }
    if k > 36 {
        return Err(Error::BadParameter(format!(
            "at most 36 colours supported, got {k}"
        )));
    }
    let order = 2 * k * n;
    let edges = pair_count(order);
    if !edges.is_multiple_of(k) {
        return Err(Error::IndivisibleQuota { edges, k });
    }
    let quota = edges / k;
    let mut idx: Vec<usize> = (0..edges).collect();
    SeededRng::new(seed).shuffle(&mut idx);
    let mut colours = vec![0u8; edges];
    for (pos, &e) in idx.iter().enumerate() {
        colours[e] = (pos / quota) as u8;
    }
    KColouredGraph::new(order, k, colours)
}

/// A start of discrepancy 2 in which every red chord `ux` between black
/// matching edges `uv`, `xy` has red partner chord `vy`, the configuration
/// that the deep balancing cases handle. The number of red chord pairs and
/// red cross edges are drawn uniformly from their feasible ranges, vertices
/// are relabelled by a random permutation, and with probability 1/2 the two
/// colours are exchanged. Needs `n >= 2`.
pub fn paired_chord_start(n: usize, seed: u64) -> Result<(ColouredGraph, Matching)> {
    if n < 2 {
        return Err(Error::BadParameter(format!(
            "paired-chord starts need n >= 2, got {n}"
        )));
    }
    let order = 4 * n;
    let side = 2 * n + 2;
    let half = pair_count(order) / 2;
    let mut rng = SeededRng::new(seed);

    let mut chord_pairs = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let (u, v, x, y) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
            chord_pairs.push([(u, x), (v, y)]);
            chord_pairs.push([(u, y), (v, x)]);
        }
    }
    let cross: Vec<(usize, usize)> = (0..side)
        .flat_map(|a| (side..order).map(move |b| (a, b)))
        .collect();
    let inner: Vec<(usize, usize)> = pairs(order)
        .filter(|&(a, b)| a >= side && !(a % 2 == 0 && b == a + 1))
        .collect();

    let (k, c, rest) = loop {
        let k = 1 + rng.below(chord_pairs.len() as u64) as usize;
        let c = rng.below(cross.len() as u64 / 2 + 1) as usize;
        let used = (n - 1) + 2 * k + c;
        if used <= half && half - used <= inner.len() {
            break (k, c, half - used);
        }
    };

    let mut colours = vec![Colour::Black; pair_count(order)];
    let mut paint = |edges: &[(usize, usize)]| {
        for &(a, b) in edges {
            colours[pair_index(order, a, b)] = Colour::Red;
        }
    };
    paint(
        &(n + 1..2 * n)
            .map(|i| (2 * i, 2 * i + 1))
            .collect::<Vec<_>>(),
    );
    rng.shuffle(&mut chord_pairs);
    paint(&chord_pairs[..k].concat());
    let mut cross = cross;
    rng.shuffle(&mut cross);
    paint(&cross[..c]);
    let mut inner = inner;
    rng.shuffle(&mut inner);
    paint(&inner[..rest]);

    let mut perm: Vec<usize> = (0..order).collect();
    rng.shuffle(&mut perm);
    let flip = rng.below(2) == 1;
    let g = ColouredGraph::new(
        order,
        pairs(order).zip(colours).map(|((a, b), col)| {
            let col = if flip { col.opposite() } else { col };
            ((perm[a], perm[b]), col)
        }),
    )?;
    let edges: Vec<(usize, usize)> = (0..2 * n).map(|i| (perm[2 * i], perm[2 * i + 1])).collect();
    Ok((g, Matching::from_pairs(order, &edges)?))
}
