//! Property tests for the swap operator, the variety classifier and the
//! balancer.

use proptest::prelude::*;

use zsm::balancer::balance;
use zsm::generators::{random_balanced_colouring, random_matching};
use zsm::graph::{colour_split, Colour, ColouredGraph, EdgeColouring, Matching};
use zsm::swap::{classify_pair, swap, SwapQuad};
use zsm::verify::replay_trace;

fn instance() -> impl Strategy<Value = (ColouredGraph, Matching)> {
    (1usize..=4, any::<u64>(), any::<u64>()).prop_map(|(n, gs, ms)| {
        (
            random_balanced_colouring(n, gs).unwrap(),
            random_matching(4 * n, ms).unwrap(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn balancer_output_replays((g, m) in instance()) {
        let t = balance(&g, Some(&m)).unwrap();
        prop_assert!(t.steps.len() <= g.n());
        prop_assert_eq!(replay_trace(&g, &t).unwrap(), t.final_matching.clone());
    }

    #[test]
    fn swap_is_undone_by_its_mirror((g, m) in instance(), a in any::<usize>(), b in any::<usize>()) {
        let edges: Vec<_> = m.edges().collect();
        let (u, v) = edges[a % edges.len()];
        let (x, y) = edges[b % edges.len()];
        let q = SwapQuad::new(u, v, x, y);
        let s = swap(&m, q);
        if (u, v) == (x, y) {
            prop_assert_eq!(&s, &m);
        } else {
            prop_assert!(s.contains(u, x) && s.contains(v, y));
            prop_assert_eq!(swap(&s, SwapQuad::new(u, x, v, y)), m.clone());
            let before = colour_split(&g, &m);
            let after = colour_split(&g, &s);
            prop_assert_eq!(before.black_edges + before.red_edges, after.black_edges + after.red_edges);
            let delta = after.black_edges as i64 - before.black_edges as i64;
            let expected = [(u, x), (v, y)].iter().filter(|&&(p, q)| g.is_black(p, q)).count() as i64
                - [(u, v), (x, y)].iter().filter(|&&(p, q)| g.is_black(p, q)).count() as i64;
            prop_assert_eq!(delta, expected);
        }
    }

    #[test]
    fn variety_ignores_edge_orientation((g, m) in instance(), a in any::<usize>(), b in any::<usize>()) {
        let (black, red): (Vec<_>, Vec<_>) = m.edges().partition(|&(p, q)| g.is_black(p, q));
        prop_assume!(!black.is_empty() && !red.is_empty());
        let (u, v) = black[a % black.len()];
        let (x, y) = red[b % red.len()];
        let base = classify_pair(&g, &m, (u, v), (x, y)).unwrap();
        for (be, re) in [((v, u), (x, y)), ((u, v), (y, x)), ((v, u), (y, x))] {
            let other = classify_pair(&g, &m, be, re).unwrap();
            prop_assert_eq!(other.label, base.label);
            prop_assert_eq!(other.cross_colours, base.cross_colours);
        }
        let q = base.quad;
        prop_assert_eq!(g.colour(q.u, q.v), Colour::Black);
        prop_assert_eq!(g.colour(q.x, q.y), Colour::Red);
    }
}
