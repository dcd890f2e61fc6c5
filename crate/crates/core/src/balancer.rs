//! Drives a perfect matching to equal colour counts by repeated swaps,
//! following a fixed case analysis, and records a replayable trace.
//!
//! Each iteration reads the graph through a colour view in which black is the
//! majority colour of the current matching (`b >= r`), picks the first case
//! whose condition holds, and applies one or two swaps. Every existence claim
//! a case relies on is checked; a failed check is reported as
//! [`Error::InvariantViolation`] carrying the full instance and matching.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{
    colour_split, cross_colour_counts, discrepancy, induced_colour_counts, pair_count, pairs,
    Colour, ColourSplit, ColourView, ColouredGraph, EdgeColouring, Matching,
};
use crate::swap::{
    classify_pair, find_mixed_quad, find_parallel_red_pair, find_red_edge_in_black_side,
    find_reducing_swap, swap, SwapQuad, VarietyLabel,
};
use crate::text;

/// The case that produced a step. Labels follow the nesting of the case
/// analysis; [`Case::Balanced`] (`"1"`) is the terminal case and never
/// appears in a step record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `b = r`: stop.
    Balanced,
    /// `d > 2`, `G[V_B]` has no red edge: reducing swap.
    ExcessMonochromatic,
    /// `d > 2`, red chord `ux` inside `V_B`: swap `(u,v,x,y)`.
    ExcessRedChord,
    /// `d = 2`, `G[V_B]` has no red edge: reducing swap.
    TightMonochromatic,
    /// `d = 2`, red cross edges outnumber black: reducing swap.
    TightRedCross,
    /// `d = 2`, some `ux` red with `vy` black inside `V_B`.
    MixedChord,
    /// Red chords pair up, cross colours tie: parity witness in `V_R`, then a
    /// parallel red pair.
    ParityWitness,
    /// Red chords pair up, black cross majority, more than `4n` red chords.
    SurplusChords,
    /// Exactly `4n` red chords and some reducible pair.
    ExactReducible,
    /// Exactly `4n` red chords, a red chord avoids the V2 black edge.
    ExactDistantChord,
    /// All red chords meet the V2 black edge; `y` has a black edge into `V_B`.
    ExactBlackFromY,
    /// All red chords meet the V2 black edge; `y` is all red into `V_B`.
    ExactRedFromY,
}

impl Case {
    pub const ALL: [Case; 12] = [
        Case::Balanced,
        Case::ExcessMonochromatic,
        Case::ExcessRedChord,
        Case::TightMonochromatic,
        Case::TightRedCross,
        Case::MixedChord,
        Case::ParityWitness,
        Case::SurplusChords,
        Case::ExactReducible,
        Case::ExactDistantChord,
        Case::ExactBlackFromY,
        Case::ExactRedFromY,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Case::Balanced => "1",
            Case::ExcessMonochromatic => "2.1",
            Case::ExcessRedChord => "2.2",
            Case::TightMonochromatic => "3.1",
            Case::TightRedCross => "3.2.1",
            Case::MixedChord => "3.2.2.1",
            Case::ParityWitness => "3.2.2.2.1",
            Case::SurplusChords => "3.2.2.2.2.1",
            Case::ExactReducible => "3.2.2.2.2.2.1",
            Case::ExactDistantChord => "3.2.2.2.2.2.2.1",
            Case::ExactBlackFromY => "3.2.2.2.2.2.2.2.1",
            Case::ExactRedFromY => "3.2.2.2.2.2.2.2.2",
        }
    }

    /// Cases entered only after the paired-chord counting identities hold.
    pub fn is_paired_chord_case(self) -> bool {
        matches!(
            self,
            Case::ParityWitness
                | Case::SurplusChords
                | Case::ExactReducible
                | Case::ExactDistantChord
                | Case::ExactBlackFromY
                | Case::ExactRedFromY
        )
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Case::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| format!("unknown case label {s:?}"))
    }
}

/// Quantities measured on entry to the paired-chord cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountingReport {
    pub n: usize,
    pub black_edges: usize,
    pub red_edges: usize,
    pub black_side: usize,
    pub red_side: usize,
    /// `e(G[V_B])`.
    pub black_side_edges: usize,
    /// `e(G[V_R])`.
    pub red_side_edges: usize,
    pub cross_black: usize,
    pub cross_red: usize,
    /// Edges of each colour in the whole graph (read through the view).
    pub black_total: usize,
    pub red_total: usize,
    pub red_in_black_side: usize,
    pub black_in_red_side: usize,
}

impl CountingReport {
    pub fn cross_edges(&self) -> usize {
        self.cross_black + self.cross_red
    }
}

/// One iteration of the balancing loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub index: usize,
    pub case: Case,
    pub swaps: Vec<SwapQuad>,
    pub discrepancy_before: usize,
    pub discrepancy_after: usize,
    /// Whether black and red were exchanged to make black the majority.
    pub flipped: bool,
    pub audit: Option<CountingReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: Matching,
    pub steps: Vec<StepRecord>,
    pub final_matching: Matching,
}

/// Returns the colour view in which the matching has a black majority.
/// Ties keep the identity.
pub fn normalize_orientation<'g>(g: &'g ColouredGraph, m: &Matching) -> (ColourView<'g>, bool) {
    let split = colour_split(g, m);
    let flipped = split.red_edges > split.black_edges;
    (g.view(flipped), flipped)
}

/// Runs the loop from `start` (or the canonical matching) until the matching
/// is balanced.
pub fn balance(g: &ColouredGraph, start: Option<&Matching>) -> Result<Trace> {
    let initial = match start {
        Some(m) => {
            if m.order() != g.order() {
                return Err(Error::InvalidMatching(format!(
                    "matching has order {}, graph has order {}",
                    m.order(),
                    g.order()
                )));
            }
            m.clone()
        }
        None => Matching::canonical(g.order())?,
    };
    let mut current = initial.clone();
    let mut steps = Vec::new();
    while discrepancy(g, &current) > 0 {
        if steps.len() == g.n() {
            return Err(violation(
                g,
                &current,
                format!("more than n = {} steps without reaching balance", g.n()),
            ));
        }
        let (next, mut record) = step(g, &current)?;
        record.index = steps.len();
        steps.push(record);
        current = next;
    }
    Ok(Trace {
        initial,
        steps,
        final_matching: current,
    })
}

/// Performs one iteration. The returned record has `index` 0; [`balance`]
/// renumbers.
pub fn step(g: &ColouredGraph, m: &Matching) -> Result<(Matching, StepRecord)> {
    let (view, flipped) = normalize_orientation(g, m);
    let split = colour_split(&view, m);
    let before = split.black_edges - split.red_edges;
    if before == 0 {
        return Err(Error::AlreadyBalanced);
    }
    let ctx = StepContext {
        graph: g,
        view,
        m,
        split,
    };
    let plan = if before > 2 {
        ctx.excess()?
    } else {
        ctx.tight()?
    };

    let mut current = m.clone();
    for (k, (q, expected)) in plan.swaps.iter().enumerate() {
        if !q.applies_to(&current) {
            return Err(ctx.fail(format!(
                "case {}: swap {q} (#{k}) does not apply to the current matching",
                plan.case
            )));
        }
        current = swap(&current, *q);
        let s = colour_split(&view, &current);
        if s.signed_difference() != *expected {
            return Err(ctx.fail(format!(
                "case {}: after swap {q} (#{k}) expected b - r = {expected}, found {}",
                plan.case,
                s.signed_difference()
            )));
        }
    }

    let after = discrepancy(g, &current);
    let drop = before as i64 - after as i64;
    if !(drop == 2 || drop == 4) || !after.is_multiple_of(2) {
        return Err(ctx.fail(format!(
            "case {}: discrepancy went {before} -> {after}",
            plan.case
        )));
    }
    let record = StepRecord {
        index: 0,
        case: plan.case,
        swaps: plan.swaps.iter().map(|&(q, _)| q).collect(),
        discrepancy_before: before,
        discrepancy_after: after,
        flipped,
        audit: plan.audit,
    };
    Ok((current, record))
}

/// Checks the counting identities that hold when `b - r = 2` and every red
/// chord `ux` of `G[V_B]` has red partner chord `vy`. `g` must be the
/// normalised view.
pub fn verify_counting_identities<G: EdgeColouring + ?Sized>(
    g: &G,
    m: &Matching,
) -> std::result::Result<CountingReport, String> {
    let n = g.n() as i64;
    let split = colour_split(g, m);
    let inside_b = induced_colour_counts(g, &split.black_vertices).map_err(|e| e.to_string())?;
    let inside_r = induced_colour_counts(g, &split.red_vertices).map_err(|e| e.to_string())?;
    let cross = cross_colour_counts(g, &split.black_vertices, &split.red_vertices)
        .map_err(|e| e.to_string())?;
    let black_total = pairs(g.order()).filter(|&(i, j)| g.is_black(i, j)).count();
    let report = CountingReport {
        n: g.n(),
        black_edges: split.black_edges,
        red_edges: split.red_edges,
        black_side: split.black_vertices.len(),
        red_side: split.red_vertices.len(),
        black_side_edges: inside_b.total(),
        red_side_edges: inside_r.total(),
        cross_black: cross.black,
        cross_red: cross.red,
        black_total,
        red_total: pair_count(g.order()) - black_total,
        red_in_black_side: inside_b.red,
        black_in_red_side: inside_r.black,
    };
    let checks: [(&str, i64, i64); 10] = [
        ("b = n + 1", report.black_edges as i64, n + 1),
        ("r = n - 1", report.red_edges as i64, n - 1),
        ("|V_B| = 2n + 2", report.black_side as i64, 2 * n + 2),
        ("|V_R| = 2n - 2", report.red_side as i64, 2 * n - 2),
        (
            "e(G[V_B]) = 2n^2 + 3n + 1",
            report.black_side_edges as i64,
            2 * n * n + 3 * n + 1,
        ),
        (
            "e(G[V_R]) = 2n^2 - 5n + 3",
            report.red_side_edges as i64,
            2 * n * n - 5 * n + 3,
        ),
        (
            "|E(V_B, V_R)| = 4n^2 - 4",
            report.cross_edges() as i64,
            4 * n * n - 4,
        ),
        (
            "black total = 4n^2 - n",
            report.black_total as i64,
            4 * n * n - n,
        ),
        (
            "red total = 4n^2 - n",
            report.red_total as i64,
            4 * n * n - n,
        ),
        (
            "red chords in G[V_B] even",
            report.red_in_black_side as i64 % 2,
            0,
        ),
    ];
    for (name, found, expected) in checks {
        if found != expected {
            return Err(format!("{name}: found {found}, expected {expected}"));
        }
    }
    Ok(report)
}

/// Extra identities when `G[V_B]` holds exactly `4n` red chords.
pub fn verify_exact_chord_identities(report: &CountingReport) -> std::result::Result<(), String> {
    let n = report.n as i64;
    let checks = [
        (
            "red chords in G[V_B] = 4n",
            report.red_in_black_side as i64,
            4 * n,
        ),
        (
            "red cross = 2n^2 - 3",
            report.cross_red as i64,
            2 * n * n - 3,
        ),
        (
            "black cross = 2n^2 - 1",
            report.cross_black as i64,
            2 * n * n - 1,
        ),
        (
            "G[V_R] monochromatic red",
            report.black_in_red_side as i64,
            0,
        ),
    ];
    for (name, found, expected) in checks {
        if found != expected {
            return Err(format!("{name}: found {found}, expected {expected}"));
        }
    }
    Ok(())
}

fn violation(g: &ColouredGraph, m: &Matching, claim: String) -> Error {
    Error::InvariantViolation {
        claim,
        instance: text::format_instance(g),
        matching: format!("{}\n", text::format_matching(m)),
    }
}

struct Plan {
    case: Case,
    /// Each swap with the view's expected `b - r` after applying it.
    swaps: Vec<(SwapQuad, i64)>,
    audit: Option<CountingReport>,
}

struct StepContext<'a> {
    graph: &'a ColouredGraph,
    view: ColourView<'a>,
    m: &'a Matching,
    split: ColourSplit,
}

impl StepContext<'_> {
    fn fail(&self, claim: String) -> Error {
        violation(self.graph, self.m, claim)
    }

    fn difference(&self) -> i64 {
        self.split.signed_difference()
    }

    fn black_side_monochromatic(&self) -> Result<bool> {
        Ok(induced_colour_counts(&self.view, &self.split.black_vertices)?.red == 0)
    }

    fn cross(&self) -> Result<crate::graph::ColourCounts> {
        cross_colour_counts(
            &self.view,
            &self.split.black_vertices,
            &self.split.red_vertices,
        )
    }

    /// Reducing swap justified by a monochromatic black side.
    fn monochromatic(&self, case: Case) -> Result<Plan> {
        let cross = self.cross()?;
        if cross.red <= cross.black {
            return Err(self.fail(format!(
                "case {case}: G[V_B] monochromatic but cross edges are {} red vs {} black",
                cross.red, cross.black
            )));
        }
        self.reducing(case)
    }

    fn reducing(&self, case: Case) -> Result<Plan> {
        let q = find_reducing_swap(&self.view, self.m, Colour::Black)
            .ok_or_else(|| self.fail(format!("case {case}: no reducing swap found")))?;
        Ok(Plan {
            case,
            swaps: vec![(q, self.difference() - 2)],
            audit: None,
        })
    }

    fn excess(&self) -> Result<Plan> {
        if self.black_side_monochromatic()? {
            return self.monochromatic(Case::ExcessMonochromatic);
        }
        let q = find_red_edge_in_black_side(&self.view, self.m).ok_or_else(|| {
            self.fail("case 2.2: G[V_B] not monochromatic but no red chord found".into())
        })?;
        let drop = if self.view.is_red(q.v, q.y) { 4 } else { 2 };
        Ok(Plan {
            case: Case::ExcessRedChord,
            swaps: vec![(q, self.difference() - drop)],
            audit: None,
        })
    }

    fn tight(&self) -> Result<Plan> {
        if self.black_side_monochromatic()? {
            return self.monochromatic(Case::TightMonochromatic);
        }
        let cross = self.cross()?;
        if cross.red > cross.black {
            return self.reducing(Case::TightRedCross);
        }
        if let Some(q) = find_mixed_quad(
            &self.view,
            self.m,
            Colour::Black,
            (Colour::Red, Colour::Black),
        ) {
            return Ok(Plan {
                case: Case::MixedChord,
                swaps: vec![(q, 0)],
                audit: None,
            });
        }
        self.paired_chords()
    }

    /// Every red chord `ux` of `G[V_B]` has red partner chord `vy`.
    fn paired_chords(&self) -> Result<Plan> {
        let view = &self.view;
        let m = self.m;
        let vb = &self.split.black_vertices;
        for &u in vb {
            for &x in vb {
                if u != x && view.is_red(u, x) && !view.is_red(m.partner(u), m.partner(x)) {
                    return Err(self.fail(format!(
                        "paired-chord case entered but chord {u}{x} is red with black partner chord"
                    )));
                }
            }
        }
        let report = verify_counting_identities(view, m)
            .map_err(|e| self.fail(format!("case 3.2.2.2 counting identity: {e}")))?;
        let n = report.n;

        if report.cross_red == report.cross_black {
            return self.parity_witness(report);
        }
        if report.cross_red > report.cross_black {
            return Err(
                self.fail("case 3.2.2.2: red cross majority should have been handled".into())
            );
        }
        if report.red_in_black_side < 4 * n {
            return Err(self.fail(format!(
                "case 3.2.2.2.2: only {} red chords in G[V_B], at least 4n = {} required",
                report.red_in_black_side,
                4 * n
            )));
        }
        if report.red_in_black_side > 4 * n {
            return self.surplus_chords(report);
        }
        verify_exact_chord_identities(&report)
            .map_err(|e| self.fail(format!("case 3.2.2.2.2.2 counting identity: {e}")))?;
        if let Some(q) = find_reducing_swap(view, m, Colour::Black) {
            return Ok(Plan {
                case: Case::ExactReducible,
                swaps: vec![(q, 0)],
                audit: Some(report),
            });
        }
        self.single_v2_pair(report)
    }

    fn parity_witness(&self, report: CountingReport) -> Result<Plan> {
        let case = Case::ParityWitness;
        if report.black_in_red_side % 2 != 1 {
            return Err(self.fail(format!(
                "case {case}: expected an odd number of black edges in G[V_R], found {}",
                report.black_in_red_side
            )));
        }
        let first = find_mixed_quad(
            &self.view,
            self.m,
            Colour::Red,
            (Colour::Red, Colour::Black),
        )
        .ok_or_else(|| self.fail(format!("case {case}: no red/black quadruple inside V_R")))?;
        let second = find_parallel_red_pair(&self.view, self.m, &[])
            .ok_or_else(|| self.fail(format!("case {case}: no parallel red pair inside V_B")))?;
        Ok(Plan {
            case,
            swaps: vec![(first, 4), (second, 0)],
            audit: Some(report),
        })
    }

    fn surplus_chords(&self, report: CountingReport) -> Result<Plan> {
        let case = Case::SurplusChords;
        // red uv, black xy, with ux and vy black
        let first = find_reducing_swap(&self.view, self.m, Colour::Red)
            .ok_or_else(|| self.fail(format!("case {case}: no black-increasing swap found")))?;
        let second =
            find_parallel_red_pair(&self.view, self.m, &[first.x, first.y]).ok_or_else(|| {
                self.fail(format!(
                    "case {case}: no parallel red pair avoiding {}{}",
                    first.x, first.y
                ))
            })?;
        Ok(Plan {
            case,
            swaps: vec![(first, 4), (second, 0)],
            audit: Some(report),
        })
    }

    /// No reducible pair and exactly `4n` red chords: exactly one pair of
    /// variety V2, every other pair V3.
    fn single_v2_pair(&self, report: CountingReport) -> Result<Plan> {
        let view = &self.view;
        let m = self.m;
        let (black, red): (Vec<_>, Vec<_>) = m.edges().partition(|&(a, b)| view.is_black(a, b));
        let mut v2 = Vec::new();
        for &be in &black {
            for &re in &red {
                let p = classify_pair(view, m, be, re)?;
                match p.label {
                    VarietyLabel::V2 => v2.push(p),
                    VarietyLabel::V3 => {}
                    other => {
                        return Err(self.fail(format!(
                            "case 3.2.2.2.2.2.2: pair {be:?}/{re:?} has variety {other:?}, expected V2 or V3"
                        )))
                    }
                }
            }
        }
        if v2.len() != 1 {
            return Err(self.fail(format!(
                "case 3.2.2.2.2.2.2: expected exactly one V2 pair, found {}",
                v2.len()
            )));
        }
        // Canonical V2 has its red cross edge at vy; relabel so it sits at ux.
        let c = v2[0].quad;
        let (u, v, x, y) = (c.v, c.u, c.y, c.x);
        if !(view.is_red(u, x) && view.is_black(v, y) && view.is_black(u, y) && view.is_black(v, x))
        {
            return Err(self.fail("case 3.2.2.2.2.2.2: V2 orientation mismatch".into()));
        }

        let rest: Vec<usize> = self
            .split
            .black_vertices
            .iter()
            .copied()
            .filter(|&w| w != u && w != v)
            .collect();
        let distant_chord = rest
            .iter()
            .enumerate()
            .any(|(k, &a)| rest[k + 1..].iter().any(|&b| view.is_red(a, b)));
        if distant_chord {
            let case = Case::ExactDistantChord;
            let second = find_parallel_red_pair(view, m, &[u, v]).ok_or_else(|| {
                self.fail(format!("case {case}: no parallel red pair avoiding {u}{v}"))
            })?;
            return Ok(Plan {
                case,
                swaps: vec![(SwapQuad::new(u, v, y, x), 4), (second, 0)],
                audit: Some(report),
            });
        }

        if let Some(&w) = rest
            .iter()
            .find(|&&w| view.is_black(u, w) || view.is_black(v, w))
        {
            return Err(self.fail(format!(
                "case 3.2.2.2.2.2.2.2: edge from {{{u},{v}}} to {w} inside V_B is black"
            )));
        }
        if let Some(&z) = rest.iter().find(|&&z| view.is_black(y, z)) {
            let case = Case::ExactBlackFromY;
            let w = m.partner(z);
            if !(view.is_red(v, w) && view.is_black(z, w) && view.is_black(y, z)) {
                return Err(self.fail(format!("case {case}: colour pattern around {z}{w} broken")));
            }
            return Ok(Plan {
                case,
                swaps: vec![
                    (SwapQuad::new(u, v, x, y), 2),
                    (SwapQuad::new(v, y, w, z), 0),
                ],
                audit: Some(report),
            });
        }
        let case = Case::ExactRedFromY;
        let p = *rest
            .first()
            .ok_or_else(|| self.fail(format!("case {case}: V_B has no edge besides {u}{v}")))?;
        let q = m.partner(p);
        if !(view.is_red(u, p) && view.is_red(y, q)) {
            return Err(self.fail(format!("case {case}: {u}{p} or {y}{q} is not red")));
        }
        Ok(Plan {
            case,
            swaps: vec![
                (SwapQuad::new(u, v, y, x), 4),
                (SwapQuad::new(u, y, p, q), 0),
            ],
            audit: Some(report),
        })
    }
}
