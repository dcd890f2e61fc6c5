//! Line-oriented text formats.
//!
//! Instance:
//! ```text
//! zsm v1
//! order <4n>
//! colours <C(4n,2) characters from {B,R}, row-major over pairs i<j>
//! ```
//! Matching: `matching <u-v> ...` with `u < v`, sorted by `u`.
//!
//! Trace:
//! ```text
//! init matching <...>
//! step <i> case <label> flip <0|1> d <before>-><after> swaps (<u>,<v>,<x>,<y>)[;(...)]
//! final matching <...>
//! ```
//! k-colour instance: as an instance, with a `kcolours <k>` line before the
//! colour line and colours written as base-36 digits.

use std::fmt::Write as _;

use crate::balancer::{Case, StepRecord, Trace};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Colour, ColouredGraph, EdgeColouring, Matching};
use crate::oracle::KColouredGraph;
use crate::swap::SwapQuad;

pub const MAGIC: &str = "zsm v1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with their 1-based line numbers.
fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn expect_field<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
    last_line: usize,
) -> Result<(usize, &'a str)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| parse_err(last_line + 1, format!("missing `{key}` line")))?;
    match line.split_once(' ') {
        Some((k, rest)) if k == key => Ok((no, rest.trim())),
        _ => Err(parse_err(
            no,
            format!("expected `{key} ...`, found {line:?}"),
        )),
    }
}

fn expect_magic<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize> {
    match lines.next() {
        Some((no, MAGIC)) => Ok(no),
        Some((no, other)) => Err(parse_err(
            no,
            format!("expected `{MAGIC}`, found {other:?}"),
        )),
        None => Err(parse_err(1, "empty input")),
    }
}

fn parse_usize(no: usize, s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(no, format!("bad {what} {s:?}")))
}

pub fn format_instance(g: &ColouredGraph) -> String {
    let colours: String = g.colours().map(Colour::as_char).collect();
    format!("{MAGIC}\norder {}\ncolours {colours}\n", g.order())
}

pub fn parse_instance(s: &str) -> Result<ColouredGraph> {
    let mut lines = content_lines(s);
    let no = expect_magic(&mut lines)?;
    let (no, order) = expect_field(&mut lines, "order", no)?;
    let order = parse_usize(no, order, "order")?;
    if order == 0 || order % 4 != 0 {
        return Err(Error::BadOrder(order));
    }
    let (no, colours) = expect_field(&mut lines, "colours", no)?;
    let colours = colours
        .chars()
        .map(|c| match c {
            'B' => Ok(Colour::Black),
            'R' => Ok(Colour::Red),
            other => Err(parse_err(no, format!("bad colour character {other:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some((no, extra)) = lines.next() {
        return Err(parse_err(no, format!("unexpected trailing line {extra:?}")));
    }
    ColouredGraph::from_colours(order, &colours)
}

pub fn format_matching(m: &Matching) -> String {
    let mut s = String::from("matching");
    for (u, v) in m.edges() {
        write!(s, " {u}-{v}").expect("write to string");
    }
    s
}

fn parse_matching_body(no: usize, body: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for tok in body.split_whitespace() {
        let (a, b) = tok
            .split_once('-')
            .ok_or_else(|| parse_err(no, format!("bad matching edge {tok:?}")))?;
        edges.push((parse_usize(no, a, "vertex")?, parse_usize(no, b, "vertex")?));
    }
    Matching::from_pairs(2 * edges.len(), &edges)
}

/// Parses a single `matching ...` line (surrounding blank lines allowed).
pub fn parse_matching(s: &str) -> Result<Matching> {
    let mut lines = content_lines(s);
    let (no, body) = expect_field(&mut lines, "matching", 0)?;
    let m = parse_matching_body(no, body)?;
    if let Some((no, extra)) = lines.next() {
        return Err(parse_err(no, format!("unexpected trailing line {extra:?}")));
    }
    Ok(m)
}

pub fn format_step(step: &StepRecord) -> String {
    let swaps: Vec<String> = step.swaps.iter().map(SwapQuad::to_string).collect();
    format!(
        "step {} case {} flip {} d {}->{} swaps {}",
        step.index,
        step.case,
        u8::from(step.flipped),
        step.discrepancy_before,
        step.discrepancy_after,
        swaps.join(";")
    )
}

pub fn format_trace(t: &Trace) -> String {
    let mut s = format!("init {}\n", format_matching(&t.initial));
    for step in &t.steps {
        s.push_str(&format_step(step));
        s.push('\n');
    }
    writeln!(s, "final {}", format_matching(&t.final_matching)).expect("write to string");
    s
}

fn parse_quad(no: usize, tok: &str) -> Result<SwapQuad> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| parse_err(no, format!("bad swap {tok:?}")))?;
    let parts = inner
        .split(',')
        .map(|p| parse_usize(no, p.trim(), "vertex"))
        .collect::<Result<Vec<_>>>()?;
    match parts[..] {
        [u, v, x, y] => Ok(SwapQuad::new(u, v, x, y)),
        _ => Err(parse_err(no, format!("swap {tok:?} needs four vertices"))),
    }
}

fn parse_step(no: usize, line: &str) -> Result<StepRecord> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let keys = ["step", "case", "flip", "d", "swaps"];
    if toks.len() != 10 || (0..5).any(|k| toks[2 * k] != keys[k]) {
        return Err(parse_err(no, format!("malformed step line {line:?}")));
    }
    let index = parse_usize(no, toks[1], "step index")?;
    let case: Case = toks[3].parse().map_err(|e: String| parse_err(no, e))?;
    let flipped = match toks[5] {
        "0" => false,
        "1" => true,
        other => return Err(parse_err(no, format!("bad flip flag {other:?}"))),
    };
    let (before, after) = toks[7]
        .split_once("->")
        .ok_or_else(|| parse_err(no, format!("bad discrepancy {:?}", toks[7])))?;
    let swaps = toks[9]
        .split(';')
        .map(|t| parse_quad(no, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(StepRecord {
        index,
        case,
        swaps,
        discrepancy_before: parse_usize(no, before, "discrepancy")?,
        discrepancy_after: parse_usize(no, after, "discrepancy")?,
        flipped,
        audit: None,
    })
}

/// Parses a trace. Structure only; replay is [`crate::verify::replay_trace`].
pub fn parse_trace(s: &str) -> Result<Trace> {
    let lines: Vec<(usize, &str)> = content_lines(s).collect();
    let Some(((first_no, first), rest)) = lines.split_first() else {
        return Err(parse_err(1, "empty trace"));
    };
    let Some(((last_no, last), middle)) = rest.split_last() else {
        return Err(parse_err(*first_no, "trace needs `init` and `final` lines"));
    };
    let initial = first
        .strip_prefix("init ")
        .ok_or_else(|| parse_err(*first_no, "expected `init matching ...`"))
        .and_then(parse_matching)?;
    let final_matching = last
        .strip_prefix("final ")
        .ok_or_else(|| parse_err(*last_no, "expected `final matching ...`"))
        .and_then(parse_matching)?;
    let steps = middle
        .iter()
        .map(|&(no, l)| parse_step(no, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trace {
        initial,
        steps,
        final_matching,
    })
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn format_kcolour_instance(g: &KColouredGraph) -> String {
    let colours: String = g
        .colours()
        .iter()
        .map(|&c| DIGITS[c as usize] as char)
        .collect();
    format!(
        "{MAGIC}\norder {}\nkcolours {}\ncolours {colours}\n",
        g.order(),
        g.k()
    )
}

pub fn parse_kcolour_instance(s: &str) -> Result<KColouredGraph> {
    let mut lines = content_lines(s);
    let no = expect_magic(&mut lines)?;
    let (no, order) = expect_field(&mut lines, "order", no)?;
    let order = parse_usize(no, order, "order")?;
    let (no, k) = expect_field(&mut lines, "kcolours", no)?;
    let k = parse_usize(no, k, "colour count")?;
    let (no, colours) = expect_field(&mut lines, "colours", no)?;
    let colours = colours
        .bytes()
        .map(|b| {
            DIGITS
                .iter()
                .position(|&d| d == b)
                .map(|p| p as u8)
                .ok_or_else(|| parse_err(no, format!("bad colour digit {:?}", b as char)))
        })
        .collect::<Result<Vec<_>>>()?;
    if colours.len() != pair_count(order) {
        return Err(Error::Incomplete(format!(
            "expected {} pair colours, got {}",
            pair_count(order),
            colours.len()
        )));
    }
    KColouredGraph::new(order, k, colours)
}
