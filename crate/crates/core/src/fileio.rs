//! Line-oriented instance file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! dim 3
//! unconstrained            (or: graph <m> <s> <t>, then m `edge idx u v` lines)
//! interval                 (or: finite <k> | axis | ellipsoid)
//! 1 2 3                    center row
//! 0.5 0 1                  halfwidth row
//! ```
//!
//! The uncertainty blocks carry: `interval` center + halfwidth rows,
//! `finite k` followed by k scenario rows, `axis` center + diagonal rows,
//! `ellipsoid` center row + n shape-matrix rows. Numbers are written with
//! the shortest decimal form that parses back to the identical float, so
//! write→read→write round-trips byte-exactly.

use crate::linalg::Mat;
use crate::model::{
    AxisParallelEllipsoid, CombinatorialProblem, FiniteSet, GeneralEllipsoid, Graph,
    IntervalSet, ProblemStructure, UncertaintySet,
};
use crate::Error;
use std::fmt::Write as _;
use std::path::Path;

pub fn write_instance(problem: &CombinatorialProblem, set: &UncertaintySet) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", problem.dimension()).unwrap();
    match problem.structure() {
        ProblemStructure::Unconstrained => writeln!(out, "unconstrained").unwrap(),
        ProblemStructure::ShortestPath(g) => {
            writeln!(out, "graph {} {} {}", g.arc_count(), g.source(), g.sink()).unwrap();
            for (idx, &(u, v)) in g.arcs().iter().enumerate() {
                writeln!(out, "edge {idx} {u} {v}").unwrap();
            }
        }
    }
    match set {
        UncertaintySet::Interval(s) => {
            writeln!(out, "interval").unwrap();
            writeln!(out, "{}", row(s.center())).unwrap();
            writeln!(out, "{}", row(s.halfwidth())).unwrap();
        }
        UncertaintySet::Finite(s) => {
            writeln!(out, "finite {}", s.count()).unwrap();
            for j in 0..s.count() {
                writeln!(out, "{}", row(s.scenario(j))).unwrap();
            }
        }
        UncertaintySet::AxisParallel(s) => {
            writeln!(out, "axis").unwrap();
            writeln!(out, "{}", row(s.center())).unwrap();
            writeln!(out, "{}", row(s.diag())).unwrap();
        }
        UncertaintySet::Ellipsoid(s) => {
            writeln!(out, "ellipsoid").unwrap();
            writeln!(out, "{}", row(s.center())).unwrap();
            for i in 0..s.dimension() {
                writeln!(out, "{}", row(s.shape().row(i))).unwrap();
            }
        }
    }
    out
}

fn row(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(" ")
}

pub fn write_instance_file(
    path: &Path,
    problem: &CombinatorialProblem,
    set: &UncertaintySet,
) -> Result<(), Error> {
    std::fs::write(path, write_instance(problem, set))?;
    Ok(())
}

pub fn read_instance_file(path: &Path) -> Result<(CombinatorialProblem, UncertaintySet), Error> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { iter: text.lines().enumerate() }
    }

    /// Next non-empty, non-comment line with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.iter.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), Error> {
        self.next_content().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_floats(line_no: usize, text: &str, expected: usize) -> Result<Vec<f64>, Error> {
    let values: Result<Vec<f64>, _> =
        text.split_whitespace().map(str::parse::<f64>).collect();
    let values = values.map_err(|e| parse_err(line_no, format!("bad number: {e}")))?;
    if values.len() != expected {
        return Err(parse_err(
            line_no,
            format!("expected {expected} values, found {}", values.len()),
        ));
    }
    Ok(values)
}

fn parse_usize(line_no: usize, token: &str, what: &str) -> Result<usize, Error> {
    token.parse().map_err(|_| parse_err(line_no, format!("bad {what}: {token:?}")))
}

pub fn parse_instance(text: &str) -> Result<(CombinatorialProblem, UncertaintySet), Error> {
    let mut lines = Lines::new(text);

    let (ln, dim_line) = lines.expect("dim header")?;
    let dim = match dim_line.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", n] => parse_usize(ln, n, "dimension")?,
        _ => return Err(parse_err(ln, "expected `dim <n>`")),
    };

    let (ln, problem_line) = lines.expect("problem block")?;
    let tokens: Vec<&str> = problem_line.split_whitespace().collect();
    let problem = match tokens.as_slice() {
        ["unconstrained"] => CombinatorialProblem::unconstrained(dim),
        ["graph", m, s, t] => {
            let m = parse_usize(ln, m, "edge count")?;
            if m != dim {
                return Err(parse_err(ln, format!("graph has {m} edges but dim is {dim}")));
            }
            let s = parse_usize(ln, s, "source")?;
            let t = parse_usize(ln, t, "sink")?;
            let mut arcs = vec![None; m];
            let mut max_node = s.max(t);
            for _ in 0..m {
                let (ln, edge_line) = lines.expect("edge line")?;
                let et: Vec<&str> = edge_line.split_whitespace().collect();
                match et.as_slice() {
                    ["edge", idx, u, v] => {
                        let idx = parse_usize(ln, idx, "edge index")?;
                        let u = parse_usize(ln, u, "edge tail")?;
                        let v = parse_usize(ln, v, "edge head")?;
                        if idx >= m {
                            return Err(parse_err(ln, format!("edge index {idx} out of range")));
                        }
                        if arcs[idx].is_some() {
                            return Err(parse_err(ln, format!("duplicate edge index {idx}")));
                        }
                        max_node = max_node.max(u).max(v);
                        arcs[idx] = Some((u, v));
                    }
                    _ => return Err(parse_err(ln, "expected `edge <idx> <u> <v>`")),
                }
            }
            let arcs: Vec<(usize, usize)> = arcs.into_iter().map(Option::unwrap).collect();
            let graph = Graph::new(max_node + 1, s, t, arcs)
                .map_err(|e| parse_err(ln, format!("bad graph: {e}")))?;
            CombinatorialProblem::shortest_path(graph)
        }
        _ => return Err(parse_err(ln, "expected `unconstrained` or `graph <m> <s> <t>`")),
    };

    let (ln, set_line) = lines.expect("uncertainty block")?;
    let tokens: Vec<&str> = set_line.split_whitespace().collect();
    let set = match tokens.as_slice() {
        ["interval"] => {
            let (l1, r1) = lines.expect("interval center")?;
            let center = parse_floats(l1, r1, dim)?;
            let (l2, r2) = lines.expect("interval halfwidth")?;
            let halfwidth = parse_floats(l2, r2, dim)?;
            UncertaintySet::Interval(
                IntervalSet::new(center, halfwidth)
                    .map_err(|e| parse_err(l2, format!("{e}")))?,
            )
        }
        ["finite", k] => {
            let k = parse_usize(ln, k, "scenario count")?;
            let mut scenarios = Vec::with_capacity(k);
            let mut last = ln;
            for _ in 0..k {
                let (l, r) = lines.expect("scenario row")?;
                scenarios.push(parse_floats(l, r, dim)?);
                last = l;
            }
            UncertaintySet::Finite(
                FiniteSet::new(scenarios).map_err(|e| parse_err(last, format!("{e}")))?,
            )
        }
        ["axis"] => {
            let (l1, r1) = lines.expect("axis center")?;
            let center = parse_floats(l1, r1, dim)?;
            let (l2, r2) = lines.expect("axis diagonal")?;
            let diag = parse_floats(l2, r2, dim)?;
            UncertaintySet::AxisParallel(
                AxisParallelEllipsoid::new(center, diag)
                    .map_err(|e| parse_err(l2, format!("{e}")))?,
            )
        }
        ["ellipsoid"] => {
            let (l1, r1) = lines.expect("ellipsoid center")?;
            let center = parse_floats(l1, r1, dim)?;
            let mut shape = Mat::zeros(dim, dim);
            let mut last = l1;
            for i in 0..dim {
                let (l, r) = lines.expect("shape row")?;
                let vals = parse_floats(l, r, dim)?;
                for (j, v) in vals.into_iter().enumerate() {
                    shape.set(i, j, v);
                }
                last = l;
            }
            UncertaintySet::Ellipsoid(
                GeneralEllipsoid::new(center, shape)
                    .map_err(|e| parse_err(last, format!("{e}")))?,
            )
        }
        _ => {
            return Err(parse_err(
                ln,
                "expected `interval`, `finite <k>`, `axis`, or `ellipsoid`",
            ))
        }
    };

    if set.dimension() != problem.dimension() {
        return Err(parse_err(0, "set and problem dimensions differ"));
    }
    if let Some((ln, extra)) = lines.next_content() {
        return Err(parse_err(ln, format!("trailing content: {extra:?}")));
    }
    Ok((problem, set))
}
