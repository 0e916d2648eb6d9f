//! Text format for routing instances.
//!
//! ```text
//! NAME <string>
//! N <customers> M <vehicle types>
//! VEHICLES
//! <capacity> <fixed cost> <unit cost> <count>     (M lines; count -1 = unlimited)
//! NODES
//! <id> <x> <y> <demand>                           (N+1 lines, id 0 = depot)
//! MATRIX                                          (optional)
//! <(N+1)^2 row-major distances, any line breaks>
//! LENGTHS                                         (optional)
//! <N+1 vertex lengths>
//! ```
//!
//! Without a `MATRIX` section distances are Euclidean from the coordinates.
//! The `LENGTHS` section carries the internal lengths of cluster vertices,
//! so reduced instances round-trip through this format too.

use minereduce::{Instance, ModelError, Node, VehicleType};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected}, got `{got}`")]
    Malformed { line: usize, expected: &'static str, got: String },
    #[error("line {line}: {source}")]
    BadNumber { line: usize, source: std::num::ParseFloatError },
    #[error("line {line}: node ids must be contiguous from 0, got {got}")]
    NonContiguousIds { line: usize, got: usize },
    #[error("unexpected end of file while reading {0}")]
    UnexpectedEof(&'static str),
    #[error("{section} section: expected {expected} values, got {got}")]
    SectionSize { section: &'static str, expected: usize, got: usize },
    #[error("trailing content at line {0}")]
    TrailingContent(usize),
    #[error("invalid instance: {0}")]
    Invalid(#[from] ModelError),
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { iter: text.lines().enumerate() }
    }

    /// Next non-blank line as (1-based number, trimmed content).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.iter.by_ref() {
            let line = raw.trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<f64>, ParseError> {
    line.split_whitespace()
        .map(|tok| tok.parse().map_err(|source| ParseError::BadNumber { line: lineno, source }))
        .collect()
}

fn fixed_numbers(
    line: &str,
    lineno: usize,
    count: usize,
    expected: &'static str,
) -> Result<Vec<f64>, ParseError> {
    let values = numbers(line, lineno)?;
    if values.len() != count {
        return Err(ParseError::Malformed { line: lineno, expected, got: line.to_string() });
    }
    Ok(values)
}

/// Reads `count` whitespace-separated numbers spanning any number of lines.
fn read_block(
    lines: &mut Lines,
    count: usize,
    section: &'static str,
) -> Result<Vec<f64>, ParseError> {
    let mut values = Vec::with_capacity(count);
    while values.len() < count {
        let Some((lineno, line)) = lines.next() else {
            return Err(ParseError::SectionSize { section, expected: count, got: values.len() });
        };
        // a keyword line ends the block early
        if line.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(ParseError::SectionSize { section, expected: count, got: values.len() });
        }
        values.extend(numbers(line, lineno)?);
    }
    if values.len() > count {
        return Err(ParseError::SectionSize { section, expected: count, got: values.len() });
    }
    Ok(values)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);

    let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("NAME header"))?;
    let name = line
        .strip_prefix("NAME")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| ParseError::Malformed {
            line: lineno,
            expected: "NAME <string>",
            got: line.to_string(),
        })?
        .to_string();

    let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("size header"))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    let (n, m) = match toks.as_slice() {
        ["N", n, "M", m] => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) if n >= 1 && m >= 1 => (n, m),
            _ => {
                return Err(ParseError::Malformed {
                    line: lineno,
                    expected: "N <customers >= 1> M <types >= 1>",
                    got: line.to_string(),
                })
            }
        },
        _ => {
            return Err(ParseError::Malformed {
                line: lineno,
                expected: "N <customers> M <types>",
                got: line.to_string(),
            })
        }
    };

    let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("VEHICLES section"))?;
    if line != "VEHICLES" {
        return Err(ParseError::Malformed {
            line: lineno,
            expected: "VEHICLES",
            got: line.to_string(),
        });
    }
    let mut fleet = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("vehicle line"))?;
        let v = fixed_numbers(line, lineno, 4, "<capacity> <fixed> <unit> <count>")?;
        let count = if v[3] < 0.0 { None } else { Some(v[3] as u32) };
        fleet.push(VehicleType { capacity: v[0], fixed_cost: v[1], unit_cost: v[2], count });
    }

    let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("NODES section"))?;
    if line != "NODES" {
        return Err(ParseError::Malformed { line: lineno, expected: "NODES", got: line.to_string() });
    }
    let mut nodes = Vec::with_capacity(n + 1);
    for expect_id in 0..=n {
        let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("node line"))?;
        let v = fixed_numbers(line, lineno, 4, "<id> <x> <y> <demand>")?;
        let id = v[0] as usize;
        if v[0] < 0.0 || id != expect_id {
            return Err(ParseError::NonContiguousIds { line: lineno, got: id });
        }
        nodes.push(Node::with_coords(id, v[3], v[1], v[2]));
    }

    let dim = n + 1;
    let mut matrix: Option<Vec<f64>> = None;
    let mut lengths: Option<Vec<f64>> = None;
    while let Some((lineno, line)) = lines.next() {
        match line {
            "MATRIX" => matrix = Some(read_block(&mut lines, dim * dim, "MATRIX")?),
            "LENGTHS" => lengths = Some(read_block(&mut lines, dim, "LENGTHS")?),
            _ => return Err(ParseError::TrailingContent(lineno)),
        }
    }

    if let Some(values) = lengths {
        for (node, &l) in nodes.iter_mut().zip(&values) {
            node.length = l;
        }
    }
    let instance = match matrix {
        Some(dist) => Instance::new(name, nodes, dist, fleet)?,
        None => Instance::from_coords(name, nodes, fleet)?,
    };
    Ok(instance)
}

/// Writes an instance in the canonical format. The distance matrix is always
/// emitted explicitly, so parse(emit(x)) reproduces `x` exactly even for
/// reduced (asymmetric, length-carrying) instances.
pub fn emit_instance(instance: &Instance) -> String {
    use std::fmt::Write;

    let dim = instance.dim();
    let mut out = String::new();
    writeln!(out, "NAME {}", instance.name).unwrap();
    writeln!(out, "N {} M {}", instance.num_customers(), instance.fleet.len()).unwrap();
    writeln!(out, "VEHICLES").unwrap();
    for v in &instance.fleet {
        let count = v.count.map_or(-1.0, |c| c as f64);
        writeln!(out, "{} {} {} {}", v.capacity, v.fixed_cost, v.unit_cost, count).unwrap();
    }
    writeln!(out, "NODES").unwrap();
    for node in &instance.nodes {
        let (x, y) = node.coords.unwrap_or((0.0, 0.0));
        writeln!(out, "{} {} {} {}", node.id, x, y, node.demand).unwrap();
    }
    writeln!(out, "MATRIX").unwrap();
    for i in 0..dim {
        let row: Vec<String> = (0..dim).map(|j| instance.dist(i, j).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if instance.nodes.iter().any(|c| c.length != 0.0) {
        writeln!(out, "LENGTHS").unwrap();
        let row: Vec<String> = (0..dim).map(|i| instance.length(i).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// Converts a bare coordinate-list file into the canonical format.
///
/// Expected input layout (whitespace-separated, blank lines ignored):
///
/// ```text
/// <customers> <vehicle types>
/// <capacity> <fixed cost> <unit cost> <count>   (one line per type, -1 = unlimited)
/// <x> <y> <demand>                              (N+1 lines, depot first)
/// ```
pub fn convert_plain(text: &str, name: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);
    let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("size header"))?;
    let head = fixed_numbers(line, lineno, 2, "<customers> <types>")?;
    let (n, m) = (head[0] as usize, head[1] as usize);
    if head[0] < 1.0 || head[1] < 1.0 {
        return Err(ParseError::Malformed {
            line: lineno,
            expected: "<customers >= 1> <types >= 1>",
            got: line.to_string(),
        });
    }

    let mut fleet = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("vehicle line"))?;
        let v = fixed_numbers(line, lineno, 4, "<capacity> <fixed> <unit> <count>")?;
        let count = if v[3] < 0.0 { None } else { Some(v[3] as u32) };
        fleet.push(VehicleType { capacity: v[0], fixed_cost: v[1], unit_cost: v[2], count });
    }

    let mut nodes = Vec::with_capacity(n + 1);
    for id in 0..=n {
        let (lineno, line) = lines.next().ok_or(ParseError::UnexpectedEof("node line"))?;
        let v = fixed_numbers(line, lineno, 3, "<x> <y> <demand>")?;
        nodes.push(Node::with_coords(id, v[2], v[0], v[1]));
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(ParseError::TrailingContent(lineno));
    }
    Ok(Instance::from_coords(name, nodes, fleet)?)
}
