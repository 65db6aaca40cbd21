//! Tree degree sequences and their internal-degree subsequences.
//!
//! A [`DegreeSequence`] is always stored sorted non-increasing and is
//! guaranteed to be realizable by a tree: for `n >= 2` every entry is
//! positive and the entries sum to `2(n - 1)`. The single-vertex tree is
//! represented by the sequence `[0]`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Vertex degree.
pub type Degree = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeSequenceError {
    #[error("degree sequence is empty")]
    Empty,
    #[error("invalid token {0:?} in degree sequence")]
    InvalidToken(String),
    #[error("degree sequence contains a non-positive entry")]
    NonPositiveEntry,
    #[error("degree sum {sum} is not 2(n-1) = {expected} for n = {n}")]
    NotRealizable { n: usize, sum: u64, expected: u64 },
    #[error("internal degree {0} is below 2")]
    EntryBelowTwo(Degree),
    #[error("internal degrees cannot be completed to a tree ({leaves} leaves)")]
    InfeasibleInternal { leaves: i64 },
}

/// Split `text` into integer tokens. Accepts whitespace and commas as
/// separators and one optional pair of surrounding brackets.
fn parse_entries(text: &str) -> Result<Vec<Degree>, DegreeSequenceError> {
    let mut body = text.trim();
    for (open, close) in [('[', ']'), ('(', ')')] {
        if let Some(inner) = body.strip_prefix(open).and_then(|s| s.strip_suffix(close)) {
            body = inner;
            break;
        }
    }
    body.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|tok| !tok.is_empty())
        .map(|tok| match tok.parse::<i64>() {
            Ok(v) if v < 0 => Err(DegreeSequenceError::NonPositiveEntry),
            _ => tok
                .parse::<Degree>()
                .map_err(|_| DegreeSequenceError::InvalidToken(tok.to_string())),
        })
        .collect()
}

fn write_space_separated(f: &mut fmt::Formatter<'_>, items: &[Degree]) -> fmt::Result {
    for (i, d) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

/// A validated degree sequence of a tree, sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    degrees: Vec<Degree>,
}

impl DegreeSequence {
    /// Validates and sorts `degrees`. Input order is irrelevant.
    pub fn new(mut degrees: Vec<Degree>) -> Result<Self, DegreeSequenceError> {
        match degrees.len() {
            0 => Err(DegreeSequenceError::Empty),
            1 => {
                if degrees[0] == 0 {
                    Ok(Self { degrees })
                } else {
                    Err(DegreeSequenceError::NotRealizable {
                        n: 1,
                        sum: u64::from(degrees[0]),
                        expected: 0,
                    })
                }
            }
            n => {
                if degrees.contains(&0) {
                    return Err(DegreeSequenceError::NonPositiveEntry);
                }
                let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
                let expected = 2 * (n as u64 - 1);
                if sum != expected {
                    return Err(DegreeSequenceError::NotRealizable { n, sum, expected });
                }
                degrees.sort_unstable_by(|a, b| b.cmp(a));
                Ok(Self { degrees })
            }
        }
    }

    /// The sequence of the single-vertex tree.
    pub fn single_vertex() -> Self {
        Self { degrees: vec![0] }
    }

    pub fn parse(text: &str) -> Result<Self, DegreeSequenceError> {
        Self::new(parse_entries(text)?)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// All entries greater than one, order preserved.
    pub fn internal_degrees(&self) -> InternalDegreeSequence {
        InternalDegreeSequence {
            internal: self.degrees.iter().copied().filter(|&d| d > 1).collect(),
        }
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_space_separated(f, &self.degrees)
    }
}

impl FromStr for DegreeSequence {
    type Err = DegreeSequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for DegreeSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.degrees.serialize(serializer)
    }
}

/// Degrees `d_1 >= ... >= d_m` of the internal (non-leaf) vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InternalDegreeSequence {
    internal: Vec<Degree>,
}

impl InternalDegreeSequence {
    pub fn new(mut internal: Vec<Degree>) -> Result<Self, DegreeSequenceError> {
        if let Some(&d) = internal.iter().find(|&&d| d < 2) {
            return Err(DegreeSequenceError::EntryBelowTwo(d));
        }
        internal.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { internal })
    }

    /// Accepts the same text format as [`DegreeSequence::parse`]; the empty
    /// string is the empty internal sequence.
    pub fn parse(text: &str) -> Result<Self, DegreeSequenceError> {
        Self::new(parse_entries(text)?)
    }

    /// Number of internal vertices, `m`.
    pub fn m(&self) -> usize {
        self.internal.len()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.internal
    }

    pub fn is_empty(&self) -> bool {
        self.internal.is_empty()
    }

    /// Number of leaves a tree with these internal degrees must have:
    /// `sum - 2m + 2`.
    pub fn leaf_count(&self) -> i64 {
        let sum: i64 = self.internal.iter().map(|&d| i64::from(d)).sum();
        sum - 2 * self.m() as i64 + 2
    }

    /// Appends the forced number of leaves. The empty sequence completes to
    /// the single edge `[1, 1]`.
    pub fn complete(&self) -> Result<DegreeSequence, DegreeSequenceError> {
        let leaves = self.leaf_count();
        if leaves < 0 {
            return Err(DegreeSequenceError::InfeasibleInternal { leaves });
        }
        let mut degrees = self.internal.clone();
        degrees.extend(std::iter::repeat_n(1, leaves as usize));
        DegreeSequence::new(degrees)
    }

    /// Sub-sequence `d_{lo+1} .. d_{hi}` (0-based half-open range).
    pub(crate) fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            internal: self.internal[range].to_vec(),
        }
    }
}

impl fmt::Display for InternalDegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_space_separated(f, &self.internal)
    }
}

impl FromStr for InternalDegreeSequence {
    type Err = DegreeSequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for InternalDegreeSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.internal.serialize(serializer)
    }
}

pub fn parse_degree_sequence(text: &str) -> Result<DegreeSequence, DegreeSequenceError> {
    DegreeSequence::parse(text)
}

pub fn internal_degrees(sequence: &DegreeSequence) -> InternalDegreeSequence {
    sequence.internal_degrees()
}

pub fn complete_internal(
    internal: &InternalDegreeSequence,
) -> Result<DegreeSequence, DegreeSequenceError> {
    internal.complete()
}

/// Every tree degree sequence on `n` vertices, in decreasing lexicographic
/// order. Entries `d_i - 1` form a partition of `n - 2` into at most `n`
/// parts, so this walks partitions directly.
pub fn tree_degree_sequences(n: usize) -> Vec<DegreeSequence> {
    match n {
        0 => return Vec::new(),
        1 => return vec![DegreeSequence::single_vertex()],
        _ => {}
    }
    fn walk(
        remaining: usize,
        max_part: usize,
        slots: usize,
        parts: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(parts.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            parts.push(part);
            walk(remaining - part, part, slots - 1, parts, out);
            parts.pop();
        }
    }
    let mut partitions = Vec::new();
    walk(n - 2, n - 2, n, &mut Vec::new(), &mut partitions);
    partitions
        .into_iter()
        .map(|parts| {
            let mut degrees: Vec<Degree> = parts.iter().map(|&p| p as Degree + 1).collect();
            degrees.resize(n, 1);
            DegreeSequence::new(degrees).expect("partition yields a tree sequence")
        })
        .collect()
}
