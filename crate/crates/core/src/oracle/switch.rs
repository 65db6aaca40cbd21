//! Degree-preserving edge switches.

use serde::Serialize;
use thiserror::Error;

use crate::indices::{rf_index_with_degrees, EdgeFunction, TOLERANCE};
use crate::tree::{Edge, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwitchError {
    #[error("edge {0}-{1} is not in the tree")]
    EdgeMissing(usize, usize),
    #[error("edges share a vertex")]
    EdgesShareVertex,
    #[error("switch does not yield a tree")]
    NotATreeAfterSwitch,
}

/// How the four endpoints of `ab` and `cd` are re-paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SwitchPattern {
    /// `ab, cd -> ac, bd`
    AcBd,
    /// `ab, cd -> ad, bc`
    AdBc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Switch {
    pub first: Edge,
    pub second: Edge,
    pub pattern: SwitchPattern,
}

/// Delete `first = ab` and `second = cd`, then add `ac, bd` or `ad, bc`.
/// Every degree is unchanged; the result is returned only if it is a tree.
pub fn edge_switch(
    tree: &Tree,
    first: Edge,
    second: Edge,
    pattern: SwitchPattern,
) -> Result<Tree, SwitchError> {
    let ((a, b), (c, d)) = (first, second);
    for (u, v) in [first, second] {
        if !tree.contains_edge(u, v) {
            return Err(SwitchError::EdgeMissing(u, v));
        }
    }
    if a == c || a == d || b == c || b == d {
        return Err(SwitchError::EdgesShareVertex);
    }
    let added = match pattern {
        SwitchPattern::AcBd => [(a, c), (b, d)],
        SwitchPattern::AdBc => [(a, d), (b, c)],
    };
    let (k1, k2) = ((a.min(b), a.max(b)), (c.min(d), c.max(d)));
    let edges = tree
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != k1 && e != k2)
        .chain(added);
    Tree::new(tree.n(), edges).map_err(|_| SwitchError::NotATreeAfterSwitch)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalMinReport {
    pub value: f64,
    pub is_local_min: bool,
    /// First improving switch in edge order, with the value it reaches.
    pub improving: Option<(Switch, f64)>,
    /// Switches that produced a tree.
    pub valid_switches: usize,
}

/// Scans every pair of disjoint edges under both patterns; the tree is a
/// local minimum when no switch lowers `R_f` by more than [`TOLERANCE`].
pub fn local_min_check(tree: &Tree, f: &EdgeFunction) -> LocalMinReport {
    let degree = tree.degree_vec();
    let value = rf_index_with_degrees(tree, &degree, f);
    let edges = tree.edges();
    let mut valid_switches = 0;
    for (i, &first) in edges.iter().enumerate() {
        for &second in &edges[i + 1..] {
            for pattern in [SwitchPattern::AcBd, SwitchPattern::AdBc] {
                let Ok(switched) = edge_switch(tree, first, second, pattern) else {
                    continue;
                };
                valid_switches += 1;
                let new_value = rf_index_with_degrees(&switched, &degree, f);
                if new_value < value - TOLERANCE {
                    return LocalMinReport {
                        value,
                        is_local_min: false,
                        improving: Some((
                            Switch {
                                first,
                                second,
                                pattern,
                            },
                            new_value,
                        )),
                        valid_switches,
                    };
                }
            }
        }
    }
    LocalMinReport {
        value,
        is_local_min: true,
        improving: None,
        valid_switches,
    }
}
