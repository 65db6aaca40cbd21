//! Greedy and alternating greedy trees for an internal degree sequence.
//!
//! The greedy tree is built breadth first: the root takes the largest
//! degree and every vertex, in level order, hands the largest degrees still
//! available to its children; leaves fill the remaining slots.
//!
//! The alternating greedy tree is built recursively. With internal degrees
//! `d_1 >= ... >= d_m`:
//!
//! * if `m - 1 <= d_m` the tree is a root of degree `d_m` whose children
//!   have degrees `d_1, ..., d_{m-1}` plus `d_m - m + 1` leaves;
//! * otherwise a subtree `T` is formed from a root with `d_m - 1` children
//!   of degrees `d_1, ..., d_{d_m - 1}`, the tree `S` for the remaining
//!   `d_{d_m}, ..., d_{m-1}` is built recursively, and the root of `T` is
//!   glued onto a leaf of `S` whose neighbor has the smallest degree.
//!
//! Several leaves may tie in the last step, which is why
//! [`alternating_greedy_all`] returns a set of trees.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::degseq::{Degree, InternalDegreeSequence};
use crate::tree::{canonical_form, canonicalize, CanonicalForm, Tree, Vertex};

/// Default bound on the number of distinct alternating greedy trees.
pub const DEFAULT_ALTERNATING_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("more than {cap} distinct alternating greedy trees")]
    TooManyTrees { cap: usize },
}

/// The greedy tree. Vertices are labeled in breadth-first order, so labels
/// along each level carry non-increasing degrees.
pub fn greedy_tree(internal: &InternalDegreeSequence) -> Tree {
    let degrees = internal.degrees();
    if degrees.is_empty() {
        return Tree::path(2);
    }
    let mut label: Vec<Degree> = vec![degrees[0]];
    let mut edges = Vec::new();
    let mut next_internal = 1;
    let mut head = 0;
    while head < label.len() {
        let children = if head == 0 { label[0] } else { label[head] - 1 };
        for _ in 0..children {
            let child_label = match degrees.get(next_internal) {
                Some(&d) => {
                    next_internal += 1;
                    d
                }
                None => 1,
            };
            edges.push((head, label.len()));
            label.push(child_label);
        }
        head += 1;
    }
    Tree::from_edges_unchecked(label.len(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// Base case, `m - 1 <= d_m`.
    A1,
    /// Split off a subtree, `m - 1 >= d_m + 1`.
    A2,
}

/// One level of the recursive decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionStep {
    pub rule: Rule,
    /// Internal degrees handled at this level.
    pub sequence: InternalDegreeSequence,
    /// The base tree (`A1`) or the split-off subtree `T` (`A2`).
    #[serde(serialize_with = "serialize_tree")]
    pub subtree: Tree,
    /// Root `r` of `subtree`.
    pub root: Vertex,
    /// Sequence passed to the next level; empty after `A1`.
    pub remaining: InternalDegreeSequence,
}

/// Gluing of the subtree of decomposition step `step` onto the leaf `leaf`
/// of `host`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinStep {
    pub step: usize,
    #[serde(serialize_with = "serialize_tree")]
    pub host: Tree,
    pub leaf: Vertex,
    /// Degree of the unique neighbor of `leaf` in `host`.
    pub neighbor_degree: Degree,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ConstructionTrace {
    pub steps: Vec<DecompositionStep>,
    /// Joins in the order they were performed, innermost first.
    pub joins: Vec<JoinStep>,
}

fn serialize_tree<S: serde::Serializer>(tree: &Tree, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&tree.to_edge_list())
}

impl ConstructionTrace {
    /// Re-checks the recorded decisions: remaining sequences shrink, the
    /// rule matches the dichotomy, and every chosen leaf had a neighbor of
    /// minimum degree among the leaves of its host.
    pub fn validate(&self) -> Result<(), String> {
        for (i, step) in self.steps.iter().enumerate() {
            let d = step.sequence.degrees();
            let (m, dm) = (d.len(), d[d.len() - 1] as usize);
            let expected = if m - 1 <= dm { Rule::A1 } else { Rule::A2 };
            if step.rule != expected {
                return Err(format!(
                    "step {i}: rule {:?} but expected {expected:?}",
                    step.rule
                ));
            }
            if step.remaining.m() >= m {
                return Err(format!("step {i}: remaining sequence does not shrink"));
            }
            if let Some(next) = self.steps.get(i + 1) {
                if next.sequence != step.remaining {
                    return Err(format!(
                        "step {}: input is not the remaining sequence of step {i}",
                        i + 1
                    ));
                }
            }
        }
        for (j, join) in self.joins.iter().enumerate() {
            let deg = join.host.degree_vec();
            let adj = join.host.adjacency();
            let min = join
                .host
                .leaves()
                .iter()
                .map(|&l| deg[adj[l][0]])
                .min()
                .ok_or_else(|| format!("join {j}: host has no leaves"))?;
            if deg[join.leaf] != 1 {
                return Err(format!("join {j}: vertex {} is not a leaf", join.leaf));
            }
            if deg[adj[join.leaf][0]] != join.neighbor_degree || join.neighbor_degree != min {
                return Err(format!(
                    "join {j}: neighbor degree {} but minimum is {min}",
                    join.neighbor_degree
                ));
            }
        }
        Ok(())
    }
}

/// Root `0` with one child per entry of `child_degrees` (each completed
/// with leaves) and `extra_leaves` further leaf children.
fn rooted_star_of_stars(child_degrees: &[Degree], extra_leaves: usize) -> Tree {
    let mut edges = Vec::new();
    let mut next = 1;
    for &d in child_degrees {
        let child = next;
        edges.push((0, child));
        next += 1;
        for _ in 1..d {
            edges.push((child, next));
            next += 1;
        }
    }
    for _ in 0..extra_leaves {
        edges.push((0, next));
        next += 1;
    }
    Tree::from_edges_unchecked(next, edges)
}

/// The recursive decomposition of a nonempty internal sequence.
pub fn decompose(internal: &InternalDegreeSequence) -> Vec<DecompositionStep> {
    assert!(
        !internal.is_empty(),
        "decomposition needs internal vertices"
    );
    let mut steps = Vec::new();
    let mut current = internal.clone();
    loop {
        let d = current.degrees();
        let m = d.len();
        let dm = d[m - 1] as usize;
        if m - 1 <= dm {
            let subtree = rooted_star_of_stars(&d[..m - 1], dm + 1 - m);
            steps.push(DecompositionStep {
                rule: Rule::A1,
                sequence: current.clone(),
                subtree,
                root: 0,
                remaining: InternalDegreeSequence::default(),
            });
            return steps;
        }
        let subtree = rooted_star_of_stars(&d[..dm - 1], 0);
        let remaining = current.slice(dm - 1..m - 1);
        steps.push(DecompositionStep {
            rule: Rule::A2,
            sequence: current.clone(),
            subtree,
            root: 0,
            remaining: remaining.clone(),
        });
        current = remaining;
    }
}

/// Identify vertex `root` of `subtree` with leaf `leaf` of `host`. Host
/// labels are kept; the other subtree vertices are appended in label order.
fn glue(host: &Tree, leaf: Vertex, subtree: &Tree, root: Vertex) -> Tree {
    let offset = host.n();
    let map = |u: Vertex| match u.cmp(&root) {
        std::cmp::Ordering::Equal => leaf,
        std::cmp::Ordering::Less => offset + u,
        std::cmp::Ordering::Greater => offset + u - 1,
    };
    let edges = host
        .edges()
        .iter()
        .copied()
        .chain(subtree.edges().iter().map(|&(u, v)| (map(u), map(v))));
    Tree::from_edges_unchecked(host.n() + subtree.n() - 1, edges)
}

/// Leaves of `tree` whose neighbor has minimum degree, ascending by label,
/// together with that degree.
fn min_neighbor_leaves(tree: &Tree) -> (Vec<Vertex>, Degree) {
    let deg = tree.degree_vec();
    let adj = tree.adjacency();
    let leaves: Vec<(Vertex, Degree)> = tree
        .leaves()
        .into_iter()
        .map(|l| (l, deg[adj[l][0]]))
        .collect();
    let min = leaves
        .iter()
        .map(|&(_, d)| d)
        .min()
        .expect("a tree has leaves");
    (
        leaves
            .into_iter()
            .filter(|&(_, d)| d == min)
            .map(|(l, _)| l)
            .collect(),
        min,
    )
}

/// An alternating greedy tree, canonically labeled, with the decisions that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingTree {
    pub tree: Tree,
    pub form: CanonicalForm,
    pub trace: ConstructionTrace,
}

struct Partial {
    tree: Tree,
    form: CanonicalForm,
    joins: Vec<JoinStep>,
}

fn partial(tree: &Tree, joins: Vec<JoinStep>) -> Partial {
    let tree = canonicalize(tree);
    let form = canonical_form(&tree);
    Partial { tree, form, joins }
}

fn explore(
    internal: &InternalDegreeSequence,
    cap: usize,
    first_only: bool,
) -> Result<Vec<AlternatingTree>, ConstructError> {
    if internal.is_empty() {
        return Ok(vec![AlternatingTree {
            tree: Tree::path(2),
            form: canonical_form(&Tree::path(2)),
            trace: ConstructionTrace::default(),
        }]);
    }
    let steps = decompose(internal);
    let base = steps.last().expect("decomposition is nonempty");
    let mut level = vec![partial(&base.subtree, Vec::new())];
    // Isomorphic hosts yield isomorphic sets of results, so deduplicating
    // after every join is exact.
    for (index, step) in steps.iter().enumerate().rev().skip(1) {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for host in &level {
            let (mut candidates, neighbor_degree) = min_neighbor_leaves(&host.tree);
            if first_only {
                candidates.truncate(1);
            }
            for leaf in candidates {
                let glued = glue(&host.tree, leaf, &step.subtree, step.root);
                let mut joins = host.joins.clone();
                joins.push(JoinStep {
                    step: index,
                    host: host.tree.clone(),
                    leaf,
                    neighbor_degree,
                });
                let candidate = partial(&glued, joins);
                if seen.insert(candidate.form.clone()) {
                    next.push(candidate);
                    if next.len() > cap {
                        return Err(ConstructError::TooManyTrees { cap });
                    }
                }
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|p| AlternatingTree {
            tree: p.tree,
            form: p.form,
            trace: ConstructionTrace {
                steps: steps.clone(),
                joins: p.joins,
            },
        })
        .collect())
}

/// Every alternating greedy tree up to isomorphism, following all leaves
/// tied for the smallest neighbor degree at every gluing step.
pub fn alternating_greedy_all(
    internal: &InternalDegreeSequence,
) -> Result<Vec<AlternatingTree>, ConstructError> {
    alternating_greedy_all_capped(internal, DEFAULT_ALTERNATING_CAP)
}

pub fn alternating_greedy_all_capped(
    internal: &InternalDegreeSequence,
    cap: usize,
) -> Result<Vec<AlternatingTree>, ConstructError> {
    explore(internal, cap, false)
}

/// One alternating greedy tree: among tied leaves the one with the smallest
/// label in the canonical labeling of the host is used.
pub fn alternating_greedy_one(internal: &InternalDegreeSequence) -> AlternatingTree {
    explore(internal, usize::MAX, true)
        .expect("a single branch cannot exceed the cap")
        .pop()
        .expect("exactly one tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::sombor_index;

    fn internal(d: &[Degree]) -> InternalDegreeSequence {
        InternalDegreeSequence::new(d.to_vec()).unwrap()
    }

    fn edge_degree_pairs(tree: &Tree) -> Vec<(Degree, Degree)> {
        let deg = tree.degree_vec();
        let mut pairs: Vec<_> = tree
            .edges()
            .iter()
            .map(|&(u, v)| (deg[u].max(deg[v]), deg[u].min(deg[v])))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    #[test]
    fn greedy_small_cases() {
        assert_eq!(greedy_tree(&internal(&[])), Tree::path(2));
        assert_eq!(
            canonical_form(&greedy_tree(&internal(&[2]))),
            canonical_form(&Tree::path(3))
        );
        let t = greedy_tree(&internal(&[3, 2, 2]));
        assert_eq!(
            edge_degree_pairs(&t),
            vec![(2, 1), (2, 1), (3, 1), (3, 2), (3, 2)]
        );
        let expected = 2.0 * 13f64.sqrt() + 10f64.sqrt() + 2.0 * 5f64.sqrt();
        assert!((sombor_index(&t) - expected).abs() < 1e-12);
    }

    #[test]
    fn greedy_figure_sequence_levels() {
        let t = greedy_tree(&internal(&[5, 4, 3, 3, 3, 2, 2, 2]));
        let deg = t.degree_vec();
        let adj = t.adjacency();
        assert_eq!(deg[0], 5);
        let mut root_nbrs: Vec<Degree> = adj[0].iter().map(|&w| deg[w]).collect();
        root_nbrs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(root_nbrs, vec![4, 3, 3, 3, 2]);
        // the degree-4 child takes the last two internal degrees
        let four = adj[0].iter().copied().find(|&w| deg[w] == 4).unwrap();
        let mut kids: Vec<Degree> = adj[four]
            .iter()
            .filter(|&&w| w != 0)
            .map(|&w| deg[w])
            .collect();
        kids.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(kids, vec![2, 2, 1]);
        assert_eq!(
            t.degrees(),
            internal(&[5, 4, 3, 3, 3, 2, 2, 2]).complete().unwrap()
        );
    }

    #[test]
    fn greedy_ignores_input_order() {
        let a = greedy_tree(&internal(&[2, 3, 4, 2]));
        let b = greedy_tree(&internal(&[4, 3, 2, 2]));
        assert_eq!(a, b);
    }

    #[test]
    fn alternating_double_star() {
        let all = alternating_greedy_all(&internal(&[3, 3])).unwrap();
        assert_eq!(all.len(), 1);
        let double_star = Tree::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(all[0].form, canonical_form(&double_star));
        assert_eq!(all[0].trace.steps.len(), 1);
        assert_eq!(all[0].trace.steps[0].rule, Rule::A1);
    }

    #[test]
    fn alternating_base_case_without_leaves() {
        let all = alternating_greedy_all(&internal(&[3, 2, 2])).unwrap();
        assert_eq!(all.len(), 1);
        let t = &all[0].tree;
        assert_eq!(
            edge_degree_pairs(t),
            vec![(2, 1), (2, 2), (3, 1), (3, 1), (3, 2)]
        );
        let root = &all[0].trace.steps[0];
        assert_eq!(root.subtree.degree_vec()[root.root], 2);
    }

    #[test]
    fn single_internal_vertex_is_star() {
        let one = alternating_greedy_one(&internal(&[4]));
        assert_eq!(one.form, canonical_form(&Tree::star(5)));
    }

    #[test]
    fn figure_decomposition() {
        let steps = decompose(&internal(&[5, 4, 3, 3, 3, 2, 2, 2]));
        let rules: Vec<Rule> = steps.iter().map(|s| s.rule).collect();
        assert_eq!(rules, vec![Rule::A2, Rule::A2, Rule::A2, Rule::A1]);
        assert_eq!(steps[0].remaining.degrees(), &[4, 3, 3, 3, 2, 2]);
        assert_eq!(steps[1].remaining.degrees(), &[3, 3, 3, 2]);
        assert_eq!(steps[2].remaining.degrees(), &[3, 3]);
        for (step, star) in steps.iter().zip([6, 5, 4]) {
            assert_eq!(
                canonical_form(&step.subtree),
                canonical_form(&Tree::star(star))
            );
            assert_eq!(step.subtree.degree_vec()[step.root], 1);
        }
    }

    #[test]
    fn figure_sequence_has_several_alternating_trees() {
        let seq = internal(&[5, 4, 3, 3, 3, 2, 2, 2]);
        let all = alternating_greedy_all(&seq).unwrap();
        assert!(all.len() >= 3, "{}", all.len());
        let full = seq.complete().unwrap();
        for alt in &all {
            assert_eq!(alt.tree.degrees(), full);
            assert_eq!(alt.trace.joins.len(), 3);
            alt.trace.validate().unwrap();
        }
        let one = alternating_greedy_one(&seq);
        assert!(all.iter().any(|a| a.form == one.form));
    }

    #[test]
    fn cap_is_enforced() {
        let seq = internal(&[5, 4, 3, 3, 3, 2, 2, 2]);
        assert_eq!(
            alternating_greedy_all_capped(&seq, 1),
            Err(ConstructError::TooManyTrees { cap: 1 })
        );
    }

    #[test]
    fn trace_validation_detects_bad_leaf() {
        let mut alt = alternating_greedy_one(&internal(&[3, 2, 2, 2, 2]));
        alt.trace.validate().unwrap();
        let join = alt.trace.joins.first_mut().unwrap();
        join.leaf = 0;
        assert!(alt.trace.validate().is_err());
    }
}
