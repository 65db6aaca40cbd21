//! Centroid-rooted AHU canonical forms.
//!
//! The code of a rooted tree is `(` followed by the sorted codes of the
//! child subtrees followed by `)`. An unrooted tree is rooted at its
//! centroid; with two centroids the smaller of the two codes is taken.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{Tree, Vertex};

/// Isomorphism-invariant code of an unlabeled tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("codes are ASCII parentheses")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

fn centroids(adj: &[Vec<Vertex>]) -> Vec<Vertex> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev().take(n - 1) {
        size[parent[u]] += size[u];
    }
    let mut out = Vec::with_capacity(2);
    for u in 0..n {
        let mut heaviest = n - size[u];
        for &w in adj[u].iter().filter(|&&w| parent[w] == u) {
            heaviest = heaviest.max(size[w]);
        }
        if heaviest <= n / 2 {
            out.push(u);
        }
    }
    out
}

/// Per-vertex AHU codes of the tree rooted at `root`, together with the
/// parent array of that rooting (`parent[root] == root`).
fn rooted_codes(adj: &[Vec<Vertex>], root: Vertex) -> (Vec<Vec<u8>>, Vec<Vertex>) {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut children: Vec<&Vec<u8>> = adj[u]
            .iter()
            .filter(|&&w| parent[w] == u)
            .map(|&w| &codes[w])
            .collect();
        children.sort_unstable();
        let mut code = Vec::with_capacity(2 + children.iter().map(|c| c.len()).sum::<usize>());
        code.push(b'(');
        for child in children {
            code.extend_from_slice(child);
        }
        code.push(b')');
        codes[u] = code;
    }
    (codes, parent)
}

/// Root with the smallest code, its per-vertex codes and parent array.
fn best_rooting(tree: &Tree) -> (Vertex, Vec<Vec<u8>>, Vec<Vertex>) {
    let adj = tree.adjacency();
    centroids(&adj)
        .into_iter()
        .map(|c| {
            let (codes, parent) = rooted_codes(&adj, c);
            (c, codes, parent)
        })
        .min_by(|a, b| a.1[a.0].cmp(&b.1[b.0]))
        .expect("every tree has a centroid")
}

pub fn canonical_form(tree: &Tree) -> CanonicalForm {
    let (root, mut codes, _) = best_rooting(tree);
    CanonicalForm(std::mem::take(&mut codes[root]))
}

/// A relabeling `perm` (old label to new label) such that isomorphic trees
/// relabel to identical trees. Labels follow a preorder walk from the
/// canonical root with children visited in code order.
pub fn canonical_labeling(tree: &Tree) -> Vec<Vertex> {
    let (root, codes, parent) = best_rooting(tree);
    let adj = tree.adjacency();
    let mut perm = vec![usize::MAX; tree.n()];
    let mut next = 0;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        perm[u] = next;
        next += 1;
        let mut children: Vec<Vertex> =
            adj[u].iter().copied().filter(|&w| parent[w] == u).collect();
        // reverse so the smallest code is popped first
        children.sort_unstable_by(|&a, &b| codes[b].cmp(&codes[a]));
        stack.extend(children);
    }
    perm
}

/// `tree` relabeled by [`canonical_labeling`].
pub fn canonicalize(tree: &Tree) -> Tree {
    tree.relabel(&canonical_labeling(tree))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_relabelings_agree() {
        let a = Tree::path(4);
        let b = Tree::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(canonicalize(&a), canonicalize(&b));
    }

    #[test]
    fn path_and_star_differ() {
        assert_ne!(
            canonical_form(&Tree::path(4)),
            canonical_form(&Tree::star(4))
        );
    }

    #[test]
    fn small_codes() {
        assert_eq!(canonical_form(&Tree::single_vertex()).as_str(), "()");
        assert_eq!(canonical_form(&Tree::path(2)).as_str(), "(())");
        assert_eq!(canonical_form(&Tree::path(3)).as_str(), "(()())");
        assert_eq!(canonical_form(&Tree::star(4)).as_str(), "(()()())");
    }

    #[test]
    fn bicentroidal_takes_smaller_code() {
        // double star: 0-1 with two leaves on each side
        let t = Tree::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(centroids(&t.adjacency()), vec![0, 1]);
        assert_eq!(canonical_form(&t).as_str(), "((()())()())");
    }

    #[test]
    fn canonical_labeling_is_a_permutation() {
        let t = Tree::new(7, [(0, 4), (4, 2), (2, 6), (6, 1), (4, 3), (3, 5)]).unwrap();
        let mut perm = canonical_labeling(&t);
        perm.sort_unstable();
        assert_eq!(perm, (0..7).collect::<Vec<_>>());
        assert_eq!(canonical_form(&canonicalize(&t)), canonical_form(&t));
    }
}
