//! Linear-time Prüfer encoding and decoding.

use super::{Tree, TreeError, Vertex};

/// Prüfer code of a labeled tree on `n >= 2` vertices: `n - 2` labels in
/// `0..n`, vertex `i` occurring `deg(i) - 1` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PruferSequence(pub Vec<Vertex>);

impl PruferSequence {
    pub fn labels(&self) -> &[Vertex] {
        &self.0
    }
}

pub fn prufer_decode(code: &PruferSequence, n: usize) -> Result<Tree, TreeError> {
    let code = code.labels();
    if n < 2 || code.len() != n - 2 {
        return Err(TreeError::CodeLength { len: code.len(), n });
    }
    let mut degree = vec![1usize; n];
    for &label in code {
        if label >= n {
            return Err(TreeError::LabelOutOfRange { label, n });
        }
        degree[label] += 1;
    }
    Ok(decode_with_degrees(code, degree))
}

/// Decode a code already known to be in range; `degree` must hold
/// `multiplicity + 1` for every vertex and is consumed as scratch.
pub(crate) fn decode_with_degrees(code: &[Vertex], mut degree: Vec<usize>) -> Tree {
    let n = degree.len();
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree
        .iter()
        .position(|&d| d == 1)
        .expect("some vertex is a leaf");
    let mut leaf = ptr;
    for &v in code {
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf.min(n - 1), leaf.max(n - 1)));
    edges.sort_unstable();
    Tree { n, edges }
}

/// Inverse of [`prufer_decode`]. Trees on fewer than two vertices have the
/// empty code.
pub fn prufer_encode(tree: &Tree) -> PruferSequence {
    let n = tree.n();
    if n <= 2 {
        return PruferSequence(Vec::new());
    }
    let adj = tree.adjacency();
    // parent pointers towards n - 1
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![n - 1];
    parent[n - 1] = n - 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut ptr = degree
        .iter()
        .position(|&d| d == 1)
        .expect("a tree has leaves");
    let mut leaf = ptr;
    let mut code = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let next = parent[leaf];
        code.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    PruferSequence(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_small_codes() {
        assert_eq!(
            prufer_decode(&PruferSequence(vec![]), 2).unwrap(),
            Tree::path(2)
        );
        assert_eq!(
            prufer_decode(&PruferSequence(vec![0]), 3).unwrap(),
            Tree::star(3)
        );
        let t = prufer_decode(&PruferSequence(vec![3, 3, 3, 4]), 6).unwrap();
        let deg = t.degree_vec();
        assert_eq!(deg[3], 4);
        assert_eq!(deg[4], 2);
        assert_eq!(deg.iter().filter(|&&d| d == 1).count(), 4);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(
            prufer_decode(&PruferSequence(vec![5]), 3),
            Err(TreeError::LabelOutOfRange { label: 5, n: 3 })
        );
        assert!(matches!(
            prufer_decode(&PruferSequence(vec![0, 0]), 3),
            Err(TreeError::CodeLength { .. })
        ));
        assert!(matches!(
            prufer_decode(&PruferSequence(vec![]), 1),
            Err(TreeError::CodeLength { .. })
        ));
    }

    #[test]
    fn encodes_small_trees() {
        assert!(prufer_encode(&Tree::path(2)).labels().is_empty());
        assert_eq!(prufer_encode(&Tree::star(4)).labels(), &[0, 0]);
        assert_eq!(prufer_encode(&Tree::path(4)).labels(), &[1, 2]);
    }

    #[test]
    fn exhaustive_round_trip_n5() {
        let n = 5;
        for idx in 0..n * n * n {
            let code = PruferSequence(vec![idx % n, (idx / n) % n, idx / (n * n)]);
            let tree = prufer_decode(&code, n).unwrap();
            assert_eq!(prufer_encode(&tree), code);
        }
    }
}
