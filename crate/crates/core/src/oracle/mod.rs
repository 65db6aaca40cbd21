//! Exhaustive ground truth over all labeled trees with a given degree
//! sequence.
//!
//! Vertex `i` is assigned degree `d_i` and appears `d_i - 1` times in the
//! Prüfer code, so the labeled trees realizing the sequence are exactly the
//! distinct permutations of that multiset. They are enumerated in
//! lexicographic order; the rank space is cut into contiguous chunks that
//! are scanned in parallel and merged by keeping, for every isomorphism
//! class, the representative of smallest rank.

pub mod perm;
mod switch;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::{alternating_greedy_all, greedy_tree, ConstructError};
use crate::degseq::{tree_degree_sequences, Degree, DegreeSequence};
use crate::indices::{rf_index, rf_index_with_degrees, EdgeFunction, TOLERANCE};
use crate::tree::prufer::decode_with_degrees;
use crate::tree::{canonical_form, CanonicalForm, Tree, Vertex};

pub use switch::{
    edge_switch, local_min_check, LocalMinReport, Switch, SwitchError, SwitchPattern,
};

/// Default bound on the number of labeled trees a single enumeration may
/// visit.
pub const DEFAULT_CAP: u64 = 100_000_000;

const CHUNK: u128 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{count} labeled trees exceed the enumeration cap of {cap}")]
    CapExceeded { count: String, cap: u64 },
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Number of labeled trees on vertices `0..n` where vertex `i` has degree
/// `d_i`: `(n-2)! / prod (d_i - 1)!`. `None` on overflow.
pub fn labeled_tree_count(sequence: &DegreeSequence) -> Option<u128> {
    if sequence.n() == 1 {
        return Some(1);
    }
    perm::multinomial(&prufer_counts(sequence))
}

fn prufer_counts(sequence: &DegreeSequence) -> Vec<usize> {
    sequence.degrees().iter().map(|&d| d as usize - 1).collect()
}

/// Lazily decodes the labeled trees of one contiguous rank range.
#[derive(Debug, Clone)]
pub struct TreeEnumerator {
    code: Vec<Vertex>,
    degree: Vec<usize>,
    remaining: u128,
}

impl Iterator for TreeEnumerator {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let tree = if self.degree.len() == 1 {
            Tree::single_vertex()
        } else {
            decode_with_degrees(&self.code, self.degree.clone())
        };
        if self.remaining > 0 {
            perm::next_permutation(&mut self.code);
        }
        Some(tree)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, usize::try_from(self.remaining).ok())
    }
}

fn check_cap(sequence: &DegreeSequence, cap: u64) -> Result<u128, OracleError> {
    match labeled_tree_count(sequence) {
        Some(count) if count <= u128::from(cap) => Ok(count),
        Some(count) => Err(OracleError::CapExceeded {
            count: count.to_string(),
            cap,
        }),
        None => Err(OracleError::CapExceeded {
            count: "more than 2^128".into(),
            cap,
        }),
    }
}

/// Every labeled tree in which vertex `i` has degree `sequence.degrees()[i]`,
/// each exactly once, in lexicographic order of Prüfer codes.
pub fn enumerate_trees(sequence: &DegreeSequence, cap: u64) -> Result<TreeEnumerator, OracleError> {
    let count = check_cap(sequence, cap)?;
    Ok(enumerate_range(sequence, 0, count))
}

fn enumerate_range(sequence: &DegreeSequence, start: u128, len: u128) -> TreeEnumerator {
    let degree: Vec<usize> = sequence.degrees().iter().map(|&d| d as usize).collect();
    let code = if degree.len() == 1 {
        Vec::new()
    } else {
        perm::unrank(&prufer_counts(sequence), start).expect("start rank in range")
    };
    TreeEnumerator {
        code,
        degree,
        remaining: len,
    }
}

/// Canonical representative of an isomorphism class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalTree {
    pub form: CanonicalForm,
    #[serde(serialize_with = "serialize_tree")]
    pub tree: Tree,
    pub value: f64,
}

fn serialize_tree<S: serde::Serializer>(tree: &Tree, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&tree.to_edge_list())
}

/// Value of one alternating greedy tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternatingValue {
    pub form: CanonicalForm,
    pub value: f64,
    pub attains_max: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub sequence: DegreeSequence,
    pub index_name: String,
    pub min_value: f64,
    pub max_value: f64,
    /// Classes within [`TOLERANCE`] of the minimum, ordered by form.
    pub argmin: Vec<ExtremalTree>,
    /// Classes within [`TOLERANCE`] of the maximum, ordered by form.
    pub argmax: Vec<ExtremalTree>,
    pub labeled_count: u64,
    pub unlabeled_count: usize,
    pub greedy_form: CanonicalForm,
    pub greedy_value: f64,
    pub greedy_attains_min: bool,
    pub alt_greedy_attains_max: bool,
    pub alt_greedy_values: Vec<AlternatingValue>,
}

impl ExtremalReport {
    pub fn argmin_forms(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.argmin.iter().map(|t| &t.form)
    }

    pub fn argmax_forms(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.argmax.iter().map(|t| &t.form)
    }

    /// Both extremal constructions attain their extremum.
    pub fn verified(&self) -> bool {
        self.greedy_attains_min && self.alt_greedy_attains_max
    }
}

/// Smallest-rank representative and value of every class in a rank range.
type ClassMap = HashMap<CanonicalForm, (u128, Tree, f64)>;

fn scan_chunk(sequence: &DegreeSequence, f: &EdgeFunction, start: u128, len: u128) -> ClassMap {
    let degree: Vec<Degree> = if sequence.n() == 1 {
        vec![0]
    } else {
        sequence.degrees().to_vec()
    };
    let mut classes = ClassMap::new();
    for (offset, tree) in enumerate_range(sequence, start, len).enumerate() {
        let form = canonical_form(&tree);
        classes.entry(form).or_insert_with(|| {
            let value = rf_index_with_degrees(&tree, &degree, f);
            (start + offset as u128, tree, value)
        });
    }
    classes
}

fn merge(mut a: ClassMap, b: ClassMap) -> ClassMap {
    for (form, entry) in b {
        match a.get(&form) {
            Some(existing) if existing.0 <= entry.0 => {}
            _ => {
                a.insert(form, entry);
            }
        }
    }
    a
}

/// Greedy tree of a full degree sequence, including the single vertex.
pub fn greedy_tree_for(sequence: &DegreeSequence) -> Tree {
    if sequence.n() == 1 {
        Tree::single_vertex()
    } else {
        greedy_tree(&sequence.internal_degrees())
    }
}

/// Alternating greedy trees of a full degree sequence.
pub fn alternating_trees_for(sequence: &DegreeSequence) -> Result<Vec<Tree>, ConstructError> {
    if sequence.n() == 1 {
        return Ok(vec![Tree::single_vertex()]);
    }
    Ok(alternating_greedy_all(&sequence.internal_degrees())?
        .into_iter()
        .map(|alt| alt.tree)
        .collect())
}

/// Exact minimum and maximum of `R_f` over every tree realizing `sequence`,
/// compared against the greedy and alternating greedy constructions.
pub fn extremal_report(
    sequence: &DegreeSequence,
    f: &EdgeFunction,
    cap: u64,
) -> Result<ExtremalReport, OracleError> {
    let count = check_cap(sequence, cap)?;
    let chunks = count.div_ceil(CHUNK);
    let classes = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            scan_chunk(sequence, f, start, CHUNK.min(count - start))
        })
        .reduce(ClassMap::new, merge);
    let classes: BTreeMap<CanonicalForm, (u128, Tree, f64)> = classes.into_iter().collect();

    let min_value = classes.values().map(|c| c.2).fold(f64::INFINITY, f64::min);
    let max_value = classes
        .values()
        .map(|c| c.2)
        .fold(f64::NEG_INFINITY, f64::max);
    let select = |keep: &dyn Fn(f64) -> bool| -> Vec<ExtremalTree> {
        classes
            .iter()
            .filter(|(_, c)| keep(c.2))
            .map(|(form, (_, tree, value))| ExtremalTree {
                form: form.clone(),
                tree: tree.clone(),
                value: *value,
            })
            .collect()
    };
    let argmin = select(&|v| v <= min_value + TOLERANCE);
    let argmax = select(&|v| v >= max_value - TOLERANCE);

    let greedy = greedy_tree_for(sequence);
    let greedy_form = canonical_form(&greedy);
    let greedy_attains_min = argmin.iter().any(|t| t.form == greedy_form);

    let alt_greedy_values: Vec<AlternatingValue> = alternating_trees_for(sequence)?
        .iter()
        .map(|tree| {
            let form = canonical_form(tree);
            let attains_max = argmax.iter().any(|t| t.form == form);
            AlternatingValue {
                form,
                value: rf_index(tree, f),
                attains_max,
            }
        })
        .collect();

    Ok(ExtremalReport {
        sequence: sequence.clone(),
        index_name: f.name().to_string(),
        min_value,
        max_value,
        argmin,
        argmax,
        labeled_count: count as u64,
        unlabeled_count: classes.len(),
        greedy_form,
        greedy_value: rf_index(&greedy, f),
        greedy_attains_min,
        alt_greedy_attains_max: alt_greedy_values.iter().any(|a| a.attains_max),
        alt_greedy_values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub n_max: usize,
    pub index_name: String,
    pub reports: Vec<ExtremalReport>,
}

impl SweepSummary {
    /// Sequences where either construction misses its extremum.
    pub fn failures(&self) -> Vec<&ExtremalReport> {
        self.reports.iter().filter(|r| !r.verified()).collect()
    }

    pub fn greedy_failures(&self) -> usize {
        self.reports
            .iter()
            .filter(|r| !r.greedy_attains_min)
            .count()
    }

    pub fn alternating_failures(&self) -> usize {
        self.reports
            .iter()
            .filter(|r| !r.alt_greedy_attains_max)
            .count()
    }
}

/// [`extremal_report`] for every tree degree sequence with
/// `2 <= n <= n_max`, ordered by `n` and then by decreasing sequence.
pub fn sweep_verify(n_max: usize, f: &EdgeFunction, cap: u64) -> Result<SweepSummary, OracleError> {
    assert!(n_max >= 2, "n_max must be at least 2");
    let mut reports = Vec::new();
    for n in 2..=n_max {
        for sequence in tree_degree_sequences(n) {
            reports.push(extremal_report(&sequence, f, cap)?);
        }
    }
    Ok(SweepSummary {
        n_max,
        index_name: f.name().to_string(),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degseq::InternalDegreeSequence;
    use crate::indices::sombor_index;

    fn seq(text: &str) -> DegreeSequence {
        DegreeSequence::parse(text).unwrap()
    }

    #[test]
    fn enumerates_paths_on_three_vertices() {
        let trees: Vec<Tree> = enumerate_trees(&seq("2 1 1"), DEFAULT_CAP)
            .unwrap()
            .collect();
        // vertex 0 carries degree 2, so exactly one labeled tree has it as center
        assert_eq!(trees, vec![Tree::star(3)]);
    }

    #[test]
    fn enumerates_single_edge_and_vertex() {
        assert_eq!(
            enumerate_trees(&seq("1 1"), DEFAULT_CAP).unwrap().count(),
            1
        );
        let single: Vec<Tree> = enumerate_trees(&seq("0"), DEFAULT_CAP).unwrap().collect();
        assert_eq!(single, vec![Tree::single_vertex()]);
    }

    #[test]
    fn counts_and_classes_for_small_sequence() {
        let d = seq("3 2 2 1 1 1");
        let trees: Vec<Tree> = enumerate_trees(&d, DEFAULT_CAP).unwrap().collect();
        assert_eq!(trees.len(), 12);
        let mut forms: Vec<_> = trees.iter().map(canonical_form).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), 2);
        for t in &trees {
            assert_eq!(t.degree_vec(), vec![3, 2, 2, 1, 1, 1]);
        }
    }

    #[test]
    fn cap_exceeded_reports_count() {
        let d = InternalDegreeSequence::new(vec![5, 4, 3, 3, 3, 2, 2, 2])
            .unwrap()
            .complete()
            .unwrap();
        let err = enumerate_trees(&d, DEFAULT_CAP).unwrap_err();
        assert_eq!(
            err,
            OracleError::CapExceeded {
                count: "18162144000".into(),
                cap: DEFAULT_CAP
            }
        );
        assert!(matches!(
            enumerate_trees(&seq("3 2 2 1 1 1"), 11),
            Err(OracleError::CapExceeded { .. })
        ));
    }

    #[test]
    fn report_for_unique_realization() {
        let r = extremal_report(&seq("2 2 1 1"), &EdgeFunction::sombor(), DEFAULT_CAP).unwrap();
        assert_eq!(r.min_value, r.max_value);
        assert_eq!(r.unlabeled_count, 1);
        assert!(r.greedy_attains_min && r.alt_greedy_attains_max);
    }

    #[test]
    fn report_for_single_edge() {
        let r = extremal_report(&seq("1 1"), &EdgeFunction::sombor(), DEFAULT_CAP).unwrap();
        assert!((r.min_value - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.min_value, r.max_value);
        assert!(r.verified());
    }

    #[test]
    fn report_is_independent_of_chunking() {
        // path on 10 vertices: 40320 labeled trees, three chunks
        let d = seq("2 2 2 2 2 2 2 2 1 1");
        let r = extremal_report(&d, &EdgeFunction::sombor(), DEFAULT_CAP).unwrap();
        assert_eq!(r.labeled_count, 40320);
        assert_eq!(r.unlabeled_count, 1);
        let first = enumerate_trees(&d, DEFAULT_CAP).unwrap().next().unwrap();
        assert_eq!(r.argmin[0].tree, first);
        assert!((r.min_value - sombor_index(&Tree::path(10))).abs() < 1e-12);
    }

    #[test]
    fn sweep_smallest() {
        let s = sweep_verify(2, &EdgeFunction::sombor(), DEFAULT_CAP).unwrap();
        assert_eq!(s.reports.len(), 1);
        assert_eq!(s.reports[0].sequence, seq("1 1"));
        assert!(s.failures().is_empty());
    }
}
