//! Bond-incident-degree indices `R_f(T) = sum over edges uv of f(d_u, d_v)`
//! and the exchange condition on `f`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::degseq::Degree;
use crate::tree::Tree;

/// Absolute tolerance for floating comparisons of index sums.
pub const TOLERANCE: f64 = 1e-9;

/// Symmetry of a new edge function is checked on `1..=SYMMETRY_GRID`.
pub const SYMMETRY_GRID: Degree = 20;

/// Names accepted by [`EdgeFunction::from_name`].
pub const BUILTIN_NAMES: [&str; 4] = ["sombor", "minus_sombor", "product", "sum"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("edge function {name} is not symmetric: f({x},{a}) != f({a},{x})")]
    Asymmetric { name: String, x: Degree, a: Degree },
    #[error("unknown edge function {0:?} (expected one of sombor, minus_sombor, product, sum)")]
    UnknownFunction(String),
}

type EvalFn = dyn Fn(Degree, Degree) -> f64 + Send + Sync;

/// A named symmetric function of the two endpoint degrees of an edge.
#[derive(Clone)]
pub struct EdgeFunction {
    name: String,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for EdgeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeFunction")
            .field("name", &self.name)
            .finish()
    }
}

/// `sqrt(x^2 + a^2)`; the radicand is formed exactly in integers.
pub fn sombor_edge(x: Degree, a: Degree) -> f64 {
    let (x, a) = (u64::from(x), u64::from(a));
    ((x * x + a * a) as f64).sqrt()
}

impl EdgeFunction {
    /// Registers `eval` under `name` after checking symmetry on the grid
    /// `1..=20`.
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(Degree, Degree) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, IndexError> {
        let name = name.into();
        for x in 1..=SYMMETRY_GRID {
            for a in x + 1..=SYMMETRY_GRID {
                let (fxa, fax) = (eval(x, a), eval(a, x));
                if (fxa - fax).abs() > TOLERANCE {
                    return Err(IndexError::Asymmetric { name, x, a });
                }
            }
        }
        Ok(Self {
            name,
            eval: Arc::new(eval),
        })
    }

    fn builtin(name: &str, eval: impl Fn(Degree, Degree) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.to_string(),
            eval: Arc::new(eval),
        }
    }

    /// `sqrt(x^2 + a^2)`, the Sombor edge weight.
    pub fn sombor() -> Self {
        Self::builtin("sombor", sombor_edge)
    }

    /// `-sqrt(x^2 + a^2)`.
    pub fn minus_sombor() -> Self {
        Self::builtin("minus_sombor", |x, a| -sombor_edge(x, a))
    }

    pub fn product() -> Self {
        Self::builtin("product", |x, a| f64::from(x) * f64::from(a))
    }

    pub fn sum() -> Self {
        Self::builtin("sum", |x, a| f64::from(x) + f64::from(a))
    }

    pub fn from_name(name: &str) -> Result<Self, IndexError> {
        match name {
            "sombor" => Ok(Self::sombor()),
            "minus_sombor" => Ok(Self::minus_sombor()),
            "product" => Ok(Self::product()),
            "sum" => Ok(Self::sum()),
            other => Err(IndexError::UnknownFunction(other.to_string())),
        }
    }

    /// `c1 * f1 + c2 * f2`. Symmetric whenever both terms are.
    pub fn affine(c1: f64, f1: &EdgeFunction, c2: f64, f2: &EdgeFunction) -> Self {
        let name = format!("{c1}*{}+{c2}*{}", f1.name, f2.name);
        let (e1, e2) = (Arc::clone(&f1.eval), Arc::clone(&f2.eval));
        Self {
            name,
            eval: Arc::new(move |x, a| c1 * e1(x, a) + c2 * e2(x, a)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: Degree, a: Degree) -> f64 {
        (self.eval)(x, a)
    }
}

/// `R_f(T)`. Edges are summed in the tree's sorted edge order.
pub fn rf_index(tree: &Tree, f: &EdgeFunction) -> f64 {
    rf_index_with_degrees(tree, &tree.degree_vec(), f)
}

pub(crate) fn rf_index_with_degrees(tree: &Tree, degree: &[Degree], f: &EdgeFunction) -> f64 {
    // folded from +0.0: an empty `sum()` yields -0.0, which prints with a sign
    tree.edges()
        .iter()
        .map(|&(u, v)| f.eval(degree[u], degree[v]))
        .fold(0.0, |acc, x| acc + x)
}

/// Sombor index `SO(T)`.
pub fn sombor_index(tree: &Tree) -> f64 {
    rf_index(tree, &EdgeFunction::sombor())
}

/// `f(x,a) + f(y,b) - f(y,a) - f(x,b)`; the exchange condition asks this
/// to be non-negative whenever `x >= y` and `a >= b`.
pub fn exchange_margin(f: &EdgeFunction, x: Degree, y: Degree, a: Degree, b: Degree) -> f64 {
    (f.eval(x, a) + f.eval(y, b)) - (f.eval(y, a) + f.eval(x, b))
}

/// Degree quadruple `(x, y, a, b)` with `x >= y`, `a >= b`.
pub type Quadruple = (Degree, Degree, Degree, Degree);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub function: String,
    /// Weak inequality holds on the whole grid (within [`TOLERANCE`]).
    pub holds: bool,
    /// Margin exceeds [`TOLERANCE`] wherever `x > y` and `a > b`.
    pub strict_holds: bool,
    /// Lexicographically smallest quadruple violating the weak inequality.
    pub witness: Option<Quadruple>,
    /// Lexicographically smallest quadruple violating strictness.
    pub strict_witness: Option<Quadruple>,
    pub grid_max: Degree,
    pub quadruples_checked: u64,
}

/// Checks `f(x,a) + f(y,b) >= f(y,a) + f(x,b)` for all
/// `1 <= y <= x <= grid_max`, `1 <= b <= a <= grid_max`, and strictness when
/// `x > y` and `a > b`. The witnesses do not depend on the thread schedule.
pub fn check_exchange_condition(f: &EdgeFunction, grid_max: Degree) -> ConditionReport {
    assert!(grid_max >= 2, "grid_max must be at least 2");
    let per_x: Vec<(Option<Quadruple>, Option<Quadruple>)> = (1..=grid_max)
        .into_par_iter()
        .map(|x| {
            let mut weak = None;
            let mut strict = None;
            for y in 1..=x {
                for a in 1..=grid_max {
                    for b in 1..=a {
                        let margin = exchange_margin(f, x, y, a, b);
                        if weak.is_none() && margin < -TOLERANCE {
                            weak = Some((x, y, a, b));
                        }
                        if strict.is_none() && x > y && a > b && margin <= TOLERANCE {
                            strict = Some((x, y, a, b));
                        }
                        if weak.is_some() && strict.is_some() {
                            return (weak, strict);
                        }
                    }
                }
            }
            (weak, strict)
        })
        .collect();
    let witness = per_x.iter().find_map(|w| w.0);
    let strict_witness = per_x.iter().find_map(|w| w.1);
    let pairs = u64::from(grid_max) * (u64::from(grid_max) + 1) / 2;
    ConditionReport {
        function: f.name().to_string(),
        holds: witness.is_none(),
        strict_holds: witness.is_none() && strict_witness.is_none(),
        witness,
        strict_witness,
        grid_max,
        quadruples_checked: pairs * pairs,
    }
}

/// Sign of `(a^2 - b^2)(x^2 - y^2)` in exact integer arithmetic.
pub fn sombor_condition_sign(x: Degree, y: Degree, a: Degree, b: Degree) -> Ordering {
    let sq = |d: Degree| i128::from(d) * i128::from(d);
    ((sq(a) - sq(b)) * (sq(x) - sq(y))).cmp(&0)
}

/// Exact form of the exchange condition for minus-Sombor:
/// `(a^2 - b^2)(x^2 - y^2) >= 0`.
pub fn sombor_condition_closed_form(x: Degree, y: Degree, a: Degree, b: Degree) -> bool {
    sombor_condition_sign(x, y, a, b) != Ordering::Less
}
