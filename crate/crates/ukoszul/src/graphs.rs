//! Graph input, the diagonal property, and the graph-side cross-validation of
//! the Koszulity checker.
//!
//! A graph has the diagonal property when every path v1-v2-v3-v4 on four
//! distinct vertices has a chord {v1,v3} or {v2,v4}. For exterior
//! Stanley-Reisner algebras this combinatorial condition is equivalent to
//! universal Koszulity, which gives an independent oracle for the ideal
//! search: `uk_diagonal_crosscheck` sweeps every edge subset on a fixed
//! vertex set and compares the two sides.

use crate::ideals::{universally_koszul, IdealError};
use crate::qalg::{AlgebraError, GradedAlgebraTable, Graph, QuadraticPresentation};
use crate::{gfp::PrimeField, Limits};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("graph parse error: {0}")]
    Parse(String),
    #[error("crosscheck limited to {limit} vertices, got {got}")]
    TooManyVertices { got: usize, limit: usize },
}

/// Parses the edge-list format `<n>; a-b, c-d, ...` with 1-based vertices.
/// `<n>;` alone is the empty graph on n vertices. Loops, duplicate edges, and
/// out-of-range indices are rejected.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let cleaned: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let (head, tail) = cleaned
        .split_once(';')
        .ok_or_else(|| GraphError::Parse("expected '<n>; <edges>'".into()))?;
    let n: usize = head
        .trim()
        .parse()
        .map_err(|_| GraphError::Parse(format!("invalid vertex count '{}'", head.trim())))?;
    let mut graph = Graph::new(n);
    for part in tail.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (a, b) = part
            .split_once('-')
            .ok_or_else(|| GraphError::Parse(format!("invalid edge '{part}', expected 'a-b'")))?;
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| GraphError::Parse(format!("invalid vertex '{}'", a.trim())))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| GraphError::Parse(format!("invalid vertex '{}'", b.trim())))?;
        if a == 0 || b == 0 || a > n || b > n {
            return Err(GraphError::Parse(format!(
                "edge {a}-{b} out of range 1..={n}"
            )));
        }
        graph.add_edge(a - 1, b - 1)?;
    }
    Ok(graph)
}

/// Verdict of the diagonal-property test; the witness is the lexicographically
/// first chordless path, as 1-based vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalVerdict {
    pub holds: bool,
    pub witness: Option<[usize; 4]>,
}

/// Does every 3-edge path on four distinct vertices have a diagonal?
pub fn diagonal_property(g: &Graph) -> DiagonalVerdict {
    let n = g.vertex_count();
    for v1 in 0..n {
        for v2 in 0..n {
            if v2 == v1 || !g.has_edge(v1, v2) {
                continue;
            }
            for v3 in 0..n {
                if v3 == v1 || v3 == v2 || !g.has_edge(v2, v3) {
                    continue;
                }
                for v4 in 0..n {
                    if v4 == v1 || v4 == v2 || v4 == v3 || !g.has_edge(v3, v4) {
                        continue;
                    }
                    if !g.has_edge(v1, v3) && !g.has_edge(v2, v4) {
                        return DiagonalVerdict {
                            holds: false,
                            witness: Some([v1 + 1, v2 + 1, v3 + 1, v4 + 1]),
                        };
                    }
                }
            }
        }
    }
    DiagonalVerdict {
        holds: true,
        witness: None,
    }
}

/// One graph where the ideal search and the diagonal property disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub edge_mask: u64,
    pub edges: Vec<(usize, usize)>,
    pub uk_holds: bool,
    pub diagonal_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub vertices: usize,
    pub p: u32,
    pub graphs_checked: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Compares `universally_koszul(stanley_reisner(G))` with
/// `diagonal_property(G)` over every edge subset on the given vertex count.
///
/// The Stanley-Reisner tables are built to degree `vertices + 1`, where they
/// vanish, so every verdict is exact. The sweep parallelizes over graphs; the
/// report lists disagreements in edge-mask order.
pub fn uk_diagonal_crosscheck(
    vertices: usize,
    field: PrimeField,
    limits: &Limits,
) -> Result<CrosscheckReport, GraphError> {
    if vertices > limits.max_enum_dim {
        return Err(GraphError::TooManyVertices {
            got: vertices,
            limit: limits.max_enum_dim,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|i| (i + 1..vertices).map(move |j| (i, j)))
        .collect();
    let total: u64 = 1 << pairs.len();
    let mut disagreements: Vec<Disagreement> = (0..total)
        .into_par_iter()
        .map(|mask| -> Result<Option<Disagreement>, GraphError> {
            let mut g = Graph::new(vertices);
            for (bit, &(a, b)) in pairs.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    g.add_edge(a, b).expect("pairs are distinct and in range");
                }
            }
            let diagonal = diagonal_property(&g).holds;
            let pres = QuadraticPresentation::stanley_reisner(&g, field);
            let table = GradedAlgebraTable::build(&pres, vertices + 1, limits)?;
            let uk = universally_koszul(&table, limits)?.holds();
            if uk != diagonal {
                Ok(Some(Disagreement {
                    edge_mask: mask,
                    edges: g.edges().map(|(a, b)| (a + 1, b + 1)).collect(),
                    uk_holds: uk,
                    diagonal_holds: diagonal,
                }))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    disagreements.sort_by_key(|d| d.edge_mask);
    Ok(CrosscheckReport {
        vertices,
        p: field.p(),
        graphs_checked: total as usize,
        disagreements,
    })
}
