//! Quadratic presentations and finite-type graded algebra tables over F_p.
//!
//! A presentation is a generator count d together with a relation subspace
//! Omega of F_p^{d*d} (coordinates indexed by tensor pairs (i,j) in row-major
//! order). Building a presentation unfolds the quotient of the tensor algebra
//! degree by degree up to a cap, producing per-degree dimensions, basis
//! labels, and dense multiplication tables — the computational object all
//! later modules work on.
//!
//! Two construction paths produce behaviorally identical tables:
//! - the generic tensor-space path, with degree-n coordinates of size d^n;
//! - a fast path for algebras whose relations contain the full
//!   graded/wedge-commutativity span, which works inside square-free monomial
//!   coordinates of size C(d,n).

use crate::gfp::{combinations, FpMatrix, GfpError, PrimeField, Subspace};
use crate::Limits;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Gfp(#[from] GfpError),
    #[error("workspace limit exceeded: {0}")]
    WorkspaceLimit(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("field mismatch: operands over F_{0} and F_{1}")]
    FieldMismatch(u32, u32),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Commutation law satisfied by a presentation's relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutativityClass {
    /// No commutation law is imposed.
    None,
    /// b*a = (-1)^{mn} a*b for homogeneous a, b of degrees m, n. For odd p
    /// this forces squares of odd-degree elements to vanish.
    GradedCommutative,
    /// p = 2 only: commutative with all squares zero.
    WedgeCommutative,
}

impl CommutativityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CommutativityClass::None => "none",
            CommutativityClass::GradedCommutative => "graded",
            CommutativityClass::WedgeCommutative => "wedge",
        }
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, CommutativityClass::None)
    }
}

/// Index of the tensor pair (i, j) inside F_p^{d*d}, row-major.
pub fn pair_index(d: usize, i: usize, j: usize) -> usize {
    i * d + j
}

/// Spanning rows of the graded/wedge commutation relations inside V ⊗ V:
/// e_i⊗e_j + e_j⊗e_i for i < j, and every square e_i⊗e_i. For odd p the
/// squares already lie in the span of the symmetric sums; for p = 2 they are
/// the extra wedge relations.
fn commutation_rows(d: usize) -> Vec<Vec<u32>> {
    let dd = d * d;
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![0u32; dd];
            v[pair_index(d, i, j)] = 1;
            v[pair_index(d, j, i)] = 1;
            rows.push(v);
        }
    }
    for i in 0..d {
        let mut v = vec![0u32; dd];
        v[pair_index(d, i, i)] = 1;
        rows.push(v);
    }
    rows
}

/// A quadratic presentation: d generators over F_p and a relation subspace
/// Omega of the degree-2 tensor space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPresentation {
    field: PrimeField,
    generators: usize,
    omega: Subspace,
    class: CommutativityClass,
}

impl QuadraticPresentation {
    /// Validates the class invariants: wedge requires p = 2, and a declared
    /// commutation class must actually be contained in Omega.
    pub fn new(
        field: PrimeField,
        generators: usize,
        omega: Subspace,
        class: CommutativityClass,
    ) -> Result<Self, AlgebraError> {
        if omega.ambient_dim() != generators * generators {
            return Err(AlgebraError::InvalidPresentation(format!(
                "relation space lives in F^{}, expected F^{}",
                omega.ambient_dim(),
                generators * generators
            )));
        }
        let inferred = infer_class(field, generators, &omega);
        let ok = match class {
            CommutativityClass::None => true,
            CommutativityClass::GradedCommutative => inferred.is_commutative(),
            CommutativityClass::WedgeCommutative => {
                field.p() == 2 && inferred == CommutativityClass::WedgeCommutative
            }
        };
        if !ok {
            return Err(AlgebraError::InvalidPresentation(format!(
                "declared class {} is not supported by the relations (inferred {})",
                class.as_str(),
                inferred.as_str()
            )));
        }
        Ok(QuadraticPresentation {
            field,
            generators,
            omega,
            class,
        })
    }

    /// Infers the strongest commutation class consistent with Omega.
    pub fn with_inferred_class(
        field: PrimeField,
        generators: usize,
        omega: Subspace,
    ) -> Result<Self, AlgebraError> {
        let class = infer_class(field, generators, &omega);
        Self::new(field, generators, omega, class)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn omega(&self) -> &Subspace {
        &self.omega
    }

    pub fn class(&self) -> CommutativityClass {
        self.class
    }

    /// Tensor algebra: no relations.
    pub fn tensor(field: PrimeField, d: usize) -> Self {
        let omega = Subspace::zero(field, d * d);
        QuadraticPresentation {
            field,
            generators: d,
            omega,
            class: CommutativityClass::None,
        }
    }

    /// Trivial quadratic algebra: Omega is all of V ⊗ V.
    pub fn trivial(field: PrimeField, d: usize) -> Self {
        let omega = Subspace::full(field, d * d);
        Self::with_inferred_class(field, d, omega).expect("full relation space is always valid")
    }

    /// Symmetric algebra: Omega spanned by the commutators u⊗v - v⊗u.
    pub fn symmetric(field: PrimeField, d: usize) -> Self {
        let dd = d * d;
        let mut rows = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let mut v = vec![0u32; dd];
                v[pair_index(d, i, j)] = 1;
                v[pair_index(d, j, i)] = field.neg(1);
                rows.push(v);
            }
        }
        let omega = Subspace::from_spanning(field, dd, &rows);
        Self::with_inferred_class(field, d, omega).expect("symmetric relations are valid")
    }

    /// Exterior algebra: symmetric sums plus (for p = 2) all squares.
    pub fn exterior(field: PrimeField, d: usize) -> Self {
        let omega = Subspace::from_spanning(field, d * d, &commutation_rows(d));
        Self::with_inferred_class(field, d, omega).expect("exterior relations are valid")
    }

    /// The (1, d, 1, 0)-dimensional quotient of the exterior algebra on an
    /// even number of generators: all wedge monomials vanish except the
    /// hyperbolic pairs, which are identified with each other.
    pub fn demushkin(field: PrimeField, d: usize) -> Result<Self, AlgebraError> {
        if d % 2 != 0 {
            return Err(AlgebraError::InvalidPresentation(format!(
                "a Demushkin-type presentation needs an even generator count, got {d}"
            )));
        }
        let dd = d * d;
        let mut rows = commutation_rows(d);
        let hyperbolic: BTreeSet<(usize, usize)> = (0..d / 2).map(|k| (2 * k, 2 * k + 1)).collect();
        // v_1 ^ v_2  -  v_i ^ v_{i+1} for the remaining hyperbolic pairs.
        for &(i, j) in hyperbolic.iter().skip(1) {
            let mut v = vec![0u32; dd];
            v[pair_index(d, 0, 1)] = 1;
            v[pair_index(d, i, j)] = field.neg(1);
            rows.push(v);
        }
        // Every non-hyperbolic wedge monomial vanishes.
        for i in 0..d {
            for j in i + 1..d {
                if !hyperbolic.contains(&(i, j)) {
                    let mut v = vec![0u32; dd];
                    v[pair_index(d, i, j)] = 1;
                    rows.push(v);
                }
            }
        }
        let omega = Subspace::from_spanning(field, dd, &rows);
        Self::with_inferred_class(field, d, omega)
    }

    /// The exterior Stanley-Reisner algebra of a graph: exterior relations
    /// plus the vanishing of every non-edge product. Its degree-n dimension
    /// is the number of n-cliques of the graph.
    pub fn stanley_reisner(graph: &Graph, field: PrimeField) -> Self {
        let d = graph.vertex_count();
        let dd = d * d;
        let mut rows = commutation_rows(d);
        for i in 0..d {
            for j in i + 1..d {
                if !graph.has_edge(i, j) {
                    let mut v = vec![0u32; dd];
                    v[pair_index(d, i, j)] = 1;
                    rows.push(v);
                }
            }
        }
        let omega = Subspace::from_spanning(field, dd, &rows);
        Self::with_inferred_class(field, d, omega).expect("Stanley-Reisner relations are valid")
    }

    /// Direct product: generators are the disjoint union, relations are both
    /// factors' relations plus every cross product in both orders. The
    /// Hilbert series satisfies h_{A x B} = h_A + h_B - 1 degreewise.
    pub fn direct_product(
        a: &QuadraticPresentation,
        b: &QuadraticPresentation,
    ) -> Result<Self, AlgebraError> {
        if a.field != b.field {
            return Err(AlgebraError::FieldMismatch(a.field.p(), b.field.p()));
        }
        let field = a.field;
        let (da, db) = (a.generators, b.generators);
        let d = da + db;
        let dd = d * d;
        let mut rows = Vec::new();
        for row in a.omega.basis_rows() {
            let mut v = vec![0u32; dd];
            for i in 0..da {
                for j in 0..da {
                    v[pair_index(d, i, j)] = row[pair_index(da, i, j)];
                }
            }
            rows.push(v);
        }
        for row in b.omega.basis_rows() {
            let mut v = vec![0u32; dd];
            for i in 0..db {
                for j in 0..db {
                    v[pair_index(d, da + i, da + j)] = row[pair_index(db, i, j)];
                }
            }
            rows.push(v);
        }
        for i in 0..da {
            for j in 0..db {
                let mut v = vec![0u32; dd];
                v[pair_index(d, i, da + j)] = 1;
                rows.push(v);
                let mut w = vec![0u32; dd];
                w[pair_index(d, da + j, i)] = 1;
                rows.push(w);
            }
        }
        let omega = Subspace::from_spanning(field, dd, &rows);
        Self::with_inferred_class(field, d, omega)
    }

    /// Quadratic dual: the presentation on the dual space with relation space
    /// Omega-perp, the annihilator under the pairing
    /// <e_i* ⊗ e_j*, e_k ⊗ e_l> = delta_ik delta_jl. Always satisfies
    /// dim Omega + dim Omega-perp = d^2, and the double dual is the identity.
    pub fn quadratic_dual(&self) -> QuadraticPresentation {
        let perp = self.omega.perp();
        Self::with_inferred_class(self.field, self.generators, perp)
            .expect("annihilator relations are valid")
    }

    /// Same presentation with generators renamed by `perm` (new index
    /// `perm[i]` for old index i). Used to test basis-permutation invariance.
    pub fn permute_generators(&self, perm: &[usize]) -> QuadraticPresentation {
        let d = self.generators;
        assert_eq!(perm.len(), d);
        let rows: Vec<Vec<u32>> = self
            .omega
            .basis_rows()
            .into_iter()
            .map(|row| {
                let mut v = vec![0u32; d * d];
                for i in 0..d {
                    for j in 0..d {
                        v[pair_index(d, perm[i], perm[j])] = row[pair_index(d, i, j)];
                    }
                }
                v
            })
            .collect();
        let omega = Subspace::from_spanning(self.field, d * d, &rows);
        QuadraticPresentation {
            field: self.field,
            generators: d,
            omega,
            class: self.class,
        }
    }
}

fn infer_class(field: PrimeField, d: usize, omega: &Subspace) -> CommutativityClass {
    let dd = d * d;
    let mut pairs_ok = true;
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![0u32; dd];
            v[pair_index(d, i, j)] = 1;
            v[pair_index(d, j, i)] = 1;
            if !omega.contains(&v) {
                pairs_ok = false;
            }
        }
    }
    let mut squares_ok = true;
    for i in 0..d {
        let mut v = vec![0u32; dd];
        v[pair_index(d, i, i)] = 1;
        if !omega.contains(&v) {
            squares_ok = false;
        }
    }
    if field.p() == 2 {
        if pairs_ok && squares_ok {
            CommutativityClass::WedgeCommutative
        } else if pairs_ok {
            CommutativityClass::GradedCommutative
        } else {
            CommutativityClass::None
        }
    } else if pairs_ok && squares_ok {
        CommutativityClass::GradedCommutative
    } else {
        CommutativityClass::None
    }
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// A finite loopless combinatorial graph on vertices 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        Graph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), AlgebraError> {
        if a >= self.vertices || b >= self.vertices {
            return Err(AlgebraError::InvalidGraph(format!(
                "vertex index out of range: edge ({}, {}) on {} vertices",
                a + 1,
                b + 1,
                self.vertices
            )));
        }
        if a == b {
            return Err(AlgebraError::InvalidGraph(format!(
                "loop at vertex {}",
                a + 1
            )));
        }
        let e = (a.min(b), a.max(b));
        if !self.edges.insert(e) {
            return Err(AlgebraError::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                e.0 + 1,
                e.1 + 1
            )));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The path graph on n vertices: edges 1-2, 2-3, ..., (n-1)-n.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n.saturating_sub(1) {
            g.add_edge(i, i + 1).unwrap();
        }
        g
    }

    /// The complete graph on n vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }
}

// ---------------------------------------------------------------------------
// Graded algebra tables
// ---------------------------------------------------------------------------

/// How a table was constructed. The two paths are behaviorally identical on
/// their common domain; `Exterior` is only used when the relations contain
/// the full commutation span, where it shrinks degree-n coordinates from d^n
/// to C(d, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionPath {
    Tensor,
    Exterior,
}

/// Structure constants of one bilinear map A_m x A_n -> A_{m+n}; the vector
/// at `i * dims[n] + j` is the product of the i-th and j-th basis elements.
type MultTable = Vec<Vec<u32>>;

/// A graded algebra computed degreewise up to a cap: per-degree dimensions,
/// human-readable basis labels, and all multiplication tables with total
/// degree at most the cap.
#[derive(Debug, Clone)]
pub struct GradedAlgebraTable {
    field: PrimeField,
    cap: usize,
    dims: Vec<usize>,
    basis_labels: Vec<Vec<String>>,
    mult: HashMap<(usize, usize), MultTable>,
    presentation: QuadraticPresentation,
    path: ConstructionPath,
}

impl GradedAlgebraTable {
    /// Builds the algebra of a presentation up to the given degree cap,
    /// choosing the square-free coordinate path automatically when the
    /// relations contain the full commutation span.
    pub fn build(
        pres: &QuadraticPresentation,
        cap: usize,
        limits: &Limits,
    ) -> Result<Self, AlgebraError> {
        let commutation =
            Subspace::from_spanning(pres.field, pres.generators * pres.generators, &commutation_rows(pres.generators));
        if pres.class.is_commutative() && pres.omega.contains_subspace(&commutation) {
            Self::build_with_path(pres, cap, limits, ConstructionPath::Exterior)
        } else {
            Self::build_with_path(pres, cap, limits, ConstructionPath::Tensor)
        }
    }

    pub fn build_with_path(
        pres: &QuadraticPresentation,
        cap: usize,
        limits: &Limits,
        path: ConstructionPath,
    ) -> Result<Self, AlgebraError> {
        match path {
            ConstructionPath::Tensor => build_tensor(pres, cap, limits),
            ConstructionPath::Exterior => build_exterior(pres, cap, limits),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The per-degree dimensions d_0..d_cap.
    pub fn hilbert_series(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn basis_labels(&self) -> &[Vec<String>] {
        &self.basis_labels
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }

    pub fn path(&self) -> ConstructionPath {
        self.path
    }

    pub fn class(&self) -> CommutativityClass {
        self.presentation.class
    }

    /// Product of the i-th basis element of A_m with the j-th of A_n.
    pub fn basis_product(&self, m: usize, n: usize, i: usize, j: usize) -> &[u32] {
        let t = self
            .mult
            .get(&(m, n))
            .unwrap_or_else(|| panic!("no multiplication table for degrees ({m},{n})"));
        &t[i * self.dims[n] + j]
    }

    /// Bilinear product of coordinate vectors x in A_m, y in A_n.
    pub fn multiply(&self, m: usize, n: usize, x: &[u32], y: &[u32]) -> Vec<u32> {
        assert!(m + n <= self.cap, "product degree {} exceeds cap {}", m + n, self.cap);
        let f = self.field;
        if m == 0 {
            let mut out = y.to_vec();
            for v in &mut out {
                *v = f.mul(*v, x[0]);
            }
            return out;
        }
        if n == 0 {
            let mut out = x.to_vec();
            for v in &mut out {
                *v = f.mul(*v, y[0]);
            }
            return out;
        }
        let mut out = vec![0u32; self.dims[m + n]];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                f.add_scaled(&mut out, self.basis_product(m, n, i, j), f.mul(xi, yj));
            }
        }
        out
    }

    /// Matrix of right multiplication by b in A_1, as a map A_n -> A_{n+1}.
    pub fn right_mult_matrix(&self, n: usize, b: &[u32]) -> FpMatrix {
        assert!(n + 1 <= self.cap);
        let rows: Vec<Vec<u32>> = (0..self.dims[n])
            .map(|i| {
                let mut x = vec![0u32; self.dims[n]];
                if self.dims[n] > 0 {
                    x[i] = 1;
                }
                self.multiply(n, 1, &x, b)
            })
            .collect();
        FpMatrix::from_rows(self.field, self.dims[n + 1], &rows).expect("row lengths match")
    }

    /// Exhaustively checks associativity on all stored basis triples.
    pub fn verify_associativity(&self) -> Result<(), String> {
        for m in 1..=self.cap {
            for n in 1..=self.cap.saturating_sub(m) {
                for k in 1..=self.cap {
                    if m + n + k > self.cap {
                        continue;
                    }
                    for i in 0..self.dims[m] {
                        for j in 0..self.dims[n] {
                            let xy = self.basis_product(m, n, i, j).to_vec();
                            for l in 0..self.dims[k] {
                                let mut z = vec![0u32; self.dims[k]];
                                z[l] = 1;
                                let left = self.multiply(m + n, k, &xy, &z);
                                let mut y = vec![0u32; self.dims[n]];
                                y[j] = 1;
                                let yz = self.multiply(n, k, &y, &z);
                                let mut x = vec![0u32; self.dims[m]];
                                x[i] = 1;
                                let right = self.multiply(m, n + k, &x, &yz);
                                if left != right {
                                    return Err(format!(
                                        "associativity fails on basis triple ({m},{i}) ({n},{j}) ({k},{l})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks the sign-commutation law on all stored basis pairs, and the
    /// vanishing of squares required by the class.
    pub fn verify_commutation(&self) -> Result<(), String> {
        if !self.class().is_commutative() {
            return Ok(());
        }
        let f = self.field;
        for m in 1..self.cap {
            for n in 1..=self.cap - m {
                let sign_flip = self.field.p() != 2 && m % 2 == 1 && n % 2 == 1;
                for i in 0..self.dims[m] {
                    for j in 0..self.dims[n] {
                        let xy = self.basis_product(m, n, i, j);
                        let yx = self.basis_product(n, m, j, i);
                        let expect: Vec<u32> = if sign_flip {
                            yx.iter().map(|&v| f.neg(v)).collect()
                        } else {
                            yx.to_vec()
                        };
                        if xy != expect.as_slice() {
                            return Err(format!(
                                "commutation fails on basis pair ({m},{i}) ({n},{j})"
                            ));
                        }
                    }
                }
            }
        }
        // Squares: odd degrees for odd p; every degree under wedge commutativity.
        for m in 1..=self.cap / 2 {
            let must_vanish = (self.field.p() != 2 && m % 2 == 1)
                || self.class() == CommutativityClass::WedgeCommutative;
            if !must_vanish || 2 * m > self.cap {
                continue;
            }
            for i in 0..self.dims[m] {
                if self.basis_product(m, m, i, i).iter().any(|&v| v != 0) {
                    return Err(format!("square of basis element ({m},{i}) is nonzero"));
                }
            }
        }
        Ok(())
    }
}

fn workspace_check(d: usize, cap: usize, limits: &Limits) -> Result<(), AlgebraError> {
    let mut acc: u64 = 1;
    for _ in 0..cap {
        acc = acc.saturating_mul(d as u64);
        if acc > limits.workspace {
            return Err(AlgebraError::WorkspaceLimit(format!(
                "tensor space dimension {d}^{cap} exceeds the workspace budget {}",
                limits.workspace
            )));
        }
    }
    Ok(())
}

/// Tensor-coordinate construction: degree-n relations are
/// R_n = R_{n-1} ⊗ V + V^{⊗(n-2)} ⊗ Omega, the degree-n basis is the set of
/// non-pivot monomial words of RREF(R_n), and multiplication is
/// concatenate-then-reduce.
fn build_tensor(
    pres: &QuadraticPresentation,
    cap: usize,
    limits: &Limits,
) -> Result<GradedAlgebraTable, AlgebraError> {
    let d = pres.generators;
    let field = pres.field;
    workspace_check(d, cap, limits)?;

    let word_count = |n: usize| -> usize { d.pow(n as u32) };
    let word_of = |mut idx: usize, n: usize| -> Vec<usize> {
        let mut w = vec![0usize; n];
        for slot in w.iter_mut().rev() {
            *slot = idx % d;
            idx /= d;
        }
        w
    };

    // Relation subspaces per degree.
    let mut rel: Vec<Subspace> = Vec::with_capacity(cap + 1);
    rel.push(Subspace::zero(field, 1));
    if cap >= 1 {
        rel.push(Subspace::zero(field, d));
    }
    for n in 2..=cap {
        let ambient = word_count(n);
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for r in rel[n - 1].basis_rows() {
            for j in 0..d {
                let mut v = vec![0u32; ambient];
                for (idx, &c) in r.iter().enumerate() {
                    if c != 0 {
                        v[idx * d + j] = c;
                    }
                }
                rows.push(v);
            }
        }
        let prefix_count = word_count(n - 2);
        for u in 0..prefix_count {
            for w in pres.omega.basis_rows() {
                let mut v = vec![0u32; ambient];
                for (pair, &c) in w.iter().enumerate() {
                    if c != 0 {
                        v[u * d * d + pair] = c;
                    }
                }
                rows.push(v);
            }
        }
        rel.push(Subspace::from_spanning(field, ambient, &rows));
    }

    let mut dims = vec![1usize];
    let mut basis_labels = vec![vec!["1".to_string()]];
    let mut basis_words: Vec<Vec<usize>> = vec![vec![0]]; // ambient index per basis element
    for n in 1..=cap {
        let non_pivot = rel[n].non_pivot_columns();
        dims.push(non_pivot.len());
        basis_labels.push(
            non_pivot
                .iter()
                .map(|&idx| {
                    word_of(idx, n)
                        .iter()
                        .map(|g| format!("a{}", g + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .collect(),
        );
        basis_words.push(non_pivot);
    }

    let mut mult = HashMap::new();
    for m in 1..=cap {
        for n in 1..=cap {
            if m + n > cap {
                continue;
            }
            let mut table: MultTable = Vec::with_capacity(dims[m] * dims[n]);
            let target = &rel[m + n];
            for &wi in &basis_words[m] {
                for &wj in &basis_words[n] {
                    let concat = wi * word_count(n) + wj;
                    let mut v = vec![0u32; word_count(m + n)];
                    v[concat] = 1;
                    table.push(target.quotient_coords(&v));
                }
            }
            mult.insert((m, n), table);
        }
    }

    Ok(GradedAlgebraTable {
        field,
        cap,
        dims,
        basis_labels,
        mult,
        presentation: pres.clone(),
        path: ConstructionPath::Tensor,
    })
}

/// Square-free coordinate construction for algebras that are quotients of the
/// exterior algebra (wedge quotients at p = 2). Degree-n coordinates are the
/// size-n subsets of generators in lexicographic order; the relation space in
/// degree n is V ∧ R_{n-1} seeded with the image of Omega in degree 2.
fn build_exterior(
    pres: &QuadraticPresentation,
    cap: usize,
    limits: &Limits,
) -> Result<GradedAlgebraTable, AlgebraError> {
    let d = pres.generators;
    let field = pres.field;
    if !pres.class.is_commutative() {
        return Err(AlgebraError::InvalidPresentation(
            "square-free construction requires a commutative class".into(),
        ));
    }
    // C(d, n) <= 2^d; the guard only matters for absurdly large d.
    if d > 30 {
        return Err(AlgebraError::WorkspaceLimit(format!(
            "square-free construction limited to 30 generators, got {d} (budget {})",
            limits.workspace
        )));
    }

    // Subsets per degree, as sorted index tuples in lex order, plus a rank map
    // keyed by bitmask.
    let tuples: Vec<Vec<Vec<usize>>> = (0..=cap).map(|n| combinations(d, n)).collect();
    let rank: Vec<HashMap<u64, usize>> = tuples
        .iter()
        .map(|ts| {
            ts.iter()
                .enumerate()
                .map(|(i, t)| (mask_of(t), i))
                .collect()
        })
        .collect();

    // Image of Omega in wedge coordinates: e_ij (i<j) picks up
    // omega[i,j] - omega[j,i]; squares map to zero.
    let pair_tuples = combinations(d, 2);
    let w_rows: Vec<Vec<u32>> = pres
        .omega
        .basis_rows()
        .into_iter()
        .map(|row| {
            pair_tuples
                .iter()
                .map(|t| {
                    let (i, j) = (t[0], t[1]);
                    field.sub(row[pair_index(d, i, j)], row[pair_index(d, j, i)])
                })
                .collect()
        })
        .collect();

    let mut rel: Vec<Subspace> = Vec::with_capacity(cap + 1);
    rel.push(Subspace::zero(field, 1));
    if cap >= 1 {
        rel.push(Subspace::zero(field, d));
    }
    if cap >= 2 {
        rel.push(Subspace::from_spanning(field, tuples[2].len(), &w_rows));
    }
    for n in 3..=cap {
        let ambient = tuples[n].len();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for r in rel[n - 1].basis_rows() {
            for k in 0..d {
                let mut v = vec![0u32; ambient];
                let mut nonzero = false;
                for (idx, &c) in r.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let t = mask_of(&tuples[n - 1][idx]);
                    if t & (1 << k) != 0 {
                        continue;
                    }
                    let below = (t & ((1u64 << k) - 1)).count_ones();
                    let sign = if below % 2 == 0 { c } else { field.neg(c) };
                    let target = rank[n][&(t | (1 << k))];
                    v[target] = field.add(v[target], sign);
                    nonzero = true;
                }
                if nonzero {
                    rows.push(v);
                }
            }
        }
        rel.push(Subspace::from_spanning(field, ambient, &rows));
    }

    let mut dims = vec![1usize];
    let mut basis_labels = vec![vec!["1".to_string()]];
    let mut basis_masks: Vec<Vec<u64>> = vec![vec![0]];
    let mut basis_ambient: Vec<Vec<usize>> = vec![vec![0]];
    for n in 1..=cap {
        let non_pivot = rel[n].non_pivot_columns();
        dims.push(non_pivot.len());
        basis_labels.push(
            non_pivot
                .iter()
                .map(|&idx| {
                    tuples[n][idx]
                        .iter()
                        .map(|g| format!("a{}", g + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .collect(),
        );
        basis_masks.push(non_pivot.iter().map(|&idx| mask_of(&tuples[n][idx])).collect());
        basis_ambient.push(non_pivot);
    }

    let mut mult = HashMap::new();
    for m in 1..=cap {
        for n in 1..=cap {
            if m + n > cap {
                continue;
            }
            let target = &rel[m + n];
            let zero = vec![0u32; dims[m + n]];
            let mut table: MultTable = Vec::with_capacity(dims[m] * dims[n]);
            for &s in &basis_masks[m] {
                for &t in &basis_masks[n] {
                    if s & t != 0 {
                        table.push(zero.clone());
                        continue;
                    }
                    let inv = merge_inversions(s, t);
                    let idx = rank[m + n][&(s | t)];
                    let mut v = vec![0u32; tuples[m + n].len()];
                    v[idx] = if inv % 2 == 0 { 1 } else { field.neg(1) };
                    table.push(target.quotient_coords(&v));
                }
            }
            mult.insert((m, n), table);
        }
    }

    Ok(GradedAlgebraTable {
        field,
        cap,
        dims,
        basis_labels,
        mult,
        presentation: pres.clone(),
        path: ConstructionPath::Exterior,
    })
}

fn mask_of(tuple: &[usize]) -> u64 {
    tuple.iter().fold(0u64, |m, &i| m | (1 << i))
}

/// Number of transpositions needed to sort the concatenation of two disjoint
/// sorted tuples: pairs (i in s, j in t) with j < i.
fn merge_inversions(s: u64, t: u64) -> u32 {
    let mut inv = 0;
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inv += (t & ((1u64 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    inv
}

// ---------------------------------------------------------------------------
// Algebra description files
// ---------------------------------------------------------------------------

/// Parses the declarative algebra description format:
///
/// ```text
/// # comment
/// p 2
/// generators 4
/// class auto            # auto | none | graded | wedge (optional)
/// relation a1*a2 + a2*a1
/// relation 2*a3*a4 - a1*a2
/// relation-vector 0 1 1 0
/// ```
///
/// A symbolic relation is a signed sum of terms `c*ai*aj` with an optional
/// integer coefficient; a relation-vector gives all d^2 coefficients in
/// row-major pair order.
pub fn parse_algebra_file(text: &str) -> Result<QuadraticPresentation, AlgebraError> {
    let mut p: Option<u32> = None;
    let mut d: Option<usize> = None;
    let mut class_spec = "auto".to_string();
    let mut relations: Vec<(usize, String, bool)> = Vec::new(); // line, payload, is_vector
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let (key, rest) = line.split_once(char::is_whitespace).ok_or(AlgebraError::Parse {
            line: lineno,
            msg: format!("expected 'key value', got '{line}'"),
        })?;
        let rest = rest.trim();
        match key {
            "p" => {
                p = Some(rest.parse().map_err(|_| AlgebraError::Parse {
                    line: lineno,
                    msg: format!("invalid prime '{rest}'"),
                })?)
            }
            "generators" => {
                d = Some(rest.parse().map_err(|_| AlgebraError::Parse {
                    line: lineno,
                    msg: format!("invalid generator count '{rest}'"),
                })?)
            }
            "class" => class_spec = rest.to_string(),
            "relation" => relations.push((lineno, rest.to_string(), false)),
            "relation-vector" => relations.push((lineno, rest.to_string(), true)),
            other => {
                return Err(AlgebraError::Parse {
                    line: lineno,
                    msg: format!("unknown key '{other}'"),
                })
            }
        }
    }
    let p = p.ok_or(AlgebraError::Parse {
        line: 0,
        msg: "missing 'p' line".into(),
    })?;
    let d = d.ok_or(AlgebraError::Parse {
        line: 0,
        msg: "missing 'generators' line".into(),
    })?;
    let field = PrimeField::new(p)?;
    let mut rows = Vec::new();
    for (lineno, payload, is_vector) in relations {
        if is_vector {
            let coords: Result<Vec<i64>, _> = payload.split_whitespace().map(str::parse).collect();
            let coords = coords.map_err(|_| AlgebraError::Parse {
                line: lineno,
                msg: "relation-vector entries must be integers".into(),
            })?;
            if coords.len() != d * d {
                return Err(AlgebraError::Parse {
                    line: lineno,
                    msg: format!("relation-vector needs {} entries, got {}", d * d, coords.len()),
                });
            }
            rows.push(coords.into_iter().map(|x| field.reduce_i64(x)).collect());
        } else {
            rows.push(parse_relation_expr(&payload, field, d, lineno)?);
        }
    }
    let omega = Subspace::from_spanning(field, d * d, &rows);
    match class_spec.as_str() {
        "auto" => QuadraticPresentation::with_inferred_class(field, d, omega),
        "none" => QuadraticPresentation::new(field, d, omega, CommutativityClass::None),
        "graded" => {
            QuadraticPresentation::new(field, d, omega, CommutativityClass::GradedCommutative)
        }
        "wedge" => {
            QuadraticPresentation::new(field, d, omega, CommutativityClass::WedgeCommutative)
        }
        other => Err(AlgebraError::Parse {
            line: 0,
            msg: format!("unknown class '{other}' (expected auto|none|graded|wedge)"),
        }),
    }
}

/// Parses one symbolic relation: `[+|-] [c*] a<i> * a<j> ...` joined by + or -.
fn parse_relation_expr(
    expr: &str,
    field: PrimeField,
    d: usize,
    lineno: usize,
) -> Result<Vec<u32>, AlgebraError> {
    let err = |msg: String| AlgebraError::Parse { line: lineno, msg };
    let mut row = vec![0u32; d * d];
    // Normalize into signed terms.
    let cleaned = expr.replace('-', "+-");
    for term in cleaned.split('+') {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let (negative, term) = match term.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, term),
        };
        let parts: Vec<&str> = term.split('*').map(str::trim).collect();
        let (coeff_str, gens): (Option<&str>, &[&str]) = match parts.len() {
            2 => (None, &parts[..]),
            3 => (Some(parts[0]), &parts[1..]),
            _ => {
                return Err(err(format!(
                    "term '{term}' must look like 'ai*aj' or 'c*ai*aj'"
                )))
            }
        };
        let mut coeff = match coeff_str {
            Some(c) => {
                let v: i64 = c
                    .parse()
                    .map_err(|_| err(format!("invalid coefficient '{c}'")))?;
                field.reduce_i64(v)
            }
            None => 1,
        };
        if negative {
            coeff = field.neg(coeff);
        }
        let mut idx = [0usize; 2];
        for (slot, g) in idx.iter_mut().zip(gens) {
            let num = g
                .strip_prefix('a')
                .ok_or_else(|| err(format!("expected generator token 'a<k>', got '{g}'")))?;
            let k: usize = num
                .parse()
                .map_err(|_| err(format!("invalid generator index '{num}'")))?;
            if k == 0 || k > d {
                return Err(err(format!("generator a{k} out of range 1..={d}")));
            }
            *slot = k - 1;
        }
        let pos = pair_index(d, idx[0], idx[1]);
        row[pos] = field.add(row[pos], coeff);
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    fn dims_of(pres: &QuadraticPresentation, cap: usize) -> Vec<usize> {
        GradedAlgebraTable::build(pres, cap, &limits())
            .unwrap()
            .hilbert_series()
            .to_vec()
    }

    #[test]
    fn standard_presentations_have_expected_relation_dims() {
        // Frozen span dimensions.
        let ext = QuadraticPresentation::exterior(f(2), 2);
        assert_eq!(ext.omega().dim(), 3); // e11, e22, e12+e21
        assert_eq!(ext.class(), CommutativityClass::WedgeCommutative);

        let sym = QuadraticPresentation::symmetric(f(3), 2);
        assert_eq!(sym.omega().dim(), 1);
        assert_eq!(sym.class(), CommutativityClass::None);

        let ten = QuadraticPresentation::tensor(f(5), 3);
        assert_eq!(ten.omega().dim(), 0);

        // At p = 2 the symmetric algebra is commutative but keeps squares.
        let sym2 = QuadraticPresentation::symmetric(f(2), 2);
        assert_eq!(sym2.class(), CommutativityClass::GradedCommutative);
    }

    #[test]
    fn build_examples() {
        let trivial = QuadraticPresentation::trivial(f(3), 3);
        assert_eq!(dims_of(&trivial, 3), vec![1, 3, 0, 0]);

        let ext = QuadraticPresentation::exterior(f(3), 4);
        assert_eq!(dims_of(&ext, 4), vec![1, 4, 6, 4, 1]);

        let sym = QuadraticPresentation::symmetric(f(3), 2);
        assert_eq!(dims_of(&sym, 3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn demushkin_examples() {
        let d4 = QuadraticPresentation::demushkin(f(3), 4).unwrap();
        assert_eq!(dims_of(&d4, 3), vec![1, 4, 1, 0]);

        let d2 = QuadraticPresentation::demushkin(f(2), 2).unwrap();
        let ext2 = QuadraticPresentation::exterior(f(2), 2);
        assert_eq!(d2.omega(), ext2.omega());
        assert_eq!(dims_of(&d2, 3), vec![1, 2, 1, 0]);

        assert!(QuadraticPresentation::demushkin(f(3), 3).is_err());
    }

    #[test]
    fn stanley_reisner_examples() {
        let p4 = Graph::path(4);
        let sr = QuadraticPresentation::stanley_reisner(&p4, f(2));
        assert_eq!(dims_of(&sr, 3), vec![1, 4, 3, 0]);

        let k3 = Graph::complete(3);
        let sr = QuadraticPresentation::stanley_reisner(&k3, f(2));
        assert_eq!(dims_of(&sr, 3), vec![1, 3, 3, 1]);
        let ext = QuadraticPresentation::exterior(f(2), 3);
        assert_eq!(sr.omega(), ext.omega());

        let empty = Graph::new(3);
        let sr = QuadraticPresentation::stanley_reisner(&empty, f(2));
        assert_eq!(dims_of(&sr, 3), vec![1, 3, 0, 0]);
    }

    /// Oracle: count n-cliques directly by subset enumeration.
    fn clique_count(g: &Graph, n: usize) -> usize {
        combinations(g.vertex_count(), n)
            .into_iter()
            .filter(|t| {
                t.iter()
                    .enumerate()
                    .all(|(a, &va)| t[a + 1..].iter().all(|&vb| g.has_edge(va, vb)))
            })
            .count()
    }

    #[test]
    fn stanley_reisner_dims_are_clique_counts() {
        // All graphs on up to 4 vertices, a few on 5.
        for n in 1..=4usize {
            let pairs = combinations(n, 2);
            for mask in 0..(1u32 << pairs.len()) {
                let mut g = Graph::new(n);
                for (b, pair) in pairs.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        g.add_edge(pair[0], pair[1]).unwrap();
                    }
                }
                for &p in &[2u32, 3] {
                    let sr = QuadraticPresentation::stanley_reisner(&g, f(p));
                    let table = GradedAlgebraTable::build(&sr, n + 1, &limits()).unwrap();
                    for deg in 0..=n + 1 {
                        assert_eq!(
                            table.dim(deg),
                            clique_count(&g, deg),
                            "graph mask {mask} on {n} vertices, p={p}, degree {deg}"
                        );
                    }
                }
            }
        }
        let k5 = Graph::complete(5);
        let sr = QuadraticPresentation::stanley_reisner(&k5, f(2));
        let table = GradedAlgebraTable::build(&sr, 6, &limits()).unwrap();
        assert_eq!(table.hilbert_series(), &[1, 5, 10, 10, 5, 1, 0]);
    }

    #[test]
    fn direct_product_examples() {
        let ext2 = QuadraticPresentation::exterior(f(2), 2);
        let tr1 = QuadraticPresentation::trivial(f(2), 1);
        let prod = QuadraticPresentation::direct_product(&ext2, &tr1).unwrap();
        assert_eq!(dims_of(&prod, 2), vec![1, 3, 1]);

        let prod = QuadraticPresentation::direct_product(&tr1, &tr1).unwrap();
        assert_eq!(dims_of(&prod, 2), vec![1, 2, 0]);

        let unit = QuadraticPresentation::trivial(f(2), 0);
        let prod = QuadraticPresentation::direct_product(&ext2, &unit).unwrap();
        assert_eq!(dims_of(&prod, 3), dims_of(&ext2, 3));

        let over_f3 = QuadraticPresentation::trivial(f(3), 1);
        assert!(QuadraticPresentation::direct_product(&ext2, &over_f3).is_err());
    }

    #[test]
    fn direct_product_hilbert_additivity() {
        let cases = [
            (QuadraticPresentation::exterior(f(3), 2), QuadraticPresentation::trivial(f(3), 2)),
            (
                QuadraticPresentation::demushkin(f(5), 2).unwrap(),
                QuadraticPresentation::exterior(f(5), 3),
            ),
            (QuadraticPresentation::trivial(f(2), 3), QuadraticPresentation::exterior(f(2), 2)),
        ];
        for (a, b) in cases {
            let prod = QuadraticPresentation::direct_product(&a, &b).unwrap();
            let (ha, hb, hp) = (dims_of(&a, 4), dims_of(&b, 4), dims_of(&prod, 4));
            for n in 0..=4 {
                let expect = ha[n] + hb[n] - usize::from(n == 0);
                assert_eq!(hp[n], expect, "degree {n}");
            }
        }
    }

    #[test]
    fn quadratic_dual_examples() {
        let trivial = QuadraticPresentation::trivial(f(2), 3);
        let dual = trivial.quadratic_dual();
        assert_eq!(dual.omega().dim(), 0);
        assert_eq!(dims_of(&dual, 3), vec![1, 3, 9, 27]);

        let ext = QuadraticPresentation::exterior(f(3), 2);
        let dual = ext.quadratic_dual();
        assert_eq!(dual.omega().dim(), 1);
        assert_eq!(dims_of(&dual, 3), vec![1, 2, 3, 4]);
        assert_eq!(dual.omega(), QuadraticPresentation::symmetric(f(3), 2).omega());
    }

    #[test]
    fn dual_is_an_involution_and_dims_pair_up() {
        let cases = [
            QuadraticPresentation::exterior(f(2), 3),
            QuadraticPresentation::demushkin(f(3), 4).unwrap(),
            QuadraticPresentation::symmetric(f(5), 2),
            QuadraticPresentation::stanley_reisner(&Graph::path(4), f(2)),
            QuadraticPresentation::tensor(f(2), 2),
        ];
        for pres in cases {
            let d = pres.generators();
            let dual = pres.quadratic_dual();
            assert_eq!(pres.omega().dim() + dual.omega().dim(), d * d);
            assert_eq!(dual.quadratic_dual().omega(), pres.omega());
        }
    }

    #[test]
    fn construction_paths_agree_on_small_wedge_quotients() {
        let cases = [
            QuadraticPresentation::exterior(f(2), 3),
            QuadraticPresentation::exterior(f(3), 3),
            QuadraticPresentation::demushkin(f(5), 2).unwrap(),
            QuadraticPresentation::trivial(f(3), 3),
            QuadraticPresentation::stanley_reisner(&Graph::path(3), f(2)),
        ];
        for pres in cases {
            let fast =
                GradedAlgebraTable::build_with_path(&pres, 4, &limits(), ConstructionPath::Exterior)
                    .unwrap();
            let slow =
                GradedAlgebraTable::build_with_path(&pres, 4, &limits(), ConstructionPath::Tensor)
                    .unwrap();
            assert_eq!(fast.hilbert_series(), slow.hilbert_series());
            fast.verify_associativity().unwrap();
            slow.verify_associativity().unwrap();
            fast.verify_commutation().unwrap();
            slow.verify_commutation().unwrap();
        }
    }

    #[test]
    fn hilbert_series_is_permutation_invariant() {
        let pres = QuadraticPresentation::stanley_reisner(&Graph::path(4), f(2));
        let permuted = pres.permute_generators(&[2, 0, 3, 1]);
        assert_eq!(dims_of(&pres, 4), dims_of(&permuted, 4));

        let dem = QuadraticPresentation::demushkin(f(3), 4).unwrap();
        let permuted = dem.permute_generators(&[3, 1, 0, 2]);
        assert_eq!(dims_of(&dem, 4), dims_of(&permuted, 4));
    }

    #[test]
    fn tensor_path_tables_satisfy_laws() {
        for pres in [
            QuadraticPresentation::tensor(f(2), 2),
            QuadraticPresentation::symmetric(f(3), 2),
            QuadraticPresentation::symmetric(f(2), 2),
        ] {
            let table = GradedAlgebraTable::build(&pres, 4, &limits()).unwrap();
            table.verify_associativity().unwrap();
            table.verify_commutation().unwrap();
        }
    }

    #[test]
    fn workspace_limit_is_enforced() {
        let pres = QuadraticPresentation::tensor(f(2), 12);
        assert!(matches!(
            GradedAlgebraTable::build(&pres, 5, &limits()),
            Err(AlgebraError::WorkspaceLimit(_))
        ));
    }

    #[test]
    fn algebra_file_round_trip() {
        let text = "\
# exterior algebra on two generators over F_2
p 2
generators 2
relation a1*a1
relation a2*a2
relation a1*a2 + a2*a1
";
        let pres = parse_algebra_file(text).unwrap();
        assert_eq!(pres, QuadraticPresentation::exterior(f(2), 2));

        let text = "p 5\ngenerators 2\nrelation a1*a2 - a2*a1\n";
        let pres = parse_algebra_file(text).unwrap();
        assert_eq!(pres.omega(), QuadraticPresentation::symmetric(f(5), 2).omega());

        let text = "p 3\ngenerators 2\nrelation-vector 0 1 2 0\n";
        let pres = parse_algebra_file(text).unwrap();
        assert_eq!(pres.omega().dim(), 1);

        assert!(parse_algebra_file("generators 2\n").is_err());
        assert!(parse_algebra_file("p 4\ngenerators 2\n").is_err());
        assert!(parse_algebra_file("p 3\ngenerators 2\nrelation a3*a1\n").is_err());
        assert!(parse_algebra_file("p 3\ngenerators 2\nrelation a1+a2\n").is_err());
    }
}
