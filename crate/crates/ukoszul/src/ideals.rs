//! Graded ideals generated in degree 1, colon ideals, and the exhaustive
//! universal-Koszulity search.
//!
//! An algebra is universally Koszul when for every ideal I generated by a
//! subspace of A_1 and every degree-1 element b outside I_1, the colon ideal
//! I:(b) is again generated in degree 1. The search below iterates I over the
//! canonical subspace enumeration of A_1 and b over projective
//! representatives of A_1 minus I_1; the first failing pair in that order is
//! the reported witness, independent of how many workers scan the lattice.

use crate::gfp::{enumerate_projective_points, enumerate_subspaces, FpMatrix, GfpError, Subspace};
use crate::qalg::{AlgebraError, GradedAlgebraTable, QuadraticPresentation};
use crate::Limits;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error(transparent)]
    Gfp(#[from] GfpError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the colon criterion a*b in I needs a graded- or wedge-commutative algebra")]
    CommutativityRequired,
    #[error("ideal part in degree {degree} has ambient {got}, expected {expected}")]
    AmbientMismatch {
        degree: usize,
        got: usize,
        expected: usize,
    },
    #[error("not an ideal: A_{m} * parts[{n}] escapes the part of degree {} ", .m + .n)]
    NotClosed { m: usize, n: usize },
}

/// A graded ideal of a capped algebra table, stored as one subspace of A_n
/// per degree. Degree 0 is always zero (proper ideals only; the augmentation
/// ideal A_+ is the largest representable value).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    parts: Vec<Subspace>,
}

impl GradedIdeal {
    /// Wraps per-degree subspaces (index 0 = degree 0) after checking the
    /// ambient dimensions and two-sided closure under multiplication.
    pub fn new(alg: &GradedAlgebraTable, parts: Vec<Subspace>) -> Result<Self, IdealError> {
        let ideal = GradedIdeal { parts };
        ideal.validate(alg)?;
        Ok(ideal)
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn part(&self, n: usize) -> &Subspace {
        &self.parts[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    pub fn contains(&self, other: &GradedIdeal) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(a, b)| a.contains_subspace(b))
    }

    pub fn validate(&self, alg: &GradedAlgebraTable) -> Result<(), IdealError> {
        let cap = alg.cap();
        if self.parts.len() != cap + 1 {
            return Err(IdealError::AmbientMismatch {
                degree: self.parts.len(),
                got: self.parts.len(),
                expected: cap + 1,
            });
        }
        for (n, part) in self.parts.iter().enumerate() {
            let expected = if n == 0 { 1 } else { alg.dim(n) };
            if part.ambient_dim() != expected {
                return Err(IdealError::AmbientMismatch {
                    degree: n,
                    got: part.ambient_dim(),
                    expected,
                });
            }
        }
        if self.parts[0].dim() != 0 {
            return Err(IdealError::NotClosed { m: 0, n: 0 });
        }
        for m in 1..=cap {
            for n in 1..=cap - m {
                for row in self.parts[n].basis_rows() {
                    for i in 0..alg.dim(m) {
                        let mut x = vec![0u32; alg.dim(m)];
                        x[i] = 1;
                        let left = alg.multiply(m, n, &x, &row);
                        let right = alg.multiply(n, m, &row, &x);
                        if !self.parts[m + n].contains(&left)
                            || !self.parts[m + n].contains(&right)
                        {
                            return Err(IdealError::NotClosed { m, n });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The ideal generated by a subspace of A_1, computed degree by degree:
/// parts[n] is spanned by all products of generators with parts[n-1] on
/// either side.
pub fn ideal_from_degree_one(
    alg: &GradedAlgebraTable,
    u: &Subspace,
) -> Result<GradedIdeal, IdealError> {
    if u.ambient_dim() != alg.dim(1) {
        return Err(IdealError::AmbientMismatch {
            degree: 1,
            got: u.ambient_dim(),
            expected: alg.dim(1),
        });
    }
    let field = alg.field();
    let cap = alg.cap();
    let mut parts = Vec::with_capacity(cap + 1);
    parts.push(Subspace::zero(field, 1));
    if cap >= 1 {
        parts.push(Subspace::from_matrix(u.basis()));
    }
    for n in 2..=cap {
        let prev: &Subspace = &parts[n - 1];
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for w in prev.basis_rows() {
            for k in 0..alg.dim(1) {
                let mut gen = vec![0u32; alg.dim(1)];
                gen[k] = 1;
                rows.push(alg.multiply(1, n - 1, &gen, &w));
                rows.push(alg.multiply(n - 1, 1, &w, &gen));
            }
        }
        parts.push(Subspace::from_spanning(field, alg.dim(n), &rows));
    }
    Ok(GradedIdeal { parts })
}

/// Membership in L(A): does the ideal equal the one generated by its own
/// degree-1 part, in every stored degree?
pub fn is_in_lattice(alg: &GradedAlgebraTable, ideal: &GradedIdeal) -> Result<bool, IdealError> {
    let regenerated = ideal_from_degree_one(alg, ideal.part(1))?;
    Ok(regenerated.parts() == ideal.parts())
}

/// The colon ideal I:(b) for b in A_1, computed degreewise as the kernel of
/// right-multiplication-by-b composed with the quotient by I.
///
/// Valid for graded- or wedge-commutative algebras, where a*(b) is contained
/// in I exactly when a*b is. The top degree is completed conservatively to
/// all of A_cap; this is exact whenever A_{cap+1} = 0, in particular whenever
/// dims[cap] = 0.
pub fn colon_ideal(
    alg: &GradedAlgebraTable,
    ideal: &GradedIdeal,
    b: &[u32],
) -> Result<GradedIdeal, IdealError> {
    if !alg.class().is_commutative() {
        return Err(IdealError::CommutativityRequired);
    }
    let field = alg.field();
    let cap = alg.cap();
    let mut parts = Vec::with_capacity(cap + 1);
    parts.push(Subspace::zero(field, 1));
    for n in 1..cap {
        let mult = alg.right_mult_matrix(n, b);
        let target = ideal.part(n + 1);
        // Rows of the composite map A_n -> A_{n+1}/I_{n+1}.
        let rows: Vec<Vec<u32>> = (0..alg.dim(n))
            .map(|i| target.quotient_coords(mult.row(i)))
            .collect();
        let quotient_dim = alg.dim(n + 1) - target.dim();
        let composite = FpMatrix::from_rows(field, quotient_dim, &rows)?;
        parts.push(composite.left_kernel());
    }
    if cap >= 1 {
        parts.push(Subspace::full(field, alg.dim(cap)));
    }
    Ok(GradedIdeal { parts })
}

/// Outcome of the universal-Koszulity search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UkVerdict {
    Holds,
    Fails(UkWitness),
}

/// The canonically first failing pair: the RREF basis of I_1 and the
/// normalized projective representative b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UkWitness {
    pub ideal_basis: Vec<Vec<u32>>,
    pub b: Vec<u32>,
    pub ideal_index: usize,
    pub b_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UkReport {
    pub verdict: UkVerdict,
    /// True when the table certifies the whole algebra (dims[cap] = 0), so
    /// the verdict is unconditional rather than "verified to degree cap".
    pub exact: bool,
    /// Number of degree-1-generated ideals in the lattice.
    pub ideals_total: usize,
    /// Number of (ideal, b) pairs in the search space.
    pub pairs_total: u64,
}

impl UkReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, UkVerdict::Holds)
    }
}

/// A row-echelon basis with unit pivots, kept fully reduced so that one
/// ascending elimination pass decides membership. Rows are stored flat; no
/// canonical ordering is maintained — the search only needs ranks and spans.
struct Echelon {
    width: usize,
    pivots: Vec<usize>,
    rows: Vec<u32>,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Echelon {
            width,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn is_full(&self) -> bool {
        self.rank() == self.width
    }

    fn row(&self, r: usize) -> &[u32] {
        &self.rows[r * self.width..(r + 1) * self.width]
    }

    /// Eliminates all pivot columns from `row` in place.
    fn reduce(&self, field: PrimeField, row: &mut [u32]) {
        for (r, &pv) in self.pivots.iter().enumerate() {
            let c = row[pv];
            if c != 0 {
                let neg = field.neg(c);
                let src = &self.rows[r * self.width..(r + 1) * self.width];
                for (dst, &s) in row.iter_mut().zip(src) {
                    *dst = field.add(*dst, field.mul(neg, s));
                }
            }
        }
    }

    /// Reduces `row` and inserts it if independent. Returns whether the rank
    /// grew. Keeps the basis fully reduced.
    fn insert(&mut self, field: PrimeField, row: &mut [u32]) -> bool {
        self.reduce(field, row);
        let Some(lead) = row.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = field.inv(row[lead]);
        for c in row.iter_mut() {
            *c = field.mul(*c, inv);
        }
        for r in 0..self.rank() {
            let c = self.rows[r * self.width + lead];
            if c != 0 {
                let neg = field.neg(c);
                for k in 0..self.width {
                    let v = field.add(
                        self.rows[r * self.width + k],
                        field.mul(neg, row[k]),
                    );
                    self.rows[r * self.width + k] = v;
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        let at = pos * self.width;
        self.rows.splice(at..at, row.iter().copied());
        true
    }
}

/// Precomputed right-multiplication matrices A_n -> A_{n+1} for one degree-1
/// element, stored flat per degree.
struct RightMult {
    per_degree: Vec<Vec<u32>>, // index n-1: dims[n] * dims[n+1] entries
}

fn right_mult_tables(alg: &GradedAlgebraTable, b: &[u32]) -> RightMult {
    let field = alg.field();
    let cap = alg.cap();
    let mut per_degree = Vec::with_capacity(cap.saturating_sub(1));
    for n in 1..cap {
        let (dn, dn1) = (alg.dim(n), alg.dim(n + 1));
        let mut flat = vec![0u32; dn * dn1];
        for i in 0..dn {
            let dst = &mut flat[i * dn1..(i + 1) * dn1];
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    field.add_scaled(dst, alg.basis_product(n, 1, i, j), bj);
                }
            }
        }
        per_degree.push(flat);
    }
    RightMult { per_degree }
}

/// Span of products of an echelon's rows with every degree-1 generator,
/// using right multiplication (one side suffices under commutativity).
fn next_degree_span(
    alg: &GradedAlgebraTable,
    n: usize,
    prev: &Echelon,
    scratch: &mut Vec<u32>,
) -> Echelon {
    let field = alg.field();
    let d = alg.dim(1);
    let width = alg.dim(n);
    let mut out = Echelon::new(width);
    for r in 0..prev.rank() {
        let row = prev.row(r);
        for k in 0..d {
            scratch.clear();
            scratch.resize(width, 0);
            for (i, &c) in row.iter().enumerate() {
                if c != 0 {
                    field.add_scaled(scratch, alg.basis_product(n - 1, 1, i, k), c);
                }
            }
            out.insert(field, scratch);
            if out.is_full() {
                return out;
            }
        }
    }
    out
}

/// Decides universal Koszulity by exhaustive search over the ideal lattice.
///
/// The outer loop over ideals runs on the current rayon pool; the reported
/// witness is the first in enumeration order regardless of worker count.
///
/// The per-pair check is a fused, rank-only form of
/// `is_in_lattice(colon_ideal(I, b))`: in each degree it compares the
/// dimension of {a : a*b in I_{n+1}} with the dimension of the span generated
/// from degree 1, exploiting that the generated ideal is always contained in
/// the colon ideal. Once both sides fill the whole degree they stay full, so
/// the ladder stops early. The unit tests pin this path against the plain
/// `colon_ideal` + `is_in_lattice` route.
pub fn universally_koszul(
    alg: &GradedAlgebraTable,
    limits: &Limits,
) -> Result<UkReport, IdealError> {
    if !alg.class().is_commutative() {
        return Err(IdealError::CommutativityRequired);
    }
    let field = alg.field();
    let d = alg.dim(1);
    let cap = alg.cap();
    let subspaces = enumerate_subspaces(field, d, limits)?;
    let ideals_total = subspaces.len();
    let p = u64::from(field.p());
    let proj = |dim: usize| -> u64 { (p.pow(dim as u32) - 1) / (p - 1) };
    let pairs_total: u64 = subspaces.iter().map(|u| proj(d) - proj(u.dim())).sum();

    let all_points = enumerate_projective_points(field, d, &Subspace::zero(field, d))?;
    let mult_tables: Vec<RightMult> = all_points
        .par_iter()
        .map(|b| right_mult_tables(alg, b))
        .collect();

    let witness = subspaces.par_iter().enumerate().find_map_first(
        |(ideal_index, u)| -> Option<Result<UkWitness, IdealError>> {
            let mut scratch: Vec<u32> = Vec::new();
            // Ideal parts as echelons, degree by degree.
            let mut ideal_parts: Vec<Echelon> = Vec::with_capacity(cap + 1);
            ideal_parts.push(Echelon::new(1));
            let mut first = Echelon::new(d);
            for row in u.basis_rows() {
                let mut row = row;
                first.insert(field, &mut row);
            }
            ideal_parts.push(first);
            for n in 2..=cap {
                let next = next_degree_span(alg, n, &ideal_parts[n - 1], &mut scratch);
                ideal_parts.push(next);
            }
            // If the ideal is everything from degree 2 up, every colon ideal
            // is the augmentation ideal, which lies in the lattice.
            if (2..=cap).all(|n| ideal_parts[n].is_full()) {
                return None;
            }

            let mut b_index = 0usize;
            for (point_idx, b) in all_points.iter().enumerate() {
                if u.contains(b) {
                    continue;
                }
                let this_b = b_index;
                b_index += 1;
                let mult = &mult_tables[point_idx];

                // Degree 1: J_1 = {a : a*b in I_2}.
                let mut gen = Echelon::new(d);
                if cap >= 2 {
                    let flat = &mult.per_degree[0];
                    let w = alg.dim(2);
                    let mut image = Echelon::new(w);
                    let mut kernel_seed: Vec<(Vec<u32>, Vec<u32>)> = Vec::with_capacity(d);
                    for i in 0..d {
                        let mut row = flat[i * w..(i + 1) * w].to_vec();
                        ideal_parts[2].reduce(field, &mut row);
                        let mut unit = vec![0u32; d];
                        unit[i] = 1;
                        kernel_seed.push((row, unit));
                    }
                    // Gaussian elimination tracking the domain side to read
                    // off the kernel.
                    for (mut row, mut unit) in kernel_seed {
                        for (r, &pv) in image.pivots.iter().enumerate() {
                            let c = row[pv];
                            if c != 0 {
                                let neg = field.neg(c);
                                let src = image.row(r).to_vec();
                                for (dst, &s) in row.iter_mut().zip(&src) {
                                    *dst = field.add(*dst, field.mul(neg, s));
                                }
                                let tr = &trackers_row(&image, r, d);
                                for (dst, &s) in unit.iter_mut().zip(tr) {
                                    *dst = field.add(*dst, field.mul(neg, s));
                                }
                            }
                        }
                        if row.iter().all(|&c| c == 0) {
                            gen.insert(field, &mut unit);
                        } else {
                            insert_with_tracker(&mut image, field, row, unit, d);
                        }
                    }
                } else {
                    // cap < 2: degenerate, everything is in the colon.
                    for i in 0..d {
                        let mut unit = vec![0u32; d];
                        unit[i] = 1;
                        gen.insert(field, &mut unit);
                    }
                }

                // Ladder over higher degrees.
                let mut failed = false;
                for n in 2..=cap {
                    let dim_n = alg.dim(n);
                    if dim_n == 0 {
                        break; // both sides are zero from here on
                    }
                    let gen_n = next_degree_span(alg, n, &gen, &mut scratch);
                    let colon_dim = if n < cap {
                        let flat = &mult.per_degree[n - 1];
                        let w = alg.dim(n + 1);
                        let mut image = Echelon::new(w);
                        for i in 0..dim_n {
                            let mut row = flat[i * w..(i + 1) * w].to_vec();
                            ideal_parts[n + 1].reduce(field, &mut row);
                            image.insert(field, &mut row);
                        }
                        dim_n - image.rank()
                    } else {
                        dim_n // conservative top-degree completion
                    };
                    if gen_n.rank() != colon_dim {
                        failed = true;
                        break;
                    }
                    if colon_dim == dim_n {
                        break; // both sides full: they stay full upward
                    }
                    gen = gen_n;
                }
                if failed {
                    return Some(Ok(UkWitness {
                        ideal_basis: u.basis_rows(),
                        b: b.clone(),
                        ideal_index,
                        b_index: this_b,
                    }));
                }
            }
            None
        },
    );

    let exact = alg.dim(alg.cap()) == 0;
    let verdict = match witness {
        None => UkVerdict::Holds,
        Some(Ok(w)) => UkVerdict::Fails(w),
        Some(Err(e)) => return Err(e),
    };
    Ok(UkReport {
        verdict,
        exact,
        ideals_total,
        pairs_total,
    })
}

/// Closure of universal Koszulity under direct products: builds the product
/// of two presentations and reports its verdict. Both factors are expected to
/// be universally Koszul themselves.
pub fn uk_closure_product_check(
    a: &QuadraticPresentation,
    b: &QuadraticPresentation,
    cap: usize,
    limits: &Limits,
) -> Result<bool, IdealError> {
    let product = QuadraticPresentation::direct_product(a, b)?;
    let table = GradedAlgebraTable::build(&product, cap, limits)?;
    Ok(universally_koszul(&table, limits)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::PrimeField;
    use crate::qalg::{Graph, QuadraticPresentation};

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    fn build(pres: &QuadraticPresentation, cap: usize) -> GradedAlgebraTable {
        GradedAlgebraTable::build(pres, cap, &limits()).unwrap()
    }

    fn span(field: PrimeField, ambient: usize, rows: &[Vec<u32>]) -> Subspace {
        Subspace::from_spanning(field, ambient, rows)
    }

    #[test]
    fn ideal_generation_examples() {
        let alg = build(&QuadraticPresentation::exterior(f(2), 3), 3);
        // (a1) in the exterior algebra on three generators.
        let u = span(f(2), 3, &[vec![1, 0, 0]]);
        let ideal = ideal_from_degree_one(&alg, &u).unwrap();
        assert_eq!(ideal.dims(), vec![0, 1, 2, 1]);
        // Degree 2 is spanned by a1a2 and a1a3.
        let labels = &alg.basis_labels()[2];
        for target in ["a1*a2", "a1*a3"] {
            let i = labels.iter().position(|l| l == target).unwrap();
            let mut v = vec![0u32; alg.dim(2)];
            v[i] = 1;
            assert!(ideal.part(2).contains(&v));
        }

        let zero = span(f(2), 3, &[]);
        let ideal = ideal_from_degree_one(&alg, &zero).unwrap();
        assert_eq!(ideal.dims(), vec![0, 0, 0, 0]);

        let full = Subspace::full(f(2), 3);
        let ideal = ideal_from_degree_one(&alg, &full).unwrap();
        assert_eq!(ideal.dims(), vec![0, 3, 3, 1]); // A_+ degreewise
        ideal.validate(&alg).unwrap();
    }

    #[test]
    fn lattice_membership_examples() {
        let alg = build(&QuadraticPresentation::exterior(f(2), 3), 3);
        let u = span(f(2), 3, &[vec![1, 0, 0]]);
        let generated = ideal_from_degree_one(&alg, &u).unwrap();
        assert!(is_in_lattice(&alg, &generated).unwrap());

        // parts[1] = <a1> but all of degree >= 2: a valid ideal, not in L.
        let too_big = GradedIdeal::new(
            &alg,
            vec![
                Subspace::zero(f(2), 1),
                u.clone(),
                Subspace::full(f(2), alg.dim(2)),
                Subspace::full(f(2), alg.dim(3)),
            ],
        )
        .unwrap();
        assert!(!is_in_lattice(&alg, &too_big).unwrap());

        let zero = ideal_from_degree_one(&alg, &span(f(2), 3, &[])).unwrap();
        assert!(is_in_lattice(&alg, &zero).unwrap());
    }

    #[test]
    fn colon_examples() {
        // Trivial algebra: everything kills b, so (0):(b) = A_+.
        let alg = build(&QuadraticPresentation::trivial(f(3), 2), 3);
        let zero = ideal_from_degree_one(&alg, &span(f(3), 2, &[])).unwrap();
        let colon = colon_ideal(&alg, &zero, &[1, 0]).unwrap();
        let aplus = ideal_from_degree_one(&alg, &Subspace::full(f(3), 2)).unwrap();
        assert_eq!(colon.parts(), aplus.parts());

        // Exterior on two generators: (0):(a1) = (a1).
        let alg = build(&QuadraticPresentation::exterior(f(3), 2), 3);
        let zero = ideal_from_degree_one(&alg, &span(f(3), 2, &[])).unwrap();
        let colon = colon_ideal(&alg, &zero, &[1, 0]).unwrap();
        assert_eq!(colon.part(1), &span(f(3), 2, &[vec![1, 0]]));
        assert_eq!(colon.part(2).dim(), alg.dim(2));
        let a1_ideal = ideal_from_degree_one(&alg, &span(f(3), 2, &[vec![1, 0]])).unwrap();
        assert_eq!(colon.parts()[..3], a1_ideal.parts()[..3]);
        assert!(is_in_lattice(&alg, &colon).unwrap());

        // Demushkin on four generators: I = (a3, a4) already has I_2 = A_2,
        // so I:(a1) is the augmentation ideal.
        let alg = build(&QuadraticPresentation::demushkin(f(3), 4).unwrap(), 3);
        let u = span(f(3), 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        let ideal = ideal_from_degree_one(&alg, &u).unwrap();
        assert_eq!(ideal.part(2).dim(), alg.dim(2));
        let colon = colon_ideal(&alg, &ideal, &[1, 0, 0, 0]).unwrap();
        let aplus = ideal_from_degree_one(&alg, &Subspace::full(f(3), 4)).unwrap();
        assert_eq!(colon.parts(), aplus.parts());
    }

    #[test]
    fn colon_refuses_noncommutative_input() {
        let alg = build(&QuadraticPresentation::tensor(f(2), 2), 3);
        let zero = ideal_from_degree_one(&alg, &span(f(2), 2, &[])).unwrap();
        assert!(matches!(
            colon_ideal(&alg, &zero, &[1, 0]),
            Err(IdealError::CommutativityRequired)
        ));
        assert!(matches!(
            universally_koszul(&alg, &limits()),
            Err(IdealError::CommutativityRequired)
        ));
    }

    #[test]
    fn colon_contains_ideal_and_b() {
        let tables = [
            build(&QuadraticPresentation::exterior(f(2), 3), 4),
            build(&QuadraticPresentation::demushkin(f(5), 4).unwrap(), 4),
            build(
                &QuadraticPresentation::stanley_reisner(&Graph::path(4), f(2)),
                5,
            ),
        ];
        for alg in &tables {
            let d = alg.dim(1);
            let subs = enumerate_subspaces(alg.field(), d, &limits()).unwrap();
            for u in subs.iter().step_by(3) {
                let ideal = ideal_from_degree_one(alg, u).unwrap();
                for b in enumerate_projective_points(alg.field(), d, u).unwrap() {
                    let colon = colon_ideal(alg, &ideal, &b).unwrap();
                    assert!(colon.contains(&ideal));
                    assert!(colon.part(1).contains(&b));
                }
            }
        }
    }

    #[test]
    fn colon_is_monotone() {
        let alg = build(&QuadraticPresentation::demushkin(f(3), 4).unwrap(), 4);
        let small = span(f(3), 4, &[vec![1, 0, 0, 0]]);
        let big = span(f(3), 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let i_small = ideal_from_degree_one(&alg, &small).unwrap();
        let i_big = ideal_from_degree_one(&alg, &big).unwrap();
        assert!(i_big.contains(&i_small));
        for b in enumerate_projective_points(f(3), 4, &big).unwrap() {
            let c_small = colon_ideal(&alg, &i_small, &b).unwrap();
            let c_big = colon_ideal(&alg, &i_big, &b).unwrap();
            assert!(c_big.contains(&c_small));
        }
    }

    #[test]
    fn uk_verdict_examples() {
        for d in 1..=4 {
            let alg = build(&QuadraticPresentation::trivial(f(2), d), 4);
            let report = universally_koszul(&alg, &limits()).unwrap();
            assert!(report.holds(), "trivial algebra d={d}");
            assert!(report.exact);
        }
        for &p in &[2u32, 3] {
            let alg = build(&QuadraticPresentation::demushkin(f(p), 4).unwrap(), 4);
            let report = universally_koszul(&alg, &limits()).unwrap();
            assert!(report.holds(), "Demushkin d=4 p={p}");
            assert!(report.exact);
        }
        let sr = QuadraticPresentation::stanley_reisner(&Graph::path(4), f(2));
        let alg = build(&sr, 5);
        let report = universally_koszul(&alg, &limits()).unwrap();
        assert!(!report.holds());
        assert!(report.exact);
        let UkVerdict::Fails(w) = &report.verdict else {
            panic!()
        };
        // The canonical witness is reproducible.
        let again = universally_koszul(&alg, &limits()).unwrap();
        assert_eq!(UkVerdict::Fails(w.clone()), again.verdict);
    }

    #[test]
    fn uk_verdict_is_permutation_invariant() {
        let sr = QuadraticPresentation::stanley_reisner(&Graph::path(4), f(2));
        let permuted = sr.permute_generators(&[1, 3, 0, 2]);
        let a = universally_koszul(&build(&sr, 5), &limits()).unwrap();
        let b = universally_koszul(&build(&permuted, 5), &limits()).unwrap();
        assert_eq!(a.holds(), b.holds());

        let dem = QuadraticPresentation::demushkin(f(2), 4).unwrap();
        let permuted = dem.permute_generators(&[2, 0, 3, 1]);
        let a = universally_koszul(&build(&dem, 4), &limits()).unwrap();
        let b = universally_koszul(&build(&permuted, 4), &limits()).unwrap();
        assert_eq!(a.holds(), b.holds());
    }

    #[test]
    fn product_closure_examples() {
        let ext2 = QuadraticPresentation::exterior(f(2), 2);
        let tr1 = QuadraticPresentation::trivial(f(2), 1);
        assert!(uk_closure_product_check(&ext2, &tr1, 4, &limits()).unwrap());

        let tr1_f3 = QuadraticPresentation::trivial(f(3), 1);
        assert!(uk_closure_product_check(&tr1_f3, &tr1_f3, 4, &limits()).unwrap());

        let dem2 = QuadraticPresentation::demushkin(f(3), 2).unwrap();
        let tr2 = QuadraticPresentation::trivial(f(3), 2);
        assert!(uk_closure_product_check(&dem2, &tr2, 4, &limits()).unwrap());
    }

    #[test]
    fn uk_respects_enumeration_limits() {
        let alg = build(&QuadraticPresentation::trivial(f(2), 4), 3);
        let tight = Limits {
            max_enum_dim: 3,
            ..Limits::default()
        };
        assert!(matches!(
            universally_koszul(&alg, &tight),
            Err(IdealError::Gfp(GfpError::LimitExceeded(_)))
        ));
    }
}
