//! Exact linear algebra over prime fields F_p.
//!
//! Matrices are dense row-major arrays of residues. Subspaces are stored by
//! their reduced row-echelon basis, which is a canonical form: two subspaces
//! are equal if and only if their stored matrices are equal. The module also
//! provides the two exhaustive enumerations the Koszulity search is built on:
//! all subspaces of F_p^n in a fixed deterministic order, and one normalized
//! representative per projective point.

use crate::Limits;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfpError {
    #[error("{0} is not a prime in 2..=97")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),
}

/// The prime field F_p for a small prime p, 2 <= p <= 97.
///
/// Elements are residues in `0..p` stored as `u32`; all operations reduce
/// exactly, so no rounding can occur anywhere downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, GfpError> {
        if !(2..=97).contains(&p) || !is_prime(p) {
            return Err(GfpError::NotPrime(u64::from(p)));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Canonical residue of an arbitrary signed integer.
    pub fn reduce_i64(self, x: i64) -> u32 {
        let p = i64::from(self.p);
        (((x % p) + p) % p) as u32
    }

    /// dst += c * src, componentwise.
    pub fn add_scaled(self, dst: &mut [u32], src: &[u32], c: u32) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, *s));
        }
    }
}

/// A dense matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, cols: usize, data: &[Vec<u32>]) -> Result<Self, GfpError> {
        let mut entries = Vec::with_capacity(data.len() * cols);
        for row in data {
            if row.len() != cols {
                return Err(GfpError::DimensionMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    row.len(),
                    cols
                )));
            }
            entries.extend(row.iter().map(|&x| x % field.p()));
        }
        Ok(FpMatrix {
            field,
            rows: data.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form plus pivot columns.
    ///
    /// The result keeps the shape of the input (zero rows at the bottom); it
    /// is the unique RREF of the row space, so `rref` is idempotent.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let factor = m.get(i, c);
                    for j in c..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space {x : M x^T = 0}, as a canonical subspace of F_p^cols.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free_cols.sort_unstable();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            basis.push(v);
        }
        Subspace::from_spanning(f, self.cols, &basis)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Left null space {x : x M = 0}, as a canonical subspace of F_p^rows.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix, GfpError> {
        if self.cols != other.cols {
            return Err(GfpError::DimensionMismatch(format!(
                "stacking {}-column onto {}-column matrix",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// y = x * M for a row vector x of length `rows`.
    pub fn row_apply(&self, x: &[u32]) -> Vec<u32> {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![0u32; self.cols];
        for (r, &c) in x.iter().enumerate() {
            if c != 0 {
                self.field.add_scaled(&mut out, self.row(r), c);
            }
        }
        out
    }
}

/// A linear subspace of F_p^n in canonical form.
///
/// The basis matrix is in reduced row-echelon form with no zero rows, so
/// structural equality of two `Subspace` values is exactly equality of the
/// subspaces they denote.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FpMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FpMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_spanning(field: PrimeField, ambient: usize, rows: &[Vec<u32>]) -> Self {
        let m = FpMatrix::from_rows(field, ambient, rows)
            .expect("spanning rows must have the ambient length");
        Self::from_matrix(&m)
    }

    pub fn from_matrix(m: &FpMatrix) -> Self {
        let (r, pivots) = m.rref();
        let rank = pivots.len();
        let trimmed = FpMatrix {
            field: r.field,
            rows: rank,
            cols: r.cols,
            entries: r.entries[..rank * r.cols].to_vec(),
        };
        Subspace {
            ambient: m.cols(),
            basis: trimmed,
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivot_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    /// Remainder of `v` after elimination against the RREF basis. The result
    /// is zero exactly when `v` lies in the subspace, and is supported on the
    /// non-pivot coordinates otherwise.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.ambient);
        let f = self.field();
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                let neg = f.neg(c);
                f.add_scaled(&mut out, self.basis.row(row), neg);
            }
        }
        out
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates_of(&self, v: &[u32]) -> Result<Option<Vec<u32>>, GfpError> {
        if v.len() != self.ambient {
            return Err(GfpError::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let rem = self.reduce(v);
        if rem.iter().any(|&x| x != 0) {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&pc| v[pc]).collect()))
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        matches!(self.coordinates_of(v), Ok(Some(_)))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Coordinates of `v` in the quotient F_p^n / self, i.e. the remainder
    /// restricted to the non-pivot columns.
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let rem = self.reduce(v);
        self.non_pivot_columns().iter().map(|&c| rem[c]).collect()
    }

    /// Lattice join: span of the union.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, GfpError> {
        if self.ambient != other.ambient {
            return Err(GfpError::DimensionMismatch(format!(
                "sum of subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace::from_matrix(&stacked))
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn perp(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    /// Lattice meet, computed as the complement of the sum of complements.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, GfpError> {
        if self.ambient != other.ambient {
            return Err(GfpError::DimensionMismatch(format!(
                "intersection of subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        let joined = self.perp().sum(&other.perp())?;
        Ok(joined.perp())
    }
}

/// All k-subsets of {0,..,n-1} in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance odometer
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn checked_pow(p: u64, n: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(p)?;
        if acc > 1 << 62 {
            return None;
        }
    }
    Some(acc)
}

/// Every subspace of F_p^n exactly once, ordered by dimension and then
/// lexicographically on the flattened RREF basis entries.
///
/// The count equals the sum over k of the Gaussian binomials [n choose k]_p.
pub fn enumerate_subspaces(
    field: PrimeField,
    ambient: usize,
    limits: &Limits,
) -> Result<Vec<Subspace>, GfpError> {
    if ambient > limits.max_enum_dim {
        return Err(GfpError::LimitExceeded(format!(
            "subspace enumeration in dimension {} (limit {})",
            ambient, limits.max_enum_dim
        )));
    }
    let points = checked_pow(u64::from(field.p()), ambient);
    match points {
        Some(n) if n <= limits.max_enum_points => {}
        _ => {
            return Err(GfpError::LimitExceeded(format!(
                "p^n = {}^{} exceeds the enumeration budget {}",
                field.p(),
                ambient,
                limits.max_enum_points
            )))
        }
    }
    let p = field.p();
    let mut all = Vec::new();
    for k in 0..=ambient {
        let mut mats: Vec<Vec<u32>> = Vec::new();
        for pivots in combinations(ambient, k) {
            // Free positions: (row r, col c) with c > pivots[r] and c not a pivot.
            let mut free: Vec<(usize, usize)> = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..ambient {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let mut vals = vec![0u32; free.len()];
            loop {
                let mut entries = vec![0u32; k * ambient];
                for (r, &pc) in pivots.iter().enumerate() {
                    entries[r * ambient + pc] = 1;
                }
                for (idx, &(r, c)) in free.iter().enumerate() {
                    entries[r * ambient + c] = vals[idx];
                }
                mats.push(entries);
                // odometer over free values
                let mut i = 0;
                while i < vals.len() {
                    vals[i] += 1;
                    if vals[i] < p {
                        break;
                    }
                    vals[i] = 0;
                    i += 1;
                }
                if free.is_empty() || i == vals.len() {
                    break;
                }
            }
        }
        mats.sort_unstable();
        for entries in mats {
            let m = FpMatrix {
                field,
                rows: k,
                cols: ambient,
                entries,
            };
            let (_, pivots) = m.rref();
            debug_assert_eq!(pivots.len(), k);
            all.push(Subspace {
                ambient,
                basis: m,
                pivots,
            });
        }
    }
    Ok(all)
}

/// One normalized representative (first nonzero coordinate 1) of every
/// 1-dimensional subspace of F_p^n not contained in `excluding`, in
/// lexicographic order of the representative vectors.
pub fn enumerate_projective_points(
    field: PrimeField,
    ambient: usize,
    excluding: &Subspace,
) -> Result<Vec<Vec<u32>>, GfpError> {
    if excluding.ambient_dim() != ambient {
        return Err(GfpError::DimensionMismatch(format!(
            "excluded subspace lives in F^{}, expected F^{}",
            excluding.ambient_dim(),
            ambient
        )));
    }
    let p = field.p();
    let mut out = Vec::new();
    // Lex order on normalized vectors means the leading 1 moves from the last
    // coordinate towards the first.
    for lead in (0..ambient).rev() {
        let tail = ambient - lead - 1;
        let mut digits = vec![0u32; tail];
        loop {
            let mut v = vec![0u32; ambient];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&digits);
            if !excluding.contains(&v) {
                out.push(v);
            }
            let mut i = tail;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                if i == 0 {
                    break;
                }
            }
            if tail == 0 || (i == 0 && digits.iter().all(|&d| d == 0)) {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Gaussian binomial [n choose k]_p by the product formula; the
    /// independent count oracle for subspace enumeration.
    fn gaussian_binomial(p: u64, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num *= (p as u128).pow((n - i) as u32) - 1;
            den *= (p as u128).pow((k - i) as u32) - 1;
        }
        (num / den) as u64
    }

    #[test]
    fn field_rejects_composites_and_large_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(101).is_err());
        assert!(PrimeField::new(97).is_ok());
    }

    #[test]
    fn rref_examples() {
        // Identity over F_3 is already reduced.
        let id = FpMatrix::identity(f(3), 2);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1]);

        // [[2,4],[1,2]] over F_5 reduces to [[1,2],[0,0]].
        let m = FpMatrix::from_rows(f(5), 2, &[vec![2, 4], vec![1, 2]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(r.row(0), &[1, 2]);
        assert_eq!(r.row(1), &[0, 0]);
        assert_eq!(piv, vec![0]);

        let z = FpMatrix::zeros(f(2), 3, 3);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::from_spanning(f(2), 2, &[vec![1, 0]]);
        assert_eq!(s.coordinates_of(&[0, 1]).unwrap(), None);

        let s = Subspace::from_spanning(f(5), 2, &[vec![1, 2]]);
        assert_eq!(s.coordinates_of(&[2, 4]).unwrap(), Some(vec![2]));

        let full = Subspace::full(f(3), 3);
        assert!(full.contains(&[2, 1, 0]));

        assert!(s.coordinates_of(&[1, 2, 3]).is_err());
    }

    #[test]
    fn sum_and_intersect_examples() {
        let a = Subspace::from_spanning(f(2), 2, &[vec![1, 0]]);
        let b = Subspace::from_spanning(f(2), 2, &[vec![0, 1]]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(f(2), 2));
        assert_eq!(a.intersect(&b).unwrap(), Subspace::zero(f(2), 2));

        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);

        let a = Subspace::from_spanning(f(2), 3, &[vec![1, 1, 0]]);
        let b = Subspace::from_spanning(f(2), 3, &[vec![0, 1, 1], vec![1, 0, 1]]);
        let expect = brute_force_intersection(&a, &b);
        let got = a.intersect(&b).unwrap();
        assert_eq!(got, expect);
        assert_eq!(got, a);
    }

    /// Oracle: intersect by scanning all p^n vectors.
    fn brute_force_intersection(a: &Subspace, b: &Subspace) -> Subspace {
        let field = a.field();
        let n = a.ambient_dim();
        let p = field.p() as u64;
        let total = p.pow(n as u32);
        let mut members = Vec::new();
        for idx in 0..total {
            let mut v = vec![0u32; n];
            let mut rem = idx;
            for coord in v.iter_mut().rev() {
                *coord = (rem % p) as u32;
                rem /= p;
            }
            if a.contains(&v) && b.contains(&v) {
                members.push(v);
            }
        }
        Subspace::from_spanning(field, n, &members)
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        let limits = Limits::default();
        for &(p, n) in &[(2u32, 2usize), (3, 1), (2, 4), (3, 3), (5, 2), (2, 3)] {
            let subs = enumerate_subspaces(f(p), n, &limits).unwrap();
            let expect: u64 = (0..=n as u64)
                .map(|k| gaussian_binomial(u64::from(p), n as u64, k))
                .sum();
            assert_eq!(subs.len() as u64, expect, "p={p} n={n}");
        }
        // Frozen values from the Gaussian binomial sums.
        assert_eq!(
            enumerate_subspaces(f(2), 2, &limits).unwrap().len(),
            5
        );
        assert_eq!(
            enumerate_subspaces(f(3), 1, &limits).unwrap().len(),
            2
        );
        assert_eq!(
            enumerate_subspaces(f(2), 4, &limits).unwrap().len(),
            67
        );
    }

    #[test]
    fn subspace_enumeration_is_deterministic_and_canonical() {
        let limits = Limits::default();
        let a = enumerate_subspaces(f(3), 3, &limits).unwrap();
        let b = enumerate_subspaces(f(3), 3, &limits).unwrap();
        assert_eq!(a, b);
        // Each subspace appears exactly once.
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                assert_ne!(a[i], a[j]);
            }
        }
        // Ordered by dimension.
        for w in a.windows(2) {
            assert!(w[0].dim() <= w[1].dim());
        }
    }

    #[test]
    fn enumeration_limit_errors() {
        let limits = Limits::default();
        assert!(matches!(
            enumerate_subspaces(f(2), 7, &limits),
            Err(GfpError::LimitExceeded(_))
        ));
        assert!(matches!(
            enumerate_subspaces(f(97), 3, &limits),
            Err(GfpError::LimitExceeded(_))
        ));
    }

    #[test]
    fn projective_point_examples() {
        let zero2 = Subspace::zero(f(2), 2);
        let pts = enumerate_projective_points(f(2), 2, &zero2).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);

        let zero3 = Subspace::zero(f(3), 2);
        let pts = enumerate_projective_points(f(3), 2, &zero3).unwrap();
        assert_eq!(pts.len(), 4); // (3^2 - 1) / (3 - 1)

        let excl = Subspace::from_spanning(f(2), 2, &[vec![1, 0]]);
        let pts = enumerate_projective_points(f(2), 2, &excl).unwrap();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 1]]);
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(p in prop::sample::select(vec![2u32, 3, 5]),
                              rows in 1usize..4, cols in 1usize..5,
                              seed in any::<u64>()) {
            let field = f(p);
            let mut state = seed;
            let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (state >> 33) as u32 % p };
            let data: Vec<Vec<u32>> = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            let m = FpMatrix::from_rows(field, cols, &data).unwrap();
            let (r1, piv1) = m.rref();
            let (r2, piv2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(piv1, piv2);
        }

        #[test]
        fn dim_formula_holds(p in prop::sample::select(vec![2u32, 3, 5]),
                             n in 1usize..5, seed in any::<u64>()) {
            let field = f(p);
            let mut state = seed;
            let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (state >> 33) as u32 % p };
            let ra: Vec<Vec<u32>> = (0..2).map(|_| (0..n).map(|_| next()).collect()).collect();
            let rb: Vec<Vec<u32>> = (0..2).map(|_| (0..n).map(|_| next()).collect()).collect();
            let a = Subspace::from_spanning(field, n, &ra);
            let b = Subspace::from_spanning(field, n, &rb);
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
            prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
        }

        #[test]
        fn membership_coordinates_recombine(p in prop::sample::select(vec![2u32, 3, 5]),
                                            n in 1usize..5, seed in any::<u64>()) {
            let field = f(p);
            let mut state = seed;
            let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (state >> 33) as u32 % p };
            let rows: Vec<Vec<u32>> = (0..2).map(|_| (0..n).map(|_| next()).collect()).collect();
            let s = Subspace::from_spanning(field, n, &rows);
            // A random combination of basis rows must be recognized with the
            // coefficients we used.
            let coeffs: Vec<u32> = (0..s.dim()).map(|_| next()).collect();
            let mut v = vec![0u32; n];
            for (r, &c) in coeffs.iter().enumerate() {
                field.add_scaled(&mut v, s.basis().row(r), c);
            }
            prop_assert_eq!(s.coordinates_of(&v).unwrap(), Some(coeffs));
        }
    }
}
