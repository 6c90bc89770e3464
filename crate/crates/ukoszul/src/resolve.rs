//! Koszulity certificates: bigraded Betti numbers of a minimal graded free
//! resolution of the trivial module, and the Hilbert-series convolution test
//! against the quadratic dual.
//!
//! The resolution is computed degreewise over right modules by iterated
//! syzygy extraction. At every homological stage the minimal generator count
//! of the current kernel module M in internal degree j is the intrinsic
//! quantity dim(M_j / (M * A_+)_j), so the table does not depend on any of
//! the basis choices made along the way. Everything is a finite-window
//! certificate: vanishing off the diagonal inside the window is necessary for
//! Koszulity and is only claimed for the window.

use crate::gfp::{FpMatrix, GfpError, Subspace};
use crate::qalg::{AlgebraError, GradedAlgebraTable, QuadraticPresentation};
use crate::Limits;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error(transparent)]
    Gfp(#[from] GfpError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("window degree {n_max} exceeds the table cap {cap}")]
    WindowExceedsCap { n_max: usize, cap: usize },
}

/// Bigraded Betti numbers b[i][j] for homological degree i <= h_max and
/// internal degree j <= n_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    h_max: usize,
    n_max: usize,
    entries: Vec<Vec<usize>>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i][j]
    }

    pub fn h_max(&self) -> usize {
        self.h_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.entries
    }

    /// True when every entry off the diagonal i = j vanishes.
    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &b)| i == j || b == 0))
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..=self.h_max.min(self.n_max))
            .map(|i| self.entries[i][i])
            .collect()
    }
}

/// A free graded right module, described by the internal degrees of its
/// generators, together with the degreewise subspaces of a submodule.
struct Stage {
    gen_degrees: Vec<usize>,
    /// parts[j] is a subspace of the degree-j component of the free module.
    parts: Vec<Subspace>,
}

fn free_dim(alg: &GradedAlgebraTable, gen_degrees: &[usize], j: usize) -> usize {
    gen_degrees
        .iter()
        .filter(|&&d| d <= j)
        .map(|&d| alg.dim(j - d))
        .sum()
}

/// Right action of an algebra basis element on a free-module vector:
/// blockwise multiplication in the table.
fn module_right_mult(
    alg: &GradedAlgebraTable,
    gen_degrees: &[usize],
    j: usize,
    v: &[u32],
    k: usize,
    y: &[u32],
) -> Vec<u32> {
    let mut out = vec![0u32; free_dim(alg, gen_degrees, j + k)];
    let mut src = 0;
    let mut dst = 0;
    for &dg in gen_degrees {
        let src_len = if dg <= j { alg.dim(j - dg) } else { 0 };
        let dst_len = if dg <= j + k { alg.dim(j + k - dg) } else { 0 };
        if src_len > 0 && dg <= j {
            let block = &v[src..src + src_len];
            if block.iter().any(|&c| c != 0) {
                let prod = alg.multiply(j - dg, k, block, y);
                for (o, p) in out[dst..dst + dst_len].iter_mut().zip(prod) {
                    *o = p;
                }
            }
        }
        src += src_len;
        dst += dst_len;
    }
    out
}

/// Bigraded Betti numbers of a minimal free resolution of the trivial module
/// over the algebra, within the window (h_max, n_max).
pub fn bigraded_betti(
    alg: &GradedAlgebraTable,
    h_max: usize,
    n_max: usize,
) -> Result<BettiTable, ResolveError> {
    if n_max > alg.cap() {
        return Err(ResolveError::WindowExceedsCap {
            n_max,
            cap: alg.cap(),
        });
    }
    let field = alg.field();
    let mut entries = vec![vec![0usize; n_max + 1]; h_max + 1];
    entries[0][0] = 1;

    // Stage 1: the submodule A_+ of the rank-one free module A.
    let mut stage = Stage {
        gen_degrees: vec![0],
        parts: (0..=n_max)
            .map(|j| {
                if j == 0 {
                    Subspace::zero(field, alg.dim(0))
                } else {
                    Subspace::full(field, alg.dim(j))
                }
            })
            .collect(),
    };

    for i in 1..=h_max {
        // Minimal generators of M in each internal degree: representatives of
        // M_j modulo M_{j-1} * A_1, extracted from the canonical RREF bases.
        let mut new_gen_degrees: Vec<usize> = Vec::new();
        let mut images: Vec<Vec<u32>> = Vec::new();
        for j in 0..=n_max {
            let decomposable: Subspace = if j == 0 {
                Subspace::zero(field, free_dim(alg, &stage.gen_degrees, 0))
            } else {
                let mut rows = Vec::new();
                for w in stage.parts[j - 1].basis_rows() {
                    for k in 0..alg.dim(1) {
                        let mut y = vec![0u32; alg.dim(1)];
                        y[k] = 1;
                        rows.push(module_right_mult(
                            alg,
                            &stage.gen_degrees,
                            j - 1,
                            &w,
                            1,
                            &y,
                        ));
                    }
                }
                Subspace::from_spanning(field, free_dim(alg, &stage.gen_degrees, j), &rows)
            };
            let mut rep_rows = Vec::new();
            for v in stage.parts[j].basis_rows() {
                let rem = decomposable.reduce(&v);
                if rem.iter().any(|&c| c != 0) {
                    rep_rows.push(rem);
                }
            }
            let reps = Subspace::from_spanning(
                field,
                free_dim(alg, &stage.gen_degrees, j),
                &rep_rows,
            );
            entries[i][j] = reps.dim();
            for r in reps.basis_rows() {
                new_gen_degrees.push(j);
                images.push(r);
            }
        }

        if i == h_max {
            break;
        }

        // Next syzygy module: the degreewise kernel of the map sending the
        // g-th new generator to its image, extended by the right action.
        let mut next_parts = Vec::with_capacity(n_max + 1);
        for j in 0..=n_max {
            let rows_dim = free_dim(alg, &new_gen_degrees, j);
            let cols_dim = free_dim(alg, &stage.gen_degrees, j);
            let mut rows: Vec<Vec<u32>> = Vec::with_capacity(rows_dim);
            for (g, &dg) in new_gen_degrees.iter().enumerate() {
                if dg > j {
                    continue;
                }
                for t in 0..alg.dim(j - dg) {
                    let mut y = vec![0u32; alg.dim(j - dg)];
                    y[t] = 1;
                    rows.push(module_right_mult(
                        alg,
                        &stage.gen_degrees,
                        dg,
                        &images[g],
                        j - dg,
                        &y,
                    ));
                }
            }
            debug_assert_eq!(rows.len(), rows_dim);
            let map = FpMatrix::from_rows(field, cols_dim, &rows)?;
            next_parts.push(map.left_kernel());
        }
        stage = Stage {
            gen_degrees: new_gen_degrees,
            parts: next_parts,
        };
    }

    Ok(BettiTable {
        h_max,
        n_max,
        entries,
    })
}

/// Necessary finite-window condition for Koszulity: all Betti numbers off the
/// diagonal vanish inside the window.
pub fn koszul_window_check(
    alg: &GradedAlgebraTable,
    h_max: usize,
    n_max: usize,
) -> Result<bool, ResolveError> {
    Ok(bigraded_betti(alg, h_max, n_max)?.is_diagonal())
}

/// Coefficients of h_{A!}(-t) * h_A(t) up to degree n_max:
/// c_n = sum_k (-1)^k dim(A!_k) dim(A_{n-k}). For a Koszul pair this is
/// 1, 0, 0, ... within the window.
pub fn hilbert_product_check(
    pres: &QuadraticPresentation,
    n_max: usize,
    limits: &Limits,
) -> Result<Vec<i64>, ResolveError> {
    let alg = GradedAlgebraTable::build(pres, n_max, limits)?;
    let dual = GradedAlgebraTable::build(&pres.quadratic_dual(), n_max, limits)?;
    let h = alg.hilbert_series();
    let hd = dual.hilbert_series();
    Ok((0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let sign = if k % 2 == 0 { 1i64 } else { -1 };
                    sign * (hd[k] as i64) * (h[n - k] as i64)
                })
                .sum()
        })
        .collect())
}
