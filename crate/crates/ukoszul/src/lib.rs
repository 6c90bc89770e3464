//! Exact decision procedures for universal Koszulity of finite-type graded
//! algebras over prime fields.
//!
//! The crate builds graded F_p-algebras from three kinds of input — direct
//! quadratic presentations, combinatorial graphs (exterior Stanley-Reisner
//! algebras), and pro-p group presentations (via a degree-2 truncated Magnus
//! expansion) — and then searches the lattice of degree-1-generated ideals
//! exhaustively to decide whether every colon ideal `I:(b)` is again generated
//! in degree 1.
//!
//! All arithmetic is exact modular arithmetic; there is no floating point
//! anywhere. Results are deterministic, including failure witnesses, and
//! independent of the worker count used for the ideal sweep.

pub mod cli;
pub mod gfp;
pub mod graphs;
pub mod group;
pub mod ideals;
pub mod qalg;
pub mod resolve;

/// Resource limits for the exhaustive searches and table constructions.
///
/// Every limit is a default, not a hard invariant: the CLI exposes flags and a
/// limits file to override them. Exceeding a limit is reported as an explicit
/// resource error rather than silently truncating a search.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest ambient dimension for exhaustive subspace enumeration.
    pub max_enum_dim: usize,
    /// Largest p^n permitted when enumerating vectors of F_p^n.
    pub max_enum_points: u64,
    /// Largest tensor-space dimension d^cap for algebra construction.
    pub workspace: u64,
    /// Largest degree cap accepted from the command line.
    pub max_cap: usize,
    /// Largest admissible prime. Hard-capped at 97 by `PrimeField` itself.
    pub max_p: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum_dim: 6,
            max_enum_points: 20_000,
            workspace: 20_000,
            max_cap: 5,
            max_p: 97,
        }
    }
}
