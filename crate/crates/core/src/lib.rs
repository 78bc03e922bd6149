//! Exact enumeration of permutations by their number of 132 occurrences.
//!
//! The generating function `Ψ_r(x)` of permutations with exactly `r`
//! occurrences of 132 is assembled from a finite catalog of kernel shapes:
//! every permutation is a kernel shape with independent sub-permutations
//! placed in its feasible cells. The crate provides
//!
//! - [`perm`]: permutations, occurrence counting, monotone subsequences;
//! - [`kernel`]: occurrence graphs, kernels, cell decompositions and the
//!   decompose/assemble bijection;
//! - [`shapes`]: the pruned search producing shape catalogs;
//! - [`series`], [`poly`], [`algebraic`]: exact truncated series and the
//!   closed-form field `Q(x)[√(1−4x)]`;
//! - [`solver`]: `Ψ_r` in both representations and the restricted `Φ_r(x;k)`;
//! - [`oracle`]: brute-force distributions over `S_n`;
//! - [`invariants`], [`conjectures`]: exhaustive property sweeps and reports.

pub mod algebraic;
pub mod conjectures;
pub mod error;
pub mod invariants;
pub mod kernel;
pub mod oracle;
mod par;
pub mod perm;
pub mod poly;
pub mod series;
pub mod shapes;
pub mod solver;

pub use algebraic::{extract_pq, AlgebraicFunction, PqForm};
pub use error::{Error, Result};
pub use kernel::{
    assemble, decompose, kernel_of, Cell, CellDecomposition, Kernel, KernelShapeRecord,
};
pub use perm::{count_132, lis_length, reduce_to_pattern, Occurrence, Permutation};
pub use series::PowerSeries;
pub use shapes::{census, enumerate_kernel_shapes, exceptional_shape, ShapeCatalog};
pub use solver::{phi_series, psi_closed_form, psi_series};

/// Default truncation order for series output.
pub const DEFAULT_ORDER: usize = 32;
