//! Degenerate Clifford algebras and spinor calculus on lightlike
//! hypersurfaces of flat Minkowski space ℝ^{3,1}.

// Index loops mirror the tensor formulas; negated comparisons reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod ad;
pub mod clifford;
pub mod expr;
pub mod geometry;
pub mod selftest;
pub mod spin;
pub mod spinor;
pub mod sweep;
