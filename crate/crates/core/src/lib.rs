//! Exact symbolic tools for deciding when a unit lower Hessenberg (ULH) matrix
//! pattern is companion, or companion with respect to some polynomial basis
//! (PB-companion).
//!
//! Entries are [`Polynomial`]s over the rationals in `lambda`, the companion
//! variables `x1, ..., xn` and free parameters. Parametric questions come back
//! as a [`Verdict::Conditional`] carrying the polynomial conditions.

pub mod companion;
pub mod det;
pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod parse;
pub mod pattern;
pub mod pb;
pub mod poly;
pub mod search;
pub mod verdict;

pub use companion::{
    build_newton_companion, fiedler_below_diag_test, g_hat_companion_test, is_companion_direct,
    is_companion_structural, nested_membership, nilpotent_complete, parameterize_g,
    CompanionReport, Method, NestedSpec, Side, Witness,
};
pub use digraph::{build_digraph, digraphs_isomorphic, Digraph};
pub use enumerate::{enumerate_patterns, Family};
pub use error::{Error, Result};
pub use matrix::{
    charpoly, charpoly_oracle, constant_part, is_nilpotent, is_ulh, j_conjugate_transpose,
    principal, subdiag_sum, submatrix, SymMatrix, Window,
};
pub use parse::parse_expr;
pub use pattern::{
    base_matrix, classify_matrix, classify_pattern, extract_pattern, order_prec, Cell, ClassLabel,
    MatrixClass, Pattern,
};
pub use pb::{
    basis_polynomials, concatenation, degree_profile_check, is_pb_companion, length_le2_criterion,
    ma_matrix, pb_via_blocks, Component, DegreeProfile, Le2Outcome, PbReport,
};
pub use poly::{Indeterminate, Monomial, Polynomial, Rational};
pub use search::{fiedler_mixed_superpattern_search, SearchResult, SearchStatus};
pub use verdict::{Conditions, Verdict};
