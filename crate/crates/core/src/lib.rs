//! Symbolic workbench for braided wiring diagrams with tangencies.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`braid`]: braid words, half twists, Garside left normal form, closure
//!   invariants (permutation, exponent sum, linking matrix).
//! * [`wiring`]: the diagram object, its text DSL, validation, macro expansion
//!   of grids and tangency nests, and position tracking.
//! * [`boundary`]: front and back pushoff braids and the boundary braid.
//! * [`moves`]: the catalog of boundary-preserving rewrite moves, verified
//!   application, scripts and replayable traces.
//! * [`homology`]: marked points, incidence matrix, Smith normal form and the
//!   rational-homology-disk verdict.
//! * [`families`]: germ reference data and generators for the Scott and QHD
//!   diagrams of the `G_{k,1}` family, plus the move script connecting them.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boundary;
pub mod braid;
pub mod digest;
pub mod families;
pub mod homology;
pub mod moves;
pub mod wiring;

pub use boundary::{back, boundary_braid, boundary_invariants, closure_chart, front, BoundaryData, BoundaryError};
pub use braid::{
    compose, conjugate_check, equal, exponent_sum, half_twist, linking_matrix, normal_form,
    permutation, BraidError, BraidWord, Letter, LinkingMatrix, NormalForm, Permutation, Sign,
};
pub use families::{
    combinatorial_signature, germ_data, qhd_diagram, qhd_script, scott_diagram, FamilyDiagram, FamilyError,
    GermData, Provenance, Signature,
};
pub use homology::{
    homology, incidence, qhd_check, smith_normal_form, weights, Arrangement, HomologyError, HomologyReport,
    IncidenceMatrix, QhdVerdict, Snf,
};
pub use moves::{
    apply, catalog, list_applicable, run_script, verify_trace, Anchor, Direction, Guarantee, MoveError,
    MoveInstance, MoveKind, MoveResult, MoveSpec, ScriptError, Trace, TraceStep, Variant,
};
pub use wiring::{
    expand_macros, parse, position_state, print, validate, Chart, Element, ParseError,
    PositionState, Violation, WiringDiagram,
};
