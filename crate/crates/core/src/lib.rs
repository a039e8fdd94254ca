//! Calculus of (n, k)-Kirby diagrams for high-dimensional handlebodies.
//!
//! An n-dimensional handlebody built from one 0-handle, a (k-1)-handles and
//! m k-handles (2 <= k, n >= 2k + 1) is presented by a diagram in S^{n-1}:
//! a dotted trivial link of (n-k-1)-spheres (one per (k-1)-handle) and a
//! framed link of (k-1)-spheres (one per k-handle). In this dimension range
//! the attaching data reduces to a word in the dotted generators per framed
//! component plus a framing in the stable group pi_{k-1}(O(n-k)).
//!
//! The crate models the diagrams ([`diagram`]), the handle moves and their
//! replayable certificates ([`moves`]), reduction to normal forms and
//! manifold recognition ([`reduce`]), algebraic invariants ([`invariants`]),
//! and the text formats plus a bundled example catalogue ([`format`],
//! [`catalog`]).

pub mod catalog;
pub mod diagram;
pub mod error;
pub mod format;
pub mod framing;
pub mod invariants;
pub mod moves;
pub mod reduce;

pub use catalog::{example, EXAMPLE_NAMES};
pub use diagram::{
    ComponentId, Diagram, FramedComponent, Letter, LinkingMatrix, Sign, SourceDiagram, Word,
};
pub use error::{Error, Result};
pub use format::{
    parse_certificate, parse_diagram, print_certificate, print_diagram, print_diagram_file,
    print_source_diagram, DiagramFile,
};
pub use framing::{project_4d, DimSpec, Framing, FramingGroup};
pub use invariants::{
    boundary_description, boundary_matrix, chain_homology, equivalent, handle_complex, homology,
    pi_1_presentation, pi_km1, smith_normal_form, weak_equiv, AbelianGroup, BoundaryDescription,
    IntMatrix, Presentation, SmithNormalForm, Verdict,
};
pub use moves::{apply, apply_move, Certificate, Move};
pub use reduce::{
    normal_form_diagram, recognize, reduce, reduce_general, reduce_general_with_budget,
    reduce_one_dotted, reduce_simple, Factor, ManifoldName, NormalForm, DEFAULT_SLIDE_BUDGET,
};
