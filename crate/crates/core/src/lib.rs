//! Bingo closure on `n × n` boards.
//!
//! A cell depends on a set of cells when it completes a row, column or
//! diagonal with them. Repeatedly adding every dependent cell reaches the
//! closure; the number of productive rounds is the depth. This crate
//! computes closures and their traces, builds spanning boards of depth `2n`,
//! and searches small boards exhaustively for the maximum depth.
//!
//! ```
//! use bingo_closure::{closure, parse_board};
//!
//! let (_, board) = parse_board("#.#\n...\n#..").unwrap();
//! let trace = closure(&board);
//! assert_eq!(trace.depth, 2);
//! assert!(trace.spans());
//! ```

pub mod cli;
pub mod closure;
pub mod constructions;
pub mod grid;
pub mod laws;
pub mod sampling;
pub mod search;

pub use closure::{
    closure, closure_set, depth, dependent_set, dolmatic_step, general_dolmatic_extension,
    is_closed, spans, ClosureError, ClosureTrace, TraceDocument, TraceStep,
};
pub use constructions::{
    catalog, catalog_board, construct_max_depth, final_rectangle, wrap_ring, CatalogBoard,
    ConstructionError, RingSpec, RingWidth,
};
pub use grid::{
    dihedral_transforms, make_lines, parse_board, render_board, BoardSize, Cell, CellSet,
    GridError, Line, LineId, LineKind, ParseError, RenderStyle, StepLabels,
};
pub use laws::{check_laws, LawReport, SetMap};
pub use search::{
    bound_sweep, canonical_form, lemma1_sweep, max_depth_exhaustive, max_depth_sampled,
    BoundViolation, Scope, SearchConfig, SearchError, SearchReport, SweepMode,
};
