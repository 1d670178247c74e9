//! The dependency map, its dolmatic extension, and the closure iteration.
//!
//! A cell `s` depends on a set `S` when some line `L` through `s` has
//! `L \ {s} ⊆ S`. Every iteration adds all currently dependent cells at once;
//! the depth of `S` is the number of iterations that add anything.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{
    parse_board, render_board, BoardSize, Cell, CellSet, Geometry, LineId, ParseError,
    RenderStyle, StepLabels,
};

/// `general_dolmatic_extension` refuses sets with more cells than this.
pub const SUBSET_ENUMERATION_LIMIT: usize = 18;

#[derive(Debug, Error)]
pub enum ClosureError {
    #[error("subset enumeration over {cells} cells exceeds the limit of {SUBSET_ENUMERATION_LIMIT}")]
    SubsetBudgetExceeded { cells: usize },
    #[error("trace document: {0}")]
    Parse(#[from] ParseError),
    #[error("trace document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("trace document does not match the engine: {0}")]
    Mismatch(String),
}

/// Bit-level dependency map over a line table.
#[inline]
pub(crate) fn dependent_bits(state: u128, lines: &[u128]) -> u128 {
    let mut out = 0;
    for &line in lines {
        let missing = line & !state;
        if missing == 0 {
            out |= line;
        } else if missing & (missing - 1) == 0 {
            out |= missing;
        }
    }
    out
}

/// Cells that would be added to `state` by one iteration.
#[inline]
pub(crate) fn additions_bits(state: u128, lines: &[u128]) -> u128 {
    let mut out = 0;
    for &line in lines {
        let missing = line & !state;
        if missing != 0 && missing & (missing - 1) == 0 {
            out |= missing;
        }
    }
    out
}

/// Depth and closure of a raw bit pattern.
#[inline]
pub(crate) fn closure_bits(mut state: u128, lines: &[u128]) -> (usize, u128) {
    let mut depth = 0;
    loop {
        let added = additions_bits(state, lines);
        if added == 0 {
            return (depth, state);
        }
        state |= added;
        depth += 1;
    }
}

/// The dependency map: every cell that completes a line with cells of `state`.
///
/// Cells of `state` itself are included only when they complete a line, so
/// the result need not contain `state`.
pub fn dependent_set(state: &CellSet) -> CellSet {
    let geo = Geometry::of(state.size());
    CellSet::from_bits_unchecked(state.size(), dependent_bits(state.bits(), &geo.line_bits))
}

/// One iteration of the dolmatic extension: `state ∪ dependent_set(state)`.
pub fn dolmatic_step(state: &CellSet) -> CellSet {
    *state | dependent_set(state)
}

/// The literal dolmatic extension, `A ∪ ⋃ { φ(S) : S ⊆ A }`, by enumerating
/// every subset. Only meant as an oracle for [`dolmatic_step`].
pub fn general_dolmatic_extension(state: &CellSet) -> Result<CellSet, ClosureError> {
    let cells = state.len();
    if cells > SUBSET_ENUMERATION_LIMIT {
        return Err(ClosureError::SubsetBudgetExceeded { cells });
    }
    let lines = &Geometry::of(state.size()).line_bits;
    let a = state.bits();
    let mut acc = a;
    // Walk every submask of `a`, including `a` itself and the empty set.
    let mut sub = a;
    loop {
        acc |= dependent_bits(sub, lines);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & a;
    }
    Ok(CellSet::from_bits_unchecked(state.size(), acc))
}

pub fn depth(start: &CellSet) -> usize {
    closure_bits(start.bits(), &Geometry::of(start.size()).line_bits).0
}

/// The closure without the trace.
pub fn closure_set(start: &CellSet) -> CellSet {
    let (_, bits) = closure_bits(start.bits(), &Geometry::of(start.size()).line_bits);
    CellSet::from_bits_unchecked(start.size(), bits)
}

pub fn is_closed(set: &CellSet) -> bool {
    dependent_set(set).is_subset(set)
}

pub fn spans(set: &CellSet) -> bool {
    closure_set(set).is_full()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based.
    pub index: usize,
    pub added: CellSet,
    /// For each added cell, the lines whose other cells were all present
    /// before this step.
    pub firing: BTreeMap<Cell, Vec<LineId>>,
    /// Lines complete after this step but not before.
    pub completed: Vec<LineId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTrace {
    pub start: CellSet,
    pub steps: Vec<TraceStep>,
    pub closure: CellSet,
    pub depth: usize,
}

/// Iterate the dolmatic step to its fixpoint, recording every step.
pub fn closure(start: &CellSet) -> ClosureTrace {
    let size = start.size();
    let geo = Geometry::of(size);
    let mut state = start.bits();
    let mut steps = Vec::new();

    loop {
        let added = additions_bits(state, &geo.line_bits);
        if added == 0 {
            break;
        }
        let next = state | added;
        let added_set = CellSet::from_bits_unchecked(size, added);

        let firing = added_set
            .cells()
            .map(|cell| {
                let bit = 1u128 << cell.index(size);
                let lines = geo
                    .lines
                    .iter()
                    .filter(|l| l.mask.bits() & bit != 0 && l.mask.bits() & !state == bit)
                    .map(|l| l.id)
                    .collect();
                (cell, lines)
            })
            .collect();

        let completed = geo
            .lines
            .iter()
            .filter(|l| l.mask.bits() & !next == 0 && l.mask.bits() & !state != 0)
            .map(|l| l.id)
            .collect();

        steps.push(TraceStep {
            index: steps.len() + 1,
            added: added_set,
            firing,
            completed,
        });
        state = next;
    }

    ClosureTrace {
        start: *start,
        depth: steps.len(),
        steps,
        closure: CellSet::from_bits_unchecked(size, state),
    }
}

impl ClosureTrace {
    pub fn size(&self) -> BoardSize {
        self.start.size()
    }

    pub fn spans(&self) -> bool {
        self.closure.is_full()
    }

    /// Step number of every cell the iteration added.
    pub fn labels(&self) -> StepLabels {
        self.steps
            .iter()
            .flat_map(|s| s.added.cells().map(move |c| (c, s.index)))
            .collect()
    }

    /// Number of completed lines per step.
    pub fn completions_per_step(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.completed.len()).collect()
    }

    /// Figure-style rendering: occupied cells, then step numbers, `.` for
    /// cells the closure never reaches.
    pub fn render(&self, style: RenderStyle) -> String {
        render_board(&self.start, Some(&self.labels()), style)
            .expect("trace labels only cover cells outside the start set")
    }

    pub fn to_document(&self) -> TraceDocument {
        let board = |set: &CellSet| {
            render_board(set, None, RenderStyle::Ascii).expect("unlabeled render cannot fail")
        };
        TraceDocument {
            n: self.size().side(),
            start: board(&self.start),
            depth: self.depth,
            steps: self
                .steps
                .iter()
                .map(|s| StepDocument {
                    index: s.index,
                    added: s.added.cells().map(|c| [c.row, c.col]).collect(),
                    firing: s.firing.values().cloned().collect(),
                    completed: s.completed.clone(),
                })
                .collect(),
            final_board: board(&self.closure),
        }
    }
}

/// Serialized form of a [`ClosureTrace`].
///
/// `firing[i]` lists the firing lines of `added[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub n: usize,
    pub start: String,
    pub depth: usize,
    pub steps: Vec<StepDocument>,
    #[serde(rename = "final")]
    pub final_board: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub index: usize,
    pub added: Vec<[usize; 2]>,
    pub firing: Vec<Vec<LineId>>,
    pub completed: Vec<LineId>,
}

impl TraceDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ClosureError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-run the engine on the recorded start board and require an
    /// identical document.
    pub fn verify(&self) -> Result<ClosureTrace, ClosureError> {
        let (size, start) = parse_board(&self.start)?;
        if size.side() != self.n {
            return Err(ClosureError::Mismatch(format!(
                "n={} but start board has side {}",
                self.n,
                size.side()
            )));
        }
        let trace = closure(&start);
        let fresh = trace.to_document();
        if &fresh != self {
            return Err(ClosureError::Mismatch(format!(
                "recorded depth {} vs engine depth {}",
                self.depth, fresh.depth
            )));
        }
        Ok(trace)
    }
}
