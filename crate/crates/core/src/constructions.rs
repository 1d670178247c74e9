//! Catalog of the reference boards and the spiral-ring construction of
//! depth-`2n` spanning sets.
//!
//! Nothing in here is trusted on construction: every board leaving
//! [`wrap_ring`] or [`construct_max_depth`] has been closed by the engine and
//! compared cell-for-cell against its expected step labels.

use std::fmt;

use thiserror::Error;

use crate::closure::{closure, ClosureTrace};
use crate::grid::{
    render_board, BoardSize, Cell, CellSet, GridError, LineKind, RenderStyle, StepLabels,
};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("max-depth constructions cover 5 <= n <= 11, got n={0}")]
    OutOfRange(usize),
    #[error("base board {name}: {detail}")]
    Precondition { name: String, detail: String },
    #[error("board {name} failed verification: {detail}")]
    Verification { name: String, detail: String },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A named board together with the step labels its closure must reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogBoard {
    pub name: String,
    pub size: BoardSize,
    /// Step at which each empty cell is reached; unreached cells are absent.
    pub labels: StepLabels,
    pub occupied: CellSet,
    pub expected_depth: usize,
    pub expected_spanning: bool,
}

impl CatalogBoard {
    /// A spanning board given by its step labels; every unlabeled cell is
    /// occupied.
    fn spanning(name: &str, n: usize, labels: &[((usize, usize), usize)]) -> CatalogBoard {
        let size = BoardSize::new(n).expect("catalog sizes are valid");
        let labels: StepLabels = labels.iter().map(|&(c, v)| (Cell::from(c), v)).collect();
        let empty = CellSet::from_cells(size, labels.keys().copied()).expect("catalog cells in range");
        CatalogBoard {
            name: name.to_string(),
            size,
            expected_depth: labels.values().copied().max().unwrap_or(0),
            occupied: !empty,
            labels,
            expected_spanning: true,
        }
    }

    pub fn trace(&self) -> ClosureTrace {
        closure(&self.occupied)
    }

    /// Close the board and compare depth, spanning flag and every label.
    pub fn verify(&self) -> Result<ClosureTrace, ConstructionError> {
        let trace = self.trace();
        let fail = |detail: String| ConstructionError::Verification {
            name: self.name.clone(),
            detail,
        };
        if trace.depth != self.expected_depth {
            return Err(fail(format!(
                "depth {} but expected {}",
                trace.depth, self.expected_depth
            )));
        }
        if trace.spans() != self.expected_spanning {
            return Err(fail(format!("spanning = {}", trace.spans())));
        }
        let labels = trace.labels();
        if labels != self.labels {
            let cell = self
                .labels
                .keys()
                .chain(labels.keys())
                .find(|c| labels.get(c) != self.labels.get(c))
                .copied();
            return Err(fail(match cell {
                Some(c) => format!(
                    "cell {c} reached at step {:?}, expected {:?}",
                    labels.get(&c),
                    self.labels.get(&c)
                ),
                None => "label maps differ".to_string(),
            }));
        }
        Ok(trace)
    }

    /// Column of the single step-1 cell, if step 1 adds exactly one cell.
    pub fn first_column(&self) -> Option<usize> {
        let mut first = self.labels.iter().filter(|(_, &v)| v == 1).map(|(c, _)| c.col);
        match (first.next(), first.next()) {
            (Some(col), None) => Some(col),
            _ => None,
        }
    }

    /// Plain board text (occupied cells only).
    pub fn board_text(&self) -> String {
        render_board(&self.occupied, None, RenderStyle::Ascii).expect("unlabeled render")
    }

    /// Figure-style text with the expected step labels.
    pub fn labeled_text(&self, style: RenderStyle) -> String {
        render_board(&self.occupied, Some(&self.labels), style)
            .expect("catalog labels lie outside the occupied cells")
    }
}

impl fmt::Display for CatalogBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (n={}, depth {}{})",
            self.name,
            self.size,
            self.expected_depth,
            if self.expected_spanning { ", spanning" } else { "" }
        )
    }
}

pub const CATALOG_NAMES: [&str; 7] = ["board1", "board2", "board3", "board4", "boardS", "board9", "board10"];

const BOARD2: [((usize, usize), usize); 11] = [
    ((0, 2), 1),
    ((0, 0), 2),
    ((4, 4), 3),
    ((3, 4), 4),
    ((3, 1), 5),
    ((4, 1), 6),
    ((4, 0), 7),
    ((1, 3), 8),
    ((1, 0), 9),
    ((2, 3), 9),
    ((2, 0), 10),
];

const BOARD_S: [((usize, usize), usize); 13] = [
    ((0, 3), 1),
    ((0, 0), 2),
    ((5, 5), 3),
    ((4, 5), 4),
    ((4, 1), 5),
    ((3, 1), 6),
    ((3, 2), 7),
    ((5, 2), 8),
    ((5, 0), 9),
    ((1, 4), 10),
    ((1, 0), 11),
    ((2, 4), 11),
    ((2, 0), 12),
];

fn board1() -> CatalogBoard {
    let size = BoardSize::new(5).unwrap();
    let occupied = CellSet::from_cells(
        size,
        [
            (0, 0),
            (0, 2),
            (0, 4),
            (1, 0),
            (1, 4),
            (2, 2),
            (3, 0),
            (3, 1),
            (3, 3),
            (3, 4),
            (4, 0),
            (4, 4),
        ],
    )
    .unwrap();
    // Regression values from the engine: the five dependents, then the
    // middle of row 1, then the middle of row 4.
    let labels = [
        ((1, 1), 1),
        ((1, 3), 1),
        ((2, 0), 1),
        ((2, 4), 1),
        ((3, 2), 1),
        ((1, 2), 2),
        ((4, 2), 3),
    ]
    .into_iter()
    .map(|(c, v)| (Cell::from(c), v))
    .collect();
    CatalogBoard {
        name: "board1".into(),
        size,
        labels,
        occupied,
        expected_depth: 3,
        expected_spanning: false,
    }
}

/// Base labels shifted by `(+2, +2)` and delayed by 8 steps, plus the ring.
fn spiral(name: &str, n: usize, base: &[((usize, usize), usize)], ring: &[((usize, usize), usize)]) -> CatalogBoard {
    let labels: Vec<_> = ring
        .iter()
        .copied()
        .chain(base.iter().map(|&((r, c), v)| ((r + 2, c + 2), v + 8)))
        .collect();
    CatalogBoard::spanning(name, n, &labels)
}

/// The reference boards, in [`CATALOG_NAMES`] order.
pub fn catalog() -> Vec<CatalogBoard> {
    vec![
        board1(),
        CatalogBoard::spanning("board2", 5, &BOARD2),
        CatalogBoard::spanning(
            "board3",
            3,
            &[((2, 2), 1), ((0, 2), 2), ((1, 1), 3), ((0, 0), 4), ((0, 1), 4), ((1, 0), 4)],
        ),
        CatalogBoard::spanning(
            "board4",
            4,
            &[
                ((0, 1), 1),
                ((0, 3), 2),
                ((3, 3), 3),
                ((2, 2), 4),
                ((3, 0), 4),
                ((1, 2), 5),
                ((2, 0), 5),
                ((1, 0), 6),
            ],
        ),
        CatalogBoard::spanning("boardS", 6, &BOARD_S),
        spiral(
            "board9",
            9,
            &BOARD2,
            &[((8, 8), 1), ((8, 0), 2), ((0, 0), 3), ((0, 7), 4), ((7, 7), 5), ((7, 1), 6), ((1, 1), 7), ((1, 4), 8)],
        ),
        spiral(
            "board10",
            10,
            &BOARD_S,
            &[((9, 9), 1), ((9, 0), 2), ((0, 0), 3), ((0, 8), 4), ((8, 8), 5), ((8, 1), 6), ((1, 1), 7), ((1, 5), 8)],
        ),
    ]
}

pub fn catalog_board(name: &str) -> Option<CatalogBoard> {
    catalog().into_iter().find(|b| b.name == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingWidth {
    /// Adds one row and column on every side (`n + 2`); 4 gates.
    One,
    /// Adds two rows and columns on every side (`n + 4`); 8 gates.
    Two,
}

impl RingWidth {
    pub fn cells(self) -> usize {
        match self {
            RingWidth::One => 1,
            RingWidth::Two => 2,
        }
    }
}

impl TryFrom<usize> for RingWidth {
    type Error = usize;
    fn try_from(value: usize) -> Result<Self, usize> {
        match value {
            1 => Ok(RingWidth::One),
            2 => Ok(RingWidth::Two),
            other => Err(other),
        }
    }
}

/// The empty cells of a ring, in the order they fill.
///
/// Gates go around the board: last column, bottom row, first column, top
/// row, and for width two the same again one band further in. The final
/// gate sits in the column of the base board's first firing cell, holding
/// the base back until the ring is done.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub width: RingWidth,
    pub gate_cells: Vec<Cell>,
    pub base_first_column: usize,
}

impl RingSpec {
    pub fn new(base_side: usize, width: RingWidth, base_first_column: usize) -> RingSpec {
        let c = base_first_column;
        let gate_cells = match width {
            RingWidth::One => {
                let last = base_side + 1;
                vec![
                    Cell::new(last, last),
                    Cell::new(last, 0),
                    Cell::new(0, 0),
                    Cell::new(0, c + 1),
                ]
            }
            RingWidth::Two => {
                let last = base_side + 3;
                vec![
                    Cell::new(last, last),
                    Cell::new(last, 0),
                    Cell::new(0, 0),
                    Cell::new(0, last - 1),
                    Cell::new(last - 1, last - 1),
                    Cell::new(last - 1, 1),
                    Cell::new(1, 1),
                    Cell::new(1, c + 2),
                ]
            }
        };
        RingSpec {
            width,
            gate_cells,
            base_first_column,
        }
    }

    pub fn steps(&self) -> usize {
        self.gate_cells.len()
    }
}

/// Check that `base` can be wrapped: an engine-verified spanning board of
/// depth `2n`, whose first step adds one cell along a column, and whose
/// trace is a chain. Returns the base trace and that column.
fn check_base(base: &CatalogBoard) -> Result<(ClosureTrace, usize), ConstructionError> {
    let precondition = |detail: String| ConstructionError::Precondition {
        name: base.name.clone(),
        detail,
    };
    let trace = base.verify()?;
    let n = base.size.side();
    if !trace.spans() || trace.depth != 2 * n {
        return Err(precondition(format!(
            "needs a spanning board of depth {}, got depth {}",
            2 * n,
            trace.depth
        )));
    }
    let first = &trace.steps[0];
    if first.added.len() != 1 {
        return Err(precondition("step 1 must add exactly one cell".into()));
    }
    let (cell, lines) = first.firing.iter().next().expect("one added cell");
    if !lines.iter().any(|l| l.kind == LineKind::Col) {
        return Err(precondition("step 1 does not fire along a column".into()));
    }
    if !is_chain(&trace) {
        return Err(precondition("trace is not a chain".into()));
    }
    let column = cell.col;
    Ok((trace, column))
}

/// Every step after the first fires along a line through a cell added in
/// the step before.
pub fn is_chain(trace: &ClosureTrace) -> bool {
    let lines = &crate::grid::Geometry::of(trace.size()).lines;
    trace.steps.windows(2).all(|pair| {
        let previous = pair[0].added;
        pair[1].firing.values().flatten().any(|id| {
            lines
                .iter()
                .find(|l| l.id == *id)
                .is_some_and(|l| !(l.mask & previous).is_empty())
        })
    })
}

/// Surround `base` with a gated ring and verify the result has depth `2N`
/// on the enlarged side `N`.
pub fn wrap_ring(base: &CatalogBoard, width: RingWidth) -> Result<CatalogBoard, ConstructionError> {
    let (_, first_column) = check_base(base)?;
    let ring = RingSpec::new(base.size.side(), width, first_column);
    let offset = width.cells();
    let outer = BoardSize::new(base.size.side() + 2 * offset)?;
    let delay = ring.steps();

    let mut labels: StepLabels = ring
        .gate_cells
        .iter()
        .enumerate()
        .map(|(i, &cell)| (cell, i + 1))
        .collect();
    for (cell, step) in &base.labels {
        labels.insert(Cell::new(cell.row + offset, cell.col + offset), step + delay);
    }
    let empty = CellSet::from_cells(outer, labels.keys().copied())?;

    let board = CatalogBoard {
        name: format!("{}+ring{}", base.name, offset),
        size: outer,
        labels,
        occupied: !empty,
        expected_depth: base.expected_depth + delay,
        expected_spanning: true,
    };
    let trace = board.verify()?;
    if trace.depth != 2 * outer.side() || !is_chain(&trace) {
        return Err(ConstructionError::Verification {
            name: board.name,
            detail: format!("depth {} is not {} or the trace is not a chain", trace.depth, 2 * outer.side()),
        });
    }
    Ok(board)
}

/// Ring widths to apply, innermost first, to grow a base board to side `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RingPlan {
    /// Width-2 rings while they fit, then one width-1 ring if needed.
    #[default]
    Auto,
    /// Only rings of the given width.
    Only(RingWidth),
}

fn plan_widths(gap: usize, plan: RingPlan) -> Option<Vec<RingWidth>> {
    match plan {
        RingPlan::Auto => {
            let mut widths = vec![RingWidth::Two; gap / 4];
            if gap % 4 == 2 {
                widths.push(RingWidth::One);
            }
            Some(widths)
        }
        RingPlan::Only(RingWidth::Two) => gap.is_multiple_of(4).then(|| vec![RingWidth::Two; gap / 4]),
        RingPlan::Only(RingWidth::One) => Some(vec![RingWidth::One; gap / 2]),
    }
}

/// A verified spanning board of depth `2n` for `5 ≤ n ≤ 11`.
pub fn construct_max_depth(n: usize) -> Result<CatalogBoard, ConstructionError> {
    construct_with_plan(n, RingPlan::Auto)
}

pub fn construct_with_plan(n: usize, plan: RingPlan) -> Result<CatalogBoard, ConstructionError> {
    if !(5..=crate::grid::MAX_SIDE).contains(&n) {
        return Err(ConstructionError::OutOfRange(n));
    }
    let base_name = if n % 2 == 1 { "board2" } else { "boardS" };
    let base = catalog_board(base_name).expect("base boards are in the catalog");
    let gap = n - base.size.side();
    let widths = plan_widths(gap, plan).ok_or_else(|| ConstructionError::Precondition {
        name: base_name.into(),
        detail: format!("cannot reach n={n} with the requested ring width"),
    })?;
    let mut board = base;
    for width in widths {
        board = wrap_ring(&board, width)?;
    }
    check_extremal_trace(&board.verify()?).map_err(|detail| ConstructionError::Verification {
        name: board.name.clone(),
        detail,
    })?;
    Ok(board)
}

/// Structure of a maximum-depth spanning trace on side `n`: depth `2n`,
/// one completed line per step except two each in the last two steps, a
/// chain of firing lines, and a four-cell final rectangle filled by the
/// last three steps.
pub fn check_extremal_trace(trace: &ClosureTrace) -> Result<(), String> {
    let n = trace.size().side();
    if !trace.spans() {
        return Err("closure is not the whole board".into());
    }
    if trace.depth != 2 * n {
        return Err(format!("depth {} is not {}", trace.depth, 2 * n));
    }
    let mut expected = vec![1; 2 * n - 2];
    expected.extend([2, 2]);
    let per_step = trace.completions_per_step();
    if per_step != expected {
        return Err(format!("completed lines per step {per_step:?}"));
    }
    if !is_chain(trace) {
        return Err("trace is not a chain".into());
    }
    let tail: usize = trace.steps[trace.depth - 3..].iter().map(|s| s.added.len()).sum();
    if tail != 4 || final_rectangle(trace).is_none() {
        return Err(format!("last three steps add {tail} cells without a final rectangle"));
    }
    Ok(())
}

/// The four cells completing the last rectangle of a spanning trace.
///
/// Looks among the cells added in the last three steps for two rows × two
/// columns containing every cell of the final step. Returns the corners in
/// row-major order when exactly one such rectangle exists.
pub fn final_rectangle(trace: &ClosureTrace) -> Option<[Cell; 4]> {
    if !trace.spans() || trace.depth < 3 {
        return None;
    }
    let tail = &trace.steps[trace.depth - 3..];
    let last = tail[2].added;
    let pool: Vec<Cell> = tail.iter().flat_map(|s| s.added.cells()).collect();

    let mut found = None;
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i + 1..] {
            // `a` and `b` as opposite corners.
            if a.row == b.row || a.col == b.col {
                continue;
            }
            let c = Cell::new(a.row, b.col);
            let d = Cell::new(b.row, a.col);
            if !pool.contains(&c) || !pool.contains(&d) {
                continue;
            }
            let mut corners = [*a, *b, c, d];
            corners.sort();
            if !last.cells().all(|z| corners.contains(&z)) {
                continue;
            }
            match found {
                None => found = Some(corners),
                Some(prev) if prev == corners => {}
                Some(_) => return None,
            }
        }
    }
    found
}
