//! Board geometry: cells, lines, bit layout, the symmetries of the square and
//! the plain-text board format.
//!
//! A board of side `n` has `n²` cells laid out row-major, cell `(r, c)` at bit
//! `r * n + c`. Every subset of the board fits in a single `u128`, which is
//! what caps the side length at 11.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported side length (`11² = 121` bits fit in a `u128`).
pub const MAX_SIDE: usize = 11;

/// Step labels keyed by cell, as printed in closure traces.
pub type StepLabels = BTreeMap<Cell, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("board side {0} is outside 1..={MAX_SIDE}")]
    InvalidSize(usize),
    #[error("cell ({row}, {col}) is outside a {side}x{side} board")]
    CellOutOfRange { row: usize, col: usize, side: usize },
    #[error("bit pattern has bits set beyond the {cells} cells of the board")]
    StrayBits { cells: usize },
    #[error("cell ({}, {}) is occupied and cannot carry a step label", .0.row, .0.col)]
    LabelOnOccupied(Cell),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("board text contains no rows")]
    Empty,
    #[error("malformed size header {0:?}; expected `n=K`")]
    BadHeader(String),
    #[error("board side {0} is outside 1..={MAX_SIDE}")]
    SizeOutOfRange(usize),
    #[error("header declares n={declared} but the board has {rows} rows")]
    DeclaredSizeMismatch { declared: usize, rows: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("board has {rows} rows of {width} cells; boards must be square")]
    NotSquare { rows: usize, width: usize },
    #[error("illegal character {ch:?} at row {row}, column {col}")]
    IllegalChar { row: usize, col: usize, ch: char },
}

/// Side length of a square board, `1..=MAX_SIDE`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoardSize(u8);

impl BoardSize {
    pub fn new(side: usize) -> Result<Self, GridError> {
        if (1..=MAX_SIDE).contains(&side) {
            Ok(BoardSize(side as u8))
        } else {
            Err(GridError::InvalidSize(side))
        }
    }

    #[inline]
    pub fn side(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn cell_count(self) -> usize {
        self.side() * self.side()
    }

    /// `2n + 2`: every row, every column and the two diagonals.
    #[inline]
    pub fn line_count(self) -> usize {
        2 * self.side() + 2
    }

    #[inline]
    pub(crate) fn full_bits(self) -> u128 {
        let cells = self.cell_count();
        if cells == 128 {
            u128::MAX
        } else {
            (1u128 << cells) - 1
        }
    }

    pub fn all() -> impl Iterator<Item = BoardSize> {
        (1..=MAX_SIDE as u8).map(BoardSize)
    }
}

impl fmt::Display for BoardSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A square of the grid, `(row, col)` with row 0 at the top.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    #[inline]
    pub fn index(self, size: BoardSize) -> usize {
        self.row * size.side() + self.col
    }

    #[inline]
    pub fn from_index(index: usize, size: BoardSize) -> Self {
        Cell::new(index / size.side(), index % size.side())
    }

    pub fn in_bounds(self, size: BoardSize) -> bool {
        self.row < size.side() && self.col < size.side()
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell::new(row, col)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// A subset of the cells of one board.
///
/// Ordering compares the size first and then the bit pattern as an unsigned
/// integer, so for a fixed size it is the lexicographic order used for
/// canonical forms and witness lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet {
    size: BoardSize,
    bits: u128,
}

impl CellSet {
    pub fn empty(size: BoardSize) -> Self {
        CellSet { size, bits: 0 }
    }

    pub fn full(size: BoardSize) -> Self {
        CellSet {
            size,
            bits: size.full_bits(),
        }
    }

    pub fn from_bits(size: BoardSize, bits: u128) -> Result<Self, GridError> {
        if bits & !size.full_bits() != 0 {
            return Err(GridError::StrayBits {
                cells: size.cell_count(),
            });
        }
        Ok(CellSet { size, bits })
    }

    /// Callers guarantee that `bits` lies inside the board.
    #[inline]
    pub(crate) fn from_bits_unchecked(size: BoardSize, bits: u128) -> Self {
        debug_assert_eq!(bits & !size.full_bits(), 0);
        CellSet { size, bits }
    }

    pub fn from_cells<I, C>(size: BoardSize, cells: I) -> Result<Self, GridError>
    where
        I: IntoIterator<Item = C>,
        C: Into<Cell>,
    {
        let mut set = CellSet::empty(size);
        for cell in cells {
            set.insert(cell.into())?;
        }
        Ok(set)
    }

    #[inline]
    pub fn size(&self) -> BoardSize {
        self.size
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn insert(&mut self, cell: Cell) -> Result<bool, GridError> {
        if !cell.in_bounds(self.size) {
            return Err(GridError::CellOutOfRange {
                row: cell.row,
                col: cell.col,
                side: self.size.side(),
            });
        }
        let bit = 1u128 << cell.index(self.size);
        let fresh = self.bits & bit == 0;
        self.bits |= bit;
        Ok(fresh)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.in_bounds(self.size) && self.bits >> cell.index(self.size) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == self.size.full_bits()
    }

    #[inline]
    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.check_size(other);
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        *self | *other
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        *self & *other
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        *self - *other
    }

    /// Complement within the board.
    pub fn complement(&self) -> CellSet {
        !*self
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let size = self.size;
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let index = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(Cell::from_index(index, size))
        })
    }

    #[inline]
    fn check_size(&self, other: &CellSet) {
        assert_eq!(
            self.size, other.size,
            "cell sets from boards of different sizes"
        );
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CellSet")
            .field("n", &self.size.side())
            .field("cells", &self.cells().map(|c| (c.row, c.col)).collect::<Vec<_>>())
            .finish()
    }
}

impl BitOr for CellSet {
    type Output = CellSet;
    fn bitor(self, rhs: CellSet) -> CellSet {
        self.check_size(&rhs);
        CellSet {
            size: self.size,
            bits: self.bits | rhs.bits,
        }
    }
}

impl BitAnd for CellSet {
    type Output = CellSet;
    fn bitand(self, rhs: CellSet) -> CellSet {
        self.check_size(&rhs);
        CellSet {
            size: self.size,
            bits: self.bits & rhs.bits,
        }
    }
}

impl Sub for CellSet {
    type Output = CellSet;
    fn sub(self, rhs: CellSet) -> CellSet {
        self.check_size(&rhs);
        CellSet {
            size: self.size,
            bits: self.bits & !rhs.bits,
        }
    }
}

impl Not for CellSet {
    type Output = CellSet;
    fn not(self) -> CellSet {
        CellSet {
            size: self.size,
            bits: !self.bits & self.size.full_bits(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineKind {
    Row,
    Col,
    MainDiag,
    AntiDiag,
}

/// Identity of a line: diagonals always carry index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineId {
    pub kind: LineKind,
    pub index: usize,
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LineKind::Row => write!(f, "row {}", self.index),
            LineKind::Col => write!(f, "col {}", self.index),
            LineKind::MainDiag => f.write_str("main diagonal"),
            LineKind::AntiDiag => f.write_str("anti-diagonal"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub id: LineId,
    pub mask: CellSet,
}

impl Line {
    pub fn kind(&self) -> LineKind {
        self.id.kind
    }

    pub fn index(&self) -> usize {
        self.id.index
    }
}

/// All `2n + 2` lines: rows, then columns, then the main and anti-diagonal.
pub fn make_lines(size: BoardSize) -> Vec<Line> {
    let n = size.side();
    let line = |kind, index, cells: &mut dyn Iterator<Item = Cell>| {
        let mut mask = CellSet::empty(size);
        for cell in cells {
            mask.bits |= 1u128 << cell.index(size);
        }
        Line {
            id: LineId { kind, index },
            mask,
        }
    };
    let mut lines = Vec::with_capacity(size.line_count());
    for r in 0..n {
        lines.push(line(LineKind::Row, r, &mut (0..n).map(|c| Cell::new(r, c))));
    }
    for c in 0..n {
        lines.push(line(LineKind::Col, c, &mut (0..n).map(|r| Cell::new(r, c))));
    }
    lines.push(line(LineKind::MainDiag, 0, &mut (0..n).map(|i| Cell::new(i, i))));
    lines.push(line(
        LineKind::AntiDiag,
        0,
        &mut (0..n).map(|i| Cell::new(i, n - 1 - i)),
    ));
    lines
}

/// The eight symmetries of the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    Identity,
    /// Quarter turn clockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror left-right.
    FlipColumns,
    /// Mirror top-bottom.
    FlipRows,
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::FlipColumns,
        Symmetry::FlipRows,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    pub fn apply_cell(self, cell: Cell, size: BoardSize) -> Cell {
        let last = size.side() - 1;
        let (r, c) = (cell.row, cell.col);
        let (row, col) = match self {
            Symmetry::Identity => (r, c),
            Symmetry::Rot90 => (c, last - r),
            Symmetry::Rot180 => (last - r, last - c),
            Symmetry::Rot270 => (last - c, r),
            Symmetry::FlipColumns => (r, last - c),
            Symmetry::FlipRows => (last - r, c),
            Symmetry::Transpose => (c, r),
            Symmetry::AntiTranspose => (last - c, last - r),
        };
        Cell::new(row, col)
    }
}

/// A symmetry of the square realised as a permutation of cell indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPermutation {
    pub symmetry: Symmetry,
    size: BoardSize,
    image: Vec<usize>,
}

impl CellPermutation {
    pub fn new(symmetry: Symmetry, size: BoardSize) -> Self {
        let image = (0..size.cell_count())
            .map(|i| symmetry.apply_cell(Cell::from_index(i, size), size).index(size))
            .collect();
        CellPermutation {
            symmetry,
            size,
            image,
        }
    }

    /// Index of the image of cell `index`.
    pub fn image_of(&self, index: usize) -> usize {
        self.image[index]
    }

    pub fn apply(&self, set: &CellSet) -> CellSet {
        assert_eq!(set.size, self.size, "permutation applied to wrong board size");
        let mut bits = 0u128;
        let mut rest = set.bits;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            bits |= 1u128 << self.image[i];
        }
        CellSet::from_bits_unchecked(self.size, bits)
    }
}

/// Identity, the three rotations and the four reflections, in
/// [`Symmetry::ALL`] order.
pub fn dihedral_transforms(size: BoardSize) -> Vec<CellPermutation> {
    Symmetry::ALL
        .iter()
        .map(|&s| CellPermutation::new(s, size))
        .collect()
}

/// Precomputed line table for one board size, shared by the hot loops.
#[derive(Debug)]
pub struct Geometry {
    pub size: BoardSize,
    pub lines: Vec<Line>,
    pub(crate) line_bits: Vec<u128>,
    pub(crate) full: u128,
}

impl Geometry {
    fn build(size: BoardSize) -> Self {
        let lines = make_lines(size);
        let line_bits = lines.iter().map(|l| l.mask.bits).collect();
        Geometry {
            size,
            lines,
            line_bits,
            full: size.full_bits(),
        }
    }

    pub fn of(size: BoardSize) -> &'static Geometry {
        static TABLES: OnceLock<Vec<Geometry>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| BoardSize::all().map(Geometry::build).collect());
        &tables[size.side() - 1]
    }

    /// Lines passing through `cell`.
    pub fn lines_through(&self, cell: Cell) -> impl Iterator<Item = &Line> + '_ {
        let bit = 1u128 << cell.index(self.size);
        self.lines.iter().filter(move |l| l.mask.bits & bit != 0)
    }
}

/// Parse the plain board format: an optional `n=K` header followed by `n`
/// rows of `n` characters from `#` (occupied) and `.` (empty).
pub fn parse_board(text: &str) -> Result<(BoardSize, CellSet), ParseError> {
    let mut rows: Vec<&str> = text
        .lines()
        .map(|l| l.trim_matches(|c: char| c.is_ascii_whitespace()))
        .filter(|l| !l.is_empty())
        .collect();
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }

    let declared = match rows[0].strip_prefix("n=") {
        Some(value) => {
            let n = value
                .trim()
                .parse::<usize>()
                .map_err(|_| ParseError::BadHeader(rows[0].to_string()))?;
            rows.remove(0);
            Some(n)
        }
        None => None,
    };

    if let Some(n) = declared {
        if !(1..=MAX_SIDE).contains(&n) {
            return Err(ParseError::SizeOutOfRange(n));
        }
        if n != rows.len() {
            return Err(ParseError::DeclaredSizeMismatch {
                declared: n,
                rows: rows.len(),
            });
        }
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }

    let mut grid = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let mut cells = Vec::with_capacity(row.len());
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '#' => cells.push(true),
                '.' => cells.push(false),
                other => return Err(ParseError::IllegalChar { row: r, col: c, ch: other }),
            }
        }
        grid.push(cells);
    }

    let width = grid[0].len();
    if let Some((r, row)) = grid.iter().enumerate().find(|(_, row)| row.len() != width) {
        return Err(ParseError::RaggedRow {
            row: r,
            expected: width,
            found: row.len(),
        });
    }
    if width != grid.len() {
        return Err(ParseError::NotSquare {
            rows: grid.len(),
            width,
        });
    }

    let n = grid.len();
    let size = BoardSize::new(n).map_err(|_| ParseError::SizeOutOfRange(n))?;
    let mut bits = 0u128;
    for (r, row) in grid.iter().enumerate() {
        for (c, &occupied) in row.iter().enumerate() {
            if occupied {
                bits |= 1u128 << (r * n + c);
            }
        }
    }
    Ok((size, CellSet::from_bits_unchecked(size, bits)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RenderStyle {
    /// `#` for occupied cells; reparseable.
    #[default]
    Ascii,
    /// `•` for occupied cells, as in the printed figures.
    Pretty,
}

/// Render a board. Without labels the output is the compact board format;
/// with labels every cell is right-aligned to the widest label and cells are
/// separated by single spaces. Rows are joined by `\n`, no trailing newline.
pub fn render_board(
    set: &CellSet,
    labels: Option<&StepLabels>,
    style: RenderStyle,
) -> Result<String, GridError> {
    let size = set.size();
    let n = size.side();
    let occupied_glyph = match style {
        RenderStyle::Ascii => "#",
        RenderStyle::Pretty => "•",
    };

    if let Some(labels) = labels {
        if let Some((&cell, _)) = labels.iter().find(|(cell, _)| set.contains(**cell)) {
            return Err(GridError::LabelOnOccupied(cell));
        }
        if let Some((&cell, _)) = labels.iter().find(|(cell, _)| !cell.in_bounds(size)) {
            return Err(GridError::CellOutOfRange {
                row: cell.row,
                col: cell.col,
                side: n,
            });
        }
    }

    let mut out = String::new();
    match labels {
        None => {
            for r in 0..n {
                if r > 0 {
                    out.push('\n');
                }
                for c in 0..n {
                    out.push_str(if set.contains(Cell::new(r, c)) {
                        occupied_glyph
                    } else {
                        "."
                    });
                }
            }
        }
        Some(labels) => {
            let width = labels
                .values()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(1);
            for r in 0..n {
                if r > 0 {
                    out.push('\n');
                }
                for c in 0..n {
                    let cell = Cell::new(r, c);
                    let token = if set.contains(cell) {
                        occupied_glyph.to_string()
                    } else if let Some(label) = labels.get(&cell) {
                        label.to_string()
                    } else {
                        ".".to_string()
                    };
                    if c > 0 {
                        out.push(' ');
                    }
                    let pad = width.saturating_sub(token.chars().count());
                    out.extend(std::iter::repeat_n(' ', pad));
                    out.push_str(&token);
                }
            }
        }
    }
    Ok(out)
}

/// Read back a labeled rendering: whitespace-separated tokens, `#` or `•`
/// for occupied cells, `.` for unreached cells and decimal step labels.
pub fn parse_labeled_board(text: &str) -> Result<(BoardSize, CellSet, StepLabels), ParseError> {
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_ascii_whitespace().collect::<Vec<_>>())
        .filter(|tokens| !tokens.is_empty())
        .collect();
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    let width = rows[0].len();
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != width) {
        return Err(ParseError::RaggedRow {
            row: r,
            expected: width,
            found: row.len(),
        });
    }
    if width != rows.len() {
        return Err(ParseError::NotSquare {
            rows: rows.len(),
            width,
        });
    }
    let n = rows.len();
    let size = BoardSize::new(n).map_err(|_| ParseError::SizeOutOfRange(n))?;
    let mut set = CellSet::empty(size);
    let mut labels = StepLabels::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, token) in row.iter().enumerate() {
            let cell = Cell::new(r, c);
            match *token {
                "#" | "•" => set.bits |= 1u128 << cell.index(size),
                "." => {}
                other => {
                    let label = other.parse::<usize>().map_err(|_| ParseError::IllegalChar {
                        row: r,
                        col: c,
                        ch: other.chars().next().unwrap_or(' '),
                    })?;
                    labels.insert(cell, label);
                }
            }
        }
    }
    Ok((size, set, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn size(n: usize) -> BoardSize {
        BoardSize::new(n).unwrap()
    }

    #[test]
    fn board_size_range() {
        assert!(BoardSize::new(0).is_err());
        assert!(BoardSize::new(1).is_ok());
        assert!(BoardSize::new(11).is_ok());
        assert_eq!(BoardSize::new(12), Err(GridError::InvalidSize(12)));
    }

    #[test]
    fn line_counts_and_popcounts() {
        for s in BoardSize::all() {
            let lines = make_lines(s);
            assert_eq!(lines.len(), 2 * s.side() + 2);
            assert!(lines.iter().all(|l| l.mask.len() == s.side()));
            let ids: HashSet<_> = lines.iter().map(|l| l.id).collect();
            assert_eq!(ids.len(), lines.len());
        }
        assert_eq!(make_lines(size(5)).len(), 12);
    }

    #[test]
    fn single_cell_board_has_four_coincident_lines() {
        let lines = make_lines(size(1));
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| l.mask == CellSet::full(size(1))));
    }

    #[test]
    fn masks_distinct_above_one() {
        for n in 2..=MAX_SIDE {
            let masks: HashSet<_> = make_lines(size(n)).iter().map(|l| l.mask).collect();
            assert_eq!(masks.len(), 2 * n + 2);
        }
    }

    #[test]
    fn main_diagonal_of_three() {
        let lines = make_lines(size(3));
        assert_eq!(lines.len(), 8);
        let diag = lines.iter().find(|l| l.kind() == LineKind::MainDiag).unwrap();
        let expected = CellSet::from_cells(size(3), [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(diag.mask, expected);
        assert_eq!(lines[6].kind(), LineKind::MainDiag);
        assert_eq!(lines[7].kind(), LineKind::AntiDiag);
    }

    #[test]
    fn cells_lie_on_two_to_four_lines() {
        for s in BoardSize::all() {
            let geo = Geometry::of(s);
            for i in 0..s.cell_count() {
                let cell = Cell::from_index(i, s);
                let k = geo.lines_through(cell).count();
                assert!((2..=4).contains(&k), "n={s} {cell} lies on {k} lines");
            }
            if s.side() % 2 == 1 {
                let mid = s.side() / 2;
                assert_eq!(geo.lines_through(Cell::new(mid, mid)).count(), 4);
            }
        }
    }

    #[test]
    fn transpose_and_half_turn() {
        let t = CellPermutation::new(Symmetry::Transpose, size(2));
        let set = CellSet::from_cells(size(2), [(0, 1)]).unwrap();
        assert_eq!(t.apply(&set), CellSet::from_cells(size(2), [(1, 0)]).unwrap());

        let r = CellPermutation::new(Symmetry::Rot180, size(3));
        let set = CellSet::from_cells(size(3), [(0, 0)]).unwrap();
        assert_eq!(r.apply(&set), CellSet::from_cells(size(3), [(2, 2)]).unwrap());
    }

    #[test]
    fn symmetries_permute_the_line_set() {
        for n in 2..=8 {
            let s = size(n);
            let masks: HashSet<_> = make_lines(s).iter().map(|l| l.mask).collect();
            let transforms = dihedral_transforms(s);
            assert_eq!(transforms.len(), 8);
            for t in &transforms {
                let image: HashSet<_> = masks.iter().map(|m| t.apply(m)).collect();
                assert_eq!(image, masks, "{:?} at n={n}", t.symmetry);
            }
        }
    }

    #[test]
    fn symmetries_form_distinct_bijections() {
        let s = size(4);
        let mut seen = HashSet::new();
        for t in dihedral_transforms(s) {
            let img: Vec<_> = (0..16).map(|i| t.image_of(i)).collect();
            let uniq: HashSet<_> = img.iter().collect();
            assert_eq!(uniq.len(), 16);
            assert!(seen.insert(img));
        }
    }

    #[test]
    fn set_operations() {
        let s = size(3);
        let a = CellSet::from_cells(s, [(0, 0), (1, 1)]).unwrap();
        let b = CellSet::from_cells(s, [(1, 1), (2, 2)]).unwrap();
        assert_eq!((a | b).len(), 3);
        assert_eq!((a & b).len(), 1);
        assert_eq!((a - b).cells().collect::<Vec<_>>(), vec![Cell::new(0, 0)]);
        assert_eq!(a.complement().len(), 7);
        assert_eq!(!CellSet::empty(s), CellSet::full(s));
        assert!((a & b).is_subset(&a));
        assert!(CellSet::from_bits(s, 1 << 9).is_err());
        let mut c = CellSet::empty(s);
        assert!(c.insert(Cell::new(3, 0)).is_err());
    }

    #[test]
    fn parse_examples() {
        let (n, set) = parse_board("#.\n.#").unwrap();
        assert_eq!(n.side(), 2);
        assert_eq!(set, CellSet::from_cells(n, [(0, 0), (1, 1)]).unwrap());

        let (n, set) = parse_board("##\n##\n").unwrap();
        assert!(set.is_full());
        assert_eq!(n.side(), 2);

        let (n, set) = parse_board("n=3\n  ...\n\n.#.\n...\n").unwrap();
        assert_eq!(n.side(), 3);
        assert_eq!(set.cells().collect::<Vec<_>>(), vec![Cell::new(1, 1)]);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            parse_board("####\n#####\n####\n####"),
            Err(ParseError::RaggedRow { row: 1, expected: 4, found: 5 })
        ));
        assert!(matches!(
            parse_board("#x\n.."),
            Err(ParseError::IllegalChar { row: 0, col: 1, ch: 'x' })
        ));
        assert!(matches!(
            parse_board("n=3\n##\n##"),
            Err(ParseError::DeclaredSizeMismatch { declared: 3, rows: 2 })
        ));
        assert!(matches!(parse_board("n=12\n#"), Err(ParseError::SizeOutOfRange(12))));
        let big = vec![".".repeat(12); 12].join("\n");
        assert!(matches!(parse_board(&big), Err(ParseError::SizeOutOfRange(12))));
        assert!(matches!(parse_board("##\n##\n##"), Err(ParseError::NotSquare { .. })));
        assert!(matches!(parse_board("n=x\n#"), Err(ParseError::BadHeader(_))));
        assert!(matches!(parse_board(" \n"), Err(ParseError::Empty)));
    }

    #[test]
    fn render_plain() {
        assert_eq!(
            render_board(&CellSet::full(size(2)), None, RenderStyle::Ascii).unwrap(),
            "##\n##"
        );
        assert_eq!(
            render_board(&CellSet::empty(size(3)), None, RenderStyle::Ascii).unwrap(),
            "...\n...\n..."
        );
        assert_eq!(
            render_board(&CellSet::full(size(2)), None, RenderStyle::Pretty).unwrap(),
            "••\n••"
        );
    }

    #[test]
    fn render_board3_labels() {
        let s = size(3);
        let set = CellSet::from_cells(s, [(1, 2), (2, 0), (2, 1)]).unwrap();
        let labels: StepLabels = [
            ((2, 2), 1),
            ((0, 2), 2),
            ((1, 1), 3),
            ((0, 0), 4),
            ((0, 1), 4),
            ((1, 0), 4),
        ]
        .into_iter()
        .map(|(c, v)| (Cell::from(c), v))
        .collect();
        let text = render_board(&set, Some(&labels), RenderStyle::Ascii).unwrap();
        assert_eq!(text, "4 4 2\n4 3 #\n# # 1");
        let (n, back, back_labels) = parse_labeled_board(&text).unwrap();
        assert_eq!(n, s);
        assert_eq!(back, set);
        assert_eq!(back_labels, labels);
    }

    #[test]
    fn render_pads_wide_labels() {
        let s = size(2);
        let set = CellSet::from_cells(s, [(0, 0)]).unwrap();
        let labels: StepLabels = [(Cell::new(0, 1), 12), (Cell::new(1, 1), 3)].into();
        let text = render_board(&set, Some(&labels), RenderStyle::Ascii).unwrap();
        assert_eq!(text, " # 12\n .  3");
    }

    #[test]
    fn label_on_occupied_cell_is_rejected() {
        let s = size(2);
        let set = CellSet::from_cells(s, [(0, 0)]).unwrap();
        let labels: StepLabels = [(Cell::new(0, 0), 1)].into();
        assert_eq!(
            render_board(&set, Some(&labels), RenderStyle::Ascii),
            Err(GridError::LabelOnOccupied(Cell::new(0, 0)))
        );
    }
}
