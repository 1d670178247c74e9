//! Shared test support: a deliberately naive closure engine over
//! `Vec<Vec<bool>>` grids and loaders for the figure fixtures.
//!
//! The oracle shares no code with the library; it rebuilds lines from
//! coordinates and fills dependent cells one scan at a time.

#![allow(dead_code)]

use std::collections::BTreeMap;

use bingo_closure::{BoardSize, CellSet};

pub type Grid = Vec<Vec<bool>>;

pub fn lines(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push((0..n).map(|c| (i, c)).collect());
    }
    for j in 0..n {
        out.push((0..n).map(|r| (r, j)).collect());
    }
    out.push((0..n).map(|i| (i, i)).collect());
    out.push((0..n).map(|i| (i, n - 1 - i)).collect());
    out
}

/// Squares that complete some line with the other squares of `grid`.
pub fn phi(grid: &Grid) -> Grid {
    let n = grid.len();
    let mut out = vec![vec![false; n]; n];
    for line in lines(n) {
        for &(r, c) in &line {
            if line.iter().filter(|&&p| p != (r, c)).all(|&(a, b)| grid[a][b]) {
                out[r][c] = true;
            }
        }
    }
    out
}

pub struct OracleTrace {
    pub depth: usize,
    pub closure: Grid,
    pub steps: Vec<Vec<(usize, usize)>>,
    pub labels: BTreeMap<(usize, usize), usize>,
}

pub fn oracle_closure(start: &Grid) -> OracleTrace {
    let n = start.len();
    let mut grid = start.clone();
    let mut steps = Vec::new();
    let mut labels = BTreeMap::new();
    loop {
        let dep = phi(&grid);
        let added: Vec<(usize, usize)> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| dep[r][c] && !grid[r][c])
            .collect();
        if added.is_empty() {
            break;
        }
        for &(r, c) in &added {
            grid[r][c] = true;
            labels.insert((r, c), steps.len() + 1);
        }
        steps.push(added);
    }
    OracleTrace { depth: steps.len(), closure: grid, steps, labels }
}

pub fn to_grid(set: &CellSet) -> Grid {
    let n = set.size().side();
    let mut grid = vec![vec![false; n]; n];
    for cell in set.cells() {
        grid[cell.row][cell.col] = true;
    }
    grid
}

pub fn to_set(grid: &Grid) -> CellSet {
    let size = BoardSize::new(grid.len()).unwrap();
    let cells = (0..grid.len())
        .flat_map(|r| (0..grid.len()).map(move |c| (r, c)))
        .filter(|&(r, c)| grid[r][c]);
    CellSet::from_cells(size, cells).unwrap()
}

pub fn cells_of(grid: &Grid) -> Vec<(usize, usize)> {
    let n = grid.len();
    (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| grid[r][c])
        .collect()
}

/// A figure: `#` for an occupied square, a number for the step at which an
/// empty square is filled.
pub struct Figure {
    pub start: Grid,
    pub labels: BTreeMap<(usize, usize), usize>,
}

pub fn figure(name: &str) -> Figure {
    let path = format!("{}/tests/fixtures/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().collect())
        .collect();
    let n = rows.len();
    let mut start = vec![vec![false; n]; n];
    let mut labels = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), n, "{name}: row {r} is not {n} wide");
        for (c, tok) in row.iter().enumerate() {
            match *tok {
                "#" => start[r][c] = true,
                t => {
                    labels.insert((r, c), t.parse().unwrap());
                }
            }
        }
    }
    Figure { start, labels }
}

pub const FIGURES: [(&str, usize); 6] = [
    ("board2", 10),
    ("board3", 4),
    ("board4", 6),
    ("boardS", 12),
    ("board9", 18),
    ("board10", 20),
];

/// Board 1 worked by hand. Solid dots are `S`; the open circles are the
/// squares that complete a line with `S` alone.
pub const BOARD1_S: [(usize, usize); 12] = [
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
];
pub const BOARD1_CIRCLES: [(usize, usize); 5] = [(1, 1), (1, 3), (2, 0), (2, 4), (3, 2)];
// (1,1): main diagonal. (1,3): anti-diagonal. (2,0): column 0.
// (2,4): column 4. (3,2): row 3. Then row 1 gets (1,2), after which
// column 2 gets (4,2).
pub const BOARD1_STEPS: [&[(usize, usize)]; 3] = [&BOARD1_CIRCLES, &[(1, 2)], &[(4, 2)]];
pub const BOARD1_MISSING: [(usize, usize); 6] = [(0, 1), (0, 3), (2, 1), (2, 3), (4, 1), (4, 3)];

pub fn grid_from(n: usize, cells: &[(usize, usize)]) -> Grid {
    let mut grid = vec![vec![false; n]; n];
    for &(r, c) in cells {
        grid[r][c] = true;
    }
    grid
}
