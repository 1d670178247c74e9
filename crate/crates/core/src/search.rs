//! Maximum-depth search and the bound / closed-set sweeps.
//!
//! Exhaustive search walks every subset of the board as an integer in
//! `0..2^(n²)`, split into contiguous shards. Each shard produces a
//! [`ShardStats`]; merging two of them is associative and commutative, so the
//! report does not depend on how shards land on threads.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closure::closure_bits;
use crate::grid::{render_board, BoardSize, CellSet, Geometry, RenderStyle, Symmetry, CellPermutation};
use crate::sampling::{chunk_rng, chunks, random_board};

/// Largest side searched exhaustively without opting in.
pub const EXHAUSTIVE_LIMIT: usize = 4;
/// Largest side searched exhaustively at all (`2^25` boards).
pub const EXHAUSTIVE_LARGE_LIMIT: usize = 5;
/// Environment variable consulted for the worker count.
pub const THREADS_ENV: &str = "BINGO_THREADS";

const SHARD_BITS: u32 = 16;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("exhaustive search at n={n} needs the long-running opt-in (limit {EXHAUSTIVE_LIMIT})")]
    NeedsLargeFlag { n: usize },
    #[error("exhaustive search is limited to n <= {EXHAUSTIVE_LARGE_LIMIT}, got n={n}")]
    TooLarge { n: usize },
    #[error("exhaustive sweeps are limited to n <= {EXHAUSTIVE_LIMIT}, got n={n}")]
    SweepTooLarge { n: usize },
    #[error("thread count must be positive")]
    ZeroThreads,
    #[error("cannot start worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// Which boards a search ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    #[default]
    All,
    SpanningOnly,
    NonSpanningOnly,
}

impl Scope {
    #[inline]
    fn admits(self, spanning: bool) -> bool {
        match self {
            Scope::All => true,
            Scope::SpanningOnly => spanning,
            Scope::NonSpanningOnly => !spanning,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub scope: Scope,
    /// Only examine one representative per symmetry orbit.
    pub use_symmetry: bool,
    /// Worker count; `None` uses [`resolve_threads`].
    pub threads: Option<usize>,
    /// Permit the `2^25`-board search at n = 5.
    pub allow_large: bool,
    /// How many witnesses to keep.
    pub witness_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            scope: Scope::All,
            use_symmetry: true,
            threads: None,
            allow_large: false,
            witness_cap: 16,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: BoardSize,
    pub scope: Scope,
    /// `None` when no board falls in scope.
    pub max_depth: Option<usize>,
    /// Canonical forms of maximizers, smallest first, at most the cap.
    pub witnesses: Vec<CellSet>,
    /// Number of maximizing boards, counting every member of each orbit.
    pub witness_count: u64,
    pub boards_examined: u64,
    pub elapsed: Duration,
    /// Seed of a sampled search.
    pub seed: Option<u64>,
}

impl SearchReport {
    /// Equality of everything except the timing.
    pub fn same_outcome(&self, other: &SearchReport) -> bool {
        self.n == other.n
            && self.scope == other.scope
            && self.max_depth == other.max_depth
            && self.witnesses == other.witnesses
            && self.witness_count == other.witness_count
            && self.boards_examined == other.boards_examined
            && self.seed == other.seed
    }

    pub fn to_document(&self) -> ReportDocument {
        ReportDocument {
            n: self.n.side(),
            scope: self.scope,
            max_depth: self.max_depth,
            witness_count: self.witness_count,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| render_board(w, None, RenderStyle::Ascii).expect("unlabeled render"))
                .collect(),
            boards_examined: self.boards_examined,
            elapsed_ms: self.elapsed.as_millis() as u64,
            seed: self.seed,
        }
    }
}

/// Serialized form of a [`SearchReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub n: usize,
    pub scope: Scope,
    pub max_depth: Option<usize>,
    pub witness_count: u64,
    pub witnesses: Vec<String>,
    pub boards_examined: u64,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
}

/// Worker count: the explicit value, else `BINGO_THREADS`, else the
/// available hardware parallelism.
pub fn resolve_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&t| t > 0)
        })
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

/// Byte-indexed image tables for the seven non-identity symmetries.
struct SymmetryTables {
    chunks: usize,
    // tables[t][chunk][byte]
    tables: Vec<Vec<[u128; 256]>>,
}

impl SymmetryTables {
    fn build(size: BoardSize) -> Self {
        let cells = size.cell_count();
        let chunks = cells.div_ceil(8);
        let tables = Symmetry::ALL[1..]
            .iter()
            .map(|&s| {
                let perm = CellPermutation::new(s, size);
                (0..chunks)
                    .map(|k| {
                        let mut table = [0u128; 256];
                        for (byte, slot) in table.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let i = 8 * k + bit;
                                if byte >> bit & 1 == 1 && i < cells {
                                    *slot |= 1u128 << perm.image_of(i);
                                }
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        SymmetryTables { chunks, tables }
    }

    fn of(size: BoardSize) -> &'static SymmetryTables {
        static TABLES: [OnceLock<SymmetryTables>; crate::grid::MAX_SIDE] =
            [const { OnceLock::new() }; crate::grid::MAX_SIDE];
        TABLES[size.side() - 1].get_or_init(|| SymmetryTables::build(size))
    }

    #[inline]
    fn image(&self, t: usize, bits: u128) -> u128 {
        let table = &self.tables[t];
        let mut out = 0;
        for (k, chunk) in table.iter().enumerate().take(self.chunks) {
            out |= chunk[(bits >> (8 * k)) as usize & 0xff];
        }
        out
    }

    #[inline]
    fn is_canonical(&self, bits: u128) -> bool {
        (0..self.tables.len()).all(|t| self.image(t, bits) >= bits)
    }

    fn canonical(&self, bits: u128) -> u128 {
        (0..self.tables.len()).map(|t| self.image(t, bits)).fold(bits, u128::min)
    }

    fn orbit_size(&self, bits: u128) -> u64 {
        let mut images = [bits; 8];
        for t in 0..self.tables.len() {
            images[t + 1] = self.image(t, bits);
        }
        images.sort_unstable();
        1 + images.windows(2).filter(|w| w[0] != w[1]).count() as u64
    }
}

/// Smallest image of `set` under the eight symmetries of the square.
pub fn canonical_form(set: &CellSet) -> CellSet {
    let size = set.size();
    CellSet::from_bits_unchecked(size, SymmetryTables::of(size).canonical(set.bits()))
}

/// Number of distinct images of `set` under the symmetries of the square.
pub fn orbit_size(set: &CellSet) -> u64 {
    SymmetryTables::of(set.size()).orbit_size(set.bits())
}

/// Partial search result for one shard of boards.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShardStats {
    pub max_depth: Option<usize>,
    pub count: u64,
    pub witnesses: Vec<u128>,
    pub examined: u64,
}

impl ShardStats {
    fn record(&mut self, depth: usize, witness: u128, weight: u64, cap: usize) {
        match self.max_depth {
            Some(best) if depth < best => return,
            Some(best) if depth == best => self.count += weight,
            _ => {
                self.max_depth = Some(depth);
                self.count = weight;
                self.witnesses.clear();
            }
        }
        if let Err(pos) = self.witnesses.binary_search(&witness) {
            if pos < cap {
                self.witnesses.insert(pos, witness);
                self.witnesses.truncate(cap);
            }
        }
    }

    /// Associative, commutative merge.
    pub fn merge(mut self, other: ShardStats, cap: usize) -> ShardStats {
        self.examined += other.examined;
        match self.max_depth.cmp(&other.max_depth) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => ShardStats {
                examined: self.examined,
                ..other
            },
            std::cmp::Ordering::Equal => {
                self.count += other.count;
                self.witnesses.extend(other.witnesses);
                self.witnesses.sort_unstable();
                self.witnesses.dedup();
                self.witnesses.truncate(cap);
                self
            }
        }
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, SearchError> {
    let threads = resolve_threads(threads);
    if threads == 0 {
        return Err(SearchError::ZeroThreads);
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads).build()?)
}

/// Exhaustive maximum depth over every board of side `n` within scope.
pub fn max_depth_exhaustive(size: BoardSize, config: &SearchConfig) -> Result<SearchReport, SearchError> {
    max_depth_exhaustive_with_progress(size, config, &|_, _| {})
}

/// As [`max_depth_exhaustive`], calling `progress(done, total)` in shard
/// units as shards finish.
pub fn max_depth_exhaustive_with_progress(
    size: BoardSize,
    config: &SearchConfig,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<SearchReport, SearchError> {
    let n = size.side();
    if n > EXHAUSTIVE_LARGE_LIMIT {
        return Err(SearchError::TooLarge { n });
    }
    if n > EXHAUSTIVE_LIMIT && !config.allow_large {
        return Err(SearchError::NeedsLargeFlag { n });
    }
    if config.threads == Some(0) {
        return Err(SearchError::ZeroThreads);
    }
    let started = Instant::now();
    let geo = Geometry::of(size);
    let sym = SymmetryTables::of(size);
    let total: u64 = 1 << size.cell_count();
    let shard_len = total.min(1 << SHARD_BITS);
    let shards = total / shard_len;
    let cap = config.witness_cap;
    let done = AtomicU64::new(0);

    let scan = |shard: u64| {
        let mut stats = ShardStats::default();
        for s in shard * shard_len..(shard + 1) * shard_len {
            let bits = s as u128;
            if config.use_symmetry && !sym.is_canonical(bits) {
                continue;
            }
            let (depth, closed) = closure_bits(bits, &geo.line_bits);
            stats.examined += 1;
            if !config.scope.admits(closed == geo.full) {
                continue;
            }
            let (witness, weight) = if config.use_symmetry {
                (bits, sym.orbit_size(bits))
            } else {
                (sym.canonical(bits), 1)
            };
            stats.record(depth, witness, weight, cap);
        }
        progress(done.fetch_add(1, Ordering::Relaxed) + 1, shards);
        stats
    };

    let stats = pool(config.threads)?.install(|| {
        (0..shards)
            .into_par_iter()
            .map(scan)
            .reduce(ShardStats::default, |a, b| a.merge(b, cap))
    });

    Ok(SearchReport {
        n: size,
        scope: config.scope,
        max_depth: stats.max_depth,
        witnesses: stats
            .witnesses
            .into_iter()
            .map(|w| CellSet::from_bits_unchecked(size, w))
            .collect(),
        witness_count: stats.count,
        boards_examined: stats.examined,
        elapsed: started.elapsed(),
        seed: None,
    })
}

/// Maximum depth over `samples` seeded random boards.
pub fn max_depth_sampled(
    size: BoardSize,
    config: &SearchConfig,
    samples: u64,
    seed: u64,
) -> Result<SearchReport, SearchError> {
    if config.threads == Some(0) {
        return Err(SearchError::ZeroThreads);
    }
    let started = Instant::now();
    let geo = Geometry::of(size);
    let sym = SymmetryTables::of(size);
    let cap = config.witness_cap;

    let stats = pool(config.threads)?.install(|| {
        chunks(samples)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(k, range)| {
                let mut rng = chunk_rng(seed, k);
                let mut stats = ShardStats::default();
                for _ in range {
                    let bits = random_board(size, &mut rng).bits();
                    let (depth, closed) = closure_bits(bits, &geo.line_bits);
                    stats.examined += 1;
                    if config.scope.admits(closed == geo.full) {
                        stats.record(depth, sym.canonical(bits), 1, cap);
                    }
                }
                stats
            })
            .reduce(ShardStats::default, |a, b| a.merge(b, cap))
    });

    Ok(SearchReport {
        n: size,
        scope: config.scope,
        max_depth: stats.max_depth,
        witnesses: stats
            .witnesses
            .into_iter()
            .map(|w| CellSet::from_bits_unchecked(size, w))
            .collect(),
        witness_count: stats.count,
        boards_examined: stats.examined,
        elapsed: started.elapsed(),
        seed: Some(seed),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Every board; only for `n ≤ 4`.
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// A board deeper than the bound for its kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub board: CellSet,
    pub observed_depth: usize,
    pub bound: usize,
    pub spanning: bool,
}

/// Depth bound: `2n` for spanning boards, `2n - 2` otherwise.
pub fn depth_bound(size: BoardSize, spanning: bool) -> usize {
    if spanning {
        2 * size.side()
    } else {
        2 * size.side() - 2
    }
}

/// Run `check` on every board selected by `mode`, keeping the results in
/// board order (exhaustive) or sample order (sampled).
fn sweep<T: Send>(
    size: BoardSize,
    mode: SweepMode,
    check: impl Fn(u128) -> Option<T> + Sync,
) -> Result<Vec<T>, SearchError> {
    match mode {
        SweepMode::Exhaustive => {
            if size.side() > EXHAUSTIVE_LIMIT {
                return Err(SearchError::SweepTooLarge { n: size.side() });
            }
            let total: u64 = 1 << size.cell_count();
            Ok((0..total)
                .into_par_iter()
                .filter_map(|s| check(s as u128))
                .collect())
        }
        SweepMode::Sampled { samples, seed } => Ok(chunks(samples)
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|(k, range)| {
                let mut rng = chunk_rng(seed, k);
                range
                    .map(|_| random_board(size, &mut rng).bits())
                    .filter_map(&check)
                    .collect::<Vec<_>>()
            })
            .collect()),
    }
}

/// Every examined board whose depth exceeds its bound. Expected empty.
pub fn bound_sweep(size: BoardSize, mode: SweepMode) -> Result<Vec<BoundViolation>, SearchError> {
    let geo = Geometry::of(size);
    sweep(size, mode, |bits| {
        let (depth, closed) = closure_bits(bits, &geo.line_bits);
        let spanning = closed == geo.full;
        let bound = depth_bound(size, spanning);
        (depth > bound).then(|| BoundViolation {
            board: CellSet::from_bits_unchecked(size, bits),
            observed_depth: depth,
            bound,
            spanning,
        })
    })
}

/// Cells missing from a closed set and lines it does not contain.
pub fn closed_set_deficit(closed: &CellSet) -> (usize, usize) {
    let geo = Geometry::of(closed.size());
    let missing = closed.complement().len();
    let incomplete = geo
        .line_bits
        .iter()
        .filter(|&&l| l & !closed.bits() != 0)
        .count();
    (missing, incomplete)
}

/// Closures `K ≠ X` of examined boards that miss fewer than 4 cells or leave
/// fewer than 4 lines incomplete. Expected empty.
pub fn lemma1_sweep(size: BoardSize, mode: SweepMode) -> Result<Vec<CellSet>, SearchError> {
    let geo = Geometry::of(size);
    let offending = sweep(size, mode, |bits| {
        let (_, closed) = closure_bits(bits, &geo.line_bits);
        if closed == geo.full {
            return None;
        }
        let k = CellSet::from_bits_unchecked(size, closed);
        let (missing, incomplete) = closed_set_deficit(&k);
        (missing < 4 || incomplete < 4).then_some(k)
    })?;
    Ok(offending.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
}
