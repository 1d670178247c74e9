//! Checkers for the set-map laws (isotone, expansive) and the closure
//! operator laws (extensive, idempotent, monotone).
//!
//! Small boards are checked exhaustively; larger ones with seeded samples,
//! so any counterexample can be replayed from `(n, seed)`.

use serde::Serialize;

use crate::closure::{closure_set, dependent_set, dolmatic_step, general_dolmatic_extension, SUBSET_ENUMERATION_LIMIT};
use crate::grid::{BoardSize, CellSet};
use crate::sampling::{chunk_rng, random_board, random_subset};

/// Which set map to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SetMap {
    /// The dependency map φ.
    Dependency,
    /// Its dolmatic extension `A ∪ φ(A)`.
    DolmaticStep,
}

impl SetMap {
    pub fn apply(self, set: &CellSet) -> CellSet {
        match self {
            SetMap::Dependency => dependent_set(set),
            SetMap::DolmaticStep => dolmatic_step(set),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Law {
    Isotone,
    Expansive,
    Extensive,
    Idempotent,
    Monotone,
    ExtensionOracle,
}

/// Witness against a law. For order laws `(first, second)` is the pair
/// `A ⊆ B`; for the pointwise laws it is the input and its image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub law: Law,
    pub first: CellSet,
    pub second: CellSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub map: SetMap,
    pub isotone: bool,
    pub expansive: bool,
    pub dolmatic: bool,
    pub counterexample: Option<Counterexample>,
    pub exhaustive: bool,
    pub pairs_checked: u64,
}

fn for_each_nested_pair(
    size: BoardSize,
    budget: u64,
    seed: u64,
    mut visit: impl FnMut(&CellSet, &CellSet),
) -> (bool, u64) {
    if size.side() <= 2 {
        let full = size.full_bits();
        let mut count = 0;
        for b in 0..=full {
            let big = CellSet::from_bits_unchecked(size, b);
            let mut a = b;
            loop {
                visit(&CellSet::from_bits_unchecked(size, a), &big);
                count += 1;
                if a == 0 {
                    break;
                }
                a = (a - 1) & b;
            }
        }
        (true, count)
    } else {
        let mut rng = chunk_rng(seed, 0);
        for _ in 0..budget {
            let big = random_board(size, &mut rng);
            let small = random_subset(&big, &mut rng);
            visit(&small, &big);
        }
        (false, budget)
    }
}

/// Check isotonicity and expansivity of `map` on nested pairs `A ⊆ B`:
/// every pair when `n ≤ 2`, otherwise `budget` seeded random pairs.
pub fn check_laws(size: BoardSize, map: SetMap, budget: u64, seed: u64) -> LawReport {
    let mut isotone = true;
    let mut expansive = true;
    let mut iso_cx = None;
    let mut exp_cx = None;

    let (exhaustive, pairs_checked) = for_each_nested_pair(size, budget.max(1), seed, |a, b| {
        let fa = map.apply(a);
        let fb = map.apply(b);
        if !fa.is_subset(&fb) {
            isotone = false;
            iso_cx.get_or_insert(Counterexample {
                law: Law::Isotone,
                first: *a,
                second: *b,
            });
        }
        for (x, fx) in [(a, fa), (b, fb)] {
            if !x.is_subset(&fx) {
                expansive = false;
                exp_cx.get_or_insert(Counterexample {
                    law: Law::Expansive,
                    first: *x,
                    second: fx,
                });
            }
        }
    });

    LawReport {
        map,
        isotone,
        expansive,
        dolmatic: isotone && expansive,
        counterexample: iso_cx.or(exp_cx),
        exhaustive,
        pairs_checked,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureLawReport {
    pub extensive: bool,
    pub idempotent: bool,
    pub monotone: bool,
    pub counterexample: Option<Counterexample>,
    pub exhaustive: bool,
    pub sets_checked: u64,
}

impl ClosureLawReport {
    pub fn holds(&self) -> bool {
        self.extensive && self.idempotent && self.monotone
    }
}

/// Extensive, idempotent and monotone laws of the closure. Exhaustive for
/// `n ≤ 3` (every set, every nested pair); otherwise `samples` random sets,
/// each paired with a random subset.
pub fn check_closure_laws(size: BoardSize, samples: u64, seed: u64) -> ClosureLawReport {
    let mut report = ClosureLawReport {
        extensive: true,
        idempotent: true,
        monotone: true,
        counterexample: None,
        exhaustive: size.side() <= 3,
        sets_checked: 0,
    };
    let check_point = |s: &CellSet, report: &mut ClosureLawReport| {
        let c = closure_set(s);
        if !s.is_subset(&c) {
            report.extensive = false;
            report.counterexample.get_or_insert(Counterexample { law: Law::Extensive, first: *s, second: c });
        }
        if closure_set(&c) != c {
            report.idempotent = false;
            report.counterexample.get_or_insert(Counterexample { law: Law::Idempotent, first: *s, second: c });
        }
        report.sets_checked += 1;
        c
    };

    if report.exhaustive {
        let full = size.full_bits();
        let closures: Vec<CellSet> = (0..=full)
            .map(|b| check_point(&CellSet::from_bits_unchecked(size, b), &mut report))
            .collect();
        // Monotone over every nested pair a ⊆ b.
        for b in 0..=full {
            let cb = closures[b as usize];
            let mut a = b;
            loop {
                if !closures[a as usize].is_subset(&cb) {
                    report.monotone = false;
                    report.counterexample.get_or_insert(Counterexample {
                        law: Law::Monotone,
                        first: CellSet::from_bits_unchecked(size, a),
                        second: CellSet::from_bits_unchecked(size, b),
                    });
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & b;
            }
        }
    } else {
        let mut rng = chunk_rng(seed, 0);
        for _ in 0..samples {
            let t = random_board(size, &mut rng);
            let s = random_subset(&t, &mut rng);
            let ct = check_point(&t, &mut report);
            let cs = closure_set(&s);
            if !cs.is_subset(&ct) {
                report.monotone = false;
                report.counterexample.get_or_insert(Counterexample { law: Law::Monotone, first: s, second: t });
            }
        }
    }
    report
}

/// Compare the literal subset-union extension with `A ∪ φ(A)`. Exhaustive
/// for `n ≤ 3`; otherwise `samples` random sets of at most
/// [`SUBSET_ENUMERATION_LIMIT`] cells. Returns the first disagreement.
pub fn check_extension_oracle(size: BoardSize, samples: u64, seed: u64) -> (u64, Option<Counterexample>) {
    let check = |a: &CellSet| -> Option<Counterexample> {
        let literal = general_dolmatic_extension(a).expect("set within the enumeration limit");
        (literal != dolmatic_step(a)).then_some(Counterexample {
            law: Law::ExtensionOracle,
            first: *a,
            second: literal,
        })
    };
    if size.side() <= 3 {
        let full = size.full_bits();
        for b in 0..=full {
            if let Some(cx) = check(&CellSet::from_bits_unchecked(size, b)) {
                return (b as u64 + 1, Some(cx));
            }
        }
        return (full as u64 + 1, None);
    }
    let mut rng = chunk_rng(seed, 0);
    let mut checked = 0;
    while checked < samples {
        let a = random_board(size, &mut rng);
        if a.len() > SUBSET_ENUMERATION_LIMIT {
            continue;
        }
        checked += 1;
        if let Some(cx) = check(&a) {
            return (checked, Some(cx));
        }
    }
    (checked, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(n: usize) -> BoardSize {
        BoardSize::new(n).unwrap()
    }

    #[test]
    fn dependency_map_is_isotone_not_expansive() {
        let r = check_laws(size(3), SetMap::Dependency, 2000, 11);
        assert!(r.isotone);
        assert!(!r.expansive);
        assert!(!r.dolmatic);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.law, Law::Expansive);
        assert!(!cx.first.is_subset(&cx.second));
        assert_eq!(cx.second, dependent_set(&cx.first));
    }

    #[test]
    fn single_cell_example_is_not_expansive() {
        let s = CellSet::from_cells(size(3), [(0, 0)]).unwrap();
        assert!(!dependent_set(&s).contains((0, 0).into()));
    }

    #[test]
    fn dolmatic_step_is_dolmatic() {
        let r = check_laws(size(3), SetMap::DolmaticStep, 2000, 11);
        assert!(r.isotone && r.expansive && r.dolmatic);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn exhaustive_for_small_boards() {
        let r = check_laws(size(2), SetMap::Dependency, 1, 0);
        assert!(r.exhaustive);
        // Nested pairs over 4 cells: 3^4.
        assert_eq!(r.pairs_checked, 81);
        assert!(r.isotone);
        assert!(!r.expansive);
    }

    #[test]
    fn single_cell_dependency_is_expansive() {
        let r = check_laws(size(1), SetMap::Dependency, 1, 0);
        assert!(r.isotone && r.expansive && r.dolmatic);
        assert_eq!(r.pairs_checked, 3);
    }

    #[test]
    fn closure_laws_small() {
        for n in 1..=3 {
            let r = check_closure_laws(size(n), 0, 0);
            assert!(r.exhaustive);
            assert!(r.holds(), "{r:?}");
        }
        let r = check_closure_laws(size(6), 200, 5);
        assert!(!r.exhaustive);
        assert_eq!(r.sets_checked, 200);
        assert!(r.holds());
    }

    #[test]
    fn extension_oracle_small() {
        assert_eq!(check_extension_oracle(size(2), 0, 0), (16, None));
        let (checked, cx) = check_extension_oracle(size(4), 20, 9);
        assert_eq!(checked, 20);
        assert!(cx.is_none());
    }
}
