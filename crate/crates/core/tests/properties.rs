//! Algebraic and structural invariants over random boards.

use std::collections::BTreeSet;

use bingo_closure::closure::TraceDocument;
use bingo_closure::grid::parse_labeled_board;
use bingo_closure::search::{canonical_form, orbit_size};
use bingo_closure::{
    closure, closure_set, depth, dependent_set, dihedral_transforms, dolmatic_step, is_closed, make_lines,
    parse_board, render_board, BoardSize, CellSet, RenderStyle,
};
use proptest::prelude::*;

fn board_of(n: usize) -> impl Strategy<Value = CellSet> {
    let size = BoardSize::new(n).unwrap();
    let mask = if n * n == 128 { u128::MAX } else { (1u128 << (n * n)) - 1 };
    any::<u128>().prop_map(move |bits| CellSet::from_bits(size, bits & mask).unwrap())
}

fn board() -> impl Strategy<Value = CellSet> {
    (1usize..=11).prop_flat_map(board_of)
}

/// A board with a subset of itself.
fn nested() -> impl Strategy<Value = (CellSet, CellSet)> {
    (1usize..=11).prop_flat_map(|n| (board_of(n), board_of(n))).prop_map(|(a, b)| (a & b, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closure_is_extensive_idempotent_monotone((a, b) in nested()) {
        let ca = closure_set(&a);
        let cb = closure_set(&b);
        prop_assert!(a.is_subset(&ca));
        prop_assert_eq!(closure_set(&ca), ca);
        prop_assert!(ca.is_subset(&cb));
        prop_assert!(is_closed(&ca));
    }

    #[test]
    fn dependency_map_is_isotone((a, b) in nested()) {
        prop_assert!(dependent_set(&a).is_subset(&dependent_set(&b)));
        prop_assert!(dolmatic_step(&a).is_subset(&dolmatic_step(&b)));
        prop_assert!(a.is_subset(&dolmatic_step(&a)));
    }

    #[test]
    fn depth_is_invariant_under_symmetry(s in board()) {
        let d = depth(&s);
        let c = closure_set(&s);
        for t in dihedral_transforms(s.size()) {
            let image = t.apply(&s);
            prop_assert_eq!(depth(&image), d);
            prop_assert_eq!(closure_set(&image), t.apply(&c));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_minimal(s in board()) {
        let c = canonical_form(&s);
        prop_assert_eq!(canonical_form(&c), c);
        let images: BTreeSet<u128> =
            dihedral_transforms(s.size()).iter().map(|t| t.apply(&s).bits()).collect();
        prop_assert_eq!(c.bits(), *images.iter().next().unwrap());
        prop_assert_eq!(orbit_size(&s), images.len() as u64);
        prop_assert_eq!(8 % orbit_size(&s), 0);
    }

    #[test]
    fn parse_render_round_trip(s in board()) {
        let text = render_board(&s, None, RenderStyle::Ascii).unwrap();
        let (size, back) = parse_board(&text).unwrap();
        prop_assert_eq!(size, s.size());
        prop_assert_eq!(back, s);
        let header = format!("n={}\n{text}\n", size.side());
        prop_assert_eq!(parse_board(&header).unwrap().1, s);
    }

    #[test]
    fn labeled_render_round_trip(s in board()) {
        let t = closure(&s);
        let text = t.render(RenderStyle::Ascii);
        let (_, start, labels) = parse_labeled_board(&text).unwrap();
        prop_assert_eq!(start, s);
        prop_assert_eq!(labels, t.labels());
    }

    #[test]
    fn trace_invariants(s in board()) {
        let t = closure(&s);
        prop_assert_eq!(t.depth, t.steps.len());
        let mut state = s;
        for (i, step) in t.steps.iter().enumerate() {
            prop_assert_eq!(step.index, i + 1);
            prop_assert!(!step.added.is_empty());
            prop_assert!(step.added.intersection(&state).is_empty());
            prop_assert_eq!(step.added, dependent_set(&state) - state);
            prop_assert_eq!(step.firing.len(), step.added.len());
            for lines in step.firing.values() {
                prop_assert!(!lines.is_empty());
            }
            state = state | step.added;
        }
        prop_assert_eq!(state, t.closure);
        prop_assert_eq!(t.completions_per_step().len(), t.depth);
        // Every added cell completes at least one line at its step.
        for c in t.completions_per_step() {
            prop_assert!(c >= 1);
        }
        let lines = make_lines(s.size());
        let complete_in = |set: &CellSet| lines.iter().filter(|l| l.mask.is_subset(set)).count();
        let completed: BTreeSet<_> = t.steps.iter().flat_map(|s| s.completed.iter().copied()).collect();
        let total: usize = t.completions_per_step().iter().sum();
        prop_assert_eq!(completed.len(), total);
        prop_assert_eq!(complete_in(&s) + total, complete_in(&t.closure));
        prop_assert!(t.depth <= complete_in(&t.closure));
    }

    #[test]
    fn trace_json_round_trip(s in board()) {
        let doc = closure(&s).to_document();
        let back = TraceDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert!(back.verify().is_ok());
    }
}

#[test]
fn tampered_trace_is_rejected() {
    let (_, s) = parse_board("#.#\n...\n#..").unwrap();
    let mut doc = closure(&s).to_document();
    doc.depth += 1;
    assert!(doc.verify().is_err());
}
