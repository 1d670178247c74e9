"""Smoke test for the `bingo` extension module.

Build it first, e.g. `maturin develop -m crates/python/Cargo.toml`, or see
the README for a plain cargo build.
"""

import json

import bingo


def main():
    b = bingo.Board.parse("#.#\n...\n#..")
    assert b.n == 3 and len(b) == 3
    assert (0, 0) in b and (1, 1) not in b
    t = b.closure()
    assert t.depth == 2 and t.spans()
    assert t.closure == bingo.Board.full(3)
    assert b.general_dolmatic_extension() == b.dolmatic_step()
    assert json.loads(t.to_json())["depth"] == 2

    for name, depth in [("board2", 10), ("board3", 4), ("board4", 6), ("boardS", 12), ("board9", 18), ("board10", 20)]:
        entry = bingo.catalog_board(name)
        trace = entry.verify()
        assert trace.depth == depth == entry.expected_depth, name
        assert trace.labels == entry.labels, name

    b1 = bingo.catalog_board("board1").board
    assert sorted(b1.dependent_set().cells) == [(1, 1), (1, 3), (2, 0), (2, 4), (3, 2)]
    assert b1.depth() == 3 and len(b1.closure().closure) == 19

    for n in range(5, 12):
        board = bingo.construct_max_depth(n)
        assert board.board.depth() == 2 * n
        assert board.board.closure().final_rectangle() is not None

    ring = bingo.wrap_ring(bingo.catalog_board("board2"), 2)
    assert ring.board == bingo.catalog_board("board9").board

    maxima = [bingo.max_depth_exhaustive(n).max_depth for n in range(1, 5)]
    assert maxima == [1, 1, 4, 6], maxima
    report = bingo.max_depth_sampled(6, 2000, seed=7)
    assert report.seed == 7 and report.boards_examined == 2000
    assert bingo.bound_sweep(4) == []
    assert bingo.lemma1_sweep(6, samples=2000, seed=1) == []
    assert bingo.check_laws(3, "dependency") == (True, False, False)
    assert bingo.check_laws(3, "dolmatic_step") == (True, True, True)
    assert len(bingo.make_lines(5)) == 12

    try:
        bingo.Board.parse("#x\n..")
    except ValueError:
        pass
    else:
        raise AssertionError("bad board accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
