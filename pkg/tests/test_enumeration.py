import pytest

from gridsub.enumeration import (
    ALL_PAIRS,
    PAPER_LITERAL,
    BudgetExceeded,
    ConflictTable,
    Options,
    Subdivision,
    count_full_triangulations,
    count_subdivisions,
    count_subdivisions_with_stats,
    list_subdivisions,
)
from gridsub.geometry import Configuration, Edge, candidate_edges
from gridsub.tworow import count_two_row_all, count_two_row_bimonotone

from oracles import brute_force_subdivisions


def E(a, b):
    return Edge.between(a, b)


@pytest.mark.parametrize("cols, rows, bim, expected", [
    (2, 2, True, 2), (2, 2, False, 3),
    (3, 3, True, 528), (3, 3, False, 2224),
])
def test_grid_examples(cols, rows, bim, expected):
    assert count_subdivisions(Configuration.grid(cols, rows), bim) == expected


def test_two_by_six():
    g = Configuration.grid(6, 2)
    assert count_subdivisions(g, True) == 6304
    assert count_subdivisions(g, False) == 26928


def test_list_2x2():
    g = Configuration.grid(2, 2)
    got = [s.edges for s in list_subdivisions(g)]
    assert got == [(), (E((0, 0), (1, 1)),), (E((0, 1), (1, 0)),)]
    assert [s.edges for s in list_subdivisions(g, True)] == [(), (E((0, 0), (1, 1)),)]


def test_list_triangle_has_one_subdivision():
    got = list(list_subdivisions(Configuration.two_row(2, 1)))
    assert [s.edges for s in got] == [()]


def test_list_limit():
    assert len(list(list_subdivisions(Configuration.grid(3, 3), limit=5))) == 5


@pytest.mark.parametrize("cols, rows", [(3, 2), (2, 3), (3, 3), (4, 2)])
def test_list_is_sorted_unique_and_matches_count(cols, rows):
    g = Configuration.grid(cols, rows)
    for bim in (True, False):
        subs = [s.edges for s in list_subdivisions(g, bim)]
        assert subs == sorted(subs)
        assert len(set(subs)) == len(subs) == count_subdivisions(g, bim)


@pytest.mark.parametrize("cols, rows", [(3, 2), (4, 2), (3, 3), (4, 3)])
def test_transpose_invariance(cols, rows):
    for bim in (True, False):
        assert count_subdivisions(Configuration.grid(cols, rows), bim) == \
            count_subdivisions(Configuration.grid(rows, cols), bim)


def test_bimonotone_never_exceeds_all():
    for cols, rows in [(2, 2), (3, 2), (4, 2), (3, 3)]:
        g = Configuration.grid(cols, rows)
        assert count_subdivisions(g, True) <= count_subdivisions(g, False)


def test_counts_grow_with_columns():
    seq = [count_subdivisions(Configuration.grid(c, 2)) for c in range(2, 6)]
    assert seq == sorted(seq) and len(set(seq)) == len(seq)


@pytest.mark.parametrize("m", range(2, 7))
def test_agrees_with_two_row_recursion(m):
    for n in range(2, m + 1):
        for top, bottom in {(m, n), (n, m)}:
            cfg = Configuration.two_row(top, bottom)
            assert count_subdivisions(cfg, True) == count_two_row_bimonotone(top, bottom)
            assert count_subdivisions(cfg, False) == count_two_row_all(top, bottom)


def test_soundness_of_listed_subdivisions():
    for cfg in (Configuration.grid(3, 3), Configuration.two_row(4, 3)):
        for sub in list_subdivisions(cfg):
            assert sub.is_valid()


def test_invalid_subdivision_detected():
    g = Configuration.grid(3, 3)
    assert not Subdivision(g, (E((0, 0), (1, 1)),)).is_valid()
    assert not Subdivision(g, (E((0, 0), (1, 1)), E((0, 1), (1, 0)))).is_valid()


@pytest.mark.parametrize("cfg", [
    Configuration.grid(3, 2), Configuration.grid(2, 3), Configuration.grid(3, 3),
    Configuration.two_row(4, 3), Configuration.two_row(3, 4),
])
def test_matches_face_extraction_oracle(cfg):
    for bim in (True, False):
        oracle = brute_force_subdivisions(cfg, bim)
        assert [s.edges for s in list_subdivisions(cfg, bim)] == oracle


def test_all_pairs_matches_oracle():
    g = Configuration.grid(3, 3)
    opts = Options(candidates=ALL_PAIRS)
    assert count_subdivisions(g, False, opts) == len(brute_force_subdivisions(g, False, primitive_only=False))


# Under all-pairs, (0,0)-(2,2) and the pair of unit diagonals draw the same picture.
def test_convention_values():
    g = Configuration.grid(3, 3)
    assert count_subdivisions(g, True, Options(candidates=ALL_PAIRS)) == 596
    assert count_subdivisions(g, False, Options(candidates=ALL_PAIRS)) == 2424
    assert count_subdivisions(g, False, Options(edge_interaction=PAPER_LITERAL)) == 2224
    assert count_subdivisions(g, False, Options(PAPER_LITERAL, ALL_PAIRS)) == 3248


def test_budget_exceeded():
    g = Configuration.grid(3, 3)
    with pytest.raises(BudgetExceeded):
        count_subdivisions(g, False, Options(node_budget=100))
    with pytest.raises(BudgetExceeded):
        count_subdivisions(g, False, Options(node_budget=100, threads=2, split_depth=4))


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("GRIDSUB_BUDGET_NODES", "50")
    with pytest.raises(BudgetExceeded):
        count_subdivisions(Configuration.grid(3, 3))


def test_stats_report_nodes():
    count, nodes = count_subdivisions_with_stats(Configuration.grid(3, 2))
    assert count == 26 and nodes >= count


@pytest.mark.parametrize("cfg", [Configuration.grid(3, 3), Configuration.grid(4, 3)])
def test_conflict_table_symmetric(cfg):
    for rule in ("strict", "paper-literal"):
        table = ConflictTable.build(cfg, candidate_edges(cfg), rule)
        assert table.is_symmetric()


def test_threads_agree():
    g = Configuration.grid(3, 3)
    opts = Options(threads=4, split_depth=6)
    assert count_subdivisions(g, True, opts) == 528
    assert count_subdivisions(g, False, opts) == 2224


@pytest.mark.parametrize("cols, rows, bim, expected", [
    (2, 2, True, 1), (2, 2, False, 2),
    (3, 2, True, 2), (3, 2, False, 6),
    (3, 3, True, 9), (3, 3, False, 64),
])
def test_full_triangulations(cols, rows, bim, expected):
    assert count_full_triangulations(Configuration.grid(cols, rows), bim) == expected


def test_invalid_options():
    with pytest.raises(ValueError):
        Options(edge_interaction="loose")
    with pytest.raises(ValueError):
        Options(threads=0)
