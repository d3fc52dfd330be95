"""Tests for the exact recursion, the sequence generators, and the cache."""

import math

import pytest

import chocnum.chocolate as chocolate_mod
from chocnum.chocolate import (
    CacheFormatError,
    ChocolateTable,
    SequenceFrontierError,
    SequenceKind,
    SequenceSpec,
    chocolate2,
    chocolate_number,
    generate,
    load_cache,
    save_cache,
)

from reference_values import (
    DISTINCT_PREFIX,
    SQUARE_PREFIX,
    TABLE_5X5,
    TRIANGLE_PREFIX,
    TWO_BY_N_PREFIX,
)


def test_small_table_values():
    table = ChocolateTable()
    for m in range(1, 6):
        for n in range(1, 6):
            assert chocolate_number(m, n, table) == TABLE_5X5[m - 1][n - 1]


@pytest.mark.parametrize(
    "m,n,expected",
    [(2, 2, 4), (1, 1, 1), (3, 3, 9408), (4, 5, 2472100837326848)],
)
def test_chocolate_number_examples(m, n, expected):
    assert chocolate_number(m, n) == expected


def test_rejects_degenerate_bars():
    with pytest.raises(ValueError):
        chocolate_number(0, 3)
    with pytest.raises(ValueError):
        chocolate_number(3, 0)
    with pytest.raises(ValueError):
        chocolate2(0)


def test_factorial_row_and_memo_normalization():
    table = ChocolateTable()
    for n in range(1, 16):
        assert chocolate_number(1, n, table) == math.factorial(n - 1)
        assert chocolate_number(n, 1, table) == math.factorial(n - 1)
        assert table.memo[(1, n) if n > 1 else (1, 1)] == math.factorial(n - 1)
    assert all(m <= n for (m, n) in table.memo)


def test_symmetry():
    table = ChocolateTable()
    for m in range(1, 7):
        for n in range(1, 7):
            assert chocolate_number(m, n, table) == chocolate_number(n, m, table)


def test_values_even_off_the_first_row():
    table = ChocolateTable()
    for m in range(2, 7):
        for n in range(2, 7):
            assert chocolate_number(m, n, table) % 2 == 0


@pytest.mark.parametrize("n,expected", [(1, 1), (4, 1712), (6, 7918592)])
def test_chocolate2_examples(n, expected):
    assert chocolate2(n) == expected


def test_chocolate2_matches_general_recursion():
    # independent routes, so fresh tables on both sides
    for n in range(1, 31):
        assert chocolate2(n, ChocolateTable()) == chocolate_number(2, n, ChocolateTable())


def test_chocolate2_prefix():
    table = ChocolateTable()
    assert [chocolate2(n, table) for n in range(1, 12)] == TWO_BY_N_PREFIX


def test_chocolate2_reuses_table_entries():
    table = ChocolateTable()
    chocolate_number(2, 6, table)
    before = table.computed
    assert chocolate2(6, table) == 7918592
    assert table.computed == before  # all answers came from the memo


def test_generate_triangle_four_rows():
    entries = generate(SequenceSpec(SequenceKind.TRIANGLE_ROWS, 4))
    assert [v for _, v in entries] == [1, 1, 1, 2, 4, 2, 6, 56, 56, 6]
    assert entries[4] == ((2, 2), 4)
    assert entries[7] == ((2, 3), 56)


def test_generate_triangle_published_prefix():
    entries = generate(SequenceSpec(SequenceKind.TRIANGLE_ROWS, 7))
    assert [v for _, v in entries] == TRIANGLE_PREFIX


def test_generate_two_by_n_prefix():
    entries = generate(SequenceSpec(SequenceKind.TWO_BY_N, 11))
    assert entries == list(enumerate(TWO_BY_N_PREFIX, start=1))


def test_generate_square_prefix():
    entries = generate(SequenceSpec(SequenceKind.SQUARE, 7))
    assert [v for _, v in entries] == SQUARE_PREFIX


def test_generate_distinct_small_bound():
    entries = generate(SequenceSpec(SequenceKind.DISTINCT_SORTED, 60))
    assert [v for _, v in entries] == [1, 2, 4, 6, 24, 56]


def test_generate_distinct_published_prefix():
    entries = generate(SequenceSpec(SequenceKind.DISTINCT_SORTED, DISTINCT_PREFIX[-1]))
    assert [v for _, v in entries] == DISTINCT_PREFIX


def test_sequence_spec_rejects_bad_bound():
    with pytest.raises(ValueError):
        SequenceSpec(SequenceKind.SQUARE, 0)


def test_distinct_aborts_on_row_monotonicity_violation(monkeypatch):
    fake = {(1, 1): 1, (1, 2): 5, (1, 3): 2}
    monkeypatch.setattr(
        chocolate_mod, "chocolate_number", lambda m, n, table=None: fake[(m, n)]
    )
    with pytest.raises(SequenceFrontierError, match="not nondecreasing"):
        generate(SequenceSpec(SequenceKind.DISTINCT_SORTED, 10))


def test_distinct_aborts_on_diagonal_violation(monkeypatch):
    fake = {(1, 1): 5, (1, 2): 6, (1, 3): 11, (2, 2): 3}
    monkeypatch.setattr(
        chocolate_mod, "chocolate_number", lambda m, n, table=None: fake[(m, n)]
    )
    with pytest.raises(SequenceFrontierError, match="diagonal"):
        generate(SequenceSpec(SequenceKind.DISTINCT_SORTED, 10))


def test_cache_roundtrip_empty(tmp_path):
    path = tmp_path / "empty.cache"
    save_cache(ChocolateTable(), path)
    assert path.read_text().splitlines() == [chocolate_mod.CACHE_HEADER]
    assert load_cache(path) == ChocolateTable()


def test_cache_roundtrip_entries(tmp_path):
    table = ChocolateTable()
    chocolate_number(3, 3, table)
    chocolate_number(2, 5, table)
    path = tmp_path / "table.cache"
    save_cache(table, path)
    reloaded = load_cache(path)
    assert reloaded == table
    assert "2 2 4" in path.read_text().splitlines()


def test_cache_reload_short_circuits_recursion(tmp_path):
    table = ChocolateTable()
    chocolate_number(3, 3, table)
    path = tmp_path / "table.cache"
    save_cache(table, path)
    reloaded = load_cache(path)
    assert reloaded.computed == 0
    assert chocolate_number(3, 3, reloaded) == 9408
    assert reloaded.computed == 0  # answered from the memo, no recursion


def test_cache_normalizes_transposed_keys(tmp_path):
    path = tmp_path / "flip.cache"
    path.write_text(f"{chocolate_mod.CACHE_HEADER}\n3 2 56\n")
    table = load_cache(path)
    assert table.memo == {(2, 3): 56}


def test_cache_rejects_wrong_version(tmp_path):
    path = tmp_path / "bad.cache"
    path.write_text("chocnum cache v9\n1 1 1\n")
    with pytest.raises(CacheFormatError, match="header"):
        load_cache(path)


def test_cache_reports_malformed_line_number(tmp_path):
    path = tmp_path / "bad.cache"
    path.write_text(f"{chocolate_mod.CACHE_HEADER}\n1 1 1\n2 2\n")
    with pytest.raises(CacheFormatError, match="line 3"):
        load_cache(path)
    path.write_text(f"{chocolate_mod.CACHE_HEADER}\n1 x 1\n")
    with pytest.raises(CacheFormatError, match="line 2"):
        load_cache(path)
    path.write_text(f"{chocolate_mod.CACHE_HEADER}\n0 1 1\n")
    with pytest.raises(CacheFormatError, match="positive"):
        load_cache(path)
