import pytest

from gbdkit import (
    InvalidVertexError,
    InvariantError,
    ParseError,
    SchemaError,
    UnsupportedLevelError,
    load_spec,
    make_diagram,
    one_sided,
    two_sided,
)


def test_indexing_ranks_roundtrip():
    for idx in (two_sided(), one_sided(0), one_sided(1)):
        for r in range(40):
            assert idx.canonical_rank(idx.from_rank(r)) == r


def test_one_sided_rejects_below_base():
    d = make_diagram("renewal_shift")
    with pytest.raises(InvalidVertexError):
        d.in_edges(0, 0)


def test_renewal_rows():
    d = make_diagram("renewal_shift")
    assert d.in_edges(3, 1) == [(1, 1), (2, 1)]
    assert d.in_edges(0, 5) == [(1, 1), (6, 1)]


def test_tridiag_rows_and_window():
    d = make_diagram("tridiag_B")
    assert d.in_edges(2, 0) == [(-1, 1), (0, 2), (1, 1)]
    assert d.incidence_window(0, (-1, 1), (-1, 1)) == [
        [2, 1, 0], [1, 2, 1], [0, 1, 2]]


def test_b_infinity_rows():
    d = make_diagram("b_infinity")
    assert d.in_edges(0, 3) == [(1, 1), (2, 1), (3, 1)]
    assert d.in_edges(0, 1) == [(1, 1)]


def test_out_edges_windowed():
    rs = make_diagram("renewal_shift")
    assert rs.out_edges_in_window(0, 1, (1, 4)) == [
        (1, 1), (2, 1), (3, 1), (4, 1)]
    td = make_diagram("tridiag_B")
    assert td.out_edges_in_window(0, 0, (-1, 1)) == [(-1, 1), (0, 2), (1, 1)]
    assert td.out_edges_in_window(0, 0, (5, 7)) == []


def test_zero_entry_window():
    rs = make_diagram("renewal_shift")
    assert rs.incidence_window(0, (5, 5), (3, 3)) == [[0]]


def test_rows_nonempty_and_positive(each_diagram):
    d = each_diagram
    lo, hi = d.indexing.default_interval(10)
    for n in range(3):
        for v in range(lo, hi + 1):
            row = d.in_edges(n, v)
            assert row, (d.name, n, v)
            assert all(m >= 1 for _, m in row)
            assert [w for w, _ in row] == sorted({w for w, _ in row})


def test_out_in_consistency(each_diagram):
    d = each_diagram
    lo, hi = d.indexing.default_interval(6)
    for n in range(2):
        for w in range(lo, hi + 1):
            for v, mult in d.out_edges_in_window(n, w, (lo, hi)):
                assert dict(d.in_edges(n, v)).get(w) == mult
        for v in range(lo, hi + 1):
            for w, mult in d.in_edges(n, v):
                if lo <= w <= hi:
                    assert (v, mult) in d.out_edges_in_window(n, w, (lo, hi))


def test_incidence_window_matches_rows(each_diagram):
    d = each_diagram
    lo, hi = d.indexing.default_interval(5)
    mat = d.incidence_window(1, (lo, hi), (lo, hi))
    for i, v in enumerate(range(lo, hi + 1)):
        row = dict(d.in_edges(1, v))
        for k, w in enumerate(range(lo, hi + 1)):
            assert mat[i][k] == row.get(w, 0)


def test_stationary_levels_agree(each_diagram):
    d = each_diagram
    assert d.stationary
    lo, hi = d.indexing.default_interval(5)
    base = d.incidence_window(0, (lo, hi), (lo, hi))
    for n in range(1, 9):
        assert d.incidence_window(n, (lo, hi), (lo, hi)) == base


def test_column_rules_match_rows(each_diagram):
    d = each_diagram
    lo, hi = d.indexing.default_interval(8)
    for w in range(lo, hi + 1):
        sup = d.column_support(0, w)
        if sup is None or not sup.is_finite:
            continue
        windowed = [(v, m) for v, m in sup.entries if lo <= v <= hi]
        assert windowed == d.out_edges_in_window(0, w, (lo, hi))


# --- spec format ---------------------------------------------------------------

def test_load_family_inline_json():
    d = load_spec('{"family":"renewal_shift"}')
    assert d.indexing.mode == "one_sided" and d.indexing.base == 1


def test_load_banded_equals_tridiag():
    d = load_spec('{"family":"banded","side":"two","offsets":{"-1":1,"0":2,"1":1}}')
    td = make_diagram("tridiag_B")
    assert d.incidence_window(0, (-5, 5), (-5, 5)) == \
        td.incidence_window(0, (-5, 5), (-5, 5))


def test_load_banded_empty_offsets_rejected():
    with pytest.raises(InvariantError):
        load_spec('{"family":"banded","offsets":{}}')


def test_load_yaml_block_form():
    text = """
family: odometer_one_sided
a: 3
"""
    d = load_spec(text)
    assert d.in_edges(0, 2) == [(2, 3), (3, 1)]


def test_load_explicit_and_extension():
    text = """
indexing: {mode: one_sided, base: 1}
levels:
  - {1: {1: 2}, 2: {1: 1, 2: 1}}
extension: repeat_last
"""
    d = load_spec(text)
    assert d.in_edges(0, 1) == [(1, 2)]
    assert d.in_edges(7, 2) == [(1, 1), (2, 1)]  # repeats the last level
    with pytest.raises(InvalidVertexError):
        d.in_edges(0, 9)


def test_load_explicit_error_beyond():
    text = """
indexing: {mode: one_sided, base: 1}
levels:
  - {1: {1: 2}, 2: {1: 1, 2: 1}}
"""
    d = load_spec(text)
    with pytest.raises(UnsupportedLevelError):
        d.in_edges(1, 1)


def test_float_rejected():
    with pytest.raises(SchemaError):
        load_spec('{"family":"odometer_one_sided","a":2.5}')


def test_parse_error():
    with pytest.raises(ParseError):
        load_spec("family: [unclosed")


def test_unknown_family():
    with pytest.raises(SchemaError):
        load_spec('{"family":"nope"}')


def test_declared_flag_failure_rejected():
    text = """
indexing: {mode: one_sided, base: 1}
levels:
  - {1: {1: 2}, 2: {1: 1, 2: 1}}
flags:
  - {kind: full_out_column, vertex: 2}
"""
    with pytest.raises(InvariantError):
        load_spec(text)


def test_empty_and_disjoint_windows():
    td = make_diagram("tridiag_B")
    assert td.out_edges_in_window(0, 0, (3, 1)) == []  # inverted interval
    rs = make_diagram("renewal_shift")
    assert rs.out_edges_in_window(0, 4, (1, 2)) == []
