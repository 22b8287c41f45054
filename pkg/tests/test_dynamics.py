from fractions import Fraction

import pytest

from gbdkit import (
    Edge,
    FinitePath,
    InvalidEdgeError,
    alternating_from,
    classify_edge,
    climbing,
    cone_shift,
    count_paths,
    cylinder_at,
    cylinders_ending_in,
    eventually_vertical,
    identity,
    leftmost_slant_from,
    level_shift,
    make_diagram,
    make_generator,
    metric_dist,
    minimality_certificate,
    orbit_visits_cylinder,
    prefix_from_trace,
    pushed_generator,
    relabel,
    tail_equivalent,
    trace_trisection,
    transitivity_probe,
    vertical_from,
)


# --- generators ------------------------------------------------------------------

def test_generator_traces():
    o2 = make_diagram("odometer_two_sided")
    alt = alternating_from(o2, 0)
    assert [alt.vertex_at(m) for m in range(6)] == [0, 0, -1, -1, -2, -2]
    assert alt.vertex_at(2) == alt.vertex_at(3) == -1
    sl = leftmost_slant_from(o2, 0)
    assert [sl.vertex_at(m) for m in range(4)] == [0, -1, -2, -3]
    bi = make_diagram("b_infinity")
    up = climbing(bi, 1)
    assert [up.vertex_at(m) for m in range(5)] == [1, 2, 3, 4, 5]
    assert vertical_from(bi, 5).vertex_at(100) == 5


def test_generator_validates_lazily():
    p1 = make_diagram("parity_1")  # no vertical edges at all
    x = vertical_from(p1, 0)
    assert x.vertex_at(3) == 0  # trace evaluation alone is fine
    with pytest.raises(InvalidEdgeError):
        x.edge_at(0)


def test_eventual_certificates():
    o2 = make_diagram("odometer_two_sided")
    ev = leftmost_slant_from(o2, 3).eventual(64)
    assert ev.certified and ev.step == -1 and ev.period == 1
    ev = alternating_from(o2, 0).eventual(64)
    assert ev.certified and (ev.period, ev.step) == (2, -1)
    rs = make_diagram("renewal_shift")
    ev = leftmost_slant_from(rs, 5).eventual(64)
    assert ev.certified and ev.step == 0  # absorbed at the hub vertex
    bi = make_diagram("b_infinity")
    ev = climbing(bi, 1).eventual(64)
    assert ev is not None and not ev.certified  # no translation structure


def test_table_then_rule():
    rs = make_diagram("renewal_shift")
    g = make_generator(rs, "table_then_rule", table=[4, 3, 2, 1],
                       tail={"kind": "vertical"})
    assert [g.vertex_at(m) for m in range(6)] == [4, 3, 2, 1, 1, 1]
    g.validate_to(10)


# --- metric and tail equivalence ----------------------------------------------

def test_metric_values():
    o1 = make_diagram("odometer_one_sided")
    x = vertical_from(o1, 1)
    assert metric_dist(x, x) == 0
    y = vertical_from(o1, 2)
    assert metric_dist(x, y) == 1
    bi = make_diagram("b_infinity")
    a = make_generator(bi, "eventually_vertical", prefix=[1, 1, 1, 1], vertex=2)
    b = vertical_from(bi, 1)
    assert metric_dist(a, b) == Fraction(1, 8)


def test_tail_equivalence():
    o1 = make_diagram("odometer_one_sided")
    x = vertical_from(o1, 5)
    y = make_generator(o1, "eventually_vertical", prefix=[7, 6, 5], vertex=5)
    v = tail_equivalent(y, x)
    assert v.is_yes and v.witness == 2
    assert tail_equivalent(x, x).witness == 0
    assert tail_equivalent(vertical_from(o1, 1), vertical_from(o1, 2)).is_no
    o2 = make_diagram("odometer_two_sided")
    assert tail_equivalent(vertical_from(o2, 0),
                           leftmost_slant_from(o2, 0)).is_no


# --- orbits ----------------------------------------------------------------------

def test_orbit_yes_revalidates():
    rs = make_diagram("renewal_shift")
    x = vertical_from(rs, 1)
    c = prefix_from_trace(rs, [5, 4, 3])
    v = orbit_visits_cylinder(rs, x, c)
    assert v.is_yes
    w = v.witness
    merged = FinitePath(0, c.start_vertex,
                        tuple(c.edges) + tuple(w["connecting_path"].edges))
    assert merged.validate(rs)
    assert merged.end_vertex == x.vertex_at(w["level"])


def test_orbit_no_examples():
    bi = make_diagram("b_infinity")
    v = orbit_visits_cylinder(bi, vertical_from(bi, 2), cylinder_at(bi, 5))
    assert v.is_no and v.certificate.kind == "triangular_support"
    o2 = make_diagram("odometer_two_sided")
    v = orbit_visits_cylinder(o2, vertical_from(o2, 4), cylinder_at(o2, 3))
    assert v.is_no
    v = orbit_visits_cylinder(o2, leftmost_slant_from(o2, 4), cylinder_at(o2, 5))
    assert v.is_no and v.certificate.kind == "cone_bound"


def test_orbit_no_cross_checked_exactly():
    # wherever a No is claimed the exact counts at small depth must be zero
    cases = [
        ("b_infinity", vertical_from, 2, 5),
        ("odometer_two_sided", vertical_from, 4, 3),
        ("odometer_two_sided", leftmost_slant_from, 4, 5),
        ("star_odometer", vertical_from, 2, 3),
    ]
    for name, gen, start, cyl in cases:
        d = make_diagram(name)
        x = gen(d, start)
        assert orbit_visits_cylinder(d, x, cylinder_at(d, cyl)).is_no
        for m in range(1, 10):
            assert count_paths(d, cyl, 0, x.vertex_at(m), m) == 0


def test_cylinder_enumeration_is_exhaustive():
    td = make_diagram("tridiag_B")
    cyls = cylinders_ending_in(td, 2, (0, 0))
    # backward tree: 4 incoming edge choices per level
    assert len(cyls) == 16
    assert len({(c.start_vertex, c.edges) for c in cyls}) == 16
    for c in cyls:
        assert c.end_vertex == 0 and c.end_level == 2
        c.validate(td)


def test_transitivity_verdicts():
    bi = make_diagram("b_infinity")
    assert transitivity_probe(bi, climbing(bi, 1), 3, (1, 8)).is_yes
    v = transitivity_probe(bi, vertical_from(bi, 2), 2, (1, 6))
    assert v.is_no  # a bounded orbit misses high cylinders
    o2 = make_diagram("odometer_two_sided")
    assert transitivity_probe(o2, alternating_from(o2, 0), 3, (-6, 6)).is_yes
    assert transitivity_probe(o2, vertical_from(o2, 0), 2, (-4, 4)).is_no


def test_minimality_renewal_and_consequence():
    rs = make_diagram("renewal_shift")
    m = minimality_certificate(rs)
    assert m.is_yes
    assert m.witness["distinguished_vertex"] == 1
    assert all(b == w - 1 for w, b in m.witness["forced_bounds"].items())
    # minimal evidence implies dense-orbit evidence for tested generators
    for g in (vertical_from(rs, 1), leftmost_slant_from(rs, 4),
              make_generator(rs, "table_then_rule", table=[3, 2, 1],
                             tail={"kind": "vertical"})):
        assert transitivity_probe(rs, g, 2, (1, 5)).is_yes


def test_minimality_negative_witnesses():
    td = make_diagram("tridiag_B")
    m = minimality_certificate(td)
    assert m.is_no and m.certificate.kind == "cone_bound"
    so = make_diagram("star_odometer")
    m = minimality_certificate(so)
    assert m.is_no
    assert m.detail["witness"]["generator"]["kind"] == "vertical"
    o1 = make_diagram("odometer_one_sided")
    assert minimality_certificate(o1).is_no
    o2 = make_diagram("odometer_two_sided")
    assert minimality_certificate(o2).is_no
    bi = make_diagram("b_infinity")
    assert minimality_certificate(bi).is_no


def test_trisection():
    o2 = make_diagram("odometer_two_sided")
    on, left, right = trace_trisection(alternating_from(o2, 0), 4, (-3, 3))
    assert on[2] == [-1] and on[3] == [-1]
    assert -2 in left[2] and 0 in right[2]
    for n in range(5):
        combined = sorted(on[n] + left[n] + right[n])
        assert combined == list(range(-3, 4))
    x = vertical_from(o2, 2)
    on, left, right = trace_trisection(x, 3, (-3, 3))
    assert all(on[n] == [2] for n in range(4))
    assert all(set(left[n]) == set(range(-3, 2)) for n in range(4))


def test_classify_edge():
    o2 = make_diagram("odometer_two_sided")
    assert classify_edge(o2, Edge(0, 4, 4, 0)) == "vertical"
    assert classify_edge(o2, Edge(0, 5, 4, 0)) == "slanted"
    with pytest.raises(InvalidEdgeError):
        classify_edge(o2, Edge(0, 4, 6, 0))
    alt = alternating_from(o2, 0)
    kinds = [classify_edge(o2, alt.edge_at(m)) for m in range(6)]
    assert kinds == ["vertical", "slanted"] * 3


def test_relabel_equivariance_shift_family():
    cases = [
        ("odometer_two_sided", level_shift(1)),
        ("odometer_two_sided", cone_shift(1)),
        ("tridiag_B", level_shift(2)),
        ("tridiag_B", identity(make_diagram("tridiag_B").indexing)),
    ]
    for name, g in cases:
        d = make_diagram(name)
        d2 = relabel(d, g)
        battery = [(vertical_from(d, 1), 0), (vertical_from(d, 0), -1)]
        if d.out_edges_exact(0, 0) is not None:
            battery.append((leftmost_slant_from(d, 0), 1))
        for x, cv in battery:
            c = cylinder_at(d, cv)
            v1 = orbit_visits_cylinder(d, x, c)
            x2 = pushed_generator(x, g, d2)
            c2 = cylinder_at(d2, g.forward(0, cv))
            v2 = orbit_visits_cylinder(d2, x2, c2)
            assert v1.value == v2.value, (name, g.kind, x.kind, cv)


def test_renewal_no_compact_neighborhood_consistency():
    # minimal relation + a vertex of infinite out-degree on every orbit:
    # no tested prefix has a compact cylinder
    from gbdkit import compact_cylinder_check
    rs = make_diagram("renewal_shift")
    assert minimality_certificate(rs).is_yes
    for v in range(1, 9):
        for c in cylinders_ending_in(rs, 2, (v, v))[:4]:
            assert compact_cylinder_check(rs, c).is_no


def test_metric_on_prefixes():
    rs = make_diagram("renewal_shift")
    a = prefix_from_trace(rs, [3, 2, 1, 1])
    b = prefix_from_trace(rs, [3, 2, 1, 5])
    assert metric_dist(a, b) == Fraction(1, 4)
    assert metric_dist(a, vertical_from(rs, 1)) == 1  # differ at the first edge
    c = prefix_from_trace(rs, [3, 2])
    assert metric_dist(a, c) == 0  # agree on every compared index


def test_unknown_generator_kind():
    from gbdkit import UnknownKindError, parse_generator
    rs = make_diagram("renewal_shift")
    with pytest.raises(UnknownKindError):
        parse_generator(rs, {"kind": "zigzag", "vertex": 1})
    with pytest.raises(UnknownKindError):
        parse_generator(rs, {"vertex": 1})
