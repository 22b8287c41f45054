"""Tail-equivalence dynamics: orbits, cylinders, minimality evidence.

A generator is a rule producing the path's vertex trace on demand.  The
orbit of x meets the cylinder of a prefix exactly when some level
admits a finite path from the prefix's end to the trace; No verdicts
combine a certified eventual-linear trace with a drift-bounding
invariant.
"""

from gbdkit import (
    alternating_from,
    climbing,
    cylinder_at,
    leftmost_slant_from,
    make_diagram,
    metric_dist,
    minimality_certificate,
    orbit_visits_cylinder,
    tail_equivalent,
    trace_trisection,
    transitivity_probe,
    vertical_from,
)

o2 = make_diagram("odometer_two_sided")
alt = alternating_from(o2, 0)
print("alternating path trace:", [alt.vertex_at(m) for m in range(8)])
on, left, right = trace_trisection(alt, 4, (-3, 3))
print("trisection at level 3: on =", on[3], "left <", on[3][0],
      "right >", on[3][0])

print("\nthe alternating orbit is dense at cylinder depth 3:")
print(" ", transitivity_probe(o2, alt, 3, (-6, 6)).value)
print("a vertical path misses the cylinder one step to its left:")
print(" ", orbit_visits_cylinder(o2, vertical_from(o2, 2),
                                 cylinder_at(o2, 1)).value)
print("a pure slant misses the cylinder one step to its right:")
v = orbit_visits_cylinder(o2, leftmost_slant_from(o2, 2), cylinder_at(o2, 3))
print(f"  {v.value} via {v.certificate.kind}{v.certificate.params}")

print("\nmetric and tail equivalence:")
x = vertical_from(o2, 0)
print("  dist(alternating, vertical at 0) =", metric_dist(alt, x))
print("  tail equivalent?", tail_equivalent(alt, x).value)

print("\nminimality evidence:")
rs = make_diagram("renewal_shift")
m = minimality_certificate(rs)
print(f"  renewal: {m.value}; forced to hit vertex "
      f"{m.witness['distinguished_vertex']} within b(w) = w - 1 steps")
td = make_diagram("tridiag_B")
m = minimality_certificate(td)
print(f"  1/2/1 band: {m.value}; witness orbit "
      f"{m.detail['witness']['generator']['kind']} misses the cylinder at "
      f"{m.detail['witness']['missed_cylinder_vertex']}")

print("\nunbounded traces are the dense ones in the all-ones diagram:")
bi = make_diagram("b_infinity")
print("  climbing:", transitivity_probe(bi, climbing(bi, 1), 3, (1, 8)).value)
print("  bounded vertical:",
      transitivity_probe(bi, vertical_from(bi, 2), 2, (1, 6)).value)
