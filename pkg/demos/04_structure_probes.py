"""Certified structural probes.

Every verdict is three-valued.  Yes carries a finite witness that
re-validates against the rows; No carries an invariant verified
exhaustively on a window and backed by a structural flag beyond it;
anything else is Unknown at the searched depth.
"""

from gbdkit import (
    bounded_size_params,
    classify_irreducibility_type,
    compact_cylinder_check,
    cone_bound,
    connected_probe,
    cylinder_at,
    invariant_certificate,
    irreducible_probe,
    make_diagram,
    period_of_index,
    to_text,
)

rs = make_diagram("renewal_shift")
v = irreducible_probe(rs, 3, 7)
print("renewal 3 -> 7:", v.value,
      "| witness trace:", v.witness.vertex_trace())

bi = make_diagram("b_infinity")
v = irreducible_probe(bi, 2, 1)
print("all-ones 2 -> 1:", v.value)
print(to_text(v.certificate.describe()))

p1 = make_diagram("parity_1")
p2 = make_diagram("parity_2")
print("offset-1 band invariants:",
      [(i.kind, i.params) for i in invariant_certificate(p1)])
print("offset-2 band invariants:",
      [(i.kind, i.params) for i in invariant_certificate(p2)])
print("period of the offset-1 band at vertex 0:", period_of_index(p1, 0, 8))

print("\nconnectedness:")
for name in ("renewal_shift", "parity_1", "star_odometer"):
    d = make_diagram(name)
    v = connected_probe(d, 4)
    tag = v.value if not v.is_no else f"no ({v.certificate.kind})"
    print(f"  {name}: {tag}")

print("\nbounded-size geometry of the 1/2/1 band:")
td = make_diagram("tridiag_B")
print("  (t, L, exact):", bounded_size_params(td, 0))
interval, reach = cone_bound(td, 0, 0, 4)
print(f"  cone from 0@0 at level 4: interval {interval}, reach {reach}")
interval, reach = cone_bound(p1, 0, 0, 4)
print(f"  same for the offset-1 band: interval {interval}, reach {reach}")

print("\ncompactness of cylinders:")
for name, vtx in [("tridiag_B", 0), ("renewal_shift", 4),
                  ("b_infinity", 5), ("star_odometer", 3)]:
    d = make_diagram(name)
    print(f"  {name} at {vtx}: {compact_cylinder_check(d, cylinder_at(d, vtx)).value}")

print("\nirreducibility classification:")
for name in ("renewal_shift", "tridiag_B", "b_infinity", "star_odometer"):
    print(f"  {name}: {classify_irreducibility_type(make_diagram(name)).kind}")
