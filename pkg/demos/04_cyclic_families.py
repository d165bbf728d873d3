"""Cyclic-shifting families: how a ring shows up inside a path complex.

A ring on m vertices never appears as a single member above dimension 1 of a
path complex, but its rotations generate one m-element family of paths per
dimension.  These families are what lets path refinement recover everything
ring-based refinement can see.
"""

from pathcomplex import SimpleGraph, cyclic_families, lift_ring_complex

g = SimpleGraph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
cells = lift_ring_complex(g, 4)

for gid in cells.dim_range(2):
    ring = cells.carrier_of(gid)
    print("ring", "-".join(str(v) for v in ring))
    fam = cyclic_families(cells.member(gid))
    for p in range(fam.top_dim, -1, -1):
        listing = " ".join(
            "(" + ",".join(str(v) for v in seq) + ")"
            for seq in sorted(fam.families[p])
        )
        print(f"  dimension {p}: {listing}")
