"""Why single simple paths fail boundary invariance, and differences succeed.

Take the 4-cycle 0-1-2-3.  Walking 0-1-2 is a perfectly good simple path, but
its signed boundary contains the diagonal 0-2, which is not an edge.  The
difference of the two walks from 0 to 2 cancels the diagonal exactly.
"""

from pathcomplex import SignedChain, SimpleGraph, chain_boundary, is_boundary_invariant

square = SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])

single = SignedChain.unit((0, 1, 2))
print("boundary of the single walk 0-1-2:")
print("   ", chain_boundary(single))
print("invariant?", is_boundary_invariant(single, square))
print()

difference = SignedChain.unit((0, 1, 2)) - SignedChain.unit((0, 3, 2))
print("boundary of the difference (0-1-2) - (0-3-2):")
print("   ", chain_boundary(difference))
print("invariant?", is_boundary_invariant(difference, square))
