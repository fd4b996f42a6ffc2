"""What indiscreteness looks like to the engine.

Every isometric sphere of a discrete group with a rank-2 cusp has radius at
most the minimal translation length of the cusp lattice.  Shrinking the
lattice below the sphere radius trips the screen: the run aborts with an
indiscreteness signal instead of pretending to terminate.
"""

import fordbody as fb

print("healthy input:")
fd = fb.run_procedure(fb.Representation.from_standard(6 + 2j, 4.5j, 2 + 1j))
print("  status:", fd.status.value, "| shimizu ok:", fd.shimizu.ok)

print("\nlattice shrunk to (0.5, 0.5i) against radius-1 spheres:")
fd = fb.run_procedure(fb.Representation.from_standard(0.5, 0.5j, 2 + 1j))
print("  status:", fd.status.value)
print("  reason:", fd.status_reason)
print("  verifier passed:", fd.poincare.passed)

print("\nbudget exhaustion is reported the same honest way:")
fd = fb.run_procedure(
    fb.Representation.from_standard(5 + 1j, 5.5j, -1 + 0.8j),
    budget=fb.Budget(max_iterations=2))
print("  status:", fd.status.value, "|", fd.status_reason)
