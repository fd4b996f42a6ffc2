"""Two faces bump, two new faces emerge.

Along gamma_t = [[-1+it, -1], [1, 0]] the unit spheres I(g) and I(G) approach
each other as t decreases, touch at t = sqrt(3), and overlap below it; the
spheres of g^2 and g^-2 surface exactly at the tangency.  The sweep brackets
the event and classifies it as bumping.
"""

import math

import numpy as np

import fordbody as fb
from fordbody.sweep import RepPath, constant_matrix, sweep

alpha = constant_matrix(1, 5 + 1j, 0, 1)
beta = constant_matrix(1, 5.5j, 0, 1)
gamma = (((-1 + 0j, 1j), (-1 + 0j,)), ((1 + 0j,), (0j,)))
path = RepPath(2.0, 1.2, alpha, beta, gamma, samples=64)

print("face counts along the path:")
for t in np.linspace(2.0, 1.2, 9):
    fd = fb.run_procedure(path.rep_at(float(t)))
    print(f"  t={t:.2f}: faces={sorted(fd.face_strings())} "
          f"edges={len(fd.edges)}")

timeline, events = sweep(path)
event = events[0]
print("\nevent:", event.kind.value)
print("bracket:", event.bracket, f"(width {event.width:.2e})")
print("sqrt(3) =", math.sqrt(3), "inside:",
      min(event.bracket) <= math.sqrt(3) <= max(event.bracket))
print("witnesses:", {k: v for k, v in event.witnesses.items()
                     if k in ("new_faces", "bumped_pairs")})

fd = fb.run_procedure(path.rep_at(1.2))
e = fd.edges[0]
print("\nat t=1.2 the single edge class:")
print("  cycle:", [w.to_string() for w in e.cycle_words])
print("  interior angle sum - 2pi:", e.angle_sum - 2 * math.pi)
print("  monodromy deviation:", e.monodromy_deviation)
