"""A slide: a third face pair surfaces at the end of an existing edge.

Continuing the bumping family below t ~ 1, the spheres of g^2 slide along
those of g^(-1) until their intersection is visible; g^(+-3) surface at the
boundary point of the existing edge.  The dual complex picks up a 3-cell: an
ideal tetrahedron over the new vertex class.
"""

import math

import fordbody as fb
from fordbody.sweep import RepPath, constant_matrix, sweep

alpha = constant_matrix(1, 5 + 1j, 0, 1)
beta = constant_matrix(1, 5.5j, 0, 1)
gamma = (((-1 + 0j, 1j), (-1 + 0j,)), ((1 + 0j,), (0j,)))
path = RepPath(1.2, 0.8, alpha, beta, gamma, samples=64)

timeline, events = sweep(path)
for e in events:
    print("event:", e.kind.value, "bracket:", e.bracket)
    print("new faces:", e.witnesses.get("new_faces"))

fd = fb.run_procedure(path.rep_at(0.8))
print("\nat t=0.8:")
print("faces:", sorted(fd.face_strings()))
for i, e in enumerate(fd.edges):
    print(f"edge[{i}]: arcs", [(r.s1.word.to_string(), r.s2.word.to_string())
                               for r in e.arcs],
          f"angle sum - 2pi = {e.angle_sum - 2 * math.pi:.2e}")
print("vertex classes:", len(fd.vertices),
      "| cusp members of the first:", len(fd.vertices[0].members))

dual = fb.build_dual(fd)
print("\ndual (edges, faces, cells):", dual.counts())
cell = dual.dual_cells[0]
print("the 3-cell is an ideal tetrahedron:",
      cell.ideal_vertex_count, "ideal vertices")
print("its vertical face slots (by edge class, with multiplicity):",
      dual.identifications["cell_face_multiplicity"][0])

scene = fb.to_scene(fd, dual)
with open("sliding_domain.svg", "w") as fh:
    fh.write(fb.to_svg(scene))
print("\nwrote sliding_domain.svg")
