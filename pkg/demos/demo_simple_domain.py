"""The simplest Ford domain: two disjoint unit hemispheres.

With c = 2+i and a large cusp lattice, the only visible faces are the
isometric spheres of the tunnel generator and its inverse; the domain has no
edges, the verifier passes vacuously, and the core tunnel is certified
geodesic as the dual edge of that single glued face.
"""

import fordbody as fb

rep = fb.Representation.from_standard(6 + 2j, 4.5j, 2 + 1j)
print("reduced lattice:", rep.lattice.a, rep.lattice.b)
print("I(g): center 0, radius 1; I(G): center", rep.c, ", radius 1")

fd = fb.run_procedure(rep)
print("\nstatus:", fd.status.value)
print("visible faces:", sorted(f.word.to_string() for f in fd.faces))
print("edge classes:", len(fd.edges))
print("verifier passed:", fd.poincare.passed)
print("minimally parabolic:", fd.min_parabolic.value)

dual = fb.build_dual(fd)
print("\ndual complex (edges, faces, cells):", dual.counts())
print("tunnel:", fb.core_tunnel_status(fd).certification.value)

scene = fb.to_scene(fd, dual)
with open("simple_domain.svg", "w") as fh:
    fh.write(fb.to_svg(scene))
print("\nwrote simple_domain.svg with", len(scene.circles), "circles")
