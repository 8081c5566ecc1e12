"""Walk through the medial construction and what the classifier sees.

Run: python3 demos/01_two_orbit_examples.py
"""

from polytwo import catalog
from polytwo.classify import classify, double_schlafli, face_transitivity_report

# The cube is regular: one flag orbit, every adjacency stays inside it.
cube = catalog.get("cube")
prof = classify(cube)
print("cube:", prof.label(), "flags", prof.flag_count, "group", prof.group_order)

# Its medial has vertices at the cube's edge midpoints.  Triangles come from
# the old vertices and squares from the old faces, so two flag orbits appear.
cubo = catalog.medial(cube)
prof = classify(cubo)
print("\nmedial(cube):", cubo.face_counts(), "->", prof.label())
sym = double_schlafli(cubo)
print("  rows of 2-section sizes:", sym.top, "over", sym.bottom)
print("  faces per rank in orbits:",
      face_transitivity_report(cubo).details["orbits_per_rank"])

# Dualising swaps the roles of ranks 0 and 2, and the class follows.
rd = catalog.get("rhombic_dodecahedron")
print("\nrhombic dodecahedron:", classify(rd).label(), double_schlafli(rd).rows())

# The same construction on the projective hemi-cube stays two-orbit.
hemi = catalog.get("hemi_cuboctahedron")
prof = classify(hemi)
print("\nhemi-cuboctahedron:", prof.label(), "chiral" if prof.chirality else "not chiral",
      "group", prof.group_order)
