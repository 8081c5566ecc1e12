"""A chiral map on the torus and its distinguished generators.

Run: python3 demos/02_chiral_torus.py
"""

import numpy as np

from polytwo import catalog
from polytwo.classify import classify
from polytwo.generators import distinguished_generators, factorize, verify_relations

# {4,4} modulo the lattice spanned by (2,1) and (-1,2): five squares.
t = catalog.torus_44(2, 1)
prof = classify(t)
print("torus (2,1):", prof.label(), "chiral:", prof.chirality,
      "flags", prof.flag_count, "group", prof.group_order)

# No rank is in the class type set, so only the alpha_{j,k} survive.
gs = distinguished_generators(t)
print("\ngenerators:", [label for label, _ in gs.labelled()])
print("orders:", {label: x.order() for label, x in gs.labelled()})

# Any automorphism splits into a word of generators read off a flag path.
psi = gs.group.random_element(np.random.default_rng(7))
tr = factorize(gs, psi)
print("\nrandom element word:", tr.word)
print("factors:", tr.factor_labels())
print("product matches:", tr.product == psi)

rel = verify_relations(gs)
print("\nrelations:", rel.to_json()["verdict"], "over", rel.to_json()["instances"], "instances")
