"""Recover a face lattice from the group alone.

Run: python3 demos/03_rebuild_from_cosets.py
"""

from polytwo import catalog
from polytwo.order import coset_count_check, order_data, rebuild_order
from polytwo.poset import is_isomorphic

for name in ("cuboctahedron", "torus_2_1", catalog.search_specimens()[0].name):
    p = catalog.get(name)
    data = order_data(p)
    print(f"{name}: class type set {sorted(data.gs.I)}, special rank {data.special}")
    # faces are cosets of the stabilizer subgroups; count them per rank
    for r, row in coset_count_check(p, data).details.items():
        print(f"  rank {r}: {row['faces']} faces, index {row['index']}")
    q = rebuild_order(p, data)
    print("  rebuilt poset isomorphic to the original:", is_isomorphic(p, q))
    print()
