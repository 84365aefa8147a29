"""The BGG functor on squarefree exterior modules and the dualities around it.

Run: python demos/02_bgg_functor.py
"""

from __future__ import annotations

from sqbgg.bgg import bgg_L, cohomology_modules, dual_S, growth_profile
from sqbgg.exactla import QQ
from sqbgg.simplicial import SimplicialComplex, format_subset
from sqbgg.sqmod import alexander, cohomology_dims, dual_E, ext_dims, minimal_primes, residue_field, sr_module


def show(label, H):
    nz = {i: d for i, d in H.items() if any(d)}
    print(f"{label}:")
    for i, dims in sorted(nz.items()):
        deg = ", ".join(f"{format_subset(F)}:{v}" for F, v in enumerate(dims) if v)
        print(f"  H^{i}  {deg}")


n = 3
tri = SimplicialComplex.from_vertex_lists(n, [[1, 2], [1, 3], [2, 3]])

# K and its dual sit at opposite ends
show("L(K)", cohomology_dims(bgg_L(residue_field(n, QQ, "E"))))
show("L(K*)", cohomology_dims(bgg_L(dual_E(residue_field(n, QQ, "E")))))

# the exterior face ring of the circle: one cohomology module, supported on the full face
N = sr_module(tri, "face-ring", "E")
H = cohomology_modules(bgg_L(N))
for i, M in H.items():
    print(f"L(K{{D}}) H^{i} minimal primes:", sorted(format_subset(F) for F in minimal_primes(M)))
g = growth_profile(N)
print("growth profile d:", g.d, " e:", g.e)

# D_S computed as A . L . E, against Ext from a free resolution
M = sr_module(tri, "face-ring")
show("D_S(K[D])", cohomology_dims(dual_S(M)))
show("Ext(K[D], w)", ext_dims(M))

# Alexander duality on modules sends K[D] to the ideal of the dual complex
show("A(K[D])", cohomology_dims(alexander(M)))
