"""Distinguished pairs, extremal Betti numbers and how duality matches them.

Run: python demos/03_distinguished_and_extremal.py
"""

from __future__ import annotations

from sqbgg.betti import betti_koszul, extremal, projdim_reg
from sqbgg.bgg import distinguished_pairs_sq, distinguished_pairs_z, dual_S
from sqbgg.simplicial import SimplicialComplex, format_subset, popcount
from sqbgg.sqmod import alexander, sr_module

d = SimplicialComplex.from_vertex_lists(4, [[1, 2, 3], [3, 4], [2, 4]])
M = sr_module(d, "face-ring")
print("complex", d.to_json())

# squarefree pairs of M and of D_S(M): (F, i) <-> (F, -|F| - i)
P = distinguished_pairs_sq(M)
Q = distinguished_pairs_sq(dual_S(M))
print("pairs of M     ", sorted((format_subset(p.F), p.i) for p in P))
print("pairs of D_S(M)", sorted((format_subset(p.F), p.i) for p in Q))
print("matched:", {(p.F, -popcount(p.F) - p.i) for p in P} == {(q.F, q.i) for q in Q})

# the Z-graded pairs only see dimensions
print("z-pairs of M", sorted((p.d, p.i) for p in distinguished_pairs_z(M)))

# extremal Betti numbers move to (|F| - i, F) under module-level Alexander duality
t, tA = betti_koszul(M), betti_koszul(alexander(M))
print("\nBetti table of M:")
print(t.grid(), end="")
print("Betti table of A(M):")
print(tA.grid(), end="")
e = extremal(t).entries
eA = extremal(tA).entries
print("extremal of M   ", sorted((i, format_subset(F), v) for (i, F), v in e.items()))
print("extremal of A(M)", sorted((i, format_subset(F), v) for (i, F), v in eA.items()))
print("projdim, reg of M   ", projdim_reg(t))
print("projdim, reg of A(M)", projdim_reg(tA))
