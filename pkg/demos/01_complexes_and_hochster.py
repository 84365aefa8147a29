"""Simplicial complexes, Alexander duality and Betti numbers of Stanley-Reisner rings.

Run: python demos/01_complexes_and_hochster.py
"""

from __future__ import annotations

from sqbgg.betti import betti_hochster, betti_koszul
from sqbgg.exactla import GF2, QQ
from sqbgg.simplicial import SimplicialComplex, alexander_dual, reduced_homology
from sqbgg.sqmod import sr_module

# the boundary of a triangle, a circle
tri = SimplicialComplex.from_vertex_lists(3, [[1, 2], [1, 3], [2, 3]])
print("complex       ", tri.to_json())
print("alexander dual", alexander_dual(tri).to_json())
print("reduced homology (index k = degree k-1):", reduced_homology(tri))

# Hochster's formula and the Koszul route give the same table
print("\nBetti table of K[D], two routes:")
print(betti_hochster(tri).to_tsv(), end="")
print(betti_koszul(sr_module(tri, "face-ring")).grid(), end="")

# a 6-vertex projective plane: its ring changes with the characteristic
rp2 = SimplicialComplex.from_vertex_lists(6, [
    [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
    [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]])
for field in (QQ, GF2):
    t = betti_koszul(sr_module(rp2, "face-ring", "S", field))
    print(f"\nRP^2 over {field.name}:")
    print(t.grid(), end="")
