"""
Green's relations: formula against brute force
==============================================

The engine builds the 256 x 256 multiplication table of the variant and
reads off R, L, H, D from principal ideals.  The variant module predicts
the same classes from kernels and images alone.
"""

from sandwich import engine, variant
from sandwich.core import SandwichElement, Transformation

s = SandwichElement("[1,1,3,3]")
S = variant.variant_table(s)
G = engine.green_classes(S)
print(len(S), "elements,", G.n_d, "D-classes")

for rel in "RLHD":
    oracle = {frozenset(S.elements[x] for x in c) for c in G.classes(rel)}
    formula = {frozenset(c) for c in variant.variant_green_partition(s, rel)}
    print(rel, len(oracle), "classes, formula agrees:", oracle == formula)

# maps of rank 4 sit alone in maximal D-classes, so every generating set contains them
M = variant.unique_min_generating_set(s)
print("rank of the variant:", len(M), "=", variant.rank_variant_formula(4, 2))
print("closure of M:", len(engine.transformation_closure(M, s.a)))

# the D-order, read off kernels and images
f = Transformation.parse("[1,2,3,1]")
for text in ["[1,1,3,3]", "[1,3,1,1]", "[1,1,1,1]"]:
    g = Transformation.parse(text)
    print(g, "<=", f, ":", variant.d_order_leq(g, f, s), "  ", f, "<=", g, ":", variant.d_order_leq(f, g, s))
