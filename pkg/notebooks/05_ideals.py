"""
Ideals of the regular part
==========================

The ideals of P are the rank filters I_1 < I_2 < ... < I_r.  Proper ones
are generated by idempotents of their top rank, one per R-class.
"""

from sandwich import engine, ideals
from sandwich.core import SandwichElement

s = SandwichElement("[1,2,3,4,4]")
for m in range(1, s.r + 1):
    print("I_%d has %d elements" % (m, len(ideals.ideal(m, s))))

for m in range(2, s.r):
    U = ideals.build_ideal_generating_set(m, s)
    I = ideals.ideal(m, s)
    closure = engine.transformation_closure(U, s.a)
    print(f"m={m}: {len(U)} idempotents (formula {ideals.ideal_rank_formula(m, s)}),"
          f" R-classes on top {ideals.top_class_r_classes(m, s)}, closure {len(closure)} of {len(I)}")
