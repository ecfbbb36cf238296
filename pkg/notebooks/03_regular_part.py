"""
The regular part and its projection onto T_3
============================================

P = Reg(T_4^a) is the preimage of T_3 under phi(f) = (fa) restricted
to im(a).  Each rank level of P is an inflated copy of the same level of
T_3.
"""

from sandwich import engine, regular
from sandwich.core import SandwichElement, Transformation
from sandwich.variant import star

s = SandwichElement("[1,2,3,3]")
P = regular.enumerate_reg(s)
print("|P| =", len(P), "formula", regular.size_reg_formula(s))

for m in range(1, s.r + 1):
    c = regular.hat_class_counts(s, m)
    print(f"rank {m}: {c.d_rows} x {c.d_cols} grid of H-classes of size {c.h_class_size}")

f, g = Transformation.parse("[1,1,3,3]"), Transformation.parse("[1,1,4,4]")
print("phi(f) =", regular.phi(f, s), " phi(g) =", regular.phi(g, s))
e1, e2 = regular.factor_between(f, g, 3, s)
print("f = e1*g*e2 with e1 =", e1, "e2 =", e2, ":", star(star(e1, g, s), e2, s) == f)

D = regular.top_rect_group(s)
print("top class:", len(D.rows), "kernels x", len(D.cols), "images x S_3 =", len(D))

U = regular.build_reg_generating_set(s)
print("generating set", [str(u) for u in U])
print("closure size", len(engine.transformation_closure(U, s.a)))
