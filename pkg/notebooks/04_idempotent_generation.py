"""
Idempotent-generated part and tournaments
=========================================

The idempotents of T_4^a generate the top band of idempotents together
with everything below the top class.  Minimal idempotent generating sets
are counted through strongly connected tournaments.
"""

from sandwich import engine, idemgen
from sandwich.core import SandwichElement

for r in range(2, 6):
    print(r, "vertices:", len(idemgen.strongly_connected_tournaments(r)), "strong tournaments")

s = SandwichElement("[1,2,3,3]")
E = idemgen.variant_idempotents(s)
print(len(E), "idempotents; formula", idemgen.idempotent_count_formula(s))
print("generated part:", len(idemgen.exa_elements(s)), "elements")

U = idemgen.build_exa_generating_set(s)
print("rank", len(U), "set", [str(u) for u in U])
print("closure", len(engine.transformation_closure(U, s.a)))

# exhaustive search over 6-subsets of the 30 idempotents
S, found = idemgen.enumerate_min_idempotent_gensets(s)
print("minimal idempotent generating sets:", len(found), "formula", idemgen.count_min_idempotent_gensets(s))
