"""
The variant product on T_4
==========================

Fix a sandwich element a and multiply f*g = f a g.  Maps compose left to
right and are written 1-indexed as image lists.
"""

from sandwich.core import SandwichElement, Transformation, compose
from sandwich.variant import normalize_sandwich, p_census, star, variant_case

s = SandwichElement("[1,2,3,3]")
print(s, "rank", s.r, "kernel class sizes", list(s.lambdas))

f = Transformation.parse("[2,4,2,4]")
print("f*f =", star(f, f, s), " while f.f =", compose(f, f))

# a non-idempotent sandwich is conjugated to an idempotent one by a permutation
b = Transformation.parse("[2,3,3,1]")
t, p = normalize_sandwich(b)
print("b =", b, "-> a =", t.a, "via p =", p)

# every element falls in one of four cases
for text in ["[1,1,3,3]", "[3,4,3,4]", "[3,3,4,1]", "[3,4,4,1]", "[2,3,1,4]"]:
    g = Transformation.parse(text)
    print(text, variant_case(g, s))

print(p_census(s))
