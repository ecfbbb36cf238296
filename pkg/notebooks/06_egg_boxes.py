"""
Egg-box diagrams
================

Text, Graphviz and JSON views of the same layout.
"""

from sandwich import engine, regular, render, variant
from sandwich.core import SandwichElement, all_transformations

T3 = engine.transformation_table(list(all_transformations(3)))
print(render.render(T3, "text"))

s = SandwichElement("[1,2,3,3]")
layout = render.layout_for(regular.enumerate_reg(s), s.a, "reg")
print(render.render(layout, "text"))

dot = render.render(layout, "dot")
print(dot[:200], "...")

# the full variant, with each D-class tagged by its case
S = variant.variant_table(s)
full = render.build_layout(S, sandwich=s.a, semigroup="variant", case_of=lambda f: variant.variant_case(f, s))
print({c: sum(1 for d in full.dclasses if d.case == c) for c in ("regular", "R", "L", "singleton")})
