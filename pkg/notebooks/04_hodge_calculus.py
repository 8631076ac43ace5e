"""
Hodge diamonds of blow-ups, bundles and flag bundles
=====================================================

"""

# %%
from dolbeault.dsl import evaluate, parse_expr
from dolbeault.fixtures import curve, hopf, projective_space
from dolbeault.hodge import gaussian_multinomial, lh_consistency, q_complete_obstruction

h = evaluate(parse_expr("blowup(P(2), point, 2)"))
print(h.render())
print(h, "| ddbar:", h.ddbar, "| betti:", h.betti())

# %%
# the center's diamond reappears shifted by xy
h = evaluate(parse_expr("blowup(P(3), curve(2), 2)"))
print(h.render())
print(q_complete_obstruction(h, 2))

# %%
# flag manifolds: coefficients of t = xy
print(gaussian_multinomial([1, 1, 1]), gaussian_multinomial([2, 2]))
print(evaluate(parse_expr("flagbundle(torus(1), [1, 2])")))

# %%
# the Hopf surface is not the product its fibration would predict
print(lh_consistency(hopf(), curve(1), projective_space(1)))
