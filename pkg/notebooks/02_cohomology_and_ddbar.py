"""
Cohomology of double complexes and the ddbar-lemma
===================================================

"""

# %%
from dolbeault.constructions import direct_sum
from dolbeault.double_complex import THEORIES, check_ddbar, cohomology, validate
from dolbeault.fixtures import dot, iwasawa, kodaira_thurston, square, zigzag_l

# a square is acyclic for every theory
for theory in THEORIES:
    print(theory, cohomology(square(), theory).total())

# %%
# the zigzag has Dolbeault classes that no Bott-Chern class reaches
z = zigzag_l()
print(cohomology(z, "dolbeault").dims, cohomology(z, "bott-chern").dims)
print(check_ddbar(z))

# %%
# a model of P^2 satisfies the lemma
print(check_ddbar(direct_sum([dot(i, i) for i in range(3)])))

# %%
# invariant forms on two nilmanifolds: 64 and 16 dimensional complexes
iw = iwasawa()
print(validate(iw))
dol = cohomology(iw, "dolbeault")
print("h10 =", dol[1, 0], " h01 =", dol[0, 1], " euler =", dol.euler())
print("betti:", [cohomology(iw, "de-rham-total")[k] for k in range(7)])
print(check_ddbar(iw))

kt = kodaira_thurston()
print(kt.basis_labels(1, 0), cohomology(kt, "dolbeault").dims)
print(check_ddbar(kt))
