"""
Constructions, morphisms and long exact sequences
==================================================

"""

# %%
from dolbeault.constructions import (Morphism, direct_sum, induced_bc_dims_equal,
                                     is_E1_isomorphism, leray_hirsch_model, ses_to_les, tensor)
from dolbeault.double_complex import DoubleComplex, check_ddbar, cohomology
from dolbeault.fixtures import dot, kodaira_thurston, square
from dolbeault.linalg import Matrix

kt = kodaira_thurston()

# Dolbeault numbers of a product are the convolution of the factors' numbers
print(cohomology(tensor(kt, kt), "dolbeault").dims)

# %%
# a bundle model: two copies of the base paired by the real structure
model = leray_hirsch_model(kt, [(1, 0), (0, 1)], pairs=[(0, 1)])
print(model.dims[(1, 1)], check_ddbar(model).holds == check_ddbar(kt).holds)

# %%
# adding an acyclic square changes nothing in Dolbeault or Bott-Chern cohomology
big = direct_sum([kt, square(1, 0)])
inc = Morphism(kt, big, {bd: Matrix.identity(kt.dim(*bd)).vstack(Matrix.zeros(big.dim(*bd) - kt.dim(*bd), kt.dim(*bd)))
                         for bd in kt.support})
print(is_E1_isomorphism(inc), induced_bc_dims_equal(inc))

# %%
# 0 -> A -> B -> C -> 0 along a row; the connecting map is an isomorphism
A = dot(0, 1)
B = DoubleComplex({(0, 0): 1, (0, 1): 1}, d2={(0, 0): Matrix([[1]])})
C = dot(0, 0)
les = ses_to_les(Morphism(A, B, {(0, 1): Matrix([[1]])}), Morphism(B, C, {(0, 0): Matrix([[1]])}), 0)
print(" -> ".join(f"{t}[{t.dim}]" for t in les.terms))
print(les.connecting_maps())
