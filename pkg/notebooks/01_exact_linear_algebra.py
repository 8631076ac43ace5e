"""
Exact linear algebra over the Gaussian rationals
=================================================

"""

# %%
from dolbeault.linalg import I, Matrix, Scalar, coordinates_in_span, kernel_basis, rank, subspace_dims

# entries are exact; the second row is i times the first
m = Matrix([[1, I], [I, -1]])
print("rank:", rank(m))
print("kernel:", kernel_basis(m).column(0))

# %%
# scalars print in the text form used by every file format
print(Scalar.parse("2/4-6i"), Scalar(1, -3) / 2)

# %%
# dimensions of U, V, U + V and U ∩ V for two planes in 3-space
u = Matrix([[1, 0], [0, 1], [0, 0]])
v = Matrix([[0, 0], [1, 0], [0, 1]])
print(subspace_dims(u, v))

# coordinates of a vector in a basis, or None when it is outside the span
print(coordinates_in_span([1, 2, 0], u), coordinates_in_span([0, 0, 1], u))
