"""
The grading group and the Fermat algebra
========================================

Elements of the grading group are written ``(a, b, c, m)``, meaning
``a x + b y + c z + m c`` with ``0 <= a < p0`` and so on.
"""
from fermatsg import Weight, graded_piece_basis, phi
from fermatsg.algebra import variables

w = Weight(2, 3, 6)
x, y, z, c = w.x, w.y, w.z, w.c

# p0 x = p1 y = p2 z = c, and the normal form remembers it
print(2 * x == c, 3 * y == c, 6 * z == c)
print("x + y + z - c =", x + y + z - c, " phi =", phi(x + y + z - c))

# phi is a homomorphism onto (1/p2) Z scaled so that phi(z) = 1
for u in (x, y, z, c, -x - y):
    print(u, phi(u))

# the algebra: only powers of x get reduced, so a graded piece has max(m + 1, 0) monomials
X, Y, Z = variables(w)
print(X ** 2 + Y ** 3 + Z ** 6)  # the Fermat relation, zero in A
print("basis of A in degree 2c:", graded_piece_basis(2 * c))
