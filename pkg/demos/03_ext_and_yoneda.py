"""
Ext between twisted simple modules
==================================
"""
from fermatsg import ExtClass, Weight, YonedaEngine, gorenstein_check
from fermatsg.homalg import ext_dim_oracle, ext_dims

w = Weight(2, 4, 4)
o = w.zero
x, y, z, c = w.x, w.y, w.z, w.c

# Ext^i(k, k(n)) is at most one-dimensional; the shortcut agrees with degreewise cohomology
for n in (o, -x, -x - y, -x - y - z, -c):
    print(n, ext_dims(o, n, 5), [ext_dim_oracle(o, n, i) for i in range(6)])

# products of degree-one classes anticommute
E = YonedaEngine(w)
xi_x = ExtClass.basis(o, -x, 1)
xi_y = ExtClass.basis(-x, -x - y, 1)
print("x then y:", E.compose(xi_x, xi_y).coeffs)
print("y then x:", E.compose(ExtClass.basis(o, -y, 1), ExtClass.basis(-y, -x - y, 1)).coeffs)

# RHom(k, A) is one class in cohomological degree 2
g = gorenstein_check(w, 8, 2)
print(g["verdict"], g["totals"], "internal degree", g["degree2_support"])
