"""
The periodic resolution of k
============================

Four explicit stages, then the tail repeats with a shift by ``-c``.
"""
from fermatsg import PeriodicResolution, Weight, check_exactness, check_matrix_factorization
from fermatsg.resolution import composition_failures

w = Weight(3, 3, 3)
res = PeriodicResolution(w)
for s in range(5):
    print("F%d:" % s, res.shifts(s))

print("d1 =", res.d(1).entries)
print("d_i o d_(i+1) nonzero for i in", composition_failures(res, 12))

# exactness on a window of degrees, computed degreewise with exact rank
r = check_exactness(w.zero, 8, 2)
print("exactness:", r["verdict"], "on", r["window"]["degrees"], "degrees")

# d3 d4 = d4 d3 = f * identity in k[x, y, z]
mf = check_matrix_factorization(w)
print("matrix factorization signs:", mf["d3d4_signs"], mf["d4d3_signs"])
