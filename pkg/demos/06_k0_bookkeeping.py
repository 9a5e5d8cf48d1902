"""
Writing classes over the collection
===================================

The filtrations of ``k[v]/(v^p)`` give linear relations among the classes
``[k(n)]``; repeated use writes any ``[k(m)]`` over the index set.
"""
import numpy as np

from fermatsg import Weight, index_set, reduce_class
from fermatsg.collection import pairing_check, step_bound
from fermatsg.homalg import singularity_euler_form

w = Weight(3, 4, 5)
I = index_set(w)
m = w.element(2, 1, 4, 1)
r = reduce_class(m)
print(m, "->", {str(n): v for n, v in r.coeffs.items()}, "in", r.steps, "steps; bound", step_bound(m))

# pairing both ways: directly, and through the Gram matrix
G = np.array([[singularity_euler_form(a, b) for b in I] for a in I])
direct = [singularity_euler_form(n, m) for n in I]
print(direct == list(G @ r.as_array(I)))

print(pairing_check(w, 50, 0)["verdict"])
