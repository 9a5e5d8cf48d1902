"""
The collection of simple modules and the tensor category
========================================================
"""
from fermatsg import comparison_isomorphism, gram_matrix, index_set, kronecker_check, verify_exceptional
from fermatsg.collection import membership_in_T, mu

w = (3, 3, 3)
I = index_set(w)
for n in I:
    print(n, "->", mu(n))

print("exceptional:", verify_exceptional(w, 8)["verdict"])
print("all members of T:", all(membership_in_T(n)["verdict"] == "PASS" for n in I))

r = comparison_isomorphism(w, max_degree=8)
print("comparison:", r["verdict"], r["compositions_checked"], "compositions, scalings all +-1:", r["all_scalings_pm1"])

print(gram_matrix(w))
print({k: v for k, v in kronecker_check(w).items() if k != "weight"})
