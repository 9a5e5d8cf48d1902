"""
Directed categories, tensor products and twisted complexes
==========================================================
"""
from fermatsg import TwistedComplex, cone, directed_category, euler_matrix, tensor
from fermatsg.dgcat import PretrHom, identity_morphism

D3 = directed_category(3)
D4 = directed_category(4)
T = tensor(D3, D4)
print(T.name, "objects:", T.objects)
print("axiom violations:", T.check_axioms())
print(euler_matrix(T))

# the Koszul sign: two paths around a square give opposite signs
S = tensor(D3, D3)
A, B, C, Z = (1, 1), (2, 1), (1, 2), (2, 2)
print(S.compose(A, B, Z, S.element(B, Z, ("id", "a")), S.element(A, B, ("a", "id"))),
      S.compose(A, C, Z, S.element(C, Z, ("a", "id")), S.element(A, C, ("id", "a"))))

# cones in Pre-Tr: the cone of the arrow L1 -> L2, and of an identity
L1 = TwistedComplex.single(D3, (1,), 1)
L2 = TwistedComplex.single(D3, (2,), 0)
K = cone(L1, L2, {(0, 0, 0): 1})
print(K, "End cohomology:", PretrHom(K, K).cohomology_dims())
Kid = cone(L2, L2, identity_morphism(L2))
print(Kid, "End cohomology:", PretrHom(Kid, Kid).cohomology_dims())
