"""
Chip-firing on a Harary graph
=============================

Fire sets of vertices on H(4,11), reduce a divisor to a sink and watch
the two chip blocks of the universal divisor slide around the cycle.
"""

# %%
from gonlab import Divisor, fire_set, harary, q_reduce, rank
from gonlab import universal_divisor, verify_translation
from gonlab.graph import harary_spec

G = harary(4, 11)
print(G, "genus", G.genus)

# %%
# Firing the set {v1, v2, v3}: each fired vertex loses one chip per edge
# leaving the set, each neighbour outside gains one per edge coming in.
D = Divisor([3, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0])
E = fire_set(G, D, {0, 1, 2})
print(D.to_sparse(), "->", E.to_sparse())

# %%
# The reduced form with respect to v1 is a canonical representative.
R = q_reduce(G, E, 0)
print("reduced at v1:", R.to_sparse())
assert q_reduce(G, D, 0) == R

# %%
# Degree 10 divisor with blocks 1-3-1 at both ends of the cycle.
U = universal_divisor(harary_spec(4, 11))
print(U.to_sparse(), "degree", U.degree)
print("rank of 3 v1:", rank(G, Divisor([3] + [0] * 10)))

# %%
cert = verify_translation(harary_spec(4, 11))
for step in cert.steps:
    print(sorted(v + 1 for v in step.fired), step.divisor.to_list())
print("valid:", cert.valid)
