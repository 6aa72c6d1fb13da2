"""Gram and Weingarten matrices, and the moments they produce.

Walks through the noncrossing pairings on four legs, inverts their Gram
matrix exactly, and integrates a few monomials over O_N^+ and over the
homogeneous space O_MN^L, checking one value against brute-force
enumeration over signed partial permutations.
"""

from fractions import Fraction

from haarspace import CategoryId, MomentSpec, QuantumFamily, SpaceSpec, gram, qg_moment, space_moment, weingarten
from haarspace.oracle import exact_space_moment_h

N = 4
nc2 = CategoryId("NC2")

g = gram(nc2, "wwww", N)
print("noncrossing pairings on 4 legs:", [p.to_text() for p in g.index])
print("Gram matrix at N=4:", [list(r) for r in g.entries])

w = weingarten(nc2, "wwww", N)
print("Weingarten matrix:", [[str(x) for x in row] for row in w.entries])

# int u11^4 over O_4^+ : every delta is 1, so it is the sum of all entries
v = qg_moment(QuantumFamily("Oplus"), N, "wwww", (1,) * 4, (1,) * 4)
print("int u11^4 over O_4^+ =", v)
assert v == Fraction(1, 10)

# on the homogeneous space the second moment is L/(MN)
spec = SpaceSpec(QuantumFamily("O"), 2, 3, 4)
print("int u11^2 over O_34^2 =", space_moment(spec, MomentSpec("ww", (1, 1), (1, 1))))

# the hyperoctahedral space against its finite model
spec = SpaceSpec(QuantumFamily("Hs", 2), 2, 2, 3)
m = MomentSpec("wwww", (1, 1, 2, 2), (1, 1, 3, 3))
a = space_moment(spec, m)
b = exact_space_moment_h(2, spec, m)
print(f"H^2 space moment {a}, enumeration {b}")
assert a == b
