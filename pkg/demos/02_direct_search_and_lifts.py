"""Search for non-SOS polynomials and lift them to more variables.

The direct search scans simplices of half-vertices and interior lattice
targets, keeping candidates that pass both certifiers.  A homogenization
lift adds a variable at the same degree; a degree lift appends even
offsets to the vertices.
"""

from halfsquares import (
    CHOI_LAM,
    construct_candidate,
    degree_lift,
    direct_search,
    homogenize_lift,
    make_instance,
)

print("binary quartics are all SOS, so the search comes back empty:")
print("  direct_search(2, 4) ->", direct_search(2, 4, budget=10000))

hits = direct_search(2, 6, budget=5000)
print(f"\ndegree-6 binary search: {len(hits)} verified instance(s)")
for inst in hits:
    print("  ", construct_candidate(inst))

hits = direct_search(3, 4, budget=20000, max_hits=1)
print("\nternary quartic search recovers the classical example:")
print("  ", construct_candidate(hits[0]))

print("\nsingle-zero variant (pins the only zero at the all-ones point):")
inst = make_instance([(3, 1), (1, 2)], (2, 2), single_zero_coeff=1)
P = construct_candidate(inst)
print("  ", P, "  value at (1,1):", P.evaluate([1, 1]))

lift = homogenize_lift(CHOI_LAM)
print("\nhomogenization lift of", CHOI_LAM)
print("  ->", lift.polynomial)
print("  value at the all-ones point:", lift.polynomial.evaluate([1, 1, 1, 1]))
print("  dehomogenizes back exactly:", lift.polynomial.dehomogenize() == CHOI_LAM)

base = make_instance([(2, 3), (1, 3)], (2, 4))
lifted = degree_lift(base, [4, 2, 2], 2)
print("\ndegree lift of the (2,10) instance with offsets (4,2,2), s=2:")
print("  ", construct_candidate(lifted))
print("  weights:", lifted.weights, "+", lifted.origin_weight, "on the origin")
