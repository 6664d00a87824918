"""Exact node/weight systems that kill low odd moments.

For odd ell, the canonical nodes (-1)^(s+k) k carry positive rational
weights with sum w eta^j = 0 for odd j < ell and = 1 at j = ell; the
weights have a closed form from the odd-power Vandermonde determinant.
"""

from halfsquares import solve_odd_weights, weights_for_nodes

for ell in (1, 3, 5, 9):
    system = solve_odd_weights(ell)
    print(f"ell = {ell}: nodes {system.nodes}")
    print("          weights", tuple(str(w) for w in system.weights))
    print("          moments", {j: str(system.moment(j)) for j in range(1, ell + 1, 2)})

print("\narbitrary nodes solve the same system but may lose positivity:")
print("  eta = (1, 2) ->", [str(w) for w in weights_for_nodes([1, 2])])
