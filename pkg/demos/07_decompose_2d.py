"""Two-dimensional decomposition: rotate, minimize along fibers, recurse.

Balls that are not bounded below rotate so the largest second directional
derivative is axis-aligned, split off the signed root around the fiber
minimum curve, and hand the curve (times a cutoff) to the one-dimensional
decomposition; its squares are composed back through the rotation.
"""

from halfsquares import decompose, verify
from halfsquares.fixtures import build_fixture

for name in ("paraboloid", "radial_bump"):
    f = build_fixture(name, points=121)  # 201 in the acceptance run
    d = decompose(f, 2, 1.0)
    rep = verify(d, f, seminorm_window=10 * f.spacing)
    print(f"{name} on a {f.shape[0]}^2 grid:")
    print(f"    {len(d.partition.balls)} balls, {rep.square_count} squares "
          f"(bound {rep.square_bound}), overlap {rep.overlap_max} <= 225")
    print(f"    sup |sum g^2 - f| = {rep.reconstruction_error:.2e}")
