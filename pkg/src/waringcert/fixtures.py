"""Built-in reference instances.

The fourteen-point set below is the standard regression fixture for the
octic pipeline: over Z_31991 it passes all three admissibility tests
with values (14, 14, 10), the all-ones coefficient vector gives an
identifiable form (decision system rank 12), and the second coefficient
vector gives a form with exactly one other length-14 decomposition
(decision system rank 11).

The three six-point plane configurations are the classic Hilbert
function walkthrough: general position, on an irreducible conic, and
five on a line.
"""

from __future__ import annotations

from .criteria import Instance
from .ffield import DEFAULT_PRIME, PrimeContext
from .points import PointSet

REFERENCE_PRIME = DEFAULT_PRIME

REFERENCE_POINTS = (
    (42, -4, 17),
    (-50, -36, -28),
    (39, -16, 37),
    (9, -6, -22),
    (-15, -32, -19),
    (-22, 31, 45),
    (50, -32, -8),
    (45, -38, -31),
    (-29, 31, -9),
    (-39, 24, 32),
    (30, -42, -4),
    (19, -50, 4),
    (-38, -41, -2),
    (2, 15, 24),
)

IDENTIFIABLE_LAMBDA = (1,) * 14

UNIDENTIFIABLE_LAMBDA = (
    -6395, -1019, 2227, 13599, -2136, -1329, 5500,
    -4082, 7252, -2038, 13457, 8366, 8750, -10807,
)


def reference_pointset(prime: int = REFERENCE_PRIME) -> PointSet:
    return PointSet(PrimeContext(prime), REFERENCE_POINTS)


def reference_instance(lam=IDENTIFIABLE_LAMBDA,
                       prime: int = REFERENCE_PRIME) -> Instance:
    return Instance(reference_pointset(prime), 8, lam)


# Six points with no conic through them and no three on a line.
SIX_GENERAL = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 5, 2))

# Six points of the conic x0*x2 = x1^2, parameterized by (1, t, t^2).
SIX_ON_CONIC = ((1, 0, 0), (1, 1, 1), (1, 2, 4), (1, 3, 9), (1, 4, 16), (1, 5, 25))

# Five points of the line x2 = 0 plus one point off it.
SIX_FIVE_ALIGNED = ((1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0), (1, 4, 0), (0, 0, 1))


def six_point_sets(prime: int = REFERENCE_PRIME) -> dict[str, PointSet]:
    ctx = PrimeContext(prime)
    return {
        "general": PointSet(ctx, SIX_GENERAL),
        "on_conic": PointSet(ctx, SIX_ON_CONIC),
        "five_aligned": PointSet(ctx, SIX_FIVE_ALIGNED),
    }
