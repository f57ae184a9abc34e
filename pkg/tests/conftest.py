import pytest
from hypothesis import HealthCheck, settings

from waringcert import Instance, PointSet, PrimeContext
from waringcert.fixtures import (
    UNIDENTIFIABLE_LAMBDA,
    reference_instance,
    reference_pointset,
)

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def ctx():
    return PrimeContext(31991)


@pytest.fixture(scope="session")
def small_ctx():
    return PrimeContext(101)


@pytest.fixture(scope="session")
def ref_points():
    return reference_pointset()


@pytest.fixture(scope="session")
def t1():
    return reference_instance()


@pytest.fixture(scope="session")
def t2():
    return reference_instance(UNIDENTIFIABLE_LAMBDA)


def random_pointset(ctx, rng, count, n=2, max_tries=200):
    """Random point set with pairwise distinct points."""
    for _ in range(max_tries):
        coords = rng.integers(0, ctx.p, size=(count, n + 1))
        try:
            return PointSet(ctx, coords)
        except Exception:
            continue
    raise RuntimeError("could not sample a point set")


def random_instance(ctx, rng, count, degree, n=2):
    ps = random_pointset(ctx, rng, count, n=n)
    lam = rng.integers(1, ctx.p, size=count)
    return Instance(ps, degree, lam)
