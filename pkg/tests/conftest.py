from functools import lru_cache

import pytest
from hypothesis import settings

from congruent_triangles.curve import CongruentCurve, add, multiply, two_torsion
from congruent_triangles.seeds import SEED_X, seed_point, seed_points

settings.register_profile("default", deadline=None, max_examples=120)
settings.load_profile("default")

CURVE_NS = (5, 6, 7, 34)


@lru_cache(maxsize=None)
def point_pool(n, multiples=5):
    """Small multiples of every seed point on C_n, shifted by two-torsion."""
    curve = CongruentCurve(n)
    torsion = (curve.identity(),) + two_torsion(curve)
    pool = []
    for seed in seed_points(n):
        for m in range(-multiples, multiples + 1):
            base = multiply(m, seed)
            pool.extend(add(base, t) for t in torsion)
    return tuple(dict.fromkeys(pool))


@pytest.fixture(params=CURVE_NS)
def n(request):
    return request.param


@pytest.fixture
def catalog_path(tmp_path):
    return tmp_path / "catalog.jsonl"
