import random

import pytest
from hypothesis import HealthCheck, settings

from cechstrat import IsoClass, SimplicialComplex, canonical_form, make_complex

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def named_complexes() -> dict[str, SimplicialComplex]:
    """The eight complexes on at most three vertices, by shape name."""
    return {
        "point": make_complex(1, []),
        "two_points": make_complex(2, []),
        "edge": make_complex(2, [{0, 1}]),
        "discrete3": make_complex(3, []),
        "edge_plus_point": make_complex(3, [{0, 1}]),
        "path3": make_complex(3, [{0, 1}, {1, 2}]),
        "cycle3": make_complex(3, [{0, 1}, {1, 2}, {0, 2}]),
        "filled3": make_complex(3, [{0, 1, 2}]),
    }


@pytest.fixture(scope="session")
def named():
    return named_complexes()


@pytest.fixture(scope="session")
def named_classes(named) -> dict[str, IsoClass]:
    return {name: canonical_form(c) for name, c in named.items()}


def fig2_complexes():
    """Six-vertex complex collapsing onto a four-vertex one, and the latter
    included into a filled enrichment: the standard domination example."""
    c = make_complex(6, [{0, 1}, {1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}])
    d = make_complex(4, [{0, 1}, {0, 2}, {1, 2}, {2, 3}])
    e = make_complex(4, [{0, 1, 2}, {2, 3}, {0, 3}])
    return c, d, e


FIG2_MAP_C_TO_D = (0, 0, 1, 2, 3, 3)


def random_complex(rng: random.Random, n_max: int = 5) -> SimplicialComplex:
    n = rng.randint(1, n_max)
    generators = []
    for mask in range(1, 1 << n):
        if mask.bit_count() >= 2 and rng.random() < 1.8 / mask.bit_count() ** 2:
            generators.append([v for v in range(n) if mask >> v & 1])
    return make_complex(n, generators)
