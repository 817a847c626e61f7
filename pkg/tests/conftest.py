import random

import pytest

from spectile import Rat, make, zonotope


@pytest.fixture(scope="session")
def interval():
    return make("interval")


@pytest.fixture(scope="session")
def square():
    return make("square")


@pytest.fixture(scope="session")
def cube():
    return make("cube")


@pytest.fixture(scope="session")
def triangle():
    return make("triangle")


@pytest.fixture(scope="session")
def hexagon():
    return make("hexagon")


@pytest.fixture(scope="session")
def hexagonal_prism():
    return make("hexagonal-prism")


@pytest.fixture(scope="session")
def rhombic_dodecahedron():
    return make("rhombic-dodecahedron")


@pytest.fixture(scope="session")
def elongated_dodecahedron():
    return make("elongated-dodecahedron")


@pytest.fixture(scope="session")
def truncated_octahedron():
    return make("truncated-octahedron")


@pytest.fixture(scope="session")
def rhombic_icosahedron():
    return make("rhombic-icosahedron")


def random_generators(rng: random.Random, count: int, dim: int = 3, span: int = 3):
    """Zonotope generators: nonzero, pairwise non-parallel, full rank."""
    from spectile.linalg import primitive, rank

    while True:
        gens = []
        for _ in range(count):
            v = tuple(Rat(rng.randint(-span, span), rng.choice((1, 1, 2))) for _ in range(dim))
            gens.append(v)
        if any(all(c == 0 for c in g) for g in gens):
            continue
        dirs = {primitive(g, canonical_sign=True) for g in gens}
        if len(dirs) < count:
            continue
        if rank(gens) < dim:
            continue
        return gens


def random_zonotope(rng: random.Random, count: int, dim: int = 3):
    return zonotope(random_generators(rng, count, dim))


def random_frequency(rng: random.Random, dim: int, span: int = 8, max_den: int = 7):
    while True:
        xi = tuple(Rat(rng.randint(-span, span), rng.randint(1, max_den)) for _ in range(dim))
        if any(c != 0 for c in xi):
            return xi
