import math

import pytest

from spectile import Rat, from_vertices
from spectile.errors import RankDeficient
from spectile.fourier import ft_indicator
from spectile.oracle import SampleConfig, mc_volume, multiplicity_sample, simplex_ft


def test_mc_volume_cube(cube):
    mv = mc_volume(cube, SampleConfig(count=10**6, seed=1))
    assert abs(mv.estimate - 1.0) <= max(3 * mv.stderr, 1e-3)
    assert mv.seed == 1 and mv.count == 10**6


def test_mc_volume_hexagon(hexagon):
    mv = mc_volume(hexagon, SampleConfig(count=10**5, seed=2, bounding_box=((-1.0, -1.0), (1.0, 1.0))))
    assert abs(mv.estimate - 3.0) <= 3 * mv.stderr


def test_mc_volume_truncated_octahedron(truncated_octahedron):
    mv = mc_volume(truncated_octahedron, SampleConfig(count=2 * 10**5, seed=3))
    assert abs(mv.estimate - 32.0) <= 3 * mv.stderr
    assert mv.stderr < 0.32  # within 1%


def test_multiplicity_cube_unit_lattice(cube):
    hist = multiplicity_sample(cube, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], SampleConfig(count=20000, seed=4))
    assert hist.counts == {1: 20000}


def test_multiplicity_cube_half_lattice(cube):
    gens = [(Rat(1, 2), 0, 0), (0, Rat(1, 2), 0), (0, 0, Rat(1, 2))]
    hist = multiplicity_sample(cube, gens, SampleConfig(count=20000, seed=4))
    assert hist.min == 8
    assert hist.max >= 8


def test_multiplicity_rank_guard(cube):
    with pytest.raises(RankDeficient):
        multiplicity_sample(cube, [(1, 0, 0), (0, 1, 0)], SampleConfig(count=100, seed=0))


def test_multiplicity_rhombic_icosahedron(rhombic_icosahedron):
    from spectile.symmetry import tau_vectors

    taus = [t.tau for t in tau_vectors(rhombic_icosahedron)]
    hist = multiplicity_sample(rhombic_icosahedron, taus, SampleConfig(count=10**5, seed=20170529))
    assert hist.min >= 1  # covering
    assert hist.max >= 2  # but not a packing
    assert hist.seed == 20170529


def test_simplex_ft_interval(interval):
    for t in (Rat(1, 3), Rat(5, 7), Rat(2)):
        a = simplex_ft(interval, (t,))
        b = ft_indicator(interval, (t,))
        assert abs(a.as_complex() - b.as_complex()) < 1e-14


def test_simplex_ft_square():
    sq = from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
    a = simplex_ft(sq, (Rat(1, 3), Rat(1, 5)))
    b = ft_indicator(sq, (Rat(1, 3), Rat(1, 5)))
    assert abs(a.as_complex() - b.as_complex()) < 1e-12


def test_simplex_ft_collision_branch(cube):
    # xi = (1,1,0) makes vertex exponents collide; the confluent branch runs
    a = simplex_ft(cube, (1, 1, 0))
    b = ft_indicator(cube, (1, 1, 0))
    assert abs(a.as_complex() - b.as_complex()) < 1e-12
    # degenerate along an axis: all phases equal on z-edges
    a = simplex_ft(cube, (0, 0, Rat(1, 2)))
    assert abs(a.re - 2 / math.pi) < 1e-12


def test_simplex_ft_at_zero(hexagon):
    assert simplex_ft(hexagon, (0, 0)).re == 3.0
