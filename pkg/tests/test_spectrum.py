import math
import random

import pytest

from spectile import AffineMap, Rat
from spectile.catalog import prism
from spectile.errors import (
    PreconditionFailed,
    PrismExcluded,
    ThetaOutOfRange,
    UnsupportedDimension,
    WindowTooSmall,
)
from spectile._backend import frac_part
from spectile.linalg import det
from spectile.spectrum import (
    PrismSpectrumSpec,
    chi_estimate,
    condition_C2_check,
    decide_spectral,
    dual_lattice,
    make_patch,
    patch,
    prism_spectrum,
    uniqueness_check,
    verify_density,
    verify_orthogonality,
)
from spectile.symmetry import tau_vectors
from spectile.tiling import Lattice, lattice_T


def test_dual_lattice_examples(hexagon):
    z3 = Lattice.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert dual_lattice(z3) == z3
    lt = lattice_T(hexagon)
    dual = dual_lattice(lt)
    assert dual.covolume == Rat(1, 3)
    # every dual point pairs integrally with every lattice vector
    for v in dual.points_in_ball(Rat(4)):
        for b in lt.basis:
            val = sum(x * y for x, y in zip(v, b))
            assert val.denominator == 1
    diag = Lattice.from_generators([(2, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert dual_lattice(diag) == Lattice.from_generators([(Rat(1, 2), 0, 0), (0, 1, 0), (0, 0, 1)])


def test_decide_spectral(triangle, hexagon, rhombic_icosahedron, interval):
    assert not decide_spectral(triangle).is_spectral
    assert decide_spectral(triangle).reason == "not-centrally-symmetric"
    v = decide_spectral(hexagon)
    assert v.is_spectral and v.spectrum is not None
    v = decide_spectral(rhombic_icosahedron)
    assert not v.is_spectral and v.reason == "belt-length-8"
    with pytest.raises(UnsupportedDimension):
        decide_spectral(interval)


def test_patch_counts(hexagon):
    z2 = Lattice.from_generators([(1, 0), (0, 1)])
    assert len(patch(z2, 1.5)) == 9
    z3 = Lattice.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert len(patch(z3, 1.0)) == 7
    # regression: the hexagon's dual patch at R=10 (density 3 per unit area)
    dual = dual_lattice(lattice_T(hexagon))
    assert len(patch(dual, 10.0)) == 949


def test_orthogonality_cube(cube):
    z3 = Lattice.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    sp = patch(z3, 3.0)
    rep = verify_orthogonality(cube, sp)
    assert rep.passed and rep.max_residual <= 1e-12


def test_orthogonality_detects_bad_point(cube):
    z3 = Lattice.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    pts = list(patch(z3, 2.0).points)
    pts += [tuple(c + s for c, s in zip(q, (Rat(1, 4), 0, 0))) for q in pts]
    sp = make_patch(sorted(set(pts)), 2.3)
    rep = verify_orthogonality(cube, sp)
    assert not rep.passed
    assert rep.worst_difference is not None


def test_orthogonality_truncated_octahedron(truncated_octahedron):
    dual = dual_lattice(lattice_T(truncated_octahedron))
    sp = patch(dual, 2.0)
    assert len(sp) > 100
    rep = verify_orthogonality(truncated_octahedron, sp)
    assert rep.passed
    assert rep.max_residual <= 1e-10 * float(truncated_octahedron.volume)


def test_density(cube, hexagon):
    z3 = Lattice.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rep = verify_density(cube, patch(z3, 10.0))
    assert rep.passed and abs(rep.density - 1.0) < 0.05
    dual = dual_lattice(lattice_T(hexagon))
    rep = verify_density(hexagon, patch(dual, 20.0))
    assert rep.passed and abs(rep.density - 3.0) <= 0.15
    box = cube.apply_affine(AffineMap.linear([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
    dual_box = dual_lattice(lattice_T(box))
    rep = verify_density(box, patch(dual_box, 10.0))
    assert rep.passed and abs(rep.density - 2.0) <= 0.1
    with pytest.raises(WindowTooSmall):
        verify_density(cube, patch(z3, 2.0))


def test_c2_exact_and_translation_invariant(hexagon):
    taus = [t.tau for t in tau_vectors(hexagon)]
    dual = dual_lattice(lattice_T(hexagon))
    sp = patch(dual, 4.0)
    rep = condition_C2_check(sp, taus)
    assert rep.passed and rep.max_distance_to_integer == 0.0
    shifted = make_patch([tuple(c + s for c, s in zip(q, (Rat(5, 7), Rat(-2, 9)))) for q in sp.points], 5.0)
    rep = condition_C2_check(shifted, taus)
    assert rep.passed  # differences are unchanged by translation


def test_c2_detects_perturbation(hexagon):
    taus = [t.tau for t in tau_vectors(hexagon)]
    dual = dual_lattice(lattice_T(hexagon))
    base = list(patch(dual, 3.0).points)
    bad = [tuple(float(c) for c in q) for q in base]
    bad[0] = (bad[0][0] + math.sqrt(2) / 100, bad[0][1])
    rep = condition_C2_check(make_patch(bad, 3.1), taus)
    assert not rep.passed


def test_uniqueness_translate_passes(truncated_octahedron):
    dual = dual_lattice(lattice_T(truncated_octahedron))
    sp = patch(dual, 2.0)
    shift = (Rat(1, 7), Rat(2, 7), Rat(3, 7))
    shifted = make_patch([tuple(c + s for c, s in zip(q, shift)) for q in sp.points], 2.5)
    assert uniqueness_check(truncated_octahedron, shifted)


def test_uniqueness_hexagon(hexagon):
    dual = dual_lattice(lattice_T(hexagon))
    sp = patch(dual, 4.0)
    assert uniqueness_check(hexagon, sp)
    # an irrational translate still passes through the float path
    shift = (math.sqrt(2) / 7, math.sqrt(3) / 9)
    shifted = make_patch(
        [tuple(float(c) + s for c, s in zip(q, shift)) for q in sp.points], 4.5
    )
    assert uniqueness_check(hexagon, shifted)


def test_uniqueness_detects_alien_point(hexagon):
    dual = dual_lattice(lattice_T(hexagon))
    pts = list(patch(dual, 3.0).points)
    pts.append((Rat(1, 2) + pts[0][0], pts[0][1]))
    assert not uniqueness_check(hexagon, make_patch(pts, 3.5))


def test_uniqueness_prism_excluded(hexagonal_prism, square):
    dual = dual_lattice(lattice_T(hexagonal_prism))
    sp = patch(dual, 2.0)
    with pytest.raises(PrismExcluded):
        uniqueness_check(hexagonal_prism, sp)
    dual2 = dual_lattice(lattice_T(square))
    with pytest.raises(PrismExcluded):
        uniqueness_check(square, patch(dual2, 3.0))


def test_prism_spectrum_zero_offsets_is_product(square):
    base_dual = dual_lattice(lattice_T(square))
    base_patch = patch(base_dual, 2.0)
    spec = PrismSpectrumSpec(base_patch=base_patch, theta={q: 0 for q in base_patch.points})
    sp = prism_spectrum(square, spec, 2.0)
    z3 = Lattice.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert set(sp.points) == set(patch(z3, 2.0).points)


def test_prism_spectrum_orthogonal_on_cube(cube, square):
    base_dual = dual_lattice(lattice_T(square))
    base_patch = patch(base_dual, 2.0)
    theta = {}
    for i, q in enumerate(sorted(base_patch.points)):
        theta[q] = Rat(i % 5, 5)
    sp = prism_spectrum(square, PrismSpectrumSpec(base_patch=base_patch, theta=theta), 2.0)
    rep = verify_orthogonality(cube, sp)
    assert rep.passed


def test_prism_spectrum_theta_guard(square):
    base_dual = dual_lattice(lattice_T(square))
    base_patch = patch(base_dual, 1.0)
    theta = {q: Rat(3, 2) for q in base_patch.points}
    with pytest.raises(ThetaOutOfRange):
        prism_spectrum(square, PrismSpectrumSpec(base_patch=base_patch, theta=theta), 1.5)


def _not_translates(a, b):
    """Canonical difference-set comparison: translate iff equal after
    anchoring each patch at its lexicographic minimum."""
    ca = sorted(tuple(x - min_ for x, min_ in zip(q, min(a.points))) for q in a.points)
    cb = sorted(tuple(x - min_ for x, min_ in zip(q, min(b.points))) for q in b.points)
    return ca != cb


def test_prism_spectrum_non_uniqueness(hexagon, hexagonal_prism):
    base_dual = dual_lattice(lattice_T(hexagon))
    base_patch = patch(base_dual, 2.0)
    theta0 = {q: 0 for q in base_patch.points}
    theta1 = {q: frac_part(sum(c * w for c, w in zip(q, (Rat(1, 5), Rat(1, 5))))) for q in base_patch.points}
    sp0 = prism_spectrum(hexagon, PrismSpectrumSpec(base_patch, theta0), 2.0)
    sp1 = prism_spectrum(hexagon, PrismSpectrumSpec(base_patch, theta1), 2.0)
    assert _not_translates(sp0, sp1)
    for sp in (sp0, sp1):
        rep = verify_orthogonality(hexagonal_prism, sp)
        assert rep.passed
        assert rep.max_residual <= 1e-10 * float(hexagonal_prism.volume)


def test_chi_estimates(interval, cube, hexagon):
    assert abs(chi_estimate(interval) - 1.0) <= 1e-6
    assert abs(chi_estimate(cube) - 1.0) <= 1e-6
    # regression fixture for the catalog hexagon: sqrt(2)/3, the length of
    # the shortest dual lattice vector (1/3, -1/3)
    assert abs(chi_estimate(hexagon) - math.sqrt(2) / 3) <= 1e-6


def test_separation_at_least_chi(cube, hexagon, truncated_octahedron):
    for p in (cube, hexagon, truncated_octahedron):
        dual = dual_lattice(lattice_T(p))
        sp = patch(dual, 3.0)
        assert sp.separation >= chi_estimate(p) - 1e-6


def test_spectrum_covariance(hexagon, truncated_octahedron):
    # the dual patch of A(P) is the inverse-transpose image of P's patch
    rng = random.Random(12)
    for p in (hexagon, truncated_octahedron):
        d = p.dim
        while True:
            m = tuple(tuple(Rat(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(d)) for _ in range(d))
            if det(m) != 0:
                break
        amap = AffineMap.linear(m)
        image = p.apply_affine(amap)
        lt = lattice_T(p)
        lt_img = lattice_T(image)
        # T(A P) = A T(P) as lattices
        assert lt_img == Lattice.from_generators([amap.apply(b) for b in lt.basis])
        # spectra: dual(T(A P)) = (A^-1)^T dual(T(P))
        inv_t = AffineMap.linear(list(zip(*amap.inverse().matrix)))
        expect = Lattice.from_generators([inv_t.apply(b) for b in dual_lattice(lt).basis])
        assert dual_lattice(lt_img) == expect
        # patch points of the image pull back exactly into the original dual
        fwd_t = AffineMap.linear(list(zip(*amap.matrix)))
        for q in patch(dual_lattice(lt_img), 2.0).points:
            assert dual_lattice(lt).contains(fwd_t.apply(q))


def test_patch_rejects_bad_radius():
    z2 = Lattice.from_generators([(1, 0), (0, 1)])
    with pytest.raises(PreconditionFailed):
        patch(z2, 0.0)
