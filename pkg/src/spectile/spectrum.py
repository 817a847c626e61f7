"""Spectra of tiling polytopes: lattice duality, finite-patch verification,
and the prism non-uniqueness family.

In dimensions 2 and 3, tiling by translations and being spectral are the
same property; a tiler's spectrum is the dual of its tiling lattice.  On a
finite patch the checkable content is: orthogonality (pairwise differences
in the zero set of the transform), density (about one point per 1/|P| of
volume), integrality of <difference, tau> for every facet translation tau,
and -- away from prisms -- that the patch is a translate of the dual
lattice.  Completeness of the exponential system is not testable on finite
data; the package relies on the tiling equivalence for it, and says so in
the reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import Rat, cis_neg, frac_part, phase_context, rational, to_float
from .errors import (
    PreconditionFailed,
    PrismExcluded,
    ThetaOutOfRange,
    UnsupportedDimension,
    WindowTooSmall,
)
from .fourier import TOL_ZERO, _indicator_hp, ft_indicator
from .geometry import Polytope
from .linalg import norm_sq, vdot, vneg, vsub
from .tiling import Lattice, TilingReport, is_prism, lattice_T, venkov_mcmullen

__all__ = [
    "SpectrumPatch",
    "PrismSpectrumSpec",
    "SpectralVerdict",
    "OrthogonalityReport",
    "DensityReport",
    "C2Report",
    "dual_lattice",
    "decide_spectral",
    "patch",
    "make_patch",
    "verify_orthogonality",
    "verify_density",
    "condition_C2_check",
    "uniqueness_check",
    "prism_spectrum",
    "chi_estimate",
]


def _coord_float(c) -> float:
    return float(c)


@dataclass(frozen=True)
class SpectrumPatch:
    """Finite window of a candidate spectrum.

    Points are exact rationals when lattice-derived; user patches may carry
    floats.  separation is the minimal pairwise distance on the patch.
    """

    points: tuple
    window_radius: float
    separation: float

    @property
    def is_exact(self) -> bool:
        return all(not isinstance(c, float) for p in self.points for c in p)

    def __len__(self):
        return len(self.points)


def _separation(points) -> float:
    if len(points) < 2:
        return math.inf
    arr = np.array([[_coord_float(c) for c in p] for p in points])
    best = math.inf
    chunk = 512
    for i in range(0, len(arr), chunk):
        block = arr[i : i + chunk]
        d2 = np.sum((block[:, None, :] - arr[None, i:, :]) ** 2, axis=2)
        tri = np.triu_indices(block.shape[0], k=1, m=d2.shape[1])
        offd = d2[tri]
        offd = offd[offd > 0]
        if offd.size:
            best = min(best, float(np.sqrt(offd.min())))
    return best


def make_patch(points, window_radius: float) -> SpectrumPatch:
    pts = tuple(tuple(p) for p in points)
    return SpectrumPatch(points=pts, window_radius=float(window_radius), separation=_separation(pts))


def dual_lattice(lattice: Lattice) -> Lattice:
    """All vectors with integer inner products against the lattice."""
    return lattice.dual()


@dataclass(frozen=True)
class SpectralVerdict:
    is_spectral: bool
    reason: str
    spectrum: Lattice | None
    tiling: TilingReport


def decide_spectral(p: Polytope) -> SpectralVerdict:
    """Spectral iff the polytope tiles by translations (dimensions 2, 3);
    for a tiler the dual of the tiling lattice is a spectrum."""
    if p.dim not in (2, 3):
        raise UnsupportedDimension("the decision procedure covers dimensions 2 and 3")
    rep = venkov_mcmullen(p)
    if rep.tiles:
        spectrum = dual_lattice(lattice_T(p, rep))
        return SpectralVerdict(True, "tiles-by-translation", spectrum, rep)
    if not rep.vm_centrally_symmetric:
        reason = "not-centrally-symmetric"
    elif not rep.vm_facets_symmetric:
        reason = "facet-not-centrally-symmetric"
    else:
        reason = f"belt-length-{rep.failing_belt_length}"
    return SpectralVerdict(False, reason, None, rep)


def patch(lattice: Lattice, radius: float) -> SpectrumPatch:
    """All lattice points in the closed ball of the given radius."""
    if radius <= 0:
        raise PreconditionFailed("patch radius must be positive")
    if isinstance(radius, float):
        from fractions import Fraction

        r = Rat(Fraction(radius))
    else:
        r = rational(radius)
    pts = lattice.points_in_ball(r * r)
    return make_patch(pts, float(radius))


@dataclass(frozen=True)
class OrthogonalityReport:
    passed: bool
    max_residual: float
    worst_difference: tuple | None
    num_points: int
    num_differences: int
    tolerance: float


def verify_orthogonality(p: Polytope, s: SpectrumPatch, tol: float = TOL_ZERO) -> OrthogonalityReport:
    """All pairwise differences must lie in the zero set of the transform.

    Differences are deduplicated (and +-collapsed for exact patches), so
    the transform is evaluated once per distinct difference.
    """
    if len(s) == 0:
        raise PreconditionFailed("empty patch")
    pts = s.points
    exact = s.is_exact
    diffs = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = vsub(pts[j], pts[i])
            if exact:
                for c in d:
                    if c != 0:
                        if c < 0:
                            d = vneg(d)
                        break
            diffs.add(tuple(d))
    vol = to_float(p.volume)
    worst = -1.0
    worst_d = None
    for d in diffs:
        if exact:
            xi = d
        else:
            from .fourier import frequency_from_floats

            xi = frequency_from_floats(d, 10**9)
        mag = ft_indicator(p, xi).magnitude
        if mag > worst:
            worst, worst_d = mag, d
    return OrthogonalityReport(
        passed=worst <= tol * vol,
        max_residual=worst,
        worst_difference=worst_d,
        num_points=len(pts),
        num_differences=len(diffs),
        tolerance=tol,
    )


@dataclass(frozen=True)
class DensityReport:
    passed: bool
    count: int
    ball_volume: float
    density: float
    target: float
    rel_tolerance: float


def verify_density(p: Polytope, s: SpectrumPatch, rel_tol: float = 0.05) -> DensityReport:
    """Point count per unit window volume must be |P| within rel_tol.

    A spectrum has density |P|: it is a translate-average of the dual
    tiling lattice whose covolume is 1/|P|.  The window must hold at least
    about 100 points for the boundary term not to swamp the estimate.
    """
    r = s.window_radius
    d = p.dim
    if d == 2:
        ball = math.pi * r * r
    elif d == 3:
        ball = 4.0 / 3.0 * math.pi * r**3
    else:
        ball = 2.0 * r
    target = to_float(p.volume)
    if ball * target < 100.0:
        raise WindowTooSmall("window holds fewer than ~100 expected points")
    density = len(s) / ball
    return DensityReport(
        passed=abs(density - target) <= rel_tol * target,
        count=len(s),
        ball_volume=ball,
        density=density,
        target=target,
        rel_tolerance=rel_tol,
    )


@dataclass(frozen=True)
class C2Report:
    passed: bool
    max_distance_to_integer: float
    num_differences: int
    tolerance: float


def condition_C2_check(s: SpectrumPatch, taus, tol: float = 1e-9) -> C2Report:
    """<difference, tau> must be within tol of an integer for every pair
    of patch points and every facet translation tau."""
    pts = s.points
    exact = s.is_exact
    taus = [tuple(t) for t in taus]
    diffs = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            diffs.add(tuple(vsub(pts[j], pts[i])))
    worst = 0.0
    for d in diffs:
        for t in taus:
            val = vdot(d, t)
            if exact and not isinstance(val, float):
                fr = frac_part(val)
                dist = to_float(min(fr, 1 - fr))
            else:
                fval = float(val)
                dist = abs(fval - round(fval))
            if dist > worst:
                worst = dist
    return C2Report(passed=worst <= tol, max_distance_to_integer=worst, num_differences=len(diffs), tolerance=tol)


def uniqueness_check(p: Polytope, s: SpectrumPatch, tol: float = 1e-9) -> bool:
    """The patch must be a translate of the dual tiling lattice.

    That is a theorem for every true spectrum of a tiler that is not a
    prism (not a parallelogram in the plane); for prisms the check raises
    PrismExcluded because uniqueness genuinely fails there.
    """
    verdict = decide_spectral(p)
    if not verdict.is_spectral:
        raise PreconditionFailed("uniqueness applies to spectral polytopes")
    if p.dim == 3:
        if is_prism(p) is not None:
            raise PrismExcluded("prisms admit non-translation-equivalent spectra")
    else:
        if len(p.facets) == 4:
            raise PrismExcluded("parallelograms admit non-translation-equivalent spectra")
    dual = verdict.spectrum
    if len(s) == 0:
        raise PreconditionFailed("empty patch")
    base = s.points[0]
    if s.is_exact:
        return all(dual.contains(vsub(q, base)) for q in s.points)
    bt = np.array([[float(c) for c in row] for row in dual.basis]).T
    inv = np.linalg.inv(bt)
    for q in s.points:
        delta = np.array([float(a) - float(b) for a, b in zip(q, base)])
        k = inv @ delta
        if np.max(np.abs(k - np.round(k))) > tol:
            return False
    return True


@dataclass(frozen=True)
class PrismSpectrumSpec:
    """Base spectrum patch plus an offset theta(gamma) in [0,1) per point."""

    base_patch: SpectrumPatch
    theta: dict


def prism_spectrum(base: Polytope, spec: PrismSpectrumSpec, radius: float, axis: int = 0) -> SpectrumPatch:
    """Patch of the prism spectrum {(k + theta(gamma), gamma)}.

    The axis argument places the 1D factor (default first coordinate, the
    prism axis of I x base).  Offsets come from spec.theta, one per base
    point, each in [0, 1).
    """
    r2 = float(radius) ** 2
    pts = []
    for gamma in spec.base_patch.points:
        th = spec.theta[tuple(gamma)]
        thf = float(th)
        if not (0.0 <= thf < 1.0):
            raise ThetaOutOfRange(f"theta {th} outside [0,1)")
        g2 = sum(float(c) ** 2 for c in gamma)
        if g2 > r2:
            continue
        room = math.sqrt(r2 - g2)
        k = math.ceil(-room - thf)
        while k + thf <= room:
            point = list(gamma)
            point.insert(axis, k + th)
            pts.append(tuple(point))
            k += 1
    pts.sort(key=lambda q: tuple(float(c) for c in q))
    return make_patch(pts, float(radius))


def chi_estimate(p: Polytope, extra_directions=(), seed: int = 0) -> float:
    """Heuristic smallest zero radius of the indicator transform.

    Scans rays (facet normals, axes, short dual-lattice vectors for
    tilers, a few seeded random directions) for sign changes of the
    centered transform, refines by bisection, and returns the smallest
    radius found.  This is an upper bound for the true minimal zero radius
    with no optimality guarantee.
    """
    import random

    d = p.dim
    dirs = {tuple(f.normal) for f in p.facets}
    for j in range(d):
        e = [0] * d
        e[j] = 1
        dirs.add(tuple(e))
    try:
        verdict = decide_spectral(p)
        if verdict.is_spectral:
            short = verdict.spectrum.points_in_ball(
                max(norm_sq(b) for b in verdict.spectrum.basis)
            )
            for v in short:
                if any(c != 0 for c in v):
                    from .linalg import primitive

                    dirs.add(primitive(v, canonical_sign=True))
    except UnsupportedDimension:
        pass
    rnd = random.Random(seed)
    for _ in range(6):
        dirs.add(tuple(rnd.randint(-5, 5) or 1 for _ in range(d)))
    center = p.vertex_centroid
    vol = to_float(p.volume)

    def centered_re(xi):
        with phase_context():
            val, _ = _indicator_hp(p, xi)
            shift = cis_neg(-vdot(xi, center))  # e^{+2 pi i <xi, c>}
            return to_float((shift * val).real), to_float(abs(val))

    best = math.inf
    min_width = min(
        to_float(p.support(f.normal) + p.support(vneg(f.normal))) / math.sqrt(to_float(norm_sq(f.normal)))
        for f in p.facets
    )
    for u in sorted(dirs):
        ulen = math.sqrt(sum(float(c) ** 2 for c in u))
        t_hi = 3.0 * max(1.0, 1.0 / min_width) / ulen
        steps = 96
        prev_t, (prev_g, _) = None, (None, None)
        t = Rat(0)
        from fractions import Fraction

        step = Rat(Fraction(t_hi / steps).limit_denominator(10**4))
        for k in range(1, steps + 1):
            t = step * k
            if to_float(t) * ulen >= best:
                break
            xi = tuple(t * c for c in u)
            g, mag = centered_re(xi)
            if mag <= 1e-12 * vol:
                best = min(best, to_float(t) * ulen)
                break
            if prev_g is not None and (prev_g < 0 < g or g < 0 < prev_g):
                lo, hi = prev_t, t
                glo = prev_g
                for _ in range(60):
                    mid = (lo + hi) / 2
                    gm, _ = centered_re(tuple(mid * c for c in u))
                    if gm == 0:
                        lo = hi = mid
                        break
                    if (glo < 0) == (gm < 0):
                        lo, glo = mid, gm
                    else:
                        hi = mid
                best = min(best, to_float((lo + hi) / 2) * ulen)
                break
            prev_t, prev_g = t, g
    return best
