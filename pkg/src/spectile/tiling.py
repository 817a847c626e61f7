"""Translational tiling machinery: belts, the four-condition tiling
criterion, the facet-translation lattice, and exact packing/covering
verification.

A convex body tiles by translations iff it is a centrally symmetric
polytope with centrally symmetric facets whose belts all have 4 or 6
facets; the integer combinations of the facet-pair translations tau then
form a lattice along which the polytope tiles face-to-face.  With
rational vertex data that group is always a subgroup of (1/D)Z^d, hence
discrete; the rank check below is the only way lattice construction can
fail.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ._backend import Rat, ZERO, sqrt_upper
from .errors import NotALattice, NotATiler, PreconditionFailed
from .geometry import Polytope, from_vertices
from .linalg import (
    angular_sort,
    cross3,
    det,
    hnf_rational,
    inverse,
    norm_sq,
    primitive,
    rank,
    solve,
    transpose,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
)
from .symmetry import center_of_symmetry, facet_symmetry_check, tau_vectors

__all__ = [
    "Belt",
    "Lattice",
    "TilingReport",
    "FedorovClass",
    "belts",
    "venkov_mcmullen",
    "lattice_T",
    "tau_lattice_closure",
    "packing_verify",
    "covering_verify",
    "fedorov_classify",
    "is_prism",
    "tiling_report",
    "FEDOROV_TABLE",
]


# --- lattices ---------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice, basis rows in canonical Hermite normal form.

    The canonical form (echelon, positive pivots, reduced entries, scaled
    by the common denominator) is unique per lattice, so equality of Lattice
    objects is equality of the lattices as point sets.
    """

    basis: tuple

    @staticmethod
    def from_generators(generators) -> "Lattice":
        gens = [tuple(v) for v in generators]
        if not gens:
            raise NotALattice("no generators")
        d = len(gens[0])
        basis = hnf_rational(gens)
        if len(basis) < d:
            raise NotALattice(f"generators span rank {len(basis)} < {d}")
        return Lattice(basis=basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def covolume(self):
        return abs(det(self.basis))

    def dual(self) -> "Lattice":
        """All vectors with integer inner products against the lattice."""
        m = transpose(inverse(self.basis))
        return Lattice.from_generators(tuple(m))

    def coords(self, point):
        """Exact coordinates of a rational point in this basis."""
        return solve(transpose(self.basis), point)

    def contains(self, point) -> bool:
        k = self.coords(point)
        return k is not None and all(c.denominator == 1 for c in k)

    def points_in_ball(self, radius_sq, strict: bool = False) -> tuple:
        """All lattice points x with |x|^2 <= radius_sq (< when strict).

        A float prefilter with a generous margin trims the coefficient
        box; every surviving candidate is then confirmed by the exact
        rational norm test, so the result does not depend on float
        rounding.
        """
        import numpy as np

        d = self.dim
        inv_t = transpose(inverse(self.basis))
        r_upper = sqrt_upper(Rat(radius_sq))
        bounds = []
        for row in inv_t:
            b = sqrt_upper(norm_sq(row)) * r_upper
            bounds.append(int(b.numerator // b.denominator) + 1)
        total = 1
        for b in bounds:
            total *= 2 * b + 1
        if total > 2 * 10**7:
            raise PreconditionFailed(f"lattice ball enumeration too large ({total} candidates)")
        grids = np.meshgrid(*[np.arange(-b, b + 1) for b in bounds], indexing="ij")
        coeffs = np.stack([g.ravel() for g in grids], axis=-1)
        bmat = np.array([[float(c) for c in row] for row in self.basis])
        pts = coeffs @ bmat
        r_f = float(r_upper)
        margin = 1e-7 * (1.0 + r_f + float(np.abs(pts).max(initial=0.0)))
        near = np.sum(pts * pts, axis=1) <= (r_f + margin) ** 2
        out = []
        for coeff in coeffs[near]:
            x = tuple(
                sum((int(k) * self.basis[i][j] for i, k in enumerate(coeff)), ZERO)
                for j in range(d)
            )
            n2 = norm_sq(x)
            if (n2 < radius_sq) if strict else (n2 <= radius_sq):
                out.append(x)
        out.sort()
        return tuple(out)

    def fundamental_cell_corner_vectors(self) -> tuple:
        return self.basis


# --- belts ------------------------------------------------------------------


@dataclass(frozen=True)
class Belt:
    """Facets containing a translate of one subfacet, in cyclic order.

    direction is the canonical primitive direction of the subfacet (None
    for the planar pseudo-belt); length_sq its squared length; facets the
    cyclic list of facet indices circling that direction.
    """

    direction: tuple | None
    length_sq: "Rat | None"
    representative: tuple
    facets: tuple

    def __len__(self):
        return len(self.facets)


def _edge_class_key(p: Polytope, edge):
    a, b = (p.vertices[i] for i in edge)
    d = vsub(b, a)
    return primitive(d, canonical_sign=True), norm_sq(d)


def belts(p: Polytope) -> tuple:
    """Partition of subfacets into translation classes, one belt per class.

    A translate of a segment is a segment with the same direction and the
    same length, so the class key is (primitive direction, squared length).
    In the plane the belt notion degenerates; a single pseudo-belt with all
    edges is returned and condition (iv) becomes "4 or 6 edges".
    """
    if p.dim == 2:
        order = tuple(range(len(p.facets)))
        return (
            Belt(direction=None, length_sq=None, representative=p.faces(1)[0], facets=order),
        )
    if p.dim != 3:
        raise PreconditionFailed("belts are defined for dimensions 2 and 3")
    if center_of_symmetry(p) is None:
        raise PreconditionFailed("belts need a centrally symmetric polytope")
    ok, _ = facet_symmetry_check(p)
    if not ok:
        raise PreconditionFailed("belts need centrally symmetric facets")

    classes: dict = {}
    for edge in p.subfacets():
        classes.setdefault(_edge_class_key(p, edge), []).append(edge)

    out = []
    for (direction, len_sq), edges in sorted(classes.items()):
        facet_ids = sorted({fi for e in edges for fi in p.facets_of_subfacet(e)})
        # order facets around the common direction by the angle of their
        # normals in the plane orthogonal to it
        axis = min(range(3), key=lambda i: abs(direction[i]))
        e_axis = tuple(Rat(1) if i == axis else ZERO for i in range(3))
        u = tuple(Rat(c) for c in direction)
        pvec = cross3(u, e_axis)
        qvec = cross3(u, pvec)
        coords = {
            fi: (vdot(p.facets[fi].normal, pvec), vdot(p.facets[fi].normal, qvec))
            for fi in facet_ids
        }
        ordered = tuple(angular_sort(facet_ids, coords))
        out.append(
            Belt(
                direction=direction,
                length_sq=len_sq,
                representative=edges[0],
                facets=ordered,
            )
        )
    return tuple(out)


# --- the tiling criterion -----------------------------------------------------


class FedorovClass(str, Enum):
    PARALLELEPIPED = "Parallelepiped"
    HEXAGONAL_PRISM = "HexagonalPrism"
    RHOMBIC_DODECAHEDRON = "RhombicDodecahedron"
    ELONGATED_DODECAHEDRON = "ElongatedDodecahedron"
    TRUNCATED_OCTAHEDRON = "TruncatedOctahedron"


# Pinned discrimination table (facet count, sorted belt lengths), validated
# in the test suite against face-lattice isomorphism on the catalog solids.
FEDOROV_TABLE = {
    (6, (4, 4, 4)): FedorovClass.PARALLELEPIPED,
    (8, (4, 4, 4, 6)): FedorovClass.HEXAGONAL_PRISM,
    (12, (6, 6, 6, 6)): FedorovClass.RHOMBIC_DODECAHEDRON,
    (12, (4, 6, 6, 6, 6)): FedorovClass.ELONGATED_DODECAHEDRON,
    (14, (6, 6, 6, 6, 6, 6)): FedorovClass.TRUNCATED_OCTAHEDRON,
}


@dataclass(frozen=True)
class TilingReport:
    vm_polytope: bool
    vm_centrally_symmetric: bool
    vm_facets_symmetric: bool
    vm_belts_ok: bool
    tiles: bool
    belt_lengths: tuple | None = None
    failing_belt_length: int | None = None
    lattice: "Lattice | None" = None
    packing_verified: bool | None = None
    covering_verified: bool | None = None
    fedorov_class: "FedorovClass | None" = None
    prism_witness: tuple | None = None

    @property
    def is_prism(self) -> bool:
        return self.prism_witness is not None


def venkov_mcmullen(p: Polytope) -> TilingReport:
    """Evaluate the four tiling conditions; tiles iff all hold.

    (i) is true by construction.  When (ii) or (iii) fails, belts are not
    defined and (iv) is recorded as False; tiles is False either way.
    """
    if p.dim not in (2, 3):
        raise PreconditionFailed("tiling criterion applies in dimensions 2 and 3")
    symmetric = center_of_symmetry(p) is not None
    facets_ok, _ = facet_symmetry_check(p)
    belt_lengths = None
    failing = None
    if symmetric and facets_ok:
        lengths = tuple(len(b) for b in belts(p))
        belt_lengths = tuple(sorted(lengths))
        bad = [n for n in lengths if n not in (4, 6)]
        belts_ok = not bad
        failing = bad[0] if bad else None
    else:
        belts_ok = False
    return TilingReport(
        vm_polytope=True,
        vm_centrally_symmetric=symmetric,
        vm_facets_symmetric=facets_ok,
        vm_belts_ok=belts_ok,
        tiles=symmetric and facets_ok and belts_ok,
        belt_lengths=belt_lengths,
        failing_belt_length=failing,
    )


def tau_lattice_closure(p: Polytope) -> Lattice:
    """Lattice generated by all facet translation vectors.

    Needs central symmetry with symmetric facets but not the belt
    condition; used both by lattice_T and as the diagnostic closure for
    non-tilers.  Raises NotALattice below full rank.
    """
    taus = [t.tau for t in tau_vectors(p)]
    if rank(taus) < p.dim:
        raise NotALattice("facet translations do not span the space")
    return Lattice.from_generators(taus)


def lattice_T(p: Polytope, report: TilingReport | None = None) -> Lattice:
    """The tiling lattice: integer combinations of the tau vectors.

    Only constructed when the tiling criterion holds; the group is a
    lattice precisely then.
    """
    rep = report if report is not None else venkov_mcmullen(p)
    if not rep.tiles:
        raise PreconditionFailed("polytope does not tile; the tau group need not be a lattice")
    return tau_lattice_closure(p)


# --- packing / covering -------------------------------------------------------


def _interiors_overlap(p: Polytope, tau) -> bool:
    """Exact test for vol(P n (P + tau)) > 0."""
    # Width reject: if the shift along some facet normal reaches the width
    # of P in that direction, the interiors cannot meet.
    for f in p.facets:
        width = p.support(f.normal) + p.support(vneg(f.normal))
        if abs(vdot(f.normal, tau)) >= width:
            return False
    # For a centrally symmetric P the intersection, when solid, contains
    # the midpoint c + tau/2.
    if center_of_symmetry(p) is not None:
        mid = vadd(p.vertex_centroid, vscale(tau, Rat(1, 2)))
        return p.contains(mid, strict=True)
    # General case: the intersection is full-dimensional iff its candidate
    # vertex set has affine rank d.
    from itertools import combinations

    from .linalg import affine_rank

    hs = [(f.normal, f.offset) for f in p.facets]
    hs += [(f.normal, f.offset + vdot(f.normal, tau)) for f in p.facets]
    feasible = set()
    for subset in combinations(range(len(hs)), p.dim):
        m = tuple(hs[i][0] for i in subset)
        b = tuple(hs[i][1] for i in subset)
        x = solve(m, b)
        if x is not None and all(vdot(n, x) <= off for n, off in hs):
            feasible.add(x)
    return len(feasible) > 0 and affine_rank(sorted(feasible)) == p.dim


def packing_verify(p: Polytope, lattice: Lattice) -> bool:
    """Translates along the lattice are pairwise disjoint up to measure zero.

    Only vectors shorter than the diameter can produce overlap, so the
    check enumerates the finitely many lattice points in that ball.
    """
    if lattice.dim != p.dim:
        raise PreconditionFailed("lattice dimension differs from polytope dimension")
    for tau in lattice.points_in_ball(p.diameter_sq, strict=True):
        if all(c == 0 for c in tau):
            continue
        if _interiors_overlap(p, tau):
            return False
    return True


def covering_verify(p: Polytope, lattice: Lattice, samples: int = 20000, seed: int = 7) -> bool:
    """Every point lies in some translate.

    Exact route: equal covolume and verified packing imply a tiling, hence
    a covering; larger covolume excludes covering outright.  The remaining
    case (covolume below the volume) falls back to the sampling oracle.
    """
    covol = lattice.covolume
    vol = p.volume
    if covol == vol:
        return packing_verify(p, lattice)
    if covol > vol:
        return False
    from .oracle import SampleConfig, multiplicity_sample

    hist = multiplicity_sample(p, lattice.basis, SampleConfig(count=samples, seed=seed))
    return min(hist) >= 1


def fedorov_classify(p: Polytope, report: TilingReport | None = None) -> FedorovClass:
    """One of the five combinatorial types of 3D translational tiles."""
    if p.dim != 3:
        raise PreconditionFailed("classification is three-dimensional")
    rep = report if report is not None else venkov_mcmullen(p)
    if not rep.tiles:
        raise NotATiler("polytope fails the tiling criterion")
    key = (len(p.facets), rep.belt_lengths)
    if key not in FEDOROV_TABLE:
        raise AssertionError(f"tiling polytope with signature {key} outside the five types")
    return FEDOROV_TABLE[key]


def is_prism(p: Polytope):
    """Witness facet pair {F, F'} with P = conv(F u F'), or None.

    Such a pair exists exactly when P is the Minkowski sum of a facet and a
    segment; the convex hull of two parallel translate facets always sits
    inside P, so equality of volumes decides equality of the bodies.
    """
    if p.dim != 3:
        raise PreconditionFailed("prism detection is three-dimensional")
    seen = set()
    for fi in range(len(p.facets)):
        if fi in seen:
            continue
        fj = p.opposite_facet(fi)
        if fj is None:
            continue
        seen.update((fi, fj))
        pts_i = p.facet_points(fi)
        pts_j = p.facet_points(fj)
        if len(pts_i) != len(pts_j):
            continue
        tau = vsub(p.facet_centroid(fi), p.facet_centroid(fj))
        if {vadd(v, tau) for v in pts_j} != set(pts_i):
            continue
        hull = from_vertices(list(pts_i) + list(pts_j))
        if hull.volume == p.volume:
            return (min(fi, fj), max(fi, fj))
    return None


def tiling_report(p: Polytope) -> TilingReport:
    """Full report: criterion flags, lattice, packing/covering, class, prism."""
    rep = venkov_mcmullen(p)
    lattice = None
    packing = covering = None
    fedorov = None
    prism = None
    if rep.tiles:
        lattice = lattice_T(p, rep)
        packing = packing_verify(p, lattice)
        covering = covering_verify(p, lattice)
        if p.dim == 3:
            fedorov = fedorov_classify(p, rep)
    if p.dim == 3:
        prism = is_prism(p)
    return TilingReport(
        vm_polytope=rep.vm_polytope,
        vm_centrally_symmetric=rep.vm_centrally_symmetric,
        vm_facets_symmetric=rep.vm_facets_symmetric,
        vm_belts_ok=rep.vm_belts_ok,
        tiles=rep.tiles,
        belt_lengths=rep.belt_lengths,
        failing_belt_length=rep.failing_belt_length,
        lattice=lattice,
        packing_verified=packing,
        covering_verified=covering,
        fedorov_class=fedorov,
        prism_witness=prism,
    )
