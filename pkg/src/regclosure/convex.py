"""Point configurations over exact rationals and their convex geometries.

The relative convex hull operator on a finite point set is an atomistic
convex geometry; its regular closed sets form a pseudocomplemented
ortholattice which is the completion of the poset of strongly bi-convex
subsets.  Normalizing the normals of a central hyperplane arrangement into
an affine slice turns the poset of regions into exactly that poset, so its
completion is computed here as well.

Every geometric question is decided by exact rational linear programming;
no floating point is used anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .lattices import FiniteLattice, Poset, is_dm_completion, is_pseudocomplemented
from .ratlp import feasible_nonneg, solve_feasibility
from .spaces import (
    ClosureSpace,
    GroundSet,
    MembershipOracle,
    SpaceError,
    bit_count,
    bits,
)

__all__ = [
    "DimensionMismatch",
    "InvalidArrangement",
    "RationalVector",
    "parse_rational",
    "format_rational",
    "PointConfiguration",
    "conv_membership",
    "separating_functional",
    "conv_e_space",
    "strongly_biconvex",
    "strongly_biconvex_sets",
    "relatively_biconvex_sets",
    "CentralArrangement",
    "region_poset",
    "dm_of_region_poset",
    "cji_strongly_biconvex_check",
    "points_to_json",
    "points_from_json",
    "arrangement_to_json",
    "arrangement_from_json",
]

RationalVector = tuple[Fraction, ...]


class DimensionMismatch(SpaceError):
    pass


class InvalidArrangement(SpaceError):
    pass


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vec(coords) -> RationalVector:
    return tuple(parse_rational(c) for c in coords)


class PointConfiguration:
    """A finite list of pairwise distinct rational points of one dimension."""

    def __init__(self, points):
        pts = [_vec(p) for p in points]
        if not pts:
            raise SpaceError("need at least one point")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise DimensionMismatch("points of mixed dimension")
        if len(set(pts)) != len(pts):
            raise SpaceError("points must be pairwise distinct")
        self.points = tuple(pts)
        self.dim = d

    @property
    def size(self) -> int:
        return len(self.points)

    def labels(self) -> tuple[str, ...]:
        return tuple(f"p{i}" for i in range(self.size))

    def __repr__(self) -> str:  # pragma: no cover
        return f"PointConfiguration({self.size} points, dim={self.dim})"


def conv_membership(p, X) -> bool:
    """Whether p lies in the convex hull of the points X, decided exactly:
    a nonnegative combination with total weight one must reproduce p.

    >>> conv_membership(("1/2", "1/2"), [(0, 0), (1, 1)])
    True
    >>> conv_membership((1, 0), [(0, 0), (1, 1)])
    False
    """
    pv = _vec(p)
    xs = [_vec(x) for x in X]
    if not xs:
        return False
    d = len(pv)
    if any(len(x) != d for x in xs):
        raise DimensionMismatch("hull members must match the point's dimension")
    A = [[x[k] for x in xs] for k in range(d)]
    A.append([Fraction(1)] * len(xs))
    b = list(pv) + [Fraction(1)]
    ok, _ = feasible_nonneg(A, b)
    return ok


def separating_functional(p, X) -> tuple[RationalVector, Fraction] | None:
    """For p outside conv(X), an affine functional (c, c0) with
    c.x + c0 <= 0 on X and > 0 at p; None when p is inside."""
    pv = _vec(p)
    xs = [_vec(x) for x in X]
    d = len(pv)
    A = [[x[k] for x in xs] for k in range(d)]
    A.append([Fraction(1)] * len(xs))
    b = list(pv) + [Fraction(1)]
    ok, out = feasible_nonneg(A, b)
    if ok:
        return None
    c = tuple(out[:d])
    return c, out[d]


def conv_e_space(E: PointConfiguration) -> ClosureSpace:
    """The closure space of the relative convex hull operator on E."""
    pts = E.points

    def close(mask: int) -> int:
        if mask == 0:
            return 0
        chosen = [pts[i] for i in bits(mask)]
        out = mask
        for i in range(len(pts)):
            if not (mask >> i) & 1 and conv_membership(pts[i], chosen):
                out |= 1 << i
        return out

    ground = GroundSet(E.labels())
    space = ClosureSpace(ground, MembershipOracle(close), name="conv")
    space.points = E
    return space


def strongly_biconvex(E: PointConfiguration, mask: int) -> bool:
    """conv(X) and conv(E minus X) must be disjoint; the empty set and E
    itself qualify trivially."""
    full = (1 << E.size) - 1
    if mask == 0 or mask == full:
        return True
    xs = [E.points[i] for i in bits(mask)]
    ys = [E.points[i] for i in bits(full & ~mask)]
    d = E.dim
    # a common point: sum lam_i x_i = sum mu_j y_j, both convex combinations
    A = [[x[k] for x in xs] + [-y[k] for y in ys] for k in range(d)]
    A.append([Fraction(1)] * len(xs) + [Fraction(0)] * len(ys))
    A.append([Fraction(0)] * len(xs) + [Fraction(1)] * len(ys))
    b = [Fraction(0)] * d + [Fraction(1), Fraction(1)]
    ok, _ = feasible_nonneg(A, b)
    return not ok


def strongly_biconvex_sets(E: PointConfiguration) -> list[int]:
    full = (1 << E.size) - 1
    return [m for m in range(full + 1) if strongly_biconvex(E, m)]


def relatively_biconvex_sets(space: ClosureSpace) -> list[int]:
    """Clopen sets of the relative-hull space."""
    return space.clopen_sets()


# ---------------------------------------------------------------------------
# central hyperplane arrangements


class CentralArrangement:
    """A central arrangement given by one normal per hyperplane and a base
    point; normals are flipped to the base side and scaled so that their
    inner product with the base point is one, placing them all in a common
    affine slice."""

    def __init__(self, normals, base):
        self.base = _vec(base)
        d = len(self.base)
        norms = []
        for z in normals:
            zv = _vec(z)
            if len(zv) != d:
                raise DimensionMismatch("normal dimension mismatch")
            s = sum(a * b for a, b in zip(zv, self.base))
            if s == 0:
                raise InvalidArrangement(
                    "base point lies on a hyperplane of the arrangement")
            norms.append(tuple(c / s for c in zv))
        if len(set(norms)) != len(norms):
            raise InvalidArrangement("normals must be pairwise non-parallel")
        self.normals = tuple(norms)
        self.dim = d

    @property
    def size(self) -> int:
        return len(self.normals)

    def points(self) -> PointConfiguration:
        return PointConfiguration(self.normals)


def _sign_vector_feasible(A: CentralArrangement, signs) -> bool:
    # strictly sign-consistent x exists iff it exists with margins >= 1,
    # the system being homogeneous
    cons = [(list(s * c for c in z), ">=", 1)
            for z, s in zip(A.normals, signs)]
    ok, _ = solve_feasibility(cons, A.dim)
    return ok


def region_poset(A: CentralArrangement) -> tuple[Poset, list[int], int]:
    """The poset of regions over the base region.

    Regions are the realizable open sign patterns on the normals; each is
    recorded by the set of normals seen negatively, and that set inclusion
    is the region order.  Returns (poset, separation masks, base index);
    the base region is the all-positive one.
    """
    m = A.size
    if m > 12:
        raise InvalidArrangement("region enumeration is limited to 12 hyperplanes")
    eps: list[int] = []
    for neg in range(1 << m):
        signs = [-1 if (neg >> i) & 1 else 1 for i in range(m)]
        if _sign_vector_feasible(A, signs):
            eps.append(neg)
    eps.sort(key=lambda v: (bit_count(v), v))
    n = len(eps)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(eps):
        for j, b in enumerate(eps):
            leq[i, j] = a & ~b == 0
    labels = tuple("R" + ("" if v == 0 else "".join(str(k) for k in bits(v)))
                   for v in eps)
    return Poset(leq, labels), eps, eps.index(0)


@dataclass
class RegionCompletionReport:
    lattice: FiniteLattice
    region_count: int
    completion_size: int
    is_completion: bool
    pseudocomplemented: bool
    poset_is_lattice: bool
    every_regular_closed_strongly_biconvex: bool


def dm_of_region_poset(A: CentralArrangement) -> RegionCompletionReport:
    """Completion of the region poset, realized as the regular-closed
    lattice of the relative convex geometry on the normalized normals."""
    E = A.points()
    poset, eps, _ = region_poset(A)
    space = conv_e_space(E)
    L = space.enumerate_regular_closed()
    pos = {m: i for i, m in enumerate(L.sets)}
    try:
        emb = [pos[v] for v in eps]
    except KeyError:
        raise InvalidArrangement(
            "a strongly bi-convex separation set is not regular closed") from None
    sbc = set(strongly_biconvex_sets(E))
    return RegionCompletionReport(
        lattice=L,
        region_count=poset.size,
        completion_size=L.size,
        is_completion=is_dm_completion(L, emb),
        pseudocomplemented=is_pseudocomplemented(L),
        poset_is_lattice=poset.is_lattice(),
        every_regular_closed_strongly_biconvex=all(m in sbc for m in L.sets),
    )


# ---------------------------------------------------------------------------
# completely join-irreducible regular closed sets


@dataclass
class CjiBiconvexReport:
    cji_count: int
    all_strongly_biconvex: bool
    all_lower_covers_drop_one_point: bool
    all_separators_found: bool

    @property
    def passed(self) -> bool:
        return (self.all_strongly_biconvex
                and self.all_lower_covers_drop_one_point
                and self.all_separators_found)


def cji_strongly_biconvex_check(E: PointConfiguration) -> CjiBiconvexReport:
    """Each completely join-irreducible regular closed set P must be
    strongly bi-convex, cover exactly P minus one point p, and admit an
    affine functional vanishing only at p on E, nonnegative exactly on P."""
    space = conv_e_space(E)
    L = space.enumerate_regular_closed()
    ji = L.join_irreducibles()
    sbc = True
    covers = True
    seps = True
    for i in ji:
        pmask = L.sets[i]
        lower = L.sets[L.lower_cover(i)]
        if not strongly_biconvex(E, pmask):
            sbc = False
        drop = pmask & ~lower
        if lower & ~pmask or bit_count(drop) != 1:
            covers = False
            continue
        p = next(bits(drop))
        if not _zero_only_at_separator(E, pmask, p):
            seps = False
    return CjiBiconvexReport(len(ji), sbc, covers, seps)


def _zero_only_at_separator(E: PointConfiguration, pmask: int, p: int) -> bool:
    # functional c.x + c0: zero at p, >= 1 on the rest of the inside set,
    # <= -1 outside; scaling makes strictness and unit margins equivalent
    d = E.dim
    full = (1 << E.size) - 1
    cons = [(list(E.points[p]) + [1], "==", 0)]
    for i in bits(pmask & ~(1 << p)):
        cons.append((list(E.points[i]) + [1], ">=", 1))
    for i in bits(full & ~pmask):
        cons.append((list(E.points[i]) + [1], "<=", -1))
    ok, _ = solve_feasibility(cons, d + 1)
    return ok


# ---------------------------------------------------------------------------
# serialization


def points_to_json(E: PointConfiguration) -> str:
    return json.dumps(
        {"dimension": E.dim,
         "points": [[format_rational(c) for c in p] for p in E.points]},
        separators=(",", ":"), sort_keys=True)


def points_from_json(text: str) -> PointConfiguration:
    doc = json.loads(text)
    E = PointConfiguration(doc["points"])
    if "dimension" in doc and E.dim != doc["dimension"]:
        raise DimensionMismatch("declared dimension does not match points")
    return E


def arrangement_to_json(A: CentralArrangement) -> str:
    return json.dumps(
        {"base": [format_rational(c) for c in A.base],
         "normals": [[format_rational(c) for c in z] for z in A.normals]},
        separators=(",", ":"), sort_keys=True)


def arrangement_from_json(text: str) -> CentralArrangement:
    doc = json.loads(text)
    return CentralArrangement(doc["normals"], doc["base"])
