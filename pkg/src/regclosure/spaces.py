"""Finite closure spaces.

A closure space is a finite ground set together with an extensive, isotone,
idempotent operator on its subsets that fixes the empty set.  Subsets are
packed bitmasks (plain Python ints), so union/intersection/complement are
single word operations; every ground set handled here has at most 127
elements.

Three backends drive the closure: saturation of implication rules,
intersection of a generating family, or an arbitrary membership oracle.
On top of the operator the module classifies subsets (closed / open /
regular closed / regular open / clopen), computes the orthogonal map,
enumerates the ortholattice of regular closed sets, and provides minimal
coverings, minimal neighborhoods, poset/semilattice type tests, the
anti-exchange test, and the classical constructions that produce closure
spaces from orthoposets, transitive relations, and posets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .lattices import FiniteLattice, Poset

__all__ = [
    "SpaceError",
    "GroundTooLarge",
    "BackendError",
    "InvalidOrthoposet",
    "NotTransitive",
    "NotAntisymmetric",
    "GroundSet",
    "ImplicationSystem",
    "IntersectionFamily",
    "MembershipOracle",
    "ClosureSpace",
    "SubsetFlags",
    "DEFAULT_ENUMERATION_BOUND",
    "bits",
    "bit_count",
    "mayet_space",
    "transitive_relation_space",
    "up_closure_space",
    "space_to_json",
    "space_from_json",
    "validate_space",
]

DEFAULT_ENUMERATION_BOUND = 24


class SpaceError(Exception):
    """Base error for closure-space problems."""


class GroundTooLarge(SpaceError):
    """A global enumeration was requested beyond the configured bound."""


class BackendError(SpaceError):
    """The closure backend misbehaved (oracle failure, bad rule, ...)."""


class InvalidOrthoposet(SpaceError):
    pass


class NotTransitive(SpaceError):
    pass


class NotAntisymmetric(SpaceError):
    pass


def bits(mask: int):
    """Iterate the set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_count(mask: int) -> int:
    return mask.bit_count()


class GroundSet:
    """An indexed finite set with distinct printable labels."""

    def __init__(self, labels):
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise SpaceError("ground-set labels must be pairwise distinct")
        self.size = len(self.labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise SpaceError(f"unknown ground element {label!r}") from None

    def mask_of(self, labels) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def __repr__(self) -> str:  # pragma: no cover
        return f"GroundSet({self.size})"


@dataclass(frozen=True)
class ImplicationSystem:
    """Rules (premise, conclusion): any set containing the premise closes
    over the conclusion.  A conclusion inside its own premise is rejected,
    extensivity already implies it."""

    rules: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for premise, concl in self.rules:
            if premise >> concl & 1:
                raise SpaceError("rule conclusion already contained in premise")


@dataclass(frozen=True)
class IntersectionFamily:
    """Closed sets are the intersections of generators (plus the full set).

    The empty set must itself be such an intersection, which makes the
    derived operator a genuine closure with empty closure of the empty set.
    """

    generators: tuple[int, ...]

    def __post_init__(self):
        acc = -1
        for g in self.generators:
            acc &= g
        if acc != 0:
            raise SpaceError("intersection family cannot produce the empty set")


@dataclass(frozen=True)
class MembershipOracle:
    """An arbitrary closure function mask -> mask."""

    fn: object  # callable


class SubsetFlags:
    """Classification of one subset."""

    __slots__ = ("closed", "open", "regular_closed", "regular_open", "clopen")

    def __init__(self, closed, open_, regular_closed, regular_open):
        self.closed = closed
        self.open = open_
        self.regular_closed = regular_closed
        self.regular_open = regular_open
        self.clopen = closed and open_

    def __repr__(self) -> str:  # pragma: no cover
        keys = ("closed", "open", "regular_closed", "regular_open", "clopen")
        return "SubsetFlags(" + ", ".join(f"{k}={getattr(self, k)}" for k in keys) + ")"


class ClosureSpace:
    """A ground set plus a closure operator with a memo cache.

    Immutable after construction; the cache only memoizes pure results.
    ``minimal_coverings_fn`` lets constructions with closed-form covering
    descriptions (graphs, semilattices) override the generic search.
    """

    def __init__(self, ground: GroundSet, backend, name: str | None = None,
                 minimal_coverings_fn=None, order: Poset | None = None):
        self.ground = ground
        self.backend = backend
        self.name = name or "space"
        self.order = order
        self._cache: dict[int, int] = {}
        self._coverings_fn = minimal_coverings_fn
        self._coverings_cache: dict[int, list[int]] = {}
        if isinstance(backend, ImplicationSystem):
            self._rules_by_element = [[] for _ in range(ground.size)]
            for ridx, (premise, _) in enumerate(backend.rules):
                for i in bits(premise):
                    self._rules_by_element[i].append(ridx)

    # -- the operator ------------------------------------------------------

    @property
    def full(self) -> int:
        return self.ground.full

    def closure(self, x: int) -> int:
        if x & ~self.full:
            raise SpaceError("subset has bits outside the ground set")
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        if isinstance(self.backend, ImplicationSystem):
            out = self._close_rules(x)
        elif isinstance(self.backend, IntersectionFamily):
            out = self._close_intersections(x)
        else:
            try:
                out = int(self.backend.fn(x))
            except Exception as exc:  # noqa: BLE001 - oracle is arbitrary code
                raise BackendError(f"closure oracle failed on {x:#x}: {exc}") from exc
            if out & ~self.full or out & x != x:
                raise BackendError("oracle returned a non-extensive or out-of-range set")
        self._cache[x] = out
        return out

    def _close_rules(self, x: int) -> int:
        rules = self.backend.rules
        missing = [bit_count(premise & ~x) for premise, _ in rules]
        out = x
        queue = [ridx for ridx, m in enumerate(missing) if m == 0]
        while queue:
            nxt = []
            for ridx in queue:
                concl = rules[ridx][1]
                cbit = 1 << concl
                if out & cbit:
                    continue
                out |= cbit
                for r2 in self._rules_by_element[concl]:
                    missing[r2] -= 1
                    if missing[r2] == 0:
                        nxt.append(r2)
            queue = nxt
        return out

    def _close_intersections(self, x: int) -> int:
        acc = self.full
        for g in self.backend.generators:
            if g & x == x:
                acc &= g
        return acc

    def interior(self, x: int) -> int:
        if x & ~self.full:
            raise SpaceError("subset has bits outside the ground set")
        return self.full & ~self.closure(self.full & ~x)

    def is_closed(self, x: int) -> bool:
        return self.closure(x) == x

    def is_open(self, x: int) -> bool:
        return self.is_closed(self.full & ~x)

    def classify(self, x: int) -> SubsetFlags:
        cl = self.closure(x)
        inter = self.interior(x)
        return SubsetFlags(
            closed=cl == x,
            open_=inter == x,
            regular_closed=self.closure(inter) == x,
            regular_open=self.interior(cl) == x,
        )

    def orthogonal(self, x: int) -> int:
        """closure of the complement; regular closed for every input."""
        return self.closure(self.full & ~x)

    # -- global enumeration --------------------------------------------------

    def _check_bound(self, bound: int | None):
        limit = DEFAULT_ENUMERATION_BOUND if bound is None else bound
        if self.ground.size > limit:
            raise GroundTooLarge(
                f"ground has {self.ground.size} elements, enumeration bound is "
                f"{limit}; use local operations instead")

    def closed_sets(self, bound: int | None = None) -> list[int]:
        """All closed sets, by Ganter's next-closure scan (lectic order)."""
        self._check_bound(bound)
        n = self.ground.size
        out = []
        a = self.closure(0)
        out.append(a)
        while True:
            nxt = None
            for i in reversed(range(n)):
                if (a >> i) & 1:
                    a &= ~(1 << i)
                else:
                    b = self.closure(a | (1 << i))
                    if not (b & ~a) & ((1 << i) - 1):
                        nxt = b
                        break
            if nxt is None:
                return out
            a = nxt
            out.append(a)

    def open_sets(self, bound: int | None = None) -> list[int]:
        return [self.full & ~c for c in self.closed_sets(bound)]

    def regular_closed_sets(self, bound: int | None = None) -> list[int]:
        return [c for c in self.closed_sets(bound)
                if self.closure(self.interior(c)) == c]

    def clopen_sets(self, bound: int | None = None) -> list[int]:
        return [c for c in self.closed_sets(bound) if self.is_open(c)]

    def enumerate_regular_closed(self, bound: int | None = None) -> FiniteLattice:
        """The complete ortholattice of regular closed sets.

        Join is closure of union, meet is closure-of-interior of
        intersection; the orthocomplement maps x to the closure of its
        complement.
        """
        masks = sorted(self.regular_closed_sets(bound),
                       key=lambda m: (bit_count(m), m))
        return self._lattice_from_masks(masks)

    def _lattice_from_masks(self, masks: list[int]) -> FiniteLattice:
        index = {m: i for i, m in enumerate(masks)}
        n = len(masks)
        if self.ground.size <= 62:
            arr = np.asarray(masks, dtype=np.int64)
            leq = (arr[:, None] & ~arr[None, :]) == 0
        else:
            leq = np.zeros((n, n), dtype=bool)
            for i, mi in enumerate(masks):
                for j, mj in enumerate(masks):
                    leq[i, j] = mi & ~mj == 0
        ortho = [index[self.orthogonal(m)] for m in masks]
        labels = tuple("{" + ",".join(self.ground.names(m)) + "}" for m in masks)
        L = FiniteLattice(leq, labels, ortho=ortho, sets=masks,
                          ground_labels=self.ground.labels)

        def fill_tables():
            # joins and meets straight from the operator: closure of the
            # union, closure of the interior of the intersection
            jt = np.empty((n, n), dtype=np.int32)
            mt = np.empty((n, n), dtype=np.int32)
            for i, mi in enumerate(masks):
                for j in range(i, n):
                    mj = masks[j]
                    jt[i, j] = jt[j, i] = index[self.closure(mi | mj)]
                    mt[i, j] = mt[j, i] = index[self.closure(self.interior(mi & mj))]
            L._join = jt
            L._meet = mt

        L._table_factory = fill_tables
        return L

    def join_closure_masks(self, generators) -> list[int]:
        """Close a family of sets under binary joins (closure of unions),
        seeding with the empty set; sorted by size then value."""
        gens = list(dict.fromkeys(generators))
        masks = {0}
        masks.update(gens)
        frontier = list(masks)
        while frontier:
            new = []
            for a in frontier:
                for b in gens:
                    j = self.closure(a | b)
                    if j not in masks:
                        masks.add(j)
                        new.append(j)
            frontier = new
        return sorted(masks, key=lambda m: (bit_count(m), m))

    def meets_stay_inside(self, masks: list[int]) -> bool:
        """Whether the family is closed under the regular-closed meet
        (closure of the interior of intersections)."""
        family = set(masks)
        known: dict[int, bool] = {}
        for i, a in enumerate(masks):
            for b in masks[i + 1:]:
                key = a & b
                ok = known.get(key)
                if ok is None:
                    ok = self.closure(self.interior(key)) in family
                    known[key] = ok
                if not ok:
                    return False
        return True

    def enumerate_clopen(self, bound: int | None = None) -> tuple[Poset, list[int]]:
        """The poset of clopen sets and its index embedding into the
        regular-closed lattice element list (clopen sets are regular
        closed, so the embedding is total)."""
        reg = sorted(self.regular_closed_sets(bound), key=lambda m: (bit_count(m), m))
        clop = [m for m in reg if self.is_open(m)]
        n = len(clop)
        leq = np.zeros((n, n), dtype=bool)
        for i, mi in enumerate(clop):
            for j, mj in enumerate(clop):
                leq[i, j] = mi & ~mj == 0
        labels = tuple("{" + ",".join(self.ground.names(m)) + "}" for m in clop)
        reg_index = {m: i for i, m in enumerate(reg)}
        return Poset(leq, labels), [reg_index[m] for m in clop]

    # -- coverings and neighborhoods ----------------------------------------

    def minimal_coverings(self, p: int) -> list[int]:
        """All inclusion-minimal sets whose closure contains p; always
        includes the trivial covering {p}."""
        if not 0 <= p < self.ground.size:
            raise SpaceError("element out of range")
        hit = self._coverings_cache.get(p)
        if hit is None:
            if self._coverings_fn is not None:
                hit = list(self._coverings_fn(p))
            else:
                hit = self._minimal_coverings_search(p)
            self._coverings_cache[p] = hit
        return hit

    def _minimal_coverings_search(self, p: int) -> list[int]:
        # breadth-first over subset sizes with domination pruning; any
        # nontrivial minimal covering avoids p itself
        n = self.ground.size
        others = [i for i in range(n) if i != p]
        found = [1 << p]
        pbit = 1 << p
        for size in range(1, len(others) + 1):
            layer = []
            for combo in combinations(others, size):
                m = 0
                for i in combo:
                    m |= 1 << i
                if any(f & ~pbit and f & ~m == 0 for f in found):
                    continue
                if self.closure(m) >> p & 1:
                    layer.append(m)
            found.extend(layer)
        return found

    def is_minimal_neighborhood(self, u: int, p: int) -> tuple[bool, str | None]:
        """Minimal-neighborhood test for an open set.

        For each x in u there must be a minimal covering of p meeting u
        exactly in {x}; equivalently p lies in the closure of
        (complement of u) + x.  Precondition violations yield False with a
        diagnostic instead of raising, so sweeps can feed raw inputs.
        """
        if not self.is_open(u):
            return False, "NotOpen"
        if not (u >> p) & 1:
            return False, "NotNeighborhood"
        outside = self.full & ~u
        for x in bits(u):
            if not self.closure(outside | (1 << x)) >> p & 1:
                return False, None
        return True, None

    def minimal_neighborhoods(self, p: int, bound: int | None = None) -> list[int]:
        """All inclusion-minimal open sets containing p (exhaustive)."""
        opens = [u for u in self.open_sets(bound) if u >> p & 1]
        return [u for u in opens if not any(v != u and v & ~u == 0 for v in opens)]

    # -- poset / semilattice type, convex geometry ----------------------------

    def has_poset_type(self, order: Poset) -> bool:
        if order.size != self.ground.size:
            raise SpaceError("order must live on the space's ground set")
        for p in range(self.ground.size):
            down = 0
            for q in np.flatnonzero(order.leq[:, p]):
                down |= 1 << int(q)
            for cov in self.minimal_coverings(p):
                if cov & ~down:
                    return False
        return True

    def has_semilattice_type(self, order: Poset) -> bool:
        if order.size != self.ground.size:
            raise SpaceError("order must live on the space's ground set")
        for p in range(self.ground.size):
            for cov in self.minimal_coverings(p):
                ub = np.ones(order.size, dtype=bool)
                for q in bits(cov):
                    ub &= order.leq[q]
                least = [int(v) for v in np.flatnonzero(ub)
                         if bool(order.leq[v, ub].all())]
                if least != [p]:
                    return False
        return True

    def is_convex_geometry(self, bound: int | None = None) -> bool:
        """Anti-exchange: distinct p, q outside a closed set never have
        equal closures when added to it."""
        n = self.ground.size
        for c in self.closed_sets(bound):
            outside = list(bits(self.full & ~c))
            added = {p: self.closure(c | (1 << p)) for p in outside}
            for p, q in combinations(outside, 2):
                if added[p] == added[q]:
                    return False
        return True

    def extreme_points(self, a: int) -> int:
        """Elements of a that the rest of a does not close over."""
        out = 0
        for x in bits(a):
            if not (self.closure(a & ~(1 << x)) >> x) & 1:
                out |= 1 << x
        return out

    def __repr__(self) -> str:  # pragma: no cover
        return f"ClosureSpace({self.name!r}, n={self.ground.size})"


# ---------------------------------------------------------------------------
# consistency checking


def validate_space(space: ClosureSpace, exhaustive_bound: int = 12,
                   samples: int = 200, seed: int = 0) -> list[str]:
    """Check the closure axioms; exhaustive on small grounds, sampled above."""
    import random

    problems = []
    full = space.full
    if space.closure(0) != 0:
        problems.append("closure of the empty set is nonempty")
    n = space.ground.size
    if n <= exhaustive_bound:
        subsets = list(range(1 << n))
    else:
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) & full for _ in range(samples)]
    for x in subsets:
        c = space.closure(x)
        if c & x != x:
            problems.append(f"not extensive at {x:#x}")
            break
        if space.closure(c) != c:
            problems.append(f"not idempotent at {x:#x}")
            break
    rng = random.Random(seed + 1)
    for _ in range(samples):
        x = rng.getrandbits(n) & full
        y = x | (rng.getrandbits(n) & full)
        if space.closure(x) & ~space.closure(y):
            problems.append("not isotone")
            break
    return problems


# ---------------------------------------------------------------------------
# constructions


def mayet_space(L: FiniteLattice) -> tuple[ClosureSpace, list[int]]:
    """Closure space on the maximal anti-orthogonal subsets of an orthoposet.

    Points are the maximal sets of pairwise non-orthogonal elements; the
    elementary set of p collects the points containing p, and closure is
    intersection of elementary sets.  Returns the space and the map
    p -> elementary set (as a mask), an order- and
    orthocomplement-isomorphism onto the clopen sets.
    """
    from .lattices import validate_lattice

    if L.ortho is None:
        raise InvalidOrthoposet("lattice carries no orthocomplementation")
    report = validate_lattice(L)
    if not report.valid:
        raise InvalidOrthoposet("; ".join(report.problems))
    n = L.size
    o = L.ortho
    ok = np.zeros((n, n), dtype=bool)  # non-orthogonality
    for i in range(n):
        for j in range(n):
            ok[i, j] = not L.le(i, o[j])
    verts = [i for i in range(n) if ok[i, i]]
    cliques: list[frozenset[int]] = []

    def grow(current: set[int], cand: list[int]):
        extended = False
        for v in cand:
            if all(ok[v, u] for u in current):
                grow(current | {v}, [w for w in cand if w > v])
                extended = True
        if not extended:
            fs = frozenset(current)
            if not any(fs < c for c in cliques) and fs not in cliques:
                cliques.append(fs)

    grow(set(), verts)
    cliques = [c for c in cliques if not any(c < d for d in cliques)]
    cliques.sort(key=lambda c: sorted(c))
    labels = tuple("w" + "".join(str(v) for v in sorted(c)) for c in cliques)
    ground = GroundSet(labels)
    zmask = []
    for p in range(n):
        m = 0
        for k, c in enumerate(cliques):
            if p in c:
                m |= 1 << k
        zmask.append(m)
    family = IntersectionFamily(tuple(sorted(set(zmask))))
    space = ClosureSpace(ground, family, name="mayet")
    return space, zmask


def transitive_relation_space(pairs) -> tuple[ClosureSpace, Poset]:
    """Closure space on a finite transitive antisymmetric relation, closed
    under composition of pairs; carries the pair ordering that witnesses
    semilattice type."""
    e = list(dict.fromkeys(tuple(p) for p in pairs))
    eset = set(e)
    for (a, b) in e:
        for (c, d) in e:
            if b == c and (a, d) not in eset:
                raise NotTransitive(f"({a},{b}) and ({c},{d}) compose outside the relation")
    for (a, b) in e:
        if a != b and (b, a) in eset:
            raise NotAntisymmetric(f"({a},{b}) and ({b},{a}) both present")
    labels = tuple(f"{a}->{b}" for a, b in e)
    ground = GroundSet(labels)
    idx = {p: i for i, p in enumerate(e)}
    rules = []
    for (a, b) in e:
        for (c, d) in e:
            if b == c and (a, d) in eset and (a, d) != (a, b) and (a, d) != (c, d):
                premise = (1 << idx[(a, b)]) | (1 << idx[(c, d)])
                rules.append((premise, idx[(a, d)]))
    space = ClosureSpace(ground, ImplicationSystem(tuple(sorted(set(rules)))),
                         name="transitive-relation")
    n = len(e)
    leq = np.zeros((n, n), dtype=bool)
    for i, (x, y) in enumerate(e):
        for j, (x2, y2) in enumerate(e):
            leq[i, j] = (x2 == x or (x2, x) in eset) and (y == y2 or (y, y2) in eset)
    order = Poset(leq, labels)
    if order.validate_order():
        raise NotAntisymmetric("derived pair ordering is not a partial order")
    space.order = order
    return space, order


def up_closure_space(order: Poset) -> ClosureSpace:
    """Closure by upward closure in a poset; its regular closed sets form a
    complete Boolean lattice."""
    n = order.size
    rules = []
    for q in range(n):
        for p in range(n):
            if p != q and order.leq[q, p]:
                rules.append((1 << q, p))
    ground = GroundSet(order.labels)
    return ClosureSpace(ground, ImplicationSystem(tuple(rules)),
                        name="up-closure", order=order)


# ---------------------------------------------------------------------------
# serialization


def space_to_json(space: ClosureSpace) -> str:
    doc: dict = {"labels": list(space.ground.labels)}
    if isinstance(space.backend, ImplicationSystem):
        doc["backend"] = "implications"
        doc["rules"] = [
            {"premise": space.ground.names(premise),
             "conclusion": space.ground.labels[concl]}
            for premise, concl in space.backend.rules
        ]
    elif isinstance(space.backend, IntersectionFamily):
        doc["backend"] = "intersections"
        doc["generators"] = [space.ground.names(g) for g in space.backend.generators]
    else:
        raise SpaceError("oracle-backed spaces cannot be serialized")
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def space_from_json(text: str) -> ClosureSpace:
    doc = json.loads(text)
    ground = GroundSet(doc["labels"])
    kind = doc.get("backend", "implications")
    if kind == "implications":
        rules = tuple(
            (ground.mask_of(r["premise"]), ground.index(r["conclusion"]))
            for r in doc.get("rules", ())
        )
        return ClosureSpace(ground, ImplicationSystem(rules))
    if kind == "intersections":
        gens = tuple(ground.mask_of(g) for g in doc["generators"])
        return ClosureSpace(ground, IntersectionFamily(gens))
    raise SpaceError(f"unknown backend {kind!r}")
