"""Finite posets and lattices.

Diagnostics on explicit finite lattices: join/meet irreducibles, arrow
relations, the join-dependency graph, boundedness (McKenzie), the
semidistributive laws and their RSD(m) relaxations, pseudocomplements,
orthocomplement validation, sublattice pattern search, Dedekind-MacNeille
completion, and tightness of subposets.

Elements are integers 0..n-1; the order is a boolean matrix ``leq`` with
``leq[i, j]`` meaning ``i <= j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

__all__ = [
    "LatticeError",
    "Poset",
    "FiniteLattice",
    "ArrowReport",
    "DGraph",
    "BoundednessReport",
    "SDReport",
    "validate_lattice",
    "irreducibles_and_arrows",
    "join_dependency",
    "is_bounded",
    "semidistributivity",
    "satisfies_rsd",
    "is_pseudocomplemented",
    "find_sublattice_copy",
    "generated_sublattice",
    "dedekind_macneille",
    "is_dm_completion",
    "is_tight",
    "is_tight_bruteforce",
    "parallel_sum",
    "pattern",
    "PATTERN_NAMES",
    "lattice_to_json",
    "lattice_from_json",
    "lattice_to_dot",
]


class LatticeError(Exception):
    """Raised for structurally invalid posets/lattices or bad arguments."""


def _as_bool_matrix(leq) -> np.ndarray:
    m = np.asarray(leq, dtype=bool)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise LatticeError("leq must be a square matrix")
    return m


class Poset:
    """A finite poset given by its order matrix."""

    def __init__(self, leq, labels: tuple[str, ...] | None = None):
        self.leq = _as_bool_matrix(leq)
        self.size = self.leq.shape[0]
        if labels is None:
            labels = tuple(str(i) for i in range(self.size))
        if len(labels) != self.size or len(set(labels)) != self.size:
            raise LatticeError("labels must be distinct, one per element")
        self.labels = tuple(labels)
        self._covers: np.ndarray | None = None

    # -- basic structure -------------------------------------------------

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def validate_order(self) -> list[str]:
        """Return a list of violated order axioms (empty when valid)."""
        problems = []
        m = self.leq
        if not m.diagonal().all():
            problems.append("reflexivity fails")
        if (m & m.T & ~np.eye(self.size, dtype=bool)).any():
            problems.append("antisymmetry fails")
        closure = m
        for _ in range(self.size):
            nxt = closure | (closure @ closure)
            if (nxt == closure).all():
                break
            closure = nxt
        if (closure != m).any():
            problems.append("transitivity fails")
        return problems

    def covers(self) -> np.ndarray:
        """Cover matrix: ``covers[i, j]`` iff j covers i."""
        if self._covers is None:
            strict = self.leq & ~np.eye(self.size, dtype=bool)
            # j covers i iff i < j with nothing strictly between
            self._covers = strict & ~(strict @ strict)
        return self._covers

    def down_set(self, i: int) -> np.ndarray:
        return self.leq[:, i]

    def up_set(self, i: int) -> np.ndarray:
        return self.leq[i, :]

    def bottom(self) -> int | None:
        hits = np.flatnonzero(self.leq.all(axis=1))
        return int(hits[0]) if hits.size else None

    def top(self) -> int | None:
        hits = np.flatnonzero(self.leq.all(axis=0))
        return int(hits[0]) if hits.size else None

    def linear_extension(self) -> list[int]:
        """Indices sorted compatibly with the order (down-set size, then index)."""
        sizes = self.leq.sum(axis=0)
        return sorted(range(self.size), key=lambda i: (sizes[i], i))

    def dual(self) -> "Poset":
        return Poset(self.leq.T.copy(), self.labels)

    def restrict(self, indices: list[int]) -> "Poset":
        idx = np.asarray(indices)
        return Poset(self.leq[np.ix_(idx, idx)], tuple(self.labels[i] for i in indices))

    def minimal_upper_bounds(self, i: int, j: int) -> list[int]:
        ub = self.leq[i] & self.leq[j]
        return [int(k) for k in np.flatnonzero(ub)
                if int((ub & self.leq[:, k]).sum()) == 1]

    def is_lattice(self) -> bool:
        """Every pair must have a least upper bound and a greatest lower bound."""
        try:
            _lub_table(self.leq)
            _lub_table(self.leq.T)
        except LatticeError:
            return False
        return True

    def isomorphism(self, other: "Poset") -> list[int] | None:
        """An order-isomorphism self -> other as an index map, or None."""
        return _poset_isomorphism(self.leq, other.leq)

    def __repr__(self) -> str:  # pragma: no cover
        return f"{type(self).__name__}(size={self.size})"


def _lub_table(leq: np.ndarray) -> np.ndarray:
    """Least-upper-bound table of a lattice order, or raise LatticeError.

    Scans upper bounds in a linear extension; the first one is the lub iff it
    is below every other upper bound, which is verified.
    """
    n = leq.shape[0]
    order = sorted(range(n), key=lambda i: (leq[:, i].sum(), i))
    pos = np.asarray(order)
    leq_sorted = leq[:, pos]  # column k is element order[k]
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        ub = leq_sorted[i] & leq_sorted  # row j: upper bounds of {i, j}
        if not ub.any(axis=1).all():
            raise LatticeError("some pair has no upper bound")
        first = ub.argmax(axis=1)
        # the first upper bound must be below all the others
        for j in range(n):
            k = order[first[j]]
            if (ub[j] & ~leq_sorted[k]).any():
                raise LatticeError(
                    f"pair ({i},{j}) has no least upper bound")
            table[i, j] = k
    return table


class FiniteLattice(Poset):
    """A finite lattice, optionally orthocomplemented.

    ``sets`` may carry a payload bitmask per element (used by lattices of
    regular closed sets), with ``ground_labels`` naming the bit positions.
    """

    def __init__(
        self,
        leq,
        labels: tuple[str, ...] | None = None,
        ortho: list[int] | None = None,
        sets: list[int] | None = None,
        ground_labels: tuple[str, ...] | None = None,
    ):
        super().__init__(leq, labels)
        self.ortho = list(ortho) if ortho is not None else None
        self.sets = list(sets) if sets is not None else None
        self.ground_labels = ground_labels
        self._join: np.ndarray | None = None
        self._meet: np.ndarray | None = None
        self._table_factory = None  # fills both tables when set

    # -- construction ----------------------------------------------------

    @classmethod
    def from_cover_pairs(cls, n: int, cover_pairs: list[tuple[int, int]],
                         labels: tuple[str, ...] | None = None, **kw) -> "FiniteLattice":
        """Build from a Hasse diagram given as (lower, upper) pairs."""
        m = np.eye(n, dtype=bool)
        for a, b in cover_pairs:
            m[a, b] = True
        for _ in range(n):
            nxt = m | (m @ m)
            if (nxt == m).all():
                break
            m = nxt
        return cls(m, labels, **kw)

    @classmethod
    def chain(cls, n: int) -> "FiniteLattice":
        return cls(np.triu(np.ones((n, n), dtype=bool)))

    def dual(self) -> "FiniteLattice":
        return FiniteLattice(self.leq.T.copy(), self.labels, ortho=self.ortho,
                             sets=self.sets, ground_labels=self.ground_labels)

    # -- lattice operations ------------------------------------------------

    @property
    def join_table(self) -> np.ndarray:
        if self._join is None:
            if self._table_factory is not None:
                self._table_factory()
            else:
                self._join = _lub_table(self.leq)
        return self._join

    @property
    def meet_table(self) -> np.ndarray:
        if self._meet is None:
            if self._table_factory is not None:
                self._table_factory()
            else:
                self._meet = _lub_table(self.leq.T)
        return self._meet

    def join(self, i: int, j: int) -> int:
        return int(self.join_table[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def join_all(self, indices) -> int:
        acc = self.bottom()
        for i in indices:
            acc = self.join(acc, i)
        return acc

    def meet_all(self, indices) -> int:
        acc = self.top()
        for i in indices:
            acc = self.meet(acc, i)
        return acc

    def join_irreducibles(self) -> list[int]:
        cov = self.covers()
        return [i for i in range(self.size) if cov[:, i].sum() == 1]

    def meet_irreducibles(self) -> list[int]:
        cov = self.covers()
        return [i for i in range(self.size) if cov[i, :].sum() == 1]

    def lower_cover(self, i: int) -> int:
        """The unique lower cover of a join-irreducible element."""
        hits = np.flatnonzero(self.covers()[:, i])
        if hits.size != 1:
            raise LatticeError(f"element {i} is not join-irreducible")
        return int(hits[0])

    def upper_cover(self, i: int) -> int:
        hits = np.flatnonzero(self.covers()[i, :])
        if hits.size != 1:
            raise LatticeError(f"element {i} is not meet-irreducible")
        return int(hits[0])


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    problems: list[str]

    @property
    def valid(self) -> bool:
        return not self.problems


def validate_lattice(L: FiniteLattice) -> ValidationReport:
    """Check order axioms, existence of joins/meets, bounds, and the
    orthocomplementation laws when one is attached."""
    problems = list(L.validate_order())
    if not problems:
        if L.bottom() is None:
            problems.append("no bottom element")
        if L.top() is None:
            problems.append("no top element")
        try:
            L.join_table
        except LatticeError as exc:
            problems.append(f"joins: {exc}")
        try:
            L.meet_table
        except LatticeError as exc:
            problems.append(f"meets: {exc}")
    if not problems and L.ortho is not None:
        problems.extend(_validate_ortho(L))
    return ValidationReport(problems)


def _validate_ortho(L: FiniteLattice) -> list[str]:
    problems = []
    o = L.ortho
    if sorted(o) != list(range(L.size)):
        return ["ortho is not a permutation"]
    for i in range(L.size):
        if o[o[i]] != i:
            problems.append(f"ortho not involutive at {L.labels[i]}")
            break
    for i in range(L.size):
        for j in range(L.size):
            if L.le(i, j) and not L.le(o[j], o[i]):
                problems.append(
                    f"ortho not antitone at ({L.labels[i]},{L.labels[j]})")
                break
        else:
            continue
        break
    bot = L.bottom()
    if bot is not None and not problems:
        for i in range(L.size):
            if L.meet(i, o[i]) != bot:
                problems.append(f"x and ortho(x) do not meet to 0 at {L.labels[i]}")
                break
    return problems


# ---------------------------------------------------------------------------
# irreducibles, arrows, join dependency, boundedness


@dataclass(frozen=True)
class ArrowReport:
    ji: list[int]                      # join-irreducibles p, with p_* = lower_cover
    mi: list[int]                      # meet-irreducibles u, with u^* = upper_cover
    up_arrows: set[tuple[int, int]]    # (p, u) with p <= u^* and p !<= u
    down_arrows: set[tuple[int, int]]  # (u, p) with p_* <= u and p !<= u


def irreducibles_and_arrows(L: FiniteLattice) -> ArrowReport:
    ji = L.join_irreducibles()
    mi = L.meet_irreducibles()
    up, down = set(), set()
    for p in ji:
        p_star = L.lower_cover(p)
        for u in mi:
            if not L.le(p, u):
                if L.le(p, L.upper_cover(u)):
                    up.add((p, u))
                if L.le(p_star, u):
                    down.add((u, p))
    return ArrowReport(ji, mi, up, down)


@dataclass(frozen=True)
class DGraph:
    vertices: list[int]
    edges: set[tuple[int, int]]

    def has_cycle(self) -> bool:
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
        WHITE, GRAY, BLACK = 0, 1, 2
        color = dict.fromkeys(self.vertices, WHITE)

        def visit(v: int) -> bool:
            color[v] = GRAY
            for w in adj[v]:
                if color[w] == GRAY or (color[w] == WHITE and visit(w)):
                    return True
            color[v] = BLACK
            return False

        return any(color[v] == WHITE and visit(v) for v in self.vertices)


def join_dependency(L: FiniteLattice) -> DGraph:
    """The join-dependency graph on join-irreducibles.

    Computed both through the arrow relations and through the direct
    definition (p D q iff p != q and p <= q v x, p !<= q_* v x for some x);
    the two must agree on a finite lattice.
    """
    arrows = irreducibles_and_arrows(L)
    via_arrows = {
        (p, q)
        for (p, u) in arrows.up_arrows
        for (u2, q) in arrows.down_arrows
        if u2 == u and p != q
    }
    jt, lq = L.join_table, L.leq
    direct = set()
    for q in arrows.ji:
        q_star = L.lower_cover(q)
        jq, jqs = jt[q], jt[q_star]
        for p in arrows.ji:
            if p != q and bool((lq[p, jq] & ~lq[p, jqs]).any()):
                direct.add((p, q))
    if direct != via_arrows:
        raise LatticeError("join-dependency mismatch between arrow and direct computation")
    return DGraph(arrows.ji, direct)


@dataclass(frozen=True)
class BoundednessReport:
    lower_bounded: bool
    upper_bounded: bool

    @property
    def bounded(self) -> bool:
        return self.lower_bounded and self.upper_bounded


def is_bounded(L: FiniteLattice) -> BoundednessReport:
    """McKenzie boundedness of a finite lattice: both join-dependency graphs
    (on L and on its dual) must be cycle-free."""
    lower = not join_dependency(L).has_cycle()
    upper = not join_dependency(L.dual()).has_cycle()
    return BoundednessReport(lower, upper)


# ---------------------------------------------------------------------------
# semidistributivity and RSD(m)


@dataclass(frozen=True)
class SDReport:
    sd_join: bool
    sd_meet: bool
    join_witness: tuple[int, int, int] | None
    meet_witness: tuple[int, int, int] | None

    @property
    def sd(self) -> bool:
        return self.sd_join and self.sd_meet


def _sd_meet_witness(L: FiniteLattice) -> tuple[int, int, int] | None:
    """First (x, y, z) with x^z = y^z but (x v y)^z > x^z, if any."""
    jt, mt = L.join_table, L.meet_table
    n = L.size
    for z in range(n):
        mz = mt[:, z]
        mjz = mt[jt, z]  # mjz[x, y] = (x v y) ^ z
        bad = (mz[:, None] == mz[None, :]) & (mjz != mz[:, None])
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            return (x, y, z)
    return None


def semidistributivity(L: FiniteLattice) -> SDReport:
    meet_w = _sd_meet_witness(L)
    dual_w = _sd_meet_witness(L.dual())
    return SDReport(sd_join=dual_w is None, sd_meet=meet_w is None,
                    join_witness=dual_w, meet_witness=meet_w)


def satisfies_rsd(L: FiniteLattice, m: int) -> tuple[bool, tuple | None]:
    """Check the quasi-identity: a0 v c = ... = am v c and
    a0 ^ c = a0 ^ a1 ^ ... ^ am imply a0 <= c.

    Returns (True, None) or (False, (a0, a1, ..., am, c)).

    The search fixes c and the common join d, then asks whether the meet
    a0 ^ c is reachable as a meet of a0 with at most m elements sharing the
    join d with c; reachable meets live in the interval [a0 ^ c, a0].
    """
    if m < 1:
        raise LatticeError("m must be >= 1")
    jt, mt, lq = L.join_table, L.meet_table, L.leq
    n = L.size
    for c in range(n):
        jc = jt[:, c]
        groups: dict[int, list[int]] = {}
        for a in range(n):
            groups.setdefault(int(jc[a]), []).append(a)
        for members in groups.values():
            marr = np.asarray(members)
            for a0 in marr[~lq[marr, c]]:
                a0 = int(a0)
                t = int(mt[a0, c])
                cands = marr[lq[t, marr]]
                if cands.size == 0:
                    continue
                # meets of a0 with <=m elements of cands; only values >= t
                # can still reach t by further meets
                cand_list = cands.tolist()
                reach: dict[int, tuple] = {a0: (a0,)}
                frontier = [a0]
                for _ in range(m):
                    new: dict[int, tuple] = {}
                    for u in frontier:
                        path = reach[u]
                        vals = mt[u, cands].tolist()
                        for k, v in enumerate(vals):
                            if v == t:
                                witness = path + (cand_list[k],)
                                witness += (witness[-1],) * (m + 1 - len(witness))
                                return (False, witness + (c,))
                            if v in reach or v in new:
                                continue
                            if lq[t, v]:
                                new[v] = path + (cand_list[k],)
                    if not new:
                        break
                    reach.update(new)
                    frontier = list(new)
    return (True, None)


def satisfies_rsd_bruteforce(L: FiniteLattice, m: int) -> tuple[bool, tuple | None]:
    """Reference implementation quantifying over raw (a0..am, c) tuples."""
    from itertools import product

    jt, mt, lq = L.join_table, L.meet_table, L.leq
    n = L.size
    for c in range(n):
        for tup in product(range(n), repeat=m + 1):
            a0 = tup[0]
            if lq[a0, c]:
                continue
            d = jt[a0, c]
            if any(jt[a, c] != d for a in tup[1:]):
                continue
            acc = a0
            for a in tup[1:]:
                acc = mt[acc, a]
            if acc == mt[a0, c]:
                return (False, tup + (c,))
    return (True, None)


# ---------------------------------------------------------------------------
# pseudocomplements


def is_pseudocomplemented(L: FiniteLattice) -> bool:
    """Each x must admit a largest y with x ^ y = 0."""
    bot = L.bottom()
    if bot is None:
        raise LatticeError("lattice has no bottom")
    mt, lq = L.meet_table, L.leq
    for x in range(L.size):
        zero_meets = np.flatnonzero(mt[x] == bot)
        # a maximum of the set, if any
        if not any(lq[zero_meets, y].all() for y in zero_meets):
            return False
    return True


# ---------------------------------------------------------------------------
# sublattice pattern search


def generated_sublattice(L: FiniteLattice, seeds) -> list[int]:
    """Close a set of elements under L's join and meet; sorted indices."""
    jt, mt = L.join_table, L.meet_table
    current = set(int(s) for s in seeds)
    while True:
        new = set()
        items = list(current)
        for a, b in combinations(items, 2):
            new.add(int(jt[a, b]))
            new.add(int(mt[a, b]))
        if new <= current:
            return sorted(current)
        current |= new


def _minimal_generators(P: FiniteLattice) -> list[int]:
    everything = set(range(P.size))
    for k in range(1, P.size + 1):
        for combo in combinations(range(P.size), k):
            if set(generated_sublattice(P, combo)) == everything:
                return list(combo)
    raise LatticeError("unreachable: whole lattice generates itself")


def _wl_colors(m: np.ndarray) -> list:
    """Iterated neighborhood refinement of element invariants."""
    n = m.shape[0]
    colors = [(int(m[:, i].sum()), int(m[i, :].sum())) for i in range(n)]
    for _ in range(n):
        palette = {c: k for k, c in enumerate(sorted(set(colors)))}
        coded = [palette[c] for c in colors]
        nxt = []
        for i in range(n):
            below = sorted(coded[j] for j in np.flatnonzero(m[:, i]))
            above = sorted(coded[j] for j in np.flatnonzero(m[i, :]))
            nxt.append((coded[i], tuple(below), tuple(above)))
        if len(set(nxt)) == len(set(colors)):
            colors = nxt
            break
        colors = nxt
    return colors


def _poset_isomorphism(a: np.ndarray, b: np.ndarray) -> list[int] | None:
    n = a.shape[0]
    if b.shape[0] != n:
        return None
    pa, pb = _wl_colors(a), _wl_colors(b)
    if sorted(pa) != sorted(pb):
        return None
    # assign the most constrained (rarest-color) elements first
    from collections import Counter

    freq = Counter(pa)
    order = sorted(range(n), key=lambda i: (freq[pa[i]], i))
    mapping: dict[int, int] = {}
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or pa[i] != pb[j]:
                continue
            ok = all((a[i2, i] == b[j2, j]) and (a[i, i2] == b[j, j2])
                     for i2, j2 in mapping.items())
            if ok:
                mapping[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                del mapping[i]
                used[j] = False
        return False

    if not extend(0):
        return None
    return [mapping[i] for i in range(n)]


def find_sublattice_copy(L: FiniteLattice, pat: FiniteLattice) -> dict[int, int] | None:
    """A sublattice of L isomorphic to ``pat``, as a map pattern index ->
    L index, or None.  Searches images of a minimal generating set of the
    pattern and closes under L's operations."""
    if pat.size > L.size:
        return None
    gens = _minimal_generators(pat)
    target = pat.size
    hit: dict[int, int] | None = None

    def search(assigned: list[int]) -> bool:
        nonlocal hit
        if len(assigned) == len(gens):
            sub = generated_sublattice(L, assigned)
            if len(sub) != target:
                return False
            S = FiniteLattice(L.leq[np.ix_(sub, sub)],
                              tuple(L.labels[i] for i in sub))
            iso = _lattice_isomorphism(pat, S)
            if iso is None:
                return False
            hit = {p: sub[iso[p]] for p in range(target)}
            return True
        for x in range(L.size):
            if x in assigned:
                continue
            if len(generated_sublattice(L, assigned + [x])) <= target:
                if search(assigned + [x]):
                    return True
        return False

    search([])
    return hit


def _lattice_isomorphism(a: FiniteLattice, b: FiniteLattice) -> list[int] | None:
    # an order isomorphism between lattices is a lattice isomorphism
    return _poset_isomorphism(a.leq, b.leq)


# ---------------------------------------------------------------------------
# Dedekind-MacNeille completion and tightness


def dedekind_macneille(K: Poset) -> tuple[FiniteLattice, list[int]]:
    """The completion by cuts, with the canonical embedding x -> index of
    the principal ideal of x."""
    n = K.size
    leq = K.leq

    def close(mask: int) -> int:
        ub = _mask_common(leq, mask, rows=True, n=n)
        return _mask_common(leq.T, ub, rows=True, n=n)

    cuts = _next_closure_masks(close, n)
    index = {m: i for i, m in enumerate(cuts)}
    size = len(cuts)
    order = np.zeros((size, size), dtype=bool)
    for i, mi in enumerate(cuts):
        for j, mj in enumerate(cuts):
            order[i, j] = (mi & ~mj) == 0
    emb = [index[close(1 << x)] for x in range(n)]
    labels = tuple(f"c{i}" for i in range(size))
    return FiniteLattice(order, labels, sets=cuts, ground_labels=K.labels), emb


def _mask_common(leq: np.ndarray, mask: int, rows: bool, n: int) -> int:
    """Common upper bounds of the masked elements when given leq, lower
    bounds when given its transpose."""
    acc = (1 << n) - 1
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        row = leq[i]
        bits = 0
        for j in np.flatnonzero(row):
            bits |= 1 << int(j)
        acc &= bits
        m &= m - 1
    return acc


def _next_closure_masks(close, n: int) -> list[int]:
    """All fixpoints of a closure operator on subsets of range(n), in
    lectic order (Ganter's algorithm)."""
    out = []
    a = close(0)
    out.append(a)
    while True:
        nxt = None
        for i in reversed(range(n)):
            if (a >> i) & 1:
                a &= ~(1 << i)
            else:
                b = close(a | (1 << i))
                if not (b & ~a) & ((1 << i) - 1):
                    nxt = b
                    break
        if nxt is None:
            return out
        a = nxt
        out.append(a)


def is_dm_completion(L: FiniteLattice, K: list[int]) -> bool:
    """True iff every element of L is a join of members of K and a meet of
    members of K (Davey-Priestley characterisation)."""
    kk = np.asarray(sorted(set(K)), dtype=int)
    lq, jt, mt = L.leq, L.join_table, L.meet_table
    for x in range(L.size):
        below = kk[lq[kk, x]]
        acc = L.bottom()
        for k in below:
            acc = int(jt[acc, k])
        if acc != x:
            return False
        above = kk[lq[x, kk]]
        acc = L.top()
        for k in above:
            acc = int(mt[acc, k])
        if acc != x:
            return False
    return True


def is_tight(L: FiniteLattice, K: list[int]) -> bool:
    """Whether the inclusion of the subposet on K preserves all existing
    joins and meets of K (joins/meets taken in K's induced order).

    Any violating family extends to a canonical one of the form
    {k in K : k <= b} for some b in L, so scanning b over L is exhaustive.
    """
    kk = sorted(set(K))
    return _tight_side(L.leq, L, kk) and _tight_side(L.leq.T, L.dual(), kk)


def _tight_side(lq: np.ndarray, L: FiniteLattice, kk: list[int]) -> bool:
    if not kk:
        return True
    karr = np.asarray(kk, dtype=int)
    ksub = lq[np.ix_(karr, karr)]
    for b in range(L.size):
        inside = lq[karr, b]  # the canonical family X = {k in K : k <= b}
        ubs = ksub[inside].all(axis=0) if inside.any() else np.ones(len(kk), dtype=bool)
        cand = np.flatnonzero(ubs)
        least = None
        for a in cand:
            if ksub[a, cand].all():
                least = int(karr[a])
                break
        if least is not None and not lq[least, b]:
            return False
    return True


def is_tight_bruteforce(L: FiniteLattice, K: list[int]) -> bool:
    """Reference tightness check over all subsets of K (small K only)."""
    kk = sorted(set(K))
    if len(kk) > 16:
        raise LatticeError("brute-force tightness limited to |K| <= 16")
    lq = L.leq
    for r in range(len(kk) + 1):
        for X in combinations(kk, r):
            for (order, fold, unit) in (
                (lq, L.join_all, L.bottom()),
                (lq.T, L.meet_all, L.top()),
            ):
                ubs = [u for u in kk if all(order[x, u] for x in X)]
                least = [u for u in ubs if all(order[u, v] for v in ubs)]
                if least:
                    if fold(X) != least[0]:
                        return False
    return True


# ---------------------------------------------------------------------------
# parallel sum and the named patterns


def parallel_sum(A: FiniteLattice, B: FiniteLattice) -> FiniteLattice:
    """Add a common bottom and top to the disjoint union of A and B."""
    na, nb = A.size, B.size
    n = na + nb + 2
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    leq[1:1 + na, 1:1 + na] = A.leq
    leq[1 + na:1 + na + nb, 1 + na:1 + na + nb] = B.leq
    labels = ("0*",) + tuple(f"a_{l}" for l in A.labels) \
        + tuple(f"b_{l}" for l in B.labels) + ("1*",)
    return FiniteLattice(leq, labels)


def _pattern_m(k: int) -> FiniteLattice:
    # bottom, k atoms, top
    pairs = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
    labels = ("0",) + tuple(f"a{i}" for i in range(k)) + ("1",)
    return FiniteLattice.from_cover_pairs(k + 2, pairs, labels)


def _pattern_l1() -> FiniteLattice:
    # atoms x, y, z; coatoms x v z and y v z; fails SD-meet at its atoms
    pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 6), (5, 6)]
    return FiniteLattice.from_cover_pairs(7, pairs, ("0", "x", "y", "z", "xz", "yz", "1"))


def _pattern_l3() -> FiniteLattice:
    # the self-dual seven-element member of the exclusion list: a hexagon
    # 0 < b < d < 1 / 0 < a < e < 1 with one extra element c between b and e
    pairs = [(0, 1), (0, 3), (1, 2), (1, 5), (2, 4), (3, 4), (4, 6), (5, 6)]
    return FiniteLattice.from_cover_pairs(7, pairs, ("0", "b", "c", "a", "e", "d", "1"))


def _pattern_l4() -> FiniteLattice:
    # atoms c, a0, a1 over a common bottom; a0 v a1 is a coatom beside c;
    # fails SD-join (and RSD(1)) at (a0, a1, c)
    pairs = [(0, 1), (0, 2), (0, 3), (2, 4), (3, 4), (1, 5), (4, 5)]
    return FiniteLattice.from_cover_pairs(6, pairs, ("0", "c", "a0", "a1", "m", "1"))


def _pattern_benzene() -> FiniteLattice:
    pairs = [(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]
    labels = ("0", "a", "b", "A", "B", "1")
    ortho = [5, 4, 3, 2, 1, 0]  # 0<->1, a<->B, b<->A
    return FiniteLattice.from_cover_pairs(6, pairs, labels, ortho=ortho)


def _with_m4_ortho() -> FiniteLattice:
    L = _pattern_m(4)
    L.ortho = [5, 2, 1, 4, 3, 0]  # pair up the atoms
    return L


def _with_m2_ortho() -> FiniteLattice:
    L = _pattern_m(2)
    L.ortho = [3, 2, 1, 0]
    return L


PATTERN_NAMES = ("M2", "M3", "M4", "L1", "L2", "L3", "L4", "L5", "benzene")


def pattern(name: str) -> FiniteLattice:
    """Built-in small lattices, by conventional name; duals are first-class."""
    builders = {
        "M2": _with_m2_ortho,
        "M3": lambda: _pattern_m(3),
        "M4": _with_m4_ortho,
        "L1": _pattern_l1,
        "L2": lambda: _pattern_l1().dual(),
        "L3": _pattern_l3,
        "L4": _pattern_l4,
        "L5": lambda: _pattern_l4().dual(),
        "benzene": _pattern_benzene,
    }
    try:
        return builders[name]()
    except KeyError:
        raise LatticeError(f"unknown pattern {name!r}") from None


# ---------------------------------------------------------------------------
# serialization


def lattice_to_json(L: FiniteLattice) -> str:
    doc: dict = {"size": L.size, "leq": L.leq.astype(int).tolist()}
    if L.ortho is not None:
        doc["ortho"] = list(L.ortho)
    if L.labels != tuple(str(i) for i in range(L.size)):
        doc["labels"] = list(L.labels)
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def lattice_from_json(text: str) -> FiniteLattice:
    doc = json.loads(text)
    labels = tuple(doc["labels"]) if "labels" in doc else None
    return FiniteLattice(doc["leq"], labels, ortho=doc.get("ortho"))


def lattice_to_dot(L: FiniteLattice, name: str = "L") -> str:
    """Hasse diagram in DOT; join-irreducibles drawn with doubled circles."""
    ji = set(L.join_irreducibles())
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for i in range(L.size):
        shape = "doublecircle" if i in ji else "circle"
        lines.append(f'  n{i} [label="{L.labels[i]}", shape={shape}];')
    cov = L.covers()
    for i, j in zip(*np.nonzero(cov)):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)
