"""Finite join-semilattices and their join-closure spaces.

The closure of a subset is the set of joins of its nonempty finite subsets,
so closed sets are exactly the join-subsemilattices.  The module computes
ideals, maximal proper ideals below an element, the ideal-difference form of
minimal neighborhoods, the completely join-irreducible regular closed sets,
a fast enumeration of the regular-closed lattice through them, and the
clopen-lattice equivalences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .lattices import FiniteLattice, Poset
from .spaces import (
    ClosureSpace,
    GroundSet,
    ImplicationSystem,
    SpaceError,
    bit_count,
    bits,
)

__all__ = [
    "InvalidSemilattice",
    "JoinSemilattice",
    "semilattice_closure_space",
    "generate_sm",
    "ideals",
    "maximal_proper_ideals_below",
    "semilattice_minimal_neighborhoods",
    "lower_cover_count_in_ideal_lattice",
    "nlowcov_criteria",
    "semilattice_cji",
    "enumerate_reg_semilattice",
    "clop_lattice_equivalences",
    "semilattice_to_json",
    "semilattice_from_json",
]


class InvalidSemilattice(SpaceError):
    pass


class JoinSemilattice:
    """Explicit finite join-semilattice: labels, order matrix, join table."""

    def __init__(self, labels, leq, join: np.ndarray | None = None):
        self.ground = GroundSet(labels)
        self.leq = np.asarray(leq, dtype=bool)
        n = self.ground.size
        if self.leq.shape != (n, n):
            raise InvalidSemilattice("order matrix shape mismatch")
        order = Poset(self.leq, self.ground.labels)
        if order.validate_order():
            raise InvalidSemilattice("not a partial order: " + "; ".join(order.validate_order()))
        self.order = order
        if join is None:
            join = self._joins_from_order()
        self.join = np.asarray(join, dtype=np.int32)
        self._validate_join()

    @classmethod
    def from_join_table(cls, labels, join) -> "JoinSemilattice":
        join = np.asarray(join, dtype=np.int32)
        n = join.shape[0]
        leq = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(n):
                leq[i, j] = join[i, j] == j
        return cls(labels, leq, join)

    @classmethod
    def from_order_pairs(cls, labels, pairs) -> "JoinSemilattice":
        ground = GroundSet(labels)
        n = ground.size
        m = np.eye(n, dtype=bool)
        for a, b in pairs:
            m[ground.index(a), ground.index(b)] = True
        for _ in range(n):
            nxt = m | (m @ m)
            if (nxt == m).all():
                break
            m = nxt
        return cls(labels, m)

    def _joins_from_order(self) -> np.ndarray:
        n = self.ground.size
        table = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(n):
                ub = self.leq[i] & self.leq[j]
                least = [int(k) for k in np.flatnonzero(ub) if bool(self.leq[k, ub].all())]
                if len(least) != 1:
                    raise InvalidSemilattice(
                        f"pair ({self.ground.labels[i]},{self.ground.labels[j]}) "
                        "has no least upper bound")
                table[i, j] = least[0]
        return table

    def _validate_join(self):
        n = self.ground.size
        j = self.join
        if (j != j.T).any():
            raise InvalidSemilattice("join not commutative")
        if (j.diagonal() != np.arange(n)).any():
            raise InvalidSemilattice("join not idempotent")
        for a in range(n):
            for b in range(n):
                ab = j[a, b]
                if not (self.leq[a, ab] and self.leq[b, ab]):
                    raise InvalidSemilattice("join is not an upper bound")
                ubs = self.leq[a] & self.leq[b]
                if not bool(self.leq[ab, ubs].all()):
                    raise InvalidSemilattice("join is not the least upper bound")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if j[j[a, b], c] != j[a, j[b, c]]:
                        raise InvalidSemilattice("join not associative")

    @property
    def size(self) -> int:
        return self.ground.size

    def down_mask(self, p: int) -> int:
        m = 0
        for q in np.flatnonzero(self.leq[:, p]):
            m |= 1 << int(q)
        return m

    def strict_down_mask(self, p: int) -> int:
        return self.down_mask(p) & ~(1 << p)

    def join_of_mask(self, mask: int) -> int:
        it = bits(mask)
        acc = next(it)
        for q in it:
            acc = int(self.join[acc, q])
        return acc

    def restrict(self, mask: int) -> "JoinSemilattice":
        """Sub-join-semilattice on a join-closed subset."""
        idx = list(bits(mask))
        for a in idx:
            for b in idx:
                if not (mask >> self.join[a, b]) & 1:
                    raise InvalidSemilattice("subset is not join-closed")
        sub = np.asarray(idx)
        relabel = {p: k for k, p in enumerate(idx)}
        join = np.asarray([[relabel[int(self.join[a, b])] for b in idx] for a in idx])
        return JoinSemilattice([self.ground.labels[i] for i in idx],
                               self.leq[np.ix_(sub, sub)], join)

    def __repr__(self) -> str:  # pragma: no cover
        return f"JoinSemilattice({self.size})"


def semilattice_closure_space(S: JoinSemilattice) -> ClosureSpace:
    """The join-closure space of S: rules x,y -> x v y for incomparable
    pairs; minimal coverings of p are the minimal subsets joining to p."""
    rules = []
    n = S.size
    for a in range(n):
        for b in range(a + 1, n):
            if not S.leq[a, b] and not S.leq[b, a]:
                rules.append(((1 << a) | (1 << b), int(S.join[a, b])))

    def coverings(p: int) -> list[int]:
        return _minimal_join_covers(S, p)

    return ClosureSpace(S.ground, ImplicationSystem(tuple(rules)),
                        name="join-closure", minimal_coverings_fn=coverings,
                        order=S.order)


def _minimal_join_covers(S: JoinSemilattice, p: int) -> list[int]:
    # minimal sets with join p; all lie inside the principal ideal of p and
    # are antichains, found by breadth-first search over subset sizes
    from itertools import combinations

    down = [q for q in bits(S.strict_down_mask(p))]
    found = [1 << p]
    for size in range(2, len(down) + 1):
        layer = []
        for combo in combinations(down, size):
            m = 0
            for q in combo:
                m |= 1 << q
            if any(f != (1 << p) and f & ~m == 0 for f in found):
                continue
            acc = combo[0]
            for q in combo[1:]:
                acc = int(S.join[acc, q])
            if acc == p:
                layer.append(m)
        found.extend(layer)
    return found


def generate_sm(m: int) -> JoinSemilattice:
    """The join-semilattice of nonempty subsets of an m-element set under
    union; 2^m - 1 elements."""
    if not 1 <= m <= 5:
        raise InvalidSemilattice("m must be between 1 and 5")
    subsets = list(range(1, 1 << m))
    labels = ["".join(str(i + 1) for i in bits(s)) for s in subsets]
    n = len(subsets)
    leq = np.zeros((n, n), dtype=bool)
    join = np.zeros((n, n), dtype=np.int32)
    pos = {s: k for k, s in enumerate(subsets)}
    for i, s in enumerate(subsets):
        for j, t in enumerate(subsets):
            leq[i, j] = s & ~t == 0
            join[i, j] = pos[s | t]
    return JoinSemilattice(labels, leq, join)


# ---------------------------------------------------------------------------
# ideals


def ideals(S: JoinSemilattice, within: int | None = None) -> list[int]:
    """All ideals (down-closed, join-closed subsets, the empty one
    included) of S, or of the sub-semilattice on ``within``."""
    universe = S.ground.full if within is None else within
    n = S.size
    if bit_count(universe) > 20:
        raise SpaceError("ideal enumeration limited to 20 elements")
    down = [S.down_mask(p) & universe for p in range(n)]
    out = []
    members = list(bits(universe))
    for sub in range(1 << len(members)):
        mask = 0
        rest = sub
        for q in members:
            if rest & 1:
                mask |= 1 << q
            rest >>= 1
        if _is_ideal(S, mask, down):
            out.append(mask)
    return out


def _is_ideal(S: JoinSemilattice, mask: int, down: list[int]) -> bool:
    for q in bits(mask):
        if down[q] & ~mask:
            return False
    for a in bits(mask):
        for b in bits(mask):
            if b > a and not (mask >> int(S.join[a, b])) & 1:
                return False
    return True


def maximal_proper_ideals_below(S: JoinSemilattice, p: int) -> list[int]:
    """Maximal proper ideals of the principal ideal of p.

    Recursive refinement: peel a join violation or the forbidden top out of
    the candidate down-set; memoized on the candidate mask.
    """
    top = S.down_mask(p)
    down = [S.down_mask(q) for q in range(S.size)]
    start = top & ~(1 << p)
    seen: dict[int, None] = {}
    results: set[int] = set()

    def descend(mask: int):
        if mask in seen:
            return
        seen[mask] = None
        viol = None
        for a in bits(mask):
            for b in bits(mask):
                if b <= a:
                    continue
                j = int(S.join[a, b])
                if not (mask >> j) & 1:
                    viol = (a, b)
                    break
            if viol:
                break
        if viol is None:
            results.add(mask)
            return
        a, b = viol
        # any ideal inside mask omits a or b (their join escapes mask)
        descend(_remove_up(mask, a, down, S))
        descend(_remove_up(mask, b, down, S))

    descend(start)
    out = [m for m in results if not any(m != o and m & ~o == 0 for o in results)]
    return sorted(out)


def _remove_up(mask: int, q: int, down: list[int], S: JoinSemilattice) -> int:
    out = mask
    for r in bits(mask):
        if (down[r] >> q) & 1:
            out &= ~(1 << r)
    return out


def semilattice_minimal_neighborhoods(S: JoinSemilattice, p: int) -> list[int]:
    """Minimal neighborhoods of p: the principal ideal of p minus any of
    its maximal proper ideals.  Each is clopen."""
    top = S.down_mask(p)
    return [top & ~a for a in maximal_proper_ideals_below(S, p)]


# ---------------------------------------------------------------------------
# lower covers in the ideal lattice and the CJI description


def lower_cover_count_in_ideal_lattice(S: JoinSemilattice, p: int) -> int:
    return len(maximal_proper_ideals_below(S, p))


def nlowcov_criteria(S: JoinSemilattice, p: int, n: int) -> dict[str, bool]:
    """The four equivalent bounds on the number of lower covers of the
    principal ideal of p inside the ideal lattice; all values must agree."""
    from itertools import combinations

    maxi = maximal_proper_ideals_below(S, p)
    strict = S.strict_down_mask(p)
    strict_list = list(bits(strict))
    i = len(maxi) <= n

    # a union of at most n ideals covering the strict down-set
    all_ideals = [a for a in ideals(S) if a & ~S.down_mask(p) == 0 and not (a >> p) & 1]
    ii = _coverable(strict, all_ideals, n)
    iii = _coverable(strict, maxi, n)

    iv = True
    for combo in combinations(strict_list, n + 1):
        if all(int(S.join[u, v]) == p for u, v in combinations(combo, 2)):
            iv = False
            break
    return {"lower_covers": i, "ideal_union": ii, "cover_union": iii,
            "no_antiorthogonal": iv}


def _coverable(target: int, parts: list[int], n: int) -> bool:
    from itertools import combinations

    k = min(n, len(parts))
    for r in range(k + 1):
        for combo in combinations(parts, r):
            acc = 0
            for c in combo:
                acc |= c
            if target & ~acc == 0:
                return True
    return False


def semilattice_cji(S: JoinSemilattice) -> list[int]:
    """The completely join-irreducible regular closed sets: differences
    (down-set of p) minus a', for p whose principal ideal has at most two
    lower covers in the ideal lattice, a' one of them."""
    out = []
    for p in range(S.size):
        maxi = maximal_proper_ideals_below(S, p)
        if len(maxi) <= 2:
            top = S.down_mask(p)
            for a in maxi:
                out.append(top & ~a)
    return sorted(set(out), key=lambda m: (bit_count(m), m))


def enumerate_reg_semilattice(S: JoinSemilattice) -> FiniteLattice:
    """Regular-closed lattice of the join-closure space, enumerated as the
    join-closure of the completely join-irreducible elements."""
    space = semilattice_closure_space(S)
    masks = space.join_closure_masks(semilattice_cji(S))
    return space._lattice_from_masks(masks)


# ---------------------------------------------------------------------------
# clopen lattice equivalences


@dataclass(frozen=True)
class ClopEquivalences:
    clop_is_lattice: bool
    clop_sublattice_of_reg: bool
    clop_equals_reg: bool
    join_closure_of_open_is_open: bool
    witness: tuple | None

    @property
    def all_equal(self) -> bool:
        vals = {self.clop_is_lattice, self.clop_sublattice_of_reg,
                self.clop_equals_reg, self.join_closure_of_open_is_open}
        return len(vals) == 1


def clop_lattice_equivalences(S: JoinSemilattice, bound: int | None = None) -> ClopEquivalences:
    space = semilattice_closure_space(S)
    reg = space.regular_closed_sets(bound)
    clop = [m for m in reg if space.is_open(m)]
    clop_set = set(clop)

    equals = len(clop) == len(reg)

    sub = True
    witness = None
    for i, a in enumerate(clop):
        for b in clop[i + 1:]:
            j = space.closure(a | b)
            m = space.closure(space.interior(a & b))
            if j not in clop_set or m not in clop_set:
                sub = False
                witness = (a, b, j if j not in clop_set else m)
                break
        if not sub:
            break

    lattice = _clop_poset_is_lattice(clop)
    opens_ok = all(space.is_open(space.closure(u)) for u in space.open_sets(bound))
    return ClopEquivalences(lattice, sub, equals, opens_ok, witness)


def _clop_poset_is_lattice(clop: list[int]) -> bool:
    n = len(clop)
    for i in range(n):
        for j in range(i + 1, n):
            ubs = [k for k in range(n) if clop[i] & ~clop[k] == 0 and clop[j] & ~clop[k] == 0]
            least = [k for k in ubs if all(clop[k] & ~clop[u] == 0 for u in ubs)]
            if not least:
                return False
            lbs = [k for k in range(n) if clop[k] & ~clop[i] == 0 and clop[k] & ~clop[j] == 0]
            great = [k for k in lbs if all(clop[u] & ~clop[k] == 0 for u in lbs)]
            if not great:
                return False
    return True


# ---------------------------------------------------------------------------
# serialization


def semilattice_to_json(S: JoinSemilattice) -> str:
    cov = S.order.covers()
    pairs = [[S.ground.labels[i], S.ground.labels[j]] for i, j in zip(*np.nonzero(cov))]
    return json.dumps({"elements": list(S.ground.labels), "order": pairs},
                      separators=(",", ":"), sort_keys=True)


def semilattice_from_json(text: str) -> JoinSemilattice:
    doc = json.loads(text)
    if "join" in doc:
        labels = doc.get("elements") or [str(i) for i in range(len(doc["join"]))]
        return JoinSemilattice.from_join_table(labels, doc["join"])
    return JoinSemilattice.from_order_pairs(doc["elements"], doc["order"])
