"""Built-in closure spaces, semilattices, graphs, and point configurations.

These are the small hand-checkable instances the verification suite runs
against; each carries its expected structural behavior in the test suite.
"""

from __future__ import annotations

from .lattices import Poset
from .semilattices import JoinSemilattice, generate_sm
from .spaces import ClosureSpace, GroundSet, ImplicationSystem

__all__ = [
    "m3_minus_space",
    "rsd1_failure_space",
    "nonopen_ji_space",
    "clopen_join_gap_space",
    "two_chain_poset",
    "antichain_poset",
    "b2_poset",
    "NAMED_SPACES",
    "NAMED_SEMILATTICES",
]


def m3_minus_space() -> ClosureSpace:
    """Ground {a, b, c, 1}: the three (pairwise incomparable) elements
    a, b, c jointly close over 1, nothing else happens.  Semilattice type
    for the order dropping the bottom of the diamond M3; its regular closed
    lattice equals its clopen lattice and is not semidistributive."""
    g = GroundSet(["a", "b", "c", "1"])
    rules = ImplicationSystem(((g.mask_of("abc"), g.index("1")),))
    order = _order_from_pairs(g, [("a", "1"), ("b", "1"), ("c", "1")])
    return ClosureSpace(g, rules, name="m3-minus", order=order)


def rsd1_failure_space() -> ClosureSpace:
    """Six-element atomistic convex geometry whose regular closed lattice
    contains a copy of L4 (so fails the first of the relaxed
    semidistributive laws) and a copy of L1."""
    g = GroundSet(["a", "b", "c", "d", "e", "u"])
    cdu = g.mask_of("cdu")
    abu = g.mask_of("abu")
    cde = g.mask_of("cde")
    rules = ImplicationSystem((
        (cdu, g.index("a")), (cdu, g.index("b")), (cdu, g.index("e")),
        (abu, g.index("e")),
        (cde, g.index("a")), (cde, g.index("b")),
    ))
    return ClosureSpace(g, rules, name="rsd1-failure")


def nonopen_ji_space() -> ClosureSpace:
    """Seven-element semilattice-type space whose regular closed lattice
    has a join-irreducible element that is not open; consequently its
    clopen poset is not a lattice.

    The attached order is the one forced by semilattice type: each minimal
    covering must join to the covered element, so q (the join of {p0,p1}
    and of {b0,b1}) sits strictly below p (the join of {a,pi}), and the
    members of any one covering stay incomparable.
    """
    g = GroundSet(["a", "p0", "p1", "p", "q", "b0", "b1"])
    rules = ImplicationSystem((
        (g.mask_of(["a", "p0"]), g.index("p")),
        (g.mask_of(["a", "p1"]), g.index("p")),
        (g.mask_of(["p0", "p1"]), g.index("q")),
        (g.mask_of(["b0", "b1"]), g.index("q")),
    ))
    order = _order_from_pairs(g, [
        ("a", "p"), ("q", "p"),
        ("p0", "q"), ("p1", "q"), ("b0", "q"), ("b1", "q"),
    ])
    return ClosureSpace(g, rules, name="nonopen-ji", order=order)


def clopen_join_gap_space() -> ClosureSpace:
    """Four-element poset-type space where two clopen singletons have
    different joins in the clopen poset and in the regular closed lattice:
    the clopen poset is a lattice but not a sublattice of the completion."""
    g = GroundSet(["a0", "a1", "a", "T"])
    rules = ImplicationSystem((
        (g.mask_of(["a0", "a1"]), g.index("T")),
        (g.mask_of(["a"]), g.index("T")),
    ))
    order = _order_from_pairs(g, [("a0", "T"), ("a1", "T"), ("a", "T")])
    return ClosureSpace(g, rules, name="clopen-join-gap", order=order)


def _order_from_pairs(g: GroundSet, pairs) -> Poset:
    import numpy as np

    n = g.size
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        leq[g.index(a), g.index(b)] = True
    for _ in range(n):
        nxt = leq | (leq @ leq)
        if (nxt == leq).all():
            break
        leq = nxt
    return Poset(leq, g.labels)


def two_chain_poset() -> Poset:
    import numpy as np

    return Poset(np.triu(np.ones((2, 2), dtype=bool)), ("x", "y"))


def antichain_poset(n: int) -> Poset:
    import numpy as np

    return Poset(np.eye(n, dtype=bool), tuple(f"x{i}" for i in range(n)))


def b2_poset() -> Poset:
    """Four-element Boolean poset 0 < a, b < 1."""
    import numpy as np

    leq = np.eye(4, dtype=bool)
    leq[0, :] = True
    leq[:, 3] = True
    return Poset(leq, ("0", "a", "b", "1"))


NAMED_SPACES = {
    "m3_minus": m3_minus_space,
    "rsd1_failure": rsd1_failure_space,
    "nonopen_ji": nonopen_ji_space,
    "clopen_join_gap": clopen_join_gap_space,
}

NAMED_SEMILATTICES = {
    "S2": lambda: generate_sm(2),
    "S3": lambda: generate_sm(3),
    "S4": lambda: generate_sm(4),
}
