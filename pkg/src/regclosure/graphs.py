"""Graph permutohedra.

The ground set of a graph closure space is the collection of nonempty
connected vertex subsets; closure adds disjoint unions that are again
connected.  Clopen sets form the permutohedron of the graph, regular closed
sets its extended permutohedron, which is always a lattice.

This module builds the catalog and the closure space, computes cuts and
connected components, enumerates pseudo-ultrafilters and the completely
join-irreducible regular closed sets they generate, decides the
block-graph lattice criterion with explicit witnesses, tests for
diamond-contractible induced subgraphs, and runs the two hand-checkable
certifications on K(3,3) minus an edge and on K7.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from itertools import combinations, permutations

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
    "TooManyVertices",
    "Graph",
    "ConnectedCatalog",
    "connected_catalog",
    "graph_closure_space",
    "connected_partitions",
    "cuts",
    "proper_cuts",
    "coco",
    "pseudo_ultrafilters",
    "is_pseudo_ultrafilter",
    "conjugate_pseudo_ultrafilter",
    "j_of_mu",
    "cji_from_pseudo_ultrafilters",
    "enumerate_rg",
    "is_block_graph",
    "pg_lattice_criterion",
    "diamond_contractible_free",
    "certify_k33e",
    "certify_k7",
    "graph_to_json",
    "graph_from_json",
    "named_graph",
    "NAMED_GRAPHS",
    "graph_isomorphism_classes",
]


class TooManyVertices(SpaceError):
    pass


class Graph:
    """Finite simple undirected graph with labeled vertices."""

    def __init__(self, labels, edges):
        self.vertices = GroundSet(labels)
        n = self.vertices.size
        self.adj = np.zeros((n, n), dtype=bool)
        for a, b in edges:
            i, j = self.vertices.index(str(a)), self.vertices.index(str(b))
            if i == j:
                raise SpaceError(f"self-loop at vertex {a!r}")
            self.adj[i, j] = self.adj[j, i] = True
        self.adj_mask = [int(sum(1 << j for j in np.flatnonzero(self.adj[i])))
                         for i in range(n)]

    @property
    def size(self) -> int:
        return self.vertices.size

    def neighbors_of_set(self, mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= self.adj_mask[v]
        return out & ~mask

    def is_connected_set(self, mask: int) -> bool:
        if mask == 0:
            return False
        start = mask & -mask
        seen = start
        while True:
            grow = 0
            for v in bits(seen):
                grow |= self.adj_mask[v]
            grow = (grow & mask) | seen
            if grow == seen:
                return seen == mask
            seen = grow

    def edge_pairs(self) -> list[tuple[str, str]]:
        return [(self.vertices.labels[i], self.vertices.labels[j])
                for i, j in zip(*np.nonzero(np.triu(self.adj)))]

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph({self.size} vertices, {len(self.edge_pairs())} edges)"


# ---------------------------------------------------------------------------
# named graphs and serialization


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def named_graph(name: str) -> Graph:
    """Built-in graphs by name: K<n>, C<n>, P<n> (path on n vertices),
    star<k> (k leaves), diamond, K33_minus_e."""
    if name in NAMED_GRAPHS:
        return NAMED_GRAPHS[name]()
    if name.startswith("K") and name[1:].isdigit():
        n = int(name[1:])
        return Graph(_labels(n), [(i, j) for i in range(n) for j in range(i + 1, n)])
    if name.startswith("C") and name[1:].isdigit():
        n = int(name[1:])
        if n < 3:
            raise SpaceError("cycles need at least 3 vertices")
        return Graph(_labels(n), [(i, (i + 1) % n) for i in range(n)])
    if name.startswith("P") and name[1:].isdigit():
        n = int(name[1:])
        return Graph(_labels(n), [(i, i + 1) for i in range(n - 1)])
    if name.startswith("star") and name[4:].isdigit():
        k = int(name[4:])
        return Graph(["c"] + [str(i) for i in range(k)], [("c", i) for i in range(k)])
    raise SpaceError(f"unknown graph name {name!r}")


def _diamond() -> Graph:
    # four vertices, all edges except 0-3
    return Graph(_labels(4), [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def _k33_minus_e() -> Graph:
    # complete bipartite on {0,2,4} | {1,3,5} minus the edge 0-5
    return Graph(_labels(6),
                 [(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (2, 5), (3, 4), (4, 5)])


NAMED_GRAPHS = {
    "diamond": _diamond,
    "K33_minus_e": _k33_minus_e,
}


def graph_to_json(G: Graph) -> str:
    return json.dumps({"vertices": list(G.vertices.labels),
                       "edges": [list(e) for e in G.edge_pairs()]},
                      separators=(",", ":"), sort_keys=True)


def graph_from_json(text: str) -> Graph:
    doc = json.loads(text)
    return Graph(doc["vertices"], doc["edges"])


# ---------------------------------------------------------------------------
# connected catalog and the closure space


class ConnectedCatalog:
    """All nonempty connected vertex subsets of a graph, indexed.

    Catalog indices form the ground set of the graph's closure space;
    ``sets[i]`` is the vertex mask of catalog element i.
    """

    def __init__(self, graph: Graph, sets: list[int]):
        self.graph = graph
        self.sets = sets
        self.index = {m: i for i, m in enumerate(sets)}
        labels = []
        for m in sets:
            labels.append("".join(graph.vertices.labels[v] for v in bits(m)))
        self.ground = GroundSet(labels)

    @property
    def size(self) -> int:
        return len(self.sets)

    def containment_order(self) -> Poset:
        n = self.size
        leq = np.zeros((n, n), dtype=bool)
        for i, mi in enumerate(self.sets):
            for j, mj in enumerate(self.sets):
                leq[i, j] = mi & ~mj == 0
        return Poset(leq, self.ground.labels)

    def catalog_mask(self, vertex_masks) -> int:
        out = 0
        for m in vertex_masks:
            out |= 1 << self.index[m]
        return out

    def vertex_masks(self, catalog_mask: int) -> list[int]:
        return [self.sets[i] for i in bits(catalog_mask)]


def connected_catalog(G: Graph) -> ConnectedCatalog:
    if G.size > 31:
        raise TooManyVertices("full cataloging is limited to 31 vertices")
    seen: set[int] = set()
    frontier = [1 << v for v in range(G.size)]
    seen.update(frontier)
    while frontier:
        new = []
        for m in frontier:
            for v in bits(G.neighbors_of_set(m)):
                t = m | (1 << v)
                if t not in seen:
                    seen.add(t)
                    new.append(t)
        frontier = new
    sets = sorted(seen, key=lambda m: (bit_count(m), m))
    return ConnectedCatalog(G, sets)


def connected_partitions(cat: ConnectedCatalog, hmask: int) -> list[list[int]]:
    """All partitions of a connected set into connected blocks, as lists of
    vertex masks; restricted-growth enumeration filtered by connectivity."""
    verts = list(bits(hmask))
    out: list[list[int]] = []

    def rec(i: int, blocks: list[int]):
        if i == len(verts):
            if all(cat.graph.is_connected_set(b) for b in blocks):
                out.append(list(blocks))
            return
        v = 1 << verts[i]
        for k in range(len(blocks)):
            blocks[k] |= v
            rec(i + 1, blocks)
            blocks[k] &= ~v
        blocks.append(v)
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return out


def graph_closure_space(G: Graph | ConnectedCatalog) -> ClosureSpace:
    """Closure under disjoint unions on the connected catalog; binary rules
    suffice.  Minimal coverings of a set are its partitions into connected
    blocks.  Carries the containment order, which witnesses semilattice
    type."""
    cat = G if isinstance(G, ConnectedCatalog) else connected_catalog(G)
    rules = []
    for i, mi in enumerate(cat.sets):
        for j in range(i + 1, cat.size):
            mj = cat.sets[j]
            if mi & mj:
                continue
            union = mi | mj
            k = cat.index.get(union)
            if k is not None:
                rules.append(((1 << i) | (1 << j), k))

    def coverings(p: int) -> list[int]:
        return [cat.catalog_mask(blocks)
                for blocks in connected_partitions(cat, cat.sets[p])]

    space = ClosureSpace(cat.ground, ImplicationSystem(tuple(rules)),
                         name="graph", minimal_coverings_fn=coverings,
                         order=cat.containment_order())
    space.catalog = cat
    return space


# ---------------------------------------------------------------------------
# cuts, components, pseudo-ultrafilters


def cuts(cat: ConnectedCatalog, hmask: int) -> list[int]:
    """Nonempty X <= H with X and H-X both connected, H itself included."""
    out = []
    for m in cat.sets:
        if m & ~hmask:
            continue
        rest = hmask & ~m
        if rest == 0 or cat.graph.is_connected_set(rest):
            out.append(m)
    return out


def proper_cuts(cat: ConnectedCatalog, hmask: int) -> list[int]:
    return [m for m in cuts(cat, hmask) if m != hmask]


def coco(cat: ConnectedCatalog, hmask: int, xmask: int) -> list[int]:
    """Connected components of H minus X, as vertex masks."""
    rest = hmask & ~xmask
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        while True:
            grow = (comp | cat.graph.neighbors_of_set(comp)) & rest
            if grow == comp:
                break
            comp = grow
        comps.append(comp)
        rest &= ~comp
    return comps


@dataclass(frozen=True)
class PseudoUltrafilter:
    """A family of cuts of a host set: contains the host, closed under the
    two disjoint-union clauses, complement-exclusive on proper cuts."""

    host: int                 # vertex mask
    members: frozenset[int]   # vertex masks of member cuts, host included


def _cut_triples(cat: ConnectedCatalog, hmask: int) -> list[tuple[int, int, int]]:
    cs = cuts(cat, hmask)
    cset = set(cs)
    out = []
    for x, y in combinations(cs, 2):
        if x & y:
            continue
        z = x | y
        if z in cset:
            out.append((x, y, z))
    return out


def is_pseudo_ultrafilter(cat: ConnectedCatalog, hmask: int, members) -> bool:
    mu = set(members)
    if hmask not in mu:
        return False
    cset = set(cuts(cat, hmask))
    if not mu <= cset:
        return False
    for x in cset:
        if x != hmask and ((x in mu) == ((hmask & ~x) in mu)):
            return False
    for x, y, z in _cut_triples(cat, hmask):
        if x in mu and y in mu and z not in mu:
            return False
        if x not in mu and y not in mu and z in mu:
            return False
    return True


def conjugate_pseudo_ultrafilter(cat: ConnectedCatalog, pf: PseudoUltrafilter) -> PseudoUltrafilter:
    comp = (set(cuts(cat, pf.host)) - set(pf.members)) | {pf.host}
    return PseudoUltrafilter(pf.host, frozenset(comp))


def pseudo_ultrafilters(cat: ConnectedCatalog, hmask: int,
                        max_pairs: int = 20) -> list[PseudoUltrafilter]:
    """All pseudo-ultrafilters on a connected set.

    Complement-exclusivity fixes one member per complementary pair of
    proper cuts, so candidates are sign choices over the pairs; the two
    disjoint-union clauses are then checked vectorized over all choices.
    """
    pcs = proper_cuts(cat, hmask)
    pairs = sorted({(min(x, hmask & ~x), max(x, hmask & ~x)) for x in pcs})
    k = len(pairs)
    if k > max_pairs:
        raise SpaceError(f"too many cuts: 2^{k} candidate sign choices")
    pair_pos = {}
    for i, (lo, hi) in enumerate(pairs):
        pair_pos[lo] = (i, 1)
        pair_pos[hi] = (i, 0)

    cands = np.arange(1 << k, dtype=np.int64)
    ok = np.ones(cands.shape, dtype=bool)

    def member(x: int):
        if x == hmask:
            return np.ones(cands.shape, dtype=bool)
        i, pol = pair_pos[x]
        got = (cands >> i) & 1
        return got == pol

    for x, y, z in _cut_triples(cat, hmask):
        mx, my, mz = member(x), member(y), member(z)
        ok &= ~(mx & my & ~mz)
        ok &= ~(~mx & ~my & mz)

    out = []
    for c in np.flatnonzero(ok):
        members = {hmask}
        for i, (lo, hi) in enumerate(pairs):
            members.add(lo if (int(c) >> i) & 1 else hi)
        out.append(PseudoUltrafilter(hmask, frozenset(members)))
    return out


def j_of_mu(cat: ConnectedCatalog, pf: PseudoUltrafilter) -> int:
    """The catalog mask {X <= H : no component of H-X lies in the family}."""
    out = 0
    for i in bits_of_subsets_below(cat, pf.host):
        x = cat.sets[i]
        if not any(c in pf.members for c in coco(cat, pf.host, x)):
            out |= 1 << i
    return out


def bits_of_subsets_below(cat: ConnectedCatalog, hmask: int):
    for i, m in enumerate(cat.sets):
        if m & ~hmask == 0:
            yield i


def cji_from_pseudo_ultrafilters(cat: ConnectedCatalog,
                                 space: ClosureSpace | None = None) -> list[int]:
    """Closures of j(mu) over all hosts and pseudo-ultrafilters: exactly the
    completely join-irreducible elements of the regular-closed lattice."""
    space = space or graph_closure_space(cat)
    out = set()
    for h in cat.sets:
        for pf in pseudo_ultrafilters(cat, h):
            out.add(space.closure(j_of_mu(cat, pf)))
    return sorted(out, key=lambda m: (bit_count(m), m))


def rg_masks(cat: ConnectedCatalog, space: ClosureSpace | None = None) -> list[int]:
    """All regular closed sets, as the join-closure of the completely
    join-irreducible elements; avoids scanning the subset space."""
    space = space or graph_closure_space(cat)
    return space.join_closure_masks(cji_from_pseudo_ultrafilters(cat, space))


def enumerate_rg(cat: ConnectedCatalog,
                 space: ClosureSpace | None = None) -> FiniteLattice:
    """The extended permutohedron as a lattice object."""
    space = space or graph_closure_space(cat)
    return space._lattice_from_masks(rg_masks(cat, space))


# ---------------------------------------------------------------------------
# block graphs and the lattice criterion


def _induced_degree_profile(G: Graph, vs: tuple[int, ...]) -> list[int]:
    return sorted(int(G.adj[v, list(vs)].sum()) for v in vs)


def is_block_graph(G: Graph) -> tuple[bool, tuple | None]:
    """No induced cycle of length >= 4 and no induced diamond."""
    n = G.size
    for r in range(4, n + 1):
        for vs in combinations(range(n), r):
            sub = G.adj[np.ix_(vs, vs)]
            degs = sorted(int(d) for d in sub.sum(axis=0))
            edge_count = int(sub.sum()) // 2
            if r == 4 and edge_count == 5:
                return False, ("diamond", vs)
            if degs == [2] * r and edge_count == r and _is_single_cycle(sub):
                return False, ("cycle", vs)
    return True, None


def _is_single_cycle(sub: np.ndarray) -> bool:
    # connected 2-regular graph
    r = sub.shape[0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in np.flatnonzero(sub[v]):
                if int(w) not in seen:
                    seen.add(int(w))
                    nxt.append(int(w))
        frontier = nxt
    return len(seen) == r


def has_k4(G: Graph) -> tuple[bool, tuple | None]:
    for vs in combinations(range(G.size), 4):
        if int(G.adj[np.ix_(vs, vs)].sum()) == 12:
            return True, vs
    return False, None


@dataclass(frozen=True)
class PGLatticeReport:
    is_lattice: bool
    clop_equals_reg: bool
    is_block_graph: bool
    has_4clique: bool
    witness: dict | None
    clop_size: int | None = None
    reg_size: int | None = None

    @property
    def graph_test(self) -> bool:
        return self.is_block_graph and not self.has_4clique


def pg_lattice_criterion(G: Graph, enumerate_when_feasible: bool = True,
                         catalog_limit: int = 12) -> PGLatticeReport:
    """Decide whether the permutohedron of G is a lattice.

    The graph-theoretic test (block graph without 4-cliques) runs at any
    size.  When it holds and the graph is small enough, the regular-closed
    lattice is enumerated to confirm that every regular closed set is
    clopen.  When it fails, an explicit four-set witness derived from the
    offending induced subgraph certifies both that some regular closed set
    is not clopen and that a clopen pair has no least upper bound.
    """
    block, block_witness = is_block_graph(G)
    k4, k4_witness = has_k4(G)
    good = block and not k4
    if good:
        clop_size = reg_size = None
        if enumerate_when_feasible and G.size <= catalog_limit:
            cat = connected_catalog(G)
            space = graph_closure_space(cat)
            masks = rg_masks(cat, space)
            clop = [m for m in masks if space.is_open(m)]
            reg_size, clop_size = len(masks), len(clop)
            if clop_size != reg_size:
                raise SpaceError("block graph without 4-cliques must satisfy Clop = Reg")
            # joins are closures of unions by construction; the family must
            # also absorb meets for the clopen poset to be a lattice
            if not space.meets_stay_inside(masks):
                raise SpaceError("regular-closed family not meet-closed")
        return PGLatticeReport(True, True, block, k4, None, clop_size, reg_size)

    quad = _gamma_quadruple(G, k4_witness if k4 else block_witness, k4)
    witness = _certify_not_lattice(G, quad)
    return PGLatticeReport(False, False, block, k4, witness)


def _gamma_quadruple(G: Graph, wit, is_k4: bool) -> tuple[int, int, int, int]:
    """Four connected sets P0..P3 with P0|P2 = P1|P3 = P disjointly and
    cyclically intersecting, inside an offending induced subgraph."""
    if is_k4:
        w, x, y, z = wit
        quad = ({w, x}, {x, y}, {y, z}, {z, w})
    else:
        kind, vs = wit
        if kind == "diamond":
            sub = G.adj[np.ix_(vs, vs)]
            degs = sub.sum(axis=0)
            deg2 = [vs[i] for i in range(4) if degs[i] == 2]
            deg3 = [vs[i] for i in range(4) if degs[i] == 3]
            (u, v), (w, x) = deg2, deg3
            quad = ({u, w}, {w, v}, {v, x}, {x, u})
        else:
            cyc = _cycle_order(G, vs)
            n = len(cyc)
            quad = ({cyc[0], cyc[1]}, {cyc[1], cyc[2]},
                    set(cyc[2:]), set(cyc[3:]) | {cyc[0]})
    return tuple(sum(1 << v for v in part) for part in quad)


def _cycle_order(G: Graph, vs: tuple[int, ...]) -> list[int]:
    sub = {v: [w for w in vs if G.adj[v, w]] for v in vs}
    start = vs[0]
    order = [start, sub[start][0]]
    while len(order) < len(vs):
        nxt = [w for w in sub[order[-1]] if w != order[-2]]
        order.append(nxt[0])
    return order


def _certify_not_lattice(G: Graph, quad: tuple[int, int, int, int]) -> dict:
    cat = connected_catalog(G)
    space = graph_closure_space(cat)
    p_full = 0
    for q in quad:
        p_full |= q
    a = []
    for i in range(4):
        nxt = quad[(i + 1) % 4]
        mask = 0
        for k, m in enumerate(cat.sets):
            if m & ~quad[i] == 0 and m & nxt:
                mask |= 1 << k
        a.append(mask)
    checks = {
        "parts_connected": all(cat.graph.is_connected_set(q) for q in quad),
        "partitions": (quad[0] & quad[2]) == 0 and (quad[0] | quad[2]) == p_full
        and (quad[1] & quad[3]) == 0 and (quad[1] | quad[3]) == p_full,
        "a_clopen": all(space.is_open(m) and space.is_closed(m) for m in a),
        "evens_meet_odds_trivially": all(
            a[i] & a[j] == 0 for i in (0, 2) for j in (1, 3)),
    }
    z = space.closure(a[0] | a[2])
    p_idx = cat.index[p_full]
    checks["join_contains_p"] = bool(z >> p_idx & 1)
    checks["p1_in_a1"] = bool(a[1] >> cat.index[quad[1]] & 1)
    checks["p3_in_a3"] = bool(a[3] >> cat.index[quad[3]] & 1)
    checks["join_not_open"] = not space.is_open(z)
    ok = all(checks.values())
    return {
        "quadruple": [cat.graph.vertices.names(q) for q in quad],
        "pair_without_join": (a[0], a[2]),
        "regular_closed_not_clopen": z,
        "checks": checks,
        "valid": ok,
    }


# ---------------------------------------------------------------------------
# diamond contractibility


def diamond_contractible_free(G: Graph, limit: int = 8) -> tuple[bool, tuple | None]:
    """No four disjoint nonempty connected sets X, Y, U, V forming a
    diamond with diagonal {X, Y} (X~Y, both adjacent to U and V, U and V
    non-adjacent)."""
    if G.size > limit:
        raise TooManyVertices("diamond-contractibility search is exhaustive")
    cat = connected_catalog(G)
    sets = cat.sets

    def adjacent(m1: int, m2: int) -> bool:
        return bool(G.neighbors_of_set(m1) & m2)

    for x, y in combinations(sets, 2):
        if x & y or not adjacent(x, y):
            continue
        rest = [u for u in sets if not u & (x | y)
                and adjacent(u, x) and adjacent(u, y)]
        for u, v in combinations(rest, 2):
            if u & v or adjacent(u, v):
                continue
            return False, (x, y, u, v)
    return True, None


# ---------------------------------------------------------------------------
# certification data: K(3,3) minus an edge
#
# Vertex sides {0,2,4} and {1,3,5}; the missing cross edge is 0-5.  The two
# blocks below list a distinguished minimal open neighborhood of the full
# vertex set and its complement inside the catalog of connected subsets,
# grouped in complement pairs of the vertex powerset where applicable.

K33E_NEIGHBORHOOD = (
    "1", "3", "5",
    "01", "03", "12", "34",
    "013", "123", "125", "134", "145", "235", "345",
    "0123", "0134", "0145", "0235", "1235", "1345",
    "12345", "01345", "01235", "012345",
)

K33E_COMPLEMENT = (
    "0", "2", "4",
    "14", "23", "25", "45",
    "012", "014", "023", "034", "124", "234", "245",
    "0124", "0125", "0234", "0345", "1234", "1245", "2345",
    "01234", "01245", "02345",
)

# four coverings of the full set that isolate the listed members; every
# other member is isolated by the pair {member, complement}
K33E_SPECIAL_COVERINGS = {
    "123": ("123", "0", "45"),
    "134": ("134", "0", "25"),
    "1235": ("1235", "0", "4"),
    "1345": ("1345", "0", "2"),
}

_K33E_SHA256 = "d4a5c00f094cfe7b20e2ac12d2acccb7d597bf325d453885912b73d68aa04bad"

# ---------------------------------------------------------------------------
# certification data: K7
#
# The 64-element minimal open neighborhood of the full vertex set, its
# closure surplus, and the two decomposition schedules (the first lands in
# the neighborhood, the second misses its closure).

K7_NEIGHBORHOOD = (
    "0", "3", "5",
    "01", "02", "03", "04", "05", "06", "15", "23", "34", "35", "56",
    "012", "013", "014", "015", "023", "025", "026", "034", "035", "036",
    "045", "046", "056", "135", "235", "345", "356",
    "0123", "0125", "0134", "0135", "0136", "0145", "0156", "0234", "0235",
    "0236", "0245", "0256", "0345", "0346", "0356", "0456", "1356", "2345",
    "01235", "01236", "01245", "01345", "01346", "01356", "02345", "02356",
    "02456", "03456",
    "012345", "012356", "013456", "023456",
    "0123456",
)

K7_CLOSURE_SURPLUS = (
    "01234", "01256", "01456", "02346", "1235", "1345", "2356", "3456",
)

# partitions of each surplus member into two neighborhood members
K7_INNER_SPLITS = {
    "01234": ("012", "34"),
    "1235": ("15", "23"),
    "1345": ("15", "34"),
    "02346": ("23", "046"),
    "01256": ("012", "56"),
    "2356": ("23", "56"),
    "01456": ("014", "56"),
    "3456": ("34", "56"),
}

# partitions of each surplus member into two sets missing the closure
K7_OUTER_SPLITS = {
    "01234": ("13", "024"),
    "1235": ("13", "25"),
    "1345": ("13", "45"),
    "02346": ("36", "024"),
    "01256": ("25", "016"),
    "2356": ("25", "36"),
    "01456": ("45", "016"),
    "3456": ("36", "45"),
}

K7_QUOTIENT_BLOCKS = ("012", "34", "56")

_K7_SHA256 = "c48d18227174e4f53799772cfd417008c3e405de8561b597cff793b2fe6f940c"


def _checksum(entries) -> str:
    return hashlib.sha256("|".join(sorted(entries)).encode()).hexdigest()


def _mask_from_digits(s: str) -> int:
    m = 0
    for ch in s:
        m |= 1 << int(ch)
    return m


@dataclass
class CertificationReport:
    name: str
    checks: dict[str, bool]
    details: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def certify_k33e() -> CertificationReport:
    """Verify the distinguished 24-element set of the K(3,3)-minus-edge
    catalog: open, complement closed, closure adds exactly one set, regular
    open, a minimal neighborhood of the full set, and join-irreducible
    among regular open sets; consequently the regular-closed lattice has a
    non-clopen completely join-irreducible element and is not the
    completion of the clopen poset."""
    if _checksum(K33E_NEIGHBORHOOD + K33E_COMPLEMENT) != _K33E_SHA256:
        raise SpaceError("K33-e table transcription corrupted")
    G = named_graph("K33_minus_e")
    cat = connected_catalog(G)
    space = graph_closure_space(cat)
    full_vertex = (1 << 6) - 1
    v_sets = [_mask_from_digits(s) for s in K33E_NEIGHBORHOOD]
    c_sets = [_mask_from_digits(s) for s in K33E_COMPLEMENT]
    checks: dict[str, bool] = {}
    checks["catalog_matches_tables"] = sorted(v_sets + c_sets) == sorted(cat.sets)
    checks["size_24"] = len(v_sets) == 24

    v = cat.catalog_mask(v_sets)
    h_idx = cat.index[full_vertex]
    checks["open"] = space.is_open(v)
    checks["complement_closed"] = space.is_closed(space.full & ~v)

    tclv = space.closure(v)
    extra = _mask_from_digits("1234")
    checks["closure_adds_1234_only"] = tclv == (v | (1 << cat.index[extra]))

    in_tcl = lambda m: bool(tclv >> cat.index[m] & 1)
    checks["regular_open"] = space.interior(tclv) == v and \
        not in_tcl(_mask_from_digits("14")) and not in_tcl(_mask_from_digits("23"))

    ok_min, _ = space.is_minimal_neighborhood(v, h_idx)
    checks["minimal_neighborhood"] = ok_min
    checks["special_coverings"] = _check_k33e_coverings(cat, space, v)

    # irreducibility among regular open sets: no two-block partition of the
    # full set with both blocks in the closure
    irr = True
    for x in proper_cuts(cat, full_vertex):
        if in_tcl(x) and in_tcl(full_vertex & ~x):
            irr = False
    checks["join_irreducible_regular_open"] = irr

    # the closure is a completely join-irreducible regular closed set that
    # is not open, via its trace on the cuts of the full set
    mu = frozenset(x for x in cuts(cat, full_vertex) if in_tcl(x))
    pf_ok = is_pseudo_ultrafilter(cat, full_vertex, mu)
    cji_match = space.closure(j_of_mu(cat, PseudoUltrafilter(full_vertex, mu))) == tclv
    checks["closure_is_cji"] = pf_ok and cji_match
    checks["closure_not_open"] = not space.is_open(tclv)

    return CertificationReport("k33e", checks, {
        "neighborhood_size": len(v_sets),
        "catalog_size": cat.size,
        "closure_surplus": ["1234"],
    })


def _check_k33e_coverings(cat: ConnectedCatalog, space: ClosureSpace, v: int) -> bool:
    full_vertex = (1 << 6) - 1
    h_idx = cat.index[full_vertex]
    specials = {_mask_from_digits(k): tuple(_mask_from_digits(p) for p in ps)
                for k, ps in K33E_SPECIAL_COVERINGS.items()}
    for i in bits(v):
        x = cat.sets[i]
        if x == full_vertex:
            continue
        if x in specials:
            blocks = specials[x]
            union = 0
            for b in blocks:
                union |= b
            cover = cat.catalog_mask(blocks)
            if union != full_vertex or any(b & b2 for b, b2 in combinations(blocks, 2)):
                return False
            if not space.closure(cover) >> h_idx & 1:
                return False
            if cover & v != (1 << i):
                return False
        else:
            comp = full_vertex & ~x
            if comp not in cat.index or (v >> cat.index[comp]) & 1:
                return False
    return True


def certify_k7() -> CertificationReport:
    """Verify the 64-element regular open minimal neighborhood of the full
    vertex set of K7 that is not a union of clopen sets."""
    if _checksum(K7_NEIGHBORHOOD + K7_CLOSURE_SURPLUS) != _K7_SHA256:
        raise SpaceError("K7 table transcription corrupted")
    G = named_graph("K7")
    cat = connected_catalog(G)
    space = graph_closure_space(cat)
    full_vertex = (1 << 7) - 1
    u_sets = [_mask_from_digits(s) for s in K7_NEIGHBORHOOD]
    surplus = [_mask_from_digits(s) for s in K7_CLOSURE_SURPLUS]
    u = cat.catalog_mask(u_sets)
    h_idx = cat.index[full_vertex]
    checks: dict[str, bool] = {}
    checks["size_64"] = len(u_sets) == 64 and bit_count(u) == 64

    # complement-exchange: X in u iff complement not in u, for proper X
    exchange = True
    for m in cat.sets:
        if m == full_vertex:
            continue
        comp = full_vertex & ~m
        if bool(u >> cat.index[m] & 1) == bool(u >> cat.index[comp] & 1):
            exchange = False
    checks["complement_exchange"] = exchange and bool(u >> h_idx & 1)

    checks["open"] = space.is_open(u)

    a = space.closure(u)
    expect_a = u | cat.catalog_mask(surplus)
    checks["closure_adds_8_listed"] = a == expect_a

    inner_ok = True
    for s, parts in K7_INNER_SPLITS.items():
        sm = _mask_from_digits(s)
        pms = [_mask_from_digits(p) for p in parts]
        if pms[0] & pms[1] or pms[0] | pms[1] != sm:
            inner_ok = False
        if not all(u >> cat.index[p] & 1 for p in pms):
            inner_ok = False
    checks["inner_splits_in_neighborhood"] = inner_ok

    outer_ok = True
    for s, parts in K7_OUTER_SPLITS.items():
        sm = _mask_from_digits(s)
        pms = [_mask_from_digits(p) for p in parts]
        if pms[0] & pms[1] or pms[0] | pms[1] != sm:
            outer_ok = False
        if any(a >> cat.index[p] & 1 for p in pms):
            outer_ok = False
    checks["outer_splits_miss_closure"] = outer_ok
    checks["regular_open"] = space.interior(a) == u

    q = [_mask_from_digits(b) for b in K7_QUOTIENT_BLOCKS]
    checks["quotient_blocks_inside"] = (
        all(u >> cat.index[b] & 1 for b in q)
        and q[0] | q[1] | q[2] == full_vertex
        and not (q[0] & q[1] or q[0] & q[2] or q[1] & q[2]))

    ok_min, _ = space.is_minimal_neighborhood(u, h_idx)
    checks["minimal_neighborhood"] = ok_min

    # direct argument that no clopen subset of u is a neighborhood of the
    # full set: openness forces both 012 and 34 into it, closedness then
    # forces 01234, which u misses
    q01 = q[0] | q[1]
    q12 = q[1] | q[2]
    checks["no_clopen_neighborhood"] = (
        not (u >> cat.index[q12]) & 1
        and not (u >> cat.index[full_vertex & ~q[1]]) & 1
        and not (u >> cat.index[q01]) & 1)

    return CertificationReport("k7", checks, {
        "neighborhood_size": 64,
        "closure_size": bit_count(a),
        "catalog_size": cat.size,
    })


# ---------------------------------------------------------------------------
# graph inventories for the sweeps


def graph_isomorphism_classes(n: int) -> list[Graph]:
    """One representative per isomorphism class of graphs on n vertices."""
    if n > 6:
        raise TooManyVertices("isomorphism-class inventory limited to 6 vertices")
    pairs = list(combinations(range(n), 2))
    perms = list(permutations(range(n)))
    seen = set()
    out = []
    for bitsel in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bitsel >> i & 1]
        best = None
        eset = {frozenset(e) for e in edges}
        for p in perms:
            canon = tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in eset))
            if best is None or canon < best:
                best = canon
        if best not in seen:
            seen.add(best)
            out.append(Graph(_labels(n), edges))
    return out
