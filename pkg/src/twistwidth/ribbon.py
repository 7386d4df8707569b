"""Ribbon graphs as signed rotation systems.

Edge ``i`` (0-based internally, ``i + 1`` for users) owns half-edges
``2i`` and ``2i + 1``. Each vertex is the cyclic order of the half-edges
attached to it, read in the vertex's positive direction, and each edge
carries a twist flag.

Band geometry used throughout: the band of edge ``i`` is the unit square
with the end ``x = 0`` glued at half-edge ``2i`` and ``x = 1`` at
``2i + 1``. Walking a vertex boundary in the positive direction crosses
the end at ``2i`` from ``y = 0`` to ``y = 1``; at ``2i + 1`` it goes from
``y = 1`` to ``y = 0`` when the band is untwisted and from ``y = 0`` to
``y = 1`` when it is twisted. Side ``s`` of the band is ``y = s``.

A boundary-walk state is ``(h, d)`` with ``d = 0`` for the positive
direction: the walk has just reached half-edge ``h`` and is about to run
along one side of its band.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from . import core
from .core import SetSystem
from .errors import (
    Disconnected,
    InvalidRibbonGraph,
    InvalidSubset,
    TooManyEdges,
)

MAX_ENUM_EDGES = 20

EdgeSubset = Union[int, Iterable[int]]


def _normalize_rotation(rot: Sequence[int]) -> tuple[int, ...]:
    if not rot:
        return ()
    i = rot.index(min(rot))
    return tuple(rot[i:]) + tuple(rot[:i])


@dataclass(frozen=True)
class RibbonGraph:
    """Signed rotation system.

    Rotations are stored starting at their smallest half-edge and vertices
    are sorted by that half-edge (isolated vertices last), so two equal
    rotation systems compare equal regardless of how they were written.
    """

    twisted: tuple[bool, ...]
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rots = [_normalize_rotation(list(r)) for r in self.vertices]
        rots.sort(key=lambda r: (0, r[0]) if r else (1, 0))
        object.__setattr__(self, "vertices", tuple(rots))
        object.__setattr__(self, "twisted", tuple(bool(t) for t in self.twisted))
        seen = sorted(h for r in rots for h in r)
        if seen != list(range(2 * len(self.twisted))):
            raise InvalidRibbonGraph(
                f"rotations must partition the half-edges 0..{2 * len(self.twisted) - 1}"
            )

    @classmethod
    def one_vertex(cls, word: Sequence[int], twisted: Iterable[int] = ()) -> "RibbonGraph":
        """One-vertex graph from a cyclic word of 1-based edge labels.

        Every label must occur exactly twice; its first occurrence becomes
        the even half-edge. ``twisted`` lists the 1-based twisted edges.

        >>> RibbonGraph.one_vertex([1, 2, 1, 2]).vertices
        ((0, 2, 1, 3),)
        """
        m = max(word, default=0)
        seen: dict[int, int] = {}
        rot = []
        for label in word:
            k = seen.get(label, 0)
            if k >= 2 or not 1 <= label:
                raise InvalidRibbonGraph(f"label {label} used more than twice")
            seen[label] = k + 1
            rot.append(2 * (label - 1) + k)
        tw = set(twisted)
        return cls(tuple(i + 1 in tw for i in range(m)), (tuple(rot),))

    # counts -----------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.twisted)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * (2 * self.num_edges)
        for v, rot in enumerate(self.vertices):
            for h in rot:
                out[h] = v
        return tuple(out)

    @cached_property
    def _succ(self) -> tuple[int, ...]:
        out = [0] * (2 * self.num_edges)
        for rot in self.vertices:
            for i, h in enumerate(rot):
                out[h] = rot[(i + 1) % len(rot)]
        return tuple(out)

    @cached_property
    def _pred(self) -> tuple[int, ...]:
        out = [0] * (2 * self.num_edges)
        for h, g in enumerate(self._succ):
            out[g] = h
        return tuple(out)

    def edge_mask(self, A: EdgeSubset) -> int:
        try:
            return core.to_mask(self.num_edges, A)
        except core.OutOfRangeElement as exc:
            raise InvalidSubset(str(exc)) from None

    @property
    def all_edges(self) -> int:
        return (1 << self.num_edges) - 1

    # structure ----------------------------------------------------------

    def _component_labels(self, mask: int) -> list[int]:
        parent = list(range(self.num_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        vo = self.vertex_of
        for i in range(self.num_edges):
            if mask >> i & 1:
                a, b = find(vo[2 * i]), find(vo[2 * i + 1])
                if a != b:
                    parent[a] = b
        return [find(v) for v in range(self.num_vertices)]

    def component_count(self, mask: Optional[int] = None) -> int:
        """Connected components of the spanning subgraph on ``mask`` (all edges by default)."""
        if mask is None:
            mask = self.all_edges
        return len(set(self._component_labels(mask)))

    def component_split(self) -> list[tuple[list[int], int]]:
        """(vertex indices, edge mask) for every connected component."""
        labels = self._component_labels(self.all_edges)
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(labels):
            groups.setdefault(c, []).append(v)
        out = []
        vo = self.vertex_of
        for verts in groups.values():
            vs = set(verts)
            emask = 0
            for i in range(self.num_edges):
                if vo[2 * i] in vs:
                    emask |= 1 << i
            out.append((verts, emask))
        return out

    # boundary tracing --------------------------------------------------

    def _restricted_neighbours(self, mask: int):
        n = 2 * self.num_edges
        nxt = [-1] * n
        prv = [-1] * n
        bare = 0
        for rot in self.vertices:
            act = [h for h in rot if mask >> (h >> 1) & 1]
            if not act:
                bare += 1
                continue
            k = len(act)
            for i, h in enumerate(act):
                nxt[h] = act[(i + 1) % k]
                prv[h] = act[i - 1]
        return nxt, prv, bare

    def boundary_orbits(self, mask: int) -> tuple[list[list[tuple[int, int]]], int]:
        """All orbits of the boundary-walk map on states of ``mask`` edges.

        Returns the orbits (each boundary circle appears twice, once per
        direction) and the number of vertices with no edge of ``mask``.
        """
        nxt, prv, bare = self._restricted_neighbours(mask)
        tw = self.twisted
        seen = set()
        orbits = []
        for h in range(2 * self.num_edges):
            if nxt[h] < 0:
                continue
            for d in (0, 1):
                if (h, d) in seen:
                    continue
                orbit = []
                s = (h, d)
                while s not in seen:
                    seen.add(s)
                    orbit.append(s)
                    g, dd = s
                    p = g ^ 1
                    dd ^= tw[g >> 1]
                    s = (prv[p] if dd else nxt[p], dd)
                orbits.append(orbit)
        return orbits, bare

    def face_count(self, mask: int) -> int:
        """Boundary components of the spanning ribbon subgraph on ``mask``."""
        nxt, prv, bare = self._restricted_neighbours(mask)
        tw = self.twisted
        n = 2 * self.num_edges
        seen = [False] * (2 * n)
        orbits = 0
        for start in range(2 * n):
            if seen[start] or nxt[start >> 1] < 0:
                continue
            orbits += 1
            s = start
            while not seen[s]:
                seen[s] = True
                h = (s >> 1) ^ 1
                d = (s & 1) ^ tw[h >> 1]
                s = ((prv[h] if d else nxt[h]) << 1) | d
        if orbits % 2:
            raise AssertionError("odd number of directed boundary orbits")
        return orbits // 2 + bare

    @cached_property
    def face_table(self) -> tuple[int, ...]:
        """``face_count`` for every edge mask, indexed by the mask."""
        if self.num_edges > MAX_ENUM_EDGES:
            raise TooManyEdges(f"{self.num_edges} edges exceeds the enumeration limit {MAX_ENUM_EDGES}")
        return tuple(self.face_count(mask) for mask in range(1 << self.num_edges))


@dataclass(frozen=True)
class BoundaryReport:
    subset: int
    count: int
    walks: tuple[tuple[tuple[int, int], ...], ...]
    bare_vertices: int


def _direction_partner(G: RibbonGraph, state: tuple[int, int]) -> tuple[int, int]:
    """The state that runs along the same band side in the opposite direction."""
    h, d = state
    side = _side(G, h, d)
    other = h ^ 1
    for dd in (0, 1):
        if _side(G, other, dd) == side:
            return other, dd
    raise AssertionError("unreachable")


def _side(G: RibbonGraph, h: int, d: int) -> int:
    if h & 1 == 0:
        return d
    return d if G.twisted[h >> 1] else 1 - d


def boundary_count(G: RibbonGraph, A: EdgeSubset) -> BoundaryReport:
    """Boundary components f(A) of the spanning ribbon subgraph (V, A).

    ``walks`` holds one directed orbit per boundary circle that touches an
    edge of A; vertices meeting no edge of A are counted in
    ``bare_vertices``.
    """
    mask = G.edge_mask(A)
    orbits, bare = G.boundary_orbits(mask)
    index = {s: i for i, orb in enumerate(orbits) for s in orb}
    used = set()
    walks = []
    for i, orb in enumerate(orbits):
        if i in used:
            continue
        partner = index[_direction_partner(G, orb[0])]
        if partner == i:
            raise AssertionError("a boundary walk met the same band side twice")
        used.update((i, partner))
        walks.append(tuple(orb))
    return BoundaryReport(mask, len(walks) + bare, tuple(walks), bare)


def components(G: RibbonGraph) -> int:
    return G.component_count()


def num_vertices(G: RibbonGraph) -> int:
    return G.num_vertices


def num_edges(G: RibbonGraph) -> int:
    return G.num_edges


def euler_genus(G: RibbonGraph) -> int:
    """2k - v + e - f for the whole graph."""
    f = G.face_count(G.all_edges)
    return 2 * G.component_count() - G.num_vertices + G.num_edges - f


def _require_enumerable(G: RibbonGraph) -> None:
    if G.num_edges > MAX_ENUM_EDGES:
        raise TooManyEdges(f"{G.num_edges} edges exceeds the enumeration limit {MAX_ENUM_EDGES}")


def quasi_tree_masks(G: RibbonGraph) -> tuple[int, ...]:
    """Edge masks of the spanning quasi-trees, one boundary circle per component."""
    _require_enumerable(G)
    k = G.component_count()
    table = G.face_table
    # f(A) >= k(V, A) >= k(G), so f(A) == k(G) already forces k(V, A) == k(G)
    return tuple(a for a, f in enumerate(table) if f == k and G.component_count(a) == k)


def quasi_trees(G: RibbonGraph) -> list[list[int]]:
    """Spanning quasi-trees as sorted lists of 1-based edge labels."""
    return [core.elements(a) for a in sorted(quasi_tree_masks(G), key=core.canonical_key)]


def delta_matroid_of(G: RibbonGraph) -> SetSystem:
    return SetSystem.from_masks(G.num_edges, quasi_tree_masks(G))


def partial_dual(G: RibbonGraph, A: EdgeSubset) -> RibbonGraph:
    """Partial dual with respect to the edge subset A.

    Each boundary circle of (V, A) becomes a vertex. Tracing it through
    all corners of G, every run along a side of an A-band becomes a
    half-edge of that band (side 0 -> even id, side 1 -> odd id) and every
    end of a band outside A that the walk passes keeps its id. Twist flags
    come from comparing, at both attachments of a band, the walk direction
    with the band square's own boundary orientation.
    """
    mask = G.edge_mask(A)
    succ, pred, tw = G._succ, G._pred, G.twisted
    in_a = lambda h: mask >> (h >> 1) & 1  # noqa: E731
    # sign[h] = +1 when the new vertex's positive direction runs along the
    # attaching segment the same way as the square's counter-clockwise boundary
    sign = [0] * (2 * G.num_edges)
    new_vertices: list[list[int]] = []

    def stub_sign(g: int, d: int) -> int:
        s = -1 if d == 0 else 1
        if g & 1 and tw[g >> 1]:
            s = -s
        return s

    orbits_done: set = set()
    for rot in G.vertices:
        if any(in_a(h) for h in rot):
            continue
        for g in rot:
            sign[g] = stub_sign(g, 0)
        new_vertices.append(list(rot))

    # positive-direction starts first, so new vertices keep the old orientation where they can
    for d0 in (0, 1):
        for h0 in range(2 * G.num_edges):
            if not in_a(h0) or (h0, d0) in orbits_done:
                continue
            events: list[int] = []
            state = (h0, d0)
            while True:
                orbits_done.add(state)
                orbits_done.add(_direction_partner(G, state))
                h, d = state
                side = _side(G, h, d)
                forward = h & 1 == 0
                sign[2 * (h >> 1) + side] = 1 if (side == 0) == forward else -1
                events.append(2 * (h >> 1) + side)
                p = h ^ 1
                d ^= tw[p >> 1]
                g = pred[p] if d else succ[p]
                while not in_a(g):
                    sign[g] = stub_sign(g, d)
                    events.append(g)
                    g = pred[g] if d else succ[g]
                state = (g, d)
                if state == (h0, d0):
                    break
            new_vertices.append(events)

    twisted = tuple(sign[2 * i] != sign[2 * i + 1] for i in range(G.num_edges))
    return RibbonGraph(twisted, tuple(tuple(v) for v in new_vertices))


def geometric_dual(G: RibbonGraph) -> RibbonGraph:
    return partial_dual(G, G.all_edges)


def pd_genus_formula(G: RibbonGraph, A: EdgeSubset) -> int:
    """Euler genus of G^A from boundary counts: summed over components,
    2 + e - f(A) - f(A^c)."""
    mask = G.edge_mask(A)
    comp = G.component_count()
    # f is additive over components, so the per-component sum collapses
    return 2 * comp + G.num_edges - G.face_count(mask) - G.face_count(G.all_edges & ~mask)


def _per_component(G: RibbonGraph) -> list[RibbonGraph]:
    parts = []
    for verts, emask in G.component_split():
        edges = core.elements(emask)
        relabel = {}
        for new, e in enumerate(edges):
            relabel[2 * (e - 1)] = 2 * new
            relabel[2 * (e - 1) + 1] = 2 * new + 1
        rots = tuple(tuple(relabel[h] for h in G.vertices[v]) for v in verts)
        parts.append(RibbonGraph(tuple(G.twisted[e - 1] for e in edges), rots))
    return parts


def _max_pd_genus_one_component(G: RibbonGraph) -> int:
    table = G.face_table
    full = G.all_edges
    return 1 + G.num_edges - min(table[full & ~a] for a in quasi_tree_masks(G))


def max_pd_genus_by_quasi_trees(G: RibbonGraph) -> int:
    """Per-component ``1 + e - min f(A^c)`` over spanning quasi-trees, summed."""
    _require_enumerable(G)
    return sum(_max_pd_genus_one_component(part) for part in _per_component(G))


def max_pd_genus_by_twist_width(G: RibbonGraph) -> int:
    return core.max_twist_width(delta_matroid_of(G))


def max_pd_genus_by_sweep(G: RibbonGraph) -> int:
    """Maximum of the partial-dual genus formula over every edge subset."""
    _require_enumerable(G)
    table = G.face_table
    full = G.all_edges
    base = 2 * G.component_count() + G.num_edges
    return max(base - table[a] - table[full & ~a] for a in range(full + 1))


def max_pd_genus(G: RibbonGraph) -> int:
    """Maximum Euler genus over all partial duals, computed three ways.

    Raises ``AssertionError`` if the quasi-tree formula, the twist-width
    formula and the exhaustive sweep disagree.
    """
    a = max_pd_genus_by_quasi_trees(G)
    b = max_pd_genus_by_twist_width(G)
    c = max_pd_genus_by_sweep(G)
    if not a == b == c:
        raise AssertionError(f"max partial-dual genus methods disagree: {a}, {b}, {c}")
    return a


def deficiency(G: RibbonGraph) -> int:
    """Minimum of f(A^c) over spanning quasi-trees A of a connected graph."""
    if G.component_count() != 1:
        raise Disconnected("deficiency is defined for connected ribbon graphs")
    _require_enumerable(G)
    table = G.face_table
    full = G.all_edges
    value = min(table[full & ~a] for a in quasi_tree_masks(G))
    check = G.num_edges + 1 - core.max_twist_width(delta_matroid_of(G))
    if value != check:
        raise AssertionError(f"deficiency {value} disagrees with e + 1 - max twist width = {check}")
    return value


def isomorphic(G: RibbonGraph, H: RibbonGraph) -> bool:
    """Edge-label-preserving equivalence of signed rotation systems.

    Allowed moves: relabel vertices, swap the two half-edges of an edge,
    and flip a vertex (reverse its rotation, toggling the twist of every
    edge end there).
    """
    if G.num_edges != H.num_edges or G.num_vertices != H.num_vertices:
        return False
    if sorted(map(len, G.vertices)) != sorted(map(len, H.vertices)):
        return False
    hv = [r for r in H.vertices if r]
    gv = [r for r in G.vertices if r]
    m = G.num_edges
    swap: list[Optional[int]] = [None] * m
    flip_h = [0] * len(H.vertices)
    used = [False] * len(gv)
    h_index = {r: i for i, r in enumerate(H.vertices)}
    h_vertex = H.vertex_of

    def twists_match() -> bool:
        for i in range(m):
            # H's ends after the swap sit at the G vertices we matched
            t = H.twisted[i] ^ flip_h[h_vertex[2 * i]] ^ flip_h[h_vertex[2 * i + 1]]
            if t != G.twisted[i]:
                return False
        return True

    def place(k: int) -> bool:
        if k == len(hv):
            return twists_match()
        rot = hv[k]
        for j, grot in enumerate(gv):
            if used[j] or len(grot) != len(rot):
                continue
            for flip in (0, 1):
                seq = grot if not flip else tuple(reversed(grot))
                for off in range(len(seq)):
                    assigned = []
                    ok = True
                    for i, h in enumerate(rot):
                        g = seq[(off + i) % len(seq)]
                        if g >> 1 != h >> 1:
                            ok = False
                            break
                        s = g ^ h
                        e = h >> 1
                        if swap[e] is None:
                            swap[e] = s
                            assigned.append(e)
                        elif swap[e] != s:
                            ok = False
                            break
                    if ok:
                        used[j] = True
                        flip_h[h_index[rot]] = flip
                        if place(k + 1):
                            return True
                        used[j] = False
                        flip_h[h_index[rot]] = 0
                    for e in assigned:
                        swap[e] = None
        return False

    return place(0)


__all__ = [
    "RibbonGraph",
    "BoundaryReport",
    "boundary_count",
    "components",
    "euler_genus",
    "quasi_trees",
    "quasi_tree_masks",
    "delta_matroid_of",
    "partial_dual",
    "geometric_dual",
    "pd_genus_formula",
    "max_pd_genus",
    "deficiency",
    "isomorphic",
]
