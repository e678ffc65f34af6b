"""3-letter graphs over the cyclic decoder ``{(a,b), (b,c), (c,a)}``.

Such graphs are exactly the *nice* graphs: a partition into independent
sets ``A, B, C`` with every pair inducing a 2K2-free bipartite graph and
no transversal triangle or anti-triangle.  This module checks niceness,
orders the parts, builds the word, recognizes the class from scratch,
and carries the forbidden-subgraph oracle (K3, 2K2+K1, C5+K1, C6).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .graph_core import Graph, _bits, contains_induced, is_chain_bipartite_masks, twin_reduce
from .letters import CYCLIC_DECODER, LetterRepresentation, verify_representation

FORBIDDEN = ("k3", "2k2+k1", "c5+k1", "c6")


class InfeasibleWindowError(RuntimeError):
    """A C vertex has no legal slot; the input partition was not nice."""


class ConsistencyError(RuntimeError):
    """Recognition and the forbidden-subgraph oracle disagree."""


@dataclass(frozen=True)
class NicePartition:
    """Three vertex classes, each as a tuple in its chosen linear order."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]

    def __init__(self, A: Iterable[int], B: Iterable[int], C: Iterable[int]):
        object.__setattr__(self, "A", tuple(A))
        object.__setattr__(self, "B", tuple(B))
        object.__setattr__(self, "C", tuple(C))

    def masks(self) -> tuple[int, int, int]:
        return tuple(_mask(p) for p in (self.A, self.B, self.C))

    def check_covers(self, n: int) -> None:
        allv = self.A + self.B + self.C
        if sorted(allv) != list(range(n)):
            raise ValueError("A, B, C must partition the vertex set")


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def is_nice_masks(adj: Sequence[int], a: int, b: int, c: int) -> bool:
    """Niceness on bitmask classes (no partition check)."""
    for part in (a, b, c):
        for v in _bits(part):
            if adj[v] & part:
                return False
    for x, y in ((a, b), (b, c), (c, a)):
        if not is_chain_bipartite_masks(adj, x, y):
            return False
    if not (a and b and c):
        return True
    for u in _bits(a):
        au = adj[u]
        for v in _bits(b):
            if au >> v & 1:
                if c & au & adj[v]:
                    return False
            elif c & ~au & ~adj[v]:
                return False
    return True


def is_nice(g: Graph, p: NicePartition) -> bool:
    p.check_covers(g.n)
    return is_nice_masks(g.masks, *p.masks())


def _nbr_key(adj: Sequence[int], v: int, mask: int) -> int:
    return bin(adj[v] & mask).count("1")


def proper_orderings(g: Graph, p: NicePartition) -> NicePartition:
    """Order the classes so all three bipartite pieces are properly ordered.

    ``A`` decreasing and ``B`` increasing in ``G[A∪B]``, ``B`` decreasing
    and ``C`` increasing in ``G[B∪C]``, ``C`` decreasing and ``A``
    increasing in ``G[C∪A]``.  Within a class, ties on the primary
    neighbourhood are broken by the neighbourhood in the remaining class,
    then by vertex id.  Neighbourhoods are nested in a nice graph, so
    comparing their sizes orders them by inclusion.
    """
    if not is_nice(g, p):
        raise ValueError("partition is not nice")
    adj = g.masks
    am, bm, cm = p.masks()
    A = sorted(p.A, key=lambda v: (-_nbr_key(adj, v, bm), _nbr_key(adj, v, cm), v))
    B = sorted(p.B, key=lambda v: (_nbr_key(adj, v, am), -_nbr_key(adj, v, cm), v))
    C = sorted(p.C, key=lambda v: (_nbr_key(adj, v, bm), -_nbr_key(adj, v, am), v))
    out = NicePartition(A, B, C)
    assert is_properly_ordered(g, out)
    return out


def _is_monotone(adj: Sequence[int], order: Sequence[int], other: int, increasing: bool) -> bool:
    for x, y in zip(order, order[1:]):
        nx, ny = adj[x] & other, adj[y] & other
        small, big = (nx, ny) if increasing else (ny, nx)
        if small & ~big:
            return False
    return True


def is_properly_ordered(g: Graph, p: NicePartition) -> bool:
    adj = g.masks
    am, bm, cm = p.masks()
    return (
        _is_monotone(adj, p.A, bm, increasing=False)
        and _is_monotone(adj, p.B, am, increasing=True)
        and _is_monotone(adj, p.B, cm, increasing=False)
        and _is_monotone(adj, p.C, bm, increasing=True)
        and _is_monotone(adj, p.C, am, increasing=False)
        and _is_monotone(adj, p.A, cm, increasing=True)
    )


def build_word(g: Graph, p: NicePartition) -> LetterRepresentation:
    """Word over the cyclic decoder for a properly ordered nice partition.

    ``A`` and ``B`` are laid out first: each ``a`` goes after exactly its
    ``b`` non-neighbours (all of which precede its neighbours in ``B``'s
    order).  Each ``c`` then goes into the window after its last ``a``
    non-neighbour and last ``b`` neighbour, and before its first ``a``
    neighbour and first ``b`` non-neighbour.
    """
    adj = g.masks
    A, B, C = p.A, p.B, p.C
    # slots[j] holds the a-vertices placed right before B[j]; slots[len(B)] is the tail.
    slots: list[list[int]] = [[] for _ in range(len(B) + 1)]
    for a in A:
        nbrs = [bool(adj[a] >> b & 1) for b in B]
        gap = nbrs.count(False)
        if any(nbrs[:gap]) or not all(nbrs[gap:]):
            raise InfeasibleWindowError(f"b-neighbours of {a} are not a suffix of B")
        slots[gap].append(a)
    ab: list[tuple[str, int]] = []
    for j, b in enumerate(B):
        ab += [("a", a) for a in slots[j]]
        ab.append(("b", b))
    ab += [("a", a) for a in slots[len(B)]]
    # The a-vertices must come out in A's order (rule R1) and each b must see
    # exactly its neighbours before it (rule R2).
    assert [v for x, v in ab if x == "a"] == list(A)
    seen_a = 0
    for x, v in ab:
        if x == "a":
            seen_a |= 1 << v
        elif adj[v] & _mask(A) != seen_a:
            raise InfeasibleWindowError(f"rules R1 and R2 disagree at b-vertex {v}")

    pos = {v: i for i, (_, v) in enumerate(ab)}
    inserts: list[list[int]] = [[] for _ in range(len(ab) + 1)]
    for c in C:
        lo, hi = -1, len(ab)
        for x, v in ab:
            e = bool(adj[c] >> v & 1)
            if x == "a":
                # (c, a) in the decoder: neighbours come after c.
                if e:
                    hi = min(hi, pos[v])
                else:
                    lo = max(lo, pos[v])
            else:
                # (b, c) in the decoder: neighbours come before c.
                if e:
                    lo = max(lo, pos[v])
                else:
                    hi = min(hi, pos[v])
        if lo >= hi:
            raise InfeasibleWindowError(f"no slot for c-vertex {c}")
        inserts[lo + 1].append(c)
    word: list[str] = []
    verts: list[int] = []
    for i in range(len(ab) + 1):
        for c in inserts[i]:
            word.append("c")
            verts.append(c)
        if i < len(ab):
            x, v = ab[i]
            word.append(x)
            verts.append(v)
    return LetterRepresentation(CYCLIC_DECODER, tuple(word), tuple(verts))


def _candidate_partitions(g: Graph):
    """Candidate (A, B, C) bitmasks from the first-b and first-c cases.

    Yields ``(case, u, v, masks)`` in lexicographic order of ``(u, v)``,
    first-b case first.
    """
    n = g.n
    adj = g.masks
    full = (1 << n) - 1
    for u in range(n):
        for v in range(n):
            if u == v or not adj[u] >> v & 1:
                continue
            # u is the first letter (b), v the last (c).
            if adj[u] & adj[v]:
                continue
            rest = full & ~(1 << u) & ~(1 << v)
            nu, nv = adj[u], adj[v]
            a = rest & ~nu & ~nv
            b = (rest & ~nu & nv) | 1 << u
            c = (rest & nu & ~nv) | 1 << v
            yield "b", u, v, (a, b, c)
    for u in range(n):
        for v in range(n):
            if u == v or adj[u] >> v & 1:
                continue
            # u is the first letter (c), v the last (c); the order matters for A vs B.
            if adj[u] & adj[v]:
                continue
            rest = full & ~(1 << u) & ~(1 << v)
            nu, nv = adj[u], adj[v]
            a = rest & nu & ~nv
            b = rest & ~nu & nv
            c = (rest & ~nu & ~nv) | 1 << u | 1 << v
            yield "c", u, v, (a, b, c)


def _expand_twins(rep: LetterRepresentation, classes: list[list[int]]) -> LetterRepresentation:
    word: list[str] = []
    verts: list[int] = []
    for x, r in zip(rep.word, rep.vertex_of):
        for v in classes[r]:
            word.append(x)
            verts.append(v)
    return LetterRepresentation(rep.decoder, tuple(word), tuple(verts))


def find_nice_partition(g: Graph) -> Optional[NicePartition]:
    """Nice partition of a twin-free graph via the first-letter case analysis."""
    n = g.n
    if n <= 1:
        return NicePartition(range(n), (), ())
    adj = g.masks
    for _case, _u, _v, (a, b, c) in _candidate_partitions(g):
        if is_nice_masks(adj, a, b, c):
            return NicePartition(_bits(a), _bits(b), _bits(c))
    return None


def recognize_cyclic3(g: Graph) -> Optional[LetterRepresentation]:
    """A representation over the cyclic decoder, or ``None`` if none exists."""
    reduced, classes = twin_reduce(g)
    part = find_nice_partition(reduced)
    if part is None:
        if not mfis_check(g):
            raise ConsistencyError("no candidate partition is nice, yet the graph is MFIS-free")
        return None
    ordered = proper_orderings(reduced, part)
    rep = _expand_twins(build_word(reduced, ordered), classes)
    if not verify_representation(g, rep):
        raise ConsistencyError("constructed word does not realize the input graph")
    return rep


def mfis_check(g: Graph) -> list[tuple[str, tuple[int, ...]]]:
    """Every forbidden pattern present in ``g`` with its least witness."""
    out = []
    for name in FORBIDDEN:
        w = contains_induced(g, name)
        if w is not None:
            out.append((name, w))
    return out


def brute_force_nice(g: Graph) -> Optional[NicePartition]:
    """Search all proper 3-colourings for a nice partition (oracle only)."""
    n = g.n
    adj = g.masks
    colour = [0] * n
    parts = [0, 0, 0]

    def assign(i: int) -> bool:
        if i == n:
            return is_nice_masks(adj, *parts)
        for c in range(3):
            if adj[i] & parts[c]:
                continue
            parts[c] |= 1 << i
            colour[i] = c
            if assign(i + 1):
                return True
            parts[c] &= ~(1 << i)
        return False

    if assign(0):
        return NicePartition(_bits(parts[0]), _bits(parts[1]), _bits(parts[2]))
    return None


def representation_partition(rep: LetterRepresentation) -> NicePartition:
    """The letter classes of a cyclic-decoder representation, in word order."""
    cls = {"a": [], "b": [], "c": []}
    for x, v in zip(rep.word, rep.vertex_of):
        cls[x].append(v)
    return NicePartition(cls["a"], cls["b"], cls["c"])


def all_colourings(n: int):
    """Every map of ``range(n)`` to three classes, as bitmask triples."""
    for cols in product(range(3), repeat=n):
        parts = [0, 0, 0]
        for v, c in enumerate(cols):
            parts[c] |= 1 << v
        yield tuple(parts)
