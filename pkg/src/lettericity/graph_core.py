"""Finite simple graphs on vertices ``0..n-1`` and the small-pattern machinery.

Adjacency is stored as one integer bitmask per vertex, which keeps the
exhaustive sweeps over all graphs on six or seven vertices cheap.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional, Sequence


class GraphFormatError(ValueError):
    """Malformed edge-list document; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Graph:
    """Immutable simple undirected graph with vertex set ``range(n)``."""

    __slots__ = ("_n", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        """Build from per-vertex neighbour bitmasks (assumed symmetric, loop-free)."""
        g = cls.__new__(cls)
        g._n = len(masks)
        g._adj = tuple(masks)
        g._hash = None
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> tuple[int, ...]:
        return self._adj

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edge_list())

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        out = []
        for u in range(self._n):
            m = self._adj[u] >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    out.append((u, v))
                m >>= 1
                v += 1
        return out

    @property
    def m(self) -> int:
        return sum(bin(a).count("1") for a in self._adj) // 2

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(_bits(self._adj[v]))

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self._adj[v]).count("1")

    def complement(self) -> "Graph":
        full = (1 << self._n) - 1
        return Graph.from_masks([full & ~a & ~(1 << v) for v, a in enumerate(self._adj)])

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is old vertex ``order[i]``."""
        pos = {old: new for new, old in enumerate(order)}
        return Graph(self._n, ((pos[u], pos[v]) for u, v in self.edge_list()))

    def is_independent(self, vs: Iterable[int]) -> bool:
        mask = _to_mask(vs)
        return all(self._adj[v] & mask == 0 for v in _bits(mask))

    def is_clique(self, vs: Iterable[int]) -> bool:
        mask = _to_mask(vs)
        return all((self._adj[v] | 1 << v) & mask == mask for v in _bits(mask))

    def is_bipartite(self) -> bool:
        return bipartition(self) is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({self._n}, {self.edge_list()!r})"


def _bits(mask: int) -> Iterator[int]:
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def _to_mask(vs: Iterable[int]) -> int:
    mask = 0
    for v in vs:
        mask |= 1 << v
    return mask


# -- edge-list codec ---------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the ``"n m"`` header + ``m`` edge lines format.

    Blank lines are ignored.  Every defect is reported with its line number.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise GraphFormatError("missing header 'n m'", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(_is_int(p) for p in parts):
        raise GraphFormatError(f"malformed header {header!r}, expected 'n m'", lineno)
    n, m = int(parts[0]), int(parts[1])
    if n < 0 or m < 0:
        raise GraphFormatError("negative vertex or edge count", lineno)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}", where)
    seen = set()
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2 or not all(_is_int(p) for p in parts):
            raise GraphFormatError(f"malformed edge line {ln!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def emit_graph(g: Graph) -> str:
    edges = g.edge_list()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _is_int(s: str) -> bool:
    return s.lstrip("-").isdigit()


# -- constructions -----------------------------------------------------------

def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """``G[S]`` relabelled by rank in ``S``."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph on {g.n} vertices")
    return _induced(g.masks, verts)


def _induced(adj: Sequence[int], verts: Sequence[int]) -> Graph:
    masks = []
    for v in verts:
        a = adj[v]
        m = 0
        for j, w in enumerate(verts):
            if a >> w & 1:
                m |= 1 << j
        masks.append(m)
    return Graph.from_masks(masks)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph.from_masks(list(g.masks) + [a << shift for a in h.masks])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return Graph(n)


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph(p + q, ((i, p + j) for i in range(p) for j in range(q)))


def chain_graph_z(n: int) -> Graph:
    """``Z_n``: vertex ``2i`` is ``a_{i+1}``, vertex ``2i+1`` is ``b_{i+1}``.

    This is the letter graph of ``(ab)^n`` under the decoder ``{(a, b)}``,
    so ``a_i b_j`` is an edge iff ``i <= j``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(2 * n, ((2 * i, 2 * j + 1) for i in range(n) for j in range(i, n)))


def threshold_universal(n: int) -> Graph:
    """``Z_n`` with its a-side turned into a clique."""
    z = chain_graph_z(n)
    extra = combinations(range(0, 2 * n, 2), 2)
    return Graph(2 * n, list(z.edge_list()) + list(extra))


GENERATORS = {
    "zn": chain_graph_z,
    "threshold_universal": threshold_universal,
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "edgeless": edgeless,
}


def generate(family: str, n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    try:
        build = GENERATORS[family.lower()]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(GENERATORS)}") from None
    return build(n)


# -- small patterns ----------------------------------------------------------

def _pattern_graphs() -> dict[str, Graph]:
    k1 = edgeless(1)
    k2 = complete(2)
    two_k2 = disjoint_union(k2, k2)
    return {
        "k3": complete(3),
        "2k2": two_k2,
        "c4": cycle(4),
        "p4": path(4),
        "c5": cycle(5),
        "c6": cycle(6),
        "2k2+k1": disjoint_union(two_k2, k1),
        "c5+k1": disjoint_union(cycle(5), k1),
        "k2+k1": disjoint_union(k2, k1),
    }


PATTERNS: dict[str, Graph] = _pattern_graphs()


def pattern_graph(name: str) -> Graph:
    try:
        return PATTERNS[name.lower().replace(" ", "")]
    except KeyError:
        raise ValueError(f"unknown pattern {name!r}; choose from {sorted(PATTERNS)}") from None


def _pair_index(k: int) -> dict[tuple[int, int], int]:
    return {pair: i for i, pair in enumerate(combinations(range(k), 2))}


def _signature(adj: Sequence[int], verts: Sequence[int], pairs: dict) -> int:
    sig = 0
    for (i, j), bit in pairs.items():
        if adj[verts[i]] >> verts[j] & 1:
            sig |= 1 << bit
    return sig


class _PatternIndex:
    """All labelled copies of a pattern on ``0..k-1`` as edge-signature ints."""

    def __init__(self, p: Graph):
        k = p.n
        self.k = k
        self.pairs = _pair_index(k)
        self.m = p.m
        self.degrees = sorted(p.degree(v) for v in range(k))
        self.copies = frozenset(
            _signature(p.relabel(perm).masks, range(k), self.pairs) for perm in permutations(range(k))
        )


_INDEX_CACHE: dict[str, _PatternIndex] = {}


def _index(name: str) -> _PatternIndex:
    key = name.lower().replace(" ", "")
    if key not in _INDEX_CACHE:
        _INDEX_CACHE[key] = _PatternIndex(pattern_graph(key))
    return _INDEX_CACHE[key]


def contains_induced(g: Graph, pattern: str) -> Optional[tuple[int, ...]]:
    """Lexicographically least vertex set inducing ``pattern``, or ``None``.

    Exhaustive scan over all subsets of the pattern's size; subsets whose
    degree sequence inside ``g`` cannot match are skipped before the
    signature lookup.
    """
    idx = _index(pattern)
    k = idx.k
    if k > g.n:
        return None
    adj = g.masks
    for verts in combinations(range(g.n), k):
        sub = 0
        for v in verts:
            sub |= 1 << v
        degs = sorted(bin(adj[v] & sub).count("1") for v in verts)
        if degs != idx.degrees:
            continue
        if _signature(adj, verts, idx.pairs) in idx.copies:
            return verts
    return None


def contains_induced_backtrack(g: Graph, pattern: str) -> Optional[tuple[int, ...]]:
    """Independent second route: grow an injective, adjacency-preserving map.

    Returns the least sorted image among all embeddings, so the answer is
    comparable with :func:`contains_induced`.
    """
    p = pattern_graph(pattern)
    k = p.n
    if k > g.n:
        return None
    best: Optional[tuple[int, ...]] = None
    image: list[int] = []

    def extend() -> None:
        nonlocal best
        i = len(image)
        if i == k:
            cand = tuple(sorted(image))
            if best is None or cand < best:
                best = cand
            return
        for v in range(g.n):
            if v in image:
                continue
            if all(g.has_edge(v, image[j]) == p.has_edge(i, j) for j in range(i)):
                image.append(v)
                extend()
                image.pop()

    extend()
    return best


# -- twins -------------------------------------------------------------------

def twin_classes(g: Graph) -> list[list[int]]:
    """Classes of vertices with equal open neighbourhoods, in order of least member."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.masks[v], []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def twin_reduce(g: Graph) -> tuple[Graph, list[list[int]]]:
    """Keep the least vertex of every twin class.

    Returns the reduced graph and the class list; reduced vertex ``i``
    stands for ``classes[i]``, whose first entry is the representative.
    """
    classes = twin_classes(g)
    reps = [c[0] for c in classes]
    return _induced(g.masks, reps), classes


# -- chain / threshold -------------------------------------------------------

def bipartition(g: Graph) -> Optional[tuple[list[int], list[int]]]:
    """2-colouring with each component's least vertex on side 0, or ``None``."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in _bits(g.masks[u]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return None
    return [v for v in range(g.n) if colour[v] == 0], [v for v in range(g.n) if colour[v] == 1]


def is_chain_graph(g: Graph) -> tuple[bool, Optional[tuple[list[int], list[int]]]]:
    """Chain-graph test with a witness bipartition.

    On success each side is returned sorted by neighbourhood inclusion,
    largest neighbourhood first on the first side and smallest first on
    the second (ties by vertex id).
    """
    bp = bipartition(g)
    if bp is None:
        return False, None
    left, right = bp
    # Isolated vertices may sit on either side; the chain property is
    # unaffected, so keep the colouring as found.
    for side in (left, right):
        nbrs = sorted((g.masks[v] for v in side), key=lambda m: bin(m).count("1"))
        for small, big in zip(nbrs, nbrs[1:]):
            if small & ~big:
                return False, None
    left = sorted(left, key=lambda v: (-g.degree(v), v))
    right = sorted(right, key=lambda v: (g.degree(v), v))
    return True, (left, right)


def is_threshold(g: Graph) -> bool:
    return not any(contains_induced(g, p) for p in ("p4", "c4", "2k2"))


def is_chain_bipartite_masks(adj: Sequence[int], x_mask: int, y_mask: int) -> bool:
    """True iff the neighbourhoods of ``X`` into ``Y`` form a chain under inclusion."""
    nbrs = sorted((adj[v] & y_mask for v in _bits(x_mask)), key=lambda m: bin(m).count("1"))
    for small, big in zip(nbrs, nbrs[1:]):
        if small & ~big:
            return False
    return True


# -- enumeration helpers -----------------------------------------------------

def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices, ordered by edge-subset bitmask."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield graph_from_code(n, code, pairs)


def graph_from_code(n: int, code: int, pairs: Optional[list[tuple[int, int]]] = None) -> Graph:
    if pairs is None:
        pairs = list(combinations(range(n), 2))
    adj = [0] * n
    for bit, (u, v) in enumerate(pairs):
        if code >> bit & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph.from_masks(adj)


def random_graph(n: int, p: float, rng) -> Graph:
    return Graph(n, ((u, v) for u, v in combinations(range(n), 2) if rng.random() < p))


def canonical_form(g: Graph) -> tuple[int, ...]:
    """Brute-force canonical form (minimum adjacency tuple over relabelings).

    Only meant for the tiny graphs used in oracles.
    """
    best = None
    for perm in permutations(range(g.n)):
        masks = g.relabel(perm).masks
        if best is None or masks < best:
            best = masks
    return best if best is not None else ()


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test, pruned by degree."""
    if g.n != h.n or g.m != h.m:
        return False
    gdeg = [g.degree(v) for v in g.vertices()]
    hdeg = [h.degree(v) for v in h.vertices()]
    if sorted(gdeg) != sorted(hdeg):
        return False
    order = sorted(g.vertices(), key=lambda v: -gdeg[v])
    image: dict[int, int] = {}
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        v = order[i]
        for w in range(h.n):
            if used >> w & 1 or hdeg[w] != gdeg[v]:
                continue
            if all(g.has_edge(v, x) == h.has_edge(w, y) for x, y in image.items()):
                image[v] = w
                used |= 1 << w
                if extend(i + 1):
                    return True
                del image[v]
                used &= ~(1 << w)
        return False

    return extend(0)
