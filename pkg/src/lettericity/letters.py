"""Letter graphs: realization, verification and exact lettericity.

A decoder is a set of ordered letter pairs; in the letter graph of a word
``w``, positions ``i < j`` are adjacent iff ``(w[i], w[j])`` is in the
decoder.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

from .graph_core import Graph


class DecoderFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SearchGuardError(RuntimeError):
    """Graph too large for the exhaustive lettericity search."""


class NoRepresentationError(RuntimeError):
    """No representation exists within the requested alphabet bound."""


@dataclass(frozen=True)
class Decoder:
    alphabet: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __init__(self, alphabet: Iterable[str], pairs: Iterable[tuple[str, str]] = ()):
        alphabet = tuple(alphabet)
        pairs = frozenset((x, y) for x, y in pairs)
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"repeated letter in alphabet {alphabet}")
        letters = set(alphabet)
        for x, y in pairs:
            if x not in letters or y not in letters:
                raise ValueError(f"pair ({x}, {y}) uses a letter outside the alphabet")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "pairs", pairs)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.pairs

    def sorted_pairs(self) -> list[tuple[str, str]]:
        rank = {x: i for i, x in enumerate(self.alphabet)}
        return sorted(self.pairs, key=lambda p: (rank[p[0]], rank[p[1]]))


CYCLIC_DECODER = Decoder("abc", [("a", "b"), ("b", "c"), ("c", "a")])


@dataclass(frozen=True)
class LetterRepresentation:
    """A decoder, a word, and the vertex carried by each word position."""

    decoder: Decoder
    word: tuple[str, ...]
    vertex_of: tuple[int, ...] = field(default=())

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        vertex_of = tuple(self.vertex_of) if self.vertex_of else tuple(range(len(word)))
        object.__setattr__(self, "vertex_of", vertex_of)
        letters = set(self.decoder.alphabet)
        for x in word:
            if x not in letters:
                raise ValueError(f"letter {x!r} not in alphabet")
        if len(vertex_of) != len(word) or sorted(vertex_of) != list(range(len(word))):
            raise ValueError("vertex_of must be a bijection onto 0..n-1")

    @property
    def k(self) -> int:
        return len(self.decoder.alphabet)

    def letter_of(self) -> dict[int, str]:
        return {v: x for v, x in zip(self.vertex_of, self.word)}

    def word_string(self, sep: str = "") -> str:
        return sep.join(self.word)


@dataclass(frozen=True)
class StructuredPartition:
    """Parts flagged clique/independent plus a linear order of all vertices."""

    parts: tuple[frozenset[int], ...]
    cliques: tuple[bool, ...]
    order: tuple[int, ...]

    def __init__(self, parts: Iterable[Iterable[int]], cliques: Iterable[bool], order: Iterable[int]):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in parts))
        object.__setattr__(self, "cliques", tuple(bool(c) for c in cliques))
        object.__setattr__(self, "order", tuple(order))
        if len(self.parts) != len(self.cliques):
            raise ValueError("one flag per part required")


def realize(decoder: Decoder, word: Sequence[str]) -> Graph:
    letters = set(decoder.alphabet)
    for i, x in enumerate(word):
        if x not in letters:
            raise ValueError(f"unknown letter {x!r} at position {i}")
    pairs = decoder.pairs
    n = len(word)
    adj = [0] * n
    for i in range(n):
        wi = word[i]
        for j in range(i + 1, n):
            if (wi, word[j]) in pairs:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph.from_masks(adj)


def realize_representation(rep: LetterRepresentation) -> Graph:
    """The letter graph pushed through ``vertex_of``."""
    g = realize(rep.decoder, rep.word)
    inv = [0] * len(rep.word)
    for pos, v in enumerate(rep.vertex_of):
        inv[v] = pos
    return g.relabel(inv)


def verify_representation(g: Graph, rep: LetterRepresentation) -> bool:
    if len(rep.word) != g.n:
        raise ValueError(f"word has {len(rep.word)} letters, graph has {g.n} vertices")
    return realize_representation(rep) == g


def structure_from_representation(rep: LetterRepresentation) -> StructuredPartition:
    """Letter classes as parts and word order as ``L``."""
    classes = {x: [] for x in rep.decoder.alphabet}
    for v, x in zip(rep.vertex_of, rep.word):
        classes[x].append(v)
    used = [x for x in rep.decoder.alphabet if classes[x]]
    return StructuredPartition(
        [classes[x] for x in used],
        [(x, x) in rep.decoder.pairs for x in used],
        rep.vertex_of,
    )


def verify_theorem1_structure(g: Graph, sp: StructuredPartition) -> bool:
    """Check the clique/independent partition + linear order characterization.

    For every ordered pair of distinct parts the edges between them must be
    the order relation restricted to them, its inverse, everything, or nothing.
    """
    covered = [v for p in sp.parts for v in p]
    if sorted(covered) != list(range(g.n)):
        raise ValueError("parts must partition the vertex set")
    if sorted(sp.order) != list(range(g.n)):
        raise ValueError("order must list every vertex exactly once")
    for part, is_clique in zip(sp.parts, sp.cliques):
        if is_clique and not g.is_clique(part):
            return False
        if not is_clique and not g.is_independent(part):
            return False
    rank = {v: i for i, v in enumerate(sp.order)}
    for vi, vj in combinations(sp.parts, 2):
        forward = backward = full = empty = True
        for x in vi:
            for y in vj:
                e = g.has_edge(x, y)
                before = rank[x] < rank[y]
                forward &= e == before
                backward &= e != before
                full &= e
                empty &= not e
        if not (forward or backward or full or empty):
            return False
    return True


# -- exact lettericity -------------------------------------------------------

def letter_names(k: int) -> tuple[str, ...]:
    if k <= 26:
        return tuple(chr(ord("a") + i) for i in range(k))
    return tuple(f"x{i}" for i in range(k))


def _assignments(n: int, k: int) -> Iterator[list[int]]:
    """Surjections ``range(n) -> range(k)`` as restricted growth strings.

    Vertex 0 gets class 0 and each new class index is one more than the
    largest so far, which enumerates each set partition into ``k`` blocks once.
    """
    labels = [0] * n

    def grow(i: int, top: int) -> Iterator[list[int]]:
        if n - i < k - top - 1:
            return
        if i == n:
            if top == k - 1:
                yield labels
            return
        for c in range(min(top + 2, k)):
            labels[i] = c
            yield from grow(i + 1, max(top, c))

    if n == 0:
        if k == 0:
            yield labels
        return
    yield from grow(1, 0)


def _topological_order(n: int, succ: list[int]) -> Optional[list[int]]:
    """Least-first topological order of the DAG given by successor bitmasks."""
    indeg = [0] * n
    for u in range(n):
        m = succ[u]
        v = 0
        while m:
            if m & 1:
                indeg[v] += 1
            m >>= 1
            v += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        u = heapq.heappop(heap)
        out.append(u)
        m = succ[u]
        v = 0
        while m:
            if m & 1:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
            m >>= 1
            v += 1
    return out if len(out) == n else None


def _try_assignment(g: Graph, labels: Sequence[int], k: int) -> Optional[LetterRepresentation]:
    n = g.n
    adj = g.masks
    members = [0] * k
    for v, c in enumerate(labels):
        members[c] |= 1 << v
    self_pair = []
    for c in range(k):
        m = members[c]
        size = bin(m).count("1")
        inner = sum(bin(adj[v] & m).count("1") for v in range(n) if m >> v & 1)
        if inner == 0:
            self_pair.append(False)
        elif inner == size * (size - 1):
            self_pair.append(True)
        else:
            return None
    # Per class pair: homogeneous (no order constraint) or a chain that must be
    # oriented one way or the other.
    fixed: list[tuple[int, int, str]] = []
    mixed: list[tuple[int, int]] = []
    for c, d in combinations(range(k), 2):
        cross = 0
        for v in range(n):
            if members[c] >> v & 1:
                cross += bin(adj[v] & members[d]).count("1")
        full = bin(members[c]).count("1") * bin(members[d]).count("1")
        if cross == 0:
            fixed.append((c, d, "none"))
        elif cross == full:
            fixed.append((c, d, "both"))
        else:
            mixed.append((c, d))
    for orient in product((0, 1), repeat=len(mixed)):
        succ = [0] * n
        for (c, d), o in zip(mixed, orient):
            # o == 0: pair (c, d) so x in c, y in d adjacent iff x before y.
            for x in range(n):
                if not members[c] >> x & 1:
                    continue
                for y in range(n):
                    if not members[d] >> y & 1:
                        continue
                    e = adj[x] >> y & 1
                    if (o == 0) == bool(e):
                        succ[x] |= 1 << y
                    else:
                        succ[y] |= 1 << x
        order = _topological_order(n, succ)
        if order is None:
            continue
        names = letter_names(k)
        pairs = [(names[c], names[c]) for c in range(k) if self_pair[c]]
        for c, d, kind in fixed:
            if kind == "both":
                pairs += [(names[c], names[d]), (names[d], names[c])]
        for (c, d), o in zip(mixed, orient):
            pairs.append((names[c], names[d]) if o == 0 else (names[d], names[c]))
        word = tuple(names[labels[v]] for v in order)
        return _canonical_letters(LetterRepresentation(Decoder(names, pairs), word, tuple(order)))
    return None


def _canonical_letters(rep: LetterRepresentation) -> LetterRepresentation:
    """Rename letters so first occurrences in the word follow alphabet order."""
    names = rep.decoder.alphabet
    first = []
    for x in rep.word:
        if x not in first:
            first.append(x)
    rename = {old: new for old, new in zip(first, names)}
    return LetterRepresentation(
        Decoder(names, [(rename[x], rename[y]) for x, y in rep.decoder.pairs]),
        tuple(rename[x] for x in rep.word),
        rep.vertex_of,
    )


DEFAULT_MAX_VERTICES = 10


def lettericity_exact(
    g: Graph, k_max: Optional[int] = None, max_vertices: int = DEFAULT_MAX_VERTICES
) -> tuple[int, LetterRepresentation]:
    """Smallest alphabet size admitting a representation, with a witness.

    For each ``k`` every partition of the vertices into ``k`` clique or
    independent classes is tried.  Class pairs with all or no edges get both
    or neither cross pair; every other class pair must be oriented, and an
    orientation is realizable iff the induced precedence constraints on the
    vertices are acyclic.  The empty graph gets lettericity 0 by convention.
    """
    n = g.n
    if n > max_vertices:
        raise SearchGuardError(f"{n} vertices exceeds the search guard of {max_vertices}")
    if k_max is None:
        k_max = n
    if n == 0:
        return 0, LetterRepresentation(Decoder("a"), (), ())
    for k in range(1, min(k_max, n) + 1):
        for labels in _assignments(n, k):
            rep = _try_assignment(g, labels, k)
            if rep is not None:
                assert verify_representation(g, rep)
                return k, rep
    raise NoRepresentationError(f"no representation with at most {k_max} letters")


# -- text format -------------------------------------------------------------

def _split_letters(text: str) -> list[str]:
    text = text.strip()
    return text.split() if " " in text or "\t" in text else list(text)


def parse_representation(text: str) -> LetterRepresentation:
    """Parse ``alphabet``/``pairs``/``word`` lines (optionally ``vertices``).

    Single-character letters may be run together (``alphabet abc``, pairs
    ``ab bc ca``); multi-character letters are whitespace separated with
    pairs written ``x:y``.
    """
    fields: dict[str, tuple[int, str]] = {}
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        key = key.rstrip(":").lower()
        if key not in ("alphabet", "pairs", "word", "vertices"):
            raise DecoderFormatError(f"unknown field {key!r}", i)
        if key in fields:
            raise DecoderFormatError(f"repeated field {key!r}", i)
        fields[key] = (i, value.strip())
    for key in ("alphabet", "word"):
        if key not in fields:
            raise DecoderFormatError(f"missing field {key!r}", len(text.splitlines()) + 1)
    line, alpha_text = fields["alphabet"]
    alphabet = _split_letters(alpha_text)
    pairs = []
    if "pairs" in fields:
        line, pair_text = fields["pairs"]
        for tok in pair_text.split():
            if ":" in tok:
                x, _, y = tok.partition(":")
            elif len(tok) == 2:
                x, y = tok[0], tok[1]
            else:
                raise DecoderFormatError(f"malformed pair token {tok!r}", line)
            pairs.append((x, y))
    try:
        decoder = Decoder(alphabet, pairs)
    except ValueError as exc:
        raise DecoderFormatError(str(exc), fields.get("pairs", fields["alphabet"])[0]) from None
    line, word_text = fields["word"]
    word = _split_letters(word_text) if word_text else []
    vertex_of: tuple[int, ...] = ()
    if "vertices" in fields:
        vline, vtext = fields["vertices"]
        try:
            vertex_of = tuple(int(t) for t in vtext.replace(",", " ").split())
        except ValueError:
            raise DecoderFormatError("vertices must be integers", vline) from None
        line = vline
    try:
        return LetterRepresentation(decoder, tuple(word), vertex_of)
    except ValueError as exc:
        raise DecoderFormatError(str(exc), line) from None


def emit_representation(rep: LetterRepresentation, with_vertices: bool = True) -> str:
    compact = all(len(x) == 1 for x in rep.decoder.alphabet)
    if compact:
        alphabet = "".join(rep.decoder.alphabet)
        pairs = " ".join(x + y for x, y in rep.decoder.sorted_pairs())
        word = "".join(rep.word)
    else:
        alphabet = " ".join(rep.decoder.alphabet)
        pairs = " ".join(f"{x}:{y}" for x, y in rep.decoder.sorted_pairs())
        word = " ".join(rep.word)
    lines = [f"alphabet {alphabet}", f"pairs {pairs}".rstrip(), f"word {word}".rstrip()]
    if with_vertices:
        lines.append(("vertices " + " ".join(map(str, rep.vertex_of))).rstrip())
    return "\n".join(lines) + "\n"
