"""Neighbourhood diversity, clique-width expressions and the lettericity sandwich.

Expression syntax (whitespace ignored)::

    expr   := term ("+" term)*                 union, left associative
    term   := join "(" expr ")" | rename "(" expr ")" | create | "(" expr ")"
    join   := "e" INT "," INT                  also \\eta_{i,j} or η_{i,j}
    rename := "r" INT "->" INT                 also \\rho_{i\\to j} or ρ_{i→j}
    create := ["c"] INT "(" NAME ")"           vertex NAME with label INT

``\\oplus`` and ``⊕`` are accepted for ``+``, so the usual typeset form
of an expression can be pasted in directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .graph_core import Graph
from .letters import Decoder, LetterRepresentation, letter_names, verify_representation


class ExpressionError(ValueError):
    """Malformed or ill-formed clique-width expression."""


# -- neighbourhood diversity -------------------------------------------------

@dataclass(frozen=True)
class SimilarityPartition:
    classes: tuple[tuple[int, ...], ...]
    cliques: tuple[bool, ...]

    @property
    def diversity(self) -> int:
        return len(self.classes)


def similar(g: Graph, x: int, y: int) -> bool:
    """No third vertex is adjacent to exactly one of ``x`` and ``y``."""
    others = ~((1 << x) | (1 << y))
    return (g.masks[x] ^ g.masks[y]) & others == 0


def neighbourhood_diversity(g: Graph) -> SimilarityPartition:
    classes: list[list[int]] = []
    for v in g.vertices():
        for cls in classes:
            if similar(g, cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    cliques = []
    for cls in classes:
        if len(cls) > 1 and g.is_clique(cls):
            cliques.append(True)
        elif g.is_independent(cls):
            cliques.append(False)
        else:
            raise AssertionError(f"similarity class {cls} is neither a clique nor independent")
    for i, ci in enumerate(classes):
        for cj in classes[i + 1 :]:
            seen = {g.has_edge(x, y) for x in ci for y in cj}
            assert len(seen) == 1, "adjacency between similarity classes is not homogeneous"
    return SimilarityPartition(tuple(tuple(c) for c in classes), tuple(cliques))


def nd_representation(g: Graph) -> LetterRepresentation:
    """One letter per similarity class; any word with these letter counts works."""
    sp = neighbourhood_diversity(g)
    k = sp.diversity
    if k == 0:
        return LetterRepresentation(Decoder("a"), (), ())
    names = letter_names(k)
    pairs = [(names[i], names[i]) for i in range(k) if sp.cliques[i]]
    for i in range(k):
        for j in range(i + 1, k):
            if g.has_edge(sp.classes[i][0], sp.classes[j][0]):
                pairs += [(names[i], names[j]), (names[j], names[i])]
    word = tuple(names[i] for i, cls in enumerate(sp.classes) for _ in cls)
    verts = tuple(v for cls in sp.classes for v in cls)
    rep = LetterRepresentation(Decoder(names, pairs), word, verts)
    assert verify_representation(g, rep)
    return rep


# -- clique-width expressions ------------------------------------------------

@dataclass(frozen=True)
class Create:
    label: int
    name: str


@dataclass(frozen=True)
class Union_:
    left: "CwExpression"
    right: "CwExpression"


@dataclass(frozen=True)
class Join:
    i: int
    j: int
    child: "CwExpression"

    def __post_init__(self):
        if self.i == self.j:
            raise ExpressionError(f"join needs two distinct labels, got {self.i},{self.j}")


@dataclass(frozen=True)
class Rename:
    src: int
    dst: int
    child: "CwExpression"


CwExpression = Union[Create, Union_, Join, Rename]


@dataclass(frozen=True)
class Evaluation:
    """Result of evaluating an expression.

    Vertices are numbered by natural sort order of their names; ``labels``
    holds each vertex's final label.
    """

    graph: Graph
    names: tuple[str, ...]
    labels: tuple[int, ...]

    def vertex(self, name: str) -> int:
        return self.names.index(name)


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def labels_used(e: CwExpression) -> set[int]:
    out: set[int] = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Create):
            out.add(x.label)
        elif isinstance(x, Union_):
            stack += [x.left, x.right]
        elif isinstance(x, Join):
            out |= {x.i, x.j}
            stack.append(x.child)
        else:
            out |= {x.src, x.dst}
            stack.append(x.child)
    return out


def eval_expression(e: CwExpression, labels: Optional[Iterable[int]] = None) -> Evaluation:
    """Build the labelled graph bottom up.

    ``labels``, when given, is the declared label set; any other label is an
    error.
    """
    declared = None if labels is None else set(labels)
    if declared is not None:
        extra = labels_used(e) - declared
        if extra:
            raise ExpressionError(f"undeclared labels {sorted(extra)}")

    names: list[str] = []
    label_of: dict[str, int] = {}
    edges: set[tuple[str, str]] = set()

    def go(x: CwExpression) -> list[str]:
        if isinstance(x, Create):
            if x.name in label_of:
                raise ExpressionError(f"vertex {x.name!r} created twice")
            label_of[x.name] = x.label
            names.append(x.name)
            return [x.name]
        if isinstance(x, Union_):
            return go(x.left) + go(x.right)
        verts = go(x.child)
        if isinstance(x, Join):
            li = [v for v in verts if label_of[v] == x.i]
            lj = [v for v in verts if label_of[v] == x.j]
            edges.update((p, q) for p in li for q in lj)
        else:
            for v in verts:
                if label_of[v] == x.src:
                    label_of[v] = x.dst
        return verts

    go(e)
    order = sorted(names, key=_natural_key)
    idx = {name: i for i, name in enumerate(order)}
    g = Graph(len(order), {tuple(sorted((idx[p], idx[q]))) for p, q in edges})
    return Evaluation(g, tuple(order), tuple(label_of[v] for v in order))


def lcw_expression_from_letters(rep: LetterRepresentation, target: Optional[Graph] = None) -> CwExpression:
    """Caterpillar expression with ``k + 1`` labels for a ``k``-letter word.

    Label 0 is the fresh label, letter ``alphabet[i]`` uses label ``i + 1``.
    Each new vertex is created with label 0, joined to every earlier letter
    ``x`` with ``(x, w_i)`` in the decoder, then renamed to its own letter.
    Vertices are named by their ids in the represented graph.
    """
    if target is not None and not verify_representation(target, rep):
        raise ValueError("representation does not realize the target graph")
    if not rep.word:
        raise ValueError("the empty graph has no expression")
    label = {x: i + 1 for i, x in enumerate(rep.decoder.alphabet)}
    expr: Optional[CwExpression] = None
    present: set[str] = set()
    for x, v in zip(rep.word, rep.vertex_of):
        node: CwExpression = Create(0, str(v))
        expr = node if expr is None else Union_(node, expr)
        for y in rep.decoder.alphabet:
            if y in present and (y, x) in rep.decoder.pairs:
                expr = Join(label[y], 0, expr)
        expr = Rename(0, label[x], expr)
        present.add(x)
    return expr


def _strip(e: CwExpression) -> CwExpression:
    while isinstance(e, (Join, Rename)):
        e = e.child
    return e


def is_caterpillar_expression(e: CwExpression) -> bool:
    """Every union has a bare creation (modulo join/rename chains) as a child."""
    e = _strip(e)
    while isinstance(e, Union_):
        left, right = _strip(e.left), _strip(e.right)
        if isinstance(left, Create):
            e = right
        elif isinstance(right, Create):
            e = left
        else:
            return False
    return True


# -- text form ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<join>(?:\\eta|η|eta|e)_?\{?\s*(?P<ji>\d+)\s*,\s*(?P<jj>\d+)\s*\}?)
  | (?P<rename>(?:\\rho|ρ|rho|r)_?\{?\s*(?P<rs>\d+)\s*(?:->|→|\\to)\s*(?P<rd>\d+)\s*\}?)
  | (?P<create>c?(?P<cl>\d+)\s*\(\s*(?P<cn>[A-Za-z_][A-Za-z0-9_]*|\d+)\s*\))
  | (?P<plus>\+|⊕|\\oplus)
  | (?P<lp>\()
  | (?P<rp>\))
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, tuple]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected input at offset {pos}: {text[pos:pos + 12]!r}")
        kind = m.lastgroup
        pos = m.end()
        if m.group("ws"):
            continue
        if m.group("join"):
            out.append(("join", (int(m.group("ji")), int(m.group("jj")))))
        elif m.group("rename"):
            out.append(("rename", (int(m.group("rs")), int(m.group("rd")))))
        elif m.group("create"):
            out.append(("create", (int(m.group("cl")), m.group("cn"))))
        elif m.group("plus"):
            out.append(("plus", ()))
        elif m.group("lp"):
            out.append(("lp", ()))
        elif m.group("rp"):
            out.append(("rp", ()))
        else:  # pragma: no cover
            raise ExpressionError(f"unhandled token {kind}")
    return out


def parse_expression(text: str) -> CwExpression:
    tokens = _tokenize(text)
    pos = 0

    def peek() -> Optional[str]:
        return tokens[pos][0] if pos < len(tokens) else None

    def expect(kind: str) -> tuple:
        nonlocal pos
        if peek() != kind:
            got = peek() or "end of input"
            raise ExpressionError(f"expected {kind} at token {pos}, got {got}")
        val = tokens[pos][1]
        pos += 1
        return val

    def expr() -> CwExpression:
        nonlocal pos
        node = term()
        while peek() == "plus":
            pos += 1
            node = Union_(node, term())
        return node

    def term() -> CwExpression:
        nonlocal pos
        kind = peek()
        if kind == "create":
            label, name = expect("create")
            return Create(label, name)
        if kind in ("join", "rename"):
            a, b = expect(kind)
            expect("lp")
            inner = expr()
            expect("rp")
            return Join(a, b, inner) if kind == "join" else Rename(a, b, inner)
        if kind == "lp":
            pos += 1
            inner = expr()
            expect("rp")
            return inner
        raise ExpressionError(f"unexpected {kind or 'end of input'} at token {pos}")

    node = expr()
    if pos != len(tokens):
        raise ExpressionError(f"trailing input at token {pos}")
    return node


def emit_expression(e: CwExpression) -> str:
    if isinstance(e, Create):
        return f"c{e.label}({e.name})"
    if isinstance(e, Union_):
        right = emit_expression(e.right)
        if isinstance(e.right, Union_):
            right = f"({right})"
        return f"{emit_expression(e.left)} + {right}"
    if isinstance(e, Join):
        return f"e{e.i},{e.j}({emit_expression(e.child)})"
    return f"r{e.src}->{e.dst}({emit_expression(e.child)})"
