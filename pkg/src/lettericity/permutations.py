"""Permutations in one-line notation, their graphs, and pattern containment."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations as _itperms
from typing import Iterable, Iterator, Sequence

from .graph_core import Graph

THRESHOLD_BASIS = ("2143", "3412", "2413", "3142")
CHAIN_BASIS = ("321", "2143")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on ``{1..n}`` stored as its one-line sequence."""

    one_line: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"{values} is not a permutation of 1..{len(values)}")
        object.__setattr__(self, "one_line", values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """``"415263"`` (digits, n <= 9) or ``"10,2,..."`` (comma separated)."""
        text = text.strip()
        if "," in text:
            parts = [p.strip() for p in text.split(",")]
        elif " " in text:
            parts = text.split()
        else:
            parts = list(text)
        if not all(p.isdigit() for p in parts):
            raise ValueError(f"malformed permutation {text!r}")
        return cls(int(p) for p in parts)

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(map(str, self.one_line))
        return ",".join(map(str, self.one_line))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def __len__(self) -> int:
        return len(self.one_line)

    def __iter__(self) -> Iterator[int]:
        return iter(self.one_line)

    def __getitem__(self, i: int) -> int:
        return self.one_line[i]

    def reverse(self) -> "Permutation":
        return Permutation(reversed(self.one_line))

    def complement(self) -> "Permutation":
        n = len(self)
        return Permutation(n + 1 - v for v in self.one_line)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self.one_line, start=1):
            inv[v - 1] = i
        return Permutation(inv)


def identity(n: int) -> Permutation:
    return Permutation(range(1, n + 1))


def standardize(values: Sequence[int]) -> tuple[int, ...]:
    """Order-isomorphic pattern on ``1..len(values)`` (values assumed distinct)."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(ranks[v] for v in values)


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in _itperms(range(1, n + 1)):
        yield Permutation(p)


def perm_graph(p: Permutation) -> Graph:
    """Vertex ``i-1`` for position ``i``; edges are the inversions."""
    vals = p.one_line
    n = len(vals)
    return Graph(n, ((i, j) for i, j in combinations(range(n), 2) if vals[i] > vals[j]))


def contains_pattern(p: Permutation, q: Permutation) -> bool:
    k = len(q)
    target = q.one_line
    vals = p.one_line
    return any(standardize([vals[i] for i in idx]) == target for idx in combinations(range(len(vals)), k))


def _as_perm(q) -> Permutation:
    return q if isinstance(q, Permutation) else Permutation.parse(str(q))


def avoids_all(p: Permutation, qs: Iterable) -> bool:
    return not any(contains_pattern(p, _as_perm(q)) for q in qs)
