"""Geometric grid classes: partial multiplication matrices and their encodings.

Matrices are indexed ``entry(k, l)`` with column ``k`` counted left to
right and row ``l`` counted bottom to top, both from 1.  The text format
lists rows top to bottom, as matrices are usually displayed.

Cell ``(k, l)`` spans ``[k-1, k] x [l-1, l]``.  A point at distance ``d``
from the base point of the cell sits at ``base + d * (c_k, r_l)``; all
coordinates are exact fractions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .graph_core import Graph
from .letters import Decoder, realize
from .permutations import Permutation, perm_graph

Cell = tuple[int, int]


class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GridMatrix:
    """A ``t x u`` matrix over ``{-1, 0, 1}``; ``columns[k-1][l-1]`` is ``entry(k, l)``."""

    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in col) for col in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols or not cols[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(col) != len(cols[0]) for col in cols):
            raise ValueError("ragged matrix")
        if any(x not in (-1, 0, 1) for col in cols for x in col):
            raise ValueError("entries must be -1, 0 or 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GridMatrix":
        """Build from rows listed top to bottom (display order)."""
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged or empty matrix")
        u, t = len(rows), len(rows[0])
        return cls(tuple(tuple(rows[u - l][k - 1] for l in range(1, u + 1)) for k in range(1, t + 1)))

    @property
    def t(self) -> int:
        return len(self.columns)

    @property
    def u(self) -> int:
        return len(self.columns[0])

    def entry(self, k: int, l: int) -> int:
        return self.columns[k - 1][l - 1]

    def rows_top_first(self) -> list[list[int]]:
        return [[self.entry(k, l) for k in range(1, self.t + 1)] for l in range(self.u, 0, -1)]

    def cells(self) -> list[Cell]:
        """Nonzero cells ordered by column, then row."""
        return [(k, l) for k in range(1, self.t + 1) for l in range(1, self.u + 1) if self.entry(k, l)]

    def alphabet(self) -> tuple[str, ...]:
        return tuple(cell_letter(c) for c in self.cells())


@dataclass(frozen=True)
class SignVector:
    cols: tuple[int, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "rows", tuple(self.rows))
        if any(x not in (-1, 1) for x in self.cols + self.rows):
            raise ValueError("signs must be -1 or 1")

    def c(self, k: int) -> int:
        return self.cols[k - 1]

    def r(self, l: int) -> int:
        return self.rows[l - 1]

    def valid_for(self, m: GridMatrix) -> bool:
        if len(self.cols) != m.t or len(self.rows) != m.u:
            return False
        return all(m.entry(k, l) in (0, self.c(k) * self.r(l)) for k in range(1, m.t + 1) for l in range(1, m.u + 1))


def cell_letter(cell: Cell) -> str:
    k, l = cell
    if k < 10 and l < 10:
        return f"a{k}{l}"
    return f"a{k},{l}"


_CELL_RE = re.compile(r"^a(?:(\d),?(\d)|(\d+),(\d+))$")


def parse_cell(token: str) -> Cell:
    m = _CELL_RE.match(token.strip())
    if not m:
        raise ValueError(f"malformed cell token {token!r}")
    if m.group(1) is not None:
        return int(m.group(1)), int(m.group(2))
    return int(m.group(3)), int(m.group(4))


def parse_word(text: str) -> tuple[str, ...]:
    """Whitespace-separated cell tokens, normalized (``a3,1`` -> ``a31``)."""
    return tuple(cell_letter(parse_cell(tok)) for tok in text.split())


# -- signs -------------------------------------------------------------------

def infer_signs(m: GridMatrix) -> Optional[SignVector]:
    """Column and row signs witnessing a partial multiplication matrix.

    Signs propagate along nonzero entries from each component's first row
    (rows before columns).  Since a whole component can be negated, each
    component is then flipped if that gives it more ``+1`` signs than
    ``-1`` signs; rows and columns with no nonzero entry get ``+1``.
    """
    t, u = m.t, m.u
    # nodes 0..u-1 are rows, u..u+t-1 are columns
    sign: list[Optional[int]] = [None] * (u + t)

    def nbrs(node: int):
        if node < u:
            l = node + 1
            return [(u + k - 1, m.entry(k, l)) for k in range(1, t + 1) if m.entry(k, l)]
        k = node - u + 1
        return [(l - 1, m.entry(k, l)) for l in range(1, u + 1) if m.entry(k, l)]

    for root in range(u + t):
        if sign[root] is not None:
            continue
        sign[root] = 1
        comp = [root]
        stack = [root]
        while stack:
            x = stack.pop()
            for y, e in nbrs(x):
                want = e * sign[x]
                if sign[y] is None:
                    sign[y] = want
                    comp.append(y)
                    stack.append(y)
                elif sign[y] != want:
                    return None
        if sum(sign[x] for x in comp) < 0:
            for x in comp:
                sign[x] = -sign[x]
    return SignVector(tuple(sign[u:]), tuple(sign[:u]))


def all_sign_vectors(m: GridMatrix) -> Iterable[SignVector]:
    for bits in product((1, -1), repeat=m.t + m.u):
        yield SignVector(bits[: m.t], bits[m.t :])


def _require_signs(m: GridMatrix, s: SignVector) -> None:
    if not s.valid_for(m):
        raise ValueError("signs are not valid for this matrix")


# -- decoder -----------------------------------------------------------------

def decoder_from_matrix(m: GridMatrix, s: SignVector) -> Decoder:
    """Decoder over the cell alphabet whose letter graphs are the permutation graphs.

    Points in different cells are adjacent iff one lies left of and above
    the other; the pair set below records when that happens in terms of the
    order of distances from the base points.
    """
    _require_signs(m, s)
    cells = m.cells()
    pairs: list[tuple[Cell, Cell]] = []
    for cell in cells:
        if m.entry(*cell) == -1:
            pairs.append((cell, cell))
    for x, y in combinations(cells, 2):
        (k, l), (s_, t_) = sorted((x, y))
        if k != s_ and l != t_:
            # k < s_: the left cell is above (complete) or below (empty).
            if l > t_:
                pairs += [((k, l), (s_, t_)), ((s_, t_), (k, l))]
        elif k == s_:
            upper, lower = ((k, l), (k, t_)) if l > t_ else ((k, t_), (k, l))
            pairs.append((upper, lower) if s.c(k) == 1 else (lower, upper))
        else:
            left, right = (k, l), (s_, l)
            pairs.append((right, left) if s.r(l) == 1 else (left, right))
    return Decoder(m.alphabet(), [(cell_letter(a), cell_letter(b)) for a, b in pairs])


# -- drawings ----------------------------------------------------------------

@dataclass(frozen=True)
class Drawing:
    """Points given by cell and distance from the cell's base point, by increasing distance."""

    points: tuple[tuple[Cell, Fraction], ...]

    def __post_init__(self):
        pts = tuple((tuple(c), Fraction(d)) for c, d in self.points)
        object.__setattr__(self, "points", pts)
        ds = [d for _, d in pts]
        if any(not 0 < d < 1 for d in ds):
            raise ValueError("distances must lie strictly between 0 and 1")
        if any(a >= b for a, b in zip(ds, ds[1:])):
            raise ValueError("distances must be pairwise distinct and increasing")


def base_point(s: SignVector, cell: Cell) -> tuple[int, int]:
    """The corner of the cell where both its column and row directions start."""
    k, l = cell
    return (k - 1 if s.c(k) == 1 else k, l - 1 if s.r(l) == 1 else l)


def point_coordinates(m: GridMatrix, s: SignVector, cell: Cell, d: Fraction) -> tuple[Fraction, Fraction]:
    k, l = cell
    if not (1 <= k <= m.t and 1 <= l <= m.u) or m.entry(k, l) == 0:
        raise ValueError(f"{cell_letter(cell)} is not a nonzero cell")
    bx, by = base_point(s, cell)
    return bx + s.c(k) * d, by + s.r(l) * d


def drawing_from_points(
    m: GridMatrix, s: SignVector, coords: Iterable[tuple[Fraction, Fraction]], scale: int = 1
) -> Drawing:
    """Locate figure points (in units of ``1/scale`` per cell) on the segments."""
    _require_signs(m, s)
    pts = []
    for x, y in coords:
        x, y = Fraction(x, scale), Fraction(y, scale)
        cell = (int(x) + 1, int(y) + 1)
        bx, by = base_point(s, cell)
        d = (x - bx) * s.c(cell[0])
        if m.entry(*cell) == 0 or (y - by) * s.r(cell[1]) != d:
            raise ValueError(f"point ({x}, {y}) is not on the figure")
        pts.append((cell, d))
    pts.sort(key=lambda p: p[1])
    return Drawing(tuple(pts))


def _place(m: GridMatrix, s: SignVector, drawing: Drawing) -> tuple[Permutation, list[int]]:
    """Permutation of a drawing, plus each point's left-to-right rank."""
    return _rank_points([point_coordinates(m, s, cell, d) for cell, d in drawing.points])


def _place_word(m: GridMatrix, s: SignVector, word: Sequence[str]) -> tuple[Permutation, list[int]]:
    """``_place`` of the canonical drawing, scaled by ``n + 1`` to stay in integers."""
    n1 = len(word) + 1
    cells = set(m.cells())
    coords = []
    for i, tok in enumerate(word, start=1):
        cell = parse_cell(tok)
        if cell not in cells:
            raise ValueError(f"{tok} is not a nonzero cell of the matrix")
        bx, by = base_point(s, cell)
        coords.append((bx * n1 + s.c(cell[0]) * i, by * n1 + s.r(cell[1]) * i))
    return _rank_points(coords)


def _rank_points(coords) -> tuple[Permutation, list[int]]:
    xs = [x for x, _ in coords]
    ys = [y for _, y in coords]
    assert len(set(xs)) == len(xs) and len(set(ys)) == len(ys), "points share a line"
    by_x = sorted(range(len(coords)), key=lambda i: xs[i])
    y_rank = {i: r for r, i in enumerate(sorted(range(len(coords)), key=lambda i: ys[i]), start=1)}
    x_rank = [0] * len(coords)
    for r, i in enumerate(by_x):
        x_rank[i] = r
    return Permutation(y_rank[i] for i in by_x), x_rank


def drawing_permutation(m: GridMatrix, s: SignVector, drawing: Drawing) -> Permutation:
    _require_signs(m, s)
    return _place(m, s, drawing)[0]


def canonical_drawing(m: GridMatrix, word: Sequence[str]) -> Drawing:
    """Points at distances ``i/(n+1)`` in the cells named by ``word``."""
    n = len(word)
    cells = set(m.cells())
    pts = []
    for i, tok in enumerate(word, start=1):
        cell = parse_cell(tok)
        if cell not in cells:
            raise ValueError(f"{tok} is not a nonzero cell of the matrix")
        pts.append((cell, Fraction(i, n + 1)))
    return Drawing(tuple(pts))


def psi(m: GridMatrix, s: SignVector, word: Sequence[str]) -> Permutation:
    _require_signs(m, s)
    return _place_word(m, s, word)[0]


def phi(m: GridMatrix, s: SignVector, drawing: Drawing) -> tuple[str, ...]:
    _require_signs(m, s)
    return tuple(cell_letter(cell) for cell, _ in drawing.points)


def check_grid_letter_bridge(m: GridMatrix, s: SignVector, word: Sequence[str]) -> bool:
    """Letter graph of ``word`` equals the permutation graph of ``psi(word)``.

    Word position ``i`` is matched with the point it places.
    """
    _require_signs(m, s)
    word = tuple(cell_letter(parse_cell(tok)) for tok in word)
    letter_graph = realize(decoder_from_matrix(m, s), word)
    perm, x_rank = _place_word(m, s, word)
    return letter_graph == perm_graph(perm).relabel(x_rank)


def geom_permutations(m: GridMatrix, n: int, s: Optional[SignVector] = None) -> set[Permutation]:
    """All length-``n`` permutations drawable on the figure (bounded enumeration)."""
    if s is None:
        s = infer_signs(m)
        if s is None:
            raise ValueError("not a partial multiplication matrix")
    alphabet = m.alphabet()
    return {psi(m, s, w) for w in product(alphabet, repeat=n)}


def trace_swap_allowed(a: str, b: str) -> bool:
    """Adjacent letters may commute iff their cells share neither column nor row."""
    (k, l), (s_, t_) = parse_cell(a), parse_cell(b)
    return k != s_ and l != t_


# -- 2-letter decoders -------------------------------------------------------

@dataclass(frozen=True)
class TwoLetterGridding:
    """Matrices whose grid classes jointly hold every permutation of the class.

    ``letter_cells`` maps each letter to its cell when the decoder is
    literally the matrix's cell decoder (the homogeneous cases).
    """

    tag: str
    matrices: tuple[GridMatrix, ...]
    letter_cells: Optional[dict[str, Cell]] = None


def two_letter_grid_matrix(d: Decoder) -> TwoLetterGridding:
    if set(d.alphabet) != {"a", "b"} or len(d.alphabet) != 2:
        raise ValueError("decoder alphabet must be {a, b}")
    cross = {("a", "b"), ("b", "a")} & d.pairs
    ma = -1 if ("a", "a") in d.pairs else 1
    mb = -1 if ("b", "b") in d.pairs else 1
    selfs = (ma == -1) + (mb == -1)
    if len(cross) == 2:
        # a-cell top-left, b-cell bottom-right: every a is left of and above every b.
        return TwoLetterGridding("complete", (GridMatrix.from_rows([[ma, 0], [0, mb]]),), {"a": (1, 2), "b": (2, 1)})
    if not cross:
        return TwoLetterGridding("empty", (GridMatrix.from_rows([[0, ma], [mb, 0]]),), {"a": (2, 2), "b": (1, 1)})
    if selfs == 1:
        return TwoLetterGridding("threshold", (GridMatrix.from_rows([[-1, 1], [1, -1]]),))
    if selfs == 0:
        return TwoLetterGridding("chain", (GridMatrix.from_rows([[1, 1]]), GridMatrix.from_rows([[1], [1]])))
    # Complements of chain graphs: reversing a permutation complements its
    # graph and mirrors the figure, turning increasing cells into decreasing ones.
    return TwoLetterGridding("co-chain", (GridMatrix.from_rows([[-1, -1]]), GridMatrix.from_rows([[-1], [-1]])))


# -- text format -------------------------------------------------------------

def parse_matrix(text: str) -> tuple[GridMatrix, Optional[SignVector]]:
    """``"t u"`` header, ``u`` rows of ``t`` entries (top row first).

    Optional trailing lines ``cols: c_1 .. c_t`` and ``rows: r_1 .. r_u``
    (bottom row first) give explicit signs.
    """
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("missing header 't u'", 1)
    i, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise MatrixFormatError(f"malformed header {header!r}, expected 't u'", i)
    t, u = int(parts[0]), int(parts[1])
    if t < 1 or u < 1:
        raise MatrixFormatError("dimensions must be positive", i)
    if len(lines) < 1 + u:
        raise MatrixFormatError(f"expected {u} matrix rows", lines[-1][0] + 1)
    rows = []
    for i, ln in lines[1 : 1 + u]:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError:
            raise MatrixFormatError(f"malformed row {ln!r}", i) from None
        if len(row) != t or any(x not in (-1, 0, 1) for x in row):
            raise MatrixFormatError(f"row must have {t} entries in {{-1, 0, 1}}", i)
        rows.append(row)
    m = GridMatrix.from_rows(rows)
    signs: dict[str, tuple[int, ...]] = {}
    for i, ln in lines[1 + u :]:
        key, _, rest = ln.partition(":")
        key = key.strip().lower()
        if key not in ("cols", "rows") or key in signs:
            raise MatrixFormatError(f"unexpected line {ln!r}", i)
        try:
            vals = tuple(int(x) for x in rest.split())
        except ValueError:
            raise MatrixFormatError(f"malformed signs {rest!r}", i) from None
        if len(vals) != (t if key == "cols" else u) or any(v not in (-1, 1) for v in vals):
            raise MatrixFormatError(f"wrong number of {key} signs or value outside {{-1, 1}}", i)
        signs[key] = vals
    if not signs:
        return m, None
    if set(signs) != {"cols", "rows"}:
        raise MatrixFormatError("give both 'cols:' and 'rows:' signs", lines[-1][0])
    s = SignVector(signs["cols"], signs["rows"])
    if not s.valid_for(m):
        raise MatrixFormatError("signs do not factor the matrix", lines[-1][0])
    return m, s


def emit_matrix(m: GridMatrix, s: Optional[SignVector] = None) -> str:
    lines = [f"{m.t} {m.u}"] + [" ".join(str(x) for x in row) for row in m.rows_top_first()]
    if s is not None:
        lines.append("cols: " + " ".join(map(str, s.cols)))
        lines.append("rows: " + " ".join(map(str, s.rows)))
    return "\n".join(lines) + "\n"


def parse_drawing(text: str) -> Drawing:
    """One point per line: ``<cell token> <distance>`` (fraction or decimal)."""
    pts = []
    for i, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise MatrixFormatError(f"expected '<cell> <distance>', got {ln!r}", i)
        try:
            pts.append((parse_cell(parts[0]), Fraction(parts[1])))
        except ValueError as exc:
            raise MatrixFormatError(str(exc), i) from None
    pts.sort(key=lambda p: p[1])
    return Drawing(tuple(pts))
