"""Command-line front end.

Every subcommand reads one of the package's text formats (from a file
argument or stdin) and prints line records.  Exit status: 0 for a
positive answer, 1 for a negative/absent one, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from itertools import combinations
from typing import Callable, Optional, Sequence

from . import graph_core as gc
from . import grid_classes as gr
from . import letters as lt
from . import permutations as pm
from . import three_letter as tl
from . import width_params as wp


class InputError(Exception):
    pass


class Output:
    """Collects records; text mode prints ``key=value`` lines, json mode objects."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, head: Optional[str] = None, **fields) -> None:
        if self.fmt == "json":
            obj = {"record": head} if head is not None else {}
            obj.update(fields)
            self.stream.write(json.dumps(obj) + "\n")
            return
        parts = [head] if head is not None else []
        parts += [f"{k.replace('_', '-')}={_fmt(v)}" for k, v in fields.items()]
        self.stream.write(" ".join(parts) + "\n")

    def document(self, kind: str, text: str) -> None:
        """Emit a whole text document (graph, decoder, matrix, expression)."""
        if self.fmt == "json":
            self.stream.write(json.dumps({"record": kind, "document": text}) + "\n")
        else:
            self.stream.write(text if text.endswith("\n") else text + "\n")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v)


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _graph(path: Optional[str]) -> gc.Graph:
    return gc.parse_graph(_read(path))


def _matrix(path: str) -> tuple[gr.GridMatrix, gr.SignVector]:
    m, s = gr.parse_matrix(_read(path))
    if s is None:
        s = gr.infer_signs(m)
        if s is None:
            raise InputError("matrix is not a partial multiplication matrix")
    return m, s


def _word_arg(args) -> tuple[str, ...]:
    text = " ".join(args.word) if args.word else sys.stdin.read()
    return gr.parse_word(text)


# -- subcommands -------------------------------------------------------------

def cmd_realize(args, out: Output) -> int:
    rep = lt.parse_representation(_read(args.input))
    out.document("graph", gc.emit_graph(lt.realize(rep.decoder, rep.word)))
    return 0


def cmd_recognize3(args, out: Output) -> int:
    g = _graph(args.input)
    rep = tl.recognize_cyclic3(g)
    if rep is None:
        name, witness = tl.mfis_check(g)[0]
        out.stream.write(_not_representable_line(name, witness, out.fmt))
        return 1
    out.record("representable", word=rep.word_string(), vertices=list(rep.vertex_of))
    return 0


def _not_representable_line(name: str, witness, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"record": "not-representable", "pattern": name, "witness": list(witness)}) + "\n"
    return f"not-representable {name} witness={_fmt(witness)}\n"


def cmd_mfis(args, out: Output) -> int:
    found = tl.mfis_check(_graph(args.input))
    if not found:
        out.record("free")
        return 0
    for name, witness in found:
        out.record("contains", pattern=name, witness=list(witness))
    return 1


def cmd_lettericity(args, out: Output) -> int:
    g = _graph(args.input)
    try:
        k, rep = lt.lettericity_exact(g, k_max=args.k_max, max_vertices=args.max_vertices)
    except lt.SearchGuardError as exc:
        raise InputError(str(exc)) from None
    except lt.NoRepresentationError:
        out.record("none", k_max=args.k_max)
        return 1
    out.record(None, lettericity=k)
    out.document("representation", lt.emit_representation(rep))
    return 0


def cmd_permgraph(args, out: Output) -> int:
    p = pm.Permutation.parse(args.perm)
    out.document("graph", gc.emit_graph(pm.perm_graph(p)))
    return 0


def cmd_pattern(args, out: Output) -> int:
    p = pm.Permutation.parse(args.perm)
    qs = [pm.Permutation.parse(q) for q in args.patterns]
    hits = [pm.contains_pattern(p, q) for q in qs]
    for q, hit in zip(qs, hits):
        out.record(None, pattern=str(q), contains=hit)
    if args.avoid:
        out.record(None, avoids_all=not any(hits))
        return 0 if not any(hits) else 1
    return 0 if all(hits) else 1


def cmd_grid_encode(args, out: Output) -> int:
    m, s = _matrix(args.matrix)
    d = gr.parse_drawing(_read(args.input))
    out.record(None, word=" ".join(gr.phi(m, s, d)), permutation=str(gr.drawing_permutation(m, s, d)))
    return 0


def cmd_grid_decode(args, out: Output) -> int:
    m, s = _matrix(args.matrix)
    out.record(None, permutation=str(gr.psi(m, s, _word_arg(args))))
    return 0


def cmd_grid_decoder(args, out: Output) -> int:
    m, s = _matrix(args.matrix)
    dec = gr.decoder_from_matrix(m, s)
    out.record(None, cols=list(s.cols), rows=list(s.rows))
    rep = lt.LetterRepresentation(dec, ())
    out.document("decoder", lt.emit_representation(rep, with_vertices=False))
    return 0


def cmd_grid_check(args, out: Output) -> int:
    m, s = _matrix(args.matrix)
    ok = gr.check_grid_letter_bridge(m, s, _word_arg(args))
    out.record(None, bridge=ok)
    return 0 if ok else 1


def cmd_two_letter_matrix(args, out: Output) -> int:
    rep = lt.parse_representation(_read(args.input))
    res = gr.two_letter_grid_matrix(rep.decoder)
    out.record(None, tag=res.tag, matrices=len(res.matrices))
    for mat in res.matrices:
        out.document("matrix", gr.emit_matrix(mat))
    return 0


def cmd_nd(args, out: Output) -> int:
    sp = wp.neighbourhood_diversity(_graph(args.input))
    out.record(None, diversity=sp.diversity)
    for cls, clique in zip(sp.classes, sp.cliques):
        out.record("class", vertices=list(cls), kind="clique" if clique else "independent")
    return 0


def cmd_lcw(args, out: Output) -> int:
    text = _read(args.input)
    if args.graph:
        g = gc.parse_graph(text)
        _, rep = lt.lettericity_exact(g, max_vertices=args.max_vertices)
    else:
        rep = lt.parse_representation(text)
        g = lt.realize_representation(rep)
    e = wp.lcw_expression_from_letters(rep, g)
    out.record(None, labels=len(wp.labels_used(e)), caterpillar=wp.is_caterpillar_expression(e))
    out.document("expression", wp.emit_expression(e))
    return 0


def cmd_eval_cw(args, out: Output) -> int:
    ev = wp.eval_expression(wp.parse_expression(_read(args.input)))
    if args.names:
        out.record(None, names=list(ev.names))
    out.document("graph", gc.emit_graph(ev.graph))
    return 0


def sweep(max_n: int, out: Output) -> int:
    """Exhaustive three-way equivalence over all labelled graphs on <= max_n vertices."""
    bad_total = graphs_total = 0
    for n in range(max_n + 1):
        start = time.perf_counter()
        pairs = list(combinations(range(n), 2))
        total = yes = bad = 0
        for code in range(1 << len(pairs)):
            g = gc.graph_from_code(n, code, pairs)
            rep = tl.recognize_cyclic3(g)
            free = not tl.mfis_check(g)
            nice = tl.brute_force_nice(g) is not None
            ok = (rep is not None) == free == nice
            if rep is not None and not lt.verify_representation(g, rep):
                ok = False
            total += 1
            yes += rep is not None
            bad += not ok
        bad_total += bad
        graphs_total += total
        out.record(None, n=n, graphs=total, representable=yes, discrepancies=bad,
                   seconds=f"{time.perf_counter() - start:.2f}")
    out.record("total", graphs=graphs_total, discrepancies=bad_total)
    return 0 if bad_total == 0 else 1


def cmd_sweep(args, out: Output) -> int:
    return sweep(args.max_n, out)


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lettericity", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="root seed for randomized routines")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str, input_arg: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        if input_arg:
            sp.add_argument("input", nargs="?", help="input file (default: stdin)")
        sp.set_defaults(func=func)
        return sp

    add("realize", cmd_realize, "letter graph of a decoder/word document")
    add("recognize3", cmd_recognize3, "3-letter recognition over the cyclic decoder")
    add("mfis", cmd_mfis, "forbidden induced subgraphs of the cyclic 3-letter class")
    sp = add("lettericity", cmd_lettericity, "exact lettericity by exhaustive search")
    sp.add_argument("--k-max", type=int, default=None)
    sp.add_argument("--max-vertices", type=int, default=lt.DEFAULT_MAX_VERTICES, help="search guard")
    sp = add("permgraph", cmd_permgraph, "permutation graph", input_arg=False)
    sp.add_argument("perm")
    sp = add("pattern", cmd_pattern, "pattern containment", input_arg=False)
    sp.add_argument("perm")
    sp.add_argument("patterns", nargs="+")
    sp.add_argument("--avoid", action="store_true", help="answer whether PERM avoids every pattern")
    sp = add("grid-encode", cmd_grid_encode, "word of a drawing (phi)")
    sp.add_argument("--matrix", required=True)
    for name, func, help in (
        ("grid-decode", cmd_grid_decode, "permutation of a word (psi)"),
        ("grid-check", cmd_grid_check, "letter graph equals permutation graph"),
    ):
        sp = add(name, func, help, input_arg=False)
        sp.add_argument("--matrix", required=True)
        sp.add_argument("word", nargs="*", help="cell tokens (default: stdin)")
    sp = add("grid-decoder", cmd_grid_decoder, "decoder of a partial multiplication matrix", input_arg=False)
    sp.add_argument("matrix")
    add("two-letter-matrix", cmd_two_letter_matrix, "grid matrices for a 2-letter decoder")
    add("nd", cmd_nd, "neighbourhood diversity")
    sp = add("lcw", cmd_lcw, "linear clique-width expression from a letter representation")
    sp.add_argument("--graph", action="store_true", help="input is a graph; compute lettericity first")
    sp.add_argument("--max-vertices", type=int, default=lt.DEFAULT_MAX_VERTICES)
    sp = add("eval-cw", cmd_eval_cw, "evaluate a clique-width expression")
    sp.add_argument("--names", action="store_true", help="also print vertex names in id order")
    sp = add("sweep", cmd_sweep, "exhaustive recognition/MFIS/nice equivalence", input_arg=False)
    sp.add_argument("--max-n", type=int, default=6)
    return p


INPUT_ERRORS = (
    InputError,
    gc.GraphFormatError,
    lt.DecoderFormatError,
    gr.MatrixFormatError,
    wp.ExpressionError,
    ValueError,
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    out = Output(args.format)
    try:
        return args.func(args, out)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
