"""Command-line interface.

Exit codes: 0 success, 1 a check or move failed, 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from braidfoliation import braidword, corpus, document, fixtures, graphs, moves, reduction
from braidfoliation.tiling import TilingError, validate

OK, FAILED, USAGE = 0, 1, 2
DEFAULT_SEED = 1


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load(path: str):
    return document.loads(_read(path))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _site(text: str) -> list[str]:
    return [x for x in text.replace(",", " ").split() if x]


def run_move(t, kind: str, site: list[str], variant: str | None = None):
    """Apply a move given the site as written in a transcript line."""
    if kind == "change_of_foliation":
        if len(site) == 5:
            *site, variant = site
        if len(site) != 4:
            raise moves.MoveError("change_of_foliation needs the site F,S,v,w")
        return moves.change_of_foliation(t, site[0], site[1], site[2:4], variant or "first")
    if kind == "exchange_bb" and len(site) in (1, 2):
        return moves.exchange_bb(t, *site)
    return moves.apply_move(t, kind, *site)


def cmd_validate(args) -> int:
    t = _load(args.file)
    report = validate(t, args.expect)
    print("\n".join(report.lines()))
    print("valid" if report.ok else "invalid")
    return OK if report.ok else FAILED


def cmd_apply(args) -> int:
    t = _load(args.file)
    try:
        out, rec = run_move(t, args.move, _site(args.site), args.variant)
    except moves.MoveError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return FAILED
    print(rec.line(), file=sys.stderr)
    _emit(document.dumps(out), args.output)
    return OK


def cmd_graphs(args) -> int:
    t = _load(args.file)
    if args.emit == "dot":
        sys.stdout.write(graphs.graphs_to_dot(t))
        return OK
    report = graphs.graph_report(t)
    print("\n".join(report.lines()))
    return OK if all(report.structural_checks().values()) else FAILED


def cmd_reduce(args) -> int:
    t = _load(args.file)
    try:
        if args.pipeline == "special-markov":
            final, transcript = reduction.make_special_markov(t)
        else:
            transcript = reduction.PIPELINES[args.pipeline](t)
            final = t
            for rec in transcript.steps:
                final, _ = moves.replay(final, rec)
    except reduction.ReductionError as exc:
        print(f"stuck: {exc}", file=sys.stderr)
        for rec in exc.steps:
            print(rec.line(), file=sys.stderr)
        if exc.tiling is not None and args.output:
            Path(args.output).write_text(document.dumps(exc.tiling))
        return FAILED
    sys.stdout.write(transcript.text())
    if args.output:
        Path(args.output).write_text(document.dumps(final))
    return OK


def _word(args) -> braidword.BraidWord:
    if args.word is not None:
        return braidword.BraidWord.parse(args.word)
    if args.word_file is not None:
        return braidword.BraidWord.parse(_read(args.word_file))
    return braidword.example_word()


def cmd_braid(args) -> int:
    w = _word(args)
    if args.action == "invariants":
        inv = braidword.closure_invariants(w)
        print(f"strands={inv.strands} exponent_sum={inv.exponent_sum} "
              f"permutation={' '.join(str(x + 1) for x in inv.permutation)} components={inv.component_count}")
        return OK
    if args.action == "move":
        if args.kind is None:
            raise braidword.WordError("braid move needs --kind")
        try:
            out = braidword.apply_word_move(w, args.kind, args.arg)
        except braidword.WordError as exc:
            print(f"refused: {exc}", file=sys.stderr)
            return FAILED
        sys.stdout.write(out.text())
        return OK
    budget = braidword.Budget(args.max_strands, args.max_length, args.max_nodes)
    result = braidword.certify_trivial(w, budget)
    print(f"{result.status} nodes={result.nodes}" + (f" reached {result.found}" if result.found is not None else ""))
    return OK if result.found is not None else FAILED


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name, about in fixtures.FIXTURES.items():
            print(f"{name}\t{about}")
        print("random\ta seeded random disc tiling (use --seed, --max-vertices, --discs)")
        return OK
    if args.name is None:
        raise KeyError("fixtures emit needs a name")
    if args.name == "random":
        t = corpus.random_disc_tiling(args.seed, args.max_vertices, discs=args.discs)
        _emit(document.dumps(t), args.output)
    else:
        _emit(fixtures.fixture_text(args.name), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidfoliation", description="Tiled braid-foliated surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a tiling document")
    v.add_argument("file")
    v.add_argument("--expect", help="e.g. discs=1")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("apply", help="apply one move and print the new document")
    a.add_argument("file")
    a.add_argument("--move", required=True, choices=moves.MOVE_KINDS)
    a.add_argument("--site", required=True, help="comma separated ids, as in a transcript line")
    a.add_argument("--variant", choices=moves.VARIANTS)
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_apply)

    g = sub.add_parser("graphs", help="the four singular-leaf graphs")
    g.add_argument("file")
    g.add_argument("--emit", choices=("report", "dot"), default="report")
    g.set_defaults(func=cmd_graphs)

    r = sub.add_parser("reduce", help="run a reduction pipeline and print its transcript")
    r.add_argument("file")
    r.add_argument("--pipeline", choices=tuple(reduction.PIPELINES), default="unlink")
    r.add_argument("-o", "--output", help="write the final (or stuck) document here")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("braid", help="braid word oracle")
    b.add_argument("action", choices=("invariants", "move", "certify"))
    src = b.add_mutually_exclusive_group()
    src.add_argument("--word", help='word text, e.g. "n=3 1 2 -1"; default is the worked example')
    src.add_argument("--word-file")
    b.add_argument("--kind", choices=braidword.WORD_MOVES)
    b.add_argument("--arg", type=int, help="generator for conjugate, sign for stabilize, split for exchange")
    b.add_argument("--max-strands", type=int, default=4)
    b.add_argument("--max-length", type=int, default=12)
    b.add_argument("--max-nodes", type=int, default=10**6)
    b.set_defaults(func=cmd_braid)

    f = sub.add_parser("fixtures", help="bundled example tilings")
    f.add_argument("action", choices=("list", "emit"))
    f.add_argument("name", nargs="?")
    f.add_argument("--seed", type=int, default=DEFAULT_SEED)
    f.add_argument("--max-vertices", type=int, default=20)
    f.add_argument("--discs", type=int, default=1)
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TilingError, braidword.WordError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
