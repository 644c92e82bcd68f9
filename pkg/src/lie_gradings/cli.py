"""Command-line interface: ``lie-gradings <command> ...``."""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import corpus
from .errors import FieldExtensionRequired, LieGradingError, ParseError
from .enumeration import EQUIVALENT, UNDECIDED, classify_gradings, maximal_grading
from .exactmath.rational import format_rat, to_rat
from .formats import (algebra_from_json, algebra_to_json, dumps, grading_from_json, grading_to_json, load_json,
                      matrix_to_json)
from .grading import Grading
from .liealg import LieAlgebra, derivation_algebra, validate
from .lqp import FormBasis, homogeneous_dimension, optimize_bound
from .positive import (FAST_MODE, OPTIMAL_MODE, NotStratifiable, heintze_derivation, heintze_from_realization,
                       positive_cone, positive_realization, stratification)

EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_FIELD = 3


def load_algebra(source: str, check: bool = True) -> LieAlgebra:
    if source.startswith("corpus:"):
        try:
            return corpus.get(source[len("corpus:"):])
        except KeyError:
            raise ParseError(f"unknown corpus algebra {source[len('corpus:'):]!r}") from None
    if not os.path.exists(source):
        raise ParseError(f"no such file: {source}")
    return algebra_from_json(load_json(source), check=check)


def _vector_text(g: LieAlgebra, v: Sequence[Fraction]) -> str:
    parts = []
    for label, c in zip(g.labels, v):
        if not c:
            continue
        if c == 1:
            term = label
        elif c == -1:
            term = f"-{label}"
        else:
            term = f"{format_rat(c)}*{label}"
        parts.append(term)
    text = " + ".join(parts).replace("+ -", "- ")
    return text or "0"


def grading_text(v: Grading) -> str:
    g = v.carrier
    lines = [f"rank {v.rank}"]
    for layer in v.layers:
        span = ", ".join(_vector_text(g, b) for b in layer.basis)
        lines.append(f"V{layer.weight} = <{span}>")
    return "\n".join(lines)


def matrix_text(m) -> str:
    rows = [[format_rat(Fraction(x)) for x in r] for r in m]
    width = max((len(x) for r in rows for x in r), default=1)
    return "\n".join(" ".join(x.rjust(width) for x in r) for r in rows)


# ------------------------------------------------------------ corpus summary

@dataclass(frozen=True)
class Table2Row:
    name: str
    k: int
    stratifiable: bool
    classes: int
    families: int
    undecided: int
    positive: int
    quotients: int

    def to_json(self) -> dict:
        return {"algebra": self.name, "k": self.k, "stratifiable": self.stratifiable, "classes": self.classes,
                "families": self.families, "undecidedPairs": self.undecided, "positive": self.positive,
                "quotients": self.quotients}


def table2_row(name: str) -> Table2Row:
    g = corpus.get(name)
    c = classify_gradings(g)
    strat = not isinstance(stratification(g), NotStratifiable)
    return Table2Row(corpus.normalize_name(name), c.maximal.rank, strat, c.classes, c.families,
                     len(c.undecided_pairs), c.positive, c.quotient_count)


def thread_cap() -> int:
    env = os.environ.get("LIE_GRADINGS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def report_table2(names: Sequence[str], workers: Optional[int] = None) -> list[Table2Row]:
    """Rows in input order; algebras are processed in parallel up to the thread cap."""
    names = list(names)
    workers = min(workers or thread_cap(), len(names))
    if workers <= 1:
        return [table2_row(n) for n in names]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(table2_row, names))


def table2_text(rows: Sequence[Table2Row]) -> str:
    header = f"{'algebra':<12} {'k':>2} {'s?':>3} {'#':>4} {'undec':>5} {'#Z+':>4}"
    lines = [header]
    for r in rows:
        lines.append(f"{r.name:<12} {r.k:>2} {'yes' if r.stratifiable else 'no':>3} {r.classes:>4} "
                     f"{r.undecided:>5} {r.positive:>4}")
    return "\n".join(lines)


# ------------------------------------------------------------ commands

class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.text: list[str] = []
        self.data = None

    def emit(self, data, text: str) -> None:
        self.data = data
        self.text.append(text)

    def render(self) -> str:
        if self.fmt == "json":
            return dumps(self.data)
        return "\n".join(self.text) + "\n"


def _grading_arg(args, g: LieAlgebra) -> Grading:
    if getattr(args, "grading", None):
        return grading_from_json(load_json(args.grading), g)
    return maximal_grading(g)


def cmd_validate(args, out: Output) -> int:
    g = load_algebra(args.algebra, check=False)
    v = validate(g)
    if v.ok:
        out.emit({"ok": True}, "ok")
        return 0
    out.emit({"ok": False, "kind": v.kind, "witness": list(v.witness)},
             f"invalid: {v.kind} fails at {tuple(v.witness)}")
    return EXIT_PARSE


def cmd_derivations(args, out: Output) -> int:
    g = load_algebra(args.algebra)
    der = derivation_algebra(g)
    text = [f"dim der = {len(der)}"]
    for t, d in enumerate(der, 1):
        text.append(f"D{t} =\n{matrix_text(d)}")
    out.emit({"dimension": len(der), "basis": [matrix_to_json(d) for d in der]}, "\n".join(text))
    return 0


def cmd_maximal(args, out: Output) -> int:
    w = maximal_grading(load_algebra(args.algebra))
    out.emit(grading_to_json(w), grading_text(w))
    return 0


def cmd_enumerate(args, out: Output) -> int:
    g = load_algebra(args.algebra)
    c = classify_gradings(g)
    classes = []
    text = [f"maximal rank {c.maximal.rank}, {c.quotient_count} torsion-free quotients"]
    for idx, item in enumerate(c.items):
        entry = {"index": idx, "status": item.status, "family": item.family, "positive": item.positive,
                 "subgroup": [list(r) for r in item.subgroup.basis], "grading": grading_to_json(item.grading)}
        if item.status == EQUIVALENT:
            entry["equivalentTo"] = item.representative
            entry["hom"] = [list(r) for r in item.hom.matrix]
            entry["automorphism"] = matrix_to_json(item.automorphism)
        classes.append(entry)
        if item.status != EQUIVALENT:
            flag = " (undecided)" if item.status == UNDECIDED else ""
            pos = " positive" if item.positive else ""
            text.append(f"[{idx}]{flag}{pos}\n{grading_text(item.grading)}")
    text.append(f"classes {c.classes} (at least {c.families} distinct families), "
                f"undecided pairs {len(c.undecided_pairs)}, positive {c.positive}")
    out.emit({"algebra": g.name, "maximalRank": c.maximal.rank, "classes": classes,
              "undecidedPairs": [list(p) for p in c.undecided_pairs],
              "counts": {"classes": c.classes, "families": c.families, "positive": c.positive,
                         "quotients": c.quotient_count}},
             "\n".join(text))
    return 0


def cmd_stratify(args, out: Output) -> int:
    res = stratification(load_algebra(args.algebra))
    if isinstance(res, NotStratifiable):
        i, j, k = res.certificate
        out.emit({"stratifiable": False, "certificate": list(res.certificate), "degrees": list(res.degrees)},
                 f"not stratifiable: equation ({i}, {j}, {k}) of the system is inconsistent")
        return 0
    out.emit({"stratifiable": True, "grading": grading_to_json(res.grading),
              "derivation": matrix_to_json(res.derivation)},
             "stratifiable\n" + grading_text(res.grading))
    return 0


def cmd_positive(args, out: Output) -> int:
    g = load_algebra(args.algebra)
    v = _grading_arg(args, g)
    cone = positive_cone(v)
    r = positive_realization(v, args.mode)
    out.emit({"w": list(r.w), "weights": list(r.weights), "maxWeight": r.max_weight,
              "cone": [list(n) for n in cone.irredundant_rows()], "grading": grading_to_json(r.grading)},
             f"w = {r.w}\nmax weight {r.max_weight}\n{grading_text(r.grading)}")
    return 0


def cmd_heintze(args, out: Output) -> int:
    g = load_algebra(args.algebra)
    if args.a:
        a = [to_rat(x) for x in args.a.split(",")]
        d = heintze_derivation(_grading_arg(args, g), a)
    elif args.grading:
        d = heintze_from_realization(positive_realization(_grading_arg(args, g), OPTIMAL_MODE))
    else:
        s = stratification(g)
        if isinstance(s, NotStratifiable):
            d = heintze_from_realization(positive_realization(maximal_grading(g), OPTIMAL_MODE))
        else:
            d = heintze_derivation(s.grading)
    out.emit({"derivation": matrix_to_json(d)}, matrix_text(d))
    return 0


def cmd_lqp(args, out: Output) -> int:
    g = load_algebra(args.algebra)
    v = _grading_arg(args, g)
    cur = FormBasis.from_json(load_json(args.forms))
    prev = FormBasis.from_json(load_json(args.prev)) if args.prev else None
    r = optimize_bound(v, prev, cur)
    q = homogeneous_dimension(v, r.maximizer)
    out.emit({"degree": cur.degree, "value": format_rat(r.value), "maximizer": [format_rat(x) for x in r.maximizer],
              "attained": r.attained, "Q": format_rat(q)},
             f"degree {cur.degree}: sup deltaN_min/Q = {format_rat(r.value)} at a = "
             f"({', '.join(format_rat(x) for x in r.maximizer)}){'' if r.attained else ' (boundary)'}")
    return 0


def cmd_corpus(args, out: Output) -> int:
    if args.action == "list":
        names = corpus.names()
        out.emit(names, "\n".join(names))
    elif args.action == "show":
        if not args.names:
            raise ParseError("corpus show needs a name")
        g = load_algebra("corpus:" + args.names[0])
        out.emit(algebra_to_json(g), f"{g.name} (dim {g.dim}): {corpus.condensed(g.name) or 'abelian'}")
    else:
        rows = report_table2(corpus.names() if args.all else args.names)
        out.emit([r.to_json() for r in rows], table2_text(rows))
    return 0


COMMANDS = {
    "validate": cmd_validate, "derivations": cmd_derivations, "maximal": cmd_maximal, "enumerate": cmd_enumerate,
    "stratify": cmd_stratify, "positive": cmd_positive, "heintze": cmd_heintze, "lqp": cmd_lqp,
    "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lie-gradings", description="Gradings of Lie algebras over Q.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the result to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_cmd(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("algebra", help="JSON file or corpus:NAME")
        return p

    algebra_cmd("validate", "check antisymmetry and the Jacobi identity")
    algebra_cmd("derivations", "basis of the derivation algebra")
    algebra_cmd("maximal", "maximal grading")
    algebra_cmd("enumerate", "classify all torsion-free gradings")
    algebra_cmd("stratify", "stratification, if one exists")
    p = algebra_cmd("positive", "positive realization of a grading")
    p.add_argument("--grading", help="grading JSON file (default: the maximal grading)")
    p.add_argument("--mode", choices=(OPTIMAL_MODE, FAST_MODE), default=OPTIMAL_MODE)
    p = algebra_cmd("heintze", "diagonal Heintze derivation of a positive grading")
    p.add_argument("--grading", help="grading JSON file")
    p.add_argument("--a", help="comma-separated projection a_1,...,a_k")
    p = algebra_cmd("lqp", "maximize deltaN_min(h)/Q over the positivity cone")
    p.add_argument("--grading", help="grading JSON file (default: the maximal grading)")
    p.add_argument("--forms", required=True, help="form basis of degree h")
    p.add_argument("--prev", help="form basis of degree h-1 (default: constants when h = 1)")
    p = sub.add_parser("corpus", parents=[common], help="built-in algebras")
    p.add_argument("action", choices=("list", "show", "table2"))
    p.add_argument("names", nargs="*")
    p.add_argument("--all", action="store_true", help="table2 over the whole corpus")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        code = COMMANDS[args.command](args, out)
    except FieldExtensionRequired as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"minimal polynomial: {exc.polynomial}", file=sys.stderr)
        return EXIT_FIELD
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (LieGradingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = out.render()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
