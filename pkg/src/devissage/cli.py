"""Command-line interface: ``devissage <command> ...``.

Every command prints one JSON record ``{command, parameters, payload,
elapsed_ms, version}``.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .completion import max_class_quotient
from .covers import BudgetExceeded, ClassViolation, count_connected_covers, curve_group, iter_epis
from .finite_groups import GroupError, identify, parse_class_spec, parse_group_spec
from .presentations import (
    FpPresentation,
    PresentationError,
    abelianization,
    fill_puncture,
    format_presentation,
    parse_presentation,
    presentation_dict,
    surface_group,
    tietze_eliminate,
)
from .subgroups import (
    ChiKernel,
    CosetLimitExceeded,
    expand,
    mu_n_kernel_basis,
    schreier_generators,
    schreier_rewrite,
)
from .verify import SUITES
from .words import Word, WordError

DOMAIN_ERRORS = (GroupError, PresentationError, WordError, BudgetExceeded, ClassViolation,
                 CosetLimitExceeded, OSError)


class UsageError(Exception):
    pass


def _add_curve_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--punctures", type=int, default=0)
    p.add_argument("--file", help="presentation file (gens:/rel:/ram: lines)")


def _presentation_from(args) -> FpPresentation:
    if args.file:
        with open(args.file) as fh:
            return parse_presentation(fh.read())
    if args.genus is None:
        raise UsageError("give --genus [--punctures] or --file")
    return curve_group(args.genus, args.punctures) if args.punctures else surface_group(args.genus)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    parser = argparse.ArgumentParser(prog="devissage", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present", parents=[common], help="print a curve-group presentation")
    _add_curve_args(p)
    p.add_argument("--tietze", action="store_true", help="simplify by Tietze eliminations")

    p = sub.add_parser("abelianize", parents=[common], help="abelian invariants of a presentation")
    _add_curve_args(p)

    p = sub.add_parser("fill", parents=[common], help="fill punctures (kill ramification words)")
    _add_curve_args(p)
    p.add_argument("--label", action="append", default=[], help="ramification label (repeatable)")
    p.add_argument("--all", action="store_true", help="fill every puncture")

    p = sub.add_parser("kernel-basis", parents=[common], help="explicit kernel bases")
    p.add_argument("--kind", required=True, help="mu:N or chi:g,n")
    p.add_argument("--rewrite", help="kernel word to rewrite in the basis")

    p = sub.add_parser("rewrite", parents=[common], help="rewrite a kernel word in a basis")
    p.add_argument("--kind", required=True, help="mu:N or chi:g,n")
    p.add_argument("--word", required=True)

    p = sub.add_parser("quotient", parents=[common], help="maximal class quotient of a finite group")
    p.add_argument("--group", required=True)
    p.add_argument("--class", dest="klass", required=True)

    p = sub.add_parser("covers", parents=[common], help="Galois cover census")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, default=0)
    p.add_argument("--group", required=True)
    p.add_argument("--class", dest="klass", default="sol")
    p.add_argument("--list", action="store_true", help="include every epimorphism")
    p.add_argument("--cache", help="JSON-lines census cache")

    p = sub.add_parser("verify", parents=[common], help="run a named check suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    return parser


def _parse_kind(kind: str):
    name, _, rest = kind.partition(":")
    try:
        if name == "mu":
            return "mu", (int(rest),)
        if name == "chi":
            g, n = (int(x) for x in rest.split(","))
            return "chi", (g, n)
    except ValueError:
        pass
    raise UsageError(f"bad --kind {kind!r}; expected mu:N or chi:g,n")


def _basis_for(kind: str):
    name, params = _parse_kind(kind)
    if name == "mu":
        return mu_n_kernel_basis(*params), None
    ck = ChiKernel(*params)
    return ck.basis(), ck


def _rewrite(kind: str, text: str) -> dict:
    basis, ck = _basis_for(kind)
    rank = basis.table.presentation.rank
    w = Word.parse(text, rank)
    if ck is not None:
        factors = ck.rewrite(w)
    else:
        # Schreier rewriting, relabelled onto the (identical) explicit basis
        by_word = {v.letters: lab for lab, v in basis.generators}
        schreier = schreier_generators(basis.table).label_map()
        factors = [(by_word[schreier[lab].letters], s) for lab, s in schreier_rewrite(basis.table, w)]
    verified = expand(factors, basis, rank) == w
    return {"word": str(w), "factors": [{"label": lab, "exp": s} for lab, s in factors], "verified": verified}


def cmd_present(args) -> dict:
    P = _presentation_from(args)
    if args.tietze:
        P = tietze_eliminate(P)
    return {"presentation": presentation_dict(P), "text": format_presentation(P)}


def cmd_abelianize(args) -> dict:
    return {"abelianization": abelianization(_presentation_from(args)).as_dict()}


def cmd_fill(args) -> dict:
    P = _presentation_from(args)
    labels = [lab for lab, _ in P.ramification_words] if args.all else args.label
    if not labels:
        raise UsageError("give --label or --all")
    for lab in labels:
        P = fill_puncture(P, lab)
    return {"filled": labels, "presentation": presentation_dict(P),
            "simplified": presentation_dict(tietze_eliminate(P)),
            "abelianization": abelianization(P).as_dict()}


def cmd_kernel_basis(args) -> dict:
    basis, _ = _basis_for(args.kind)
    out = basis.as_dict()
    out["kind"] = basis.kind
    if args.rewrite is not None:
        out["rewrite"] = _rewrite(args.kind, args.rewrite)
    return out


def cmd_rewrite(args) -> dict:
    return _rewrite(args.kind, args.word)


def cmd_quotient(args) -> dict:
    G = parse_group_spec(args.group)
    q = max_class_quotient(G, parse_class_spec(args.klass))
    return {"order": G.order, "kernel_order": len(q.kernel), "quotient_order": q.quotient.order,
            "quotient_spec": identify(q.quotient), "cayley_table": [list(r) for r in q.quotient.table]}


def cmd_covers(args) -> dict:
    census = count_connected_covers(args.genus, args.punctures, args.group, args.klass,
                                    jobs=args.jobs, cache=args.cache)
    out = census.as_dict()
    if args.list:
        G = parse_group_spec(args.group)
        out["epimorphisms"] = [list(h) for h in iter_epis(curve_group(args.genus, args.punctures), G)]
    return out


def cmd_verify(args) -> dict:
    kwargs = {"seed": args.seed}
    if args.max is not None:
        kwargs["max"] = args.max
    if args.count is not None:
        kwargs["count"] = args.count
    cases = SUITES[args.suite](**kwargs)
    passed = sum(c.passed for c in cases)
    return {"suite": args.suite, "cases": [c.as_dict() for c in cases], "passed": passed,
            "failed": len(cases) - passed}


COMMANDS = {
    "present": cmd_present,
    "abelianize": cmd_abelianize,
    "fill": cmd_fill,
    "kernel-basis": cmd_kernel_basis,
    "rewrite": cmd_rewrite,
    "quotient": cmd_quotient,
    "covers": cmd_covers,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv`` and execute; returns the result record and the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return {"error": "usage", "reason": "invalid arguments"}, 2 if exc.code else 0
    params = {("class" if k == "klass" else k): v for k, v in vars(args).items()
              if k not in ("command", "format", "jobs")}
    start = time.perf_counter()
    try:
        payload = COMMANDS[args.command](args)
    except UsageError as exc:
        return {"command": args.command, "error": "usage", "reason": str(exc)}, 2
    except DOMAIN_ERRORS as exc:
        return {"command": args.command, "error": type(exc).__name__, "reason": str(exc)}, 1
    result = {
        "command": args.command,
        "parameters": params,
        "payload": payload,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
        "version": __version__,
    }
    result["_format"] = args.format
    return result, 0


def _tsv(result: dict) -> str:
    lines = []
    payload = result.get("payload", result)
    if result.get("command") == "verify":
        return "\n".join(f"{c['case']}\t{'PASS' if c['pass'] else 'FAIL'}\t{c.get('detail', '')}"
                         for c in payload["cases"])
    for k, v in payload.items():
        if k == "epimorphisms":
            lines += ["epi\t" + "\t".join(map(str, h)) for h in v]
        else:
            lines.append(f"{k}\t{v if isinstance(v, (int, float, str)) else json.dumps(v)}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    result, code = run(argv)
    fmt = result.pop("_format", "json")
    if code == 2 and "command" not in result:
        return code  # argparse already printed the usage message
    out = sys.stdout if code == 0 else sys.stderr
    if fmt == "tsv" and code == 0:
        print(_tsv(result), file=out)
    else:
        print(json.dumps(result, indent=2 if code == 0 else None), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
