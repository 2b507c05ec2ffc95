"""``lccsketch``: validate sketches, check and enumerate models, evaluate expressions, check algebras.

Exit status: 0 success, 1 a check failed or an input is invalid or ill-typed,
2 a file does not parse, 3 a guardrail was exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .errors import GuardrailExceeded, ParseError, SketchError
from .finset import DEFAULT_CEILING, FinSetMor, FinSetObj, FinSetStructure, fmt_mor, fmt_set
from .lexpr import Interpretation, ObjExpr, check_obj, eval_mor, eval_obj, infer_boundary
from .sigalg import satisfies
from .sketch import check_model, enumerate_models, validate_sketch

OK, FAILED, PARSE, GUARD = 0, 1, 2, 3

_PLAIN = re.compile(r'[^\s"=]+\Z')


def _val(v) -> str:
    v = str(v)
    return v if _PLAIN.match(v) else json.dumps(v, ensure_ascii=False)


def record(rtype: str, **fields) -> str:
    """One machine-format line: a record type followed by ``key=value`` pairs."""
    return " ".join([rtype] + [f"{k}={_val(v)}" for k, v in fields.items()])


class Report:
    def __init__(self, fmt: str, out):
        self.machine = fmt == "machine"
        self.out = out

    def emit(self, text: str | None, rtype: str, **fields):
        if self.machine:
            print(record(rtype, **fields), file=self.out)
        elif text is not None:
            print(text, file=self.out)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as err:
        raise ParseError(f"cannot read file: {err.strerror}", 0, 0, path) from None


def _sketch(path: str):
    from .dsl import parse_sketch

    return parse_sketch(_read(path), path)


# -- commands ----------------------------------------------------------------------------------


def cmd_validate(args, rep: Report) -> int:
    s = _sketch(args.sketch)
    try:
        validate_sketch(s)
    except SketchError as err:
        marking = getattr(err, "marking", "-")
        rep.emit(f"invalid: {err}", "validate", status="invalid", marking=marking,
                 error=type(err).__name__, message=str(err))
        return FAILED
    names = ", ".join(m.name for m in s.markings) or "none"
    rep.emit(f"valid: {len(s.base.objects)} objects, {len(s.base.morphisms)} morphisms, markings: {names}",
             "validate", status="valid", objects=len(s.base.objects), morphisms=len(s.base.morphisms),
             markings=len(s.markings))
    return OK


def cmd_check(args, rep: Report) -> int:
    from .dsl import parse_model

    s = validate_sketch(_sketch(args.sketch))
    f = parse_model(_read(args.model), s.base, args.model)
    report = check_model(s, f, FinSetStructure(args.ceiling))
    for r in report.results:
        verdict = "FOUND" if r.found else "FAIL"
        if r.found:
            rep.emit(f"{r.marking}: FOUND", "marking", name=r.marking, verdict=verdict)
            m = s.marking(r.marking)
            for x in sorted(r.alpha):
                a = r.alpha[x]
                ident = a == FinSetMor.identity(a.dom)
                note = "identity" if ident else fmt_mor(a)
                rep.emit(f"  alpha[{x}] = {note}", "alpha", marking=r.marking, object=x,
                         identity=str(ident).lower(), strict=str(x in m.j.obj_map.values()).lower(),
                         map=fmt_mor(a))
        else:
            rep.emit(f"{r.marking}: FAIL ({r.reason})", "marking", name=r.marking, verdict=verdict,
                     reason=r.reason)
    failed = sum(not r.found for r in report.results)
    rep.emit(f"{'ok' if report.ok else 'not a model'}: {len(report.results) - failed}/{len(report.results)} markings found",
             "summary", verdict="FOUND" if report.ok else "FAIL", markings=len(report.results), failed=failed)
    return OK if report.ok else FAILED


def _fmt_model(F) -> list[tuple[str, str]]:
    base = F.shape
    parts = [(x, fmt_set(F.obj(x))) for x in sorted(base.objects)]
    parts += [(u, fmt_mor(F.mor(u))) for u in sorted(base.generators())]
    return parts


def cmd_enumerate(args, rep: Report) -> int:
    s = validate_sketch(_sketch(args.sketch))
    models = enumerate_models(s, args.bound, ceiling=args.ceiling, structure=FinSetStructure(DEFAULT_CEILING))
    for i, m in enumerate(models, 1):
        parts = _fmt_model(m.functor)
        rep.emit(f"model {i}: " + "; ".join(f"{k} = {v}" for k, v in parts), "model", index=i,
                 **{k: v for k, v in parts})
    print(f"count={len(models)}", file=rep.out)
    return OK


def cmd_eval(args, rep: Report) -> int:
    from .dsl import parse_category_file, parse_expression, parse_model

    cat, shapes = parse_category_file(_read(args.category), args.category)
    base = parse_model(_read(args.interpretation), cat, args.interpretation)
    expr = parse_expression(args.expression, cat, shapes, "<expression>")
    interp = Interpretation(base, FinSetStructure(args.ceiling))
    if isinstance(expr, ObjExpr):
        check_obj(cat, expr)
        value: FinSetObj = eval_obj(interp, expr)
        rep.emit(fmt_set(value), "object", size=len(value), value=fmt_set(value))
    else:
        infer_boundary(cat, expr)
        m = eval_mor(interp, expr)
        rep.emit(fmt_mor(m), "morphism", dom=fmt_set(m.dom), cod=fmt_set(m.cod), value=fmt_mor(m))
    return OK


def cmd_check_algebra(args, rep: Report) -> int:
    from .dsl import build_algebra, parse_algebra, parse_signature

    sig, eqs = parse_signature(_read(args.signature), args.signature)
    spec = parse_algebra(_read(args.algebra), args.algebra)
    alg = build_algebra(sig, spec)
    report = satisfies(alg, eqs)
    for f in report.failures:
        env = ", ".join(f"{k}={v}" for k, v in f.environment)
        rep.emit(f"FAIL {f.equation} @ {f.arity} [{env}]: {f.lhs} != {f.rhs}", "failure",
                 equation=f.equation, arity=f.arity, environment=env, lhs=f.lhs, rhs=f.rhs)
    verdict = "satisfied" if report.ok else "violated"
    rep.emit(f"{verdict}: {len(eqs.equations)} equations, {report.environments} environments, "
             f"{len(report.failures)} failures, {report.skipped} skipped",
             "summary", verdict=verdict, equations=len(eqs.equations), environments=report.environments,
             failures=len(report.failures), skipped=report.skipped)
    return OK if report.ok else FAILED


# -- driver ----------------------------------------------------------------------------------


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--ceiling", type=_positive, default=DEFAULT_CEILING,
                        help="guardrail on the size of intermediate sets and search spaces")
    common.add_argument("--seed", type=int, default=0, help="accepted for uniformity; commands are deterministic")
    p = argparse.ArgumentParser(prog="lccsketch", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", parents=[common], help="check that a sketch file is well formed")
    v.add_argument("sketch")
    v.set_defaults(run=cmd_validate)
    c = sub.add_parser("check", parents=[common], help="check a model against every marking")
    c.add_argument("sketch")
    c.add_argument("model")
    c.set_defaults(run=cmd_check)
    e = sub.add_parser("enumerate", parents=[common], help="list the models with sets of size <= bound")
    e.add_argument("sketch")
    e.add_argument("--bound", type=_nonneg, default=2)
    e.set_defaults(run=cmd_enumerate)
    ev = sub.add_parser("eval", parents=[common], help="evaluate an expression in an interpretation")
    ev.add_argument("category")
    ev.add_argument("interpretation")
    ev.add_argument("expression")
    ev.set_defaults(run=cmd_eval)
    a = sub.add_parser("check-algebra", parents=[common], help="check an algebra against a signature's equations")
    a.add_argument("signature")
    a.add_argument("algebra")
    a.set_defaults(run=cmd_check_algebra)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return PARSE if exc.code else OK
    rep = Report(args.format, out)
    try:
        return args.run(args, rep)
    except ParseError as err:
        rep.emit(f"parse error: {err}", "error", error="ParseError", line=err.line, col=err.col, message=str(err))
        return PARSE
    except GuardrailExceeded as err:
        rep.emit(f"guardrail exceeded: {err}", "error", error="GuardrailExceeded", message=str(err))
        return GUARD
    except SketchError as err:
        marking = getattr(err, "marking", None)
        fields = {"error": type(err).__name__}
        if marking:
            fields["marking"] = marking
        rep.emit(f"error: {err}", "error", message=str(err), **fields)
        return FAILED


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
