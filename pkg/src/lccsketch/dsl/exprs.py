"""Concrete syntax for object and morphism expressions.

Morphism syntax is parsed into a small raw tree first and then elaborated
against an expected boundary, so bare forms such as ``p1``, ``leg(u)`` or
``pre(h)`` can omit the annotation that the surrounding boundary already
determines.  The printer does the converse: it drops an annotation only when
elaboration in the same context recovers it.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import IllTyped, ParseError
from ..fincat import FinCategory
from ..lexpr import (
    MOR_KEYWORDS,
    Bang,
    Comp,
    Gen,
    GenMor,
    Id,
    IHom,
    Lim,
    LimLeg,
    LimTuple,
    MorExpr,
    ObjExpr,
    PbProj1,
    PbProj2,
    PbTuple,
    Pi,
    PiDisplay,
    PiTranspose,
    PiUntranspose,
    Poly,
    PolyMor,
    Postcompose,
    Precompose,
    Pullback,
    Terminal,
    fmt_name,
    infer_boundary,
)
from .lexer import TokenStream

OBJ_HEADS = ("gen", "pb", "pi", "ihom", "poly", "lim")


class NeedsContext(IllTyped):
    """A bare form whose annotation cannot be recovered from the available boundary."""


# -- raw morphism syntax ----------------------------------------------------------------------


@dataclass(frozen=True)
class RName:
    name: str


@dataclass(frozen=True)
class RApp:
    head: str
    annot: object  # ObjExpr, raw morphism, or None
    args: tuple


@dataclass(frozen=True)
class RComp:
    g: object
    f: object


class ExprParser:
    """Parses expressions from a token stream; ``shapes`` resolves ``lim{REF: ...}``."""

    def __init__(self, ts: TokenStream, c: FinCategory, shapes: dict | None = None):
        self.ts = ts
        self.c = c
        self.shapes = shapes or {}

    # objects

    def obj(self) -> ObjExpr:
        ts = self.ts
        tok = ts.peek()
        if tok.kind == "string":
            ts.next()
            return Gen(tok.value)
        if tok.kind != "ident":
            raise ts.error("expected an object expression")
        head = tok.text
        if head == "1":
            ts.next()
            return Terminal()
        if head in OBJ_HEADS and (ts.at("(", 1) or (head == "lim" and ts.at("{", 1))):
            ts.next()
            if head == "lim":
                return self._lim()
            ts.expect("(")
            if head == "gen":
                out: ObjExpr = Gen(ts.name("an object name"))
            elif head in ("pb", "pi"):
                f = self.synth(self.raw())
                ts.expect(";")
                g = self.synth(self.raw())
                out = Pullback(f, g) if head == "pb" else Pi(f, g)
            elif head == "ihom":
                x = self.obj()
                ts.expect(",")
                out = IHom(x, self.obj())
            else:
                f = self.synth(self.raw())
                ts.expect(";")
                out = Poly(f, self.obj())
            ts.expect(")")
            return out
        ts.next()
        return Gen(head)

    def _lim(self) -> Lim:
        ts = self.ts
        ts.expect("{")
        ref_tok = ts.peek()
        ref = ts.name("a shape name")
        if ref not in self.shapes:
            raise ts.error(f"unknown shape {ref}", ref_tok)
        shape = self.shapes[ref]
        ts.expect(":")
        objs: dict = {}
        raw_mors: list = []
        while not ts.at("}"):
            key_tok = ts.peek()
            key = ts.name("a cell of the shape")
            ts.expect("=")
            if key in shape.objects:
                objs[key] = self.obj()
            elif key in shape.morphisms:
                raw_mors.append((key, self.raw(), key_tok))
            else:
                raise ts.error(f"{key} is not a cell of shape {ref}", key_tok)
            if not ts.accept(","):
                break
        ts.expect("}")
        mors = []
        for key, raw, tok in raw_mors:
            d, c = shape.morphisms[key]
            mors.append((key, self._elab_at(raw, objs.get(d), objs.get(c), tok)))
        return Lim(shape, ref, tuple(objs.items()), tuple(mors))

    # morphisms

    def raw(self):
        left = self._primary()
        while self.ts.accept("."):
            left = RComp(left, self._primary())
        return left

    def _primary(self):
        ts = self.ts
        tok = ts.peek()
        if ts.accept("("):
            inner = self.raw()
            ts.expect(")")
            return inner
        if tok.kind == "string":
            ts.next()
            return RName(tok.value)
        if tok.kind != "ident":
            raise ts.error("expected a morphism expression")
        head = tok.text
        bare_name = head in ("p1", "p2") or ts.at("(", 1) or ts.at("[", 1)
        if head not in MOR_KEYWORDS or not bare_name:
            ts.next()
            return RName(head)
        ts.next()
        annot = None
        if ts.accept("["):
            annot = self.raw() if head in ("lam", "unlam") else self.obj()
            ts.expect("]")
        if head in ("p1", "p2"):
            return RApp(head, annot, ())
        ts.expect("(")
        if head in ("id", "bang"):
            args: tuple = (self.obj(),)
        elif head == "leg":
            args = (ts.name("a shape object"),)
        elif head == "ltuple":
            legs = []
            while not ts.at(")"):
                i = ts.name("a shape object")
                ts.expect(":")
                legs.append((i, self.raw()))
                if not ts.accept(","):
                    break
            args = tuple(legs)
        elif head in ("tuple", "polym", "disp"):
            a = self.raw()
            ts.expect(";")
            args = (a, self.raw())
        else:
            args = (self.raw(),)
        ts.expect(")")
        return RApp(head, annot, args)

    def mor(self, dom: ObjExpr | None = None, cod: ObjExpr | None = None) -> MorExpr:
        tok = self.ts.peek()
        return self._elab_at(self.raw(), dom, cod, tok)

    def _elab_at(self, raw, dom, cod, tok) -> MorExpr:
        try:
            return elaborate(self.c, raw, dom, cod)
        except IllTyped as err:
            raise IllTyped(f"{self.ts.source}:{tok.line}:{tok.col}", err.reason) from None

    def synth(self, raw) -> MorExpr:
        return elaborate(self.c, raw, None, None)


# -- elaboration ----------------------------------------------------------------------------


def _boundary(c, e):
    return infer_boundary(c, e)


def elaborate(c: FinCategory, raw, dom: ObjExpr | None, cod: ObjExpr | None) -> MorExpr:
    if isinstance(raw, RName):
        return GenMor(raw.name)
    if isinstance(raw, RComp):
        try:
            f = elaborate(c, raw.f, dom, None)
        except NeedsContext:
            g = elaborate(c, raw.g, None, cod)
            return Comp(g, elaborate(c, raw.f, dom, _boundary(c, g)[0]))
        return Comp(elaborate(c, raw.g, _boundary(c, f)[1], cod), f)
    h, a, args = raw.head, raw.annot, raw.args
    if h == "id":
        return Id(args[0])
    if h == "bang":
        return Bang(args[0])
    if h in ("p1", "p2"):
        p = a if a is not None else dom
        if not isinstance(p, Pullback):
            raise NeedsContext(h, f"{h} needs a pullback domain")
        return PbProj1(p) if h == "p1" else PbProj2(p)
    if h == "tuple":
        p = a if a is not None else cod
        if not isinstance(p, Pullback):
            raise NeedsContext(h, "tuple needs a pullback codomain")
        x = _boundary(c, p.f)[0]
        y = _boundary(c, p.g)[0]
        return PbTuple(p, elaborate(c, args[0], dom, x), elaborate(c, args[1], dom, y))
    if h == "lam":
        if a is not None:
            g = elaborate(c, a, None, None)
        elif isinstance(cod, Pi):
            g = cod.g
        else:
            raise NeedsContext(h, "lam needs a dependent product codomain")
        return PiTranspose(g, elaborate(c, args[0], None, _boundary(c, g)[0]))
    if h == "unlam":
        if a is not None:
            p = elaborate(c, a, None, None)
        elif isinstance(dom, Pullback):
            p = dom.f
        else:
            raise NeedsContext(h, "unlam needs a pullback domain")
        return PiUntranspose(p, elaborate(c, args[0], _boundary(c, p)[0], None))
    if h == "leg":
        lim = a if a is not None else dom
        if not isinstance(lim, Lim):
            raise NeedsContext(h, "leg needs a limit domain")
        return LimLeg(lim, args[0])
    if h == "ltuple":
        lim = a if a is not None else cod
        if not isinstance(lim, Lim):
            raise NeedsContext(h, "ltuple needs a limit codomain")
        objs = dict(lim.objs)
        return LimTuple(lim, tuple((i, elaborate(c, m, dom, objs.get(i))) for i, m in args))
    if h == "pre":
        if a is not None:
            y = a
        elif isinstance(dom, IHom):
            y = dom.y
        elif isinstance(cod, IHom):
            y = cod.y
        else:
            raise NeedsContext(h, "pre needs an exponential boundary")
        hd = cod.x if isinstance(cod, IHom) else None
        hc = dom.x if isinstance(dom, IHom) else None
        return Precompose(elaborate(c, args[0], hd, hc), y)
    if h == "post":
        if a is not None:
            x = a
        elif isinstance(dom, IHom):
            x = dom.x
        elif isinstance(cod, IHom):
            x = cod.x
        else:
            raise NeedsContext(h, "post needs an exponential boundary")
        hd = dom.y if isinstance(dom, IHom) else None
        hc = cod.y if isinstance(cod, IHom) else None
        return Postcompose(elaborate(c, args[0], hd, hc), x)
    if h == "polym":
        f = elaborate(c, args[0], None, None)
        hd = dom.x if isinstance(dom, Poly) else None
        hc = cod.x if isinstance(cod, Poly) else None
        return PolyMor(f, elaborate(c, args[1], hd, hc))
    if h == "disp":
        return PiDisplay(elaborate(c, args[0], None, None), elaborate(c, args[1], None, None))
    raise IllTyped(h, "unknown form")


# -- printing in context ----------------------------------------------------------------------------


def print_obj(c: FinCategory, x: ObjExpr) -> str:
    if isinstance(x, Gen):
        return f"gen({fmt_name(x.name)})"
    if isinstance(x, Terminal):
        return "1"
    if isinstance(x, Pullback):
        return f"pb({print_mor(c, x.f)}; {print_mor(c, x.g)})"
    if isinstance(x, Pi):
        return f"pi({print_mor(c, x.f)}; {print_mor(c, x.g)})"
    if isinstance(x, IHom):
        return f"ihom({print_obj(c, x.x)}, {print_obj(c, x.y)})"
    if isinstance(x, Poly):
        return f"poly({print_mor(c, x.f)}; {print_obj(c, x.x)})"
    if isinstance(x, Lim):
        objs = dict(x.objs)
        parts = [f"{fmt_name(o)} = {print_obj(c, e)}" for o, e in x.objs]
        for u, m in x.mors:
            d, cd = x.shape.morphisms[u]
            parts.append(f"{fmt_name(u)} = {print_mor(c, m, objs.get(d), objs.get(cd))}")
        return f"lim{{{fmt_name(x.shape_ref)}: {', '.join(parts)}}}"
    raise TypeError(f"not an object expression: {x!r}")


def _shapes_of(e, out: dict):
    if isinstance(e, Lim):
        out[e.shape_ref] = e.shape
    if hasattr(e, "__dataclass_fields__"):
        for name in e.__dataclass_fields__:
            v = getattr(e, name)
            if isinstance(v, tuple):
                for item in v:
                    if isinstance(item, tuple):
                        for part in item:
                            _shapes_of(part, out)
                    else:
                        _shapes_of(item, out)
            else:
                _shapes_of(v, out)


def print_mor(c: FinCategory, e: MorExpr, dom: ObjExpr | None = None, cod: ObjExpr | None = None) -> str:
    """Shortest form of ``e`` that elaborates back to ``e`` at boundary ``(dom, cod)``."""
    text = _pm(c, e, dom, cod, False)
    if dom is None and cod is None:
        return text
    shapes: dict = {}
    _shapes_of(e, shapes)
    try:
        ts = TokenStream(text)
        back = ExprParser(ts, c, shapes).mor(dom, cod)
        if back == e and ts.at_eof():
            return text
    except (ParseError, IllTyped):
        pass
    return _pm(c, e, None, None, False)


def _pm(c, e, dom, cod, nested) -> str:
    if isinstance(e, GenMor):
        return fmt_name(e.name, MOR_KEYWORDS)
    if isinstance(e, Id):
        return f"id({print_obj(c, e.x)})"
    if isinstance(e, Bang):
        return f"bang({print_obj(c, e.x)})"
    if isinstance(e, Comp):
        try:
            cod_f = infer_boundary(c, e.f)[1]
        except IllTyped:
            cod_f = None
        text = f"{_pm(c, e.g, cod_f, cod, True)} . {_pm(c, e.f, dom, None, True)}"
        return f"({text})" if nested else text
    if isinstance(e, (PbProj1, PbProj2)):
        name = "p1" if isinstance(e, PbProj1) else "p2"
        return name if dom == e.p else f"{name}[{print_obj(c, e.p)}]"
    if isinstance(e, PbTuple):
        try:
            x, y = infer_boundary(c, e.p.f)[0], infer_boundary(c, e.p.g)[0]
        except IllTyped:
            x = y = None
        body = f"({_pm(c, e.h, dom, x, False)}; {_pm(c, e.k, dom, y, False)})"
        return "tuple" + body if cod == e.p else f"tuple[{print_obj(c, e.p)}]{body}"
    if isinstance(e, PiTranspose):
        try:
            dg = infer_boundary(c, e.g)[0]
        except IllTyped:
            dg = None
        body = f"({_pm(c, e.h, None, dg, False)})"
        if isinstance(cod, Pi) and cod.g == e.g:
            return "lam" + body
        return f"lam[{_pm(c, e.g, None, None, False)}]{body}"
    if isinstance(e, PiUntranspose):
        try:
            dp = infer_boundary(c, e.p)[0]
        except IllTyped:
            dp = None
        body = f"({_pm(c, e.k, dp, None, False)})"
        if isinstance(dom, Pullback) and dom.f == e.p:
            return "unlam" + body
        return f"unlam[{_pm(c, e.p, None, None, False)}]{body}"
    if isinstance(e, LimLeg):
        return f"leg({fmt_name(e.i)})" if dom == e.lim else f"leg[{print_obj(c, e.lim)}]({fmt_name(e.i)})"
    if isinstance(e, LimTuple):
        objs = dict(e.lim.objs)
        legs = ", ".join(f"{fmt_name(i)}: {_pm(c, m, dom, objs.get(i), False)}" for i, m in e.legs)
        return f"ltuple({legs})" if cod == e.lim else f"ltuple[{print_obj(c, e.lim)}]({legs})"
    if isinstance(e, Precompose):
        hd = cod.x if isinstance(cod, IHom) else None
        hc = dom.x if isinstance(dom, IHom) else None
        body = f"({_pm(c, e.h, hd, hc, False)})"
        if isinstance(dom, IHom):
            bare = dom.y == e.y
        else:
            bare = isinstance(cod, IHom) and cod.y == e.y
        return "pre" + body if bare else f"pre[{print_obj(c, e.y)}]{body}"
    if isinstance(e, Postcompose):
        hd = dom.y if isinstance(dom, IHom) else None
        hc = cod.y if isinstance(cod, IHom) else None
        body = f"({_pm(c, e.h, hd, hc, False)})"
        if isinstance(dom, IHom):
            bare = dom.x == e.x
        else:
            bare = isinstance(cod, IHom) and cod.x == e.x
        return "post" + body if bare else f"post[{print_obj(c, e.x)}]{body}"
    if isinstance(e, PolyMor):
        hd = dom.x if isinstance(dom, Poly) else None
        hc = cod.x if isinstance(cod, Poly) else None
        return f"polym({_pm(c, e.f, None, None, False)}; {_pm(c, e.h, hd, hc, False)})"
    if isinstance(e, PiDisplay):
        return f"disp({_pm(c, e.f, None, None, False)}; {_pm(c, e.g, None, None, False)})"
    raise TypeError(f"not a morphism expression: {e!r}")


def parse_expression(text: str, c: FinCategory, shapes: dict | None = None, source: str = "<expr>"):
    """Parse a standalone object or morphism expression (morphisms must be synthesizable)."""
    ts = TokenStream(text, source)
    p = ExprParser(ts, c, shapes)
    tok = ts.peek()
    if tok.kind == "ident" and (tok.text == "1" or (tok.text in OBJ_HEADS and (ts.at("(", 1) or ts.at("{", 1)))):
        out = p.obj()
    else:
        out = p.mor()
    if not ts.at_eof():
        raise ts.error(f"unexpected {ts.peek().text!r} after the expression")
    return out


__all__ = ["ExprParser", "NeedsContext", "elaborate", "parse_expression", "print_mor", "print_obj"]
