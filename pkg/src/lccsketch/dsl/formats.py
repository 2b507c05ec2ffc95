"""Readers and writers for the text formats.

Every format is line-agnostic and shares the tokenizer in :mod:`.lexer`:

* categories: ``object A``, ``arrow f : A -> B``, ``equal f.g = h``;
* sketches: a base ``category { ... }``, named ``category W { ... }`` shapes
  referenced from ``lim{W: ...}``, and ``marking`` blocks;
* models and interpretations: ``set X = {...}`` and ``fun f : X -> Y = {a |-> b}``;
* signatures: ``enrichment``, named categories, ``operation`` and ``equation``;
* algebras: a ``carrier`` block followed by ``nu`` tables or ``derive lex``.

Writers are deterministic and their output reads back to an equal value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import FunctorialityViolation, IllTyped, ParseError, UnboundGenerator
from ..fincat import FinCategory, Functor, Presentation, present_category
from ..finset import FinSetMor, FinSetObj, Fn, SetFunctor, fmt_set, fmt_value
from ..lexpr import ObjExpr, fmt_name
from ..sigalg import (
    Algebra,
    AlgebraError,
    Equation,
    EquationSet,
    Operation,
    OpMor,
    OpObj,
    Signature,
    TabulatedOperation,
    TComp,
    TId,
    Var,
    fmt_term,
    identity_comps,
)
from ..sketch import Marking, Sketch
from .exprs import ExprParser, elaborate, print_mor, print_obj, _shapes_of
from .lexer import TokenStream

INDENT = "  "


# -- categories ---------------------------------------------------------------------------


def _path(ts: TokenStream, arrows: dict):
    tok = ts.peek()
    if tok.kind == "ident" and tok.text == "id" and ts.at("(", 1):
        ts.next()
        ts.expect("(")
        v = ts.name("an object")
        ts.expect(")")
        return tok, (v, ())
    names = [ts.name("an arrow")]
    while ts.accept("."):
        names.append(ts.name("an arrow"))
    if names[0] not in arrows:
        raise ts.error(f"unknown arrow {names[0]}", tok)
    return tok, (arrows[names[0]][0], tuple(names))


def parse_category_body(ts: TokenStream, name: str | None = None, end: str | None = "}") -> FinCategory:
    """Read ``object``/``arrow``/``equal`` statements up to ``end`` (not consumed)."""
    vertices: list[str] = []
    arrows: dict[str, tuple[str, str]] = {}
    relations = []
    bound = 32
    while not (ts.at_eof() if end is None else ts.at(end)):
        tok = ts.peek()
        if ts.accept("object"):
            v = ts.name("an object name")
            if v in vertices:
                raise ts.error(f"duplicate object {v}", tok)
            vertices.append(v)
        elif ts.accept("arrow"):
            a = ts.name("an arrow name")
            ts.expect(":")
            d_tok = ts.peek()
            d = ts.name("a domain")
            ts.expect("->")
            c_tok = ts.peek()
            c = ts.name("a codomain")
            for v, vt in ((d, d_tok), (c, c_tok)):
                if v not in vertices:
                    raise ts.error(f"undeclared object {v}", vt)
            if a in arrows:
                raise ts.error(f"duplicate arrow {a}", tok)
            arrows[a] = (d, c)
        elif ts.accept("equal"):
            _, lhs = _path(ts, arrows)
            ts.expect("=")
            _, rhs = _path(ts, arrows)
            relations.append((lhs, rhs))
        elif ts.accept("bound"):
            n_tok = ts.next()
            if not n_tok.text.isdigit():
                raise ts.error("expected a number", n_tok)
            bound = int(n_tok.text)
        else:
            if end is None and tok.kind == "ident" and tok.text == "category":
                break
            raise ts.error(f"expected object, arrow or equal, found {tok.text or 'end of input'!r}")
    pres = Presentation(tuple(vertices), tuple((a, d, c) for a, (d, c) in arrows.items()),
                        tuple(relations), bound)
    try:
        cat = present_category(pres)
    except ParseError:
        raise
    except Exception as err:  # ill-typed relation or saturation failure
        raise ts.error(f"bad category presentation: {err}")
    cat.name = name
    return cat


def _fmt_path(v: str, path: tuple) -> str:
    if not path:
        return f"id({fmt_name(v)})"
    return ".".join(fmt_name(a) for a in path)


def category_lines(c: FinCategory) -> list[str]:
    """Statements presenting ``c``: its presentation if it has one, otherwise its whole table."""
    lines = [f"object {fmt_name(o)}" for o in sorted(c.objects)]
    p = c.presentation
    if p is not None:
        for a, d, cd in sorted(p.arrows):
            lines.append(f"arrow {fmt_name(a)} : {fmt_name(d)} -> {fmt_name(cd)}")
        rels = sorted(f"equal {_fmt_path(*lhs)} = {_fmt_path(*rhs)}" for lhs, rhs in p.relations)
        if p.saturation_bound != 32:
            lines.append(f"bound {p.saturation_bound}")
        return lines + rels
    gens = sorted(c.non_identity())
    for a in gens:
        d, cd = c.morphisms[a]
        lines.append(f"arrow {fmt_name(a)} : {fmt_name(d)} -> {fmt_name(cd)}")
    rels = []
    for (g, f), h in c.compose_table.items():
        if c.is_identity(g) or c.is_identity(f):
            continue
        rhs = f"id({fmt_name(c.dom(h))})" if c.is_identity(h) else fmt_name(h)
        rels.append(f"equal {fmt_name(f)}.{fmt_name(g)} = {rhs}")
    return lines + sorted(rels)


def _block(header: str, lines: list[str], depth: int = 0) -> list[str]:
    pad = INDENT * depth
    if not lines:
        return [f"{pad}{header} {{", f"{pad}}}"]
    return [f"{pad}{header} {{"] + [f"{pad}{INDENT}{ln}" for ln in lines] + [f"{pad}}}"]


def _named_categories(ts: TokenStream, shapes: dict):
    """Parse one ``category NAME { ... }`` block into ``shapes``."""
    ts.expect("category")
    tok = ts.peek()
    name = ts.name("a category name")
    if name in shapes:
        raise ts.error(f"duplicate category {name}", tok)
    ts.expect("{")
    shapes[name] = parse_category_body(ts, name)
    ts.expect("}")


def parse_category(text: str, source: str = "<category>") -> FinCategory:
    cat, _ = parse_category_file(text, source)
    return cat


def parse_category_file(text: str, source: str = "<category>") -> tuple[FinCategory, dict]:
    """A category body at top level, optionally followed by named shape categories."""
    ts = TokenStream(text, source)
    if ts.at_eof():
        raise ts.error("empty category file")
    cat = parse_category_body(ts, None, end=None)
    shapes: dict = {}
    while not ts.at_eof():
        _named_categories(ts, shapes)
    return cat, shapes


def print_category(c: FinCategory, shapes: dict | None = None) -> str:
    out = category_lines(c)
    for name in sorted(shapes or {}):
        out += [""] + _block(f"category {fmt_name(name)}", category_lines(shapes[name]))
    return "\n".join(out) + "\n"


# -- finite sets and models ---------------------------------------------------------------------


def parse_value(ts: TokenStream):
    tok = ts.peek()
    if tok.kind == "string":
        ts.next()
        return tok.value
    if ts.accept("("):
        items = []
        trailing = False
        while not ts.at(")"):
            items.append(parse_value(ts))
            trailing = False
            if not ts.accept(","):
                break
            trailing = True
        ts.expect(")")
        if len(items) == 1 and not trailing:
            return items[0]
        return tuple(items)
    if ts.accept("{"):
        pairs = []
        while not ts.at("}"):
            a = parse_value(ts)
            ts.expect("|->")
            pairs.append((a, parse_value(ts)))
            if not ts.accept(","):
                break
        ts.expect("}")
        return Fn(pairs)
    if tok.kind == "ident":
        ts.next()
        return int(tok.text) if tok.text.isdigit() else tok.text
    raise ts.error(f"expected a value, found {tok.text or 'end of input'!r}")


def _set_literal(ts: TokenStream) -> FinSetObj:
    ts.expect("{")
    elems = []
    while not ts.at("}"):
        elems.append(parse_value(ts))
        if not ts.accept(","):
            break
    ts.expect("}")
    return FinSetObj(elems)


def parse_model(text: str, base: FinCategory, source: str = "<model>") -> SetFunctor:
    """Bind every object and generating morphism of ``base`` to a finite set or function."""
    ts = TokenStream(text, source)
    if ts.at_eof():
        raise ts.error("empty model file")
    sets: dict[str, FinSetObj] = {}
    funs: dict[str, FinSetMor] = {}
    gens = set(base.generators())
    while not ts.at_eof():
        tok = ts.peek()
        if ts.accept("set"):
            n_tok = ts.peek()
            name = ts.name("a set name")
            if name not in base.objects:
                raise ts.error(f"{name} is not an object of the base", n_tok)
            if name in sets:
                raise ts.error(f"{name} is bound twice", n_tok)
            ts.expect("=")
            sets[name] = _set_literal(ts)
        elif ts.accept("fun"):
            n_tok = ts.peek()
            name = ts.name("a function name")
            if name not in gens:
                raise ts.error(f"{name} is not a generating morphism of the base", n_tok)
            if name in funs:
                raise ts.error(f"{name} is bound twice", n_tok)
            ts.expect(":")
            d = ts.name("a domain")
            ts.expect("->")
            c = ts.name("a codomain")
            if (d, c) != base.morphisms[name]:
                raise ts.error(f"{name} has boundary {base.morphisms[name][0]} -> {base.morphisms[name][1]}", n_tok)
            ts.expect("=")
            g_tok = ts.peek()
            graph = parse_value(ts)
            if not isinstance(graph, Fn):
                raise ts.error("expected a function literal {a |-> b, ...}", g_tok)
            for x in (d, c):
                if x not in sets:
                    raise ts.error(f"set {x} must be bound before {name}", n_tok)
            try:
                funs[name] = FinSetMor.from_map(sets[d], sets[c], graph.as_dict())
            except Exception as err:
                raise ts.error(f"bad function {name}: {err}", g_tok) from None
        else:
            raise ts.error(f"expected set or fun, found {tok.text!r}")
    for x in base.objects:
        if x not in sets:
            raise UnboundGenerator(x)
    for u in sorted(gens):
        if u not in funs:
            raise UnboundGenerator(u)
    return SetFunctor.from_generators(base, sets, funs)


def print_model(F: SetFunctor) -> str:
    base = F.shape
    lines = [f"set {fmt_name(x)} = {fmt_set(F.obj(x))}" for x in sorted(base.objects)]
    for u in sorted(base.generators()):
        d, c = base.morphisms[u]
        lines.append(f"fun {fmt_name(u)} : {fmt_name(d)} -> {fmt_name(c)} = {fmt_value(F.mor(u).graph())}")
    return "\n".join(lines) + "\n"


# -- sketches ----------------------------------------------------------------------------------


def _cell_map(ts: TokenStream, src: FinCategory, tgt: FinCategory, what: str, mname: str) -> Functor:
    ts.expect("{")
    objs: dict = {}
    gens: dict = {}
    while not ts.at("}"):
        tok = ts.peek()
        a = ts.name("a cell")
        ts.expect("->")
        b_tok = ts.peek()
        b = ts.name("a cell")
        if a in src.objects:
            if b not in tgt.objects:
                raise ts.error(f"{b} is not an object of the target", b_tok)
            objs[a] = b
        elif a in src.morphisms:
            if b not in tgt.morphisms:
                raise ts.error(f"{b} is not a morphism of the target", b_tok)
            gens[a] = b
        else:
            raise ts.error(f"{a} is not a cell of the source", tok)
        if not ts.accept(","):
            break
    ts.expect("}")
    for x in src.objects:
        if x not in objs:
            raise ts.error(f"{what} of marking {mname} does not map object {x}")
    try:
        return Functor.from_generators(src, tgt, objs, gens)
    except (FunctorialityViolation, KeyError):
        # Leave the mismatch to validation, which names the marking.
        return Functor(src, tgt, objs, gens)


def _marking(ts: TokenStream, base: FinCategory, shapes: dict) -> Marking:
    ts.expect("marking")
    name = ts.name("a marking name")
    ts.expect("{")
    ts.expect("generators")
    ts.expect("{")
    c = parse_category_body(ts)
    ts.expect("}")
    ts.expect("shape")
    ts.expect("{")
    d = parse_category_body(ts)
    ts.expect("}")
    ts.expect("embed")
    j = _cell_map(ts, c, d, "embed", name)
    ts.expect("realize")
    ts.expect("{")
    ep = ExprParser(ts, c, shapes)
    objs: dict[str, ObjExpr] = {}
    pending = []
    while not ts.at("}"):
        tok = ts.peek()
        cell = ts.name("a cell of the shape")
        ts.expect("->")
        if cell in objs or any(cell == p[0] for p in pending):
            raise ts.error(f"{cell} is realized twice", tok)
        if cell in d.objects:
            objs[cell] = ep.obj()
        elif cell in d.morphisms:
            pending.append((cell, ep.raw(), tok))
        else:
            raise ts.error(f"{cell} is not a cell of the shape", tok)
        if not ts.accept(","):
            break
    ts.expect("}")
    realize: dict = dict(objs)
    for cell, raw, tok in pending:
        dom, cod = objs.get(d.dom(cell)), objs.get(d.cod(cell))
        try:
            realize[cell] = elaborate(c, raw, dom, cod)
        except IllTyped as err:
            raise IllTyped(f"{ts.source}:{tok.line}:{tok.col}: {cell}", err.reason) from None
    ts.expect("image")
    phi = _cell_map(ts, d, base, "image", name)
    ts.expect("}")
    return Marking(name, c, d, j, realize, phi)


def parse_sketch(text: str, source: str = "<sketch>") -> Sketch:
    ts = TokenStream(text, source)
    if ts.at_eof():
        raise ts.error("empty sketch file")
    base = None
    shapes: dict = {}
    markings: list[Marking] = []
    while not ts.at_eof():
        if ts.at("category") and ts.at("{", 1):
            if base is not None:
                raise ts.error("the base category is given twice")
            ts.next()
            ts.next()
            base = parse_category_body(ts)
            ts.expect("}")
        elif ts.at("category"):
            _named_categories(ts, shapes)
        elif ts.at("marking"):
            if base is None:
                raise ts.error("the base category must precede the markings")
            m = _marking(ts, base, shapes)
            if any(m.name == other.name for other in markings):
                raise ts.error(f"duplicate marking {m.name}")
            markings.append(m)
        else:
            raise ts.error(f"expected category or marking, found {ts.peek().text!r}")
    if base is None:
        raise ts.error("no base category")
    return Sketch(base, markings, shapes=shapes)


def _functor_lines(F: Functor) -> list[str]:
    src = F.source
    lines = [f"{fmt_name(x)} -> {fmt_name(F.obj(x))}" for x in sorted(src.objects)]
    lines += [f"{fmt_name(u)} -> {fmt_name(F.mor(u))}" for u in sorted(src.generators())]
    return _comma(lines)


def _comma(lines: list[str]) -> list[str]:
    return [ln + ("," if i < len(lines) - 1 else "") for i, ln in enumerate(lines)]


def sketch_shapes(s: Sketch) -> dict:
    shapes = dict(s.shapes)
    for m in s.markings:
        for e in m.realize.values():
            found: dict = {}
            _shapes_of(e, found)
            for ref, cat in found.items():
                if ref in shapes and shapes[ref] != cat:
                    raise ValueError(f"shape name {ref} is used for two different categories")
                shapes[ref] = cat
    return shapes


def print_sketch(s: Sketch) -> str:
    out = _block("category", category_lines(s.base))
    shapes = sketch_shapes(s)
    for ref in sorted(shapes):
        out += [""] + _block(f"category {fmt_name(ref)}", category_lines(shapes[ref]))
    for m in s.markings:
        body = []
        body += _block("generators", category_lines(m.c))
        body += _block("shape", category_lines(m.d))
        body += _block("embed", _functor_lines(m.j))
        real = []
        for x in sorted(c for c in m.realize if c in m.d.objects):
            real.append(f"{fmt_name(x)} -> {print_obj(m.c, m.realize[x])}")
        for u in sorted(c for c in m.realize if c not in m.d.objects):
            e = m.realize[u]
            dom, cod = m.realize.get(m.d.dom(u)), m.realize.get(m.d.cod(u))
            real.append(f"{fmt_name(u)} -> {print_mor(m.c, e, dom, cod)}")
        body += _block("realize", _comma(real))
        body += _block("image", _functor_lines(m.phi))
        out += [""] + _block(f"marking {fmt_name(m.name)}", body)
    return "\n".join(out) + "\n"


# -- signatures ----------------------------------------------------------------------------------


def _arg(ts: TokenStream) -> tuple:
    items = []
    while ts.peek().kind in ("ident", "string") and ts.at("=", 1):
        k = ts.name()
        ts.expect("=")
        items.append((k, parse_term(ts)))
        if not ts.accept(","):
            break
    return tuple(items)


def parse_term(ts: TokenStream):
    tok = ts.peek()
    head = ts.name("a term")
    ts.expect("(")
    if head == "var":
        out = Var(ts.name("a cell"))
    elif head in ("comp",):
        g = parse_term(ts)
        ts.expect(";")
        out = TComp(g, parse_term(ts))
    elif head == "id":
        out = TId(parse_term(ts))
    elif head == "op":
        op = ts.name("an operation")
        ts.expect(":")
        cell = ts.name("a cell of the result")
        ts.expect(";")
        src = _arg(ts)
        if ts.accept("=>"):
            tgt = _arg(ts)
            ts.expect(";")
            out = OpMor(op, cell, src, tgt, _arg(ts))
        else:
            out = OpObj(op, cell, src)
    else:
        raise ts.error(f"unknown term former {head}", tok)
    ts.expect(")")
    return out


def _resolve(t, sig: Signature):
    """Short ``op(o:u; a)`` forms at a morphism ``u`` denote the identity-transformation instance."""
    if isinstance(t, Var):
        return t
    if isinstance(t, TComp):
        return TComp(_resolve(t.g, sig), _resolve(t.f, sig))
    if isinstance(t, TId):
        return TId(_resolve(t.t, sig))
    res = lambda arg: tuple((k, _resolve(v, sig)) for k, v in arg)  # noqa: E731
    op = sig.op(t.op)
    if isinstance(t, OpObj):
        if t.cell in op.result.objects:
            return OpObj(t.op, t.cell, res(t.arg))
        if t.cell not in op.result.morphisms:
            raise AlgebraError(f"{t.cell} is not a cell of the result of {t.op}")
        arg = res(t.arg)
        return OpMor(t.op, t.cell, arg, arg, identity_comps(op.arity, arg))
    return OpMor(t.op, t.cell, res(t.src), res(t.tgt), res(t.comps))


def parse_signature(text: str, source: str = "<signature>") -> tuple[Signature, EquationSet]:
    ts = TokenStream(text, source)
    if ts.at_eof():
        raise ts.error("empty signature file")
    enrichment = "cat"
    cats: dict = {}
    ops: list[Operation] = []
    raw_eqs = []
    while not ts.at_eof():
        tok = ts.peek()
        if ts.accept("enrichment"):
            e_tok = ts.peek()
            enrichment = ts.name("cat or grpd")
            if enrichment not in ("cat", "grpd"):
                raise ts.error("enrichment must be cat or grpd", e_tok)
        elif ts.at("category"):
            _named_categories(ts, cats)
        elif ts.accept("operation"):
            name = ts.name("an operation name")
            ts.expect("{")
            ts.expect("arity")
            a_tok = ts.peek()
            a = ts.name("a category name")
            ts.expect("result")
            r_tok = ts.peek()
            r = ts.name("a category name")
            ts.expect("}")
            for ref, rt in ((a, a_tok), (r, r_tok)):
                if ref not in cats:
                    raise ts.error(f"unknown category {ref}", rt)
            if any(o.name == name for o in ops):
                raise ts.error(f"duplicate operation {name}", tok)
            ops.append(Operation(name, cats[a], cats[r], a, r))
        elif ts.accept("equation"):
            name = ts.name("an equation name")
            ts.expect("@")
            a_tok = ts.peek()
            a = ts.name("a category name")
            if a not in cats:
                raise ts.error(f"unknown category {a}", a_tok)
            ts.expect(":")
            lhs = parse_term(ts)
            ts.expect("=")
            raw_eqs.append((name, a, lhs, parse_term(ts), tok))
        else:
            raise ts.error(f"expected enrichment, category, operation or equation, found {tok.text!r}")
    sig = Signature(tuple(ops), enrichment)
    eqs = []
    for name, a, lhs, rhs, tok in raw_eqs:
        try:
            eqs.append(Equation(name, a, cats[a], _resolve(lhs, sig), _resolve(rhs, sig)))
        except (KeyError, AlgebraError) as err:
            raise ts.error(f"equation {name}: {err}", tok) from None
    return sig, EquationSet(tuple(eqs))


def print_signature(sig: Signature, eqs: EquationSet) -> str:
    cats: dict = {}

    def note(ref, cat):
        if not ref:
            raise ValueError("every category in a signature needs a name")
        if ref in cats and cats[ref] != cat:
            raise ValueError(f"category name {ref} is used for two different categories")
        cats[ref] = cat

    for o in sig.operations:
        note(o.arity_ref, o.arity)
        note(o.result_ref, o.result)
    for e in eqs.equations:
        note(e.arity_ref, e.arity)
    out = [f"enrichment {sig.enrichment}"]
    for ref in sorted(cats):
        out += [""] + _block(f"category {fmt_name(ref)}", category_lines(cats[ref]))
    if sig.operations:
        out.append("")
    for o in sig.operations:
        out.append(f"operation {fmt_name(o.name)} {{ arity {fmt_name(o.arity_ref)} result {fmt_name(o.result_ref)} }}")
    if eqs.equations:
        out.append("")
    for e in eqs.equations:
        out.append(f"equation {fmt_name(e.name)} @ {fmt_name(e.arity_ref)} : {fmt_term(e.lhs)} = {fmt_term(e.rhs)}")
    return "\n".join(out) + "\n"


# -- algebras ----------------------------------------------------------------------------------


@dataclass
class AlgebraSpec:
    """A carrier with either tabulated operations or a request to derive them."""

    carrier: FinCategory
    tables: dict = field(default_factory=dict)  # op -> {sorted ((cell, obj), ...): {cell: obj}}
    derive: str | None = None

    def __eq__(self, other):
        return (isinstance(other, AlgebraSpec) and self.carrier == other.carrier
                and self.tables == other.tables and self.derive == other.derive)


def _assignment(ts: TokenStream) -> dict:
    ts.expect("{")
    out = {}
    while not ts.at("}"):
        k = ts.name("a cell")
        ts.expect("=")
        out[k] = ts.name("an object of the carrier")
        if not ts.accept(","):
            break
    ts.expect("}")
    return out


def parse_algebra(text: str, source: str = "<algebra>") -> AlgebraSpec:
    ts = TokenStream(text, source)
    if ts.at_eof():
        raise ts.error("empty algebra file")
    ts.expect("carrier")
    ts.expect("{")
    carrier = parse_category_body(ts, "carrier")
    ts.expect("}")
    spec = AlgebraSpec(carrier)
    while not ts.at_eof():
        tok = ts.peek()
        if ts.accept("derive"):
            how = ts.name("a derivation")
            if how != "lex":
                raise ts.error(f"unknown derivation {how}")
            spec.derive = how
        elif ts.accept("nu"):
            op = ts.name("an operation")
            ts.expect(":")
            arg = _assignment(ts)
            ts.expect("|->")
            val = _assignment(ts)
            for x in list(arg.values()) + list(val.values()):
                if x not in carrier.objects:
                    raise ts.error(f"{x} is not an object of the carrier", tok)
            key = tuple(sorted(arg.items()))
            table = spec.tables.setdefault(op, {})
            if key in table:
                raise ts.error(f"{op} is tabulated twice at {dict(key)}", tok)
            table[key] = val
        else:
            raise ts.error(f"expected nu or derive, found {tok.text!r}")
    return spec


def print_algebra(spec: AlgebraSpec) -> str:
    out = _block("carrier", category_lines(spec.carrier))
    if spec.derive:
        out += ["", f"derive {spec.derive}"]
    if spec.tables:
        out.append("")
    for op in sorted(spec.tables):
        for key in sorted(spec.tables[op]):
            arg = ", ".join(f"{fmt_name(k)} = {fmt_name(v)}" for k, v in key)
            val = ", ".join(f"{fmt_name(k)} = {fmt_name(v)}" for k, v in sorted(spec.tables[op][key].items()))
            out.append(f"nu {fmt_name(op)} : {{{arg}}} |-> {{{val}}}")
    return "\n".join(out) + "\n"


def build_algebra(sig: Signature, spec: AlgebraSpec) -> Algebra:
    """Instantiate ``spec`` for ``sig``; raises :class:`AlgebraError` when that is impossible."""
    nu: dict = {}
    if spec.derive == "lex":
        from ..lex import derive_lex_algebra

        derived = derive_lex_algebra(spec.carrier, sig.enrichment)
        if derived is None:
            raise AlgebraError("the carrier has no terminal object or lacks a pullback")
        nu.update(derived.nu)
    names = set(sig.names)
    for op, table in spec.tables.items():
        if op in names:  # tables for operations the signature lacks are simply unused
            nu[op] = TabulatedOperation(sig.op(op), spec.carrier, table)
    return Algebra(sig, spec.carrier, {o.name: nu[o.name] for o in sig.operations if o.name in nu})


__all__ = [
    "AlgebraSpec",
    "build_algebra",
    "category_lines",
    "parse_algebra",
    "parse_category",
    "parse_category_body",
    "parse_category_file",
    "parse_model",
    "parse_signature",
    "parse_sketch",
    "parse_term",
    "parse_value",
    "print_algebra",
    "print_category",
    "print_model",
    "print_signature",
    "print_sketch",
    "sketch_shapes",
]
