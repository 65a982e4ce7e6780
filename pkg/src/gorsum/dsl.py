"""Parser and printer for ``.gs`` session files.

A session is a list of ``;``-terminated declarations::

    field F = QQ;
    ring R = F[x:1]/(x^3);
    ring k = F[];
    map eR : R -> k sends x -> 0;
    modmap iR : k -> R over eR sends 1 -> x^2;
    let Q = connect(eR, eS, iR, iS);
    check length(Q) == 4;

``parse_session`` returns a :class:`Session` whose names are resolved and
whose maps type-check; ``format_session`` prints it back so that parsing the
output gives an equal AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class SessionError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"{line}:{col}: {message}" if line else message)


class SessionSyntaxError(SessionError):
    pass


class SessionNameError(SessionError):
    pass


class SessionTypeError(SessionError):
    pass


# -- tokens -------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<arrow>->) | (?P<eq>==)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9']*)
  | (?P<sym>[=;:,()\[\]/+\-*^.])
""", re.VERBOSE)

KEYWORDS = {"field", "ring", "map", "modmap", "module", "let", "check", "sends", "over", "true", "false"}


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, sym, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SessionSyntaxError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind in ("int", "name"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        elif kind in ("arrow", "eq", "sym"):
            out.append(Token("sym", m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- AST ----------------------------------------------------------------------------
# polynomial / element expressions


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str  # + - * /
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Pair:
    left: object
    right: object


# check-side values


@dataclass(frozen=True)
class IntV:
    value: int


@dataclass(frozen=True)
class BoolV:
    value: bool


@dataclass(frozen=True)
class SeqV:
    bracket: str  # "(" or "["
    items: tuple


@dataclass(frozen=True)
class NameV:
    name: str  # may be dotted, e.g. "Q.P"


@dataclass(frozen=True)
class RingSpec:
    field: str
    variables: tuple  # ((name, weight), ...)
    relations: tuple  # expressions


@dataclass(frozen=True)
class CallV:
    name: str
    args: tuple = ()
    kwargs: tuple = ()  # ((key, value), ...)
    images: tuple | None = None  # ((var, expr), ...) after ';'
    exprs: tuple | None = None  # expressions after ';'


# declarations


@dataclass(frozen=True)
class FieldDecl:
    name: str
    prime: int | None  # None for QQ
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RingDecl:
    name: str
    spec: RingSpec
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MapDecl:
    name: str
    source: str
    target: str
    images: tuple  # ((var, expr), ...)
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModMapDecl:
    name: str
    source: str
    target: str
    over: str
    image: object  # image of the generator 1
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    call: CallV
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LetDecl:
    name: str
    call: CallV
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CheckDecl:
    lhs: object
    expected: object
    line: int = field(default=0, compare=False)


@dataclass
class Session:
    declarations: list
    source: str = ""

    def __eq__(self, other):
        return isinstance(other, Session) and self.declarations == other.declarations

    @property
    def checks(self):
        return [d for d in self.declarations if isinstance(d, CheckDecl)]

    def kinds(self) -> dict:
        """Name -> declaration kind (``field``, ``ring``, ``map``, ``modmap``, ``module``, ``let``)."""
        out = {}
        for d in self.declarations:
            if not isinstance(d, CheckDecl):
                out[d.name] = _KIND[type(d)]
        return out


_KIND = {FieldDecl: "field", RingDecl: "ring", MapDecl: "map", ModMapDecl: "modmap",
         ModuleDecl: "module", LetDecl: "let"}

LET_CONSTRUCTIONS = {"fiber", "connect", "gorenstein_connect", "connect_k", "dup", "split_socle",
                     "quotient", "socle_quotient", "trivial_extension"}
MODULE_CONSTRUCTIONS = {"canonical", "residue", "regular", "via", "socle_quotient"}


# -- parser ----------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=SessionSyntaxError):
        tok = tok or self.tok
        raise cls(msg, tok.line, tok.col)

    def at(self, text) -> bool:
        t = self.tok
        return t.kind in ("sym", "name") and t.text == text

    def accept(self, text) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text) -> Token:
        if not self.at(text):
            got = self.tok.text or "end of input"
            self.error(f"expected {text!r}, got {got!r}")
        t = self.tok
        self.i += 1
        return t

    def name(self, what="name") -> str:
        t = self.tok
        if t.kind != "name" or t.text in KEYWORDS:
            self.error(f"expected {what}, got {t.text or 'end of input'!r}")
        self.i += 1
        return t.text

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            self.error(f"expected an integer, got {t.text or 'end of input'!r}")
        self.i += 1
        return int(t.text)

    # session

    def session(self) -> list:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.declaration())
        return decls

    def declaration(self):
        t = self.tok
        line = t.line
        if self.accept("field"):
            name = self.name("field name")
            self.expect("=")
            if self.accept("QQ"):
                prime = None
            elif self.accept("GF"):
                self.expect("(")
                prime = self.integer()
                self.expect(")")
            else:
                self.error("expected QQ or GF(p)")
            d = FieldDecl(name, prime, line)
        elif self.accept("ring"):
            name = self.name("ring name")
            self.expect("=")
            d = RingDecl(name, self.ring_spec(), line)
        elif self.accept("map"):
            name = self.name("map name")
            self.expect(":")
            src = self.name("source ring")
            self.expect("->")
            tgt = self.name("target ring")
            images = ()
            if self.accept("sends"):
                images = self.images()
            d = MapDecl(name, src, tgt, images, line)
        elif self.accept("modmap"):
            name = self.name("map name")
            self.expect(":")
            src = self.name("source")
            self.expect("->")
            tgt = self.name("target ring")
            self.expect("over")
            over = self.name("map name")
            self.expect("sends")
            gen = self.tok
            if not (gen.kind == "int" and gen.text == "1"):
                self.error("a module map is given by the image of the generator 1")
            self.i += 1
            self.expect("->")
            d = ModMapDecl(name, src, tgt, over, self.expr(), line)
        elif self.accept("module"):
            name = self.name("module name")
            self.expect("=")
            d = ModuleDecl(name, self.call(), line)
        elif self.accept("let"):
            name = self.name()
            self.expect("=")
            d = LetDecl(name, self.call(), line)
        elif self.accept("check"):
            lhs = self.value()
            self.expect("==")
            d = CheckDecl(lhs, self.value(), line)
        else:
            self.error(f"unknown declaration {t.text!r}")
        self.expect(";")
        return d

    def ring_spec(self) -> RingSpec:
        fld = self.name("field name")
        self.expect("[")
        variables = []
        if not self.at("]"):
            while True:
                v = self.name("variable")
                w = 1
                if self.accept(":"):
                    w = self.integer()
                variables.append((v, w))
                if not self.accept(","):
                    break
        self.expect("]")
        rels = []
        if self.accept("/"):
            self.expect("(")
            if not self.at(")"):
                rels = self.expr_list()
            self.expect(")")
        return RingSpec(fld, tuple(variables), tuple(rels))

    def images(self) -> tuple:
        out = []
        while True:
            v = self.name("variable")
            self.expect("->")
            out.append((v, self.expr()))
            if not self.accept(","):
                break
        return tuple(out)

    def expr_list(self) -> list:
        out = [self.expr()]
        while self.accept(","):
            out.append(self.expr())
        return out

    # expressions: sum > product > unary > power > atom

    def expr(self):
        e = self.product()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            e = Bin(op, e, self.product())
        return e

    def product(self):
        e = self.unary()
        while self.at("*") or self.at("/"):
            op = self.tok.text
            self.i += 1
            e = Bin(op, e, self.unary())
        return e

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            return Pow(base, self.integer())
        return base

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "name" and t.text not in KEYWORDS:
            self.i += 1
            return Var(t.text)
        if self.accept("("):
            e = self.expr()
            if self.accept(","):
                e = Pair(e, self.expr())
            self.expect(")")
            return e
        self.error(f"unexpected {t.text or 'end of input'!r} in expression")

    # check-side values

    def value(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return IntV(int(t.text))
        if self.at("-") and self.toks[self.i + 1].kind == "int":
            self.i += 2
            return IntV(-int(self.toks[self.i - 1].text))
        if self.accept("true"):
            return BoolV(True)
        if self.accept("false"):
            return BoolV(False)
        if self.at("(") or self.at("["):
            close = ")" if self.tok.text == "(" else "]"
            bracket = self.tok.text
            self.i += 1
            items = []
            if not self.at(close):
                items.append(self.value())
                while self.accept(","):
                    items.append(self.value())
            self.expect(close)
            return SeqV(bracket, tuple(items))
        if t.kind == "name" and t.text not in KEYWORDS:
            nxt = self.toks[self.i + 1]
            if nxt.kind == "sym" and nxt.text == "(":
                return self.call()
            if nxt.kind == "sym" and nxt.text == "[":
                return self.ring_spec()
            self.i += 1
            name = t.text
            while self.accept("."):
                name += "." + self.name()
            return NameV(name)
        self.error(f"unexpected {t.text or 'end of input'!r}")

    def call(self) -> CallV:
        name = self.name("construction")
        self.expect("(")
        args, kwargs = [], []
        images = exprs = None
        if not self.at(")") and not self.at(";"):
            while True:
                t, nxt = self.tok, self.toks[self.i + 1]
                if t.kind == "name" and nxt.kind == "sym" and nxt.text == "=":
                    self.i += 2
                    kwargs.append((t.text, self.value()))
                else:
                    if kwargs:
                        self.error("positional argument after keyword argument")
                    args.append(self.value())
                if not self.accept(","):
                    break
        if self.accept(";"):
            t, nxt = self.tok, self.toks[self.i + 1]
            if t.kind == "name" and nxt.kind == "sym" and nxt.text == "->":
                images = self.images()
            else:
                exprs = tuple(self.expr_list())
        self.expect(")")
        return CallV(name, tuple(args), tuple(kwargs), images, exprs)


# -- printing --------------------------------------------------------------------------------

_PREC = {Num: 5, Var: 5, Pair: 5, Pow: 4, Neg: 3}


def _prec(e) -> int:
    if isinstance(e, Bin):
        return 1 if e.op in "+-" else 2
    return _PREC[type(e)]


def format_expr(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pair):
        return f"({format_expr(e.left)}, {format_expr(e.right)})"
    if isinstance(e, Pow):
        b = format_expr(e.base)
        return f"{b}^{e.exp}" if _prec(e.base) > 4 else f"({b})^{e.exp}"
    if isinstance(e, Neg):
        a = format_expr(e.arg)
        return f"-{a}" if _prec(e.arg) >= 3 else f"-({a})"
    p = _prec(e)
    left = format_expr(e.left)
    if _prec(e.left) < p:
        left = f"({left})"
    right = format_expr(e.right)
    if _prec(e.right) <= p:  # left-associative operators
        right = f"({right})"
    sep = " " if p == 1 else ""
    return f"{left}{sep}{e.op}{sep}{right}"


def format_value(v) -> str:
    if isinstance(v, IntV):
        return str(v.value)
    if isinstance(v, BoolV):
        return "true" if v.value else "false"
    if isinstance(v, SeqV):
        close = ")" if v.bracket == "(" else "]"
        return v.bracket + ", ".join(format_value(x) for x in v.items) + close
    if isinstance(v, NameV):
        return v.name
    if isinstance(v, RingSpec):
        return format_ring_spec(v)
    if isinstance(v, CallV):
        return format_call(v)
    raise TypeError(f"not a value: {v!r}")


def format_ring_spec(s: RingSpec) -> str:
    vs = ", ".join(f"{n}:{w}" for n, w in s.variables)
    out = f"{s.field}[{vs}]"
    if s.relations:
        out += "/(" + ", ".join(format_expr(r) for r in s.relations) + ")"
    return out


def _format_images(images) -> str:
    return ", ".join(f"{v} -> {format_expr(e)}" for v, e in images)


def format_call(c: CallV) -> str:
    parts = [format_value(a) for a in c.args] + [f"{k} = {format_value(v)}" for k, v in c.kwargs]
    inner = ", ".join(parts)
    if c.images is not None:
        inner += "; " + _format_images(c.images)
    elif c.exprs is not None:
        inner += "; " + ", ".join(format_expr(e) for e in c.exprs)
    return f"{c.name}({inner})"


def format_declaration(d) -> str:
    if isinstance(d, FieldDecl):
        return f"field {d.name} = " + ("QQ" if d.prime is None else f"GF({d.prime})") + ";"
    if isinstance(d, RingDecl):
        return f"ring {d.name} = {format_ring_spec(d.spec)};"
    if isinstance(d, MapDecl):
        s = f"map {d.name} : {d.source} -> {d.target}"
        return s + (f" sends {_format_images(d.images)};" if d.images else ";")
    if isinstance(d, ModMapDecl):
        return f"modmap {d.name} : {d.source} -> {d.target} over {d.over} sends 1 -> {format_expr(d.image)};"
    if isinstance(d, ModuleDecl):
        return f"module {d.name} = {format_call(d.call)};"
    if isinstance(d, LetDecl):
        return f"let {d.name} = {format_call(d.call)};"
    if isinstance(d, CheckDecl):
        return f"check {format_value(d.lhs)} == {format_value(d.expected)};"
    raise TypeError(f"not a declaration: {d!r}")


def format_session(s: Session) -> str:
    return "\n".join(format_declaration(d) for d in s.declarations) + "\n"


# -- resolution of names --------------------------------------------------------------------


def expr_variables(e) -> set:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Num):
        return set()
    if isinstance(e, (Neg,)):
        return expr_variables(e.arg)
    if isinstance(e, Pow):
        return expr_variables(e.base)
    return expr_variables(e.left) | expr_variables(e.right)


def _has_pair(e) -> bool:
    if isinstance(e, Pair):
        return True
    if isinstance(e, (Num, Var)):
        return False
    if isinstance(e, Neg):
        return _has_pair(e.arg)
    if isinstance(e, Pow):
        return _has_pair(e.base)
    return _has_pair(e.left) or _has_pair(e.right)


class _Scope:
    """Names declared so far with their kinds and, for presented rings, variables."""

    def __init__(self):
        self.kind = {}
        self.ring_vars = {}
        self.map_ends = {}

    def need(self, name, kinds, line, col=0):
        base = name.split(".")[0]
        if base not in self.kind:
            raise SessionNameError(f"{base!r} is not declared", line, col)
        if "." in name:
            if self.kind[base] != "let":
                raise SessionTypeError(f"{base!r} has no parts", line, col)
            return "ring"
        k = self.kind[base]
        if k not in kinds:
            raise SessionTypeError(f"{name!r} is a {k}, expected {' or '.join(sorted(kinds))}", line, col)
        return k

    def check_expr(self, ring, e, line, what):
        """Variables of ``e`` must belong to ``ring`` when it is presented."""
        if ring in self.ring_vars:
            if _has_pair(e):
                raise SessionTypeError(f"pairs are not elements of the presented ring {ring!r}", line)
            extra = expr_variables(e) - set(self.ring_vars[ring])
            if extra:
                raise SessionNameError(f"{what}: {', '.join(sorted(extra))} undeclared in {ring!r}", line)

    def declare(self, name, kind, line):
        if name in self.kind:
            raise SessionNameError(f"{name!r} is declared twice", line)
        self.kind[name] = kind


def _resolve(decls) -> None:
    sc = _Scope()
    for d in decls:
        ln = d.line
        if isinstance(d, FieldDecl):
            sc.declare(d.name, "field", ln)
        elif isinstance(d, RingDecl):
            _check_spec(sc, d.spec, ln)
            sc.declare(d.name, "ring", ln)
            sc.ring_vars[d.name] = [v for v, _ in d.spec.variables]
        elif isinstance(d, MapDecl):
            sc.need(d.source, {"ring", "let"}, ln)
            sc.need(d.target, {"ring", "let"}, ln)
            if d.source in sc.ring_vars:
                for v, e in d.images:
                    if v not in sc.ring_vars[d.source]:
                        raise SessionNameError(f"{v!r} is not a variable of {d.source!r}", ln)
            for v, e in d.images:
                sc.check_expr(d.target, e, ln, f"image of {v}")
            sc.declare(d.name, "map", ln)
            sc.map_ends[d.name] = (d.source, d.target)
        elif isinstance(d, ModMapDecl):
            sc.need(d.source, {"ring", "let"}, ln)
            sc.need(d.target, {"ring", "let"}, ln)
            sc.need(d.over, {"map"}, ln)
            ms, mt = sc.map_ends[d.over]
            if ms != d.target or mt != d.source:
                raise SessionTypeError(f"{d.over!r} must map {d.target!r} onto {d.source!r}", ln)
            sc.check_expr(d.target, d.image, ln, "generator image")
            sc.declare(d.name, "modmap", ln)
        elif isinstance(d, ModuleDecl):
            if d.call.name not in MODULE_CONSTRUCTIONS:
                raise SessionNameError(f"unknown module construction {d.call.name!r}", ln)
            _check_names_in(sc, d.call, ln)
            sc.declare(d.name, "module", ln)
        elif isinstance(d, LetDecl):
            if d.call.name not in LET_CONSTRUCTIONS:
                raise SessionNameError(f"unknown construction {d.call.name!r}", ln)
            _check_names_in(sc, d.call, ln)
            sc.declare(d.name, "let", ln)
        elif isinstance(d, CheckDecl):
            _check_names_in(sc, d.lhs, ln)
            _check_names_in(sc, d.expected, ln)


def _check_spec(sc, spec: RingSpec, ln):
    sc.need(spec.field, {"field"}, ln)
    names = [v for v, _ in spec.variables]
    if len(set(names)) != len(names):
        raise SessionNameError("repeated variable", ln)
    for v, w in spec.variables:
        if w <= 0:
            raise SessionTypeError(f"weight of {v!r} must be positive", ln)
    for r in spec.relations:
        if _has_pair(r):
            raise SessionTypeError("pairs are not allowed in relations", ln)
        extra = expr_variables(r) - set(names)
        if extra:
            raise SessionNameError(f"relation uses undeclared {', '.join(sorted(extra))}", ln)


_FORMULA_ARGS = {"formula"}


def _check_names_in(sc, v, ln):
    if isinstance(v, NameV):
        sc.need(v.name, {"ring", "let", "map", "modmap", "module"}, ln)
    elif isinstance(v, SeqV):
        for x in v.items:
            _check_names_in(sc, x, ln)
    elif isinstance(v, RingSpec):
        _check_spec(sc, v, ln)
    elif isinstance(v, CallV):
        args = v.args[1:] if v.name in _FORMULA_ARGS else v.args
        for a in args:
            _check_names_in(sc, a, ln)
        for _, a in v.kwargs:
            _check_names_in(sc, a, ln)


def parse_session(text: str) -> Session:
    """Parse and resolve a session; errors carry line and column."""
    p = _Parser(text)
    decls = p.session()
    _resolve(decls)
    return Session(decls, text)


def parse_expr(text: str):
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error("trailing input")
    return e
