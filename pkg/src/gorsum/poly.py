"""Multivariate polynomials with weighted degrees and Groebner bases.

Monomials are exponent tuples.  The only monomial order is weighted
graded-reverse-lex: larger weighted degree wins, ties go to the monomial with
the smaller exponent in the last variable (then the one before, ...).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .fields import Field


class NotArtinian(ValueError):
    pass


class PolyRing:
    """``field[x1, ..., xn]`` with positive integer weights."""

    def __init__(self, field: Field, variables):
        variables = [(v, 1) if isinstance(v, str) else (v[0], int(v[1])) for v in variables]
        names = [v[0] for v in variables]
        if len(set(names)) != len(names):
            raise ValueError(f"repeated variable names in {names}")
        if any(w < 1 for _, w in variables):
            raise ValueError("variable weights must be positive")
        self.field = field
        self.names = tuple(names)
        self.weights = tuple(w for _, w in variables)
        self.nvars = len(names)
        self._index = {v: i for i, v in enumerate(names)}

    def __repr__(self):
        vs = ", ".join(f"{v}:{w}" for v, w in zip(self.names, self.weights))
        return f"{self.field}[{vs}]"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names and self.weights == other.weights)

    def __hash__(self):
        return hash((self.field, self.names, self.weights))

    # -- monomials ----------------------------------------------------------

    def degree(self, mono) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    def key(self, mono):
        return (self.degree(mono), tuple(-e for e in reversed(mono)))

    def one_mono(self):
        return (0,) * self.nvars

    # -- constructors -------------------------------------------------------

    def __call__(self, c) -> "Polynomial":
        if isinstance(c, Polynomial):
            if c.ring != self:
                raise ValueError("polynomial from a different ring")
            return c
        c = self.field(c)
        return Polynomial(self, {self.one_mono(): c} if c != 0 else {})

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self(1)

    def var(self, name) -> "Polynomial":
        i = self._index[name] if isinstance(name, str) else int(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, mono, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(mono): c} if c != 0 else {})

    def index(self, name) -> int:
        return self._index[name]

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, F.zero), c)
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = F.add(out.get(m, F.zero), F.mul(c1, c2))
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ValueError("division only by nonzero constants")
            other = other.constant_coeff()
        F = self.ring.field
        inv = F.inv(F(other))
        return self.scale(inv)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        out, base = self.ring.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {m: F.mul(a, c) for m, a in self.terms.items()})

    def mul_term(self, mono, c):
        F = self.ring.field
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, mono)): F.mul(a, c)
                                      for m, a in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.one_mono(), self.ring.field.zero)

    def leading_monomial(self):
        return max(self.terms, key=self.ring.key)

    def leading_term(self):
        m = self.leading_monomial()
        return m, self.terms[m]

    def degree(self) -> int:
        return max((self.ring.degree(m) for m in self.terms), default=-1)

    def low_degree(self) -> int:
        return min((self.ring.degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree(m) == d})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_term()[1]))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def __repr__(self):
        return format_poly(self)


def format_monomial(ring: PolyRing, mono) -> str:
    parts = []
    for v, e in zip(ring.names, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    out = []
    for m, c in f.sorted_terms():
        c = _signed(F, c)
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(f.ring, m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _signed(F: Field, c):
    # symmetric representative so that p-1 prints as -1
    if F.characteristic and c > F.characteristic // 2:
        return c - F.characteristic
    return c


# -- Groebner bases ---------------------------------------------------------


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis for weighted grevlex."""

    ring: PolyRing
    polys: tuple

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def _reduce(f: Polynomial, G, lms) -> Polynomial:
    """Full remainder of ``f`` modulo the list ``G`` (leading monomials ``lms``)."""
    ring = f.ring
    F = ring.field
    p = dict(f.terms)
    rem = {}
    key = ring.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, lm in zip(G, lms):
            if _divides(lm, m):
                q = _quot(m, lm)
                fac = F.div(c, g.terms[lm])
                for gm, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(gm, q))
                    s = F.sub(p.get(t, F.zero), F.mul(fac, gc))
                    if s == 0:
                        p.pop(t, None)
                    else:
                        p[t] = s
                break
        else:
            rem[m] = c
            del p[m]
    return Polynomial(ring, rem)


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    F = f.ring.field
    mf, cf = f.leading_term()
    mg, cg = g.leading_term()
    L = _lcm(mf, mg)
    return f.mul_term(_quot(L, mf), F.inv(cf)) - g.mul_term(_quot(L, mg), F.inv(cg))


def _gm_update(G, lms, P, h_idx):
    """Gebauer-Moeller pair update after adding ``G[h_idx]``."""
    lh = lms[h_idx]
    C = [(i, h_idx) for i in range(h_idx) if G[i] is not None]

    def lcm_of(pair):
        return _lcm(lms[pair[0]], lms[pair[1]])

    # criterion M and F on the new pairs
    D = []
    while C:
        pair = C.pop()
        L = lcm_of(pair)
        coprime = all(min(a, b) == 0 for a, b in zip(lms[pair[0]], lh))
        dominated = any(_divides(lcm_of(q), L) for q in C) or any(_divides(lcm_of(q), L) for q in D)
        if coprime or not dominated:
            D.append(pair)
    E = [pair for pair in D if any(min(a, b) for a, b in zip(lms[pair[0]], lh))]
    # criterion B on the old pairs
    P = [(i, j) for (i, j) in P
         if not (_divides(lh, _lcm(lms[i], lms[j]))
                 and _lcm(lms[i], lh) != _lcm(lms[i], lms[j])
                 and _lcm(lms[j], lh) != _lcm(lms[i], lms[j]))]
    return P + E


def groebner_basis(gens) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("groebner_basis needs a nonzero generator; use groebner_basis_in")
    return _buchberger(gens)


def groebner_basis_in(ring: PolyRing, gens) -> GroebnerBasis:
    gens = [ring(g) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis(ring, ())
    return _buchberger(gens)


def _buchberger(gens) -> GroebnerBasis:
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators live in different rings")
    key = ring.key
    G, lms, P = [], [], []
    for f in sorted(gens, key=lambda g: key(g.leading_monomial())):
        h = _reduce(f, [g for g in G if g is not None], [l for g, l in zip(G, lms) if g is not None])
        if h.is_zero():
            continue
        h = h.monic()
        G.append(h)
        lms.append(h.leading_monomial())
        P = _gm_update(G, lms, P, len(G) - 1)
    while P:
        P.sort(key=lambda pr: key(_lcm(lms[pr[0]], lms[pr[1]])))
        i, j = P.pop(0)
        active = [k for k in range(len(G)) if G[k] is not None]
        h = _reduce(_spoly(G[i], G[j]), [G[k] for k in active], [lms[k] for k in active])
        if h.is_zero():
            continue
        h = h.monic()
        G.append(h)
        lms.append(h.leading_monomial())
        P = _gm_update(G, lms, P, len(G) - 1)
    return _interreduce(ring, [g for g in G if g is not None])


def _interreduce(ring, G) -> GroebnerBasis:
    lms = [g.leading_monomial() for g in G]
    keep = []
    for i, g in enumerate(G):
        if any(j != i and _divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i) for j in range(len(G))):
            continue
        keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm, c = g.leading_term()
        tail = Polynomial(ring, {m: a for m, a in g.terms.items() if m != lm})
        r = _reduce(tail, others, [o.leading_monomial() for o in others])
        out.append((Polynomial(ring, {lm: c}) + r).monic())
    out.sort(key=lambda g: ring.key(g.leading_monomial()))
    return GroebnerBasis(ring, tuple(out))


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ring:
        raise ValueError("polynomial and basis live in different rings")
    return _reduce(f, list(G.polys), G.leading_monomials())


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    polys = list(G.polys)
    lms = G.leading_monomials()
    return all(_reduce(_spoly(f, g), polys, lms).is_zero() for f, g in combinations(polys, 2))


def quotient_monomial_basis(G: GroebnerBasis) -> list:
    """Standard monomials of ``ring / ideal(G)`` sorted by degree then order."""
    ring = G.ring
    lms = G.leading_monomials()
    if any(not any(m) for m in lms):
        return []
    for i in range(ring.nvars):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            raise NotArtinian(f"no pure power of {ring.names[i]} in the leading-term ideal")
    seen = {ring.one_mono()}
    frontier = [ring.one_mono()]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(ring.nvars):
                t = list(m)
                t[i] += 1
                t = tuple(t)
                if t in seen or any(_divides(l, t) for l in lms):
                    continue
                seen.add(t)
                nxt.append(t)
        frontier = nxt
    return sorted(seen, key=ring.key)


def ideal_equal(A, B) -> bool:
    A = [g for g in A if not g.is_zero()]
    B = [g for g in B if not g.is_zero()]
    if not A or not B:
        return not A and not B
    GA, GB = groebner_basis(A), groebner_basis(B)
    return (all(normal_form(b, GA).is_zero() for b in B)
            and all(normal_form(a, GB).is_zero() for a in A))


def ideal_contains(G: GroebnerBasis, f: Polynomial) -> bool:
    return normal_form(f, G).is_zero()


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\S))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            num, name, sym = m.groups()
            self.toks.append(("num", int(num)) if num else ("name", name) if name else ("sym", sym))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        f = self.expr()
        if self.i != len(self.toks):
            raise SyntaxError(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            g = self.unary()
            f = f * g if op == "*" else f / g
        return f

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise SyntaxError("exponent must be a nonnegative integer")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring(Fraction(val))
        if kind == "name":
            if val not in self.ring.names:
                raise NameError(f"unknown variable {val!r}")
            return self.ring.var(val)
        if (kind, val) == ("sym", "("):
            f = self.expr()
            if self.take() != ("sym", ")"):
                raise SyntaxError("missing ')'")
            return f
        raise SyntaxError(f"unexpected token {val!r}")
