"""Evaluation of parsed sessions: constructions, checks and reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import (AlgebraMorphism, FDAlgebra, algebra_as_module, algebra_from_presentation,
                      check_presentation_iso, dual_canonical_module, quotient, quotient_module,
                      morphism_from_images, residue_field)
from .colength import gcl_bounds, trivial_extension_cover
from .dsl import (BoolV, CallV, CheckDecl, FieldDecl, IntV, LetDecl, MapDecl, ModMapDecl,
                  ModuleDecl, NameV, Neg, Num, Pair, Pow, RingDecl, RingSpec, SeqV, Session, Var,
                  format_value, parse_session)
from .fields import GF, QQ
from .poly import PolyRing
from .resolution import DEFAULT_BUDGET, deviations, golod_test, minimal_free_resolution
from .series import FORMULAS, INTEGER_ROLES, TruncatedSeries, evaluate_formula
from .sums import (ConnectedSumDiagram, amalgamated_duplication, connected_sum, connected_sum_over_k,
                   fiber_product, gorenstein_connected_sum, split_socle)

SCHEMA = 1


class EvaluationError(ValueError):
    pass


class PolyTuple(tuple):
    """Coefficients of a polynomial: trailing zeros are not significant."""


# -- rings with element evaluators ------------------------------------------------------


@dataclass
class RingEntry:
    algebra: FDAlgebra
    variables: dict = field(default_factory=dict)  # name -> vector
    pair: object = None  # (left_expr, right_expr) -> vector
    parent: "RingEntry | None" = None  # elements come from the parent through ``via``
    via: np.ndarray | None = None
    ring: PolyRing | None = None
    relations: list | None = None
    parts: dict = field(default_factory=dict)
    fiber: object = None  # FiberProduct presenting this ring, if any
    result: object = None  # SumResult producing this ring, if any

    def element(self, e):
        if self.parent is not None:
            return la.matmul(self.algebra.field, self.via, self.parent.element(e))
        return _eval(e, self)


def _eval(e, R: RingEntry):
    A = R.algebra
    F = A.field
    if isinstance(e, Num):
        return F.normalize(A.unit() * F(e.value))
    if isinstance(e, Var):
        if e.name not in R.variables:
            raise EvaluationError(f"{e.name!r} is not an element name here")
        return R.variables[e.name]
    if isinstance(e, Neg):
        return F.normalize(-_eval(e.arg, R))
    if isinstance(e, Pow):
        return A.power(_eval(e.base, R), e.exp)
    if isinstance(e, Pair):
        if R.pair is None:
            raise EvaluationError("pairs only name elements of fiber products and connected sums")
        return R.pair(e.left, e.right)
    a, b = _eval(e.left, R), _eval(e.right, R)
    if e.op == "+":
        return F.normalize(a + b)
    if e.op == "-":
        return F.normalize(a - b)
    if e.op == "*":
        return A.mul(a, b)
    # division by a nonzero constant
    if np.any(b[1:] != 0) or b[0] == 0:
        raise EvaluationError("only division by nonzero constants is supported")
    return F.normalize(a * F.div(F.one, b[0]))


def _poly_eval(e, ring: PolyRing):
    if isinstance(e, Num):
        return ring(e.value)
    if isinstance(e, Var):
        return ring.var(e.name)
    if isinstance(e, Neg):
        return -_poly_eval(e.arg, ring)
    if isinstance(e, Pow):
        return _poly_eval(e.base, ring) ** e.exp
    if isinstance(e, Pair):
        raise EvaluationError("pairs are not polynomials")
    a, b = _poly_eval(e.left, ring), _poly_eval(e.right, ring)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if not b.is_constant():
        raise EvaluationError("only division by nonzero constants is supported")
    return a * ring(ring.field.div(ring.field.one, b.constant_coeff()))


# -- records -------------------------------------------------------------------------------------


@dataclass
class CheckRecord:
    name: str
    status: str  # pass | fail | error
    expected: object
    actual: object
    provenance: str
    line: int = 0

    def as_dict(self):
        return {"name": self.name, "status": self.status, "expected": _jsonable(self.expected),
                "actual": _jsonable(self.actual), "provenance": self.provenance}


@dataclass
class Report:
    command: str
    records: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if any(r.status == "error" for r in self.records):
            return 2
        if any(r.status == "fail" for r in self.records):
            return 1
        return 0

    def as_dict(self):
        out = {"schema": SCHEMA, "command": self.command}
        if self.records:
            out["records"] = [r.as_dict() for r in self.records]
            out["summary"] = {s: sum(r.status == s for r in self.records) for s in ("pass", "fail", "error")}
        out.update({k: _jsonable(v) for k, v in self.data.items()})
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {d.get('schema')!r}")
        recs = [CheckRecord(r["name"], r["status"], _unjson(r["expected"]), _unjson(r["actual"]),
                            r["provenance"]) for r in d.get("records", [])]
        data = {k: v for k, v in d.items() if k not in ("schema", "command", "records", "summary")}
        return cls(d["command"], recs, data)

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            mark = {"pass": "PASS", "fail": "FAIL", "error": "ERROR"}[r.status]
            line = f"{mark:5} {r.name}"
            if r.status != "pass":
                line += f"  expected {_show(r.expected)}, got {_show(r.actual)}"
            lines.append(line)
        for k, v in self.data.items():
            lines.append(f"{k}: {_show(v)}")
        if self.records:
            s = self.as_dict()["summary"]
            lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['error']} errors")
        return "\n".join(lines)


_SAFE = 2 ** 53


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (str, float)):
        return v
    if isinstance(v, (int, np.integer)):
        v = int(v)
        return str(v) if abs(v) >= _SAFE else v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, TruncatedSeries)):
        return [_jsonable(x) for x in v]
    return str(v)


def _unjson(v):
    if isinstance(v, str) and v.lstrip("-").isdigit():
        return int(v)
    if isinstance(v, list):
        return [_unjson(x) for x in v]
    return v


def _show(v):
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_show(x)}" for k, x in v.items()) + "}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# -- the evaluator -------------------------------------------------------------------------------


class SessionRunner:
    """Builds every declared object in order; checks are evaluated on demand."""

    def __init__(self, session: Session, order: int = 8, budget: int = DEFAULT_BUDGET, seed: int = 0):
        self.session = session
        self.order = order
        self.budget = budget
        self.seed = seed
        self.fields, self.rings, self.maps, self.modmaps, self.modules, self.lets = {}, {}, {}, {}, {}, {}
        self.errors = {}  # declaration name -> message
        self.build()

    # names

    def ring(self, name: str) -> RingEntry:
        if "." in name:
            base, part = name.split(".", 1)
            obj = self.lets.get(base)
            if obj is None or part not in obj.parts:
                raise EvaluationError(f"{name!r} does not name a part")
            v = obj.parts[part]
            if isinstance(v, RingEntry):
                return v
            raise EvaluationError(f"{name!r} is not a ring")
        if name in self.rings:
            return self.rings[name]
        if name in self.lets:
            return self.lets[name]
        if name in self.errors:
            raise EvaluationError(f"{name!r} could not be built: {self.errors[name]}")
        raise EvaluationError(f"{name!r} is not a ring")

    def morphism(self, name: str) -> AlgebraMorphism:
        if "." in name:
            base, part = name.split(".", 1)
            obj = self.lets.get(base)
            if obj is not None and isinstance(obj.parts.get(part), AlgebraMorphism):
                return obj.parts[part]
        if name in self.maps:
            return self.maps[name]
        if name in self.errors:
            raise EvaluationError(f"{name!r} could not be built: {self.errors[name]}")
        raise EvaluationError(f"{name!r} is not a map")

    def module(self, name: str, over: FDAlgebra):
        if name in ("k", "residue") and name not in self.modules:
            return over.residue_module()
        if name in self.modules:
            M = self.modules[name]
            if M.algebra is not over:
                raise EvaluationError(f"module {name!r} is over a different algebra")
            return M
        raise EvaluationError(f"{name!r} is not a module")

    # declarations

    def build(self):
        for d in self.session.declarations:
            if isinstance(d, CheckDecl):
                continue
            try:
                self._declare(d)
            except Exception as exc:  # reported by the checks that use the name
                self.errors[d.name] = f"{type(exc).__name__}: {exc}"

    def _declare(self, d):
        if isinstance(d, FieldDecl):
            self.fields[d.name] = QQ if d.prime is None else GF(d.prime)
        elif isinstance(d, RingDecl):
            self.rings[d.name] = self.ring_from_spec(d.spec, d.name)
        elif isinstance(d, MapDecl):
            self.maps[d.name] = self._map(d)
        elif isinstance(d, ModMapDecl):
            self.modmaps[d.name] = self._modmap(d)
        elif isinstance(d, ModuleDecl):
            self.modules[d.name] = self._module(d.call)
        elif isinstance(d, LetDecl):
            self.lets[d.name] = self._let(d.call, d.name)

    def ring_from_spec(self, spec: RingSpec, name=None) -> RingEntry:
        if spec.field not in self.fields:
            raise EvaluationError(f"field {spec.field!r} is not available")
        F = self.fields[spec.field]
        if not spec.variables:
            k = residue_field(F)
            return RingEntry(k)
        ring = PolyRing(F, list(spec.variables))
        rels = [_poly_eval(r, ring) for r in spec.relations]
        A, pres = algebra_from_presentation(ring, rels, name=name)
        imgs = pres.variable_images()
        return RingEntry(A, {v: imgs[i] for i, (v, _) in enumerate(spec.variables)}, ring=ring, relations=rels)

    def _map(self, d: MapDecl) -> AlgebraMorphism:
        src, tgt = self.ring(d.source), self.ring(d.target)
        A, B = src.algebra, tgt.algebra
        if src.ring is None:
            raise EvaluationError("maps are declared out of presented rings")
        given = dict(d.images)
        images = []
        for v in src.ring.names:
            images.append(tgt.element(given[v]) if v in given else B.zero())
        return morphism_from_images(A.presentation, B, images)

    def _modmap(self, d: ModMapDecl):
        V_ring, R = self.ring(d.source), self.ring(d.target)
        e = self.morphism(d.over)
        T, A = V_ring.algebra, R.algebra
        F = A.field
        u = R.element(d.image)
        lifts = la.solve(F, e.matrix, F.identity(T.dim))
        if lifts is None:
            raise EvaluationError(f"{d.over!r} is not surjective")
        iota = np.stack([A.mul(lifts[:, j], u) for j in range(T.dim)], axis=1)
        return (T.regular_module(), iota, e)

    def _module(self, c: CallV):
        name = c.name
        if name == "via":
            return algebra_as_module(self.morphism(c.args[0].name))
        A = self.ring(c.args[0].name).algebra
        if name == "canonical":
            shift = self._kw(c, "shift", 0)
            return dual_canonical_module(A, shift=shift)
        if name == "residue":
            return A.residue_module()
        if name == "regular":
            return A.regular_module()
        if name == "socle_quotient":
            return quotient_module(A.regular_module(), A.socle_basis)
        raise EvaluationError(f"unknown module construction {name!r}")

    def _let(self, c: CallV, name) -> RingEntry:
        kind = c.name
        if kind == "fiber":
            eR, eS = (self.morphism(a.name) for a in c.args[:2])
            fp = fiber_product(eR, eS)
            return self._fiber_entry(fp, eR, eS)
        if kind == "connect":
            return self._connect(c)
        if kind in ("gorenstein_connect", "connect_k"):
            if kind == "connect_k":
                R, S = (self.ring(a.name) for a in c.args[:2])
                res, d = connected_sum_over_k(R.algebra, S.algebra)
                eR, eS = d.eR, d.eS
                srcs = (R, S)
            else:
                R, S, T = (self.ring(a.name) for a in c.args[:3])
                eR, eS = (self.morphism(a.name) for a in c.args[3:5])
                res, d = gorenstein_connected_sum(R.algebra, S.algebra, T.algebra, eR, eS)
                srcs = (R, S)
            return self._sum_entry(res, srcs)
        if kind == "dup":
            R = self.ring(c.args[0].name)
            gens = self._elements(R, c.exprs or ())
            fp = amalgamated_duplication(R.algebra, gens)
            return self._fiber_entry(fp, fp.eR, fp.eS, left=R, right=R)
        if kind == "split_socle":
            Q = self.ring(c.args[0].name)
            W = self._elements(Q, c.exprs) if c.exprs else None
            sp = split_socle(Q.algebra, W)
            F = Q.algebra.field
            B = RingEntry(sp.B, parent=Q, via=la.matmul(F, sp.fiber.rho.matrix, sp.iso.matrix))
            C = RingEntry(sp.C, parent=Q, via=la.matmul(F, sp.fiber.sigma.matrix, sp.iso.matrix))
            entry = RingEntry(sp.fiber.P, parent=Q, via=sp.iso.matrix)
            entry.parts = {"B": B, "C": C, "iso": sp.iso}
            return entry
        if kind in ("quotient", "socle_quotient"):
            Q = self.ring(c.args[0].name)
            gens = Q.algebra.socle_basis if kind == "socle_quotient" else self._elements(Q, c.exprs or ())
            B, pi = quotient(Q.algebra, gens)
            entry = RingEntry(B, parent=Q, via=pi.matrix)
            entry.parts = {"pi": pi}
            return entry
        if kind == "trivial_extension":
            Q = self.ring(c.args[0].name)
            cov = trivial_extension_cover(Q.algebra)
            F = Q.algebra.field
            emb = F.zeros((cov.source.dim, Q.algebra.dim))
            emb[: Q.algebra.dim] = F.identity(Q.algebra.dim)
            entry = RingEntry(cov.source, parent=Q, via=emb)
            entry.parts = {"pi": cov.map}
            return entry
        raise EvaluationError(f"unknown construction {kind!r}")

    def _elements(self, R: RingEntry, exprs):
        F = R.algebra.field
        if not exprs:
            return F.zeros((R.algebra.dim, 0))
        return np.stack([R.element(e) for e in exprs], axis=1)

    def _source_entry(self, m: AlgebraMorphism) -> RingEntry:
        for e in list(self.rings.values()) + list(self.lets.values()):
            if e.algebra is m.source:
                return e
        return RingEntry(m.source)

    def _fiber_entry(self, fp, eR, eS, left=None, right=None) -> RingEntry:
        left = left or self._source_entry(eR)
        right = right or self._source_entry(eS)

        def pair(a, b):
            return fp.element(left.element(a), right.element(b))

        entry = RingEntry(fp.P, pair=pair)
        entry.parts = {"R": left, "S": right, "T": RingEntry(fp.T), "rho": fp.rho, "sigma": fp.sigma}
        entry.fiber = fp
        return entry

    def _connect(self, c: CallV) -> RingEntry:
        eR, eS = (self.morphism(a.name) for a in c.args[:2])
        T = eR.target
        if c.exprs is not None:
            if len(c.exprs) != 2:
                raise EvaluationError("connect(eR, eS; iR(1), iS(1)) takes two images")
            R, S = self._source_entry(eR), self._source_entry(eS)
            F = T.field
            mats = []
            for e, X, img in ((eR, R, c.exprs[0]), (eS, S, c.exprs[1])):
                u = X.element(img)
                lifts = la.solve(F, e.matrix, F.identity(T.dim))
                mats.append(np.stack([X.algebra.mul(lifts[:, j], u) for j in range(T.dim)], axis=1))
            iR, iS = mats
            V = T.regular_module()
        else:
            (V, iR, _), (_, iS, _) = (self.modmaps[a.name] for a in c.args[2:4])
            R, S = self._source_entry(eR), self._source_entry(eS)
        d = ConnectedSumDiagram(R.algebra, S.algebra, T, V, eR, eS, iR, iS)
        res = connected_sum(d)
        return self._sum_entry(res, (R, S))

    def _sum_entry(self, res, srcs) -> RingEntry:
        fp = res.fiber
        if res.Q is None:
            raise EvaluationError("the connected sum is the zero ring")
        left, right = srcs

        def pair(a, b):
            return res.kappa(fp.element(left.element(a), right.element(b)))

        entry = RingEntry(res.Q, pair=pair)
        P = RingEntry(fp.P, pair=lambda a, b: fp.element(left.element(a), right.element(b)))
        P.parts = {"rho": fp.rho, "sigma": fp.sigma}
        entry.parts = {"P": P, "R": left, "S": right, "T": RingEntry(fp.T), "kappa": res.kappa,
                       "rho": fp.rho, "sigma": fp.sigma}
        entry.result = res
        return entry

    # values

    def value(self, v):
        if isinstance(v, IntV):
            return v.value
        if isinstance(v, BoolV):
            return v.value
        if isinstance(v, SeqV):
            return tuple(self.value(x) for x in v.items) if v.bracket == "(" else [self.value(x) for x in v.items]
        if isinstance(v, NameV):
            return v.name
        if isinstance(v, CallV):
            return self.call(v)
        raise EvaluationError(f"cannot evaluate {format_value(v)}")

    def _kw(self, c: CallV, key, default=None):
        for k, v in c.kwargs:
            if k == key:
                return self.value(v)
        return default

    def call(self, c: CallV):
        fn = getattr(self, f"_check_{c.name}", None)
        if fn is None:
            raise EvaluationError(f"unknown check kind {c.name!r}")
        return fn(c)

    def _alg(self, c: CallV) -> FDAlgebra:
        if not c.args or not isinstance(c.args[0], NameV):
            raise EvaluationError(f"{c.name} needs a ring argument")
        return self.ring(c.args[0].name).algebra

    def _check_length(self, c):
        return self._alg(c).dim

    def _check_hilbert(self, c):
        A = self._alg(c)
        if A.hilbert is None:
            raise EvaluationError("hilbert series needs a graded algebra")
        return PolyTuple(A.hilbert)

    def _check_type(self, c):
        return self._alg(c).type

    def _check_edim(self, c):
        return self._alg(c).edim

    def _check_gorenstein(self, c):
        return self._alg(c).is_gorenstein

    def _check_socle_degree(self, c):
        return self._alg(c).a_invariant

    def _check_audit(self, c):
        self._alg(c).audit()
        return True

    def _check_iso_presentation(self, c):
        Q = self.ring(c.args[0].name)
        spec = c.args[1]
        if not isinstance(spec, RingSpec):
            raise EvaluationError("iso_presentation(Q, F[...]/(...); images) needs a presentation")
        F = self.fields[spec.field]
        ring = PolyRing(F, list(spec.variables))
        rels = [_poly_eval(r, ring) for r in spec.relations]
        given = dict(c.images or ())
        missing = [v for v, _ in spec.variables if v not in given]
        if missing:
            raise EvaluationError(f"no image for {', '.join(missing)}")
        imgs = [Q.element(given[v]) for v, _ in spec.variables]
        res = check_presentation_iso(ring, rels, Q.algebra, imgs)
        self._last_reason = res.reason
        return bool(res)

    def _module_arg(self, c, A):
        if len(c.args) > 1:
            return self.module(c.args[1].name, A)
        name = self._kw(c, "module")
        return self.module(name, A) if name else None

    def _check_betti(self, c):
        A = self._alg(c)
        steps = self._kw(c, "steps", self.order)
        return tuple(minimal_free_resolution(A, self._module_arg(c, A), steps, self.budget).betti)

    def _check_poincare(self, c):
        A = self._alg(c)
        order = self._kw(c, "order", self.order)
        return tuple(minimal_free_resolution(A, self._module_arg(c, A), order, self.budget).betti)

    def _check_deviations(self, c):
        order = self._kw(c, "order", self.order)
        eps, _ = deviations(self._alg(c), order, self.budget)
        return tuple(eps.eps)

    def _check_ci(self, c):
        order = self._kw(c, "order", self.order)
        _, v = deviations(self._alg(c), order, self.budget)
        return v.complete_intersection

    def _check_ci_codim(self, c):
        order = self._kw(c, "order", self.order)
        _, v = deviations(self._alg(c), order, self.budget)
        return v.codim if v.complete_intersection else None

    def _check_golod(self, c):
        kappa = self.morphism(c.args[0].name)
        order = self._kw(c, "order", self.order)
        return golod_test(kappa, order, self.budget).golod

    def _check_gcl_bounds(self, c):
        Q = self.ring(c.args[0].name)
        fp = getattr(Q, "fiber", None)
        rep = gcl_bounds(Q.algebra, fiber=fp, seed=self.seed)
        return [rep.lower, rep.upper]

    def _check_formula(self, c):
        fid = c.args[0].name
        if fid not in FORMULAS:
            raise EvaluationError(f"unknown formula {fid!r}")
        roles, _ = FORMULAS[fid]
        inputs, polys, series_orders = {}, [], []
        order = None
        for k, v in c.kwargs:
            if k == "order":
                order = self.value(v)
                continue
            x = self.value(v)
            if k in INTEGER_ROLES:
                inputs[k] = int(x)
            elif isinstance(x, PolyTuple):
                polys.append(len(x) - 1)
                inputs[k] = list(x)
            else:
                series_orders.append(len(x) - 1)
                inputs[k] = TruncatedSeries(x)
        if order is None:
            order = min(series_orders) if series_orders else max(polys + [0])
        out = evaluate_formula(fid, inputs, order)
        return PolyTuple(out.coeffs) if not series_orders else tuple(out.coeffs)



_PROVENANCE = {
    "length": "structure constants", "hilbert": "structure constants", "type": "socle computation",
    "edim": "structure constants", "gorenstein": "socle computation", "socle_degree": "structure constants",
    "audit": "associativity and grading audit", "iso_presentation": "certified isomorphism",
    "betti": "minimal free resolution", "poincare": "minimal free resolution",
    "deviations": "minimal free resolution and product factorization", "ci": "deviations",
    "ci_codim": "deviations", "golod": "Golod bound comparison", "gcl_bounds": "colength bounds with witnesses",
}


def _compare(actual, expected) -> bool:
    if isinstance(actual, (list, tuple)) and isinstance(expected, (list, tuple)):
        a, b = list(actual), list(expected)
        if isinstance(actual, PolyTuple) or isinstance(expected, PolyTuple):
            while a and a[-1] == 0:
                a.pop()
            while b and b[-1] == 0:
                b.pop()
        if len(a) != len(b):
            return False
        return all(_compare(x, y) for x, y in zip(a, b))
    if isinstance(actual, bool) or isinstance(expected, bool):
        return type(actual) is type(expected) and actual == expected
    return actual == expected


def run_checks(runner: SessionRunner) -> Report:
    """One record per ``check`` declaration, in declaration order."""
    report = Report("verify")
    for d in runner.session.checks:
        name = format_value(d.lhs)
        kind = d.lhs.name if isinstance(d.lhs, CallV) else "value"
        prov = f"formula {d.lhs.args[0].name}" if kind == "formula" and d.lhs.args else _PROVENANCE.get(kind, kind)
        expected = actual = None
        try:
            expected = runner.value(d.expected)
            runner._last_reason = None
            actual = runner.value(d.lhs)
            ok = _compare(actual, expected)
            status = "pass" if ok else "fail"
            if not ok and getattr(runner, "_last_reason", None):
                prov += f" ({runner._last_reason})"
        except Exception as exc:
            status = "error"
            actual = f"{type(exc).__name__}: {exc}"
        report.records.append(CheckRecord(name, status, expected, actual, prov, d.line))
    return report


def load_session(path: str) -> Session:
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())
