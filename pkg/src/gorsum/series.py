"""Integer power series truncated at a fixed order, and the closed-form identities.

``evaluate_formula`` expands one named right-hand side from its input series;
the names and their roles are listed in ``FORMULAS``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


class SeriesError(ValueError):
    pass


class MissingRole(SeriesError):
    pass


class NonInvertibleLeadingTerm(SeriesError):
    pass


class TruncatedSeries:
    """``c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [int(c) for c in coeffs]
        if order is not None:
            coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        if not coeffs:
            raise SeriesError("a series needs at least one coefficient")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order):
        return cls([1], order)

    @classmethod
    def z(cls, order, power=1):
        c = [0] * (order + 1)
        if power <= order:
            c[power] = 1
        return cls(c)

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs})"

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == list(other)
        return NotImplemented

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.order)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, order)

    def __add__(self, other):
        other = self._lift(other)
        n = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries([a * other for a in self.coeffs])
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries([sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)])

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``z^k``."""
        return TruncatedSeries([0] * k + self.coeffs, self.order)

    def reciprocal(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NonInvertibleLeadingTerm(f"leading coefficient {c0} is not a unit in Z")
        out = [c0]
        for k in range(1, self.order + 1):
            s = sum(self.coeffs[i] * out[k - i] for i in range(1, k + 1))
            out.append(-s * c0)
        return TruncatedSeries(out)

    def __truediv__(self, other):
        other = self._lift(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, e: int):
        if e < 0:
            return (self ** -e).reciprocal()
        out = TruncatedSeries.one(self.order)
        for _ in range(e):
            out = out * self
        return out

    def polynomial_degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1


@dataclass(frozen=True)
class RationalSeries:
    """``numerator / denominator`` with integer polynomial coefficient lists."""

    numerator: tuple
    denominator: tuple

    def __init__(self, numerator, denominator=(1,)):
        object.__setattr__(self, "numerator", tuple(int(c) for c in numerator))
        object.__setattr__(self, "denominator", tuple(int(c) for c in denominator))

    def expand(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.numerator, order) / TruncatedSeries(self.denominator, order)


def termwise_leq(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    if a.order != b.order:
        raise SeriesError(f"orders differ: {a.order} vs {b.order}")
    return all(x <= y for x, y in zip(a.coeffs, b.coeffs))


def first_difference(a: TruncatedSeries, b: TruncatedSeries):
    for i, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return i
    return None


def reversed_polynomial(h: TruncatedSeries, a: int, order: int) -> TruncatedSeries:
    """``z^a * h(1/z)`` for a polynomial ``h`` of degree at most ``a``."""
    deg = h.polynomial_degree()
    if deg > a:
        raise SeriesError(f"degree {deg} exceeds the shift {a}")
    c = [0] * (order + 1)
    for i in range(deg + 1):
        if a - i <= order:
            c[a - i] += h.coeffs[i]
    return TruncatedSeries(c)


def _hilb_prod(H_R, H_S, H_T):
    return H_R + H_S - H_T


def _hilb_sum(H_R, H_S, H_T, H_V):
    return H_R + H_S - H_T - H_V


def _hilb_sum_gor(H_R, H_S, H_T, a):
    n = min(H_R.order, H_S.order, H_T.order)
    return H_R + H_S - H_T - reversed_polynomial(H_T, a, n)


def _dress_kramer(P_R_M, P_R_k, P_S_k):
    return P_R_M * P_S_k / (P_R_k + P_S_k - P_R_k * P_S_k)


def _fibprod_map(P_R_Rq, P_S_Sq, P_R_k, P_S_k):
    num = P_R_Rq * P_S_k + P_S_Sq * P_R_k - P_R_k * P_S_k
    return num / (P_R_k + P_S_k - P_R_k * P_S_k)


def _golod_bound(P_R_k, P_R_Rq):
    n = P_R_k.order
    z = TruncatedSeries.z(n)
    return P_R_k / (1 + z - z * P_R_Rq)


def _special_golod(P_P_k, r):
    return P_P_k / (1 - (P_P_k * r).shift(2))


def _amalgam(H_A, H_B, H_C):
    return 1 / (1 / H_B + 1 / H_C - 1 / H_A)


def _connsum_poincare(P_Rq_N, P_Rq_k, P_Sq_k, r):
    n = P_Rq_k.order
    one_minus = TruncatedSeries([1], n) - TruncatedSeries.z(n, 2) * r
    return P_Rq_N * P_Sq_k / (P_Rq_k + P_Sq_k - one_minus * P_Rq_k * P_Sq_k)


def _series_q(P_Rq_k, P_Sq_k, r):
    n = P_Rq_k.order
    return 1 / (1 / P_Rq_k + 1 / P_Sq_k - 1 + TruncatedSeries.z(n, 2) * r)


FORMULAS = {
    "HILB_PROD": (("H_R", "H_S", "H_T"), _hilb_prod),
    "HILB_SUM": (("H_R", "H_S", "H_T", "H_V"), _hilb_sum),
    "HILB_SUM_GOR": (("H_R", "H_S", "H_T", "a"), _hilb_sum_gor),
    "DRESS_KRAMER": (("P_R_M", "P_R_k", "P_S_k"), _dress_kramer),
    "FIBPROD_MAP": (("P_R_Rq", "P_S_Sq", "P_R_k", "P_S_k"), _fibprod_map),
    "GOLOD_BOUND": (("P_R_k", "P_R_Rq"), _golod_bound),
    "SPECIAL_GOLOD": (("P_P_k", "r"), _special_golod),
    "AMALGAM": (("H_A", "H_B", "H_C"), _amalgam),
    "CONNSUM_POINCARE": (("P_Rq_N", "P_Rq_k", "P_Sq_k", "r"), _connsum_poincare),
    "SERIES_Q": (("P_Rq_k", "P_Sq_k", "r"), _series_q),
}

INTEGER_ROLES = {"a", "r"}


def evaluate_formula(formula_id: str, inputs: dict, order: int | None = None) -> TruncatedSeries:
    """Expand the right-hand side of ``formula_id`` to ``order``.

    Series inputs may be :class:`TruncatedSeries`, :class:`RationalSeries` or
    plain coefficient lists; ``a`` and ``r`` are integers.
    """
    if formula_id not in FORMULAS:
        raise SeriesError(f"unknown formula {formula_id!r}")
    roles, fn = FORMULAS[formula_id]
    missing = [r for r in roles if r not in inputs]
    if missing:
        raise MissingRole(f"{formula_id} needs {', '.join(missing)}")
    if order is None:
        orders = [inputs[r].order for r in roles
                  if r not in INTEGER_ROLES and isinstance(inputs[r], TruncatedSeries)]
        order = min(orders) if orders else None
        if order is None:
            # plain lists are exact polynomials, so pad them to the longest
            orders = [len(inputs[r]) - 1 for r in roles
                      if r not in INTEGER_ROLES and isinstance(inputs[r], (list, tuple))]
            order = max(orders) if orders else 10
    args = []
    for r in roles:
        v = inputs[r]
        if r in INTEGER_ROLES:
            args.append(int(v))
        elif isinstance(v, RationalSeries):
            args.append(v.expand(order))
        elif isinstance(v, TruncatedSeries):
            if v.order < order:
                raise SeriesError(f"input {r} has order {v.order} < {order}")
            args.append(v.truncate(order))
        else:
            args.append(TruncatedSeries(v, order))
    return fn(*args)


def deviations_from_poincare(P: TruncatedSeries) -> list:
    """``eps_1..eps_N`` with ``P = prod (1+z^i)^eps_i (i odd) / prod (1-z^i)^eps_i (i even)``.

    Returns the raw integers; negative values are left to the caller to judge.
    """
    N = P.order
    if P.coeffs[0] != 1:
        raise SeriesError("Poincare series must start with 1")
    cur = TruncatedSeries.one(N)
    eps = []
    for i in range(1, N + 1):
        e = P.coeffs[i] - cur.coeffs[i]
        eps.append(e)
        cur = cur * _factor(i, e, N)
    return eps


def _factor(i: int, e: int, N: int) -> TruncatedSeries:
    c = [0] * (N + 1)
    if i % 2:
        # (1 + z^i)^e, e may be negative
        if e >= 0:
            for k in range(0, N // i + 1):
                c[k * i] = comb(e, k)
        else:
            return (TruncatedSeries(_factor(i, -e, N).coeffs)).reciprocal()
    else:
        if e >= 0:
            for k in range(0, N // i + 1):
                c[k * i] = comb(e + k - 1, k) if e else (1 if k == 0 else 0)
        else:
            return _factor(i, -e, N).reciprocal()
    return TruncatedSeries(c)
