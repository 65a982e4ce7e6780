"""Exact coefficient fields: the rationals and prime fields GF(p).

Scalars are plain Python values (``Fraction`` for QQ, ``int`` in ``[0, p)``
for GF(p)); the :class:`Field` object carries the arithmetic.  Arrays of
scalars are numpy arrays of dtype ``object`` (QQ, large p) or ``int64``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np


class FieldError(ValueError):
    pass


class Field:
    """Common interface; see :class:`Rationals` and :class:`PrimeField`."""

    name: str
    characteristic: int
    dtype: object

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def mul(self, a, b):
        return self.reduce(a * b)

    def neg(self, a):
        return self.reduce(-a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- arrays -------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Coerce nested sequences to a normalized array over this field."""
        arr = np.array(data, dtype=object)
        if arr.size:
            flat = [self(x) for x in arr.ravel()]
            arr = np.array(flat, dtype=object).reshape(arr.shape)
        return arr.astype(self.dtype) if self.dtype is not object else arr

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            arr = np.empty(shape, dtype=object)
            arr.fill(self.zero)
            return arr
        return np.zeros(shape, dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        arr = self.zeros((n, n))
        for i in range(n):
            arr[i, i] = self.one
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.normalize(a @ b)


class Rationals(Field):
    name = "QQ"
    characteristic = 0
    dtype = object

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, float):
            raise FieldError("floating point input is not exact")
        return Fraction(x)

    def reduce(self, a):
        return a

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def random_element(self, rng, bound: int = 9):
        return Fraction(int(rng.integers(-bound, bound + 1)))

    def random_array(self, rng, shape, bound: int = 9) -> np.ndarray:
        ints = rng.integers(-bound, bound + 1, size=shape)
        return self.array(ints)


class PrimeField(Field):
    # int64 products of two reduced entries stay far below 2**63 for p < 2**24
    _SMALL = 1 << 24

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not _is_prime(p):
            raise FieldError(f"GF({p}) requires a prime modulus")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.dtype = np.int64 if p < self._SMALL else object

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, str):
            return self(Fraction(x))
        if isinstance(x, float):
            raise FieldError("floating point input is not exact")
        return int(x) % self.p

    def reduce(self, a):
        return a % self.p

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def random_element(self, rng, bound=None):
        return int(rng.integers(0, self.p))

    def random_array(self, rng, shape, bound=None) -> np.ndarray:
        if self.dtype is object:
            return self.array(rng.integers(0, min(self.p, 1 << 62), size=shape))
        return rng.integers(0, self.p, size=shape).astype(np.int64)


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """Parse ``"QQ"`` or ``"GF(p)"``."""
    name = name.strip()
    if name == "QQ":
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return GF(int(name[3:-1]))
    raise FieldError(f"unknown field {name!r}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
