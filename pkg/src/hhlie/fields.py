"""Exact ground fields: the rationals and prime fields.

Rationals are :class:`fractions.Fraction` values.  Prime-field elements are
:class:`Mod` instances carrying their modulus.  Plain ``int`` operands are
accepted everywhere and coerced; mixing a ``Fraction`` with a ``Mod`` (or two
``Mod`` values with different moduli) raises :class:`FieldMismatch`.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .errors import BadField, FieldMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Mod:
    """Residue class modulo a prime ``p``, always stored reduced in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"cannot mix F{self.p} and F{other.p}")
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch(f"cannot mix F{self.p} and Q")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return Mod(pow(self.v, -1, self.p), self.p) ** (-k)
        return Mod(pow(self.v, k, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return (other - self.v) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Base descriptor for a ground field; concrete fields are singletons."""

    characteristic: int

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def contains(self, x) -> bool:
        raise NotImplementedError

    def random_element(self, rng: random.Random, bound: int = 10):
        raise NotImplementedError

    def to_json(self, x) -> str:
        return str(x)

    def descriptor(self) -> str:
        """The field line of the presentation format (``Q`` or ``F <p>``)."""
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Mod):
            raise FieldMismatch("cannot coerce a prime-field element into Q")
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def random_element(self, rng, bound=10):
        return Fraction(rng.randint(-bound, bound))

    def descriptor(self):
        return "Q"

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "Q"

    def __reduce__(self):
        return (_rationals, ())


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise BadField(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatch(f"cannot coerce F{x.p} element into F{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes in F{self.p}")
            return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Mod(int(x), self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Mod) and x.p == self.p

    def elements(self):
        return [Mod(v, self.p) for v in range(self.p)]

    def random_element(self, rng, bound=10):
        return Mod(rng.randrange(self.p), self.p)

    def descriptor(self):
        return f"F {self.p}"

    def __repr__(self):
        return f"GF({self.p})"

    def __str__(self):
        return f"F{self.p}"

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


def _rationals():
    return QQ


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_string(text: str) -> Field:
    """Parse ``Q``, ``F5``, ``F 5`` or ``GF5`` into a field."""
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return QQ
    for prefix in ("GF", "F"):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            return GF(int(t[len(prefix):]))
    raise BadField(f"unknown field {text!r}")
