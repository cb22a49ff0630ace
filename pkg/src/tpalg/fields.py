"""Exact scalar fields: the rationals and prime fields GF(p).

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
scalars are :class:`Residue` instances carrying their modulus.  Both
support ``+ - * /``, negation, equality and truth testing, so the rest of
the package never needs to know which field it is working over.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from sympy import isprime

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")
_INTEGER_RE = re.compile(r"^\s*(-?\d+)\s*$")


class Residue:
    """An element of GF(p), stored as an integer in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Residue(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) / self

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Base descriptor; subclasses are :class:`Rationals` and :class:`PrimeField`."""

    characteristic = 0

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, value) -> str:
        return str(value)

    def elements(self):
        raise TypeError(f"{self} is infinite")


class Rationals(Field):
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Residue):
            raise TypeError("cannot convert a GF(p) residue to a rational")
        return Fraction(value)

    def parse(self, text: str) -> Fraction:
        m = _RATIONAL_RE.match(text) if isinstance(text, str) else None
        if m is None:
            raise ValueError(f"not a rational number: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def format(self, value) -> str:
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def descriptor(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """GF(p) for an odd prime p."""

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool) or p < 3 or not isprime(p):
            raise ValueError(f"GF(p) needs an odd prime p, got {p!r}")
        self.p = p
        self.characteristic = p

    def __call__(self, value) -> Residue:
        if isinstance(value, Residue):
            if value.p != self.p:
                raise ValueError(f"residue mod {value.p} in GF({self.p})")
            return value
        if isinstance(value, Fraction):
            return Residue(value.numerator, self.p) / value.denominator
        return Residue(int(value), self.p)

    def parse(self, text: str) -> Residue:
        m = _INTEGER_RE.match(text) if isinstance(text, str) else None
        if m is None:
            raise ValueError(f"not an integer residue: {text!r}")
        return Residue(int(m.group(1)), self.p)

    def format(self, value) -> str:
        return str(self(value).value)

    def elements(self):
        return [Residue(v, self.p) for v in range(self.p)]

    def descriptor(self):
        return {"gf": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc) -> Field:
    """Accept ``"Q"``, ``{"gf": p}`` (also as JSON text) or the CLI shorthand ``"gf:p"``."""
    if isinstance(desc, str) and desc.lstrip().startswith("{"):
        try:
            desc = json.loads(desc)
        except json.JSONDecodeError:
            raise ValueError(f"bad field descriptor {desc!r}") from None
    if desc == "Q" or desc == "QQ":
        return QQ
    if isinstance(desc, dict) and set(desc) == {"gf"}:
        return PrimeField(desc["gf"])
    if isinstance(desc, str) and desc.lower().startswith("gf:"):
        try:
            p = int(desc[3:])
        except ValueError:
            raise ValueError(f"bad field descriptor {desc!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field descriptor {desc!r}")


def scalar_parse(text: str, field: Field = QQ):
    return field.parse(text)
