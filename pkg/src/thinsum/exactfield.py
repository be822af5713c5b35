"""Exact scalars over the rationals and over prime fields GF(p).

Zero tests are structural, so "non-zero coefficient" is always decided exactly.
Values are immutable; every operation returns a canonical result.

    >>> q = FieldSpec.rationals()
    >>> str(q.value(1, 2) + q.value(1, 3))
    '5/6'
    >>> gf5 = FieldSpec.prime(5)
    >>> gf5.value(2).inverse()
    FieldValue(GF(5), 3)
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, ParameterError, SpecMismatch

Payload = Union[Fraction, int]

MAX_PRIME = 2**31

_RATIONAL_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")
_RESIDUE_RE = re.compile(r"0|[1-9][0-9]*")


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


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int):
                raise ParameterError(f"field characteristic must be an int, got {self.p!r}")
            if not 2 <= self.p < MAX_PRIME:
                raise ParameterError(f"prime must satisfy 2 <= p < 2^31, got {self.p}")
            if not is_prime(self.p):
                raise ParameterError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __repr__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    __str__ = __repr__

    # -- raw payload arithmetic; used directly by the elimination kernels --

    def raw(self, num: int | Fraction, den: int = 1) -> Payload:
        if self.p is None:
            return Fraction(num, den)
        if isinstance(num, Fraction):
            num, den = num.numerator, num.denominator * den
        if den % self.p == 0:
            raise DivisionByZero(f"denominator {den} vanishes in GF({self.p})")
        return num * pow(den, -1, self.p) % self.p

    def add_raw(self, a: Payload, b: Payload) -> Payload:
        return a + b if self.p is None else (a + b) % self.p

    def sub_raw(self, a: Payload, b: Payload) -> Payload:
        return a - b if self.p is None else (a - b) % self.p

    def mul_raw(self, a: Payload, b: Payload) -> Payload:
        return a * b if self.p is None else a * b % self.p

    def neg_raw(self, a: Payload) -> Payload:
        return -a if self.p is None else -a % self.p

    def inv_raw(self, a: Payload) -> Payload:
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    # -- wrapped values --

    def value(self, num: int | Fraction, den: int = 1) -> FieldValue:
        return FieldValue(self, self.raw(num, den))

    def zero(self) -> FieldValue:
        return self.value(0)

    def one(self) -> FieldValue:
        return self.value(1)

    def elements(self):
        """All elements of a prime field, in residue order."""
        if self.p is None:
            raise ParameterError("the rationals cannot be enumerated")
        return [FieldValue(self, a) for a in range(self.p)]

    def random_value(self, rng: random.Random, nonzero: bool = False, bound: int = 9) -> FieldValue:
        """A pseudo-random element; rationals have |numerator| <= bound and denominator <= 4."""
        while True:
            if self.p is None:
                v = self.value(rng.randint(-bound, bound), rng.randint(1, 4))
            else:
                v = FieldValue(self, rng.randrange(self.p))
            if not (nonzero and v.is_zero()):
                return v


@dataclass(frozen=True)
class FieldValue:
    spec: FieldSpec
    payload: Payload

    def __post_init__(self):
        if self.spec.p is None:
            if not isinstance(self.payload, Fraction):
                raise ParameterError("rational payload must be a Fraction")
        elif type(self.payload) is not int or not 0 <= self.payload < self.spec.p:
            raise ParameterError(f"residue {self.payload!r} not canonical in {self.spec}")

    def _check(self, other: FieldValue) -> None:
        if not isinstance(other, FieldValue):
            raise TypeError(f"expected FieldValue, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def is_zero(self) -> bool:
        return not self.payload

    def __bool__(self):
        return bool(self.payload)

    def __add__(self, other: FieldValue) -> FieldValue:
        self._check(other)
        return FieldValue(self.spec, self.spec.add_raw(self.payload, other.payload))

    def __sub__(self, other: FieldValue) -> FieldValue:
        self._check(other)
        return FieldValue(self.spec, self.spec.sub_raw(self.payload, other.payload))

    def __mul__(self, other: FieldValue) -> FieldValue:
        self._check(other)
        return FieldValue(self.spec, self.spec.mul_raw(self.payload, other.payload))

    def __neg__(self) -> FieldValue:
        return FieldValue(self.spec, self.spec.neg_raw(self.payload))

    def inverse(self) -> FieldValue:
        return FieldValue(self.spec, self.spec.inv_raw(self.payload))

    def __truediv__(self, other: FieldValue) -> FieldValue:
        self._check(other)
        return self * other.inverse()

    def __str__(self):
        return render_value(self)

    def __repr__(self):
        return f"FieldValue({self.spec}, {self})"


def field_add(a: FieldValue, b: FieldValue) -> FieldValue:
    return a + b


def field_mul(a: FieldValue, b: FieldValue) -> FieldValue:
    return a * b


def field_neg(a: FieldValue) -> FieldValue:
    return -a


def field_inv(a: FieldValue) -> FieldValue:
    return a.inverse()


def render_value(a: FieldValue) -> str:
    """Canonical text: ``num/den`` (``/den`` dropped when 1) for Q, the residue for GF(p)."""
    return str(a.payload)


def parse_value(spec: FieldSpec, text: str) -> FieldValue:
    """Inverse of :func:`render_value`; non-canonical spellings are rejected."""
    if not isinstance(text, str):
        raise ParameterError(f"field value must be a string, got {text!r}")
    if spec.p is None:
        if not _RATIONAL_RE.fullmatch(text):
            raise ParameterError(f"malformed rational {text!r}")
        value = Fraction(text)
        if str(value) != text:
            raise ParameterError(f"rational {text!r} is not in canonical form ({value})")
        return FieldValue(spec, value)
    if not _RESIDUE_RE.fullmatch(text):
        raise ParameterError(f"malformed residue {text!r}")
    n = int(text)
    if n >= spec.p:
        raise ParameterError(f"residue {text} out of range for {spec}")
    return FieldValue(spec, n)


def parse_field(obj) -> FieldSpec:
    """Field descriptor as used in JSON files: ``"Q"`` or ``{"GF": p}``."""
    if obj == "Q":
        return FieldSpec.rationals()
    if isinstance(obj, dict) and list(obj) == ["GF"]:
        return FieldSpec.prime(obj["GF"])
    raise ParameterError(f'field must be "Q" or {{"GF": p}}, got {obj!r}')


def render_field(spec: FieldSpec):
    return "Q" if spec.p is None else {"GF": spec.p}
