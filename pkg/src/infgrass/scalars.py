"""Exact scalar fields: prime fields GF(p) and the rationals.

Scalars are plain Python values. An element of GF(p) is an ``int`` in
``range(p)``; a rational is a :class:`fractions.Fraction`. A :class:`Field`
knows how to put arbitrary input into that canonical form and does all the
arithmetic, so the rest of the package never touches ``%`` directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """An exact field.

    ``modulus`` is a prime ``p`` for GF(p) and ``0`` for the rationals.
    """

    modulus: int = 0

    def __post_init__(self):
        if self.modulus != 0 and not _is_prime(self.modulus):
            raise ValueError(f"GF({self.modulus}): modulus must be prime")

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def is_finite(self) -> bool:
        return self.modulus != 0

    @property
    def zero(self) -> Scalar:
        return 0 if self.modulus else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.modulus else Fraction(1)

    def __call__(self, value) -> Scalar:
        """Coerce ``value`` (int, Fraction, or string) to canonical form."""
        if isinstance(value, str):
            return self.parse(value)
        p = self.modulus
        if not p:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({p})")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, bool) or not isinstance(value, int):
            value = int(value)
        return value % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.modulus if self.modulus else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.modulus if self.modulus else a - b

    def neg(self, a: Scalar) -> Scalar:
        return -a % self.modulus if self.modulus else -a

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b % self.modulus if self.modulus else a * b

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def eq(self, a: Scalar, b: Scalar) -> bool:
        return self(a) == self(b)

    def random(self, rng: random.Random) -> Scalar:
        """Uniform over GF(p); small numerator/denominator fractions over Q."""
        if self.modulus:
            return rng.randrange(self.modulus)
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    def random_nonzero(self, rng: random.Random) -> Scalar:
        while True:
            x = self.random(rng)
            if x != 0:
                return x

    def elements(self):
        """All elements of a finite field, in increasing residue order."""
        if not self.modulus:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.modulus)

    def format(self, a: Scalar) -> str:
        return str(a)

    def parse(self, text: str) -> Scalar:
        return self(Fraction(text.strip()))

    def __str__(self) -> str:
        return f"gf:{self.modulus}" if self.modulus else "q"

    def __repr__(self) -> str:
        return f"GF({self.modulus})" if self.modulus else "QQ"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse the CLI spelling ``gf:<p>`` or ``q``."""
    t = text.strip().lower()
    if t in ("q", "qq", "rationals"):
        return QQ
    if t.startswith("gf:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise ValueError(f"bad field {text!r}") from None
        return Field(p)
    raise ValueError(f"bad field {text!r}; expected gf:<p> or q")


def field_ops(spec: Field | str) -> Field:
    """Return the arithmetic suite for a field spec (a :class:`Field` or its spelling)."""
    return spec if isinstance(spec, Field) else parse_field(spec)
