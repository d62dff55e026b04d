"""Commutative polynomials whose variables are wedge indices.

These are elements of the symmetric algebra on the exterior power of V at a
stage, i.e. functions on the dual exterior power. Monomials are unsigned:
a factor is a set of labels, written in mu-sorted normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exterior import Stage, WedgeIndex, mu, mu_word
from .scalars import QQ, Field, Scalar


@dataclass(frozen=True)
class Monomial:
    """A commutative product of wedge-index variables at a stage."""

    stage: Stage
    factors: tuple

    def __post_init__(self):
        norm = []
        for f in self.factors:
            f = tuple(sorted(f, key=mu))
            if len(set(f)) != len(f):
                raise ValueError(f"factor {f} repeats a label")
            if not all(i in self.stage for i in f):
                raise ValueError(f"factor {f} does not live at stage {self.stage}")
            norm.append(f)
        if len({len(f) for f in norm}) > 1:
            raise ValueError("all factors of a monomial must have the same wedge degree")
        object.__setattr__(self, "factors", tuple(sorted(norm, key=mu_word)))

    @classmethod
    def of(cls, stage: Stage, *factors: Sequence[int]) -> "Monomial":
        return cls(stage, tuple(tuple(f) for f in factors))

    @classmethod
    def unit(cls, stage: Stage) -> "Monomial":
        return cls(stage, ())

    @property
    def degree(self) -> int:
        return len(self.factors)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.stage != other.stage:
            raise ValueError("stage mismatch")
        return Monomial(self.stage, self.factors + other.factors)

    def counts(self) -> dict[WedgeIndex, int]:
        out: dict = {}
        for f in self.factors:
            out[f] = out.get(f, 0) + 1
        return out

    def divides(self, other: "Monomial") -> bool:
        """Plain (not up-to-symmetry) divisibility."""
        mine, theirs = self.counts(), other.counts()
        return all(theirs.get(f, 0) >= k for f, k in mine.items())

    def quotient(self, other: "Monomial") -> "Monomial":
        """``self / other``; raises ValueError unless ``other.divides(self)``."""
        rest = list(self.factors)
        for f in other.factors:
            if f not in rest:
                raise ValueError(f"{other} does not divide {self}")
            rest.remove(f)
        return Monomial(self.stage, tuple(rest))

    def evaluate(self, coords: Mapping[WedgeIndex, Scalar], field: Field) -> Scalar:
        v = field.one
        for f in self.factors:
            c = coords.get(f)
            if c is None or c == 0:
                return field.zero
            v = field.mul(v, c)
        return v

    def to_json(self) -> list[list[int]]:
        return [list(f) for f in self.factors]

    def __repr__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join("X" + str(list(f)) for f in self.factors)


class Polynomial:
    """A sparse polynomial over a field in wedge-index variables."""

    __slots__ = ("stage", "field", "terms")

    def __init__(self, stage: Stage, terms: Mapping[Monomial, Scalar] | None = None, field: Field = QQ):
        self.stage = stage
        self.field = field
        clean = {}
        for m, c in (terms or {}).items():
            if m.stage != stage:
                raise ValueError("monomial from another stage")
            c = field(c)
            if c != 0:
                clean[m] = field.add(clean.get(m, field.zero), c)
        self.terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def from_monomial(cls, m: Monomial, field: Field = QQ, coeff: Scalar = 1) -> "Polynomial":
        return cls(m.stage, {m: coeff}, field)

    def _check(self, other: "Polynomial"):
        if self.stage != other.stage or self.field != other.field:
            raise ValueError("polynomials over different stages or fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, F.zero), c)
        return Polynomial(self.stage, out, F)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.stage, {m: self.field.neg(c) for m, c in self.terms.items()}, self.field)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, t: Scalar) -> "Polynomial":
        F = self.field
        t = F(t)
        return Polynomial(self.stage, {m: F.mul(t, c) for m, c in self.terms.items()}, F)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        F = self.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = F.add(out.get(m, F.zero), F.mul(c1, c2))
        return Polynomial(self.stage, out, F)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.stage == other.stage and self.field == other.field and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or degree in ds)

    def evaluate(self, coords: Mapping[WedgeIndex, Scalar]) -> Scalar:
        """Value at the point whose coordinate on variable ``S`` is ``coords[S]``."""
        F = self.field
        total = F.zero
        for m, c in self.terms.items():
            v = m.evaluate(coords, F)
            if v != 0:
                total = F.add(total, F.mul(c, v))
        return total

    def to_json(self) -> list[dict]:
        return [{"monomial": m.to_json(), "coeff": self.field.format(c)} for m, c in self.terms.items()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{self.field.format(c)}*{m!r}" for m, c in self.terms.items())
