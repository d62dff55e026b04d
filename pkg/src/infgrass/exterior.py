"""Signed-index exterior algebra at a finite stage.

Basis labels are nonzero integers: ``-n..-1`` and ``1..p`` at stage ``(n, p)``.
They are totally ordered through ``mu`` (``-j -> 2j``, ``i -> 2i - 1``), and a
wedge basis element is stored as the tuple of its labels sorted by ``mu``.
That tuple is a *wedge index*; every sign in the package is the parity of a
sort into this normal form.

Elements live on one of two sides: ``primal`` (in the exterior powers of V)
or ``dual`` (of V*). A dual basis element ``x*_T`` pairs with ``x_U`` to
``[T == U]`` for normal-form ``T`` and ``U``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import det
from .scalars import QQ, Field, Scalar

WedgeIndex = tuple  # tuple[int, ...] sorted by mu

PRIMAL = "primal"
DUAL = "dual"


def mu(i: int) -> int:
    """Position of the label ``i`` in the well order: ``-j -> 2j``, ``i -> 2i - 1``."""
    if i == 0:
        raise ValueError("0 is not a basis label")
    return -2 * i if i < 0 else 2 * i - 1


def mu_inverse(k: int) -> int:
    if k < 1:
        raise ValueError("mu takes values in the positive integers")
    return -(k // 2) if k % 2 == 0 else (k + 1) // 2


def mu_word(indices: Iterable[int]) -> tuple[int, ...]:
    return tuple(mu(i) for i in indices)


def wedge_index_cmp(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare two wedge indices lexicographically on their mu-words.

    Returns -1, 0 or 1.
    """
    if len(a) != len(b):
        raise ValueError(f"cannot compare wedge indices of degrees {len(a)} and {len(b)}")
    wa, wb = mu_word(a), mu_word(b)
    return (wa > wb) - (wa < wb)


def sort_sign(seq: Sequence) -> int:
    """Parity of the permutation sorting ``seq`` (distinct, comparable items)."""
    inversions = sum(1 for x, y in itertools.combinations(seq, 2) if x > y)
    return -1 if inversions % 2 else 1


def canonicalize(raw: Iterable[int]):
    """Normal form of an oriented wedge of basis labels.

    Returns ``None`` when a label repeats (the wedge is zero); otherwise the
    mu-sorted wedge index and the sign of the sorting permutation.
    """
    raw = tuple(raw)
    if len(set(raw)) != len(raw):
        return None
    if 0 in raw:
        raise ValueError("0 is not a basis label")
    word = mu_word(raw)
    return tuple(sorted(raw, key=mu)), sort_sign(word)


@dataclass(frozen=True)
class Stage:
    """The truncation with labels ``-n..-1`` and ``1..p``.

    ``<=`` is the product order: ``(n, p) <= (m, q)`` iff ``n <= m`` and ``p <= q``.
    """

    n: int
    p: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.p, int)) or self.n < 1 or self.p < 1:
            raise ValueError(f"stage needs positive integers, got ({self.n}, {self.p})")

    @classmethod
    def parse(cls, text: str) -> "Stage":
        try:
            n, p = (int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"bad stage {text!r}; expected n,p") from None
        return cls(n, p)

    @cached_property
    def symbols(self) -> tuple[int, ...]:
        """All labels of the stage in mu order."""
        labels = list(range(-self.n, 0)) + list(range(1, self.p + 1))
        return tuple(sorted(labels, key=mu))

    @cached_property
    def symbol_set(self) -> frozenset:
        return frozenset(self.symbols)

    @property
    def dim(self) -> int:
        return self.n + self.p

    def __contains__(self, i: int) -> bool:
        return i in self.symbol_set

    def __le__(self, other: "Stage") -> bool:
        return self.n <= other.n and self.p <= other.p

    def basis(self, degree: int | None = None) -> list[WedgeIndex]:
        """Wedge indices of the given degree (default ``p``) in increasing order."""
        d = self.p if degree is None else degree
        return [tuple(c) for c in itertools.combinations(self.symbols, d)]

    def is_key(self, key: Sequence[int]) -> bool:
        return all(i in self.symbol_set for i in key) and list(mu_word(key)) == sorted(set(mu_word(key)))

    def __str__(self) -> str:
        return f"{self.n},{self.p}"


class ExteriorElement:
    """A sparse element of an exterior power at a stage.

    ``coeffs`` maps wedge indices to nonzero scalars. Zero coefficients are
    pruned eagerly; degree 0 elements are scalars on the empty key.
    """

    __slots__ = ("stage", "degree", "coeffs", "side", "field")

    def __init__(self, stage: Stage, degree: int, coeffs: Mapping | None = None,
                 side: str = DUAL, field: Field = QQ):
        if side not in (PRIMAL, DUAL):
            raise ValueError(f"side must be {PRIMAL!r} or {DUAL!r}")
        self.stage = stage
        self.degree = degree
        self.side = side
        self.field = field
        clean = {}
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"key {key} has degree {len(key)}, expected {degree}")
            if not stage.is_key(key):
                raise ValueError(f"key {key} is not a normal-form wedge index at stage {stage}")
            c = field(c)
            if c != 0:
                clean[key] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, stage, degree, coeffs, side, field):
        obj = cls.__new__(cls)
        obj.stage, obj.degree, obj.side, obj.field = stage, degree, side, field
        obj.coeffs = {k: v for k, v in coeffs.items() if v != 0}
        return obj

    def _like(self, coeffs, stage=None, degree=None):
        return ExteriorElement._raw(stage or self.stage, self.degree if degree is None else degree,
                                    coeffs, self.side, self.field)

    @classmethod
    def basis_element(cls, stage: Stage, indices: Sequence[int], side: str = DUAL,
                      field: Field = QQ, coeff: Scalar = 1) -> "ExteriorElement":
        """``coeff * x_{i_1} ^ ... ^ x_{i_d}`` for labels in any order."""
        r = canonicalize(indices)
        if r is None:
            return cls(stage, len(indices), {}, side, field)
        key, sign = r
        return cls(stage, len(key), {key: field(coeff) * sign}, side, field)

    @classmethod
    def covector(cls, stage: Stage, values: Mapping[int, Scalar], field: Field = QQ) -> "ExteriorElement":
        """The dual degree-1 element ``sum values[i] * x*_i``."""
        return cls(stage, 1, {(i,): c for i, c in values.items()}, DUAL, field)

    @classmethod
    def zero(cls, stage: Stage, degree: int, side: str = DUAL, field: Field = QQ):
        return cls(stage, degree, {}, side, field)

    def __getitem__(self, key: Sequence[int]) -> Scalar:
        """Coefficient on ``x_{key}``; ``key`` may be in any order (sign applied)."""
        r = canonicalize(key)
        if r is None:
            return self.field.zero
        k, sign = r
        c = self.coeffs.get(k, self.field.zero)
        return c if sign == 1 else self.field.neg(c)

    def items(self):
        return self.coeffs.items()

    def __iter__(self) -> Iterator[WedgeIndex]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_compatible(self, other: "ExteriorElement"):
        if (self.stage, self.side, self.field) != (other.stage, other.side, other.field):
            raise ValueError("elements live in different spaces (stage/side/field mismatch)")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degrees")
        F = self.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = F.add(out.get(k, F.zero), c)
        return self._like(out)

    def __neg__(self) -> "ExteriorElement":
        return self._like({k: self.field.neg(c) for k, c in self.coeffs.items()})

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def scale(self, t: Scalar) -> "ExteriorElement":
        F = self.field
        t = F(t)
        return self._like({k: F.mul(t, c) for k, c in self.coeffs.items()})

    def restage(self, stage: Stage) -> "ExteriorElement":
        for key in self.coeffs:
            if not all(i in stage for i in key):
                raise ValueError(f"key {key} does not exist at stage {stage}")
        return self._like(self.coeffs, stage=stage)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return (self.stage, self.degree, self.side, self.field) == \
            (other.stage, other.degree, other.side, other.field) and self.coeffs == other.coeffs

    __hash__ = None

    def to_json(self) -> list[dict]:
        return [{"indexList": list(k), "coeff": self.field.format(c)}
                for k, c in sorted(self.coeffs.items(), key=lambda kc: mu_word(kc[0]))]

    def __repr__(self) -> str:
        star = "*" if self.side == DUAL else ""
        if not self.coeffs:
            return f"0<{self.stage}>"
        terms = " + ".join(f"{self.field.format(c)}*X{star}{list(k)}"
                           for k, c in sorted(self.coeffs.items(), key=lambda kc: mu_word(kc[0])))
        return f"{terms} <{self.stage}>"


def wedge(u: ExteriorElement, v: ExteriorElement) -> ExteriorElement:
    """Exterior product, sorted into normal form with the sign tracked."""
    u._check_compatible(v)
    F = u.field
    out: dict = {}
    for a, ca in u.coeffs.items():
        for b, cb in v.coeffs.items():
            r = canonicalize(a + b)
            if r is None:
                continue
            key, sign = r
            c = F.mul(ca, cb)
            out[key] = F.add(out.get(key, F.zero), c if sign == 1 else F.neg(c))
    return ExteriorElement._raw(u.stage, u.degree + v.degree, out, u.side, F)


def interior(i: int, omega: ExteriorElement) -> ExteriorElement:
    """Contraction of a dual element with the basis vector ``x_i`` in the first slot.

    ``interior(i, w)(v_1, ..., v_{d-1}) = w(x_i, v_1, ..., v_{d-1})``.
    """
    if omega.side != DUAL:
        raise ValueError("interior product is taken on dual elements")
    if omega.degree < 1:
        raise ValueError("cannot contract a degree-0 element")
    F = omega.field
    out = {}
    for key, c in omega.coeffs.items():
        if i not in key:
            continue
        pos = key.index(i)
        rest = key[:pos] + key[pos + 1:]
        out[rest] = c if pos % 2 == 0 else F.neg(c)
    return ExteriorElement._raw(omega.stage, omega.degree - 1, out, DUAL, F)


def pairing(phi: ExteriorElement, u) -> Scalar:
    """Evaluate a dual element on a primal one.

    ``u`` is a primal :class:`ExteriorElement` or a sequence of labels read as
    the oriented wedge ``x_{u_1} ^ ... ^ x_{u_d}``.
    """
    if phi.side != DUAL:
        raise ValueError("first argument of pairing must be a dual element")
    F = phi.field
    if not isinstance(u, ExteriorElement):
        u = ExteriorElement.basis_element(phi.stage, tuple(u), PRIMAL, F)
    if u.side != PRIMAL:
        raise ValueError("second argument of pairing must be primal")
    if u.degree != phi.degree:
        raise ValueError(f"degree mismatch in pairing: {phi.degree} vs {u.degree}")
    if u.stage != phi.stage:
        raise ValueError("stage mismatch in pairing")
    total = F.zero
    small, big = (phi.coeffs, u.coeffs) if len(phi.coeffs) <= len(u.coeffs) else (u.coeffs, phi.coeffs)
    for key, c in small.items():
        d = big.get(key)
        if d is not None:
            total = F.add(total, F.mul(c, d))
    return total


def det_pairing(covectors: Sequence[Mapping[int, Scalar]], indices: Sequence[int],
                field: Field = QQ) -> Scalar:
    """``(f_1 ^ ... ^ f_d)(x_{j_1} ^ ... ^ x_{j_d}) = det[f_a(x_{j_b})]``.

    Each covector is a mapping label -> coefficient; this never forms the
    expanded wedge.
    """
    if len(covectors) != len(indices):
        raise ValueError("degree mismatch in pairing")
    return det(field, [[f.get(j, 0) for j in indices] for f in covectors])


def wedge_covectors(stage: Stage, covectors: Sequence[Mapping[int, Scalar]],
                    field: Field = QQ) -> ExteriorElement:
    """The dual element ``f_1 ^ ... ^ f_d`` expanded in the wedge basis."""
    acc = ExteriorElement(stage, 0, {(): 1}, DUAL, field)
    for f in covectors:
        acc = wedge(acc, ExteriorElement.covector(stage, f, field))
    return acc


def map_eta(u: ExteriorElement) -> ExteriorElement:
    """Inclusion of a primal element at ``(n, p)`` into stage ``(n + 1, p)``."""
    if u.side != PRIMAL:
        raise ValueError("eta acts on primal elements")
    return u.restage(Stage(u.stage.n + 1, u.stage.p))


def map_beta(u: ExteriorElement) -> ExteriorElement:
    """``u -> u ^ x_{p+1}``, landing at stage ``(n, p + 1)``."""
    if u.side != PRIMAL:
        raise ValueError("beta acts on primal elements")
    target = Stage(u.stage.n, u.stage.p + 1)
    extra = ExteriorElement(target, 1, {(target.p,): 1}, PRIMAL, u.field)
    return wedge(u.restage(target), extra)


def map_xi(omega: ExteriorElement) -> ExteriorElement:
    """Dual restriction from ``(n + 1, p)`` to ``(n, p)``: forget ``x*_{-(n+1)}``."""
    if omega.side != DUAL:
        raise ValueError("xi acts on dual elements")
    if omega.stage.n < 2:
        raise ValueError(f"xi needs a source stage with n >= 2, got {omega.stage}")
    drop = -omega.stage.n
    target = Stage(omega.stage.n - 1, omega.stage.p)
    kept = {k: c for k, c in omega.coeffs.items() if drop not in k}
    return ExteriorElement._raw(target, omega.degree, kept, DUAL, omega.field)


def map_theta(omega: ExteriorElement) -> ExteriorElement:
    """Dual map from ``(n, p + 1)`` to ``(n, p)``: contraction with ``x_{p+1}``.

    In coordinates, ``(theta w)_S = s(S) * w_{S + {p+1}}`` where ``s(S)`` is the
    sign of moving ``p + 1`` to the front of the normal form of ``S + {p+1}``.
    """
    if omega.side != DUAL:
        raise ValueError("theta acts on dual elements")
    if omega.stage.p < 2:
        raise ValueError(f"theta needs a source stage with p >= 2, got {omega.stage}")
    target = Stage(omega.stage.n, omega.stage.p - 1)
    contracted = interior(omega.stage.p, omega)
    return ExteriorElement._raw(target, contracted.degree, contracted.coeffs, DUAL, omega.field)
