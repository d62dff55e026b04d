"""The affine cone over the Grassmannian at a stage.

A cone point is a decomposable dual p-vector, stored by its Plücker
coordinates: the value on the normal-form wedge index ``S`` is the maximal
minor of a representing matrix on the columns ``S``. Decomposability is
tested with the (p-1, p+1) shuffle quadrics.
"""

from __future__ import annotations

import csv
import itertools
import json
import random
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

from .exterior import (DUAL, ExteriorElement, Stage, canonicalize, map_theta, map_xi, mu_word,
                       wedge_covectors)
from .linalg import det
from .polynomials import Monomial, Polynomial
from .scalars import QQ, Field, Scalar


class ConePoint(ExteriorElement):
    """A point of the affine cone over the Grassmannian (dual side)."""

    __slots__ = ()

    def __init__(self, stage: Stage, coeffs: Mapping, field: Field = QQ,
                 degree: int | None = None, validate: bool = False):
        super().__init__(stage, stage.p if degree is None else degree, coeffs, DUAL, field)
        if validate:
            self.validate()

    @classmethod
    def from_element(cls, elem: ExteriorElement, validate: bool = True) -> "ConePoint":
        if elem.side != DUAL:
            raise ValueError("cone points live on the dual side")
        pt = cls._raw(elem.stage, elem.degree, elem.coeffs, DUAL, elem.field)
        if validate:
            pt.validate()
        return pt

    def validate(self) -> "ConePoint":
        if not is_cone_point(self):
            raise ValueError("vector violates a Plücker relation; not a cone point")
        return self

    def scale(self, t: Scalar) -> "ConePoint":
        return ConePoint.from_element(super().scale(t), validate=False)

    def to_json(self) -> list[dict]:
        return [{"set": list(k), "value": self.field.format(c)}
                for k, c in sorted(self.coeffs.items(), key=lambda kc: mu_word(kc[0]))]


@dataclass(frozen=True)
class AlphaMatrix:
    """Big-cell parameters: ``entries[i-1][j-1]`` is alpha_i^j, ``1 <= i <= p``, ``1 <= j <= n``."""

    stage: Stage
    entries: tuple
    field: Field = QQ

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in row) for row in self.entries)
        if len(rows) != self.stage.p or any(len(r) != self.stage.n for r in rows):
            raise ValueError(f"alpha matrix must be {self.stage.p} x {self.stage.n} at stage {self.stage}")
        object.__setattr__(self, "entries", rows)

    def __call__(self, i: int, j: int) -> Scalar:
        return self.entries[i - 1][j - 1]

    @classmethod
    def zero(cls, stage: Stage, field: Field = QQ) -> "AlphaMatrix":
        return cls(stage, tuple((0,) * stage.n for _ in range(stage.p)), field)

    @classmethod
    def random(cls, stage: Stage, field: Field, rng: random.Random) -> "AlphaMatrix":
        return cls(stage, tuple(tuple(field.random(rng) for _ in range(stage.n))
                                for _ in range(stage.p)), field)

    def covectors(self) -> list[dict[int, Scalar]]:
        """The shifted covectors ``x*_i + sum_j alpha_i^j x*_{-j}``."""
        out = []
        for i in range(1, self.stage.p + 1):
            f = {i: self.field.one}
            for j in range(1, self.stage.n + 1):
                if self(i, j) != 0:
                    f[-j] = self(i, j)
            out.append(f)
        return out


def pluecker_from_matrix(matrix: Sequence[Sequence], stage: Stage, field: Field = QQ,
                         columns: Sequence[int] | None = None, check: bool = True) -> ConePoint:
    """Plücker coordinates of the row space of ``matrix``.

    Rows are covectors; column ``k`` holds the coefficient of ``x*_{columns[k]}``
    (default: the stage labels in mu order). A rank-deficient matrix gives the
    zero point.
    """
    cols = tuple(columns) if columns is not None else stage.symbols
    if len(cols) != stage.dim or set(cols) != stage.symbol_set:
        raise ValueError(f"columns {cols} are not the labels of stage {stage}")
    rows = [[field(x) for x in row] for row in matrix]
    if not rows or len(rows) > stage.dim:
        raise ValueError(f"need between 1 and {stage.dim} rows, got {len(rows)}")
    if any(len(r) != len(cols) for r in rows):
        raise ValueError(f"every row needs {len(cols)} entries")
    pos = {c: k for k, c in enumerate(cols)}
    coords = {}
    for S in stage.basis(len(rows)):
        v = det(field, [[r[pos[s]] for s in S] for r in rows])
        if v != 0:
            coords[S] = v
    pt = ConePoint._raw(stage, len(rows), coords, DUAL, field)
    if check:
        pt.validate()
    return pt


def random_matrix(stage: Stage, field: Field, rng: random.Random, rows: int | None = None) -> list[list]:
    d = stage.p if rows is None else rows
    return [[field.random(rng) for _ in range(stage.dim)] for _ in range(d)]


def random_cone_point(stage: Stage, field: Field, rng: random.Random, nonzero: bool = False,
                      degree: int | None = None) -> ConePoint:
    while True:
        pt = pluecker_from_matrix(random_matrix(stage, field, rng, degree), stage, field, check=False)
        if not nonzero or not pt.is_zero():
            return pt


@lru_cache(maxsize=None)
def shuffle_relations(stage: Stage, degree: int | None = None) -> tuple:
    """Integer (p-1, p+1) shuffle quadrics, each as ``((A, B), coeff)`` terms.

    For a (d-1)-set I and a (d+1)-set J the relation is
    ``sum_k (-1)^k X_{I + j_k} X_{J - j_k}``, with ``X_{I + j_k}`` sorted into
    normal form (sign tracked). Zero relations are dropped, and each relation
    is normalised to a positive leading coefficient before deduplication.
    """
    d = stage.p if degree is None else degree
    out, seen = [], set()
    if d < 1:
        return ()
    for I in itertools.combinations(stage.symbols, d - 1):
        members = set(I)
        for J in itertools.combinations(stage.symbols, d + 1):
            acc: dict = {}
            for k, j in enumerate(J):
                if j in members:
                    continue
                key, sign = canonicalize(I + (j,))
                rest = J[:k] + J[k + 1:]
                pair = tuple(sorted((key, rest), key=mu_word))
                acc[pair] = acc.get(pair, 0) + (sign if k % 2 == 0 else -sign)
            terms = sorted(((pr, c) for pr, c in acc.items() if c),
                           key=lambda t: (mu_word(t[0][0]), mu_word(t[0][1])))
            if not terms:
                continue
            if terms[0][1] < 0:
                terms = [(pr, -c) for pr, c in terms]
            rel = tuple(terms)
            if rel not in seen:
                seen.add(rel)
                out.append(rel)
    return tuple(out)


def pluecker_relations(stage: Stage, field: Field = QQ, degree: int | None = None) -> list[Polynomial]:
    """The shuffle quadrics as polynomials over ``field``, monic and deduplicated."""
    out, seen = [], set()
    for rel in shuffle_relations(stage, degree):
        terms = [(pr, field(c)) for pr, c in rel]
        terms = [(pr, c) for pr, c in terms if c != 0]
        if not terms:
            continue
        lead_inv = field.inv(terms[0][1])
        terms = [(pr, field.mul(c, lead_inv)) for pr, c in terms]
        sig = frozenset(terms)
        if sig in seen:
            continue
        seen.add(sig)
        out.append(Polynomial(stage, {Monomial(stage, pr): c for pr, c in terms}, field))
    return out


def relation_residuals(v: ExteriorElement):
    """Yield the value of every shuffle quadric at ``v`` (integer coefficients mapped into the field)."""
    F = v.field
    coords = v.coeffs
    for rel in shuffle_relations(v.stage, v.degree):
        total = F.zero
        for (a, b), c in rel:
            x = coords.get(a)
            if x is None:
                continue
            y = coords.get(b)
            if y is None:
                continue
            total = F.add(total, F.mul(F(c), F.mul(x, y)))
        yield total


def is_cone_point(v: ExteriorElement | Mapping, stage: Stage | None = None,
                  field: Field | None = None, degree: int | None = None) -> bool:
    """True iff every shuffle quadric vanishes at ``v`` (so ``v`` is decomposable)."""
    if not isinstance(v, ExteriorElement):
        if stage is None or field is None:
            raise ValueError("a raw coordinate mapping needs a stage and a field")
        keys = list(v)
        d = degree if degree is not None else (len(keys[0]) if keys else stage.p)
        v = ExteriorElement(stage, d, v, DUAL, field)
    if v.side != DUAL:
        raise ValueError("cone points live on the dual side")
    if v.is_zero():
        return True
    return all(r == 0 for r in relation_residuals(v))


def big_cell_point(alpha: AlphaMatrix, check: bool = True) -> ConePoint:
    """The wedge of the shifted covectors ``x*_i + sum_j alpha_i^j x*_{-j}``, i = 1..p."""
    elem = wedge_covectors(alpha.stage, alpha.covectors(), alpha.field)
    return ConePoint.from_element(elem, validate=check)


def _check_split(stage: Stage, negatives: Sequence[int], positives: Sequence[int]):
    negatives, positives = tuple(negatives), tuple(positives)
    q = len(negatives)
    if list(negatives) != sorted(set(negatives)) or any(not 1 <= j <= stage.n for j in negatives):
        raise ValueError(f"negatives must increase within 1..{stage.n}: {negatives}")
    if list(positives) != sorted(set(positives)) or any(not 1 <= d <= stage.p for d in positives):
        raise ValueError(f"positives must increase within 1..{stage.p}: {positives}")
    if q + len(positives) != stage.p:
        raise ValueError(f"split has {q} + {len(positives)} labels, expected {stage.p}")
    return negatives, positives


def lemma5_sign(positives: Sequence[int], p: int) -> int:
    """Sign from moving rows ``d_1 < ... < d_{p-q}`` of a p-row matrix to the end.

    Each ``d_k`` passes over the ``p - d_k - (p - q - k)`` remaining rows below it
    that are not themselves moved.
    """
    r = len(positives)
    q = p - r
    moves = sum(p - d - (p - q - k) for k, d in enumerate(positives, start=1))
    return -1 if moves % 2 else 1


def minor_columns(positives: Sequence[int], p: int) -> list[int]:
    """``{1..p}`` minus the positives: the rows ``m_j`` of the surviving alpha block."""
    pos = set(positives)
    return [i for i in range(1, p + 1) if i not in pos]


def lemma5_coordinate(alpha: AlphaMatrix, negatives: Sequence[int], positives: Sequence[int]) -> Scalar:
    """Value of the big-cell point on ``x_{-n_1} ^ .. ^ x_{-n_q} ^ x_{d_1} ^ .. ^ x_{d_{p-q}}``.

    Computed as a signed q x q minor ``det(alpha^{n_i}_{m_j})``, never by
    expanding the wedge.
    """
    negatives, positives = _check_split(alpha.stage, negatives, positives)
    F = alpha.field
    ms = minor_columns(positives, alpha.stage.p)
    value = det(F, [[alpha(m, nn) for m in ms] for nn in negatives])
    return value if lemma5_sign(positives, alpha.stage.p) == 1 else F.neg(value)


def _require_cone_point(omega: ExteriorElement) -> None:
    if omega.side != DUAL or not is_cone_point(omega):
        raise ValueError("input is not a cone point")


def theta_tilde(omega: ExteriorElement) -> ConePoint:
    """Contraction with ``x_{p+1}`` restricted to cone points: (n, p+1) -> (n, p)."""
    _require_cone_point(omega)
    return ConePoint.from_element(map_theta(omega), validate=False)


def xi_tilde(omega: ExteriorElement) -> ConePoint:
    """Forgetting ``x*_{-(n+1)}`` on cone points: (n+1, p) -> (n, p)."""
    _require_cone_point(omega)
    return ConePoint.from_element(map_xi(omega), validate=False)


def load_matrix(path: str | Path, field: Field) -> dict:
    """Read a matrix from CSV (one covector per row) or JSON.

    JSON is either a bare list of rows or ``{"rows": [...], "stage": [n, p],
    "columns": [...]}``; stage and columns are optional. Entries may be
    integers or strings such as ``"-3/4"``.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        if isinstance(data, list):
            data = {"rows": data}
    else:
        rows = [r for r in csv.reader(text.splitlines()) if r and any(x.strip() for x in r)]
        data = {"rows": rows}
    rows = [[field(x) if not isinstance(x, str) else field.parse(x) for x in row] for row in data["rows"]]
    out = {"rows": rows}
    if "stage" in data:
        out["stage"] = Stage(*data["stage"])
    if "columns" in data:
        out["columns"] = [int(c) for c in data["columns"]]
    return out


def _point_key(pt: ExteriorElement) -> tuple:
    return tuple(sorted(pt.coeffs.items()))


def enumerate_cone_points(stage: Stage, field: Field, degree: int | None = None) -> dict:
    """Every cone point over a finite field, found as the image of every matrix.

    Returns ``{coordinate key: ConePoint}``. Exponential; meant for stages
    with a handful of labels.
    """
    d = stage.p if degree is None else degree
    out = {}
    elems = list(field.elements())
    for flat in itertools.product(elems, repeat=d * stage.dim):
        rows = [flat[r * stage.dim:(r + 1) * stage.dim] for r in range(d)]
        pt = pluecker_from_matrix(rows, stage, field, check=False)
        out.setdefault(_point_key(pt), pt)
    return out


def enumerate_vectors(stage: Stage, field: Field, degree: int | None = None):
    """Every dual vector of the given degree over a finite field."""
    keys = stage.basis(degree)
    d = stage.p if degree is None else degree
    for values in itertools.product(list(field.elements()), repeat=len(keys)):
        yield ExteriorElement._raw(stage, d, dict(zip(keys, values)), DUAL, field)


def preimage_coverage(target: Stage, field: Field) -> dict:
    """Exhaustively check that theta-tilde and xi-tilde hit every cone point of ``target``.

    Sources are ``(n, p + 1)`` for theta-tilde and ``(n + 1, p)`` for xi-tilde.
    """
    targets = set(enumerate_cone_points(target, field))
    result = {"target": str(target), "field": str(field), "targetPoints": len(targets)}
    for name, src, fn in (("theta", Stage(target.n, target.p + 1), map_theta),
                          ("xi", Stage(target.n + 1, target.p), map_xi)):
        sources = enumerate_cone_points(src, field)
        images = {_point_key(fn(pt)) for pt in sources.values()}
        missing = targets - images
        result[name] = {"source": str(src), "sourcePoints": len(sources), "missing": len(missing)}
    return result
