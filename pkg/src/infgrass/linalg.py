"""Exact linear algebra over a :class:`~infgrass.scalars.Field`.

Dense helpers (``det``, ``rank``) work on lists of rows. ``EchelonBasis`` is
the sparse, incremental workhorse used for span-membership certificates:
rows are ``{column: scalar}`` dicts and the pivot of a row is its smallest
column index.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .scalars import Field, Scalar


def det(field: Field, rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by Gaussian elimination. The empty matrix has determinant 1."""
    a = [[field(x) for x in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    result = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return field.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = field.neg(result)
        pivot = a[col][col]
        result = field.mul(result, pivot)
        inv = field.inv(pivot)
        for r in range(col + 1, n):
            f = a[r][col]
            if f == 0:
                continue
            f = field.mul(f, inv)
            row_r, row_c = a[r], a[col]
            for c in range(col, n):
                row_r[c] = field.sub(row_r[c], field.mul(f, row_c[c]))
    return result


def rank(field: Field, rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a dense matrix."""
    basis = EchelonBasis(field)
    for row in rows:
        vals = (field(x) for x in row)
        basis.add({j: x for j, x in enumerate(vals) if x != 0})
    return basis.rank


class EchelonBasis:
    """A row-echelon basis of a growing span of sparse vectors.

    Every stored row is monic at its pivot, and its pivot is its smallest
    column, so reducing a vector only ever introduces larger columns.
    With ``track=True`` each stored row also carries the combination of
    input labels it equals, which is what makes membership certificates
    explicit.
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.track = track
        self.pivots: dict[int, dict[int, Scalar]] = {}
        self.combos: dict[int, dict[Hashable, Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, Scalar], combo: dict | None = None):
        """Reduce ``row`` against the basis.

        Returns ``(residual, combo)`` where ``row = residual + sum(combo[l] * input_l)``
        when tracking, so a zero residual means ``row`` lies in the span.
        """
        F = self.field
        p = F.modulus
        r = {c: x for c, x in row.items() if x != 0}
        combo = dict(combo) if combo else {}
        pivots = self.pivots
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                # the remaining leading column is free; the tail need not be reduced
                break
            f = r[c]
            for cc, x in prow.items():
                if p:
                    v = (r.get(cc, 0) - f * x) % p
                else:
                    v = r.get(cc, 0) - f * x
                if v:
                    r[cc] = v
                else:
                    r.pop(cc, None)
            if self.track:
                for lab, x in self.combos[c].items():
                    v = F.add(combo.get(lab, F.zero), F.mul(f, x))
                    if v:
                        combo[lab] = v
                    else:
                        combo.pop(lab, None)
        return r, combo

    def add(self, row: dict[int, Scalar], label: Hashable = None) -> bool:
        """Adjoin ``row``; return True when the rank grows."""
        F = self.field
        residual, combo = self.reduce(row)
        if not residual:
            return False
        c = min(residual)
        inv = F.inv(residual[c])
        self.pivots[c] = {cc: F.mul(x, inv) for cc, x in residual.items()}
        if self.track:
            # residual = row - combo, so pivot row = inv * (input_label - combo)
            own = {lab: F.neg(F.mul(x, inv)) for lab, x in combo.items()}
            own[label] = F.add(own.get(label, F.zero), inv)
            self.combos[c] = {k: v for k, v in own.items() if v != 0}
        return True

    def contains(self, row: dict[int, Scalar]) -> bool:
        residual, _ = self.reduce(row)
        return not residual

    def extend(self, rows: Iterable[dict[int, Scalar]]) -> None:
        for i, row in enumerate(rows):
            self.add(row, label=i)
