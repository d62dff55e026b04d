"""Degree-2 pieces of the ideals generated by antichain orbits plus Plücker quadrics.

Every generator is homogeneous of degree 2 and the group action preserves
degree, so a degree-2 element lies in the ideal iff it lies in the k-span of
the degree-2 generators. Membership is therefore exact rank arithmetic, done
two independent ways:

* in the degree-2 coordinate space of the stage, against orbit monomials
  together with the Plücker quadrics;
* after restricting to the big cell, where each variable becomes a signed
  minor of a symbolic alpha matrix and the quadrics vanish.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .exterior import Stage, WedgeIndex, canonicalize
from .grassmann import lemma5_sign, minor_columns, pluecker_relations
from .linalg import EchelonBasis
from .polynomials import Monomial, Polynomial
from .scalars import Field, Scalar
from .symmetry import antichain_element, antichain_sets, orbit, term_key


class Degree2Space:
    """Coordinates on the degree-2 monomials of a stage.

    Columns are sorted by decreasing term order, so the pivot chosen by
    elimination (the smallest column) is the leading term of a row.
    """

    def __init__(self, stage: Stage, degree: int | None = None):
        self.stage = stage
        variables = stage.basis(degree)
        monos = [Monomial(stage, (a, b)) for a, b in itertools.combinations_with_replacement(variables, 2)]
        monos.sort(key=term_key, reverse=True)
        self.basis: list[Monomial] = monos
        self.index = {m: k for k, m in enumerate(monos)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def row(self, poly: Polynomial) -> dict[int, Scalar]:
        if poly.stage != self.stage:
            raise ValueError("polynomial from another stage")
        if not poly.is_homogeneous(2):
            raise ValueError("degree-2 space only takes homogeneous quadratic polynomials")
        return {self.index[m]: c for m, c in poly.terms.items()}

    def polynomial(self, row: dict[int, Scalar], field: Field) -> Polynomial:
        return Polynomial(self.stage, {self.basis[k]: c for k, c in row.items()}, field)


def degree2_matrix(polys: Sequence[Polynomial], space: Degree2Space) -> list[dict[int, Scalar]]:
    """One sparse row per polynomial, indexed by ``space`` columns."""
    return [space.row(f) for f in polys]


def stage_generators(n: int, stage: Stage) -> list[Monomial]:
    """Union of the orbits of ``a_i b_i`` for ``i = 3..n``, in increasing term order."""
    if n < 3:
        raise ValueError("the chain starts at n = 3")
    gens: set = set()
    for i in range(3, n + 1):
        gens |= orbit(antichain_element(i, stage))
    return sorted(gens, key=term_key)


@dataclass
class MembershipCertificate:
    """Outcome of a span-membership test.

    ``in``: ``coefficients`` lists ``(generator index, scalar)`` pairs whose
    combination reproduces the target. ``notIn``: ``rank`` of the generators
    and ``rank_with_target`` (= rank + 1) after adjoining the target.
    """

    verdict: str
    method: str
    field: Field
    generator_count: int
    rank: int | None = None
    rank_with_target: int | None = None
    coefficients: list = dc_field(default_factory=list)

    @property
    def is_member(self) -> bool:
        return self.verdict == "in"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "method": self.method, "field": str(self.field),
               "generatorCount": self.generator_count}
        if self.verdict == "in":
            out["coefficients"] = [{"generator": i, "coeff": self.field.format(c)}
                                   for i, c in self.coefficients]
        else:
            out["rank"] = self.rank
            out["rankWithTarget"] = self.rank_with_target
        return out


def _degree2_generators(n: int, stage: Stage, field: Field) -> list[Polynomial]:
    gens = [Polynomial.from_monomial(m, field) for m in stage_generators(n, stage)]
    return gens + pluecker_relations(stage, field)


def _certify(rows: list[dict], target_row: dict, field: Field, method: str) -> MembershipCertificate:
    basis = EchelonBasis(field)
    for row in rows:
        basis.add(row)
    if basis.contains(target_row):
        tracked = EchelonBasis(field, track=True)
        for k, row in enumerate(rows):
            tracked.add(row, label=k)
        residual, combo = tracked.reduce(target_row)
        assert not residual
        coeffs = sorted((k, c) for k, c in combo.items() if c != 0)
        return MembershipCertificate("in", method, field, len(rows), rank=basis.rank,
                                     rank_with_target=basis.rank, coefficients=coeffs)
    r = basis.rank
    basis.add(target_row)
    return MembershipCertificate("notIn", method, field, len(rows), rank=r, rank_with_target=basis.rank)


def membership_degree2(target: Monomial | Polynomial, n: int, stage: Stage,
                       field: Field) -> MembershipCertificate:
    """Is ``target`` in the degree-2 span of ``stage_generators(n)`` and the Plücker quadrics?

    Generator indices in the certificate refer to ``degree2_generators(n, stage, field)``:
    orbit monomials first, then quadrics.
    """
    if isinstance(target, Monomial):
        target = Polynomial.from_monomial(target, field)
    space = _space(stage)
    rows = degree2_matrix(_degree2_generators(n, stage, field), space)
    return _certify(rows, space.row(target), field, "degree2")


def degree2_generators(n: int, stage: Stage, field: Field) -> list[Polynomial]:
    return _degree2_generators(n, stage, field)


@lru_cache(maxsize=8)
def _space(stage: Stage) -> Degree2Space:
    return Degree2Space(stage)


def verify_certificate(cert: MembershipCertificate, generators: Sequence[Polynomial],
                       target: Polynomial | Monomial) -> bool:
    """Recheck a certificate without trusting the elimination that produced it.

    ``in`` is re-expanded; ``notIn`` has both ranks recomputed with the
    columns visited in reverse order.
    """
    F = cert.field
    if isinstance(target, Monomial):
        target = Polynomial.from_monomial(target, F)
    if cert.verdict == "in":
        acc = Polynomial(target.stage, {}, F)
        for k, c in cert.coefficients:
            acc = acc + generators[k].scale(c)
        return acc == target
    monos = sorted({m for g in list(generators) + [target] for m in g.terms}, key=term_key)
    col = {m: k for k, m in enumerate(monos)}
    basis = EchelonBasis(F)
    for g in generators:
        basis.add({col[m]: c for m, c in g.terms.items()})
    r = basis.rank
    basis.add({col[m]: c for m, c in target.terms.items()})
    return r == cert.rank and basis.rank == cert.rank_with_target == r + 1


# ---------------------------------------------------------------------------
# big-cell restriction
#
# An alpha-polynomial is a dict {alpha monomial: coefficient}; an alpha
# monomial is a sorted tuple of ((i, j), exponent) for alpha_i^j.


def _amono_mul(a: tuple, b: tuple) -> tuple:
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def apoly_mul(f: dict, g: dict, field: Field) -> dict:
    out: dict = {}
    for ma, ca in f.items():
        for mb, cb in g.items():
            m = _amono_mul(ma, mb)
            out[m] = field.add(out.get(m, field.zero), field.mul(ca, cb))
    return {m: c for m, c in out.items() if c != 0}


def apoly_eval(f: dict, alpha, field: Field) -> Scalar:
    """Evaluate at an :class:`~infgrass.grassmann.AlphaMatrix`."""
    total = field.zero
    for m, c in f.items():
        v = c
        for (i, j), e in m:
            v = field.mul(v, pow(alpha(i, j), e) if not field.modulus else pow(alpha(i, j), e, field.modulus))
        total = field.add(total, v)
    return total


@lru_cache(maxsize=None)
def _symbolic_coordinate(stage: Stage, S: WedgeIndex) -> tuple:
    """Integer alpha-polynomial of the big-cell coordinate on normal-form ``S``.

    The negatives-first wedge of ``S`` differs from ``S`` by a sort sign; the
    value on the negatives-first wedge is a signed minor whose Leibniz
    expansion gives distinct monomials, one per permutation.
    """
    negatives = tuple(sorted(-i for i in S if i < 0))
    positives = tuple(sorted(i for i in S if i > 0))
    _, reorder = canonicalize(tuple(-j for j in negatives) + positives)
    sign = reorder * lemma5_sign(positives, stage.p)
    ms = minor_columns(positives, stage.p)
    terms = []
    for perm in itertools.permutations(range(len(negatives))):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        s = sign * (-1 if inv % 2 else 1)
        mono = tuple(sorted(((ms[perm[r]], negatives[r]), 1) for r in range(len(negatives))))
        terms.append((mono, s))
    return tuple(terms)


def bigcell_restriction(m: Monomial, field: Field) -> dict:
    """The alpha-polynomial obtained by evaluating ``m`` on the big-cell point."""
    acc = {(): field.one}
    for S in m.factors:
        factor = {}
        for mono, c in _symbolic_coordinate(m.stage, S):
            factor[mono] = field.add(factor.get(mono, field.zero), field(c))
        acc = apoly_mul(acc, {k: v for k, v in factor.items() if v != 0}, field)
    return acc


def bigcell_restriction_poly(f: Polynomial) -> dict:
    F = f.field
    out: dict = {}
    for m, c in f.terms.items():
        for am, ac in bigcell_restriction(m, F).items():
            out[am] = F.add(out.get(am, F.zero), F.mul(c, ac))
    return {k: v for k, v in out.items() if v != 0}


@dataclass
class BigCellVerdict:
    verdict: str
    generator_count: int
    rank: int
    rank_with_target: int

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "method": "bigcell", "generatorCount": self.generator_count,
                "rank": self.rank, "rankWithTarget": self.rank_with_target}


def membership_via_bigcell(target: Monomial | Polynomial, n: int, stage: Stage,
                           field: Field) -> BigCellVerdict:
    """Membership decided by linear algebra on big-cell restrictions.

    Plücker quadrics restrict to zero, so only the orbit monomials are spanned,
    with constant coefficients.
    """
    gens = [bigcell_restriction(m, field) for m in stage_generators(n, stage)]
    t = bigcell_restriction_poly(target) if isinstance(target, Polynomial) \
        else bigcell_restriction(target, field)
    monos = sorted({am for g in gens for am in g} | set(t))
    col = {am: k for k, am in enumerate(monos)}
    basis = EchelonBasis(field)
    for g in gens:
        basis.add({col[am]: c for am, c in g.items()})
    r = basis.rank
    basis.add({col[am]: c for am, c in t.items()})
    verdict = "in" if basis.rank == r else "notIn"
    return BigCellVerdict(verdict, len(gens), r, basis.rank)


def chain_report(l_max: int, stage: Stage, field: Field) -> dict:
    """Certify ``a_l b_l`` in the l-th ideal and outside the (l-1)-th, for ``4 <= l <= l_max``."""
    for ell in range(4, l_max + 1):
        antichain_sets(ell, stage)  # raises if the stage is too small
    entries = []
    for ell in range(4, l_max + 1):
        target = antichain_element(ell, stage)
        own = membership_degree2(target, ell, stage, field)
        prev = membership_degree2(target, ell - 1, stage, field)
        own_bc = membership_via_bigcell(target, ell, stage, field)
        prev_bc = membership_via_bigcell(target, ell - 1, stage, field)
        agree = own.verdict == own_bc.verdict and prev.verdict == prev_bc.verdict
        entries.append({
            "ell": ell,
            "inOwn": own.to_json(),
            "notInPrev": prev.to_json(),
            "bigcellInOwn": own_bc.to_json(),
            "bigcellNotInPrev": prev_bc.to_json(),
            "methodsAgree": agree,
            "strict": own.verdict == "in" and prev.verdict == "notIn" and agree,
        })
    return {
        "stage": str(stage),
        "field": str(field),
        "degree2Dimension": math.comb(math.comb(stage.dim, stage.p) + 1, 2),
        "entries": entries,
        "scope": "non-membership is certified in the stage-restricted degree-2 piece only",
        "verdict": "pass" if all(e["strict"] for e in entries) else "fail",
    }
