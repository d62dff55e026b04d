"""Permutations of signed labels acting on wedge variables and monomials.

Also home to the term order on monomials, divisibility up to the symmetric
group of a stage, orbit enumeration, and the antichain ``a_n * b_n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exterior import ExteriorElement, Stage, WedgeIndex, canonicalize, mu, mu_word
from .polynomials import Monomial


class Permutation:
    """A finitely supported permutation of the nonzero integers."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Mapping[int, int] | None = None):
        m = {int(a): int(b) for a, b in (mapping or {}).items() if a != b}
        if 0 in m or 0 in m.values():
            raise ValueError("0 is not a label")
        if len(set(m.values())) != len(m) or set(m.values()) != set(m):
            raise ValueError(f"not a permutation: {mapping}")
        self._map = m

    @classmethod
    def identity(cls) -> "Permutation":
        return cls()

    @classmethod
    def from_cycles(cls, *cycles: Sequence[int]) -> "Permutation":
        perm = cls()
        for cyc in cycles:
            m = {cyc[k]: cyc[(k + 1) % len(cyc)] for k in range(len(cyc))}
            perm = perm * cls(m)
        return perm

    @classmethod
    def from_images(cls, domain: Sequence[int], images: Sequence[int]) -> "Permutation":
        return cls(dict(zip(domain, images)))

    def __call__(self, i: int) -> int:
        return self._map.get(i, i)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(self * other)(i) == self(other(i))``."""
        keys = set(self._map) | set(other._map)
        return Permutation({i: self(other(i)) for i in keys})

    def inverse(self) -> "Permutation":
        return Permutation({b: a for a, b in self._map.items()})

    @property
    def support(self) -> frozenset:
        return frozenset(self._map)

    def is_identity(self) -> bool:
        return not self._map

    def preserves(self, symbols: Iterable[int]) -> bool:
        syms = set(symbols)
        return self.support <= syms

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def to_json(self) -> list[list[int]]:
        return [[a, b] for a, b in sorted(self._map.items(), key=lambda ab: mu(ab[0]))]

    def __repr__(self) -> str:
        return f"Permutation({dict(sorted(self._map.items(), key=lambda ab: mu(ab[0])))})"


def _check_stage(sigma: Permutation, stage: Stage | None):
    if stage is not None and not sigma.preserves(stage.symbols):
        raise ValueError(f"{sigma} moves labels outside stage {stage}")


def act_on_wedge(sigma: Permutation, S: Sequence[int], stage: Stage | None = None) -> tuple[WedgeIndex, int]:
    """``x_{s_1} ^ ... ^ x_{s_d} -> x_{sigma(s_1)} ^ ...``, returned in normal form with its sign."""
    _check_stage(sigma, stage)
    key, sign = canonicalize(sigma(i) for i in S)
    return key, sign


def act_on_monomial(sigma: Permutation, m: Monomial) -> tuple[Monomial, int]:
    """Factor-wise action; the sign is the product of the factor signs."""
    _check_stage(sigma, m.stage)
    sign = 1
    factors = []
    for f in m.factors:
        key, s = canonicalize(sigma(i) for i in f)
        factors.append(key)
        sign *= s
    return Monomial(m.stage, tuple(factors)), sign


def act_on_element(sigma: Permutation, omega: ExteriorElement) -> ExteriorElement:
    """Signed action on an exterior element (either side) through the permutation matrix."""
    _check_stage(sigma, omega.stage)
    F = omega.field
    out = {}
    for key, c in omega.coeffs.items():
        k, s = canonicalize(sigma(i) for i in key)
        out[k] = c if s == 1 else F.neg(c)
    return type(omega)._raw(omega.stage, omega.degree, out, omega.side, F)


# ---------------------------------------------------------------------------
# term order


def variable_rank(stage: Stage, degree: int | None = None) -> dict[WedgeIndex, int]:
    """Position of each wedge variable in increasing wedge-index order."""
    return {S: r for r, S in enumerate(stage.basis(degree))}


def exponent_vector(m: Monomial, degree: int | None = None) -> tuple[int, ...]:
    d = degree if degree is not None else (len(m.factors[0]) if m.factors else m.stage.p)
    counts = m.counts()
    return tuple(counts.get(S, 0) for S in m.stage.basis(d))


def term_cmp(m1: Monomial, m2: Monomial) -> int:
    """Compare exponent vectors over the increasing variable list, lexicographically from the left.

    The exponent of the smallest variable is the most significant entry, so a
    monomial carrying more of an earlier variable is larger.
    """
    if m1.stage != m2.stage:
        raise ValueError("term_cmp across stages")
    degs = {len(f) for f in m1.factors + m2.factors}
    if len(degs) > 1:
        raise ValueError("monomials in variables of different wedge degrees")
    d = degs.pop() if degs else m1.stage.p
    e1, e2 = exponent_vector(m1, d), exponent_vector(m2, d)
    return (e1 > e2) - (e1 < e2)


def term_key(m: Monomial):
    """Sort key realising ``term_cmp`` without building exponent vectors.

    With factors sorted increasingly, the monomial whose sorted factor list is
    smaller at the first difference (or longer, if one is a prefix) is larger.
    Negating the mu-words turns that into Python's tuple order.
    """
    return tuple(tuple(-x for x in mu_word(f)) for f in m.factors)


# ---------------------------------------------------------------------------
# divisibility up to the stage symmetric group


@dataclass(frozen=True)
class Witness:
    """``act_on_monomial(sigma, x) * z == y`` (unsigned)."""

    sigma: Permutation
    z: Monomial

    def to_json(self) -> dict:
        return {"sigma": self.sigma.to_json(), "z": self.z.to_json()}


def _regions(sets: Sequence[frozenset], symbols: Sequence[int]) -> dict[tuple, list[int]]:
    """Group symbols by their membership vector across ``sets``."""
    out: dict = {}
    for s in symbols:
        out.setdefault(tuple(s in S for S in sets), []).append(s)
    return out


def _region_profile(sets, symbols) -> dict[tuple, int]:
    return {v: len(ss) for v, ss in _regions(sets, symbols).items()}


def divides_mod_group(x: Monomial, y: Monomial) -> Witness | None:
    """Search for ``sigma`` in the stage symmetric group and ``z`` with ``sigma(x) * z == y``.

    Factors of ``x`` are assigned injectively to factors of ``y``. A partial
    assignment ``S_k -> T_k`` extends to a permutation exactly when, for every
    membership pattern, as many symbols lie in that Venn region of the
    ``S_k`` as in the matching region of the ``T_k``; the search prunes on that.
    """
    if x.stage != y.stage:
        raise ValueError("divisibility across stages")
    stage = x.stage
    if x.degree > y.degree:
        return None
    xs = [frozenset(f) for f in x.factors]
    ys = [frozenset(f) for f in y.factors]
    # most constrained factors of x first
    order = sorted(range(len(xs)), key=lambda k: -len(xs[k]))
    symbols = stage.symbols

    def search(k: int, chosen: list[int]) -> list[int] | None:
        if k == len(order):
            return chosen
        src = [xs[order[t]] for t in range(k + 1)]
        used_targets = set().union(*(ys[c] for c in chosen)) if chosen else set()
        cands = [c for c in range(len(ys)) if c not in chosen and len(ys[c]) == len(xs[order[k]])]
        # prefer targets overlapping most with already fixed symbols
        cands.sort(key=lambda c: -len(ys[c] & used_targets))
        tried = set()
        for c in cands:
            if ys[c] in tried:
                continue
            tried.add(ys[c])
            dst = [ys[t] for t in chosen] + [ys[c]]
            if _region_profile(src, symbols) == _region_profile(dst, symbols):
                found = search(k + 1, chosen + [c])
                if found is not None:
                    return found
        return None

    chosen = search(0, [])
    if chosen is None:
        return None
    src = [xs[order[t]] for t in range(len(order))]
    dst = [ys[c] for c in chosen]
    src_regions, dst_regions = _regions(src, symbols), _regions(dst, symbols)
    mapping = {}
    for v, ss in src_regions.items():
        for a, b in zip(ss, dst_regions[v]):
            mapping[a] = b
    sigma = Permutation(mapping)
    rest = list(y.factors)
    for c in sorted(chosen, reverse=True):
        rest.pop(c)
    return Witness(sigma, Monomial(stage, tuple(rest)))


# ---------------------------------------------------------------------------
# orbits


def orbit(m: Monomial) -> set[Monomial]:
    """All distinct unsigned images of ``m`` under the symmetric group of its stage.

    Enumerated by choosing the image of each Venn region of the factor sets,
    so the cost is the number of set assignments rather than the group order.
    """
    stage = m.stage
    sets = [frozenset(f) for f in m.factors]
    if not sets:
        return {m}
    regions = [(v, len(ss)) for v, ss in _regions(sets, stage.symbols).items() if any(v)]
    out: set = set()

    def assign(k: int, free: tuple, images: list):
        if k == len(regions):
            factors = []
            for t in range(len(sets)):
                f = [s for (v, _), img in zip(regions, images) if v[t] for s in img]
                factors.append(tuple(f))
            out.add(Monomial(stage, tuple(factors)))
            return
        size = regions[k][1]
        for pick in itertools.combinations(free, size):
            rest = tuple(s for s in free if s not in pick)
            assign(k + 1, rest, images + [pick])

    assign(0, stage.symbols, [])
    return out


# ---------------------------------------------------------------------------
# the antichain


def antichain_sets(n: int, stage: Stage) -> tuple[WedgeIndex, WedgeIndex]:
    """Padded index sets ``A = {-2, 2..p}`` and ``B_n = {-(n-1)..-1, 1, n+1..p}``."""
    if n < 3:
        raise ValueError("antichain elements start at n = 3")
    if stage.p < n or stage.n < n - 1:
        raise ValueError(f"stage {stage} too small for a_{n} b_{n}: need p >= {n} and n >= {n - 1}")
    A = (-2,) + tuple(range(2, stage.p + 1))
    B = tuple(range(-(n - 1), 0)) + (1,) + tuple(range(n + 1, stage.p + 1))
    return tuple(sorted(A, key=mu)), tuple(sorted(B, key=mu))


def antichain_element(n: int, stage: Stage) -> Monomial:
    """The degree-2 monomial ``X_A * X_{B_n}``."""
    A, B = antichain_sets(n, stage)
    return Monomial(stage, (A, B))


def antichain_stage(m: int) -> Stage:
    """Smallest stage used for a pair ``(n, m)``: ``(m - 1, m + 2)``."""
    return Stage(m - 1, m + 2)


def antichain_verify(max_n: int, stage: Stage | None = None) -> dict:
    """Check ``a_n b_n`` and ``a_m b_m`` are incomparable for all ``3 <= n < m <= max_n``.

    With ``stage=None`` each pair is tested at ``antichain_stage(m)``.
    """
    pairs = []
    reflexive = []
    for m in range(3, max_n + 1):
        st = stage or antichain_stage(m)
        e = antichain_element(m, st)
        w = divides_mod_group(e, e)
        reflexive.append({"n": m, "stage": str(st), "selfDivides": w is not None})
    for n in range(3, max_n + 1):
        for m in range(n + 1, max_n + 1):
            st = stage or antichain_stage(m)
            x, y = antichain_element(n, st), antichain_element(m, st)
            fw, bw = divides_mod_group(x, y), divides_mod_group(y, x)
            pairs.append({
                "n": n, "m": m, "stage": str(st),
                "forwardWitness": fw.to_json() if fw else None,
                "backwardWitness": bw.to_json() if bw else None,
            })
    ok = all(p["forwardWitness"] is None and p["backwardWitness"] is None for p in pairs) \
        and all(r["selfDivides"] for r in reflexive)
    return {"pairs": pairs, "reflexivity": reflexive, "verdict": "pass" if ok else "fail"}
