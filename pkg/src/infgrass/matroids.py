"""Matroids read off cone points, with deletion, contraction and minor search.

The matroid of a cone point has the stage labels as ground set and the
support of its Plücker coordinates as bases. Everything is explicit basis
lists; ground sets stay small enough for brute force.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .exterior import ExteriorElement, Stage, mu
from .grassmann import is_cone_point, theta_tilde, xi_tilde


@dataclass(frozen=True)
class Degenerate:
    """Marker for a zero cone point or an operation that would drop the rank."""

    reason: str
    ground: tuple = ()

    def to_json(self) -> dict:
        return {"degenerate": self.reason, "ground": list(self.ground)}


ZERO_POINT = "zero point"


@dataclass(frozen=True)
class Matroid:
    ground: tuple
    rank: int
    bases: frozenset  # of frozensets

    def __post_init__(self):
        g = set(self.ground)
        if len(g) != len(self.ground):
            raise ValueError("ground set has repeats")
        bases = frozenset(frozenset(b) for b in self.bases)
        if not bases:
            raise ValueError("a matroid needs at least one basis")
        if any(len(b) != self.rank or not b <= g for b in bases):
            raise ValueError("every basis must be a rank-sized subset of the ground set")
        object.__setattr__(self, "bases", bases)

    @classmethod
    def from_bases(cls, ground: Sequence, bases) -> "Matroid":
        bases = [frozenset(b) for b in bases]
        return cls(tuple(ground), len(next(iter(bases))), frozenset(bases))

    @classmethod
    def uniform(cls, r: int, n: int) -> "Matroid":
        ground = tuple(range(1, n + 1))
        return cls(ground, r, frozenset(frozenset(c) for c in itertools.combinations(ground, r)))

    def is_loop(self, e) -> bool:
        return all(e not in b for b in self.bases)

    def is_coloop(self, e) -> bool:
        return all(e in b for b in self.bases)

    def is_independent(self, X) -> bool:
        X = frozenset(X)
        return any(X <= b for b in self.bases)

    def rank_of(self, X) -> int:
        X = frozenset(X)
        return max(len(X & b) for b in self.bases)

    def satisfies_basis_exchange(self) -> bool:
        for B1 in self.bases:
            for B2 in self.bases:
                for x in B1 - B2:
                    if not any((B1 - {x}) | {y} in self.bases for y in B2 - B1):
                        return False
        return True

    def to_json(self) -> dict:
        key = _label_key(self.ground)
        return {"ground": list(self.ground), "rank": self.rank,
                "bases": sorted(sorted(b, key=key) for b in self.bases)}

    @classmethod
    def from_json(cls, data: dict) -> "Matroid":
        ground = tuple(data["ground"])
        bases = frozenset(frozenset(b) for b in data["bases"])
        return cls(ground, int(data["rank"]), bases)


def _label_key(ground):
    if all(isinstance(e, int) and e != 0 for e in ground):
        return mu
    return lambda e: ground.index(e)


def load_matroid(path: str | Path) -> Matroid:
    return Matroid.from_json(json.loads(Path(path).read_text()))


def matroid_of(omega: ExteriorElement) -> Matroid | Degenerate:
    """Bases are the index sets with nonzero Plücker coordinate."""
    if not is_cone_point(omega):
        raise ValueError("matroid_of needs a decomposable vector")
    ground = omega.stage.symbols
    if omega.is_zero():
        return Degenerate(ZERO_POINT, ground)
    return Matroid(ground, omega.degree, frozenset(frozenset(k) for k in omega.coeffs))


def delete(M: Matroid, e) -> Matroid | Degenerate:
    if e not in M.ground:
        raise ValueError(f"{e} not in ground set")
    ground = tuple(x for x in M.ground if x != e)
    if M.is_coloop(e):
        return Degenerate(f"deleting coloop {e} drops the rank", ground)
    return Matroid(ground, M.rank, frozenset(b for b in M.bases if e not in b))


def contract(M: Matroid, e) -> Matroid | Degenerate:
    if e not in M.ground:
        raise ValueError(f"{e} not in ground set")
    ground = tuple(x for x in M.ground if x != e)
    if M.is_loop(e):
        return Degenerate(f"contracting loop {e}", ground)
    return Matroid(ground, M.rank - 1, frozenset(b - {e} for b in M.bases if e in b))


def isomorphism(M: Matroid, N: Matroid) -> dict | None:
    """A bijection ``M.ground -> N.ground`` carrying bases to bases, or None."""
    if len(M.ground) != len(N.ground) or M.rank != N.rank or len(M.bases) != len(N.bases):
        return None

    def degree(X: Matroid):
        return {e: sum(e in b for b in X.bases) for e in X.ground}

    dm, dn = degree(M), degree(N)
    if sorted(dm.values()) != sorted(dn.values()):
        return None
    order = sorted(M.ground, key=lambda e: sum(1 for f in M.ground if dm[f] == dm[e]))
    nb = N.bases

    def consistent(mapping):
        dom = set(mapping)
        # restricted to mapped elements, basis traces must correspond
        traces_m = {}
        for b in M.bases:
            t = frozenset(mapping[e] for e in b & dom)
            traces_m[t] = traces_m.get(t, 0) + 1
        img = set(mapping.values())
        traces_n = {}
        for b in nb:
            t = frozenset(b & img)
            traces_n[t] = traces_n.get(t, 0) + 1
        return traces_m == traces_n

    def search(k, mapping, used):
        if k == len(order):
            return dict(mapping)
        e = order[k]
        for f in N.ground:
            if f in used or dn[f] != dm[e]:
                continue
            mapping[e] = f
            if consistent(mapping):
                found = search(k + 1, mapping, used | {f})
                if found is not None:
                    return found
            del mapping[e]
        return None

    return search(0, {}, frozenset())


@dataclass
class MinorWitness:
    contracted: tuple
    deleted: tuple
    relabel: dict

    def to_json(self) -> dict:
        ops = [["contract", e] for e in self.contracted] + [["delete", e] for e in self.deleted]
        return {"operations": ops, "relabel": [[a, b] for a, b in self.relabel.items()]}


def is_minor(M: Matroid, N: Matroid, limit: int = 10) -> MinorWitness | None:
    """Is ``M`` isomorphic to ``N / C \\ D`` for some disjoint ``C``, ``D``?

    Every minor has such a form with ``C`` independent and ``D`` coindependent
    in ``N / C``, so both searches are restricted accordingly. The witness
    relabelling maps ``M``'s ground set onto what remains of ``N``.
    """
    if len(N.ground) > limit:
        raise ValueError(f"brute-force minor search is limited to {limit} elements")
    k = N.rank - M.rank
    extra = len(N.ground) - len(M.ground) - k
    if k < 0 or extra < 0:
        return None
    for C in itertools.combinations(N.ground, k):
        if not N.is_independent(C):
            continue
        NC: Matroid = N
        for e in C:
            NC = contract(NC, e)
        for D in itertools.combinations(NC.ground, extra):
            ND = NC
            for e in D:
                ND = delete(ND, e)
                if isinstance(ND, Degenerate):
                    break
            if isinstance(ND, Degenerate):
                continue
            iso = isomorphism(M, ND)
            if iso is not None:
                return MinorWitness(C, D, iso)
    return None


def correspondence_check(omega: ExteriorElement) -> dict:
    """Check that theta-tilde realises contraction of ``p`` and xi-tilde deletion of ``-n``.

    ``omega`` sits at stage ``(n, p)``: contraction uses the top positive label
    ``p``, deletion the bottom negative label ``-n``. Cases where a map sends
    ``omega`` to zero are skipped with a reason (and the zero is checked to
    coincide with a loop or coloop).
    """
    stage: Stage = omega.stage
    M = matroid_of(omega)
    if isinstance(M, Degenerate):
        raise ValueError("correspondence_check needs a nonzero cone point")
    checks, skipped = [], []

    if stage.p >= 2 and omega.degree >= 2:
        e = stage.p
        image = theta_tilde(omega)
        if image.is_zero():
            skipped.append({"map": "theta", "element": e, "reason": f"{e} is a loop",
                            "consistent": M.is_loop(e)})
        else:
            ok = matroid_of(image) == contract(M, e)
            checks.append({"map": "theta", "operation": "contract", "element": e, "pass": ok})
    else:
        skipped.append({"map": "theta", "reason": "stage has p < 2", "consistent": True})

    if stage.n >= 2:
        e = -stage.n
        image = xi_tilde(omega)
        if image.is_zero():
            skipped.append({"map": "xi", "element": e, "reason": f"{e} is a coloop",
                            "consistent": M.is_coloop(e)})
        else:
            ok = matroid_of(image) == delete(M, e)
            checks.append({"map": "xi", "operation": "delete", "element": e, "pass": ok})
    else:
        skipped.append({"map": "xi", "reason": "stage has n < 2", "consistent": True})

    passed = all(c["pass"] for c in checks) and all(s["consistent"] for s in skipped)
    return {"stage": str(stage), "matroid": M.to_json(), "checks": checks, "skipped": skipped,
            "verdict": "pass" if passed else "fail"}
