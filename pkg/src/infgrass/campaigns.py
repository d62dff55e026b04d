"""Named verification campaigns.

Each campaign takes a :class:`CampaignConfig` and returns a list of checks,
``{"name", "verdict", "details"}`` with verdict ``"pass"`` or ``"fail"``.
Randomness comes from :class:`random.Random` (Mersenne Twister) seeded with
the string ``"<seed>/<campaign>/<field>"``, so reports replicate exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from pathlib import Path

from .exterior import Stage, pairing
from .grassmann import (AlphaMatrix, big_cell_point, enumerate_cone_points, enumerate_vectors,
                        is_cone_point, lemma5_coordinate, load_matrix, pluecker_from_matrix,
                        pluecker_relations, preimage_coverage, random_cone_point, relation_residuals,
                        theta_tilde, xi_tilde)
from .ideals import chain_report
from .matroids import Degenerate, correspondence_check, is_minor, load_matroid, matroid_of
from .scalars import GF, QQ, Field
from .symmetry import antichain_verify

COMMANDS = ("lemma5", "antichain", "chain", "diagram", "matroid", "plucker")

DEFAULT_FIELDS = {
    "lemma5": (GF(2), GF(101), QQ),
    "chain": (GF(2), GF(101)),
    "diagram": (GF(2), GF(101), QQ),
    "matroid": (GF(2), GF(3)),
    "plucker": (GF(2), GF(101), QQ),
    "antichain": (),
}
DEFAULT_STAGE = {"chain": Stage(3, 5), "diagram": Stage(3, 3), "matroid": Stage(3, 4),
                 "plucker": Stage(3, 3)}
DEFAULT_SAMPLES = {"lemma5": 25, "diagram": 100, "matroid": 100, "plucker": 200}

# desk-scale limits
MAX_SYMBOLS = 9
MAX_ANTICHAIN_N = 12
MAX_CHAIN_STAGE_DIM = 9


@dataclass
class CampaignConfig:
    command: str
    fields: tuple = ()
    stage: Stage | None = None
    max_n: int = 6
    l_max: int = 4
    samples: int | None = None
    seed: int = 0
    max_symbols: int = 7
    matrix: Path | None = None
    minor: Path | None = None
    host: Path | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.fields:
            self.fields = DEFAULT_FIELDS[self.command]
        if self.stage is None:
            self.stage = DEFAULT_STAGE.get(self.command)
        if self.samples is None:
            self.samples = DEFAULT_SAMPLES.get(self.command, 0)
        if self.samples < 0:
            raise ValueError("--samples must be non-negative")
        if not 2 <= self.max_symbols <= MAX_SYMBOLS:
            raise ValueError(f"--max-symbols must lie in 2..{MAX_SYMBOLS}")
        if not 3 <= self.max_n <= MAX_ANTICHAIN_N:
            raise ValueError(f"--max-n must lie in 3..{MAX_ANTICHAIN_N}")
        if self.command == "antichain" and self.stage is not None \
                and (self.stage.p < self.max_n or self.stage.n < self.max_n - 1):
            raise ValueError(f"stage {self.stage} too small for n = {self.max_n}")
        if self.command == "chain" and self.stage.dim > MAX_CHAIN_STAGE_DIM:
            raise ValueError(f"chain stages are limited to {MAX_CHAIN_STAGE_DIM} labels")

    def rng(self, name: str, fld: Field | None = None) -> random.Random:
        return random.Random(f"{self.seed}/{name}/{fld}")

    def to_json(self) -> dict:
        out = {"command": self.command, "fields": [str(f) for f in self.fields],
               "stage": str(self.stage) if self.stage else None, "samples": self.samples,
               "seed": self.seed}
        if self.command == "lemma5":
            out["maxSymbols"] = self.max_symbols
        if self.command == "antichain":
            out["maxN"] = self.max_n
        if self.command == "chain":
            out["lMax"] = self.l_max
        for key in ("matrix", "minor", "host"):
            if getattr(self, key) is not None:
                out[key] = str(getattr(self, key))
        return out


def _check(name: str, ok: bool, details) -> dict:
    return {"name": name, "verdict": "pass" if ok else "fail", "details": details}


def _stages_up_to(bound: Stage, n_min: int = 1, p_min: int = 1):
    for n in range(n_min, bound.n + 1):
        for p in range(p_min, bound.p + 1):
            yield Stage(n, p)


# ---------------------------------------------------------------------------


def splits(stage: Stage):
    """All (negatives, positives) choices for the minor identity at a stage."""
    for q in range(0, min(stage.p, stage.n) + 1):
        for neg in itertools.combinations(range(1, stage.n + 1), q):
            for pos in itertools.combinations(range(1, stage.p + 1), stage.p - q):
                yield neg, pos


def lemma5_sweep(fld: Field, max_symbols: int, samples: int, rng: random.Random) -> dict:
    """Compare the signed-minor formula with direct pairing on every split."""
    comparisons, failures, stages = 0, [], 0
    for total in range(2, max_symbols + 1):
        for n in range(1, total):
            stage = Stage(n, total - n)
            stages += 1
            for _ in range(samples):
                alpha = AlphaMatrix.random(stage, fld, rng)
                point = big_cell_point(alpha, check=False)
                for neg, pos in splits(stage):
                    wedge_word = tuple(-j for j in neg) + pos
                    direct = pairing(point, wedge_word)
                    formula = lemma5_coordinate(alpha, neg, pos)
                    comparisons += 1
                    if direct != formula and len(failures) < 5:
                        failures.append({"stage": str(stage), "alpha": [[fld.format(x) for x in r]
                                                                        for r in alpha.entries],
                                         "negatives": list(neg), "positives": list(pos),
                                         "direct": fld.format(direct), "formula": fld.format(formula)})
    return {"field": str(fld), "stages": stages, "comparisons": comparisons, "failures": failures}


def run_lemma5(cfg: CampaignConfig) -> list[dict]:
    checks = []
    for fld in cfg.fields:
        d = lemma5_sweep(fld, cfg.max_symbols, cfg.samples, cfg.rng("lemma5", fld))
        checks.append(_check(f"lemma5[{fld}]", not d["failures"], d))
    return checks


def run_antichain(cfg: CampaignConfig) -> list[dict]:
    report = antichain_verify(cfg.max_n, cfg.stage)
    return [_check("antichain", report["verdict"] == "pass", report)]


def run_chain(cfg: CampaignConfig) -> list[dict]:
    checks = []
    for fld in cfg.fields:
        report = chain_report(cfg.l_max, cfg.stage, fld)
        checks.append(_check(f"chain[{fld}]", report["verdict"] == "pass", report))
    return checks


def diagram_sweep(fld: Field, bound: Stage, samples: int, rng: random.Random) -> dict:
    """xi-tilde after theta-tilde equals theta-tilde after xi-tilde, from every source stage."""
    per_stage, failures = [], []
    for src in _stages_up_to(bound, 2, 2):
        ok = 0
        for _ in range(samples):
            w = random_cone_point(src, fld, rng)
            left = xi_tilde(theta_tilde(w))
            right = theta_tilde(xi_tilde(w))
            if left == right and is_cone_point(left):
                ok += 1
            elif len(failures) < 5:
                failures.append({"stage": str(src), "point": w.to_json()})
        per_stage.append({"source": str(src), "samples": samples, "equal": ok})
    return {"field": str(fld), "stages": per_stage, "failures": failures}


def run_diagram(cfg: CampaignConfig) -> list[dict]:
    checks = []
    for fld in cfg.fields:
        d = diagram_sweep(fld, cfg.stage, cfg.samples, cfg.rng("diagram", fld))
        checks.append(_check(f"diagram[{fld}]", not d["failures"], d))
    cov = preimage_coverage(Stage(1, 2), GF(2))
    checks.append(_check("surjectivity[gf:2]", cov["theta"]["missing"] == 0 and cov["xi"]["missing"] == 0, cov))
    return checks


def matroid_sweep(fld: Field, bound: Stage, samples: int, rng: random.Random) -> dict:
    """``correspondence_check`` on random nonzero matrix-built points."""
    per_stage, failures = [], []
    for stage in _stages_up_to(bound):
        if stage.n < 2 and stage.p < 2:
            continue
        passed = skipped = 0
        for _ in range(samples):
            w = random_cone_point(stage, fld, rng, nonzero=True)
            rep = correspondence_check(w)
            skipped += len([s for s in rep["skipped"] if "element" in s])
            passed += len(rep["checks"])
            if rep["verdict"] != "pass" and len(failures) < 5:
                failures.append(rep)
            M = matroid_of(w)
            if len(M.ground) <= 8 and not M.satisfies_basis_exchange() and len(failures) < 5:
                failures.append({"stage": str(stage), "basisExchange": False, "matroid": M.to_json()})
        per_stage.append({"stage": str(stage), "points": samples, "equalitiesChecked": passed,
                          "skippedLoopOrColoop": skipped})
    return {"field": str(fld), "stages": per_stage, "failures": failures}


def run_matroid(cfg: CampaignConfig) -> list[dict]:
    checks = []
    if cfg.minor is not None or cfg.host is not None:
        if cfg.minor is None or cfg.host is None:
            raise ValueError("minor testing needs both --minor and --host")
        M, N = load_matroid(cfg.minor), load_matroid(cfg.host)
        w = is_minor(M, N)
        checks.append(_check("is_minor", w is not None,
                             {"minor": M.to_json(), "host": N.to_json(),
                              "witness": w.to_json() if w else None}))
        return checks
    if cfg.matrix is not None:
        fld = cfg.fields[0]
        data = load_matrix(cfg.matrix, fld)
        stage = data.get("stage", cfg.stage)
        pt = pluecker_from_matrix(data["rows"], stage, fld, data.get("columns"))
        M = matroid_of(pt)
        if isinstance(M, Degenerate):
            return [_check("matroid", False, {"reason": M.reason})]
        rep = correspondence_check(pt)
        checks.append(_check("matroid", M.satisfies_basis_exchange(), M.to_json()))
        checks.append(_check("correspondence", rep["verdict"] == "pass", rep))
        return checks
    for fld in cfg.fields:
        d = matroid_sweep(fld, cfg.stage, cfg.samples, cfg.rng("matroid", fld))
        checks.append(_check(f"correspondence[{fld}]", not d["failures"], d))
    return checks


def plucker_soundness(fld: Field, bound: Stage, samples: int, rng: random.Random) -> dict:
    """Every shuffle quadric vanishes on random matrix-built points."""
    per_stage, failures = [], []
    for stage in _stages_up_to(bound, 1, 2):
        nrel = len(pluecker_relations(stage, fld))
        for _ in range(samples):
            w = random_cone_point(stage, fld, rng)
            if any(r != 0 for r in relation_residuals(w)) and len(failures) < 5:
                failures.append({"stage": str(stage), "point": w.to_json()})
        per_stage.append({"stage": str(stage), "relations": nrel, "points": samples})
    return {"field": str(fld), "stages": per_stage, "failures": failures}


def decomposability_sweep(stage: Stage, fld: Field, degree: int | None = None) -> dict:
    """Compare ``is_cone_point`` with brute-force factorization on every vector."""
    decomposable = set(enumerate_cone_points(stage, fld, degree))
    mismatches, total, accepted = [], 0, 0
    for v in enumerate_vectors(stage, fld, degree):
        total += 1
        verdict = is_cone_point(v)
        accepted += verdict
        truth = tuple(sorted(v.coeffs.items())) in decomposable
        if verdict != truth and len(mismatches) < 5:
            mismatches.append(v.to_json())
    return {"stage": str(stage), "field": str(fld), "vectors": total, "decomposable": len(decomposable),
            "accepted": accepted, "mismatches": mismatches}


def run_plucker(cfg: CampaignConfig) -> list[dict]:
    if cfg.matrix is not None:
        fld = cfg.fields[0]
        data = load_matrix(cfg.matrix, fld)
        stage = data.get("stage", cfg.stage)
        pt = pluecker_from_matrix(data["rows"], stage, fld, data.get("columns"), check=False)
        return [_check("plucker", is_cone_point(pt),
                       {"stage": str(stage), "field": str(fld), "coordinates": pt.to_json()})]
    checks = []
    for fld in cfg.fields:
        d = plucker_soundness(fld, cfg.stage, cfg.samples, cfg.rng("plucker", fld))
        checks.append(_check(f"plucker[{fld}]", not d["failures"], d))
    sweep = decomposability_sweep(Stage(2, 2), GF(2))
    checks.append(_check("decomposability[gf:2]", not sweep["mismatches"], sweep))
    return checks


RUNNERS = {
    "lemma5": run_lemma5,
    "antichain": run_antichain,
    "chain": run_chain,
    "diagram": run_diagram,
    "matroid": run_matroid,
    "plucker": run_plucker,
}


def run_campaign(cfg: CampaignConfig) -> list[dict]:
    return RUNNERS[cfg.command](cfg)
