"""Command line entry point: ``verify <campaign> [options]``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 for
invalid flags or unreadable input files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .campaigns import COMMANDS, CampaignConfig, run_campaign
from .exterior import Stage
from .scalars import parse_field

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

HELP = {
    "lemma5": "signed-minor formula against direct pairing on the big cell",
    "antichain": "pairwise incomparability of a_n * b_n up to the symmetric group",
    "chain": "strict growth of the ideals I_l in degree 2, with rank certificates",
    "diagram": "commutativity of the restriction square and GF(2) surjectivity",
    "matroid": "theta-tilde and xi-tilde as contraction and deletion",
    "plucker": "Plücker relations vanish on cone points and cut out exactly the cone",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _stage(text: str) -> Stage:
    try:
        return Stage.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _field(text: str):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="verify", description="Finite-stage verification campaigns.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name], description=HELP[name])
        p.add_argument("--field", action="append", type=_field, metavar="gf:<p>|q",
                       help="field to run over; repeatable (default: the acceptance fields)")
        p.add_argument("--stage", type=_stage, metavar="n,p", help="stage, or stage bound for sweeps")
        p.add_argument("--samples", type=int, help="random samples per stage and field")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=Path, help="write the report here (atomically)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name == "lemma5":
            p.add_argument("--max-symbols", type=int, default=7, help="sweep stages with n + p <= this")
        if name == "antichain":
            p.add_argument("--max-n", type=int, default=6)
        if name == "chain":
            p.add_argument("--lmax", type=int, default=4)
        if name in ("plucker", "matroid"):
            p.add_argument("--matrix", type=Path, help="CSV or JSON matrix whose rows span the point")
        if name == "matroid":
            p.add_argument("--minor", type=Path, help="matroid JSON tested as a minor of --host")
            p.add_argument("--host", type=Path, help="matroid JSON")
    return parser


def config_from_args(args: argparse.Namespace) -> CampaignConfig:
    return CampaignConfig(
        command=args.command,
        fields=tuple(args.field or ()),
        stage=args.stage,
        max_n=getattr(args, "max_n", 6),
        l_max=getattr(args, "lmax", 4),
        samples=args.samples,
        seed=args.seed,
        max_symbols=getattr(args, "max_symbols", 7),
        matrix=getattr(args, "matrix", None),
        minor=getattr(args, "minor", None),
        host=getattr(args, "host", None),
    )


def build_report(cfg: CampaignConfig, checks: list[dict]) -> dict:
    return {
        "tool": "verify",
        "version": __version__,
        "command": cfg.command,
        "config": cfg.to_json(),
        "startedAt": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "checks": checks,
        "verdict": "pass" if all(c["verdict"] == "pass" for c in checks) else "fail",
    }


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=str) + "\n"
    lines = [f"verify {report['command']} (version {report['version']})"]
    for c in report["checks"]:
        lines.append(f"  {c['verdict'].upper():4}  {c['name']}")
        if c["verdict"] != "pass":
            lines.append("        " + json.dumps(c["details"], default=str))
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args)
        checks = run_campaign(cfg)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, KeyError) as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = build_report(cfg, checks)
    text = render(report, args.format)
    if args.out is not None:
        write_atomic(args.out, text)
        print(render(report, "text") if args.format == "json" else text, end="")
    else:
        print(text, end="")
    return EXIT_PASS if report["verdict"] == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
