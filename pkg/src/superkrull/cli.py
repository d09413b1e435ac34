"""Command line front end: ``superkrull <command> <file> [options]``.

Exit codes: 0 success, 2 parse or usage error, 3 scope error,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import InvariantViolation, ParseError, ScopeError
from .ksdim import SuperPresentation, is_odd_parameter_system, ksdim, verify_noether_witness
from .polyarith import GREVLEX, LEX
from .superpoly import indices_of

COMMANDS = ("ksdim", "onerel", "regular", "omega", "oracle", "experiment")
EXIT_OK, EXIT_PARSE, EXIT_SCOPE, EXIT_INVARIANT = 0, 2, 3, 4
SCHEMA_VERSION = "1"


@dataclass
class PresentationFile:
    path: str
    text: str
    presentation: SuperPresentation

    @classmethod
    def load(cls, path: str) -> "PresentationFile":
        from .parser import parse_presentation

        try:
            text = Path(path).read_text() if path != "-" else sys.stdin.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
        return cls(path, text, parse_presentation(text))

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()


@dataclass
class CommandReport:
    command: str
    input_digest: str
    result: dict
    timing: dict = field(default_factory=dict)
    version: str = __version__
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "result": self.result,
            "timing": self.timing,
            "version": self.version,
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _order(name: str):
    return LEX if name == "lex" else GREVLEX


def _cmd_ksdim(P: SuperPresentation, args) -> dict:
    d = ksdim(P, _order(args.order))
    out = d.to_dict()
    if args.witness:
        check = {"parameter_system": is_odd_parameter_system(P, d.witness, _order(args.order))}
        check["noether_injective"] = (
            verify_noether_witness(P, d.witness, _order(args.order)) if P.is_generic_scope() else None
        )
        out["witness_check"] = check
    return out


def _single_relation(P: SuperPresentation):
    if len(P.relations) != 1:
        raise ScopeError(f"onerel requires exactly one relation, found {len(P.relations)}")
    return P.relations[0]


def _cmd_onerel(P: SuperPresentation, args) -> dict:
    from .onerel import analyze

    return analyze(_single_relation(P)).to_dict()


def _cmd_regular(P: SuperPresentation, args) -> dict:
    from .regular import generic_nonsingular, is_regular_global

    out = is_regular_global(P, _order(args.order)).to_dict()
    out["generic_nonsingular"] = generic_nonsingular(P) if P.is_generic_scope() else None
    return out


def _cmd_omega(P: SuperPresentation, args) -> dict:
    from .kaehler import omega_generic_rank, omega_presentation, regularity_via_omega

    out = omega_presentation(P).to_dict()
    if P.is_generic_scope():
        out["generic_rank"] = omega_generic_rank(P).to_dict()
        out["regular_via_omega"] = regularity_via_omega(P)
    else:
        out["generic_rank"] = None
        out["regular_via_omega"] = None
    return out


def _cmd_oracle(P: SuperPresentation, args) -> dict:
    from .oracle import exterior_span, max_free_product

    span = exterior_span(P)
    s, mask = max_free_product(span)
    return {
        "odd_dim": s,
        "witness": list(indices_of(mask)),
        "span_dim": span.dimension,
        "algebra_dim": span.quotient_dimension(),
    }


def _cmd_experiment(P: SuperPresentation, args) -> dict:
    from .onerel import basement, basement_experiment

    f = _single_relation(P)
    return basement_experiment(basement(f), P.n, args.trials, args.seed, P.field)


_DISPATCH = {
    "ksdim": _cmd_ksdim,
    "onerel": _cmd_onerel,
    "regular": _cmd_regular,
    "omega": _cmd_omega,
    "oracle": _cmd_oracle,
    "experiment": _cmd_experiment,
}


def run_command(cmd: str, source: PresentationFile, args) -> CommandReport:
    if cmd not in _DISPATCH:
        raise ValueError(f"unknown command {cmd!r}")
    start = time.perf_counter()
    result = _DISPATCH[cmd](source.presentation, args)
    elapsed = time.perf_counter() - start
    seed = args.seed if cmd == "experiment" else None
    return CommandReport(cmd, source.digest, result, {"seconds": round(elapsed, 6)}, seed=seed)


def _human(report: CommandReport) -> str:
    r = report.result
    cmd = report.command
    if cmd == "ksdim":
        lines = [f"Ksdim = {r['even']}|{r['odd']}", f"witness: {r['witness']}"]
        if "witness_check" in r:
            lines.append(f"witness check: {r['witness_check']}")
        return "\n".join(lines)
    if cmd == "regular":
        line = f"verdict: {r['verdict']}"
        if r["failed_clause"]:
            line += f" (failed clause {r['failed_clause']})"
        return "\n".join([line, f"generic nonsingular: {r['generic_nonsingular']}"])
    if cmd == "omega":
        lines = ["generators: " + " ".join(f"{g['name']}({g['parity']})" for g in r["generators"])]
        lines += [f"relation: {rel['form']}  [{rel['parity']}]" for rel in r["relations"]]
        if r["generic_rank"] is not None:
            g = r["generic_rank"]
            lines.append(f"generic rank: {g['p']}|{g['q']}, free: {g['free']}")
            lines.append(f"regular via omega: {r['regular_via_omega']}")
        return "\n".join(lines)
    if cmd == "experiment":
        return "\n".join(
            [
                f"basement: {r['basement']}  s={r['s']}  trials={r['trials']}  seed={r['seed']}",
                f"observed odd dimensions: {r['values']}",
            ]
        )
    return "\n".join(f"{k}: {v}" for k, v in sorted(r.items()))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superkrull", description="Krull super-dimension toolkit")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="presentation file, or - for stdin")
    ap.add_argument("--json", action="store_true", help="emit the JSON report")
    ap.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    ap.add_argument("--witness", action="store_true", help="verify the odd-parameter witness")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=20)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        source = PresentationFile.load(args.file)
        report = run_command(args.command, source, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScopeError as exc:
        print(f"scope error: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(report.to_json() if args.json else _human(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
