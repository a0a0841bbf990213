"""Command-line surface binding the toolkit into reproducible runs.

Exit codes: 0 pass/valid, 1 usage error, 2 strategy or verification failure,
3 resource refusal.  Output files are byte-identical across runs with the
same configuration; timing appears only in the provenance header printed to
stdout, never in files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__, arith, cover, lemma, oracle
from .oracle import ResourceLimitExceeded

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2
EXIT_RESOURCE = 3

MIN_SEGMENT = 1 << 10

VERIFY_SUBJECTS = (
    "main",
    "est-ab",
    "est-c",
    "est-de",
    "sigma",
    "degree-error",
    "tail-grid",
    "b-margin",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    strategy: str | None = None
    cap: int | None = None
    subject: str | None = None
    output: str | None = None
    format: str = "json"
    threads: int = 1
    segment_size: int = 1 << 20
    seed: int = 0
    trials: int | None = None
    delta: list[float] = field(default_factory=list)
    sample: int | None = None
    grid: str | None = None
    limit: int | None = None

    def validate(self) -> None:
        if self.threads < 1:
            raise UsageError("threads must be >= 1")
        if self.segment_size < MIN_SEGMENT:
            raise UsageError(f"segment size must be >= {MIN_SEGMENT}")


def _provenance(config: RunConfig, wall: float) -> dict:
    cfg = {k: v for k, v in asdict(config).items() if v not in (None, [])}
    return {
        "tool": "sqfgraph",
        "version": __version__,
        "config": cfg,
        "wall_time_s": round(wall, 3),
    }


def _emit(payload: dict, config: RunConfig, wall: float, path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    header = dict(payload)
    header["provenance"] = _provenance(config, wall)
    print(json.dumps(header, sort_keys=True))


def _build_parser() -> _Parser:
    parser = _Parser(prog="sqfgraph", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser) -> None:
        p.add_argument("--threads", type=int,
                       default=int(os.environ.get("SQFGRAPH_THREADS", "1")))
        p.add_argument("--segment-size", type=int, default=1 << 20)
        p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("cover", help="build and validate a clique cover")
    p.add_argument("-n", type=int, required=True)
    p.add_argument(
        "--strategy",
        choices=["greedy", "capped-greedy", "mcf"],
        default="capped-greedy",
    )
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--csv", default=None, help="also write the cover rows here")
    common(p)

    p = sub.add_parser("verify", help="run one verification subject")
    p.add_argument("subject", choices=VERIFY_SUBJECTS)
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--n-max", type=int, default=10**6)
    p.add_argument("--delta", default="0,0.5,1")
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("oracle", help="exact independence number at small n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--limit", type=int, default=2000)
    common(p)

    p = sub.add_parser("cdf", help="empirical density-factor distribution")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--grid", default="0:1:0.001")
    common(p)

    p = sub.add_parser("constants", help="print the bound constants")
    common(p)
    return parser


def _cmd_cover(config: RunConfig) -> int:
    start = time.monotonic()
    kind = config.strategy or "capped-greedy"
    if kind == "greedy":
        result = cover.run_greedy(config.n, config.segment_size)
    elif kind == "capped-greedy":
        result = cover.run_capped_greedy(config.n, config.cap or 3, config.segment_size)
    else:
        result = cover.run_mcf(config.n, config.segment_size)
    if isinstance(result, cover.CoverFailure):
        payload = result.to_dict()
        payload["valid"] = False
        _emit(payload, config, time.monotonic() - start, config.output)
        return EXIT_FAILURE
    report = cover.validate_cover(result, config.segment_size)
    if config.csv_path:
        cover.write_cover_csv(result, config.csv_path)
    payload = {
        "n": config.n,
        "strategy": kind,
        "cap": config.cap if kind == "capped-greedy" else None,
        "parts": result.part_count(),
        "valid": report.passed,
    }
    _emit(payload, config, time.monotonic() - start, config.output)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _cmd_verify(config: RunConfig) -> int:
    start = time.monotonic()
    subject = config.subject
    reports: list[lemma.VerificationReport] = []
    if subject == "main":
        if config.n is None:
            raise UsageError("verify main needs -n")
        reports.extend(lemma.verify_feasibility_range(config.n, config.segment_size))
    elif subject == "est-ab":
        if config.n is None:
            raise UsageError("verify est-ab needs -n")
        reports.append(lemma.verify_class_counts(config.n))
    elif subject == "est-c":
        if config.n is None:
            raise UsageError("verify est-c needs -n")
        reports.append(
            lemma.verify_normalized_counts(config.n, config.sample, config.seed)
        )
    elif subject == "est-de":
        if config.n is None:
            raise UsageError("verify est-de needs -n")
        reports.append(lemma.verify_reciprocal_sums(config.n, config.segment_size))
    elif subject == "sigma":
        n_max = config.n if config.n is not None else 10**6
        for delta in config.delta:
            reports.append(lemma.verify_divisor_bound(n_max, delta, config.segment_size))
    elif subject == "degree-error":
        n_max = config.n if config.n is not None else 10**6
        reports.append(
            lemma.verify_degree_deviation(config.trials or 10000, n_max, config.seed)
        )
    elif subject == "tail-grid":
        reports.append(lemma.tail_grid_report())
    elif subject == "b-margin":
        reports.append(lemma.verify_conflict_margin())
    passed = all(r.passed for r in reports)
    payload = {
        "subject": subject,
        "pass": passed,
        "reports": [r.to_dict() for r in reports],
    }
    _emit(payload, config, time.monotonic() - start, config.output)
    return EXIT_OK if passed else EXIT_FAILURE


def _cmd_oracle(config: RunConfig) -> int:
    start = time.monotonic()
    size, witness = oracle.max_independent_set_exact(
        config.n, config.limit or 2000
    )
    even_count = arith.count_coprime_squarefree((2,), config.n // 2).value
    payload = {
        "n": config.n,
        "alpha_independence": size,
        "even_count": even_count,
        "match": size == even_count,
        "witness": witness,
    }
    _emit(payload, config, time.monotonic() - start, config.output)
    return EXIT_OK if payload["match"] else EXIT_FAILURE


def _parse_grid(spec: str) -> list[Fraction]:
    try:
        start_s, stop_s, step_s = spec.split(":")
        start, stop, step = Fraction(start_s), Fraction(stop_s), Fraction(step_s)
    except ValueError as exc:
        raise UsageError(f"bad grid {spec!r}; expected start:stop:step") from exc
    if step <= 0:
        raise UsageError("grid step must be positive")
    out = []
    t = start
    while t <= stop:
        if 0 < t <= 1:
            out.append(t)
        t += step
    if not out:
        raise UsageError("grid contains no thresholds in (0, 1]")
    return out


def _cmd_cdf(config: RunConfig) -> int:
    start = time.monotonic()
    grid = _parse_grid(config.grid or "0:1:0.001")
    rows = oracle.density_factor_cdf(config.n, grid, config.segment_size)
    lines = ["t,probability"]
    lines += [f"{float(t)!r},{float(p)!r}" for t, p in rows]
    text = "\n".join(lines) + "\n"
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    header = {
        "n": config.n,
        "points": len(rows),
        "provenance": _provenance(config, time.monotonic() - start),
    }
    print(json.dumps(header, sort_keys=True))
    return EXIT_OK


def _cmd_constants(config: RunConfig) -> int:
    start = time.monotonic()
    consts = {
        str(delta): {
            "coefficient": lemma.divisor_product_constants(delta).coefficient,
            "exponent": lemma.divisor_product_constants(delta).exponent,
        }
        for delta in (0.0, 0.5, 1.0)
    }
    payload = {
        "divisor_bound_constants": consts,
        "error_budget": asdict(lemma.DEFAULT_BUDGET),
        "zeta3": lemma.ZETA3,
        "threshold_ratio": lemma.THRESHOLD_RATIO,
    }
    _emit(payload, config, time.monotonic() - start, config.output)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig(
            command=args.command,
            n=getattr(args, "n", None),
            strategy=getattr(args, "strategy", None),
            cap=getattr(args, "cap", None),
            subject=getattr(args, "subject", None),
            output=getattr(args, "output", None),
            threads=getattr(args, "threads", 1),
            segment_size=getattr(args, "segment_size", 1 << 20),
            seed=getattr(args, "seed", 0),
            trials=getattr(args, "trials", None),
            delta=[float(d) for d in getattr(args, "delta", "0,0.5,1").split(",")]
            if hasattr(args, "delta")
            else [],
            sample=getattr(args, "sample", None),
            grid=getattr(args, "grid", None),
            limit=getattr(args, "limit", None),
        )
        config.csv_path = getattr(args, "csv", None)
        config.validate()
        handler = {
            "cover": _cmd_cover,
            "verify": _cmd_verify,
            "oracle": _cmd_oracle,
            "cdf": _cmd_cdf,
            "constants": _cmd_constants,
        }[config.command]
        return handler(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
