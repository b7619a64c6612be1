"""Command-line surface: elements, matrix, spectrum, thermo, and verify
subcommands with deterministic JSON/CSV output.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import emit
from .oracle import default_workers
from .rational import parse_rational
from .rdm import RdmQuery, SystemSpec, ThermoParams
from .verify import run_verification

STREAM_CAP = 14


@dataclass
class CliConfig:
    command: str
    L: Optional[int] = None
    N: Optional[int] = None
    r: Optional[int] = None
    n: Optional[int] = None
    p: Optional[str] = None
    mu: Optional[str] = None
    fmt: str = "json"
    out: Optional[str] = None
    max_L: int = 8
    max_n: int = 4
    cap_assembly: int = STREAM_CAP
    workers: int = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permrdm",
        description=("Exact block reduced density matrices of "
                     "permutation-invariant spin-1/2 eigenstates"),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_system_flags(p):
        p.add_argument("--L", type=int, required=True, help="system size")
        p.add_argument("--N", type=int, required=True, help="number of up spins")
        p.add_argument("--r", type=int, required=True, help="singlet pair count")
        p.add_argument("--n", type=int, required=True, help="subsystem size")

    def add_io_flags(p, default_fmt):
        p.add_argument("--format", dest="fmt", choices=("json", "csv"),
                       default=default_fmt)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p_el = sub.add_parser("elements", help="(k, Z) value table")
    add_system_flags(p_el)
    add_io_flags(p_el, "json")

    p_mat = sub.add_parser("matrix", help="nonzero matrix entries")
    add_system_flags(p_mat)
    add_io_flags(p_mat, "csv")
    p_mat.add_argument("--cap-assembly", dest="cap_assembly", type=int,
                       default=STREAM_CAP, help="largest n the emitter accepts")

    p_sp = sub.add_parser("spectrum", help="eigenvalues, entropy and purity")
    add_system_flags(p_sp)
    add_io_flags(p_sp, "json")

    p_th = sub.add_parser("thermo", help="large-system-limit value table")
    p_th.add_argument("--p", required=True, help='filling fraction, e.g. "1/2"')
    p_th.add_argument("--mu", required=True, help='symmetry fraction, e.g. "1/4"')
    p_th.add_argument("--n", type=int, required=True, help="subsystem size")
    add_io_flags(p_th, "json")

    p_ver = sub.add_parser("verify", help="run the verification suites")
    p_ver.add_argument("--maxL", dest="max_L", type=int, default=8)
    p_ver.add_argument("--maxn", dest="max_n", type=int, default=4)
    p_ver.add_argument("--out", default=None)
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    cfg = CliConfig(command=ns.command, workers=default_workers())
    for field in ("L", "N", "r", "n", "p", "mu", "fmt", "out", "max_L", "max_n",
                  "cap_assembly"):
        if hasattr(ns, field):
            setattr(cfg, field, getattr(ns, field))
    return cfg


def _write(text_or_lines, out: Optional[str]) -> None:
    if isinstance(text_or_lines, str):
        lines: Iterator[str] = iter(text_or_lines.splitlines())
        if out is None:
            sys.stdout.write(text_or_lines)
            return
        with open(out, "w") as fh:
            fh.write(text_or_lines)
        return
    else:
        lines = text_or_lines
    if out is None:
        for line in lines:
            sys.stdout.write(line + "\n")
    else:
        with open(out, "w") as fh:
            for line in lines:
                fh.write(line + "\n")


def _query(cfg: CliConfig) -> RdmQuery:
    return RdmQuery(SystemSpec(cfg.L, cfg.N, cfg.r), cfg.n)


def run(cfg: CliConfig) -> int:
    """Execute one parsed command; raises ValueError on invalid parameters."""
    if cfg.command == "elements":
        q = _query(cfg)
        if cfg.fmt == "json":
            _write(emit.to_json(emit.elements_document(q)), cfg.out)
        else:
            _write(emit.elements_csv(q), cfg.out)
        return 0
    if cfg.command == "matrix":
        q = _query(cfg)
        if cfg.fmt == "json":
            _write(emit.to_json(emit.matrix_document(q, cap=cfg.cap_assembly)),
                   cfg.out)
        else:
            _write(emit.matrix_csv(q, cap=cfg.cap_assembly), cfg.out)
        return 0
    if cfg.command == "spectrum":
        q = _query(cfg)
        if cfg.fmt == "json":
            _write(emit.to_json(emit.spectrum_document(q)), cfg.out)
        else:
            _write(emit.spectrum_csv(q), cfg.out)
        return 0
    if cfg.command == "thermo":
        tp = ThermoParams(parse_rational(cfg.p), parse_rational(cfg.mu), cfg.n)
        if cfg.fmt == "json":
            _write(emit.to_json(emit.thermo_document(tp)), cfg.out)
        else:
            _write(emit.thermo_csv(tp), cfg.out)
        return 0
    if cfg.command == "verify":
        checks, ok = run_verification(cfg.max_L, cfg.max_n, workers=cfg.workers)
        _write(emit.to_json(emit.checks_document(checks)), cfg.out)
        return 0 if ok else 1
    raise ValueError(f"unknown command {cfg.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        return run(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
