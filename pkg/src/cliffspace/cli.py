"""Command-line front end: family files in, verification reports out."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import yaml

from . import maximal, minimal
from .clifford import FamilyError, QuadricFamily, toric_quadrics
from .exactla import SparseMatrix, kernel_basis
from .report import FAIL, Check, SuiteResult, jsonable

SCHEMA_VERSION = 1
COMMANDS = ("maximal", "minimal", "toric", "verify-all")
FORMATS = ("json", "csv", "text")
THREADS_ENV = "CLIFFSPACE_THREADS"
TORIC_QS = (Fraction(1), Fraction(-1), Fraction(5), Fraction(-1, 2))


class FamilyParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class FamilyValidationError(ValueError):
    def __init__(self, message: str, matrix_index: int | None = None, dependency: tuple[Fraction, ...] | None = None):
        super().__init__(message)
        self.matrix_index = matrix_index
        self.dependency = dependency


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 2
    degree_cap: int = 6
    family_path: Path | None = None
    q: Fraction | None = None
    output_format: str = "json"
    seed: int = 0
    threads: int = 1
    timing: bool = True

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.degree_cap < 1:
            raise ValueError("degree cap must be at least 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.command == "minimal" and self.family_path is None:
            raise ValueError("minimal needs --family")
        if self.command == "toric" and self.q is None:
            raise ValueError("toric needs --q")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")

    def echo(self) -> dict:
        return {
            "command": self.command,
            "n": self.n,
            "degree_cap": self.degree_cap,
            "family_path": str(self.family_path) if self.family_path is not None else None,
            "q": str(self.q) if self.q is not None else None,
            "output_format": self.output_format,
            "seed": self.seed,
        }


@dataclass
class Report:
    command: str
    config: dict
    suites: list[SuiteResult]
    elapsed_ms: int | None

    @property
    def records(self) -> list[dict]:
        out = []
        for s in self.suites:
            for c in s.checks:
                rec = c.to_json()
                rec["suite"] = s.suite
                out.append(rec)
        return out

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for s in self.suites for c in s.checks)

    @property
    def exit_status(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "records": self.records,
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "name", "status", "expected", "observed", "anchor"])
        for r in self.records:
            w.writerow([r["suite"], r["name"], r["status"], _compact(r["expected"]), _compact(r["observed"]), r["anchor"]])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for s in self.suites:
            lines.append(f"== {s.suite}")
            for c in s.checks:
                line = f"  {c.status.upper():<12} {c.name}"
                if c.status != "pass" and (c.observed is not None or c.expected is not None):
                    line += f"  observed={_compact(jsonable(c.observed))} expected={_compact(jsonable(c.expected))}"
                if c.note:
                    line += f"  ({c.note})"
                lines.append(line)
        lines.append("FAILED" if self.failed else "OK")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _compact(x) -> str:
    return "" if x is None else json.dumps(x, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# family files


def _mark(node) -> tuple[int, int]:
    return node.start_mark.line + 1, node.start_mark.column + 1


def _rational(node) -> Fraction:
    if not isinstance(node, yaml.ScalarNode):
        raise FamilyParseError("expected a rational entry", *_mark(node))
    text = node.value.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FamilyParseError(f"malformed rational {text!r}", *_mark(node)) from None


def _integer(node, name: str) -> int:
    if not isinstance(node, yaml.ScalarNode):
        raise FamilyParseError(f"{name} must be an integer", *_mark(node))
    try:
        return int(node.value)
    except ValueError:
        raise FamilyParseError(f"{name} must be an integer, got {node.value!r}", *_mark(node)) from None


def parse_family_text(text: str) -> QuadricFamily:
    """Read `n`, `k` and `matrices` (k row-major n x n arrays of integers or "p/q" strings)."""
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        m = exc.problem_mark
        raise FamilyParseError(f"syntax error: {exc.problem}", m.line + 1 if m else None, m.column + 1 if m else None) from None
    if not isinstance(root, yaml.MappingNode):
        raise FamilyParseError("top level must be a mapping", *(_mark(root) if root is not None else (1, 1)))
    fields = {k.value: v for k, v in root.value}
    for name in ("n", "k", "matrices"):
        if name not in fields:
            raise FamilyParseError(f"missing field {name!r}", *_mark(root))
    n = _integer(fields["n"], "n")
    k = _integer(fields["k"], "k")
    mats_node = fields["matrices"]
    if not isinstance(mats_node, yaml.SequenceNode):
        raise FamilyParseError("matrices must be a list", *_mark(mats_node))
    if len(mats_node.value) != k:
        raise FamilyParseError(f"expected {k} matrices, found {len(mats_node.value)}", *_mark(mats_node))
    mats = []
    for t, mnode in enumerate(mats_node.value):
        if not isinstance(mnode, yaml.SequenceNode) or len(mnode.value) != n:
            raise FamilyParseError(f"matrix {t} must have {n} rows", *_mark(mnode))
        rows = []
        for rnode in mnode.value:
            if not isinstance(rnode, yaml.SequenceNode) or len(rnode.value) != n:
                raise FamilyParseError(f"matrix {t} rows must have {n} entries", *_mark(rnode))
            rows.append(tuple(_rational(e) for e in rnode.value))
        mats.append(tuple(rows))
    return validate_family(n, mats)


def validate_family(n: int, mats: Sequence[Sequence[Sequence[Fraction]]]) -> QuadricFamily:
    for t, m in enumerate(mats):
        for a in range(n):
            for b in range(a + 1, n):
                if m[a][b] != m[b][a]:
                    raise FamilyValidationError(f"matrix {t} is not symmetric at ({a}, {b})", matrix_index=t)
    cols = [{a * n + b: m[a][b] for a in range(n) for b in range(n) if m[a][b]} for m in mats]
    ker = kernel_basis(SparseMatrix.from_columns(cols, n * n))
    if ker.dim:
        v = ker.basis[0]
        dep = tuple(Fraction(v.get(t, 0)) for t in range(len(mats)))
        raise FamilyValidationError(f"matrices are linearly dependent: {[str(x) for x in dep]}", dependency=dep)
    try:
        return QuadricFamily(n, tuple(tuple(tuple(r) for r in m) for m in mats))
    except FamilyError as exc:
        raise FamilyValidationError(str(exc)) from None


def parse_family_file(path: str | os.PathLike) -> QuadricFamily:
    return parse_family_text(Path(path).read_text())


def _entry(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else str(x)


def format_family(f: QuadricFamily) -> str:
    """Inverse of parse_family_text."""
    mats = [[[_entry(x) for x in row] for row in m] for m in f.basis]
    return yaml.safe_dump({"n": f.n, "k": f.k, "matrices": mats}, default_flow_style=None, sort_keys=False)


# ---------------------------------------------------------------------------
# running


def _guard(label: str, job: Callable[[], SuiteResult]) -> Callable[[], SuiteResult]:
    def run() -> SuiteResult:
        try:
            return job()
        except Exception as exc:  # reported, not raised
            res = SuiteResult(label)
            res.add(Check(f"{label} aborted", FAIL, anchor="plumbing", note=f"{type(exc).__name__}: {exc}"))
            return res
    return run


def _jobs(cfg: RunConfig) -> list[Callable[[], SuiteResult]]:
    cap = cfg.degree_cap
    if cfg.command == "maximal":
        return [_guard(f"maximal n={cfg.n}", lambda: maximal.suite(cfg.n, cap))]
    if cfg.command == "toric":
        return [_guard(f"toric n={cfg.n} q={cfg.q}", lambda: minimal.toric_suite(cfg.n, cfg.q, cap))]
    if cfg.command == "minimal":
        def run_file() -> SuiteResult:
            try:
                fam = parse_family_file(cfg.family_path)
            except (OSError, FamilyParseError, FamilyValidationError) as exc:
                res = SuiteResult(f"minimal {cfg.family_path}")
                res.add(Check("family file", FAIL, anchor="plumbing", note=str(exc)))
                return res
            return minimal.suite(fam, cap, label=f"minimal {cfg.family_path}")
        return [_guard("minimal", run_file)]
    # verify-all at default caps
    jobs: list[Callable[[], SuiteResult]] = []
    for n in (1, 2, 3, 4):
        jobs.append(_guard(f"maximal n={n}", lambda n=n: maximal.suite(n, 6 if n < 4 else 4)))
    for n in (2, 3, 4):
        jobs.append(_guard(f"minimal toric n={n}", lambda n=n: minimal.suite(toric_quadrics(n), 6, f"minimal toric n={n}")))
    for s in range(3):
        seed = cfg.seed + s
        jobs.append(_guard(f"minimal random n=3 seed={seed}", lambda seed=seed: minimal.suite(
            minimal.random_certified_family(3, seed), 6, f"minimal random n=3 seed={seed}")))
    for n in (2, 3):
        for q in TORIC_QS:
            jobs.append(_guard(f"toric n={n} q={q}", lambda n=n, q=q: minimal.toric_suite(n, q, 6)))
    return jobs


def run(cfg: RunConfig) -> Report:
    start = time.perf_counter()
    jobs = _jobs(cfg)
    if cfg.threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            suites = list(pool.map(lambda j: j(), jobs))  # map keeps declaration order
    else:
        suites = [j() for j in jobs]
    elapsed = round((time.perf_counter() - start) * 1000) if cfg.timing else None
    return Report(cfg.command, cfg.echo(), suites, elapsed)


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffspace", description="Verify graded Clifford section algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--n", type=int, default=2)
        s.add_argument("--degree-cap", type=int, default=6)
        s.add_argument("--family", dest="family_path", type=Path, default=None)
        s.add_argument("--q", type=Fraction, default=None)
        s.add_argument("--output-format", choices=FORMATS, default="json")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--threads", type=int, default=_default_threads())
        s.add_argument("--no-timing", dest="timing", action="store_false", help="emit elapsed_ms as null")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
    except ValueError as exc:
        print(f"cliffspace: {exc}", file=sys.stderr)
        return 2
    report = run(cfg)
    sys.stdout.write(report.render(cfg.output_format))
    return report.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
