"""Command-line front end.

    t2hilbert --matrix "1 2 3; 0 1 1" --tasks series,gammas --format json
    t2hilbert --tasks verify
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import catalog
from .gammas import DEFAULT_KAPPA, KAPPA_VARIANTS, gamma0, gamma2, gamma_off
from .hilbert import NotGenericizable, hilbert_on, on_to_off, structural_checks
from .oracle import oracle_series, perturbation_gamma
from .series import HilbertSeries, laurent_at_one
from .weights import (
    WeightMatrix,
    classify,
    describe_log,
    faithfulness,
    minor_table,
    parse_matrix,
    shell_support,
    to_standard_form,
    try_genericize,
)

TASKS = ("classify", "series", "gammas", "verify")
FORMATS = ("text", "json", "latex")


@dataclass(frozen=True)
class RunConfig:
    matrix: str | None
    tasks: tuple[str, ...] = ("classify", "series", "gammas")
    oracle_degree: int = 20
    genericize_bound: int = 10
    gamma_variant: str = DEFAULT_KAPPA
    output_format: str = "text"
    seed: int = 0


@dataclass
class Report:
    sections: dict = field(default_factory=dict)
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if self.errors or any(not ok for _, ok, _ in self.checks) else 0

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    def to_json(self) -> dict:
        doc = dict(self.sections)
        if self.checks:
            doc["checks"] = [{"name": n, "status": "PASS" if ok else "FAIL", "detail": d}
                             for n, ok, d in self.checks]
        if self.errors:
            doc["errors"] = self.errors
        doc["exit_status"] = self.exit_code
        return doc


class TaskError(Exception):
    def __init__(self, operation: str, exc: Exception):
        super().__init__(f"{operation}: {type(exc).__name__}: {exc}")


def _guard(operation: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except Exception as exc:  # surfaced with the operation that raised it
        raise TaskError(operation, exc) from exc


def _cols(indices) -> list[int]:
    return sorted(i + 1 for i in indices)


# ---------------------------------------------------------------- tasks

def task_classify(A: WeightMatrix, cfg: RunConfig) -> dict:
    f = faithfulness(A)
    c = classify(A)
    support = shell_support(A)
    out = {
        "matrix": A.to_text(),
        "minors": {f"{i + 1}{j + 1}": d for (i, j), d in minor_table(A).items()},
        "rank": f.rank,
        "gcd_of_minors": f.gcd,
        "faithful": f.faithful,
        "classification": c.kind.value,
        "shell_support": _cols(support.indices),
        "on_shell_series_describes_quotient": support.full,
    }
    if not support.indices:
        out["note"] = "shell is the origin; symplectic quotient is a point"
    if f.rank == 2 and not A.has_zero_column():
        B, log = to_standard_form(A)
        out["standard_form"] = {"matrix": B.to_text(), "moves": describe_log(log)}
        g = try_genericize(B, cfg.genericize_bound)
        out["genericize"] = {"status": g.status,
                             "matrix": g.matrix.to_text() if g.matrix else None,
                             "moves": describe_log(g.log)}
    return out


def _series_or_fallback(A: WeightMatrix, cfg: RunConfig) -> tuple[HilbertSeries | None, dict]:
    try:
        on = _guard("hilbert_on", hilbert_on, A, genericize_bound=cfg.genericize_bound)
    except TaskError as err:
        if isinstance(err.__cause__, NotGenericizable):
            O = oracle_series(A, cfg.oracle_degree)
            return None, {"truncated": True, "reason": str(err),
                          "on_shell_coefficients": list(O.on_shell),
                          "off_shell_coefficients": list(O.off_shell)}
        raise
    off = on_to_off(on)
    L = laurent_at_one(on, 3)
    return on, {"truncated": False, "on_shell": on.to_json(), "off_shell": off.to_json(),
                "on_shell_text": on.to_text(), "off_shell_text": off.to_text(),
                "on_shell_latex": on.to_latex(),
                "pole_order": L.pole_order, "laurent": [str(g) for g in L.coefficients]}


def task_series(A: WeightMatrix, cfg: RunConfig) -> dict:
    return _series_or_fallback(A, cfg)[1]


def _expansion_check(A: WeightMatrix, cfg: RunConfig, gamma2_value: Fraction) -> str:
    """Compare gamma2 with the exact expansion of the closed series, when there is one."""
    try:
        on = hilbert_on(A, genericize_bound=cfg.genericize_bound)
    except NotGenericizable:
        return "no closed series to compare"
    target = laurent_at_one(on, 2).coefficients[2]
    return "matches exact expansion" if target == gamma2_value else f"differs from exact expansion {target}"


def task_gammas(A: WeightMatrix, cfg: RunConfig) -> dict:
    f = faithfulness(A)
    if f.rank < 2:
        raise TaskError("gamma0", ValueError("matrix has rank < 2"))
    B, _ = _guard("to_standard_form", to_standard_form, A)
    variant = cfg.gamma_variant
    value, report = _guard("gamma2", gamma2, B, variant=variant)
    off = _guard("gamma_off", gamma_off, B, variant=variant)
    doc = report.to_json()
    doc["standard_form"] = B.to_text()
    doc["gamma2_check"] = _expansion_check(A, cfg, value)
    doc["off_shell"] = [str(x) for x in off]
    return doc


# ---------------------------------------------------------------- verify

def _verify_matrix(A: WeightMatrix, cfg: RunConfig, rep: Report, label: str) -> None:
    D = cfg.oracle_degree
    O = oracle_series(A, D)
    try:
        on = hilbert_on(A, genericize_bound=cfg.genericize_bound)
    except NotGenericizable:
        on = None
    B, _ = to_standard_form(A)
    g0, _ = gamma0(B)
    pert = perturbation_gamma(B, "gamma0", seed=cfg.seed)
    rep.check(f"{label}: gamma0 u-method vs perturbation", abs(pert.value - float(g0)) < 1e-4,
              f"{g0} vs {pert.value:.10f}")
    if on is None:
        rep.check(f"{label}: oracle on-shell coefficients nonnegative",
                  all(c >= 0 for c in O.on_shell) or not shell_support(A).full,
                  "no generic equivalent; closed form skipped")
        return
    rep.check(f"{label}: series vs oracle to degree {D}",
              on.coefficients(D) == list(O.on_shell))
    rep.check(f"{label}: off-shell series vs oracle to degree {D}",
              on_to_off(on).coefficients(D) == list(O.off_shell))
    L = laurent_at_one(on, 3)
    for name, ok in structural_checks(A, on, L):
        rep.check(f"{label}: {name}", ok)
    g2, _ = gamma2(B, variant=cfg.gamma_variant)
    rep.check(f"{label}: gamma0 formula vs expansion", g0 == L.coefficients[0],
              f"{g0} vs {L.coefficients[0]}")
    rep.check(f"{label}: gamma2 formula vs expansion", g2 == L.coefficients[2],
              f"{g2} vs {L.coefficients[2]}")


def task_verify(A: WeightMatrix | None, cfg: RunConfig, rep: Report) -> None:
    if A is not None:
        _verify_matrix(A, cfg, rep, A.to_text())
        return
    rep.check("point quotient: empty shell support",
              not shell_support(catalog.POINT_QUOTIENT).indices)
    rep.check("full shell support {1,2,3}",
              _cols(shell_support(catalog.FULL_SHELL).indices) == [1, 2, 3])
    rep.check("degenerate matrix and generic partner share a series",
              hilbert_on(catalog.DEGENERATE_FIXABLE) == hilbert_on(catalog.GENERIC_PARTNER))
    rep.check("five-column matrix reproduces the closed form",
              hilbert_on(catalog.FIVE_COLUMN) == catalog.FIVE_COLUMN_SERIES)
    rep.check("[[1,1,1],[0,1,1]] cannot be made generic",
              try_genericize(catalog.NEVER_GENERIC).status == "impossible")
    for A in (catalog.SMALL_GENERIC, catalog.DEGENERATE_FIXABLE, catalog.FIVE_COLUMN,
              catalog.NEVER_GENERIC, catalog.DEGENERATE_WIDE_SEARCH):
        _verify_matrix(A, cfg, rep, A.to_text())


# ---------------------------------------------------------------- driver

def run(cfg: RunConfig) -> Report:
    rep = Report()
    A = None
    if cfg.matrix is not None:
        try:
            A = parse_matrix(cfg.matrix)
        except Exception as exc:
            rep.errors.append(f"parse_matrix: {type(exc).__name__}: {exc}")
            return rep
    elif any(t != "verify" for t in cfg.tasks):
        rep.errors.append("parse_matrix: --matrix is required for tasks other than verify")
        return rep
    handlers = {"classify": task_classify, "series": task_series, "gammas": task_gammas}
    for task in cfg.tasks:
        try:
            if task == "verify":
                task_verify(A, cfg, rep)
            else:
                rep.sections[task] = handlers[task](A, cfg)
        except TaskError as exc:
            rep.errors.append(str(exc))
        except Exception as exc:
            rep.errors.append(f"{task}: {type(exc).__name__}: {exc}")
    return rep


def _render_text(rep: Report) -> str:
    lines = []
    for name, section in rep.sections.items():
        lines.append(f"[{name}]")
        for key, value in section.items():
            if key.endswith("_latex") or key in ("on_shell", "off_shell"):
                continue
            lines.append(f"  {key}: {value}")
    for name, ok, detail in rep.checks:
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    return "\n".join(lines)


def _latex_fraction(x: str) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f < 0 else ""
    return rf"{sign}\frac{{{abs(f.numerator)}}}{{{f.denominator}}}"


def _render_latex(rep: Report) -> str:
    lines = []
    series = rep.sections.get("series")
    if series and not series.get("truncated"):
        on = HilbertSeries.from_json(series["on_shell"])
        off = HilbertSeries.from_json(series["off_shell"])
        lines.append(r"\operatorname{Hilb}^{\mathit{on}}_A(t) = " + on.to_latex())
        lines.append(r"\operatorname{Hilb}^{\mathit{off}}_A(t) = " + off.to_latex())
    gam = rep.sections.get("gammas")
    if gam:
        for k in ("gamma0", "gamma2", "gamma3"):
            lines.append(rf"\gamma_{k[-1]} = {_latex_fraction(gam[k])}")
    body = _render_text(Report(checks=rep.checks, errors=rep.errors))
    return "\n".join(lines + ([body] if body else []))


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep.to_json(), indent=2)
    if fmt == "latex":
        return _render_latex(rep)
    return _render_text(rep)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="t2hilbert",
                                description="Hilbert series and Laurent coefficients for 2-torus weight matrices.")
    p.add_argument("--matrix", help='weight matrix, rows split by ";", e.g. "1 2 3; 0 1 1"')
    p.add_argument("--tasks", default="classify,series,gammas",
                   help=f"comma-separated subset of {','.join(TASKS)}")
    p.add_argument("--oracle-degree", type=int, default=20)
    p.add_argument("--genericize-bound", type=int, default=10)
    p.add_argument("--gamma-variant", choices=KAPPA_VARIANTS, default=DEFAULT_KAPPA)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--seed", type=int, default=0)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    tasks = tuple(t.strip() for t in args.tasks.split(",") if t.strip())
    unknown = [t for t in tasks if t not in TASKS]
    if unknown:
        print(f"error in parse_arguments: unknown task(s) {', '.join(unknown)}", file=sys.stderr)
        return 2
    cfg = RunConfig(args.matrix, tasks, args.oracle_degree, args.genericize_bound,
                    args.gamma_variant, args.format, args.seed)
    rep = run(cfg)
    print(render(rep, cfg.output_format))
    for err in rep.errors:
        print(f"error in {err}", file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
