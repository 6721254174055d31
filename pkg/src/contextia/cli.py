"""Command-line front-end.

Subcommands: ``bound`` (noncontextual bound of a graph file), ``kcbs``
(stream of explicit quantum violations), ``tracial`` (verification
campaigns), ``hvm`` (seeded hidden-variable model), ``scan`` (umbrella-angle
sweep) and ``verify`` (scenario-file checker).

Conventions: data goes to stdout (canonical JSON or CSV), seeds and
diagnostics to stderr. When ``--out`` is given the delimited output is
written to that file and a PNG figure is rendered next to it. Exit codes:
0 success, 1 a verified property failed, 2 usage or parse error, 3 a
capacity cap was exceeded. ``CONTEXTIA_SEED`` serves as the seed fallback.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import plots
from .constructions import (
    KCBS_CLASSICAL_BOUND,
    alignment_unitary,
    conjugate_scenario,
    kcbs_pentagon,
    kcbs_vectors,
    matrix_units,
    mixture_state,
    typeiii_projections,
    umbrella_family,
)
from .errors import (
    CapacityError,
    ConstructionError,
    ValidationError,
    VerificationError,
)
from .exclusivity import (
    count_assignments,
    cycle_graph,
    noncontextual_bound,
    pm_cycle_min,
)
from .hvm import hvm_predict, hvm_random, pm_model_value, pm_random_measure
from .linalg import DEFAULT_TOL, DensityState, state_value
from .serialize import (
    dumps_canonical,
    graph_from_json,
    loads,
    model_to_json,
    scenario_from_json,
)
from .tracial import (
    full_campaign,
    reports_to_csv,
    tracial_value,
    verify_proof_chain,
    verify_trace_bound,
)

_ENV_SEED = "CONTEXTIA_SEED"
_DEFAULT_SEED = 0


@dataclass(frozen=True)
class RunConfig:
    """Validated run-wide settings shared by the subcommands."""

    tolerance: float = DEFAULT_TOL
    seed: int = _DEFAULT_SEED
    trials: int = 1
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValidationError(f"tolerance must be > 0, got {self.tolerance!r}")
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValidationError(f"seed must be >= 0, got {self.seed}")
        if self.format not in ("json", "csv"):
            raise ValidationError(f"format must be json or csv, got {self.format!r}")


@dataclass(frozen=True)
class ViolationReport:
    """One scenario's value against the classical bound."""

    scenario_id: str
    value: float
    classical_bound: float
    violated: bool
    witness: str | None = None

    def __post_init__(self):
        if self.violated != (self.value > self.classical_bound):
            raise ValidationError(
                f"report {self.scenario_id!r}: violated flag inconsistent with "
                f"value {self.value!r} vs bound {self.classical_bound!r}"
            )

    def to_record(self) -> dict:
        return {"schema": "v1", "scenario_id": self.scenario_id,
                "value": self.value, "classical_bound": self.classical_bound,
                "violated": self.violated, "witness": self.witness}


def _report(scenario_id: str, value: float, bound: float,
            witness: str | None = None) -> ViolationReport:
    return ViolationReport(scenario_id=scenario_id, value=float(value),
                           classical_bound=float(bound),
                           violated=float(value) > float(bound), witness=witness)


def _resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(_ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValidationError(f"{_ENV_SEED} must be an integer, got {env!r}") from exc
    return _DEFAULT_SEED


def _note(message: str):
    print(message, file=sys.stderr)


def _emit(lines: list[str], out: str | None) -> Path | None:
    """Print lines to stdout, or write them to ``out`` and return the path."""
    if out is None:
        for line in lines:
            print(line)
        return None
    path = Path(out)
    path.write_text("".join(line + "\n" for line in lines))
    return path


def _figure_path(out_path: Path) -> Path:
    return out_path.with_suffix(".png")


def _read_json_file(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path!r}: {exc}") from exc
    return loads(text)


# ============================================================================
# Subcommands
# ============================================================================

def cmd_bound(args, config: RunConfig) -> int:
    graph = graph_from_json(_read_json_file(args.graph))
    bound = noncontextual_bound(graph)
    count = count_assignments(graph)
    print(f"bound {bound}")
    print(f"assignments {count}")
    return 0


def cmd_kcbs(args, config: RunConfig) -> int:
    if args.multiplicity < 1:
        raise ValidationError(f"multiplicity must be >= 1, got {args.multiplicity}")
    seed = _resolve_seed(args.conjugate_seed)
    if seed < 0:
        raise ValidationError(f"seed must be >= 0, got {seed}")
    _note(f"seed {seed}")
    tol = config.tolerance

    reports = []

    scenario = kcbs_pentagon(tol=tol)
    reports.append(_report("pentagon-dim3", scenario.value(), KCBS_CLASSICAL_BOUND,
                           witness="pole state (0, 0, 1)"))

    units = matrix_units(args.multiplicity)
    block = typeiii_projections(units)
    block_sum = block.pentagon_sum()
    phi = units.block_basis(3)[:, 0]
    block_value = state_value(DensityState.pure(phi), block_sum)
    reports.append(_report(f"block-pentagon-m{args.multiplicity}", block_value,
                           KCBS_CLASSICAL_BOUND,
                           witness="first basis vector of diagonal block 3"))

    phi_perp = units.block_basis(1)[:, 0]
    omega = mixture_state(phi, phi_perp, args.epsilon, tol=tol)
    mixture_value = state_value(omega, block_sum)
    reports.append(_report(f"mixture-eps{args.epsilon:g}", mixture_value,
                           KCBS_CLASSICAL_BOUND,
                           witness=f"block-3 vector mixed with a block-1 vector "
                                   f"at epsilon {args.epsilon:g}"))

    rng = np.random.default_rng(seed)
    target = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    target = target / np.linalg.norm(target)
    _, pole = kcbs_vectors()
    unitary = alignment_unitary(target, pole, tol=tol)
    conjugated = conjugate_scenario(kcbs_pentagon(tol=tol), unitary, tol=tol)
    reports.append(_report(f"conjugated-seed{seed}", conjugated.value(),
                           KCBS_CLASSICAL_BOUND,
                           witness=f"Haar-like random target state (seed {seed})"))

    lines = [dumps_canonical(r.to_record()) for r in reports]
    out_path = _emit(lines, args.out)
    if out_path is not None:
        figure = plots.violation_figure(
            [(r.scenario_id, r.value, r.classical_bound) for r in reports],
            _figure_path(out_path),
        )
        _note(f"figure {figure}")
    return 0


def cmd_tracial(args, config: RunConfig) -> int:
    dims = list(args.dims)
    bad = sorted(set(d for d in dims if d < 2 or d > 8))
    if bad:
        raise ValidationError(f"dims must lie in 2..8, got {bad}")
    seed = config.seed
    _note(f"seed {seed}")

    reports = full_campaign(dims, config.trials, seed)

    by_check: dict[str, list] = {}
    for report in reports:
        by_check.setdefault(report.check, []).append(report)
    summary = {
        "schema": "v1",
        "dims": dims,
        "trials": config.trials,
        "seed": seed,
        "checks": len(reports),
        "max_value": {name: max(r.value for r in rs) for name, rs in sorted(by_check.items())},
        "min_slack": {name: min(r.slack for r in rs) for name, rs in sorted(by_check.items())},
        "violations": 0,
    }
    print(dumps_canonical(summary))

    if args.out is not None:
        out_path = Path(args.out)
        if config.format == "csv":
            reports_to_csv(reports, out_path)
        else:
            out_path.write_text(
                "".join(dumps_canonical(r.to_record()) + "\n" for r in reports)
            )
        figure = plots.campaign_figure(reports, _figure_path(out_path))
        _note(f"figure {figure}")
    return 0


def cmd_hvm(args, config: RunConfig) -> int:
    seed = config.seed
    _note(f"seed {seed}")

    if args.form == "pm":
        if args.graph is not None:
            raise ValidationError("the pm form is defined on cycles; use --cycle")
        n = args.cycle
        vectors, weights = pm_random_measure(n, seed)
        value = pm_model_value(n, vectors, weights)
        bound = pm_cycle_min(n)
        signs = np.array(vectors, dtype=float)
        means = weights @ signs
        summary = {
            "schema": "v1", "form": "pm", "n": n, "seed": seed,
            "total": value, "bound": float(bound), "direction": "min",
        }
        print(dumps_canonical(summary))
        if args.out is not None:
            out_path = Path(args.out)
            out_path.write_text(dumps_canonical(
                {"schema": "v1", "form": "pm", "n": n,
                 "weights": [float(w) for w in weights]}) + "\n")
            figure = plots.hvm_figure(((means + 1.0) / 2.0).tolist(), value,
                                      float(bound), _figure_path(out_path))
            _note(f"figure {figure}")
        return 0

    if args.graph is not None:
        graph = graph_from_json(_read_json_file(args.graph))
    else:
        graph = cycle_graph(args.cycle)
    model = hvm_random(graph, seed)
    prediction = hvm_predict(model)
    bound = noncontextual_bound(graph)
    summary = {
        "schema": "v1", "form": "01", "n": graph.n_vertices, "seed": seed,
        "n_assignments": len(model.lambdas),
        "vertex_probs": [float(p) for p in prediction.vertex_probs],
        "total": prediction.total, "bound": float(bound), "direction": "max",
    }
    print(dumps_canonical(summary))
    if args.out is not None:
        out_path = Path(args.out)
        out_path.write_text(dumps_canonical(model_to_json(model)) + "\n")
        figure = plots.hvm_figure(summary["vertex_probs"], prediction.total,
                                  float(bound), _figure_path(out_path))
        _note(f"figure {figure}")
    return 0


def cmd_scan(args, config: RunConfig) -> int:
    lo, hi = args.theta_range
    if not (0.0 < lo < hi < math.pi / 2.0):
        raise ValidationError(
            f"theta range must satisfy 0 < a < b < pi/2, got ({lo!r}, {hi!r})"
        )
    if args.steps < 2:
        raise ValidationError(f"steps must be >= 2, got {args.steps}")

    _, pole = kcbs_vectors()
    rows = []
    for theta in np.linspace(lo, hi, args.steps):
        family = umbrella_family(float(theta))
        overlap = float(np.vdot(family.vectors[0], family.vectors[1]).real)
        value = float(sum(abs(np.vdot(v, pole)) ** 2 for v in family.vectors))
        rows.append((float(theta), overlap, value))

    lines = ["theta,adjacent_overlap,pentagon_value"]
    lines.extend(f"{t!r},{o!r},{v!r}" for t, o, v in rows)
    out_path = _emit(lines, args.out)
    if out_path is not None:
        figure = plots.scan_figure(rows, _figure_path(out_path))
        _note(f"figure {figure}")
    return 0


def cmd_verify(args, config: RunConfig) -> int:
    obj = _read_json_file(args.scenario)
    try:
        scenario = scenario_from_json(obj, tol=config.tolerance)
    except ValidationError as exc:
        raise VerificationError(f"scenario file failed validation: {exc}") from exc

    checks = [verify_trace_bound(scenario)]
    checks.extend(verify_proof_chain(scenario))
    summary = {
        "schema": "v1",
        "dim": scenario.dim,
        "ranks": list(scenario.ranks),
        "tracial_value": tracial_value(scenario.pentagon_sum()),
        "state_value": None if scenario.state is None else scenario.value(),
        "checks": [c.to_record() for c in checks],
    }
    print(dumps_canonical(summary))
    return 0


# ============================================================================
# Parser and dispatch
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contextia",
        description="Pentagon-inequality toolkit: bounds, violations, "
                    "tracial verification.",
    )
    parser.add_argument("--tolerance", type=float, default=DEFAULT_TOL,
                        help="numerical tolerance for validation (default 1e-10)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="noncontextual bound of a graph file")
    p_bound.add_argument("graph", help="path to a graph JSON file")

    p_kcbs = sub.add_parser("kcbs", help="stream the explicit quantum violations")
    p_kcbs.add_argument("--epsilon", type=float, default=0.1,
                        help="mixture strength, in (0, sqrt(5)-2)")
    p_kcbs.add_argument("--multiplicity", type=int, default=2,
                        help="block multiplicity m for the 3m-dimensional analogue")
    p_kcbs.add_argument("--conjugate-seed", type=int, default=None,
                        help="seed for the random conjugation target")
    p_kcbs.add_argument("--out", default=None, help="write JSON lines here")

    p_tracial = sub.add_parser("tracial", help="run the tracial verification campaigns")
    p_tracial.add_argument("--dims", type=int, nargs="+", default=[3, 4, 5],
                           help="dimensions to fuzz, each in 2..8")
    p_tracial.add_argument("--trials", type=int, default=100,
                           help="trials per dimension")
    p_tracial.add_argument("--seed", type=int, default=None)
    p_tracial.add_argument("--out", default=None, help="write per-check reports here")
    p_tracial.add_argument("--format", choices=("json", "csv"), default="csv",
                           help="report file format (default csv)")

    p_hvm = sub.add_parser("hvm", help="build a seeded hidden-variable model")
    p_hvm.add_argument("--cycle", type=int, default=5,
                       help="cycle length when no graph file is given")
    p_hvm.add_argument("--graph", default=None, help="path to a graph JSON file")
    p_hvm.add_argument("--form", choices=("01", "pm"), default="01",
                       help="0/1 event form or the +-1 observable form")
    p_hvm.add_argument("--seed", type=int, default=None)
    p_hvm.add_argument("--out", default=None, help="write the model document here")

    p_scan = sub.add_parser("scan", help="sweep the umbrella family over theta")
    p_scan.add_argument("--theta-range", type=float, nargs=2, default=(0.5, 1.2),
                        metavar=("A", "B"), help="polar-angle range, 0 < A < B < pi/2")
    p_scan.add_argument("--steps", type=int, default=50)
    p_scan.add_argument("--out", default=None, help="write CSV rows here")

    p_verify = sub.add_parser("verify", help="check a scenario JSON file")
    p_verify.add_argument("scenario", help="path to a scenario JSON file")

    return parser


_COMMANDS = {
    "bound": cmd_bound,
    "kcbs": cmd_kcbs,
    "tracial": cmd_tracial,
    "hvm": cmd_hvm,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            tolerance=args.tolerance,
            seed=_resolve_seed(getattr(args, "seed", None)),
            trials=getattr(args, "trials", 1),
            output_path=getattr(args, "out", None),
            format=getattr(args, "format", "csv"),
        )
        return _COMMANDS[args.command](args, config)
    except VerificationError as exc:
        _note(f"FAIL: {exc}")
        if exc.report is not None:
            _note(f"replay: {dumps_canonical(exc.report.to_record())}")
        return 1
    except ConstructionError as exc:
        _note(f"FAIL: {exc}")
        return 1
    except CapacityError as exc:
        _note(f"capacity: {exc}")
        return 3
    except ValidationError as exc:
        _note(f"error: {exc}")
        return 2
    except OSError as exc:
        _note(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
