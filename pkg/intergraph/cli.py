"""
Command line front end
======================

Ties the field, unitary, group and graph modules into reproducible
verification runs::

    intergraph witness --q 3 --mode e1
    intergraph graph --preset a5 --full-checks --json a5.json
    intergraph verify --check bm
    intergraph all

A human readable table is printed; ``--json`` writes the report, which is
the contract. Exit codes: 0 pass, 1 check failure, 2 usage or configuration
error, 3 cap exceeded under ``--strict``.
"""
# Author: Intergraph developers
#
# License: BSD 3-Clause

import argparse
import logging
import sys
import time
import warnings
from dataclasses import dataclass
from typing import List, Optional

from . import _igraph, _permgrp
from ._arith import bm_check, m23_check, u3_ratio_check, u5_ratio_check
from ._unitary3 import verify_proposition
from ._utils import _DEFAULT_RATIO_BOUND, _logger
from .base import (
    CapExceededError,
    CheckResult,
    ConstantsIntegrityError,
    HypothesisError,
    Report,
    Verdict,
    check,
)
from .datasets import (
    list_presets,
    load_atlas_constants,
    load_preset,
    load_report_schema,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3

_COMMANDS = ("witness", "graph", "verify", "all")
_VERIFY_CHECKS = ("u3", "u5", "m23", "bm", "all")
_DOUBLE_COUNT_ORDER_CAP = 1000
_JOINS_ORACLE_ORDER_CAP = 200
_POINT_STABILIZER_PRESETS = {"psl2_7": 7, "psl2_11": 11, "psl2_19": 19}
_EXPECTED_DIAMETERS = {"u3_3": 3}
_CAP_REASON = "cap"


@dataclass
class RunConfig:
    """Validated configuration of one run.

    Attributes
    ----------
    command : {'witness', 'graph', 'verify', 'all'}
    q : int or None
        Field parameter of the witness run.
    q_max : int
        Upper end of the prime power scan of the ratio suites.
    mode : {'e1', 'all'}
    preset : str or None
    full_checks, opt_in_large, strict, timings : bool
    check : {'u3', 'u5', 'm23', 'bm', 'all'}
    workers : int or None
        Passed to joblib as `n_jobs`.
    json_path : str or None
    cap : int or None
        Lattice cap, the ``INTERGRAPH_CAP`` environment variable or 10,000
        when None.
    """

    command: str
    q: Optional[int] = None
    q_max: int = _DEFAULT_RATIO_BOUND
    mode: str = "e1"
    preset: Optional[str] = None
    full_checks: bool = False
    opt_in_large: bool = False
    check: str = "all"
    workers: Optional[int] = None
    json_path: Optional[str] = None
    strict: bool = False
    timings: bool = False
    cap: Optional[int] = None

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise ValueError(f"Unknown command '{self.command}'")
        if self.cap is not None and self.cap <= 0:
            raise ValueError(f"--cap should be positive, got {self.cap}")
        if self.q_max < 3:
            raise ValueError(f"--q-max should be at least 3, got {self.q_max}")
        if self.check not in _VERIFY_CHECKS:
            raise ValueError(f"Unknown check '{self.check}'")
        if self.preset is not None and self.preset not in list_presets():
            raise ValueError(
                f"Unknown preset '{self.preset}', expected one of {list_presets()}"
            )

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            q=getattr(args, "q", None),
            q_max=getattr(args, "q_max", _DEFAULT_RATIO_BOUND),
            mode=getattr(args, "mode", "e1"),
            preset=getattr(args, "preset", None),
            full_checks=getattr(args, "full_checks", False),
            opt_in_large=getattr(args, "opt_in_large", False),
            check=getattr(args, "check", "all"),
            workers=args.workers,
            json_path=args.json,
            strict=args.strict,
            timings=args.timings,
            cap=getattr(args, "cap", None),
        )


def _cap_skip(name: str, err: CapExceededError) -> CheckResult:
    return CheckResult(
        name,
        Verdict.SKIPPED,
        values={"cap": err.cap, "reached": err.reached},
        reason=f"{_CAP_REASON}: {err}",
    )


def hit_cap(report: Report) -> bool:
    """Whether some check of the report was skipped because of a cap."""
    return any(
        c.verdict == Verdict.SKIPPED and (c.reason or "").startswith(_CAP_REASON)
        for c in report.checks
    )


def run_witness(config: RunConfig) -> Report:
    """Exhaustive check of the stabilizer witness for one q.

    Raises
    ------
    HypothesisError
        If q <= 2.
    """
    try:
        return verify_proposition(config.q, config.mode, n_jobs=config.workers)
    except CapExceededError as err:
        report = Report("witness", config={"q": config.q, "mode": config.mode})
        report.add(_cap_skip("proposition", err))
        return report


def _double_count(G, lattice) -> CheckResult:
    reps = [S for S in lattice.class_representatives() if not S.is_trivial()]
    class_of = lattice.class_of()
    pairs, failures = 0, []
    for H in reps:
        seen = set()
        for M in lattice:
            k = int(class_of[lattice.position(M)])
            if k in seen or not H <= M:
                continue
            seen.add(k)
            pairs += 1
            sub = _permgrp.double_count_check(G, H, M)["double_count"]
            if not sub.passed:
                failures.append({"H": H.order, "M": M.order, **sub.values})
    return check(
        "double_count",
        not failures,
        counts={"class_pairs": pairs},
        failures=failures,
    )


def _sample_paths(g, d) -> CheckResult:
    if d.pair is None or not d.connected:
        return CheckResult(
            "shortest_paths", Verdict.SKIPPED, reason="graph is disconnected"
        )
    u, v = d.pair
    targets = sorted({(u, v), (0, g.n_vertices - 1), (u, g.n_vertices - 1)})
    witnesses, failures = [], []
    for a, b in targets:
        path = _igraph.shortest_path(g, a, b)
        ok = path.validate(g) and path.length == _igraph.distance(g, a, b)
        (witnesses if ok else failures).append(path.to_dict(g))
    return check(
        "shortest_paths",
        not failures,
        counts={"paths": len(targets)},
        values={"diameter_path_length": _igraph.shortest_path(g, u, v).length},
        witnesses=witnesses,
        failures=failures,
    )


def run_graph(config: RunConfig) -> Report:
    """Lattice, intersection graph and diameter checks of a preset group."""
    report = Report(
        "graph",
        config={
            "preset": config.preset,
            "full_checks": config.full_checks,
        },
    )
    start = time.perf_counter()
    try:
        preset = load_preset(config.preset, allow_large=config.opt_in_large)
        G = preset.group
        lattice = _permgrp.all_subgroups(G, cap=config.cap)
    except CapExceededError as err:
        _logger.warning(f"Cap exceeded for preset '{config.preset}': {err}")
        report.add(_cap_skip("lattice", err))
        return report
    report.timings["lattice"] = time.perf_counter() - start

    report.config["group"] = preset.name
    report.config["order"] = G.order
    g = _igraph.build(lattice)
    start = time.perf_counter()
    d = _igraph.diameter(g, n_jobs=config.workers)
    report.timings["diameter"] = time.perf_counter() - start
    report.add(
        check(
            "lattice",
            True,
            counts={
                "subgroups": len(lattice),
                "classes": len(lattice.conjugacy_classes()),
                "vertices": g.n_vertices,
                "edges": g.n_edges,
            },
            values={
                "order_counts": lattice.order_counts(),
                "maximal_orders": sorted(M.order for M in lattice.maximals()),
                "diameter": d.value,
                "components": d.n_components,
                "pair": [g.describe_vertex(w) for w in d.pair] if d.pair else [],
            },
        )
    )
    report.extend(
        _igraph.check_theorem_band(g, preset.simple, family=preset.family, d=d),
        prefix="band",
    )
    report.extend(_igraph.diameter_oracle_check(g, d), prefix="oracle")
    report.extend(
        _igraph.maximal_induced(g, lattice.maximals(), simple=preset.simple),
        prefix="maximal_induced",
    )
    if preset.key in _EXPECTED_DIAMETERS:
        expected = _EXPECTED_DIAMETERS[preset.key]
        report.add(
            check(
                "known_diameter",
                d.value == expected,
                values={"diameter": d.value, "expected": expected},
            )
        )

    if not config.full_checks:
        return report
    start = time.perf_counter()
    if G.order <= _JOINS_ORACLE_ORDER_CAP:
        joins = _permgrp.subgroups_by_joins(G)
        report.add(
            check(
                "lattice_matches_joins",
                {S.key for S in joins} == {S.key for S in lattice},
                counts={"cyclic_extension": len(lattice), "joins": len(joins)},
            )
        )
    else:
        report.add(
            CheckResult(
                "lattice_matches_joins",
                Verdict.SKIPPED,
                reason=f"group order above {_JOINS_ORACLE_ORDER_CAP}",
            )
        )
    if preset.simple:
        report.extend(_igraph.dihedral_connector_check(g), prefix="connectors")
    report.add(_sample_paths(g, d))
    if G.order <= _DOUBLE_COUNT_ORDER_CAP:
        report.add(_double_count(G, lattice))
    else:
        report.add(
            CheckResult(
                "double_count",
                Verdict.SKIPPED,
                reason=f"group order above {_DOUBLE_COUNT_ORDER_CAP}",
            )
        )
    if preset.key in _POINT_STABILIZER_PRESETS:
        q = _POINT_STABILIZER_PRESETS[preset.key]
        report.extend(_igraph.l2q_pointstab_check(q, group=G), prefix="l2q")
    report.timings["full_checks"] = time.perf_counter() - start
    return report


def run_verify(config: RunConfig) -> Report:
    """Exact inequality suites on group orders.

    Raises
    ------
    ConstantsIntegrityError
        If the transcribed constants fail their sanity checks, before any
        check runs.
    """
    constants = load_atlas_constants()
    selected = _VERIFY_CHECKS[:-1] if config.check == "all" else (config.check,)
    report = Report("verify", config={"check": config.check, "q_max": config.q_max})
    for name in selected:
        if name == "u3":
            sub = u3_ratio_check(q_hi=config.q_max)
        elif name == "u5":
            sub = u5_ratio_check(q_hi=config.q_max)
        elif name == "m23":
            sub = m23_check(constants)
        else:
            sub = bm_check(constants)
        report.extend(sub, prefix=name)
    return report


def run_all(config: RunConfig) -> Report:
    """Witness at q = 3, the A5 graph with full checks and every suite."""
    report = Report("all", config={"q_max": config.q_max})
    witness = RunConfig("witness", q=3, mode="e1", workers=config.workers)
    graph = RunConfig(
        "graph", preset="a5", full_checks=True, workers=config.workers, cap=config.cap
    )
    verify = RunConfig("verify", check="all", q_max=config.q_max)
    report.extend(run_witness(witness), prefix="witness")
    report.extend(run_graph(graph), prefix="graph")
    report.extend(run_verify(verify), prefix="verify")
    return report


_RUNNERS = {
    "witness": run_witness,
    "graph": run_graph,
    "verify": run_verify,
    "all": run_all,
}


def validate_report(obj: dict) -> bool:
    """Validate a serialized report against the shipped schema.

    Returns False without validating when `jsonschema` is not installed.

    Raises
    ------
    jsonschema.ValidationError
        If the report does not match the schema.
    """
    try:
        import jsonschema
    except ImportError:
        warnings.warn("jsonschema is not installed, report left unvalidated")
        return False
    jsonschema.validate(instance=obj, schema=load_report_schema())
    return True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Number of joblib workers, -1 for all cores (default: 1).",
    )
    common.add_argument("--json", metavar="PATH", help="Write the JSON report.")
    common.add_argument(
        "--strict",
        action="store_true",
        help="Exit with code 3 when a cap was exceeded.",
    )
    common.add_argument(
        "--timings",
        action="store_true",
        help="Include wall-clock timings in the JSON report.",
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="More logging."
    )

    parser = argparse.ArgumentParser(
        prog="intergraph",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "witness", parents=[common], help="Check the stabilizer witness."
    )
    p.add_argument("--q", type=int, required=True, help="Prime power q > 2.")
    p.add_argument("--mode", choices=("e1", "all"), default="e1")

    p = sub.add_parser(
        "graph", parents=[common], help="Intersection graph of a preset group."
    )
    p.add_argument("--preset", required=True, metavar="NAME")
    p.add_argument("--full-checks", action="store_true")
    p.add_argument(
        "--opt-in-large",
        action="store_true",
        help="Allow the large presets (psl2_19, u3_3).",
    )
    p.add_argument("--cap", type=int, default=None, help="Lattice cap.")

    p = sub.add_parser("verify", parents=[common], help="Exact order inequalities.")
    p.add_argument("--check", choices=_VERIFY_CHECKS, default="all")
    p.add_argument("--q-max", type=int, default=_DEFAULT_RATIO_BOUND)

    p = sub.add_parser("all", parents=[common], help="Run the default suite.")
    p.add_argument("--q-max", type=int, default=_DEFAULT_RATIO_BOUND)
    p.add_argument("--cap", type=int, default=None, help="Lattice cap.")
    return parser


def _setup_logging(verbose: int):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    _logger.setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        report = _RUNNERS[config.command](config)
    except HypothesisError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ConstantsIntegrityError as err:
        print(f"error: constants integrity check failed: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE

    print(report.summary_table())
    print(f"\n{report.name}: {'PASS' if report.passed else 'FAIL'}")
    if config.json_path is not None:
        payload = report.to_dict(include_timings=config.timings)
        validate_report(payload)
        with open(config.json_path, "w") as f:
            f.write(report.to_json(include_timings=config.timings))
            f.write("\n")
    if not report.passed:
        return EXIT_FAIL
    if config.strict and hit_cap(report):
        return EXIT_CAP
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
