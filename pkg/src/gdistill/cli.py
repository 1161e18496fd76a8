"""Command-line front end.

Subcommands: validate, pipeline, random, fuzz, standard-form, symmetrize,
concentrate.  State files are JSON (see statefile module).  All randomized
commands are deterministic for fixed flags: identical invocations produce
identical bytes on stdout.  The environment variable GDISTILL_TOL overrides
the default verdict tolerance.

Exit codes:
    0  success (validate: physical; pipeline: DISTILLABLE)
    1  file/schema/flag/config parse error
    2  validate: unphysical state; fuzz: invariant violations found
    3  pipeline: NOT_DISTILLABLE
    4  pipeline: INCONCLUSIVE_BOUNDARY
    5  pipeline or single-stage command: stage failure (stage named on stderr)
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .distill import (VERDICT_BOUNDARY, VERDICT_DISTILLABLE,
                      VERDICT_NOT_DISTILLABLE, MAX_PIPELINE_ATTEMPTS,
                      PipelineStageError, concentrate, distill_pipeline,
                      find_npt_witness, symmetrize)
from .errors import ConcentrationError, DistillError
from .fuzz import FuzzConfig, run_fuzz
from .random_states import KINDS, random_state
from .statefile import (StateFileError, dumps, load_state, npt_to_dict,
                        params_to_dict, physicality_to_dict,
                        pipeline_report_to_dict, state_to_dict,
                        symmetrization_to_dict, witness_to_dict)
from .states import TOL_VERDICT, is_npt, validate_physical
from .two_mode import standard_form_params, standard_form_transform

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_UNPHYSICAL = 2
EXIT_VIOLATIONS = 2
EXIT_NOT_DISTILLABLE = 3
EXIT_BOUNDARY = 4
EXIT_STAGE_FAILURE = 5

_VERDICT_EXIT = {
    VERDICT_DISTILLABLE: EXIT_OK,
    VERDICT_NOT_DISTILLABLE: EXIT_NOT_DISTILLABLE,
    VERDICT_BOUNDARY: EXIT_BOUNDARY,
}


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def cmd_validate(args, tol: float) -> int:
    state, _ = load_state(args.path)
    verdict = validate_physical(state.gamma, tol=tol)
    doc = physicality_to_dict(verdict)
    if verdict.physical:
        doc.update(npt_to_dict(is_npt(state.gamma, tol=tol)))
    else:
        doc["npt"] = None
    print(dumps(doc))
    return EXIT_OK if verdict.physical else EXIT_UNPHYSICAL


def cmd_pipeline(args, tol: float) -> int:
    state, _ = load_state(args.path)
    try:
        report = distill_pipeline(state.gamma, r_max=args.r_max,
                                  seed=args.seed, tol=tol)
    except PipelineStageError as exc:
        return _fail(f"stage failure: {exc}", EXIT_STAGE_FAILURE)
    if args.json:
        print(dumps(pipeline_report_to_dict(report)))
    else:
        print(f"verdict: {report.verdict}")
        print(f"npt margin: {report.npt.raw_margin:.6e}")
        if report.verdict == VERDICT_DISTILLABLE:
            p = report.final_params
            print(f"witness attempts: {report.witness_attempts}")
            print(f"final symmetric params: n={p.n_a:.6f} "
                  f"k_x={p.k_x:.6f} k_p={p.k_p:.6f}")
            print(f"rc value at r={report.rc.r:g}: {report.rc.value:.6e} "
                  f"(asymptotic {report.rc.asymptotic_value:.6e})")
    return _VERDICT_EXIT[report.verdict]


def cmd_random(args, tol: float) -> int:
    state, meta = random_state(args.kind, args.modes_a, args.modes_b, args.seed)
    print(dumps(state_to_dict(state, metadata=meta)))
    return EXIT_OK


def cmd_fuzz(args, tol: float) -> int:
    if args.config is None:
        config = FuzzConfig()
    else:
        try:
            with open(args.config) as fh:
                config = FuzzConfig.from_dict(json.load(fh))
        except OSError as exc:
            return _fail(f"cannot read {args.config}: {exc}", EXIT_PARSE)
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            return _fail(f"bad fuzz config: {exc}", EXIT_PARSE)
    summary = run_fuzz(config)
    elapsed = summary.pop("elapsed_seconds")
    print(dumps(summary))
    print(f"fuzz: {config.trials} trials per invariant, "
          f"{summary['total_violations']} violations, {elapsed:.1f}s",
          file=sys.stderr)
    return EXIT_OK if summary["total_violations"] == 0 else EXIT_VIOLATIONS


def cmd_standard_form(args, tol: float) -> int:
    state, _ = load_state(args.path)
    if state.gamma.partition != (1, 1):
        return _fail(f"standard-form needs a 1x1 state, got partition "
                     f"{state.gamma.partition}", EXIT_STAGE_FAILURE)
    s_a, s_b, gamma_std = standard_form_transform(state.gamma)
    params = standard_form_params(gamma_std)
    if args.json:
        print(dumps({
            "params": params_to_dict(params),
            "s_a": s_a.entries.tolist(),
            "s_b": s_b.entries.tolist(),
            "gamma_std": gamma_std.entries.tolist(),
        }))
    else:
        print(f"n_a={params.n_a:.9f} n_b={params.n_b:.9f} "
              f"k_x={params.k_x:.9f} k_p={params.k_p:.9f}")
    return EXIT_OK


def cmd_symmetrize(args, tol: float) -> int:
    state, _ = load_state(args.path)
    if state.gamma.partition != (1, 1):
        return _fail(f"symmetrize needs a 1x1 state, got partition "
                     f"{state.gamma.partition}", EXIT_STAGE_FAILURE)
    report = symmetrize(state.gamma, tol=tol)
    if args.json:
        print(dumps(symmetrization_to_dict(report)))
    else:
        p = standard_form_params(report.gamma_out)
        print(f"theta={report.theta:.9f} scale_factor={report.scale_factor:.9f} "
              f"swapped={report.swapped_sides}")
        print(f"output params: n={p.n_a:.9f} k_x={p.k_x:.9f} k_p={p.k_p:.9f}")
    return EXIT_OK


def cmd_concentrate(args, tol: float) -> int:
    state, _ = load_state(args.path)
    witness = transforms = last = None
    for attempt in range(MAX_PIPELINE_ATTEMPTS):
        witness = find_npt_witness(state.gamma, tol=tol,
                                   seed=args.seed * MAX_PIPELINE_ATTEMPTS + attempt)
        try:
            transforms = concentrate(state.gamma, witness, tol=tol)
            break
        except ConcentrationError as exc:
            last = exc
    if transforms is None:
        raise last
    s_a, s_b, gamma_red = transforms
    if args.json:
        print(dumps({
            "witness": witness_to_dict(witness),
            "s_a": s_a.entries.tolist(),
            "s_b": s_b.entries.tolist(),
            "gamma_1x1": gamma_red.entries.tolist(),
            "npt_margin_1x1": is_npt(gamma_red, tol=tol).raw_margin,
        }))
    else:
        red = is_npt(gamma_red, tol=tol)
        print(f"reduced 1x1 npt margin: {red.raw_margin:.6e} "
              f"(witness retries {witness.retries})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gdistill",
        description="Distillability analysis of bipartite Gaussian states "
                    "at the correlation-matrix level.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a state file for physicality and NPT")
    p.add_argument("path", help="state file (JSON)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pipeline", help="full distillability pipeline")
    p.add_argument("path", help="state file (JSON)")
    p.add_argument("--json", action="store_true", help="print the full report as JSON")
    p.add_argument("--r-max", type=int, default=8, help="probe squeezing sweep limit")
    p.add_argument("--seed", type=int, default=0, help="witness retry seed")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("random", help="generate a random state file on stdout")
    p.add_argument("--modes-a", type=int, default=1)
    p.add_argument("--modes-b", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=KINDS, default="entangled")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("fuzz", help="run the invariant campaign")
    p.add_argument("config", nargs="?", default=None,
                   help="fuzz config JSON (defaults apply when omitted)")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("standard-form", help="standard form of a 1x1 state")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_standard_form)

    p = sub.add_parser("symmetrize", help="symmetrize a 1x1 NPT state")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("concentrate", help="concentrate an NPT state to one mode pair")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_concentrate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    tol = TOL_VERDICT
    raw = os.environ.get("GDISTILL_TOL")
    if raw is not None:
        try:
            tol = float(raw)
            if not tol > 0:
                raise ValueError
        except ValueError:
            return _fail(f"GDISTILL_TOL must be a positive number, got {raw!r}",
                         EXIT_PARSE)
    try:
        return args.func(args, tol)
    except StateFileError as exc:
        return _fail(str(exc), EXIT_PARSE)
    except DistillError as exc:
        return _fail(f"stage failure: {exc}", EXIT_STAGE_FAILURE)


if __name__ == "__main__":
    sys.exit(main())
