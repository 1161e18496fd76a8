"""JSON state files and report serialization.

A state file is a JSON object

    {
      "schema_version": 1,
      "state": {
        "n_a": <int>, "n_b": <int>,
        "gamma": [[...], ...],          row-major, 2(n_a+n_b) square
        "d": [...]                      optional, defaults to zeros
      },
      "metadata": { ... }               optional, round-tripped untouched
    }

Loading validates shape, symmetry and positive definiteness and reports the
offending field in the error message.  All report serializers emit plain
dicts of JSON types with matrices row-major, so ``json.dumps(..., sort_keys
=True)`` yields byte-identical output for identical inputs.
"""

from __future__ import annotations

import json

import numpy as np

from .distill import PipelineReport, NptWitness, SymmetrizationReport
from .states import (CorrelationMatrix, GaussianState, NptVerdict,
                     PhysicalityVerdict)
from .two_mode import RcWitnessResult, StdFormParams

SCHEMA_VERSION = 1


class StateFileError(ValueError):
    """Raised when a state file cannot be parsed or fails validation."""


def _require(cond: bool, field: str, message: str):
    if not cond:
        raise StateFileError(f"field '{field}': {message}")


def state_to_dict(state: GaussianState, metadata: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "state": {
            "n_a": state.n_a,
            "n_b": state.n_b,
            "gamma": state.gamma.entries.tolist(),
            "d": state.d.tolist(),
        },
    }
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def state_from_dict(doc: dict) -> tuple[GaussianState, dict]:
    """Parse and validate a state-file document; returns (state, metadata)."""
    _require(isinstance(doc, dict), "<root>", "expected a JSON object")
    version = doc.get("schema_version")
    _require(version == SCHEMA_VERSION, "schema_version",
             f"expected {SCHEMA_VERSION}, got {version!r}")
    _require("state" in doc, "state", "missing")
    state = doc["state"]
    _require(isinstance(state, dict), "state", "expected a JSON object")
    for key in ("n_a", "n_b"):
        _require(key in state, f"state.{key}", "missing")
        _require(isinstance(state[key], int) and not isinstance(state[key], bool),
                 f"state.{key}", f"expected an integer, got {state[key]!r}")
        _require(state[key] >= 0, f"state.{key}", "must be >= 0")
    n_a, n_b = state["n_a"], state["n_b"]
    _require(n_a + n_b >= 1, "state.n_a", "partition must contain at least one mode")
    dim = 2 * (n_a + n_b)
    _require("gamma" in state, "state.gamma", "missing")
    try:
        gamma = np.array(state["gamma"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"field 'state.gamma': not a numeric matrix ({exc})")
    _require(gamma.shape == (dim, dim), "state.gamma",
             f"expected shape {(dim, dim)}, got {gamma.shape}")
    d = state.get("d")
    if d is not None:
        try:
            d = np.array(d, dtype=float)
        except (TypeError, ValueError) as exc:
            raise StateFileError(f"field 'state.d': not a numeric vector ({exc})")
        _require(d.shape == (dim,), "state.d",
                 f"expected shape {(dim,)}, got {d.shape}")
    try:
        cm = CorrelationMatrix(entries=gamma, partition=(n_a, n_b))
        gs = GaussianState(n_a=n_a, n_b=n_b, gamma=cm, d=d)
    except ValueError as exc:
        raise StateFileError(f"field 'state.gamma': {exc}")
    metadata = doc.get("metadata") or {}
    _require(isinstance(metadata, dict), "metadata", "expected a JSON object")
    return gs, metadata


def load_state(path: str) -> tuple[GaussianState, dict]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path} is not valid JSON: line {exc.lineno}: {exc.msg}")
    return state_from_dict(doc)


def save_state(state: GaussianState, path: str, metadata: dict | None = None):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state, metadata), fh, sort_keys=True, indent=1)
        fh.write("\n")


def dumps(doc: dict) -> str:
    """Canonical JSON form used by the command line (deterministic bytes)."""
    return json.dumps(doc, sort_keys=True)


# ---------------------------------------------------------------------------
# report serializers

def physicality_to_dict(v: PhysicalityVerdict) -> dict:
    return {
        "physical": v.physical,
        "margin": v.margin,
        "min_symplectic_eigenvalue": v.min_symplectic_eigenvalue,
    }


def npt_to_dict(v: NptVerdict) -> dict:
    return {
        "npt": v.npt,
        "margin": v.margin,
        "raw_margin": v.raw_margin,
        "min_pt_symplectic_eigenvalue": v.min_pt_symplectic_eigenvalue,
    }


def params_to_dict(p: StdFormParams) -> dict:
    return {"n_a": p.n_a, "n_b": p.n_b, "k_x": p.k_x, "k_p": p.k_p}


def witness_to_dict(w: NptWitness) -> dict:
    return {
        "z_real": np.asarray(w.z).real.tolist(),
        "z_imag": np.asarray(w.z).imag.tolist(),
        "margin": w.margin,
        "eps": w.eps,
        "skew_a": w.skew_a,
        "skew_b": w.skew_b,
        "retries": w.retries,
    }


def rc_to_dict(rc: RcWitnessResult) -> dict:
    return {"r": rc.r, "value": rc.value, "asymptotic_value": rc.asymptotic_value}


def symmetrization_to_dict(rep: SymmetrizationReport) -> dict:
    return {
        "theta": rep.theta,
        "swapped_sides": rep.swapped_sides,
        "gamma_out": rep.gamma_out.entries.tolist(),
        "insep_residual_in": rep.insep_residual_in,
        "insep_residual_out": rep.insep_residual_out,
        "scale_factor": rep.scale_factor,
    }


def pipeline_report_to_dict(rep: PipelineReport) -> dict:
    """Serialize a pipeline report with the fixed stage names
    npt_check, witness, concentrate, standard_form, symmetrize, rc_witness;
    stages that did not run are omitted."""
    stages: dict = {"npt_check": npt_to_dict(rep.npt)}
    if rep.witness is not None:
        stages["witness"] = witness_to_dict(rep.witness)
    if rep.gamma_1x1 is not None:
        stages["concentrate"] = {
            "s_a": rep.s_a.entries.tolist(),
            "s_b": rep.s_b.entries.tolist(),
            "gamma_1x1": rep.gamma_1x1.entries.tolist(),
        }
    if rep.standard_form is not None:
        stages["standard_form"] = {
            "s_a": rep.standard_form.s_a.entries.tolist(),
            "s_b": rep.standard_form.s_b.entries.tolist(),
            "gamma_std": rep.standard_form.gamma_std.entries.tolist(),
            "params": params_to_dict(rep.standard_form.params),
        }
    if rep.symmetrization is not None:
        stages["symmetrize"] = symmetrization_to_dict(rep.symmetrization)
    if rep.rc is not None:
        stages["rc_witness"] = {
            "final_params": params_to_dict(rep.final_params),
            **rc_to_dict(rep.rc),
            "sweep": [rc_to_dict(r) for r in rep.rc_sweep],
        }
    return {
        "input_partition": list(rep.input_partition),
        "verdict": rep.verdict,
        "witness_attempts": rep.witness_attempts,
        "stages": stages,
    }
