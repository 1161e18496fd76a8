"""Randomized invariant campaign over the whole library.

Every structural property the modules promise is registered here as a named
invariant and exercised over a stream of seeded random states.  Trial seeds
are derived by counter from the master seed (SeedSequence entropy
``(seed, invariant_index, trial)``), so results are order-independent and
adding invariants to the end of the registry does not disturb existing
streams.

Violations are collected, never raised: an unexpected exception inside an
invariant is itself recorded as a violation with the reproduction seed, so a
misconfigured tolerance degrades into reported failures instead of a crash.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .distill import (BOUNDARY_BAND, MAX_PIPELINE_ATTEMPTS,
                      MAX_WITNESS_RETRIES, SKEW_FLOOR_FACTOR,
                      SUPPORT_LEAKAGE_LIMIT, VERDICT_BOUNDARY,
                      VERDICT_DISTILLABLE, VERDICT_NOT_DISTILLABLE,
                      concentrate, distill_pipeline, find_npt_witness,
                      symmetrize)
from .errors import ConcentrationError
from .random_states import (local_scramble, random_asymmetric_npt_1x1,
                            random_npt_cm, random_physical_cm, random_state,
                            random_symmetric_two_mode, random_unphysical_pd)
from .states import (CorrelationMatrix, apply_symplectic,
                     condition_on_x_measurement, direct_sum_states, is_npt,
                     is_pure, partial_transpose, pt_form, reduce_to_modes,
                     vacuum, validate_physical, wigner_cm)
from .symplectic import (beam_splitter, direct_sum, embed_pair,
                         extend_to_symplectic_basis, form_matrix,
                         is_symplectic, random_symplectic,
                         symplectic_eigenvalues)
from .two_mode import (check_inseparable, check_symmetric_inseparable,
                       rc_value, standard_form_params, standard_form_transform,
                       wigner_params)

DEFAULT_TOLERANCES = {
    "spectrum_rel": 1e-8,      # symplectic spectrum under congruence
    "params_rel": 1e-8,        # standard-form parameters under local scrambles
    "involution": 1e-10,       # double Wigner-form companion
    "purity": 1e-8,
    "pairing": 1e-9,           # basis extension / symplectic group checks
    "verdict_band": 1e-7,      # |NPT margin| below this: verdicts not compared
    "residual_floor": 1e-9,    # |inequality residual| below this: not compared
    "oracle": 1e-10,           # closed-form blocks vs measurement oracle
    "symmetry": 1e-8,          # |n_a - n_b| after symmetrization
    "scaling_rel": 1e-8,       # residual scaling law
    "leakage": SUPPORT_LEAKAGE_LIMIT,
    "form_identity": 1e-10,    # witness quadratic form under restriction
    "sign_floor": 1e-3,        # |asymptotic| needed before comparing signs
}

_CONFIG_FIELDS = {"seed", "trials", "max_modes_a", "max_modes_b",
                  "npt_fraction_target", "tolerances"}


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    trials: int = 1000
    max_modes_a: int = 4
    max_modes_b: int = 4
    npt_fraction_target: float = 0.5
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.max_modes_a < 1 or self.max_modes_b < 1:
            raise ValueError("max_modes_a and max_modes_b must be positive")
        if not 0.0 <= self.npt_fraction_target <= 1.0:
            raise ValueError(
                f"npt_fraction_target must lie in [0, 1], got {self.npt_fraction_target}")
        merged = dict(DEFAULT_TOLERANCES)
        for key, value in self.tolerances.items():
            if key not in DEFAULT_TOLERANCES:
                raise ValueError(f"unknown tolerance {key!r}; known: "
                                 f"{sorted(DEFAULT_TOLERANCES)}")
            if not (isinstance(value, (int, float)) and value > 0):
                raise ValueError(f"tolerance {key!r} must be a positive number")
            merged[key] = float(value)
        object.__setattr__(self, "tolerances", merged)

    @classmethod
    def from_dict(cls, doc: dict) -> "FuzzConfig":
        if not isinstance(doc, dict):
            raise ValueError("fuzz config must be a JSON object")
        unknown = set(doc) - _CONFIG_FIELDS
        if unknown:
            raise ValueError(f"unknown fuzz config fields: {sorted(unknown)}")
        for key in ("seed", "trials", "max_modes_a", "max_modes_b"):
            if key in doc and not (isinstance(doc[key], int)
                                   and not isinstance(doc[key], bool)):
                raise ValueError(f"config field {key!r} must be an integer")
        if "tolerances" in doc and not isinstance(doc["tolerances"], dict):
            raise ValueError("config field 'tolerances' must be an object")
        return cls(**doc)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "max_modes_a": self.max_modes_a,
            "max_modes_b": self.max_modes_b,
            "npt_fraction_target": self.npt_fraction_target,
            "tolerances": dict(self.tolerances),
        }


class Violation(Exception):
    """An invariant failed; optionally carries the offending state."""

    def __init__(self, message: str, state: CorrelationMatrix | None = None):
        super().__init__(message)
        self.state = state


class _Trial:
    """Per-trial randomness and drawing helpers for one invariant."""

    def __init__(self, config: FuzzConfig, index: int, trial: int):
        self.config = config
        self.entropy = (config.seed, index, trial)
        self.rng = np.random.default_rng(np.random.SeedSequence(entropy=self.entropy))
        self.tol = config.tolerances

    def seed(self, salt: int = 0) -> int:
        ss = np.random.SeedSequence(entropy=self.entropy + (salt,))
        return int(ss.generate_state(1)[0])

    def partition(self) -> tuple[int, int]:
        return (int(self.rng.integers(1, self.config.max_modes_a + 1)),
                int(self.rng.integers(1, self.config.max_modes_b + 1)))

    def kind(self) -> str:
        u = self.rng.random()
        target = self.config.npt_fraction_target
        if u < target:
            return "entangled"
        return "thermal" if (u - target) < 0.75 * (1.0 - target) else "boundary"

    def state(self, n_a: int | None = None, n_b: int | None = None):
        if n_a is None:
            n_a, n_b = self.partition()
        gs, meta = random_state(self.kind(), n_a, n_b, self.seed(101))
        return gs.gamma, meta


def _maxdiff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _scale(g: CorrelationMatrix) -> float:
    return max(1.0, float(np.max(np.abs(g.entries))))


# ---------------------------------------------------------------------------
# invariants (each: one seeded trial, raise Violation on failure)

def form_matrix_structure(t: _Trial):
    """J is exactly antisymmetric, squares to -identity, has 2n entries +-1."""
    n = int(t.rng.integers(1, 9))
    J = form_matrix(n)
    if not np.array_equal(J.T, -J):
        raise Violation(f"form matrix for n={n} is not exactly antisymmetric")
    if not np.array_equal(J @ J, -np.eye(2 * n)):
        raise Violation(f"form matrix for n={n} does not square to -identity")
    nz = J[J != 0.0]
    if nz.size != 2 * n or not np.all(np.abs(nz) == 1.0):
        raise Violation(f"form matrix for n={n} has wrong sparsity pattern")


def symplectic_group_closure(t: _Trial):
    """Inverse, transpose and products of symplectics stay symplectic."""
    n = int(t.rng.integers(1, 5))
    tol = t.tol["pairing"]
    s1 = random_symplectic(n, t.seed(1)).entries
    s2 = random_symplectic(n, t.seed(2)).entries
    for label, cand in (("inverse", np.linalg.inv(s1)), ("transpose", s1.T),
                        ("product", s1 @ s2)):
        if not is_symplectic(cand, tol=tol * 10):
            raise Violation(f"{label} of a symplectic matrix failed the form test")


def symplectic_spectrum_congruence_invariance(t: _Trial):
    """S^T gamma S has the symplectic spectrum of gamma (and all values >= 1)."""
    n_a, n_b = t.partition()
    g = random_physical_cm(n_a, n_b, t.seed(1))
    S = random_symplectic(n_a + n_b, t.seed(2)).entries
    before = symplectic_eigenvalues(g.entries)
    after = symplectic_eigenvalues(S.T @ g.entries @ S)
    rel = float(np.max(np.abs(after - before) / before))
    if rel > t.tol["spectrum_rel"]:
        raise Violation(f"symplectic spectrum moved by {rel:.3e} under congruence",
                        state=g)
    if before[0] < 1.0 - 1e-9:
        raise Violation(
            f"physical sample has symplectic eigenvalue {before[0]!r} < 1", state=g)


def basis_extension_pairing(t: _Trial):
    """Completed bases satisfy every pairing relation (S^T J S = J)."""
    n = int(t.rng.integers(1, 5))
    J = form_matrix(n)
    f1 = t.rng.normal(size=2 * n)
    f1 /= np.linalg.norm(f1)
    for _ in range(8):
        v = t.rng.normal(size=2 * n)
        s = float(f1 @ J @ v)
        if abs(s) > 0.1:  # keeps |f2| moderate so the pairing check stays tight
            break
    else:
        return  # absurdly unlucky draws; nothing to check
    f2 = -v / s  # f1^T J f2 = -1
    basis = extend_to_symplectic_basis(f1, f2)
    S = basis.columns
    resid = _maxdiff(S.T @ J @ S, J)
    if resid > t.tol["pairing"]:
        raise Violation(f"extended basis violates pairing relations by {resid:.3e}")
    if _maxdiff(S[:, 0], f1) > 0 or _maxdiff(S[:, 1], f2) > 0:
        raise Violation("extended basis does not start with the given pair")


def physicality_criteria_agree(t: _Trial):
    """Margin test and symplectic-eigenvalue test give the same verdict."""
    n_a, n_b = t.partition()
    if t.rng.random() < 0.5:
        g = random_physical_cm(n_a, n_b, t.seed(1))
    else:
        g = random_unphysical_pd(n_a, n_b, t.seed(2))
    v = validate_physical(g)
    if abs(v.min_symplectic_eigenvalue - 1.0) < t.tol["verdict_band"]:
        return  # too close to the boundary for the two tolerances to align
    by_margin = v.margin >= -1e-9
    by_spectrum = v.min_symplectic_eigenvalue >= 1.0 - 1e-9
    if by_margin != by_spectrum or v.physical != by_margin:
        raise Violation(
            f"physicality criteria disagree: margin {v.margin:.3e}, "
            f"min symplectic eigenvalue {v.min_symplectic_eigenvalue!r}", state=g)


def partial_transpose_involution(t: _Trial):
    """Applying the partial transpose twice restores gamma bitwise."""
    g, _ = t.state()
    back = partial_transpose(partial_transpose(g))
    if not np.array_equal(back.entries, g.entries):
        raise Violation("partial transpose is not an exact involution", state=g)
    if partial_transpose(g).partition != g.partition:
        raise Violation("partial transpose changed the partition", state=g)


def wigner_involution_and_purity(t: _Trial):
    """Double companion restores gamma; companion fixed points are exactly the
    pure states, which are exactly the states with unit symplectic spectrum."""
    n_a, n_b = t.partition()
    pure_sample = bool(t.rng.random() < 0.5)
    if pure_sample:
        S = random_symplectic(n_a + n_b, t.seed(1)).entries
        g = CorrelationMatrix(entries=S.T @ S, partition=(n_a, n_b))
    else:
        g = random_physical_cm(n_a, n_b, t.seed(2), nu_range=(1.05, 2.2))
    scale = _scale(g)
    gw = wigner_cm(g)
    back = _maxdiff(wigner_cm(gw).entries, g.entries)
    if back > t.tol["involution"] * scale ** 2:
        raise Violation(f"double companion moved gamma by {back:.3e}", state=g)
    fixed_point = _maxdiff(gw.entries, g.entries) <= t.tol["purity"] * scale ** 2
    nus = symplectic_eigenvalues(g.entries)
    unit_spectrum = float(np.max(np.abs(nus - 1.0))) <= t.tol["purity"]
    if not (is_pure(g) == fixed_point == unit_spectrum == pure_sample):
        raise Violation(
            f"purity characterizations disagree (constructed pure: {pure_sample}, "
            f"is_pure: {is_pure(g)}, fixed point: {fixed_point}, "
            f"unit spectrum: {unit_spectrum})", state=g)


def npt_local_invariance(t: _Trial):
    """The NPT verdict is unchanged by local symplectics on either side."""
    g, meta = t.state()
    before = is_npt(g)
    if abs(before.raw_margin) < t.tol["verdict_band"]:
        return
    after = is_npt(local_scramble(g, t.seed(3)))
    if after.npt != before.npt:
        raise Violation(
            f"NPT verdict flipped under local symplectics "
            f"(margins {before.raw_margin:.3e} -> {after.raw_margin:.3e}, "
            f"kind {meta['kind']})", state=g)


def conditioning_preserves_physicality(t: _Trial):
    """Homodyne conditioning of a physical state stays physical."""
    n_a, n_b = t.partition()
    g = random_physical_cm(n_a, n_b, t.seed(1))
    mode = int(t.rng.integers(0, n_a + n_b))
    out = condition_on_x_measurement(g, mode)
    v = validate_physical(out)
    if not v.physical:
        raise Violation(
            f"conditioned state unphysical (margin {v.margin:.3e}) after "
            f"measuring mode {mode}", state=g)
    want = (n_a - 1, n_b) if mode < n_a else (n_a, n_b - 1)
    if out.partition != want:
        raise Violation(f"conditioning returned partition {out.partition}, "
                        f"expected {want}")


def two_mode_equivalence(t: _Trial):
    """On 1x1 states the parameter-level inseparability test equals the PPT test."""
    g, meta = t.state(1, 1)
    verdict = is_npt(g)
    check = check_inseparable(standard_form_params(g))
    decisive = (abs(verdict.raw_margin) >= t.tol["verdict_band"]
                and abs(check.residual) >= t.tol["residual_floor"] * _scale(g) ** 2)
    if decisive and check.inseparable != verdict.npt:
        raise Violation(
            f"inseparability ({check.residual:.3e}) and PPT ({verdict.raw_margin:.3e}) "
            f"tests disagree (kind {meta['kind']})", state=g)


def standard_form_local_invariance(t: _Trial):
    """Parameters are local invariants; the transform realizes them by congruence.

    Near the double root k_x = |k_p| the individual k values carry sqrt-of-
    machine-epsilon noise, so the comparison is made on the polynomial
    combinations (k_x^2 + k_p^2 and k_x k_p) at their natural scale.
    """
    g, _ = t.state(1, 1)
    p = standard_form_params(g)
    q = standard_form_params(local_scramble(g, t.seed(3)))
    tol = t.tol["params_rel"]
    sigma = p.k_x ** 2 + p.k_p ** 2
    pairs = (("n_a", p.n_a, q.n_a, max(1.0, p.n_a)),
             ("n_b", p.n_b, q.n_b, max(1.0, p.n_b)),
             ("k_x^2 + k_p^2", sigma, q.k_x ** 2 + q.k_p ** 2, max(1.0, sigma)),
             ("k_x k_p", p.k_x * p.k_p, q.k_x * q.k_p, max(1.0, sigma)))
    for name, a, b, scale in pairs:
        if abs(a - b) > tol * scale:
            raise Violation(f"parameter {name} moved under local symplectics: "
                            f"{a!r} -> {b!r}", state=g)
    s_a, s_b, g_std = standard_form_transform(g)
    direct = apply_symplectic(g, direct_sum(s_a.entries, s_b.entries))
    if _maxdiff(direct.entries, g_std.entries) > 1e-8 * _scale(g):
        raise Violation("standard-form transform does not reproduce its own "
                        "output by congruence", state=g)
    e = g_std.entries
    structural = max(
        _maxdiff(e[:2, :2], e[0, 0] * np.eye(2)),
        _maxdiff(e[2:, 2:], e[2, 2] * np.eye(2)),
        abs(e[0, 3]), abs(e[1, 2]),
    )
    if structural > 1e-9 * _scale(g) or e[0, 2] < abs(e[1, 3]) - 1e-9:
        raise Violation("transform output is not in standard form", state=g)
    q2 = standard_form_params(g_std)
    if (abs(q2.k_x ** 2 + q2.k_p ** 2 - sigma) > tol * max(1.0, sigma)
            or abs(q2.k_x * q2.k_p - p.k_x * p.k_p) > tol * max(1.0, sigma)):
        raise Violation("transform did not preserve the cross-block invariants",
                        state=g)


def inseparable_kxkp_negative(t: _Trial):
    """Every decisively inseparable sample has k_x * k_p < 0."""
    g, _ = t.state(1, 1)
    p = standard_form_params(g)
    check = check_inseparable(p)
    if check.inseparable and check.residual > t.tol["residual_floor"]:
        if not p.k_x * p.k_p < 0:
            raise Violation(
                f"inseparable sample with k_x*k_p = {p.k_x * p.k_p!r} >= 0", state=g)


def symmetric_specialization(t: _Trial):
    """The symmetric-state criterion matches the general one when n_a = n_b."""
    g = random_symmetric_two_mode(t.seed(1))
    p = standard_form_params(g)
    general = check_inseparable(p)
    special = check_symmetric_inseparable(p.n_a, p.k_x, p.k_p)
    # residuals factor: general = special * (n(k_x-k_p) + |n^2 - k_x k_p - 1|)
    u = p.n_a * (p.k_x - p.k_p)
    v = abs(p.n_a ** 2 - p.k_x * p.k_p - 1.0)
    expected = special.residual * (u + v)
    if abs(general.residual - expected) > 1e-9 * max(1.0, abs(expected)):
        raise Violation(
            f"residual factorization broke: general {general.residual:.3e}, "
            f"special*(u+v) {expected:.3e}", state=g)
    if (min(abs(general.residual), abs(special.residual)) > t.tol["residual_floor"]
            and general.inseparable != special.inseparable):
        raise Violation("symmetric and general inseparability verdicts disagree",
                        state=g)


def wigner_duality_inequalities(t: _Trial):
    """Companion parameters keep the physicality inequality and reverse the
    correlation inequality; exact relations N_a n_a = N_b n_b, det flips."""
    g, _ = t.state(1, 1)
    v = validate_physical(g)
    if v.margin < 1e-6:
        return  # stay clear of the physicality boundary
    p = standard_form_params(g)
    w = wigner_params(g)
    m = w.n_a * w.n_b
    physicality = (m - w.k_x ** 2) * (m - w.k_p ** 2) + 1.0 \
        - (w.n_a ** 2 + w.n_b ** 2 + 2.0 * w.k_x * w.k_p)
    if physicality < -1e-8 * _scale(g) ** 4:
        raise Violation(
            f"companion parameters violate the physicality inequality: "
            f"{physicality:.3e}", state=g)
    if w.d_x > 1.0 + 1e-8:
        raise Violation(
            f"companion correlation inequality not reversed: N_aN_b - K_x^2 = "
            f"{w.d_x!r} > 1", state=g)
    det_g = float(np.linalg.det(g.entries))
    if abs(w.n_a * p.n_a - w.n_b * p.n_b) > 1e-8 * _scale(g) ** 2:
        raise Violation("cross relation N_a n_a = N_b n_b violated", state=g)
    det_w = float(np.linalg.det(wigner_cm(g).entries))
    if abs(det_w * det_g - 1.0) > 1e-8 * max(1.0, det_g):
        raise Violation("determinant of the companion is not 1/det gamma", state=g)


def rc_soundness(t: _Trial):
    """A negative witness value only ever occurs on NPT states; on decisively
    asymptotic symmetric states the r=8 sign matches the limit."""
    symmetric = bool(t.rng.random() < 0.5)
    if symmetric:
        g = random_symmetric_two_mode(t.seed(1))
    else:
        g, _ = t.state(1, 1)
    npt = is_npt(g).npt
    values = [rc_value(g, r).value for r in (0.5, 2.0, 8.0)]
    if min(values) < -1e-9 and not npt:
        raise Violation(
            f"witness went negative ({min(values):.3e}) on a PPT state", state=g)
    if symmetric:
        res = rc_value(g, 8.0)
        if abs(res.asymptotic_value) >= t.tol["sign_floor"]:
            if np.sign(res.value) != np.sign(res.asymptotic_value):
                raise Violation(
                    f"witness sign at r=8 ({res.value:.3e}) disagrees with the "
                    f"asymptotic value ({res.asymptotic_value:.3e})", state=g)


def _swap4(g: np.ndarray) -> np.ndarray:
    idx = [2, 3, 0, 1]
    return g[np.ix_(idx, idx)]


def symmetrization_oracle(gamma: CorrelationMatrix, theta: float,
                          swapped: bool) -> np.ndarray:
    """Independent reconstruction of the symmetrized companion matrix: couple a
    vacuum ancilla to the hotter side with a beam splitter and condition on a
    q-quadrature measurement of the ancilla (all in the companion picture)."""
    _, _, gw_std = standard_form_transform(wigner_cm(gamma))
    g = gw_std.entries
    if swapped:
        g = _swap4(g)
    core = CorrelationMatrix(entries=g, partition=(1, 1))
    joint = direct_sum_states(core, vacuum(0, 1))       # ancilla is global mode 2
    mixer = embed_pair(beam_splitter(theta), 3, 1, 2)   # couples hot side to it
    cond = condition_on_x_measurement(apply_symplectic(joint, mixer), 2)
    out = cond.entries
    if swapped:
        out = _swap4(out)
    return out


def symmetrization_invariants(t: _Trial):
    """Closed-form output equals the measurement oracle; output symmetric,
    still NPT, and the residual scaling law holds."""
    g = random_asymmetric_npt_1x1(t.seed(1))
    rep = symmetrize(g)
    oracle = symmetrization_oracle(g, rep.theta, rep.swapped_sides)
    got = wigner_cm(rep.gamma_out).entries
    dev = _maxdiff(got, oracle)
    if dev > t.tol["oracle"] * _scale(rep.gamma_out):
        raise Violation(f"closed-form blocks deviate from the measurement "
                        f"oracle by {dev:.3e}", state=g)
    p = standard_form_params(rep.gamma_out)
    if abs(p.n_a - p.n_b) > t.tol["symmetry"]:
        raise Violation(f"output not symmetric: n_a={p.n_a!r}, n_b={p.n_b!r}",
                        state=g)
    if not is_npt(rep.gamma_out).npt:
        raise Violation("symmetrization lost NPT-ness", state=g)
    expected = rep.insep_residual_in * rep.scale_factor
    if abs(rep.insep_residual_out - expected) > t.tol["scaling_rel"] * abs(expected) + 1e-14:
        raise Violation(
            f"residual scaling law violated: {rep.insep_residual_out:.6e} vs "
            f"{expected:.6e}", state=g)
    if not 0.0 < rep.scale_factor <= 1.0 + 1e-12:
        raise Violation(f"scale factor {rep.scale_factor!r} outside (0, 1]", state=g)


def _witness_form(g: np.ndarray, n_a: int, n_b: int, z: np.ndarray) -> float:
    herm = g - 1j * pt_form(n_a, n_b)
    return float(np.real(np.conj(z) @ herm @ z))


def concentration_invariants(t: _Trial):
    """Witness support stays on the first mode pair; the quadratic form value
    survives the congruence and the restriction; the reduced state is NPT."""
    n_a, n_b = t.partition()
    g = random_npt_cm(n_a, n_b, t.seed(1))
    witness = s_a = None
    for attempt in range(MAX_PIPELINE_ATTEMPTS):
        witness = find_npt_witness(g, seed=t.seed(2 + attempt))
        try:
            s_a, s_b, g_red = concentrate(g, witness)
            break
        except ConcentrationError:
            continue
    if s_a is None:
        raise Violation("concentration failed for every witness seed", state=g)
    if witness.retries > MAX_WITNESS_RETRIES:
        raise Violation(f"witness took {witness.retries} retries")
    if min(abs(witness.skew_a), abs(witness.skew_b)) <= SKEW_FLOOR_FACTOR:
        raise Violation("witness skew products below the floor")
    z = np.asarray(witness.z)
    za, zb = z[: 2 * n_a], z[2 * n_a:]
    z_hat = np.concatenate([np.linalg.solve(s_a.entries, za),
                            np.linalg.solve(s_b.entries, zb)])
    leak = max(float(np.abs(z_hat[2: 2 * n_a]).max(initial=0.0)),
               float(np.abs(z_hat[2 * n_a + 2:]).max(initial=0.0)))
    if leak > t.tol["leakage"]:
        raise Violation(f"witness support leaked {leak:.3e}", state=g)
    g_hat = apply_symplectic(g, direct_sum(s_a.entries, s_b.entries))
    form_in = _witness_form(g.entries, n_a, n_b, z)
    form_hat = _witness_form(g_hat.entries, n_a, n_b, z_hat)
    z_kept = np.concatenate([z_hat[:2], z_hat[2 * n_a: 2 * n_a + 2]])
    form_red = _witness_form(g_red.entries, 1, 1, z_kept)
    tol = t.tol["form_identity"] * _scale(g)
    if abs(form_hat - form_in) > tol:
        raise Violation(f"quadratic form moved under the local congruence: "
                        f"{form_in:.6e} -> {form_hat:.6e}", state=g)
    if abs(form_red - form_hat) > tol:
        raise Violation(f"quadratic form moved under restriction: "
                        f"{form_hat:.6e} -> {form_red:.6e}", state=g)
    if form_red >= 0:
        raise Violation("restricted witness form is not negative", state=g)
    red = is_npt(g_red)
    if not red.npt:
        raise Violation(f"reduced state is PPT (margin {red.raw_margin:.3e})",
                        state=g)
    if reduce_to_modes(g_hat, [0], [0]).entries.tolist() != g_red.entries.tolist():
        raise Violation("reduced state disagrees with mode selection", state=g)


def pipeline_equivalence(t: _Trial):
    """Verdict matches the PPT test everywhere (boundary band reported as
    such); on DISTILLABLE runs every stage artifact is present and NPT."""
    g, meta = t.state()
    verdict = is_npt(g)
    rep = distill_pipeline(g, seed=t.seed(9))
    if not verdict.npt:
        want = VERDICT_NOT_DISTILLABLE
    elif abs(verdict.raw_margin) < BOUNDARY_BAND:
        want = VERDICT_BOUNDARY
    else:
        want = VERDICT_DISTILLABLE
    if rep.verdict != want:
        raise Violation(
            f"pipeline verdict {rep.verdict} but PPT test implies {want} "
            f"(margin {verdict.raw_margin:.3e}, kind {meta['kind']})", state=g)
    if rep.verdict != VERDICT_DISTILLABLE:
        if rep.witness is not None or rep.gamma_1x1 is not None:
            raise Violation("non-distillable report carries stage artifacts")
        return
    if rep.witness is None or rep.witness.margin >= 0:
        raise Violation("distillable report lacks a negative witness", state=g)
    for label, stage_g in (("concentrated", rep.gamma_1x1),
                           ("standard-form", rep.standard_form.gamma_std),
                           ("symmetrized", rep.symmetrization.gamma_out)):
        if stage_g is None or not is_npt(stage_g).npt:
            raise Violation(f"{label} stage output missing or not NPT", state=g)
    p = rep.final_params
    n = np.sqrt(p.n_a * p.n_b)
    if (n - p.k_x) * (n + p.k_p) - 1.0 >= 1e-9:
        raise Violation("final symmetric state violates the witness limit "
                        "inequality", state=g)
    if len(rep.rc_sweep) != 8 or rep.rc is not rep.rc_sweep[-1]:
        raise Violation("witness sweep malformed", state=g)


REGISTRY: tuple[tuple[str, object], ...] = (
    ("form_matrix_structure", form_matrix_structure),
    ("symplectic_group_closure", symplectic_group_closure),
    ("symplectic_spectrum_congruence_invariance",
     symplectic_spectrum_congruence_invariance),
    ("basis_extension_pairing", basis_extension_pairing),
    ("physicality_criteria_agree", physicality_criteria_agree),
    ("partial_transpose_involution", partial_transpose_involution),
    ("wigner_involution_and_purity", wigner_involution_and_purity),
    ("npt_local_invariance", npt_local_invariance),
    ("conditioning_preserves_physicality", conditioning_preserves_physicality),
    ("two_mode_equivalence", two_mode_equivalence),
    ("standard_form_local_invariance", standard_form_local_invariance),
    ("inseparable_kxkp_negative", inseparable_kxkp_negative),
    ("symmetric_specialization", symmetric_specialization),
    ("wigner_duality_inequalities", wigner_duality_inequalities),
    ("rc_soundness", rc_soundness),
    ("symmetrization_invariants", symmetrization_invariants),
    ("concentration_invariants", concentration_invariants),
    ("pipeline_equivalence", pipeline_equivalence),
)

_VIOLATION_DUMP_LIMIT = 25


def run_fuzz(config: FuzzConfig) -> dict:
    """Run every registered invariant over the trial stream; returns the
    summary dict (JSON types only).  Never raises on violations."""
    started = time.perf_counter()
    counts = {name: {"checked": 0, "violations": 0} for name, _ in REGISTRY}
    dumps: list[dict] = []
    total = 0
    for index, (name, fn) in enumerate(REGISTRY):
        for trial in range(config.trials):
            t = _Trial(config, index, trial)
            try:
                fn(t)
            except Violation as v:
                record = {"invariant": name, "trial": trial,
                          "seed_entropy": list(t.entropy), "message": str(v)}
                if v.state is not None and len(dumps) < _VIOLATION_DUMP_LIMIT:
                    record["state"] = {
                        "n_a": v.state.n_a, "n_b": v.state.n_b,
                        "gamma": v.state.entries.tolist(),
                    }
                total += 1
                counts[name]["violations"] += 1
                if len(dumps) < _VIOLATION_DUMP_LIMIT:
                    dumps.append(record)
            except Exception as exc:  # degraded tolerances must not crash the run
                total += 1
                counts[name]["violations"] += 1
                if len(dumps) < _VIOLATION_DUMP_LIMIT:
                    dumps.append({
                        "invariant": name, "trial": trial,
                        "seed_entropy": list(t.entropy),
                        "message": f"unexpected {type(exc).__name__}: {exc}",
                    })
            counts[name]["checked"] += 1
    return {
        "config": config.to_dict(),
        "invariants": counts,
        "violations": dumps,
        "total_violations": total,
        "elapsed_seconds": time.perf_counter() - started,
    }
