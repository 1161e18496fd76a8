"""Standard form and separability analysis of 1x1-mode states.

Every two-mode correlation matrix gamma = [[A, C], [C^T, B]] can be brought
by local symplectic transformations to the standard form

    A -> n_a * I,   B -> n_b * I,   C -> diag(k_x, k_p),

with the convention k_x >= |k_p| and sign(k_p) = sign(det C).  The four
numbers are fixed by the local invariants det A, det B, det C and det gamma:

    n_a = sqrt(det A),  n_b = sqrt(det B),  k_x k_p = det C,
    (n_a n_b - k_x^2)(n_a n_b - k_p^2) = det gamma,

so k_x^2 and k_p^2 are the roots of t^2 - sigma t + (det C)^2 with
sigma = ((n_a n_b)^2 + (det C)^2 - det gamma) / (n_a n_b).

In these parameters a matrix is a physical state iff

    (n_a n_b - k_x^2)(n_a n_b - k_p^2) + 1 >= n_a^2 + n_b^2 + 2 k_x k_p
    n_a n_b - k_x^2 >= 1,

and a physical state is inseparable (equivalently NPT) iff

    (n_a n_b - k_x^2)(n_a n_b - k_p^2) + 1 < n_a^2 + n_b^2 - 2 k_x k_p.

Both sides of these inequalities are polynomial in the block determinants,
so the residuals reported here are computed from determinants directly and
are local-transformation invariants.

The same parameter extraction applied to the Wigner-form companion matrix
J^T gamma^{-1} J yields the Wigner-picture parameters: for physical states
they satisfy the first (physicality) inequality in the same direction and
the second with the direction reversed (n_a n_b - k_x^2 <= 1).  The
extraction routines therefore accept any positive definite input and do not
require physicality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericsError
from .states import CorrelationMatrix, wigner_cm
from .symplectic import SymplecticMatrix

# relative slack when clamping tiny negative discriminants / roots that are
# exactly zero in exact arithmetic
_CLAMP_REL = 1e-10


@dataclass(frozen=True)
class StdFormParams:
    """Standard-form parameters of a two-mode correlation matrix.

    For physical states n_a, n_b >= 1; parameters of Wigner-form companions
    are representable too, so no such bound is enforced here.
    """

    n_a: float
    n_b: float
    k_x: float
    k_p: float


@dataclass(frozen=True)
class WignerParams:
    """Standard-form parameters of the Wigner-form companion matrix."""

    n_a: float
    n_b: float
    k_x: float
    k_p: float

    @property
    def d_x(self) -> float:
        return self.n_a * self.n_b - self.k_x ** 2

    @property
    def d_p(self) -> float:
        return self.n_a * self.n_b - self.k_p ** 2


@dataclass(frozen=True)
class TwoModePhysicality:
    physical: bool
    physicality_residual: float   # first inequality, LHS - RHS (>= 0 when physical)
    correlation_residual: float   # n_a n_b - k_x^2 - 1 (>= 0 when physical)


@dataclass(frozen=True)
class InseparabilityCheck:
    inseparable: bool
    residual: float               # RHS - LHS of the strict inequality (> 0 when inseparable)


@dataclass(frozen=True)
class RcWitnessResult:
    """Reduction-criterion witness evaluated against a two-mode squeezed probe.

    value < 0 certifies distillability directly.  asymptotic_value is the
    large-squeezing limit (n - k_x)(n + k_p) - 1 computed from the
    standard-form parameters with n the geometric mean of n_a and n_b
    (meaningful for symmetric states, where n_a = n_b = n).
    """

    r: float
    value: float
    asymptotic_value: float


def _require_two_mode(gamma: CorrelationMatrix):
    if gamma.partition != (1, 1):
        raise ValueError(f"expected a 1x1-mode state, got partition {gamma.partition}")


def det_invariants(gamma: CorrelationMatrix) -> tuple[float, float, float, float]:
    """(det A, det B, det C, det gamma) - invariant under local symplectics."""
    _require_two_mode(gamma)
    g = gamma.entries
    return (
        float(np.linalg.det(g[:2, :2])),
        float(np.linalg.det(g[2:, 2:])),
        float(np.linalg.det(g[:2, 2:])),
        float(np.linalg.det(g)),
    )


def _clamped_sqrt(x: float, scale: float, what: str) -> float:
    if x < 0:
        if x < -_CLAMP_REL * max(scale, 1.0):
            raise NumericsError(f"{what} came out negative beyond tolerance: {x:.3e}")
        x = 0.0
    return float(np.sqrt(x))


def standard_form_params(gamma: CorrelationMatrix) -> StdFormParams:
    """Extract (n_a, n_b, k_x, k_p) from the block-determinant invariants.

    Accepts any positive definite two-mode matrix (physicality is not
    required; Wigner-form companions are a supported input).  Raises
    NumericsError if the root extraction turns up complex values beyond
    rounding tolerance, which would mean the invariants are inconsistent.
    """
    det_a, det_b, det_c, det_g = det_invariants(gamma)
    n_a = float(np.sqrt(det_a))
    n_b = float(np.sqrt(det_b))
    m = n_a * n_b
    sigma = (m * m + det_c * det_c - det_g) / m
    disc = sigma * sigma - 4.0 * det_c * det_c
    root = _clamped_sqrt(disc, sigma * sigma, "standard-form discriminant")
    kx2 = 0.5 * (sigma + root)
    kp2 = 0.5 * (sigma - root)
    k_x = _clamped_sqrt(kx2, abs(sigma), "k_x^2")
    k_p = float(np.sign(det_c)) * _clamped_sqrt(kp2, abs(sigma), "k_p^2")
    return StdFormParams(n_a=n_a, n_b=n_b, k_x=k_x, k_p=k_p)


def _spd_inverse_root(M: np.ndarray, target: float) -> np.ndarray:
    # sqrt(target) * M^{-1/2}: symmetric, determinant 1 when target = sqrt(det M)
    w, Q = np.linalg.eigh(M)
    if w[0] <= 0:
        raise ValueError("diagonal block is not positive definite")
    return np.sqrt(target) * (Q @ np.diag(w ** -0.5) @ Q.T)


def standard_form_transform(
    gamma: CorrelationMatrix,
) -> tuple[SymplecticMatrix, SymplecticMatrix, CorrelationMatrix]:
    """Construct local symplectics (S_A, S_B) bringing gamma to standard form.

    Returns (S_A, S_B, gamma_std) with
    gamma_std = (S_A (+) S_B)^T gamma (S_A (+) S_B) equal to the standard
    form within rounding.  The A and B blocks are equalized by the symmetric
    determinant-1 congruences sqrt(n) * block^{-1/2}; the cross block is then
    diagonalized by a rotation pair from its singular value decomposition,
    with signs arranged so both rotations are proper (det +1, hence
    symplectic) and sign(k_p) follows det C.  Degenerate cross blocks
    (both singular values zero) are fine: any rotation pair works.
    """
    _require_two_mode(gamma)
    g = gamma.entries
    A, B, C = g[:2, :2], g[2:, 2:], g[:2, 2:]
    n_a = float(np.sqrt(np.linalg.det(A)))
    n_b = float(np.sqrt(np.linalg.det(B)))
    MA = _spd_inverse_root(A, n_a)
    MB = _spd_inverse_root(B, n_b)
    C1 = MA.T @ C @ MB
    U, s, Vt = np.linalg.svd(C1)
    s = s.copy()
    if np.linalg.det(U) < 0:
        U[:, 1] *= -1.0
        s[1] *= -1.0
    if np.linalg.det(Vt) < 0:
        Vt[1, :] *= -1.0
        s[1] *= -1.0
    SA = MA @ U
    SB = MB @ Vt.T
    gamma_std = CorrelationMatrix.from_blocks(
        n_a * np.eye(2), n_b * np.eye(2), np.diag(s))
    return (
        SymplecticMatrix(n=1, entries=SA),
        SymplecticMatrix(n=1, entries=SB),
        gamma_std,
    )


def check_physical(p: StdFormParams, tol: float = 1e-9) -> TwoModePhysicality:
    """Evaluate both standard-form physicality inequalities."""
    m = p.n_a * p.n_b
    lhs = (m - p.k_x ** 2) * (m - p.k_p ** 2) + 1.0
    physicality_residual = lhs - (p.n_a ** 2 + p.n_b ** 2 + 2.0 * p.k_x * p.k_p)
    correlation_residual = m - p.k_x ** 2 - 1.0
    return TwoModePhysicality(
        physical=bool(physicality_residual >= -tol and correlation_residual >= -tol),
        physicality_residual=float(physicality_residual),
        correlation_residual=float(correlation_residual),
    )


def check_inseparable(p: StdFormParams, tol: float = 1e-9) -> InseparabilityCheck:
    """Inseparability of a physical two-mode state from its parameters.

    The residual is n_a^2 + n_b^2 - 2 k_x k_p - (n_a n_b - k_x^2)(n_a n_b -
    k_p^2) - 1; strictly positive residual means inseparable (= NPT for two
    -mode states).  Inseparable states always have k_x k_p < 0.
    """
    m = p.n_a * p.n_b
    lhs = (m - p.k_x ** 2) * (m - p.k_p ** 2) + 1.0
    residual = (p.n_a ** 2 + p.n_b ** 2 - 2.0 * p.k_x * p.k_p) - lhs
    return InseparabilityCheck(inseparable=bool(residual > tol), residual=float(residual))


def inseparability_residual(gamma: CorrelationMatrix) -> float:
    """The inseparability residual straight from determinant invariants:
    det A + det B - 2 det C - det gamma - 1.  Positive iff inseparable
    (for physical states); also used on Wigner-form companions, where the
    same expression governs the symmetrization scaling law."""
    det_a, det_b, det_c, det_g = det_invariants(gamma)
    return float(det_a + det_b - 2.0 * det_c - det_g - 1.0)


def is_symmetric(p: StdFormParams, tol: float = 1e-8) -> bool:
    """Symmetric means equal local purities: n_a = n_b within tol."""
    return bool(abs(p.n_a - p.n_b) <= tol)


def check_symmetric_inseparable(n: float, k_x: float, k_p: float,
                                tol: float = 1e-9) -> InseparabilityCheck:
    """Inseparability condition specialized to symmetric states:

        |n^2 - k_x k_p - 1| < n (k_x - k_p).

    Agrees with check_inseparable at n_a = n_b = n.
    """
    residual = n * (k_x - k_p) - abs(n * n - k_x * k_p - 1.0)
    return InseparabilityCheck(inseparable=bool(residual > tol), residual=float(residual))


def tmss_cm(r: float) -> CorrelationMatrix:
    """Two-mode squeezed vacuum with squeezing parameter r.

    Standard-form parameters are n_a = n_b = cosh(2r), k_x = -k_p =
    sinh(2r); the state is pure for every r and NPT for every r > 0.
    """
    if r < 0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    ch, sh = np.cosh(2.0 * r), np.sinh(2.0 * r)
    return CorrelationMatrix.from_blocks(
        ch * np.eye(2), ch * np.eye(2), sh * np.diag([1.0, -1.0]))


def wigner_params(gamma: CorrelationMatrix) -> WignerParams:
    """Standard-form parameters of the Wigner-form companion of gamma."""
    p = standard_form_params(wigner_cm(gamma))
    return WignerParams(n_a=p.n_a, n_b=p.n_b, k_x=p.k_x, k_p=p.k_p)


def rc_value(gamma_rho: CorrelationMatrix, r: float) -> RcWitnessResult:
    """Reduction-criterion witness value against a squeezed probe at r.

    For a state rho with correlation matrix gamma_rho (standard form,
    displacements zero) and the pure probe psi = two-mode squeezed vacuum,

        value = 2 / sqrt(det(A_rho + A_psi)) - 4 / sqrt(det(gamma_rho + gamma_psi)),

    which is the expectation of (tr_B(rho) (x) 1 - rho) in the probe state up
    to a positive factor; a negative value certifies distillability.  The
    determinants come from the Gaussian overlap formula
    tr(rho_1 rho_2) = 2^n / sqrt(det(gamma_1 + gamma_2)).
    """
    _require_two_mode(gamma_rho)
    if r <= 0:
        raise ValueError(f"probe squeezing must be > 0, got {r}")
    psi = tmss_cm(r)
    a_sum = gamma_rho.a_block + psi.a_block
    g_sum = gamma_rho.entries + psi.entries
    value = 2.0 / np.sqrt(np.linalg.det(a_sum)) - 4.0 / np.sqrt(np.linalg.det(g_sum))
    p = standard_form_params(gamma_rho)
    n = np.sqrt(p.n_a * p.n_b)
    asymptotic = (n - p.k_x) * (n + p.k_p) - 1.0
    return RcWitnessResult(r=float(r), value=float(value), asymptotic_value=float(asymptotic))
