"""Correlation matrices of bipartite Gaussian states and the operations that
decide their physicality and partial-transpose properties.

Conventions
-----------
A state of N + M modes (N on side A, M on side B) is described by the
correlation matrix gamma appearing in its characteristic function

    chi(x) = exp(-(1/4) x^T gamma x - i d^T x),

with coordinates interleaved as (q_1, p_1, ..., q_{N+M}, p_{N+M}) and side A
occupying the first N modes.  The vacuum has gamma = identity.  A symmetric
positive definite gamma describes a physical state exactly when

    gamma >= J^T gamma^{-1} J

as a matrix inequality, equivalently when every symplectic eigenvalue is
>= 1, equivalently when the Hermitian matrix gamma - iJ is positive
semidefinite.  Both the matrix-inequality margin and the symplectic spectrum
are computed and reported so they can be cross-checked.

Partial transposition on side B flips the sign of every B-side momentum:
gamma -> Lambda gamma Lambda with Lambda = diag(1,...,1, 1,-1,...,1,-1).
The state has non-positive partial transpose (NPT) exactly when the
transposed matrix fails the physicality condition, i.e. when the Hermitian
matrix gamma - i*Jtilde (Jtilde = Lambda J Lambda) has a negative eigenvalue.
For bipartite Gaussian states NPT is equivalent to distillability, which is
what the rest of the package exploits constructively.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MeasurementError, NumericsError, PreconditionError
from .symplectic import form_matrix, symplectic_eigenvalues

TOL_VERDICT = 1e-9          # default tolerance for physicality / NPT verdicts
COND_LIMIT = 1e12           # refuse to invert beyond this condition number
WIGNER_INVOLUTION_TOL = 1e-10
PURITY_TOL = 1e-8
QVAR_FLOOR = 1e-12          # degenerate-measurement guard


def _sym(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric positive definite correlation matrix with an A|B partition.

    ``entries`` is the 2(n_a+n_b) x 2(n_a+n_b) matrix; ``partition`` is
    (n_a, n_b) with side A first.  Symmetry and positive definiteness are
    checked on construction and the stored array is made read-only.
    Positive definiteness does not imply physicality: partial transposes of
    NPT states and Wigner-form companions are representable on purpose.
    """

    entries: np.ndarray = field(repr=False)
    partition: tuple[int, int] = (1, 1)

    def __post_init__(self):
        n_a, n_b = self.partition
        if n_a < 0 or n_b < 0 or n_a + n_b < 1:
            raise ValueError(f"bad partition {self.partition}")
        g = np.array(self.entries, dtype=float)
        dim = 2 * (n_a + n_b)
        if g.shape != (dim, dim):
            raise ValueError(
                f"entries shape {g.shape} does not match partition {self.partition}")
        scale = max(1.0, float(np.abs(g).max()))
        if np.abs(g - g.T).max() > 1e-8 * scale:
            raise ValueError("correlation matrix must be symmetric")
        g = _sym(g)
        w_min = np.linalg.eigvalsh(g)[0]
        if w_min <= 0:
            raise ValueError(
                f"correlation matrix must be positive definite (min eigenvalue {w_min:.3e})")
        g.flags.writeable = False
        object.__setattr__(self, "entries", g)
        object.__setattr__(self, "partition", (int(n_a), int(n_b)))

    @property
    def n_a(self) -> int:
        return self.partition[0]

    @property
    def n_b(self) -> int:
        return self.partition[1]

    @property
    def n_modes(self) -> int:
        return self.n_a + self.n_b

    @property
    def dim(self) -> int:
        return 2 * self.n_modes

    @property
    def a_block(self) -> np.ndarray:
        k = 2 * self.n_a
        return self.entries[:k, :k]

    @property
    def b_block(self) -> np.ndarray:
        k = 2 * self.n_a
        return self.entries[k:, k:]

    @property
    def cross_block(self) -> np.ndarray:
        k = 2 * self.n_a
        return self.entries[:k, k:]

    @classmethod
    def from_blocks(cls, A, B, C) -> "CorrelationMatrix":
        """Assemble [[A, C], [C^T, B]] with partition inferred from A and B."""
        A = np.asarray(A, dtype=float)
        B = np.asarray(B, dtype=float)
        C = np.asarray(C, dtype=float)
        g = np.block([[A, C], [C.T, B]])
        return cls(entries=g, partition=(A.shape[0] // 2, B.shape[0] // 2))


@dataclass(frozen=True)
class GaussianState:
    """A Gaussian state: correlation matrix plus displacement vector."""

    n_a: int
    n_b: int
    gamma: CorrelationMatrix
    d: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if (self.n_a, self.n_b) != self.gamma.partition:
            raise ValueError("state partition does not match its correlation matrix")
        d = self.d
        if d is None:
            d = np.zeros(self.gamma.dim)
        d = np.array(d, dtype=float)
        if d.shape != (self.gamma.dim,):
            raise ValueError(f"displacement shape {d.shape}, expected ({self.gamma.dim},)")
        d.flags.writeable = False
        object.__setattr__(self, "d", d)


@dataclass(frozen=True)
class PhysicalityVerdict:
    physical: bool
    margin: float                    # min eigenvalue of gamma - J^T gamma^{-1} J
    min_symplectic_eigenvalue: float


@dataclass(frozen=True)
class NptVerdict:
    npt: bool
    margin: float                    # min eigenvalue of gamma - i*Jtilde, clipped at 0
    min_pt_symplectic_eigenvalue: float
    raw_margin: float                # same eigenvalue before clipping


def _coerce(gamma) -> np.ndarray:
    if isinstance(gamma, CorrelationMatrix):
        return gamma.entries
    return np.asarray(gamma, dtype=float)


def vacuum(n_a: int, n_b: int) -> CorrelationMatrix:
    """Vacuum state on the given partition (identity correlation matrix)."""
    return CorrelationMatrix(entries=np.eye(2 * (n_a + n_b)), partition=(n_a, n_b))


def pt_sign_vector(n_a: int, n_b: int) -> np.ndarray:
    """Diagonal of Lambda: +1 everywhere except B-side momenta."""
    lam = np.ones(2 * (n_a + n_b))
    lam[2 * n_a + 1 :: 2] = -1.0
    return lam


def pt_form(n_a: int, n_b: int) -> np.ndarray:
    """The transposed-side form Jtilde = Lambda J Lambda."""
    lam = pt_sign_vector(n_a, n_b)
    J = form_matrix(n_a + n_b)
    return (lam[:, None] * J) * lam[None, :]


def _check_conditioning(g: np.ndarray, what: str):
    w = np.linalg.eigvalsh(g)
    if w[0] <= 0 or w[-1] / w[0] > COND_LIMIT:
        raise NumericsError(
            f"{what}: matrix condition number exceeds {COND_LIMIT:.0e}; "
            "result would not be trustworthy")


def validate_physical(gamma, tol: float = TOL_VERDICT) -> PhysicalityVerdict:
    """Decide physicality of a correlation matrix.

    Two independent criteria are evaluated: the margin of the matrix
    inequality gamma >= J^T gamma^{-1} J and the minimum symplectic
    eigenvalue (physical iff >= 1).  The verdict is taken from the margin;
    both numbers are reported so callers and tests can assert agreement.
    """
    g = _coerce(gamma)
    n = g.shape[0] // 2
    _check_conditioning(g, "validate_physical")
    J = form_matrix(n)
    diff = _sym(g - J.T @ np.linalg.inv(g) @ J)
    margin = float(np.linalg.eigvalsh(diff)[0])
    nu_min = float(symplectic_eigenvalues(g)[0])
    return PhysicalityVerdict(
        physical=bool(margin >= -tol),
        margin=margin,
        min_symplectic_eigenvalue=nu_min,
    )


def partial_transpose(gamma: CorrelationMatrix) -> CorrelationMatrix:
    """Partial transpose on side B: flip the sign of every B-side momentum.

    An exact sign flip, so applying it twice returns the input bit for bit.
    """
    if gamma.n_a < 1 or gamma.n_b < 1:
        raise ValueError("partial transposition needs at least one mode on each side")
    lam = pt_sign_vector(gamma.n_a, gamma.n_b)
    g = (lam[:, None] * gamma.entries) * lam[None, :]
    return CorrelationMatrix(entries=g, partition=gamma.partition)


def is_npt(gamma: CorrelationMatrix, tol: float = TOL_VERDICT) -> NptVerdict:
    """Decide whether the bipartite state has non-positive partial transpose.

    The margin is the most negative eigenvalue of the Hermitian matrix
    gamma - i*Jtilde (clipped at zero for PPT states, where small positive
    eigenvalues carry no meaning: pure product states sit exactly at zero).
    The symplectic spectrum of the transposed matrix is computed as an
    independent check; NPT holds iff its minimum is < 1.

    Raises PreconditionError when gamma itself is not physical.
    """
    if gamma.n_a < 1 or gamma.n_b < 1:
        raise ValueError("NPT test needs at least one mode on each side")
    phys = validate_physical(gamma, tol=tol)
    if not phys.physical:
        raise PreconditionError(
            f"is_npt requires a physical state (margin {phys.margin:.3e})")
    herm = gamma.entries - 1j * pt_form(gamma.n_a, gamma.n_b)
    raw = float(np.linalg.eigvalsh(herm)[0])
    tilde = partial_transpose(gamma)
    nu_min = float(symplectic_eigenvalues(tilde.entries)[0])
    return NptVerdict(
        npt=bool(raw < -tol),
        margin=min(raw, 0.0),
        min_pt_symplectic_eigenvalue=nu_min,
        raw_margin=raw,
    )


def wigner_cm(gamma: CorrelationMatrix) -> CorrelationMatrix:
    """The Wigner-form companion matrix J^T gamma^{-1} J (same partition).

    An involution: applying it twice recovers the input.  The companion of a
    physical matrix is generally *not* physical (the inequality direction of
    the purity-type condition reverses); it equals the input exactly for
    pure states, which is the purity test used elsewhere.
    """
    g = gamma.entries
    _check_conditioning(g, "wigner_cm")
    J = form_matrix(gamma.n_modes)
    w = _sym(J.T @ np.linalg.inv(g) @ J)
    return CorrelationMatrix(entries=w, partition=gamma.partition)


def is_pure(gamma: CorrelationMatrix, tol: float = PURITY_TOL) -> bool:
    """Pure iff every symplectic eigenvalue is 1 within tol."""
    nus = symplectic_eigenvalues(gamma.entries)
    return bool(np.abs(nus - 1.0).max() <= tol)


def reduce_to_modes(gamma: CorrelationMatrix, keep_a, keep_b) -> CorrelationMatrix:
    """Trace out all modes except the listed ones (0-based per side).

    Traced-out modes simply drop their rows and columns from gamma.  Index
    lists must be strictly increasing and in range; at least one mode must
    survive in total.
    """
    keep_a = list(keep_a)
    keep_b = list(keep_b)
    if not keep_a and not keep_b:
        raise ValueError("cannot trace out every mode")
    for name, keep, limit in (("A", keep_a, gamma.n_a), ("B", keep_b, gamma.n_b)):
        if any(not (0 <= k < limit) for k in keep):
            raise ValueError(f"side-{name} mode indices {keep} out of range (0..{limit-1})")
        if sorted(set(keep)) != keep:
            raise ValueError(f"side-{name} mode indices must be strictly increasing")
    modes = keep_a + [gamma.n_a + k for k in keep_b]
    idx = np.array([c for m in modes for c in (2 * m, 2 * m + 1)])
    g = gamma.entries[np.ix_(idx, idx)]
    return CorrelationMatrix(entries=g, partition=(len(keep_a), len(keep_b)))


def condition_on_x_measurement(gamma: CorrelationMatrix, mode: int) -> CorrelationMatrix:
    """Correlation matrix of the remaining modes after a homodyne measurement
    of the q quadrature of ``mode`` (0-based global index, side A first).

    The update is the Schur complement
        Gamma - sigma (pi gamma_m pi)^+ sigma^T,   pi = diag(1, 0),
    where gamma_m is the measured mode's 2x2 block and the pseudo-inverse of
    the rank-one projected block is formed explicitly.  The result does not
    depend on the measurement outcome (outcomes shift only the displacement),
    which is why none is taken as input.

    Raises MeasurementError when the measured q variance is degenerate.
    """
    n = gamma.n_modes
    if not (0 <= mode < n):
        raise ValueError(f"mode index {mode} out of range (0..{n-1})")
    if n < 2:
        raise ValueError("conditioning needs at least one unmeasured mode")
    meas = [2 * mode, 2 * mode + 1]
    keep = [i for i in range(2 * n) if i // 2 != mode]
    g = gamma.entries
    Gamma = g[np.ix_(keep, keep)]
    sigma = g[np.ix_(keep, meas)]
    qvar = g[meas[0], meas[0]]
    if qvar < QVAR_FLOOR:
        raise MeasurementError(
            f"measured q variance {qvar:.3e} below {QVAR_FLOOR:.0e}; "
            "homodyne conditioning is degenerate")
    pinv = np.array([[1.0 / qvar, 0.0], [0.0, 0.0]])
    out = _sym(Gamma - sigma @ pinv @ sigma.T)
    if mode < gamma.n_a:
        part = (gamma.n_a - 1, gamma.n_b)
    else:
        part = (gamma.n_a, gamma.n_b - 1)
    return CorrelationMatrix(entries=out, partition=part)


def apply_symplectic(gamma: CorrelationMatrix, S) -> CorrelationMatrix:
    """Congruence transform gamma -> S^T gamma S (partition unchanged).

    With S = S_A (+) S_B this is a local linear Bogoliubov transformation;
    physicality, NPT-ness and the four block-determinant invariants of
    two-mode states are all preserved by it.
    """
    S = np.asarray(getattr(S, "entries", S), dtype=float)
    g = _sym(S.T @ gamma.entries @ S)
    return CorrelationMatrix(entries=g, partition=gamma.partition)


def direct_sum_states(first: CorrelationMatrix, second: CorrelationMatrix) -> CorrelationMatrix:
    """Tensor product of two bipartite states at the correlation-matrix level.

    Side A of the result is (A modes of first, then of second) and likewise
    for side B, so the block structure stays A-before-B.
    """
    a1, b1 = first.partition
    a2, b2 = second.partition
    n = a1 + a2 + b1 + b2
    out = np.zeros((2 * n, 2 * n))

    def scatter(cm: CorrelationMatrix, a_offset: int, b_offset: int):
        modes = [a_offset + m for m in range(cm.n_a)]
        modes += [b_offset + m for m in range(cm.n_b)]
        idx = np.array([c for m in modes for c in (2 * m, 2 * m + 1)])
        out[np.ix_(idx, idx)] = cm.entries

    scatter(first, 0, a1 + a2)
    scatter(second, a1, a1 + a2 + b1)
    return CorrelationMatrix(entries=out, partition=(a1 + a2, b1 + b2))
