"""Symmetric-matrix substrate: eigendecomposition, the Loewner order,
spectral functional calculus, and epsilon-regularized limits.

Everything else in the package (connections, measures, the verification
suites, the CLI) is built on the operations defined here.  All operations
are pure functions of their inputs, ``SymMatrix`` values are immutable
after construction, and no shared mutable state exists, so everything in
this module is safe to call concurrently.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ASYMMETRY_WARN_REL",
    "DEFAULT_TOL",
    "DimensionMismatchError",
    "EigenSolverError",
    "NonConvergenceError",
    "NotPSDError",
    "SingularMatrixError",
    "SymMatrix",
    "Tolerances",
    "congruence",
    "fn_calculus",
    "frobenius",
    "inv_pd",
    "is_psd",
    "load_matrix",
    "loewner_leq",
    "matrix_from_dict",
    "matrix_to_dict",
    "opnorm",
    "regularize_limit",
    "save_matrix",
    "spectrum",
    "sqrt_psd",
]

# Relative asymmetry above which loading a matrix file warns before
# symmetrizing.
ASYMMETRY_WARN_REL = 1e-12

# A regularized limit that has not met the Cauchy tolerance by eps_min is
# still accepted when its last step is this many sqrt(eps_min) units small;
# square-root-rate limits (geometric mean at singular arguments) land here.
_SLOW_CONVERGENCE_FACTOR = 10.0


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


class NotPSDError(ValueError):
    """A matrix required to be positive semidefinite has an eigenvalue
    below the negative slack."""

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class SingularMatrixError(ValueError):
    """Inversion (or a positive-definite precondition) failed because the
    matrix is numerically singular."""

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class EigenSolverError(RuntimeError):
    """The symmetric eigensolver did not converge."""


class NonConvergenceError(RuntimeError):
    """The epsilon-regularized limit did not settle before ``eps_min``."""

    def __init__(
        self,
        message: str,
        last: np.ndarray | None = None,
        previous: np.ndarray | None = None,
        distance: float | None = None,
    ):
        super().__init__(message)
        self.last = last
        self.previous = previous
        self.distance = distance


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared across the package.

    Attributes
    ----------
    psd_slack : float
        Relative eigenvalue slack for positivity tests, measured against
        max(1, spectral norm).
    eq_tol : float
        Relative Frobenius tolerance for equality tests.
    eps0 : float
        Starting value of the regularization shift.
    eps_min : float
        Smallest shift tried before the regularized limit gives up.
    """

    psd_slack: float = 1e-9
    eq_tol: float = 1e-8
    eps0: float = 1e-2
    eps_min: float = 1e-12

    def __post_init__(self):
        for name in ("psd_slack", "eq_tol", "eps0", "eps_min"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if not self.eps_min < self.eps0:
            raise ValueError("eps_min must be smaller than eps0")


DEFAULT_TOL = Tolerances()


class SymMatrix:
    """A real symmetric matrix of dimension >= 1.

    Construction symmetrizes the input by averaging with its transpose;
    afterwards the stored entries are exactly symmetric and read-only.
    """

    __slots__ = ("data",)

    def __init__(self, entries):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionMismatchError(
                f"expected a square matrix with dim >= 1, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr = (arr + arr.T) * 0.5
        arr.flags.writeable = False
        self.data = arr

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "SymMatrix":
        return cls(np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> "SymMatrix":
        return cls(np.zeros((dim, dim)))

    @classmethod
    def diagonal(cls, values) -> "SymMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    def shifted(self, eps: float) -> "SymMatrix":
        """Return self + eps * I."""
        return SymMatrix(self.data + eps * np.eye(self.dim))

    def tolist(self) -> list[list[float]]:
        return self.data.tolist()

    def _check_same_dim(self, other: "SymMatrix"):
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        if not isinstance(other, SymMatrix):
            return NotImplemented
        self._check_same_dim(other)
        return SymMatrix(self.data + other.data)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        if not isinstance(other, SymMatrix):
            return NotImplemented
        self._check_same_dim(other)
        return SymMatrix(self.data - other.data)

    def __mul__(self, scalar) -> "SymMatrix":
        return SymMatrix(self.data * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "SymMatrix":
        return SymMatrix(self.data / float(scalar))

    def __neg__(self) -> "SymMatrix":
        return SymMatrix(-self.data)

    def __repr__(self) -> str:
        body = np.array2string(self.data, precision=6, separator=", ")
        return f"SymMatrix({body})"


def _as_array(A) -> np.ndarray:
    if isinstance(A, SymMatrix):
        return A.data
    return np.asarray(A, dtype=float)


def _eigh(a: np.ndarray, label: str = "matrix") -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(
            f"eigendecomposition failed for {label} "
            f"(dim {a.shape[0]}, entries {a.tolist()}): {exc}"
        ) from exc


def _eigvalsh(a: np.ndarray, label: str = "matrix") -> np.ndarray:
    try:
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(
            f"eigendecomposition failed for {label} "
            f"(dim {a.shape[0]}, entries {a.tolist()}): {exc}"
        ) from exc


def _spectral_scale(w: np.ndarray) -> float:
    """max(1, spectral norm) from an ascending eigenvalue array."""
    return max(1.0, abs(float(w[0])), abs(float(w[-1])))


def frobenius(A) -> float:
    """Frobenius norm of a SymMatrix or array."""
    return float(np.linalg.norm(_as_array(A)))


def opnorm(A) -> float:
    """Spectral norm (largest absolute eigenvalue) of a symmetric matrix."""
    w = _eigvalsh(_as_array(A))
    return max(abs(float(w[0])), abs(float(w[-1])))


def spectrum(A: SymMatrix) -> np.ndarray:
    """All eigenvalues of A with multiplicity, ascending."""
    return _eigvalsh(_as_array(A))


def is_psd(A: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue clears -psd_slack * max(1, ||A||_2)."""
    w = _eigvalsh(_as_array(A))
    return bool(w[0] >= -tol.psd_slack * _spectral_scale(w))


def loewner_leq(A: SymMatrix, B: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Loewner order test A <= B, i.e. B - A positive semidefinite."""
    a, b = _as_array(A), _as_array(B)
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}"
        )
    w = _eigvalsh(b - a)
    return bool(w[0] >= -tol.psd_slack * _spectral_scale(w))


def _fn_calculus_raw(
    fn: Callable[[float], float],
    m: np.ndarray,
    tol: Tolerances,
    label: str = "matrix",
) -> np.ndarray:
    w, q = _eigh(m, label)
    scale = _spectral_scale(w)
    if w[0] < -tol.psd_slack * scale:
        raise NotPSDError(
            f"{label} is not positive semidefinite: min eigenvalue "
            f"{float(w[0]):.6e} below slack {-tol.psd_slack * scale:.3e}",
            min_eigenvalue=float(w[0]),
        )
    w = np.maximum(w, 0.0)
    try:
        fw = np.array([float(fn(float(x))) for x in w])
    except NotPSDError:
        raise
    except Exception as exc:
        raise ValueError(
            f"scalar function evaluation failed on the spectrum {w.tolist()}: {exc}"
        ) from exc
    out = (q * fw) @ q.T
    return (out + out.T) * 0.5


def fn_calculus(
    f: Callable[[float], float], A: SymMatrix, tol: Tolerances = DEFAULT_TOL
) -> SymMatrix:
    """Spectral functional calculus f(A) = Q diag(f(lambda_i)) Q^T.

    Parameters
    ----------
    f : callable
        Scalar function defined on [0, inf).
    A : SymMatrix
        PSD matrix within slack; eigenvalues in [-psd_slack * scale, 0)
        are clipped to 0 before f is applied, so roundoff from congruence
        chains cannot poison square roots and logarithms.
    tol : Tolerances

    Returns
    -------
    SymMatrix
        f applied on the spectrum; its eigenvalues are f of A's (clipped)
        eigenvalues.

    Raises
    ------
    NotPSDError
        If an eigenvalue lies below the negative slack.
    ValueError
        If f fails on some eigenvalue.
    """
    return SymMatrix(_fn_calculus_raw(f, _as_array(A), tol))


def sqrt_psd(A: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Principal square root of a PSD matrix."""
    return fn_calculus(math.sqrt, A, tol)


def inv_pd(A: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Inverse of a positive-definite matrix.

    Raises
    ------
    SingularMatrixError
        If the smallest eigenvalue does not clear psd_slack * max(1, ||A||_2);
        the error carries that eigenvalue.
    """
    w, q = _eigh(_as_array(A))
    if w[0] <= tol.psd_slack * _spectral_scale(w):
        raise SingularMatrixError(
            f"matrix is numerically singular: min eigenvalue {float(w[0]):.6e}",
            min_eigenvalue=float(w[0]),
        )
    out = (q / w) @ q.T
    return SymMatrix(out)


def congruence(C: SymMatrix, X: SymMatrix) -> SymMatrix:
    """Congruence transform C X C."""
    c, x = _as_array(C), _as_array(X)
    if c.shape != x.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {c.shape[0]} vs {x.shape[0]}"
        )
    return SymMatrix(c @ x @ c)


def _regularize_raw(
    g: Callable[[float], np.ndarray], tol: Tolerances
) -> np.ndarray:
    eps = tol.eps0
    prev = np.asarray(g(eps), dtype=float)
    last_distance = None
    while True:
        eps *= 0.5
        if eps < tol.eps_min:
            scale = max(1.0, float(np.linalg.norm(prev)))
            slow_tol = _SLOW_CONVERGENCE_FACTOR * math.sqrt(tol.eps_min) * scale
            if last_distance is not None and last_distance <= slow_tol:
                # Still shrinking, just slower than the Cauchy tolerance;
                # the monotone limit is within O(last step) of the iterate.
                return prev
            raise NonConvergenceError(
                f"regularized limit did not converge by eps_min={tol.eps_min:g}; "
                f"last step distance {last_distance}",
                last=prev,
                distance=last_distance,
            )
        cur = np.asarray(g(eps), dtype=float)
        distance = float(np.linalg.norm(cur - prev))
        if distance <= tol.eq_tol * max(1.0, float(np.linalg.norm(cur))):
            return cur
        prev, last_distance = cur, distance


def regularize_limit(
    g: Callable[[float], SymMatrix], tol: Tolerances = DEFAULT_TOL
) -> SymMatrix:
    """Limit of g(eps) as eps decreases to 0 along eps0 * 2^-k.

    Stops when consecutive iterates agree within eq_tol (relative
    Frobenius) and returns the last iterate.  Sequences converging at a
    square-root rate exhaust the schedule first; they are accepted if the
    final step is small on the sqrt(eps_min) scale, otherwise
    ``NonConvergenceError`` carries the last iterates and their distance.
    """
    return SymMatrix(_regularize_raw(lambda e: _as_array(g(e)), tol))


def matrix_to_dict(A: SymMatrix) -> dict:
    """Matrix file payload: {"dim": n, "data": [n * n reals, row-major]}."""
    return {"dim": A.dim, "data": [float(v) for v in A.data.reshape(-1)]}


def matrix_from_dict(obj: dict) -> SymMatrix:
    """Parse the matrix file payload, warning if asymmetry exceeds 1e-12
    relative before symmetrizing."""
    try:
        dim = int(obj["dim"])
        data = obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix object must have 'dim' and 'data': {exc}") from exc
    if dim < 1:
        raise ValueError(f"matrix dim must be >= 1, got {dim}")
    arr = np.asarray(data, dtype=float)
    if arr.size != dim * dim:
        raise ValueError(
            f"matrix data has {arr.size} entries, expected dim*dim = {dim * dim}"
        )
    arr = arr.reshape(dim, dim)
    asym = np.linalg.norm(arr - arr.T) / max(1.0, np.linalg.norm(arr))
    if asym > ASYMMETRY_WARN_REL:
        warnings.warn(
            f"matrix is asymmetric (relative asymmetry {asym:.3e} > "
            f"{ASYMMETRY_WARN_REL:g}); symmetrizing",
            stacklevel=2,
        )
    return SymMatrix(arr)


def load_matrix(path) -> SymMatrix:
    """Load a matrix from a JSON file in the matrix file format."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return matrix_from_dict(obj)


def save_matrix(A: SymMatrix, path) -> None:
    """Write a matrix to a JSON file in the matrix file format."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_dict(A), fh)
        fh.write("\n")
