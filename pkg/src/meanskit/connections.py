"""Operator connections and Kubo-Ando means as first-class values.

A connection is a binary operation ``(A, B) -> A sigma B`` on PSD matrices
satisfying monotonicity, the transformer inequality, and continuity from
above.  Each connection is encoded by a scalar representing function f via

    A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}

for invertible A, extended to singular A by the decreasing limit over
A + eps*I.  Connection values are immutable and freely shareable across
threads; ``apply`` is reentrant.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    DimensionMismatchError,
    NotPSDError,
    SingularMatrixError,
    SymMatrix,
    Tolerances,
    _eigh,
    _eigvalsh,
    _fn_calculus_raw,
    _regularize_raw,
    _spectral_scale,
)

__all__ = [
    "AUDIT_GRID",
    "BUILTIN_KINDS",
    "WEIGHTED_KINDS",
    "BuiltinConnection",
    "ClassificationRecord",
    "Connection",
    "FunctionConnection",
    "ReprFunction",
    "TransposeConnection",
    "ZeroConnectionError",
    "apply",
    "classify",
    "connection_from_function",
    "is_mean",
    "make_builtin",
    "repr_fn_audit",
    "repr_fn_eval",
    "solve_self_mean_equation",
    "transpose",
]

# Grid used to audit representing functions for monotonicity and concavity.
AUDIT_GRID = tuple(2.0**k for k in range(-10, 11))

# Probe used for the value of a representing function "at 0 by continuity"
# and for the x -> 0 limit of transposed functions.
_ZERO_PROBE = 1e-12

BUILTIN_KINDS = (
    "left_trivial",
    "right_trivial",
    "arithmetic",
    "geometric",
    "harmonic",
    "logarithmic",
    "parallel_sum",
    "sum",
    "zero",
)
WEIGHTED_KINDS = frozenset({"arithmetic", "geometric", "harmonic"})


class ZeroConnectionError(ValueError):
    """The self-mean equation has no positive solution for the zero
    connection."""


@dataclass(frozen=True)
class ReprFunction:
    """A scalar representing function f: [0, inf) -> [0, inf).

    ``f_at_0`` is the value at 0 by continuity; for kernels like the
    logarithmic mean the raw formula is 0/0 there.  ``f_at_1`` decides
    whether the connection is a mean.
    """

    fn: Callable[[float], float]
    f_at_0: float
    f_at_1: float

    def __call__(self, x: float) -> float:
        if x < 0:
            raise ValueError(f"representing functions are defined on [0, inf), got {x}")
        if x == 0:
            return self.f_at_0
        return float(self.fn(x))

    @classmethod
    def from_callable(cls, fn: Callable[[float], float]) -> "ReprFunction":
        return cls(fn=fn, f_at_0=float(fn(_ZERO_PROBE)), f_at_1=float(fn(1.0)))


def _log_mean_value(x: float) -> float:
    # (x - 1)/log x; the 0/0 at x = 1 is bridged with the series for
    # u/log(1+u), since direct division loses digits for |x - 1| < 1e-4.
    u = x - 1.0
    if abs(u) < 1e-4:
        q = 1.0 + u * (-0.5 + u * (1.0 / 3.0 - 0.25 * u))
        return 1.0 / q
    return u / math.log(x)


def _builtin_repr_function(kind: str, weight: float | None) -> ReprFunction:
    if kind == "left_trivial":
        return ReprFunction(lambda x: 1.0, 1.0, 1.0)
    if kind == "right_trivial":
        return ReprFunction(lambda x: x, 0.0, 1.0)
    if kind == "arithmetic":
        a = weight
        return ReprFunction(lambda x: (1.0 - a) + a * x, 1.0 - a, 1.0)
    if kind == "geometric":
        a = weight
        return ReprFunction(lambda x: x**a, 1.0 if a == 0.0 else 0.0, 1.0)
    if kind == "harmonic":
        a = weight
        if a == 0.0:
            return ReprFunction(lambda x: 1.0, 1.0, 1.0)
        return ReprFunction(lambda x: x / ((1.0 - a) * x + a), 0.0, 1.0)
    if kind == "logarithmic":
        return ReprFunction(_log_mean_value, 0.0, 1.0)
    if kind == "parallel_sum":
        return ReprFunction(lambda x: x / (1.0 + x), 0.0, 0.5)
    if kind == "sum":
        return ReprFunction(lambda x: 1.0 + x, 1.0, 2.0)
    if kind == "zero":
        return ReprFunction(lambda x: 0.0, 0.0, 0.0)
    raise ValueError(f"unknown builtin kind {kind!r}; expected one of {BUILTIN_KINDS}")


class Connection(ABC):
    """A binary operation on PSD matrices encoded by its representing
    function."""

    @abstractmethod
    def fn(self, x: float) -> float:
        """Value of the representing function at x >= 0."""

    @abstractmethod
    def _apply_raw(
        self, a: np.ndarray, b: np.ndarray, tol: Tolerances
    ) -> np.ndarray:
        """Apply on raw arrays; used internally by the verification suites."""

    def apply(
        self, A: SymMatrix, B: SymMatrix, tol: Tolerances = DEFAULT_TOL
    ) -> SymMatrix:
        if A.dim != B.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {A.dim} vs {B.dim}"
            )
        return SymMatrix(self._apply_raw(A.data, B.data, tol))

    def __call__(self, A: SymMatrix, B: SymMatrix, tol: Tolerances = DEFAULT_TOL):
        return self.apply(A, B, tol)


def _congruence_apply(
    w: np.ndarray,
    q: np.ndarray,
    b: np.ndarray,
    fn: Callable[[float], float],
    tol: Tolerances,
) -> np.ndarray:
    sw = np.sqrt(w)
    s = (q * sw) @ q.T
    r = (q * (1.0 / sw)) @ q.T
    m = r @ b @ r
    m = (m + m.T) * 0.5
    f_of_m = _fn_calculus_raw(fn, m, tol, label="transformed right operand")
    x = s @ f_of_m @ s
    return (x + x.T) * 0.5


def _check_operand(m: np.ndarray, tol: Tolerances, label: str) -> None:
    w = _eigvalsh(m, label)
    if w[0] < -tol.psd_slack * _spectral_scale(w):
        raise NotPSDError(
            f"{label} is not positive semidefinite "
            f"(min eigenvalue {float(w[0]):.6e})",
            min_eigenvalue=float(w[0]),
        )


class _FunctionBackedConnection(Connection):
    """Shared apply machinery for connections given by a scalar function."""

    def _apply_raw(self, a, b, tol):
        w, q = _eigh(a, "left operand")
        scale = _spectral_scale(w)
        if w[0] < -tol.psd_slack * scale:
            raise NotPSDError(
                f"left operand is not positive semidefinite "
                f"(min eigenvalue {float(w[0]):.6e})",
                min_eigenvalue=float(w[0]),
            )
        fn = self.fn
        if w[0] > tol.psd_slack * scale:
            try:
                return _congruence_apply(w, q, b, fn, tol)
            except NotPSDError:
                _check_operand(b, tol, "right operand")
                raise
        # Singular left operand: clip its spectrum to [0, inf) and take the
        # decreasing limit over a joint shift of both operands.
        wc = np.maximum(w, 0.0)
        eye = np.eye(a.shape[0])

        def g(eps):
            return _congruence_apply(wc + eps, q, b + eps * eye, fn, tol)

        try:
            return _regularize_raw(g, tol)
        except NotPSDError:
            _check_operand(b, tol, "right operand")
            raise


class BuiltinConnection(_FunctionBackedConnection):
    """One of the named connections, with exact representing-function
    constants at 0 and 1.

    The trivial projections (left/right trivial, and weighted kinds at
    weight 0 or 1) are applied by definition rather than through the
    congruence formula: their betweenness margins are exactly zero, so the
    formula's conditioning-amplified roundoff would decide a sign that is
    mathematically fixed.
    """

    __slots__ = ("kind", "weight", "repr_function", "_projects_to")

    def __init__(self, kind: str, weight: float | None = None):
        if kind not in BUILTIN_KINDS:
            raise ValueError(
                f"unknown builtin kind {kind!r}; expected one of {BUILTIN_KINDS}"
            )
        if kind in WEIGHTED_KINDS:
            if weight is None:
                raise ValueError(f"builtin {kind!r} requires a weight in [0, 1]")
            weight = float(weight)
            if not 0.0 <= weight <= 1.0:
                raise ValueError(f"weight out of range [0, 1]: {weight}")
        else:
            weight = None
        self.kind = kind
        self.weight = weight
        self.repr_function = _builtin_repr_function(kind, weight)
        if kind == "left_trivial" or weight == 0.0:
            self._projects_to = "left"
        elif kind == "right_trivial" or weight == 1.0:
            self._projects_to = "right"
        else:
            self._projects_to = None

    def fn(self, x: float) -> float:
        return self.repr_function(x)

    def _apply_raw(self, a, b, tol):
        if self._projects_to is None:
            return super()._apply_raw(a, b, tol)
        _check_operand(a, tol, "left operand")
        _check_operand(b, tol, "right operand")
        return (a if self._projects_to == "left" else b).copy()

    def __repr__(self) -> str:
        if self.weight is None:
            return f"BuiltinConnection({self.kind!r})"
        return f"BuiltinConnection({self.kind!r}, weight={self.weight})"


class FunctionConnection(_FunctionBackedConnection):
    """Connection defined by a user-supplied representing function.

    Operator monotonicity of the function is accepted on trust; it is only
    audited on the sample grid by ``repr_fn_audit``.
    """

    __slots__ = ("repr_function",)

    def __init__(self, f):
        if isinstance(f, ReprFunction):
            self.repr_function = f
        else:
            self.repr_function = ReprFunction.from_callable(f)

    def fn(self, x: float) -> float:
        return self.repr_function(x)

    def __repr__(self) -> str:
        return f"FunctionConnection({self.repr_function!r})"


class TransposeConnection(Connection):
    """The transpose (A, B) -> B sigma A of an inner connection; its
    representing function is g(x) = x * f(1/x)."""

    __slots__ = ("inner",)

    def __init__(self, inner: Connection):
        self.inner = inner

    def fn(self, x: float) -> float:
        if x < 0:
            raise ValueError(f"representing functions are defined on [0, inf), got {x}")
        if x == 0:
            x = _ZERO_PROBE
        return x * self.inner.fn(1.0 / x)

    def _apply_raw(self, a, b, tol):
        return self.inner._apply_raw(b, a, tol)

    def __repr__(self) -> str:
        return f"TransposeConnection({self.inner!r})"


def make_builtin(kind: str, weight: float | None = None) -> BuiltinConnection:
    """Builtin connection by kind; weight applies to the weighted kinds
    (arithmetic, geometric, harmonic) and is ignored otherwise."""
    return BuiltinConnection(kind, weight)


def connection_from_function(f) -> FunctionConnection:
    """Connection from a representing function (callable or ReprFunction)."""
    return FunctionConnection(f)


def transpose(conn: Connection) -> TransposeConnection:
    """The connection (A, B) -> B sigma A."""
    return TransposeConnection(conn)


def apply(
    conn: Connection, A: SymMatrix, B: SymMatrix, tol: Tolerances = DEFAULT_TOL
) -> SymMatrix:
    """Evaluate A sigma B.

    For numerically positive-definite A this is the congruence formula;
    singular A routes through the decreasing epsilon-limit.  The result is
    PSD within slack, and for dim 1 equals the scalar a * f(b/a) (or the
    epsilon-limit when a = 0).
    """
    return conn.apply(A, B, tol)


def repr_fn_eval(conn: Connection, x: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Representing-function value f(x) for x >= 0.

    Consistent with ``apply`` on 1x1 matrices: f(x) = the single entry of
    [1] sigma [x].
    """
    x = float(x)
    if x < 0:
        raise ValueError(f"representing functions are defined on [0, inf), got {x}")
    return float(conn.fn(x))


def is_mean(conn: Connection, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff f(1) = 1 within eq_tol (fixed-point property)."""
    return abs(conn.fn(1.0) - 1.0) <= tol.eq_tol


@dataclass(frozen=True)
class ClassificationRecord:
    """Outcome of classifying a connection.

    Strictness applies to means only; for non-means the three strictness
    fields are None (not applicable).
    """

    is_zero: bool
    is_mean: bool
    is_left_trivial: bool
    is_right_trivial: bool
    strict_left: bool | None
    strict_right: bool | None
    strict: bool | None

    def to_dict(self) -> dict:
        return asdict(self)


def classify(conn: Connection, tol: Tolerances = DEFAULT_TOL) -> ClassificationRecord:
    """Classify a connection from two probes of its representing function.

    f(1) decides zero-ness and mean-ness.  For a mean, a single probe at
    x = 2 decides triviality: a non-trivial mean cannot have f(2) = 1 or
    f(2) = 2, by the rigidity of operator monotone functions that are
    constant (or the identity) on an interval.
    """
    f1 = float(conn.fn(1.0))
    f2 = float(conn.fn(2.0))
    zero = f1 <= tol.eq_tol
    mean = abs(f1 - 1.0) <= tol.eq_tol
    left = mean and abs(f2 - 1.0) <= tol.eq_tol
    right = mean and abs(f2 - 2.0) <= tol.eq_tol
    if mean:
        strict_left = not left
        strict_right = not right
        strict = strict_left and strict_right
    else:
        strict_left = strict_right = strict = None
    return ClassificationRecord(
        is_zero=zero,
        is_mean=mean,
        is_left_trivial=left,
        is_right_trivial=right,
        strict_left=strict_left,
        strict_right=strict_right,
        strict=strict,
    )


def solve_self_mean_equation(
    conn: Connection, A: SymMatrix, tol: Tolerances = DEFAULT_TOL
) -> SymMatrix:
    """Unique positive-definite solution X of X sigma X = A.

    By congruence invariance X sigma X = f(1) X, so X = A / f(1); for a
    mean X = A.
    """
    w = _eigvalsh(A.data, "left operand")
    if w[0] <= tol.psd_slack * _spectral_scale(w):
        raise SingularMatrixError(
            f"self-mean equation requires positive-definite A "
            f"(min eigenvalue {float(w[0]):.6e})",
            min_eigenvalue=float(w[0]),
        )
    f1 = float(conn.fn(1.0))
    if f1 <= tol.eq_tol:
        raise ZeroConnectionError(
            "the zero connection maps every X to 0; X sigma X = A has no "
            "positive solution"
        )
    return A * (1.0 / f1)


def repr_fn_audit(target, grid=AUDIT_GRID) -> dict:
    """Sampled audit of a representing function on a grid.

    Returns margins (nonnegative means the property holds on the sample):

    - ``min_value``: smallest sampled value (nonnegativity),
    - ``min_increment``: smallest f(x_{i+1}) - f(x_i) over consecutive grid
      points (monotonicity),
    - ``min_concavity_gap``: smallest f((x+y)/2) - (f(x)+f(y))/2 over grid
      pairs (midpoint concavity).
    """
    f = target.fn if isinstance(target, Connection) else target
    xs = sorted(float(x) for x in grid)
    values = [float(f(x)) for x in xs]
    min_value = min(values)
    min_increment = min(
        (values[i + 1] - values[i] for i in range(len(xs) - 1)), default=0.0
    )
    min_gap = math.inf
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            mid = float(f((xs[i] + xs[j]) / 2.0))
            min_gap = min(min_gap, mid - (values[i] + values[j]) / 2.0)
    if min_gap is math.inf:
        min_gap = 0.0
    return {
        "min_value": min_value,
        "min_increment": min_increment,
        "min_concavity_gap": min_gap,
    }
