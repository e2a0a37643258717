"""Finite Borel measures on [0, 1] and their integral representations.

A measure mu turns into a connection by spreading its mass over weighted
harmonic interpolants,

    A sigma B = integral over [0,1] of (A !_t B) d mu(t),

with scalar kernel 1 !_t x = x / ((1-t) x + t).  Atoms at t = 0 and t = 1
contribute A and B directly; a density is integrated by a precomputed
quadrature plan.  Measures are stored unnormalized: normalization (total
mass 1) is exactly the property of being a mean, and connections such as
the sum need mass 2.  Measures and plans are immutable after construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .connections import Connection
from .linalg import NotPSDError, _eigh, _regularize_raw, _spectral_scale

__all__ = [
    "BorelMeasure",
    "Density",
    "MeasureConnection",
    "QuadraturePlan",
    "UnsupportedMeasureError",
    "arcsine_density",
    "connection_from_measure",
    "load_measure",
    "measure_from_dict",
    "measure_of_builtin",
    "measure_to_dict",
    "parse_atoms",
    "repr_fn_from_measure",
    "save_measure",
    "total_mass",
    "weighted_harmonic_kernel",
]

DEFAULT_QUADRATURE_NODES = 256


class UnsupportedMeasureError(ValueError):
    """No closed-form associated measure is available for this builtin."""


@dataclass(frozen=True)
class QuadraturePlan:
    """Quadrature nodes and weights on the open interval (0, 1).

    ``absorbs_density`` marks plans whose weights already include the
    density they were transformed for, so the density function must not be
    evaluated again at the nodes.
    """

    scheme: str
    nodes: np.ndarray
    weights: np.ndarray
    absorbs_density: bool = False

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.size < 1 or nodes.shape != weights.shape:
            raise ValueError("plan needs matching 1-d nodes and weights, n >= 1")
        if np.any(nodes <= 0.0) or np.any(nodes >= 1.0):
            raise ValueError("quadrature nodes must lie strictly inside (0, 1)")
        if np.any(weights <= 0.0):
            raise ValueError("quadrature weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return int(self.nodes.size)

    @classmethod
    def gauss_legendre(cls, n: int) -> "QuadraturePlan":
        """n-point Gauss-Legendre rule mapped to (0, 1)."""
        x, w = np.polynomial.legendre.leggauss(int(n))
        return cls("gauss_legendre", (x + 1.0) / 2.0, w / 2.0)

    @classmethod
    def transformed_arcsine(cls, n: int) -> "QuadraturePlan":
        """Rule for the arcsine weight 1/(pi sqrt(t(1-t))).

        The substitution t = sin^2(theta) turns the weighted integral into
        (2/pi) * integral over [0, pi/2], removing the endpoint
        singularities exactly; Gauss-Legendre is then applied in theta.
        """
        x, w = np.polynomial.legendre.leggauss(int(n))
        theta = (x + 1.0) * (math.pi / 4.0)
        nodes = np.sin(theta) ** 2
        weights = w * (math.pi / 4.0) * (2.0 / math.pi)
        return cls("transformed_arcsine", nodes, weights, absorbs_density=True)

    @classmethod
    def explicit(cls, nodes, weights) -> "QuadraturePlan":
        return cls("explicit", np.asarray(nodes, float), np.asarray(weights, float))


@dataclass(frozen=True)
class Density:
    """A density on (0, 1) together with the plan that integrates it."""

    rho: Callable[[float], float]
    plan: QuadraturePlan


def arcsine_density(t: float) -> float:
    """rho(t) = 1 / (pi sqrt(t (1-t))) on (0, 1)."""
    return 1.0 / (math.pi * math.sqrt(t * (1.0 - t)))


@dataclass(frozen=True)
class BorelMeasure:
    """Atoms on [0, 1] plus an optional density with a quadrature plan."""

    atoms: tuple = ()
    density: Density | None = None

    def __post_init__(self):
        cleaned = tuple((float(t), float(w)) for t, w in self.atoms)
        for t, w in cleaned:
            if not 0.0 <= t <= 1.0:
                raise ValueError(f"atom location {t} outside [0, 1]")
            if not w > 0.0:
                raise ValueError(f"atom weight {w} must be positive")
        if len({t for t, _ in cleaned}) != len(cleaned):
            raise ValueError("atom locations must be distinct")
        object.__setattr__(self, "atoms", cleaned)

    def density_nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Effective (nodes, weights) for the density part; the density is
        folded into the weights unless the plan already absorbs it."""
        if self.density is None:
            return np.empty(0), np.empty(0)
        plan = self.density.plan
        if plan.absorbs_density:
            return plan.nodes, plan.weights
        rho = self.density.rho
        w = plan.weights * np.array([float(rho(float(t))) for t in plan.nodes])
        return plan.nodes, w


def total_mass(mu: BorelMeasure) -> float:
    """mu([0, 1]): atom weights plus the quadrature of the density."""
    mass = sum(w for _, w in mu.atoms)
    _, w = mu.density_nodes()
    return float(mass + w.sum())


def weighted_harmonic_kernel(x: float, t: float) -> float:
    """1 !_t x = x / ((1-t) x + t), with the boundary values t=0 -> 1,
    t=1 -> x, and x=0 -> 0 for t > 0 (1 for t = 0)."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"kernel parameter t = {t} outside [0, 1]")
    if x < 0:
        raise ValueError(f"kernel argument x = {x} must be nonnegative")
    if t == 0.0:
        return 1.0
    if t == 1.0:
        return float(x)
    if x == 0.0:
        return 0.0
    return x / ((1.0 - t) * x + t)


def _kernel_vec(x: float, ts: np.ndarray) -> np.ndarray:
    # ts from quadrature plans is strictly interior, so only x = 0 needs care.
    if x == 0.0:
        return np.where(ts == 0.0, 1.0, 0.0)
    return x / ((1.0 - ts) * x + ts)


def repr_fn_from_measure(mu: BorelMeasure, x: float) -> float:
    """f(x) = integral of (1 !_t x) d mu(t): atoms plus quadrature."""
    x = float(x)
    if x < 0:
        raise ValueError(f"representing functions are defined on [0, inf), got {x}")
    value = sum(w * weighted_harmonic_kernel(x, t) for t, w in mu.atoms)
    ts, ws = mu.density_nodes()
    if ts.size:
        value += float(_kernel_vec(x, ts) @ ws)
    return float(value)


def _sym(a: np.ndarray) -> np.ndarray:
    return (a + a.T) * 0.5


class MeasureConnection(Connection):
    """Connection realized by integrating matrix weighted-harmonic means
    ((1-t) A^{-1} + t B^{-1})^{-1} against a measure.

    Atoms at t = 0 and t = 1 bypass inversion and contribute A and B
    directly; singular operands route through the epsilon-limit.
    """

    __slots__ = ("measure", "_w0", "_w1", "_ts", "_ws")

    def __init__(self, measure: BorelMeasure):
        self.measure = measure
        w0 = 0.0
        w1 = 0.0
        interior = []
        for t, w in measure.atoms:
            if t == 0.0:
                w0 += w
            elif t == 1.0:
                w1 += w
            else:
                interior.append((t, w))
        ts, ws = measure.density_nodes()
        all_t = np.concatenate([np.array([t for t, _ in interior]), ts])
        all_w = np.concatenate([np.array([w for _, w in interior]), ws])
        self._w0 = w0
        self._w1 = w1
        self._ts = all_t
        self._ws = all_w

    def fn(self, x: float) -> float:
        return repr_fn_from_measure(self.measure, x)

    def _mix(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self._w0 * a + self._w1 * b
        if self._ts.size:
            ai = _sym(np.linalg.inv(a))
            bi = _sym(np.linalg.inv(b))
            t = self._ts[:, None, None]
            blend = (1.0 - t) * ai + t * bi
            mixed = np.linalg.inv(blend)
            out = out + np.tensordot(self._ws, mixed, axes=1)
        return _sym(out)

    def _apply_raw(self, a, b, tol):
        wa, qa = _eigh(a, "left operand")
        wb, qb = _eigh(b, "right operand")
        if wa[0] < -tol.psd_slack * _spectral_scale(wa):
            raise NotPSDError(
                f"left operand is not positive semidefinite "
                f"(min eigenvalue {float(wa[0]):.6e})",
                min_eigenvalue=float(wa[0]),
            )
        if wb[0] < -tol.psd_slack * _spectral_scale(wb):
            raise NotPSDError(
                f"right operand is not positive semidefinite "
                f"(min eigenvalue {float(wb[0]):.6e})",
                min_eigenvalue=float(wb[0]),
            )
        pd_a = wa[0] > tol.psd_slack * _spectral_scale(wa)
        pd_b = wb[0] > tol.psd_slack * _spectral_scale(wb)
        if (pd_a and pd_b) or self._ts.size == 0:
            # Purely boundary measures need no inversion at all.
            return self._mix(a, b)
        wac = np.maximum(wa, 0.0)
        wbc = np.maximum(wb, 0.0)

        def g(eps):
            a_eps = (qa * (wac + eps)) @ qa.T
            b_eps = (qb * (wbc + eps)) @ qb.T
            return self._mix(_sym(a_eps), _sym(b_eps))

        return _regularize_raw(g, tol)

    def __repr__(self) -> str:
        return f"MeasureConnection({self.measure!r})"


def connection_from_measure(mu: BorelMeasure) -> MeasureConnection:
    """The connection with associated measure mu."""
    return MeasureConnection(mu)


def measure_of_builtin(
    kind: str, weight: float | None = None, nodes: int = DEFAULT_QUADRATURE_NODES
) -> BorelMeasure:
    """Associated measure of a builtin connection, where known in closed
    form.

    Supported: left/right trivial (Dirac at 0 / 1), arithmetic(a)
    ((1-a) delta_0 + a delta_1), harmonic(a) (delta_a), and geometric(1/2)
    (the arcsine density).  The geometric weights other than 1/2 and the
    logarithmic mean have no closed-form measure here and raise.
    """
    if kind == "left_trivial":
        return BorelMeasure(atoms=((0.0, 1.0),))
    if kind == "right_trivial":
        return BorelMeasure(atoms=((1.0, 1.0),))
    if kind == "arithmetic":
        if weight is None or not 0.0 <= weight <= 1.0:
            raise UnsupportedMeasureError(
                f"arithmetic needs a weight in [0, 1], got {weight}"
            )
        atoms = []
        if 1.0 - weight > 0.0:
            atoms.append((0.0, 1.0 - weight))
        if weight > 0.0:
            atoms.append((1.0, float(weight)))
        return BorelMeasure(atoms=tuple(atoms))
    if kind == "harmonic":
        if weight is None or not 0.0 <= weight <= 1.0:
            raise UnsupportedMeasureError(
                f"harmonic needs a weight in [0, 1], got {weight}"
            )
        return BorelMeasure(atoms=((float(weight), 1.0),))
    if kind == "geometric":
        if weight is None or abs(weight - 0.5) > 1e-12:
            raise UnsupportedMeasureError(
                "only the weight-1/2 geometric mean has a closed-form "
                f"measure (the arcsine density); got weight {weight}"
            )
        return BorelMeasure(
            density=Density(arcsine_density, QuadraturePlan.transformed_arcsine(nodes))
        )
    raise UnsupportedMeasureError(
        f"no closed-form associated measure for builtin {kind!r}"
    )


def measure_to_dict(mu: BorelMeasure) -> dict:
    """Measure file payload: {"atoms": [[t, w], ...], "density": null |
    {"scheme": "arcsine", "n": n}}."""
    if mu.density is None:
        density = None
    elif mu.density.plan.scheme == "transformed_arcsine":
        density = {"scheme": "arcsine", "n": mu.density.plan.n}
    else:
        raise ValueError(
            "only the arcsine density is serializable; use explicit atoms "
            "for custom measures"
        )
    return {"atoms": [[t, w] for t, w in mu.atoms], "density": density}


def measure_from_dict(obj: dict) -> BorelMeasure:
    atoms = tuple((float(t), float(w)) for t, w in obj.get("atoms", ()))
    density_obj = obj.get("density")
    density = None
    if density_obj is not None:
        scheme = density_obj.get("scheme")
        if scheme != "arcsine":
            raise ValueError(f"unsupported density scheme {scheme!r}")
        n = int(density_obj.get("n", DEFAULT_QUADRATURE_NODES))
        density = Density(arcsine_density, QuadraturePlan.transformed_arcsine(n))
    return BorelMeasure(atoms=atoms, density=density)


def load_measure(path) -> BorelMeasure:
    with open(path, "r", encoding="utf-8") as fh:
        return measure_from_dict(json.load(fh))


def save_measure(mu: BorelMeasure, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(measure_to_dict(mu), fh)
        fh.write("\n")


def parse_atoms(spec: str) -> tuple:
    """Parse the inline atom syntax "t:w,t:w", e.g. "0:0.5,1:0.5"."""
    atoms = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            t_str, w_str = part.split(":")
            atoms.append((float(t_str), float(w_str)))
        except ValueError as exc:
            raise ValueError(
                f"bad atom {part!r}; expected 't:w' with numeric t and w"
            ) from exc
    if not atoms:
        raise ValueError("no atoms found in spec")
    return tuple(atoms)
