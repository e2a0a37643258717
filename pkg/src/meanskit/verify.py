"""Randomized property suites for connections and a fixed counterexample
corpus on singular matrices.

Each suite draws its trials deterministically: trial k derives its
generator state from (seed, stream offset + k), so serial runs, repeated
runs, and any parallel split over trials produce identical reports.
Loewner assertions allow a slack of psd_slack * max(1, operand scale) on
the smallest eigenvalue of differences; equality assertions use eq_tol
relative Frobenius; strict-distinctness assertions use a separate margin.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .connections import (
    AUDIT_GRID,
    Connection,
    classify,
    is_mean,
    make_builtin,
)
from .linalg import DEFAULT_TOL, SymMatrix, Tolerances, _eigvalsh

__all__ = [
    "COUNTEREXAMPLE_TOL",
    "REMARK_A",
    "REMARK_B",
    "Report",
    "SUITES",
    "TrialConfig",
    "check_axioms",
    "check_betweenness",
    "check_continuity_from_above",
    "check_positivity",
    "check_strictness_and_order",
    "random_ordered_pair",
    "random_pd",
    "random_psd",
    "run_counterexamples",
    "standard_battery",
    "standard_means",
]

# The 2x2 pair behind every boundary counterexample: orthogonal rank-one
# projections, PSD but singular and non-comparable.
REMARK_A = SymMatrix([[1.0, 0.0], [0.0, 0.0]])
REMARK_B = SymMatrix([[0.0, 0.0], [0.0, 1.0]])

# The geometric mean of the pair above vanishes only in the epsilon-limit,
# which converges at a square-root rate; assertions about it use this
# tolerance instead of eq_tol.
COUNTEREXAMPLE_TOL = 1e-5

# Base conditioning shift for the continuity suite: the n = 40 convergence
# assertion at eq_tol needs derivative-bounded means, which ill-conditioned
# bases do not provide (square-root kernels steepen near 0).
_CONTINUITY_SHIFT = 0.2

# Conditioning shift for the axiom suite's operands and congruence
# transforms.  Equality assertions at eq_tol = 1e-8 tolerate condition
# numbers up to ~1e6 in float64; C A C chains square the transform's
# condition number, so draws come from the PD interior.
_AXIOMS_SHIFT = 0.5

# Checkpoints for the decreasing sequences A + 2^-n P; monotonicity along a
# subsampled grid implies it along the full one by transitivity.
_CONTINUITY_STEPS = tuple(range(0, 13)) + tuple(range(14, 25, 2)) + (28, 32, 36, 40)

_MAX_WITNESSES = 5


@dataclass(frozen=True)
class TrialConfig:
    """Shared configuration for the randomized suites."""

    dims: tuple = (1, 2, 3, 5, 8)
    trials: int = 500
    seed: int = 42
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError("dims must be nonempty with every entry >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))


@dataclass
class Report:
    """Structured outcome of a property suite."""

    suite: str
    trials: int
    violations: int
    worst_margin: float
    witnesses: list = field(default_factory=list)
    seed: int = 0
    elapsed: float = 0.0

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "trials": self.trials,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "witnesses": self.witnesses,
            "seed": self.seed,
        }
        if include_elapsed:
            out["elapsed"] = self.elapsed
        return out


def _trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def random_psd(dim: int, rng: np.random.Generator) -> SymMatrix:
    """G G^T for G with independent standard-normal entries."""
    g = rng.standard_normal((dim, dim))
    return SymMatrix(g @ g.T)


def random_pd(
    dim: int, rng: np.random.Generator, tol: Tolerances = DEFAULT_TOL
) -> SymMatrix:
    """random_psd plus a 10 * psd_slack identity shift, so the result is
    numerically positive definite."""
    g = rng.standard_normal((dim, dim))
    return SymMatrix(g @ g.T + 10.0 * tol.psd_slack * np.eye(dim))


def random_ordered_pair(
    dim: int, rng: np.random.Generator, tol: Tolerances = DEFAULT_TOL
) -> tuple[SymMatrix, SymMatrix]:
    """(A, A + G G^T): the Loewner order A <= B holds by construction."""
    a = random_pd(dim, rng, tol)
    gap = random_psd(dim, rng)
    return a, SymMatrix(a.data + gap.data)


def _sym(a: np.ndarray) -> np.ndarray:
    return (a + a.T) * 0.5


def _congr(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    return _sym(c @ x @ c)


def _loewner_margin(p: np.ndarray, q: np.ndarray, tol: Tolerances) -> float:
    """Margin for p <= q; nonnegative means the order holds within slack."""
    w = _eigvalsh(q - p)
    scale = max(1.0, float(np.linalg.norm(p)), float(np.linalg.norm(q)))
    return float(w[0]) + tol.psd_slack * scale


def _equality_margin(p: np.ndarray, q: np.ndarray, tol: Tolerances) -> float:
    scale = max(1.0, float(np.linalg.norm(q)))
    return tol.eq_tol * scale - float(np.linalg.norm(p - q))


def _strict_margin(w_min: float) -> float:
    """Margin for a strict > 0 requirement on an eigenvalue."""
    if w_min > 0.0:
        return w_min
    return min(w_min, -np.finfo(float).tiny)


class _SuiteRecorder:
    def __init__(self, suite: str, seed: int):
        self.suite = suite
        self.seed = seed
        self.trials = 0
        self.violations = 0
        self.worst = math.inf
        self.witnesses = []

    def add_trial(self, index, dim, checks, inputs_factory=None):
        self.trials += 1
        failing = []
        for name, margin in checks:
            margin = float(margin)
            if math.isnan(margin):
                margin = -math.inf
            self.worst = min(self.worst, margin)
            if margin < 0.0:
                failing.append((name, margin))
        if failing:
            self.violations += 1
            if len(self.witnesses) < _MAX_WITNESSES:
                witness = {
                    "trial": index,
                    "dim": dim,
                    "failed": [
                        {"property": name, "margin": margin}
                        for name, margin in failing
                    ],
                }
                if inputs_factory is not None:
                    witness["inputs"] = inputs_factory()
                self.witnesses.append(witness)

    def add_error(self, index, dim, exc, inputs_factory=None):
        self.trials += 1
        self.violations += 1
        self.worst = min(self.worst, -math.inf)
        if len(self.witnesses) < _MAX_WITNESSES:
            witness = {
                "trial": index,
                "dim": dim,
                "error": f"{type(exc).__name__}: {exc}",
            }
            if inputs_factory is not None:
                witness["inputs"] = inputs_factory()
            self.witnesses.append(witness)

    def report(self, elapsed: float) -> Report:
        if self.worst == math.inf:
            worst = 0.0
        elif math.isfinite(self.worst):
            worst = self.worst
        else:
            worst = -1e308
        return Report(
            suite=self.suite,
            trials=self.trials,
            violations=self.violations,
            worst_margin=float(worst),
            witnesses=self.witnesses,
            seed=self.seed,
            elapsed=elapsed,
        )


def _matrix_payload(**named) -> dict:
    return {name: value.tolist() for name, value in named.items()}


def check_axioms(conn: Connection, cfg: TrialConfig = TrialConfig()) -> Report:
    """Monotonicity, the transformer inequality, congruence invariance for
    positive-definite transforms, and dim-1 scalar consistency."""
    rec = _SuiteRecorder("axioms", cfg.seed)
    tol = cfg.tol
    start = time.perf_counter()
    for index in range(cfg.trials):
        rng = _trial_rng(cfg.seed, index)
        dim = cfg.dims[index % len(cfg.dims)]
        shift = _AXIOMS_SHIFT * np.eye(dim)
        a = random_psd(dim, rng).data + shift
        c = a + random_psd(dim, rng).data
        b = random_psd(dim, rng).data + shift
        d = b + random_psd(dim, rng).data
        c_ineq = random_psd(dim, rng).data + shift
        c_pd = random_psd(dim, rng).data + shift
        s = float(rng.uniform(0.05, 3.0))
        u = float(rng.uniform(0.05, 3.0))

        def inputs():
            return _matrix_payload(A=a, B=b, C=c, D=d, C_ineq=c_ineq, C_pd=c_pd)

        try:
            x_ab = conn._apply_raw(a, b, tol)
            x_cd = conn._apply_raw(c, d, tol)
            checks = [("monotonicity", _loewner_margin(x_ab, x_cd, tol))]
            lhs = _congr(c_ineq, x_ab)
            rhs = conn._apply_raw(_congr(c_ineq, a), _congr(c_ineq, b), tol)
            checks.append(("transformer_inequality", _loewner_margin(lhs, rhs, tol)))
            lhs_pd = _congr(c_pd, x_ab)
            rhs_pd = conn._apply_raw(_congr(c_pd, a), _congr(c_pd, b), tol)
            checks.append(("congruence_equality", _equality_margin(lhs_pd, rhs_pd, tol)))
            got = conn._apply_raw(np.array([[s]]), np.array([[u]]), tol)[0, 0]
            expected = s * conn.fn(u / s)
            checks.append(
                (
                    "scalar_consistency",
                    tol.eq_tol * max(1.0, abs(expected)) - abs(got - expected),
                )
            )
        except Exception as exc:
            rec.add_error(index, dim, exc, inputs)
            continue
        rec.add_trial(index, dim, checks, inputs)
    return rec.report(time.perf_counter() - start)


def check_continuity_from_above(
    conn: Connection, cfg: TrialConfig = TrialConfig()
) -> Report:
    """Decreasing sequences A + 2^-n P, B + 2^-n Q: the connection values
    must decrease in the Loewner order and converge to the value at the
    base pair by n = 40."""
    rec = _SuiteRecorder("continuity", cfg.seed)
    tol = cfg.tol
    start = time.perf_counter()
    for index in range(cfg.trials):
        rng = _trial_rng(cfg.seed, index)
        dim = cfg.dims[index % len(cfg.dims)]
        shift = _CONTINUITY_SHIFT * np.eye(dim)
        a = random_psd(dim, rng).data + shift
        b = random_psd(dim, rng).data + shift
        p = random_psd(dim, rng).data
        q = random_psd(dim, rng).data

        def inputs():
            return _matrix_payload(A=a, B=b, P=p, Q=q)

        try:
            target = conn._apply_raw(a, b, tol)
            checks = []
            prev = None
            for n in _CONTINUITY_STEPS:
                scale_n = 2.0**-n
                x_n = conn._apply_raw(a + scale_n * p, b + scale_n * q, tol)
                if prev is not None:
                    checks.append(
                        ("loewner_nonincreasing", _loewner_margin(x_n, prev, tol))
                    )
                prev = x_n
            checks.append(("limit_reached", _equality_margin(prev, target, tol)))
        except Exception as exc:
            rec.add_error(index, dim, exc, inputs)
            continue
        rec.add_trial(index, dim, checks, inputs)
    return rec.report(time.perf_counter() - start)


def check_positivity(conn: Connection, cfg: TrialConfig = TrialConfig()) -> Report:
    """For the zero connection, everything must be exactly zero; otherwise
    positive-definite operands must give a positive-definite value, and the
    one-sided actions against the identity are bounded below through the
    representing function and its transpose."""
    rec = _SuiteRecorder("positivity", cfg.seed)
    tol = cfg.tol
    zero_conn = conn.fn(1.0) <= tol.eq_tol
    start = time.perf_counter()
    for index in range(cfg.trials):
        rng = _trial_rng(cfg.seed, index)
        dim = cfg.dims[index % len(cfg.dims)]
        a = random_pd(dim, rng, tol).data
        b = random_pd(dim, rng, tol).data
        eye = np.eye(dim)

        def inputs():
            return _matrix_payload(A=a, B=b)

        try:
            x = conn._apply_raw(a, b, tol)
            if zero_conn:
                norm = float(np.linalg.norm(x))
                checks = [("zero_everywhere", 0.0 if norm == 0.0 else -norm)]
            else:
                checks = [("strict_positivity", _strict_margin(float(_eigvalsh(x)[0])))]
                spec_a = _eigvalsh(a)
                f_bound = min(conn.fn(float(v)) for v in np.maximum(spec_a, 0.0))
                g_bound = min(
                    float(v) * conn.fn(1.0 / float(v)) for v in spec_a if v > 0
                )
                x_ia = conn._apply_raw(eye, a, tol)
                x_ai = conn._apply_raw(a, eye, tol)
                slack = tol.eq_tol * max(1.0, f_bound)
                checks.append(
                    ("identity_left_bound", float(_eigvalsh(x_ia)[0]) - f_bound + slack)
                )
                slack_g = tol.eq_tol * max(1.0, g_bound)
                checks.append(
                    ("identity_right_bound", float(_eigvalsh(x_ai)[0]) - g_bound + slack_g)
                )
        except Exception as exc:
            rec.add_error(index, dim, exc, inputs)
            continue
        rec.add_trial(index, dim, checks, inputs)
    return rec.report(time.perf_counter() - start)


def check_betweenness(conn: Connection, cfg: TrialConfig = TrialConfig()) -> Report:
    """For ordered pairs A <= B: A <= A sigma B <= B, the operator-norm
    chain, and the scalar betweenness bands of the representing function on
    the audit grid.  Means pass; non-means violate (they must, since
    betweenness characterizes means)."""
    rec = _SuiteRecorder("betweenness", cfg.seed)
    tol = cfg.tol
    grid_checks = []
    for t in AUDIT_GRID:
        ft = conn.fn(float(t))
        slack = tol.eq_tol * max(1.0, t)
        if t >= 1.0:
            grid_checks.append((f"grid_lower_x={t:g}", ft - 1.0 + slack))
            grid_checks.append((f"grid_upper_x={t:g}", t - ft + slack))
        else:
            grid_checks.append((f"grid_lower_x={t:g}", ft - t + slack))
            grid_checks.append((f"grid_upper_x={t:g}", 1.0 - ft + slack))
    start = time.perf_counter()
    for index in range(cfg.trials):
        rng = _trial_rng(cfg.seed, index)
        dim = cfg.dims[index % len(cfg.dims)]
        A, B = random_ordered_pair(dim, rng, tol)
        a, b = A.data, B.data

        def inputs():
            return _matrix_payload(A=a, B=b)

        try:
            x = conn._apply_raw(a, b, tol)
            wa, wb, wx = _eigvalsh(a), _eigvalsh(b), _eigvalsh(x)
            norm_a = max(abs(float(wa[0])), abs(float(wa[-1])))
            norm_b = max(abs(float(wb[0])), abs(float(wb[-1])))
            norm_x = max(abs(float(wx[0])), abs(float(wx[-1])))
            slack = tol.eq_tol * max(1.0, norm_b)
            checks = [
                ("left_betweenness", _loewner_margin(a, x, tol)),
                ("right_betweenness", _loewner_margin(x, b, tol)),
                ("norm_chain_lower", norm_x - norm_a + slack),
                ("norm_chain_upper", norm_b - norm_x + slack),
            ]
            if index == 0:
                checks.extend(grid_checks)
        except Exception as exc:
            rec.add_error(index, dim, exc, inputs)
            continue
        rec.add_trial(index, dim, checks, inputs)
    return rec.report(time.perf_counter() - start)


def _non_comparable_pair(
    dim: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """PD pair whose difference is indefinite with eigenvalues of size at
    least 0.5 on both sides (needs dim >= 2)."""
    a = _sym(random_psd(dim, rng).data + 2.0 * np.eye(dim))
    q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    mags = rng.uniform(0.5, 1.5, size=dim)
    signs = np.ones(dim)
    signs[0] = -1.0
    delta = (q * (mags * signs)) @ q.T
    return a, _sym(a + delta)


def check_strictness_and_order(
    conn: Connection, cfg: TrialConfig = TrialConfig()
) -> Report:
    """Strictness of a mean (A sigma B collides with A or B only for A = B)
    and the order equivalences A <= B <=> A <= A sigma B <=> A sigma B <= B
    for non-trivial means, tested in both directions.

    The converse direction is sampled by rejection: draw pairs, keep those
    where the right-hand condition holds with a clear margin, then assert
    the left-hand side.  Trivial means skip the order phase (the
    equivalences assume non-triviality) and instead confirm their expected
    strictness failure.
    """
    if not is_mean(conn, cfg.tol):
        raise ValueError(
            "the strictness suite requires a mean; representing function "
            f"value at 1 is {conn.fn(1.0):.6g}"
        )
    record = classify(conn, cfg.tol)
    rec = _SuiteRecorder("strictness", cfg.seed)
    tol = cfg.tol
    start = time.perf_counter()

    for index in range(cfg.trials):
        rng = _trial_rng(cfg.seed, index)
        dim = cfg.dims[index % len(cfg.dims)]
        a = random_pd(dim, rng, tol).data
        b = random_pd(dim, rng, tol).data
        guard = 0
        while float(np.linalg.norm(a - b)) < 0.1 and guard < 64:
            b = random_pd(dim, rng, tol).data
            guard += 1

        def inputs():
            return _matrix_payload(A=a, B=b)

        try:
            x = conn._apply_raw(a, b, tol)
            dist_a = float(np.linalg.norm(x - a))
            dist_b = float(np.linalg.norm(x - b))
            norm_a = float(np.linalg.norm(a))
            norm_b = float(np.linalg.norm(b))
            checks = []
            if record.is_left_trivial:
                checks.append(("left_trivial_returns_A", tol.eq_tol * norm_a - dist_a))
            else:
                checks.append(("strict_left", dist_a - tol.eq_tol * norm_a))
            if record.is_right_trivial:
                checks.append(("right_trivial_returns_B", tol.eq_tol * norm_b - dist_b))
            else:
                checks.append(("strict_right", dist_b - tol.eq_tol * norm_b))
        except Exception as exc:
            rec.add_error(index, dim, exc, inputs)
            continue
        rec.add_trial(index, dim, checks, inputs)

    if record.strict:
        # Forward direction of the order equivalences on constructed A <= B,
        # including the swapped forms B sigma A.
        for k in range(cfg.trials):
            index = cfg.trials + k
            rng = _trial_rng(cfg.seed, index)
            dim = cfg.dims[k % len(cfg.dims)]
            A, B = random_ordered_pair(dim, rng, tol)
            a, b = A.data, B.data

            def inputs():
                return _matrix_payload(A=a, B=b)

            try:
                x = conn._apply_raw(a, b, tol)
                y = conn._apply_raw(b, a, tol)
                checks = [
                    ("order_forward_left", _loewner_margin(a, x, tol)),
                    ("order_forward_right", _loewner_margin(x, b, tol)),
                    ("order_forward_swapped_left", _loewner_margin(a, y, tol)),
                    ("order_forward_swapped_right", _loewner_margin(y, b, tol)),
                ]
            except Exception as exc:
                rec.add_error(index, dim, exc, inputs)
                continue
            rec.add_trial(index, dim, checks, inputs)

        # Converse direction by rejection over a pool mixing ordered and
        # deliberately non-comparable pairs.
        accepted_left = 0
        accepted_right = 0
        draws = 0
        max_draws = 50 * cfg.trials
        while (
            accepted_left < cfg.trials or accepted_right < cfg.trials
        ) and draws < max_draws:
            index = 2 * cfg.trials + draws
            rng = _trial_rng(cfg.seed, index)
            dim = cfg.dims[draws % len(cfg.dims)]
            if draws % 2 == 0 or dim < 2:
                A, B = random_ordered_pair(dim, rng, tol)
                a, b = A.data, B.data
            else:
                a, b = _non_comparable_pair(dim, rng)
            draws += 1

            def inputs():
                return _matrix_payload(A=a, B=b)

            try:
                x = conn._apply_raw(a, b, tol)
                accept_scale = max(
                    1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b))
                )
                threshold = 10.0 * tol.psd_slack * accept_scale
                checks = []
                if accepted_left < cfg.trials:
                    if float(_eigvalsh(x - a)[0]) > threshold:
                        accepted_left += 1
                        checks.append(
                            ("order_converse_left", _loewner_margin(a, b, tol))
                        )
                if accepted_right < cfg.trials:
                    if float(_eigvalsh(b - x)[0]) > threshold:
                        accepted_right += 1
                        checks.append(
                            ("order_converse_right", _loewner_margin(a, b, tol))
                        )
            except Exception as exc:
                rec.add_error(index, dim, exc, inputs)
                continue
            if checks:
                rec.add_trial(index, dim, checks, inputs)
        if accepted_left < cfg.trials or accepted_right < cfg.trials:
            rec.add_error(
                -1,
                0,
                RuntimeError(
                    "converse order sampling fell short: accepted "
                    f"{accepted_left}/{accepted_right} of {cfg.trials} "
                    f"in {draws} draws"
                ),
            )
    return rec.report(time.perf_counter() - start)


def run_counterexamples(tol: Tolerances = DEFAULT_TOL) -> Report:
    """Reproduce the fixed boundary counterexamples for the geometric mean
    on singular matrices.

    (a) With A, B the orthogonal projections, A # B vanishes although A is
        not zero, so "A sigma B = 0 implies A = 0" fails for merely PSD B.
    (b) With A = 0, A # B = A although A differs from B, so strictness
        fails on PSD arguments.
    (c) For the same pair, A # B <= B holds while A <= B does not, so the
        order equivalences need invertibility.

    All three must reproduce; a violation means the corpus broke.  The
    vanishing checks use COUNTEREXAMPLE_TOL, since the epsilon-limit
    converges at a square-root rate.
    """
    geo = make_builtin("geometric", 0.5)
    rec = _SuiteRecorder("counterexamples", 0)
    start = time.perf_counter()
    a, b = REMARK_A.data, REMARK_B.data
    zero = np.zeros((2, 2))

    x = geo._apply_raw(a, b, tol)
    rec.add_trial(
        0,
        2,
        [
            ("vanishes_on_projection_pair", COUNTEREXAMPLE_TOL - float(np.linalg.norm(x))),
            ("left_operand_nonzero", float(np.linalg.norm(a)) - 0.5),
        ],
        lambda: _matrix_payload(A=a, B=b, A_geo_B=x),
    )

    z = geo._apply_raw(zero, b, tol)
    rec.add_trial(
        1,
        2,
        [
            ("zero_fixed_without_invertibility", COUNTEREXAMPLE_TOL - float(np.linalg.norm(z - zero))),
            ("operands_differ", float(np.linalg.norm(zero - b)) - 0.5),
        ],
        lambda: _matrix_payload(A=zero, B=b, A_geo_B=z),
    )

    upper = float(_eigvalsh(b - x)[0])
    order = float(_eigvalsh(b - a)[0])
    rec.add_trial(
        2,
        2,
        [
            ("upper_order_holds", upper + COUNTEREXAMPLE_TOL),
            ("full_order_fails", -order - 10.0 * tol.psd_slack),
        ],
        lambda: _matrix_payload(A=a, B=b, A_geo_B=x),
    )
    return rec.report(time.perf_counter() - start)


SUITES = {
    "axioms": check_axioms,
    "continuity": check_continuity_from_above,
    "positivity": check_positivity,
    "betweenness": check_betweenness,
    "strictness": check_strictness_and_order,
}


def standard_battery() -> list[tuple[str, Connection]]:
    """The named connections exercised by the acceptance battery: both
    trivial means, the three weighted families at weights 1/4, 1/2, 3/4,
    the logarithmic mean, the parallel sum, the sum, and zero."""
    entries: list[tuple[str, Connection]] = [
        ("left_trivial", make_builtin("left_trivial")),
        ("right_trivial", make_builtin("right_trivial")),
    ]
    for kind in ("arithmetic", "geometric", "harmonic"):
        for weight in (0.25, 0.5, 0.75):
            entries.append((f"{kind}({weight:g})", make_builtin(kind, weight)))
    entries.extend(
        [
            ("logarithmic", make_builtin("logarithmic")),
            ("parallel_sum", make_builtin("parallel_sum")),
            ("sum", make_builtin("sum")),
            ("zero", make_builtin("zero")),
        ]
    )
    return entries


def standard_means() -> list[tuple[str, Connection]]:
    """The subset of the battery that are means (f(1) = 1)."""
    return [(name, conn) for name, conn in standard_battery() if is_mean(conn)]
