"""Time-weighted trajectory norms and admissibility of weight exponents.

The weighted norm over a horizon (0, T) is

    ( integral_0^T t^(b*vexp) ||u(.,t)||_X^vexp dt )^(1/vexp),

with sup_{0<t<T} t^b ||u(.,t)||_X at vexp = inf. The spatial norm X is a
scale-indexed A^s_{p,q} norm. Quadrature is trapezoidal in log t on the
trajectory's own sample grid; a coverage flag records whether the samples
actually span the decades of (0, T).

Admissibility couples the weight exponent a, the integrability v, and the
smoothness gap s - s0: with inv_v = 1/v (0 at v = inf), the window is

    r (s - s0) / alpha  <  a + inv_v  <  2,      1/2 < v <= inf,

and the solver-facing derived quantities are

    delta = a v - r (s - s0) v / alpha + 1,
    kappa = a v + 2 r v - a r v - r + 1,

both required positive. delta > 0 is equivalent to the lower window bound;
kappa > 0 is implied by the upper bound (it is equivalent to the weaker
a + inv_v < 2r/(r-1)), so the joint sign test matches the window exactly
on the regime a < 2 - inv_v where these exponents are used.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dyadic import a_norm, build_decomposition
from .errors import InconsistentGridError, ParameterError


@dataclass(frozen=True)
class TimeWeight:
    """Weight exponent b, integrability v in [1/2, inf], horizon T."""

    b: float
    v: float
    T: float

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise ParameterError(f"weight exponent b must be finite, got {self.b}")
        if not self.v >= 0.5:
            raise ParameterError(f"v must satisfy 1/2 <= v <= inf, got {self.v}")
        if not (math.isfinite(self.T) and self.T > 0):
            raise ParameterError(f"horizon T must be positive and finite, got {self.T}")

    @property
    def inv_v(self):
        return 0.0 if math.isinf(self.v) else 1.0 / self.v

    @property
    def tempered_ok(self):
        """b < 1 - 1/v, under which the weighted class embeds in distributions."""
        return self.b < 1.0 - self.inv_v


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time samples 0 < t_1 < ... < t_M with one real field per sample."""

    times: tuple
    fields: tuple

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        fields = tuple(self.fields)
        if len(times) != len(fields) or not times:
            raise ParameterError("times and fields must be equal-length and nonempty")
        arr = np.asarray(times)
        if np.any(arr <= 0) or np.any(np.diff(arr) <= 0):
            raise ParameterError("sample times must be positive and strictly increasing")
        g = fields[0].grid
        for f in fields[1:]:
            if f.grid != g:
                raise InconsistentGridError("all trajectory fields must share one grid")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "fields", fields)

    def __len__(self):
        return len(self.times)

    @property
    def grid(self):
        return self.fields[0].grid

    @property
    def terminal(self):
        return self.fields[-1]


def log_time_grid(t_min, t_max, per_decade=64):
    """Log-spaced sample times, ``per_decade`` samples per decade."""
    if not 0 < t_min < t_max:
        raise ParameterError(f"need 0 < t_min < t_max, got {t_min}, {t_max}")
    decades = math.log10(t_max / t_min)
    count = max(2, int(math.ceil(decades * per_decade)) + 1)
    return np.geomspace(t_min, t_max, count)


@dataclass(frozen=True)
class WeightedNormResult:
    """Value of a weighted trajectory norm plus a sample-coverage flag."""

    value: float
    coverage_ok: bool
    note: str = ""

    def __float__(self):
        return self.value


def weighted_norm(traj, w, sp, vexp, decomposition=None):
    """Weighted norm of a trajectory; trapezoid in log t for finite vexp.

    Sample times must lie in (0, T]. Coverage is flagged when the earliest
    sample is above T/1000 or the last sits below 0.98 T, since then the
    quadrature cannot see the full decade span of (0, T).
    """
    if not vexp >= 1:
        raise ParameterError(f"integration exponent must satisfy 1 <= vexp <= inf, got {vexp}")
    times = np.asarray(traj.times)
    if times[-1] > w.T * (1 + 1e-12):
        raise ParameterError(f"trajectory reaches t = {times[-1]} beyond horizon T = {w.T}")
    dec = decomposition or build_decomposition(traj.grid)
    norms = np.array([a_norm(f, sp, dec) for f in traj.fields])
    coverage_ok = times[0] <= w.T * 1e-3 * (1 + 1e-12) and times[-1] >= 0.98 * w.T
    note = "" if coverage_ok else (
        f"samples cover [{times[0]:.3e}, {times[-1]:.3e}] of (0, {w.T:.3e}); "
        "weighted norm may miss mass near the endpoints")
    if math.isinf(vexp):
        value = float(np.max(times ** w.b * norms))
        return WeightedNormResult(value=value, coverage_ok=coverage_ok, note=note)
    if times.size < 2:
        raise ParameterError("finite-exponent weighted norms need at least two samples")
    integrand = times ** (w.b * vexp) * norms ** vexp
    # dt = t dlog t: trapezoid on the log axis.
    integral = float(np.trapezoid(integrand * times, np.log(times)))
    return WeightedNormResult(value=integral ** (1.0 / vexp), coverage_ok=coverage_ok,
                              note=note)


@dataclass(frozen=True)
class Admissibility:
    """Joint record for one exponent tuple (a, v, s, s0) and model params.

    ``delta`` and ``kappa`` are the contraction exponents; at v = inf the
    stored values are their leading coefficients in v (the additive
    constants vanish in the limit), keeping the sign information. The
    classification compares s0 against the scaling-critical smoothness
    n/p - 2 alpha / (r-1).
    """

    a: float
    v: float
    s: float
    s0: float
    alpha: float
    r: float
    p: float
    delta: float
    kappa: float
    admissible: bool
    critical_s0: float
    classification: str
    window_nonempty: bool
    tempered_embedding: bool

    def as_metrics(self):
        return {
            "delta": self.delta,
            "kappa": self.kappa,
            "admissible": float(self.admissible),
            "critical_s0": self.critical_s0,
        }


def _window_predicate(a, v, s, s0, m):
    """The strict two-sided window on a + 1/v, with 1/v = 0 at v = inf."""
    inv_v = 0.0 if math.isinf(v) else 1.0 / v
    gap = m.r * (s - s0) / m.alpha
    return gap < a + inv_v < 2.0


def _sign_exponents(a, v, s, s0, m):
    """(delta, kappa); leading-order coefficients in v when v = inf."""
    gap = m.r * (s - s0) / m.alpha
    if math.isinf(v):
        return a - gap, a * (1.0 - m.r) + 2.0 * m.r
    delta = a * v - gap * v + 1.0
    kappa = a * v + 2.0 * m.r * v - a * m.r * v - m.r + 1.0
    return delta, kappa


def admissibility(a, v, s, s0, m, p):
    """Evaluate the admissibility window and derived exponents for one tuple.

    Requires s >= s0 and 1/2 < v <= inf. ``p`` fixes the integrability of
    the data space for the criticality classification.
    """
    if not s >= s0:
        raise ParameterError(f"need s >= s0, got s = {s}, s0 = {s0}")
    if not v > 0.5:
        raise ParameterError(f"need 1/2 < v <= inf, got v = {v}")
    if not p >= 1:
        raise ParameterError(f"p must satisfy 1 <= p <= inf, got {p}")
    delta, kappa = _sign_exponents(a, v, s, s0, m)
    admissible = _window_predicate(a, v, s, s0, m)
    critical = m.critical_smoothness(p)
    tol = 1e-12 * max(1.0, abs(critical), abs(s0))
    if s0 > critical + tol:
        classification = "supercritical: local solutions expected for large data"
    elif s0 < critical - tol:
        classification = "subcritical: well-posedness in this scale not expected"
    else:
        classification = "critical: global solutions expected for small data"
    window_nonempty = critical < s0 <= s < m.r - 1.0
    if math.isinf(v):
        tempered = a < 2.0 * m.r
    else:
        tempered = a * v < 2.0 * m.r * v - 1.0
    return Admissibility(a=float(a), v=float(v), s=float(s), s0=float(s0),
                         alpha=float(m.alpha), r=float(m.r), p=float(p),
                         delta=float(delta), kappa=float(kappa),
                         admissible=bool(admissible), critical_s0=float(critical),
                         classification=classification,
                         window_nonempty=bool(window_nonempty),
                         tempered_embedding=bool(tempered))


def equivalence_check(a, v, s, s0, m):
    """Whether the window predicate agrees with (delta > 0 and kappa > 0).

    The agreement is an identity on the regime a < 2 - 1/v; outside it the
    sign test is strictly weaker on the upper side (see module docstring).
    """
    if not v > 0.5:
        raise ParameterError(f"need 1/2 < v <= inf, got v = {v}")
    delta, kappa = _sign_exponents(a, v, s, s0, m)
    return _window_predicate(a, v, s, s0, m) == (delta > 0.0 and kappa > 0.0)


def critical_smoothness(p, m):
    """Convenience alias for ModelParams.critical_smoothness."""
    return m.critical_smoothness(p)
