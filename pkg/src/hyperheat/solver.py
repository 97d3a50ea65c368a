"""Mild solutions as fixed points of the variation-of-constants operator.

The operator maps a trajectory u to

    (T u)(t) = W_t u0 + integral_0^t W_{t-tau} |u|^{r-1} u (tau) dtau.

The integral is evaluated mode by mode, exactly against a reconstruction
of the nonlinearity that is piecewise linear in tau between slab
endpoints; the slab weights are the phi-functions

    phi1(z) = (e^z - 1)/z,    phi2(z) = (e^z - 1 - z)/z^2,

with z = -dt |xi|^(2 alpha). Fixed points are found by Picard iteration
from u^(0) = W_t u0, with distances measured in the time-weighted norm.
An exponential predictor-corrector integrator marching the same slabs
provides an independent trajectory for cross-validation.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft
from numpy.polynomial.legendre import leggauss

from .dyadic import a_norm, a_norm_of_coefficients, build_decomposition
from .errors import (BlowupSuspectedError, InconsistentGridError, IntegrationError,
                     ParameterError)
from .grid import (SpectralField, fft_workers, forward_transform,
                   inverse_transform, l2_norm_of_coefficients, nyquist_mask)
from .semigroup import dissipation_symbol
from .timenorms import Trajectory, admissibility, log_time_grid


@dataclass(frozen=True)
class SolverConfig:
    """Discretization and iteration controls for one solve.

    The default time grid is hybrid: log-spaced samples from
    horizon * t_min_frac up to horizon * uniform_start_frac (so weighted
    norms see the decades near t = 0), then ``slabs`` uniform samples up
    to the horizon (so centered time differences stay accurate). An
    explicit ``times`` tuple overrides the construction; ``extra_times``
    are merged in.
    """

    horizon: float
    slabs: int = 160
    picard_tol: float = 1e-10
    picard_max_iter: int = 50
    dealias_factor: float = 1.5
    quadrature_order: int = 2
    t_min_frac: float = 1e-4
    uniform_start_frac: float = 1e-2
    geometric_per_decade: int = 32
    times: tuple = None
    extra_times: tuple = ()

    def __post_init__(self):
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise ParameterError(f"horizon must be positive, got {self.horizon}")
        if self.slabs < 4:
            raise ParameterError(f"need at least 4 slabs, got {self.slabs}")
        if not 0 < self.picard_tol < 1:
            raise ParameterError(f"picard_tol must be in (0, 1), got {self.picard_tol}")
        if self.picard_max_iter < 1:
            raise ParameterError("picard_max_iter must be >= 1")
        if not self.dealias_factor >= 1:
            raise ParameterError(f"dealias_factor must be >= 1, got {self.dealias_factor}")
        if self.quadrature_order not in (1, 2):
            raise ParameterError(
                f"quadrature_order must be 1 (piecewise constant) or 2 (piecewise "
                f"linear), got {self.quadrature_order}")
        if not 0 < self.t_min_frac < self.uniform_start_frac < 1:
            raise ParameterError("need 0 < t_min_frac < uniform_start_frac < 1")
        if self.times is not None:
            object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "extra_times", tuple(float(t) for t in self.extra_times))


def slab_times(cfg):
    """The slab-endpoint grid 0 < t_1 < ... < t_M = horizon."""
    T = cfg.horizon
    if cfg.times is not None:
        t = np.asarray(cfg.times, dtype=np.float64)
        if t.ndim != 1 or t.size < 2:
            raise ParameterError("explicit times must be a 1-D grid with >= 2 points")
        if np.any(t <= 0) or np.any(np.diff(t) <= 0):
            raise ParameterError("explicit times must be positive and strictly increasing")
        if abs(t[-1] - T) > 1e-9 * T:
            raise ParameterError(f"explicit times must end at the horizon {T}, got {t[-1]}")
        return t
    extra = np.asarray(cfg.extra_times, dtype=np.float64)
    if extra.size and (np.any(extra <= 0) or np.any(extra >= T * (1 - 1e-9))):
        raise ParameterError("extra_times must lie strictly inside (0, horizon)")
    uniform = np.linspace(0.0, T, cfg.slabs + 1)[1:]
    geometric = log_time_grid(T * cfg.t_min_frac, T * cfg.uniform_start_frac,
                              cfg.geometric_per_decade)
    t = np.unique(np.concatenate([uniform, geometric, extra]))
    keep = np.concatenate([[True], np.diff(t) > 1e-12 * T])
    return t[keep]


# phi-function Taylor weights 1/(k+1)! and 1/(k+2)!, k = 0..12.
_PHI1_COEFFS = np.array([1.0 / math.factorial(k + 1) for k in range(13)])
_PHI2_COEFFS = np.array([1.0 / math.factorial(k + 2) for k in range(13)])


def _phi_taylor(z, coeffs):
    out = np.zeros_like(z)
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def phi1(z):
    """(e^z - 1)/z, Taylor below |z| = 1/2 to dodge cancellation."""
    z = np.asarray(z, dtype=np.float64)
    small = np.abs(z) <= 0.5
    out = np.empty_like(z)
    out[small] = _phi_taylor(z[small], _PHI1_COEFFS)
    zb = z[~small]
    out[~small] = np.expm1(zb) / zb
    return out


def phi2(z):
    """(e^z - 1 - z)/z^2, Taylor below |z| = 1/2 to dodge cancellation."""
    z = np.asarray(z, dtype=np.float64)
    small = np.abs(z) <= 0.5
    out = np.empty_like(z)
    out[small] = _phi_taylor(z[small], _PHI2_COEFFS)
    zb = z[~small]
    out[~small] = (np.expm1(zb) - zb) / (zb * zb)
    return out


def _pad_spectrum(c, M):
    N = c.shape[0]
    n = c.ndim
    centered = np.fft.fftshift(c)
    out = np.zeros((M,) * n, dtype=np.complex128)
    off = (M - N) // 2
    sl = tuple(slice(off, off + N) for _ in range(n))
    out[sl] = centered
    return np.fft.ifftshift(out)


def _truncate_spectrum(c, N):
    M = c.shape[0]
    n = c.ndim
    off = (M - N) // 2
    sl = tuple(slice(off, off + N) for _ in range(n))
    return np.fft.ifftshift(np.fft.fftshift(c)[sl])


def _nonlinearity_coefficients(c, grid, r, dealias_factor):
    """Spectrum of |u|^{r-1} u from the spectrum of real u, dealiased.

    Evaluates pointwise on a grid enlarged by ``dealias_factor`` and
    truncates back. The unpaired Nyquist planes are zeroed (they cannot be
    embedded symmetrically); band-limited workflows never populate them.
    """
    N = grid.points_per_dim
    work = np.array(c)
    work[nyquist_mask(grid)] = 0.0
    M = int(math.ceil(N * dealias_factor))
    M += M % 2
    if M > N:
        work = _pad_spectrum(work, M)
    scale = (M / N) ** (grid.n / 2.0)
    fine = scipy.fft.ifftn(work * scale, norm="ortho", workers=fft_workers()).real
    w = np.abs(fine) ** (r - 1.0) * fine
    cw = scipy.fft.fftn(w, norm="ortho", workers=fft_workers()) / scale
    if M > N:
        cw = _truncate_spectrum(cw, N)
    out = np.asarray(cw)
    out[nyquist_mask(grid)] = 0.0
    return out


def nonlinearity(u, r, dealias_factor=1.5):
    """|u|^{r-1} u evaluated pointwise on the dealiasing grid.

    Odd in u by construction. Exact for polynomial powers as long as the
    active band times (r+1)/2 stays inside the padded lattice; for
    non-integer r the residual aliasing can be measured with
    ``aliasing_probe``.
    """
    if not r > 1:
        raise ParameterError(f"nonlinearity exponent must exceed 1, got {r}")
    c = forward_transform(u).coefficients
    out = _nonlinearity_coefficients(c, u.grid, r, dealias_factor)
    return inverse_transform(SpectralField(u.grid, out))


def aliasing_probe(u, r, dealias_factor=1.5):
    """Relative sup-norm shift of the nonlinearity when padding is doubled."""
    base = nonlinearity(u, r, dealias_factor)
    ref = nonlinearity(u, r, 2.0 * dealias_factor)
    scale = max(float(np.max(np.abs(ref.samples))), 1e-300)
    return float(np.max(np.abs(base.samples - ref.samples))) / scale


def _slab_weights(times, lam, order):
    """Per-slab (decay, dt*phi1, dt*phi2) arrays for the Duhamel recursion."""
    weights = []
    prev_t = 0.0
    for t in times:
        dt = t - prev_t
        z = -dt * lam
        w2 = dt * phi2(z) if order == 2 else None
        weights.append((np.exp(z), dt * phi1(z), w2))
        prev_t = t
    return weights


def _duhamel_terms(times, forcing, lam, order, weights=None):
    """D(t_i) = integral_0^{t_i} e^{-(t_i - tau) lam} w(tau) dtau per slab.

    ``forcing`` holds spectra w_0..w_M with w_0 the value at tau = 0.
    Piecewise linear in tau at order 2, left-endpoint constant at order 1;
    each slab integral is exact for the reconstruction via phi1/phi2.
    """
    if weights is None:
        weights = _slab_weights(times, lam, order)
    D = np.zeros_like(forcing[0])
    out = []
    for i, (decay, w1, w2) in enumerate(weights, start=1):
        slab = w1 * forcing[i - 1]
        if order == 2:
            slab = slab + w2 * (forcing[i] - forcing[i - 1])
        D = decay * D + slab
        out.append(D)
    return out


def duhamel_apply(u0, traj, cfg, m):
    """One application of the variation-of-constants operator to a trajectory.

    The trajectory must live on slab endpoints ending at the horizon; the
    nonlinearity at tau = 0 is taken from u0.
    """
    if traj.grid != u0.grid:
        raise InconsistentGridError("trajectory and initial data live on different grids")
    times = np.asarray(traj.times)
    if abs(times[-1] - cfg.horizon) > 1e-9 * cfg.horizon:
        raise ParameterError(
            f"trajectory must end at the horizon {cfg.horizon}, got {times[-1]}")
    lam = dissipation_symbol(u0.grid, m)
    u0_hat = forward_transform(u0).coefficients
    forcing = [_nonlinearity_coefficients(u0_hat, u0.grid, m.r, cfg.dealias_factor)]
    for f in traj.fields:
        c = forward_transform(f).coefficients
        forcing.append(_nonlinearity_coefficients(c, u0.grid, m.r, cfg.dealias_factor))
    terms = _duhamel_terms(times, forcing, lam, cfg.quadrature_order)
    fields = []
    for t, D in zip(times, terms):
        c = np.exp(-t * lam) * u0_hat + D
        fields.append(inverse_transform(SpectralField(u0.grid, c)))
    return Trajectory(times=tuple(times), fields=tuple(fields))


def _weighted_norm_of_spectra(spectra, times, grid, sp, b, vexp, dec):
    norms = np.array([a_norm_of_coefficients(c, grid, sp, dec) for c in spectra])
    if math.isinf(vexp):
        return float(np.max(times ** b * norms))
    integrand = times ** (b * vexp) * norms ** vexp
    return float(np.trapezoid(integrand * times, np.log(times)) ** (1.0 / vexp))


@dataclass(frozen=True)
class PicardReport:
    """Outcome of a Picard solve.

    ``distances`` are the weighted norms of consecutive-iterate differences,
    relative to the weighted norm of the current iterate; ``weighted_norm``
    is that of the final trajectory, to be read against the unit
    ``ball_radius`` of the fixed-point argument.
    """

    converged: bool
    iterations: int
    tolerance: float
    distances: tuple
    contraction_factors: tuple
    weighted_norm: float
    ball_radius: float
    trajectory: Trajectory
    note: str = ""


def picard_solve(u0, cfg, m, w, sp):
    """Iterate the operator from u^(0) = W_t u0 until the weighted distance
    between consecutive iterates drops below picard_tol (relative).

    Preconditions: the exponent tuple implied by (w, sp) must be admissible
    and the space must sit in the multiplication regime s > n/p. Three
    consecutive growing distances, or amplitude growth past 1e3 times the
    data, abort with a blow-up-suspected error carrying the partial report.
    """
    a = 2.0 * m.r * w.b
    adm = admissibility(a, w.v, sp.s, sp.s0, m, sp.p)
    if not adm.admissible:
        raise ParameterError(
            f"weight a = {a:.6g}, v = {w.v:.6g} inadmissible for s - s0 = "
            f"{sp.s - sp.s0:.6g}: need r(s-s0)/alpha < a + 1/v < 2")
    n_over_p = 0.0 if math.isinf(sp.p) else u0.grid.n / sp.p
    if not sp.s > n_over_p:
        raise ParameterError(
            f"solver requires s > n/p (multiplication regime), got s = {sp.s}, "
            f"n/p = {n_over_p}")
    if abs(cfg.horizon - w.T) > 1e-9 * w.T:
        raise ParameterError(f"solver horizon {cfg.horizon} differs from weight horizon {w.T}")
    vexp = math.inf if math.isinf(w.v) else 2.0 * m.r * w.v
    times = slab_times(cfg)
    grid = u0.grid
    dec = build_decomposition(grid)
    lam = dissipation_symbol(grid, m)
    u0_hat = forward_transform(u0).coefficients
    u0_l2 = l2_norm_of_coefficients(u0_hat, grid)
    homogeneous = [np.exp(-t * lam) * u0_hat for t in times]
    current = homogeneous
    w0_hat = _nonlinearity_coefficients(u0_hat, grid, m.r, cfg.dealias_factor)
    weights = _slab_weights(times, lam, cfg.quadrature_order)
    distances = []
    converged = False
    iterations = 0
    note = ""
    for iterations in range(1, cfg.picard_max_iter + 1):
        forcing = [w0_hat]
        for c in current:
            forcing.append(_nonlinearity_coefficients(c, grid, m.r, cfg.dealias_factor))
        terms = _duhamel_terms(times, forcing, lam, cfg.quadrature_order, weights)
        new = [h + D for h, D in zip(homogeneous, terms)]
        diff = [a_ - b_ for a_, b_ in zip(new, current)]
        scale = _weighted_norm_of_spectra(new, times, grid, sp, w.b, vexp, dec)
        raw = _weighted_norm_of_spectra(diff, times, grid, sp, w.b, vexp, dec)
        rel = raw / scale if scale > 0 else 0.0
        distances.append(rel)
        current = new
        if rel <= cfg.picard_tol:
            converged = True
            break
        peak = max(l2_norm_of_coefficients(c, grid) for c in current)
        if u0_l2 > 0 and peak > 1e3 * u0_l2:
            report = _build_report(False, iterations, cfg, distances, scale, times,
                                   grid, current, "amplitude grew past 1e3 x data")
            raise BlowupSuspectedError(
                f"iterate amplitude {peak:.3e} exceeds 1e3 x data norm {u0_l2:.3e}",
                report=report)
        if len(distances) >= 3 and distances[-1] > distances[-2] > distances[-3]:
            report = _build_report(False, iterations, cfg, distances, scale, times,
                                   grid, current, "three consecutive growing distances")
            raise BlowupSuspectedError(
                "Picard distances grew three times in a row", report=report)
    if not converged:
        note = "max iterations reached without convergence"
    final_norm = _weighted_norm_of_spectra(current, times, grid, sp, w.b, vexp, dec)
    return _build_report(converged, iterations, cfg, distances, final_norm, times,
                         grid, current, note)


def _build_report(converged, iterations, cfg, distances, weighted, times, grid,
                  spectra, note):
    fields = tuple(inverse_transform(SpectralField(grid, c)) for c in spectra)
    factors = tuple(distances[i] / distances[i - 1] for i in range(1, len(distances))
                    if distances[i - 1] > 0)
    return PicardReport(converged=converged, iterations=iterations,
                        tolerance=cfg.picard_tol, distances=tuple(distances),
                        contraction_factors=factors, weighted_norm=float(weighted),
                        ball_radius=1.0,
                        trajectory=Trajectory(times=tuple(times), fields=fields),
                        note=note)


def etd_oracle(u0, cfg, m, nonlinear=True):
    """Independent exponential predictor-corrector march over the same slabs.

    Order 2 (predictor with phi1, corrector with phi2); with
    quadrature_order = 1 the corrector is skipped. ``nonlinear=False``
    integrates only the linear flow, which must reproduce the semigroup
    exactly. Non-finite or violently growing steps raise IntegrationError.
    """
    times = slab_times(cfg)
    grid = u0.grid
    lam = dissipation_symbol(grid, m)
    u = forward_transform(u0).coefficients
    bound = 1e6 * max(l2_norm_of_coefficients(u, grid), 1.0)
    prev_t = 0.0
    fields = []
    for step, t in enumerate(times, start=1):
        dt = t - prev_t
        z = -dt * lam
        decay = np.exp(z)
        if nonlinear:
            nu = _nonlinearity_coefficients(u, grid, m.r, cfg.dealias_factor)
            predictor = decay * u + dt * phi1(z) * nu
            if cfg.quadrature_order == 2:
                n_pred = _nonlinearity_coefficients(predictor, grid, m.r,
                                                    cfg.dealias_factor)
                u = predictor + dt * phi2(z) * (n_pred - nu)
            else:
                u = predictor
        else:
            u = decay * u
        if not np.all(np.isfinite(u)) or l2_norm_of_coefficients(u, grid) > bound:
            raise IntegrationError(
                f"unstable step {step} at t = {t:.6g}", step=step, time=float(t))
        fields.append(inverse_transform(SpectralField(grid, u)))
        prev_t = t
    return Trajectory(times=tuple(times), fields=tuple(fields))


def pde_residual(traj, m, dealias_factor=1.5):
    """Max relative L_2 defect of du/dt + (-Laplace)^alpha u - |u|^{r-1} u.

    The time derivative uses centered differences on the (possibly
    nonuniform) sample grid, so only interior samples are tested.
    """
    if len(traj) < 3:
        raise ParameterError("residual check needs at least three samples")
    grid = traj.grid
    lam = dissipation_symbol(grid, m)
    times = np.asarray(traj.times)
    spectra = [forward_transform(f).coefficients for f in traj.fields]
    worst = 0.0
    for i in range(1, len(times) - 1):
        h0 = times[i] - times[i - 1]
        h1 = times[i + 1] - times[i]
        dudt = (-h1 / (h0 * (h0 + h1)) * spectra[i - 1]
                + (h1 - h0) / (h0 * h1) * spectra[i]
                + h0 / (h1 * (h0 + h1)) * spectra[i + 1])
        w_hat = _nonlinearity_coefficients(spectra[i], grid, m.r, dealias_factor)
        resid = dudt + lam * spectra[i] - w_hat
        scale = l2_norm_of_coefficients(spectra[i], grid)
        if scale == 0.0:
            continue
        worst = max(worst, l2_norm_of_coefficients(resid, grid) / scale)
    return worst


def strong_convergence_check(traj, u0, sp0, at_times=None, count=8,
                             decomposition=None):
    """Distances || u(., t) - u0 ||_{A^{s0}} at selected sample times.

    With ``at_times`` given, the nearest sample to each requested time is
    used (in the requested order); otherwise the ``count`` earliest samples.
    Returns a list of (t, distance) pairs.
    """
    dec = decomposition or build_decomposition(traj.grid)
    times = np.asarray(traj.times)
    if at_times is not None:
        indices = [int(np.argmin(np.abs(times - target))) for target in at_times]
    else:
        indices = list(range(min(count, len(times))))
    out = []
    for i in indices:
        dist = a_norm(traj.fields[i] - u0, sp0, dec)
        out.append((float(times[i]), float(dist)))
    return out


_GL_NODES, _GL_WEIGHTS = leggauss(32)
_GL_X = 0.5 * (_GL_NODES + 1.0)
_GL_W = 0.5 * _GL_WEIGHTS


def _path_power_integral(a, d, r):
    """integral_0^1 |a + theta d|^{r-1} dtheta, elementwise on arrays.

    Split at the sign change theta* = -a/d and substitute theta ~ theta*
    +/- tau^2 on each side so the integrand becomes tau^(2r-1) x smooth;
    32-node Gauss-Legendre is then exact to roundoff for the exponents in
    use (and polynomial-exact for integer r <= 16).
    """
    a = np.asarray(a, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    out = np.empty_like(a)
    flat_a = a.ravel()
    flat_d = d.ravel()
    flat_out = out.ravel()
    constant = flat_d == 0.0
    flat_out[constant] = np.abs(flat_a[constant]) ** (r - 1.0)
    moving = ~constant
    am = flat_a[moving][:, None]
    dm = flat_d[moving][:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        theta_c = np.clip(-am / dm, 0.0, 1.0)
    x = _GL_X[None, :]
    w = _GL_W[None, :]
    # Left piece [0, theta_c], anchored at theta_c: theta = theta_c (1 - tau^2).
    theta_left = theta_c * (1.0 - x * x)
    left = np.sum(w * 2.0 * theta_c * x
                  * np.abs(am + dm * theta_left) ** (r - 1.0), axis=1)
    # Right piece [theta_c, 1], anchored at theta_c: theta = theta_c + (1-theta_c) tau^2.
    theta_right = theta_c + (1.0 - theta_c) * x * x
    right = np.sum(w * 2.0 * (1.0 - theta_c) * x
                   * np.abs(am + dm * theta_right) ** (r - 1.0), axis=1)
    flat_out[moving] = left + right
    return out


def contraction_identity_check(u, v, r):
    """Max pointwise defect of the difference-of-powers factorization

        |u|^{r-1} u - |v|^{r-1} v = r (u - v) integral_0^1 |v + theta(u-v)|^{r-1} dtheta,

    with the path integral by piecewise Gauss-Legendre quadrature.
    """
    if not r > 1:
        raise ParameterError(f"exponent r must exceed 1, got {r}")
    if u.grid != v.grid:
        raise InconsistentGridError("fields must share a grid")
    us = u.samples
    vs = v.samples
    lhs = np.abs(us) ** (r - 1.0) * us - np.abs(vs) ** (r - 1.0) * vs
    rhs = r * (us - vs) * _path_power_integral(vs, us - vs, r)
    return float(np.max(np.abs(lhs - rhs)))
