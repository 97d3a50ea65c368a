"""Periodic grids, real/spectral fields, and unitary discrete transforms.

Fields live on the uniform grid of the torus [0, L)^n with N points per
dimension. The frequency lattice is xi_k = 2*pi*k/L for integer k in
[-N/2, N/2). Transforms use the unitary normalization (a symmetric
1/sqrt(N^n) on both directions) so the discrete Parseval identity holds
to roundoff; physical L_p norms are Riemann sums with cell volume (L/N)^n.
"""

import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.fft

from .errors import InconsistentGridError, ParameterError, SymmetryError

# Default cap on per-field storage; grids whose complex spectrum would not
# fit are rejected at construction time.
DEFAULT_MAX_FIELD_BYTES = 1 << 30


def fft_workers():
    """Worker-thread count for FFTs, from HYPERHEAT_THREADS (default 1)."""
    raw = os.environ.get("HYPERHEAT_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError as exc:
        raise ParameterError(f"HYPERHEAT_THREADS must be an integer, got {raw!r}") from exc
    if workers < 1:
        raise ParameterError(f"HYPERHEAT_THREADS must be >= 1, got {workers}")
    return workers


def _is_power_of_two(m):
    return m >= 1 and (m & (m - 1)) == 0


@dataclass(frozen=True)
class TorusGrid:
    """Uniform grid on [0, length)^n with points_per_dim samples per axis.

    points_per_dim must be a power of two and at least 8; the total size
    must fit the storage budget. Grids compare equal on (n, N, L) only.
    """

    n: int
    points_per_dim: int
    length: float = 2.0 * math.pi
    max_field_bytes: int = field(default=DEFAULT_MAX_FIELD_BYTES, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"dimension n must be a positive integer, got {self.n}")
        if not isinstance(self.points_per_dim, int) or not _is_power_of_two(self.points_per_dim) \
                or self.points_per_dim < 8:
            raise ParameterError(
                f"points_per_dim must be a power of two >= 8, got {self.points_per_dim}")
        if not (math.isfinite(self.length) and self.length > 0):
            raise ParameterError(f"length must be positive and finite, got {self.length}")
        # 16 bytes per complex128 sample.
        if 16 * self.points_per_dim ** self.n > self.max_field_bytes:
            raise ParameterError(
                f"grid of {self.points_per_dim}^{self.n} points exceeds the "
                f"storage budget of {self.max_field_bytes} bytes")

    @property
    def shape(self):
        return (self.points_per_dim,) * self.n

    @property
    def size(self):
        return self.points_per_dim ** self.n

    @property
    def spacing(self):
        return self.length / self.points_per_dim

    @property
    def cell_volume(self):
        return self.spacing ** self.n

    @property
    def volume(self):
        return self.length ** self.n

    def axis_coordinates(self):
        """Sample coordinates along one axis."""
        return np.arange(self.points_per_dim) * self.spacing

    def coordinates(self):
        """Sparse meshgrid of sample coordinates, one array per axis."""
        x = self.axis_coordinates()
        return np.meshgrid(*([x] * self.n), indexing="ij", sparse=True)

    def axis_integer_modes(self):
        """Integer mode numbers k along one axis, FFT layout."""
        N = self.points_per_dim
        return np.fft.fftfreq(N, d=1.0 / N)

    def axis_frequencies(self):
        """Frequencies xi = 2*pi*k/length along one axis, FFT layout."""
        return (2.0 * math.pi / self.length) * self.axis_integer_modes()

    @cached_property
    def xi_squared(self):
        """|xi|^2 on the full lattice, shape ``self.shape``."""
        xi = self.axis_frequencies()
        axes = np.meshgrid(*([xi] * self.n), indexing="ij", sparse=True)
        total = np.zeros(self.shape)
        for a in axes:
            total = total + a * a
        total.setflags(write=False)
        return total

    @cached_property
    def max_frequency(self):
        """Largest |xi| on the lattice (lives at the Nyquist corner)."""
        return float(math.sqrt(np.max(self.xi_squared)))


def _as_locked(array, dtype):
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


def require_same_grid(a, b):
    if a.grid != b.grid:
        raise InconsistentGridError(f"grids differ: {a.grid} vs {b.grid}")


@dataclass(frozen=True, eq=False)
class RealField:
    """Real samples on a TorusGrid; treated as immutable after construction."""

    grid: TorusGrid
    samples: np.ndarray

    def __post_init__(self):
        samples = _as_locked(self.samples, np.float64)
        if samples.shape != self.grid.shape:
            raise ParameterError(
                f"sample shape {samples.shape} does not match grid shape {self.grid.shape}")
        if not np.all(np.isfinite(samples)):
            raise ParameterError("field samples must be finite")
        object.__setattr__(self, "samples", samples)

    def __add__(self, other):
        require_same_grid(self, other)
        return RealField(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        require_same_grid(self, other)
        return RealField(self.grid, self.samples - other.samples)

    def __neg__(self):
        return RealField(self.grid, -self.samples)

    def __mul__(self, scalar):
        return RealField(self.grid, self.samples * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients on the FFT lattice of a TorusGrid.

    A field representing a real function is Hermitian: c(-k) = conj(c(k)).
    """

    grid: TorusGrid
    coefficients: np.ndarray

    def __post_init__(self):
        coeff = _as_locked(self.coefficients, np.complex128)
        if coeff.shape != self.grid.shape:
            raise ParameterError(
                f"coefficient shape {coeff.shape} does not match grid shape {self.grid.shape}")
        if not np.all(np.isfinite(coeff)):
            raise ParameterError("coefficients must be finite")
        object.__setattr__(self, "coefficients", coeff)

    def hermitian_defect(self):
        """Sup-norm distance to the Hermitian part, relative to max |c|."""
        c = self.coefficients
        scale = float(np.max(np.abs(c)))
        if scale == 0.0:
            return 0.0
        defect = float(np.max(np.abs(c - conj_reverse(c))))
        return defect / scale

    def symmetrized(self):
        """Projection onto Hermitian symmetry (exact for already-real fields)."""
        c = self.coefficients
        return SpectralField(self.grid, 0.5 * (c + conj_reverse(c)))


def conj_reverse(coefficients):
    """conj(c(-k)) on the FFT lattice: flip every axis, then roll by one."""
    n = coefficients.ndim
    flipped = np.flip(coefficients)
    rolled = np.roll(flipped, shift=(1,) * n, axis=tuple(range(n)))
    return np.conj(rolled)


def forward_transform(f):
    """Unitary DFT of a real field."""
    c = scipy.fft.fftn(f.samples, norm="ortho", workers=fft_workers())
    return SpectralField(f.grid, c)


def inverse_transform(F, symmetry_tol=1e-10):
    """Unitary inverse DFT; requires Hermitian input, returns a real field.

    A relative Hermitian defect above ``symmetry_tol`` raises SymmetryError.
    The imaginary residue after the transform must sit below 1e-12 relative
    to the field scale; it is asserted and discarded.
    """
    defect = F.hermitian_defect()
    if defect > symmetry_tol:
        raise SymmetryError(
            f"relative Hermitian defect {defect:.3e} exceeds tolerance {symmetry_tol:.3e}")
    y = scipy.fft.ifftn(F.coefficients, norm="ortho", workers=fft_workers())
    scale = max(float(np.max(np.abs(y))), 1e-300)
    residue = float(np.max(np.abs(y.imag)))
    if residue > 1e-12 * scale:
        raise SymmetryError(
            f"imaginary residue {residue:.3e} exceeds 1e-12 of field scale {scale:.3e}")
    return RealField(F.grid, y.real)


def lp_norm(f, p):
    """Riemann-sum L_p norm on the torus; p = inf gives the sample maximum."""
    if not p >= 1:
        raise ParameterError(f"p must satisfy 1 <= p <= inf, got {p}")
    a = np.abs(f.samples)
    if math.isinf(p):
        return float(np.max(a))
    return float((np.sum(a ** p) * f.grid.cell_volume) ** (1.0 / p))


def l2_norm_of_coefficients(coefficients, grid):
    """Physical L_2 norm straight from unitary coefficients (Parseval)."""
    return float(math.sqrt(grid.cell_volume) * np.linalg.norm(coefficients.ravel()))


def nyquist_mask(grid):
    """True on modes whose index hits the unpaired Nyquist plane of any axis."""
    N = grid.points_per_dim
    on_axis = grid.axis_integer_modes() == -(N // 2)
    mask = np.zeros(grid.shape, dtype=bool)
    for axis in range(grid.n):
        shape = [1] * grid.n
        shape[axis] = N
        mask |= on_axis.reshape(shape)
    return mask


def zero_field(grid):
    return RealField(grid, np.zeros(grid.shape))


def constant_field(grid, value):
    return RealField(grid, np.full(grid.shape, float(value)))
