"""Periodic spectral representation and Fourier analysis utilities.

Fields live on a uniform periodic grid of ``n`` points over ``[0, L)``.
Spectral coefficients follow the continuous-transform normalization

    coeff(xi_k) = (dx / sqrt(2*pi)) * sum_m u(x_m) exp(-i x_m xi_k),

with wavenumbers xi_k = 2*pi*k/L stored in ascending order,
k = -n/2 ... n/2 - 1.  With this choice the spectral sum
``sum |coeff|^2 * dxi`` equals the physical quadrature of ``int |u|^2 dx``
(Parseval), and the analytic Fourier formulas for multipliers, profiles
and phase corrections transcribe with no hidden constants.

All functions here are pure; grids and fields are immutable value objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (BoundaryMassWarning, ConfigurationError,
                     GridMismatchError, ShapeError)

import warnings

_SQRT_2PI = np.sqrt(2.0 * np.pi)

#: Share of the squared-mass budget allowed in the outer 10% of the box
#: before a localization-sensitive norm is flagged unreliable.
BOUNDARY_MASS_THRESHOLD = 1e-6


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [0, box_length)."""

    n_points: int
    box_length: float

    def __post_init__(self):
        if not isinstance(self.n_points, (int, np.integer)) or not _is_power_of_two(int(self.n_points)) or self.n_points < 8:
            raise ConfigurationError(
                f"n_points must be a power of two >= 8, got {self.n_points}")
        if not self.box_length > 0:
            raise ConfigurationError(
                f"box_length must be positive, got {self.box_length}")

    @property
    def dx(self) -> float:
        return self.box_length / self.n_points

    @property
    def dxi(self) -> float:
        """Wavenumber spacing 2*pi/L."""
        return 2.0 * np.pi / self.box_length

    @property
    def mode_index(self) -> np.ndarray:
        """Integer mode indices k = -n/2 ... n/2-1, ascending."""
        n = self.n_points
        return np.arange(-(n // 2), n // 2)

    @property
    def wavenumbers(self) -> np.ndarray:
        """xi_k = 2*pi*k/L, ascending; single Nyquist mode at the left end."""
        return self.mode_index * self.dxi

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n_points) * self.dx

    @property
    def x_center(self) -> float:
        return 0.5 * self.box_length

    def key(self) -> tuple:
        return (self.n_points, self.box_length)


def make_grid(n_points: int, box_length: float) -> Grid:
    return Grid(int(n_points), float(box_length))


@dataclass(frozen=True)
class SpectralField:
    """Complex Fourier coefficients of one field, paired with its grid."""

    grid: Grid
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.coeffs.shape != (self.grid.n_points,):
            raise ShapeError(
                f"coefficient array of shape {self.coeffs.shape} does not match "
                f"grid with {self.grid.n_points} points")

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy())


def transform(grid: Grid, samples: np.ndarray) -> SpectralField:
    """Physical samples -> spectral coefficients (ascending wavenumber order)."""
    samples = np.asarray(samples)
    if samples.shape != (grid.n_points,):
        raise ShapeError(
            f"sample array of shape {samples.shape} does not match grid "
            f"with {grid.n_points} points")
    coeffs = np.fft.fftshift(np.fft.fft(samples)) * (grid.dx / _SQRT_2PI)
    return SpectralField(grid, coeffs)


def inverse_transform(fld: SpectralField, real: bool = True) -> np.ndarray:
    """Spectral coefficients -> physical samples.

    With ``real=True`` the (tiny) imaginary residue of a Hermitian field is
    dropped; pass ``real=False`` for genuinely complex synthesis.
    """
    u = np.fft.ifft(np.fft.ifftshift(fld.coeffs)) * (_SQRT_2PI / fld.grid.dx)
    return u.real if real else u


def hermitian_defect(fld: SpectralField) -> float:
    """Max deviation from coeff(-xi) == conj(coeff(xi)), Nyquist ignored."""
    c = fld.coeffs
    tail = c[1:]
    return float(np.max(np.abs(tail - np.conj(tail[::-1]))))


def hermitize(fld: SpectralField) -> SpectralField:
    """Project onto the Hermitian-symmetric subspace; zero the Nyquist mode."""
    c = fld.coeffs.copy()
    c[0] = 0.0
    c[1:] = 0.5 * (c[1:] + np.conj(c[1:][::-1]))
    return SpectralField(fld.grid, c)


@dataclass(frozen=True)
class MultiplierSymbol:
    """A Fourier multiplier m(xi), evaluated pointwise on wavenumber arrays."""

    evaluate: Callable[[np.ndarray], np.ndarray]
    description: str = ""

    def on_grid(self, grid: Grid) -> np.ndarray:
        values = np.asarray(self.evaluate(grid.wavenumbers), dtype=complex)
        values = values.copy()
        values[0] = 0.0  # Nyquist: odd symbols are ill-defined there
        return values


def is_skew(symbol: MultiplierSymbol, xi: np.ndarray, tol: float = 1e-12) -> bool:
    """True if m(-xi) == conj(m(xi)) and m is purely imaginary on ``xi``."""
    m = np.asarray(symbol.evaluate(xi), dtype=complex)
    m_neg = np.asarray(symbol.evaluate(-xi), dtype=complex)
    scale = max(1.0, float(np.max(np.abs(m))))
    return (np.max(np.abs(m.real)) <= tol * scale
            and np.max(np.abs(m_neg - np.conj(m))) <= tol * scale)


def apply_multiplier(fld: SpectralField, symbol: MultiplierSymbol) -> SpectralField:
    return SpectralField(fld.grid, fld.coeffs * symbol.on_grid(fld.grid))


def derivative_symbol() -> MultiplierSymbol:
    return MultiplierSymbol(lambda xi: 1j * xi, "d/dx")


def fractional_dispersion_symbol(alpha: float, permissive: bool = False) -> MultiplierSymbol:
    """Symbol i*sign(xi)*|xi|^(1+alpha) of the operator |D|^alpha d/dx.

    The default admissible range is -1 < alpha < 0 (weak dispersion);
    ``permissive=True`` widens it to (-1, 1) \\ {0} for quadratic-equation
    contrast studies and sweep checks.
    """
    lo, hi = (-1.0, 1.0) if permissive else (-1.0, 0.0)
    if not (lo < alpha < hi) or alpha == 0.0:
        raise ConfigurationError(
            f"alpha must lie in ({lo}, {hi}) and be nonzero, got {alpha}")

    def evaluate(xi):
        xi = np.asarray(xi, dtype=float)
        return 1j * np.sign(xi) * np.abs(xi) ** (1.0 + alpha)

    return MultiplierSymbol(evaluate, f"i*xi*|xi|^{alpha}")


def whitham_scalar_symbol(epsilon: float | None = None) -> MultiplierSymbol:
    """Scalar symbol l(sqrt(eps)*xi) = (tanh(sqrt(eps)|xi|)/(sqrt(eps)|xi|))^(1/2).

    ``epsilon=None`` gives the unscaled operator (eps = 1).  The value at
    xi = 0 is the limit 1.  The full linear-part symbol used by steppers is
    -i*xi*l(sqrt(eps)*xi).
    """
    eps = 1.0 if epsilon is None else float(epsilon)
    if eps <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {eps}")
    root_eps = np.sqrt(eps)

    def evaluate(xi):
        z = root_eps * np.abs(np.asarray(xi, dtype=float))
        small = z < 1e-8
        zsafe = np.where(small, 1.0, z)
        ratio = np.where(small, 1.0 - z * z / 3.0, np.tanh(zsafe) / zsafe)
        return np.sqrt(ratio).astype(complex)

    return MultiplierSymbol(evaluate, f"(tanh(sqrt({eps})|xi|)/(sqrt({eps})|xi|))^(1/2)")


# ---------------------------------------------------------------------------
# Dyadic (Littlewood-Paley style) frequency cutoffs
# ---------------------------------------------------------------------------

def _smooth_step(x: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, exp(-1/x)-mollified between."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    out[x <= 0.0] = 0.0
    out[x >= 1.0] = 1.0
    mid = (x > 0.0) & (x < 1.0)
    xm = x[mid]
    a = np.exp(-1.0 / xm)
    b = np.exp(-1.0 / (1.0 - xm))
    out[mid] = a / (a + b)
    return out


class DyadicCutoffs:
    """Smooth dyadic partition of frequency space.

    ``phi`` equals 1 on |xi| <= 1 and 0 on |xi| >= 2 (exp-based mollified
    step); ``psi = phi - phi(2 .)`` is the unit band bump, with rescalings
    psi_j(xi) = psi(xi / 2^j), phi_j(xi) = phi(xi / 2^j).  Telescoping gives
    the exact partition phi + sum_{j>=1} psi_j = 1.
    """

    description = "exp(-1/x)-mollified step, transition on 1<|xi|<2"

    def phi(self, xi) -> np.ndarray:
        return _smooth_step(2.0 - np.abs(np.asarray(xi, dtype=float)))

    def psi(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return self.phi(xi) - self.phi(2.0 * xi)

    def phi_j(self, xi, j: int) -> np.ndarray:
        return self.phi(np.asarray(xi, dtype=float) / 2.0 ** j)

    def psi_j(self, xi, j: int) -> np.ndarray:
        return self.psi(np.asarray(xi, dtype=float) / 2.0 ** j)


CUTOFFS = DyadicCutoffs()


def lp_project(fld: SpectralField, j: int, mode: str = "band") -> SpectralField:
    """Dyadic projection: ``band`` multiplies by psi_j, ``low`` by phi_j.

    The high-pass projection is obtainable as identity minus ``low``.
    """
    xi = fld.grid.wavenumbers
    if mode == "band":
        mask = CUTOFFS.psi_j(xi, j)
    elif mode == "low":
        mask = CUTOFFS.phi_j(xi, j)
    else:
        raise ConfigurationError(f"unknown projection mode {mode!r}")
    return SpectralField(fld.grid, fld.coeffs * mask)


def active_band_range(grid: Grid) -> tuple[int, int]:
    """Dyadic indices j for which psi_j can be nonzero on this grid."""
    xi_min_pos = grid.dxi
    xi_max = float(np.max(np.abs(grid.wavenumbers)))
    j_lo = int(np.floor(np.log2(xi_min_pos))) - 1
    j_hi = int(np.ceil(np.log2(xi_max))) + 1
    return j_lo, j_hi


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------

def norm_l2(fld: SpectralField) -> float:
    u = inverse_transform(fld)
    return float(np.sqrt(np.sum(u * u) * fld.grid.dx))


def norm_l1(fld: SpectralField) -> float:
    u = inverse_transform(fld)
    return float(np.sum(np.abs(u)) * fld.grid.dx)


def norm_linf(fld: SpectralField) -> float:
    u = inverse_transform(fld)
    return float(np.max(np.abs(u)))


def norm_sobolev(fld: SpectralField, s: float) -> float:
    xi = fld.grid.wavenumbers
    weights = (1.0 + xi * xi) ** s
    return float(np.sqrt(np.sum(weights * np.abs(fld.coeffs) ** 2) * fld.grid.dxi))


def norm_z(fld: SpectralField, weight: float = 10.0,
           noise_floor: float = 1e-14) -> float:
    """Weighted sup norm max (1+|xi|)^weight |coeff(xi)|.

    Coefficients below ``noise_floor`` times the spectral peak count as
    zero: they are transform round-off, and the high-frequency weight would
    otherwise amplify round-off into the reported norm.
    """
    xi = fld.grid.wavenumbers
    mag = np.abs(fld.coeffs)
    peak = float(np.max(mag))
    if peak > 0.0:
        mag = np.where(mag >= noise_floor * peak, mag, 0.0)
    return float(np.max((1.0 + np.abs(xi)) ** weight * mag))


def boundary_mass_fraction(fld: SpectralField) -> float:
    """Share of int u^2 dx carried by the outer 10% of the box."""
    u = inverse_transform(fld)
    x = fld.grid.x
    L = fld.grid.box_length
    outer = (x < 0.05 * L) | (x >= 0.95 * L)
    total = float(np.sum(u * u))
    if total == 0.0:
        return 0.0
    return float(np.sum(u[outer] ** 2) / total)


def norm_h11(fld: SpectralField, warn: bool = True) -> float:
    """H^{1,1} norm: H^1 norm of <x - x_center> * u.

    Meaningful only for fields localized away from the box boundary; when the
    boundary mass fraction exceeds the threshold the value is still returned
    but a BoundaryMassWarning is emitted.
    """
    if warn and boundary_mass_fraction(fld) > BOUNDARY_MASS_THRESHOLD:
        warnings.warn(
            "H^{1,1} norm evaluated on a field with boundary mass fraction "
            f"above {BOUNDARY_MASS_THRESHOLD:g}; result unreliable",
            BoundaryMassWarning, stacklevel=2)
    u = inverse_transform(fld)
    xc = fld.grid.x - fld.grid.x_center
    weighted = np.sqrt(1.0 + xc * xc) * u
    return norm_sobolev(transform(fld.grid, weighted), 1.0)


def compute_norm(fld: SpectralField, kind: str, param: float | None = None) -> float:
    """Dispatch by norm name: l2 | linf | l1 | sobolev | z | h11.

    ``param`` carries the Sobolev order (default 8) or the Z weight
    (default 10); it is ignored for the other kinds.
    """
    kind = kind.lower()
    if kind == "l2":
        return norm_l2(fld)
    if kind == "linf":
        return norm_linf(fld)
    if kind == "l1":
        return norm_l1(fld)
    if kind == "sobolev":
        return norm_sobolev(fld, 8.0 if param is None else float(param))
    if kind == "z":
        return norm_z(fld, 10.0 if param is None else float(param))
    if kind == "h11":
        return norm_h11(fld)
    raise ConfigurationError(f"unknown norm kind {kind!r}")


def mean_integral(fld: SpectralField) -> float:
    """int u dx over the box (the zero-mode coefficient times sqrt(2*pi))."""
    n = fld.grid.n_points
    return float((_SQRT_2PI * fld.coeffs[n // 2]).real)


# ---------------------------------------------------------------------------
# Dealiasing
# ---------------------------------------------------------------------------

def regrid(fld: SpectralField, new_grid: Grid) -> SpectralField:
    """Move a field to a finer or coarser grid on the same box by spectral
    zero-padding or truncation (exact for band-limited content)."""
    if abs(new_grid.box_length - fld.grid.box_length) > 1e-12 * fld.grid.box_length:
        raise GridMismatchError("regrid requires the same box length")
    n_old, n_new = fld.grid.n_points, new_grid.n_points
    c = np.zeros(n_new, dtype=complex)
    m = min(n_old, n_new)
    c[n_new // 2 - m // 2: n_new // 2 + m // 2] =         fld.coeffs[n_old // 2 - m // 2: n_old // 2 + m // 2]
    return SpectralField(new_grid, c)


def dealias_keep(n_points: int, degree: int) -> int:
    """Largest retained |mode index| for alias-free products of this degree."""
    if degree == 2:
        return n_points // 3
    if degree == 3:
        return n_points // 4
    raise ConfigurationError(f"dealias degree must be 2 or 3, got {degree}")


def dealias_mask(grid: Grid, degree: int) -> np.ndarray:
    keep = dealias_keep(grid.n_points, degree)
    return (np.abs(grid.mode_index) <= keep).astype(float)


def dealias(fld: SpectralField, degree: int) -> SpectralField:
    """Zero high modes so grid pointwise products of this degree are alias-free.

    Two-thirds rule for quadratic products, one-half rule for cubic ones.
    """
    return SpectralField(fld.grid, fld.coeffs * dealias_mask(fld.grid, degree))
