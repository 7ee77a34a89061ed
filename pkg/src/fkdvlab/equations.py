"""Registry of the simulated equations and the pseudospectral nonlinearity.

Every equation is written as u_t = L u + c * u^p * u_x with a skew Fourier
multiplier L and p in {1, 2}.  The nonlinear term is always evaluated in
conservative (divergence) form c * d/dx(u^{p+1}/(p+1)): equal to the
pointwise form in exact arithmetic, but it preserves the discrete mean
exactly and pairs skew-symmetrically against the solution, which keeps the
discrete L^2 drift at time-integration level only.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigurationError
from .spectral import (
    Grid,
    MultiplierSymbol,
    SpectralField,
    dealias,
    fractional_dispersion_symbol,
    inverse_transform,
    transform,
    whitham_scalar_symbol,
)


@dataclass
class EquationSpec:
    """One evolution equation: linear symbol plus power-law nonlinearity."""

    name: str
    linear_symbol: MultiplierSymbol
    nonlinearity_degree: int            # p: 1 (quadratic term) or 2 (cubic term)
    nonlinearity_coefficient: float     # c in  u_t = L u + c u^p u_x
    alpha: float | None = None
    epsilon: float | None = None
    _linear_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.nonlinearity_degree not in (1, 2):
            raise ConfigurationError(
                f"nonlinearity degree must be 1 or 2, got {self.nonlinearity_degree}")

    @property
    def dealias_degree(self) -> int:
        """Degree of the pointwise product u^{p+1} entering the nonlinearity."""
        return self.nonlinearity_degree + 1

    @property
    def is_dispersive(self) -> bool:
        return self.linear_symbol is not ZERO_SYMBOL

    def linear_values(self, grid: Grid) -> np.ndarray:
        """Linear symbol evaluated on the grid (cached per grid)."""
        key = grid.key()
        vals = self._linear_cache.get(key)
        if vals is None:
            vals = self.linear_symbol.on_grid(grid)
            self._linear_cache[key] = vals
        return vals

    def params(self) -> dict:
        out = {}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
        return out


ZERO_SYMBOL = MultiplierSymbol(lambda xi: np.zeros_like(np.asarray(xi, dtype=complex)), "0")


def _mkdv_symbol(epsilon: float) -> MultiplierSymbol:
    # Linear part of v_t + v_x + (eps/6) v_xxx = 0.  The third-derivative
    # coefficient eps/6 is the one produced by the long-wave expansion
    # (tanh z / z)^{1/2} = 1 - z^2/6 + O(z^4) of the scaled water-wave
    # symbol, so the comparison with the scaled nonlocal equation closes at
    # second order in eps.
    def evaluate(xi):
        xi = np.asarray(xi, dtype=float)
        return -1j * xi + 1j * (epsilon / 6.0) * xi ** 3

    return MultiplierSymbol(evaluate, f"-i*xi + i*({epsilon}/6)*xi^3")


#: The registry proper: the equations the studies quantify.
REGISTRY_KINDS = (
    "modified_fkdv",
    "fkdv",
    "modified_whitham",
    "rescaled_modified_whitham",
    "mkdv",
    "modified_burgers",
)

#: Extra constructible kinds kept for contrast runs.
EQUATION_KINDS = REGISTRY_KINDS + ("whitham", "burgers")


def make_equation(kind: str, alpha: float | None = None,
                  epsilon: float | None = None,
                  permissive_alpha: bool = False) -> EquationSpec:
    """Construct a registry equation by name.

    alpha is required for the fractional kinds, epsilon for the rescaled
    long-wave kinds.  ``permissive_alpha`` widens the admissible alpha range
    to (-1, 1) \\ {0} for quadratic-equation contrast studies.
    """
    kind = kind.lower()
    if kind not in EQUATION_KINDS:
        raise ConfigurationError(
            f"unknown equation kind {kind!r}; expected one of {EQUATION_KINDS}")

    if kind in ("modified_fkdv", "fkdv"):
        if alpha is None:
            raise ConfigurationError(f"{kind} requires parameter alpha")
        symbol = fractional_dispersion_symbol(alpha, permissive=permissive_alpha)
        p = 2 if kind == "modified_fkdv" else 1
        return EquationSpec(kind, symbol, p, -1.0, alpha=alpha)

    if kind in ("modified_whitham", "whitham"):
        scalar = whitham_scalar_symbol(None)

        def evaluate(xi, _scalar=scalar.evaluate):
            xi = np.asarray(xi, dtype=float)
            return -1j * xi * _scalar(xi)

        symbol = MultiplierSymbol(evaluate, "-i*xi*(tanh|xi|/|xi|)^(1/2)")
        p = 2 if kind == "modified_whitham" else 1
        return EquationSpec(kind, symbol, p, -1.0)

    if kind == "rescaled_modified_whitham":
        if epsilon is None:
            raise ConfigurationError(f"{kind} requires parameter epsilon")
        if epsilon <= 0:
            raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
        scalar = whitham_scalar_symbol(epsilon)

        def evaluate(xi, _scalar=scalar.evaluate):
            xi = np.asarray(xi, dtype=float)
            return -1j * xi * _scalar(xi)

        symbol = MultiplierSymbol(evaluate, f"-i*xi*l(sqrt({epsilon})*xi)")
        return EquationSpec(kind, symbol, 2, -epsilon, epsilon=epsilon)

    if kind == "mkdv":
        if epsilon is None:
            raise ConfigurationError("mkdv requires parameter epsilon")
        if epsilon <= 0:
            raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
        return EquationSpec(kind, _mkdv_symbol(epsilon), 2, -epsilon, epsilon=epsilon)

    if kind == "modified_burgers":
        return EquationSpec(kind, ZERO_SYMBOL, 2, -1.0)

    # plain (quadratic) Burgers: dispersionless contrast for the p=1 kinds
    return EquationSpec(kind, ZERO_SYMBOL, 1, -1.0)


def linearized(eq: EquationSpec) -> EquationSpec:
    """Copy of the equation with the nonlinearity switched off."""
    return replace(eq, nonlinearity_coefficient=0.0, _linear_cache={})


def nonlinearity(eq: EquationSpec, u_hat: SpectralField) -> SpectralField:
    """Spectral right-hand side c * d/dx(u^{p+1}/(p+1)), alias-free.

    The dealias mask for degree p+1 is applied to the input before the
    pointwise power and to the output after differentiation, so retained
    modes carry the exact truncated convolution.
    """
    c = eq.nonlinearity_coefficient
    grid = u_hat.grid
    if c == 0.0:
        return SpectralField(grid, np.zeros(grid.n_points, dtype=complex))
    degree = eq.dealias_degree
    p = eq.nonlinearity_degree
    v_hat = dealias(u_hat, degree)
    v = inverse_transform(v_hat)
    w_hat = transform(grid, v ** (p + 1) / (p + 1))
    out = (1j * grid.wavenumbers) * w_hat.coeffs
    out[0] = 0.0
    return dealias(SpectralField(grid, c * out), degree)
