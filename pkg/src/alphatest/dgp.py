"""Synthetic data generation for the simulation study.

Factors follow AR(1) processes with GARCH(1,1) innovations mimicking the
Fama-French three factors; errors are drawn from one of four residual
covariance models under three innovation laws; sparse alpha signals keep
a fixed total signal strength regardless of sparsity.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NotPositiveDefinite
from .linalg import sym_eigen
from .ols import FactorPanel

__all__ = [
    "FactorProcessParams",
    "CovModelSpec",
    "AlphaSpec",
    "gen_factors",
    "build_cov",
    "cov_sqrt",
    "gen_errors",
    "gen_betas",
    "gen_alpha",
    "assemble_panel",
]

ERROR_DISTS = ("normal", "t5_scaled", "mixture_scaled")
COV_MODELS = ("M1", "M2", "M3", "M4")


@dataclass(frozen=True)
class FactorProcessParams:
    """AR(1) + GARCH(1,1) coefficients for the three simulated factors.

    Defaults are the Market / SMB / HML calibration: the AR recursion is
    ``f_t = a + b * f_{t-1} + sqrt(h_t) * zeta_t`` with variance
    ``h_t = c + d * h_{t-1} + e * zeta_{t-1}**2``.
    """

    ar_intercept: tuple = (0.53, 0.19, 0.19)
    ar_coef: tuple = (0.06, 0.19, 0.05)
    garch_intercept: tuple = (0.89, 0.62, 0.80)
    garch_persistence: tuple = (0.85, 0.74, 0.76)
    arch_coef: tuple = (0.11, 0.19, 0.15)
    burn_in: int = 50
    f_init: float = 0.0
    h_init: float = 1.0

    def __post_init__(self):
        for d, e in zip(self.garch_persistence, self.arch_coef):
            if d + e >= 1.0:
                raise ValueError("GARCH persistence + ARCH coefficient must be < 1")

    @property
    def n_factors(self) -> int:
        return len(self.ar_intercept)


@dataclass(frozen=True)
class CovModelSpec:
    """Which residual covariance model to build, with its parameters."""

    kind: str = "M1"
    m1_base: float = 0.7
    m3_base: float = 0.6
    spike_exponent: float = 0.3
    spike_low: float = 0.7
    spike_high: float = 0.9
    diag_low: float = 1.0
    diag_high: float = 2.0
    rook_rho: float = 0.5

    def __post_init__(self):
        if self.kind not in COV_MODELS:
            raise ValueError(f"unknown covariance model {self.kind!r}")


@dataclass(frozen=True)
class AlphaSpec:
    """Sparse intercept vector with sparsity-invariant signal strength."""

    alpha: np.ndarray
    support: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.support.size


def gen_factors(
    t: int,
    params: FactorProcessParams = FactorProcessParams(),
    rng: np.random.Generator | None = None,
    zeta: np.ndarray | None = None,
) -> np.ndarray:
    """Simulate T rows of the three-factor AR-GARCH process.

    The recursion starts `burn_in` periods before the sample with
    f = f_init and h = h_init; only the final T rows are returned.  At
    each step the variance is updated from the previous innovation first,
    then the new innovation is drawn.

    `zeta` overrides the innovations with a given (burn_in + T + 1) x k
    array; used by tests to force deterministic paths.
    """
    k = params.n_factors
    steps = params.burn_in + t + 1
    if zeta is None:
        if rng is None:
            raise ValueError("either rng or zeta must be provided")
        zeta = rng.standard_normal((steps, k))
    else:
        zeta = np.asarray(zeta, dtype=float)
        if zeta.shape != (steps, k):
            raise DimensionError(f"zeta must have shape {(steps, k)}, got {zeta.shape}")

    a = np.asarray(params.ar_intercept)
    b = np.asarray(params.ar_coef)
    c = np.asarray(params.garch_intercept)
    d = np.asarray(params.garch_persistence)
    e = np.asarray(params.arch_coef)

    f = np.full(k, params.f_init)
    h = np.full(k, params.h_init)
    out = np.empty((t, k))
    for step in range(1, steps):
        h = c + d * h + e * zeta[step - 1] ** 2
        f = a + b * f + np.sqrt(h) * zeta[step]
        idx = step - (params.burn_in + 1)
        if idx >= 0:
            out[idx] = f
    return out


def build_cov(spec: CovModelSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Construct an N x N residual covariance matrix for one of the models.

    M1: AR(1)-style bands 0.7**|i-j|.  M2: single random spiked factor in
    the correlation, random U(1,2) variances.  M3: inverse of 0.6**|i-j|.
    M4: rank-one spike plus a rook-form spatial-autoregressive part.
    """
    if n < 2:
        raise DimensionError(f"need N >= 2, got {n}")
    idx = np.arange(n)
    dist = np.abs(idx[:, None] - idx[None, :])
    if spec.kind == "M1":
        sigma = spec.m1_base**dist
    elif spec.kind == "M3":
        omega = spec.m3_base**dist
        sigma = np.linalg.inv(omega)
        sigma = (sigma + sigma.T) / 2.0
    elif spec.kind == "M2":
        diag = rng.uniform(spec.diag_low, spec.diag_high, size=n)
        b = np.zeros(n)
        n_spikes = int(n**spec.spike_exponent)
        positions = rng.choice(n, size=n_spikes, replace=False)
        b[positions] = rng.uniform(spec.spike_low, spec.spike_high, size=n_spikes)
        r = np.eye(n) + np.outer(b, b) - np.diag(b**2)
        root_d = np.sqrt(diag)
        sigma = r * np.outer(root_d, root_d)
    else:  # M4
        n_spikes = int(n**spec.spike_exponent)
        gamma = np.zeros(n)
        gamma[:n_spikes] = rng.uniform(spec.spike_low, spec.spike_high, size=n_spikes)
        w = np.zeros((n, n))
        for i in range(n - 2):  # w[i+1, i] for i = 1..N-2 (1-based)
            w[i + 1, i] = 0.5
        for j in range(2, n):  # w[j-1, j] for j = 3..N (1-based)
            w[j - 1, j] = 0.5
        w[0, 1] = 1.0
        w[n - 1, n - 2] = 1.0
        inv = np.linalg.inv(np.eye(n) - spec.rook_rho * w)
        sigma = np.outer(gamma, gamma) + inv @ inv.T
        sigma = (sigma + sigma.T) / 2.0
    if np.linalg.eigvalsh(sigma)[0] <= 0:
        raise NotPositiveDefinite(f"covariance model {spec.kind} draw is not PD")
    return sigma


def cov_sqrt(sigma: np.ndarray) -> np.ndarray:
    """Symmetric positive-definite square root via eigendecomposition."""
    eig = sym_eigen(sigma)
    if eig.eigenvalues[-1] <= 0:
        raise NotPositiveDefinite("matrix has a non-positive eigenvalue")
    q = eig.eigenvectors
    root = (q * np.sqrt(eig.eigenvalues)) @ q.T
    return (root + root.T) / 2.0


def gen_errors(
    sigma_root: np.ndarray, dist: str, t: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw an N x T error matrix with covariance sigma_root @ sigma_root.

    Innovations are iid per entry with unit variance: standard normal,
    t(5) scaled by sqrt(5/3), or the 0.9 N(0,1) + 0.1 N(0,9) mixture
    scaled by sqrt(1.8).
    """
    if dist not in ERROR_DISTS:
        raise ValueError(f"unknown error distribution {dist!r}")
    n = sigma_root.shape[0]
    if dist == "normal":
        z = rng.standard_normal((n, t))
    elif dist == "t5_scaled":
        z = rng.standard_t(5, size=(n, t)) / np.sqrt(5.0 / 3.0)
    else:
        z = rng.standard_normal((n, t))
        wide = rng.random((n, t)) < 0.1
        z = np.where(wide, 3.0 * z, z) / np.sqrt(1.8)
    return sigma_root @ z


def gen_betas(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw factor loadings: U(0.2,2), U(-1,1.5) and U(-1.5,1.5) columns."""
    return np.column_stack(
        [
            rng.uniform(0.2, 2.0, size=n),
            rng.uniform(-1.0, 1.5, size=n),
            rng.uniform(-1.5, 1.5, size=n),
        ]
    )


def gen_alpha(
    n: int,
    m: int,
    t: int,
    rng: np.random.Generator | None = None,
    support: np.ndarray | None = None,
) -> AlphaSpec:
    """Sparse intercepts: sqrt(10 * log(N) / (m * T)) on a random support.

    The squared norm is 10 * log(N) / T for every m, so power comparisons
    across sparsity levels hold the signal strength fixed.  m = 0 gives
    the null.  A fixed `support` may be supplied instead of drawing one.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= N, got m={m}, N={n}")
    alpha = np.zeros(n)
    if m == 0:
        return AlphaSpec(alpha=alpha, support=np.array([], dtype=int))
    if support is None:
        if rng is None:
            raise ValueError("either rng or support must be provided")
        support = np.sort(rng.choice(n, size=m, replace=False))
    else:
        support = np.sort(np.asarray(support, dtype=int))
        if support.size != m:
            raise ValueError("support size must equal m")
    alpha[support] = np.sqrt(10.0 * np.log(n) / (m * t))
    return AlphaSpec(alpha=alpha, support=support)


def assemble_panel(
    alpha: np.ndarray, betas: np.ndarray, factors: np.ndarray, errors: np.ndarray
) -> FactorPanel:
    """Compose returns Y = alpha + betas @ factors' + errors."""
    alpha = np.asarray(alpha, dtype=float)
    n, t = errors.shape
    if betas.shape != (n, factors.shape[1]) or factors.shape[0] != t or alpha.size != n:
        raise DimensionError("alpha, betas, factors and errors shapes disagree")
    returns = alpha[:, None] + betas @ factors.T + errors
    return FactorPanel(returns=returns, factors=factors)
