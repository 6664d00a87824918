"""Empirical inequality checkers for sampled non-negative functions.

Each checker evaluates both sides of a pointwise inequality from grid
samples and reports the worst ratio or empirical constant; inequalities
hold up to a configurable discretization slack (5% by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import finitediff
from .holder import SampledFunction, estimate_seminorm

DEFAULT_SLACK = 0.05


def fd_noise(values: np.ndarray, h: float, order: int) -> float:
    """Resolution limit of an order-``order`` central difference.

    Roundoff of the samples is amplified by roughly the stencil weight
    sum over h^order; numerators below this cannot be distinguished from
    zero and are treated as such.
    """
    scale = float(np.max(np.abs(values), initial=0.0))
    return 16.0 * np.finfo(float).eps * scale / h**order


def _ratio(num: np.ndarray, den: np.ndarray, noise: float = 0.0) -> np.ndarray:
    """num/den with numerators below ``noise`` zeroed and x/0 -> inf."""
    num = np.where(num > noise, num, 0.0)
    out = np.zeros_like(num, dtype=float)
    pos = den > 0
    out[pos] = num[pos] / den[pos]
    out[~pos & (num > 0)] = np.inf
    return out


@dataclass
class MalgrangeReport:
    alpha: float
    constant: float  # (alpha+1)/alpha^(alpha/(1+alpha)), used verbatim
    seminorm: float  # empirical [f']_alpha (or [grad f]_alpha)
    max_ratio: float
    slack: float

    @property
    def ok(self) -> bool:
        return self.max_ratio <= 1.0 + self.slack


def check_malgrange(f: SampledFunction, alpha: float, slack: float = DEFAULT_SLACK) -> MalgrangeReport:
    """|grad f| <= ((alpha+1)/alpha^(alpha/(1+alpha))) [grad f]_alpha^(1/(1+alpha)) f^(alpha/(1+alpha))."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if float(np.min(f.values)) < -1e-12:
        raise ValueError("not non-negative")
    h = f.spacing
    if f.n == 1:
        grad = np.abs(finitediff.diff_axis(f.values, h, 1))
        sn = _gradient_seminorm_1d(f, alpha)
    else:
        grad = finitediff.gradient_norm(f.values, h)
        sn = _gradient_seminorm_2d(f, alpha)
    constant = (alpha + 1.0) / alpha ** (alpha / (1.0 + alpha))
    fx = np.clip(f.values, 0.0, None)
    rhs = constant * sn ** (1.0 / (1.0 + alpha)) * fx ** (alpha / (1.0 + alpha))
    finite = np.isfinite(grad)
    ratios = _ratio(np.where(finite, grad, 0.0), rhs, noise=fd_noise(f.values, h, 1))
    ratios[~finite] = 0.0
    return MalgrangeReport(
        alpha=alpha,
        constant=constant,
        seminorm=sn,
        max_ratio=float(np.max(ratios)),
        slack=slack,
    )


def _gradient_seminorm_1d(f: SampledFunction, alpha: float) -> float:
    return estimate_seminorm(f, alpha, derivative=(1,)).value


def _gradient_seminorm_2d(f: SampledFunction, alpha: float) -> float:
    """[grad f]_alpha with the Euclidean norm of gradient differences."""
    h = f.spacing
    gx = finitediff.partial(f.values, h, (1, 0))
    gy = finitediff.partial(f.values, h, (0, 1))
    best = 0.0
    n0, n1 = f.values.shape
    max_steps = max(n0, n1)
    from .holder import _pair_offsets_2d, _shifted_views

    for off in _pair_offsets_2d(max_steps):
        ax, bx = _shifted_views(gx, off)
        ay, by = _shifted_views(gy, off)
        if ax.size == 0:
            continue
        gaps = np.hypot(ax - bx, ay - by)
        finite = np.isfinite(gaps)
        if not finite.any():
            continue
        dist = h * math.hypot(*off)
        best = max(best, float(np.max(gaps[finite])) / dist**alpha)
    return best


@dataclass
class DerivativeControlReport:
    k: int
    alpha: float
    ell: int
    constant: float

    @property
    def ok(self) -> bool:
        return math.isfinite(self.constant)


def check_derivative_control(
    f: SampledFunction, k: int, alpha: float, ell: int, directions: int = 64
) -> DerivativeControlReport:
    """Empirical constant in |grad^ell f| <= C max_j [d^j_xi f]_+^((k-ell+a)/(k-j+a)).

    The maximum runs over even j <= k and unit directions; a finite
    constant that is stable under grid refinement is the pass criterion.
    """
    if ell > k:
        raise ValueError("need ell <= k")
    h = f.spacing
    num = finitediff.nabla_norm(f.values, h, ell)
    den = None
    for j in range(0, k + 1, 2):
        if j == 0:
            dj = np.clip(f.values.astype(float), 0.0, None)
        elif f.n == 1:
            dj = np.clip(finitediff.diff_axis(f.values, h, j), 0.0, None)
        else:
            dj = None
            for idx in range(directions):
                theta = math.pi * idx / directions
                xi = (math.cos(theta), math.sin(theta))
                cand = finitediff.directional_derivative(f.values, h, j, xi)
                dj = cand if dj is None else np.fmax(dj, cand)
            dj = np.clip(dj, 0.0, None)
        powered = dj ** ((k - ell + alpha) / (k - j + alpha))
        den = powered if den is None else np.fmax(den, powered)
    mask = np.isfinite(num) & np.isfinite(den)
    ratios = _ratio(num[mask], den[mask], noise=fd_noise(f.values, h, ell))
    constant = float(np.max(ratios)) if ratios.size else 0.0
    return DerivativeControlReport(k=k, alpha=alpha, ell=ell, constant=constant)


@dataclass
class InterpolationReport:
    alpha: float
    gamma: float
    beta: float
    lhs: float  # [f]_gamma^(beta - alpha)
    rhs: float  # [f]_alpha^(beta - gamma) [f]_beta^(gamma - alpha)
    slack: float

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + self.slack) + 1e-300


def check_interpolation(
    f: SampledFunction, alpha: float, gamma: float, beta: float, slack: float = 0.02
) -> InterpolationReport:
    """Semi-norm interpolation [f]_gamma^(b-a) <= [f]_alpha^(b-g) [f]_beta^(g-a)."""
    if not 0 < alpha < gamma < beta <= 1:
        raise ValueError("need 0 < alpha < gamma < beta <= 1")
    sa = estimate_seminorm(f, alpha).value
    sg = estimate_seminorm(f, gamma).value
    sb = estimate_seminorm(f, beta).value
    return InterpolationReport(
        alpha=alpha,
        gamma=gamma,
        beta=beta,
        lhs=sg ** (beta - alpha),
        rhs=sa ** (beta - gamma) * sb ** (gamma - alpha),
        slack=slack,
    )


@dataclass
class InducReport:
    """Empirical constants of the higher-order decomposition hypotheses."""

    k: int
    alpha: float
    eta: float
    constants: dict  # level -> empirical constant (2 uses exponent eta)

    @property
    def ok(self) -> bool:
        return all(math.isfinite(c) for c in self.constants.values())


def check_induc(f: SampledFunction, k: int, alpha: float, eta: float) -> InducReport:
    """Constants for |grad^2 f| <= C f^eta and |grad^ell f| <= C f^((k-l+a)/(k+a)).

    ell runs over the even orders in (2, k].  An infinite constant (a
    point where f vanishes but the derivative does not) is a failure.
    """
    if k < 4:
        raise ValueError("need k >= 4")
    if not 0 < eta < (k - 2 + alpha) / (k + alpha):
        raise ValueError("eta out of range")
    if float(np.min(f.values)) < -1e-12:
        raise ValueError("not non-negative")
    h = f.spacing
    fx = np.clip(f.values, 0.0, None)
    constants = {}
    levels = [(2, eta)] + [
        (ell, (k - ell + alpha) / (k + alpha)) for ell in range(4, k + 1, 2)
    ]
    for ell, exponent in levels:
        num = finitediff.nabla_norm(f.values, h, ell)
        mask = np.isfinite(num)
        ratios = _ratio(num[mask], fx[mask] ** exponent, noise=fd_noise(f.values, h, ell))
        constants[ell] = float(np.max(ratios)) if ratios.size else 0.0
    return InducReport(k=k, alpha=alpha, eta=eta, constants=constants)


@dataclass
class StabilityReport:
    coarse: float
    fine: float
    factor: float

    @property
    def ok(self) -> bool:
        if not (math.isfinite(self.coarse) and math.isfinite(self.fine)):
            return False
        lo, hi = sorted((self.coarse, self.fine))
        if hi == 0.0:
            return True
        return lo > 0.0 and hi / lo <= self.factor


def refinement_stability(coarse: float, fine: float, factor: float = 1.5) -> StabilityReport:
    """Compare an empirical constant across one grid refinement."""
    return StabilityReport(coarse=coarse, fine=fine, factor=factor)
