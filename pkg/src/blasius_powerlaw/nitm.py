"""Non-iterative solution of the power-law boundary-layer BVP.

One initial value problem is integrated in scaled ("star") variables with a
prescribed unit curvature at the wall; the group parameter lambda is then
recovered algebraically from the far-field slope, which yields the missing
wall curvature f''(0) and, by rescaling, the full physical solution.

The scaling group does not exist at n = 1/2 and degenerates at n = 2; those
exponents are handled by polynomial extrapolation from nearby admissible
values of n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ode_core import (
    DomainError,
    FlowParams,
    GridSolution,
    IntegratorConfig,
    IvpState,
    OdeError,
    SolutionProfile,
    flux_from_curvature,
    flux_nonnegative_projector,
    flux_system,
    integrate,
)


class ExcludedExponentError(OdeError):
    """The scaling group is unavailable at this exponent; use solve_excluded."""


class UndefinedGroupError(OdeError):
    """The scaling exponent is undefined (n = 1/2)."""


#: Exponents at which the one-IVP route is unavailable.
EXCLUDED_EXPONENTS = (0.5, 2.0)

#: Exponents this close to an excluded value are routed to extrapolation;
#: the scaling exponent blows up near n = 1/2 and amplifies round-off.
EXCLUSION_GUARD = 1e-6


@dataclass(frozen=True)
class NitmConfig:
    eta_star_inf: float = 10.0
    c0: float = 1.0
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    exclusion_eps: float = 0.1

    def __post_init__(self) -> None:
        if self.eta_star_inf <= 0.0:
            raise DomainError("eta_star_inf must be positive")
        if self.c0 <= 0.0:
            raise DomainError("c0 must be positive")
        if not (0.0 < self.exclusion_eps <= 0.25):
            raise DomainError("exclusion_eps must lie in (0, 0.25]")


@dataclass(frozen=True)
class NitmResult:
    n: float
    delta: float
    lam: float
    fpp0: float
    fp_star_inf: float
    profile: SolutionProfile
    star_profile: SolutionProfile
    method_tag: str  # "direct" or "extrapolated"


def scaling_exponent(n: float) -> float:
    """Scaling exponent delta = (2 - n)/(1 - 2n) of the invariance group."""
    if not math.isfinite(n) or n <= 0.0:
        raise DomainError(f"exponent must be finite and > 0, got {n}")
    if n == 0.5:
        raise UndefinedGroupError("the scaling group does not exist at n = 1/2")
    return (2.0 - n) / (1.0 - 2.0 * n)


def solve_star_ivp(n: float, config: NitmConfig) -> SolutionProfile:
    """Integrate the scaled IVP f*(0) = f*'(0) = 0, f*''(0) = c0 to eta_star_inf."""
    params = FlowParams(n)
    initial = IvpState(eta=0.0, f=0.0, fp=0.0, w=flux_from_curvature(config.c0, n))
    return integrate(
        flux_system(params),
        initial,
        config.eta_star_inf,
        config.integrator,
        params,
        star_frame=True,
        project=flux_nonnegative_projector(),
    )


def compute_lambda(fp_star_inf: float, delta: float) -> float:
    """Group parameter lambda = [f*'(eta*_inf)]^(1/(1 - delta))."""
    if not (fp_star_inf > 0.0) or not math.isfinite(fp_star_inf):
        raise DomainError(f"far-field slope must be finite and > 0, got {fp_star_inf}")
    if delta == 1.0:
        raise DomainError("delta = 1 makes the lambda exponent singular")
    return fp_star_inf ** (1.0 / (1.0 - delta))


def missing_initial_condition(lam: float, delta: float, c0: float = 1.0) -> float:
    """Wall curvature f''(0) = lambda^(2 delta - 1) * c0."""
    if not (lam > 0.0) or not math.isfinite(lam):
        raise DomainError(f"lambda must be finite and > 0, got {lam}")
    return lam ** (2.0 * delta - 1.0) * c0


def rescale_profile(star: SolutionProfile, lam: float, delta: float) -> SolutionProfile:
    """Map a star-frame profile to physical variables.

    Rowwise: eta = lambda^-delta eta*, f = lambda^-1 f*, f' = lambda^(delta-1) f*',
    f'' = lambda^(2 delta - 1) f*''; the flux is re-encoded from the rescaled
    curvature.
    """
    if not star.star_frame:
        raise DomainError("rescale_profile expects a star-frame profile")
    n = star.params.n
    s_eta = lam ** -delta
    s_f = 1.0 / lam
    s_fp = lam ** (delta - 1.0)
    s_fpp = lam ** (2.0 * delta - 1.0)

    etas = star.grid.ts * s_eta
    ys = np.empty_like(star.grid.ys)
    ys[:, 0] = star.grid.ys[:, 0] * s_f
    ys[:, 1] = star.grid.ys[:, 1] * s_fp
    fpp = star.curvatures() * s_fpp
    ys[:, 2] = np.array([flux_from_curvature(float(v), n) for v in fpp])

    # Node derivatives for dense output: (f', f'', w') with w' from the ODE.
    dys = np.empty_like(ys)
    dys[:, 0] = ys[:, 1]
    dys[:, 1] = fpp
    dys[:, 2] = -ys[:, 0] * fpp / (n + 1.0)

    grid = GridSolution(ts=etas, ys=ys, dys=dys)
    return SolutionProfile(grid=grid, params=star.params, config=star.config, star_frame=False)


def is_excluded(n: float, guard: float = EXCLUSION_GUARD) -> bool:
    return any(abs(n - x) < guard for x in EXCLUDED_EXPONENTS)


def solve_nitm(n: float, config: NitmConfig | None = None) -> NitmResult:
    """One-IVP solve: star integration, lambda recovery, rescaling."""
    config = config or NitmConfig()
    if is_excluded(n):
        raise ExcludedExponentError(
            f"the scaling group is unavailable at n = {n}; use solve_excluded"
        )
    delta = scaling_exponent(n)
    star = solve_star_ivp(n, config)
    fp_star_inf = star.final.fp
    lam = compute_lambda(fp_star_inf, delta)
    fpp0 = missing_initial_condition(lam, delta, config.c0)
    physical = rescale_profile(star, lam, delta)
    return NitmResult(
        n=n,
        delta=delta,
        lam=lam,
        fpp0=fpp0,
        fp_star_inf=fp_star_inf,
        profile=physical,
        star_profile=star,
        method_tag="direct",
    )


def solve_excluded(n: float, config: NitmConfig | None = None) -> NitmResult:
    """Second-order-in-eps approximation at an excluded exponent.

    n = 1/2 sits between admissible exponents, so the central average of the
    n -+ eps solves is used (error O(eps^2)).  n = 2 is approached from below
    only, via a quadratic through n - eps, n - 2 eps, n - 3 eps.
    """
    config = config or NitmConfig()
    if not is_excluded(n):
        raise DomainError(f"n = {n} is not an excluded exponent")
    eps = config.exclusion_eps
    if abs(n - 0.5) < EXCLUSION_GUARD:
        nodes = [n - eps, n + eps]
        results = [solve_nitm(x, config) for x in nodes]
        fpp0 = 0.5 * (results[0].fpp0 + results[1].fpp0)
    else:
        nodes = [n - 3 * eps, n - 2 * eps, n - eps]
        results = [solve_nitm(x, config) for x in nodes]
        coeffs = np.polyfit(nodes, [r.fpp0 for r in results], 2)
        fpp0 = float(np.polyval(coeffs, n))
    nearest = min(results, key=lambda r: abs(r.n - n))
    return NitmResult(
        n=n,
        delta=nearest.delta,
        lam=nearest.lam,
        fpp0=fpp0,
        fp_star_inf=nearest.fp_star_inf,
        profile=nearest.profile,
        star_profile=nearest.star_profile,
        method_tag="extrapolated",
    )


def profile_ode_residuals(profile: SolutionProfile) -> np.ndarray:
    """Governing-equation residual dw/deta + f f''/(n+1) at interior nodes.

    dw/deta is estimated by a centered (three-point, nonuniform) finite
    difference of the stored flux, so the result is limited by the grid
    spacing, not just the integration tolerance.
    """
    n = profile.params.n
    t = profile.grid.ts
    w = profile.grid.ys[:, 2]
    f = profile.grid.ys[:, 0]
    fpp = profile.curvatures()
    h1 = t[1:-1] - t[:-2]
    h2 = t[2:] - t[1:-1]
    dw = (
        -h2 / (h1 * (h1 + h2)) * w[:-2]
        + (h2 - h1) / (h1 * h2) * w[1:-1]
        + h1 / (h2 * (h1 + h2)) * w[2:]
    )
    return dw + f[1:-1] * fpp[1:-1] / (n + 1.0)


def solve(n: float, config: NitmConfig | None = None) -> NitmResult:
    """Route to the direct one-IVP solve or the excluded-exponent fallback."""
    config = config or NitmConfig()
    if is_excluded(n):
        return solve_excluded(n, config)
    return solve_nitm(n, config)
