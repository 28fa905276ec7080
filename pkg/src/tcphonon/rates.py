"""Tree-level decay rates from the golden rule.

Both one-to-two channels share the normalization

    Gamma = (1/S) (2 pi)^4 / (2 w_p)
            Int d3p1/((2pi)^3 2 w_1) d3p2/((2pi)^3 2 w_2) |M|^2
            delta3(p - p1 - p2) delta(w_p - w_1 - w_2),

with S = 2 for the two identical gapless daughters.

For the at-rest gapped parent the phase space collapses onto the sphere
|q| = k* with 2 w_G(k*) = Lambda, giving the closed evaluation

    Gamma = k*^2 |M(k*)|^2 / (8 pi Lambda^3 w_G'(k*)).

For a moving gapless parent the delta-functions reduce the integral to one
dimension: for each daughter magnitude q1 the angular energy-conservation
condition is solved for cos(theta) by bisection, weighted by the Jacobian
|d w_2 / d cos|^(-1) = q2 / (k q1 w_G'(q2)), and

    Gamma = (1/S) (1/(4 pi w_k)) Int q1^2 [|M|^2/(4 w_1 w_2)]
            [q2/(k q1 w_G'(q2))] dq1

over the q1-window where a root exists.  An independent Monte-Carlo oracle
estimates the same rates by sampling the 3-dimensional daughter phase space
against a Gaussian-smeared energy delta and extrapolating the width to zero;
it shares only the matrix element with the quadrature path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .model import ModelParams, PhysicalParams, params_from_physical
from .spectrum import _gapless_tables, _magnitudes, _resolvent
from .vertex import cubic_coupling

__all__ = [
    "DecayResult",
    "RateCurve",
    "lambda_threshold_momentum",
    "rate_lambda_to_2g",
    "rate_g_to_2g",
    "mc_rate_oracle",
    "scan_lambda_rate",
    "scan_g_rate",
]

_DEFAULT_REL_TOL = 1e-6
_MC_WIDTHS = (0.03, 0.015, 0.0075)  # Gaussian widths as fractions of the parent energy


@dataclass(frozen=True)
class DecayResult:
    """A single decay rate in mass units, with an absolute error estimate."""

    rate: float
    kinematically_open: bool
    estimated_error: float

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError(f"rate must be non-negative, got {self.rate}")
        if not self.kinematically_open and self.rate != 0.0:
            raise ValueError("closed channel must carry zero rate")


@dataclass(frozen=True)
class RateCurve:
    """A rate scan over one parameter; rates stored as Gamma * Omega^4 / Lambda^5."""

    parameter: str
    values: tuple[float, ...]
    rates: tuple[float, ...]
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        if len(self.values) != len(self.rates):
            raise ValueError("values and rates must have equal length")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("parameter grid must be strictly increasing")


def _omega_g(m: ModelParams, q: float) -> float:
    x_g, _, _ = _resolvent(m, q * q)
    return math.sqrt(x_g)


def _omega_g_prime(m: ModelParams, q: float) -> float:
    """d omega_G / dq from implicit differentiation of the resolvent."""
    u = q * q
    x_g, _, d = _resolvent(m, u)
    cp = m.s * m.s * (m.M * m.M + 2.0 * u)  # dc/du
    bp = 1.0 + m.s * m.s  # db/du
    return q * (cp - bp * x_g) / (d * math.sqrt(x_g))


def lambda_threshold_momentum(p: PhysicalParams) -> float:
    """Root k* of 2 w_G(k*) = Lambda: daughter momentum of the at-rest decay.

    Unique because w_G is strictly increasing and unbounded; found by
    bracketing bisection to |2 w_G(k*) - Lambda| <= 1e-12 Lambda.
    """
    m = params_from_physical(p)
    lam = p.Lambda
    lo = 0.0
    hi = 0.5 * lam / p.cs * (1.0 + 1e-9)  # w_G(k) >= cs k, so f(hi) > 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if 2.0 * _omega_g(m, mid) - lam > 0.0:
            hi = mid
        else:
            lo = mid
    kstar = 0.5 * (lo + hi)
    if abs(2.0 * _omega_g(m, kstar) - lam) > 1e-12 * lam:
        raise RuntimeError(f"threshold bisection failed to converge at cs={p.cs}")
    return kstar


def _m2_g2g(
    m: ModelParams, pref: float, wk: float, pi_k: float, sg_k: float, q1: float, q2: float
) -> float:
    """|M|^2 for gapless -> 2 gapless at daughter magnitudes (q1, q2).

    Specialization of vertex.matrix_element to three gapless legs (the phase
    structure makes the bracket purely imaginary, so only magnitudes enter):
    T = -|s_k| p_1 p_2 + |s_1| p_k p_2 + |s_2| p_k p_1.
    """
    pi_1, _, sg_1, _, w_1, _ = _magnitudes(m, q1)
    pi_2, _, sg_2, _, w_2, _ = _magnitudes(m, q2)
    t = -sg_k * pi_1 * pi_2 + sg_1 * pi_k * pi_2 + sg_2 * pi_k * pi_1
    w = wk * w_1 * w_2
    return 16.0 * pref * pref * w * w * t * t


def rate_lambda_to_2g(p: PhysicalParams) -> DecayResult:
    """Decay rate of an at-rest gapped mode into two gapless modes.

    Closed golden-rule evaluation on the threshold sphere; zero at c_s = 1
    (vanishing coupling) and at the destructive-interference point
    c_s = sqrt(3/8).
    """
    if p.cs >= 1.0:
        return DecayResult(rate=0.0, kinematically_open=True, estimated_error=0.0)
    m = params_from_physical(p)
    kstar = lambda_threshold_momentum(p)
    pi_g, _, sg_g, _, w_g, _ = _magnitudes(m, kstar)
    lam = p.Lambda
    # gapped-branch pair at k = 0 (finite limits)
    sg_l0 = 1.0 / math.sqrt(2.0 * lam)
    pi_l0 = (m.beta / lam) * sg_l0
    t = sg_l0 * pi_g * pi_g - 2.0 * sg_g * pi_l0 * pi_g
    pref = 4.0 * cubic_coupling(p)
    w = lam * w_g * w_g
    m2 = 16.0 * pref * pref * w * w * t * t
    rate = kstar * kstar * m2 / (8.0 * math.pi * lam**3 * _omega_g_prime(m, kstar))
    return DecayResult(rate=rate, kinematically_open=True, estimated_error=rate * 1e-11)


def _cos_root(m: ModelParams, wk: float, k: float, q1: float) -> tuple[float, float] | None:
    """Solve w_k - w_G(q1) - w_G(q2(cos)) = 0 for cos in [-1, 1].

    Returns (cos, q2) at the root, or None when no sign change exists.  The
    energy deficit increases monotonically in cos, so plain bisection applies.
    """
    w1 = _omega_g(m, q1)

    def f(c: float) -> float:
        q2sq = k * k + q1 * q1 - 2.0 * k * q1 * c
        q2 = math.sqrt(q2sq) if q2sq > 0.0 else 0.0
        return wk - w1 - _omega_g(m, q2)

    lo, hi = -1.0, 1.0
    if not (f(lo) <= 0.0 <= f(hi)):
        return None
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if f(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    c = 0.5 * (lo + hi)
    q2sq = k * k + q1 * q1 - 2.0 * k * q1 * c
    return c, math.sqrt(q2sq) if q2sq > 0.0 else 0.0


def _g2g_window(m: ModelParams, wk: float, k: float) -> tuple[float, float] | None:
    """Daughter-magnitude interval where the angular root exists.

    Scans a grid over (0, k), then refines both edges to 1e-12 k by bisection
    on the root-existence predicate.  Convexity of w_G makes the window a
    single interval (in fact all of (0, k) for these dispersions).
    """
    eps = 1e-9 * k
    grid = np.linspace(eps, k - eps, 257)
    flags = [_cos_root(m, wk, k, float(q)) is not None for q in grid]
    if not any(flags):
        return None
    first = flags.index(True)
    last = len(flags) - 1 - flags[::-1].index(True)

    def refine(q_out: float, q_in: float) -> float:
        for _ in range(60):
            mid = 0.5 * (q_out + q_in)
            if _cos_root(m, wk, k, mid) is None:
                q_out = mid
            else:
                q_in = mid
        return q_in

    lo = grid[first] if first == 0 else refine(float(grid[first - 1]), float(grid[first]))
    hi = grid[last] if last == len(grid) - 1 else refine(float(grid[last + 1]), float(grid[last]))
    return float(lo), float(hi)


def rate_g_to_2g(
    p: PhysicalParams,
    k: float,
    rel_tol: float = _DEFAULT_REL_TOL,
    abs_tol: float | None = None,
) -> DecayResult:
    """Decay rate of a gapless mode of momentum k into two gapless modes.

    One-dimensional golden-rule reduction (module docstring); the kinematic
    window is scanned and edge-refined, the quadrature is split at the window
    midpoint to keep the integrable edge behavior away from the adaptive core.
    Returns a closed result when no angular solution exists anywhere.
    """
    if not k > 0:
        raise ValueError(f"parent momentum must be positive, got {k}")
    if p.cs >= 1.0:
        # exactly linear dispersion: only the measure-zero collinear
        # configuration conserves energy, and the coupling vanishes
        return DecayResult(rate=0.0, kinematically_open=False, estimated_error=0.0)
    if abs_tol is None:
        abs_tol = 1e-10 * p.Lambda**5 / p.Omega**4
    m = params_from_physical(p)
    wk = _omega_g(m, k)
    pi_k, _, sg_k, _, _, _ = _magnitudes(m, k)
    pref = 4.0 * cubic_coupling(p)

    window = _g2g_window(m, wk, k)
    if window is None:
        return DecayResult(rate=0.0, kinematically_open=False, estimated_error=0.0)
    lo, hi = window

    def integrand(q1: float) -> float:
        root = _cos_root(m, wk, k, q1)
        if root is None:
            return 0.0
        _, q2 = root
        if q2 <= 0.0:
            return 0.0
        m2 = _m2_g2g(m, pref, wk, pi_k, sg_k, q1, q2)
        w1 = _omega_g(m, q1)
        w2 = _omega_g(m, q2)
        jac = q2 / (k * q1 * _omega_g_prime(m, q2))
        return q1 * q1 * (m2 / (4.0 * w1 * w2)) * jac

    norm = 8.0 * math.pi * wk  # Gamma = integral / norm, S = 2 included
    eps_val = abs_tol * norm
    mid = 0.5 * (lo + hi)
    val1, err1 = quad(integrand, lo, mid, epsabs=0.5 * eps_val, epsrel=rel_tol, limit=200)
    val2, err2 = quad(integrand, mid, hi, epsabs=0.5 * eps_val, epsrel=rel_tol, limit=200)
    rate = (val1 + val2) / norm
    return DecayResult(
        rate=max(rate, 0.0),
        kinematically_open=True,
        estimated_error=(err1 + err2) / norm,
    )


def _extrapolate_widths(
    widths: np.ndarray, vals: np.ndarray, sigs: np.ndarray
) -> tuple[float, float, float]:
    """Weighted least-squares fit vals ~ a0 + a2 width^2 -> (a0, sigma_a0, drift).

    drift is the shift of a0 when the largest width is dropped; it measures
    how far the ladder is from the asymptotic width^2 regime.
    """
    def fit(w, v, s):
        a = np.vstack([np.ones_like(w), w * w]).T / s[:, None]
        coef, *_ = np.linalg.lstsq(a, v / s, rcond=None)
        cov = np.linalg.inv(a.T @ a)
        return coef[0], math.sqrt(cov[0, 0])

    a0, sig0 = fit(widths, vals, sigs)
    a0_small, _ = fit(widths[1:], vals[1:], sigs[1:])
    return a0, sig0, abs(a0 - a0_small)


def mc_rate_oracle(
    p: PhysicalParams,
    process: str,
    k: float | None = None,
    seed: int = 0,
    samples: int = 2_000_000,
    widths: tuple[float, ...] = _MC_WIDTHS,
) -> DecayResult:
    """Monte-Carlo phase-space estimate of a decay rate.

    process is "lambda-2g" (at-rest gapped parent) or "g-2g" (gapless parent
    of momentum k).  The energy delta is smeared to a Gaussian of width
    eps = width * scale for each entry of the >= 3 element width ladder, each
    estimated on its own substream rng([seed, i]), and the ladder is
    extrapolated to zero width by a weighted fit linear in eps^2.  The scale
    is the parent energy, capped for the gapless parent by the collinearity
    margin w_k - 2 w_G(k/2): near-linear dispersion pushes the
    energy-conservation shell against the cos(theta) = 1 boundary, and a width
    wider than the margin would clip it (an O(eps) boundary error that breaks
    the eps^2 ladder).  Deterministic for fixed seed.  A ladder whose
    extrapolation drifts by more than max(2%, 4 sigma) when the largest width
    is dropped raises rather than returning silently.
    """
    if process not in ("lambda-2g", "g-2g"):
        raise ValueError(f"unknown process {process!r}; expected 'lambda-2g' or 'g-2g'")
    if len(widths) < 3:
        raise ValueError("width ladder needs at least 3 entries")
    if p.cs >= 1.0:
        open_ = process == "lambda-2g"
        return DecayResult(rate=0.0, kinematically_open=open_, estimated_error=0.0)
    m = params_from_physical(p)
    pref = 4.0 * cubic_coupling(p)
    lam = p.Lambda

    if process == "lambda-2g":
        w_parent = lam
        eps_scale = lam
        kstar = lambda_threshold_momentum(p)
        sg_l0 = 1.0 / math.sqrt(2.0 * lam)
        pi_l0 = (m.beta / lam) * sg_l0
    else:
        if k is None or not k > 0:
            raise ValueError("process 'g-2g' needs a positive parent momentum k")
        w_parent = _omega_g(m, k)
        margin = w_parent - 2.0 * _omega_g(m, 0.5 * k)
        eps_scale = min(w_parent, 8.0 * margin) if margin > 0.0 else w_parent
        pi_k, _, sg_k, _, _, _ = _magnitudes(m, k)

    vals, sigs = [], []
    for i, frac in enumerate(widths):
        eps = frac * eps_scale
        rng = np.random.default_rng([seed, i])
        # stratified-jittered radii (equal-volume strata) tame the radial noise
        strata = (np.arange(samples) + rng.random(samples)) / samples
        if process == "lambda-2g":
            radius = kstar + 6.0 * eps / p.cs
            r = radius * strata ** (1.0 / 3.0)
            w1, pim, sgm = _gapless_tables(m, r)
            de = lam - 2.0 * w1
            t = sg_l0 * pim * pim - 2.0 * sgm * pi_l0 * pim
            w = lam * w1 * w1
            m2 = 16.0 * pref * pref * w * w * t * t
            f = m2 / (4.0 * w1 * w1)
        else:
            radius = k + 6.0 * eps / p.cs
            r = radius * strata ** (1.0 / 3.0)
            mu = 2.0 * rng.random(samples) - 1.0
            q2 = np.sqrt(np.maximum(k * k + r * r - 2.0 * k * r * mu, 1e-300))
            w1, p1, s1 = _gapless_tables(m, r)
            w2, p2, s2 = _gapless_tables(m, q2)
            de = w_parent - w1 - w2
            t = -sg_k * p1 * p2 + s1 * pi_k * p2 + s2 * pi_k * p1
            w = w_parent * w1 * w2
            m2 = 16.0 * pref * pref * w * w * t * t
            f = m2 / (4.0 * w1 * w2)
        gauss = np.exp(-0.5 * (de / eps) ** 2) / (eps * math.sqrt(2.0 * math.pi))
        f = f * gauss
        volume = 4.0 / 3.0 * math.pi * radius**3
        vals.append(volume * float(f.mean()))
        sigs.append(volume * float(f.std(ddof=1)) / math.sqrt(samples))

    a0, sig0, drift = _extrapolate_widths(np.array(widths) * eps_scale, np.array(vals), np.array(sigs))
    scale = 1.0 / (2.0 * 2.0 * w_parent * (2.0 * math.pi) ** 2)  # 1/S = 1/2 included
    rate = a0 * scale
    err = math.hypot(sig0, 0.5 * drift) * scale
    floor = 1e-8 * p.Lambda**5 / p.Omega**4
    if abs(rate) > floor and drift * scale > max(0.02 * abs(rate), 4.0 * sig0 * scale):
        raise RuntimeError(
            f"width extrapolation not converged: rate={rate:.6e}, drift={drift * scale:.2e}"
        )
    return DecayResult(rate=max(rate, 0.0), kinematically_open=True, estimated_error=err)


def scan_lambda_rate(cs_grid, Lambda: float = 1.0, Omega: float = 1.0) -> RateCurve:
    """Gamma_{L->2G} over a sound-speed grid at fixed Lambda, Omega."""
    unit = Lambda**5 / Omega**4
    rates = []
    for cs in cs_grid:
        try:
            rates.append(rate_lambda_to_2g(PhysicalParams(Lambda, float(cs), Omega)).rate / unit)
        except Exception as exc:
            raise RuntimeError(f"lambda-rate scan failed at cs={cs}") from exc
    return RateCurve(
        parameter="cs", values=tuple(cs_grid), rates=tuple(rates),
        fixed={"Lambda": Lambda, "Omega": Omega},
    )


def scan_g_rate(
    cs_values,
    k_grid,
    Lambda: float = 1.0,
    Omega: float = 1.0,
    rel_tol: float = _DEFAULT_REL_TOL,
    abs_tol: float | None = None,
) -> list[RateCurve]:
    """Gamma_{G->2G} over a k-grid for each sound speed; one curve per cs."""
    unit = Lambda**5 / Omega**4
    curves = []
    for cs in cs_values:
        try:
            p = PhysicalParams(Lambda, float(cs), Omega)
        except Exception as exc:
            raise RuntimeError(f"g-rate scan failed at cs={cs}") from exc
        rates = []
        for k in k_grid:
            try:
                rates.append(rate_g_to_2g(p, float(k), rel_tol, abs_tol).rate / unit)
            except Exception as exc:
                raise RuntimeError(f"g-rate scan failed at cs={cs}, k={k}") from exc
        curves.append(
            RateCurve(
                parameter="k", values=tuple(k_grid), rates=tuple(rates),
                fixed={"Lambda": Lambda, "Omega": Omega, "cs": float(cs)},
            )
        )
    return curves
