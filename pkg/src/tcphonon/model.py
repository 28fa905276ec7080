"""Parameter representations and the symmetry-orbit background.

The quadratic + cubic action of the two-field phonon model is fixed by the
microscopic couplings (s, beta, M, Omega, gamma_i, xi).  The physical content
of the quadratic sector is carried by three numbers only: the gap

    Lambda = sqrt(M^2 + beta^2),

the sound speed

    c_s^2 = s^2 M^2 / (M^2 + beta^2),

and the symmetry-breaking scale Omega.  This module holds both
parameterizations and the bidirectional map between them on the s = 1 family,
plus the rotating background solution phi0(t) = exp(mu t Q) phi0(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "PhysicalParams",
    "BackgroundOrbit",
    "params_from_physical",
    "physical_from_params",
    "background_orbit",
]


@dataclass(frozen=True)
class ModelParams:
    """Microscopic couplings of the quadratic + cubic action.

    s is the dimensionless gradient coefficient of the phase mode, beta the
    first-derivative mixing (mass units), M the gapped-sector mass, Omega the
    symmetry-breaking scale.  gamma1..gamma3 and xi are cubic couplings; they
    do not enter the quadratic spectrum.
    """

    s: float = 1.0
    beta: float = 0.0
    M: float = 1.0
    Omega: float = 1.0
    gamma1: float = 0.0
    gamma2: float = 0.0
    gamma3: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        if not self.M > 0:
            raise ValueError(f"M must be positive, got {self.M}")
        if not self.Omega > 0:
            raise ValueError(f"Omega must be positive, got {self.Omega}")
        if not 0.0 < self.s <= 1.0:
            raise ValueError(f"s must lie in (0, 1], got {self.s}")
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")

    @property
    def gap(self) -> float:
        """k -> 0 frequency of the gapped branch, sqrt(M^2 + beta^2)."""
        return math.hypot(self.M, self.beta)


@dataclass(frozen=True)
class PhysicalParams:
    """The three independent physical parameters: gap, sound speed, scale."""

    Lambda: float = 1.0
    cs: float = 0.5
    Omega: float = 1.0

    def __post_init__(self):
        if not self.Lambda > 0:
            raise ValueError(f"Lambda must be positive, got {self.Lambda}")
        if not 0.0 < self.cs <= 1.0:
            raise ValueError(f"cs must lie in (0, 1], got {self.cs}")
        if not self.Omega > 0:
            raise ValueError(f"Omega must be positive, got {self.Omega}")


@dataclass(frozen=True)
class BackgroundOrbit:
    """Rotating ground-state orbit: frequency mu and initial 2-vector phi0."""

    mu: float
    phi0: tuple[float, float]


def params_from_physical(p: PhysicalParams) -> ModelParams:
    """Map (Lambda, cs, Omega) to microscopic couplings on the s = 1 family.

    M = cs*Lambda, beta = Lambda*sqrt(1 - cs^2), gamma1 = beta^2/(2 Omega^2);
    the remaining cubic couplings vanish on this family.
    """
    # sqrt((1-cs)(1+cs)) keeps full precision for cs near 1
    beta = p.Lambda * math.sqrt((1.0 - p.cs) * (1.0 + p.cs))
    return ModelParams(
        s=1.0,
        beta=beta,
        M=p.cs * p.Lambda,
        Omega=p.Omega,
        gamma1=beta * beta / (2.0 * p.Omega**2),
    )


def physical_from_params(m: ModelParams) -> PhysicalParams:
    """Inverse map: Lambda = sqrt(M^2+beta^2), cs = s*M/Lambda."""
    lam = math.hypot(m.M, m.beta)
    return PhysicalParams(Lambda=lam, cs=m.s * m.M / lam, Omega=m.Omega)


def background_orbit(orbit: BackgroundOrbit, t: float) -> np.ndarray:
    """Evolve the background by the SO(2) rotation exp(mu t Q), Q = [[0,-1],[1,0]].

    The Euclidean norm of phi0 is preserved for all t.
    """
    c = math.cos(orbit.mu * t)
    s = math.sin(orbit.mu * t)
    x, y = orbit.phi0
    return np.array([c * x - s * y, s * x + c * y])
