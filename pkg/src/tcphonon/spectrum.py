"""Two-branch dispersion and canonical Fock amplitudes of the free theory.

The linearized equations of motion couple the phase mode pi_c and the radial
mode sigma through single time derivatives,

    pi_c'' + s^2 k^2 pi_c = -beta sigma',
    sigma'' + (M^2 + k^2) sigma = beta pi_c',

so the squared branch frequencies x = omega^2 solve the resolvent quadratic

    x^2 - b x + c = 0,   b = Lambda^2 + k^2 (1 + s^2),
                         c = s^2 k^2 (M^2 + k^2),

with Lambda^2 = M^2 + beta^2.  The smaller root loses all leading digits to
cancellation at k << Lambda, so it is always recovered from the root product
c / x_larger.

Mode amplitudes are fixed by canonical equal-time commutators of (pi_c, sigma)
with their conjugate momenta p_pi = pi_c' + beta sigma and p_sigma = sigma'.
Writing u = k^2, D = sqrt(b^2 - 4c), A = x_L - s^2 u, B = (M^2+u) A / x_L,
the squared magnitudes are

    |pi_G|^2    = A omega_G / (2 s^2 u D)
    |pi_L|^2    = (beta^2 x_G / B) omega_L / (2 s^2 u D)
    |sigma_G|^2 = (beta^2 x_L / A) omega_G / (2 (M^2+u) D)
    |sigma_L|^2 = B omega_L / (2 (M^2+u) D)

These forms are finite and exact in the decoupled limit beta = 0 (A = B = D
there), so no special-case branch is needed.  Phases follow from the equation
of motion sigma_a = -i (s^2 k^2 - omega_a^2) pi_a / (beta omega_a) for modes
proportional to exp(-i omega t), with pi_G and sigma_L chosen real positive;
pi_L and sigma_G come out negative-imaginary.  bogoliubov_oracle provides an
independent brute-force check by diagonalizing the 4x4 canonical system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams

__all__ = [
    "DispersionPoint",
    "ModeAmplitudes",
    "dispersion",
    "dispersion_residual",
    "amplitudes",
    "bogoliubov_oracle",
]


@dataclass(frozen=True)
class DispersionPoint:
    """Wave-number with the two branch frequencies, omega_G <= omega_L."""

    k: float
    omega_G: float
    omega_L: float


@dataclass(frozen=True)
class ModeAmplitudes:
    """Complex Fock-space field amplitudes of both branches at fixed k."""

    pi_G: complex
    pi_L: complex
    sigma_G: complex
    sigma_L: complex


def _resolvent(m: ModelParams, u: float) -> tuple[float, float, float]:
    """Roots of x^2 - bx + c at u = k^2: returns (x_G, x_L, D) with x_G <= x_L.

    The discriminant b^2 - 4c is expanded to
        D^2 = Lambda^4 + 2u [M^2(1-s^2) + beta^2(1+s^2)] + u^2 (1-s^2)^2,
    whose terms are all non-negative for s <= 1; the naive difference loses
    ~u/Lambda^2 digits to cancellation once k >> Lambda.
    """
    lam2 = m.M * m.M + m.beta * m.beta
    b = lam2 + u * (1.0 + m.s * m.s)
    c = (m.s * m.s) * u * (m.M * m.M + u)
    oms2 = (1.0 - m.s) * (1.0 + m.s)
    mid = m.M * m.M * oms2 + m.beta * m.beta * (1.0 + m.s * m.s)
    disc = lam2 * lam2 + u * (2.0 * mid + u * oms2 * oms2)
    d = math.sqrt(disc) if disc > 0.0 else 0.0
    x_l = 0.5 * (b + d)
    x_g = c / x_l if x_l > 0.0 else 0.0
    return x_g, x_l, d


def dispersion(m: ModelParams, k: float) -> DispersionPoint:
    """Branch frequencies omega_G(k) <= omega_L(k) of the coupled system."""
    if k < 0:
        raise ValueError(f"wave-number must be non-negative, got {k}")
    x_g, x_l, _ = _resolvent(m, k * k)
    return DispersionPoint(k=k, omega_G=math.sqrt(x_g), omega_L=math.sqrt(x_l))


def dispersion_residual(m: ModelParams, k: float, omega: float) -> float:
    """Characteristic-quartic residual (w^2-s^2k^2)(w^2-M^2-k^2) - beta^2 w^2,
    normalized by Lambda^4; zero iff omega is a branch frequency at k."""
    w2 = omega * omega
    u = k * k
    lam2 = m.M * m.M + m.beta * m.beta
    lhs = (w2 - m.s * m.s * u) * (w2 - m.M * m.M - u) - m.beta * m.beta * w2
    return lhs / (lam2 * lam2)


def _magnitudes(m: ModelParams, k: float) -> tuple[float, float, float, float, float, float]:
    """(|pi_G|, |pi_L|, |sigma_G|, |sigma_L|, omega_G, omega_L) at k > 0."""
    u = k * k
    x_g, x_l, d = _resolvent(m, u)
    w_g = math.sqrt(x_g)
    w_l = math.sqrt(x_l)
    lam2 = m.M * m.M + m.beta * m.beta
    s2u = m.s * m.s * u
    mk = m.M * m.M + u
    # A = x_L - s^2 u written without cancellation (all addends positive)
    a = 0.5 * (lam2 + u * (1.0 - m.s * m.s) + d)
    bb = mk * a / x_l
    b2 = m.beta * m.beta
    pi_g = math.sqrt(a * w_g / (2.0 * s2u * d)) if d > 0 else math.sqrt(1.0 / (2.0 * w_g))
    sg_l = math.sqrt(bb * w_l / (2.0 * mk * d)) if d > 0 else math.sqrt(1.0 / (2.0 * w_l))
    pi_l = math.sqrt(b2 * x_g / bb * w_l / (2.0 * s2u * d)) if d > 0 else 0.0
    sg_g = math.sqrt(b2 * x_l / a * w_g / (2.0 * mk * d)) if d > 0 else 0.0
    return pi_g, pi_l, sg_g, sg_l, w_g, w_l


def amplitudes(m: ModelParams, k: float) -> ModeAmplitudes:
    """Canonical Fock amplitudes at k > 0.

    Convention: pi_G and sigma_L real positive; the equation of motion then
    forces pi_L and sigma_G negative-imaginary.  The four commutator sum rules
    (see the module docstring) hold at every k.
    """
    if not k > 0:
        raise ValueError(f"amplitudes need k > 0 (Goldstone amplitude diverges at k = 0), got {k}")
    pi_g, pi_l, sg_g, sg_l, _, _ = _magnitudes(m, k)
    return ModeAmplitudes(
        pi_G=complex(pi_g, 0.0),
        pi_L=complex(0.0, -pi_l),
        sigma_G=complex(0.0, -sg_g),
        sigma_L=complex(sg_l, 0.0),
    )


def _gapless_tables(m: ModelParams, k: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (omega_G, |pi_G|, |sigma_G|) over an array of k > 0.

    Hot-loop helper for the Monte-Carlo phase-space oracle; identical formulas
    to _magnitudes.
    """
    u = k * k
    lam2 = m.M * m.M + m.beta * m.beta
    b = lam2 + u * (1.0 + m.s * m.s)
    c = (m.s * m.s) * u * (m.M * m.M + u)
    oms2 = (1.0 - m.s) * (1.0 + m.s)
    mid = m.M * m.M * oms2 + m.beta * m.beta * (1.0 + m.s * m.s)
    d = np.sqrt(np.maximum(lam2 * lam2 + u * (2.0 * mid + u * oms2 * oms2), 0.0))
    x_l = 0.5 * (b + d)
    x_g = c / x_l
    w_g = np.sqrt(x_g)
    s2u = m.s * m.s * u
    mk = m.M * m.M + u
    a = 0.5 * (lam2 + u * (1.0 - m.s * m.s) + d)
    pi_g = np.sqrt(a * w_g / (2.0 * s2u * d))
    sg_g = np.sqrt(m.beta * m.beta * x_l / a * w_g / (2.0 * mk * d))
    return w_g, pi_g, sg_g


def _canonical_matrix(m: ModelParams, k: float) -> np.ndarray:
    """Hamiltonian matrix K of the first-order system z' = J K z.

    Coordinates z = (pi_c, sigma, p_pi, p_sigma) with p_pi = pi_c' + beta sigma
    and p_sigma = sigma'; H = z^T K z / 2.
    """
    u = k * k
    return np.array(
        [
            [m.s * m.s * u, 0.0, 0.0, 0.0],
            [0.0, m.M * m.M + u + m.beta * m.beta, -m.beta, 0.0],
            [0.0, -m.beta, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


_J = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ]
)


def bogoliubov_oracle(m: ModelParams, k: float) -> tuple[DispersionPoint, ModeAmplitudes]:
    """Brute-force canonical quantization of the linear system at k > 0.

    Diagonalizes z' = J K z numerically, keeps the two positive-frequency
    eigenvectors (eigenvalue -i omega), and normalizes each to i v^dag J v = 1
    so that all equal-time commutators take canonical values.  Phases are fixed
    as in amplitudes(): pi-component real positive on the gapless branch,
    sigma-component real positive on the gapped branch.  Serves as independent
    ground truth for dispersion() and amplitudes().
    """
    if not k > 0:
        raise ValueError(f"bogoliubov_oracle needs k > 0, got {k}")
    a = _J @ _canonical_matrix(m, k)
    vals, vecs = np.linalg.eig(a)  # raises LinAlgError on solver failure
    order = [i for i in range(4) if vals[i].imag < 0.0]
    if len(order) != 2:
        raise RuntimeError(f"expected 2 positive-frequency modes, found {len(order)}")
    order.sort(key=lambda i: -vals[i].imag)  # ascending omega
    omegas = []
    pairs = []
    for idx, i in enumerate(order):
        w = -vals[i].imag
        v = vecs[:, i]
        norm = (1j * (v.conj() @ (_J @ v))).real
        if norm < 0.0:  # picked the conjugate partner; flip to positive norm
            v = v.conj()
            norm = -norm
        v = v / math.sqrt(norm)
        # rotate the free overall phase: branch 0 (gapless) -> pi real+,
        # branch 1 (gapped) -> sigma real+
        ref = v[0] if idx == 0 else v[1]
        phase = ref / abs(ref)
        v = v / phase
        omegas.append(w)
        pairs.append((v[0], v[1]))
    point = DispersionPoint(k=k, omega_G=omegas[0], omega_L=omegas[1])
    amps = ModeAmplitudes(
        pi_G=pairs[0][0],
        pi_L=pairs[1][0],
        sigma_G=pairs[0][1],
        sigma_L=pairs[1][1],
    )
    return point, amps
