"""Spectral-singularity location and lasing-threshold computations.

A spectral singularity is a real wavenumber at which M22 of the transfer
matrix vanishes, equivalently

    exp(-2i k_tilde L) = ((u - 1)/(u + 1))^2 .

Taking logarithms splits this into a pair of real conditions for a gain
medium n = eta + i*kappa (kappa < 0):

    phase:    k L Re(n') = pi m - phi        (m = 1, 2, ...)
    modulus:  k L Im(n') = ln|r|

with n' = sqrt(n^2 - sin^2 theta), r = (n' - n^l cos theta)/(n' + n^l cos theta)
(l = 0 for TE, 2 for TM) and phi the principal argument of r.  Both sides of
the modulus condition are negative for gain, so k > 0; the threshold gain is
g = -2 k kappa.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar, root

from .core import GainMedium, Polarization, SlabScenario, WaveSpec, n_prime
from .transfer import build_transfer_matrix

KAPPA_BRACKET = (-0.1, -1e-12)   # covers physical gain media (|kappa| <~ 1e-2)
RESIDUAL_TOL = 1e-10


class ConvergenceError(RuntimeError):
    """A root solve failed to reach the requested residual."""


@dataclass(frozen=True)
class SingularityPoint:
    """A solved spectral singularity with residual diagnostics."""

    wavelength: float        # m
    kappa: float             # Im(n), negative (gain)
    g: float                 # threshold gain, 1/m
    m: int                   # longitudinal mode number
    theta_deg: float
    polarization: Polarization
    eta: float
    thickness: float         # m
    residual: float          # |exp(-2i k~ L) - r^2|
    m22_abs: float           # |M22| recomputed through the transfer matrix

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def medium(self) -> GainMedium:
        return GainMedium(self.eta, self.kappa)

    @property
    def scenario(self) -> SlabScenario:
        return SlabScenario(self.thickness, self.medium)

    @property
    def wave(self) -> WaveSpec:
        return WaveSpec.from_wavelength(self.wavelength, self.theta_deg,
                                        self.polarization)


@dataclass(frozen=True)
class ThresholdSample:
    theta_deg: float
    g: float | None          # 1/m; None marks a failed grid point
    wavelength: float
    kappa: float | None


@dataclass(frozen=True)
class ThresholdCurve:
    """Fixed-wavelength threshold gain versus incidence angle."""

    samples: list[ThresholdSample]
    polarization: Polarization
    eta: float
    thickness: float
    wavelength: float
    theta_b_deg: float
    theta_c_deg: float | None = None   # TM only
    g_max: float | None = None         # TM only, 1/m


def reflection_ratio(medium: GainMedium, theta_deg: float,
                     polarization: Polarization) -> complex:
    """Interface ratio r = (n' - n^l cos)/(n' + n^l cos); equals (u-1)/(u+1)."""
    npr = n_prime(medium, theta_deg)
    term = medium.n ** polarization.ell * math.cos(math.radians(theta_deg))
    return (npr - term) / (npr + term)


def singularity_residual(medium: GainMedium, theta_deg: float, thickness: float,
                         k: float, polarization: Polarization) -> complex:
    """exp(-2i k_tilde L) - r^2; zero exactly at a spectral singularity."""
    kt = k * n_prime(medium, theta_deg)
    r = reflection_ratio(medium, theta_deg, polarization)
    return cmath.exp(-2j * kt * thickness) - r * r


def _modulus_wavenumber(eta: float, kappa: float, theta_deg: float,
                        thickness: float, polarization: Polarization) -> float:
    """Wavenumber forced by the modulus condition, k = ln|r| / (L Im n')."""
    medium = GainMedium(eta, kappa)
    npr = n_prime(medium, theta_deg)
    r = reflection_ratio(medium, theta_deg, polarization)
    return math.log(abs(r)) / (thickness * npr.imag)


def threshold_gain_at_kappa(eta: float, kappa: float, theta_deg: float,
                            thickness: float,
                            polarization: Polarization) -> float:
    """Exact threshold gain of the singular mode carried by a given kappa < 0."""
    if kappa >= 0:
        raise ValueError("gain requires kappa < 0")
    k = _modulus_wavenumber(eta, kappa, theta_deg, thickness, polarization)
    return -2.0 * k * kappa


def threshold_gain_exact(eta: float, theta_deg: float, thickness: float,
                         target_wavelength: float,
                         polarization: Polarization,
                         bracket: tuple[float, float] = KAPPA_BRACKET
                         ) -> tuple[float, float]:
    """Solve the modulus condition at k = 2 pi / target_wavelength for kappa.

    Returns (kappa, g).  This is the fixed-wavelength curve generator: only
    the modulus half of the singularity condition is enforced; the discrete
    phase condition would shift the wavelength by O(1/m) with negligible
    effect on g.
    """
    k_target = 2.0 * math.pi / target_wavelength

    def f(kappa: float) -> float:
        return _modulus_wavenumber(eta, kappa, theta_deg, thickness,
                                   polarization) - k_target

    lo, hi = min(bracket), max(bracket)
    # f -> +inf as kappa -> 0-, so scan down in |kappa| for the sign change
    grid = -np.logspace(math.log10(-hi), math.log10(-lo), 200)
    prev_k, prev_f = grid[0], f(grid[0])
    for kappa in grid[1:]:
        cur_f = f(kappa)
        if prev_f == 0.0:
            kappa_star = prev_k
            break
        if prev_f * cur_f < 0:
            kappa_star = brentq(f, kappa, prev_k, xtol=1e-18, rtol=1e-15)
            break
        prev_k, prev_f = kappa, cur_f
    else:
        raise ConvergenceError(
            f"no gain solution for kappa in [{lo:.3g}, {hi:.3g}] at "
            f"theta = {theta_deg} deg"
        )
    return kappa_star, -2.0 * k_target * kappa_star


def threshold_gain_approx(eta: float, theta_deg: float, thickness: float,
                          polarization: Polarization,
                          brewster_guard_deg: float = 0.1) -> float:
    """Leading-order (kappa-independent) threshold gain formulas."""
    if eta <= 1:
        raise ValueError("approximation assumes eta > 1")
    th = math.radians(theta_deg)
    etap = math.sqrt(eta * eta - math.sin(th) ** 2)
    if polarization is Polarization.TE:
        return (4.0 * etap / (thickness * eta)) * math.log(
            abs(etap + math.cos(th)) / math.sqrt(eta * eta - 1.0))
    if abs(theta_deg - brewster_angle(eta)) < brewster_guard_deg:
        raise ValueError(
            "TM leading-order formula is singular within "
            f"{brewster_guard_deg} deg of Brewster's angle"
        )
    e2c = eta * eta * math.cos(th)
    return (2.0 * etap / (thickness * eta)) * math.log(
        abs((etap + e2c) / (etap - e2c)))


def ss_wavelength(eta: float, kappa: float, theta_deg: float, thickness: float,
                  m: int, polarization: Polarization,
                  approx: bool = False) -> float:
    """Wavelength of the m-th singular mode.

    Exact form: lambda = 2 pi L Re(n') / (pi m - phi) with phi the principal
    argument of r.  With approx=True the first-order-in-kappa expansions are
    used instead.
    """
    if m < 1:
        raise ValueError("mode number must be >= 1")
    if approx:
        return _ss_wavelength_approx(eta, kappa, theta_deg, thickness, m,
                                     polarization)
    medium = GainMedium(eta, kappa)
    phi = cmath.phase(reflection_ratio(medium, theta_deg, polarization))
    denom = math.pi * m - phi
    if denom <= 0:
        raise ValueError(f"invalid mode: pi*m - phi = {denom:.3g} <= 0")
    return 2.0 * math.pi * thickness * n_prime(medium, theta_deg).real / denom


def _ss_wavelength_approx(eta, kappa, theta_deg, thickness, m, polarization):
    th = math.radians(theta_deg)
    s2 = math.sin(th) ** 2
    cos_t = math.cos(th)
    lead = math.sqrt(1.0 - s2 / eta ** 2)
    if polarization is Polarization.TE:
        corr = 2.0 * kappa * cos_t / (math.pi * m * (eta ** 2 - 1.0))
    else:
        c2 = math.cos(2.0 * th)
        corr = (4.0 * kappa * cos_t * (eta ** 2 - 1.0 + c2)
                / (math.pi * m * (eta ** 2 - 1.0)
                   * (eta ** 2 - 1.0 + (eta ** 2 + 1.0) * c2)))
    return (2.0 * thickness * eta / m) * (lead + corr)


def brewster_angle(eta: float) -> float:
    """arctan(eta), in degrees."""
    if eta <= 0:
        raise ValueError("eta must be positive")
    return math.degrees(math.atan(eta))


def critical_angle(eta: float, thickness: float,
                   target_wavelength: float) -> tuple[float, float]:
    """Angle maximizing the TM threshold gain, and the maximum gain (1/m).

    Coarse 0.1-degree scan followed by bounded scalar minimization refined to
    1e-6 degrees.
    """
    def neg_g(theta_deg: float) -> float:
        _, g = threshold_gain_exact(eta, theta_deg, thickness,
                                    target_wavelength, Polarization.TM)
        return -g

    grid = np.arange(0.1, 89.95, 0.1)
    values = np.array([neg_g(t) for t in grid])
    i = int(np.argmin(values))
    if i == 0 or i == len(grid) - 1:
        raise ConvergenceError("no interior TM gain maximum found")
    res = minimize_scalar(neg_g, bounds=(grid[i - 1], grid[i + 1]),
                          method="bounded",
                          options={"xatol": 1e-6})
    return float(res.x), float(-res.fun)


def select_mode_number(eta: float, theta_deg: float, thickness: float,
                       target_wavelength: float,
                       polarization: Polarization) -> int:
    """Mode number of the first singular wavelength at or above the target.

    The singular wavelengths decrease with m, so this is the largest m with
    lambda(m) >= target.  A threshold solve at the target wavelength supplies
    the kappa used to evaluate the phase angle.
    """
    kappa, _ = threshold_gain_exact(eta, theta_deg, thickness,
                                    target_wavelength, polarization)
    medium = GainMedium(eta, kappa)
    phi = cmath.phase(reflection_ratio(medium, theta_deg, polarization))
    npr = n_prime(medium, theta_deg)
    x = (2.0 * math.pi * thickness * npr.real / target_wavelength + phi) / math.pi
    return max(1, math.floor(x))


def solve_singularity(eta: float, theta_deg: float, thickness: float,
                      polarization: Polarization,
                      m: int | None = None,
                      target_wavelength: float | None = None,
                      max_iter: int = 50) -> SingularityPoint:
    """Solve the full complex singularity condition for (wavelength, kappa).

    Either a mode number m or a target wavelength must be given; with a
    target, the first singular wavelength at or above it is selected.  The
    solution is found by alternating the phase and modulus conditions and
    then polishing the complex residual with a 2D Newton-type solve.
    """
    if m is None:
        if target_wavelength is None:
            raise ValueError("give either a mode number or a target wavelength")
        m = select_mode_number(eta, theta_deg, thickness, target_wavelength,
                               polarization)
        lam = target_wavelength
    else:
        if m < 1:
            raise ValueError("mode number must be >= 1")
        lam = ss_wavelength(eta, 0.0, theta_deg, thickness, m, polarization,
                            approx=True)

    kappa = None
    for _ in range(12):
        kappa, _ = threshold_gain_exact(eta, theta_deg, thickness, lam,
                                        polarization)
        lam_new = ss_wavelength(eta, kappa, theta_deg, thickness, m,
                                polarization)
        if abs(lam_new - lam) < 1e-18:
            lam = lam_new
            break
        lam = lam_new

    # Newton polish of the complex residual in scaled variables
    lam0, kap0 = lam, kappa

    def fun(x):
        med = GainMedium(eta, kap0 * x[1])
        res = singularity_residual(med, theta_deg, thickness,
                                   2.0 * math.pi / (lam0 * x[0]), polarization)
        return [res.real, res.imag]

    sol = root(fun, [1.0, 1.0], method="hybr",
               options={"xtol": 1e-14, "maxfev": max_iter * 4})
    lam, kappa = lam0 * sol.x[0], kap0 * sol.x[1]

    medium = GainMedium(eta, kappa)
    k = 2.0 * math.pi / lam
    residual = abs(singularity_residual(medium, theta_deg, thickness, k,
                                        polarization))
    if residual > RESIDUAL_TOL:
        raise ConvergenceError(
            f"no convergence: |residual| = {residual:.3g} for m = {m}")
    if kappa > 0:
        raise ConvergenceError("unphysical branch: solved kappa > 0")
    matrix = build_transfer_matrix(
        SlabScenario(thickness, medium),
        WaveSpec(k, theta_deg, polarization))
    return SingularityPoint(
        wavelength=lam, kappa=kappa, g=-2.0 * k * kappa, m=m,
        theta_deg=theta_deg, polarization=polarization, eta=eta,
        thickness=thickness, residual=residual,
        m22_abs=abs(matrix.m22))


def threshold_curve(eta: float, thickness: float, target_wavelength: float,
                    polarization: Polarization,
                    theta_grid_deg) -> ThresholdCurve:
    """Per-angle threshold gain samples; failed points become gap markers."""
    samples = []
    for theta_deg in theta_grid_deg:
        if not 0.0 <= theta_deg < 90.0:
            raise ValueError("grid angles must lie in [0, 90) degrees")
        try:
            kappa, g = threshold_gain_exact(eta, theta_deg, thickness,
                                            target_wavelength, polarization)
            samples.append(ThresholdSample(theta_deg, g, target_wavelength,
                                           kappa))
        except ConvergenceError as exc:
            warnings.warn(f"threshold solve failed at {theta_deg} deg: {exc}")
            samples.append(ThresholdSample(theta_deg, None, target_wavelength,
                                           None))
    theta_c = g_max = None
    if polarization is Polarization.TM:
        theta_c, g_max = critical_angle(eta, thickness, target_wavelength)
    return ThresholdCurve(samples=samples, polarization=polarization, eta=eta,
                          thickness=thickness, wavelength=target_wavelength,
                          theta_b_deg=brewster_angle(eta),
                          theta_c_deg=theta_c, g_max=g_max)
