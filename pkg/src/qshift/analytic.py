"""Closed-form Rosen-Morse spectrum and eigenfunctions.

For V(x) = B0*tanh(alpha*x) - U0_eff*sech(alpha*x)^2 (units hbar = 2M = 1,
g = alpha^2) the bound levels are

    E_n = -X_n^2/4 - B0^2/X_n^2,   X_n = sqrt(g) * (sqrt(4*gamma+1) - (2n+1))

with gamma = U0_eff/g. Two printed ambiguities survive in the source
formulas this package implements: the sign of the B0^2/X_n^2 term and the
power of g entering gamma and the exponent a. Both candidate readings are
kept computable (sign_mode and g_exponent on SpectrumParams); the shipped
defaults are the ones the finite-difference solver selects, and
verification re-derives that choice at runtime (see verify.pin_formula).

Eigenfunctions are

    psi_n(x) ~ e^{a*alpha*x} * cosh(alpha*x)^{-b} * F(-n, sqrt(4*gamma+1)-n; a+b+1; z)

with z = (1+tanh(alpha*x))/2, b = sqrt(gamma+1/4) - n - 1/2 and
a = -(B0*g^g_exponent)/(2b+... ); see build_wavefunction. The sign of the
exponential is fixed by requiring the asymptotic decay rates
kappa = sqrt(-E +/- B0) to match, and is confirmed against the solver's
eigenvectors. The normalization constant has no closed form here and is
computed by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DomainError,
    NoSuchLevelError,
    NotNormalizableError,
    PoleError,
)

SIGN_MODES = ("paper_plus", "pinned_minus")
G_EXPONENTS = (-1, -2)


@dataclass(frozen=True)
class Interpretation:
    """One reading of the ambiguous printed formulas."""

    sign_mode: str
    g_exponent: int

    def __post_init__(self) -> None:
        if self.sign_mode not in SIGN_MODES:
            raise DomainError(f"sign_mode must be one of {SIGN_MODES}, got {self.sign_mode!r}")
        if self.g_exponent not in G_EXPONENTS:
            raise DomainError(f"g_exponent must be one of {G_EXPONENTS}, got {self.g_exponent!r}")


# The interpretation the numeric oracle selects (see verify.pin_formula);
# shipped as the default everywhere a mode is not given explicitly.
DEFAULT_INTERPRETATION = Interpretation(sign_mode="pinned_minus", g_exponent=-1)


@dataclass(frozen=True)
class SpectrumParams:
    """Parameters of the closed-form spectrum.

    U0_eff is the well depth after canonicalization (U0/q); g = alpha^2
    under hbar = 2M = 1. sign_mode and g_exponent select the formula
    reading, defaulting to the pinned one.
    """

    B0: float
    U0_eff: float
    g: float
    sign_mode: str = DEFAULT_INTERPRETATION.sign_mode
    g_exponent: int = DEFAULT_INTERPRETATION.g_exponent

    def __post_init__(self) -> None:
        for name in ("B0", "U0_eff", "g"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise DomainError(f"SpectrumParams.{name} must be a finite real, got {value!r}")
        if self.g <= 0:
            raise DomainError(f"SpectrumParams.g must be positive, got {self.g!r}")
        if self.sign_mode not in SIGN_MODES:
            raise DomainError(f"sign_mode must be one of {SIGN_MODES}, got {self.sign_mode!r}")
        if self.g_exponent not in G_EXPONENTS:
            raise DomainError(f"g_exponent must be one of {G_EXPONENTS}, got {self.g_exponent!r}")


def _x_reduced(params: SpectrumParams, n: int) -> float:
    """Dimensionless level bracket sqrt(4*gamma+1) - (2n+1); <= 0 means no level."""
    gamma = params.U0_eff * params.g**params.g_exponent
    disc = 4.0 * gamma + 1.0
    if disc <= 0.0:
        return -math.inf
    return math.sqrt(disc) - (2 * n + 1)


def rosen_morse_level(params: SpectrumParams, n: int) -> float:
    """Closed-form bound-state energy E_n.

    Args:
        params: spectrum parameters including the formula reading.
        n: level index, 0-based.

    Returns:
        E_n = -X_n^2/4 - B0^2/X_n^2 with X_n = sqrt(g)*(sqrt(4*gamma+1)
        - (2n+1)); the second term enters with + instead when sign_mode
        is "paper_plus".

    Raises:
        NoSuchLevelError: X_n <= 0 (the level does not exist).
    """
    if not (isinstance(n, int) and n >= 0):
        raise DomainError(f"level index n must be a nonnegative integer, got {n!r}")
    x_red = _x_reduced(params, n)
    if x_red <= 0.0:
        raise NoSuchLevelError(f"level n={n} does not exist for {params!r}")
    x = math.sqrt(params.g) * x_red
    second = params.B0 * params.B0 / (x * x)
    if params.sign_mode == "paper_plus":
        return -0.25 * x * x + second
    return -0.25 * x * x - second


def bound_state_count(params: SpectrumParams) -> int:
    """Number of normalizable closed-form bound states.

    A level exists and is square integrable when X_n > 0 and additionally
    X_n^2 exceeds 2|B0| (in reduced form: the decay rate on the shallow
    side stays positive, b > |a|). The second condition is what empties
    the spectrum for B0 dominating the well depth, e.g. B0=10, U0_eff=2.
    """
    two_b = 2.0 * abs(params.B0) * params.g**params.g_exponent
    count = 0
    while True:
        x_red = _x_reduced(params, count)
        if x_red <= 0.0 or x_red * x_red <= two_b:
            return count
        count += 1


@dataclass(frozen=True)
class Level:
    """One spectral line: index, energy, and numeric error estimate."""

    n: int
    E: float
    err: float


@dataclass(frozen=True)
class Spectrum:
    """Ordered bound levels with provenance ("analytic" or "numeric")."""

    levels: tuple[Level, ...]
    threshold: float
    source: str

    @property
    def energies(self) -> tuple[float, ...]:
        return tuple(level.E for level in self.levels)

    def to_csv(self) -> str:
        lines = ["n,E,err,source"]
        for level in self.levels:
            lines.append(f"{level.n},{level.E!r},{level.err!r},{self.source}")
        return "\n".join(lines) + "\n"


def analytic_spectrum(params: SpectrumParams) -> Spectrum:
    """All normalizable closed-form levels, err = 0, source "analytic"."""
    count = bound_state_count(params)
    levels = tuple(
        Level(n=n, E=rosen_morse_level(params, n), err=0.0) for n in range(count)
    )
    return Spectrum(levels=levels, threshold=-abs(params.B0), source="analytic")


def hypergeometric_polynomial(n: int, b2: float, c: float, z: float) -> float:
    """Terminating Gauss series F(-n, b2; c; z), summed with compensation.

    Args:
        n: series length (degree), nonnegative integer.
        b2: second numerator parameter.
        c: denominator parameter; must avoid {0, -1, ..., -(n-1)}.
        z: argument.

    Raises:
        PoleError: c hits a pole of the coefficient recurrence.
    """
    if not (isinstance(n, int) and n >= 0):
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    _check_hyp_pole(n, c)
    return float(_hyp_terminating(n, b2, c, np.asarray(z, dtype=float)))


def _check_hyp_pole(n: int, c: float) -> None:
    if n >= 1 and c <= 0.0 and c == math.floor(c) and c > -float(n):
        raise PoleError(
            f"hypergeometric parameter c={c!r} is a nonpositive integer pole for degree n={n}"
        )


def _hyp_terminating(n: int, b2: float, c: float, z: np.ndarray) -> np.ndarray:
    """Vectorized terminating series with Kahan accumulation over k."""
    total = np.ones_like(z)
    comp = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(n):
        term = term * ((k - n) * (b2 + k)) / ((c + k) * (k + 1)) * z
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@dataclass(frozen=True)
class WavefunctionForm:
    """Closed-form eigenfunction descriptor.

    Evaluates (up to norm and prefactor) as

        e^{a*u} * cosh_Q(u)^{-b} * F(-n, sqrt(4*gamma+1)-n; a+b+1; z)

    with u = alpha*x, Q the deformation carried by the form (1 for the
    plain eigenfunction) and z = (1 + tanh_Q(u))/2. Forms are immutable;
    translate_wavefunction produces new ones.
    """

    n: int
    a: float
    b: float
    gamma: float
    alpha: float
    prefactor: float = 1.0
    norm: float = 1.0
    deformation: float = 1.0

    @property
    def b2(self) -> float:
        return math.sqrt(4.0 * self.gamma + 1.0) - self.n

    @property
    def c(self) -> float:
        return self.a + self.b + 1.0


def build_wavefunction(
    n: int,
    B: float,
    C: float,
    alpha: float,
    interpretation: Interpretation = DEFAULT_INTERPRETATION,
) -> WavefunctionForm:
    """Construct the normalized closed-form eigenfunction of level n.

    Args:
        B: asymmetry parameter (tanh coefficient).
        C: well depth after canonicalization (sech^2 coefficient).
        alpha: inverse length scale.
        interpretation: formula reading; the g_exponent enters gamma and a.

    Returns:
        WavefunctionForm with gamma = C * g^g_exponent,
        b = sqrt(gamma + 1/4) - n - 1/2, a = -(B * g^g_exponent) / (2b)
        evaluated at X_n = 2b, and norm fixed by quadrature so the
        squared form integrates to one.

    Raises:
        NoSuchLevelError: the level index is beyond the last level.
        NotNormalizableError: the level exists formally but decays on one
            side only (b <= |a|).
    """
    if not (isinstance(n, int) and n >= 0):
        raise DomainError(f"level index n must be a nonnegative integer, got {n!r}")
    for name, value in (("B", B), ("C", C)):
        if not (isinstance(value, (int, float)) and math.isfinite(value)):
            raise DomainError(f"{name} must be a finite real, got {value!r}")
    if not (isinstance(alpha, (int, float)) and math.isfinite(alpha) and alpha > 0):
        raise DomainError(f"alpha must be a positive finite real, got {alpha!r}")
    g = alpha * alpha
    scale = g**interpretation.g_exponent
    gamma = C * scale
    disc = 4.0 * gamma + 1.0
    x_red = math.sqrt(disc) - (2 * n + 1) if disc > 0.0 else -math.inf
    if x_red <= 0.0:
        raise NoSuchLevelError(f"level n={n} does not exist for B={B!r}, C={C!r}, alpha={alpha!r}")
    b = 0.5 * x_red
    a = -(B * scale) / x_red
    if b <= abs(a):
        raise NotNormalizableError(
            f"level n={n} is not square integrable (b={b!r} <= |a|={abs(a)!r})"
        )
    form = WavefunctionForm(n=n, a=a, b=b, gamma=gamma, alpha=alpha)
    integral = _squared_norm_integral(form)
    return replace(form, norm=1.0 / math.sqrt(integral))


def _squared_norm_integral(form: WavefunctionForm) -> float:
    """Trapezoid integral of the unnormalized |psi|^2, refined by doubling."""
    kappa_min = form.alpha * (form.b - abs(form.a))
    half_width = max(40.0 / form.alpha, 12.0 / kappa_min)
    previous = None
    intervals = 4096
    for _ in range(9):
        x = np.linspace(-half_width, half_width, intervals + 1)
        psi = eval_wavefunction(form, x)
        values = psi * psi
        integral = float(np.trapezoid(values, x))
        if previous is not None and abs(integral - previous) <= 1e-10 * abs(integral):
            return integral
        previous = integral
        intervals *= 2
    return previous


def eval_wavefunction(form: WavefunctionForm, x):
    """Evaluate a wavefunction form at x (scalar or array).

    Works in log magnitude first, so |alpha*x| up to several hundred
    underflows gracefully instead of overflowing intermediates.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("position x must be finite")
    u = form.alpha * arr
    sigma = 0.5 * math.log(form.deformation)
    v = u - sigma
    av = np.abs(v)
    # log cosh(v) and z = (1+tanh v)/2, both overflow-free
    logcosh = av + np.log1p(np.exp(-2.0 * av)) - math.log(2.0)
    with np.errstate(over="ignore"):
        z = 1.0 / (1.0 + np.exp(-2.0 * v))
    hyp = _hyp_terminating(form.n, form.b2, form.c, z)
    log_mag = (
        math.log(form.norm * form.prefactor)
        + form.a * u
        - form.b * (sigma + logcosh)
    )
    with np.errstate(divide="ignore"):
        out = np.sign(hyp) * np.exp(log_mag + np.log(np.abs(hyp)))
    return float(out) if np.ndim(x) == 0 else out


def translate_wavefunction(form: WavefunctionForm, q: float) -> WavefunctionForm:
    """Shift a form by (1/alpha)*ln(sqrt(q)) without re-deriving anything.

    The returned form evaluated at y equals the original evaluated at
    y + (1/alpha)*ln(sqrt(q)), exactly: the deformation parameter divides
    by q and the prefactor picks up q^{(a-b)/2}. Normalization is
    untouched (the shift is measure preserving).
    """
    if not (isinstance(q, (int, float)) and math.isfinite(q) and q > 0):
        raise DomainError(f"q must be a positive finite real, got {q!r}")
    if q == 1.0:
        return form
    return replace(
        form,
        deformation=form.deformation / q,
        prefactor=form.prefactor * q ** (0.5 * (form.a - form.b)),
    )
