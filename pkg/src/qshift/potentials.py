"""Potential families: value types, textual spec grammar, and evaluators.

Four families are supported:

    rosen_morse_q     B0*tanh_q(alpha*x) - U0*sech_q(alpha*x)^2
    shifted_tanh_q    (V1/2)*(1 + tanh_q(alpha*x)) + (V2/4)*(1 + tanh_q(alpha*x)^2)
    generalized_morse V1*exp(-2*alpha*x) - V2*exp(-alpha*x)
    five_param_super  W = Q1 + Q2/(e^{2u}+q) + Q3*e^u/(e^{2u}+q),  u = alpha*x

The first three are potentials; the last is a superpotential and is only
accepted by the superpotential evaluators. Every family has a canonical
one-line textual form, e.g. "rosen_morse_q B0=1 U0=10 alpha=1 q=4",
parsed case-insensitively in the family name.
"""

from __future__ import annotations

import math
from dataclasses import MISSING, dataclass, fields
from typing import Union

import numpy as np

from .deformed import sech_q, tanh_q
from .errors import DomainError, SpecParseError, WrongFamilyError


def _require_finite(family: str, name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)):
        raise DomainError(f"{family}: {name} must be a finite real, got {value!r}")


def _require_positive(family: str, name: str, value: float) -> None:
    _require_finite(family, name, value)
    if value <= 0:
        raise DomainError(f"{family}: {name} must be positive, got {value!r}")


@dataclass(frozen=True)
class RosenMorseQ:
    """Deformed Rosen-Morse well, the workhorse family of the package.

    V(x) = B0*tanh_q(alpha*x) - U0*sech_q(alpha*x)^2. Asymmetric for
    B0 != 0, with asymptotes -B0 and +B0; the deformation q slides the
    well along x and rescales its depth.
    """

    B0: float
    U0: float
    alpha: float
    q: float = 1.0

    def __post_init__(self) -> None:
        _require_finite("rosen_morse_q", "B0", self.B0)
        _require_finite("rosen_morse_q", "U0", self.U0)
        _require_positive("rosen_morse_q", "alpha", self.alpha)
        _require_positive("rosen_morse_q", "q", self.q)


@dataclass(frozen=True)
class ShiftedTanhQ:
    """Deformed well (V1/2)*(1 + tanh_q) + (V2/4)*(1 + tanh_q^2)."""

    V1: float
    V2: float
    alpha: float
    q: float = 1.0

    def __post_init__(self) -> None:
        _require_finite("shifted_tanh_q", "V1", self.V1)
        _require_finite("shifted_tanh_q", "V2", self.V2)
        _require_positive("shifted_tanh_q", "alpha", self.alpha)
        _require_positive("shifted_tanh_q", "q", self.q)


@dataclass(frozen=True)
class GeneralizedMorse:
    """Exponential well V1*exp(-2*alpha*x) - V2*exp(-alpha*x).

    Evaluation accepts any finite V1, V2; the bound-state machinery
    additionally needs V1 > 0 and V2 > 0 so a well exists.
    """

    V1: float
    V2: float
    alpha: float

    def __post_init__(self) -> None:
        _require_finite("generalized_morse", "V1", self.V1)
        _require_finite("generalized_morse", "V2", self.V2)
        _require_positive("generalized_morse", "alpha", self.alpha)


@dataclass(frozen=True)
class FiveParamSuper:
    """Superpotential Q1 + Q2/(e^{2u}+q) + Q3*e^u/(e^{2u}+q), u = alpha*x."""

    Q1: float
    Q2: float
    Q3: float
    alpha: float
    q: float = 1.0

    def __post_init__(self) -> None:
        _require_finite("five_param_super", "Q1", self.Q1)
        _require_finite("five_param_super", "Q2", self.Q2)
        _require_finite("five_param_super", "Q3", self.Q3)
        _require_positive("five_param_super", "alpha", self.alpha)
        _require_positive("five_param_super", "q", self.q)


PotentialSpec = Union[RosenMorseQ, ShiftedTanhQ, GeneralizedMorse, FiveParamSuper]

FAMILIES = {
    "rosen_morse_q": RosenMorseQ,
    "shifted_tanh_q": ShiftedTanhQ,
    "generalized_morse": GeneralizedMorse,
    "five_param_super": FiveParamSuper,
}

_NAMES = {cls: name for name, cls in FAMILIES.items()}


def family_name(spec: PotentialSpec) -> str:
    """Registry name of a spec's family."""
    try:
        return _NAMES[type(spec)]
    except KeyError:
        raise DomainError(f"not a potential spec: {type(spec).__name__}") from None


def parse_spec(text: str) -> PotentialSpec:
    """Parse the canonical one-line textual form into a spec.

    Args:
        text: e.g. "rosen_morse_q B0=1 U0=10 alpha=1 q=4". Family name is
            case-insensitive; parameters accept decimal and scientific
            notation and may appear in any order.

    Raises:
        SpecParseError: on unknown family, unknown/duplicate/missing
            parameter, or a malformed number.
    """
    tokens = text.split()
    if not tokens:
        raise SpecParseError("empty potential spec")
    name = tokens[0].lower()
    cls = FAMILIES.get(name)
    if cls is None:
        raise SpecParseError(
            f"unknown potential family {tokens[0]!r}. Available: {', '.join(sorted(FAMILIES))}"
        )
    spec_fields = {f.name: f for f in fields(cls)}
    kwargs: dict[str, float] = {}
    for token in tokens[1:]:
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise SpecParseError(f"expected key=value, got {token!r}")
        if key not in spec_fields:
            raise SpecParseError(
                f"unknown parameter {key!r} for {name}; expected {', '.join(spec_fields)}"
            )
        if key in kwargs:
            raise SpecParseError(f"duplicate parameter {key!r}")
        try:
            kwargs[key] = float(value)
        except ValueError:
            raise SpecParseError(f"malformed number {value!r} for parameter {key!r}") from None
    missing = [
        f.name for f in fields(cls) if f.name not in kwargs and f.default is MISSING
    ]
    if missing:
        raise SpecParseError(f"{name} is missing parameter(s): {', '.join(missing)}")
    return cls(**kwargs)


def format_spec(spec: PotentialSpec) -> str:
    """Inverse of parse_spec; emits full round-trip precision."""
    name = family_name(spec)
    parts = [f"{f.name}={getattr(spec, f.name)!r}" for f in fields(spec)]
    return " ".join([name] + parts)


def _check_x(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("position x must be finite")
    return arr


def eval_potential(spec: PotentialSpec, x):
    """Evaluate a potential at x (scalar or array).

    FiveParamSuper is rejected here: it describes a superpotential, not a
    potential. Use eval_superpotential or partner_potentials for it.
    """
    if isinstance(spec, FiveParamSuper):
        raise WrongFamilyError(
            "five_param_super is a superpotential; use eval_superpotential"
        )
    arr = _check_x(x)
    u = spec.alpha * arr
    if isinstance(spec, RosenMorseQ):
        s = sech_q(u, spec.q)
        out = spec.B0 * tanh_q(u, spec.q) - spec.U0 * s * s
    elif isinstance(spec, ShiftedTanhQ):
        t = tanh_q(u, spec.q)
        out = 0.5 * spec.V1 * (1.0 + t) + 0.25 * spec.V2 * (1.0 + t * t)
    elif isinstance(spec, GeneralizedMorse):
        out = _eval_morse(spec, u)
    else:
        raise DomainError(f"not a potential spec: {type(spec).__name__}")
    return float(out) if np.ndim(x) == 0 else out


def _eval_morse(spec: GeneralizedMorse, u: np.ndarray):
    # Factored as e^{-u} * (V1 e^{-u} - V2) so the two exponentials never
    # meet in an inf - inf; far left the value saturates to +/-inf honestly,
    # far right it underflows to zero.
    if spec.V1 == 0.0 and spec.V2 == 0.0:
        return np.zeros_like(u)
    with np.errstate(over="ignore"):
        w = np.exp(-u)
        if spec.V1 == 0.0:
            return -spec.V2 * w
        return w * (spec.V1 * w - spec.V2)


def eval_superpotential(spec: FiveParamSuper, x):
    """Evaluate the five-parameter superpotential W at x.

    Stable for |alpha*x| up to several hundred: the dominant exponential
    is factored out on each half-line.
    """
    if not isinstance(spec, FiveParamSuper):
        raise WrongFamilyError(
            f"eval_superpotential needs five_param_super, got {family_name(spec)}"
        )
    arr = _check_x(x)
    u = spec.alpha * arr
    pos = u >= 0
    u_pos = np.where(pos, u, 0.0)
    u_neg = np.where(pos, 0.0, u)
    # u >= 0: W = Q1 + (Q2 t + Q3 s) / (1 + q t), t = e^{-2u}, s = e^{-u}
    s = np.exp(-u_pos)
    t = s * s
    right = spec.Q1 + (spec.Q2 * t + spec.Q3 * s) / (1.0 + spec.q * t)
    # u < 0: W = Q1 + (Q2 + Q3 e^u) / (e^{2u} + q)
    e = np.exp(u_neg)
    left = spec.Q1 + (spec.Q2 + spec.Q3 * e) / (e * e + spec.q)
    out = np.where(pos, right, left)
    return float(out) if np.ndim(x) == 0 else out


def superpotential_derivative(spec: FiveParamSuper, x):
    """Closed-form dW/dx for the five-parameter superpotential."""
    if not isinstance(spec, FiveParamSuper):
        raise WrongFamilyError(
            f"superpotential_derivative needs five_param_super, got {family_name(spec)}"
        )
    arr = _check_x(x)
    u = spec.alpha * arr
    pos = u >= 0
    u_pos = np.where(pos, u, 0.0)
    u_neg = np.where(pos, 0.0, u)
    # d/dx [W] = alpha * (-2 Q2 e^{2u} + Q3 e^u (q - e^{2u})) / (e^{2u} + q)^2;
    # multiply through by e^{-4u} on the right half-line.
    s = np.exp(-u_pos)
    t = s * s
    right = (-2.0 * spec.Q2 * t + spec.Q3 * (spec.q * t * s - s)) / (1.0 + spec.q * t) ** 2
    e = np.exp(u_neg)
    e2 = e * e
    left = (-2.0 * spec.Q2 * e2 + spec.Q3 * e * (spec.q - e2)) / (e2 + spec.q) ** 2
    out = spec.alpha * np.where(pos, right, left)
    return float(out) if np.ndim(x) == 0 else out


def partner_potentials(spec: FiveParamSuper, x):
    """Supersymmetric partner pair (W^2 - W', W^2 + W') at x."""
    w = eval_superpotential(spec, x)
    dw = superpotential_derivative(spec, x)
    w2 = np.asarray(w) ** 2
    v_minus = w2 - dw
    v_plus = w2 + dw
    if np.ndim(x) == 0:
        return float(v_minus), float(v_plus)
    return v_minus, v_plus


@dataclass(frozen=True)
class Asymptotics:
    """Potential limits at x -> -inf / +inf and the continuum threshold.

    The threshold is the smaller finite asymptote; bound states live
    strictly below it.
    """

    left_limit: float
    right_limit: float
    threshold: float


def asymptotics(spec: PotentialSpec) -> Asymptotics:
    """Asymptotic limits of a potential family.

    ShiftedTanhQ limits follow from tanh_q -> -1/+1: the left limit is
    V2/2 (the V1 term vanishes, the V2 term keeps its square), the right
    limit V1 + V2/2.
    """
    if isinstance(spec, FiveParamSuper):
        raise WrongFamilyError("five_param_super is a superpotential; it has no potential asymptotes")
    if isinstance(spec, RosenMorseQ):
        left, right = -spec.B0, spec.B0
    elif isinstance(spec, ShiftedTanhQ):
        left, right = 0.5 * spec.V2, spec.V1 + 0.5 * spec.V2
    elif isinstance(spec, GeneralizedMorse):
        if spec.V1 != 0.0:
            left = math.copysign(math.inf, spec.V1)
        elif spec.V2 != 0.0:
            left = math.copysign(math.inf, -spec.V2)
        else:
            left = 0.0
        right = 0.0
    else:
        raise DomainError(f"not a potential spec: {type(spec).__name__}")
    finite = [v for v in (left, right) if math.isfinite(v)]
    return Asymptotics(left_limit=left, right_limit=right, threshold=min(finite))
