"""De-deformation: canonical form, spatial shift, and equivalence orbits.

Every deformed spec equals a nondeformed one evaluated in a translated
coordinate: V(x) = V_plain(x - shift). canonicalize computes that plain
spec and shift; pointwise_residual is the numerical witness that the
identity holds; equivalent_family walks the (U0, q) orbit on which the
Rosen-Morse spectrum is invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import ConfigurationError, DomainError, WrongFamilyError
from .potentials import (
    FiveParamSuper,
    GeneralizedMorse,
    PotentialSpec,
    RosenMorseQ,
    ShiftedTanhQ,
    eval_potential,
    eval_superpotential,
    family_name,
)


@dataclass(frozen=True)
class CanonicalMap:
    """Nondeformed image of a spec: plain_spec evaluated at y = x - shift.

    The convention is x = y + shift: the deformed potential at y + shift
    equals the plain potential at y, for every y.
    """

    plain_spec: PotentialSpec
    shift: float
    transform_note: str


def canonicalize(spec: PotentialSpec) -> CanonicalMap:
    """Strip the deformation (or the Morse parameter redundancy) from a spec.

    Returns:
        CanonicalMap with q = 1 (or, for generalized_morse, the single
        effective parameter V2^2/V1 in both slots) and the spatial shift
        that makes the two specs pointwise equal.

    Raises:
        DomainError: generalized_morse with V1/V2 <= 0 (no real shift).
    """
    if isinstance(spec, RosenMorseQ):
        plain = RosenMorseQ(B0=spec.B0, U0=spec.U0 / spec.q, alpha=spec.alpha, q=1.0)
        shift = 0.5 * math.log(spec.q) / spec.alpha
        note = "U0 -> U0/q"
    elif isinstance(spec, ShiftedTanhQ):
        plain = ShiftedTanhQ(V1=spec.V1, V2=spec.V2, alpha=spec.alpha, q=1.0)
        shift = 0.5 * math.log(spec.q) / spec.alpha
        note = "parameters unchanged"
    elif isinstance(spec, FiveParamSuper):
        plain = FiveParamSuper(
            Q1=spec.Q1,
            Q2=spec.Q2 / spec.q,
            Q3=spec.Q3 / math.sqrt(spec.q),
            alpha=spec.alpha,
            q=1.0,
        )
        shift = 0.5 * math.log(spec.q) / spec.alpha
        note = "Q2 -> Q2/q, Q3 -> Q3/sqrt(q)"
    elif isinstance(spec, GeneralizedMorse):
        if spec.V2 == 0.0 or spec.V1 / spec.V2 <= 0.0:
            raise DomainError(
                "generalized_morse canonicalization needs V1/V2 > 0 "
                f"(got V1={spec.V1!r}, V2={spec.V2!r})"
            )
        effective = spec.V2 * spec.V2 / spec.V1
        plain = GeneralizedMorse(V1=effective, V2=effective, alpha=spec.alpha)
        shift = math.log(spec.V1 / spec.V2) / spec.alpha
        note = "V1, V2 -> V2^2/V1 (single effective parameter)"
    else:
        raise DomainError(f"not a potential spec: {type(spec).__name__}")
    return CanonicalMap(plain_spec=plain, shift=shift, transform_note=note)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= 1e-12 * max(1.0, abs(a), abs(b))


def pointwise_residual(
    spec: PotentialSpec,
    map: CanonicalMap,
    samples: int = 1001,
    half_width: float = 10.0,
) -> float:
    """Max scaled deviation |V(y+shift) - V_plain(y)| / max(1, |V_plain(y)|).

    Evaluates both sides of the canonicalization identity on `samples`
    evenly spaced y in [-half_width, half_width]. A correct map gives
    pure roundoff, well below 1e-12.

    Raises:
        ConfigurationError: map does not belong to spec.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    if not (half_width > 0 and math.isfinite(half_width)):
        raise DomainError(f"half_width must be positive and finite, got {half_width!r}")
    expected = canonicalize(spec)
    same_family = type(expected.plain_spec) is type(map.plain_spec)
    same_fields = same_family and all(
        _close(getattr(expected.plain_spec, f.name), getattr(map.plain_spec, f.name))
        for f in fields(expected.plain_spec)
    )
    if not (same_fields and _close(expected.shift, map.shift)):
        raise ConfigurationError(
            f"canonical map does not match spec {family_name(spec)}: "
            f"expected {expected.plain_spec!r} shift {expected.shift!r}"
        )
    y = np.linspace(-half_width, half_width, samples)
    if isinstance(spec, FiveParamSuper):
        deformed = eval_superpotential(spec, y + map.shift)
        plain = eval_superpotential(map.plain_spec, y)
    else:
        deformed = eval_potential(spec, y + map.shift)
        plain = eval_potential(map.plain_spec, y)
    scale = np.maximum(1.0, np.abs(plain))
    agree_inf = np.isinf(deformed) & np.isinf(plain) & (np.sign(deformed) == np.sign(plain))
    with np.errstate(invalid="ignore"):
        resid = np.where(agree_inf, 0.0, np.abs(deformed - plain) / scale)
    return float(np.max(resid))


def equivalent_family(spec: RosenMorseQ, q_new: float) -> RosenMorseQ:
    """Move a Rosen-Morse spec along its spectrum-preserving orbit.

    (U0, q) -> (U0 * q_new/q, q_new) keeps U0/q fixed, so the canonical
    plain spec, and with it every energy level, is unchanged.
    """
    if not isinstance(spec, RosenMorseQ):
        raise WrongFamilyError(f"equivalent_family needs rosen_morse_q, got {family_name(spec)}")
    if not (isinstance(q_new, (int, float)) and math.isfinite(q_new) and q_new > 0):
        raise DomainError(f"q_new must be a positive finite real, got {q_new!r}")
    return RosenMorseQ(
        B0=spec.B0, U0=spec.U0 * (q_new / spec.q), alpha=spec.alpha, q=float(q_new)
    )
