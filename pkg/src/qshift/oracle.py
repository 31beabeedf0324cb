"""Independent finite-difference bound-state solver.

This is the ground truth the closed forms are judged against, so it
deliberately shares no formulas with the analytic module: 3-point
Laplacian on a uniform grid with Dirichlet walls, eigenvalues below the
continuum threshold from a symmetric-tridiagonal solver (Sturm bisection
plus inverse iteration under the hood), one extra inverse-iteration
polish per eigenvector, and Richardson extrapolation over a three-grid
ladder for error estimates.

Everything here is deterministic: no entropy-seeded starts, fixed sign
convention (largest eigenvector component positive), pure arithmetic in
the minimizer. Re-running a solve reproduces it to the bit.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_banded

from .errors import ConfigurationError, ConvergenceError, DomainError, WrongFamilyError
from .analytic import Level, Spectrum
from .mapping import canonicalize
from .potentials import (
    FiveParamSuper,
    GeneralizedMorse,
    PotentialSpec,
    RosenMorseQ,
    ShiftedTanhQ,
    asymptotics,
    eval_potential,
    family_name,
)

logger = logging.getLogger(__name__)

_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max] with n_points nodes inclusive."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise DomainError("grid endpoints must be finite")
        if not self.x_min < self.x_max:
            raise DomainError(f"grid needs x_min < x_max, got [{self.x_min!r}, {self.x_max!r}]")
        if not (isinstance(self.n_points, int) and self.n_points >= 3):
            raise DomainError(f"grid needs n_points >= 3, got {self.n_points!r}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def interior(self) -> np.ndarray:
        return self.nodes()[1:-1]


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """Symmetric tridiagonal -d2/dx2 + V with constant off-diagonal."""

    diagonal: np.ndarray
    off_diagonal: float


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of solve_bound_states; defaults fit every stock test case."""

    half_width_factor: float = 30.0
    n_points: int = 6001
    refine: bool = True
    boundary_amp_tol: float = 1e-8

    def __post_init__(self) -> None:
        if not (math.isfinite(self.half_width_factor) and self.half_width_factor > 0):
            raise DomainError(f"half_width_factor must be positive, got {self.half_width_factor!r}")
        if not (isinstance(self.n_points, int) and self.n_points >= 3):
            raise DomainError(f"n_points must be an integer >= 3, got {self.n_points!r}")
        if not (math.isfinite(self.boundary_amp_tol) and self.boundary_amp_tol > 0):
            raise DomainError(f"boundary_amp_tol must be positive, got {self.boundary_amp_tol!r}")


def discretize(potential: Callable[[np.ndarray], np.ndarray], grid: Grid) -> TridiagonalOperator:
    """3-point Dirichlet discretization of -d2/dx2 + V on the grid interior."""
    x = grid.interior()
    v = np.asarray(potential(x), dtype=float)
    if v.shape != x.shape:
        raise DomainError("potential evaluator must return one value per node")
    if not np.all(np.isfinite(v)):
        raise DomainError("potential is not finite on the grid")
    h2 = grid.h * grid.h
    return TridiagonalOperator(diagonal=2.0 / h2 + v, off_diagonal=-1.0 / h2)


def apply_operator(op: TridiagonalOperator, vec: np.ndarray) -> np.ndarray:
    """Matrix-vector product with the tridiagonal operator."""
    out = op.diagonal * vec
    out[:-1] += op.off_diagonal * vec[1:]
    out[1:] += op.off_diagonal * vec[:-1]
    return out


def _residual(op: TridiagonalOperator, value: float, vector: np.ndarray) -> float:
    return float(np.linalg.norm(apply_operator(op, vector) - value * vector))


def _polish(op: TridiagonalOperator, value: float, vector: np.ndarray) -> np.ndarray:
    """One inverse-iteration step; returns whichever vector has less residual."""
    n = op.diagonal.size
    shifted = value + 1e-12 * max(1.0, abs(value))
    ab = np.zeros((3, n))
    ab[0, 1:] = op.off_diagonal
    ab[1, :] = op.diagonal - shifted
    ab[2, :-1] = op.off_diagonal
    try:
        candidate = solve_banded((1, 1), ab, vector)
    except np.linalg.LinAlgError:
        return vector
    nrm = np.linalg.norm(candidate)
    if not (math.isfinite(nrm) and nrm > 0):
        return vector
    candidate /= nrm
    if _residual(op, value, candidate) < _residual(op, value, vector):
        return candidate
    return vector


def eigen_below(op: TridiagonalOperator, threshold: float) -> list[tuple[float, np.ndarray]]:
    """All eigenpairs with eigenvalue strictly below threshold, ascending.

    Eigenvectors are normalized, signed so the largest-magnitude
    component is positive, polished by one inverse-iteration step, and
    re-orthogonalized in the (theoretically impossible for 1D bound
    states) near-degenerate case.

    Raises:
        ConvergenceError: an eigenvector residual stays above 1e-9.
    """
    d = op.diagonal
    lo = float(d.min()) - 2.0 * abs(op.off_diagonal) - 1.0
    if lo >= threshold:
        return []
    e = np.full(d.size - 1, op.off_diagonal)
    values, vectors = eigh_tridiagonal(d, e, select="v", select_range=(lo, threshold))
    pairs: list[tuple[float, np.ndarray]] = []
    for i in range(values.size):
        value = float(values[i])
        if value >= threshold:
            continue
        vector = vectors[:, i] / np.linalg.norm(vectors[:, i])
        if _residual(op, value, vector) > 0.5 * _RESIDUAL_TOL:
            vector = _polish(op, value, vector)
        if pairs and abs(value - pairs[-1][0]) < 1e-10 * max(1.0, abs(value)):
            logger.warning("near-degenerate eigenvalues at %.15g; re-orthogonalizing", value)
            prev = pairs[-1][1]
            vector = vector - np.dot(prev, vector) * prev
            nrm = np.linalg.norm(vector)
            if nrm > 0:
                vector = vector / nrm
        k = int(np.argmax(np.abs(vector)))
        if vector[k] < 0:
            vector = -vector
        res = _residual(op, value, vector)
        if res > _RESIDUAL_TOL:
            raise ConvergenceError(
                f"eigenvector residual {res:.3e} for level {len(pairs)} exceeds {_RESIDUAL_TOL:g}"
            )
        pairs.append((value, vector))
    return pairs


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_minimize(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Golden-section minimum of a unimodal function on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def find_minimum(spec: PotentialSpec) -> float:
    """Location of the potential minimum, used as the grid center.

    The closed-form minimum of the canonical plain potential (shifted
    back to deformed coordinates) brackets a golden-section polish.

    Raises:
        ConfigurationError: the potential has no interior minimum
            (monotone or inverted), so no window can be centered on one.
    """
    if isinstance(spec, FiveParamSuper):
        raise WrongFamilyError("five_param_super is a superpotential; it has no potential minimum")
    shift = canonicalize(spec).shift if not isinstance(spec, GeneralizedMorse) else 0.0
    if isinstance(spec, RosenMorseQ):
        depth = spec.U0 / spec.q
        if depth <= 0.0:
            raise ConfigurationError(f"{family_name(spec)} has no interior minimum (U0 <= 0)")
        t_star = -spec.B0 / (2.0 * depth)
        if abs(t_star) >= 1.0:
            raise ConfigurationError(
                f"{family_name(spec)} has no interior minimum (|B0| >= 2*U0/q)"
            )
        guess = math.atanh(t_star) / spec.alpha + shift
    elif isinstance(spec, ShiftedTanhQ):
        if spec.V2 <= 0.0:
            raise ConfigurationError(f"{family_name(spec)} has no interior minimum (V2 <= 0)")
        t_star = -spec.V1 / spec.V2
        if abs(t_star) >= 1.0:
            raise ConfigurationError(
                f"{family_name(spec)} has no interior minimum (|V1| >= V2)"
            )
        guess = math.atanh(t_star) / spec.alpha + shift
    elif isinstance(spec, GeneralizedMorse):
        if spec.V1 <= 0.0 or spec.V2 <= 0.0:
            raise ConfigurationError(
                f"{family_name(spec)} has no interior minimum (needs V1 > 0 and V2 > 0)"
            )
        guess = math.log(2.0 * spec.V1 / spec.V2) / spec.alpha
    else:
        raise DomainError(f"not a potential spec: {type(spec).__name__}")
    bracket = 2.0 / spec.alpha
    return _golden_minimize(
        lambda x: eval_potential(spec, x), guess - bracket, guess + bracket, 1e-10 / spec.alpha
    )


def _filtered_states(
    potential: Callable[[np.ndarray], np.ndarray],
    grid: Grid,
    threshold: float,
    boundary_amp_tol: float,
) -> list[tuple[float, np.ndarray]]:
    """Eigenpairs below threshold minus boundary-contaminated or marginal ones."""
    op = discretize(potential, grid)
    proximity = 1e-6 * (abs(threshold) + 1.0)
    kept = []
    for value, vector in eigen_below(op, threshold):
        if value >= threshold - proximity:
            continue
        peak = float(np.max(vector * vector))
        edge = max(float(vector[0]) ** 2, float(vector[-1]) ** 2)
        if edge > boundary_amp_tol * peak:
            continue
        kept.append((value, vector))
    return kept


def _build_grid(spec: PotentialSpec, config: SolverConfig) -> Grid:
    center = find_minimum(spec)
    half_width = config.half_width_factor / spec.alpha
    return Grid(x_min=center - half_width, x_max=center + half_width, n_points=config.n_points)


def _check_explicit_grid(spec: PotentialSpec, grid: Grid) -> None:
    v = eval_potential(spec, grid.nodes())
    k = int(np.argmin(v))
    if k == 0 or k == grid.n_points - 1:
        raise ConfigurationError("window does not contain the potential minimum")


def solve_bound_states(
    spec: PotentialSpec,
    config: SolverConfig = SolverConfig(),
    grid: Optional[Grid] = None,
) -> Spectrum:
    """Numerically solve a potential's bound spectrum.

    The grid is centered on the potential minimum (or taken verbatim when
    `grid` is given, after checking it actually straddles the minimum).
    With refine on, the solve runs on three nested grids (n, 2n-1, 4n-3
    points, spacings h, h/2, h/4) and reports the Richardson-extrapolated
    energies of the finer pair; err is the difference between the two
    pairwise extrapolants scaled by 1/15, floored at roundoff level.
    States leaking into the Dirichlet walls or hugging the continuum
    threshold are dropped.

    Returns:
        Spectrum with source "numeric"; empty levels tuple when nothing
        is bound (that is a result, not an error).
    """
    if isinstance(spec, FiveParamSuper):
        raise WrongFamilyError("five_param_super is a superpotential; solve its partner potentials")
    threshold = asymptotics(spec).threshold
    if grid is None:
        grid = _build_grid(spec, config)
    else:
        _check_explicit_grid(spec, grid)

    def potential(x: np.ndarray) -> np.ndarray:
        return eval_potential(spec, x)

    if not config.refine:
        states = _filtered_states(potential, grid, threshold, config.boundary_amp_tol)
        levels = tuple(Level(n=i, E=E, err=0.0) for i, (E, _) in enumerate(states))
        return Spectrum(levels=levels, threshold=threshold, source="numeric")

    ladder = [
        grid,
        Grid(grid.x_min, grid.x_max, 2 * grid.n_points - 1),
        Grid(grid.x_min, grid.x_max, 4 * grid.n_points - 3),
    ]
    energies = [
        [E for E, _ in _filtered_states(potential, g, threshold, config.boundary_amp_tol)]
        for g in ladder
    ]
    count = min(len(col) for col in energies)
    levels = []
    for i in range(count):
        e1, e2, e3 = energies[0][i], energies[1][i], energies[2][i]
        coarse = (4.0 * e2 - e1) / 3.0
        fine = (4.0 * e3 - e2) / 3.0
        err = max(abs(fine - coarse) / 15.0, 1e-12 * (1.0 + abs(fine)))
        levels.append(Level(n=i, E=fine, err=err))
    return Spectrum(levels=tuple(levels), threshold=threshold, source="numeric")


def bound_state_vectors(
    spec: PotentialSpec,
    config: SolverConfig = SolverConfig(),
    grid: Optional[Grid] = None,
) -> tuple[Grid, list[tuple[float, np.ndarray]]]:
    """Single-grid companion of solve_bound_states that keeps eigenvectors.

    Returns the grid actually used and the filtered (energy, vector)
    pairs on its interior nodes. No Richardson ladder here: vectors live
    on one grid by construction.
    """
    if isinstance(spec, FiveParamSuper):
        raise WrongFamilyError("five_param_super is a superpotential; solve its partner potentials")
    threshold = asymptotics(spec).threshold
    if grid is None:
        grid = _build_grid(spec, config)
    else:
        _check_explicit_grid(spec, grid)
    states = _filtered_states(
        lambda x: eval_potential(spec, x), grid, threshold, config.boundary_amp_tol
    )
    return grid, states
