"""Lagrange interpolation of POD bases on G(p, n) with C1/C2 gates.

The pipeline: pick a reference point, map every training point to its tangent
space (C1 gate: all overlaps invertible), combine the lifts with Lagrange
weights, check the largest singular value of the combined lift against pi/2
(C2 gate), and exponentiate back to the manifold.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .errors import LogMapDomainError, ParameterError
from .grassmann import GrassmannPoint, TangentVector, geodesic, log_map

# Strict C2 margin: theta_1 >= pi/2 - C2_MARGIN is reported unstable so the
# verdict cannot flap on the exact boundary.
C2_MARGIN = 1e-12


def lagrange_weights(params, target):
    """Lagrange cardinal weights at `target` for the given distinct nodes."""
    params = [float(x) for x in params]
    if len(set(params)) != len(params):
        raise ParameterError("interpolation nodes must be pairwise distinct")
    target = float(target)
    weights = []
    for i, li in enumerate(params):
        w = 1.0
        for j, lj in enumerate(params):
            if i != j:
                w *= (target - lj) / (li - lj)
        weights.append(w)
    return weights


@dataclass(frozen=True)
class TrainingSet:
    """Training points (parameter, subspace) sharing one mode p, plus the
    reference-point choice. reference_index=None defers the choice to the
    parameter-nearest node at interpolation time."""

    points: tuple
    reference_index: Optional[int] = None

    def __post_init__(self):
        points = tuple((float(lam), pt) for lam, pt in self.points)
        if not points:
            raise ParameterError("training set is empty")
        params = [lam for lam, _ in points]
        if len(set(params)) != len(params):
            raise ParameterError("training parameters must be pairwise distinct")
        n = points[0][1].n
        p = points[0][1].p
        for lam, pt in points:
            if pt.n != n or pt.p != p:
                raise ParameterError(
                    f"all training points must share n and p; got {pt.n}x{pt.p} vs {n}x{p}"
                )
        if 2 * p > n:
            raise ParameterError(f"interpolation requires 2p <= n, got p={p}, n={n}")
        if self.reference_index is not None and not 0 <= self.reference_index < len(points):
            raise ParameterError(f"reference index {self.reference_index} out of range")
        object.__setattr__(self, "points", points)

    @property
    def params(self):
        return [lam for lam, _ in self.points]

    @property
    def mode(self):
        return self.points[0][1].p

    @property
    def n(self):
        return self.points[0][1].n

    def resolve_reference(self, target=None):
        """Reference index: explicit choice, else the node nearest the target."""
        if self.reference_index is not None:
            return self.reference_index
        if target is None:
            raise ParameterError("no reference index set and no target to pick one from")
        diffs = [abs(lam - float(target)) for lam in self.params]
        return int(np.argmin(diffs))


@dataclass(frozen=True)
class InterpolationResult:
    """Outcome of one interpolation: the frame when stable, and the C1/C2 evidence
    either way."""

    target_param: float
    reference_index: int
    c1_ok: bool
    c2_ok: bool
    theta_max: float
    frame: Optional[GrassmannPoint] = None
    velocity: Optional[TangentVector] = None
    c1_failing_indices: tuple = field(default_factory=tuple)
    extrapolated: bool = False

    @property
    def ok(self):
        return self.c1_ok and self.c2_ok


def _training_lifts(ts, ref):
    """Log-map every training point from the reference; the reference's own
    lift is identically zero. Raises LogMapDomainError tagged with the failing
    index on a C1 violation."""
    base = ts.points[ref][1]
    lifts = []
    for i, (_, pt) in enumerate(ts.points):
        if i == ref:
            lifts.append(np.zeros_like(base.frame))
            continue
        try:
            lifts.append(log_map(base, pt).lift)
        except LogMapDomainError as exc:
            exc.index = i
            raise
    return base, lifts


def interpolate(ts, target):
    """Interpolate the training subspaces at `target`.

    On a C1 failure the result carries c1_ok=False and the offending indices;
    on a C2 failure (largest combined-lift angle >= pi/2) it carries
    c2_ok=False and no frame. Neither is raised as an exception: both are
    verdicts the caller is expected to inspect.
    """
    target = float(target)
    ref = ts.resolve_reference(target)
    extrapolated = not (min(ts.params) <= target <= max(ts.params))
    try:
        base, lifts = _training_lifts(ts, ref)
    except LogMapDomainError as exc:
        return InterpolationResult(
            target_param=target,
            reference_index=ref,
            c1_ok=False,
            c2_ok=False,
            theta_max=float("nan"),
            c1_failing_indices=(exc.index,),
            extrapolated=extrapolated,
        )
    weights = lagrange_weights(ts.params, target)
    combined = np.zeros_like(base.frame)
    for w, z in zip(weights, lifts):
        combined += w * z
    velocity = TangentVector(base=base, lift=combined)
    theta1 = velocity.theta_max
    if theta1 >= np.pi / 2.0 - C2_MARGIN:
        return InterpolationResult(
            target_param=target,
            reference_index=ref,
            c1_ok=True,
            c2_ok=False,
            theta_max=theta1,
            velocity=velocity,
            extrapolated=extrapolated,
        )
    frame = geodesic(base, velocity, 1.0)
    return InterpolationResult(
        target_param=target,
        reference_index=ref,
        c1_ok=True,
        c2_ok=True,
        theta_max=theta1,
        frame=frame,
        velocity=velocity,
        extrapolated=extrapolated,
    )


@dataclass(frozen=True)
class SweepSample:
    param: float
    theta_max: float
    c2_ok: bool
    valid: bool


def c2_sweep(ts, lo, hi, samples):
    """Stability curve theta_1(lambda) on a uniform grid including both endpoints.

    A C1 failure does not abort the sweep: the lifts do not depend on the
    target, so every sample is marked invalid instead.
    """
    lo = float(lo)
    hi = float(hi)
    samples = int(samples)
    if samples < 2:
        raise ParameterError(f"need at least 2 sweep samples, got {samples}")
    if not lo < hi:
        raise ParameterError(f"need lo < hi, got [{lo}, {hi}]")
    if ts.reference_index is None:
        raise ParameterError("c2_sweep needs an explicit reference index")
    grid = np.linspace(lo, hi, samples)
    try:
        _, lifts = _training_lifts(ts, ts.reference_index)
    except LogMapDomainError:
        return [SweepSample(float(lam), float("nan"), False, False) for lam in grid]
    stacked = np.stack(lifts)
    thetas = kernels.theta_curve(stacked, np.asarray(ts.params), grid)
    half_pi = np.pi / 2.0
    return [
        SweepSample(float(lam), float(th), bool(th < half_pi - C2_MARGIN), True)
        for lam, th in zip(grid, thetas)
    ]
