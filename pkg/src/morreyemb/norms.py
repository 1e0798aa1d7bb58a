"""Weighted Lebesgue norms of radial test functions, the local Morrey-type
norm and its complementary mirror, and the weight identity that collapses
the p = theta case to a single weighted Lebesgue norm.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import NotAWeight
from .extreal import ExtReal, ext_pow
from .integration import sphere_area
from .profiles import FnProfile, PowerProfile, RadialProfile
from .weights import Weight, head_norm, tail_norm

__all__ = [
    "GridFunction",
    "Region",
    "Ball",
    "Complement",
    "ALL",
    "weighted_lp_norm",
    "lm_norm",
    "dual_lm_norm",
    "fubini_weight",
]

_INF = math.inf


@dataclass(frozen=True)
class Region:
    kind: str  # "ball", "complement", "all"
    t: float = _INF

    def radial_interval(self):
        if self.kind == "ball":
            return (0.0, self.t)
        if self.kind == "complement":
            return (self.t, _INF)
        return (0.0, _INF)


def Ball(t):
    if t <= 0:
        raise ValueError("ball radius must be positive")
    return Region("ball", float(t))


def Complement(t):
    if t <= 0:
        raise ValueError("radius must be positive")
    return Region("complement", float(t))


ALL = Region("all")


class GridFunction:
    """Nonnegative piecewise-constant radial function.

    values[i] lives on the cell (knots[i], knots[i+1]]; the function is
    zero outside (knots[0], knots[-1]].
    """

    def __init__(self, knots, values):
        knots = np.asarray(knots, dtype=float)
        values = np.asarray(values, dtype=float)
        if knots.ndim != 1 or len(knots) < 2:
            raise ValueError("need at least two knots")
        if np.any(knots <= 0) or np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be positive and strictly ascending")
        if len(values) != len(knots) - 1:
            raise ValueError("need len(knots) - 1 cell values")
        if np.any(values < 0) or np.any(~np.isfinite(values)):
            raise ValueError("cell values must be finite and nonnegative")
        self.knots = knots
        self.values = values

    @property
    def num_cells(self):
        return len(self.values)

    @classmethod
    def log_spaced(cls, num_cells=256, lo=1e-4, hi=1e4, values=None):
        knots = np.geomspace(lo, hi, num_cells + 1)
        if values is None:
            values = np.zeros(num_cells)
        return cls(knots, values)

    def __call__(self, rho):
        if rho <= self.knots[0] or rho > self.knots[-1]:
            return 0.0
        i = int(np.searchsorted(self.knots, rho, side="left")) - 1
        return float(self.values[min(max(i, 0), self.num_cells - 1)])

    def scaled(self, c):
        return GridFunction(self.knots, c * self.values)

    def with_values(self, values):
        return GridFunction(self.knots, values)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["knot", "value"])
            writer.writerow([repr(float(self.knots[0])), repr(0.0)])
            for k, v in zip(self.knots[1:], self.values):
                writer.writerow([repr(float(k)), repr(float(v))])

    @classmethod
    def from_csv(cls, path):
        knots, values = [], []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if header[:2] != ["knot", "value"]:
                raise ValueError("expected header 'knot,value'")
            for row in reader:
                knots.append(float(row[0]))
                values.append(float(row[1]))
        return cls(knots, values[1:])

    def __eq__(self, other):
        return (isinstance(other, GridFunction)
                and np.array_equal(self.knots, other.knots)
                and np.array_equal(self.values, other.values))


def _clip_cells(f: GridFunction, interval):
    """Yield (value, r0, r1) for the parts of cells inside the interval."""
    a, b = interval
    for i in range(f.num_cells):
        r0 = max(f.knots[i], a)
        r1 = min(f.knots[i + 1], b)
        if r0 < r1 and f.values[i] > 0.0:
            yield float(f.values[i]), float(r0), float(r1)


def _shell_integral(profile: RadialProfile, n, r0, r1):
    """Integral of profile(|x|) over the shell r0 < |x| < r1 in R^n."""
    dens = profile if n == 1 else profile.times(PowerProfile(1.0, n - 1.0))
    val = dens.integral(r0, r1)
    if val is None:
        val, _ = quad(dens, r0, r1, limit=200)
    return sphere_area(n) * val


def weighted_lp_norm(f: GridFunction, p, v: Weight, region: Region = ALL) -> ExtReal:
    """||f||_{p,v,region}: (int |f|^p v)^{1/p}, or esssup |f| v for p = inf."""
    p = float(p)
    interval = region.radial_interval()
    n = v.dimension
    if math.isinf(p):
        best = 0.0
        for val, r0, r1 in _clip_cells(f, interval):
            best = max(best, val * v.profile.esssup(r0, r1))
        return ExtReal(best)
    if p <= 0:
        raise ValueError("p must be in (0, inf]")
    total = 0.0
    for val, r0, r1 in _clip_cells(f, interval):
        total += val ** p * _shell_integral(v.profile, n, r0, r1)
        if math.isinf(total):
            return ExtReal(_INF)
    return ext_pow(total, 1.0 / p) if total > 0 else ExtReal(0.0)


class _InnerBallNorm:
    """r -> ||f||_{p,v,B(0,r)} with exact accumulation across cells."""

    def __init__(self, f: GridFunction, p, v: Weight):
        self.f, self.p, self.v = f, float(p), v
        n = v.dimension
        self.cell_mass = np.array([
            _shell_integral(v.profile, n, f.knots[i], f.knots[i + 1])
            if f.values[i] > 0 else 0.0
            for i in range(f.num_cells)])
        if math.isinf(self.p):
            self.cell_sup = np.array([
                v.profile.esssup(f.knots[i], f.knots[i + 1]) * f.values[i]
                if f.values[i] > 0 else 0.0
                for i in range(f.num_cells)])
            self.prefix = np.concatenate([[0.0], np.maximum.accumulate(self.cell_sup)])
        else:
            pth = f.values ** self.p
            self.prefix = np.concatenate([[0.0], np.cumsum(pth * self.cell_mass)])

    def total(self):
        return self._finish(self.prefix[-1])

    def _finish(self, acc):
        if math.isinf(self.p):
            return acc
        return acc ** (1.0 / self.p) if acc > 0 else 0.0

    def __call__(self, r):
        f = self.f
        if r <= f.knots[0]:
            return 0.0
        if r >= f.knots[-1]:
            return self.total()
        i = int(np.searchsorted(f.knots, r, side="left")) - 1
        i = min(max(i, 0), f.num_cells - 1)
        if math.isinf(self.p):
            part = (f.values[i] * self.v.profile.esssup(f.knots[i], r)
                    if f.values[i] > 0 else 0.0)
            return max(self.prefix[i], part)
        part = (f.values[i] ** self.p
                * _shell_integral(self.v.profile, self.v.dimension, f.knots[i], r)
                if f.values[i] > 0 else 0.0)
        return self._finish(self.prefix[i] + part)


class _InnerComplementNorm:
    """r -> ||f||_{p,v,complement of B(0,r)}."""

    def __init__(self, f: GridFunction, p, v: Weight):
        self.inner = _InnerBallNorm(f, p, v)
        self.f, self.p, self.v = f, float(p), v

    def total(self):
        return self.inner.total()

    def __call__(self, r):
        f = self.f
        if r >= f.knots[-1]:
            return 0.0
        if r <= f.knots[0]:
            return self.total()
        i = int(np.searchsorted(f.knots, r, side="left")) - 1
        i = min(max(i, 0), f.num_cells - 1)
        inner = self.inner
        if math.isinf(self.p):
            suffix = float(np.max(inner.cell_sup[i + 1:])) if i + 1 < f.num_cells else 0.0
            part = (f.values[i] * self.v.profile.esssup(r, f.knots[i + 1])
                    if f.values[i] > 0 else 0.0)
            return max(suffix, part)
        acc = float(inner.prefix[-1] - inner.prefix[i + 1])
        part = (f.values[i] ** self.p
                * _shell_integral(self.v.profile, self.v.dimension, r, f.knots[i + 1])
                if f.values[i] > 0 else 0.0)
        acc += part
        return acc ** (1.0 / self.p) if acc > 0 else 0.0


def _outer_theta_norm(inner_fn, omega: RadialProfile, theta, f: GridFunction,
                      tail_value, head_value):
    """||omega(r) * inner_fn(r)||_{theta,(0,inf)} for an inner function that
    is constant equal to head_value below the first knot and tail_value
    above the last."""
    theta = float(theta)
    k0, k1 = float(f.knots[0]), float(f.knots[-1])
    anchors = sorted({k0, k1} | set(float(k) for k in f.knots)
                     | {b for b in omega.breakpoints() if k0 < b < k1})
    if math.isinf(theta):
        best = 0.0
        if head_value > 0:
            best = max(best, head_value * omega.esssup(0.0, k0))
        if tail_value > 0:
            best = max(best, tail_value * float(tail_norm(omega, _INF, k1)))
        for x0, x1 in zip(anchors[:-1], anchors[1:]):
            # inner_fn is monotone on each anchor interval and omega is a
            # single smooth piece there, so dense sampling plus the right
            # endpoint is reliable
            for r in np.geomspace(x0, x1, 33)[1:]:
                best = max(best, omega(float(r)) * inner_fn(float(r)))
        return ExtReal(best)
    total = 0.0
    if head_value > 0:
        hv = float(head_norm(omega, theta, k0))
        if math.isinf(hv):
            return ExtReal(_INF)
        total += (head_value * hv) ** theta
    if tail_value > 0:
        tv = float(tail_norm(omega, theta, k1))
        if math.isinf(tv):
            return ExtReal(_INF)
        total += (tail_value * tv) ** theta
    for x0, x1 in zip(anchors[:-1], anchors[1:]):
        def integrand(r):
            w = omega(r)
            if w == 0.0:
                return 0.0
            g = inner_fn(r)
            return 0.0 if g == 0.0 else (w * g) ** theta
        val, _ = quad(integrand, x0, x1, limit=200)
        if math.isnan(val) or math.isinf(val):
            return ExtReal(_INF)
        total += val
    return ext_pow(total, 1.0 / theta) if total > 0 else ExtReal(0.0)


def lm_norm(f: GridFunction, p, theta, omega: RadialProfile, v: Weight) -> ExtReal:
    """Local Morrey-type norm: the theta-norm over r of
    omega(r) ||f||_{p,v,B(0,r)}."""
    inner = _InnerBallNorm(f, p, v)
    return _outer_theta_norm(inner, omega, theta, f,
                             tail_value=inner.total(), head_value=0.0)


def dual_lm_norm(f: GridFunction, p, theta, omega: RadialProfile, v: Weight) -> ExtReal:
    """Complementary local Morrey-type norm: theta-norm over r of
    omega(r) ||f||_{p,v,complement of B(0,r)}."""
    inner = _InnerComplementNorm(f, p, v)
    return _outer_theta_norm(inner, omega, theta, f,
                             tail_value=0.0, head_value=inner.total())


def fubini_weight(omega: RadialProfile, p, v: Weight, direction="tail") -> Weight:
    """The weight u with ||f||_{LM_{pp,omega}(v)} = ||f||_{p,u}:
    u(x) = v(x) ||omega||_{p,(|x|,inf)}^p (tail) or with the head norm.

    Raises NotAWeight when the norm profile is identically infinite.
    """
    p = float(p)
    if not 1.0 <= p < _INF:
        raise ValueError("p must be in [1, inf)")
    if direction not in ("tail", "head"):
        raise ValueError("direction must be 'tail' or 'head'")
    if isinstance(omega, PowerProfile) and omega.c > 0:
        e = omega.alpha * p + 1.0
        if direction == "tail":
            if e >= 0.0:
                raise NotAWeight("tail norm of omega is infinite for every t")
            norm_p = PowerProfile(omega.c ** p / (-e), e)
        else:
            if e <= 0.0:
                raise NotAWeight("head norm of omega is infinite for every t")
            norm_p = PowerProfile(omega.c ** p / e, e)
    else:
        if direction == "tail":
            probe = float(tail_norm(omega, p, 1.0))
        else:
            probe = float(head_norm(omega, p, 1.0))
        if math.isinf(probe):
            raise NotAWeight("the norm profile is infinite")
        if direction == "tail":
            norm_p = FnProfile(lambda t: float(tail_norm(omega, p, t)) ** p,
                               breakpoints=omega.breakpoints())
        else:
            norm_p = FnProfile(lambda t: float(head_norm(omega, p, t)) ** p,
                               breakpoints=omega.breakpoints())
    return Weight(v.dimension, v.profile.times(norm_p))
