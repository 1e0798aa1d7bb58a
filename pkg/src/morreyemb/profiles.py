"""Radial profiles on (0, inf) with closed-form calculus where possible.

A profile represents a one-variable map phi: (0, inf) -> [0, inf].  Power,
piecewise-power, shifted-power and exponential profiles carry exact
interval integrals and essential suprema; products and powers of profiles
simplify symbolically when they can and otherwise fall back to numerical
evaluation by the quadrature layer.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "RadialProfile",
    "PowerProfile",
    "PiecewisePowerProfile",
    "ShiftedPowerProfile",
    "ExpProfile",
    "ProductProfile",
    "FnProfile",
    "tabulated",
    "constant",
    "power",
    "truncated_power",
]

_INF = math.inf


def _power_integral(c, alpha, a, b):
    """Exact integral of c*rho^alpha over (a, b), 0 <= a < b <= inf."""
    if c == 0.0 or a == b:
        return 0.0
    if math.isinf(c):
        return _INF
    if alpha == -1.0:
        if a == 0.0 or math.isinf(b):
            return _INF
        return c * math.log(b / a)
    e = alpha + 1.0
    if e > 0.0:
        if math.isinf(b):
            return _INF
        return c * (b ** e - a ** e) / e
    # e < 0: singular at 0, decaying at inf
    if a == 0.0:
        return _INF
    hi = 0.0 if math.isinf(b) else b ** e
    return c * (a ** e - hi) / (-e)


class RadialProfile:
    """Base class; subclasses implement evaluation and, where possible,
    exact integrals and suprema."""

    #: True when interval integrals and esssup are exact closed forms.
    closed_form = False

    def __call__(self, rho):
        raise NotImplementedError

    def integral(self, a, b):
        """Exact integral over (a, b) in [0, inf], or None if not closed-form."""
        return None

    def power(self, e):
        """Profile for phi^e (e != 0)."""
        if e == 1.0:
            return self
        return FnProfile(lambda r, s=self, e=e: _safe_pow(s(r), e),
                         breakpoints=self.breakpoints())

    def times(self, other):
        return ProductProfile(self, other)

    __mul__ = times

    def scale(self, c):
        return PowerProfile(c, 0.0).times(self)

    def esssup(self, a, b):
        """Essential supremum over (a, b); exact for closed-form kinds,
        sampled otherwise."""
        return _sampled_esssup(self, a, b)

    def left_limit(self, t):
        return self(t)

    def right_limit(self, t):
        return self(t)

    def breakpoints(self):
        """Interior points where the profile may be non-smooth."""
        return ()

    def support_sup(self):
        """Essential supremum of the support (inf when unbounded)."""
        return _INF

    def support_inf(self):
        return 0.0

    def is_positive_finite_ae(self):
        """Weight admissibility: positive and finite a.e. on (0, inf)."""
        return True


def _safe_pow(x, e):
    x = float(x)
    if x == 0.0:
        return _INF if e < 0.0 else 0.0
    if math.isinf(x):
        return 0.0 if e < 0.0 else _INF
    try:
        return x ** e
    except OverflowError:
        return _INF


def _sampled_esssup(profile, a, b, n=2049):
    lo = max(a, 1e-9) if a == 0.0 else a
    hi = min(b, 1e9) if math.isinf(b) else b
    if lo >= hi:
        lo, hi = a, b
    grid = np.geomspace(lo, hi, n) if lo > 0 else np.linspace(lo, hi, n)
    best = 0.0
    for r in grid:
        val = profile(float(r))
        if val > best:
            best = val
            if math.isinf(best):
                break
    return best


class PowerProfile(RadialProfile):
    """phi(rho) = c * rho^alpha with c in [0, inf]."""

    closed_form = True

    def __init__(self, c, alpha):
        if not math.isinf(c) and (math.isnan(c) or c < 0.0):
            raise ValueError(f"coefficient must be in [0, inf], got {c}")
        self.c = float(c)
        self.alpha = float(alpha) if self.c not in (0.0,) else float(alpha)

    def __call__(self, rho):
        if self.c == 0.0:
            return 0.0
        if math.isinf(self.c):
            return _INF
        if self.alpha == 0.0:
            return self.c
        return self.c * _safe_pow(rho, self.alpha)

    def integral(self, a, b):
        return _power_integral(self.c, self.alpha, a, b)

    def power(self, e):
        if self.c == 0.0:
            return PowerProfile(_INF if e < 0 else 0.0, 0.0)
        if math.isinf(self.c):
            return PowerProfile(0.0 if e < 0 else _INF, 0.0)
        return PowerProfile(self.c ** e, self.alpha * e)

    def times(self, other):
        if self.c == 0.0:
            return PowerProfile(0.0, 0.0)
        if isinstance(other, PowerProfile):
            if other.c == 0.0:
                return PowerProfile(0.0, 0.0)
            return PowerProfile(self.c * other.c, self.alpha + other.alpha)
        if isinstance(other, PiecewisePowerProfile):
            return other.times(self)
        if self.alpha == 0.0 and isinstance(other, (ShiftedPowerProfile, ExpProfile)):
            return other.scale(self.c)
        return ProductProfile(self, other)

    __mul__ = times

    def scale(self, c):
        return PowerProfile(self.c * c, self.alpha)

    def esssup(self, a, b):
        if self.c == 0.0:
            return 0.0
        if math.isinf(self.c):
            return _INF
        if self.alpha == 0.0:
            return self.c
        end = b if self.alpha > 0 else a
        return self.c * _safe_pow(end, self.alpha)

    def support_sup(self):
        return 0.0 if self.c == 0.0 else _INF

    def support_inf(self):
        return _INF if self.c == 0.0 else 0.0

    def is_positive_finite_ae(self):
        return 0.0 < self.c < _INF

    def __repr__(self):
        return f"PowerProfile({self.c!r}, {self.alpha!r})"


class ShiftedPowerProfile(RadialProfile):
    """phi(rho) = c * (shift + rho)^alpha with shift > 0."""

    closed_form = True

    def __init__(self, c, shift, alpha):
        if c < 0.0 or math.isnan(c):
            raise ValueError("coefficient must be >= 0")
        if shift <= 0.0:
            raise ValueError("shift must be > 0")
        self.c = float(c)
        self.shift = float(shift)
        self.alpha = float(alpha)

    def __call__(self, rho):
        if self.c == 0.0:
            return 0.0
        return self.c * _safe_pow(self.shift + rho, self.alpha)

    def integral(self, a, b):
        hi = _INF if math.isinf(b) else self.shift + b
        return _power_integral(self.c, self.alpha, self.shift + a, hi)

    def power(self, e):
        if self.c == 0.0:
            return PowerProfile(_INF if e < 0 else 0.0, 0.0)
        return ShiftedPowerProfile(self.c ** e, self.shift, self.alpha * e)

    def scale(self, c):
        return ShiftedPowerProfile(self.c * c, self.shift, self.alpha)

    def esssup(self, a, b):
        if self.c == 0.0:
            return 0.0
        if self.alpha == 0.0:
            return self.c
        end = b if self.alpha > 0 else a
        return self.c * _safe_pow(self.shift + end, self.alpha)

    def support_sup(self):
        return 0.0 if self.c == 0.0 else _INF

    def is_positive_finite_ae(self):
        return self.c > 0.0

    def __repr__(self):
        return f"ShiftedPowerProfile({self.c!r}, {self.shift!r}, {self.alpha!r})"


class ExpProfile(RadialProfile):
    """phi(rho) = c * exp(rate * rho)."""

    closed_form = True

    def __init__(self, c, rate):
        if c < 0.0 or math.isnan(c):
            raise ValueError("coefficient must be >= 0")
        self.c = float(c)
        self.rate = float(rate)

    def __call__(self, rho):
        if self.c == 0.0:
            return 0.0
        try:
            return self.c * math.exp(self.rate * rho)
        except OverflowError:
            return _INF

    def integral(self, a, b):
        if self.c == 0.0 or a == b:
            return 0.0
        if self.rate == 0.0:
            return _INF if math.isinf(b) else self.c * (b - a)
        if self.rate > 0.0:
            if math.isinf(b):
                return _INF
            try:
                return self.c * (math.exp(self.rate * b)
                                 - math.exp(self.rate * a)) / self.rate
            except OverflowError:
                return _INF
        hi = 0.0 if math.isinf(b) else math.exp(self.rate * b)
        return self.c * (math.exp(self.rate * a) - hi) / (-self.rate)

    def power(self, e):
        if self.c == 0.0:
            return PowerProfile(_INF if e < 0 else 0.0, 0.0)
        return ExpProfile(self.c ** e, self.rate * e)

    def times(self, other):
        if isinstance(other, ExpProfile):
            return ExpProfile(self.c * other.c, self.rate + other.rate)
        if isinstance(other, PowerProfile) and other.alpha == 0.0:
            return self.scale(other.c)
        return ProductProfile(self, other)

    __mul__ = times

    def scale(self, c):
        return ExpProfile(self.c * c, self.rate)

    def esssup(self, a, b):
        if self.c == 0.0:
            return 0.0
        if self.rate == 0.0:
            return self.c
        end = b if self.rate > 0 else a
        if math.isinf(end):
            return _INF
        try:
            return self.c * math.exp(self.rate * end)
        except OverflowError:
            return _INF

    def support_sup(self):
        return 0.0 if self.c == 0.0 else _INF

    def is_positive_finite_ae(self):
        return self.c > 0.0

    def __repr__(self):
        return f"ExpProfile({self.c!r}, {self.rate!r})"


class PiecewisePowerProfile(RadialProfile):
    """Power segments (c_i, alpha_i) on (0, b_1], (b_1, b_2], ..., (b_k, inf).

    Supports truncated profiles via zero segments and degenerate (infinite)
    segments via c_i = inf.
    """

    closed_form = True

    def __init__(self, breaks, segments):
        breaks = [float(x) for x in breaks]
        if any(x <= 0 or math.isinf(x) for x in breaks):
            raise ValueError("breakpoints must be finite and positive")
        if sorted(breaks) != breaks or len(set(breaks)) != len(breaks):
            raise ValueError("breakpoints must be strictly ascending")
        segments = [(float(c), float(al)) for c, al in segments]
        if len(segments) != len(breaks) + 1:
            raise ValueError("need len(breaks) + 1 segments")
        for c, _ in segments:
            if not math.isinf(c) and (math.isnan(c) or c < 0.0):
                raise ValueError("segment coefficients must be in [0, inf]")
        self.breaks = breaks
        self.segments = segments

    def _edges(self):
        return [0.0] + self.breaks + [_INF]

    def _segment_at(self, rho):
        for i, b in enumerate(self.breaks):
            if rho <= b:
                return self.segments[i]
        return self.segments[-1]

    def __call__(self, rho):
        c, alpha = self._segment_at(rho)
        return PowerProfile(c, alpha)(rho)

    def integral(self, a, b):
        edges = self._edges()
        total = 0.0
        for i, (c, alpha) in enumerate(self.segments):
            lo, hi = max(a, edges[i]), min(b, edges[i + 1])
            if lo < hi:
                total += _power_integral(c, alpha, lo, hi)
                if math.isinf(total):
                    return _INF
        return total

    def power(self, e):
        return PiecewisePowerProfile(
            self.breaks,
            [_seg_pow(c, alpha, e) for c, alpha in self.segments])

    def times(self, other):
        if isinstance(other, PowerProfile):
            return PiecewisePowerProfile(
                self.breaks,
                [_seg_mul(c, alpha, other.c, other.alpha)
                 for c, alpha in self.segments])
        if isinstance(other, PiecewisePowerProfile):
            breaks = sorted(set(self.breaks) | set(other.breaks))
            edges = [0.0] + breaks + [_INF]
            segs = []
            for lo, hi in zip(edges[:-1], edges[1:]):
                mid = lo + 1.0 if math.isinf(hi) else 0.5 * (lo + hi)
                c1, a1 = self._segment_at(mid)
                c2, a2 = other._segment_at(mid)
                segs.append(_seg_mul(c1, a1, c2, a2))
            return PiecewisePowerProfile(breaks, segs)
        return ProductProfile(self, other)

    __mul__ = times

    def scale(self, c):
        return self.times(PowerProfile(c, 0.0))

    def esssup(self, a, b):
        edges = self._edges()
        best = 0.0
        for i, (c, alpha) in enumerate(self.segments):
            lo, hi = max(a, edges[i]), min(b, edges[i + 1])
            if lo < hi:
                best = max(best, PowerProfile(c, alpha).esssup(lo, hi))
        return best

    def left_limit(self, t):
        for i, b in enumerate(self.breaks):
            if t <= b:
                return PowerProfile(*self.segments[i])(t)
        return PowerProfile(*self.segments[-1])(t)

    def right_limit(self, t):
        for i, b in enumerate(self.breaks):
            if t < b:
                return PowerProfile(*self.segments[i])(t)
        return PowerProfile(*self.segments[-1])(t)

    def breakpoints(self):
        return tuple(self.breaks)

    def support_sup(self):
        edges = self._edges()
        for i in range(len(self.segments) - 1, -1, -1):
            if self.segments[i][0] > 0.0:
                return edges[i + 1]
        return 0.0

    def support_inf(self):
        edges = self._edges()
        for i, (c, _) in enumerate(self.segments):
            if c > 0.0:
                return edges[i]
        return _INF

    def is_positive_finite_ae(self):
        return all(0.0 < c < _INF for c, _ in self.segments)

    def __repr__(self):
        return f"PiecewisePowerProfile({self.breaks!r}, {self.segments!r})"


def _seg_pow(c, alpha, e):
    if c == 0.0:
        return (_INF, 0.0) if e < 0 else (0.0, 0.0)
    if math.isinf(c):
        return (0.0, 0.0) if e < 0 else (_INF, 0.0)
    return (c ** e, alpha * e)


def _seg_mul(c1, a1, c2, a2):
    if c1 == 0.0 or c2 == 0.0:
        return (0.0, 0.0)
    return (c1 * c2, a1 + a2)


class ProductProfile(RadialProfile):
    """Pointwise product of two profiles; no closed-form calculus."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def __call__(self, rho):
        a, b = self.left(rho), self.right(rho)
        if a == 0.0 or b == 0.0:
            return 0.0
        return a * b

    def power(self, e):
        return ProductProfile(self.left.power(e), self.right.power(e))

    def left_limit(self, t):
        a, b = self.left.left_limit(t), self.right.left_limit(t)
        return 0.0 if (a == 0.0 or b == 0.0) else a * b

    def right_limit(self, t):
        a, b = self.left.right_limit(t), self.right.right_limit(t)
        return 0.0 if (a == 0.0 or b == 0.0) else a * b

    def breakpoints(self):
        return tuple(sorted(set(self.left.breakpoints())
                            | set(self.right.breakpoints())))

    def support_sup(self):
        return min(self.left.support_sup(), self.right.support_sup())

    def support_inf(self):
        return max(self.left.support_inf(), self.right.support_inf())

    def __repr__(self):
        return f"ProductProfile({self.left!r}, {self.right!r})"


class FnProfile(RadialProfile):
    """Profile backed by an arbitrary evaluator; quadrature-only."""

    def __init__(self, fn, breakpoints=(), support=(0.0, _INF)):
        self.fn = fn
        self._breaks = tuple(breakpoints)
        self._support = support

    def __call__(self, rho):
        return float(self.fn(rho))

    def breakpoints(self):
        return self._breaks

    def support_inf(self):
        return self._support[0]

    def support_sup(self):
        return self._support[1]

    def __repr__(self):
        return f"FnProfile({self.fn!r})"


def tabulated(knots, values):
    """Piecewise-constant profile from samples: values[i] on
    (knots[i], knots[i+1]], extended by the end values outside the range."""
    knots = [float(k) for k in knots]
    values = [float(v) for v in values]
    if len(values) != len(knots) - 1:
        raise ValueError("need len(knots) - 1 values")
    segs = [(values[0], 0.0)] + [(v, 0.0) for v in values] + [(values[-1], 0.0)]
    return PiecewisePowerProfile(knots, segs)


def constant(c):
    return PowerProfile(c, 0.0)


def power(c, alpha):
    return PowerProfile(c, alpha)


def truncated_power(c, alpha, lo=None, hi=None):
    """c*rho^alpha on (lo, hi], zero elsewhere."""
    breaks, segs = [], []
    if lo is not None:
        breaks.append(float(lo))
        segs.append((0.0, 0.0))
    segs.append((c, alpha))
    if hi is not None:
        breaks.append(float(hi))
        segs.append((0.0, 0.0))
    return PiecewisePowerProfile(breaks, segs)
