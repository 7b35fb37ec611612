"""Exact piecewise-linear plumbing for arcs in the marked disk.

Points are pairs of Fractions.  The disk is modelled on the rectangle
[0, n+1] x [-2, 2] with marked points at (i, 0), i = 1..n.  Half-twists are
exact PL homeomorphisms supported on an L-infinity ball around a pair of
adjacent marked points: the inner square is rotated by a point reflection
and the annulus between the squares slides along its square rings, so the
support boundary is fixed pointwise.  Everything stays in Q^2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Frac = Fraction
Point = Tuple[Fraction, Fraction]


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def simplify_polyline(pts: Sequence[Point]) -> List[Point]:
    """Drop repeated points and interior vertices of straight runs."""
    out: List[Point] = []
    for p in pts:
        if out and p == out[-1]:
            continue
        out.append(p)
    i = 1
    while i + 1 < len(out):
        a, b, c = out[i - 1], out[i], out[i + 1]
        if cross(a, b, c) == 0 and min(a[0], c[0]) <= b[0] <= max(a[0], c[0]) \
                and min(a[1], c[1]) <= b[1] <= max(a[1], c[1]):
            del out[i]
        else:
            i += 1
    return out


class HalfTwist:
    """Square-model half twist swapping marked points j and j+1.

    sign +1 slides the annulus counterclockwise (as seen with y up), -1
    clockwise.  Inner radius 3/4 and outer radius 5/4 keep the support
    clear of the neighbouring marked points and of the disk boundary.
    """

    def __init__(self, j: int, sign: int,
                 inner: Fraction = Frac(3, 4), outer: Fraction = Frac(5, 4)):
        self.cx = Frac(2 * j + 1, 2)
        self.sign = sign
        self.r = inner
        self.R = outer
        d = self.R - self.r
        self.alpha = 4 * self.r * self.R / d
        self.beta = 4 * self.r / d

    # -- point map ---------------------------------------------------------

    def map_point(self, p: Point) -> Point:
        u = p[0] - self.cx
        v = p[1]
        rho = max(abs(u), abs(v))
        if rho >= self.R:
            return p
        if rho <= self.r:
            return (self.cx - u, -v)
        s = self._s_coord(u, v, rho)
        delta = self.alpha - self.beta * rho
        s2 = (s + self.sign * delta) % (8 * rho)
        u2, v2 = self._from_s(s2, rho)
        return (self.cx + u2, v2)

    def inverse(self) -> "HalfTwist":
        t = HalfTwist.__new__(HalfTwist)
        t.cx, t.sign, t.r, t.R = self.cx, -self.sign, self.r, self.R
        t.alpha, t.beta = self.alpha, self.beta
        return t

    @staticmethod
    def _s_coord(u: Fraction, v: Fraction, rho: Fraction) -> Fraction:
        if u == rho:
            return v + rho
        if v == rho:
            return 3 * rho - u
        if u == -rho:
            return 5 * rho - v
        return 7 * rho + u

    @staticmethod
    def _from_s(s: Fraction, rho: Fraction) -> Point:
        if s < 2 * rho:
            return (rho, s - rho)
        if s < 4 * rho:
            return (3 * rho - s, rho)
        if s < 6 * rho:
            return (-rho, 5 * rho - s)
        return (s - 7 * rho, -rho)

    # -- linearity breaklines ----------------------------------------------

    def _breaklines(self) -> List[Tuple[Fraction, Fraction, Fraction]]:
        """Lines a*u + b*v + c = 0 cutting the plane into linear pieces."""
        lines = []
        for val in (self.r, -self.r, self.R, -self.R):
            lines.append((Frac(1), Frac(0), -val))
            lines.append((Frac(0), Frac(1), -val))
        lines.append((Frac(1), Frac(-1), Frac(0)))
        lines.append((Frac(1), Frac(1), Frac(0)))
        sg = self.sign
        for m in range(-3, 9):
            # per side chart: s + sign*Delta - 2*m*rho = 0
            lines.append((1 - sg * self.beta - 2 * m, Frac(1), sg * self.alpha))
            lines.append((Frac(-1), 3 - sg * self.beta - 2 * m, sg * self.alpha))
            lines.append((sg * self.beta + 2 * m - 5, Frac(-1), sg * self.alpha))
            lines.append((Frac(1), sg * self.beta + 2 * m - 7, sg * self.alpha))
        return lines

    def map_polyline(self, pts: Sequence[Point]) -> List[Point]:
        lines = self._breaklines()
        out: List[Point] = []
        for k in range(len(pts) - 1):
            p, q = pts[k], pts[k + 1]
            u0, v0 = p[0] - self.cx, p[1]
            u1, v1 = q[0] - self.cx, q[1]
            if max(abs(u0), abs(v0)) >= self.R and max(abs(u1), abs(v1)) >= self.R \
                    and self._segment_misses_support(u0, v0, u1, v1):
                if not out:
                    out.append(p)
                out.append(q)
                continue
            ts = [Frac(0), Frac(1)]
            du, dv = u1 - u0, v1 - v0
            for a, b, c in lines:
                denom = a * du + b * dv
                if denom == 0:
                    continue
                t = -(a * u0 + b * v0 + c) / denom
                if 0 < t < 1:
                    ts.append(t)
            ts = sorted(set(ts))
            if not out:
                out.append(self.map_point(p))
            for t in ts[1:]:
                pt = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
                out.append(self.map_point(pt))
        return simplify_polyline(out)

    def _segment_misses_support(self, u0, v0, u1, v1) -> bool:
        lo_u, hi_u = min(u0, u1), max(u0, u1)
        lo_v, hi_v = min(v0, v1), max(v0, v1)
        return hi_u < -self.R or lo_u > self.R or hi_v < -self.R or lo_v > self.R


class DiamondTwist(HalfTwist):
    """L1-model half twist; same interface, independent geometry.

    Rings are diamonds |u| + |v| = rho, parametrized counterclockwise from
    the east corner with length rho per side (total 4*rho), so the
    antipodal shift is 2*rho.  Used by the test oracle only.
    """

    def __init__(self, j: int, sign: int,
                 inner: Fraction = Frac(5, 8), outer: Fraction = Frac(9, 8)):
        self.cx = Frac(2 * j + 1, 2)
        self.sign = sign
        self.r = inner
        self.R = outer
        d = self.R - self.r
        self.alpha = 2 * self.r * self.R / d
        self.beta = 2 * self.r / d

    def map_point(self, p: Point) -> Point:
        u = p[0] - self.cx
        v = p[1]
        rho = abs(u) + abs(v)
        if rho >= self.R:
            return p
        if rho <= self.r:
            return (self.cx - u, -v)
        s = self._s_coord_l1(u, v, rho)
        delta = self.alpha - self.beta * rho
        s2 = (s + self.sign * delta) % (4 * rho)
        u2, v2 = self._from_s_l1(s2, rho)
        return (self.cx + u2, v2)

    def inverse(self) -> "DiamondTwist":
        t = DiamondTwist.__new__(DiamondTwist)
        t.cx, t.sign, t.r, t.R = self.cx, -self.sign, self.r, self.R
        t.alpha, t.beta = self.alpha, self.beta
        return t

    @staticmethod
    def _s_coord_l1(u: Fraction, v: Fraction, rho: Fraction) -> Fraction:
        if v >= 0:
            return v if u >= 0 else rho - u
        return 3 * rho + u

    @staticmethod
    def _from_s_l1(s: Fraction, rho: Fraction) -> Point:
        if s < rho:
            return (rho - s, s)
        if s < 2 * rho:
            return (rho - s, 2 * rho - s)
        if s < 3 * rho:
            return (s - 3 * rho, 2 * rho - s)
        return (s - 3 * rho, s - 4 * rho)

    def _breaklines(self):
        lines = []
        for val in (self.r, -self.r, self.R, -self.R):
            lines.append((Frac(1), Frac(1), -val))
            lines.append((Frac(1), Frac(-1), -val))
        lines.append((Frac(1), Frac(0), Frac(0)))
        lines.append((Frac(0), Frac(1), Frac(0)))
        sg = self.sign
        for m in range(-3, 8):
            # side charts: NE rho=u+v s=v; NW rho=v-u s=v-2u;
            # SW rho=-u-v s=-2u-3v; SE rho=u-v s=4u-3v
            lines.append((-sg * self.beta - m, 1 - sg * self.beta - m,
                          sg * self.alpha))
            lines.append((-2 + sg * self.beta + m, 1 - sg * self.beta - m,
                          sg * self.alpha))
            lines.append((-2 + sg * self.beta + m, -3 + sg * self.beta + m,
                          sg * self.alpha))
            lines.append((4 - sg * self.beta - m, -3 + sg * self.beta + m,
                          sg * self.alpha))
        return lines

    def _segment_misses_support(self, u0, v0, u1, v1) -> bool:
        lo_u = min(abs(u0), abs(u1)) if (u0 > 0) == (u1 > 0) else Frac(0)
        lo_v = min(abs(v0), abs(v1)) if (v0 > 0) == (v1 > 0) else Frac(0)
        return lo_u + lo_v > self.R
