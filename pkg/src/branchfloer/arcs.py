"""Half-arc bases on the marked disk and the braid action on their pushoffs.

The disk carries marked points p_1..p_n at (i, 0).  A half-arc basis keeps,
for every index i except the base, an embedded arc from p_i to the bottom
boundary; its pushoff leaves p_i in the positive boundary direction.  A
braid word acts by exact PL half-twists on the pushoffs (the basis arcs
never move).

Arcs are canonically stored in normal coordinates against the spine made
of the horizontal diameter and the vertical rays below the marked points:
each arc is its reduced sequence of diameter crossings (with the global
left-to-right order inside every interval between marked points), plus the
side from which it finally enters its marked point.  Tightening removes
innermost bigons against the diameter purely combinatorially; crossings
with basis arcs are then forced by chord interleaving, never recomputed
geometrically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .braid import BraidWord, BraidError
from .geom import Frac, HalfTwist, Point, simplify_polyline

BOTTOM = Frac(-2)
PUSHOFF = Frac(1, 64)


class ArcError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polyline construction


def _puncture(i: int) -> Point:
    return (Frac(i), Frac(0))


def _vertical_arc(i: int) -> List[Point]:
    return [(Frac(i), BOTTOM), _puncture(i)]


def _offset_pushoff(poly: Sequence[Point], eps: Fraction) -> List[Point]:
    """Offset an arc to its right (travelling foot -> marked point).

    The input must start with a vertical ascent from the bottom boundary
    and end at a marked point; the output shares only that marked point.
    """
    pts = [(Frac(p[0]), Frac(p[1])) for p in poly]
    if len(pts) < 2 or pts[0][1] != BOTTOM:
        raise ArcError("pushoff needs a foot on the bottom boundary")
    # offset every segment to its right-hand side, rejoin at line crossings
    lines = []
    for a, b in zip(pts, pts[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        # right of travel direction (dx,dy) is (dy,-dx)
        off = (dy, -dx)
        norm = abs(off[0]) + abs(off[1])
        ox, oy = off[0] * eps / norm, off[1] * eps / norm
        lines.append(((a[0] + ox, a[1] + oy), (b[0] + ox, b[1] + oy)))

    out: List[Point] = []
    first = lines[0]
    # stretch the first offset segment back onto the boundary
    (x0, y0), (x1, y1) = first
    if y0 != BOTTOM:
        t = (BOTTOM - y0) / (y1 - y0)
        out.append((x0 + t * (x1 - x0), BOTTOM))
    else:
        out.append((x0, y0))
    for k in range(len(lines) - 1):
        (a0, a1), (b0, b1) = lines[k]
        (c0, c1), (d0, d1) = lines[k + 1]
        da = (b0 - a0, b1 - a1)
        db = (d0 - c0, d1 - c1)
        den = da[0] * db[1] - da[1] * db[0]
        if den == 0:
            out.append((b0, b1))
            continue
        t = ((c0 - a0) * db[1] - (c1 - a1) * db[0]) / den
        out.append((a0 + t * da[0], a1 + t * da[1]))
    out.append(pts[-1])  # rejoin the marked point exactly
    return simplify_polyline(out)


@dataclass
class ArcSystem:
    """Half-arc basis with pushoffs and their current braid images."""

    n: int
    base: int = 1
    basis: Dict[int, List[Point]] = field(default_factory=dict)
    pushoff: Dict[int, List[Point]] = field(default_factory=dict)
    image: Dict[int, List[Point]] = field(default_factory=dict)
    word: Tuple[Tuple[int, int], ...] = ()

    def indices(self) -> List[int]:
        return [i for i in range(1, self.n + 1) if i != self.base]

    def copy(self) -> "ArcSystem":
        return ArcSystem(self.n, self.base,
                         {i: list(p) for i, p in self.basis.items()},
                         {i: list(p) for i, p in self.pushoff.items()},
                         {i: list(p) for i, p in self.image.items()},
                         self.word)


def standard_half_arc_basis(n: int, base: int = 1) -> ArcSystem:
    if n < 1:
        raise ArcError("need at least one marked point")
    if not 1 <= base <= n:
        raise ArcError(f"base index {base} out of range")
    s = ArcSystem(n, base)
    for i in range(1, n + 1):
        if i == base:
            continue
        s.basis[i] = _vertical_arc(i)
        s.pushoff[i] = _offset_pushoff(s.basis[i], PUSHOFF)
        s.image[i] = list(s.pushoff[i])
    return s


# twist handedness: a positive braid letter slides the annulus of the
# square model counterclockwise (calibrated by the contact-class tests)
POSITIVE_TWIST_SIGN = +1


def apply_braid(w: BraidWord, s: ArcSystem) -> ArcSystem:
    if w.strands != s.n:
        raise ArcError(f"braid on {w.strands} strands vs {s.n} marked points")
    out = s.copy()
    for idx, sign in w.letters:
        tw = HalfTwist(idx, sign * POSITIVE_TWIST_SIGN)
        for i in out.indices():
            out.image[i] = tw.map_polyline(out.image[i])
    out.word = out.word + w.letters
    return out


def half_arc_slide(s: ArcSystem, i: int, j: int) -> ArcSystem:
    """Replace basis arc i by its slide over the adjacent basis arc j.

    The new arc leaves p_i, travels just above the diameter across p_j,
    and descends to the boundary beyond the foot of arc j, so the region
    cut off together with the old arc contains exactly p_j and arc j.
    Only arcs in standard vertical position can be slid; sliding the
    result back over j returns the vertical arc.
    """
    if j == i or j == s.base or i == s.base:
        raise ArcError("slide needs two distinct non-base arcs")
    if i not in s.basis or j not in s.basis:
        raise ArcError("slide indices out of range")
    between = [k for k in range(min(i, j) + 1, max(i, j)) if k != s.base]
    if between:
        raise ArcError(
            f"slide region would contain marked points {between}")

    cur = s.basis[i]
    eps = Frac(1, 8)
    delta = Frac(1, 3) if j > i else Frac(-1, 3)

    if cur == _vertical_arc(i):
        new_arc = [(Frac(j) + delta, BOTTOM), (Frac(j) + delta, eps),
                   (Frac(i) + (eps if j > i else -eps), eps), _puncture(i)]
    elif _is_slide_over(cur, i, j):
        new_arc = _vertical_arc(i)
    else:
        raise ArcError("slide of an already-slid arc is only supported back "
                       "over the same neighbour")

    out = s.copy()
    out.basis[i] = simplify_polyline(new_arc)
    out.pushoff[i] = _offset_pushoff(out.basis[i], PUSHOFF)
    if out.word:
        raise ArcError("slides must be performed before the braid acts")
    out.image[i] = list(out.pushoff[i])
    return out


def _is_slide_over(poly: Sequence[Point], i: int, j: int) -> bool:
    return len(poly) >= 3 and poly[0][1] == BOTTOM and \
        abs(poly[0][0] - j) == Frac(1, 3) and poly[-1] == _puncture(i)


# ---------------------------------------------------------------------------
# normal coordinates: diameter-crossing extraction


@dataclass
class ArcCode:
    """Reduced diameter-crossing sequence of one arc, foot to end."""

    family: str  # 'a' basis arc, 'b' pushoff image
    index: int
    foot_x: Fraction
    crossings: List[int]
    end: int
    end_side: int  # +1 entered from above, -1 from below


class TautSystem:
    """Normal coordinates of a full arc system against the spine."""

    def __init__(self, n: int, base: int):
        self.n = n
        self.base = base
        self.arcs: Dict[Tuple[str, int], ArcCode] = {}
        self.cross_x: Dict[int, Fraction] = {}
        self.cross_arc: Dict[int, Tuple[str, int]] = {}
        self._next_id = 0

    # -- construction -------------------------------------------------------

    def add_arc(self, family: str, index: int, poly: Sequence[Point]):
        foot_x = poly[0][0]
        if poly[0][1] != BOTTOM:
            raise ArcError("arc must start on the bottom boundary")
        end_pt = poly[-1]
        end = int(end_pt[0])
        if end_pt != _puncture(end) or not 1 <= end <= self.n:
            raise ArcError(f"arc must end at a marked point, got {end_pt}")
        xs, end_side = _diameter_crossings(poly, self.n)
        ids = []
        for x in xs:
            cid = self._next_id
            self._next_id += 1
            self.cross_x[cid] = x
            self.cross_arc[cid] = (family, index)
            ids.append(cid)
        self.arcs[(family, index)] = ArcCode(family, index, foot_x, ids,
                                             end, end_side)

    def interval_of(self, cid: int) -> int:
        x = self.cross_x[cid]
        k = int(x)
        if Frac(k) == x:
            raise ArcError("crossing exactly at a marked point column")
        return k

    # -- tightening ---------------------------------------------------------

    def _blocked(self, lo: Fraction, hi: Fraction) -> bool:
        """Any crossing strictly between two diameter positions?"""
        if lo > hi:
            lo, hi = hi, lo
        return any(lo < x < hi for x in self.cross_x.values())

    def tighten(self):
        changed = True
        while changed:
            changed = False
            for code in self.arcs.values():
                cs = code.crossings
                for k in range(len(cs) - 1):
                    a, b = cs[k], cs[k + 1]
                    if self.interval_of(a) == self.interval_of(b) and \
                            not self._blocked(self.cross_x[a], self.cross_x[b]):
                        self._remove(code, b)
                        self._remove(code, a)
                        changed = True
                        break
                if changed:
                    break
                if cs:
                    last = cs[-1]
                    k = self.interval_of(last)
                    if k in (code.end - 1, code.end) and \
                            not self._blocked(self.cross_x[last],
                                              Frac(code.end)):
                        self._remove(code, last)
                        code.end_side = -code.end_side
                        changed = True
                        break
        self._validate()

    def _remove(self, code: ArcCode, cid: int):
        code.crossings.remove(cid)
        del self.cross_x[cid]
        del self.cross_arc[cid]

    def _validate(self):
        xs = list(self.cross_x.values())
        if len(set(xs)) != len(xs):
            raise ArcError("coincident diameter crossings")
        for code in self.arcs.values():
            want = -1 if len(code.crossings) % 2 == 0 else 1
            if code.end_side != want:
                raise ArcError(
                    f"side parity broken on arc {(code.family, code.index)}")

    # -- derived chord structure --------------------------------------------

    def pieces(self, key: Tuple[str, int]) -> List["Piece"]:
        code = self.arcs[key]
        stops: List[Tuple[str, object]] = [("foot", code.foot_x)]
        stops += [("cross", cid) for cid in code.crossings]
        stops += [("end", code.end)]
        out = []
        for k in range(len(stops) - 1):
            side = -1 if k % 2 == 0 else 1
            out.append(Piece(key, k, stops[k], stops[k + 1], side))
        return out

    def position_key(self, stop: Tuple[str, object]) -> Tuple[int, Fraction]:
        kind, val = stop
        if kind == "foot":
            return (1, -val)  # bottom boundary, listed right-to-left
        if kind == "cross":
            return (0, self.cross_x[val])
        return (0, Frac(val))  # end at a marked point


@dataclass
class Piece:
    arc: Tuple[str, int]
    seq: int
    start: Tuple[str, object]
    stop: Tuple[str, object]
    side: int  # -1 below the diameter, +1 above


def _diameter_crossings(poly: Sequence[Point], n: int
                        ) -> Tuple[List[Fraction], int]:
    """Crossing abscissas with y=0 in order along the arc, and end side."""
    pts = list(poly)
    crossings: List[Fraction] = []
    last_sign = -1  # starts on the bottom boundary
    k = 1
    while k < len(pts):
        y = pts[k][1]
        if y == 0:
            run_start = k
            while k < len(pts) and pts[k][1] == 0:
                k += 1
            xs = [pts[t][0] for t in range(run_start, min(k, len(pts)))]
            if k >= len(pts):
                # terminal run: the endpoint at the marked point
                if len(xs) > 1:
                    raise ArcError("arc slides along the diameter at its end")
                break
            sign_after = 1 if pts[k][1] > 0 else -1
            for x in xs:
                f = int(x)
                if Frac(f) == x and 1 <= f <= n:
                    raise ArcError("arc touches a marked point")
            if sign_after != last_sign:
                crossings.append(xs[0])
                last_sign = sign_after
            k += 0
            continue
        else:
            prev_y = pts[k - 1][1]
            if prev_y != 0 and (y > 0) != (prev_y > 0):
                a, b = pts[k - 1], pts[k]
                t = (Frac(0) - a[1]) / (b[1] - a[1])
                crossings.append(a[0] + t * (b[0] - a[0]))
                last_sign = 1 if y > 0 else -1
        k += 1
    return crossings, last_sign


def taut_system(s: ArcSystem, moving: str = "image") -> TautSystem:
    """Normal coordinates of the basis plus its pushoffs or braid images."""
    ts = TautSystem(s.n, s.base)
    for i in s.indices():
        ts.add_arc("a", i, s.basis[i])
    src = s.image if moving == "image" else s.pushoff
    for i in s.indices():
        ts.add_arc("b", i, src[i])
    ts.tighten()
    return ts


# ---------------------------------------------------------------------------
# taut arrangement: forced crossings between the two families


class Arrangement:
    """Crossing pattern of a taut system, one hemisphere of the bridge sphere.

    Vertices are the marked points, the forced chord crossings between the
    two arc families, and the boundary feet.  Each arc knows its vertex
    path from foot to marked point; each crossing knows the local
    counterclockwise rotation.
    """

    def __init__(self, ts: TautSystem):
        self.ts = ts
        self.n = ts.n
        self.base = ts.base
        self.crossings: List[Tuple] = []  # (a_piece, b_piece, b_from_left)
        self.arc_paths: Dict[Tuple[str, int], List] = {}
        self._build()

    def _cyclic_inside(self, u, w, v) -> bool:
        """w strictly inside the listed-order arc from u to v."""
        if u < v:
            return u < w < v
        return w > u or w < v

    def _build(self):
        ts = self.ts
        pieces = {key: ts.pieces(key) for key in ts.arcs}
        a_pieces = [p for key, ps in pieces.items() if key[0] == "a" for p in ps]
        b_pieces = [p for key, ps in pieces.items() if key[0] == "b" for p in ps]

        per_piece: Dict[int, List] = {}
        for pa in a_pieces:
            for pb in b_pieces:
                if pa.side != pb.side:
                    continue
                ua, va = ts.position_key(pa.start), ts.position_key(pa.stop)
                ub, vb = ts.position_key(pb.start), ts.position_key(pb.stop)
                if ua in (ub, vb) or va in (ub, vb):
                    continue  # shared marked point, combable wedge
                inb = self._cyclic_inside(ua, ub, va)
                inv = self._cyclic_inside(ua, vb, va)
                if inb == inv:
                    continue
                # listed-arc side is geometric left below the diameter and
                # geometric right above it
                left_listed = pa.side == -1
                b_from_left = (inb == left_listed)
                cid = len(self.crossings)
                self.crossings.append((pa, pb, b_from_left))
                per_piece.setdefault(id(pa), []).append((pb, cid))
                per_piece.setdefault(id(pb), []).append((pa, cid))

        # same-family pieces must never interleave
        for fam_pieces in (a_pieces, b_pieces):
            for i in range(len(fam_pieces)):
                for j in range(i + 1, len(fam_pieces)):
                    pa, pb = fam_pieces[i], fam_pieces[j]
                    if pa.side != pb.side:
                        continue
                    ua, va = ts.position_key(pa.start), ts.position_key(pa.stop)
                    ub, vb = ts.position_key(pb.start), ts.position_key(pb.stop)
                    if ua in (ub, vb) or va in (ub, vb):
                        continue
                    if self._cyclic_inside(ua, ub, va) != \
                            self._cyclic_inside(ua, vb, va):
                        raise ArcError("disjoint family self-crossing; "
                                       "encoding corrupted")

        # order the crossings along every piece by the partner endpoint on
        # the near-side boundary arc, measured from the piece start; the
        # far-side endpoints must give the reverse order
        order_on_piece: Dict[int, List] = {}
        for key, ps in pieces.items():
            for p in ps:
                entries = per_piece.get(id(p), [])
                u, v = ts.position_key(p.start), ts.position_key(p.stop)

                def endpoint_keys(entry):
                    q, _ = entry
                    uq, vq = ts.position_key(q.start), ts.position_key(q.stop)
                    if self._cyclic_inside(u, uq, v):
                        near, far = uq, vq
                    else:
                        near, far = vq, uq
                    return near, far

                def from_u(w):
                    return (0, w) if w > u else (1, w)

                entries = sorted(entries,
                                 key=lambda e: from_u(endpoint_keys(e)[0]))
                far_sorted = sorted(entries,
                                    key=lambda e: from_u(endpoint_keys(e)[1]),
                                    reverse=True)
                if entries != far_sorted:
                    raise ArcError("incoherent crossing order along a piece")
                order_on_piece[id(p)] = entries

        # assemble vertex paths per arc
        for key in ts.arcs:
            path: List = [("foot", key)]
            for p in pieces[key]:
                for q, cid in order_on_piece[id(p)]:
                    path.append(("cross", cid))
            path.append(("punct", ts.arcs[key].end))
            self.arc_paths[key] = path

    def crossing_count(self, a_index: int, b_index: int) -> int:
        total = 0
        for pa, pb, _ in self.crossings:
            if pa.arc == ("a", a_index) and pb.arc == ("b", b_index):
                total += 1
        return total

    def span_count(self, b_index: int, puncture: int, side: int) -> int:
        """Chords of a moving arc passing over/under a marked point."""
        ts = self.ts

        def xpos(stop):
            kind, val = stop
            if kind == "foot":
                return val
            if kind == "cross":
                return ts.cross_x[val]
            return Frac(val)

        t = Frac(puncture)
        total = 0
        for p in ts.pieces(("b", b_index)):
            if p.side != side:
                continue
            xu, xv = xpos(p.start), xpos(p.stop)
            if t in (xu, xv):
                continue
            if min(xu, xv) < t < max(xu, xv):
                total += 1
        return total


def system_signature(s: ArcSystem) -> Tuple:
    """Isotopy signature of the taut image system (for equality tests)."""
    ts = taut_system(s)
    arr = Arrangement(ts)
    sig = []
    for i in sorted(k for f, k in ts.arcs if f == "b"):
        code = ts.arcs[("b", i)]
        ints = tuple(ts.interval_of(c) for c in code.crossings)
        counts = tuple(arr.crossing_count(j, i)
                       for j in sorted(k for f, k in ts.arcs if f == "a"))
        sig.append((i, ints, code.end, code.end_side, counts))
    return tuple(sig)
