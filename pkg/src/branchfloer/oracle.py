"""Independent intersection-number oracle for the braid action on arcs.

Recomputes geometric intersection numbers of twisted pushoffs with the
vertical spine rays by a route sharing nothing with the normal-coordinate
engine: the twists use the L1 diamond model instead of the square model,
and minimality comes from free reduction of the ray-crossing word.  The
2n rays cut the disk into simply connected slabs, so cancelling adjacent
repeats of a ray letter is exact tightening, and a trailing letter at the
arc's own endpoint ray can always be absorbed by swinging the arc end
around its marked point.  Test-only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .braid import BraidWord
from .geom import DiamondTwist, Frac, Point


def _twisted_image(w: BraidWord, poly: Sequence[Point],
                   positive_sign: int) -> List[Point]:
    pts = [tuple(p) for p in poly]
    for idx, sign in w.letters:
        pts = DiamondTwist(idx, sign * positive_sign).map_polyline(pts)
    return pts


def _ray_word(poly: Sequence[Point], n: int) -> List[Tuple[str, int]]:
    """Crossing letters ('U'|'D', k) with the rays x=k above/below y=0."""
    events: List[Tuple[int, Fraction, str, int]] = []
    for seg in range(len(poly) - 1):
        (x0, y0), (x1, y1) = poly[seg], poly[seg + 1]
        if x0 == x1:
            continue
        lo, hi = (x0, x1) if x0 < x1 else (x1, x0)
        k = int(lo) + 1
        while Frac(k) <= hi:
            if 1 <= k <= n and Frac(k) != lo and Frac(k) != hi:
                t = (Frac(k) - x0) / (x1 - x0)
                y = y0 + t * (y1 - y0)
                if y == 0:
                    raise ValueError("arc through a marked point")
                events.append((seg, t, "U" if y > 0 else "D", k))
            k += 1

    # vertices (or vertical runs) exactly on a ray line
    m = len(poly)
    v = 1
    while v < m - 1:
        x = poly[v][0]
        if x != int(x) or not 1 <= int(x) <= n:
            v += 1
            continue
        k = int(x)
        run_end = v
        while run_end + 1 < m and poly[run_end + 1][0] == x:
            run_end += 1
        if run_end == m - 1:
            break  # terminal run into the endpoint, not a crossing
        ys = [poly[t][1] for t in range(v, run_end + 1)]
        if any(y == 0 for y in ys) or (min(ys) < 0 < max(ys)):
            raise ValueError("arc through a marked point")
        if (poly[v - 1][0] < x) != (poly[run_end + 1][0] < x):
            events.append((v - 1, Frac(1), "U" if ys[0] > 0 else "D", k))
        v = run_end + 1
    events.sort(key=lambda e: (e[0], e[1]))
    return [(which, k) for _, _, which, k in events]


def _reduce(word: List[Tuple[str, int]], end: int) -> List[Tuple[str, int]]:
    out: List[Tuple[str, int]] = []
    for letter in word:
        if out and out[-1] == letter:
            out.pop()
        else:
            out.append(letter)
    while out and out[-1][1] == end:
        out.pop()
    return out


def ray_intersections(w: BraidWord, pushoff: Sequence[Point], n: int,
                      positive_sign: int = 1) -> Dict[Tuple[str, int], int]:
    """Minimal crossing counts of the twisted pushoff with every half-ray.

    Keys ('D', k) count the ray below marked point k (the standard basis
    arc position), keys ('U', k) the ray above it.
    """
    img = _twisted_image(w, pushoff, positive_sign)
    end_pt = img[-1]
    if end_pt[1] != 0 or end_pt[0] != int(end_pt[0]):
        raise ValueError("twisted arc does not end at a marked point")
    word = _reduce(_ray_word(img, n), int(end_pt[0]))
    counts: Dict[Tuple[str, int], int] = {}
    for letter in word:
        counts[letter] = counts.get(letter, 0) + 1
    return counts


def image_endpoint(w: BraidWord, pushoff: Sequence[Point],
                   positive_sign: int = 1) -> int:
    img = _twisted_image(w, pushoff, positive_sign)
    return int(img[-1][0])
