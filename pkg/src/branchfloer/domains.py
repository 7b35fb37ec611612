"""Domains on a Heegaard diagram: periodic lattice, admissibility, Spin^c
classes and relative Maslov gradings.

A domain is an integer vector of region multiplicities.  Its boundary is
read off edge by edge: the jump of multiplicities across a curve edge must
match a fixed multiple of the whole curve plus the connecting-path
indicator of the generator pair.  Everything is exact integer or rational
arithmetic; the basepoint region is pinned to multiplicity zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cover import HeegaardDiagram
from .intlinalg import LatticeReducer, RationalSolver, int_kernel_basis


class DomainError(ValueError):
    pass


def curve_traversal(h: HeegaardDiagram, edges: set) -> List[int]:
    """Darts of one curve in cyclic order (a coherent orientation)."""
    m = h.map
    start = 2 * min(edges)
    out = [start]
    cur = start
    while True:
        v = m.vert_of[m.twin[cur]]
        nxt = [d for d in range(m.n_darts())
               if m.vert_of[d] == v and d != m.twin[cur] and d // 2 in edges]
        if len(nxt) != 1:
            raise DomainError("curve does not traverse uniquely")
        cur = nxt[0]
        if cur == start:
            break
        out.append(cur)
        if len(out) > 2 * len(edges):
            raise DomainError("curve traversal runaway")
    if len(out) != len(edges):
        raise DomainError("curve is not a single cycle")
    return out


class DomainSystem:
    """Boundary bookkeeping for domains on one Heegaard diagram."""

    def __init__(self, h: HeegaardDiagram):
        self.h = h
        m = h.map
        self.face_of = m.face_of_dart()
        self.curves: List[Tuple[str, int, set]] = []
        for i in sorted(h.alpha):
            self.curves.append(("A", i, h.alpha[i]))
        for j in sorted(h.beta):
            self.curves.append(("B", j, h.beta[j]))
        self.n_regions = h.n_regions

        # oriented curve edges: per curve, darts in traversal order
        self.curve_darts: List[List[int]] = []
        self.dart_curve: Dict[int, Tuple[int, int]] = {}
        for c, (_, _, edges) in enumerate(self.curves):
            darts = curve_traversal(h, edges)
            self.curve_darts.append(darts)
            for pos, d in enumerate(darts):
                self.dart_curve[d] = (c, pos)

        # equations: rows indexed by oriented curve darts; unknowns are the
        # region multiplicities followed by one whole-curve multiple each
        self.rows: List[List[int]] = []
        self.row_dart: List[int] = []
        nr, nc = self.n_regions, len(self.curves)
        for c, darts in enumerate(self.curve_darts):
            for d in darts:
                row = [0] * (nr + nc)
                left = h.region_of_face[self.face_of[d]]
                right = h.region_of_face[self.face_of[m.twin[d]]]
                row[left] += 1
                row[right] -= 1
                row[nr + c] -= 1
                self.rows.append(row)
                self.row_dart.append(d)
        zrow = [0] * (nr + nc)
        zrow[h.basepoint_region] = 1
        self.rows.append(zrow)
        self.row_dart.append(-1)
        self._solver: Optional[RationalSolver] = None
        self._corner_cache: Optional[List[List[int]]] = None

    # -- periodic domains ----------------------------------------------------

    def periodic_lattice(self) -> List[List[int]]:
        """Basis of periodic domains (region vectors, n_z = 0)."""
        kern = int_kernel_basis(self.rows)
        return [v[:self.n_regions] for v in kern]

    def weak_admissibility(self) -> Tuple[bool, Optional[List[int]]]:
        """True iff no nonzero nonnegative periodic domain exists."""
        basis = [v for v in self.periodic_lattice() if any(v)]
        if not basis:
            return True, None
        cert = _nonneg_combination(basis)
        if cert is None:
            return True, None
        return False, cert

    # -- connecting domains ----------------------------------------------------

    def generator_offset(self, x: Sequence[int]) -> List[int]:
        """Path-sum functional of a generator, one entry per curve dart.

        Uses a fixed base corner on every curve; two generators connect
        exactly when their offsets differ by a boundary, and the difference
        is the right-hand side of the connecting-domain system.
        """
        out = [0] * (len(self.row_dart) - 1)
        # positions of the generator's coordinates on each curve
        for c, darts in enumerate(self.curve_darts):
            label, idx, _ = self.curves[c]
            v = None
            for coord in x:
                pair = self.h.crossings.get(coord)
                if pair is None:
                    continue
                ai, bj = pair
                if (label == "A" and ai == idx) or \
                        (label == "B" and bj == idx):
                    v = coord
                    break
            if v is None:
                raise DomainError("generator misses a curve")
            sign = 1 if label == "A" else -1
            row_base = sum(len(d) for d in self.curve_darts[:c])
            for pos, d in enumerate(darts):
                if self.h.map.vert_of[d] == v:
                    break
                out[row_base + pos] += sign
        return out

    def connecting_rhs(self, x: Sequence[int], y: Sequence[int]) -> List[int]:
        fx, fy = self.generator_offset(x), self.generator_offset(y)
        return [fy[k] - fx[k] for k in range(len(fx))] + [0]

    def solver(self) -> RationalSolver:
        if self._solver is None:
            self._solver = RationalSolver(self.rows)
        return self._solver

    def connecting_domain(self, x, y) -> Optional[List[Fraction]]:
        """Domain of a class joining x to y, or None if disconnected.

        The result is the region-multiplicity vector; unique once the
        basepoint multiplicity is zero and no periodic domains exist,
        otherwise an arbitrary solution.
        """
        sol = self.solver().solve(self.connecting_rhs(x, y))
        if sol is None:
            return None
        return sol[:self.n_regions]

    # -- Spin^c classes ---------------------------------------------------------

    def _boundary_lattice(self) -> LatticeReducer:
        """Integer span of region boundaries and whole curves, over darts.

        Two generators lie in one class exactly when their offsets differ
        by an element of this lattice (basepoint multiplicity is free)."""
        if getattr(self, "_blat", None) is None:
            ncols = len(self.row_dart) - 1  # drop the basepoint row
            rows = []
            for r in range(self.n_regions):
                vec = [0] * ncols
                for k in range(ncols):
                    d = self.row_dart[k]
                    left = self.h.region_of_face[self.face_of[d]]
                    right = self.h.region_of_face[
                        self.face_of[self.h.map.twin[d]]]
                    if left == r:
                        vec[k] += 1
                    if right == r:
                        vec[k] -= 1
                rows.append(vec)
            base = 0
            for c, darts in enumerate(self.curve_darts):
                vec = [0] * ncols
                for k in range(len(darts)):
                    vec[base + k] = 1
                base += len(darts)
                rows.append(vec)
            self._blat = LatticeReducer(rows, ncols)
        return self._blat

    def spin_classes(self, gens: Sequence[Tuple[int, ...]]
                     ) -> List[List[Tuple[int, ...]]]:
        """Partition generators by integer connectability."""
        lat = self._boundary_lattice()
        buckets: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
        for g in gens:
            res = lat.reduce(self.generator_offset(g))
            buckets.setdefault(res, []).append(g)
        return [sorted(v) for _, v in sorted(buckets.items())]

    # -- Maslov index ----------------------------------------------------------

    def region_corner_counts(self) -> List[int]:
        if self._corner_cache is None:
            counts = [0] * self.n_regions
            m = self.h.map
            for f, face in enumerate(m.faces()):
                r = self.h.region_of_face[f]
                for d in face:
                    if m.vert_of[d] in self.h.crossings:
                        counts[r] += 1
            self._corner_cache = counts
        return self._corner_cache

    def quadrant_regions(self, v: int) -> List[int]:
        m = self.h.map
        return [self.h.region_of_face[self.face_of[d]]
                for d in range(m.n_darts()) if m.vert_of[d] == v]

    def maslov_index(self, dom: Sequence, x: Sequence[int],
                     y: Sequence[int]) -> Fraction:
        """e(D) + n_x(D) + n_y(D) for a domain joining x to y."""
        counts = self.region_corner_counts()
        e = sum(Fraction(dom[r]) * (1 - Fraction(counts[r], 4))
                for r in range(self.n_regions))
        nxy = Fraction(0)
        for gen in (x, y):
            for v in gen:
                for r in self.quadrant_regions(v):
                    nxy += Fraction(dom[r], 4)
        return e + nxy

    # -- gradings ---------------------------------------------------------------

    def relative_gradings(self, gens: Sequence[Tuple[int, ...]]
                          ) -> Tuple[Dict[Tuple[int, ...], Fraction],
                                     Optional[Fraction]]:
        """Gradings within one connected class, minimum normalized to zero.

        Returns (gradings, modulus); the modulus is None for a torsion-free
        ambient class (unique gradings) and otherwise the positive span gcd
        of the periodic-domain indices.
        """
        base = min(gens)
        out: Dict[Tuple[int, ...], Fraction] = {}
        for g in gens:
            dom = self.connecting_domain(g, base)
            if dom is None:
                raise DomainError("generators not in one class")
            out[g] = self.maslov_index(dom, g, base)
        lat = [v for v in self.periodic_lattice() if any(v)]
        modulus = None
        if lat:
            vals = []
            g0 = base
            for v in lat:
                mu = self.maslov_index(v, g0, g0)
                if mu != 0:
                    vals.append(abs(mu))
            if vals:
                modulus = vals[0]
                for v in vals[1:]:
                    modulus = _frac_gcd(modulus, v)
                out = {g: val % modulus for g, val in out.items()}
        lo = min(out.values())
        return {g: val - lo for g, val in out.items()}, modulus


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    import math
    d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    na = a.numerator * (d // a.denominator)
    nb = b.numerator * (d // b.denominator)
    return Fraction(math.gcd(na, nb), d)


def _nonneg_combination(basis: List[List[int]]) -> Optional[List[int]]:
    """A nonzero, componentwise nonnegative integer lattice vector, if any.

    Fourier-Motzkin over the coefficients; tries to force positivity in
    every coordinate in turn.
    """
    nreg = len(basis[0])
    nvar = len(basis)
    for target in range(nreg):
        if all(b[target] == 0 for b in basis):
            continue
        # constraints: sum_k t_k basis[k][r] >= 0 for all r, >= 1 at target
        cons = []
        for r in range(nreg):
            vec = [Fraction(basis[k][r]) for k in range(nvar)]
            lower = Fraction(1) if r == target else Fraction(0)
            cons.append((vec, -lower))  # vec . t + const >= 0
        sol = _fm_solve(cons, nvar)
        if sol is not None:
            out = [sum(sol[k] * basis[k][r] for k in range(nvar))
                   for r in range(nreg)]
            den = 1
            for v in out:
                den = den * v.denominator // _int_gcd(den, v.denominator)
            vec = [int(v * den) for v in out]
            if any(vec) and all(v >= 0 for v in vec):
                return vec
    return None


def _int_gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def _fm_solve(cons: List[Tuple[List[Fraction], Fraction]], nvar: int
              ) -> Optional[List[Fraction]]:
    """Feasibility and a witness for {t : vec.t + const >= 0}."""
    layers = [cons]
    for var in range(nvar - 1, -1, -1):
        cur = layers[-1]
        nxt = []
        pos, neg = [], []
        for vec, c in cur:
            if vec[var] > 0:
                pos.append((vec, c))
            elif vec[var] < 0:
                neg.append((vec, c))
            else:
                nxt.append((vec, c))
        for vp, cp in pos:
            for vn, cn in neg:
                # eliminate: scale so coefficients cancel
                s = -vn[var] / vp[var]
                vec = [s * vp[k] + vn[k] for k in range(nvar)]
                nxt.append((vec, s * cp + cn))
        layers.append(nxt)
    # constants only
    for vec, c in layers[-1]:
        if c < 0:
            return None
    # back substitution
    t = [Fraction(0)] * nvar
    for var in range(nvar):
        layer = layers[nvar - 1 - var]
        lo, hi = None, None
        for vec, c in layer:
            if vec[var] == 0:
                continue
            rest = c + sum(vec[k] * t[k] for k in range(nvar) if k != var)
            bound = -rest / vec[var]
            if vec[var] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            t[var] = Fraction(0)
        elif lo is None:
            t[var] = hi
        elif hi is None:
            t[var] = lo
        else:
            if lo > hi:
                return None
            t[var] = (lo + hi) / 2
    return t
