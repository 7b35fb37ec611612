"""Combinatorial maps on surfaces and branched double covers.

A map is stored as darts with a twin involution and counterclockwise
vertex rotations; faces are the orbits of d -> rot(twin(d)) and lie to the
left of their darts.  Double covers branched over marked vertices and over
marked points inside faces are produced from an edge voltage assignment in
GF(2) solved from the local monodromy prescription.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Set, Tuple

from . import gf2


class SurfaceError(ValueError):
    pass


class CombMap:
    def __init__(self):
        self.twin: List[int] = []
        self.rot_next: List[int] = []
        self.vert_of: List[int] = []
        self.vertex_names: List[Hashable] = []
        self.vertex_ids: Dict[Hashable, int] = {}
        self.edge_label: List[Hashable] = []
        self._faces: Optional[List[List[int]]] = None

    # -- construction --------------------------------------------------------

    def add_vertex(self, name: Hashable) -> int:
        if name in self.vertex_ids:
            raise SurfaceError(f"duplicate vertex {name!r}")
        vid = len(self.vertex_names)
        self.vertex_names.append(name)
        self.vertex_ids[name] = vid
        return vid

    def add_edge(self, u: Hashable, v: Hashable, label: Hashable) -> int:
        """Returns the edge id; darts 2e (u->v) and 2e+1 (v->u)."""
        e = len(self.edge_label)
        self.edge_label.append(label)
        self.twin.extend([2 * e + 1, 2 * e])
        self.rot_next.extend([-1, -1])
        self.vert_of.extend([self.vertex_ids[u], self.vertex_ids[v]])
        self._faces = None
        return e

    def set_rotation(self, name: Hashable, darts_ccw: Sequence[int]):
        vid = self.vertex_ids[name]
        for d in darts_ccw:
            if self.vert_of[d] != vid:
                raise SurfaceError(f"dart {d} not at vertex {name!r}")
        k = len(darts_ccw)
        for i, d in enumerate(darts_ccw):
            self.rot_next[d] = darts_ccw[(i + 1) % k]
        self._faces = None

    def insert_dart_before(self, target: int, new_dart: int):
        """Splice a fresh dart into the rotation just before target."""
        prev = target
        while self.rot_next[prev] != target:
            prev = self.rot_next[prev]
        self.rot_next[prev] = new_dart
        self.rot_next[new_dart] = target
        self._faces = None

    # -- structure -----------------------------------------------------------

    def n_darts(self) -> int:
        return len(self.twin)

    def n_edges(self) -> int:
        return len(self.edge_label)

    def n_vertices(self) -> int:
        return len(self.vertex_names)

    def darts_at(self, name: Hashable) -> List[int]:
        vid = self.vertex_ids[name]
        return [d for d in range(self.n_darts()) if self.vert_of[d] == vid]

    def faces(self) -> List[List[int]]:
        """Orbits of d -> rot(twin(d)); the face lies left of its darts."""
        if self._faces is not None:
            return self._faces
        seen = [False] * self.n_darts()
        out = []
        for d0 in range(self.n_darts()):
            if seen[d0]:
                continue
            face = []
            d = d0
            while not seen[d]:
                seen[d] = True
                face.append(d)
                d = self.rot_next[self.twin[d]]
            if d != d0:
                raise SurfaceError("face tracing did not close up")
            out.append(face)
        self._faces = out
        return out

    def face_of_dart(self) -> List[int]:
        idx = [-1] * self.n_darts()
        for f, face in enumerate(self.faces()):
            for d in face:
                idx[d] = f
        return idx

    def euler_characteristic(self) -> int:
        return self.n_vertices() - self.n_edges() + len(self.faces())

    def validate(self):
        nd = self.n_darts()
        for d in range(nd):
            if self.twin[self.twin[d]] != d:
                raise SurfaceError("twin is not an involution")
            if self.rot_next[d] < 0:
                raise SurfaceError(f"dart {d} has no rotation")
            if self.vert_of[self.rot_next[d]] != self.vert_of[d]:
                raise SurfaceError("rotation leaves its vertex")
        # rotations are permutations with one cycle per vertex
        for v in range(self.n_vertices()):
            darts = [d for d in range(nd) if self.vert_of[d] == v]
            if not darts:
                continue
            seen = set()
            d = darts[0]
            while d not in seen:
                seen.add(d)
                d = self.rot_next[d]
            if seen != set(darts):
                raise SurfaceError(
                    f"rotation at {self.vertex_names[v]!r} is not one cycle")


@dataclass
class BranchData:
    """Branching prescription on a sphere map.

    Every branch point must be a vertex; a loop around a vertex crosses
    each incident edge once, so the voltage sum over the incident edges is
    the local monodromy.
    """

    branch_vertices: Set[Hashable]


def solve_voltages(m: CombMap, data: BranchData) -> List[int]:
    """GF(2) edge voltages with the prescribed local monodromies."""
    ne = m.n_edges()
    rows: List[int] = []
    rhs: List[int] = []
    for v in range(m.n_vertices()):
        row = 0
        for d in range(m.n_darts()):
            if m.vert_of[d] == v:
                row ^= 1 << (d // 2)
        if row == 0 and m.vertex_names[v] in data.branch_vertices:
            raise SurfaceError("isolated branch vertex")
        rows.append(row)
        rhs.append(1 if m.vertex_names[v] in data.branch_vertices else 0)
    # solve rows . beta = rhs
    aug = [rows[i] | (rhs[i] << ne) for i in range(len(rows))]
    basis: List[int] = []
    for r in aug:
        for b in basis:
            low = b & -b
            if r & low:
                r ^= b
        if r:
            if r == 1 << ne:
                raise SurfaceError("branching prescription unsatisfiable")
            basis.append(r)
    beta = [0] * ne
    # back-substitute: basis rows have distinct pivots
    for b in sorted(basis, key=lambda r: r & -r, reverse=True):
        piv = (b & -b).bit_length() - 1
        if piv >= ne:
            raise SurfaceError("branching prescription unsatisfiable")
        val = (b >> ne) & 1
        acc = val
        for j in range(ne):
            if j != piv and (b >> j) & 1:
                acc ^= beta[j]
        beta[piv] = acc
    for i, row in enumerate(rows):
        acc = 0
        for j in range(ne):
            if (row >> j) & 1:
                acc ^= beta[j]
        if acc != rhs[i]:
            raise SurfaceError("voltage solve failed")
    return beta


class DoubleCover:
    """Branched double cover of a sphere map given edge voltages.

    Upstairs darts are (downstairs dart, sheet); sheets label the corner
    counterclockwise after the dart at its tail, so both the twin and the
    rotation pick up the voltage of the edge being crossed.
    """

    def __init__(self, base: CombMap, beta: Sequence[int],
                 branch_vertices: Set[Hashable]):
        self.base = base
        self.beta = list(beta)
        self.branch_vertices = branch_vertices
        nd = base.n_darts()
        self.dart_index: Dict[Tuple[int, int], int] = {}
        self.darts: List[Tuple[int, int]] = []
        for d in range(nd):
            for s in (0, 1):
                self.dart_index[(d, s)] = len(self.darts)
                self.darts.append((d, s))
        self.map = self._build()

    def _build(self) -> CombMap:
        base = self.base
        m = CombMap.__new__(CombMap)
        m.twin = [0] * len(self.darts)
        m.rot_next = [0] * len(self.darts)
        m.vert_of = [0] * len(self.darts)
        m.edge_label = []
        m._faces = None

        # vertices: orbits of the lifted rotation
        lifted_rot = {}
        lifted_twin = {}
        for (d, s) in self.darts:
            nd = base.rot_next[d]
            lifted_rot[(d, s)] = (nd, s ^ self.beta[nd // 2])
            lifted_twin[(d, s)] = (base.twin[d], s ^ self.beta[d // 2])

        vertex_of: Dict[Tuple[int, int], int] = {}
        names: List[Hashable] = []
        for start in self.darts:
            if start in vertex_of:
                continue
            vid = len(names)
            orbit = []
            cur = start
            while cur not in vertex_of:
                vertex_of[cur] = vid
                orbit.append(cur)
                cur = lifted_rot[cur]
            base_v = base.vert_of[start[0]]
            sheets = {s for _, s in orbit}
            tag = "both" if len(sheets) == 2 else min(sheets)
            names.append(("lift", base.vertex_names[base_v], tag))
        # disambiguate duplicated names (two lifts of a non-branch vertex)
        seen: Dict[Hashable, int] = {}
        final_names = []
        for nm in names:
            if nm in seen:
                seen[nm] += 1
                final_names.append(nm + (seen[nm],))
            else:
                seen[nm] = 0
                final_names.append(nm)
        m.vertex_names = final_names
        m.vertex_ids = {nm: i for i, nm in enumerate(final_names)}

        # edges: pair up lifted darts under the lifted twin
        edge_of: Dict[Tuple[int, int], int] = {}
        dart_pos: Dict[Tuple[int, int], int] = {}
        order: List[Tuple[int, int]] = []
        for dd in self.darts:
            if dd in edge_of:
                continue
            tt = lifted_twin[dd]
            e = len(m.edge_label)
            m.edge_label.append(base.edge_label[dd[0] // 2])
            edge_of[dd] = e
            edge_of[tt] = e
            dart_pos[dd] = 2 * e
            dart_pos[tt] = 2 * e + 1
            order.extend([dd, tt])

        m.twin = [0] * len(order)
        m.rot_next = [0] * len(order)
        m.vert_of = [0] * len(order)
        for dd in self.darts:
            i = dart_pos[dd]
            m.twin[i] = dart_pos[lifted_twin[dd]]
            m.rot_next[i] = dart_pos[lifted_rot[dd]]
            m.vert_of[i] = vertex_of[dd]
        self.dart_pos = dart_pos
        self.vertex_of_lift = vertex_of
        return m

    def lift_darts(self, d: int) -> Tuple[int, int]:
        return self.dart_pos[(d, 0)], self.dart_pos[(d, 1)]

    def deck(self) -> List[int]:
        """The sheet-swapping involution on upstairs darts."""
        tau = [0] * len(self.darts)
        for (d, s), i in self.dart_pos.items():
            tau[i] = self.dart_pos[(d, 1 - s)]
        return tau
