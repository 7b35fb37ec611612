"""Doubled bridge diagram of a braided arc system, as a sphere map.

Two copies of the marked disk are glued along the boundary: copy 0 holds
the basis arcs and their untouched pushoffs, copy 1 the basis arcs and the
braid images.  Each doubled basis arc A_i and each doubled pushoff B_i
becomes an edge path; the boundary circle itself is kept as scaffold
("EQ") edges through the feet so that every face of the map is a disk and
every face contains at most one bare marked point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Set, Tuple

from .arcs import ArcError, ArcSystem, Arrangement, TautSystem, taut_system
from .geom import Frac
from .surface import BranchData, CombMap


@dataclass
class BridgeDiagram:
    n: int
    base: int
    sphere: CombMap
    branch_vertices: Set[Hashable]
    basepoint_face: int
    basepoint_vertex: Hashable
    image_end: Dict[int, int]  # moving arc index -> marked point reached
    eh_vertices: Dict[int, Hashable]  # i -> copy-0 shared endpoint vertex

    def branch_data(self) -> BranchData:
        return BranchData(self.branch_vertices)


def _arc_path_names(arr: Arrangement, side: int, key) -> List[Hashable]:
    out = []
    for kind, val in arr.arc_paths[key]:
        if kind == "foot":
            out.append(("foot",) + val)
        elif kind == "cross":
            out.append(("x", side, val))
        else:
            out.append(("p", side, val))
    return out


def build_bridge_diagram(s: ArcSystem) -> BridgeDiagram:
    ts0 = taut_system(s, moving="pushoff")
    arr0 = Arrangement(ts0)
    if arr0.crossings:
        raise ArcError("pushoffs must not cross the basis arcs")
    ts1 = taut_system(s, moving="image")
    arr1 = Arrangement(ts1)

    m = CombMap()
    arrs = {0: arr0, 1: arr1}
    tss = {0: ts0, 1: ts1}

    # vertices
    feet: List[Tuple[Fraction, Hashable]] = []
    for key, code in ts1.arcs.items():
        if ts0.arcs[key].foot_x != code.foot_x:
            raise ArcError("feet moved under the braid action")
        name = ("foot",) + key
        m.add_vertex(name)
        feet.append((code.foot_x, name))
    feet.sort()
    m.add_vertex(("seam",))
    ends_at: Dict[Tuple[int, int], List] = {}
    for side in (0, 1):
        for key, code in tss[side].arcs.items():
            ends_at.setdefault((side, code.end), []).append(key)
    for side in (0, 1):
        for t in range(1, s.n + 1):
            if ends_at.get((side, t)):
                m.add_vertex(("p", side, t))
        for cid in range(len(arrs[side].crossings)):
            m.add_vertex(("x", side, cid))

    # curve edges with dart bookkeeping per vertex
    incid: Dict[Hashable, Dict] = {}

    def register(vname, role, dart):
        incid.setdefault(vname, {})[role] = dart

    for i in s.indices():
        for fam, label in (("a", "A"), ("b", "B")):
            path0 = _arc_path_names(arrs[0], 0, (fam, i))
            path1 = _arc_path_names(arrs[1], 1, (fam, i))
            # full curve from copy-0 marked point through the foot to copy 1
            full = list(reversed(path0)) + path1[1:]
            for k in range(len(full) - 1):
                e = m.add_edge(full[k], full[k + 1], (label, i))
                d_fwd, d_bwd = 2 * e, 2 * e + 1
                for vname, dart in ((full[k], d_fwd), (full[k + 1], d_bwd)):
                    side = None
                    if vname[0] in ("p", "x"):
                        side = vname[1]
                    if vname[0] == "foot":
                        role = ("arc", 1 if dart == d_fwd else 0)
                    elif vname[0] == "p":
                        role = ("end", fam)
                    else:
                        # crossing: forward means toward the copy's arc end
                        going_fwd = (dart == d_fwd) == (side == 1)
                        # on copy 0 the path was reversed
                        role = (fam, "fwd" if going_fwd else "bwd")
                    register(vname, role, dart)

    # equator scaffold
    cycle = [("seam",)] + [name for _, name in feet]
    for k in range(len(cycle)):
        u, v = cycle[k], cycle[(k + 1) % len(cycle)]
        e = m.add_edge(u, v, ("EQ", k))
        register(u, ("eq", "east"), 2 * e)
        register(v, ("eq", "west"), 2 * e + 1)

    # rotations
    for vname, roles in incid.items():
        kind = vname[0]
        if kind == "seam":
            m.set_rotation(vname, [roles[("eq", "east")], roles[("eq", "west")]])
        elif kind == "foot":
            m.set_rotation(vname, [roles[("eq", "east")], roles[("arc", 1)],
                                   roles[("eq", "west")], roles[("arc", 0)]])
        elif kind == "p":
            m.set_rotation(vname, list(roles.values()))
        else:
            side, cid = vname[1], vname[2]
            pa, pb, b_from_left = arrs[side].crossings[cid]
            if b_from_left:
                order = [("a", "fwd"), ("b", "bwd"), ("a", "bwd"), ("b", "fwd")]
            else:
                order = [("a", "fwd"), ("b", "fwd"), ("a", "bwd"), ("b", "bwd")]
            m.set_rotation(vname, [roles[r] for r in order])
    m.validate()

    # bare marked points become whisker-tip vertices so that all branching
    # happens at vertices of the one-skeleton
    image_end = {i: tss[1].arcs[("b", i)].end for i in s.indices()}
    bare_sides = [0] + ([1] if s.base not in image_end.values() else [])
    tip_dart = {}
    for side in bare_sides:
        at = _point_locator(m, arrs, tss, cycle, s.base, side=side)
        tip = ("z", side, s.base)
        m.add_vertex(tip)
        anchor = m.vertex_names[m.vert_of[at]]
        e = m.add_edge(anchor, tip, ("WH", side))
        m.insert_dart_before(at, 2 * e)
        m.set_rotation(tip, [2 * e + 1])
        tip_dart[side] = 2 * e + 1
    m.validate()

    face_idx = m.face_of_dart()
    basepoint_face = face_idx[tip_dart[0]]

    branch = {nm for nm in m.vertex_names if nm[0] in ("p", "z")}
    eh = {i: ("p", 0, i) for i in s.indices()}

    return BridgeDiagram(s.n, s.base, m, branch, basepoint_face,
                         ("z", 0, s.base), image_end, eh)


def _point_locator(m: CombMap, arrs, tss, cycle, t: int, side: int) -> int:
    """A dart of the sphere map whose left face holds bare point p_t^side."""
    ts: TautSystem = tss[side]
    arr: Arrangement = arrs[side]
    u_ph = (0, Frac(t))
    v_ph = (1, -Frac(t))

    spanning = []
    for key in ts.arcs:
        for p in ts.pieces(key):
            if p.side != -1:
                continue
            up, vp = ts.position_key(p.start), ts.position_key(p.stop)
            if u_ph in (up, vp) or v_ph in (up, vp):
                continue
            inu = arr._cyclic_inside(up, u_ph, vp)
            inv = arr._cyclic_inside(up, v_ph, vp)
            if inu != inv:
                spanning.append((p, up, vp, inu))
    if not spanning:
        # the face touches the equator edge whose span covers x = t
        prev = ("seam",)
        for x, name in sorted((ts.arcs[k].foot_x, ("foot",) + k)
                              for k in ts.arcs):
            if x < t:
                prev = name
            else:
                break
        pos = cycle.index(prev)
        # find the equator edge out of prev
        for d in range(m.n_darts()):
            lbl = m.edge_label[d // 2]
            if lbl[0] == "EQ" and d % 2 == 0 and \
                    m.vert_of[d] == m.vertex_ids[prev]:
                # east dart: left face is the copy-1 side
                return d if side == 1 else m.twin[d]
        raise ArcError("equator edge not found")

    # innermost spanning piece, ordered like crossings along the phantom ray
    def near_from_tip(entry):
        p, up, vp, inu = entry
        w = up if inu else vp
        return (0, w) if w > u_ph else (1, w)

    spanning.sort(key=near_from_tip)
    p, up, vp, inu = spanning[0]

    # locate the phantom crossing within the full vertex path of that arc
    real = []
    earlier = 0
    for cid, (qa, qb, _) in enumerate(arr.crossings):
        mine = qa if qa.arc == p.arc else (qb if qb.arc == p.arc else None)
        if mine is None:
            continue
        if mine.seq < p.seq:
            earlier += 1
            continue
        if mine is not p:
            continue
        other = qb if mine is qa else qa
        uo, vo = ts.position_key(other.start), ts.position_key(other.stop)
        w = uo if arr._cyclic_inside(up, uo, vp) else vo
        key = (0, w) if w > up else (1, w)
        real.append((key, cid))
    real.sort()
    ph_w = u_ph if arr._cyclic_inside(up, u_ph, vp) else v_ph
    ph_key = (0, ph_w) if ph_w > up else (1, ph_w)
    n_before = len([1 for key, _ in real if key < ph_key])

    path = arr.arc_paths[p.arc]
    pos = earlier + n_before  # path[pos] precedes the phantom

    def entry_name(entry):
        kind, val = entry
        if kind == "foot":
            return ("foot",) + val
        if kind == "cross":
            return ("x", side, val)
        return ("p", side, val)

    vname_prev = entry_name(path[pos])
    vname_next = entry_name(path[pos + 1])
    # the edge between them along this arc
    for d in range(m.n_darts()):
        if m.edge_label[d // 2][0] not in ("A", "B"):
            continue
        fam_want = "A" if p.arc[0] == "a" else "B"
        if m.edge_label[d // 2] != (fam_want, p.arc[1]):
            continue
        if m.vert_of[d] == m.vertex_ids[vname_prev] and \
                m.vert_of[m.twin[d]] == m.vertex_ids[vname_next]:
            # d runs along the piece direction start->stop; p_t is on the
            # left iff its tip key lies in the listed arc (lower half)
            tip_left = arr._cyclic_inside(up, u_ph, vp)
            dart = d if tip_left else m.twin[d]
            # copy-0 darts see the mirrored disk on the sphere
            return m.twin[dart] if side == 0 else dart
    raise ArcError("failed to locate bare marked point")
