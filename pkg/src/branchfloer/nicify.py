"""Equivariant nicification by finger moves on the bridge sphere.

Pushing one curve edge across an opposite-family edge bounding the same
face is performed downstairs on the doubled bridge diagram, so both lifts
of the move happen together and the cover stays involutive for free.  A
greedy search drives a lift-aware badness score to zero: a region that
doubles in the cover may keep at most two corner visits, a region that
splits at most four, all with distinct corner vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Set, Tuple

from .bridge import BridgeDiagram
from .surface import CombMap, solve_voltages


class NicifyError(ValueError):
    pass


def push_edge_across(m: CombMap, b_dart: int, a_dart: int) -> CombMap:
    """Push the edge of b_dart across the edge of a_dart.

    Both darts must have the same face on their left.  The moved edge ends
    up crossing the other edge twice; two new crossing vertices appear.
    """
    faces = m.face_of_dart()
    if faces[b_dart] != faces[a_dart]:
        raise NicifyError("darts do not bound a common face")
    if b_dart // 2 == a_dart // 2:
        raise NicifyError("cannot push an edge across itself")

    out = CombMap()
    out.twin = list(m.twin)
    out.rot_next = list(m.rot_next)
    out.vert_of = list(m.vert_of)
    out.vertex_names = list(m.vertex_names)
    out.vertex_ids = dict(m.vertex_ids)
    out.edge_label = list(m.edge_label)
    out._faces = None

    b_edge, a_edge = b_dart // 2, a_dart // 2
    lab_b, lab_a = m.edge_label[b_edge], m.edge_label[a_edge]
    P, Q = m.vert_of[b_dart], m.vert_of[m.twin[b_dart]]
    S, T = m.vert_of[a_dart], m.vert_of[m.twin[a_dart]]

    nxt = len(out.vertex_names)
    vq_name = ("fx", nxt)
    out.vertex_names.append(vq_name)
    out.vertex_ids[vq_name] = nxt
    vp_name = ("fx", nxt + 1)
    out.vertex_names.append(vp_name)
    out.vertex_ids[vp_name] = nxt + 1
    vq = nxt       # new crossing nearer S
    vp = nxt + 1   # new crossing nearer T

    def new_edge(u, v, label):
        e = len(out.edge_label)
        out.edge_label.append(label)
        out.twin.extend([2 * e + 1, 2 * e])
        out.rot_next.extend([-1, -1])
        out.vert_of.extend([u, v])
        return e

    e1 = new_edge(S, vq, lab_a)    # darts 2e1: S->vq, 2e1+1: vq->S
    e2 = new_edge(vq, vp, lab_a)
    e3 = new_edge(vp, T, lab_a)
    f1 = new_edge(P, vp, lab_b)    # dive, inside the shared face
    f2 = new_edge(vp, vq, lab_b)   # under-strand, beyond the a-edge
    f3 = new_edge(vq, Q, lab_b)

    def replace_at_vertex(old_dart, new_dart):
        prev = old_dart
        while out.rot_next[prev] != old_dart:
            prev = out.rot_next[prev]
        out.rot_next[prev] = new_dart
        out.rot_next[new_dart] = out.rot_next[old_dart]
        if out.rot_next[new_dart] == old_dart:
            out.rot_next[new_dart] = new_dart

    # splice the subdivided a-edge and the rerouted b-edge into the same
    # angular slots of the old rotations
    replace_at_vertex(a_dart, 2 * e1)
    replace_at_vertex(m.twin[a_dart], 2 * e3 + 1)
    replace_at_vertex(b_dart, 2 * f1)
    replace_at_vertex(m.twin[b_dart], 2 * f3 + 1)

    # rotations at the new crossings: the shared face F lies left of both
    # a_dart (S->T) and b_dart; with S->T pointing east and F to the north,
    # the under-strand runs south of the a-edge
    out.set_rotation(vp_name, [2 * e3, 2 * f1 + 1, 2 * e2 + 1, 2 * f2])
    out.set_rotation(vq_name, [2 * e2, 2 * f3, 2 * e1 + 1, 2 * f2 + 1])

    # retire the two old edges: point their darts at themselves harmlessly
    dead = {b_dart, m.twin[b_dart], a_dart, m.twin[a_dart]}
    keep = [d for d in range(len(out.twin)) if d not in dead]
    remap: Dict[int, int] = {}
    fresh = CombMap()
    fresh.vertex_names = out.vertex_names
    fresh.vertex_ids = out.vertex_ids
    old_edges = sorted({d // 2 for d in keep})
    edge_remap = {e: i for i, e in enumerate(old_edges)}
    fresh.edge_label = [out.edge_label[e] for e in old_edges]
    fresh.twin = [0] * (2 * len(old_edges))
    fresh.rot_next = [0] * (2 * len(old_edges))
    fresh.vert_of = [0] * (2 * len(old_edges))
    for d in keep:
        remap[d] = 2 * edge_remap[d // 2] + (d % 2)
    for d in keep:
        nd = remap[d]
        fresh.twin[nd] = remap[out.twin[d]]
        fresh.rot_next[nd] = remap[out.rot_next[d]]
        fresh.vert_of[nd] = out.vert_of[d]
    fresh._faces = None
    fresh.validate()
    if fresh.euler_characteristic() != 2:
        raise NicifyError("finger move left the sphere")
    return fresh


# ---------------------------------------------------------------------------
# badness scoring on the bridge sphere


def _region_structure(m: CombMap):
    """Regions (faces merged across scaffold) with boundary corner visits.

    A corner visit is a boundary passage through a vertex that lifts to a
    crossing: a four-valent A/B crossing or a marked point carrying both an
    A end and a B end.
    """
    faces = m.faces()
    face_of = m.face_of_dart()
    parent = list(range(len(faces)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for d in range(0, m.n_darts(), 2):
        if m.edge_label[d // 2][0] in ("EQ", "WH"):
            fa, fb = find(face_of[d]), find(face_of[m.twin[d]])
            if fa != fb:
                parent[fa] = fb

    # vertex kinds
    is_corner_vertex = [False] * m.n_vertices()
    incident: Dict[int, Set[str]] = {}
    degree: Dict[int, int] = {}
    for d in range(m.n_darts()):
        v = m.vert_of[d]
        incident.setdefault(v, set()).add(m.edge_label[d // 2][0])
        degree[v] = degree.get(v, 0) + 1
    for v in range(m.n_vertices()):
        kinds = incident.get(v, set())
        if "A" in kinds and "B" in kinds:
            is_corner_vertex[v] = True

    region_of_face = {}
    for f in range(len(faces)):
        region_of_face[f] = find(f)

    regions: Dict[int, List[int]] = {}
    for f in range(len(faces)):
        regions.setdefault(region_of_face[f], []).append(f)
    return faces, face_of, region_of_face, regions, is_corner_vertex


def region_report(m: CombMap, beta: Sequence[int], z_tip: Hashable):
    """Per region: (corner visit vertices, lift doubles?, contains z, chi)."""
    faces, face_of, region_of_face, regions, is_corner = _region_structure(m)
    z_vid = m.vertex_ids[z_tip]

    # chi and boundary corner visits per region, via the merged boundary
    out = []
    for rid, flist in regions.items():
        fset = set(flist)
        darts = [d for f in flist for d in faces[f]]
        e_int = sum(1 for d in darts
                    if d % 2 == 0 and face_of[m.twin[d]] in fset)
        verts = {m.vert_of[d] for d in darts}
        v_int = sum(1 for v in verts
                    if all(face_of[d2] in fset
                           for d2 in range(m.n_darts())
                           if m.vert_of[d2] == v))
        chi = len(flist) - e_int + v_int
        # walk the merged boundary components for corner visits
        corner_visits = []
        seen = set()
        for d0 in darts:
            if d0 in seen or face_of[m.twin[d0]] in fset:
                continue
            d = d0
            while d not in seen:
                seen.add(d)
                nxt = m.rot_next[m.twin[d]]
                while face_of[m.twin[nxt]] in fset and face_of[nxt] in fset:
                    nxt = m.rot_next[nxt]
                v = m.vert_of[nxt]
                if is_corner[v]:
                    corner_visits.append(v)
                d = nxt
        doubles = _region_doubles(m, beta, flist, faces, face_of, fset)
        contains_z = z_vid in verts
        out.append((corner_visits, doubles, contains_z, chi))
    return out


def _region_doubles(m, beta, flist, faces, face_of, fset) -> bool:
    """Whether the region lifts to one doubled region, i.e. the boundary
    monodromy of one boundary component is nontrivial."""
    for f0 in flist:
        for d0 in faces[f0]:
            if face_of[m.twin[d0]] in fset:
                continue
            # trace this boundary component, summing voltages of crossed
            # edges; the merged-boundary walk crosses internal scaffold
            volt = 0
            d = d0
            first = True
            steps = 0
            while first or d != d0:
                first = False
                volt ^= beta[d // 2]
                nxt = m.rot_next[m.twin[d]]
                while face_of[m.twin[nxt]] in fset and face_of[nxt] in fset:
                    volt ^= beta[nxt // 2]
                    nxt = m.rot_next[nxt]
                d = nxt
                steps += 1
                if steps > 4 * m.n_darts():
                    raise NicifyError("boundary walk runaway")
            return volt == 1
    return False


class BudgetExhausted(NicifyError):
    pass


def candidate_moves(m: CombMap) -> List[Tuple[int, int]]:
    """(moved dart, crossed dart) pairs of opposite families on one face."""
    faces = m.faces()
    out = []
    for face in faces:
        a_darts = [d for d in face if m.edge_label[d // 2][0] == "A"]
        b_darts = [d for d in face if m.edge_label[d // 2][0] == "B"]
        for bd in b_darts:
            for ad in a_darts:
                out.append((bd, ad))
                out.append((ad, bd))
    return out


def cover_badness(b: BridgeDiagram, sphere: CombMap) -> int:
    """Nice-diagram deficiency of the branched cover of this sphere."""
    from dataclasses import replace
    from . import cover as cover_mod
    from . import floer as floer_mod
    h = cover_mod.heegaard_from_bridge(replace(b, sphere=sphere))
    total = 0
    for r in range(h.n_regions):
        if r == h.basepoint_region:
            continue
        comps = floer_mod.region_corner_cycle(h, r)
        chi = floer_mod.region_euler(h, r)
        corners = [c[0] for comp in comps for c in comp]
        c = len(corners)
        score = 0
        if chi != 1:
            score += 8
        if len(comps) != 1:
            score += 8 * max(0, len(comps) - 1)
        score += 4 * (c - len(set(corners)))
        if c > 4:
            score += c - 4
        elif c in (0, 1, 3):
            score += 2
        total += score
    return total


def nicify_bridge(b: BridgeDiagram, budget: int = 60,
                  sideways: int = 6) -> Tuple[BridgeDiagram, int]:
    """Finger-move the bridge sphere until its cover is a nice diagram.

    Greedy best-first on the cover's nice-diagram deficiency, allowing a
    few non-improving steps; raises BudgetExhausted when the search stalls
    or runs over budget.
    """
    from dataclasses import replace

    cur = b.sphere
    cur_score = cover_badness(b, cur)
    moves_spent = 0
    since_improve = 0
    best_seen = cur_score
    while cur_score > 0:
        if moves_spent >= budget:
            raise BudgetExhausted(
                f"nicification budget {budget} exhausted at badness {cur_score}")
        best = None
        for bd, ad in candidate_moves(cur):
            try:
                cand = push_edge_across(cur, bd, ad)
                s = cover_badness(b, cand)
            except (NicifyError, Exception) as exc:
                if isinstance(exc, KeyboardInterrupt):
                    raise
                continue
            key = (s, cand.n_edges(), bd, ad)
            if best is None or key < best[0]:
                best = (key, cand)
            if s == 0:
                break
        if best is None:
            raise BudgetExhausted("no applicable finger moves")
        cur = best[1]
        cur_score = best[0][0]
        moves_spent += 1
        if cur_score < best_seen:
            best_seen = cur_score
            since_improve = 0
        else:
            since_improve += 1
            if since_improve > sideways:
                raise BudgetExhausted(
                    f"nicification stalled at badness {cur_score}")
    return replace(b, sphere=cur), moves_spent


def badness(m: CombMap, beta: Sequence[int], z_tip: Hashable) -> int:
    total = 0
    for corner_visits, doubles, has_z, chi in region_report(m, beta, z_tip):
        if has_z:
            continue
        allowed = 2 if doubles else 4
        c = len(corner_visits)
        score = max(0, c - allowed)
        if len(set(corner_visits)) != c:
            score += 4 * (c - len(set(corner_visits)))
        if chi != 1:
            score += 8
        if c == 0:
            score += 6
        if not doubles and c % 2 == 1:
            score += 3
        total += score
    return total
