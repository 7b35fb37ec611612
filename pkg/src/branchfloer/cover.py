"""Branched double cover of a bridge diagram as an involutive Heegaard diagram.

The cover is assembled from a GF(2) voltage assignment on the sphere map;
the deck involution tau swaps sheets and fixes the branch vertices.  The
basis arcs lift to the alpha curves, the braided pushoffs to the beta
curves, and the face holding the bare basepoint marked point lifts to the
tau-invariant basepoint region.  Regions of the Heegaard diagram are the
unions of covering faces across the equator scaffold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Set, Tuple

from .braid import BraidWord
from .arcs import ArcSystem, apply_braid, standard_half_arc_basis
from .bridge import BridgeDiagram, build_bridge_diagram
from .surface import CombMap, DoubleCover, SurfaceError, solve_voltages


class CoverError(ValueError):
    pass


@dataclass
class HeegaardDiagram:
    n: int
    base: int
    map: CombMap
    tau_dart: List[int]
    alpha: Dict[int, Set[int]]           # curve index -> upstairs edge ids
    beta: Dict[int, Set[int]]
    basepoint_region: int
    region_of_face: List[int]
    n_regions: int
    eh_vertex: Dict[int, int]            # curve index -> vertex id of contact point
    branch_vertex_ids: Set[int]
    genus: int
    crossings: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    # vertex id -> (alpha index, beta index) for transverse crossings

    # -- derived access ------------------------------------------------------

    def tau_vertex(self) -> List[int]:
        out = list(range(self.map.n_vertices()))
        for d in range(self.map.n_darts()):
            out[self.map.vert_of[d]] = self.map.vert_of[self.tau_dart[d]]
        return out

    def tau_region(self) -> List[int]:
        face_of = self.map.face_of_dart()
        out = list(range(self.n_regions))
        for d in range(self.map.n_darts()):
            out[self.region_of_face[face_of[d]]] = \
                self.region_of_face[face_of[self.tau_dart[d]]]
        return out

    def region_corners(self, region: int) -> List[Tuple[int, int]]:
        """Corner visits (dart, vertex) of the region at crossing vertices."""
        face_of = self.map.face_of_dart()
        out = []
        for f, face in enumerate(self.map.faces()):
            if self.region_of_face[f] != region:
                continue
            for d in face:
                v = self.map.vert_of[d]
                if v in self.crossings:
                    # the corner is real only if the rotation step at v is
                    # not across a scaffold edge (scaffold never meets
                    # crossing vertices, so every visit counts)
                    out.append((d, v))
        return out


def heegaard_from_bridge(b: BridgeDiagram) -> HeegaardDiagram:
    beta_volt = solve_voltages(b.sphere, b.branch_data())
    cov = DoubleCover(b.sphere, beta_volt, b.branch_vertices)
    m = cov.map
    m.validate()

    # curves upstairs
    alpha: Dict[int, Set[int]] = {}
    beta: Dict[int, Set[int]] = {}
    for e in range(m.n_edges()):
        lbl = m.edge_label[e]
        if lbl[0] == "A":
            alpha.setdefault(lbl[1], set()).add(e)
        elif lbl[0] == "B":
            beta.setdefault(lbl[1], set()).add(e)

    # basepoint region: faces merged across scaffold lifts
    face_of = m.face_of_dart()
    n_faces = len(m.faces())
    parent = list(range(n_faces))

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
    region_ids: Dict[int, int] = {}
    region_of_face = [0] * n_faces
    for f in range(n_faces):
        r = find(f)
        if r not in region_ids:
            region_ids[r] = len(region_ids)
        region_of_face[f] = region_ids[r]

    # the basepoint sits at the whisker tip over the bare marked point; its
    # lift is a branch vertex and the adjacent face is the basepoint face
    z_lift = [vid for vid, name in enumerate(m.vertex_names)
              if name[0] == "lift" and name[1] == b.basepoint_vertex]
    if len(z_lift) != 1:
        raise CoverError("basepoint whisker tip did not branch")
    z_face = None
    for d in range(m.n_darts()):
        if m.vert_of[d] == z_lift[0]:
            z_face = face_of[d]
            break
    if z_face is None:
        raise CoverError("basepoint face lost in the cover")

    tau = cov.deck()
    branch_ids = {vid for vid, nm in enumerate(m.vertex_names)
                  if nm[0] == "lift" and nm[1][0] in ("p", "z")}

    # transverse crossings: vertices whose four incident darts alternate
    # between one alpha and one beta curve
    crossings: Dict[int, Tuple[int, int]] = {}
    darts_by_vertex: Dict[int, List[int]] = {}
    for d in range(m.n_darts()):
        darts_by_vertex.setdefault(m.vert_of[d], []).append(d)
    for v, darts in darts_by_vertex.items():
        if len(darts) != 4:
            continue
        labels = []
        d = darts[0]
        for _ in range(4):
            labels.append(m.edge_label[d // 2])
            d = m.rot_next[d]
        kinds = [lb[0] for lb in labels]
        if sorted(kinds) != ["A", "A", "B", "B"] or kinds[0] == kinds[1]:
            continue
        ai = [lb[1] for lb in labels if lb[0] == "A"]
        bi = [lb[1] for lb in labels if lb[0] == "B"]
        if ai[0] != ai[1] or bi[0] != bi[1]:
            raise CoverError("crossing between malformed curve lifts")
        crossings[v] = (ai[0], bi[0])

    eh_vertex: Dict[int, int] = {}
    for i, nm in b.eh_vertices.items():
        lifted = [vid for vid, name in enumerate(m.vertex_names)
                  if name[0] == "lift" and name[1] == nm]
        if len(lifted) != 1:
            raise CoverError("contact point did not lift to a branch vertex")
        eh_vertex[i] = lifted[0]

    chi = m.euler_characteristic()
    genus = (2 - chi) // 2

    h = HeegaardDiagram(
        n=b.n, base=b.base, map=m, tau_dart=tau, alpha=alpha, beta=beta,
        basepoint_region=region_of_face[z_face],
        region_of_face=region_of_face, n_regions=len(region_ids),
        eh_vertex=eh_vertex, branch_vertex_ids=branch_ids,
        genus=genus, crossings=crossings)
    return h


def validate(h: HeegaardDiagram) -> List[str]:
    """Involutive-diagram report: empty means every invariant holds."""
    out: List[str] = []
    m = h.map
    try:
        m.validate()
    except SurfaceError as exc:
        out.append(f"map structure: {exc}")
        return out
    expect_curves = h.n - 1
    if len(h.alpha) != expect_curves or len(h.beta) != expect_curves:
        out.append("curve count differs from marked point count minus one")
    chi = m.euler_characteristic()
    if chi != 2 - 2 * (h.n - 1):
        out.append(f"euler characteristic {chi} != {2 - 2*(h.n-1)}")
    tau = h.tau_dart
    for d in range(m.n_darts()):
        if tau[tau[d]] != d:
            out.append("deck involution is not an involution")
            break
        if m.edge_label[tau[d] // 2] != m.edge_label[d // 2]:
            out.append("deck involution moves a curve off itself")
            break
        if tau[m.rot_next[d]] != m.rot_next[tau[d]]:
            out.append("deck involution does not preserve the map")
            break
        if tau[m.twin[d]] != m.twin[tau[d]]:
            out.append("deck involution breaks edge pairing")
            break
    tau_v = h.tau_vertex()
    fixed = [v for v in range(m.n_vertices()) if tau_v[v] == v]
    if set(fixed) != h.branch_vertex_ids:
        out.append("tau-fixed vertices differ from the branch vertices")
    if len(fixed) != 2 * h.n:
        out.append(f"branch point count {len(fixed)} != 2n")
    for curves in (h.alpha, h.beta):
        for i, edges in curves.items():
            fix_on_curve = 0
            seen_v: Dict[int, int] = {}
            for e in edges:
                for d in (2 * e, 2 * e + 1):
                    v = m.vert_of[d]
                    seen_v[v] = seen_v.get(v, 0) + 1
            for v, cnt in seen_v.items():
                if cnt != 2:
                    out.append(f"curve {m.edge_label[2*e//2]} not a cycle")
                    break
                if tau_v[v] == v:
                    fix_on_curve += 1
            if fix_on_curve != 2:
                out.append(
                    f"curve has {fix_on_curve} tau-fixed points, wanted 2")
    if h.tau_region()[h.basepoint_region] != h.basepoint_region:
        out.append("basepoint region is not tau-invariant")
    return out


def enumerate_generators(h: HeegaardDiagram) -> List[Tuple[int, ...]]:
    """All intersection-point tuples, one per alpha with distinct betas.

    A generator is a tuple of crossing vertex ids ordered by alpha index;
    for the empty diagram (one marked point) the single empty tuple stands
    for the unique generator.
    """
    alphas = sorted(h.alpha)
    by_alpha: Dict[int, Dict[int, List[int]]] = {i: {} for i in alphas}
    for v, (ai, bj) in h.crossings.items():
        by_alpha[ai].setdefault(bj, []).append(v)
    out: List[Tuple[int, ...]] = []

    def rec(k: int, used: Set[int], acc: List[int]):
        if k == len(alphas):
            out.append(tuple(acc))
            return
        for bj, verts in sorted(by_alpha[alphas[k]].items()):
            if bj in used:
                continue
            used.add(bj)
            for v in sorted(verts):
                acc.append(v)
                rec(k + 1, used, acc)
                acc.pop()
            used.remove(bj)

    rec(0, set(), [])
    return sorted(out)


def tau_on_generator(h: HeegaardDiagram, x: Tuple[int, ...]) -> Tuple[int, ...]:
    tau_v = h.tau_vertex()
    return tuple(sorted((tau_v[v] for v in x),
                        key=lambda v: h.crossings[v][0]))


def pipeline_diagram(w: BraidWord, base: int = 1,
                     system: Optional[ArcSystem] = None) -> HeegaardDiagram:
    """Braid word to involutive Heegaard diagram of the branched cover."""
    if system is None:
        system = standard_half_arc_basis(w.strands, base)
    moved = apply_braid(w, system)
    b = build_bridge_diagram(moved)
    h = heegaard_from_bridge(b)
    problems = validate(h)
    if problems:
        raise CoverError("; ".join(problems))
    return h
