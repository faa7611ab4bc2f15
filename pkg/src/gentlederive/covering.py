"""Covering quivers of a graded quiver, seen through finite windows.

The covering quiver has vertices (i, j) with i a vertex and j an integer
degree coordinate, and an arrow (a, j): (t(a), j) -> (s(a), j + |a|) for each
arrow a.  The automorphism sigma sends (i, j) to (i, j - 1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import networkx as nx

from .ainf import AInfQuiver
from .families import gamma_quiver
from .quiver import AlgebraPresentation, GradedQuiver


class StabilizationError(RuntimeError):
    pass


def cycle_degree(q: GradedQuiver) -> int:
    """gcd of the degrees of the fundamental cycles of a spanning tree."""
    if not q.is_connected():
        raise ValueError("quiver is not connected")
    pot = {q.vertices[0]: 0}
    adj = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.src].append((a.tgt, a.deg, a.id))
        adj[a.tgt].append((a.src, -a.deg, a.id))
    tree = set()
    stack = [q.vertices[0]]
    while stack:
        v = stack.pop()
        for w, dg, aid in adj[v]:
            if w not in pot:
                pot[w] = pot[v] + dg
                tree.add(aid)
                stack.append(w)
    g = 0
    for a in q.arrows:
        if a.id not in tree:
            g = gcd(g, abs(pot[a.src] + a.deg - pot[a.tgt]))
    return g


@dataclass
class CoveringWindow:
    base: GradedQuiver
    W: int
    graph: nx.MultiDiGraph = field(repr=False)

    def sigma(self, v, k: int = 1):
        i, j = v
        w = (i, j - k)
        return w if -self.W <= w[1] <= self.W else None

    def components(self) -> list[set]:
        comps = [set(c) for c in nx.weakly_connected_components(self.graph)]
        return sorted(comps, key=lambda c: min((j, str(i)) for i, j in c))

    def interior(self, v) -> bool:
        return 3 * abs(v[1]) <= self.W


def build_cover_window(q: GradedQuiver, W: int) -> CoveringWindow:
    if W < 0:
        raise ValueError("W must be nonnegative")
    g = nx.MultiDiGraph()
    for i in q.vertices:
        for j in range(-W, W + 1):
            g.add_node((i, j))
    for a in q.arrows:
        for j in range(-W, W + 1):
            k = j + a.deg
            if -W <= k <= W:
                g.add_edge((a.tgt, j), (a.src, k), key=a.id)
    return CoveringWindow(q, W, g)


@dataclass
class CoverReport:
    cycle_degree: int
    components: int  # components meeting the interior third
    total: int  # all components of the window
    isomorphic: bool
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"cycle_degree": self.cycle_degree, "components": self.components,
                "isomorphic": self.isomorphic, "total_components": self.total}


def _translate_embeds(w: CoveringWindow, src: set, dst: set, t: int) -> bool:
    """Does sigma^t carry the interior part of src into dst, preserving arrows?"""
    core = [v for v in src if w.interior(v)]
    for v in core:
        if (v[0], v[1] - t) not in dst:
            return False
    for u, v, k in w.graph.edges(keys=True):
        if u in src and v in src and w.interior(u) and w.interior(v):
            if not w.graph.has_edge((u[0], u[1] - t), (v[0], v[1] - t), key=k):
                return False
    return True


def _opposite_underlying(q: GradedQuiver) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    g.add_nodes_from(q.vertices)
    for a in q.arrows:
        g.add_edge(a.tgt, a.src)
    return g


def component_report(w: CoveringWindow) -> CoverReport:
    d = cycle_degree(w.base)
    comps = w.components()
    inner = [c for c in comps if any(w.interior(v) for v in c)]
    witnesses = []
    iso = True
    if d >= 1:
        ref = inner[0]
        for c in inner[1:]:
            ts = [t for t in range(-2 * d, 2 * d + 1) if _translate_embeds(w, c, ref, t)]
            if ts:
                witnesses.append({"sigma_power": ts[0]})
            else:
                iso = False
    else:
        opp = _opposite_underlying(w.base)
        for c in inner:
            sub = nx.MultiDiGraph(w.graph.subgraph(c))
            ok = nx.is_isomorphic(sub, opp)
            iso = iso and ok
        witnesses.append({"opposite_quiver": iso})
    return CoverReport(d, len(inner), len(comps), iso, witnesses)


def component_count(w: CoveringWindow, certify: bool = True) -> int:
    """Components meeting the interior third; certified by doubling the window."""
    rep = component_report(w)
    if certify and rep.cycle_degree >= 1:
        big = component_report(build_cover_window(w.base, 2 * w.W))
        if big.components != rep.components:
            raise StabilizationError(f"count changed from {rep.components} to {big.components} on doubling")
    return rep.components


def cover_to_dot(w: CoveringWindow) -> str:
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"]
    colour = {}
    for n, c in enumerate(w.components()):
        for v in c:
            colour[v] = palette[n % len(palette)]
    out = ['digraph cover {']
    for v in sorted(w.graph.nodes, key=lambda v: (v[1], str(v[0]))):
        out.append(f'  "{v[0]},{v[1]}" [color={colour[v]}];')
    for u, v, k in sorted(w.graph.edges(keys=True), key=lambda e: (e[0][1], str(e[0][0]), str(e[2]))):
        out.append(f'  "{u[0]},{u[1]}" -> "{v[0]},{v[1]}" [label="{k}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# ---- relabeling the covering of gamma(p, q, d) ---------------------------

def gamma_shape(quiver: GradedQuiver) -> tuple[int, int, int]:
    """Recover (p, q, d) if the quiver is literally gamma_quiver(p, q, d)."""
    n = len(quiver.vertices)
    key = lambda g: (sorted(g.vertices), sorted((a.id, a.src, a.tgt, a.deg) for a in g.arrows))
    try:
        d = quiver.arrow("a1").deg
    except KeyError:
        raise ValueError("input is not of gamma shape") from None
    for q in range(1, n + 1):
        if key(gamma_quiver(n - q, q, d)) == key(quiver):
            return n - q, q, d
    raise ValueError("input is not of gamma shape")


@dataclass
class StandardWindow:
    p: int
    q: int
    d: int
    labels: dict  # (vertex, j) -> integer label
    arrows: set  # (source label, target label)
    s_shift: int  # s acts as i -> i + s_shift
    lo: int
    hi: int  # labels lo..hi are all present with all edges

    @property
    def base(self) -> AInfQuiver:
        return AInfQuiver(self.p, self.q)

    def orientation_word(self) -> str:
        return "".join("+" if (i, i + 1) in self.arrows else "-" for i in range(self.lo, self.hi))


def standard_relabel(p_alg: AlgebraPresentation, W: int) -> StandardWindow:
    p, q, d = gamma_shape(p_alg.quiver)
    if d == 0:
        raise ValueError("relabeling needs d != 0")
    n = p + q
    w = build_cover_window(p_alg.quiver, W)
    comp = nx.node_connected_component(w.graph.to_undirected(as_view=True), (str(n), 0))
    labels = {}
    for i, j in comp:
        if j % d:
            raise ValueError("degree coordinate not divisible by d in the base component")
        labels[(i, j)] = int(i) + (j // d - 1) * n
    if len(set(labels.values())) != len(labels):
        raise ValueError("relabeling is not injective")
    arrows = set()
    for u, v in w.graph.edges():
        if u in labels:
            a, b = labels[u], labels[v]
            if abs(a - b) != 1:
                raise ValueError(f"relabeled arrow {a}->{b} is not between neighbours")
            arrows.add((a, b))
    vals = set(labels.values())
    lo = hi = None
    # longest run of consecutive labels joined by arrows
    best = (0, 0, 0)
    for start in sorted(vals):
        if start - 1 in vals and ((start - 1, start) in arrows or (start, start - 1) in arrows):
            continue
        end = start
        while end + 1 in vals and ((end, end + 1) in arrows or (end + 1, end) in arrows):
            end += 1
        if end - start > best[0]:
            best = (end - start, start, end)
    _, lo, hi = best
    if hi - lo < 2 * n:
        raise ValueError("window too small to certify two periods")
    sw = StandardWindow(p, q, d, labels, arrows, -n if d > 0 else n, lo, hi)
    expected = AInfQuiver(p, q).orientation_word(lo, hi)
    if sw.orientation_word() != expected:
        raise ValueError("relabeled window does not match the standard orientation")
    return sw
