"""Finite graded quivers with quadratic monomial relations.

A presentation is written in a small line-oriented format::

    quiver kronecker
    vertices: 1 2
    arrow a: 2 -> 1 deg 0
    arrow b: 2 -> 1 deg 2
    relations: b*a

A relation ``b*a`` is the length-two path "first a, then b".
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx


class PresentationError(ValueError):
    """Raised for malformed presentation text, with a line/column position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    tgt: str
    deg: int = 0


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arrow id")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise ValueError(f"arrow {a.id} has an endpoint outside the vertex set")

    def arrow(self, aid: str) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tgt == v]

    def underlying_graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.src, a.tgt, key=a.id)
        return g

    def digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.src, a.tgt, key=a.id, deg=a.deg)
        return g

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and nx.is_connected(self.underlying_graph())

    def relabel(self, vmap: dict, amap: dict) -> "GradedQuiver":
        return GradedQuiver(
            tuple(vmap[v] for v in self.vertices),
            tuple(Arrow(amap[a.id], vmap[a.src], vmap[a.tgt], a.deg) for a in self.arrows),
        )


@dataclass(frozen=True)
class Path:
    """A path; ``arrows`` lists arrow ids in the order they are traversed."""

    quiver: GradedQuiver = field(repr=False, compare=False)
    start: str
    arrows: tuple[str, ...] = ()

    def __post_init__(self):
        amap = self.quiver.arrow_map()
        cur = self.start
        for aid in self.arrows:
            a = amap[aid]
            if a.src != cur:
                raise ValueError(f"path not composable at {aid}")
            cur = a.tgt

    @property
    def end(self) -> str:
        if not self.arrows:
            return self.start
        return self.quiver.arrow(self.arrows[-1]).tgt

    @property
    def degree(self) -> int:
        amap = self.quiver.arrow_map()
        return sum(amap[a].deg for a in self.arrows)

    def __len__(self):
        return len(self.arrows)

    def word(self) -> str:
        """Composition notation: the last arrow is written first."""
        if not self.arrows:
            return f"e_{self.start}"
        return "*".join(reversed(self.arrows))


@dataclass(frozen=True)
class Walk:
    """A walk; each step is (arrow id, +1) or (arrow id, -1) for a formal inverse."""

    quiver: GradedQuiver = field(repr=False, compare=False)
    start: str
    steps: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        amap = self.quiver.arrow_map()
        cur = self.start
        for aid, sign in self.steps:
            a = amap[aid]
            s, t = (a.src, a.tgt) if sign > 0 else (a.tgt, a.src)
            if s != cur:
                raise ValueError(f"walk not composable at {aid}")
            cur = t

    @property
    def end(self) -> str:
        amap = self.quiver.arrow_map()
        cur = self.start
        for aid, sign in self.steps:
            a = amap[aid]
            cur = a.tgt if sign > 0 else a.src
        return cur

    @property
    def degree(self) -> int:
        amap = self.quiver.arrow_map()
        return sum(sign * amap[aid].deg for aid, sign in self.steps)

    def is_oriented(self) -> bool:
        return all(sign > 0 for _, sign in self.steps)

    def reversed(self) -> "Walk":
        return Walk(self.quiver, self.end, tuple((a, -s) for a, s in reversed(self.steps)))


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: GradedQuiver
    relations: frozenset = frozenset()  # pairs (first, second) of arrow ids
    name: str = "Q"

    def __post_init__(self):
        amap = self.quiver.arrow_map()
        for first, second in self.relations:
            if first not in amap or second not in amap:
                raise ValueError(f"relation {second}*{first} uses an unknown arrow")
            if amap[first].tgt != amap[second].src:
                raise ValueError(f"relation {second}*{first} is not composable")

    def is_relation(self, first: str, second: str) -> bool:
        return (first, second) in self.relations


_IDENT = r"[A-Za-z0-9_.'\-]+"
_ARROW_RE = re.compile(
    rf"^arrow\s+(?P<id>{_IDENT})\s*:\s*(?P<src>{_IDENT})\s*->\s*(?P<tgt>{_IDENT})"
    r"(?:\s+deg\s+(?P<deg>[+-]?\d+))?\s*$"
)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_presentation(text: str) -> AlgebraPresentation:
    name = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    rel_tokens: list[tuple[str, int, int]] = []
    seen_vertices = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        col = indent + 1
        if body.startswith("quiver"):
            parts = body.split()
            if len(parts) != 2 or parts[0] != "quiver":
                raise PresentationError("expected 'quiver <name>'", lineno, col)
            if name is not None:
                raise PresentationError("duplicate quiver header", lineno, col)
            name = parts[1]
        elif body.startswith("vertices:"):
            if seen_vertices:
                raise PresentationError("duplicate vertices line", lineno, col)
            seen_vertices = True
            offset = raw.find("vertices:") + len("vertices:")
            for m in re.finditer(r"\S+", raw[offset:len(line)]):
                v = m.group(0)
                if not re.fullmatch(_IDENT, v):
                    raise PresentationError(f"bad vertex id {v!r}", lineno, offset + m.start() + 1)
                if v in vertices:
                    raise PresentationError(f"duplicate vertex id {v!r}", lineno, offset + m.start() + 1)
                vertices.append(v)
        elif body.startswith("arrow"):
            m = _ARROW_RE.match(body)
            if not m:
                raise PresentationError("expected 'arrow <id>: <src> -> <tgt> [deg <int>]'", lineno, col)
            aid, src, tgt = m.group("id"), m.group("src"), m.group("tgt")
            if any(a.id == aid for a in arrows):
                raise PresentationError(f"duplicate arrow id {aid!r}", lineno, col + m.start("id"))
            for key in ("src", "tgt"):
                if m.group(key) not in vertices:
                    raise PresentationError(f"unknown vertex {m.group(key)!r}", lineno, col + m.start(key))
            arrows.append(Arrow(aid, src, tgt, int(m.group("deg") or 0)))
        elif body.startswith("relations:"):
            offset = raw.find("relations:") + len("relations:")
            for m in re.finditer(r"[^,]+", raw[offset:len(line)]):
                tok = m.group(0)
                if tok.strip():
                    start = offset + m.start() + (len(tok) - len(tok.lstrip())) + 1
                    rel_tokens.append((tok.strip(), lineno, start))
        else:
            raise PresentationError(f"unrecognized line {body!r}", lineno, col)

    if name is None:
        raise PresentationError("missing 'quiver <name>' header", 1, 1)
    if not seen_vertices:
        raise PresentationError("missing 'vertices:' line", 1, 1)

    amap = {a.id: a for a in arrows}
    relations = set()
    for tok, lineno, col in rel_tokens:
        parts = [s.strip() for s in tok.split("*")]
        if len(parts) != 2 or not all(parts):
            raise PresentationError(f"relation {tok!r} must have length 2", lineno, col)
        second, first = parts
        for aid in (second, first):
            if aid not in amap:
                raise PresentationError(f"unknown arrow {aid!r} in relation", lineno, col)
        if amap[first].tgt != amap[second].src:
            raise PresentationError(f"relation {tok!r} is not composable", lineno, col)
        relations.add((first, second))

    return AlgebraPresentation(GradedQuiver(tuple(vertices), tuple(arrows)), frozenset(relations), name)


def _sort_key(s: str):
    return (0, int(s), "") if s.lstrip("-").isdigit() else (1, 0, s)


def serialize_presentation(p: AlgebraPresentation) -> str:
    q = p.quiver
    lines = [f"quiver {p.name}", "vertices: " + " ".join(sorted(q.vertices, key=_sort_key))]
    for a in sorted(q.arrows, key=lambda a: _sort_key(a.id)):
        lines.append(f"arrow {a.id}: {a.src} -> {a.tgt} deg {a.deg}")
    if p.relations:
        rels = sorted(p.relations, key=lambda r: (_sort_key(r[1]), _sort_key(r[0])))
        lines.append("relations: " + ", ".join(f"{b}*{a}" for a, b in rels))
    return "\n".join(lines) + "\n"


def quiver_to_dot(q: GradedQuiver, name: str = "Q") -> str:
    out = [f'digraph "{name}" {{']
    for v in sorted(q.vertices, key=_sort_key):
        out.append(f'  "{v}";')
    for a in sorted(q.arrows, key=lambda a: _sort_key(a.id)):
        out.append(f'  "{a.src}" -> "{a.tgt}" [label="{a.id}:{a.deg}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# ---- cycle structure -------------------------------------------------------

@dataclass(frozen=True)
class Tree:
    pass


@dataclass(frozen=True)
class OneCycle:
    oriented: bool
    full_relations: bool
    cycle: Walk


@dataclass(frozen=True)
class MultiCycle:
    betti: int


def _cycle_walk(q: GradedQuiver) -> Walk:
    """The unique undirected cycle of a connected quiver with first Betti number 1."""
    g = q.underlying_graph()
    # strip leaves until only the cycle is left
    core = g.copy()
    leaves = [v for v in core.nodes if core.degree(v) <= 1]
    while leaves:
        core.remove_nodes_from(leaves)
        leaves = [v for v in core.nodes if core.degree(v) <= 1]
    amap = q.arrow_map()
    cyc_arrows = {k for _, _, k in core.edges(keys=True)}
    start = sorted(core.nodes, key=_sort_key)[0]
    steps = []
    used = set()
    cur = start
    while len(steps) < len(cyc_arrows):
        for aid in sorted(cyc_arrows - used, key=_sort_key):
            a = amap[aid]
            if a.src == cur:
                steps.append((aid, 1))
                cur = a.tgt
                break
            if a.tgt == cur:
                steps.append((aid, -1))
                cur = a.src
                break
        used.add(steps[-1][0])
    w = Walk(q, start, tuple(steps))
    if not w.is_oriented() and w.reversed().is_oriented():
        w = w.reversed()
    return w


def one_cycle_type(p: AlgebraPresentation):
    q = p.quiver
    if not q.is_connected():
        raise ValueError("quiver is not connected")
    betti = len(q.arrows) - len(q.vertices) + 1
    if betti == 0:
        return Tree()
    if betti > 1:
        return MultiCycle(betti)
    w = _cycle_walk(q)
    oriented = w.is_oriented()
    full = False
    if oriented:
        arrs = [a for a, _ in w.steps]
        n = len(arrs)
        full = all(p.is_relation(arrs[i], arrs[(i + 1) % n]) for i in range(n))
    return OneCycle(oriented, full, w)


# ---- paths -----------------------------------------------------------------

def paths_up_to(q: GradedQuiver, len_bound: int, source: str, target: str) -> list[Path]:
    """All paths source -> target with at most len_bound arrows, shortest first."""
    if len_bound < 0:
        raise ValueError("len_bound must be nonnegative")
    out_by = defaultdict(list)
    for a in sorted(q.arrows, key=lambda a: _sort_key(a.id)):
        out_by[a.src].append(a)
    found = []
    layer = [(source, ())]
    for length in range(len_bound + 1):
        nxt = []
        for v, arrs in layer:
            if v == target:
                found.append(Path(q, source, arrs))
            if length < len_bound:
                for a in out_by[v]:
                    nxt.append((a.tgt, arrs + (a.id,)))
        layer = nxt
    return found


def paths_with_relations(p: AlgebraPresentation, len_bound: int, source: str, target: str) -> list[Path]:
    """Like paths_up_to but skipping paths that contain a relation."""
    return [
        path for path in paths_up_to(p.quiver, len_bound, source, target)
        if not any(p.is_relation(a, b) for a, b in zip(path.arrows, path.arrows[1:]))
    ]


def hom_finiteness_check(q: GradedQuiver) -> bool:
    """True iff no closed oriented path has total degree 0.

    Within a strongly connected component every closed path is a positive
    combination of simple cycles, and a degree-0 closed path exists exactly
    when the simple cycles are not all of one strict sign.  Both sign tests
    reduce to negative-cycle detection with weights scaled so that a cycle of
    at most n arrows is negative iff its degree is <= 0.
    """
    g = q.digraph()
    n = max(1, len(q.vertices))
    for comp in nx.strongly_connected_components(g):
        sub = [a for a in q.arrows if a.src in comp and a.tgt in comp]
        if not sub:
            continue
        if _is_coboundary(comp, sub):
            return False
        if _has_nonpositive_cycle(comp, sub, +1, n) and _has_nonpositive_cycle(comp, sub, -1, n):
            return False
    return True


def _is_coboundary(comp: Iterable, arrows: list[Arrow]) -> bool:
    pot = {}
    adj = defaultdict(list)
    for a in arrows:
        adj[a.src].append((a.tgt, a.deg))
        adj[a.tgt].append((a.src, -a.deg))
    for root in comp:
        if root in pot:
            continue
        pot[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, dg in adj[v]:
                if w not in pot:
                    pot[w] = pot[v] + dg
                    stack.append(w)
                elif pot[w] != pot[v] + dg:
                    return False
    return True


def _has_nonpositive_cycle(comp, arrows: list[Arrow], sign: int, n: int) -> bool:
    g = nx.DiGraph()
    g.add_nodes_from(comp)
    for a in arrows:
        w = sign * a.deg * (n + 1) - 1
        if g.has_edge(a.src, a.tgt):
            w = min(w, g[a.src][a.tgt]["weight"])
        g.add_edge(a.src, a.tgt, weight=w)
    return nx.negative_edge_cycle(g, weight="weight")
