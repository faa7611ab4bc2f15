"""Orbit categories D^b(rep)/Phi with Phi = Sigma^d sigma^{-r}, at object level.

Indecomposables of the derived category of a hereditary category are shifted
modules Sigma^n M, so an object is a pair (n, M).  Phi sends (n, M) to
(n + d, sigma^{-r} M); every orbit has a unique member with 0 <= n < d.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import networkx as nx

from .ainf import AInfQuiver, Linear, Zigzag
from .repcat import (
    Interval, ShiftedInjective, ext_dim, hom_dim, injective, intervals_in, irreducible_arrows,
    is_injective, is_projective, projective, sigma_push, tau, tau_inverse,
)


@dataclass(frozen=True)
class OrbitParams:
    base: AInfQuiver
    d: int
    r: int
    level: str = "bounded"  # or "plus"

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.level not in ("bounded", "plus"):
            raise ValueError("level must be 'bounded' or 'plus'")
        if self.level == "plus" and not self.base.is_linear:
            raise ValueError("the plus level differs from the bounded one only for the linear quiver")

    def describe(self) -> dict:
        out = {"quiver": self.base.name(), "d": self.d, "r": self.r, "level": self.level}
        return out


@dataclass(frozen=True)
class DerivedIndec:
    shift: int
    obj: Interval

    def __repr__(self):
        return f"S^{self.shift}{self.obj!r}"


@dataclass(frozen=True)
class OrbitClass:
    params: OrbitParams
    rep: DerivedIndec

    def __repr__(self):
        return f"[{self.rep!r}]"


def phi_power(params: OrbitParams, x: DerivedIndec, k: int) -> DerivedIndec:
    return DerivedIndec(x.shift + k * params.d, sigma_push(x.obj, -k * params.r))


def orbit_class(params: OrbitParams, x: DerivedIndec) -> OrbitClass:
    if x.obj.base != params.base:
        raise ValueError("object lives over a different quiver")
    if not x.obj.finite and params.level != "plus":
        raise ValueError("infinite interval outside the plus level")
    k = -(x.shift // params.d)
    return OrbitClass(params, phi_power(params, x, k))


def cls(params: OrbitParams, shift: int, obj: Interval) -> OrbitClass:
    return orbit_class(params, DerivedIndec(shift, obj))


def derived_hom_dim(x: DerivedIndec, y: DerivedIndec) -> int:
    """Hom(Sigma^i M, Sigma^j N) in the derived category of a hereditary category."""
    if y.shift == x.shift:
        return hom_dim(x.obj, y.obj)
    if y.shift == x.shift + 1:
        return ext_dim(x.obj, y.obj)
    return 0


def orbit_hom_dim(X: OrbitClass, Y: OrbitClass) -> int:
    if X.params != Y.params:
        raise ValueError("classes from different orbit categories")
    pr = X.params
    x, y = X.rep, Y.rep
    total = 0
    for target in (x.shift, x.shift + 1):
        diff = target - y.shift
        if diff % pr.d == 0:
            total += derived_hom_dim(x, phi_power(pr, y, diff // pr.d))
    return total


# ---- functors on classes ---------------------------------------------------

def shift_class(X: OrbitClass, k: int = 1) -> OrbitClass:
    return cls(X.params, X.rep.shift + k, X.rep.obj)


def sigma_class(X: OrbitClass, k: int) -> OrbitClass:
    return cls(X.params, X.rep.shift, sigma_push(X.rep.obj, k))


def derived_tau(x: DerivedIndec) -> DerivedIndec:
    t = tau(x.obj)
    if isinstance(t, ShiftedInjective):
        if t.injective is None:
            raise ValueError("no derived translate for an infinite projective")
        return DerivedIndec(x.shift - 1, t.injective)
    return DerivedIndec(x.shift, t)


def derived_tau_inverse(x: DerivedIndec) -> DerivedIndec:
    t = tau_inverse(x.obj)
    if isinstance(t, tuple):
        return DerivedIndec(x.shift + 1, t[1])
    return DerivedIndec(x.shift, t)


def tau_class(X: OrbitClass, k: int = 1) -> OrbitClass:
    x = X.rep
    for _ in range(abs(k)):
        x = derived_tau(x) if k > 0 else derived_tau_inverse(x)
    return orbit_class(X.params, x)


def serre_class(X: OrbitClass, k: int = 1) -> OrbitClass:
    """S = Sigma tau."""
    out = X
    for _ in range(abs(k)):
        out = shift_class(tau_class(out)) if k > 0 else tau_class(shift_class(out, -1), -1)
    return out


# ---- AR quiver windows -----------------------------------------------------

def _module_objects(params: OrbitParams, lo: int, hi: int) -> list[Interval]:
    objs = intervals_in(params.base, lo, hi)
    if params.level == "plus":
        objs += [projective(params.base, a) for a in range(lo, hi + 1)]
    return objs


@lru_cache(maxsize=None)
def _module_arrows(base: AInfQuiver, level: str, W: int):
    pr = OrbitParams(base, 1, 0, level)
    objs = _module_objects(pr, -W, W)
    return objs, irreducible_arrows(objs, (-W, W), include_projectives=(level == "plus"))


def _inside(M: Interval, lo: int, hi: int) -> bool:
    return lo <= M.a and (M.b <= hi if M.finite else M.a <= hi)


@dataclass
class ARWindow:
    params: OrbitParams
    W: int
    graph: nx.DiGraph = field(repr=False)

    def interior(self, X: OrbitClass) -> bool:
        m = self.W // 3
        return _inside(X.rep.obj, -m, m)

    def components(self) -> list[set]:
        comps = [set(c) for c in nx.weakly_connected_components(self.graph)]
        return [c for c in comps if any(self.interior(X) for X in c)]

    def component_count(self) -> int:
        return len(self.components())


def ar_window(params: OrbitParams, W: int) -> ARWindow:
    objs, arrows = _module_arrows(params.base, params.level, W)
    g = nx.DiGraph()
    for n in range(params.d):
        for M in objs:
            g.add_node(cls(params, n, M))
    proj_arrows = []
    for X, Y, mult in arrows:
        for n in range(params.d):
            g.add_edge(cls(params, n, X), cls(params, n, Y), multiplicity=mult)
        if is_projective(X) and is_projective(Y) and X.finite:
            proj_arrows.append((X, Y))
    # connecting arrows I_a -> Sigma P_b for each irreducible P_b -> P_a
    for Pb, Pa in proj_arrows:
        a = [x for x in range(Pa.a, Pa.b + 1) if projective(params.base, x) == Pa][0]
        b = [x for x in range(Pb.a, Pb.b + 1) if projective(params.base, x) == Pb][0]
        Ia = injective(params.base, a)
        for n in range(params.d):
            src = cls(params, n, Ia)
            dst = cls(params, n + 1, Pb)
            if src in g and dst in g:
                g.add_edge(src, dst, multiplicity=1)
    return ARWindow(params, W, g)


def ar_component_count(params: OrbitParams, W: int) -> tuple[int, int]:
    """Interior component counts at W and 2W (the doubling certificate)."""
    return ar_window(params, W).component_count(), ar_window(params, 2 * W).component_count()


def ar_window_to_dot(win: ARWindow) -> str:
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"]
    out = ["digraph ar {"]
    names = {}
    for k, comp in enumerate(sorted(win.components(), key=lambda c: min(repr(x) for x in c))):
        for X in comp:
            names[X] = palette[k % len(palette)]
    for X in sorted(win.graph.nodes, key=repr):
        out.append(f'  "{X!r}" [color={names.get(X, "gray")}];')
    for X, Y in sorted(win.graph.edges, key=repr):
        out.append(f'  "{X!r}" -> "{Y!r}";')
    out.append("}")
    return "\n".join(out) + "\n"


# ---- Serre relations -------------------------------------------------------

@dataclass
class Report:
    check: str
    params: dict
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"check": self.check, "params": self.params, "pass": self.passed, "witnesses": self.witnesses}


def regular_component(base: AInfQuiver, seed: Interval, W: int) -> list[Interval]:
    """Members of the module AR component of seed inside [-W, W]."""
    objs, arrows = _module_arrows(base, "bounded", W)
    g = nx.Graph()
    g.add_nodes_from(objs)
    g.add_edges_from((x, y) for x, y, _ in arrows)
    return sorted(nx.node_connected_component(g, seed), key=lambda m: (m.a, m.b))


def zigzag_seeds(p: int, q: int):
    base = Zigzag(p, q)
    x1 = [Interval(0, q, base)] + [Interval(-i, -i, base) for i in range(1, p)]
    x2 = [Interval(-p, 0, base)] + [Interval(i, i, base) for i in range(1, q)]
    return x1, x2


def serre_relation_check(params: OrbitParams, samples: int = 20, pairs: int = 50,
                         seed: int = 0, W: int = 8) -> Report:
    rng = random.Random(seed)
    d, r = params.d, params.r
    fails = []
    checked = 0

    def compare(name, X, lhs, rhs):
        nonlocal checked
        checked += 1
        if lhs != rhs:
            fails.append({"relation": name, "object": repr(X), "lhs": repr(lhs), "rhs": repr(rhs)})

    if params.base.is_linear:
        pool = intervals_in(params.base, -W, W)
        for _ in range(samples):
            X = cls(params, rng.randrange(d), rng.choice(pool))
            compare("S^r = Sigma^(r-d)", X, serre_class(X, r), shift_class(X, r - d))
            compare("S^d = tau^(d-r)", X, serre_class(X, d), tau_class(X, d - r))
        families = {"all": pool}
    else:
        p, q = params.base.p, params.base.q
        x1, x2 = zigzag_seeds(p, q)
        fam1 = regular_component(params.base, x1[0], W)
        fam2 = regular_component(params.base, x2[0], W)
        for s in x1:
            if s not in fam1:
                fails.append({"seed": repr(s), "family": "X1", "problem": "not in the component of the first seed"})
        for s in x2:
            if s not in fam2:
                fails.append({"seed": repr(s), "family": "X2", "problem": "not in the component of the first seed"})
        for _ in range(samples):
            X = cls(params, rng.randrange(d), rng.choice(fam1))
            compare("X1: S^(pr) = Sigma^(pr+d)", X, serre_class(X, p * r), shift_class(X, p * r + d))
            compare("X1: S^d = tau^(pr+d)", X, serre_class(X, d), tau_class(X, p * r + d))
        for _ in range(samples):
            X = cls(params, rng.randrange(d), rng.choice(fam2))
            compare("X2: S^(qr) = Sigma^(qr-d)", X, serre_class(X, q * r), shift_class(X, q * r - d))
            compare("X2: S^d = tau^(d-qr)", X, serre_class(X, d), tau_class(X, d - q * r))
        families = {"X1": fam1, "X2": fam2}
    # Serre duality: dim Hom(X, Y) = dim Hom(Y, S X)
    small = intervals_in(params.base, -4, 4)
    nonzero = 0
    for _ in range(pairs):
        X = cls(params, rng.randrange(d), rng.choice(small))
        Y = cls(params, rng.randrange(d), rng.choice(small))
        a, b = orbit_hom_dim(X, Y), orbit_hom_dim(Y, serre_class(X))
        nonzero += a > 0
        checked += 1
        if a != b:
            fails.append({"duality": [repr(X), repr(Y)], "hom": a, "dual": b})
    return Report("serre", params.describe(), not fails,
                  fails or [{"checked": checked, "nonzero_hom_pairs": nonzero,
                             "family_sizes": {k: len(v) for k, v in families.items()}}])


# ---- tilting contraction -------------------------------------------------

def tilting_generators(p: int, q: int, r: int) -> list[Interval]:
    base = Zigzag(p, q)
    n = p + q
    out = []
    for i in range(r):
        for j in range(-p, 0):
            out.append(Interval(-p, j + i * n, base))
    for i in range(r):
        for j in range(-p - q + 1, -p + 1):
            out.append(Interval(j + i * n, -p + r * n, base))
    return out


def _line_order(objs, edges):
    g = nx.Graph()
    g.add_nodes_from(objs)
    g.add_edges_from(edges)
    if not nx.is_connected(g) or any(deg > 2 for _, deg in g.degree()):
        return None
    ends = [v for v, deg in g.degree() if deg == 1]
    if len(ends) != 2:
        return None
    order = [ends[0]]
    while len(order) < len(objs):
        nxt = [w for w in g.neighbors(order[-1]) if w not in order[-2:]]
        order.append(nxt[0])
    return order


def tilting_contract_check(p: int, q: int, d: int, r: int, copies: int = 4) -> Report:
    """Ext-vanishing of the sigma^r translates of one period of generators,
    and recognition of their endomorphism quiver as the zigzag with runs pr, qr."""
    if min(p, q, r) < 1:
        raise ValueError("need p, q, r >= 1")
    gens = tilting_generators(p, q, r)
    objs = [sigma_push(T, r * m) for m in range(-copies, copies + 1) for T in gens]
    fails = []
    if len(set(objs)) != len(objs):
        fails.append({"problem": "translates collide"})
    for X in objs:
        for Y in objs:
            e = ext_dim(X, Y)
            if e:
                fails.append({"ext": [repr(X), repr(Y)], "dim": e})
    arrows = irreducible_arrows(objs, (min(o.a for o in objs), max(o.b for o in objs)), middles=objs)
    maps = {(X, Y) for X, Y, _ in arrows}
    order = _line_order(objs, [(X, Y) for X, Y in maps])
    period = (p + q) * r
    word = None
    if order is None:
        fails.append({"problem": "endomorphism quiver is not a line"})
    else:
        # orient the line so that sigma^r moves one period to the left
        idx = {o: k for k, o in enumerate(order)}
        mid = order[len(order) // 2]
        if idx[sigma_push(mid, r)] > idx[mid]:
            order.reverse()
            idx = {o: k for k, o in enumerate(order)}
        for o in order:
            s = sigma_push(o, r)
            if s in idx and idx[s] != idx[o] - period:
                fails.append({"problem": "sigma^r is not the period shift", "object": repr(o)})
                break
        # quiver arrow k -> l for each irreducible map T_l -> T_k (projective convention)
        word = "".join("+" if (order[k + 1], order[k]) in maps else "-" for k in range(len(order) - 1))
        target = AInfQuiver(p * r, q * r)
        lo = len(order) // 2 - period
        inner = word[lo: lo + 2 * period]
        matches = [off for off in range(period) if target.orientation_word(off, off + 2 * period) == inner]
        if not matches:
            fails.append({"problem": "orientation does not match the zigzag with runs pr, qr", "word": word})
    return Report("tilting-contract", {"p": p, "q": q, "d": d, "r": r}, not fails,
                  fails or [{"generators": [repr(g) for g in gens], "orientation_word": word}])


# ---- finite orbit fibres ---------------------------------------------------

def blowing_fiber_check(params: OrbitParams, m: int, W: int = 8) -> Report:
    """Project classes modulo Phi^m onto classes modulo Phi; each fibre has m members."""
    if m < 1:
        raise ValueError("m must be >= 1")
    big = OrbitParams(params.base, params.d * m, params.r * m, params.level)
    step = params.base.sigma_step()
    ext = W + (m - 1) * abs(params.r) * step + step
    core = {cls(params, n, M) for n in range(params.d) for M in _module_objects(params, -W, W)}
    lifted = {cls(big, n, M) for n in range(big.d) for M in _module_objects(params, -ext, ext)}
    fibres = {X: set() for X in core}
    fails = []
    for Y in lifted:
        X = orbit_class(params, Y.rep)
        # the projection must not depend on the representative
        again = orbit_class(params, phi_power(big, Y.rep, 1))
        if again != X:
            fails.append({"ill_defined": repr(Y)})
        if X in fibres:
            fibres[X].add(Y)
    sizes = {}
    for X, fib in fibres.items():
        sizes[len(fib)] = sizes.get(len(fib), 0) + 1
        if len(fib) != m:
            fails.append({"class": repr(X), "fibre": sorted(repr(y) for y in fib)})
    return Report("blowing-fibers", {**params.describe(), "m": m, "W": W}, not fails,
                  fails[:10] or [{"classes": len(core), "fibre_sizes": sizes}])


# ---- perfect derived category of gamma(p, q, d) ------------------------

def per_params(p: int, q: int, d: int) -> OrbitParams:
    """Orbit parameters modelling per(gamma(p, q, d)) for d != 0."""
    if d == 0:
        raise ValueError("d must be nonzero")
    sign = 1 if d > 0 else -1
    if p == 0:
        return OrbitParams(Linear(), abs(d), sign * q, "plus")
    return OrbitParams(Zigzag(p, q), abs(d), sign, "bounded")


def per_hom_crosscheck(p_alg, n_range=range(-4, 5), W: int = 8) -> Report:
    from .covering import standard_relabel
    from .quiver import paths_up_to

    sw = standard_relabel(p_alg, W)
    p, q, d = sw.p, sw.q, sw.d
    params = per_params(p, q, d)
    base = params.base
    quiver = p_alg.quiver
    label = {v: sw.labels[(v, 0)] for v in quiver.vertices}
    nmax = max(abs(n) for n in n_range)
    bound = (nmax // abs(d) + 2) * (p + q)
    fails = []
    table = []
    for i in quiver.vertices:
        for j in quiver.vertices:
            counts = {}
            for path in paths_up_to(quiver, bound, i, j):
                counts[path.degree] = counts.get(path.degree, 0) + 1
            X = cls(params, 0, projective(base, label[i]))
            for n in n_range:
                Y = cls(params, n, projective(base, label[j]))
                h = orbit_hom_dim(X, Y)
                c = counts.get(n, 0)
                table.append([i, j, n, c, h])
                if c != h:
                    fails.append({"i": i, "j": j, "n": n, "paths": c, "orbit_hom": h})
    return Report("per-hom", {"p": p, "q": q, "d": d}, not fails, fails or [{"table": table}])
