"""Gentle presentations: threads, boundary components and the AG-invariant."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .quiver import AlgebraPresentation, OneCycle, one_cycle_type


class NotGentleError(ValueError):
    pass


class PairingError(RuntimeError):
    """The boundary pairing found zero or several candidates at some step."""


@dataclass
class GentleReport:
    ok: bool
    condition: Optional[int] = None
    message: str = ""
    witnesses: tuple = ()

    def __bool__(self):
        return self.ok


def is_gentle(p: AlgebraPresentation) -> GentleReport:
    q = p.quiver
    for v in q.vertices:
        ins, outs = q.in_arrows(v), q.out_arrows(v)
        if len(ins) > 2 or len(outs) > 2:
            bad = ins if len(ins) > 2 else outs
            return GentleReport(False, 1, f"vertex {v} has {len(ins)} incoming and {len(outs)} outgoing arrows",
                                tuple(a.id for a in bad))
    for beta in q.arrows:
        before = q.in_arrows(beta.src)
        after = q.out_arrows(beta.tgt)
        for in_rel, cond in ((False, 2), (True, 3)):
            prev = [a.id for a in before if p.is_relation(a.id, beta.id) == in_rel]
            nxt = [g.id for g in after if p.is_relation(beta.id, g.id) == in_rel]
            word = "in" if in_rel else "not in"
            if len(prev) > 1:
                return GentleReport(False, cond, f"arrows {prev} precede {beta.id} with composite {word} I",
                                    (beta.id, *prev))
            if len(nxt) > 1:
                return GentleReport(False, cond, f"arrows {nxt} follow {beta.id} with composite {word} I",
                                    (beta.id, *nxt))
    # condition (4): quadratic relations, guaranteed by the data model
    return GentleReport(True)


def _require_gentle(p: AlgebraPresentation):
    rep = is_gentle(p)
    if not rep:
        raise NotGentleError(f"not gentle, condition ({rep.condition}): {rep.message}")


def global_dimension_finite(p: AlgebraPresentation) -> bool:
    _require_gentle(p)
    t = one_cycle_type(p)
    if not isinstance(t, OneCycle):
        raise ValueError("presentation is not one-cycle")
    return not (t.oriented and t.full_relations)


# ---- threads ---------------------------------------------------------------

@dataclass(frozen=True)
class Thread:
    kind: str  # "permitted" or "forbidden"
    arrows: tuple[str, ...]  # in traversal order
    vertex: Optional[str]  # set for trivial threads
    grading: int
    source: str
    target: str

    @property
    def trivial(self) -> bool:
        return not self.arrows

    @property
    def first(self) -> Optional[str]:
        return self.arrows[0] if self.arrows else None

    @property
    def last(self) -> Optional[str]:
        return self.arrows[-1] if self.arrows else None

    def word(self) -> str:
        """Composition notation, last arrow written first; e_v for trivial threads."""
        if self.trivial:
            return f"e_{self.vertex}"
        return "*".join(reversed(self.arrows))


def _successor(p, aid, in_rel):
    q = p.quiver
    a = q.arrow(aid)
    c = [g.id for g in q.out_arrows(a.tgt) if p.is_relation(aid, g.id) == in_rel]
    return c[0] if c else None


def _predecessor(p, aid, in_rel):
    q = p.quiver
    a = q.arrow(aid)
    c = [b.id for b in q.in_arrows(a.src) if p.is_relation(b.id, aid) == in_rel]
    return c[0] if c else None


def _maximal_paths(p, in_rel):
    """Maximal paths whose consecutive pairs all are (in_rel) or are not relations.

    Returns (paths, cycles): cycles are closed chains of the successor map."""
    q = p.quiver
    seen = set()
    paths, cycles = [], []
    for a in q.arrows:
        if _predecessor(p, a.id, in_rel) is None:
            chain = [a.id]
            while True:
                nxt = _successor(p, chain[-1], in_rel)
                if nxt is None:
                    break
                chain.append(nxt)
            seen.update(chain)
            paths.append(tuple(chain))
    for a in q.arrows:
        if a.id in seen:
            continue
        chain = [a.id]
        while True:
            nxt = _successor(p, chain[-1], in_rel)
            if nxt == a.id:
                break
            chain.append(nxt)
        seen.update(chain)
        cycles.append(tuple(chain))
    return paths, cycles


def _degree(p, arrows):
    amap = p.quiver.arrow_map()
    return sum(amap[a].deg for a in arrows)


def threads(p: AlgebraPresentation) -> tuple[list[Thread], list[Thread]]:
    """Permitted and forbidden threads.

    Rotations of an oriented cycle with full relations are not returned; see
    full_relation_cycles.  A relation-free oriented cycle has no finite
    maximal permitted path and is rejected.
    """
    _require_gentle(p)
    q = p.quiver
    amap = q.arrow_map()
    permitted, forbidden = [], []

    free_paths, free_cycles = _maximal_paths(p, False)
    if free_cycles:
        raise ValueError(f"relation-free oriented cycle {free_cycles[0]} has no maximal permitted thread")
    for path in free_paths:
        permitted.append(Thread("permitted", path, None, -_degree(p, path),
                                amap[path[0]].src, amap[path[-1]].tgt))

    rel_paths, _ = _maximal_paths(p, True)
    for path in rel_paths:
        forbidden.append(Thread("forbidden", path, None, _degree(p, path) - len(path) + 1,
                                amap[path[0]].src, amap[path[-1]].tgt))

    for v in q.vertices:
        ins, outs = q.in_arrows(v), q.out_arrows(v)
        if len(ins) > 1 or len(outs) > 1:
            continue
        if ins and outs:
            rel = p.is_relation(ins[0].id, outs[0].id)
            if not rel:
                permitted.append(Thread("permitted", (), v, 0, v, v))
            else:
                forbidden.append(Thread("forbidden", (), v, 1, v, v))
        else:
            permitted.append(Thread("permitted", (), v, 0, v, v))
            forbidden.append(Thread("forbidden", (), v, 1, v, v))
    return permitted, forbidden


def full_relation_cycles(p: AlgebraPresentation) -> list[tuple[str, ...]]:
    """Oriented cycles all of whose consecutive pairs (cyclically) are relations."""
    _, cycles = _maximal_paths(p, True)
    return cycles


def cycle_rotation_threads(p: AlgebraPresentation) -> list[Thread]:
    """The forbidden threads running once around a full-relation oriented cycle.

    There is one per starting arrow.  They do not take part in the pairing;
    the cycle contributes a type II' boundary component instead.
    """
    amap = p.quiver.arrow_map()
    out = []
    for cyc in full_relation_cycles(p):
        for k in range(len(cyc)):
            rot = cyc[k:] + cyc[:k]
            out.append(Thread("forbidden", rot, None, _degree(p, rot) - len(rot) + 1,
                              amap[rot[0]].src, amap[rot[-1]].tgt))
    return out


# ---- boundary components ---------------------------------------------------

@dataclass
class BoundaryComponent:
    type: str  # "I" or "II'"
    threads: list = field(default_factory=list)  # alternating H0, F0, H1, F1, ...
    cycle: tuple = ()
    n: int = 0
    w: int = 0

    @property
    def pair(self) -> tuple[int, int]:
        return (self.n, self.n - self.w)

    def describe(self) -> dict:
        if self.type == "I":
            return {"type": "I", "n": self.n, "w": self.w,
                    "walk": [f"{t.kind[0]}:{t.word()}" for t in self.threads]}
        return {"type": "II'", "n": self.n, "w": self.w, "cycle": "*".join(reversed(self.cycle))}


@dataclass
class AGInvariant:
    components: list

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted(c.pair for c in self.components)

    def multiset(self) -> Counter:
        return Counter(self.pairs)

    def to_json(self) -> dict:
        return {"pairs": [list(x) for x in self.pairs],
                "components": [c.describe() for c in self.components]}


def _differs(x: Optional[str], y: Optional[str]) -> bool:
    return x is None or y is None or x != y


def _end_keys(p, t):
    # trivial threads at a vertex missing incoming (or outgoing) arrows share a
    # virtual arrow on that side, so they never follow each other there
    if not t.trivial:
        return t.first, t.last
    q = p.quiver
    first = f"virtual:{t.vertex}" if q.out_arrows(t.vertex) and not q.in_arrows(t.vertex) else None
    last = f"virtual:{t.vertex}" if q.in_arrows(t.vertex) and not q.out_arrows(t.vertex) else None
    return first, last


def ag_invariant(p: AlgebraPresentation) -> AGInvariant:
    permitted, forbidden = threads(p)
    keys = {id(t): _end_keys(p, t) for t in permitted + forbidden}
    components = []
    used = set()
    for start in range(len(permitted)):
        if start in used:
            continue
        seq = []
        h = start
        n, w = 0, 0
        while True:
            if h in used:
                raise PairingError(f"permitted thread {permitted[h].word()} reached twice")
            used.add(h)
            H = permitted[h]
            seq.append(H)
            n += 1
            w += H.grading
            cands = [F for F in forbidden if F.source == H.source and _differs(keys[id(F)][0], keys[id(H)][0])]
            if len(cands) != 1:
                raise PairingError(f"{len(cands)} forbidden candidates after {H.word()}")
            F = cands[0]
            seq.append(F)
            w += F.grading
            nxt = [i for i, H2 in enumerate(permitted)
                   if H2.target == F.target and _differs(keys[id(H2)][1], keys[id(F)][1])]
            if len(nxt) != 1:
                raise PairingError(f"{len(nxt)} permitted candidates after {F.word()}")
            h = nxt[0]
            if h == start:
                break
        components.append(BoundaryComponent("I", seq, (), n, w))
    for cyc in full_relation_cycles(p):
        deg = _degree(p, cyc)
        # pair (0, length - deg)
        components.append(BoundaryComponent("II'", [], cyc, 0, deg - len(cyc)))
    return AGInvariant(components)


# ---- canonical forms -------------------------------------------------------

LINEAR_CAVEAT = ("completeness of the AG-invariant as a derived invariant is not known for "
                 "infinite global dimension; parameters are read off the AG-invariant")


@dataclass(frozen=True)
class CanonicalForm:
    family: str  # ZigzagRoot, TildeA, LinearRoot, CyclicNilpotent
    params: tuple
    caveats: tuple = ()

    def param_dict(self) -> dict:
        names = {"ZigzagRoot": ("p", "q", "d"), "TildeA": ("p", "q"),
                 "LinearRoot": ("q", "d"), "CyclicNilpotent": ("q",)}[self.family]
        return dict(zip(names, self.params))

    def to_json(self, pairs=None) -> dict:
        out = {"family": self.family, "params": self.param_dict(), "caveats": list(self.caveats)}
        if pairs is not None:
            out = {"pairs": [list(x) for x in sorted(pairs)], **out}
        return out

    def root_params(self) -> Optional[tuple]:
        """(p, q, d, r) for ZigzagRoot with r = 1, (d, r) for LinearRoot, else None."""
        if self.family == "ZigzagRoot":
            p, q, d = self.params
            return (p, q, d, 1)
        if self.family == "LinearRoot":
            q, e = self.params
            return (abs(e), q if e > 0 else -q)
        return None


class AGShapeError(ValueError):
    pass


def canonical_from_pairs(pairs, finite: bool) -> CanonicalForm:
    pairs = sorted(pairs)
    if len(pairs) != 2:
        raise AGShapeError(f"expected two boundary components, got {pairs}")
    if finite:
        (a, x), (b, y) = pairs
        if a < 1 or b < 1 or (x - a) != -(y - b):
            raise AGShapeError(f"pairs {pairs} do not match {{(p,p+d),(q,q-d)}}")
        e = x - a
        if e == 0:
            return CanonicalForm("TildeA", (min(a, b), max(a, b)))
        # (p,q,d) = (a,b,e) or its flip (b,a,-e); choose d >= 1
        return CanonicalForm("ZigzagRoot", (a, b, e) if e > 0 else (b, a, -e))
    zero = [pr for pr in pairs if pr[0] == 0]
    if len(zero) != 1:
        raise AGShapeError(f"pairs {pairs} do not match {{(q,q-d),(0,d)}}")
    e = zero[0][1]
    (qq, m), = [pr for pr in pairs if pr[0] != 0]
    if qq < 1 or m != qq - e:
        raise AGShapeError(f"pairs {pairs} do not match {{(q,q-d),(0,d)}}")
    if e == 0:
        return CanonicalForm("CyclicNilpotent", (qq,), (LINEAR_CAVEAT,))
    return CanonicalForm("LinearRoot", (qq, e), (LINEAR_CAVEAT,))


@lru_cache(maxsize=4096)
def _pairs_and_form(p: AlgebraPresentation) -> tuple[tuple, CanonicalForm]:
    pairs = tuple(ag_invariant(p).pairs)
    return pairs, canonical_from_pairs(pairs, global_dimension_finite(p))


def canonical_form(p: AlgebraPresentation) -> CanonicalForm:
    return _pairs_and_form(p)[1]


@dataclass
class Verdict:
    equivalent: bool
    forms: tuple
    pairs: tuple

    @property
    def per_equivalent(self) -> bool:
        return self.equivalent

    @property
    def dfd_equivalent(self) -> bool:
        return self.equivalent

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            # one verdict answers both questions: triangle and additive equivalence coincide
            "per": self.equivalent,
            "dfd": self.equivalent,
            "certificates": [f.to_json(pr) for f, pr in zip(self.forms, self.pairs)],
        }


def derived_equivalent(a: AlgebraPresentation, b: AlgebraPresentation) -> Verdict:
    pa, fa = _pairs_and_form(a)
    pb, fb = _pairs_and_form(b)
    same = fa.family == fb.family and fa.params == fb.params
    return Verdict(same, (fa, fb), (pa, pb))


def root_params_equivalent_zigzag(t, t2) -> bool:
    p, q, d, r = t
    p2, q2, d2, r2 = t2
    if min(p, q, d, p2, q2, d2) < 1 or r == 0 or r2 == 0:
        raise ValueError("need p, q, d >= 1 and r != 0")
    lhs = (p * r, q * r, d)
    return lhs == (p2 * r2, q2 * r2, d2) or lhs == (-q2 * r2, -p2 * r2, d2)


def root_params_equivalent_linear(t, t2) -> bool:
    d, r = t
    d2, r2 = t2
    if d < 1 or d2 < 1:
        raise ValueError("need d >= 1")
    return (d, r) == (d2, r2)


def ungraded_realizable(c: CanonicalForm) -> bool:
    if c.family == "ZigzagRoot":
        p, q, d = c.params
        return -p <= d <= q
    if c.family == "LinearRoot":
        q, d = c.params
        return 1 <= d <= q
    return True
