"""Interval representations of type A infinity-infinity quivers.

An interval V_{a,b} has a one-dimensional space at each vertex of [a, b] and
identity maps along every arrow inside [a, b].  On the linear quiver the
projectives P_a = V_{a,+inf} are also allowed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .ainf import AInfQuiver

INF = math.inf


@dataclass(frozen=True)
class Interval:
    a: int
    b: Union[int, float]
    base: AInfQuiver = AInfQuiver(0, 1)

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"empty interval [{self.a}, {self.b}]")
        if self.b == INF and not self.base.is_linear:
            raise ValueError("infinite intervals are only allowed on the linear quiver")

    @property
    def finite(self) -> bool:
        return self.b != INF

    def dim(self, i: int) -> int:
        return 1 if self.a <= i <= self.b else 0

    def shifted(self, k: int) -> "Interval":
        return Interval(self.a + k, self.b + k, self.base)

    def key(self):
        return (self.a, self.b)

    def __repr__(self):
        b = "inf" if self.b == INF else self.b
        return f"V[{self.a},{b}]"


@dataclass(frozen=True)
class ShiftedInjective:
    """Marker for Sigma^{-1} I_x, the derived translate of the projective P_x."""
    injective: Interval
    vertex: int


# ---- projectives and injectives -------------------------------------------

def projective_support(base: AInfQuiver, x: int, lo=-INF, hi=INF):
    """Vertices reachable from x by a path (clipped to [lo, hi])."""
    if base.is_linear:
        return (x, hi)
    r = x
    while r < hi and base.ascending(r):
        r += 1
    l = x
    while l > lo and not base.ascending(l - 1):
        l -= 1
    return (l, r)


def injective_support(base: AInfQuiver, x: int, lo=-INF, hi=INF):
    """Vertices with a path to x (clipped to [lo, hi])."""
    if base.is_linear:
        return (lo, x)
    l = x
    while l > lo and base.ascending(l - 1):
        l -= 1
    r = x
    while r < hi and not base.ascending(r):
        r += 1
    return (l, r)


def projective(base: AInfQuiver, x: int) -> Interval:
    return Interval(*projective_support(base, x), base)


def injective(base: AInfQuiver, x: int) -> Interval:
    l, r = injective_support(base, x)
    if l == -INF:
        raise ValueError("the linear quiver has no finite-dimensional injectives")
    return Interval(l, r, base)


def tops(M: Interval) -> list[int]:
    """Vertices of M with no arrow coming in from inside the support."""
    if not M.finite:
        return [M.a]
    base = M.base
    out = []
    for x in range(M.a, M.b + 1):
        from_left = x > M.a and base.ascending(x - 1)
        from_right = x < M.b and not base.ascending(x)
        if not (from_left or from_right):
            out.append(x)
    return out


def socles(M: Interval) -> list[int]:
    if not M.finite:
        return []
    base = M.base
    out = []
    for x in range(M.a, int(M.b) + 1):
        to_right = x < M.b and base.ascending(x)
        to_left = x > M.a and not base.ascending(x - 1)
        if not (to_left or to_right):
            out.append(x)
    return out


def is_projective(M: Interval) -> bool:
    t = tops(M)
    return len(t) == 1 and projective(M.base, t[0]) == M


def is_injective(M: Interval) -> bool:
    if not M.finite:
        return False
    s = socles(M)
    if len(s) != 1:
        return False
    l, r = injective_support(M.base, s[0])
    return (l, r) == (M.a, M.b)


# ---- morphisms -------------------------------------------------------------

@dataclass(frozen=True)
class RepMorphism:
    source: Interval
    target: Interval
    window: tuple[int, int]
    values: tuple  # ((vertex, Fraction), ...) on the common support

    def at(self, v: int) -> Fraction:
        return dict(self.values).get(v, Fraction(0))

    def compose(self, after: "RepMorphism") -> "RepMorphism":
        """after o self."""
        if after.source != self.target:
            raise ValueError("morphisms not composable")
        lo = max(self.window[0], after.window[0])
        hi = min(self.window[1], after.window[1])
        vals = []
        for v, x in self.values:
            y = after.at(v)
            if lo <= v <= hi and x * y != 0:
                vals.append((v, x * y))
        return RepMorphism(self.source, after.target, (lo, hi), tuple(vals))

    def is_zero(self) -> bool:
        return all(x == 0 for _, x in self.values)

    def commutes(self) -> bool:
        M, N = self.source, self.target
        lo, hi = self.window
        for i in range(lo, hi):
            u, v = M.base.arrow(i)
            if M.dim(u) and N.dim(v):
                lhs = self.at(u) if N.dim(u) else 0  # N_alpha f_u
                rhs = self.at(v) if M.dim(v) else 0  # f_v M_alpha
                if lhs != rhs:
                    return False
        return True


def _window_for(*ms: Interval, pad: int = 2) -> tuple[int, int]:
    lo = min(m.a for m in ms) - pad
    fin = [m.b for m in ms if m.finite] + [m.a for m in ms]
    hi = max(fin) + pad
    return lo, hi


def hom_basis(M: Interval, N: Interval, pad: Optional[int] = None) -> list[RepMorphism]:
    """Basis of Hom(M, N) by exact solution of the commutation equations.

    Unknowns are the scalars f_v at vertices of the common support inside a
    window padded beyond both supports; infinite supports are cut at the
    window edge, which lies beyond every finite endpoint.
    """
    import sympy

    if M.base != N.base:
        raise ValueError("intervals over different quivers")
    if pad is None:
        pad = max(2, M.base.period)
    lo, hi = _window_for(M, N, pad=pad)
    verts = [v for v in range(lo, hi + 1) if M.dim(v) and N.dim(v)]
    if not verts:
        return []
    idx = {v: k for k, v in enumerate(verts)}
    rows = []
    for i in range(lo, hi):
        u, v = M.base.arrow(i)
        if not (M.dim(u) and N.dim(v)):
            continue
        row = [0] * len(verts)
        if N.dim(u):
            row[idx[u]] += 1
        if M.dim(v):
            row[idx[v]] -= 1
        rows.append(row)
    if not rows:
        kernel = [sympy.Matrix([1 if k == j else 0 for k in range(len(verts))]) for j in range(len(verts))]
    else:
        kernel = sympy.Matrix(rows).nullspace()
    out = []
    for vec in kernel:
        vals = tuple((v, Fraction(int(vec[k].p), int(vec[k].q))) for v, k in idx.items() if vec[k] != 0)
        out.append(RepMorphism(M, N, (lo, hi), vals))
    return out


def hom_dim(M: Interval, N: Interval) -> int:
    """dim Hom(M, N) for intervals, by the quotient/submodule criterion.

    A nonzero map has image supported on the overlap, which must be closed
    under predecessors inside M (a quotient) and under successors inside N
    (a submodule).
    """
    base = M.base
    lo = max(M.a, N.a)
    hi = min(M.b, N.b)
    if lo > hi:
        return 0
    if lo > M.a and base.ascending(lo - 1):
        return 0
    if hi < M.b and not base.ascending(hi):
        return 0
    if lo > N.a and not base.ascending(lo - 1):
        return 0
    if hi < N.b and base.ascending(hi):
        return 0
    return 1


def canonical_morphism(M: Interval, N: Interval) -> Optional[RepMorphism]:
    """The basis morphism with value 1 on the common support, if Hom is nonzero."""
    if not hom_dim(M, N):
        return None
    lo, hi = _window_for(M, N)
    top = min(M.b, N.b)
    top = hi if top == INF else top
    return RepMorphism(M, N, (lo, hi), tuple((v, Fraction(1)) for v in range(max(M.a, N.a), int(top) + 1)))


def euler_form(M: Interval, N: Interval) -> int:
    if not (M.finite and N.finite):
        raise ValueError("euler form needs finite supports")
    lo, hi = min(M.a, N.a), max(M.b, N.b)
    total = sum(M.dim(i) * N.dim(i) for i in range(lo, hi + 1))
    for i in range(lo - 1, hi + 1):
        u, v = M.base.arrow(i)
        total -= M.dim(u) * N.dim(v)
    return total


def ext_dim(M: Interval, N: Interval) -> int:
    if is_projective(M):
        return 0
    if not M.finite:
        raise ValueError("unsupported: infinite non-projective source")
    if N.finite:
        e = hom_dim(M, N) - euler_form(M, N)
        if e < 0:
            raise ArithmeticError("negative extension dimension")
        return e
    # N = P_c on the linear quiver: use 0 -> P_{b+1} -> P_a -> V_{a,b} -> 0
    if not M.base.is_linear:
        raise ValueError("unsupported endpoint combination")
    na, nb = N.dim(M.a), N.dim(M.b + 1)
    rank = 1 if (na and nb) else 0
    return nb - rank


def sigma_push(M: Interval, k: int) -> Interval:
    return M.shifted(-k * M.base.sigma_step())


# ---- Auslander-Reiten translation ----------------------------------------

def _window_projective(base, x, lo, hi):
    l, r = projective_support(base, x, lo, hi)
    return l, min(r, hi)


def _window_injective(base, x, lo, hi):
    l, r = injective_support(base, x, lo, hi)
    return max(l, lo), r


def _indicator(lo, hi, l, r):
    return np.array([1 if l <= i <= r else 0 for i in range(lo, hi + 1)], dtype=np.int64)


def _projective_multiplicities(base, vec, lo):
    """m_y = <u, e_y> = u_y - sum over arrows i -> y of u_i."""
    n = len(vec)
    m = vec.copy()
    for k in range(n - 1):
        u, v = base.arrow(lo + k)
        m[v - lo] -= vec[u - lo]
    return m


def _injective_multiplicities(base, vec, lo):
    """n_y = <e_y, u> = u_y - sum over arrows y -> j of u_j."""
    n = len(vec)
    m = vec.copy()
    for k in range(n - 1):
        u, v = base.arrow(lo + k)
        m[u - lo] -= vec[v - lo]
    return m


def _as_interval(base, vec, lo) -> Interval:
    nz = [k for k, x in enumerate(vec) if x != 0]
    if not nz or any(x not in (0, 1) for x in vec) or nz[-1] - nz[0] + 1 != len(nz):
        raise ArithmeticError(f"translate is not an interval: {list(vec)}")
    return Interval(lo + nz[0], lo + nz[-1], base)


def _tau_window(M: Interval, pad: int) -> Interval:
    """tau on the finite full subquiver around M, via the Nakayama functor."""
    base = M.base
    lo, hi = M.a - pad, int(M.b) + pad
    mvec = _indicator(lo, hi, M.a, M.b)
    p0 = np.zeros_like(mvec)
    top = tops(M)
    for x in top:
        p0 += _indicator(lo, hi, *_window_projective(base, x, lo, hi))
    m0 = _projective_multiplicities(base, p0, lo)
    m1 = _projective_multiplicities(base, p0 - mvec, lo)
    if (m1 < 0).any():
        raise ArithmeticError("syzygy is not projective")
    out = np.zeros_like(mvec)
    for k in range(len(mvec)):
        if m1[k]:
            out += m1[k] * _indicator(lo, hi, *_window_injective(base, lo + k, lo, hi))
        if m0[k]:
            out -= m0[k] * _indicator(lo, hi, *_window_injective(base, lo + k, lo, hi))
    return _as_interval(base, out, lo)


def _tau_inv_window(M: Interval, pad: int) -> Interval:
    base = M.base
    lo, hi = M.a - pad, int(M.b) + pad
    mvec = _indicator(lo, hi, M.a, M.b)
    i0 = np.zeros_like(mvec)
    for x in socles(M):
        i0 += _indicator(lo, hi, *_window_injective(base, x, lo, hi))
    n0 = _injective_multiplicities(base, i0, lo)
    n1 = _injective_multiplicities(base, i0 - mvec, lo)
    if (n1 < 0).any():
        raise ArithmeticError("cosyzygy is not injective")
    out = np.zeros_like(mvec)
    for k in range(len(mvec)):
        if n1[k]:
            out += n1[k] * _indicator(lo, hi, *_window_projective(base, lo + k, lo, hi))
        if n0[k]:
            out -= n0[k] * _indicator(lo, hi, *_window_projective(base, lo + k, lo, hi))
    return _as_interval(base, out, lo)


def intervals_in(base: AInfQuiver, lo: int, hi: int) -> list[Interval]:
    return [Interval(a, b, base) for a in range(lo, hi + 1) for b in range(a, hi + 1)]


class CertificationError(ArithmeticError):
    pass


def certify_tau(M: Interval, T: Interval, pad: Optional[int] = None) -> bool:
    """AR formula dim Ext(M, N) = dim Hom(N, T) for all N near M and T."""
    if pad is None:
        pad = 2 * max(2, M.base.period)
    lo = min(M.a, T.a) - pad
    hi = max(int(M.b), int(T.b)) + pad
    return all(ext_dim(M, N) == hom_dim(N, T) for N in intervals_in(M.base, lo, hi))


@lru_cache(maxsize=None)
def tau(M: Interval, certify: bool = True) -> Union[Interval, ShiftedInjective]:
    if is_projective(M):
        x = tops(M)[0]
        if not M.finite:
            return ShiftedInjective(None, x)
        return ShiftedInjective(injective(M.base, x), x)
    if not M.finite:
        raise ValueError("tau needs a finite interval or a projective")
    pad = 2 * max(2, M.base.period)
    T = _tau_window(M, pad)
    if certify and not certify_tau(M, T):
        raise CertificationError(f"AR formula fails for tau({M}) = {T}")
    return T


@lru_cache(maxsize=None)
def tau_inverse(M: Interval, certify: bool = True):
    """Inverse translate; for an injective I_x returns ('shifted_projective', P_x)."""
    if is_injective(M):
        x = socles(M)[0]
        return ("shifted_projective", projective(M.base, x))
    pad = 2 * max(2, M.base.period)
    T = _tau_inv_window(M, pad)
    if certify and tau(T, certify=False) != M:
        raise CertificationError(f"tau(tau^-1({M})) != {M}")
    return T


# ---- irreducible maps ------------------------------------------------------

def _contains(iv: Interval, v: int) -> bool:
    return iv.a <= v <= iv.b


def irreducible_arrows(S, window: tuple[int, int], pad: Optional[int] = None,
                       include_projectives: bool = False, middles=None):
    """Arrows X -> Y with multiplicity dim rad(X,Y)/rad^2(X,Y), X, Y in S.

    rad^2 is spanned by composites through every interval of the padded window
    (and the projectives P_a there, on request).  Hom spaces between intervals
    are at most one-dimensional with basis the map that is 1 on the common
    support, so a composite X -> Z -> Y is nonzero exactly when it is nonzero
    at some vertex of X, Z and Y.  Passing ``middles`` restricts the
    factorizations to a subcategory (used for endomorphism quivers).
    """
    S = list(S)
    if not S:
        return []
    base = S[0].base
    if pad is None:
        pad = 2 * max(2, base.period)
    lo, hi = window[0] - pad, window[1] + pad
    if middles is not None:
        middles = list(middles)
    else:
        middles = intervals_in(base, lo, hi)
        if include_projectives or any(not x.finite for x in S):
            middles += [projective(base, x) for x in range(lo, hi + 1) if not projective(base, x).finite]
    # S and middles share objects; index middles and find S inside them
    pos = {m: k for k, m in enumerate(middles)}
    for x in S:
        if x not in pos:
            pos[x] = len(middles)
            middles.append(x)
    n = len(middles)
    H = np.zeros((n, n), dtype=np.float32)
    for i, X in enumerate(middles):
        for j, Y in enumerate(middles):
            if i != j and hom_dim(X, Y):
                H[i, j] = 1.0
    sidx = np.array([pos[x] for x in S])
    R2 = np.zeros((len(S), len(S)), dtype=bool)
    vlo = min(m.a for m in middles)
    vhi = max(int(m.b) if m.finite else m.a for m in middles)
    for v in range(vlo, vhi + 1):
        inv = np.array([_contains(m, v) for m in middles])
        if not inv.any():
            continue
        rows = sidx[inv[sidx]]
        if rows.size == 0:
            continue
        zs = np.nonzero(inv)[0]
        prod = H[np.ix_(rows, zs)] @ H[np.ix_(zs, rows)]
        rmask = np.nonzero(inv[sidx])[0]
        R2[np.ix_(rmask, rmask)] |= prod > 0
    out = []
    for i, X in enumerate(S):
        for j, Y in enumerate(S):
            if i != j and H[pos[X], pos[Y]] and not R2[i, j]:
                out.append((X, Y, 1))
    return out
