"""Built-in presentations of the one-cycle families.

``gamma(p, q, d)`` has vertices 1..p+q and arrows a1..a{p+q}:

* a1: 1 -> p+q of degree d,
* ai: i -> i-1 for 2 <= i <= q,
* a{q+1}: q -> q+1 and ai: i-1 -> i for q+2 <= i <= p+q.

So two branches run from the source q to the sink p+q; for p = 0 the lower
branch is empty and the quiver is an oriented q-cycle.  ``gamma_prime(q, d)``
is ``gamma(0, q, q-d)`` modulo all paths of length two.
"""
from __future__ import annotations

from .quiver import AlgebraPresentation, Arrow, GradedQuiver


def gamma_quiver(p: int, q: int, d: int) -> GradedQuiver:
    if p < 0 or q < 1:
        raise ValueError("need p >= 0 and q >= 1")
    n = p + q
    arrows = [Arrow("a1", "1", str(n), d)]
    for i in range(2, q + 1):
        arrows.append(Arrow(f"a{i}", str(i), str(i - 1), 0))
    for i in range(q + 1, n + 1):
        arrows.append(Arrow(f"a{i}", str(i - 1), str(i), 0))
    return GradedQuiver(tuple(str(i) for i in range(1, n + 1)), tuple(arrows))


def gamma(p: int, q: int, d: int) -> AlgebraPresentation:
    return AlgebraPresentation(gamma_quiver(p, q, d), frozenset(), f"gamma_{p}_{q}_{d}")


def gamma_prime(q: int, d: int) -> AlgebraPresentation:
    quiver = gamma_quiver(0, q, q - d)
    rels = set()
    for a in quiver.arrows:
        for b in quiver.arrows:
            if a.tgt == b.src:
                rels.add((a.id, b.id))
    return AlgebraPresentation(quiver, frozenset(rels), f"gamma_prime_{q}_{d}")


def kronecker(deg_a: int = 0, deg_b: int = 2) -> AlgebraPresentation:
    quiver = GradedQuiver(("1", "2"), (Arrow("a", "2", "1", deg_a), Arrow("b", "2", "1", deg_b)))
    return AlgebraPresentation(quiver, frozenset(), "kronecker")
