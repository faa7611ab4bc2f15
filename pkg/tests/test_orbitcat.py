import pytest
from hypothesis import given, settings, strategies as st

from gentlederive.ainf import Linear, Zigzag
from gentlederive.families import gamma
from gentlederive.orbitcat import (
    DerivedIndec, OrbitParams, ar_window, ar_window_to_dot, blowing_fiber_check, cls, derived_hom_dim,
    orbit_class, orbit_hom_dim, per_hom_crosscheck, per_params, phi_power, serre_class,
    serre_relation_check, shift_class, sigma_class, tau_class, tilting_contract_check, tilting_generators,
)
from gentlederive.repcat import Interval, ext_dim, intervals_in


def V(a, b, base=None):
    return Interval(a, b, base or Linear())


def test_orbit_class_examples():
    pr = OrbitParams(Linear(), 1, 1)
    X = orbit_class(pr, DerivedIndec(3, V(0, 0)))
    # Phi^-3 lowers the shift by 3 and applies sigma^3, which moves left by 3
    assert X.rep == DerivedIndec(0, V(-3, -3))
    assert X.rep.obj == Interval(0, 0).shifted(-3)
    Z = Zigzag(1, 1)
    pr = OrbitParams(Z, 2, 1)
    X = orbit_class(pr, DerivedIndec(5, Interval(0, 1, Z)))
    assert X.rep == DerivedIndec(1, Interval(-4, -3, Z))


def test_params_validation():
    with pytest.raises(ValueError):
        OrbitParams(Linear(), 0, 1)
    with pytest.raises(ValueError):
        OrbitParams(Zigzag(1, 1), 1, 1, "plus")
    with pytest.raises(ValueError):
        cls(OrbitParams(Linear(), 1, 1), 0, Interval(0, float("inf")))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(-3, 3), st.integers(-6, 6), st.integers(-4, 4), st.integers(0, 3),
       st.integers(-3, 3), st.booleans())
def test_orbit_class_is_phi_invariant(d, r, n, a, length, k, zig):
    base = Zigzag(1, 2) if zig else Linear()
    pr = OrbitParams(base, d, r)
    x = DerivedIndec(n, Interval(a, a + length, base))
    X = orbit_class(pr, x)
    assert 0 <= X.rep.shift < d
    assert orbit_class(pr, phi_power(pr, x, k)) == X


def _orbit_hom_by_sum(X, Y, spread=12):
    # direct sum over the orbit of Y, far wider than needed
    pr = X.params
    return sum(derived_hom_dim(X.rep, phi_power(pr, Y.rep, k)) for k in range(-spread, spread + 1))


@pytest.mark.parametrize("params", [
    OrbitParams(Linear(), 1, 1), OrbitParams(Linear(), 2, 1), OrbitParams(Linear(), 2, -3),
    OrbitParams(Zigzag(1, 1), 1, 1), OrbitParams(Zigzag(1, 2), 2, -1),
], ids=repr)
def test_orbit_hom_vs_orbit_sum(params):
    small = intervals_in(params.base, -3, 3)
    for M in small[::3]:
        for N in small[::2]:
            for n in range(params.d):
                X, Y = cls(params, 0, M), cls(params, n, N)
                assert orbit_hom_dim(X, Y) == _orbit_hom_by_sum(X, Y)


def test_orbit_hom_examples():
    pr = OrbitParams(Linear(), 1, 1)
    X = cls(pr, 0, V(0, 0))
    assert orbit_hom_dim(X, X) == 2
    assert ext_dim(V(0, 0), V(1, 1)) == 1
    pr = OrbitParams(Linear(), 2, 1)
    assert orbit_hom_dim(cls(pr, 0, V(0, 0)), cls(pr, 1, V(0, 0))) == 0


def test_shift_and_sigma_relation():
    for pr in [OrbitParams(Linear(), 2, 1), OrbitParams(Linear(), 3, -2), OrbitParams(Zigzag(2, 1), 2, 3)]:
        for M in intervals_in(pr.base, -2, 2):
            X = cls(pr, 0, M)
            assert shift_class(X, pr.d) == sigma_class(X, pr.r)


def test_serre_on_linear_d_equals_r():
    pr = OrbitParams(Linear(), 2, 2)
    for M in intervals_in(Linear(), -3, 3):
        X = cls(pr, 1, M)
        assert serre_class(X, 2) == X


def test_serre_examples():
    pr = OrbitParams(Linear(), 2, 1)
    X = cls(pr, 0, V(0, 0))
    assert serre_class(X, 1) == shift_class(X, -1)
    Z = Zigzag(1, 1)
    pr = OrbitParams(Z, 1, 1)
    X = cls(pr, 0, Interval(0, 1, Z))
    assert serre_class(X, 1) == shift_class(X, 2)


def test_serre_inverse():
    pr = OrbitParams(Zigzag(1, 2), 2, 1)
    for M in intervals_in(pr.base, -3, 3):
        X = cls(pr, 1, M)
        assert serre_class(serre_class(X, 1), -1) == X
        assert tau_class(tau_class(X, 2), -2) == X


@pytest.mark.parametrize("d,r", [(1, 1), (2, 1), (2, 3)])
def test_serre_relations_linear(d, r):
    rep = serre_relation_check(OrbitParams(Linear(), d, r), seed=3)
    assert rep.passed, rep.witnesses


@pytest.mark.parametrize("p,q,d,r", [(1, 1, 1, 1), (1, 2, 2, 1)])
def test_serre_relations_zigzag(p, q, d, r):
    rep = serre_relation_check(OrbitParams(Zigzag(p, q), d, r), seed=3)
    assert rep.passed, rep.witnesses
    assert rep.witnesses[0]["nonzero_hom_pairs"] > 0


def test_ar_window_small_counts():
    assert ar_window(OrbitParams(Linear(), 2, 1), 8).component_count() == 2
    assert ar_window(OrbitParams(Linear(), 1, 1, "plus"), 8).component_count() == 2
    assert ar_window(OrbitParams(Zigzag(1, 1), 1, 1), 8).component_count() == 3


def test_ar_window_dot():
    dot = ar_window_to_dot(ar_window(OrbitParams(Linear(), 1, 1), 4))
    assert dot.startswith("digraph ar {") and dot.rstrip().endswith("}")
    assert "->" in dot


def test_ar_window_has_mesh_shape_linear():
    # on the linear quiver every interior object has at most two arrows in and two out
    win = ar_window(OrbitParams(Linear(), 1, 1), 8)
    for X in win.graph.nodes:
        if win.interior(X):
            assert win.graph.in_degree(X) <= 2 and win.graph.out_degree(X) <= 2


@pytest.mark.parametrize("p,q,r,word_len", [(1, 1, 1, 2), (1, 1, 2, 4), (2, 1, 2, 6)])
def test_tilting(p, q, r, word_len):
    gens = tilting_generators(p, q, r)
    assert len(gens) == word_len
    rep = tilting_contract_check(p, q, 1, r)
    assert rep.passed, rep.witnesses


@pytest.mark.parametrize("base,m", [(Linear(), 1), (Linear(), 2), (Zigzag(1, 1), 3)])
def test_blowing_fibers(base, m):
    rep = blowing_fiber_check(OrbitParams(base, 1, 1), m, W=6)
    assert rep.passed, rep.witnesses
    assert list(rep.witnesses[0]["fibre_sizes"]) == [m]


def test_per_params():
    assert per_params(1, 2, -3) == OrbitParams(Zigzag(1, 2), 3, -1)
    assert per_params(0, 2, 1) == OrbitParams(Linear(), 1, 2, "plus")
    with pytest.raises(ValueError):
        per_params(1, 1, 0)


def test_per_hom_example_table():
    rep = per_hom_crosscheck(gamma(1, 1, 1))
    assert rep.passed, rep.witnesses
    rows = {(i, j, n): (c, h) for i, j, n, c, h in rep.witnesses[0]["table"]}
    assert rows[("1", "2", 0)] == (1, 1)
    assert rows[("1", "2", 1)] == (1, 1)
    assert all(rows[("1", "2", n)] == (0, 0) for n in range(-4, 5) if n not in (0, 1))


@pytest.mark.parametrize("pqd", [(1, 2, 1), (2, 1, -1), (1, 1, -1), (0, 2, 1), (0, 3, -2)])
def test_per_hom_more(pqd):
    rep = per_hom_crosscheck(gamma(*pqd))
    assert rep.passed, rep.witnesses
