import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from gentlederive.families import gamma, gamma_prime, kronecker
from gentlederive.gentle import (
    AGShapeError, CanonicalForm, LINEAR_CAVEAT, NotGentleError, ag_invariant, canonical_form,
    canonical_from_pairs, cycle_rotation_threads, derived_equivalent, global_dimension_finite,
    is_gentle, root_params_equivalent_linear, root_params_equivalent_zigzag, threads,
    ungraded_realizable,
)
from gentlederive.quiver import AlgebraPresentation, Arrow, GradedQuiver, parse_presentation


def graded(ts):
    return {t.word(): t.grading for t in ts}


def test_gentle_examples():
    assert is_gentle(gamma(2, 3, 1))
    assert is_gentle(gamma_prime(3, 1))
    assert is_gentle(kronecker())


def test_gentle_failures_name_condition():
    three_out = parse_presentation("quiver x\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow c: 1 -> 4\n")
    rep = is_gentle(three_out)
    assert not rep and rep.condition == 1
    assert set(rep.witnesses) == {"a", "b", "c"}
    # two arrows after a, neither composite a relation
    two_free = parse_presentation("quiver x\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\n")
    rep = is_gentle(two_free)
    assert not rep and rep.condition == 2
    both_rel = parse_presentation(
        "quiver x\nvertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 2 -> 4\nrelations: b*a, c*a\n")
    rep = is_gentle(both_rel)
    assert not rep and rep.condition == 3
    with pytest.raises(NotGentleError):
        threads(three_out)


def test_global_dimension():
    for p, q, d in [(1, 1, 0), (2, 3, 1), (4, 1, -3)]:
        assert global_dimension_finite(gamma(p, q, d))
    for q, d in [(1, 0), (3, 1), (2, -2)]:
        assert not global_dimension_finite(gamma_prime(q, d))


def test_threads_gamma_2_3_1_verbatim():
    permitted, forbidden = threads(gamma(2, 3, 1))
    # forbidden: the single arrows, |a1| = d and the rest 0
    assert graded(forbidden) == {"a1": 1, "a2": 0, "a3": 0, "a4": 0, "a5": 0}
    # permitted: the two maximal paths and the trivial threads e_1, e_2, e_4
    assert graded(permitted) == {"a1*a2*a3": -1, "a5*a4": 0, "e_1": 0, "e_2": 0, "e_4": 0}


def test_threads_gamma_prime_3_1_verbatim():
    permitted, forbidden = threads(gamma_prime(3, 1))
    assert graded(permitted) == {"a1": -2, "a2": 0, "a3": 0}
    assert graded(forbidden) == {"e_1": 1, "e_2": 1, "e_3": 1}
    rot = graded(cycle_rotation_threads(gamma_prime(3, 1)))
    assert rot == {"a1*a2*a3": 0, "a2*a3*a1": 0, "a3*a1*a2": 0}


@pytest.mark.parametrize("p,q,d", [(1, 1, 1), (2, 3, -2), (4, 2, 3)])
def test_threads_gamma_counts(p, q, d):
    permitted, forbidden = threads(gamma(p, q, d))
    assert len(permitted) == p + q
    assert len(forbidden) == p + q
    long = [t for t in permitted if len(t.arrows) == q]
    assert any(t.grading == -d for t in long)


@pytest.mark.parametrize("q,d", [(1, 2), (3, 0), (4, -1)])
def test_threads_gamma_prime_counts(q, d):
    permitted, forbidden = threads(gamma_prime(q, d))
    assert len(permitted) == q
    assert len(forbidden) + len(cycle_rotation_threads(gamma_prime(q, d))) == 2 * q
    assert graded(permitted)["a1"] == d - q
    assert {t.grading for t in cycle_rotation_threads(gamma_prime(q, d))} == {1 - d}


def test_boundary_walks_verbatim():
    comps = ag_invariant(gamma(2, 3, 1)).to_json()["components"]
    walks = sorted(c["walk"] for c in comps)
    assert ["p:a1*a2*a3", "f:a4", "p:e_4", "f:a5"] in walks
    assert ["p:a5*a4", "f:a3", "p:e_2", "f:a2", "p:e_1", "f:a1"] in walks
    by_n = {c["n"]: c["w"] for c in comps}
    assert by_n == {2: -1, 3: 1}
    comps = ag_invariant(gamma_prime(3, 1)).to_json()["components"]
    one = [c for c in comps if c["type"] == "I"][0]
    assert one["walk"] == ["p:a1", "f:e_1", "p:a2", "f:e_2", "p:a3", "f:e_3"]
    assert (one["n"], one["w"]) == (3, 1)
    two = [c for c in comps if c["type"] == "II'"][0]
    assert (two["n"], two["w"]) == (0, -1)


def test_ag_examples():
    assert ag_invariant(gamma(2, 3, 1)).pairs == [(2, 3), (3, 2)]
    assert ag_invariant(gamma_prime(3, 1)).pairs == [(0, 1), (3, 2)]
    assert ag_invariant(gamma(1, 1, 0)).pairs == [(1, 1), (1, 1)]
    assert ag_invariant(gamma(1, 1, 2)).pairs == [(1, -1), (1, 3)]
    assert ag_invariant(gamma_prime(2, 0)).pairs == [(0, 0), (2, 2)]


def test_ag_ungraded_degeneration():
    # with all degrees 0 the second coordinate equals the first
    for p, q in itertools.product(range(1, 4), repeat=2):
        assert ag_invariant(gamma(p, q, 0)).pairs == sorted([(p, p), (q, q)])


def test_ag_total_n_counts_permitted_threads():
    for pres in [gamma(3, 2, 1), gamma_prime(4, 2), kronecker()]:
        permitted, _ = threads(pres)
        assert sum(n for n, _ in ag_invariant(pres).pairs) == len(permitted)


def _relabelled(pres, rng):
    q = pres.quiver
    vs = list(q.vertices)
    new_vs = [f"v{i}" for i in range(len(vs))]
    rng.shuffle(new_vs)
    vmap = dict(zip(vs, new_vs))
    amap = {a.id: f"x{k}" for k, a in enumerate(q.arrows)}
    rels = frozenset((amap[a], amap[b]) for a, b in pres.relations)
    return AlgebraPresentation(q.relabel(vmap, amap), rels, "relabelled")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(1, 3), st.integers(-3, 3), st.integers(0, 10 ** 6))
def test_ag_relabel_invariant(p, q, d, seed):
    pres = gamma(p, q, d) if p else gamma_prime(q, d)
    other = _relabelled(pres, random.Random(seed))
    assert ag_invariant(other).pairs == ag_invariant(pres).pairs


def test_ag_opposite_orientation_kronecker():
    # the graded Kronecker quiver has boundary walks of lengths 1 and 1
    pairs = ag_invariant(kronecker(0, 2)).pairs
    assert [n for n, _ in pairs] == [1, 1]
    assert sum(m for _, m in pairs) == 2


def test_relation_free_oriented_cycle_rejected():
    with pytest.raises(ValueError):
        threads(gamma(0, 3, 1))


def test_canonical_examples():
    assert canonical_form(gamma(3, 2, -1)) == CanonicalForm("ZigzagRoot", (2, 3, 1))
    assert canonical_form(gamma(2, 3, 0)) == CanonicalForm("TildeA", (2, 3))
    c = canonical_form(gamma_prime(3, 0))
    assert c.family == "CyclicNilpotent" and c.params == (3,)
    assert LINEAR_CAVEAT in c.caveats
    c = canonical_form(gamma_prime(3, 1))
    assert c.family == "LinearRoot" and c.params == (3, 1)
    assert c.caveats


def test_canonical_bad_shapes():
    with pytest.raises(AGShapeError):
        canonical_from_pairs([(1, 1)], True)
    with pytest.raises(AGShapeError):
        canonical_from_pairs([(1, 2), (1, 2)], True)
    with pytest.raises(AGShapeError):
        canonical_from_pairs([(2, 2), (3, 3)], False)


def test_canonical_flip_normalized():
    for p, q, d in itertools.product(range(1, 4), range(1, 4), range(-3, 4)):
        assert canonical_form(gamma(p, q, d)) == canonical_form(gamma(q, p, -d))


def test_equivalence_examples():
    assert derived_equivalent(gamma(1, 2, 1), gamma(2, 1, -1)).equivalent
    v = derived_equivalent(gamma(1, 1, 1), gamma(1, 1, 2))
    assert not v.equivalent
    assert v.pairs == (((1, 0), (1, 2)), ((1, -1), (1, 3)))
    j = v.to_json()
    assert j["per"] == j["dfd"] == j["equivalent"] is False
    assert not derived_equivalent(gamma(1, 1, 1), gamma_prime(2, 1)).equivalent


def test_root_params_zigzag_examples():
    assert root_params_equivalent_zigzag((1, 2, 3, 2), (2, 4, 3, 1))
    assert root_params_equivalent_zigzag((1, 2, 3, 1), (2, 1, 3, -1))
    assert not root_params_equivalent_zigzag((1, 2, 3, 1), (1, 2, 2, 1))
    with pytest.raises(ValueError):
        root_params_equivalent_zigzag((0, 2, 3, 1), (1, 2, 3, 1))


def test_root_params_linear_examples():
    assert not root_params_equivalent_linear((2, 3), (2, -3))
    assert not root_params_equivalent_linear((1, 0), (2, 0))
    assert root_params_equivalent_linear((2, 3), (2, 3))


def test_ungraded_realizable_examples():
    assert ungraded_realizable(CanonicalForm("ZigzagRoot", (1, 2, 1)))
    assert not ungraded_realizable(CanonicalForm("ZigzagRoot", (1, 2, 3)))
    assert not ungraded_realizable(CanonicalForm("LinearRoot", (2, 3)))
    assert ungraded_realizable(CanonicalForm("LinearRoot", (3, 2)))
    assert ungraded_realizable(CanonicalForm("TildeA", (1, 1)))


def test_linear_root_params_dictionary():
    # LinearRoot(q, e) corresponds to twisted root parameters (|e|, sign(e) q)
    assert canonical_form(gamma_prime(3, 2)).root_params() == (2, 3)
    assert canonical_form(gamma_prime(3, -2)).root_params() == (2, -3)
    assert canonical_form(gamma(1, 2, 1)).root_params() == (1, 2, 1, 1)
    assert canonical_form(gamma(2, 2, 0)).root_params() is None


@st.composite
def gentle_trees(draw):
    # type A quivers with random orientation, degrees and relations are always gentle
    n = draw(st.integers(2, 7))
    arrows = []
    for i in range(n - 1):
        s, t = (str(i), str(i + 1)) if draw(st.booleans()) else (str(i + 1), str(i))
        arrows.append(Arrow(f"x{i}", s, t, draw(st.integers(-2, 2))))
    pairs = [(a.id, b.id) for a in arrows for b in arrows if a.tgt == b.src]
    rels = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return AlgebraPresentation(GradedQuiver(tuple(str(i) for i in range(n)), tuple(arrows)), frozenset(rels), "t")


def _check_partition_and_totality(pres):
    permitted, forbidden = threads(pres)
    in_cycle = {a for c in cycle_rotation_threads(pres) for a in c.arrows}
    for a in pres.quiver.arrows:
        assert sum(a.id in t.arrows for t in permitted) == 1
        assert sum(a.id in t.arrows for t in forbidden) == (0 if a.id in in_cycle else 1)
    comps = [c for c in ag_invariant(pres).components if c.type == "I"]
    used_p = [t for c in comps for t in c.threads if t.kind == "permitted"]
    used_f = [t for c in comps for t in c.threads if t.kind == "forbidden"]
    assert sorted(map(repr, used_p)) == sorted(map(repr, permitted))
    assert len(used_f) == len(set(map(repr, used_f)))
    for c in comps:
        assert c.n == len(c.threads) // 2
        assert c.w == sum(t.grading for t in c.threads)


@settings(max_examples=100, deadline=None)
@given(gentle_trees())
def test_pairing_totality_random_trees(pres):
    assert is_gentle(pres)
    _check_partition_and_totality(pres)


def test_pairing_totality_families():
    for pres in [gamma(2, 3, 1), gamma(1, 4, -2), gamma_prime(3, 1), gamma_prime(1, 0), kronecker()]:
        _check_partition_and_totality(pres)


def _ungraded(pres):
    q = pres.quiver
    arrows = tuple(Arrow(a.id, a.src, a.tgt, 0) for a in q.arrows)
    return AlgebraPresentation(GradedQuiver(q.vertices, arrows), pres.relations, pres.name)


@settings(max_examples=60, deadline=None)
@given(gentle_trees())
def test_ungraded_degeneration_random(pres):
    pres = _ungraded(pres)
    for c in ag_invariant(pres).components:
        lengths = sum(len(t.arrows) for t in c.threads if t.kind == "forbidden")
        assert c.pair == (c.n, lengths)


def test_ungraded_degeneration_families():
    for pres in [gamma(2, 3, 0), gamma_prime(3, 3), kronecker(0, 0)]:
        for c in ag_invariant(pres).components:
            if c.type == "I":
                lengths = sum(len(t.arrows) for t in c.threads if t.kind == "forbidden")
                assert c.pair == (c.n, lengths)


def test_linear_decision_coherence():
    grid = [(q, d) for q in range(1, 5) for d in range(-3, 4) if d != 0]
    for (q, d), (q2, d2) in itertools.product(grid, repeat=2):
        verdict = derived_equivalent(gamma_prime(q, d), gamma_prime(q2, d2)).equivalent
        t = (abs(d), q if d > 0 else -q)
        t2 = (abs(d2), q2 if d2 > 0 else -q2)
        assert verdict == root_params_equivalent_linear(t, t2)
