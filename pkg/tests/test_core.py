from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from psoset import (
    ClassificationError,
    NotATrellisError,
    Psoset,
    PsosetError,
    as_bounded_trellis,
    build_psoset,
    classify_around,
    transitivity_report,
)
from psoset.search import SearchConfig, enumerate_bounded_trellises


@st.composite
def psosets(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = draw(st.sampled_from((0, 1, 2)))
            if c == 1:
                rel[i][j] = True
            elif c == 2:
                rel[j][i] = True
    return Psoset(tuple(f"v{i}" for i in range(n)), tuple(map(tuple, rel)))


def bfs_reachable(P, x, y):
    seen, frontier = {x}, [x]
    while frontier:
        u = frontier.pop()
        for v in range(P.n):
            if P.relation[u][v] and v not in seen:
                seen.add(v)
                frontier.append(v)
    return y in seen


BY_SIZE = {}
for _B in enumerate_bounded_trellises(SearchConfig(6)):
    BY_SIZE.setdefault(_B.n, []).append(_B)
SIZES = sorted(BY_SIZE)


# -- construction --------------------------------------------------------------------


def test_cycle_fixture_is_a_valid_psoset(cycle4):
    assert cycle4.labels == ("a", "b", "c", "d")
    assert cycle4.leq("b", "c") and cycle4.leq("c", "d")
    assert not cycle4.leq("b", "d")


def test_antisymmetry_violation_names_the_pair():
    with pytest.raises(PsosetError, match="antisymmetry violated: both 'q' < 'p' and 'p' < 'q'"):
        build_psoset(["p", "q"], [("p", "q"), ("q", "p")])


def test_singleton():
    P = build_psoset(["x"], [])
    assert P.relation == ((True,),)


@pytest.mark.parametrize(
    "labels, pairs, message",
    [
        (["a", "a"], [], "duplicate label"),
        (["a", "b"], [("a", "z")], "unknown element 'z'"),
        (["a", "b"], [("a", "a")], "not a strict pair"),
    ],
)
def test_build_errors(labels, pairs, message):
    with pytest.raises(PsosetError, match=message):
        build_psoset(labels, pairs)


def test_direct_constructor_checks_invariants():
    with pytest.raises(PsosetError, match="reflexive"):
        Psoset(("a",), ((False,),))
    with pytest.raises(PsosetError, match="antisymmetry"):
        Psoset(("a", "b"), ((True, True), (True, True)))


@given(psosets())
def test_constructed_psosets_are_reflexive_and_antisymmetric(P):
    for i in range(P.n):
        assert P.relation[i][i]
        for j in range(P.n):
            if i != j:
                assert not (P.relation[i][j] and P.relation[j][i])


# -- reachability and cycles --------------------------------------------------------------


def test_reachable_through_a_missing_edge(cycle4):
    assert cycle4.reachable("b", "d")
    assert not cycle4.leq("b", "d")


def test_reachable_is_reflexive(cycle4):
    assert all(cycle4.reachable(x, x) for x in cycle4.labels)


def test_no_downward_reach_in_a_chain(chain3):
    assert not chain3.reachable("1", "0")


@given(psosets())
def test_reachable_matches_bfs_and_is_transitive(P):
    r = range(P.n)
    for x, y in product(r, r):
        assert P.reachable(x, y) == bfs_reachable(P, x, y)
    for x, y, z in product(r, r, r):
        if P.reachable(x, y) and P.reachable(y, z):
            assert P.reachable(x, z)


def test_cycle_members(cycle4, chain3):
    assert cycle4.names(cycle4.cycle_members()) == ("a", "b", "c", "d")
    assert chain3.cycle_members() == ()


def test_trellis14_zero_lies_on_no_cycle(trellis14):
    assert trellis14.index("a") not in trellis14.cycle_members()
    assert trellis14.cycle_members() == ()


@given(psosets())
def test_components_agree_with_mutual_reachability(P):
    oracle = {
        x for x in range(P.n) for y in range(P.n) if x != y and P.reachable(x, y) and P.reachable(y, x)
    }
    assert set(P.cycle_members()) == oracle
    comps = P.components
    assert sorted(x for c in comps for x in c) == list(range(P.n))


@given(psosets())
def test_nontrivial_cycles_have_three_elements(P):
    assert all(len(c) == 1 or len(c) >= 3 for c in P.components)


# -- meets, joins, trellises -------------------------------------------------------------


def test_chain_meet_and_join(chain3):
    assert chain3.meet("m", "1") == chain3.index("m")
    assert chain3.join("0", "m") == chain3.index("m")


def test_trellis14_join_of_x4_and_a(trellis14):
    ups = [z for z in range(trellis14.n) if trellis14.leq("x4", z) and trellis14.leq("a", z)]
    assert trellis14.names(ups) == ("x9", "1")  # scan of the upper bounds
    assert trellis14.join("x4", "a") == trellis14.index("x9")
    assert trellis14.base.join("x4", "a") == trellis14.index("x9")


def test_nontrellis_join_absent(nontrellis):
    ups = nontrellis.upper_bounds("p", "q")
    assert nontrellis.names(ups) == ("r", "s", "1")
    assert nontrellis.join("p", "q") is None
    assert nontrellis.meet("p", "q") == nontrellis.index("0")


def test_as_bounded_trellis(chain3, nontrellis, cycle4):
    assert (chain3.labels[chain3.bottom], chain3.labels[chain3.top]) == ("0", "1")
    with pytest.raises(NotATrellisError) as info:
        as_bounded_trellis(nontrellis)
    assert info.value.reason == "no join"
    assert nontrellis.names(info.value.witness) == ("p", "q")
    with pytest.raises(NotATrellisError) as info:
        as_bounded_trellis(cycle4)
    assert info.value.reason == "no bottom"


def test_missing_top():
    P = build_psoset(["0", "p", "q"], [("0", "p"), ("0", "q")])
    with pytest.raises(NotATrellisError, match="above every element") as info:
        as_bounded_trellis(P)
    assert info.value.reason == "no top"


@pytest.mark.parametrize("n", SIZES)
def test_trellis_bound_laws(n):
    for B in BY_SIZE[n]:
        rel = B.relation
        for x, y in product(range(B.n), repeat=2):
            m, j = B.meet(x, y), B.join(x, y)
            assert rel[m][x] and rel[m][y] and rel[x][j] and rel[y][j]
            assert rel[x][y] == (m == x) == (j == y)
            # cached tables agree with the direct scan
            assert m == B.base.meet(x, y) and j == B.base.join(x, y)


def test_intervals(trellis14):
    P = trellis14
    assert P.names(P.interval("0", "a")) == ("0", "x2", "x3", "a")
    assert P.names(P.interval("0", "a", open_hi=True)) == ("0", "x2", "x3")
    assert P.names(P.interval("0", "a", open_lo=True, open_hi=True)) == ("x2", "x3")
    assert P.names(P.interval("a", "1", open_lo=True)) == ("x6", "x8", "x9", "x10", "x11", "1")
    with pytest.raises(PsosetError, match="not an interval"):
        P.interval("x1", "a")


# -- transitivity ------------------------------------------------------------------------------


def test_chain_is_fully_transitive(chain3):
    assert transitivity_report(chain3).full == (0, 1, 2)


def test_cycle_breaks_left_transitivity(cycle4):
    tr = transitivity_report(cycle4)
    b = cycle4.index("b")
    assert b not in tr.left
    # the witness: d ⊴ a ⊴ b while d ⋬ b
    assert cycle4.leq("d", "a") and cycle4.leq("a", "b") and not cycle4.leq("d", "b")


def test_trellis14_transitivity(trellis14):
    tr = transitivity_report(trellis14)
    assert set(trellis14.indices(["x2", "x3", "x1"])) <= set(tr.left)
    assert set(trellis14.indices(["x6", "x7", "x4", "x5"])) <= set(tr.right)
    assert trellis14.index("a") in tr.middle


@given(psosets())
def test_full_is_the_intersection(P):
    tr = transitivity_report(P)
    assert set(tr.full) == set(tr.left) & set(tr.right) & set(tr.middle)
    if P.is_transitive():
        assert tr.full == tuple(range(P.n))


@pytest.mark.parametrize("n", SIZES)
def test_middle_transitive_elements_separate_their_intervals(n):
    for B in BY_SIZE[n]:
        rel = B.relation
        for a in transitivity_report(B).middle:
            for x in B.interval(B.bottom, a):
                for y in B.interval(a, B.top):
                    assert rel[x][y]


@pytest.mark.parametrize("n", SIZES)
def test_one_sided_transitivity_is_monotone_for_bounds(n):
    for B in BY_SIZE[n]:
        rel, r = B.relation, range(B.n)
        tr = transitivity_report(B)
        for a in tr.right:
            for x in r:
                if rel[a][x]:
                    assert all(rel[B.join(a, y)][B.join(x, y)] for y in r)
        for a in tr.left:
            for x in r:
                if rel[x][a]:
                    assert all(rel[B.meet(x, y)][B.meet(a, y)] for y in r)


# -- classification ---------------------------------------------------------------------------


@pytest.mark.parametrize("rule", ["step", "reach"])
def test_trellis14_classification(trellis14, rule):
    c = classify_around(trellis14, "a", rule)
    names = trellis14.names
    assert names(c.below) == ("0", "x2", "x3")
    assert names(c.ia1) == ("x1",)
    assert names(c.ia2) == ("x7",)
    assert names(c.ia3) == ("x4", "x5")
    assert names(c.n_i) == ("x2", "x3")
    assert names(c.m_i) == ("x6",)
    assert c.n_of_a == () and c.m_of_a == ()
    assert c.a_in_k


def test_chain_middle_classification(chain3):
    c = classify_around(chain3, "m")
    assert c.incomparable == c.ia1 == c.ia2 == c.ia3 == ()
    assert c.n_i == c.m_i == c.n_of_a == c.m_of_a == ()
    assert c.a_in_k


def test_diamond_has_no_dashed_edges(diamond):
    c = classify_around(diamond, "p")
    assert diamond.names(c.ia3) == ("q",)
    assert c.ia1 == c.ia2 == c.n_of_a == c.m_of_a == ()


def test_step_rule_separates_long_chains(n_witness):
    P = n_witness
    step = classify_around(P, "a", "step")
    assert P.names(step.ia1) == ("y",) and P.names(step.ia3) == ("x",)
    assert P.names(step.n_of_a) == ("x",)
    assert [P.names(w) for w in step.n_witnesses] == [("x", "y")]
    reach = classify_around(P, "a", "reach")
    assert P.names(reach.ia1) == ("x", "y") and reach.n_of_a == ()


def test_dual_fixture_lands_in_m(m_witness):
    P = m_witness
    c = classify_around(P, "a")
    assert P.names(c.ia2) == ("y",) and P.names(c.m_of_a) == ("x",)
    assert [P.names(w) for w in c.m_witnesses] == [("x", "y")]


def test_zero_on_a_cycle_is_rejected():
    # a ◁ b ◁ c ◁ d ◁ a with a ∥ c: c is reached from a and reaches a
    Q = build_psoset(
        ["0", "a", "b", "c", "d", "1"],
        [("0", x) for x in "abcd"] + [("0", "1")] + [(x, "1") for x in "abcd"]
        + [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("b", "d")],
    )
    B = as_bounded_trellis(Q)
    assert B.index("a") in B.cycle_members()
    with pytest.raises(ClassificationError) as info:
        classify_around(B, "a")
    assert B.names(info.value.overlap) == ("c",)


@pytest.mark.parametrize("n", SIZES)
def test_partition_and_subset_invariants(n):
    for B in BY_SIZE[n]:
        cycles = set(B.cycle_members())
        middle = set(transitivity_report(B).middle)
        for rule in ("step", "reach"):
            for a in range(B.n):
                try:
                    c = classify_around(B, a, rule)
                except ClassificationError:
                    assert a in cycles
                    continue
                parts = [set(c.ia1), set(c.ia2), set(c.ia3)]
                assert set().union(*parts) == set(c.incomparable)
                assert sum(map(len, parts)) == len(c.incomparable)
                assert set(c.n_of_a) <= parts[2] and set(c.m_of_a) <= parts[2]
                inner_below = set(B.interval(B.bottom, a, open_lo=True, open_hi=True)) if a != B.bottom else set()
                inner_above = set(B.interval(a, B.top, open_lo=True, open_hi=True)) if a != B.top else set()
                assert set(c.n_i) <= inner_below and set(c.m_i) <= inner_above
                if c.a_in_k:
                    assert a in middle and a not in cycles


@pytest.mark.parametrize("n", SIZES)
def test_step_dashed_sets_refine_reach_dashed_sets(n):
    for B in BY_SIZE[n]:
        for a in range(B.n):
            try:
                step, reach = classify_around(B, a, "step"), classify_around(B, a, "reach")
            except ClassificationError:
                continue
            assert set(step.ia1) <= set(reach.ia1) and set(step.ia2) <= set(reach.ia2)
            # telling the rules apart takes a chain with two inner steps
            if B.n <= 5:
                assert (step.ia1, step.ia2, step.ia3) == (reach.ia1, reach.ia2, reach.ia3)
            # under the chain rule N(a) and M(a) are always empty
            assert reach.n_of_a == () and reach.m_of_a == ()
