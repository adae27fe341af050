import itertools
import random

import pytest

from catstar import fixtures as fx
from catstar.category import CategoryError, FunctorTable, empty_category, functors, identity_functor, opposite
from catstar.filtered import (
    ConeOverSubsystem,
    FiniteSubsystem,
    NotCofilteredError,
    SetDiagram,
    compatible_families,
    cone_problems,
    finite_subsystem_cone,
    hom_diagram,
    is_filtered,
    limit_via_cone,
    subsystems,
    whole,
)
from catstar.limits import limit


def tower(stages=3):
    """Stages 1..n with one arrow m -> k whenever m >= k."""
    return fx.poset_category([str(k) for k in range(1, stages + 1)], lambda a, b: int(a) >= int(b), sep=">")


# -- filteredness -------------------------------------------------------------------


def test_div12_is_filtered():
    assert is_filtered(fx.divisibility(12)).ok


def test_div12_without_top_fails_on_4_and_6():
    rep = is_filtered(fx.divisibility(12, exclude=[12]))
    assert not rep.ok
    assert rep.counterexample == ("4", "6")


def test_terminal_is_filtered_both_ways():
    cat = fx.terminal()
    assert is_filtered(cat).ok and is_filtered(cat, "cofiltered").ok


def test_empty_and_unequalized_pairs_fail():
    assert is_filtered(empty_category()).reason == "empty"
    # Z/2 has a parallel pair (id, s) that nothing coequalizes
    assert not is_filtered(fx.z2_monoid()).ok


def test_refinement_poset_is_cofiltered():
    assert is_filtered(fx.refinement_poset(), "cofiltered").ok
    assert is_filtered(fx.refinement_poset((0, 1, 2, 3)), "cofiltered").ok


def test_unknown_direction():
    with pytest.raises(ValueError):
        is_filtered(fx.terminal(), "sideways")


# -- the subsystem cone -----------------------------------------------------------------


def test_empty_subsystem_takes_least_object():
    cat = opposite(fx.divisibility(12))
    cone = finite_subsystem_cone(cat, FiniteSubsystem())
    assert cone.apex == cat.objects[0] and cone.projections == {}


def test_single_object_uses_identity():
    cat = opposite(fx.divisibility(12))
    cone = finite_subsystem_cone(cat, FiniteSubsystem(("4",)))
    assert cone.apex == "4" and cone.projections == {"4": "4"}


def test_lcm_is_the_only_apex():
    cat = opposite(fx.divisibility(12))
    cone = finite_subsystem_cone(cat, FiniteSubsystem(("4", "6")))
    assert cone.apex == "12"
    assert cone.projections == {"4": "4|12", "6": "6|12"}
    assert cone_problems(cat, FiniteSubsystem(("4", "6")), cone) == []


def test_not_cofiltered_raises():
    cat = fx.divisibility(12)  # 1 maps to everything, so the scan over objects stops there
    cone = finite_subsystem_cone(cat, FiniteSubsystem(("4", "6")))
    assert cone.apex == "1"
    with pytest.raises(NotCofilteredError):
        finite_subsystem_cone(fx.discrete(2), FiniteSubsystem(("x0", "x1")))


def test_bad_subsystem_rejected():
    with pytest.raises(CategoryError):
        finite_subsystem_cone(fx.divisibility(12), FiniteSubsystem(("4",), ("2|4",)))


def test_cones_commute_on_random_cofiltered_posets():
    rng = random.Random(3)
    for _ in range(20):
        cat = fx.random_cofiltered_poset(rng, rng.randint(1, 6))
        assert is_filtered(cat, "cofiltered").ok
        for J in subsystems(cat, 4):
            cone = finite_subsystem_cone(cat, J)
            assert cone_problems(cat, J, cone) == []


def test_unequalized_pair_raises():
    # in Z/2 nothing equalizes id and s
    cat = fx.z2_monoid()
    with pytest.raises(NotCofilteredError):
        finite_subsystem_cone(cat, FiniteSubsystem(("e",), ("s",)))


def test_monotone_restriction():
    """A cone over a larger subsystem, restricted, is a cone over the smaller one."""
    cat = fx.refinement_poset()
    subs = list(subsystems(cat, 4))
    for J, J2 in itertools.product(subs[:40], subs[:40]):
        if not (set(J.objects) <= set(J2.objects) and set(J.morphisms) <= set(J2.morphisms)):
            continue
        big = finite_subsystem_cone(cat, J2)
        small = ConeOverSubsystem(big.apex, {j: big.projections[j] for j in J.objects})
        assert cone_problems(cat, J, small) == []
        small_cone = finite_subsystem_cone(cat, J)
        for q in cat.hom(big.apex, small_cone.apex):
            moved = small_cone.then(cat, q)
            assert cone_problems(cat, J, moved) == []


def test_padding_uses_identities():
    cat = opposite(fx.divisibility(12))
    cone = finite_subsystem_cone(cat, FiniteSubsystem(("4",)))
    padded = cone.padded(cat)
    assert padded["6"] == "6" and padded["4"] == "4"


# -- compatible families -------------------------------------------------------------------


def test_constant_diagram_has_two_families():
    I = tower(3)
    d = SetDiagram(I, {i: (0, 1) for i in I.objects}, {f: {0: 0, 1: 1} for f in I.morphisms})
    assert d.problems() == []
    assert len(compatible_families(d)) == 2


def test_swap_tower_has_two_families():
    I = tower(3)
    swap = {0: 1, 1: 0}
    maps = {}
    for f in I.morphisms:
        a, b = int(I.src[f]), int(I.tgt[f])
        maps[f] = swap if (a - b) % 2 else {0: 0, 1: 1}
    d = SetDiagram(I, {i: (0, 1) for i in I.objects}, maps)
    assert d.problems() == []
    fams = compatible_families(d)
    assert len(fams) == 2
    assert {tuple(f[i] for i in ("1", "2", "3")) for f in fams} == {(0, 1, 0), (1, 0, 1)}


def test_non_surjective_stage_loses_families():
    I = tower(2)
    values = {"1": (0, 1), "2": (0,)}
    maps = {"1": {0: 0, 1: 1}, "2": {0: 0}, "2>1": {0: 0}}
    fams = compatible_families(SetDiagram(I, values, maps))
    assert fams == [{"1": 0, "2": 0}]
    assert len(fams) < len(values["1"])


def test_families_match_limit_module():
    """Compatible families of hom(x, G-) are the cones with apex x; limits count them."""
    I = opposite(fx.divisibility(12))
    C = opposite(fx.divisibility(12))
    G = identity_functor(I)
    for x in C.objects:
        fams = compatible_families(hom_diagram(G, x))
        L = limit(G)
        assert len(fams) == len(C.hom(x, L.apex))


# -- the limit seen through one cone ------------------------------------------------------------


def div_op_diagrams():
    I = opposite(fx.divisibility(12))
    target = fx.truncated_finset()
    out = []
    for action in itertools.islice(functors(I, target), 0, 400, 37):
        out.append(FunctorTable(I, target, action))
    return I, out


def test_terminal_index_cone_gives_hom_classes():
    I = tower(3)  # "3" maps to every stage
    G = identity_functor(I)
    cone = finite_subsystem_cone(I, whole(I))
    assert cone.apex == "3"
    for x in I.objects:
        rep = limit_via_cone(G, x, cone)
        assert rep.bijective and rep.legs_commute
        assert len(rep.families) == len(I.hom(x, "3"))


def test_div_op_bijection():
    I, diagrams = div_op_diagrams()
    assert diagrams
    cone = finite_subsystem_cone(I, whole(I))
    assert cone.apex == "12"
    for G in diagrams:
        for x in G.target.objects:
            rep = limit_via_cone(G, x, cone)
            assert rep.bijective and rep.legs_commute


def two_bottoms():
    """a and b are isomorphic and both map to c, so either can be a full cone apex."""
    return fx.from_arrows(
        ["a", "b", "c"],
        {"u": ("a", "b"), "v": ("b", "a"), "p": ("a", "c"), "q": ("b", "c")},
        [("v", "u", "a"), ("u", "v", "b"), ("q", "u", "p"), ("p", "v", "q")],
    )


def test_quotient_size_independent_of_cone():
    I = two_bottoms()
    assert is_filtered(I, "cofiltered").ok
    at_a = ConeOverSubsystem("a", {"a": "a", "b": "u", "c": "p"})
    at_b = ConeOverSubsystem("b", {"a": "v", "b": "b", "c": "q"})
    for cone in (at_a, at_b):
        assert cone_problems(I, whole(I), cone) == []
    target = fx.truncated_finset()
    seen = 0
    for action in itertools.islice(functors(I, target), 0, 300, 7):
        G = FunctorTable(I, target, action)
        for x in target.objects:
            ra, rb = limit_via_cone(G, x, at_a), limit_via_cone(G, x, at_b)
            assert len(ra.classes) == len(rb.classes) == len(ra.families)
            seen += 1
    assert seen > 0


def test_distinct_families_stay_distinct():
    I, diagrams = div_op_diagrams()
    cone = finite_subsystem_cone(I, whole(I))
    for G in diagrams:
        for x in G.target.objects:
            rep = limit_via_cone(G, x, cone)
            assert len(set(rep.assignment.values())) == len(rep.families)
