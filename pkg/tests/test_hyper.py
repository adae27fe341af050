import pytest

import oracles
from catstar import fixtures as fx
from catstar.category import opposite
from catstar.hyper import (
    Certificate,
    CertificateError,
    TowerDiagram,
    WindowError,
    cyclic_homs,
    eval_on_window,
    factorial_cocone_commutes,
    factorial_inclusions,
    full_exhaustion,
    growing_exhaustion,
    hyper_cone,
    increasing_certificate,
    limit_correspondence,
    make_internal,
    nth_prime,
    power_tower,
    residue_tower,
    star_const,
)
from catstar.logic import parse_formula
from catstar.logic.values import Atom

OMEGA = make_internal("identity")
P = make_internal("nth_prime")


def stmt(text, names):
    return parse_formula(text, {x: Atom(f"@{x}") for x in names})


# -- internal elements ---------------------------------------------------------------


def test_star_const_is_constant():
    three = star_const(3)
    assert three.is_constant
    assert three.components(5) == [3] * 5


def test_primes_match_sieve():
    assert P.components(5) == [2, 3, 5, 7, 11]
    assert [nth_prime(k) for k in range(1000)] == oracles.sieve(8000)[:1000]


def test_builders():
    assert OMEGA.components(4) == [0, 1, 2, 3]
    assert make_internal("factorial").components(5) == [1, 1, 2, 6, 24]
    with pytest.raises(ValueError):
        make_internal("custom")
    with pytest.raises(ValueError):
        make_internal("nosuch")


def test_undefined_index():
    half = make_internal("custom", "h", generator=lambda n: 1 // n, defined_from=1)
    with pytest.raises(WindowError):
        half(0)
    with pytest.raises(WindowError):
        eval_on_window("h = h", {"h": half}, window=1)


# -- verdicts --------------------------------------------------------------------------


def test_reflexive_equality_is_certified():
    v = eval_on_window("omega = omega", {"omega": OMEGA}, 16)
    assert v.kind == "True" and v.certified


def test_standard_below_omega_needs_certificate():
    els = {"omega": OMEGA, "three": star_const(3, "three")}
    v = eval_on_window("lt(three, omega)", els, 10)
    assert v.kind == "Undecided" and not v.certified
    assert v.first(True) == 4 and v.count_false == 4
    els["omega"] = OMEGA.with_certificate(increasing_certificate())
    v2 = eval_on_window("lt(three, omega)", els, 10)
    assert v2.kind == "True" and v2.certified
    assert v2.truths == v.truths


def test_literal_numerals():
    omega = OMEGA.with_certificate(increasing_certificate())
    assert eval_on_window("lt(3, omega)", {"omega": omega}, 10).kind == "True"
    assert eval_on_window("lt(omega, 3)", {"omega": omega}, 10).kind == "False"
    assert eval_on_window("omega = 3", {"omega": omega}, 10).kind == "False"


def test_prime_is_odd_is_certified():
    v = eval_on_window("is_even(P)", {"P": P}, 64)
    assert v.kind == "False" and v.certified
    assert v.truths[0] and not any(v.truths[1:])


def test_prime_certificate():
    v = eval_on_window("is_prime(P)", {"P": P}, 100)
    assert v.kind == "True" and v.certified and all(v.truths)


def test_undecided_shows_both_truth_values():
    v = eval_on_window("is_even(omega)", {"omega": OMEGA}, 16)
    assert v.kind == "Undecided"
    assert v.count_true and v.count_false


def test_false_everywhere_without_certificate_is_undecided():
    v = eval_on_window("is_prime(omega)", {"omega": OMEGA}, 2)
    assert not any(v.truths) and v.kind == "Undecided"


def test_contradicted_certificate_raises():
    bad = make_internal(
        "custom", "q", generator=lambda n: n, certificates=[Certificate("formula", stmt("is_even(q)", ["q"]), 0, "wrong")]
    )
    with pytest.raises(CertificateError):
        eval_on_window("is_even(q)", {"q": bad}, 8)


def test_connectives_are_componentwise():
    els = {"omega": OMEGA, "P": P}
    a = eval_on_window("is_even(omega)", els, 32)
    b = eval_on_window("is_prime(omega)", els, 32)
    both = eval_on_window("(is_even(omega) and is_prime(omega))", els, 32)
    neg = eval_on_window("not is_even(omega)", els, 32)
    assert both.truths == tuple(x and y for x, y in zip(a.truths, b.truths))
    assert neg.truths == tuple(not x for x in a.truths)


@pytest.mark.parametrize(
    "text",
    ["is_even(P)", "is_prime(P)", "is_even(omega)", "omega = omega", "lt(3, omega)", "(is_prime(P) and not is_even(P))"],
)
def test_verdict_monotone_in_window(text):
    els = {"omega": OMEGA.with_certificate(increasing_certificate()), "P": P}
    kinds = [eval_on_window(text, els, K).kind for K in (16, 64, 256)]
    decided = [k for k in kinds if k != "Undecided"]
    assert len(set(decided)) <= 1
    if kinds[0] != "Undecided":
        assert len(set(kinds)) == 1


# -- residue towers ------------------------------------------------------------------------


def test_residue_field_along_primes():
    tower = residue_tower(P, 200)
    assert tower.verdict.kind == "True" and tower.verdict.certified
    assert all(tower.field_flags) and not tower.witnesses


def test_powers_of_two_are_not_fields():
    pow2 = make_internal("custom", "Q", generator=lambda n: 2 ** (n + 1))
    tower = residue_tower(pow2, 8)
    assert tower.field_flags[0] and not any(tower.field_flags[1:])
    assert tower.verdict.kind == "Undecided"
    for n, (a, b) in tower.witnesses.items():
        assert a and b and (a * b) % 2 ** (n + 1) == 0


def test_constant_six_is_certified_false():
    tower = residue_tower(star_const(6, "six"), 8)
    assert tower.verdict.kind == "False" and tower.verdict.certified
    assert {tuple(sorted(w)) for w in tower.witnesses.values()} == {(2, 3)}


# -- the hyper-cone -------------------------------------------------------------------------


def test_power_tower_cone_commutes():
    tower = power_tower(2, 8)
    cone = hyper_cone(tower, 8)
    assert cone.problems(tower) == []
    assert [cone.apex(n) for n in range(8)] == [str(n + 1) for n in range(8)]
    assert cone.projections["3"].defined_from == 2
    assert cone.projections["3"](5) == "6>3"


def test_terminal_index_cone_is_constant():
    cat = fx.terminal()
    tower = TowerDiagram(cat, full_exhaustion(cat))
    cone = hyper_cone(tower, 6)
    assert {cone.apex(n) for n in range(6)} == {cat.objects[0]}
    assert cone.problems(tower) == []


def test_div12_op_cone_stabilizes():
    cat = opposite(fx.divisibility(12))
    tower = TowerDiagram(cat, growing_exhaustion(cat))
    cone = hyper_cone(tower, 10)
    assert cone.problems(tower) == []
    assert all(cone.apex(n) == "12" for n in range(len(cat.objects) - 1, 10))


# -- limit correspondence -------------------------------------------------------------------------


def test_cyclic_homs():
    assert cyclic_homs(2, 8) == [0, 4]
    assert cyclic_homs(2, 8, "ring") == []
    assert cyclic_homs(4, 2, "ring") == [1]
    assert cyclic_homs(1, 4) == [0]
    with pytest.raises(ValueError):
        cyclic_homs(2, 4, "sideways")


@pytest.mark.parametrize("window", range(2, 9))
def test_z2_into_powers_collapses_to_zero(window):
    rep = limit_correspondence(2, 2, window)
    assert rep.families and all(set(f.values()) == {0} for f in rep.families)
    assert len(rep.families) == 1 and len(rep.classes) == 1
    assert rep.zero_class == 0 and rep.bijective and rep.legs_commute


def test_truncated_families_include_dying_ones():
    rep = limit_correspondence(2, 2, 6)
    assert rep.truncated_families == 2 and len(rep.families) == 1


def test_ring_maps_into_tower_are_empty():
    rep = limit_correspondence(2, 2, 5, kind="ring")
    assert rep.families == [] and rep.classes == [] and rep.bijective


def test_zero_object_gives_singleton():
    rep = limit_correspondence(1, 3, 5)
    assert len(rep.families) == 1 and rep.bijective


def test_short_window_rejected():
    with pytest.raises(WindowError):
        limit_correspondence(2, 2, 1)


# -- factorial apex ----------------------------------------------------------------------------


def test_factorial_inclusions():
    checks = factorial_inclusions(7)
    assert checks
    for c in checks:
        assert c.image_of_one == c.expected and c.injective and c.additive
    assert factorial_cocone_commutes(7)
