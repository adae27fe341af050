"""The ten acceptance criteria, each timed against its budget.

Every criterion prints one line, "PASS criterion N: ..." or "FAIL criterion N: ...",
and the lines are repeated in the pytest terminal summary. Run this file
directly to see only those lines.
"""

import random
import sys
import time

import pytest

import oracles
from catstar import fixtures as fx
from catstar.category import (
    check_axioms,
    functor_category,
    is_isomorphic,
    opposite,
    product,
    terminal_category,
)
from catstar.corpus import bundled_corpora, run_corpus, run_faults
from catstar.fibrations import (
    build_module_fibration,
    cartesian_lifts,
    check_abelian_over_base,
    check_additive_over_base,
    is_cartesian,
    is_fibration,
    lifts_unique_up_to_vertical_iso,
)
from catstar.filtered import cone_problems, finite_subsystem_cone, is_filtered, subsystems
from catstar.homological import STRATEGIES, derived_functor, functor_exactness, hom_from, hom_into, is_injective
from catstar.hyper import eval_on_window, increasing_certificate, limit_correspondence, make_internal, residue_tower
from catstar.limits import colimit, limit
from catstar.logic import ForallIn, alpha_rename, desugar, evaluate, substitute
from catstar.logic.generate import random_statements
from catstar.logic.syntax import depth
from catstar.logic.values import SSet
from catstar.modules import ModuleCategory
from catstar.rings import get_ring
from generators import random_diagrams
from mutants import bundled_fixtures, mutated_variants


class Criterion:
    def __init__(self, number, budget):
        self.number = number
        self.budget = budget
        self.notes = []
        self.failures = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)
        return ok

    def note(self, text):
        self.notes.append(text)


def run_criterion(number, budget, body, lines=None):
    c = Criterion(number, budget)
    start = time.perf_counter()
    try:
        body(c)
    except Exception as exc:  # a crash is a failure of the criterion, reported like any other
        c.failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed >= budget:
        c.failures.append(f"took {elapsed:.1f}s, budget {budget}s")
    status = "FAIL" if c.failures else "PASS"
    detail = "; ".join(c.failures[:3]) if c.failures else ", ".join(c.notes)
    limit_text = f" < {budget}s" if budget is not None else ""
    line = f"{status} criterion {number}: {detail} ({elapsed:.2f}s{limit_text})"
    print(line)
    if lines is not None:
        lines.append(line)
    return c


# -- 1. category axioms -------------------------------------------------------------------------


def axiom_suite(c):
    fixtures = bundled_fixtures()
    for name, cat in fixtures.items():
        c.check(check_axioms(cat).ok, f"fixture {name} fails")
    mutants = mutated_variants()
    c.check(len(mutants) == 20, f"{len(mutants)} mutants")
    named = 0
    for desc, cat, clause in mutants:
        rep = check_axioms(cat)
        if c.check(not rep.ok and clause in rep.clauses, f"mutant {desc} not caught as {clause}"):
            named += 1
    c.note(f"{len(fixtures)} fixtures pass, {named}/{len(mutants)} mutants name their clause")


# -- 2. constructor coherence ---------------------------------------------------------------------


def constructor_suite(c):
    rng = random.Random(2)
    cats = list(bundled_fixtures().values()) + [fx.random_small_category(rng, 12) for _ in range(30)]
    for cat in cats:
        twice = opposite(opposite(cat))
        c.check(twice == cat and twice.comp == cat.comp, f"opposite not an involution on {cat.name}")
    small = cats[:5] + cats[6:16]
    pairs = 0
    for a in small:
        for b in small:
            if len(a.morphisms) * len(b.morphisms) <= 400:
                c.check(len(product(a, b).morphisms) == len(a.morphisms) * len(b.morphisms), "product count")
                pairs += 1
    one = terminal_category()
    for cat in cats[:6]:
        c.check(is_isomorphic(functor_category(one, cat), cat), f"Funct(1, {cat.name}) not isomorphic")
    arrow = fx.walking_arrow()
    n = len(functor_category(arrow, arrow).objects)
    c.check(n == 3, f"Funct(2,2) has {n} objects")
    c.note(f"involution on {len(cats)} categories, {pairs} products, Funct(1,D) = D, Funct(2,2) has {n} objects")


# -- 3. limits against the cone oracle -----------------------------------------------------------------


def limit_oracle_suite(c):
    diagrams = random_diagrams(1, 200)
    found = 0
    for d in diagrams:
        c.check(len(d.source.morphisms) <= 6 and len(d.target.morphisms) <= 20, "diagram outside the size bounds")
        for dual, res in ((False, limit(d)), (True, colimit(d))):
            universal = oracles.universal_cones(d, dual=dual)
            ok = (res is None and not universal) or (res is not None and (res.apex, res.cone.legs) in universal)
            c.check(ok, f"{'colimit' if dual else 'limit'} disagrees with the oracle")
            found += res is not None
    c.note(f"{len(diagrams)} diagrams, {found} of {2 * len(diagrams)} limits and colimits exist, all match")


# -- 4. cones over finite subsystems ------------------------------------------------------------------------


def subsystem_cone_suite(c):
    rng = random.Random(4)
    checked = 0
    for _ in range(100):
        cat = fx.random_cofiltered_poset(rng, rng.randint(1, 8))
        c.check(is_filtered(cat, "cofiltered").ok, "generated poset is not cofiltered")
        for J in subsystems(cat, 5):
            cone = finite_subsystem_cone(cat, J)
            c.check(not cone_problems(cat, J, cone), "a cone does not commute")
            checked += 1
    c.note(f"100 posets, {checked} subsystems, every cone commutes")


# -- 5. transfer corpus ---------------------------------------------------------------------------------------

# label prefixes each part of the corpus must reach
COVERAGE = {
    "category_axioms": [".iv", ".v"],
    "morphisms": ["ob.", "mor.", "comp.", "iso.", "mono.", "epi.", "ob.image", "hom."],
    "a10": ["ii.", "iii.", "iv.", "v.", "vi.", "vii.", "x."],
}


def transfer_suite(c):
    total = agree = 0
    faults = 0
    for corpus in bundled_corpora():
        results = run_corpus(corpus)
        total += len(results)
        agree += sum(r.agree for r in results)
        labels = [s.label for s in corpus.statements]
        for key in COVERAGE.get(corpus.name, []):
            c.check(any(key in lab if key.startswith(".") else lab.startswith(key) for lab in labels),
                    f"{corpus.name} has no statement for {key}")
        for desc, res in run_faults(corpus):
            faults += 1
            c.check(any(not r.agree for r in res), f"fault {desc} in {corpus.name} produces no disagreement")
    c.check(total >= 30, f"only {total} statements")
    c.check(agree == total, f"{total - agree} disagreements")
    c.check(faults >= 3, f"only {faults} fault stars")
    c.note(f"{agree}/{total} statements agree, {faults} fault stars each disagree")


# -- 6. reduced-power model ---------------------------------------------------------------------------------------


def reduced_power_suite(c):
    P = make_internal("nth_prime")
    primes = oracles.sieve(8000)
    c.check(len(primes) >= 1000, "sieve too short")
    c.check(P.components(1000) == primes[:1000], "nth_prime differs from the sieve")
    tower = residue_tower(P, 1000)
    c.check(tower.verdict.kind == "True" and tower.verdict.certified, f"is_field verdict {tower.verdict.kind}")
    c.check(all(tower.field_flags), "a component is not a field")
    omega = make_internal("identity").with_certificate(increasing_certificate())
    els = {"P": P, "omega": omega}
    statements = ["is_field(R)", "is_prime(P)", "is_even(P)", "is_even(omega)", "lt(3, omega)", "omega = 5"]
    for text in statements:
        kinds = []
        for K in (16, 64, 256, 1000):
            if text == "is_field(R)":
                kinds.append(residue_tower(P, K).verdict.kind)
            else:
                kinds.append(eval_on_window(text, els, K).kind)
        decided = {k for k in kinds if k != "Undecided"}
        c.check(len(decided) <= 1, f"{text} flips between {decided}")
        first = next((i for i, k in enumerate(kinds) if k != "Undecided"), len(kinds))
        c.check(all(k != "Undecided" for k in kinds[first:]), f"{text} falls back to Undecided")
    c.note("is_field(Z/PZ) True and certified at K=1000, primes match the sieve, verdicts monotone over K")


# -- 7. limit correspondence ----------------------------------------------------------------------------------------


def correspondence_suite(c):
    for K in range(2, 9):
        rep = limit_correspondence(2, 2, K)
        zero_only = len(rep.families) == 1 and set(rep.families[0].values()) == {0}
        c.check(zero_only, f"K={K}: limit has {len(rep.families)} families")
        c.check(len(rep.classes) == 1 and rep.zero_class == 0, f"K={K}: {len(rep.classes)} classes")
        c.check(rep.bijective and rep.legs_commute, f"K={K}: correspondence fails")
    c.note("lim Hom(Z/2, Z/2^n) = 0 and one zero class for K = 2..8")


# -- 8. homological suite -------------------------------------------------------------------------------------------------


def homological_suite(c):
    big = ModuleCategory(get_ring("Z4"), 16)
    Z2 = big["Z2"]
    for i in range(4):
        sizes = {}
        for s in STRATEGIES:
            v = derived_functor(hom_from(Z2), big, Z2, i, s)
            sizes[s] = v.size
            c.check(v.value is big["Z2"], f"Ext^{i} via {s} is {v.value.name}")
        c.check(set(sizes.values()) == {oracles.ext_z4_z2_z2(i)} == {2}, f"Ext^{i} sizes {sizes}")
    small = ModuleCategory(get_ring("Z4"), 4)
    for I in small.objects:
        inj = bool(is_injective(small, I))
        c.check(inj == oracles.hom_into_is_exact(small.objects, I), f"{I.name}: injectivity against the oracle")
        c.check(inj == (functor_exactness(hom_into(I), small).kind == "exact"), f"{I.name}: hom(-, I) exactness")
    c.note("Ext^i(Z2, Z2) = Z2 for i = 0..3 by two resolutions, injective iff hom-exact on 4 objects")


# -- 9. fibration suite ----------------------------------------------------------------------------------------------------


def fibration_suite(c):
    fib = build_module_fibration([get_ring("F2"), get_ring("Z4")], 4)
    c.check(is_fibration(fib).ok, "not a fibration")
    c.check(check_additive_over_base(fib).ok, "not additive over the base")
    c.check(check_abelian_over_base(fib).ok, "not abelian over the base")
    p = fib.projection.action
    cartesian = 0
    for alpha in fib.total.sorted_morphisms:
        mine = bool(is_cartesian(fib, alpha))
        c.check(mine == oracles.is_cartesian(fib.total, fib.base, p, alpha), f"is_cartesian wrong on {alpha}")
        cartesian += mine
    pairs = 0
    for beta in fib.base.sorted_morphisms:
        for Y in fib.objects_over(fib.base.tgt[beta]):
            c.check(bool(cartesian_lifts(fib, beta, Y)), f"no lift of {beta} to {Y}")
            c.check(lifts_unique_up_to_vertical_iso(fib, beta, Y), f"lifts of {beta} to {Y} not unique")
            pairs += 1
    c.note(f"{len(fib.total.morphisms)} morphisms match the oracle ({cartesian} cartesian), {pairs} lifts unique")


# -- 10. logic evaluator ---------------------------------------------------------------------------------------------------------


def logic_suite(c):
    corpus = random_statements(seed=10, count=500, max_depth=4, max_rank=3)
    substituted = 0
    for phi in corpus:
        c.check(depth(phi) <= 4, "statement deeper than 4")
        value = evaluate(phi)
        c.check(value == oracles.truth(phi), "eval disagrees with the oracle")
        c.check(evaluate(alpha_rename(phi)) == value, "alpha renaming changes truth")
        core = desugar(phi)
        if isinstance(core, ForallIn):
            bound = oracles.term_value(core.bound, {})
            if isinstance(bound, SSet):
                for tau in bound.elements:
                    lhs = evaluate(substitute(core.body, {core.var: tau}))
                    c.check(lhs == oracles.truth(core.body, {core.var: tau}), "substitution lemma fails")
                    substituted += 1
    c.check(substituted > 0, "no substitution instances")
    c.note(f"500 statements match the oracle, alpha renaming holds, {substituted} substitution instances")


CRITERIA = [
    (1, 5, axiom_suite),
    (2, 5, constructor_suite),
    (3, 60, limit_oracle_suite),
    (4, 60, subsystem_cone_suite),
    (5, None, transfer_suite),
    (6, 30, reduced_power_suite),
    (7, None, correspondence_suite),
    (8, 30, homological_suite),
    (9, 60, fibration_suite),
    (10, 30, logic_suite),
]


@pytest.mark.parametrize("number,budget,body", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, budget, body, request):
    c = run_criterion(number, budget, body, request.config.acceptance_lines)
    assert not c.failures, c.failures


if __name__ == "__main__":
    failed = [n for n, budget, body in CRITERIA if run_criterion(n, budget, body).failures]
    sys.exit(1 if failed else 0)
