"""Fixture categories and single-fault mutations of them, each tagged with the clause it breaks."""

from __future__ import annotations

from catstar import fixtures as fx
from catstar.category import check_axioms, make_category
from catstar.fibrations import build_module_fibration
from catstar.rings import get_ring


def bundled_fixtures() -> dict:
    return {
        "walking arrow": fx.walking_arrow(),
        "Div(12)": fx.divisibility(12),
        "terminal": fx.terminal(),
        "Z/2 monoid": fx.z2_monoid(),
        "FinSet(2)": fx.truncated_finset(),
        "module fibration": build_module_fibration([get_ring("F2"), get_ring("Z4")], 4).total,
    }


def _rebuild(cat, src=None, tgt=None, comp=None):
    return make_category(cat.morphisms, src or cat.src, tgt or cat.tgt, cat.comp if comp is None else comp)


def _arrows(cat):
    """Non-identity morphisms in identifier order."""
    return [f for f in cat.sorted_morphisms if not cat.is_object(f)]


def drop_unit(cat):
    f = (_arrows(cat) or list(cat.sorted_morphisms))[0]
    return _rebuild(cat, comp=cat.comp - {(f, cat.src[f], f)}), "(iv)"


def source_not_object(cat):
    f, g = _arrows(cat)[:2] if len(_arrows(cat)) > 1 else (_arrows(cat)[0], _arrows(cat)[0])
    return _rebuild(cat, src={**cat.src, f: g}), "(ii)(1)"


def target_not_object(cat):
    arrows = _arrows(cat)
    f, g = arrows[-1], arrows[0]
    return _rebuild(cat, tgt={**cat.tgt, f: g}), "(ii)(2)"


def wrong_endpoints(cat):
    """Retarget the unit triple of an arrow to a morphism with another target."""
    f = _arrows(cat)[0]
    other = next(h for h in cat.sorted_morphisms if cat.tgt[h] != cat.tgt[f])
    comp = (cat.comp - {(cat.tgt[f], f, f)}) | {(cat.tgt[f], f, other)}
    return _rebuild(cat, comp=comp), "(iii)(1)"


def missing_composite(cat):
    """Remove a composite of two non-identities."""
    t = next(t for t in sorted(cat.comp) if not cat.is_object(t[0]) and not cat.is_object(t[1]))
    return _rebuild(cat, comp=cat.comp - {t}), "(iii)(2)"


def second_composite(cat):
    """Give a composable pair a second, parallel result."""
    for f, g, h in sorted(cat.comp):
        for h2 in cat.hom(cat.src[h], cat.tgt[h]):
            if h2 != h:
                return _rebuild(cat, comp=cat.comp | {(f, g, h2)}), "(iii)(2)"
    raise ValueError("no parallel morphisms")


def non_associative(cat):
    """Move one non-unit composite to a parallel morphism, keeping composites unique."""
    for f, g, h in sorted(cat.comp):
        if cat.is_object(f) or cat.is_object(g):
            continue
        for h2 in cat.hom(cat.src[h], cat.tgt[h]):
            if h2 == h:
                continue
            mutated = _rebuild(cat, comp=(cat.comp - {(f, g, h)}) | {(f, g, h2)})
            if "(v)" in check_axioms(mutated).clauses:
                return mutated, "(v)"
    raise ValueError("no associativity fault found")


def mutated_variants() -> list:
    """Twenty (description, category, expected clause) triples."""
    fix = bundled_fixtures()
    plan = [
        ("walking arrow", [drop_unit, source_not_object, target_not_object, wrong_endpoints]),
        ("Div(12)", [drop_unit, source_not_object, target_not_object, wrong_endpoints, missing_composite]),
        ("terminal", [drop_unit]),
        ("Z/2 monoid", [drop_unit, missing_composite]),
        ("FinSet(2)", [drop_unit, wrong_endpoints, missing_composite, second_composite, non_associative]),
        ("module fibration", [drop_unit, wrong_endpoints, second_composite]),
    ]
    out = []
    for name, mutations in plan:
        for mutate in mutations:
            cat, clause = mutate(fix[name])
            out.append((f"{name}: {mutate.__name__}", cat, clause))
    return out
