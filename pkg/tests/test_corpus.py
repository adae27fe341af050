import pytest

import oracles
from catstar import fixtures as fx
from catstar.corpus import (
    bundled_corpora,
    bundled_corpus_paths,
    category_values,
    load_corpus,
    parse_corpus,
    run_corpus,
    run_faults,
)
from catstar.formats import FormatError
from catstar.logic import alpha_rename, evaluate, identity_star
from catstar.logic.values import Atom, apply, make_pair


def all_statements():
    return [st for c in bundled_corpora() for st in c.statements]


def test_bundled_files_present():
    names = [p.stem for p in bundled_corpus_paths()]
    assert names == ["a10", "category_axioms", "morphisms"]


def test_corpus_size_and_agreement():
    total = 0
    for corpus in bundled_corpora():
        results = run_corpus(corpus)
        assert all(r.agree for r in results), [r.label for r in results if not r.agree]
        total += len(results)
    assert total >= 30


def test_every_statement_is_true():
    for st in all_statements():
        assert evaluate(st.formula), st.label


def test_faults_disagree():
    faults = [(desc, results) for corpus in bundled_corpora() for desc, results in run_faults(corpus)]
    assert len(faults) >= 3
    for desc, results in faults:
        bad = [r for r in results if not r.agree]
        assert bad, desc
        assert bad[0].check.witness() is not None


def test_identity_star_agrees_on_corpus():
    for corpus in bundled_corpora():
        assert all(r.agree for r in run_corpus(corpus, identity_star()))


def test_alpha_renaming_on_corpus():
    for st in all_statements():
        assert evaluate(alpha_rename(st.formula)) == evaluate(st.formula)


def test_corpus_matches_oracle():
    for st in all_statements():
        assert evaluate(st.formula) == oracles.truth(st.formula), st.label


def test_category_encoding():
    cat = fx.walking_arrow()
    vals = category_values(cat)
    assert Atom("f") in vals["M"].elements and len(vals["M"]) == 3
    assert apply(vals["s"], Atom("f")) == Atom("id_a")
    assert apply(vals["t"], Atom("f")) == Atom("id_b")
    assert apply(vals["c"], make_pair(Atom("f"), Atom("id_a"))) == Atom("f")
    assert len(vals["Ob"]) == 2
    hom_ab = apply(vals["hom"], make_pair(Atom("id_a"), Atom("id_b")))
    assert hom_ab.elements == {Atom("f")}


def test_parse_corpus_text():
    corpus = parse_corpus(
        "category C = walking_arrow\n"
        "let g = C[f]\n"
        "let A = {b0, b1}\n"
        "assert one: g in C_M\n"
        "assert two: forall X in A : X in A\n"
        "fault enlarge A\n"
    )
    assert [s.label for s in corpus.statements] == ["one", "two"]
    assert all(r.agree for r in run_corpus(corpus))
    assert len(corpus.faults) == 1


@pytest.mark.parametrize(
    "text",
    [
        "category C = nosuch",
        "let g = C[f]",
        "assert missing colon",
        "bogus line",
        "let A = {b0",
        "fault enlarge b0",
        "fault sideways",
    ],
)
def test_corpus_errors(text):
    with pytest.raises(FormatError):
        parse_corpus("let b0 = b0\n" + text)


def test_load_missing_file(tmp_path):
    with pytest.raises(FormatError):
        load_corpus(tmp_path / "none.phi")
