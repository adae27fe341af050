import json
import subprocess
import sys

import pytest

from catstar import fixtures as fx
from catstar.category import identity_functor, opposite
from catstar.cli import main
from catstar.fibrations import build_module_fibration, restrict_fibration
from catstar.formats import format_category, format_map, write_fibration
from catstar.limits import cospan_diagram, pair_diagram
from catstar.rings import get_ring


def run(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def div12(tmp_path):
    p = tmp_path / "div12.cat"
    p.write_text(format_category(fx.divisibility(12)))
    return p


def write_functor(tmp_path, F, stem):
    (tmp_path / f"{stem}_src.cat").write_text(format_category(F.source))
    (tmp_path / f"{stem}_tgt.cat").write_text(format_category(F.target))
    p = tmp_path / f"{stem}.map"
    p.write_text(format_map(F.action, {"source": f"{stem}_src.cat", "target": f"{stem}_tgt.cat"}))
    return p


# -- check -------------------------------------------------------------------------------------


def test_check_category_passes(capsys, div12):
    code, rep = run(capsys, "check", "--kind", "category", str(div12))
    assert code == 0 and rep["verdict"] == "pass"
    assert rep["schema"] == 1 and len(rep["inputs"][0]["sha256"]) == 64


def test_corrupted_comp_line_names_clause(capsys, tmp_path):
    text = format_category(fx.walking_arrow()).replace("comp f id_a = f\n", "")
    p = tmp_path / "bad.cat"
    p.write_text(text)
    code, rep = run(capsys, "check", str(p))
    assert code == 1
    assert "(iv)" in rep["results"][0]["clauses"]


def test_missing_file_exits_2(capsys, tmp_path):
    code, rep = run(capsys, "check", str(tmp_path / "nope.cat"))
    assert code == 2 and rep["error"]["code"] == "not-found"


def test_unparseable_file_exits_2(capsys, tmp_path):
    p = tmp_path / "junk.cat"
    p.write_text("obj a\nthis is not a line\n")
    code, rep = run(capsys, "check", str(p))
    assert code == 2 and rep["error"]["code"] == "parse-error"


def test_check_additive_and_abelian(capsys):
    assert run(capsys, "check", "--kind", "additive", "--ring", "Z4")[0] == 0
    code, rep = run(capsys, "check", "--kind", "abelian", "--ring", "F4", "--cap", "4")
    assert code == 0 and rep["objects"] == ["0", "Z2+Z2"]
    code, rep = run(capsys, "check", "--kind", "additive", "--ring", "Q")
    assert code == 2


def test_reports_are_deterministic(capsys, div12):
    first = run(capsys, "check", str(div12))
    second = run(capsys, "check", str(div12))
    assert first == second


def test_human_output_derives_from_report(capsys, div12):
    assert main(["check", str(div12)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("check: PASS")


# -- limits and adjunctions ------------------------------------------------------------------------


def test_limit_and_colimit(capsys, tmp_path):
    d = cospan_diagram(fx.divisibility(12), "4|12", "6|12")
    p = write_functor(tmp_path, d, "cospan")
    code, rep = run(capsys, "limit", str(p))
    assert code == 0 and rep["result"]["apex"] == "2"
    code, rep = run(capsys, "colimit", str(p))
    assert code == 0 and rep["result"]["apex"] == "12"


def test_missing_limit_exits_1(capsys, tmp_path):
    d = pair_diagram(fx.truncated_finset(), "01", "01")
    p = write_functor(tmp_path, d, "pair")
    code, rep = run(capsys, "limit", str(p))
    assert code == 1 and rep["result"] is None


def test_adjoint(capsys, tmp_path):
    I = identity_functor(fx.divisibility(12))
    F = write_functor(tmp_path, I, "F")
    code, rep = run(capsys, "adjoint", str(F), str(F))
    assert code == 0 and rep["adjunction"]["unit"]["4"] == "4"


def test_bad_functor_file(capsys, tmp_path):
    (tmp_path / "c.cat").write_text(format_category(fx.walking_arrow()))
    p = tmp_path / "bad.map"
    p.write_text("source c.cat\ntarget c.cat\nmap f -> id_a\n")
    code, rep = run(capsys, "limit", str(p))
    assert code == 2 and rep["error"]["code"] == "structural-error"


# -- cones ---------------------------------------------------------------------------------------------


def test_cone_over_subsystem(capsys, tmp_path):
    p = tmp_path / "div12op.cat"
    p.write_text(format_category(opposite(fx.divisibility(12))))
    s = tmp_path / "j.sub"
    s.write_text("objects: 4 6\n")
    code, rep = run(capsys, "cone", "--category", str(p), "--subsystem", str(s))
    assert code == 0 and rep["cone"]["apex"] == "12"
    assert rep["cone"]["projections"] == {"4": "4|12", "6": "6|12"}


def test_cone_not_cofiltered(capsys, tmp_path):
    p = tmp_path / "two.cat"
    p.write_text(format_category(fx.discrete(2)))
    code, rep = run(capsys, "cone", "--category", str(p))
    assert code == 1 and rep["cone"] is None and not rep["cofiltered"]


# -- derived functors ----------------------------------------------------------------------------------


def test_derive_ext(capsys):
    code, rep = run(capsys, "derive", "--ring", "Z4", "--functor", "hom(Z2,-)", "--object", "Z2", "--degree", "2")
    assert code == 0 and rep["value"] == "Z2" and rep["size"] == 2


def test_derive_without_injective_hull(capsys):
    code, rep = run(capsys, "derive", "--ring", "Z4", "--functor", "id", "--object", "Z2+Z2", "--degree", "1")
    assert code == 2 and rep["error"]["code"] == "structural-error"


# -- sequence model --------------------------------------------------------------------------------------


def test_hyper_eval_prime(capsys):
    code, rep = run(capsys, "hyper", "eval", "--builder", "nth_prime", "--formula", "is_prime(P)", "--window", "100")
    assert code == 0
    assert rep["result"]["kind"] == "True" and rep["result"]["certified"]


def test_hyper_eval_undecided(capsys):
    argv = ["hyper", "eval", "--builder", "identity", "--formula", "is_even(omega)", "--window", "16"]
    code, rep = run(capsys, *argv)
    assert code == 0 and rep["result"]["kind"] == "Undecided"
    assert run(capsys, *argv, "--require-decided")[0] == 1


def test_hyper_cone(capsys):
    code, rep = run(capsys, "hyper", "cone")
    assert code == 0 and rep["families"] == 1 and rep["classes"] == 1 and rep["zero_class"] == 0
    assert rep["window"] == 8


def test_hyper_formula_error(capsys):
    code, rep = run(capsys, "hyper", "eval", "--builder", "identity", "--formula", "forall X in :", "--window", "4")
    assert code == 2 and rep["error"]["code"] == "parse-error"


# -- transfer and corpus ---------------------------------------------------------------------------------


def test_transfer_bundled_fallback(capsys):
    code, rep = run(capsys, "transfer", "--corpus", "corpus/a10.phi")
    assert code == 0 and rep["agree"] == rep["statements"] == 20


def test_transfer_with_faults(capsys):
    code, rep = run(capsys, "transfer", "--corpus", "a10.phi", "--faults")
    assert code == 0 and all(f["disagreements"] > 0 for f in rep["faults"])


def test_corpus_all_bundled(capsys):
    code, rep = run(capsys, "corpus")
    assert code == 0 and rep["statements"] == rep["agree"] >= 30


def test_corpus_directory(capsys, tmp_path):
    assert run(capsys, "corpus", str(tmp_path))[0] == 2
    (tmp_path / "c.phi").write_text("let b0 = b0\nlet b1 = b1\nassert wrong: b0 = b1\n")
    code, rep = run(capsys, "corpus", str(tmp_path))
    assert code == 0  # a false statement still transfers, and there are no faults to run
    (tmp_path / "c.phi").write_text("assert undeclared: b0 = b1\n")
    code, rep = run(capsys, "corpus", str(tmp_path))
    assert code == 1 and "outside the domain" in rep["corpora"][0]["disagreements"][0]["error"]
    (tmp_path / "c.phi").unlink()
    (tmp_path / "bad.phi").write_text("assert broken: forall X in\n")
    assert run(capsys, "corpus", str(tmp_path))[0] == 2


# -- fibrations ---------------------------------------------------------------------------------------------


def test_fib_check(capsys, tmp_path):
    fib = build_module_fibration([get_ring("F2"), get_ring("Z4")], 4)
    F, E, p = write_fibration(fib.total, fib.base, fib.projection.action, tmp_path / "good")
    code, rep = run(capsys, "fib", "check", "--total", str(F), "--base", str(E), "--proj", str(p))
    assert code == 0 and rep["fibration"]
    code, _ = run(capsys, "check", "--kind", "fibration", "--total", str(F), "--base", str(E), "--proj", str(p))
    assert code == 0
    bad = restrict_fibration(fib, [X for X in fib.total.objects if X != "(Z4,Z2+Z2)"])
    F, E, p = write_fibration(bad.total, bad.base, bad.projection.action, tmp_path / "bad")
    code, rep = run(capsys, "fib", "check", "--total", str(F), "--base", str(E), "--proj", str(p))
    assert code == 1 and rep["witness"] == ["Z4>F2[0,1,0,1]", "(F2,Z2+Z2)"]


def test_console_script_runs():
    out = subprocess.run([sys.executable, "-m", "catstar.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "derive" in out.stdout
