import json
import subprocess
import sys
from fractions import Fraction

import dendrop as dp
from dendrop.cli import main
from dendrop.documents import emit_document, parse_document
from helpers import F3, Q, diag, n2

ONE = Fraction(1)
ZERO = Fraction(0)


def write_doc(tmp_path, name, obj, field=None):
    path = tmp_path / name
    path.write_bytes(emit_document(obj, field=field))
    return str(path)


def weight0_diagonal_operator():
    return dp.rb_as_o_operator(
        dp.RotaBaxterOperator(n2(), diag(Q, Fraction(1, 4), Fraction(1, 2)), ZERO))


# -- validate -------------------------------------------------------------------------

def test_validate_passing_algebra(tmp_path, capsys):
    path = write_doc(tmp_path, "n2.json", n2())
    assert main(["validate", path]) == 0
    assert "PASS" in capsys.readouterr().out


def test_validate_failing_algebra_writes_report(tmp_path, capsys):
    bad = dp.make_algebra(Q, 2, {(0, 0, 1): ONE, (1, 0, 0): ONE})
    path = write_doc(tmp_path, "bad.json", bad)
    report = tmp_path / "report.json"
    assert main(["validate", path, "--report", str(report)]) == 1
    assert "FAIL" in capsys.readouterr().out
    rep = parse_document(report.read_bytes()).payload
    assert not rep.passed
    assert rep.structure_kind == "algebra"


def test_validate_operator_document(tmp_path):
    path = write_doc(tmp_path, "op.json", weight0_diagonal_operator())
    assert main(["validate", path]) == 0
    bad = dp.OOperator(weight0_diagonal_operator().domain, n2(), dp.Matrix.identity(Q, 2), ZERO)
    path2 = write_doc(tmp_path, "bad_op.json", bad)
    assert main(["validate", path2]) == 1


def test_validate_dendriform_and_bimodule(tmp_path):
    rb3 = dp.catalogue_entry("rb-3").structure
    assert main(["validate", write_doc(tmp_path, "rb3.json", rb3)]) == 0
    ba = dp.canonical_bimodule(n2())
    assert main(["validate", write_doc(tmp_path, "ba.json", ba)]) == 0
    assert main(["validate", write_doc(tmp_path, "bm.json", ba.base)]) == 0


def test_validate_malformed_document_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_bytes(b"{not json")
    assert main(["validate", str(path)]) == 2
    assert "error" in capsys.readouterr().err


# -- construct ------------------------------------------------------------------------

def test_construct_domain_matches_catalogue(tmp_path):
    path = write_doc(tmp_path, "op.json", weight0_diagonal_operator())
    out = tmp_path / "dendr.json"
    assert main(["construct", "domain", path, "-o", str(out)]) == 0
    built = parse_document(out.read_bytes()).payload
    rb2 = dp.catalogue_entry("rb-2").structure
    assert (built.prec, built.succ) == (rb2.prec, rb2.succ)


def test_construct_range_invertible(tmp_path):
    op = dp.rb_as_o_operator(
        dp.RotaBaxterOperator(n2(), diag(Q, Fraction(1, 3), ONE), ONE))
    path = write_doc(tmp_path, "op.json", op)
    out = tmp_path / "range.json"
    assert main(["construct", "range", path, "-o", str(out)]) == 0
    built = parse_document(out.read_bytes()).payload
    assert built == dp.range_dendriform_tri(op)


def test_construct_range_falls_back_to_quotient(tmp_path, capsys):
    z = dp.Matrix.zeros(Q, 2, 2)
    dom = dp.BimoduleAlgebra(dp.Bimodule(n2(), (z, z), (z, z)),
                             dp.StructureTensor.zero(Q, 2))
    op = dp.OOperator(dom, n2(), dp.Matrix(Q, ((ONE, ZERO), (ZERO, ZERO))), ZERO)
    path = write_doc(tmp_path, "op.json", op)
    out = tmp_path / "quot.json"
    assert main(["construct", "range", path, "-o", str(out)]) == 0
    assert "quotient" in capsys.readouterr().out
    rs = parse_document(out.read_bytes()).payload
    assert rs.what == "range-quotient"
    structure, embedding, image_alg = rs.items
    assert structure.dim == 1
    assert embedding.col(0) == (ONE, ZERO)


def test_construct_refuses_invalid_operator(tmp_path, capsys):
    bad = dp.OOperator(weight0_diagonal_operator().domain, n2(), dp.Matrix.identity(Q, 2), ZERO)
    path = write_doc(tmp_path, "bad.json", bad)
    assert main(["construct", "domain", path]) == 1
    assert "failed" in capsys.readouterr().err


# -- canonical ------------------------------------------------------------------------

def test_canonical_round_trip_via_cli(tmp_path):
    rb5 = dp.catalogue_entry("rb-5").structure
    path = write_doc(tmp_path, "rb5.json", rb5)
    out = tmp_path / "op.json"
    assert main(["canonical", path, "-o", str(out)]) == 0
    op = parse_document(out.read_bytes()).payload
    assert op.kind == "module"
    assert op.matrix.is_identity()
    assert dp.domain_dendriform_di(op) == rb5


# -- split-check ----------------------------------------------------------------------

def test_split_check_pass_and_fail(tmp_path):
    rb2 = write_doc(tmp_path, "rb2.json", dp.catalogue_entry("rb-2").structure)
    alg = write_doc(tmp_path, "n2.json", n2())
    assert main(["split-check", rb2, alg]) == 0
    rb4 = write_doc(tmp_path, "rb4.json", dp.catalogue_entry("rb-4").structure)
    zero = write_doc(tmp_path, "zero.json", dp.make_algebra(Q, 2, {}))
    assert main(["split-check", rb4, zero]) == 1


def test_split_check_field_mismatch_is_an_error(tmp_path):
    rb4 = write_doc(tmp_path, "rb4.json", dp.catalogue_entry("rb-4").structure)
    other = write_doc(tmp_path, "f3.json", dp.make_algebra(F3, 2, {}))
    assert main(["split-check", rb4, other]) == 2


# -- iso ------------------------------------------------------------------------------

def test_iso_with_witness(tmp_path):
    six4 = dp.catalogue_entry("rb-4").structure
    scaled = dp.make_dendriform_di(Q, 2, {(1, 1, 0): Fraction(4)}, {})
    a = write_doc(tmp_path, "a.json", six4)
    b = write_doc(tmp_path, "b.json", scaled)
    w = write_doc(tmp_path, "w.json", diag(Q, Fraction(4), ONE), field=Q)
    assert main(["iso", a, b, "--witness", w]) == 0
    w_bad = write_doc(tmp_path, "wbad.json", dp.Matrix.identity(Q, 2), field=Q)
    assert main(["iso", a, b, "--witness", w_bad]) == 1


def test_iso_search_found_and_not_found(tmp_path, capsys):
    four = dp.dendriform_di_to_field(dp.catalogue_entry("rb-4").structure, F3)
    six = dp.dendriform_di_to_field(dp.catalogue_entry("rb-6").structure, F3)
    a = write_doc(tmp_path, "a.json", four)
    b = write_doc(tmp_path, "b.json", six)
    assert main(["iso", a, b, "--search-fp"]) == 1
    assert "48" in capsys.readouterr().out
    out = tmp_path / "w.json"
    assert main(["iso", a, a, "--search-fp", "-o", str(out)]) == 0
    witness = parse_document(out.read_bytes()).payload
    assert dp.verify_dendriform_iso(four, four, witness).passed


# -- equiv ----------------------------------------------------------------------------

def test_equiv_command(tmp_path):
    rbs = [rb for rb in dp.enumerate_rb_operators(n2(F3), 0)
           if dp.rank(rb.matrix) == 2]
    op = dp.rb_as_o_operator(rbs[0])
    f = dp.Matrix(F3, ((1, 0), (0, 1)))
    op_path = write_doc(tmp_path, "op.json", op)
    f_path = write_doc(tmp_path, "f.json", f, field=F3)
    assert main(["equiv", op_path, op_path, "--f", f_path, "--g", f_path]) == 0
    twisted = dp.twist_by_range_automorphism(op, dp.Matrix(F3, ((1, 1), (0, 1))))
    tw_path = write_doc(tmp_path, "tw.json", twisted)
    fw_path = write_doc(tmp_path, "fw.json", dp.Matrix(F3, ((1, 1), (0, 1))), field=F3)
    assert main(["equiv", op_path, tw_path, "--f", fw_path, "--g", f_path]) == 0
    assert main(["equiv", op_path, tw_path, "--f", f_path, "--g", f_path]) == 1


# -- enumerate ------------------------------------------------------------------------

def test_enumerate_dendriform_cli(tmp_path):
    out = tmp_path / "dd.json"
    assert main(["enumerate", "--what", "dendriform-di", "--dim", "1",
                 "--prime", "2", "-o", str(out)]) == 0
    rs = parse_document(out.read_bytes()).payload
    assert dict(rs.counts)["found"] == 3
    assert len(rs.items) == 3


def test_enumerate_phi_image_cli(tmp_path, capsys):
    out = tmp_path / "phi.json"
    assert main(["enumerate", "--what", "phi-image", "--dim", "1",
                 "--prime", "2", "-o", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "missing=2" in printed and "analogue" in printed
    rs = parse_document(out.read_bytes()).payload
    assert dict(rs.counts) == {"all": 3, "image": 1, "missing": 2}
    assert len(rs.items) == 2  # the missing structures, listed explicitly
    assert "analogue" in rs.label


def test_enumerate_budget_flag_and_env(tmp_path, capsys, monkeypatch):
    assert main(["enumerate", "--what", "assoc", "--dim", "2", "--prime", "2",
                 "--budget", "10", "-o", str(tmp_path / "x.json")]) == 2
    assert "budget" in capsys.readouterr().err
    monkeypatch.setenv("DENDROP_BUDGET", "10")
    assert main(["enumerate", "--what", "assoc", "--dim", "2", "--prime", "2",
                 "-o", str(tmp_path / "y.json")]) == 2
    # explicit flag wins over the environment
    assert main(["enumerate", "--what", "assoc", "--dim", "2", "--prime", "2",
                 "--budget", "1000", "-o", str(tmp_path / "z.json")]) == 0


def test_enumerate_rb0_cli(tmp_path):
    out = tmp_path / "rb.json"
    assert main(["enumerate", "--what", "rb0", "--dim", "1", "--prime", "2",
                 "-o", str(out)]) == 0
    rs = parse_document(out.read_bytes()).payload
    counts = dict(rs.counts)
    assert counts["algebras"] == 2
    # zero algebra: both maps pass; idempotent algebra: only the zero map
    assert counts["operators"] == 3


# -- catalogue ------------------------------------------------------------------------

def test_catalogue_cli(tmp_path):
    out = tmp_path / "cat.json"
    assert main(["catalogue", "-o", str(out)]) == 0
    raw = json.loads(out.read_bytes())
    items = raw["payload"]["items"]
    assert len(items) == 11
    names = [item["name"] for item in items]
    assert names[0] == "rb-1" and names[-1] == "extra-5"
    flagged = [item["name"] for item in items if item.get("typo_corrected")]
    assert flagged == ["extra-2", "extra-4"]
    # parses back as a result set of dialgebras
    rs = parse_document(out.read_bytes()).payload
    assert all(isinstance(d, dp.DendriformDi) for d in rs.items)


# -- installed entry point --------------------------------------------------------------

def test_console_script_runs(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "dendrop.cli", "catalogue"],
                          capture_output=True)
    assert proc.returncode == 0
    assert b'"rb-2"' in proc.stdout
