import copy
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from eqpentagon import certificate as cert
from eqpentagon.cli import main, parse_rational, width_exponent, UsageError
from eqpentagon.interval import Interval


@pytest.fixture(scope="module")
def cert_path(tmp_path_factory, document):
    p = tmp_path_factory.mktemp("cert") / "certificate.json"
    p.write_text(cert.dumps(document))
    return p


def _record(doc, section, label):
    return next(r for r in doc[section] if r["label"] == label)


def test_round_trip_is_byte_identical(document):
    text = cert.dumps(document)
    assert cert.dumps(cert.loads(text)) == text


@given(st.fractions(min_value=-10**6, max_value=10**6))
def test_rational_strings(q):
    assert cert.s2q(cert.q2s(q)) == q


def test_outward_rounding_encloses():
    iv = Interval(F(1, 3), F(2, 3))
    out = cert.outward(iv, 5)
    assert out.lo <= iv.lo and iv.hi <= out.hi


def test_verify_accepts_untouched(cert_path, capsys):
    assert main(["verify", str(cert_path)]) == 0
    assert capsys.readouterr().out.startswith("OK")


def test_tampered_h1_sign_is_named(document, tmp_path, capsys):
    doc = copy.deepcopy(document)
    rec = _record(doc, "candidates", "t3+")
    lo, hi = rec["h1"]
    rec["h1"] = [cert.q2s(-cert.s2q(hi)), cert.q2s(-cert.s2q(lo))]
    p = tmp_path / "bad.json"
    p.write_text(cert.dumps(doc))
    assert main(["verify", str(p)]) == 1
    out = capsys.readouterr()
    assert "candidate t3+" in out.out
    assert json.loads(out.err.strip().splitlines()[-1])["integrity_failure"] == "VerificationFailed"


def test_tampered_mass_fails_recomputation(document):
    doc = copy.deepcopy(document)
    rec = _record(doc, "candidates", "t7+")
    lo, hi = (cert.s2q(x) for x in rec["masses"]["m1"])
    rec["masses"]["m1"] = [cert.q2s(lo + F(1, 1000)), cert.q2s(hi + F(1, 1000))]
    fails = cert.verify_document(doc)
    assert any("mass recomputation" in f.message and f.record == "candidate t7+" for f in fails)


def test_missing_certificate(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "nope.json")]) == 1
    assert json.loads(capsys.readouterr().err)["integrity_failure"] == "MissingCertificate"
    assert main(["figure", "concave"]) == 1


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["roots", "X"], ["figure", "square"],
                                  ["roots", "R60", "--range", "Z"]])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_bad_rational_exit_2():
    assert main(["roots", "R60", "--lo", "abc"]) == 2
    assert main(["classify", "--precision", "3"]) == 2


def test_parse_rational():
    assert parse_rational("10^-4") == F(1, 10**4)
    assert parse_rational("3/25") == F(3, 25)
    assert parse_rational("1e-30") == F(1, 10**30)
    assert width_exponent(F(1, 10**4)) == 4
    with pytest.raises(UsageError):
        width_exponent(F(2))


def _rows(text):
    lines = text.strip().splitlines()
    return [dict(zip(lines[0].split(","), ln.split(","))) for ln in lines[1:]]


def test_figure_regular(cert_path, capsys):
    assert main(["figure", "regular", "--certificate", str(cert_path)]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 5
    v3 = rows[2]
    assert v3["x"].startswith("0.809016994375") and v3["y"].startswith("0.951056516295")
    assert rows[4]["y"].startswith("1.538841768588")


def test_figure_concave_and_gallery(cert_path, tmp_path):
    out = tmp_path / "c.csv"
    assert main(["figure", "concave", "--certificate", str(cert_path), "--out", str(out)]) == 0
    rows = _rows(out.read_text())
    assert rows[2]["x"].startswith("0.5402091568") and rows[0]["shape"] == "concave"
    assert main(["figure", "gallery", "--out", str(out)]) == 0
    g = _rows(out.read_text())
    assert len(g) % 5 == 0 and any(r["flag"] for r in g)


def test_roots_R60(capsys):
    assert main(["roots", "R60"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 14
    assert any(r["decimal"].startswith("2.0970716") for r in rows)


def test_roots_P_in_T(cache_dir, capsys):
    assert main(["roots", "P", "--range", "T'", "--cache-dir", cache_dir]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 18
    assert [r["factor"] for r in rows].count("p132") == 9
    assert abs(float(rows[0]["decimal"]) - 0.1278827) < 1e-6


def test_classify_coarse_precision(cache_dir, tmp_path, capsys):
    out = tmp_path / "coarse.json"
    assert main(["classify", "--precision", "1e-4", "--cache-dir", cache_dir, "--out", str(out)]) == 0
    doc = cert.loads(out.read_text())
    assert doc["summary"]["states"].get("Indeterminate", 0) > 0
    assert main(["verify", str(out)]) == 0
