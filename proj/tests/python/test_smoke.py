import json
from fractions import Fraction

import pytest

import kstab


def test_stability_verdicts_and_exit_codes():
    r = kstab.stability("toric_square")
    assert r.code == 0
    assert r.report["report"]["verdict"]["kind"] == "KStable"

    r = kstab.stability("rank2_strict_ss")
    assert r.code == 2
    verdict = r.report["report"]["verdict"]
    assert verdict["kind"] == "StrictlySemistable"
    assert verdict["weight"] == ["1/2", "0"]

    assert kstab.stability("toric_hirzebruch").code == 3


def test_inline_problem_document():
    with open(kstab.catalog_dir() / "rank2_kstable.json") as f:
        doc = json.load(f)
    r = kstab.stability(doc)
    assert r.code == 0
    assert r.report["report"]["barycenter"] == ["3/2", "0"]


def test_extremal_field_of_the_trapezoid():
    r = kstab.extremal("toric_hirzebruch")
    assert "-24/13" in json.dumps(r.report["extremal"])


def test_degeneration_and_refusal():
    r = kstab.degenerate("rank2_strict_ss")
    assert "horospherical_K_stable" in json.dumps(r.report)
    with pytest.raises(kstab.KstabError) as info:
        kstab.degenerate("rank2_kstable")
    assert info.value.code == "PreconditionNotMet"


def test_convexity_witness():
    r = kstab.check_convexity("nonconvex_extension")
    assert r.code == 1
    assert r.report["extension"]["convex"] is False


def test_soliton_options_pass_through():
    r = kstab.soliton("rank2_kstable", tolerance=1e-12)
    assert all(abs(v) < 1e-12 for v in r.report["soliton"]["field"])


def test_envelope_svg(tmp_path):
    out = tmp_path / "crease.svg"
    r = kstab.envelope("synthetic_crease", svg=out)
    assert "crease" in r.report
    assert out.read_text().startswith("<svg") or "<svg" in out.read_text()


def test_exact_integration():
    # Unit square, x^2 y: 1/3 * 1/2.
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert kstab.integrate_polygon(square, {(2, 1): 1}) == Fraction(1, 6)
    triangle = [(0, 0), ("1/2", 0), (0, "1/2")]
    assert kstab.integrate_polygon(triangle, {(0, 0): 3}) == Fraction(3, 8)


def test_unknown_problem_raises():
    with pytest.raises(kstab.KstabError):
        kstab.futaki("no_such_problem")
