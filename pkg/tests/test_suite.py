import json

import pytest

from numrad import AlgebraElement, EnsembleSpec, UnknownTag, generate, run_suite
from numrad.suite import ALL_TAGS


def strip_time(report):
    d = report.to_dict()
    d.pop("timestamp")
    return json.dumps(d, sort_keys=True)


def test_nilpotent_four_tags(N):
    rep = run_suite([N], {"eq11", "thm23", "thm29", "cor24"})
    assert rep.summary == {"total": 4, "pass": 4, "fail": 0, "inapplicable": 0, "marginal": 0}
    thm23 = next(e for e in rep.entries if e["tag"] == "thm23")
    slacks = list(thm23["report"]["slacks"].values())
    assert sum(abs(s) <= 1e-9 for s in slacks) == 4


def test_identity_is_inapplicable_for_square_zero_check(I2):
    rep = run_suite([I2], {"cor24"})
    assert rep.summary["inapplicable"] == 1 and rep.summary["fail"] == 0 and rep.ok


def test_unknown_tag():
    with pytest.raises(UnknownTag):
        run_suite([AlgebraElement.identity(2)], {"thm99"})


def test_all_tags_on_small_ensemble_is_deterministic(monkeypatch):
    xs = generate(EnsembleSpec("directsum", 2, 4, seed=8))
    monkeypatch.setenv("NUMRAD_THREADS", "2")
    a = run_suite(xs, None, grid=256, seed=8)
    monkeypatch.setenv("NUMRAD_THREADS", "1")
    b = run_suite(xs, None, grid=256, seed=8)
    assert strip_time(a) == strip_time(b)
    assert a.summary["fail"] == 0
    tags = {e["tag"] for e in a.entries}
    assert tags == set(ALL_TAGS)
    keys = [(e["index"], e["tag"]) for e in a.entries]
    assert keys == sorted(keys)
    s = a.summary
    assert s["total"] == len(a.entries) == s["pass"] + s["fail"] + s["inapplicable"]


def test_explicit_pairs_and_tol_override(N):
    xs = [N, N.H, AlgebraElement.identity(2)]
    rep = run_suite(xs, {"thm213", "lem210"}, pairs=[(0, 1), (0, 2)], grid=256)
    assert len(rep.entries) == 4 and rep.ok
    rep = run_suite([N], {"thm23"}, tol=1e-3)
    assert rep.entries[0]["report"]["tol"] == 1e-3


def test_tol_override_can_fail_a_report(N):
    # a negative tolerance turns every exactly tight link into a failure
    rep = run_suite([N], {"eq11"}, tol=-1e-3)
    assert rep.summary["fail"] == 1 and not rep.ok
