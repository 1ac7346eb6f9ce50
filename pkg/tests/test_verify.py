import numpy as np

from hermicode import verify
from hermicode.charsum import CycInt
from hermicode.cli import main
from hermicode.gf import build_tower


def test_sweep_forms_cover_every_rank():
    ctx = build_tower(p=3, a=1, b=1, N=2)
    forms = verify.sweep_forms(ctx, variants=4, seed=7)
    assert len(forms) == 10
    assert [q.rho for q in forms] == [1] * 5 + [2] * 5
    again = verify.sweep_forms(ctx, variants=4, seed=7)
    assert all(np.array_equal(a.H.matrix, b.H.matrix) for a, b in zip(forms, again))


def test_report_lists_every_check():
    # N = 2 so that degenerate forms (and the zero branch) occur
    ctx = build_tower(p=3, a=1, b=1, N=2)
    report = verify.run_verify(ctx, variants=1)
    names = [c["name"] for c in report["checks"]]
    assert names == list(verify.FIELD_CHECKS) + list(verify.PER_FORM_CHECKS)
    assert all(c["instances"] > 0 for c in report["checks"])
    assert report["ok"] and report["total_mismatches"] == 0


def test_broken_closed_form_is_caught(monkeypatch, tmp_path):
    def wrong(q, v, a=1):
        return CycInt.integer(q.ctx.p, 0)

    monkeypatch.setattr(verify, "closed_S", wrong)
    ctx = build_tower(p=3, a=1, b=1, N=1)
    res = verify.check_exponential_sums(verify.sweep_forms(ctx, 0)[0])
    assert not res.ok and len(res.mismatches) == verify.MAX_REPORTED
    assert main(["verify", "--p", "3", "--variants", "0", "--output", str(tmp_path / "r.json")]) == 1
